//! Valuation tables and empirical p-kernel analysis: single-term affine
//! relation mining and rank estimation over the rationals.

mod mine;
mod rank;
mod table;

pub use mine::{irredundant, mine_relations, verify_relation, MineConfig, MinedRelation, RelationCandidate};
pub use rank::{estimate_kernel_rank, fraction_free_rank, kernel_matrix, KernelMatrix, KernelRankEstimate, KernelRow};
pub use table::{build_table, BuildStrategy, TableOptions, ValuationTable};
