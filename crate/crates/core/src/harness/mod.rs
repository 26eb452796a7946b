//! Verification campaigns: predictors against exact evaluation, and
//! sequences against OEIS b-files.

mod bfile;
mod oeis;
mod range;
mod report;
mod verify;

pub use bfile::{parse_bfile, BFileRecord};
pub use oeis::{oeis_check, oeis_check_text};
pub use range::NRange;
pub use report::{Mismatch, Parameters, Status, TheoremId, VerificationReport};
pub use verify::{predict, verify, VerifyRequest};
