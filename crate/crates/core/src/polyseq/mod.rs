//! Exact evaluation of the Legendre family and companion integer sequences.

mod legendre;
mod sequences;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use legendre::{
    cigler_eval, legendre_eval_binomial, legendre_eval_rodrigues, legendre_eval_square_form,
    q_eval,
};
pub use sequences::{central_delannoy, cube_sum_2k, partial_sum_central_binomial};

use crate::arith::{vp_int, ExactRational, PadicVal, Prime};
use crate::error::{Error, Result};
use legendre::ScaledLegendre;
use sequences::CentralBinomials;

/// An unreduced `num/den` with `den > 0`. Valuations can be read off
/// without paying for the gcd.
#[derive(Debug, Clone)]
pub(crate) struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    pub(crate) fn new(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den > BigInt::zero());
        Fraction { num, den }
    }

    pub(crate) fn from_rational(r: ExactRational) -> Self {
        let (num, den) = r.into_parts();
        Fraction { num, den }
    }

    fn integer(num: BigInt) -> Self {
        Fraction { num, den: BigInt::one() }
    }

    pub(crate) fn valuation(&self, p: Prime) -> PadicVal {
        match vp_int(p, &self.num) {
            PadicVal::Infinite => PadicVal::Infinite,
            v => v + -vp_int(p, &self.den).finite().expect("nonzero denominator"),
        }
    }

    pub(crate) fn bits(&self) -> u64 {
        self.num.bits() + self.den.bits()
    }

    pub(crate) fn into_rational(self) -> ExactRational {
        ExactRational::new(self.num, self.den).expect("positive denominator")
    }
}

/// Which sequence a table or evaluation refers to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SequenceSpec {
    /// P_n(r)
    LegendreAt(ExactRational),
    /// Q_n(r) = 2^n P_n(r)
    QAt(ExactRational),
    /// M_n(r) = Σ C(n,k)² (r−1)^k
    CiglerAt(ExactRational),
    /// a(n) = Σ C(n,i) C(n+i,i)
    CentralDelannoy,
    /// d(n) = Σ_{i<n} C(2i,i)
    PartialSumCentralBinomial,
    /// Σ_{i≤n} C(2i,i) = d(n+1), the OEIS A006134 indexing.
    CumulativeCentralBinomial,
    /// Σ C(n,k)³ 2^k
    CubeSum2k,
}

impl SequenceSpec {
    /// Short names used on the command line and in canonical strings.
    pub const NAMES: [&'static str; 7] =
        ["legendre", "q", "cigler", "delannoy", "dsum", "csum", "cubesum"];

    pub fn name(&self) -> &'static str {
        match self {
            SequenceSpec::LegendreAt(_) => "legendre",
            SequenceSpec::QAt(_) => "q",
            SequenceSpec::CiglerAt(_) => "cigler",
            SequenceSpec::CentralDelannoy => "delannoy",
            SequenceSpec::PartialSumCentralBinomial => "dsum",
            SequenceSpec::CumulativeCentralBinomial => "csum",
            SequenceSpec::CubeSum2k => "cubesum",
        }
    }

    pub fn argument(&self) -> Option<&ExactRational> {
        match self {
            SequenceSpec::LegendreAt(r) | SequenceSpec::QAt(r) | SequenceSpec::CiglerAt(r) => {
                Some(r)
            }
            _ => None,
        }
    }

    /// Builds a spec from a short name and an optional argument.
    pub fn from_parts(name: &str, r: Option<ExactRational>) -> Result<Self> {
        let needs_r = matches!(name, "legendre" | "q" | "cigler");
        match (needs_r, &r) {
            (true, None) => return Err(Error::Parse(format!("sequence `{name}` needs an argument r"))),
            (false, Some(_)) => {
                return Err(Error::Parse(format!("sequence `{name}` takes no argument")))
            }
            _ => {}
        }
        Ok(match name {
            "legendre" => SequenceSpec::LegendreAt(r.expect("checked")),
            "q" => SequenceSpec::QAt(r.expect("checked")),
            "cigler" => SequenceSpec::CiglerAt(r.expect("checked")),
            "delannoy" => SequenceSpec::CentralDelannoy,
            "dsum" => SequenceSpec::PartialSumCentralBinomial,
            "csum" => SequenceSpec::CumulativeCentralBinomial,
            "cubesum" => SequenceSpec::CubeSum2k,
            other => return Err(Error::Parse(format!("unknown sequence `{other}`"))),
        })
    }

    /// Values for n = 0, 1, 2, ... produced incrementally. Sequences with a
    /// cheap recurrence use it; the rest fall back to direct evaluation.
    pub fn stream(&self) -> impl Iterator<Item = ExactRational> + Send + '_ {
        self.fraction_stream().map(Fraction::into_rational)
    }

    pub(crate) fn fraction_stream(&self) -> Box<dyn Iterator<Item = Fraction> + Send + '_> {
        match self {
            SequenceSpec::LegendreAt(r) | SequenceSpec::QAt(r) => {
                let (a, b) = (r.numer().clone(), r.denom().clone());
                // P_n: divide by (2b)^n; Q_n: by b^n.
                let step = if matches!(self, SequenceSpec::LegendreAt(_)) {
                    &b << 1usize
                } else {
                    b.clone()
                };
                Box::new(with_denominator_powers(ScaledLegendre::new(a, &b), step))
            }
            SequenceSpec::CiglerAt(r) => {
                // M_n(x) = (2−x)^n P_n(x/(2−x)) = c^n Q_n(a/c) / (2b)^n with c = 2b − a.
                let (a, b) = (r.numer().clone(), r.denom().clone());
                let c: BigInt = (&b << 1usize) - &a;
                if c.is_zero() {
                    // M_n(2) = Σ C(n,k)² = C(2n,n).
                    Box::new(CentralBinomials::new().map(Fraction::integer))
                } else {
                    Box::new(with_denominator_powers(ScaledLegendre::new(a, &c), b << 1usize))
                }
            }
            SequenceSpec::CentralDelannoy => Box::new(DelannoyRecurrence::default().map(Fraction::integer)),
            SequenceSpec::PartialSumCentralBinomial => Box::new(
                std::iter::once(BigInt::zero())
                    .chain(CentralBinomials::new().scan(BigInt::zero(), |acc, c| {
                        *acc += c;
                        Some(acc.clone())
                    }))
                    .map(Fraction::integer),
            ),
            SequenceSpec::CumulativeCentralBinomial => Box::new(
                CentralBinomials::new()
                    .scan(BigInt::zero(), |acc, c| {
                        *acc += c;
                        Some(acc.clone())
                    })
                    .map(Fraction::integer),
            ),
            SequenceSpec::CubeSum2k => Box::new((0u64..).map(|n| Fraction::integer(cube_sum_2k(n)))),
        }
    }

    /// True when [`SequenceSpec::stream`] is materially cheaper than
    /// evaluating each index on its own.
    pub fn has_recurrence(&self) -> bool {
        !matches!(self, SequenceSpec::CubeSum2k)
    }
}

fn with_denominator_powers(
    nums: impl Iterator<Item = BigInt> + Send,
    step: BigInt,
) -> impl Iterator<Item = Fraction> + Send {
    nums.scan(BigInt::one(), move |den, num| {
        let out = Fraction::new(num, den.clone());
        *den *= &step;
        Some(out)
    })
}

/// n a(n) = 3(2n−1) a(n−1) − (n−1) a(n−2).
#[derive(Debug, Clone)]
struct DelannoyRecurrence {
    n: u64,
    prev: BigInt,
    cur: BigInt,
}

impl Default for DelannoyRecurrence {
    fn default() -> Self {
        DelannoyRecurrence { n: 0, prev: BigInt::zero(), cur: BigInt::one() }
    }
}

impl Iterator for DelannoyRecurrence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.cur.clone();
        let n = self.n + 1;
        let mut next = &self.cur * (3 * (2 * n - 1));
        next -= &self.prev * (n - 1);
        next /= n;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n = n;
        Some(out)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.argument() {
            Some(r) => write!(f, "{}:{}", self.name(), r),
            None => f.write_str(self.name()),
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = Error;

    /// Parses the canonical form `name` or `name:r`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, r)) => SequenceSpec::from_parts(name, Some(r.parse()?)),
            None => SequenceSpec::from_parts(s, None),
        }
    }
}

impl From<SequenceSpec> for String {
    fn from(s: SequenceSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SequenceSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The n-th value of `spec`. Legendre values go through the Rodrigues sum,
/// whose only division is by `2^n b^n`.
pub fn eval_sequence(spec: &SequenceSpec, n: u64) -> ExactRational {
    match spec {
        SequenceSpec::LegendreAt(r) => legendre_eval_rodrigues(n, r),
        SequenceSpec::QAt(r) => q_eval(n, r),
        SequenceSpec::CiglerAt(r) => cigler_eval(n, r),
        SequenceSpec::CentralDelannoy => central_delannoy(n).into(),
        SequenceSpec::PartialSumCentralBinomial => partial_sum_central_binomial(n).into(),
        SequenceSpec::CumulativeCentralBinomial => partial_sum_central_binomial(n + 1).into(),
        SequenceSpec::CubeSum2k => cube_sum_2k(n).into(),
    }
}

/// Memoises [`eval_sequence`] up to a fixed number of entries. Once the
/// budget is spent, lookups still work but nothing new is stored.
#[derive(Debug)]
pub struct EvalCache {
    budget: usize,
    entries: Mutex<HashMap<(SequenceSpec, u64), ExactRational>>,
}

impl EvalCache {
    pub fn with_budget(budget: usize) -> Self {
        EvalCache { budget, entries: Mutex::new(HashMap::new()) }
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eval(&self, spec: &SequenceSpec, n: u64) -> ExactRational {
        let key = (spec.clone(), n);
        if let Some(v) = self.entries.lock().expect("cache poisoned").get(&key) {
            return v.clone();
        }
        // Evaluate outside the lock; racing writers insert equal values.
        let value = eval_sequence(spec, n);
        let mut map = self.entries.lock().expect("cache poisoned");
        if map.len() < self.budget {
            map.entry(key).or_insert_with(|| value.clone());
        }
        value
    }
}
