use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactRational, Prime};
use crate::error::Error;

/// A p-adic valuation: an integer, or `+∞` for the valuation of zero.
///
/// The derived ordering puts every `Finite` below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PadicVal {
    Finite(i64),
    Infinite,
}

impl PadicVal {
    pub const ZERO: PadicVal = PadicVal::Finite(0);

    pub fn finite(self) -> Option<i64> {
        match self {
            PadicVal::Finite(v) => Some(v),
            PadicVal::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, PadicVal::Infinite)
    }
}

impl From<i64> for PadicVal {
    fn from(v: i64) -> Self {
        PadicVal::Finite(v)
    }
}

impl Add for PadicVal {
    type Output = PadicVal;

    fn add(self, rhs: PadicVal) -> PadicVal {
        match (self, rhs) {
            (PadicVal::Finite(a), PadicVal::Finite(b)) => PadicVal::Finite(a + b),
            _ => PadicVal::Infinite,
        }
    }
}

impl Add<i64> for PadicVal {
    type Output = PadicVal;

    fn add(self, rhs: i64) -> PadicVal {
        self + PadicVal::Finite(rhs)
    }
}

impl AddAssign<i64> for PadicVal {
    fn add_assign(&mut self, rhs: i64) {
        *self = *self + rhs;
    }
}

impl Sub<i64> for PadicVal {
    type Output = PadicVal;

    fn sub(self, rhs: i64) -> PadicVal {
        self + PadicVal::Finite(-rhs)
    }
}

impl PartialEq<i64> for PadicVal {
    fn eq(&self, other: &i64) -> bool {
        *self == PadicVal::Finite(*other)
    }
}

impl PartialOrd<i64> for PadicVal {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&PadicVal::Finite(*other)))
    }
}

impl fmt::Display for PadicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicVal::Finite(v) => write!(f, "{v}"),
            PadicVal::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for PadicVal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "inf" {
            return Ok(PadicVal::Infinite);
        }
        s.parse::<i64>()
            .map(PadicVal::Finite)
            .map_err(|_| Error::Parse(format!("invalid valuation `{s}`")))
    }
}

impl From<PadicVal> for String {
    fn from(v: PadicVal) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for PadicVal {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

/// ν_p of a machine integer; `Infinite` for 0.
pub fn vp_u64(p: Prime, n: u64) -> PadicVal {
    if n == 0 {
        return PadicVal::Infinite;
    }
    PadicVal::Finite(vp_nonzero_u64(p.get(), n) as i64)
}

fn vp_nonzero_u64(p: u64, mut n: u64) -> u64 {
    if p == 2 {
        return n.trailing_zeros() as u64;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Valuation of a nonzero magnitude. Strips `p^(2^k)` for growing `k` and
/// then walks back down, so the number of big divisions is logarithmic in
/// the valuation rather than linear.
fn vp_nonzero_big(p: u64, n: &BigUint) -> u64 {
    if let Some(small) = n.to_u64() {
        return vp_nonzero_u64(p, small);
    }
    if p == 2 {
        return n.trailing_zeros().unwrap_or(0);
    }
    let mut m = n.clone();
    let mut v = 0u64;
    let mut powers = vec![BigUint::from(p)];
    loop {
        let top = powers.last().expect("non-empty");
        let (q, r) = m.div_rem(top);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1u64 << (powers.len() - 1);
        let next = top * top;
        if next > m {
            break;
        }
        powers.push(next);
    }
    for (k, pk) in powers.iter().enumerate().rev() {
        if pk > &m {
            continue;
        }
        let (q, r) = m.div_rem(pk);
        if r.is_zero() {
            m = q;
            v += 1u64 << k;
        }
    }
    v
}

/// ν_p(n) for an arbitrary-precision integer; `Infinite` iff `n = 0`.
pub fn vp_int(p: Prime, n: &BigInt) -> PadicVal {
    if n.is_zero() {
        return PadicVal::Infinite;
    }
    PadicVal::Finite(vp_nonzero_big(p.get(), n.magnitude()) as i64)
}

/// ν_p(r) = ν_p(numerator) − ν_p(denominator); `Infinite` iff `r = 0`.
pub fn vp_rat(p: Prime, r: &ExactRational) -> PadicVal {
    if r.is_zero() {
        return PadicVal::Infinite;
    }
    let num = vp_nonzero_big(p.get(), r.numer().magnitude()) as i64;
    let den = vp_nonzero_big(p.get(), r.denom().magnitude()) as i64;
    PadicVal::Finite(num - den)
}
