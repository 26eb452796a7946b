//! Legendre-family polynomials at rational points.
//!
//! Each formula is evaluated as a homogeneous integer sum over the
//! numerator `a` and denominator `b` of `x = a/b`, and divided out once at
//! the end. Binomials are advanced by ratio updates along `k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Fraction;
use crate::arith::ExactRational;

/// Σ_{k=0}^{n} c_k u^k v^{n−k}, with `coeff` called once per `k` in order.
fn homogeneous_sum(n: u64, u: &BigInt, v: &BigInt, mut coeff: impl FnMut(u64) -> BigInt) -> BigInt {
    let mut acc = coeff(0);
    let mut u_pow = BigInt::one();
    for k in 1..=n {
        u_pow *= u;
        acc *= v;
        acc += coeff(k) * &u_pow;
    }
    acc
}

fn parts(x: &ExactRational) -> (&BigInt, &BigInt) {
    (x.numer(), x.denom())
}

/// k ↦ C(n,k)², advanced by the ratio (n−k+1)²/k². Must be called with
/// k = 0, 1, 2, ... in order.
fn squared_binomials(n: u64) -> impl FnMut(u64) -> BigInt {
    let mut c = BigInt::one();
    move |k| {
        if k > 0 {
            let t = (n - k + 1) as u128;
            c *= t * t;
            c /= (k as u128) * (k as u128);
        }
        c.clone()
    }
}

fn binomial_form(n: u64, x: &ExactRational) -> Fraction {
    let (a, b) = parts(x);
    let u = a - b;
    let v: BigInt = b << 1usize;
    // c_k = C(n,k)·C(n+k,k); c_{k+1}/c_k = (n−k)(n+k+1)/(k+1)².
    let mut c = BigInt::one();
    let num = homogeneous_sum(n, &u, &v, |k| {
        if k > 0 {
            let j = k - 1;
            c *= (n - j) as u128 * (n + j + 1) as u128;
            c /= (k as u128) * (k as u128);
        }
        c.clone()
    });
    Fraction::new(num, v.pow(n as u32))
}

/// P_n(x) = Σ C(n,k) C(n+k,k) ((x−1)/2)^k.
pub fn legendre_eval_binomial(n: u64, x: &ExactRational) -> ExactRational {
    binomial_form(n, x).into_rational()
}

/// b^n · Q_n(a/b) = Σ_{k≤n/2} (−1)^k C(n,k) C(2n−2k,n) a^{n−2k} b^{2k}, an integer.
pub(crate) fn rodrigues_integer_sum(n: u64, a: &BigInt, b: &BigInt) -> BigInt {
    let top = n / 2;
    let a2 = a * a;
    let b2 = b * b;
    // c_0 = C(2n, n)
    let mut c = BigInt::one();
    for i in 0..n {
        c *= 2 * n - i;
        c /= i + 1;
    }
    // Σ c_k (a²)^{K−k} (b²)^k, then one more factor of a when n is odd.
    let mut acc = c.clone();
    let mut b_pow = BigInt::one();
    for k in 1..=top {
        // c_k = (−1)^k C(n,k) C(2n−2k,n); with j = k−1 and m = 2n−2j,
        // c_k/c_{k−1} = −(n−j)(m−n)(m−n−1) / ((j+1) m (m−1)).
        let j = (k - 1) as u128;
        let (n_, m) = (n as u128, 2 * n as u128 - 2 * j);
        c *= (n_ - j) * (m - n_) * (m - n_ - 1);
        c /= (j + 1) * m * (m - 1);
        c = -c;
        b_pow *= &b2;
        acc *= &a2;
        acc += &c * &b_pow;
    }
    if n % 2 == 1 {
        acc *= a;
    }
    acc
}

pub(crate) fn rodrigues_form(n: u64, x: &ExactRational) -> Fraction {
    let (a, b) = parts(x);
    let num = rodrigues_integer_sum(n, a, b);
    let den: BigInt = b.pow(n as u32) << (n as usize);
    Fraction::new(num, den)
}

/// P_n(x) = 2^{−n} Σ_{k≤n/2} (−1)^k C(n,k) C(2n−2k,n) x^{n−2k}.
pub fn legendre_eval_rodrigues(n: u64, x: &ExactRational) -> ExactRational {
    rodrigues_form(n, x).into_rational()
}

/// P_n(x) = 2^{−n} Σ C(n,k)² (x−1)^k (x+1)^{n−k}.
pub fn legendre_eval_square_form(n: u64, x: &ExactRational) -> ExactRational {
    let (a, b) = parts(x);
    let u = a - b;
    let w = a + b;
    let num = homogeneous_sum(n, &u, &w, squared_binomials(n));
    let den: BigInt = b.pow(n as u32) << (n as usize);
    Fraction::new(num, den).into_rational()
}

/// Q_n(x) = 2^n P_n(x), the integer-coefficient alternating sum.
pub fn q_eval(n: u64, x: &ExactRational) -> ExactRational {
    let (a, b) = parts(x);
    Fraction::new(rodrigues_integer_sum(n, a, b), b.pow(n as u32)).into_rational()
}

/// M_n(x) = Σ C(n,k)² (x−1)^k.
pub fn cigler_eval(n: u64, x: &ExactRational) -> ExactRational {
    let (a, b) = parts(x);
    let u = a - b;
    let num = homogeneous_sum(n, &u, b, squared_binomials(n));
    Fraction::new(num, b.pow(n as u32)).into_rational()
}

/// Streams `c^n Q_n(a/c)` through the three-term recurrence
/// (n+1) P_{n+1} = (2n+1) x P_n − n P_{n−1}, rewritten over integers as
/// R_{n+1} = (2(2n+1) a R_n − 4 n c² R_{n−1}) / (n+1).
///
/// `c` may be negative; only `c²` enters the recurrence.
#[derive(Debug, Clone)]
pub(crate) struct ScaledLegendre {
    a: BigInt,
    c2: BigInt,
    n: u64,
    prev: BigInt,
    cur: BigInt,
}

impl ScaledLegendre {
    pub(crate) fn new(a: BigInt, c: &BigInt) -> Self {
        ScaledLegendre {
            c2: c * c,
            a,
            n: 0,
            prev: BigInt::zero(),
            cur: BigInt::one(),
        }
    }
}

impl Iterator for ScaledLegendre {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.cur.clone();
        let n = self.n;
        let mut next = &self.a * &self.cur * (2 * (2 * n + 1));
        if n > 0 {
            next -= &self.c2 * &self.prev * (4 * n);
        }
        next /= n + 1;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
        Some(out)
    }
}
