use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Prime;
use crate::error::{Error, Result};

/// s_p(n): the sum of the base-p digits of `n`. s_p(0) = 0.
pub fn digit_sum(p: Prime, mut n: u64) -> u64 {
    let p = p.get();
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

pub fn digit_sum_big(p: Prime, n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(digit_sum(p, small));
    }
    let base = BigUint::from(p.get());
    let mut m = n.clone();
    let mut s = BigUint::zero();
    while !m.is_zero() {
        let (q, r) = m.div_rem(&base);
        s += r;
        m = q;
    }
    s
}

/// Base-p digits of `n`, most significant first. Zero has no digits.
pub fn digits_msb_first(p: Prime, mut n: u64) -> Vec<u64> {
    let p = p.get();
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out.reverse();
    out
}

/// ν_p(n!) as Σ_{i≥1} ⌊n/p^i⌋.
pub fn factorial_valuation_floor(p: Prime, n: u64) -> u64 {
    let p = p.get();
    let mut q = n / p;
    let mut total = 0;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// ν_p(n!) as (n − s_p(n)) / (p − 1).
pub fn factorial_valuation_digits(p: Prime, n: u64) -> u64 {
    let num = n - digit_sum(p, n);
    let den = p.get() - 1;
    assert!(num % den == 0, "inexact digit-sum division for n = {n}, p = {p}");
    num / den
}

/// ν_p(C(n, k)) from digit sums.
pub fn binomial_valuation_digits(p: Prime, n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Err(Error::KExceedsN { n, k });
    }
    let num = digit_sum(p, k) + digit_sum(p, n - k) - digit_sum(p, n);
    let den = p.get() - 1;
    assert!(num % den == 0, "inexact digit-sum division for C({n},{k}), p = {p}");
    Ok(num / den)
}

/// C(n, k) exactly; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::from(1u32);
    for i in 0..k {
        c *= n - i;
        c /= i + 1;
    }
    c
}

/// Number of carries when adding `a` and `b` in base p.
pub fn kummer_carries(p: Prime, mut a: u64, mut b: u64) -> u64 {
    let p = p.get();
    let mut carry = 0;
    let mut carries = 0;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        carries += carry;
        a /= p;
        b /= p;
    }
    carries
}
