use num_bigint::BigInt;
use num_traits::{One, Zero};

/// a(n) = Σ_{i≤n} C(n,i) C(n+i,i).
pub fn central_delannoy(n: u64) -> BigInt {
    let mut c_ni = BigInt::one();
    let mut c_nii = BigInt::one();
    let mut total = BigInt::one();
    for i in 1..=n {
        c_ni *= n - i + 1;
        c_ni /= i;
        c_nii *= n + i;
        c_nii /= i;
        total += &c_ni * &c_nii;
    }
    total
}

/// d(n) = Σ_{i<n} C(2i,i); d(0) = 0.
pub fn partial_sum_central_binomial(n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut central = BigInt::one();
    for i in 0..n {
        total += &central;
        // C(2i+2, i+1) = C(2i, i)·2(2i+1)/(i+1)
        central *= 2 * (2 * i + 1);
        central /= i + 1;
    }
    total
}

/// Σ_{k≤n} C(n,k)³ 2^k.
pub fn cube_sum_2k(n: u64) -> BigInt {
    let mut c = BigInt::one();
    let mut two_pow = BigInt::one();
    let mut total = BigInt::one();
    for k in 1..=n {
        c *= n - k + 1;
        c /= k;
        two_pow <<= 1usize;
        total += &c * &c * &c * &two_pow;
    }
    total
}

/// Running central binomials C(2n, n), n = 0, 1, 2, ...
#[derive(Debug, Clone)]
pub(crate) struct CentralBinomials {
    n: u64,
    cur: BigInt,
}

impl CentralBinomials {
    pub(crate) fn new() -> Self {
        CentralBinomials { n: 0, cur: BigInt::one() }
    }
}

impl Iterator for CentralBinomials {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.cur.clone();
        self.cur *= 2 * (2 * self.n + 1);
        self.cur /= self.n + 1;
        self.n += 1;
        Some(out)
    }
}
