//! Closed-form p-adic valuation predictors.
//!
//! Nothing in this module evaluates a polynomial: every predictor is built
//! from digit sums, factorial valuations and binomial valuations only, so
//! comparing a prediction with the valuation of an exact evaluation is a
//! comparison of two independent computations.

use crate::arith::{
    binomial_valuation_digits, digit_sum, digits_msb_first, factorial_valuation_digits, vp_rat,
    vp_u64, ExactRational, PadicVal, Prime,
};
use crate::error::{Error, Result};

/// Whether a formula is a theorem or an open (or once-open) conjecture.
/// A mismatch against a conjectural formula is a mathematical finding, not
/// an implementation bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standing {
    Theorem,
    Conjecture,
}

/// Prime plus, for the general-r predictors, a rational with ν_p(r) ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionContext {
    p: Prime,
    r: Option<(ExactRational, i64)>,
}

impl PredictionContext {
    pub fn new(p: Prime) -> Self {
        PredictionContext { p, r: None }
    }

    /// Fails unless ν_p(r) ≥ 1.
    pub fn with_r(p: Prime, r: ExactRational) -> Result<Self> {
        let v = require_positive_valuation(p, &r)?;
        Ok(PredictionContext { p, r: Some((r, v)) })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn r(&self) -> Option<&ExactRational> {
        self.r.as_ref().map(|(r, _)| r)
    }

    fn r_valuation(&self) -> Result<i64> {
        self.r
            .as_ref()
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::Hypothesis("this predictor needs r with ν_p(r) ≥ 1".into()))
    }
}

fn require_positive_valuation(p: Prime, r: &ExactRational) -> Result<i64> {
    match vp_rat(p, r) {
        PadicVal::Finite(v) if v >= 1 => Ok(v),
        PadicVal::Finite(v) => Err(Error::Hypothesis(format!(
            "ν_{p}(r) ≥ 1 required, but ν_{p}({r}) = {v}"
        ))),
        PadicVal::Infinite => Err(Error::Hypothesis(format!(
            "r must be a nonzero rational with ν_{p}(r) ≥ 1, got 0"
        ))),
    }
}

fn require_odd(p: Prime, what: &str) -> Result<()> {
    if p.is_two() {
        Err(Error::Hypothesis(format!("{what} requires p ≥ 3")))
    } else {
        Ok(())
    }
}

fn fin(v: u64) -> PadicVal {
    PadicVal::Finite(v as i64)
}

/// ν_p(C(2m, m)).
fn central_binomial_valuation(p: Prime, m: u64) -> i64 {
    binomial_valuation_digits(p, 2 * m, m).expect("m ≤ 2m") as i64
}

/// ν_p(P_n(r)) for ν_p(r) ≥ 1, by parity of n and whether p = 2.
pub fn predict_vp_legendre_general(ctx: &PredictionContext, n: u64) -> Result<PadicVal> {
    let vr = ctx.r_valuation()?;
    let p = ctx.p;
    let n_i = n as i64;
    let v = if n % 2 == 0 {
        let base = central_binomial_valuation(p, n / 2);
        if p.is_two() {
            base - n_i
        } else {
            base
        }
    } else {
        let base = central_binomial_valuation(p, (n - 1) / 2) + vr;
        if p.is_two() {
            base + 1 - n_i
        } else {
            base + vp_u64(p, n).finite().expect("n odd")
        }
    };
    Ok(PadicVal::Finite(v))
}

/// ν_p(C(n, ⌊n/2⌋) / 2^n) + (n mod 2)·ν_p(r(n+1)).
pub fn predict_vp_legendre_general_oneline(ctx: &PredictionContext, n: u64) -> Result<PadicVal> {
    let vr = ctx.r_valuation()?;
    let p = ctx.p;
    let two_part = if p.is_two() { n as i64 } else { 0 };
    let mut v = binomial_valuation_digits(p, n, n / 2)? as i64 - two_part;
    if n % 2 == 1 {
        v += vr + vp_u64(p, n + 1).finite().expect("n + 1 > 0");
    }
    Ok(PadicVal::Finite(v))
}

/// ν_p(P_n(p)) for odd p by the even/odd case split.
pub fn predict_vp_legendre_at_p_cases(p: Prime, n: u64) -> Result<PadicVal> {
    require_odd(p, "the case-split formula for ν_p(P_n(p))")?;
    let m = n / 2;
    let v = central_binomial_valuation(p, m);
    Ok(if n % 2 == 0 {
        PadicVal::Finite(v)
    } else {
        vp_u64(p, 2 * m + 1) + (1 + v)
    })
}

/// ν_p(P_n(p)) = (2 s_p(⌊n/2⌋) − s_p(n) + (n mod 2) p) / (p − 1) for odd p.
pub fn predict_vp_legendre_at_p_digits(p: Prime, n: u64) -> Result<PadicVal> {
    require_odd(p, "the digit formula for ν_p(P_n(p))")?;
    Ok(legendre_at_p_digits(p, n))
}

fn legendre_at_p_digits(p: Prime, n: u64) -> PadicVal {
    let num = 2 * digit_sum(p, n / 2) + (n % 2) * p.get();
    let num = num as i64 - digit_sum(p, n) as i64;
    let den = p.get() as i64 - 1;
    assert!(num % den == 0, "inexact digit formula at n = {n}, p = {p}");
    PadicVal::Finite(num / den)
}

/// ν_2(P_n(2)) = (n mod 2) − ν_2(n!).
pub fn predict_vp_legendre_at_2(n: u64) -> PadicVal {
    PadicVal::Finite((n % 2) as i64 - factorial_valuation_digits(Prime::TWO, n) as i64)
}

/// One step f(n) ↦ f(pn + a) of the base-p recurrence for f(n) = ν_p(P_n(p)).
pub fn recurrence_step(p: Prime, f_n: PadicVal, n: u64, a: u64) -> Result<PadicVal> {
    require_odd(p, "the base-p recurrence")?;
    if a >= p.get() {
        return Err(Error::DigitOutOfRange { digit: a, p: p.get() });
    }
    if f_n.is_infinite() {
        return Err(Error::Hypothesis("f(n) must be finite".into()));
    }
    let parity = (n % 2) as i64;
    Ok(if a % 2 == 0 { f_n + parity } else { f_n + (1 - parity) })
}

/// f(n) by folding [`recurrence_step`] over the base-p digits of n,
/// most significant first, starting from f(0) = 0.
pub fn predict_by_recurrence(p: Prime, n: u64) -> Result<PadicVal> {
    require_odd(p, "the base-p recurrence")?;
    let mut f = PadicVal::ZERO;
    let mut prefix = 0u64;
    for a in digits_msb_first(p, n) {
        f = recurrence_step(p, f, prefix, a)?;
        prefix = prefix * p.get() + a;
    }
    Ok(f)
}

/// b(i) = ν_3(a(i)) by the two-branch base-3 recurrence.
pub fn predict_b_conjecture1(i: u64) -> PadicVal {
    let mut i = i;
    let mut acc = 0i64;
    while i > 0 {
        if i % 3 == 1 {
            acc += 1;
            i /= 9;
        } else {
            let q = i / 3;
            acc += (q % 2) as i64;
            i = q;
        }
    }
    PadicVal::Finite(acc)
}

/// ν_3(d(n)) = ν_3(C(2n, n)) + 2 ν_3(n) for n ≥ 1.
pub fn predict_strauss_shallit(n: u64) -> Result<PadicVal> {
    if n == 0 {
        return Err(Error::Hypothesis(
            "n ≥ 1 required: d(0) = 0 and ν_3(0) carries no information".into(),
        ));
    }
    let p = Prime::THREE;
    Ok(vp_u64(p, n) + vp_u64(p, n) + central_binomial_valuation(p, n))
}

/// Conjectured ν_3(Σ C(n,k)³ 2^k).
pub fn predict_cube_sum_v3(n: u64) -> PadicVal {
    let p = Prime::THREE;
    if n % 6 == 5 {
        fin(digit_sum(p, (n - 1) / 2) + 1)
    } else {
        fin(digit_sum(p, (n + 1) / 2))
    }
}

/// ν_p(Q_n(r)) for ν_p(r) ≥ 1, Q_n = 2^n P_n.
pub fn predict_vp_q(p: Prime, r: &ExactRational, n: u64) -> Result<PadicVal> {
    let vr = require_positive_valuation(p, r)?;
    let m = n / 2;
    let base = central_binomial_valuation(p, m);
    Ok(if n % 2 == 0 {
        PadicVal::Finite(base)
    } else if p.is_two() {
        PadicVal::Finite(1 + vr + base)
    } else {
        vp_u64(p, 2 * m + 1) + (vr + base)
    })
}

/// ν_p(M_n(p)) for odd p; equal to ν_p(P_n(p)).
pub fn predict_vp_cigler(p: Prime, n: u64) -> Result<PadicVal> {
    require_odd(p, "the Cigler valuation identity")?;
    Ok(legendre_at_p_digits(p, n))
}
