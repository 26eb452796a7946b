use num_bigint::BigInt;
use rayon::prelude::*;

use super::{Mismatch, NRange, TheoremId, VerificationReport};
use crate::arith::{binomial, digit_sum, vp_int, vp_rat, vp_u64, ExactRational, PadicVal, Prime};
use crate::error::{Error, Result};
use crate::kernel::{build_table, TableOptions};
use crate::polyseq::{
    central_delannoy, cigler_eval, cube_sum_2k, legendre_eval_binomial, legendre_eval_rodrigues,
    legendre_eval_square_form, q_eval, SequenceSpec,
};
use crate::predictors::*;

/// What to check and over which indices.
#[derive(Debug, Clone)]
pub struct VerifyRequest {
    pub theorem: TheoremId,
    pub p: Option<Prime>,
    pub r: Option<ExactRational>,
    pub range: NRange,
}

impl VerifyRequest {
    pub fn new(theorem: TheoremId, range: NRange) -> Self {
        VerifyRequest { theorem, p: None, r: None, range }
    }

    pub fn p(mut self, p: Prime) -> Self {
        self.p = Some(p);
        self
    }

    pub fn r(mut self, r: ExactRational) -> Self {
        self.r = Some(r);
        self
    }

    fn need_p(&self) -> Result<Prime> {
        self.p.ok_or_else(|| Error::Hypothesis(format!("{} needs a prime p", self.theorem)))
    }

    fn need_odd_p(&self) -> Result<Prime> {
        let p = self.need_p()?;
        if p.is_two() {
            return Err(Error::Hypothesis(format!("{} requires p ≥ 3", self.theorem)));
        }
        Ok(p)
    }

    /// For identities stated at a single prime: p defaults to it and may
    /// not be anything else.
    fn fixed_p(&self, want: Prime) -> Result<Prime> {
        match self.p {
            Some(p) if p != want => Err(Error::Hypothesis(format!("{} is stated for p = {want} only", self.theorem))),
            _ => Ok(want),
        }
    }

    fn need_r(&self) -> Result<&ExactRational> {
        self.r
            .as_ref()
            .ok_or_else(|| Error::Hypothesis(format!("{} needs a rational r", self.theorem)))
    }
}

/// Per-index outcome: how many comparisons ran, how many were skipped, and
/// what disagreed.
type Outcome = (u64, u64, Vec<Mismatch>);

fn sweep<F>(range: NRange, f: F) -> Outcome
where
    F: Fn(u64) -> Outcome + Sync + Send,
{
    let parts: Vec<Outcome> = range.iter().into_par_iter().map(f).collect();
    parts.into_iter().fold((0, 0, Vec::new()), |(c, s, mut m), (c2, s2, m2)| {
        m.extend(m2);
        (c + c2, s + s2, m)
    })
}

fn compare(n: u64, checks: &[(&str, PadicVal)], actual: PadicVal) -> Outcome {
    let mismatches = checks
        .iter()
        .filter(|(_, pred)| *pred != actual)
        .map(|(name, pred)| Mismatch::new(n, pred, actual).note(*name))
        .collect();
    (1, 0, mismatches)
}

fn rat(v: i64) -> ExactRational {
    ExactRational::from(v)
}

/// Runs one verification campaign. Hypothesis violations are returned as
/// [`Error::Hypothesis`] before any work is done.
pub fn verify(req: &VerifyRequest) -> Result<VerificationReport> {
    let range = req.range;
    let mut p_used = req.p;
    let mut r_used = None;
    let (checked, skipped, mismatches) = match req.theorem {
        TheoremId::Thm3 => {
            let p = req.need_p()?;
            let r = req.need_r()?;
            let ctx = PredictionContext::with_r(p, r.clone())?;
            r_used = Some(r.to_string());
            sweep(range, |n| {
                let actual = vp_rat(p, &legendre_eval_rodrigues(n, r));
                let cases = predict_vp_legendre_general(&ctx, n).expect("context has r");
                let oneline = predict_vp_legendre_general_oneline(&ctx, n).expect("context has r");
                compare(n, &[("cases", cases), ("oneline", oneline)], actual)
            })
        }
        TheoremId::Thm4 => {
            let p = req.need_odd_p()?;
            let x = rat(p.get() as i64);
            sweep(range, |n| {
                let actual = vp_rat(p, &legendre_eval_rodrigues(n, &x));
                let preds = [
                    ("cases", predict_vp_legendre_at_p_cases(p, n).expect("odd p")),
                    ("digits", predict_vp_legendre_at_p_digits(p, n).expect("odd p")),
                    ("recurrence", predict_by_recurrence(p, n).expect("odd p")),
                ];
                compare(n, &preds, actual)
            })
        }
        TheoremId::Thm5 => {
            let p = req.fixed_p(Prime::TWO)?;
            p_used = Some(p);
            let x = rat(2);
            sweep(range, |n| {
                let actual = vp_rat(p, &legendre_eval_rodrigues(n, &x));
                compare(n, &[("at-2", predict_vp_legendre_at_2(n))], actual)
            })
        }
        TheoremId::Thm6 => {
            let p = req.need_odd_p()?;
            verify_recurrence(p, range)?
        }
        TheoremId::Thm7 => {
            let p = req.need_odd_p()?;
            let x = rat(p.get() as i64);
            sweep(range, |n| {
                let via_m = vp_rat(p, &cigler_eval(n, &x));
                let via_p = vp_rat(p, &legendre_eval_rodrigues(n, &x));
                let mut out = compare(n, &[("predictor", predict_vp_cigler(p, n).expect("odd p"))], via_m);
                if via_m != via_p {
                    out.2.push(Mismatch::new(n, via_p, via_m).note("nu_p(P_n(p)) vs nu_p(M_n(p))"));
                }
                out
            })
        }
        TheoremId::Conj1 => {
            let p = req.fixed_p(Prime::THREE)?;
            p_used = Some(p);
            sweep(range, |i| {
                let value = central_delannoy(i);
                counterexample_aware(i, predict_b_conjecture1(i), &value, p)
            })
        }
        TheoremId::Conj2 => {
            let p = req.fixed_p(Prime::THREE)?;
            p_used = Some(p);
            sweep(range, |n| {
                let value = cube_sum_2k(n);
                counterexample_aware(n, predict_cube_sum_v3(n), &value, p)
            })
        }
        TheoremId::Strauss => {
            let p = req.fixed_p(Prime::THREE)?;
            p_used = Some(p);
            if range.start == 0 {
                return Err(Error::Hypothesis("strauss is stated for n ≥ 1 (d(0) = 0)".into()));
            }
            // d(n) is a running sum, so build the prefix once.
            let spec = SequenceSpec::PartialSumCentralBinomial;
            let values: Vec<ExactRational> = spec
                .stream()
                .skip(range.start as usize)
                .take(range.len() as usize)
                .collect();
            sweep(range, |n| {
                let actual = vp_rat(p, &values[(n - range.start) as usize]);
                compare(n, &[("formula", predict_strauss_shallit(n).expect("n ≥ 1"))], actual)
            })
        }
        TheoremId::Lemma6 => {
            let p = req.need_p()?;
            sweep(range, |m| {
                let lhs1 = vp_u64(p, 2 * m + 1) + vp_int(p, &BigInt::from(binomial(2 * m, m)));
                let lhs2 = vp_u64(p, m + 1) + vp_int(p, &BigInt::from(binomial(2 * m + 1, m)));
                let num = 2 * digit_sum(p, m) as i64 - digit_sum(p, 2 * m + 1) as i64 + 1;
                let den = p.get() as i64 - 1;
                let mut out: Outcome = (1, 0, Vec::new());
                if num % den != 0 {
                    out.2.push(Mismatch::new(m, format!("{num}/{den}"), lhs1).note("digit form not integral"));
                    return out;
                }
                let rhs = PadicVal::Finite(num / den);
                if lhs1 != rhs {
                    out.2.push(Mismatch::new(m, rhs, lhs1).note("nu(2m+1)+nu(C(2m,m))"));
                }
                if lhs2 != rhs {
                    out.2.push(Mismatch::new(m, rhs, lhs2).note("nu(m+1)+nu(C(2m+1,m))"));
                }
                out
            })
        }
        TheoremId::Lemma8 | TheoremId::Lemma9 => {
            let p = req.need_p()?;
            let r = req.need_r()?;
            PredictionContext::with_r(p, r.clone())?;
            r_used = Some(r.to_string());
            let want_parity = u64::from(req.theorem == TheoremId::Lemma9);
            sweep(range, |n| {
                if n % 2 != want_parity {
                    return (0, 0, Vec::new());
                }
                let actual = vp_rat(p, &q_eval(n, r));
                compare(n, &[("q", predict_vp_q(p, r, n).expect("hypothesis checked"))], actual)
            })
        }
        TheoremId::EqMa => {
            let x = req.need_r()?;
            let two = rat(2);
            if *x == two {
                return Err(Error::Hypothesis("eq-ma needs x ≠ 2".into()));
            }
            r_used = Some(x.to_string());
            p_used = None;
            let factor = &two - x;
            let y = x.clone() / factor.clone();
            sweep(range, |n| {
                let lhs = cigler_eval(n, x);
                let rhs = factor.pow(n as i32) * legendre_eval_rodrigues(n, &y);
                let mm = if lhs == rhs { vec![] } else { vec![Mismatch::new(n, &rhs, &lhs).note("(2-x)^n P_n(x/(2-x)) vs M_n(x)")] };
                (1, 0, mm)
            })
        }
        TheoremId::FormulaAgreement => {
            let x = req.need_r()?;
            r_used = Some(x.to_string());
            p_used = None;
            sweep(range, |n| {
                let rodrigues = legendre_eval_rodrigues(n, x);
                let mut mm = Vec::new();
                let binomial_form = legendre_eval_binomial(n, x);
                if binomial_form != rodrigues {
                    mm.push(Mismatch::new(n, &binomial_form, &rodrigues).note("binomial-form vs rodrigues"));
                }
                let square = legendre_eval_square_form(n, x);
                if square != rodrigues {
                    mm.push(Mismatch::new(n, &square, &rodrigues).note("square-form vs rodrigues"));
                }
                (1, 0, mm)
            })
        }
    };
    Ok(VerificationReport::finish(
        req.theorem.to_string(),
        req.theorem.standing(),
        p_used,
        r_used,
        Some(range),
        checked,
        skipped,
        mismatches,
    ))
}

fn counterexample_aware(n: u64, predicted: PadicVal, value: &BigInt, p: Prime) -> Outcome {
    let actual = vp_int(p, value);
    if predicted == actual {
        return (1, 0, Vec::new());
    }
    let mut m = Mismatch::new(n, predicted, actual);
    m.exact_value = Some(value.to_string());
    (1, 0, vec![m])
}

/// f(pn + a) from f(n) by one recurrence step, with both f values taken
/// from exact evaluation. The indices needed are dense, so the exact values
/// are streamed through the three-term recurrence instead of evaluated one
/// by one.
fn verify_recurrence(p: Prime, range: NRange) -> Result<Outcome> {
    let pv = p.get();
    let top = pv * range.end + pv - 1;
    let spec = SequenceSpec::LegendreAt(rat(pv as i64));
    let oracle = build_table(&spec, p, top, &TableOptions::default())?;
    let f = |k: u64| oracle.get(k).expect("index within table");
    Ok(sweep(range, |n| {
        let f_n = f(n);
        let mut mm = Vec::new();
        for a in 0..pv {
            let idx = pv * n + a;
            let stepped = recurrence_step(p, f_n, n, a).expect("a < p, f(n) finite");
            let actual = f(idx);
            if stepped != actual {
                mm.push(Mismatch::new(idx, stepped, actual).note(format!("from f({n}), a = {a}")));
            }
        }
        (pv, 0, mm)
    }))
}

/// Evaluates the predictor behind `theorem` at one index.
pub fn predict(theorem: TheoremId, p: Option<Prime>, r: Option<&ExactRational>, n: u64) -> Result<PadicVal> {
    let req = VerifyRequest { theorem, p, r: r.cloned(), range: NRange::new(n, n)? };
    match theorem {
        TheoremId::Thm3 => {
            let ctx = PredictionContext::with_r(req.need_p()?, req.need_r()?.clone())?;
            predict_vp_legendre_general(&ctx, n)
        }
        TheoremId::Thm4 => predict_vp_legendre_at_p_digits(req.need_odd_p()?, n),
        TheoremId::Thm5 => {
            req.fixed_p(Prime::TWO)?;
            Ok(predict_vp_legendre_at_2(n))
        }
        TheoremId::Thm6 => predict_by_recurrence(req.need_odd_p()?, n),
        TheoremId::Thm7 => predict_vp_cigler(req.need_odd_p()?, n),
        TheoremId::Conj1 => {
            req.fixed_p(Prime::THREE)?;
            Ok(predict_b_conjecture1(n))
        }
        TheoremId::Conj2 => {
            req.fixed_p(Prime::THREE)?;
            Ok(predict_cube_sum_v3(n))
        }
        TheoremId::Strauss => {
            req.fixed_p(Prime::THREE)?;
            predict_strauss_shallit(n)
        }
        TheoremId::Lemma6 => {
            let p = req.need_p()?;
            let num = 2 * digit_sum(p, n) as i64 - digit_sum(p, 2 * n + 1) as i64 + 1;
            Ok(PadicVal::Finite(num / (p.get() as i64 - 1)))
        }
        TheoremId::Lemma8 | TheoremId::Lemma9 => predict_vp_q(req.need_p()?, req.need_r()?, n),
        TheoremId::EqMa | TheoremId::FormulaAgreement => {
            Err(Error::Hypothesis(format!("{theorem} is an identity between evaluations, not a valuation predictor")))
        }
    }
}
