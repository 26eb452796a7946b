use lpv_core::arith::{
    binomial, binomial_valuation_digits, digit_sum, factorial_valuation_digits, kummer_carries,
    vp_int, vp_rat, vp_u64, ExactRational, PadicVal, Prime,
};
use lpv_core::kernel::{
    build_table, estimate_kernel_rank, mine_relations, verify_relation, MineConfig, TableOptions,
    ValuationTable,
};
use lpv_core::polyseq::{
    central_delannoy, cigler_eval, eval_sequence, legendre_eval_binomial, legendre_eval_rodrigues,
    legendre_eval_square_form, partial_sum_central_binomial, q_eval, SequenceSpec,
};
use lpv_core::predictors::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| Prime::new(p).unwrap())
}

fn odd_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(PRIMES[1..].to_vec()).prop_map(|p| Prime::new(p).unwrap())
}

fn rational() -> impl Strategy<Value = ExactRational> {
    (-40i64..40, 1i64..30).prop_map(|(a, b)| ExactRational::new(a.into(), b.into()).unwrap())
}

// Bonnet's recurrence over plain BigRational, as an oracle for P_n(x).
fn legendre_bonnet(n: u64, x: &ExactRational) -> BigRational {
    let x = x.as_big_rational().clone();
    let (mut prev, mut cur) = (BigRational::one(), x.clone());
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let k = BigInt::from(k);
        let next = (BigRational::from_integer(&k * 2 + 1) * &x * &cur
            - BigRational::from_integer(k.clone()) * &prev)
            / BigRational::from_integer(k + 1);
        prev = cur;
        cur = next;
    }
    cur
}

fn trial_vp(p: u64, mut n: i128) -> i64 {
    let mut v = 0;
    while n % p as i128 == 0 {
        n /= p as i128;
        v += 1;
    }
    v
}

fn pascal_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row
}

proptest! {
    #[test]
    fn vp_matches_trial_division(p in prime(), n in (1i64..i64::MAX).prop_union(i64::MIN + 1..0)) {
        let want = PadicVal::Finite(trial_vp(p.get(), n as i128));
        prop_assert_eq!(vp_int(p, &BigInt::from(n)), want);
        if n > 0 {
            prop_assert_eq!(vp_u64(p, n as u64), want);
        }
    }

    #[test]
    fn vp_of_scaled_power(p in prime(), e in 0u32..300, u in 1u64..1000) {
        let u = if u % p.get() == 0 { u + 1 } else { u };
        let n = BigInt::from(p.get()).pow(e) * u;
        prop_assert_eq!(vp_int(p, &n), PadicVal::Finite(e as i64));
        prop_assert_eq!(vp_int(p, &-n), PadicVal::Finite(e as i64));
    }

    #[test]
    fn vp_rat_is_difference(p in prime(), a in 1i64..1_000_000, b in 1i64..1_000_000) {
        let r = ExactRational::new(a.into(), b.into()).unwrap();
        let want = trial_vp(p.get(), a as i128) - trial_vp(p.get(), b as i128);
        prop_assert_eq!(vp_rat(p, &r), PadicVal::Finite(want));
    }

    #[test]
    fn rational_text_round_trip(r in rational()) {
        let back: ExactRational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn digit_shift(p in prime(), n in 0u64..1 << 40, a in 0u64..13) {
        let a = a % p.get();
        prop_assert_eq!(digit_sum(p, n * p.get() + a), digit_sum(p, n) + a);
    }

    #[test]
    fn binomial_valuation_is_kummer(p in prime(), n in 0u64..1 << 40, k in 0u64..1 << 40) {
        let (n, k) = if k > n { (k, n) } else { (n, k) };
        prop_assert_eq!(binomial_valuation_digits(p, n, k).unwrap(), kummer_carries(p, k, n - k));
    }

    #[test]
    fn central_binomial_2adic(m in 0u64..1 << 40) {
        let two = Prime::TWO;
        let s = digit_sum(two, 2 * m);
        prop_assert_eq!(binomial_valuation_digits(two, 2 * m, m).unwrap(), s);
        prop_assert_eq!(2 * m - factorial_valuation_digits(two, 2 * m), s);
    }

    #[test]
    fn lemma6_identity(p in prime(), m in 0u64..1 << 30) {
        // ν_p(C(2m,m)) vs digit sums: 2ν_p(m!) + ν_p(C(2m,m)) = ν_p((2m)!)
        let lhs = binomial_valuation_digits(p, 2 * m, m).unwrap();
        let rhs = (2 * digit_sum(p, m) - digit_sum(p, 2 * m)) / (p.get() - 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn legendre_formulas_match_bonnet(n in 0u64..60, x in rational()) {
        let want = legendre_bonnet(n, &x);
        prop_assert_eq!(legendre_eval_binomial(n, &x).as_big_rational().clone(), want.clone());
        prop_assert_eq!(legendre_eval_rodrigues(n, &x).as_big_rational().clone(), want.clone());
        prop_assert_eq!(legendre_eval_square_form(n, &x).as_big_rational().clone(), want.clone());
    }

    #[test]
    fn q_is_scaled_legendre(n in 0u64..60, x in rational()) {
        let two_n = ExactRational::from_integer(BigInt::one() << n as usize);
        prop_assert_eq!(q_eval(n, &x), two_n * legendre_eval_rodrigues(n, &x));
    }

    #[test]
    fn cigler_substitution(n in 0u64..50, x in rational()) {
        let two = ExactRational::from_integer(BigInt::from(2));
        prop_assume!(x != two);
        let c = two - x.clone();
        let y = x.clone() / c.clone();
        prop_assert_eq!(cigler_eval(n, &x), c.pow(n as i32) * legendre_eval_rodrigues(n, &y));
    }

    #[test]
    fn delannoy_is_legendre_at_three(n in 0u64..120) {
        let three = ExactRational::from_integer(BigInt::from(3));
        prop_assert_eq!(
            ExactRational::from_integer(central_delannoy(n)),
            legendre_eval_rodrigues(n, &three)
        );
    }

    #[test]
    fn dsum_increment(n in 0u64..200) {
        let step = partial_sum_central_binomial(n + 1) - partial_sum_central_binomial(n);
        prop_assert_eq!(step, BigInt::from(binomial(2 * n, n)));
    }

    #[test]
    fn at_p_predictors_agree(p in odd_prime(), n in 0u64..1 << 40) {
        let cases = predict_vp_legendre_at_p_cases(p, n).unwrap();
        prop_assert_eq!(predict_vp_legendre_at_p_digits(p, n).unwrap(), cases);
        prop_assert_eq!(predict_by_recurrence(p, n).unwrap(), cases);
        let pr = ExactRational::from_integer(BigInt::from(p.get()));
        let ctx = PredictionContext::with_r(p, pr).unwrap();
        prop_assert_eq!(predict_vp_legendre_general(&ctx, n).unwrap(), cases);
        prop_assert_eq!(predict_vp_legendre_general_oneline(&ctx, n).unwrap(), cases);
    }

    #[test]
    fn recurrence_step_consistent(p in odd_prime(), n in 0u64..1 << 30, a in 0u64..13) {
        let a = a % p.get();
        let f_n = predict_vp_legendre_at_p_digits(p, n).unwrap();
        prop_assert_eq!(
            recurrence_step(p, f_n, n, a).unwrap(),
            predict_vp_legendre_at_p_digits(p, p.get() * n + a).unwrap()
        );
    }

    #[test]
    fn conjecture1_matches_digits(i in 0u64..1 << 40) {
        prop_assert_eq!(
            predict_b_conjecture1(i),
            predict_vp_legendre_at_p_digits(Prime::THREE, i).unwrap()
        );
    }

    #[test]
    fn q_scaling_bridge(p in odd_prime(), k in 1i64..4, u in 1i64..20, w in 1i64..20, n in 0u64..1 << 30) {
        let pk = BigInt::from(p.get()).pow(k as u32);
        let w = if w % p.get() as i64 == 0 { w + 1 } else { w };
        let r = ExactRational::new(pk * u, w.into()).unwrap();
        let ctx = PredictionContext::with_r(p, r.clone()).unwrap();
        prop_assert_eq!(
            predict_vp_q(p, &r, n).unwrap(),
            predict_vp_legendre_general(&ctx, n).unwrap()
        );
    }

    #[test]
    fn table_text_round_trip(vals in prop::collection::vec(prop::option::of(0i64..1000), 1..60), p in prime()) {
        let values: Vec<PadicVal> = vals.into_iter()
            .map(|v| v.map_or(PadicVal::Infinite, PadicVal::Finite))
            .collect();
        let t = ValuationTable::from_values(SequenceSpec::CentralDelannoy, p, values).unwrap();
        let text = t.to_text();
        let back = ValuationTable::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, t);
    }
}

#[test]
fn factorial_valuation_matches_exact_factorial() {
    for p in PRIMES {
        let p = Prime::new(p).unwrap();
        let mut f = BigInt::one();
        for n in 0..=500u64 {
            if n > 0 {
                f *= n;
            }
            assert_eq!(vp_int(p, &f), PadicVal::Finite(factorial_valuation_digits(p, n) as i64), "p={p} n={n}");
        }
    }
}

#[test]
fn binomials_match_pascal_and_kummer() {
    for n in 0..=300usize {
        let row = pascal_row(n);
        for (k, c) in row.iter().enumerate() {
            assert_eq!(&binomial(n as u64, k as u64), c);
            for p in [2u64, 3, 5, 7] {
                let p = Prime::new(p).unwrap();
                let exact = vp_int(p, &BigInt::from(c.clone()));
                let digits = binomial_valuation_digits(p, n as u64, k as u64).unwrap();
                assert_eq!(exact, PadicVal::Finite(digits as i64));
            }
        }
    }
}

#[test]
fn factorial_bound_used_in_proofs() {
    for p in PRIMES {
        let p = Prime::new(p).unwrap();
        for j in 1..=1000u64 {
            assert!(factorial_valuation_digits(p, 2 * j + 1) < 2 * j);
        }
    }
}

#[test]
fn table_entries_are_valuations_of_evaluations() {
    let specs = ["legendre:3", "legendre:1/2", "q:5/3", "cigler:3", "delannoy", "dsum", "cubesum"];
    for s in specs {
        let spec: SequenceSpec = s.parse().unwrap();
        for p in [2u64, 3, 5] {
            let p = Prime::new(p).unwrap();
            let t = build_table(&spec, p, 80, &TableOptions::default()).unwrap();
            for n in 0..=80u64 {
                assert_eq!(t.get(n).unwrap(), vp_rat(p, &eval_sequence(&spec, n)), "{s} p={p} n={n}");
            }
        }
    }
}

fn csum_table(n_max: u64) -> ValuationTable {
    build_table(&SequenceSpec::CumulativeCentralBinomial, Prime::THREE, n_max, &TableOptions::default()).unwrap()
}

#[test]
fn mined_relations_are_sound_and_stable() {
    let small = csum_table(3u64.pow(7));
    let big = csum_table(3u64.pow(9));
    let cfg = MineConfig { max_e: 2, min_support: 20, offset_bound: None };
    let mined = mine_relations(&small, &cfg).unwrap();
    assert!(!mined.is_empty());
    for m in &mined {
        assert_eq!(m.violations, 0);
        assert!(m.support >= 20);
        let again = verify_relation(&small, m.candidate);
        assert_eq!(again.violations, 0);
    }
    // A relation found on the longer table also holds on every prefix.
    for m in mine_relations(&big, &cfg).unwrap() {
        assert_eq!(verify_relation(&small, m.candidate).violations, 0, "{}", m.candidate);
    }
}

#[test]
fn kernel_rank_is_monotone_in_depth() {
    let t = build_table(&"legendre:3".parse().unwrap(), Prime::THREE, 3u64.pow(4) * 60, &TableOptions::default()).unwrap();
    let mut last = 0;
    for e in 0..=4 {
        let r = estimate_kernel_rank(&t, e, 60).unwrap().rank;
        assert!(r >= last);
        last = r;
    }
}

#[test]
fn constant_zero_table_has_rank_one() {
    let t = ValuationTable::from_values(SequenceSpec::CentralDelannoy, Prime::TWO, vec![PadicVal::Finite(0); 100]).unwrap();
    assert_eq!(estimate_kernel_rank(&t, 2, 20).unwrap().rank, 1);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let spec: SequenceSpec = "legendre:5/3".parse().unwrap();
            let opts = TableOptions { strategy: lpv_core::kernel::BuildStrategy::Direct, ..TableOptions::default() };
            let t = build_table(&spec, Prime::new(5).unwrap(), 400, &opts).unwrap();
            let m = mine_relations(&csum_table(3u64.pow(6)), &MineConfig { max_e: 2, min_support: 10, offset_bound: None }).unwrap();
            (t.to_text(), m)
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn zero_values_are_infinite() {
    assert!(vp_int(Prime::TWO, &BigInt::zero()).is_infinite());
}
