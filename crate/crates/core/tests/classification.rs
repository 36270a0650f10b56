use proptest::prelude::*;
use yr_core::classify::{
    classify_finite_dim, drinfeld_solutions, drinfeld_solve, symmetric_factor_check, verma_exists, ClassifyStatus,
    VermaViolation, DEFAULT_MAX_DEG,
};
use yr_core::reflection::Signature;
use yr_core::repr::{
    evaluation_module, highest_vector, one_dim_b_module, predicted_mu, restrict_to_b, tensor_module, vector_module,
    weight_on, FiniteModule, HighestWeight,
};
use yr_core::{Polynomial, Rational, RationalFunction};

fn monic(lower: Vec<i64>) -> Polynomial {
    let mut c = lower;
    c.push(1);
    Polynomial::from_ints(&c)
}

fn ratio(p: &Polynomial) -> RationalFunction {
    RationalFunction::new(p.shift(&Rational::one()), p.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn drinfeld_round_trip(lower in prop::collection::vec(-9i64..=9, 0..=4)) {
        let p = monic(lower);
        prop_assert_eq!(drinfeld_solve(&ratio(&p), DEFAULT_MAX_DEG), Some(p.clone()));
        prop_assert_eq!(drinfeld_solutions(&ratio(&p), 8), vec![p]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// `(-1)^{deg Q} Q(u) Q(-u+c)` is monic with roots `a_j` and `c - a_j`.
    #[test]
    fn symmetric_factor_from_roots(
        roots in prop::collection::vec((-8i64..=8, 1i64..=3), 0..=3),
        n in 2usize..=4,
        i_off in 0usize..3,
    ) {
        let i = 1 + i_off % (n - 1);
        let c = Rational::from_int((n - i + 1) as i64);
        let a: Vec<Rational> = roots.iter().map(|&(p, q)| Rational::new(p, q)).collect();
        let q = Polynomial::from_roots(&a);
        let mut all = a.clone();
        all.extend(a.iter().map(|x| &c - x));
        let p = Polynomial::from_roots(&all);
        prop_assert!(symmetric_factor_check(&p, &q, i, n));
        prop_assert_eq!(p.reflect(&c), p.clone());
        let bumped = &p + &Polynomial::u();
        prop_assert!(!symmetric_factor_check(&bumped, &q, i, n));
    }
}

fn module_for_q(roots: &[i64]) -> FiniteModule {
    let q = |a: i64| Rational::from_int(a);
    let mut m: Option<FiniteModule> = None;
    for &a in roots {
        let l = evaluation_module(&q(1 - a), &q(-a)).unwrap();
        m = Some(match m {
            None => l,
            Some(m0) => tensor_module(&m0, &l).unwrap(),
        });
    }
    m.unwrap()
}

fn weight(m: &FiniteModule) -> HighestWeight {
    let hv = highest_vector(m).unwrap();
    match hv.weight {
        Some(w) => w,
        None => {
            let mut e0 = vec![Rational::zero(); m.dim];
            e0[0] = Rational::one();
            weight_on(m, &e0).unwrap()
        }
    }
}

#[test]
fn sufficiency_round_trip_from_q() {
    let sig = Signature::new(2, 0).unwrap();
    for roots in [vec![0], vec![3], vec![-2], vec![0, 1], vec![2, -1], vec![1, 1], vec![0, 2, -3]] {
        let q = Polynomial::from_roots(&roots.iter().map(|&a| Rational::from_int(a)).collect::<Vec<_>>());
        let b = restrict_to_b(&module_for_q(&roots), sig).unwrap();
        let rep = classify_finite_dim(&weight(&b), sig, DEFAULT_MAX_DEG).unwrap();
        assert_eq!(rep.status, ClassifyStatus::FiniteDimensional, "{roots:?}");
        let p = &rep.data.unwrap().polys[0];
        assert!(symmetric_factor_check(p, &q, 1, 2), "{roots:?}: P = {p}");
    }
}

#[test]
fn one_dimensional_modules_classify_to_reflected_gamma() {
    let sig = Signature::new(2, 1).unwrap();
    for g in [-3i64, -2, 0, 2, 5] {
        let m = one_dim_b_module(sig, &Rational::from_int(g)).unwrap();
        let rep = classify_finite_dim(&weight(&m), sig, DEFAULT_MAX_DEG).unwrap();
        let data = rep.data.expect("finite");
        assert_eq!(data.polys, vec![Polynomial::one()], "V({g})");
        assert_eq!(data.gamma, Some(Rational::from_int(1 - g)), "V({g})");
    }
}

#[test]
fn restricted_modules_match_prediction_and_classify() {
    let q = |a: i64| Rational::from_int(a);
    for n in [2usize, 3] {
        for l in 0..=n / 2 {
            let sig = Signature::new(n, l).unwrap();
            for c in [0i64, 2] {
                let v = vector_module(n, &q(c));
                let mut lam = vec![RationalFunction::one(); n];
                lam[0] = RationalFunction::mobius(1, c + 1, 1, c).unwrap();
                let lam = HighestWeight(lam);
                let b = restrict_to_b(&v, sig).unwrap();
                let w = weight(&b);
                assert_eq!(w, predicted_mu(&lam, sig, None).unwrap(), "n={n} l={l} c={c}");
                assert!(verma_exists(&w, sig).unwrap().exists);
                let rep = classify_finite_dim(&w, sig, DEFAULT_MAX_DEG).unwrap();
                assert_eq!(rep.status, ClassifyStatus::FiniteDimensional, "n={n} l={l} c={c}: {:?}", rep.issues);
                let data = rep.data.unwrap();
                for (i, p) in data.polys.iter().enumerate() {
                    assert_eq!(p.reflect(&q((n - i) as i64)), *p);
                }
                if let Some(g) = &data.gamma {
                    assert!(!data.polys[sig.k() - 1].eval(g).is_zero());
                }
            }
        }
    }
}

#[test]
fn verma_violations_are_located() {
    let sig = Signature::new(3, 0).unwrap();
    let mut w = HighestWeight::trivial(3);
    assert!(verma_exists(&w, sig).unwrap().exists);
    w.0[1] = RationalFunction::mobius(1, 1, 1, -1).unwrap();
    w.0[2] = RationalFunction::mobius(1, 1, 1, -1).unwrap();
    let rep = verma_exists(&w, sig).unwrap();
    assert!(matches!(rep.violation, Some(VermaViolation::TildeSymmetry { .. })));
    w.0[2] = RationalFunction::from_int(3);
    assert_eq!(verma_exists(&w, sig).unwrap().violation, Some(VermaViolation::LastComponentUnitary));
}

#[test]
fn non_polynomial_ratio_is_infinite_dimensional() {
    let sig = Signature::new(2, 0).unwrap();
    // mu~_1 / mu~_2 with limit 2 at infinity
    let w = HighestWeight(vec![RationalFunction::mobius(3, 0, 1, -1).unwrap(), RationalFunction::one()]);
    let rep = classify_finite_dim(&w, sig, DEFAULT_MAX_DEG).unwrap();
    assert_ne!(rep.status, ClassifyStatus::FiniteDimensional);
    assert!(rep.data.is_none());
}

#[test]
fn degree_bound_reports_undecided() {
    let sig = Signature::new(2, 0).unwrap();
    let p = Polynomial::from_roots(&[0, 2, -1, 3].map(Rational::from_int));
    let b = restrict_to_b(&module_for_q(&[0, -1]), sig).unwrap();
    let w = weight(&b);
    assert_eq!(
        classify_finite_dim(&w, sig, 3).unwrap().status,
        ClassifyStatus::UndecidedAtBound
    );
    let data = classify_finite_dim(&w, sig, 4).unwrap().data.unwrap();
    assert_eq!(data.polys, vec![p]);
}
