//! Property tests for the vector pre-orders, the distribution code, and the
//! order-checker hierarchy.

use proptest::prelude::*;

use gm_order::archimedean::Generator;
use gm_order::extremes::{CurveKind, ExtremeCurve, PopulationSpec};
use gm_order::gm::GMParams;
use gm_order::majorize;
use gm_order::rng::SplitMix64;
use gm_order::stochorder::{check_hr, check_lr, check_st, Grid, Tol};

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..10.0, n)
}

proptest! {
    #[test]
    fn majorization_implies_both_weak_orders(x in vec_strategy(5), steps in 1usize..4) {
        let mut sorted = x.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut rng = SplitMix64::new(steps as u64);
        let mut y = sorted.clone();
        for _ in 0..steps {
            let idx = rng.below(4);
            majorize::robin_hood_step(&mut y, idx, rng.uniform(0.0, 1.0));
        }
        prop_assert!(majorize::majorizes(&sorted, &y).unwrap());
        prop_assert!(majorize::weak_supermajorizes(&sorted, &y).unwrap());
        prop_assert!(majorize::weak_submajorizes(&sorted, &y).unwrap());
    }

    #[test]
    fn relations_reflexive_and_permutation_invariant(x in vec_strategy(4), seed in 0u64..1000) {
        prop_assert!(majorize::majorizes(&x, &x).unwrap());
        prop_assert!(majorize::weak_supermajorizes(&x, &x).unwrap());
        prop_assert!(majorize::weak_submajorizes(&x, &x).unwrap());
        let mut rng = SplitMix64::new(seed);
        let mut shuffled = x.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.below(i + 1));
        }
        prop_assert!(majorize::majorizes(&shuffled, &x).unwrap());
        prop_assert!(majorize::majorizes(&x, &shuffled).unwrap());
    }

    #[test]
    fn pair_majorization_is_max_comparison(a in 0.0f64..10.0, b in 0.0f64..10.0, c in 0.0f64..10.0) {
        // same totals: x = (a, b+c-a) needs entries nonnegative
        let total = b + c;
        prop_assume!(a <= total);
        let x = [a, total - a];
        let y = [b, c];
        let by_def = majorize::majorizes(&x, &y).unwrap();
        let by_max = x[0].max(x[1]) >= y[0].max(y[1]) - majorize::SUM_TOL;
        prop_assert_eq!(by_def, by_max);
    }

    #[test]
    fn quantile_cdf_round_trip(
        alpha in 0.05f64..10.0,
        beta in 0.0f64..2.0,
        lambda in 0.0f64..3.0,
        q in 0.0f64..0.999999,
    ) {
        let p = GMParams::new(alpha, beta, lambda).unwrap();
        let x = p.quantile(q).unwrap();
        prop_assert!(x >= 0.0);
        let back = p.cdf(x).unwrap();
        prop_assert!((back - q).abs() <= 1e-10, "q={} back={}", q, back);
    }

    #[test]
    fn quantile_is_monotone(
        alpha in 0.05f64..10.0,
        beta in 0.0f64..2.0,
        lambda in 0.0f64..3.0,
        q1 in 0.0f64..0.999,
        dq in 0.0f64..0.0009,
    ) {
        let p = GMParams::new(alpha, beta, lambda).unwrap();
        let x1 = p.quantile(q1).unwrap();
        let x2 = p.quantile(q1 + dq).unwrap();
        prop_assert!(x2 >= x1 - 1e-9);
    }

    #[test]
    fn generator_round_trip(theta in 0.2f64..5.0, u in 1e-6f64..1.0) {
        let g = Generator::clayton(theta).unwrap();
        prop_assert!((g.psi(g.phi(u)) - u).abs() <= 1e-10);
        let gh = Generator::gumbel_hougaard(1.0 + theta).unwrap();
        prop_assert!((gh.psi(gh.phi(u)) - u).abs() <= 1e-10);
    }

    #[test]
    fn copula_is_grounded_and_bounded(theta in 0.2f64..5.0, u in vec_strategy(3)) {
        let g = Generator::clayton(theta).unwrap();
        let clamped: Vec<f64> = u.iter().map(|&v| (v / 10.0).clamp(0.0, 1.0)).collect();
        let c = g.copula_value(&clamped);
        prop_assert!((0.0..=1.0).contains(&c));
        let mut with_zero = clamped;
        with_zero[0] = 0.0;
        prop_assert_eq!(g.copula_value(&with_zero), 0.0);
    }
}

/// Classical order hierarchy at grid level: whenever the stronger relation
/// HOLDS between two GM lifetimes, the weaker ones must too.
#[test]
fn lr_implies_hr_implies_st() {
    let tol = Tol::default();
    let mut rng = SplitMix64::new(71);
    let mut lr_holds = 0;
    for trial in 0..120 {
        // mix free draws with lambda-shifted pairs that are lr-ordered by
        // construction, so the implication is exercised non-vacuously
        let a = GMParams::new(
            rng.uniform(0.1, 4.0),
            rng.uniform(0.0, 1.5),
            rng.uniform(0.0, 2.0),
        )
        .unwrap();
        let b = if trial % 2 == 0 {
            GMParams::new(
                rng.uniform(0.1, 4.0),
                rng.uniform(0.0, 1.5),
                rng.uniform(0.0, 2.0),
            )
            .unwrap()
        } else {
            GMParams::new(a.alpha(), a.beta(), a.lambda() * rng.uniform(0.2, 1.0)).unwrap()
        };
        let pop = |m: GMParams| PopulationSpec::independent(vec![m]).unwrap();
        let curves = |kind| {
            (
                ExtremeCurve::new(pop(a), kind).unwrap(),
                ExtremeCurve::new(pop(b), kind).unwrap(),
            )
        };
        let x_hi = pop(a)
            .x_hi_min_tail()
            .unwrap()
            .max(pop(b).x_hi_min_tail().unwrap());
        let grid = Grid::linear(x_hi, 800).unwrap();
        let (da, db) = curves(CurveKind::MinDensity);
        let lr = check_lr(&da, &db, &grid, tol);
        if lr.forward.passed() {
            lr_holds += 1;
            let (sa, sb) = curves(CurveKind::MinSurvival);
            let hr = check_hr(&sa, &sb, &grid, tol);
            assert!(
                hr.forward.passed(),
                "lr held but hr failed: {a:?} vs {b:?}\n{hr:#?}"
            );
            let st = check_st(&sa, &sb, &grid, tol);
            assert!(st.forward.passed(), "hr held but st failed: {a:?} vs {b:?}");
        }
    }
    assert!(
        lr_holds >= 30,
        "hierarchy test barely exercised: {lr_holds}"
    );
}

/// The two hr characterizations (survival-ratio monotonicity and pointwise
/// hazard dominance) agree on independent GM minima; the checker runs both
/// routes and any split would surface as INCONCLUSIVE.
#[test]
fn hr_routes_agree_on_independent_minima() {
    let tol = Tol::default();
    let mut rng = SplitMix64::new(73);
    for _ in 0..60 {
        let n = 1 + rng.below(4);
        let members = |rng: &mut SplitMix64| -> Vec<GMParams> {
            (0..n)
                .map(|_| {
                    GMParams::new(
                        rng.uniform(0.05, 5.0),
                        rng.uniform(0.05, 1.5),
                        rng.uniform(0.05, 2.0),
                    )
                    .unwrap()
                })
                .collect()
        };
        let pa = PopulationSpec::independent(members(&mut rng)).unwrap();
        let pb = PopulationSpec::independent(members(&mut rng)).unwrap();
        let x_hi = pa.x_hi_min_tail().unwrap().max(pb.x_hi_min_tail().unwrap());
        let a = ExtremeCurve::new(pa, CurveKind::MinSurvival).unwrap();
        let b = ExtremeCurve::new(pb, CurveKind::MinSurvival).unwrap();
        let verdict = check_hr(&a, &b, &Grid::linear(x_hi, 700).unwrap(), tol);
        assert!(
            verdict.note.as_deref() == Some("cross-checked against pointwise hazard dominance"),
            "cross-check route did not run"
        );
        if let gm_order::stochorder::DirectionOutcome::Errored { reason } = &verdict.forward {
            panic!("routes disagreed: {reason}");
        }
    }
}
