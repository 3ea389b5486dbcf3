//! Frozen witnesses for every place the registry deviates from the stated
//! theorem forms. Each test reconstructs a scenario that satisfies the
//! *stated* hypotheses and demonstrates the violation the deviation guards
//! against, so a silent regression in either direction gets caught.

use gm_order::extremes::{CurveKind, ExtremeCurve, PopulationSpec};
use gm_order::gm::GMParams;
use gm_order::harness::ShockTransform;
use gm_order::majorize;
use gm_order::stochorder::{check_ageing_faster, check_hr, Grid, OrderStatus, Tol};

fn members(alpha: &[f64], beta: &[f64], lambda: &[f64]) -> Vec<GMParams> {
    alpha
        .iter()
        .zip(beta)
        .zip(lambda)
        .map(|((a, b), l)| GMParams::new(*a, *b, *l).unwrap())
        .collect()
}

/// The reciprocal-majorization step of the maxima theorems fails in general:
/// this hypothesis-satisfying pair (scalar alpha, all vectors positive
/// decreasing, 1/beta weakly submajorizing 1/beta*, independence copulas)
/// has F_X above F_Y by 5.7e-3, breaking the claimed st dominance.
#[test]
fn reciprocal_beta_form_admits_a_counterexample() {
    let beta = [1.73718, 0.74467];
    let beta2 = [1.14076, 1.01965];
    let lambda = [1.40098, 0.65161];
    let alpha = [1.6190, 1.6190];
    // stated hypotheses all hold
    assert!(majorize::is_positive_decreasing(&beta));
    assert!(majorize::is_positive_decreasing(&beta2));
    assert!(majorize::is_positive_decreasing(&lambda));
    let nu: Vec<f64> = beta.iter().map(|b| 1.0 / b).collect();
    let nu2: Vec<f64> = beta2.iter().map(|b| 1.0 / b).collect();
    assert!(majorize::weak_submajorizes(&nu, &nu2).unwrap());

    let fx = PopulationSpec::independent(members(&alpha, &beta, &lambda)).unwrap();
    let fy = PopulationSpec::independent(members(&alpha, &beta2, &lambda)).unwrap();
    let x = 0.4548;
    let gap = fx.max_cdf(x).unwrap() - fy.max_cdf(x).unwrap();
    assert!(gap > 5e-3, "expected the frozen violation, got gap {gap}");
}

/// The shock-maxima transform theorems fail for h(p) = -ln(1-p): this pair
/// satisfies every stated hypothesis under that transform yet F_X exceeds
/// F_Y by 1.3e-2. The identity transform (also a valid h) is what generated
/// scenarios rely on.
#[test]
fn neg_log_transform_form_admits_a_counterexample() {
    let h = ShockTransform::NegLogComplement;
    assert!(h.is_strictly_increasing() && h.is_convex());
    let beta = [1.54991, 1.19487];
    let lambda = [1.60500, 1.38247];
    let alpha = [1.2884, 1.2884];
    let p = [0.40862, 0.94771];
    let p2 = [0.71283, 0.76208];
    let hp: Vec<f64> = p.iter().map(|&v| h.apply(v)).collect();
    let hp2: Vec<f64> = p2.iter().map(|&v| h.apply(v)).collect();
    assert!(majorize::is_positive_increasing(&hp));
    assert!(majorize::weak_submajorizes(&hp, &hp2).unwrap());
    assert!(majorize::is_positive_decreasing(&beta));
    assert!(majorize::is_positive_decreasing(&lambda));

    let mem = members(&alpha, &beta, &lambda);
    let fx = PopulationSpec::with_shocks(mem.clone(), p.to_vec()).unwrap();
    let fy = PopulationSpec::with_shocks(mem, p2.to_vec()).unwrap();
    let x = 0.2943;
    let gap = fx.max_cdf(x).unwrap() - fy.max_cdf(x).unwrap();
    assert!(gap > 1e-2, "expected the frozen violation, got gap {gap}");
}

/// The stated relative-ageing directions for the multiple-outlier theorems
/// are swapped: with alpha1 <= alpha2 (and beta1 >= beta2, blockwise
/// majorization) the hazard ratio r_X/r_Y *decreases*, because majorization
/// preserves the hazard sum at x = 0 while the faster-growing block loses
/// alpha mass. The registry maps this branch to the reversed direction.
#[test]
fn outlier_relative_ageing_direction() {
    let alpha = [1.0, 1.0, 3.0];
    let alpha2 = [4.0 / 3.0, 4.0 / 3.0, 7.0 / 3.0]; // blockwise shrink, s = 1/2
    let beta = [2.0, 2.0, 0.5];
    let lambda = [1.0, 1.0, 0.7];
    assert!(majorize::majorizes(&alpha, &alpha2).unwrap());

    let a = ExtremeCurve::new(
        PopulationSpec::independent(members(&alpha, &beta, &lambda)).unwrap(),
        CurveKind::MinHazard,
    )
    .unwrap();
    let b = ExtremeCurve::new(
        PopulationSpec::independent(members(&alpha2, &beta, &lambda)).unwrap(),
        CurveKind::MinHazard,
    )
    .unwrap();
    let verdict = check_ageing_faster(&a, &b, &Grid::linear(6.0, 800).unwrap(), Tol::default());
    // ratio decreasing: the reversed direction holds, the stated one fails
    assert_eq!(verdict.status, OrderStatus::HoldsReversed, "{verdict:#?}");
}

/// The remark pairing the hazard-rate and relative-ageing theorems claims
/// they pull in opposite directions on a shared scenario. With the corrected
/// relative-ageing direction the two orders actually agree: on a scenario
/// satisfying both hypothesis sets (increasing-cone branch) the hazard ratio
/// starts at 1 (majorization preserves the sum at x = 0) and decreases, so
/// both checks report the same reversed direction.
#[test]
fn hazard_and_relative_ageing_directions_agree() {
    let alpha = [1.0, 1.0, 3.0];
    let alpha2 = [4.0 / 3.0, 4.0 / 3.0, 7.0 / 3.0];
    let beta = [2.0, 2.0, 0.5];
    let lambda = [1.0, 1.0, 0.7];
    // hypotheses of the alpha-majorization hr theorem, increasing branch
    assert!(majorize::is_positive_increasing(&alpha));
    assert!(majorize::is_positive_increasing(&alpha2));
    assert!(majorize::is_positive_decreasing(&beta));
    assert!(majorize::majorizes(&alpha, &alpha2).unwrap());
    // hypotheses of the outlier relative-ageing theorem (alpha1 <= alpha2,
    // beta1 >= beta2, blockwise majorization) hold on the same scenario

    let pa = PopulationSpec::independent(members(&alpha, &beta, &lambda)).unwrap();
    let pb = PopulationSpec::independent(members(&alpha2, &beta, &lambda)).unwrap();
    let grid = Grid::linear(4.0, 800).unwrap();
    let tol = Tol::default();

    let hr = check_hr(
        &ExtremeCurve::new(pa.clone(), CurveKind::MinSurvival).unwrap(),
        &ExtremeCurve::new(pb.clone(), CurveKind::MinSurvival).unwrap(),
        &grid,
        tol,
    );
    let ageing = check_ageing_faster(
        &ExtremeCurve::new(pa, CurveKind::MinHazard).unwrap(),
        &ExtremeCurve::new(pb, CurveKind::MinHazard).unwrap(),
        &grid,
        tol,
    );
    assert_eq!(hr.status, OrderStatus::HoldsReversed, "{hr:#?}");
    assert_eq!(ageing.status, OrderStatus::HoldsReversed, "{ageing:#?}");
}
