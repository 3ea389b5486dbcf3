//! Oracle-backed checks: quadrature integrals, finite-difference hazards,
//! and Monte-Carlo sampling behaviour of the distribution code.

mod common;

use common::{adaptive_simpson, central_derivative, ks_statistic};
use gm_order::archimedean::Generator;
use gm_order::extremes::{CurveKind, ExtremeCurve, PopulationSpec};
use gm_order::gm::GMParams;
use gm_order::rng::SplitMix64;

fn random_params(rng: &mut SplitMix64) -> GMParams {
    GMParams::new(
        rng.uniform(0.05, 5.0),
        rng.uniform(0.0, 2.0),
        rng.uniform(0.0, 3.0),
    )
    .unwrap()
}

fn random_population(rng: &mut SplitMix64, n: usize) -> PopulationSpec {
    let members = (0..n)
        .map(|_| {
            GMParams::new(
                rng.uniform(0.05, 5.0),
                rng.uniform(0.05, 2.0),
                rng.uniform(0.05, 3.0),
            )
            .unwrap()
        })
        .collect();
    PopulationSpec::independent(members).unwrap()
}

#[test]
fn pdf_integrates_to_one() {
    let mut rng = SplitMix64::new(41);
    for _ in 0..25 {
        let p = random_params(&mut rng);
        let mut hi = 1.0;
        while p.survival(hi).unwrap() >= 1e-12 {
            hi *= 2.0;
        }
        let mass = adaptive_simpson(&|x| p.pdf(x).unwrap(), 0.0, hi, 1e-10);
        assert!((mass - 1.0).abs() < 1e-6, "{p:?}: mass {mass}");
    }
}

#[test]
fn min_density_integrates_to_one() {
    let mut rng = SplitMix64::new(43);
    for _ in 0..15 {
        let n = 2 + rng.below(3);
        let pop = random_population(&mut rng, n);
        let hi = pop.x_hi_min_tail().unwrap();
        let mass = adaptive_simpson(&|x| pop.min_density(x).unwrap(), 0.0, hi, 1e-10);
        assert!((mass - 1.0).abs() < 1e-6, "mass {mass}");
    }
}

#[test]
fn min_density_at_zero_is_the_hazard_sum() {
    let pop = PopulationSpec::independent(vec![
        GMParams::new(0.1, 0.2, 0.6).unwrap(),
        GMParams::new(20.0, 0.1, 0.5).unwrap(),
    ])
    .unwrap();
    assert!((pop.min_density(0.0).unwrap() - 21.2).abs() < 1e-12);
}

#[test]
fn max_density_mass_plus_atom_is_one() {
    let mut rng = SplitMix64::new(47);
    // independent (analytic density), dependent (finite differences), shock
    for trial in 0..9 {
        let n = 2 + rng.below(2);
        let base = random_population(&mut rng, n);
        let pop = match trial % 3 {
            0 => base,
            1 => PopulationSpec::with_copula(
                base.members().to_vec(),
                Generator::clayton(rng.uniform(0.5, 2.5)).unwrap(),
            )
            .unwrap(),
            _ => {
                let p = (0..n).map(|_| rng.uniform(0.3, 1.0)).collect();
                PopulationSpec::with_shocks(base.members().to_vec(), p).unwrap()
            }
        };
        let curve = ExtremeCurve::new(pop.clone(), CurveKind::MaxDensity).unwrap();
        let hi = pop.x_hi_max_tail().unwrap();
        let lo = 1e-9;
        let mass = adaptive_simpson(&|x| pop.max_density(x).unwrap(), lo, hi, 1e-9);
        let total = mass + curve.atom_at_zero();
        assert!(
            (total - 1.0).abs() < 1e-5,
            "trial {trial}: mass {mass} atom {}",
            curve.atom_at_zero()
        );
    }
}

#[test]
fn hazard_matches_log_survival_slope() {
    let mut rng = SplitMix64::new(53);
    for _ in 0..25 {
        let p = random_params(&mut rng);
        let hi = {
            let mut x = 1.0;
            while p.survival(x).unwrap() >= 1e-10 {
                x *= 2.0;
            }
            x
        };
        for i in 1..40 {
            let x = hi * i as f64 / 40.0;
            let h = (1e-6_f64).max(1e-7 * x);
            let slope = -central_derivative(&|t| p.log_survival(t).unwrap(), x, h);
            let hazard = p.hazard(x).unwrap();
            assert!(
                (slope - hazard).abs() <= 1e-6 * hazard.abs().max(1.0),
                "{p:?} at {x}: slope {slope} hazard {hazard}"
            );
        }
    }
}

#[test]
fn min_hazard_matches_min_survival_slope() {
    let mut rng = SplitMix64::new(59);
    for _ in 0..10 {
        let pop = random_population(&mut rng, 3);
        let hi = pop.x_hi_min_tail().unwrap();
        for i in 1..50 {
            let x = hi * i as f64 / 50.0;
            let h = (1e-6_f64).max(1e-7 * x);
            let slope = -central_derivative(&|t| pop.min_survival(t).unwrap().ln(), x, h);
            let hazard = pop.min_hazard(x).unwrap();
            assert!(
                (slope - hazard).abs() <= 1e-6 * hazard.abs().max(1.0),
                "at {x}: slope {slope} hazard {hazard}"
            );
        }
    }
}

#[test]
fn dependent_independence_density_matches_analytic() {
    let mut rng = SplitMix64::new(61);
    for _ in 0..5 {
        let members = random_population(&mut rng, 3).members().to_vec();
        let ind = PopulationSpec::independent(members.clone()).unwrap();
        let dep = PopulationSpec::with_copula(members, Generator::Independence).unwrap();
        let hi = ind.x_hi_max_tail().unwrap();
        for i in 1..40 {
            let x = hi * i as f64 / 41.0;
            let analytic = ind.max_density(x).unwrap();
            let fd = dep.max_density(x).unwrap();
            assert!(
                (analytic - fd).abs() <= 1e-6 * analytic.abs().max(1.0),
                "x={x}: analytic {analytic} fd {fd}"
            );
        }
    }
}

#[test]
fn sampling_tracks_the_analytic_cdf() {
    let p = GMParams::new(0.7, 0.4, 0.3).unwrap();
    let mut draws = p.sample(12345, 100_000).unwrap();
    draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let d = ks_statistic(&draws, &|x| p.cdf(x).unwrap());
    assert!(d < 1.63 / (draws.len() as f64).sqrt(), "KS {d}");
}
