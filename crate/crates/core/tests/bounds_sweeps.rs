mod common;

use common::rng;
use mixent::criteria::{
    bound_sweep, coexistence_plane, criteria_verdict_with, delta_mu, delta_mu_max, lptps_entropy_exclusion_pair,
    lptps_max_tangle, lptps_optimal_x, product_surface, triangle_inequality_check, BoundName,
};
use mixent::extremal::{ansatz_delta_mu, maximize_delta_mu, maximize_lptps_tangle};
use mixent::measures::{concurrence, entropy_profile, EntropyKind};
use mixent::states::{random_product_state, random_state, sample_entangled_lptps, sample_lptps_params};
use rand::Rng;

#[test]
fn sufficient_criteria_imply_ppt_and_bounds_hold() {
    let mut rng = rng(100);
    let mut worst = [f64::INFINITY; 6];
    let mut flagged = 0;
    for n in 0..100_000 {
        // mix in low-rank states to reach the boundaries of the entropy spaces
        let cap = if n % 5 == 0 { Some(1 + (n / 5) % 3) } else { None };
        let rho = random_state(&mut rng, cap);
        let vn = entropy_profile(&rho, EntropyKind::VonNeumann);
        let lin = entropy_profile(&rho, EntropyKind::Linear);
        let verdict = criteria_verdict_with(&rho, &vn, &lin);
        assert!(verdict.is_consistent(), "{verdict:?}");
        flagged += (verdict.entropic_vn_flag || verdict.majorization_flag) as usize;

        let checks = bound_sweep(&vn, &lin, &concurrence(&rho)).unwrap();
        for (w, c) in worst.iter_mut().zip(checks.iter()) {
            assert!(c.satisfied, "{c:?} for {:?}", rho.matrix());
            *w = w.min(c.slack);
        }
    }
    assert!(flagged > 0);
    assert!(worst.iter().all(|&s| s >= -1e-9), "{worst:?}");
}

#[test]
fn triangle_inequality_saturation() {
    let mut rng = rng(101);
    for _ in 0..1_000 {
        let pure = random_state(&mut rng, Some(1));
        let [lower, _] = triangle_inequality_check(&entropy_profile(&pure, EntropyKind::VonNeumann)).unwrap();
        assert!(lower.slack.abs() < 1e-9 && lower.lhs < 1e-9);

        let product = random_product_state(&mut rng);
        let [_, upper] = triangle_inequality_check(&entropy_profile(&product, EntropyKind::VonNeumann)).unwrap();
        assert!(upper.slack.abs() < 1e-9);
    }
}

#[test]
fn product_states_lie_on_both_surfaces() {
    let mut rng = rng(102);
    for _ in 0..1_000 {
        let rho = random_product_state(&mut rng);
        let vn = entropy_profile(&rho, EntropyKind::VonNeumann);
        let lin = entropy_profile(&rho, EntropyKind::Linear);
        let vn_surface = product_surface(EntropyKind::VonNeumann, vn.s_1, vn.s_2).unwrap();
        let lin_surface = product_surface(EntropyKind::Linear, lin.s_1, lin.s_2).unwrap();
        assert!((vn.s_global - vn_surface).abs() < 1e-9);
        assert!((lin.s_global - lin_surface).abs() < 1e-12);
        assert!(delta_mu(&rho).abs() < 1e-15);
    }
}

#[test]
fn no_state_exceeds_the_von_neumann_product_plane() {
    let mut rng = rng(103);
    for _ in 0..20_000 {
        let rho = random_state(&mut rng, None);
        let vn = entropy_profile(&rho, EntropyKind::VonNeumann);
        assert!(vn.s_global <= product_surface(EntropyKind::VonNeumann, vn.s_1, vn.s_2).unwrap() + 1e-9);
    }
}

#[test]
fn entangled_lptps_properties() {
    let mut rng = rng(104);
    let samples = sample_entangled_lptps(&mut rng, 10_000);
    for rho in &samples {
        let vn = entropy_profile(rho, EntropyKind::VonNeumann);
        let lin = entropy_profile(rho, EntropyKind::Linear);
        let v = criteria_verdict_with(rho, &vn, &lin);
        let dm = delta_mu(rho);
        assert!(dm >= -1e-15);
        assert!(v.ppt_entangled);
        assert!(!v.majorization_flag && !v.entropic_vn_flag && !v.entropic_lin_flag, "{v:?}");
        for check in lptps_entropy_exclusion_pair(lin.s_1, lin.s_2).unwrap() {
            assert!(check.satisfied, "{check:?}");
        }
        // less pure than the product of its marginals
        assert!(lin.s_global >= product_surface(EntropyKind::Linear, lin.s_1, lin.s_2).unwrap() - 1e-12);
        // under the extremal line
        let tangle = concurrence(rho).tangle;
        assert!(tangle <= lptps_max_tangle(dm.min(delta_mu_max())).unwrap() + 1e-9);
        // largest global eigenvalue below the largest marginal eigenvalue of both marginals
        let (a, b) = rho.marginals();
        assert!(rho.spectrum().max() < a.spectrum().max());
        assert!(rho.spectrum().max() < b.spectrum().max());
    }
}

#[test]
fn purity_gap_of_the_ansatz_is_quadratic_in_c() {
    // mu_1 mu_2 - mu = 2 x1 x2 (1 - 2x1 - 2x2 + 2 x1 x2) - c^2 / 2
    let mut rng = rng(105);
    for _ in 0..1_000 {
        let p = sample_lptps_params(&mut rng);
        let (x1, x2, c) = (p.x1(), p.x2(), p.c());
        let direct = ansatz_delta_mu(x1, x2, c);
        let closed = 2.0 * x1 * x2 * p.purity_gap_factor() - c * c / 2.0;
        assert!((direct - closed).abs() < 1e-15);
    }
}

#[test]
fn numerical_maximisation_recovers_the_extremal_line() {
    let best = maximize_delta_mu(1e-3);
    assert!((best.value - delta_mu_max()).abs() < 1e-9);
    assert!((best.x1 - lptps_optimal_x()).abs() < 1e-6);
    assert!((best.x2 - lptps_optimal_x()).abs() < 1e-6);
    for k in 0..=10 {
        let target = delta_mu_max() * k as f64 / 10.0;
        let numeric = maximize_lptps_tangle(target, 1e-3);
        let line = lptps_max_tangle(target).unwrap();
        assert!((numeric.value - line).abs() < 1e-6, "dmu={target}: {} vs {line}", numeric.value);
    }
}

#[test]
fn separable_only_region_above_the_coexistence_planes() {
    let mut rng = rng(106);
    let vn_plane = coexistence_plane(EntropyKind::VonNeumann);
    let mut entangled = 0;
    for _ in 0..100_000 {
        let rank = rng.random_range(2..=4);
        let rho = random_state(&mut rng, Some(rank));
        let vn = entropy_profile(&rho, EntropyKind::VonNeumann);
        let lin = entropy_profile(&rho, EntropyKind::Linear);
        if criteria_verdict_with(&rho, &vn, &lin).ppt_entangled {
            entangled += 1;
            assert!(lin.mu > 1.0 / 3.0);
            assert!(lin.s_global < coexistence_plane(EntropyKind::Linear));
            assert!(vn.s_global < vn_plane + 1e-9);
        }
    }
    assert!(entangled > 10_000);
}

#[test]
fn bound_names_are_unique() {
    let mut names: Vec<_> = BoundName::ALL.iter().map(|b| b.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), BoundName::ALL.len());
}
