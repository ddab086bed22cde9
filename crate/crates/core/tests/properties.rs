//! Property tests over the catalog: symmetries map solutions to solutions and
//! the derived identities hold on every entry.

use ghcat_core::cohomology::{h2_representatives, mu_of};
use ghcat_core::group::automorphism_group;
use ghcat_core::solution::{abs_a_qsystem_residual, check_amplitude_magnitudes, Family};
use ghcat_core::symmetry::{act_automorphism, act_h2, act_translation, gauge_apply, gauge_distance, GaugeVector};
use ghcat_core::{catalog_list, catalog_solution, check_qsystem, evaluate_residuals, SolutionTriple};
use proptest::prelude::*;
use proptest::sample::select;

const TOL: f64 = 1e-10;

fn entry() -> impl Strategy<Value = SolutionTriple> {
    select(catalog_list()).prop_map(|n| catalog_solution(n).unwrap())
}

/// Gauge vectors must fix 2G pointwise, otherwise ε'_h(0) = δ_{2h} breaks the
/// normalization ε_h(0) = 1.
fn admissible_gauge(s: &SolutionTriple, bits: u64) -> GaugeVector {
    let g = &s.group;
    let mut delta = GaugeVector::from_bits(s.n(), bits).delta;
    for h in g.elements() {
        delta[g.double(h)] = 1;
    }
    GaugeVector::new(delta).unwrap()
}

fn worst(s: &SolutionTriple) -> f64 {
    let r = evaluate_residuals(s, TOL);
    r.residuals.values().cloned().fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauge_preserves_residuals(s in entry(), bits in any::<u64>()) {
        let dv = admissible_gauge(&s, bits);
        let t = gauge_apply(&s, &dv);
        prop_assert!(evaluate_residuals(&t, TOL).passes());
        prop_assert!((worst(&t) - worst(&s)).abs() < 1e-12);
        prop_assert!(gauge_distance(&s, &t) < 1e-9);
    }

    #[test]
    fn gauge_is_an_involution(s in entry(), bits in any::<u64>()) {
        let dv = admissible_gauge(&s, bits);
        let back = gauge_apply(&gauge_apply(&s, &dv), &dv);
        prop_assert!(back.max_amplitude_distance(&s) < 1e-14);
        prop_assert_eq!(back.epsilon, s.epsilon);
    }

    #[test]
    fn translations_map_solutions_to_solutions(s in entry(), p in 0usize..8) {
        let p = p % s.n();
        let t = act_translation(&s, p).unwrap();
        prop_assert!(worst(&t) < 10.0 * TOL, "translation by {} gives {}", p, worst(&t));
    }

    #[test]
    fn automorphisms_map_solutions_to_solutions(s in entry(), i in 0usize..64) {
        let auts = automorphism_group(&s.group).unwrap();
        let t = act_automorphism(&s, &auts[i % auts.len()]).unwrap();
        prop_assert!(worst(&t) < 10.0 * TOL);
        prop_assert_eq!(check_qsystem(&t, 1e-8), check_qsystem(&s, 1e-8));
    }

    #[test]
    fn h2_action_maps_solutions_to_solutions(s in entry(), i in 0usize..8) {
        let reps = h2_representatives(&s.group);
        let w = &reps[i % reps.len()];
        let mu = mu_of(w).unwrap();
        let t = act_h2(&s, w, &mu).unwrap();
        prop_assert!(worst(&t) < 10.0 * TOL);
    }

    #[test]
    fn derived_identities_hold(s in entry()) {
        let r = evaluate_residuals(&s, 1e-9);
        prop_assert!(r.get(Family::I) < 1e-9);
        prop_assert!(r.get(Family::O3) < 1e-9);
        prop_assert!(check_amplitude_magnitudes(&s, 1e-9) < 1e-9);
        if check_qsystem(&s, 1e-8).q2 {
            prop_assert!(abs_a_qsystem_residual(&s) < 1e-9);
        }
    }

    #[test]
    fn json_round_trip(s in entry()) {
        let t = SolutionTriple::from_json(&s.to_json()).unwrap();
        prop_assert!(t.max_amplitude_distance(&s) < 1e-15);
        prop_assert_eq!(t.epsilon, s.epsilon);
        prop_assert_eq!(t.eta, s.eta);
    }
}

#[test]
fn perturbation_is_detected() {
    for name in catalog_list() {
        let mut s = catalog_solution(name).unwrap();
        let v = s.amp(0, 1 % s.n(), 0);
        s.set_amp(0, 1 % s.n(), 0, v + num_complex::Complex64::new(1e-4, 0.0));
        assert!(!evaluate_residuals(&s, TOL).passes(), "{name}");
    }
}
