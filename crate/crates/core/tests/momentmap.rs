use proptest::prelude::*;

use zoll_ech::error::NumericError;
use zoll_ech::momentmap::{
    analytic, boundary_curve, boundary_point, hamiltonian, poisson_bracket_check, radial_action, theta_term_flagged,
    Coordinate, PerturbParams, PhasePoint, Variant,
};

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Full), Just(Variant::Hemisphere)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bracket_vanishes(
        v in variant(),
        eps in 1e-4f64..1e-1,
        r in 0.0f64..0.7,
        phi in 0.0f64..std::f64::consts::TAU,
        y in (-2.0f64..2.0, -2.0f64..2.0),
        still in any::<bool>(),
    ) {
        let params = PerturbParams::for_variant(v, eps).unwrap();
        let y = if still { [0.0, 0.0] } else { [y.0, y.1] };
        let p = PhasePoint::new([r * phi.cos(), r * phi.sin()], y);
        let h = hamiltonian(&params, &p).unwrap();
        let bracket = poisson_bracket_check(&params, &p, 1e-5).unwrap();
        prop_assert!(bracket.abs() <= 1e-5 * (1.0 + h), "{bracket} at h = {h}");
    }

    #[test]
    fn coordinates_swap_under_reflection(v in variant(), eps in 1e-5f64..1e-2, j in 0.05f64..0.9) {
        let params = PerturbParams::for_variant(v, eps).unwrap();
        let plus = boundary_point(&params, j).unwrap();
        let minus = boundary_point(&params, -j).unwrap();
        prop_assert!((plus.radial - minus.radial).abs() <= 1e-12);
        prop_assert!((plus.rho1 - minus.rho2).abs() <= 1e-10);
        prop_assert!((plus.rho2 - minus.rho1).abs() <= 1e-10);
        for b in [plus, minus] {
            let gap = b.rho2 - b.rho1 - std::f64::consts::TAU * b.j;
            prop_assert!(gap.abs() <= 2.0 * b.err + 1e-12, "{gap}");
        }
    }

    #[test]
    fn roots_match_the_unperturbed_closed_form(v in variant(), t in 0.05f64..0.95, h in 0.5f64..2.0) {
        let j = t * h.sqrt();
        let params = PerturbParams::for_variant(v, 1e-10).unwrap();
        let (a, b) = zoll_ech::momentmap::radial_roots(&params, h, j).unwrap();
        let (a0, b0) = analytic::radial_roots(h, j).unwrap();
        prop_assert!((a - a0).abs() < 1e-6, "{a} vs {a0}");
        match v {
            Variant::Hemisphere => prop_assert!(b < 1.0 && b > 1.0 - 1e-6, "{b}"),
            _ => prop_assert!((b - b0).abs() < 1e-6, "{b} vs {b0}"),
        }
    }

    #[test]
    fn actions_grow_as_eps_shrinks(v in variant(), j in 0.2f64..0.9, k in 2i32..6) {
        let (hi, lo) = (10f64.powi(-k), 10f64.powi(-k - 1));
        let (a_hi, e_hi) = radial_action(&PerturbParams::for_variant(v, hi).unwrap(), 1.0, j).unwrap();
        let (a_lo, e_lo) = radial_action(&PerturbParams::for_variant(v, lo).unwrap(), 1.0, j).unwrap();
        prop_assert!(a_lo + e_lo + e_hi >= a_hi, "{a_lo} < {a_hi}");
        prop_assert!(a_lo <= analytic::radial_action(v, 1.0, j).unwrap() + 1e-7);
    }

    #[test]
    fn unperturbed_limit_is_approached(v in variant(), j in 0.2f64..0.9) {
        let exact = analytic::radial_action(v, 1.0, j).unwrap();
        let gaps: Vec<f64> = [1e-6, 1e-8, 1e-10]
            .iter()
            .map(|&eps| {
                let params = PerturbParams::for_variant(v, eps).unwrap();
                (radial_action(&params, 1.0, j).unwrap().0 - exact).abs()
            })
            .collect();
        prop_assert!(gaps[2] < 1e-6, "{gaps:?}");
        prop_assert!(gaps[2] <= gaps[0] + 1e-8, "{gaps:?}");
    }
}

#[test]
fn closed_form_matches_quadrature_of_the_unperturbed_action() {
    for v in [Variant::Full, Variant::Hemisphere] {
        for j in [-0.8, -0.3, 0.1, 0.5, 0.95] {
            let closed = analytic::radial_action_closed(v, 1.0, j).unwrap();
            let via_antiderivative = analytic::radial_action(v, 1.0, j).unwrap();
            assert!((closed - via_antiderivative).abs() < 1e-7, "{v} {j}");
        }
    }
}

#[test]
fn zero_momentum_is_flagged_or_rejected() {
    assert_eq!(theta_term_flagged(Coordinate::First, 0.0), (0.0, true));
    assert_eq!(theta_term_flagged(Coordinate::Second, 0.3).1, false);
    let params = PerturbParams::full(1e-4).unwrap();
    assert!(matches!(boundary_curve(&params, &[-0.5, 0.0, 0.5]), Err(NumericError::ZeroMomentum)));
}

#[test]
fn tiny_momentum_converges_slowly() {
    let gap = |j: f64| {
        let params = PerturbParams::full(1e-6).unwrap();
        let exact = analytic::radial_action(Variant::Full, 1.0, j).unwrap();
        (radial_action(&params, 1.0, j).unwrap().0 - exact).abs()
    };
    assert!(gap(1e-3) > 10.0 * gap(0.5), "{} vs {}", gap(1e-3), gap(0.5));
}
