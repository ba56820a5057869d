use num_complex::Complex64;
use pcs_susy::model::{
    dual_superpotentials, exchange_map, pcs_partner_coefficients, physical_to_susy,
    pt_constraint_check, Branch, PcsPhysicalParams, Superpotential, SusyParams, TOL_CONSTRAINT,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SusyParams> {
    (
        -4.0..4.0f64,
        -4.0..4.0f64,
        prop_oneof![Just(0.0), -2.0..2.0f64],
        0.2..3.0f64,
    )
        .prop_map(|(a, b, c, alpha)| SusyParams::new(a, b, c, alpha).unwrap())
}

fn branch() -> impl Strategy<Value = Branch> {
    prop_oneof![Just(Branch::Plus), Just(Branch::Minus)]
}

fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Pointwise `W² ∓ W'` against the closed-form coefficients.
    #[test]
    fn expansion_identity(p in params(), br in branch(), xs in prop::collection::vec(-8.0..8.0f64, 100)) {
        let w = Superpotential::from_ansatz(&p, br);
        let (vm, vp) = w.partner_potentials();
        let direct = pcs_partner_coefficients(&p, br);
        let scale = vm.scale().max(vp.scale());
        for &x in &xs {
            let wx = w.eval(x);
            let dw = w.derivative(x);
            prop_assert!(rel(wx * wx - dw, vm.eval(x), scale) <= 1e-12);
            prop_assert!(rel(wx * wx + dw, vp.eval(x), scale) <= 1e-12);
            prop_assert!(rel(wx * wx - dw, direct.eval(x), scale) <= 1e-12);
        }
    }

    #[test]
    fn exchange_preserves_shape(p in params(), br in branch()) {
        let q = p.complexify(br);
        let (w, _) = pcs_susy::model::dual_pair(&q);
        let (w2, _) = pcs_susy::model::dual_pair(&exchange_map(&q));
        let (a, _) = w.partner_potentials();
        let (b, _) = w2.partner_potentials();
        prop_assert!(a.shape_distance(&b) <= 1e-14 * a.scale().max(1.0));
    }

    #[test]
    fn real_exchange_preserves_shape_at_zero_c(p in params()) {
        let p = p.with_c(0.0);
        let a = pcs_partner_coefficients(&p, Branch::Plus);
        let b = pcs_partner_coefficients(&exchange_map(&p), Branch::Plus);
        prop_assert!(a.shape_distance(&b) <= 1e-14 * a.scale().max(1.0));
    }

    #[test]
    fn real_exchange_swaps_branch(p in params(), br in branch()) {
        let swapped = pcs_partner_coefficients(&exchange_map(&p), br);
        let other = pcs_partner_coefficients(&p, br.flipped());
        prop_assert!(swapped.shape_distance(&other) <= 1e-14 * other.scale().max(1.0));
    }

    /// Involution up to the rounding of one addition per coordinate.
    #[test]
    fn exchange_is_involution(p in params()) {
        let r = exchange_map(&exchange_map(&p));
        let ulp = f64::EPSILON * (p.a.abs().max(p.b.abs()) + p.alpha);
        prop_assert!((r.a - p.a).abs() <= ulp && (r.b - p.b).abs() <= ulp);
        prop_assert_eq!(r.c, p.c);
        prop_assert_eq!(r.alpha, p.alpha);
    }

    #[test]
    fn constraint_matches_coefficient_reality(p in params(), br in branch()) {
        let v = pcs_partner_coefficients(&p, br);
        prop_assert_eq!(pt_constraint_check(&p).pt_symmetric, v.is_pt_symmetric_shape(TOL_CONSTRAINT));
    }

    #[test]
    fn minus_branch_is_pt_image(p in params()) {
        let plus = pcs_partner_coefficients(&p, Branch::Plus);
        let minus = pcs_partner_coefficients(&p, Branch::Minus);
        prop_assert_eq!(minus, plus.pt_image());
        let xs: Vec<f64> = (0..50).map(|k| -5.0 + 0.2 * k as f64).collect();
        for x in xs {
            prop_assert!((minus.eval(x) - plus.eval(-x).conj()).norm() <= 1e-12 * plus.scale().max(1.0));
        }
    }

    #[test]
    fn superpotential_pt_antisymmetry(p in params(), br in branch()) {
        let xs: Vec<f64> = (0..41).map(|k| -4.0 + 0.2 * k as f64).collect();
        let (w, wp) = dual_superpotentials(&p, br);
        for w in [w, wp] {
            let v = w.pt_antisymmetry_violation(&xs);
            if p.c == 0.0 {
                prop_assert!(v <= 1e-12);
            } else if p.c.abs() > 1e-3 {
                prop_assert!(v > 1e-12, "violation {v}");
            }
        }
    }

    #[test]
    fn physical_inversion_round_trip(p in params()) {
        let p = p.with_c(0.0);
        let v = pcs_partner_coefficients(&p, Branch::Plus);
        let phys = PcsPhysicalParams::new(-v.t2.re, -v.st.im, p.alpha).unwrap();
        let f = physical_to_susy(&phys).unwrap();
        let tol = 1e-9 * (1.0 + p.a.abs() + p.b.abs());
        let found = f.candidates.iter().any(|q| {
            ((q.a - p.a).abs() <= tol && (q.b - p.b).abs() <= tol)
                || {
                    let e = exchange_map(&p);
                    (q.a - e.a).abs() <= tol && (q.b - e.b).abs() <= tol
                }
        });
        prop_assert!(found, "{p:?} not in {:?}", f.candidates);
        for q in &f.candidates {
            let w = pcs_partner_coefficients(q, Branch::Plus);
            prop_assert!(w.shape_distance(&v) <= 1e-9 * v.scale().max(1.0));
        }
    }
}
