use octoeig::eigen2;
use octoeig::identities;
use octoeig::linalg::OctVector;
use octoeig::octonion::{associator, Octonion};
use octoeig::Tolerance;
use proptest::prelude::*;

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-2.0f64..2.0).prop_map(Octonion::from_coeffs)
}

fn vector(n: usize) -> impl Strategy<Value = OctVector> {
    prop::collection::vec(octonion(), n).prop_map(OctVector::new)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in octonion(), b in octonion()) {
        prop_assert!(identities::norm_composition(a, b) <= 1e-12);
    }

    #[test]
    fn conjugation_reverses_products(a in octonion(), b in octonion()) {
        prop_assert!(identities::antiautomorphism(a, b) <= 1e-12);
    }

    #[test]
    fn associator_alternates(a in octonion(), b in octonion(), c in octonion()) {
        prop_assert!(identities::associator_antisymmetry(a, b, c) <= 1e-12);
        prop_assert!(associator(a, b, c).re().abs() <= 1e-12);
        prop_assert!(associator(a, a, b).norm() <= 1e-12);
    }

    #[test]
    fn inverse_is_two_sided(a in octonion()) {
        prop_assume!(a.norm() > 1e-3);
        let inv = a.inverse(1e-12).unwrap();
        prop_assert!((a * inv - Octonion::ONE).norm() <= 1e-10);
        prop_assert!((inv * a - Octonion::ONE).norm() <= 1e-10);
    }

    #[test]
    fn two_generator_subalgebra_associates(a in octonion(), b in octonion()) {
        prop_assert!(identities::two_generator_associativity(a, b, 3) <= 1e-9);
    }

    #[test]
    fn vector_trace_identity(x in vector(3), y in vector(3)) {
        prop_assert!(identities::trace_identity(&x, &y).unwrap() <= 1e-11);
    }

    #[test]
    fn right_pairs_satisfy_constraints(
        p in -2.0f64..2.0,
        q in 0.2f64..2.0,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let (h, pv, pw) = eigen2::typical_right_pairs(p, q, theta);
        let tol = Tolerance::default();
        for pair in [pv, pw] {
            prop_assert!(eigen2::verify_pair(&h, &pair).unwrap() <= 1e-10);
            let c = eigen2::char2_constraints(&h, &pair.v, pair.lambda, tol.eps_solve);
            prop_assert!(c.max_residual() <= 1e-10);
        }
    }
}
