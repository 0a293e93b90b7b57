use proptest::prelude::*;

use sasaki_core::duality::{dualize, verify_dual_lc, DualModel};
use sasaki_core::homogeneous::{verify_canonical_map, verify_lc_maps, HomogeneousModel};
use sasaki_core::sasaki::{deformation_params, SasakiFrame};
use sasaki_core::scalar::rat;
use sasaki_core::Rational;

fn nonzero() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_filter("non-zero", |(p, _)| *p != 0).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn frame_axioms_hold_for_any_parameters(a in nonzero(), d in nonzero(), n in 2usize..=3) {
        let f = SasakiFrame::build(n, a, d).unwrap();
        prop_assert!(f.check_invariants().is_empty());
    }

    #[test]
    fn model_connections_are_consistent(a in nonzero(), d in nonzero()) {
        let m = HomogeneousModel::build_formal(&a, &d).unwrap();
        prop_assert!(m.check_lie_structure().is_empty());
        prop_assert!(m.check_calibration().is_empty());
        prop_assert!(verify_lc_maps(&m).ok());
        prop_assert!(verify_canonical_map(&m).ok());
    }

    #[test]
    fn duality_is_an_involution_flipping_delta(a in nonzero(), d in nonzero()) {
        let m = HomogeneousModel::build_formal(&a, &d).unwrap();
        let dual = dualize(&m).unwrap();
        prop_assert_eq!(&dual.delta, &-&d);
        let back = dualize(&dual).unwrap();
        prop_assert_eq!(back.brackets(), m.brackets());
        let pair = DualModel { source: m, dual };
        prop_assert!(verify_dual_lc(&pair).ok());
    }

    #[test]
    fn deformations_compose_back(a in nonzero(), d in nonzero(), a0 in nonzero(), d0 in nonzero()) {
        prop_assume!((&a * &d > rat(0, 1)) == (&a0 * &d0 > rat(0, 1)));
        let p = deformation_params(&a0, &d0, &a, &d).unwrap();
        prop_assert_eq!(p.deformed(), (a, d));
        prop_assert_eq!(&p.c * &p.c, &p.a + &p.b);
    }
}
