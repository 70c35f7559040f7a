//! Randomised structure: every twisted double built from the coboundary of
//! a random 2-cochain must pass the full verifier chain.

use std::sync::Arc;

use proptest::prelude::*;
use qhopf::constructions::twisted_double;
use qhopf::groups::{braiding_of_cochain, coboundary, Cochain2, FiniteGroup};
use qhopf::iso::{chi_with, sigma, verify_morphism, MorphismFlags};
use qhopf::quasihopf::{derive_elements, r_inverse_formula, verify_derived, verify_qp, verify_quasitriangular, VerifyOptions};
use qhopf::scalars::Scalar;
use qhopf::transmute::{transmute_with, verify_braided_group, verify_comult_characterization};

/// A normalized 2-cochain with values in ±{1, 2, 3}.
fn cochain(g: Arc<FiniteGroup>, vals: &[(i64, bool)]) -> Cochain2 {
    let n = g.order();
    Cochain2::from_fn(g, 2, |i| {
        if i[0] == 0 || i[1] == 0 {
            return Scalar::one();
        }
        let (v, neg) = vals[i[0] * n + i[1]];
        Scalar::from_int(if neg { -v } else { v })
    })
}

fn values(n: usize) -> impl Strategy<Value = Vec<(i64, bool)>> {
    proptest::collection::vec((1i64..4, any::<bool>()), n * n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn random_coboundary_doubles_pass_everything(orders in prop_oneof![Just(vec![4u32]), Just(vec![2u32, 2])], vals in values(4)) {
        let g = Arc::new(FiniteGroup::cyclic_product(&orders).unwrap());
        let phi = coboundary(&cochain(g, &vals)).unwrap();
        let h = Arc::new(twisted_double(&phi).unwrap().algebra);
        let opts = VerifyOptions::default();
        prop_assert!(verify_quasitriangular(&h, &opts).passed());
        let d = derive_elements(&h).unwrap();
        prop_assert!(verify_derived(&h, &d, &opts).passed());
        prop_assert!(verify_qp(&h, &d, &opts).passed());
        prop_assert_eq!(r_inverse_formula(&h), h.r_inv.clone());
        let b = transmute_with(h.clone(), &d).unwrap();
        prop_assert!(verify_braided_group(&b, &opts).passed());
        prop_assert!(verify_comult_characterization(&b, &d).passed());
    }

    #[test]
    fn chi_is_an_isomorphism_for_random_cocycles_on_z2(v in (1i64..6, any::<bool>())) {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let phi = coboundary(&cochain(g, &[(1, false), (1, false), (1, false), v])).unwrap();
        let c = chi_with(Arc::new(twisted_double(&phi).unwrap().algebra), true).unwrap();
        let mut m = c.morphism.clone();
        let report = verify_morphism(&mut m, MorphismFlags::ALL, &VerifyOptions::default());
        prop_assert!(report.passed(), "{}", report);
        prop_assert_eq!(m.checked, MorphismFlags::ALL);
    }

    #[test]
    fn sigma_transports_everything_for_random_cochains(vals in values(4)) {
        let g = Arc::new(FiniteGroup::cyclic_product(&[2, 2]).unwrap());
        let f = cochain(g, &vals);
        let s = sigma(&coboundary(&f).unwrap(), &braiding_of_cochain(&f).unwrap()).unwrap();
        let mut m = s.morphism.clone();
        let report = verify_morphism(&mut m, MorphismFlags::ALL, &VerifyOptions::default());
        prop_assert!(report.passed(), "{}", report);
        prop_assert!(verify_quasitriangular(&s.transported().unwrap(), &VerifyOptions::default()).passed());
    }
}
