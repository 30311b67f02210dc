mod common;

use proptest::prelude::*;

use nullsquare::bimodule::{h0, tensor_power_nm, Tensor};
use nullsquare::les::induced_h0;
use nullsquare::nm::{build_nm_quiver, cyclic_spaces, h0_via_cycles, tensor_power_dim_via_paths, tor_complex};
use nullsquare::nullsquare::{check_presentation_model_iso, k1_complex, matrix_model};
use nullsquare::Q;

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn cycles_and_paths_count_the_coequalizer(seed in any::<u64>()) {
        let spec = common::random_spec::<Q>(seed);
        let q = build_nm_quiver(&spec).unwrap();
        let ns = matrix_model(&spec).unwrap();
        for m in 1..=2 {
            let p = tensor_power_nm(&ns.n, &ns.m, m).unwrap();
            prop_assert_eq!(p.dim(), tensor_power_dim_via_paths(&q, m).unwrap());
            prop_assert_eq!(h0(&p).unwrap().dim, h0_via_cycles(&q, m).unwrap());
        }
    }

    #[test]
    fn invariants_vanish_only_with_h0(seed in any::<u64>()) {
        let spec = common::random_spec::<Q>(seed);
        let ns = matrix_model(&spec).unwrap();
        for m in 1..=2 {
            let c = cyclic_spaces(&ns, m).unwrap();
            let (inv, coinv) = c.invariants_coinvariants().unwrap();
            prop_assert_eq!(inv, coinv);
            prop_assert_eq!(inv == 0, c.a_h0.dim == 0);
        }
    }

    #[test]
    fn tor_methods_agree(seed in any::<u64>()) {
        let ns = matrix_model(&common::random_spec::<Q>(seed)).unwrap();
        let t = tor_complex(&ns, 3).unwrap();
        prop_assert_eq!(t.literal, t.reduced);
    }

    #[test]
    fn presentation_matches_model(seed in any::<u64>()) {
        let spec = common::random_spec::<Q>(seed);
        let r = check_presentation_model_iso(&spec).unwrap();
        prop_assert_eq!(r.presentation_dim, r.dims.0 + r.dims.1 + r.dims.2 + r.dims.3);
    }

    #[test]
    fn k1_homotopy(seed in any::<u64>()) {
        let ns = matrix_model(&common::random_spec::<Q>(seed)).unwrap();
        let k = k1_complex(&ns, 2).unwrap();
        k.check_square_zero().unwrap();
        prop_assert_eq!(k.check_homotopy().unwrap(), 2);
    }

    #[test]
    fn induced_h0_splits(seed in any::<u64>()) {
        let ns = matrix_model(&common::random_spec::<Q>(seed)).unwrap();
        let u = common::random_c_bimodule(&ns, seed ^ 0x5eed);
        u.check().unwrap();
        let r = induced_h0(&ns, &u).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn tensor_is_associative(seed in any::<u64>()) {
        let ns = matrix_model(&common::random_spec::<Q>(seed)).unwrap();
        let i = ns.i_bimodule();
        let u = common::random_c_bimodule(&ns, seed);
        let left = Tensor::new(&Tensor::new(&i, &u).unwrap().module, &i).unwrap();
        let right = Tensor::new(&i, &Tensor::new(&u, &i).unwrap().module).unwrap();
        prop_assert_eq!(left.dim(), right.dim());
    }
}
