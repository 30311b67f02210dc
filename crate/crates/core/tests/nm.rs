use nullsquare::bimodule::{h0, tensor_power_nm};
use nullsquare::corpus;
use nullsquare::linalg::Matrix;
use nullsquare::nm::{
    build_nm_quiver, cyclic_spaces, enumerate_balanced_paths, enumerate_cv, h0_via_cycles, tensor_power_dim_via_paths,
    tor_complex, Step,
};
use nullsquare::nullsquare::matrix_model;
use nullsquare::{Fp, Q};

#[test]
fn product_has_no_vertical_arrows_and_no_tor() {
    let spec = corpus::product_spec::<Q>(corpus::crown(corpus::CrownReading::Composable), corpus::point("w"));
    let q = build_nm_quiver(&spec).unwrap();
    assert!(q.down.is_empty() && q.up.is_empty());
    assert!(enumerate_balanced_paths(&q, 1).unwrap().is_empty());
    assert_eq!(q.max_revolution(), Some(0));
    let tor = tor_complex(&matrix_model(&spec).unwrap(), 4).unwrap();
    assert_eq!(tor.literal, vec![0; 5]);
}

#[test]
fn two_cycle_has_one_cycle_per_revolution() {
    let spec = corpus::two_cycle_spec::<Q>();
    let q = build_nm_quiver(&spec).unwrap();
    for m in 1..=4 {
        let cv = enumerate_cv(&q, m).unwrap();
        assert_eq!(cv.len(), 1);
        assert_eq!(cv[0].v_gamma, 1);
        assert_eq!(cv[0].path.steps.len(), 2 * m);
        assert_eq!(enumerate_balanced_paths(&q, m).unwrap().len(), 1);
        assert_eq!(h0_via_cycles(&q, m).unwrap(), 1);
    }
    assert_eq!(q.max_revolution(), None);
    let ns = matrix_model(&spec).unwrap();
    let c = cyclic_spaces(&ns, 3).unwrap();
    assert_eq!(c.t().unwrap(), Matrix::identity(1));
    assert_eq!(c.sigma().unwrap(), Matrix::identity(1));
    assert_eq!(c.tau().unwrap(), Matrix::identity(1));
    let tor = tor_complex(&ns, 6).unwrap();
    assert_eq!(tor.literal, vec![1; 7]);
    assert_eq!(tor.i_dims, vec![0, 2, 0, 2, 0, 2, 0, 2, 0]);
}

#[test]
fn crown_example_has_no_balanced_cycles() {
    let spec = corpus::crown_example::<Q>();
    let q = build_nm_quiver(&spec).unwrap();
    assert_eq!((q.down.len(), q.up.len()), (1, 1));
    assert!(q.nonempty(8).iter().all(|&(_, c)| !c));
    assert_eq!(q.max_revolution(), Some(1));
    let p = enumerate_balanced_paths(&q, 1).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[0].vertices(&q), vec!["e1", "w", "e2"]);
    assert!(matches!(p[0].steps[..], [Step::Down(0), Step::Up(0)]));
    let ns = matrix_model(&spec).unwrap();
    assert_eq!(tensor_power_nm(&ns.n, &ns.m, 1).unwrap().dim(), tensor_power_dim_via_paths(&q, 1).unwrap());
    assert!(tensor_power_nm(&ns.n, &ns.m, 2).unwrap().is_zero());
    assert_eq!(tor_complex(&ns, 4).unwrap().literal, vec![0; 5]);
}

#[test]
fn cycles_match_coequalizer_on_corpus() {
    for spec in corpus::nullsquare_corpus::<Q>() {
        let q = build_nm_quiver(&spec).unwrap();
        let ns = matrix_model(&spec).unwrap();
        for m in 1..=3 {
            let power = tensor_power_nm(&ns.n, &ns.m, m).unwrap();
            assert_eq!(power.dim(), tensor_power_dim_via_paths(&q, m).unwrap(), "{} m={m}", spec.name);
            assert_eq!(h0(&power).unwrap().dim, h0_via_cycles(&q, m).unwrap(), "{} m={m}", spec.name);
            let flags = q.nonempty(m)[m - 1];
            assert_eq!(flags.0, !enumerate_balanced_paths(&q, m).unwrap().is_empty());
            assert_eq!(flags.1, !enumerate_cv(&q, m).unwrap().is_empty());
        }
    }
}

#[test]
fn cyclic_action_has_order_m_and_factors_through_sigma_tau() {
    for spec in corpus::nullsquare_corpus::<Q>() {
        let ns = matrix_model(&spec).unwrap();
        for m in 1..=3 {
            let c = cyclic_spaces(&ns, m).unwrap();
            let t = c.t().unwrap();
            let mut p = Matrix::identity(c.a_h0.dim);
            for _ in 0..m {
                p = t.mul(&p).unwrap();
            }
            assert_eq!(p, Matrix::identity(c.a_h0.dim), "{} m={m}", spec.name);
            let (s, tau) = (c.sigma().unwrap(), c.tau().unwrap());
            assert_eq!(tau.mul(&s).unwrap(), t);
            assert_eq!(s.mul(&tau).unwrap(), c.t_b().unwrap());
            if m == 1 {
                assert_eq!(t, Matrix::identity(c.a_h0.dim));
            }
            assert_eq!(c.a_h0.dim, c.b_h0.dim);
        }
    }
}

#[test]
fn cycles_repeat_under_multiples() {
    for spec in corpus::nullsquare_corpus::<Q>() {
        let q = build_nm_quiver(&spec).unwrap();
        let flags = q.nonempty(8);
        for n0 in 1..=4 {
            if flags[n0 - 1].1 {
                for r in 2..=8 / n0 {
                    assert!(flags[r * n0 - 1].1, "{}", spec.name);
                }
            }
        }
    }
}

#[test]
fn tor_methods_agree_and_odd_i_vanishes() {
    for spec in corpus::nullsquare_corpus::<Q>() {
        let ns = matrix_model(&spec).unwrap();
        let tor = tor_complex(&ns, 4).unwrap();
        for (k, d) in tor.i_dims.iter().enumerate() {
            if (k + 1) % 2 == 1 {
                assert_eq!(*d, 0, "{}", spec.name);
            }
        }
        for m in 1..=2 {
            let c = cyclic_spaces(&ns, m).unwrap();
            assert_eq!(tor.i_dims[2 * m - 1], c.a_h0.dim + c.b_h0.dim);
        }
    }
}

#[test]
fn prime_field_tor_matches_rationals() {
    let ns_q = matrix_model(&corpus::square_spec::<Q>()).unwrap();
    let ns_p = matrix_model(&corpus::square_spec::<Fp>()).unwrap();
    assert_eq!(tor_complex(&ns_q, 4).unwrap().literal, tor_complex(&ns_p, 4).unwrap().literal);
}
