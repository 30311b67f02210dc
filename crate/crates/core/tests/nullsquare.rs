use std::sync::Arc;

use nullsquare::algebra::compute_basis;
use nullsquare::bimodule::Bimodule;
use nullsquare::corpus;
use nullsquare::module::{is_smooth, LeftModule, DEFAULT_CAP};
use nullsquare::nullsquare::{
    build_presentation, check_presentation_model_iso, k1_complex, matrix_model, parse_nullsquare, q_resolution,
    smodule_convert, smodule_to_module, NullSquareFile, NullSquareSpec,
};
use nullsquare::{Error, Q};

fn specs() -> Vec<NullSquareSpec<Q>> {
    vec![
        corpus::crown_example(),
        corpus::two_cycle_spec(),
        corpus::product_spec(corpus::two_cycle(), corpus::point("z")),
        corpus::a2_cycle_spec(),
        corpus::multiplicity_spec(2, 1),
        corpus::crown_with_a2(),
        corpus::a3_with_point(),
    ]
}

#[test]
fn model_dimensions() {
    let two = matrix_model(&corpus::two_cycle_spec::<Q>()).unwrap();
    assert_eq!(two.lambda.dim(), 4);
    two.lambda.validate().unwrap();
    let crown = matrix_model(&corpus::crown_example::<Q>()).unwrap();
    // A = 9, B = 1, M = dim(Bw)·dim(e1A) = 2, N = dim(Ae2)·dim(wB) = 2.
    assert_eq!(crown.dims(), (9, 1, 2, 2));
    crown.lambda.validate().unwrap();
    let prod = matrix_model(&corpus::product_spec::<Q>(corpus::two_cycle(), corpus::point("z"))).unwrap();
    assert_eq!(prod.lambda.dim(), 5);
}

#[test]
fn corner_has_no_block_from_b_to_a() {
    let spec = corpus::corner_spec::<Q>(corpus::crown(corpus::CrownReading::Composable), corpus::linear(2, "q", false), vec![
        nullsquare::bimodule::Summand { left: 0, right: 1, mult: 1 },
    ]);
    let ns = matrix_model(&spec).unwrap();
    let nva = ns.a.num_vertices();
    assert!(ns.lambda.basis.iter().all(|b| !(b.source >= nva && b.target < nva)));
}

#[test]
fn presentations_of_small_specs() {
    let g = build_presentation(&corpus::two_cycle_spec::<Q>()).unwrap();
    assert_eq!(g.presentation.quiver.arrows.len(), 2);
    assert_eq!(g.presentation.relations.len(), 2);
    let g = build_presentation(&corpus::crown_example::<Q>()).unwrap();
    // a0a2 plus v u; e1 A e2 = 0 gives no u ∨ v relation.
    assert_eq!(g.presentation.relations.len(), 2);
    let g = build_presentation(&corpus::product_spec::<Q>(corpus::two_cycle(), corpus::point("z"))).unwrap();
    assert_eq!(g.presentation.relations.len(), 2);
}

#[test]
fn presentation_and_model_agree() {
    for spec in specs() {
        let r = check_presentation_model_iso(&spec).unwrap_or_else(|e| panic!("{}: {e}", spec.name));
        let (a, b, m, n) = r.dims;
        assert_eq!(r.presentation_dim, a + b + m + n, "{}", spec.name);
    }
}

#[test]
fn corrupted_presentation_is_detected() {
    let spec = corpus::two_cycle_spec::<Q>();
    let model = matrix_model(&spec).unwrap();
    let mut g = build_presentation(&spec).unwrap();
    g.presentation.relations.remove(0);
    let err = nullsquare::nullsquare::check_iso(&spec, &model, &g).unwrap_err();
    assert!(matches!(err, Error::IsoFailure { .. }), "{err}");
}

#[test]
fn spec_json_round_trip() {
    let spec = corpus::crown_example::<Q>();
    let json = serde_json::to_string(&NullSquareFile::from_spec(&spec)).unwrap();
    let back: NullSquareSpec<Q> = parse_nullsquare(&json, None).unwrap();
    assert_eq!(back.m, spec.m);
    assert_eq!(back.n, spec.n);
    assert_eq!(matrix_model(&back).unwrap().lambda.dim(), 14);
    let text = r#"{"A":{"vertices":["e"],"arrows":[]},"B":{"vertices":["g"],"arrows":[]},
        "M":[{"g":"g","e":"e","mult":1}],"N":[{"f":"e","h":"g"}]}"#;
    assert_eq!(matrix_model(&parse_nullsquare::<Q>(text, None).unwrap()).unwrap().lambda.dim(), 4);
}

#[test]
fn simples_and_projectives_as_s_modules() {
    let ns = matrix_model(&corpus::crown_example::<Q>()).unwrap();
    for v in 0..ns.lambda.num_vertices() {
        let s = smodule_convert(&ns, &LeftModule::simple(ns.lambda.clone(), v)).unwrap();
        s.check(&ns).unwrap();
        if ns.is_a_vertex(v) {
            assert_eq!((s.x.dim(), s.y.dim()), (1, 0));
        } else {
            assert_eq!((s.x.dim(), s.y.dim()), (0, 1));
        }
    }
    // Λ e = (A e ⇌ M e) with μ an isomorphism.
    for v in 0..ns.a.num_vertices() {
        let p = LeftModule::projective(ns.lambda.clone(), v);
        let s = smodule_convert(&ns, &p).unwrap();
        s.check(&ns).unwrap();
        assert_eq!(s.x.dim(), ns.a.projective_dim(v));
        assert_eq!(s.mu.rank(), s.y.dim());
        assert_eq!(s.mu.cols(), s.y.dim());
    }
    let z = smodule_convert(&ns, &LeftModule::zero(ns.lambda.clone())).unwrap();
    assert_eq!((z.x.dim(), z.y.dim()), (0, 0));
}

#[test]
fn s_module_round_trip() {
    for spec in specs() {
        let ns = matrix_model(&spec).unwrap();
        for v in 0..ns.lambda.num_vertices() {
            let p = LeftModule::projective(ns.lambda.clone(), v);
            let s = smodule_convert(&ns, &p).unwrap();
            let back = smodule_to_module(&ns, &s).unwrap();
            back.check().unwrap();
            let s2 = smodule_convert(&ns, &back).unwrap();
            assert_eq!(s2.x.actions(), s.x.actions());
            assert_eq!(s2.y.actions(), s.y.actions());
            assert_eq!(s2.mu, s.mu);
            assert_eq!(s2.nu, s.nu);
        }
    }
}

#[test]
fn k1_homotopy() {
    for spec in specs() {
        let ns = matrix_model(&spec).unwrap();
        let k = k1_complex(&ns, 4).unwrap();
        k.check_square_zero().unwrap();
        assert_eq!(k.check_homotopy().unwrap(), 4, "{}", spec.name);
        assert_eq!(k.k1_dim(), k.terms[0].dim() - ns.lambda.dim());
    }
}

#[test]
fn crown_q_resolution() {
    let ns = matrix_model(&corpus::crown_example::<Q>()).unwrap();
    let s1 = LeftModule::simple(ns.a.clone(), 1);
    let q = q_resolution(&ns, &s1, DEFAULT_CAP).unwrap();
    assert_eq!((q.r, q.l), (1, 1));
    q.report.verify().unwrap();
    assert!(q.all_projective);
    assert!(q.vanishes_beyond_bound());
    assert!(q.report.length.finite().unwrap() <= 3);
}

#[test]
fn q_resolution_of_projective_over_product() {
    let ns = matrix_model(&corpus::product_spec::<Q>(corpus::linear(2, "p", false), corpus::point("w"))).unwrap();
    let p = LeftModule::projective(ns.a.clone(), 0);
    let q = q_resolution(&ns, &p, DEFAULT_CAP).unwrap();
    assert_eq!(q.report.length.finite(), Some(0));
    q.report.verify().unwrap();
}

#[test]
fn q_resolution_needs_nilpotent_nm() {
    let ns = matrix_model(&corpus::two_cycle_spec::<Q>()).unwrap();
    let s = LeftModule::simple(ns.a.clone(), 0);
    assert!(matches!(q_resolution(&ns, &s, 6), Err(Error::TensorPowersDoNotVanish { .. })));
}

#[test]
fn crown_example_is_smooth() {
    let ns = matrix_model(&corpus::crown_example::<Q>()).unwrap();
    assert!(is_smooth(&ns.lambda, DEFAULT_CAP).unwrap().is_smooth());
}

#[test]
fn general_corner_with_simple_bimodule() {
    let a = Arc::new(compute_basis(&corpus::linear::<Q>(2, "p", false)).unwrap());
    let b = Arc::new(compute_basis(&corpus::dual_numbers::<Q>("o")).unwrap());
    let m = Bimodule::simple(b.clone(), a.clone(), 0, 1);
    m.check().unwrap();
    let ns = nullsquare::nullsquare::NullSquare::from_bimodules("corner", a.clone(), b.clone(), m, Bimodule::zero(a, b))
        .unwrap();
    ns.lambda.validate().unwrap();
    assert_eq!(ns.lambda.dim(), 3 + 2 + 1);
}
