use std::sync::Arc;

use nullsquare::algebra::{compute_basis, parse_presentation, peirce_quiver, IdempotentSystem, PeirceQuiver};
use nullsquare::corpus::{self, CrownReading};
use nullsquare::linalg::sparse;
use nullsquare::module::{global_dimension, is_smooth, minimal_resolution, radical, LeftModule, Length};
use nullsquare::{Error, Fp, Q};

#[test]
fn point_is_the_field() {
    let a = compute_basis(&corpus::point::<Q>("x")).unwrap();
    assert_eq!(a.dim(), 1);
}

#[test]
fn crown_basis() {
    let a = compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap();
    assert_eq!(a.dim(), 9);
    a.validate().unwrap();
    let by_len = |l: usize| a.basis.iter().filter(|b| b.path.as_ref().unwrap().len() == l).count();
    assert_eq!((by_len(0), by_len(1), by_len(2), by_len(3)), (3, 3, 2, 1));
    let labels = a.labels();
    assert!(!labels.contains(&"a0*a2".to_string()));
    assert!(labels.contains(&"a2*a1*a0".to_string()));
    assert_eq!((a.projective_dim(2), a.projective_dim(0), a.projective_dim(1)), (2, 4, 3));
    // e1 A: paths ending at e1.
    assert_eq!(a.basis.iter().filter(|b| b.target == 1).count(), 2);
}

#[test]
fn crown_literal_reading_is_not_admissible() {
    let p = corpus::crown::<Q>(CrownReading::Literal).with_cap(8);
    assert_eq!(compute_basis(&p).unwrap_err(), Error::NotAdmissible { cap: 8 });
}

#[test]
fn crown_json_literal_word_is_rejected() {
    let json = r#"{"path_convention":"right_to_left","vertices":["e0","e1","e2"],
      "arrows":[{"name":"a0","from":"e0","to":"e1"},{"name":"a1","from":"e1","to":"e2"},{"name":"a2","from":"e2","to":"e0"}],
      "relations":[[{"coeff":"1","path":["a2","a0"]}]]}"#;
    assert!(matches!(parse_presentation::<Q>(json).and_then(|p| compute_basis(&p)), Err(Error::MalformedRelation(_))));
    let fixed = json.replace(r#"["a2","a0"]"#, r#"["a0","a2"]"#);
    assert_eq!(compute_basis(&parse_presentation::<Q>(&fixed).unwrap()).unwrap().dim(), 9);
}

#[test]
fn short_or_non_parallel_relations_are_rejected() {
    let json = r#"{"vertices":["a","b"],"arrows":[{"name":"x","from":"a","to":"b"},{"name":"y","from":"b","to":"a"}],
      "relations":[[{"coeff":"1","path":["x"]}]]}"#;
    assert!(matches!(compute_basis(&parse_presentation::<Q>(json).unwrap()), Err(Error::MalformedRelation(_))));
    let json = r#"{"vertices":["a","b"],"arrows":[{"name":"x","from":"a","to":"b"},{"name":"y","from":"b","to":"a"}],
      "relations":[[{"coeff":"1","path":["y","x"]},{"coeff":"-1/2","path":["x","y"]}]]}"#;
    assert!(matches!(compute_basis(&parse_presentation::<Q>(json).unwrap()), Err(Error::MalformedRelation(_))));
}

#[test]
fn two_cycle_products() {
    let a = compute_basis(&corpus::two_cycle::<Q>()).unwrap();
    assert_eq!(a.dim(), 4);
    let u = a.labels().iter().position(|l| l == "u").unwrap();
    let v = a.labels().iter().position(|l| l == "v").unwrap();
    assert!(a.mul_basis(u, v).is_empty());
    assert!(a.mul_basis(v, u).is_empty());
    let one = a.unit();
    assert_eq!(a.multiply(&one, &sparse::unit(u)), sparse::unit(u));
    let e = a.idempotent(0);
    // u starts at e, so g·u = u and e·u = 0.
    assert!(a.mul_basis(e, u).is_empty());
}

#[test]
fn commutative_square_identifies_paths() {
    let a = compute_basis(&corpus::commutative_square::<Q>().unwrap()).unwrap();
    assert_eq!(a.dim(), 4 + 4 + 1);
    a.validate().unwrap();
}

#[test]
fn dimension_independent_of_arrow_order() {
    let p = corpus::commutative_square::<Q>().unwrap();
    let q = p.permute_arrows(&[3, 1, 0, 2]);
    assert_eq!(compute_basis(&p).unwrap().dim(), compute_basis(&q).unwrap().dim());
    let c = corpus::crown::<Q>(CrownReading::Composable);
    assert_eq!(compute_basis(&c.permute_arrows(&[2, 0, 1])).unwrap().dim(), 9);
}

#[test]
fn prime_field_basis_matches() {
    let a = compute_basis(&corpus::commutative_square::<Fp>().unwrap()).unwrap();
    assert_eq!(a.dim(), 9);
}

#[test]
fn peirce_quivers() {
    let a = compute_basis(&corpus::linear::<Q>(2, "e", false)).unwrap();
    let q = peirce_quiver(&a, &IdempotentSystem::vertices(2));
    assert_eq!(q.arrows, vec![(0, 1)]);
    assert!(q.is_e_triangular().unwrap());
    assert_eq!(q.source_idempotent().unwrap(), 0);
    let trivial = peirce_quiver(&a, &IdempotentSystem::trivial(2));
    assert_eq!(trivial.n, 1);
    assert!(trivial.arrows.is_empty());
    assert_eq!(trivial.is_e_triangular(), Err(Error::TrivialSystem));

    let cyc = compute_basis(&corpus::two_cycle::<Q>()).unwrap();
    let q = peirce_quiver(&cyc, &IdempotentSystem::vertices(2));
    assert!(!q.is_e_triangular().unwrap());
    assert_eq!(q.source_idempotent(), Err(Error::NoSource));

    let tri = PeirceQuiver::from_arrows(3, vec![(0, 1), (1, 2), (0, 2)]);
    assert!(tri.is_e_triangular().unwrap());
    assert_eq!(PeirceQuiver::from_arrows(3, vec![(0, 1), (1, 2)]).source_idempotent().unwrap(), 0);
    assert_eq!(PeirceQuiver::from_arrows(3, vec![(0, 2), (1, 2)]).source_idempotent().unwrap(), 0);
}

#[test]
fn corner_subalgebras() {
    let a = compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap();
    let all = a.corner_subalgebra(&[0, 1, 2]).unwrap();
    assert_eq!(all.dim(), a.dim());
    let cyc = compute_basis(&corpus::two_cycle::<Q>()).unwrap();
    assert_eq!(cyc.corner_subalgebra(&[0]).unwrap().dim(), 1);
    let c = a.corner_subalgebra(&[0, 1]).unwrap();
    c.validate().unwrap();
    // e0, e1, a0, a2*a1, a2*a1*a0
    assert_eq!(c.dim(), 5);
}

#[test]
fn radicals() {
    let ss = compute_basis(&corpus::point::<Q>("x")).unwrap();
    assert_eq!(radical(&ss).unwrap().dim(), 0);
    let cyc = compute_basis(&corpus::two_cycle::<Q>()).unwrap();
    assert_eq!(radical(&cyc).unwrap().dim(), 2);
}

#[test]
fn crown_resolutions() {
    let a = Arc::new(compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap());
    let pd: Vec<usize> = (0..3)
        .map(|v| {
            let r = minimal_resolution(&LeftModule::simple(a.clone(), v), 24, "S").unwrap();
            r.verify().unwrap();
            assert!(r.is_minimal());
            r.length.finite().unwrap()
        })
        .collect();
    assert_eq!(pd, vec![1, 1, 2]);
    let r = minimal_resolution(&LeftModule::simple(a.clone(), 2), 24, "S2").unwrap();
    assert_eq!(r.multiplicities, vec![vec![2], vec![0], vec![1]]);
    assert_eq!(global_dimension(&a, 24).unwrap().value, Length::Finite { length: 2 });
    assert!(is_smooth(&a, 24).unwrap().is_smooth());

    // rad(Λ e1) is covered isomorphically by Λ e2.
    let p1 = LeftModule::projective(a.clone(), 1);
    let (rad, _) = p1.submodule(&p1.radical().rows().to_vec()).unwrap();
    let cover = rad.projective_cover().unwrap();
    assert_eq!(cover.vertices, vec![2]);
    assert_eq!(cover.module.dim(), rad.dim());
    assert!(rad.is_projective());
    assert!(!LeftModule::simple(a.clone(), 1).is_projective());
}

#[test]
fn two_cycle_is_not_known_smooth() {
    let a = Arc::new(compute_basis(&corpus::two_cycle::<Q>()).unwrap());
    for cap in [3, 8, 24] {
        let r = minimal_resolution(&LeftModule::simple(a.clone(), 0), cap, "S_e").unwrap();
        assert_eq!(r.length, Length::Unknown { cap });
        assert!(r.periodic);
        r.verify().unwrap();
    }
    let s = is_smooth(&a, 24).unwrap();
    assert!(!s.is_smooth());
}

#[test]
fn modules_respect_structure_constants() {
    let a = Arc::new(compute_basis(&corpus::commutative_square::<Q>().unwrap()).unwrap());
    for v in 0..4 {
        LeftModule::projective(a.clone(), v).check().unwrap();
    }
    let x = LeftModule::projective(a.clone(), 0);
    assert!(x.is_projective());
    let (s, _) = x.submodule(&x.radical().rows().to_vec()).unwrap();
    s.check().unwrap();
}
