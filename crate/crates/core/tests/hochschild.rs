use std::sync::Arc;

use nullsquare::algebra::{compute_basis, IdempotentSystem};
use nullsquare::bimodule::{Bimodule, Summand};
use nullsquare::corpus::{self, CrownReading};
use nullsquare::hochschild::{bar_complex, hh0_direct, hh_dims, hh_dims_with, hh_with_coefficients, Mode};
use nullsquare::{Error, Fp, Q};

fn hh(p: nullsquare::algebra::Presentation<Q>, n: usize) -> Vec<usize> {
    hh_dims(&Arc::new(compute_basis(&p).unwrap()), n).unwrap().dims
}

#[test]
fn field() {
    assert_eq!(hh(corpus::point("x"), 4), vec![1, 0, 0, 0, 0]);
}

#[test]
fn lower_triangular_two_by_two() {
    assert_eq!(hh(corpus::linear(2, "v", false), 4), vec![2, 0, 0, 0, 0]);
}

#[test]
fn two_cycle_is_periodic() {
    assert_eq!(hh(corpus::two_cycle(), 5), vec![2, 1, 1, 1, 1, 1]);
}

#[test]
fn dual_numbers_in_characteristic_zero() {
    assert_eq!(hh(corpus::dual_numbers("o"), 4), vec![2, 1, 1, 1, 1]);
    let a = Arc::new(compute_basis(&corpus::dual_numbers::<Fp>("o")).unwrap());
    assert_eq!(hh_dims(&a, 4).unwrap().dims, vec![2, 1, 1, 1, 1]);
}

#[test]
fn crown_degree_zero_matches_direct() {
    let a = Arc::new(compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap());
    let t = hh_dims(&a, 4).unwrap();
    assert_eq!(t.dims[0], hh0_direct(&a).unwrap());
    assert_eq!(t.dims[0], 3);
    let f = Arc::new(compute_basis(&corpus::crown::<Fp>(CrownReading::Composable)).unwrap());
    assert_eq!(hh_dims(&f, 4).unwrap().dims, t.dims);
}

#[test]
fn normalized_agrees_with_unnormalized() {
    for p in [corpus::two_cycle::<Q>(), corpus::crown(CrownReading::Composable), corpus::linear(3, "v", true)] {
        let a = Arc::new(compute_basis(&p).unwrap());
        let sys = IdempotentSystem::vertices(a.num_vertices());
        let u = hh_dims_with(&a, &sys, 3, Mode::Unnormalized).unwrap();
        let n = hh_dims_with(&a, &sys, 3, Mode::Normalized).unwrap();
        assert_eq!(u.dims, n.dims, "{}", a.name);
    }
}

#[test]
fn normalized_needs_vertex_system() {
    let a = Arc::new(compute_basis(&corpus::two_cycle::<Q>()).unwrap());
    let z = Bimodule::regular(a.clone());
    let sys = IdempotentSystem::trivial(2);
    assert!(matches!(bar_complex(&a, &z, &sys, 2, Mode::Normalized, 1000), Err(Error::Unsupported(_))));
}

#[test]
fn coarser_separable_subalgebra_gives_same_homology() {
    let a = Arc::new(compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap());
    let fine = hh_dims(&a, 3).unwrap().dims;
    let sys = IdempotentSystem::new(3, vec![vec![0, 1], vec![2]]).unwrap();
    assert_eq!(hh_dims_with(&a, &sys, 3, Mode::Unnormalized).unwrap().dims, fine);
}

#[test]
fn projective_coefficients_are_acyclic() {
    let a = Arc::new(compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap());
    for l in 0..3 {
        for r in 0..3 {
            let z = Bimodule::projective(a.clone(), a.clone(), &[Summand { left: l, right: r, mult: 1 }]).unwrap();
            let h = hh_with_coefficients(&a, &z, 3).unwrap();
            assert_eq!(h, vec![a.block_dim(r, l), 0, 0, 0], "l={l} r={r}");
        }
    }
}

#[test]
fn chain_cap_is_enforced() {
    let a = Arc::new(compute_basis(&corpus::crown::<Q>(CrownReading::Composable)).unwrap());
    let z = Bimodule::regular(a.clone());
    let sys = IdempotentSystem::vertices(3);
    assert!(matches!(
        bar_complex(&a, &z, &sys, 4, Mode::Unnormalized, 50),
        Err(Error::DimensionCapExceeded { .. })
    ));
}
