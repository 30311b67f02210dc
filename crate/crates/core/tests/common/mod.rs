//! Seeded generators of small null-square specs and C-bimodules.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nullsquare::algebra::{Presentation, Quiver, Relation};
use nullsquare::bimodule::{Bimodule, Summand};
use nullsquare::linalg::{Scalar, SparseVec};
use nullsquare::nullsquare::{matrix_model, NullSquare, NullSquareSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Truncated path algebra `kQ / F^len` on a random quiver with `n` vertices.
pub fn random_algebra<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, prefix: &str) -> Presentation<S> {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    let arrows = rng.gen_range(0..=n);
    for k in 0..arrows {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        q.add_arrow(&format!("{prefix}x{k}"), &names[x], &names[y]).unwrap();
    }
    let len = if rng.gen_bool(0.7) { 2 } else { 3 };
    // All composable paths of length `len`, as traversal sequences.
    let mut paths: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &paths {
            let end = q.arrows[*p.last().unwrap()].to;
            for (a, arr) in q.arrows.iter().enumerate() {
                if arr.from == end {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
        }
        paths = next;
    }
    let relations = paths.into_iter().map(|p| Relation { terms: vec![(S::one(), p)] }).collect();
    Presentation::new(format!("{prefix}-trunc{len}"), q, relations)
}

fn random_summands(rng: &mut ChaCha8Rng, left: usize, right: usize) -> Vec<Summand> {
    let mut pairs: Vec<(usize, usize)> = (0..left).flat_map(|l| (0..right).map(move |r| (l, r))).collect();
    pairs.shuffle(rng);
    let count = rng.gen_range(0..=2.min(pairs.len()));
    pairs.into_iter().take(count).map(|(l, r)| Summand { left: l, right: r, mult: rng.gen_range(1..=2) }).collect()
}

/// Largest `dim M + dim N` accepted by [`random_spec`].
pub const MAX_BRIDGE_DIM: usize = 24;

/// `|E|, |F| ≤ 3`, multiplicities at most 2; draws are repeated until `dim M + dim N ≤ MAX_BRIDGE_DIM`.
pub fn random_spec<S: Scalar>(seed: u64) -> NullSquareSpec<S> {
    let mut r = rng(seed);
    loop {
        let (ne, nf) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a = random_algebra(&mut r, ne, "a");
        let b = random_algebra(&mut r, nf, "b");
        let m = random_summands(&mut r, nf, ne);
        let n = random_summands(&mut r, ne, nf);
        let spec = NullSquareSpec { name: format!("random-{seed}"), a, b, m, n };
        let (_, _, dm, dn) = matrix_model(&spec).unwrap().dims();
        if dm + dn <= MAX_BRIDGE_DIM {
            return spec;
        }
    }
}

/// A C-bimodule: a simple, a projective, or a quotient of a projective by random homogeneous elements.
pub fn random_c_bimodule<S: Scalar>(ns: &NullSquare<S>, seed: u64) -> Bimodule<S> {
    let mut r = rng(seed);
    let c = ns.c.clone();
    let nv = c.num_vertices();
    match r.gen_range(0..3) {
        0 => Bimodule::simple(c.clone(), c, r.gen_range(0..nv), r.gen_range(0..nv)),
        kind => {
            let spec = random_summands(&mut r, nv, nv);
            let spec = if spec.is_empty() { vec![Summand { left: 0, right: nv - 1, mult: 1 }] } else { spec };
            let p = Bimodule::projective(c.clone(), c, &spec).unwrap();
            if kind == 1 || p.dim() == 0 {
                return p;
            }
            let count = r.gen_range(1..=2);
            let gens: Vec<SparseVec<S>> = (0..count)
                .map(|_| {
                    let i = r.gen_range(0..p.dim());
                    // Add a second basis vector from the same block when there is one.
                    let same: Vec<usize> = (0..p.dim()).filter(|&j| j != i && p.tags[j] == p.tags[i]).collect();
                    let mut v = vec![(i, S::one())];
                    if let Some(&j) = same.choose(&mut r) {
                        v.push((j, S::from_i64(r.gen_range(1..=3))));
                        v.sort_unstable_by_key(|e| e.0);
                    }
                    v
                })
                .collect();
            p.quotient(&gens).0
        }
    }
}
