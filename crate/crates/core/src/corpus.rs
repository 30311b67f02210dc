//! Named example presentations.

use crate::algebra::{Presentation, Quiver, Relation};
use crate::bimodule::Summand;
use crate::nullsquare::NullSquareSpec;
use crate::error::Result;
use crate::linalg::Scalar;

/// How the relation of the crown example is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrownReading {
    /// The composable length-2 path through `e0` (traverse `a2`, then `a0`).
    Composable,
    /// The written word taken literally; it is not a path, so the relation set is empty.
    Literal,
}

/// Crown quiver `a0: e0→e1`, `a1: e1→e2`, `a2: e2→e0` with one length-2 relation.
pub fn crown<S: Scalar>(reading: CrownReading) -> Presentation<S> {
    let mut q = Quiver::new(&["e0", "e1", "e2"]);
    q.add_arrow("a0", "e0", "e1").unwrap();
    q.add_arrow("a1", "e1", "e2").unwrap();
    q.add_arrow("a2", "e2", "e0").unwrap();
    let relations = match reading {
        CrownReading::Composable => vec![Relation::monomial(&q, &["a0", "a2"]).unwrap()],
        CrownReading::Literal => Vec::new(),
    };
    Presentation::new("crown", q, relations)
}

/// Single vertex, no arrows.
pub fn point<S: Scalar>(name: &str) -> Presentation<S> {
    Presentation::new("k", Quiver::new(&[name]), Vec::new())
}

/// `u: e→g`, `v: g→e` with `uv = vu = 0`.
pub fn two_cycle<S: Scalar>() -> Presentation<S> {
    let mut q = Quiver::new(&["e", "g"]);
    q.add_arrow("u", "e", "g").unwrap();
    q.add_arrow("v", "g", "e").unwrap();
    let r = vec![Relation::monomial(&q, &["u", "v"]).unwrap(), Relation::monomial(&q, &["v", "u"]).unwrap()];
    Presentation::new("two-cycle", q, r)
}

/// Linearly oriented `A_n` with vertices `{prefix}0..{prefix}{n-1}`, optionally radical square zero.
pub fn linear<S: Scalar>(n: usize, prefix: &str, rad_square_zero: bool) -> Presentation<S> {
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    for i in 0..n.saturating_sub(1) {
        q.add_arrow(&format!("{prefix}a{i}"), &names[i], &names[i + 1]).unwrap();
    }
    let mut r = Vec::new();
    if rad_square_zero {
        for i in 0..n.saturating_sub(2) {
            let w1 = format!("{prefix}a{}", i + 1);
            let w0 = format!("{prefix}a{i}");
            r.push(Relation::monomial(&q, &[&w1, &w0]).unwrap());
        }
    }
    Presentation::new(format!("A{n}"), q, r)
}

/// Kronecker quiver: two arrows `x, y: k0→k1`.
pub fn kronecker<S: Scalar>() -> Presentation<S> {
    let mut q = Quiver::new(&["k0", "k1"]);
    q.add_arrow("x", "k0", "k1").unwrap();
    q.add_arrow("y", "k0", "k1").unwrap();
    Presentation::new("kronecker", q, Vec::new())
}

/// Dual numbers `k[x]/(x^2)` on one vertex.
pub fn dual_numbers<S: Scalar>(vertex: &str) -> Presentation<S> {
    let mut q = Quiver::new(&[vertex]);
    q.add_arrow("x", vertex, vertex).unwrap();
    let r = vec![Relation::monomial(&q, &["x", "x"]).unwrap()];
    Presentation::new("dual-numbers", q, r)
}

/// Commutative square `s0 → s1, s2 → s3` with `b a = d c`.
pub fn commutative_square<S: Scalar>() -> Result<Presentation<S>> {
    let mut q = Quiver::new(&["s0", "s1", "s2", "s3"]);
    q.add_arrow("sa", "s0", "s1")?;
    q.add_arrow("sb", "s1", "s3")?;
    q.add_arrow("sc", "s0", "s2")?;
    q.add_arrow("sd", "s2", "s3")?;
    let r = Relation::from_written(&q, &[(S::one(), vec!["sb", "sa"]), (-S::one(), vec!["sd", "sc"])])?;
    Ok(Presentation::new("square", q, vec![r]))
}

/// Three vertices with a 2-cycle `t0 ⇄ t1` (radical square zero) and an arrow `t1 → t2`.
pub fn cycle_then_arrow<S: Scalar>() -> Result<Presentation<S>> {
    let mut q = Quiver::new(&["t0", "t1", "t2"]);
    q.add_arrow("p", "t0", "t1")?;
    q.add_arrow("r", "t1", "t0")?;
    q.add_arrow("w", "t1", "t2")?;
    let r = vec![
        Relation::monomial(&q, &["p", "r"])?,
        Relation::monomial(&q, &["r", "p"])?,
        Relation::monomial(&q, &["w", "p"])?,
    ];
    Ok(Presentation::new("cycle-arrow", q, r))
}

fn summand(left: usize, right: usize, mult: usize) -> Summand {
    Summand { left, right, mult }
}

/// Crown algebra `A` with `B = k` on vertex `w`, `M = Bw ⊗ e1A` and `N = Ae2 ⊗ wB`.
pub fn crown_example<S: Scalar>() -> NullSquareSpec<S> {
    NullSquareSpec {
        name: "crown-example".into(),
        a: crown(CrownReading::Composable),
        b: point("w"),
        m: vec![summand(0, 1, 1)],
        n: vec![summand(2, 0, 1)],
    }
}

/// `A = B = k`, `M = N = k`: the radical-square-zero 2-cycle.
pub fn two_cycle_spec<S: Scalar>() -> NullSquareSpec<S> {
    NullSquareSpec { name: "two-cycle".into(), a: point("e"), b: point("g"), m: vec![summand(0, 0, 1)], n: vec![summand(0, 0, 1)] }
}

/// `M = N = 0`, so `Λ = A × B`.
pub fn product_spec<S: Scalar>(a: Presentation<S>, b: Presentation<S>) -> NullSquareSpec<S> {
    NullSquareSpec { name: format!("{}x{}", a.name, b.name), a, b, m: Vec::new(), n: Vec::new() }
}

/// `A = A_2` on `p0 → p1`, `B = k` on `w`, down `p1 → w`, up `w → p0`: one oriented cycle through both blocks.
pub fn a2_cycle_spec<S: Scalar>() -> NullSquareSpec<S> {
    NullSquareSpec {
        name: "a2-cycle".into(),
        a: linear(2, "p", false),
        b: point("w"),
        m: vec![summand(0, 1, 1)],
        n: vec![summand(0, 0, 1)],
    }
}

/// `A = B = k` with `M` of multiplicity `m` and `N` of multiplicity `n`.
pub fn multiplicity_spec<S: Scalar>(m: usize, n: usize) -> NullSquareSpec<S> {
    NullSquareSpec {
        name: format!("mult-{m}-{n}"),
        a: point("e"),
        b: point("g"),
        m: vec![summand(0, 0, m)],
        n: if n == 0 { Vec::new() } else { vec![summand(0, 0, n)] },
    }
}

/// Corner algebra (`N = 0`) over `A`, `B` with a projective `M`.
pub fn corner_spec<S: Scalar>(a: Presentation<S>, b: Presentation<S>, m: Vec<Summand>) -> NullSquareSpec<S> {
    NullSquareSpec { name: format!("corner-{}-{}", a.name, b.name), a, b, m, n: Vec::new() }
}

/// Acyclic specs with smooth `A`: crown with `B = A_2` and linear `A_3` with `B = k`.
pub fn crown_with_a2<S: Scalar>() -> NullSquareSpec<S> {
    NullSquareSpec {
        name: "crown-a2".into(),
        a: crown(CrownReading::Composable),
        b: linear(2, "q", false),
        m: vec![summand(0, 1, 1)],
        n: vec![summand(2, 1, 1)],
    }
}

pub fn a3_with_point<S: Scalar>() -> NullSquareSpec<S> {
    NullSquareSpec {
        name: "a3-point".into(),
        a: linear(3, "p", false),
        b: point("w"),
        m: vec![summand(0, 0, 1)],
        n: vec![summand(2, 0, 1)],
    }
}

/// `A = A_2` on `e0 → e1`, `B = A_2` on `g0 → g1`, two down and two up arrows.
pub fn square_spec<S: Scalar>() -> NullSquareSpec<S> {
    NullSquareSpec {
        name: "square".into(),
        a: linear(2, "e", false),
        b: linear(2, "g", false),
        m: vec![summand(0, 0, 1), summand(1, 1, 1)],
        n: vec![summand(0, 1, 1), summand(1, 0, 1)],
    }
}

/// The named null-square projective specs.
pub fn nullsquare_corpus<S: Scalar>() -> Vec<NullSquareSpec<S>> {
    vec![
        crown_example(),
        two_cycle_spec(),
        product_spec(crown(CrownReading::Composable), linear(2, "q", false)),
        a2_cycle_spec(),
        multiplicity_spec(2, 1),
        multiplicity_spec(2, 2),
        corner_spec(crown(CrownReading::Composable), point("w"), vec![summand(0, 1, 1)]),
        crown_with_a2(),
        a3_with_point(),
        square_spec(),
    ]
}
