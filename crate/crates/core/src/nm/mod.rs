//! The (N,M)-quiver of a null-square projective algebra, balanced paths and
//! vertical balanced cycles, and the cyclic structure of `H_0(A, (N ⊗_B M)^{⊗_A m})`.
//!
//! A balanced path from `E` to `E` is determined by its vertical arrows: between two
//! vertical arrows the horizontal segment is either empty (same vertex) or the unique
//! Peirce arrow joining the two vertices. Paths are stored as rungs `(down, up)`.

mod tor;

use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::bimodule::ProjBimoduleSpec;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::nullsquare::{spec_algebras, NullSquareSpec};

pub use tor::{
    cyclic_action, cyclic_spaces, invariants_coinvariants, sigma_tau, tor_complex, tor_literal, tor_reduced,
    CyclicSpaces, TorTable,
};

/// Largest revolution number explored by enumerations.
pub const MAX_REVOLUTION: usize = 8;
/// Cap on the number of paths listed per revolution number.
pub const PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Floor {
    /// First floor, the vertices of `A`.
    E,
    /// Ground floor, the vertices of `B`.
    F,
}

/// Vertical arrow of the (N,M)-quiver, one per copy of a summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerticalArrow {
    pub from: usize,
    pub to: usize,
    pub summand: usize,
    pub copy: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NMQuiver {
    pub e: Vec<String>,
    pub f: Vec<String>,
    /// Peirce arrows `x → y` of `A` (`y A x ≠ 0`, `x ≠ y`).
    pub a_arrows: Vec<(usize, usize)>,
    pub b_arrows: Vec<(usize, usize)>,
    /// `e → g` for each copy of `B g ⊗ e A` in `M`.
    pub down: Vec<VerticalArrow>,
    /// `h → f` for each copy of `A f ⊗ h B` in `N`.
    pub up: Vec<VerticalArrow>,
    /// `a_blocks[y][x] = dim y A x`.
    pub a_blocks: Vec<Vec<usize>>,
    pub b_blocks: Vec<Vec<usize>>,
}

fn blocks<S: Scalar>(alg: &BasedAlgebra<S>) -> Vec<Vec<usize>> {
    let n = alg.num_vertices();
    (0..n).map(|y| (0..n).map(|x| alg.block_dim(y, x)).collect()).collect()
}

fn peirce_arrows(b: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = b.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && b[y][x] > 0 {
                out.push((x, y));
            }
        }
    }
    out
}

/// Summands are `L l ⊗ r R`; the arrow goes from `r` to `l`.
fn verticals(spec: &ProjBimoduleSpec) -> Vec<VerticalArrow> {
    let mut out = Vec::new();
    for (k, s) in spec.iter().enumerate() {
        for c in 0..s.mult {
            out.push(VerticalArrow { from: s.right, to: s.left, summand: k, copy: c });
        }
    }
    out
}

impl NMQuiver {
    pub fn new<S: Scalar>(a: &BasedAlgebra<S>, b: &BasedAlgebra<S>, m: &ProjBimoduleSpec, n: &ProjBimoduleSpec) -> Self {
        let (a_blocks, b_blocks) = (blocks(a), blocks(b));
        NMQuiver {
            e: a.vertices.clone(),
            f: b.vertices.clone(),
            a_arrows: peirce_arrows(&a_blocks),
            b_arrows: peirce_arrows(&b_blocks),
            down: verticals(m),
            up: verticals(n),
            a_blocks,
            b_blocks,
        }
    }

    /// `dim h B g` for the rung `(d, u)`.
    fn rung_weight(&self, d: usize, u: usize) -> usize {
        self.b_blocks[self.up[u].from][self.down[d].to]
    }

    /// `dim e A f` for an up arrow followed by a down arrow.
    fn link_weight(&self, u: usize, d: usize) -> usize {
        self.a_blocks[self.down[d].from][self.up[u].to]
    }

    /// Rungs `(d, u)` whose ground segment is nonzero, in lexicographic order.
    pub fn rungs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for d in 0..self.down.len() {
            for u in 0..self.up.len() {
                if self.rung_weight(d, u) > 0 {
                    out.push((d, u));
                }
            }
        }
        out
    }

    fn rung_graph(&self) -> (Vec<(usize, usize)>, Vec<Vec<bool>>) {
        let rungs = self.rungs();
        let adj = rungs
            .iter()
            .map(|&(_, u)| rungs.iter().map(|&(d, _)| self.link_weight(u, d) > 0).collect())
            .collect();
        (rungs, adj)
    }

    /// Whether `P^E_m` and `CV^E_m` are nonempty, for `m = 1..=max_m`.
    pub fn nonempty(&self, max_m: usize) -> Vec<(bool, bool)> {
        let (rungs, adj) = self.rung_graph();
        let r = rungs.len();
        // reach[i][j]: a walk of the current length from rung i ending at rung j.
        let mut reach: Vec<Vec<bool>> = (0..r).map(|i| (0..r).map(|j| i == j).collect()).collect();
        let mut out = Vec::with_capacity(max_m);
        for _ in 0..max_m {
            let paths = reach.iter().any(|row| row.iter().any(|&b| b));
            let cycles = (0..r).any(|i| (0..r).any(|j| reach[i][j] && adj[j][i]));
            out.push((paths, cycles));
            reach = (0..r).map(|i| (0..r).map(|j| (0..r).any(|k| reach[i][k] && adj[k][j])).collect()).collect();
        }
        out
    }

    /// Largest revolution number of a balanced path, `None` when balanced paths are unbounded
    /// (the rung graph has an oriented cycle).
    pub fn max_revolution(&self) -> Option<usize> {
        let (rungs, adj) = self.rung_graph();
        let r = rungs.len();
        // Longest walk via repeated relaxation; a walk longer than r rungs means a cycle.
        let mut best = vec![1usize; r];
        for _ in 0..=r {
            let mut changed = false;
            for i in 0..r {
                for j in 0..r {
                    if adj[i][j] && best[i] + 1 > best[j] {
                        best[j] = best[i] + 1;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Some(best.into_iter().max().unwrap_or(0));
            }
            if best.iter().any(|&b| b > r) {
                return None;
            }
        }
        None
    }
}

pub fn build_nm_quiver<S: Scalar>(spec: &NullSquareSpec<S>) -> Result<NMQuiver> {
    let (a, b) = spec_algebras(spec)?;
    Ok(NMQuiver::new(&a, &b, &spec.m, &spec.n))
}

/// One arrow of a balanced path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Down(usize),
    Up(usize),
    Horizontal { floor: Floor, from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedPath {
    /// Traversal order.
    pub steps: Vec<Step>,
    pub start: (Floor, usize),
    pub end: (Floor, usize),
    pub revolution: Option<usize>,
    /// Vertical arrows as `(down, up)` pairs.
    pub rungs: Vec<(usize, usize)>,
}

impl BalancedPath {
    fn from_rungs(q: &NMQuiver, rungs: &[(usize, usize)], close: bool) -> Self {
        let mut steps = Vec::new();
        for (k, &(d, u)) in rungs.iter().enumerate() {
            let (dv, uv) = (q.down[d], q.up[u]);
            steps.push(Step::Down(d));
            if dv.to != uv.from {
                steps.push(Step::Horizontal { floor: Floor::F, from: dv.to, to: uv.from });
            }
            steps.push(Step::Up(u));
            let next = if k + 1 < rungs.len() {
                Some(rungs[k + 1].0)
            } else if close {
                Some(rungs[0].0)
            } else {
                None
            };
            if let Some(nd) = next {
                let e = q.down[nd].from;
                if uv.to != e {
                    steps.push(Step::Horizontal { floor: Floor::E, from: uv.to, to: e });
                }
            }
        }
        let start = (Floor::E, q.down[rungs[0].0].from);
        let end = if close { start } else { (Floor::E, q.up[rungs[rungs.len() - 1].1].to) };
        BalancedPath { steps, start, end, revolution: Some(rungs.len()), rungs: rungs.to_vec() }
    }

    /// Vertex names along the path.
    pub fn vertices(&self, q: &NMQuiver) -> Vec<String> {
        let name = |(fl, v): (Floor, usize)| match fl {
            Floor::E => q.e[v].clone(),
            Floor::F => q.f[v].clone(),
        };
        let mut out = vec![name(self.start)];
        for s in &self.steps {
            let next = match *s {
                Step::Down(d) => (Floor::F, q.down[d].to),
                Step::Up(u) => (Floor::E, q.up[u].to),
                Step::Horizontal { floor, to, .. } => (floor, to),
            };
            out.push(name(next));
        }
        out
    }

    /// Arrow names written right to left, joined by `*`.
    pub fn label(&self, q: &NMQuiver) -> String {
        let name = |s: &Step| match *s {
            Step::Down(d) => format!("d{d}"),
            Step::Up(u) => format!("u{u}"),
            Step::Horizontal { floor, from, to } => match floor {
                Floor::E => format!("[{}>{}]", q.e[from], q.e[to]),
                Floor::F => format!("[{}>{}]", q.f[from], q.f[to]),
            },
        };
        self.steps.iter().rev().map(name).collect::<Vec<_>>().join("*")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerticalBalancedCycle {
    pub path: BalancedPath,
    /// Dimension of the tensor product of the Peirce blocks crossed by the cycle.
    pub v_gamma: usize,
}

/// Depth-first walk over rung sequences of length `m`; `close` also requires the wrap-around link.
fn walk(q: &NMQuiver, m: usize, close: bool, mut visit: impl FnMut(&[(usize, usize)]) -> Result<()>) -> Result<()> {
    if m == 0 {
        return Ok(());
    }
    let rungs = q.rungs();
    let mut stack: Vec<usize> = Vec::with_capacity(m);
    let mut seq: Vec<(usize, usize)> = Vec::with_capacity(m);
    // Iterative DFS over indices into `rungs`.
    let mut next = 0usize;
    loop {
        if next < rungs.len() {
            let r = rungs[next];
            let ok = match seq.last() {
                Some(&(_, u)) => q.link_weight(u, r.0) > 0,
                None => true,
            };
            if !ok {
                next += 1;
                continue;
            }
            seq.push(r);
            stack.push(next);
            if seq.len() == m {
                if !close || q.link_weight(r.1, seq[0].0) > 0 {
                    visit(&seq)?;
                }
                seq.pop();
                next = stack.pop().unwrap() + 1;
            } else {
                next = 0;
            }
        } else {
            match stack.pop() {
                Some(i) => {
                    seq.pop();
                    next = i + 1;
                }
                None => return Ok(()),
            }
        }
    }
}

/// `P^E_m`: balanced paths with revolution number `m` from the first down arrow to the last up arrow,
/// in lexicographic order of their rungs.
pub fn enumerate_balanced_paths(q: &NMQuiver, m: usize) -> Result<Vec<BalancedPath>> {
    let mut out = Vec::new();
    walk(q, m, false, |seq| {
        if out.len() >= PATH_CAP {
            return Err(Error::DimensionCapExceeded { degree: m, count: out.len() + 1, cap: PATH_CAP });
        }
        out.push(BalancedPath::from_rungs(q, seq, false));
        Ok(())
    })?;
    Ok(out)
}

/// `V_γ` for a rung sequence read cyclically.
pub fn v_gamma_of(q: &NMQuiver, rungs: &[(usize, usize)]) -> usize {
    let m = rungs.len();
    (0..m)
        .map(|k| {
            let (d, u) = rungs[k];
            q.rung_weight(d, u) * q.link_weight(u, rungs[(k + 1) % m].0)
        })
        .product()
}

pub fn v_gamma(q: &NMQuiver, gamma: &VerticalBalancedCycle) -> usize {
    v_gamma_of(q, &gamma.path.rungs)
}

/// `CV^E_m`: rooted cycles at an `E`-vertex starting with a down arrow.
pub fn enumerate_cv(q: &NMQuiver, m: usize) -> Result<Vec<VerticalBalancedCycle>> {
    let mut out = Vec::new();
    walk(q, m, true, |seq| {
        if out.len() >= PATH_CAP {
            return Err(Error::DimensionCapExceeded { degree: m, count: out.len() + 1, cap: PATH_CAP });
        }
        out.push(VerticalBalancedCycle { path: BalancedPath::from_rungs(q, seq, true), v_gamma: v_gamma_of(q, seq) });
        Ok(())
    })?;
    Ok(out)
}

/// `Σ_{γ ∈ CV^E_m} V_γ`.
pub fn h0_via_cycles(q: &NMQuiver, m: usize) -> Result<usize> {
    let mut total = 0usize;
    walk(q, m, true, |seq| {
        total += v_gamma_of(q, seq);
        Ok(())
    })?;
    Ok(total)
}

/// `dim (N ⊗_B M)^{⊗_A m}` summed over `P^E_m`, with the outer factors `A f` and `e A`.
pub fn tensor_power_dim_via_paths(q: &NMQuiver, m: usize) -> Result<usize> {
    let n = q.a_blocks.len();
    let col = |x: usize| (0..n).map(|y| q.a_blocks[y][x]).sum::<usize>();
    let row = |y: usize| q.a_blocks[y].iter().sum::<usize>();
    let mut total = 0usize;
    walk(q, m, false, |seq| {
        let mut w = col(q.up[seq[m - 1].1].to) * row(q.down[seq[0].0].from);
        for k in 0..m {
            let (d, u) = seq[k];
            w *= q.rung_weight(d, u);
            if k + 1 < m {
                w *= q.link_weight(u, seq[k + 1].0);
            }
        }
        total += w;
        Ok(())
    })?;
    Ok(total)
}
