//! Bimodules with idempotent-tagged bases, tensor products and H_0.

mod h0;
mod tensor;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Accum, Echelon, PivotRule, SparseVec};
use crate::linalg::{Matrix, Scalar, Solver};

pub use h0::{h0, H0Space};
pub use tensor::{Tensor, TensorChain};

pub type AlgRef<S> = Arc<BasedAlgebra<S>>;

/// True when both references describe the same algebra.
pub fn same_algebra<S: Scalar>(a: &BasedAlgebra<S>, b: &BasedAlgebra<S>) -> bool {
    if std::ptr::eq(a, b) {
        return true;
    }
    a.dim() == b.dim()
        && a.vertices == b.vertices
        && a.basis == b.basis
        && a.idempotents() == b.idempotents()
        && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.mul_basis(i, j) == b.mul_basis(i, j)))
}

/// One summand family `mult * (X x ⊗ y Y)` of a projective bimodule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    /// Vertex of the left algebra.
    pub left: usize,
    /// Vertex of the right algebra.
    pub right: usize,
    pub mult: usize,
}

/// Multiplicities of a projective bimodule `⊕ mult (L l ⊗ r R)`.
pub type ProjBimoduleSpec = Vec<Summand>;

/// Finite-dimensional `L`-`R` bimodule.
#[derive(Debug, Clone)]
pub struct Bimodule<S> {
    pub left: AlgRef<S>,
    pub right: AlgRef<S>,
    /// `(left vertex, right vertex)` of each basis vector.
    pub tags: Vec<(usize, usize)>,
    pub labels: Vec<String>,
    left_act: Vec<Vec<SparseVec<S>>>,
    right_act: Vec<Vec<SparseVec<S>>>,
}

impl<S: Scalar> Bimodule<S> {
    /// `la(a, z)` is `b_a · z`, `ra(z, b)` is `z · b_b`; only tag-compatible pairs are queried.
    pub fn new(
        left: AlgRef<S>,
        right: AlgRef<S>,
        tags: Vec<(usize, usize)>,
        labels: Vec<String>,
        mut la: impl FnMut(usize, usize) -> SparseVec<S>,
        mut ra: impl FnMut(usize, usize) -> SparseVec<S>,
    ) -> Self {
        let n = tags.len();
        let mut left_act = vec![vec![Vec::new(); n]; left.dim()];
        for (a, row) in left_act.iter_mut().enumerate() {
            let src = left.basis[a].source;
            for (z, slot) in row.iter_mut().enumerate() {
                if tags[z].0 == src {
                    *slot = la(a, z);
                }
            }
        }
        let mut right_act = vec![vec![Vec::new(); n]; right.dim()];
        for (b, row) in right_act.iter_mut().enumerate() {
            let tgt = right.basis[b].target;
            for (z, slot) in row.iter_mut().enumerate() {
                if tags[z].1 == tgt {
                    *slot = ra(z, b);
                }
            }
        }
        Bimodule { left, right, tags, labels, left_act, right_act }
    }

    pub fn zero(left: AlgRef<S>, right: AlgRef<S>) -> Self {
        Bimodule::new(left, right, Vec::new(), Vec::new(), |_, _| Vec::new(), |_, _| Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    pub fn is_zero(&self) -> bool {
        self.tags.is_empty()
    }

    /// `b_a · z_z`.
    pub fn left_basis(&self, a: usize, z: usize) -> &SparseVec<S> {
        &self.left_act[a][z]
    }

    /// `z_z · b_b`.
    pub fn right_basis(&self, z: usize, b: usize) -> &SparseVec<S> {
        &self.right_act[b][z]
    }

    pub fn act_left(&self, a: &SparseVec<S>, z: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accum::new();
        for (i, x) in a {
            for (j, y) in z {
                let p = &self.left_act[*i][*j];
                if !p.is_empty() {
                    acc.add_scaled(p, &x.mul_ref(y));
                }
            }
        }
        acc.finish()
    }

    pub fn act_right(&self, z: &SparseVec<S>, b: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accum::new();
        for (j, y) in z {
            for (i, x) in b {
                let p = &self.right_act[*i][*j];
                if !p.is_empty() {
                    acc.add_scaled(p, &x.mul_ref(y));
                }
            }
        }
        acc.finish()
    }

    /// Matrix of left multiplication by the basis element `a`.
    pub fn left_matrix(&self, a: usize) -> Matrix<S> {
        Matrix::from_columns(self.dim(), self.left_act[a].clone()).expect("action matrix within cap")
    }

    /// The regular bimodule `Λ`.
    pub fn regular(alg: AlgRef<S>) -> Self {
        let tags = alg.basis.iter().map(|b| (b.target, b.source)).collect();
        let labels = alg.labels();
        let (a1, a2) = (alg.clone(), alg.clone());
        Bimodule::new(alg.clone(), alg, tags, labels, |a, z| a1.mul_basis(a, z).clone(), |z, b| a2.mul_basis(z, b).clone())
    }

    /// `Λ` restricted to the basis elements with target in `ys` and source in `xs`, as a `left`-`right`
    /// bimodule through basis inclusions `left_incl`, `right_incl` into `alg`.
    ///
    /// The caller must ensure the chosen span is stable under the restricted actions.
    pub fn from_algebra_block(
        alg: &BasedAlgebra<S>,
        ys: &[usize],
        xs: &[usize],
        left: AlgRef<S>,
        left_incl: &[usize],
        right: AlgRef<S>,
        right_incl: &[usize],
    ) -> Self {
        let keep = alg.block(ys, xs);
        let pos: std::collections::HashMap<usize, usize> = keep.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let lv = vertex_map(alg, &left, left_incl);
        let rv = vertex_map(alg, &right, right_incl);
        let tags = keep.iter().map(|&i| (lv[&alg.basis[i].target], rv[&alg.basis[i].source])).collect();
        let labels = keep.iter().map(|&i| alg.basis[i].label.clone()).collect();
        let remap = |v: &SparseVec<S>| -> SparseVec<S> { v.iter().map(|(k, x)| (pos[k], x.clone())).collect() };
        Bimodule::new(
            left,
            right,
            tags,
            labels,
            |a, z| remap(alg.mul_basis(left_incl[a], keep[z])),
            |z, b| remap(alg.mul_basis(keep[z], right_incl[b])),
        )
    }

    /// Projective bimodule `⊕ mult (L l ⊗ r R)` with basis `(copy, q ∈ L l, p ∈ r R)`.
    pub fn projective(left: AlgRef<S>, right: AlgRef<S>, spec: &[Summand]) -> Result<Self> {
        let mut tags = Vec::new();
        let mut labels = Vec::new();
        let mut parts: Vec<(usize, usize, usize)> = Vec::new(); // (summand block, q, p)
        let mut blocks = Vec::new();
        for s in spec {
            if s.left >= left.num_vertices() {
                return Err(Error::UnknownVertex(format!("left vertex {}", s.left)));
            }
            if s.right >= right.num_vertices() {
                return Err(Error::UnknownVertex(format!("right vertex {}", s.right)));
            }
            for c in 0..s.mult {
                let block = blocks.len();
                blocks.push((s.left, s.right));
                let qs: Vec<usize> = (0..left.dim()).filter(|&q| left.basis[q].source == s.left).collect();
                let ps: Vec<usize> = (0..right.dim()).filter(|&p| right.basis[p].target == s.right).collect();
                for &q in &qs {
                    for &p in &ps {
                        parts.push((block, q, p));
                        tags.push((left.basis[q].target, right.basis[p].source));
                        labels.push(format!(
                            "{}⊗{}#{}{}",
                            left.basis[q].label,
                            right.basis[p].label,
                            left.vertices[s.left],
                            if s.mult > 1 { format!(".{c}") } else { String::new() }
                        ));
                    }
                }
            }
        }
        let index: std::collections::HashMap<(usize, usize, usize), usize> =
            parts.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        let (l2, r2) = (left.clone(), right.clone());
        let parts2 = parts.clone();
        Ok(Bimodule::new(
            left,
            right,
            tags,
            labels,
            |a, z| {
                let (blk, q, p) = parts[z];
                l2.mul_basis(a, q).iter().map(|(k, x)| (index[&(blk, *k, p)], x.clone())).collect::<Vec<_>>().sorted()
            },
            |z, b| {
                let (blk, q, p) = parts2[z];
                r2.mul_basis(p, b).iter().map(|(k, x)| (index[&(blk, q, *k)], x.clone())).collect::<Vec<_>>().sorted()
            },
        ))
    }

    /// One-dimensional bimodule `S_l ⊗ S_r` on which radicals act by zero.
    pub fn simple(left: AlgRef<S>, right: AlgRef<S>, l: usize, r: usize) -> Self {
        let label = format!("{}|{}", left.vertices[l], right.vertices[r]);
        let (l2, r2) = (left.clone(), right.clone());
        Bimodule::new(
            left,
            right,
            vec![(l, r)],
            vec![label],
            |a, _| if l2.is_idempotent(a) { sparse::unit(0) } else { Vec::new() },
            |_, b| if r2.is_idempotent(b) { sparse::unit(0) } else { Vec::new() },
        )
    }

    /// Index of the generator `l ⊗ r` of every summand copy in [`Bimodule::projective`], in copy order.
    pub fn projective_generators(left: &BasedAlgebra<S>, right: &BasedAlgebra<S>, spec: &[Summand]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut start = 0;
        for s in spec {
            let qs: Vec<usize> = (0..left.dim()).filter(|&q| left.basis[q].source == s.left).collect();
            let ps: Vec<usize> = (0..right.dim()).filter(|&p| right.basis[p].target == s.right).collect();
            let iq = qs.iter().position(|&q| q == left.idempotent(s.left)).expect("idempotent in its projective");
            let ip = ps.iter().position(|&p| p == right.idempotent(s.right)).expect("idempotent in its projective");
            for _ in 0..s.mult {
                out.push(start + iq * ps.len() + ip);
                start += qs.len() * ps.len();
            }
        }
        out
    }

    /// The same space viewed over other algebras: a basis element `i` of the new left algebra acts
    /// as `left_map(i)` of the old one, or by zero when `None`; vertex tags are renamed accordingly.
    pub fn change_rings(
        &self,
        left: AlgRef<S>,
        left_map: impl Fn(usize) -> Option<usize>,
        left_vertex: impl Fn(usize) -> usize,
        right: AlgRef<S>,
        right_map: impl Fn(usize) -> Option<usize>,
        right_vertex: impl Fn(usize) -> usize,
    ) -> Self {
        let tags = self.tags.iter().map(|&(l, r)| (left_vertex(l), right_vertex(r))).collect();
        Bimodule::new(
            left,
            right,
            tags,
            self.labels.clone(),
            |a, z| left_map(a).map_or_else(Vec::new, |a0| self.left_act[a0][z].clone()),
            |z, b| right_map(b).map_or_else(Vec::new, |b0| self.right_act[b0][z].clone()),
        )
    }

    /// Direct sum; the basis of `parts[k]` follows those of earlier parts.
    pub fn direct_sum(parts: &[&Bimodule<S>]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        for p in parts {
            if !same_algebra(&p.left, &first.left) || !same_algebra(&p.right, &first.right) {
                return Err(Error::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
            }
        }
        let mut offsets = Vec::new();
        let mut tags = Vec::new();
        let mut labels = Vec::new();
        let mut owner = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            offsets.push(tags.len());
            for z in 0..p.dim() {
                owner.push((k, z));
            }
            tags.extend(p.tags.iter().copied());
            labels.extend(p.labels.iter().cloned());
        }
        let shift = |k: usize, v: &SparseVec<S>| -> SparseVec<S> { v.iter().map(|(i, x)| (i + offsets[k], x.clone())).collect() };
        Ok(Bimodule::new(
            first.left.clone(),
            first.right.clone(),
            tags,
            labels,
            |a, z| {
                let (k, z0) = owner[z];
                shift(k, &parts[k].left_act[a][z0])
            },
            |z, b| {
                let (k, z0) = owner[z];
                shift(k, &parts[k].right_act[b][z0])
            },
        ))
    }

    /// Smallest sub-bimodule containing `gens`, as an echelon basis.
    pub fn generated(&self, gens: &[SparseVec<S>]) -> Echelon<S> {
        let mut ech = Echelon::new(self.dim(), PivotRule::MinColumn);
        let mut queue: Vec<SparseVec<S>> = Vec::new();
        for g in gens {
            // Split into tag components so the span is spanned by homogeneous vectors.
            for comp in self.homogeneous_components(g) {
                if ech.insert(comp.clone()).is_some() {
                    queue.push(comp);
                }
            }
        }
        while let Some(v) = queue.pop() {
            for a in 0..self.left.dim() {
                let w = self.act_left(&sparse::unit(a), &v);
                if !w.is_empty() && ech.insert(w.clone()).is_some() {
                    queue.push(w);
                }
            }
            for b in 0..self.right.dim() {
                let w = self.act_right(&v, &sparse::unit(b));
                if !w.is_empty() && ech.insert(w.clone()).is_some() {
                    queue.push(w);
                }
            }
        }
        ech
    }

    fn homogeneous_components(&self, v: &SparseVec<S>) -> Vec<SparseVec<S>> {
        let mut by_tag: std::collections::BTreeMap<(usize, usize), SparseVec<S>> = Default::default();
        for (i, x) in v {
            by_tag.entry(self.tags[*i]).or_default().push((*i, x.clone()));
        }
        by_tag.into_values().collect()
    }

    /// Quotient by the sub-bimodule generated by `gens`, with the projection matrix.
    pub fn quotient(&self, gens: &[SparseVec<S>]) -> (Bimodule<S>, Matrix<S>) {
        let quot = crate::linalg::Quotient::new(self.generated(gens));
        let reps = quot.representatives().to_vec();
        let tags = reps.iter().map(|&i| self.tags[i]).collect();
        let labels = reps.iter().map(|&i| self.labels[i].clone()).collect();
        let module = Bimodule::new(
            self.left.clone(),
            self.right.clone(),
            tags,
            labels,
            |a, z| quot.project(self.left_act[a][reps[z]].clone()),
            |z, b| quot.project(self.right_act[b][reps[z]].clone()),
        );
        let proj = Matrix::from_columns(quot.dim(), (0..self.dim()).map(|c| quot.project_unit(c)).collect())
            .expect("projection within cap");
        (module, proj)
    }

    /// Checks the bimodule axioms on all basis elements.
    pub fn check(&self) -> Result<()> {
        let (l, r) = (&self.left, &self.right);
        let fail = |what: &str| Err(Error::Invalid(format!("bimodule axiom fails: {what}")));
        for z in 0..self.dim() {
            let zv = sparse::unit(z);
            if self.act_left(&l.unit(), &zv) != zv || self.act_right(&zv, &r.unit()) != zv {
                return fail("unit");
            }
            for a in 0..l.dim() {
                let az = &self.left_act[a][z];
                for a2 in 0..l.dim() {
                    let lhs = self.act_left(&sparse::unit(a2), az);
                    let rhs = self.act_left(l.mul_basis(a2, a), &zv);
                    if lhs != rhs {
                        return fail("left associativity");
                    }
                }
                for b in 0..r.dim() {
                    let lhs = self.act_right(az, &sparse::unit(b));
                    let rhs = self.act_left(&sparse::unit(a), &self.right_act[b][z]);
                    if lhs != rhs {
                        return fail("actions commute");
                    }
                }
            }
            for b in 0..r.dim() {
                let zb = &self.right_act[b][z];
                for b2 in 0..r.dim() {
                    let lhs = self.act_right(zb, &sparse::unit(b2));
                    let rhs = self.act_right(&zv, r.mul_basis(b, b2));
                    if lhs != rhs {
                        return fail("right associativity");
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that `f: self -> other` commutes with both actions.
    pub fn is_morphism(&self, other: &Bimodule<S>, f: &Matrix<S>) -> bool {
        for z in 0..self.dim() {
            let fz = f.column(z);
            for a in 0..self.left.dim() {
                if f.apply(&self.left_act[a][z]) != other.act_left(&sparse::unit(a), fz) {
                    return false;
                }
            }
            for b in 0..self.right.dim() {
                if f.apply(&self.right_act[b][z]) != other.act_right(fz, &sparse::unit(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Coordinates of a vector of `other` that lies in the image of `incl`.
    pub fn solve_in(incl: &Matrix<S>, v: &SparseVec<S>) -> Option<SparseVec<S>> {
        Solver::new(incl).solve(v)
    }
}

/// `(N ⊗_B M)^{⊗_A power}`; power 0 gives the regular bimodule `A`.
pub fn tensor_power_nm<S: Scalar>(n: &Bimodule<S>, m: &Bimodule<S>, power: usize) -> Result<Bimodule<S>> {
    if power == 0 {
        return Ok(Bimodule::regular(n.left.clone()));
    }
    let nm = Tensor::new(n, m)?.module;
    let mut out = nm.clone();
    for _ in 1..power {
        if out.is_zero() {
            break;
        }
        out = Tensor::new(&out, &nm)?.module;
    }
    Ok(out)
}

/// `I(n) = H_0(C, I^{⊗_C n})` for `n ≥ 1`, with the chain it is a quotient of.
pub fn i_space<S: Scalar>(i: &Arc<Bimodule<S>>, n: usize) -> Result<(TensorChain<S>, H0Space<S>)> {
    if n == 0 {
        return Err(Error::Invalid("I(0) is not a tensor power of I".into()));
    }
    let chain = TensorChain::new(vec![i.clone(); n])?;
    let h = h0(chain.module())?;
    Ok((chain, h))
}

fn vertex_map<S: Scalar>(
    alg: &BasedAlgebra<S>,
    sub: &BasedAlgebra<S>,
    incl: &[usize],
) -> std::collections::HashMap<usize, usize> {
    (0..sub.num_vertices()).map(|v| (alg.basis[incl[sub.idempotent(v)]].source, v)).collect()
}

trait Sorted {
    fn sorted(self) -> Self;
}

impl<S> Sorted for Vec<(usize, S)> {
    fn sorted(mut self) -> Self {
        self.sort_unstable_by_key(|e| e.0);
        self
    }
}
