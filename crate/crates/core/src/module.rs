//! Left modules, projective covers, minimal resolutions and global dimension.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::bimodule::{AlgRef, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Echelon, PivotRule, Quotient, SparseVec};
use crate::linalg::{Matrix, Scalar, Solver, SubspaceBasis};

pub const DEFAULT_CAP: usize = 24;

/// Left module with a vertex-homogeneous basis.
///
/// Idempotents act through the tags; radical generators act through stored matrices.
#[derive(Debug, Clone)]
pub struct LeftModule<S> {
    pub alg: AlgRef<S>,
    pub tags: Vec<usize>,
    gens: Vec<Matrix<S>>,
    full: OnceLock<Vec<Matrix<S>>>,
}

impl<S: Scalar> LeftModule<S> {
    /// `act(b, x)` returns `b_b · x_x` for every radical generator `b`.
    pub fn new(alg: AlgRef<S>, tags: Vec<usize>, mut act: impl FnMut(usize, usize) -> SparseVec<S>) -> Result<Self> {
        let n = tags.len();
        let gens = alg
            .generators()
            .iter()
            .map(|&g| {
                let src = alg.basis[g].source;
                let cols = (0..n).map(|x| if tags[x] == src { act(g, x) } else { Vec::new() }).collect();
                Matrix::from_columns(n, cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LeftModule { alg, tags, gens, full: OnceLock::new() })
    }

    pub fn zero(alg: AlgRef<S>) -> Self {
        LeftModule::new(alg, Vec::new(), |_, _| Vec::new()).expect("zero module")
    }

    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    pub fn is_zero(&self) -> bool {
        self.tags.is_empty()
    }

    /// Dimension of `e_v X` for every vertex `v`.
    pub fn dim_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.alg.num_vertices()];
        for &t in &self.tags {
            d[t] += 1;
        }
        d
    }

    fn idempotent_matrix(&self, v: usize) -> Matrix<S> {
        let n = self.dim();
        let cols = (0..n).map(|x| if self.tags[x] == v { sparse::unit(x) } else { Vec::new() }).collect();
        Matrix::from_columns(n, cols).expect("diagonal matrix")
    }

    /// Action matrices of all basis elements of the algebra, derived from the generators.
    pub fn actions(&self) -> &[Matrix<S>] {
        self.full.get_or_init(|| {
            let alg = &self.alg;
            let nv = alg.num_vertices();
            let gen_mats: Vec<Matrix<S>> = (0..nv).map(|v| self.idempotent_matrix(v)).chain(self.gens.iter().cloned()).collect();
            (0..alg.dim())
                .map(|b| {
                    let expr = alg.word_expression(b).expect("algebra generated by idempotents and arrows");
                    let mut total = Matrix::zeros(self.dim(), self.dim());
                    for (c, word) in expr {
                        let mut m = gen_mats[word[0]].clone();
                        for &k in &word[1..] {
                            m = m.mul(&gen_mats[k]).expect("square matrices");
                        }
                        total = total.add(&m.scale(c)).expect("square matrices");
                    }
                    total
                })
                .collect()
        })
    }

    pub fn act(&self, b: usize, x: &SparseVec<S>) -> SparseVec<S> {
        self.actions()[b].apply(x)
    }

    /// Action of an algebra element given in coordinates.
    pub fn act_vec(&self, a: &SparseVec<S>, x: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = crate::linalg::Accum::new();
        for (b, c) in a {
            acc.add_scaled(&self.act(*b, x), c);
        }
        acc.finish()
    }

    /// Checks `act(b_i) act(b_j) = Σ c^k_ij act(b_k)` and that idempotents sum to the identity.
    pub fn check(&self) -> Result<()> {
        let acts = self.actions();
        let alg = &self.alg;
        let mut sum = Matrix::zeros(self.dim(), self.dim());
        for &e in alg.idempotents() {
            sum = sum.add(&acts[e])?;
        }
        if sum != Matrix::identity(self.dim()) {
            return Err(Error::Invalid("idempotents do not sum to the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = acts[i].mul(&acts[j])?;
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                for (k, c) in alg.mul_basis(i, j) {
                    rhs = rhs.add(&acts[*k].scale(c))?;
                }
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "action does not respect {}*{}",
                        alg.basis[i].label, alg.basis[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indecomposable projective `Λ e_v`.
    pub fn projective(alg: AlgRef<S>, v: usize) -> Self {
        let basis: Vec<usize> = (0..alg.dim()).filter(|&b| alg.basis[b].source == v).collect();
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        let tags = basis.iter().map(|&b| alg.basis[b].target).collect();
        let a2 = alg.clone();
        LeftModule::new(alg, tags, |g, x| a2.mul_basis(g, basis[x]).iter().map(|(k, c)| (pos[k], c.clone())).collect())
            .expect("projective module")
    }

    pub fn simple(alg: AlgRef<S>, v: usize) -> Self {
        LeftModule::new(alg, vec![v], |_, _| Vec::new()).expect("simple module")
    }

    /// Left module underlying a bimodule whose right algebra is ignored.
    pub fn from_bimodule(bm: &Bimodule<S>) -> Result<Self> {
        let tags = bm.tags.iter().map(|t| t.0).collect();
        LeftModule::new(bm.left.clone(), tags, |g, x| bm.left_basis(g, x).clone())
    }

    /// The module as a bimodule over `(alg, k)`.
    pub fn to_bimodule(&self, field: AlgRef<S>) -> Bimodule<S> {
        let acts = self.actions();
        let labels = (0..self.dim()).map(|i| format!("x{i}")).collect();
        Bimodule::new(
            self.alg.clone(),
            field,
            self.tags.iter().map(|&t| (t, 0)).collect(),
            labels,
            |a, z| acts[a].column(z).clone(),
            |z, _| sparse::unit(z),
        )
    }

    /// Span of `g · x` over radical generators `g` and basis vectors `x`.
    pub fn radical(&self) -> Echelon<S> {
        let mut ech = Echelon::new(self.dim(), PivotRule::MinColumn);
        for m in &self.gens {
            for c in m.columns() {
                if !c.is_empty() {
                    ech.insert(c.clone());
                }
            }
        }
        ech
    }

    /// Multiplicity of each simple in the top `X / rad X`.
    pub fn top(&self) -> Vec<usize> {
        let quot = Quotient::new(self.radical());
        let mut d = vec![0; self.alg.num_vertices()];
        for &r in quot.representatives() {
            d[self.tags[r]] += 1;
        }
        d
    }

    /// Submodule spanned by `vecs`, which must be stable under the action.
    pub fn submodule(&self, vecs: &[SparseVec<S>]) -> Result<(LeftModule<S>, Matrix<S>)> {
        let nv = self.alg.num_vertices();
        let mut echs: Vec<Echelon<S>> = (0..nv).map(|_| Echelon::new(self.dim(), PivotRule::MinColumn)).collect();
        for v in vecs {
            let mut parts: Vec<SparseVec<S>> = vec![Vec::new(); nv];
            for (i, x) in v {
                parts[self.tags[*i]].push((*i, x.clone()));
            }
            for (t, p) in parts.into_iter().enumerate() {
                if !p.is_empty() {
                    echs[t].insert(p);
                }
            }
        }
        let mut basis = Vec::new();
        let mut tags = Vec::new();
        for (t, e) in echs.into_iter().enumerate() {
            let (_, rows) = e.into_sorted();
            for r in rows {
                basis.push(r);
                tags.push(t);
            }
        }
        let incl = Matrix::from_columns(self.dim(), basis)?;
        let solver = Solver::new(&incl);
        let mut failed = false;
        let sub = LeftModule::new(self.alg.clone(), tags, |g, x| {
            let img = self.act(g, incl.column(x));
            solver.solve(&img).unwrap_or_else(|| {
                failed = true;
                Vec::new()
            })
        })?;
        if failed {
            return Err(Error::Invalid("subspace is not a submodule".into()));
        }
        Ok((sub, incl))
    }

    /// Kernel of a module map `f: self -> target`, computed vertex by vertex.
    pub fn kernel(&self, f: &Matrix<S>) -> Result<(LeftModule<S>, Matrix<S>)> {
        let mut vecs = Vec::new();
        for v in 0..self.alg.num_vertices() {
            let cols: Vec<usize> = (0..self.dim()).filter(|&x| self.tags[x] == v).collect();
            if cols.is_empty() {
                continue;
            }
            let sub = Matrix::from_columns(f.rows(), cols.iter().map(|&c| f.column(c).clone()).collect())?;
            for k in sub.kernel().vectors {
                vecs.push(k.iter().map(|(i, x)| (cols[*i], x.clone())).collect());
            }
        }
        self.submodule(&vecs)
    }

    /// Projective cover `P -> X`; `P` is a direct sum of `Λ e_v` in the order of the returned vertices.
    pub fn projective_cover(&self) -> Result<ProjectiveCover<S>> {
        let quot = Quotient::new(self.radical());
        let tops: Vec<usize> = quot.representatives().to_vec();
        let alg = &self.alg;
        let mut tags = Vec::new();
        let mut owner = Vec::new();
        let mut cols = Vec::new();
        let mut vertices = Vec::new();
        for &x in &tops {
            let v = self.tags[x];
            vertices.push(v);
            for b in 0..alg.dim() {
                if alg.basis[b].source == v {
                    owner.push((vertices.len() - 1, b));
                    tags.push(alg.basis[b].target);
                    cols.push(self.act(b, &sparse::unit(x)));
                }
            }
        }
        let pos: HashMap<(usize, usize), usize> = owner.iter().enumerate().map(|(k, o)| (*o, k)).collect();
        let p = LeftModule::new(alg.clone(), tags, |g, k| {
            let (c, b) = owner[k];
            alg.mul_basis(g, b).iter().map(|(j, x)| (pos[&(c, *j)], x.clone())).collect::<Vec<_>>().into_sorted()
        })?;
        let map = Matrix::from_columns(self.dim(), cols)?;
        if map.rank() != self.dim() {
            return Err(Error::NotBasic("projective cover is not surjective".into()));
        }
        Ok(ProjectiveCover { module: p, map, vertices, generators: tops })
    }

    /// `X` is projective iff its projective cover has the same dimension.
    pub fn is_projective(&self) -> bool {
        let top = self.top();
        let total: usize = top.iter().enumerate().map(|(v, m)| m * self.alg.projective_dim(v)).sum();
        total == self.dim()
    }

    /// Checks that `f: self -> target` commutes with the action.
    pub fn is_morphism(&self, target: &LeftModule<S>, f: &Matrix<S>) -> bool {
        let (a, b) = (self.actions(), target.actions());
        (0..self.alg.dim()).all(|i| f.mul(&a[i]).ok() == b[i].mul(f).ok())
    }
}

trait IntoSorted {
    fn into_sorted(self) -> Self;
}

impl<S> IntoSorted for Vec<(usize, S)> {
    fn into_sorted(mut self) -> Self {
        self.sort_unstable_by_key(|e| e.0);
        self
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveCover<S> {
    pub module: LeftModule<S>,
    /// Surjection onto the covered module.
    pub map: Matrix<S>,
    /// Vertex of each indecomposable summand.
    pub vertices: Vec<usize>,
    /// Basis vectors of the covered module lifting its top.
    pub generators: Vec<usize>,
}

pub fn simple_modules<S: Scalar>(alg: &AlgRef<S>) -> Vec<LeftModule<S>> {
    (0..alg.num_vertices()).map(|v| LeftModule::simple(alg.clone(), v)).collect()
}

/// The radical as the span of non-idempotent basis elements, checked to be a nilpotent ideal.
pub fn radical<S: Scalar>(alg: &BasedAlgebra<S>) -> Result<SubspaceBasis<S>> {
    let rad = alg.radical_basis();
    let is_rad = |v: &SparseVec<S>| v.iter().all(|(k, _)| !alg.is_idempotent(*k));
    for &r in &rad {
        for b in 0..alg.dim() {
            if !is_rad(alg.mul_basis(r, b)) || !is_rad(alg.mul_basis(b, r)) {
                return Err(Error::NotBasic(format!("{} does not generate a radical ideal", alg.basis[r].label)));
            }
        }
    }
    let mut power: Vec<SparseVec<S>> = rad.iter().map(|&r| sparse::unit(r)).collect();
    for _ in 0..=alg.dim() {
        if power.is_empty() {
            return Ok(SubspaceBasis::from_vectors(alg.dim(), rad.iter().map(|&r| sparse::unit(r))));
        }
        let mut ech = Echelon::new(alg.dim(), PivotRule::MinColumn);
        for p in &power {
            for &r in &rad {
                let v = alg.multiply(p, &sparse::unit(r));
                if !v.is_empty() {
                    ech.insert(v);
                }
            }
        }
        power = ech.rows().to_vec();
    }
    Err(Error::NotBasic("radical is not nilpotent".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Length {
    Finite { length: usize },
    Unknown { cap: usize },
}

impl Length {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Length::Finite { length } => Some(*length),
            Length::Unknown { .. } => None,
        }
    }
}

/// Minimal projective resolution `... -> P_1 -> P_0 -> X`.
#[derive(Debug, Clone)]
pub struct ResolutionReport<S> {
    pub label: String,
    pub terms: Vec<LeftModule<S>>,
    /// Vertex of each indecomposable summand of each term.
    pub multiplicities: Vec<Vec<usize>>,
    pub augmentation: Matrix<S>,
    /// `differentials[n]` maps `P_{n+1}` to `P_n`.
    pub differentials: Vec<Matrix<S>>,
    pub length: Length,
    /// Some kernel repeated the dimension vector and covering pattern of an earlier one.
    pub periodic: bool,
    pub target_dim: usize,
}

impl<S: Scalar> ResolutionReport<S> {
    /// Checks `d∘d = 0`, surjectivity of the augmentation and exactness at every computed term.
    pub fn verify(&self) -> Result<()> {
        let aug_rank = self.augmentation.rank();
        if aug_rank != self.target_dim {
            return Err(Error::IdentityFailure { degree: 0, detail: "augmentation is not onto".into() });
        }
        let mut prev = &self.augmentation;
        for (n, d) in self.differentials.iter().enumerate() {
            if !prev.mul(d)?.is_zero() {
                return Err(Error::NotAComplex { context: format!("resolution degree {}", n + 1) });
            }
            let ker = prev.cols() - prev.rank();
            if ker != d.rank() {
                return Err(Error::IdentityFailure { degree: n, detail: format!("kernel {} vs image {}", ker, d.rank()) });
            }
            prev = d;
        }
        if let Length::Finite { .. } = self.length {
            if prev.rank() != prev.cols() {
                return Err(Error::IdentityFailure {
                    degree: self.differentials.len(),
                    detail: "last differential is not injective".into(),
                });
            }
        }
        Ok(())
    }

    /// Minimality: every differential lands in the radical of its target.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().enumerate().all(|(n, d)| {
            let rad = self.terms[n].radical();
            d.columns().iter().all(|c| rad.contains(c))
        })
    }
}

pub fn minimal_resolution<S: Scalar>(x: &LeftModule<S>, cap: usize, label: &str) -> Result<ResolutionReport<S>> {
    let mut terms = Vec::new();
    let mut mults = Vec::new();
    let mut diffs = Vec::new();
    let mut seen: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut periodic = false;
    let cover = x.projective_cover()?;
    let augmentation = cover.map.clone();
    let mut current = cover;
    let mut step = 0;
    let length = loop {
        let (kernel, incl) = current.module.kernel(&current.map)?;
        terms.push(current.module.clone());
        mults.push(current.vertices.clone());
        if kernel.is_zero() {
            break Length::Finite { length: step };
        }
        if step >= cap {
            break Length::Unknown { cap };
        }
        let mut pattern = current.vertices.clone();
        pattern.sort_unstable();
        let key = (kernel.dim_vector(), pattern);
        if seen.contains(&key) {
            periodic = true;
        }
        seen.push(key);
        let next = kernel.projective_cover()?;
        diffs.push(incl.mul(&next.map)?);
        current = next;
        step += 1;
    };
    Ok(ResolutionReport {
        label: label.to_string(),
        terms,
        multiplicities: mults,
        augmentation,
        differentials: diffs,
        length,
        periodic,
        target_dim: x.dim(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GlobalDimension {
    pub per_simple: Vec<(String, Length, bool)>,
    pub value: Length,
}

pub fn global_dimension<S: Scalar>(alg: &AlgRef<S>, cap: usize) -> Result<GlobalDimension> {
    let reports: Vec<Result<(Length, bool)>> = (0..alg.num_vertices())
        .into_par_iter()
        .map(|v| {
            let s = LeftModule::simple(alg.clone(), v);
            let r = minimal_resolution(&s, cap, &alg.vertices[v])?;
            Ok((r.length, r.periodic))
        })
        .collect();
    let mut per_simple = Vec::new();
    let mut value = Length::Finite { length: 0 };
    for (v, r) in reports.into_iter().enumerate() {
        let (len, periodic) = r?;
        per_simple.push((alg.vertices[v].clone(), len, periodic));
        value = match (value, len) {
            (Length::Finite { length: a }, Length::Finite { length: b }) => Length::Finite { length: a.max(b) },
            _ => Length::Unknown { cap },
        };
    }
    Ok(GlobalDimension { per_simple, value })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Smoothness {
    Smooth { global_dimension: usize },
    NotKnownWithinCap { cap: usize, periodic_evidence: bool },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth { .. })
    }
}

pub fn is_smooth<S: Scalar>(alg: &AlgRef<S>, cap: usize) -> Result<Smoothness> {
    let g = global_dimension(alg, cap)?;
    Ok(match g.value {
        Length::Finite { length } => Smoothness::Smooth { global_dimension: length },
        Length::Unknown { cap } => {
            Smoothness::NotKnownWithinCap { cap, periodic_evidence: g.per_simple.iter().any(|s| s.2) }
        }
    })
}

/// Convenience wrapper for callers holding a plain algebra.
pub fn shared<S: Scalar>(alg: BasedAlgebra<S>) -> AlgRef<S> {
    Arc::new(alg)
}
