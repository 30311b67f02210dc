//! Null-square algebras `Λ = [[A, N], [M, B]]` with `MN = 0 = NM`.

mod k1;
mod presentation;
mod qres;
mod smodule;

use std::path::Path as FsPath;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{compute_basis, BasedAlgebra, BasisElem, Presentation, PresentationFile};
use crate::bimodule::{same_algebra, AlgRef, Bimodule, ProjBimoduleSpec, Summand};
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::Scalar;

pub use k1::{k1_complex, K1Complex};
pub use presentation::{build_presentation, check_iso, check_presentation_model_iso, GabrielPresentation, IsoReport};
pub use qres::{nm_nilpotency, q_resolution, q_resolution_from, QResolution, QSummand};
pub use smodule::{smodule_convert, smodule_to_module, SModule};

/// Null-square projective data: `M = ⊕ m (B g ⊗ e A)`, `N = ⊕ n (A f ⊗ h B)`.
///
/// In `m`, `left` is the B-vertex `g` and `right` the A-vertex `e`; in `n`, `left` is the
/// A-vertex `f` and `right` the B-vertex `h`.
#[derive(Debug, Clone)]
pub struct NullSquareSpec<S> {
    pub name: String,
    pub a: Presentation<S>,
    pub b: Presentation<S>,
    pub m: ProjBimoduleSpec,
    pub n: ProjBimoduleSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    File(String),
    Inline(PresentationFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MSummandFile {
    pub g: String,
    pub e: String,
    #[serde(default = "one")]
    pub mult: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NSummandFile {
    pub f: String,
    pub h: String,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NullSquareFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(rename = "A")]
    pub a: AlgebraSource,
    #[serde(rename = "B")]
    pub b: AlgebraSource,
    #[serde(rename = "M", default)]
    pub m: Vec<MSummandFile>,
    #[serde(rename = "N", default)]
    pub n: Vec<NSummandFile>,
}

fn load_algebra<S: Scalar>(src: &AlgebraSource, base: Option<&FsPath>) -> Result<Presentation<S>> {
    match src {
        AlgebraSource::Inline(f) => f.to_presentation(),
        AlgebraSource::File(p) => {
            let path = match base {
                Some(b) => b.join(p),
                None => p.into(),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
            crate::algebra::parse_presentation(&text)
        }
    }
}

impl NullSquareFile {
    /// `base` resolves relative algebra file names.
    pub fn to_spec<S: Scalar>(&self, base: Option<&FsPath>) -> Result<NullSquareSpec<S>> {
        let a: Presentation<S> = load_algebra(&self.a, base)?;
        let b: Presentation<S> = load_algebra(&self.b, base)?;
        let m = self
            .m
            .iter()
            .map(|s| Ok(Summand { left: b.quiver.vertex(&s.g)?, right: a.quiver.vertex(&s.e)?, mult: s.mult }))
            .collect::<Result<Vec<_>>>()?;
        let n = self
            .n
            .iter()
            .map(|s| Ok(Summand { left: a.quiver.vertex(&s.f)?, right: b.quiver.vertex(&s.h)?, mult: s.mult }))
            .collect::<Result<Vec<_>>>()?;
        Ok(NullSquareSpec { name: self.name.clone().unwrap_or_else(|| "nullsquare".into()), a, b, m, n })
    }

    pub fn from_spec<S: Scalar>(spec: &NullSquareSpec<S>) -> Self {
        let (qa, qb) = (&spec.a.quiver, &spec.b.quiver);
        NullSquareFile {
            name: Some(spec.name.clone()),
            a: AlgebraSource::Inline(PresentationFile::from_presentation(&spec.a)),
            b: AlgebraSource::Inline(PresentationFile::from_presentation(&spec.b)),
            m: spec
                .m
                .iter()
                .map(|s| MSummandFile { g: qb.vertices[s.left].clone(), e: qa.vertices[s.right].clone(), mult: s.mult })
                .collect(),
            n: spec
                .n
                .iter()
                .map(|s| NSummandFile { f: qa.vertices[s.left].clone(), h: qb.vertices[s.right].clone(), mult: s.mult })
                .collect(),
        }
    }
}

pub fn parse_nullsquare<S: Scalar>(json: &str, base: Option<&FsPath>) -> Result<NullSquareSpec<S>> {
    let f: NullSquareFile = serde_json::from_str(json).map_err(|e| Error::Invalid(e.to_string()))?;
    f.to_spec(base)
}

/// Which block of `Λ` a basis element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    A(usize),
    B(usize),
    M(usize),
    N(usize),
}

/// The matrix model `Λ = C ⊕ I` with `C = A × B` and `I = M ⊕ N`.
///
/// Basis order of `Λ`: A, B, M, N. Vertices: those of A, then those of B.
#[derive(Debug, Clone)]
pub struct NullSquare<S> {
    pub name: String,
    pub a: AlgRef<S>,
    pub b: AlgRef<S>,
    /// B–A bimodule.
    pub m: Arc<Bimodule<S>>,
    /// A–B bimodule.
    pub n: Arc<Bimodule<S>>,
    pub lambda: AlgRef<S>,
    /// `A × B`, whose basis is the first `dim A + dim B` basis elements of `Λ`.
    pub c: AlgRef<S>,
}

impl<S: Scalar> NullSquare<S> {
    /// Square algebra with arbitrary bimodules `M` (B–A) and `N` (A–B), products `MN` and `NM` set to zero.
    pub fn from_bimodules(name: impl Into<String>, a: AlgRef<S>, b: AlgRef<S>, m: Bimodule<S>, n: Bimodule<S>) -> Result<Self> {
        if !same_algebra(&m.left, &b) || !same_algebra(&m.right, &a) {
            return Err(Error::AlgebraMismatch("M must be a B-A bimodule".into()));
        }
        if !same_algebra(&n.left, &a) || !same_algebra(&n.right, &b) {
            return Err(Error::AlgebraMismatch("N must be an A-B bimodule".into()));
        }
        let name = name.into();
        let mut vertices = a.vertices.clone();
        for v in &b.vertices {
            if vertices.contains(v) {
                return Err(Error::Invalid(format!("vertex `{v}` occurs in both A and B")));
            }
            vertices.push(v.clone());
        }
        let nv = a.num_vertices();
        let (da, db, dm) = (a.dim(), b.dim(), m.dim());
        let mut basis: Vec<BasisElem> = a.basis.iter().map(|e| BasisElem { path: None, ..e.clone() }).collect();
        basis.extend(b.basis.iter().map(|e| BasisElem {
            label: e.label.clone(),
            source: e.source + nv,
            target: e.target + nv,
            path: None,
        }));
        basis.extend(m.tags.iter().zip(&m.labels).map(|(&(g, e), l)| BasisElem {
            label: format!("m:{l}"),
            source: e,
            target: g + nv,
            path: None,
        }));
        basis.extend(n.tags.iter().zip(&n.labels).map(|(&(f, h), l)| BasisElem {
            label: format!("n:{l}"),
            source: h + nv,
            target: f,
            path: None,
        }));
        let mut idem: Vec<usize> = a.idempotents().to_vec();
        idem.extend(b.idempotents().iter().map(|e| e + da));
        let part = |i: usize| part_of(i, da, db, dm);
        let shift = |v: &SparseVec<S>, s: usize| -> SparseVec<S> { v.iter().map(|(k, x)| (k + s, x.clone())).collect() };
        let (om, on) = (da + db, da + db + dm);
        let lambda = BasedAlgebra::new(name.clone(), vertices, basis, idem, |i, j| match (part(i), part(j)) {
            (Part::A(x), Part::A(y)) => a.mul_basis(x, y).clone(),
            (Part::B(x), Part::B(y)) => shift(b.mul_basis(x, y), da),
            (Part::B(x), Part::M(y)) => shift(m.left_basis(x, y), om),
            (Part::M(x), Part::A(y)) => shift(m.right_basis(x, y), om),
            (Part::A(x), Part::N(y)) => shift(n.left_basis(x, y), on),
            (Part::N(x), Part::B(y)) => shift(n.right_basis(x, y), on),
            _ => Vec::new(),
        })?;
        let c = a.product(&b)?;
        Ok(NullSquare { name, a, b, m: Arc::new(m), n: Arc::new(n), lambda: Arc::new(lambda), c: Arc::new(c) })
    }

    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.a.dim(), self.b.dim(), self.m.dim(), self.n.dim())
    }

    pub fn part(&self, i: usize) -> Part {
        let (da, db, dm, _) = self.dims();
        part_of(i, da, db, dm)
    }

    pub fn dim_c(&self) -> usize {
        self.a.dim() + self.b.dim()
    }

    /// Index in `Λ` of the B-vertex `v`.
    pub fn b_vertex(&self, v: usize) -> usize {
        self.a.num_vertices() + v
    }

    pub fn is_a_vertex(&self, v: usize) -> bool {
        v < self.a.num_vertices()
    }

    /// `I = M ⊕ N` as a C-bimodule; its basis is the tail of the basis of `Λ`.
    pub fn i_bimodule(&self) -> Bimodule<S> {
        let (lam, dc) = (&self.lambda, self.dim_c());
        let tags = (dc..lam.dim()).map(|i| (lam.basis[i].target, lam.basis[i].source)).collect();
        let labels = (dc..lam.dim()).map(|i| lam.basis[i].label.clone()).collect();
        let back = |v: &SparseVec<S>| -> SparseVec<S> { v.iter().map(|(k, x)| (k - dc, x.clone())).collect() };
        Bimodule::new(
            self.c.clone(),
            self.c.clone(),
            tags,
            labels,
            |a, z| back(lam.mul_basis(a, z + dc)),
            |z, b| back(lam.mul_basis(z + dc, b)),
        )
    }

    /// `M` and `N` as C-bimodules (actions extended by zero).
    pub fn m_over_c(&self) -> Bimodule<S> {
        let (da, nv) = (self.a.dim(), self.a.num_vertices());
        self.m.change_rings(
            self.c.clone(),
            |i| i.checked_sub(da),
            |v| v + nv,
            self.c.clone(),
            |i| (i < da).then_some(i),
            |v| v,
        )
    }

    pub fn n_over_c(&self) -> Bimodule<S> {
        let (da, nv) = (self.a.dim(), self.a.num_vertices());
        self.n.change_rings(
            self.c.clone(),
            |i| (i < da).then_some(i),
            |v| v,
            self.c.clone(),
            |i| i.checked_sub(da),
            |v| v + nv,
        )
    }

    /// `Λ` as a Λ–C bimodule.
    pub fn lambda_c_right(&self) -> Bimodule<S> {
        let dc = self.dim_c();
        Bimodule::regular(self.lambda.clone()).change_rings(
            self.lambda.clone(),
            Some,
            |v| v,
            self.c.clone(),
            |i| (i < dc).then_some(i),
            |v| v,
        )
    }

    /// `Λ` as a C–Λ bimodule.
    pub fn lambda_c_left(&self) -> Bimodule<S> {
        let dc = self.dim_c();
        Bimodule::regular(self.lambda.clone()).change_rings(
            self.c.clone(),
            |i| (i < dc).then_some(i),
            |v| v,
            self.lambda.clone(),
            Some,
            |v| v,
        )
    }

    /// `Λ·1_A` as a Λ–A bimodule.
    pub fn lambda_e(&self) -> Bimodule<S> {
        let all: Vec<usize> = (0..self.lambda.num_vertices()).collect();
        let xs: Vec<usize> = (0..self.a.num_vertices()).collect();
        let id: Vec<usize> = (0..self.lambda.dim()).collect();
        let incl: Vec<usize> = (0..self.a.dim()).collect();
        Bimodule::from_algebra_block(&self.lambda, &all, &xs, self.lambda.clone(), &id, self.a.clone(), &incl)
    }

    /// `Λ·1_B` as a Λ–B bimodule.
    pub fn lambda_f(&self) -> Bimodule<S> {
        let all: Vec<usize> = (0..self.lambda.num_vertices()).collect();
        let xs: Vec<usize> = (self.a.num_vertices()..self.lambda.num_vertices()).collect();
        let id: Vec<usize> = (0..self.lambda.dim()).collect();
        let da = self.a.dim();
        let incl: Vec<usize> = (da..da + self.b.dim()).collect();
        Bimodule::from_algebra_block(&self.lambda, &all, &xs, self.lambda.clone(), &id, self.b.clone(), &incl)
    }
}

fn part_of(i: usize, da: usize, db: usize, dm: usize) -> Part {
    if i < da {
        Part::A(i)
    } else if i < da + db {
        Part::B(i - da)
    } else if i < da + db + dm {
        Part::M(i - da - db)
    } else {
        Part::N(i - da - db - dm)
    }
}

/// Bases of `A` and `B` from a spec.
pub fn spec_algebras<S: Scalar>(spec: &NullSquareSpec<S>) -> Result<(AlgRef<S>, AlgRef<S>)> {
    Ok((Arc::new(compute_basis(&spec.a)?), Arc::new(compute_basis(&spec.b)?)))
}

/// The matrix model of a null-square projective spec.
pub fn matrix_model<S: Scalar>(spec: &NullSquareSpec<S>) -> Result<NullSquare<S>> {
    let (a, b) = spec_algebras(spec)?;
    let m = Bimodule::projective(b.clone(), a.clone(), &spec.m)?;
    let n = Bimodule::projective(a.clone(), b.clone(), &spec.n)?;
    NullSquare::from_bimodules(spec.name.clone(), a, b, m, n)
}
