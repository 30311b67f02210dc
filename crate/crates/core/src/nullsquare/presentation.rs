use std::collections::HashSet;

use serde::Serialize;

use super::{matrix_model, spec_algebras, NullSquare, NullSquareSpec};
use crate::algebra::{compute_basis, BasedAlgebra, Presentation, PresentationFile, Quiver, Relation};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, Scalar};

/// Arrow of `Q_Λ` coming from a summand copy of `M` (down) or `N` (up).
#[derive(Debug, Clone, Serialize)]
pub struct BridgeArrow {
    pub arrow: usize,
    /// Summand index in the spec.
    pub summand: usize,
    pub copy: usize,
}

#[derive(Debug, Clone)]
pub struct GabrielPresentation<S> {
    pub presentation: Presentation<S>,
    pub a_arrows: usize,
    pub b_arrows: usize,
    pub down: Vec<BridgeArrow>,
    pub up: Vec<BridgeArrow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub presentation: PresentationFile,
    pub down_arrows: Vec<String>,
    pub up_arrows: Vec<String>,
    pub relation_count: usize,
}

impl<S: Scalar> GabrielPresentation<S> {
    pub fn report(&self) -> PresentationReport {
        let q = &self.presentation.quiver;
        PresentationReport {
            presentation: PresentationFile::from_presentation(&self.presentation),
            down_arrows: self.down.iter().map(|d| q.arrows[d.arrow].name.clone()).collect(),
            up_arrows: self.up.iter().map(|d| q.arrows[d.arrow].name.clone()).collect(),
            relation_count: self.presentation.relations.len(),
        }
    }
}

fn fresh(taken: &mut HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

/// Paths of the basis of `alg` from `x` to `y`, in traversal order.
fn basis_paths<S: Scalar>(alg: &BasedAlgebra<S>, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
    alg.basis
        .iter()
        .filter(|b| b.source == x && b.target == y)
        .map(|b| b.path.clone().ok_or_else(|| Error::Invalid(format!("{} is not a path", b.label))))
        .collect()
}

pub fn build_presentation<S: Scalar>(spec: &NullSquareSpec<S>) -> Result<GabrielPresentation<S>> {
    let (a, b) = spec_algebras(spec)?;
    let (qa, qb) = (&spec.a.quiver, &spec.b.quiver);
    let nva = qa.vertices.len();
    let mut q = Quiver { vertices: qa.vertices.clone(), arrows: qa.arrows.clone() };
    q.vertices.extend(qb.vertices.iter().cloned());
    let na = qa.arrows.len();
    for arr in &qb.arrows {
        let mut arr = arr.clone();
        arr.from += nva;
        arr.to += nva;
        q.arrows.push(arr);
    }
    q.validate()?;
    let mut taken: HashSet<String> = q.vertices.iter().chain(q.arrows.iter().map(|x| &x.name)).cloned().collect();
    let mut down = Vec::new();
    for (k, s) in spec.m.iter().enumerate() {
        for c in 0..s.mult {
            let name = fresh(&mut taken, format!("u{}", down.len()));
            let arrow = q.arrows.len();
            q.arrows.push(crate::algebra::Arrow { name, from: s.right, to: s.left + nva });
            down.push(BridgeArrow { arrow, summand: k, copy: c });
        }
    }
    let mut up = Vec::new();
    for (k, s) in spec.n.iter().enumerate() {
        for c in 0..s.mult {
            let name = fresh(&mut taken, format!("v{}", up.len()));
            let arrow = q.arrows.len();
            q.arrows.push(crate::algebra::Arrow { name, from: s.right + nva, to: s.left });
            up.push(BridgeArrow { arrow, summand: k, copy: c });
        }
    }
    let mut relations: Vec<Relation<S>> = spec.a.relations.clone();
    relations.extend(spec.b.relations.iter().map(|r| Relation {
        terms: r.terms.iter().map(|(c, p)| (c.clone(), p.iter().map(|x| x + na).collect())).collect(),
    }));
    for d in &down {
        let (g, e) = (spec.m[d.summand].left, spec.m[d.summand].right);
        for u in &up {
            let (f, h) = (spec.n[u.summand].left, spec.n[u.summand].right);
            // v (h P_B g) u: traverse u, a B-path g → h, then v.
            for gamma in basis_paths(&b, g, h)? {
                let mut p = vec![d.arrow];
                p.extend(gamma.iter().map(|x| x + na));
                p.push(u.arrow);
                relations.push(Relation { terms: vec![(S::one(), p)] });
            }
            // u (e P_A f) v: traverse v, an A-path f → e, then u.
            for gamma in basis_paths(&a, f, e)? {
                let mut p = vec![u.arrow];
                p.extend(gamma);
                p.push(d.arrow);
                relations.push(Relation { terms: vec![(S::one(), p)] });
            }
        }
    }
    let cap = spec.a.max_len_cap.max(spec.b.max_len_cap);
    let presentation = Presentation::new(spec.name.clone(), q, relations).with_cap(cap);
    Ok(GabrielPresentation { presentation, a_arrows: na, b_arrows: qb.arrows.len(), down, up })
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub presentation_dim: usize,
    pub model_dim: usize,
    pub dims: (usize, usize, usize, usize),
}

/// Checks that the canonical generator correspondence is an isomorphism `kQ_Λ/<R> → Λ`.
pub fn check_iso<S: Scalar>(spec: &NullSquareSpec<S>, model: &NullSquare<S>, gab: &GabrielPresentation<S>) -> Result<IsoReport> {
    let lam = &model.lambda;
    let (da, db, dm, dn) = model.dims();
    let p = compute_basis(&gab.presentation)?;
    if p.dim() != lam.dim() {
        return Err(Error::IsoFailure {
            witness: format!("dim kQ/<R> = {} but dim A + dim B + dim M + dim N = {}", p.dim(), lam.dim()),
        });
    }
    let (a, b) = (&model.a, &model.b);
    let arrow_in = |alg: &BasedAlgebra<S>, x: usize| -> Result<usize> {
        alg.basis
            .iter()
            .position(|e| e.path.as_deref() == Some(&[x][..]))
            .ok_or_else(|| Error::IsoFailure { witness: format!("arrow {x} of {} is not a basis element", alg.name) })
    };
    let mgens = Bimodule::projective_generators(b, a, &spec.m);
    let ngens = Bimodule::projective_generators(a, b, &spec.n);
    let mut images: Vec<usize> = Vec::new();
    for x in 0..gab.a_arrows {
        images.push(arrow_in(a, x)?);
    }
    for x in 0..gab.b_arrows {
        images.push(da + arrow_in(b, x)?);
    }
    images.extend(mgens.iter().map(|g| da + db + g));
    images.extend(ngens.iter().map(|g| da + db + dm + g));
    let phi_cols: Vec<SparseVec<S>> = p
        .basis
        .iter()
        .map(|e| {
            let path = e.path.as_ref().expect("presentation basis consists of paths");
            let mut v = sparse::unit(lam.idempotent(e.source));
            for &x in path {
                v = lam.multiply(&sparse::unit(images[x]), &v);
            }
            v
        })
        .collect();
    let phi = Matrix::from_columns(lam.dim(), phi_cols)?;
    if phi.rank() != lam.dim() {
        return Err(Error::IsoFailure { witness: "generator images do not span the model".into() });
    }
    for i in 0..p.dim() {
        for j in 0..p.dim() {
            let lhs = phi.apply(p.mul_basis(i, j));
            let rhs = lam.multiply(phi.column(i), phi.column(j));
            if lhs != rhs {
                return Err(Error::IsoFailure {
                    witness: format!("product {} * {} is not preserved", p.basis[i].label, p.basis[j].label),
                });
            }
        }
    }
    Ok(IsoReport { presentation_dim: p.dim(), model_dim: lam.dim(), dims: (da, db, dm, dn) })
}

pub fn check_presentation_model_iso<S: Scalar>(spec: &NullSquareSpec<S>) -> Result<IsoReport> {
    let model = matrix_model(spec)?;
    let gab = build_presentation(spec)?;
    check_iso(spec, &model, &gab)
}
