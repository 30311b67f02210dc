use std::sync::Arc;

use super::{NullSquare, Part};
use crate::algebra::BasedAlgebra;
use crate::bimodule::Tensor;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, Scalar};
use crate::module::LeftModule;

/// A Λ-module as `X ⇌ Y` with `μ: M ⊗_A X → Y` and `ν: N ⊗_B Y → X`.
#[derive(Debug, Clone)]
pub struct SModule<S> {
    pub x: LeftModule<S>,
    pub y: LeftModule<S>,
    pub mu: Matrix<S>,
    pub nu: Matrix<S>,
    pub mx: Tensor<S>,
    pub ny: Tensor<S>,
}

impl<S: Scalar> SModule<S> {
    fn tensors(ns: &NullSquare<S>, x: &LeftModule<S>, y: &LeftModule<S>) -> Result<(Tensor<S>, Tensor<S>)> {
        let k = Arc::new(BasedAlgebra::field("k"));
        let mx = Tensor::new(&ns.m, &x.to_bimodule(k.clone()))?;
        let ny = Tensor::new(&ns.n, &y.to_bimodule(k))?;
        Ok((mx, ny))
    }

    /// `μ`, `ν` are module maps and `ν(1 ⊗ μ) = 0 = μ(1 ⊗ ν)`.
    pub fn check(&self, ns: &NullSquare<S>) -> Result<()> {
        let fail = |what: &str| Err(Error::Invalid(format!("S-module condition fails: {what}")));
        let mx = LeftModule::from_bimodule(&self.mx.module)?;
        let ny = LeftModule::from_bimodule(&self.ny.module)?;
        if !mx.is_morphism(&self.y, &self.mu) || !ny.is_morphism(&self.x, &self.nu) {
            return fail("structure map is not a module map");
        }
        for n in 0..ns.n.dim() {
            for m in 0..ns.m.dim() {
                for x in 0..self.x.dim() {
                    let y = self.mu.apply(&self.mx.project_pair(m, x));
                    if !self.nu.apply(&self.ny.project(&sparse::unit(n), &y)).is_empty() {
                        return fail("nu(1 ⊗ mu) is not zero");
                    }
                }
            }
        }
        for m in 0..ns.m.dim() {
            for n in 0..ns.n.dim() {
                for y in 0..self.y.dim() {
                    let x = self.nu.apply(&self.ny.project_pair(n, y));
                    if !self.mu.apply(&self.mx.project(&sparse::unit(m), &x)).is_empty() {
                        return fail("mu(1 ⊗ nu) is not zero");
                    }
                }
            }
        }
        Ok(())
    }
}

/// `X = 1_A · V`, `Y = 1_B · V` with the restricted actions.
pub fn smodule_convert<S: Scalar>(ns: &NullSquare<S>, v: &LeftModule<S>) -> Result<SModule<S>> {
    let nva = ns.a.num_vertices();
    let (da, db, dm, _) = ns.dims();
    let xs: Vec<usize> = (0..v.dim()).filter(|&i| v.tags[i] < nva).collect();
    let ys: Vec<usize> = (0..v.dim()).filter(|&i| v.tags[i] >= nva).collect();
    let mut xpos = vec![usize::MAX; v.dim()];
    let mut ypos = vec![usize::MAX; v.dim()];
    for (k, &i) in xs.iter().enumerate() {
        xpos[i] = k;
    }
    for (k, &i) in ys.iter().enumerate() {
        ypos[i] = k;
    }
    let restrict = |w: SparseVec<S>, pos: &[usize]| -> SparseVec<S> {
        let mut out: SparseVec<S> = w.into_iter().map(|(i, c)| (pos[i], c)).collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    };
    let x = LeftModule::new(ns.a.clone(), xs.iter().map(|&i| v.tags[i]).collect(), |g, k| {
        restrict(v.act(g, &sparse::unit(xs[k])), &xpos)
    })?;
    let y = LeftModule::new(ns.b.clone(), ys.iter().map(|&i| v.tags[i] - nva).collect(), |g, k| {
        restrict(v.act(g + da, &sparse::unit(ys[k])), &ypos)
    })?;
    let (mx, ny) = SModule::tensors(ns, &x, &y)?;
    let mu_cols = (0..mx.dim())
        .map(|k| {
            let (m, j) = mx.rep(k);
            restrict(v.act(da + db + m, &sparse::unit(xs[j])), &ypos)
        })
        .collect();
    let nu_cols = (0..ny.dim())
        .map(|k| {
            let (n, j) = ny.rep(k);
            restrict(v.act(da + db + dm + n, &sparse::unit(ys[j])), &xpos)
        })
        .collect();
    let mu = Matrix::from_columns(y.dim(), mu_cols)?;
    let nu = Matrix::from_columns(x.dim(), nu_cols)?;
    Ok(SModule { x, y, mu, nu, mx, ny })
}

/// The Λ-module with basis `X ⊔ Y`.
pub fn smodule_to_module<S: Scalar>(ns: &NullSquare<S>, sm: &SModule<S>) -> Result<LeftModule<S>> {
    let nva = ns.a.num_vertices();
    let dx = sm.x.dim();
    let mut tags = sm.x.tags.clone();
    tags.extend(sm.y.tags.iter().map(|t| t + nva));
    let shift = |v: SparseVec<S>, s: usize| -> SparseVec<S> { v.into_iter().map(|(i, c)| (i + s, c)).collect() };
    LeftModule::new(ns.lambda.clone(), tags, |g, z| match (ns.part(g), z < dx) {
        (Part::A(a), true) => sm.x.act(a, &sparse::unit(z)),
        (Part::B(b), false) => shift(sm.y.act(b, &sparse::unit(z - dx)), dx),
        (Part::M(m), true) => shift(sm.mu.apply(&sm.mx.project_pair(m, z)), dx),
        (Part::N(n), false) => sm.nu.apply(&sm.ny.project_pair(n, z - dx)),
        _ => Vec::new(),
    })
}
