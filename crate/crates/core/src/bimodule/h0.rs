use std::collections::HashMap;

use super::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::sparse::{Accum, Echelon, PivotRule, Quotient, SparseVec};
use crate::linalg::{Matrix, Scalar};

/// `H_0(Λ, Z) = Z / <λz - zλ>`.
///
/// Off-diagonal basis vectors `y Z x` with `x != y` are commutators and are dropped first.
#[derive(Debug, Clone)]
pub struct H0Space<S> {
    pub dim: usize,
    ambient: usize,
    diag_pos: HashMap<usize, usize>,
    quot: Quotient<S>,
}

impl<S: Scalar> H0Space<S> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn project(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let w: SparseVec<S> = v.iter().filter_map(|(i, x)| self.diag_pos.get(i).map(|&k| (k, x.clone()))).collect();
        let mut w = w;
        w.sort_unstable_by_key(|e| e.0);
        self.quot.project(w)
    }

    pub fn projection(&self) -> Matrix<S> {
        let cols = (0..self.ambient)
            .map(|i| match self.diag_pos.get(&i) {
                Some(&k) => self.quot.project_unit(k),
                None => Vec::new(),
            })
            .collect();
        Matrix::from_columns(self.dim, cols).expect("projection within cap")
    }

    /// Ambient basis vectors representing the quotient basis.
    pub fn representatives(&self) -> Vec<usize> {
        let mut inv: Vec<(usize, usize)> = self.diag_pos.iter().map(|(a, k)| (*k, *a)).collect();
        inv.sort_unstable();
        self.quot.representatives().iter().map(|&k| inv[k].1).collect()
    }

    /// Matrix on `H_0` induced by a map `f` of the ambient space into the ambient space of `target`.
    pub fn induced(&self, f: &Matrix<S>, target: &H0Space<S>) -> Result<Matrix<S>> {
        let cols = self.representatives().iter().map(|&r| target.project(f.column(r))).collect();
        Matrix::from_columns(target.dim, cols)
    }
}

pub fn h0<S: Scalar>(z: &Bimodule<S>) -> Result<H0Space<S>> {
    if !same_algebra(&z.left, &z.right) {
        return Err(Error::AlgebraMismatch("H_0 needs a bimodule over a single algebra".into()));
    }
    let alg = &z.left;
    let diag: Vec<usize> = (0..z.dim()).filter(|&i| z.tags[i].0 == z.tags[i].1).collect();
    let diag_pos: HashMap<usize, usize> = diag.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let mut ech = Echelon::new(diag.len(), PivotRule::MinColumn);
    for b in 0..alg.dim() {
        if alg.is_idempotent(b) {
            continue;
        }
        let (src, tgt) = (alg.basis[b].source, alg.basis[b].target);
        for (i, t) in z.tags.iter().enumerate() {
            if t.0 != src || t.1 != tgt {
                continue;
            }
            let mut acc = Accum::new();
            for (k, x) in z.left_basis(b, i) {
                acc.add(diag_pos[k], x);
            }
            for (k, x) in z.right_basis(i, b) {
                acc.add(diag_pos[k], &-x.clone());
            }
            let rel = acc.finish();
            if !rel.is_empty() {
                ech.insert(rel);
            }
        }
    }
    let quot = Quotient::new(ech);
    Ok(H0Space { dim: quot.dim(), ambient: z.dim(), diag_pos, quot })
}
