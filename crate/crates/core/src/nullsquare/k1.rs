use std::sync::Arc;

use rayon::prelude::*;

use super::NullSquare;
use crate::bimodule::TensorChain;
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseVec};
use crate::linalg::{Matrix, Scalar};

/// The complex `T_n = Λ ⊗_C I^{⊗_C n} ⊗_C Λ` augmented by the product `T_0 → Λ`,
/// with the contracting homotopy `s(l ⊗ x ⊗ l') = 1 ⊗ l_I ⊗ x ⊗ l'`.
#[derive(Debug, Clone)]
pub struct K1Complex<S> {
    pub terms: Vec<TensorChain<S>>,
    pub lambda_dim: usize,
    /// `d[n]: T_n → T_{n-1}`, with `d[0]: T_0 → Λ`.
    pub d: Vec<Matrix<S>>,
    /// `s[0]: Λ → T_0` and `s[n + 1]: T_n → T_{n+1}`.
    pub s: Vec<Matrix<S>>,
}

impl<S: Scalar> K1Complex<S> {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for n in 1..self.d.len() {
            if !self.d[n - 1].mul(&self.d[n])?.is_zero() {
                return Err(Error::NotAComplex { context: format!("K1 complex degree {n}") });
            }
        }
        Ok(())
    }

    /// `d s + s d = 1` on `Λ` and on every `T_n` whose successor was built.
    pub fn check_homotopy(&self) -> Result<usize> {
        if self.d[0].mul(&self.s[0])? != Matrix::identity(self.lambda_dim) {
            return Err(Error::IdentityFailure { degree: 0, detail: "product does not split by 1 ⊗ -".into() });
        }
        let top = self.terms.len() - 1;
        for n in 0..top {
            let lhs = self.d[n + 1].mul(&self.s[n + 1])?.add(&self.s[n].mul(&self.d[n])?)?;
            if lhs != Matrix::identity(self.terms[n].dim()) {
                return Err(Error::IdentityFailure { degree: n, detail: "ds + sd differs from the identity".into() });
            }
        }
        Ok(top)
    }

    /// `dim K¹_C(Λ) = dim Λ ⊗_C Λ − dim Λ` when the product is onto.
    pub fn k1_dim(&self) -> usize {
        self.terms[0].dim() - self.d[0].rank()
    }
}

pub fn k1_complex<S: Scalar>(ns: &NullSquare<S>, n_max: usize) -> Result<K1Complex<S>> {
    let lam = &ns.lambda;
    let dc = ns.dim_c();
    let left = Arc::new(ns.lambda_c_right());
    let right = Arc::new(ns.lambda_c_left());
    let i = Arc::new(ns.i_bimodule());
    let terms: Vec<TensorChain<S>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut f = vec![left.clone()];
            f.extend(std::iter::repeat(i.clone()).take(n));
            f.push(right.clone());
            TensorChain::new(f)
        })
        .collect::<Result<_>>()?;
    let to_lambda = |x: usize| sparse::unit::<S>(x + dc);
    let unit = lam.unit();
    let mut d = Vec::with_capacity(n_max + 1);
    let cols0 = (0..terms[0].dim())
        .map(|k| {
            let t = terms[0].rep_tuple(k);
            lam.mul_basis(t[0], t[1]).clone()
        })
        .collect();
    d.push(Matrix::from_columns(lam.dim(), cols0)?);
    let rest: Vec<Matrix<S>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let (src, dst) = (&terms[n], &terms[n - 1]);
            let sign = if n % 2 == 0 { S::one() } else { -S::one() };
            let cols = (0..src.dim())
                .map(|k| {
                    let t = src.rep_tuple(k);
                    let units: Vec<SparseVec<S>> = t.iter().map(|&x| sparse::unit(x)).collect();
                    // (l x_1) ⊗ x_2 ⊗ ... ⊗ l'
                    let mut first = vec![lam.multiply(&units[0], &to_lambda(t[1]))];
                    first.extend(units[2..].iter().cloned());
                    let a = dst.project(&first);
                    // Interior merges x_i x_{i+1} lie in I² = 0.
                    // (-1)^n l ⊗ ... ⊗ (x_n l')
                    let mut last: Vec<SparseVec<S>> = units[..n].to_vec();
                    last.push(lam.multiply(&to_lambda(t[n]), &units[n + 1]));
                    let b = dst.project(&last);
                    sparse::axpy(&a, &sign, &b)
                })
                .collect();
            Matrix::from_columns(dst.dim(), cols)
        })
        .collect::<Result<_>>()?;
    d.extend(rest);
    let mut s = Vec::with_capacity(n_max + 1);
    let cols = (0..lam.dim()).map(|l| terms[0].project(&[unit.clone(), sparse::unit(l)])).collect();
    s.push(Matrix::from_columns(terms[0].dim(), cols)?);
    for n in 0..n_max {
        let (src, dst) = (&terms[n], &terms[n + 1]);
        let cols = (0..src.dim())
            .map(|k| {
                let t = src.rep_tuple(k);
                if t[0] < dc {
                    return Vec::new();
                }
                let mut parts = vec![unit.clone(), sparse::unit(t[0] - dc)];
                parts.extend(t[1..].iter().map(|&x| sparse::unit(x)));
                dst.project(&parts)
            })
            .collect();
        s.push(Matrix::from_columns(dst.dim(), cols)?);
    }
    Ok(K1Complex { terms, lambda_dim: lam.dim(), d, s })
}
