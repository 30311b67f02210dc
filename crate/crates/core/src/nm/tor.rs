use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bimodule::{h0, i_space, Bimodule, H0Space, TensorChain};
use crate::error::{Error, Result};
use crate::hochschild::ChainComplex;
use crate::linalg::sparse::{self, Accum, SparseVec};
use crate::linalg::{Matrix, Scalar};
use crate::nullsquare::NullSquare;

/// `H_0(A, (N ⊗_B M)^{⊗_A m})` and `H_0(B, (M ⊗_A N)^{⊗_B m})` with their chains.
#[derive(Debug, Clone)]
pub struct CyclicSpaces<S> {
    pub m: usize,
    pub a_chain: TensorChain<S>,
    pub a_h0: H0Space<S>,
    pub b_chain: TensorChain<S>,
    pub b_h0: H0Space<S>,
}

fn alternating<S: Scalar>(first: &Arc<Bimodule<S>>, second: &Arc<Bimodule<S>>, m: usize) -> Vec<Arc<Bimodule<S>>> {
    (0..2 * m).map(|k| if k % 2 == 0 { first.clone() } else { second.clone() }).collect()
}

pub fn cyclic_spaces<S: Scalar>(ns: &NullSquare<S>, m: usize) -> Result<CyclicSpaces<S>> {
    if m == 0 {
        return Err(Error::Invalid("the cyclic action needs m ≥ 1".into()));
    }
    let a_chain = TensorChain::new(alternating(&ns.n, &ns.m, m))?;
    let b_chain = TensorChain::new(alternating(&ns.m, &ns.n, m))?;
    let a_h0 = h0(a_chain.module())?;
    let b_h0 = h0(b_chain.module())?;
    Ok(CyclicSpaces { m, a_chain, a_h0, b_chain, b_h0 })
}

/// Map on `H_0` moving the last `k` tensor factors to the front.
fn rotation<S: Scalar>(
    src: &TensorChain<S>,
    src_h: &H0Space<S>,
    dst: &TensorChain<S>,
    dst_h: &H0Space<S>,
    k: usize,
) -> Result<Matrix<S>> {
    let cols = src_h
        .representatives()
        .into_iter()
        .map(|r| {
            let mut t = src.rep_tuple(r);
            t.rotate_right(k);
            dst_h.project(&dst.project_tuple(&t))
        })
        .collect();
    Matrix::from_columns(dst_h.dim, cols)
}

impl<S: Scalar> CyclicSpaces<S> {
    /// Action of the generator `t` on the A-side space.
    pub fn t(&self) -> Result<Matrix<S>> {
        rotation(&self.a_chain, &self.a_h0, &self.a_chain, &self.a_h0, 2)
    }

    /// Action of `t` on the B-side space.
    pub fn t_b(&self) -> Result<Matrix<S>> {
        rotation(&self.b_chain, &self.b_h0, &self.b_chain, &self.b_h0, 2)
    }

    pub fn sigma(&self) -> Result<Matrix<S>> {
        rotation(&self.a_chain, &self.a_h0, &self.b_chain, &self.b_h0, 1)
    }

    pub fn tau(&self) -> Result<Matrix<S>> {
        rotation(&self.b_chain, &self.b_h0, &self.a_chain, &self.a_h0, 1)
    }

    /// `(dim ker(t − 1), dim coker(t − 1))`.
    pub fn invariants_coinvariants(&self) -> Result<(usize, usize)> {
        let d = self.a_h0.dim;
        let r = self.t()?.sub(&Matrix::identity(d))?.rank();
        Ok((d - r, d - r))
    }

    /// `(dim ker b, dim coker b)` for `b = [[1, τ], [σ, 1]]`.
    pub fn block_kernel_cokernel(&self) -> Result<(usize, usize)> {
        let (da, db) = (self.a_h0.dim, self.b_h0.dim);
        let (sigma, tau) = (self.sigma()?, self.tau()?);
        let shift = |v: &SparseVec<S>, s: usize| -> SparseVec<S> { v.iter().map(|(i, x)| (i + s, x.clone())).collect() };
        let mut cols: Vec<SparseVec<S>> = Vec::with_capacity(da + db);
        for i in 0..da {
            let mut c = sparse::unit(i);
            c.extend(shift(sigma.column(i), da));
            cols.push(c);
        }
        for j in 0..db {
            let mut c = tau.column(j).clone();
            c.push((da + j, S::one()));
            cols.push(c);
        }
        let r = Matrix::from_columns(da + db, cols)?.rank();
        Ok((da + db - r, da + db - r))
    }
}

pub fn cyclic_action<S: Scalar>(ns: &NullSquare<S>, m: usize) -> Result<Matrix<S>> {
    cyclic_spaces(ns, m)?.t()
}

pub fn sigma_tau<S: Scalar>(ns: &NullSquare<S>, m: usize) -> Result<(Matrix<S>, Matrix<S>)> {
    let c = cyclic_spaces(ns, m)?;
    Ok((c.sigma()?, c.tau()?))
}

pub fn invariants_coinvariants<S: Scalar>(ns: &NullSquare<S>, m: usize) -> Result<(usize, usize)> {
    cyclic_spaces(ns, m)?.invariants_coinvariants()
}

#[derive(Debug, Clone, Serialize)]
pub struct TorTable {
    pub n_max: usize,
    /// Homology of the complex `I(n+1) ⊕ I(n+2)` in degree `n`.
    pub literal: Vec<usize>,
    /// Invariants (odd degrees) and coinvariants (even degrees) of the cyclic action.
    pub reduced: Vec<usize>,
    /// Kernel and cokernel of `[[1, τ], [σ, 1]]`.
    pub block: Vec<usize>,
    /// `i_dims[k] = dim I(k + 1)`.
    pub i_dims: Vec<usize>,
}

/// Product of two basis vectors of `I` inside `Λ`, in coordinates of `I`.
fn i_product<S: Scalar>(ns: &NullSquare<S>, x: usize, y: usize) -> SparseVec<S> {
    let dc = ns.dim_c();
    ns.lambda
        .mul_basis(x + dc, y + dc)
        .iter()
        .map(|(k, c)| {
            debug_assert!(*k >= dc, "I is an ideal");
            (k - dc, c.clone())
        })
        .collect()
}

/// `z_0 ⊗ ... ⊗ z_i z_{i+1} ⊗ ...` (with `i + 1` taken cyclically when `i` is the last index,
/// giving `z_n z_0 ⊗ z_1 ⊗ ...`).
fn merged<S: Scalar>(ns: &NullSquare<S>, t: &[usize], i: usize) -> Vec<SparseVec<S>> {
    let n = t.len();
    if i + 1 < n {
        let mut parts: Vec<SparseVec<S>> = t.iter().map(|&x| sparse::unit(x)).collect();
        parts[i] = i_product(ns, t[i], t[i + 1]);
        parts.remove(i + 1);
        parts
    } else {
        let mut parts: Vec<SparseVec<S>> = t[1..n - 1].iter().map(|&x| sparse::unit(x)).collect();
        parts.insert(0, i_product(ns, t[n - 1], t[0]));
        parts
    }
}

fn sign<S: Scalar>(i: usize) -> S {
    if i % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Homology of the complex `⋯ → I(n) ⊕ I(n+1) → I(n−1) ⊕ I(n) → ⋯ → I(1) ⊕ I(2) → 0`, degrees `0..=n_max`.
pub fn tor_literal<S: Scalar>(ns: &NullSquare<S>, n_max: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let i = Arc::new(ns.i_bimodule());
    let top = n_max + 3;
    let spaces: Vec<(TensorChain<S>, H0Space<S>)> = (1..=top).into_par_iter().map(|n| i_space(&i, n)).collect::<Result<_>>()?;
    let sp = |n: usize| &spaces[n - 1];
    let dim = |n: usize| sp(n).1.dim;
    let i_dims: Vec<usize> = (1..=top).map(dim).collect();
    let term = |j: usize| dim(j + 1) + dim(j + 2);
    let project = |n: usize, parts: &[SparseVec<S>]| -> SparseVec<S> {
        let (chain, h) = sp(n);
        h.project(&chain.project(parts))
    };
    let shift = |v: SparseVec<S>, s: usize| -> SparseVec<S> { v.into_iter().map(|(i, x)| (i + s, x)).collect() };
    let mut dims = Vec::with_capacity(n_max + 2);
    let mut diffs = vec![Matrix::zeros(0, term(0))];
    dims.push(term(0));
    for j in 1..=n_max + 1 {
        dims.push(term(j));
        let off = dim(j);
        let mut cols = Vec::with_capacity(term(j));
        // I(n) with n = j + 1.
        let n = j + 1;
        let (chain, h) = sp(n);
        for r in h.representatives() {
            let t = chain.rep_tuple(r);
            let mut acc = Accum::new();
            let units: Vec<SparseVec<S>> = t.iter().map(|&x| sparse::unit(x)).collect();
            acc.add_scaled(&shift(project(n, &units), off), &S::one());
            let mut rot = t.clone();
            rot.rotate_right(1);
            let rot_units: Vec<SparseVec<S>> = rot.iter().map(|&x| sparse::unit(x)).collect();
            acc.add_scaled(&shift(project(n, &rot_units), off), &sign(n));
            for k in 1..n {
                acc.add_scaled(&project(n - 1, &merged(ns, &t, k - 1)), &sign(k));
            }
            cols.push(acc.finish());
        }
        // I(n + 1), factors z_0 ... z_n.
        let (chain, h) = sp(n + 1);
        for r in h.representatives() {
            let t = chain.rep_tuple(r);
            let mut acc = Accum::new();
            for k in 0..=n {
                acc.add_scaled(&project(n, &merged(ns, &t, k)), &sign(k));
            }
            cols.push(shift(acc.finish(), off));
        }
        diffs.push(Matrix::from_columns(term(j - 1), cols)?);
    }
    let cx = ChainComplex { dims, differentials: diffs };
    cx.check_square_zero()?;
    Ok((cx.homology(), i_dims))
}

/// Tor through the cyclic action: degree `2m+1` gives invariants and degree `2m` coinvariants of `C_{m+1}`.
/// Returns the dims from `t` and from the block matrix of `b`.
pub fn tor_reduced<S: Scalar>(ns: &NullSquare<S>, n_max: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let levels = n_max / 2 + 1;
    let per: Vec<((usize, usize), (usize, usize))> = (1..=levels)
        .into_par_iter()
        .map(|k| {
            let c = cyclic_spaces(ns, k)?;
            Ok((c.invariants_coinvariants()?, c.block_kernel_cokernel()?))
        })
        .collect::<Result<_>>()?;
    let pick = |n: usize, which: fn(&((usize, usize), (usize, usize))) -> (usize, usize)| {
        let (inv, coinv) = which(&per[n / 2]);
        if n % 2 == 1 {
            inv
        } else {
            coinv
        }
    };
    let reduced = (0..=n_max).map(|n| pick(n, |p| p.0)).collect();
    let block = (0..=n_max).map(|n| pick(n, |p| p.1)).collect();
    Ok((reduced, block))
}

/// Both computations of `Tor_n^{Λ−Λ}(K¹_C(Λ), Λ)`; errors when they disagree.
pub fn tor_complex<S: Scalar>(ns: &NullSquare<S>, n_max: usize) -> Result<TorTable> {
    let (literal, i_dims) = tor_literal(ns, n_max)?;
    let (reduced, block) = tor_reduced(ns, n_max)?;
    for n in 0..=n_max {
        if literal[n] != reduced[n] {
            return Err(Error::MethodMismatch { degree: n, literal: literal[n], reduced: reduced[n] });
        }
        if block[n] != reduced[n] {
            return Err(Error::IdentityFailure {
                degree: n,
                detail: format!("block matrix gives {}, cyclic action gives {}", block[n], reduced[n]),
            });
        }
    }
    Ok(TorTable { n_max, literal, reduced, block, i_dims })
}
