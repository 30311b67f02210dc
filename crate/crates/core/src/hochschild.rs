//! Hochschild homology through the bar complex relative to a separable subalgebra
//! spanned by a system of idempotents.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{BasedAlgebra, IdempotentSystem};
use crate::bimodule::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::Accum;
use crate::linalg::{Matrix, Scalar};

pub const DEFAULT_NMAX: usize = 5;
pub const DEFAULT_CHAIN_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Unnormalized,
    /// Interior tensorands taken from `Λ / D`; only for the vertex system.
    Normalized,
}

/// Chain `z ⊗ b_1 ⊗ ... ⊗ b_n`.
type Chain = (usize, Vec<usize>);

#[derive(Debug, Clone)]
pub struct ChainComplex<S> {
    /// `chains[n]` lists the basis of degree `n`.
    pub dims: Vec<usize>,
    /// `differentials[n]` maps degree `n` to degree `n - 1`; entry 0 is the zero map.
    pub differentials: Vec<Matrix<S>>,
}

impl<S: Scalar> ChainComplex<S> {
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 1..self.differentials.len().saturating_sub(1) {
            let prod = self.differentials[n].mul(&self.differentials[n + 1])?;
            if !prod.is_zero() {
                return Err(Error::NotAComplex { context: format!("bar complex degree {}", n + 1) });
            }
        }
        Ok(())
    }

    /// Homology dimensions in degrees `0..len-1`, where the last degree only serves as a boundary source.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.par_iter().map(|d| d.rank()).collect();
        (0..self.dims.len() - 1).map(|n| self.dims[n] - ranks[n] - ranks[n + 1]).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HHTable {
    pub algebra: String,
    pub dims: Vec<usize>,
    pub mode: Mode,
}

struct Config {
    chain_cap: usize,
    mode: Mode,
}

fn enumerate_chains<S: Scalar>(
    alg: &BasedAlgebra<S>,
    z: &Bimodule<S>,
    group: &[usize],
    n: usize,
    cfg: &Config,
) -> Result<Vec<Chain>> {
    let interior: Vec<usize> = match cfg.mode {
        Mode::Unnormalized => (0..alg.dim()).collect(),
        Mode::Normalized => alg.radical_basis(),
    };
    // Interior basis elements by the group of their target.
    let mut by_target: HashMap<usize, Vec<usize>> = HashMap::new();
    for &b in &interior {
        by_target.entry(group[alg.basis[b].target]).or_default().push(b);
    }
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend<S: Scalar>(
        alg: &BasedAlgebra<S>,
        group: &[usize],
        by_target: &HashMap<usize, Vec<usize>>,
        zi: usize,
        close: usize,
        open: usize,
        n: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Chain>,
        cap: usize,
    ) -> Result<()> {
        if stack.len() == n {
            if open == close {
                if out.len() >= cap {
                    return Err(Error::DimensionCapExceeded { degree: n, count: out.len() + 1, cap });
                }
                out.push((zi, stack.clone()));
            }
            return Ok(());
        }
        if let Some(bs) = by_target.get(&open) {
            for &b in bs {
                stack.push(b);
                extend(alg, group, by_target, zi, close, group[alg.basis[b].source], n, stack, out, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }
    for (zi, &(l, r)) in z.tags.iter().enumerate() {
        extend(alg, group, &by_target, zi, group[l], group[r], n, &mut stack, &mut out, cfg.chain_cap)?;
    }
    Ok(out)
}

fn differential<S: Scalar>(
    alg: &BasedAlgebra<S>,
    z: &Bimodule<S>,
    chains: &[Chain],
    lower: &HashMap<Chain, usize>,
    lower_dim: usize,
    mode: Mode,
) -> Result<Matrix<S>> {
    let keep = |b: usize| mode == Mode::Unnormalized || !alg.is_idempotent(b);
    let cols = chains
        .par_iter()
        .map(|(zi, bs)| {
            let n = bs.len();
            let mut acc = Accum::new();
            let mut push = |zz: usize, tail: Vec<usize>, c: &S| {
                if tail.iter().all(|&b| keep(b)) {
                    if let Some(&k) = lower.get(&(zz, tail)) {
                        acc.add(k, c);
                    }
                }
            };
            // z b_1 ⊗ b_2 ⊗ ... ⊗ b_n
            for (k, c) in z.right_basis(*zi, bs[0]) {
                push(*k, bs[1..].to_vec(), c);
            }
            // Σ (-1)^i z ⊗ ... ⊗ b_i b_{i+1} ⊗ ...
            for i in 1..n {
                let sign = if i % 2 == 0 { S::one() } else { -S::one() };
                for (k, c) in alg.mul_basis(bs[i - 1], bs[i]) {
                    let mut t = Vec::with_capacity(n - 1);
                    t.extend_from_slice(&bs[..i - 1]);
                    t.push(*k);
                    t.extend_from_slice(&bs[i + 1..]);
                    push(*zi, t, &sign.mul_ref(c));
                }
            }
            // (-1)^n b_n z ⊗ b_1 ⊗ ... ⊗ b_{n-1}
            let sign = if n % 2 == 0 { S::one() } else { -S::one() };
            for (k, c) in z.left_basis(bs[n - 1], *zi) {
                push(*k, bs[..n - 1].to_vec(), &sign.mul_ref(c));
            }
            acc.finish()
        })
        .collect();
    Matrix::from_columns(lower_dim, cols)
}

/// Bar complex `Z ⊗_{D-D} Λ^{⊗_D n}` for degrees `0..=n_max`.
pub fn bar_complex<S: Scalar>(
    alg: &BasedAlgebra<S>,
    z: &Bimodule<S>,
    d_sys: &IdempotentSystem,
    n_max: usize,
    mode: Mode,
    chain_cap: usize,
) -> Result<ChainComplex<S>> {
    if !same_algebra(alg, &z.left) || !same_algebra(alg, &z.right) {
        return Err(Error::AlgebraMismatch("coefficients must be a bimodule over the algebra".into()));
    }
    let vertex_system = d_sys.groups.iter().all(|g| g.len() == 1);
    if mode == Mode::Normalized && !vertex_system {
        return Err(Error::Unsupported("normalized complex needs the vertex system".into()));
    }
    let group = d_sys.group_of(alg.num_vertices());
    let cfg = Config { chain_cap, mode };
    let chains: Vec<Vec<Chain>> =
        (0..=n_max).into_par_iter().map(|n| enumerate_chains(alg, z, &group, n, &cfg)).collect::<Result<_>>()?;
    let index: Vec<HashMap<Chain, usize>> = chains
        .par_iter()
        .map(|cs| cs.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect())
        .collect();
    let mut differentials = vec![Matrix::zeros(0, chains[0].len())];
    let rest: Vec<Matrix<S>> = (1..=n_max)
        .into_par_iter()
        .map(|n| differential(alg, z, &chains[n], &index[n - 1], chains[n - 1].len(), mode))
        .collect::<Result<_>>()?;
    differentials.extend(rest);
    Ok(ChainComplex { dims: chains.iter().map(|c| c.len()).collect(), differentials })
}

/// `dim H_n(Λ, Z)` for `n = 0..=n_max`.
pub fn hh_with_coefficients<S: Scalar>(alg: &BasedAlgebra<S>, z: &Bimodule<S>, n_max: usize) -> Result<Vec<usize>> {
    let c = bar_complex(alg, z, &IdempotentSystem::vertices(alg.num_vertices()), n_max + 1, Mode::Unnormalized, DEFAULT_CHAIN_CAP)?;
    c.check_square_zero()?;
    Ok(c.homology())
}

pub fn hh_dims_with<S: Scalar>(
    alg: &std::sync::Arc<BasedAlgebra<S>>,
    d_sys: &IdempotentSystem,
    n_max: usize,
    mode: Mode,
) -> Result<HHTable> {
    let z = Bimodule::regular(alg.clone());
    let c = bar_complex(alg, &z, d_sys, n_max + 1, mode, DEFAULT_CHAIN_CAP)?;
    c.check_square_zero()?;
    Ok(HHTable { algebra: alg.name.clone(), dims: c.homology(), mode })
}

/// `dim HH_n(Λ)` for `n = 0..=n_max` over the vertex system.
pub fn hh_dims<S: Scalar>(alg: &std::sync::Arc<BasedAlgebra<S>>, n_max: usize) -> Result<HHTable> {
    hh_dims_with(alg, &IdempotentSystem::vertices(alg.num_vertices()), n_max, Mode::Unnormalized)
}

/// Degree-0 cross-check: `Λ / [Λ, Λ]` computed directly.
pub fn hh0_direct<S: Scalar>(alg: &std::sync::Arc<BasedAlgebra<S>>) -> Result<usize> {
    Ok(crate::bimodule::h0(&Bimodule::regular(alg.clone()))?.dim)
}
