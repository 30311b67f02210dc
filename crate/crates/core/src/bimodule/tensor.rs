use std::collections::HashMap;
use std::sync::Arc;

use super::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Accum, Echelon, PivotRule, Quotient, SparseVec};
use crate::linalg::{Matrix, Scalar};

/// `Z ⊗_S W` as the coequalizer of `Z ⊗ S ⊗ W ⇉ Z ⊗ W`.
///
/// The basis consists of representative pairs `(z, w)` of basis vectors.
#[derive(Debug, Clone)]
pub struct Tensor<S> {
    pub module: Bimodule<S>,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    quot: Quotient<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn new(z: &Bimodule<S>, w: &Bimodule<S>) -> Result<Self> {
        if !same_algebra(&z.right, &w.left) {
            return Err(Error::AlgebraMismatch(format!(
                "cannot tensor over {} and {}",
                z.right.name, w.left.name
            )));
        }
        let s = &z.right;
        let mut by_left: HashMap<usize, Vec<usize>> = HashMap::new();
        for (j, t) in w.tags.iter().enumerate() {
            by_left.entry(t.0).or_default().push(j);
        }
        let mut pairs = Vec::new();
        for (i, t) in z.tags.iter().enumerate() {
            if let Some(ws) = by_left.get(&t.1) {
                pairs.extend(ws.iter().map(|&j| (i, j)));
            }
        }
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let mut by_right: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, t) in z.tags.iter().enumerate() {
            by_right.entry(t.1).or_default().push(i);
        }
        let mut ech = Echelon::new(pairs.len(), PivotRule::MinColumn);
        let empty = Vec::new();
        for sb in 0..s.dim() {
            if s.is_idempotent(sb) {
                continue;
            }
            let (src, tgt) = (s.basis[sb].source, s.basis[sb].target);
            let zs = by_right.get(&tgt).unwrap_or(&empty);
            let ws = by_left.get(&src).unwrap_or(&empty);
            for &i in zs {
                let zsv = z.right_basis(i, sb);
                for &j in ws {
                    let swv = w.left_basis(sb, j);
                    let mut acc = Accum::new();
                    for (k, x) in zsv {
                        acc.add(pair_index[&(*k, j)], x);
                    }
                    for (k, x) in swv {
                        acc.add(pair_index[&(i, *k)], &-x.clone());
                    }
                    let rel = acc.finish();
                    if !rel.is_empty() {
                        ech.insert(rel);
                    }
                }
            }
        }
        crate::linalg::check_entries(ech.stored_entries())?;
        let quot = Quotient::new(ech);
        let reps: Vec<(usize, usize)> = quot.representatives().iter().map(|&c| pairs[c]).collect();
        let tags = reps.iter().map(|&(i, j)| (z.tags[i].0, w.tags[j].1)).collect();
        let labels = reps.iter().map(|&(i, j)| format!("{}|{}", z.labels[i], w.labels[j])).collect();
        let project = |zv: &SparseVec<S>, wv: &SparseVec<S>| -> SparseVec<S> {
            let mut acc = Accum::new();
            for (i, x) in zv {
                for (j, y) in wv {
                    if let Some(&c) = pair_index.get(&(*i, *j)) {
                        acc.add_scaled(&quot.project_unit(c), &x.mul_ref(y));
                    }
                }
            }
            acc.finish()
        };
        let module = Bimodule::new(
            z.left.clone(),
            w.right.clone(),
            tags,
            labels,
            |a, k| {
                let (i, j) = reps[k];
                project(z.left_basis(a, i), &sparse::unit(j))
            },
            |k, b| {
                let (i, j) = reps[k];
                project(&sparse::unit(i), w.right_basis(j, b))
            },
        );
        Ok(Tensor { module, pairs, pair_index, quot })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Representative pair of basis vector `k`.
    pub fn rep(&self, k: usize) -> (usize, usize) {
        self.pairs[self.quot.representatives()[k]]
    }

    /// Coordinates of `z_i ⊗ w_j`.
    pub fn project_pair(&self, i: usize, j: usize) -> SparseVec<S> {
        match self.pair_index.get(&(i, j)) {
            Some(&c) => self.quot.project_unit(c),
            None => Vec::new(),
        }
    }

    /// Coordinates of `z ⊗ w` for arbitrary vectors.
    pub fn project(&self, zv: &SparseVec<S>, wv: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accum::new();
        for (i, x) in zv {
            for (j, y) in wv {
                if let Some(&c) = self.pair_index.get(&(*i, *j)) {
                    acc.add_scaled(&self.quot.project_unit(c), &x.mul_ref(y));
                }
            }
        }
        acc.finish()
    }

    /// Matrix of `f ⊗ g` into `target`, where `f`, `g` are bimodule maps between the factors.
    pub fn map(&self, f: &Matrix<S>, g: &Matrix<S>, target: &Tensor<S>) -> Result<Matrix<S>> {
        let cols = (0..self.dim())
            .map(|k| {
                let (i, j) = self.rep(k);
                target.project(f.column(i), g.column(j))
            })
            .collect();
        Matrix::from_columns(target.dim(), cols)
    }
}

/// Iterated tensor product `F_1 ⊗ F_2 ⊗ ... ⊗ F_n`, bracketed from the left.
#[derive(Debug, Clone)]
pub struct TensorChain<S> {
    pub factors: Vec<Arc<Bimodule<S>>>,
    stages: Vec<Tensor<S>>,
}

impl<S: Scalar> TensorChain<S> {
    pub fn new(factors: Vec<Arc<Bimodule<S>>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("empty tensor chain".into()));
        }
        let mut stages: Vec<Tensor<S>> = Vec::new();
        for k in 1..factors.len() {
            let prev = match stages.last() {
                Some(t) => &t.module,
                None => factors[0].as_ref(),
            };
            let t = Tensor::new(prev, &factors[k])?;
            stages.push(t);
        }
        Ok(TensorChain { factors, stages })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn module(&self) -> &Bimodule<S> {
        match self.stages.last() {
            Some(t) => &t.module,
            None => &self.factors[0],
        }
    }

    pub fn dim(&self) -> usize {
        self.module().dim()
    }

    /// Coordinates of `f_1 ⊗ ... ⊗ f_n` for vectors `f_k` of the factors.
    pub fn project(&self, parts: &[SparseVec<S>]) -> SparseVec<S> {
        assert_eq!(parts.len(), self.factors.len(), "tuple length must match the chain");
        let mut v = parts[0].clone();
        for (k, t) in self.stages.iter().enumerate() {
            if v.is_empty() {
                return v;
            }
            v = t.project(&v, &parts[k + 1]);
        }
        v
    }

    pub fn project_tuple(&self, tuple: &[usize]) -> SparseVec<S> {
        let parts: Vec<SparseVec<S>> = tuple.iter().map(|&i| sparse::unit(i)).collect();
        self.project(&parts)
    }

    /// Representative tuple of basis vector `k`.
    pub fn rep_tuple(&self, k: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        let mut cur = k;
        for (s, t) in self.stages.iter().enumerate().rev() {
            let (i, j) = t.rep(cur);
            out[s + 1] = j;
            cur = i;
        }
        out[0] = cur;
        out
    }

    /// Matrix of `f_1 ⊗ ... ⊗ f_n` into `target`.
    pub fn map(&self, fs: &[&Matrix<S>], target: &TensorChain<S>) -> Result<Matrix<S>> {
        let cols = (0..self.dim())
            .map(|k| {
                let t = self.rep_tuple(k);
                let parts: Vec<SparseVec<S>> = t.iter().zip(fs).map(|(&i, f)| f.column(i).clone()).collect();
                target.project(&parts)
            })
            .collect();
        Matrix::from_columns(target.dim(), cols)
    }
}
