use std::sync::atomic::{AtomicUsize, Ordering};

use super::sparse::{self, Accum, Echelon, PivotRule, Quotient, SparseVec};
use super::Scalar;
use crate::error::{Error, Result};

static ENTRY_CAP: AtomicUsize = AtomicUsize::new(40_000_000);

/// Largest number of stored entries a single matrix may hold.
pub fn entry_cap() -> usize {
    ENTRY_CAP.load(Ordering::Relaxed)
}

pub fn set_entry_cap(cap: usize) {
    ENTRY_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_entries(entries: usize) -> Result<()> {
    check_against(entries, entry_cap())
}

fn check_against(entries: usize, cap: usize) -> Result<()> {
    if entries > cap {
        Err(Error::ResourceLimit { entries, cap })
    } else {
        Ok(())
    }
}

/// Matrix stored by sparse columns; column `j` is the image of the `j`-th basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(sparse::unit).collect() }
    }

    pub fn from_columns(rows: usize, data: Vec<SparseVec<S>>) -> Result<Self> {
        let nnz: usize = data.iter().map(|c| c.len()).sum();
        check_entries(nnz)?;
        for c in &data {
            if let Some((i, _)) = c.last() {
                if *i >= rows {
                    return Err(Error::Shape(format!("row index {} out of {} rows", i, rows)));
                }
            }
        }
        Ok(Matrix { rows, cols: data.len(), data })
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    data[j].push((i, x.clone()));
                }
            }
        }
        Matrix { rows: nrows, cols: ncols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<S>> = rows.iter().map(|r| r.iter().map(|x| S::from_i64(*x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn column(&self, j: usize) -> &SparseVec<S> {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec<S>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        sparse::get(&self.data[j], i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (j, c) in self.data.iter().enumerate() {
            for (i, x) in c {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.rows];
        for (j, c) in self.data.iter().enumerate() {
            for (i, x) in c {
                data[*i].push((j, x.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Row vectors as sparse vectors over the columns.
    pub fn row_vectors(&self) -> Vec<SparseVec<S>> {
        self.transpose().data
    }

    pub fn apply(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accum::new();
        for (j, x) in v {
            acc.add_scaled(&self.data[*j], x);
        }
        acc.finish()
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data = other.data.iter().map(|c| self.apply(c)).collect();
        Self::from_columns(self.rows, data)
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.combine(other, &S::one())
    }

    pub fn sub(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.combine(other, &(-S::one()))
    }

    fn combine(&self, other: &Matrix<S>, a: &S) -> Result<Matrix<S>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| sparse::axpy(x, a, y)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, a: &S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| sparse::scale(c, a)).collect() }
    }

    /// Block matrix `[self other]`.
    pub fn hstack(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::from_columns(self.rows, data)
    }

    /// Block matrix `[self; other]`.
    pub fn vstack(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, x)| (i + self.rows, x.clone())));
                c
            })
            .collect();
        Self::from_columns(self.rows + other.rows, data)
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(self.rows, self.data.iter().cloned())
    }

    pub fn rref(&self) -> Rref<S> {
        rref(self)
    }

    pub fn kernel(&self) -> SubspaceBasis<S> {
        rref(self).kernel_basis
    }

    /// Basis of the column space.
    pub fn image(&self) -> SubspaceBasis<S> {
        SubspaceBasis::from_vectors(self.rows, self.data.iter().cloned())
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec<S>) -> Option<SparseVec<S>> {
        Solver::new(self).solve(b)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Matrix<S>> {
        if self.rows != self.cols {
            return None;
        }
        let solver = Solver::new(self);
        if solver.rank() != self.rows {
            return None;
        }
        let data = (0..self.rows).map(|i| solver.solve(&sparse::unit(i))).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.rows, data })
    }
}

/// Rank of the span of a family of sparse vectors.
pub fn rank_of_vectors<S: Scalar>(ambient: usize, vecs: impl IntoIterator<Item = SparseVec<S>>) -> usize {
    let mut ech = Echelon::new(ambient, PivotRule::SmallestBits);
    for v in vecs {
        ech.insert(v);
    }
    ech.rank()
}

/// Linearly independent vectors in reduced echelon form, sorted by pivot.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis<S> {
    pub ambient_dim: usize,
    pub vectors: Vec<SparseVec<S>>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> SubspaceBasis<S> {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim).map(sparse::unit).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vecs: impl IntoIterator<Item = SparseVec<S>>) -> Self {
        let mut ech = Echelon::new(ambient_dim, PivotRule::MinColumn);
        for v in vecs {
            ech.insert(v);
        }
        let (pivots, vectors) = ech.into_sorted();
        SubspaceBasis { ambient_dim, vectors, pivots }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn contains(&self, v: &SparseVec<S>) -> bool {
        let mut ech = Echelon::new(self.ambient_dim, PivotRule::MinColumn);
        for w in &self.vectors {
            ech.insert(w.clone());
        }
        ech.contains(v)
    }
}

#[derive(Debug, Clone)]
pub struct Rref<S> {
    pub rank: usize,
    pub row_basis: SubspaceBasis<S>,
    pub kernel_basis: SubspaceBasis<S>,
}

/// Row space and null space of `m`.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> Rref<S> {
    let row_basis = SubspaceBasis::from_vectors(m.cols(), m.row_vectors());
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; m.cols()];
    for p in &row_basis.pivots {
        is_pivot[*p] = true;
    }
    for f in (0..m.cols()).filter(|c| !is_pivot[*c]) {
        let mut v: SparseVec<S> = vec![(f, S::one())];
        for (p, row) in row_basis.pivots.iter().zip(&row_basis.vectors) {
            if let Some(x) = sparse::get(row, f) {
                v.push((*p, -x.clone()));
            }
        }
        v.sort_unstable_by_key(|e| e.0);
        kernel.push(v);
    }
    let kernel_basis = SubspaceBasis::from_vectors(m.cols(), kernel);
    Rref { rank: row_basis.dim(), row_basis, kernel_basis }
}

/// Quotient of `k^ambient_dim` by `sub`; returns its dimension and the projection matrix.
pub fn quotient<S: Scalar>(ambient_dim: usize, sub: &SubspaceBasis<S>) -> Result<(usize, Matrix<S>)> {
    if sub.ambient_dim != ambient_dim {
        return Err(Error::Shape("subspace lives in a different ambient space".into()));
    }
    let quo = Quotient::by_span(ambient_dim, sub.vectors.iter().cloned(), PivotRule::MinColumn);
    let data = (0..ambient_dim).map(|c| quo.project_unit(c)).collect();
    Ok((quo.dim(), Matrix::from_columns(quo.dim(), data)?))
}

/// `dim ker(d_n) - rank(d_np1)`, after checking `d_n * d_np1 = 0`.
pub fn homology_dim<S: Scalar>(d_n: &Matrix<S>, d_np1: &Matrix<S>) -> Result<usize> {
    if d_n.cols() != d_np1.rows() {
        return Err(Error::Shape(format!("d_n has {} columns, d_n+1 has {} rows", d_n.cols(), d_np1.rows())));
    }
    if !d_n.mul(d_np1)?.is_zero() {
        return Err(Error::NotAComplex { context: "homology_dim".into() });
    }
    Ok(d_n.cols() - d_n.rank() - d_np1.rank())
}

/// Solves `m x = b` repeatedly for a fixed `m`.
#[derive(Debug, Clone)]
pub struct Solver<S> {
    rows: usize,
    cols: usize,
    ech: Echelon<S>,
}

impl<S: Scalar> Solver<S> {
    pub fn new(m: &Matrix<S>) -> Self {
        let mut ech = Echelon::new(m.rows() + m.cols(), PivotRule::MinColumn);
        for (j, c) in m.columns().iter().enumerate() {
            let mut v = c.clone();
            v.push((m.rows() + j, S::one()));
            ech.insert(v);
        }
        Solver { rows: m.rows(), cols: m.cols(), ech }
    }

    pub fn rank(&self) -> usize {
        self.ech.pivots().iter().filter(|p| **p < self.rows).count()
    }

    pub fn solve(&self, b: &SparseVec<S>) -> Option<SparseVec<S>> {
        let r = self.ech.reduce(b.clone());
        if r.iter().any(|(i, _)| *i < self.rows) {
            return None;
        }
        Some(r.into_iter().map(|(i, x)| (i - self.rows, -x)).collect())
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}
