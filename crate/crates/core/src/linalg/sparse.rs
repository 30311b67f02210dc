//! Sparse vectors and an incremental echelon basis.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::Scalar;

/// Sorted `(index, value)` pairs without zero values.
pub type SparseVec<S> = Vec<(usize, S)>;

pub fn unit<S: Scalar>(i: usize) -> SparseVec<S> {
    vec![(i, S::one())]
}

pub fn scale<S: Scalar>(v: &SparseVec<S>, a: &S) -> SparseVec<S> {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul_ref(a))).collect()
}

/// Returns `y + a * x`.
pub fn axpy<S: Scalar>(y: &SparseVec<S>, a: &S, x: &SparseVec<S>) -> SparseVec<S> {
    if a.is_zero() || x.is_empty() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut p, mut q) = (0, 0);
    while p < y.len() || q < x.len() {
        if q == x.len() || (p < y.len() && y[p].0 < x[q].0) {
            out.push(y[p].clone());
            p += 1;
        } else if p == y.len() || x[q].0 < y[p].0 {
            out.push((x[q].0, x[q].1.mul_ref(a)));
            q += 1;
        } else {
            let s = y[p].1.add_ref(&x[q].1.mul_ref(a));
            if !s.is_zero() {
                out.push((y[p].0, s));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

pub fn add<S: Scalar>(y: &SparseVec<S>, x: &SparseVec<S>) -> SparseVec<S> {
    axpy(y, &S::one(), x)
}

pub fn sub<S: Scalar>(y: &SparseVec<S>, x: &SparseVec<S>) -> SparseVec<S> {
    axpy(y, &(-S::one()), x)
}

pub fn get<S: Scalar>(v: &SparseVec<S>, i: usize) -> Option<&S> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}

pub fn to_dense<S: Scalar>(v: &SparseVec<S>, n: usize) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn from_dense<S: Scalar>(v: &[S]) -> SparseVec<S> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Unordered accumulator for building a sparse vector term by term.
#[derive(Debug, Clone)]
pub struct Accum<S> {
    map: HashMap<usize, S>,
}

impl<S: Scalar> Default for Accum<S> {
    fn default() -> Self {
        Accum { map: HashMap::new() }
    }
}

impl<S: Scalar> Accum<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, x: &S) {
        if x.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(y) => {
                *y = y.add_ref(x);
                if y.is_zero() {
                    self.map.remove(&i);
                }
            }
            None => {
                self.map.insert(i, x.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec<S>, a: &S) {
        if a.is_zero() {
            return;
        }
        for (i, x) in v {
            self.add(*i, &x.mul_ref(a));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn finish(self) -> SparseVec<S> {
        let mut v: SparseVec<S> = self.map.into_iter().collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Leading (smallest) column; yields the usual reduced row echelon form.
    MinColumn,
    /// Largest column; used for leading terms under a monomial order.
    MaxColumn,
    /// Entry of smallest bit size, ties broken by column.
    SmallestBits,
}

/// Incrementally built echelon basis of a subspace of `k^ncols`.
///
/// Each stored row has pivot entry 1 and contains no pivot column of an
/// earlier row.
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    ncols: usize,
    rule: PivotRule,
    rows: Vec<SparseVec<S>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize, rule: PivotRule) -> Self {
        Echelon { ncols, rule, rows: Vec::new(), pivots: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }

    pub fn stored_entries(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Removes every pivot column from `v` using the stored rows.
    pub fn reduce(&self, v: SparseVec<S>) -> SparseVec<S> {
        if self.rows.is_empty() || v.is_empty() {
            return v;
        }
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
        let mut queued: HashSet<usize> = HashSet::new();
        for (c, _) in &v {
            if let Some(&r) = self.pivot_row.get(c) {
                heap.push(Reverse(r));
                queued.insert(r);
            }
        }
        if heap.is_empty() {
            return v;
        }
        let mut acc: HashMap<usize, S> = v.into_iter().collect();
        while let Some(Reverse(r)) = heap.pop() {
            let p = self.pivots[r];
            let f = match acc.get(&p) {
                Some(f) => f.clone(),
                None => continue,
            };
            for (c, x) in &self.rows[r] {
                let delta = x.mul_ref(&f);
                let entry = acc.entry(*c).or_insert_with(S::zero);
                *entry = entry.sub_ref(&delta);
                if entry.is_zero() {
                    acc.remove(c);
                } else if *c != p {
                    if let Some(&r2) = self.pivot_row.get(c) {
                        if queued.insert(r2) {
                            heap.push(Reverse(r2));
                        }
                    }
                }
            }
        }
        let mut out: SparseVec<S> = acc.into_iter().collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    pub fn contains(&self, v: &SparseVec<S>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    fn choose_pivot(&self, v: &SparseVec<S>) -> usize {
        match self.rule {
            PivotRule::MinColumn => 0,
            PivotRule::MaxColumn => v.len() - 1,
            PivotRule::SmallestBits => {
                let mut best = 0;
                let mut best_bits = v[0].1.bit_size();
                for (k, (_, x)) in v.iter().enumerate().skip(1) {
                    let b = x.bit_size();
                    if b < best_bits {
                        best = k;
                        best_bits = b;
                    }
                }
                best
            }
        }
    }

    /// Adds `v` to the spanning set; returns its pivot column when independent.
    pub fn insert(&mut self, v: SparseVec<S>) -> Option<usize> {
        let v = self.reduce(v);
        if v.is_empty() {
            return None;
        }
        let k = self.choose_pivot(&v);
        let (p, inv) = (v[k].0, S::one().div_ref(&v[k].1));
        let row = scale(&v, &inv);
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        Some(p)
    }

    /// Back-substitutes so that every pivot column is zero outside its own row.
    pub fn make_reduced(&mut self) {
        for r in (0..self.rows.len()).rev() {
            let p = self.pivots[r];
            let row = std::mem::take(&mut self.rows[r]);
            let (piv, rest): (SparseVec<S>, SparseVec<S>) = row.into_iter().partition(|e| e.0 == p);
            let reduced = self.reduce(rest);
            let mut full = add(&piv, &reduced);
            full.sort_unstable_by_key(|e| e.0);
            self.rows[r] = full;
        }
    }

    /// Rows sorted by pivot column, after full reduction.
    pub fn into_sorted(mut self) -> (Vec<usize>, Vec<SparseVec<S>>) {
        self.make_reduced();
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&r| self.pivots[r]);
        let pivots = idx.iter().map(|&r| self.pivots[r]).collect();
        let mut rows: Vec<Option<SparseVec<S>>> = self.rows.into_iter().map(Some).collect();
        let rows = idx.iter().map(|&r| rows[r].take().unwrap()).collect();
        (pivots, rows)
    }
}

/// Quotient `k^n / W` with the non-pivot coordinates as basis.
#[derive(Debug, Clone)]
pub struct Quotient<S> {
    ech: Echelon<S>,
    free: Vec<usize>,
    free_index: HashMap<usize, usize>,
}

impl<S: Scalar> Quotient<S> {
    pub fn new(mut ech: Echelon<S>) -> Self {
        ech.make_reduced();
        let free: Vec<usize> = (0..ech.ncols()).filter(|c| !ech.is_pivot(*c)).collect();
        let free_index = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        Quotient { ech, free, free_index }
    }

    /// Quotient by the span of `gens` inside `k^n`.
    pub fn by_span(n: usize, gens: impl IntoIterator<Item = SparseVec<S>>, rule: PivotRule) -> Self {
        let mut ech = Echelon::new(n, rule);
        for g in gens {
            ech.insert(g);
        }
        Self::new(ech)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.ncols()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Ambient coordinates chosen as quotient basis, in increasing order.
    pub fn representatives(&self) -> &[usize] {
        &self.free
    }

    pub fn relations(&self) -> &Echelon<S> {
        &self.ech
    }

    pub fn project(&self, v: SparseVec<S>) -> SparseVec<S> {
        let r = self.ech.reduce(v);
        let mut out: SparseVec<S> = r.into_iter().map(|(c, x)| (self.free_index[&c], x)).collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    pub fn project_unit(&self, c: usize) -> SparseVec<S> {
        match self.free_index.get(&c) {
            Some(&k) => vec![(k, S::one())],
            None => self.project(vec![(c, S::one())]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let y = vec![(0, q(1)), (2, q(3))];
        let x = vec![(1, q(1)), (2, q(1))];
        assert_eq!(axpy(&y, &q(-3), &x), vec![(0, q(1)), (1, q(-3))]);
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let mut e = Echelon::new(3, PivotRule::SmallestBits);
        assert!(e.insert(vec![(0, q(1)), (1, q(2))]).is_some());
        assert!(e.insert(vec![(0, q(2)), (1, q(4))]).is_none());
        assert!(e.insert(vec![(1, q(1)), (2, q(1))]).is_some());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&vec![(0, q(1)), (1, q(3)), (2, q(1))]));
        assert!(!e.contains(&vec![(2, q(1))]));
    }

    #[test]
    fn max_column_pivots_are_leading_terms() {
        let mut e = Echelon::new(3, PivotRule::MaxColumn);
        e.insert(vec![(0, q(1)), (2, q(1))]);
        e.insert(vec![(1, q(1)), (2, q(1))]);
        let mut p = e.pivots().to_vec();
        p.sort();
        assert_eq!(p, vec![1, 2]);
    }

    #[test]
    fn quotient_projection() {
        let quo = Quotient::by_span(2, vec![vec![(0, q(1)), (1, q(1))]], PivotRule::MinColumn);
        assert_eq!(quo.dim(), 1);
        assert!(quo.project(vec![(0, q(1)), (1, q(1))]).is_empty());
        assert_eq!(quo.project_unit(0), vec![(0, q(-1))]);
    }
}
