use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Accum, Echelon, PivotRule, SparseVec};
use crate::linalg::{Matrix, Scalar, Solver};

/// Basis element `b = e_target * b * e_source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub source: usize,
    pub target: usize,
    /// Arrow indices in traversal order when the element is a path of a quiver.
    pub path: Option<Vec<usize>>,
}

/// Expression of a basis element as a combination of generator words.
type WordExpr<S> = Vec<(S, Vec<usize>)>;

/// Finite-dimensional algebra with a Peirce-homogeneous basis and structure constants.
#[derive(Debug, Clone)]
pub struct BasedAlgebra<S> {
    pub name: String,
    pub vertices: Vec<String>,
    pub basis: Vec<BasisElem>,
    idempotents: Vec<usize>,
    table: Vec<SparseVec<S>>,
    generators: Vec<usize>,
    words: Option<Vec<WordExpr<S>>>,
}

impl<S: Scalar> BasedAlgebra<S> {
    /// `products(i, j)` must return the coordinates of `b_i * b_j`.
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        idempotents: Vec<usize>,
        mut products: impl FnMut(usize, usize) -> SparseVec<S>,
    ) -> Result<Self> {
        let n = basis.len();
        if idempotents.len() != vertices.len() {
            return Err(Error::Invalid("one idempotent per vertex is required".into()));
        }
        for (v, &e) in idempotents.iter().enumerate() {
            if e >= n || basis[e].source != v || basis[e].target != v {
                return Err(Error::Invalid(format!("idempotent of vertex {} is mistagged", vertices[v])));
            }
        }
        for b in &basis {
            if b.source >= vertices.len() || b.target >= vertices.len() {
                return Err(Error::Invalid(format!("basis element {} has an unknown tag", b.label)));
            }
        }
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if basis[i].source != basis[j].target {
                    continue;
                }
                let p = products(i, j);
                for (k, _) in &p {
                    if basis[*k].target != basis[i].target || basis[*k].source != basis[j].source {
                        return Err(Error::Invalid(format!(
                            "product {}*{} leaves its Peirce block",
                            basis[i].label, basis[j].label
                        )));
                    }
                }
                table[i * n + j] = p;
            }
        }
        let mut alg = BasedAlgebra { name: name.into(), vertices, basis, idempotents, table, generators: Vec::new(), words: None };
        alg.generators = alg.find_generators();
        alg.words = alg.find_words();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Basis index of the idempotent of vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.idempotents[self.basis[i].source] == i
    }

    /// Coordinates of `b_i * b_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.table[i * self.dim() + j]
    }

    pub fn multiply(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accum::new();
        for (i, a) in x {
            for (j, b) in y {
                let p = self.mul_basis(*i, *j);
                if !p.is_empty() {
                    acc.add_scaled(p, &a.mul_ref(b));
                }
            }
        }
        acc.finish()
    }

    pub fn unit(&self) -> SparseVec<S> {
        let mut v: SparseVec<S> = self.idempotents.iter().map(|&e| (e, S::one())).collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    /// Basis indices of the Peirce block `y A x` for vertex sets `ys`, `xs`.
    pub fn block(&self, ys: &[usize], xs: &[usize]) -> Vec<usize> {
        (0..self.dim()).filter(|&i| ys.contains(&self.basis[i].target) && xs.contains(&self.basis[i].source)).collect()
    }

    /// `dim Λ e_v`.
    pub fn projective_dim(&self, v: usize) -> usize {
        self.basis.iter().filter(|b| b.source == v).count()
    }

    pub fn block_dim(&self, y: usize, x: usize) -> usize {
        self.basis.iter().filter(|b| b.target == y && b.source == x).count()
    }

    /// Non-idempotent basis elements.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.is_idempotent(i)).collect()
    }

    /// Radical basis elements spanning `rad / rad^2`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Idempotents followed by radical generators; module actions are stored in this order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut g = self.idempotents.clone();
        g.extend(self.generators.iter().copied());
        g
    }

    fn find_generators(&self) -> Vec<usize> {
        let rad = self.radical_basis();
        let mut ech = Echelon::new(self.dim(), PivotRule::MinColumn);
        for &i in &rad {
            for &j in &rad {
                let p = self.mul_basis(i, j);
                if !p.is_empty() {
                    ech.insert(p.clone());
                }
            }
        }
        let mut gens = Vec::new();
        for &i in &rad {
            if ech.insert(sparse::unit(i)).is_some() {
                gens.push(i);
            }
        }
        gens
    }

    /// Writes each basis element as a combination of products of the generating set.
    fn find_words(&self) -> Option<Vec<WordExpr<S>>> {
        let gens = self.generating_set();
        let mut ech = Echelon::new(self.dim(), PivotRule::MinColumn);
        let mut kept: Vec<(Vec<usize>, SparseVec<S>)> = Vec::new();
        let mut frontier: Vec<(Vec<usize>, SparseVec<S>)> = Vec::new();
        for (k, &g) in gens.iter().enumerate() {
            let v = sparse::unit(g);
            if ech.insert(v.clone()).is_some() {
                kept.push((vec![k], v.clone()));
                frontier.push((vec![k], v));
            }
        }
        let first_gen = self.idempotents.len();
        while !frontier.is_empty() && ech.rank() < self.dim() {
            let mut next = Vec::new();
            for (w, v) in &frontier {
                for k in first_gen..gens.len() {
                    let prod = self.multiply(&sparse::unit(gens[k]), v);
                    if prod.is_empty() {
                        continue;
                    }
                    if ech.insert(prod.clone()).is_some() {
                        let mut w2 = vec![k];
                        w2.extend(w.iter().copied());
                        kept.push((w2.clone(), prod.clone()));
                        next.push((w2, prod));
                    }
                }
            }
            frontier = next;
        }
        if ech.rank() < self.dim() {
            return None;
        }
        let m = Matrix::from_columns(self.dim(), kept.iter().map(|(_, v)| v.clone()).collect()).ok()?;
        let solver = Solver::new(&m);
        let mut words = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let x = solver.solve(&sparse::unit(i))?;
            words.push(x.into_iter().map(|(k, c)| (c, kept[k].0.clone())).collect());
        }
        Some(words)
    }

    /// Combination of generator words equal to `b_i`; `None` if the generating set does not generate.
    pub fn word_expression(&self, i: usize) -> Option<&WordExpr<S>> {
        self.words.as_ref().map(|w| &w[i])
    }

    pub fn is_generated(&self) -> bool {
        self.words.is_some()
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    if self.basis[j].source != self.basis[k].target {
                        continue;
                    }
                    let left = self.multiply(ij, &sparse::unit(k));
                    let right = self.multiply(&sparse::unit(i), self.mul_basis(j, k));
                    if left != right {
                        return Err(Error::Invalid(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i].label, self.basis[j].label, self.basis[k].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that idempotents are orthogonal, sum to the unit and tag every basis element.
    pub fn check_unit(&self) -> Result<()> {
        let one = self.unit();
        for (v, &e) in self.idempotents.iter().enumerate() {
            for (w, &f) in self.idempotents.iter().enumerate() {
                let p = self.mul_basis(e, f);
                let expect = if v == w { sparse::unit(e) } else { Vec::new() };
                if *p != expect {
                    return Err(Error::Invalid("idempotents are not orthogonal".into()));
                }
            }
        }
        for i in 0..self.dim() {
            let x = sparse::unit(i);
            if self.multiply(&one, &x) != x || self.multiply(&x, &one) != x {
                return Err(Error::Invalid(format!("unit fails on {}", self.basis[i].label)));
            }
            let t = sparse::unit(self.idempotents[self.basis[i].target]);
            let s = sparse::unit(self.idempotents[self.basis[i].source]);
            if self.multiply(&t, &x) != x || self.multiply(&x, &s) != x {
                return Err(Error::Invalid(format!("{} is not Peirce homogeneous", self.basis[i].label)));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check_unit()?;
        self.check_associative()
    }

    /// The corner algebra `x A x` for the vertex set `group`.
    pub fn corner_subalgebra(&self, group: &[usize]) -> Result<BasedAlgebra<S>> {
        if group.is_empty() {
            return Err(Error::Invalid("empty vertex group".into()));
        }
        let mut group = group.to_vec();
        group.sort_unstable();
        group.dedup();
        let vmap: HashMap<usize, usize> = group.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| vmap.contains_key(&self.basis[i].source) && vmap.contains_key(&self.basis[i].target))
            .collect();
        let bmap: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let basis = keep
            .iter()
            .map(|&i| {
                let b = &self.basis[i];
                BasisElem { label: b.label.clone(), source: vmap[&b.source], target: vmap[&b.target], path: b.path.clone() }
            })
            .collect();
        let vertices = group.iter().map(|&v| self.vertices[v].clone()).collect();
        let idempotents = group.iter().map(|&v| bmap[&self.idempotents[v]]).collect();
        let name = format!("{}[{}]", self.name, group.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join(","));
        BasedAlgebra::new(name, vertices, basis, idempotents, |i, j| {
            self.mul_basis(keep[i], keep[j]).iter().map(|(k, x)| (bmap[k], x.clone())).collect()
        })
    }

    /// Direct product of two algebras, vertices of `self` first.
    pub fn product(&self, other: &BasedAlgebra<S>) -> Result<BasedAlgebra<S>> {
        let (n1, v1) = (self.dim(), self.num_vertices());
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(|b| BasisElem {
            label: b.label.clone(),
            source: b.source + v1,
            target: b.target + v1,
            path: None,
        }));
        for b in basis.iter_mut().take(n1) {
            b.path = None;
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut idempotents = self.idempotents.clone();
        idempotents.extend(other.idempotents.iter().map(|e| e + n1));
        let name = format!("{}x{}", self.name, other.name);
        BasedAlgebra::new(name, vertices, basis, idempotents, |i, j| {
            if i < n1 && j < n1 {
                self.mul_basis(i, j).clone()
            } else if i >= n1 && j >= n1 {
                other.mul_basis(i - n1, j - n1).iter().map(|(k, x)| (k + n1, x.clone())).collect()
            } else {
                Vec::new()
            }
        })
    }

    /// The ground field as a one-vertex algebra.
    pub fn field(vertex: &str) -> BasedAlgebra<S> {
        let basis = vec![BasisElem { label: vertex.to_string(), source: 0, target: 0, path: Some(Vec::new()) }];
        BasedAlgebra::new("k", vec![vertex.to_string()], basis, vec![0], |_, _| sparse::unit(0))
            .expect("the field is a valid algebra")
    }

    /// Semisimple algebra `k^n` with the given vertex names.
    pub fn semisimple(names: &[&str]) -> BasedAlgebra<S> {
        let basis = names
            .iter()
            .enumerate()
            .map(|(v, n)| BasisElem { label: n.to_string(), source: v, target: v, path: Some(Vec::new()) })
            .collect();
        let vertices = names.iter().map(|s| s.to_string()).collect();
        BasedAlgebra::new("k^n", vertices, basis, (0..names.len()).collect(), |i, _| sparse::unit(i))
            .expect("semisimple algebra is valid")
    }

    /// Element labels, for reports.
    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|b| b.label.clone()).collect()
    }
}
