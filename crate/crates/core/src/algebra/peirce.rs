//! Systems of idempotents and Peirce quivers.

use super::based::BasedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Partition of the vertex set; each group is the idempotent `sum of its trivial paths`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSystem {
    pub groups: Vec<Vec<usize>>,
}

impl IdempotentSystem {
    pub fn new(num_vertices: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; num_vertices];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::Invalid("empty idempotent group".into()));
            }
            for &v in g {
                if v >= num_vertices {
                    return Err(Error::Invalid(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::Invalid(format!("vertex {v} appears in two groups")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("idempotent system does not sum to the unit".into()));
        }
        Ok(IdempotentSystem { groups })
    }

    pub fn vertices(n: usize) -> Self {
        IdempotentSystem { groups: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn trivial(n: usize) -> Self {
        IdempotentSystem { groups: vec![(0..n).collect()] }
    }

    /// Parses `"e0,e1|e2"` style partitions by vertex name.
    pub fn parse<S: Scalar>(alg: &BasedAlgebra<S>, text: &str) -> Result<Self> {
        let groups = text
            .split('|')
            .map(|g| g.split(',').map(|v| alg.vertex_index(v.trim())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg.num_vertices(), groups)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Group index of every vertex.
    pub fn group_of(&self, num_vertices: usize) -> Vec<usize> {
        let mut g = vec![0; num_vertices];
        for (k, grp) in self.groups.iter().enumerate() {
            for &v in grp {
                g[v] = k;
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeirceQuiver {
    pub n: usize,
    /// Arrows `(x, y)` meaning `y A x != 0`.
    pub arrows: Vec<(usize, usize)>,
}

impl PeirceQuiver {
    pub fn from_arrows(n: usize, mut arrows: Vec<(usize, usize)>) -> Self {
        arrows.retain(|(x, y)| x != y);
        arrows.sort_unstable();
        arrows.dedup();
        PeirceQuiver { n, arrows }
    }

    fn in_degrees(&self, alive: &[bool]) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(x, y) in &self.arrows {
            if alive[x] && alive[y] {
                d[y] += 1;
            }
        }
        d
    }

    /// Topological order of the vertices, `None` when there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut alive = vec![true; self.n];
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let deg = self.in_degrees(&alive);
            let v = (0..self.n).find(|&v| alive[v] && deg[v] == 0)?;
            alive[v] = false;
            order.push(v);
        }
        Some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Acyclicity for a non-trivial system.
    pub fn is_e_triangular(&self) -> Result<bool> {
        if self.n < 2 {
            return Err(Error::TrivialSystem);
        }
        Ok(self.is_acyclic())
    }

    /// Lowest-index vertex with no incoming arrow.
    pub fn source_idempotent(&self) -> Result<usize> {
        if !self.is_acyclic() {
            return Err(Error::NoSource);
        }
        let deg = self.in_degrees(&vec![true; self.n]);
        (0..self.n).find(|&v| deg[v] == 0).ok_or(Error::NoSource)
    }

    /// The quiver with vertex `v` removed, remaining vertices renumbered in order.
    pub fn remove(&self, v: usize) -> PeirceQuiver {
        let re = |x: usize| if x > v { x - 1 } else { x };
        PeirceQuiver::from_arrows(
            self.n - 1,
            self.arrows.iter().filter(|(x, y)| *x != v && *y != v).map(|&(x, y)| (re(x), re(y))).collect(),
        )
    }
}

pub fn peirce_quiver<S: Scalar>(alg: &BasedAlgebra<S>, sys: &IdempotentSystem) -> PeirceQuiver {
    let g = sys.group_of(alg.num_vertices());
    let arrows = alg.basis.iter().map(|b| (g[b.source], g[b.target])).collect();
    PeirceQuiver::from_arrows(sys.len(), arrows)
}
