//! Quivers with relations and the normal-form basis of `kQ / <R>`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::based::{BasedAlgebra, BasisElem};
use crate::error::{Error, Result};
use crate::linalg::sparse::{Echelon, PivotRule, Quotient, SparseVec};
use crate::linalg::{parse_rational, Scalar};

pub const DEFAULT_MAX_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str]) -> Self {
        Quiver { vertices: vertices.iter().map(|s| s.to_string()).collect(), arrows: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.vertices.push(name.to_string());
        self.vertices.len() - 1
    }

    pub fn add_arrow(&mut self, name: &str, from: &str, to: &str) -> Result<usize> {
        let from = self.vertex(from)?;
        let to = self.vertex(to)?;
        self.arrows.push(Arrow { name: name.to_string(), from, to });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::MalformedRelation(format!("unknown arrow `{name}`")))
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Invalid(format!("duplicate name `{v}`")));
            }
        }
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::Invalid(format!("duplicate name `{}`", a.name)));
            }
            if a.from >= self.vertices.len() || a.to >= self.vertices.len() {
                return Err(Error::UnknownVertex(a.name.clone()));
            }
        }
        Ok(())
    }

    /// Label of a path given in traversal order; arrows are written right to left.
    pub fn path_label(&self, start: usize, arrows: &[usize]) -> String {
        if arrows.is_empty() {
            return self.vertices[start].clone();
        }
        arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A path in traversal order: `arrows[0]` is traversed first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].to)
    }

    fn key(&self) -> (usize, Vec<usize>, usize) {
        (self.arrows.len(), self.arrows.iter().rev().copied().collect(), self.start)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation<S> {
    /// Coefficients with paths in traversal order.
    pub terms: Vec<(S, Vec<usize>)>,
}

impl<S: Scalar> Relation<S> {
    /// Monomial relation from arrow names written right to left.
    pub fn monomial(q: &Quiver, written: &[&str]) -> Result<Self> {
        Self::from_written(q, &[(S::one(), written.to_vec())])
    }

    pub fn from_written(q: &Quiver, terms: &[(S, Vec<&str>)]) -> Result<Self> {
        let mut out = Vec::new();
        for (c, w) in terms {
            let mut p = w.iter().map(|n| q.arrow(n)).collect::<Result<Vec<_>>>()?;
            p.reverse();
            out.push((c.clone(), p));
        }
        Ok(Relation { terms: out })
    }

    /// Checks composability, length at least 2 and parallelism of all terms.
    pub fn check(&self, q: &Quiver) -> Result<(usize, usize)> {
        let mut ends: Option<(usize, usize)> = None;
        for (_, p) in &self.terms {
            let label = || q.path_label(0, p);
            if p.len() < 2 {
                return Err(Error::MalformedRelation(format!("term `{}` has length < 2", label())));
            }
            for w in p.windows(2) {
                if q.arrows[w[0]].to != q.arrows[w[1]].from {
                    return Err(Error::MalformedRelation(format!("term `{}` is not composable", label())));
                }
            }
            let e = (q.arrows[p[0]].from, q.arrows[*p.last().unwrap()].to);
            match ends {
                None => ends = Some(e),
                Some(x) if x != e => {
                    return Err(Error::MalformedRelation(format!("term `{}` is not parallel to the others", label())))
                }
                _ => {}
            }
        }
        ends.ok_or_else(|| Error::MalformedRelation("empty relation".into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation<S> {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Relation<S>>,
    pub max_len_cap: usize,
}

impl<S: Scalar> Presentation<S> {
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: Vec<Relation<S>>) -> Self {
        Presentation { name: name.into(), quiver, relations, max_len_cap: DEFAULT_MAX_LEN }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.max_len_cap = cap;
        self
    }

    /// Same presentation with arrows renumbered: new arrow `k` is old arrow `perm[k]`.
    pub fn permute_arrows(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; perm.len()];
        for (k, &old) in perm.iter().enumerate() {
            inv[old] = k;
        }
        let quiver = Quiver {
            vertices: self.quiver.vertices.clone(),
            arrows: perm.iter().map(|&old| self.quiver.arrows[old].clone()).collect(),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| Relation { terms: r.terms.iter().map(|(c, p)| (c.clone(), p.iter().map(|&a| inv[a]).collect())).collect() })
            .collect();
        Presentation { name: self.name.clone(), quiver, relations, max_len_cap: self.max_len_cap }
    }
}

fn paths_up_to(q: &Quiver, len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    let mut layer = all.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &layer {
            let end = p.end(q);
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.from == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { start: p.start, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by_key(|p| p.key());
    all
}

struct Truncated<'a> {
    q: &'a Quiver,
    len: usize,
    index: HashMap<Path, usize>,
}

impl Truncated<'_> {
    fn vector<S: Scalar>(&self, terms: impl IntoIterator<Item = (S, Path)>) -> SparseVec<S> {
        let mut acc = crate::linalg::Accum::new();
        for (c, p) in terms {
            if p.len() <= self.len {
                acc.add(self.index[&p], &c);
            }
        }
        acc.finish()
    }

    /// Products `a * v` and `v * a` for every arrow `a`, truncated.
    fn neighbours<S: Scalar>(&self, v: &SparseVec<S>, paths: &[Path]) -> Vec<SparseVec<S>> {
        let mut out = Vec::new();
        for (a, arrow) in self.q.arrows.iter().enumerate() {
            let left = v.iter().filter_map(|(i, c)| {
                let p = &paths[*i];
                (p.end(self.q) == arrow.from).then(|| {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    (c.clone(), Path { start: p.start, arrows })
                })
            });
            let lv = self.vector(left.collect::<Vec<_>>());
            if !lv.is_empty() {
                out.push(lv);
            }
            let right = v.iter().filter_map(|(i, c)| {
                let p = &paths[*i];
                (p.start == arrow.to).then(|| {
                    let mut arrows = vec![a];
                    arrows.extend(p.arrows.iter().copied());
                    (c.clone(), Path { start: arrow.from, arrows })
                })
            });
            let rv = self.vector(right.collect::<Vec<_>>());
            if !rv.is_empty() {
                out.push(rv);
            }
        }
        out
    }
}

/// Normal-form basis of `kQ / <R>` by truncated ideal closure.
pub fn compute_basis<S: Scalar>(p: &Presentation<S>) -> Result<BasedAlgebra<S>> {
    p.quiver.validate()?;
    for r in &p.relations {
        r.check(&p.quiver)?;
    }
    let q = &p.quiver;
    for len in 1..=p.max_len_cap {
        let paths = paths_up_to(q, len);
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let tr = Truncated { q, len, index };
        let mut ech: Echelon<S> = Echelon::new(paths.len(), PivotRule::MaxColumn);
        let mut queue = VecDeque::new();
        for r in &p.relations {
            let v = tr.vector(r.terms.iter().map(|(c, a)| (c.clone(), Path { start: q.arrows[a[0]].from, arrows: a.clone() })));
            if ech.insert(v.clone()).is_some() {
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in tr.neighbours(&v, &paths) {
                if ech.insert(w.clone()).is_some() {
                    queue.push_back(w);
                }
            }
        }
        let closes = paths
            .iter()
            .enumerate()
            .filter(|(_, x)| x.len() == len)
            .all(|(i, _)| ech.contains(&vec![(i, S::one())]));
        if !closes {
            continue;
        }
        let quot = Quotient::new(ech);
        let reps: Vec<usize> = quot.representatives().to_vec();
        let basis: Vec<BasisElem> = reps
            .iter()
            .map(|&i| {
                let x = &paths[i];
                BasisElem {
                    label: q.path_label(x.start, &x.arrows),
                    source: x.start,
                    target: x.end(q),
                    path: Some(x.arrows.clone()),
                }
            })
            .collect();
        let idempotents = (0..q.vertices.len()).map(|v| reps.iter().position(|&i| paths[i] == Path::trivial(v)).unwrap()).collect();
        return BasedAlgebra::new(p.name.clone(), q.vertices.clone(), basis, idempotents, |i, j| {
            // b_i * b_j traverses b_j first.
            let (pi, pj) = (&paths[reps[i]], &paths[reps[j]]);
            if pi.len() + pj.len() > len {
                return Vec::new();
            }
            let mut arrows = pj.arrows.clone();
            arrows.extend(pi.arrows.iter().copied());
            quot.project_unit(tr.index[&Path { start: pj.start, arrows }])
        });
    }
    Err(Error::NotAdmissible { cap: p.max_len_cap })
}

/// Canonical JSON form of a presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default = "default_convention")]
    pub path_convention: String,
    #[serde(default)]
    pub name: Option<String>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
    #[serde(default)]
    pub max_len: Option<usize>,
}

fn default_convention() -> String {
    "right_to_left".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: String,
    pub path: Vec<String>,
}

impl PresentationFile {
    pub fn to_presentation<S: Scalar>(&self) -> Result<Presentation<S>> {
        if self.path_convention != "right_to_left" {
            return Err(Error::Invalid(format!("unsupported path convention `{}`", self.path_convention)));
        }
        let mut q = Quiver { vertices: self.vertices.clone(), arrows: Vec::new() };
        for a in &self.arrows {
            q.add_arrow(&a.name, &a.from, &a.to)?;
        }
        q.validate()?;
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for t in r {
                let c = parse_rational(&t.coeff)
                    .ok_or_else(|| Error::MalformedRelation(format!("bad coefficient `{}`", t.coeff)))?;
                let c = S::from_rational(&c)
                    .ok_or_else(|| Error::MalformedRelation(format!("coefficient `{}` is not defined here", t.coeff)))?;
                let names: Vec<&str> = t.path.iter().map(|s| s.as_str()).collect();
                terms.push((c, names));
            }
            relations.push(Relation::from_written(&q, &terms)?);
        }
        let mut p = Presentation::new(self.name.clone().unwrap_or_else(|| "A".into()), q, relations);
        if let Some(m) = self.max_len {
            p.max_len_cap = m;
        }
        Ok(p)
    }

    pub fn from_presentation<S: Scalar>(p: &Presentation<S>) -> Self {
        let q = &p.quiver;
        PresentationFile {
            path_convention: default_convention(),
            name: Some(p.name.clone()),
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowFile { name: a.name.clone(), from: q.vertices[a.from].clone(), to: q.vertices[a.to].clone() })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermFile {
                            coeff: c.to_string(),
                            path: path.iter().rev().map(|&a| q.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            max_len: Some(p.max_len_cap),
        }
    }
}

/// Parses a presentation in the canonical JSON format.
pub fn parse_presentation<S: Scalar>(json: &str) -> Result<Presentation<S>> {
    let f: PresentationFile = serde_json::from_str(json).map_err(|e| Error::Invalid(e.to_string()))?;
    f.to_presentation()
}
