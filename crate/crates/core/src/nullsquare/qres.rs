use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::NullSquare;
use crate::algebra::BasedAlgebra;
use crate::bimodule::{Bimodule, Tensor};
use crate::error::{Error, Result};
use crate::linalg::sparse::{self, Accum, SparseVec};
use crate::linalg::{Matrix, Scalar};
use crate::module::{minimal_resolution, Length, LeftModule, ResolutionReport};

/// Summand of `Q_m`: `A(i, j) = Λ1_A ⊗_A (NM)^i P_j` in degree `2i + j`, or
/// `B(i, j) = Λ1_B ⊗_B M(NM)^i P_j` in degree `2i + j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QSummand {
    pub kind: char,
    pub i: usize,
    pub j: usize,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct QResolution<S> {
    pub report: ResolutionReport<S>,
    /// Least `r` with `(N ⊗_B M)^{⊗_A (r+1)} = 0`.
    pub r: usize,
    /// Length of the A-resolution.
    pub l: usize,
    pub summands: Vec<Vec<QSummand>>,
    /// Dimensions of `Q_m` for `m = 0..=2r + l + 1`.
    pub dims: Vec<usize>,
    pub all_projective: bool,
}

impl<S: Scalar> QResolution<S> {
    pub fn bound(&self) -> usize {
        2 * self.r + self.l
    }

    pub fn vanishes_beyond_bound(&self) -> bool {
        self.dims.iter().skip(self.bound() + 1).all(|&d| d == 0)
    }
}

/// Powers larger than this are not formed; the search stops with an error instead.
pub const NM_POWER_DIM_LIMIT: usize = 4096;

/// Least `r` with `(N ⊗_B M)^{⊗_A (r+1)} = 0`, searched up to `cap` or until a power
/// exceeds [`NM_POWER_DIM_LIMIT`].
pub fn nm_nilpotency<S: Scalar>(ns: &NullSquare<S>, cap: usize) -> Result<usize> {
    let nm = Tensor::new(&ns.n, &ns.m)?.module;
    let mut power = nm.clone();
    for r in 0..=cap {
        if power.is_zero() {
            return Ok(r);
        }
        if r == cap || power.dim() * nm.dim() > NM_POWER_DIM_LIMIT {
            return Err(Error::TensorPowersDoNotVanish { searched: r + 1, dim: power.dim() });
        }
        power = Tensor::new(&power, &nm)?.module;
    }
    unreachable!()
}

pub fn q_resolution<S: Scalar>(ns: &NullSquare<S>, x: &LeftModule<S>, cap: usize) -> Result<QResolution<S>> {
    let p = minimal_resolution(x, cap, "P")?;
    q_resolution_from(ns, x, &p, cap)
}

/// `Q_• → (X ⇌ 0)` built from a finite A-resolution `P_• → X`.
pub fn q_resolution_from<S: Scalar>(
    ns: &NullSquare<S>,
    x: &LeftModule<S>,
    p: &ResolutionReport<S>,
    cap: usize,
) -> Result<QResolution<S>> {
    let l = p.length.finite().ok_or(Error::NoFiniteResolution { cap })?;
    let r = nm_nilpotency(ns, cap)?;
    let lam = &ns.lambda;
    let k = Arc::new(BasedAlgebra::field("k"));
    let ident = |n: usize| Matrix::<S>::identity(n);

    // X[i][j] = (NM)^i P_j and Y[i][j] = M X[i][j] with the maps induced by p.
    let rows = r + 2;
    let mut xs: Vec<Vec<Bimodule<S>>> = vec![p.terms.iter().map(|t| t.to_bimodule(k.clone())).collect()];
    let mut ys: Vec<Vec<Tensor<S>>> = Vec::new();
    let mut xt: Vec<Vec<Option<Tensor<S>>>> = vec![vec![None; l + 1]];
    for i in 0..rows {
        let y_row: Vec<Tensor<S>> = xs[i].iter().map(|xij| Tensor::new(&ns.m, xij)).collect::<Result<_>>()?;
        if i + 1 < rows {
            let x_next: Vec<Tensor<S>> = y_row.iter().map(|y| Tensor::new(&ns.n, &y.module)).collect::<Result<_>>()?;
            xs.push(x_next.iter().map(|t| t.module.clone()).collect());
            xt.push(x_next.into_iter().map(Some).collect());
        }
        ys.push(y_row);
    }
    let mut fx: Vec<Vec<Option<Matrix<S>>>> = vec![vec![None; l + 1]; rows];
    let mut fy: Vec<Vec<Option<Matrix<S>>>> = vec![vec![None; l + 1]; rows];
    for i in 0..rows {
        for j in 1..=l {
            let f = if i == 0 {
                p.differentials[j - 1].clone()
            } else {
                let (src, dst) = (xt[i][j].as_ref().unwrap(), xt[i][j - 1].as_ref().unwrap());
                src.map(&ident(ns.n.dim()), fy[i - 1][j].as_ref().unwrap(), dst)?
            };
            fy[i][j] = Some(ys[i][j].map(&ident(ns.m.dim()), &f, &ys[i][j - 1])?);
            fx[i][j] = Some(f);
        }
    }

    let le = ns.lambda_e();
    let lf = ns.lambda_f();
    let all: Vec<usize> = (0..lam.num_vertices()).collect();
    let nva = ns.a.num_vertices();
    let le_keep = lam.block(&all, &(0..nva).collect::<Vec<_>>());
    let lf_keep = lam.block(&all, &(nva..lam.num_vertices()).collect::<Vec<_>>());
    let le_pos: HashMap<usize, usize> = le_keep.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let lf_pos: HashMap<usize, usize> = lf_keep.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    let le_unit: SparseVec<S> = ns.a.idempotents().iter().map(|&e| (le_pos[&e], S::one())).collect();
    let lf_unit: SparseVec<S> = ns.b.idempotents().iter().map(|&e| (lf_pos[&(e + ns.a.dim())], S::one())).collect();
    let (da, db, dm, _) = ns.dims();

    let mut a_ind: HashMap<(usize, usize), Tensor<S>> = HashMap::new();
    let mut b_ind: HashMap<(usize, usize), Tensor<S>> = HashMap::new();
    for i in 0..rows {
        for j in 0..=l {
            a_ind.insert((i, j), Tensor::new(&le, &xs[i][j])?);
            b_ind.insert((i, j), Tensor::new(&lf, &ys[i][j].module)?);
        }
    }

    // Summands of Q_m in a fixed order with their offsets.
    let top = 2 * r + l + 1;
    let layout = |m: usize| -> Vec<(char, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..rows {
            for j in 0..=l {
                if 2 * i + j == m {
                    out.push(('A', i, j));
                }
                if 2 * i + j + 1 == m {
                    out.push(('B', i, j));
                }
            }
        }
        out
    };
    let module_of = |s: &(char, usize, usize)| -> &Bimodule<S> {
        match s.0 {
            'A' => &a_ind[&(s.1, s.2)].module,
            _ => &b_ind[&(s.1, s.2)].module,
        }
    };
    let mut qs: Vec<Bimodule<S>> = Vec::new();
    let mut offsets: Vec<HashMap<(char, usize, usize), usize>> = Vec::new();
    let mut summands = Vec::new();
    for m in 0..=top {
        let lay = layout(m);
        let parts: Vec<&Bimodule<S>> = lay.iter().map(module_of).collect();
        let mut off = HashMap::new();
        let mut acc = 0;
        for (s, b) in lay.iter().zip(&parts) {
            off.insert(*s, acc);
            acc += b.dim();
        }
        summands.push(lay.iter().zip(&parts).map(|(s, b)| QSummand { kind: s.0, i: s.1, j: s.2, dim: b.dim() }).collect());
        qs.push(if parts.is_empty() { Bimodule::zero(lam.clone(), k.clone()) } else { Bimodule::direct_sum(&parts)? });
        offsets.push(off);
    }
    let shift = |v: SparseVec<S>, o: usize| -> SparseVec<S> { v.into_iter().map(|(i, c)| (i + o, c)).collect() };

    // Image of the generator 1 ⊗ z of a summand of Q_m in Q_{m-1}.
    let gen_image = |m: usize, s: &(char, usize, usize), z: usize| -> SparseVec<S> {
        let (kind, i, j) = *s;
        let off = &offsets[m - 1];
        let mut out = Accum::new();
        if kind == 'A' {
            if j >= 1 {
                let t = &a_ind[&(i, j - 1)];
                let v = t.project(&le_unit, fx[i][j].as_ref().unwrap().column(z));
                out.add_scaled(&shift(v, off[&('A', i, j - 1)]), &S::one());
            }
            if i >= 1 {
                // z = n ⊗ y with y in Y[i-1][j]; image n · (1 ⊗ y).
                let (n, y) = xt[i][j].as_ref().unwrap().rep(z);
                let t = &b_ind[&(i - 1, j)];
                let v = t.project_pair(lf_pos[&(da + db + dm + n)], y);
                out.add_scaled(&shift(v, off[&('B', i - 1, j)]), &S::one());
            }
        } else {
            if j >= 1 {
                let t = &b_ind[&(i, j - 1)];
                let v = t.project(&lf_unit, fy[i][j].as_ref().unwrap().column(z));
                out.add_scaled(&shift(v, off[&('B', i, j - 1)]), &-S::one());
            }
            // z = m ⊗ x with x in X[i][j]; image m · (1 ⊗ x).
            let (mm, xx) = ys[i][j].rep(z);
            let t = &a_ind[&(i, j)];
            let v = t.project_pair(le_pos[&(da + db + mm)], xx);
            out.add_scaled(&shift(v, off[&('A', i, j)]), &S::one());
        }
        out.finish()
    };

    let mut diffs = Vec::new();
    for m in 1..=top {
        let lay = layout(m);
        let mut cols = Vec::with_capacity(qs[m].dim());
        for s in &lay {
            let (t, keep) = match s.0 {
                'A' => (&a_ind[&(s.1, s.2)], &le_keep),
                _ => (&b_ind[&(s.1, s.2)], &lf_keep),
            };
            for kk in 0..t.dim() {
                let (lam_b, z) = t.rep(kk);
                let g = gen_image(m, s, z);
                cols.push(qs[m - 1].act_left(&sparse::unit(keep[lam_b]), &g));
            }
        }
        diffs.push(Matrix::from_columns(qs[m - 1].dim(), cols)?);
    }

    // Augmentation onto (X ⇌ 0).
    let x_lam = LeftModule::new(lam.clone(), x.tags.clone(), |g, z| {
        if g < da {
            x.act(g, &sparse::unit(z))
        } else {
            Vec::new()
        }
    })?;
    let t00 = &a_ind[&(0, 0)];
    let aug_cols = (0..t00.dim())
        .map(|kk| {
            let (lam_b, z) = t00.rep(kk);
            x_lam.act(le_keep[lam_b], p.augmentation.column(z))
        })
        .collect();
    let augmentation = Matrix::from_columns(x.dim(), aug_cols)?;

    let dims: Vec<usize> = qs.iter().map(|q| q.dim()).collect();
    let last = dims.iter().rposition(|&d| d > 0).unwrap_or(0);
    let terms: Vec<LeftModule<S>> = qs[..=last].iter().map(LeftModule::from_bimodule).collect::<Result<_>>()?;
    for (m, d) in diffs.iter().enumerate().take(last) {
        if !terms[m + 1].is_morphism(&terms[m], d) {
            return Err(Error::IdentityFailure { degree: m + 1, detail: "differential is not Λ-linear".into() });
        }
    }
    let all_projective = terms.iter().all(|t| t.is_projective());
    let multiplicities = terms
        .iter()
        .map(|t| t.projective_cover().map(|c| c.vertices))
        .collect::<Result<Vec<_>>>()?;
    let report = ResolutionReport {
        label: format!("Q({})", ns.name),
        terms,
        multiplicities,
        augmentation,
        differentials: diffs.into_iter().take(last).collect(),
        length: Length::Finite { length: last },
        periodic: false,
        target_dim: x.dim(),
    };
    Ok(QResolution { report, r, l, summands, dims, all_projective })
}
