//! Dimension checks for the long exact sequence of a null-square projective algebra,
//! the decomposition over triangular systems, and the smoothness pipeline.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{peirce_quiver, BasedAlgebra, IdempotentSystem};
use crate::bimodule::{h0, Bimodule, Tensor, TensorChain};
use crate::error::{Error, Result};
use crate::hochschild::{hh_dims_with, Mode};
use crate::linalg::Scalar;
use crate::module::{is_smooth, Smoothness};
use crate::nm::tor_complex;
use crate::nullsquare::{matrix_model, nm_nilpotency, NullSquare, NullSquareSpec};

/// `dim HH_n` over the vertex system, normalized complex.
pub fn hh<S: Scalar>(alg: &Arc<BasedAlgebra<S>>, n_max: usize) -> Result<Vec<usize>> {
    let sys = IdempotentSystem::vertices(alg.num_vertices());
    Ok(hh_dims_with(alg, &sys, n_max, Mode::Normalized)?.dims)
}

#[derive(Debug, Clone, Serialize)]
pub struct LESRow {
    pub n: usize,
    pub hh_a: usize,
    pub hh_b: usize,
    pub hh_lambda: usize,
    /// `dim Tor_{n-1}(K¹_C(Λ), Λ)`, absent in degree 0.
    pub tor_prev: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LESReport {
    pub spec: String,
    pub rows: Vec<LESRow>,
    /// `Σ (−1)^n (HH_n(Λ) − HH_n(A) − HH_n(B))` against `Σ_{n ≥ 1} (−1)^n Tor_{n−1}`.
    pub alternating: (i64, i64),
    pub first_failure: Option<usize>,
}

impl LESReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn check(&self) -> Result<()> {
        match self.first_failure {
            None => Ok(()),
            Some(n) => {
                let r = &self.rows[n];
                Err(Error::IdentityFailure {
                    degree: n,
                    detail: format!(
                        "HH(Λ) = {}, HH(A) = {}, HH(B) = {}, Tor = {:?}",
                        r.hh_lambda, r.hh_a, r.hh_b, r.tor_prev
                    ),
                })
            }
        }
    }

    /// Human-readable table.
    pub fn table(&self) -> String {
        let mut s = format!("{:>3} {:>6} {:>6} {:>6} {:>8}  ok\n", "n", "HH(A)", "HH(B)", "HH(Λ)", "Tor_n-1");
        for r in &self.rows {
            let tor = r.tor_prev.map_or("-".to_string(), |t| t.to_string());
            s += &format!("{:>3} {:>6} {:>6} {:>6} {:>8}  {}\n", r.n, r.hh_a, r.hh_b, r.hh_lambda, tor, r.holds);
        }
        s
    }
}

pub fn les_table_for<S: Scalar>(ns: &NullSquare<S>, n_max: usize) -> Result<LESReport> {
    let (ha, hb, hl) = (hh(&ns.a, n_max)?, hh(&ns.b, n_max)?, hh(&ns.lambda, n_max)?);
    let tor = tor_complex(ns, n_max.saturating_sub(1))?.literal;
    let mut rows = Vec::with_capacity(n_max + 1);
    let (mut lhs, mut rhs) = (0i64, 0i64);
    for n in 0..=n_max {
        let tor_prev = (n >= 1).then(|| tor[n - 1]);
        let holds = hl[n] == ha[n] + hb[n] + tor_prev.unwrap_or(0);
        let sgn = if n % 2 == 0 { 1 } else { -1 };
        lhs += sgn * (hl[n] as i64 - ha[n] as i64 - hb[n] as i64);
        rhs += sgn * tor_prev.unwrap_or(0) as i64;
        rows.push(LESRow { n, hh_a: ha[n], hh_b: hb[n], hh_lambda: hl[n], tor_prev, holds });
    }
    let first_failure = rows.iter().position(|r| !r.holds);
    Ok(LESReport { spec: ns.name.clone(), rows, alternating: (lhs, rhs), first_failure })
}

pub fn les_table<S: Scalar>(spec: &NullSquareSpec<S>, n_max: usize) -> Result<LESReport> {
    les_table_for(&matrix_model(spec)?, n_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotChecked,
}

impl Verdict {
    fn of(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Link {
    pub step: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HanReport {
    pub spec: String,
    /// Degrees tested for vanishing of `HH_n(Λ)`.
    pub upper_window: (usize, usize),
    pub hh_lambda: Vec<usize>,
    pub links: Vec<Link>,
    pub smoothness: Vec<(String, Smoothness)>,
    pub hypothesis_met: bool,
    /// Every link after a met hypothesis holds.
    pub consistent: bool,
    pub conclusion: String,
}

/// Runs the chain: vanishing of high `HH(Λ)` ⇒ `(N ⊗_B M)^{⊗n} = 0` ⇒ `HH(Λ) = HH(A) ⊕ HH(B)`,
/// then smoothness of `A`, `B` and `Λ`.
pub fn han_check<S: Scalar>(spec: &NullSquareSpec<S>, n_max: usize, cap: usize) -> Result<HanReport> {
    let ns = matrix_model(spec)?;
    let (ha, hb, hl) = (hh(&ns.a, n_max)?, hh(&ns.b, n_max)?, hh(&ns.lambda, n_max)?);
    let window = (n_max.div_ceil(2).max(1), n_max);
    let hypothesis_met = (window.0..=window.1).all(|n| hl[n] == 0);
    let mut links = vec![Link {
        step: "hh_vanishes_in_upper_window",
        verdict: Verdict::of(hypothesis_met),
        detail: format!("HH_n(Λ) for n in {}..={}: {:?}", window.0, window.1, &hl[window.0..=window.1]),
    }];
    let nil = nm_nilpotency(&ns, cap);
    links.push(Link {
        step: "tensor_powers_vanish",
        verdict: Verdict::of(nil.is_ok()),
        detail: match &nil {
            Ok(r) => format!("(N ⊗_B M)^{{⊗{}}} = 0", r + 1),
            Err(e) => e.to_string(),
        },
    });
    let split = (0..=n_max).all(|n| hl[n] == ha[n] + hb[n]);
    links.push(Link {
        step: "hh_splits",
        verdict: Verdict::of(split),
        detail: format!("HH(A) = {ha:?}, HH(B) = {hb:?}, HH(Λ) = {hl:?}"),
    });
    let mut smoothness = Vec::new();
    for (name, alg) in [("A", &ns.a), ("B", &ns.b), ("Λ", &ns.lambda)] {
        smoothness.push((name.to_string(), is_smooth(alg, cap)?));
    }
    let (sa, sb, sl) = (smoothness[0].1.is_smooth(), smoothness[1].1.is_smooth(), smoothness[2].1.is_smooth());
    links.push(Link {
        step: "smooth_factors_give_smooth_lambda",
        verdict: if sa && sb && nil.is_ok() { Verdict::of(sl) } else { Verdict::NotChecked },
        detail: format!("A smooth: {sa}, B smooth: {sb}, Λ smooth: {sl}"),
    });
    let consistent = !hypothesis_met || links.iter().all(|l| l.verdict != Verdict::Fails);
    let conclusion = if !hypothesis_met {
        "hypothesis not met".to_string()
    } else if sl {
        "Λ smooth".to_string()
    } else if sa && sb {
        "chain broken: A and B smooth but Λ not found smooth".to_string()
    } else {
        "HH(Λ) vanishes in the window; A or B not found smooth within the cap".to_string()
    };
    Ok(HanReport {
        spec: spec.name.clone(),
        upper_window: window,
        hh_lambda: hl,
        links,
        smoothness,
        hypothesis_met,
        consistent,
        conclusion,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TriangularReport {
    pub algebra: String,
    pub groups: Vec<Vec<String>>,
    pub hh: Vec<usize>,
    pub corners: Vec<Vec<usize>>,
    pub holds: Vec<bool>,
    pub corner_smoothness: Vec<Smoothness>,
}

impl TriangularReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

/// `dim HH_n(Λ) = Σ_x dim HH_n(xΛx)` for an E-triangular system.
pub fn triangular_report<S: Scalar>(
    alg: &Arc<BasedAlgebra<S>>,
    sys: &IdempotentSystem,
    n_max: usize,
    cap: usize,
) -> Result<TriangularReport> {
    if !peirce_quiver(alg, sys).is_e_triangular()? {
        return Err(Error::NotTriangular);
    }
    let total = hh(alg, n_max)?;
    let mut corners = Vec::new();
    let mut corner_smoothness = Vec::new();
    for g in &sys.groups {
        let c = Arc::new(alg.corner_subalgebra(g)?);
        corners.push(hh(&c, n_max)?);
        corner_smoothness.push(is_smooth(&c, cap)?);
    }
    let holds = (0..=n_max).map(|n| total[n] == corners.iter().map(|c| c[n]).sum::<usize>()).collect();
    Ok(TriangularReport {
        algebra: alg.name.clone(),
        groups: sys.groups.iter().map(|g| g.iter().map(|&v| alg.vertices[v].clone()).collect()).collect(),
        hh: total,
        corners,
        holds,
        corner_smoothness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InducedH0 {
    /// `dim H_0(Λ, Λ ⊗_C U ⊗_C Λ)`.
    pub induced: usize,
    /// `dim H_0(C, U)`.
    pub h0_u: usize,
    /// `dim H_0(C, I ⊗_C U)`.
    pub h0_iu: usize,
}

impl InducedH0 {
    pub fn holds(&self) -> bool {
        self.induced == self.h0_u + self.h0_iu
    }
}

/// Both sides of `H_0(Λ, Λ ⊗_C U ⊗_C Λ) = H_0(C, U) ⊕ H_0(C, I ⊗_C U)` for a C-bimodule `U`.
pub fn induced_h0<S: Scalar>(ns: &NullSquare<S>, u: &Bimodule<S>) -> Result<InducedH0> {
    let chain = TensorChain::new(vec![Arc::new(ns.lambda_c_right()), Arc::new(u.clone()), Arc::new(ns.lambda_c_left())])?;
    let induced = h0(chain.module())?.dim;
    let h0_u = h0(u)?.dim;
    let iu = Tensor::new(&ns.i_bimodule(), u)?;
    let h0_iu = h0(&iu.module)?.dim;
    Ok(InducedH0 { induced, h0_u, h0_iu })
}
