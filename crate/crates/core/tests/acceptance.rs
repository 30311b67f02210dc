//! Acceptance suite. Every check is an exact equality of dimensions or matrices over `Q`;
//! each test writes one `PASS`/`FAIL` line straight to stdout so it shows up in captured runs.

mod common;

use std::io::Write;
use std::sync::Arc;

use nullsquare::algebra::{compute_basis, BasedAlgebra, IdempotentSystem, Presentation};
use nullsquare::bimodule::{h0, tensor_power_nm, Bimodule, Summand};
use nullsquare::corpus::{self, CrownReading};
use nullsquare::hochschild::hh_dims;
use nullsquare::les::{hh, induced_h0, les_table, les_table_for, triangular_report};
use nullsquare::module::{global_dimension, is_smooth, Length, LeftModule, Smoothness};
use nullsquare::nm::{build_nm_quiver, cyclic_spaces, h0_via_cycles, tor_complex};
use nullsquare::nullsquare::{
    check_presentation_model_iso, k1_complex, matrix_model, nm_nilpotency, q_resolution, NullSquare, NullSquareSpec,
};
use nullsquare::Q;

/// Hochschild degrees compared in the decomposition and LES checks.
const HH_DEGREES: usize = 4;
/// Tor degrees compared between the literal complex and the cyclic reduction.
const TOR_DEGREES: usize = 6;
/// Odd `n` up to this bound must have `I(n) = 0`.
const ODD_I_BOUND: usize = 7;
/// Random specs for the cycle decomposition, and the revolution numbers checked there.
const RANDOM_SPECS: u64 = 60;
const CYCLE_M: usize = 3;
/// Revolution numbers scanned for vertical balanced cycles.
const CV_SCAN: usize = 8;
/// K¹ degrees where `ds + sd = 1` is checked.
const K1_DEGREES: usize = 4;
/// Resolution cap for smoothness verdicts.
const SMOOTH_CAP: usize = 24;
/// Random C-bimodules for the induced H_0 identity.
const RANDOM_U: u64 = 12;

fn report(name: &str, ok: bool, detail: &str) {
    let line = format!("[{}] {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(ok, "{name}: {detail}");
}

fn alg(p: &Presentation<Q>) -> Arc<BasedAlgebra<Q>> {
    Arc::new(compute_basis(p).unwrap())
}

fn corner(name: &str, a: Presentation<Q>, b: Presentation<Q>, m: impl Fn(&Arc<BasedAlgebra<Q>>, &Arc<BasedAlgebra<Q>>) -> Bimodule<Q>) -> NullSquare<Q> {
    let (a, b) = (alg(&a), alg(&b));
    let m = m(&b, &a);
    NullSquare::from_bimodules(name, a.clone(), b.clone(), m, Bimodule::zero(a, b)).unwrap()
}

fn summand(left: usize, right: usize, mult: usize) -> Summand {
    Summand { left, right, mult }
}

#[test]
fn corner_decomposition() {
    let crown = || corpus::crown::<Q>(CrownReading::Composable);
    let cases = vec![
        corner("crown|k proj", crown(), corpus::point("w"), |b, a| Bimodule::projective(b.clone(), a.clone(), &[summand(0, 1, 1)]).unwrap()),
        corner("kronecker|k simple", corpus::kronecker(), corpus::point("w"), |b, a| Bimodule::simple(b.clone(), a.clone(), 0, 1)),
        corner("crown|A2 simple", crown(), corpus::linear(2, "q", false), |b, a| Bimodule::simple(b.clone(), a.clone(), 1, 2)),
        corner("2cycle|dual simple", corpus::two_cycle(), corpus::dual_numbers("o"), |b, a| Bimodule::simple(b.clone(), a.clone(), 0, 0)),
        corner("A3rad2|kronecker proj", corpus::linear(3, "t", true), corpus::kronecker(), |b, a| {
            Bimodule::projective(b.clone(), a.clone(), &[summand(1, 0, 2)]).unwrap()
        }),
        corner("A2|A2 proj", corpus::linear(2, "p", false), corpus::linear(2, "q", false), |b, a| {
            Bimodule::projective(b.clone(), a.clone(), &[summand(0, 1, 1)]).unwrap()
        }),
    ];
    let mut bad = Vec::new();
    for ns in &cases {
        let (ha, hb, hl) = (hh(&ns.a, HH_DEGREES).unwrap(), hh(&ns.b, HH_DEGREES).unwrap(), hh(&ns.lambda, HH_DEGREES).unwrap());
        if (0..=HH_DEGREES).any(|n| hl[n] != ha[n] + hb[n]) {
            bad.push(format!("{}: {hl:?} vs {ha:?} + {hb:?}", ns.name));
        }
    }
    let simple_cases = 3;
    report(
        "corner decomposition HH_n(Λ) = HH_n(A) + HH_n(B), n ≤ 4",
        bad.is_empty(),
        &format!("{} corner algebras ({simple_cases} with simple M); failures {bad:?}", cases.len()),
    );
}

#[test]
fn triangular_decomposition() {
    let corner_alg = matrix_model(&corpus::corner_spec::<Q>(
        corpus::crown(CrownReading::Composable),
        corpus::point("w"),
        vec![summand(0, 1, 1)],
    ))
    .unwrap()
    .lambda;
    let cyc = alg(&corpus::cycle_then_arrow().unwrap());
    let cases: Vec<(Arc<BasedAlgebra<Q>>, IdempotentSystem)> = vec![
        (alg(&corpus::linear(3, "t", false)), IdempotentSystem::vertices(3)),
        (cyc.clone(), IdempotentSystem::new(3, vec![vec![0, 1], vec![2]]).unwrap()),
        (corner_alg, IdempotentSystem::new(4, vec![vec![0, 1, 2], vec![3]]).unwrap()),
        (alg(&corpus::commutative_square().unwrap()), IdempotentSystem::new(4, vec![vec![0], vec![1, 2], vec![3]]).unwrap()),
    ];
    let mut bad = Vec::new();
    for (a, sys) in &cases {
        match triangular_report(a, sys, HH_DEGREES, SMOOTH_CAP) {
            Ok(r) if r.all_hold() => {}
            Ok(r) => bad.push(format!("{}: {:?} vs {:?}", a.name, r.hh, r.corners)),
            Err(e) => bad.push(format!("{}: {e}", a.name)),
        }
    }
    report(
        "E-triangular decomposition HH_n(Λ) = Σ_x HH_n(xΛx), n ≤ 4",
        bad.is_empty(),
        &format!("{} algebras with |E| in {{2,3}}, one with a 2-cycle inside a block; failures {bad:?}", cases.len()),
    );
}

#[test]
fn les_identity() {
    let specs = corpus::nullsquare_corpus::<Q>();
    let mut bad = Vec::new();
    for s in &specs {
        let r = les_table(s, HH_DEGREES).unwrap();
        if !r.holds() || r.alternating.0 != r.alternating.1 {
            bad.push(format!("{}\n{}", s.name, r.table()));
        }
    }
    report(
        "LES identity HH_n(Λ) = HH_n(A) + HH_n(B) + Tor_{n-1}, n ≤ 4, and degree 0",
        bad.is_empty(),
        &format!("{} null-square projective specs; failures {bad:?}", specs.len()),
    );
}

#[test]
fn tor_two_ways() {
    let specs = corpus::nullsquare_corpus::<Q>();
    let mut bad = Vec::new();
    for s in &specs {
        let ns = matrix_model(s).unwrap();
        match tor_complex(&ns, TOR_DEGREES) {
            Ok(t) => {
                if t.literal != t.reduced {
                    bad.push(format!("{}: {:?} vs {:?}", s.name, t.literal, t.reduced));
                }
                let odd: Vec<usize> = (1..=ODD_I_BOUND).step_by(2).map(|n| t.i_dims[n - 1]).collect();
                if odd.iter().any(|&d| d != 0) {
                    bad.push(format!("{}: I(odd) = {odd:?}", s.name));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", s.name)),
        }
    }
    report(
        "Tor literal complex = inv/coinv reduction for n ≤ 6, I(n) = 0 for odd n ≤ 7",
        bad.is_empty(),
        &format!("{} specs; failures {bad:?}", specs.len()),
    );
}

#[test]
fn cycle_decomposition() {
    let mut bad = Vec::new();
    let mut nonzero = 0;
    for seed in 0..RANDOM_SPECS {
        let spec = common::random_spec::<Q>(seed);
        let q = build_nm_quiver(&spec).unwrap();
        let ns = matrix_model(&spec).unwrap();
        for m in 1..=CYCLE_M {
            let power = tensor_power_nm(&ns.n, &ns.m, m).unwrap();
            let coeq = h0(&power).unwrap().dim;
            let cyc = h0_via_cycles(&q, m).unwrap();
            let (inv, _) = cyclic_spaces(&ns, m).unwrap().invariants_coinvariants().unwrap();
            if coeq != cyc || (inv == 0) != (coeq == 0) {
                bad.push(format!("seed {seed} m {m}: coequalizer {coeq}, cycles {cyc}, invariants {inv}"));
            }
            nonzero += usize::from(coeq > 0);
        }
    }
    report(
        "cycle decomposition h0_via_cycles = coequalizer H_0, invariants = 0 ⟺ H_0 = 0, m ≤ 3",
        bad.is_empty(),
        &format!("{RANDOM_SPECS} random specs (|E|,|F| ≤ 3, mult ≤ 2), {nonzero} nonzero H_0 cases; failures {bad:?}"),
    );
}

#[test]
fn vanishing_chain() {
    let mut specs = corpus::nullsquare_corpus::<Q>();
    specs.extend((0..RANDOM_SPECS).map(common::random_spec::<Q>));
    let mut bad = Vec::new();
    let mut checked = 0;
    for s in &specs {
        let q = build_nm_quiver(s).unwrap();
        if q.nonempty(CV_SCAN).iter().any(|&(_, cv)| cv) {
            continue;
        }
        checked += 1;
        let Some(top) = q.max_revolution() else {
            bad.push(format!("{}: no cycle up to {CV_SCAN} but balanced paths unbounded", s.name));
            continue;
        };
        let ns = matrix_model(s).unwrap();
        for n in top + 1..=top + 2 {
            if !tensor_power_nm(&ns.n, &ns.m, n).unwrap().is_zero() {
                bad.push(format!("{}: (NM)^{n} ≠ 0 with max revolution {top}", s.name));
            }
        }
        if top > 0 && tensor_power_nm(&ns.n, &ns.m, top).unwrap().is_zero() {
            bad.push(format!("{}: (NM)^{top} = 0 although a path of revolution {top} exists", s.name));
        }
    }
    report(
        "vanishing chain CV^E_m = ∅ (m ≤ 8) ⇒ (N⊗_B M)^{⊗n} = 0 beyond the max revolution number",
        bad.is_empty() && checked > 0,
        &format!("{checked} of {} specs without vertical cycles; failures {bad:?}", specs.len()),
    );
}

#[test]
fn k1_homotopy() {
    let specs = corpus::nullsquare_corpus::<Q>();
    let mut bad = Vec::new();
    for s in &specs {
        let ns = matrix_model(s).unwrap();
        let k = k1_complex(&ns, K1_DEGREES + 1).unwrap();
        let ok = k.check_square_zero().is_ok() && k.check_homotopy().map(|t| t >= K1_DEGREES).unwrap_or(false);
        if !ok {
            bad.push(s.name.clone());
        }
    }
    report(
        "homotopy ds + sd = id on the K¹ complex, degrees ≤ 4",
        bad.is_empty(),
        &format!("{} specs; failures {bad:?}", specs.len()),
    );
}

#[test]
fn q_resolution_bounds() {
    let specs = vec![corpus::crown_example::<Q>(), corpus::crown_with_a2(), corpus::a3_with_point()];
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for s in &specs {
        let ns = matrix_model(s).unwrap();
        if !is_smooth(&ns.a, SMOOTH_CAP).unwrap().is_smooth() || build_nm_quiver(s).unwrap().max_revolution().is_none() {
            bad.push(format!("{}: hypotheses fail", s.name));
            continue;
        }
        for v in 0..ns.a.num_vertices() {
            let x = LeftModule::simple(ns.a.clone(), v);
            match q_resolution(&ns, &x, SMOOTH_CAP) {
                Ok(q) => {
                    let exact = q.report.verify().is_ok();
                    if !(exact && q.all_projective && q.vanishes_beyond_bound()) {
                        bad.push(format!("{} S{v}: exact {exact}, projective {}, dims {:?}", s.name, q.all_projective, q.dims));
                    }
                    lines.push(format!("{} S{v}: r={} l={} dims {:?}", s.name, q.r, q.l, q.dims));
                }
                Err(e) => bad.push(format!("{} S{v}: {e}", s.name)),
            }
        }
    }
    report(
        "Q resolution exact, projective, Q_m = 0 for m > 2r + l",
        bad.is_empty(),
        &format!("{}; failures {bad:?}", lines.join("; ")),
    );
}

#[test]
fn smoothness_verdicts() {
    let mut bad = Vec::new();
    let crown = alg(&corpus::crown(CrownReading::Composable));
    let gd = global_dimension(&crown, SMOOTH_CAP).unwrap();
    if gd.value != (Length::Finite { length: 2 }) {
        bad.push(format!("crown gldim {:?}", gd.value));
    }
    let example = matrix_model(&corpus::crown_example::<Q>()).unwrap();
    let example_smooth = is_smooth(&example.lambda, SMOOTH_CAP).unwrap();
    if !example_smooth.is_smooth() {
        bad.push(format!("crown example Λ: {example_smooth:?}"));
    }
    let mut checked = 0;
    // Null-square projective specs: A, B smooth and (NM)^n = 0.
    for s in corpus::nullsquare_corpus::<Q>() {
        let ns = matrix_model(&s).unwrap();
        let hyp = is_smooth(&ns.a, SMOOTH_CAP).unwrap().is_smooth()
            && is_smooth(&ns.b, SMOOTH_CAP).unwrap().is_smooth()
            && nm_nilpotency(&ns, SMOOTH_CAP).is_ok();
        if hyp {
            checked += 1;
            if !is_smooth(&ns.lambda, SMOOTH_CAP).unwrap().is_smooth() {
                bad.push(s.name.clone());
            }
        }
    }
    // Corner algebras with smooth A, B and arbitrary M.
    let corners = [
        corner("kronecker|k simple", corpus::kronecker(), corpus::point("w"), |b, a| Bimodule::simple(b.clone(), a.clone(), 0, 1)),
        corner("crown|A2 simple", corpus::crown(CrownReading::Composable), corpus::linear(2, "q", false), |b, a| {
            Bimodule::simple(b.clone(), a.clone(), 1, 2)
        }),
    ];
    for ns in &corners {
        checked += 1;
        if !is_smooth(&ns.lambda, SMOOTH_CAP).unwrap().is_smooth() {
            bad.push(ns.name.clone());
        }
    }
    // Triangular algebras with smooth corners.
    let tri = [
        (alg(&corpus::commutative_square().unwrap()), IdempotentSystem::new(4, vec![vec![0], vec![1, 2], vec![3]]).unwrap()),
        (alg(&corpus::linear(3, "t", false)), IdempotentSystem::vertices(3)),
    ];
    for (a, sys) in &tri {
        let r = triangular_report(a, sys, 1, SMOOTH_CAP).unwrap();
        if r.corner_smoothness.iter().all(Smoothness::is_smooth) {
            checked += 1;
            if !is_smooth(a, SMOOTH_CAP).unwrap().is_smooth() {
                bad.push(a.name.clone());
            }
        }
    }
    report(
        "smoothness: crown gldim 2, crown example Λ smooth, smooth verdicts where hypotheses hold",
        bad.is_empty(),
        &format!("crown gldim {:?}, example {example_smooth:?}, {checked} instances; failures {bad:?}", gd.value),
    );
}

#[test]
fn presentation_model_iso() {
    let mut specs = corpus::nullsquare_corpus::<Q>();
    specs.extend((0..RANDOM_SPECS / 4).map(common::random_spec::<Q>));
    let mut bad = Vec::new();
    for s in &specs {
        match check_presentation_model_iso(s) {
            Ok(r) if r.presentation_dim == r.dims.0 + r.dims.1 + r.dims.2 + r.dims.3 => {}
            Ok(r) => bad.push(format!("{}: {r:?}", s.name)),
            Err(e) => bad.push(format!("{}: {e}", s.name)),
        }
    }
    report(
        "presentation kQ_Λ/<R> ≅ matrix model, dim = dim A + dim B + dim M + dim N",
        bad.is_empty(),
        &format!("{} specs; failures {bad:?}", specs.len()),
    );
}

#[test]
fn induced_h0_formula() {
    let mut bad = Vec::new();
    let mut kinds = Vec::new();
    for seed in 0..RANDOM_U {
        let spec: NullSquareSpec<Q> = if seed % 3 == 0 { corpus::crown_example() } else { common::random_spec(seed + 1000) };
        let ns = matrix_model(&spec).unwrap();
        let u = common::random_c_bimodule(&ns, seed);
        let r = induced_h0(&ns, &u).unwrap();
        kinds.push(format!("dim U {} → {}", u.dim(), r.induced));
        if !r.holds() {
            bad.push(format!("seed {seed}: {r:?}"));
        }
    }
    report(
        "induced H_0(Λ, Λ⊗_C U⊗_C Λ) = H_0(C,U) + H_0(C, I⊗_C U)",
        bad.is_empty(),
        &format!("{RANDOM_U} random C-bimodules ({}); failures {bad:?}", kinds.join(", ")),
    );
}

#[test]
fn negative_control_two_cycle() {
    let spec = corpus::two_cycle_spec::<Q>();
    let ns = matrix_model(&spec).unwrap();
    let bar = hh_dims(&ns.lambda, HH_DEGREES).unwrap().dims;
    let les = les_table_for(&ns, HH_DEGREES).unwrap();
    let predicted: Vec<usize> = les.rows.iter().map(|r| r.hh_a + r.hh_b + r.tor_prev.unwrap_or(0)).collect();
    let smooth = is_smooth(&ns.lambda, SMOOTH_CAP).unwrap();
    let ok = (1..=HH_DEGREES).all(|n| bar[n] == 1 && predicted[n] == 1)
        && smooth == Smoothness::NotKnownWithinCap { cap: SMOOTH_CAP, periodic_evidence: true };
    report(
        "negative control: 2-cycle HH_n(Λ) = 1 (bar and LES), not smooth within cap",
        ok,
        &format!("bar {bar:?}, LES {predicted:?}, {smooth:?}"),
    );
}
