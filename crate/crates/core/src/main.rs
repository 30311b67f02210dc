use std::error::Error as StdError;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use nullsquare::algebra::{compute_basis, parse_presentation, BasedAlgebra, IdempotentSystem};
use nullsquare::bimodule::{Bimodule, Summand};
use nullsquare::hochschild::{hh_dims_with, hh_with_coefficients, Mode};
use nullsquare::les::{han_check, les_table, triangular_report};
use nullsquare::module::{global_dimension, LeftModule, DEFAULT_CAP};
use nullsquare::nm::{build_nm_quiver, enumerate_cv, h0_via_cycles, tor_complex};
use nullsquare::nullsquare::{
    build_presentation, check_presentation_model_iso, matrix_model, parse_nullsquare, q_resolution, NullSquareSpec,
};
use nullsquare::Q;

type CliResult<T> = std::result::Result<T, Box<dyn StdError>>;

#[derive(Parser)]
#[command(name = "nullsquare", version, about = "Exact homological computations for quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis paths and Peirce block dimensions of a presented algebra.
    Basis {
        file: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Projective dimension of every simple module and the global dimension.
    Gldim {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Hochschild homology dimensions.
    Hh {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long)]
        normalized: bool,
        /// JSON list of projective summands `{"left": v, "right": w, "mult": k}` (vertex indices).
        #[arg(long)]
        coefficients: Option<PathBuf>,
    },
    /// Null-square projective algebras.
    Nullsquare {
        #[command(subcommand)]
        command: NullsquareCommand,
    },
    /// Vertical balanced cycles of revolution number `m` with their multiplicities.
    Cycles {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Tor of K¹ by the literal complex and by invariants/coinvariants.
    Tor {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Long exact sequence dimension table.
    Les {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    /// Vanishing of high Hochschild homology and the smoothness chain.
    Han {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Hochschild decomposition over an E-triangular system, written like `e0,e1|e2`.
    Triangular {
        file: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum NullsquareCommand {
    /// Gabriel presentation of Λ and the dimensions of its parts.
    Build { file: PathBuf },
    /// Compare the presentation with the matrix model.
    CheckIso { file: PathBuf },
    /// Resolution of a simple A-module viewed as a Λ-module.
    Qres {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn algebra(path: &Path, max_len: Option<usize>) -> CliResult<Arc<BasedAlgebra<Q>>> {
    let mut p = parse_presentation::<Q>(&read(path)?)?;
    if let Some(cap) = max_len {
        p = p.with_cap(cap);
    }
    Ok(Arc::new(compute_basis(&p)?))
}

fn spec(path: &Path) -> CliResult<NullSquareSpec<Q>> {
    Ok(parse_nullsquare(&read(path)?, path.parent())?)
}

fn emit<T: Serialize>(value: &T) -> CliResult<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn block_dims(alg: &BasedAlgebra<Q>) -> Value {
    let n = alg.num_vertices();
    let rows: Vec<Vec<usize>> = (0..n).map(|y| (0..n).map(|x| alg.block_dim(y, x)).collect()).collect();
    json!({ "vertices": alg.vertices, "rows_target_columns_source": rows })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Basis { file, max_len } => {
            let alg = algebra(&file, max_len)?;
            let basis: Vec<Value> = alg
                .basis
                .iter()
                .map(|b| json!({ "label": b.label, "source": alg.vertices[b.source], "target": alg.vertices[b.target] }))
                .collect();
            emit(&json!({ "algebra": alg.name, "dim": alg.dim(), "basis": basis, "peirce_blocks": block_dims(&alg) }))
        }
        Command::Gldim { file, cap } => emit(&global_dimension(&algebra(&file, None)?, cap)?),
        Command::Hh { file, nmax, normalized, coefficients } => {
            let alg = algebra(&file, None)?;
            match coefficients {
                Some(path) => {
                    let summands: Vec<Summand> = serde_json::from_str(&read(&path)?)?;
                    let z = Bimodule::projective(alg.clone(), alg.clone(), &summands)?;
                    let dims = hh_with_coefficients(&alg, &z, nmax)?;
                    emit(&json!({ "algebra": alg.name, "coefficients": path, "dims": dims }))
                }
                None => {
                    let mode = if normalized { Mode::Normalized } else { Mode::Unnormalized };
                    emit(&hh_dims_with(&alg, &IdempotentSystem::vertices(alg.num_vertices()), nmax, mode)?)
                }
            }
        }
        Command::Nullsquare { command } => match command {
            NullsquareCommand::Build { file } => {
                let s = spec(&file)?;
                let ns = matrix_model(&s)?;
                let (a, b, m, n) = ns.dims();
                emit(&json!({
                    "spec": s.name,
                    "dims": { "A": a, "B": b, "M": m, "N": n, "lambda": ns.lambda.dim() },
                    "presentation": build_presentation(&s)?.report(),
                }))
            }
            NullsquareCommand::CheckIso { file } => emit(&check_presentation_model_iso(&spec(&file)?)?),
            NullsquareCommand::Qres { file, module, cap } => {
                let ns = matrix_model(&spec(&file)?)?;
                let v = ns.a.vertex_index(&module)?;
                let q = q_resolution(&ns, &LeftModule::simple(ns.a.clone(), v), cap)?;
                emit(&json!({
                    "module": module,
                    "r": q.r,
                    "l": q.l,
                    "bound": q.bound(),
                    "dims": q.dims,
                    "summands": q.summands,
                    "exact": q.report.verify().is_ok(),
                    "all_projective": q.all_projective,
                    "vanishes_beyond_bound": q.vanishes_beyond_bound(),
                }))
            }
        },
        Command::Cycles { file, m } => {
            let q = build_nm_quiver(&spec(&file)?)?;
            let cycles: Vec<Value> = enumerate_cv(&q, m)?
                .iter()
                .map(|c| json!({ "vertices": c.path.vertices(&q), "label": c.path.label(&q), "v_gamma": c.v_gamma }))
                .collect();
            emit(&json!({ "m": m, "cycles": cycles, "h0_dim": h0_via_cycles(&q, m)? }))
        }
        Command::Tor { file, nmax } => emit(&tor_complex(&matrix_model(&spec(&file)?)?, nmax)?),
        Command::Les { file, nmax } => {
            let r = les_table(&spec(&file)?, nmax)?;
            emit(&r)?;
            eprint!("{}", r.table());
            Ok(())
        }
        Command::Han { file, nmax, cap } => {
            let r = han_check(&spec(&file)?, nmax, cap)?;
            emit(&r)?;
            for l in &r.links {
                eprintln!("{:<36} {:?}  {}", l.step, l.verdict, l.detail);
            }
            eprintln!("{}", r.conclusion);
            Ok(())
        }
        Command::Triangular { file, system, nmax, cap } => {
            let alg = algebra(&file, None)?;
            let sys = IdempotentSystem::parse(&alg, &system)?;
            let r = triangular_report(&alg, &sys, nmax, cap)?;
            emit(&r)?;
            eprintln!("{:>3} {:>6}  corners", "n", "HH(Λ)");
            for n in 0..=nmax {
                let parts: Vec<usize> = r.corners.iter().map(|c| c[n]).collect();
                eprintln!("{n:>3} {:>6}  {parts:?}  {}", r.hh[n], r.holds[n]);
            }
            Ok(())
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
