//! Command dispatch: loads inputs, runs the requested computation and
//! assembles the run report. Exit codes: 0 success, 1 mathematical failure
//! (invalid algebra, module not tilting, violated bound, failed selftest),
//! 2 input error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use itphi::algebra::{validate_algebra, AlgebraRef};
use itphi::decomp::IsoRegistry;
use itphi::linalg::Subspace;
use itphi::module::Module;
use itphi::phi::{phi_via_divisions, phi_with_registry, PhiConfig};
use itphi::phidim::{
    enumerate_indecomposables_nakayama, inequality_report, phidim_exact, phidim_lower_bound,
    InequalityConfig, SamplerConfig,
};
use itphi::tilting::{
    bongartz_bound_check, endomorphism_algebra, ope_bound_check, verify_tilting, BongartzConfig,
    OpeConfig, TiltingOutcome,
};

use crate::formats::{parse_kupisch, AlgebraFile, ModuleFile};
use crate::report::{dimension_report_json, phi_outcome_json, phidim_estimate_json, RunReport};
use crate::selftest::{run_selftest, selftest_json};

#[derive(Parser)]
#[command(
    name = "itphi",
    version,
    about = "phi and phi-dimension computations for bound quiver algebras over prime fields"
)]
pub struct Cli {
    /// Random seed (default: ITPHI_SEED environment variable, then 42).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Syzygy iteration cutoff.
    #[arg(long, global = true, default_value_t = 32)]
    pub nmax: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Algebra file utilities.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Compute phi of a module.
    Phi { algebra: PathBuf, module: PathBuf },
    /// Compute phi through the division oracle, with verified witnesses.
    PhiDiv { algebra: PathBuf, module: PathBuf },
    /// Compute or bound the phi-dimension of an algebra.
    Phidim {
        algebra: PathBuf,
        /// JSON file with a complete list of indecomposable modules.
        #[arg(long, conflicts_with_all = ["kupisch", "sample"])]
        indec: Option<PathBuf>,
        /// Kupisch series such as 2,2,1 (the algebra must be its Nakayama algebra).
        #[arg(long, conflicts_with = "sample")]
        kupisch: Option<String>,
        /// Treat the Kupisch series as cyclic.
        #[arg(long, requires = "kupisch")]
        cyclic: bool,
        /// Number of random modules for the sampled lower bound (default mode).
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Report the chain findim <= phidim <= gldim.
    Dims {
        algebra: PathBuf,
        #[arg(long, default_value_t = 16)]
        sample: usize,
    },
    /// Tilting-module commands.
    Tilt {
        #[command(subcommand)]
        cmd: TiltCmd,
    },
    /// One-point extension `A[M]` and its phi-dimension step.
    Ope { algebra: PathBuf, module: PathBuf },
    /// Run the built-in verification battery.
    Selftest {},
}

#[derive(Subcommand)]
pub enum AlgebraCmd {
    /// Validate every structural invariant of an algebra file.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
pub enum TiltCmd {
    /// Verify the tilting axioms.
    Verify { algebra: PathBuf, module: PathBuf },
    /// Present the endomorphism algebra End(T)^op.
    Endo { algebra: PathBuf, module: PathBuf },
    /// Check the two-sided phi-dimension bound across a tilting module.
    Bongartz { algebra: PathBuf, module: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

fn input_err<E: std::fmt::Display>(path: &Path) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

fn math_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

fn load_algebra(path: &Path, report: &mut RunReport) -> Result<AlgebraRef, Failure> {
    let bytes = std::fs::read(path).map_err(input_err(path))?;
    report.add_input(&path.display().to_string(), &bytes);
    let file: AlgebraFile =
        serde_json::from_str(std::str::from_utf8(&bytes).map_err(input_err(path))?)
            .map_err(input_err(path))?;
    file.build().map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_module(
    path: &Path,
    algebra: &AlgebraRef,
    report: &mut RunReport,
) -> Result<Module, Failure> {
    let bytes = std::fs::read(path).map_err(input_err(path))?;
    report.add_input(&path.display().to_string(), &bytes);
    let file: ModuleFile =
        serde_json::from_str(std::str::from_utf8(&bytes).map_err(input_err(path))?)
            .map_err(input_err(path))?;
    file.to_module(algebra).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_module_list(
    path: &Path,
    algebra: &AlgebraRef,
    report: &mut RunReport,
) -> Result<Vec<Module>, Failure> {
    let bytes = std::fs::read(path).map_err(input_err(path))?;
    report.add_input(&path.display().to_string(), &bytes);
    let files: Vec<ModuleFile> =
        serde_json::from_str(std::str::from_utf8(&bytes).map_err(input_err(path))?)
            .map_err(input_err(path))?;
    files
        .iter()
        .map(|f| {
            f.to_module(algebra).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", path.display()),
            })
        })
        .collect()
}

fn cartan_matrix(a: &AlgebraRef) -> Vec<Vec<usize>> {
    let m = a.idempotent_count();
    let mut out = vec![vec![0usize; m]; m];
    for (i, ei) in a.idempotents().iter().enumerate() {
        for (j, ej) in a.idempotents().iter().enumerate() {
            let mut space = Subspace::new(a.p(), a.dim());
            for k in 0..a.dim() {
                let mut ek = vec![0u64; a.dim()];
                ek[k] = 1;
                space.insert(&a.product(ei, &a.product(&ek, ej)));
            }
            out[i][j] = space.dim();
        }
    }
    out
}

/// Runs the parsed command; returns the report and the exit code.
pub fn execute(cli: Cli, argv: Vec<String>) -> (RunReport, i32) {
    let seed = cli.seed.unwrap_or_else(|| {
        std::env::var("ITPHI_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(42)
    });
    let phi_cfg = PhiConfig {
        n_max: cli.nmax,
        ..PhiConfig::default()
    };
    let mut report = RunReport::new(argv, seed);
    let start = Instant::now();
    let outcome = run_command(cli.command, seed, &phi_cfg, &mut report);
    report.wall_ms = start.elapsed().as_millis();
    match outcome {
        Ok((value, code)) => {
            report.result = value;
            (report, code)
        }
        Err(f) => {
            report.result = json!({"error": f.message});
            (report, f.code)
        }
    }
}

fn run_command(
    command: Command,
    seed: u64,
    phi_cfg: &PhiConfig,
    report: &mut RunReport,
) -> Result<(Value, i32), Failure> {
    match command {
        Command::Algebra {
            cmd: AlgebraCmd::Check { file },
        } => {
            let bytes = std::fs::read(&file).map_err(input_err(&file))?;
            report.add_input(&file.display().to_string(), &bytes);
            let parsed: AlgebraFile =
                serde_json::from_str(std::str::from_utf8(&bytes).map_err(input_err(&file))?)
                    .map_err(input_err(&file))?;
            match parsed.build() {
                Err(e) => Ok((json!({"valid": false, "error": e}), 1)),
                Ok(a) => {
                    let val = validate_algebra(&a);
                    let code = if val.is_valid() { 0 } else { 1 };
                    Ok((
                        json!({
                            "valid": val.is_valid(),
                            "dim": val.dim,
                            "idempotents": val.idempotent_count,
                            "radical_dim": val.radical_dim,
                            "issues": val.issues,
                        }),
                        code,
                    ))
                }
            }
        }
        Command::Phi { algebra, module } => {
            let a = load_algebra(&algebra, report)?;
            let m = load_module(&module, &a, report)?;
            let mut reg = IsoRegistry::new(a).map_err(math_err)?;
            let out = phi_with_registry(&mut reg, &m, phi_cfg, seed).map_err(math_err)?;
            Ok((
                json!({"phi": phi_outcome_json(&out), "classes": reg.class_count()}),
                0,
            ))
        }
        Command::PhiDiv { algebra, module } => {
            let a = load_algebra(&algebra, report)?;
            let m = load_module(&module, &a, report)?;
            let mut reg = IsoRegistry::new(a).map_err(math_err)?;
            let (out, witnesses) =
                phi_via_divisions(&mut reg, &m, phi_cfg, seed).map_err(math_err)?;
            Ok((
                json!({
                    "phi": phi_outcome_json(&out),
                    "witnesses": witnesses.iter().map(|w| json!({
                        "d": w.d,
                        "x_classes": w.x_classes,
                        "y_classes": w.y_classes,
                        "x_dim": w.x_dim,
                        "y_dim": w.y_dim,
                    })).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Command::Phidim {
            algebra,
            indec,
            kupisch,
            cyclic,
            sample,
        } => {
            let a = load_algebra(&algebra, report)?;
            if let Some(series_text) = kupisch {
                let series = parse_kupisch(&series_text, cyclic).map_err(|e| Failure {
                    code: 2,
                    message: e,
                })?;
                let (built, list) =
                    enumerate_indecomposables_nakayama(&series, a.p()).map_err(math_err)?;
                if !itphi::algebra::same_algebra(&a, &built) {
                    return Err(Failure {
                        code: 2,
                        message:
                            "algebra file does not match the Nakayama presentation of the series"
                                .into(),
                    });
                }
                let out = phidim_exact(&built, &list, phi_cfg, seed).map_err(math_err)?;
                return Ok((
                    json!({
                        "phidim": phi_outcome_json(&out),
                        "method": "kupisch",
                        "indecomposables": list.len(),
                    }),
                    0,
                ));
            }
            if let Some(list_path) = indec {
                let list = load_module_list(&list_path, &a, report)?;
                let out = phidim_exact(&a, &list, phi_cfg, seed).map_err(math_err)?;
                return Ok((
                    json!({
                        "phidim": phi_outcome_json(&out),
                        "method": "complete-list",
                        "indecomposables": list.len(),
                    }),
                    0,
                ));
            }
            let sampler = SamplerConfig {
                count: sample.unwrap_or(16),
                dim_bound: 16,
                seed,
            };
            let lb = phidim_lower_bound(&a, &sampler, phi_cfg).map_err(math_err)?;
            Ok((
                json!({
                    "phidim_lower_bound": lb.value,
                    "method": "sampled",
                    "exact_at_witness": lb.exact_at_witness,
                    "witness_dim": lb.witness.dim(),
                    "modules_tried": lb.modules_tried,
                }),
                0,
            ))
        }
        Command::Dims { algebra, sample } => {
            let a = load_algebra(&algebra, report)?;
            let cfg = InequalityConfig {
                sampler: SamplerConfig {
                    count: sample,
                    dim_bound: 16,
                    seed,
                },
                phi: *phi_cfg,
                ..InequalityConfig::default()
            };
            let rep = inequality_report(&a, &cfg).map_err(math_err)?;
            let code = if rep.consistent { 0 } else { 1 };
            Ok((dimension_report_json(&rep), code))
        }
        Command::Tilt { cmd } => run_tilt(cmd, seed, phi_cfg, report),
        Command::Ope { algebra, module } => {
            let a = load_algebra(&algebra, report)?;
            let m = load_module(&module, &a, report)?;
            let cfg = OpeConfig {
                phi: *phi_cfg,
                seed,
                ..OpeConfig::default()
            };
            let (ope, rep) = ope_bound_check(&a, &m, &cfg).map_err(math_err)?;
            let code = if rep.bound_holds == Some(false) { 1 } else { 0 };
            Ok((
                json!({
                    "extension_dim": rep.extension_dim,
                    "omega_index": ope.omega_index,
                    "phidim_base": phidim_estimate_json(&rep.phidim_a),
                    "phidim_extension": phidim_estimate_json(&rep.phidim_ext),
                    "bound_holds": rep.bound_holds,
                }),
                code,
            ))
        }
        Command::Selftest {} => {
            let outcome = run_selftest(seed).map_err(math_err)?;
            let code = if outcome.all_pass { 0 } else { 1 };
            Ok((selftest_json(&outcome), code))
        }
    }
}

fn run_tilt(
    cmd: TiltCmd,
    seed: u64,
    phi_cfg: &PhiConfig,
    report: &mut RunReport,
) -> Result<(Value, i32), Failure> {
    match cmd {
        TiltCmd::Verify { algebra, module } => {
            let a = load_algebra(&algebra, report)?;
            let t = load_module(&module, &a, report)?;
            let outcome = verify_tilting(&t, None, 16, seed).map_err(math_err)?;
            match outcome {
                TiltingOutcome::Tilting(cert) => Ok((
                    json!({
                        "tilting": true,
                        "pd": cert.pd,
                        "rigidity": cert.rigidity,
                        "coresolution_dims": cert.coresolution.iter().map(|m| m.dim()).collect::<Vec<_>>(),
                        "m": cert.m,
                    }),
                    0,
                )),
                other => Ok((
                    json!({
                        "tilting": false,
                        "reason": other.failure_reason().unwrap_or_default(),
                    }),
                    1,
                )),
            }
        }
        TiltCmd::Endo { algebra, module } => {
            let a = load_algebra(&algebra, report)?;
            let t = load_module(&module, &a, report)?;
            let endo = endomorphism_algebra(&t, seed).map_err(math_err)?;
            let b = &endo.algebra;
            let val = validate_algebra(b);
            Ok((
                json!({
                    "dim": b.dim(),
                    "idempotents": b.idempotent_count(),
                    "radical_dim": b.radical_basis().len(),
                    "valid": val.is_valid(),
                    "cartan": cartan_matrix(b),
                    "summand_of_idempotent": endo.idempotent_to_piece,
                    "summand_dims": endo.decomposition.pieces.iter().map(|(m, k)| json!([m.dim(), k])).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        TiltCmd::Bongartz { algebra, module } => {
            let a = load_algebra(&algebra, report)?;
            let t = load_module(&module, &a, report)?;
            let cfg = BongartzConfig {
                phi: *phi_cfg,
                seed,
                ..BongartzConfig::default()
            };
            let rep = bongartz_bound_check(&a, &t, &cfg).map_err(math_err)?;
            let code = if rep.bound_holds == Some(false) { 1 } else { 0 };
            Ok((
                json!({
                    "pd_t": rep.pd_t,
                    "b_dim": rep.b_dim,
                    "b_idempotents": rep.b_idempotents,
                    "phidim_a": phidim_estimate_json(&rep.phidim_a),
                    "phidim_b": phidim_estimate_json(&rep.phidim_b),
                    "bound_holds": rep.bound_holds,
                }),
                code,
            ))
        }
    }
}

/// One-line human summary for standard error.
pub fn summary_line(report: &RunReport, code: i32) -> String {
    let status = match code {
        0 => "ok",
        1 => "mathematical failure",
        _ => "input error",
    };
    format!(
        "itphi: {} (seed {}, {} ms)",
        status, report.seed, report.wall_ms
    )
}
