//! Command-line front end for `affweyl`: algebra data, symmetric-algebra
//! levels, tensor decompositions, candidate pairs, irreducibility
//! certificates and cross-validation against explicit truncated modules.
//!
//! Exit codes: 0 success or certified, 1 usage error, rejected
//! precondition or failed check, 2 valid but inconclusive.

pub mod config;
pub mod report;

use std::ffi::OsString;

use affweyl::affine_numerics::{
    candidate_pairs, irreducibility_certificate, kostant_bound_c, shifted_parameter,
};
use affweyl::explicit_module::build_truncated_with_cap;
use affweyl::finite_rep::{length_of, tensor_decompose, TensorFactor};
use affweyl::graded_sym::{weyl_level_character, weyl_level_decompositions};
use affweyl::rational::format_rational;
use affweyl::root_system::Weight;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use config::{depth_cap, CommandName, Format, JobConfig};
use report::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] affweyl::Error),
}

#[derive(Parser, Debug)]
#[command(name = "affweyl", version, about = "Exact computations for Weyl modules over affine Kac-Moody algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Cartan type letter (A-G).
    pub series: String,
    pub rank: usize,
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// Highest weight of M in fundamental-weight coordinates, e.g. `2` or `1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub hw: Option<String>,
    /// Level κ as `a/b` or `a/b+c/d i`.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots, ρ, h∨ and the invariant form.
    Algebra(AlgebraArg),
    /// Decompositions of M ⊗ S(ad)^n for n = 0..=N.
    Symlevels {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long = "n", default_value_t = 3)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        hw: Option<String>,
    },
    /// Decomposition of V(a) ⊗ V(b); pass `--hw` twice.
    Decompose {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, allow_hyphen_values = true, required = true, num_args = 1)]
        hw: Vec<String>,
    },
    /// Solutions (μ, n) of |μ|² + 2(λ, μ) = 2κn with n ≤ N.
    Candidates {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long = "n", default_value_t = 4)]
        n: u64,
    },
    /// Irreducibility certificate for Ind(M)_κ.
    Certify {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Checks the numerics against an explicit truncated module.
    Crossvalidate {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Basis and action matrices of an explicit truncated module.
    Dump {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Comma-separated modes m of the generators x εᵐ to include.
        #[arg(long, allow_hyphen_values = true, default_value = "-1,0,1")]
        modes: String,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match config_from_cli(&cli).and_then(|cfg| execute(&cfg)) {
        Ok(out) => out,
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

pub fn config_from_cli(cli: &Cli) -> Result<JobConfig, CliError> {
    let new = |cmd, alg: &AlgebraArg| JobConfig::new(cmd, &alg.series, alg.rank, cli.format);
    let with_module = |cmd, m: &ModuleArgs| -> Result<JobConfig, CliError> {
        let mut cfg = new(cmd, &m.algebra)?;
        if let Some(hw) = &m.hw {
            cfg.push_weight(hw)?;
        }
        cfg.set_kappa(&m.kappa)?;
        Ok(cfg)
    };
    let cfg = match &cli.command {
        Command::Algebra(a) => new(CommandName::Algebra, a)?,
        Command::Symlevels { algebra, n, hw } => {
            let mut cfg = new(CommandName::Symlevels, algebra)?;
            if let Some(hw) = hw {
                cfg.push_weight(hw)?;
            }
            cfg.n_max = Some(*n as u64);
            cfg
        }
        Command::Decompose { algebra, hw } => {
            let mut cfg = new(CommandName::Decompose, algebra)?;
            if hw.len() != 2 {
                return Err(CliError::Usage("decompose takes exactly two --hw weights".into()));
            }
            for w in hw {
                cfg.push_weight(w)?;
            }
            cfg
        }
        Command::Candidates { module, n } => {
            let mut cfg = with_module(CommandName::Candidates, module)?;
            cfg.n_max = Some(*n);
            cfg
        }
        Command::Certify { module } => with_module(CommandName::Certify, module)?,
        Command::Crossvalidate { module, depth } => {
            let mut cfg = with_module(CommandName::Crossvalidate, module)?;
            cfg.depth = Some(*depth);
            cfg
        }
        Command::Dump { module, depth, modes } => {
            let mut cfg = with_module(CommandName::Dump, module)?;
            cfg.depth = Some(*depth);
            let parsed = modes
                .split(',')
                .map(|m| m.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad mode '{m}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            cfg.modes = Some(parsed);
            cfg
        }
    };
    Ok(cfg)
}

fn emit<T: Serialize + Render>(cfg: &JobConfig, result: T, code: i32) -> Outcome {
    let stdout = match cfg.format {
        Format::Text => result.text(),
        Format::Json => {
            let env = Envelope { config: cfg.clone(), result };
            serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
        }
    };
    Outcome { code, stdout, stderr: String::new() }
}

/// Parses a JSON document produced by [`execute`] into its typed report and
/// emits it again.
pub fn reemit_json(text: &str) -> Result<String, serde_json::Error> {
    #[derive(serde::Deserialize)]
    struct Head {
        config: JobConfig,
    }
    fn typed<T: Serialize + serde::de::DeserializeOwned>(text: &str) -> Result<String, serde_json::Error> {
        let env: Envelope<T> = serde_json::from_str(text)?;
        Ok(serde_json::to_string_pretty(&env)? + "\n")
    }
    let head: Head = serde_json::from_str(text)?;
    match head.config.command {
        CommandName::Algebra => typed::<AlgebraReport>(text),
        CommandName::Symlevels => typed::<SymLevelsReport>(text),
        CommandName::Decompose => typed::<DecomposeReport>(text),
        CommandName::Candidates => typed::<CandidatesReport>(text),
        CommandName::Certify => typed::<CertifyReport>(text),
        CommandName::Crossvalidate => typed::<CrossValidateReport>(text),
        CommandName::Dump => typed::<affweyl::explicit_module::ModuleDump>(text),
    }
}

fn strings(w: &Weight) -> Vec<String> {
    w.coords.iter().map(format_rational).collect()
}

/// Runs a normalized job.
pub fn execute(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let alg = cfg.algebra()?;
    match cfg.command {
        CommandName::Algebra => Ok(emit(cfg, AlgebraReport::new(&alg), 0)),
        CommandName::Symlevels => {
            let m = cfg.weight(&alg, 0)?;
            let n_max = cfg.n_max.unwrap_or(3) as usize;
            let decomps = weyl_level_decompositions(&m, n_max)?;
            let levels = decomps
                .iter()
                .enumerate()
                .map(|(n, d)| LevelEntry { n, dim: d.dim(&alg), length: length_of(d), decomposition: constituents(&alg, d) })
                .collect();
            Ok(emit(cfg, SymLevelsReport { algebra: alg.name(), highest_weight: m.as_dominant_integral()?, levels }, 0))
        }
        CommandName::Decompose => {
            let a = cfg.weight(&alg, 0)?;
            let b = cfg.weight(&alg, 1)?;
            let d = tensor_decompose(&TensorFactor::Irrep(a.clone()), &TensorFactor::Irrep(b.clone()))?;
            let report = DecomposeReport {
                algebra: alg.name(),
                factors: vec![a.as_dominant_integral()?, b.as_dominant_integral()?],
                dim: d.dim(&alg),
                constituents: constituents(&alg, &d),
            };
            Ok(emit(cfg, report, 0))
        }
        CommandName::Candidates => {
            let m = cfg.weight(&alg, 0)?;
            let kappa = cfg.kappa_value()?;
            let lambda = shifted_parameter(&m);
            let n_max = cfg.n_max.unwrap_or(4);
            let pairs = candidate_pairs(&lambda, &kappa, n_max)?;
            let report = CandidatesReport {
                algebra: alg.name(),
                highest_weight: strings(&m),
                lambda: strings(&lambda),
                kappa: kappa.to_string(),
                bound_c: format_rational(&kostant_bound_c(&lambda)),
                n_max,
                candidates: pairs.iter().map(CandidateEntry::from).collect(),
            };
            Ok(emit(cfg, report, 0))
        }
        CommandName::Certify => {
            let m = cfg.weight(&alg, 0)?;
            let kappa = cfg.kappa_value()?;
            let v = irreducibility_certificate(&m, &kappa)?;
            let code = if v.is_certified() { 0 } else { 2 };
            let report = CertifyReport {
                algebra: alg.name(),
                highest_weight: strings(&m),
                lambda: strings(&v.lambda),
                kappa: kappa.to_string(),
                bound_c: format_rational(&v.bound_c),
                status: v.status,
                reason: v.reason,
                candidates: v.candidates.iter().map(CandidateEntry::from).collect(),
            };
            Ok(emit(cfg, report, code))
        }
        CommandName::Crossvalidate => {
            let report = crossvalidate(cfg)?;
            let code = if report.all_passed { 0 } else { 1 };
            Ok(emit(cfg, report, code))
        }
        CommandName::Dump => {
            let m = cfg.weight(&alg, 0)?;
            let module = build_truncated_with_cap(&m, &cfg.kappa_value()?, cfg.depth.unwrap_or(2), depth_cap()?)?;
            let dump = module.dump(cfg.modes.as_deref().unwrap_or(&[-1, 0, 1]))?;
            Ok(emit(cfg, dump, 0))
        }
    }
}

fn check(name: &str, passed: bool, detail: String) -> CheckEntry {
    CheckEntry { name: name.into(), passed, detail }
}

fn crossvalidate(cfg: &JobConfig) -> Result<CrossValidateReport, CliError> {
    let alg = cfg.algebra()?;
    let m = cfg.weight(&alg, 0)?;
    let kappa = cfg.kappa_value()?;
    let depth = cfg.depth.unwrap_or(3);
    let lambda = shifted_parameter(&m);
    // both reject κ ∈ ℝ≥0 before any module is built
    let pairs = candidate_pairs(&lambda, &kappa, depth as u64)?;
    let verdict = irreducibility_certificate(&m, &kappa)?;
    let module = build_truncated_with_cap(&m, &kappa, depth, depth_cap()?)?;

    let mut checks = Vec::new();
    let dims = module.graded_dims();
    let expected: Vec<usize> = (0..=depth)
        .map(|n| weyl_level_character(&m, n).map(|c| c.dim() as usize))
        .collect::<Result<_, _>>()?;
    checks.push(check("graded dimensions", dims == expected, format!("explicit {dims:?}, characters {expected:?}")));
    checks.push(check("L0 scalar law", module.l0_is_scalar(), format!("L0 = a/2κ + n on degrees 0..={depth}")));
    let vir = module.virasoro_commutation_check();
    checks.push(check("Virasoro commutation", vir.holds, format!("{} basis vectors, {} failures", vir.checked, vir.failures.len())));
    let comm = module.commutation_check(1)?;
    checks.push(check("commutation relations", comm.holds, format!("|modes| <= 1, {} basis vectors", comm.checked)));

    let mut candidate_levels: Vec<u64> = pairs.iter().map(|p| p.n).collect();
    candidate_levels.dedup();
    let mut singular = Vec::new();
    let mut missing = Vec::new();
    for n in 1..=depth {
        let rep = module.singular_vectors(n)?;
        if rep.is_empty() {
            continue;
        }
        if !candidate_levels.contains(&(n as u64)) {
            missing.push(n);
        }
        singular.push(SingularEntry {
            degree: n,
            dim: rep.dim(),
            highest_weights: rep
                .highest_weights
                .iter()
                .map(|h| SingularWeightEntry {
                    weight: h.weight.clone(),
                    multiplicity: h.multiplicity,
                    matched_candidate: h.matched_candidate.as_ref().map(CandidateEntry::from),
                })
                .collect(),
        });
    }
    let found: Vec<usize> = singular.iter().map(|s| s.degree).collect();
    checks.push(check(
        "singular degrees are candidate levels",
        missing.is_empty(),
        format!("singular degrees {found:?}, candidate levels {candidate_levels:?}"),
    ));
    let sound = !verdict.is_certified() || singular.is_empty();
    checks.push(check("certificate soundness", sound, format!("{:?}, singular degrees {found:?}", verdict.status)));
    if depth >= 2 {
        let kl = module.check_kl_exact_sequence(2)?;
        checks.push(check("KL exact sequence N'=2", kl.holds, format!("window 0..={}, V(2) dims {:?}", kl.window, kl.level_dims)));
    }
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(CrossValidateReport {
        algebra: alg.name(),
        highest_weight: m.as_dominant_integral()?,
        kappa: kappa.to_string(),
        depth,
        graded_dims: dims,
        candidate_levels,
        certificate: verdict.status,
        singular,
        checks,
        all_passed,
    })
}
