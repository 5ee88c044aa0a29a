//! Command dispatch.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 the solver ran out of budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qzspec_core::embed::embed;
use qzspec_core::qspec::{
    count_bound, equality_check, generate_case, pair_map_q, qeig_all_with, ratio_search, verify_qeig, CaseKind,
    Family, RatioSampler,
};
use qzspec_core::zsolve::{z_residual, zeig_multistart, zeig_oracle};
use qzspec_core::{SolverConfig, SymTensor, Variant};
use serde::Deserialize;

use crate::format::{parse_tensor_file, to_canonical_string, Tensor, TensorFile};
use crate::report::{
    ConfigEcho, Dominance, PairCheck, Payload, QSpectrum, Ratio, RunReport, Verification, ZSpectrum,
};
use crate::witness::{WitnessArchive, WitnessError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qzspec", version, about = "Z- and Q-eigenpairs of symmetric tensors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Residual acceptance tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Random starts per solve [default: 100 · dim].
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 5000)]
    pub max_iter: usize,
    /// Eigenvalues closer than this are merged.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub dedup_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Leave eigenvectors out of reports.
    #[arg(long, global = true)]
    pub no_vectors: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "theorem4")]
    General,
    #[value(name = "remark_m3")]
    Order3,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::General => Variant::General,
            VariantArg::Order3 => Variant::Order3,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Z-eigenpairs of a real tensor file.
    Zeig {
        file: PathBuf,
        /// Use the brute-force grid oracle (dimension 2 to 4).
        #[arg(long)]
        oracle: bool,
    },
    /// Q-eigenpairs of a real or complex tensor file.
    Qeig {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::General)]
        variant: VariantArg,
    },
    /// Write the real embedding of a tensor file.
    Embed {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::General)]
        variant: VariantArg,
    },
    /// Check a bundle of claimed eigenpairs.
    Verify {
        bundle: PathBuf,
        /// Skip the Q ≥ Z check on real tensors.
        #[arg(long)]
        no_dominance: bool,
    },
    /// Search for real tensors with a large Q/Z ratio.
    RatioSearch {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Sample families, visited in turn.
        #[arg(long, value_delimiter = ',', default_value = "gaussian,perturbation")]
        family: Vec<String>,
        /// Witness archive or tensor file evaluated before the search.
        #[arg(long)]
        seed_witness: Option<PathBuf>,
        /// Archive the best tensor here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Perturbation scale relative to the witness's largest entry.
        #[arg(long, default_value_t = 0.1)]
        perturbation: f64,
    },
    /// Write a random tensor from an equality family.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

/// A verification failure, reported with exit code 1 after the report is written.
#[derive(Debug, thiserror::Error)]
#[error("verification failed: {0}")]
pub struct VerifyFailed(pub String);

/// What a successful dispatch produced.
pub struct Rendered {
    pub text: String,
    /// Set when the report was written but a check inside it failed.
    pub failure: Option<String>,
}

impl Opts {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            num_starts: self.starts,
            dedup_tol: self.dedup_tol,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }
}

fn read_tensor(path: &Path) -> anyhow::Result<Tensor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tensor_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn command_echo(cmd: &Command) -> String {
    match cmd {
        Command::Zeig { file, oracle } => format!("zeig {}{}", file.display(), if *oracle { " --oracle" } else { "" }),
        Command::Qeig { file, variant } => format!("qeig {} --variant {}", file.display(), Variant::from(*variant).name()),
        Command::Embed { file, variant } => format!("embed {} --variant {}", file.display(), Variant::from(*variant).name()),
        Command::Verify { bundle, no_dominance } => {
            format!("verify {}{}", bundle.display(), if *no_dominance { " --no-dominance" } else { "" })
        }
        Command::RatioSearch { m, n, budget, family, .. } => {
            format!("ratio-search --m {m} --n {n} --budget {budget} --family {}", family.join(","))
        }
        Command::Gen { kind, m, n } => format!("gen --kind {kind} --m {m} --n {n}"),
    }
}

/// Runs one command and renders its output in the requested format.
pub fn run(cli: &Cli) -> anyhow::Result<Rendered> {
    let cfg = cli.opts.config();
    cfg.validate()?;
    let vectors = !cli.opts.no_vectors;
    let started = Instant::now();
    let mut failure = None;
    let (payload, heuristic) = match &cli.command {
        Command::Zeig { file, oracle } => {
            let t = read_tensor(file)?.into_real()?;
            let r = if *oracle { zeig_oracle(&t, &cfg)? } else { zeig_multistart(&t, &cfg)? };
            (Payload::Z(ZSpectrum::new(&r, vectors)), r.heuristic)
        }
        Command::Qeig { file, variant } => {
            let psi = read_tensor(file)?.into_complex();
            let r = qeig_all_with(&psi, (*variant).into(), &cfg)?;
            if !r.pairing_ok {
                failure = Some("an eigenvalue has no verified −λ partner".to_string());
            } else if !r.within_count_bound() {
                failure = Some("more distinct Q-eigenvalues than the count bound allows".to_string());
            }
            let heuristic = r.embedded.heuristic;
            (Payload::Q(QSpectrum::new(&r, vectors)), heuristic)
        }
        Command::Embed { file, variant } => {
            let psi = read_tensor(file)?.into_complex();
            let e = embed(&psi, (*variant).into())?;
            return Ok(Rendered {
                text: render_tensor(&Tensor::Real(e.target), cli, &cfg, started)?,
                failure: None,
            });
        }
        Command::Gen { kind, m, n } => {
            let kind: CaseKind = kind.parse().map_err(|_| anyhow!("unknown kind {kind:?}"))?;
            let t = generate_case(kind, *m, *n, cli.opts.seed)?;
            return Ok(Rendered {
                text: render_tensor(&Tensor::Real(t), cli, &cfg, started)?,
                failure: None,
            });
        }
        Command::Verify { bundle, no_dominance } => {
            let v = verify_bundle(bundle, &cfg, !*no_dominance)?;
            if !v.ok {
                failure = Some("bundle failed verification".to_string());
            }
            (Payload::Verify(v), false)
        }
        Command::RatioSearch {
            m,
            n,
            budget,
            family,
            seed_witness,
            witness_out,
            perturbation,
        } => {
            let families = family
                .iter()
                .map(|f| f.parse::<Family>().map_err(|_| anyhow!("unknown family {f:?}")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let seed_witness = seed_witness.as_deref().map(|p| load_witness(p, &cfg)).transpose()?;
            let sampler = RatioSampler {
                families,
                seed_witness,
                perturbation: *perturbation,
                seed: cli.opts.seed,
            };
            let r = ratio_search(*m, *n, *budget, &sampler, &cfg)?;
            if r.best_ratio < 1.0 - 1e-8 {
                failure = Some(format!("Q/Z = {} violates Q ≥ Z", r.best_ratio));
            }
            if let (Some(path), Some(w)) = (witness_out, &r.witness) {
                let archive = WitnessArchive::new(w, cli.opts.seed, *budget);
                fs::write(path, archive.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            (Payload::Ratio(Ratio::from(&r)), !r.exact)
        }
    };
    let report = RunReport {
        command: command_echo(&cli.command),
        config: ConfigEcho::from(&cfg),
        seed: cli.opts.seed,
        result: payload,
        wall_time_s: started.elapsed().as_secs_f64(),
        heuristic,
    };
    let text = match cli.opts.output {
        Output::Json => report.to_json(),
        Output::Text => report.to_text(),
    };
    Ok(Rendered { text, failure })
}

/// Tensor outputs are the tensor file itself in JSON mode, so they can be
/// fed straight back in.
fn render_tensor(t: &Tensor, cli: &Cli, cfg: &SolverConfig, started: Instant) -> anyhow::Result<String> {
    Ok(match cli.opts.output {
        Output::Json => to_canonical_string(t),
        Output::Text => RunReport {
            command: command_echo(&cli.command),
            config: ConfigEcho::from(cfg),
            seed: cli.opts.seed,
            result: Payload::Tensor(TensorFile::from_tensor(t)),
            wall_time_s: started.elapsed().as_secs_f64(),
            heuristic: false,
        }
        .to_text(),
    })
}

/// Accepts a witness archive (checked on load) or a bare real tensor file.
fn load_witness(path: &Path, cfg: &SolverConfig) -> anyhow::Result<SymTensor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match WitnessArchive::parse(&text) {
        Ok(a) => match a.verified_tensor(cfg) {
            Err(e @ WitnessError::Mismatch { .. }) => Err(VerifyFailed(e.to_string()).into()),
            other => Ok(other?),
        },
        Err(_) => Ok(parse_tensor_file(&text)?.into_real()?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BundleKind {
    Z,
    Q,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimedPair {
    pub lambda: f64,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Option<Vec<f64>>,
}

/// Input of `verify`: a tensor and eigenpairs claimed for it.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub tensor: TensorFile,
    pub kind: BundleKind,
    pub pairs: Vec<ClaimedPair>,
}

fn distinct(mut values: Vec<f64>, tol: f64) -> usize {
    values.sort_by(|a, b| b.total_cmp(a));
    let mut count = 0;
    let mut last = f64::INFINITY;
    for v in values {
        if last - v >= tol {
            count += 1;
        }
        last = v;
    }
    count
}

pub fn verify_bundle(path: &Path, cfg: &SolverConfig, dominance: bool) -> anyhow::Result<Verification> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let bundle: Bundle = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let tensor = bundle.tensor.to_tensor()?;
    let m = tensor.order();
    let real = match &tensor {
        Tensor::Real(t) => Some(t.clone()),
        Tensor::Complex(t) if t.is_real() => Some(t.real_part().clone()),
        Tensor::Complex(_) => None,
    };
    let mut pairs = Vec::new();
    match bundle.kind {
        BundleKind::Z => {
            let t = real.clone().ok_or_else(|| anyhow!("a z bundle needs a real tensor"))?;
            for p in &bundle.pairs {
                if p.im.is_some() {
                    return Err(anyhow!("a z bundle carries real vectors only"));
                }
                let unit = (p.re.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-10;
                let residual = z_residual(&t, p.lambda, &p.re)?;
                let ok = unit && residual < cfg.tol && (t.apply_m(&p.re)? - p.lambda).abs() < 10.0 * cfg.tol;
                // odd orders pair (λ, w) with (−λ, −w); even orders have no partner
                let partner_residual = if m % 2 == 1 {
                    let neg: Vec<f64> = p.re.iter().map(|x| -x).collect();
                    Some(z_residual(&t, -p.lambda, &neg)?)
                } else {
                    None
                };
                pairs.push(PairCheck {
                    lambda: p.lambda,
                    residual,
                    ok,
                    partner_ok: partner_residual.is_none_or(|r| r < cfg.tol),
                    partner_residual,
                });
            }
        }
        BundleKind::Q => {
            let psi = tensor.clone().into_complex();
            for p in &bundle.pairs {
                let im = p.im.clone().unwrap_or_else(|| vec![0.0; p.re.len()]);
                if im.len() != p.re.len() {
                    return Err(anyhow!("re and im parts differ in length"));
                }
                let z: Vec<Complex64> = p.re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
                let (residual, ok) = match verify_qeig(&psi, p.lambda, &z) {
                    Ok(c) => (c.residual, c.residual < cfg.tol && c.overlap_gap < 10.0 * cfg.tol),
                    Err(qzspec_core::Error::NonUnitVector(_)) => (f64::INFINITY, false),
                    Err(e) => return Err(e.into()),
                };
                let partner = verify_qeig(&psi, -p.lambda, &pair_map_q(&z, m)).ok();
                let partner_residual = partner.map(|c| c.residual);
                pairs.push(PairCheck {
                    lambda: p.lambda,
                    residual,
                    ok,
                    partner_ok: partner_residual.is_some_and(|r| r < cfg.tol),
                    partner_residual,
                });
            }
        }
    }
    let distinct_count = distinct(bundle.pairs.iter().map(|p| p.lambda).collect(), cfg.dedup_tol);
    let bound = match bundle.kind {
        BundleKind::Q => count_bound(m, tensor.dim()),
        BundleKind::Z => None,
    };
    let bound_ok = bound.is_none_or(|b| distinct_count as u128 <= b);
    let dominance = match (&real, dominance) {
        (Some(t), true) if !t.is_zero() => Some(Dominance::from(&equality_check(t, cfg)?)),
        _ => None,
    };
    let ok = pairs.iter().all(|p| p.ok && p.partner_ok) && bound_ok && dominance.as_ref().is_none_or(|d| d.ok);
    Ok(Verification {
        kind: match bundle.kind {
            BundleKind::Z => "z",
            BundleKind::Q => "q",
        },
        pairs,
        distinct: distinct_count,
        count_bound: bound,
        bound_ok,
        dominance,
        ok,
    })
}

/// Maps an error to its exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<VerifyFailed>().is_some() {
        return EXIT_VERIFY;
    }
    let core = err
        .chain()
        .find_map(|e| e.downcast_ref::<qzspec_core::Error>())
        .or_else(|| {
            err.chain().find_map(|e| match e.downcast_ref::<crate::format::FormatError>() {
                Some(crate::format::FormatError::Tensor(c)) => Some(c),
                _ => None,
            })
        });
    match core {
        Some(qzspec_core::Error::BudgetExhausted { .. } | qzspec_core::Error::NoConvergence(_)) => EXIT_BUDGET,
        Some(qzspec_core::Error::CrossCheck { .. }) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

/// Parses, runs and writes output; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let result = run(&cli).and_then(|r| {
        match &cli.opts.out {
            Some(p) => fs::write(p, &r.text).with_context(|| format!("writing {}", p.display()))?,
            None => print!("{}", r.text),
        }
        Ok(r.failure)
    });
    match result {
        Ok(None) => EXIT_OK,
        Ok(Some(msg)) => {
            eprintln!("qzspec: verification failed: {msg}");
            EXIT_VERIFY
        }
        Err(e) => {
            eprintln!("qzspec: {e:#}");
            exit_code(&e)
        }
    }
}
