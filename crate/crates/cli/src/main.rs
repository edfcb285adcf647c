//! `nichols`: classification, conditions, dimensions, subquotients and sweeps
//! from the command line. Every command prints a JSON report.
//!
//! Exit codes: 0 success or agreement, 1 usage error, 2 disagreement or
//! invariant failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nichols::subquotients::{step6_generators, DEFAULT_MAX_STEPS};
use nichols::{
    classify_pipeline, classify_theorem, descent_chain, enumerate_triples, evaluate_conditions, parse_scalar_literal,
    run_verify, validate_subquotient, CyclotomicNumber, DiagonalBraiding, JobConfig, MultiDegree, Precision,
    ReportDocument, RootVectorContext, SubquotientStep,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "nichols", version, about = "Rank-two Nichols algebras of diagonal type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    job: JobArgs,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct JobArgs {
    #[arg(long, global = true, default_value_t = 10)]
    max_degree: u32,
    #[arg(long, global = true, default_value_t = 16)]
    max_index: usize,
    #[arg(long, global = true, default_value_t = 30)]
    max_order: u32,
    #[arg(long, global = true, default_value_t = 360)]
    conductor_ceiling: u32,
    /// Joint-conductor bound of the pipeline sweep.
    #[arg(long, global = true, default_value_t = 60)]
    pipeline_conductor: u32,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl JobArgs {
    fn config(&self) -> JobConfig {
        JobConfig {
            max_degree: self.max_degree,
            max_index: self.max_index,
            max_order: self.max_order,
            conductor_ceiling: self.conductor_ceiling,
            pipeline_conductor: self.pipeline_conductor,
            workers: self.workers,
            seed: self.seed,
        }
    }
}

/// Entries as literals: `zN:k`, `r/s` or `cycN[c0,...]`.
#[derive(Args)]
struct BraidingArgs {
    #[arg(long)]
    q11: String,
    #[arg(long)]
    q12: Option<String>,
    #[arg(long)]
    q21: Option<String>,
    /// The product q12 q21, with q21 taken to be 1.
    #[arg(long, conflicts_with_all = ["q12", "q21"])]
    q12q21: Option<String>,
    #[arg(long)]
    q22: String,
}

impl BraidingArgs {
    fn braiding(&self) -> Result<DiagonalBraiding> {
        let lit = |s: &str| parse_scalar_literal(s).with_context(|| format!("literal {s:?}"));
        let (q12, q21) = match (&self.q12q21, &self.q12, &self.q21) {
            (Some(r), None, None) => (lit(r)?, CyclotomicNumber::one()),
            (None, Some(a), Some(b)) => (lit(a)?, lit(b)?),
            _ => bail!("give either --q12q21 or both --q12 and --q21"),
        };
        Ok(DiagonalBraiding::new(lit(&self.q11)?, q12, q21, lit(&self.q22)?)?)
    }
}

fn parse_degree(s: &str) -> Result<MultiDegree, String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a == 0 && b == 0 {
        return Err("degree must be nonzero".into());
    }
    Ok(MultiDegree::new(a, b))
}

#[derive(Subcommand)]
enum Command {
    /// Both classifiers on a braiding, with an agreement flag.
    Classify(BraidingArgs),
    /// Conditions (A1)-(A8).
    Conditions(BraidingArgs),
    /// Graded dimensions of B(V) up to a total degree.
    Dims {
        #[command(flatten)]
        braiding: BraidingArgs,
        #[arg(long, default_value_t = 6)]
        max: u32,
        #[arg(long)]
        modular: bool,
    },
    /// Braiding of the subquotient generated in degrees d1, d2.
    Subquotient {
        #[command(flatten)]
        braiding: BraidingArgs,
        #[arg(long, value_parser = parse_degree, default_value = "2,2")]
        d1: MultiDegree,
        #[arg(long, value_parser = parse_degree, default_value = "1,1")]
        d2: MultiDegree,
        /// Also validate the generators (w_1, x_21), products up to this total degree.
        #[arg(long, num_args = 0..=1, default_missing_value = "8")]
        validate: Option<u32>,
    },
    /// Descent detector for the two recognized families.
    Descent {
        #[command(flatten)]
        braiding: BraidingArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Literal scan and pipeline sweep with disagreement report.
    Enumerate,
    /// The invariant suite.
    Verify,
}

#[derive(Serialize)]
struct ClassifyResult {
    theorem: nichols::Verdict,
    pipeline: nichols::Verdict,
    agreement: bool,
}

fn emit<T: Serialize>(doc: &T, out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(std::io::stdout().lock(), "{text}")?,
    }
    Ok(())
}

/// Returns whether an alarm was raised.
fn run(cli: &Cli) -> Result<bool> {
    let config = cli.job.config().resolved()?;
    let name = match &cli.command {
        Command::Classify(_) => "classify",
        Command::Conditions(_) => "conditions",
        Command::Dims { .. } => "dims",
        Command::Subquotient { .. } => "subquotient",
        Command::Descent { .. } => "descent",
        Command::Enumerate => "enumerate",
        Command::Verify => "verify",
    };
    let mut alarm = false;
    match &cli.command {
        Command::Classify(b) => {
            let br = b.braiding()?;
            let doc = ReportDocument::timed(name, &config, || {
                let theorem = classify_theorem(&br.twist_class());
                let pipeline = classify_pipeline(&br, config.limits());
                let agreement = theorem.agrees_with(&pipeline);
                ClassifyResult {
                    theorem,
                    pipeline,
                    agreement,
                }
            });
            alarm = !doc.results.agreement;
            emit(&doc, &cli.out)?;
        }
        Command::Conditions(b) => {
            let br = b.braiding()?;
            let limits = nichols::Limits {
                exact_witnesses: true,
                ..config.limits()
            };
            emit(&ReportDocument::timed(name, &config, || evaluate_conditions(&br, limits)), &cli.out)?;
        }
        Command::Dims {
            braiding,
            max,
            modular,
        } => {
            let br = Arc::new(braiding.braiding()?);
            let precision = if *modular { Precision::Modular } else { Precision::Exact };
            let doc = ReportDocument::timed(name, &config, || {
                nichols::tensor::hilbert_report(&br, *max, config.max_degree, precision)
            });
            let results = doc.results.map_err(anyhow::Error::from)?;
            emit(
                &ReportDocument {
                    results,
                    tool_version: doc.tool_version,
                    command: doc.command,
                    config: doc.config,
                    timing: doc.timing,
                },
                &cli.out,
            )?;
        }
        Command::Subquotient {
            braiding,
            d1,
            d2,
            validate,
        } => {
            let br = braiding.braiding()?;
            #[derive(Serialize)]
            struct Out {
                step: SubquotientStep,
                validation: Option<nichols::subquotients::SubquotientValidation>,
            }
            let validation = match validate {
                Some(cutoff) => {
                    let arc = Arc::new(br.clone());
                    let gens = step6_generators(&arc)?;
                    let ctx = RootVectorContext::new(&arc);
                    let v = validate_subquotient(&ctx, &gens, *cutoff)?;
                    alarm = !v.passes();
                    Some(v)
                }
                None => None,
            };
            let step = SubquotientStep::new(br, *d1, *d2);
            emit(&ReportDocument::timed(name, &config, || Out { step, validation }), &cli.out)?;
        }
        Command::Descent { braiding, max_steps } => {
            let br = braiding.braiding()?;
            let out = descent_chain(&br, *max_steps)?;
            emit(&ReportDocument::timed(name, &config, || out), &cli.out)?;
        }
        Command::Enumerate => {
            let doc = enumerate_triples(&config)?;
            alarm = doc.results.alarm();
            emit(&doc, &cli.out)?;
        }
        Command::Verify => {
            let doc = config.install(|| ReportDocument::timed(name, &config, || run_verify(&config)))?;
            alarm = doc.results.alarm();
            emit(&doc, &cli.out)?;
        }
    }
    Ok(alarm)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
