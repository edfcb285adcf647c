//! Sweeps over root-of-unity triples and the JSON report envelope.
//!
//! The literal scan runs [`items_holding`] on every twist class (q11, r, q22)
//! whose entries have order ≤ `max_order`. The pipeline sweep runs
//! [`classify_pipeline`] on every triple of joint conductor ≤ 60, one
//! representative per Galois orbit: σ_k(ζ) = ζ^k acts on all three entries at
//! once, and every quantity the pipeline tests is a polynomial identity in the
//! entries, so verdicts are constant on orbits. The literal verdict is checked
//! to be constant on each orbit as part of the sweep.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::braiding::DiagonalBraiding;
use crate::classifier::{classify_pipeline, classify_theorem_roots, items_holding, Outcome, Verdict};
use crate::conditions::Limits;
use crate::cyclo::{canonical_conductor, gcd, lcm, parse_literal, CycloError, CyclotomicNumber, RootOfUnity};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const PIPELINE_CONDUCTOR: u32 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JobError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("NICHOLS_WORKERS is not a positive integer: {0:?}")]
    BadWorkers(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JobConfig {
    pub max_degree: u32,
    pub max_index: usize,
    pub max_order: u32,
    pub conductor_ceiling: u32,
    /// Joint-conductor bound of the pipeline sweep.
    pub pipeline_conductor: u32,
    pub workers: usize,
    pub seed: u64,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            max_degree: 10,
            max_index: crate::root_vectors::DEFAULT_I_MAX,
            max_order: 30,
            conductor_ceiling: crate::cyclo::DEFAULT_CONDUCTOR_CEILING,
            pipeline_conductor: PIPELINE_CONDUCTOR,
            workers: 1,
            seed: 0,
        }
    }
}

impl JobConfig {
    /// Applies `NICHOLS_WORKERS` and checks every bound.
    pub fn resolved(mut self) -> Result<Self, JobError> {
        if let Ok(v) = std::env::var("NICHOLS_WORKERS") {
            self.workers = v.trim().parse().ok().filter(|w| *w > 0).ok_or(JobError::BadWorkers(v))?;
        }
        let checks = [
            ("max_degree", self.max_degree as usize),
            ("max_index", self.max_index),
            ("max_order", self.max_order as usize),
            ("conductor_ceiling", self.conductor_ceiling as usize),
            ("pipeline_conductor", self.pipeline_conductor as usize),
            ("workers", self.workers),
        ];
        match checks.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(JobError::NonPositive(name)),
            None => Ok(self),
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            index_cap: self.max_index,
            exact_witnesses: false,
        }
    }

    /// Runs `f` on a pool of `workers` threads.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, JobError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| JobError::Pool(e.to_string()))?;
        Ok(pool.install(f))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Envelope of every command's output. `results` is reproducible from
/// `config`; `timing` is not.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<T> {
    pub tool_version: &'static str,
    pub command: String,
    pub config: JobConfig,
    pub results: T,
    pub timing: Timing,
}

impl<T> ReportDocument<T> {
    pub fn timed(command: &str, config: &JobConfig, f: impl FnOnce() -> T) -> Self {
        let start = Instant::now();
        let results = f();
        ReportDocument {
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            config: config.clone(),
            results,
            timing: Timing {
                elapsed_ms: start.elapsed().as_millis(),
            },
        }
    }
}

/// Text literal of the cyclotomic grammar: `zN:k`, `r/s` or `cycN[c0,...]`.
pub fn parse_scalar_literal(text: &str) -> Result<CyclotomicNumber, CycloError> {
    parse_literal(text)
}

// ---------------------------------------------------------------------------
// Enumeration

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LabelCount {
    /// Triples satisfying the item as given.
    pub direct: u64,
    /// Triples satisfying it only after exchanging q11 and q22.
    pub exchanged: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    pub q11: String,
    pub r: String,
    pub q22: String,
    pub labels: Vec<String>,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteralSweep {
    pub max_order: u32,
    pub triples: u64,
    pub finite: u64,
    pub label_counts: BTreeMap<String, LabelCount>,
    pub finite_records: Vec<TripleRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub q11: String,
    pub r: String,
    pub q22: String,
    pub theorem: Verdict,
    pub pipeline: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineSweep {
    pub conductor_bound: u32,
    pub orbits: u64,
    pub triples: u64,
    pub finite: u64,
    pub not_in_list: u64,
    pub indeterminate: u64,
    /// Triples whose conductor exceeds the configured ceiling.
    pub skipped_conductor: u64,
    /// Orbits on which the literal verdict is not constant.
    pub galois_mismatches: Vec<String>,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnumerationReport {
    pub literal: LiteralSweep,
    pub pipeline: PipelineSweep,
}

impl EnumerationReport {
    /// A disagreement or an invariant failure was found.
    pub fn alarm(&self) -> bool {
        !self.pipeline.disagreements.is_empty() || !self.pipeline.galois_mismatches.is_empty()
    }
}

/// Roots of order ≤ n, by order then exponent.
fn roots_up_to(n: u32) -> Vec<RootOfUnity> {
    (1..=n)
        .flat_map(|m| (0..m).filter(move |k| gcd(*k, m) == 1).map(move |k| RootOfUnity::new(k as i64, m)))
        .collect()
}

/// The item scan over all triples with every order ≤ `max_order`.
pub fn literal_sweep(config: &JobConfig) -> LiteralSweep {
    let roots = roots_up_to(config.max_order);
    let per_q: Vec<(u64, BTreeMap<String, LabelCount>, Vec<TripleRecord>)> = roots
        .par_iter()
        .map(|&q| {
            let mut counts: BTreeMap<String, LabelCount> = BTreeMap::new();
            let mut records = Vec::new();
            let mut finite = 0;
            for &r in &roots {
                for &s in &roots {
                    let direct = items_holding(q, r, s);
                    let exchanged = items_holding(s, r, q);
                    if direct.is_empty() && exchanged.is_empty() {
                        continue;
                    }
                    finite += 1;
                    for c in &direct {
                        counts.entry(c.to_string()).or_default().direct += 1;
                    }
                    for c in exchanged.difference(&direct) {
                        counts.entry(c.to_string()).or_default().exchanged += 1;
                    }
                    let labels = direct.union(&exchanged).map(ToString::to_string).collect();
                    records.push(TripleRecord {
                        q11: q.to_string(),
                        r: r.to_string(),
                        q22: s.to_string(),
                        labels,
                        swapped: direct.is_empty(),
                    });
                }
            }
            (finite, counts, records)
        })
        .collect();
    let mut out = LiteralSweep {
        max_order: config.max_order,
        triples: (roots.len() as u64).pow(3),
        finite: 0,
        label_counts: BTreeMap::new(),
        finite_records: Vec::new(),
    };
    for (finite, counts, records) in per_q {
        out.finite += finite;
        for (k, v) in counts {
            let e = out.label_counts.entry(k).or_default();
            e.direct += v.direct;
            e.exchanged += v.exchanged;
        }
        out.finite_records.extend(records);
    }
    out
}

/// Exponent triple (a, b, c) over μ_m with its orbit size.
#[derive(Debug, Clone, Copy)]
struct Orbit {
    m: u32,
    exps: [u32; 3],
    size: u64,
}

/// Lexicographically least representatives of the Galois orbits on triples
/// whose joint conductor is exactly n.
fn orbits_of_conductor(n: u32) -> Vec<Orbit> {
    let m = lcm(n, 2) as u32;
    let units: Vec<u32> = (1..m).filter(|k| gcd(*k, m) == 1).collect();
    let mut out = Vec::new();
    for a in (0..m).filter(|a| *a == 0 || gcd(*a, m) == *a) {
        for b in 0..m {
            for c in 0..m {
                let l = [a, b, c].iter().fold(1u32, |acc, x| lcm(acc, m / gcd(*x, m)) as u32);
                if canonical_conductor(l) != n {
                    continue;
                }
                let mut size = 0u64;
                let mut least = true;
                for k in &units {
                    let img = [k * a % m, k * b % m, k * c % m];
                    if img < [a, b, c] {
                        least = false;
                        break;
                    }
                    if img == [a, b, c] {
                        size += 1;
                    }
                }
                if least {
                    out.push(Orbit {
                        m,
                        exps: [a, b, c],
                        // |orbit| = |units| / |stabilizer|
                        size: units.len() as u64 / size,
                    });
                }
            }
        }
    }
    out
}

enum OrbitResult {
    Skipped(u64),
    Checked {
        size: u64,
        pipeline: Verdict,
        theorem: Verdict,
        galois_mismatch: bool,
    },
}

fn check_orbit(o: Orbit, config: &JobConfig) -> OrbitResult {
    if canonical_conductor(o.m) > config.conductor_ceiling {
        return OrbitResult::Skipped(o.size);
    }
    let root = |k: u32| RootOfUnity::new(k as i64, o.m);
    let [q, r, s] = o.exps.map(root);
    let theorem = classify_theorem_roots(q, r, s);
    let signature = |q, r, s| (items_holding(q, r, s), items_holding(s, r, q));
    let base = signature(q, r, s);
    let galois_mismatch = (1..o.m).filter(|k| gcd(*k, o.m) == 1).any(|k| {
        let [q, r, s] = o.exps.map(|e| root(e * k % o.m));
        signature(q, r, s) != base
    });
    let br = DiagonalBraiding::from_roots(q, r, RootOfUnity::one(), s);
    let pipeline = classify_pipeline(&br, config.limits());
    OrbitResult::Checked {
        size: o.size,
        pipeline,
        theorem,
        galois_mismatch,
    }
}

/// Both classifiers on every triple of joint conductor ≤ `pipeline_conductor`.
pub fn pipeline_sweep(config: &JobConfig) -> PipelineSweep {
    let orbits: Vec<Orbit> = (1..=config.pipeline_conductor)
        .filter(|n| n % 4 != 2)
        .flat_map(orbits_of_conductor)
        .collect();
    let results: Vec<(Orbit, OrbitResult)> = orbits.par_iter().map(|o| (*o, check_orbit(*o, config))).collect();
    let mut out = PipelineSweep {
        conductor_bound: config.pipeline_conductor,
        orbits: orbits.len() as u64,
        triples: 0,
        finite: 0,
        not_in_list: 0,
        indeterminate: 0,
        skipped_conductor: 0,
        galois_mismatches: Vec::new(),
        disagreements: Vec::new(),
    };
    for (o, res) in results {
        let [q, r, s] = o.exps.map(|k| RootOfUnity::new(k as i64, o.m).to_string());
        match res {
            OrbitResult::Skipped(n) => out.skipped_conductor += n,
            OrbitResult::Checked {
                size,
                pipeline,
                theorem,
                galois_mismatch,
            } => {
                out.triples += size;
                match pipeline.outcome {
                    Outcome::Finite => out.finite += size,
                    Outcome::NotInList => out.not_in_list += size,
                    Outcome::Indeterminate => out.indeterminate += size,
                }
                if galois_mismatch {
                    out.galois_mismatches.push(format!("({q}, {r}, {s})"));
                }
                if !theorem.agrees_with(&pipeline) {
                    out.disagreements.push(Disagreement {
                        q11: q,
                        r,
                        q22: s,
                        theorem,
                        pipeline,
                    });
                }
            }
        }
    }
    out
}

pub fn enumerate_triples(config: &JobConfig) -> Result<ReportDocument<EnumerationReport>, JobError> {
    let config = config.clone().resolved()?;
    config.install(|| {
        ReportDocument::timed("enumerate", &config, || EnumerationReport {
            literal: literal_sweep(&config),
            pipeline: pipeline_sweep(&config),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_sizes_partition_the_triples() {
        for n in [1u32, 3, 4, 5, 8, 12] {
            let m = lcm(n, 2) as u32;
            let total: u64 = orbits_of_conductor(n).iter().map(|o| o.size).sum();
            let direct = (0..m * m * m)
                .filter(|x| {
                    let e = [x % m, x / m % m, x / (m * m)];
                    let l = e.iter().fold(1u32, |acc, k| lcm(acc, m / gcd(*k, m)) as u32);
                    canonical_conductor(l) == n
                })
                .count() as u64;
            assert_eq!(total, direct, "n = {n}");
        }
    }

    #[test]
    fn order_two_scan() {
        let config = JobConfig {
            max_order: 2,
            ..JobConfig::default()
        };
        let sweep = literal_sweep(&config);
        assert_eq!(sweep.triples, 8);
        let part1: Vec<_> = sweep.finite_records.iter().filter(|r| r.labels.contains(&"1".to_string())).collect();
        assert_eq!(part1.len(), 1);
        assert_eq!((part1[0].q11.as_str(), part1[0].r.as_str(), part1[0].q22.as_str()), ("z2:1", "z1:0", "z2:1"));
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(parse_scalar_literal("z8:3").unwrap(), CyclotomicNumber::root(3, 8));
        let v = parse_scalar_literal("cyc12[1/2,0,-1,0]").unwrap();
        assert_eq!(v, CyclotomicNumber::from_rational(&crate::cyclo::Rational::new(1.into(), 2.into())) - CyclotomicNumber::root(2, 12));
        assert!(matches!(parse_scalar_literal("z8;3"), Err(CycloError::Parse { position: 2, .. })));
    }

    #[test]
    fn bad_config() {
        let c = JobConfig {
            max_order: 0,
            ..JobConfig::default()
        };
        assert_eq!(c.resolved(), Err(JobError::NonPositive("max_order")));
    }
}
