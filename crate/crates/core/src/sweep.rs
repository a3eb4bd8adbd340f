//! Seeded Monte Carlo sweeps over `p = c sqrt(ln n / n)`.
//!
//! Every trial draws from its own stream, seeded by mixing the master seed
//! with the cell and trial indices, so trials can run in any order on any
//! number of workers and still produce the same records.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::mu_no_triangle;
use crate::error::{Error, Result};
use crate::graph::{every_edge_in_triangle, sample_gnp, sample_two_round, triangles, Graph};
use crate::spaces::{betti1_with, cycle_space_dim};

/// Trials above this vertex count are refused.
pub const MAX_TRIAL_VERTICES: usize = 2000;

/// The default grid of constants `c`, bracketing `sqrt(3/2)`.
pub const DEFAULT_C_GRID: [f64; 5] = [1.0, 1.1, 1.224_744_871_391_589, 1.35, 1.5];

/// `c sqrt(ln n / n)`, clamped to `[0, 1]`.
pub fn edge_probability(n: usize, c: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    (c * (nf.ln() / nf).sqrt()).clamp(0.0, 1.0)
}

/// SplitMix64 finaliser.
pub fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream seed of one trial.
pub fn trial_seed(master: u64, n_index: usize, c_index: usize, trial: usize) -> u64 {
    let h = mix64(mix64(master) ^ n_index as u64);
    let h = mix64(h ^ c_index as u64);
    mix64(h ^ trial as u64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_list: Vec<usize>,
    pub c_list: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// When set, graphs are drawn by two-round exposure and the union is used.
    pub theta: Option<f64>,
    pub out_dir: Option<String>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_list.is_empty() || self.c_list.is_empty() {
            return bad("n_list and c_list must be nonempty".into());
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n == 0 || n > MAX_TRIAL_VERTICES) {
            return bad(format!("n = {n} outside 1..={MAX_TRIAL_VERTICES}"));
        }
        if let Some(&c) = self.c_list.iter().find(|&&c| !(c > 0.0 && c.is_finite())) {
            return bad(format!("c = {c} must be positive"));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if let Some(t) = self.theta {
            if !(t > 0.0 && t < 1.0) {
                return bad(format!("theta = {t} must lie in (0, 1)"));
            }
        }
        Ok(())
    }

    /// Parses flat `key=value` lines. Blank lines and `#` comments are
    /// ignored; unknown or repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n_list = None;
        let mut c_list = None;
        let mut trials = None;
        let mut seed = None;
        let mut theta = None;
        let mut out_dir = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            fn list<T: std::str::FromStr>(v: &str) -> Option<Vec<T>> {
                v.split(',').map(|s| s.trim().parse().ok()).collect()
            }
            let dup = || err(format!("duplicate key `{key}`"));
            let bad = || err(format!("invalid value for `{key}`: `{value}`"));
            match key {
                "n_list" => {
                    if n_list.replace(list(value).ok_or_else(bad)?).is_some() {
                        return Err(dup());
                    }
                }
                "c_list" => {
                    if c_list.replace(list(value).ok_or_else(bad)?).is_some() {
                        return Err(dup());
                    }
                }
                "trials" => {
                    if trials.replace(value.parse().map_err(|_| bad())?).is_some() {
                        return Err(dup());
                    }
                }
                "seed" => {
                    if seed.replace(value.parse().map_err(|_| bad())?).is_some() {
                        return Err(dup());
                    }
                }
                "theta" => {
                    if theta.replace(value.parse().map_err(|_| bad())?).is_some() {
                        return Err(dup());
                    }
                }
                "out_dir" => {
                    if out_dir.replace(value.to_string()).is_some() {
                        return Err(dup());
                    }
                }
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        let missing = |k: &str| Error::Config(format!("missing key `{k}`"));
        let config = SweepConfig {
            n_list: n_list.ok_or_else(|| missing("n_list"))?,
            c_list: c_list.ok_or_else(|| missing("c_list"))?,
            trials: trials.ok_or_else(|| missing("trials"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
            theta,
            out_dir,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Measurements from one sampled graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub seed: u64,
    pub edges: usize,
    pub triangles: usize,
    pub q: bool,
    pub dim_cycle: usize,
    pub dim_triangle: usize,
    pub betti1: usize,
    /// Wall time in milliseconds; zero unless timing was requested.
    pub ms: f64,
}

impl TrialRecord {
    /// Q holds and the triangle space is a proper subspace of the cycle space.
    pub fn q_and_not_spanning(&self) -> bool {
        self.q && self.betti1 > 0
    }
}

/// Computes every record field for a given graph.
pub fn record_for_graph(g: &Graph, c: f64, p: f64, seed: u64) -> TrialRecord {
    let start = Instant::now();
    let tris = triangles(g);
    let dim_cycle = cycle_space_dim(g);
    let betti1 = betti1_with(g, &tris);
    TrialRecord {
        n: g.n(),
        c,
        p,
        seed,
        edges: g.m(),
        triangles: tris.len(),
        q: every_edge_in_triangle(g),
        dim_cycle,
        dim_triangle: dim_cycle - betti1,
        betti1,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn implied_c(n: usize, p: f64) -> f64 {
    let base = edge_probability(n, 1.0);
    if base > 0.0 {
        p / base
    } else {
        0.0
    }
}

/// Samples `G(n, p)` and measures it.
pub fn run_trial(n: usize, p: f64, seed: u64) -> Result<TrialRecord> {
    run_trial_with(n, p, seed, None)
}

fn run_trial_with(n: usize, p: f64, seed: u64, theta: Option<f64>) -> Result<TrialRecord> {
    if n > MAX_TRIAL_VERTICES {
        return Err(Error::BudgetExceeded {
            what: "vertices",
            got: n,
            limit: MAX_TRIAL_VERTICES,
        });
    }
    let start = Instant::now();
    let g = match theta {
        None => sample_gnp(n, p, seed)?,
        Some(t) => {
            let (g0, g1) = sample_two_round(n, p, t, seed)?;
            g0.union(&g1)?
        }
    };
    let mut record = record_for_graph(&g, implied_c(n, p), p, seed);
    record.ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(record)
}

/// Per-cell aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub trials: usize,
    /// Fraction of trials with Q.
    pub p_q: f64,
    /// Fraction with `T = C`.
    pub p_t_eq_c: f64,
    /// Fraction with Q and `T != C`.
    pub p_q_and_neq: f64,
    pub mean_betti1: f64,
    pub mu_analytic: f64,
    pub exp_neg_mu: f64,
}

pub const SUMMARY_HEADER: &str =
    "n,c,p,trials,p_q,p_t_eq_c,p_q_and_neq,mean_betti1,mu_analytic,exp_neg_mu";

/// `%g`-style formatting with six significant digits.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        format!("{}e{exp}", trim(mantissa))
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

impl CellSummary {
    fn from_records(n: usize, c: f64, p: f64, records: &[TrialRecord]) -> Self {
        let trials = records.len();
        let frac = |k: usize| k as f64 / trials as f64;
        let mu = if n >= 2 { mu_no_triangle(n, p) } else { 0.0 };
        CellSummary {
            n,
            c,
            p,
            trials,
            p_q: frac(records.iter().filter(|r| r.q).count()),
            p_t_eq_c: frac(records.iter().filter(|r| r.betti1 == 0).count()),
            p_q_and_neq: frac(records.iter().filter(|r| r.q_and_not_spanning()).count()),
            mean_betti1: records.iter().map(|r| r.betti1 as f64).sum::<f64>() / trials as f64,
            mu_analytic: mu,
            exp_neg_mu: (-mu).exp(),
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            fmt_sig6(self.c),
            fmt_sig6(self.p),
            self.trials,
            fmt_sig6(self.p_q),
            fmt_sig6(self.p_t_eq_c),
            fmt_sig6(self.p_q_and_neq),
            fmt_sig6(self.mean_betti1),
            fmt_sig6(self.mu_analytic),
            fmt_sig6(self.exp_neg_mu),
        )
    }
}

/// Receives records as trials finish, from any worker thread.
pub trait RecordSink: Sync {
    fn append(&self, record: &TrialRecord);
}

/// Discards everything.
pub struct NullSink;

impl RecordSink for NullSink {
    fn append(&self, _: &TrialRecord) {}
}

/// Collects records in completion order.
#[derive(Default)]
pub struct MemorySink(pub Mutex<Vec<TrialRecord>>);

impl RecordSink for MemorySink {
    fn append(&self, record: &TrialRecord) {
        self.0.lock().expect("sink poisoned").push(record.clone());
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Keep wall times in the records. Off by default so that repeated runs
    /// give identical bytes.
    pub timing: bool,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    /// Ordered by `(n, c, trial)` as listed in the config.
    pub records: Vec<TrialRecord>,
    pub summary: Vec<CellSummary>,
}

impl SweepOutput {
    pub fn records_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(SUMMARY_HEADER);
        out.push('\n');
        for cell in &self.summary {
            out.push_str(&cell.csv_row());
            out.push('\n');
        }
        out
    }

    /// Writes `records.jsonl` and `summary.csv` into `dir`, each through a
    /// temporary file and a rename.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        write_atomic(&dir.join("records.jsonl"), self.records_jsonl()?.as_bytes())?;
        write_atomic(&dir.join("summary.csv"), self.summary_csv().as_bytes())?;
        Ok(())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("partial");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs every `(n, c, trial)` of the config in parallel. Records reach `sink`
/// in completion order; the returned output is sorted and summarised only
/// after all trials have finished.
pub fn run_sweep(
    config: &SweepConfig,
    options: &SweepOptions,
    sink: &dyn RecordSink,
) -> Result<SweepOutput> {
    config.validate()?;
    let jobs: Vec<(usize, usize, usize)> = (0..config.n_list.len())
        .flat_map(|ni| {
            (0..config.c_list.len())
                .flat_map(move |ci| (0..config.trials).map(move |t| (ni, ci, t)))
        })
        .collect();
    let records: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(ni, ci, t)| {
            let n = config.n_list[ni];
            let c = config.c_list[ci];
            let p = edge_probability(n, c);
            let seed = trial_seed(config.seed, ni, ci, t);
            let mut record = run_trial_with(n, p, seed, config.theta)?;
            record.c = c;
            if !options.timing {
                record.ms = 0.0;
            }
            sink.append(&record);
            Ok(record)
        })
        .collect::<Result<_>>()?;
    let summary = records
        .chunks(config.trials)
        .zip(jobs.chunks(config.trials))
        .map(|(cell, cell_jobs)| {
            let (ni, ci, _) = cell_jobs[0];
            let n = config.n_list[ni];
            let c = config.c_list[ci];
            CellSummary::from_records(n, c, edge_probability(n, c), cell)
        })
        .collect();
    Ok(SweepOutput { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_records() {
        let r = run_trial(5, 1.0, 17).unwrap();
        assert!(r.q);
        assert_eq!(r.betti1, 0);
        assert_eq!((r.edges, r.triangles), (10, 10));

        let r = record_for_graph(&Graph::cycle(6), 0.0, 0.0, 0);
        assert!(!r.q);
        assert_eq!(r.betti1, 1);
        assert_eq!(r.dim_cycle, 1);
        assert_eq!(r.dim_triangle, 0);
        assert!(run_trial(2001, 0.1, 0).is_err());
    }

    #[test]
    fn config_parsing() {
        let text = "# grid\nn_list = 30, 60\nc_list=1.0,1.5\ntrials=4\nseed=9\n\nout_dir=runs/x\n";
        let cfg = SweepConfig::parse(text).unwrap();
        assert_eq!(cfg.n_list, vec![30, 60]);
        assert_eq!(cfg.c_list, vec![1.0, 1.5]);
        assert_eq!(cfg.theta, None);
        assert_eq!(cfg.out_dir.as_deref(), Some("runs/x"));

        assert!(SweepConfig::parse("n_list=3\nc_list=1\ntrials=1\nseed=1\ncolour=red\n").is_err());
        assert!(SweepConfig::parse("n_list=3\nc_list=1\ntrials=1\nseed=1\nseed=2\n").is_err());
        assert!(SweepConfig::parse("n_list=3\nc_list=1\ntrials=1\n").is_err());
        assert!(SweepConfig::parse("n_list=3\nc_list=-1\ntrials=1\nseed=1\n").is_err());
        assert!(SweepConfig::parse("n_list=3\nc_list=1\ntrials=0\nseed=1\n").is_err());
        assert!(SweepConfig::parse("n_list=3\nc_list=1\ntrials=1\nseed=1\ntheta=1.5\n").is_err());
        assert!(SweepConfig::parse("n_list=3\nc_list=x\ntrials=1\nseed=1\n").is_err());
    }

    #[test]
    fn sig6_formatting() {
        assert_eq!(fmt_sig6(0.0), "0");
        assert_eq!(fmt_sig6(1.0), "1");
        assert_eq!(fmt_sig6(0.255_675_555_3), "0.255676");
        assert_eq!(fmt_sig6(20.276_086_04), "20.2761");
        assert_eq!(fmt_sig6(1.563_895_457e-9), "1.5639e-9");
        assert_eq!(fmt_sig6(1_234_567.0), "1.23457e6");
        assert_eq!(fmt_sig6(0.000_123_456_7), "0.000123457");
        assert_eq!(fmt_sig6(999_999.7), "1e6");
    }

    #[test]
    fn single_vertex_cell_is_vacuous() {
        let cfg = SweepConfig {
            n_list: vec![1],
            c_list: vec![1.0],
            trials: 3,
            seed: 1,
            theta: None,
            out_dir: None,
        };
        let out = run_sweep(&cfg, &SweepOptions::default(), &NullSink).unwrap();
        let cell = &out.summary[0];
        assert_eq!(cell.p, 0.0);
        assert_eq!(cell.p_q, 1.0);
        assert_eq!(cell.mean_betti1, 0.0);
    }

    #[test]
    fn records_are_consistent_and_ordered() {
        let cfg = SweepConfig {
            n_list: vec![20, 40],
            c_list: vec![0.8, 1.6],
            trials: 5,
            seed: 3,
            theta: Some(0.3),
            out_dir: None,
        };
        let sink = MemorySink::default();
        let out = run_sweep(&cfg, &SweepOptions::default(), &sink).unwrap();
        assert_eq!(out.records.len(), 20);
        assert_eq!(sink.0.lock().unwrap().len(), 20);
        for r in &out.records {
            assert_eq!(r.dim_cycle - r.dim_triangle, r.betti1);
            assert_eq!(r.ms, 0.0);
        }
        assert_eq!(out.records[0].n, 20);
        assert_eq!(out.records[19].n, 40);
        assert_eq!(out.summary.len(), 4);
        assert!(out.summary_csv().starts_with(SUMMARY_HEADER));
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for ni in 0..3 {
            for ci in 0..5 {
                for t in 0..50 {
                    assert!(seen.insert(trial_seed(42, ni, ci, t)));
                }
            }
        }
    }
}
