//! Exhaustive verification of structural statements over a corpus of pairs.
//!
//! Every statement runs under its own deadline. Pairs may run in parallel;
//! records always come back in manifest order.

mod context;
mod manifest;
mod report;
mod statements;

use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use context::{PairContext, Scene};
pub use manifest::{load_library, parse_manifest, read_manifest, Manifest, PairSpec, ResolvedPair};
pub use report::{strip_timing, HarnessReport, Outcome, TheoremReport};
pub use statements::{lookup, Check, Statement, STATEMENTS};

use crate::budget;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    /// Per statement and pair.
    pub timeout: Duration,
    /// Statement filter by id or base id; empty keeps everything.
    pub only: Vec<String>,
    pub parallel: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            timeout: Duration::from_secs(60),
            only: Vec::new(),
            parallel: 1,
        }
    }
}

impl HarnessConfig {
    fn keeps(&self, s: &Statement) -> bool {
        self.only.is_empty() || self.only.iter().any(|o| o == s.id || o == s.base)
    }
}

/// Runs one statement on a prepared context.
pub fn run_statement(ctx: &PairContext, s: &Statement, timeout: Duration) -> TheoremReport {
    let start = Instant::now();
    let res = budget::with_deadline(timeout, || s.run(ctx));
    let (outcome, witness) = match res {
        Ok(c) => (c.outcome, c.witness),
        Err(Error::Timeout) => (Outcome::Timeout, format!("exceeded {} s", timeout.as_secs_f64())),
        Err(e) => (Outcome::Error, e.to_string()),
    };
    TheoremReport {
        statement: s.id.to_string(),
        pair: ctx.label.clone(),
        outcome,
        witness,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_pair(pair: &ResolvedPair, cfg: &HarnessConfig) -> Vec<TheoremReport> {
    let ctx = PairContext::new(pair.label.clone(), &pair.m, &pair.n);
    pair.statements
        .iter()
        .filter(|s| cfg.keeps(s))
        .map(|s| run_statement(&ctx, s, cfg.timeout))
        .collect()
}

pub fn run_pairs(pairs: &[ResolvedPair], cfg: &HarnessConfig) -> Result<HarnessReport> {
    let chunks: Vec<Vec<TheoremReport>> = if cfg.parallel <= 1 {
        pairs.iter().map(|p| run_pair(p, cfg)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| pairs.par_iter().map(|p| run_pair(p, cfg)).collect())
    };
    let records: Vec<TheoremReport> = chunks.into_iter().flatten().collect();
    let mut watched: Vec<String> = STATEMENTS
        .iter()
        .filter(|s| s.watched && records.iter().any(|r| r.statement == s.id))
        .map(|s| s.id.to_string())
        .collect();
    watched.dedup();
    Ok(HarnessReport { records, watched })
}

/// Parses, resolves and runs a manifest file.
pub fn run_manifest_file(path: &Path, cfg: &HarnessConfig) -> Result<HarnessReport> {
    let pairs = read_manifest(path)?.resolve_pairs()?;
    run_pairs(&pairs, cfg)
}

/// 0 when nothing failed, 1 on any violation or error, 3 when the only
/// degradation is timeouts.
pub fn exit_code(report: &HarnessReport) -> i32 {
    if report.count(Outcome::Violated) > 0 || report.count(Outcome::Error) > 0 {
        1
    } else if report.count(Outcome::Timeout) > 0 {
        3
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_across_parallelism() {
        let text = "pair wheel4 k4 T1 w37b melo\npair u2_5 u1_2 T1\npair whirl4 u24 T1 rank3pair\n";
        let pairs = parse_manifest(text, None).unwrap().resolve_pairs().unwrap();
        let a = run_pairs(&pairs, &HarnessConfig::default()).unwrap();
        let b = run_pairs(
            &pairs,
            &HarnessConfig {
                parallel: 3,
                ..HarnessConfig::default()
            },
        )
        .unwrap();
        assert_eq!(strip_timing(&a.render()), strip_timing(&b.render()));
        assert_eq!(exit_code(&a), 0, "{}", a.render());
    }

    #[test]
    fn zero_timeout_reports_timeout() {
        let pairs = parse_manifest("pair wheel6 k4 w36\n", None).unwrap().resolve_pairs().unwrap();
        let cfg = HarnessConfig {
            timeout: Duration::ZERO,
            ..HarnessConfig::default()
        };
        let r = run_pairs(&pairs, &cfg).unwrap();
        assert_eq!(r.records[0].outcome, Outcome::Timeout);
        assert_eq!(exit_code(&r), 3);
    }
}
