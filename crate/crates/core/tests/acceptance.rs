//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use matroid_core::catalog;
use matroid_core::connectivity::is_3connected;
use matroid_core::field::PrimeField;
use matroid_core::minors::{has_minor, vnc_elements};
use matroid_core::roundedness::{self, Decision, Variant};
use matroid_core::theorems::{
    self, strip_timing, HarnessConfig, HarnessReport, Outcome, PairContext, ResolvedPair,
};
use matroid_core::{Backend, ElemSet, Matroid};

use common::graph;

const LIMIT_KERNEL: Duration = Duration::from_secs(60);
const LIMIT_DUALITY: Duration = Duration::from_secs(60);
const LIMIT_CONNECTIVITY: Duration = Duration::from_secs(30);
const LIMIT_T1: Duration = Duration::from_secs(10 * 60);
const LIMIT_LEMMAS: Duration = Duration::from_secs(30 * 60);
const LIMIT_T2: Duration = Duration::from_secs(30 * 60);
const LIMIT_T4: Duration = Duration::from_secs(5 * 60);
const LIMIT_ROUNDED: Duration = Duration::from_secs(30 * 60);
const LIMIT_ARITHMETIC: Duration = Duration::from_secs(1);
const LIMIT_DETERMINISM: Duration = Duration::from_secs(30 * 60);

const LEMMAS: &[&str] = &[
    "w37a",
    "w37b",
    "w38",
    "melo",
    "4-circuit",
    "contractible-coloop",
    "rank3pair",
    "same-coloop-line",
    "second-configuration",
    "third-configuration",
    "triangle",
    "novolema",
    "3fan-a",
    "3fan-b",
    "3fan-c",
    "3fan-d",
    "in-cl",
    "nocircuit",
    "minimum-connected",
    "disconnected",
    "minimum",
    "prism",
];

/// Lemmas whose hypothesis must trigger at least once on the corpus.
const MUST_TRIGGER: &[&str] = &["w38", "melo", "3fan-a", "3fan-b", "3fan-c", "3fan-d"];

type Verdict = Result<String, String>;

fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(file)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn full_run(parallel: usize) -> Result<HarnessReport, String> {
    let cfg = HarnessConfig {
        parallel,
        ..HarnessConfig::default()
    };
    theorems::run_manifest_file(&corpus("manifest"), &cfg).map_err(err)
}

fn kernel() -> Verdict {
    let mut subsets = 0usize;
    for r in common::SMALL_CATALOG {
        let m = catalog::resolve(r).map_err(err)?;
        ensure(m.len() <= 10, || format!("{r} has {} elements", m.len()))?;
        let ranks = common::rank_table(&m);
        for (x, &want) in ranks.iter().enumerate() {
            let got = m.rank(ElemSet(x as u64));
            ensure(got == want, || format!("{r}: r({}) = {got}, oracle {want}", m.fmt_set(ElemSet(x as u64))))?;
        }
        subsets += ranks.len();
    }
    Ok(format!("{} matroids, {subsets} subset ranks equal", common::SMALL_CATALOG.len()))
}

fn duality() -> Verdict {
    for r in common::SMALL_CATALOG {
        let m = catalog::resolve(r).map_err(err)?;
        let n = m.len();
        let bases = common::bases_from_table(&common::independence_table(&m), n);
        let mut want = common::cocircuits_from_bases(&bases, n);
        want.sort();
        let mut got = m.dual().circuit_sets().map_err(err)?;
        got.sort();
        ensure(got == want, || format!("{r}: circuits of the dual differ from oracle cocircuits"))?;
        let mut co = m.cocircuit_sets().map_err(err)?;
        co.sort();
        ensure(co == want, || format!("{r}: cocircuits differ from oracle"))?;
        let mut circ = m.circuit_sets().map_err(err)?;
        circ.sort();
        ensure(circ == common::circuits_from_bases(&bases, n), || format!("{r}: circuits differ from oracle"))?;
        let dd = m.dual().dual();
        let ranks = common::rank_table(&m);
        for (x, &want) in ranks.iter().enumerate() {
            ensure(dd.rank(ElemSet(x as u64)) == want, || format!("{r}: dual of dual disagrees at {x:#b}"))?;
        }
    }
    Ok(format!("{} matroids", common::SMALL_CATALOG.len()))
}

fn gf(p: u8) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn negatives() -> Result<Vec<(&'static str, Matroid)>, String> {
    let u24_loop = Matroid::linear(
        gf(3),
        vec![("a", vec![1, 0]), ("b", vec![0, 1]), ("c", vec![1, 1]), ("d", vec![1, 2]), ("z", vec![0, 0])],
    )
    .map_err(err)?;
    let k4_parallel = Matroid::graphic(
        4,
        vec![("a", 0, 1), ("b", 0, 2), ("c", 0, 3), ("d", 1, 2), ("e", 1, 3), ("f", 2, 3), ("g", 0, 1)],
    )
    .map_err(err)?;
    let f7_parallel = Matroid::linear(
        gf(2),
        vec![
            ("a", vec![1, 0, 0]),
            ("b", vec![0, 1, 0]),
            ("c", vec![0, 0, 1]),
            ("d", vec![1, 1, 0]),
            ("e", vec![1, 0, 1]),
            ("f", vec![0, 1, 1]),
            ("g", vec![1, 1, 1]),
            ("h", vec![1, 1, 1]),
        ],
    )
    .map_err(err)?;
    let wheel4_loop = Matroid::linear(
        gf(2),
        vec![
            ("a", vec![1, 0, 0, 0]),
            ("b", vec![0, 1, 0, 0]),
            ("c", vec![0, 0, 1, 0]),
            ("d", vec![0, 0, 0, 1]),
            ("e", vec![1, 1, 0, 0]),
            ("f", vec![0, 1, 1, 0]),
            ("g", vec![0, 0, 1, 1]),
            ("h", vec![1, 0, 0, 1]),
            ("z", vec![0, 0, 0, 0]),
        ],
    )
    .map_err(err)?;
    let u36_parallel = Matroid::linear(
        gf(7),
        vec![
            ("a", vec![1, 0, 0]),
            ("b", vec![0, 1, 0]),
            ("c", vec![0, 0, 1]),
            ("d", vec![1, 1, 1]),
            ("e", vec![1, 2, 3]),
            ("f", vec![1, 4, 2]),
            ("g", vec![2, 4, 6]),
        ],
    )
    .map_err(err)?;
    Ok(vec![
        ("U24+loop", u24_loop),
        ("K4+parallel", k4_parallel),
        ("F7+parallel", f7_parallel),
        ("W4+loop", wheel4_loop),
        ("U36+parallel", u36_parallel),
    ])
}

fn connectivity() -> Verdict {
    let positives = ["u24", "k4", "f7", "whirl3", "wheel3", "wheel4", "wheel5", "wheel6", "prism"];
    for r in positives {
        let m = catalog::resolve(r).map_err(err)?;
        let oracle = common::three_connected_from_ranks(&common::rank_table(&m), m.len());
        ensure(oracle, || format!("oracle says {r} is not 3-connected"))?;
        ensure(is_3connected(&m).map_err(err)?, || format!("{r} reported not 3-connected"))?;
    }
    let neg = negatives()?;
    for (name, m) in &neg {
        ensure(!m.is_simple(), || format!("{name} should have a loop or parallel pair"))?;
        let oracle = common::three_connected_from_ranks(&common::rank_table(m), m.len());
        ensure(!oracle, || format!("oracle says {name} is 3-connected"))?;
        ensure(!is_3connected(m).map_err(err)?, || format!("{name} reported 3-connected"))?;
    }
    Ok(format!("{} 3-connected, {} with a loop or parallel pair rejected", positives.len(), neg.len()))
}

/// The hypotheses, evaluated outside the harness.
fn t1_hypothesis(p: &ResolvedPair, k: usize) -> Result<bool, String> {
    let (m, n) = (&p.m, &p.n);
    if !is_3connected(m).map_err(err)? || !is_3connected(n).map_err(err)? {
        return Ok(false);
    }
    if has_minor(m, n, ElemSet::EMPTY).map_err(err)?.is_none() {
        return Ok(false);
    }
    if (m.full_rank() as isize - n.full_rank() as isize) < k as isize {
        return Ok(false);
    }
    Ok(n.is_simple() || m.full_rank() != 2)
}

fn t1_suite() -> Verdict {
    let pairs = theorems::read_manifest(&corpus("manifest"))
        .and_then(|m| m.resolve_pairs())
        .map_err(err)?;
    let cfg = HarnessConfig {
        only: vec!["T1".into()],
        ..HarnessConfig::default()
    };
    let report = theorems::run_pairs(&pairs, &cfg).map_err(err)?;
    let mut verified = 0;
    for rec in &report.records {
        let k: usize = rec.statement["T1(k=".len()..rec.statement.len() - 1].parse().map_err(err)?;
        let p = pairs.iter().find(|p| p.label == rec.pair).ok_or("record without a pair")?;
        let want = if t1_hypothesis(p, k)? { Outcome::Verified } else { Outcome::Vacuous };
        ensure(rec.outcome == want, || {
            format!("{} on {}: {} ({}), expected {want}", rec.statement, rec.pair, rec.outcome, rec.witness)
        })?;
        if rec.outcome == Outcome::Verified {
            verified += 1;
            let v = vnc_elements(&p.m, &p.n).map_err(err)?.elements;
            ensure(p.m.rank(v) >= k, || format!("{} on {}: r(V_N) < {k}", rec.statement, rec.pair))?;
        }
    }
    for k in 1..=3 {
        for pair in [format!("wheel{}/k4", 3 + k), format!("whirl{}/u24", 2 + k)] {
            let stmt = format!("T1(k={k})");
            let rec = report
                .records
                .iter()
                .find(|r| r.pair == pair && r.statement == stmt)
                .ok_or_else(|| format!("{stmt} on {pair} missing from the corpus"))?;
            ensure(rec.outcome == Outcome::Verified, || format!("{stmt} on {pair}: {}", rec.outcome))?;
        }
    }

    let m = catalog::resolve("u2_5").map_err(err)?;
    let n = catalog::resolve("u1_2").map_err(err)?;
    // M/x is a rank-1 matroid on four parallel elements; its simplification
    // has one element and so no U12-minor.
    for x in m.ground() {
        let si = m.contract(ElemSet::singleton(x)).map_err(err)?.simplify(ElemSet::EMPTY);
        ensure(si.matroid.len() < n.len(), || format!("si(U25/{x}) is unexpectedly large"))?;
    }
    ensure(vnc_elements(&m, &n).map_err(err)?.elements.is_empty(), || "V_N(U25) is not empty".into())?;
    let ctx = PairContext::new("u2_5/u1_2", &m, &n);
    for s in theorems::lookup("T1") {
        let r = theorems::run_statement(&ctx, s, Duration::from_secs(60));
        ensure(r.outcome == Outcome::Vacuous, || format!("{} on U25/U12: {}", s.id, r.outcome))?;
        ensure(r.witness.contains("V_N(M)={}"), || format!("{} on U25/U12: {}", s.id, r.witness))?;
    }
    Ok(format!(
        "{} T1 records, {verified} verified, rest vacuous as predicted; U25/U12 has V_N(M)={{}} and is marked unsatisfied",
        report.records.len()
    ))
}

fn stats(report: &HarnessReport, id: &str) -> (usize, usize, usize) {
    let of = |o| report.records.iter().filter(|r| r.statement == id && r.outcome == o).count();
    (of(Outcome::Vacuous), of(Outcome::Verified), of(Outcome::Violated))
}

fn lemmas(report: &HarnessReport) -> Verdict {
    let mut census = Vec::new();
    for id in LEMMAS {
        let (vac, ver, vio) = stats(report, id);
        ensure(vac + ver + vio > 0, || format!("{id} has no records"))?;
        ensure(vio == 0, || format!("{id} violated {vio} times"))?;
        let bad = report
            .records
            .iter()
            .filter(|r| r.statement == *id && matches!(r.outcome, Outcome::Timeout | Outcome::Error))
            .count();
        ensure(bad == 0, || format!("{id} has {bad} timeouts or errors"))?;
        census.push(format!("{id} {ver}/{}", vac + ver));
    }
    for id in MUST_TRIGGER {
        ensure(stats(report, id).1 >= 1, || format!("{id} never triggered"))?;
    }
    println!("    triggered/pairs: {}", census.join(", "));
    Ok(format!("{} lemmas, zero violated", LEMMAS.len()))
}

fn critical(report: &HarnessReport) -> Verdict {
    let summary = report.summary();
    let mut parts = Vec::new();
    for id in ["T2", "T2-cor"] {
        let (vac, ver, vio) = stats(report, id);
        ensure(vio == 0, || format!("{id} violated {vio} times"))?;
        let line = summary
            .lines()
            .find(|l| l.starts_with(&format!("# {id}: hypothesis")))
            .ok_or_else(|| format!("no census line for {id}"))?;
        if ver == 0 {
            ensure(line.contains("never triggered"), || format!("{id}: {line}"))?;
        }
        println!("    {}", line.trim_start_matches("# "));
        parts.push(format!("{id} triggered {ver}, vacuous {vac}"));
    }
    Ok(parts.join("; "))
}

fn t4() -> Verdict {
    let g = catalog::resolve("wheel9").map_err(err)?;
    let h = catalog::resolve("k4").map_err(err)?;
    let s = theorems::lookup("T4")[0];
    let r = theorems::run_statement(&PairContext::new("wheel9/k4", &g, &h), s, LIMIT_T4);
    ensure(r.outcome == Outcome::Verified, || format!("T4: {} ({})", r.outcome, r.witness))?;
    let inner = r
        .witness
        .split_once('{')
        .and_then(|(_, rest)| rest.split_once('}'))
        .map(|(x, _)| x)
        .ok_or("witness without a set")?;
    let labels: Vec<&str> = inner.split(',').collect();
    ensure(labels.len() == 4, || format!("witness {inner} does not have 4 edges"))?;
    let Backend::Graphic(rep) = g.backend() else {
        return Err("wheel is not graphic".into());
    };
    let idx: Vec<usize> = labels.iter().map(|l| g.index_of(l)).collect::<Result<_, _>>().map_err(err)?;
    let chosen: Vec<(usize, usize)> = idx.iter().map(|&e| rep.edges[e]).collect();
    ensure(graph::is_forest(rep.vertices, &chosen), || format!("{inner} contains a cycle"))?;
    for (&e, l) in idx.iter().zip(&labels) {
        let (v, edges) = graph::contract_simple(rep.vertices, &rep.edges, e);
        // simple 3-connected graphs on at least four vertices have a K4-minor
        ensure(graph::is_3connected(v, &edges), || format!("si(G/{l}) is not 3-connected"))?;
    }
    Ok(format!("4-independent contractible edges {{{inner}}}"))
}

fn rounded(file: &str, k: usize, variant: Variant, elements: usize, rank: usize) -> Verdict {
    let spec = roundedness::read_class_spec(&corpus(file)).map_err(err)?;
    ensure(spec.caps.elements == elements && spec.caps.rank == rank, || {
        format!("{file}: caps are {}/{}, expected {elements}/{rank}", spec.caps.elements, spec.caps.rank)
    })?;
    let report = roundedness::decide_rounded(&spec, k, variant).map_err(err)?;
    match &report.decision {
        Decision::RoundedWithinCaps => Ok(format!(
            "{}: rounded-within-caps, {} matroids tested",
            spec.name,
            report.census.tested()
        )),
        d => Err(format!("{}: {}\n{}", spec.name, d.tag(), report.render())),
    }
}

fn arithmetic() -> Verdict {
    for rbar in 0..10 {
        for (k, extra) in [(1, 1), (2, 2), (3, 4)] {
            let got = roundedness::rank_bound(rbar, k);
            ensure(got == rbar + extra, || format!("bound({rbar},{k}) = {got}"))?;
        }
    }
    let u24 = catalog::resolve("u24").map_err(err)?;
    let rbar = roundedness::rbar(&[u24]).map_err(err)?;
    ensure(rbar == 2, || format!("rbar(U24) = {rbar}"))?;
    Ok("r+1, r+2, r+4 for k=1,2,3".into())
}

fn determinism() -> Verdict {
    let a = strip_timing(&full_run(1)?.render());
    let b = strip_timing(&full_run(4)?.render());
    ensure(a == b, || "reports differ after stripping timing".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

struct Sheet {
    failed: Vec<String>,
}

impl Sheet {
    fn run(&mut self, id: &str, title: &str, limit: Duration, f: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = match res {
            Ok(_) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            r => r,
        };
        match res {
            Ok(msg) => println!("PASS {id} {title}: {msg} [{took:.1?} <= {limit:?}]"),
            Err(msg) => {
                println!("FAIL {id} {title}: {msg} [{took:.1?}]");
                self.failed.push(id.to_string());
            }
        }
    }
}

fn main() {
    let mut sheet = Sheet { failed: Vec::new() };
    sheet.run("1", "kernel rank oracle", LIMIT_KERNEL, kernel);
    sheet.run("2", "duality", LIMIT_DUALITY, duality);
    sheet.run("3", "connectivity ground truth", LIMIT_CONNECTIVITY, connectivity);
    sheet.run("4", "T1 suite", LIMIT_T1, t1_suite);

    sheet.run("5", "lemma suites", LIMIT_LEMMAS, || lemmas(&full_run(1)?));
    sheet.run("6", "critical-scene census", LIMIT_T2, || critical(&full_run(1)?));

    sheet.run("7", "T4 on W9/K4", LIMIT_T4, t4);
    sheet.run("8a", "roundedness {U24}, k=2, GF(3)", LIMIT_ROUNDED, || {
        rounded("u24.class", 2, Variant::Kr, 8, 4)
    });
    sheet.run("8b", "roundedness {F7}, k=3, l=2, GF(2)", LIMIT_ROUNDED, || {
        rounded("f7.class", 3, Variant::Klr(2), 10, 5)
    });
    sheet.run("9", "rank-bound arithmetic", LIMIT_ARITHMETIC, arithmetic);
    sheet.run("10", "determinism", LIMIT_DETERMINISM, determinism);

    if sheet.failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failed {}", sheet.failed.join(", "));
        std::process::exit(1);
    }
}
