use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use matroid_core::connectivity::{is_3connected, low_separation};
use matroid_core::format::Definition;
use matroid_core::minors::{has_minor, VncOracle};
use matroid_core::roundedness::{self, Ambient, Decision, Variant};
use matroid_core::structures::{web_records, WebKind};
use matroid_core::theorems::{self, HarnessConfig};
use matroid_core::{catalog, ElemSet, Error, Matroid};

#[derive(Parser)]
#[command(name = "matroid", version, about = "Exact computations on small matroids")]
struct Cli {
    /// Matroid file whose definitions can be referenced by name.
    #[arg(long = "lib", global = true)]
    libs: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, rank, connectivity and small circuits of a matroid.
    Info { matroid: String },
    /// Lists circuits (or cocircuits).
    Circuits {
        matroid: String,
        #[arg(long)]
        cocircuits: bool,
    },
    /// Searches for an N-minor, optionally keeping given elements.
    Minor {
        m: String,
        n: String,
        /// Comma-separated labels that must survive into the minor.
        #[arg(long)]
        pin: Option<String>,
    },
    /// The vertically N-contractible elements of M.
    Vnc {
        m: String,
        n: String,
        /// Also test every pair of elements.
        #[arg(long)]
        pairs: bool,
    },
    /// Biweb, triweb or prism patterns with their conditions.
    Webs {
        m: String,
        n: String,
        #[arg(long, default_value = "biweb")]
        kind: String,
        /// Include patterns whose conditions fail.
        #[arg(long)]
        all: bool,
    },
    /// Runs the statement harness over a manifest.
    Check {
        manifest: PathBuf,
        /// Comma-separated statement ids.
        #[arg(long)]
        only: Option<String>,
        /// Seconds per statement and pair.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        /// Worker threads; defaults to the number of logical cores.
        #[arg(long)]
        parallel: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides roundedness of a class within caps.
    Rounded {
        spec: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: Option<usize>,
        /// Overrides the spec's ambient class.
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long)]
        elements: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        seconds: Option<u64>,
    },
}

struct Resolver {
    defs: Vec<Definition>,
}

impl Resolver {
    fn new(libs: &[PathBuf]) -> Result<Resolver, Error> {
        let mut defs = Vec::new();
        for l in libs {
            defs.extend(theorems::load_library(l)?);
        }
        Ok(Resolver { defs })
    }

    /// A library name, `file:name`, a file with one definition, or a
    /// catalog reference.
    fn resolve(&self, r: &str) -> Result<Matroid, Error> {
        if let Some(d) = self.defs.iter().find(|d| d.name == r) {
            return Ok(d.matroid.clone());
        }
        if let Some((file, name)) = r.rsplit_once(':') {
            if Path::new(file).is_file() {
                let defs = theorems::load_library(Path::new(file))?;
                return defs
                    .into_iter()
                    .find(|d| d.name == name)
                    .map(|d| d.matroid)
                    .ok_or_else(|| Error::Resolution {
                        name: name.to_string(),
                        known: format!("definitions of {file}"),
                    });
            }
        }
        if Path::new(r).is_file() {
            let defs = theorems::load_library(Path::new(r))?;
            if defs.len() == 1 {
                return Ok(defs.into_iter().next().unwrap().matroid);
            }
            return Err(Error::input(format!(
                "{r} defines {} matroids; use {r}:<name>",
                defs.len()
            )));
        }
        catalog::resolve(r).map_err(|e| match e {
            Error::Resolution { name, known } if !self.defs.is_empty() => {
                let names: Vec<&str> = self.defs.iter().map(|d| d.name.as_str()).collect();
                Error::Resolution {
                    name,
                    known: format!("{}; catalog: {known}", names.join(", ")),
                }
            }
            other => other,
        })
    }
}

fn census(sets: &[ElemSet]) -> BTreeMap<usize, usize> {
    let mut c = BTreeMap::new();
    for s in sets {
        *c.entry(s.len()).or_insert(0) += 1;
    }
    c
}

fn info(m: &Matroid) -> Result<String, Error> {
    let circuits = m.circuit_sets()?;
    let cocircuits = m.cocircuit_sets()?;
    let three = is_3connected(m)?;
    let mut head = format!(
        "rank {}, {} elements, {}",
        m.full_rank(),
        m.len(),
        if three { "3-connected" } else { "not 3-connected" }
    );
    for (size, count) in census(&circuits) {
        head.push_str(&format!(", {count} circuits of size {size}"));
    }
    let mut s = head + "\n";
    s.push_str(&format!("corank {}\n", m.dual_rank()));
    if let Some(sep) = low_separation(m)? {
        s.push_str(&format!("separation {}\n", sep.describe(m)));
    }
    let fmt_census = |c: BTreeMap<usize, usize>| {
        c.iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    s.push_str(&format!("cocircuits by size: {}\n", fmt_census(census(&cocircuits))));
    let list = |sets: Vec<&ElemSet>| sets.iter().map(|x| m.fmt_set(**x)).collect::<Vec<_>>().join(" ");
    s.push_str(&format!(
        "triangles: {}\n",
        list(circuits.iter().filter(|c| c.len() == 3).collect())
    ));
    s.push_str(&format!(
        "triads: {}\n",
        list(cocircuits.iter().filter(|c| c.len() == 3).collect())
    ));
    Ok(s)
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Timeout => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let res = Resolver::new(&cli.libs)?;
    match cli.command {
        Command::Info { matroid } => {
            let m = res.resolve(&matroid)?;
            print!("{}", info(&m)?);
        }
        Command::Circuits { matroid, cocircuits } => {
            let m = res.resolve(&matroid)?;
            let sets = if cocircuits { m.cocircuit_sets()? } else { m.circuit_sets()? };
            for c in sets {
                println!("{}", m.fmt_set(c));
            }
        }
        Command::Minor { m, n, pin } => {
            let (m, n) = (res.resolve(&m)?, res.resolve(&n)?);
            let pinned = match pin {
                Some(p) => {
                    let labels: Vec<&str> = p.split(',').filter(|s| !s.is_empty()).collect();
                    m.set_of(&labels)?
                }
                None => ElemSet::EMPTY,
            };
            match has_minor(&m, &n, pinned)? {
                Some(w) => println!("minor found: {}", w.describe(&m, &n)),
                None => {
                    println!("no minor");
                    return Ok(1);
                }
            }
        }
        Command::Vnc { m, n, pairs } => {
            let (m, n) = (res.resolve(&m)?, res.resolve(&n)?);
            let o = VncOracle::new(&m, &n)?;
            let v = o.elements()?;
            println!("V_N(M) = {} (rank {})", m.fmt_set(v), m.rank(v));
            if pairs {
                for p in m.ground().subsets_of_size(2) {
                    if o.is_vnc(p)? {
                        println!("pair {}", m.fmt_set(p));
                    }
                }
            }
        }
        Command::Webs { m, n, kind, all } => {
            let kind = WebKind::parse(&kind)
                .ok_or_else(|| Error::input(format!("unknown web kind `{kind}` (biweb, triweb, prism)")))?;
            let (m, n) = (res.resolve(&m)?, res.resolve(&n)?);
            let o = VncOracle::new(&m, &n)?;
            for w in web_records(&o, kind)? {
                if all || w.holds() {
                    println!("{}", w.describe(&m));
                }
            }
        }
        Command::Check {
            manifest,
            only,
            timeout,
            parallel,
            out,
        } => {
            if !(timeout.is_finite() && timeout >= 0.0) {
                return Err(Error::input("--timeout must be a non-negative number of seconds"));
            }
            let cfg = HarnessConfig {
                timeout: Duration::from_secs_f64(timeout),
                only: only
                    .map(|s| s.split(',').filter(|t| !t.is_empty()).map(String::from).collect())
                    .unwrap_or_default(),
                parallel: parallel.unwrap_or_else(|| {
                    std::thread::available_parallelism().map_or(1, |n| n.get())
                }),
            };
            for o in &cfg.only {
                if theorems::lookup(o).is_empty() {
                    return Err(Error::input(format!("unknown statement `{o}`")));
                }
            }
            let report = theorems::run_manifest_file(&manifest, &cfg)?;
            let text = report.render();
            match out {
                Some(p) => {
                    std::fs::write(&p, &text)
                        .map_err(|e| Error::input(format!("cannot write {}: {e}", p.display())))?;
                    print!("{}", report.summary());
                }
                None => print!("{text}"),
            }
            return Ok(theorems::exit_code(&report) as u8);
        }
        Command::Rounded {
            spec,
            k,
            l,
            ambient,
            elements,
            rank,
            seconds,
        } => {
            let mut s = roundedness::read_class_spec(&spec)?;
            if let Some(a) = ambient {
                s.ambient = Ambient::parse(&a, spec.parent())?;
            }
            if let Some(e) = elements {
                s.caps.elements = e;
            }
            if let Some(r) = rank {
                s.caps.rank = r;
            }
            if let Some(t) = seconds {
                s.caps.seconds = t;
            }
            let variant = match l {
                Some(l) => Variant::Klr(l),
                None => Variant::Kr,
            };
            let report = roundedness::decide_rounded(&s, k, variant)?;
            print!("{}", report.render());
            return Ok(match report.decision {
                Decision::RoundedWithinCaps => 0,
                Decision::Violation { .. } => 1,
                Decision::Inconclusive(_) => 3,
            });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
