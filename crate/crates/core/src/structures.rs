//! Configurations, biwebs, triwebs and prisms.
//!
//! Detection is two-phase: first the triangle/triad incidence pattern is
//! found by pure set combinatorics, then the contractibility conditions are
//! evaluated through a memoized [`VncOracle`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::budget;
use crate::connectivity::is_connected;
use crate::error::Result;
use crate::matroid::Matroid;
use crate::minors::VncOracle;
use crate::set::ElemSet;

/// `(C*, p)` with `C*` a rank-3 cocircuit and `p ∈ cl(C*) - C*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub cstar: ElemSet,
    pub p: usize,
    /// Least `x ∈ C*` with `{x, p}` vertically N-contractible.
    pub witness_x: usize,
    pub shape: Shape,
}

/// How `M | (C* ∪ p)` decomposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Connected { four_circuit: Option<ElemSet> },
    Disconnected { line: ElemSet, coloop: usize },
    /// Disconnected, but not as a line plus a coloop of `C*`.
    Anomalous,
}

impl Configuration {
    pub fn is_connected(&self) -> bool {
        matches!(self.shape, Shape::Connected { .. })
    }

    pub fn is_disconnected(&self) -> bool {
        !self.is_connected()
    }

    /// `|C*| = 3`.
    pub fn is_minimum(&self) -> bool {
        self.cstar.len() == 3
    }

    pub fn line(&self) -> Option<ElemSet> {
        match self.shape {
            Shape::Disconnected { line, .. } => Some(line),
            _ => None,
        }
    }

    pub fn coloop(&self) -> Option<usize> {
        match self.shape {
            Shape::Disconnected { coloop, .. } => Some(coloop),
            _ => None,
        }
    }

    pub fn describe(&self, m: &Matroid) -> String {
        let shape = match &self.shape {
            Shape::Connected { four_circuit } => match four_circuit {
                Some(c) => format!("connected 4-circuit {}", m.fmt_set(*c)),
                None => "connected without 4-circuit".to_string(),
            },
            Shape::Disconnected { line, coloop } => {
                format!("disconnected line {} coloop {}", m.fmt_set(*line), m.label(*coloop))
            }
            Shape::Anomalous => "anomalous".to_string(),
        };
        format!("(C*={}, p={}) {shape}", m.fmt_set(self.cstar), m.label(self.p))
    }
}

/// Fills the shape of `(cstar, p)` from `M | (C* ∪ p)`.
pub fn classify_configuration(m: &Matroid, cstar: ElemSet, p: usize) -> Result<Shape> {
    let h_set = cstar.with(p);
    let h = m.restrict(h_set)?;
    if is_connected(&h)? {
        let four_circuit = h_set.subsets_of_size(4).find(|c| m.is_circuit(*c));
        return Ok(Shape::Connected { four_circuit });
    }
    let r = m.rank(h_set);
    let candidates: Vec<usize> = cstar
        .iter()
        .filter(|&x| r == 3 && m.rank(h_set.without(x)) == 2)
        .collect();
    Ok(match candidates.as_slice() {
        [x] => Shape::Disconnected {
            line: h_set.without(*x),
            coloop: *x,
        },
        _ => Shape::Anomalous,
    })
}

/// Rank-3 cocircuits of `M`, canonically ordered.
pub fn rank3_cocircuits(m: &Matroid) -> Result<Vec<ElemSet>> {
    Ok(m.cocircuit_sets()?
        .into_iter()
        .filter(|c| m.rank(*c) == 3)
        .collect())
}

/// Every `(M, N)`-configuration, ordered by `C*` then `p`.
pub fn find_configurations(oracle: &VncOracle) -> Result<Vec<Configuration>> {
    let m = oracle.matroid();
    let mut out = Vec::new();
    for cstar in rank3_cocircuits(m)? {
        for p in m.closure(cstar) - cstar {
            budget::checkpoint()?;
            let mut witness = None;
            for x in cstar {
                if oracle.is_vnc(ElemSet::from_indices([x, p]))? {
                    witness = Some(x);
                    break;
                }
            }
            if let Some(witness_x) = witness {
                out.push(Configuration {
                    cstar,
                    p,
                    witness_x,
                    shape: classify_configuration(m, cstar, p)?,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WebKind {
    Biweb,
    Triweb,
    Prism,
}

impl WebKind {
    pub fn parse(s: &str) -> Option<WebKind> {
        match s {
            "biweb" => Some(WebKind::Biweb),
            "triweb" => Some(WebKind::Triweb),
            "prism" => Some(WebKind::Prism),
            _ => None,
        }
    }
}

impl fmt::Display for WebKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WebKind::Biweb => "biweb",
            WebKind::Triweb => "triweb",
            WebKind::Prism => "prism",
        })
    }
}

/// A biweb `x1 x2 p1 p2 p3`, triweb `x1 x2 x3 p1 p2 p3`, or prism
/// `x1 x2 x3 p1 p2 p3 q1 q2 q3`, with its condition flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebRecord {
    pub kind: WebKind,
    pub edges: Vec<usize>,
    pub triangle_p: [usize; 3],
    pub triangle_q: Option<[usize; 3]>,
    pub conditions: BTreeMap<&'static str, bool>,
}

impl WebRecord {
    /// All defining conditions of the kind hold.
    pub fn holds(&self) -> bool {
        let needed: &[&str] = match self.kind {
            WebKind::Biweb => &["BW1", "BW2", "BW3"],
            WebKind::Triweb | WebKind::Prism => &["TW1", "TW2"],
        };
        needed.iter().all(|c| self.conditions.get(c) == Some(&true))
    }

    pub fn describe(&self, m: &Matroid) -> String {
        let names = |v: &[usize]| v.iter().map(|&e| m.label(e)).collect::<Vec<_>>().join(",");
        let mut s = format!(
            "{} x=[{}] p=[{}]",
            self.kind,
            names(&self.edges),
            names(&self.triangle_p)
        );
        if let Some(q) = &self.triangle_q {
            s.push_str(&format!(" q=[{}]", names(q)));
        }
        let conds: Vec<String> = self
            .conditions
            .iter()
            .map(|(k, v)| format!("{k}={}", if *v { "yes" } else { "no" }))
            .collect();
        s.push_str(&format!(" {}", conds.join(" ")));
        s
    }
}

fn set3(a: usize, b: usize, c: usize) -> ElemSet {
    ElemSet::from_indices([a, b, c])
}

/// Triangles and triads of `M`.
pub fn triangles_and_triads(m: &Matroid) -> Result<(Vec<ElemSet>, Vec<ElemSet>)> {
    let triangles = m.circuit_sets()?.into_iter().filter(|c| c.len() == 3).collect();
    let triads = m.cocircuit_sets()?.into_iter().filter(|c| c.len() == 3).collect();
    Ok((triangles, triads))
}

/// Fan pattern `x1 x2 p1 p2 p3`: triangle `{p1,p2,p3}`, triads
/// `{x1,p2,p3}` and `{p1,x2,p3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiwebPattern {
    pub x1: usize,
    pub x2: usize,
    pub p1: usize,
    pub p2: usize,
    pub p3: usize,
}

impl BiwebPattern {
    pub fn triangle(&self) -> ElemSet {
        set3(self.p1, self.p2, self.p3)
    }

    pub fn set(&self) -> ElemSet {
        self.triangle().with(self.x1).with(self.x2)
    }
}

/// Every biweb incidence pattern, one per unordered swap of `(x1,p1)` and
/// `(x2,p2)` (canonically `x1 < x2`).
pub fn biweb_patterns(m: &Matroid) -> Result<Vec<BiwebPattern>> {
    let (triangles, triads) = triangles_and_triads(m)?;
    let triad_set: BTreeSet<ElemSet> = triads.iter().copied().collect();
    let mut out = BTreeSet::new();
    for t in &triangles {
        let tv = t.to_vec();
        for &p3 in &tv {
            let others: Vec<usize> = tv.iter().copied().filter(|&e| e != p3).collect();
            for (p1, p2) in [(others[0], others[1]), (others[1], others[0])] {
                let xs1: Vec<usize> = (m.ground() - *t)
                    .iter()
                    .filter(|&x| triad_set.contains(&set3(x, p2, p3)))
                    .collect();
                let xs2: Vec<usize> = (m.ground() - *t)
                    .iter()
                    .filter(|&x| triad_set.contains(&set3(x, p1, p3)))
                    .collect();
                for &x1 in &xs1 {
                    for &x2 in &xs2 {
                        if x1 < x2 {
                            out.insert(BiwebPattern { x1, x2, p1, p2, p3 });
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Triweb incidence patterns: triangle `T` and triads `{x_i} ∪ (T - p_i)`,
/// canonically `x1 < x2 < x3`.
pub fn triweb_patterns(m: &Matroid) -> Result<Vec<([usize; 3], [usize; 3])>> {
    let (triangles, triads) = triangles_and_triads(m)?;
    let triad_set: BTreeSet<ElemSet> = triads.iter().copied().collect();
    let mut out = BTreeSet::new();
    for t in &triangles {
        let tv = t.to_vec();
        let xs: Vec<Vec<usize>> = (0..3)
            .map(|i| {
                let rest = t.without(tv[i]);
                (m.ground() - *t)
                    .iter()
                    .filter(|&x| triad_set.contains(&rest.with(x)))
                    .collect()
            })
            .collect();
        for &a in &xs[0] {
            for &b in &xs[1] {
                for &c in &xs[2] {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let mut pairs = [(a, tv[0]), (b, tv[1]), (c, tv[2])];
                    pairs.sort_unstable();
                    out.insert((
                        [pairs[0].0, pairs[1].0, pairs[2].0],
                        [pairs[0].1, pairs[1].1, pairs[2].1],
                    ));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn one(e: usize) -> ElemSet {
    ElemSet::singleton(e)
}

fn pair(a: usize, b: usize) -> ElemSet {
    ElemSet::from_indices([a, b])
}

/// Evaluates BW1, BW2, BW3 and BW for a pattern.
pub fn biweb_record(m: &Matroid, oracle: &VncOracle, pat: &BiwebPattern) -> Result<WebRecord> {
    let t = pat.triangle();
    let is_triangle = m.is_circuit(t);
    let triads = m.is_cocircuit(set3(pat.x1, pat.p2, pat.p3)) && m.is_cocircuit(set3(pat.p1, pat.x2, pat.p3));
    let x1p1 = oracle.is_vnc(pair(pat.x1, pat.p1))?;
    let bw = is_triangle && triads && x1p1;
    let bw1 = is_triangle && oracle.is_vnc(t)?;
    let bw2 = oracle.is_vnc(one(pat.x1))? && oracle.is_vnc(one(pat.x2))?;
    let bw3 = triads && x1p1 && oracle.is_vnc(pair(pat.x2, pat.p2))?;
    let conditions = BTreeMap::from([("BW", bw), ("BW1", bw1), ("BW2", bw2), ("BW3", bw3)]);
    Ok(WebRecord {
        kind: WebKind::Biweb,
        edges: vec![pat.x1, pat.x2],
        triangle_p: [pat.p1, pat.p2, pat.p3],
        triangle_q: None,
        conditions,
    })
}

/// Evaluates TW1 and TW2 for `x1 x2 x3 p1 p2 p3`.
pub fn triweb_record(m: &Matroid, oracle: &VncOracle, x: [usize; 3], p: [usize; 3]) -> Result<WebRecord> {
    let t = set3(p[0], p[1], p[2]);
    let mut tw1 = m.is_circuit(t) && oracle.is_vnc(t)?;
    for i in 0..3 {
        if !tw1 {
            break;
        }
        tw1 = m.is_cocircuit(t.without(p[i]).with(x[i]))
            && oracle.is_vnc(one(x[i]))?
            && oracle.is_vnc(pair(x[i], p[i]))?;
    }
    let mut tw2 = oracle.is_n_contractible(t)?;
    for &xi in &x {
        if !tw2 {
            break;
        }
        tw2 = oracle.is_n_contractible(one(xi))?;
    }
    Ok(WebRecord {
        kind: WebKind::Triweb,
        edges: x.to_vec(),
        triangle_p: p,
        triangle_q: None,
        conditions: BTreeMap::from([("TW1", tw1), ("TW2", tw2)]),
    })
}

/// Every web of `kind` whose defining conditions hold.
pub fn find_webs(oracle: &VncOracle, kind: WebKind) -> Result<Vec<WebRecord>> {
    Ok(web_records(oracle, kind)?.into_iter().filter(|w| w.holds()).collect())
}

/// Every incidence pattern of `kind` with its evaluated conditions.
pub fn web_records(oracle: &VncOracle, kind: WebKind) -> Result<Vec<WebRecord>> {
    let m = oracle.matroid();
    match kind {
        WebKind::Biweb => biweb_patterns(m)?
            .iter()
            .map(|p| biweb_record(m, oracle, p))
            .collect(),
        WebKind::Triweb => triweb_patterns(m)?
            .into_iter()
            .map(|(x, p)| triweb_record(m, oracle, x, p))
            .collect(),
        WebKind::Prism => {
            let tri = triweb_patterns(m)?;
            let mut out = Vec::new();
            for (i, (x, p)) in tri.iter().enumerate() {
                for (y, q) in &tri[i + 1..] {
                    if x != y || set3(p[0], p[1], p[2]).intersects(set3(q[0], q[1], q[2])) {
                        continue;
                    }
                    let a = triweb_record(m, oracle, *x, *p)?;
                    let b = triweb_record(m, oracle, *y, *q)?;
                    let mut conditions = BTreeMap::new();
                    for c in ["TW1", "TW2"] {
                        conditions.insert(c, a.conditions[c] && b.conditions[c]);
                    }
                    out.push(WebRecord {
                        kind: WebKind::Prism,
                        edges: x.to_vec(),
                        triangle_p: *p,
                        triangle_q: Some(*q),
                        conditions,
                    });
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn prism_graph_has_the_prism_pattern() {
        let m = catalog::prism().unwrap();
        let tw = triweb_patterns(&m).unwrap();
        let x = m.set_of(&["x1", "x2", "x3"]).unwrap();
        let hits: Vec<_> = tw
            .iter()
            .filter(|(xs, _)| ElemSet::from_indices(xs.iter().copied()) == x)
            .collect();
        assert_eq!(hits.len(), 2);
        let k4 = catalog::complete(4).unwrap();
        let oracle = VncOracle::new(&m, &k4).unwrap();
        let prisms = web_records(&oracle, WebKind::Prism).unwrap();
        assert!(prisms.iter().any(|w| ElemSet::from_indices(w.edges.iter().copied()) == x));
    }

    #[test]
    fn no_triads_no_webs() {
        let m = catalog::uniform(2, 5).unwrap();
        assert!(biweb_patterns(&m).unwrap().is_empty());
        assert!(triweb_patterns(&m).unwrap().is_empty());
    }

    #[test]
    fn wheel_fans_are_biweb_patterns() {
        let m = catalog::wheel(4).unwrap();
        let pats = biweb_patterns(&m).unwrap();
        assert!(!pats.is_empty());
        for p in &pats {
            assert!(m.is_circuit(p.triangle()));
        }
    }

    #[test]
    fn coloop_restriction_is_disconnected() {
        // K4: star {a,b,c} at vertex 0 is a rank-3 cocircuit; d spans with a,b
        let m = catalog::complete(4).unwrap();
        let cstar = m.set_of(&["e12", "e13", "e14"]).unwrap();
        assert!(m.is_cocircuit(cstar));
        let p = m.index_of("e23").unwrap();
        match classify_configuration(&m, cstar, p).unwrap() {
            Shape::Disconnected { line, coloop } => {
                assert_eq!(m.label(coloop), "e14");
                assert_eq!(m.fmt_set(line), "{e12,e13,e23}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
