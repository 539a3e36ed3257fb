//! Exhaustive checks, one per statement.
//!
//! A check first evaluates its hypothesis on the pair. Statements that
//! quantify over substructures (configurations, patterns, cocircuits) count
//! the instances meeting the hypothesis: none makes the outcome vacuous,
//! and the first failing instance is reported as the violation.

use crate::catalog;
use crate::connectivity::is_contractible;
use crate::error::Result;
use crate::iso::{find_isomorphism, is_isomorphic};
use crate::limits;
use crate::matroid::Backend;
use crate::minors::VncOracle;
use crate::set::ElemSet;
use crate::structures::{
    biweb_patterns, biweb_record, find_webs, triweb_record, BiwebPattern, Configuration, WebKind, WebRecord,
};

use super::context::{PairContext, Scene};
use super::report::Outcome;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub outcome: Outcome,
    pub witness: String,
}

impl Check {
    pub fn vacuous(w: impl Into<String>) -> Check {
        Check {
            outcome: Outcome::Vacuous,
            witness: w.into(),
        }
    }

    pub fn verified(w: impl Into<String>) -> Check {
        Check {
            outcome: Outcome::Verified,
            witness: w.into(),
        }
    }

    pub fn violated(w: impl Into<String>) -> Check {
        Check {
            outcome: Outcome::Violated,
            witness: w.into(),
        }
    }
}

type Run = fn(&PairContext) -> Result<Check>;

pub struct Statement {
    pub id: &'static str,
    /// The id without its parameter, used by filters.
    pub base: &'static str,
    /// The summary reports how often the hypothesis triggered.
    pub watched: bool,
    /// Runs only when named; excluded from "all statements".
    pub explicit: bool,
    run: Run,
}

impl Statement {
    pub fn run(&self, c: &PairContext) -> Result<Check> {
        (self.run)(c)
    }
}

impl std::fmt::Debug for Statement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id)
    }
}

const fn st(id: &'static str, base: &'static str, run: Run) -> Statement {
    Statement {
        id,
        base,
        watched: false,
        explicit: false,
        run,
    }
}

const fn watched(id: &'static str, run: Run) -> Statement {
    Statement {
        id,
        base: id,
        watched: true,
        explicit: false,
        run,
    }
}

pub static STATEMENTS: &[Statement] = &[
    st("T1(k=1)", "T1", |c| t1(c, 1)),
    st("T1(k=2)", "T1", |c| t1(c, 2)),
    st("T1(k=3)", "T1", |c| t1(c, 3)),
    st("Cw32", "Cw32", cw32),
    watched("T2", t2),
    watched("T2-cor", t2_cor),
    st("T4", "T4", t4),
    st("w36", "w36", w36),
    st("w37a", "w37a", w37a),
    st("w37b", "w37b", w37b),
    st("w38", "w38", w38),
    st("melo", "melo", melo),
    st("4-circuit", "4-circuit", four_circuit),
    st("contractible-coloop", "contractible-coloop", contractible_coloop),
    st("rank3pair", "rank3pair", rank3pair),
    st("same-coloop-line", "same-coloop-line", same_coloop_line),
    st("second-configuration", "second-configuration", second_configuration),
    st("third-configuration", "third-configuration", third_configuration),
    st("triangle", "triangle", triangle),
    st("novolema", "novolema", novolema),
    st("3fan-a", "3fan-a", fan_a),
    st("3fan-b", "3fan-b", fan_b),
    st("3fan-c", "3fan-c", fan_c),
    st("3fan-d", "3fan-d", fan_d),
    st("in-cl", "in-cl", in_cl),
    st("nocircuit", "nocircuit", nocircuit),
    st("minimum-connected", "minimum-connected", minimum_connected),
    st("disconnected", "disconnected", disconnected),
    st("minimum", "minimum", minimum),
    st("prism", "prism", prism),
    Statement {
        id: "sentinel",
        base: "sentinel",
        watched: false,
        explicit: true,
        run: sentinel,
    },
];

/// Statements selected by a token: a full id such as `T1(k=2)` or a base
/// id such as `T1`.
pub fn lookup(token: &str) -> Vec<&'static Statement> {
    STATEMENTS
        .iter()
        .filter(|s| s.id == token || s.base == token)
        .collect()
}

/// Instance counter for universally quantified statements.
struct Tally {
    triggered: usize,
    example: Option<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            triggered: 0,
            example: None,
        }
    }

    fn hold(&mut self, desc: impl FnOnce() -> String) {
        self.triggered += 1;
        if self.example.is_none() {
            self.example = Some(desc());
        }
    }

    fn finish(self, none: impl Into<String>) -> Check {
        match self.example {
            None => Check::vacuous(none),
            Some(e) => Check::verified(format!("{} instances; first: {e}", self.triggered)),
        }
    }
}

fn set3(a: usize, b: usize, c: usize) -> ElemSet {
    ElemSet::from_indices([a, b, c])
}

fn pair(a: usize, b: usize) -> ElemSet {
    ElemSet::from_indices([a, b])
}

fn first_k(x: ElemSet, k: usize) -> ElemSet {
    x.iter().take(k).collect()
}

fn t1(c: &PairContext, k: usize) -> Result<Check> {
    if let Some(f) = c.base_failure()? {
        return Ok(Check::vacuous(f));
    }
    let v = c.vnc()?;
    let gap = c.gap();
    if gap < k as isize {
        return Ok(Check::vacuous(format!("r(M)-r(N)={gap} < {k}; V_N(M)={}", c.fmt(v))));
    }
    if !c.n.is_simple() && c.m.full_rank() == 2 {
        return Ok(Check::vacuous(format!("N is not simple and r(M)=2; V_N(M)={}", c.fmt(v))));
    }
    let r = c.m.rank(v);
    if r >= k {
        let w = first_k(c.m.basis_of(v), k);
        Ok(Check::verified(format!("{k}-independent {} in V_N(M)={}", c.fmt(w), c.fmt(v))))
    } else {
        Ok(Check::violated(format!("V_N(M)={} has rank {r} < {k}", c.fmt(v))))
    }
}

fn cw32(c: &PairContext) -> Result<Check> {
    if let Some(f) = c.base_failure()? {
        return Ok(Check::vacuous(f));
    }
    if c.gap() < 3 {
        return Ok(Check::vacuous(format!("r(M)-r(N)={} < 3", c.gap())));
    }
    let v = c.vnc()?;
    let mut t = Tally::new();
    for x in v {
        let mut found = None;
        for y in v.without(x) {
            let Some(z) = (v - pair(x, y)).iter().find(|&z| c.m.is_independent(set3(x, y, z))) else {
                continue;
            };
            if c.is_vnc(pair(x, y))? {
                found = Some((y, z));
                break;
            }
        }
        match found {
            Some((y, z)) => t.hold(|| format!("x={} y={} z={}", c.name(x), c.name(y), c.name(z))),
            None => {
                return Ok(Check::violated(format!(
                    "x={}: no y,z in V_N={} with {{x,y}} vertically N-contractible and {{x,y,z}} independent",
                    c.name(x),
                    c.fmt(v)
                )))
            }
        }
    }
    Ok(t.finish("V_N is empty"))
}

/// The T2 hypothesis; `Err` carries the failing clause.
fn t2_hypothesis(c: &PairContext) -> Result<std::result::Result<ElemSet, String>> {
    if let Some(f) = c.base_failure()? {
        return Ok(Err(f));
    }
    if c.m.full_rank() < 5 {
        return Ok(Err(format!("r(M)={} < 5", c.m.full_rank())));
    }
    if c.gap() < 4 {
        return Ok(Err(format!("r(M)-r(N)={} < 4", c.gap())));
    }
    let v = c.vnc()?;
    let r = c.m.rank(v);
    if r > 3 {
        return Ok(Err(format!("r(V_N)={r} > 3")));
    }
    Ok(Ok(v))
}

fn edges_set(w: &WebRecord) -> ElemSet {
    w.edges.iter().copied().collect()
}

/// Webs witnessing the two alternatives: triwebs with `V_N = {x1,x2,x3}`
/// and biwebs with `V_N = {x1,x2,p3}`.
fn t2_alternatives(c: &PairContext, v: ElemSet) -> Result<(Vec<WebRecord>, Vec<WebRecord>)> {
    let oracle = c.oracle()?;
    let a = find_webs(oracle, WebKind::Triweb)?
        .into_iter()
        .filter(|w| edges_set(w) == v)
        .collect();
    let b = find_webs(oracle, WebKind::Biweb)?
        .into_iter()
        .filter(|w| edges_set(w).with(w.triangle_p[2]) == v)
        .collect();
    Ok((a, b))
}

fn t2(c: &PairContext) -> Result<Check> {
    let v = match t2_hypothesis(c)? {
        Ok(v) => v,
        Err(f) => return Ok(Check::vacuous(f)),
    };
    let case = if c.m.rank(v) == 3 { "r(V_N)=3" } else { "r(V_N)<3" };
    let (a, b) = t2_alternatives(c, v)?;
    let gap = c.gap();
    if gap >= 6 {
        let prisms = find_webs(c.oracle()?, WebKind::Prism)?;
        return Ok(match (a.first(), prisms.first()) {
            (Some(w), Some(p)) => Check::verified(format!(
                "{case}; gap {gap}; (a) {}; prism {}",
                w.describe(&c.m),
                p.describe(&c.m)
            )),
            _ => Check::violated(format!(
                "{case}; gap {gap}; V_N={}; triweb (a) found: {}; prisms found: {}",
                c.fmt(v),
                a.len(),
                prisms.len()
            )),
        });
    }
    if let Some(w) = a.first() {
        return Ok(Check::verified(format!("{case}; gap {gap}; (a) {}", w.describe(&c.m))));
    }
    if gap >= 5 {
        return Ok(Check::violated(format!("{case}; gap {gap}; V_N={} but no triweb (a)", c.fmt(v))));
    }
    Ok(match b.first() {
        Some(w) => Check::verified(format!("{case}; gap {gap}; (b) {}", w.describe(&c.m))),
        None => Check::violated(format!("{case}; V_N={} is neither (a) nor (b)", c.fmt(v))),
    })
}

fn t2_cor(c: &PairContext) -> Result<Check> {
    let v = match t2_hypothesis(c)? {
        Ok(v) => v,
        Err(f) => return Ok(Check::vacuous(f)),
    };
    if let Some(p) = find_webs(c.oracle()?, WebKind::Prism)?.first() {
        return Ok(Check::vacuous(format!("M has a prism {}", p.describe(&c.m))));
    }
    let (a, b) = t2_alternatives(c, v)?;
    if let Some(w) = a.first() {
        return Ok(Check::verified(format!("(a) {}", w.describe(&c.m))));
    }
    let mut failure = None;
    'webs: for w in &b {
        let five = edges_set(w) | w.triangle_p.iter().copied().collect::<ElemSet>();
        for x in v {
            let si = c.m.contract_simplify(ElemSet::singleton(x), five)?;
            let o = VncOracle::new(&si.matroid, &c.n)?;
            let vx = o.elements()?;
            let back = c.m.set_of(&si.matroid.labels_of(vx))?;
            if !back.is_subset(five) {
                failure.get_or_insert_with(|| {
                    format!(
                        "(b) {}: V_N(si(M/{}))={} not within {}",
                        w.describe(&c.m),
                        c.name(x),
                        c.fmt(back),
                        c.fmt(five)
                    )
                });
                continue 'webs;
            }
        }
        return Ok(Check::verified(format!(
            "(b) {}; every V_N(si(M/x)) within {}",
            w.describe(&c.m),
            c.fmt(five)
        )));
    }
    Ok(Check::violated(
        failure.unwrap_or_else(|| format!("V_N={} is neither (a) nor (b)", c.fmt(v))),
    ))
}

fn t4(c: &PairContext) -> Result<Check> {
    let (Backend::Graphic(g), Backend::Graphic(h)) = (c.m.backend(), c.n.backend()) else {
        return Ok(Check::vacuous("M or N is not given as a graph"));
    };
    if g.touched_vertices() != g.vertices || h.touched_vertices() != h.vertices {
        return Ok(Check::vacuous("a graph has isolated vertices"));
    }
    if g.vertices < 4 || h.vertices < 4 {
        return Ok(Check::vacuous("a graph has fewer than 4 vertices"));
    }
    if !c.m.is_simple() || !c.n.is_simple() {
        return Ok(Check::vacuous("a graph is not simple"));
    }
    if !c.m_3connected()? || !c.n_3connected()? {
        return Ok(Check::vacuous("a graph is not 3-connected"));
    }
    if g.vertices < h.vertices + 6 {
        return Ok(Check::vacuous(format!("|V(G)|-|V(H)|={} < 6", g.vertices as isize - h.vertices as isize)));
    }
    if c.minor_witness()?.is_none() {
        return Ok(Check::vacuous("G has no H-minor"));
    }
    let v = c.vnc()?;
    let r = c.m.rank(v);
    if r >= 4 {
        Ok(Check::verified(format!(
            "4-independent {} among contractible edges {}",
            c.fmt(first_k(c.m.basis_of(v), 4)),
            c.fmt(v)
        )))
    } else {
        Ok(Check::violated(format!("contractible edges {} have rank {r} < 4", c.fmt(v))))
    }
}

fn w36(c: &PairContext) -> Result<Check> {
    if let Some(f) = c.base_failure()? {
        return Ok(Check::vacuous(f));
    }
    let v = c.vnc()?;
    let configs = c.configurations()?;
    let mut t = Tally::new();
    for x in v {
        for p in c.m.ground() - v {
            if !c.is_vnc(pair(x, p))? {
                continue;
            }
            match configs.iter().find(|k| k.p == p && k.cstar.contains(x)) {
                Some(k) => t.hold(|| format!("x={} p={}: {}", c.name(x), c.name(p), k.describe(&c.m))),
                None => {
                    return Ok(Check::violated(format!(
                        "x={} p={}: {{x,p}} vertically N-contractible but no configuration (C*,p) contains x",
                        c.name(x),
                        c.name(p)
                    )))
                }
            }
        }
    }
    Ok(t.finish("no x in V_N with p outside V_N and {x,p} vertically N-contractible"))
}

fn configs_or_vacuous(c: &PairContext) -> Result<std::result::Result<Vec<Configuration>, Check>> {
    if let Some(f) = c.base_failure()? {
        return Ok(Err(Check::vacuous(f)));
    }
    Ok(Ok(c.configurations()?))
}

fn w37a(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let bound = limits::current().enumeration;
    let mut t = Tally::new();
    for k in &configs {
        let x0 = k.cstar.first().unwrap();
        let s0 = c.m.contract_simplify(pair(k.p, x0), ElemSet::EMPTY)?.matroid;
        for y in k.cstar.without(x0) {
            let sy = c.m.contract_simplify(pair(k.p, y), ElemSet::EMPTY)?.matroid;
            if find_isomorphism(&s0, &sy, bound)?.is_none() {
                return Ok(Check::violated(format!(
                    "{}: si(M/{{{},{}}}) and si(M/{{{},{}}}) are not isomorphic",
                    k.describe(&c.m),
                    c.name(k.p),
                    c.name(x0),
                    c.name(k.p),
                    c.name(y)
                )));
            }
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no configuration"))
}

fn w37b(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    for k in &configs {
        for x in k.cstar {
            if !c.is_vnc(pair(x, k.p))? {
                return Ok(Check::violated(format!(
                    "{}: {{{},{}}} is not vertically N-contractible",
                    k.describe(&c.m),
                    c.name(x),
                    c.name(k.p)
                )));
            }
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no configuration"))
}

fn w38(c: &PairContext) -> Result<Check> {
    if !c.m_3connected()? {
        return Ok(Check::vacuous("M is not 3-connected"));
    }
    let mut t = Tally::new();
    for cstar in c.rank3_cocircuits()? {
        let cl = c.m.closure(cstar);
        for x in cstar {
            let mx = c.m.contract(ElemSet::singleton(x))?;
            let mut tri = None;
            for s in cl.without(x).subsets_of_size(3) {
                crate::budget::checkpoint()?;
                if mx.is_circuit(c.m.transfer(s, &mx)?) {
                    tri = Some(s);
                    break;
                }
            }
            let Some(s) = tri else { continue };
            if !c.vertically_contractible(x)? {
                return Ok(Check::violated(format!(
                    "C*={} x={}: triangle {} of M/x but si(M/x) is not 3-connected",
                    c.fmt(cstar),
                    c.name(x),
                    c.fmt(s)
                )));
            }
            t.hold(|| format!("C*={} x={} triangle {}", c.fmt(cstar), c.name(x), c.fmt(s)));
        }
    }
    Ok(t.finish("no rank-3 cocircuit C* and x in C* with a triangle of M/x in cl(C*)-x"))
}

fn melo(c: &PairContext) -> Result<Check> {
    if !c.m_3connected()? {
        return Ok(Check::vacuous("M is not 3-connected"));
    }
    let (triangles, triads) = c.triangles_and_triads()?;
    let mut t = Tally::new();
    for tr in &triangles {
        for td in &triads {
            if (*tr & *td).len() != 2 {
                continue;
            }
            let x = (*td - *tr).first().unwrap();
            if !c.vertically_contractible(x)? {
                return Ok(Check::violated(format!(
                    "T={} T*={} x={}: si(M/x) is not 3-connected",
                    c.fmt(*tr),
                    c.fmt(*td),
                    c.name(x)
                )));
            }
            t.hold(|| format!("T={} T*={} x={}", c.fmt(*tr), c.fmt(*td), c.name(x)));
        }
    }
    Ok(t.finish("no triangle meeting a triad in two elements"))
}

fn four_circuit(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let v = c.vnc()?;
    let mut t = Tally::new();
    for k in &configs {
        let h = k.cstar.with(k.p);
        let mut covered = ElemSet::EMPTY;
        for s in h.subsets_of_size(4) {
            if c.m.is_circuit(s) {
                covered |= s & k.cstar;
            }
        }
        if covered.is_empty() && !k.is_connected() {
            continue;
        }
        if !covered.is_subset(v) {
            return Ok(Check::violated(format!(
                "{}: {} lies in a 4-circuit but not in V_N={}",
                k.describe(&c.m),
                c.fmt(covered - v),
                c.fmt(v)
            )));
        }
        if k.is_connected() {
            if covered.is_empty() {
                return Ok(Check::violated(format!("{}: connected without a 4-circuit", k.describe(&c.m))));
            }
            let r = c.m.rank(v & k.cstar);
            if r != 3 {
                return Ok(Check::violated(format!(
                    "{}: r(V_N ∩ C*)={r} != 3",
                    k.describe(&c.m)
                )));
            }
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no configuration with a 4-circuit"))
}

fn contractible_coloop(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let v = c.vnc()?;
    let mut t = Tally::new();
    for k in configs.iter().filter(|k| k.is_disconnected()) {
        let Some(x) = k.coloop() else {
            return Ok(Check::violated(format!(
                "{}: disconnected but not a line plus a coloop",
                k.describe(&c.m)
            )));
        };
        if !v.contains(x) {
            return Ok(Check::violated(format!(
                "{}: coloop not in V_N={}",
                k.describe(&c.m),
                c.fmt(v)
            )));
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no disconnected configuration"))
}

fn rank3pair(c: &PairContext) -> Result<Check> {
    if !c.m_3connected()? {
        return Ok(Check::vacuous("M is not 3-connected"));
    }
    if c.m.full_rank() < 4 {
        return Ok(Check::vacuous(format!("r(M)={} < 4", c.m.full_rank())));
    }
    let cs = c.rank3_cocircuits()?;
    let mut t = Tally::new();
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            if c.m.closure(*a) == c.m.closure(*b) {
                return Ok(Check::violated(format!(
                    "rank-3 cocircuits {} and {} have the same closure",
                    c.fmt(*a),
                    c.fmt(*b)
                )));
            }
            t.hold(|| format!("{} vs {}", c.fmt(*a), c.fmt(*b)));
        }
    }
    Ok(t.finish(format!("{} rank-3 cocircuits", cs.len())))
}

fn same_coloop_line(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    if c.m.full_rank() < 4 {
        return Ok(Check::vacuous(format!("r(M)={} < 4", c.m.full_rank())));
    }
    let disc: Vec<&Configuration> = configs.iter().filter(|k| k.coloop().is_some()).collect();
    let mut t = Tally::new();
    for (i, a) in disc.iter().enumerate() {
        for b in &disc[i + 1..] {
            if a.coloop() == b.coloop() && a.line() == b.line() {
                return Ok(Check::violated(format!(
                    "{} and {} share coloop and line",
                    a.describe(&c.m),
                    b.describe(&c.m)
                )));
            }
            t.hold(|| format!("{} vs {}", a.describe(&c.m), b.describe(&c.m)));
        }
    }
    Ok(t.finish("fewer than two disconnected configurations"))
}

/// Configurations `(D*, y)` with `L - y ⊆ D*`.
fn covering(configs: &[Configuration], line: ElemSet, y: usize) -> impl Iterator<Item = &Configuration> {
    configs
        .iter()
        .filter(move |d| d.p == y && line.without(y).is_subset(d.cstar))
}

fn second_configuration(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let v = c.vnc()?;
    let mut t = Tally::new();
    for k in &configs {
        let (Some(line), Some(x)) = (k.line(), k.coloop()) else { continue };
        if (line - v).without(k.p).len() < 2 {
            continue;
        }
        for y in (line - v).without(k.p) {
            match covering(&configs, line, y).find(|d| !c.m.closure(d.cstar).contains(x)) {
                Some(d) => t.hold(|| format!("{} y={}: {}", k.describe(&c.m), c.name(y), d.describe(&c.m))),
                None => {
                    return Ok(Check::violated(format!(
                        "{} y={}: no configuration (D*,y) with L-y in D* and x outside cl(D*)",
                        k.describe(&c.m),
                        c.name(y)
                    )))
                }
            }
        }
    }
    Ok(t.finish("no disconnected configuration with |L-(V_N ∪ p)| >= 2"))
}

fn third_configuration(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let v = c.vnc()?;
    let mut t = Tally::new();
    for k in &configs {
        let Some(line) = k.line() else { continue };
        for y in line - v {
            match covering(&configs, line, y).next() {
                Some(d) => t.hold(|| format!("{} y={}: {}", k.describe(&c.m), c.name(y), d.describe(&c.m))),
                None => {
                    return Ok(Check::violated(format!(
                        "{} y={}: no configuration (D*,y) with L-y in D*",
                        k.describe(&c.m),
                        c.name(y)
                    )))
                }
            }
        }
    }
    Ok(t.finish("no disconnected configuration with L not inside V_N"))
}

fn triangle(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    if configs.is_empty() {
        return Ok(Check::vacuous("no configuration"));
    }
    if let Some(k) = configs.iter().find(|k| k.coloop().is_none() || !k.is_minimum()) {
        return Ok(Check::vacuous(format!("not disconnected and minimum: {}", k.describe(&c.m))));
    }
    let v = c.vnc()?;
    let mut t = Tally::new();
    for k in &configs {
        let (line, x) = (k.line().unwrap(), k.coloop().unwrap());
        let xs = line.without(k.p).to_vec();
        let mut ys: [Option<ElemSet>; 2] = [None, None];
        for i in 0..2 {
            let (xi, xj) = (xs[i], xs[1 - i]);
            if v.contains(xi) {
                continue;
            }
            let cand: ElemSet = (v.without(x))
                .iter()
                .filter(|&y| c.m.is_cocircuit(set3(xj, y, k.p)))
                .collect();
            if cand.is_empty() {
                return Ok(Check::violated(format!(
                    "{}: x_i={} outside V_N but no y in V_N-x with {{{},y,{}}} a triad",
                    k.describe(&c.m),
                    c.name(xi),
                    c.name(xj),
                    c.name(k.p)
                )));
            }
            ys[i] = Some(cand);
        }
        if ys.iter().all(Option::is_none) {
            continue;
        }
        if let [Some(a), Some(b)] = ys {
            if a.len() == 1 && a == b {
                return Ok(Check::violated(format!(
                    "{}: y1 and y2 are forced to coincide at {}",
                    k.describe(&c.m),
                    c.fmt(a)
                )));
            }
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("every x_i lies in V_N"))
}

fn novolema(c: &PairContext) -> Result<Check> {
    let configs = match configs_or_vacuous(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    if let Some(k) = configs.iter().find(|k| k.is_connected()) {
        return Ok(Check::vacuous(format!("connected configuration {}", k.describe(&c.m))));
    }
    let v = c.vnc()?;
    let r = c.m.rank(v);
    let mut t = Tally::new();
    for k in &configs {
        let Some(line) = k.line() else {
            return Ok(Check::violated(format!("{}: no line", k.describe(&c.m))));
        };
        let outside = (line - v).len();
        if r < outside {
            return Ok(Check::violated(format!(
                "{}: r(V_N)={r} < |L-V_N|={outside}",
                k.describe(&c.m)
            )));
        }
        t.hold(|| format!("{} r(V_N)={r} |L-V_N|={outside}", k.describe(&c.m)));
    }
    Ok(t.finish("no configuration"))
}

fn fan_failure(c: &PairContext) -> Result<Option<String>> {
    if !c.m_3connected()? {
        return Ok(Some("M is not 3-connected".into()));
    }
    if c.m.len() == 6 && c.m.full_rank() == 3 && is_isomorphic(&c.m, &catalog::wheel(3)?)?.is_some() {
        return Ok(Some("M is isomorphic to M(W3)".into()));
    }
    Ok(None)
}

/// Fan patterns in both orientations.
fn fan_patterns(c: &PairContext) -> Result<std::result::Result<Vec<BiwebPattern>, Check>> {
    if let Some(f) = fan_failure(c)? {
        return Ok(Err(Check::vacuous(f)));
    }
    let mut out = Vec::new();
    for p in biweb_patterns(&c.m)? {
        out.push(p);
        out.push(BiwebPattern {
            x1: p.x2,
            x2: p.x1,
            p1: p.p2,
            p2: p.p1,
            p3: p.p3,
        });
    }
    out.sort();
    out.dedup();
    Ok(Ok(out))
}

fn fmt_pattern(c: &PairContext, p: &BiwebPattern) -> String {
    format!(
        "x1={} x2={} p1={} p2={} p3={}",
        c.name(p.x1),
        c.name(p.x2),
        c.name(p.p1),
        c.name(p.p2),
        c.name(p.p3)
    )
}

/// `x3 ∉ X` with `{p1, p2, x3}` a triad.
fn third_spokes(c: &PairContext, p: &BiwebPattern) -> Vec<usize> {
    (c.m.ground() - p.set())
        .iter()
        .filter(|&x| c.m.is_cocircuit(set3(p.p1, p.p2, x)))
        .collect()
}

fn fan_a(c: &PairContext) -> Result<Check> {
    let pats = match fan_patterns(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    let mut whirl = None;
    for p in &pats {
        if c.m.rank(p.set()) != 3 {
            continue;
        }
        let iso = match whirl {
            Some(b) => b,
            None => *whirl.insert(is_isomorphic(&c.m, &catalog::whirl(3)?)?.is_some()),
        };
        if !iso {
            return Ok(Check::violated(format!("{}: r(X)=3 but M is not a 3-whirl", fmt_pattern(c, p))));
        }
        t.hold(|| fmt_pattern(c, p));
    }
    Ok(t.finish("no fan pattern with r(X)=3"))
}

fn fan_b(c: &PairContext) -> Result<Check> {
    let pats = match fan_patterns(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let (triangles, _) = c.triangles_and_triads()?;
    let mut t = Tally::new();
    for p in &pats {
        if let Some(o) = triangles.iter().find(|tr| tr.contains(p.p3) && **tr != p.triangle()) {
            return Ok(Check::violated(format!(
                "{}: p3 also lies in triangle {}",
                fmt_pattern(c, p),
                c.fmt(*o)
            )));
        }
        t.hold(|| fmt_pattern(c, p));
    }
    Ok(t.finish("no fan pattern"))
}

fn fan_c(c: &PairContext) -> Result<Check> {
    let pats = match fan_patterns(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    for p in &pats {
        for x3 in third_spokes(c, p) {
            for x in [p.x1, p.x2, x3] {
                if !is_contractible(&c.m, ElemSet::singleton(x))? {
                    return Ok(Check::violated(format!(
                        "{} x3={}: M/{} is not 3-connected",
                        fmt_pattern(c, p),
                        c.name(x3),
                        c.name(x)
                    )));
                }
            }
            if !c.m.contract(p.triangle())?.is_simple() {
                return Ok(Check::violated(format!("{} x3={}: M/T is not simple", fmt_pattern(c, p), c.name(x3))));
            }
            t.hold(|| format!("{} x3={}", fmt_pattern(c, p), c.name(x3)));
        }
    }
    Ok(t.finish("no fan pattern with a third spoke x3"))
}

fn fan_d(c: &PairContext) -> Result<Check> {
    let pats = match fan_patterns(c)? {
        Ok(v) => v,
        Err(ch) => return Ok(ch),
    };
    let oracle = c.oracle()?;
    let mut t = Tally::new();
    for p in &pats {
        if !oracle.is_vnc(pair(p.x1, p.p1))? {
            continue;
        }
        let bw = biweb_record(&c.m, oracle, p)?;
        if !bw.holds() {
            return Ok(Check::violated(format!(
                "{{x1,p1}} vertically N-contractible but {}",
                bw.describe(&c.m)
            )));
        }
        for x3 in third_spokes(c, p) {
            let tw = triweb_record(&c.m, oracle, [p.x1, p.x2, x3], [p.p1, p.p2, p.p3])?;
            if !tw.holds() {
                return Ok(Check::violated(format!("x3={}: {}", c.name(x3), tw.describe(&c.m))));
            }
        }
        t.hold(|| bw.describe(&c.m));
    }
    Ok(t.finish("no fan pattern with {x1,p1} vertically N-contractible"))
}

fn scene_configs(c: &PairContext, min_rank: usize) -> Result<std::result::Result<(ElemSet, Vec<Configuration>), Check>> {
    let v = match c.scene()? {
        Scene::Critical { vnc } => vnc,
        Scene::Not(why) => return Ok(Err(Check::vacuous(format!("not a critical scene: {why}")))),
    };
    if c.m.full_rank() < min_rank {
        return Ok(Err(Check::vacuous(format!("r(M)={} < {min_rank}", c.m.full_rank()))));
    }
    Ok(Ok((v, c.configurations()?)))
}

fn in_cl(c: &PairContext) -> Result<Check> {
    let (v, configs) = match scene_configs(c, 0)? {
        Ok(x) => x,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    for k in configs.iter().filter(|k| k.is_connected()) {
        if !v.is_subset(c.m.closure(k.cstar)) {
            return Ok(Check::violated(format!(
                "{}: V_N={} not in cl(C*)",
                k.describe(&c.m),
                c.fmt(v)
            )));
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no connected configuration"))
}

fn nocircuit(c: &PairContext) -> Result<Check> {
    let (v, configs) = match scene_configs(c, 0)? {
        Ok(x) => x,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    for k in &configs {
        for s in k.cstar.subsets() {
            crate::budget::checkpoint()?;
            if s.intersects(v) && c.m.is_circuit(s) {
                return Ok(Check::violated(format!(
                    "{}: circuit {} meets V_N={}",
                    k.describe(&c.m),
                    c.fmt(s),
                    c.fmt(v)
                )));
            }
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no configuration"))
}

fn minimum_connected(c: &PairContext) -> Result<Check> {
    let (_, configs) = match scene_configs(c, 0)? {
        Ok(x) => x,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    for k in configs.iter().filter(|k| k.is_connected()) {
        if !k.is_minimum() {
            return Ok(Check::violated(format!("{}: |C*|={}", k.describe(&c.m), k.cstar.len())));
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no connected configuration"))
}

fn all_configs(c: &PairContext, need_minimum: bool) -> Result<Check> {
    let (_, configs) = match scene_configs(c, 5)? {
        Ok(x) => x,
        Err(ch) => return Ok(ch),
    };
    let mut t = Tally::new();
    for k in &configs {
        if k.is_connected() || (need_minimum && !k.is_minimum()) {
            return Ok(Check::violated(k.describe(&c.m)));
        }
        t.hold(|| k.describe(&c.m));
    }
    Ok(t.finish("no configuration"))
}

fn disconnected(c: &PairContext) -> Result<Check> {
    all_configs(c, false)
}

fn minimum(c: &PairContext) -> Result<Check> {
    all_configs(c, true)
}

fn prism(c: &PairContext) -> Result<Check> {
    let (v, configs) = match scene_configs(c, 0)? {
        Ok(x) => x,
        Err(ch) => return Ok(ch),
    };
    let mut prisms: Option<Vec<WebRecord>> = None;
    let mut t = Tally::new();
    for k in &configs {
        let (Some(tri), Some(x1)) = (k.line(), k.coloop()) else { continue };
        if tri.len() != 3 {
            continue;
        }
        let si = c.m.contract_simplify(ElemSet::singleton(x1), tri)?;
        let o1 = VncOracle::new(&si.matroid, &c.n)?;
        let v1 = c.m.set_of(&si.matroid.labels_of(o1.elements()?))?;
        for q1 in v1 - (v | tri) {
            if prisms.is_none() {
                prisms = Some(find_webs(c.oracle()?, WebKind::Prism)?);
            }
            let found = prisms.as_ref().unwrap().iter().find(|w| {
                let q = w.triangle_q.unwrap();
                let ps: ElemSet = w.triangle_p.iter().copied().collect();
                let qs: ElemSet = q.iter().copied().collect();
                (0..3).any(|i| {
                    w.edges[i] == x1
                        && ((ps == tri && w.triangle_p[i] == k.p && q[i] == q1)
                            || (qs == tri && q[i] == k.p && w.triangle_p[i] == q1))
                })
            });
            match found {
                Some(w) => t.hold(|| format!("{} q1={}: {}", k.describe(&c.m), c.name(q1), w.describe(&c.m))),
                None => {
                    return Ok(Check::violated(format!(
                        "{} q1={}: no prism pairing x1={} with p1={} and q1",
                        k.describe(&c.m),
                        c.name(q1),
                        c.name(x1),
                        c.name(k.p)
                    )))
                }
            }
        }
    }
    Ok(t.finish("no q1 in V_N(si(M/x1)) outside V_N ∪ T"))
}

/// Deliberately false claim `V_N(M) = ∅`, for exercising the violation
/// path of the harness.
fn sentinel(c: &PairContext) -> Result<Check> {
    if let Some(f) = c.base_failure()? {
        return Ok(Check::vacuous(f));
    }
    let v = c.vnc()?;
    Ok(if v.is_empty() {
        Check::verified("V_N(M) is empty")
    } else {
        Check::violated(format!("V_N(M)={}", c.fmt(v)))
    })
}
