//! Finite roundedness checks within caps.
//!
//! A class `F` of 3-connected matroids is checked against every ambient
//! 3-connected matroid with an `F`-minor up to the rank bound
//! `r̄(F) + k + ⌊(k-1)/2⌋` and the configured caps. Full ambient classes are
//! out of reach, so a clean run is reported as `rounded-within-caps`.
//!
//! Class spec files:
//!
//! ```text
//! class u24
//! member u24
//! ambient gf3
//! caps elements=8 rank=4 seconds=1800
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::budget;
use crate::catalog;
use crate::connectivity::is_3connected;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::format::{parse_definitions, semantic, syntax, tokenize};
use crate::iso::{isomorphism_from_profiles, profile, Profile, Signature};
use crate::matroid::{default_labels, Matroid};
use crate::minors::{has_minor, has_minor_target, Target};
use crate::set::ElemSet;

/// Largest vertex count the graph generator accepts.
pub const MAX_GRAPH_VERTICES: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// Matroids representable over GF(p), p ∈ {2, 3}.
    Gf(u8),
    Graphic,
    Cographic,
    /// Exactly the matroids of a file.
    List(PathBuf),
}

impl Ambient {
    /// Parses `gf2`, `gf3`, `binary`, `ternary`, `graphic`, `cographic` or
    /// `list:<file>`. `all` is refused: non-representable matroids cannot
    /// be enumerated.
    pub fn parse(s: &str, base: Option<&Path>) -> Result<Ambient> {
        match s {
            "gf2" | "binary" => return Ok(Ambient::Gf(2)),
            "gf3" | "ternary" => return Ok(Ambient::Gf(3)),
            "graphic" => return Ok(Ambient::Graphic),
            "cographic" => return Ok(Ambient::Cographic),
            "all" => {
                return Err(Error::input(
                    "ambient `all` is not supported: the class of all matroids has no practical \
                     generator; use gf2, gf3, graphic, cographic or list:<file>",
                ))
            }
            _ => {}
        }
        if let Some(f) = s.strip_prefix("list:") {
            let p = match base {
                Some(b) => b.join(f),
                None => PathBuf::from(f),
            };
            return Ok(Ambient::List(p));
        }
        if let Some(p) = s.strip_prefix("gf").and_then(|p| p.parse::<u8>().ok()) {
            return Err(Error::input(format!(
                "ambient gf{p} is not supported: only GF(2) and GF(3), whose matroids are \
                 uniquely representable, are enumerated exhaustively"
            )));
        }
        Err(Error::input(format!("unknown ambient `{s}`")))
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Gf(p) => write!(f, "gf{p}"),
            Ambient::Graphic => f.write_str("graphic"),
            Ambient::Cographic => f.write_str("cographic"),
            Ambient::List(p) => write!(f, "list:{}", p.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub elements: usize,
    pub rank: usize,
    pub seconds: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: 8,
            rank: 4,
            seconds: 1800,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassSpec {
    pub name: String,
    pub members: Vec<(String, Matroid)>,
    pub ambient: Ambient,
    pub caps: Caps,
}

pub fn parse_class_spec(text: &str, base: Option<&Path>) -> Result<ClassSpec> {
    let mut name = None;
    let mut members = Vec::new();
    let mut ambient = None;
    let mut caps = Caps::default();
    for line in tokenize(text) {
        let head = &line[0];
        let one = || {
            if line.len() != 2 {
                Err(syntax(head.pos, format!("`{}` takes one argument", head.text)))
            } else {
                Ok(line[1].text)
            }
        };
        match head.text {
            "class" => name = Some(one()?.to_string()),
            "member" => {
                let r = one()?;
                let m = catalog::resolve(r)?;
                members.push((r.to_string(), m));
            }
            "ambient" => {
                ambient = Some(Ambient::parse(one()?, base).map_err(|e| semantic(line[1].pos, e.to_string()))?)
            }
            "caps" => {
                for t in &line[1..] {
                    let (k, v) = t
                        .text
                        .split_once('=')
                        .ok_or_else(|| syntax(t.pos, format!("expected key=value, found `{}`", t.text)))?;
                    let v: u64 = v
                        .parse()
                        .map_err(|_| syntax(t.pos, format!("expected a number, found `{v}`")))?;
                    match k {
                        "elements" => caps.elements = v as usize,
                        "rank" => caps.rank = v as usize,
                        "seconds" => caps.seconds = v,
                        _ => return Err(syntax(t.pos, format!("unknown cap `{k}`"))),
                    }
                }
            }
            other => {
                return Err(syntax(
                    head.pos,
                    format!("expected `class`, `member`, `ambient` or `caps`, found `{other}`"),
                ))
            }
        }
    }
    Ok(ClassSpec {
        name: name.unwrap_or_else(|| "unnamed".into()),
        members,
        ambient: ambient.ok_or_else(|| Error::input("class spec has no `ambient` line"))?,
        caps,
    })
}

pub fn read_class_spec(path: &Path) -> Result<ClassSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_class_spec(&text, path.parent())
}

/// Indices of members with no other member isomorphic to a proper minor.
pub fn minimal_members(f: &[Matroid]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    'outer: for (i, a) in f.iter().enumerate() {
        for (j, b) in f.iter().enumerate() {
            if i != j && b.len() < a.len() && has_minor(a, b, ElemSet::EMPTY)?.is_some() {
                continue 'outer;
            }
        }
        out.push(i);
    }
    Ok(out)
}

/// `r̄(F)`: the largest rank of a minimal member; 0 for an empty class.
pub fn rbar(f: &[Matroid]) -> Result<usize> {
    Ok(minimal_members(f)?
        .into_iter()
        .map(|i| f[i].full_rank())
        .max()
        .unwrap_or(0))
}

/// `r̄*(F) = r̄(F*)`.
pub fn rbar_dual(f: &[Matroid]) -> Result<usize> {
    let duals: Vec<Matroid> = f.iter().map(Matroid::dual).collect();
    rbar(&duals)
}

/// `rbar + k + ⌊(k-1)/2⌋`.
pub fn rank_bound(rbar: usize, k: usize) -> usize {
    rbar + k + k.saturating_sub(1) / 2
}

/// Some `k`-subset `X` such that no member of `f` is a minor of `m` on a
/// ground set containing `X`.
pub fn check_3kr(m: &Matroid, f: &[Matroid], k: usize) -> Result<Option<ElemSet>> {
    check_pinned(m, f, k, None)
}

/// As [`check_3kr`], restricted to `X` with `r(X) ≤ l`.
pub fn check_3klr(m: &Matroid, f: &[Matroid], k: usize, l: usize) -> Result<Option<ElemSet>> {
    check_pinned(m, f, k, Some(l))
}

fn check_pinned(m: &Matroid, f: &[Matroid], k: usize, l: Option<usize>) -> Result<Option<ElemSet>> {
    let targets: Vec<Target> = f.iter().map(Target::new).collect::<Result<_>>()?;
    pinned_violation(m, &targets, k, l)
}

fn pinned_violation(m: &Matroid, targets: &[Target], k: usize, l: Option<usize>) -> Result<Option<ElemSet>> {
    for x in m.ground().subsets_of_size(k) {
        if l.is_some_and(|l| m.rank(x) > l) {
            continue;
        }
        let mut ok = false;
        for t in targets {
            if has_minor_target(m, t, x)?.is_some() {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `(3,k)`: every `k`-subset.
    Kr,
    /// `(3,k,l)`: every `k`-subset of rank at most `l`.
    Klr(usize),
}

/// One member of the test set.
#[derive(Clone, Debug)]
pub struct TestSetItem {
    pub matroid: Matroid,
    /// How the generator reached it.
    pub provenance: String,
    /// 3-connected, has an `F`-minor, rank within the bound.
    pub in_fk: bool,
    /// Its dual lies in `F*[N,3,k]`: corank within the dual bound.
    pub in_fk_dual: bool,
}

/// Per `(rank, elements)` counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub generated: usize,
    pub three_connected: usize,
    pub carriers: usize,
    pub tested: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub rows: BTreeMap<(usize, usize), CensusRow>,
}

impl Census {
    pub fn tested(&self) -> usize {
        self.rows.values().map(|r| r.tested).sum()
    }

    pub fn generated(&self) -> usize {
        self.rows.values().map(|r| r.generated).sum()
    }
}

/// Bounds fixed by the class, `k` and the caps.
struct Frame<'a> {
    spec: &'a ClassSpec,
    variant: Variant,
    targets: Vec<Target>,
    rank_bound: usize,
    corank_bound: usize,
    k: usize,
}

impl Frame<'_> {
    fn max_rank(&self) -> usize {
        self.rank_bound.min(self.spec.caps.rank)
    }

    fn max_elements(&self, rank: usize) -> usize {
        let e = self.spec.caps.elements;
        match self.variant {
            Variant::Kr => e.min(rank + self.corank_bound),
            Variant::Klr(_) => e,
        }
    }

    fn min_rank(&self) -> usize {
        self.spec.members.iter().map(|(_, m)| m.full_rank()).min().unwrap_or(0).max(1)
    }

    /// Classifies a generated matroid and updates the census.
    fn classify(&self, m: &Matroid, provenance: String, census: &mut Census) -> Result<Option<TestSetItem>> {
        let (r, n) = (m.full_rank(), m.len());
        let row = census.rows.entry((r, n)).or_default();
        row.generated += 1;
        if !is_3connected(m)? {
            return Ok(None);
        }
        row.three_connected += 1;
        let mut carrier = false;
        for t in &self.targets {
            if has_minor_target(m, t, ElemSet::EMPTY)?.is_some() {
                carrier = true;
                break;
            }
        }
        if !carrier {
            return Ok(None);
        }
        row.carriers += 1;
        let in_fk = r <= self.rank_bound;
        let in_fk_dual = m.dual_rank() <= self.corank_bound;
        let wanted = match self.variant {
            Variant::Kr => in_fk && in_fk_dual,
            Variant::Klr(_) => in_fk,
        };
        if !wanted || n < self.k {
            return Ok(None);
        }
        row.tested += 1;
        Ok(Some(TestSetItem {
            matroid: m.clone(),
            provenance,
            in_fk,
            in_fk_dual,
        }))
    }
}

/// Isomorphism-class store keyed by signature.
#[derive(Default)]
struct IsoStore {
    buckets: HashMap<Signature, Vec<Profile>>,
}

impl IsoStore {
    /// Inserts `m` unless an isomorphic matroid is present.
    fn insert(&mut self, m: &Matroid) -> Result<bool> {
        let p = profile(m)?;
        let bucket = self.buckets.entry(p.signature.clone()).or_default();
        for q in bucket.iter() {
            if isomorphism_from_profiles(q, &p)?.is_some() {
                return Ok(false);
            }
        }
        bucket.push(p);
        Ok(true)
    }
}

fn linear_from(field: PrimeField, cols: &[Vec<u8>]) -> Result<Matroid> {
    let labels = default_labels(cols.len());
    Matroid::linear(field, labels.iter().map(|l| l.to_string()).zip(cols.iter().cloned()).collect())
}

/// Simple GF(p) matroids of rank `rank` with at most `max_elements`
/// elements, one per isomorphism class. Levels grow from the identity
/// basis by one projective point at a time; unique representability over
/// GF(2) and GF(3) makes every class reachable.
pub fn simple_gf_matroids(
    p: u8,
    rank: usize,
    max_elements: usize,
    emit: &mut dyn FnMut(&Matroid, String) -> Result<bool>,
) -> Result<bool> {
    if !matches!(p, 2 | 3) {
        return Err(Error::input(format!("exhaustive extension is only implemented for GF(2) and GF(3), not GF({p})")));
    }
    let field = PrimeField::new(p)?;
    if rank == 0 || rank > max_elements {
        return Ok(false);
    }
    let points = field.projective_points(rank);
    let identity: Vec<Vec<u8>> = (0..rank)
        .map(|i| {
            let mut v = vec![0u8; rank];
            v[i] = 1;
            v
        })
        .collect();
    let mut level: Vec<Vec<Vec<u8>>> = vec![identity];
    let mut n = rank;
    loop {
        for cols in &level {
            budget::checkpoint()?;
            let m = linear_from(field, cols)?;
            if emit(&m, format!("I{rank}+{} columns over GF({p})", cols.len() - rank))? {
                return Ok(true);
            }
        }
        if n == max_elements {
            return Ok(false);
        }
        let mut store = IsoStore::default();
        let mut next = Vec::new();
        for cols in &level {
            for q in &points {
                if cols.contains(q) {
                    continue;
                }
                budget::checkpoint()?;
                let mut c = cols.clone();
                c.push(q.clone());
                if store.insert(&linear_from(field, &c)?)? {
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        level = next;
        n += 1;
    }
}

/// Connected simple graphs on `vertices` vertices with at most `max_edges`
/// edges, one per graph-isomorphism class, as edge lists.
pub fn connected_simple_graphs(vertices: usize, max_edges: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if vertices > MAX_GRAPH_VERTICES {
        return Err(Error::resource(format!(
            "graph enumeration on {vertices} vertices exceeds the {MAX_GRAPH_VERTICES}-vertex bound"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
        .collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let perms = permutations(vertices);
    let tables: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let canon = |mask: u32| -> u32 {
        tables
            .iter()
            .map(|t| {
                let mut out = 0u32;
                let mut m = mask;
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    out |= 1 << t[i];
                    m &= m - 1;
                }
                out
            })
            .min()
            .unwrap()
    };
    let connected = |mask: u32| -> bool {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0u32;
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if frontier >> u & 1 == 1 {
                        next |= 1 << v;
                    }
                    if frontier >> v & 1 == 1 {
                        next |= 1 << u;
                    }
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == vertices
    };
    let mut out = Vec::new();
    let mut level: Vec<u32> = vec![0];
    for size in 0..=max_edges.min(pairs.len()) {
        for &g in &level {
            if connected(g) {
                out.push(
                    (0..pairs.len())
                        .filter(|i| g >> i & 1 == 1)
                        .map(|i| pairs[i])
                        .collect(),
                );
            }
        }
        if size == max_edges.min(pairs.len()) {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for &g in &level {
            for i in 0..pairs.len() {
                if g >> i & 1 == 1 {
                    continue;
                }
                budget::checkpoint()?;
                let c = canon(g | 1 << i);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        level = next;
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn graph_matroid(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    Matroid::graphic(
        vertices,
        edges.iter().map(|&(u, v)| (format!("e{}{}", u + 1, v + 1), u, v)).collect(),
    )
}

/// Walks the ambient generator, calling `visit` on each test-set item.
/// Returns whether `visit` asked to stop.
fn walk(
    frame: &Frame<'_>,
    census: &mut Census,
    visit: &mut dyn FnMut(TestSetItem) -> Result<bool>,
) -> Result<bool> {
    let spec = frame.spec;
    let mut consider = |m: &Matroid, prov: String, census: &mut Census| -> Result<bool> {
        match frame.classify(m, prov, census)? {
            Some(item) => visit(item),
            None => Ok(false),
        }
    };
    match &spec.ambient {
        Ambient::Gf(p) => {
            for r in frame.min_rank()..=frame.max_rank() {
                let mut emit = |m: &Matroid, prov: String| consider(m, prov, census);
                if simple_gf_matroids(*p, r, frame.max_elements(r), &mut emit)? {
                    return Ok(true);
                }
            }
        }
        Ambient::Graphic | Ambient::Cographic => {
            let cographic = spec.ambient == Ambient::Cographic;
            let mut store = IsoStore::default();
            for v in 2..=MAX_GRAPH_VERTICES {
                let graph_rank = v - 1;
                if !cographic && (graph_rank < frame.min_rank() || graph_rank > frame.max_rank()) {
                    continue;
                }
                for edges in connected_simple_graphs(v, spec.caps.elements)? {
                    let g = graph_matroid(v, &edges)?;
                    let m = if cographic { g.dual() } else { g };
                    let r = m.full_rank();
                    if r < frame.min_rank() || r > frame.max_rank() || m.len() > frame.max_elements(r) {
                        continue;
                    }
                    // distinct graphs may share a matroid
                    if !is_3connected(&m)? || !store.insert(&m)? {
                        continue;
                    }
                    let kind = if cographic { "cographic" } else { "graphic" };
                    if consider(&m, format!("{kind}, {v} vertices, {} edges", edges.len()), census)? {
                        return Ok(true);
                    }
                }
            }
        }
        Ambient::List(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            for d in parse_definitions(&text)? {
                let m = d.matroid;
                let r = m.full_rank();
                if r > frame.max_rank() || m.len() > frame.max_elements(r) {
                    continue;
                }
                if consider(&m, format!("listed as {}", d.name), census)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn frame<'a>(spec: &'a ClassSpec, k: usize, variant: Variant) -> Result<Frame<'a>> {
    if !(1..=3).contains(&k) {
        return Err(Error::input(format!("k must be 1, 2 or 3, not {k}")));
    }
    let members: Vec<Matroid> = spec.members.iter().map(|(_, m)| m.clone()).collect();
    for (name, m) in &spec.members {
        if !is_3connected(m)? {
            return Err(Error::input(format!("class member {name} is not 3-connected")));
        }
    }
    Ok(Frame {
        spec,
        variant,
        targets: members.iter().map(Target::new).collect::<Result<_>>()?,
        rank_bound: rank_bound(rbar(&members)?, k),
        corank_bound: rank_bound(rbar_dual(&members)?, k),
        k,
    })
}

/// The test set within caps, with the census and whether the time budget
/// cut it short.
pub struct TestSet {
    pub items: Vec<TestSetItem>,
    pub census: Census,
    pub partial: bool,
}

pub fn enumerate_test_set(spec: &ClassSpec, k: usize, variant: Variant) -> Result<TestSet> {
    let fr = frame(spec, k, variant)?;
    let mut census = Census::default();
    let mut items = Vec::new();
    let res = budget::with_deadline(Duration::from_secs(spec.caps.seconds), || {
        walk(&fr, &mut census, &mut |item| {
            items.push(item);
            Ok(false)
        })
    });
    let partial = match res {
        Ok(_) => false,
        Err(Error::Timeout) => true,
        Err(e) => return Err(e),
    };
    Ok(TestSet { items, census, partial })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    RoundedWithinCaps,
    Violation { matroid: String, x: String },
    Inconclusive(String),
}

impl Decision {
    pub fn tag(&self) -> &'static str {
        match self {
            Decision::RoundedWithinCaps => "rounded-within-caps",
            Decision::Violation { .. } => "violation",
            Decision::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub decision: Decision,
    pub class: String,
    pub ambient: String,
    pub k: usize,
    pub variant: Variant,
    pub rbar: usize,
    pub rbar_dual: usize,
    pub minimal: Vec<String>,
    pub caps: Caps,
    pub census: Census,
    pub subsets_checked: usize,
}

impl DecisionReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let variant = match self.variant {
            Variant::Kr => format!("(3,{})-rounded", self.k),
            Variant::Klr(l) => format!("(3,{},{l})-rounded", self.k),
        };
        let half = self.k.saturating_sub(1) / 2;
        s.push_str(&format!("class {} in {}: {variant}\n", self.class, self.ambient));
        s.push_str(&format!("minimal members: {}\n", self.minimal.join(", ")));
        s.push_str(&format!(
            "rank bound: rbar + k + floor((k-1)/2) = {} + {} + {half} = {}\n",
            self.rbar,
            self.k,
            rank_bound(self.rbar, self.k)
        ));
        if self.variant == Variant::Kr {
            s.push_str(&format!(
                "corank bound: rbar* + k + floor((k-1)/2) = {} + {} + {half} = {}\n",
                self.rbar_dual,
                self.k,
                rank_bound(self.rbar_dual, self.k)
            ));
        }
        s.push_str(&format!(
            "caps: elements<={} rank<={} seconds={}\n",
            self.caps.elements, self.caps.rank, self.caps.seconds
        ));
        s.push_str("census: rank elements generated 3-connected carriers tested\n");
        for ((r, n), row) in &self.census.rows {
            s.push_str(&format!(
                "  {r} {n} {} {} {} {}\n",
                row.generated, row.three_connected, row.carriers, row.tested
            ));
        }
        s.push_str(&format!(
            "test set: {} matroids, {} subsets checked\n",
            self.census.tested(),
            self.subsets_checked
        ));
        match &self.decision {
            Decision::RoundedWithinCaps => s.push_str("decision: rounded-within-caps\n"),
            Decision::Violation { matroid, x } => {
                s.push_str(&format!("decision: violation\nX = {x}\n{matroid}"));
                if !s.ends_with('\n') {
                    s.push('\n');
                }
            }
            Decision::Inconclusive(why) => s.push_str(&format!("decision: inconclusive ({why})\n")),
        }
        s
    }
}

pub fn decide_rounded(spec: &ClassSpec, k: usize, variant: Variant) -> Result<DecisionReport> {
    let fr = frame(spec, k, variant)?;
    let members: Vec<Matroid> = spec.members.iter().map(|(_, m)| m.clone()).collect();
    let minimal = minimal_members(&members)?
        .into_iter()
        .map(|i| format!("{} (rank {})", spec.members[i].0, members[i].full_rank()))
        .collect();
    let mut census = Census::default();
    let mut subsets_checked = 0usize;
    let mut violation = None;
    let l = match variant {
        Variant::Kr => None,
        Variant::Klr(l) => Some(l),
    };
    let fits = spec
        .members
        .iter()
        .any(|(_, m)| m.len() <= spec.caps.elements && m.full_rank() <= spec.caps.rank);
    let decision = if members.is_empty() {
        Decision::Inconclusive("empty class".into())
    } else if !fits {
        Decision::Inconclusive("caps exceeded: no class member fits within the caps".into())
    } else {
        let res = budget::with_deadline(Duration::from_secs(spec.caps.seconds), || {
            walk(&fr, &mut census, &mut |item| {
                let m = &item.matroid;
                subsets_checked += m
                    .ground()
                    .subsets_of_size(k)
                    .filter(|x| l.is_none_or(|l| m.rank(*x) <= l))
                    .count();
                if let Some(x) = pinned_violation(m, &fr.targets, k, l)? {
                    violation = Some(Decision::Violation {
                        matroid: crate::format::serialize("counterexample", m),
                        x: m.fmt_set(x),
                    });
                    return Ok(true);
                }
                Ok(false)
            })
        });
        match res {
            Ok(_) => violation.unwrap_or(Decision::RoundedWithinCaps),
            Err(Error::Timeout) => {
                violation.unwrap_or_else(|| Decision::Inconclusive("time budget exhausted".into()))
            }
            Err(e) => return Err(e),
        }
    };
    Ok(DecisionReport {
        decision,
        class: spec.name.clone(),
        ambient: spec.ambient.to_string(),
        k,
        variant,
        rbar: rbar(&members)?,
        rbar_dual: rbar_dual(&members)?,
        minimal,
        caps: spec.caps,
        census,
        subsets_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(members: &[&str], ambient: &str, caps: Caps) -> ClassSpec {
        ClassSpec {
            name: "t".into(),
            members: members
                .iter()
                .map(|m| (m.to_string(), catalog::resolve(m).unwrap()))
                .collect(),
            ambient: Ambient::parse(ambient, None).unwrap(),
            caps,
        }
    }

    #[test]
    fn rank_bound_arithmetic() {
        for r in 0..6 {
            assert_eq!(rank_bound(r, 1), r + 1);
            assert_eq!(rank_bound(r, 2), r + 2);
            assert_eq!(rank_bound(r, 3), r + 4);
        }
    }

    #[test]
    fn rbar_of_small_classes() {
        let u24 = catalog::uniform(2, 4).unwrap();
        let w3 = catalog::whirl(3).unwrap();
        let k4 = catalog::complete(4).unwrap();
        assert_eq!(rbar(std::slice::from_ref(&u24)).unwrap(), 2);
        assert_eq!(minimal_members(&[u24.clone(), w3.clone()]).unwrap(), vec![0]);
        assert_eq!(rbar(&[u24, w3]).unwrap(), 2);
        assert_eq!(rbar(std::slice::from_ref(&k4)).unwrap(), 3);
        assert_eq!(rbar_dual(&[k4]).unwrap(), 3);
        assert_eq!(rbar(&[]).unwrap(), 0);
    }

    #[test]
    fn u25_keeps_any_pair() {
        let m = catalog::uniform(2, 5).unwrap();
        let f = [catalog::uniform(2, 4).unwrap()];
        assert_eq!(check_3kr(&m, &f, 2).unwrap(), None);
    }

    #[test]
    fn no_carrier_means_every_subset_fails() {
        let m = catalog::complete(4).unwrap();
        let f = [catalog::uniform(2, 4).unwrap()];
        assert!(check_3kr(&m, &f, 1).unwrap().is_some());
    }

    #[test]
    fn binary_has_no_u24_carriers() {
        let s = spec(&["u24"], "gf2", Caps { elements: 7, rank: 3, seconds: 60 });
        let t = enumerate_test_set(&s, 2, Variant::Kr).unwrap();
        assert!(t.items.is_empty());
        assert!(t.census.generated() > 0);
    }

    #[test]
    fn gf2_rank3_classes() {
        // simple binary rank-3 matroids: 3,4,5,6,7 elements, one or two classes each
        let mut counts = BTreeMap::new();
        simple_gf_matroids(2, 3, 7, &mut |m, _| {
            *counts.entry(m.len()).or_insert(0) += 1;
            Ok(false)
        })
        .unwrap();
        assert_eq!(counts, BTreeMap::from([(3, 1), (4, 2), (5, 1), (6, 1), (7, 1)]));
    }

    #[test]
    fn small_graph_counts() {
        // connected graphs on 4 vertices: 6 classes
        assert_eq!(connected_simple_graphs(4, 6).unwrap().len(), 6);
        assert_eq!(connected_simple_graphs(3, 3).unwrap().len(), 2);
    }

    #[test]
    fn zero_caps_are_inconclusive() {
        let s = spec(&["u24"], "gf3", Caps { elements: 0, rank: 0, seconds: 60 });
        let r = decide_rounded(&s, 2, Variant::Kr).unwrap();
        assert_eq!(r.decision.tag(), "inconclusive");
    }

    #[test]
    fn all_is_refused() {
        let e = Ambient::parse("all", None).unwrap_err();
        assert!(e.to_string().contains("not supported"));
        assert!(Ambient::parse("gf5", None).is_err());
    }

    #[test]
    fn spec_file_parses() {
        let s = parse_class_spec("class x\nmember u24\nambient gf3\ncaps elements=6 rank=3 seconds=5\n", None).unwrap();
        assert_eq!(s.caps, Caps { elements: 6, rank: 3, seconds: 5 });
        assert_eq!(s.members.len(), 1);
        assert!(parse_class_spec("member u24\n", None).is_err());
        assert!(matches!(parse_class_spec("caps foo=1\nambient gf2\n", None), Err(Error::Syntax { .. })));
    }
}
