//! N-minor search and vertically N-contractible elements.
//!
//! Every minor of `M` can be written `M / C \ D` with `C` independent and
//! `|C| = r(M) - r(N)`. The search runs over such `C` (avoiding the pinned
//! set) in canonical order, and for each one looks for an injective map of
//! `E(N)` into `E(M) - C` that preserves every rank in `M / C`. When `N` is
//! loopless the image avoids `cl(C)`, so `C`s with a common closure give the
//! same instance and only the first is tried.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use crate::budget;
use crate::connectivity::{is_3connected, is_contractible};
use crate::error::{Error, Result};
use crate::limits;
use crate::matroid::Matroid;
use crate::set::ElemSet;

/// `M / contracted \ deleted`, with `embedding[i]` the element of `M`
/// playing element `i` of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub contracted: ElemSet,
    pub deleted: ElemSet,
    pub embedding: Vec<usize>,
}

impl MinorWitness {
    /// Image of the embedding: the ground set of the minor.
    pub fn image(&self) -> ElemSet {
        self.embedding.iter().copied().collect()
    }

    /// Pairs `(element of M, element of N)`.
    pub fn iso_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .embedding
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        v.sort_unstable();
        v
    }

    /// Re-checks the witness from scratch on every subset of `E(N)`.
    pub fn verify(&self, m: &Matroid, n: &Matroid) -> bool {
        let img = self.image();
        if self.embedding.len() != n.len()
            || img.len() != n.len()
            || self.contracted.intersects(self.deleted)
            || (self.contracted | self.deleted | img) != m.ground()
            || (self.contracted | self.deleted).intersects(img)
            || !m.is_independent(self.contracted)
        {
            return false;
        }
        let minor = match m.minor(self.contracted, self.deleted) {
            Ok(x) => x,
            Err(_) => return false,
        };
        let Ok(map) = self
            .embedding
            .iter()
            .map(|&e| minor.index_of(m.label(e)))
            .collect::<Result<Vec<_>>>()
        else {
            return false;
        };
        n.ground().subsets().all(|x| {
            let y: ElemSet = x.iter().map(|i| map[i]).collect();
            minor.rank(y) == n.rank(x)
        })
    }

    pub fn describe(&self, m: &Matroid, n: &Matroid) -> String {
        let pairs: Vec<String> = self
            .iso_pairs()
            .into_iter()
            .map(|(e, i)| format!("{}->{}", m.label(e), n.label(i)))
            .collect();
        format!(
            "contract {} delete {} map {}",
            m.fmt_set(self.contracted),
            m.fmt_set(self.deleted),
            pairs.join(",")
        )
    }
}

fn check_bounds(m: &Matroid, n: &Matroid) -> Result<()> {
    let l = limits::current();
    if n.len() > l.minor_target {
        return Err(Error::resource(format!(
            "minor target has {} elements, above the bound {}",
            n.len(),
            l.minor_target
        )));
    }
    if m.len() > l.enumeration {
        return Err(Error::resource(format!(
            "minor search in {} elements exceeds the enumeration bound {}",
            m.len(),
            l.enumeration
        )));
    }
    Ok(())
}

/// Precomputed data about the target `N`.
#[derive(Clone, Debug)]
pub struct Target {
    pub matroid: Matroid,
    order: Vec<usize>,
    /// `rank[mask]` over positions in `order`.
    rank: Vec<u8>,
    loopless: bool,
}

impl Target {
    pub fn new(n: &Matroid) -> Result<Target> {
        if n.len() > limits::current().minor_target {
            return Err(Error::resource(format!(
                "minor target has {} elements, above the bound {}",
                n.len(),
                limits::current().minor_target
            )));
        }
        let circuits = n.circuit_sets()?;
        let order = closing_order(n.len(), &circuits);
        let size = 1usize << n.len();
        let mut rank = vec![0u8; size];
        for (mask, slot) in rank.iter_mut().enumerate() {
            let x: ElemSet = (0..n.len())
                .filter(|p| mask >> p & 1 == 1)
                .map(|p| order[p])
                .collect();
            *slot = n.rank(x) as u8;
        }
        Ok(Target {
            matroid: n.clone(),
            order,
            rank,
            loopless: n.loops().is_empty(),
        })
    }
}

/// Order that closes circuits as early as possible.
fn closing_order(n: usize, circuits: &[ElemSet]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut placed = ElemSet::EMPTY;
    while order.len() < n {
        let best = (0..n)
            .filter(|e| !placed.contains(*e))
            .max_by_key(|&e| {
                let with = placed.with(e);
                let closed: usize = circuits
                    .iter()
                    .filter(|c| c.contains(e) && c.is_subset(with))
                    .map(|c| 64 - c.len())
                    .sum();
                let touching = circuits
                    .iter()
                    .filter(|c| c.contains(e) && c.intersects(placed))
                    .count();
                (closed, touching, std::cmp::Reverse(e))
            })
            .unwrap();
        order.push(best);
        placed.insert(best);
    }
    order
}

/// Some minor of `M` isomorphic to `N` whose ground set contains `pinned`.
pub fn has_minor(m: &Matroid, n: &Matroid, pinned: ElemSet) -> Result<Option<MinorWitness>> {
    check_bounds(m, n)?;
    let target = Target::new(n)?;
    has_minor_target(m, &target, pinned)
}

/// As [`has_minor`] with a prepared target.
pub fn has_minor_target(m: &Matroid, target: &Target, pinned: ElemSet) -> Result<Option<MinorWitness>> {
    let n = &target.matroid;
    check_bounds(m, n)?;
    if !pinned.is_subset(m.ground()) {
        return Err(Error::input("pinned set outside the ground set"));
    }
    if n.full_rank() > m.full_rank()
        || n.len() > m.len()
        || n.dual_rank() > m.dual_rank()
        || pinned.len() > n.len()
    {
        return Ok(None);
    }
    let gap = m.full_rank() - n.full_rank();
    let bound = limits::current().rank_gap;
    if gap > bound {
        return Err(Error::resource(format!(
            "rank gap {gap} exceeds the minor-search bound {bound}"
        )));
    }
    let mut seen_closures = HashSet::new();
    let free = m.ground() - pinned;
    for c in free.subsets_of_size(gap) {
        budget::checkpoint()?;
        if !m.is_independent(c) {
            continue;
        }
        let allowed = if target.loopless {
            let cl = m.closure(c);
            if cl.intersects(pinned) || !seen_closures.insert(cl) {
                continue;
            }
            m.ground() - cl
        } else {
            m.ground() - c
        };
        if allowed.len() < n.len() {
            continue;
        }
        let mut e = Embed {
            host: m,
            contracted: c,
            target,
            allowed,
            pinned,
            img: vec![ElemSet::EMPTY; 1 << n.len()],
            assign: vec![0; n.len()],
        };
        if e.extend(0, ElemSet::EMPTY)? {
            let mut embedding = vec![0; n.len()];
            for (pos, &h) in e.assign.iter().enumerate() {
                embedding[target.order[pos]] = h;
            }
            let image: ElemSet = embedding.iter().copied().collect();
            return Ok(Some(MinorWitness {
                contracted: c,
                deleted: m.ground() - c - image,
                embedding,
            }));
        }
    }
    Ok(None)
}

struct Embed<'a> {
    host: &'a Matroid,
    contracted: ElemSet,
    target: &'a Target,
    allowed: ElemSet,
    pinned: ElemSet,
    img: Vec<ElemSet>,
    assign: Vec<usize>,
}

impl Embed<'_> {
    #[inline]
    fn rank(&self, y: ElemSet) -> usize {
        self.host.rank(y | self.contracted) - self.contracted.len()
    }

    fn extend(&mut self, t: usize, used: ElemSet) -> Result<bool> {
        let n = self.assign.len();
        if t == n {
            return Ok(true);
        }
        budget::checkpoint()?;
        let need = (self.pinned - used).len();
        let slots = n - t;
        if need > slots {
            return Ok(false);
        }
        let pool = if need == slots {
            self.pinned - used
        } else {
            self.allowed - used
        };
        let bit = 1usize << t;
        for h in pool {
            let mut ok = true;
            for mask in 0..bit {
                let s = self.img[mask].with(h);
                if self.rank(s) != self.target.rank[mask | bit] as usize {
                    ok = false;
                    break;
                }
                self.img[mask | bit] = s;
            }
            if ok {
                self.assign[t] = h;
                if self.extend(t + 1, used.with(h))? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// `si(M / X)` is 3-connected and has an `N`-minor.
pub fn is_vnc_set(m: &Matroid, n: &Matroid, x: ElemSet) -> Result<bool> {
    let target = Target::new(n)?;
    is_vnc_set_target(m, &target, x)
}

pub fn is_vnc_set_target(m: &Matroid, target: &Target, x: ElemSet) -> Result<bool> {
    let si = m.contract_simplify(x, ElemSet::EMPTY)?.matroid;
    Ok(is_3connected(&si)? && has_minor_target(&si, target, ElemSet::EMPTY)?.is_some())
}

/// `M / X` is 3-connected and has an `N`-minor.
pub fn is_n_contractible(m: &Matroid, n: &Matroid, x: ElemSet) -> Result<bool> {
    let target = Target::new(n)?;
    is_n_contractible_target(m, &target, x)
}

pub fn is_n_contractible_target(m: &Matroid, target: &Target, x: ElemSet) -> Result<bool> {
    Ok(is_contractible(m, x)?
        && has_minor_target(&m.contract(x)?, target, ElemSet::EMPTY)?.is_some())
}

/// `V_N(M)` with its rank, plus any requested pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VncReport {
    pub elements: ElemSet,
    pub rank: usize,
    /// Requested 2-subsets that are vertically N-contractible.
    pub pairs: Vec<ElemSet>,
}

/// Tests every element of `M`.
pub fn vnc_elements(m: &Matroid, n: &Matroid) -> Result<VncReport> {
    let target = Target::new(n)?;
    let mut elements = ElemSet::EMPTY;
    for x in m.ground() {
        if is_vnc_set_target(m, &target, ElemSet::singleton(x))? {
            elements.insert(x);
        }
    }
    Ok(VncReport {
        elements,
        rank: m.rank(elements),
        pairs: Vec::new(),
    })
}

/// The members of `candidates` (2-subsets) that are vertically N-contractible.
pub fn vnc_pairs(m: &Matroid, n: &Matroid, candidates: &[ElemSet]) -> Result<Vec<ElemSet>> {
    let target = Target::new(n)?;
    let mut out = Vec::new();
    for &p in candidates {
        if is_vnc_set_target(m, &target, p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Memoized contractibility queries for one pair `(M, N)`.
#[derive(Debug)]
pub struct VncOracle {
    m: Matroid,
    target: Target,
    vnc: Mutex<HashMap<ElemSet, bool>>,
    contractible: Mutex<HashMap<ElemSet, bool>>,
    elements: Mutex<Option<ElemSet>>,
}

impl VncOracle {
    pub fn new(m: &Matroid, n: &Matroid) -> Result<VncOracle> {
        check_bounds(m, n)?;
        Ok(VncOracle {
            m: m.clone(),
            target: Target::new(n)?,
            vnc: Mutex::new(HashMap::new()),
            contractible: Mutex::new(HashMap::new()),
            elements: Mutex::new(None),
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.m
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    /// `X` is vertically N-contractible.
    pub fn is_vnc(&self, x: ElemSet) -> Result<bool> {
        if let Some(&v) = self.vnc.lock().unwrap().get(&x) {
            return Ok(v);
        }
        let v = is_vnc_set_target(&self.m, &self.target, x)?;
        self.vnc.lock().unwrap().insert(x, v);
        Ok(v)
    }

    /// `X` is N-contractible: `M / X` itself is 3-connected with an N-minor.
    pub fn is_n_contractible(&self, x: ElemSet) -> Result<bool> {
        if let Some(&v) = self.contractible.lock().unwrap().get(&x) {
            return Ok(v);
        }
        let v = is_n_contractible_target(&self.m, &self.target, x)?;
        self.contractible.lock().unwrap().insert(x, v);
        Ok(v)
    }

    /// `V_N(M)`.
    pub fn elements(&self) -> Result<ElemSet> {
        if let Some(v) = *self.elements.lock().unwrap() {
            return Ok(v);
        }
        let mut v = ElemSet::EMPTY;
        for x in self.m.ground() {
            if self.is_vnc(ElemSet::singleton(x))? {
                v.insert(x);
            }
        }
        *self.elements.lock().unwrap() = Some(v);
        Ok(v)
    }

    pub fn report(&self) -> Result<VncReport> {
        let elements = self.elements()?;
        let mut pairs: Vec<ElemSet> = self
            .vnc
            .lock()
            .unwrap()
            .iter()
            .filter(|(k, v)| k.len() == 2 && **v)
            .map(|(k, _)| *k)
            .collect();
        crate::matroid::sort_canonically(&mut pairs);
        Ok(VncReport {
            elements,
            rank: self.m.rank(elements),
            pairs,
        })
    }
}
