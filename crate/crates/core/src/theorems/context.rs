//! Shared, memoized facts about one pair `(M, N)`.
//!
//! Only successful computations are cached, so a statement that times out
//! never leaves a poisoned entry behind for the next one.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::connectivity::{is_3connected, is_vertically_contractible};
use crate::error::Result;
use crate::matroid::Matroid;
use crate::minors::{has_minor_target, MinorWitness, VncOracle};
use crate::set::ElemSet;
use crate::structures::{find_configurations, triangles_and_triads, Configuration};

fn memo<T: Clone>(slot: &Mutex<Option<T>>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    if let Some(v) = slot.lock().unwrap().clone() {
        return Ok(v);
    }
    let v = f()?;
    *slot.lock().unwrap() = Some(v.clone());
    Ok(v)
}

pub struct PairContext {
    pub label: String,
    pub m: Matroid,
    pub n: Matroid,
    oracle: std::result::Result<VncOracle, crate::Error>,
    m3c: Mutex<Option<bool>>,
    n3c: Mutex<Option<bool>>,
    minor: Mutex<Option<Option<MinorWitness>>>,
    configs: Mutex<Option<Vec<Configuration>>>,
    tt: Mutex<Option<(Vec<ElemSet>, Vec<ElemSet>)>>,
    cocircuits3: Mutex<Option<Vec<ElemSet>>>,
    vc: Mutex<HashMap<usize, bool>>,
}

/// The standing hypothesis of the critical-scene statements:
/// `M`, `N` 3-connected, `M` has an `N`-minor, `r(M) - r(N) ≥ 4` and
/// `r(V_N) = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scene {
    Critical { vnc: ElemSet },
    Not(String),
}

impl PairContext {
    pub fn new(label: impl Into<String>, m: &Matroid, n: &Matroid) -> PairContext {
        PairContext {
            label: label.into(),
            m: m.clone(),
            n: n.clone(),
            oracle: VncOracle::new(m, n),
            m3c: Mutex::new(None),
            n3c: Mutex::new(None),
            minor: Mutex::new(None),
            configs: Mutex::new(None),
            tt: Mutex::new(None),
            cocircuits3: Mutex::new(None),
            vc: Mutex::new(HashMap::new()),
        }
    }

    pub fn oracle(&self) -> Result<&VncOracle> {
        self.oracle.as_ref().map_err(Clone::clone)
    }

    pub fn gap(&self) -> isize {
        self.m.full_rank() as isize - self.n.full_rank() as isize
    }

    pub fn m_3connected(&self) -> Result<bool> {
        memo(&self.m3c, || is_3connected(&self.m))
    }

    pub fn n_3connected(&self) -> Result<bool> {
        memo(&self.n3c, || is_3connected(&self.n))
    }

    pub fn minor_witness(&self) -> Result<Option<MinorWitness>> {
        memo(&self.minor, || {
            has_minor_target(&self.m, self.oracle()?.target(), ElemSet::EMPTY)
        })
    }

    /// `None` when `M` and `N` are 3-connected and `M` has an `N`-minor;
    /// otherwise the first failing clause.
    pub fn base_failure(&self) -> Result<Option<String>> {
        if !self.m_3connected()? {
            return Ok(Some("M is not 3-connected".into()));
        }
        if !self.n_3connected()? {
            return Ok(Some("N is not 3-connected".into()));
        }
        if self.minor_witness()?.is_none() {
            return Ok(Some("M has no N-minor".into()));
        }
        Ok(None)
    }

    pub fn vnc(&self) -> Result<ElemSet> {
        self.oracle()?.elements()
    }

    pub fn is_vnc(&self, x: ElemSet) -> Result<bool> {
        self.oracle()?.is_vnc(x)
    }

    pub fn configurations(&self) -> Result<Vec<Configuration>> {
        memo(&self.configs, || find_configurations(self.oracle()?))
    }

    pub fn triangles_and_triads(&self) -> Result<(Vec<ElemSet>, Vec<ElemSet>)> {
        memo(&self.tt, || triangles_and_triads(&self.m))
    }

    pub fn rank3_cocircuits(&self) -> Result<Vec<ElemSet>> {
        memo(&self.cocircuits3, || crate::structures::rank3_cocircuits(&self.m))
    }

    /// `si(M / x)` is 3-connected, regardless of `N`.
    pub fn vertically_contractible(&self, x: usize) -> Result<bool> {
        if let Some(&v) = self.vc.lock().unwrap().get(&x) {
            return Ok(v);
        }
        let v = is_vertically_contractible(&self.m, ElemSet::singleton(x), ElemSet::EMPTY)?;
        self.vc.lock().unwrap().insert(x, v);
        Ok(v)
    }

    pub fn scene(&self) -> Result<Scene> {
        if let Some(f) = self.base_failure()? {
            return Ok(Scene::Not(f));
        }
        if self.gap() < 4 {
            return Ok(Scene::Not(format!("r(M)-r(N)={} < 4", self.gap())));
        }
        let v = self.vnc()?;
        let r = self.m.rank(v);
        if r != 3 {
            return Ok(Scene::Not(format!("r(V_N)={r} != 3")));
        }
        Ok(Scene::Critical { vnc: v })
    }

    pub fn fmt(&self, x: ElemSet) -> String {
        self.m.fmt_set(x)
    }

    pub fn name(&self, e: usize) -> &str {
        self.m.label(e)
    }
}
