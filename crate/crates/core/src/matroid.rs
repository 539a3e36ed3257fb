//! The matroid kernel: labelled ground sets over pluggable rank oracles.
//!
//! A [`Matroid`] is an immutable, cheaply clonable handle. Rank queries are
//! memoized per value: ground sets of up to [`DENSE_CACHE_LIMIT`] elements
//! get a lazily filled dense table, larger ones a locked map. Duals and
//! minors are lazy wrappers around their source; a minor of a minor is
//! flattened onto the underlying matroid so wrapper depth stays small.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::budget;
use crate::error::{Error, Result};
use crate::field::{Echelon, PrimeField};
use crate::limits;
use crate::set::{ElemSet, MAX_ELEMENTS};

/// Element labels are opaque strings, unique within a ground set.
pub type Label = Arc<str>;

/// Ground sets up to this size get a dense rank table.
pub const DENSE_CACHE_LIMIT: usize = 20;

/// Ground-set size up to which [`Matroid::materialize`] is allowed.
pub const MATERIALIZE_LIMIT: usize = 12;

const UNKNOWN: u8 = u8::MAX;

#[derive(Clone)]
pub struct Matroid(Arc<Inner>);

struct Inner {
    labels: Vec<Label>,
    index: OnceLock<HashMap<Label, usize>>,
    full_rank: usize,
    backend: Backend,
    cache: RankCache,
}

/// How ranks are computed.
#[derive(Clone, Debug)]
pub enum Backend {
    Uniform { rank: usize },
    Linear(LinearRep),
    Graphic(GraphRep),
    Bases(BasisFamily),
    Dual(Matroid),
    Minor(MinorRep),
}

/// Columns over GF(p), one per element.
#[derive(Clone, Debug)]
pub struct LinearRep {
    pub field: PrimeField,
    pub rows: usize,
    pub columns: Vec<Vec<u8>>,
}

/// Edge list of a multigraph; edge `i` is element `i`.
#[derive(Clone, Debug)]
pub struct GraphRep {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Explicit list of bases.
#[derive(Debug)]
pub struct BasisFamily {
    pub rank: usize,
    pub bases: Vec<ElemSet>,
    table: OnceLock<Vec<u8>>,
}

impl Clone for BasisFamily {
    fn clone(&self) -> Self {
        BasisFamily {
            rank: self.rank,
            bases: self.bases.clone(),
            table: OnceLock::new(),
        }
    }
}

/// `inner / contracted \ (everything not kept)`. `contracted` is always
/// independent in `inner`; `keep[i]` is the inner index of own element `i`.
#[derive(Clone, Debug)]
pub struct MinorRep {
    pub inner: Matroid,
    pub contracted: ElemSet,
    pub keep: Vec<usize>,
}

impl MinorRep {
    /// Inner elements removed by deletion.
    pub fn deleted(&self) -> ElemSet {
        let kept: ElemSet = self.keep.iter().copied().collect();
        ElemSet::full(self.inner.len()) - kept - self.contracted
    }

    #[inline]
    fn lift(&self, x: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for i in x {
            out.insert(self.keep[i]);
        }
        out
    }
}

enum RankCache {
    Dense(OnceLock<Box<[AtomicU8]>>),
    Sparse(RwLock<HashMap<u64, u8>>),
}

impl RankCache {
    fn for_size(n: usize) -> Self {
        if n <= DENSE_CACHE_LIMIT {
            RankCache::Dense(OnceLock::new())
        } else {
            RankCache::Sparse(RwLock::new(HashMap::new()))
        }
    }
}

fn validate_labels(labels: &[Label]) -> Result<()> {
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::resource(format!(
            "ground set of {} elements exceeds the {MAX_ELEMENTS}-element maximum",
            labels.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || ",#={}".contains(c)) {
            return Err(Error::input(format!("invalid element label `{l}`")));
        }
        if !seen.insert(l.clone()) {
            return Err(Error::input(format!("duplicate element label `{l}`")));
        }
    }
    Ok(())
}

/// `a, b, .., z` for up to 26 elements, otherwise `e1, e2, ..`.
pub fn default_labels(n: usize) -> Vec<Label> {
    if n <= 26 {
        (0..n)
            .map(|i| Label::from(((b'a' + i as u8) as char).to_string()))
            .collect()
    } else {
        (1..=n).map(|i| Label::from(format!("e{i}"))).collect()
    }
}

fn to_labels<S: AsRef<str>>(labels: &[S]) -> Vec<Label> {
    labels.iter().map(|s| Label::from(s.as_ref())).collect()
}

impl Matroid {
    fn build(labels: Vec<Label>, backend: Backend) -> Result<Matroid> {
        validate_labels(&labels)?;
        Ok(Self::build_unchecked(labels, backend))
    }

    fn build_unchecked(labels: Vec<Label>, backend: Backend) -> Matroid {
        let n = labels.len();
        let mut inner = Inner {
            labels,
            index: OnceLock::new(),
            full_rank: 0,
            backend,
            cache: RankCache::for_size(n),
        };
        inner.full_rank = inner.compute_rank(ElemSet::full(n));
        Matroid(Arc::new(inner))
    }

    /// `U_{r,n}` on labels `a, b, ..`.
    pub fn uniform(rank: usize, n: usize) -> Result<Matroid> {
        Self::uniform_labeled(rank, default_labels(n))
    }

    pub fn uniform_labeled<S: AsRef<str>>(rank: usize, labels: impl AsRef<[S]>) -> Result<Matroid> {
        let labels = to_labels(labels.as_ref());
        if rank > labels.len() {
            return Err(Error::input(format!(
                "uniform rank {rank} exceeds {} elements",
                labels.len()
            )));
        }
        Self::build(labels, Backend::Uniform { rank })
    }

    /// Column matroid of a matrix over GF(p); all columns must share one length.
    pub fn linear<S: AsRef<str>>(field: PrimeField, columns: Vec<(S, Vec<u8>)>) -> Result<Matroid> {
        let rows = columns.first().map_or(0, |c| c.1.len());
        Self::linear_with_rows(field, rows, columns)
    }

    pub fn linear_with_rows<S: AsRef<str>>(
        field: PrimeField,
        rows: usize,
        columns: Vec<(S, Vec<u8>)>,
    ) -> Result<Matroid> {
        let mut labels = Vec::with_capacity(columns.len());
        let mut cols = Vec::with_capacity(columns.len());
        for (label, col) in columns {
            if col.len() != rows {
                return Err(Error::input(format!(
                    "column `{}` has {} entries, expected {rows}",
                    label.as_ref(),
                    col.len()
                )));
            }
            labels.push(Label::from(label.as_ref()));
            cols.push(col.into_iter().map(|a| a % field.order()).collect());
        }
        Self::build(
            labels,
            Backend::Linear(LinearRep {
                field,
                rows,
                columns: cols,
            }),
        )
    }

    /// Cycle matroid of a multigraph on vertices `0..vertices`.
    pub fn graphic<S: AsRef<str>>(vertices: usize, edges: Vec<(S, usize, usize)>) -> Result<Matroid> {
        let mut labels = Vec::with_capacity(edges.len());
        let mut es = Vec::with_capacity(edges.len());
        for (label, u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::input(format!(
                    "edge `{}` endpoint out of range 0..{vertices}",
                    label.as_ref()
                )));
            }
            labels.push(Label::from(label.as_ref()));
            es.push((u, v));
        }
        Self::build(labels, Backend::Graphic(GraphRep { vertices, edges: es }))
    }

    /// Matroid given by its bases; checks equal cardinality and the matroid
    /// axioms. On failure the offending set is named in the error.
    pub fn from_bases<S: AsRef<str>>(labels: impl AsRef<[S]>, rank: usize, bases: Vec<ElemSet>) -> Result<Matroid> {
        let labels = to_labels(labels.as_ref());
        validate_labels(&labels)?;
        let n = labels.len();
        let universe = ElemSet::full(n);
        let fmt_set = |s: ElemSet| {
            let names: Vec<&str> = s.iter().map(|i| &*labels[i]).collect();
            format!("{{{}}}", names.join(","))
        };
        if bases.is_empty() {
            return Err(Error::input("a matroid needs at least one basis"));
        }
        let mut bases = bases;
        bases.sort();
        bases.dedup();
        for &b in &bases {
            if !b.is_subset(universe) {
                return Err(Error::input("basis mentions an element outside the ground set"));
            }
            if b.len() != rank {
                return Err(Error::input(format!(
                    "basis {} has {} elements, expected {rank}",
                    fmt_set(b),
                    b.len()
                )));
            }
        }
        let family = BasisFamily {
            rank,
            bases,
            table: OnceLock::new(),
        };
        if let Some(bad) = family.exchange_violation(n) {
            return Err(Error::input(format!(
                "basis exchange fails for {}",
                fmt_set(bad)
            )));
        }
        Ok(Self::build_unchecked(labels, Backend::Bases(family)))
    }

    // ----- basic accessors -------------------------------------------------

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn ground(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn labels(&self) -> &[Label] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn backend(&self) -> &Backend {
        &self.0.backend
    }

    /// Index of the element with this label.
    pub fn index_of(&self, label: &str) -> Result<usize> {
        let index = self.0.index.get_or_init(|| {
            self.0
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect()
        });
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown element label `{label}`")))
    }

    /// Set of the elements with these labels.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(ElemSet::from_indices)
    }

    /// Labels of a set, in ground-set order.
    pub fn labels_of(&self, x: ElemSet) -> Vec<&str> {
        x.iter().map(|i| self.label(i)).collect()
    }

    /// `{a,b,c}` rendering in ground-set order.
    pub fn fmt_set(&self, x: ElemSet) -> String {
        format!("{{{}}}", self.labels_of(x).join(","))
    }

    /// Translates a set of this matroid into another one by label.
    pub fn transfer(&self, x: ElemSet, to: &Matroid) -> Result<ElemSet> {
        x.iter().map(|i| to.index_of(self.label(i))).collect()
    }

    fn check_set(&self, x: ElemSet) -> Result<()> {
        if x.is_subset(self.ground()) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "set {x:?} is not contained in a ground set of {} elements",
                self.len()
            )))
        }
    }

    // ----- rank machinery --------------------------------------------------

    /// `r(M)`.
    pub fn full_rank(&self) -> usize {
        self.0.full_rank
    }

    /// `r*(M) = |E| - r(M)`.
    pub fn dual_rank(&self) -> usize {
        self.len() - self.0.full_rank
    }

    /// Rank of `x`. Elements outside the ground set are a programming error.
    #[inline]
    pub fn rank(&self, x: ElemSet) -> usize {
        debug_assert!(x.is_subset(self.ground()), "{x:?} outside ground set");
        self.0.cached_rank(x)
    }

    /// Checked rank query.
    pub fn try_rank(&self, x: ElemSet) -> Result<usize> {
        self.check_set(x)?;
        Ok(self.rank(x))
    }

    /// Rank by label.
    pub fn rank_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.rank(self.set_of(labels)?))
    }

    /// `r*(X) = |X| + r(E - X) - r(M)`.
    pub fn corank(&self, x: ElemSet) -> usize {
        x.len() + self.rank(self.ground() - x) - self.full_rank()
    }

    pub fn is_independent(&self, x: ElemSet) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_spanning(&self, x: ElemSet) -> bool {
        self.rank(x) == self.full_rank()
    }

    /// `cl(X) = {e : r(X + e) = r(X)}`.
    pub fn closure(&self, x: ElemSet) -> ElemSet {
        let r = self.rank(x);
        let mut out = x;
        for e in self.ground() - x {
            if self.rank(x.with(e)) == r {
                out.insert(e);
            }
        }
        out
    }

    /// Closure in the dual.
    pub fn coclosure(&self, x: ElemSet) -> ElemSet {
        let r = self.corank(x);
        let mut out = x;
        for e in self.ground() - x {
            if self.corank(x.with(e)) == r {
                out.insert(e);
            }
        }
        out
    }

    pub fn is_flat(&self, x: ElemSet) -> bool {
        self.closure(x) == x
    }

    /// Minimal dependent: `r(X) = |X| - 1` and every `X - e` independent.
    pub fn is_circuit(&self, x: ElemSet) -> bool {
        let k = x.len();
        k > 0 && self.rank(x) == k - 1 && x.iter().all(|e| self.rank(x.without(e)) == k - 1)
    }

    pub fn is_cocircuit(&self, x: ElemSet) -> bool {
        let k = x.len();
        k > 0
            && self.corank(x) == k - 1
            && x.iter().all(|e| self.corank(x.without(e)) == k - 1)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(ElemSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(self.ground().without(e)) < self.full_rank()
    }

    pub fn loops(&self) -> ElemSet {
        self.ground().iter().filter(|&e| self.is_loop(e)).collect()
    }

    pub fn coloops(&self) -> ElemSet {
        self.ground().iter().filter(|&e| self.is_coloop(e)).collect()
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        let g = self.ground();
        g.iter().all(|e| !self.is_loop(e))
            && g.subsets_of_size(2).all(|p| self.rank(p) == 2)
    }

    pub fn is_cosimple(&self) -> bool {
        self.dual().is_simple()
    }

    /// The unique circuit in `I + x`, for independent `I` spanning `x`.
    pub fn fundamental_circuit(&self, x: usize, indep: ElemSet) -> Result<ElemSet> {
        self.check_set(indep.with(x))?;
        if indep.contains(x) {
            return Err(Error::input(format!("{} already lies in I", self.label(x))));
        }
        if !self.is_independent(indep) {
            return Err(Error::input(format!("{} is not independent", self.fmt_set(indep))));
        }
        if self.rank(indep.with(x)) != indep.len() {
            return Err(Error::input(format!(
                "{} is not spanned by {}",
                self.label(x),
                self.fmt_set(indep)
            )));
        }
        let with_x = indep.with(x);
        let mut c = ElemSet::singleton(x);
        for e in indep {
            if self.rank(with_x.without(e)) == indep.len() {
                c.insert(e);
            }
        }
        Ok(c)
    }

    /// A basis of `x`, greedily in ground-set order.
    pub fn basis_of(&self, x: ElemSet) -> ElemSet {
        let mut b = ElemSet::EMPTY;
        for e in x {
            if self.rank(b.with(e)) > b.len() {
                b.insert(e);
            }
        }
        b
    }

    // ----- enumeration -----------------------------------------------------

    fn check_enumeration_bound(&self, what: &str) -> Result<()> {
        let bound = limits::current().enumeration;
        if self.len() > bound {
            return Err(Error::resource(format!(
                "{what} on {} elements exceeds the enumeration bound {bound}",
                self.len()
            )));
        }
        Ok(())
    }

    /// All circuits, ordered by size then lexicographically.
    pub fn circuit_sets(&self) -> Result<Vec<ElemSet>> {
        self.check_enumeration_bound("circuit enumeration")?;
        let mut out = Vec::new();
        let g = self.ground();
        for k in 1..=(self.full_rank() + 1).min(self.len()) {
            for x in g.subsets_of_size(k) {
                budget::checkpoint()?;
                if self.is_circuit(x) {
                    out.push(x);
                }
            }
        }
        sort_canonically(&mut out);
        Ok(out)
    }

    /// All cocircuits (circuits of the dual), canonically ordered.
    pub fn cocircuit_sets(&self) -> Result<Vec<ElemSet>> {
        self.dual().circuit_sets()
    }

    /// All bases, in colexicographic order.
    pub fn bases(&self) -> Result<Vec<ElemSet>> {
        self.check_enumeration_bound("basis enumeration")?;
        let mut out = Vec::new();
        for b in self.ground().subsets_of_size(self.full_rank()) {
            budget::checkpoint()?;
            if self.is_independent(b) {
                out.push(b);
            }
        }
        Ok(out)
    }

    /// Rebuilds this matroid as an explicit basis list.
    pub fn materialize(&self) -> Result<Matroid> {
        if self.len() > MATERIALIZE_LIMIT {
            return Err(Error::resource(format!(
                "materializing {} elements exceeds the {MATERIALIZE_LIMIT}-element bound",
                self.len()
            )));
        }
        let bases = self.bases()?;
        Ok(Self::build_unchecked(
            self.0.labels.clone(),
            Backend::Bases(BasisFamily {
                rank: self.full_rank(),
                bases,
                table: OnceLock::new(),
            }),
        ))
    }

    // ----- derived matroids ------------------------------------------------

    /// `M*`. The dual of a dual is the original handle.
    pub fn dual(&self) -> Matroid {
        if let Backend::Dual(inner) = &self.0.backend {
            return inner.clone();
        }
        Self::build_unchecked(self.0.labels.clone(), Backend::Dual(self.clone()))
    }

    /// `M / contract \ delete`.
    pub fn minor(&self, contract: ElemSet, delete: ElemSet) -> Result<Matroid> {
        self.check_set(contract | delete)?;
        if contract.intersects(delete) {
            return Err(Error::input(format!(
                "contracted and deleted sets overlap in {}",
                self.fmt_set(contract & delete)
            )));
        }
        Ok(self.minor_unchecked(contract, delete))
    }

    pub(crate) fn minor_unchecked(&self, contract: ElemSet, delete: ElemSet) -> Matroid {
        let removed = contract | delete;
        if removed.is_empty() {
            return self.clone();
        }
        let kept: Vec<usize> = (self.ground() - removed).to_vec();
        let labels: Vec<Label> = kept.iter().map(|&i| self.0.labels[i].clone()).collect();
        let (inner, base_contracted, keep, lifted_contract) = match &self.0.backend {
            Backend::Minor(rep) => (
                rep.inner.clone(),
                rep.contracted,
                kept.iter().map(|&i| rep.keep[i]).collect::<Vec<_>>(),
                rep.lift(contract),
            ),
            _ => (self.clone(), ElemSet::EMPTY, kept, contract),
        };
        // extend the existing independent contraction set greedily
        let mut contracted = base_contracted;
        for e in lifted_contract {
            if inner.rank(contracted.with(e)) > contracted.len() {
                contracted.insert(e);
            }
        }
        Self::build_unchecked(
            labels,
            Backend::Minor(MinorRep {
                inner,
                contracted,
                keep,
            }),
        )
    }

    pub fn contract(&self, c: ElemSet) -> Result<Matroid> {
        self.minor(c, ElemSet::EMPTY)
    }

    pub fn delete(&self, d: ElemSet) -> Result<Matroid> {
        self.minor(ElemSet::EMPTY, d)
    }

    /// `M | X`.
    pub fn restrict(&self, x: ElemSet) -> Result<Matroid> {
        self.check_set(x)?;
        Ok(self.minor_unchecked(ElemSet::EMPTY, self.ground() - x))
    }

    /// Label-based contraction.
    pub fn contract_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid> {
        self.contract(self.set_of(labels)?)
    }

    pub fn delete_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid> {
        self.delete(self.set_of(labels)?)
    }

    /// `si(M)`: loops removed, one element kept per parallel class. Within a
    /// class the first member of `prefer` is kept if any, otherwise the
    /// first member in ground-set order.
    pub fn simplify(&self, prefer: ElemSet) -> Simplification {
        let g = self.ground();
        let loops = self.loops();
        let mut classes: Vec<ElemSet> = Vec::new();
        for e in g - loops {
            match classes
                .iter_mut()
                .find(|c| self.rank(ElemSet::singleton(c.first().unwrap()).with(e)) == 1)
            {
                Some(c) => c.insert(e),
                None => classes.push(ElemSet::singleton(e)),
            }
        }
        let reps: Vec<usize> = classes
            .iter()
            .map(|c| (*c & prefer).first().or(c.first()).unwrap())
            .collect();
        let retained: ElemSet = reps.iter().copied().collect();
        let matroid = self.minor_unchecked(ElemSet::EMPTY, g - retained);
        // new index of a retained element = its position among retained ones
        let position = |e: usize| (retained & ElemSet((1u64 << e) - 1)).len();
        let mut class_map = vec![None; self.len()];
        for (c, &rep) in classes.iter().zip(&reps) {
            for e in *c {
                class_map[e] = Some(position(rep));
            }
        }
        Simplification {
            matroid,
            retained,
            class_map,
        }
    }

    /// `si(M / X)`, the workhorse of vertical contractibility.
    pub fn contract_simplify(&self, x: ElemSet, prefer: ElemSet) -> Result<Simplification> {
        let c = self.contract(x)?;
        let prefer = self.transfer(prefer - x, &c)?;
        Ok(c.simplify(prefer))
    }

    /// Whether both matroids have the same labels and agree on every rank.
    pub fn same_rank_function(&self, other: &Matroid) -> bool {
        self.labels() == other.labels()
            && self.full_rank() == other.full_rank()
            && self.ground().subsets().all(|x| self.rank(x) == other.rank(x))
    }
}

/// Result of [`Matroid::simplify`].
#[derive(Clone, Debug)]
pub struct Simplification {
    pub matroid: Matroid,
    /// Elements of the source matroid that survive.
    pub retained: ElemSet,
    /// For each source element, the index in `matroid` of its class
    /// representative; `None` for loops.
    pub class_map: Vec<Option<usize>>,
}

pub(crate) fn sort_canonically(sets: &mut [ElemSet]) {
    sets.sort_by_cached_key(|s| (s.len(), s.to_vec()));
}

impl Inner {
    #[inline]
    fn cached_rank(&self, x: ElemSet) -> usize {
        match &self.cache {
            RankCache::Dense(cell) => {
                let table = cell.get_or_init(|| {
                    let n = self.labels.len();
                    (0..1usize << n).map(|_| AtomicU8::new(UNKNOWN)).collect()
                });
                let slot = &table[x.bits() as usize];
                let v = slot.load(Ordering::Relaxed);
                if v != UNKNOWN {
                    return v as usize;
                }
                let r = self.compute_rank(x);
                slot.store(r as u8, Ordering::Relaxed);
                r
            }
            RankCache::Sparse(map) => {
                if let Some(&v) = map.read().unwrap().get(&x.bits()) {
                    return v as usize;
                }
                let r = self.compute_rank(x);
                map.write().unwrap().insert(x.bits(), r as u8);
                r
            }
        }
    }

    fn compute_rank(&self, x: ElemSet) -> usize {
        match &self.backend {
            Backend::Uniform { rank } => x.len().min(*rank),
            Backend::Linear(rep) => {
                let mut e = Echelon::new(rep.field);
                for i in x {
                    e.insert(&rep.columns[i]);
                    if e.rank() == rep.rows {
                        break;
                    }
                }
                e.rank()
            }
            Backend::Graphic(g) => graph_rank(g, x),
            Backend::Bases(f) => f.rank(x, self.labels.len()),
            Backend::Dual(m) => {
                let n = self.labels.len();
                x.len() + m.rank(ElemSet::full(n) - x) - m.full_rank()
            }
            Backend::Minor(rep) => {
                let c = rep.contracted;
                rep.inner.rank(rep.lift(x) | c) - c.len()
            }
        }
    }
}

fn graph_rank(g: &GraphRep, x: ElemSet) -> usize {
    let mut parent: Vec<usize> = (0..g.vertices).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut r = 0;
    for i in x {
        let (u, v) = g.edges[i];
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            r += 1;
        }
    }
    r
}

impl GraphRep {
    /// Number of connected components, counting isolated vertices.
    pub fn components(&self) -> usize {
        self.vertices - graph_rank(self, ElemSet::full(self.edges.len()))
    }

    /// Vertices incident with at least one edge.
    pub fn touched_vertices(&self) -> usize {
        let mut seen = vec![false; self.vertices];
        for &(u, v) in &self.edges {
            seen[u] = true;
            seen[v] = true;
        }
        seen.into_iter().filter(|&b| b).count()
    }
}

impl BasisFamily {
    fn rank(&self, x: ElemSet, n: usize) -> usize {
        if n <= DENSE_CACHE_LIMIT {
            self.table(n)[x.bits() as usize] as usize
        } else {
            self.bases.iter().map(|b| (*b & x).len()).max().unwrap_or(0)
        }
    }

    /// Full rank table: a set is independent iff it lies in a basis; ranks
    /// then follow by `r(X) = max_e r(X - e)` for dependent `X`.
    fn table(&self, n: usize) -> &[u8] {
        self.table.get_or_init(|| {
            let size = 1usize << n;
            let mut indep = vec![false; size];
            for b in &self.bases {
                indep[b.bits() as usize] = true;
            }
            for mask in (0..size).rev() {
                if indep[mask] {
                    let mut m = mask;
                    while m != 0 {
                        let bit = m & m.wrapping_neg();
                        indep[mask ^ bit] = true;
                        m ^= bit;
                    }
                }
            }
            let mut rank = vec![0u8; size];
            for mask in 1..size {
                rank[mask] = if indep[mask] {
                    mask.count_ones() as u8
                } else {
                    let mut best = 0;
                    let mut m = mask;
                    while m != 0 {
                        let bit = m & m.wrapping_neg();
                        best = best.max(rank[mask ^ bit]);
                        m ^= bit;
                    }
                    best
                };
            }
            rank
        })
    }

    /// Returns a basis witnessing failure of the matroid axioms, if any.
    fn exchange_violation(&self, n: usize) -> Option<ElemSet> {
        if n <= DENSE_CACHE_LIMIT {
            // The max-intersection function is normalized and unit-increasing;
            // it is a matroid rank function iff it is locally submodular, and
            // then its rank-r sets are exactly the listed bases.
            let t = self.table(n);
            for mask in 0..(1usize << n) {
                let free = !mask & ((1usize << n) - 1);
                let r = t[mask];
                let mut a = free;
                while a != 0 {
                    let ea = a & a.wrapping_neg();
                    a ^= ea;
                    if t[mask | ea] != r {
                        continue;
                    }
                    let mut b = a;
                    while b != 0 {
                        let eb = b & b.wrapping_neg();
                        b ^= eb;
                        if t[mask | eb] == r && t[mask | ea | eb] != r {
                            let culprit = self
                                .bases
                                .iter()
                                .copied()
                                .find(|bs| (bs.bits() as usize & (mask | ea | eb)).count_ones() as u8 > r)
                                .unwrap_or(ElemSet(mask as u64));
                            return Some(culprit);
                        }
                    }
                }
            }
            None
        } else {
            let set: std::collections::HashSet<ElemSet> = self.bases.iter().copied().collect();
            for &b1 in &self.bases {
                for &b2 in &self.bases {
                    for x in b1 - b2 {
                        let ok = (b2 - b1).iter().any(|y| set.contains(&b1.without(x).with(y)));
                        if !ok {
                            return Some(b1);
                        }
                    }
                }
            }
            None
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.backend() {
            Backend::Uniform { .. } => "uniform",
            Backend::Linear(_) => "linear",
            Backend::Graphic(_) => "graphic",
            Backend::Bases(_) => "bases",
            Backend::Dual(_) => "dual",
            Backend::Minor(_) => "minor",
        };
        write!(
            f,
            "Matroid({kind}, rank {}, {})",
            self.full_rank(),
            self.fmt_set(self.ground())
        )
    }
}
