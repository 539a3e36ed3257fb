//! Tutte connectivity.
//!
//! `λ(A) = r(A) + r(E - A) - r(M) + 1`. A k-separation is a partition with
//! `λ ≤ k` and both sides of size at least `k`; a matroid is 3-connected
//! when it has neither a 1- nor a 2-separation. Small matroids follow the
//! definition literally, so `U_{0,0}`, `U_{1,1}`, `U_{1,2}` and `U_{1,3}`
//! are all 3-connected.

use crate::budget;
use crate::error::{Error, Result};
use crate::limits;
use crate::matroid::Matroid;
use crate::set::ElemSet;

/// A partition `(A, B)` of the ground set with its connectivity value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub side_a: ElemSet,
    pub side_b: ElemSet,
    pub order: usize,
}

impl Separation {
    /// Recomputes the order and the partition property.
    pub fn verify(&self, m: &Matroid) -> bool {
        !self.side_a.intersects(self.side_b)
            && (self.side_a | self.side_b) == m.ground()
            && lambda(m, self.side_a) == self.order
            && lambda(m, self.side_b) == self.order
    }

    pub fn describe(&self, m: &Matroid) -> String {
        format!(
            "({} | {}) order {}",
            m.fmt_set(self.side_a),
            m.fmt_set(self.side_b),
            self.order
        )
    }
}

/// `λ(A)`.
pub fn lambda(m: &Matroid, a: ElemSet) -> usize {
    m.rank(a) + m.rank(m.ground() - a) + 1 - m.full_rank()
}

fn check_bound(m: &Matroid) -> Result<()> {
    let bound = limits::current().enumeration;
    if m.len() > bound {
        return Err(Error::resource(format!(
            "separation search on {} elements exceeds the enumeration bound {bound}",
            m.len()
        )));
    }
    Ok(())
}

/// Smallest-side-first search for a partition accepted by `bad(|A|, λ)`.
///
/// Since `λ(A) = λ(E - A)`, each partition is visited once through its
/// canonical side: the smaller one, or for equal halves the one avoiding the
/// last element. Sides are taken by size, then in increasing mask order, so
/// the first hit is the least canonical witness. `min_side` skips sizes no
/// predicate can accept.
fn scan(m: &Matroid, min_side: usize, bad: impl Fn(usize, usize) -> bool) -> Result<Option<Separation>> {
    check_bound(m)?;
    let n = m.len();
    let g = m.ground();
    let last = n.wrapping_sub(1);
    for size in min_side.max(1)..=n / 2 {
        for a in g.subsets_of_size(size) {
            budget::checkpoint()?;
            if 2 * size == n && a.contains(last) {
                continue;
            }
            let l = lambda(m, a);
            if bad(size, l) {
                return Ok(Some(Separation {
                    side_a: a,
                    side_b: g - a,
                    order: l,
                }));
            }
        }
    }
    Ok(None)
}

/// A separation of order at most `k` with both sides of size at least `k`.
pub fn find_separation(m: &Matroid, k: usize) -> Result<Option<Separation>> {
    scan(m, k, |size, l| size >= k && l <= k)
}

/// Reference search over every subset, normalized to the same canonical
/// witness as [`find_separation`]. Exponentially slower; for testing.
pub fn find_separation_exhaustive(m: &Matroid, k: usize) -> Result<Option<Separation>> {
    check_bound(m)?;
    let n = m.len();
    let g = m.ground();
    let mut best: Option<(usize, u64, usize)> = None;
    for a in g.subsets() {
        let b = g - a;
        if a.len() < k || b.len() < k || a.is_empty() || b.is_empty() {
            continue;
        }
        let l = lambda(m, a);
        if l > k {
            continue;
        }
        let canon = if a.len() < b.len() || (a.len() == b.len() && !a.contains(n - 1)) {
            a
        } else {
            b
        };
        let key = (canon.len(), canon.bits(), l);
        if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
            best = Some(key);
        }
    }
    Ok(best.map(|(_, bits, l)| Separation {
        side_a: ElemSet(bits),
        side_b: g - ElemSet(bits),
        order: l,
    }))
}

/// No 1-separation.
pub fn is_connected(m: &Matroid) -> Result<bool> {
    Ok(find_separation(m, 1)?.is_none())
}

/// The first 1- or 2-separation, in canonical order.
pub fn low_separation(m: &Matroid) -> Result<Option<Separation>> {
    scan(m, 1, |size, l| l <= 1 || (size >= 2 && l <= 2))
}

/// No 1- and no 2-separation.
pub fn is_3connected(m: &Matroid) -> Result<bool> {
    Ok(low_separation(m)?.is_none())
}

/// `si(M / X)` is 3-connected; parallel classes keep members of `prefer`.
pub fn is_vertically_contractible(m: &Matroid, x: ElemSet, prefer: ElemSet) -> Result<bool> {
    let si = m.contract_simplify(x, prefer)?;
    is_3connected(&si.matroid)
}

/// `M / X` is 3-connected.
pub fn is_contractible(m: &Matroid, x: ElemSet) -> Result<bool> {
    is_3connected(&m.contract(x)?)
}
