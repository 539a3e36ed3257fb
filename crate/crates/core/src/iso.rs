//! Matroid isomorphism by backtracking over circuit-preserving bijections.
//!
//! A bijection `f: E(A) -> E(B)` is an isomorphism iff it maps every
//! circuit of `A` to a circuit of `B` and both matroids have the same number
//! of circuits. The search assigns elements one at a time, only to partners
//! with the same local invariant, and rejects a partial map as soon as a
//! completed circuit on either side has a non-circuit image.

use std::collections::HashSet;

use crate::budget;
use crate::error::{Error, Result};
use crate::limits;
use crate::matroid::Matroid;
use crate::set::ElemSet;

/// Isomorphism-invariant data about a matroid, reusable across many tests.
#[derive(Clone, Debug)]
pub struct Profile {
    pub circuits: Vec<ElemSet>,
    /// Per element: circuit counts by size then cocircuit counts by size.
    pub local: Vec<Vec<u32>>,
    pub signature: Signature,
}

/// Cheap invariant; unequal signatures mean non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub elements: usize,
    pub rank: usize,
    pub circuit_spectrum: Vec<u32>,
    pub cocircuit_spectrum: Vec<u32>,
    pub local: Vec<Vec<u32>>,
}

fn spectrum(sets: &[ElemSet], n: usize) -> Vec<u32> {
    let mut s = vec![0u32; n + 2];
    for c in sets {
        s[c.len()] += 1;
    }
    s
}

/// Circuits, cocircuits and per-element counts.
pub fn profile(m: &Matroid) -> Result<Profile> {
    let n = m.len();
    let circuits = m.circuit_sets()?;
    let cocircuits = m.cocircuit_sets()?;
    let width = n + 2;
    let mut local = vec![vec![0u32; 2 * width]; n];
    for c in &circuits {
        for e in *c {
            local[e][c.len()] += 1;
        }
    }
    for d in &cocircuits {
        for e in *d {
            local[e][width + d.len()] += 1;
        }
    }
    let mut sorted_local = local.clone();
    sorted_local.sort();
    let signature = Signature {
        elements: n,
        rank: m.full_rank(),
        circuit_spectrum: spectrum(&circuits, n),
        cocircuit_spectrum: spectrum(&cocircuits, n),
        local: sorted_local,
    };
    Ok(Profile {
        circuits,
        local,
        signature,
    })
}

/// An isomorphism `A -> B` as `map[a] = b`, if one exists. Both ground sets
/// must be within the configured isomorphism bound.
pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> Result<Option<Vec<usize>>> {
    find_isomorphism(a, b, limits::current().isomorphism)
}

/// As [`is_isomorphic`] with an explicit size bound.
pub fn find_isomorphism(a: &Matroid, b: &Matroid, bound: usize) -> Result<Option<Vec<usize>>> {
    for m in [a, b] {
        if m.len() > bound {
            return Err(Error::resource(format!(
                "isomorphism test on {} elements exceeds the bound {bound}",
                m.len()
            )));
        }
    }
    if a.len() != b.len() || a.full_rank() != b.full_rank() {
        return Ok(None);
    }
    let pa = profile(a)?;
    let pb = profile(b)?;
    isomorphism_from_profiles(&pa, &pb)
}

/// Isomorphism search on precomputed profiles.
pub fn isomorphism_from_profiles(pa: &Profile, pb: &Profile) -> Result<Option<Vec<usize>>> {
    if pa.signature != pb.signature {
        return Ok(None);
    }
    let n = pa.signature.elements;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let candidates: Vec<ElemSet> = (0..n)
        .map(|e| (0..n).filter(|&h| pb.local[h] == pa.local[e]).collect())
        .collect();
    let order = search_order(n, &pa.circuits, &candidates);
    let mut s = IsoSearch {
        order: &order,
        candidates: &candidates,
        circuits_a: pa.circuits.iter().map(|c| c.bits()).collect(),
        circuits_b: pb.circuits.iter().map(|c| c.bits()).collect(),
        by_elem_a: by_element(n, &pa.circuits),
        by_elem_b: by_element(n, &pb.circuits),
        map: vec![usize::MAX; n],
        inverse: vec![usize::MAX; n],
    };
    if s.extend(0, ElemSet::EMPTY, ElemSet::EMPTY)? {
        Ok(Some(s.map))
    } else {
        Ok(None)
    }
}

fn by_element(n: usize, circuits: &[ElemSet]) -> Vec<Vec<ElemSet>> {
    let mut out = vec![Vec::new(); n];
    for c in circuits {
        for e in *c {
            out[e].push(*c);
        }
    }
    out
}

/// Greedy order: next is the element closing the most circuits with the
/// prefix, then touching the most, then with fewest candidates.
fn search_order(n: usize, circuits: &[ElemSet], candidates: &[ElemSet]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut placed = ElemSet::EMPTY;
    while order.len() < n {
        let best = (0..n)
            .filter(|e| !placed.contains(*e))
            .max_by_key(|&e| {
                let with = placed.with(e);
                let closed = circuits
                    .iter()
                    .filter(|c| c.contains(e) && c.is_subset(with))
                    .count();
                let touching = circuits
                    .iter()
                    .filter(|c| c.contains(e) && c.intersects(placed))
                    .count();
                (closed, touching, std::cmp::Reverse(candidates[e].len()), std::cmp::Reverse(e))
            })
            .unwrap();
        order.push(best);
        placed.insert(best);
    }
    order
}

struct IsoSearch<'a> {
    order: &'a [usize],
    candidates: &'a [ElemSet],
    circuits_a: HashSet<u64>,
    circuits_b: HashSet<u64>,
    by_elem_a: Vec<Vec<ElemSet>>,
    by_elem_b: Vec<Vec<ElemSet>>,
    map: Vec<usize>,
    inverse: Vec<usize>,
}

impl IsoSearch<'_> {
    fn image(&self, x: ElemSet) -> ElemSet {
        x.iter().map(|e| self.map[e]).collect()
    }

    fn preimage(&self, y: ElemSet) -> ElemSet {
        y.iter().map(|h| self.inverse[h]).collect()
    }

    fn extend(&mut self, depth: usize, domain: ElemSet, used: ElemSet) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        budget::checkpoint()?;
        let e = self.order[depth];
        let dom = domain.with(e);
        for h in self.candidates[e] - used {
            self.map[e] = h;
            self.inverse[h] = e;
            let img = used.with(h);
            let forward_ok = self.by_elem_a[e]
                .iter()
                .filter(|c| c.is_subset(dom))
                .all(|c| self.circuits_b.contains(&self.image(*c).bits()));
            let backward_ok = forward_ok
                && self.by_elem_b[h]
                    .iter()
                    .filter(|d| d.is_subset(img))
                    .all(|d| self.circuits_a.contains(&self.preimage(*d).bits()));
            if backward_ok && self.extend(depth + 1, dom, img)? {
                return Ok(true);
            }
            self.map[e] = usize::MAX;
            self.inverse[h] = usize::MAX;
        }
        Ok(false)
    }
}

/// Whether `map` (indices of `a` to indices of `b`) preserves every rank.
pub fn preserves_rank(a: &Matroid, b: &Matroid, map: &[usize]) -> bool {
    a.len() == b.len()
        && map.len() == a.len()
        && a.ground().subsets().all(|x| {
            let y: ElemSet = x.iter().map(|e| map[e]).collect();
            y.len() == x.len() && a.rank(x) == b.rank(y)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Matroid {
        let labelled: Vec<(String, usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (format!("e{i}"), u, v))
            .collect();
        Matroid::graphic(n, labelled).unwrap()
    }

    #[test]
    fn k4_relabelled_is_isomorphic() {
        let a = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let b = graph(4, &[(2, 3), (1, 3), (0, 1), (0, 3), (1, 2), (0, 2)]);
        let f = is_isomorphic(&a, &b).unwrap().unwrap();
        assert!(preserves_rank(&a, &b, &f));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let a = Matroid::uniform(2, 4).unwrap();
        let b = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_isomorphic(&a, &b).unwrap().is_none());
    }

    #[test]
    fn same_signature_may_still_fail() {
        // two triangles sharing nothing vs a 4-cycle plus a 2-cycle: both
        // rank 4 on 6 elements, told apart by the search or the signature
        let a = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let b = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 4)]);
        assert!(is_isomorphic(&a, &b).unwrap().is_none());
    }

    #[test]
    fn bound_is_enforced() {
        let a = Matroid::uniform(3, 13).unwrap();
        assert!(matches!(is_isomorphic(&a, &a), Err(Error::Resource(_))));
    }
}
