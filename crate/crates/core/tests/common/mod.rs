//! Brute-force oracles that read a matroid's raw presentation and never call
//! the library's rank machinery.

#![allow(dead_code)]

use matroid_core::{Backend, ElemSet, Matroid};

/// Independence of every subset, indexed by bitmask.
pub fn independence_table(m: &Matroid) -> Vec<bool> {
    let n = m.len();
    let total = 1usize << n;
    match m.backend() {
        Backend::Uniform { rank } => (0..total).map(|x| (x as u64).count_ones() as usize <= *rank).collect(),
        Backend::Linear(rep) => {
            let p = rep.field.order() as u32;
            (0..total)
                .map(|x| {
                    let cols: Vec<Vec<u32>> = (0..n)
                        .filter(|i| x >> i & 1 == 1)
                        .map(|i| rep.columns[i].iter().map(|&v| v as u32).collect())
                        .collect();
                    gauss_rank(cols, rep.rows, p) == (x as u64).count_ones() as usize
                })
                .collect()
        }
        Backend::Graphic(g) => (0..total)
            .map(|x| {
                let mut parent: Vec<usize> = (0..g.vertices).collect();
                for (i, &(u, v)) in g.edges.iter().enumerate() {
                    if x >> i & 1 == 0 {
                        continue;
                    }
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a == b {
                        return false;
                    }
                    parent[a] = b;
                }
                true
            })
            .collect(),
        Backend::Bases(f) => {
            let mut t = vec![false; total];
            for b in &f.bases {
                for s in b.subsets() {
                    t[s.bits() as usize] = true;
                }
            }
            t
        }
        Backend::Dual(inner) => {
            let bases = bases_from_table(&independence_table(inner), n);
            // X is coindependent iff E - X contains a basis
            (0..total)
                .map(|x| bases.iter().any(|&b| b & x as u64 == 0))
                .collect()
        }
        Backend::Minor(_) => panic!("the oracle reads only primitive presentations"),
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn gauss_rank(mut cols: Vec<Vec<u32>>, rows: usize, p: u32) -> usize {
    let inv = |a: u32| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for row in 0..rows {
        let Some(piv) = (rank..cols.len()).find(|&c| cols[c][row] != 0) else {
            continue;
        };
        cols.swap(rank, piv);
        let k = inv(cols[rank][row]);
        let pivot: Vec<u32> = cols[rank].iter().map(|v| v * k % p).collect();
        for c in 0..cols.len() {
            if c != rank && cols[c][row] != 0 {
                let f = cols[c][row];
                for r in 0..rows {
                    cols[c][r] = (cols[c][r] + p * p - f * pivot[r] % p) % p;
                }
            }
        }
        cols[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Maximal independent sets, as bitmasks.
pub fn bases_from_table(indep: &[bool], n: usize) -> Vec<u64> {
    let r = (0..1usize << n)
        .filter(|&x| indep[x])
        .map(|x| x.count_ones())
        .max()
        .unwrap_or(0);
    (0..1usize << n)
        .filter(|&x| indep[x] && x.count_ones() == r)
        .map(|x| x as u64)
        .collect()
}

/// `r(X) = max |X ∩ B|` over all bases.
pub fn rank_table(m: &Matroid) -> Vec<usize> {
    let n = m.len();
    let bases = bases_from_table(&independence_table(m), n);
    (0..1u64 << n)
        .map(|x| bases.iter().map(|b| (b & x).count_ones() as usize).max().unwrap())
        .collect()
}

/// Minimal sets not contained in any basis.
pub fn circuits_from_bases(bases: &[u64], n: usize) -> Vec<ElemSet> {
    let dependent = |x: u64| !bases.iter().any(|&b| x & b == x);
    (1..1u64 << n)
        .filter(|&x| dependent(x) && (0..n).all(|i| x >> i & 1 == 0 || !dependent(x & !(1 << i))))
        .map(ElemSet)
        .collect()
}

/// Minimal sets meeting every basis.
pub fn cocircuits_from_bases(bases: &[u64], n: usize) -> Vec<ElemSet> {
    let hits = |x: u64| bases.iter().all(|&b| x & b != 0);
    (1..1u64 << n)
        .filter(|&x| hits(x) && (0..n).all(|i| x >> i & 1 == 0 || !hits(x & !(1 << i))))
        .map(ElemSet)
        .collect()
}

/// Tutte 3-connectivity straight from the definition over a rank table.
pub fn three_connected_from_ranks(ranks: &[usize], n: usize) -> bool {
    let full = (1u64 << n) - 1;
    let rm = ranks[full as usize];
    (1..full).all(|a| {
        let b = full & !a;
        let lambda = ranks[a as usize] + ranks[b as usize] - rm;
        let small = a.count_ones().min(b.count_ones());
        !(lambda < 1 || (small >= 2 && lambda < 2))
    })
}

/// Catalog references with at most ten elements.
pub const SMALL_CATALOG: &[&str] = &[
    "u1_2", "u1_3", "u2_3", "u2_4", "u2_5", "u3_5", "u2_6", "u3_6", "u3_7", "u4_8", "u5_10", "wheel2",
    "wheel3", "wheel4", "wheel5", "whirl2", "whirl3", "whirl4", "whirl5", "k4", "k5", "k2_3", "k2_4",
    "k33", "k33star", "f7", "f7star", "p6", "q6", "u36", "prism", "ag32",
];

/// Simple graph operations for graph-level oracles.
pub mod graph {
    /// Vertex 3-connectivity: at least four vertices and connected after
    /// removing any two.
    pub fn is_3connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
        if vertices < 4 {
            return false;
        }
        for a in 0..vertices {
            for b in a..vertices {
                if !connected_without(vertices, edges, a, b) {
                    return false;
                }
            }
        }
        true
    }

    fn connected_without(vertices: usize, edges: &[(usize, usize)], a: usize, b: usize) -> bool {
        let alive: Vec<usize> = (0..vertices).filter(|&v| v != a && v != b).collect();
        let mut seen = vec![false; vertices];
        let mut stack = vec![alive[0]];
        seen[alive[0]] = true;
        while let Some(v) = stack.pop() {
            for &(x, y) in edges {
                for (s, t) in [(x, y), (y, x)] {
                    if s == v && t != a && t != b && !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        alive.iter().all(|&v| seen[v])
    }

    /// `G/e` with loops and parallel copies removed.
    pub fn contract_simple(vertices: usize, edges: &[(usize, usize)], e: usize) -> (usize, Vec<(usize, usize)>) {
        let (u, v) = edges[e];
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &(x, y) in edges {
            let (a, b) = (relabel(x), relabel(y));
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if !out.contains(&key) {
                out.push(key);
            }
        }
        (vertices - 1, out)
    }

    /// Whether the chosen edges form a forest.
    pub fn is_forest(vertices: usize, edges: &[(usize, usize)]) -> bool {
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn root(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                v = p[v];
            }
            v
        }
        for &(u, v) in edges {
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}
