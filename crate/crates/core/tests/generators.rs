//! Exhaustive generators against orbit counts computed by brute force.

use std::collections::BTreeMap;

use matroid_core::iso::is_isomorphic;
use matroid_core::roundedness::{connected_simple_graphs, simple_gf_matroids};
use matroid_core::Matroid;

fn points(p: u32, dim: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for code in 0..p.pow(dim as u32) {
        let v: Vec<u32> = (0..dim).map(|i| code / p.pow(i as u32) % p).collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn normalize(mut v: Vec<u32>, p: u32) -> Vec<u32> {
    let lead = *v.iter().find(|&&x| x != 0).unwrap();
    let inv = (1..p).find(|b| lead * b % p == 1).unwrap();
    for x in &mut v {
        *x = *x * inv % p;
    }
    v
}

fn rank_of(vs: &[Vec<u32>], p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = vs.to_vec();
    let dim = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..dim {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let piv = rows[r].clone();
        let inv = (1..p).find(|b| piv[c] * b % p == 1).unwrap();
        for j in 0..rows.len() {
            if j != r && rows[j][c] != 0 {
                let f = rows[j][c] * inv % p;
                for k in 0..dim {
                    rows[j][k] = (rows[j][k] + p * p - f * piv[k] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Point permutations induced by GL(dim, p).
fn group_on_points(p: u32, dim: usize) -> (Vec<Vec<u32>>, Vec<Vec<usize>>) {
    let pts = points(p, dim);
    let index = |v: &Vec<u32>| pts.iter().position(|q| q == v).unwrap();
    let mut perms = Vec::new();
    let entries = dim * dim;
    for code in 0..p.pow(entries as u32) {
        let m: Vec<u32> = (0..entries).map(|i| code / p.pow(i as u32) % p).collect();
        let cols: Vec<Vec<u32>> = (0..dim).map(|j| (0..dim).map(|i| m[i * dim + j]).collect()).collect();
        if rank_of(&cols, p) < dim {
            continue;
        }
        let perm: Vec<usize> = pts
            .iter()
            .map(|v| {
                let img: Vec<u32> = (0..dim)
                    .map(|i| (0..dim).map(|j| m[i * dim + j] * v[j]).sum::<u32>() % p)
                    .collect();
                index(&normalize(img, p))
            })
            .collect();
        perms.push(perm);
    }
    perms.sort();
    perms.dedup();
    (pts, perms)
}

/// Orbits of spanning point sets, by size.
fn orbit_counts(p: u32, dim: usize, max: usize) -> BTreeMap<usize, usize> {
    let (pts, perms) = group_on_points(p, dim);
    let n = pts.len();
    let mut seen = vec![false; 1 << n];
    let mut counts = BTreeMap::new();
    for s in 0u32..1 << n {
        let size = s.count_ones() as usize;
        if seen[s as usize] || size > max {
            continue;
        }
        let chosen: Vec<Vec<u32>> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        if rank_of(&chosen, p) < dim {
            continue;
        }
        *counts.entry(size).or_insert(0) += 1;
        for perm in &perms {
            let img = (0..n).filter(|i| s >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << perm[i]);
            seen[img as usize] = true;
        }
    }
    counts
}

fn generated(p: u8, rank: usize, max: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    simple_gf_matroids(p, rank, max, &mut |m, _| {
        out.push(m.clone());
        Ok(false)
    })
    .unwrap();
    out
}

fn by_size(ms: &[Matroid]) -> BTreeMap<usize, usize> {
    let mut c = BTreeMap::new();
    for m in ms {
        *c.entry(m.len()).or_insert(0) += 1;
    }
    c
}

fn check_against_orbits(p: u8, rank: usize, max: usize) {
    let ms = generated(p, rank, max);
    assert_eq!(by_size(&ms), orbit_counts(p as u32, rank, max), "GF({p}) rank {rank}");
    for m in &ms {
        assert!(m.is_simple());
        assert_eq!(m.full_rank(), rank);
    }
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            if a.len() == b.len() {
                assert!(is_isomorphic(a, b).unwrap().is_none(), "duplicate class");
            }
        }
    }
}

#[test]
fn binary_rank3_matches_orbits() {
    check_against_orbits(2, 3, 7);
}

#[test]
fn binary_rank4_matches_orbits() {
    check_against_orbits(2, 4, 10);
}

#[test]
fn ternary_rank3_matches_orbits() {
    check_against_orbits(3, 3, 9);
}

/// Connected simple graphs on `v` labelled vertices, counted up to
/// relabelling, by edge count.
fn graph_orbits(v: usize) -> BTreeMap<usize, usize> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let e = pairs.len();
    let mut perms: Vec<Vec<usize>> = vec![(0..v).collect()];
    for k in 1..v {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..=k).map(move |i| {
                let mut q = p.clone();
                q.insert(i, k);
                q
            }))
            .collect();
    }
    let edge_perms: Vec<Vec<usize>> = perms
        .iter()
        .map(|pm| {
            pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (pm[a].min(pm[b]), pm[a].max(pm[b]));
                    pairs.iter().position(|&q| q == (x, y)).unwrap()
                })
                .collect()
        })
        .collect();
    let connected = |s: u32| {
        let mut reach = 1u32;
        loop {
            let mut next = reach;
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if s >> i & 1 == 1 && (reach >> a & 1 == 1 || reach >> b & 1 == 1) {
                    next |= 1 << a | 1 << b;
                }
            }
            if next == reach {
                return reach == (1 << v) - 1;
            }
            reach = next;
        }
    };
    let mut seen = vec![false; 1 << e];
    let mut counts = BTreeMap::new();
    for s in 0u32..1 << e {
        if seen[s as usize] || !connected(s) {
            continue;
        }
        *counts.entry(s.count_ones() as usize).or_insert(0) += 1;
        for pm in &edge_perms {
            let img = (0..e).filter(|i| s >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << pm[i]);
            seen[img as usize] = true;
        }
    }
    counts
}

#[test]
fn graphs_match_orbits() {
    for v in 2..=6 {
        let mut got = BTreeMap::new();
        for g in connected_simple_graphs(v, v * (v - 1) / 2).unwrap() {
            *got.entry(g.len()).or_insert(0) += 1;
        }
        assert_eq!(got, graph_orbits(v), "{v} vertices");
    }
}

#[test]
fn graph_totals_on_small_vertex_counts() {
    let totals: Vec<usize> = (1..=6).map(|v| connected_simple_graphs(v, 15).unwrap().len()).collect();
    assert_eq!(totals, [1, 1, 2, 6, 21, 112]);
}
