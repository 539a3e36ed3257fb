//! Named matroids.
//!
//! Every constructor is checked against a few known facts (size, rank,
//! 3-connectivity, self-duality) when built through [`build`] or
//! [`resolve`].
//!
//! Label conventions:
//! * uniform matroids use `a, b, c, ..`;
//! * wheels and whirls interleave spokes and rim edges `s1 r1 s2 r2 ..`,
//!   where `s_i` joins the hub to rim vertex `i` and `r_i` joins rim
//!   vertices `i` and `i + 1`;
//! * complete graphs label the edge `ij` as `e{i}{j}` (vertices from 1);
//! * `K_{m,n}` labels the edge between left `i` and right `j` as `e{i}{j}`;
//! * the prism graph has triangles `p1 p2 p3` and `q1 q2 q3` joined by the
//!   matching `x1 x2 x3`, with `{x_i, p_j, p_k}` and `{x_i, q_j, q_k}` the
//!   vertex stars;
//! * `F_7`, `P_6`, `Q_6`, `AG(3,2)` use `a, b, c, ..` in column order.

use crate::connectivity::is_3connected;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::iso;
use crate::matroid::Matroid;
use crate::set::ElemSet;

/// Facts a catalog matroid must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub elements: usize,
    pub rank: usize,
    pub three_connected: bool,
    /// Checked only up to the isomorphism bound.
    pub self_dual: Option<bool>,
}

/// Names accepted by [`build`].
pub const NAMES: &[&str] = &[
    "uniform", "wheel", "whirl", "complete", "bipartite", "k33", "k33star", "f7", "f7star", "p6",
    "q6", "u36", "prism", "ag32",
];

fn gf(p: u8) -> PrimeField {
    PrimeField::new(p).expect("catalog fields are prime")
}

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    Matroid::uniform(r, n)
}

fn wheel_edges(n: usize) -> Vec<(String, usize, usize)> {
    let mut edges = Vec::with_capacity(2 * n);
    for i in 1..=n {
        edges.push((format!("s{i}"), 0, i));
        edges.push((format!("r{i}"), i, i % n + 1));
    }
    edges
}

/// `M(W_n)`, graphic, on `n + 1` vertices with hub `0`.
pub fn wheel(n: usize) -> Result<Matroid> {
    if n < 2 {
        return Err(Error::input("wheels need at least 2 spokes"));
    }
    Matroid::graphic(n + 1, wheel_edges(n))
}

/// `W^n`: the wheel with its rim added as a basis.
pub fn whirl(n: usize) -> Result<Matroid> {
    let w = wheel(n)?;
    let mut bases = w.bases()?;
    let rim: ElemSet = (0..n).map(|i| 2 * i + 1).collect();
    bases.push(rim);
    Matroid::from_bases(w.labels(), n, bases)
}

/// `M(K_n)`.
pub fn complete(n: usize) -> Result<Matroid> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((format!("e{}{}", i + 1, j + 1), i, j));
        }
    }
    Matroid::graphic(n, edges)
}

/// `M(K_{m,n})`.
pub fn bipartite(m: usize, n: usize) -> Result<Matroid> {
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push((format!("e{}{}", i + 1, j + 1), i, m + j));
        }
    }
    Matroid::graphic(m + n, edges)
}

/// `M*(K_{3,3})`.
pub fn k33_star() -> Result<Matroid> {
    Ok(bipartite(3, 3)?.dual())
}

const FANO_EXTRA: [[u8; 3]; 4] = [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]];

/// `F_7` over GF(2): `[I_3 | 110, 101, 011, 111]`.
pub fn fano() -> Result<Matroid> {
    let mut cols: Vec<(String, Vec<u8>)> = Vec::new();
    for i in 0..3 {
        let mut c = vec![0u8; 3];
        c[i] = 1;
        cols.push((((b'a' + i as u8) as char).to_string(), c));
    }
    for (k, v) in FANO_EXTRA.iter().enumerate() {
        cols.push((((b'd' + k as u8) as char).to_string(), v.to_vec()));
    }
    Matroid::linear(gf(2), cols)
}

/// `F_7^*` over GF(2), from the standard dual form `[A^T | I_4]`.
pub fn fano_dual() -> Result<Matroid> {
    let mut cols: Vec<(String, Vec<u8>)> = Vec::new();
    for i in 0..3 {
        let c: Vec<u8> = FANO_EXTRA.iter().map(|row| row[i]).collect();
        cols.push((((b'a' + i as u8) as char).to_string(), c));
    }
    for k in 0..4 {
        let mut c = vec![0u8; 4];
        c[k] = 1;
        cols.push((((b'd' + k as u8) as char).to_string(), c));
    }
    Matroid::linear(gf(2), cols)
}

fn letters(cols: &[[u8; 3]]) -> Vec<(String, Vec<u8>)> {
    cols.iter()
        .enumerate()
        .map(|(i, c)| (((b'a' + i as u8) as char).to_string(), c.to_vec()))
        .collect()
}

/// `P_6` over GF(7): six points in the plane with exactly one 3-point line
/// `{a, b, c}`.
pub fn p6() -> Result<Matroid> {
    Matroid::linear(
        gf(7),
        letters(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 1], [1, 3, 3]]),
    )
}

/// `Q_6` over GF(7): two 3-point lines `{a, b, c}` and `{c, d, e}` meeting
/// in `c`.
pub fn q6() -> Result<Matroid> {
    Matroid::linear(
        gf(7),
        letters(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]),
    )
}

/// Graph of the triangular prism.
pub fn prism() -> Result<Matroid> {
    Matroid::graphic(
        6,
        vec![
            ("p1", 1, 2),
            ("p2", 0, 2),
            ("p3", 0, 1),
            ("q1", 4, 5),
            ("q2", 3, 5),
            ("q3", 3, 4),
            ("x1", 0, 3),
            ("x2", 1, 4),
            ("x3", 2, 5),
        ],
    )
}

/// `AG(3, 2)`: the eight vectors `(1, v)` over GF(2).
pub fn ag32() -> Result<Matroid> {
    let mut cols = Vec::new();
    for v in 0..8u8 {
        let c = vec![1, v & 1, v >> 1 & 1, v >> 2 & 1];
        cols.push((((b'a' + v) as char).to_string(), c));
    }
    Matroid::linear(gf(2), cols)
}

/// Known facts for a catalog construction.
pub fn expected(name: &str, params: &[usize]) -> Result<Expected> {
    let e = |elements, rank, three_connected, self_dual| Expected {
        elements,
        rank,
        three_connected,
        self_dual,
    };
    Ok(match (name, params) {
        ("uniform", &[r, n]) => e(
            n,
            r,
            // U_{r,n} is 3-connected iff it has no 1- or 2-separation
            uniform_is_3connected(r, n),
            Some(2 * r == n),
        ),
        ("wheel", &[n]) => e(2 * n, n, n >= 3, (n >= 3).then_some(true)),
        ("whirl", &[n]) => e(2 * n, n, n >= 2, Some(true)),
        ("complete", &[n]) => e(n * (n - 1) / 2, n.saturating_sub(1), true, (n == 4).then_some(true)),
        ("bipartite", &[m, n]) => e(m * n, m + n - 1, m >= 3 && n >= 3, None),
        ("k33", &[]) => e(9, 5, true, Some(false)),
        ("k33star", &[]) => e(9, 4, true, Some(false)),
        ("f7", &[]) => e(7, 3, true, Some(false)),
        ("f7star", &[]) => e(7, 4, true, Some(false)),
        ("p6", &[]) | ("q6", &[]) => e(6, 3, true, None),
        ("u36", &[]) => e(6, 3, true, Some(true)),
        ("prism", &[]) => e(9, 5, true, Some(false)),
        ("ag32", &[]) => e(8, 4, true, Some(true)),
        _ => return Err(bad_params(name, params)),
    })
}

fn uniform_is_3connected(r: usize, n: usize) -> bool {
    // a side A has λ(A) = min(|A|,r) + min(n-|A|,r) - r + 1
    (1..n).all(|a| {
        let l = a.min(r) + (n - a).min(r) + 1 - r;
        let small = a.min(n - a);
        !(l <= 1 || (small >= 2 && l <= 2))
    })
}

fn bad_params(name: &str, params: &[usize]) -> Error {
    if NAMES.contains(&name) {
        Error::input(format!("bad parameters {params:?} for catalog matroid `{name}`"))
    } else {
        Error::Resolution {
            name: name.to_string(),
            known: NAMES.join(", "),
        }
    }
}

/// Builds a catalog matroid without self-tests.
pub fn construct(name: &str, params: &[usize]) -> Result<Matroid> {
    match (name, params) {
        ("uniform", &[r, n]) => uniform(r, n),
        ("wheel", &[n]) => wheel(n),
        ("whirl", &[n]) => whirl(n),
        ("complete", &[n]) => complete(n),
        ("bipartite", &[m, n]) => bipartite(m, n),
        ("k33", &[]) => bipartite(3, 3),
        ("k33star", &[]) => k33_star(),
        ("f7", &[]) => fano(),
        ("f7star", &[]) => fano_dual(),
        ("p6", &[]) => p6(),
        ("q6", &[]) => q6(),
        ("u36", &[]) => uniform(3, 6),
        ("prism", &[]) => prism(),
        ("ag32", &[]) => ag32(),
        _ => Err(bad_params(name, params)),
    }
}

/// Verifies `m` against `exp`.
pub fn self_test(m: &Matroid, exp: &Expected) -> Result<()> {
    let fail = |what: String| Err(Error::Internal(format!("catalog self-test failed: {what}")));
    if m.len() != exp.elements {
        return fail(format!("{} elements, expected {}", m.len(), exp.elements));
    }
    if m.full_rank() != exp.rank {
        return fail(format!("rank {}, expected {}", m.full_rank(), exp.rank));
    }
    if m.len() <= crate::limits::current().enumeration && is_3connected(m)? != exp.three_connected {
        return fail(format!("3-connectivity is not {}", exp.three_connected));
    }
    if let Some(sd) = exp.self_dual {
        if m.len() <= crate::limits::current().isomorphism
            && iso::is_isomorphic(m, &m.dual())?.is_some() != sd
        {
            return fail(format!("self-duality is not {sd}"));
        }
    }
    Ok(())
}

/// Builds a catalog matroid and runs its self-test.
pub fn build(name: &str, params: &[usize]) -> Result<Matroid> {
    let m = construct(name, params)?;
    self_test(&m, &expected(name, params)?)?;
    Ok(m)
}

/// Splits a short reference such as `wheel5`, `u2_4` or `k33star` into a
/// catalog name and parameters.
pub fn parse_reference(reference: &str) -> Option<(&'static str, Vec<usize>)> {
    let r = reference.to_ascii_lowercase();
    let fixed: &[(&str, &str)] = &[
        ("u24", "u24"),
        ("k33", "k33"),
        ("k33star", "k33star"),
        ("f7", "f7"),
        ("f7star", "f7star"),
        ("p6", "p6"),
        ("q6", "q6"),
        ("u36", "u36"),
        ("prism", "prism"),
        ("ag32", "ag32"),
    ];
    if let Some((_, name)) = fixed.iter().find(|(k, _)| *k == r) {
        if *name == "u24" {
            return Some(("uniform", vec![2, 4]));
        }
        return NAMES.iter().find(|n| *n == name).map(|n| (*n, Vec::new()));
    }
    let num = |s: &str| s.parse::<usize>().ok();
    if let Some(rest) = r.strip_prefix("wheel") {
        return num(rest).map(|n| ("wheel", vec![n]));
    }
    if let Some(rest) = r.strip_prefix("whirl") {
        return num(rest).map(|n| ("whirl", vec![n]));
    }
    if let Some(rest) = r.strip_prefix('u') {
        let (a, b) = rest.split_once('_')?;
        return Some(("uniform", vec![num(a)?, num(b)?]));
    }
    if let Some(rest) = r.strip_prefix('k') {
        if let Some((a, b)) = rest.split_once('_') {
            return Some(("bipartite", vec![num(a)?, num(b)?]));
        }
        return num(rest).map(|n| ("complete", vec![n]));
    }
    None
}

/// Short references understood by [`resolve`], for error messages.
pub const REFERENCE_FORMS: &str =
    "u24, u<r>_<n>, wheel<n>, whirl<n>, k<n>, k<m>_<n>, k33, k33star, f7, f7star, p6, q6, u36, prism, ag32";

/// Builds (with self-test) the catalog matroid named by a short reference.
pub fn resolve(reference: &str) -> Result<Matroid> {
    let (name, params) = parse_reference(reference).ok_or_else(|| Error::Resolution {
        name: reference.to_string(),
        known: REFERENCE_FORMS.to_string(),
    })?;
    build(name, &params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references_parse() {
        assert_eq!(parse_reference("u24"), Some(("uniform", vec![2, 4])));
        assert_eq!(parse_reference("u3_7"), Some(("uniform", vec![3, 7])));
        assert_eq!(parse_reference("wheel5"), Some(("wheel", vec![5])));
        assert_eq!(parse_reference("k4"), Some(("complete", vec![4])));
        assert_eq!(parse_reference("k2_3"), Some(("bipartite", vec![2, 3])));
        assert_eq!(parse_reference("k33star"), Some(("k33star", vec![])));
        assert_eq!(parse_reference("nonsense"), None);
        assert!(matches!(resolve("nonsense"), Err(Error::Resolution { .. })));
    }

    #[test]
    fn whirl3_is_not_the_wheel() {
        let w = build("whirl", &[3]).unwrap();
        assert_eq!((w.len(), w.full_rank()), (6, 3));
        assert!(iso::is_isomorphic(&w, &wheel(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn fano_lines() {
        let f = build("f7", &[]).unwrap();
        let circuits = f.circuit_sets().unwrap();
        let lines: Vec<_> = circuits.iter().filter(|c| c.len() == 3).collect();
        assert_eq!(lines.len(), 7);
        for e in f.ground() {
            assert_eq!(lines.iter().filter(|l| l.contains(e)).count(), 3);
        }
        let fd = build("f7star", &[]).unwrap();
        assert!(fd.same_rank_function(&f.dual()));
    }

    #[test]
    fn p6_q6_golden_triangles() {
        let p = build("p6", &[]).unwrap();
        let q = build("q6", &[]).unwrap();
        let tri = |m: &Matroid| -> Vec<String> {
            m.circuit_sets()
                .unwrap()
                .into_iter()
                .filter(|c| c.len() == 3)
                .map(|c| m.fmt_set(c))
                .collect()
        };
        assert_eq!(tri(&p), vec!["{a,b,c}"]);
        assert_eq!(tri(&q), vec!["{a,b,c}", "{c,d,e}"]);
        assert!(p.is_simple() && q.is_simple());
        assert!(iso::is_isomorphic(&p, &q).unwrap().is_none());
    }

    #[test]
    fn prism_stars_are_triads() {
        let m = build("prism", &[]).unwrap();
        for star in [["x1", "p2", "p3"], ["x2", "p1", "p3"], ["x3", "p1", "p2"]] {
            assert!(m.is_cocircuit(m.set_of(&star).unwrap()));
        }
        assert!(m.is_circuit(m.set_of(&["p1", "p2", "p3"]).unwrap()));
    }

    #[test]
    fn small_catalog_passes_self_tests() {
        for (name, params) in [
            ("uniform", vec![2, 4]),
            ("uniform", vec![2, 5]),
            ("uniform", vec![1, 2]),
            ("wheel", vec![3]),
            ("wheel", vec![4]),
            ("whirl", vec![4]),
            ("complete", vec![4]),
            ("k33", vec![]),
            ("k33star", vec![]),
            ("u36", vec![]),
            ("ag32", vec![]),
            ("p6", vec![]),
            ("q6", vec![]),
        ] {
            build(name, &params).unwrap_or_else(|e| panic!("{name}{params:?}: {e}"));
        }
    }
}
