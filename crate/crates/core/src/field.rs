//! Prime-field arithmetic and column rank over GF(p).

use crate::error::{Error, Result};

/// Largest prime field supported.
pub const MAX_PRIME: u8 = 13;

/// GF(p) for a prime `p <= 13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u8) -> Result<Self> {
        if !matches!(p, 2 | 3 | 5 | 7 | 11 | 13) {
            return Err(Error::input(format!(
                "GF({p}) is not a supported prime field (primes up to {MAX_PRIME})"
            )));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn order(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.p));
        // a^(p-2)
        let mut result = 1u8;
        for _ in 0..self.p - 2 {
            result = self.mul(result, a);
        }
        result
    }

    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    /// Rescales `v` so its first nonzero entry is 1. Returns false for zero.
    pub fn normalize(self, v: &mut [u8]) -> bool {
        let Some(lead) = v.iter().copied().find(|&x| x != 0) else {
            return false;
        };
        let s = self.inv(lead);
        for x in v.iter_mut() {
            *x = self.mul(*x, s);
        }
        true
    }

    /// All nonzero vectors of length `dim` with leading nonzero entry 1, in
    /// lexicographic order: the points of PG(dim-1, p).
    pub fn projective_points(self, dim: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut v = vec![0u8; dim];
        loop {
            if v.iter().copied().find(|&x| x != 0) == Some(1) {
                out.push(v.clone());
            }
            // odometer, last coordinate fastest
            let mut i = dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < self.p {
                    break;
                }
                v[i] = 0;
            }
        }
    }
}

/// Row-echelon accumulator: inserts vectors one at a time and reports
/// whether each was independent of the ones before.
pub struct Echelon {
    field: PrimeField,
    /// Reduced rows, each with its pivot column.
    rows: Vec<(usize, Vec<u8>)>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let f = self.field;
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = w[*pivot];
            if c != 0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = f.sub(*wi, f.mul(c, *ri));
                }
            }
        }
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(pivot) => {
                let s = f.inv(w[pivot]);
                for x in w.iter_mut() {
                    *x = f.mul(*x, s);
                }
                self.rows.push((pivot, w));
                true
            }
        }
    }
}

/// Rank of a list of column vectors.
pub fn column_rank<'a>(field: PrimeField, cols: impl IntoIterator<Item = &'a [u8]>) -> usize {
    let mut e = Echelon::new(field);
    for c in cols {
        e.insert(c);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2u8, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
            }
        }
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(17).is_err());
    }

    #[test]
    fn projective_point_counts() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.projective_points(3).len(), 13);
        assert_eq!(f3.projective_points(4).len(), 40);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.projective_points(3).len(), 7);
    }

    #[test]
    fn rank_of_dependent_columns() {
        let f = PrimeField::new(3).unwrap();
        let a = [1u8, 0, 1];
        let b = [0u8, 1, 1];
        let c = [1u8, 1, 2];
        assert_eq!(column_rank(f, [&a[..], &b[..], &c[..]]), 2);
        let d = [1u8, 0, 0];
        assert_eq!(column_rank(f, [&a[..], &b[..], &d[..]]), 3);
    }
}
