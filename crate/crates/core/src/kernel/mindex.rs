use std::fmt;
use std::ops::{Add, Index, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An integer multi-index `m = (m_1, ..., m_n)`, the exponent of `t^m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MIndex(SmallVec<[i32; 4]>);

impl MIndex {
    pub fn zeros(n: usize) -> Self {
        MIndex(SmallVec::from_elem(0, n))
    }

    /// The unit vector `e_i` (zero-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = MIndex::zeros(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(v: &[i32]) -> Self {
        MIndex(SmallVec::from_slice(v))
    }

    /// Like [`MIndex::from_slice`] but rejects negative entries.
    pub fn nonneg(v: &[i32]) -> Result<Self> {
        if v.iter().any(|&x| x < 0) {
            return Err(Error::pre(format!("negative entry in exponent {:?}", v)));
        }
        Ok(MIndex::from_slice(v))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `|m|`, the sum of the entries.
    pub fn abs(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn with(&self, i: usize, v: i32) -> Self {
        let mut m = self.clone();
        m.0[i] = v;
        m
    }

    /// `self + k e_i`.
    pub fn shift(&self, i: usize, k: i32) -> Self {
        let mut m = self.clone();
        m.0[i] += k;
        m
    }

    pub fn scale(&self, k: i32) -> Self {
        MIndex(self.0.iter().map(|x| x * k).collect())
    }

    /// All nonnegative multi-indices of length `n` with `|m| = d`, in lex order.
    pub fn of_degree(n: usize, d: i32) -> Vec<MIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn rec(i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<MIndex>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(MIndex::from_slice(cur));
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(MIndex::zeros(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All `r` with `-radius <= r_i <= radius`, in lex order.
    pub fn box_range(n: usize, radius: i32) -> Vec<MIndex> {
        let mut out = vec![MIndex::zeros(0)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
            for m in &out {
                for k in -radius..=radius {
                    let mut v = m.0.clone();
                    v.push(k);
                    next.push(MIndex(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn max_abs_entry(&self) -> i32 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Index<usize> for MIndex {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl Add for &MIndex {
    type Output = MIndex;
    fn add(self, rhs: &MIndex) -> MIndex {
        debug_assert_eq!(self.n(), rhs.n());
        MIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MIndex {
    type Output = MIndex;
    fn sub(self, rhs: &MIndex) -> MIndex {
        debug_assert_eq!(self.n(), rhs.n());
        MIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for MIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl serde::Serialize for MIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for MIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        Ok(MIndex::from_slice(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_enumeration_counts() {
        // C(d + n - 1, n - 1)
        assert_eq!(MIndex::of_degree(2, 3).len(), 4);
        assert_eq!(MIndex::of_degree(3, 2).len(), 6);
        assert_eq!(MIndex::of_degree(1, 0), vec![MIndex::zeros(1)]);
    }

    #[test]
    fn box_size() {
        assert_eq!(MIndex::box_range(2, 2).len(), 25);
    }

    #[test]
    fn negative_rejected() {
        assert!(MIndex::nonneg(&[1, -1]).is_err());
        assert_eq!(MIndex::nonneg(&[2, 1]).unwrap().abs(), 3);
    }
}
