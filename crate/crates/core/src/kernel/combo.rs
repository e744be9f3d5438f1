use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;

/// A finite linear combination `sum c_b b` with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparseCombo<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for SparseCombo<B> {
    fn default() -> Self {
        SparseCombo {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> SparseCombo<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut s = Self::zero();
        s.add_term(b, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, B, Scalar> {
        self.terms.keys()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest basis element and its coefficient.
    pub fn lead(&self) -> Option<(&B, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &Scalar::one());
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &Scalar::int(-1));
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseCombo {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> SparseCombo<C>) -> SparseCombo<C> {
        let mut r = SparseCombo::zero();
        for (b, c) in &self.terms {
            r.add_scaled(&f(b), c);
        }
        r
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        SparseCombo {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| keep(b))
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for SparseCombo<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (b, c) in iter {
            s.add_term(b, c);
        }
        s
    }
}

impl<'a, B: Ord> IntoIterator for &'a SparseCombo<B> {
    type Item = (&'a B, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// Dense coordinates of `vecs` over the union of their supports, one column
/// per vector, with the row keys in increasing order.
pub fn to_columns<B: Ord + Clone>(vecs: &[SparseCombo<B>]) -> (Matrix, Vec<B>) {
    let keys: Vec<B> = vecs
        .iter()
        .flat_map(|v| v.keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&B, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = Matrix::zeros(keys.len(), vecs.len());
    for (c, v) in vecs.iter().enumerate() {
        for (k, x) in v {
            m[(index[k], c)] = x.clone();
        }
    }
    (m, keys)
}

/// `sum_i coeffs[i] * vecs[i]`.
pub fn combine<B: Ord + Clone>(vecs: &[SparseCombo<B>], coeffs: &[Scalar]) -> SparseCombo<B> {
    let mut out = SparseCombo::zero();
    for (v, c) in vecs.iter().zip(coeffs) {
        out.add_scaled(v, c);
    }
    out
}

/// Dimension of the span of `vecs`.
pub fn span_rank<B: Ord + Clone>(vecs: &[SparseCombo<B>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    to_columns(vecs).0.rank()
}

/// Writes `c1*b1 + c2*b2 - ...` from largest to smallest basis element,
/// omitting unit coefficients.
pub fn fmt_combo<B: Ord>(
    combo: &SparseCombo<B>,
    f: &mut fmt::Formatter<'_>,
    mut fmt_basis: impl FnMut(&B, &mut fmt::Formatter<'_>) -> fmt::Result,
    is_unit: impl Fn(&B) -> bool,
) -> fmt::Result {
    if combo.terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (b, c)) in combo.terms.iter().rev().enumerate() {
        let (neg, c) = match c.as_rational() {
            Some(q) if q < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
            _ => (false, c.clone()),
        };
        match (k, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if is_unit(b) {
            write!(f, "{}", c)?;
            continue;
        }
        if !c.is_one() {
            if c.needs_parens() {
                write!(f, "({})*", c)?;
            } else {
                write!(f, "{}*", c)?;
            }
        }
        fmt_basis(b, f)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_key() {
        let mut s = SparseCombo::basis(1u32);
        s.add_term(1, Scalar::int(-1));
        assert!(s.is_zero());
    }

    #[test]
    fn scale_by_zero_is_empty() {
        let s: SparseCombo<u32> = [(1, Scalar::int(2)), (3, Scalar::int(5))].into_iter().collect();
        assert_eq!(s.scale(&Scalar::zero()), SparseCombo::zero());
    }
}
