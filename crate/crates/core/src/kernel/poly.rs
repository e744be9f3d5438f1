//! Multivariate polynomials over the rationals in the formal parameters
//! `a1, a2, ...`, with exact division and a recursive primitive-PRS gcd.
//!
//! These are the numerators and denominators of [`Scalar`](super::Scalar).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector of a parameter monomial. Trailing zeros are always trimmed
/// so that equal monomials have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(SmallVec<[u32; 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: usize) -> Self {
        let mut e: SmallVec<[u32; 4]> = SmallVec::from_elem(0, v + 1);
        e[v] = 1;
        Mono(e)
    }

    fn from_vec(mut e: SmallVec<[u32; 4]>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono(e)
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest variable index with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let len = self.0.len().max(other.0.len());
        let e = (0..len).map(|i| self.exp(i) + other.exp(i)).collect();
        Mono::from_vec(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &x) in other.0.iter().enumerate() {
            if e[i] < x {
                return None;
            }
            e[i] -= x;
        }
        Some(Mono::from_vec(e))
    }

    pub(crate) fn with_exp(&self, v: usize, k: u32) -> Mono {
        let mut e = self.0.clone();
        if e.len() <= v {
            e.resize(v + 1, 0);
        }
        e[v] = k;
        Mono::from_vec(e)
    }
}

// graded lexicographic
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::one(), c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::var(v), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Leading term under graded lex.
    pub fn lead(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Mono::max_var).max()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Mono, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(x, d)| (x.mul(m), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.lead()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((m, c)) = rem.lead() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v);
            out[k as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, v: usize) -> Poly {
        let k = self.degree_in(v);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                out.add_term(m.with_exp(v, 0), c.clone());
            }
        }
        out
    }

    fn shift_in(&self, v: usize, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.with_exp(v, m.exp(v) + k), c.clone());
        }
        r
    }

    /// Pseudo-remainder of `self` by `d` with respect to the variable `v`.
    fn prem(&self, d: &Poly, v: usize) -> Poly {
        let dd = d.degree_in(v);
        let lc = d.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let k = r.degree_in(v) - dd;
            let lr = r.lead_coeff_in(v);
            r = r.mul(&lc).sub(&d.mul(&lr).shift_in(v, k));
        }
        r
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, &c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        self.exact_div(&c).expect("content divides")
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let v = a.max_var().max(b.max_var()).expect("nonconstant");
        if a.degree_in(v) == 0 {
            return Poly::gcd(a, &b.content_in(v));
        }
        if b.degree_in(v) == 0 {
            return Poly::gcd(&a.content_in(v), b);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = Poly::gcd(&ca, &cb);
        let mut p = a.exact_div(&ca).expect("content divides");
        let mut q = b.exact_div(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.prem(&q, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                q = Poly::one();
                break;
            }
            p = q;
            q = r.primitive_in(v);
        }
        c.mul(&q.primitive_in(v)).monic()
    }

    /// Format with the parameter naming `a1, a2, ...`.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", abs)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", abs)?;
            }
            let mut firstv = true;
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                write!(f, "a{}", v + 1)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn a(v: usize) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        // a1^2 - 1 and a1 - 1
        let p = a(0).mul(&a(0)).sub(&Poly::one());
        let d = a(0).sub(&Poly::one());
        assert_eq!(Poly::gcd(&p, &d), d);
        assert_eq!(p.exact_div(&d).unwrap(), a(0).add(&Poly::one()));
    }

    #[test]
    fn gcd_multivariate() {
        // (a1 + a2)(a1 - 2 a2 + 1) and (a1 + a2)(a2^2 + 3)
        let common = a(0).add(&a(1));
        let x = common.mul(&a(0).sub(&a(1).scale(&q(2))).add(&Poly::one()));
        let y = common.mul(&a(1).mul(&a(1)).add(&Poly::constant(q(3))));
        assert_eq!(Poly::gcd(&x, &y), common.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let x = a(0).add(&Poly::one());
        let y = a(1).sub(&Poly::one());
        assert_eq!(Poly::gcd(&x, &y), Poly::one());
    }

    #[test]
    fn exact_div_detects_non_divisibility() {
        let x = a(0).mul(&a(0)).add(&Poly::one());
        let d = a(0).add(&Poly::one());
        assert!(x.exact_div(&d).is_none());
    }

    #[test]
    fn display() {
        let p = a(0).mul(&a(0)).sub(&a(1).scale(&BigRational::new(3.into(), 2.into())));
        assert_eq!(p.to_string(), "a1^2 - 3/2*a2");
    }
}
