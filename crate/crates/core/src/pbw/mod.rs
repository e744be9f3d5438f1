//! The enveloping algebra `U(W_n)` localized at the `d_i`, in PBW normal form.
//!
//! A normal monomial is an increasing word in the generators `t^m d_j` with
//! `|m| >= 1`, followed by `d^s` with `s` in `Z^n`.

pub mod decompose;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::combo::fmt_combo;
use crate::kernel::{MIndex, Scalar, SparseCombo};
use crate::witt::{bracket_terms, fmt_tmono, WittElem, WittTerm};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PBWMonomial {
    word: Vec<(WittTerm, u32)>,
    d: MIndex,
}

impl PBWMonomial {
    pub fn one(n: usize) -> Self {
        PBWMonomial {
            word: Vec::new(),
            d: MIndex::zeros(n),
        }
    }

    pub fn d_pow(s: MIndex) -> Self {
        PBWMonomial { word: Vec::new(), d: s }
    }

    /// Builds a monomial from an arbitrary word, checking normality.
    pub fn from_parts(word: Vec<(WittTerm, u32)>, d: MIndex) -> Result<Self> {
        for w in word.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::pre("word is not strictly increasing"));
            }
        }
        for (t, e) in &word {
            if t.is_d() || *e == 0 || t.n() != d.n() {
                return Err(Error::pre(format!("invalid letter {}^{}", t, e)));
            }
        }
        Ok(PBWMonomial { word, d })
    }

    pub fn n(&self) -> usize {
        self.d.n()
    }

    pub fn word(&self) -> &[(WittTerm, u32)] {
        &self.word
    }

    pub fn d_exp(&self) -> &MIndex {
        &self.d
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty() && self.d.is_zero()
    }

    /// Number of letters counted with multiplicity.
    pub fn letter_count(&self) -> u32 {
        self.word.iter().map(|(_, e)| e).sum()
    }

    /// `sum |m| * e` over the letters other than the `h_i`.
    pub fn ysize(&self) -> u32 {
        self.word
            .iter()
            .filter(|(t, _)| !t.is_h())
            .map(|(t, e)| t.degree() as u32 * e)
            .sum()
    }

    /// Total exponent of the `h_i` letters.
    pub fn hdeg(&self) -> u32 {
        self.word.iter().filter(|(t, _)| t.is_h()).map(|(_, e)| e).sum()
    }

    pub fn has_negative_d(&self) -> bool {
        !self.d.is_nonneg()
    }

    /// Weight under `ad h_k`.
    pub fn weight(&self, k: usize) -> i32 {
        self.word.iter().map(|(t, e)| t.weight(k) * *e as i32).sum::<i32>() - self.d[k]
    }

    fn with_d(&self, d: MIndex) -> Self {
        PBWMonomial {
            word: self.word.clone(),
            d,
        }
    }

    /// Splits off one copy of the first letter.
    fn pop_first(&self) -> Option<(WittTerm, PBWMonomial)> {
        let (t, e) = self.word.first()?.clone();
        let mut rest = self.clone();
        if e == 1 {
            rest.word.remove(0);
        } else {
            rest.word[0].1 -= 1;
        }
        Some((t, rest))
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            Ok(())
        };
        for (t, e) in &self.word {
            sep(f)?;
            if t.is_h() {
                write!(f, "h{}", t.j + 1)?;
            } else {
                write!(f, "(")?;
                fmt_tmono(&t.m, f)?;
                write!(f, "*d{})", t.j + 1)?;
            }
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        for (i, &s) in self.d.entries().iter().enumerate() {
            if s == 0 {
                continue;
            }
            sep(f)?;
            write!(f, "d{}", i + 1)?;
            if s != 1 {
                write!(f, "^{}", s)?;
            }
        }
        Ok(())
    }
}

/// An element of the localized enveloping algebra in normal form.
pub type UElem = SparseCombo<PBWMonomial>;

/// Display adapter for [`UElem`].
pub struct ShowU<'a>(pub &'a UElem);

impl fmt::Display for ShowU<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(self.0, f, |m, f| write!(f, "{}", m), PBWMonomial::is_one)
    }
}

pub fn scalar(n: usize, c: Scalar) -> UElem {
    UElem::term(PBWMonomial::one(n), c)
}

pub fn one(n: usize) -> UElem {
    UElem::basis(PBWMonomial::one(n))
}

/// A single generator `t^m d_j`, placed in the word or the `d` part.
pub fn gen(t: &WittTerm) -> UElem {
    if t.is_d() {
        UElem::basis(PBWMonomial::d_pow(MIndex::unit(t.n(), t.j)))
    } else {
        UElem::basis(PBWMonomial {
            word: vec![(t.clone(), 1)],
            d: MIndex::zeros(t.n()),
        })
    }
}

pub fn from_witt(x: &WittElem) -> UElem {
    x.map_linear(gen)
}

pub fn d_pow(s: MIndex) -> UElem {
    UElem::basis(PBWMonomial::d_pow(s))
}

pub fn h(n: usize, i: usize) -> UElem {
    gen(&WittTerm::h(n, i))
}

pub fn d(n: usize, i: usize) -> UElem {
    d_pow(MIndex::unit(n, i))
}

/// Generalized binomial coefficient `s (s-1) ... (s-k+1) / k!` for any integer `s`.
fn binom(s: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= s - i;
        den *= i + 1;
    }
    num / den
}

fn falling(m: i32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k as i32 {
        r *= m - i;
    }
    r
}

type GenKey = (WittTerm, PBWMonomial);
type DKey = (usize, i32, PBWMonomial);

thread_local! {
    static GEN_MEMO: RefCell<HashMap<GenKey, UElem>> = RefCell::new(HashMap::new());
    static D_MEMO: RefCell<HashMap<DKey, UElem>> = RefCell::new(HashMap::new());
}

/// Drops this thread's straightening caches.
pub fn clear_cache() {
    GEN_MEMO.with(|m| m.borrow_mut().clear());
    D_MEMO.with(|m| m.borrow_mut().clear());
}

fn each_term(u: &UElem, mut f: impl FnMut(&PBWMonomial) -> UElem) -> UElem {
    u.map_linear(|m| f(m))
}

/// `g * m` for a letter `g` (`|m_g| >= 1`) and a normal monomial.
fn left_mul_gen(g: &WittTerm, m: &PBWMonomial) -> UElem {
    match m.word.first() {
        None => {
            let mut r = m.clone();
            r.word.push((g.clone(), 1));
            return UElem::basis(r);
        }
        Some((y, _)) if g < y => {
            let mut r = m.clone();
            r.word.insert(0, (g.clone(), 1));
            return UElem::basis(r);
        }
        Some((y, _)) if g == y => {
            let mut r = m.clone();
            r.word[0].1 += 1;
            return UElem::basis(r);
        }
        _ => {}
    }
    let key = (g.clone(), m.clone());
    if let Some(hit) = GEN_MEMO.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    // g y M' = y (g M') + [g, y] M'
    let (y, rest) = m.pop_first().expect("nonempty word");
    let inner = left_mul_gen(g, &rest);
    let mut out = each_term(&inner, |t| left_mul_gen(&y, t));
    for (b, c) in &bracket_terms(g, &y) {
        out.add_scaled(&left_mul_gen(b, &rest), c);
    }
    GEN_MEMO.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// `d_i^s * m` for a normal monomial, using
/// `d_i^s y = sum_k C(s, k) (ad d_i)^k(y) d_i^{s-k}`.
fn left_mul_d(i: usize, s: i32, m: &PBWMonomial) -> UElem {
    if s == 0 {
        return UElem::basis(m.clone());
    }
    if m.word.is_empty() {
        return UElem::basis(m.with_d(m.d.shift(i, s)));
    }
    let key = (i, s, m.clone());
    if let Some(hit) = D_MEMO.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let (y, rest) = m.pop_first().expect("nonempty word");
    let mi = y.m[i].max(0) as u32;
    let kmax = if s > 0 { mi.min(s as u32) } else { mi };
    let mut out = UElem::zero();
    for k in 0..=kmax {
        let c = binom(s as i64, k) * falling(y.m[i], k);
        if c.is_zero() {
            continue;
        }
        let c = Scalar::big(c);
        let inner = left_mul_d(i, s - k as i32, &rest);
        let y2 = WittTerm {
            m: y.m.shift(i, -(k as i32)),
            j: y.j,
        };
        let part = if y2.is_d() {
            each_term(&inner, |t| left_mul_d(y2.j, 1, t))
        } else {
            each_term(&inner, |t| left_mul_gen(&y2, t))
        };
        out.add_scaled(&part, &c);
    }
    D_MEMO.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

fn left_mul_dvec(s: &MIndex, m: &PBWMonomial) -> UElem {
    let mut cur = UElem::basis(m.clone());
    for i in (0..s.n()).rev() {
        if s[i] != 0 {
            cur = each_term(&cur, |t| left_mul_d(i, s[i], t));
        }
    }
    cur
}

/// Product of two normal monomials.
pub fn mono_mul(a: &PBWMonomial, b: &PBWMonomial) -> UElem {
    let mut cur = left_mul_dvec(&a.d, b);
    for (g, e) in a.word.iter().rev() {
        for _ in 0..*e {
            cur = each_term(&cur, |t| left_mul_gen(g, t));
        }
    }
    cur
}

pub fn mul(x: &UElem, y: &UElem) -> UElem {
    let mut out = UElem::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&mono_mul(a, b), &(ca * cb));
        }
    }
    out
}

/// The normal form of the product of the given factors, left to right.
pub fn normal_form(factors: &[UElem]) -> Result<UElem> {
    let Some((first, rest)) = factors.split_first() else {
        return Err(Error::pre("empty product"));
    };
    let n = first.keys().next().map(PBWMonomial::n);
    for f in factors {
        for m in f.keys() {
            if Some(m.n()) != n {
                return Err(Error::DimensionMismatch {
                    expected: n.unwrap_or(0),
                    found: m.n(),
                });
            }
        }
    }
    Ok(rest.iter().fold(first.clone(), |acc, f| mul(&acc, f)))
}

pub fn commutator(x: &UElem, y: &UElem) -> UElem {
    mul(x, y).sub(&mul(y, x))
}

pub fn pow(x: &UElem, k: u32, n: usize) -> UElem {
    let mut r = one(n);
    for _ in 0..k {
        r = mul(&r, x);
    }
    r
}

/// The first nonzero commutator with a generator of the centralizer's defining set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerWitness {
    pub against: String,
    pub commutator: UElem,
}

/// Checks `[x, d_i] = [x, h_i] = 0` for all `i`.
pub fn centralizes(x: &UElem, n: usize) -> std::result::Result<(), CentralizerWitness> {
    for i in 0..n {
        for (name, g) in [(format!("d{}", i + 1), d(n, i)), (format!("h{}", i + 1), h(n, i))] {
            let c = commutator(x, &g);
            if !c.is_zero() {
                return Err(CentralizerWitness {
                    against: name,
                    commutator: c,
                });
            }
        }
    }
    Ok(())
}

/// True when some monomial carries a negative power of a `d_i`.
pub fn is_localized(x: &UElem) -> bool {
    x.keys().any(PBWMonomial::has_negative_d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt;

    fn t(m: &[i32], j: usize) -> UElem {
        gen(&WittTerm::new(MIndex::from_slice(m), j).unwrap())
    }

    fn dinv(n: usize, i: usize) -> UElem {
        d_pow(MIndex::unit(n, i).scale(-1))
    }

    #[test]
    fn single_swap() {
        let lhs = normal_form(&[d(1, 0), h(1, 0)]).unwrap();
        let rhs = mul(&h(1, 0), &d(1, 0)).add(&d(1, 0));
        assert_eq!(lhs, rhs);
        assert_eq!(ShowU(&lhs).to_string(), "h1*d1 + d1");
    }

    #[test]
    fn exponent_cancellation() {
        let x = normal_form(&[h(1, 0), dinv(1, 0), d(1, 0)]).unwrap();
        assert_eq!(x, h(1, 0));
    }

    #[test]
    fn inverse_expansion() {
        let x = normal_form(&[dinv(1, 0), h(1, 0)]).unwrap();
        let expect = mul(&h(1, 0), &dinv(1, 0)).sub(&dinv(1, 0));
        assert_eq!(x, expect);
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator(&d(1, 0), &h(1, 0)), d(1, 0));
        assert!(commutator(&t(&[2, 1], 0), &t(&[2, 1], 0)).is_zero());
        assert_eq!(commutator(&h(1, 0), &dinv(1, 0)), dinv(1, 0));
    }

    #[test]
    fn degree_one_commutator_is_bracket() {
        let a = WittTerm::new(MIndex::from_slice(&[1, 2]), 0).unwrap();
        let b = WittTerm::new(MIndex::from_slice(&[2, 0]), 1).unwrap();
        let br = witt::bracket_terms(&a, &b);
        assert_eq!(commutator(&gen(&a), &gen(&b)), from_witt(&br));
    }

    #[test]
    fn centralizer_witness() {
        let x = t(&[1, 0], 1);
        let w = centralizes(&x, 2).unwrap_err();
        assert_eq!(w.against, "d1");
        assert_eq!(w.commutator, d(2, 1).neg());
        assert!(centralizes(&scalar(2, Scalar::int(5)), 2).is_ok());
    }

    #[test]
    fn localization_consistency() {
        let x = mul(&t(&[2, 1], 1), &t(&[0, 3], 0));
        let y = normal_form(&[d(2, 0), dinv(2, 0), x.clone()]).unwrap();
        assert_eq!(y, x);
        let z = normal_form(&[dinv(2, 1), d(2, 1), x.clone()]).unwrap();
        assert_eq!(z, x);
    }
}
