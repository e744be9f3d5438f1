//! Coordinates of an element of the localized enveloping algebra in the basis
//! `X-monomial * h^r * d^s`, by elimination against leading terms.

use std::fmt;

use crate::centralizer::{fmt_xmono, x_monomial_elem, XMonomial};
use crate::error::{Error, Result};
use crate::kernel::combo::fmt_combo;
use crate::kernel::{MIndex, SparseCombo};
use crate::pbw::{self, PBWMonomial, UElem};
use crate::witt::WittTerm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BHKey {
    pub x: XMonomial,
    pub h: MIndex,
    pub d: MIndex,
}

impl BHKey {
    pub fn is_one(&self) -> bool {
        self.x.is_empty() && self.h.is_zero() && self.d.is_zero()
    }

    /// The basis element `X-monomial * h^r * d^s` in normal form.
    pub fn elem(&self) -> Result<UElem> {
        let n = self.h.n();
        let mut parts = vec![x_monomial_elem(n, &self.x)?];
        for i in 0..n {
            for _ in 0..self.h[i] {
                parts.push(pbw::h(n, i));
            }
        }
        parts.push(pbw::d_pow(self.d.clone()));
        pbw::normal_form(&parts)
    }
}

impl fmt::Display for BHKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.x.is_empty() {
            parts.push(fmt_xmono(&self.x));
        }
        let mut hs: Vec<(WittTerm, u32)> = (0..self.h.n())
            .filter(|&i| self.h[i] > 0)
            .map(|i| (WittTerm::h(self.h.n(), i), self.h[i] as u32))
            .collect();
        hs.sort();
        let mono = PBWMonomial::from_parts(hs, self.d.clone());
        match mono {
            Ok(m) if !m.is_one() => parts.push(m.to_string()),
            Ok(_) => {}
            Err(_) => parts.push(format!("h^{}*d^{}", self.h, self.d)),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

pub type BHDecomposition = SparseCombo<BHKey>;

/// Display adapter for [`BHDecomposition`].
pub struct ShowBH<'a>(pub &'a BHDecomposition);

impl fmt::Display for ShowBH<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(self.0, f, |k, f| write!(f, "{}", k), BHKey::is_one)
    }
}

/// The basis key whose leading monomial is `mono`.
fn key_for(mono: &PBWMonomial) -> BHKey {
    let n = mono.n();
    let mut x = Vec::new();
    let mut h = MIndex::zeros(n);
    let mut d = mono.d_exp().clone();
    for (t, e) in mono.word() {
        if t.is_h() {
            h = h.shift(t.j, *e as i32);
        } else {
            x.push((t.clone(), *e));
            let shift = &t.m - &MIndex::unit(n, t.j);
            d = &d - &shift.scale(*e as i32);
        }
    }
    BHKey { x, h, d }
}

/// Writes `u` in the basis `X-monomial * h^r * d^s`. Elimination is refused
/// when a leading term needs an `X`-monomial of weighted degree above
/// `degree_bound`.
#[allow(non_snake_case)]
pub fn decompose_BH(u: &UElem, degree_bound: u32) -> Result<BHDecomposition> {
    let mut rem = u.clone();
    let mut out = BHDecomposition::zero();
    while let Some((mono, c)) = rem
        .iter()
        .max_by(|(a, _), (b, _)| (a.ysize(), a.hdeg(), *a).cmp(&(b.ysize(), b.hdeg(), *b)))
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        if mono.ysize() > degree_bound {
            return Err(Error::DegreeBoundExceeded {
                bound: degree_bound as usize,
                what: format!("leading term {} needs X-degree {}", mono, mono.ysize()),
            });
        }
        let key = key_for(&mono);
        let basis = key.elem()?;
        rem.add_scaled(&basis, &-&c);
        if !rem.coeff(&mono).is_zero() {
            return Err(Error::verify(format!("elimination did not remove {}", mono)));
        }
        out.add_term(key, c);
    }
    Ok(out)
}

/// Sums the basis elements back into normal form.
pub fn recombine(dec: &BHDecomposition) -> Result<UElem> {
    let mut out = UElem::zero();
    for (k, c) in dec {
        out.add_scaled(&k.elem()?, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::make_z;
    use crate::centralizer::ZKind;
    use crate::kernel::Scalar;

    fn t(m: &[i32], j: usize) -> UElem {
        pbw::gen(&WittTerm::new(MIndex::from_slice(m), j).unwrap())
    }

    #[test]
    fn t1_d2() {
        let dec = decompose_BH(&t(&[1, 0], 1), 3).unwrap();
        let s = MIndex::from_slice(&[-1, 1]);
        let x = vec![(WittTerm::new(MIndex::from_slice(&[1, 0]), 1).unwrap(), 1)];
        let mut expect = BHDecomposition::zero();
        expect.add_term(
            BHKey {
                x,
                h: MIndex::zeros(2),
                d: s.clone(),
            },
            Scalar::one(),
        );
        expect.add_term(
            BHKey {
                x: vec![],
                h: MIndex::unit(2, 0),
                d: s,
            },
            Scalar::one(),
        );
        assert_eq!(dec, expect);
        assert_eq!(recombine(&dec).unwrap(), t(&[1, 0], 1));
    }

    #[test]
    fn h_is_pure_b() {
        let dec = decompose_BH(&pbw::h(2, 0), 3).unwrap();
        assert_eq!(dec.len(), 1);
        assert!(dec.keys().next().unwrap().x.is_empty());
    }

    #[test]
    fn t1_squared() {
        let u = t(&[2], 0);
        let dec = decompose_BH(&u, 3).unwrap();
        let z = make_z(1, ZKind::Triple { i: 0, l: 0, j: 0 }).unwrap().elem;
        let dinv = pbw::d_pow(MIndex::from_slice(&[-1]));
        let h = pbw::h(1, 0);
        let expect = pbw::normal_form(&[z, dinv.clone()])
            .unwrap()
            .add(&pbw::normal_form(&[h.clone(), h.clone(), dinv.clone()]).unwrap())
            .sub(&pbw::normal_form(&[h, dinv]).unwrap());
        assert_eq!(expect, u);
        assert_eq!(dec.len(), 3);
        assert_eq!(recombine(&dec).unwrap(), u);
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(
            decompose_BH(&t(&[3, 0], 0), 2),
            Err(Error::DegreeBoundExceeded { .. })
        ));
    }
}
