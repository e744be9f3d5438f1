//! The homomorphism `phi: U(W_n) -> D_n (x) U(gl_n)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::combo::fmt_combo;
use crate::kernel::{MIndex, Scalar, SparseCombo};
use crate::pbw::UElem;
use crate::witt::WittTerm;

/// Normally ordered Weyl monomial `t^t d^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DMono {
    pub t: MIndex,
    pub d: MIndex,
}

impl DMono {
    pub fn one(n: usize) -> Self {
        DMono {
            t: MIndex::zeros(n),
            d: MIndex::zeros(n),
        }
    }

    pub fn is_one(&self) -> bool {
        self.t.is_zero() && self.d.is_zero()
    }
}

impl fmt::Display for DMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, v) in [("t", &self.t), ("d", &self.d)] {
            for (i, &e) in v.entries().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("{}{}", sym, i + 1)),
                    _ => parts.push(format!("{}{}^{}", sym, i + 1, e)),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// PBW word in the `E_ij` (zero-based pairs), nondecreasing.
pub type GlWord = Vec<(usize, usize)>;

pub type PhiImage = SparseCombo<(DMono, GlWord)>;

/// Display adapter for [`PhiImage`].
pub struct ShowPhi<'a>(pub &'a PhiImage);

impl fmt::Display for ShowPhi<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(
            self.0,
            f,
            |(dm, gw), f| {
                write!(f, "{} (x) ", dm)?;
                if gw.is_empty() {
                    write!(f, "1")
                } else {
                    let s: Vec<String> = gw.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
                    write!(f, "{}", s.join("*"))
                }
            },
            |(dm, gw)| dm.is_one() && gw.is_empty(),
        )
    }
}

fn falling(m: i32, k: i32) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (m - i))
}

fn choose(b: i32, k: i32) -> BigInt {
    falling(b, k) / falling(k, k)
}

/// `(t^a d^b)(t^c d^e)` in normal order.
pub fn dmono_mul(x: &DMono, y: &DMono) -> SparseCombo<DMono> {
    let n = x.t.n();
    let mut out = SparseCombo::term(DMono::one(n), Scalar::one());
    for i in 0..n {
        let (b, c) = (x.d[i], y.t[i]);
        let mut next = SparseCombo::zero();
        for k in 0..=b.min(c) {
            let coef = Scalar::big(choose(b, k) * falling(c, k));
            for (m, v) in &out {
                let m: &DMono = m;
                let dm = DMono {
                    t: m.t.with(i, x.t[i] + c - k),
                    d: m.d.with(i, b - k + y.d[i]),
                };
                next.add_term(dm, v * &coef);
            }
        }
        out = next;
    }
    out
}

thread_local! {
    static GL_MEMO: RefCell<HashMap<GlWord, SparseCombo<GlWord>>> = RefCell::new(HashMap::new());
}

/// Straightens a word in the `E_ij` using `[E_ab, E_cd] = d_bc E_ad - d_da E_cb`.
pub fn gl_normal(word: &[(usize, usize)]) -> SparseCombo<GlWord> {
    let Some(p) = word.windows(2).position(|w| w[0] > w[1]) else {
        return SparseCombo::basis(word.to_vec());
    };
    if let Some(hit) = GL_MEMO.with(|m| m.borrow().get(word).cloned()) {
        return hit;
    }
    let (a, b) = word[p];
    let (c, d) = word[p + 1];
    let mut swapped = word.to_vec();
    swapped.swap(p, p + 1);
    let mut out = gl_normal(&swapped);
    let mut splice = |pair: (usize, usize), sign: i64| {
        let mut w = word[..p].to_vec();
        w.push(pair);
        w.extend_from_slice(&word[p + 2..]);
        out.add_scaled(&gl_normal(&w), &Scalar::int(sign));
    };
    if b == c {
        splice((a, d), 1);
    }
    if d == a {
        splice((c, b), -1);
    }
    GL_MEMO.with(|m| m.borrow_mut().insert(word.to_vec(), out.clone()));
    out
}

pub fn mul(x: &PhiImage, y: &PhiImage) -> PhiImage {
    let mut out = PhiImage::zero();
    for ((dx, gx), cx) in x {
        for ((dy, gy), cy) in y {
            let c = cx * cy;
            let ds = dmono_mul(dx, dy);
            let mut w = gx.clone();
            w.extend_from_slice(gy);
            let gs = gl_normal(&w);
            for (dm, a) in &ds {
                for (gw, b) in &gs {
                    out.add_term((dm.clone(), gw.clone()), &c * &(a * b));
                }
            }
        }
    }
    out
}

pub fn commutator(x: &PhiImage, y: &PhiImage) -> PhiImage {
    mul(x, y).sub(&mul(y, x))
}

pub fn one(n: usize) -> PhiImage {
    PhiImage::basis((DMono::one(n), Vec::new()))
}

/// `phi(t^m d_k) = t^m d_k (x) 1 + sum_i m_i t^{m-e_i} (x) E_ik`.
pub fn phi_gen(y: &WittTerm) -> PhiImage {
    let n = y.n();
    let mut out = PhiImage::basis((
        DMono {
            t: y.m.clone(),
            d: MIndex::unit(n, y.j),
        },
        Vec::new(),
    ));
    for i in 0..n {
        if y.m[i] > 0 {
            let dm = DMono {
                t: y.m.shift(i, -1),
                d: MIndex::zeros(n),
            };
            out.add_term((dm, vec![(i, y.j)]), Scalar::int(y.m[i] as i64));
        }
    }
    out
}

/// Extends [`phi_gen`] multiplicatively over the PBW monomials of `u`.
pub fn phi(u: &UElem, n: usize) -> Result<PhiImage> {
    let mut out = PhiImage::zero();
    for (mono, c) in u {
        if mono.has_negative_d() {
            return Err(Error::pre(format!("phi is undefined on the localized monomial {}", mono)));
        }
        let mut acc = one(n);
        for (y, e) in mono.word() {
            let g = phi_gen(y);
            for _ in 0..*e {
                acc = mul(&acc, &g);
            }
        }
        let d = PhiImage::basis((
            DMono {
                t: MIndex::zeros(n),
                d: mono.d_exp().clone(),
            },
            Vec::new(),
        ));
        out.add_scaled(&mul(&acc, &d), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw;

    fn t(m: &[i32], j: usize) -> WittTerm {
        WittTerm::new(MIndex::from_slice(m), j).unwrap()
    }

    #[test]
    fn derivative_maps_to_itself() {
        let img = phi(&pbw::d(2, 0), 2).unwrap();
        assert_eq!(img.len(), 1);
        let ((dm, gw), _) = img.iter().next().unwrap();
        assert_eq!(dm.d, MIndex::from_slice(&[1, 0]));
        assert!(gw.is_empty());
    }

    #[test]
    fn t1_d2() {
        let img = phi_gen(&t(&[1, 0], 1));
        assert_eq!(img.coeff(&(DMono::one(2), vec![(0, 1)])), Scalar::one());
        assert_eq!(img.len(), 2);
    }

    #[test]
    fn weyl_reorder() {
        let d1 = DMono {
            t: MIndex::zeros(1),
            d: MIndex::from_slice(&[2]),
        };
        let t2 = DMono {
            t: MIndex::from_slice(&[2]),
            d: MIndex::zeros(1),
        };
        // d^2 t^2 = t^2 d^2 + 4 t d + 2
        let p = dmono_mul(&d1, &t2);
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&DMono::one(1)), Scalar::int(2));
    }

    #[test]
    fn gl_relation() {
        let w = gl_normal(&[(1, 0), (0, 1)]);
        assert_eq!(w.coeff(&vec![(0, 1), (1, 0)]), Scalar::one());
        assert_eq!(w.coeff(&vec![(1, 1)]), Scalar::one());
        assert_eq!(w.coeff(&vec![(0, 0)]), Scalar::int(-1));
    }

    #[test]
    fn bracket_preserved() {
        let x = pbw::gen(&t(&[2, 0], 1));
        let y = pbw::d(2, 0);
        let lhs = phi(&pbw::commutator(&x, &y), 2).unwrap();
        let rhs = commutator(&phi(&x, 2).unwrap(), &phi(&y, 2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn localized_rejected() {
        assert!(phi(&pbw::d_pow(MIndex::from_slice(&[-1])), 1).is_err());
    }
}
