//! The universal Whittaker module `Q_1 = U(W_n) (x)_{U(Delta_n)} C_1`, stored
//! through `Q_1 = U(L_n) v_1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::centralizer::{x_monomial_elem, x_monomials};
use crate::error::{Error, Result};
use crate::kernel::combo::{span_rank, to_columns};
use crate::kernel::{MIndex, SparseCombo};
use crate::pbw::{self, PBWMonomial, UElem};
use crate::witt::WittTerm;

/// `sum c w v_1` with every `w` free of `d` factors.
pub type Q1Vec = UElem;

pub fn v1(n: usize) -> Q1Vec {
    pbw::one(n)
}

/// Replaces every right-hand `d^s` by 1.
pub fn absorb(u: &UElem) -> Q1Vec {
    let mut out = Q1Vec::zero();
    for (mono, c) in u {
        let stripped = PBWMonomial::from_parts(mono.word().to_vec(), MIndex::zeros(mono.n())).expect("normal word");
        out.add_term(stripped, c.clone());
    }
    out
}

pub fn q1_action(x: &UElem, w: &Q1Vec) -> Q1Vec {
    absorb(&pbw::mul(x, w))
}

/// Degree `sum |m| e` over all letters, the `h_i` counting 1.
pub fn q1_degree(mono: &PBWMonomial) -> u32 {
    mono.ysize() + mono.hdeg()
}

/// Weight `sum (|m| - 1) e`, the eigenvalue of `ad` of the Euler field.
pub fn q1_weight(mono: &PBWMonomial) -> i32 {
    mono.word().iter().map(|(t, e)| (t.degree() - 1) * *e as i32).sum()
}

/// `(d, N)`: top degree, and the largest weight among top-degree terms.
pub fn whittaker_degree(w: &Q1Vec) -> Option<(u32, i32)> {
    let d = w.keys().map(q1_degree).max()?;
    let top = w.keys().filter(|m| q1_degree(m) == d).map(q1_weight).max()?;
    Some((d, top))
}

pub fn is_whittaker(w: &Q1Vec, n: usize) -> bool {
    (0..n).all(|i| q1_action(&pbw::d(n, i), w) == *w)
}

/// `Theta(x)(v_1) = x v_1` for `x` in the centralizer.
pub fn theta_of(x: &UElem, n: usize) -> Result<Q1Vec> {
    if let Err(w) = pbw::centralizes(x, n) {
        return Err(Error::pre(format!(
            "element does not commute with {}",
            w.against
        )));
    }
    let out = absorb(x);
    if !is_whittaker(&out, n) {
        return Err(Error::verify("image is not a Whittaker vector"));
    }
    Ok(out)
}

/// The letters `t^m d_j` with `1 <= |m| <= max_degree`.
fn letters(n: usize, max_degree: u32) -> Vec<WittTerm> {
    let mut out = Vec::new();
    for d in 1..=max_degree as i32 {
        for m in MIndex::of_degree(n, d) {
            for j in 0..n {
                out.push(WittTerm { m: m.clone(), j });
            }
        }
    }
    out.sort();
    out
}

/// PBW monomials of `U(L_n)` of degree at most `max_degree`.
pub fn q1_monomials(n: usize, max_degree: u32) -> Vec<PBWMonomial> {
    fn go(ls: &[WittTerm], budget: u32, cur: &mut Vec<(WittTerm, u32)>, out: &mut Vec<Vec<(WittTerm, u32)>>) {
        let Some((first, rest)) = ls.split_first() else {
            out.push(cur.clone());
            return;
        };
        go(rest, budget, cur, out);
        let w = first.degree() as u32;
        let mut e = 1;
        while e * w <= budget {
            cur.push((first.clone(), e));
            go(rest, budget - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let ls = letters(n, max_degree);
    let mut words = Vec::new();
    go(&ls, max_degree, &mut Vec::new(), &mut words);
    let mut out: Vec<PBWMonomial> = words
        .into_iter()
        .map(|w| PBWMonomial::from_parts(w, MIndex::zeros(n)).expect("sorted letters"))
        .collect();
    out.sort_by(|a, b| (q1_degree(a), a).cmp(&(q1_degree(b), b)));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Q1Slice {
    pub degree: u32,
    /// Dimension of the Whittaker vectors of degree at most `degree`.
    pub kernel_dim: usize,
    /// Number of ordered `Y`-monomials of degree at most `degree`.
    pub y_monomials: usize,
    /// Every Whittaker vector found is a combination of `Y`-monomial images.
    pub spanned_by_y: bool,
}

fn slice(n: usize, d: u32) -> Result<Q1Slice> {
    let basis = q1_monomials(n, d);
    let mut images = Vec::new();
    for mono in &basis {
        let v = Q1Vec::basis(mono.clone());
        let mut stacked: SparseCombo<(usize, PBWMonomial)> = SparseCombo::zero();
        for i in 0..n {
            for (m, c) in &q1_action(&pbw::d(n, i), &v).sub(&v) {
                stacked.add_term((i, m.clone()), c.clone());
            }
        }
        images.push(stacked);
    }
    let kernel: Vec<Q1Vec> = if images.iter().all(|v| v.is_zero()) {
        basis.iter().map(|m| Q1Vec::basis(m.clone())).collect()
    } else {
        let basis_vecs: Vec<Q1Vec> = basis.iter().map(|m| Q1Vec::basis(m.clone())).collect();
        to_columns(&images)
            .0
            .nullspace()
            .iter()
            .map(|c| crate::kernel::combo::combine(&basis_vecs, c))
            .collect()
    };
    let ys: Vec<Q1Vec> = x_monomials(n, d)
        .iter()
        .map(|xm| x_monomial_elem(n, xm).map(|e| absorb(&e)))
        .collect::<Result<_>>()?;
    let rank_y = span_rank(&ys);
    let mut both = kernel.clone();
    both.extend(ys.iter().cloned());
    let spanned = rank_y == kernel.len() && span_rank(&both) == kernel.len();
    Ok(Q1Slice {
        degree: d,
        kernel_dim: kernel.len(),
        y_monomials: ys.len(),
        spanned_by_y: spanned,
    })
}

/// Whittaker dimensions of the degree filtration of `Q_1` for every degree up
/// to `max_degree`, against the count of ordered `Y`-monomials.
pub fn q1_whittaker_dimensions(n: usize, max_degree: u32) -> Result<Vec<Q1Slice>> {
    if n == 0 || n > 3 || max_degree > 6 {
        return Err(Error::pre(format!("degree bound {} is infeasible for n = {}", max_degree, n)));
    }
    (0..=max_degree).into_par_iter().map(|d| slice(n, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::{make_z, ZKind};

    #[test]
    fn derivative_absorbed() {
        let v = v1(1);
        assert_eq!(q1_action(&pbw::d(1, 0), &v), v);
        let h = absorb(&pbw::h(1, 0));
        assert_eq!(q1_action(&pbw::h(1, 0), &v), h);
        assert_eq!(q1_action(&pbw::d(1, 0), &h), h.add(&v));
    }

    #[test]
    fn theta_images() {
        assert_eq!(theta_of(&pbw::one(2), 2).unwrap(), v1(2));
        let z = make_z(2, ZKind::Pair { i: 0, j: 1 }).unwrap().elem;
        let img = theta_of(&z, 2).unwrap();
        assert!(!img.is_zero());
        let z1 = make_z(1, ZKind::Cubic { i: 0 }).unwrap().elem;
        let img = theta_of(&z1, 1).unwrap();
        assert_eq!(whittaker_degree(&img).unwrap().0, 3);
        assert!(theta_of(&pbw::h(1, 0), 1).is_err());
    }

    #[test]
    fn dimensions_n1() {
        let slices = q1_whittaker_dimensions(1, 4).unwrap();
        let dims: Vec<usize> = slices.iter().map(|s| s.kernel_dim).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5]);
        assert!(slices.iter().all(|s| s.spanned_by_y && s.y_monomials == s.kernel_dim));
    }
}
