//! A finite window `r in [-R, R]^n` of the induced weight module
//! `G_1(V) = C[d^{+-1}] (x) V`, with `d^r (x) V` of weight `alpha - r`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::centralizer::ZKind;
use crate::error::{Error, Result};
use crate::kernel::{MIndex, Matrix, Scalar, SparseCombo};
use crate::pbw::decompose::{decompose_BH, BHDecomposition};
use crate::pbw::{self, UElem};
use crate::witt::{self, WittElem, WittTerm};

use super::hrep::HRep;

/// Operators with an explicit action table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WinOp {
    H(usize),
    D(usize),
    /// `t_i d_j`.
    T(usize, usize),
    /// `t_i t_j d_j`.
    TT(usize, usize),
    /// `t_i E_n = sum_j t_i t_j d_j`.
    TE(usize),
}

impl fmt::Display for WinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WinOp::H(k) => write!(f, "h{}", k + 1),
            WinOp::D(k) => write!(f, "d{}", k + 1),
            WinOp::T(i, j) => write!(f, "t{}*d{}", i + 1, j + 1),
            WinOp::TT(i, j) if i == j => write!(f, "t{}^2*d{}", i + 1, j + 1),
            WinOp::TT(i, j) => write!(f, "t{}*t{}*d{}", i + 1, j + 1, j + 1),
            WinOp::TE(i) => write!(f, "t{}*E", i + 1),
        }
    }
}

impl WinOp {
    /// The element of `W_n`.
    pub fn elem(&self, n: usize) -> WittElem {
        let term = |m: MIndex, j: usize| WittTerm { m, j }.elem();
        match *self {
            WinOp::H(k) => witt::h(n, k),
            WinOp::D(k) => witt::d(n, k),
            WinOp::T(i, j) => term(MIndex::unit(n, i), j),
            WinOp::TT(i, j) => term(MIndex::unit(n, i).shift(j, 1), j),
            WinOp::TE(i) => (0..n).fold(WittElem::zero(), |acc, j| acc.add(&WinOp::TT(i, j).elem(n))),
        }
    }

    /// Every operator of the table except `t_i E_n`.
    pub fn table(n: usize) -> Vec<WinOp> {
        let mut out = Vec::new();
        for k in 0..n {
            out.push(WinOp::H(k));
            out.push(WinOp::D(k));
        }
        for i in 0..n {
            for j in 0..n {
                out.push(WinOp::T(i, j));
                out.push(WinOp::TT(i, j));
            }
        }
        out
    }
}

/// Coordinates on `d^r (x) w_b`.
pub type WinVec = SparseCombo<(MIndex, usize)>;

pub struct WeightWindow<'a> {
    rho: &'a HRep,
    alpha: Vec<Scalar>,
    radius: i32,
    dec_cache: Mutex<HashMap<(WittTerm, MIndex), BHDecomposition>>,
}

impl<'a> WeightWindow<'a> {
    pub fn rho(&self) -> &HRep {
        self.rho
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn slices(&self) -> Vec<MIndex> {
        MIndex::box_range(self.n(), self.radius)
    }

    /// The weight `alpha - r` of the slice `r`.
    pub fn weight(&self, r: &MIndex) -> Vec<Scalar> {
        (0..self.n()).map(|k| &self.alpha[k] - &Scalar::int(r[k] as i64)).collect()
    }

    fn c(&self, k: usize, r: &MIndex, shift: i64) -> Scalar {
        &(&self.alpha[k] - &Scalar::int(r[k] as i64)) + &Scalar::int(shift)
    }

    /// Target slice and matrix of `op` on the slice `r`.
    pub fn block(&self, op: WinOp, r: &MIndex) -> Result<(MIndex, Matrix)> {
        let d = self.dim();
        let id = |c: &Scalar| Matrix::scalar(d, c);
        let pair = |i: usize, j: usize| -> Matrix {
            if i == j {
                Matrix::zeros(d, d)
            } else {
                self.rho.z(ZKind::Pair { i, j }).clone()
            }
        };
        Ok(match op {
            WinOp::H(k) => (r.clone(), id(&self.c(k, r, 0))),
            WinOp::D(k) => (r.shift(k, 1), Matrix::identity(d)),
            WinOp::T(i, j) => {
                let target = r.shift(j, 1).shift(i, -1);
                let m = pair(i, j).add(&id(&self.c(i, r, 1 - (i == j) as i64)))?;
                (target, m)
            }
            WinOp::TT(i, j) => {
                let inner = pair(i, j).add(&id(&self.c(i, r, 1)))?;
                let m = self
                    .rho
                    .z(ZKind::Triple { i, l: j, j })
                    .add(&inner.scale(&self.c(j, r, 0)))?;
                (r.shift(i, -1), m)
            }
            WinOp::TE(i) => {
                let mut m = Matrix::zeros(d, d);
                for j in 0..self.n() {
                    m = m.add(&self.block(WinOp::TT(i, j), r)?.1)?;
                }
                (r.shift(i, -1), m)
            }
        })
    }

    pub fn apply_op(&self, op: WinOp, v: &WinVec) -> Result<WinVec> {
        let mut out = WinVec::zero();
        for ((r, b), c) in v {
            let (target, m) = self.block(op, r)?;
            for row in 0..self.dim() {
                let a = &m[(row, *b)];
                if !a.is_zero() {
                    out.add_term((target.clone(), row), c * a);
                }
            }
        }
        Ok(out)
    }

    fn decomposition(&self, y: &WittTerm, r: &MIndex) -> Result<BHDecomposition> {
        let key = (y.clone(), r.clone());
        if let Some(d) = self.dec_cache.lock().expect("cache").get(&key) {
            return Ok(d.clone());
        }
        let u = pbw::normal_form(&[pbw::gen(y), pbw::d_pow(r.clone())])?;
        let dec = decompose_BH(&u, y.degree().max(0) as u32)?;
        self.dec_cache.lock().expect("cache").insert(key, dec.clone());
        Ok(dec)
    }

    /// `t^m d_j` on the window, by writing `(t^m d_j) d^r` as a combination of
    /// `X h^a d^s` and letting `X` act through the module and `h` by `alpha - s`.
    pub fn apply_term(&self, y: &WittTerm, v: &WinVec) -> Result<WinVec> {
        let mut out = WinVec::zero();
        for ((r, b), c) in v {
            for (key, coef) in &self.decomposition(y, r)? {
                let mut s = coef * c;
                for k in 0..self.n() {
                    s = &s * &self.c(k, &key.d, 0).pow(key.h[k] as i64)?;
                }
                if s.is_zero() {
                    continue;
                }
                let m = self.rho.x_monomial_matrix(&key.x)?;
                for row in 0..self.dim() {
                    let a = &m[(row, *b)];
                    if !a.is_zero() {
                        out.add_term((key.d.clone(), row), &s * a);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply_witt(&self, x: &WittElem, v: &WinVec) -> Result<WinVec> {
        let mut out = WinVec::zero();
        for (y, c) in x {
            out.add_scaled(&self.apply_term(y, v)?, c);
        }
        Ok(out)
    }

    fn table_op(y: &WittTerm) -> Option<WinOp> {
        let n = y.n();
        if y.m.is_zero() {
            return Some(WinOp::D(y.j));
        }
        let nz: Vec<usize> = (0..n).filter(|&i| y.m[i] != 0).collect();
        match (y.degree(), nz.as_slice()) {
            (1, [i]) if *i == y.j => Some(WinOp::H(*i)),
            (1, [i]) => Some(WinOp::T(*i, y.j)),
            (2, [i]) if *i == y.j => Some(WinOp::TT(*i, *i)),
            (2, [a, b]) if *b == y.j => Some(WinOp::TT(*a, *b)),
            (2, [a, b]) if *a == y.j => Some(WinOp::TT(*b, *a)),
            _ => None,
        }
    }

    /// An element of the localized enveloping algebra: `d^s` shifts first,
    /// then letters right to left, each through the table when it has an entry.
    pub fn apply_u(&self, u: &UElem, v: &WinVec) -> Result<WinVec> {
        let mut out = WinVec::zero();
        for (mono, c) in u {
            let s = mono.d_exp();
            let mut cur: WinVec = v.iter().map(|((r, b), x)| ((r + s, *b), x.clone())).collect();
            for (y, e) in mono.word().iter().rev() {
                for _ in 0..*e {
                    cur = match Self::table_op(y) {
                        Some(op) => self.apply_op(op, &cur)?,
                        None => self.apply_term(y, &cur)?,
                    };
                }
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }
}

/// Builds the window of radius `radius` around `alpha`.
pub fn induce_g1<'a>(rho: &'a HRep, alpha: Vec<Scalar>, radius: i32) -> Result<WeightWindow<'a>> {
    if radius < 1 {
        return Err(Error::pre("window radius must be at least 1"));
    }
    if alpha.len() != rho.n() {
        return Err(Error::DimensionMismatch {
            expected: rho.n(),
            found: alpha.len(),
        });
    }
    Ok(WeightWindow {
        rho,
        alpha,
        radius,
        dec_cache: Mutex::new(HashMap::new()),
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct AxiomFailure {
    pub x: String,
    pub y: String,
    pub slice: String,
    pub basis: usize,
}

/// `[x, y] v = x (y v) - y (x v)` for every pair of table operators on every
/// basis vector of the given slices, with `[x, y]` acting through
/// [`WeightWindow::apply_witt`].
pub fn check_module_axioms(win: &WeightWindow<'_>, slices: &[MIndex]) -> Result<Vec<AxiomFailure>> {
    let n = win.n();
    let ops = WinOp::table(n);
    let mut failures = Vec::new();
    for x in &ops {
        for y in &ops {
            let br = witt::bracket(&x.elem(n), &y.elem(n))?;
            for r in slices {
                for b in 0..win.dim() {
                    let v = WinVec::basis((r.clone(), b));
                    let lhs = win.apply_witt(&br, &v)?;
                    let xy = win.apply_op(*x, &win.apply_op(*y, &v)?)?;
                    let yx = win.apply_op(*y, &win.apply_op(*x, &v)?)?;
                    if lhs != xy.sub(&yx) {
                        failures.push(AxiomFailure {
                            x: x.to_string(),
                            y: y.to_string(),
                            slice: r.to_string(),
                            basis: b,
                        });
                    }
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal::hrep::make_hrep;
    use crate::glrep::exterior_power;

    fn natural() -> HRep {
        make_hrep(exterior_power(2, 1).unwrap()).unwrap()
    }

    fn alpha() -> Vec<Scalar> {
        vec![Scalar::param(0), Scalar::param(1)]
    }

    #[test]
    fn h_and_d_blocks() {
        let rho = natural();
        let win = induce_g1(&rho, alpha(), 1).unwrap();
        let r0 = MIndex::zeros(2);
        let (t, m) = win.block(WinOp::H(0), &r0).unwrap();
        assert_eq!(t, r0);
        assert_eq!(m, Matrix::scalar(2, &Scalar::param(0)));
        let (t, m) = win.block(WinOp::D(1), &r0).unwrap();
        assert_eq!(t, MIndex::unit(2, 1));
        assert_eq!(m, Matrix::identity(2));
    }

    #[test]
    fn mixed_block_on_natural() {
        let rho = natural();
        let v = rho.glrep().clone();
        let win = induce_g1(&rho, alpha(), 1).unwrap();
        let (t, m) = win.block(WinOp::T(0, 1), &MIndex::zeros(2)).unwrap();
        assert_eq!(t, MIndex::from_slice(&[-1, 1]));
        let a1 = &Scalar::param(0) + &Scalar::one();
        let want = v.e(0, 1).sub(v.e(0, 0)).unwrap().add(&Matrix::scalar(2, &a1)).unwrap();
        assert_eq!(m, want);
    }

    #[test]
    fn table_matches_decomposition() {
        let rho = natural();
        let win = induce_g1(&rho, alpha(), 1).unwrap();
        for op in WinOp::table(2) {
            for r in win.slices() {
                for b in 0..2 {
                    let v = WinVec::basis((r.clone(), b));
                    assert_eq!(win.apply_op(op, &v).unwrap(), win.apply_witt(&op.elem(2), &v).unwrap(), "{} at {}", op, r);
                }
            }
        }
    }

    #[test]
    fn axioms_hold() {
        let rho = natural();
        let win = induce_g1(&rho, alpha(), 1).unwrap();
        let f = check_module_axioms(&win, &[MIndex::zeros(2), MIndex::from_slice(&[1, -1])]).unwrap();
        assert!(f.is_empty(), "{:?}", f);
    }
}
