//! Tensor modules `T(P, V)` with `W_n` acting through `phi`.

use std::fmt;

use crate::error::{Error, Result};
use crate::glrep::GlRep;
use crate::kernel::combo::fmt_combo;
use crate::kernel::{MIndex, Scalar, SparseCombo};
use crate::pbw::UElem;
use crate::weylmod::{DModule, DVec, WeylOp};
use crate::witt::WittTerm;

use super::phi::PhiImage;

/// Coordinates on `t^m (x) v_b`.
pub type TenVec = SparseCombo<(MIndex, usize)>;

#[derive(Clone, Debug)]
pub struct TensorModule {
    pub p: DModule,
    pub v: GlRep,
}

/// Display adapter for [`TenVec`].
pub struct ShowTen<'a>(pub &'a TenVec);

impl fmt::Display for ShowTen<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(self.0, f, |(m, b), f| write!(f, "t^{} (x) v{}", m, b + 1), |_| false)
    }
}

pub fn pure(p: &DVec, b: usize) -> TenVec {
    p.iter().map(|(m, c)| ((m.clone(), b), c.clone())).collect()
}

impl TensorModule {
    pub fn new(p: DModule, v: GlRep) -> Result<Self> {
        if p.n() != v.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                found: v.n(),
            });
        }
        Ok(TensorModule { p, v })
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    fn check(&self, w: &TenVec) -> Result<()> {
        for (_, b) in w.keys() {
            if *b >= self.v.dim() {
                return Err(Error::pre(format!("v{} is outside a module of dimension {}", b + 1, self.v.dim())));
            }
        }
        Ok(())
    }

    /// Applies `f` to the polynomial factor of every term.
    pub fn on_p(&self, w: &TenVec, f: impl Fn(&DVec) -> Result<DVec>) -> Result<TenVec> {
        let mut out = TenVec::zero();
        for ((m, b), c) in w {
            let img = f(&DVec::term(m.clone(), c.clone()))?;
            out = out.add(&pure(&img, *b));
        }
        Ok(out)
    }

    /// `1 (x) E_ij`.
    pub fn on_v(&self, i: usize, j: usize, w: &TenVec) -> TenVec {
        let e = self.v.e(i, j);
        let mut out = TenVec::zero();
        for ((m, b), c) in w {
            for r in 0..self.v.dim() {
                let a = &e[(r, *b)];
                if !a.is_zero() {
                    out.add_term((m.clone(), r), c * a);
                }
            }
        }
        out
    }

    fn t_power(&self, m: &MIndex) -> Vec<WeylOp> {
        (0..m.n()).flat_map(|i| std::iter::repeat(WeylOp::T(i)).take(m[i] as usize)).collect()
    }

    /// One generator `t^m d_k`.
    pub fn apply_gen(&self, y: &WittTerm, w: &TenVec) -> Result<TenVec> {
        let mut word = self.t_power(&y.m);
        word.push(WeylOp::D(y.j));
        let mut out = self.on_p(w, |p| self.p.apply_word(&word, p))?;
        for i in 0..self.n() {
            if y.m[i] > 0 {
                let shifted = self.t_power(&y.m.shift(i, -1));
                let part = self.on_p(&self.on_v(i, y.j, w), |p| self.p.apply_word(&shifted, p))?;
                out.add_scaled(&part, &Scalar::int(y.m[i] as i64));
            }
        }
        Ok(out)
    }

    /// Action of an element of the (localized) enveloping algebra. Negative
    /// powers of `d_i` use the inverse on the polynomial factor.
    pub fn apply(&self, x: &UElem, w: &TenVec) -> Result<TenVec> {
        self.check(w)?;
        let mut out = TenVec::zero();
        for (mono, c) in x {
            let mut cur = self.on_p(w, |p| self.p.apply_d_power(mono.d_exp(), p))?;
            for (y, e) in mono.word().iter().rev() {
                for _ in 0..*e {
                    cur = self.apply_gen(y, &cur)?;
                }
            }
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }

    /// Action of an element of `D_n (x) U(gl_n)`.
    pub fn apply_phi(&self, img: &PhiImage, w: &TenVec) -> Result<TenVec> {
        self.check(w)?;
        let mut out = TenVec::zero();
        for ((dm, gw), c) in img {
            let mut cur = w.clone();
            for &(i, j) in gw.iter().rev() {
                cur = self.on_v(i, j, &cur);
            }
            let mut word = self.t_power(&dm.t);
            word.extend((0..dm.d.n()).flat_map(|i| std::iter::repeat(WeylOp::D(i)).take(dm.d[i] as usize)));
            cur = self.on_p(&cur, |p| self.p.apply_word(&word, p))?;
            out.add_scaled(&cur, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glrep::{exterior_power, highest_weight_module};
    use crate::pbw;
    use crate::shenlarsson::phi::phi;

    fn t(m: &[i32], j: usize) -> WittTerm {
        WittTerm::new(MIndex::from_slice(m), j).unwrap()
    }

    fn laurent2() -> TensorModule {
        let mu = vec![Scalar::param(0), Scalar::param(1)];
        TensorModule::new(DModule::laurent(mu), exterior_power(2, 1).unwrap()).unwrap()
    }

    #[test]
    fn mixed_generator_on_laurent() {
        let tm = laurent2();
        let w = pure(&tm.p.unit(), 1);
        let got = tm.apply_gen(&t(&[1, 0], 1), &w).unwrap();
        let mut want = TenVec::zero();
        want.add_term((MIndex::from_slice(&[1, -1]), 1), Scalar::param(1));
        want.add_term((MIndex::zeros(2), 0), Scalar::one());
        assert_eq!(got, want);
    }

    #[test]
    fn derivative_on_twisted_constant() {
        let v = exterior_power(1, 1).unwrap();
        let tm = TensorModule::new(DModule::twisted(vec![Scalar::one()]), v).unwrap();
        let w = pure(&tm.p.unit(), 0);
        assert_eq!(tm.apply(&pbw::d(1, 0), &w).unwrap(), w);
    }

    #[test]
    fn euler_shift_formula() {
        let lambda = [Scalar::int(2), Scalar::zero()];
        let v = highest_weight_module(&lambda).unwrap();
        let mu = vec![Scalar::param(0), Scalar::param(1)];
        let tm = TensorModule::new(DModule::laurent(mu.clone()), v).unwrap();
        let m = MIndex::from_slice(&[1, -2]);
        for b in 0..tm.v.dim() {
            let w = TenVec::basis((m.clone(), b));
            for i in 0..2 {
                let mut x = UElem::zero();
                for j in 0..2 {
                    let mut mm = MIndex::unit(2, i);
                    mm = mm.shift(j, 1);
                    x = x.add(&pbw::gen(&t(mm.entries(), j)));
                }
                let got = tm.apply(&x, &w).unwrap();
                let size = &(&(&mu[0] + &mu[1]) + &Scalar::int(2)) + &Scalar::int((m[0] + m[1]) as i64);
                let mut want = TenVec::zero();
                want.add_term((m.shift(i, 1), b), size);
                want = want.add(&tm.on_v(i, i, &TenVec::basis((m.shift(i, 1), b))));
                for j in 0..2 {
                    if j != i {
                        want = want.add(&tm.on_v(i, j, &TenVec::basis((m.shift(j, 1), b))));
                    }
                }
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn phi_route_agrees() {
        let tm = laurent2();
        let x = pbw::normal_form(&[pbw::gen(&t(&[2, 0], 1)), pbw::gen(&t(&[0, 1], 0)), pbw::d(2, 1)]).unwrap();
        let w = pure(&tm.p.unit(), 0).add(&TenVec::basis((MIndex::from_slice(&[-1, 2]), 1)));
        let direct = tm.apply(&x, &w).unwrap();
        let via = tm.apply_phi(&phi(&x, 2).unwrap(), &w).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn localized_action_inverts() {
        let tm = laurent2();
        let w = pure(&tm.p.unit(), 0);
        let dinv = pbw::d_pow(MIndex::from_slice(&[-1, 0]));
        let back = tm.apply(&pbw::d(2, 0), &tm.apply(&dinv, &w).unwrap()).unwrap();
        assert_eq!(back, w);
    }
}
