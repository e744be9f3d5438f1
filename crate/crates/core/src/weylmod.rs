//! Modules over the Weyl algebra `D_n`: twisted polynomials `A^a` and twisted
//! Laurent polynomials `P(mu)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::combo::fmt_combo;
use crate::kernel::{MIndex, Scalar, SparseCombo};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum WeylOp {
    T(usize),
    D(usize),
    DInv(usize),
}

impl WeylOp {
    pub fn index(&self) -> usize {
        match *self {
            WeylOp::T(i) | WeylOp::D(i) | WeylOp::DInv(i) => i,
        }
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylOp::T(i) => write!(f, "t{}", i + 1),
            WeylOp::D(i) => write!(f, "d{}", i + 1),
            WeylOp::DInv(i) => write!(f, "d{}^-1", i + 1),
        }
    }
}

/// A linear combination of words in the Weyl generators. A word acts from
/// right to left.
pub type WeylExpr = SparseCombo<Vec<WeylOp>>;

/// Coordinates on `t^m` (for `A^a`) or `t^{mu+m}` (for `P(mu)`).
pub type DVec = SparseCombo<MIndex>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DModule {
    /// `C[t]` with `d_i` acting as `d_i + a_i`.
    Twisted { a: Vec<Scalar> },
    /// `t^mu C[t^{+-1}]`.
    Laurent { mu: Vec<Scalar> },
}

/// Display adapter for vectors of a [`DModule`].
pub struct ShowDVec<'a>(pub &'a DModule, pub &'a DVec);

impl fmt::Display for ShowDVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let laurent = matches!(self.0, DModule::Laurent { .. });
        fmt_combo(
            self.1,
            f,
            |m, f| {
                if laurent {
                    write!(f, "t^(mu+{})", m)
                } else {
                    let mut first = true;
                    for (i, &e) in m.entries().iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        if !first {
                            write!(f, "*")?;
                        }
                        first = false;
                        write!(f, "t{}", i + 1)?;
                        if e != 1 {
                            write!(f, "^{}", e)?;
                        }
                    }
                    Ok(())
                }
            },
            |m| !laurent && m.is_zero(),
        )
    }
}

impl DModule {
    pub fn twisted(a: Vec<Scalar>) -> Self {
        DModule::Twisted { a }
    }

    pub fn laurent(mu: Vec<Scalar>) -> Self {
        DModule::Laurent { mu }
    }

    pub fn n(&self) -> usize {
        match self {
            DModule::Twisted { a } => a.len(),
            DModule::Laurent { mu } => mu.len(),
        }
    }

    /// The vector `1` (or `t^mu`).
    pub fn unit(&self) -> DVec {
        DVec::basis(MIndex::zeros(self.n()))
    }

    fn check_key(&self, m: &MIndex) -> Result<()> {
        if m.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: m.n(),
            });
        }
        if matches!(self, DModule::Twisted { .. }) && !m.is_nonneg() {
            return Err(Error::pre(format!("t^{} is not a polynomial", m)));
        }
        Ok(())
    }

    /// Plain derivative `d_i` of the basis vector, ignoring any twist.
    fn raw_d(&self, i: usize, m: &MIndex) -> Option<(MIndex, Scalar)> {
        let c = match self {
            DModule::Twisted { .. } => Scalar::int(m[i] as i64),
            DModule::Laurent { mu } => &mu[i] + &Scalar::int(m[i] as i64),
        };
        (!c.is_zero()).then(|| (m.shift(i, -1), c))
    }

    pub fn apply(&self, op: WeylOp, v: &DVec) -> Result<DVec> {
        let i = op.index();
        if i >= self.n() {
            return Err(Error::pre(format!("{} is out of range for n = {}", op, self.n())));
        }
        for m in v.keys() {
            self.check_key(m)?;
        }
        match op {
            WeylOp::T(_) => Ok(v.iter().map(|(m, c)| (m.shift(i, 1), c.clone())).collect()),
            WeylOp::D(_) => {
                let mut out = DVec::zero();
                for (m, c) in v {
                    if let Some((m2, k)) = self.raw_d(i, m) {
                        out.add_term(m2, c * &k);
                    }
                }
                if let DModule::Twisted { a } = self {
                    out.add_scaled(v, &a[i]);
                }
                Ok(out)
            }
            WeylOp::DInv(_) => match self {
                DModule::Twisted { a } => {
                    if a[i].is_zero() {
                        return Err(Error::NotInvertible(format!("d{} on A^a with a_{} = 0", i + 1, i + 1)));
                    }
                    // (a + d)^{-1} = sum_k (-1)^k a^{-k-1} d^k, finite on polynomials.
                    let inv = a[i].inv()?;
                    let mut out = DVec::zero();
                    let mut term = v.scale(&inv);
                    while !term.is_zero() {
                        out = out.add(&term);
                        let mut next = DVec::zero();
                        for (m, c) in &term {
                            if let Some((m2, k)) = self.raw_d(i, m) {
                                next.add_term(m2, -(c * &k) * inv.clone());
                            }
                        }
                        term = next;
                    }
                    Ok(out)
                }
                DModule::Laurent { mu } => {
                    let mut out = DVec::zero();
                    for (m, c) in v {
                        let k = &mu[i] + &Scalar::int(m[i] as i64 + 1);
                        if k.is_zero() {
                            return Err(Error::NotInvertible(format!(
                                "d{} on P(mu): mu_{} + {} = 0",
                                i + 1,
                                i + 1,
                                m[i] + 1
                            )));
                        }
                        out.add_term(m.shift(i, 1), c * &k.inv()?);
                    }
                    Ok(out)
                }
            },
        }
    }

    /// Applies a word, rightmost generator first.
    pub fn apply_word(&self, word: &[WeylOp], v: &DVec) -> Result<DVec> {
        let mut cur = v.clone();
        for op in word.iter().rev() {
            cur = self.apply(*op, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_expr(&self, x: &WeylExpr, v: &DVec) -> Result<DVec> {
        let mut out = DVec::zero();
        for (w, c) in x {
            out.add_scaled(&self.apply_word(w, v)?, c);
        }
        Ok(out)
    }

    /// `d^s` for an exponent vector of any sign.
    pub fn apply_d_power(&self, s: &MIndex, v: &DVec) -> Result<DVec> {
        let mut cur = v.clone();
        for i in 0..s.n() {
            let op = if s[i] >= 0 { WeylOp::D(i) } else { WeylOp::DInv(i) };
            for _ in 0..s[i].unsigned_abs() {
                cur = self.apply(op, &cur)?;
            }
        }
        Ok(cur)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Simplicity {
    GenericallySimple,
    /// `d_i` kills `t^{mu+m}` with `mu_i + m_i = 0`.
    Kernel { i: usize, m: MIndex },
}

/// Simplicity of `P(mu)` as a `D_n`-module, with a kernel witness when some
/// `mu_i` is an integer.
pub fn is_simple_witness(mu: &[Scalar]) -> Simplicity {
    for (i, x) in mu.iter().enumerate() {
        if let Some(k) = x.as_i64() {
            let m = MIndex::zeros(mu.len()).with(i, -(k as i32));
            return Simplicity::Kernel { i, m };
        }
    }
    Simplicity::GenericallySimple
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(e: i32) -> DVec {
        DVec::basis(MIndex::from_slice(&[e]))
    }

    #[test]
    fn twisted_examples() {
        let a = DModule::twisted(vec![Scalar::one()]);
        let v = a.apply(WeylOp::D(0), &one_var(1)).unwrap();
        assert_eq!(v, one_var(1).add(&one_var(0)));
        assert_eq!(a.apply(WeylOp::DInv(0), &one_var(0)).unwrap(), one_var(0));
    }

    #[test]
    fn twisted_inverse_round_trip() {
        let a = DModule::twisted(vec![Scalar::int(3), Scalar::param(0)]);
        let v: DVec = [
            (MIndex::from_slice(&[3, 1]), Scalar::int(2)),
            (MIndex::from_slice(&[0, 2]), Scalar::ratio(-1, 5)),
        ]
        .into_iter()
        .collect();
        for i in 0..2 {
            let w = a.apply(WeylOp::DInv(i), &v).unwrap();
            assert_eq!(a.apply(WeylOp::D(i), &w).unwrap(), v);
            let w = a.apply(WeylOp::D(i), &v).unwrap();
            assert_eq!(a.apply(WeylOp::DInv(i), &w).unwrap(), v);
        }
    }

    #[test]
    fn zero_twist_not_invertible() {
        let a = DModule::twisted(vec![Scalar::zero()]);
        assert!(matches!(a.apply(WeylOp::DInv(0), &one_var(0)), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn laurent_derivative() {
        let mu = Scalar::param(0);
        let p = DModule::laurent(vec![mu.clone()]);
        assert_eq!(p.apply(WeylOp::D(0), &one_var(0)).unwrap(), one_var(-1).scale(&mu));
        let w = p.apply(WeylOp::DInv(0), &one_var(-3)).unwrap();
        assert_eq!(p.apply(WeylOp::D(0), &w).unwrap(), one_var(-3));
    }

    #[test]
    fn weyl_relation() {
        let p = DModule::laurent(vec![Scalar::ratio(1, 2)]);
        let v = one_var(2).add(&one_var(-1));
        let lhs = p
            .apply_word(&[WeylOp::D(0), WeylOp::T(0)], &v)
            .unwrap()
            .sub(&p.apply_word(&[WeylOp::T(0), WeylOp::D(0)], &v).unwrap());
        assert_eq!(lhs, v);
    }

    #[test]
    fn simplicity() {
        assert_eq!(is_simple_witness(&[Scalar::param(0)]), Simplicity::GenericallySimple);
        assert_eq!(is_simple_witness(&[Scalar::ratio(1, 2)]), Simplicity::GenericallySimple);
        let w = is_simple_witness(&[Scalar::zero()]);
        assert_eq!(
            w,
            Simplicity::Kernel {
                i: 0,
                m: MIndex::from_slice(&[0])
            }
        );
        let p = DModule::laurent(vec![Scalar::zero()]);
        assert!(p.apply(WeylOp::D(0), &one_var(0)).unwrap().is_zero());
    }
}
