use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// An element of the rational function field `Q(a1, ..., ap)`.
///
/// Stored canonically: constants as a reduced rational, everything else as a
/// gcd-free fraction whose denominator has leading coefficient one. Two
/// scalars are equal iff their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Repr {
    Rat(BigRational),
    Frac(Box<(Poly, Poly)>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rat(BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rat(BigRational::one()))
    }

    pub fn int(n: i64) -> Self {
        Scalar(Repr::Rat(BigRational::from_integer(n.into())))
    }

    pub fn big(n: BigInt) -> Self {
        Scalar(Repr::Rat(BigRational::from_integer(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(Repr::Rat(BigRational::new(p.into(), q.into())))
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar(Repr::Rat(q))
    }

    /// The formal parameter `a_{v+1}` (zero-based index `v`).
    pub fn param(v: usize) -> Self {
        Scalar(Repr::Frac(Box::new((Poly::var(v), Poly::one()))))
    }

    pub fn from_poly(p: Poly) -> Self {
        match p.as_constant() {
            Some(c) => Scalar(Repr::Rat(c)),
            None => Scalar(Repr::Frac(Box::new((p, Poly::one())))),
        }
    }

    /// Canonical form of `num / den`.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let (Some(a), Some(b)) = (num.as_constant(), den.as_constant()) {
            return Ok(Scalar(Repr::Rat(a / b)));
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lc = den.lead().map(|(_, c)| c.clone()).expect("nonzero");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_constant() {
            return Ok(Scalar::from_poly(num));
        }
        Ok(Scalar(Repr::Frac(Box::new((num, den)))))
    }

    fn parts(&self) -> (Poly, Poly) {
        match &self.0 {
            Repr::Rat(q) => (Poly::constant(q.clone()), Poly::one()),
            Repr::Frac(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numerator(&self) -> Poly {
        self.parts().0
    }

    pub fn denominator(&self) -> Poly {
        self.parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.0, Repr::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Frac(_) => None,
        }
    }

    /// The integer value when this is a constant integer.
    pub fn is_integer_constant(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Rat(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    /// Same as [`Scalar::is_integer_constant`] but narrowed to `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        self.is_integer_constant().and_then(|n| n.to_i64())
    }

    /// Highest parameter index (zero-based) this scalar depends on.
    pub fn max_param(&self) -> Option<usize> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Frac(b) => b.0.max_var().max(b.1.max_var()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(q) if q.is_zero() => Err(Error::DivisionByZero),
            Repr::Rat(q) => Ok(Scalar(Repr::Rat(q.recip()))),
            Repr::Frac(b) => Scalar::from_fraction(b.1.clone(), b.0.clone()),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut r = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }

    /// Substitute `value` for the parameter with zero-based index `v`.
    pub fn substitute(&self, v: usize, value: &Scalar) -> Result<Scalar> {
        match &self.0 {
            Repr::Rat(_) => Ok(self.clone()),
            Repr::Frac(b) => {
                let num = eval_poly(&b.0, v, value);
                let den = eval_poly(&b.1, v, value);
                num.checked_div(&den)
            }
        }
    }

    /// Whether the numerator is divisible by the polynomial `f`, i.e. the
    /// scalar vanishes on the hypersurface `f = 0` (for irreducible `f`).
    pub fn vanishes_on(&self, f: &Poly) -> bool {
        let num = self.numerator();
        !num.is_zero() && num.exact_div(f).is_some()
    }

    /// True when printing inside a product needs parentheses.
    pub fn needs_parens(&self) -> bool {
        match &self.0 {
            Repr::Rat(q) => !q.is_integer() || q.is_negative(),
            Repr::Frac(b) => !b.1.is_one() || b.0.num_terms() > 1 || {
                let (_, c) = b.0.lead().expect("nonzero");
                !c.is_one()
            },
        }
    }
}

fn eval_poly(p: &Poly, v: usize, value: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let k = m.exp(v);
        let mut rest = Poly::zero();
        rest.add_term(m.with_exp(v, 0), c.clone());
        let term = &Scalar::from_poly(rest) * &value.pow(k as i64).expect("nonnegative power");
        acc += &term;
    }
    acc
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            _ => {
                let (n1, d1) = self.parts();
                let (n2, d2) = rhs.parts();
                if d1 == d2 {
                    Scalar::from_fraction(n1.add(&n2), d1).expect("nonzero denominator")
                } else {
                    Scalar::from_fraction(n1.mul(&d2).add(&n2.mul(&d1)), d1.mul(&d2))
                        .expect("nonzero denominator")
                }
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            (Repr::Rat(a), Repr::Frac(_)) | (Repr::Frac(_), Repr::Rat(a)) if a.is_zero() => {
                Scalar::zero()
            }
            (Repr::Rat(a), Repr::Frac(f)) | (Repr::Frac(f), Repr::Rat(a)) => {
                Scalar(Repr::Frac(Box::new((f.0.scale(a), f.1.clone()))))
            }
            _ => {
                let (n1, d1) = self.parts();
                let (n2, d2) = rhs.parts();
                Scalar::from_fraction(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominator")
            }
        }
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] to recover.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rat(q) => Scalar(Repr::Rat(-q)),
            Repr::Frac(b) => Scalar(Repr::Frac(Box::new((b.0.neg(), b.1.clone())))),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(q) => write!(f, "{}", q),
            Repr::Frac(b) => {
                let (num, den) = (&b.0, &b.1);
                if den.is_one() {
                    return write!(f, "{}", num);
                }
                if num.num_terms() > 1 {
                    write!(f, "({})", num)?;
                } else {
                    write!(f, "{}", num)?;
                }
                write!(f, "/({})", den)
            }
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse_scalar(&s, None).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: usize) -> Scalar {
        Scalar::param(v)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&Scalar::ratio(1, 2) + &Scalar::ratio(1, 3), Scalar::ratio(5, 6));
    }

    #[test]
    fn field_inverse() {
        let x = a(0);
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn gcd_reduction() {
        // (a1^2 - 1) / (a1 - 1) -> a1 + 1
        let one = Scalar::one();
        let num = &(&a(0) * &a(0)) - &one;
        let den = &a(0) - &one;
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, &a(0) + &one);
        assert!(q.denominator().is_one());
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let s = Scalar::one().checked_div(&(&a(0) * &Scalar::int(4))).unwrap();
        let den = s.denominator();
        assert_eq!(den.lead().unwrap().1, &BigRational::one());
        assert_eq!(s.to_string(), "1/4/(a1)");
    }

    #[test]
    fn integer_constant_detection() {
        assert_eq!(Scalar::int(3).as_i64(), Some(3));
        assert_eq!(a(0).is_integer_constant(), None);
        assert_eq!(Scalar::ratio(7, 2).is_integer_constant(), None);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        let z = &a(0) - &a(0);
        assert!(z.is_zero());
        assert!(Scalar::one().checked_div(&z).is_err());
    }

    #[test]
    fn substitution() {
        // (a1 + 1)/(a1 - 2) at a1 = 3 -> 4
        let s = (&a(0) + &Scalar::one()).checked_div(&(&a(0) - &Scalar::int(2))).unwrap();
        assert_eq!(s.substitute(0, &Scalar::int(3)).unwrap(), Scalar::int(4));
        assert!(s.substitute(0, &Scalar::int(2)).is_err());
    }
}
