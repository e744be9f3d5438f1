//! Text syntax for elements of the localized enveloping algebra, the Witt
//! algebra and the Weyl algebra.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-'* atom ('^' int)?
//! atom   := int | a<k> | t<i> | d<i> | h<i> | E | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! A product `t1^2*t2*d1` of coordinate letters closed by a bare `d<j>` is the
//! generator `t^(2,1) d_1`; a coordinate letter anywhere else is an error.

use crate::error::{Error, Result};
use crate::kernel::parse::{param_index, scalar_factor, Lexer, Tok};
use crate::kernel::{MIndex, Scalar};
use crate::pbw::{self, PBWMonomial, UElem};
use crate::weylmod::{DVec, WeylExpr, WeylOp};
use crate::witt::{self, WittElem, WittTerm};

/// A parsed element of the localized enveloping algebra in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub n: usize,
    pub elem: UElem,
}

impl Expr {
    /// The element as a Witt algebra element, if it is linear in generators.
    pub fn witt(&self) -> Option<WittElem> {
        let mut out = WittElem::zero();
        for (m, c) in &self.elem {
            out.add_term(single_generator(m)?, c.clone());
        }
        Some(out)
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        as_constant(&self.elem)
    }
}

fn single_generator(m: &PBWMonomial) -> Option<WittTerm> {
    match (m.word(), m.d_exp()) {
        ([(t, 1)], d) if d.is_zero() => Some(t.clone()),
        ([], d) => {
            let j = (0..d.n()).find(|&i| d[i] != 0)?;
            (d == &MIndex::unit(d.n(), j)).then(|| WittTerm::d(d.n(), j))
        }
        _ => None,
    }
}

fn as_constant(u: &UElem) -> Option<Scalar> {
    match u.len() {
        0 => Some(Scalar::zero()),
        1 => {
            let (m, c) = u.iter().next()?;
            m.is_one().then(|| c.clone())
        }
        _ => None,
    }
}

/// Splits `t12` into the letter and a one-based index.
fn letter(name: &str) -> Option<(char, usize)> {
    let mut chars = name.chars();
    let c = chars.next()?;
    let rest = chars.as_str();
    if !"tdh".contains(c) || rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let i: usize = rest.parse().ok()?;
    (i >= 1).then_some((c, i))
}

/// The largest variable index mentioned in `src`.
fn max_index(src: &str) -> Result<usize> {
    let mut lx = Lexer::new(src)?;
    let mut n = 0;
    loop {
        match lx.next() {
            Tok::End => return Ok(n),
            Tok::Ident(s) => {
                if let Some((_, i)) = letter(&s) {
                    n = n.max(i);
                }
            }
            _ => {}
        }
    }
}

fn resolve_n(src: &str, n: Option<usize>) -> Result<usize> {
    let seen = max_index(src)?;
    match n {
        Some(n) if seen > n => Err(Error::pre(format!("index {} exceeds n = {}", seen, n))),
        Some(n) => Ok(n),
        None => Ok(seen.max(1)),
    }
}

enum Atom {
    T(usize, i64),
    D(usize, i64),
    Elem(UElem),
}

struct Parser {
    lx: Lexer,
    n: usize,
}

impl Parser {
    fn expr(&mut self) -> Result<UElem> {
        let mut acc = self.term()?;
        loop {
            if self.lx.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.lx.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<UElem> {
        let mut acc = pbw::one(self.n);
        let mut pending = MIndex::zeros(self.n);
        let mut pending_pos = None;
        let mut first = true;
        loop {
            if !first {
                if self.lx.eat('/') {
                    let pos = self.lx.pos();
                    let d = self.signed_factor(&mut acc)?;
                    let d = self.close(d, pending_pos)?;
                    let inv = as_constant(&d)
                        .ok_or_else(|| Error::Parse {
                            pos,
                            expected: "a scalar divisor".into(),
                            found: "an operator".into(),
                        })?
                        .inv()
                        .map_err(|_| Error::Parse {
                            pos,
                            expected: "a nonzero divisor".into(),
                            found: "zero".into(),
                        })?;
                    acc = acc.scale(&inv);
                    continue;
                }
                if !self.lx.eat('*') {
                    break;
                }
            }
            first = false;
            let pos = self.lx.pos();
            match self.signed_factor(&mut acc)? {
                Atom::T(i, e) => {
                    pending = pending.shift(i, e as i32);
                    pending_pos.get_or_insert(pos);
                }
                Atom::D(j, 1) if pending_pos.is_some() => {
                    let t = WittTerm::new(std::mem::replace(&mut pending, MIndex::zeros(self.n)), j)?;
                    pending_pos = None;
                    acc = pbw::mul(&acc, &pbw::gen(&t));
                }
                other => {
                    let x = self.close(other, pending_pos)?;
                    acc = pbw::mul(&acc, &x);
                }
            }
        }
        if let Some(pos) = pending_pos {
            return Err(Error::Parse {
                pos,
                expected: "a coordinate monomial closed by d<j>".into(),
                found: self.lx.peek().describe(),
            });
        }
        Ok(acc)
    }

    /// A factor with any number of leading minus signs, which are moved onto `acc`.
    fn signed_factor(&mut self, acc: &mut UElem) -> Result<Atom> {
        while self.lx.eat('-') {
            *acc = acc.scale(&Scalar::int(-1));
        }
        self.power()
    }

    /// Converts an atom that may not follow an open coordinate monomial.
    fn close(&self, a: Atom, pending_pos: Option<usize>) -> Result<UElem> {
        if let Some(pos) = pending_pos {
            return Err(Error::Parse {
                pos,
                expected: "a coordinate monomial closed by a bare d<j>".into(),
                found: "another factor".into(),
            });
        }
        match a {
            Atom::T(_, _) => Err(self.lx.error("a factor other than a coordinate letter")),
            Atom::D(j, e) => Ok(pbw::d_pow(MIndex::zeros(self.n).with(j, e as i32))),
            Atom::Elem(u) => Ok(u),
        }
    }

    fn power(&mut self) -> Result<Atom> {
        let a = self.atom()?;
        if !self.lx.eat('^') {
            return Ok(a);
        }
        let pos = self.lx.pos();
        let k = self.lx.signed_int()?;
        let negative = |what: &str| Error::Parse {
            pos,
            expected: format!("a nonnegative exponent on {}", what),
            found: k.to_string(),
        };
        match a {
            Atom::D(j, e) => Ok(Atom::D(j, e * k)),
            Atom::T(_, _) if k < 0 => Err(negative("a coordinate letter")),
            Atom::T(i, e) => Ok(Atom::T(i, e * k)),
            Atom::Elem(u) => {
                if let Some(s) = as_constant(&u) {
                    return s.pow(k).map(|c| Atom::Elem(pbw::scalar(self.n, c))).map_err(|_| Error::Parse {
                        pos,
                        expected: "a nonnegative exponent of zero".into(),
                        found: k.to_string(),
                    });
                }
                if k < 0 {
                    return Err(negative("a non-d generator"));
                }
                Ok(Atom::Elem(pbw::pow(&u, k as u32, self.n)))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.lx.peek().clone() {
            Tok::Int(v) => {
                self.lx.next();
                Ok(Atom::Elem(pbw::scalar(self.n, Scalar::big(v))))
            }
            Tok::Ident(name) if name == "E" => {
                self.lx.next();
                Ok(Atom::Elem(pbw::from_witt(&witt::euler(self.n))))
            }
            Tok::Ident(name) => {
                if let Some((c, i)) = letter(&name) {
                    self.lx.next();
                    return Ok(match c {
                        't' => Atom::T(i - 1, 1),
                        'd' => Atom::D(i - 1, 1),
                        _ => Atom::Elem(pbw::h(self.n, i - 1)),
                    });
                }
                if let Some(k) = param_index(&name) {
                    self.lx.next();
                    return Ok(Atom::Elem(pbw::scalar(self.n, Scalar::param(k))));
                }
                Err(self.lx.error("t<i>, d<i>, h<i>, E, a<k> or a number"))
            }
            Tok::Sym('(') => {
                self.lx.next();
                let u = self.expr()?;
                self.lx.expect(')')?;
                Ok(Atom::Elem(u))
            }
            Tok::Sym('[') => {
                self.lx.next();
                let x = self.expr()?;
                self.lx.expect(',')?;
                let y = self.expr()?;
                self.lx.expect(']')?;
                Ok(Atom::Elem(pbw::commutator(&x, &y)))
            }
            _ => Err(self.lx.error("a factor")),
        }
    }
}

/// Parses an element of the localized enveloping algebra of `W_n`. When `n` is
/// omitted it is the largest index that occurs.
pub fn parse_expr(src: &str, n: Option<usize>) -> Result<Expr> {
    let n = resolve_n(src, n)?;
    let mut p = Parser {
        lx: Lexer::new(src)?,
        n,
    };
    let elem = p.expr()?;
    p.lx.expect_end()?;
    Ok(Expr { n, elem })
}

/// Parses an element that must lie in `W_n`.
pub fn parse_witt(src: &str, n: Option<usize>) -> Result<(usize, WittElem)> {
    let e = parse_expr(src, n)?;
    let w = e
        .witt()
        .ok_or_else(|| Error::pre(format!("'{}' is not a linear combination of vector fields", src)))?;
    Ok((e.n, w))
}

/// Parses a combination of words in `t<i>`, `d<i>` and `d<i>^-k` acting on a
/// module over the Weyl algebra. Words act right to left.
pub fn parse_weyl(src: &str, n: usize) -> Result<WeylExpr> {
    let mut lx = Lexer::new(src)?;
    let mut out = WeylExpr::zero();
    let mut sign = Scalar::one();
    if lx.eat('-') {
        sign = -sign;
    }
    loop {
        let (coeff, word) = weyl_term(&mut lx, n)?;
        out.add_term(word, &sign * &coeff);
        if lx.eat('+') {
            sign = Scalar::one();
        } else if lx.eat('-') {
            sign = Scalar::int(-1);
        } else {
            break;
        }
    }
    lx.expect_end()?;
    Ok(out)
}

fn weyl_term(lx: &mut Lexer, n: usize) -> Result<(Scalar, Vec<WeylOp>)> {
    let mut coeff = Scalar::one();
    let mut word = Vec::new();
    loop {
        match lx.peek().clone() {
            Tok::Ident(name) if letter(&name).is_some_and(|(c, _)| c != 'h') => {
                let (c, i) = letter(&name).expect("checked");
                if i > n {
                    return Err(lx.error(format!("an index at most {}", n)));
                }
                lx.next();
                let k = if lx.eat('^') { lx.signed_int()? } else { 1 };
                let op = match (c, k < 0) {
                    ('t', true) => return Err(lx.error("a nonnegative exponent on t")),
                    ('t', false) => WeylOp::T(i - 1),
                    (_, false) => WeylOp::D(i - 1),
                    (_, true) => WeylOp::DInv(i - 1),
                };
                word.extend(std::iter::repeat_n(op, k.unsigned_abs() as usize));
            }
            Tok::Int(_) | Tok::Sym('(') | Tok::Ident(_) => {
                let s = scalar_factor(lx, None)?;
                coeff = &coeff * &s;
            }
            _ => return Err(lx.error("a Weyl generator or a scalar")),
        }
        while lx.eat('/') {
            coeff = divide(lx, coeff)?;
        }
        if !lx.eat('*') {
            return Ok((coeff, word));
        }
    }
}

fn divide(lx: &mut Lexer, c: Scalar) -> Result<Scalar> {
    let pos = lx.pos();
    let d = scalar_factor(lx, None)?;
    c.checked_div(&d).map_err(|_| Error::Parse {
        pos,
        expected: "a nonzero divisor".into(),
        found: "zero".into(),
    })
}

/// Parses a Laurent polynomial `c * t1^e1 * ... ` with integer exponents of
/// any sign into coordinates on monomials.
pub fn parse_dvec(src: &str, n: usize) -> Result<DVec> {
    let mut lx = Lexer::new(src)?;
    let mut out = DVec::zero();
    let mut sign = Scalar::one();
    if lx.eat('-') {
        sign = -sign;
    }
    loop {
        let mut coeff = Scalar::one();
        let mut m = MIndex::zeros(n);
        loop {
            match lx.peek().clone() {
                Tok::Ident(name) if name.starts_with('t') && letter(&name).is_some() => {
                    let (_, i) = letter(&name).expect("checked");
                    if i > n {
                        return Err(lx.error(format!("an index at most {}", n)));
                    }
                    lx.next();
                    let k = if lx.eat('^') { lx.signed_int()? } else { 1 };
                    m = m.shift(i - 1, k as i32);
                }
                Tok::Int(_) | Tok::Sym('(') | Tok::Ident(_) => {
                    coeff = &coeff * &scalar_factor(&mut lx, None)?;
                }
                _ => return Err(lx.error("a monomial factor")),
            }
            while lx.eat('/') {
                coeff = divide(&mut lx, coeff)?;
            }
            if !lx.eat('*') {
                break;
            }
        }
        out.add_term(m, &sign * &coeff);
        if lx.eat('+') {
            sign = Scalar::one();
        } else if lx.eat('-') {
            sign = Scalar::int(-1);
        } else {
            break;
        }
    }
    lx.expect_end()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_generator() {
        let (n, w) = parse_witt("t1^2*d2", None).unwrap();
        assert_eq!(n, 2);
        let t = WittTerm::new(MIndex::from_slice(&[2, 0]), 1).unwrap();
        assert_eq!(w, t.elem());
    }

    #[test]
    fn bracket_gives_d1() {
        let e = parse_expr("[d1, t1*d1]", None).unwrap();
        assert_eq!(e.elem, pbw::d(1, 0));
    }

    #[test]
    fn no_t_localization() {
        assert!(matches!(parse_expr("t1^-1", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("t1^-1*d1", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("h1^-1", None), Err(Error::Parse { .. })));
        assert!(parse_expr("d1^-2", None).is_ok());
    }

    #[test]
    fn dangling_coordinate() {
        for bad in ["t1", "t1*2*d1", "t1*h1", "t1*d1^2"] {
            assert!(parse_expr(bad, Some(2)).is_err(), "{}", bad);
        }
    }

    #[test]
    fn errors_carry_position() {
        match parse_expr("d1 + * d2", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{:?}", other),
        }
        assert!(parse_expr("d3", Some(2)).is_err());
    }

    #[test]
    fn euler_and_scalars() {
        let e = parse_expr("E - h1 - h2", Some(2)).unwrap();
        assert!(e.elem.is_zero());
        let e = parse_expr("(a1 + 1)/2 * d1 - a1/2*d1", None).unwrap();
        assert_eq!(e.elem, pbw::d(1, 0).scale(&Scalar::ratio(1, 2)));
        assert_eq!(parse_expr("2^-1", None).unwrap().as_scalar(), Some(Scalar::ratio(1, 2)));
    }

    #[test]
    fn printer_round_trip() {
        for src in ["(t1*d1)^2*d2^-3 - 1/2*t2^2*d1", "[t1^2*d1, t1^3*d1]*d1^-1", "a1*h1*h2 + 3"] {
            let e = parse_expr(src, Some(2)).unwrap();
            let text = pbw::ShowU(&e.elem).to_string();
            assert_eq!(parse_expr(&text, Some(2)).unwrap(), e, "{}", text);
        }
    }

    #[test]
    fn weyl_words() {
        let x = parse_weyl("d1*t1 - 2*t1*d1^-1", 1).unwrap();
        assert_eq!(x.coeff(&vec![WeylOp::D(0), WeylOp::T(0)]), Scalar::one());
        assert_eq!(x.coeff(&vec![WeylOp::T(0), WeylOp::DInv(0)]), Scalar::int(-2));
        let v = parse_dvec("t1^-2*t2 + a1/3", 2).unwrap();
        assert_eq!(v.coeff(&MIndex::from_slice(&[-2, 1])), Scalar::one());
        assert_eq!(v.coeff(&MIndex::zeros(2)), parse_scalar_lit("a1/3"));
    }

    fn parse_scalar_lit(s: &str) -> Scalar {
        crate::kernel::parse::parse_scalar(s, None).unwrap()
    }
}
