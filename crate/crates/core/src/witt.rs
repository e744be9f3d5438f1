//! The Witt algebra `W_n` of polynomial vector fields with basis `t^m d_j`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::combo::fmt_combo;
use crate::kernel::{MIndex, Scalar, SparseCombo};

/// The basis vector `t^m d_j` with `m >= 0` and a zero-based direction `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WittTerm {
    pub m: MIndex,
    pub j: usize,
}

impl WittTerm {
    pub fn new(m: MIndex, j: usize) -> Result<Self> {
        if !m.is_nonneg() {
            return Err(Error::pre(format!("exponent {} has a negative entry", m)));
        }
        if j >= m.n() {
            return Err(Error::pre(format!("direction {} out of range for n = {}", j + 1, m.n())));
        }
        Ok(WittTerm { m, j })
    }

    pub fn d(n: usize, i: usize) -> Self {
        WittTerm { m: MIndex::zeros(n), j: i }
    }

    pub fn h(n: usize, i: usize) -> Self {
        WittTerm { m: MIndex::unit(n, i), j: i }
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn degree(&self) -> i32 {
        self.m.abs()
    }

    pub fn is_d(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_h(&self) -> bool {
        self.m == MIndex::unit(self.n(), self.j)
    }

    /// Eigenvalue under `ad h_k`: `m_k - delta_{jk}`.
    pub fn weight(&self, k: usize) -> i32 {
        self.m[k] - i32::from(self.j == k)
    }

    pub fn elem(&self) -> WittElem {
        SparseCombo::basis(self.clone())
    }
}

// |m| first, then m lexicographically, then the direction
impl Ord for WittTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .abs()
            .cmp(&other.m.abs())
            .then_with(|| self.m.cmp(&other.m))
            .then_with(|| self.j.cmp(&other.j))
    }
}

impl PartialOrd for WittTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Writes `t^m` as `t1^2*t3`, or nothing when `m = 0`.
pub(crate) fn fmt_tmono(m: &MIndex, f: &mut fmt::Formatter<'_>) -> std::result::Result<bool, fmt::Error> {
    let mut any = false;
    for (i, &e) in m.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if any {
            write!(f, "*")?;
        }
        any = true;
        write!(f, "t{}", i + 1)?;
        if e != 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(any)
}

impl fmt::Display for WittTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if fmt_tmono(&self.m, f)? {
            write!(f, "*")?;
        }
        write!(f, "d{}", self.j + 1)
    }
}

pub type WittElem = SparseCombo<WittTerm>;

/// Display adapter for [`WittElem`].
pub struct ShowWitt<'a>(pub &'a WittElem);

impl fmt::Display for ShowWitt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_combo(self.0, f, |t, f| write!(f, "{}", t), |_| false)
    }
}

pub fn d(n: usize, i: usize) -> WittElem {
    WittTerm::d(n, i).elem()
}

pub fn h(n: usize, i: usize) -> WittElem {
    WittTerm::h(n, i).elem()
}

/// The Euler field `E_n = sum t_i d_i`.
pub fn euler(n: usize) -> WittElem {
    (0..n).map(|i| (WittTerm::h(n, i), Scalar::one())).collect()
}

/// Bracket of two basis terms:
/// `[t^m d_i, t^r d_j] = r_i t^{m+r-e_i} d_j - m_j t^{m+r-e_j} d_i`.
pub fn bracket_terms(x: &WittTerm, y: &WittTerm) -> WittElem {
    let (m, i) = (&x.m, x.j);
    let (r, j) = (&y.m, y.j);
    let sum = m + r;
    let mut out = WittElem::zero();
    if r[i] != 0 {
        out.add_term(WittTerm { m: sum.shift(i, -1), j }, Scalar::int(r[i] as i64));
    }
    if m[j] != 0 {
        out.add_term(WittTerm { m: sum.shift(j, -1), j: i }, Scalar::int(-(m[j] as i64)));
    }
    out
}

fn check_n(x: &WittElem, n: usize) -> Result<()> {
    for t in x.keys() {
        if t.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.n() });
        }
    }
    Ok(())
}

pub fn bracket(x: &WittElem, y: &WittElem) -> Result<WittElem> {
    if let Some(t) = x.keys().next() {
        check_n(y, t.n())?;
        check_n(x, t.n())?;
    }
    let mut out = WittElem::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&bracket_terms(a, b), &(ca * cb));
        }
    }
    Ok(out)
}

/// Which rule of the generator recursion produced a node.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum GenCase {
    /// `m_j = 0`: `[t^{m-e_i} d_j, t_j t_i d_j]`.
    DirectionFree,
    /// `m_j != 0, 3`: `(3 - m_j)^{-1} [t^{m-e_j} d_j, t_j^2 d_j]`.
    Generic,
    /// `m = 3 e_j`: `[t_j d_i, t_j^2 t_i d_j] + t_j^2 t_i d_i`.
    PureCube,
    /// `m_j = 3, |m| > 3`: `1/2 [t^{m-2e_j} d_j, t_j^3 d_j]`.
    MixedCube,
}

/// An expression for `t^m d_j` built from brackets of generators of degree
/// at most two.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenTree {
    Leaf(WittTerm),
    Node {
        case: GenCase,
        target: WittTerm,
        coeff: Scalar,
        left: Box<GenTree>,
        right: Box<GenTree>,
        correction: Option<Box<GenTree>>,
    },
}

impl GenTree {
    pub fn eval(&self) -> WittElem {
        match self {
            GenTree::Leaf(t) => t.elem(),
            GenTree::Node {
                coeff,
                left,
                right,
                correction,
                ..
            } => {
                let mut v = bracket(&left.eval(), &right.eval())
                    .expect("same n")
                    .scale(coeff);
                if let Some(c) = correction {
                    v = v.add(&c.eval());
                }
                v
            }
        }
    }

    pub fn cases(&self) -> Vec<GenCase> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let GenTree::Node { case, .. } = t {
                out.push(*case);
            }
        });
        out
    }

    pub fn leaves(&self) -> Vec<WittTerm> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let GenTree::Leaf(l) = t {
                out.push(l.clone());
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&GenTree)) {
        f(self);
        if let GenTree::Node {
            left,
            right,
            correction,
            ..
        } = self
        {
            left.walk(f);
            right.walk(f);
            if let Some(c) = correction {
                c.walk(f);
            }
        }
    }
}

impl fmt::Display for GenTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenTree::Leaf(t) => write!(f, "{}", t),
            GenTree::Node {
                coeff,
                left,
                right,
                correction,
                ..
            } => {
                if !coeff.is_one() {
                    write!(f, "({})*", coeff)?;
                }
                write!(f, "[{}, {}]", left, right)?;
                if let Some(c) = correction {
                    write!(f, " + {}", c)?;
                }
                Ok(())
            }
        }
    }
}

fn expand(t: WittTerm) -> GenTree {
    if t.degree() <= 2 {
        return GenTree::Leaf(t);
    }
    let n = t.n();
    let (m, j) = (&t.m, t.j);
    let term = |m: MIndex, j: usize| WittTerm { m, j };
    let node = |case, coeff, l: WittTerm, r: WittTerm, c: Option<WittTerm>| GenTree::Node {
        case,
        target: t.clone(),
        coeff,
        left: Box::new(expand(l)),
        right: Box::new(expand(r)),
        correction: c.map(|c| Box::new(expand(c))),
    };
    let ej = MIndex::unit(n, j);
    match m[j] {
        0 => {
            let i = (0..n).find(|&i| m[i] > 0).expect("|m| >= 3");
            let ei = MIndex::unit(n, i);
            node(
                GenCase::DirectionFree,
                Scalar::one(),
                term(m - &ei, j),
                term(&ei + &ej, j),
                None,
            )
        }
        3 if m.abs() == 3 => {
            let i = (0..n).find(|&i| i != j).expect("n > 1");
            let ei = MIndex::unit(n, i);
            let sq = ej.scale(2);
            node(
                GenCase::PureCube,
                Scalar::one(),
                term(ej.clone(), i),
                term(&sq + &ei, j),
                Some(term(&sq + &ei, i)),
            )
        }
        3 => node(
            GenCase::MixedCube,
            Scalar::ratio(1, 2),
            term(m - &ej.scale(2), j),
            term(ej.scale(3), j),
            None,
        ),
        mj => node(
            GenCase::Generic,
            Scalar::ratio(1, (3 - mj) as i64),
            term(m - &ej, j),
            term(ej.scale(2), j),
            None,
        ),
    }
}

/// Writes `t^m d_j` (with `|m| >= 3`, `n > 1`) as iterated brackets of
/// generators of degree at most two. Where several indices qualify the
/// smallest is used.
pub fn express_generator(m: &MIndex, j: usize) -> Result<GenTree> {
    let t = WittTerm::new(m.clone(), j)?;
    if t.n() < 2 {
        return Err(Error::pre("generator expressions need n > 1; use d_i for n = 1"));
    }
    if t.degree() < 3 {
        return Err(Error::pre(format!("|m| = {} < 3 is already a generator", t.degree())));
    }
    Ok(expand(t))
}

/// The automorphism induced by `t_i -> c_i^{-1} t_i`, acting on basis terms by
/// `t^m d_j -> c^{-m} c_j t^m d_j`.
pub fn diagonal_twist(c: &[Scalar], x: &WittElem) -> Result<WittElem> {
    if c.iter().any(Scalar::is_zero) {
        return Err(Error::pre("diagonal twist with a zero scaling factor"));
    }
    check_n(x, c.len())?;
    let mut out = WittElem::zero();
    for (t, coef) in x {
        let mut s = c[t.j].clone();
        for (i, &e) in t.m.entries().iter().enumerate() {
            s = &s * &c[i].pow(-(e as i64))?;
        }
        out.add_term(t.clone(), coef * &s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wt(m: &[i32], j: usize) -> WittElem {
        WittTerm::new(MIndex::from_slice(m), j).unwrap().elem()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&d(1, 0), &h(1, 0)).unwrap(), d(1, 0));
        let lhs = bracket(&wt(&[1, 0], 1), &wt(&[0, 1], 0)).unwrap();
        assert_eq!(lhs, h(2, 0).sub(&h(2, 1)));
        assert!(bracket(&h(2, 0), &h(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn mismatched_n() {
        assert!(bracket(&d(1, 0), &d(2, 1)).is_err());
    }

    #[test]
    fn generator_trees() {
        for (m, j) in [(vec![3, 0], 0), (vec![1, 1, 1], 1), (vec![0, 3], 0), (vec![2, 2], 1), (vec![3, 1], 0), (vec![4, 0], 0)] {
            let mi = MIndex::from_slice(&m);
            let tree = express_generator(&mi, j).unwrap();
            assert_eq!(tree.eval(), wt(&m, j), "m = {:?}, j = {}", m, j);
            assert!(tree.leaves().iter().all(|l| l.degree() <= 2));
        }
        assert!(express_generator(&MIndex::from_slice(&[2, 0]), 0).is_err());
        assert!(express_generator(&MIndex::from_slice(&[3]), 0).is_err());
    }

    #[test]
    fn generator_cases_reached() {
        let cases = |m: &[i32], j| express_generator(&MIndex::from_slice(m), j).unwrap().cases()[0];
        assert_eq!(cases(&[0, 3], 0), GenCase::DirectionFree);
        assert_eq!(cases(&[2, 1], 0), GenCase::Generic);
        assert_eq!(cases(&[3, 0], 0), GenCase::PureCube);
        assert_eq!(cases(&[3, 1], 0), GenCase::MixedCube);
    }

    #[test]
    fn twist() {
        assert_eq!(diagonal_twist(&[Scalar::int(2)], &d(1, 0)).unwrap(), d(1, 0).scale(&Scalar::int(2)));
        let x = wt(&[2, 1], 1);
        assert_eq!(diagonal_twist(&[Scalar::one(), Scalar::one()], &x).unwrap(), x);
        assert!(diagonal_twist(&[Scalar::zero()], &d(1, 0)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(wt(&[2, 1, 0], 2).keys().next().unwrap().to_string(), "t1^2*t2*d3");
        let e = bracket(&wt(&[1, 0], 1), &wt(&[0, 1], 0)).unwrap();
        assert_eq!(ShowWitt(&e).to_string(), "t1*d1 - t2*d2");
    }
}
