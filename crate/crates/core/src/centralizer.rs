//! Distinguished elements of the centralizer `H_n` of the `d_i` and `h_i`
//! inside the localized enveloping algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::{MIndex, Matrix, Scalar};
use crate::pbw::{self, PBWMonomial, ShowU, UElem};
use crate::witt::WittTerm;

/// Which `z` element; indices are zero-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize, serde::Deserialize)]
pub enum ZKind {
    /// `z_{i,j} = (t_i d_j) d_i d_j^{-1} - h_i`.
    Pair { i: usize, j: usize },
    /// `z_{i,l,j}`, built from `t_i t_l d_j`.
    Triple { i: usize, l: usize, j: usize },
    /// `z_i`, built from `t_i^3 d_i`.
    Cubic { i: usize },
}

impl fmt::Display for ZKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ZKind::Pair { i, j } => write!(f, "z_{{{},{}}}", i + 1, j + 1),
            ZKind::Triple { i, l, j } => write!(f, "z_{{{},{},{}}}", i + 1, l + 1, j + 1),
            ZKind::Cubic { i } => write!(f, "z_{}", i + 1),
        }
    }
}

impl ZKind {
    fn indices(&self) -> Vec<usize> {
        match *self {
            ZKind::Pair { i, j } => vec![i, j],
            ZKind::Triple { i, l, j } => vec![i, l, j],
            ZKind::Cubic { i } => vec![i],
        }
    }

    /// Every `z` element for the given `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<ZKind> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(ZKind::Pair { i, j });
                }
            }
        }
        for i in 0..n {
            for l in i..n {
                for j in 0..n {
                    out.push(ZKind::Triple { i, l, j });
                }
            }
        }
        for i in 0..n {
            out.push(ZKind::Cubic { i });
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ZGen {
    pub n: usize,
    pub kind: ZKind,
    pub elem: UElem,
}

fn term(n: usize, m: &[(usize, i32)], j: usize) -> UElem {
    let mut e = MIndex::zeros(n);
    for &(i, k) in m {
        e = e.shift(i, k);
    }
    pbw::gen(&WittTerm { m: e, j })
}

fn dvec(n: usize, parts: &[(usize, i32)]) -> UElem {
    let mut e = MIndex::zeros(n);
    for &(i, k) in parts {
        e = e.shift(i, k);
    }
    pbw::d_pow(e)
}

fn cst(n: usize, c: i64) -> UElem {
    pbw::scalar(n, Scalar::int(c))
}

fn prod(factors: &[UElem]) -> UElem {
    pbw::normal_form(factors).expect("consistent n")
}

/// The element itself, before any verification.
pub fn z_element(n: usize, kind: ZKind) -> Result<UElem> {
    if kind.indices().iter().any(|&i| i >= n) {
        return Err(Error::pre(format!("{} has an index outside 1..{}", kind, n)));
    }
    let h = |i| pbw::h(n, i);
    Ok(match kind {
        ZKind::Pair { i, j } => {
            let lead = prod(&[term(n, &[(i, 1)], j), dvec(n, &[(i, 1), (j, -1)])]);
            lead.sub(&h(i))
        }
        ZKind::Triple { i, l, j } => {
            let a = prod(&[term(n, &[(i, 1), (l, 1)], j), dvec(n, &[(i, 1), (l, 1), (j, -1)])]);
            let b = prod(&[term(n, &[(i, 1)], j), dvec(n, &[(i, 1), (j, -1)]), h(l)]);
            let c = prod(&[term(n, &[(l, 1)], j), dvec(n, &[(l, 1), (j, -1)]), h(i)]);
            let d = prod(&[h(l), h(i)]);
            let mut z = a.sub(&b).sub(&c).add(&d);
            if i == l {
                z = z.add(&term(n, &[(i, 1)], l));
            }
            z
        }
        ZKind::Cubic { i } => {
            let hm = |k: i64| h(i).sub(&cst(n, k));
            let a = prod(&[term(n, &[(i, 3)], i), dvec(n, &[(i, 2)])]);
            let b = prod(&[term(n, &[(i, 2)], i), hm(1), dvec(n, &[(i, 1)])]).scale(&Scalar::int(3));
            let c = prod(&[h(i), hm(1), hm(2)]).scale(&Scalar::int(2));
            a.sub(&b).add(&c)
        }
    })
}

/// Builds a `z` element and checks that it commutes with every `d_i` and `h_i`.
pub fn make_z(n: usize, kind: ZKind) -> Result<ZGen> {
    let elem = z_element(n, kind)?;
    if let Err(w) = pbw::centralizes(&elem, n) {
        return Err(Error::verify(format!(
            "{} does not commute with {}: {}",
            kind,
            w.against,
            ShowU(&w.commutator)
        )));
    }
    Ok(ZGen { n, kind, elem })
}

/// How an `X_{m,j}` was obtained.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub enum XTrace {
    Base(ZKind),
    /// `[X_{m-e_i,j}, X_{e_j+e_i,j}]` for `m_j = 0`.
    DirectionFree { i: usize },
    /// `(3 - m_j)^{-1} [X_{m-e_j,j}, X_{2e_j,j}]`.
    Generic,
    /// `[X_{e_j,i}, X_{2e_j+e_i,j}] + X_{2e_j+e_i,i}` for `m = 3e_j`.
    PureCube { i: usize },
    /// `1/2 [X_{m-2e_j,j}, X_{3e_j,j}]` for `m_j = 3`, `|m| > 3`.
    MixedCube,
    /// The explicit formula in `d_k = t^{k+1} d` for `n = 1`.
    ClosedFormula,
}

/// The degree of `g_r(h)` for each `r` in the expansion
/// `X_{m,j} = (t^m d_j) d^{m-e_j} + sum_r (t^r d_j) g_r(h) d^{r-e_j} + p(h)`.
#[derive(Clone, PartialEq, Eq, Debug, Default, serde::Serialize)]
pub struct Shape {
    pub g_degrees: BTreeMap<String, u32>,
    pub pure_h_degree: Option<u32>,
    /// The `r` whose `g_r` has degree strictly below `|m| - |r|`.
    pub deficient: Vec<String>,
}

impl Shape {
    /// Every `g_r` present has degree exactly `|m| - |r|`.
    pub fn is_exact(&self) -> bool {
        self.deficient.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct XGen {
    pub m: MIndex,
    pub j: usize,
    pub trace: XTrace,
    /// Products of lower generators subtracted from the recursion output to
    /// reach the leading-term shape, with their coefficients.
    pub corrections: Vec<(XMonomial, Scalar)>,
    pub elem: UElem,
    pub shape: Shape,
}

impl XGen {
    pub fn n(&self) -> usize {
        self.m.n()
    }

    pub fn key(&self) -> WittTerm {
        WittTerm {
            m: self.m.clone(),
            j: self.j,
        }
    }
}

/// Whether a normal monomial is allowed in `X_{m,j}`: a pure `h`-monomial,
/// the leading term, or `(t^r d_j) h^a d^{r-e_j}` with `0 < |r| < |m|`.
fn fits_shape(mono: &PBWMonomial, m: &MIndex, j: usize) -> bool {
    let n = m.n();
    let ys: Vec<&(WittTerm, u32)> = mono.word().iter().filter(|(t, _)| !t.is_h()).collect();
    match ys.as_slice() {
        [] => mono.d_exp().is_zero(),
        [(y, 1)] => {
            y.j == j
                && (y.degree() < m.abs() || (y.m == *m && mono.hdeg() == 0))
                && mono.d_exp() == &(&y.m - &MIndex::unit(n, j))
        }
        _ => false,
    }
}

/// Removes from a centralizer element with leading term `(t^m d_j) d^{m-e_j}`
/// every ordered product of lower generators whose leading word does not fit
/// the single-letter shape, largest first.
fn normalize_shape(raw: &UElem, m: &MIndex, j: usize) -> Result<(UElem, Vec<(XMonomial, Scalar)>)> {
    let n = m.n();
    let mut cur = raw.clone();
    let mut corrections = Vec::new();
    loop {
        let worst = cur
            .iter()
            .filter(|(mono, _)| !fits_shape(mono, m, j))
            .max_by(|(a, _), (b, _)| {
                (a.ysize(), a.hdeg(), *a).cmp(&(b.ysize(), b.hdeg(), *b))
            })
            .map(|(mono, c)| (mono.clone(), c.clone()));
        let Some((mono, c)) = worst else {
            return Ok((cur, corrections));
        };
        if mono.hdeg() > 0 || mono.ysize() > m.abs() as u32 {
            return Err(Error::verify(format!(
                "X_{{{},{}}}: term {} is not the leading word of a product of generators",
                m,
                j + 1,
                mono
            )));
        }
        let xm: XMonomial = mono.word().to_vec();
        let y = x_monomial_elem(n, &xm)?;
        cur.add_scaled(&y, &-&c);
        corrections.push((xm, c));
    }
}

/// Checks the leading-term shape of `X_{m,j}` and reports the `g_r` degrees.
/// Degrees above `|m| - |r|` are an error; degrees below it are reported.
pub fn check_shape(x: &UElem, m: &MIndex, j: usize) -> Result<Shape> {
    let n = m.n();
    let lead_term = WittTerm { m: m.clone(), j };
    let lead = PBWMonomial::from_parts(vec![(lead_term.clone(), 1)], m - &MIndex::unit(n, j))?;
    if x.coeff(&lead) != Scalar::one() {
        return Err(Error::verify(format!(
            "leading term ({})d^{} missing or not monic",
            lead_term,
            m - &MIndex::unit(n, j)
        )));
    }
    let mut shape = Shape::default();
    let mut per_r: BTreeMap<MIndex, u32> = BTreeMap::new();
    for mono in x.keys() {
        if mono == &lead {
            continue;
        }
        let ys: Vec<&(WittTerm, u32)> = mono.word().iter().filter(|(t, _)| !t.is_h()).collect();
        let hdeg: u32 = mono.word().iter().filter(|(t, _)| t.is_h()).map(|(_, e)| e).sum();
        if ys.is_empty() {
            if !mono.d_exp().is_zero() {
                return Err(Error::verify(format!("term {} has an h-part with nonzero d-power", mono)));
            }
            let cur = shape.pure_h_degree.get_or_insert(0);
            *cur = (*cur).max(hdeg);
            continue;
        }
        let (y, e) = ys[0];
        let r = &y.m;
        let ok = ys.len() == 1
            && *e == 1
            && y.j == j
            && r.abs() > 0
            && r.abs() < m.abs()
            && mono.d_exp() == &(r - &MIndex::unit(n, j));
        if !ok {
            return Err(Error::verify(format!("term {} does not fit the expected shape", mono)));
        }
        let cur = per_r.entry(r.clone()).or_insert(0);
        *cur = (*cur).max(hdeg);
    }
    for (r, deg) in &per_r {
        let want = (m.abs() - r.abs()) as u32;
        if *deg > want {
            return Err(Error::verify(format!(
                "g_r for r = {} has degree {} > {}",
                r, deg, want
            )));
        }
        if *deg < want {
            shape.deficient.push(r.to_string());
        }
        shape.g_degrees.insert(r.to_string(), *deg);
    }
    if let Some(p) = shape.pure_h_degree {
        if p > m.abs() as u32 {
            return Err(Error::verify(format!("h-polynomial part has degree {} > |m|", p)));
        }
    }
    Ok(shape)
}

thread_local! {
    static BUILDING: std::cell::RefCell<Vec<(MIndex, usize)>> = const { std::cell::RefCell::new(Vec::new()) };
}

type XCache = Mutex<HashMap<(MIndex, usize), Arc<XGen>>>;

fn x_cache() -> &'static XCache {
    static CACHE: OnceLock<XCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn binom(n: i64, k: i64) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `X_{M+1,1}` for `n = 1` from the closed formula in `d_k = t^{k+1} d`.
pub fn closed_formula(big_m: i32) -> UElem {
    let dk = |k: i32| -> UElem {
        if k == -1 {
            pbw::d(1, 0)
        } else {
            term(1, &[(0, k + 1)], 0)
        }
    };
    let h = pbw::h(1, 0);
    let hm = |i: i64| h.sub(&cst(1, i));
    let dpow = |k: i32| dvec(1, &[(0, k)]);
    let mut x = prod(&[dk(big_m), dpow(big_m)]);
    for k in 1..big_m {
        let mut factors = vec![dk(k)];
        for i in 1..=(big_m - k) {
            factors.push(hm(i as i64));
        }
        factors.push(dpow(k));
        let sign = if (big_m - k) % 2 == 0 { 1 } else { -1 };
        let c = binom(big_m as i64 + 1, k as i64 + 1) * sign;
        x = x.add(&prod(&factors).scale(&Scalar::big(c)));
    }
    let mut last = pbw::one(1);
    for i in 0..=big_m {
        last = pbw::mul(&last, &hm(i as i64));
    }
    let sign = if big_m % 2 == 0 { 1 } else { -1 };
    x.add(&last.scale(&Scalar::int(sign * big_m as i64)))
}

fn build_x(m: &MIndex, j: usize) -> Result<(UElem, XTrace)> {
    let n = m.n();
    let e = |i| MIndex::unit(n, i);
    if n == 1 {
        return Ok((closed_formula(m[0] - 1), XTrace::ClosedFormula));
    }
    let nz: Vec<usize> = (0..n).filter(|&i| m[i] > 0).collect();
    let z = |kind| -> Result<(UElem, XTrace)> { Ok((make_z(n, kind)?.elem, XTrace::Base(kind))) };
    let x = |m: &MIndex, j| -> Result<UElem> { Ok(make_x(m, j)?.elem.clone()) };
    match m.abs() {
        1 => return z(ZKind::Pair { i: nz[0], j }),
        2 => {
            let (i, l) = if nz.len() == 1 { (nz[0], nz[0]) } else { (nz[0], nz[1]) };
            return z(ZKind::Triple { i, l, j });
        }
        _ => {}
    }
    let ej = e(j);
    Ok(match m[j] {
        0 => {
            let i = nz[0];
            let a = x(&(m - &e(i)), j)?;
            let b = x(&(&ej + &e(i)), j)?;
            (pbw::commutator(&a, &b), XTrace::DirectionFree { i })
        }
        3 if m.abs() == 3 => {
            let i = (0..n).find(|&i| i != j).expect("n > 1");
            let sq = ej.scale(2);
            let a = x(&ej, i)?;
            let b = x(&(&sq + &e(i)), j)?;
            let c = x(&(&sq + &e(i)), i)?;
            (pbw::commutator(&a, &b).add(&c), XTrace::PureCube { i })
        }
        3 => {
            let a = x(&(m - &ej.scale(2)), j)?;
            let b = x(&ej.scale(3), j)?;
            (pbw::commutator(&a, &b).scale(&Scalar::ratio(1, 2)), XTrace::MixedCube)
        }
        mj => {
            let a = x(&(m - &ej), j)?;
            let b = x(&ej.scale(2), j)?;
            let c = Scalar::ratio(1, (3 - mj) as i64);
            (pbw::commutator(&a, &b).scale(&c), XTrace::Generic)
        }
    })
}

/// Builds `X_{m,j}` (zero-based `j`), verifying centralizer membership and
/// the leading-term shape. Results are cached process-wide.
pub fn make_x(m: &MIndex, j: usize) -> Result<Arc<XGen>> {
    let n = m.n();
    if !m.is_nonneg() || m.abs() < 1 || j >= n || *m == MIndex::unit(n, j) {
        return Err(Error::pre(format!("X_{{{},{}}} needs |m| >= 1 and m != e_j", m, j + 1)));
    }
    let key = (m.clone(), j);
    if let Some(hit) = x_cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    if BUILDING.with(|b| b.borrow().contains(&key)) {
        return Err(Error::verify(format!("X_{{{},{}}} depends on itself", m, j + 1)));
    }
    BUILDING.with(|b| b.borrow_mut().push(key.clone()));
    let built = build_and_check(m, j);
    BUILDING.with(|b| b.borrow_mut().pop());
    let x = Arc::new(built?);
    x_cache().lock().expect("cache lock").insert(key, x.clone());
    Ok(x)
}

fn build_and_check(m: &MIndex, j: usize) -> Result<XGen> {
    let n = m.n();
    let (raw, trace) = build_x(m, j)?;
    if let Err(w) = pbw::centralizes(&raw, n) {
        return Err(Error::verify(format!(
            "X_{{{},{}}} does not commute with {}: {}",
            m,
            j + 1,
            w.against,
            ShowU(&w.commutator)
        )));
    }
    let (elem, corrections) = normalize_shape(&raw, m, j)?;
    let shape = check_shape(&elem, m, j)?;
    Ok(XGen {
        m: m.clone(),
        j,
        trace,
        corrections,
        elem,
        shape,
    })
}

/// An ordered product of `X` generators, as `(m, j)` keys with exponents.
pub type XMonomial = Vec<(WittTerm, u32)>;

/// Weighted degree `sum |m| * exponent`.
pub fn x_degree(mono: &XMonomial) -> u32 {
    mono.iter().map(|(t, e)| t.degree() as u32 * e).sum()
}

pub fn fmt_xmono(mono: &XMonomial) -> String {
    if mono.is_empty() {
        return "1".into();
    }
    mono.iter()
        .map(|(t, e)| {
            let base = format!("X[{};{}]", t.m, t.j + 1);
            if *e == 1 {
                base
            } else {
                format!("{}^{}", base, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// The product of the `X` generators in the monomial, in order.
pub fn x_monomial_elem(n: usize, mono: &XMonomial) -> Result<UElem> {
    let mut acc = pbw::one(n);
    for (t, e) in mono {
        let x = make_x(&t.m, t.j)?;
        for _ in 0..*e {
            acc = pbw::mul(&acc, &x.elem);
        }
    }
    Ok(acc)
}

/// All `(m, j)` with `1 <= |m| <= max_degree` and `m != e_j`, increasing.
pub fn x_keys(n: usize, max_degree: u32) -> Vec<WittTerm> {
    let mut out = Vec::new();
    for d in 1..=max_degree as i32 {
        for m in MIndex::of_degree(n, d) {
            for j in 0..n {
                if m != MIndex::unit(n, j) {
                    out.push(WittTerm { m: m.clone(), j });
                }
            }
        }
    }
    out.sort();
    out
}

/// Ordered `X`-monomials of weighted degree at most `max_degree`.
pub fn x_monomials(n: usize, max_degree: u32) -> Vec<XMonomial> {
    let keys = x_keys(n, max_degree);
    let mut out = Vec::new();
    fn rec(keys: &[WittTerm], start: usize, left: u32, cur: &mut XMonomial, out: &mut Vec<XMonomial>) {
        out.push(cur.clone());
        for k in start..keys.len() {
            let deg = keys[k].degree() as u32;
            if deg > left {
                continue;
            }
            let mut e = 1;
            while deg * e <= left {
                cur.push((keys[k].clone(), e));
                rec(keys, k + 1, left - deg * e, cur, out);
                cur.pop();
                e += 1;
            }
        }
    }
    rec(&keys, 0, max_degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| x_degree(a).cmp(&x_degree(b)).then_with(|| a.cmp(b)));
    out
}

#[derive(Clone, Debug)]
pub struct HBasis {
    pub monomials: Vec<XMonomial>,
    pub elems: Vec<UElem>,
    pub rank: usize,
}

impl HBasis {
    pub fn count_by_degree(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for m in &self.monomials {
            *out.entry(x_degree(m)).or_insert(0) += 1;
        }
        out
    }
}

/// Rank of a family of elements, via their coordinates on normal monomials.
pub fn rank_of(elems: &[UElem]) -> usize {
    let mut index: BTreeMap<&PBWMonomial, usize> = BTreeMap::new();
    for e in elems {
        for m in e.keys() {
            let k = index.len();
            index.entry(m).or_insert(k);
        }
    }
    let mut mat = Matrix::zeros(elems.len(), index.len());
    for (r, e) in elems.iter().enumerate() {
        for (m, c) in e {
            mat[(r, index[m])] = c.clone();
        }
    }
    mat.rank()
}

/// Ordered `X`-monomials up to the given degree together with their normal
/// forms and the rank of that family.
pub fn h_monomial_basis(n: usize, max_degree: u32) -> Result<HBasis> {
    let monomials = x_monomials(n, max_degree);
    let elems = monomials
        .iter()
        .map(|m| x_monomial_elem(n, m))
        .collect::<Result<Vec<_>>>()?;
    let rank = rank_of(&elems);
    Ok(HBasis {
        monomials,
        elems,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[i32]) -> MIndex {
        MIndex::from_slice(v)
    }

    #[test]
    fn z_pair_diagonal_vanishes() {
        assert!(z_element(2, ZKind::Pair { i: 0, j: 0 }).unwrap().is_zero());
    }

    #[test]
    fn z_elements_centralize() {
        for n in 1..=2 {
            for kind in ZKind::all(n) {
                make_z(n, kind).unwrap();
            }
        }
    }

    #[test]
    fn z_index_range() {
        assert!(make_z(2, ZKind::Cubic { i: 2 }).is_err());
    }

    #[test]
    fn closed_formula_low_cases() {
        let x2 = make_x(&mi(&[2]), 0).unwrap();
        assert_eq!(x2.elem, make_z(1, ZKind::Triple { i: 0, l: 0, j: 0 }).unwrap().elem);
        let x3 = make_x(&mi(&[3]), 0).unwrap();
        assert_eq!(x3.elem, make_z(1, ZKind::Cubic { i: 0 }).unwrap().elem);
        make_x(&mi(&[5]), 0).unwrap();
    }

    #[test]
    fn recursion_low_degree() {
        let x = make_x(&mi(&[1, 1]), 0).unwrap();
        assert_eq!(x.trace, XTrace::Base(ZKind::Triple { i: 0, l: 1, j: 0 }));
        for (m, j) in [([3, 0], 0), ([0, 3], 0), ([2, 1], 0), ([1, 2], 0), ([3, 0], 1)] {
            make_x(&mi(&m), j).unwrap();
        }
    }

    #[test]
    fn preconditions() {
        assert!(make_x(&mi(&[1, 0]), 0).is_err());
        assert!(make_x(&mi(&[0, 0]), 0).is_err());
    }

    #[test]
    fn monomial_counts() {
        let by_deg = |n, d| {
            let mut c = BTreeMap::new();
            for m in x_monomials(n, d) {
                *c.entry(x_degree(&m)).or_insert(0usize) += 1;
            }
            c.into_values().collect::<Vec<_>>()
        };
        assert_eq!(by_deg(1, 4), vec![1, 1, 1, 2]);
        assert_eq!(by_deg(2, 3), vec![1, 2, 9, 24]);
    }
}
