//! The verification suite: one group of exact checks per property of the
//! library, at a configurable scale.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::centralizer::{make_x, make_z, x_monomial_elem, x_monomials, rank_of, ZKind};
use crate::cuspidal::window::check_module_axioms;
use crate::cuspidal::{
    cuspidality_check, induce_g1, make_hrep, roundtrip, separation_check, w_module, HRep,
    WinOp, WinVec,
};
use crate::error::{Error, Result};
use crate::glrep::{exterior_power, highest_weight_module, GlRep};
use crate::kernel::{MIndex, Poly, Scalar};
use crate::pbw::{self, decompose::decompose_BH, decompose::recombine, UElem};
use crate::shenlarsson::{phi, pi_map, q1_whittaker_dimensions, theta_of, whittaker_space, TenVec, TensorModule, WhSource};
use crate::weylmod::{is_simple_witness, DModule, Simplicity};
use crate::witt::{self, WittElem, WittTerm};

use super::config::Config;
use super::expr::parse_expr;
use super::report::{CheckResult, Report, Status};

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub checks: Vec<CheckResult>,
}

impl Criterion {
    fn new(id: u32, title: &str, checks: Vec<CheckResult>) -> Self {
        Criterion {
            id,
            title: title.into(),
            checks,
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_term(r: &mut ChaCha8Rng, n: usize, max_degree: i32) -> WittTerm {
    let d = r.gen_range(0..=max_degree);
    let mut m = MIndex::zeros(n);
    for _ in 0..d {
        m = m.shift(r.gen_range(0..n), 1);
    }
    WittTerm::new(m, r.gen_range(0..n)).expect("nonnegative exponents")
}

fn random_coeff(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::ratio(r.gen_range(-5..=5), r.gen_range(1..=3))
}

/// Runs `f` and turns an error into a failed or unstable check.
fn guarded(name: &str, f: impl FnOnce() -> Result<Option<String>>) -> CheckResult {
    match f() {
        Ok(w) => CheckResult::from_witness(name, w),
        Err(e) => CheckResult::from_error(name, &e),
    }
}

/// Antisymmetry and Jacobi on `samples` random triples of basis elements for
/// each `n` up to `n_max`.
pub fn lie_axioms(n_max: usize, max_degree: i32, samples: usize, seed: u64) -> Criterion {
    let name_a = "antisymmetry";
    let name_j = "jacobi";
    let mut bad_a = None;
    let mut bad_j = None;
    for n in 1..=n_max {
        let mut r = rng(seed, 100 + n as u64);
        for _ in 0..samples {
            let (x, y, z) = (
                random_term(&mut r, n, max_degree).elem(),
                random_term(&mut r, n, max_degree).elem(),
                random_term(&mut r, n, max_degree).elem(),
            );
            let br = |a: &WittElem, b: &WittElem| witt::bracket(a, b).expect("same n");
            if br(&x, &y).add(&br(&y, &x)) != WittElem::zero() && bad_a.is_none() {
                bad_a = Some(format!("[{}, {}]", witt::ShowWitt(&x), witt::ShowWitt(&y)));
            }
            let jac = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
            if !jac.is_zero() && bad_j.is_none() {
                bad_j = Some(format!(
                    "{}, {}, {}",
                    witt::ShowWitt(&x),
                    witt::ShowWitt(&y),
                    witt::ShowWitt(&z)
                ));
            }
        }
    }
    Criterion::new(
        1,
        "Lie axioms of the Witt bracket",
        vec![
            CheckResult::from_witness(name_a, bad_a),
            CheckResult::from_witness(name_j, bad_j),
        ],
    )
}

fn random_small_elem(r: &mut ChaCha8Rng, n: usize) -> UElem {
    let mut out = UElem::zero();
    for _ in 0..r.gen_range(1..=2) {
        let letters = r.gen_range(1..=2);
        let mut x = pbw::one(n);
        for _ in 0..letters {
            x = pbw::mul(&x, &pbw::gen(&random_term(r, n, 2)));
        }
        out.add_scaled(&x, &random_coeff(r));
    }
    out
}

/// `phi` is multiplicative and preserves commutators on random pairs.
pub fn phi_homomorphism(n: usize, samples: usize, seed: u64) -> Criterion {
    let mut r = rng(seed, 200);
    let mut bad_mul = None;
    let mut bad_br = None;
    for _ in 0..samples {
        let x = random_small_elem(&mut r, n);
        let y = random_small_elem(&mut r, n);
        let (px, py) = (phi::phi(&x, n).expect("no inverses"), phi::phi(&y, n).expect("no inverses"));
        let pxy = phi::phi(&pbw::mul(&x, &y), n).expect("no inverses");
        if pxy != phi::mul(&px, &py) && bad_mul.is_none() {
            bad_mul = Some(format!("x = {}, y = {}", pbw::ShowU(&x), pbw::ShowU(&y)));
        }
        let pbr = phi::phi(&pbw::commutator(&x, &y), n).expect("no inverses");
        if pbr != phi::commutator(&px, &py) && bad_br.is_none() {
            bad_br = Some(format!("x = {}, y = {}", pbw::ShowU(&x), pbw::ShowU(&y)));
        }
    }
    Criterion::new(
        2,
        "phi is an algebra homomorphism",
        vec![
            CheckResult::from_witness("multiplicative", bad_mul),
            CheckResult::from_witness("commutators", bad_br),
        ],
    )
}

/// Every `z` and every `X_{m,j}` with `|m| <= max_degree` centralizes; the
/// `X` have the expected leading shape.
pub fn centralizer_membership(n: usize, max_degree: i32) -> Criterion {
    let z = guarded("z_elements_centralize", || {
        for kind in ZKind::all(n) {
            let g = make_z(n, kind)?;
            if let Err(w) = pbw::centralizes(&g.elem, n) {
                return Ok(Some(format!("{} against {}: {}", kind, w.against, pbw::ShowU(&w.commutator))));
            }
        }
        Ok(None)
    });
    let mut cases = Vec::new();
    for d in 1..=max_degree {
        for m in MIndex::of_degree(n, d) {
            for j in 0..n {
                if m != MIndex::unit(n, j) {
                    cases.push((m.clone(), j));
                }
            }
        }
    }
    let built: Vec<Result<_>> = cases.par_iter().map(|(m, j)| make_x(m, *j)).collect();
    let mut member = None;
    let mut deficient = Vec::new();
    for ((m, j), x) in cases.iter().zip(built) {
        match x {
            Err(e) => {
                member.get_or_insert(format!("X_{{{},{}}}: {}", m, j + 1, e));
            }
            Ok(x) => {
                if let Err(w) = pbw::centralizes(&x.elem, n) {
                    member.get_or_insert(format!("X_{{{},{}}} against {}", m, j + 1, w.against));
                }
                if !x.shape.is_exact() {
                    deficient.push(format!(
                        "X_{{{},{}}}: deg g_r < |m| - |r| for r in {}",
                        m,
                        j + 1,
                        x.shape.deficient.join(", ")
                    ));
                }
            }
        }
    }
    let exact = if deficient.is_empty() {
        CheckResult::pass("x_shape_exact_degrees")
    } else {
        CheckResult::fail("x_shape_exact_degrees", deficient.join("; "))
    };
    Criterion::new(
        3,
        "centralizer membership and X shape",
        vec![
            z,
            CheckResult::from_witness("x_generators_centralize", member),
            exact,
        ],
    )
}

/// For `n = 1`, `X_{2,1} = z_{1,1,1}` and `X_{3,1} = z_1`.
pub fn n1_closed_formulas() -> Criterion {
    let check = |m: i32, kind: ZKind| {
        guarded(&format!("X_({})_1 = {}", m, kind), || {
            let x = make_x(&MIndex::from_slice(&[m]), 0)?;
            let z = make_z(1, kind)?;
            Ok((x.elem != z.elem).then(|| format!("difference {}", pbw::ShowU(&x.elem.sub(&z.elem)))))
        })
    };
    Criterion::new(
        4,
        "closed formulas for n = 1",
        vec![
            check(2, ZKind::Triple { i: 0, l: 0, j: 0 }),
            check(3, ZKind::Cubic { i: 0 }),
        ],
    )
}

fn z_elem(n: usize, kind: ZKind) -> Result<UElem> {
    Ok(make_z(n, kind)?.elem)
}

fn expr(src: &str, n: usize) -> Result<UElem> {
    Ok(parse_expr(src, Some(n))?.elem)
}

/// The displayed expressions of generators through `z` elements and `B_n`.
fn decomposition_cases(n: usize) -> Result<Vec<(String, UElem, UElem)>> {
    let mut out = Vec::new();
    let z111 = z_elem(1, ZKind::Triple { i: 0, l: 0, j: 0 })?;
    out.push((
        "t1^2*d1".to_string(),
        expr("t1^2*d1", 1)?,
        pbw::mul(&z111, &expr("d1^-1", 1)?).add(&expr("h1^2*d1^-1 - h1*d1^-1", 1)?),
    ));
    let z1 = z_elem(1, ZKind::Cubic { i: 0 })?;
    out.push((
        "t1^3*d1".to_string(),
        expr("t1^3*d1", 1)?,
        pbw::mul(&z1, &expr("d1^-2", 1)?).add(&expr(
            "3*(t1^2*d1)*(h1 - 1)*d1^-1 - 2*h1*(h1 - 1)*(h1 - 2)*d1^-2",
            1,
        )?),
    ));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (i + 1, j + 1);
            let z = z_elem(n, ZKind::Pair { i, j })?;
            let rhs = pbw::mul(&z, &expr(&format!("d{b}*d{a}^-1"), n)?).add(&expr(&format!("h{a}*d{b}*d{a}^-1"), n)?);
            out.push((format!("t{a}*d{b}"), expr(&format!("t{a}*d{b}"), n)?, rhs));
        }
    }
    for i in 0..n {
        for l in i..n {
            for j in 0..n {
                let (a, c, b) = (i + 1, l + 1, j + 1);
                let z = z_elem(n, ZKind::Triple { i, l, j })?;
                let tail = format!("d{a}^-1*d{c}^-1*d{b}");
                let mut rhs = pbw::mul(&z, &expr(&tail, n)?);
                rhs = rhs.add(&expr(&format!("(t{a}*d{b})*d{a}*d{b}^-1*h{c}*{tail}"), n)?);
                rhs = rhs.add(&expr(&format!("(t{c}*d{b})*d{c}*d{b}^-1*h{a}*{tail}"), n)?);
                rhs = rhs.sub(&expr(&format!("h{c}*h{a}*{tail}"), n)?);
                if i == l {
                    rhs = rhs.sub(&expr(&format!("(t{a}*d{c})*{tail}"), n)?);
                }
                out.push((format!("t{a}*t{c}*d{b}"), expr(&format!("t{a}*t{c}*d{b}"), n)?, rhs));
            }
        }
    }
    Ok(out)
}

/// The displayed identities hold exactly, and `decompose_BH` round-trips them.
pub fn decomposition_identities(n: usize) -> Criterion {
    let cases = match decomposition_cases(n) {
        Ok(c) => c,
        Err(e) => return Criterion::new(5, "decomposition identities", vec![CheckResult::from_error("build", &e)]),
    };
    let mut identity = None;
    let mut round = None;
    for (name, lhs, rhs) in &cases {
        if lhs != rhs && identity.is_none() {
            identity = Some(format!("{}: difference {}", name, pbw::ShowU(&lhs.sub(rhs))));
        }
        let back = decompose_BH(lhs, 3).and_then(|d| recombine(&d));
        match back {
            Ok(b) if &b == lhs => {}
            Ok(b) => {
                round.get_or_insert(format!("{}: recombined to {}", name, pbw::ShowU(&b)));
            }
            Err(e) => {
                round.get_or_insert(format!("{}: {}", name, e));
            }
        }
    }
    Criterion::new(
        5,
        "decomposition identities",
        vec![
            CheckResult::from_witness(format!("{} displayed identities", cases.len()), identity),
            CheckResult::from_witness("decompose_round_trip", round),
        ],
    )
}

/// Ordered `X`-monomials up to `degree` are linearly independent.
pub fn pbw_independence(n: usize, degree: u32) -> Criterion {
    let c = guarded("rank_equals_count", || {
        let monos = x_monomials(n, degree);
        let elems: Vec<UElem> = monos.iter().map(|m| x_monomial_elem(n, m)).collect::<Result<_>>()?;
        let rank = rank_of(&elems);
        Ok((rank != elems.len()).then(|| format!("rank {} < {} monomials", rank, elems.len())))
    });
    Criterion::new(6, "independence of ordered X-monomials", vec![c])
}

fn tensor_inputs(n: usize, dim: usize, degree: u32) -> Vec<TenVec> {
    let mut out = Vec::new();
    for d in 0..=degree as i32 {
        for m in MIndex::of_degree(n, d) {
            for b in 0..dim {
                out.push(TenVec::basis((m.clone(), b)));
            }
        }
    }
    out
}

/// `pi_{k+1} pi_k = 0` on `A^1` and on `P(mu)`, and each `pi_k` commutes with
/// sampled vector fields.
pub fn complex_checks(n: usize, degree: u32, mu: &[Scalar], seed: u64) -> Criterion {
    let modules = vec![
        ("A^1".to_string(), DModule::twisted(vec![Scalar::one(); n])),
        (format!("P({})", show_vec(mu)), DModule::laurent(mu.to_vec())),
    ];
    let mut checks = Vec::new();
    for (label, p) in modules {
        checks.push(guarded(&format!("pi_pi_zero on {}", label), || {
            for k in 0..n.saturating_sub(1) {
                let dim = exterior_power(n, k)?.dim();
                for w in tensor_inputs(n, dim, degree) {
                    let once = pi_map(&p, k, &w)?;
                    let twice = pi_map(&p, k + 1, &once)?;
                    if !twice.is_zero() {
                        return Ok(Some(format!("k = {}, input t^{} (x) v{}", k, w_key(&w).0, w_key(&w).1 + 1)));
                    }
                }
            }
            Ok(None)
        }));
        checks.push(guarded(&format!("pi_equivariant on {}", label), || {
            let mut r = rng(seed, 700);
            for k in 0..n {
                let src = TensorModule::new(p.clone(), exterior_power(n, k)?)?;
                let dst = TensorModule::new(p.clone(), exterior_power(n, k + 1)?)?;
                let inputs = tensor_inputs(n, src.v.dim(), degree.min(2));
                for w in &inputs {
                    for _ in 0..2 {
                        let y = random_term(&mut r, n, 3);
                        let lhs = pi_map(&p, k, &src.apply_gen(&y, w)?)?;
                        let rhs = dst.apply_gen(&y, &pi_map(&p, k, w)?)?;
                        if lhs != rhs {
                            return Ok(Some(format!("k = {}, x = {}, at t^{} (x) v{}", k, y, w_key(w).0, w_key(w).1 + 1)));
                        }
                    }
                }
            }
            Ok(None)
        }));
    }
    Criterion::new(7, "the complex pi", checks)
}

fn w_key(w: &TenVec) -> (MIndex, usize) {
    w.keys().next().cloned().unwrap_or((MIndex::zeros(0), 0))
}

fn show_vec(v: &[Scalar]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn int_weight(n: usize, parts: &[i64]) -> Vec<Scalar> {
    (0..n).map(|i| Scalar::int(parts.get(i).copied().unwrap_or(0))).collect()
}

/// The standard list of modules used by the suite.
pub fn suite_modules(n: usize) -> Result<Vec<(String, GlRep)>> {
    let mut out = vec![
        ("trivial".to_string(), exterior_power(n, 0)?),
        ("natural".to_string(), exterior_power(n, 1)?),
        (format!("V({})", show_vec(&int_weight(n, &[2]))), highest_weight_module(&int_weight(n, &[2]))?),
    ];
    if n >= 2 {
        out.push(("wedge^2".to_string(), exterior_power(n, 2)?));
    }
    Ok(out)
}

/// `wh_1(T(A^1, V)) = 1 (x) V` at the truncation `bound`, stably, and
/// `wh_1(im pi_0)` is one-dimensional.
pub fn whittaker_identification(n: usize, bound: u32) -> Criterion {
    let mut checks = Vec::new();
    let modules = match suite_modules(n) {
        Ok(m) => m,
        Err(e) => return Criterion::new(8, "Whittaker vectors", vec![CheckResult::from_error("modules", &e)]),
    };
    for (label, v) in modules.into_iter().filter(|(l, _)| l != "wedge^2") {
        checks.push(guarded(&format!("wh_1 T(A^1, {})", label), || {
            let wh = whittaker_space(n, &WhSource::Tensor(v.clone()), bound)?.require_stable()?;
            if wh.dim() != v.dim() {
                return Ok(Some(format!("dimension {} != {}", wh.dim(), v.dim())));
            }
            if wh.basis.iter().any(|w| w.keys().any(|(m, _)| !m.is_zero())) {
                return Ok(Some("a Whittaker vector has a nonconstant polynomial factor".into()));
            }
            Ok(None)
        }));
    }
    checks.push(guarded("wh_1 im pi_0 is 1-dimensional", || {
        let wh = whittaker_space(n, &WhSource::ImagePi(0), bound)?.require_stable()?;
        Ok((wh.dim() != 1).then(|| format!("dimension {}", wh.dim())))
    }));
    Criterion::new(8, "Whittaker vectors of tensor modules", checks)
}

/// The closed-formula `z` matrices agree with the action inside `T(A^1, V)`.
pub fn h_action_formulas(n: usize) -> Criterion {
    let modules = match suite_modules(n) {
        Ok(m) => m,
        Err(e) => return Criterion::new(9, "H_n action formulas", vec![CheckResult::from_error("modules", &e)]),
    };
    let checks = modules
        .into_par_iter()
        .filter(|(l, _)| l != "trivial")
        .map(|(label, v)| guarded(&format!("z matrices on {}", label), || make_hrep(v).map(|_| None)))
        .collect();
    Criterion::new(9, "H_n action formulas", checks)
}

/// `Theta(z) v_1` is a Whittaker vector for each `z`, and for `n = 1` the
/// Whittaker vectors of each degree are spanned by `Y`-monomials.
pub fn q1_checks(n: usize, max_degree: u32) -> Criterion {
    let theta = guarded(&format!("theta of every z (n = {})", n), || {
        for kind in ZKind::all(n) {
            if let Err(e) = theta_of(&z_elem(n, kind)?, n) {
                return Ok(Some(format!("{}: {}", kind, e)));
            }
        }
        Ok(None)
    });
    let dims = guarded(&format!("wh_1(Q_1) by degree (n = 1, degree <= {})", max_degree), || {
        let slices = q1_whittaker_dimensions(1, max_degree)?;
        for s in &slices {
            if s.kernel_dim != s.y_monomials || !s.spanned_by_y {
                return Ok(Some(format!(
                    "degree {}: kernel {} vs {} Y-monomials, spanned = {}",
                    s.degree, s.kernel_dim, s.y_monomials, s.spanned_by_y
                )));
            }
        }
        Ok(None)
    });
    Criterion::new(10, "universal Whittaker module", vec![theta, dims])
}

fn interior(win_slices: &[MIndex], radius: i32) -> Vec<MIndex> {
    win_slices
        .iter()
        .filter(|r| r.entries().iter().all(|x| x.abs() < radius) && r.entries().iter().map(|x| x.abs()).sum::<i32>() <= 1)
        .cloned()
        .collect()
}

/// The weight-module table agrees with the decomposition route, and the
/// module axiom holds on interior slices.
pub fn weight_actions(n: usize, radius: i32, alpha: &[Scalar]) -> Criterion {
    let rho = match make_hrep(exterior_power(n, 1).expect("natural")) {
        Ok(r) => r,
        Err(e) => return Criterion::new(11, "weight module actions", vec![CheckResult::from_error("module", &e)]),
    };
    let table = guarded("table matches decomposition", || {
        let win = induce_g1(&rho, alpha.to_vec(), radius)?;
        let slices = win.slices();
        let dim = rho.dim();
        let jobs: Vec<(WinOp, MIndex, usize)> = WinOp::table(n)
            .into_iter()
            .flat_map(|op| slices.iter().flat_map(move |r| (0..dim).map(move |b| (op, r.clone(), b))))
            .collect();
        let bad: Vec<String> = jobs
            .par_iter()
            .map(|(op, r, b)| -> Result<Option<String>> {
                let v = WinVec::basis((r.clone(), *b));
                let (a, c) = (win.apply_op(*op, &v)?, win.apply_witt(&op.elem(n), &v)?);
                Ok((a != c).then(|| format!("{} at {} on v{}", op, r, b + 1)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(bad.into_iter().next())
    });
    let axioms = guarded("module axiom on interior slices", || {
        let win = induce_g1(&rho, alpha.to_vec(), radius)?;
        let inner = interior(&win.slices(), radius);
        let f = check_module_axioms(&win, &inner)?;
        Ok(f.first().map(|a| format!("[{}, {}] at {} on v{}", a.x, a.y, a.slice, a.basis + 1)))
    });
    Criterion::new(11, "weight module actions", vec![table, axioms])
}

/// Solves a linear scalar `a_k + c` for the substitution `a_k = -c`.
fn excluded_point(text: &str) -> Option<(usize, Scalar)> {
    let s = crate::kernel::parse::parse_scalar(text, None).ok()?;
    let k = s.max_param()?;
    let c = s.substitute(k, &Scalar::zero()).ok()?;
    let coeff = &s - &c;
    (c.is_constant() && coeff == Scalar::param(k)).then(|| (k, -c))
}

/// Slice determinants are nonzero for symbolic `alpha`; specializing `alpha`
/// into the excluded set produces a zero determinant.
pub fn cuspidality(n: usize, radius: i32, alpha: &[Scalar]) -> Criterion {
    let mut checks = Vec::new();
    let mut lattice_point = None;
    let modules = [("natural", int_weight(n, &[1])), ("V(2)", int_weight(n, &[2]))];
    for (label, lam) in modules {
        let name = format!("nonvanishing determinants on {}", label);
        let res = (|| -> Result<(Option<String>, Vec<String>)> {
            let rho = make_hrep(highest_weight_module(&lam)?)?;
            let win = induce_g1(&rho, alpha.to_vec(), radius)?;
            let rep = cuspidality_check(&win)?;
            let w = rep.vanishing.first().map(|d| format!("{} on slice {}: det = 0", d.op, d.slice));
            Ok((w, rep.excluded))
        })();
        match res {
            Ok((w, excl)) => {
                if lattice_point.is_none() {
                    lattice_point = excl.iter().find_map(|e| excluded_point(e));
                }
                checks.push(CheckResult::from_witness(name, w));
            }
            Err(e) => checks.push(CheckResult::from_error(name, &e)),
        }
    }
    let negative = guarded("negative control: alpha in the excluded set", || {
        let Some((k, value)) = lattice_point.clone() else {
            return Ok(Some("no excluded shift found for symbolic alpha".into()));
        };
        let special: Vec<Scalar> = alpha
            .iter()
            .map(|a| a.substitute(k, &value))
            .collect::<Result<_>>()?;
        let rho = make_hrep(exterior_power(n, 1)?)?;
        let win = induce_g1(&rho, special.clone(), radius)?;
        let rep = cuspidality_check(&win)?;
        Ok(match rep.vanishing.first() {
            Some(_) => None,
            None => Some(format!("alpha = ({}) gave no zero determinant", show_vec(&special))),
        })
    });
    let witness = lattice_point
        .as_ref()
        .map(|(k, v)| format!("a{} = {}", k + 1, v))
        .unwrap_or_default();
    let negative = match negative.status {
        Status::Pass => CheckResult::pass_with(negative.name, witness),
        _ => negative,
    };
    checks.push(negative);
    Criterion::new(12, "cuspidality on a window", checks)
}

/// Rational roots of a univariate polynomial in `a1`, and the cofactor left
/// after dividing them out.
fn rational_roots(p: &Poly) -> Result<(Vec<BigRational>, Poly)> {
    let coeffs: Vec<BigRational> = p
        .coeffs_in(0)
        .iter()
        .map(|c| c.as_constant().ok_or_else(|| Error::pre("not univariate in a1")))
        .collect::<Result<_>>()?;
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let high = ints.last().cloned().unwrap_or_else(BigInt::one);
    let divisors = |x: &BigInt| -> Result<Vec<i64>> {
        let v = x.abs().to_i64().ok_or_else(|| Error::pre("coefficient too large"))?;
        Ok((1..=v).filter(|d| v % d == 0).collect())
    };
    let mut cands = vec![BigRational::zero()];
    for a in divisors(&low)? {
        for b in divisors(&high)? {
            for s in [1, -1] {
                cands.push(BigRational::new((s * a).into(), b.into()));
            }
        }
    }
    cands.sort();
    cands.dedup();
    let mut rest = p.clone();
    let mut roots = Vec::new();
    for r in cands {
        let f = Poly::var(0).sub(&Poly::constant(r.clone()));
        while let Some(q) = rest.exact_div(&f) {
            if rest.is_zero() {
                break;
            }
            roots.push(r.clone());
            rest = q;
        }
    }
    Ok((roots, rest))
}

/// All solutions `(x, y)` of `e(x) = e(y)` for a pair of eigenvalue functions,
/// as: the diagonal, plus the points `(r, 1 - r)` listed. Fails unless the
/// system has exactly that shape.
fn solve_collisions(e: impl Fn(&Scalar) -> (Scalar, Scalar)) -> Result<Vec<(BigRational, BigRational)>> {
    let (x, y) = (Scalar::param(0), Scalar::param(1));
    let (ex, ey) = (e(&x), e(&y));
    let f1 = (&ex.0 - &ey.0).numerator();
    let f2 = (&ex.1 - &ey.1).numerator();
    let diag = Poly::var(0).sub(&Poly::var(1));
    let q = f1.exact_div(&diag).ok_or_else(|| Error::verify("x - y does not divide the first equation"))?;
    let cs = q.coeffs_in(1);
    if cs.len() != 2 || !cs[1].is_constant() {
        return Err(Error::verify("cofactor is not linear in y"));
    }
    let y_of_x = Scalar::from_poly(cs[0].neg()).checked_div(&Scalar::from_poly(cs[1].clone()))?;
    let g = Scalar::from_poly(f2).substitute(1, &y_of_x)?.numerator();
    if g.is_zero() {
        return Err(Error::verify("second equation vanishes on the whole cofactor curve"));
    }
    let (roots, rest) = rational_roots(&g)?;
    if !rest.is_constant() {
        return Err(Error::verify(format!("irrational solutions remain in {}", Scalar::from_poly(rest))));
    }
    roots
        .into_iter()
        .map(|r| {
            let yv = y_of_x.substitute(0, &Scalar::rational(r.clone()))?;
            let yr = yv.as_rational().cloned().ok_or_else(|| Error::verify("nonconstant y"))?;
            Ok((r, yr))
        })
        .collect()
}

fn dichotomy_holds(sols: &[(BigRational, BigRational)]) -> Option<String> {
    let (zero, one) = (BigRational::zero(), BigRational::one());
    for (x, y) in sols {
        let ok = x == y || (x == &zero && y == &one) || (x == &one && y == &zero);
        if !ok {
            return Some(format!("off-diagonal collision at ({}, {})", x, y));
        }
    }
    let has = |a: &BigRational, b: &BigRational| sols.iter().any(|(x, y)| x == a && y == b);
    (!has(&zero, &one) || !has(&one, &zero)).then(|| "the pair {0, 1} does not collide".to_string())
}

/// The scalar dichotomy by exact solving, and the block separation decision.
pub fn separation(gamma: &[Scalar]) -> Criterion {
    let stated = guarded("dichotomy for (x - x^2, x^3 - x^2)", || {
        let sols = solve_collisions(|x| {
            let x2 = x * x;
            (x - &x2, &(&x2 * x) - &x2)
        })?;
        Ok(dichotomy_holds(&sols))
    });
    let used = guarded("dichotomy for the eigenvalue pair of z_{i,i,i}, z_i", || {
        let sols = solve_collisions(crate::cuspidal::separation::z_eigenvalues)?;
        Ok(dichotomy_holds(&sols))
    });
    let mut lambda = gamma.to_vec();
    lambda[0] = &lambda[0] + &Scalar::ratio(1, 2);
    let disjoint = {
        let r = separation_check(gamma, &lambda);
        CheckResult::from_witness(
            format!("({}) vs ({}) disjoint", show_vec(gamma), show_vec(&lambda)),
            (!r.disjoint).then(|| format!("collision {:?}", r.collision)),
        )
    };
    let same = {
        let r = separation_check(gamma, gamma);
        CheckResult::from_witness(
            "gamma vs gamma collides",
            r.disjoint.then(|| "reported disjoint".to_string()),
        )
    };
    Criterion::new(13, "separation of blocks", vec![stated, used, disjoint, same])
}

/// The round trips recover each module's `z` matrices.
pub fn roundtrips(n: usize, alpha: &[Scalar], radius: i32, bound: u32, extra: Option<&[Scalar]>) -> Criterion {
    let mut targets: Vec<(String, Result<HRep>)> = vec![("natural".into(), exterior_power(n, 1).and_then(make_hrep))];
    let mut weights = vec![int_weight(n, &[1]), int_weight(n, &[2])];
    if n >= 2 {
        weights.push(int_weight(n, &[1, 1]));
    }
    if let Some(l) = extra {
        if !weights.contains(&l.to_vec()) {
            weights.push(l.to_vec());
        }
    }
    for w in weights {
        targets.push((format!("W({})", show_vec(&w)), w_module(&w)));
    }
    let checks = targets
        .into_par_iter()
        .map(|(label, rho)| {
            let name = format!("round trip on {}", label);
            match rho.and_then(|rho| roundtrip(&rho, alpha, radius, bound)) {
                Ok(rep) => CheckResult::from_witness(
                    name,
                    rep.checks
                        .iter()
                        .find(|c| !c.pass)
                        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
                ),
                Err(e) => CheckResult::from_error(name, &e),
            }
        })
        .collect();
    Criterion::new(14, "functor round trips", checks)
}

/// `mu` with an integer coordinate gives a nonzero vector of `T(P(mu), V)`
/// killed by some `d_i`.
pub fn injectivity_control(mu: &[Scalar]) -> Criterion {
    let n = mu.len();
    let mut special = mu.to_vec();
    if special.iter().all(|x| x.as_i64().is_none()) {
        special[0] = Scalar::zero();
    }
    let c = guarded("d_i not injective on T(P(mu), natural)", || {
        let Simplicity::Kernel { i, m } = is_simple_witness(&special) else {
            return Ok(Some("no integer coordinate".into()));
        };
        let tm = TensorModule::new(DModule::laurent(special.clone()), exterior_power(n, 1)?)?;
        let v = TenVec::basis((m.clone(), 0));
        let img = tm.apply(&pbw::d(n, i), &v)?;
        Ok((!img.is_zero()).then(|| format!("d{} t^(mu+{}) (x) v1 = {}", i + 1, m, crate::shenlarsson::tensor::ShowTen(&img))))
    });
    let witness = match is_simple_witness(&special) {
        Simplicity::Kernel { i, m } => format!("mu = ({}): d{} kills t^(mu+{}) (x) v1", show_vec(&special), i + 1, m),
        Simplicity::GenericallySimple => String::new(),
    };
    let c = match c.status {
        Status::Pass => CheckResult::pass_with(c.name, witness),
        _ => c,
    };
    Criterion::new(15, "non-injectivity for integral mu", vec![c])
}

/// Every criterion at the scale of `cfg`.
pub fn run_suite(cfg: &Config) -> Vec<Criterion> {
    let n = cfg.n;
    let d = cfg.degree;
    let jobs: Vec<Box<dyn Fn() -> Criterion + Send + Sync + '_>> = vec![
        Box::new(move || lie_axioms(n.min(3), (d as i32 + 1).min(4), 200, cfg.seed)),
        Box::new(move || phi_homomorphism(n, 100, cfg.seed)),
        Box::new(move || centralizer_membership(n, d as i32)),
        Box::new(n1_closed_formulas),
        Box::new(move || decomposition_identities(n)),
        Box::new(move || pbw_independence(n.min(2), d)),
        Box::new(move || complex_checks(n, d, &cfg.mu, cfg.seed)),
        Box::new(move || whittaker_identification(n, d)),
        Box::new(move || h_action_formulas(n)),
        Box::new(move || q1_checks(n, d + 1)),
        Box::new(move || weight_actions(n, cfg.radius, &cfg.alpha)),
        Box::new(move || cuspidality(n, cfg.radius, &cfg.alpha)),
        Box::new(move || separation(&cfg.gamma)),
        Box::new(move || roundtrips(n, &cfg.alpha, cfg.radius, d, Some(&cfg.lambda))),
        Box::new(move || injectivity_control(&cfg.mu)),
    ];
    jobs.par_iter().map(|f| f()).collect()
}

pub fn config_inputs(cfg: &Config, mut r: Report) -> Report {
    r = r
        .input("n", cfg.n)
        .input("degree", cfg.degree)
        .input("radius", cfg.radius)
        .input("seed", cfg.seed)
        .input("alpha", show_vec(&cfg.alpha))
        .input("lambda", show_vec(&cfg.lambda))
        .input("gamma", show_vec(&cfg.gamma))
        .input("mu", show_vec(&cfg.mu))
        .input("a", show_vec(&cfg.a));
    r
}

/// Runs the suite and assembles the report in criterion order.
pub fn verify_all(cfg: &Config) -> Report {
    let crits = run_suite(cfg);
    let mut report = config_inputs(cfg, Report::new("verify-all"));
    let summary: Vec<serde_json::Value> = crits
        .iter()
        .map(|c| serde_json::json!({"id": c.id, "title": c.title, "pass": c.pass()}))
        .collect();
    report = report.results(summary);
    for c in crits {
        for k in c.checks {
            report = report.check(CheckResult {
                name: format!("{}. {}", c.id, k.name),
                ..k
            });
        }
    }
    report
}
