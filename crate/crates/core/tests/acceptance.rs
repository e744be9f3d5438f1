//! The fifteen acceptance criteria. Each prints one PASS or FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{mi, shape_ansatz};
use wittcat::cli::suite::{self, Criterion};
use wittcat::cli::Status;
use wittcat::cuspidal::separation::{scalars_collide, z_eigenvalues};
use wittcat::kernel::{MIndex, Scalar};
use wittcat::witt::{self, WittElem, WittTerm};

const SEED: u64 = 20;

type Poly = BTreeMap<Vec<i32>, Scalar>;

/// Applies a vector field to a polynomial as a derivation.
fn act(x: &WittElem, f: &Poly) -> Poly {
    let mut out = Poly::new();
    for (term, c) in x.iter() {
        for (e, a) in f {
            let k = e[term.j];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[term.j] -= 1;
            for (i, m) in term.m.entries().iter().enumerate() {
                e2[i] += m;
            }
            let v = &(c * a) * &Scalar::int(k as i64);
            let slot = out.entry(e2).or_insert_with(Scalar::zero);
            *slot = &*slot + &v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, v) in b {
        let slot = out.entry(e.clone()).or_insert_with(Scalar::zero);
        *slot = &*slot - v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn random_field(r: &mut ChaCha8Rng, n: usize) -> WittElem {
    let mut m = MIndex::zeros(n);
    for _ in 0..r.gen_range(0..=4) {
        m = m.shift(r.gen_range(0..n), 1);
    }
    WittTerm::new(m, r.gen_range(0..n)).unwrap().elem()
}

/// The bracket agrees with the commutator of derivations on test polynomials.
fn bracket_oracle() -> Option<String> {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=3 {
        for _ in 0..200 {
            let (x, y) = (random_field(&mut r, n), random_field(&mut r, n));
            let br = witt::bracket(&x, &y).unwrap();
            let mut f = Poly::new();
            for _ in 0..3 {
                let e: Vec<i32> = (0..n).map(|_| r.gen_range(0..=3)).collect();
                f.insert(e, Scalar::int(r.gen_range(1..=4)));
            }
            let lhs = act(&br, &f);
            let rhs = poly_sub(&act(&x, &act(&y, &f)), &act(&y, &act(&x, &f)));
            if lhs != rhs {
                return Some(format!("[{}, {}]", witt::ShowWitt(&x), witt::ShowWitt(&y)));
            }
        }
    }
    None
}

/// The dichotomy checked on a grid of rationals by direct comparison.
fn dichotomy_grid(pair: impl Fn(&Scalar) -> (Scalar, Scalar)) -> Option<String> {
    let grid: Vec<Scalar> = (-6..=6)
        .flat_map(|p| [1, 2, 3].map(|q| Scalar::ratio(p, q)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (zero, one) = (Scalar::zero(), Scalar::one());
    for x in &grid {
        for y in &grid {
            let collide = pair(x) == pair(y);
            let expected = x == y || (x == &zero && y == &one) || (x == &one && y == &zero);
            if collide != expected {
                return Some(format!("x = {}, y = {}", x, y));
            }
        }
    }
    None
}

struct Line {
    id: u32,
    title: String,
    failures: Vec<(String, String)>,
}

impl Line {
    fn new(id: u32, title: &str) -> Self {
        Line {
            id,
            title: title.into(),
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, c: Criterion) {
        for ch in c.checks {
            if ch.status != Status::Pass {
                self.failures.push((ch.name, ch.witness.unwrap_or_default()));
            }
        }
    }

    fn oracle(&mut self, name: &str, failure: Option<String>) {
        if let Some(w) = failure {
            self.failures.push((name.into(), w));
        }
    }

    fn print(&self) {
        match self.failures.as_slice() {
            [] => println!("PASS criterion {}: {}", self.id, self.title),
            fs => {
                let w: Vec<String> = fs.iter().map(|(n, w)| format!("{} ({})", n, w)).collect();
                println!("FAIL criterion {}: {}: {}", self.id, self.title, w.join("; "));
            }
        }
    }
}

/// Pure powers `X_{k e_j, j}` with `3 <= k <= 4`.
fn expected_deficient(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for j in 0..n {
        for k in 3..=4 {
            out.insert(format!("X_{{{},{}}}", MIndex::unit(n, j).scale(k), j + 1));
        }
    }
    out
}

fn deficient_reported(c: &Criterion) -> BTreeSet<String> {
    c.checks
        .iter()
        .filter(|ch| ch.name == "x_shape_exact_degrees" && ch.status == Status::Fail)
        .flat_map(|ch| {
            ch.witness
                .as_deref()
                .unwrap_or_default()
                .split("; ")
                .filter_map(|s| s.split(':').next().map(str::to_string))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The linear-algebra ansatz for the shape confirms the pure-power degrees
/// cannot be raised, while a mixed index reaches every degree.
fn shape_oracle() -> Option<String> {
    for k in 3..=4 {
        let m = mi(&[k, 0]);
        let ans = shape_ansatz(&m, 0);
        let top = ans.max_degree(&mi(&[0, 1])).unwrap_or(-1);
        if top >= k - 1 {
            return Some(format!("X_{{{},1}} admits deg g_(0,1) = {}", m, top));
        }
    }
    let m = mi(&[2, 2]);
    let ans = shape_ansatz(&m, 0);
    for r in [mi(&[0, 1]), mi(&[1, 1]), mi(&[2, 0])] {
        if ans.max_degree(&r) != Some(m.abs() - r.abs()) {
            return Some(format!("X_{{(2,2),1}} cannot reach deg g_{} = {}", r, m.abs() - r.abs()));
        }
    }
    None
}

#[test]
fn acceptance_criteria() {
    let alpha = vec![Scalar::param(0), Scalar::param(1)];
    let mu = alpha.clone();
    let mut lines = Vec::new();

    let mut l = Line::new(1, "Lie axioms");
    l.absorb(suite::lie_axioms(3, 4, 200, SEED));
    l.oracle("bracket acts as commutator of derivations", bracket_oracle());
    lines.push(l);

    let mut l = Line::new(2, "phi is an algebra homomorphism");
    l.absorb(suite::phi_homomorphism(2, 100, SEED));
    lines.push(l);

    let mut l = Line::new(3, "centralizer membership and shape of X");
    let c3 = [suite::centralizer_membership(2, 4), suite::centralizer_membership(3, 4)];
    let deficient: Vec<BTreeSet<String>> = c3.iter().map(deficient_reported).collect();
    let other_failures: Vec<String> = c3
        .iter()
        .flat_map(|c| c.checks.iter())
        .filter(|ch| ch.status != Status::Pass && ch.name != "x_shape_exact_degrees")
        .map(|ch| ch.name.clone())
        .collect();
    for c in c3 {
        l.absorb(c);
    }
    l.oracle("independent shape ansatz", shape_oracle());
    lines.push(l);

    let mut l = Line::new(4, "n = 1 closed formulas");
    l.absorb(suite::n1_closed_formulas());
    lines.push(l);

    let mut l = Line::new(5, "decomposition identities");
    l.absorb(suite::decomposition_identities(2));
    l.absorb(suite::decomposition_identities(3));
    lines.push(l);

    let mut l = Line::new(6, "PBW independence");
    l.absorb(suite::pbw_independence(1, 3));
    l.absorb(suite::pbw_independence(2, 3));
    lines.push(l);

    let mut l = Line::new(7, "complex property and equivariance");
    l.absorb(suite::complex_checks(2, 3, &mu, SEED));
    l.absorb(suite::complex_checks(3, 3, &[Scalar::param(0), Scalar::param(1), Scalar::param(2)], SEED));
    lines.push(l);

    let mut l = Line::new(8, "Whittaker identification");
    l.absorb(suite::whittaker_identification(2, 3));
    lines.push(l);

    let mut l = Line::new(9, "H-action formulas");
    l.absorb(suite::h_action_formulas(2));
    lines.push(l);

    let mut l = Line::new(10, "Q_1 checks");
    l.absorb(suite::q1_checks(1, 4));
    lines.push(l);

    let mut l = Line::new(11, "weight module actions");
    l.absorb(suite::weight_actions(2, 2, &alpha));
    lines.push(l);

    let mut l = Line::new(12, "cuspidality");
    l.absorb(suite::cuspidality(2, 2, &alpha));
    lines.push(l);

    let mut l = Line::new(13, "separation");
    l.absorb(suite::separation(&[Scalar::param(0), Scalar::param(0)]));
    l.oracle(
        "grid dichotomy for (x - x^2, x^3 - x^2)",
        dichotomy_grid(|x| (x - &(x * x), &(&(x * x) * x) - &(x * x))),
    );
    l.oracle("grid dichotomy for the z eigenvalues", dichotomy_grid(z_eigenvalues));
    l.oracle(
        "scalars_collide matches the eigenvalue pair",
        (!scalars_collide(&Scalar::int(0), &Scalar::int(1)) || scalars_collide(&Scalar::int(2), &Scalar::int(3)))
            .then(|| "wrong verdict on 0, 1 or 2, 3".into()),
    );
    lines.push(l);

    let mut l = Line::new(14, "functor round trips");
    l.absorb(suite::roundtrips(2, &alpha, 2, 3, None));
    lines.push(l);

    let mut l = Line::new(15, "non-injectivity for integral mu");
    l.absorb(suite::injectivity_control(&[Scalar::int(2), Scalar::param(1)]));
    l.absorb(suite::injectivity_control(&mu));
    lines.push(l);

    for l in &lines {
        l.print();
    }

    // Criterion 3 fails only through the exact degree count, at the pure
    // powers; membership holds for every generator.
    assert!(other_failures.is_empty(), "{:?}", other_failures);
    assert_eq!(deficient[0], expected_deficient(2));
    assert_eq!(deficient[1], expected_deficient(3));
    for l in &lines {
        if l.id == 3 {
            assert!(l.failures.iter().all(|(n, _)| n == "x_shape_exact_degrees"));
        } else {
            assert!(l.failures.is_empty(), "criterion {}: {:?}", l.id, l.failures);
        }
    }
}
