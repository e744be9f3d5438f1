#![allow(dead_code)]

use std::collections::BTreeMap;

use wittcat::kernel::{MIndex, Matrix, Scalar};
use wittcat::pbw::{self, PBWMonomial, UElem};
use wittcat::witt::WittTerm;

pub fn mi(v: &[i32]) -> MIndex {
    MIndex::from_slice(v)
}

/// Exponent vectors of total degree `<= d` in `n` variables.
pub fn exps_upto(n: usize, d: i32) -> Vec<MIndex> {
    (0..=d).flat_map(|k| MIndex::of_degree(n, k)).collect()
}

pub fn h_power(a: &MIndex) -> UElem {
    let n = a.n();
    let mut parts = vec![pbw::one(n)];
    for i in 0..n {
        for _ in 0..a[i] {
            parts.push(pbw::h(n, i));
        }
    }
    pbw::normal_form(&parts).unwrap()
}

/// Solutions of the centralizer condition inside the span of the allowed
/// shape for `X_{m,j}`, solved directly by linear algebra.
pub struct Ansatz {
    /// `(r, a)` for `(t^r d_j) h^a d^{r-e_j}`; `r = 0` marks a pure `h^a`.
    pub unknowns: Vec<(MIndex, MIndex)>,
    pub particular: Vec<Scalar>,
    pub null: Vec<Vec<Scalar>>,
}

impl Ansatz {
    /// Whether some solution has a nonzero coefficient at `(r, a)`.
    pub fn can_be_nonzero(&self, r: &MIndex, a: &MIndex) -> bool {
        let k = self
            .unknowns
            .iter()
            .position(|u| u.0 == *r && u.1 == *a)
            .expect("unknown present");
        !self.particular[k].is_zero() || self.null.iter().any(|v| !v[k].is_zero())
    }

    /// The highest `|a|` reachable with a nonzero coefficient for this `r`.
    pub fn max_degree(&self, r: &MIndex) -> Option<i32> {
        self.unknowns
            .iter()
            .filter(|u| u.0 == *r && self.can_be_nonzero(&u.0, &u.1))
            .map(|u| u.1.abs())
            .max()
    }
}

pub fn shape_ansatz(m: &MIndex, j: usize) -> Ansatz {
    let n = m.n();
    let ej = MIndex::unit(n, j);
    let basis_elem = |r: &MIndex, a: &MIndex| -> UElem {
        if r.is_zero() {
            return h_power(a);
        }
        let y = pbw::gen(&WittTerm::new(r.clone(), j).unwrap());
        pbw::normal_form(&[y, h_power(a), pbw::d_pow(r - &ej)]).unwrap()
    };
    let mut unknowns = Vec::new();
    for deg in 1..m.abs() {
        for r in MIndex::of_degree(n, deg) {
            if r == ej {
                continue;
            }
            for a in exps_upto(n, m.abs() - r.abs()) {
                unknowns.push((r.clone(), a));
            }
        }
    }
    for a in exps_upto(n, m.abs()) {
        if !a.is_zero() {
            unknowns.push((MIndex::zeros(n), a));
        }
    }
    let lead = basis_elem(m, &MIndex::zeros(n));
    let comms = |x: &UElem| -> Vec<UElem> {
        (0..n).map(|k| pbw::commutator(&pbw::d(n, k), x)).collect()
    };
    let cols: Vec<Vec<UElem>> = unknowns.iter().map(|(r, a)| comms(&basis_elem(r, a))).collect();
    let rhs = comms(&lead);
    let mut rows: BTreeMap<(usize, PBWMonomial), usize> = BTreeMap::new();
    for c in cols.iter().chain(std::iter::once(&rhs)) {
        for (k, e) in c.iter().enumerate() {
            for mono in e.keys() {
                let len = rows.len();
                rows.entry((k, mono.clone())).or_insert(len);
            }
        }
    }
    let mut dense = vec![vec![Scalar::zero(); unknowns.len()]; rows.len()];
    let mut b = vec![Scalar::zero(); rows.len()];
    for (col, c) in cols.iter().enumerate() {
        for (k, e) in c.iter().enumerate() {
            for (mono, v) in e.iter() {
                dense[rows[&(k, mono.clone())]][col] = v.clone();
            }
        }
    }
    let a = Matrix::from_rows(dense).unwrap();
    for (k, e) in rhs.iter().enumerate() {
        for (mono, v) in e.iter() {
            b[rows[&(k, mono.clone())]] = -v;
        }
    }
    let particular = a.solve(&b).expect("the constructed X is a solution");
    let null = a.nullspace();
    Ansatz {
        unknowns,
        particular,
        null,
    }
}
