//! Finite-dimensional `H_n`-modules given by the matrices of the `z` generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::centralizer::{make_x, make_z, XTrace, ZKind};
use crate::error::{Error, Result};
use crate::glrep::{exterior_power, highest_weight_module, GlRep};
use crate::kernel::{MIndex, Matrix, Scalar};
use crate::pbw::UElem;
use crate::shenlarsson::tensor::{TenVec, TensorModule};
use crate::shenlarsson::whittaker::{whittaker_space, WhSource};
use crate::weylmod::DModule;
use crate::witt::WittTerm;

/// The matrix of `z` on a `gl_n`-module `V`, viewed inside `T(A^1, V)`.
pub fn z_matrix_on(v: &GlRep, kind: ZKind) -> Result<Matrix> {
    let e = |i: usize, j: usize| v.e(i, j);
    let delta = |a: usize, b: usize| Scalar::int((a == b) as i64);
    Ok(match kind {
        ZKind::Pair { i, j } => e(i, j).sub(e(i, i))?,
        ZKind::Triple { i, l, j: k } => {
            let mut m = e(l, l).mul(e(i, i))?;
            m = m.sub(&e(i, k).mul(e(l, l))?)?;
            m = m.sub(&e(l, k).mul(e(i, i))?)?;
            m = m.add(&e(i, l).scale(&delta(i, l)))?;
            m = m.add(&e(i, k).scale(&(&delta(l, k) - &delta(i, l))))?;
            m.add(&e(l, k).scale(&(&delta(i, k) - &delta(i, l))))?
        }
        ZKind::Cubic { i } => {
            let x = e(i, i);
            let x2 = x.mul(x)?;
            let x3 = x2.mul(x)?;
            x3.sub(&x2.scale(&Scalar::int(3)))?
                .add(&x.scale(&Scalar::int(2)))?
                .scale(&Scalar::int(2))
        }
    })
}

fn canonical(kind: ZKind) -> ZKind {
    match kind {
        ZKind::Triple { i, l, j } if i > l => ZKind::Triple { i: l, l: i, j },
        k => k,
    }
}

/// Coordinates of each column of `m` in the independent columns of `basis`.
fn restrict(basis: &Matrix, m: &Matrix) -> Result<Matrix> {
    let mut cols = Vec::new();
    for c in 0..m.cols() {
        let col = basis
            .solve(&m.column(c))
            .ok_or_else(|| Error::verify("subspace is not invariant"))?;
        cols.push(col);
    }
    Ok(Matrix::from_columns(basis.cols(), &cols))
}

pub struct HRep {
    v: GlRep,
    /// Coordinates in the basis of `v` of this module's basis vectors.
    sub: Matrix,
    z: BTreeMap<ZKind, Matrix>,
    x_cache: Mutex<HashMap<WittTerm, Matrix>>,
}

impl Clone for HRep {
    fn clone(&self) -> Self {
        HRep {
            v: self.v.clone(),
            sub: self.sub.clone(),
            z: self.z.clone(),
            x_cache: Mutex::new(self.x_cache.lock().expect("cache").clone()),
        }
    }
}

impl std::fmt::Debug for HRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HRep").field("dim", &self.dim()).field("z", &self.z).finish()
    }
}

impl HRep {
    /// The action on all of `V`.
    pub fn from_glrep(v: GlRep) -> Result<Self> {
        let sub = Matrix::identity(v.dim());
        Self::on_subspace(v, sub)
    }

    /// The action on an invariant subspace of `V`, given by basis columns.
    pub fn on_subspace(v: GlRep, sub: Matrix) -> Result<Self> {
        if sub.rows() != v.dim() || sub.rank() != sub.cols() {
            return Err(Error::pre("subspace basis must be independent columns of V"));
        }
        let mut z = BTreeMap::new();
        for kind in ZKind::all(v.n()) {
            let full = z_matrix_on(&v, kind)?;
            z.insert(kind, restrict(&sub, &full.mul(&sub)?)?);
        }
        Ok(HRep {
            v,
            sub,
            z,
            x_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    pub fn dim(&self) -> usize {
        self.sub.cols()
    }

    pub fn glrep(&self) -> &GlRep {
        &self.v
    }

    pub fn subspace(&self) -> &Matrix {
        &self.sub
    }

    pub fn z(&self, kind: ZKind) -> &Matrix {
        &self.z[&canonical(kind)]
    }

    pub fn z_matrices(&self) -> &BTreeMap<ZKind, Matrix> {
        &self.z
    }

    fn tensor(&self) -> Result<TensorModule> {
        TensorModule::new(DModule::twisted(vec![Scalar::one(); self.n()]), self.v.clone())
    }

    /// The matrix of a centralizer element, computed by letting it act on
    /// `1 (x) w` in `T(A^1, V)` for each basis vector `w`.
    pub fn realize(&self, u: &UElem) -> Result<Matrix> {
        let tm = self.tensor()?;
        let n = self.n();
        let mut cols = Vec::new();
        for c in 0..self.dim() {
            let mut w = TenVec::zero();
            for b in 0..self.v.dim() {
                w.add_term((MIndex::zeros(n), b), self.sub[(b, c)].clone());
            }
            let img = tm.apply(u, &w)?;
            let mut coords = vec![Scalar::zero(); self.v.dim()];
            for ((m, b), x) in &img {
                if !m.is_zero() {
                    return Err(Error::pre("element does not preserve the Whittaker vectors 1 (x) V"));
                }
                coords[*b] = x.clone();
            }
            let col = self.sub.solve(&coords).ok_or_else(|| Error::verify("image leaves the subspace"))?;
            cols.push(col);
        }
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    /// The matrix of `X_{m,j}`: the closed formula for the `z` generators,
    /// otherwise the realization inside `T(A^1, V)`.
    pub fn x_matrix(&self, key: &WittTerm) -> Result<Matrix> {
        if let Some(m) = self.x_cache.lock().expect("cache").get(key) {
            return Ok(m.clone());
        }
        let x = make_x(&key.m, key.j)?;
        let m = match x.trace {
            XTrace::Base(kind) => self.z(kind).clone(),
            _ => self.realize(&x.elem)?,
        };
        self.x_cache.lock().expect("cache").insert(key.clone(), m.clone());
        Ok(m)
    }

    /// Product of the `X` matrices of an ordered monomial.
    pub fn x_monomial_matrix(&self, mono: &[(WittTerm, u32)]) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.dim());
        for (t, e) in mono {
            let m = self.x_matrix(t)?;
            for _ in 0..*e {
                acc = acc.mul(&m)?;
            }
        }
        Ok(acc)
    }

    /// Compares each closed-formula matrix with the realized one.
    pub fn check_consistency(&self) -> Result<()> {
        for (kind, m) in &self.z {
            let z = make_z(self.n(), *kind)?;
            let r = self.realize(&z.elem)?;
            if &r != m {
                return Err(Error::verify(format!("{}: closed formula {} differs from the realized {}", kind, m, r)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> HRepJson {
        HRepJson {
            n: self.n(),
            dimension: self.dim(),
            z: self
                .z
                .iter()
                .map(|(k, m)| ZMatrixJson {
                    kind: *k,
                    entries: m.triplets(),
                })
                .collect(),
        }
    }
}

/// Builds the module for `V` and checks it against the realization.
pub fn make_hrep(v: GlRep) -> Result<HRep> {
    let h = HRep::from_glrep(v)?;
    h.check_consistency()?;
    Ok(h)
}

/// `k` with `lambda = delta_k = (1, ..., 1, 0, ..., 0)`, `1 <= k <= n`.
pub fn delta_index(lambda: &[Scalar]) -> Option<usize> {
    let k = lambda.iter().take_while(|x| x.is_one()).count();
    (k >= 1 && lambda[k..].iter().all(Scalar::is_zero)).then_some(k)
}

/// `W(lambda)`: `V(lambda)`, except for `lambda = delta_k` where it is the
/// space of Whittaker vectors in the image of `pi_{k-1}` over `A^1`.
pub fn w_module(lambda: &[Scalar]) -> Result<HRep> {
    let n = lambda.len();
    match delta_index(lambda) {
        Some(k) => {
            let v = exterior_power(n, k)?;
            let wh = whittaker_space(n, &WhSource::ImagePi(k - 1), 2)?.require_stable()?;
            let cols: Vec<Vec<Scalar>> = wh
                .basis
                .iter()
                .map(|w| (0..v.dim()).map(|b| w.coeff(&(MIndex::zeros(n), b))).collect())
                .collect();
            if wh.basis.iter().any(|w| w.keys().any(|(m, _)| !m.is_zero())) {
                return Err(Error::verify("Whittaker vector with a nonconstant polynomial factor"));
            }
            let sub = Matrix::from_columns(v.dim(), &cols);
            HRep::on_subspace(v, sub)
        }
        None => HRep::from_glrep(highest_weight_module(lambda)?),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZMatrixJson {
    pub kind: ZKind,
    pub entries: Vec<(usize, usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRepJson {
    pub n: usize,
    pub dimension: usize,
    pub z: Vec<ZMatrixJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn natural_pair() {
        let v = exterior_power(2, 1).unwrap();
        let h = make_hrep(v.clone()).unwrap();
        let want = v.e(0, 1).sub(v.e(0, 0)).unwrap();
        assert_eq!(h.z(ZKind::Pair { i: 0, j: 1 }), &want);
    }

    #[test]
    fn w_delta1_is_killed_by_pairs() {
        let h = w_module(&lam(&[1, 0])).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.z(ZKind::Pair { i: 0, j: 1 }).is_zero());
        assert!(h.z(ZKind::Pair { i: 1, j: 0 }).is_zero());
    }

    #[test]
    fn cubic_vanishes_on_weight_one() {
        let v = exterior_power(2, 1).unwrap();
        let h = make_hrep(v).unwrap();
        let z1 = h.z(ZKind::Cubic { i: 0 });
        assert!(z1.column(0).iter().all(Scalar::is_zero));
    }

    #[test]
    fn diagonal_generators_commute() {
        let h = w_module(&lam(&[2, 0])).unwrap();
        for i in 0..2 {
            let a = h.z(ZKind::Triple { i, l: i, j: i });
            let b = h.z(ZKind::Cubic { i });
            assert!(a.is_diagonal() && b.is_diagonal());
            assert!(a.commutator(b).unwrap().is_zero());
        }
    }

    #[test]
    fn realized_cubic_generator() {
        let h = HRep::from_glrep(highest_weight_module(&lam(&[1, 0])).unwrap()).unwrap();
        let key = WittTerm::new(MIndex::from_slice(&[2, 1]), 0).unwrap();
        let m = h.x_matrix(&key).unwrap();
        assert_eq!(m.rows(), 2);
    }

    #[test]
    fn json_round_trip() {
        let h = make_hrep(exterior_power(2, 1).unwrap()).unwrap();
        let s = serde_json::to_string(&h.to_json()).unwrap();
        let back: HRepJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h.to_json());
    }
}
