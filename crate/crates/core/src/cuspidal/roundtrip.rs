//! Windowed checks that the Whittaker and weight-space functors undo the
//! induction functors.

use serde::Serialize;

use crate::centralizer::{make_z, ZKind};
use crate::error::Result;
use crate::kernel::{MIndex, Matrix, Scalar};
use crate::shenlarsson::tensor::TensorModule;
use crate::shenlarsson::whittaker::{whittaker_space, WhSource};
use crate::weylmod::DModule;

use super::hrep::{delta_index, HRep};
use super::window::{induce_g1, WinOp, WinVec};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>) -> Self {
        Check {
            name: name.into(),
            pass: failure.is_none(),
            witness: failure,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub checks: Vec<Check>,
}

impl RoundTripReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `wh_1(T(A^1, V))` (or the image of `pi_{k-1}` for `W(delta_k)`) recovers
/// the module with the same `z` matrices.
fn whittaker_side(rho: &HRep, bound: u32) -> Result<Check> {
    let n = rho.n();
    let v = rho.glrep();
    let source = match (rho.dim() == v.dim(), v.highest_weight().and_then(delta_index)) {
        (false, Some(k)) => WhSource::ImagePi(k - 1),
        _ => WhSource::Tensor(v.clone()),
    };
    let wh = whittaker_space(n, &source, bound)?;
    if !wh.stable() {
        return Ok(Check::new("whittaker functor", Some(format!("unstable at bound {}", bound))));
    }
    if wh.dim() != rho.dim() {
        return Ok(Check::new(
            "whittaker functor",
            Some(format!("dimension {} != {}", wh.dim(), rho.dim())),
        ));
    }
    let coords: Vec<Vec<Scalar>> = wh
        .basis
        .iter()
        .map(|w| (0..v.dim()).map(|b| w.coeff(&(MIndex::zeros(n), b))).collect())
        .collect();
    let b = Matrix::from_columns(v.dim(), &coords);
    // Change of basis from the Whittaker basis to the module's basis.
    let mut cols = Vec::new();
    for c in 0..b.cols() {
        match rho.subspace().solve(&b.column(c)) {
            Some(x) => cols.push(x),
            None => return Ok(Check::new("whittaker functor", Some("Whittaker vectors leave the module".into()))),
        }
    }
    let change = Matrix::from_columns(rho.dim(), &cols);
    let inv = change.inverse()?;
    let tm = TensorModule::new(DModule::twisted(vec![Scalar::one(); n]), v.clone())?;
    for kind in ZKind::all(n) {
        let z = make_z(n, kind)?;
        let mut img_cols = Vec::new();
        for w in &wh.basis {
            let img = tm.apply(&z.elem, w)?;
            let y: Vec<Scalar> = (0..v.dim()).map(|b| img.coeff(&(MIndex::zeros(n), b))).collect();
            match b.solve(&y) {
                Some(x) => img_cols.push(x),
                None => return Ok(Check::new("whittaker functor", Some(format!("{} leaves wh_1", kind)))),
            }
        }
        let realized = Matrix::from_columns(wh.dim(), &img_cols);
        let expected = inv.mul(rho.z(kind))?.mul(&change)?;
        if realized != expected {
            return Ok(Check::new("whittaker functor", Some(format!("{} matrices differ", kind))));
        }
    }
    Ok(Check::new("whittaker functor", None))
}

/// The `alpha`-weight space of the induced window, with `z` acting as an
/// element of the localized enveloping algebra, returns the `z` matrices.
fn weight_side(rho: &HRep, alpha: &[Scalar], radius: i32) -> Result<Check> {
    let n = rho.n();
    let win = induce_g1(rho, alpha.to_vec(), radius)?;
    let r0 = MIndex::zeros(n);
    for kind in ZKind::all(n) {
        let z = make_z(n, kind)?;
        let mut cols = Vec::new();
        for b in 0..rho.dim() {
            let img = win.apply_u(&z.elem, &WinVec::basis((r0.clone(), b)))?;
            if img.keys().any(|(r, _)| r != &r0) {
                return Ok(Check::new("weight functor", Some(format!("{} leaves the alpha weight space", kind))));
            }
            cols.push((0..rho.dim()).map(|k| img.coeff(&(r0.clone(), k))).collect());
        }
        let m = Matrix::from_columns(rho.dim(), &cols);
        if &m != rho.z(kind) {
            return Ok(Check::new("weight functor", Some(format!("{}: {} != {}", kind, m, rho.z(kind)))));
        }
    }
    Ok(Check::new("weight functor", None))
}

/// Every slice of the window is an `h`-eigenspace with eigenvalue in `alpha + Z^n`.
fn support_side(rho: &HRep, alpha: &[Scalar], radius: i32) -> Result<Check> {
    let n = rho.n();
    let win = induce_g1(rho, alpha.to_vec(), radius)?;
    for r in win.slices() {
        for b in 0..rho.dim() {
            let v = WinVec::basis((r.clone(), b));
            for k in 0..n {
                let img = win.apply_witt(&WinOp::H(k).elem(n), &v)?;
                let want = v.scale(&win.weight(&r)[k]);
                let shift = &win.weight(&r)[k] - &alpha[k];
                if img != want || shift.as_i64().is_none() {
                    return Ok(Check::new("support", Some(format!("h{} at slice {}", k + 1, r))));
                }
            }
        }
    }
    Ok(Check::new("support", None))
}

pub fn roundtrip(rho: &HRep, alpha: &[Scalar], radius: i32, bound: u32) -> Result<RoundTripReport> {
    Ok(RoundTripReport {
        checks: vec![
            whittaker_side(rho, bound)?,
            weight_side(rho, alpha, radius)?,
            support_side(rho, alpha, radius)?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal::hrep::{make_hrep, w_module};
    use crate::glrep::exterior_power;

    fn alpha() -> Vec<Scalar> {
        vec![Scalar::param(0), Scalar::param(1)]
    }

    #[test]
    fn natural_module() {
        let rho = make_hrep(exterior_power(2, 1).unwrap()).unwrap();
        let rep = roundtrip(&rho, &alpha(), 1, 2).unwrap();
        assert!(rep.pass(), "{:?}", rep);
    }

    #[test]
    fn w_delta1() {
        let rho = w_module(&[Scalar::one(), Scalar::zero()]).unwrap();
        let rep = roundtrip(&rho, &alpha(), 1, 2).unwrap();
        assert!(rep.pass(), "{:?}", rep);
    }
}
