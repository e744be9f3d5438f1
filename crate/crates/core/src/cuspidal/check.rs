//! Injectivity of `d_k`, `t_i d_j` and `t_i E_n` on every slice of a window.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::kernel::{Poly, Scalar};

use super::window::{WeightWindow, WinOp};

#[derive(Clone, Debug, Serialize)]
pub struct SliceDet {
    pub op: String,
    pub slice: String,
    pub det: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspidalityReport {
    pub radius: i32,
    pub alpha: Vec<Scalar>,
    pub determinants: Vec<SliceDet>,
    /// Slices where some operator fails to be injective.
    pub vanishing: Vec<SliceDet>,
    /// Linear factors `a_k + c` or `a_1 + ... + a_n + c` of the determinants,
    /// i.e. integer shifts of the parameters that would break injectivity.
    pub excluded: Vec<String>,
    pub cuspidal_on_window: bool,
}

fn operators(n: usize) -> Vec<WinOp> {
    let mut ops: Vec<WinOp> = (0..n).map(WinOp::D).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                ops.push(WinOp::T(i, j));
            }
        }
    }
    ops.extend((0..n).map(WinOp::TE));
    ops
}

fn linear_factors(dets: &[SliceDet], n: usize, span: i64) -> Vec<String> {
    let mut candidates: Vec<Poly> = Vec::new();
    let sum = (0..n).fold(Poly::zero(), |acc, k| acc.add(&Poly::var(k)));
    for c in -span..=span {
        let cp = Poly::constant(BigRational::from_integer(c.into()));
        candidates.extend((0..n).map(|k| Poly::var(k).add(&cp)));
        if n > 1 {
            candidates.push(sum.add(&cp));
        }
    }
    let nums: Vec<Poly> = dets.iter().map(|d| d.det.numerator()).filter(|p| !p.is_constant()).collect();
    candidates
        .into_iter()
        .filter(|f| nums.iter().any(|p| p.exact_div(f).is_some()))
        .map(|f| Scalar::from_poly(f).to_string())
        .collect()
}

pub fn cuspidality_check(win: &WeightWindow<'_>) -> Result<CuspidalityReport> {
    let n = win.n();
    let ops = operators(n);
    let jobs: Vec<_> = win.slices().into_iter().flat_map(|r| ops.iter().map(move |op| (*op, r.clone()))).collect();
    let determinants: Vec<SliceDet> = jobs
        .par_iter()
        .map(|(op, r)| {
            let (_, m) = win.block(*op, r)?;
            Ok(SliceDet {
                op: op.to_string(),
                slice: r.to_string(),
                det: m.det()?,
            })
        })
        .collect::<Result<_>>()?;
    let vanishing: Vec<SliceDet> = determinants.iter().filter(|d| d.det.is_zero()).cloned().collect();
    let span = win.radius() as i64 + win.dim() as i64 + 4;
    let excluded = linear_factors(&determinants, n, span);
    Ok(CuspidalityReport {
        radius: win.radius(),
        alpha: win.alpha().to_vec(),
        cuspidal_on_window: vanishing.is_empty(),
        determinants,
        vanishing,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal::hrep::make_hrep;
    use crate::cuspidal::window::induce_g1;
    use crate::glrep::exterior_power;
    use crate::kernel::MIndex;

    #[test]
    fn symbolic_natural_is_cuspidal() {
        let rho = make_hrep(exterior_power(2, 1).unwrap()).unwrap();
        let win = induce_g1(&rho, vec![Scalar::param(0), Scalar::param(1)], 1).unwrap();
        let rep = cuspidality_check(&win).unwrap();
        assert!(rep.cuspidal_on_window);
        assert!(!rep.excluded.is_empty());
        let t12 = rep
            .determinants
            .iter()
            .find(|d| d.op == "t1*d2" && d.slice == MIndex::zeros(2).to_string())
            .unwrap();
        // det of E12 - E11 + (a1 + 1) on the natural module: (a1 + 1 - 1)(a1 + 1).
        let a1 = Scalar::param(0);
        assert_eq!(t12.det, &a1 * &(&a1 + &Scalar::one()));
    }

    #[test]
    fn trivial_at_zero_fails() {
        let rho = make_hrep(exterior_power(2, 0).unwrap()).unwrap();
        let win = induce_g1(&rho, vec![Scalar::zero(), Scalar::zero()], 1).unwrap();
        let rep = cuspidality_check(&win).unwrap();
        assert!(!rep.cuspidal_on_window);
        assert!(rep.vanishing.iter().any(|d| d.op.contains('E')));
        assert!(rep.vanishing.iter().all(|d| !d.op.starts_with('d')));
    }
}
