//! The maps `pi_k: T(P, wedge^k) -> T(P, wedge^{k+1})`,
//! `p (x) v -> sum_j d_j p (x) e_j ^ v`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::glrep::wedge_basis;
use crate::kernel::Scalar;
use crate::weylmod::{DModule, DVec, WeylOp};

use super::tensor::{pure, TenVec};

/// `e_j ^ e_S` as a sorted set and sign, or `None` when `j` is in `S`.
pub fn wedge_insert(j: usize, set: &[usize]) -> Option<(Vec<usize>, i64)> {
    if set.contains(&j) {
        return None;
    }
    let before = set.iter().filter(|&&s| s < j).count();
    let mut out = set.to_vec();
    out.insert(before, j);
    Some((out, if before % 2 == 0 { 1 } else { -1 }))
}

pub fn pi_map(p: &DModule, k: usize, w: &TenVec) -> Result<TenVec> {
    let n = p.n();
    if k >= n {
        return Err(Error::pre(format!("pi_{} is undefined for n = {}", k, n)));
    }
    let src = wedge_basis(n, k);
    let dst: BTreeMap<Vec<usize>, usize> = wedge_basis(n, k + 1).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = TenVec::zero();
    for ((m, b), c) in w {
        let set = src
            .get(*b)
            .ok_or_else(|| Error::pre(format!("v{} is not a basis vector of the exterior power {}", b + 1, k)))?;
        for j in 0..n {
            if let Some((t, sign)) = wedge_insert(j, set) {
                let dp = p.apply(WeylOp::D(j), &DVec::term(m.clone(), c * &Scalar::int(sign)))?;
                out = out.add(&pure(&dp, dst[&t]));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::MIndex;

    #[test]
    fn pi0_on_constant() {
        let p = DModule::twisted(vec![Scalar::one(), Scalar::one()]);
        let w = pure(&p.unit(), 0);
        let got = pi_map(&p, 0, &w).unwrap();
        let want = pure(&p.unit(), 0).add(&pure(&p.unit(), 1));
        assert_eq!(got, want);
    }

    #[test]
    fn square_is_zero() {
        let p = DModule::twisted(vec![Scalar::int(2), Scalar::one(), Scalar::ratio(1, 3)]);
        let w: TenVec = [
            ((MIndex::from_slice(&[2, 1, 0]), 0), Scalar::one()),
            ((MIndex::from_slice(&[0, 3, 1]), 0), Scalar::int(-4)),
        ]
        .into_iter()
        .collect();
        let once = pi_map(&p, 0, &w).unwrap();
        assert!(!once.is_zero());
        assert!(pi_map(&p, 1, &once).unwrap().is_zero());
    }

    #[test]
    fn top_degree_rejected() {
        let p = DModule::twisted(vec![Scalar::one()]);
        assert!(pi_map(&p, 1, &TenVec::zero()).is_err());
    }
}
