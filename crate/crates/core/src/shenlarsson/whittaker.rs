//! Whittaker vectors `wh_1(M) = {v : d_i v = v}` in tensor modules over `A^1`,
//! computed on degree truncations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::glrep::{exterior_power, GlRep};
use crate::kernel::combo::{combine, to_columns};
use crate::kernel::{MIndex, Scalar};
use crate::weylmod::{DModule, WeylOp};

use super::complex::pi_map;
use super::tensor::{TenVec, TensorModule};

#[derive(Clone, Debug)]
pub enum WhSource {
    /// `T(A^1, V)` itself.
    Tensor(GlRep),
    /// `im pi_k` inside `T(A^1, wedge^{k+1})`.
    ImagePi(usize),
    /// `ker pi_k` inside `T(A^1, wedge^k)`.
    KernelPi(usize),
}

#[derive(Clone, Debug)]
pub struct WhReport {
    pub bound: u32,
    pub basis: Vec<TenVec>,
    /// Dimension at `bound - 1`, when `bound > 0`.
    pub previous_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhSummary {
    pub bound: u32,
    pub dim: usize,
    pub previous_dim: Option<usize>,
    pub stable: bool,
    pub basis: Vec<String>,
}

impl WhReport {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The dimension did not change between the last two bounds.
    pub fn stable(&self) -> bool {
        self.previous_dim == Some(self.dim())
    }

    pub fn require_stable(self) -> Result<Self> {
        if self.stable() {
            Ok(self)
        } else {
            Err(Error::Unstable(format!(
                "Whittaker dimension {} at bound {} differs from {:?} at bound {}",
                self.dim(),
                self.bound,
                self.previous_dim,
                self.bound.saturating_sub(1)
            )))
        }
    }

    pub fn summary(&self) -> WhSummary {
        WhSummary {
            bound: self.bound,
            dim: self.dim(),
            previous_dim: self.previous_dim,
            stable: self.stable(),
            basis: self.basis.iter().map(|v| super::tensor::ShowTen(v).to_string()).collect(),
        }
    }
}

fn ones(n: usize) -> DModule {
    DModule::twisted(vec![Scalar::one(); n])
}

fn truncated_basis(n: usize, dim: usize, bound: u32) -> Vec<TenVec> {
    let mut out = Vec::new();
    for d in 0..=bound as i32 {
        for m in MIndex::of_degree(n, d) {
            for b in 0..dim {
                out.push(TenVec::basis((m.clone(), b)));
            }
        }
    }
    out
}

/// A basis of the subspace described by `source`, truncated at polynomial degree `bound`.
fn ambient(n: usize, source: &WhSource, bound: u32) -> Result<(TensorModule, Vec<TenVec>)> {
    let p = ones(n);
    match source {
        WhSource::Tensor(v) => {
            let tm = TensorModule::new(p, v.clone())?;
            let basis = truncated_basis(n, v.dim(), bound);
            Ok((tm, basis))
        }
        WhSource::ImagePi(k) => {
            let src = exterior_power(n, *k)?;
            let dst = exterior_power(n, k + 1)?;
            let imgs = truncated_basis(n, src.dim(), bound)
                .iter()
                .map(|w| pi_map(&p, *k, w))
                .collect::<Result<Vec<_>>>()?;
            Ok((TensorModule::new(p, dst)?, independent(imgs)))
        }
        WhSource::KernelPi(k) => {
            let src = exterior_power(n, *k)?;
            let basis = truncated_basis(n, src.dim(), bound);
            let imgs = basis.iter().map(|w| pi_map(&p, *k, w)).collect::<Result<Vec<_>>>()?;
            let kernel = if imgs.iter().all(|v| v.is_zero()) {
                basis.clone()
            } else {
                let (m, _) = to_columns(&imgs);
                m.nullspace().iter().map(|c| combine(&basis, c)).collect()
            };
            Ok((TensorModule::new(p, src)?, kernel))
        }
    }
}

fn independent(vecs: Vec<TenVec>) -> Vec<TenVec> {
    let nonzero: Vec<TenVec> = vecs.into_iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return nonzero;
    }
    let (m, _) = to_columns(&nonzero);
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|c| nonzero[c].clone()).collect()
}

fn kernel_at(n: usize, source: &WhSource, bound: u32) -> Result<Vec<TenVec>> {
    let (tm, span) = ambient(n, source, bound)?;
    if span.is_empty() {
        return Ok(span);
    }
    let mut images = Vec::new();
    for v in &span {
        let mut stacked = TenVec::zero();
        for i in 0..n {
            let dv = tm.on_p(v, |p| tm.p.apply(WeylOp::D(i), p))?.sub(v);
            // Tag each operator's output with a distinct offset in the V index.
            for ((m, b), c) in &dv {
                stacked.add_term((m.clone(), b + i * tm.v.dim()), c.clone());
            }
        }
        images.push(stacked);
    }
    let coeffs = if images.iter().all(|v| v.is_zero()) {
        (0..span.len())
            .map(|i| {
                let mut c = vec![Scalar::zero(); span.len()];
                c[i] = Scalar::one();
                c
            })
            .collect()
    } else {
        to_columns(&images).0.nullspace()
    };
    Ok(coeffs.iter().map(|c| combine(&span, c)).collect())
}

/// Exact joint kernel of the `d_i - 1` on the degree-`bound` truncation, with
/// the dimension at `bound - 1` for the stability check.
pub fn whittaker_space(n: usize, source: &WhSource, bound: u32) -> Result<WhReport> {
    if let WhSource::Tensor(v) = source {
        if v.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.n(),
            });
        }
    }
    let basis = kernel_at(n, source, bound)?;
    let previous_dim = if bound > 0 {
        Some(kernel_at(n, source, bound - 1)?.len())
    } else {
        None
    };
    Ok(WhReport {
        bound,
        basis,
        previous_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shenlarsson::tensor::pure;

    #[test]
    fn constants_for_gl1() {
        let v = exterior_power(1, 1).unwrap();
        let r = whittaker_space(1, &WhSource::Tensor(v), 3).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.stable());
        assert_eq!(r.basis[0], TenVec::basis((MIndex::zeros(1), 0)));
    }

    #[test]
    fn trivial_module() {
        let v = exterior_power(2, 0).unwrap();
        let r = whittaker_space(2, &WhSource::Tensor(v), 2).unwrap();
        assert_eq!(r.dim(), 1);
    }

    #[test]
    fn image_of_pi0() {
        let r = whittaker_space(2, &WhSource::ImagePi(0), 2).unwrap();
        assert_eq!(r.dim(), 1);
        let p = ones(2);
        let expect = pure(&p.unit(), 0).add(&pure(&p.unit(), 1));
        let (m, _) = to_columns(&[r.basis[0].clone(), expect]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn pi0_injective() {
        let r = ambient(2, &WhSource::KernelPi(0), 3).unwrap();
        assert!(r.1.is_empty());
    }
}
