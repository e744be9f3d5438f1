//! Finite-dimensional `gl_n`-modules given by the matrices of the `E_ij`.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Scalar, SparseCombo};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlRep {
    n: usize,
    /// `e[i][j]` is the matrix of `E_{i+1,j+1}`.
    e: Vec<Vec<Matrix>>,
    weights: Vec<Vec<Scalar>>,
    highest: Option<Vec<Scalar>>,
}

impl GlRep {
    /// Assembles a module and checks the commutation relations and weights.
    pub fn new(e: Vec<Vec<Matrix>>, weights: Vec<Vec<Scalar>>, highest: Option<Vec<Scalar>>) -> Result<Self> {
        let n = e.len();
        let dim = weights.len();
        for row in &e {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for m in row {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: m.rows(),
                    });
                }
            }
        }
        let rep = GlRep {
            n,
            e,
            weights,
            highest,
        };
        rep.check()?;
        Ok(rep)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Matrix of `E_{i+1,j+1}` (zero-based indices).
    pub fn e(&self, i: usize, j: usize) -> &Matrix {
        &self.e[i][j]
    }

    pub fn weights(&self) -> &[Vec<Scalar>] {
        &self.weights
    }

    pub fn highest_weight(&self) -> Option<&[Scalar]> {
        self.highest.as_deref()
    }

    /// Verifies `[E_ij, E_kl] = d_jk E_il - d_li E_kj`, the recorded weights,
    /// and the highest-weight conditions when a highest weight is recorded.
    pub fn check(&self) -> Result<()> {
        let n = self.n;
        let dim = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = self.e[i][j].commutator(&self.e[k][l])?;
                        let mut rhs = Matrix::zeros(dim, dim);
                        if j == k {
                            rhs = rhs.add(&self.e[i][l])?;
                        }
                        if l == i {
                            rhs = rhs.sub(&self.e[k][j])?;
                        }
                        if lhs != rhs {
                            return Err(Error::verify(format!(
                                "[E{}{}, E{}{}] violates the gl_n relation",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        for (b, w) in self.weights.iter().enumerate() {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            for i in 0..n {
                for r in 0..dim {
                    let want = if r == b { w[i].clone() } else { Scalar::zero() };
                    if self.e[i][i][(r, b)] != want {
                        return Err(Error::verify(format!("basis vector {} is not a weight vector", b)));
                    }
                }
            }
        }
        if let Some(lambda) = &self.highest {
            let Some(top) = self.weights.iter().position(|w| w == lambda) else {
                return Err(Error::verify("no vector of the highest weight"));
            };
            for i in 0..n {
                for j in i + 1..n {
                    if !self.e[i][j].column(top).iter().all(Scalar::is_zero) {
                        return Err(Error::verify(format!("E{}{} does not kill the highest weight vector", i + 1, j + 1)));
                    }
                }
            }
            let lowering: Vec<&Matrix> = (0..n.saturating_sub(1)).map(|i| &self.e[i + 1][i]).collect();
            if cyclic_span(&lowering, top, dim) != dim {
                return Err(Error::verify("module is not generated from the highest weight vector"));
            }
        }
        Ok(())
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<Vec<Scalar>, Vec<usize>> {
        let mut out: BTreeMap<Vec<Scalar>, Vec<usize>> = BTreeMap::new();
        for (b, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(b);
        }
        out
    }

    /// Adds `c` to every `E_ii`, i.e. tensors with a power of the determinant.
    pub fn twist(&self, c: &Scalar) -> GlRep {
        let mut e = self.e.clone();
        let shift = Matrix::scalar(self.dim(), c);
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = row[i].add(&shift).expect("square");
        }
        GlRep {
            n: self.n,
            e,
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().map(|x| x + c).collect())
                .collect(),
            highest: self.highest.as_ref().map(|w| w.iter().map(|x| x + c).collect()),
        }
    }

    pub fn to_json(&self) -> GlRepJson {
        let mut matrices = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                matrices.push(MatrixJson {
                    i: i + 1,
                    j: j + 1,
                    entries: self.e[i][j].triplets(),
                });
            }
        }
        GlRepJson {
            n: self.n,
            dimension: self.dim(),
            highest_weight: self.highest.clone(),
            weights: self.weights.clone(),
            matrices,
        }
    }

    /// Rebuilds a module from its JSON form, re-running all checks.
    pub fn from_json(j: &GlRepJson) -> Result<Self> {
        if j.weights.len() != j.dimension {
            return Err(Error::DimensionMismatch {
                expected: j.dimension,
                found: j.weights.len(),
            });
        }
        let mut e = vec![vec![Matrix::zeros(j.dimension, j.dimension); j.n]; j.n];
        for m in &j.matrices {
            if m.i == 0 || m.j == 0 || m.i > j.n || m.j > j.n {
                return Err(Error::pre(format!("no generator E_{},{} for n = {}", m.i, m.j, j.n)));
            }
            e[m.i - 1][m.j - 1] = Matrix::from_triplets(j.dimension, j.dimension, &m.entries)?;
        }
        GlRep::new(e, j.weights.clone(), j.highest_weight.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub i: usize,
    pub j: usize,
    pub entries: Vec<(usize, usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlRepJson {
    pub n: usize,
    pub dimension: usize,
    pub highest_weight: Option<Vec<Scalar>>,
    pub weights: Vec<Vec<Scalar>>,
    pub matrices: Vec<MatrixJson>,
}

/// Dimension of the span of all words in `ops` applied to basis vector `start`.
fn cyclic_span(ops: &[&Matrix], start: usize, dim: usize) -> usize {
    let mut v0 = vec![Scalar::zero(); dim];
    v0[start] = Scalar::one();
    let mut span = vec![v0.clone()];
    let mut queue = VecDeque::from([v0]);
    while let Some(v) = queue.pop_front() {
        for op in ops {
            let w = op.mul_vec(&v).expect("square");
            let mut trial = span.clone();
            trial.push(w.clone());
            if Matrix::from_rows(trial).expect("rows").rank() > span.len() {
                span.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    span.len()
}

/// Basis of the `k`-th exterior power: sorted index sets in lexicographic order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `E_ij` applied to the wedge `e_S`, as a signed wedge.
fn wedge_action(set: &[usize], i: usize, j: usize) -> Option<(Vec<usize>, i64)> {
    let pos = set.iter().position(|&x| x == j)?;
    if i == j {
        return Some((set.to_vec(), 1));
    }
    if set.contains(&i) {
        return None;
    }
    let mut out = set.to_vec();
    out[pos] = i;
    let mut sign = 1;
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            if out[a] > out[b] {
                sign = -sign;
            }
        }
    }
    out.sort_unstable();
    Some((out, sign))
}

/// `k`-th exterior power of the natural module, on the basis of sorted
/// wedges `e_S` in lexicographic order of `S`.
pub fn exterior_power(n: usize, k: usize) -> Result<GlRep> {
    if n == 0 || k > n {
        return Err(Error::pre(format!("exterior power {} of C^{} is out of range", k, n)));
    }
    let basis = wedge_basis(n, k);
    let index: BTreeMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(a, s)| (s, a)).collect();
    let dim = basis.len();
    let mut e = vec![vec![Matrix::zeros(dim, dim); n]; n];
    for (col, s) in basis.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if let Some((t, sign)) = wedge_action(s, i, j) {
                    e[i][j][(index[&t], col)] = Scalar::int(sign);
                }
            }
        }
    }
    let weights = basis
        .iter()
        .map(|s| (0..n).map(|i| Scalar::int(s.contains(&i) as i64)).collect())
        .collect();
    let highest = (0..n).map(|i| Scalar::int((i < k) as i64)).collect();
    GlRep::new(e, weights, Some(highest))
}

/// Integer differences `lambda_i - lambda_{i+1}`, checked to be nonnegative.
fn dominant_shape(lambda: &[Scalar]) -> Result<Vec<i64>> {
    let n = lambda.len();
    let mut mu = vec![0i64; n];
    for i in (0..n.saturating_sub(1)).rev() {
        let diff = &lambda[i] - &lambda[i + 1];
        let d = diff
            .as_i64()
            .filter(|d| *d >= 0)
            .ok_or_else(|| Error::pre(format!("lambda is not dominant integral: lambda_{} - lambda_{} = {}", i + 1, i + 2, diff)))?;
        mu[i] = mu[i + 1] + d;
    }
    Ok(mu)
}

/// `prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i)`.
pub fn weyl_dimension(lambda: &[Scalar]) -> Result<u64> {
    let mu = dominant_shape(lambda)?;
    let n = mu.len();
    let mut v = BigRational::from_integer(1.into());
    for i in 0..n {
        for j in i + 1..n {
            let num = mu[i] - mu[j] + (j - i) as i64;
            v *= BigRational::new(num.into(), ((j - i) as i64).into());
        }
    }
    v.to_integer().try_into().map_err(|_| Error::pre("dimension too large"))
}

type TensorKey = Vec<usize>;

/// The simple module `V(lambda)`, realized inside a tensor product of exterior
/// powers (one per column of the diagram of `lambda - lambda_n`) as the span
/// of lowering words applied to the product of highest weight vectors, then
/// twisted by `lambda_n`.
pub fn highest_weight_module(lambda: &[Scalar]) -> Result<GlRep> {
    let n = lambda.len();
    if n == 0 {
        return Err(Error::pre("lambda must have at least one entry"));
    }
    let mu = dominant_shape(lambda)?;
    let heights: Vec<usize> = (1..=mu[0]).map(|c| mu.iter().filter(|&&x| x >= c).count()).collect();
    let factors: Vec<GlRep> = heights.iter().map(|&h| exterior_power(n, h)).collect::<Result<_>>()?;

    let act = |v: &SparseCombo<TensorKey>, i: usize, j: usize| -> SparseCombo<TensorKey> {
        let mut out = SparseCombo::zero();
        for (key, c) in v {
            for (f, rep) in factors.iter().enumerate() {
                let m = rep.e(i, j);
                for r in 0..rep.dim() {
                    let a = &m[(r, key[f])];
                    if !a.is_zero() {
                        let mut k2 = key.clone();
                        k2[f] = r;
                        out.add_term(k2, c * a);
                    }
                }
            }
        }
        out
    };
    let weight_of = |key: &TensorKey| -> Vec<i64> {
        let mut w = vec![0i64; n];
        for (f, rep) in factors.iter().enumerate() {
            for (i, x) in rep.weights()[key[f]].iter().enumerate() {
                w[i] += x.as_i64().expect("integral");
            }
        }
        w
    };

    // Exterior-power basis index 0 is the highest wedge e_1 ^ ... ^ e_h.
    let top: SparseCombo<TensorKey> = SparseCombo::basis(vec![0; factors.len()]);
    let mut basis: Vec<(Vec<i64>, SparseCombo<TensorKey>)> = vec![(mu.clone(), top.clone())];
    let mut by_weight: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::from([(mu.clone(), vec![0])]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for i in 0..n.saturating_sub(1) {
            let w = act(&basis[b].1, i + 1, i);
            if w.is_zero() {
                continue;
            }
            let wt = weight_of(w.keys().next().expect("nonzero"));
            let same = by_weight.get(&wt).cloned().unwrap_or_default();
            let vecs: Vec<&SparseCombo<TensorKey>> = same.iter().map(|&k| &basis[k].1).collect();
            if coordinates(&vecs, &w).is_none() {
                basis.push((wt.clone(), w));
                by_weight.entry(wt).or_default().push(basis.len() - 1);
                queue.push_back(basis.len() - 1);
            }
        }
    }

    let dim = basis.len();
    let expected = weyl_dimension(lambda)? as usize;
    if dim != expected {
        return Err(Error::verify(format!("constructed dimension {} differs from the Weyl dimension {}", dim, expected)));
    }
    let mut e = vec![vec![Matrix::zeros(dim, dim); n]; n];
    for (col, (wt, v)) in basis.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let w = act(v, i, j);
                if w.is_zero() {
                    continue;
                }
                let mut target = wt.clone();
                target[i] += 1;
                target[j] -= 1;
                let idx = by_weight.get(&target).ok_or_else(|| Error::verify("action leaves the module"))?;
                let vecs: Vec<&SparseCombo<TensorKey>> = idx.iter().map(|&k| &basis[k].1).collect();
                let coords = coordinates(&vecs, &w).ok_or_else(|| Error::verify("action leaves the module"))?;
                for (k, c) in idx.iter().zip(coords) {
                    e[i][j][(*k, col)] = c;
                }
            }
        }
    }
    let weights = basis
        .iter()
        .map(|(w, _)| w.iter().map(|&x| Scalar::int(x)).collect())
        .collect();
    let highest = mu.iter().map(|&x| Scalar::int(x)).collect();
    let rep = GlRep::new(e, weights, Some(highest))?;
    let shift = &lambda[n - 1];
    Ok(if shift.is_zero() { rep } else { rep.twist(shift) })
}

/// Coordinates of `w` in the linearly independent family `vecs`, if it lies in their span.
fn coordinates(vecs: &[&SparseCombo<TensorKey>], w: &SparseCombo<TensorKey>) -> Option<Vec<Scalar>> {
    let mut keys: Vec<&TensorKey> = vecs.iter().flat_map(|v| v.keys()).chain(w.keys()).collect();
    keys.sort();
    keys.dedup();
    if vecs.is_empty() {
        return if w.is_zero() { Some(Vec::new()) } else { None };
    }
    let a = Matrix::from_fn(keys.len(), vecs.len(), |r, c| vecs[c].coeff(keys[r]));
    let b: Vec<Scalar> = keys.iter().map(|k| w.coeff(k)).collect();
    a.solve(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn json_round_trip() {
        let v = highest_weight_module(&lam(&[2, 0])).unwrap();
        let text = serde_json::to_string(&v.to_json()).unwrap();
        let back: GlRepJson = serde_json::from_str(&text).unwrap();
        assert_eq!(GlRep::from_json(&back).unwrap(), v);
    }

    #[test]
    fn trivial_power() {
        let v = exterior_power(3, 0).unwrap();
        assert_eq!(v.dim(), 1);
        for i in 0..3 {
            for j in 0..3 {
                assert!(v.e(i, j).is_zero());
            }
        }
    }

    #[test]
    fn natural_module() {
        let v = exterior_power(2, 1).unwrap();
        assert_eq!(v.e(0, 1)[(0, 1)], Scalar::one());
        let ws = v.weight_spaces();
        assert_eq!(ws[&lam(&[1, 0])], vec![0]);
        assert_eq!(ws[&lam(&[0, 1])], vec![1]);
    }

    #[test]
    fn top_power_is_determinant() {
        let v = exterior_power(3, 3).unwrap();
        assert_eq!(v.dim(), 1);
        assert_eq!(v.weights()[0], lam(&[1, 1, 1]));
        for i in 0..3 {
            assert_eq!(v.e(i, i)[(0, 0)], Scalar::one());
        }
    }

    #[test]
    fn out_of_range() {
        assert!(exterior_power(2, 3).is_err());
    }

    #[test]
    fn symmetric_square() {
        let v = highest_weight_module(&lam(&[2, 0])).unwrap();
        assert_eq!(v.dim(), 3);
        let ws = v.weight_spaces();
        for w in [[2, 0], [1, 1], [0, 2]] {
            assert_eq!(ws[&lam(&w)].len(), 1);
        }
    }

    #[test]
    fn twisted_natural() {
        let a = Scalar::param(0);
        let v = highest_weight_module(&[&a + &Scalar::one(), a.clone()]).unwrap();
        assert_eq!(v.dim(), 2);
        v.check().unwrap();
        assert_eq!(v.highest_weight().unwrap()[1], a);
    }

    #[test]
    fn adjoint_sl3() {
        let v = highest_weight_module(&lam(&[1, 0, -1])).unwrap();
        assert_eq!(v.dim(), 8);
        assert_eq!(v.weight_spaces()[&lam(&[0, 0, 0])].len(), 2);
    }

    #[test]
    fn not_dominant() {
        assert!(highest_weight_module(&lam(&[0, 1])).is_err());
        assert!(highest_weight_module(&[Scalar::ratio(1, 2), Scalar::zero()]).is_err());
    }

    #[test]
    fn weyl_formula() {
        assert_eq!(weyl_dimension(&lam(&[2, 1, 0])).unwrap(), 8);
        assert_eq!(weyl_dimension(&lam(&[3, 0])).unwrap(), 4);
    }
}
