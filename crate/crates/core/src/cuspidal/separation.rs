//! Separation of blocks by the eigenvalues of `z_{i,i,i}` and `z_i`.

use serde::Serialize;

use crate::kernel::Scalar;

/// Eigenvalues `(x - x^2, 2(x^3 - 3x^2 + 2x))` of `z_{i,i,i}` and `z_i` on a
/// weight vector whose `E_ii`-eigenvalue is `x`.
pub fn z_eigenvalues(x: &Scalar) -> (Scalar, Scalar) {
    let x2 = x * x;
    let x3 = &x2 * x;
    let a = x - &x2;
    let b = &(&(&x3 - &(&x2 * &Scalar::int(3))) + &(x * &Scalar::int(2))) * &Scalar::int(2);
    (a, b)
}

/// Two scalars have the same eigenvalue pair exactly when they are equal or
/// form the set `{0, 1}`.
pub fn scalars_collide(x: &Scalar, y: &Scalar) -> bool {
    x == y || (x.is_zero() && y.is_one()) || (x.is_one() && y.is_zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub gamma: Vec<Scalar>,
    pub lambda: Vec<Scalar>,
    pub disjoint: bool,
    /// A coordinate with `lambda_i - gamma_i` not an integer.
    pub separating_index: Option<usize>,
    /// Shifts `r, s` with `gamma + r` and `lambda + s` having equal eigenvalue tuples.
    pub collision: Option<(Vec<i64>, Vec<i64>)>,
}

/// Decides whether the eigenvalue sets over `gamma + Z^n` and `lambda + Z^n`
/// are disjoint.
pub fn separation_check(gamma: &[Scalar], lambda: &[Scalar]) -> SeparationReport {
    let mut shift = Vec::new();
    let mut separating = None;
    for (i, (g, l)) in gamma.iter().zip(lambda).enumerate() {
        match (l - g).as_i64() {
            Some(d) => shift.push(-d),
            None => {
                separating = Some(i);
                break;
            }
        }
    }
    let collision = separating.is_none().then(|| (vec![0; gamma.len()], shift));
    if let Some((r, s)) = &collision {
        for i in 0..gamma.len() {
            let x = &gamma[i] + &Scalar::int(r[i]);
            let y = &lambda[i] + &Scalar::int(s[i]);
            debug_assert_eq!(z_eigenvalues(&x), z_eigenvalues(&y));
        }
    }
    SeparationReport {
        gamma: gamma.to_vec(),
        lambda: lambda.to_vec(),
        disjoint: collision.is_none(),
        separating_index: separating,
        collision,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_one_collide() {
        assert_eq!(z_eigenvalues(&Scalar::zero()), z_eigenvalues(&Scalar::one()));
        assert!(scalars_collide(&Scalar::zero(), &Scalar::one()));
    }

    #[test]
    fn dichotomy_on_a_grid() {
        let grid: Vec<Scalar> = (-8..=8).flat_map(|p| [Scalar::ratio(p, 2), Scalar::ratio(p, 3)]).collect();
        for x in &grid {
            for y in &grid {
                assert_eq!(z_eigenvalues(x) == z_eigenvalues(y), scalars_collide(x, y), "{} {}", x, y);
            }
        }
    }

    #[test]
    fn half_shift_is_disjoint() {
        let a = Scalar::param(0);
        let gamma = vec![a.clone(), a.clone()];
        let lambda = vec![&a + &Scalar::ratio(1, 2), a.clone()];
        let r = separation_check(&gamma, &lambda);
        assert!(r.disjoint);
        assert_eq!(r.separating_index, Some(0));
    }

    #[test]
    fn same_block() {
        let a = Scalar::param(0);
        let gamma = vec![a.clone(), Scalar::int(2)];
        let r = separation_check(&gamma, &gamma);
        assert!(!r.disjoint);
        let lambda = vec![&a + &Scalar::int(3), Scalar::zero()];
        let r = separation_check(&gamma, &lambda);
        assert_eq!(r.collision.unwrap().1, vec![-3, 2]);
    }
}
