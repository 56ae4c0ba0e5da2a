//! Thin wrappers over the dense eigensolver and a few matrix utilities
//! shared by the sector, oracle and effective-model code.

use faer::{Mat, MatRef};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

fn check_square(m: MatRef<'_, C64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Eigenvalues of a general complex matrix.
pub fn eigenvalues(m: MatRef<'_, C64>) -> Result<Vec<C64>> {
    check_square(m)?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    m.eigenvalues()
        .map_err(|e| Error::Solver(format!("{e:?}")))
}

/// Eigenvalues with right eigenvectors stored column-wise.
pub fn eigen(m: MatRef<'_, C64>) -> Result<(Vec<C64>, Mat<C64>)> {
    check_square(m)?;
    if m.nrows() == 0 {
        return Ok((Vec::new(), Mat::zeros(0, 0)));
    }
    let evd = m.eigen().map_err(|e| Error::Solver(format!("{e:?}")))?;
    let values = evd.S().column_vector().iter().copied().collect();
    Ok((values, evd.U().to_owned()))
}

pub fn singular_values(m: MatRef<'_, C64>) -> Result<Vec<f64>> {
    m.singular_values()
        .map_err(|e| Error::Solver(format!("{e:?}")))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: MatRef<'_, C64>) -> Result<Vec<f64>> {
    check_square(m)?;
    let mut values: Vec<f64> = m
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::Solver(format!("{e:?}")))?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Largest pairing distance between two complex multisets.
///
/// Each element of `a` is greedily paired with its nearest unused element
/// of `b`, visiting `a` in lexicographic order. Returns infinity when the
/// lengths differ.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a_sorted = a.to_vec();
    sort_lexicographic(&mut a_sorted);
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for z in &a_sorted {
        let mut best = f64::INFINITY;
        let mut best_idx = usize::MAX;
        for (k, w) in b.iter().enumerate() {
            if used[k] {
                continue;
            }
            let d = (z - w).norm();
            if d < best {
                best = d;
                best_idx = k;
            }
        }
        used[best_idx] = true;
        worst = worst.max(best);
    }
    worst
}

pub fn sort_lexicographic(values: &mut [C64]) {
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: MatRef<'_, C64>, b: MatRef<'_, C64>) -> Mat<C64> {
    let (ar, ac) = (a.nrows(), a.ncols());
    let (br, bc) = (b.nrows(), b.ncols());
    Mat::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

pub fn max_abs_diff(a: MatRef<'_, C64>, b: MatRef<'_, C64>) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

pub fn max_abs(a: MatRef<'_, C64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max(a[(i, j)].norm());
        }
    }
    worst
}

pub fn frobenius_norm(a: MatRef<'_, C64>) -> f64 {
    let mut acc = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc += a[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

pub fn adjoint(a: MatRef<'_, C64>) -> Mat<C64> {
    Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj())
}

pub fn identity(n: usize) -> Mat<C64> {
    Mat::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_distance_ignores_order() {
        let a = [C64::new(1.0, 2.0), C64::new(-1.0, 0.0), C64::new(1.0, 2.0)];
        let b = [C64::new(-1.0, 0.0), C64::new(1.0, 2.0), C64::new(1.0, 2.0 + 1e-9)];
        assert!(multiset_distance(&a, &b) < 2e-9);
        assert_eq!(multiset_distance(&a, &b[..2]), f64::INFINITY);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(identity(2).as_ref(), identity(3).as_ref());
        assert_eq!(max_abs_diff(k.as_ref(), identity(6).as_ref()), 0.0);
    }

    #[test]
    fn non_square_is_rejected() {
        let m = Mat::<C64>::zeros(2, 3);
        assert!(matches!(eigenvalues(m.as_ref()), Err(Error::Dimension(_))));
    }
}
