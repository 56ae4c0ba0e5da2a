//! Vectorized Liouvillians.
//!
//! A density matrix `|n⟩⟨m|` maps to the basis vector with index
//! `n · 2^N + m` (ket factor first). In this basis
//! `vec(A ρ B) = (A ⊗ Bᵀ) vec(ρ)`.

use faer::Mat;

use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};
use crate::sector::tol_zero;

use super::density::DensityOperator;

#[derive(Debug, Clone)]
pub struct Superoperator {
    matrix: Mat<C64>,
    n_sites: usize,
    gamma: f64,
}

impl Superoperator {
    pub(crate) fn new(matrix: Mat<C64>, n_sites: usize, gamma: f64) -> Self {
        debug_assert_eq!(matrix.nrows(), 1 << (2 * n_sites));
        Self { matrix, n_sites, gamma }
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.matrix
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn hilbert_dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        self.check_operand(rho)?;
        let v = vectorize(rho.matrix());
        Ok(DensityOperator::new(unvectorize(&(&self.matrix * &v), self.hilbert_dim())))
    }

    /// Heisenberg-picture action `L†[X]`, the adjoint with respect to the
    /// Hilbert-Schmidt inner product.
    pub fn apply_adjoint(&self, x: &DensityOperator) -> Result<DensityOperator> {
        self.check_operand(x)?;
        let v = vectorize(x.matrix());
        let out = self.matrix.adjoint() * &v;
        Ok(DensityOperator::new(unvectorize(&out, self.hilbert_dim())))
    }

    fn check_operand(&self, rho: &DensityOperator) -> Result<()> {
        if rho.dim() != self.hilbert_dim() {
            return Err(Error::Dimension(format!(
                "operator is {}-dimensional, Liouvillian acts on {}",
                rho.dim(),
                self.hilbert_dim()
            )));
        }
        Ok(())
    }

    /// Largest entry of `⟨⟨I| L`; vanishes for trace-preserving generators.
    pub fn trace_preservation_residual(&self) -> f64 {
        let d = self.hilbert_dim();
        (0..self.dim())
            .map(|col| {
                let s: C64 = (0..d).map(|n| self.matrix[(n * d + n, col)]).sum();
                s.norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn full_spectrum(&self) -> Result<Vec<C64>> {
        linalg::eigenvalues(self.matrix.as_ref())
    }

    /// Number of singular values below `threshold`.
    pub fn kernel_dimension(&self, threshold: f64) -> Result<usize> {
        let sv = linalg::singular_values(self.matrix.as_ref())?;
        Ok(sv.iter().filter(|&&s| s < threshold).count())
    }

    pub fn tol_zero(&self) -> f64 {
        tol_zero(self.gamma, self.n_sites)
    }
}

/// Liouvillian gap `−max{Re λ : |Re λ| > tol}`; `None` when nothing decays.
pub fn exact_gap(spectrum: &[C64], tol: f64) -> Option<f64> {
    spectrum
        .iter()
        .map(|z| z.re)
        .filter(|re| re.abs() > tol)
        .fold(None, |acc: Option<f64>, re| Some(acc.map_or(re, |a| a.max(re))))
        .map(|max_re| -max_re)
}

pub fn vectorize(rho: &Mat<C64>) -> Mat<C64> {
    let d = rho.nrows();
    Mat::from_fn(d * d, 1, |k, _| rho[(k / d, k % d)])
}

pub fn unvectorize(v: &Mat<C64>, d: usize) -> Mat<C64> {
    Mat::from_fn(d, d, |n, m| v[(n * d + m, 0)])
}

/// Superoperator of `ρ ↦ A ρ B`.
pub fn sandwich(a: &Mat<C64>, b: &Mat<C64>) -> Mat<C64> {
    linalg::kron(a.as_ref(), b.transpose())
}

/// Sign-permutation between the vectorized basis and the 2N-mode Fock
/// basis (modes `0..N` for the ket, `N..2N` for the bra).
///
/// `|n⟩⟨m| ↦ (−1)^{N_m(N_m−1)/2} |n, m⟩`, where the Fock index of `|n, m⟩`
/// is `n + m · 2^N`. This is the sign convention under which right
/// multiplications act as `ρ c† ↦ (−1)^{N+1} c̃ ρ`, `ρ c ↦ (−1)^N c̃† ρ`.
#[derive(Debug, Clone)]
pub struct FockAlignment {
    n_sites: usize,
}

impl FockAlignment {
    pub fn new(n_sites: usize) -> Self {
        Self { n_sites }
    }

    /// `(fock index, sign)` of vectorized index `v`.
    pub fn fock_of(&self, v: usize) -> (usize, f64) {
        let d = 1usize << self.n_sites;
        let (ket, bra) = (v / d, v % d);
        let nb = bra.count_ones();
        let sign = if (nb * nb.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        (ket + bra * d, sign)
    }

    /// Re-expresses a Fock-basis operator in the vectorized basis.
    pub fn to_vectorized(&self, fock: &Mat<C64>) -> Mat<C64> {
        let dim = fock.nrows();
        let map: Vec<(usize, f64)> = (0..dim).map(|v| self.fock_of(v)).collect();
        Mat::from_fn(dim, dim, |r, c| {
            let (fr, sr) = map[r];
            let (fc, sc) = map[c];
            let x = fock[(fr, fc)];
            if x == ZERO {
                ZERO
            } else {
                x * (sr * sc)
            }
        })
    }
}
