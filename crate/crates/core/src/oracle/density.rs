use faer::Mat;

use crate::error::Result;
use crate::linalg::{self, C64, ONE, ZERO};

/// Threshold on the smallest eigenvalue for the positivity check.
pub const PSD_TOL: f64 = -1e-12;

#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: Mat<C64>,
}

impl DensityOperator {
    pub fn new(matrix: Mat<C64>) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols(), "density operators are square");
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(linalg::identity(dim))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::new(Mat::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { ZERO }))
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.matrix[(i, i)]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(Mat::from_fn(self.dim(), self.dim(), |i, j| self.matrix[(i, j)] * factor))
    }

    /// `self + q · other`.
    pub fn add_scaled(&self, other: &DensityOperator, q: f64) -> Self {
        Self::new(Mat::from_fn(self.dim(), self.dim(), |i, j| {
            self.matrix[(i, j)] + other.matrix[(i, j)] * q
        }))
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let adj = linalg::adjoint(self.matrix.as_ref());
        linalg::max_abs_diff(self.matrix.as_ref(), adj.as_ref())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let adj = linalg::adjoint(self.matrix.as_ref());
        let herm = Mat::from_fn(self.dim(), self.dim(), |i, j| {
            (self.matrix[(i, j)] + adj[(i, j)]) * 0.5
        });
        linalg::hermitian_eigenvalues(herm.as_ref())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or(0.0))
    }

    /// Hermitian, unit trace and positive semidefinite.
    pub fn is_physical(&self) -> Result<bool> {
        Ok(self.hermiticity_residual() < 1e-12
            && (self.trace() - ONE).norm() < 1e-12
            && self.min_eigenvalue()? >= PSD_TOL)
    }

    pub fn frobenius_norm(&self) -> f64 {
        linalg::frobenius_norm(self.matrix.as_ref())
    }
}

/// Fermion parity `S = Π_l (−1)^{n_l}` on `n_sites` sites.
pub fn parity_operator(n_sites: usize) -> DensityOperator {
    let values: Vec<f64> = (0..1usize << n_sites)
        .map(|s| if s.count_ones() % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    DensityOperator::diagonal(&values)
}

/// The two stationary solutions and their physical combinations.
#[derive(Debug, Clone)]
pub struct SteadyStates {
    /// `S / 2^N`, traceless.
    pub rho_plus: DensityOperator,
    /// `I / 2^N`.
    pub rho_minus: DensityOperator,
    /// Maximally mixed over even particle number.
    pub rho_even: DensityOperator,
    /// Maximally mixed over odd particle number.
    pub rho_odd: DensityOperator,
}

impl SteadyStates {
    pub fn new(n_sites: usize) -> Self {
        let norm = 1.0 / (1usize << n_sites) as f64;
        let rho_plus = parity_operator(n_sites).scaled(norm);
        let rho_minus = DensityOperator::identity(1 << n_sites).scaled(norm);
        let rho_even = rho_minus.add_scaled(&rho_plus, 1.0);
        let rho_odd = rho_minus.add_scaled(&rho_plus, -1.0);
        Self { rho_plus, rho_minus, rho_even, rho_odd }
    }

    /// `ρ_q = ρ⁻ + q ρ⁺`; physical for `q ∈ [−1, 1]`.
    pub fn rho_q(&self, q: f64) -> DensityOperator {
        self.rho_minus.add_scaled(&self.rho_plus, q)
    }
}

pub fn steady_states(n_sites: usize) -> SteadyStates {
    SteadyStates::new(n_sites)
}
