//! Per-sector free-fermion problem.
//!
//! At t = Δ the charges D_l = ±1 are conserved and, inside a sector, the
//! rotated Liouvillian is a quadratic a-fermion Hamiltonian
//! `Σ h_ij a†_i a_j + iγ/4 Σ_l (D_l − 1)`. Its single-particle matrix `h`
//! has `2 t_bond` on every nearest-neighbor pair and `−iγ/2 D_l` on the
//! diagonal. Liouvillian eigenvalues follow from occupations `m` of the
//! single-particle modes: `λ_m = −i Σ m_α E_α + γ/4 Σ_l (D_l − 1)`.

use faer::{Mat, MatRef};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Bond, LatticeGraph, Sign};
use crate::linalg::{self, C64, I};

/// Threshold on `|Im E_α|` below which a mode counts as non-decaying.
pub const TOL_IM: f64 = 1e-12;

/// Threshold for deciding that a Liouvillian real part vanishes.
pub fn tol_zero(gamma: f64, n_sites: usize) -> f64 {
    1e-10 * (gamma * n_sites as f64).max(1.0)
}

/// Couplings of the bonds along one axis.
///
/// `plus` bonds go from an A site to the B site at `+a`, `minus` bonds from
/// an A site to the B site at `−a`. Each pairing amplitude multiplies
/// `c†_i c†_j` with `i` on sublattice A.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionCouplings {
    pub t_plus: f64,
    pub delta_plus: f64,
    pub t_minus: f64,
    pub delta_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub t: f64,
    pub delta: f64,
    pub gamma: f64,
    /// One entry per lattice axis; overrides `t` and `delta` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bond_overrides: Option<Vec<DirectionCouplings>>,
}

fn same_amplitude(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

impl ModelParams {
    pub fn new(t: f64, delta: f64, gamma: f64) -> Self {
        Self { t, delta, gamma, bond_overrides: None }
    }

    /// Uniform couplings at the solvable point `t = Δ`.
    pub fn solvable(t: f64, gamma: f64) -> Self {
        Self::new(t, t, gamma)
    }

    pub fn with_gamma(&self, gamma: f64) -> Self {
        Self { gamma, ..self.clone() }
    }

    pub fn with_overrides(mut self, overrides: Vec<DirectionCouplings>) -> Self {
        self.bond_overrides = Some(overrides);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "gamma must be finite and non-negative, got {}",
                self.gamma
            )));
        }
        if !(self.t.is_finite() && self.delta.is_finite()) {
            return Err(Error::InvalidParams("t and delta must be finite".into()));
        }
        Ok(())
    }

    pub fn validate_for(&self, graph: &LatticeGraph) -> Result<()> {
        self.validate()?;
        if let Some(overrides) = &self.bond_overrides {
            if overrides.len() != graph.dimension() {
                return Err(Error::InvalidParams(format!(
                    "bond_overrides has {} entries but the lattice has {} axes",
                    overrides.len(),
                    graph.dimension()
                )));
            }
        }
        Ok(())
    }

    pub fn is_uniform(&self) -> bool {
        self.bond_overrides.is_none()
    }

    /// `(t, Δ)` on a bond.
    pub fn bond_couplings(&self, bond: &Bond) -> (f64, f64) {
        match &self.bond_overrides {
            None => (self.t, self.delta),
            Some(overrides) => {
                let c = overrides[bond.direction];
                match bond.sign {
                    Sign::Plus => (c.t_plus, c.delta_plus),
                    Sign::Minus => (c.t_minus, c.delta_minus),
                }
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        match &self.bond_overrides {
            None => same_amplitude(self.t, self.delta),
            Some(overrides) => overrides.iter().all(|c| {
                same_amplitude(c.t_plus, c.delta_plus) && same_amplitude(c.t_minus, c.delta_minus)
            }),
        }
    }

    pub fn require_solvable(&self) -> Result<()> {
        if self.is_solvable() {
            return Ok(());
        }
        Err(Error::NonSolvable(match &self.bond_overrides {
            None => format!("t = {} differs from delta = {}", self.t, self.delta),
            Some(_) => "some bond override has t != delta".into(),
        }))
    }
}

/// A sector label: one conserved charge `D_l = ±1` per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorConfig {
    signs: Vec<i8>,
    n_flipped: usize,
}

impl SectorConfig {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidParams(format!("charge {bad} is not +1 or -1")));
        }
        let n_flipped = signs.iter().filter(|&&s| s == -1).count();
        Ok(Self { signs, n_flipped })
    }

    pub fn all_up(n_sites: usize) -> Self {
        Self { signs: vec![1; n_sites], n_flipped: 0 }
    }

    pub fn all_down(n_sites: usize) -> Self {
        Self { signs: vec![-1; n_sites], n_flipped: n_sites }
    }

    pub fn from_flipped(n_sites: usize, flipped: &[usize]) -> Result<Self> {
        let mut signs = vec![1i8; n_sites];
        for &site in flipped {
            if site >= n_sites {
                return Err(Error::SiteOutOfRange { site, n_sites });
            }
            signs[site] = -1;
        }
        Self::new(signs)
    }

    /// Bit `l` of `mask` set means `D_l = −1`.
    pub fn from_mask(n_sites: usize, mask: u64) -> Self {
        let signs: Vec<i8> = (0..n_sites)
            .map(|l| if (mask >> l) & 1 == 1 { -1 } else { 1 })
            .collect();
        let n_flipped = signs.iter().filter(|&&s| s == -1).count();
        Self { signs, n_flipped }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_sites(&self) -> usize {
        self.signs.len()
    }

    pub fn n_flipped(&self) -> usize {
        self.n_flipped
    }

    pub fn is_flipped(&self, site: usize) -> bool {
        self.signs[site] == -1
    }

    pub fn flipped_sites(&self) -> Vec<usize> {
        (0..self.signs.len()).filter(|&l| self.signs[l] == -1).collect()
    }

    pub fn global_flip(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
            n_flipped: self.signs.len() - self.n_flipped,
        }
    }

    pub fn charge_sum(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }
}

/// Occupation numbers `m_α ∈ {0, 1}` of the single-particle modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occupation(Vec<bool>);

impl Occupation {
    pub fn empty(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn full(n: usize) -> Self {
        Self(vec![true; n])
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self((0..n).map(|a| (mask >> a) & 1 == 1).collect())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn set(&mut self, mode: usize, occupied: bool) {
        self.0[mode] = occupied;
    }
}

#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    pub eigenvalues: Vec<C64>,
    /// `iγ/4 Σ_l (D_l − 1)`.
    pub constant: C64,
    /// Right eigenvectors, column `α` belongs to `eigenvalues[α]`.
    pub eigenvectors: Option<Mat<C64>>,
    pub gamma: f64,
    pub charge_sum: i64,
}

impl SectorSpectrum {
    pub fn n_modes(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `|Σ E_α − tr h|` with `tr h = −i(γ/2) Σ D_l`.
    pub fn sum_rule_residual(&self) -> f64 {
        let sum: C64 = self.eigenvalues.iter().sum();
        let trace = -I * (self.gamma / 2.0) * self.charge_sum as f64;
        (sum - trace).norm()
    }

    pub fn tol_zero(&self) -> f64 {
        tol_zero(self.gamma, self.n_modes())
    }
}

/// Single-particle matrix `h({D_l})`.
pub fn build_h(graph: &LatticeGraph, params: &ModelParams, config: &SectorConfig) -> Result<Mat<C64>> {
    params.validate_for(graph)?;
    params.require_solvable()?;
    let n = graph.n_sites();
    if config.n_sites() != n {
        return Err(Error::Dimension(format!(
            "sector config has {} sites, lattice has {n}",
            config.n_sites()
        )));
    }
    let mut h = Mat::<C64>::zeros(n, n);
    for l in 0..n {
        h[(l, l)] = -I * (params.gamma / 2.0) * config.signs()[l] as f64;
    }
    for bond in graph.bonds() {
        let (t, _) = params.bond_couplings(bond);
        let v = C64::new(2.0 * t, 0.0);
        h[(bond.a_site, bond.b_site)] += v;
        h[(bond.b_site, bond.a_site)] += v;
    }
    Ok(h)
}

pub fn diagonalize(
    h: MatRef<'_, C64>,
    config: &SectorConfig,
    gamma: f64,
    with_vectors: bool,
) -> Result<SectorSpectrum> {
    if h.nrows() != config.n_sites() {
        return Err(Error::Dimension(format!(
            "h is {}x{} but the config has {} sites",
            h.nrows(),
            h.ncols(),
            config.n_sites()
        )));
    }
    let (eigenvalues, eigenvectors) = if with_vectors {
        let (values, vectors) = linalg::eigen(h)?;
        (values, Some(vectors))
    } else {
        (linalg::eigenvalues(h)?, None)
    };
    let charge_sum = config.charge_sum();
    let n = config.n_sites() as i64;
    Ok(SectorSpectrum {
        eigenvalues,
        constant: I * (gamma / 4.0) * (charge_sum - n) as f64,
        eigenvectors,
        gamma,
        charge_sum,
    })
}

/// Builds and diagonalizes `h({D_l})` in one go.
pub fn solve_sector(
    graph: &LatticeGraph,
    params: &ModelParams,
    config: &SectorConfig,
    with_vectors: bool,
) -> Result<SectorSpectrum> {
    let h = build_h(graph, params, config)?;
    diagonalize(h.as_ref(), config, params.gamma, with_vectors)
}

pub fn assemble_lambda(spectrum: &SectorSpectrum, occupation: &Occupation) -> Result<C64> {
    if occupation.len() != spectrum.n_modes() {
        return Err(Error::Dimension(format!(
            "occupation has {} modes, spectrum has {}",
            occupation.len(),
            spectrum.n_modes()
        )));
    }
    let energy: C64 = spectrum
        .eigenvalues
        .iter()
        .zip(occupation.bits())
        .filter(|(_, &m)| m)
        .map(|(e, _)| *e)
        .sum();
    Ok(-I * (energy + spectrum.constant))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorMax {
    pub value: f64,
    pub occupation: Occupation,
}

/// Occupation maximizing `Re λ_m`: every mode with `Im E_α > TOL_IM`.
pub fn max_real_occupation(spectrum: &SectorSpectrum) -> Occupation {
    Occupation::from_bits(spectrum.eigenvalues.iter().map(|e| e.im > TOL_IM).collect())
}

/// Largest `Re λ_m` among the modes with `Re λ_m ≠ 0`.
///
/// Returns `None` when the sector has no decaying mode (only possible when
/// every `|Im E_α|` vanishes, e.g. at `γ = 0`).
pub fn sector_max_nonzero(spectrum: &SectorSpectrum) -> Option<SectorMax> {
    let tol = spectrum.tol_zero();
    let mut occupation = max_real_occupation(spectrum);
    let best = real_part(spectrum, &occupation);
    if best.abs() > tol {
        return Some(SectorMax { value: best, occupation });
    }

    // The best occupation is a zero mode; the runner-up differs from it by
    // the cheapest single change: drop an occupied mode (cost Im E) or add an
    // unoccupied one (cost |Im E|). Modes with Im E ≈ 0 change nothing.
    let mut costs: Vec<(f64, usize)> = spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, e)| e.im.abs() > TOL_IM)
        .map(|(alpha, e)| (e.im.abs(), alpha))
        .collect();
    costs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let &(cost, alpha) = costs.iter().find(|(cost, _)| (best - cost).abs() > tol)?;
    let occupied = occupation.bits()[alpha];
    occupation.set(alpha, !occupied);
    Some(SectorMax { value: best - cost, occupation })
}

fn real_part(spectrum: &SectorSpectrum, occupation: &Occupation) -> f64 {
    let occupied: f64 = spectrum
        .eigenvalues
        .iter()
        .zip(occupation.bits())
        .filter(|(_, &m)| m)
        .map(|(e, _)| e.im)
        .sum();
    occupied + spectrum.constant.im
}

/// Closed-form band of the unflipped sector on a periodic uniform lattice:
/// `E(k) = 4t Σ_a cos k_a − iγ/2`.
pub fn dispersion_0flipped(k: &[f64], params: &ModelParams) -> Result<C64> {
    if !params.is_uniform() {
        return Err(Error::InvalidParams(
            "the closed-form band needs uniform couplings".into(),
        ));
    }
    let band: f64 = k.iter().map(|ka| ka.cos()).sum();
    Ok(C64::new(4.0 * params.t * band, -params.gamma / 2.0))
}

/// All momenta `2π m / L` of a periodic lattice, in row-major order.
pub fn momentum_grid(dims: &[usize]) -> Vec<Vec<f64>> {
    let mut grid = vec![Vec::new()];
    for &len in dims {
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                (0..len).map(move |m| {
                    let mut k = prefix.clone();
                    k.push(2.0 * std::f64::consts::PI * m as f64 / len as f64);
                    k
                })
            })
            .collect();
    }
    grid
}
