//! Strong-dissipation limit and closed-form asymptotes.
//!
//! For `γ ≫ t` singly occupied sites decay fast and the slow dynamics lives
//! on sites that are empty (`|↑⟩`) or doubly occupied (`|↓⟩`). Second-order
//! virtual hopping gives the spin model
//! `H_eff = −i Σ_⟨ij⟩ [J⊥(−τ^z_i τ^z_j + τ^x_i τ^x_j) + J(τ^y_i τ^y_j + 1)]`
//! with `J⊥ = (t² − Δ²)/γ` and `J = (t² + Δ²)/γ`.

use faer::Mat;

use crate::error::{Error, Result};
use crate::lattice::{Bond, LatticeGraph, Sublattice};
use crate::linalg::{C64, I, ZERO};
use crate::oracle::DEFAULT_ORACLE_CAP;
use crate::sector::{ModelParams, SectorConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCouplings {
    pub j_perp: f64,
    pub j: f64,
}

impl EffectiveCouplings {
    pub fn new(t: f64, delta: f64, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParams(format!(
                "effective couplings need gamma > 0, got {gamma}"
            )));
        }
        Ok(Self { j_perp: (t * t - delta * delta) / gamma, j: (t * t + delta * delta) / gamma })
    }

    pub fn uniform(params: &ModelParams) -> Result<Self> {
        Self::new(params.t, params.delta, params.gamma)
    }

    pub fn for_bond(params: &ModelParams, bond: &Bond) -> Result<Self> {
        let (t, delta) = params.bond_couplings(bond);
        Self::new(t, delta, params.gamma)
    }
}

/// Number of bonds crossed by a domain wall of `{D_l}`.
pub fn domain_wall_length(config: &SectorConfig, graph: &LatticeGraph) -> Result<usize> {
    check_sites(config.n_sites(), graph)?;
    let d = config.signs();
    Ok(graph.bonds().iter().filter(|b| d[b.a_site] != d[b.b_site]).count())
}

/// Slowest `Re λ` of a sector at `t = Δ` and large `γ`: `−4t² L_D / γ`,
/// summed bond by bond when couplings vary.
pub fn ising_prediction(config: &SectorConfig, params: &ModelParams, graph: &LatticeGraph) -> Result<f64> {
    params.validate_for(graph)?;
    params.require_solvable()?;
    check_sites(config.n_sites(), graph)?;
    let d = config.signs();
    let mut total = 0.0;
    for bond in graph.bonds().iter().filter(|b| d[b.a_site] != d[b.b_site]) {
        total -= 2.0 * EffectiveCouplings::for_bond(params, bond)?.j;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapAsymptotes {
    /// `γ/2`
    pub small_gamma: f64,
    /// `8t²d/γ`
    pub large_gamma: f64,
    /// `4t√d`
    pub gamma_c_estimate: f64,
}

pub fn gap_asymptotes(params: &ModelParams, dimension: usize) -> Result<GapAsymptotes> {
    if !params.is_uniform() {
        return Err(Error::InvalidParams("asymptotes need uniform couplings".into()));
    }
    let (t, gamma, d) = (params.t, params.gamma, dimension as f64);
    Ok(GapAsymptotes {
        small_gamma: gamma / 2.0,
        large_gamma: 8.0 * t * t * d / gamma,
        gamma_c_estimate: 4.0 * t.abs() * d.sqrt(),
    })
}

/// `H_eff` on the `2^N` empty/doubly-occupied states. Bit `l` of the basis
/// index is set when site `l` is doubly occupied (`|↓⟩`).
pub fn build_spin_effective(graph: &LatticeGraph, params: &ModelParams) -> Result<Mat<C64>> {
    build_spin_effective_capped(graph, params, DEFAULT_ORACLE_CAP)
}

pub fn build_spin_effective_capped(graph: &LatticeGraph, params: &ModelParams, cap: usize) -> Result<Mat<C64>> {
    params.validate_for(graph)?;
    let n = graph.n_sites();
    if n > cap {
        return Err(Error::OracleCap { n_sites: n, cap });
    }
    let dim = 1usize << n;
    let mut h = Mat::<C64>::zeros(dim, dim);
    let z = |s: usize, l: usize| if (s >> l) & 1 == 0 { 1.0 } else { -1.0 };
    for bond in graph.bonds() {
        let EffectiveCouplings { j_perp, j } = EffectiveCouplings::for_bond(params, bond)?;
        let (i, k) = (bond.a_site, bond.b_site);
        let flip = (1usize << i) | (1usize << k);
        for s in 0..dim {
            let zz = z(s, i) * z(s, k);
            h[(s, s)] += -I * (-j_perp * zz + j);
            // τ^x τ^x and τ^y τ^y both flip the pair; τ^y τ^y carries −z_i z_k.
            h[(s ^ flip, s)] += -I * (j_perp - j * zz);
        }
    }
    Ok(h)
}

/// Product of `τ^y` eigenstates, `spins[l] = ±1`, in the bit basis of
/// [`build_spin_effective`].
pub fn tau_y_product_state(spins: &[i8]) -> Vec<C64> {
    let n = spins.len();
    let norm = (0.5f64).powf(n as f64 / 2.0);
    (0..1usize << n)
        .map(|s| {
            // |±y⟩ = (|↑⟩ ± i|↓⟩)/√2
            let mut amp = C64::new(norm, 0.0);
            for (l, &sp) in spins.iter().enumerate() {
                if (s >> l) & 1 == 1 {
                    amp *= I * sp as f64;
                }
            }
            amp
        })
        .collect()
}

/// Charges from `τ^y` eigenvalues: `D = τ^y` on A, `D = −τ^y` on B.
pub fn tau_d_map(spins: &[i8], graph: &LatticeGraph) -> Result<SectorConfig> {
    check_sites(spins.len(), graph)?;
    let signs = spins
        .iter()
        .enumerate()
        .map(|(l, &s)| match graph.sublattice(l) {
            Sublattice::A => s,
            Sublattice::B => -s,
        })
        .collect();
    SectorConfig::new(signs)
}

pub fn d_tau_map(config: &SectorConfig, graph: &LatticeGraph) -> Result<Vec<i8>> {
    check_sites(config.n_sites(), graph)?;
    Ok(config
        .signs()
        .iter()
        .enumerate()
        .map(|(l, &d)| match graph.sublattice(l) {
            Sublattice::A => d,
            Sublattice::B => -d,
        })
        .collect())
}

fn check_sites(n: usize, graph: &LatticeGraph) -> Result<()> {
    if n != graph.n_sites() {
        return Err(Error::Dimension(format!("{n} spins for {} sites", graph.n_sites())));
    }
    Ok(())
}

/// `⟨a|H|b⟩` for dense vectors.
pub fn matrix_element(h: &Mat<C64>, a: &[C64], b: &[C64]) -> C64 {
    let mut acc = ZERO;
    for r in 0..h.nrows() {
        let mut row = ZERO;
        for c in 0..h.ncols() {
            row += h[(r, c)] * b[c];
        }
        acc += a[r].conj() * row;
    }
    acc
}
