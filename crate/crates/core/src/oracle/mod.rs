//! Brute-force many-body reference on small lattices.
//!
//! Everything here works on the full `4^N`-dimensional space of density
//! matrices and is independent of the sector decomposition, which it is
//! used to validate.

mod density;
mod fock;
mod superop;

use faer::Mat;

pub use density::{parity_operator, steady_states, DensityOperator, SteadyStates, PSD_TOL};
pub use fock::{FermionOperator, FockBasis, Ladder};
pub use superop::{exact_gap, sandwich, unvectorize, vectorize, FockAlignment, Superoperator};

use crate::error::{Error, Result};
use crate::lattice::{LatticeGraph, Sublattice};
use crate::linalg::{self, C64, I, ZERO};
use crate::sector::{self, ModelParams, Occupation, SectorConfig};

pub const DEFAULT_ORACLE_CAP: usize = 6;

/// Tolerance for the sector-union versus full-spectrum comparison.
pub const PARTITION_TOL: f64 = 1e-8;

use Ladder::{Annihilate as A, Create as C};

/// Kinetic part `Σ_bonds t (c†_i c_j + h.c.) + Δ (c†_i c†_j + h.c.)` on the
/// modes `offset + site`.
pub fn kinetic_operator(graph: &LatticeGraph, params: &ModelParams, offset: usize) -> FermionOperator {
    let mut op = FermionOperator::new();
    for bond in graph.bonds() {
        let (t, delta) = params.bond_couplings(bond);
        let (i, j) = (offset + bond.a_site, offset + bond.b_site);
        op.push_with_adjoint(t, &[C(i), A(j)]);
        op.push_with_adjoint(delta, &[C(i), C(j)]);
    }
    op
}

/// Handle on one (lattice, parameters) pair for the brute-force routines.
#[derive(Debug, Clone, Copy)]
pub struct Oracle<'a> {
    graph: &'a LatticeGraph,
    params: &'a ModelParams,
}

impl<'a> Oracle<'a> {
    pub fn new(graph: &'a LatticeGraph, params: &'a ModelParams) -> Result<Self> {
        Self::with_cap(graph, params, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(graph: &'a LatticeGraph, params: &'a ModelParams, cap: usize) -> Result<Self> {
        params.validate_for(graph)?;
        if graph.n_sites() > cap {
            return Err(Error::OracleCap { n_sites: graph.n_sites(), cap });
        }
        Ok(Self { graph, params })
    }

    pub fn n_sites(&self) -> usize {
        self.graph.n_sites()
    }

    pub fn graph(&self) -> &LatticeGraph {
        self.graph
    }

    pub fn params(&self) -> &ModelParams {
        self.params
    }

    /// `H0` on the `2^N`-dimensional Fock space.
    pub fn hamiltonian(&self) -> Mat<C64> {
        kinetic_operator(self.graph, self.params, 0).to_matrix(FockBasis::new(self.n_sites()))
    }

    pub fn number_operator(&self, site: usize) -> Mat<C64> {
        FermionOperator::new()
            .term(1.0, &[C(site), A(site)])
            .to_matrix(FockBasis::new(self.n_sites()))
    }

    /// `ρ ↦ −i[H0, ρ] + γ Σ_l (n_l ρ n_l − ½{n_l, ρ})`, assembled entrywise
    /// on the vectorized basis.
    pub fn superoperator_direct(&self) -> Superoperator {
        let d = 1usize << self.n_sites();
        let h = self.hamiltonian();
        let mut l = Mat::<C64>::zeros(d * d, d * d);
        // −i H ⊗ I + i I ⊗ Hᵀ
        for n in 0..d {
            for n2 in 0..d {
                let hv = h[(n, n2)];
                if hv == ZERO {
                    continue;
                }
                for m in 0..d {
                    l[(n * d + m, n2 * d + m)] += -I * hv;
                    // (I ⊗ Hᵀ)[(m, n), (m, n2)] = H[(n2, n)]
                    l[(m * d + n2, m * d + n)] += I * hv;
                }
            }
        }
        // Dephasing with Hermitian, diagonal jumps J_l = √γ n_l.
        let gamma = self.params.gamma;
        for site in 0..self.n_sites() {
            let occ = |s: usize| ((s >> site) & 1) as f64;
            for n in 0..d {
                for m in 0..d {
                    let (jn, jm) = (occ(n), occ(m));
                    let v = gamma * (jn * jm - 0.5 * jn * jn - 0.5 * jm * jm);
                    l[(n * d + m, n * d + m)] += v;
                }
            }
        }
        Superoperator::new(l, self.n_sites(), gamma)
    }

    /// The Liouvillian written with two fermion species: `c` for left and
    /// `c̃` for right multiplication,
    /// `−i Σ [t(c†c − c̃†c̃) + Δ(c†c† + c̃†c̃†) + h.c.] + γ Σ (n−½)(ñ−½) − Nγ/4`,
    /// built on `2N` modes and mapped back to the vectorized basis.
    pub fn superoperator_fermionic(&self) -> Superoperator {
        let n = self.n_sites();
        let gamma = self.params.gamma;
        let mut op = FermionOperator::new();
        for bond in self.graph.bonds() {
            let (t, delta) = self.params.bond_couplings(bond);
            let (i, j) = (bond.a_site, bond.b_site);
            let (ti, tj) = (n + i, n + j);
            op.push_with_adjoint(t, &[C(i), A(j)]);
            op.push_with_adjoint(-t, &[C(ti), A(tj)]);
            op.push_with_adjoint(delta, &[C(i), C(j)]);
            op.push_with_adjoint(delta, &[C(ti), C(tj)]);
        }
        let mut op = op.scaled(-I);
        for l in 0..n {
            let tl = n + l;
            op.push(gamma, &[C(l), A(l), C(tl), A(tl)]);
            op.push(-gamma / 2.0, &[C(l), A(l)]);
            op.push(-gamma / 2.0, &[C(tl), A(tl)]);
            op.push(gamma / 4.0, &[]);
        }
        op.push(-(n as f64) * gamma / 4.0, &[]);
        let fock = op.to_matrix(FockBasis::new(2 * n));
        Superoperator::new(FockAlignment::new(n).to_vectorized(&fock), n, gamma)
    }

    /// Non-Hermitian BCS-Hubbard Hamiltonian with spin-up modes `0..N` and
    /// spin-down modes `N..2N`, assembled directly and expressed on the
    /// vectorized basis:
    /// `Σ_σ [t c†_σ c_σ + Δ c†_σ c†_σ + h.c.] + iγ Σ (n↑−½)(n↓−½) − iNγ/4`.
    pub fn bcs_hubbard_direct(&self) -> Mat<C64> {
        let n = self.n_sites();
        let gamma = self.params.gamma;
        let mut op = kinetic_operator(self.graph, self.params, 0);
        op.extend(kinetic_operator(self.graph, self.params, n));
        for l in 0..n {
            let dl = n + l;
            op.push(I * gamma, &[C(l), A(l), C(dl), A(dl)]);
            op.push(-I * gamma / 2.0, &[C(l), A(l)]);
            op.push(-I * gamma / 2.0, &[C(dl), A(dl)]);
            op.push(I * gamma / 4.0, &[]);
        }
        op.push(-I * (n as f64) * gamma / 4.0, &[]);
        let fock = op.to_matrix(FockBasis::new(2 * n));
        FockAlignment::new(n).to_vectorized(&fock)
    }

    /// Compares the union of sector eigenvalues `λ_m` over all `2^N`
    /// configurations with the full Liouvillian spectrum.
    pub fn sector_partition_check(&self) -> Result<PartitionReport> {
        self.params.require_solvable()?;
        let full = self.superoperator_direct().full_spectrum()?;
        let union = sector_union(self.graph, self.params)?;
        let max_mismatch = linalg::multiset_distance(&full, &union);
        let report = PartitionReport { n_eigenvalues: full.len(), max_mismatch };
        if !(max_mismatch < PARTITION_TOL) {
            return Err(Error::CheckFailed(format!(
                "sector union differs from the full spectrum by {max_mismatch:e}"
            )));
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionReport {
    pub n_eigenvalues: usize,
    pub max_mismatch: f64,
}

/// Every `λ_m` of every sector, `4^N` values in total.
pub fn sector_union(graph: &LatticeGraph, params: &ModelParams) -> Result<Vec<C64>> {
    let n = graph.n_sites();
    let mut out = Vec::with_capacity(1 << (2 * n));
    for mask in 0..1u64 << n {
        let config = SectorConfig::from_mask(n, mask);
        let spectrum = sector::solve_sector(graph, params, &config, false)?;
        for occ in 0..1u64 << n {
            out.push(sector::assemble_lambda(&spectrum, &Occupation::from_mask(n, occ))?);
        }
    }
    Ok(out)
}

/// `H = i U† L U` with `U = Π exp[iπ/2 (ñ_{i∈A} − ñ_{j∈B})]`.
///
/// Eigenvalues satisfy `λ = −iE`.
pub fn rotate_to_bcs_hubbard(l: &Superoperator, graph: &LatticeGraph) -> Result<Mat<C64>> {
    let n = l.n_sites();
    if graph.n_sites() != n {
        return Err(Error::Dimension(format!(
            "Liouvillian has {n} sites, lattice has {}",
            graph.n_sites()
        )));
    }
    let d = 1usize << n;
    let phases: Vec<C64> = (0..d * d)
        .map(|v| {
            let bra = v % d;
            let mut power: i64 = 0;
            for site in 0..n {
                if (bra >> site) & 1 == 1 {
                    power += match graph.sublattice(site) {
                        Sublattice::A => 1,
                        Sublattice::B => -1,
                    };
                }
            }
            I.powi(power.rem_euclid(4) as i32)
        })
        .collect();
    let m = l.matrix();
    Ok(Mat::from_fn(d * d, d * d, |r, c| I * phases[r].conj() * m[(r, c)] * phases[c]))
}
