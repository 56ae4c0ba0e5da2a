//! Fermionic Fock space with Jordan-Wigner signs.
//!
//! Basis states are occupation bitstrings: bit `k` of the state index is the
//! occupation of mode `k`. Ladder operators on mode `k` pick up a factor
//! `(−1)` for every occupied mode with a smaller index.

use faer::Mat;

use crate::linalg::{C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
}

impl Ladder {
    pub fn adjoint(self) -> Self {
        match self {
            Ladder::Create(k) => Ladder::Annihilate(k),
            Ladder::Annihilate(k) => Ladder::Create(k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    n_modes: usize,
}

impl FockBasis {
    pub fn new(n_modes: usize) -> Self {
        assert!(n_modes < usize::BITS as usize, "too many modes for a dense Fock basis");
        Self { n_modes }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        1 << self.n_modes
    }

    /// Applies a single ladder operator to a basis state.
    pub fn apply(&self, op: Ladder, state: usize) -> Option<(i8, usize)> {
        let (mode, create) = match op {
            Ladder::Create(k) => (k, true),
            Ladder::Annihilate(k) => (k, false),
        };
        debug_assert!(mode < self.n_modes);
        let bit = 1usize << mode;
        let occupied = state & bit != 0;
        if occupied == create {
            return None;
        }
        let sign = if (state & (bit - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
        Some((sign, state ^ bit))
    }

    /// Applies an operator product, rightmost factor first.
    pub fn apply_product(&self, ops: &[Ladder], state: usize) -> Option<(i8, usize)> {
        ops.iter().rev().try_fold((1i8, state), |(sign, s), &op| {
            self.apply(op, s).map(|(sg, next)| (sign * sg, next))
        })
    }

    /// Integer matrix of a single ladder operator, row-major.
    pub fn sign_matrix(&self, op: Ladder) -> Vec<i64> {
        let dim = self.dim();
        let mut m = vec![0i64; dim * dim];
        for state in 0..dim {
            if let Some((sign, out)) = self.apply(op, state) {
                m[out * dim + state] = sign as i64;
            }
        }
        m
    }

    pub fn matrix(&self, op: Ladder) -> Mat<C64> {
        FermionOperator::new().term(1.0, &[op]).to_matrix(*self)
    }
}

/// A linear combination of ladder-operator products.
#[derive(Debug, Clone, Default)]
pub struct FermionOperator {
    terms: Vec<(C64, Vec<Ladder>)>,
}

impl FermionOperator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coefficient: impl Into<C64>, ops: &[Ladder]) -> Self {
        self.push(coefficient, ops);
        self
    }

    pub fn push(&mut self, coefficient: impl Into<C64>, ops: &[Ladder]) {
        let c = coefficient.into();
        if c != ZERO {
            self.terms.push((c, ops.to_vec()));
        }
    }

    /// Adds `coefficient · ops + h.c.`.
    pub fn push_with_adjoint(&mut self, coefficient: impl Into<C64>, ops: &[Ladder]) {
        let c = coefficient.into();
        let adjoint: Vec<Ladder> = ops.iter().rev().map(|op| op.adjoint()).collect();
        self.push(c, ops);
        self.push(c.conj(), &adjoint);
    }

    pub fn extend(&mut self, other: FermionOperator) {
        self.terms.extend(other.terms);
    }

    pub fn scaled(mut self, factor: C64) -> Self {
        for (c, _) in &mut self.terms {
            *c *= factor;
        }
        self
    }

    pub fn to_matrix(&self, basis: FockBasis) -> Mat<C64> {
        let dim = basis.dim();
        let mut m = Mat::<C64>::zeros(dim, dim);
        for state in 0..dim {
            for (c, ops) in &self.terms {
                if let Some((sign, out)) = basis.apply_product(ops, state) {
                    m[(out, state)] += *c * sign as f64;
                }
            }
        }
        m
    }
}
