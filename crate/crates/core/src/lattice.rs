//! Bipartite hypercubic lattices.
//!
//! Sites are indexed row-major over their coordinates (the first axis is the
//! slowest). A site is on sublattice A when its coordinate sum is even.
//! Every nearest-neighbor bond is stored once, oriented from its A endpoint.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Periodic,
    Open,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => f.write_str("periodic"),
            Boundary::Open => f.write_str("open"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub dims: Vec<usize>,
    pub boundary: Boundary,
}

impl LatticeSpec {
    pub fn periodic(dims: &[usize]) -> Self {
        Self { dims: dims.to_vec(), boundary: Boundary::Periodic }
    }

    pub fn open(dims: &[usize]) -> Self {
        Self { dims: dims.to_vec(), boundary: Boundary::Open }
    }

    /// Periodic sizes must be even (bipartiteness) and at least 4, so that
    /// the two neighbors along an axis are distinct sites.
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::InvalidLattice("at least one dimension is required".into()));
        }
        for (axis, &len) in self.dims.iter().enumerate() {
            if len < 2 {
                return Err(Error::InvalidLattice(format!(
                    "axis {axis} has length {len}; lengths must be at least 2"
                )));
            }
            if self.boundary == Boundary::Periodic {
                if len % 2 != 0 {
                    return Err(Error::InvalidLattice(format!(
                        "axis {axis} has odd length {len}; periodic lattices must have even lengths"
                    )));
                }
                if len < 4 {
                    return Err(Error::InvalidLattice(format!(
                        "axis {axis} has length {len}; periodic lattices need length >= 4"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sublattice {
    A,
    B,
}

/// Step direction along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_isize(self) -> isize {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A nearest-neighbor bond, stored from its A endpoint: `b_site` is reached
/// from `a_site` by one step along `direction` with the given `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bond {
    pub a_site: usize,
    pub b_site: usize,
    pub direction: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Neighbor {
    pub site: usize,
    pub direction: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone)]
pub struct LatticeGraph {
    spec: LatticeSpec,
    strides: Vec<usize>,
    sublattice: Vec<Sublattice>,
    bonds: Vec<Bond>,
    adjacency: Vec<Vec<Neighbor>>,
}

pub fn build_lattice(spec: &LatticeSpec) -> Result<LatticeGraph> {
    LatticeGraph::new(spec)
}

impl LatticeGraph {
    pub fn new(spec: &LatticeSpec) -> Result<Self> {
        spec.validate()?;
        let d = spec.dims.len();
        let mut strides = vec![1usize; d];
        for axis in (0..d.saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * spec.dims[axis + 1];
        }
        let n_sites: usize = spec.dims.iter().product();

        let mut graph = Self {
            spec: spec.clone(),
            strides,
            sublattice: Vec::with_capacity(n_sites),
            bonds: Vec::new(),
            adjacency: vec![Vec::new(); n_sites],
        };

        for site in 0..n_sites {
            let parity: usize = graph.coords(site).iter().sum::<usize>() % 2;
            graph.sublattice.push(if parity == 0 { Sublattice::A } else { Sublattice::B });
        }

        for site in 0..n_sites {
            for direction in 0..d {
                for sign in [Sign::Plus, Sign::Minus] {
                    if let Some(other) = graph.step(site, direction, sign) {
                        graph.adjacency[site].push(Neighbor { site: other, direction, sign });
                        if graph.sublattice[site] == Sublattice::A {
                            graph.bonds.push(Bond { a_site: site, b_site: other, direction, sign });
                        }
                    }
                }
            }
        }
        Ok(graph)
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn dims(&self) -> &[usize] {
        &self.spec.dims
    }

    pub fn dimension(&self) -> usize {
        self.spec.dims.len()
    }

    pub fn n_sites(&self) -> usize {
        self.sublattice.len()
    }

    pub fn boundary(&self) -> Boundary {
        self.spec.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.spec.boundary == Boundary::Periodic
    }

    pub fn sublattice(&self, site: usize) -> Sublattice {
        self.sublattice[site]
    }

    pub fn sublattices(&self) -> &[Sublattice] {
        &self.sublattice
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn coords(&self, site: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.spec.dims)
            .map(|(&stride, &len)| (site / stride) % len)
            .collect()
    }

    pub fn site_index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// Neighbor of `site` one step along `direction`, if it exists.
    pub fn step(&self, site: usize, direction: usize, sign: Sign) -> Option<usize> {
        self.shift(site, direction, sign.as_isize())
    }

    /// Moves `site` by `amount` along `direction`; wraps under periodic
    /// boundaries and returns `None` when leaving an open lattice.
    pub fn shift(&self, site: usize, direction: usize, amount: isize) -> Option<usize> {
        let len = self.spec.dims[direction] as isize;
        let stride = self.strides[direction];
        let x = ((site / stride) % len as usize) as isize;
        let target = x + amount;
        let wrapped = match self.spec.boundary {
            Boundary::Periodic => target.rem_euclid(len),
            Boundary::Open if (0..len).contains(&target) => target,
            Boundary::Open => return None,
        };
        Some((site as isize + (wrapped - x) * stride as isize) as usize)
    }

    pub fn neighbors(&self, site: usize) -> Result<&[Neighbor]> {
        self.adjacency
            .get(site)
            .map(Vec::as_slice)
            .ok_or(Error::SiteOutOfRange { site, n_sites: self.n_sites() })
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn unordered(bonds: &[Bond]) -> HashSet<(usize, usize)> {
        bonds.iter().map(|b| (b.a_site.min(b.b_site), b.a_site.max(b.b_site))).collect()
    }

    #[test]
    fn ring_of_four() {
        let g = build_lattice(&LatticeSpec::periodic(&[4])).unwrap();
        assert_eq!(g.n_sites(), 4);
        assert_eq!(g.bonds().len(), 4);
        assert_eq!(
            g.sublattices(),
            &[Sublattice::A, Sublattice::B, Sublattice::A, Sublattice::B]
        );
        let mut n0: Vec<usize> = g.neighbors(0).unwrap().iter().map(|n| n.site).collect();
        n0.sort();
        assert_eq!(n0, vec![1, 3]);
    }

    #[test]
    fn open_chain_end_has_one_neighbor() {
        let g = build_lattice(&LatticeSpec::open(&[4])).unwrap();
        let n0: Vec<usize> = g.neighbors(0).unwrap().iter().map(|n| n.site).collect();
        assert_eq!(n0, vec![1]);
        assert_eq!(g.bonds().len(), 3);
    }

    #[test]
    fn square_four_by_four() {
        let g = build_lattice(&LatticeSpec::periodic(&[4, 4])).unwrap();
        assert_eq!(g.n_sites(), 16);
        assert_eq!(g.bonds().len(), 32);
        for site in 0..16 {
            assert_eq!(g.neighbors(site).unwrap().len(), 4);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(
            build_lattice(&LatticeSpec::periodic(&[3])),
            Err(Error::InvalidLattice(_))
        ));
        assert!(build_lattice(&LatticeSpec::periodic(&[2])).is_err());
        assert!(build_lattice(&LatticeSpec::open(&[1])).is_err());
        assert!(build_lattice(&LatticeSpec::open(&[])).is_err());
        assert!(build_lattice(&LatticeSpec::open(&[2, 3])).is_ok());
    }

    #[test]
    fn out_of_range_site() {
        let g = build_lattice(&LatticeSpec::periodic(&[4])).unwrap();
        assert_eq!(g.neighbors(4), Err(Error::SiteOutOfRange { site: 4, n_sites: 4 }));
    }

    #[test]
    fn row_major_indexing() {
        let g = build_lattice(&LatticeSpec::periodic(&[4, 6])).unwrap();
        assert_eq!(g.site_index(&[1, 2]), 8);
        assert_eq!(g.coords(8), vec![1, 2]);
        for site in 0..g.n_sites() {
            assert_eq!(g.site_index(&g.coords(site)), site);
        }
    }

    #[test]
    fn bonds_are_bipartite_and_degree_regular() {
        for dims in [vec![4], vec![6, 4], vec![4, 4, 4]] {
            let g = build_lattice(&LatticeSpec::periodic(&dims)).unwrap();
            let d = dims.len();
            assert_eq!(g.bonds().len(), d * g.n_sites());
            let mut degree = vec![0; g.n_sites()];
            for b in g.bonds() {
                assert_eq!(g.sublattice(b.a_site), Sublattice::A);
                assert_eq!(g.sublattice(b.b_site), Sublattice::B);
                assert_eq!(g.step(b.a_site, b.direction, b.sign), Some(b.b_site));
                degree[b.a_site] += 1;
                degree[b.b_site] += 1;
            }
            assert!(degree.iter().all(|&k| k == 2 * d));
            assert_eq!(unordered(g.bonds()).len(), g.bonds().len());
        }
    }

    #[test]
    fn translation_permutes_bonds() {
        let g = build_lattice(&LatticeSpec::periodic(&[4, 6])).unwrap();
        let original = unordered(g.bonds());
        for direction in 0..2 {
            let moved: HashSet<(usize, usize)> = g
                .bonds()
                .iter()
                .map(|b| {
                    let i = g.shift(b.a_site, direction, 1).unwrap();
                    let j = g.shift(b.b_site, direction, 1).unwrap();
                    (i.min(j), i.max(j))
                })
                .collect();
            assert_eq!(moved, original);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let spec = LatticeSpec::periodic(&[4, 4]);
        let a = build_lattice(&spec).unwrap();
        let b = build_lattice(&spec).unwrap();
        assert_eq!(a.bonds(), b.bonds());
    }
}
