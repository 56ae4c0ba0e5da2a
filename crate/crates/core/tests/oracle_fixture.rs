//! The brute-force Liouvillian against a stored reference spectrum of the
//! 4-site ring at t = Δ = 1, γ = 0.7, computed with a separate dense
//! eigensolver.

use bcs_liouvillian::gap::{liouvillian_gap, Family};
use bcs_liouvillian::linalg::multiset_distance;
use bcs_liouvillian::oracle::{exact_gap, sector_union, Oracle};
use bcs_liouvillian::{build_lattice, LatticeSpec, ModelParams, C64};

const FIXTURE: &str = include_str!("fixtures/liouvillian_n4_t1_delta1_gamma0.7.csv");
const FIXTURE_GAP: f64 = 0.347299799815191;

fn fixture() -> Vec<C64> {
    let mut reader = csv::Reader::from_reader(FIXTURE.as_bytes());
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            C64::new(r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect()
}

#[test]
fn fixture_has_all_eigenvalues() {
    assert_eq!(fixture().len(), 256);
}

#[test]
fn direct_superoperator_matches_fixture() {
    let g = build_lattice(&LatticeSpec::periodic(&[4])).unwrap();
    let p = ModelParams::solvable(1.0, 0.7);
    let l = Oracle::new(&g, &p).unwrap().superoperator_direct();
    let spectrum = l.full_spectrum().unwrap();
    assert!(multiset_distance(&spectrum, &fixture()) < 1e-10);
    let gap = exact_gap(&spectrum, l.tol_zero()).unwrap();
    assert!((gap - FIXTURE_GAP).abs() < 1e-10, "{gap}");
}

#[test]
fn sectors_match_fixture() {
    let g = build_lattice(&LatticeSpec::periodic(&[4])).unwrap();
    let p = ModelParams::solvable(1.0, 0.7);
    let union = sector_union(&g, &p).unwrap();
    assert!(multiset_distance(&union, &fixture()) < 1e-10);
    let r = liouvillian_gap(&g, &p, &Family::Exhaustive).unwrap();
    assert!((r.gap - FIXTURE_GAP).abs() < 1e-10);
}

/// On four sites the slowest mode sits slightly above `−γ/2`; reference
/// value from the same separate eigensolver as the fixture.
const SMALL_GAMMA_GAP: f64 = 0.04999218627929546;

#[test]
fn small_gamma_gap_on_the_oracle() {
    let g = build_lattice(&LatticeSpec::periodic(&[4])).unwrap();
    let p = ModelParams::solvable(1.0, 0.1);
    let l = Oracle::new(&g, &p).unwrap().superoperator_direct();
    let gap = exact_gap(&l.full_spectrum().unwrap(), l.tol_zero()).unwrap();
    assert!((gap - SMALL_GAMMA_GAP).abs() < 1e-10, "{gap}");
    assert!((gap - 0.05).abs() / 0.05 < 2e-4);
}

#[test]
fn undamped_oracle_has_no_gap() {
    let g = build_lattice(&LatticeSpec::periodic(&[4])).unwrap();
    let p = ModelParams::solvable(1.0, 0.0);
    let l = Oracle::new(&g, &p).unwrap().superoperator_direct();
    assert_eq!(exact_gap(&l.full_spectrum().unwrap(), l.tol_zero()), None);
}
