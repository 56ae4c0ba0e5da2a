//! Sector eigenvalues against a root finder on the characteristic
//! polynomial, built without any library eigensolver.

use bcs_liouvillian::sector::{self, ModelParams, SectorConfig};
use bcs_liouvillian::{build_lattice, LatticeSpec, C64};

type M = Vec<Vec<C64>>;

fn matmul(a: &M, b: &M) -> M {
    let n = a.len();
    let mut out = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Monic characteristic polynomial coefficients `c[0..=n]`, `c[n] = 1`,
/// by Faddeev-LeVerrier.
fn charpoly(a: &M) -> Vec<C64> {
    let n = a.len();
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = C64::new(1.0, 0.0);
    let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
    for k in 1..=n {
        for i in 0..n {
            m[i][i] += c[n - k + 1];
        }
        let am = matmul(a, &m);
        let trace: C64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -trace / k as f64;
        m = am;
    }
    c
}

fn horner(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &x| acc * z + x)
}

/// Durand-Kerner simultaneous iteration.
fn roots(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let seed = C64::new(0.4, 0.9);
    let mut z: Vec<C64> = (0..n).map(|k| seed.powu(k as u32) * 3.0).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = horner(c, z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish with Newton
    let dc: Vec<C64> = (1..=n).map(|k| c[k] * k as f64).collect();
    for r in &mut z {
        for _ in 0..5 {
            let d = horner(&dc, *r);
            if d.norm() > 0.0 {
                *r -= horner(c, *r) / d;
            }
        }
    }
    z
}

fn greedy_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Ring of `n` sites, hopping `2t` between neighbors, `−iγ/2 D_l` on site.
fn ring_h(n: usize, t: f64, gamma: f64, signs: &[i8]) -> M {
    let mut h = vec![vec![C64::new(0.0, 0.0); n]; n];
    for l in 0..n {
        h[l][l] = C64::new(0.0, -gamma / 2.0 * signs[l] as f64);
        let r = (l + 1) % n;
        h[l][r] += C64::new(2.0 * t, 0.0);
        h[r][l] += C64::new(2.0 * t, 0.0);
    }
    h
}

#[test]
fn one_flipped_ring_of_eight() {
    let (n, t, gamma) = (8, 1.0, 0.5);
    let config = SectorConfig::from_flipped(n, &[0]).unwrap();
    let reference = roots(&charpoly(&ring_h(n, t, gamma, config.signs())));
    let graph = build_lattice(&LatticeSpec::periodic(&[n])).unwrap();
    let spectrum = sector::solve_sector(&graph, &ModelParams::solvable(t, gamma), &config, false).unwrap();
    let d = greedy_distance(&spectrum.eigenvalues, &reference);
    assert!(d < 1e-10, "mismatch {d}");
}

/// Translation-invariant sectors have degenerate pairs, which slow the
/// root finder down, so only irregular patterns are used here.
#[test]
fn other_sectors_of_the_ring() {
    let n = 8;
    let graph = build_lattice(&LatticeSpec::periodic(&[n])).unwrap();
    for (mask, gamma) in [(0b0011u64, 0.3), (0b0110, 1.7), (0b1011_0010, 4.0), (0b0101_1101, 0.9)] {
        let config = SectorConfig::from_mask(n, mask);
        let reference = roots(&charpoly(&ring_h(n, 0.8, gamma, config.signs())));
        let spectrum = sector::solve_sector(&graph, &ModelParams::solvable(0.8, gamma), &config, false).unwrap();
        assert!(greedy_distance(&spectrum.eigenvalues, &reference) < 1e-9, "mask {mask:b}");
    }
}

#[test]
fn charpoly_of_a_diagonal_matrix() {
    let d = [1.0, -2.0, 0.5];
    let a: M = (0..3)
        .map(|i| (0..3).map(|j| C64::new(if i == j { d[i] } else { 0.0 }, 0.0)).collect())
        .collect();
    let c = charpoly(&a);
    // (z − 1)(z + 2)(z − 0.5) = z³ + 0.5 z² − 2.5 z + 1
    let expected = [1.0, -2.5, 0.5, 1.0];
    for (x, e) in c.iter().zip(expected) {
        assert!((x - C64::new(e, 0.0)).norm() < 1e-14);
    }
}
