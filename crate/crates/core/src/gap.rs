//! Liouvillian gap over families of sectors.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::LatticeGraph;
use crate::linalg::C64;
use crate::sector::{self, tol_zero, ModelParams, SectorConfig, SectorMax};

/// Largest lattice for which every sector may be enumerated.
pub const EXHAUSTIVE_CAP: usize = 14;
pub const DEFAULT_BLOCK_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// All `2^(N−1)` configurations with site 0 unflipped.
    Exhaustive,
    /// The unflipped sector plus segments (1D) or hyperrectangular blocks.
    Blocks { block_cap: usize },
    Custom(Vec<SectorConfig>),
}

impl Default for Family {
    fn default() -> Self {
        Family::Blocks { block_cap: DEFAULT_BLOCK_CAP }
    }
}

/// Shape part of a configuration label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Unflipped,
    /// Axis-aligned block; `origin` is set when translates are enumerated.
    Block { sides: Vec<usize>, origin: Option<usize> },
    Sites(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigLabel {
    pub n_flipped: usize,
    pub shape: Shape,
}

impl ConfigLabel {
    pub fn shape_tag(&self) -> String {
        match &self.shape {
            Shape::Unflipped => "none".to_string(),
            Shape::Block { sides, origin } => {
                let kind = if sides.len() == 1 { "segment" } else { "block" };
                let sides: Vec<String> = sides.iter().map(|s| s.to_string()).collect();
                match origin {
                    Some(o) => format!("{kind}:{}@{o}", sides.join("x")),
                    None => format!("{kind}:{}", sides.join("x")),
                }
            }
            Shape::Sites(sites) => {
                let sites: Vec<String> = sites.iter().map(|s| s.to_string()).collect();
                format!("sites:{}", sites.join("+"))
            }
        }
    }

    /// Length of a 1D segment.
    pub fn segment_length(&self) -> Option<usize> {
        match &self.shape {
            Shape::Block { sides, .. } if sides.len() == 1 => Some(sides[0]),
            _ => None,
        }
    }
}

impl fmt::Display for ConfigLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-flipped {}", self.n_flipped, self.shape_tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub config: SectorConfig,
    pub label: ConfigLabel,
}

impl Candidate {
    fn sites(config: SectorConfig) -> Self {
        let label = ConfigLabel { n_flipped: config.n_flipped(), shape: Shape::Sites(config.flipped_sites()) };
        Self { config, label }
    }
}

/// Configurations scanned for a family, sorted by label.
pub fn candidate_configs(graph: &LatticeGraph, params: &ModelParams, family: &Family) -> Result<Vec<Candidate>> {
    let n = graph.n_sites();
    let mut out = match family {
        Family::Exhaustive => {
            if n > EXHAUSTIVE_CAP {
                return Err(Error::InvalidPlan(format!(
                    "exhaustive family allows at most {EXHAUSTIVE_CAP} sites, lattice has {n}"
                )));
            }
            (0..1u64 << (n - 1)).map(|m| Candidate::sites(SectorConfig::from_mask(n, m << 1))).collect()
        }
        Family::Custom(configs) => {
            for c in configs {
                if c.n_sites() != n {
                    return Err(Error::InvalidPlan(format!(
                        "custom config has {} sites, lattice has {n}",
                        c.n_sites()
                    )));
                }
            }
            configs.iter().cloned().map(Candidate::sites).collect()
        }
        Family::Blocks { block_cap } => block_family(graph, params, *block_cap)?,
    };
    out.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.config.signs().cmp(b.config.signs())));
    Ok(out)
}

fn block_family(graph: &LatticeGraph, params: &ModelParams, block_cap: usize) -> Result<Vec<Candidate>> {
    if block_cap == 0 {
        return Err(Error::InvalidPlan("block cap must be at least 1".into()));
    }
    let n = graph.n_sites();
    let mut out = vec![Candidate {
        config: SectorConfig::all_up(n),
        label: ConfigLabel { n_flipped: 0, shape: Shape::Unflipped },
    }];
    let single = graph.is_periodic() && params.is_uniform();
    for sides in block_shapes(graph.dims(), block_cap) {
        let origins: Vec<usize> = if single {
            vec![0]
        } else {
            (0..n).filter(|&o| block_sites(graph, o, &sides).is_some()).collect()
        };
        for origin in origins {
            let sites = block_sites(graph, origin, &sides).expect("origin checked");
            let config = SectorConfig::from_flipped(n, &sites)?;
            let label = ConfigLabel {
                n_flipped: sites.len(),
                shape: Shape::Block { sides: sides.clone(), origin: (!single).then_some(origin) },
            };
            out.push(Candidate { config, label });
        }
    }
    Ok(out)
}

/// Side lengths up to `L_i/2`, and also up to `cap` when `d ≥ 2`.
/// Permutations are merged when all axes have the same length.
fn block_shapes(dims: &[usize], block_cap: usize) -> Vec<Vec<usize>> {
    let cap = if dims.len() == 1 { usize::MAX } else { block_cap };
    let limits: Vec<usize> = dims.iter().map(|&l| cap.min(l / 2).max(1)).collect();
    let congruent_axes = dims.iter().all(|&l| l == dims[0]);
    let mut shapes: Vec<Vec<usize>> = Vec::new();
    let mut sides = vec![1usize; dims.len()];
    'odometer: loop {
        let mut canonical = sides.clone();
        if congruent_axes {
            canonical.sort_unstable();
        }
        if !shapes.contains(&canonical) {
            shapes.push(canonical);
        }
        for axis in 0..sides.len() {
            sides[axis] += 1;
            if sides[axis] <= limits[axis] {
                continue 'odometer;
            }
            sides[axis] = 1;
        }
        return shapes;
    }
}

/// Sites of the block with corner `origin`, or `None` if it leaves an open
/// lattice.
fn block_sites(graph: &LatticeGraph, origin: usize, sides: &[usize]) -> Option<Vec<usize>> {
    let mut sites = vec![origin];
    for (axis, &side) in sides.iter().enumerate() {
        let mut next = Vec::with_capacity(sites.len() * side);
        for &s in &sites {
            for k in 0..side {
                next.push(graph.shift(s, axis, k as isize)?);
            }
        }
        sites = next;
    }
    sites.sort_unstable();
    Some(sites)
}

/// Per-site weights of one single-particle mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeProfile {
    pub eigenvalue: C64,
    /// Normalized `|ψ_l|²`.
    pub weights: Vec<f64>,
    /// Total weight within graph distance 1 of the flipped sites.
    pub localization: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapResult {
    pub gamma: f64,
    /// `+∞` when no scanned sector has a decaying mode.
    pub gap: f64,
    pub argmax: Option<ConfigLabel>,
    pub argmax_config: Option<SectorConfig>,
    /// Sector maxima in candidate order; `None` for sectors without decay.
    pub per_config: Vec<(ConfigLabel, Option<f64>)>,
    pub slowest_mode: Option<ModeProfile>,
}

impl GapResult {
    pub fn is_defined(&self) -> bool {
        self.gap.is_finite()
    }
}

pub fn liouvillian_gap(graph: &LatticeGraph, params: &ModelParams, family: &Family) -> Result<GapResult> {
    let candidates = candidate_configs(graph, params, family)?;
    gap_over(graph, params, &candidates, false)
}

/// Gap over an explicit candidate list.
pub fn gap_over(
    graph: &LatticeGraph,
    params: &ModelParams,
    candidates: &[Candidate],
    record_modes: bool,
) -> Result<GapResult> {
    params.validate_for(graph)?;
    params.require_solvable()?;
    let maxima = sector_maxima(graph, params, candidates)?;
    let tol = tol_zero(params.gamma, graph.n_sites());
    let best = pick_argmax(&maxima, tol, |_| true);
    let per_config = candidates.iter().zip(&maxima).map(|(c, m)| (c.label.clone(), *m)).collect();
    let Some((index, value)) = best else {
        return Ok(GapResult {
            gamma: params.gamma,
            gap: f64::INFINITY,
            argmax: None,
            argmax_config: None,
            per_config,
            slowest_mode: None,
        });
    };
    let config = candidates[index].config.clone();
    let slowest_mode = if record_modes && config.n_flipped() > 0 {
        Some(slowest_mode_profile(graph, params, &config)?)
    } else {
        None
    };
    Ok(GapResult {
        gamma: params.gamma,
        gap: -value,
        argmax: Some(candidates[index].label.clone()),
        argmax_config: Some(config),
        per_config,
        slowest_mode,
    })
}

fn sector_maxima(graph: &LatticeGraph, params: &ModelParams, candidates: &[Candidate]) -> Result<Vec<Option<f64>>> {
    candidates
        .par_iter()
        .map(|c| {
            let spectrum = sector::solve_sector(graph, params, &c.config, false)?;
            Ok(sector::sector_max_nonzero(&spectrum).map(|m: SectorMax| m.value))
        })
        .collect()
}

/// Index and value of the largest entry accepted by `keep`. Entries within
/// `tol` of the maximum tie, and the earliest one wins; candidates are
/// sorted by flip count first.
fn pick_argmax(maxima: &[Option<f64>], tol: f64, keep: impl Fn(usize) -> bool) -> Option<(usize, f64)> {
    let top = maxima
        .iter()
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .filter_map(|(_, m)| *m)
        .fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return None;
    }
    maxima
        .iter()
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .find_map(|(i, m)| m.filter(|v| *v >= top - tol).map(|v| (i, v)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanPlan {
    pub gamma_grid: Vec<f64>,
    pub family: Family,
    pub record_modes: bool,
}

impl ScanPlan {
    pub fn new(gamma_grid: Vec<f64>, family: Family) -> Self {
        Self { gamma_grid, family, record_modes: false }
    }

    pub fn validate(&self, graph: &LatticeGraph) -> Result<()> {
        validate_grid(&self.gamma_grid)?;
        if self.family == Family::Exhaustive && graph.n_sites() > EXHAUSTIVE_CAP {
            return Err(Error::InvalidPlan(format!(
                "exhaustive family allows at most {EXHAUSTIVE_CAP} sites, lattice has {}",
                graph.n_sites()
            )));
        }
        Ok(())
    }
}

pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if let Some(g) = grid.iter().find(|g| !(**g > 0.0) || !g.is_finite()) {
        return Err(Error::InvalidPlan(format!("gamma grid values must be positive and finite, got {g}")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidPlan("gamma grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Log-spaced grid with both endpoints.
pub fn log_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![min],
        _ => {
            let (a, b) = (min.ln(), max.ln());
            (0..points)
                .map(|k| {
                    if k == points - 1 {
                        max
                    } else {
                        (a + (b - a) * k as f64 / (points - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

pub fn linear_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![min],
        _ => (0..points).map(|k| min + (max - min) * k as f64 / (points - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZenoScan {
    pub points: Vec<GapResult>,
    /// Grid point with the largest gap.
    pub crossover: Option<f64>,
    /// `4t√d`
    pub gamma_c_estimate: f64,
}

pub fn zeno_scan(graph: &LatticeGraph, params: &ModelParams, plan: &ScanPlan) -> Result<ZenoScan> {
    plan.validate(graph)?;
    params.validate_for(graph)?;
    params.require_solvable()?;
    let candidates = candidate_configs(graph, params, &plan.family)?;
    let points: Vec<GapResult> = plan
        .gamma_grid
        .par_iter()
        .map(|&g| gap_over(graph, &params.with_gamma(g), &candidates, plan.record_modes))
        .collect::<Result<_>>()?;
    let crossover = points
        .iter()
        .filter(|p| p.is_defined())
        .fold(None::<&GapResult>, |best, p| match best {
            Some(b) if b.gap >= p.gap => Some(b),
            _ => Some(p),
        })
        .map(|p| p.gamma);
    Ok(ZenoScan { points, crossover, gamma_c_estimate: 4.0 * params.t.abs() * (graph.dimension() as f64).sqrt() })
}

/// Slowest sector among flipped configurations at one `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingRow {
    pub gamma: f64,
    pub argmax: Option<ConfigLabel>,
    /// `|max Re λ|` per candidate, in candidate order.
    pub per_config: Vec<(ConfigLabel, Option<f64>)>,
}

impl CrossingRow {
    pub fn flips(&self) -> Option<usize> {
        self.argmax.as_ref().map(|l| l.n_flipped)
    }
}

/// A run of consecutive grid points sharing the same argmax flip count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingInterval {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub flips: Option<usize>,
}

/// Argmax over the flipped configurations of the family. The unflipped
/// sector is left out: its slowest mode, `−γ/2`, is also present in every
/// single-flip sector.
pub fn crossing_scan(
    graph: &LatticeGraph,
    params: &ModelParams,
    gamma_grid: &[f64],
    family: &Family,
) -> Result<Vec<CrossingRow>> {
    validate_grid(gamma_grid)?;
    params.validate_for(graph)?;
    params.require_solvable()?;
    let candidates = candidate_configs(graph, params, family)?;
    gamma_grid
        .par_iter()
        .map(|&g| {
            let p = params.with_gamma(g);
            let maxima = sector_maxima(graph, &p, &candidates)?;
            let tol = tol_zero(g, graph.n_sites());
            let best = pick_argmax(&maxima, tol, |i| candidates[i].label.n_flipped > 0);
            Ok(CrossingRow {
                gamma: g,
                argmax: best.map(|(i, _)| candidates[i].label.clone()),
                per_config: candidates
                    .iter()
                    .zip(maxima)
                    .map(|(c, m)| (c.label.clone(), m.map(f64::abs)))
                    .collect(),
            })
        })
        .collect()
}

pub fn sector_crossing_report(
    graph: &LatticeGraph,
    params: &ModelParams,
    gamma_grid: &[f64],
    family: &Family,
) -> Result<Vec<CrossingInterval>> {
    Ok(crossing_intervals(&crossing_scan(graph, params, gamma_grid, family)?))
}

pub fn crossing_intervals(rows: &[CrossingRow]) -> Vec<CrossingInterval> {
    let mut out: Vec<CrossingInterval> = Vec::new();
    for row in rows {
        match out.last_mut() {
            Some(last) if last.flips == row.flips() => last.gamma_max = row.gamma,
            _ => out.push(CrossingInterval { gamma_min: row.gamma, gamma_max: row.gamma, flips: row.flips() }),
        }
    }
    out
}

/// The single-particle mode with the largest `Im E_α` and its spatial
/// weights.
pub fn slowest_mode_profile(graph: &LatticeGraph, params: &ModelParams, config: &SectorConfig) -> Result<ModeProfile> {
    if config.n_flipped() == 0 {
        return Err(Error::InvalidParams("slowest-mode profile needs at least one flipped site".into()));
    }
    let spectrum = sector::solve_sector(graph, params, config, true)?;
    let vectors = spectrum.eigenvectors.as_ref().expect("requested eigenvectors");
    let alpha = (0..spectrum.n_modes())
        .max_by(|&a, &b| {
            spectrum.eigenvalues[a].im.total_cmp(&spectrum.eigenvalues[b].im).then(b.cmp(&a))
        })
        .ok_or_else(|| Error::Dimension("empty sector".into()))?;
    let raw: Vec<f64> = (0..spectrum.n_modes()).map(|l| vectors[(l, alpha)].norm_sqr()).collect();
    let total: f64 = raw.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Solver("eigenvector has zero norm".into()));
    }
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();

    let mut near = vec![false; graph.n_sites()];
    for site in config.flipped_sites() {
        near[site] = true;
        for nb in graph.neighbors(site)? {
            near[nb.site] = true;
        }
    }
    let localization = weights.iter().zip(&near).filter(|(_, &n)| n).map(|(w, _)| w).sum();
    Ok(ModeProfile { eigenvalue: spectrum.eigenvalues[alpha], weights, localization })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, LatticeSpec};
    use crate::sector::DirectionCouplings;

    fn ring(n: usize) -> LatticeGraph {
        build_lattice(&LatticeSpec::periodic(&[n])).unwrap()
    }

    #[test]
    fn one_dimensional_default_family() {
        let g = ring(40);
        let p = ModelParams::solvable(1.0, 1.0);
        let c = candidate_configs(&g, &p, &Family::default()).unwrap();
        assert_eq!(c.len(), 21);
        assert_eq!(c[0].label.shape, Shape::Unflipped);
        for (n, cand) in c.iter().enumerate().skip(1) {
            assert_eq!(cand.label.n_flipped, n);
            assert_eq!(cand.label.segment_length(), Some(n));
            assert_eq!(cand.config.flipped_sites(), (0..n).collect::<Vec<_>>());
        }
        assert_eq!(c[3].label.shape_tag(), "segment:3");
    }

    #[test]
    fn two_dimensional_blocks_are_deduplicated() {
        let g = build_lattice(&LatticeSpec::periodic(&[4, 4])).unwrap();
        let p = ModelParams::solvable(1.0, 1.0);
        let c = candidate_configs(&g, &p, &Family::default()).unwrap();
        let tags: Vec<String> = c.iter().map(|c| c.label.shape_tag()).collect();
        assert_eq!(tags, ["none", "block:1x1", "block:1x2", "block:2x2"]);
        let g = build_lattice(&LatticeSpec::periodic(&[20, 20])).unwrap();
        let c = candidate_configs(&g, &p, &Family::default()).unwrap();
        assert_eq!(c.len(), 11);
        assert!(c.iter().any(|c| c.label.shape_tag() == "block:3x4" && c.label.n_flipped == 12));
    }

    #[test]
    fn rectangular_lattice_keeps_orientations() {
        let g = build_lattice(&LatticeSpec::periodic(&[4, 8])).unwrap();
        let p = ModelParams::solvable(1.0, 1.0);
        let c = candidate_configs(&g, &p, &Family::default()).unwrap();
        let tags: Vec<String> = c.iter().map(|c| c.label.shape_tag()).collect();
        assert!(tags.contains(&"block:1x3".to_string()));
        assert!(!tags.contains(&"block:3x1".to_string()));
        assert!(tags.contains(&"block:2x1".to_string()) && tags.contains(&"block:1x2".to_string()));
    }

    #[test]
    fn open_lattice_enumerates_translates() {
        let g = build_lattice(&LatticeSpec::open(&[6])).unwrap();
        let p = ModelParams::solvable(1.0, 1.0);
        let c = candidate_configs(&g, &p, &Family::default()).unwrap();
        // segments of length 1, 2, 3 at 6, 5, 4 positions
        assert_eq!(c.len(), 1 + 6 + 5 + 4);
        assert!(c.iter().any(|c| c.label.shape_tag() == "segment:3@3"));
    }

    #[test]
    fn overrides_enumerate_translates() {
        let g = ring(8);
        let o = DirectionCouplings { t_plus: 1.0, delta_plus: 1.0, t_minus: 0.5, delta_minus: 0.5 };
        let p = ModelParams::solvable(1.0, 1.0).with_overrides(vec![o]);
        let c = candidate_configs(&g, &p, &Family::default()).unwrap();
        assert_eq!(c.len(), 1 + 8 * 4);
    }

    #[test]
    fn exhaustive_family() {
        let g = ring(4);
        let p = ModelParams::solvable(1.0, 1.0);
        let c = candidate_configs(&g, &p, &Family::Exhaustive).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.iter().all(|c| !c.config.is_flipped(0)));
        let big = ring(16);
        assert!(matches!(candidate_configs(&big, &p, &Family::Exhaustive), Err(Error::InvalidPlan(_))));
        let plan = ScanPlan::new(vec![1.0], Family::Exhaustive);
        assert!(plan.validate(&big).is_err());
    }

    #[test]
    fn custom_family_checks_size() {
        let g = ring(4);
        let p = ModelParams::solvable(1.0, 1.0);
        let bad = Family::Custom(vec![SectorConfig::all_up(6)]);
        assert!(candidate_configs(&g, &p, &bad).is_err());
        let ok = Family::Custom(vec![SectorConfig::from_flipped(4, &[1, 2]).unwrap()]);
        let c = candidate_configs(&g, &p, &ok).unwrap();
        assert_eq!(c[0].label.shape_tag(), "sites:1+2");
    }

    #[test]
    fn small_gamma_gap_is_half_gamma() {
        let g = ring(12);
        let p = ModelParams::solvable(1.0, 0.04);
        let r = liouvillian_gap(&g, &p, &Family::default()).unwrap();
        assert!((r.gap - 0.02).abs() < 1e-10);
        assert!(r.argmax.unwrap().n_flipped <= 1);
    }

    #[test]
    fn undamped_gap_is_undefined() {
        let g = ring(6);
        let p = ModelParams::solvable(1.0, 0.0);
        let r = liouvillian_gap(&g, &p, &Family::default()).unwrap();
        assert!(!r.is_defined());
        assert_eq!(r.argmax, None);
    }

    #[test]
    fn non_solvable_rejected() {
        let g = ring(6);
        let p = ModelParams::new(1.0, 0.5, 1.0);
        assert!(matches!(liouvillian_gap(&g, &p, &Family::default()), Err(Error::NonSolvable(_))));
    }

    #[test]
    fn superset_never_increases_gap() {
        let g = ring(8);
        for gamma in [0.3, 2.0, 9.0] {
            let p = ModelParams::solvable(1.0, gamma);
            let small = liouvillian_gap(&g, &p, &Family::default()).unwrap();
            let all = liouvillian_gap(&g, &p, &Family::Exhaustive).unwrap();
            assert!(all.gap <= small.gap + 1e-12);
        }
    }

    #[test]
    fn grids() {
        let g = log_grid(0.1, 100.0, 4);
        assert!((g[1] - 1.0).abs() < 1e-12 && (g[2] - 10.0).abs() < 1e-12);
        assert_eq!(g[3], 100.0);
        assert_eq!(linear_grid(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert!(log_grid(1.0, 2.0, 0).is_empty());
        assert_eq!(log_grid(3.0, 5.0, 1), vec![3.0]);
        assert!(validate_grid(&[1.0, 1.0]).is_err());
        assert!(validate_grid(&[0.0, 1.0]).is_err());
        assert!(validate_grid(&[]).is_ok());
    }

    #[test]
    fn crossing_intervals_merge_runs() {
        let label = |n| Some(ConfigLabel { n_flipped: n, shape: Shape::Unflipped });
        let rows: Vec<CrossingRow> = [(0.1, 1), (0.2, 1), (0.3, 2), (0.4, 2), (0.5, 1)]
            .iter()
            .map(|&(g, n)| CrossingRow { gamma: g, argmax: label(n), per_config: vec![] })
            .collect();
        let iv = crossing_intervals(&rows);
        assert_eq!(iv.len(), 3);
        assert_eq!((iv[0].gamma_min, iv[0].gamma_max, iv[0].flips), (0.1, 0.2, Some(1)));
        assert_eq!(iv[2].flips, Some(1));
        assert!(crossing_intervals(&[]).is_empty());
    }

    #[test]
    fn zero_hopping_profile_is_on_site() {
        let g = ring(10);
        let p = ModelParams::solvable(0.0, 1.0);
        let c = SectorConfig::from_flipped(10, &[4]).unwrap();
        let m = slowest_mode_profile(&g, &p, &c).unwrap();
        assert!((m.localization - 1.0).abs() < 1e-14);
        assert!((m.weights[4] - 1.0).abs() < 1e-14);
        assert!(slowest_mode_profile(&g, &p, &SectorConfig::all_up(10)).is_err());
    }

    #[test]
    fn tie_break_prefers_fewer_flips() {
        let maxima = [Some(-0.5), Some(-0.5 + 1e-13), Some(-0.7), None];
        assert_eq!(pick_argmax(&maxima, 1e-10, |_| true), Some((0, -0.5)));
        assert_eq!(pick_argmax(&maxima, 1e-10, |i| i > 0), Some((1, -0.5 + 1e-13)));
        assert_eq!(pick_argmax(&[None, None], 1e-10, |_| true), None);
    }

    #[test]
    fn zeno_scan_reports_crossover() {
        let g = ring(16);
        let p = ModelParams::solvable(1.0, 1.0);
        let plan = ScanPlan::new(log_grid(0.1, 100.0, 13), Family::default());
        let scan = zeno_scan(&g, &p, &plan).unwrap();
        assert_eq!(scan.points.len(), 13);
        let gmax = scan.crossover.unwrap();
        assert!((1.0..=10.0).contains(&gmax), "{gmax}");
        assert_eq!(scan.gamma_c_estimate, 4.0);
    }
}
