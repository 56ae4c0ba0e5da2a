//! Subcommand implementations. Each returns a table and leaves writing it
//! to the caller.

use crate::effective::gap_asymptotes;
use crate::error::{Error, Result};
use crate::gap::{self, ScanPlan};
use crate::lattice::LatticeGraph;
use crate::linalg::{self, C64, I};
use crate::oracle::{self, exact_gap, parity_operator, steady_states, Oracle, PSD_TOL};
use crate::sector::{self, tol_zero, ModelParams, SectorConfig};

use super::config::RunConfig;
use super::table::{Cell, ResultTable};

/// Which sector `solve-sector` diagonalizes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SectorChoice {
    #[default]
    Unflipped,
    Flipped(Vec<usize>),
    All,
}

impl SectorChoice {
    fn config(&self, n: usize) -> Result<SectorConfig> {
        match self {
            SectorChoice::Unflipped => Ok(SectorConfig::all_up(n)),
            SectorChoice::Flipped(sites) => SectorConfig::from_flipped(n, sites),
            SectorChoice::All => Ok(SectorConfig::all_down(n)),
        }
    }
}

pub fn solve_sector(config: &RunConfig, choice: &SectorChoice) -> Result<ResultTable> {
    let graph = config.graph()?;
    let params = config.params()?;
    let sector_config = choice.config(graph.n_sites())?;
    let mut spectrum = sector::solve_sector(&graph, &params, &sector_config, false)?;
    linalg::sort_lexicographic(&mut spectrum.eigenvalues);
    let mut table = ResultTable::new(["alpha", "re_E", "im_E"]);
    table.meta("flipped", join(&sector_config.flipped_sites()));
    for (alpha, e) in spectrum.eigenvalues.iter().enumerate() {
        table.push(vec![alpha.into(), e.re.into(), e.im.into()]);
    }
    table.push(vec!["constant".into(), spectrum.constant.re.into(), spectrum.constant.im.into()]);
    let max = sector::sector_max_nonzero(&spectrum).map(|m| m.value);
    table.push(vec!["sector_max".into(), max.into(), Cell::Empty]);
    Ok(table)
}

pub fn zeno_scan(config: &RunConfig) -> Result<ResultTable> {
    let graph = config.graph()?;
    let params = config.scan_params();
    let plan = ScanPlan {
        gamma_grid: config.gamma_grid(),
        family: config.family(graph.n_sites())?,
        record_modes: config.scan.record_modes,
    };
    let scan = gap::zeno_scan(&graph, &params, &plan)?;
    let mut columns = vec!["gamma", "gap", "argmax_flips", "argmax_shape", "small_gamma_pred", "large_gamma_pred"];
    if plan.record_modes {
        columns.push("localization");
    }
    let mut table = ResultTable::new(columns);
    let uniform = params.is_uniform();
    for point in &scan.points {
        let asym = if uniform { Some(gap_asymptotes(&params.with_gamma(point.gamma), graph.dimension())?) } else { None };
        let mut row = vec![
            point.gamma.into(),
            point.gap.into(),
            point.argmax.as_ref().map(|l| l.n_flipped).into(),
            point.argmax.as_ref().map(|l| l.shape_tag()).into(),
            asym.map(|a| a.small_gamma).into(),
            asym.map(|a| a.large_gamma).into(),
        ];
        if plan.record_modes {
            row.push(point.slowest_mode.as_ref().map(|m| m.localization).into());
        }
        table.push(row);
    }
    table.meta("crossover_gamma", scan.crossover.map_or("none".into(), |g| format!("{g}")));
    table.meta("gamma_c_estimate", format!("{}", scan.gamma_c_estimate));
    Ok(table)
}

pub fn crossing_report(config: &RunConfig) -> Result<ResultTable> {
    let graph = config.graph()?;
    let params = config.scan_params();
    let family = config.family(graph.n_sites())?;
    let grid = config.gamma_grid();
    let rows = gap::crossing_scan(&graph, &params, &grid, &family)?;
    let labels = gap::candidate_configs(&graph, &params, &family)?;
    let mut columns: Vec<String> =
        ["gamma", "flips_of_argmax", "segment_length", "argmax_shape"].map(String::from).to_vec();
    if config.scan.record_modes {
        columns.extend(labels.iter().map(|c| c.label.shape_tag()));
    }
    let mut table = ResultTable::new(columns);
    for row in &rows {
        let mut cells = vec![
            row.gamma.into(),
            row.flips().into(),
            row.argmax.as_ref().and_then(|l| l.segment_length()).into(),
            row.argmax.as_ref().map(|l| l.shape_tag()).into(),
        ];
        if config.scan.record_modes {
            cells.extend(row.per_config.iter().map(|(_, v)| Cell::from(*v)));
        }
        table.push(cells);
    }
    for iv in gap::crossing_intervals(&rows) {
        let flips = iv.flips.map_or("none".into(), |f| f.to_string());
        table.meta("interval", format!("{} .. {} flips={flips}", iv.gamma_min, iv.gamma_max));
    }
    Ok(table)
}

struct Check {
    name: &'static str,
    status: &'static str,
    value: f64,
    threshold: f64,
}

fn check(name: &'static str, value: f64, threshold: f64) -> Check {
    let status = if value < threshold { "pass" } else { "fail" };
    Check { name, status, value, threshold }
}

fn oracle_for<'a>(config: &RunConfig, graph: &'a LatticeGraph, params: &'a ModelParams) -> Result<Oracle<'a>> {
    Oracle::with_cap(graph, params, config.oracle.cap)
}

/// Brute-force cross-checks. Returns the table and whether every check
/// passed.
pub fn oracle_check(config: &RunConfig) -> Result<(ResultTable, bool)> {
    let graph = config.graph()?;
    let params = config.params()?;
    let o = oracle_for(config, &graph, &params)?;
    let n = graph.n_sites();
    let l = o.superoperator_direct();
    let spectrum = l.full_spectrum()?;
    let tol = tol_zero(params.gamma, n);
    let mut checks = Vec::new();

    let ferm = o.superoperator_fermionic();
    checks.push(check(
        "fermionic_vs_direct",
        linalg::max_abs_diff(l.matrix().as_ref(), ferm.matrix().as_ref()),
        1e-12,
    ));
    let rotated = oracle::rotate_to_bcs_hubbard(&l, &graph)?;
    checks.push(check(
        "rotated_vs_bcs_hubbard",
        linalg::max_abs_diff(rotated.as_ref(), o.bcs_hubbard_direct().as_ref()),
        1e-12,
    ));
    let from_h: Vec<C64> = linalg::eigenvalues(rotated.as_ref())?.into_iter().map(|e| -I * e).collect();
    checks.push(check("rotated_spectrum", linalg::multiset_distance(&spectrum, &from_h), 1e-10));
    checks.push(check("trace_preservation", l.trace_preservation_residual(), 1e-12));

    let states = steady_states(n);
    checks.push(check("steady_state_even", l.apply(&states.rho_even)?.frobenius_norm(), 1e-10));
    checks.push(check("steady_state_odd", l.apply(&states.rho_odd)?.frobenius_norm(), 1e-10));
    checks.push(check("trace_rho_plus", states.rho_plus.trace().norm(), 1e-15));
    let mut worst = f64::INFINITY;
    for q in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        worst = worst.min(states.rho_q(q).min_eigenvalue()?);
    }
    checks.push(Check {
        name: "rho_q_positive",
        status: if worst >= PSD_TOL { "pass" } else { "fail" },
        value: worst,
        threshold: PSD_TOL,
    });
    checks.push(check(
        "parity_superselection",
        l.apply_adjoint(&parity_operator(n))?.frobenius_norm(),
        1e-12,
    ));

    let conj: Vec<C64> = spectrum.iter().map(|z| z.conj()).collect();
    checks.push(check("conjugation_symmetry", linalg::multiset_distance(&spectrum, &conj), 1e-9));
    let max_re = spectrum.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    checks.push(Check {
        name: "re_lambda_nonpositive",
        status: if max_re <= tol { "pass" } else { "fail" },
        value: max_re,
        threshold: tol,
    });
    let kernel = l.kernel_dimension(1e-10)?;
    checks.push(Check {
        name: "kernel_dimension",
        status: if kernel >= 2 { "pass" } else { "fail" },
        value: kernel as f64,
        threshold: 2.0,
    });

    if params.is_solvable() {
        let union = oracle::sector_union(&graph, &params)?;
        checks.push(check("sector_partition", linalg::multiset_distance(&spectrum, &union), oracle::PARTITION_TOL));
        let exact = exact_gap(&spectrum, tol);
        let sectors = gap::liouvillian_gap(&graph, &params, &gap::Family::Exhaustive)?;
        let diff = match exact {
            Some(g) => (g - sectors.gap).abs(),
            None if !sectors.is_defined() => 0.0,
            None => f64::INFINITY,
        };
        checks.push(check("sector_gap", diff, 1e-8));
    } else {
        for name in ["sector_partition", "sector_gap"] {
            checks.push(Check { name, status: "skipped (non-solvable)", value: f64::NAN, threshold: f64::NAN });
        }
    }

    let mut table = ResultTable::new(["check", "status", "residual", "threshold"]);
    for c in &checks {
        let num = |x: f64| if x.is_nan() { Cell::Empty } else { Cell::Num(x) };
        table.push(vec![c.name.into(), c.status.into(), num(c.value), num(c.threshold)]);
    }
    table.meta("kernel_dimension", kernel.to_string());
    let ok = checks.iter().all(|c| c.status != "fail");
    Ok((table, ok))
}

pub fn steady_state(config: &RunConfig) -> Result<ResultTable> {
    let graph = config.graph()?;
    let params = config.params()?;
    let o = oracle_for(config, &graph, &params)?;
    let n = graph.n_sites();
    let l = o.superoperator_direct();
    let states = steady_states(n);
    let mut table = ResultTable::new(["state", "trace", "min_eigenvalue", "residual", "physical"]);
    for (name, rho) in [
        ("rho_plus", &states.rho_plus),
        ("rho_minus", &states.rho_minus),
        ("rho_even", &states.rho_even),
        ("rho_odd", &states.rho_odd),
    ] {
        table.push(vec![
            name.into(),
            rho.trace().re.into(),
            rho.min_eigenvalue()?.into(),
            l.apply(rho)?.frobenius_norm().into(),
            rho.is_physical()?.to_string().into(),
        ]);
    }
    table.meta("kernel_dimension", l.kernel_dimension(1e-10)?.to_string());
    Ok(table)
}

fn join(sites: &[usize]) -> String {
    if sites.is_empty() {
        return "none".into();
    }
    sites.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// Maps errors onto process exit codes.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NonSolvable(_) => 3,
        Error::Solver(_) => 4,
        Error::CheckFailed(_) => 5,
        Error::InvalidLattice(_)
        | Error::SiteOutOfRange { .. }
        | Error::InvalidParams(_)
        | Error::Dimension(_)
        | Error::OracleCap { .. }
        | Error::InvalidPlan(_)
        | Error::Config(_)
        | Error::Io(_) => 2,
    }
}
