//! Data behind the moment figures: the two circle distributions, the three
//! sphere distributions, and Rabi-model sweeps over the coupling.

use entmoments_core::circle::{builtin_circle, circle_moment, BuiltinCircle};
use entmoments_core::config::RabiConfig;
use entmoments_core::rabi::{rabi_moments, Level, RabiParams};
use entmoments_core::sphere::{occupancy, sphere_moment};
use rayon::prelude::*;

use super::distributions::{check_order, sphere_builtin, SphereKind};
use super::rabi::{histogram_rows, moment_rows, DISTRIBUTION_COLUMNS, MOMENT_COLUMNS};
use crate::error::{as_schema, CliError, CliResult};
use crate::output::{Report, Table};

fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

fn check_points(op: &'static str, points: usize, max: f64) -> CliResult<()> {
    if points == 0 || !(max.is_finite() && max >= 0.0) {
        return Err(CliError::schema(op, "need at least one point and a finite, non-negative range"));
    }
    Ok(())
}

/// `(distribution, s, n, C2)` for both circle distributions on `s ∈ [0, s_max]`.
pub fn fig2(s_max: f64, points: usize, n_max: usize, k_max: usize) -> CliResult<Report> {
    const OP: &str = "cli::fig2";
    check_order(OP, n_max)?;
    check_points(OP, points, s_max)?;
    if k_max < n_max {
        return Err(CliError::schema(OP, "--k-max must be at least --n-max"));
    }
    let mut table = Table::new(&["distribution", "s", "n", "C2"]);
    for (name, kind) in [("rho1", BuiltinCircle::Rho1), ("rho2", BuiltinCircle::Rho2)] {
        for s in grid(0.0, s_max, points) {
            let dist = builtin_circle(kind, s, k_max).map_err(as_schema)?;
            for n in 1..=n_max {
                table.push(vec![name.into(), s.into(), n.into(), circle_moment(&dist, n)?.into()]);
            }
        }
    }
    Ok(Report::from_table(table))
}

/// `(distribution, n, C2)` for the uniform, equator and two-pole sphere distributions.
pub fn fig3(n_max: usize, pole_weight: f64) -> CliResult<Report> {
    check_order("cli::fig3", n_max)?;
    let mut table = Table::new(&["distribution", "n", "C2"]);
    for (name, kind) in [("uniform", SphereKind::Uniform), ("equator", SphereKind::Equator), ("poles", SphereKind::Poles)] {
        let occ = occupancy(&sphere_builtin(kind, pole_weight, n_max)?, n_max)?;
        for n in 1..=n_max {
            table.push(vec![name.into(), n.into(), sphere_moment(&occ, n)?.into()]);
        }
    }
    Ok(Report::from_table(table))
}

/// A coupling sweep of one eigenstate.
#[derive(Debug, Clone, Copy)]
pub struct Sweep {
    pub level: usize,
    pub delta: f64,
    pub omega: f64,
    pub g_max: f64,
    pub points: usize,
    pub n_max: usize,
    pub bins: usize,
}

/// Curves of `C²₍₁₎(g)` from a sweep, for the summary line.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepShape {
    pub non_decreasing: bool,
    /// First interior local maximum followed by a local minimum.
    pub peak_then_dip: Option<(usize, usize)>,
}

/// Detects a strict interior local maximum later followed by a strict
/// interior local minimum.
pub fn peak_then_dip(values: &[f64]) -> Option<(usize, usize)> {
    let interior = 1..values.len().saturating_sub(1);
    let peak = interior.clone().find(|&i| values[i] > values[i - 1] && values[i] > values[i + 1])?;
    let dip = (peak + 1..values.len() - 1).find(|&i| values[i] < values[i - 1] && values[i] < values[i + 1])?;
    Some((peak, dip))
}

pub fn sweep_shape(values: &[f64]) -> SweepShape {
    SweepShape {
        non_decreasing: values.windows(2).all(|w| w[1] >= w[0]),
        peak_then_dip: peak_then_dip(values),
    }
}

/// Moments and θ histograms of one level along `g ∈ [0, g_max]`. Points
/// are computed in parallel and assembled in input order.
pub fn rabi_sweep(sweep: &Sweep, cfg: &RabiConfig) -> CliResult<Report> {
    const OP: &str = "cli::rabi_sweep";
    check_order(OP, sweep.n_max)?;
    check_points(OP, sweep.points, sweep.g_max)?;
    if sweep.bins == 0 {
        return Err(CliError::schema(OP, "--bins must be positive"));
    }
    let orders: Vec<usize> = (1..=sweep.n_max).collect();
    let gs = grid(0.0, sweep.g_max, sweep.points);
    let results: Vec<CliResult<(Table, Table, f64, bool)>> = gs
        .par_iter()
        .map(|&g| {
            let p = RabiParams::new(sweep.omega, g, sweep.delta).map_err(as_schema)?;
            let m = rabi_moments(&p, Level::Global(sweep.level), &orders, cfg)?;
            let mut rows = Table::new(&MOMENT_COLUMNS);
            moment_rows(&p, sweep.level, &m, None, &mut rows);
            let mut hist = Table::new(&DISTRIBUTION_COLUMNS);
            histogram_rows(&p, &m, sweep.bins, &mut hist)?;
            Ok((rows, hist, m.curve.values[0], m.near_degenerate))
        })
        .collect();
    let mut table = Table::new(&MOMENT_COLUMNS);
    let mut side = Table::new(&DISTRIBUTION_COLUMNS);
    let mut first = Vec::with_capacity(gs.len());
    let mut near = Vec::new();
    for (g, r) in gs.iter().zip(results) {
        let (rows, hist, c1, degenerate) = r?;
        table.rows.extend(rows.rows);
        side.rows.extend(hist.rows);
        first.push(c1);
        if degenerate {
            near.push(*g);
        }
    }
    let shape = sweep_shape(&first);
    let mut notes = vec![describe(sweep, &gs, &first, &shape)];
    if let (Some(lo), Some(hi)) = (near.first(), near.last()) {
        notes.push(format!(
            "note: level {} is within {:.0e}·omega of its parity partner for g in [{lo:.4}, {hi:.4}] ({} points)",
            sweep.level,
            cfg.near_degenerate,
            near.len()
        ));
    }
    Ok(Report { table, json: None, side: Some(side), notes })
}

fn describe(sweep: &Sweep, gs: &[f64], c1: &[f64], shape: &SweepShape) -> String {
    let head = format!(
        "level {} C2_1(g) on g in [0, {}] ({} points, delta = {})",
        sweep.level,
        sweep.g_max,
        gs.len(),
        sweep.delta
    );
    let last = c1.last().copied().unwrap_or(f64::NAN);
    match shape.peak_then_dip {
        Some((a, b)) => format!(
            "{head}: non-monotonic, local maximum {:.6} at g = {:.4} followed by local minimum {:.6} at g = {:.4}",
            c1[a], gs[a], c1[b], gs[b]
        ),
        None if shape.non_decreasing => format!("{head}: non-decreasing, final value {last:.6}"),
        None => format!("{head}: not monotonic, no interior maximum-then-minimum, final value {last:.6}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_then_dip_detection() {
        assert_eq!(peak_then_dip(&[0.0, 1.0, 0.5, 0.7]), Some((1, 2)));
        assert_eq!(peak_then_dip(&[0.0, 1.0, 0.5]), None);
        assert_eq!(peak_then_dip(&[0.0, 0.1, 0.2]), None);
        assert!(sweep_shape(&[0.0, 0.0, 0.3]).non_decreasing);
    }
}
