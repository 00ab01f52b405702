//! Moments of user-supplied and built-in ensembles.

use std::path::Path;

use entmoments_core::circle::{
    builtin_circle, circle_moment, circle_moment_bruteforce, BuiltinCircle, CircleDistribution, DEFAULT_QUADRATURE,
};
use entmoments_core::cpn::{cpn_moment, cpn_occupancy, MAX_HARMONIC};
use entmoments_core::moments::{direct_moments, i_concurrence, Normalization};
use entmoments_core::sphere::{builtin_sphere, occupancy, sphere_moment, BuiltinSphere, SphereDistribution};
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::input::{read_circle, read_sphere, read_state_set};
use crate::output::{Report, Table};

pub(crate) fn check_order(op: &'static str, n_max: usize) -> CliResult<()> {
    if n_max == 0 {
        return Err(CliError::schema(op, "--n-max must be at least 1"));
    }
    Ok(())
}

/// `(n, C2)` rows of the definition-level moments.
pub fn moments(input: &Path, n_max: usize, space: Normalization) -> CliResult<Report> {
    check_order("cli::moments", n_max)?;
    let set = read_state_set(input)?;
    let orders: Vec<usize> = (1..=n_max).collect();
    let curve = direct_moments(&set, &orders, space)?;
    let mut table = Table::new(&["n", "C2"]);
    for (n, v) in curve.orders.iter().zip(&curve.values) {
        table.push(vec![(*n).into(), (*v).into()]);
    }
    let json = json!({
        "dim": set.dim(),
        "convention": space.to_string(),
        "orders": curve.orders,
        "values": curve.values,
        "i_concurrence": i_concurrence(&set),
    });
    Ok(Report { json: Some(json), ..Report::from_table(table) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CircleKind {
    /// Two atoms at 0 and π with weights (1 ± e^{−s})/2.
    Rho1,
    /// Heat kernel on the circle, c_k = e^{−k² s}.
    Rho2,
}

impl From<CircleKind> for BuiltinCircle {
    fn from(k: CircleKind) -> Self {
        match k {
            CircleKind::Rho1 => BuiltinCircle::Rho1,
            CircleKind::Rho2 => BuiltinCircle::Rho2,
        }
    }
}

fn circle_rows(
    dist: &CircleDistribution,
    n_max: usize,
    oracle: bool,
    prefix: &[crate::output::Cell],
    table: &mut Table,
) -> CliResult<()> {
    for n in 1..=n_max {
        let mut row = prefix.to_vec();
        row.push(n.into());
        row.push(circle_moment(dist, n)?.into());
        if oracle {
            row.push(circle_moment_bruteforce(dist, n, DEFAULT_QUADRATURE)?.into());
        }
        table.push(row);
    }
    Ok(())
}

pub struct CircleRequest<'a> {
    pub input: Option<&'a Path>,
    pub builtin: Option<CircleKind>,
    pub s: &'a [f64],
    pub n_max: usize,
    pub k_max: usize,
    pub oracle: bool,
}

/// `(n, C2)` for a file, `(distribution, s, n, C2)` for built-ins; `--oracle`
/// appends the double-integral reference.
pub fn circle(req: &CircleRequest) -> CliResult<Report> {
    const OP: &str = "cli::circle";
    check_order(OP, req.n_max)?;
    match (req.input, req.builtin) {
        (Some(path), None) => {
            let dist = read_circle(path)?;
            let mut cols = vec!["n", "C2"];
            if req.oracle {
                cols.push("C2_bruteforce");
            }
            let mut table = Table::new(&cols);
            circle_rows(&dist, req.n_max, req.oracle, &[], &mut table)?;
            Ok(Report::from_table(table))
        }
        (None, Some(kind)) => {
            if req.k_max < req.n_max {
                return Err(CliError::schema(OP, "--k-max must be at least --n-max"));
            }
            let mut cols = vec!["distribution", "s", "n", "C2"];
            if req.oracle {
                cols.push("C2_bruteforce");
            }
            let mut table = Table::new(&cols);
            let name = match kind {
                CircleKind::Rho1 => "rho1",
                CircleKind::Rho2 => "rho2",
            };
            for &s in req.s {
                let dist = builtin_circle(kind.into(), s, req.k_max).map_err(crate::error::as_schema)?;
                circle_rows(&dist, req.n_max, req.oracle, &[name.into(), s.into()], &mut table)?;
            }
            Ok(Report::from_table(table))
        }
        _ => Err(CliError::schema(OP, "give exactly one of an input file or --builtin")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SphereKind {
    /// Uniform over the Bloch sphere.
    Uniform,
    /// Two atoms on the poles.
    Poles,
    /// Uniform ring on the equator.
    Equator,
}

pub fn sphere_builtin(kind: SphereKind, pole_weight: f64, l_max: usize) -> CliResult<SphereDistribution> {
    let name = match kind {
        SphereKind::Uniform => BuiltinSphere::Uniform,
        SphereKind::Poles => BuiltinSphere::Poles { a: pole_weight },
        SphereKind::Equator => BuiltinSphere::Equator,
    };
    builtin_sphere(name, l_max).map_err(crate::error::as_schema)
}

pub struct SphereRequest<'a> {
    pub input: Option<&'a Path>,
    pub builtin: Option<SphereKind>,
    pub pole_weight: f64,
    pub n_max: usize,
    pub occupancy: bool,
}

/// `(n, C2)`, or `(l, occupancy)` with `--occupancy`.
pub fn sphere(req: &SphereRequest) -> CliResult<Report> {
    const OP: &str = "cli::sphere";
    check_order(OP, req.n_max)?;
    let dist = match (req.input, req.builtin) {
        (Some(path), None) => read_sphere(path)?,
        (None, Some(kind)) => sphere_builtin(kind, req.pole_weight, req.n_max)?,
        _ => return Err(CliError::schema(OP, "give exactly one of an input file or --builtin")),
    };
    let occ = occupancy(&dist, req.n_max)?;
    if req.occupancy {
        let mut table = Table::new(&["l", "occupancy"]);
        for (l, v) in occ.values.iter().enumerate() {
            table.push(vec![l.into(), (*v).into()]);
        }
        return Ok(Report::from_table(table));
    }
    let mut table = Table::new(&["n", "C2"]);
    for n in 1..=req.n_max {
        table.push(vec![n.into(), sphere_moment(&occ, n)?.into()]);
    }
    Ok(Report::from_table(table))
}

/// Moments through the harmonic occupancies of `ℂP^{N−1}`.
pub fn cpn(input: &Path, n_max: usize, k_max: Option<usize>, show_occupancy: bool) -> CliResult<Report> {
    const OP: &str = "cli::cpn";
    check_order(OP, n_max)?;
    let k_max = k_max.unwrap_or(n_max);
    if k_max < n_max || k_max > MAX_HARMONIC {
        return Err(CliError::schema(OP, format!("--k-max must lie in [--n-max, {MAX_HARMONIC}]")));
    }
    let set = read_state_set(input)?;
    let occ = cpn_occupancy(&set, k_max)?;
    if show_occupancy {
        let mut table = Table::new(&["k", "occupancy"]);
        for (k, v) in occ.values.iter().enumerate() {
            table.push(vec![k.into(), (*v).into()]);
        }
        return Ok(Report::from_table(table));
    }
    let mut table = Table::new(&["n", "C2"]);
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let v = cpn_moment(&occ, n)?;
        values.push(v);
        table.push(vec![n.into(), v.into()]);
    }
    let mut notes = Vec::new();
    if let Some(n) = values.iter().position(|v| *v > 1.0 + 1e-9) {
        notes.push(format!("warning: C2 at n = {} exceeds 1 by {:.3e}", n + 1, values[n] - 1.0));
    }
    let json = json!({
        "dim": set.dim(),
        "occupancy": occ.values,
        "orders": (1..=n_max).collect::<Vec<_>>(),
        "values": values,
    });
    Ok(Report { table, json: Some(json), side: None, notes })
}
