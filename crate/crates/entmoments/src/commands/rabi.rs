//! Spectrum and moment curves of Rabi-model eigenstates.

use entmoments_core::config::{default_truncation, RabiConfig};
use entmoments_core::fock::{oracle_eigs, oracle_moments};
use entmoments_core::rabi::{
    lowest_roots, rabi_moments, scan_spectrum, theta_histogram, BraakRoot, Level, Parity, RabiMoments, RabiParams,
};
use serde_json::{json, Value};

use crate::error::{as_schema, CliError, CliResult};
use crate::output::{Cell, Report, Table};

/// `H = ω a†a + g σ_x (a + a†) + ½ Δ σ_z`.
#[derive(Debug, Clone, Copy, clap::Args)]
pub struct ModelArgs {
    /// Coupling g.
    #[arg(long)]
    pub g: f64,
    /// Qubit splitting Δ.
    #[arg(long)]
    pub delta: f64,
    /// Oscillator frequency ω.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
}

impl ModelArgs {
    pub fn params(&self) -> CliResult<RabiParams> {
        RabiParams::new(self.omega, self.g, self.delta).map_err(as_schema)
    }
}

/// Numerical overrides shared by the Rabi commands.
#[derive(Debug, Clone, Copy, Default, clap::Args)]
pub struct SolverArgs {
    /// Fock cutoff for reconstructed and reference eigenstates [default: ⌈200·max(1, (g/ω)²)⌉].
    #[arg(long)]
    pub n_trunc: Option<usize>,
    /// Bisection width for G-function roots, in units of ω [default: 1e-14].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Points of the position grid [default: 4096].
    #[arg(long)]
    pub grid_points: Option<usize>,
}

impl SolverArgs {
    pub fn config(&self) -> CliResult<RabiConfig> {
        const OP: &str = "cli::solver_options";
        let mut cfg = RabiConfig::default();
        if let Some(n) = self.n_trunc {
            if n < 8 {
                return Err(CliError::schema(OP, "--n-trunc must be at least 8"));
            }
            cfg.n_fock = Some(n);
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t < 1e-3) {
                return Err(CliError::schema(OP, "--tol must lie in (0, 1e-3)"));
            }
            cfg.root_tol = t;
        }
        if let Some(m) = self.grid_points {
            if !(64..=1 << 16).contains(&m) {
                return Err(CliError::schema(OP, "--grid-points must lie in [64, 65536]"));
            }
            cfg.grid_points = m;
        }
        Ok(cfg)
    }

    pub fn truncation(&self, p: &RabiParams) -> usize {
        self.n_trunc.unwrap_or_else(|| default_truncation(p.g / p.omega))
    }
}

fn root_json(r: &BraakRoot) -> Value {
    json!({
        "parity": r.parity.to_string(),
        "index": r.index,
        "xi": r.xi,
        "energy": r.energy,
        "residual": r.residual,
    })
}

pub struct SpectrumRequest {
    pub model: ModelArgs,
    pub solver: SolverArgs,
    pub levels: usize,
    pub xi_range: Option<(f64, f64)>,
    pub oracle: bool,
}

/// Roots of both G-functions, sorted by energy.
pub fn spectrum(req: &SpectrumRequest) -> CliResult<Report> {
    let p = req.model.params()?;
    let cfg = req.solver.config()?;
    let mut roots = Vec::new();
    let mut near = Vec::new();
    for parity in Parity::BOTH {
        match req.xi_range {
            Some(range) => {
                let scan = scan_spectrum(&p, range, parity, &cfg)?;
                near.extend(scan.near_degenerate.iter().map(|&(a, b)| (parity, scan.roots[a].index, scan.roots[b].index)));
                roots.extend(scan.roots);
            }
            None => roots.extend(lowest_roots(&p, parity, req.levels, &cfg)?),
        }
    }
    roots.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.parity.cmp(&b.parity)));

    let oracle = if req.oracle && !roots.is_empty() {
        let n_trunc = req.solver.truncation(&p);
        let top = roots.iter().map(|r| r.xi / p.omega).fold(0.0_f64, f64::max);
        let wanted = ((top.ceil() as usize) + 4).min(n_trunc / 2);
        Some(oracle_eigs(&p, n_trunc, wanted)?)
    } else {
        None
    };
    let closed_form = p.delta == 0.0;

    let mut cols = vec!["parity", "index", "xi", "energy", "residual"];
    if oracle.is_some() {
        cols.extend(["oracle_energy", "abs_diff"]);
    }
    if closed_form {
        cols.push("closed_form");
    }
    let mut table = Table::new(&cols);
    let mut entries = Vec::with_capacity(roots.len());
    let mut max_diff = 0.0_f64;
    for r in &roots {
        let mut row: Vec<Cell> =
            vec![r.parity.to_string().into(), r.index.into(), r.xi.into(), r.energy.into(), r.residual.into()];
        let mut entry = root_json(r);
        if let Some(levels) = &oracle {
            let best = levels
                .iter()
                .filter(|l| l.parity == r.parity)
                .map(|l| l.energy)
                .min_by(|a, b| (a - r.energy).abs().total_cmp(&(b - r.energy).abs()))
                .unwrap_or(f64::NAN);
            let diff = (best - r.energy).abs();
            max_diff = max_diff.max(diff);
            row.extend([best.into(), diff.into()]);
            entry["oracle_energy"] = json!(best);
            entry["abs_diff"] = json!(diff);
        }
        if closed_form {
            let n = (r.xi / p.omega).round();
            let e = n * p.omega - p.g * p.g / p.omega;
            row.push(e.into());
            entry["closed_form"] = json!(e);
        }
        table.push(row);
        entries.push(entry);
    }
    let mut json = json!({ "omega": p.omega, "delta": p.delta, "g": p.g, "roots": entries });
    let mut notes = Vec::new();
    if oracle.is_some() {
        json["max_abs_diff"] = json!(max_diff);
        notes.push(format!("max |E - E_oracle| = {max_diff:.3e}"));
    }
    for (parity, a, b) in &near {
        notes.push(format!("warning: roots {a} and {b} of parity {parity} are nearly degenerate"));
    }
    Ok(Report { table, json: Some(json), side: None, notes })
}

/// Level selector: global index, or index within one parity.
pub fn level(index: usize, parity: Option<Parity>) -> Level {
    match parity {
        Some(s) => Level::InParity(s, index),
        None => Level::Global(index),
    }
}

pub fn parse_parity(s: &str) -> CliResult<Parity> {
    s.parse().map_err(as_schema)
}

pub(crate) const MOMENT_COLUMNS: [&str; 6] = ["g", "level", "parity", "energy", "n", "C2"];
pub(crate) const DISTRIBUTION_COLUMNS: [&str; 3] = ["g", "theta", "density"];

pub(crate) fn moment_rows(p: &RabiParams, k: usize, m: &RabiMoments, extra: Option<&[f64]>, table: &mut Table) {
    for (i, (n, v)) in m.curve.orders.iter().zip(&m.curve.values).enumerate() {
        let mut row: Vec<Cell> = vec![
            p.g.into(),
            k.into(),
            m.root.parity.to_string().into(),
            m.root.energy.into(),
            (*n).into(),
            (*v).into(),
        ];
        if let Some(e) = extra {
            row.push(e[i].into());
        }
        table.push(row);
    }
}

pub(crate) fn histogram_rows(p: &RabiParams, m: &RabiMoments, bins: usize, table: &mut Table) -> CliResult<()> {
    for (theta, density) in theta_histogram(&m.grid, bins)? {
        table.push(vec![p.g.into(), theta.into(), density.into()]);
    }
    Ok(())
}

pub struct MomentsRequest {
    pub model: ModelArgs,
    pub solver: SolverArgs,
    pub level: usize,
    pub parity: Option<Parity>,
    pub n_max: usize,
    pub bins: usize,
    pub oracle: bool,
}

/// Moment curve of one eigenstate in the position basis, with its θ histogram.
pub fn moments(req: &MomentsRequest) -> CliResult<Report> {
    crate::commands::distributions::check_order("cli::rabi_moments", req.n_max)?;
    if req.bins == 0 {
        return Err(CliError::schema("cli::rabi_moments", "--bins must be positive"));
    }
    let p = req.model.params()?;
    let cfg = req.solver.config()?;
    let orders: Vec<usize> = (1..=req.n_max).collect();
    let selected = level(req.level, req.parity);
    let m = rabi_moments(&p, selected, &orders, &cfg)?;
    let oracle = if req.oracle {
        Some(oracle_moments(&p, selected, &orders, req.solver.truncation(&p), &cfg)?)
    } else {
        None
    };
    let mut cols = MOMENT_COLUMNS.to_vec();
    if oracle.is_some() {
        cols.push("oracle_C2");
    }
    let mut table = Table::new(&cols);
    moment_rows(&p, req.level, &m, oracle.as_ref().map(|o| o.curve.values.as_slice()), &mut table);
    let mut side = Table::new(&DISTRIBUTION_COLUMNS);
    histogram_rows(&p, &m, req.bins, &mut side)?;

    let coeffs = m.distribution.coefficients(req.n_max)?;
    let mut json = json!({
        "omega": p.omega,
        "delta": p.delta,
        "g": p.g,
        "level": req.level,
        "parity": m.root.parity.to_string(),
        "xi": m.root.xi,
        "energy": m.root.energy,
        "near_degenerate": m.near_degenerate,
        "orders": m.curve.orders,
        "values": m.curve.values,
        "fourier": {
            "re": coeffs.iter().map(|c| c.re).collect::<Vec<_>>(),
            "im": coeffs.iter().map(|c| c.im).collect::<Vec<_>>(),
        },
    });
    let mut notes = Vec::new();
    if let Some(o) = &oracle {
        json["oracle_values"] = json!(o.curve.values);
        json["oracle_energy"] = json!(o.level.energy);
        let diff = m.curve.values.iter().zip(&o.curve.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        notes.push(format!("max |C2 - C2_oracle| = {diff:.3e}"));
    }
    if m.near_degenerate {
        notes.push(format!(
            "warning: level {} lies within {:.0e}·omega of another level; the parity-resolved state is used",
            req.level, cfg.near_degenerate
        ));
    }
    Ok(Report { table, json: Some(json), side: Some(side), notes })
}
