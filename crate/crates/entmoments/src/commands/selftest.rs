//! Quick internal consistency checks, one PASS/FAIL row each.

use entmoments_core::circle::{builtin_circle, circle_moment, BuiltinCircle};
use entmoments_core::config::RabiConfig;
use entmoments_core::cpn::{cpn_moment, cpn_occupancy};
use entmoments_core::fock::{displaced_parity_oracle, oracle_eigs};
use entmoments_core::moments::{direct_moment, i_concurrence, Normalization};
use entmoments_core::rabi::{concurrence_delta_zero, lowest_roots, Parity, RabiParams};
use entmoments_core::sphere::{builtin_sphere, occupancy, sphere_moment, BuiltinSphere};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::output::{format_float, Report, Table};
use crate::random::random_state_set;

struct Check {
    name: &'static str,
    worst: f64,
    tol: f64,
}

fn expansion_checks(seed: u64) -> CliResult<[Check; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut expansion = 0.0_f64;
    let mut identity = 0.0_f64;
    for dim in [2, 3, 4] {
        for _ in 0..20 {
            let set = random_state_set(&mut rng, dim, 6);
            let occ = cpn_occupancy(&set, 8)?;
            for n in 1..=8 {
                expansion = expansion.max((cpn_moment(&occ, n)? - direct_moment(&set, n, Normalization::Cpn)?).abs());
            }
            identity = identity.max((direct_moment(&set, 1, Normalization::Cpn)? - i_concurrence(&set)).abs());
        }
    }
    Ok([
        Check { name: "cpn expansion vs direct", worst: expansion, tol: 1e-9 },
        Check { name: "first moment vs I-concurrence", worst: identity, tol: 1e-12 },
    ])
}

fn figure_checks() -> CliResult<[Check; 2]> {
    let c1 = |kind| -> CliResult<f64> { Ok(circle_moment(&builtin_circle(kind, 1.0, 16)?, 1)?) };
    let expected = 1.0 - (-2.0_f64).exp();
    let circle = (c1(BuiltinCircle::Rho1)? - expected).abs().max((c1(BuiltinCircle::Rho2)? - expected).abs());
    let occ = occupancy(&builtin_sphere(BuiltinSphere::Poles { a: 0.5 }, 4)?, 4)?;
    let poles = (sphere_moment(&occ, 2)? - 0.75).abs();
    Ok([
        Check { name: "circle first moment 1 - e^{-2s}", worst: circle, tol: 1e-12 },
        Check { name: "two-pole second moment 0.75", worst: poles, tol: 1e-10 },
    ])
}

fn rabi_checks() -> CliResult<[Check; 2]> {
    let cfg = RabiConfig::default();
    let p = RabiParams::new(1.0, 0.5, 0.3)?;
    let oracle = oracle_eigs(&p, 200, 8)?;
    let mut spectral = 0.0_f64;
    for parity in Parity::BOTH {
        let reference: Vec<f64> = oracle.iter().filter(|l| l.parity == parity).map(|l| l.energy).collect();
        for (r, e) in lowest_roots(&p, parity, 8, &cfg)?.iter().zip(&reference) {
            spectral = spectral.max((r.energy - e).abs());
        }
    }
    let mut closed = 0.0_f64;
    for n in 0..4 {
        let parity = displaced_parity_oracle(n, -0.5, 200)?;
        closed = closed.max((concurrence_delta_zero(n, 0.5, 1.0)?.value - (1.0 - parity * parity)).abs());
    }
    Ok([
        Check { name: "G-function roots vs diagonalization", worst: spectral, tol: 1e-6 },
        Check { name: "zero-splitting concurrence vs displaced parity", worst: closed, tol: 1e-8 },
    ])
}

pub fn selftest(seed: u64) -> CliResult<Report> {
    let mut checks = Vec::new();
    checks.extend(expansion_checks(seed)?);
    checks.extend(figure_checks()?);
    checks.extend(rabi_checks()?);
    let mut table = Table::new(&["check", "status", "worst", "tolerance"]);
    let mut failed = Vec::new();
    for c in &checks {
        let ok = c.worst <= c.tol;
        if !ok {
            failed.push(c.name);
        }
        table.push(vec![c.name.into(), (if ok { "PASS" } else { "FAIL" }).into(), c.worst.into(), c.tol.into()]);
    }
    let mut report = Report::from_table(table);
    report.notes = checks
        .iter()
        .map(|c| {
            let status = if c.worst <= c.tol { "PASS" } else { "FAIL" };
            format!("{status} {} (worst {}, tolerance {:e})", c.name, format_float(c.worst), c.tol)
        })
        .collect();
    if !failed.is_empty() {
        report.notes.push(CliError::Check(format!("failed: {}", failed.join(", "))).to_string());
    }
    Ok(report)
}

/// True when every row of a selftest report passed.
pub fn all_passed(report: &Report) -> bool {
    report.table.rows.iter().all(|r| r[1] == "PASS".into())
}
