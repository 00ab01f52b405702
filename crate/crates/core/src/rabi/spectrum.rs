//! Eigenvalues as zeros of `G_±`.
//!
//! `G_±` has simple poles at `ξ = m`. Each inter-pole interval is scanned
//! for sign changes of `G(ξ)·(ξ − n)·(n + 1 − ξ)`, which is finite at both
//! ends, so roots sitting arbitrarily close to a pole are still bracketed.

use alloc::vec::Vec;

use super::params::{Parity, RabiParams, Scaled};
use super::series::g_scaled;
use crate::config::RabiConfig;
use crate::error::{Error, Result};
use crate::numerics::find_roots_on_nodes;

/// A zero of `G_±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraakRoot {
    pub parity: Parity,
    /// Position among the roots of this parity inside the scanned range.
    pub index: usize,
    /// Spectral variable `ξ` in energy units.
    pub xi: f64,
    /// `E = ξ − g²/ω`.
    pub energy: f64,
    /// `|G(ξ)|` after removing the adjacent poles, relative to its scale on
    /// the interval.
    pub residual: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpectrumScan {
    pub roots: Vec<BraakRoot>,
    /// Index pairs (into `roots`) closer than `near_degenerate·ω`.
    pub near_degenerate: Vec<(usize, usize)>,
}

/// Zeros of `G_parity` with `ξ ∈ [lo, hi]` (energy units), ascending.
pub fn scan_spectrum(
    p: &RabiParams,
    xi_range: (f64, f64),
    parity: Parity,
    cfg: &RabiConfig,
) -> Result<SpectrumScan> {
    const OP: &str = "rabi_braak::scan_spectrum";
    p.validate()?;
    let (lo, hi) = (xi_range.0 / p.omega, xi_range.1 / p.omega);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::invalid(OP, "non-finite range"));
    }
    if !(lo < hi) {
        return Ok(SpectrumScan::default());
    }
    let s = p.scaled();
    let xs = if s.g == 0.0 || s.db == 0.0 {
        closed_form_roots(s, parity, lo, hi)
            .into_iter()
            .map(|x| (x, 0.0))
            .collect()
    } else {
        scan_scaled(s, parity, lo, hi, cfg)?
    };
    let roots: Vec<BraakRoot> = xs
        .into_iter()
        .enumerate()
        .map(|(index, (x, residual))| BraakRoot {
            parity,
            index,
            xi: x * p.omega,
            energy: (x - s.g * s.g) * p.omega,
            residual,
        })
        .collect();
    let near_degenerate = (1..roots.len())
        .filter(|&i| (roots[i].xi - roots[i - 1].xi).abs() < cfg.near_degenerate * p.omega)
        .map(|i| (i - 1, i))
        .collect();
    Ok(SpectrumScan { roots, near_degenerate })
}

/// `g = 0`: `|n,↑⟩` at `ξ = n + d` and `|n,↓⟩` at `ξ = n − d`.
/// `Δ = 0`: displaced number states at `ξ = n` in both parities.
fn closed_form_roots(s: Scaled, parity: Parity, lo: f64, hi: f64) -> Vec<f64> {
    let first = libm::floor(lo - s.db).max(0.0) as usize;
    let last = libm::ceil(hi + s.db).max(0.0) as usize;
    let mut xs: Vec<f64> = Vec::new();
    for n in first..=last {
        let even = n % 2 == 0;
        let x = if s.db == 0.0 {
            n as f64
        } else if even == (parity == Parity::Plus) {
            n as f64 + s.db
        } else {
            n as f64 - s.db
        };
        if (lo..=hi).contains(&x) {
            xs.push(x);
        }
    }
    xs.sort_by(f64::total_cmp);
    xs
}

fn scan_scaled(s: Scaled, parity: Parity, lo: f64, hi: f64, cfg: &RabiConfig) -> Result<Vec<(f64, f64)>> {
    let sign = parity.sign();
    let mut out = Vec::new();
    let mut a = lo;
    while a < hi {
        // Next pole strictly above a (poles are the non-negative integers).
        let next_pole = if a < 0.0 { 0.0 } else { libm::floor(a) + 1.0 };
        let b = next_pole.min(hi);
        let left_pole = (a >= 0.0 && a == libm::floor(a)).then_some(a);
        let right_pole = (b == next_pole).then_some(b);
        let regularized = |x: f64| -> Result<f64> {
            let mut v = g_scaled(x, sign, s, cfg)?;
            if let Some(l) = left_pole {
                v *= x - l;
            }
            if let Some(r) = right_pole {
                v *= r - x;
            }
            Ok(v)
        };
        let nodes = interval_nodes(a, b, left_pole.is_some(), right_pole.is_some(), cfg);
        let mut values = Vec::with_capacity(nodes.len());
        for &x in &nodes {
            values.push(regularized(x)?);
        }
        let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let mut failure = None;
        let scan = find_roots_on_nodes(
            |x| match regularized(x) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            &nodes,
            cfg.root_tol,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        for r in scan.roots {
            out.push((r.x, if scale > 0.0 { r.residual / scale } else { r.residual }));
        }
        if right_pole.is_some() && b + cfg.pole_guard <= hi {
            if let Some(root) = root_inside_guard(b, sign, s, cfg)? {
                out.push(root);
            }
        }
        a = b;
    }
    Ok(out)
}

/// A root closer to the pole `n` than the guard. `G(ξ)·(ξ − n)` is continuous
/// through the pole, so a sign change across it brackets such a root; the
/// bracket is `2·guard` wide and linear interpolation is as good as bisection.
fn root_inside_guard(n: f64, sign: f64, s: Scaled, cfg: &RabiConfig) -> Result<Option<(f64, f64)>> {
    let guard = cfg.pole_guard;
    let (a, b) = (n - guard, n + guard);
    let ha = -guard * g_scaled(a, sign, s, cfg)?;
    let hb = guard * g_scaled(b, sign, s, cfg)?;
    if !(ha * hb < 0.0) {
        return Ok(None);
    }
    let x = a - ha * (b - a) / (hb - ha);
    Ok(Some((x, 0.0)))
}

fn interval_nodes(a: f64, b: f64, left_pole: bool, right_pole: bool, cfg: &RabiConfig) -> Vec<f64> {
    let width = b - a;
    let count = (libm::ceil(width * cfg.scan_density as f64) as usize).max(2);
    let step = width / count as f64;
    let guard = cfg.pole_guard;
    let mut nodes: Vec<f64> = (0..=count).map(|i| a + step * i as f64).collect();
    if left_pole {
        nodes[0] = a + guard;
    }
    if right_pole {
        nodes[count] = b - guard;
    }
    if cfg.pole_refine_nodes > 0 && step > guard {
        let ratio = libm::pow(step / guard, 1.0 / cfg.pole_refine_nodes as f64);
        let mut offset = guard * ratio;
        while offset < step * 0.999 {
            if left_pole {
                nodes.push(a + offset);
            }
            if right_pole {
                nodes.push(b - offset);
            }
            offset *= ratio;
        }
    }
    nodes.retain(|x| *x > a || !left_pole);
    nodes.retain(|x| *x < b || !right_pole);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    nodes
}

/// Which eigenstate to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `k`-th lowest energy over both parities (0 = ground state).
    Global(usize),
    /// `k`-th lowest energy of one parity.
    InParity(Parity, usize),
}

/// The lowest `count` roots of one parity.
pub fn lowest_roots(p: &RabiParams, parity: Parity, count: usize, cfg: &RabiConfig) -> Result<Vec<BraakRoot>> {
    const OP: &str = "rabi_braak::lowest_roots";
    p.validate()?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let s = p.scaled();
    // E ≥ −g²/ω − Δ/2, i.e. ξ ≥ −d.
    let lo = (-s.db - 1.0) * p.omega;
    let mut hi = (count as f64 + 2.0) * p.omega;
    for _ in 0..12 {
        let scan = scan_spectrum(p, (lo, hi), parity, cfg)?;
        if scan.roots.len() >= count {
            return Ok(scan.roots.into_iter().take(count).collect());
        }
        hi *= 2.0;
    }
    Err(Error::NonConvergence { op: OP, iterations: 12 })
}

/// The lowest `count` levels over both parities, sorted by energy.
pub fn lowest_levels(p: &RabiParams, count: usize, cfg: &RabiConfig) -> Result<Vec<BraakRoot>> {
    let mut all = lowest_roots(p, Parity::Plus, count, cfg)?;
    all.extend(lowest_roots(p, Parity::Minus, count, cfg)?);
    all.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.parity.cmp(&b.parity)));
    all.truncate(count);
    Ok(all)
}

pub fn level_root(p: &RabiParams, level: Level, cfg: &RabiConfig) -> Result<BraakRoot> {
    let found = match level {
        Level::Global(k) => lowest_levels(p, k + 1, cfg)?.get(k).copied(),
        Level::InParity(parity, k) => lowest_roots(p, parity, k + 1, cfg)?.get(k).copied(),
    };
    found.ok_or(Error::NonConvergence { op: "rabi_braak::level_root", iterations: 0 })
}
