//! The K-series and the G-function of the Rabi model.
//!
//! In units `ω = 1`, with `d = Δ/2` (the G-function splitting),
//!
//! ```text
//! f_m(ξ)  = 2g + (m − ξ + d²/(ξ − m)) / (2g)
//! m K_m   = f_{m−1} K_{m−1} − K_{m−2},      K_0 = 1, K_1 = f_0
//! G_±(ξ)  = Σ_m K_m [1 ∓ d/(ξ − m)] g^m
//! ```
//!
//! Eigenvalues are `E = ξ − g²` at the zeros of `G_±`.

use alloc::vec;
use alloc::vec::Vec;

use super::params::{Parity, RabiParams, Scaled};
use crate::config::RabiConfig;
use crate::error::{Error, Result};
use crate::numerics::solve_tridiagonal;

const POLE_TOL: f64 = 1e-12;
/// Largest relative residual of the recurrence accepted at a root.
const ROOT_CONSISTENCY: f64 = 1e-6;

fn f_scaled(m: usize, x: f64, s: Scaled) -> f64 {
    let d = x - m as f64;
    2.0 * s.g + (-d + s.db * s.db / d) / (2.0 * s.g)
}

fn check_coupling(op: &'static str, p: &RabiParams) -> Result<Scaled> {
    p.validate()?;
    if p.g == 0.0 {
        return Err(Error::domain(op, "g = 0 has no K-series; use the product-state limit"));
    }
    Ok(p.scaled())
}

fn nearest_pole(x: f64, up_to: usize) -> Option<usize> {
    let m = libm::round(x);
    (m >= 0.0 && m <= up_to as f64 && (x - m).abs() <= POLE_TOL).then_some(m as usize)
}

/// `f_m(ξ)`, with `ξ` in energy units.
pub fn f_coeff(m: usize, xi: f64, p: &RabiParams) -> Result<f64> {
    const OP: &str = "rabi_braak::f_coeff";
    let s = check_coupling(OP, p)?;
    let x = xi / p.omega;
    if (x - m as f64).abs() <= POLE_TOL {
        return Err(Error::Pole { op: OP, m, xi });
    }
    Ok(f_scaled(m, x, s))
}

/// Coefficients `K_0..=K_M` at `xi` (energy units).
#[derive(Debug, Clone, PartialEq)]
pub struct KSeries {
    pub xi: f64,
    pub coeffs: Vec<f64>,
    /// Index of the last stored coefficient.
    pub truncation: usize,
}

/// Forward recurrence from `K_0 = 1`, `K_1 = f_0`.
pub fn k_series(xi: f64, p: &RabiParams, m_max: usize) -> Result<KSeries> {
    const OP: &str = "rabi_braak::k_series";
    let s = check_coupling(OP, p)?;
    let x = xi / p.omega;
    if let Some(m) = nearest_pole(x, m_max.saturating_sub(1)) {
        return Err(Error::Pole { op: OP, m, xi });
    }
    let mut k = vec![1.0];
    if m_max >= 1 {
        k.push(f_scaled(0, x, s));
    }
    for m in 2..=m_max {
        let next = (f_scaled(m - 1, x, s) * k[m - 1] - k[m - 2]) / m as f64;
        if !next.is_finite() {
            return Err(Error::overflow(OP, alloc::format!("K_{m} at xi = {xi}")));
        }
        k.push(next);
    }
    Ok(KSeries { xi, coeffs: k, truncation: m_max })
}

/// `G_±(ξ)` on the dimensionless axis, summed until the terms stay below
/// `series_tail` times the running maximum for `series_tail_run` steps.
pub(crate) fn g_scaled(x: f64, sign: f64, s: Scaled, cfg: &RabiConfig) -> Result<f64> {
    const OP: &str = "rabi_braak::g_function";
    // t_m = K_m g^m obeys m t_m = g f_{m−1} t_{m−1} − g² t_{m−2}.
    let mut t_prev = 0.0;
    let mut t = 1.0;
    let mut terms = Vec::with_capacity(cfg.series_initial);
    let mut max = 0.0_f64;
    let mut quiet = 0;
    for m in 0..=cfg.series_cap {
        if m > 0 {
            let next = (s.g * f_scaled(m - 1, x, s) * t - s.g * s.g * t_prev) / m as f64;
            t_prev = t;
            t = next;
        }
        let term = t * (1.0 - sign * s.db / (x - m as f64));
        if !term.is_finite() {
            return Err(Error::overflow(OP, alloc::format!("term {m} at xi = {x}")));
        }
        terms.push(term);
        max = max.max(term.abs());
        if term.abs() <= cfg.series_tail * max && m as f64 > x {
            quiet += 1;
            if quiet >= cfg.series_tail_run {
                return Ok(sum_small_first(&terms));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence { op: OP, iterations: cfg.series_cap })
}

/// Sums from the tail so that the smallest terms are added first.
fn sum_small_first(terms: &[f64]) -> f64 {
    terms.iter().rev().sum()
}

/// `G_±(ξ)`, with `ξ` in energy units.
pub fn g_function(xi: f64, parity: Parity, p: &RabiParams, cfg: &RabiConfig) -> Result<f64> {
    const OP: &str = "rabi_braak::g_function";
    let s = check_coupling(OP, p)?;
    let x = xi / p.omega;
    if let Some(m) = nearest_pole(x, cfg.series_cap) {
        if s.db != 0.0 {
            return Err(Error::Pole { op: OP, m, xi });
        }
    }
    g_scaled(x, parity.sign(), s, cfg)
}

/// Minimal solution of the K recurrence, stored as `b_m = √(m!) K_m`.
///
/// Neither direction of the recurrence is stable everywhere: below `m ≈ ξ`
/// the physical solution dominates going up, above it going down. The
/// recurrence `√(m−1) b_{m−2} − f_{m−1} b_{m−1} + √m b_m = 0` is a symmetric
/// tridiagonal system, so the solution is taken as its null vector by
/// inverse iteration, normalized to `b_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct MinimalSeries {
    pub b: Vec<f64>,
}

impl MinimalSeries {
    pub fn to_k_series(&self, xi: f64) -> KSeries {
        let mut inv_sqrt_fact = 1.0;
        let coeffs = self
            .b
            .iter()
            .enumerate()
            .map(|(m, b)| {
                if m > 0 {
                    inv_sqrt_fact /= libm::sqrt(m as f64);
                }
                b * inv_sqrt_fact
            })
            .collect();
        KSeries { xi, coeffs, truncation: self.b.len() - 1 }
    }
}

/// Rows `k = 0..len` of the recurrence: `√k b_{k−1} − f_k b_k + √(k+1) b_{k+1}`.
fn recurrence_bands(x: f64, s: Scaled, len: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..len).map(|k| -f_scaled(k, x, s)).collect();
    let off = (1..len).map(|k| libm::sqrt(k as f64)).collect();
    (diag, off)
}

/// Null vector of the recurrence truncated to `len` terms, max-norm 1.
fn inverse_iteration(x: f64, s: Scaled, len: usize) -> Result<Vec<f64>> {
    let (diag, off) = recurrence_bands(x, s, len);
    let mut v = vec![1.0; len];
    for _ in 0..3 {
        v = solve_tridiagonal(&off, &diag, &off, &v)?;
        let max = v.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        if !(max.is_finite() && max > 0.0) {
            return Err(Error::overflow("rabi_braak::minimal_series", alloc::format!("inverse iteration at xi = {x}")));
        }
        v.iter_mut().for_each(|t| *t /= max);
    }
    Ok(v)
}

/// Largest row residual of the recurrence relative to the largest term in it.
fn recurrence_residual(b: &[f64], x: f64, s: Scaled) -> f64 {
    let (diag, off) = recurrence_bands(x, s, b.len());
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for k in 0..b.len() {
        let mut terms = [diag[k] * b[k], 0.0, 0.0];
        if k > 0 {
            terms[1] = off[k - 1] * b[k - 1];
        }
        if k + 1 < b.len() {
            terms[2] = off[k] * b[k + 1];
        }
        worst = worst.max((terms[0] + terms[1] + terms[2]).abs());
        scale = scale.max(terms.iter().fold(0.0_f64, |m, t| m.max(t.abs())));
    }
    worst / scale
}

pub(crate) fn minimal_series(x: f64, s: Scaled, cfg: &RabiConfig) -> Result<MinimalSeries> {
    const OP: &str = "rabi_braak::minimal_series";
    if let Some(m) = nearest_pole(x, cfg.series_cap) {
        return Err(Error::Pole { op: OP, m, xi: x });
    }
    let guess = 4.0 * s.g * s.g + 20.0 * s.g + 2.0 * x.abs() + 40.0;
    let mut len = (libm::ceil(guess) as usize).max(cfg.series_initial).min(cfg.series_cap);
    loop {
        let v = inverse_iteration(x, s, len)?;
        let cut = tail_cut(&v, cfg);
        if cut < len {
            let mut b = v;
            b.truncate(cut);
            let residual = recurrence_residual(&b, x, s);
            if !(residual <= ROOT_CONSISTENCY) {
                return Err(Error::invalid(
                    OP,
                    alloc::format!("xi = {x} is not an eigenvalue (recurrence residual {residual:.3e})"),
                ));
            }
            let b0 = b[0];
            if b0 == 0.0 {
                return Err(Error::invalid(OP, alloc::format!("vanishing K_0 at xi = {x}")));
            }
            b.iter_mut().for_each(|t| *t /= b0);
            return Ok(MinimalSeries { b });
        }
        if len == cfg.series_cap {
            return Err(Error::NonConvergence { op: OP, iterations: len });
        }
        len = (2 * len).min(cfg.series_cap);
    }
}

/// Length after dropping the negligible tail of `b`.
fn tail_cut(b: &[f64], cfg: &RabiConfig) -> usize {
    let max = b.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mut quiet = 0;
    for (m, v) in b.iter().enumerate() {
        if v.abs() <= cfg.series_tail * max {
            quiet += 1;
            if quiet >= cfg.series_tail_run {
                return m + 1;
            }
        } else {
            quiet = 0;
        }
    }
    b.len()
}

/// Minimal K-series at an eigenvalue `xi` (energy units).
pub fn minimal_k_series(xi: f64, p: &RabiParams, cfg: &RabiConfig) -> Result<KSeries> {
    let s = check_coupling("rabi_braak::minimal_series", p)?;
    Ok(minimal_series(xi / p.omega, s, cfg)?.to_k_series(xi))
}
