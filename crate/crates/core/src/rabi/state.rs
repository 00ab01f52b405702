//! Fock-space eigenvectors rebuilt from the minimal K-series.
//!
//! The eigenstate is `ψ↑ = (φ + sPφ)/2`, `ψ↓ = (φ − sPφ)/2`, where `s` is
//! the parity, `P = (−1)^{a†a}` and `φ` is the σ_x = +1 sector function. In
//! Bargmann space
//!
//! ```text
//! φ(z) ∝ e^{gz} Σ K_m (g − z)^m ∝ e^{−gz} Σ K_m d/(ξ − m) (z + g)^m
//! ```
//!
//! The second form is a combination of displaced number states
//! `D(−g)|m⟩` with amplitudes `√(m!) K_m d/(ξ − m)`.

use alloc::vec;
use alloc::vec::Vec;

use super::params::{Parity, RabiParams, Scaled};
use super::series::{minimal_series, MinimalSeries};
use super::spectrum::BraakRoot;
use crate::config::{RabiConfig, Synthesis};
use crate::error::{Error, Result};
use crate::numerics::pairwise_sum;

/// Real amplitudes on `|k⟩ ⊗ |↑⟩` and `|k⟩ ⊗ |↓⟩`, `k < n_fock`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub up: Vec<f64>,
    pub down: Vec<f64>,
}

impl FockState {
    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        let sq: Vec<f64> = self.up.iter().chain(&self.down).map(|x| x * x).collect();
        pairwise_sum(&sq)
    }

    /// `|⟨self|other⟩|²` of the normalized states, padding the shorter one.
    pub fn fidelity(&self, other: &FockState) -> f64 {
        let n = self.len().min(other.len());
        let dot: f64 = (0..n).map(|k| self.up[k] * other.up[k] + self.down[k] * other.down[k]).sum();
        dot * dot / (self.norm_sqr() * other.norm_sqr())
    }

    /// `⟨σ_z ⊗ P⟩`.
    pub fn parity(&self) -> f64 {
        let terms: Vec<f64> = (0..self.len())
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * (self.up[k] * self.up[k] - self.down[k] * self.down[k])
            })
            .collect();
        pairwise_sum(&terms) / self.norm_sqr()
    }

    /// Oscillator factor `φ = ψ↑ + ψ↓` of the σ_x = +1 component.
    pub fn sector_function(&self) -> Vec<f64> {
        self.up.iter().zip(&self.down).map(|(u, d)| u + d).collect()
    }

    /// Reduced qubit density matrix `[[ρ↑↑, ρ↑↓], [ρ↓↑, ρ↓↓]]`.
    pub fn qubit_density(&self) -> [[f64; 2]; 2] {
        let n = self.norm_sqr();
        let dot = |a: &[f64], b: &[f64]| pairwise_sum(&a.iter().zip(b).map(|(x, y)| x * y).collect::<Vec<_>>());
        let uu = dot(&self.up, &self.up) / n;
        let ud = dot(&self.up, &self.down) / n;
        let dd = dot(&self.down, &self.down) / n;
        [[uu, ud], [ud, dd]]
    }

    /// Builds the eigenstate of parity `s` from its sector function.
    pub fn from_sector_function(phi: &[f64], parity: Parity) -> Self {
        let s = parity.sign();
        let mut up = vec![0.0; phi.len()];
        let mut down = vec![0.0; phi.len()];
        for (k, v) in phi.iter().enumerate() {
            if (k % 2 == 0) == (s > 0.0) {
                up[k] = *v;
            } else {
                down[k] = *v;
            }
        }
        let mut state = FockState { up, down };
        state.normalize();
        state
    }

    /// Scales to unit norm with the largest-magnitude amplitude positive.
    pub fn normalize(&mut self) {
        let norm = libm::sqrt(self.norm_sqr());
        let pivot = self
            .up
            .iter()
            .chain(&self.down)
            .fold(0.0_f64, |m, v| if v.abs() > m.abs() { *v } else { m });
        let scale = if pivot < 0.0 { -1.0 / norm } else { 1.0 / norm };
        for v in self.up.iter_mut().chain(self.down.iter_mut()) {
            *v *= scale;
        }
    }
}

/// `D(α)|m⟩` for `m = 0..count`, truncated to `dim` Fock states.
///
/// Uses `D(α)|m⟩ = (a† − α) D(α)|m−1⟩ / √m`, exact below the cutoff.
pub fn displaced_number_states(alpha: f64, count: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut v = vec![0.0; dim];
    if dim > 0 {
        v[0] = libm::exp(-0.5 * alpha * alpha);
        for j in 1..dim {
            v[j] = v[j - 1] * alpha / libm::sqrt(j as f64);
        }
    }
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
    for m in 0..count {
        if m > 0 {
            let prev = &out[m - 1];
            let inv = 1.0 / libm::sqrt(m as f64);
            v = (0..dim)
                .map(|j| {
                    let raised = if j > 0 { libm::sqrt(j as f64) * prev[j - 1] } else { 0.0 };
                    (raised - alpha * prev[j]) * inv
                })
                .collect();
        }
        out.push(v.clone());
    }
    out
}

fn check_tail(op: &'static str, phi: &[f64], tol: f64) -> Result<()> {
    let max = phi.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let tail = phi.iter().rev().take(4).fold(0.0_f64, |m, v| m.max(v.abs()));
    if !(tail <= tol * max) {
        return Err(Error::truncation(
            op,
            alloc::format!("relative amplitude {:.3e} at the Fock cutoff {}", tail / max, phi.len()),
        ));
    }
    Ok(())
}

fn product_state_phi(x: f64, s: Scaled, parity: Parity, dim: usize) -> Result<Vec<f64>> {
    // g = 0: |n,↑⟩ at ξ = n + d (parity (−1)^n), |n,↓⟩ at ξ = n − d (parity −(−1)^n).
    let sign = parity.sign();
    let candidates = [(x - s.db, 1.0), (x + s.db, -1.0)];
    for (n_real, spin) in candidates {
        let n = libm::round(n_real);
        if n >= 0.0 && (n_real - n).abs() < 1e-9 {
            let n = n as usize;
            let p = if n % 2 == 0 { spin } else { -spin };
            if p == sign || s.db == 0.0 {
                if n >= dim {
                    return Err(Error::truncation("rabi_braak::bargmann_to_fock", "level above the Fock cutoff"));
                }
                let mut phi = vec![0.0; dim];
                phi[n] = 1.0;
                return Ok(phi);
            }
        }
    }
    Err(Error::invalid("rabi_braak::bargmann_to_fock", alloc::format!("xi = {x} is not a g = 0 level")))
}

fn displaced_phi(series: &MinimalSeries, x: f64, s: Scaled, dim: usize) -> Vec<f64> {
    let weights: Vec<f64> =
        series.b.iter().enumerate().map(|(m, b)| b * s.db / (x - m as f64)).collect();
    let basis = displaced_number_states(-s.g, weights.len(), dim);
    (0..dim)
        .map(|j| pairwise_sum(&weights.iter().zip(&basis).map(|(w, v)| w * v[j]).collect::<Vec<_>>()))
        .collect()
}

fn convolution_phi(series: &MinimalSeries, s: Scaled, dim: usize) -> Vec<f64> {
    // e^{gz} Σ K_m (g − z)^m = Σ_k a_k z^k and |k⟩ carries a_k √(k!).
    let m_len = series.b.len();
    let lg = libm::log(s.g);
    let lfact = |n: usize| libm::lgamma(n as f64 + 1.0);
    // p_j √(j!) = Σ_m b_m (−1)^j C(m, j) g^{m−j} √(j!/m!)
    let p: Vec<f64> = (0..m_len)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let terms: Vec<f64> = (j..m_len)
                .map(|m| {
                    let log_w = 0.5 * lfact(m) - 0.5 * lfact(j) - lfact(m - j) + (m - j) as f64 * lg;
                    series.b[m] * libm::exp(log_w)
                })
                .collect();
            sign * pairwise_sum(&terms)
        })
        .collect();
    (0..dim)
        .map(|k| {
            let terms: Vec<f64> = (0..=k)
                .filter(|i| k - i < m_len)
                .map(|i| {
                    let j = k - i;
                    let log_w = i as f64 * lg - lfact(i) + 0.5 * lfact(k) - 0.5 * lfact(j);
                    libm::exp(log_w) * p[j]
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect()
}

/// Fock amplitudes of the eigenstate at `root`, truncated to `n_fock`.
pub fn bargmann_to_fock(root: &BraakRoot, p: &RabiParams, n_fock: usize, cfg: &RabiConfig) -> Result<FockState> {
    const OP: &str = "rabi_braak::bargmann_to_fock";
    p.validate()?;
    if n_fock < 2 {
        return Err(Error::invalid(OP, "n_fock must be at least 2"));
    }
    let s = p.scaled();
    let x = root.xi / p.omega;
    let phi = if s.g == 0.0 {
        product_state_phi(x, s, root.parity, n_fock)?
    } else if s.db == 0.0 {
        let m = libm::round(x);
        if m < 0.0 || (x - m).abs() > 1e-9 {
            return Err(Error::invalid(OP, alloc::format!("xi = {x} is not a Δ = 0 level")));
        }
        displaced_number_states(-s.g, m as usize + 1, n_fock).pop().unwrap_or_default()
    } else {
        let series = minimal_series(x, s, cfg)?;
        match cfg.synthesis {
            Synthesis::DisplacedBasis => displaced_phi(&series, x, s, n_fock),
            Synthesis::BinomialConvolution => convolution_phi(&series, s, n_fock),
        }
    };
    check_tail(OP, &phi, cfg.fock_tail_tol)?;
    Ok(FockState::from_sector_function(&phi, root.parity))
}
