use alloc::vec::Vec;

use super::params::RabiParams;
use super::series::minimal_series;
use super::spectrum::BraakRoot;
use super::state::FockState;
use crate::config::RabiConfig;
use crate::error::{Error, Result};
use crate::numerics::{laguerre_l, pairwise_sum};

/// `C²₍₁₎ = 1 − ⟨φ|P|φ⟩²` from the series:
/// `⟨φ|P|φ⟩ = Σ m! K_m² d/(ξ−m) / Σ m! K_m²`.
pub fn concurrence_braak(root: &BraakRoot, p: &RabiParams, cfg: &RabiConfig) -> Result<f64> {
    p.validate()?;
    let s = p.scaled();
    let x = root.xi / p.omega;
    if s.g == 0.0 {
        return Ok(0.0);
    }
    if s.db == 0.0 {
        let m = libm::round(x);
        if m < 0.0 || (x - m).abs() > 1e-9 {
            return Err(Error::invalid(
                "rabi_braak::concurrence_braak",
                alloc::format!("xi = {x} is not a Δ = 0 level"),
            ));
        }
        return Ok(concurrence_delta_zero(m as usize, p.g, p.omega)?.value);
    }
    let series = minimal_series(x, s, cfg)?;
    let num: Vec<f64> =
        series.b.iter().enumerate().map(|(m, b)| b * b * s.db / (x - m as f64)).collect();
    let den: Vec<f64> = series.b.iter().map(|b| b * b).collect();
    let ratio = pairwise_sum(&num) / pairwise_sum(&den);
    Ok(1.0 - ratio * ratio)
}

/// `1 − ⟨φ|P|φ⟩²` with `φ` the σ_x = +1 sector function of `state`.
pub fn parity_concurrence(state: &FockState) -> f64 {
    let phi = state.sector_function();
    let norm = pairwise_sum(&phi.iter().map(|v| v * v).collect::<Vec<_>>());
    let alt: Vec<f64> = phi
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v * v } else { -v * v })
        .collect();
    let pe = pairwise_sum(&alt) / norm;
    1.0 - pe * pe
}

/// I-concurrence `2(1 − tr ϱ²)` of the reduced qubit state.
pub fn qubit_i_concurrence(state: &FockState) -> f64 {
    let r = state.qubit_density();
    let purity = r[0][0] * r[0][0] + r[1][1] * r[1][1] + 2.0 * r[0][1] * r[0][1];
    2.0 * (1.0 - purity)
}

/// Both closed forms for the `Δ = 0` level `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaZeroConcurrence {
    /// `1 − e^{−4x} L_n(4x)²` with `x = (g/ω)²`: the parity expectation of
    /// `D(−g/ω)|n⟩` is `(−1)^n e^{−2x} L_n(4x)`.
    pub value: f64,
    /// The alternative form `1 − L_n(x/2) e^{−x/4}`, reported for comparison.
    pub alternative: f64,
}

impl DeltaZeroConcurrence {
    pub fn discrepancy(&self) -> f64 {
        (self.value - self.alternative).abs()
    }
}

pub fn concurrence_delta_zero(n_level: usize, g: f64, omega: f64) -> Result<DeltaZeroConcurrence> {
    if !(g >= 0.0 && g.is_finite() && omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(
            "rabi_braak::concurrence_delta_zero",
            alloc::format!("g = {g}, omega = {omega}"),
        ));
    }
    let x = (g / omega) * (g / omega);
    let parity = libm::exp(-2.0 * x) * laguerre_l(n_level, 4.0 * x);
    Ok(DeltaZeroConcurrence {
        value: 1.0 - parity * parity,
        alternative: 1.0 - laguerre_l(n_level, 0.5 * x) * libm::exp(-0.25 * x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_zero_limits() {
        for n in 0..6 {
            assert_eq!(concurrence_delta_zero(n, 0.0, 1.0).unwrap().value, 0.0);
            assert!((concurrence_delta_zero(n, 8.0, 1.0).unwrap().value - 1.0).abs() < 1e-12);
        }
        let v = concurrence_delta_zero(0, 0.5, 1.0).unwrap();
        assert!((v.value - (1.0 - libm::exp(-1.0))).abs() < 1e-14);
        assert!(v.discrepancy() > 0.1);
        assert!(concurrence_delta_zero(0, -1.0, 1.0).is_err());
        let scaled = concurrence_delta_zero(2, 1.4, 2.0).unwrap();
        let unit = concurrence_delta_zero(2, 0.7, 1.0).unwrap();
        assert_eq!(scaled, unit);
    }

    #[test]
    fn qubit_measures_of_a_product_state() {
        let st = FockState { up: alloc::vec![1.0, 0.0], down: alloc::vec![0.0, 0.0] };
        assert!(qubit_i_concurrence(&st).abs() < 1e-15);
        assert!(parity_concurrence(&st).abs() < 1e-15);
    }
}
