//! Position-basis spinors and the distribution of conditional qubit states
//! on the Bloch great circle.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::state::FockState;
use crate::circle::{CircleAtom, CircleDistribution};
use crate::error::{Error, Result};
use crate::numerics::{hermite_fns, pairwise_sum};

const NORM_TOL: f64 = 1e-8;

/// `ψ↑(x)`, `ψ↓(x)` on a uniform grid symmetric about zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorGrid {
    pub xs: Vec<f64>,
    pub psi_up: Vec<f64>,
    pub psi_down: Vec<f64>,
    /// `∫(ψ↑² + ψ↓²) dx` before the arrays were rescaled to unit norm.
    pub norm: f64,
}

impl SpinorGrid {
    pub fn spacing(&self) -> f64 {
        self.xs[1] - self.xs[0]
    }

    /// Same grid with both components negated.
    pub fn negated(&self) -> Self {
        Self {
            xs: self.xs.clone(),
            psi_up: self.psi_up.iter().map(|v| -v).collect(),
            psi_down: self.psi_down.iter().map(|v| -v).collect(),
            norm: self.norm,
        }
    }
}

/// Half-width `√(2 n_fock) + 2√2 g/ω + 8` of the default grid.
pub fn default_half_width(n_fock: usize, g_scaled: f64) -> f64 {
    libm::sqrt(2.0 * n_fock as f64) + 2.0 * core::f64::consts::SQRT_2 * g_scaled + 8.0
}

/// Synthesizes `ψ(x) = Σ_k c_k h_k(x)` with normalized Hermite functions.
pub fn spinor_grid(state: &FockState, points: usize, half_width: f64) -> Result<SpinorGrid> {
    const OP: &str = "rabi_braak::spinor_grid";
    if points < 16 || !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::invalid(OP, alloc::format!("{points} points, half-width {half_width}")));
    }
    let h = 2.0 * half_width / (points - 1) as f64;
    let xs: Vec<f64> = (0..points)
        .map(|i| {
            // Mirror the left half so the grid is exactly symmetric.
            let j = i.min(points - 1 - i);
            let x = -half_width + h * j as f64;
            if i == j { x } else { -x }
        })
        .collect();
    let mut basis = vec![0.0; state.len()];
    let mut up = Vec::with_capacity(points);
    let mut down = Vec::with_capacity(points);
    for &x in &xs {
        hermite_fns(x, &mut basis)?;
        up.push(dot(&state.up, &basis));
        down.push(dot(&state.down, &basis));
    }
    let density: Vec<f64> = up.iter().zip(&down).map(|(u, d)| u * u + d * d).collect();
    let norm = h * pairwise_sum(&density);
    if !((norm - 1.0).abs() <= NORM_TOL) {
        return Err(Error::truncation(
            OP,
            alloc::format!("grid norm {norm} (half-width {half_width}, {points} points)"),
        ));
    }
    let scale = 1.0 / libm::sqrt(norm);
    for v in up.iter_mut().chain(down.iter_mut()) {
        *v *= scale;
    }
    Ok(SpinorGrid { xs, psi_up: up, psi_down: down, norm })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `θ(x) = π + 2·atan2(ψ↑, ψ↓)`.
fn theta(up: f64, down: f64) -> f64 {
    PI + 2.0 * libm::atan2(up, down)
}

fn fourier_sum(grid: &SpinorGrid, stride: usize, k_max: usize) -> Vec<Complex64> {
    let idx: Vec<usize> = (0..grid.xs.len()).step_by(stride).collect();
    let weights: Vec<f64> = idx
        .iter()
        .map(|&i| grid.psi_up[i] * grid.psi_up[i] + grid.psi_down[i] * grid.psi_down[i])
        .collect();
    let thetas: Vec<f64> = idx.iter().map(|&i| theta(grid.psi_up[i], grid.psi_down[i])).collect();
    let mass = pairwise_sum(&weights);
    (0..=k_max)
        .map(|k| {
            let kf = k as f64;
            let re: Vec<f64> = weights.iter().zip(&thetas).map(|(w, t)| w * libm::cos(kf * t)).collect();
            let im: Vec<f64> = weights.iter().zip(&thetas).map(|(w, t)| w * libm::sin(kf * t)).collect();
            Complex64::new(pairwise_sum(&re) / mass, pairwise_sum(&im) / mass)
        })
        .collect()
}

/// Fourier data `c_k = ∫ p(x) e^{ikθ(x)} dx` of the conditional-state
/// distribution, `p = ψ↑² + ψ↓²`, by quadrature on the grid.
///
/// Fails if the half-resolution subgrid changes `c₁` by more than `refine_tol`.
pub fn theta_distribution(grid: &SpinorGrid, k_max: usize, refine_tol: f64) -> Result<CircleDistribution> {
    let k_used = k_max.max(1);
    let fine = fourier_sum(grid, 1, k_used);
    let coarse = fourier_sum(grid, 2, 1);
    let change = (fine[1] - coarse[1]).norm();
    if !(change <= refine_tol) {
        return Err(Error::truncation(
            "rabi_braak::theta_distribution",
            alloc::format!("c_1 changes by {change:.3e} under grid refinement"),
        ));
    }
    let mut coeffs = fine;
    coeffs.truncate(k_max + 1);
    coeffs[0] = Complex64::new(1.0, 0.0);
    CircleDistribution::from_fourier(coeffs)
}

/// Grid points as weighted atoms `(θ(x_i), p(x_i)·h)`.
pub fn theta_atoms(grid: &SpinorGrid) -> Result<CircleDistribution> {
    let weights: Vec<f64> = grid
        .psi_up
        .iter()
        .zip(&grid.psi_down)
        .map(|(u, d)| u * u + d * d)
        .collect();
    let mass = pairwise_sum(&weights);
    let atoms: Vec<(f64, f64)> = grid
        .psi_up
        .iter()
        .zip(&grid.psi_down)
        .zip(&weights)
        .map(|((u, d), w)| (theta(*u, *d), w / mass))
        .collect();
    CircleDistribution::from_atoms(&atoms)
}

/// Histogram of `θ ∈ (−π, π]` with `bins` equal bins, as a probability density.
pub fn theta_histogram(grid: &SpinorGrid, bins: usize) -> Result<Vec<(f64, f64)>> {
    let CircleDistribution::Atoms(atoms) = theta_atoms(grid)? else {
        unreachable!("theta_atoms returns atoms")
    };
    Ok(histogram(&atoms, bins))
}

pub(crate) fn histogram(atoms: &[CircleAtom], bins: usize) -> Vec<(f64, f64)> {
    let width = 2.0 * PI / bins as f64;
    let mut mass = vec![0.0; bins];
    for a in atoms {
        let b = (((a.theta + PI) / width) as usize).min(bins - 1);
        mass[b] += a.weight;
    }
    mass.iter()
        .enumerate()
        .map(|(b, m)| (-PI + width * (b as f64 + 0.5), m / width))
        .collect()
}
