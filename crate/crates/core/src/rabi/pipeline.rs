use alloc::vec::Vec;

use super::params::RabiParams;
use super::position::{default_half_width, spinor_grid, theta_distribution, SpinorGrid};
use super::spectrum::{level_root, BraakRoot, Level};
use super::state::{bargmann_to_fock, FockState};
use crate::circle::{circle_moment, CircleDistribution};
use crate::config::RabiConfig;
use crate::error::Result;
use crate::moments::{MomentCurve, Normalization};

/// Moment curve of one eigenstate with the data it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct RabiMoments {
    pub root: BraakRoot,
    pub curve: MomentCurve,
    pub distribution: CircleDistribution,
    pub grid: SpinorGrid,
    /// Another level lies within `near_degenerate·ω` of this one.
    pub near_degenerate: bool,
}

/// State → position grid → θ distribution → circle moments.
pub fn moments_from_state(
    state: &FockState,
    p: &RabiParams,
    orders: &[usize],
    cfg: &RabiConfig,
) -> Result<(MomentCurve, CircleDistribution, SpinorGrid)> {
    let g = p.g / p.omega;
    let grid = spinor_grid(state, cfg.grid_points, default_half_width(state.len(), g))?;
    let k_max = orders.iter().copied().max().unwrap_or(1);
    let distribution = theta_distribution(&grid, k_max, cfg.grid_refine_tol)?;
    let values = orders
        .iter()
        .map(|&n| circle_moment(&distribution, n))
        .collect::<Result<Vec<_>>>()?;
    let curve = MomentCurve { orders: orders.to_vec(), values, convention: Normalization::Circle };
    Ok((curve, distribution, grid))
}

/// Entanglement moments of an eigenstate measured in the position basis.
pub fn rabi_moments(p: &RabiParams, level: Level, orders: &[usize], cfg: &RabiConfig) -> Result<RabiMoments> {
    p.validate()?;
    let root = level_root(p, level, cfg)?;
    let n_fock = cfg.fock_cutoff(p.g / p.omega);
    let state = bargmann_to_fock(&root, p, n_fock, cfg)?;
    let (curve, distribution, grid) = moments_from_state(&state, p, orders, cfg)?;
    let near_degenerate = neighbours_within(p, level, &root, cfg)?;
    Ok(RabiMoments { root, curve, distribution, grid, near_degenerate })
}

fn neighbours_within(p: &RabiParams, level: Level, root: &BraakRoot, cfg: &RabiConfig) -> Result<bool> {
    let tol = cfg.near_degenerate * p.omega;
    let k = match level {
        Level::Global(k) => k,
        Level::InParity(_, k) => k,
    };
    let nearby = super::spectrum::lowest_levels(p, 2 * k + 4, cfg)?;
    Ok(nearby
        .iter()
        .any(|r| (r.parity != root.parity || r.index != root.index) && (r.energy - root.energy).abs() < tol))
}
