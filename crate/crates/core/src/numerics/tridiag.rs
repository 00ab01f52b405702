//! Tridiagonal linear systems by Gaussian elimination with partial pivoting.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Solves `A x = rhs` for the tridiagonal `A` with diagonal `diag`,
/// sub-diagonal `sub` (`sub[i] = A[i+1][i]`) and super-diagonal `sup`
/// (`sup[i] = A[i][i+1]`).
///
/// Exactly singular pivots are replaced by `tiny` times the matrix scale,
/// which is what inverse iteration at an exact eigenvalue wants.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    const OP: &str = "numerics::solve_tridiagonal";
    let n = diag.len();
    if n == 0 || sub.len() + 1 != n || sup.len() + 1 != n || rhs.len() != n {
        return Err(Error::invalid(OP, "inconsistent band lengths"));
    }
    let scale = diag.iter().chain(sub).chain(sup).fold(0.0_f64, |m, v| m.max(v.abs()));
    if !scale.is_finite() {
        return Err(Error::invalid(OP, "non-finite matrix entry"));
    }
    let tiny = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    // Row i after elimination: d[i] x_i + u1[i] x_{i+1} + u2[i] x_{i+2}.
    let mut d = diag.to_vec();
    let mut u1: Vec<f64> = sup.to_vec();
    u1.push(0.0);
    let mut u2 = vec![0.0; n];
    let mut b = rhs.to_vec();
    let mut low: Vec<f64> = sub.to_vec();
    for i in 0..n - 1 {
        if low[i].abs() > d[i].abs() {
            // Swap rows i and i+1.
            core::mem::swap(&mut d[i], &mut low[i]);
            core::mem::swap(&mut d[i + 1], &mut u1[i]);
            core::mem::swap(&mut u1[i + 1], &mut u2[i]);
            b.swap(i, i + 1);
        }
        if d[i] == 0.0 {
            d[i] = tiny;
        }
        let factor = low[i] / d[i];
        d[i + 1] -= factor * u1[i];
        u1[i + 1] -= factor * u2[i];
        b[i + 1] -= factor * b[i];
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut v = b[i];
        if i + 1 < n {
            v -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            v -= u2[i] * x[i + 2];
        }
        x[i] = v / d[i];
    }
    Ok(x)
}
