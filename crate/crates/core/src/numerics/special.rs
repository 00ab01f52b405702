//! Orthogonal polynomials, Hermite functions and binomial coefficients.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::NumericsConfig;
use crate::error::{Error, Result};

fn check_unit_interval(op: &'static str, t: f64) -> Result<()> {
    let slack = NumericsConfig::default().poly_domain_slack;
    if !(t.abs() <= 1.0 + slack) {
        return Err(Error::domain(op, alloc::format!("argument {t} outside [-1, 1]")));
    }
    Ok(())
}

/// Legendre polynomial `P_l(t)` by the Bonnet recurrence.
pub fn legendre_p(l: usize, t: f64) -> Result<f64> {
    check_unit_interval("numerics::legendre_p", t)?;
    Ok(legendre_unchecked(l, t))
}

fn legendre_unchecked(l: usize, t: f64) -> f64 {
    let (mut p_prev, mut p) = (1.0, t);
    if l == 0 {
        return 1.0;
    }
    for k in 1..l {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * t * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    p
}

/// `P_0(t), …, P_{l_max}(t)` in one recurrence pass.
///
/// Arguments are clamped to `[-1, 1]`; callers feed dot products of unit
/// vectors which may overshoot by rounding.
pub fn legendre_all(l_max: usize, t: f64) -> Vec<f64> {
    let t = t.clamp(-1.0, 1.0);
    let mut out = vec![0.0; l_max + 1];
    out[0] = 1.0;
    if l_max >= 1 {
        out[1] = t;
    }
    for k in 1..l_max {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0) * t * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
    out
}

/// Jacobi polynomial `P_k^{(α,0)}(t)` for integer `α ≥ 0`.
pub fn jacobi_p(k: usize, alpha: usize, t: f64) -> Result<f64> {
    check_unit_interval("numerics::jacobi_p", t)?;
    Ok(*jacobi_all(k, alpha, t).last().unwrap())
}

/// `P_0^{(α,0)}(t), …, P_{k_max}^{(α,0)}(t)`; the argument is clamped to `[-1, 1]`.
pub fn jacobi_all(k_max: usize, alpha: usize, t: f64) -> Vec<f64> {
    let t = t.clamp(-1.0, 1.0);
    let a = alpha as f64;
    let mut out = vec![0.0; k_max + 1];
    out[0] = 1.0;
    if k_max >= 1 {
        out[1] = (a + 1.0) + (a + 2.0) * (t - 1.0) / 2.0;
    }
    // β = 0 specialization of the standard three-term recurrence.
    for n in 2..=k_max {
        let nf = n as f64;
        let s = 2.0 * nf + a;
        let lhs = 2.0 * nf * (nf + a) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * t + a * a);
        let c2 = 2.0 * (nf + a - 1.0) * (nf - 1.0) * s;
        out[n] = (c1 * out[n - 1] - c2 * out[n - 2]) / lhs;
    }
    out
}

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre_l(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut l_prev, mut l) = (1.0, 1.0 - x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * l - kf * l_prev) / (kf + 1.0);
        l_prev = l;
        l = next;
    }
    l
}

const PI_QUARTER_ROOT_INV: f64 = 0.751_125_544_464_942_5;
const RESCALE_ABOVE: f64 = 1e150;

/// Normalized oscillator eigenfunction `h_n(x)` with `∫ h_n² dx = 1`.
///
/// Uses `h_{n+1} = x√(2/(n+1)) h_n − √(n/(n+1)) h_{n−1}` on the polynomial
/// part and applies `e^{−x²/2}` together with the accumulated scale only at
/// the end, so neither the factorials nor the Gaussian underflow on the way.
pub fn hermite_fn(n: usize, x: f64) -> Result<f64> {
    let max = NumericsConfig::default().hermite_max_order;
    if n > max {
        return Err(Error::domain(
            "numerics::hermite_fn",
            alloc::format!("order {n} exceeds maximum {max}"),
        ));
    }
    let mut out = vec![0.0; n + 1];
    hermite_fns(x, &mut out)?;
    Ok(out[n])
}

/// Fills `out[k] = h_k(x)` for `k < out.len()`.
pub fn hermite_fns(x: f64, out: &mut [f64]) -> Result<()> {
    const OP: &str = "numerics::hermite_fns";
    if out.is_empty() {
        return Ok(());
    }
    if !x.is_finite() {
        return Err(Error::domain(OP, "non-finite argument"));
    }
    // h_k = u_k * exp(log_scale - x²/2)
    let mut log_scale = 0.0_f64;
    let gauss = -0.5 * x * x;
    let mut u_prev = 0.0;
    let mut u = PI_QUARTER_ROOT_INV;
    out[0] = u * libm::exp(gauss);
    for k in 0..out.len() - 1 {
        let kf = k as f64;
        let next = x * libm::sqrt(2.0 / (kf + 1.0)) * u - libm::sqrt(kf / (kf + 1.0)) * u_prev;
        u_prev = u;
        u = next;
        if u.abs() > RESCALE_ABOVE {
            u /= RESCALE_ABOVE;
            u_prev /= RESCALE_ABOVE;
            log_scale += libm::log(RESCALE_ABOVE);
        }
        let value = u * libm::exp(log_scale + gauss);
        if !value.is_finite() {
            return Err(Error::overflow(OP, alloc::format!("h_{} at x = {x}", k + 1)));
        }
        out[k + 1] = value;
    }
    Ok(())
}

/// Exact binomial coefficient, `None` when it does not fit in `u128`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        let num = acc.checked_mul((n - i) as u128)?;
        acc = num / (i as u128 + 1);
    }
    Some(acc)
}

/// Binomial coefficient as `f64`: exact integers where they fit, otherwise a
/// running product accurate to a few ulps.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if let Some(exact) = binomial_u128(n, k) {
        return exact as f64;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
