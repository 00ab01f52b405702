//! Moments of N-level ensembles through harmonic occupancies on ℂP^{N−1}.
//!
//! The occupancy of the harmonic space `H(k,k)` is obtained from the
//! addition theorem
//! `P_k^{(N−2,0)}(2|⟨z|w⟩|² − 1) = C(k+N−2,k)/d_{k,N} Σⱼ s*_{kj}(z) s_{kj}(w)`,
//! so the basis functions are never built.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::moments::{gram, normalization, Normalization, WeightedStateSet};
use crate::numerics::{binomial_f64, binomial_u128, jacobi_all, pairwise_sum};

/// Largest harmonic order accepted by [`cpn_occupancy`].
pub const MAX_HARMONIC: usize = 60;

/// Dimension `d_{k,N} = (2k+N−1)/(N−1) · C(k+N−2,k)²` of `H(k,k)`.
pub fn dim_hkk(k: usize, n: usize) -> Result<u128> {
    const OP: &str = "moments_cpn::dim_hkk";
    if n < 2 {
        return Err(Error::domain(OP, alloc::format!("dimension {n} < 2")));
    }
    let c = binomial_u128((k + n - 2) as u64, k as u64)
        .ok_or_else(|| Error::overflow(OP, "binomial coefficient"))?;
    let num = c
        .checked_mul(c)
        .and_then(|c2| c2.checked_mul((2 * k + n - 1) as u128))
        .ok_or_else(|| Error::overflow(OP, alloc::format!("d_(k={k}, N={n})")))?;
    Ok(num / (n as u128 - 1))
}

/// `Λ_k = ‖ρ‖²_{H(k,k)}` for `k = 0..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CpnOccupancy {
    pub dim: usize,
    pub values: Vec<f64>,
}

pub fn cpn_occupancy(set: &WeightedStateSet, k_max: usize) -> Result<CpnOccupancy> {
    if k_max > MAX_HARMONIC {
        return Err(Error::domain(
            "moments_cpn::cpn_occupancy",
            alloc::format!("k_max {k_max} exceeds {MAX_HARMONIC}"),
        ));
    }
    let n = set.dim();
    let alpha = n - 2;
    let q = gram(set).abs_sqr();
    let w = set.weights();
    let m = w.len();
    let mut terms = alloc::vec![Vec::with_capacity(m * m); k_max + 1];
    for i in 0..m {
        for j in 0..m {
            let p = jacobi_all(k_max, alpha, 2.0 * q[i * m + j] - 1.0);
            for (k, pk) in p.iter().enumerate() {
                terms[k].push(w[i] * w[j] * pk);
            }
        }
    }
    let values = terms
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let scale = (2 * k + n - 1) as f64 / (n - 1) as f64 * binomial_f64((k + alpha) as u64, k as u64);
            scale * pairwise_sum(t)
        })
        .collect();
    Ok(CpnOccupancy { dim: n, values })
}

/// `C(n,k) / (C(k+n+N−1, n) C(k+N−1, k))` for `k = 0..=n`.
pub fn moment_coefficients(n: usize, dim: usize) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            binomial_f64(n as u64, k as u64)
                / (binomial_f64((k + n + dim - 1) as u64, n as u64)
                    * binomial_f64((k + dim - 1) as u64, k as u64))
        })
        .collect()
}

/// `C²₍ₙ₎ = 𝒩ₙ [1 − Σ_{k=0..n} c_{n,k} Λ_k]`.
pub fn cpn_moment(occ: &CpnOccupancy, n: usize) -> Result<f64> {
    let norm = normalization(Normalization::Cpn, n, occ.dim)?;
    if occ.values.len() <= n {
        return Err(Error::InsufficientOrder {
            op: "moments_cpn::cpn_moment",
            needed: n,
            available: occ.values.len().saturating_sub(1),
        });
    }
    let coef = moment_coefficients(n, occ.dim);
    let terms: Vec<f64> = coef.iter().zip(&occ.values).map(|(c, l)| c * l).collect();
    Ok(norm * (1.0 - pairwise_sum(&terms)))
}
