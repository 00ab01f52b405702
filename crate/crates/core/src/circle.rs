//! Moments of ensembles confined to a great circle of the Bloch sphere.
//!
//! A distribution `ρ(θ)` enters only through its Fourier coefficients
//! `c_k = ∫ρ(θ) e^{ikθ} dθ`:
//!
//! ```text
//! C²₍ₙ₎ = 𝒩ₙ [1 − 4⁻ⁿ C(2n, n) − 2·4⁻ⁿ Σ_{k=1..n} C(2n, n−k) |c_k|²]
//! ```

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::{central_binomial_ratio, normalization, Normalization};
use crate::numerics::pairwise_sum;

const TOL: f64 = 1e-12;
const DROP_COEFF: f64 = 1e-16;
const NEGATIVE_DENSITY: f64 = 1e-10;
const REFINE_TOL: f64 = 1e-8;

/// Default grid size for the brute-force reference.
pub const DEFAULT_QUADRATURE: usize = 2048;

/// A point mass at angle `theta ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleAtom {
    pub theta: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircleDistribution {
    /// Discrete atoms, sorted by angle.
    Atoms(Vec<CircleAtom>),
    /// `coeffs[k] = c_k`; coefficients past `coeffs.len()` and up to
    /// `k_max` are zero.
    Fourier { coeffs: Vec<Complex64>, k_max: usize },
}

/// Maps an angle into `(−π, π]`.
pub fn canonical_angle(theta: f64) -> f64 {
    let mut t = libm::fmod(theta, TAU);
    if t > PI {
        t -= TAU;
    }
    if t <= -PI {
        t += TAU;
    }
    t
}

impl CircleDistribution {
    /// Validates and canonicalizes `(θ, weight)` pairs. Zero weights are dropped.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        const OP: &str = "moments_circle::from_atoms";
        if atoms.iter().any(|(t, w)| !t.is_finite() || !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid(OP, "angles must be finite and weights non-negative"));
        }
        let total = pairwise_sum(&atoms.iter().map(|a| a.1).collect::<Vec<_>>());
        if (total - 1.0).abs() > TOL {
            return Err(Error::invalid(OP, alloc::format!("weights sum to {total}")));
        }
        let mut out: Vec<CircleAtom> = atoms
            .iter()
            .filter(|(_, w)| *w > 0.0)
            .map(|&(t, w)| CircleAtom { theta: canonical_angle(t), weight: w })
            .collect();
        out.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(a.weight.total_cmp(&b.weight)));
        Ok(CircleDistribution::Atoms(out))
    }

    /// Validates Fourier data `c_0..c_K` (`c_0 = 1`, `|c_k| ≤ 1`).
    pub fn from_fourier(coeffs: Vec<Complex64>) -> Result<Self> {
        const OP: &str = "moments_circle::from_fourier";
        let Some(c0) = coeffs.first() else {
            return Err(Error::invalid(OP, "no coefficients"));
        };
        if (c0 - Complex64::new(1.0, 0.0)).norm() > TOL {
            return Err(Error::invalid(OP, alloc::format!("c_0 = {c0}, expected 1")));
        }
        if let Some(k) = coeffs.iter().position(|c| !(c.norm() <= 1.0 + TOL)) {
            return Err(Error::invalid(OP, alloc::format!("|c_{k}| exceeds 1")));
        }
        let k_max = coeffs.len() - 1;
        Ok(CircleDistribution::Fourier { coeffs, k_max })
    }

    /// Coefficients `c_0..=c_{k}`.
    pub fn coefficients(&self, k: usize) -> Result<Vec<Complex64>> {
        match self {
            CircleDistribution::Atoms(atoms) => Ok(atom_coefficients(atoms, k)),
            CircleDistribution::Fourier { coeffs, k_max } => {
                if k > *k_max {
                    return Err(Error::InsufficientOrder {
                        op: "moments_circle::coefficients",
                        needed: k,
                        available: *k_max,
                    });
                }
                let mut out = coeffs.clone();
                out.resize(k + 1, Complex64::new(0.0, 0.0));
                Ok(out)
            }
        }
    }
}

fn atom_coefficients(atoms: &[CircleAtom], k_max: usize) -> Vec<Complex64> {
    (0..=k_max)
        .map(|k| {
            let re: Vec<f64> = atoms.iter().map(|a| a.weight * libm::cos(k as f64 * a.theta)).collect();
            let im: Vec<f64> = atoms.iter().map(|a| a.weight * libm::sin(k as f64 * a.theta)).collect();
            Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
        })
        .collect()
}

/// Fourier form of `dist` up to order `k_max`.
pub fn fourier_from_atoms(dist: &CircleDistribution, k_max: usize) -> Result<CircleDistribution> {
    Ok(CircleDistribution::Fourier { coeffs: dist.coefficients(k_max)?, k_max })
}

/// `C(2n, n−k) / 4ⁿ` for `k = 0..=n`.
fn circle_weights(n: usize) -> Vec<f64> {
    let mut b = vec![central_binomial_ratio(n); n + 1];
    for k in 1..=n {
        b[k] = b[k - 1] * (n - k + 1) as f64 / (n + k) as f64;
    }
    b
}

/// The n-th moment from the Fourier expansion.
pub fn circle_moment(dist: &CircleDistribution, n: usize) -> Result<f64> {
    let norm = normalization(Normalization::Circle, n, 2)?;
    let c = dist.coefficients(n)?;
    let b = circle_weights(n);
    let terms: Vec<f64> = (1..=n).map(|k| b[k] * c[k].norm_sqr()).collect();
    Ok(norm * (1.0 - b[0] - 2.0 * pairwise_sum(&terms)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinCircle {
    /// Two atoms at 0 and π with weights `(1 ± e^{−s})/2`.
    Rho1,
    /// Heat kernel with `c_k = e^{−k² s}`.
    Rho2,
}

pub fn builtin_circle(name: BuiltinCircle, s: f64, k_max: usize) -> Result<CircleDistribution> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain("moments_circle::builtin_circle", alloc::format!("s = {s}")));
    }
    match name {
        BuiltinCircle::Rho1 => {
            let e = libm::exp(-s);
            CircleDistribution::from_atoms(&[(0.0, 0.5 * (1.0 + e)), (PI, 0.5 * (1.0 - e))])
        }
        BuiltinCircle::Rho2 => {
            let mut coeffs = Vec::new();
            for k in 0..=k_max {
                let c = libm::exp(-((k * k) as f64) * s);
                if c < DROP_COEFF {
                    break;
                }
                coeffs.push(Complex64::new(c, 0.0));
            }
            Ok(CircleDistribution::Fourier { coeffs, k_max })
        }
    }
}

/// Reference value from the double integral with `d² = 1 − cos^{2n}((θ−θ′)/2)`.
///
/// Atoms are summed exactly. Fourier data are synthesized on `m_quad`
/// equispaced points and checked against a grid of `2·m_quad` points.
pub fn circle_moment_bruteforce(dist: &CircleDistribution, n: usize, m_quad: usize) -> Result<f64> {
    let norm = normalization(Normalization::Circle, n, 2)?;
    match dist {
        CircleDistribution::Atoms(atoms) => {
            let mut terms = Vec::with_capacity(atoms.len() * atoms.len());
            for a in atoms {
                for b in atoms {
                    let c = libm::cos(0.5 * (a.theta - b.theta));
                    terms.push(a.weight * b.weight * (1.0 - libm::pow(c * c, n as f64)));
                }
            }
            Ok(norm * pairwise_sum(&terms))
        }
        CircleDistribution::Fourier { coeffs, .. } => {
            if m_quad < 8 {
                return Err(Error::truncation("moments_circle::bruteforce", "grid too small"));
            }
            let coarse = grid_double_integral(coeffs, n, m_quad)?;
            let fine = grid_double_integral(coeffs, n, 2 * m_quad)?;
            if (coarse - fine).abs() * norm > REFINE_TOL {
                return Err(Error::truncation(
                    "moments_circle::bruteforce",
                    alloc::format!("grid {m_quad} disagrees with refined grid by {}", (coarse - fine).abs()),
                ));
            }
            Ok(norm * coarse)
        }
    }
}

fn grid_double_integral(coeffs: &[Complex64], n: usize, m: usize) -> Result<f64> {
    let h = TAU / m as f64;
    let mut rho = Vec::with_capacity(m);
    for i in 0..m {
        let t = -PI + h * i as f64;
        let mut v = coeffs[0].re;
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            let kt = k as f64 * t;
            v += 2.0 * (c.re * libm::cos(kt) + c.im * libm::sin(kt));
        }
        v /= TAU;
        if v < -NEGATIVE_DENSITY {
            return Err(Error::invalid(
                "moments_circle::bruteforce",
                alloc::format!("synthesized density {v} is negative at θ = {t}"),
            ));
        }
        rho.push(v.max(0.0));
    }
    // The kernel depends only on θ − θ′, so accumulate the circular autocorrelation.
    let mut total = Vec::with_capacity(m);
    for d in 0..m {
        let c = libm::cos(0.5 * h * d as f64);
        let kernel = 1.0 - libm::pow(c * c, n as f64);
        let corr: f64 = (0..m).map(|i| rho[i] * rho[(i + d) % m]).sum();
        total.push(kernel * corr);
    }
    Ok(pairwise_sum(&total) * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn fourier_examples() {
        let one = CircleDistribution::from_atoms(&[(0.0, 1.0)]).unwrap();
        assert!(one.coefficients(10).unwrap().iter().all(|c| close(c.re, 1.0, 1e-15) && c.im == 0.0));
        let anti = CircleDistribution::from_atoms(&[(0.0, 0.5), (PI, 0.5)]).unwrap();
        let c = anti.coefficients(6).unwrap();
        for (k, ck) in c.iter().enumerate() {
            let expect = if k % 2 == 0 { 1.0 } else { 0.0 };
            assert!(close(ck.norm(), expect, 1e-15));
        }
        let s = 0.7;
        let rho1 = builtin_circle(BuiltinCircle::Rho1, s, 0).unwrap();
        for (k, ck) in rho1.coefficients(7).unwrap().iter().enumerate() {
            let expect = if k % 2 == 0 { 1.0 } else { libm::exp(-s) };
            assert!(close(ck.re, expect, 1e-15));
        }
    }

    #[test]
    fn angles_are_canonical() {
        assert_eq!(canonical_angle(-PI), PI);
        assert_eq!(canonical_angle(PI), PI);
        assert!(close(canonical_angle(3.0 * PI / 2.0), -PI / 2.0, 1e-15));
        assert!(close(canonical_angle(-7.0), -7.0 + TAU, 1e-15));
        let CircleDistribution::Atoms(a) = CircleDistribution::from_atoms(&[(-PI, 1.0)]).unwrap() else {
            unreachable!()
        };
        assert_eq!(a[0].theta, PI);
    }

    #[test]
    fn moment_examples() {
        for &s in &[0.0, 0.1, 0.5, 1.0, 3.0] {
            let r1 = circle_moment(&builtin_circle(BuiltinCircle::Rho1, s, 0).unwrap(), 1).unwrap();
            let r2 = circle_moment(&builtin_circle(BuiltinCircle::Rho2, s, 4).unwrap(), 1).unwrap();
            let expect = 1.0 - libm::exp(-2.0 * s);
            assert!(close(r1, expect, 1e-12) && close(r2, expect, 1e-12), "s={s}");
        }
        let anti = CircleDistribution::from_atoms(&[(0.0, 0.5), (PI, 0.5)]).unwrap();
        assert!(close(circle_moment(&anti, 2).unwrap(), 0.8, 1e-15));
        let half = 0.5 * normalization(Normalization::Circle, 500, 2).unwrap();
        assert!(close(circle_moment(&anti, 500).unwrap(), half, 1e-12));
        let uniform = CircleDistribution::from_fourier(vec![Complex64::new(1.0, 0.0)]).unwrap();
        let CircleDistribution::Fourier { coeffs, .. } = uniform else { unreachable!() };
        let uniform = CircleDistribution::Fourier { coeffs, k_max: 50 };
        for n in 1..=50 {
            assert!(close(circle_moment(&uniform, n).unwrap(), 1.0, 1e-13));
        }
        let short = builtin_circle(BuiltinCircle::Rho2, 0.5, 3).unwrap();
        assert!(matches!(circle_moment(&short, 4), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn builtin_examples() {
        let CircleDistribution::Atoms(a) = builtin_circle(BuiltinCircle::Rho1, 0.0, 0).unwrap() else {
            unreachable!()
        };
        assert_eq!(a, vec![CircleAtom { theta: 0.0, weight: 1.0 }]);
        let r2 = builtin_circle(BuiltinCircle::Rho2, 0.0, 20).unwrap();
        assert!(r2.coefficients(20).unwrap().iter().all(|c| c.re == 1.0));
        let r2 = builtin_circle(BuiltinCircle::Rho2, 0.5, 20).unwrap();
        assert!(close(r2.coefficients(1).unwrap()[1].re, 0.6065306597126334, 1e-15));
        let CircleDistribution::Fourier { coeffs, .. } = builtin_circle(BuiltinCircle::Rho2, 1.0, 100).unwrap() else {
            unreachable!()
        };
        assert_eq!(coeffs.len(), 7);
        assert!(builtin_circle(BuiltinCircle::Rho2, -1.0, 3).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let anti = CircleDistribution::from_atoms(&[(0.0, 0.5), (PI, 0.5)]).unwrap();
        assert!(close(circle_moment_bruteforce(&anti, 2, 0).unwrap(), 0.8, 1e-15));
        let one = CircleDistribution::from_atoms(&[(1.0, 1.0)]).unwrap();
        assert_eq!(circle_moment_bruteforce(&one, 3, 0).unwrap(), 0.0);
        let r2 = builtin_circle(BuiltinCircle::Rho2, 0.5, 200).unwrap();
        let v = circle_moment_bruteforce(&r2, 1, DEFAULT_QUADRATURE).unwrap();
        assert!(close(v, 1.0 - libm::exp(-1.0), 1e-10));
        let delta = builtin_circle(BuiltinCircle::Rho2, 0.0, 30).unwrap();
        assert!(circle_moment_bruteforce(&delta, 1, 256).is_err());
    }

    #[test]
    fn heat_kernel_matches_bruteforce() {
        for &s in &[0.1, 0.5, 1.0, 2.0] {
            let r2 = builtin_circle(BuiltinCircle::Rho2, s, 400).unwrap();
            for n in 1..=12 {
                let a = circle_moment(&r2, n).unwrap();
                let b = circle_moment_bruteforce(&r2, n, DEFAULT_QUADRATURE).unwrap();
                assert!(close(a, b, 1e-8), "s={s} n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn moment_ordering_at_unit_s() {
        let r1 = builtin_circle(BuiltinCircle::Rho1, 1.0, 0).unwrap();
        let r2 = builtin_circle(BuiltinCircle::Rho2, 1.0, 20).unwrap();
        let m1: Vec<f64> = (1..=6).map(|n| circle_moment(&r1, n).unwrap()).collect();
        let m2: Vec<f64> = (1..=6).map(|n| circle_moment(&r2, n).unwrap()).collect();
        assert!(m1.windows(2).all(|w| w[1] < w[0]), "{m1:?}");
        assert!(m2.windows(2).all(|w| w[1] > w[0]), "{m2:?}");
    }

    fn atoms_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-10.0..10.0f64, 0.01..1.0f64), 1..=30).prop_map(|v| {
            let total: f64 = v.iter().map(|a| a.1).sum();
            v.into_iter().map(|(t, w)| (t, w / total)).collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn expansion_matches_bruteforce(atoms in atoms_strategy(), n in 1usize..=20) {
            let dist = CircleDistribution::from_atoms(&atoms).unwrap();
            let a = circle_moment(&dist, n).unwrap();
            let b = circle_moment_bruteforce(&dist, n, 0).unwrap();
            prop_assert!(close(a, b, 1e-8), "{} vs {}", a, b);
        }

        #[test]
        fn rotation_invariant(atoms in atoms_strategy(), shift in -4.0..4.0f64, n in 1usize..=15) {
            let dist = CircleDistribution::from_atoms(&atoms).unwrap();
            let moved: Vec<(f64, f64)> = atoms.iter().map(|(t, w)| (t + shift, *w)).collect();
            let moved = CircleDistribution::from_atoms(&moved).unwrap();
            prop_assert!(close(circle_moment(&dist, n).unwrap(), circle_moment(&moved, n).unwrap(), 1e-12));
        }

        #[test]
        fn first_moment_degenerate(s in 0.0..6.0f64) {
            let r1 = circle_moment(&builtin_circle(BuiltinCircle::Rho1, s, 0).unwrap(), 1).unwrap();
            let r2 = circle_moment(&builtin_circle(BuiltinCircle::Rho2, s, 2).unwrap(), 1).unwrap();
            prop_assert!(close(r1, r2, 1e-12));
        }
    }
}
