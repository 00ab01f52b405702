use alloc::vec;
use alloc::vec::Vec;

use crate::config::NumericsConfig;
use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f(x) dx` with the rule mapped affinely onto `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Composite version of [`integrate`](Self::integrate) over `panels` equal panels.
    pub fn integrate_composite(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: impl FnMut(f64) -> f64,
    ) -> f64 {
        let width = (b - a) / panels as f64;
        (0..panels)
            .map(|p| {
                let lo = a + p as f64 * width;
                self.integrate(lo, lo + width, &mut f)
            })
            .sum()
    }
}

/// `m`-point Gauss–Legendre rule, exact for polynomials of degree `≤ 2m − 1`.
///
/// Nodes are the roots of `P_m`, polished by Newton iteration from the
/// Tricomi-type initial guess; weights are `2 / ((1 − x²) P_m'(x)²)`.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule> {
    let max = NumericsConfig::default().gauss_legendre_max;
    if m == 0 || m > max {
        return Err(Error::domain(
            "numerics::gauss_legendre",
            alloc::format!("order {m} outside 1..={max}"),
        ));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-300) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Root i of the descending sequence cos(...) is the (m-1-i)-th ascending node.
        nodes[m - 1 - i] = x;
        nodes[i] = -x;
        weights[m - 1 - i] = w;
        weights[i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights })
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..m {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let mf = m as f64;
    let d = mf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::legendre_p;
    use crate::numerics::sum::pairwise_sum;

    #[test]
    fn one_and_two_point_rules() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes, vec![0.0]);
        assert!((r1.weights[0] - 2.0).abs() < 1e-15);

        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / libm::sqrt(3.0);
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        assert!((r2.weights[0] - 1.0).abs() < 1e-15 && (r2.weights[1] - 1.0).abs() < 1e-15);
        assert!((r2.integrate(-1.0, 1.0, |t| t * t) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn invariants_and_exactness() {
        for &m in &[1usize, 2, 3, 5, 8, 17, 32, 64, 101] {
            let rule = gauss_legendre(m).unwrap();
            assert_eq!(rule.nodes.len(), rule.weights.len());
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(rule.weights.iter().all(|w| *w > 0.0));
            assert!((pairwise_sum(&rule.weights) - 2.0).abs() < 1e-13, "m={m}");
            for l in 1..2 * m {
                let integral = rule.integrate(-1.0, 1.0, |t| legendre_p(l, t).unwrap());
                assert!(integral.abs() < 1e-12, "m={m} l={l}: {integral}");
            }
        }
    }

    #[test]
    fn large_rules_are_normalized() {
        for &m in &[512usize, 4096] {
            let rule = gauss_legendre(m).unwrap();
            assert!((pairwise_sum(&rule.weights) - 2.0).abs() < 1e-13);
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(4097).is_err());
    }

    #[test]
    fn composite_integration() {
        let rule = gauss_legendre(4).unwrap();
        let v = rule.integrate_composite(0.0, core::f64::consts::PI, 10, libm::sin);
        assert!((v - 2.0).abs() < 1e-10);
    }
}
