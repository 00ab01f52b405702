//! Sign-change scanning and bisection for real functions with poles.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Interval with a sign change of `f` between its endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Option<Self> {
        (lo < hi && f_lo * f_hi < 0.0).then_some(Self { lo, hi, f_lo, f_hi })
    }
}

/// A located root with `residual = |f(x)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
}

/// Result of a scan: roots ascending, and the scan intervals where `f` was
/// not finite (reported, never bisected).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RootScan {
    pub roots: Vec<Root>,
    pub non_finite: Vec<(f64, f64)>,
}

/// Bisects `bracket` until it is narrower than `tol` or cannot shrink further.
pub fn bisect(mut f: impl FnMut(f64) -> f64, bracket: Bracket, tol: f64) -> f64 {
    let Bracket { mut lo, mut hi, mut f_lo, .. } = bracket;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if !f_mid.is_finite() {
            break;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Uniform sign-change scan of `[lo, hi]` with `scan_points` nodes, each
/// bracket refined by bisection to width `tol`.
pub fn find_roots(
    f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    scan_points: usize,
    tol: f64,
) -> Result<RootScan> {
    if !(lo < hi) || scan_points < 2 {
        return Err(Error::invalid(
            "numerics::find_roots",
            alloc::format!("need lo < hi and at least two scan points (lo={lo}, hi={hi})"),
        ));
    }
    let step = (hi - lo) / (scan_points - 1) as f64;
    let nodes: Vec<f64> = (0..scan_points)
        .map(|i| if i + 1 == scan_points { hi } else { lo + step * i as f64 })
        .collect();
    Ok(find_roots_on_nodes(f, &nodes, tol))
}

/// Sign-change scan over caller-supplied ascending `nodes`.
pub fn find_roots_on_nodes(mut f: impl FnMut(f64) -> f64, nodes: &[f64], tol: f64) -> RootScan {
    let mut scan = RootScan::default();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    for (i, (&x, &v)) in nodes.iter().zip(&values).enumerate() {
        if v == 0.0 {
            scan.roots.push(Root { x, residual: 0.0 });
            continue;
        }
        let Some((&x_next, &v_next)) = nodes.get(i + 1).zip(values.get(i + 1)) else {
            break;
        };
        if !v.is_finite() || !v_next.is_finite() {
            scan.non_finite.push((x, x_next));
            continue;
        }
        if let Some(bracket) = Bracket::new(x, x_next, v, v_next) {
            let root = bisect(&mut f, bracket, tol);
            scan.roots.push(Root { x: root, residual: f(root).abs() });
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let scan = find_roots(|x| x * x - 2.0, 0.0, 2.0, 64, 1e-12).unwrap();
        assert_eq!(scan.roots.len(), 1);
        assert!((scan.roots[0].x - core::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(scan.roots[0].residual < 1e-11);
    }

    #[test]
    fn cosine_root() {
        let scan = find_roots(libm::cos, 0.0, 4.0, 64, 1e-13).unwrap();
        assert_eq!(scan.roots.len(), 1);
        assert!((scan.roots[0].x - core::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn no_real_root() {
        let scan = find_roots(|x| x * x + 1.0, -1.0, 1.0, 64, 1e-12).unwrap();
        assert!(scan.roots.is_empty());
    }

    #[test]
    fn roots_sorted_and_poles_reported() {
        let scan = find_roots(libm::sin, 0.5, 10.0, 200, 1e-13).unwrap();
        let xs: Vec<f64> = scan.roots.iter().map(|r| r.x).collect();
        assert_eq!(xs.len(), 3);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        // 1/(x−1) has a pole on a node: the neighbouring intervals are flagged, no root reported.
        let scan = find_roots(|x| 1.0 / (x - 1.0), 0.0, 2.0, 3, 1e-12).unwrap();
        assert!(scan.roots.is_empty());
        assert_eq!(scan.non_finite.len(), 2);
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(find_roots(|x| x, 1.0, 0.0, 10, 1e-12).is_err());
        assert!(Bracket::new(0.0, 1.0, 1.0, 1.0).is_none());
    }
}
