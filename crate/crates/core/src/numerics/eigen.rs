//! Dense real symmetric eigensolver: Householder tridiagonalization
//! followed by the implicit QL algorithm with Wilkinson-type shifts.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::NumericsConfig;
use crate::error::{Error, Result};

const OP: &str = "numerics::symmetric_eigs";

/// Eigen-decomposition `A = V diag(λ) Vᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub dim: usize,
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Row-major `dim × dim`; column `k` is the eigenvector of `values[k]`.
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.vectors[i * self.dim + k]).collect()
    }
}

/// Diagonalizes the row-major symmetric `dim × dim` matrix `a`.
pub fn symmetric_eigs(a: &[f64], dim: usize) -> Result<SymmetricEigen> {
    let cfg = NumericsConfig::default();
    if a.len() != dim * dim {
        return Err(Error::invalid(OP, alloc::format!("{} entries for dim {dim}", a.len())));
    }
    if dim > cfg.eig_max_dim {
        return Err(Error::invalid(
            OP,
            alloc::format!("dimension {dim} exceeds maximum {}", cfg.eig_max_dim),
        ));
    }
    if dim == 0 {
        return Ok(SymmetricEigen { dim, values: Vec::new(), vectors: Vec::new() });
    }
    let scale = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if !scale.is_finite() {
        return Err(Error::invalid(OP, "non-finite matrix entry"));
    }
    for i in 0..dim {
        for j in 0..i {
            if (a[i * dim + j] - a[j * dim + i]).abs() > cfg.eig_symmetry_tol * scale {
                return Err(Error::invalid(OP, alloc::format!("asymmetric at ({i}, {j})")));
            }
        }
    }

    let mut v = a.to_vec();
    let mut d = vec![0.0; dim];
    let mut e = vec![0.0; dim];
    tridiagonalize(&mut v, &mut d, &mut e, dim);
    implicit_ql(&mut v, &mut d, &mut e, dim, cfg.eig_max_sweeps)?;

    Ok(sorted(dim, &d, &v))
}

/// Diagonalizes the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i + 1`).
pub fn tridiagonal_eigs(diag: &[f64], off: &[f64]) -> Result<SymmetricEigen> {
    const OP_TRI: &str = "numerics::tridiagonal_eigs";
    let cfg = NumericsConfig::default();
    let dim = diag.len();
    if dim == 0 || off.len() + 1 != dim {
        return Err(Error::invalid(OP_TRI, alloc::format!("{} diagonal and {} off-diagonal entries", dim, off.len())));
    }
    if diag.iter().chain(off).any(|x| !x.is_finite()) {
        return Err(Error::invalid(OP_TRI, "non-finite matrix entry"));
    }
    let mut v = vec![0.0; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = 1.0;
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; dim];
    e[1..].copy_from_slice(off);
    implicit_ql(&mut v, &mut d, &mut e, dim, cfg.eig_max_sweeps)?;
    Ok(sorted(dim, &d, &v))
}

fn sorted(dim: usize, d: &[f64], v: &[f64]) -> SymmetricEigen {
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&x, &y| d[x].total_cmp(&d[y]));
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (new, &old) in order.iter().enumerate() {
        for i in 0..dim {
            vectors[i * dim + new] = v[i * dim + old];
        }
    }
    SymmetricEigen { dim, values, vectors }
}

/// Householder reduction to tridiagonal form; `v` is overwritten by the
/// accumulated orthogonal transform, `d` and `e` receive the diagonal and
/// sub-diagonal (`e[0] = 0`).
fn tridiagonalize(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = libm::sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

fn implicit_ql(
    v: &mut [f64],
    d: &mut [f64],
    e: &mut [f64],
    n: usize,
    max_sweeps: usize,
) -> Result<()> {
    let at = |i: usize, j: usize| i * n + j;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1 = 0.0_f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::NonConvergence { op: OP, iterations: max_sweeps });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in l + 2..n {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[at(k, i + 1)];
                        v[at(k, i + 1)] = s * v[at(k, i)] + c * h;
                        v[at(k, i)] = c * v[at(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
