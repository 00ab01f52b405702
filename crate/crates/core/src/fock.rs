//! Brute-force reference for the Rabi model: truncated Fock-space
//! diagonalization and moments computed straight from the eigenvectors.
//!
//! Nothing here touches the G-function; it exists to check it.

use alloc::vec;
use alloc::vec::Vec;

use crate::circle::{circle_moment_bruteforce, DEFAULT_QUADRATURE};
use crate::config::RabiConfig;
use crate::error::{Error, Result};
use crate::moments::MomentCurve;
use crate::numerics::{pairwise_sum, tridiagonal_eigs};
use crate::rabi::{moments_from_state, qubit_i_concurrence, theta_atoms, FockState, Level, Parity, RabiParams};

/// Smallest accepted Fock cutoff.
pub const MIN_TRUNCATION: usize = 8;
/// Energy change allowed when the cutoff is doubled.
pub const CERTIFY_TOL: f64 = 1e-8;

/// `H = ω a†a + g σ_x (a + a†) + ½ Δ σ_z` on `n < n_trunc`, row-major,
/// basis index `2n + s` with `s = 0` for ↑ and `s = 1` for ↓.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedHamiltonian {
    pub n_trunc: usize,
    pub matrix: Vec<f64>,
}

impl TruncatedHamiltonian {
    pub fn dim(&self) -> usize {
        2 * self.n_trunc
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.dim() + j]
    }
}

fn check_truncation(op: &'static str, n_trunc: usize) -> Result<()> {
    if n_trunc < MIN_TRUNCATION {
        return Err(Error::invalid(op, alloc::format!("n_trunc = {n_trunc} < {MIN_TRUNCATION}")));
    }
    Ok(())
}

pub fn build_hamiltonian(p: &RabiParams, n_trunc: usize) -> Result<TruncatedHamiltonian> {
    check_truncation("fock_oracle::build_hamiltonian", n_trunc)?;
    p.validate()?;
    let dim = 2 * n_trunc;
    let mut matrix = vec![0.0; dim * dim];
    let half = 0.5 * p.delta;
    for n in 0..n_trunc {
        let nf = n as f64 * p.omega;
        matrix[(2 * n) * dim + 2 * n] = nf + half;
        matrix[(2 * n + 1) * dim + 2 * n + 1] = nf - half;
        if n + 1 < n_trunc {
            let c = p.g * libm::sqrt((n + 1) as f64);
            for s in 0..2 {
                let i = 2 * n + s;
                let j = 2 * (n + 1) + (1 - s);
                matrix[i * dim + j] = c;
                matrix[j * dim + i] = c;
            }
        }
    }
    Ok(TruncatedHamiltonian { n_trunc, matrix })
}

/// Spin of Fock index `k` in parity sector `s`: ↑ when `(−1)^k = s`.
fn is_up(k: usize, parity: Parity) -> bool {
    (k % 2 == 0) == (parity == Parity::Plus)
}

/// The parity-`s` block of the Hamiltonian: a chain `|0,·⟩ − |1,·⟩ − …`
/// with diagonal `kω ± Δ/2` and hopping `g√(k+1)`.
pub fn parity_block(p: &RabiParams, parity: Parity, n_trunc: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..n_trunc)
        .map(|k| {
            let spin = if is_up(k, parity) { 0.5 } else { -0.5 };
            k as f64 * p.omega + spin * p.delta
        })
        .collect();
    let off = (0..n_trunc.saturating_sub(1)).map(|k| p.g * libm::sqrt((k + 1) as f64)).collect();
    (diag, off)
}

/// One eigenpair of the truncated Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleLevel {
    pub energy: f64,
    pub parity: Parity,
    /// Position among the levels of this parity.
    pub index: usize,
    pub state: FockState,
}

fn block_levels(p: &RabiParams, parity: Parity, n_trunc: usize, count: usize) -> Result<Vec<OracleLevel>> {
    let (diag, off) = parity_block(p, parity, n_trunc);
    let eig = tridiagonal_eigs(&diag, &off)?;
    Ok((0..count.min(n_trunc))
        .map(|index| {
            let v = eig.vector(index);
            let mut up = vec![0.0; n_trunc];
            let mut down = vec![0.0; n_trunc];
            for (k, x) in v.into_iter().enumerate() {
                if is_up(k, parity) {
                    up[k] = x;
                } else {
                    down[k] = x;
                }
            }
            let mut state = FockState { up, down };
            state.normalize();
            OracleLevel { energy: eig.values[index], parity, index, state }
        })
        .collect())
}

fn block_energies(p: &RabiParams, parity: Parity, n_trunc: usize) -> Result<Vec<f64>> {
    let (diag, off) = parity_block(p, parity, n_trunc);
    Ok(tridiagonal_eigs(&diag, &off)?.values)
}

/// The lowest `n_levels` levels of each parity, certified against a doubled
/// cutoff. Returned sorted by energy (ties: `+` first).
pub fn oracle_eigs(p: &RabiParams, n_trunc: usize, n_levels: usize) -> Result<Vec<OracleLevel>> {
    const OP: &str = "fock_oracle::oracle_eigs";
    check_truncation(OP, n_trunc)?;
    p.validate()?;
    if n_levels > n_trunc / 2 {
        return Err(Error::invalid(OP, alloc::format!("{n_levels} levels from cutoff {n_trunc}")));
    }
    let mut out = Vec::with_capacity(2 * n_levels);
    for parity in Parity::BOTH {
        let levels = block_levels(p, parity, n_trunc, n_levels)?;
        let reference = block_energies(p, parity, 2 * n_trunc)?;
        for l in &levels {
            let change = (l.energy - reference[l.index]).abs();
            if !(change <= CERTIFY_TOL) {
                return Err(Error::truncation(
                    OP,
                    alloc::format!(
                        "level {}{} moves by {change:.3e} when n_trunc doubles from {n_trunc}",
                        l.index,
                        parity
                    ),
                ));
            }
        }
        out.extend(levels);
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.parity.cmp(&b.parity)));
    Ok(out)
}

/// The eigenpair selected by `level`.
pub fn oracle_level(p: &RabiParams, level: Level, n_trunc: usize) -> Result<OracleLevel> {
    let (parity, k) = match level {
        Level::Global(k) => (None, k),
        Level::InParity(parity, k) => (Some(parity), k),
    };
    let levels = oracle_eigs(p, n_trunc, k + 1)?;
    let found = match parity {
        None => levels.into_iter().nth(k),
        Some(s) => levels.into_iter().find(|l| l.parity == s && l.index == k),
    };
    found.ok_or_else(|| Error::invalid("fock_oracle::oracle_level", "level not found"))
}

/// Moments of a diagonalization eigenvector, with two independent checks.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMoments {
    pub level: OracleLevel,
    pub curve: MomentCurve,
    /// `C²₍₁₎` and `C²₍₂₎` from the exact double sum over the grid points.
    pub bruteforce: [f64; 2],
    /// `2(1 − tr ρ²)` of the reduced qubit state.
    pub i_concurrence: f64,
}

pub fn oracle_moments(
    p: &RabiParams,
    level: Level,
    orders: &[usize],
    n_trunc: usize,
    cfg: &RabiConfig,
) -> Result<OracleMoments> {
    let level = oracle_level(p, level, n_trunc)?;
    let (curve, _, grid) = moments_from_state(&level.state, p, orders, cfg)?;
    let atoms = theta_atoms(&grid)?;
    let bruteforce = [
        circle_moment_bruteforce(&atoms, 1, DEFAULT_QUADRATURE)?,
        circle_moment_bruteforce(&atoms, 2, DEFAULT_QUADRATURE)?,
    ];
    let i_concurrence = qubit_i_concurrence(&level.state);
    Ok(OracleMoments { level, curve, bruteforce, i_concurrence })
}

/// `⟨φ|P|φ⟩ = Σ (−1)^k φ_k² / Σ φ_k²` for oscillator amplitudes `φ`.
pub fn parity_expectation(coeffs: &[f64]) -> f64 {
    let signed: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { c * c } else { -c * c })
        .collect();
    let total: Vec<f64> = coeffs.iter().map(|c| c * c).collect();
    pairwise_sum(&signed) / pairwise_sum(&total)
}

/// `D(α)|n⟩ = exp(α(a† − a))|n⟩` by a Taylor series of the generator with
/// scaling, in a Fock space enlarged beyond `dim` and then cut back.
pub fn displaced_number_state(alpha: f64, n: usize, dim: usize) -> Result<Vec<f64>> {
    const OP: &str = "fock_oracle::displaced_number_state";
    if !alpha.is_finite() || n >= dim {
        return Err(Error::invalid(OP, alloc::format!("alpha = {alpha}, n = {n}, dim = {dim}")));
    }
    let ext = dim + 64 + libm::ceil(8.0 * alpha * alpha) as usize;
    let steps = libm::ceil(2.0 * alpha.abs() * libm::sqrt(ext as f64)).max(1.0) as usize;
    let a = alpha / steps as f64;
    let sq: Vec<f64> = (0..ext).map(|k| libm::sqrt(k as f64)).collect();
    // (a† − a) v: component k gets √k v_{k−1} − √(k+1) v_{k+1}.
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..ext)
            .map(|k| {
                let raise = if k > 0 { sq[k] * v[k - 1] } else { 0.0 };
                let lower = if k + 1 < ext { sq[k + 1] * v[k + 1] } else { 0.0 };
                a * (raise - lower)
            })
            .collect()
    };
    let mut v = vec![0.0; ext];
    v[n] = 1.0;
    for _ in 0..steps {
        let mut term = v.clone();
        let mut sum = v.clone();
        for j in 1..200 {
            term = apply(&term).into_iter().map(|t| t / j as f64).collect();
            let size = term.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
            if size < 1e-18 {
                break;
            }
        }
        v = sum;
    }
    let tail = v[dim..].iter().fold(0.0_f64, |m, t| m.max(t.abs()));
    if tail > 1e-12 {
        return Err(Error::truncation(OP, alloc::format!("amplitude {tail:.3e} beyond dim {dim}")));
    }
    v.truncate(dim);
    Ok(v)
}

/// `⟨n|D(α)† P D(α)|n⟩` from the numerically displaced state.
pub fn displaced_parity_oracle(n: usize, alpha: f64, n_trunc: usize) -> Result<f64> {
    Ok(parity_expectation(&displaced_number_state(alpha, n, n_trunc)?))
}
