//! Definition-level entanglement moments of discrete measured-state ensembles.
//!
//! A pure state `|Ψ⟩ = Σᵢ |ψᵢ⟩ ⊗ |i⟩` is stored as a [`WeightedStateSet`]:
//! weights `wᵢ = ⟨ψᵢ|ψᵢ⟩` and the normalized conditional states `|ψ̃ᵢ⟩` of
//! system A. The n-th moment is
//!
//! ```text
//! C²₍ₙ₎ = 𝒩ₙ Σᵢⱼ wᵢ wⱼ (1 − |⟨ψ̃ᵢ|ψ̃ⱼ⟩|^{2n})
//! ```
//!
//! These routines are the reference every expansion module is checked against.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{binomial_f64, pairwise_sum};

const SUM_TOL: f64 = 1e-12;
const DROP_BELOW: f64 = 1e-15;
/// Largest order accepted by [`normalization`].
pub const MAX_ORDER: usize = 500;

/// Ensemble of conditional states of system A with their probabilities.
///
/// Atoms are kept in a canonical order (descending weight, then components)
/// so that every sum over atoms is independent of the input order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedStateSet {
    dim: usize,
    weights: Vec<f64>,
    vectors: Vec<Vec<Complex64>>,
}

impl WeightedStateSet {
    /// Builds a set from `(weight, unit vector)` pairs.
    ///
    /// Weights must be non-negative and sum to one within `1e-12`; vectors
    /// must have length `dim` and unit norm within `1e-12`.
    pub fn new(dim: usize, atoms: Vec<(f64, Vec<Complex64>)>) -> Result<Self> {
        Self::with_tolerance(dim, atoms, SUM_TOL)
    }

    /// Like [`new`](Self::new) but accepts normalization errors up to `tol`
    /// and renormalizes weights and vectors.
    pub fn with_tolerance(dim: usize, atoms: Vec<(f64, Vec<Complex64>)>, tol: f64) -> Result<Self> {
        const OP: &str = "moments_core::WeightedStateSet::new";
        if dim < 2 {
            return Err(Error::invalid(OP, "Hilbert dimension must be at least 2"));
        }
        if atoms.is_empty() {
            return Err(Error::invalid(OP, "empty ensemble"));
        }
        let mut total = 0.0;
        for (i, (w, v)) in atoms.iter().enumerate() {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::invalid(OP, alloc::format!("atom {i}: bad weight {w}")));
            }
            if v.len() != dim {
                return Err(Error::invalid(
                    OP,
                    alloc::format!("atom {i}: vector length {} != dim {dim}", v.len()),
                ));
            }
            let norm = libm::sqrt(norm2(v));
            if !((norm - 1.0).abs() <= tol) {
                return Err(Error::invalid(OP, alloc::format!("atom {i}: norm {norm} != 1")));
            }
            total += w;
        }
        if !((total - 1.0).abs() <= tol) {
            return Err(Error::invalid(OP, alloc::format!("weights sum to {total}")));
        }
        // Sorted so the rescaling does not depend on atom order.
        let mut sorted: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        sorted.sort_by(f64::total_cmp);
        let total = pairwise_sum(&sorted);
        let atoms = atoms
            .into_iter()
            .map(|(w, v)| {
                let n = libm::sqrt(norm2(&v));
                (w / total, v.into_iter().map(|c| c / n).collect())
            })
            .collect();
        Ok(Self::canonical(dim, atoms))
    }

    /// Builds a set from the unnormalized components `|ψᵢ⟩` of
    /// `|Ψ⟩ = Σᵢ |ψᵢ⟩ ⊗ |i⟩`. The overall norm of `|Ψ⟩` is divided out.
    pub fn from_components(dim: usize, components: &[Vec<Complex64>]) -> Result<Self> {
        const OP: &str = "moments_core::WeightedStateSet::from_components";
        if dim < 2 {
            return Err(Error::invalid(OP, "Hilbert dimension must be at least 2"));
        }
        if let Some(bad) = components.iter().position(|c| c.len() != dim) {
            return Err(Error::invalid(OP, alloc::format!("component {bad} has wrong length")));
        }
        let norms: Vec<f64> = components.iter().map(|c| norm2(c)).collect();
        let total = pairwise_sum(&norms);
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::invalid(OP, "state has zero or non-finite norm"));
        }
        let atoms = components
            .iter()
            .zip(&norms)
            .filter(|(_, n)| **n > 0.0)
            .map(|(c, n)| (n / total, c.iter().map(|z| z / libm::sqrt(*n)).collect()))
            .collect();
        Ok(Self::canonical(dim, atoms))
    }

    fn canonical(dim: usize, mut atoms: Vec<(f64, Vec<Complex64>)>) -> Self {
        atoms.sort_by(|a, b| {
            b.0.total_cmp(&a.0).then_with(|| {
                a.1.iter()
                    .zip(&b.1)
                    .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
        });
        atoms.retain(|(w, _)| *w >= DROP_BELOW);
        let kept = pairwise_sum(&atoms.iter().map(|a| a.0).collect::<Vec<_>>());
        for a in &mut atoms {
            a.0 /= kept;
        }
        let (weights, vectors) = atoms.into_iter().unzip();
        Self { dim, weights, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Applies the same unitary (row-major `dim × dim`) to every atom.
    pub fn transformed(&self, unitary: &[Complex64]) -> Result<Self> {
        let d = self.dim;
        if unitary.len() != d * d {
            return Err(Error::invalid("moments_core::transformed", "unitary has wrong size"));
        }
        let atoms = self
            .weights
            .iter()
            .zip(&self.vectors)
            .map(|(w, v)| {
                let u: Vec<Complex64> =
                    (0..d).map(|i| (0..d).map(|j| unitary[i * d + j] * v[j]).sum()).collect();
                (*w, u)
            })
            .collect();
        Self::with_tolerance(d, atoms, 1e-10)
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Hermitian overlap matrix `Gᵢⱼ = ⟨ψ̃ᵢ|ψ̃ⱼ⟩`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub size: usize,
    pub entries: Vec<Complex64>,
}

impl GramMatrix {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.size + j]
    }

    /// `|Gᵢⱼ|²` clamped to `[0, 1]`, row-major.
    pub fn abs_sqr(&self) -> Vec<f64> {
        self.entries.iter().map(|g| g.norm_sqr().min(1.0)).collect()
    }
}

pub fn gram(set: &WeightedStateSet) -> GramMatrix {
    let n = set.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        entries[i * n + i] = Complex64::new(1.0, 0.0);
        for j in 0..i {
            let g: Complex64 =
                set.vectors[i].iter().zip(&set.vectors[j]).map(|(a, b)| a.conj() * b).sum();
            entries[i * n + j] = g;
            entries[j * n + i] = g.conj();
        }
    }
    GramMatrix { size: n, entries }
}

/// Normalization convention for the prefactor `𝒩ₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Great circle `S¹`: `𝒩ₙ = 2^{2n} / (2^{2n} − C(2n, n))`.
    Circle,
    /// `ℂP^{N−1}`: `𝒩ₙ = C(n+N−1, n) / (C(n+N−1, n) − 1)`.
    Cpn,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Circle => "circle",
            Normalization::Cpn => "cpn",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circle" => Ok(Normalization::Circle),
            "cpn" => Ok(Normalization::Cpn),
            other => Err(Error::invalid(
                "moments_core::normalization",
                alloc::format!("unknown normalization tag {other:?} (expected circle or cpn)"),
            )),
        }
    }
}

/// `C(2n, n) / 2^{2n}` as a running product.
pub(crate) fn central_binomial_ratio(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * (2 * j - 1) as f64 / (2 * j) as f64)
}

/// The prefactor `𝒩ₙ` that maps the maximal moment to one.
pub fn normalization(space: Normalization, n: usize, dim: usize) -> Result<f64> {
    const OP: &str = "moments_core::normalization";
    if n == 0 {
        return Err(Error::domain(OP, "moment order must be at least 1"));
    }
    if n > MAX_ORDER {
        return Err(Error::overflow(OP, alloc::format!("order {n} exceeds {MAX_ORDER}")));
    }
    match space {
        Normalization::Circle => Ok(1.0 / (1.0 - central_binomial_ratio(n))),
        Normalization::Cpn => {
            if dim < 2 {
                return Err(Error::domain(OP, "dimension must be at least 2"));
            }
            let b = binomial_f64((n + dim - 1) as u64, n as u64);
            if !b.is_finite() {
                return Err(Error::overflow(OP, "binomial coefficient not representable"));
            }
            Ok(b / (b - 1.0))
        }
    }
}

/// `Σᵢⱼ wᵢ wⱼ (1 − qᵢⱼⁿ)` for squared overlaps `qᵢⱼ = |Gᵢⱼ|²` (row-major).
///
/// Terms are accumulated row-major with pairwise summation.
pub fn pair_distance_sum(weights: &[f64], overlap_sqr: &[f64], n: usize) -> f64 {
    let m = weights.len();
    debug_assert_eq!(overlap_sqr.len(), m * m);
    let mut terms = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let q = overlap_sqr[i * m + j].clamp(0.0, 1.0);
            terms.push(weights[i] * weights[j] * (1.0 - libm::pow(q, n as f64)));
        }
    }
    pairwise_sum(&terms)
}

/// The n-th entanglement moment from its definition.
pub fn direct_moment(set: &WeightedStateSet, n: usize, space: Normalization) -> Result<f64> {
    let norm = normalization(space, n, set.dim())?;
    let q = gram(set).abs_sqr();
    Ok(norm * pair_distance_sum(set.weights(), &q, n))
}

/// Moments for every order in `orders`, sharing one Gram matrix.
pub fn direct_moments(
    set: &WeightedStateSet,
    orders: &[usize],
    space: Normalization,
) -> Result<MomentCurve> {
    let q = gram(set).abs_sqr();
    let values = orders
        .iter()
        .map(|&n| Ok(normalization(space, n, set.dim())? * pair_distance_sum(set.weights(), &q, n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentCurve { orders: orders.to_vec(), values, convention: space })
}

/// I-concurrence `𝒩₁ (1 − tr ϱ_A²)` with `𝒩₁ = N/(N−1)`.
pub fn i_concurrence(set: &WeightedStateSet) -> f64 {
    let d = set.dim();
    let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
    for (w, v) in set.weights().iter().zip(set.vectors()) {
        for i in 0..d {
            for j in 0..d {
                rho[i * d + j] += v[i] * v[j].conj() * *w;
            }
        }
    }
    let purity = pairwise_sum(&rho.iter().map(|c| c.norm_sqr()).collect::<Vec<_>>());
    let dim = d as f64;
    dim / (dim - 1.0) * (1.0 - purity)
}

/// Moment values against their orders.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCurve {
    pub orders: Vec<usize>,
    pub values: Vec<f64>,
    pub convention: Normalization,
}

impl MomentCurve {
    /// Orders whose value leaves `[−1e−10, 1 + 1e−10]`.
    pub fn out_of_range(&self) -> Vec<usize> {
        self.orders
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !(-1e-10..=1.0 + 1e-10).contains(*v))
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn value(&self, n: usize) -> Option<f64> {
        self.orders.iter().position(|&m| m == n).map(|i| self.values[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{random_set, random_unitary};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qubit_pair(w: f64) -> WeightedStateSet {
        WeightedStateSet::new(2, vec![(w, vec![c(1.0, 0.0), c(0.0, 0.0)]), (1.0 - w, vec![c(0.0, 0.0), c(1.0, 0.0)])])
            .unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = gram(&qubit_pair(0.5));
        assert_eq!(g.get(0, 1), c(0.0, 0.0));
        let dup = WeightedStateSet::new(2, vec![(0.5, vec![c(1.0, 0.0), c(0.0, 0.0)]); 2]).unwrap();
        assert!(gram(&dup).entries.iter().all(|z| *z == c(1.0, 0.0)));
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let mixed = WeightedStateSet::new(
            2,
            vec![(0.5, vec![c(1.0, 0.0), c(0.0, 0.0)]), (0.5, vec![c(s, 0.0), c(s, 0.0)])],
        )
        .unwrap();
        assert!((gram(&mixed).get(0, 1).norm() - s).abs() < 1e-15);
    }

    #[test]
    fn moment_examples() {
        let single = WeightedStateSet::new(2, vec![(1.0, vec![c(0.6, 0.0), c(0.0, 0.8)])]).unwrap();
        for n in 1..10 {
            assert_eq!(direct_moment(&single, n, Normalization::Cpn).unwrap(), 0.0);
        }
        let pair = qubit_pair(0.5);
        assert!((direct_moment(&pair, 1, Normalization::Cpn).unwrap() - 1.0).abs() < 1e-15);
        assert!((direct_moment(&pair, 2, Normalization::Cpn).unwrap() - 0.75).abs() < 1e-15);
        // closed form (n+1)/(2n) tends to 1/2
        let big = direct_moment(&pair, 400, Normalization::Cpn).unwrap();
        assert!((big - 401.0 / 800.0).abs() < 1e-14);
        assert!((direct_moment(&pair, 2, Normalization::Circle).unwrap() - 0.8).abs() < 1e-15);
        assert!(direct_moment(&pair, 0, Normalization::Cpn).is_err());
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization(Normalization::Circle, 1, 2).unwrap(), 2.0);
        for n in 1..40 {
            let expect = (n as f64 + 1.0) / n as f64;
            assert!((normalization(Normalization::Cpn, n, 2).unwrap() - expect).abs() < 1e-15);
        }
        assert!((normalization(Normalization::Cpn, 1, 3).unwrap() - 1.5).abs() < 1e-15);
        // 𝒩₂[S¹] = 16/(16 − 6)
        assert!((normalization(Normalization::Circle, 2, 2).unwrap() - 1.6).abs() < 1e-15);
        assert!(normalization(Normalization::Circle, 501, 2).is_err());
        assert!(normalization(Normalization::Cpn, 3, 1).is_err());
        assert!("sphere".parse::<Normalization>().is_err());
        assert_eq!("cpn".parse::<Normalization>().unwrap(), Normalization::Cpn);
    }

    #[test]
    fn i_concurrence_examples() {
        let single = WeightedStateSet::new(2, vec![(1.0, vec![c(1.0, 0.0), c(0.0, 0.0)])]).unwrap();
        assert!(i_concurrence(&single).abs() < 1e-15);
        assert!((i_concurrence(&qubit_pair(0.8)) - 0.64).abs() < 1e-15);
        for d in 2..7 {
            let atoms = (0..d)
                .map(|k| {
                    let mut v = vec![c(0.0, 0.0); d];
                    v[k] = c(1.0, 0.0);
                    (1.0 / d as f64, v)
                })
                .collect();
            let set = WeightedStateSet::new(d, atoms).unwrap();
            assert!((i_concurrence(&set) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn construction_errors_and_dropping() {
        assert!(WeightedStateSet::new(2, vec![(0.7, vec![c(1.0, 0.0), c(0.0, 0.0)])]).is_err());
        assert!(WeightedStateSet::new(2, vec![(1.0, vec![c(1.0, 0.0), c(1.0, 0.0)])]).is_err());
        assert!(WeightedStateSet::new(2, vec![(1.0, vec![c(1.0, 0.0)])]).is_err());
        assert!(WeightedStateSet::new(1, vec![(1.0, vec![c(1.0, 0.0)])]).is_err());
        let tiny = WeightedStateSet::new(
            2,
            vec![(1.0 - 1e-16, vec![c(1.0, 0.0), c(0.0, 0.0)]), (1e-16, vec![c(0.0, 0.0), c(1.0, 0.0)])],
        )
        .unwrap();
        assert_eq!(tiny.len(), 1);
        let comp = WeightedStateSet::from_components(
            2,
            &[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]],
        )
        .unwrap();
        assert_eq!(comp.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn monotone_in_overlap() {
        let weights = [0.2, 0.3, 0.5];
        let base = [1.0, 0.4, 0.1, 0.4, 1.0, 0.7, 0.1, 0.7, 1.0];
        for n in 1..8 {
            let s0 = pair_distance_sum(&weights, &base, n);
            let mut larger = base;
            larger[1] = 0.9;
            larger[3] = 0.9;
            assert!(pair_distance_sum(&weights, &larger, n) <= s0);
        }
    }

    #[test]
    fn out_of_range_flags_circle_convention_on_qutrits() {
        let atoms = (0..3)
            .map(|k| {
                let mut v = vec![c(0.0, 0.0); 3];
                v[k] = c(1.0, 0.0);
                (1.0 / 3.0, v)
            })
            .collect();
        let set = WeightedStateSet::new(3, atoms).unwrap();
        let curve = direct_moments(&set, &[1, 2], Normalization::Circle).unwrap();
        assert_eq!(curve.out_of_range(), vec![1, 2]);
        let curve = direct_moments(&set, &[1, 2, 3], Normalization::Cpn).unwrap();
        assert!(curve.out_of_range().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn first_moment_is_i_concurrence(seed in any::<u64>(), dim in 2usize..=6, atoms in 1usize..=20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let set = random_set(&mut rng, dim, atoms);
            let d = direct_moment(&set, 1, Normalization::Cpn).unwrap();
            prop_assert!((d - i_concurrence(&set)).abs() <= 1e-12);
        }

        #[test]
        fn first_moment_unitary_invariant(seed in any::<u64>(), dim in 2usize..=5, atoms in 1usize..=12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let set = random_set(&mut rng, dim, atoms);
            let u = random_unitary(&mut rng, dim);
            let rotated = set.transformed(&u).unwrap();
            for space in [Normalization::Cpn, Normalization::Circle] {
                let a = direct_moment(&set, 1, space).unwrap();
                let b = direct_moment(&rotated, 1, space).unwrap();
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }

        #[test]
        fn permutation_invariant_bitwise(seed in any::<u64>(), atoms in 2usize..=15) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let set = random_set(&mut rng, 3, atoms);
            let mut pairs: Vec<(f64, Vec<Complex64>)> =
                set.weights().iter().copied().zip(set.vectors().iter().cloned()).collect();
            let set = WeightedStateSet::new(3, pairs.clone()).unwrap();
            pairs.reverse();
            pairs.rotate_left(seed as usize % atoms);
            let shuffled = WeightedStateSet::new(3, pairs).unwrap();
            for n in 1..6 {
                let a = direct_moment(&set, n, Normalization::Cpn).unwrap();
                let b = direct_moment(&shuffled, n, Normalization::Cpn).unwrap();
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
