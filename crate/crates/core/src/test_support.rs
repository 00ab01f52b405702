use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::moments::WeightedStateSet;

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen_range(0.0..1.0);
    libm::sqrt(-2.0 * libm::log(u)) * libm::cos(2.0 * core::f64::consts::PI * v)
}

pub fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..dim).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect();
    let n = libm::sqrt(v.iter().map(|c| c.norm_sqr()).sum());
    v.into_iter().map(|c| c / n).collect()
}

pub fn random_set(rng: &mut impl Rng, dim: usize, atoms: usize) -> WeightedStateSet {
    let components: Vec<Vec<Complex64>> = (0..atoms)
        .map(|_| {
            let scale: f64 = rng.gen_range(0.05..1.0);
            random_unit_vector(rng, dim).into_iter().map(|c| c * scale).collect()
        })
        .collect();
    WeightedStateSet::from_components(dim, &components).unwrap()
}

/// Haar-like unitary from Gram–Schmidt on Gaussian columns, row-major.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < dim {
        let mut v = random_unit_vector(rng, dim);
        for c in &cols {
            let p: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= p * y;
            }
        }
        let n = libm::sqrt(v.iter().map(|c| c.norm_sqr()).sum());
        if n > 1e-6 {
            cols.push(v.into_iter().map(|c| c / n).collect());
        }
    }
    let mut u = alloc::vec![Complex64::new(0.0, 0.0); dim * dim];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..dim {
            u[i * dim + j] = c[i];
        }
    }
    u
}
