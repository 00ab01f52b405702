//! Seeded random ensembles for self-checks and tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use entmoments_core::moments::WeightedStateSet;

/// Unit vector with independent Gaussian real and imaginary parts.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// `atoms` random states of `ℂ^dim` with weights drawn from `[0.05, 1)`.
pub fn random_state_set<R: Rng + ?Sized>(rng: &mut R, dim: usize, atoms: usize) -> WeightedStateSet {
    let components: Vec<Vec<Complex64>> = (0..atoms)
        .map(|_| {
            let scale = rng.gen_range(0.05_f64..1.0).sqrt();
            random_unit_vector(rng, dim).into_iter().map(|z| z * scale).collect()
        })
        .collect();
    WeightedStateSet::from_components(dim, &components).expect("random components are valid")
}
