//! Moments of qubit ensembles on the Bloch sphere.
//!
//! The sphere moment depends on the distribution only through the harmonic
//! occupancies `Λ_l = 4π Σ_m |∫ρ Y*_{lm}|²`, which are evaluated with the
//! Legendre addition theorem rather than explicit spherical harmonics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::moments::{normalization, Normalization, WeightedStateSet};
use crate::numerics::{legendre_all, pairwise_sum};

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereAtom {
    /// Unit vector.
    pub n: [f64; 3],
    pub weight: f64,
}

/// Axially symmetric continuous part, `a_l = ∫ρ_c(n) P_l(n·ẑ) dn`.
///
/// `a_0` is the mass carried by the profile. Coefficients beyond
/// `coeffs.len()` are zero up to `valid_to`; `None` means exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AxialProfile {
    pub coeffs: Vec<f64>,
    pub valid_to: Option<usize>,
}

impl AxialProfile {
    fn coefficient(&self, l: usize) -> Result<f64> {
        if let Some(max) = self.valid_to {
            if l > max {
                return Err(Error::InsufficientOrder { op: "moments_sphere::occupancy", needed: l, available: max });
            }
        }
        Ok(self.coeffs.get(l).copied().unwrap_or(0.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereDistribution {
    atoms: Vec<SphereAtom>,
    axial: Option<AxialProfile>,
}

impl SphereDistribution {
    /// Validates a distribution whose atom weights plus profile mass sum to one.
    pub fn new(atoms: Vec<SphereAtom>, axial: Option<AxialProfile>) -> Result<Self> {
        const OP: &str = "moments_sphere::SphereDistribution::new";
        let mut mass = axial.as_ref().map_or(0.0, |p| p.coeffs.first().copied().unwrap_or(0.0));
        let mut out = Vec::with_capacity(atoms.len());
        for (i, a) in atoms.into_iter().enumerate() {
            let len = libm::sqrt(a.n.iter().map(|x| x * x).sum());
            if !(a.weight >= 0.0 && a.weight.is_finite()) || !((len - 1.0).abs() <= TOL) {
                return Err(Error::invalid(OP, alloc::format!("atom {i}: weight {} |n| = {len}", a.weight)));
            }
            mass += a.weight;
            if a.weight > 0.0 {
                out.push(SphereAtom { n: a.n.map(|x| x / len), weight: a.weight });
            }
        }
        if !((mass - 1.0).abs() <= TOL) {
            return Err(Error::invalid(OP, alloc::format!("total mass {mass}")));
        }
        out.sort_by(|a, b| {
            b.weight
                .total_cmp(&a.weight)
                .then(a.n[0].total_cmp(&b.n[0]))
                .then(a.n[1].total_cmp(&b.n[1]))
                .then(a.n[2].total_cmp(&b.n[2]))
        });
        Ok(Self { atoms: out, axial })
    }

    pub fn atoms(&self) -> &[SphereAtom] {
        &self.atoms
    }

    pub fn axial(&self) -> Option<&AxialProfile> {
        self.axial.as_ref()
    }
}

/// `Λ_l` for `l = 0..=l_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicOccupancy {
    pub values: Vec<f64>,
}

impl HarmonicOccupancy {
    pub fn l_max(&self) -> usize {
        self.values.len() - 1
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn occupancy(dist: &SphereDistribution, l_max: usize) -> Result<HarmonicOccupancy> {
    let atoms = &dist.atoms;
    let m = atoms.len();
    let mut pair_terms = vec![Vec::with_capacity(m * m); l_max + 1];
    for a in atoms {
        for b in atoms {
            let p = legendre_all(l_max, dot(&a.n, &b.n));
            for (l, pl) in p.iter().enumerate() {
                pair_terms[l].push(a.weight * b.weight * pl);
            }
        }
    }
    let mut cross_terms = vec![Vec::with_capacity(m); l_max + 1];
    for a in atoms {
        for (l, pl) in legendre_all(l_max, a.n[2]).iter().enumerate() {
            cross_terms[l].push(a.weight * pl);
        }
    }
    let values = (0..=l_max)
        .map(|l| {
            let a_l = match &dist.axial {
                Some(p) => p.coefficient(l)?,
                None => 0.0,
            };
            let total = pairwise_sum(&pair_terms[l]) + 2.0 * a_l * pairwise_sum(&cross_terms[l]) + a_l * a_l;
            Ok((2 * l + 1) as f64 * total)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HarmonicOccupancy { values })
}

/// `C(n, l) / C(n+l+1, n)` for `l = 0..=n` as a running product.
fn sphere_weights(n: usize) -> Vec<f64> {
    let mut r = vec![1.0 / (n + 1) as f64; n + 1];
    for l in 1..=n {
        r[l] = r[l - 1] * (n - l + 1) as f64 / l as f64 * (l + 1) as f64 / (n + l + 1) as f64;
    }
    r
}

/// `C²₍ₙ₎ = 1 − ((n+1)/n) Σ_{l=1..n} [C(n,l)/C(n+l+1,n)] Λ_l/(l+1)`.
pub fn sphere_moment(occ: &HarmonicOccupancy, n: usize) -> Result<f64> {
    let prefactor = normalization(Normalization::Cpn, n, 2)?;
    if occ.values.len() <= n {
        return Err(Error::InsufficientOrder {
            op: "moments_sphere::sphere_moment",
            needed: n,
            available: occ.values.len().saturating_sub(1),
        });
    }
    let r = sphere_weights(n);
    let terms: Vec<f64> = (1..=n).map(|l| r[l] * occ.values[l] / (l + 1) as f64).collect();
    Ok(1.0 - prefactor * pairwise_sum(&terms))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinSphere {
    Uniform,
    /// Weight `a` on the north pole and `1 − a` on the south pole.
    Poles { a: f64 },
    /// Uniform ring on the equator.
    Equator,
}

/// Named distribution; `l_max` bounds the stored ring coefficients.
pub fn builtin_sphere(name: BuiltinSphere, l_max: usize) -> Result<SphereDistribution> {
    match name {
        BuiltinSphere::Uniform => {
            SphereDistribution::new(vec![], Some(AxialProfile { coeffs: vec![1.0], valid_to: None }))
        }
        BuiltinSphere::Poles { a } => {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::domain("moments_sphere::builtin_sphere", alloc::format!("pole weight {a}")));
            }
            SphereDistribution::new(
                vec![
                    SphereAtom { n: [0.0, 0.0, 1.0], weight: a },
                    SphereAtom { n: [0.0, 0.0, -1.0], weight: 1.0 - a },
                ],
                None,
            )
        }
        BuiltinSphere::Equator => {
            let coeffs = legendre_all(l_max, 0.0);
            SphereDistribution::new(vec![], Some(AxialProfile { coeffs, valid_to: Some(l_max) }))
        }
    }
}

/// Bloch vectors of a qubit ensemble; `n̂ᵢ·n̂ⱼ = 2|⟨ψ̃ᵢ|ψ̃ⱼ⟩|² − 1`.
pub fn atoms_from_qubit_set(set: &WeightedStateSet) -> Result<SphereDistribution> {
    if set.dim() != 2 {
        return Err(Error::invalid(
            "moments_sphere::atoms_from_qubit_set",
            alloc::format!("dimension {} is not 2", set.dim()),
        ));
    }
    let atoms = set
        .weights()
        .iter()
        .zip(set.vectors())
        .map(|(w, v)| {
            let cross = v[0].conj() * v[1];
            let n = [2.0 * cross.re, 2.0 * cross.im, v[0].norm_sqr() - v[1].norm_sqr()];
            let len = libm::sqrt(dot(&n, &n));
            SphereAtom { n: n.map(|x| x / len), weight: *w }
        })
        .collect();
    SphereDistribution::new(atoms, None)
}
