//! JSON input schemas.
//!
//! State set: `{"dim": 2, "atoms": [{"weight": 0.5, "vector_re": [1, 0], "vector_im": [0, 0]}]}`
//!
//! Circle distribution: `{"atoms": [{"theta": 0.0, "weight": 1.0}]}` or
//! `{"fourier": {"re": [1.0, 0.3], "im": [0.0, 0.0]}}`
//!
//! Sphere distribution: `{"atoms": [{"x": 0, "y": 0, "z": 1, "w": 1.0}]}`

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use entmoments_core::circle::CircleDistribution;
use entmoments_core::moments::WeightedStateSet;
use entmoments_core::sphere::{SphereAtom, SphereDistribution};

use crate::error::{as_schema, CliError, CliResult};

/// Normalization slack accepted from files (decimal round-off); such
/// sets are renormalized on load.
pub const LOAD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSetFile {
    pub dim: usize,
    pub atoms: Vec<StateAtomFile>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateAtomFile {
    pub weight: f64,
    pub vector_re: Vec<f64>,
    pub vector_im: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleAtomFile {
    pub theta: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierFile {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleFile {
    #[serde(default)]
    pub atoms: Option<Vec<CircleAtomFile>>,
    #[serde(default)]
    pub fourier: Option<FourierFile>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereAtomFile {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereFile {
    pub atoms: Vec<SphereAtomFile>,
}

fn read_json<T: for<'de> Deserialize<'de>>(op: &'static str, path: &Path) -> CliResult<T> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::schema(op, format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::schema(op, format!("{}: {e}", path.display())))
}

impl StateSetFile {
    pub fn into_set(self) -> CliResult<WeightedStateSet> {
        const OP: &str = "cli::read_state_set";
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (i, a) in self.atoms.into_iter().enumerate() {
            if a.vector_re.len() != self.dim || a.vector_im.len() != self.dim {
                return Err(CliError::schema(
                    OP,
                    format!("atom {i}: vectors of length {}/{} for dim {}", a.vector_re.len(), a.vector_im.len(), self.dim),
                ));
            }
            let v = a.vector_re.iter().zip(&a.vector_im).map(|(re, im)| Complex64::new(*re, *im)).collect();
            atoms.push((a.weight, v));
        }
        WeightedStateSet::with_tolerance(self.dim, atoms, LOAD_TOL).map_err(as_schema)
    }
}

pub fn read_state_set(path: &Path) -> CliResult<WeightedStateSet> {
    read_json::<StateSetFile>("cli::read_state_set", path)?.into_set()
}

pub fn read_circle(path: &Path) -> CliResult<CircleDistribution> {
    const OP: &str = "cli::read_circle";
    let file: CircleFile = read_json(OP, path)?;
    match (file.atoms, file.fourier) {
        (Some(atoms), None) => {
            let pairs: Vec<(f64, f64)> = atoms.iter().map(|a| (a.theta, a.weight)).collect();
            CircleDistribution::from_atoms(&pairs).map_err(as_schema)
        }
        (None, Some(f)) => {
            if f.re.len() != f.im.len() {
                return Err(CliError::schema(OP, "fourier re/im lengths differ"));
            }
            let coeffs = f.re.iter().zip(&f.im).map(|(re, im)| Complex64::new(*re, *im)).collect();
            CircleDistribution::from_fourier(coeffs).map_err(as_schema)
        }
        _ => Err(CliError::schema(OP, "exactly one of \"atoms\" or \"fourier\" is required")),
    }
}

pub fn read_sphere(path: &Path) -> CliResult<SphereDistribution> {
    let file: SphereFile = read_json("cli::read_sphere", path)?;
    let atoms = file.atoms.iter().map(|a| SphereAtom { n: [a.x, a.y, a.z], weight: a.w }).collect();
    SphereDistribution::new(atoms, None).map_err(as_schema)
}
