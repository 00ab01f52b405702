use core::fmt;

use crate::error::{Error, Result};

/// Parameters of `H = ω a†a + g σ_x (a + a†) + ½ Δ σ_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiParams {
    pub omega: f64,
    pub g: f64,
    /// Qubit splitting `Δ` (the σ_z term is `½Δσ_z`).
    pub delta: f64,
}

impl RabiParams {
    pub fn new(omega: f64, g: f64, delta: f64) -> Result<Self> {
        let p = Self { omega, g, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.omega.is_finite()
            && self.omega > 0.0
            && self.g.is_finite()
            && self.g >= 0.0
            && self.delta.is_finite()
            && self.delta >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(
                "rabi_braak::RabiParams",
                alloc::format!("need omega > 0, g >= 0, delta >= 0 (got {self:?})"),
            ))
        }
    }

    /// Dimensionless coupling and G-function splitting in units of `ω`.
    pub(crate) fn scaled(&self) -> Scaled {
        Scaled { g: self.g / self.omega, db: 0.5 * self.delta / self.omega }
    }

    /// All three energies multiplied by `lambda`.
    pub fn rescaled(&self, lambda: f64) -> Self {
        Self { omega: self.omega * lambda, g: self.g * lambda, delta: self.delta * lambda }
    }
}

/// `g/ω` and `Δ/(2ω)`: the only combinations the G-function sees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub g: f64,
    pub db: f64,
}

/// Eigenvalue of `σ_z ⊗ (−1)^{a†a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    pub const BOTH: [Parity; 2] = [Parity::Plus, Parity::Minus];
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        })
    }
}

impl core::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "+1" => Ok(Parity::Plus),
            "-" | "minus" | "-1" => Ok(Parity::Minus),
            other => Err(Error::invalid("rabi_braak::Parity", alloc::format!("unknown parity {other:?}"))),
        }
    }
}
