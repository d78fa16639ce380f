use super::special::exp_integral_e1;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// One-body potential. Parameters are in atomic units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialModel {
    /// −αx² + βx⁴
    DoubleWell { alpha: f64, beta: f64 },
    /// v0·cos(k0x), period 2π/k0
    Cosine { v0: f64, k0: f64 },
    /// lattice of −(Z·a0/2π)·erf(r0|x|)/|x| sites with the κ = 0 (mean) term removed
    PeriodicErfCoulomb { z: f64, r0: f64, a0: f64 },
    /// ½·stiffness·x²
    Harmonic { stiffness: f64 },
    Free,
}

/// Coefficients below this fraction of the largest are dropped from lattice sums.
pub const COEFF_CUTOFF: f64 = 1e-14;

impl PotentialModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidParameter(s.to_string()));
        match *self {
            Self::DoubleWell { alpha, beta } if !(alpha > 0.0 && beta > 0.0) => {
                bad("double well needs alpha, beta > 0")
            }
            Self::Cosine { v0, k0 } if !(v0.is_finite() && k0 > 0.0) => bad("cosine needs finite v0, k0 > 0"),
            Self::PeriodicErfCoulomb { z, r0, a0 } if !(z.is_finite() && r0 > 0.0 && a0 > 0.0) => {
                bad("erf-Coulomb needs finite Z, r0 > 0, a0 > 0")
            }
            Self::Harmonic { stiffness } if !(stiffness > 0.0) => bad("harmonic needs stiffness > 0"),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::DoubleWell { .. } => "double_well",
            Self::Cosine { .. } => "cosine",
            Self::PeriodicErfCoulomb { .. } => "periodic_erf_coulomb",
            Self::Harmonic { .. } => "harmonic",
            Self::Free => "free",
        }
    }

    /// Lattice constant of the periodic variants.
    pub fn lattice_constant(&self) -> Option<f64> {
        match *self {
            Self::Cosine { k0, .. } => Some(2.0 * PI / k0),
            Self::PeriodicErfCoulomb { a0, .. } => Some(a0),
            _ => None,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.lattice_constant().is_some()
    }

    /// Analytic v(κ) for integer n = κa0/2π (erf: n ≠ 0).
    pub(crate) fn lattice_coeff(&self, n: i64) -> Result<f64> {
        match *self {
            Self::Cosine { v0, .. } => Ok(if n.abs() == 1 { 0.5 * v0 } else { 0.0 }),
            Self::PeriodicErfCoulomb { z, r0, a0 } => {
                if n == 0 {
                    return Err(Error::Singular("erf-Coulomb coefficient at kappa = 0".into()));
                }
                let kappa = 2.0 * PI * n as f64 / a0;
                let t = kappa / (2.0 * r0);
                Ok(-z / (2.0 * PI) * exp_integral_e1(t * t))
            }
            _ => Err(Error::Unsupported(format!("{} is not periodic", self.name()))),
        }
    }

    /// Nonzero lattice harmonics n ≥ 1 retained by the magnitude cutoff
    /// (the n < 0 partners follow from v(−κ) = v(κ)).
    pub fn significant_harmonics(&self) -> Result<Vec<(i64, f64)>> {
        if let Self::Cosine { v0, .. } = *self {
            return Ok(vec![(1, 0.5 * v0)]);
        }
        let first = self.lattice_coeff(1)?.abs();
        let mut out = Vec::new();
        for n in 1.. {
            let v = self.lattice_coeff(n)?;
            if v.abs() < COEFF_CUTOFF * first || v == 0.0 {
                break;
            }
            out.push((n, v));
        }
        Ok(out)
    }

    pub fn sample(&self, x: f64) -> f64 {
        match *self {
            Self::DoubleWell { alpha, beta } => -alpha * x * x + beta * x.powi(4),
            Self::Cosine { v0, k0 } => v0 * (k0 * x).cos(),
            Self::Harmonic { stiffness } => 0.5 * stiffness * x * x,
            Self::Free => 0.0,
            Self::PeriodicErfCoulomb { a0, .. } => {
                // Fourier synthesis over all retained harmonics (v real and even)
                let b = 2.0 * PI / a0;
                self.significant_harmonics()
                    .expect("periodic")
                    .iter()
                    .map(|&(n, v)| 2.0 * v * (b * n as f64 * x).cos())
                    .sum()
            }
        }
    }

    /// Z that matches the first harmonic of v0·cos(2πx/a0): v(2π/a0) = v0/2.
    pub fn erf_charge_matching_cosine(v0: f64, r0: f64, a0: f64) -> f64 {
        let t = PI / (a0 * r0);
        -PI * v0 / exp_integral_e1(t * t)
    }
}
