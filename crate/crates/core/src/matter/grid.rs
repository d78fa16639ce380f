use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Uniform grid x_i = −L/2 + iΔx, i = 0…N−1 (symmetric about 0 modulo L).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealGrid {
    pub n_points: usize,
    pub box_length: f64,
}

impl RealGrid {
    pub fn new(n_points: usize, box_length: f64) -> Result<Self> {
        if n_points < 8 {
            return Err(Error::InvalidParameter(format!("grid needs >= 8 points, got {n_points}")));
        }
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(Error::InvalidParameter(format!("box length {box_length}")));
        }
        Ok(Self { n_points, box_length })
    }

    pub fn dx(&self) -> f64 {
        self.box_length / self.n_points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -0.5 * self.box_length + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    pub fn dual(&self) -> ReciprocalGrid {
        ReciprocalGrid::DenseK { n_points: self.n_points, dk: 2.0 * PI / self.box_length }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ReciprocalGrid {
    /// K_n = nΔK for n ∈ [−N/2, N/2)
    DenseK { n_points: usize, dk: f64 },
    /// k + nb for n ∈ [−n_max, n_max], b = 2π/a0
    LatticeKappa { a0: f64, n_max: usize, k: f64 },
}

impl ReciprocalGrid {
    pub fn lattice(a0: f64, n_max: usize, k: f64) -> Result<Self> {
        if !(a0 > 0.0) {
            return Err(Error::InvalidParameter(format!("lattice constant {a0}")));
        }
        Ok(Self::LatticeKappa { a0, n_max, k })
    }

    pub fn len(&self) -> usize {
        match *self {
            Self::DenseK { n_points, .. } => n_points,
            Self::LatticeKappa { n_max, .. } => 2 * n_max + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Signed integer label of entry i.
    pub fn label(&self, i: usize) -> i64 {
        match *self {
            Self::DenseK { n_points, .. } => i as i64 - (n_points / 2) as i64,
            Self::LatticeKappa { n_max, .. } => i as i64 - n_max as i64,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        match *self {
            Self::DenseK { dk, .. } => self.label(i) as f64 * dk,
            Self::LatticeKappa { a0, k, .. } => k + self.label(i) as f64 * 2.0 * PI / a0,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// Reduce k into the first Brillouin zone (−π/a0, π/a0].
    pub fn reduce_to_bz(k: f64, a0: f64) -> f64 {
        let b = 2.0 * PI / a0;
        let mut r = k - b * (k / b).round();
        if r <= -PI / a0 {
            r += b;
        }
        r
    }
}
