use crate::{Error, Result, C64};
use faer::Mat;
use serde::{Deserialize, Serialize};

/// Matter-major, photon-minor product basis. Photon modes are ordered with the
/// last mode varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointBasis {
    pub matter_dim: usize,
    pub photon_dims: Vec<usize>,
}

impl JointBasis {
    pub fn new(matter_dim: usize, photon_dims: Vec<usize>) -> Self {
        Self { matter_dim, photon_dims }
    }

    pub fn photon_dim(&self) -> usize {
        self.photon_dims.iter().product()
    }

    pub fn dim(&self) -> usize {
        self.matter_dim * self.photon_dim()
    }

    pub fn index(&self, matter: usize, photons: &[usize]) -> usize {
        let mut idx = matter;
        for (&n, &d) in photons.iter().zip(&self.photon_dims) {
            idx = idx * d + n;
        }
        idx
    }

    pub fn split(&self, mut idx: usize) -> (usize, Vec<usize>) {
        let mut ph = vec![0; self.photon_dims.len()];
        for (slot, &d) in ph.iter_mut().zip(&self.photon_dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        (idx, ph)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Factor<'a> {
    Identity,
    Matrix(&'a Mat<C64>),
}

pub fn kron(a: &Mat<C64>, b: &Mat<C64>) -> Mat<C64> {
    let (p, q) = (b.nrows(), b.ncols());
    Mat::from_fn(a.nrows() * p, a.ncols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
}

pub fn kron_real(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
    let (p, q) = (b.nrows(), b.ncols());
    Mat::from_fn(a.nrows() * p, a.ncols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
}

fn realize(f: Factor, dim: usize, what: &str) -> Result<Mat<C64>> {
    match f {
        Factor::Identity => Ok(Mat::from_fn(dim, dim, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })),
        Factor::Matrix(m) if m.nrows() == dim && m.ncols() == dim => Ok(m.clone()),
        Factor::Matrix(m) => Err(Error::Dimension(format!(
            "{what}: expected {dim}x{dim}, got {}x{}",
            m.nrows(),
            m.ncols()
        ))),
    }
}

/// Kronecker embedding `matter ⊗ photon₀ ⊗ photon₁ ⊗ …` in the joint ordering.
pub fn tensor_embed(matter: Factor, photons: &[Factor], joint: &JointBasis) -> Result<Mat<C64>> {
    if photons.len() != joint.photon_dims.len() {
        return Err(Error::Dimension(format!(
            "{} photon factors for {} modes",
            photons.len(),
            joint.photon_dims.len()
        )));
    }
    let mut out = realize(matter, joint.matter_dim, "matter factor")?;
    for (k, (&f, &d)) in photons.iter().zip(&joint.photon_dims).enumerate() {
        let m = realize(f, d, &format!("photon factor {k}"))?;
        out = kron(&out, &m);
    }
    Ok(out)
}
