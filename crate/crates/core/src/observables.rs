//! Observables on eigenstates: native Fock excitation and the Coulomb-gauge
//! photon number ⟨a†a⟩ of RAD-family states.

use crate::hamiltonians::{Gauge, GaugeHamiltonian, RadFrame};
use crate::operators::ladder_extended;
use crate::{Error, Result, C64, HBAR};
use faer::Mat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Top-two Fock populations above this are reported as truncation leakage.
pub const HEADROOM_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableReport {
    pub state: usize,
    pub energy: f64,
    pub gauge: Gauge,
    pub values: BTreeMap<String, f64>,
}

/// W_K† a†a W_K for W_K = e^{−iξK P̂}·e^{−i(π/2)b†b}, in `dim` levels of the
/// dressed ladder (frequency Ω), exact within the truncation:
/// (ω/2)(P̂/Ω + ξK)² + Ω²q̂²/(2ω) − ½.
pub fn coulomb_number_operator(frame: &RadFrame, k: f64, dim: usize) -> Mat<C64> {
    let big = dim + 2;
    let b = ladder_extended(big);
    let om = frame.omega_dressed;
    let w = frame.omega;
    let qs = (HBAR / (2.0 * om)).sqrt();
    let ps = (HBAR * om / 2.0).sqrt();
    let q = Mat::from_fn(big, big, |i, j| C64::new(qs * (b[(i, j)] + b[(j, i)]), 0.0));
    let shift = frame.xi * k;
    // P̂/Ω + ξK
    let s = Mat::from_fn(big, big, |i, j| {
        let mut z = C64::new(0.0, ps * (b[(j, i)] - b[(i, j)]) / om);
        if i == j {
            z += shift;
        }
        z
    });
    let s2 = &s * &s;
    let q2 = &q * &q;
    Mat::from_fn(dim, dim, |i, j| {
        let mut z = s2[(i, j)] * (w / (2.0 * HBAR)) + q2[(i, j)] * (om * om / (2.0 * HBAR * w));
        if i == j {
            z -= 0.5;
        }
        z
    })
}

fn check_state(state: &[C64], h: &GaugeHamiltonian) -> Result<()> {
    if state.len() != h.dim() {
        return Err(Error::Dimension(format!("state of length {} for dimension {}", state.len(), h.dim())));
    }
    Ok(())
}

/// ⟨ψ|N̂|ψ⟩ for the native ladder of the representation (summed over modes).
pub fn fock_excitation(state: &[C64], h: &GaugeHamiltonian) -> Result<f64> {
    check_state(state, h)?;
    let nrm: f64 = state.iter().map(|z| z.norm_sqr()).sum();
    let mut s = 0.0;
    for (idx, z) in state.iter().enumerate() {
        let (_, occ) = h.basis.split(idx);
        s += z.norm_sqr() * occ.iter().sum::<usize>() as f64;
    }
    Ok(s / nrm)
}

/// Population in the two highest retained Fock levels.
pub fn top_population(state: &[C64], h: &GaugeHamiltonian) -> Result<f64> {
    check_state(state, h)?;
    let mut s = 0.0;
    for (idx, z) in state.iter().enumerate() {
        let (_, occ) = h.basis.split(idx);
        if occ.iter().zip(&h.basis.photon_dims).any(|(&n, &d)| n + 2 >= d) {
            s += z.norm_sqr();
        }
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhotonNumber {
    pub value: f64,
    pub top_population: f64,
}

/// Σ_K ⟨ψ_K|W_K† a†a W_K|ψ_K⟩ for a RAD-family eigenstate. The photon-momentum
/// boost of the beyond-LWA frame commutes with a†a and needs no correction.
pub fn coulomb_photon_number(state: &[C64], h: &GaugeHamiltonian) -> Result<PhotonNumber> {
    check_state(state, h)?;
    if !h.gauge.is_rad_family() {
        return Err(Error::Unsupported(format!("Coulomb photon number needs a RAD-family gauge, got {:?}", h.gauge)));
    }
    let frame = h
        .params
        .frame
        .ok_or_else(|| Error::Unsupported("multimode RAD has no single-mode photon number".into()))?;
    if h.basis.photon_dims.len() != 1 || h.matter_momenta.len() != h.basis.matter_dim {
        return Err(Error::Unsupported("photon number needs a single-mode plane-wave basis".into()));
    }
    let nf = h.basis.photon_dims[0];
    let nrm: f64 = state.iter().map(|z| z.norm_sqr()).sum();
    let mut total = 0.0;
    for (i, &k) in h.matter_momenta.iter().enumerate() {
        let block = &state[i * nf..(i + 1) * nf];
        if block.iter().all(|z| z.norm_sqr() < 1e-300) {
            continue;
        }
        let n = coulomb_number_operator(&frame, k, nf);
        for a in 0..nf {
            let mut row = C64::new(0.0, 0.0);
            for c in 0..nf {
                row += n[(a, c)] * block[c];
            }
            total += (block[a].conj() * row).re;
        }
    }
    Ok(PhotonNumber { value: total / nrm, top_population: top_population(state, h)? / nrm })
}

/// As [`coulomb_photon_number`] but refuses when the state leaks into the top
/// of the truncated ladder.
pub fn coulomb_photon_number_checked(state: &[C64], h: &GaugeHamiltonian) -> Result<f64> {
    let p = coulomb_photon_number(state, h)?;
    if p.top_population > HEADROOM_THRESHOLD {
        return Err(Error::FockHeadroom { population: p.top_population, threshold: HEADROOM_THRESHOLD });
    }
    Ok(p.value)
}

pub fn report(state_index: usize, energy: f64, state: &[C64], h: &GaugeHamiltonian) -> Result<ObservableReport> {
    let mut values = BTreeMap::new();
    values.insert("fock_excitation".to_string(), fock_excitation(state, h)?);
    if h.gauge.is_rad_family() && h.params.frame.is_some() {
        let p = coulomb_photon_number(state, h)?;
        values.insert("photon_number".to_string(), p.value);
        values.insert("top_population".to_string(), p.top_population);
    } else if matches!(h.gauge, Gauge::Pa | Gauge::PaKBlwa) {
        values.insert("photon_number".to_string(), fock_excitation(state, h)?);
    }
    Ok(ObservableReport { state: state_index, energy, gauge: h.gauge, values })
}
