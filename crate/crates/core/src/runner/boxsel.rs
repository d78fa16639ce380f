//! Box length for the RAD K grid of a confining potential.
//!
//! A finite plane-wave set truncates both ends: too small a box clips the
//! states in x, too large a box leaves too few K points to resolve them. The
//! box is bisected (log scale) until the worst eigenvector weight in the outer
//! tenth of the x grid equals that in the outer fifth of the K grid.

use crate::hamiltonians::rad_single_operator;
use crate::matter::{PotentialModel, RealGrid};
use crate::operators::{lowest_eigenpairs, LanczosOptions};
use crate::transforms::CavityMode;
use crate::{Result, C64};
use std::f64::consts::PI;

const L_MIN: f64 = 1.0;
const L_MAX: f64 = 16.0;
/// bisection stops when the bracket is narrower than this in ln L
const LOG_TOL: f64 = 0.01;

/// (max x-tail, max K-tail) over the lowest `n_states` RAD eigenvectors.
pub fn tail_weights(
    model: &PotentialModel,
    mass: f64,
    mode: &CavityMode<f64>,
    n_k: usize,
    n_fock: usize,
    n_states: usize,
    box_length: f64,
) -> Result<(f64, f64)> {
    let grid = RealGrid::new(n_k, box_length)?;
    let (op, _) = rad_single_operator(model, &grid, mass, mode, n_fock)?;
    let opts = LanczosOptions { n_eigs: n_states, tol: 1e-8, want_vectors: true, ..Default::default() };
    let r = lowest_eigenpairs(&op, &opts)?;
    let xs = grid.points();
    let dk = 2.0 * PI / box_length;
    let ks: Vec<f64> = (0..n_k).map(|i| (i as f64 - 0.5 * (n_k - 1) as f64) * dk).collect();
    let kmax = ks[n_k - 1];
    // e^{−iKx} per (K, x), shared across vectors
    let phase: Vec<Vec<C64>> = ks.iter().map(|&k| xs.iter().map(|&x| C64::from_polar(1.0, -k * x)).collect()).collect();
    let (mut xt, mut kt) = (0.0f64, 0.0f64);
    for v in r.eigenvectors.as_deref().unwrap_or_default() {
        let (mut wx, mut wk) = (0.0, 0.0);
        for j in 0..n_fock {
            for (i, x) in xs.iter().enumerate() {
                if x.abs() > 0.4 * box_length {
                    wx += v[i * n_fock + j].powi(2);
                }
            }
            for (kk, &k) in ks.iter().enumerate() {
                if k.abs() > 0.8 * kmax {
                    let z: C64 = (0..n_k).map(|i| phase[kk][i] * v[i * n_fock + j]).sum();
                    wk += z.norm_sqr() / n_k as f64;
                }
            }
        }
        xt = xt.max(wx);
        kt = kt.max(wk);
    }
    Ok((xt, kt))
}

/// Tail-balanced box for the rung (n_k, n_fock), bracketed in [1, 16].
pub fn balance_box(
    model: &PotentialModel,
    mass: f64,
    mode: &CavityMode<f64>,
    n_k: usize,
    n_fock: usize,
    n_states: usize,
) -> Result<f64> {
    let imbalance = |l: f64| -> Result<f64> {
        let (xt, kt) = tail_weights(model, mass, mode, n_k, n_fock, n_states, l)?;
        Ok((xt + 1e-300).ln() - (kt + 1e-300).ln())
    };
    let (mut a, mut b) = (L_MIN.ln(), L_MAX.ln());
    while b - a > LOG_TOL {
        let c = 0.5 * (a + b);
        // x tails shrink as the box grows
        if imbalance(c.exp())? > 0.0 {
            a = c;
        } else {
            b = c;
        }
    }
    Ok((0.5 * (a + b)).exp())
}

/// Higher rungs keep the balance: L ∝ √N at fixed state extent.
pub fn scale_box(box_length: f64, n_from: usize, n_to: usize) -> f64 {
    box_length * (n_to as f64 / n_from as f64).sqrt()
}
