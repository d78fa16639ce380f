//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! the table when everything passes; a failing criterion fails the test.

use faer::Mat;
use radqed::config::RunConfig;
use radqed::hamiltonians::*;
use radqed::matter::*;
use radqed::observables::{coulomb_photon_number, fock_excitation};
use radqed::operators::{eig_hermitian, eig_symmetric, ladder_extended};
use radqed::runner::*;
use radqed::transforms::{bogoliubov, CouplingScaling};
use radqed::{Dispersion, Mode, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

struct Verdict {
    name: &'static str,
    pass: bool,
    detail: String,
    seconds: f64,
    budget: f64,
}

impl Verdict {
    fn line(&self) -> String {
        let ok = self.pass && self.seconds <= self.budget;
        format!(
            "{} {:<28} {:>7.1}s/{:<5} {}",
            if ok { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.budget,
            self.detail
        )
    }
}

fn config(name: &str) -> RunConfig {
    RunConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)).unwrap()
}

fn timed(name: &'static str, budget: f64, f: impl FnOnce() -> (bool, String)) -> Verdict {
    let t = Instant::now();
    let (pass, detail) = f();
    let v = Verdict { name, pass, detail, seconds: t.elapsed().as_secs_f64(), budget };
    println!("{}", v.line());
    v
}

fn sci(v: &[f64], digits: usize) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.digits$e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn bogoliubov_criterion() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n: usize = 60;
    let keep = n.div_ceil(3);
    let a = ladder_extended(n);
    let ad = a.transpose().to_owned();
    let id = Mat::<f64>::identity(n, n);
    let x = &a + &ad;
    let x2 = &x * &x;
    let num = &ad * &a;
    let (mut w_omega, mut w_unit, mut w_mat) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let w = 10f64.powf(rng.gen_range(-2.0..2.0));
        let g = w * 10f64.powf(rng.gen_range(-2.0..2.0));
        let r = bogoliubov(w, g).unwrap();
        let want = (w * w + 2.0 * g * g).sqrt();
        w_omega = w_omega.max((r.omega_dressed - want).abs() / want);
        w_unit = w_unit.max((r.u * r.u - r.v * r.v - 1.0).abs());
        let b = &a * r.u + &ad * r.v;
        let lhs = (&b.transpose() * &b + &id * 0.5) * r.omega_dressed;
        let rhs = (&num + &id * 0.5) * w + &x2 * (g * g / (2.0 * w));
        let (mut d, mut s) = (0.0f64, 0.0f64);
        for i in 0..keep {
            for j in 0..keep {
                d = d.max((lhs[(i, j)] - rhs[(i, j)]).abs());
                s = s.max(rhs[(i, j)].abs());
            }
        }
        w_mat = w_mat.max(d / s);
    }
    (
        w_omega < 1e-12 && w_unit < 1e-12 && w_mat < 1e-8,
        format!("Ω rel {w_omega:.1e}, u²−v²−1 {w_unit:.1e}, matrix identity rel {w_mat:.1e} (100 pairs)"),
    )
}

fn product(matter: &[f64], w: f64, nf: usize) -> Vec<f64> {
    let mut v: Vec<f64> = matter.iter().flat_map(|&e| (0..nf).map(move |n| e + w * (n as f64 + 0.5))).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Matter levels on the symmetric K grid, assembled directly from V̂(G).
fn k_grid_matter(model: &PotentialModel, grid: &RealGrid) -> Vec<f64> {
    let n = grid.n_points;
    let dk = 2.0 * PI / grid.box_length;
    let k = |i: usize| (i as f64 - 0.5 * (n - 1) as f64) * dk;
    let h = Mat::from_fn(n, n, |i, j| {
        box_fourier_coeff(model, grid.box_length, k(j) - k(i)).unwrap() + if i == j { 0.5 * k(i) * k(i) } else { 0.0 }
    });
    eig_symmetric(&h, false).unwrap().eigenvalues
}

/// Bloch levels at k from the unit-cell harmonics.
fn lattice_matter(model: &PotentialModel, k: f64, n_bands: usize) -> Vec<f64> {
    let b = 2.0 * PI / model.lattice_constant().unwrap();
    let nm = (n_bands / 2) as i64;
    let h = Mat::from_fn(n_bands, n_bands, |i, j| {
        let (ni, nj) = (i as i64 - nm, j as i64 - nm);
        if i == j {
            0.5 * (k + ni as f64 * b).powi(2)
        } else {
            unit_cell_fourier_coeff(model, (nj - ni) as f64 * b).unwrap().re
        }
    });
    eig_symmetric(&h, false).unwrap().eigenvalues
}

fn zero_coupling_criterion() -> (bool, String) {
    let w = 3.0;
    let nf = 6;
    let mode = Mode::from_gamma(w, 0.0, -1.0, 1.0).unwrap();
    let well = PotentialModel::DoubleWell { alpha: 3.0, beta: 3.85 };
    let cosine = PotentialModel::Cosine { v0: -2.0, k0: 2.0 * PI };
    let erf = PotentialModel::PeriodicErfCoulomb {
        z: PotentialModel::erf_charge_matching_cosine(-2.0, 2.0, 1.0),
        r0: 2.0,
        a0: 1.0,
    };
    let eig = |h: &GaugeHamiltonian| eig_hermitian(&h.matrix, false).unwrap().eigenvalues;
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut check = |h: GaugeHamiltonian, want: &[f64]| {
        worst = worst.max(max_diff(&eig(&h), want));
        count += 1;
    };
    let sol = solve_matter(&well, 1.0, &RealGrid::new(256, 8.0).unwrap(), 10).unwrap();
    check(build_pf(&sol, &mode, 10, nf).unwrap(), &product(&sol.energies, w, nf));
    let grid = RealGrid::new(24, 5.0).unwrap();
    let want = product(&k_grid_matter(&well, &grid), w, nf);
    check(build_rad_single(&well, &grid, 1.0, &mode, nf).unwrap(), &want);
    check(build_pa_lwa(&well, &grid, 1.0, &mode, nf, true).unwrap(), &want);
    check(build_rad_multimode(&well, &grid, 1.0, &[mode], &[nf]).unwrap(), &want);
    let cgrid = RealGrid::new(24, 3.0).unwrap();
    check(build_ad_cosine(&cosine, &cgrid, 1.0, &mode, nf).unwrap(), &product(&k_grid_matter(&cosine, &cgrid), w, nf));
    let d = Dispersion { omega_c: w, c: 14.05, gamma0: 0.0, scaling: CouplingScaling::FixedA };
    for m in [cosine, erf] {
        let ctx = KResolvedContext::new(0.7, 9, nf).unwrap().with_k_beta(0.0);
        let want = product(&lattice_matter(&m, 0.7, 9), w, nf);
        check(build_rad_k(&m, &ctx, &d, 1.0).unwrap(), &want);
        check(build_rad_k_blwa(&m, &ctx, &d, 1.0, BoostNumber::Full).unwrap(), &want);
        check(build_pa_k_blwa_exact(&m, &ctx, &d, 1.0).unwrap(), &want);
        check(build_pa_k_lwa(&m, &ctx, &d, 1.0).unwrap(), &want);
    }
    (worst < 1e-10, format!("max |E − (E_i + ω(n+½))| = {worst:.1e} over {count} gauge builds"))
}

fn gauge_invariance_criterion() -> (bool, String) {
    let mut rad = config("shallow.toml");
    rad.basis.ladder.clear();
    rad.basis.n_k = 128;
    rad.basis.n_fock = 40;
    rad.sweep.gammas = vec![0.1, 0.5, 1.0];
    rad.sweep.n_eigs = 8;
    let mut pf = rad.clone();
    pf.basis.n_matter = 60;
    pf.basis.n_fock = 400;
    let r = sweep_coupling(&rad, &SweepSpec::from_config(&rad, Gauge::Rad, coupling_axis(&rad))).unwrap();
    let p = sweep_coupling(&pf, &SweepSpec::from_config(&pf, Gauge::Pf, coupling_axis(&pf))).unwrap();
    let dev: Vec<f64> = r
        .solutions
        .iter()
        .zip(&p.solutions)
        .map(|(a, b)| max_relative_deviation(&a.eigenvalues, &b.eigenvalues, 8))
        .collect();
    let worst = dev.iter().copied().fold(0.0, f64::max);
    (worst <= 1e-4, format!("RAD(128,40) vs PF(60,400), lowest 8: {} at γ/ω 0.1, 0.5, 1", sci(&dev, 1)))
}

fn rad_efficiency_criterion() -> (bool, String) {
    let steep = config("steep.toml");
    let spec = SweepSpec::from_config(&steep, Gauge::Rad, coupling_axis(&steep));
    let t = convergence_study(&steep, &spec, 1e-6).unwrap();
    let steep_dev = t.rows[0].max_rel_deviation;
    let shallow = config("shallow.toml");
    let ts = convergence_study(&shallow, &SweepSpec::from_config(&shallow, Gauge::Rad, coupling_axis(&shallow)), 1e-6)
        .unwrap();
    let shallow_dev = ts.rows[0].max_rel_deviation;
    // PF(50, 200) against the converged RAD reference at γ/ω ≥ 1
    let mut pf = steep.clone();
    pf.basis.ladder.clear();
    pf.basis.n_matter = 50;
    pf.basis.n_fock = 200;
    let strong: Vec<usize> = t.reference.points.iter().enumerate().filter(|(_, p)| p.gamma_over_omega >= 1.0 - 1e-12).map(|(i, _)| i).collect();
    let gammas: Vec<f64> = strong.iter().map(|&i| t.reference.points[i].gamma_over_omega).collect();
    pf.sweep.gammas = gammas.clone();
    let p = sweep_coupling(&pf, &SweepSpec::from_config(&pf, Gauge::Pf, coupling_axis(&pf))).unwrap();
    let pf_dev: Vec<f64> = strong
        .iter()
        .zip(&p.solutions)
        .map(|(&i, s)| max_relative_deviation(&s.eigenvalues, &t.reference.solutions[i].eigenvalues, 10))
        .collect();
    let pf_fails = pf_dev.iter().all(|&d| d > 1e-6);
    (
        steep_dev <= 1e-6 && shallow_dev <= 1e-6 && pf_fails,
        format!(
            "steep (100,20)→(200,40) {steep_dev:.1e}; shallow 5 Fock {shallow_dev:.1e}; PF(50,200) at γ/ω {:?}: {} (must all exceed 1e-6)",
            gammas.iter().map(|g| (g * 100.0).round() / 100.0).collect::<Vec<_>>(),
            sci(&pf_dev, 1)
        ),
    )
}

fn ad_rad_criterion() -> (bool, String) {
    let c = config("cosine.toml");
    let a = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Ad, coupling_axis(&c))).unwrap();
    let r = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c))).unwrap();
    let worst = a
        .solutions
        .iter()
        .zip(&r.solutions)
        .map(|(x, y)| max_relative_deviation(&x.eigenvalues, &y.eigenvalues, 10))
        .fold(0.0, f64::max);
    (worst <= 1e-6, format!("lowest 10 at γ/ω 0.1, 1, 10: {worst:.1e}"))
}

fn dispersion_criterion() -> (bool, String) {
    let mut devs = Vec::new();
    let mut widths = Vec::new();
    let mut raw = Vec::new();
    for g in [0.2, 1.0, 10.0, 100.0] {
        let mut c = config("erf.toml");
        c.cavity.gamma_over_omega = g;
        let spec = SweepSpec::from_config(&c, Gauge::RadK, momentum_axis(&c));
        let t = convergence_study(&c, &spec, 1e-6).unwrap();
        devs.push(t.rows[0].max_rel_deviation);
        widths.push(band_width(&c, &t.reference, 0, true).unwrap());
        raw.push(band_width(&c, &t.reference, 0, false).unwrap());
    }
    let converged = devs.iter().all(|&d| d <= 1e-6);
    let flattening = widths.windows(2).all(|w| w[1] < w[0]);
    (
        converged && flattening,
        format!(
            "(101,5) vs (151,9), 40 bands at γ₀/ω₀ 0.2, 1, 10, 100: {}; lowest-band width − ZPE {} (raw {})",
            sci(&devs, 1),
            sci(&widths, 3),
            sci(&raw, 3)
        ),
    )
}

fn blwa_criterion() -> (bool, String) {
    let mut rad = config("blwa.toml");
    let edge = 0.2 * PI;
    rad.sweep.k_max = edge;
    rad.sweep.k_beta_max = edge;
    rad.sweep.n_k_points = 5;
    rad.sweep.n_k_beta_points = 5;
    let mut pa = rad.clone();
    pa.basis.n_bands = 11;
    pa.basis.n_fock = 14;
    let r = sweep_dispersion(&rad, &SweepSpec::from_config(&rad, Gauge::RadKBlwa, plane_axis(&rad))).unwrap();
    let p = sweep_dispersion(&pa, &SweepSpec::from_config(&pa, Gauge::PaKBlwa, plane_axis(&pa))).unwrap();
    let dev: Vec<f64> = r
        .solutions
        .iter()
        .zip(&p.solutions)
        .map(|(a, b)| max_relative_deviation(&a.eigenvalues, &b.eigenvalues, 5))
        .collect();
    let diag = r.cross_section().iter().map(|&i| dev[i]).fold(0.0, f64::max);
    let plane = dev.iter().copied().fold(0.0, f64::max);
    let dims = (r.solutions[0].dim, p.solutions[0].dim);

    // γ = 0: both frames carry ω_{k_β}(n+½) + ħ²(k+κ−n k_β)²/2m on the diagonal
    let d0 = rad.dispersion(0.0);
    let mut diag_err = 0.0f64;
    let model = rad.model.potential;
    for (k, kb) in [(0.1 * PI, -0.2 * PI), (-0.2 * PI, 0.15 * PI), (0.0, 0.2 * PI)] {
        let w = d0.omega(kb).unwrap();
        for (h, nb, nf) in [
            (build_rad_k_blwa(&model, &KResolvedContext::new(k, 7, 5).unwrap().with_k_beta(kb), &d0, 1.0, BoostNumber::Full).unwrap(), 7, 5),
            (build_pa_k_blwa_exact(&model, &KResolvedContext::new(k, 11, 14).unwrap().with_k_beta(kb), &d0, 1.0).unwrap(), 11, 14),
        ] {
            let m = h.matrix.matrix();
            for i in 0..nb {
                for n in 0..nf {
                    let kk = k + 2.0 * PI * (i as f64 - (nb / 2) as f64) - n as f64 * kb;
                    let want = w * (n as f64 + 0.5) + kk * kk / 2.0;
                    diag_err = diag_err.max((m[(i * nf + n, i * nf + n)] - C64::new(want, 0.0)).norm());
                }
            }
        }
    }

    // full diagonalization (values and vectors), best of several batches
    let d = rad.dispersion(rad.cavity.gamma_over_omega);
    let hr = build_rad_k_blwa(&model, &KResolvedContext::new(0.1 * PI, 7, 5).unwrap().with_k_beta(0.1 * PI), &d, 1.0, BoostNumber::Full).unwrap();
    let hp = build_pa_k_blwa_exact(&model, &KResolvedContext::new(0.1 * PI, 11, 14).unwrap().with_k_beta(0.1 * PI), &d, 1.0).unwrap();
    let best = |h: &GaugeHamiltonian, reps: usize| {
        (0..5)
            .map(|_| {
                let t = Instant::now();
                for _ in 0..reps {
                    std::hint::black_box(eig_hermitian(&h.matrix, true).unwrap());
                }
                t.elapsed().as_secs_f64() / reps as f64
            })
            .fold(f64::INFINITY, f64::min)
    };
    let speedup = best(&hp, 40) / best(&hr, 2000);
    (
        diag <= 1e-3 && diag_err <= 1e-10 && speedup >= 20.0,
        format!(
            "RAD dim {} vs p·A dim {}, lowest 5 for |k|,|k_β| ≤ 0.2π: k=k_β {diag:.2e}, whole plane {plane:.2e}; γ=0 diagonal {diag_err:.1e}; speedup {speedup:.0}×",
            dims.0, dims.1
        ),
    )
}

fn momentum_criterion() -> (bool, String) {
    let c = config("blwa.toml");
    let model = c.model.potential;
    let d = c.dispersion(c.cavity.gamma_over_omega);
    let kb = 0.15 * PI;
    let commutator = |h: &GaugeHamiltonian, p: &[f64]| {
        // U = e^{i a0 P} is blind to reciprocal-lattice momentum transfer
        let m = h.matrix.matrix();
        let n = h.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let z = m[(i, j)] * (C64::from_polar(1.0, p[j]) - C64::from_polar(1.0, p[i]));
                worst = worst.max(z.norm());
            }
        }
        worst
    };
    // boosted: the matter label is the total momentum
    let nf = 5;
    let h = build_pa_blwa_plane_waves(&model, &[0.3, -0.8], 3, nf, kb, &d, 1.0, true).unwrap();
    let p: Vec<f64> = h.matter_momenta.iter().flat_map(|&k| std::iter::repeat_n(k, nf)).collect();
    let boosted = commutator(&h, &p);
    let half = 7 * nf;
    let m = h.matrix.matrix();
    let mut cross = 0.0f64;
    for i in 0..half {
        for j in half..2 * half {
            cross = cross.max(m[(i, j)].norm());
        }
    }
    // explicit e^{±ik_βx}: total momentum K + n k_β
    let ks: Vec<f64> = (0..nf).map(|n| 0.3 - n as f64 * kb).collect();
    let h = build_pa_blwa_plane_waves(&model, &ks, 3, nf, kb, &d, 1.0, false).unwrap();
    let p: Vec<f64> = h
        .matter_momenta
        .iter()
        .flat_map(|&k| (0..nf).map(move |n| k + n as f64 * kb))
        .collect();
    let explicit = commutator(&h, &p);
    let worst = boosted.max(explicit).max(cross);
    (
        worst <= 1e-10,
        format!("two-k super-block coupling {cross:.1e}; ‖[H, e^(ia0·P)]‖ boosted {boosted:.1e}, explicit {explicit:.1e}"),
    )
}

fn photon_criterion() -> (bool, String) {
    let mut peaks = Vec::new();
    let mut tops = Vec::new();
    for g in [1.0, 100.0] {
        let mut c = config("erf.toml");
        c.basis.ladder.clear();
        // 9 Fock levels keep the top-level population under the headroom guard at every coupling
        c.basis.n_fock = 9;
        c.cavity.gamma_over_omega = g;
        let r = photon_character(&c, &SweepSpec::from_config(&c, Gauge::RadK, momentum_axis(&c))).unwrap();
        peaks.push(r.solutions.iter().map(|s| s.photon_number.as_ref().unwrap()[0]).fold(0.0, f64::max));
        tops.push(r.solutions.iter().map(|s| s.top_population.as_ref().unwrap()[0]).fold(0.0, f64::max));
    }
    let growth = peaks[1] / peaks[0];
    // exact Coulomb-gauge oracle in the same (long-wavelength) setting
    let c = config("erf.toml");
    let model = c.model.potential;
    let mut worst = 0.0f64;
    for g in [0.1, 0.25] {
        let d = c.dispersion(g);
        for k in [0.0, 0.3 * PI, 0.7 * PI, PI] {
            let hr = build_rad_k(&model, &KResolvedContext::new(k, 21, 8).unwrap(), &d, 1.0).unwrap();
            let hp = build_pa_k_lwa(&model, &KResolvedContext::new(k, 21, 30).unwrap(), &d, 1.0).unwrap();
            let (er, ep) = (eig_hermitian(&hr.matrix, true).unwrap(), eig_hermitian(&hp.matrix, true).unwrap());
            for i in 0..5 {
                let nr = coulomb_photon_number(&er.vector(i).unwrap(), &hr).unwrap().value;
                let np = fock_excitation(&ep.vector(i).unwrap(), &hp).unwrap();
                worst = worst.max(((nr - np) / np).abs());
            }
        }
    }
    (
        growth >= 100.0 && worst <= 0.05,
        format!(
            "max_k ⟨a†a⟩ lowest band {:.3e} → {:.3e} (×{growth:.0}, top-Fock population ≤ {:.1e}); oracle rel dev {worst:.1e} at γ₀/ω₀ ≤ 0.25",
            peaks[0],
            peaks[1],
            tops.iter().copied().fold(0.0, f64::max)
        ),
    )
}

fn fourier_criterion() -> (bool, String) {
    let well = PotentialModel::DoubleWell { alpha: 3.0, beta: 3.85 };
    let g = RealGrid::new(128, 6.0).unwrap();
    let table = potential_fourier_dense(&well, &g).unwrap();
    let v: Vec<f64> = g.points().iter().map(|&x| well.sample(x)).collect();
    let n = g.n_points;
    let scale = table.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut shift = 0.0f64;
    for m in [1usize, 7, 50] {
        for label in -64..64i64 {
            let k = label as f64 * table.dk();
            let direct: C64 =
                (0..n).map(|j| C64::from_polar(v[(j + n - m) % n], k * g.x(j))).sum::<C64>() * (g.dx() / (2.0 * PI));
            let theorem = table.at(label) * C64::from_polar(1.0, k * m as f64 * g.dx());
            shift = shift.max((direct - theorem).norm() / scale);
        }
    }
    let lhs: f64 = v.iter().map(|x| x * x).sum::<f64>() * g.dx();
    let rhs: f64 = table.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * 2.0 * PI * table.dk();
    let parseval = ((lhs - rhs) / lhs).abs();
    let xs: Vec<f64> = (0..101).map(|i| -0.5 + i as f64 / 100.0).collect();
    let mut monotone = true;
    for r0 in [2.0, 5.0, 20.0] {
        let m = PotentialModel::PeriodicErfCoulomb { z: 10.0, r0, a0: 1.0 };
        let dev: Vec<f64> = (1..=40).map(|t| bloch_reconstruction_check(&m, t, &xs).unwrap()).collect();
        // past saturation the partial sums pick up harmonics the reference drops (|v| < COEFF_CUTOFF·|v₁|)
        let v1 = unit_cell_fourier_coeff(&m, 2.0 * PI).unwrap().norm();
        let floor = 2.0 * COEFF_CUTOFF * v1 * dev.len() as f64;
        monotone &= dev.windows(2).all(|w| w[1] <= w[0] || w[1] <= floor);
    }
    (
        shift <= 1e-10 && parseval <= 1e-8 && monotone,
        format!("shift theorem {shift:.1e}; Parseval {parseval:.1e}; Bloch deviation monotone in n_terms: {monotone}"),
    )
}

#[test]
fn acceptance() {
    let verdicts = [
        timed("bogoliubov", 1.0, bogoliubov_criterion),
        timed("zero-coupling factorization", 10.0, zero_coupling_criterion),
        timed("gauge invariance", 300.0, gauge_invariance_criterion),
        timed("rad efficiency", 900.0, rad_efficiency_criterion),
        timed("ad-rad equivalence", 120.0, ad_rad_criterion),
        timed("periodic dispersion", 1200.0, dispersion_criterion),
        timed("beyond-lwa benchmark", 600.0, blwa_criterion),
        timed("momentum conservation", 60.0, momentum_criterion),
        timed("photon number", 600.0, photon_criterion),
        timed("fourier/bloch", 60.0, fourier_criterion),
    ];
    let failed: Vec<&str> = verdicts.iter().filter(|v| !(v.pass && v.seconds <= v.budget)).map(|v| v.name).collect();
    println!("{} of {} criteria pass", verdicts.len() - failed.len(), verdicts.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
