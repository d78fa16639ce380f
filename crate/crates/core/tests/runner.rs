use radqed::config::RunConfig;
use radqed::hamiltonians::Gauge;
use radqed::runner::*;
use radqed::Error;

const COSINE: &str = r#"
[model]
potential = { variant = "cosine", v0 = -2.0, k0 = 6.283185307179586 }

[cavity]
omega_c = 2.0
gamma_over_omega = 0.5

[basis]
n_k = 16
k_box = 3.0
n_bands = 9
n_fock = 4
ladder = [[12, 3], [16, 4], [24, 8]]

[sweep]
gammas = [0.1, 0.5, 1.0, 2.0]
n_k_points = 5
n_k_beta_points = 3
n_eigs = 4
parallel = false
"#;

const WELL: &str = r#"
[model]
potential = { variant = "double_well", alpha = 3.0, beta = 3.85 }

[cavity]
omega_c = 8.0

[basis]
n_dvr = 256
n_matter = 8
n_k = 24
n_fock = 5

[sweep]
gammas = [0.1, 1.0]
n_eigs = 4
"#;

fn cfg(s: &str) -> RunConfig {
    RunConfig::from_toml_str(s).unwrap()
}

fn single_rung(mut c: RunConfig) -> RunConfig {
    c.basis.ladder.clear();
    c
}

#[test]
fn coupling_sweep_writes_the_spectrum_schema() {
    let c = single_rung(cfg(COSINE));
    let r = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c))).unwrap();
    assert_eq!(r.points.len(), 4);
    assert!(r.solutions.iter().all(|s| s.eigenvalues.len() == 4 && s.dim == 64));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("spectrum.csv");
    write_spectrum_csv(&r, &p).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gamma_over_omega,eig_index,energy"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn dispersion_writes_the_dispersion_schema_with_photon_numbers() {
    let c = single_rung(cfg(COSINE));
    let r = photon_character(&c, &SweepSpec::from_config(&c, Gauge::RadK, momentum_axis(&c))).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dispersion.csv");
    write_dispersion_csv(&r, &p).unwrap();
    let mut rdr = csv::Reader::from_path(&p).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header, ["k", "k_beta", "band", "energy", "photon_number"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5 * 4);
    for row in &rows {
        assert_eq!(row[0], row[1]);
        assert!(row[4].parse::<f64>().unwrap() >= 0.0);
    }
    // without the observable the column is present and empty
    let r = sweep_dispersion(&c, &SweepSpec::from_config(&c, Gauge::RadK, momentum_axis(&c))).unwrap();
    write_dispersion_csv(&r, &p).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(','));
}

#[test]
fn plane_sweep_marks_the_diagonal_cross_section() {
    let c = single_rung(cfg(COSINE));
    let mut c2 = c.clone();
    c2.sweep.n_k_points = 3;
    let r = sweep_dispersion(&c2, &SweepSpec::from_config(&c2, Gauge::RadKBlwa, plane_axis(&c2))).unwrap();
    assert_eq!(r.points.len(), 9);
    assert_eq!(r.cross_section(), vec![0, 4, 8]);
}

#[test]
fn serial_and_parallel_sweeps_agree_bitwise() {
    let c = single_rung(cfg(COSINE));
    let mut spec = SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c));
    spec.parallel = false;
    let a = sweep_coupling(&c, &spec).unwrap();
    spec.parallel = true;
    let b = sweep_coupling(&c, &spec).unwrap();
    for (x, y) in a.solutions.iter().zip(&b.solutions) {
        assert_eq!(x.eigenvalues, y.eigenvalues);
    }
}

#[test]
fn identical_runs_give_byte_identical_csv() {
    let c = single_rung(cfg(WELL));
    let spec = SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c));
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for i in 0..2 {
        let r = sweep_coupling(&c, &spec).unwrap();
        let p = dir.path().join(format!("s{i}.csv"));
        write_spectrum_csv(&r, &p).unwrap();
        texts.push(std::fs::read(&p).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn convergence_study_reports_every_rung() {
    let c = cfg(COSINE);
    let spec = SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c));
    let t = convergence_study(&c, &spec, 1e-3).unwrap();
    assert_eq!(t.rows.len(), 3);
    assert_eq!(t.rows[2].max_rel_deviation, 0.0);
    assert!(t.rows[0].max_rel_deviation >= t.rows[1].max_rel_deviation);
    assert_eq!(t.rows[0].per_point.len(), 4);
    assert_eq!(t.rows[1].dim, 64);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("convergence.csv");
    write_convergence_csv(&t, &p).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.starts_with("n_basis,n_fock,dim,max_rel_deviation,converged\n"));
    // a ladder is required
    let one = SweepSpec { ladder: vec![[16, 4]], ..spec };
    assert!(matches!(convergence_study(&c, &one, 1e-3), Err(Error::Config(_))));
}

#[test]
fn sweeps_with_a_ladder_record_the_deviation() {
    let c = cfg(COSINE);
    let r = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c))).unwrap();
    assert_eq!(r.rung, [12, 3]);
    assert!(r.solutions.iter().all(|s| s.ladder_delta.is_some()));
}

#[test]
fn spectra_vary_continuously_along_the_coupling_axis() {
    let mut c = single_rung(cfg(WELL));
    c.sweep.gammas = (0..11).map(|i| 0.5 + 0.01 * i as f64).collect();
    let r = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c))).unwrap();
    let e0: Vec<f64> = r.solutions.iter().map(|s| s.eigenvalues[0]).collect();
    let steps: Vec<f64> = e0.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let max = steps.iter().copied().fold(0.0, f64::max);
    let min = steps.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(max < 3.0 * min + 1e-9, "{steps:?}");
}

#[test]
fn pf_and_rad_share_the_runner() {
    let c = single_rung(cfg(WELL));
    let pf = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Pf, coupling_axis(&c))).unwrap();
    assert_eq!(pf.rung, [8, 5]);
    assert_eq!(pf.solutions[0].dim, 40);
    let rad = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c))).unwrap();
    assert!(rad.solutions[0].box_length.is_some());
    // weak coupling: both resolve the matter ground state
    assert!((pf.solutions[0].eigenvalues[0] - rad.solutions[0].eigenvalues[0]).abs() < 1e-2);
}

#[test]
fn invalid_specs_are_refused() {
    let well = single_rung(cfg(WELL));
    let cos = single_rung(cfg(COSINE));
    let bad = [
        (&well, Gauge::RadK, coupling_axis(&well)),
        (&well, Gauge::Ad, coupling_axis(&well)),
        (&well, Gauge::Rad, momentum_axis(&well)),
    ];
    for (c, g, a) in bad {
        let e = run_sweep(c, &SweepSpec::from_config(c, g, a)).unwrap_err();
        assert!(e.is_config(), "{g}: {e}");
    }
    let mut spec = SweepSpec::from_config(&well, Gauge::Pf, coupling_axis(&well));
    spec.observables.photon_number = true;
    assert!(matches!(run_sweep(&well, &spec), Err(Error::Unsupported(_))));
    let mut c = cos.clone();
    c.basis.k_box = 0.0;
    let e = run_sweep(&c, &SweepSpec::from_config(&c, Gauge::Rad, coupling_axis(&c))).unwrap_err();
    assert!(matches!(e, Error::Config(_)));
    let unsorted = Axis::Coupling { gamma_over_omega: vec![1.0, 0.5] };
    assert!(run_sweep(&cos, &SweepSpec::from_config(&cos, Gauge::Rad, unsorted)).is_err());
}

#[test]
fn run_json_round_trips_the_configuration() {
    let c = single_rung(cfg(COSINE));
    let r = sweep_coupling(&c, &SweepSpec::from_config(&c, Gauge::Ad, coupling_axis(&c))).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let written = persist(&c, "sweep-coupling", Some("ad"), false, Output::Spectrum(&r), dir.path()).unwrap();
    assert_eq!(written.len(), 2);
    let env = RunEnvelope::load(&dir.path().join("run.json")).unwrap();
    assert_eq!(env.schema_version, SCHEMA_VERSION);
    assert_eq!(env.config, c);
    assert_eq!(env.gauge.as_deref(), Some("ad"));
    assert_eq!(env.eigenvalues, r.solutions.iter().map(|s| s.eigenvalues.clone()).collect::<Vec<_>>());
    assert_eq!(RunConfig::load(&dir.path().join("run.json")).unwrap(), c);
}

#[test]
fn matter_outputs_are_written() {
    let c = cfg(WELL);
    let sol = matter_solve(&c).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let paths = write_matter(&c, &sol, dir.path()).unwrap();
    let csv = std::fs::read_to_string(&paths[0]).unwrap();
    assert!(csv.starts_with("index,energy\n"));
    assert_eq!(csv.lines().count(), 9);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&paths[1]).unwrap()).unwrap();
    assert!(json.get("wavefunctions").is_none());
    assert_eq!(json["dipoles"].as_array().unwrap().len(), 8);
}

#[test]
fn box_balance_stays_in_bracket_and_scales() {
    let m = radqed::matter::PotentialModel::DoubleWell { alpha: 3.0, beta: 3.85 };
    let mode = radqed::Mode::from_gamma(8.0, 0.8, -1.0, 1.0).unwrap();
    let l = balance_box(&m, 1.0, &mode, 24, 4, 4).unwrap();
    assert!((1.0..=16.0).contains(&l));
    let (xt, kt) = tail_weights(&m, 1.0, &mode, 24, 4, 4, l).unwrap();
    // balanced to within the bisection bracket
    assert!((xt.ln() - kt.ln()).abs() < 2.0, "{xt:e} {kt:e}");
    assert!((scale_box(2.0, 100, 400) - 4.0).abs() < 1e-15);
}

#[test]
fn band_width_removes_the_photon_zero_point() {
    let c = single_rung(cfg(COSINE));
    let r = sweep_dispersion(&c, &SweepSpec::from_config(&c, Gauge::RadK, momentum_axis(&c))).unwrap();
    let raw = band_width(&c, &r, 0, false).unwrap();
    let sub = band_width(&c, &r, 0, true).unwrap();
    assert!(raw > 0.0 && sub > 0.0 && raw != sub);
    let zp = zero_point(&c, &r.points[0]).unwrap();
    let w = 2.0f64;
    let wk = (w * w + (c.cavity.c * r.points[0].k).powi(2)).sqrt();
    let g = c.dispersion(0.5).gamma(r.points[0].k).unwrap();
    assert!((zp - 0.5 * (wk * wk + 2.0 * g * g).sqrt()).abs() < 1e-12);
}
