//! Exit criteria. Each test prints one `[PASS]`/`[FAIL]` line and asserts.
//!
//! Run with output visible:
//! `cargo test --release -p beamtrack --test acceptance -- --nocapture --test-threads=1`

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use beamtrack::array_channel::{measure_double_sum, measure_inner_product, Link};
use beamtrack::ekf::{
    jacobian_gain, jacobian_position, jacobian_velocity, GainTransition, KinematicTracker, StateTransition,
    StateVector,
};
use beamtrack::geometry::{angles_from_position, wrap_angle, Scenario};
use beamtrack::harness::{emit_csv, run_sweep, ExperimentConfig, FilterKind, SweepResults};
use beamtrack::truth::{self, trial_rng, NoiseParams, TruthState};
use beamtrack::{BeamPointing, ComplexGain};

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name}: {detail}");
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn crossing(r: &SweepResults, snr: f64, speed: f64, kind: FilterKind) -> Option<usize> {
    r.get(snr, speed, kind).expect("cell present").curve.crossing
}

fn within(value: Option<usize>, target: f64, frac: f64) -> bool {
    value.is_some_and(|v| ((v as f64) - target).abs() <= frac * target)
}

fn fmt_crossings(values: &[Option<usize>]) -> String {
    values
        .iter()
        .map(|v| v.map_or("none".to_string(), |b| b.to_string()))
        .collect::<Vec<_>>()
        .join("/")
}

fn strictly(values: &[Option<usize>], increasing: bool) -> bool {
    values.iter().all(Option::is_some)
        && values.windows(2).all(|w| {
            let (a, b) = (w[0].unwrap(), w[1].unwrap());
            if increasing {
                b > a
            } else {
                b < a
            }
        })
}

#[test]
fn c1_jacobians_match_finite_differences() {
    let start = Instant::now();
    let s = Scenario::default();
    let link = Link::symmetric(16, s);
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let (hd, ha) = (1e-6, 1e-4);
    let hv = hd / s.dt;
    let mut worst = [0.0f64; 4];
    for _ in 0..500 {
        let x = StateVector::new(
            rng.gen_range(0.5..40.0),
            rng.gen_range(-30.0..30.0),
            rng.gen_range(-1.5..1.5),
            rng.gen_range(-1.5..1.5),
        );
        // beams within a couple of beamwidths of the true direction
        let a = angles_from_position(x.d + x.v * s.dt + rng.gen_range(-0.5..0.5), &s);
        let p = BeamPointing {
            theta_bar: a.theta + rng.gen_range(-0.05..0.05),
            phi_bar: a.phi + rng.gen_range(-0.05..0.05),
        };
        let g = |y: StateVector| measure_double_sum(y.gain(), y.d, y.v, p, &link);
        let fd_d = (g(StateVector { d: x.d + hd, ..x }) - g(StateVector { d: x.d - hd, ..x })) / (2.0 * hd);
        let fd_v = (g(StateVector { v: x.v + hv, ..x }) - g(StateVector { v: x.v - hv, ..x })) / (2.0 * hv);
        let fd_re = (g(StateVector { alpha_re: x.alpha_re + ha, ..x })
            - g(StateVector { alpha_re: x.alpha_re - ha, ..x }))
            / (2.0 * ha);
        let fd_im = (g(StateVector { alpha_im: x.alpha_im + ha, ..x })
            - g(StateVector { alpha_im: x.alpha_im - ha, ..x }))
            / (2.0 * ha);
        let (gr, gi) = jacobian_gain(&x, p, &link);
        let errs = [
            rel(jacobian_position(&x, p, &link), fd_d),
            rel(jacobian_velocity(&x, p, &link), fd_v),
            rel(gr, fd_re),
            rel(gi, fd_im),
        ];
        for (w, e) in worst.iter_mut().zip(errs) {
            *w = w.max(e);
        }
    }
    let elapsed = start.elapsed();
    let pass = worst.iter().all(|&e| e < 1e-6) && elapsed < Duration::from_secs(10);
    report(
        1,
        "Jacobians vs central differences (500 states, N=16)",
        pass,
        &format!(
            "max rel err d {:.1e}, v {:.1e}, re {:.1e}, im {:.1e}; {:.2?}",
            worst[0], worst[1], worst[2], worst[3], elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn c2_double_sum_equals_inner_product() {
    let start = Instant::now();
    let s = Scenario::default();
    let link = Link::symmetric(16, s);
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let d = rng.gen_range(0.0..50.0);
        let v = rng.gen_range(-30.0..30.0);
        let gain = ComplexGain::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let a = angles_from_position(d + v * s.dt + rng.gen_range(-1.0..1.0), &s);
        let p = BeamPointing {
            theta_bar: a.theta + rng.gen_range(-0.1..0.1),
            phi_bar: a.phi + rng.gen_range(-0.1..0.1),
        };
        let truth_angles = angles_from_position(d + v * s.dt, &s);
        let zi = measure_inner_product(gain, truth_angles.theta, truth_angles.phi, p, &link.rx, &link.tx, link.pilot);
        let zd = measure_double_sum(gain, d, v, p, &link);
        worst = worst.max(rel(zd, zi));
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-10 && elapsed < Duration::from_secs(5);
    report(
        2,
        "double-sum observation equals inner product (1000 cases)",
        pass,
        &format!("max rel err {worst:.1e}; {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn c3_matched_beams_return_gain() {
    let s = Scenario::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut worst = 0.0f64;
    for n in 1..=64 {
        let link = Link::symmetric(n, s);
        let gain = ComplexGain::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let (d, v) = (rng.gen_range(0.0..20.0), rng.gen_range(-25.0..25.0));
        let a = angles_from_position(d + v * s.dt, &s);
        let p = BeamPointing {
            theta_bar: a.theta,
            phi_bar: a.phi,
        };
        let expected = gain.to_complex() * link.pilot;
        let zi = measure_inner_product(gain, a.theta, a.phi, p, &link.rx, &link.tx, link.pilot);
        let zd = measure_double_sum(gain, d, v, p, &link);
        let ts = TruthState {
            d: d + v * s.dt,
            v,
            alpha: gain,
            k: 0,
        };
        let np = NoiseParams::new(0.0, 0.0, 1.0).unwrap();
        let zt = truth::observe(&ts, p, &link, &np, &mut trial_rng(0, 0));
        for z in [zi, zd, zt] {
            worst = worst.max((z - expected).norm());
        }
    }
    let pass = worst < 1e-12;
    report(
        3,
        "matched beams with zero noise return alpha*s (N=1..64)",
        pass,
        &format!("max |error| {worst:.1e}"),
    );
    assert!(pass);
}

#[test]
fn c4_snr_sweep() {
    let start = Instant::now();
    let cfg = ExperimentConfig::fig2();
    let r = run_sweep(&cfg).unwrap();
    let full = [0.0, 5.0, 10.0].map(|snr| crossing(&r, snr, 60.0, FilterKind::Proposed));
    let full_time = start.elapsed();

    let start = Instant::now();
    let small = run_sweep(&ExperimentConfig {
        n_trials: 300,
        ..ExperimentConfig::fig2()
    })
    .unwrap();
    let small_x = [0.0, 5.0, 10.0].map(|snr| crossing(&small, snr, 60.0, FilterKind::Proposed));
    let small_time = start.elapsed();

    let in_band = full.iter().zip([99.0, 142.0, 193.0]).all(|(&v, t)| within(v, t, 0.20));
    let pass = in_band && strictly(&full, true) && strictly(&small_x, true) && small_time < Duration::from_secs(30);
    report(
        4,
        "SNR 0/5/10 dB crossings within 20% of 99/142/193, increasing",
        pass,
        &format!(
            "3000 trials: {} ({full_time:.1?}); 300 trials: {} ({small_time:.1?})",
            fmt_crossings(&full),
            fmt_crossings(&small_x)
        ),
    );
    assert!(pass);
}

#[test]
fn c5_speed_sweep() {
    let r = run_sweep(&ExperimentConfig::table1()).unwrap();
    let speeds = [50.0, 60.0, 70.0, 80.0];
    let got = speeds.map(|v| crossing(&r, 0.0, v, FilterKind::Proposed));
    let in_band = got.iter().zip([109.0, 100.0, 91.0, 83.0]).all(|(&v, t)| within(v, t, 0.20));
    let pass = in_band && strictly(&got, false);
    report(
        5,
        "50/60/70/80 km/h crossings within 20% of 109/100/91/83, decreasing",
        pass,
        &fmt_crossings(&got),
    );
    assert!(pass);
}

#[test]
fn c6_proposed_vs_baseline() {
    let r = run_sweep(&ExperimentConfig::fig4()).unwrap();
    let proposed = crossing(&r, 0.0, 60.0, FilterKind::Proposed);
    let baseline = crossing(&r, 0.0, 60.0, FilterKind::Baseline);
    let gain = match (proposed, baseline) {
        (Some(p), Some(b)) => Some(p as f64 / b as f64 - 1.0),
        _ => None,
    };
    let pass = gain.is_some_and(|g| (g - 0.49).abs() <= 0.15);
    report(
        6,
        "proposed tracks 49% +- 15 pp longer than baseline at 0 dB",
        pass,
        &format!(
            "proposed {}, baseline {}, improvement {}",
            fmt_crossings(&[proposed]),
            fmt_crossings(&[baseline]),
            gain.map_or("n/a".to_string(), |g| format!("{:.1}%", 100.0 * g))
        ),
    );
    assert!(pass);
}

#[test]
fn c7_filter_health() {
    // (a) covariance stays symmetric and PSD over 10^5 filter steps
    let cfg = ExperimentConfig::default();
    let s = Scenario::new(cfg.h, cfg.dt).unwrap();
    let link = Link::symmetric(cfg.n_antennas, s);
    let st = StateTransition::new(cfg.dt, cfg.rho, cfg.sigma_w, GainTransition::Identity).unwrap();
    let (mut worst_asym, mut worst_eig, mut steps) = (0.0f64, f64::INFINITY, 0usize);
    for trial in 0..400u64 {
        let snr = [0.0, 5.0, 10.0, 20.0][trial as usize % 4];
        let sigma_n2 = truth::noise_variance_for_snr(snr, 1.0);
        let np = NoiseParams::new(cfg.sigma_w, sigma_n2, cfg.rho).unwrap();
        let mut rng = trial_rng(77, trial);
        let init = TruthState {
            d: 3.0,
            v: 60.0 / 3.6,
            alpha: truth::init_alpha(&mut rng),
            k: 0,
        };
        let trace = truth::simulate(init, &np, &s, 250, &mut rng);
        let x0 = StateVector::new(init.d, init.v, init.alpha.re, init.alpha.im);
        let mut tracker = KinematicTracker::new(x0, st, link, sigma_n2);
        for (ts, noise) in &trace.blocks {
            let z = truth::observe_noiseless(ts, tracker.pointing(), &link) + noise;
            tracker.observe(z).unwrap();
            let p = tracker.state.p;
            worst_asym = worst_asym.max((p - p.transpose()).abs().max());
            let min_eig = SymmetricEigen::new(p).eigenvalues.min();
            worst_eig = worst_eig.min(min_eig);
            steps += 1;
        }
    }
    let psd = worst_asym <= 1e-9 && worst_eig >= -1e-9;

    // (b) noiseless truth and exact initialization keep the beams on target
    let mut worst_err = 0.0f64;
    for (filter_sigma_w, filter_rho, filter_sigma_n2) in [(0.28, 0.995, 1.0), (0.0, 1.0, 1e-12)] {
        let st = StateTransition::new(cfg.dt, filter_rho, filter_sigma_w, GainTransition::Identity).unwrap();
        let np = NoiseParams::new(0.0, 0.0, 1.0).unwrap();
        let init = TruthState {
            d: 3.0,
            v: 60.0 / 3.6,
            alpha: ComplexGain::new(0.6, -0.7),
            k: 0,
        };
        let trace = truth::simulate(init, &np, &s, 100, &mut trial_rng(5, 0));
        let x0 = StateVector::new(init.d, init.v, init.alpha.re, init.alpha.im);
        let mut tracker = KinematicTracker::new(x0, st, link, filter_sigma_n2);
        for (ts, _) in &trace.blocks {
            let beams = tracker.pointing();
            let a = ts.angles(&s);
            worst_err = worst_err
                .max(wrap_angle(a.phi - beams.phi_bar).abs())
                .max(wrap_angle(a.theta - beams.theta_bar).abs());
            tracker.observe(truth::observe_noiseless(ts, beams, &link)).unwrap();
        }
    }
    let consistent = worst_err < 1e-6;

    let pass = psd && consistent && steps >= 100_000;
    report(
        7,
        "covariance symmetric/PSD over 1e5 steps; noiseless pointing error < 1e-6 rad",
        pass,
        &format!(
            "{steps} steps, max asymmetry {worst_asym:.1e}, min eigenvalue {worst_eig:.1e}; \
             max noiseless pointing error {worst_err:.1e} rad"
        ),
    );
    assert!(pass);
    assert!(worst_err < PI);
}

#[test]
fn c8_deterministic_csv() {
    let base = ExperimentConfig {
        n_trials: 200,
        n_blocks: 120,
        snr_db: vec![0.0, 10.0],
        filter: beamtrack::harness::FilterSelection::Both,
        seed: 99,
        ..ExperimentConfig::default()
    };
    let dirs: Vec<_> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    for (dir, workers) in dirs.iter().zip([1, 1, 4]) {
        let cfg = ExperimentConfig {
            workers,
            ..base.clone()
        };
        emit_csv(&run_sweep(&cfg).unwrap(), dir.path()).unwrap();
    }
    let read_all = |dir: &std::path::Path| {
        let mut files: Vec<_> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|p| (p.file_name().unwrap().to_owned(), std::fs::read(&p).unwrap()))
            .collect::<Vec<_>>()
    };
    let outputs: Vec<_> = dirs.iter().map(|d| read_all(d.path())).collect();
    let pass = outputs[0].len() == 5 && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    report(
        8,
        "identical config and seed give byte-identical CSVs across runs and worker counts",
        pass,
        &format!("{} files compared across 3 runs (1, 1, 4 workers)", outputs[0].len()),
    );
    assert!(pass);
}
