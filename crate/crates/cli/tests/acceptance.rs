//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::{Matrix2, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use qedab::constants::{ALPHA, C, HBAR};
use qedab::{
    coupling_g, evolve, f_factor, f_from_mode, g_from_potential, qubit_spectrum,
    solve_lowest_mode, spontaneous_rate, BasisState, CavityGeometry, CavityMode, DecayParams,
    JCSystem, QubitParams, QubitSpectrum,
};
use qedab_cli::config::default_fig2_grid;
use qedab_cli::run::dressed_pair_numeric;
use qedab_cli::{default_scenario, run_fig2};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value / target - 1.0).abs() <= rel
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn reference_geometry() -> CavityGeometry {
    CavityGeometry::from_ratios(2.5e-3, 0.1, 1e-3).unwrap()
}

fn reference_system() -> JCSystem {
    let geom = reference_geometry();
    let mode = solve_lowest_mode(&geom).unwrap();
    let q = QubitSpectrum::from_splitting(mode.omega, 1.0).unwrap();
    let c = coupling_g(&mode, &geom, &q).unwrap();
    JCSystem::new(mode.omega, mode.omega, c.g_angular).with_theta(c.potential.theta)
}

fn linspace(t_end: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| t_end * i as f64 / (points - 1) as f64).collect()
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, input) => format!("{name}: {why} at {input:?}"),
        TestError::Abort(why) => format!("{name}: aborted: {why}"),
    })
}

fn ac1_mode_frequency() -> Outcome {
    let (mode, elapsed) = timed(|| solve_lowest_mode(&reference_geometry()));
    let mode = mode.map_err(|e| e.to_string())?;
    let f = mode.frequency_hz();
    ensure(within(f, 9.09e9, 0.01), || format!("omega/2pi = {f:.6e} Hz"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("omega/2pi = {:.4} GHz in {elapsed:.2?}", f / 1e9))
}

fn ac2_coupling() -> Outcome {
    let (out, elapsed) = timed(|| {
        let geom = reference_geometry();
        let mode = solve_lowest_mode(&geom)?;
        let q = QubitSpectrum::from_splitting(mode.omega, 1.0)?;
        let c = coupling_g(&mode, &geom, &q)?;
        Ok::<_, qedab::Error>((c.g_angular, g_from_potential(&c.potential, &q)))
    });
    let (g, g_potential) = out.map_err(|e| e.to_string())?;
    let g_hz = g / (2.0 * PI);
    let routes = (g_potential / g - 1.0).abs();
    ensure(within(g_hz, 5.27e6, 0.02), || format!("g/2pi = {g_hz:.6e} Hz"))?;
    ensure(routes <= 1e-10, || format!("routes differ by {routes:.2e}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "g/2pi = {:.4} MHz, routes agree to {routes:.1e}, {elapsed:.2?}",
        g_hz / 1e6
    ))
}

fn ac3_decay() -> Outcome {
    let (rate, elapsed) = timed(|| DecayParams::new(2.0 * PI * 5e9, 300e-9, 1.0).map(|p| spontaneous_rate(&p)));
    let rate = rate.map_err(|e| e.to_string())?;
    let life = 1.0 / rate;
    ensure((0.72..=0.95).contains(&life), || format!("1/Gamma = {life} s"))?;
    ensure(elapsed < Duration::from_millis(100), || format!("took {elapsed:?}"))?;
    Ok(format!("1/Gamma = {life:.4} s in {elapsed:.2?}"))
}

fn ac4_fig2() -> Outcome {
    let (out, elapsed) = timed(|| {
        let f = f_factor(0.1)?;
        let mut scenario = default_scenario();
        scenario.simulation.delta_rho_over_rho1 = default_fig2_grid();
        let a = run_fig2(&scenario).map_err(|e| qedab::Error::Domain(e.to_string()))?;
        let b = run_fig2(&scenario).map_err(|e| qedab::Error::Domain(e.to_string()))?;
        Ok::<_, qedab::Error>((f, a, b))
    });
    let (f, a, b) = out.map_err(|e| e.to_string())?;
    ensure(within(f, 0.215, 0.05), || format!("f(0.1) = {f}"))?;
    ensure(a.text == b.text, || "fig2 output differs between runs".into())?;
    ensure(a.warnings.is_empty(), || format!("row failures: {:?}", a.warnings))?;
    let rows: Vec<&str> = a.text.lines().collect();
    ensure(rows[0] == "delta_rho_over_rho1,f_factor", || format!("header {}", rows[0]))?;
    let first: f64 = rows[1].split(',').next().unwrap().parse().unwrap();
    let last: f64 = rows[rows.len() - 1].split(',').next().unwrap().parse().unwrap();
    ensure(first == 0.05 && last == 1.0 && rows.len() == 21, || {
        format!("grid {first}..{last}, {} rows", rows.len() - 1)
    })?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("f(0.1) = {f:.4}, 20 rows identical across runs, {elapsed:.2?}"))
}

fn ac5_avoided_crossing() -> Outcome {
    let base = reference_system();
    let g = base.g;
    let pair = |delta: f64| {
        dressed_pair_numeric(&JCSystem { omega_q: base.omega + delta, n_cut: 1, ..base })
            .map(|(p, m)| (p - base.omega, m - base.omega))
            .map_err(|e| e.to_string())
    };
    let (plus, minus) = pair(0.0)?;
    let gap_err = ((plus - minus) / (2.0 * g) - 1.0).abs();
    ensure(gap_err < 1e-9, || format!("gap / 2g - 1 = {gap_err:.2e}"))?;
    // the gap is the minimum over a fine sweep
    for i in 1..=50 {
        let (p, m) = pair(g * i as f64 * 0.1)?;
        ensure(p - m > plus - minus, || format!("gap shrinks at delta = {}g", i as f64 * 0.1))?;
    }
    let mut worst: f64 = 0.0;
    for delta in [20.0 * g, -20.0 * g] {
        let (p, m) = pair(delta)?;
        let shift = g * g / delta;
        // branches approach {Δ, 0}, displaced by ±g²/Δ
        let (qubit_like, cavity_like) = if delta > 0.0 { (p, m) } else { (m, p) };
        worst = worst
            .max(((qubit_like - delta) / shift - 1.0).abs())
            .max((-cavity_like / shift - 1.0).abs());
    }
    ensure(worst < 0.025, || format!("dispersive shift off by {worst:.3e}"))?;
    Ok(format!("gap = 2g to {gap_err:.1e}, dispersive shift within {:.2}% at 20g", worst * 100.0))
}

fn ac6_vacuum_rabi() -> Outcome {
    let sys = reference_system();
    let g = sys.g;
    let periods = 10.0;
    let times = linspace(periods * 2.0 * PI / (2.0 * g), 4001);
    let r = evolve(&sys, &BasisState::excited(0).into(), &times).map_err(|e| e.to_string())?;
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for (i, t) in times.iter().enumerate() {
        let cos2 = (g * t).cos().powi(2);
        worst.0 = worst.0.max((r.p_excited[i] - cos2).abs());
        worst.1 = worst.1.max((r.p_excited[i] + r.n_photon[i] - 1.0).abs());
        worst.2 = worst.2.max((r.norm[i] - 1.0).abs());
    }
    ensure(worst.0 <= 1e-9, || format!("|P_e - cos^2(gt)| = {:.2e}", worst.0))?;
    ensure(worst.1 <= 1e-9, || format!("|P_e + n - 1| = {:.2e}", worst.1))?;
    ensure(worst.2 < 1e-10, || format!("norm drift {:.2e}", worst.2))?;
    Ok(format!(
        "{periods} periods: cos^2 {:.1e}, P_e + n {:.1e}, norm {:.1e}",
        worst.0, worst.1, worst.2
    ))
}

/// Classical fourth-order Runge-Kutta for `i dψ/dt = Hψ` with a dense
/// complex matrix.
fn rk4(h: &[Vec<Complex64>], psi: &mut [Complex64], dt: f64, steps: usize) {
    let dim = psi.len();
    let mi = Complex64::new(0.0, -1.0);
    let deriv = |v: &[Complex64]| -> Vec<Complex64> {
        (0..dim)
            .map(|r| mi * h[r].iter().zip(v).map(|(a, b)| a * b).sum::<Complex64>())
            .collect()
    };
    for _ in 0..steps {
        let k1 = deriv(psi);
        let y: Vec<_> = (0..dim).map(|i| psi[i] + 0.5 * dt * k1[i]).collect();
        let k2 = deriv(&y);
        let y: Vec<_> = (0..dim).map(|i| psi[i] + 0.5 * dt * k2[i]).collect();
        let k3 = deriv(&y);
        let y: Vec<_> = (0..dim).map(|i| psi[i] + dt * k3[i]).collect();
        let k4 = deriv(&y);
        for i in 0..dim {
            psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
}

/// RWA Hamiltonian in the frame rotating at ω(a†a + |e⟩⟨e|), built
/// independently of the library.
fn rotating_frame_hamiltonian(sys: &JCSystem) -> Vec<Vec<Complex64>> {
    let dim = sys.dimension();
    let mut h = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    let delta = sys.omega_q - sys.omega;
    for n in 0..=sys.n_cut {
        h[2 * n + 1][2 * n + 1] = Complex64::new(delta, 0.0);
    }
    let phase = Complex64::from_polar(1.0, sys.theta);
    for n in 0..sys.n_cut {
        let amp = sys.g * ((n + 1) as f64).sqrt();
        let (e, gnd) = (2 * n + 1, 2 * (n + 1));
        h[e][gnd] = amp * phase;
        h[gnd][e] = amp * phase.conj();
    }
    h
}

fn ac7_oracles() -> Outcome {
    let base = reference_system();
    let g = base.g;
    let mut worst_rk: f64 = 0.0;
    for (delta, start) in [(0.0, BasisState::excited(0)), (0.7 * g, BasisState::excited(1))] {
        let sys = JCSystem { omega_q: base.omega + delta, ..base }
            .with_n_cut(JCSystem::default_n_cut(start.photons, true));
        let rabi = (4.0 * g * g * (start.excitations() as f64) + delta * delta).sqrt();
        let dt = 1e-3 / rabi;
        let stride = 250;
        let samples = 160;
        let times: Vec<f64> = (0..=samples).map(|i| (i * stride) as f64 * dt).collect();
        let exact = evolve(&sys, &start.into(), &times).map_err(|e| e.to_string())?;
        let h = rotating_frame_hamiltonian(&sys);
        let mut psi = vec![Complex64::new(0.0, 0.0); sys.dimension()];
        psi[start.index()] = Complex64::new(1.0, 0.0);
        for (i, p_exact) in exact.p_excited.iter().enumerate() {
            if i > 0 {
                rk4(&h, &mut psi, dt, stride);
            }
            let p_rk: f64 = psi.iter().skip(1).step_by(2).map(|z| z.norm_sqr()).sum();
            worst_rk = worst_rk.max((p_rk - p_exact).abs());
        }
    }
    ensure(worst_rk <= 1e-6, || format!("propagator vs RK4: {worst_rk:.2e}"))?;

    let full = base.with_rwa(false).with_n_cut(JCSystem::default_n_cut(0, false));
    let times = linspace(10.0 * 2.0 * PI / (2.0 * g), 2001);
    let r = evolve(&full, &BasisState::excited(0).into(), &times).map_err(|e| e.to_string())?;
    let worst_rwa = times
        .iter()
        .zip(&r.p_excited)
        .map(|(t, p)| (p - (g * t).cos().powi(2)).abs())
        .fold(0.0, f64::max);
    ensure(worst_rwa < 1e-4, || format!("non-RWA deviation {worst_rwa:.2e}"))?;
    Ok(format!(
        "RK4 agreement {worst_rk:.1e}, non-RWA deviation {worst_rwa:.1e} at g/omega = {:.2e}",
        g / base.omega
    ))
}

fn beta_closed_form(a: f64, b: f64, x1: f64, x2: f64) -> f64 {
    let anti = |x: f64| {
        (a * a + b * b) * x / 2.0 + (b * b - a * a) * (2.0 * x).sin() / 4.0
            - a * b * (2.0 * x).cos() / 2.0
    };
    2.0 / PI * (anti(x2) - anti(x1))
}

fn ac8_properties() -> Outcome {
    // qubit eigensolver vs closed form
    property(
        "qubit splitting",
        1000,
        (1.0f64..20.0, 0.5f64..20.0, 0.0f64..1.0),
        |(ec, ej, ng)| {
            let p = QubitParams::from_hz(ec * 1e9, ej * 1e9, ng).unwrap();
            let unit = 6.626_070_15e-25;
            let m = Matrix2::new(
                p.charge_energy(0) / unit,
                -0.5 * p.e_j / unit,
                -0.5 * p.e_j / unit,
                p.charge_energy(1) / unit,
            );
            let ev = SymmetricEigen::new(m).eigenvalues;
            let dense = (ev[0] - ev[1]).abs() * unit / HBAR;
            let s = qubit_spectrum(&p);
            prop_assert!((dense / s.omega_q - 1.0).abs() < 1e-12);
            Ok(())
        },
    )?;

    // β quadrature vs antiderivative
    property("beta quadrature", 64, 0.02f64..5.0, |ratio| {
        let g = CavityGeometry::from_ratios(2.5e-3, ratio, 1e-3).unwrap();
        let m = solve_lowest_mode(&g).unwrap();
        let c = beta_closed_form(m.coeff_a, m.coeff_b, m.k * g.rho1(), m.k * g.rho2());
        prop_assert!((m.beta / c - 1.0).abs() < 1e-9);
        Ok(())
    })?;

    // f invariance under ρ₁ scaling and (A, B) rescaling
    property(
        "f invariance",
        64,
        (0.02f64..3.0, 1e-4f64..1.0, 0.1f64..10.0),
        |(ratio, rho1, s)| {
            let g = CavityGeometry::from_ratios(rho1, ratio, 1e-3).unwrap();
            let m = solve_lowest_mode(&g).unwrap();
            let f = f_from_mode(&m, &g).unwrap();
            let f_ref = f_factor(ratio).unwrap();
            prop_assert!((f / f_ref - 1.0).abs() < 1e-10);
            let mut scaled = CavityMode { coeff_a: s * m.coeff_a, coeff_b: s * m.coeff_b, ..m };
            scaled.beta = qedab::beta_factor(&scaled, &g).unwrap();
            prop_assert!((f_from_mode(&scaled, &g).unwrap() / f - 1.0).abs() < 1e-10);
            Ok(())
        },
    )?;

    // θ drops out of every observable
    let g = 2.0 * PI * 5.27e6;
    let omega = 2.0 * PI * 9.09e9;
    property(
        "theta invariance",
        24,
        (-PI..PI, -3.0f64..3.0, 0usize..3, any::<bool>(), any::<bool>()),
        |(theta, delta, photons, excited, rwa)| {
            let start = if excited { BasisState::excited(photons) } else { BasisState::ground(photons) };
            let n_cut = JCSystem::default_n_cut(photons, rwa);
            let mk = |th: f64| {
                JCSystem::new(omega, omega + delta * g, g).with_theta(th).with_rwa(rwa).with_n_cut(n_cut)
            };
            let times = linspace(3.0 * 2.0 * PI / (2.0 * g), 121);
            let a = evolve(&mk(0.0), &start.into(), &times).unwrap();
            let b = evolve(&mk(theta), &start.into(), &times).unwrap();
            for i in 0..times.len() {
                prop_assert!((a.p_excited[i] - b.p_excited[i]).abs() < 1e-12);
                prop_assert!((a.n_photon[i] - b.n_photon[i]).abs() < 1e-12);
                prop_assert!((a.norm[i] - b.norm[i]).abs() < 1e-12);
            }
            Ok(())
        },
    )?;

    // Γ ∝ ω_q³ ℓ² sin²γ
    property(
        "decay scaling",
        256,
        (1e9f64..1e11, 1e-8f64..1e-5, 0.01f64..1.0),
        |(w, l, sg)| {
            let rate = |w: f64, l: f64, sg: f64| spontaneous_rate(&DecayParams::new(w, l, sg).unwrap());
            let base = rate(w, l, sg);
            let direct = 16.0 * ALPHA * l * l * w.powi(3) * sg * sg / (3.0 * C * C);
            prop_assert!((base / direct - 1.0).abs() < 1e-12);
            prop_assert!((rate(2.0 * w, l, sg) / base / 8.0 - 1.0).abs() < 1e-12);
            prop_assert!((rate(w, 3.0 * l, sg) / base / 9.0 - 1.0).abs() < 1e-12);
            prop_assert!((rate(w, l, 0.5 * sg) / base / 0.25 - 1.0).abs() < 1e-12);
            Ok(())
        },
    )?;

    Ok("qubit, beta, f invariance, theta invariance, decay scaling".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC-1", "mode frequency", ac1_mode_frequency),
        ("AC-2", "coupling strength", ac2_coupling),
        ("AC-3", "decay rate", ac3_decay),
        ("AC-4", "f sweep", ac4_fig2),
        ("AC-5", "dressed branches", ac5_avoided_crossing),
        ("AC-6", "vacuum Rabi oscillation", ac6_vacuum_rabi),
        ("AC-7", "oracle equivalence", ac7_oracles),
        ("AC-8", "property suites", ac8_properties),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("{id} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
