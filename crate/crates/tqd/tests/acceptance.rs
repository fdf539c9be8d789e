//! Acceptance suite: one integration test per shipping criterion. Every test
//! prints a single `acceptance criterion N (<label>): pass|fail` line before
//! asserting, so `cargo test --test acceptance -- --nocapture` produces a
//! compact scoreboard. Failures additionally list every violated check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tqd::discord::{self, Bipartition};
use tqd::linalg::{self, kron, ComplexMatrix};
use tqd::model::{
    DensityMatrix, MagneticImpurityParams, ModelSpec, SpinImpurityParams, Temperature,
};
use tqd::sweep::{
    self, Branch, FixedParams, GapReference, ModelFamily, ParameterName, SweepSpec, SweptParameter,
    DEFAULT_GAP_THRESHOLD,
};

/// Print the scoreboard line, then fail the test with details if needed.
fn verdict(n: usize, label: &str, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!(
        "acceptance criterion {n} ({label}): {}",
        if ok { "pass" } else { "fail" }
    );
    assert!(
        ok,
        "acceptance criterion {n} ({label}): {} check(s) failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

fn spin(j1: f64, j: f64) -> ModelSpec {
    ModelSpec::Spin(SpinImpurityParams { j1, j })
}

fn magnetic(j: f64, b: f64) -> ModelSpec {
    ModelSpec::Magnetic(MagneticImpurityParams { j, b })
}

fn thermal_discord(model: ModelSpec, t: f64, bip: Bipartition) -> f64 {
    let rho = model.thermal_state(Temperature::new(t).unwrap()).unwrap();
    discord::discord(&rho, bip).unwrap().discord
}

fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| min + (max - min) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Random two-qubit X state with equal middle populations and complex
/// coherence phases, drawn inside the positivity bounds |u| ≤ √(ad), |v| ≤ b.
fn random_x_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let mut raw = [0.0f64; 3];
    for r in &mut raw {
        *r = rng.gen_range(0.01..1.0);
    }
    let norm = raw[0] + 2.0 * raw[1] + raw[2];
    let (a, b, d) = (raw[0] / norm, raw[1] / norm, raw[2] / norm);
    let u = Complex64::from_polar(
        rng.gen_range(0.0..1.0) * (a * d).sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let v = Complex64::from_polar(
        rng.gen_range(0.0..1.0) * b,
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let mut m = ComplexMatrix::zeros(4);
    m.set(0, 0, Complex64::new(a, 0.0));
    m.set(1, 1, Complex64::new(b, 0.0));
    m.set(2, 2, Complex64::new(b, 0.0));
    m.set(3, 3, Complex64::new(d, 0.0));
    m.set(0, 3, u);
    m.set(3, 0, u.conj());
    m.set(1, 2, v);
    m.set(2, 1, v.conj());
    DensityMatrix::new(m, vec![2, 2]).unwrap()
}

/// Random density matrix from a complex Gaussian square: ρ = GG†/tr.
fn random_state(rng: &mut ChaCha8Rng, dim: usize, dims: Vec<usize>) -> DensityMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(
                i,
                j,
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
    }
    let gg = g.matmul(&g.dagger());
    let trace = gg.trace().re;
    DensityMatrix::new(gg.scale(Complex64::new(1.0 / trace, 0.0)), dims).unwrap()
}

/// Random 2×2 unitary via Gram–Schmidt on a complex Gaussian matrix.
fn random_unitary_2(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g: Vec<Complex64> = (0..4)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm0 = (g[0].norm_sqr() + g[2].norm_sqr()).sqrt();
    let c0 = [g[0] / norm0, g[2] / norm0];
    let overlap = c0[0].conj() * g[1] + c0[1].conj() * g[3];
    let r1 = [g[1] - overlap * c0[0], g[3] - overlap * c0[1]];
    let norm1 = (r1[0].norm_sqr() + r1[1].norm_sqr()).sqrt();
    let mut u = ComplexMatrix::zeros(2);
    u.set(0, 0, c0[0]);
    u.set(1, 0, c0[1]);
    u.set(0, 1, r1[0] / norm1);
    u.set(1, 1, r1[1] / norm1);
    u
}

#[test]
fn criterion_1_spectrum_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut failures = Vec::new();
    let check = |model: ModelSpec, failures: &mut Vec<String>| {
        let analytic = model.analytic_spectrum();
        let numeric = linalg::eigvalsh(&model.hamiltonian()).unwrap();
        for (k, (a, n)) in analytic.iter().zip(&numeric).enumerate() {
            if (a - n).abs() > 1e-9 {
                failures.push(format!("{model:?} level {k}: analytic {a} vs numeric {n}"));
            }
        }
    };
    for _ in 0..200 {
        let model = spin(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        check(model, &mut failures);
    }
    for _ in 0..200 {
        let model = magnetic(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        check(model, &mut failures);
    }
    verdict(1, "spectrum agreement", failures);
}

#[test]
fn criterion_2_ground_state_plateaus() {
    // Each ground regime pins a parameter-independent plateau; 4-digit
    // references, 1e-3 absolute tolerance.
    let checks = [
        (1.0, -3.0, Bipartition::Pair12, 1.0 / 3.0),
        (1.0, 0.0, Bipartition::Pair12, 0.0),
        (1.0, 2.0, Bipartition::Pair12, 0.4425),
        (1.0, 0.0, Bipartition::Pair23, 1.0),
        (1.0, 2.0, Bipartition::Pair23, 1.0 / 3.0),
        (1.0, 2.0, Bipartition::OneVsRest123, 0.9183),
        (1.0, -3.0, Bipartition::OneVsRest123, 0.4591),
        (1.0, 0.0, Bipartition::OneVsRest123, 0.0),
        (-1.0, 1.0, Bipartition::Pair12, 0.4425),
        (-1.0, 1.0, Bipartition::OneVsRest123, 0.9183),
        (-1.0, -1.0, Bipartition::Pair12, 1.0 / 3.0),
        (-1.0, -1.0, Bipartition::OneVsRest123, 0.4591),
    ];
    let mut failures = Vec::new();
    for (j, j1, bip, expected) in checks {
        let got = sweep::zero_temperature_discord(spin(j1, j), bip).unwrap();
        if (got - expected).abs() > 1e-3 {
            failures.push(format!(
                "J={j}, J1={j1}, {}: got {got}, expected {expected}",
                bip.label()
            ));
        }
    }
    verdict(2, "ground-state plateaus", failures);
}

#[test]
fn criterion_3_finite_temperature_asymptotes() {
    // Far out on the impurity-coupling axis the thermal discord must sit on
    // the corresponding plateau even at nonzero temperature.
    let mut failures = Vec::new();
    for t in [0.5, 1.5] {
        for (j1, bip, expected) in [
            (1e4, Bipartition::Pair12, 0.4425),
            (-1e4, Bipartition::Pair12, 1.0 / 3.0),
            (1e4, Bipartition::Pair23, 1.0 / 3.0),
            (-1e4, Bipartition::Pair23, 1.0 / 3.0),
        ] {
            let got = thermal_discord(spin(j1, 1.0), t, bip);
            if (got - expected).abs() > 1e-3 {
                failures.push(format!(
                    "T={t}, J1={j1}, {}: got {got}, expected {expected}",
                    bip.label()
                ));
            }
        }
    }
    verdict(3, "finite-temperature asymptotes", failures);
}

#[test]
fn criterion_4_fitted_critical_lines() {
    // J1c(T) is linear over T ∈ [1, 10] on every branch; slopes within 2%
    // relative, intercepts within 0.05 absolute.
    let targets = [
        (1.0, Branch::J1Positive, Bipartition::Pair12, 3.401, 1.001),
        (1.0, Branch::J1Negative, Bipartition::Pair12, -7.450, -2.001),
        (
            -1.0,
            Branch::J1Positive,
            Bipartition::Pair12,
            3.401,
            -0.9846,
        ),
        (-1.0, Branch::J1Negative, Bipartition::Pair12, -7.45, 1.999),
        (1.0, Branch::J1Positive, Bipartition::Pair23, 4.245, 1.001),
        (1.0, Branch::J1Negative, Bipartition::Pair23, -8.144, -2.001),
        (
            -1.0,
            Branch::J1Positive,
            Bipartition::Pair23,
            4.245,
            -0.9992,
        ),
        (-1.0, Branch::J1Negative, Bipartition::Pair23, -8.144, 1.999),
    ];
    let temps = sweep::default_fit_temperatures();
    let failures: Vec<String> = targets
        .par_iter()
        .flat_map(|&(j, branch, bip, slope, intercept)| {
            let fit = sweep::fit_critical_line(
                j,
                branch,
                bip,
                &temps,
                DEFAULT_GAP_THRESHOLD,
                GapReference::Plateau,
            )
            .unwrap();
            let mut local = Vec::new();
            let slope_err = (fit.slope - slope).abs() / slope.abs();
            if slope_err > 0.02 {
                local.push(format!(
                    "J={j}, {}, {}: slope {} vs {slope} ({:.2}% off)",
                    branch.label(),
                    bip.label(),
                    fit.slope,
                    100.0 * slope_err
                ));
            }
            if (fit.intercept - intercept).abs() > 0.05 {
                local.push(format!(
                    "J={j}, {}, {}: intercept {} vs {intercept}",
                    branch.label(),
                    bip.label(),
                    fit.intercept
                ));
            }
            local
        })
        .collect();
    verdict(4, "fitted critical lines", failures);
}

#[test]
fn criterion_5_magnetic_impurity_asymptote() {
    let spec = SweepSpec {
        model: ModelFamily::Magnetic,
        swept: SweptParameter {
            parameter: ParameterName::B,
            min: 0.0,
            max: 20.0,
            points: 401,
        },
        fixed: FixedParams {
            j1: None,
            j: Some(1.0),
            b: None,
        },
        temperatures: vec![0.25],
        bipartitions: vec![Bipartition::Pair12, Bipartition::Pair23],
    };
    let rows = sweep::run_sweep(&spec).unwrap();
    let series = |bip: Bipartition| -> Vec<(f64, f64)> {
        rows.iter()
            .filter(|r| r.bipartition == bip)
            .map(|r| (r.model.b().unwrap(), r.discord))
            .collect()
    };
    let d23 = series(Bipartition::Pair23);
    let d12 = series(Bipartition::Pair12);

    let mut failures = Vec::new();
    for pair in d23.windows(2) {
        let ((b0, v0), (b1, v1)) = (pair[0], pair[1]);
        if b0 >= 5.0 && v1 < v0 - 1e-9 {
            failures.push(format!(
                "D(2,3) decreases from B={b0} ({v0}) to B={b1} ({v1})"
            ));
        }
    }
    let last = d23.last().unwrap();
    if last.1 <= 0.95 {
        failures.push(format!("D(2,3) at B=20 is {}, expected > 0.95", last.1));
    }
    let (first12, last12) = (d12.first().unwrap(), d12.last().unwrap());
    if last12.1 >= first12.1 {
        failures.push(format!(
            "D(1,2) at B=20 ({}) not below its B=0 value ({})",
            last12.1, first12.1
        ));
    }
    verdict(5, "magnetic-impurity asymptote", failures);
}

#[test]
fn criterion_6_xstate_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let random_states: Vec<DensityMatrix> = (0..500).map(|_| random_x_state(&mut rng)).collect();

    let mut failures: Vec<String> = random_states
        .par_iter()
        .enumerate()
        .filter_map(|(k, rho)| {
            let fast = discord::xstate_discord(rho).unwrap().discord;
            let grid = discord::grid_discord(rho, Bipartition::Pair12)
                .unwrap()
                .discord;
            ((fast - grid).abs() > 1e-6)
                .then(|| format!("random state {k}: fast {fast} vs grid {grid}"))
        })
        .collect();

    // Thermal reduced states across ground regimes and temperatures.
    let mut thermal_cases = Vec::new();
    for &j1 in &linspace(-6.0, 4.0, 10) {
        for &t in &linspace(0.2, 2.0, 10) {
            for bip in [Bipartition::Pair12, Bipartition::Pair23] {
                thermal_cases.push((j1, t, bip));
            }
        }
    }
    failures.extend(
        thermal_cases
            .par_iter()
            .filter_map(|&(j1, t, bip)| {
                let rho = spin(j1, 1.0)
                    .thermal_state(Temperature::new(t).unwrap())
                    .unwrap();
                let keep: &[usize] = match bip {
                    Bipartition::Pair12 => &[0, 1],
                    _ => &[1, 2],
                };
                let pair = discord::partial_trace(&rho, keep).unwrap();
                let fast = discord::xstate_discord(&pair).unwrap().discord;
                let grid = discord::grid_discord(&pair, Bipartition::Pair12)
                    .unwrap()
                    .discord;
                ((fast - grid).abs() > 1e-6).then(|| {
                    format!(
                        "thermal J1={j1}, T={t}, {}: fast {fast} vs grid {grid}",
                        bip.label()
                    )
                })
            })
            .collect::<Vec<String>>(),
    );
    verdict(6, "x-state oracle equivalence", failures);
}

#[test]
fn criterion_7_property_suite() {
    let mut failures = Vec::new();

    // Pair-vs-whole monotonicity and range checks across both panels of the
    // impurity-coupling sweeps at the three reference temperatures.
    let mut grid_cases = Vec::new();
    for &j in &[1.0, -1.0] {
        for &t in &[0.5, 1.0, 1.5] {
            for &j1 in &linspace(-12.0, 8.0, 401) {
                grid_cases.push((j, t, j1));
            }
        }
    }
    let grid_failures: Vec<String> = grid_cases
        .par_iter()
        .flat_map(|&(j, t, j1)| {
            let rho = spin(j1, j)
                .thermal_state(Temperature::new(t).unwrap())
                .unwrap();
            let d12 = discord::discord(&rho, Bipartition::Pair12).unwrap().discord;
            let d123 = discord::discord(&rho, Bipartition::OneVsRest123)
                .unwrap()
                .discord;
            let mut local = Vec::new();
            for (label, v) in [("D(1,2)", d12), ("D(1,23)", d123)] {
                if !(-1e-9..=1.0 + 1e-9).contains(&v) {
                    local.push(format!("J={j}, T={t}, J1={j1}: {label} = {v} out of range"));
                }
            }
            if d123 < d12 - 1e-6 {
                local.push(format!(
                    "J={j}, T={t}, J1={j1}: D(1,23) = {d123} below D(1,2) = {d12}"
                ));
            }
            local
        })
        .collect();
    failures.extend(grid_failures);

    // The chain is symmetric under swapping qubits 2 and 3.
    let mut rng = ChaCha8Rng::seed_from_u64(2003);
    for _ in 0..25 {
        let model = spin(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let t = rng.gen_range(0.1..2.0);
        let rho = model.thermal_state(Temperature::new(t).unwrap()).unwrap();
        let d12 = discord::discord(&rho, Bipartition::Pair12).unwrap().discord;
        let d13 = discord::discord(&rho, Bipartition::Pair13).unwrap().discord;
        if (d12 - d13).abs() > 1e-9 {
            failures.push(format!("{model:?}, T={t}: D(1,2)={d12} vs D(1,3)={d13}"));
        }
    }

    // Discord is invariant under local unitaries on either party.
    let unitary_cases: Vec<(DensityMatrix, ComplexMatrix)> = (0..100)
        .map(|_| {
            let rho = random_state(&mut rng, 4, vec![2, 2]);
            let u = kron(&random_unitary_2(&mut rng), &random_unitary_2(&mut rng));
            (rho, u)
        })
        .collect();
    let unitary_failures: Vec<String> = unitary_cases
        .par_iter()
        .enumerate()
        .filter_map(|(k, (rho, u))| {
            let rotated =
                DensityMatrix::new(u.matmul(rho.matrix()).matmul(&u.dagger()), vec![2, 2]).unwrap();
            let original = discord::discord(rho, Bipartition::Pair12).unwrap().discord;
            let transformed = discord::discord(&rotated, Bipartition::Pair12)
                .unwrap()
                .discord;
            ((original - transformed).abs() > 1e-6)
                .then(|| format!("case {k}: {original} vs {transformed} after local unitary"))
        })
        .collect();
    failures.extend(unitary_failures);

    // Gibbs states: unit trace, positive semidefinite, commute with H.
    for _ in 0..20 {
        let model = if rng.gen_bool(0.5) {
            spin(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0))
        } else {
            magnetic(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0))
        };
        let t = rng.gen_range(0.05..3.0);
        let rho = model.thermal_state(Temperature::new(t).unwrap()).unwrap();
        let trace_err = (rho.matrix().trace().re - 1.0).abs();
        if trace_err > 1e-10 {
            failures.push(format!("{model:?}, T={t}: trace off by {trace_err}"));
        }
        let min_eig = rho.min_eigenvalue();
        if min_eig < -1e-10 {
            failures.push(format!("{model:?}, T={t}: negative eigenvalue {min_eig}"));
        }
        let h = model.hamiltonian();
        let comm = rho
            .matrix()
            .matmul(&h)
            .sub(&h.matmul(rho.matrix()))
            .entries()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if comm > 1e-9 {
            failures.push(format!("{model:?}, T={t}: [rho, H] norm {comm}"));
        }
    }

    verdict(7, "property suite", failures);
}

#[test]
fn criterion_8_reentrance() {
    // At J1 = 0 qubit 1 decouples exactly, so D(1,2) vanishes identically at
    // every temperature — warming from that point cannot raise it. The
    // temperature-enhanced regime lives at interior couplings of the
    // −2J < J1 < J ground phase, checked here on both sides of zero.
    let mut failures = Vec::new();
    for t in [0.0, 1.0] {
        let d = thermal_discord(spin(0.0, 1.0), t, Bipartition::Pair12);
        if d.abs() > 1e-9 {
            failures.push(format!(
                "decoupled impurity at T={t}: D(1,2) = {d}, expected 0"
            ));
        }
    }
    for j1 in [-1.0, 0.5] {
        let cold = thermal_discord(spin(j1, 1.0), 0.0, Bipartition::Pair12);
        let warm = thermal_discord(spin(j1, 1.0), 1.0, Bipartition::Pair12);
        if warm - cold < 1e-3 {
            failures.push(format!(
                "J1={j1}: warming 0→1 moved D(1,2) from {cold} to {warm}, no enhancement"
            ));
        }
    }
    verdict(8, "reentrance", failures);
}
