//! Acceptance suite: the release gate for the crate. Each test covers one
//! numbered criterion at its stated tolerance and prints a PASS line (run
//! with `--nocapture` to see them).

use std::f64::consts::PI;

use ndarray::{array, Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use sqz_core::entanglement::{assemble_bipartite, duan_value, reid_epr, BipartiteCovariance};
use sqz_core::gaussian::{GaussianState, SqueezeSpec};
use sqz_core::homodyne::{
    qdm_bin_frequencies, qdm_dual_readout, qdm_noise_floor, sample_quadratures,
    scanned_phase_trace, simulate_michelson_output, spectrum_analyzer, Disturbance, QdmScenario,
};
use sqz_core::noise_budget::{
    kappa, omega_sql, ponderomotive_squeezing_db, ponderomotive_transform, rpn_asd, shot_asd,
    sql_asd, total_quantum_noise_asd, FilterCavitySpec, Injection, InterferometerConfig,
    Normalization, Pendulum, SqlVariant, Susceptibility,
};
use sqz_core::phase_limits::csv_optimality_ratio;
use sqz_core::photon::pmf_table;
use sqz_core::spectrum::frequency_grid;

fn pass(criterion: u32, detail: &str) {
    println!("acceptance {criterion:02}: PASS - {detail}");
}

fn check(criterion: u32, what: &str, ok: bool, detail: String) {
    assert!(ok, "acceptance {criterion:02} FAIL - {what}: {detail}");
}

fn close(criterion: u32, what: &str, got: f64, expect: f64, tol: f64) {
    check(
        criterion,
        what,
        (got - expect).abs() <= tol,
        format!("got {got}, expected {expect} +- {tol}"),
    );
}

fn desk_config() -> InterferometerConfig {
    InterferometerConfig::new(
        4000.0,
        1550e-9,
        600.0,
        0.1,
        Pendulum {
            omega_m: 2.0 * PI,
            q: 1e7,
        },
        None,
    )
    .unwrap()
}

fn broadband_config() -> InterferometerConfig {
    InterferometerConfig::new(
        1e6,
        1550e-9,
        600.0,
        1.0,
        Pendulum {
            omega_m: 2.0 * PI,
            q: 1e7,
        },
        None,
    )
    .unwrap()
}

fn ten_db() -> GaussianState {
    GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(10.0, 0.0).unwrap()).unwrap()
}

/// Criterion 1: worked covariance matrices reproduced entrywise to 1e-9.
#[test]
fn criterion_01_covariance_literals() {
    let n = 1;
    let vac = GaussianState::vacuum(1).unwrap();
    for (i, v) in vac.cov().iter().enumerate() {
        close(n, "V_vac", *v, [1.0, 0.0, 0.0, 1.0][i], 1e-9);
    }
    let s0 = ten_db();
    let expect0 = array![[0.1, 0.0], [0.0, 10.0]];
    for (got, want) in s0.cov().iter().zip(expect0.iter()) {
        close(n, "V^0deg_0.1", *got, *want, 1e-9);
    }
    let s45 =
        GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(10.0, PI / 4.0).unwrap()).unwrap();
    let expect45 = array![[5.05, 4.95], [4.95, 5.05]];
    for (got, want) in s45.cov().iter().zip(expect45.iter()) {
        close(n, "V^45deg_0.1", *got, *want, 1e-9);
    }
    // the rotation identity behind the 45-degree literal
    let rotated = s0.rotate(0, PI / 4.0).unwrap();
    for (got, want) in rotated.cov().iter().zip(expect45.iter()) {
        close(n, "R^T V R", *got, *want, 1e-9);
    }
    let s_class = assemble_bipartite(&ten_db(), &ten_db(), PI / 2.0).unwrap();
    let expect_s = array![
        [5.05, 0.0, 4.95, 0.0],
        [0.0, 5.05, 0.0, -4.95],
        [4.95, 0.0, 5.05, 0.0],
        [0.0, -4.95, 0.0, 5.05]
    ];
    for (got, want) in s_class.cov().iter().zip(expect_s.iter()) {
        close(n, "V_10|10", *got, *want, 1e-9);
    }
    let v_class = assemble_bipartite(&ten_db(), &GaussianState::vacuum(1).unwrap(), 0.0).unwrap();
    let expect_v = array![
        [0.55, 0.0, 0.45, 0.0],
        [0.0, 5.5, 0.0, -4.5],
        [0.45, 0.0, 0.55, 0.0],
        [0.0, -4.5, 0.0, 5.5]
    ];
    for (got, want) in v_class.cov().iter().zip(expect_v.iter()) {
        close(n, "V_0|10", *got, *want, 1e-9);
    }
    pass(n, "V_vac, V^0, V^45, V_10|10, V_0|10 entrywise to 1e-9");
}

/// Criterion 2: ponderomotive matrices, the 0.38 eigen-minimum, 4.2 dB and
/// the -58 degree extraction angle.
#[test]
fn criterion_02_ponderomotive_matrices() {
    let n = 2;
    let k1 = ponderomotive_transform(&Array2::eye(2), 1.0);
    let expect1 = array![[1.0, -1.0], [-1.0, 2.0]];
    for (got, want) in k1.iter().zip(expect1.iter()) {
        close(n, "K^T I K", *got, *want, 1e-9);
    }
    let s45 = array![[5.05, 4.95], [4.95, 5.05]];
    let k2 = ponderomotive_transform(&s45, 1.0);
    let expect2 = array![[5.05, -0.1], [-0.1, 0.2]];
    for (got, want) in k2.iter().zip(expect2.iter()) {
        close(n, "K^T V45 K", *got, *want, 1e-9);
    }
    let (db, angle) = ponderomotive_squeezing_db(1.0);
    let vmin = (3.0 - 5.0_f64.sqrt()) / 2.0;
    close(n, "eigen-minimum", vmin, 0.382, 5e-4);
    close(n, "squeeze factor", db, 4.2, 0.05);
    close(n, "extraction angle", angle.to_degrees().abs(), 58.0, 1.0);
    pass(n, "K-transform literals, 0.382 minimum, 4.2 dB at |58 deg|");
}

/// Criterion 3: the six photon-number panel means within 1%, even-only
/// squeezed vacuum, and table mass at n_max = 400.
#[test]
fn criterion_03_photon_means() {
    let n = 3;
    let panels = [
        (Complex64::ZERO, 0.5, 0.0, 0.2716),
        (Complex64::ZERO, 1.0, 0.0, 1.381),
        (Complex64::ZERO, 2.0, 0.0, 13.15),
        (Complex64::new(4.0, 0.0), 1.0, 0.0, 17.38),
        (Complex64::new(4.0, 0.0), 1.0, PI / 2.0, 17.38),
        (Complex64::new(4.0, 0.0), 0.0, 0.0, 16.0),
    ];
    for (alpha, r, theta, expect) in panels {
        let table = pmf_table(alpha, r, theta, 400).unwrap();
        check(
            n,
            "table mass",
            table.mass() >= 1.0 - 1e-6,
            format!("mass {}", table.mass()),
        );
        let mean = table.sample_mean();
        check(
            n,
            "panel mean",
            (mean - expect).abs() <= 0.01 * expect,
            format!("mean {mean} vs {expect} (1%)"),
        );
        if alpha.norm() == 0.0 && r > 0.0 {
            let worst_odd = table
                .probs()
                .iter()
                .skip(1)
                .step_by(2)
                .cloned()
                .fold(0.0, f64::max);
            check(
                n,
                "odd-N probability",
                worst_odd < 1e-12,
                format!("{worst_odd}"),
            );
        }
    }
    pass(
        n,
        "panel means {0.2716, 1.381, 13.15, 17.38, 17.38, 16} within 1%, even-only support",
    );
}

/// Criterion 4: optimality ratios of the squeezed-vacuum strategy against
/// the fundamental lossy bound.
#[test]
fn criterion_04_optimality_ratios() {
    let n = 4;
    let r10 = 10f64.ln() / 2.0; // e^(-2r) = 0.1
    let r16 = -0.5 * 0.025_f64.ln();
    let r20 = -0.5 * 0.01_f64.ln();
    close(
        n,
        "10 dB at eta 0.62",
        csv_optimality_ratio(0.62, r10).unwrap(),
        1.08,
        0.005,
    );
    close(
        n,
        "16 dB at eta 0.62",
        csv_optimality_ratio(0.62, r16).unwrap(),
        1.02,
        0.005,
    );
    close(
        n,
        "20 dB at eta 0.9",
        csv_optimality_ratio(0.9, r20).unwrap(),
        1.044,
        0.005,
    );
    pass(
        n,
        "CSV-vs-fundamental ratios 1.08 / 1.02 / 1.044 within 0.005",
    );
}

/// Criterion 5: the SQL floor over 1e4 log-spaced frequencies, the
/// crossing identity and the frozen desk-scale numbers.
#[test]
fn criterion_05_sql_identities() {
    let n = 5;
    let cfg = desk_config();
    let om_sql = omega_sql(&cfg);
    close(n, "f_SQL", om_sql / (2.0 * PI), 7.4, 0.01);
    close(
        n,
        "shot ASD",
        shot_asd(&cfg, om_sql, Normalization::Displacement).unwrap(),
        9.87e-19,
        5e-22,
    );
    close(
        n,
        "kappa(Omega_SQL)",
        kappa(&cfg, om_sql).unwrap(),
        1.0,
        1e-12,
    );

    let grid = frequency_grid(1e-2, 1e6, 10_000, true).unwrap();
    for f in &grid {
        let om = 2.0 * PI * f;
        let total = total_quantum_noise_asd(&cfg, om, &Injection::None).unwrap();
        let sql = sql_asd(&cfg, om, SqlVariant::FreeMass).unwrap();
        check(
            n,
            "SQL floor",
            total >= sql * (1.0 - 1e-12),
            format!("f = {f}: total {total} < sql {sql}"),
        );
    }
    let total_at_sql = total_quantum_noise_asd(&cfg, om_sql, &Injection::None).unwrap();
    let sql_at_sql = sql_asd(&cfg, om_sql, SqlVariant::FreeMass).unwrap();
    check(
        n,
        "equality at Omega_SQL",
        ((total_at_sql - sql_at_sql) / sql_at_sql).abs() < 1e-9,
        format!("{total_at_sql} vs {sql_at_sql}"),
    );
    let shot = shot_asd(&cfg, om_sql, Normalization::Displacement).unwrap();
    let rpn = rpn_asd(
        &cfg,
        om_sql,
        Normalization::Displacement,
        Susceptibility::FreeMass,
    )
    .unwrap();
    check(
        n,
        "shot/RPN crossing",
        ((shot - rpn) / shot).abs() < 1e-9,
        format!("{shot} vs {rpn}"),
    );
    pass(
        n,
        "total >= SQL on 1e4 frequencies, equality and crossing at Omega_SQL, 7.4 Hz / 9.87e-19",
    );
}

/// Criterion 6: frequency-dependent 10 dB injection scales the PSD by 0.1
/// everywhere; fixed 45 degrees loses far above Omega_SQL.
#[test]
fn criterion_06_broadband_squeezing() {
    let n = 6;
    let cfg = broadband_config();
    let inj = Injection::OptimalFrequencyDependent {
        r: 10f64.ln() / 2.0,
    };
    let grid = frequency_grid(0.1, 1e5, 2_000, true).unwrap();
    for f in &grid {
        let om = 2.0 * PI * f;
        let plain = total_quantum_noise_asd(&cfg, om, &Injection::None).unwrap();
        let squeezed = total_quantum_noise_asd(&cfg, om, &inj).unwrap();
        let ratio = squeezed * squeezed / (plain * plain);
        check(
            n,
            "uniform PSD scaling",
            (ratio - 0.1).abs() < 1e-9,
            format!("f = {f}: PSD ratio {ratio}"),
        );
    }
    let fixed = Injection::FixedSqueeze(SqueezeSpec::from_db(10.0, PI / 4.0).unwrap());
    let om_sql = omega_sql(&cfg);
    for mult in [10.0, 20.0, 100.0, 1000.0] {
        let om = mult * om_sql;
        let with = total_quantum_noise_asd(&cfg, om, &fixed).unwrap();
        let without = total_quantum_noise_asd(&cfg, om, &Injection::None).unwrap();
        check(
            n,
            "fixed-angle pathology",
            with > without,
            format!("{mult} Omega_SQL: {with} <= {without}"),
        );
    }
    pass(
        n,
        "PSD x0.1 at every frequency; fixed 45 deg underperforms above 10 Omega_SQL",
    );
}

/// Criterion 7: filter-cavity rotation magnitude at the measured
/// configuration.
#[test]
fn criterion_07_filter_cavity() {
    let n = 7;
    let spec = FilterCavitySpec::single(15.15e6, 0.735e6);
    let rot = sqz_core::noise_budget::filter_cavity_rotation(&spec, 14.1e6)
        .unwrap()
        .to_degrees()
        .abs();
    close(n, "rotation magnitude", rot, 40.0, 10.0);
    pass(
        n,
        &format!("15.15 MHz detuned cavity rotates 14.1 MHz sidebands by {rot:.1} deg"),
    );
}

/// Criterion 8: Duan and Reid values for the worked bipartite states.
#[test]
fn criterion_08_entanglement_values() {
    let n = 8;
    let s_class = assemble_bipartite(&ten_db(), &ten_db(), PI / 2.0).unwrap();
    let v_class = assemble_bipartite(&ten_db(), &GaussianState::vacuum(1).unwrap(), 0.0).unwrap();
    let vacua = BipartiteCovariance::new(Array2::eye(4)).unwrap();
    close(n, "Duan S-class", duan_value(&s_class), 0.2, 1e-9);
    close(n, "Duan V-class", duan_value(&v_class), 1.1, 1e-9);
    check(
        n,
        "Duan vacua",
        duan_value(&vacua) == 2.0,
        format!("{}", duan_value(&vacua)),
    );
    close(n, "Reid S-class", reid_epr(&s_class).unwrap(), 0.0392, 1e-4);
    check(
        n,
        "Reid vacua boundary",
        reid_epr(&vacua).unwrap() == 1.0,
        format!("{}", reid_epr(&vacua).unwrap()),
    );
    pass(n, "Duan 0.2 / 1.1 / 2.0 and Reid 0.0392 / 1.0");
}

/// Criterion 9: statistical soundness of traces, analyzer flatness,
/// scanned-phase envelope of a 5 dB source.
#[test]
fn criterion_09_statistical_suite() {
    let n = 9;
    let samples = 1_000_000;
    let tol = 5.0 * (2.0 / samples as f64).sqrt();
    let cases = [
        (GaussianState::vacuum(1).unwrap(), 0.0, 1.0),
        (ten_db(), 0.0, 0.1),
        (ten_db(), PI / 2.0, 10.0),
        (
            GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(5.0, 0.7).unwrap()).unwrap(),
            0.3,
            GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(5.0, 0.7).unwrap())
                .unwrap()
                .quadrature_variance(0, 0.3)
                .unwrap(),
        ),
    ];
    for (i, (state, theta, expect)) in cases.iter().enumerate() {
        let trace = sample_quadratures(state, 0, *theta, samples, 1000 + i as u64).unwrap();
        let var = trace.sample_variance();
        check(
            n,
            "trace variance",
            ((var - expect) / expect).abs() <= tol,
            format!("case {i}: {var} vs {expect} (rel tol {tol})"),
        );
    }

    let white = simulate_michelson_output(0.0, 0.01, 0.0, 131_072.0, 1.0, 5).unwrap();
    let spec = spectrum_analyzer(&white, 1.0 / 64.0).unwrap();
    for (f, v) in spec.grid().iter().zip(spec.values()) {
        check(
            n,
            "analyzer flatness",
            v.abs() <= 0.5,
            format!("bin {f}: {v} dB"),
        );
    }

    let source = GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(5.0, 0.0).unwrap()).unwrap();
    let env = scanned_phase_trace(&source, 0, (0.0, 2.0 * PI), 1 << 18, 1024, 21).unwrap();
    let min = env.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let max = env
        .values()
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    close(n, "envelope minimum", min, -5.0, 0.75);
    close(n, "envelope maximum", max, 5.0, 0.75);
    pass(
        n,
        "1e6-sample variances at 5 sigma_stat, analyzer flat to 0.5 dB, +-5 dB envelope",
    );
}

/// Criterion 10: QDM: no signal leaks into the amplitude readout, tones
/// are vetoed at 5 sigma without false positives, floors at or below
/// -6 dB under the documented loss assumption.
#[test]
fn criterion_10_qdm_scenario() {
    let n = 10;
    // signal only: amplitude readout must stay empty
    let signal_only = QdmScenario {
        disturbance: Disturbance {
            amp: 0.0,
            freq_hz: 20.0 / 128.0,
            angle_rad: 0.0,
        },
        ..QdmScenario::default()
    };
    let readout = qdm_dual_readout(&signal_only).unwrap();
    let floor = qdm_noise_floor(signal_only.squeeze_db_b, signal_only.efficiency_sq);
    let sigma_stat = (floor / readout.trace_b.len() as f64).sqrt();
    check(
        n,
        "no signal in amplitude readout",
        readout.trace_b.sample_mean().abs() < 5.0 * sigma_stat,
        format!("mean {}", readout.trace_b.sample_mean()),
    );
    check(
        n,
        "no false veto",
        readout.veto_mask.iter().all(|m| !m),
        format!(
            "{} bins flagged",
            readout.veto_mask.iter().filter(|m| **m).count()
        ),
    );

    // with the disturbance on, its bin is flagged
    let scenario = QdmScenario::default();
    let readout = qdm_dual_readout(&scenario).unwrap();
    let freqs = qdm_bin_frequencies(&readout).unwrap();
    let hit = freqs
        .iter()
        .zip(&readout.veto_mask)
        .any(|(f, m)| *m && (f - scenario.disturbance.freq_hz).abs() <= 1.5 * scenario.rbw_hz);
    check(n, "disturbance veto", hit, "tone bin not flagged".into());

    // floors of both readouts at or below -6 dB (documented loss model:
    // 7.5 dB sources, 8% loss)
    for (label, trace, db) in [
        ("A", &readout.trace_a, scenario.squeeze_db_a),
        ("B", &readout.trace_b, scenario.squeeze_db_b),
    ] {
        let spec = spectrum_analyzer(trace, scenario.rbw_hz).unwrap();
        let mut quiet: Vec<f64> = spec
            .grid()
            .iter()
            .zip(spec.values())
            .filter(|(f, _)| {
                (**f - scenario.disturbance.freq_hz).abs() > 3.0 * scenario.rbw_hz
                    && (**f - scenario.signal.freq_hz).abs() > 3.0 * scenario.rbw_hz
            })
            .map(|(_, v)| *v)
            .collect();
        quiet.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = quiet[quiet.len() / 2];
        check(
            n,
            "readout floor",
            median <= -6.0,
            format!("readout {label}: floor {median} dB"),
        );
        let expect = 10.0 * qdm_noise_floor(db, scenario.efficiency_sq).log10();
        close(n, "floor matches the loss model", median, expect, 0.25);
    }
    pass(
        n,
        "signal isolation, 5-sigma veto without false positives, floors <= -6 dB",
    );
}

/// Criterion 11: the loss channel equals a beam splitter against vacuum
/// followed by tracing out the ancilla, on 100 random states to 1e-9.
#[test]
fn criterion_11_loss_channel_oracle() {
    let n = 11;
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for case in 0..100 {
        let r = rng.random_range(0.0..2.0);
        let theta = rng.random_range(0.0..PI);
        let dx = rng.random_range(-3.0..3.0);
        let dy = rng.random_range(-3.0..3.0);
        let eta_sq: f64 = rng.random_range(0.0..1.0);
        let state = GaussianState::squeezed_vacuum(&SqueezeSpec::pure(r, theta).unwrap())
            .unwrap()
            .displace(0, dx, dy)
            .unwrap();

        let direct = state.apply_loss(0, eta_sq).unwrap();

        // oracle: mix with vacuum at transmissivity eta_sq, then keep only
        // the first mode's block
        let joint = state
            .tensor(&GaussianState::vacuum(1).unwrap())
            .beam_splitter(0, 1, eta_sq, 0.0)
            .unwrap();
        let mut cov = Array2::<f64>::zeros((2, 2));
        for i in 0..2 {
            for j in 0..2 {
                cov[[i, j]] = joint.cov()[[i, j]];
            }
        }
        let mean = Array1::from(vec![joint.mean()[0], joint.mean()[1]]);

        for (got, want) in direct.cov().iter().zip(cov.iter()) {
            check(
                n,
                "cov agreement",
                (got - want).abs() < 1e-9,
                format!("case {case}: {got} vs {want}"),
            );
        }
        for (got, want) in direct.mean().iter().zip(mean.iter()) {
            check(
                n,
                "mean agreement",
                (got - want).abs() < 1e-9,
                format!("case {case}: {got} vs {want}"),
            );
        }
    }
    pass(
        n,
        "apply_loss == beam splitter + trace-out on 100 random states to 1e-9",
    );
}
