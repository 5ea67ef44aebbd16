//! Command implementations behind the `sqz` binary: each one reads a flat
//! config, runs the corresponding simulation module, and emits a CSV table
//! plus a JSON document carrying provenance metadata (pinned constants,
//! config echo, seed, version).
//!
//! CSV is the regression format: comma separator, `\n` line endings,
//! mandatory header row, numbers in scientific notation with 9 significant
//! digits. The JSON mirror embeds the verbatim config text, so a run can
//! be reproduced from its output alone.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::json;

use crate::cli::config::FlatConfig;
use crate::constants::{C, HBAR};
use crate::entanglement::{assemble_bipartite, duan_value, reid_epr, BipartiteCovariance};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, SqueezeSpec};
use crate::homodyne::{
    qdm_bin_frequencies, qdm_dual_readout, qdm_noise_floor, simulate_michelson_output,
    spectrum_analyzer, Disturbance, QdmScenario, Tone,
};
use crate::noise_budget::{
    omega_sql, rpn_asd, shot_asd, sql_asd, total_quantum_noise_asd, ArmCavity, Injection,
    InterferometerConfig, Normalization, Pendulum, SqlVariant, Susceptibility,
};
use crate::phase_space::WignerGrid;
use crate::photon::pmf_table;
use crate::spectrum::frequency_grid;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Map library errors onto the documented process exit codes.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::InvalidArgument(_) | Error::Io(_) => EXIT_CONFIG,
        Error::Domain(_) | Error::NumericRange(_) => EXIT_DOMAIN,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub seed: u64,
}

#[derive(Debug, Clone)]
enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 9 significant digits, scientific
            Cell::Num(v) => format!("{v:.8e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone)]
struct Table {
    columns: Vec<String>,
    units: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn csv_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Everything a finished command hands back to `main`.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub files: Vec<PathBuf>,
    pub stdout: String,
}

struct RunDoc {
    command: &'static str,
    table: Table,
    warnings: Vec<String>,
    summary: serde_json::Value,
    report: Option<String>,
}

fn json_text(doc: &RunDoc, cfg: &FlatConfig, opts: &RunOptions) -> String {
    let value = json!({
        "metadata": {
            "version": env!("CARGO_PKG_VERSION"),
            "command": doc.command,
            "constants": { "hbar_js": HBAR, "c_m_per_s": C },
            "seed": opts.seed,
            "columns": doc.table.columns,
            "units": doc.table.units,
            "warnings": doc.warnings,
            "summary": doc.summary,
            "config_text": cfg.raw(),
        },
        "data": {
            "rows": doc.table.rows.iter()
                .map(|row| row.iter().map(Cell::json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        },
    });
    let mut text = serde_json::to_string_pretty(&value).expect("json serialization");
    text.push('\n');
    text
}

fn emit(doc: RunDoc, cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    let mut files = Vec::new();
    let mut stdout = String::new();
    match (&opts.out, opts.format) {
        (Some(path), OutputFormat::Csv) => {
            std::fs::write(path, doc.table.csv_text())?;
            files.push(path.clone());
            let mirror = mirror_json_path(path);
            std::fs::write(&mirror, json_text(&doc, cfg, opts))?;
            files.push(mirror);
        }
        (Some(path), OutputFormat::Json) => {
            std::fs::write(path, json_text(&doc, cfg, opts))?;
            files.push(path.clone());
        }
        (None, OutputFormat::Csv) => stdout.push_str(&doc.table.csv_text()),
        (None, OutputFormat::Json) => stdout.push_str(&json_text(&doc, cfg, opts)),
    }
    // the human-readable report only accompanies file output, so piped
    // CSV/JSON stays machine-parsable
    if let Some(report) = &doc.report {
        if !files.is_empty() {
            stdout.push_str(report);
        }
    }
    for w in &doc.warnings {
        stdout.push_str(&format!("warning: {w}\n"));
    }
    Ok(CommandResult { files, stdout })
}

fn mirror_json_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

pub fn run_command(name: &str, cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    match name {
        "noise-budget" => cmd_noise_budget(cfg, opts),
        "photon-stats" => cmd_photon_stats(cfg, opts),
        "wigner" => cmd_wigner(cfg, opts),
        "homodyne-sim" => cmd_homodyne_sim(cfg, opts),
        "qdm" => cmd_qdm(cfg, opts),
        "entanglement" => cmd_entanglement(cfg, opts),
        other => Err(Error::config(format!("unknown command `{other}`"))),
    }
}

fn interferometer_from(cfg: &FlatConfig) -> Result<InterferometerConfig> {
    let pendulum = Pendulum {
        omega_m: 2.0 * PI * cfg.f64_or("interferometer", "pendulum_f_hz", 1.0)?,
        q: cfg.f64_or("interferometer", "pendulum_q", 1e7)?,
    };
    let arm_cavity = cfg
        .get_f64("interferometer", "arm_cavity_t_fp")?
        .map(|t_fp| ArmCavity { t_fp });
    InterferometerConfig::new(
        cfg.require_f64("interferometer", "power_w")?,
        cfg.require_f64("interferometer", "wavelength_m")?,
        cfg.require_f64("interferometer", "arm_length_m")?,
        cfg.require_f64("interferometer", "mirror_mass_kg")?,
        pendulum,
        arm_cavity,
    )
}

pub fn cmd_noise_budget(cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    cfg.check_known(&[
        (
            "interferometer",
            &[
                "power_w",
                "wavelength_m",
                "arm_length_m",
                "mirror_mass_kg",
                "pendulum_f_hz",
                "pendulum_q",
                "arm_cavity_t_fp",
            ],
        ),
        ("grid", &["f_min_hz", "f_max_hz", "points", "spacing"]),
        ("injection", &["mode", "squeeze_db", "angle_deg", "eta"]),
        ("output", &["normalization", "susceptibility"]),
    ])?;
    let ifo = interferometer_from(cfg)?;
    let points = cfg.usize_or("grid", "points", 0)?;
    if points == 0 {
        return Err(Error::config("grid needs points >= 1"));
    }
    let log_spaced = match cfg.str_or("grid", "spacing", "log") {
        "log" => true,
        "linear" => false,
        other => {
            return Err(Error::config(format!(
                "spacing must be log|linear, got {other}"
            )))
        }
    };
    let grid = frequency_grid(
        cfg.require_f64("grid", "f_min_hz")?,
        cfg.require_f64("grid", "f_max_hz")?,
        points,
        log_spaced,
    )?;
    let norm = match cfg.str_or("output", "normalization", "displacement") {
        "displacement" => Normalization::Displacement,
        "strain" => Normalization::Strain,
        other => {
            return Err(Error::config(format!(
                "normalization must be displacement|strain, got {other}"
            )))
        }
    };
    let susceptibility = match cfg.str_or("output", "susceptibility", "free_mass") {
        "free_mass" => Susceptibility::FreeMass,
        "pendulum" => Susceptibility::Pendulum,
        other => {
            return Err(Error::config(format!(
                "susceptibility must be free_mass|pendulum, got {other}"
            )))
        }
    };
    let injection = match cfg.str_or("injection", "mode", "none") {
        "none" => Injection::None,
        "optimal" => Injection::OptimalFrequencyDependent {
            r: cfg.require_f64("injection", "squeeze_db")? * 10f64.ln() / 20.0,
        },
        "fixed" => {
            let db = cfg.require_f64("injection", "squeeze_db")?;
            let theta = cfg.f64_or("injection", "angle_deg", 45.0)?.to_radians();
            let eta = cfg.f64_or("injection", "eta", 1.0)?;
            Injection::FixedSqueeze(SqueezeSpec::new(db * 10f64.ln() / 20.0, theta, eta)?)
        }
        other => {
            return Err(Error::config(format!(
                "injection mode must be none|fixed|optimal, got {other}"
            )))
        }
    };
    let sql_variant = if ifo.arm_cavity.is_some() {
        SqlVariant::WithArmCavities
    } else {
        SqlVariant::FreeMass
    };
    let length_scale = match norm {
        Normalization::Displacement => 1.0,
        Normalization::Strain => ifo.arm_length_m,
    };
    let mut rows = Vec::with_capacity(grid.len());
    for f in &grid {
        let om = 2.0 * PI * f;
        let shot = shot_asd(&ifo, om, norm)?;
        let rpn = rpn_asd(&ifo, om, norm, susceptibility)?;
        let sql = sql_asd(&ifo, om, sql_variant)? / length_scale;
        let total = total_quantum_noise_asd(&ifo, om, &Injection::None)? / length_scale;
        let injected = total_quantum_noise_asd(&ifo, om, &injection)? / length_scale;
        rows.push(vec![
            Cell::Num(*f),
            Cell::Num(shot),
            Cell::Num(rpn),
            Cell::Num(sql),
            Cell::Num(total),
            Cell::Num(injected),
        ]);
    }
    let unit = match norm {
        Normalization::Displacement => "m/sqrt(Hz)",
        Normalization::Strain => "1/sqrt(Hz)",
    };
    let om_sql = omega_sql(&ifo);
    let doc = RunDoc {
        command: "noise-budget",
        table: Table {
            columns: ["f_hz", "shot", "rpn", "sql", "total", "total_injected"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            units: vec![
                "Hz".into(),
                unit.into(),
                unit.into(),
                unit.into(),
                unit.into(),
                unit.into(),
            ],
            rows,
        },
        warnings: Vec::new(),
        summary: json!({
            "omega_sql_rad_s": om_sql,
            "f_sql_hz": om_sql / (2.0 * PI),
            "normalization": unit,
        }),
        report: None,
    };
    emit(doc, cfg, opts)
}

pub fn cmd_photon_stats(cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    cfg.check_known(&[("photon", &["alpha_re", "alpha_im", "r", "theta", "n_max"])])?;
    let n_max = cfg.usize_or("photon", "n_max", 400)?;
    // (label, alpha, r, theta); the default run reproduces the six
    // canonical panels: three squeezed vacua, two displaced squeezed
    // states, one coherent state
    let panels: Vec<(String, Complex64, f64, f64)> = if cfg.get_str("photon", "r").is_some() {
        let alpha = Complex64::new(
            cfg.f64_or("photon", "alpha_re", 0.0)?,
            cfg.f64_or("photon", "alpha_im", 0.0)?,
        );
        vec![(
            "p".to_string(),
            alpha,
            cfg.require_f64("photon", "r")?,
            cfg.f64_or("photon", "theta", 0.0)?,
        )]
    } else {
        vec![
            ("p_sqz_r0p5".into(), Complex64::ZERO, 0.5, 0.0),
            ("p_sqz_r1".into(), Complex64::ZERO, 1.0, 0.0),
            ("p_sqz_r2".into(), Complex64::ZERO, 2.0, 0.0),
            ("p_disp_r1_amp".into(), Complex64::new(4.0, 0.0), 1.0, 0.0),
            (
                "p_disp_r1_phase".into(),
                Complex64::new(4.0, 0.0),
                1.0,
                PI / 2.0,
            ),
            ("p_coherent_a4".into(), Complex64::new(4.0, 0.0), 0.0, 0.0),
        ]
    };
    let mut tables = Vec::new();
    let mut warnings = Vec::new();
    for (label, alpha, r, theta) in &panels {
        let t = pmf_table(*alpha, *r, *theta, n_max)?;
        if t.mass() < 1.0 - 1e-6 {
            warnings.push(format!(
                "panel {label}: n_max = {n_max} captures only mass {:.9}",
                t.mass()
            ));
        }
        tables.push(t);
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![Cell::Int(n as i64)];
        row.extend(tables.iter().map(|t| Cell::Num(t.probs()[n])));
        rows.push(row);
    }
    let mut columns = vec!["n".to_string()];
    columns.extend(panels.iter().map(|(label, ..)| label.clone()));
    let mut units = vec!["photon number".to_string()];
    units.extend(std::iter::repeat_n("probability".to_string(), panels.len()));
    let doc = RunDoc {
        command: "photon-stats",
        table: Table {
            columns,
            units,
            rows,
        },
        warnings,
        summary: json!({
            "analytic_means": tables.iter().map(|t| t.mean_analytic()).collect::<Vec<_>>(),
            "table_means": tables.iter().map(|t| t.sample_mean()).collect::<Vec<_>>(),
            "masses": tables.iter().map(|t| t.mass()).collect::<Vec<_>>(),
        }),
        report: None,
    };
    emit(doc, cfg, opts)
}

pub fn cmd_wigner(cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    cfg.check_known(&[
        ("state", &["r", "theta", "dx", "dy", "eta_sq"]),
        ("grid", &["points", "span_sigmas"]),
    ])?;
    let spec = SqueezeSpec::pure(
        cfg.f64_or("state", "r", 0.0)?,
        cfg.f64_or("state", "theta", 0.0)?,
    )?;
    let state = GaussianState::squeezed_vacuum(&spec)?
        .displace(
            0,
            cfg.f64_or("state", "dx", 0.0)?,
            cfg.f64_or("state", "dy", 0.0)?,
        )?
        .apply_loss(0, cfg.f64_or("state", "eta_sq", 1.0)?)?;
    let points = cfg.usize_or("grid", "points", 257)?;
    let span = cfg.f64_or("grid", "span_sigmas", 6.0)?;
    let grid = WignerGrid::evaluate_with(&state, 0, points, span)?;
    let mut rows = Vec::with_capacity(points * points);
    for (iy, y) in grid.y_axis.iter().enumerate() {
        for (ix, x) in grid.x_axis.iter().enumerate() {
            rows.push(vec![
                Cell::Num(*x),
                Cell::Num(*y),
                Cell::Num(grid.values[[iy, ix]]),
            ]);
        }
    }
    let doc = RunDoc {
        command: "wigner",
        table: Table {
            columns: vec!["x".into(), "y".into(), "w".into()],
            units: vec![
                "vacuum units".into(),
                "vacuum units".into(),
                "quasi-probability density".into(),
            ],
            rows,
        },
        warnings: Vec::new(),
        summary: json!({
            "riemann_mass": grid.riemann_sum(),
            "points": points,
            "span_sigmas": span,
        }),
        report: None,
    };
    emit(doc, cfg, opts)
}

pub fn cmd_homodyne_sim(cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    cfg.check_known(&[(
        "homodyne",
        &[
            "squeeze_db",
            "signal_amp",
            "signal_freq_hz",
            "duration_s",
            "sample_rate_hz",
            "rbw_hz",
        ],
    )])?;
    let sample_rate = cfg.f64_or("homodyne", "sample_rate_hz", 1.0)?;
    let trace = simulate_michelson_output(
        cfg.f64_or("homodyne", "signal_amp", 0.5)?,
        cfg.f64_or("homodyne", "signal_freq_hz", 0.05)?,
        cfg.f64_or("homodyne", "squeeze_db", 10.0)?,
        cfg.f64_or("homodyne", "duration_s", 65536.0)?,
        sample_rate,
        opts.seed,
    )?;
    let spec = spectrum_analyzer(
        &trace,
        cfg.f64_or("homodyne", "rbw_hz", sample_rate / 64.0)?,
    )?;
    let rows = spec
        .grid()
        .iter()
        .zip(spec.values())
        .map(|(f, v)| vec![Cell::Num(*f), Cell::Num(*v)])
        .collect();
    let doc = RunDoc {
        command: "homodyne-sim",
        table: Table {
            columns: vec!["f_hz".into(), "power_db".into()],
            units: vec!["Hz".into(), "dB rel vacuum".into()],
            rows,
        },
        warnings: Vec::new(),
        summary: json!({
            "trace_samples": trace.len(),
            "trace_variance": trace.sample_variance(),
        }),
        report: None,
    };
    emit(doc, cfg, opts)
}

pub fn cmd_qdm(cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    cfg.check_known(&[(
        "qdm",
        &[
            "signal_amp",
            "signal_freq_hz",
            "dist_amp",
            "dist_freq_hz",
            "dist_angle_deg",
            "squeeze_db_a",
            "squeeze_db_b",
            "efficiency_sq",
            "n_samples",
            "sample_rate_hz",
            "rbw_hz",
            "veto_sigma",
        ],
    )])?;
    let defaults = QdmScenario::default();
    let scenario = QdmScenario {
        signal: Tone {
            amp: cfg.f64_or("qdm", "signal_amp", defaults.signal.amp)?,
            freq_hz: cfg.f64_or("qdm", "signal_freq_hz", defaults.signal.freq_hz)?,
        },
        disturbance: Disturbance {
            amp: cfg.f64_or("qdm", "dist_amp", defaults.disturbance.amp)?,
            freq_hz: cfg.f64_or("qdm", "dist_freq_hz", defaults.disturbance.freq_hz)?,
            angle_rad: cfg
                .f64_or(
                    "qdm",
                    "dist_angle_deg",
                    defaults.disturbance.angle_rad.to_degrees(),
                )?
                .to_radians(),
        },
        squeeze_db_a: cfg.f64_or("qdm", "squeeze_db_a", defaults.squeeze_db_a)?,
        squeeze_db_b: cfg.f64_or("qdm", "squeeze_db_b", defaults.squeeze_db_b)?,
        efficiency_sq: cfg.f64_or("qdm", "efficiency_sq", defaults.efficiency_sq)?,
        n_samples: cfg.usize_or("qdm", "n_samples", defaults.n_samples)?,
        sample_rate_hz: cfg.f64_or("qdm", "sample_rate_hz", defaults.sample_rate_hz)?,
        rbw_hz: cfg.f64_or("qdm", "rbw_hz", defaults.rbw_hz)?,
        veto_threshold_sigma: cfg.f64_or("qdm", "veto_sigma", defaults.veto_threshold_sigma)?,
        seed: opts.seed,
    };
    let readout = qdm_dual_readout(&scenario)?;
    let spec_a = spectrum_analyzer(&readout.trace_a, scenario.rbw_hz)?;
    let spec_b = spectrum_analyzer(&readout.trace_b, scenario.rbw_hz)?;
    let freqs = qdm_bin_frequencies(&readout)?;
    let mut rows = Vec::with_capacity(freqs.len());
    for (i, f) in freqs.iter().enumerate() {
        rows.push(vec![
            Cell::Num(*f),
            Cell::Num(spec_a.values()[i]),
            Cell::Num(spec_b.values()[i]),
            Cell::Int(readout.veto_mask[i] as i64),
        ]);
    }
    let floor_a = qdm_noise_floor(scenario.squeeze_db_a, scenario.efficiency_sq);
    let floor_b = qdm_noise_floor(scenario.squeeze_db_b, scenario.efficiency_sq);
    let doc = RunDoc {
        command: "qdm",
        table: Table {
            columns: vec![
                "f_hz".into(),
                "readout_a_db".into(),
                "readout_b_db".into(),
                "veto".into(),
            ],
            units: vec![
                "Hz".into(),
                "dB rel vacuum".into(),
                "dB rel vacuum".into(),
                "flag".into(),
            ],
            rows,
        },
        warnings: Vec::new(),
        summary: json!({
            "floor_a_db": 10.0 * floor_a.log10(),
            "floor_b_db": 10.0 * floor_b.log10(),
            "bins_flagged": readout.veto_mask.iter().filter(|m| **m).count(),
        }),
        report: None,
    };
    emit(doc, cfg, opts)
}

pub fn cmd_entanglement(cfg: &FlatConfig, opts: &RunOptions) -> Result<CommandResult> {
    cfg.check_known(&[(
        "entanglement",
        &[
            "scenario",
            "squeeze_db_a",
            "squeeze_db_b",
            "relative_phase_deg",
            "eta_sq",
        ],
    )])?;
    let scenario = cfg
        .str_or("entanglement", "scenario", "s_class")
        .to_string();
    let bp = build_bipartite(cfg, &scenario)?;
    let duan = duan_value(&bp);
    let reid = reid_epr(&bp)?;
    let duan_pass = duan < 2.0;
    let reid_pass = reid < 1.0;
    let rows = vec![
        vec![
            Cell::Text("duan".into()),
            Cell::Num(duan),
            Cell::Num(2.0),
            Cell::Text(if duan_pass { "PASS" } else { "FAIL" }.into()),
        ],
        vec![
            Cell::Text("reid_epsilon_sq".into()),
            Cell::Num(reid),
            Cell::Num(1.0),
            Cell::Text(if reid_pass { "PASS" } else { "FAIL" }.into()),
        ],
    ];
    let report = format!(
        "scenario: {scenario}\nduan value: {duan:.6} (two-mode squeezed iff < 2): {}\nreid epsilon^2: {reid:.6} (EPR iff < 1): {}\n",
        if duan_pass { "PASS" } else { "FAIL" },
        if reid_pass { "PASS" } else { "FAIL" },
    );
    let doc = RunDoc {
        command: "entanglement",
        table: Table {
            columns: vec![
                "quantity".into(),
                "value".into(),
                "threshold".into(),
                "verdict".into(),
            ],
            units: vec![
                "".into(),
                "vacuum units".into(),
                "vacuum units".into(),
                "".into(),
            ],
            rows,
        },
        warnings: Vec::new(),
        summary: json!({
            "scenario": scenario,
            "duan": duan,
            "duan_pass": duan_pass,
            "reid_epsilon_sq": reid,
            "reid_pass": reid_pass,
        }),
        report: Some(report),
    };
    emit(doc, cfg, opts)
}

fn build_bipartite(cfg: &FlatConfig, scenario: &str) -> Result<BipartiteCovariance> {
    let vacuum = GaussianState::vacuum(1)?;
    match scenario {
        "s_class" => {
            let a = GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(10.0, 0.0)?)?;
            let b = GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(10.0, 0.0)?)?;
            assemble_bipartite(&a, &b, PI / 2.0)
        }
        "v_class" => {
            let a = GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(10.0, 0.0)?)?;
            assemble_bipartite(&a, &vacuum, 0.0)
        }
        "vacua" => assemble_bipartite(&vacuum, &vacuum, 0.0),
        "custom" => {
            let db_a = cfg.f64_or("entanglement", "squeeze_db_a", 10.0)?;
            let db_b = cfg.f64_or("entanglement", "squeeze_db_b", 10.0)?;
            let phase = cfg
                .f64_or("entanglement", "relative_phase_deg", 90.0)?
                .to_radians();
            let eta_sq = cfg.f64_or("entanglement", "eta_sq", 1.0)?;
            let a = GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(db_a, 0.0)?)?;
            let b = GaussianState::squeezed_vacuum(&SqueezeSpec::from_db(db_b, 0.0)?)?;
            let joint = a
                .tensor(&b)
                .beam_splitter(0, 1, 0.5, phase)?
                .apply_loss(0, eta_sq)?
                .apply_loss(1, eta_sq)?;
            BipartiteCovariance::from_state(&joint)
        }
        other => Err(Error::config(format!(
            "scenario must be s_class|v_class|vacua|custom, got {other}"
        ))),
    }
}
