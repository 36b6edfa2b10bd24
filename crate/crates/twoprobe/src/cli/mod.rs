//! Declarative scenario configs and deterministic artifact emission for the
//! command-line front end. A scenario is a single JSON document (tagged by
//! `"scenario"`); the binary layers flag overrides on top, validates, runs
//! and writes CSV or JSON with fixed formatting so identical configs give
//! byte-identical files.

pub mod emit;

use serde::{Deserialize, Serialize};

use crate::coarse::build_partition;
use crate::continuum::{
    appendix_c_check, sinc_width_product, theta_width, GaussianWavepacket, QuadratureConfig,
    RotatedQuadrature,
};
use crate::error::{Error, Result};
use crate::hilbert::{pure_density, DensityOperator, SpectralObservable, StateVector};
use crate::probe::{ExperimentSpec, GridDensity, GridSpec, ProbeCoupling};
use crate::schwinger::SchwingerSpace;
use crate::wigner::{
    conditional_wigner, interval_weight, perturbed_state, width_count, width_stddev, Centering,
    WidthMethod, DEFAULT_COUNT_THRESHOLD,
};
use emit::{csv_table, fmt_f64, json_array, json_object, JsonValue};

/// Output artifact format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Execution options shared by every scenario.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub format: OutputFormat,
    /// Overrides scenario self-check tolerances where applicable.
    pub tol: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            format: OutputFormat::Csv,
            tol: None,
        }
    }
}

/// One (N, delta_p) row of the periodic-model table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub n: usize,
    pub delta_p: usize,
}

fn default_rows() -> Vec<TableRow> {
    [(6, 2), (9, 2), (12, 2), (15, 4), (20, 4), (22, 10)]
        .into_iter()
        .map(|(n, delta_p)| TableRow { n, delta_p })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchwingerTableConfig {
    #[serde(default = "default_rows")]
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchwingerDistConfig {
    pub n: usize,
    pub delta_p: usize,
    #[serde(default)]
    pub n0: usize,
}

/// Initial system state, expressed in the A eigenbasis.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StateConfig {
    /// Uniform superposition of all A eigenstates.
    #[default]
    Flat,
    /// Real Gaussian profile over the eigenvalue index.
    Gaussian { center: f64, sigma: f64 },
    /// Explicit amplitudes (imaginary parts default to zero).
    Amplitudes {
        re: Vec<f64>,
        #[serde(default)]
        im: Vec<f64>,
    },
}

/// Eigenbasis of the second observable relative to the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// Discrete Fourier basis (maximally non-commuting with A).
    #[default]
    Fourier,
    /// Same eigenbasis as A (the commuting case).
    Standard,
}

/// Spectrum map applied to the A eigenvalues for a commuting B = f(A).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    #[default]
    Identity,
    Square,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WignerSweepConfig {
    #[serde(default = "default_n15")]
    pub n: usize,
    #[serde(default = "default_da_values")]
    pub delta_a_values: Vec<usize>,
    #[serde(default)]
    pub state: StateConfig,
    /// A eigenvalues are a_shift, a_shift + 1, ...
    #[serde(default)]
    pub a_shift: f64,
    #[serde(default)]
    pub b_basis: BasisKind,
    /// For a standard-basis B: eigenvalues f(a_n).
    #[serde(default)]
    pub b_map: MapKind,
    /// Explicit B eigenvalues (override the map / Fourier default).
    #[serde(default)]
    pub b_eigenvalues: Option<Vec<f64>>,
    /// Conditioning interval; `None` uses the middle interval (the
    /// largest-Born-weight rule would tie on the default flat state).
    #[serde(default)]
    pub n0: Option<usize>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

fn default_n15() -> usize {
    15
}

fn default_da_values() -> Vec<usize> {
    vec![0, 2, 4]
}

fn default_threshold() -> f64 {
    DEFAULT_COUNT_THRESHOLD
}

/// Which conditional to evaluate in a probe simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProbeMode {
    /// Full ratio formula at an arbitrary first-pointer reading.
    Full { q1: f64 },
    /// Strong-coupling convolution form at Q1 = e1 a^(n0).
    Strong {
        #[serde(default)]
        n0: usize,
    },
    /// Weak-coupling Born mixture.
    Weak,
}

impl Default for ProbeMode {
    fn default() -> Self {
        ProbeMode::Strong { n0: 0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSimConfig {
    /// `"qubit-plus-x"` fills the two-level example: A eigenvalues (-1, +1),
    /// B the conjugate basis with eigenvalues (+1, -1), flat state.
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default = "default_two")]
    pub n: usize,
    #[serde(default)]
    pub delta_a: usize,
    #[serde(default)]
    pub state: StateConfig,
    #[serde(default)]
    pub a_eigenvalues: Option<Vec<f64>>,
    #[serde(default)]
    pub b_basis: BasisKind,
    #[serde(default)]
    pub b_eigenvalues: Option<Vec<f64>>,
    #[serde(default = "default_eps1")]
    pub epsilon1: f64,
    #[serde(default = "default_one")]
    pub sigma_q1: f64,
    #[serde(default = "default_one")]
    pub epsilon2: f64,
    #[serde(default = "default_tenth")]
    pub sigma_q2: f64,
    #[serde(default)]
    pub mode: ProbeMode,
    #[serde(default = "default_points")]
    pub grid_points: usize,
    #[serde(default = "default_pad")]
    pub pad_sigmas: f64,
}

fn default_two() -> usize {
    2
}
fn default_eps1() -> f64 {
    20.0
}
fn default_one() -> f64 {
    1.0
}
fn default_tenth() -> f64 {
    0.1
}
fn default_points() -> usize {
    4096
}
fn default_pad() -> f64 {
    8.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuumSincConfig {
    #[serde(default = "default_one")]
    pub sigma_p: f64,
    #[serde(default)]
    pub p_center: f64,
    pub delta_p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuumThetaConfig {
    pub thetas: Vec<f64>,
    pub delta_xprimes: Vec<f64>,
    #[serde(default = "default_c")]
    pub c: f64,
}

fn default_c() -> f64 {
    2.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppendixCConfig {
    #[serde(default = "default_dps")]
    pub delta_ps: Vec<f64>,
    #[serde(default = "default_zs")]
    pub zs: Vec<f64>,
}

fn default_dps() -> Vec<f64> {
    vec![0.1, 0.2, 0.4]
}

fn default_zs() -> Vec<f64> {
    vec![0.0, std::f64::consts::PI]
}

/// A complete scenario description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum ScenarioConfig {
    SchwingerTable(SchwingerTableConfig),
    SchwingerDist(SchwingerDistConfig),
    WignerSweep(WignerSweepConfig),
    ProbeSim(ProbeSimConfig),
    ContinuumSinc(ContinuumSincConfig),
    ContinuumTheta(ContinuumThetaConfig),
    AppendixC(AppendixCConfig),
}

impl ScenarioConfig {
    pub fn scenario_name(&self) -> &'static str {
        match self {
            ScenarioConfig::SchwingerTable(_) => "schwinger-table",
            ScenarioConfig::SchwingerDist(_) => "schwinger-dist",
            ScenarioConfig::WignerSweep(_) => "wigner-sweep",
            ScenarioConfig::ProbeSim(_) => "probe-sim",
            ScenarioConfig::ContinuumSinc(_) => "continuum-sinc",
            ScenarioConfig::ContinuumTheta(_) => "continuum-theta",
            ScenarioConfig::AppendixC(_) => "appendix-c",
        }
    }
}

fn check_resolution(n: usize, delta: usize, out: &mut Vec<String>) {
    if delta % 2 != 0 {
        out.push(format!("resolution must be even (got {delta})"));
    } else if n % (delta + 1) != 0 {
        out.push(format!(
            "dimension incompatible with resolution ({n} not divisible by {})",
            delta + 1
        ));
    }
}

fn check_state(n: usize, state: &StateConfig, out: &mut Vec<String>) {
    match state {
        StateConfig::Flat => {}
        StateConfig::Gaussian { sigma, .. } => {
            if !(*sigma > 0.0) {
                out.push(format!("state profile width must be positive (got {sigma})"));
            }
        }
        StateConfig::Amplitudes { re, im } => {
            if re.len() != n {
                out.push(format!(
                    "state needs {n} amplitudes, got {}",
                    re.len()
                ));
            }
            if !im.is_empty() && im.len() != re.len() {
                out.push("real and imaginary amplitude lists differ in length".into());
            }
            if re.iter().all(|x| *x == 0.0) && im.iter().all(|x| *x == 0.0) {
                out.push("state amplitudes are all zero".into());
            }
        }
    }
}

/// Collect every violated precondition without executing the scenario.
pub fn validate(config: &ScenarioConfig) -> Vec<String> {
    let mut out = Vec::new();
    match config {
        ScenarioConfig::SchwingerTable(c) => {
            if c.rows.is_empty() {
                out.push("table needs at least one row".into());
            }
            for row in &c.rows {
                if row.n < 2 {
                    out.push(format!("dimension must be at least 2 (got {})", row.n));
                }
                check_resolution(row.n, row.delta_p, &mut out);
            }
        }
        ScenarioConfig::SchwingerDist(c) => {
            if c.n < 2 {
                out.push(format!("dimension must be at least 2 (got {})", c.n));
            }
            check_resolution(c.n, c.delta_p, &mut out);
            if c.delta_p % 2 == 0 && c.n % (c.delta_p + 1) == 0 && c.n0 >= c.n / (c.delta_p + 1) {
                out.push(format!(
                    "interval index {} out of range (n_max = {})",
                    c.n0,
                    c.n / (c.delta_p + 1)
                ));
            }
        }
        ScenarioConfig::WignerSweep(c) => {
            if c.n == 0 {
                out.push("dimension must be positive".into());
            }
            if c.delta_a_values.is_empty() {
                out.push("sweep needs at least one resolution".into());
            }
            for &da in &c.delta_a_values {
                check_resolution(c.n, da, &mut out);
                if let Some(n0) = c.n0 {
                    if da % 2 == 0 && c.n % (da + 1) == 0 && n0 >= c.n / (da + 1) {
                        out.push(format!(
                            "interval index {n0} out of range for resolution {da}"
                        ));
                    }
                }
            }
            check_state(c.n, &c.state, &mut out);
            if !(c.threshold > 0.0 && c.threshold < 1.0) {
                out.push(format!(
                    "count threshold must lie in (0, 1), got {}",
                    c.threshold
                ));
            }
            if let Some(b) = &c.b_eigenvalues {
                if b.len() != c.n {
                    out.push(format!("need {} B eigenvalues, got {}", c.n, b.len()));
                }
            }
        }
        ScenarioConfig::ProbeSim(c) => {
            if let Some(p) = &c.preset {
                if p != "qubit-plus-x" {
                    out.push(format!("unknown preset '{p}'"));
                }
            }
            let c = resolve_probe_preset(c.clone());
            if c.n < 2 {
                out.push(format!("dimension must be at least 2 (got {})", c.n));
            }
            check_resolution(c.n, c.delta_a, &mut out);
            check_state(c.n, &c.state, &mut out);
            if !(c.sigma_q1 > 0.0) {
                out.push(format!("probe 1 width must be positive (got {})", c.sigma_q1));
            }
            if !(c.sigma_q2 > 0.0) {
                out.push(format!("probe 2 width must be positive (got {})", c.sigma_q2));
            }
            if c.grid_points < 2 {
                out.push("grid needs at least two points".into());
            }
            if !(c.pad_sigmas > 0.0) {
                out.push("grid padding must be positive".into());
            }
            if let ProbeMode::Strong { n0 } = c.mode {
                if c.delta_a % 2 == 0 && c.n % (c.delta_a + 1) == 0 && n0 >= c.n / (c.delta_a + 1)
                {
                    out.push(format!("interval index {n0} out of range"));
                }
            }
            for (label, vals) in [("A", &c.a_eigenvalues), ("B", &c.b_eigenvalues)] {
                if let Some(v) = vals {
                    if v.len() != c.n {
                        out.push(format!("need {} {label} eigenvalues, got {}", c.n, v.len()));
                    }
                }
            }
        }
        ScenarioConfig::ContinuumSinc(c) => {
            if !(c.sigma_p > 0.0) {
                out.push(format!("momentum spread must be positive (got {})", c.sigma_p));
            }
            if !(c.delta_p > 0.0) {
                out.push(format!("window resolution must be positive (got {})", c.delta_p));
            }
        }
        ScenarioConfig::ContinuumTheta(c) => {
            if c.thetas.is_empty() || c.delta_xprimes.is_empty() {
                out.push("theta sweep needs at least one angle and one window".into());
            }
            for &t in &c.thetas {
                if !t.is_finite() || t.sin().abs() <= 1e-12 || !(0.0..=std::f64::consts::PI).contains(&t) {
                    out.push(format!("kernel singular at commuting limit (theta = {t})"));
                }
            }
            for &w in &c.delta_xprimes {
                if !(w > 0.0) {
                    out.push(format!("window resolution must be positive (got {w})"));
                }
            }
            if !(c.c > 0.0) {
                out.push(format!("window shape parameter must be positive (got {})", c.c));
            }
        }
        ScenarioConfig::AppendixC(c) => {
            if c.delta_ps.is_empty() {
                out.push("needs at least one window value".into());
            }
            for &dp in &c.delta_ps {
                if !(dp > 0.0 && dp <= 0.5) {
                    out.push(format!(
                        "series expansion only valid for 0 < delta_p <= 0.5 (got {dp})"
                    ));
                }
            }
        }
    }
    out
}

fn resolve_probe_preset(mut c: ProbeSimConfig) -> ProbeSimConfig {
    if c.preset.as_deref() == Some("qubit-plus-x") {
        c.n = 2;
        c.delta_a = 0;
        c.state = StateConfig::Flat;
        c.a_eigenvalues = Some(vec![-1.0, 1.0]);
        c.b_basis = BasisKind::Fourier;
        c.b_eigenvalues = Some(vec![1.0, -1.0]);
    }
    c
}

fn build_state(n: usize, state: &StateConfig) -> Result<StateVector> {
    match state {
        StateConfig::Flat => StateVector::from_real_normalized(&vec![1.0; n], "a"),
        StateConfig::Gaussian { center, sigma } => {
            let amps: Vec<f64> = (0..n)
                .map(|i| (-(i as f64 - center).powi(2) / (4.0 * sigma * sigma)).exp())
                .collect();
            StateVector::from_real_normalized(&amps, "a")
        }
        StateConfig::Amplitudes { re, im } => {
            let mut amps: Vec<num_complex::Complex64> = re
                .iter()
                .enumerate()
                .map(|(i, &r)| num_complex::Complex64::new(r, im.get(i).copied().unwrap_or(0.0)))
                .collect();
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm <= 0.0 {
                return Err(Error::Validation("state amplitudes are all zero".into()));
            }
            amps.iter_mut().for_each(|z| *z /= norm);
            StateVector::new(amps, "a")
        }
    }
}

/// Discrete-Fourier observable over n levels with the given spectrum.
fn fourier_observable(n: usize, eigenvalues: Vec<f64>) -> Result<SpectralObservable> {
    let norm = 1.0 / (n as f64).sqrt();
    let tau = 2.0 * std::f64::consts::PI / n as f64;
    let vecs = nalgebra::DMatrix::from_fn(n, n, |q, p| {
        num_complex::Complex64::from_polar(norm, tau * (p as f64) * (q as f64))
    });
    SpectralObservable::new(eigenvalues, vecs)
}

fn build_b_observable(
    n: usize,
    basis: BasisKind,
    explicit: &Option<Vec<f64>>,
    map: MapKind,
    a_eigenvalues: &[f64],
) -> Result<SpectralObservable> {
    let eigenvalues = match explicit {
        Some(v) => v.clone(),
        None => match (basis, map) {
            (BasisKind::Fourier, _) => (0..n).map(|i| i as f64).collect(),
            (BasisKind::Standard, MapKind::Identity) => a_eigenvalues.to_vec(),
            (BasisKind::Standard, MapKind::Square) => {
                a_eigenvalues.iter().map(|a| a * a).collect()
            }
        },
    };
    match basis {
        BasisKind::Fourier => fourier_observable(n, eigenvalues),
        BasisKind::Standard => SpectralObservable::standard_basis(eigenvalues),
    }
}

fn density_artifact(d: &GridDensity, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = d
                .axis()
                .iter()
                .zip(d.values())
                .map(|(x, y)| vec![fmt_f64(*x), fmt_f64(*y)])
                .collect();
            csv_table(&["q2", "density"], &rows)
        }
        OutputFormat::Json => json_object(vec![
            ("q2".into(), JsonValue::NumberArray(d.axis().to_vec())),
            ("density".into(), JsonValue::NumberArray(d.values().to_vec())),
        ]),
    }
}

fn width_method_label(m: WidthMethod) -> &'static str {
    match m {
        WidthMethod::CountThreshold => "count-threshold",
        WidthMethod::StdDev => "stddev",
        WidthMethod::FirstZero => "first-zero",
        WidthMethod::OneOverE => "one-over-e",
    }
}

/// Execute a scenario and return the rendered artifact.
pub fn run(config: &ScenarioConfig, opts: &RunOptions) -> Result<String> {
    let violations = validate(config);
    if let Some(first) = violations.first() {
        return Err(Error::Validation(first.clone()));
    }
    match config {
        ScenarioConfig::SchwingerTable(c) => run_schwinger_table(c, opts),
        ScenarioConfig::SchwingerDist(c) => run_schwinger_dist(c, opts),
        ScenarioConfig::WignerSweep(c) => run_wigner_sweep(c, opts),
        ScenarioConfig::ProbeSim(c) => run_probe_sim(c, opts),
        ScenarioConfig::ContinuumSinc(c) => run_continuum_sinc(c, opts),
        ScenarioConfig::ContinuumTheta(c) => run_continuum_theta(c, opts),
        ScenarioConfig::AppendixC(c) => run_appendix_c(c, opts),
    }
}

fn run_schwinger_table(c: &SchwingerTableConfig, opts: &RunOptions) -> Result<String> {
    let mut rows = c.rows.clone();
    rows.sort_by_key(|r| (r.n, r.delta_p));
    rows.dedup();
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for row in &rows {
        let chk = SchwingerSpace::new(row.n)?.robertson_table(row.delta_p)?;
        csv_rows.push(vec![
            row.n.to_string(),
            row.delta_p.to_string(),
            fmt_f64(chk.lhs),
            fmt_f64(chk.rhs),
            chk.holds.to_string(),
        ]);
        json_rows.push(json_object(vec![
            ("n".into(), JsonValue::Integer(row.n as i64)),
            ("delta_p".into(), JsonValue::Integer(row.delta_p as i64)),
            ("l".into(), JsonValue::Number(chk.lhs)),
            ("r".into(), JsonValue::Number(chk.rhs)),
            ("holds".into(), JsonValue::Bool(chk.holds)),
        ]));
    }
    Ok(match opts.format {
        OutputFormat::Csv => csv_table(&["n", "delta_p", "l", "r", "holds"], &csv_rows),
        OutputFormat::Json => json_array(json_rows),
    })
}

fn run_schwinger_dist(c: &SchwingerDistConfig, opts: &RunOptions) -> Result<String> {
    let dist = SchwingerSpace::new(c.n)?.conditional_w_q(c.delta_p, c.n0)?;
    Ok(match opts.format {
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = dist
                .support()
                .iter()
                .zip(dist.weights())
                .map(|(q, w)| vec![format!("{q}"), fmt_f64(*w)])
                .collect();
            csv_table(&["q", "weight"], &rows)
        }
        OutputFormat::Json => json_object(
            dist.support()
                .iter()
                .zip(dist.weights())
                .map(|(q, w)| (format!("{q}"), JsonValue::Number(*w)))
                .collect(),
        ),
    })
}

fn run_wigner_sweep(c: &WignerSweepConfig, opts: &RunOptions) -> Result<String> {
    let a = SpectralObservable::standard_basis(
        (0..c.n).map(|i| c.a_shift + i as f64).collect(),
    )?;
    let b = build_b_observable(c.n, c.b_basis, &c.b_eigenvalues, c.b_map, a.eigenvalues())?;
    let rho: DensityOperator = pure_density(&build_state(c.n, &c.state)?);
    let mut deltas = c.delta_a_values.clone();
    deltas.sort_unstable();
    deltas.dedup();
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for da in deltas {
        let cg = build_partition(&a, da)?;
        let centering = match c.n0 {
            Some(n0) => Centering::Interval(n0),
            None => Centering::LargestBornWeight,
        };
        let f = crate::wigner::ur_function(&rho, &a, &b, &[da], centering)?[0].1;
        let n0 = match centering {
            Centering::Interval(n0) => n0,
            Centering::LargestBornWeight => {
                // ur_function already validated uniqueness; recompute the pick.
                (0..cg.n_max())
                    .map(|k| (k, interval_weight(&rho, &a, &cg, k).unwrap_or(0.0)))
                    .max_by(|x, y| x.1.total_cmp(&y.1))
                    .map(|(k, _)| k)
                    .unwrap_or(0)
            }
        };
        let born = interval_weight(&rho, &a, &cg, n0)?;
        let dist = conditional_wigner(&rho, &a, &cg, n0, &b)?;
        let count = width_count(&dist, c.threshold)?;
        let sd = width_stddev(&dist);
        let _ = perturbed_state(&rho, &a, &cg, n0)?;
        csv_rows.push(vec![
            da.to_string(),
            n0.to_string(),
            fmt_f64(born),
            fmt_f64(f),
            fmt_f64(count.value),
            fmt_f64(sd.value),
        ]);
        json_rows.push(json_object(vec![
            ("delta_a".into(), JsonValue::Integer(da as i64)),
            ("n0".into(), JsonValue::Integer(n0 as i64)),
            ("born_weight".into(), JsonValue::Number(born)),
            ("f_var".into(), JsonValue::Number(f)),
            ("delta_b_count".into(), JsonValue::Number(count.value)),
            ("delta_b_stddev".into(), JsonValue::Number(sd.value)),
        ]));
    }
    Ok(match opts.format {
        OutputFormat::Csv => csv_table(
            &["delta_a", "n0", "born_weight", "f_var", "delta_b_count", "delta_b_stddev"],
            &csv_rows,
        ),
        OutputFormat::Json => json_array(json_rows),
    })
}

fn run_probe_sim(c: &ProbeSimConfig, opts: &RunOptions) -> Result<String> {
    let c = resolve_probe_preset(c.clone());
    let a_eigenvalues: Vec<f64> = c
        .a_eigenvalues
        .clone()
        .unwrap_or_else(|| (0..c.n).map(|i| i as f64).collect());
    let a = SpectralObservable::standard_basis(a_eigenvalues)?;
    let b = build_b_observable(c.n, c.b_basis, &c.b_eigenvalues, MapKind::Identity, a.eigenvalues())?;
    let rho = pure_density(&build_state(c.n, &c.state)?);
    let cg = build_partition(&a, c.delta_a)?;
    let spec = ExperimentSpec::new(
        rho,
        a,
        cg,
        b,
        ProbeCoupling::new(c.epsilon1, c.sigma_q1)?,
        ProbeCoupling::new(c.epsilon2, c.sigma_q2)?,
    )?
    .with_grid(GridSpec {
        pad_sigmas: c.pad_sigmas,
        points: c.grid_points,
    });
    let density = match c.mode {
        ProbeMode::Full { q1 } => spec.conditional_q2_given_q1(q1)?,
        ProbeMode::Strong { n0 } => spec.conditional_strong_limit(n0)?,
        ProbeMode::Weak => spec.conditional_weak_limit()?,
    };
    Ok(density_artifact(&density, opts.format))
}

fn run_continuum_sinc(c: &ContinuumSincConfig, opts: &RunOptions) -> Result<String> {
    let pkt = GaussianWavepacket::new(c.p_center, c.sigma_p)?;
    let cfg = match opts.tol {
        Some(t) => QuadratureConfig::with_tol(t),
        None => QuadratureConfig::default(),
    };
    let w = sinc_width_product(&pkt, c.delta_p, &cfg)?;
    Ok(match opts.format {
        OutputFormat::Csv => csv_table(
            &["delta_p", "delta_x", "product", "first_zero_numeric", "first_zero_formula", "rel_deviation"],
            &[vec![
                fmt_f64(w.delta_p),
                fmt_f64(w.delta_x),
                fmt_f64(w.product),
                fmt_f64(w.first_zero_numeric),
                fmt_f64(w.first_zero_formula),
                fmt_f64(w.rel_deviation),
            ]],
        ),
        OutputFormat::Json => json_object(vec![
            ("delta_p".into(), JsonValue::Number(w.delta_p)),
            ("delta_x".into(), JsonValue::Number(w.delta_x)),
            ("product".into(), JsonValue::Number(w.product)),
            ("first_zero_numeric".into(), JsonValue::Number(w.first_zero_numeric)),
            ("first_zero_formula".into(), JsonValue::Number(w.first_zero_formula)),
            ("rel_deviation".into(), JsonValue::Number(w.rel_deviation)),
        ]),
    })
}

fn run_continuum_theta(c: &ContinuumThetaConfig, opts: &RunOptions) -> Result<String> {
    let cfg = match opts.tol {
        Some(t) => QuadratureConfig::with_tol(t),
        None => QuadratureConfig::with_tol(1e-9),
    };
    let mut pairs: Vec<(f64, f64)> = c
        .thetas
        .iter()
        .flat_map(|&t| c.delta_xprimes.iter().map(move |&w| (t, w)))
        .collect();
    pairs.sort_by(|x, y| x.partial_cmp(y).expect("validated finite sweep values"));
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for (theta, dxp) in pairs {
        let rq = RotatedQuadrature::with_window_shape(theta, dxp, c.c)?;
        let w = theta_width(&rq, &cfg)?;
        let product = w.delta_x * dxp;
        csv_rows.push(vec![
            fmt_f64(theta),
            fmt_f64(dxp),
            fmt_f64(w.delta_x),
            width_method_label(w.method).to_string(),
            fmt_f64(product),
        ]);
        json_rows.push(json_object(vec![
            ("theta".into(), JsonValue::Number(theta)),
            ("delta_xprime".into(), JsonValue::Number(dxp)),
            ("delta_x".into(), JsonValue::Number(w.delta_x)),
            (
                "method".into(),
                JsonValue::Text(width_method_label(w.method).into()),
            ),
            ("product".into(), JsonValue::Number(product)),
        ]));
    }
    Ok(match opts.format {
        OutputFormat::Csv => csv_table(
            &["theta", "delta_xprime", "delta_x", "method", "product"],
            &csv_rows,
        ),
        OutputFormat::Json => json_array(json_rows),
    })
}

fn run_appendix_c(c: &AppendixCConfig, opts: &RunOptions) -> Result<String> {
    let cfg = QuadratureConfig::default();
    let mut dps = c.delta_ps.clone();
    dps.sort_by(f64::total_cmp);
    dps.dedup();
    let mut zs = c.zs.clone();
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for &dp in &dps {
        for &z in &zs {
            let chk = appendix_c_check(dp, z, &cfg)?;
            let diff = (chk.d_series - chk.d_quadrature).abs();
            let bound = opts.tol.unwrap_or((dp / 2.0).powi(5));
            if diff > bound {
                return Err(Error::QuadratureAccuracy {
                    tol: bound,
                    err: diff,
                });
            }
            csv_rows.push(vec![
                fmt_f64(dp),
                fmt_f64(z),
                fmt_f64(chk.d_series),
                fmt_f64(chk.d_quadrature),
                fmt_f64(diff),
                fmt_f64(bound),
                fmt_f64(chk.n_series),
                fmt_f64(chk.n_quadrature),
            ]);
            json_rows.push(json_object(vec![
                ("delta_p".into(), JsonValue::Number(dp)),
                ("z".into(), JsonValue::Number(z)),
                ("d_series".into(), JsonValue::Number(chk.d_series)),
                ("d_quadrature".into(), JsonValue::Number(chk.d_quadrature)),
                ("d_abs_diff".into(), JsonValue::Number(diff)),
                ("d_bound".into(), JsonValue::Number(bound)),
                ("n_series".into(), JsonValue::Number(chk.n_series)),
                ("n_quadrature".into(), JsonValue::Number(chk.n_quadrature)),
            ]));
        }
    }
    Ok(match opts.format {
        OutputFormat::Csv => csv_table(
            &["delta_p", "z", "d_series", "d_quadrature", "d_abs_diff", "d_bound", "n_series", "n_quadrature"],
            &csv_rows,
        ),
        OutputFormat::Json => json_array(json_rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_reports_odd_resolution() {
        let cfg = ScenarioConfig::WignerSweep(WignerSweepConfig {
            n: 15,
            delta_a_values: vec![3],
            state: StateConfig::Flat,
            a_shift: 0.0,
            b_basis: BasisKind::Fourier,
            b_map: MapKind::Identity,
            b_eigenvalues: None,
            n0: None,
            threshold: 0.2,
        });
        let v = validate(&cfg);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("resolution must be even"));
    }

    #[test]
    fn validate_reports_indivisible_dimension() {
        let cfg = ScenarioConfig::SchwingerDist(SchwingerDistConfig {
            n: 7,
            delta_p: 2,
            n0: 0,
        });
        let v = validate(&cfg);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("dimension incompatible with resolution"));
    }

    #[test]
    fn validate_accepts_defaults() {
        let cfg = ScenarioConfig::SchwingerTable(SchwingerTableConfig {
            rows: default_rows(),
        });
        assert!(validate(&cfg).is_empty());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = ScenarioConfig::ProbeSim(ProbeSimConfig {
            preset: Some("qubit-plus-x".into()),
            n: 2,
            delta_a: 0,
            state: StateConfig::Flat,
            a_eigenvalues: None,
            b_basis: BasisKind::Fourier,
            b_eigenvalues: None,
            epsilon1: 20.0,
            sigma_q1: 1.0,
            epsilon2: 1.0,
            sigma_q2: 0.1,
            mode: ProbeMode::Strong { n0: 0 },
            grid_points: 512,
            pad_sigmas: 8.0,
        });
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"scenario\":\"probe-sim\""));
        let back: ScenarioConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back.scenario_name(), "probe-sim");
    }

    #[test]
    fn schwinger_table_is_deterministic() {
        let cfg = ScenarioConfig::SchwingerTable(SchwingerTableConfig {
            rows: default_rows(),
        });
        let opts = RunOptions::default();
        let a = run(&cfg, &opts).unwrap();
        let b = run(&cfg, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("n,delta_p,l,r,holds\n"));
        assert_eq!(a.lines().count(), 7);
    }

    #[test]
    fn emitted_json_reparses() {
        let cfg = ScenarioConfig::SchwingerDist(SchwingerDistConfig {
            n: 6,
            delta_p: 2,
            n0: 0,
        });
        let out = run(
            &cfg,
            &RunOptions {
                format: OutputFormat::Json,
                tol: None,
            },
        )
        .unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((parsed["0"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn invalid_config_fails_run() {
        let cfg = ScenarioConfig::SchwingerDist(SchwingerDistConfig {
            n: 7,
            delta_p: 2,
            n0: 0,
        });
        match run(&cfg, &RunOptions::default()) {
            Err(Error::Validation(msg)) => {
                assert!(msg.contains("dimension incompatible"))
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }
}
