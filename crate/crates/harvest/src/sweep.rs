//! Sweep orchestration: JSON sweep configs, grid evaluation over
//! `(t, r, T)`, figure presets, and deterministic CSV/JSON emission.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::GeneratorCache;
use crate::cavity::{initial_state, CavityConfig, FieldTemperature};
use crate::correlations::{correlation_report, CorrelationReport, SweepPoint};
use crate::error::{HarvestError, Result};
use crate::evolution::{detector_state_from_rows, PropagatorGenerator};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRECISION: usize = 12;

fn default_precision() -> usize {
    DEFAULT_PRECISION
}

fn default_modes() -> usize {
    80
}

/// Cavity parameters of a sweep; detector positions come from the `r` axis
/// (`x1 = 0`, `x2 = r`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySpec {
    pub length: f64,
    #[serde(default = "default_modes")]
    pub n_modes: usize,
    pub detector_frequency: f64,
    pub coupling: f64,
}

impl CavitySpec {
    /// `L = 100`, `N = 80`, `Omega = 40 pi / L`, `lambda = 0.05`.
    pub fn reference() -> Self {
        let c = CavityConfig::reference(0.0);
        Self {
            length: c.length,
            n_modes: c.n_field_modes,
            detector_frequency: c.detector_frequency,
            coupling: c.coupling,
        }
    }

    pub fn config(&self, r: f64) -> Result<CavityConfig> {
        CavityConfig::new(
            self.length,
            self.n_modes,
            self.detector_frequency,
            self.coupling,
            0.0,
            r,
        )
    }
}

/// One sweep axis: a single value, a uniform grid, or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AxisSpec {
    Fixed { value: f64 },
    Grid { min: f64, max: f64, count: usize },
    Values { values: Vec<f64> },
}

impl AxisSpec {
    pub fn fixed(value: f64) -> Self {
        AxisSpec::Fixed { value }
    }

    pub fn grid(min: f64, max: f64, count: usize) -> Self {
        AxisSpec::Grid { min, max, count }
    }

    pub fn values(values: impl Into<Vec<f64>>) -> Self {
        AxisSpec::Values {
            values: values.into(),
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, AxisSpec::Fixed { .. })
    }

    pub fn samples(&self) -> Result<Vec<f64>> {
        let out = match self {
            AxisSpec::Fixed { value } => vec![*value],
            AxisSpec::Grid { min, max, count } => {
                if *count < 2 {
                    return Err(HarvestError::InvalidConfig(format!(
                        "grid axis needs count >= 2, got {count}"
                    )));
                }
                if !(max > min) {
                    return Err(HarvestError::InvalidConfig(format!(
                        "grid axis needs max > min, got [{min}, {max}]"
                    )));
                }
                let step = (max - min) / (*count as f64 - 1.0);
                (0..*count).map(|i| min + step * i as f64).collect()
            }
            AxisSpec::Values { values } => {
                if values.is_empty() {
                    return Err(HarvestError::InvalidConfig(
                        "axis value list must be nonempty".into(),
                    ));
                }
                values.clone()
            }
        };
        if out.iter().any(|v| !v.is_finite()) {
            return Err(HarvestError::InvalidConfig(
                "axis values must be finite".into(),
            ));
        }
        Ok(out)
    }
}

// Hand-rolled so an unknown key inside an axis object is an error instead of
// silently matching some variant.
impl<'de> Deserialize<'de> for AxisSpec {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(deserializer)?;
        let map = value
            .as_object()
            .ok_or_else(|| D::Error::custom("axis must be an object"))?;
        let mut keys: Vec<&str> = map.keys().map(String::as_str).collect();
        keys.sort_unstable();
        let number = |key: &str| -> std::result::Result<f64, D::Error> {
            map[key]
                .as_f64()
                .ok_or_else(|| D::Error::custom(format!("axis field `{key}` must be a number")))
        };
        match keys.as_slice() {
            ["value"] => Ok(AxisSpec::Fixed {
                value: number("value")?,
            }),
            ["count", "max", "min"] => Ok(AxisSpec::Grid {
                min: number("min")?,
                max: number("max")?,
                count: map["count"]
                    .as_u64()
                    .ok_or_else(|| D::Error::custom("axis field `count` must be an integer"))?
                    as usize,
            }),
            ["values"] => {
                let raw = map["values"]
                    .as_array()
                    .ok_or_else(|| D::Error::custom("axis field `values` must be an array"))?;
                let values = raw
                    .iter()
                    .map(|v| {
                        v.as_f64()
                            .ok_or_else(|| D::Error::custom("axis values must be numbers"))
                    })
                    .collect::<std::result::Result<Vec<f64>, _>>()?;
                Ok(AxisSpec::Values { values })
            }
            other => Err(D::Error::custom(format!(
                "axis must be {{value}}, {{min, max, count}} or {{values}}; got keys {other:?}"
            ))),
        }
    }
}

/// A full sweep definition, loadable from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub version: u32,
    pub cavity: CavitySpec,
    pub t: AxisSpec,
    pub r: AxisSpec,
    #[serde(rename = "T")]
    pub temperature: AxisSpec,
    #[serde(default = "default_precision")]
    pub precision: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.version != SCHEMA_VERSION {
            return Err(HarvestError::InvalidConfig(format!(
                "unsupported config version {} (expected {SCHEMA_VERSION})",
                self.version
            )));
        }
        if self.t.is_fixed() && self.r.is_fixed() && self.temperature.is_fixed() {
            return Err(HarvestError::InvalidConfig(
                "at least one of t, r, T must be a grid".into(),
            ));
        }
        if self.precision == 0 || self.precision > 17 {
            return Err(HarvestError::InvalidConfig(format!(
                "precision must be in 1..=17, got {}",
                self.precision
            )));
        }
        for (name, axis) in [("t", &self.t), ("r", &self.r), ("T", &self.temperature)] {
            let samples = axis.samples()?;
            if samples.iter().any(|&v| v < 0.0) {
                return Err(HarvestError::InvalidConfig(format!(
                    "axis {name} must be nonnegative"
                )));
            }
        }
        self.cavity.config(0.0)?;
        Ok(())
    }
}

/// Reads and validates a JSON sweep config.
pub fn read_spec(path: &Path) -> Result<SweepSpec> {
    let text = fs::read_to_string(path).map_err(|source| HarvestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec: SweepSpec = serde_json::from_str(&text).map_err(|source| HarvestError::Json {
        path: path.display().to_string(),
        source,
    })?;
    spec.validate()?;
    Ok(spec)
}

/// How a sweep obtains its generators.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub cache: Option<GeneratorCache>,
}

impl RunOptions {
    fn generator(&self, cfg: &CavityConfig) -> Result<PropagatorGenerator> {
        match &self.cache {
            Some(cache) => cache.load_or_build(cfg),
            None => PropagatorGenerator::build(cfg),
        }
    }
}

fn diagonal_of_initial_state(cfg: &CavityConfig, temperature: FieldTemperature) -> Vec<f64> {
    let sigma = initial_state(cfg, temperature);
    (0..sigma.dim()).map(|i| sigma.matrix()[(i, i)]).collect()
}

/// Evaluates the Cartesian product of the three axes. One generator per
/// distinct `r`; each propagator's detector rows are reused across every
/// temperature. Rows come back sorted by `(r, T, t)`.
pub fn run_sweep(spec: &SweepSpec, options: &RunOptions) -> Result<Vec<CorrelationReport>> {
    spec.validate()?;
    let t_values = spec.t.samples()?;
    let r_values = spec.r.samples()?;
    let temp_values = spec.temperature.samples()?;

    let mut reports = r_values
        .par_iter()
        .map(|&r| -> Result<Vec<CorrelationReport>> {
            let cfg = spec.cavity.config(r)?;
            let generator = options.generator(&cfg)?;
            let diagonals: Vec<(f64, Vec<f64>)> = temp_values
                .iter()
                .map(|&temp| {
                    FieldTemperature::new(temp)
                        .map(|ft| (temp, diagonal_of_initial_state(&cfg, ft)))
                })
                .collect::<Result<_>>()?;
            let per_t = t_values
                .par_iter()
                .map(|&t| -> Result<Vec<CorrelationReport>> {
                    let rows = generator.detector_rows(t)?;
                    diagonals
                        .iter()
                        .map(|(temp, diag)| {
                            let state = detector_state_from_rows(&rows, diag)?;
                            correlation_report(
                                &state,
                                SweepPoint {
                                    t,
                                    r,
                                    temperature: *temp,
                                },
                            )
                        })
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(per_t.into_iter().flatten().collect())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();

    reports.sort_by(|a, b| {
        a.r.total_cmp(&b.r)
            .then(a.temperature.total_cmp(&b.temperature))
            .then(a.t.total_cmp(&b.t))
    });
    Ok(reports)
}

/// Reruns `spec` with twice the mode cutoff and returns the largest relative
/// change over every emitted field.
pub fn convergence_drift(spec: &SweepSpec, options: &RunOptions) -> Result<f64> {
    let base = run_sweep(spec, options)?;
    let mut doubled_spec = spec.clone();
    doubled_spec.cavity.n_modes *= 2;
    let doubled = run_sweep(&doubled_spec, options)?;
    let mut drift = 0.0f64;
    for (a, b) in base.iter().zip(&doubled) {
        for (x, y) in emitted_fields(a).into_iter().zip(emitted_fields(b)) {
            let scale = x.abs().max(y.abs());
            if scale > 1e-9 {
                drift = drift.max((x - y).abs() / scale);
            }
        }
    }
    Ok(drift)
}

fn emitted_fields(r: &CorrelationReport) -> [f64; 7] {
    [
        r.log_negativity,
        r.mutual_information,
        r.discord,
        r.nu1,
        r.nu2,
        r.nu_plus,
        r.nu_minus,
    ]
}

// ---------------------------------------------------------------------------
// Figure presets

/// A named sweep preset with qualitative assertions.
#[derive(Debug, Clone)]
pub struct FigureRecipe {
    pub name: &'static str,
    pub note: &'static str,
    pub spec: SweepSpec,
}

/// One pass/fail assertion attached to a figure.
#[derive(Debug, Clone)]
pub struct FigureCheck {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

fn preset(t: AxisSpec, r: AxisSpec, temperature: AxisSpec) -> SweepSpec {
    SweepSpec {
        version: SCHEMA_VERSION,
        cavity: CavitySpec::reference(),
        t,
        r,
        temperature,
        precision: DEFAULT_PRECISION,
        output: None,
    }
}

pub fn figure_recipes() -> Vec<FigureRecipe> {
    vec![
        FigureRecipe {
            name: "fig1",
            note: "E_N over the (t, r) plane in the vacuum; the plotted window \
                   is not stated numerically, so t in [0, 14], r in [0, 50] is adopted",
            spec: preset(
                AxisSpec::grid(0.0, 14.0, 57),
                AxisSpec::grid(0.0, 50.0, 51),
                AxisSpec::fixed(0.0),
            ),
        },
        FigureRecipe {
            name: "fig2",
            note: "E_N vs t at r = 3 for T in {0, 0.1, 0.15, 0.2}",
            spec: preset(
                AxisSpec::grid(0.0, 14.0, 200),
                AxisSpec::fixed(3.0),
                AxisSpec::values([0.0, 0.1, 0.15, 0.2]),
            ),
        },
        FigureRecipe {
            name: "fig3",
            note: "I over the (t, r) plane in the vacuum; same adopted window as fig1",
            spec: preset(
                AxisSpec::grid(0.0, 14.0, 57),
                AxisSpec::grid(0.0, 50.0, 51),
                AxisSpec::fixed(0.0),
            ),
        },
        FigureRecipe {
            name: "fig4",
            note: "I and D vs t at r = 4 for T in {0, 1, 10}",
            spec: preset(
                AxisSpec::grid(0.0, 14.0, 141),
                AxisSpec::fixed(4.0),
                AxisSpec::values([0.0, 1.0, 10.0]),
            ),
        },
        FigureRecipe {
            name: "fig5",
            note: "I and D vs T at r = 4, t = 2",
            spec: preset(
                AxisSpec::fixed(2.0),
                AxisSpec::fixed(4.0),
                AxisSpec::grid(0.0, 60.0, 61),
            ),
        },
        FigureRecipe {
            name: "fig6",
            note: "detector symplectic eigenvalues vs t at r = 4",
            spec: preset(
                AxisSpec::grid(0.0, 14.0, 141),
                AxisSpec::fixed(4.0),
                AxisSpec::values([0.0, 1.0, 2.0, 5.0]),
            ),
        },
        FigureRecipe {
            name: "fig7",
            note: "(+)/(-) mode eigenvalue splitting vs T at r = 4, t = 2",
            spec: preset(
                AxisSpec::fixed(2.0),
                AxisSpec::fixed(4.0),
                AxisSpec::values([0.0, 1.0, 2.0, 5.0]),
            ),
        },
        FigureRecipe {
            name: "fig8",
            note: "I vs r at T = 2 for a few times; the r-band structure shows at t = 14",
            spec: preset(
                AxisSpec::values([2.0, 8.0, 14.0]),
                AxisSpec::grid(0.0, 15.0, 61),
                AxisSpec::fixed(2.0),
            ),
        },
    ]
}

pub fn figure_recipe(name: &str) -> Option<FigureRecipe> {
    figure_recipes().into_iter().find(|r| r.name == name)
}

fn check(label: &str, passed: bool, detail: String) -> FigureCheck {
    FigureCheck {
        label: label.to_string(),
        passed,
        detail,
    }
}

fn slice<'a>(
    reports: &'a [CorrelationReport],
    pick: impl Fn(&CorrelationReport) -> bool + 'a,
) -> Vec<&'a CorrelationReport> {
    reports.iter().filter(|r| pick(r)).collect()
}

fn max_by(rows: &[&CorrelationReport], f: impl Fn(&CorrelationReport) -> f64) -> f64 {
    rows.iter().map(|r| f(r)).fold(f64::NEG_INFINITY, f64::max)
}

/// The qualitative assertions behind each figure.
pub fn figure_checks(name: &str, reports: &[CorrelationReport]) -> Vec<FigureCheck> {
    let close = |a: f64, b: f64| (a - b).abs() < 1e-9;
    match name {
        "fig1" => {
            let peak = max_by(&reports.iter().collect::<Vec<_>>(), |r| r.log_negativity);
            vec![check(
                "entanglement is harvested somewhere on the (t, r) plane",
                peak > 0.0,
                format!("max E_N = {peak:.3e}"),
            )]
        }
        "fig2" => {
            let at = |temp: f64| slice(reports, move |r| close(r.temperature, temp));
            let m0 = max_by(&at(0.0), |r| r.log_negativity);
            let m01 = max_by(&at(0.1), |r| r.log_negativity);
            let m02 = max_by(&at(0.2), |r| r.log_negativity);
            vec![
                check("E_N > 0 at T = 0", m0 > 0.0, format!("max = {m0:.3e}")),
                check(
                    "E_N > 0 but degraded at T = 0.1",
                    m01 > 0.0 && m01 < m0,
                    format!("max = {m01:.3e} vs {m0:.3e}"),
                ),
                check(
                    "entanglement gone at T = 0.2",
                    m02 < 1e-12,
                    format!("max = {m02:.3e}"),
                ),
            ]
        }
        "fig3" => {
            let rows: Vec<_> = reports.iter().collect();
            let peak = max_by(&rows, |r| r.mutual_information);
            let start = max_by(
                &slice(reports, |r| r.t == 0.0),
                |r| r.mutual_information.abs(),
            );
            vec![
                check(
                    "mutual information is harvested",
                    peak > 0.0,
                    format!("max I = {peak:.3e}"),
                ),
                check("I = 0 at t = 0", start < 1e-12, format!("max |I| = {start:.3e}")),
            ]
        }
        "fig4" => {
            let at = |temp: f64| slice(reports, move |r| close(r.temperature, temp));
            let peaks_i: Vec<f64> = [0.0, 1.0, 10.0]
                .iter()
                .map(|&temp| max_by(&at(temp), |r| r.mutual_information))
                .collect();
            let peaks_d: Vec<f64> = [0.0, 1.0, 10.0]
                .iter()
                .map(|&temp| max_by(&at(temp), |r| r.discord))
                .collect();
            vec![
                check(
                    "I amplified with temperature",
                    peaks_i.windows(2).all(|w| w[1] > w[0]),
                    format!("max I by T: {peaks_i:.3?}"),
                ),
                check(
                    "D amplified with temperature",
                    peaks_d.windows(2).all(|w| w[1] > w[0]),
                    format!("max D by T: {peaks_d:.3?}"),
                ),
            ]
        }
        "fig5" => {
            let i_vals: Vec<f64> = reports.iter().map(|r| r.mutual_information).collect();
            let strictly_up = i_vals.windows(2).all(|w| w[1] > w[0]);
            let (best_t, _) = reports
                .iter()
                .map(|r| (r.temperature, r.discord))
                .fold((f64::NAN, f64::NEG_INFINITY), |acc, x| {
                    if x.1 > acc.1 {
                        x
                    } else {
                        acc
                    }
                });
            let pick = |temp: f64| {
                reports
                    .iter()
                    .find(|r| close(r.temperature, temp))
                    .expect("grid point")
            };
            let (cold, hot) = (pick(0.0), pick(10.0));
            let ratio_i = hot.mutual_information / cold.mutual_information;
            let ratio_d = hot.discord / cold.discord;
            vec![
                check(
                    "I strictly increasing up to T = 60",
                    strictly_up,
                    format!("I(0) = {:.3e}, I(60) = {:.3e}", i_vals[0], i_vals[60]),
                ),
                check(
                    "D peaks near T = 6",
                    (4.0..=8.0).contains(&best_t),
                    format!("argmax D = {best_t}"),
                ),
                check(
                    "tenfold amplification at T = 10",
                    ratio_i >= 10.0 && ratio_d >= 10.0,
                    format!("I ratio = {ratio_i:.1}, D ratio = {ratio_d:.1}"),
                ),
            ]
        }
        "fig6" => {
            let physical = reports.iter().all(|r| r.nu1 >= 1.0 - 1e-9 && r.nu2 >= 1.0 - 1e-9);
            let vacuum_mixing = max_by(
                &slice(reports, |r| r.temperature == 0.0),
                |r| r.nu1.max(r.nu2) - 1.0,
            );
            vec![
                check("local eigenvalues stay physical", physical, String::new()),
                check(
                    "detectors become locally mixed even in the vacuum",
                    vacuum_mixing > 1e-6,
                    format!("max nu - 1 = {vacuum_mixing:.3e}"),
                ),
            ]
        }
        "fig7" => {
            let gaps: Vec<f64> = reports.iter().map(|r| (r.nu_plus - r.nu_minus).abs()).collect();
            vec![check(
                "mode splitting |nu_plus - nu_minus| grows with T",
                gaps.windows(2).all(|w| w[1] > w[0]),
                format!("gaps = {gaps:.3?}"),
            )]
        }
        "fig8" => {
            let rows = slice(reports, |r| close(r.t, 14.0));
            let i_at = |r_val: f64| {
                rows.iter()
                    .find(|r| close(r.r, r_val))
                    .expect("grid point")
                    .mutual_information
            };
            let local_max = |r_val: f64| {
                let c = i_at(r_val);
                c > i_at(r_val - 0.25) && c > i_at(r_val + 0.25)
            };
            let min_between = |lo: f64, hi: f64| {
                rows.iter()
                    .filter(|r| r.r > lo && r.r < hi)
                    .map(|r| r.mutual_information)
                    .fold(f64::INFINITY, f64::min)
            };
            vec![
                check(
                    "strong bands at r = 5 and r = 10",
                    local_max(5.0) && local_max(10.0),
                    format!("I(5) = {:.3e}, I(10) = {:.3e}", i_at(5.0), i_at(10.0)),
                ),
                check(
                    "r = 2.5 sits between the r = 5 band and the inter-band minima",
                    i_at(5.0) > i_at(2.5)
                        && i_at(2.5) > min_between(2.0, 5.0)
                        && i_at(2.5) > min_between(5.0, 10.0),
                    format!("I(2.5) = {:.3e}", i_at(2.5)),
                ),
            ]
        }
        _ => vec![check("known figure name", false, format!("no recipe named {name}"))],
    }
}

// ---------------------------------------------------------------------------
// Emission

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "t,r,T,E_N,I,D,nu1,nu2,nu_plus,nu_minus";

/// Significant-digit float rendering: `format_sig(0.25, 3) == "2.5e-1"`,
/// zeros render as `"0"`. Locale-independent.
pub fn format_sig(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if value == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.*e}", digits - 1, value);
    let (mantissa, exponent) = s.split_once('e').expect("exponential format");
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    format!("{mantissa}e{exponent}")
}

/// The nearest f64 to the `digits`-significant-digit decimal rendering.
pub fn round_sig(value: f64, digits: usize) -> f64 {
    format_sig(value, digits).parse().expect("own rendering")
}

fn csv_row(r: &CorrelationReport, digits: usize) -> String {
    emit_order(r)
        .map(|v| format_sig(v, digits))
        .join(",")
}

fn emit_order(r: &CorrelationReport) -> [f64; 10] {
    [
        r.t,
        r.r,
        r.temperature,
        r.log_negativity,
        r.mutual_information,
        r.discord,
        r.nu1,
        r.nu2,
        r.nu_plus,
        r.nu_minus,
    ]
}

pub fn render_csv(reports: &[CorrelationReport], digits: usize) -> String {
    let mut out = String::with_capacity(64 * (reports.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for report in reports {
        let _ = writeln!(out, "{}", csv_row(report, digits));
    }
    out
}

fn rounded(report: &CorrelationReport, digits: usize) -> CorrelationReport {
    let mut r = report.clone();
    r.t = round_sig(r.t, digits);
    r.r = round_sig(r.r, digits);
    r.temperature = round_sig(r.temperature, digits);
    r.log_negativity = round_sig(r.log_negativity, digits);
    r.mutual_information = round_sig(r.mutual_information, digits);
    r.discord = round_sig(r.discord, digits);
    r.nu1 = round_sig(r.nu1, digits);
    r.nu2 = round_sig(r.nu2, digits);
    r.nu_plus = round_sig(r.nu_plus, digits);
    r.nu_minus = round_sig(r.nu_minus, digits);
    r.diagnostics = Default::default();
    r
}

pub fn render_json(reports: &[CorrelationReport], digits: usize) -> Result<String> {
    let rows: Vec<CorrelationReport> = reports.iter().map(|r| rounded(r, digits)).collect();
    let mut text = serde_json::to_string_pretty(&rows).map_err(|source| HarvestError::Json {
        path: "<memory>".into(),
        source,
    })?;
    text.push('\n');
    Ok(text)
}

/// Writes reports as CSV or JSON (same records either way).
pub fn emit(
    reports: &[CorrelationReport],
    format: OutputFormat,
    path: &Path,
    digits: usize,
) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => render_csv(reports, digits),
        OutputFormat::Json => render_json(reports, digits)?,
    };
    fs::write(path, text).map_err(|source| HarvestError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads back a JSON report file.
pub fn read_json_reports(path: &Path) -> Result<Vec<CorrelationReport>> {
    let text = fs::read_to_string(path).map_err(|source| HarvestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| HarvestError::Json {
        path: path.display().to_string(),
        source,
    })
}
