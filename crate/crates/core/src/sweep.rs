//! Parameter sweeps over the model dynamics, figure presets, and their
//! CSV/JSON serializations.
//!
//! Grid points are evaluated in parallel and collected in index order, so
//! the output does not depend on scheduling.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{correlation_report, OptimizerSettings};
use crate::models::{model_state, Model, ModelParams};
use crate::qmat::Subsystem;

/// Negativity below this counts as zero for sudden-death detection.
pub const SUDDEN_DEATH_TOL: f64 = 1e-9;

/// Significant digits in CSV output.
pub const CSV_SIGNIFICANT_DIGITS: usize = 12;

pub const CSV_COLUMNS: [&str; 6] = [
    "lambda_t",
    "discord",
    "gmqd",
    "negativity",
    "classical_corr",
    "mutual_info",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// A single time series.
    Time,
    /// One time series per purity in the secondary grid.
    Purity,
    /// One time series per `γ/λ` in the secondary grid (dephasing only).
    Coupling,
}

impl SweepVariable {
    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweepVariable::Time => Vec::new(),
            SweepVariable::Purity => vec![0.0, 0.25, 0.5, 0.75, 1.0],
            SweepVariable::Coupling => vec![0.0, 0.8, 1.0, 2.0],
        }
    }

    fn column(self) -> Option<&'static str> {
        match self {
            SweepVariable::Time => None,
            SweepVariable::Purity => Some("p"),
            SweepVariable::Coupling => Some("gamma_over_lambda"),
        }
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time" => Ok(SweepVariable::Time),
            "purity" => Ok(SweepVariable::Purity),
            "coupling" => Ok(SweepVariable::Coupling),
            other => Err(Error::InvalidArgument(format!(
                "unknown sweep variable {other:?}, expected time, purity or coupling"
            ))),
        }
    }
}

/// A time grid `λtᵢ = i·t_max/(steps − 1)` for one or more parameter sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    /// Model and fixed parameters; `lambda_t` is ignored.
    pub base: ModelParams,
    pub t_max: f64,
    pub steps: usize,
    pub variable: SweepVariable,
    /// Secondary grid for purity or coupling sweeps.
    pub values: Vec<f64>,
    pub measured: Subsystem,
}

impl SweepSpec {
    pub fn time(base: ModelParams, t_max: f64, steps: usize) -> Self {
        Self {
            base,
            t_max,
            steps,
            variable: SweepVariable::Time,
            values: Vec::new(),
            measured: Subsystem::B,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "steps = {} must be at least 2",
                self.steps
            )));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "t_max = {} must be positive",
                self.t_max
            )));
        }
        if self.variable == SweepVariable::Coupling && self.base.model == Model::Cavity {
            return Err(Error::InvalidArgument(
                "coupling sweeps only apply to the dephasing model".into(),
            ));
        }
        if self.variable != SweepVariable::Time && self.values.is_empty() {
            return Err(Error::InvalidArgument("secondary sweep grid is empty".into()));
        }
        for (_, params) in self.series_params() {
            params.check()?;
        }
        Ok(())
    }

    pub fn time_grid(&self) -> Vec<f64> {
        let dt = self.t_max / (self.steps - 1) as f64;
        (0..self.steps).map(|i| i as f64 * dt).collect()
    }

    fn series_params(&self) -> Vec<(Option<f64>, ModelParams)> {
        match self.variable {
            SweepVariable::Time => vec![(None, self.base)],
            SweepVariable::Purity => self
                .values
                .iter()
                .map(|&p| (Some(p), ModelParams { p, ..self.base }))
                .collect(),
            SweepVariable::Coupling => self
                .values
                .iter()
                .map(|&g| {
                    (
                        Some(g),
                        ModelParams {
                            gamma_over_lambda: g,
                            ..self.base
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Measures at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    /// Secondary-grid value for purity/coupling sweeps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<f64>,
    pub lambda_t: f64,
    pub discord: f64,
    pub gmqd: f64,
    pub negativity: f64,
    pub classical_corr: f64,
    pub mutual_info: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(
            Range {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            },
            |r, v| Range {
                min: r.min.min(v),
                max: r.max.max(v),
            },
        )
    }
}

/// A maximal run of grid points, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub start_index: usize,
    pub end_index: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesSummary {
    pub series: Option<f64>,
    pub discord: Range,
    pub gmqd: Range,
    pub negativity: Range,
    pub classical_corr: Range,
    pub mutual_info: Range,
    /// Runs of at least two consecutive points with negativity below
    /// [`SUDDEN_DEATH_TOL`].
    pub sudden_death: Vec<Interval>,
    pub unconverged_points: usize,
}

impl SeriesSummary {
    fn of(series: Option<f64>, rows: &[SweepRow]) -> Self {
        let lambda_t: Vec<f64> = rows.iter().map(|r| r.lambda_t).collect();
        let negativity: Vec<f64> = rows.iter().map(|r| r.negativity).collect();
        Self {
            series,
            discord: Range::of(rows.iter().map(|r| r.discord)),
            gmqd: Range::of(rows.iter().map(|r| r.gmqd)),
            negativity: Range::of(negativity.iter().copied()),
            classical_corr: Range::of(rows.iter().map(|r| r.classical_corr)),
            mutual_info: Range::of(rows.iter().map(|r| r.mutual_info)),
            sudden_death: sudden_death_intervals(&lambda_t, &negativity),
            unconverged_points: rows.iter().filter(|r| !r.converged).count(),
        }
    }
}

/// Rows in series order, ascending `λt` within each series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<SeriesSummary>,
}

impl SweepOutput {
    /// Rows belonging to the `k`-th series.
    pub fn series_rows(&self, k: usize) -> &[SweepRow] {
        let n = self.spec.steps;
        &self.rows[k * n..(k + 1) * n]
    }

    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        let mut header: Vec<&str> = self.spec.variable.column().into_iter().collect();
        header.extend(CSV_COLUMNS);
        writeln!(w, "{}", header.join(","))?;
        for row in &self.rows {
            let mut fields: Vec<String> = row.series.iter().map(|&v| format_sig(v)).collect();
            fields.extend(
                [
                    row.lambda_t,
                    row.discord,
                    row.gmqd,
                    row.negativity,
                    row.classical_corr,
                    row.mutual_info,
                ]
                .map(format_sig),
            );
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, self)?;
        writeln!(w)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

impl fmt::Display for SweepOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = &self.spec;
        let model = match spec.base.model {
            Model::Cavity => "cavity",
            Model::Dephasing => "dephasing",
        };
        let swept = |v: SweepVariable, x: f64| {
            if spec.variable == v {
                "swept".to_string()
            } else {
                x.to_string()
            }
        };
        writeln!(
            f,
            "model={model} p={} theta={} gamma/lambda={} t_max={} steps={} measured={}",
            swept(SweepVariable::Purity, spec.base.p),
            spec.base.theta,
            swept(SweepVariable::Coupling, spec.base.gamma_over_lambda),
            spec.t_max,
            spec.steps,
            spec.measured
        )?;
        for s in &self.summaries {
            if let (Some(v), Some(name)) = (s.series, spec.variable.column()) {
                writeln!(f, "[{name} = {v}]")?;
            }
            for (name, r) in [
                ("discord", s.discord),
                ("gmqd", s.gmqd),
                ("negativity", s.negativity),
                ("classical_corr", s.classical_corr),
                ("mutual_info", s.mutual_info),
            ] {
                writeln!(
                    f,
                    "  {name:<15} min {:<14} max {}",
                    format_sig(r.min),
                    format_sig(r.max)
                )?;
            }
            if s.sudden_death.is_empty() {
                writeln!(f, "  sudden-death intervals: none")?;
            } else {
                writeln!(f, "  sudden-death intervals: {}", s.sudden_death.len())?;
                for i in &s.sudden_death {
                    writeln!(f, "    lambda_t in [{}, {}]", format_sig(i.start), format_sig(i.end))?;
                }
            }
            if s.unconverged_points > 0 {
                writeln!(f, "  warning: optimizer unconverged at {} points", s.unconverged_points)?;
            }
        }
        Ok(())
    }
}

pub fn run_sweep(spec: &SweepSpec, settings: &OptimizerSettings) -> Result<SweepOutput> {
    spec.check()?;
    let times = spec.time_grid();
    let points: Vec<(Option<f64>, ModelParams)> = spec
        .series_params()
        .into_iter()
        .flat_map(|(series, params)| times.iter().map(move |&t| (series, params.at_time(t))))
        .collect();

    let rows = points
        .par_iter()
        .map(|&(series, params)| {
            let rho = model_state(&params)?;
            let r = correlation_report(&rho, spec.measured, settings);
            Ok(SweepRow {
                series,
                lambda_t: params.lambda_t,
                discord: r.discord,
                gmqd: r.gmqd,
                negativity: r.negativity,
                classical_corr: r.classical_corr,
                mutual_info: r.mutual_info,
                converged: r.converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summaries = rows
        .chunks(spec.steps)
        .map(|chunk| SeriesSummary::of(chunk[0].series, chunk))
        .collect();
    Ok(SweepOutput {
        spec: spec.clone(),
        rows,
        summaries,
    })
}

/// Maximal runs of at least two consecutive points with negativity below
/// [`SUDDEN_DEATH_TOL`].
pub fn sudden_death_intervals(lambda_t: &[f64], negativity: &[f64]) -> Vec<Interval> {
    let mut out = Vec::new();
    let mut start = None;
    for i in 0..=negativity.len() {
        let dead = negativity.get(i).is_some_and(|&n| n < SUDDEN_DEATH_TOL);
        match (dead, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if i - s >= 2 {
                    out.push(Interval {
                        start_index: s,
                        end_index: i - 1,
                        start: lambda_t[s],
                        end: lambda_t[i - 1],
                    });
                }
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// `x` with [`CSV_SIGNIFICANT_DIGITS`] significant digits in the style of
/// C's `%.12g`: trailing zeros dropped, exponent form outside `[1e-4, 1e12)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = CSV_SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parameter sets of the reference time-evolution figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Cavity, p = 1, θ = π/4.
    F1a,
    /// Cavity, p = 0.5, θ = π/4.
    F1b,
    /// Dephasing, γ = 0, θ = π/60, p = 0.5.
    F2a,
    /// Dephasing, γ = λ, θ = π/60, p = 0.5.
    F2b,
    /// Dephasing, γ = 2λ, θ = π/60, p = 0.5.
    F3a,
    /// Dephasing, γ = 2λ, θ = π/3, p = 0.5.
    F3b,
}

pub const PRESET_T_MAX: f64 = 12.0;
pub const PRESET_STEPS: usize = 1200;

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::F1a,
        Preset::F1b,
        Preset::F2a,
        Preset::F2b,
        Preset::F3a,
        Preset::F3b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::F1a => "f1a",
            Preset::F1b => "f1b",
            Preset::F2a => "f2a",
            Preset::F2b => "f2b",
            Preset::F3a => "f3a",
            Preset::F3b => "f3b",
        }
    }

    pub fn params(self) -> ModelParams {
        match self {
            Preset::F1a => ModelParams::cavity(1.0, PI / 4.0, 0.0),
            Preset::F1b => ModelParams::cavity(0.5, PI / 4.0, 0.0),
            Preset::F2a => ModelParams::dephasing(0.5, PI / 60.0, 0.0, 0.0),
            Preset::F2b => ModelParams::dephasing(0.5, PI / 60.0, 1.0, 0.0),
            Preset::F3a => ModelParams::dephasing(0.5, PI / 60.0, 2.0, 0.0),
            Preset::F3b => ModelParams::dephasing(0.5, PI / 3.0, 2.0, 0.0),
        }
    }

    pub fn spec(self) -> SweepSpec {
        SweepSpec::time(self.params(), PRESET_T_MAX, PRESET_STEPS)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
            Error::InvalidArgument(format!("unknown preset {s:?}, expected one of {}", names.join(", ")))
        })
    }
}
