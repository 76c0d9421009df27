//! One run per axis value, executed concurrently and merged in input order.

use clap::ValueEnum;

use crate::config::{Kind, ScenarioConfig};
use crate::error::CliError;
use crate::output::{csv_table, number};
use crate::scenario::{run_scenario, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Dt,
    K,
    Theta0,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Dt => "dt",
            Axis::K => "k",
            Axis::Theta0 => "theta0",
        }
    }
}

/// Below this the error is rounding noise and no order is reported.
pub const ERROR_FLOOR: f64 = 1e-13;

#[derive(Debug)]
pub struct SweepRow {
    pub value: f64,
    pub result: Result<Summary, CliError>,
    /// Observed order of the error against the previous successful row (dt axis).
    pub order: Option<f64>,
}

impl SweepRow {
    pub fn failed(&self) -> bool {
        self.result.is_err()
    }
}

pub fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| CliError::Config(format!("bad sweep value `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Config("empty sweep value list".into()));
    }
    Ok(values)
}

fn point(template: &ScenarioConfig, axis: Axis, value: f64) -> ScenarioConfig {
    let mut cfg = template.clone();
    match axis {
        Axis::Dt => cfg.dt = Some(value),
        Axis::Theta0 => cfg.theta0 = Some(value),
        Axis::K => {
            cfg.chain = Some(value as usize);
            cfg.network = None;
        }
    }
    cfg
}

pub fn sweep(template: &ScenarioConfig, axis: Axis, values: &[f64]) -> Result<Vec<SweepRow>, CliError> {
    if values.is_empty() {
        return Err(CliError::Config("empty sweep value list".into()));
    }
    let kind = template
        .kind
        .ok_or_else(|| CliError::Config("no scenario kind given".into()))?;
    match (axis, kind) {
        (Axis::K, Kind::Network) => {
            if let Some(v) = values.iter().find(|v| !(v.fract() == 0.0 && **v >= 1.0 && **v <= 64.0)) {
                return Err(CliError::Config(format!("chain length {v} is not a positive integer")));
            }
        }
        (Axis::K, _) => return Err(CliError::Config("axis k applies to network scenarios".into())),
        (_, Kind::Polarizer) => {
            return Err(CliError::Config(format!("axis {} does not apply to polarizer", axis.as_str())))
        }
        _ => {}
    }

    // Each run stages its own result; the merge below is single-threaded.
    let staged: Vec<Result<Summary, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = values
            .iter()
            .map(|&v| {
                let cfg = point(template, axis, v);
                s.spawn(move || run_scenario(&cfg.normalize()?).map(|o| o.summary))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let mut rows: Vec<SweepRow> = Vec::with_capacity(values.len());
    let mut prev: Option<(f64, f64)> = None;
    for (&value, result) in values.iter().zip(staged) {
        let mut order = None;
        if let (Axis::Dt, Ok(s)) = (axis, &result) {
            if let Some((dt0, e0)) = prev {
                if s.max_error > ERROR_FLOOR && e0 > ERROR_FLOOR && dt0 != value {
                    order = Some((e0 / s.max_error).ln() / (dt0 / value).ln());
                }
            }
            prev = Some((value, s.max_error));
        }
        rows.push(SweepRow { value, result, order });
    }
    Ok(rows)
}

pub const COLUMNS: [&str; 12] = [
    "value",
    "status",
    "steps",
    "terminal_fidelity",
    "max_energy",
    "final_survival",
    "max_error",
    "order",
    "t_star",
    "terminal_success",
    "max_violation",
    "message",
];

pub fn to_csv(axis: Axis, rows: &[SweepRow]) -> String {
    let mut header: Vec<String> = COLUMNS.iter().map(|s| s.to_string()).collect();
    header[0] = axis.as_str().to_string();
    let opt = |x: Option<f64>| x.map(number).unwrap_or_default();
    let records = rows.iter().map(|row| match &row.result {
            Ok(s) => vec![
                number(row.value),
                "ok".into(),
                s.steps.to_string(),
                number(s.terminal_fidelity),
                number(s.max_energy),
                number(s.final_survival),
                number(s.max_error),
                opt(row.order),
                opt(s.t_star),
                opt(s.terminal_success),
                opt(s.max_violation),
                String::new(),
            ],
            Err(e) => {
                let mut f = vec![String::new(); COLUMNS.len()];
                f[0] = number(row.value);
                f[1] = e.tag().into();
                f[11] = e.to_string();
                f
            }
        });
    csv_table(&header, records)
}
