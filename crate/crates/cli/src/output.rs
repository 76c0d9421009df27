//! CSV / JSON rendering. Numbers use Rust's shortest round-trip form, so the
//! same run always produces the same bytes.

use serde_json::{json, Map, Value};

use crate::config::{Format, ScenarioConfig};
use crate::scenario::{ScenarioOutput, Summary};

pub fn number(x: f64) -> String {
    if x == 0.0 {
        // also folds −0
        "0".into()
    } else {
        format!("{x:e}")
    }
}

/// Header plus records, `\n`-terminated.
pub fn csv_table<S: AsRef<str>>(header: &[S], records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header.iter().map(|h| h.as_ref())).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

pub fn to_csv(out: &ScenarioOutput) -> String {
    csv_table(
        &out.table.columns,
        out.table.rows.iter().map(|row| row.iter().map(|&x| number(x)).collect()),
    )
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() { json!(x) } else { Value::Null }
}

pub fn summary_json(s: &Summary) -> Value {
    let mut m = Map::new();
    m.insert("steps".into(), json!(s.steps));
    m.insert("terminal_fidelity".into(), finite_or_null(s.terminal_fidelity));
    m.insert("max_energy".into(), finite_or_null(s.max_energy));
    m.insert("final_survival".into(), finite_or_null(s.final_survival));
    m.insert("max_error".into(), finite_or_null(s.max_error));
    if let Some(p) = s.terminal_success {
        m.insert("terminal_success".into(), finite_or_null(p));
        m.insert("t_star".into(), s.t_star.map_or(Value::Null, finite_or_null));
    }
    if let Some(v) = s.max_violation {
        m.insert("max_violation".into(), finite_or_null(v));
    }
    Value::Object(m)
}

pub fn metadata(cfg: &ScenarioConfig) -> Value {
    json!({
        "artifact": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::to_value(cfg).expect("plain data"),
    })
}

pub fn to_json(cfg: &ScenarioConfig, out: &ScenarioOutput) -> String {
    let rows: Vec<Value> = out
        .table
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(|&x| finite_or_null(x)).collect()))
        .collect();
    let doc = json!({
        "metadata": metadata(cfg),
        "summary": summary_json(&out.summary),
        "columns": out.table.columns,
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("valid JSON value");
    s.push('\n');
    s
}

pub fn render(cfg: &ScenarioConfig, out: &ScenarioOutput) -> String {
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => to_csv(out),
        Format::Json => to_json(cfg, out),
    }
}
