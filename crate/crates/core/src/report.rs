//! Tabular CSV / JSON rendering for the command-line front end.
//!
//! Every number is formatted once, as a decimal string at a fixed precision,
//! so the CSV and JSON outputs are deterministic and the JSON survives a
//! parse/serialise round trip byte for byte.

use serde_json::{Map, Value};

use crate::analysis::{CoherenceReport, OptimizationResult, OverlapCurve};
use crate::fock::TwoModeFockState;
use crate::interferometer::{FringeScan, VisibilityReport};

pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub fn num(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    // Avoid "-0.000" for values that round to zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Header plus string-valued rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn rows_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .headers
                        .iter()
                        .zip(row)
                        .map(|(h, v)| (h.clone(), Value::String(v.clone())))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Wraps rows with a `command` tag and extra top-level fields.
pub fn json_document(command: &str, fields: Vec<(&str, Value)>, table: &Table) -> String {
    let mut obj = Map::new();
    obj.insert("command".into(), Value::String(command.into()));
    for (k, v) in fields {
        obj.insert(k.into(), v);
    }
    obj.insert("rows".into(), table.rows_json());
    render_json(&Value::Object(obj))
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("string-valued JSON");
    s.push('\n');
    s
}

pub fn str_value(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

pub fn state_table(state: &TwoModeFockState, precision: usize) -> Table {
    let mut t = Table::new(["m", "re", "im", "probability"]);
    for (m, c) in state.amplitudes().iter().enumerate() {
        t.push(vec![
            m.to_string(),
            num(c.re, precision),
            num(c.im, precision),
            num(c.norm_sqr(), precision),
        ]);
    }
    t
}

pub fn optimization_table(results: &[OptimizationResult], precision: usize) -> Table {
    let mut t = Table::new([
        "n",
        "eta_star",
        "fidelity_star",
        "evaluations",
        "bracket_lo",
        "bracket_hi",
    ]);
    for r in results {
        t.push(vec![
            r.n.to_string(),
            num(r.eta_star, precision),
            num(r.fidelity_star, precision),
            r.evaluations.to_string(),
            num(r.bracket.0, precision),
            num(r.bracket.1, precision),
        ]);
    }
    t
}

pub fn curve_table(curve: &OverlapCurve, precision: usize) -> Table {
    let mut t = Table::new(["n", "overlap"]);
    for &(n, f) in &curve.points {
        t.push(vec![n.to_string(), num(f, precision)]);
    }
    t
}

/// Columns `phi, p_0, …, p_N, parity, extremal`.
pub fn fringe_table(scan: &FringeScan, precision: usize) -> Table {
    let mut headers = vec!["phi".to_string()];
    headers.extend((0..=scan.n).map(|m| format!("p_{m}")));
    headers.push("parity".into());
    headers.push("extremal".into());
    let mut t = Table::new(headers);
    for (j, phi) in scan.phases.iter().enumerate() {
        let mut row = vec![num(*phi, precision)];
        row.extend(scan.distributions[j].iter().map(|p| num(*p, precision)));
        row.push(num(scan.parity[j], precision));
        row.push(num(scan.extremal[j], precision));
        t.push(row);
    }
    t
}

pub fn visibility_json(v: &VisibilityReport, signal: &str, precision: usize) -> Value {
    let mut obj = Map::new();
    obj.insert("signal".into(), str_value(signal));
    obj.insert("frequency".into(), str_value(v.frequency.to_string()));
    obj.insert(
        "component_magnitude".into(),
        str_value(num(v.component_magnitude, precision)),
    );
    obj.insert("mean_level".into(), str_value(num(v.mean_level, precision)));
    obj.insert("visibility".into(), str_value(num(v.visibility, precision)));
    obj.insert("sensitivity".into(), str_value(num(v.sensitivity, precision)));
    let norm = match v.normalization {
        crate::interferometer::Normalization::Probability => "probability",
        crate::interferometer::Normalization::Parity => "parity",
    };
    obj.insert("normalization".into(), str_value(norm));
    obj.insert("contrast".into(), str_value(num(v.contrast, precision)));
    Value::Object(obj)
}

pub fn coherence_json(r: &CoherenceReport, precision: usize) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), str_value(r.n.to_string()));
    obj.insert("eta".into(), str_value(num(r.eta, precision)));
    obj.insert("psi_n0_re".into(), str_value(num(r.psi_n0.re, precision)));
    obj.insert("psi_n0_im".into(), str_value(num(r.psi_n0.im, precision)));
    obj.insert("psi_0n_re".into(), str_value(num(r.psi_0n.re, precision)));
    obj.insert("psi_0n_im".into(), str_value(num(r.psi_0n.im, precision)));
    obj.insert("coherence".into(), str_value(num(r.coherence, precision)));
    obj.insert("half_fidelity".into(), str_value(num(r.half_fidelity, precision)));
    obj.insert(
        "noon_minus_overlap".into(),
        str_value(num(r.noon_minus_overlap, precision)),
    );
    Value::Object(obj)
}
