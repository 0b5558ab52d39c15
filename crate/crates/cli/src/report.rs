//! Report documents and their two renderings.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

/// The result of one command: every verdict that was evaluated, the
/// module report, and prose lines for the human rendering.
pub struct Outcome {
    pub verdicts: Vec<(String, bool)>,
    pub report: Value,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn new(report: Value) -> Self {
        Self { verdicts: Vec::new(), report, lines: Vec::new() }
    }

    pub fn verdict(&mut self, name: impl Into<String>, holds: bool) {
        self.verdicts.push((name.into(), holds));
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

/// Assembles the structured document. Keys come out sorted because
/// `serde_json` maps are ordered.
pub fn document(command: Value, outcome: &Outcome, timing_ms: Option<f64>) -> Value {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert("command".into(), command);
    doc.insert("passed".into(), outcome.passed().into());
    let verdicts: Map<String, Value> =
        outcome.verdicts.iter().map(|(name, ok)| (name.clone(), Value::Bool(*ok))).collect();
    doc.insert("verdicts".into(), Value::Object(verdicts));
    doc.insert("report".into(), outcome.report.clone());
    if let Some(ms) = timing_ms {
        doc.insert("timing_ms".into(), ms.into());
    }
    Value::Object(doc)
}

/// Compact JSON with every float written to 17 significant digits.
pub fn render_structured(doc: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    doc.serialize(&mut ser).expect("writing to a Vec cannot fail");
    let mut text = String::from_utf8(out).expect("JSON output is UTF-8");
    text.push('\n');
    text
}

struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            CompactFormatter.write_null(writer)
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn render_human(title: &str, outcome: &Outcome, timing_ms: Option<f64>) -> String {
    let mut out = format!("gyrokit {title}\n");
    for line in &outcome.lines {
        out.push_str(line);
        out.push('\n');
    }
    out.push('\n');
    let width = outcome.verdicts.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    for (name, ok) in &outcome.verdicts {
        out.push_str(&format!("  {name:<width$}  {}\n", if *ok { "pass" } else { "FAIL" }));
    }
    if let Some(ms) = timing_ms {
        out.push_str(&format!("elapsed: {ms:.1} ms\n"));
    }
    if outcome.passed() {
        out.push_str("ALL CHECKS PASSED\n");
    } else {
        out.push_str(&format!("CHECKS FAILED: {}\n", outcome.failures().join(", ")));
    }
    out
}
