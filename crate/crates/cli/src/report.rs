//! Experiment reports: the structured JSON document, the human table and a
//! flat CSV view.

use beurling::numfmt::{format_sig, format_sig17};
use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Inconclusive => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Command-specific part of a report.
pub struct Outcome {
    pub verdict: Verdict,
    pub witnesses: Value,
    pub result: Value,
    /// Headline rows for the human table.
    pub summary: Vec<(String, Value)>,
}

impl Outcome {
    pub fn new(verdict: Verdict, result: impl Serialize) -> Self {
        Outcome {
            verdict,
            witnesses: Value::Array(Vec::new()),
            result: serde_json::to_value(result).expect("serializable result"),
            summary: Vec::new(),
        }
    }

    pub fn witnesses(mut self, w: impl Serialize) -> Self {
        self.witnesses = serde_json::to_value(w).expect("serializable witnesses");
        self
    }

    pub fn row(mut self, key: &str, value: impl Serialize) -> Self {
        self.summary.push((key.to_string(), serde_json::to_value(value).expect("serializable row")));
        self
    }
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub version: String,
    pub params: Value,
    pub verdict: Verdict,
    pub witnesses: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
    #[serde(skip)]
    pub summary: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str, params: Value, outcome: Outcome, wall_clock_seconds: Option<f64>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            params,
            verdict: outcome.verdict,
            witnesses: outcome.witnesses,
            result: outcome.result,
            wall_clock_seconds,
            summary: outcome.summary,
        }
    }

    /// Pretty JSON with every non-integral number written to 17 significant
    /// digits; non-finite floats become `null`.
    pub fn to_json(&self) -> String {
        let value = fixed_precision(serde_json::to_value(self).expect("serializable report"));
        let mut s = serde_json::to_string_pretty(&value).expect("serializable value");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("verdict".into(), self.verdict.as_str().into()),
        ];
        if let Value::Object(params) = &self.params {
            for (k, v) in params {
                rows.push((format!("--{}", k.replace('_', "-")), short(v)));
            }
        }
        for (k, v) in &self.summary {
            rows.push((k.clone(), short(v)));
        }
        if let Some(t) = self.wall_clock_seconds {
            rows.push(("wall clock (s)".into(), format_sig(t, 6)));
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }

    /// `path,value` rows for every scalar leaf of the result payload.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("path,value\n");
        let result = fixed_precision(self.result.clone());
        flatten("", &result, &mut out);
        out
    }
}

fn fixed_precision(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => match n.as_f64() {
            Some(x) if x.is_finite() => {
                Value::Number(serde_json::from_str::<Number>(&format_sig17(x)).expect("valid number"))
            }
            _ => Value::Null,
        },
        Value::Array(a) => Value::Array(a.into_iter().map(fixed_precision).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, fixed_precision(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix},{}\n", csv_field(s))),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const MAX_TABLE_ITEMS: usize = 10;

// Six significant digits, long arrays elided.
fn short(v: &Value) -> String {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            n.as_f64().map_or_else(|| n.to_string(), |x| format_sig(x, 6))
        }
        Value::String(s) => s.clone(),
        Value::Array(a) => {
            let mut items: Vec<String> = a.iter().take(MAX_TABLE_ITEMS).map(short).collect();
            if a.len() > MAX_TABLE_ITEMS {
                items.push(format!("... ({} total)", a.len()));
            }
            format!("[{}]", items.join(", "))
        }
        Value::Object(o) => {
            let items: Vec<String> = o.iter().map(|(k, x)| format!("{k}: {}", short(x))).collect();
            format!("{{{}}}", items.join(", "))
        }
        other => other.to_string(),
    }
}
