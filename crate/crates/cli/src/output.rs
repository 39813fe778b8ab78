use serde_json::{json, Value};

use crate::cli::Format;

/// The document every command emits. Keys serialize in sorted order, so
/// identical runs give identical bytes.
pub fn report(command: &str, params: Value, result: Value) -> Value {
    json!({
        "tool": "wreathkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "result": result,
    })
}

pub fn error_object(code: &str, message: &str) -> Value {
    json!({
        "tool": "wreathkit",
        "version": env!("CARGO_PKG_VERSION"),
        "error": { "code": code, "message": message },
    })
}

/// Leaf values keyed by their dotted path, arrays indexed as `a[3]`.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if !xs.is_empty() => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        Format::Pretty => {
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
    }
}
