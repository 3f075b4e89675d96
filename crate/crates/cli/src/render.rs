//! Output formatting shared by the subcommands.

use serde::Serialize;
use serde_json::{Map, Number, Value};

/// Rounds to 15 significant digits, the most a double always round-trips.
/// Negative zero comes out as zero.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(sig15(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with every float rounded by [`sig15`].
pub fn json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&round_value(v)).expect("json values serialize")
}

/// `key: value` lines for the text format. Nested objects are flattened with
/// dotted keys.
pub fn text<T: Serialize>(value: &T) -> String {
    let v = round_value(serde_json::to_value(value).expect("report types serialize"));
    let mut lines = Vec::new();
    match v {
        Value::Object(map) => flatten("", &map, &mut lines),
        other => lines.push(scalar(&other)),
    }
    lines.join("\n")
}

fn flatten(prefix: &str, map: &Map<String, Value>, out: &mut Vec<String>) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) => flatten(&key, inner, out),
            other => out.push(format!("{key}: {}", scalar(other))),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
