//! Output envelopes and byte-stable JSON.

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "moonlab/v1";

/// Integers at or above this bound are written as decimal strings.
const EXACT_LIMIT: u64 = 1 << 53;

/// Replaces integers that a double cannot hold exactly by their decimal text.
fn protect_large(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_u64() {
            Some(x) if x >= EXACT_LIMIT => Value::String(x.to_string()),
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(protect_large).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, protect_large(v)))
                .collect(),
        ),
        other => other,
    }
}

/// One envelope as a single JSON line. Object keys come out sorted because
/// `serde_json::Map` is ordered.
pub fn envelope<T: Serialize>(command: &str, result: &T) -> String {
    let result = serde_json::to_value(result).expect("reports serialize");
    let doc = json!({ "schema": SCHEMA, "command": command, "result": protect_large(result) });
    let mut line = serde_json::to_string(&doc).expect("values serialize");
    line.push('\n');
    line
}

/// A per-length table `{"3": c_3, ..., "n": c_n}`.
pub fn length_map(counts: &[u64]) -> Value {
    let map = counts
        .iter()
        .enumerate()
        .skip(3)
        .map(|(l, &c)| (l.to_string(), Value::from(c)))
        .collect();
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_counts_become_strings() {
        let out = envelope("count", &json!({ "b": 1u64 << 53, "a": [(1u64 << 53) - 1] }));
        assert_eq!(
            out,
            "{\"command\":\"count\",\"result\":{\"a\":[9007199254740991],\"b\":\"9007199254740992\"},\"schema\":\"moonlab/v1\"}\n"
        );
    }

    #[test]
    fn length_map_starts_at_three() {
        assert_eq!(length_map(&[0, 0, 0, 4, 3]), json!({ "3": 4, "4": 3 }));
    }
}
