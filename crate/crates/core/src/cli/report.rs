//! Reports: a key/value tree rendered as `key=value` lines or as JSON.

use serde::Serialize;
use serde_json::{Map, Value};

/// A titled tree of results. JSON objects keep keys sorted, so rendering
/// is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    kind: String,
    body: Map<String, Value>,
}

impl Report {
    pub fn new(kind: impl Into<String>) -> Self {
        Report {
            kind: kind.into(),
            body: Map::new(),
        }
    }

    /// Builds a report from any struct that serializes to a JSON object.
    pub fn from_serialize<T: Serialize>(kind: impl Into<String>, value: &T) -> Self {
        let mut r = Report::new(kind);
        match serde_json::to_value(value).expect("report values serialize") {
            Value::Object(map) => r.body = map,
            other => {
                r.body.insert("value".into(), other);
            }
        }
        r
    }

    pub fn with<T: Serialize>(mut self, key: &str, value: T) -> Self {
        self.insert(key, value);
        self
    }

    pub fn insert<T: Serialize>(&mut self, key: &str, value: T) {
        self.body.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report values serialize"),
        );
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.body.get(key)
    }

    pub fn to_json_value(&self) -> Value {
        let mut map = self.body.clone();
        map.insert("kind".into(), Value::String(self.kind.clone()));
        Value::Object(map)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("valid JSON");
        s.push('\n');
        s
    }

    /// One `dotted.key=value` line per leaf. Arrays of scalars (vectors,
    /// matrix rows) stay on one line.
    pub fn render_text(&self) -> String {
        let mut out = format!("kind={}\n", self.kind);
        for (k, v) in &self.body {
            flatten(k, v, &mut out);
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                flatten(&format!("{prefix}.{k}"), child, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), child, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push('=');
            out.push_str(&scalar(v));
            out.push('\n');
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::IntMatrix;

    #[test]
    fn text_and_json() {
        let r = Report::new("demo")
            .with("tau_T", 6)
            .with("m", IntMatrix::identity(2))
            .with("note", "ok")
            .with("missing", None::<i32>);
        let text = r.render_text();
        assert_eq!(
            text,
            "kind=demo\nm.cols=2\nm.entries=[[1, 0], [0, 1]]\nm.rows=2\nmissing=none\nnote=ok\ntau_T=6\n"
        );
        let v: Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(v["kind"], "demo");
        assert_eq!(v["tau_T"], 6);
        assert_eq!(v["m"]["entries"][0][0], "1");
    }
}
