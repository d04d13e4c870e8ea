use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

/// Machine-readable record of one computation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub operation: String,
    pub parameters: Map<String, Value>,
    pub dims: Value,
    pub stable_dims: Value,
    pub result: Value,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(operation: &str) -> Self {
        Self {
            operation: operation.to_string(),
            parameters: Map::new(),
            dims: Value::Null,
            stable_dims: Value::Null,
            result: Value::Null,
            runtime_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), v.into());
        self
    }

    /// Everything except `runtime_ms`, for byte-level comparison of runs.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("runtime_ms");
        }
        v
    }
}

/// Runs `f`, returning its value and the elapsed milliseconds.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_millis() as u64)
}
