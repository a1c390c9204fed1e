//! The machine-readable run report: a stable JSON document with top-level
//! keys `command`, `inputs`, `results`, `flags` and `version`. Integers
//! are emitted as JSON numbers below 2^53 and as decimal strings above,
//! and polynomials as arrays of [x_exponent, y_exponent, z_exponent,
//! coefficient], so reports diff cleanly and round-trip losslessly.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SAFE_INT: u64 = 1 << 53;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub flags: Vec<String>,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, flags: Vec<String>) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            results,
            flags,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json_string(&self) -> String {
        // serde_json maps are sorted by key, so this is byte-deterministic
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

pub fn json_u64(v: u64) -> Value {
    if v < SAFE_INT {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

pub fn json_i128(v: i128) -> Value {
    if v.unsigned_abs() < SAFE_INT as u128 {
        json!(v as i64)
    } else {
        json!(v.to_string())
    }
}

pub fn json_fraction(num: u64, den: u64) -> Value {
    let reduced = fermat_syzygy::density::reduce_fraction(num, den);
    json!({
        "numerator": json_u64(num),
        "denominator": json_u64(den),
        "reduced": format!("{}/{}", reduced.0, reduced.1),
        "decimal": if den == 0 { 0.0 } else { num as f64 / den as f64 },
    })
}
