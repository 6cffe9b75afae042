//! JSON encodings shared by the subcommands. Vertices are 1-based, big
//! integers are decimal strings.

use maghom::ai_complex::Simplex;
use maghom::chain::HomologyGroup;
use maghom::num_bigint::BigInt;
use serde_json::{json, Value};

pub fn bigints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn group(h: &HomologyGroup) -> Value {
    json!({ "rank": h.rank, "torsion": bigints(&h.torsion) })
}

pub fn groups(hs: &[HomologyGroup]) -> Value {
    Value::Array(hs.iter().map(group).collect())
}

/// `[[vertex, position], ...]`.
pub fn simplex(s: &Simplex) -> Value {
    Value::Array(
        s.elements()
            .iter()
            .map(|e| json!([e.vertex + 1, e.position]))
            .collect(),
    )
}

pub fn one_based(t: &[usize]) -> Value {
    Value::Array(t.iter().map(|v| json!(v + 1)).collect())
}

pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
