//! `{"n": 4, "window": [lo, hi], "rows": [[...], ...]}` with rows listed from
//! `i = n` down to `0` in display-column order. Integers that fit in 64 bits
//! are JSON numbers, larger ones decimal strings, fractions `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::ascii::parse_entry;
use super::{CohomologyTable, ColRange};
use crate::error::{Error, Result};
use crate::parallel::Execution;

fn entry_json(v: &BigRational) -> Value {
    if v.is_integer() {
        let i: BigInt = v.to_integer();
        if let Some(small) = i.to_i64() {
            return json!(small);
        }
        return Value::String(i.to_string());
    }
    Value::String(v.to_string())
}

fn json_err(message: impl Into<String>) -> Error {
    Error::Parse { line: 1, column: 1, message: message.into() }
}

impl CohomologyTable {
    pub fn to_json(&self, range: ColRange) -> Result<Value> {
        let rows = self.materialize(range, Execution::default())?;
        let rows: Vec<Value> = rows.iter().rev().map(|r| Value::Array(r.iter().map(entry_json).collect())).collect();
        Ok(json!({ "n": self.n, "window": [range.lo, range.hi], "rows": rows }))
    }

    pub fn from_json(text: &str) -> Result<CohomologyTable> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        CohomologyTable::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<CohomologyTable> {
        let n = v["n"].as_u64().ok_or_else(|| json_err("missing or invalid \"n\""))? as usize;
        let window =
            v["window"].as_array().filter(|w| w.len() == 2).ok_or_else(|| json_err("\"window\" must be [lo, hi]"))?;
        let lo = window[0].as_i64().ok_or_else(|| json_err("bad window lo"))?;
        let hi = window[1].as_i64().ok_or_else(|| json_err("bad window hi"))?;
        let rows = v["rows"].as_array().ok_or_else(|| json_err("missing \"rows\""))?;
        if rows.len() != n + 1 {
            return Err(json_err(format!("expected {} rows, found {}", n + 1, rows.len())));
        }
        let mut parsed = Vec::with_capacity(n + 1);
        for (pos, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| json_err(format!("row {} is not an array", n - pos)))?;
            let entries = row
                .iter()
                .map(|e| {
                    let val = match e {
                        Value::Number(num) => num.as_u64().map(|u| BigRational::from_integer(u.into())),
                        Value::String(s) => parse_entry(s.trim()),
                        _ => None,
                    };
                    val.ok_or_else(|| json_err(format!("bad entry {e} in row {}", n - pos)))
                })
                .collect::<Result<Vec<_>>>()?;
            parsed.push(entries);
        }
        parsed.reverse();
        CohomologyTable::literal(n, ColRange::new(lo, hi), parsed)
    }
}
