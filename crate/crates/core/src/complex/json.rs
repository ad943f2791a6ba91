use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{ChainComplex, CoefficientRing, ComplexError};
use crate::abelian::PrimeSet;
use crate::linalg::IntMatrix;

impl CoefficientRing {
    pub fn to_json(&self) -> Value {
        match self {
            Self::Integers => json!("Z"),
            Self::Rationals => json!("Q"),
            Self::Localized(p) => json!({ "Z_inv": p.primes().collect::<Vec<_>>() }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, ComplexError> {
        match v {
            Value::String(s) if s == "Z" => Ok(Self::Integers),
            Value::String(s) if s == "Q" => Ok(Self::Rationals),
            Value::Object(o) => {
                let primes = o
                    .get("Z_inv")
                    .and_then(Value::as_array)
                    .ok_or_else(|| parse_err("ring object must have a \"Z_inv\" array"))?;
                let mut values = Vec::with_capacity(primes.len());
                for p in primes {
                    let p = p
                        .as_u64()
                        .filter(|&p| p >= 2)
                        .ok_or_else(|| parse_err(format!("invalid prime {p}")))?;
                    values.push(p);
                }
                Ok(Self::Localized(PrimeSet::dividing(values)))
            }
            other => Err(parse_err(format!("unknown ring {other}"))),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> ComplexError {
    ComplexError::Parse(msg.into())
}

fn parse_entry(v: &Value) -> Result<BigInt, ComplexError> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|e| parse_err(format!("bad entry {s:?}: {e}"))),
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|e| parse_err(format!("bad entry {n}: {e}"))),
        other => Err(parse_err(format!(
            "matrix entries must be decimal strings, got {other}"
        ))),
    }
}

impl ChainComplex {
    /// Parses `{"ring", "lo", "ranks", "boundaries"}`; `boundaries[k]` is the
    /// list of rows of the differential from degree `lo + k + 1` to `lo + k`.
    pub fn from_json(v: &Value) -> Result<ChainComplex, ComplexError> {
        let obj = v
            .as_object()
            .ok_or_else(|| parse_err("complex must be a JSON object"))?;
        let ring = CoefficientRing::from_json(obj.get("ring").ok_or_else(|| parse_err("missing ring"))?)?;
        let lo = obj
            .get("lo")
            .and_then(Value::as_i64)
            .ok_or_else(|| parse_err("missing integer lo"))?;
        let ranks: Vec<usize> = obj
            .get("ranks")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing ranks array"))?
            .iter()
            .map(|r| {
                r.as_u64()
                    .map(|r| r as usize)
                    .ok_or_else(|| parse_err(format!("bad rank {r}")))
            })
            .collect::<Result<_, _>>()?;
        let raw = obj
            .get("boundaries")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing boundaries array"))?;
        if raw.len() != ranks.len().saturating_sub(1) {
            return Err(ComplexError::BoundaryCount {
                ranks: ranks.len(),
                expected: ranks.len().saturating_sub(1),
                got: raw.len(),
            });
        }
        let mut boundaries = Vec::with_capacity(raw.len());
        for (k, m) in raw.iter().enumerate() {
            let (rows, cols) = (ranks[k], ranks[k + 1]);
            let row_values = m
                .as_array()
                .ok_or_else(|| parse_err(format!("boundary {k} must be a list of rows")))?;
            if row_values.len() != rows {
                return Err(parse_err(format!(
                    "boundary {k} has {} rows, expected {rows}",
                    row_values.len()
                )));
            }
            let mut data = Vec::with_capacity(rows * cols);
            for row in row_values {
                let row = row
                    .as_array()
                    .ok_or_else(|| parse_err(format!("boundary {k} rows must be lists")))?;
                if row.len() != cols {
                    return Err(parse_err(format!(
                        "boundary {k} has a row of length {}, expected {cols}",
                        row.len()
                    )));
                }
                for e in row {
                    data.push(parse_entry(e)?);
                }
            }
            boundaries.push(IntMatrix::new(rows, cols, data).map_err(|e| parse_err(e.to_string()))?);
        }
        ChainComplex::new(ring, lo, ranks, boundaries)
    }

    pub fn to_json(&self) -> Value {
        let boundaries: Vec<Value> = self
            .boundaries
            .iter()
            .map(|m| {
                let rows: Vec<Value> = (0..m.rows())
                    .map(|i| Value::Array(m.row(i).iter().map(|e| Value::String(e.to_string())).collect()))
                    .collect();
                Value::Array(rows)
            })
            .collect();
        json!({
            "ring": self.ring.to_json(),
            "lo": self.lo,
            "ranks": self.ranks,
            "boundaries": boundaries,
        })
    }
}
