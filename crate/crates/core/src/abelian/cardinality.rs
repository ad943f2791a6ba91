use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rank or multiplicity: a finite count, or the single symbol for a
/// countably infinite direct sum. Infinite cardinals are not distinguished.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl Cardinality {
    pub const ZERO: Cardinality = Cardinality::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Self::Finite(n) => Some(n),
            Self::Infinite => None,
        }
    }

    /// `C(r, q)`; `C(inf, 0) = 1`, `C(inf, q >= 1) = inf`.
    pub fn binomial(r: Cardinality, q: u64) -> Cardinality {
        match r {
            Self::Infinite if q == 0 => Self::Finite(1),
            Self::Infinite => Self::Infinite,
            Self::Finite(n) => Self::Finite(binomial(n, q)),
        }
    }
}

impl Default for Cardinality {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<u64> for Cardinality {
    fn from(n: u64) -> Self {
        Self::Finite(n)
    }
}

impl Add for Cardinality {
    type Output = Cardinality;

    fn add(self, rhs: Cardinality) -> Cardinality {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a.checked_add(b).expect("cardinality overflow")),
            _ => Self::Infinite,
        }
    }
}

impl Mul for Cardinality {
    type Output = Cardinality;

    fn mul(self, rhs: Cardinality) -> Cardinality {
        match (self, rhs) {
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a.checked_mul(b).expect("cardinality overflow")),
            (a, b) if a.is_zero() || b.is_zero() => Self::ZERO,
            _ => Self::Infinite,
        }
    }
}

impl std::iter::Sum for Cardinality {
    fn sum<I: Iterator<Item = Cardinality>>(iter: I) -> Cardinality {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(n) => write!(f, "{n}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(n) => serializer.serialize_u64(*n),
            Self::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinality {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        parse_cardinality(&v).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn parse_cardinality(v: &serde_json::Value) -> Result<Cardinality, String> {
    match v {
        serde_json::Value::String(s) if s == "inf" => Ok(Cardinality::Infinite),
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<u64>()
            .map(Cardinality::Finite)
            .map_err(|_| format!("invalid cardinality {n}")),
        other => Err(format!("expected a count or \"inf\", got {other}")),
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// `sum of C(n, p)` over `0 <= p <= n` with `p = parity (mod 2)`.
pub fn parity_binomial_sum(n: u64, parity: u64) -> u64 {
    (0..=n).filter(|p| p % 2 == parity % 2).map(|p| binomial(n, p)).sum()
}
