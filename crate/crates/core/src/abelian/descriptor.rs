use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::cardinality::parse_cardinality;
use super::{invariant_factor_chain, Cardinality, FgAbGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionPart {
    pub order: BigInt,
    pub mult: Cardinality,
}

/// An abelian group `Z^r + sum (Z/order)^mult` where the rank and the
/// multiplicities may be infinite.
///
/// Canonical form: the finitely-many torsion summands are in invariant-factor
/// form; an order carried with infinite multiplicity absorbs any finite copies
/// of the same order. Orders are strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    free_rank: Cardinality,
    torsion: Vec<TorsionPart>,
}

impl GroupDescriptor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds the canonical descriptor of `Z^free_rank + sum (Z/order)^mult`.
    /// Order 0 counts as `Z`, order 1 is dropped.
    pub fn new(free_rank: Cardinality, parts: impl IntoIterator<Item = (BigInt, Cardinality)>) -> Self {
        let mut free_rank = free_rank;
        let mut infinite: BTreeSet<BigInt> = BTreeSet::new();
        let mut finite: Vec<BigInt> = Vec::new();
        for (order, mult) in parts {
            let order = order.abs();
            if mult.is_zero() || order.is_one() {
                continue;
            }
            if order.is_zero() {
                free_rank = free_rank + mult;
                continue;
            }
            match mult {
                Cardinality::Infinite => {
                    infinite.insert(order);
                }
                Cardinality::Finite(m) => {
                    finite.extend(std::iter::repeat_n(order, m as usize));
                }
            }
        }
        let mut chain = invariant_factor_chain(finite);
        chain.retain(|d| !infinite.contains(d));

        let mut torsion: Vec<TorsionPart> = infinite
            .into_iter()
            .map(|order| TorsionPart {
                order,
                mult: Cardinality::Infinite,
            })
            .collect();
        for d in chain {
            match torsion.iter_mut().find(|t| t.order == d) {
                Some(t) => t.mult = t.mult + Cardinality::Finite(1),
                None => torsion.push(TorsionPart {
                    order: d,
                    mult: Cardinality::Finite(1),
                }),
            }
        }
        torsion.sort_by(|a, b| a.order.cmp(&b.order));
        Self { free_rank, torsion }
    }

    pub fn free(rank: Cardinality) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `(Z/order)^mult`.
    pub fn cyclic_power(order: impl Into<BigInt>, mult: Cardinality) -> Self {
        Self::new(Cardinality::ZERO, [(order.into(), mult)])
    }

    pub fn free_rank(&self) -> Cardinality {
        self.free_rank
    }

    pub fn torsion(&self) -> &[TorsionPart] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank.is_zero() && self.torsion.is_empty()
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.free_rank.is_finite() && self.torsion.iter().all(|t| t.mult.is_finite())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn to_fg(&self) -> Option<FgAbGroup> {
        let free = self.free_rank.finite()?;
        let mut orders = Vec::new();
        for t in &self.torsion {
            let m = t.mult.finite()?;
            orders.extend(std::iter::repeat_n(t.order.clone(), m as usize));
        }
        Some(FgAbGroup::from_cyclic_orders(free, orders))
    }

    pub fn torsion_part(&self) -> GroupDescriptor {
        Self {
            free_rank: Cardinality::ZERO,
            torsion: self.torsion.clone(),
        }
    }

    /// Total number of cyclic torsion summands.
    pub fn torsion_count(&self) -> Cardinality {
        self.torsion.iter().map(|t| t.mult).sum()
    }

    /// Multiplicity of `Z/order` in the stored decomposition.
    pub fn multiplicity(&self, order: &BigInt) -> Cardinality {
        self.torsion
            .iter()
            .find(|t| &t.order == order)
            .map_or(Cardinality::ZERO, |t| t.mult)
    }

    /// Order of the torsion subgroup, `None` when infinite.
    pub fn torsion_order(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for t in &self.torsion {
            let m = t.mult.finite()?;
            acc *= num_traits::pow(t.order.clone(), m as usize);
        }
        Some(acc)
    }

    /// Cyclic summands as `(order, multiplicity)`, order 0 standing for `Z`.
    fn summands(&self) -> impl Iterator<Item = (BigInt, Cardinality)> + '_ {
        let free = (!self.free_rank.is_zero()).then(|| (BigInt::zero(), self.free_rank));
        free.into_iter()
            .chain(self.torsion.iter().map(|t| (t.order.clone(), t.mult)))
    }

    pub fn direct_sum<'a>(groups: impl IntoIterator<Item = &'a GroupDescriptor>) -> GroupDescriptor {
        let mut parts = Vec::new();
        for g in groups {
            parts.extend(g.summands());
        }
        GroupDescriptor::new(Cardinality::ZERO, parts)
    }

    pub fn plus(&self, other: &GroupDescriptor) -> GroupDescriptor {
        Self::direct_sum([self, other])
    }

    pub fn tensor(&self, other: &GroupDescriptor) -> GroupDescriptor {
        let mut parts = Vec::new();
        for (a, ma) in self.summands() {
            for (b, mb) in other.summands() {
                let order = match (a.is_zero(), b.is_zero()) {
                    (true, true) => BigInt::zero(),
                    (true, false) => b.clone(),
                    (false, true) => a.clone(),
                    (false, false) => a.gcd(&b),
                };
                parts.push((order, ma * mb));
            }
        }
        GroupDescriptor::new(Cardinality::ZERO, parts)
    }

    pub fn tor(&self, other: &GroupDescriptor) -> GroupDescriptor {
        let mut parts = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                parts.push((a.order.gcd(&b.order), a.mult * b.mult));
            }
        }
        GroupDescriptor::new(Cardinality::ZERO, parts)
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|t| {
                let order =
                    serde_json::Number::from_str(&t.order.to_string()).expect("integer literal is a JSON number");
                json!({ "order": order, "mult": t.mult })
            })
            .collect();
        json!({ "free_rank": self.free_rank, "torsion": torsion })
    }

    pub fn from_json(value: &Value) -> Result<Self, String> {
        let obj = value.as_object().ok_or("group descriptor must be an object")?;
        let free_rank = parse_cardinality(obj.get("free_rank").ok_or("missing free_rank")?)?;
        let torsion = obj
            .get("torsion")
            .and_then(Value::as_array)
            .ok_or("missing torsion array")?;
        let mut parts = Vec::new();
        let mut last: Option<BigInt> = None;
        for entry in torsion {
            let order = entry.get("order").ok_or("torsion entry missing order")?;
            let order = parse_bigint(order)?;
            if order < BigInt::from(2) {
                return Err(format!("torsion order {order} must be at least 2"));
            }
            if last.as_ref().is_some_and(|l| l >= &order) {
                return Err("torsion orders must be strictly increasing".into());
            }
            last = Some(order.clone());
            let mult = parse_cardinality(entry.get("mult").ok_or("torsion entry missing mult")?)?;
            if mult.is_zero() {
                return Err("torsion multiplicity must be nonzero".into());
            }
            parts.push((order, mult));
        }
        Ok(GroupDescriptor::new(free_rank, parts))
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|e| format!("bad integer {n}: {e}")),
        Value::String(s) => BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

impl From<&FgAbGroup> for GroupDescriptor {
    fn from(g: &FgAbGroup) -> Self {
        GroupDescriptor::new(
            Cardinality::Finite(g.free_rank()),
            g.invariant_factors()
                .iter()
                .map(|d| (d.clone(), Cardinality::Finite(1))),
        )
    }
}

impl From<FgAbGroup> for GroupDescriptor {
    fn from(g: FgAbGroup) -> Self {
        GroupDescriptor::from(&g)
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        GroupDescriptor::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Renders as `Z^3 + (Z/2)^2`; the trivial group is `0`.
impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            Cardinality::Finite(0) => {}
            Cardinality::Finite(1) => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            match t.mult {
                Cardinality::Finite(1) => terms.push(format!("Z/{}", t.order)),
                m => terms.push(format!("(Z/{})^{m}", t.order)),
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Cardinality::{Finite, Infinite};

    fn d(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn json_examples() {
        let g = GroupDescriptor::new(Finite(2), [(d(4), Finite(1))]);
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"free_rank":2,"torsion":[{"order":4,"mult":1}]}"#
        );
        let g = GroupDescriptor::free(Infinite);
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"free_rank":"inf","torsion":[]}"#
        );
    }

    #[test]
    fn json_parse_rejects_noncanonical() {
        let bad = serde_json::json!({"free_rank": 0, "torsion": [{"order": 4, "mult": 1}, {"order": 2, "mult": 1}]});
        assert!(GroupDescriptor::from_json(&bad).is_err());
        let bad = serde_json::json!({"free_rank": 0, "torsion": [{"order": 1, "mult": 1}]});
        assert!(GroupDescriptor::from_json(&bad).is_err());
        let bad = serde_json::json!({"free_rank": "lots", "torsion": []});
        assert!(GroupDescriptor::from_json(&bad).is_err());
    }

    #[test]
    fn big_orders_survive_json() {
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let g = GroupDescriptor::new(Finite(0), [(big.clone(), Finite(1))]);
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("123456789012345678901234567890"));
        let back: GroupDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn infinite_absorbs_finite() {
        let a = GroupDescriptor::free(Infinite);
        let b = GroupDescriptor::free(Finite(3));
        assert_eq!(a.plus(&b), GroupDescriptor::free(Infinite));

        let t = GroupDescriptor::cyclic_power(4, Infinite).plus(&GroupDescriptor::cyclic_power(4, Finite(1)));
        assert_eq!(t, GroupDescriptor::cyclic_power(4, Infinite));
    }

    #[test]
    fn tensor_with_infinite_rank() {
        // Z/4 (x) Z^inf = (Z/4)^inf, and Z/4 (x) 0 = 0.
        let z4 = GroupDescriptor::cyclic_power(4, Finite(1));
        assert_eq!(
            z4.tensor(&GroupDescriptor::free(Infinite)),
            GroupDescriptor::cyclic_power(4, Infinite)
        );
        assert!(z4.tensor(&GroupDescriptor::zero()).is_zero());
        assert!(z4.tor(&GroupDescriptor::free(Infinite)).is_zero());
    }

    #[test]
    fn display() {
        let g = GroupDescriptor::new(Finite(3), [(d(2), Finite(2))]);
        assert_eq!(g.to_string(), "Z^3 + (Z/2)^2");
        assert_eq!(GroupDescriptor::zero().to_string(), "0");
        let g = GroupDescriptor::new(Infinite, [(d(4), Infinite)]);
        assert_eq!(g.to_string(), "Z^inf + (Z/4)^inf");
    }

    #[test]
    fn fg_round_trip() {
        let g = FgAbGroup::from_cyclic_orders(1, [d(2), d(4), d(4)]);
        let desc = GroupDescriptor::from(&g);
        assert_eq!(desc.multiplicity(&d(4)), Finite(2));
        assert_eq!(desc.to_fg().unwrap(), g);
        assert_eq!(desc.torsion_order().unwrap(), d(32));
        assert!(GroupDescriptor::free(Infinite).to_fg().is_none());
    }
}
