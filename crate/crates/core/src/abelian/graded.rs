use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{FgAbGroup, GroupDescriptor};

/// A degree-indexed family of groups.
///
/// Only nonzero groups are stored. When `computed_through` is set, degrees
/// above it were not computed and must not be read as zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedGroup {
    groups: BTreeMap<i64, GroupDescriptor>,
    computed_through: Option<i64>,
}

impl GradedGroup {
    /// The zero graded group, known in every degree.
    pub fn new() -> Self {
        Self::default()
    }

    /// A graded group known only in degrees `<= max_degree`.
    pub fn truncated(max_degree: i64) -> Self {
        Self {
            groups: BTreeMap::new(),
            computed_through: Some(max_degree),
        }
    }

    pub fn from_groups(groups: impl IntoIterator<Item = (i64, GroupDescriptor)>) -> Self {
        let mut g = Self::new();
        for (n, h) in groups {
            g.insert(n, h);
        }
        g
    }

    pub fn insert(&mut self, degree: i64, group: impl Into<GroupDescriptor>) {
        let group = group.into();
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
    }

    /// Group in `degree` (zero if not stored). Check [`Self::is_computed`] for
    /// truncated families.
    pub fn group(&self, degree: i64) -> GroupDescriptor {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// Like [`Self::group`] but `None` above the computed range.
    pub fn get(&self, degree: i64) -> Option<GroupDescriptor> {
        self.is_computed(degree).then(|| self.group(degree))
    }

    /// Finitely generated value in `degree`, when it is one.
    pub fn fg(&self, degree: i64) -> Option<FgAbGroup> {
        self.get(degree)?.to_fg()
    }

    pub fn is_computed(&self, degree: i64) -> bool {
        self.computed_through.is_none_or(|m| degree <= m)
    }

    pub fn computed_through(&self) -> Option<i64> {
        self.computed_through
    }

    pub fn is_complete(&self) -> bool {
        self.computed_through.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Nonzero degrees in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &GroupDescriptor)> {
        self.groups.iter().map(|(&n, g)| (n, g))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.groups.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.groups.keys().next_back().copied()
    }

    /// Forgets everything above `max_degree`.
    pub fn truncate(&self, max_degree: i64) -> GradedGroup {
        let through = self.computed_through.map_or(max_degree, |m| m.min(max_degree));
        Self {
            groups: self
                .groups
                .iter()
                .filter(|(&n, _)| n <= through)
                .map(|(&n, g)| (n, g.clone()))
                .collect(),
            computed_through: Some(through),
        }
    }

    /// Shifts every degree by `by`.
    pub fn shift(&self, by: i64) -> GradedGroup {
        Self {
            groups: self.groups.iter().map(|(&n, g)| (n + by, g.clone())).collect(),
            computed_through: self.computed_through.map(|m| m + by),
        }
    }

    /// Degreewise torsion subgroups.
    pub fn torsion(&self) -> GradedGroup {
        let mut out = Self {
            groups: BTreeMap::new(),
            computed_through: self.computed_through,
        };
        for (n, g) in self.iter() {
            out.insert(n, g.torsion_part());
        }
        out
    }

    /// Degreewise equality on `lo..=hi`, requiring both sides to be computed there.
    pub fn agrees_on(&self, other: &GradedGroup, lo: i64, hi: i64) -> bool {
        (lo..=hi).all(|n| match (self.get(n), other.get(n)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }

    /// Direct sum of the groups in degrees of the given parity, up to `max_degree`.
    pub fn parity_sum(&self, odd: bool, max_degree: i64) -> GroupDescriptor {
        let parts: Vec<&GroupDescriptor> = self
            .groups
            .iter()
            .filter(|(&n, _)| n <= max_degree && (n.rem_euclid(2) == 1) == odd)
            .map(|(_, g)| g)
            .collect();
        GroupDescriptor::direct_sum(parts)
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .groups
            .iter()
            .map(|(n, g)| json!({ "degree": n, "group": g.to_json() }))
            .collect();
        json!({ "degrees": degrees, "computed_through": self.computed_through })
    }

    /// Table of `lo..=hi`, with `"not computed"` beyond the computed range.
    pub fn table_json(&self, lo: i64, hi: i64) -> Value {
        let rows: Vec<Value> = (lo..=hi)
            .map(|n| match self.get(n) {
                Some(g) => json!({ "degree": n, "group": g.to_json(), "text": g.to_string() }),
                None => json!({ "degree": n, "group": "not computed" }),
            })
            .collect();
        Value::Array(rows)
    }

    pub fn from_json(value: &Value) -> Result<GradedGroup, String> {
        let obj = value.as_object().ok_or("graded group must be an object")?;
        let computed_through = match obj.get("computed_through") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_i64().ok_or("computed_through must be an integer")?),
        };
        let mut g = GradedGroup {
            groups: BTreeMap::new(),
            computed_through,
        };
        for entry in obj
            .get("degrees")
            .and_then(Value::as_array)
            .ok_or("missing degrees array")?
        {
            let n = entry
                .get("degree")
                .and_then(Value::as_i64)
                .ok_or("degree entry missing degree")?;
            let group = GroupDescriptor::from_json(entry.get("group").ok_or("degree entry missing group")?)?;
            g.insert(n, group);
        }
        Ok(g)
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(n, g)| format!("H{n} = {g}")).collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(", "))?;
        }
        if let Some(m) = self.computed_through {
            write!(f, " (computed through degree {m})")?;
        }
        Ok(())
    }
}

/// Künneth assembly for a tensor product of complexes of free modules:
/// `H_n = sum_{p+q=n} H1_p (x) H2_q + sum_{p+q=n-1} Tor(H1_p, H2_q)`.
///
/// When either input is truncated, the output is computed only through the
/// degrees where every contributing pair is known.
pub fn kunneth_assemble(h1: &GradedGroup, h2: &GradedGroup) -> GradedGroup {
    let bound = |a: &GradedGroup, b: &GradedGroup| -> Option<i64> {
        // a truncated at m: unknown degrees p > m pair with q >= min(b).
        let m = a.computed_through?;
        Some(match b.min_degree() {
            Some(lo) => m + lo,
            None => i64::MAX,
        })
    };
    let through = match (bound(h1, h2), bound(h2, h1)) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x),
        (Some(x), Some(y)) => Some(x.min(y)),
    };
    let through = through.filter(|&t| t != i64::MAX);

    let mut parts: BTreeMap<i64, Vec<GroupDescriptor>> = BTreeMap::new();
    for (p, a) in h1.iter() {
        for (q, b) in h2.iter() {
            parts.entry(p + q).or_default().push(a.tensor(b));
            parts.entry(p + q + 1).or_default().push(a.tor(b));
        }
    }
    let mut out = GradedGroup {
        groups: BTreeMap::new(),
        computed_through: through,
    };
    for (n, gs) in parts {
        if out.is_computed(n) {
            out.insert(n, GroupDescriptor::direct_sum(&gs));
        }
    }
    out
}

/// A `Z/2`-graded pair `(K0, K1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Z2Graded {
    pub even: GroupDescriptor,
    pub odd: GroupDescriptor,
}

impl Z2Graded {
    pub fn new(even: impl Into<GroupDescriptor>, odd: impl Into<GroupDescriptor>) -> Self {
        Self {
            even: even.into(),
            odd: odd.into(),
        }
    }

    /// The unit `(Z, 0)`.
    pub fn unit() -> Self {
        Self::new(FgAbGroup::free(1), FgAbGroup::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn torsion(&self) -> Z2Graded {
        Z2Graded {
            even: self.even.torsion_part(),
            odd: self.odd.torsion_part(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "K0": self.even.to_json(),
            "K1": self.odd.to_json(),
            "text": self.to_string(),
        })
    }
}

impl fmt::Display for Z2Graded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K0 = {}, K1 = {})", self.even, self.odd)
    }
}

/// Künneth formula for `Z/2`-graded groups:
/// `K0 = A0(x)B0 + A1(x)B1 + Tor(A0,B1) + Tor(A1,B0)` and
/// `K1 = A0(x)B1 + A1(x)B0 + Tor(A0,B0) + Tor(A1,B1)`.
pub fn graded_kunneth_mod2(a: &Z2Graded, b: &Z2Graded) -> Z2Graded {
    let even = GroupDescriptor::direct_sum(&[
        a.even.tensor(&b.even),
        a.odd.tensor(&b.odd),
        a.even.tor(&b.odd),
        a.odd.tor(&b.even),
    ]);
    let odd = GroupDescriptor::direct_sum(&[
        a.even.tensor(&b.odd),
        a.odd.tensor(&b.even),
        a.even.tor(&b.even),
        a.odd.tor(&b.odd),
    ]);
    Z2Graded { even, odd }
}
