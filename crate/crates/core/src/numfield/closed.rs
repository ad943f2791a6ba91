use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::profile::NumberFieldProfile;
use super::FieldError;
use crate::abelian::{kunneth_assemble, parity_binomial_sum, Cardinality, GradedGroup, GroupDescriptor, Z2Graded};
use crate::complex::{cyclic_group_homology, koszul_group_homology, CoefficientRing};
use crate::linalg::IntMatrix;

const INF: Cardinality = Cardinality::Infinite;

/// Homology of the groupoid of the `ax+b` action of `K* ` on the adeles,
/// through degree `n_max`.
pub fn groupoid_homology(profile: &NumberFieldProfile, n_max: usize) -> GradedGroup {
    let d = profile.degree();
    let mut out = GradedGroup::truncated(n_max as i64);
    for n in d..=n_max {
        let k = n - d;
        let g = if profile.totally_imaginary() {
            let mu = BigInt::from(profile.mu_order());
            match k {
                0 => GroupDescriptor::free(1u64.into()),
                1 => GroupDescriptor::new(INF, [(mu, 1u64.into())]),
                _ => GroupDescriptor::new(INF, [(mu, INF)]),
            }
        } else {
            let mult = if k == 0 { 1u64.into() } else { INF };
            GroupDescriptor::cyclic_power(2, mult)
        };
        out.insert(n as i64, g);
    }
    out
}

/// Low-degree homology of the topological full group, with simplicity,
/// abelianization and rational acyclicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TfgReport {
    pub homology: Vec<(usize, GroupDescriptor)>,
    pub simple: bool,
    pub abelianization: GroupDescriptor,
    pub rationally_acyclic: bool,
}

impl TfgReport {
    pub fn to_json(&self) -> Value {
        let homology: Vec<Value> = self
            .homology
            .iter()
            .map(|(n, g)| json!({"degree": n, "group": g.to_json()}))
            .collect();
        json!({
            "homology": homology,
            "simple": self.simple,
            "abelianization": self.abelianization.to_json(),
            "rationally_acyclic": self.rationally_acyclic,
        })
    }
}

pub fn tfg_report(profile: &NumberFieldProfile) -> TfgReport {
    let d = profile.degree();
    let h = groupoid_homology(profile, d);
    let homology: Vec<(usize, GroupDescriptor)> = (1..=d).map(|n| (n, h.group(n as i64))).collect();
    TfgReport {
        abelianization: homology[0].1.clone(),
        homology,
        simple: !profile.is_rationals(),
        rationally_acyclic: profile.real_embeddings() > 0,
    }
}

/// K-theory of the ring C*-algebra, reported symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingKTheory {
    pub k: Z2Graded,
    pub formula: String,
    pub torsion_free: bool,
}

impl RingKTheory {
    pub fn to_json(&self) -> Value {
        json!({
            "K0": self.k.even.to_json(),
            "K1": self.k.odd.to_json(),
            "formula": self.formula,
            "torsion_free": self.torsion_free,
        })
    }
}

pub fn ring_cstar_ktheory(profile: &NumberFieldProfile) -> RingKTheory {
    let formula = if profile.totally_imaginary() {
        format!("Z^{} ⊗ ∧*Γ", profile.mu_order())
    } else {
        "∧*Γ".to_string()
    };
    RingKTheory {
        k: Z2Graded::new(GroupDescriptor::free(INF), GroupDescriptor::free(INF)),
        formula,
        torsion_free: true,
    }
}

/// K-theory for a torsion-free submonoid with `rank` free generators of the
/// given norm signs, in a field whose degree has parity `d`.
///
/// All signs positive: `K_n = Z^m` with `m = sum_{p = n-d mod 2} C(rank, p)`.
/// Some sign negative: `K_n = (Z/2)^m` with `m = sum_{p = n-d mod 2} C(rank-1, p)`.
pub fn torsionfree_submonoid_ktheory(rank: usize, signs: &[i8], d: usize) -> Result<Z2Graded, FieldError> {
    if rank == 0 {
        return Err(FieldError::EmptyGenerators);
    }
    if signs.len() != rank {
        return Err(FieldError::SignCount {
            rank,
            signs: signs.len(),
        });
    }
    if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(FieldError::InvalidSign(s));
    }
    let all_positive = signs.iter().all(|&s| s == 1);
    let r = if all_positive { rank } else { rank - 1 } as u64;
    let group = |n: usize| {
        let m = parity_binomial_sum(r, ((n + d) % 2) as u64);
        if all_positive {
            GroupDescriptor::free(m.into())
        } else {
            GroupDescriptor::cyclic_power(2, m.into())
        }
    };
    Ok(Z2Graded::new(group(0), group(1)))
}

/// Finite model of the closed form: `Gamma` is replaced by `Z^gamma_rank`
/// and the homology is assembled from group homology computed by chain
/// complexes, then shifted by `d`.
pub fn finite_model_homology(
    profile: &NumberFieldProfile,
    gamma_rank: usize,
    n_max: usize,
) -> Result<GradedGroup, FieldError> {
    let d = profile.degree();
    let depth = n_max.saturating_sub(d);
    let trivial = IntMatrix::identity(1);
    let sign = IntMatrix::from_rows(&[[-1]]);
    let lambda = if profile.totally_imaginary() {
        cyclic_group_homology(profile.mu_order(), &trivial, depth)?
    } else if profile.real_embeddings() % 2 == 1 {
        cyclic_group_homology(2, &sign, depth)?
    } else {
        let roots = cyclic_group_homology(2, &trivial, depth)?;
        let unit = koszul_group_homology(&[sign], 1, CoefficientRing::Integers)?;
        kunneth_assemble(&roots, &unit)
    };
    let gamma = koszul_group_homology(&vec![trivial; gamma_rank], 1, CoefficientRing::Integers)?;
    Ok(kunneth_assemble(&lambda, &gamma).shift(d as i64).truncate(n_max as i64))
}

/// Per-degree comparison of the closed form with finite models of growing
/// rank: finite multiplicities must match exactly, infinite ones must grow
/// strictly with the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCheck {
    pub degree: usize,
    pub pass: bool,
    pub closed: GroupDescriptor,
    pub models: Vec<GroupDescriptor>,
}

pub fn finite_model_limit_check(profile: &NumberFieldProfile, n_max: usize) -> Result<Vec<LimitCheck>, FieldError> {
    let closed = groupoid_homology(profile, n_max);
    let base = n_max.saturating_sub(profile.degree()) + 1;
    let models = (base..base + 3)
        .map(|r| finite_model_homology(profile, r, n_max))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let target = closed.group(n as i64);
        let groups: Vec<GroupDescriptor> = models.iter().map(|m| m.group(n as i64)).collect();
        let mut orders: BTreeSet<BigInt> = target.torsion().iter().map(|t| t.order.clone()).collect();
        for g in &groups {
            orders.extend(g.torsion().iter().map(|t| t.order.clone()));
        }
        let mut pass = matches_limit(target.free_rank(), groups.iter().map(GroupDescriptor::free_rank));
        for o in &orders {
            pass &= matches_limit(target.multiplicity(o), groups.iter().map(|g| g.multiplicity(o)));
        }
        out.push(LimitCheck {
            degree: n,
            pass,
            closed: target,
            models: groups,
        });
    }
    Ok(out)
}

fn matches_limit(target: Cardinality, values: impl Iterator<Item = Cardinality>) -> bool {
    let values: Vec<Cardinality> = values.collect();
    match target {
        Cardinality::Finite(_) => values.iter().all(|&v| v == target),
        Cardinality::Infinite => values
            .windows(2)
            .all(|w| matches!((w[0], w[1]), (Cardinality::Finite(a), Cardinality::Finite(b)) if a < b)),
    }
}
