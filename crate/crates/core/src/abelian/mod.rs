//! Finitely generated abelian groups and their homological calculus.
//!
//! [`FgAbGroup`] is the canonical invariant-factor form `Z^r + Z/d1 + ... + Z/dk`
//! with `d1 | d2 | ... | dk` and every `di >= 2`; two groups are isomorphic
//! exactly when the values compare equal. [`GroupDescriptor`] extends this with
//! a symbolic infinite cardinality for ranks and multiplicities.

mod cardinality;
mod descriptor;
mod graded;

pub use cardinality::{parity_binomial_sum, Cardinality};
pub use descriptor::{GroupDescriptor, TorsionPart};
pub use graded::{graded_kunneth_mod2, kunneth_assemble, GradedGroup, Z2Graded};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{cokernel_invariants, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("presentation has {generators} generators but the relation matrix has {rows} rows")]
    PresentationShape { generators: usize, rows: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: u64,
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: u64) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`. `n = 0` gives `Z`, `n = +-1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [n.into()])
    }

    /// `Z^free_rank + sum Z/order`, for arbitrary orders (0 contributes a free summand).
    pub fn from_cyclic_orders(free_rank: u64, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut torsion = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                torsion.push(o);
            }
        }
        Self {
            free_rank,
            invariant_factors: invariant_factor_chain(torsion),
        }
    }

    /// `Z^generators / (column span of relations)`.
    pub fn from_presentation(generators: usize, relations: &IntMatrix) -> Result<Self, GroupError> {
        if relations.rows() != generators {
            return Err(GroupError::PresentationShape {
                generators,
                rows: relations.rows(),
            });
        }
        let c = cokernel_invariants(relations);
        Ok(Self {
            free_rank: c.free_rank as u64,
            invariant_factors: c.invariant_factors,
        })
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn torsion_subgroup(&self) -> FgAbGroup {
        Self {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Summands as cyclic orders, 0 standing for `Z`.
    fn cyclic_summands(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::repeat_n(BigInt::zero(), self.free_rank as usize).chain(self.invariant_factors.iter().cloned())
    }

    pub fn tensor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut free = 0;
        let mut orders = Vec::new();
        for a in self.cyclic_summands() {
            for b in other.cyclic_summands() {
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => free += 1,
                    (true, false) => orders.push(b.clone()),
                    (false, true) => orders.push(a.clone()),
                    (false, false) => orders.push(a.gcd(&b)),
                }
            }
        }
        FgAbGroup::from_cyclic_orders(free, orders)
    }

    pub fn tor(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders = self
            .invariant_factors
            .iter()
            .flat_map(|a| other.invariant_factors.iter().map(move |b| a.gcd(b)));
        FgAbGroup::from_cyclic_orders(0, orders.collect::<Vec<_>>())
    }

    pub fn direct_sum<'a>(groups: impl IntoIterator<Item = &'a FgAbGroup>) -> FgAbGroup {
        let mut free = 0;
        let mut orders = Vec::new();
        for g in groups {
            free += g.free_rank;
            orders.extend(g.invariant_factors.iter().cloned());
        }
        FgAbGroup::from_cyclic_orders(free, orders)
    }

    pub fn plus(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::direct_sum([self, other])
    }

    /// Direct sum of `n` copies.
    pub fn power(&self, n: u64) -> FgAbGroup {
        let mut orders = Vec::new();
        for _ in 0..n {
            orders.extend(self.invariant_factors.iter().cloned());
        }
        FgAbGroup::from_cyclic_orders(self.free_rank * n, orders)
    }

    /// Tensor with `Z[P^-1]`: strips every prime of `primes` from the torsion.
    pub fn localize(&self, primes: &PrimeSet) -> LocalizedGroup {
        let factors = self
            .invariant_factors
            .iter()
            .map(|d| primes.strip(d))
            .filter(|d| !d.is_one())
            .collect();
        LocalizedGroup {
            inverted_primes: primes.clone(),
            group: FgAbGroup {
                free_rank: self.free_rank,
                invariant_factors: factors,
            },
        }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GroupDescriptor::from(self).fmt(f)
    }
}

/// Reduces a list of cyclic orders (each >= 2) to the invariant-factor chain
/// using `Z/a + Z/b = Z/gcd(a,b) + Z/lcm(a,b)`.
pub(crate) fn invariant_factor_chain(mut orders: Vec<BigInt>) -> Vec<BigInt> {
    let n = orders.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = orders[i].gcd(&orders[j]);
            if g != orders[i] {
                let l = orders[i].lcm(&orders[j]);
                orders[i] = g;
                orders[j] = l;
            }
        }
    }
    orders.retain(|x| !x.is_one());
    orders
}

/// A finite set of primes to invert.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The primes dividing any of `values`; inverting `n` inverts its prime factors.
    pub fn dividing<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut set = BTreeSet::new();
        for v in values {
            set.extend(prime_factors(v));
        }
        Self(set)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    /// `n` with every factor from this set divided out.
    pub fn strip(&self, n: &BigInt) -> BigInt {
        let mut n = n.abs();
        for &p in &self.0 {
            let p = BigInt::from(p);
            while !n.is_zero() && n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        n
    }

    /// True when `n` is invertible in `Z[P^-1]`.
    pub fn is_unit(&self, n: &BigInt) -> bool {
        self.strip(n).is_one()
    }

    /// True when no prime of the set divides `n`.
    pub fn coprime_to(&self, n: &BigInt) -> bool {
        self.0.iter().all(|&p| !n.is_multiple_of(&BigInt::from(p)))
    }
}

impl FromIterator<u64> for PrimeSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        Self::dividing(iter)
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A module over `Z[P^-1]`, stored as its underlying group with all torsion
/// coprime to `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalizedGroup {
    pub inverted_primes: PrimeSet,
    pub group: FgAbGroup,
}

impl LocalizedGroup {
    pub fn is_valid(&self) -> bool {
        self.group
            .invariant_factors()
            .iter()
            .all(|d| self.inverted_primes.coprime_to(d))
    }
}

/// `C(r, q)` with the symbolic infinite rank absorbing every positive degree.
pub fn exterior_rank(r: Cardinality, q: u64) -> Cardinality {
    Cardinality::binomial(r, q)
}
