//! Chain complexes of finitely generated free modules over `Z`, `Z[P^-1]` or `Q`.
//!
//! Boundary matrices always have integer entries. Over `Z[P^-1]` the homology
//! is computed integrally and then localized, which is exact because
//! localization is a flat base change. Over `Q` only ranks are reported.

mod json;
mod resolutions;

pub use resolutions::{cyclic_group_homology, koszul_complex, koszul_group_homology, periodic_complex};

use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::abelian::{kunneth_assemble, FgAbGroup, GradedGroup, PrimeSet};
use crate::linalg::{cokernel_invariants, integer_kernel_basis, snf, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("boundary out of degree {degree} is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    BoundaryShape {
        degree: i64,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("expected {expected} boundary matrices for {ranks} nonzero degrees, got {got}")]
    BoundaryCount { ranks: usize, expected: usize, got: usize },
    #[error("boundaries out of degrees {degree} and {} do not compose to zero", degree - 1)]
    NotAComplex { degree: i64 },
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("action matrices {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("action matrix {index} has determinant {det}, which is not a unit in {ring}")]
    NotInvertible {
        index: usize,
        det: String,
        ring: CoefficientRing,
    },
    #[error("action matrix {index} is {rows}x{cols}, expected {module_rank}x{module_rank}")]
    ActionShape {
        index: usize,
        rows: usize,
        cols: usize,
        module_rank: usize,
    },
    #[error("generator does not satisfy T^{order} = I")]
    NotPeriodic { order: u64 },
    #[error("cyclic group order must be positive")]
    ZeroOrder,
    #[error("invalid complex description: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    /// `Z[P^-1]`
    Localized(PrimeSet),
    Rationals,
}

impl CoefficientRing {
    pub fn localized<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let p = PrimeSet::dividing(values);
        if p.is_empty() {
            Self::Integers
        } else {
            Self::Localized(p)
        }
    }

    /// True when `n` is a unit of the ring.
    pub fn is_unit(&self, n: &num_bigint::BigInt) -> bool {
        match self {
            Self::Integers => n.magnitude() == &num_bigint::BigUint::from(1u32),
            Self::Localized(p) => !n.is_zero() && p.is_unit(n),
            Self::Rationals => !n.is_zero(),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => write!(f, "Z"),
            Self::Localized(p) => write!(f, "Z[1/{}]", p.primes().map(|x| x.to_string()).join(",")),
            Self::Rationals => write!(f, "Q"),
        }
    }
}

/// A bounded chain complex `C_hi -> ... -> C_lo`.
///
/// `boundaries[k]` is the differential from degree `lo + k + 1` to `lo + k`,
/// a `ranks[k] x ranks[k + 1]` matrix acting on column vectors. The condition
/// `d o d = 0` is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: CoefficientRing,
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(
        ring: CoefficientRing,
        lo: i64,
        ranks: Vec<usize>,
        boundaries: Vec<IntMatrix>,
    ) -> Result<Self, ComplexError> {
        let expected = ranks.len().saturating_sub(1);
        if boundaries.len() != expected {
            return Err(ComplexError::BoundaryCount {
                ranks: ranks.len(),
                expected,
                got: boundaries.len(),
            });
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(ComplexError::BoundaryShape {
                    degree: lo + k as i64 + 1,
                    rows: ranks[k],
                    cols: ranks[k + 1],
                    got_rows: b.rows(),
                    got_cols: b.cols(),
                });
            }
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(ComplexError::NotAComplex {
                    degree: lo + k as i64 + 1,
                });
            }
        }
        Ok(Self {
            ring,
            lo,
            ranks,
            boundaries,
        })
    }

    /// A single free module of the given rank in one degree.
    pub fn concentrated(ring: CoefficientRing, degree: i64, rank: usize) -> Self {
        Self {
            ring,
            lo: degree,
            ranks: vec![rank],
            boundaries: Vec::new(),
        }
    }

    /// `0 -> R^cols --map--> R^rows -> 0` in degrees `lo + 1` and `lo`.
    pub fn two_term(ring: CoefficientRing, lo: i64, map: IntMatrix) -> Self {
        Self {
            ring,
            lo,
            ranks: vec![map.rows(), map.cols()],
            boundaries: vec![map],
        }
    }

    /// `P(s): 0 -> Z --(s-1)--> Z -> 0` in degrees 1 and 0.
    pub fn multiplication_by_pred(s: i64) -> Self {
        Self::two_term(CoefficientRing::Integers, 0, IntMatrix::from_rows(&[[s - 1]]))
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Top degree; `lo - 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |k| self.ranks[k])
    }

    /// The differential out of `degree`, when both ends are in range.
    pub fn boundary(&self, degree: i64) -> Option<&IntMatrix> {
        let k = self.index(degree)?;
        if k == 0 {
            return None;
        }
        self.boundaries.get(k - 1)
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let k = degree - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// The same differentials over another coefficient ring.
    pub fn with_ring(&self, ring: CoefficientRing) -> Self {
        Self { ring, ..self.clone() }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| {
                let sign = if (self.lo + k as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                sign * r as i64
            })
            .sum()
    }

    /// `H_n = ker d_n / im d_{n+1}` in every degree.
    pub fn homology(&self) -> GradedGroup {
        let mut out = GradedGroup::new();
        for k in 0..self.ranks.len() {
            let n = self.lo + k as i64;
            let h = match &self.ring {
                CoefficientRing::Integers => self.integral_homology_at(k),
                CoefficientRing::Localized(p) => self.integral_homology_at(k).localize(p).group,
                CoefficientRing::Rationals => FgAbGroup::free(self.rational_betti_at(k) as u64),
            };
            out.insert(n, h);
        }
        out
    }

    fn outgoing(&self, k: usize) -> IntMatrix {
        if k == 0 {
            IntMatrix::zeros(0, self.ranks[0])
        } else {
            self.boundaries[k - 1].clone()
        }
    }

    fn incoming(&self, k: usize) -> IntMatrix {
        self.boundaries
            .get(k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.ranks[k], 0))
    }

    fn integral_homology_at(&self, k: usize) -> FgAbGroup {
        let kernel = integer_kernel_basis(&self.outgoing(k));
        let image = self.incoming(k);
        let z = kernel.cols();
        // Express the image in kernel coordinates: with U K V = [I; 0] the
        // solution of K X = B is X = V (U B)[..z].
        let s = snf(&kernel);
        debug_assert!(s.diagonal().iter().all(|d| d == &num_bigint::BigInt::from(1)));
        let ub = &s.u * &image;
        let coords = &s.v * &ub.select_rows(0..z);
        let c = cokernel_invariants(&coords);
        FgAbGroup::from_cyclic_orders(c.free_rank as u64, c.invariant_factors)
    }

    fn rational_betti_at(&self, k: usize) -> usize {
        self.ranks[k] - self.outgoing(k).rank() - self.incoming(k).rank()
    }
}

/// `(C (x) D)_n = sum_{p+q=n} C_p (x) D_q` with
/// `d(x (x) y) = dx (x) y + (-1)^p x (x) dy`.
///
/// Within degree `n` the blocks are ordered by increasing `p`, and inside a
/// block `x_i (x) y_j` sits at `i * rank(D_q) + j`.
pub fn tensor_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex, ComplexError> {
    if c.ring != d.ring {
        return Err(ComplexError::RingMismatch(c.ring.clone(), d.ring.clone()));
    }
    let ring = c.ring.clone();
    if c.ranks.is_empty() || d.ranks.is_empty() {
        return ChainComplex::new(ring, c.lo + d.lo, Vec::new(), Vec::new());
    }
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();

    // offsets[n - lo] maps p to the start of block (p, n - p).
    let block_layout = |n: i64| -> (Vec<(i64, usize)>, usize) {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for p in c.lo..=c.hi() {
            let q = n - p;
            if q < d.lo || q > d.hi() {
                continue;
            }
            blocks.push((p, offset));
            offset += c.rank(p) * d.rank(q);
        }
        (blocks, offset)
    };

    let layouts: Vec<(Vec<(i64, usize)>, usize)> = (lo..=hi).map(block_layout).collect();
    let ranks: Vec<usize> = layouts.iter().map(|(_, r)| *r).collect();
    let offset_of = |n: i64, p: i64| -> Option<usize> {
        let (blocks, _) = &layouts[(n - lo) as usize];
        blocks.iter().find(|(bp, _)| *bp == p).map(|(_, o)| *o)
    };

    let mut boundaries = Vec::new();
    for n in lo + 1..=hi {
        let mut m = IntMatrix::zeros(ranks[(n - 1 - lo) as usize], ranks[(n - lo) as usize]);
        for &(p, src_off) in &layouts[(n - lo) as usize].0 {
            let q = n - p;
            let (rc, rd) = (c.rank(p), d.rank(q));
            if let (Some(dc), Some(tgt_off)) = (c.boundary(p), offset_of(n - 1, p - 1)) {
                for i in 0..rc {
                    for j in 0..rd {
                        for r in 0..dc.rows() {
                            let v = dc.get(r, i);
                            if !v.is_zero() {
                                m.set(tgt_off + r * rd + j, src_off + i * rd + j, v.clone());
                            }
                        }
                    }
                }
            }
            if let (Some(dd), Some(tgt_off)) = (d.boundary(q), offset_of(n - 1, p)) {
                let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                let rd_lower = d.rank(q - 1);
                for i in 0..rc {
                    for j in 0..rd {
                        for r in 0..dd.rows() {
                            let v = dd.get(r, j);
                            if !v.is_zero() {
                                m.set(tgt_off + i * rd_lower + r, src_off + i * rd + j, v * sign);
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex::new(ring, lo, ranks, boundaries)
}

/// Outcome of comparing `H(C (x) D)` with the Künneth assembly of `H(C)` and `H(D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethCheck {
    pub pass: bool,
    pub direct: GradedGroup,
    pub assembled: GradedGroup,
}

pub fn kunneth_oracle_check(c: &ChainComplex, d: &ChainComplex) -> Result<KunnethCheck, ComplexError> {
    let direct = tensor_complex(c, d)?.homology();
    let assembled = kunneth_assemble(&c.homology(), &d.homology());
    Ok(KunnethCheck {
        pass: direct == assembled,
        direct,
        assembled,
    })
}
