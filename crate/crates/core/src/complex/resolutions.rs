//! Model complexes for group homology of `Z^N` and of finite cyclic groups.

use itertools::Itertools;

use super::{ChainComplex, CoefficientRing, ComplexError};
use crate::abelian::GradedGroup;
use crate::linalg::IntMatrix;

/// Koszul complex computing `H_*(Z^N, M)` for `M = R^m`, the `i`-th generator
/// of `Z^N` acting by `actions[i]`.
///
/// Degree `p` is `M (x) /\^p Z^N`, with basis `(S, a)` for `p`-subsets `S` in
/// lexicographic order and `a < m`, indexed `index(S) * m + a`. The boundary is
/// `d(x (x) e_S) = sum_k (-1)^k (A_{S_k} - I) x (x) e_{S - S_k}`.
pub fn koszul_complex(
    actions: &[IntMatrix],
    module_rank: usize,
    ring: CoefficientRing,
) -> Result<ChainComplex, ComplexError> {
    for (i, a) in actions.iter().enumerate() {
        if a.rows() != module_rank || a.cols() != module_rank {
            return Err(ComplexError::ActionShape {
                index: i,
                rows: a.rows(),
                cols: a.cols(),
                module_rank,
            });
        }
        let det = a.det().expect("square");
        if !ring.is_unit(&det) {
            return Err(ComplexError::NotInvertible {
                index: i,
                det: det.to_string(),
                ring: ring.clone(),
            });
        }
    }
    for (i, j) in (0..actions.len()).tuple_combinations() {
        if &actions[i] * &actions[j] != &actions[j] * &actions[i] {
            return Err(ComplexError::NonCommuting(i, j));
        }
    }

    let n = actions.len();
    let m = module_rank;
    let id = IntMatrix::identity(m);
    let shifted: Vec<IntMatrix> = actions.iter().map(|a| a.checked_sub(&id).expect("square")).collect();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| (0..n).combinations(p).collect()).collect();
    let ranks: Vec<usize> = subsets.iter().map(|s| s.len() * m).collect();

    let mut boundaries = Vec::with_capacity(n);
    for p in 1..=n {
        let mut b = IntMatrix::zeros(ranks[p - 1], ranks[p]);
        for (si, s) in subsets[p].iter().enumerate() {
            for (k, &gen) in s.iter().enumerate() {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != gen).collect();
                let ti = subsets[p - 1]
                    .binary_search(&face)
                    .expect("faces of lexicographic subsets are listed");
                let sign = if k % 2 == 0 { 1 } else { -1 };
                for r in 0..m {
                    for c in 0..m {
                        let v = shifted[gen].get(r, c);
                        if v != &num_bigint::BigInt::from(0) {
                            b.set(ti * m + r, si * m + c, v * sign);
                        }
                    }
                }
            }
        }
        boundaries.push(b);
    }
    ChainComplex::new(ring, 0, ranks, boundaries)
}

/// `H_*(Z^N, M)` via [`koszul_complex`].
pub fn koszul_group_homology(
    actions: &[IntMatrix],
    module_rank: usize,
    ring: CoefficientRing,
) -> Result<GradedGroup, ComplexError> {
    Ok(koszul_complex(actions, module_rank, ring)?.homology())
}

/// The periodic resolution of `Z/m` tensored with `M`, in degrees
/// `0..=top`: `d_k = T - I` for odd `k` and `d_k = 1 + T + ... + T^(m-1)`
/// for even `k`.
pub fn periodic_complex(order: u64, generator: &IntMatrix, top: usize) -> Result<ChainComplex, ComplexError> {
    if order == 0 {
        return Err(ComplexError::ZeroOrder);
    }
    if !generator.is_square() {
        return Err(ComplexError::ActionShape {
            index: 0,
            rows: generator.rows(),
            cols: generator.cols(),
            module_rank: generator.rows(),
        });
    }
    let r = generator.rows();
    let power = generator
        .pow(u32::try_from(order).map_err(|_| ComplexError::NotPeriodic { order })?)
        .expect("square");
    if !power.is_identity() {
        return Err(ComplexError::NotPeriodic { order });
    }
    let id = IntMatrix::identity(r);
    let shifted = generator.checked_sub(&id).expect("square");
    let mut norm = IntMatrix::zeros(r, r);
    let mut t = id.clone();
    for _ in 0..order {
        norm = IntMatrix::from_fn(r, r, |i, j| norm.get(i, j) + t.get(i, j));
        t = &t * generator;
    }
    let boundaries = (1..=top)
        .map(|k| if k % 2 == 1 { shifted.clone() } else { norm.clone() })
        .collect();
    ChainComplex::new(CoefficientRing::Integers, 0, vec![r; top + 1], boundaries)
}

/// `H_p(Z/m, M)` for `0 <= p <= degree_max`, where the generator acts on
/// `M = Z^r` by `generator` (which must satisfy `T^m = I`).
pub fn cyclic_group_homology(
    order: u64,
    generator: &IntMatrix,
    degree_max: usize,
) -> Result<GradedGroup, ComplexError> {
    // One extra degree so the top requested homology sees its incoming boundary.
    let c = periodic_complex(order, generator, degree_max + 1)?;
    Ok(c.homology().truncate(degree_max as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FgAbGroup, GroupDescriptor};
    use crate::complex::tensor_complex;

    fn z(n: i64) -> GroupDescriptor {
        FgAbGroup::cyclic(n).into()
    }

    fn free(r: u64) -> GroupDescriptor {
        FgAbGroup::free(r).into()
    }

    #[test]
    fn trivial_action_gives_exterior_algebra() {
        let one = IntMatrix::identity(1);
        let h = koszul_group_homology(&[one.clone(), one], 1, CoefficientRing::Integers).unwrap();
        assert_eq!(h, GradedGroup::from_groups([(0, free(1)), (1, free(2)), (2, free(1))]));
    }

    #[test]
    fn sign_action_coinvariants() {
        let h = koszul_group_homology(&[IntMatrix::from_rows(&[[-1]])], 1, CoefficientRing::Integers).unwrap();
        assert_eq!(h, GradedGroup::from_groups([(0, z(2))]));
    }

    #[test]
    fn localized_multiplication_action() {
        let ring = CoefficientRing::localized([15]);
        let actions = [IntMatrix::from_rows(&[[3]]), IntMatrix::from_rows(&[[5]])];
        let h = koszul_group_homology(&actions, 1, ring).unwrap();
        assert_eq!(h, GradedGroup::from_groups([(0, z(2)), (1, z(2))]));
    }

    #[test]
    fn rank_one_koszul_matches_tensor_of_two_term_complexes() {
        let values = [3, -1, 5];
        let actions: Vec<IntMatrix> = values.iter().map(|&a| IntMatrix::from_rows(&[[a]])).collect();
        let k = koszul_complex(&actions, 1, CoefficientRing::localized([15])).unwrap();
        let t = values
            .iter()
            .map(|&a| ChainComplex::two_term(CoefficientRing::localized([15]), 0, IntMatrix::from_rows(&[[a - 1]])))
            .reduce(|a, b| tensor_complex(&a, &b).unwrap())
            .unwrap();
        assert_eq!(k.homology(), t.homology());
    }

    #[test]
    fn rank_two_module() {
        // Z acting on Z^2 by swapping coordinates: H_0 = Z, H_1 = Z.
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        let h = koszul_group_homology(&[swap], 2, CoefficientRing::Integers).unwrap();
        assert_eq!(h, GradedGroup::from_groups([(0, free(1)), (1, free(1))]));
    }

    #[test]
    fn koszul_errors() {
        let a = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let b = IntMatrix::from_rows(&[[1, 0], [1, 1]]);
        assert!(matches!(
            koszul_complex(&[a, b], 2, CoefficientRing::Integers),
            Err(ComplexError::NonCommuting(0, 1))
        ));
        assert!(matches!(
            koszul_complex(&[IntMatrix::from_rows(&[[3]])], 1, CoefficientRing::Integers),
            Err(ComplexError::NotInvertible { index: 0, .. })
        ));
        assert!(koszul_complex(&[IntMatrix::from_rows(&[[3]])], 1, CoefficientRing::Rationals).is_ok());
        assert!(matches!(
            koszul_complex(&[IntMatrix::identity(2)], 1, CoefficientRing::Integers),
            Err(ComplexError::ActionShape { .. })
        ));
    }

    #[test]
    fn sign_representation_of_order_two() {
        let h = cyclic_group_homology(2, &IntMatrix::from_rows(&[[-1]]), 8).unwrap();
        for p in 0..=8 {
            let expected = if p % 2 == 0 { z(2) } else { GroupDescriptor::zero() };
            assert_eq!(h.get(p).unwrap(), expected, "degree {p}");
        }
        assert_eq!(h.get(9), None);
    }

    #[test]
    fn trivial_module_of_order_four() {
        let h = cyclic_group_homology(4, &IntMatrix::identity(1), 6).unwrap();
        assert_eq!(h.get(0).unwrap(), free(1));
        for p in 1..=6 {
            let expected = if p % 2 == 1 { z(4) } else { GroupDescriptor::zero() };
            assert_eq!(h.get(p).unwrap(), expected, "degree {p}");
        }
    }

    #[test]
    fn trivial_group() {
        let h = cyclic_group_homology(1, &IntMatrix::identity(3), 5).unwrap();
        assert_eq!(h.get(0).unwrap(), free(3));
        for p in 1..=5 {
            assert!(h.get(p).unwrap().is_zero());
        }
    }

    #[test]
    fn not_periodic() {
        assert!(matches!(
            cyclic_group_homology(2, &IntMatrix::from_rows(&[[2]]), 3),
            Err(ComplexError::NotPeriodic { order: 2 })
        ));
        assert!(matches!(
            cyclic_group_homology(0, &IntMatrix::identity(1), 3),
            Err(ComplexError::ZeroOrder)
        ));
    }
}
