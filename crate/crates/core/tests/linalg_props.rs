use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use homkit_core::linalg::{cokernel_invariants, exterior_power_matrix, snf, IntMatrix, RatMatrix};

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn rat_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n * n).prop_map(move |v| {
        let data = v
            .into_iter()
            .map(|(p, q)| BigRational::new(p.into(), q.into()))
            .collect();
        RatMatrix::new(n, n, data).unwrap()
    })
}

/// Product of elementary row operations `row_i += k * row_j` and swaps.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = IntMatrix::identity(n);
        if i == j {
            let t = (i + 1) % n;
            e.set(i, i, BigInt::zero());
            e.set(t, t, BigInt::zero());
            e.set(i, t, BigInt::one());
            e.set(t, i, BigInt::one());
        } else {
            e.set(i, j, BigInt::from(k));
        }
        u = &e * &u;
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_certificate(m in int_matrix(12, 9)) {
        let s = snf(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn cokernel_is_unimodular_invariant(
        m in int_matrix(6, 9),
        left in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8),
        right in prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8),
    ) {
        let u = unimodular(m.rows(), &left);
        let v = unimodular(m.cols(), &right);
        let moved = &(&u * &m) * &v;
        prop_assert_eq!(cokernel_invariants(&moved), cokernel_invariants(&m));
    }

    #[test]
    fn exterior_power_is_multiplicative(a in rat_matrix(4), b in rat_matrix(4), q in 0usize..=4) {
        let ab = a.checked_mul(&b).unwrap();
        let lhs = exterior_power_matrix(&ab, q).unwrap();
        let rhs = exterior_power_matrix(&a, q).unwrap().checked_mul(&exterior_power_matrix(&b, q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exterior_power_of_scalar(n in -5i64..=5, d in 1usize..=5, q in 0usize..=5) {
        prop_assume!(q <= d);
        let m = IntMatrix::scalar(d, n).to_rational();
        let p = exterior_power_matrix(&m, q).unwrap();
        let scale = BigRational::from_integer(BigInt::from(n).pow(q as u32));
        prop_assert_eq!(p.clone(), RatMatrix::identity(p.rows()).scale(&scale));
    }
}
