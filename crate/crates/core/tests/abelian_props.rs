use num_bigint::BigInt;
use proptest::prelude::*;

use homkit_core::abelian::{graded_kunneth_mod2, Cardinality, FgAbGroup, GroupDescriptor, PrimeSet, Z2Graded};
use homkit_core::linalg::IntMatrix;

fn fg_group() -> impl Strategy<Value = FgAbGroup> {
    (0u64..=2, prop::collection::vec(2i64..=60, 0..=4))
        .prop_map(|(free, orders)| FgAbGroup::from_cyclic_orders(free, orders.into_iter().map(BigInt::from)))
}

fn cardinality() -> impl Strategy<Value = Cardinality> {
    prop_oneof![(0u64..5).prop_map(Cardinality::Finite), Just(Cardinality::Infinite)]
}

fn descriptor() -> impl Strategy<Value = GroupDescriptor> {
    (cardinality(), prop::collection::vec((2i64..40, cardinality()), 0..4))
        .prop_map(|(free, parts)| GroupDescriptor::new(free, parts.into_iter().map(|(o, m)| (BigInt::from(o), m))))
}

fn presentation() -> impl Strategy<Value = (usize, IntMatrix)> {
    (1usize..=2, 0usize..=2).prop_flat_map(|(g, r)| {
        prop::collection::vec(-6i64..=6, g * r).prop_map(move |v| {
            (
                g,
                IntMatrix::new(g, r, v.into_iter().map(BigInt::from).collect()).unwrap(),
            )
        })
    })
}

/// Kronecker product.
fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols())
    })
}

/// Horizontal concatenation.
fn hcat(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows(), a.cols() + b.cols(), |i, j| {
        if j < a.cols() {
            a.get(i, j).clone()
        } else {
            b.get(i, j - a.cols()).clone()
        }
    })
}

fn cyclic_pair() -> impl Strategy<Value = Z2Graded> {
    (0i64..=12, 0i64..=12).prop_map(|(a, b)| {
        let g = |n: i64| -> GroupDescriptor {
            if n < 2 {
                GroupDescriptor::zero()
            } else {
                FgAbGroup::cyclic(n).into()
            }
        };
        Z2Graded::new(g(a), g(b))
    })
}

proptest! {
    #[test]
    fn tensor_and_tor_are_symmetric(a in fg_group(), b in fg_group()) {
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert_eq!(a.tor(&b), b.tor(&a));
    }

    #[test]
    fn tensor_and_tor_distribute_over_sums(a in fg_group(), b in fg_group(), c in fg_group()) {
        let bc = b.plus(&c);
        prop_assert_eq!(a.tensor(&bc), a.tensor(&b).plus(&a.tensor(&c)));
        prop_assert_eq!(a.tor(&bc), a.tor(&b).plus(&a.tor(&c)));
    }

    #[test]
    fn tensor_matches_presented_tensor((ga, ra) in presentation(), (gb, rb) in presentation()) {
        let a = FgAbGroup::from_presentation(ga, &ra).unwrap();
        let b = FgAbGroup::from_presentation(gb, &rb).unwrap();
        let relations = hcat(&kron(&ra, &IntMatrix::identity(gb)), &kron(&IntMatrix::identity(ga), &rb));
        let presented = FgAbGroup::from_presentation(ga * gb, &relations).unwrap();
        prop_assert_eq!(presented, a.tensor(&b));
    }

    #[test]
    fn graded_kunneth_is_associative(a in cyclic_pair(), b in cyclic_pair(), c in cyclic_pair()) {
        let left = graded_kunneth_mod2(&graded_kunneth_mod2(&a, &b), &c);
        let right = graded_kunneth_mod2(&a, &graded_kunneth_mod2(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn descriptor_json_round_trip(g in descriptor()) {
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back = GroupDescriptor::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn localization_clears_inverted_primes(g in fg_group(), primes in prop::collection::vec(2u64..30, 0..3)) {
        let set = PrimeSet::dividing(primes);
        let l = g.localize(&set);
        prop_assert!(l.is_valid());
        prop_assert_eq!(l.group.free_rank(), g.free_rank());
    }
}
