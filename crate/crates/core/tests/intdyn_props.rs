use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use homkit_core::intdyn::{build_sigma, homology_closed_form, torsion_ktheory_e2, torsion_ktheory_kunneth};
use homkit_core::verify::coprime_sigmas;

fn sigma(min_n: usize) -> impl Strategy<Value = Vec<u64>> {
    let all: Vec<Vec<u64>> = coprime_sigmas(30, 5).into_iter().filter(|s| s.len() >= min_n).collect();
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn closed_form_vanishes_above_n_plus_one(s in sigma(1)) {
        let profile = build_sigma(&s, false).unwrap();
        let n = s.len() as i64;
        let h = homology_closed_form(&profile, s.len() + 6);
        prop_assert!(!h.group(n + 1).is_zero());
        for k in n + 2..=n + 6 {
            prop_assert!(h.group(k).is_zero());
        }
    }

    #[test]
    fn unit_gcd_means_no_torsion(s in sigma(1)) {
        let profile = build_sigma(&s, false).unwrap();
        prop_assume!(profile.g() == 1);
        let h = homology_closed_form(&profile, s.len() + 2);
        for (_, g) in h.iter() {
            prop_assert!(g.torsion().is_empty());
        }
        for k in [torsion_ktheory_e2(&profile).unwrap(), torsion_ktheory_kunneth(&profile).unwrap()] {
            prop_assert!(k.is_zero());
        }
    }

    #[test]
    fn torsion_orders_match_across_parities(s in sigma(2)) {
        let profile = build_sigma(&s, false).unwrap();
        let h = homology_closed_form(&profile, s.len() + 1);
        let k = torsion_ktheory_e2(&profile).unwrap();
        let order = |parity: i64| -> BigInt {
            h.iter()
                .filter(|(n, _)| n.rem_euclid(2) == parity)
                .map(|(_, g)| g.torsion_order().unwrap())
                .fold(BigInt::one(), |a, b| a * b)
        };
        prop_assert_eq!(k.even.torsion_order().unwrap(), order(1));
        prop_assert_eq!(k.odd.torsion_order().unwrap(), order(0));
        prop_assert_eq!(order(0), order(1));
    }

    #[test]
    fn order_of_generators_is_irrelevant(s in sigma(1), rot in 0usize..5) {
        let mut shuffled = s.clone();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        shuffled.reverse();
        let a = build_sigma(&s, false).unwrap();
        let b = build_sigma(&shuffled, false).unwrap();
        prop_assert_eq!(homology_closed_form(&a, len + 2), homology_closed_form(&b, len + 2));
    }
}
