use proptest::prelude::*;

use homkit_core::abelian::GroupDescriptor;
use homkit_core::complex::cyclic_group_homology;
use homkit_core::linalg::IntMatrix;
use homkit_core::numfield::{
    euler_phi, groupoid_homology, sign_of, theta_matrix, FieldElement, MuSource, NumberFieldProfile, Poly,
};

const FIELDS: [&str; 5] = ["x^2+1", "x^2-2", "x^3-2", "x^2+x+1", "x^3-x-1"];

fn field_and_pair() -> impl Strategy<Value = (Poly, FieldElement, FieldElement)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let f: Poly = FIELDS[i].parse().unwrap();
        let d = f.degree();
        (prop::collection::vec(-7i64..=7, d), prop::collection::vec(-7i64..=7, d))
            .prop_filter("nonzero", |(a, b)| {
                a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0)
            })
            .prop_map(move |(a, b)| {
                (
                    f.clone(),
                    FieldElement::from_integers(&a, &f),
                    FieldElement::from_integers(&b, &f),
                )
            })
    })
}

fn profile() -> impl Strategy<Value = NumberFieldProfile> {
    (
        1usize..=8,
        0usize..=8,
        prop::sample::select(vec![2u64, 4, 6, 8, 10, 12]),
    )
        .prop_filter_map("valid signature", |(d, r1, mu)| {
            let mu = if r1 > 0 { 2 } else { mu };
            NumberFieldProfile::new(d, r1, mu, MuSource::Asserted).ok()
        })
}

proptest! {
    #[test]
    fn sign_is_multiplicative((f, a, b) in field_and_pair()) {
        let ab = a.mul(&b, &f);
        prop_assert_eq!(sign_of(&ab, &f).unwrap(), sign_of(&a, &f).unwrap() * sign_of(&b, &f).unwrap());
    }

    #[test]
    fn theta_is_multiplicative((f, a, b) in field_and_pair()) {
        let ab = a.mul(&b, &f);
        for q in 0..=f.degree() {
            let lhs = theta_matrix(&ab, &f, q).unwrap();
            let rhs = theta_matrix(&a, &f, q).unwrap().checked_mul(&theta_matrix(&b, &f, q).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn profile_validation(d in 0usize..=9, r1 in 0usize..=9, mu in 1u64..=30) {
        let valid = d >= 1
            && r1 <= d
            && (d - r1) % 2 == 0
            && mu % 2 == 0
            && (d as u64).is_multiple_of(euler_phi(mu))
            && (r1 == 0 || mu == 2);
        prop_assert_eq!(NumberFieldProfile::new(d, r1, mu, MuSource::Asserted).is_ok(), valid);
    }

    #[test]
    fn profile_json_round_trip(p in profile()) {
        prop_assert_eq!(NumberFieldProfile::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn homology_starts_in_degree_d(p in profile()) {
        let d = p.degree() as i64;
        let h = groupoid_homology(&p, p.degree() + 3);
        for n in 0..d {
            prop_assert!(h.group(n).is_zero());
        }
        let sign = cyclic_group_homology(2, &IntMatrix::from_rows(&[[-1]]), 0).unwrap();
        let want = if p.totally_imaginary() { GroupDescriptor::free(1u64.into()) } else { sign.group(0) };
        prop_assert_eq!(h.group(d), want);
    }
}
