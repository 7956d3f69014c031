//! Randomized invariants over small rings and codes.

use proptest::prelude::*;
use z2s_codes::text::{parse_binary_code, write_binary_code};
use z2s_codes::{
    gray_image, kernel_additive, kernel_binary, kernel_dimension, normal_form, phi_inverse_vector,
    phi_vector, rank_binary, AdditiveCode, Budget, GeneratorMatrix, RingScalar, RingVector,
};

fn ring_vector(s: u32, n: usize) -> impl Strategy<Value = RingVector> {
    prop::collection::vec(0..1u32 << s, n).prop_map(move |c| RingVector::new(c, s).unwrap())
}

/// `(s, rows)` with `s <= 3`, `n <= 6` and at most 3 rows.
fn small_generator() -> impl Strategy<Value = (u32, Vec<Vec<u32>>)> {
    (2u32..=3, 1usize..=6, 1usize..=3).prop_flat_map(|(s, n, k)| {
        prop::collection::vec(prop::collection::vec(0..1u32 << s, n), k)
            .prop_map(move |rows| (s, rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gray_inverse_round_trips(v in (1u32..=8, 1usize..=12).prop_flat_map(|(s, n)| ring_vector(s, n))) {
        prop_assert_eq!(phi_inverse_vector(&phi_vector(&v), v.s()).unwrap(), v);
    }

    #[test]
    fn gray_distance_is_weight_of_difference(
        (u, v) in (2u32..=6).prop_flat_map(|s| (ring_vector(s, 7), ring_vector(s, 7)))
    ) {
        let d = phi_vector(&u).distance(&phi_vector(&v)).unwrap();
        prop_assert_eq!(d, phi_vector(&u.sub(&v).unwrap()).weight());
        prop_assert_eq!(phi_vector(&u).len(), 7 << (u.s() - 1));
    }

    #[test]
    fn carry_identity_on_vectors(u in ring_vector(4, 9), v in ring_vector(4, 9)) {
        let two = RingScalar::new(2, 4).unwrap();
        let rhs = u.add(&v).unwrap().sub(&u.odot(&v).unwrap().scale(two).unwrap()).unwrap();
        prop_assert_eq!(phi_vector(&u).xor(&phi_vector(&v)).unwrap(), phi_vector(&rhs));
    }

    #[test]
    fn normal_form_is_canonical((s, rows) in small_generator()) {
        let g = GeneratorMatrix::from_rows(s, rows.clone()).unwrap();
        let nf = normal_form(&g);
        prop_assert_eq!(normal_form(&nf), nf.clone());
        let mut reversed = rows;
        reversed.reverse();
        let g2 = GeneratorMatrix::from_rows(s, reversed).unwrap();
        prop_assert_eq!(normal_form(&g2), nf);
    }

    #[test]
    fn codes_are_closed_and_sized((s, rows) in small_generator()) {
        let c = AdditiveCode::from_rows(s, rows).unwrap();
        let words = c.codewords(&Budget::default()).unwrap();
        prop_assert_eq!(words.len() as u64, 1u64 << c.log2_size());
        for (i, a) in words.iter().enumerate().take(6) {
            for b in words.iter().skip(i).take(6) {
                prop_assert!(c.contains(&a.add(b).unwrap()).unwrap());
            }
        }
        prop_assert_eq!(c.torsion_subcode().log2_size() as usize, c.code_type().torsion_dimension());
    }

    #[test]
    fn kernel_routes_agree((s, rows) in small_generator()) {
        let b = Budget::default();
        let c = AdditiveCode::from_rows(s, rows).unwrap();
        let image = gray_image(&c, &b).unwrap();
        let by_def = kernel_binary(&image, &b).unwrap();
        prop_assert!(kernel_additive(&c, &b).unwrap().gray_image().same_set(&by_def));
        let ker = kernel_dimension(&by_def).unwrap();
        let rank = rank_binary(&image, &b).unwrap();
        let m = c.log2_size() as usize;
        prop_assert!(ker <= m && m <= rank);
        prop_assert!(gray_image(&c.torsion_subcode(), &b).unwrap().is_subset_of(&by_def));
    }

    #[test]
    fn binary_listing_round_trips((s, rows) in small_generator()) {
        let c = AdditiveCode::from_rows(s, rows).unwrap();
        let image = gray_image(&c, &Budget::default()).unwrap();
        prop_assert_eq!(parse_binary_code(&write_binary_code(&image)).unwrap(), image);
    }
}
