//! Cross-module invariants and randomized properties.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::collection::vec;
use proptest::prelude::*;

use cark_core::bqf::Form;
use cark_core::cark::{
    cark_of_form, necklace_to_word, reduced_edge_count, weighted_decode, weighted_encode,
    word_to_necklace, Necklace,
};
use cark_core::class_group::{discriminant_report, reduced_forms};
use cark_core::pell::{fundamental_automorphism, pell4_fundamental};
use cark_core::psl2::{is_primitive_matrix, matrix_to_word, word_to_matrix, BlockWord};

fn valid_deltas(limit: i64) -> impl Iterator<Item = i64> {
    (5..=limit)
        .filter(|d| d % 4 == 0 || d % 4 == 1)
        .filter(|d| {
            let r = (*d as f64).sqrt() as i64;
            (r - 1..=r + 1).all(|k| k * k != *d)
        })
}

proptest! {
    #[test]
    fn necklace_canonicalization_is_rotation_invariant(
        bits in vec(0u8..=1, 1..40),
        shift in 0usize..40,
    ) {
        let n1 = Necklace::from_bits(bits.clone()).unwrap();
        let mut rotated = bits;
        let k = shift % rotated.len();
        rotated.rotate_left(k);
        let n2 = Necklace::from_bits(rotated).unwrap();
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn necklace_symmetries_are_commuting_involutions(bits in vec(0u8..=1, 1..40)) {
        let n = Necklace::from_bits(bits).unwrap();
        prop_assert_eq!(n.reverse_r().reverse_r(), n.clone());
        prop_assert_eq!(n.swap_m().swap_m(), n.clone());
        prop_assert_eq!(n.reverse_r().swap_m(), n.swap_m().reverse_r());
        let both = n.reverse_r().swap_m();
        prop_assert_eq!(both.swap_m().reverse_r(), n);
    }

    #[test]
    fn weighted_encoding_round_trips(bits in vec(0u8..=1, 2..60)) {
        let n = Necklace::from_bits(bits).unwrap();
        if n.word().contains(&0) && n.word().contains(&1) {
            let w = weighted_encode(&n).unwrap();
            prop_assert_eq!(weighted_decode(&w), n.clone());
            prop_assert_eq!(weighted_encode(&weighted_decode(&w)).unwrap(), w);
        }
    }

    #[test]
    fn words_and_necklaces_are_inverse(pairs in vec((1u64..8, 1u64..8), 1..5)) {
        let w = BlockWord::from_pairs(&pairs).unwrap();
        let n = word_to_necklace(&w);
        prop_assert_eq!(necklace_to_word(&n).unwrap(), w.clone());
        prop_assert_eq!(
            reduced_edge_count(&n).unwrap(),
            2 * w.block_count()
        );
    }

    #[test]
    fn word_round_trip_through_matrices(pairs in vec((1u64..6, 1u64..6), 1..5)) {
        let w = BlockWord::from_pairs(&pairs).unwrap();
        let m = word_to_matrix(&w);
        let (w2, v) = matrix_to_word(&m).unwrap();
        prop_assert_eq!(&w2, &w);
        prop_assert_eq!(word_to_matrix(&w2), v.inverse().multiply(&m).multiply(&v));
    }

    #[test]
    fn lyndon_representative_of_aperiodic_is_canonical(bits in vec(0u8..=1, 1..30)) {
        let n = Necklace::from_bits(bits).unwrap();
        if n.is_primitive() {
            prop_assert_eq!(n.lyndon_representative().unwrap(), n.word().to_vec());
        } else {
            prop_assert!(n.lyndon_representative().is_err());
        }
    }
}

#[test]
fn word_and_matrix_primitivity_agree_on_random_words() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..500 {
        let k = rng.gen_range(1..=4);
        let pairs: Vec<(u64, u64)> = (0..k)
            .map(|_| (rng.gen_range(1..=5), rng.gen_range(1..=5)))
            .collect();
        // sometimes force a periodic word by repeating
        let reps = rng.gen_range(1..=2);
        let repeated: Vec<(u64, u64)> = pairs
            .iter()
            .cycle()
            .take(pairs.len() * reps)
            .cloned()
            .collect();
        let w = BlockWord::from_pairs(&repeated).unwrap();
        let m = word_to_matrix(&w);
        let n = word_to_necklace(&w);
        assert_eq!(n.is_primitive(), is_primitive_matrix(&m).unwrap());
    }
}

#[test]
fn rho_walks_preserve_discriminant_primitivity_and_reducedness() {
    for delta in valid_deltas(300) {
        for form in reduced_forms(&delta.into()).unwrap() {
            let image = form.rho().unwrap();
            assert_eq!(image.discriminant(), form.discriminant());
            assert_eq!(image.is_primitive(), form.is_primitive());
            assert!(image.is_reduced().unwrap(), "rho left the cycle at {form}");
        }
    }
}

#[test]
fn cycles_have_even_length_matching_the_block_count() {
    // a primitive class cycle has 2k members where k is the block count of
    // the word of its fundamental automorphism; an imprimitive class wraps
    // a shorter cycle several times, so its word is longer than the cycle
    for delta in valid_deltas(300) {
        let report = discriminant_report(&delta.into()).unwrap();
        for cycle in &report.cycles {
            assert_eq!(cycle.len() % 2, 0);
            let rep = cycle.representative();
            let m = fundamental_automorphism(rep).unwrap();
            let (word, _) = matrix_to_word(&m).unwrap();
            if rep.is_primitive() {
                assert_eq!(
                    cycle.len(),
                    2 * word.block_count(),
                    "delta {delta}, representative {rep}"
                );
            } else {
                assert!(2 * word.block_count() >= cycle.len());
                assert_eq!(2 * word.block_count() % cycle.len(), 0);
            }
        }
    }
}

#[test]
fn equivalence_classes_partition_reduced_forms() {
    for delta in valid_deltas(100) {
        let report = discriminant_report(&delta.into()).unwrap();
        let primitive: Vec<Form> = report
            .reduced_forms
            .iter()
            .filter(|f| f.is_primitive())
            .cloned()
            .collect();
        for f in &primitive {
            assert!(f.equivalent(f).unwrap());
            for g in &primitive {
                let fg = f.equivalent(g).unwrap();
                assert_eq!(fg, g.equivalent(f).unwrap());
                let same_cycle = report
                    .cycles
                    .iter()
                    .any(|c| c.members().contains(f) && c.members().contains(g));
                assert_eq!(fg, same_cycle);
            }
        }
    }
}

#[test]
fn divisible_middle_coefficient_forces_ambiguity() {
    for delta in valid_deltas(200) {
        for form in reduced_forms(&delta.into()).unwrap() {
            if !form.is_primitive() {
                continue;
            }
            let (a, b, _) = form.coefficients();
            if (b % a).is_zero() {
                assert!(form.is_ambiguous_class().unwrap(), "form {form}");
            }
        }
    }
}

#[test]
fn trace_squared_identity_holds_exactly() {
    for delta in valid_deltas(500) {
        let delta = BigInt::from(delta);
        let s = pell4_fundamental(&delta).unwrap();
        for form in reduced_forms(&delta).unwrap() {
            if !form.is_primitive() {
                continue;
            }
            let tau = fundamental_automorphism(&form).unwrap().trace();
            assert_eq!(&tau * &tau - BigInt::from(4), &delta * (s.y() * s.y()));
        }
    }
}

#[test]
fn class_representative_necklace_primitivity_matches_matrix_primitivity() {
    // imprimitive classes can have either periodic or aperiodic çarks
    // (delta 20 is periodic, delta 32 is not); the two notions of
    // primitivity must agree through the dictionary in every case
    let mut periodic_seen = false;
    let mut aperiodic_imprimitive_seen = false;
    for delta in valid_deltas(2000) {
        let report = discriminant_report(&delta.into()).unwrap();
        for cycle in &report.cycles {
            let rep = cycle.representative();
            let m = fundamental_automorphism(rep).unwrap();
            let necklace_primitive = cark_of_form(rep).unwrap().is_primitive();
            assert_eq!(
                necklace_primitive,
                is_primitive_matrix(&m).unwrap(),
                "delta {delta}, representative {rep}"
            );
            if !rep.is_primitive() {
                if necklace_primitive {
                    aperiodic_imprimitive_seen = true;
                } else {
                    periodic_seen = true;
                }
            } else {
                assert!(
                    necklace_primitive,
                    "primitive classes have aperiodic spines"
                );
            }
        }
    }
    assert!(periodic_seen && aperiodic_imprimitive_seen);
}

#[test]
fn imprimitive_cycles_are_scalings() {
    for delta in valid_deltas(500) {
        let report = discriminant_report(&delta.into()).unwrap();
        for cycle in &report.cycles {
            let rep = cycle.representative();
            if rep.is_primitive() {
                continue;
            }
            let (a, b, c) = rep.coefficients();
            let k = a.gcd(b).gcd(c);
            let small_delta = BigInt::from(delta) / (&k * &k);
            let small = discriminant_report(&small_delta).unwrap();
            let scaled_back: Vec<Form> = small
                .reduced_forms
                .iter()
                .map(|g| {
                    let (x, y, z) = g.coefficients();
                    Form::new(x * &k, y * &k, z * &k)
                })
                .collect();
            for member in cycle.members() {
                assert!(
                    scaled_back.contains(member),
                    "member {member} of delta {delta}"
                );
            }
        }
    }
}
