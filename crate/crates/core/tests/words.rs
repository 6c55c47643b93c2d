use std::collections::BTreeMap;

use domkit::fingroup::{evaluate_word, parse_cayley};
use domkit::word::{basic_commutator_identities, free_equal, random_word};
use domkit::{GeneratorId, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gid(name: &str) -> GeneratorId {
    GeneratorId::new(name).unwrap()
}

fn raw_syllables() -> impl Strategy<Value = Vec<(GeneratorId, i64)>> {
    prop::collection::vec((prop::sample::select(vec!["x", "y", "z"]), -3i64..=3), 0..12)
        .prop_map(|v| v.into_iter().map(|(g, k)| (gid(g), k)).collect())
}

fn word() -> impl Strategy<Value = Word> {
    raw_syllables().prop_map(Word::reduce)
}

/// Literal expansion into single letters, then cancellation with a stack.
fn stack_reduce(raw: &[(GeneratorId, i64)]) -> Vec<(GeneratorId, i64)> {
    let mut letters: Vec<(GeneratorId, i64)> = Vec::new();
    for (g, k) in raw {
        let s = k.signum();
        for _ in 0..k.abs() {
            match letters.last() {
                Some((h, t)) if h == g && *t == -s => {
                    letters.pop();
                }
                _ => letters.push((g.clone(), s)),
            }
        }
    }
    let mut out: Vec<(GeneratorId, i64)> = Vec::new();
    for (g, s) in letters {
        match out.last_mut() {
            Some((h, k)) if *h == g => *k += s,
            _ => out.push((g, s)),
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduce_matches_letter_stack(raw in raw_syllables()) {
        let w = Word::reduce(raw.clone());
        let expected = stack_reduce(&raw);
        prop_assert_eq!(w.syllables(), expected.as_slice());
        prop_assert_eq!(Word::reduce(w.syllables().to_vec()), w);
    }

    #[test]
    fn reduced_invariant(w in word()) {
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(&pair[0].0, &pair[1].0);
        }
        prop_assert!(w.syllables().iter().all(|(_, k)| *k != 0));
    }

    #[test]
    fn group_laws(u in word(), v in word(), w in word(), n in -4i64..=4) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert!(u.mul(&u.inv()).is_identity());
        prop_assert_eq!(u.mul(&v).inv(), v.inv().mul(&u.inv()));
        prop_assert!(u.pow(0).is_identity());
        let mut acc = Word::identity();
        let base = if n >= 0 { u.clone() } else { u.inv() };
        for _ in 0..n.abs() {
            acc = acc.mul(&base);
        }
        prop_assert_eq!(u.pow(n), acc);
        prop_assert!(free_equal(&u.conjugate(&v), &u.mul(&u.commutator(&v))));
    }

    #[test]
    fn display_parses_back(w in word()) {
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn commutator_identities_for_arbitrary_words(x in word(), y in word(), z in word(), w in word()) {
        for (label, lhs, rhs) in basic_commutator_identities(&x, &y, &z, &w) {
            prop_assert!(free_equal(&lhs, &rhs), "{}", label);
        }
    }
}

#[test]
fn substitution_is_a_homomorphism_on_seeded_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let vars = [gid("x"), gid("y"), gid("z")];
    let targets = [gid("a"), gid("b")];
    for _ in 0..100 {
        let u = random_word(&mut rng, &vars, 12, 3);
        let v = random_word(&mut rng, &vars, 12, 3);
        let assignment: BTreeMap<GeneratorId, Word> = vars
            .iter()
            .map(|g| (g.clone(), random_word(&mut rng, &targets, 4, 3)))
            .collect();
        let lhs = u.mul(&v).substitute(&assignment).unwrap();
        let rhs = u.substitute(&assignment).unwrap().mul(&v.substitute(&assignment).unwrap());
        assert_eq!(lhs, rhs, "u = {u}, v = {v}");
    }
}

#[test]
fn identities_also_hold_in_a_concrete_group() {
    // S3 as a cross-check that does not go through free reduction
    let s3 = parse_cayley(include_str!("fixtures/s3.cay")).unwrap();
    let letters = ["x", "y", "z", "w"].map(Word::gen);
    for (label, lhs, rhs) in basic_commutator_identities(&letters[0], &letters[1], &letters[2], &letters[3]) {
        for code in 0..6usize.pow(4) {
            let assignment: BTreeMap<GeneratorId, usize> = ["x", "y", "z", "w"]
                .iter()
                .enumerate()
                .map(|(i, n)| (gid(n), (code / 6usize.pow(i as u32)) % 6))
                .collect();
            assert_eq!(
                evaluate_word(&s3, &lhs, &assignment).unwrap(),
                evaluate_word(&s3, &rhs, &assignment).unwrap(),
                "{label}"
            );
        }
    }
}

#[test]
fn missing_assignment_is_an_error() {
    let w = Word::parse("[x,y]").unwrap();
    let assignment = BTreeMap::from([(gid("x"), Word::identity())]);
    assert!(w.substitute(&assignment).is_err());
}
