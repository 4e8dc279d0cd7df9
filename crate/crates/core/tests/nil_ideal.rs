mod common;

use common::*;
use nilalg::field::{is_prime, FieldTag};
use nilalg::nil_ideal::{mirror, substitute_unit, Degree, SubstituteMode};
use nilalg::word::{compare_words, Comparison};
use nilalg::{EngineConfig, MultiDegree, NilIdeal, PartialOrderKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn no_symmetry() -> EngineConfig {
    EngineConfig {
        exploit_symmetry: false,
        ..EngineConfig::default()
    }
}

fn random_prime(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let p = rng.gen_range((1u64 << 30)..(1u64 << 31));
        if is_prime(p) {
            return p;
        }
    }
}

fn permutations(v: &[u32]) -> Vec<Vec<u32>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Quotient dimensions computed directly for every ordering of every
/// multidegree agree with each other and with the symmetric shortcut.
#[test]
fn letter_permutation_symmetry() {
    for (n, p) in [(2, 0), (2, 2), (3, 0), (3, 3)] {
        let direct = NilIdeal::with_config(n, p, no_symmetry()).unwrap();
        let shortcut = NilIdeal::new(n, p).unwrap();
        for d in 1..=3 {
            for total in 1..=7 {
                for delta in multidegrees(d, total) {
                    if !delta.is_sorted_desc() {
                        continue;
                    }
                    let base = direct.quotient_dimension(&delta).unwrap();
                    for perm in permutations(delta.entries()) {
                        let pd = MultiDegree::new(perm);
                        assert_eq!(
                            direct.quotient_dimension(&pd).unwrap(),
                            base,
                            "n={n} p={p} {pd}"
                        );
                        assert_eq!(
                            shortcut.quotient_dimension(&pd).unwrap(),
                            base,
                            "n={n} p={p} {pd}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn monotone_vanishing() {
    for (n, d, p) in [
        (2, 2, 0),
        (2, 3, 2),
        (2, 4, 2),
        (3, 2, 0),
        (3, 2, 3),
        (3, 3, 2),
        (3, 3, 0),
    ] {
        let ideal = NilIdeal::new(n, p).unwrap();
        let mut vanished = false;
        for c in 1..=8 {
            let v = ideal.degree_vanishes(d, c).unwrap();
            assert!(!vanished || v, "n={n} d={d} p={p}: degree {c} revives");
            vanished |= v;
        }
    }
}

#[test]
fn mirror_preserves_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, p) in [(3, 0), (3, 2), (4, 0), (4, 3)] {
        let ideal = NilIdeal::new(n, p).unwrap();
        let field = ideal.field();
        for delta in [md(&[3, 2]), md(&[2, 2, 1]), md(&[4, 2]), md(&[3, 1, 1])] {
            for _ in 0..5 {
                let f = random_ideal_element(&mut rng, &ideal, &delta);
                assert!(ideal.contains(&mirror(&f)).unwrap());
                let g = random_sum(&mut rng, field, &delta, 4);
                assert_eq!(
                    ideal.contains(&g).unwrap(),
                    ideal.contains(&mirror(&g)).unwrap(),
                    "{g}"
                );
            }
        }
    }
}

/// Every residual returned as a certificate is supported on strictly
/// greater words and differs from its class by an ideal element.
#[test]
fn equivalence_certificates_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut held = 0;
    for (n, p) in [(3, 0), (4, 0), (4, 3)] {
        let ideal = NilIdeal::new(n, p).unwrap();
        for delta in [md(&[3, 2]), md(&[3, 1, 1]), md(&[4, 1, 1]), md(&[2, 2, 2])] {
            for kind in [PartialOrderKind::Gtr, PartialOrderKind::Succ] {
                for _ in 0..4 {
                    let f = random_sum(&mut rng, ideal.field(), &delta, 2);
                    let out = ideal.equiv_zero_certificate(&f, kind).unwrap();
                    assert_eq!(out.holds, out.groups.iter().all(|g| g.holds));
                    for g in out.groups.iter().filter(|g| g.holds) {
                        held += 1;
                        assert!(ideal.contains(&g.part.sub(&g.residual)).unwrap());
                        let rep = g.part.words().next().unwrap();
                        for w in g.residual.words() {
                            assert_eq!(
                                compare_words(kind, w, rep),
                                Comparison::Greater,
                                "{w} vs {rep}"
                            );
                        }
                    }
                }
            }
        }
    }
    assert!(held > 0);
}

#[test]
fn rationals_agree_with_a_large_prime() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let q = random_prime(&mut rng);
    for n in 2..=4 {
        let a = NilIdeal::new(n, 0).unwrap();
        let b = NilIdeal::new(n, q).unwrap();
        for d in 1..=3 {
            for total in 1..=7 {
                for delta in multidegrees(d, total)
                    .into_iter()
                    .filter(MultiDegree::is_sorted_desc)
                {
                    if delta.word_count() > 3000 {
                        continue;
                    }
                    assert_eq!(
                        a.quotient_dimension(&delta).unwrap(),
                        b.quotient_dimension(&delta).unwrap(),
                        "n={n} q={q} {delta}"
                    );
                }
            }
        }
    }
    for (n, d) in [(2, 2), (3, 2), (4, 2)] {
        let ra = NilIdeal::new(n, 0)
            .unwrap()
            .nilpotency_degree(d, 12)
            .unwrap();
        let rb = NilIdeal::new(n, q)
            .unwrap()
            .nilpotency_degree(d, 12)
            .unwrap();
        assert_eq!(ra.degree, rb.degree);
    }
}

/// Deleting a letter of degree at most three maps ideal elements to ideal
/// elements for `n = 4` in characteristic two.
#[test]
fn unit_substitution_preserves_the_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let ideal = NilIdeal::new(4, 2).unwrap();
    let cases: &[(&[u32], u8)] = &[
        (&[3, 2], 1),
        (&[3, 2], 2),
        (&[3, 1, 1], 1),
        (&[2, 2, 1], 3),
        (&[3, 2, 1], 1),
        (&[1, 3, 2], 2),
        (&[4, 3], 2),
        (&[2, 2, 2], 1),
    ];
    let mut samples = 0;
    let mut nonzero = 0;
    while samples < 120 {
        let (delta, k) = cases[samples % cases.len()];
        let f = random_ideal_element(&mut rng, &ideal, &md(delta));
        if f.is_zero() {
            continue;
        }
        let g = substitute_unit(&f, k, SubstituteMode::Lemma).unwrap();
        assert!(ideal.contains(&g).unwrap(), "{f} -> {g}");
        nonzero += usize::from(!g.is_zero());
        samples += 1;
    }
    assert!(nonzero > 0);
}

#[test]
fn known_small_degrees() {
    for (n, d, p, c) in [
        (2, 2, 0, 3),
        (2, 3, 2, 4),
        (3, 2, 0, 6),
        (3, 2, 3, 7),
        (1, 3, 0, 1),
        (3, 1, 0, 3),
    ] {
        let r = NilIdeal::new(n, p)
            .unwrap()
            .nilpotency_degree(d, 10)
            .unwrap();
        assert_eq!(r.degree, Degree::Exact(c), "n={n} d={d} p={p}");
        if c == 1 {
            assert!(r.witness.is_none());
            continue;
        }
        // the witness is a nonzero word one degree below
        let wit = r.witness.unwrap();
        assert_eq!(wit.len() as u32, c - 1);
        let f = nilalg::FormalSum::from_word(FieldTag::from_characteristic(p).unwrap(), wit);
        assert!(!NilIdeal::new(n, p).unwrap().contains(&f).unwrap());
    }
}
