mod common;

use common::*;
use nilalg::word::{compare_words, enumerate_words, gtr_compare, succ_compare, Comparison, Letter};
use nilalg::{PartialOrderKind, Word};
use proptest::prelude::*;

fn word_strategy(d: Letter, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=d, 1..=max_len).prop_map(|v| Word::new(v).unwrap())
}

proptest! {
    #[test]
    fn power_vectors_sum_to_degrees(a in word_strategy(4, 12)) {
        for k in 1..=4u8 {
            prop_assert_eq!(a.x_power(k).total(), a.multidegree(4).entries()[k as usize - 1]);
        }
    }

    #[test]
    fn succ_refines_gtr(v in prop::collection::vec(1u8..=3, 2..=9), seed in any::<u64>()) {
        // two words of the same multidegree: a shuffle of the same letters
        let a = Word::new(v.clone()).unwrap();
        let mut b = v;
        let mut s = seed;
        for i in (1..b.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            b.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = Word::new(b).unwrap();
        if succ_compare(&a, &b) == Comparison::Greater {
            prop_assert_eq!(gtr_compare(&a, &b), Comparison::Greater);
        }
    }

    #[test]
    fn comparisons_are_antisymmetric(a in word_strategy(3, 8), b in word_strategy(3, 8)) {
        for kind in [PartialOrderKind::Gtr, PartialOrderKind::Succ] {
            let flipped = match compare_words(kind, &a, &b) {
                Comparison::Greater => Comparison::Less,
                Comparison::Less => Comparison::Greater,
                c => c,
            };
            prop_assert_eq!(compare_words(kind, &b, &a), flipped);
        }
    }
}

/// The strict relation `>` restricted to one multidegree has no cycles.
#[test]
fn greater_relation_is_acyclic() {
    for d in 1..=3 {
        for total in 1..=6 {
            for delta in multidegrees(d, total) {
                let words = enumerate_words(&delta, 10_000).unwrap();
                let n = words.len();
                let mut indeg = vec![0usize; n];
                let mut succ = vec![Vec::new(); n];
                for i in 0..n {
                    for j in 0..n {
                        if gtr_compare(&words[i], &words[j]) == Comparison::Greater {
                            succ[i].push(j);
                            indeg[j] += 1;
                        }
                    }
                }
                let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
                let mut seen = 0;
                while let Some(i) = stack.pop() {
                    seen += 1;
                    for &j in &succ[i] {
                        indeg[j] -= 1;
                        if indeg[j] == 0 {
                            stack.push(j);
                        }
                    }
                }
                assert_eq!(seen, n, "cycle in {delta}");
            }
        }
    }
}

#[test]
fn text_forms() {
    assert_eq!(w("x1^2.x2.x1").to_string(), "x1^2.x2.x1");
    assert_eq!(w("x1.x1.x2"), w("x1^2.x2"));
    assert!("x0".parse::<Word>().is_err());
    assert!("".parse::<Word>().is_err());
}
