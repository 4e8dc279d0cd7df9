use nilalg::field::FieldTag;
use nilalg::invariants::{
    conjugation_check, generation_check, generator_set, newton_sigma_check, subalgebra_reduce,
    CSource, InvariantPoly,
};
use nilalg::Word;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=2, 1..=max_len).prop_map(|v| Word::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_is_cyclic_and_graded(a in word(3), b in word(3), t in 1u32..=2, p in prop::sample::select(vec![0u64, 2, 3])) {
        let field = FieldTag::from_characteristic(p).unwrap();
        let x = InvariantPoly::new(field, 2, 2, t, &a.concat(&b)).unwrap();
        let y = InvariantPoly::new(field, 2, 2, t, &b.concat(&a)).unwrap();
        prop_assert_eq!(&x.poly, &y.poly);
        if let Some(deg) = x.poly.block_degree(4) {
            prop_assert_eq!(deg.as_slice(), x.multidegree.entries());
        }
    }

    /// `tr(a b^2)` is a polynomial in invariants of smaller degree for
    /// `2 x 2` matrices.
    #[test]
    fn trace_of_a_b_squared_reduces(a in word(2), b in word(2)) {
        let f = FieldTag::Rational;
        let target = InvariantPoly::new(f, 2, 2, 1, &a.concat(&b).concat(&b)).unwrap();
        let deg = target.degree();
        let mut gens = Vec::new();
        for len in 1..deg as usize {
            for v in nilalg::invariants::necklaces(2, len) {
                for t in 1..=2u32 {
                    if t * len as u32 <= deg {
                        gens.push(InvariantPoly::new(f, 2, 2, t, &v).unwrap());
                    }
                }
            }
        }
        prop_assert!(subalgebra_reduce(&gens, &target).unwrap());
    }
}

#[test]
fn generation_holds_in_small_cases() {
    for (n, d, p, extra) in [
        (2, 2, 0, 2),
        (2, 2, 2, 2),
        (2, 2, 3, 2),
        (2, 1, 5, 3),
        (3, 1, 0, 1),
        (3, 1, 2, 1),
    ] {
        let r = generation_check(n, d, p, extra).unwrap();
        assert!(
            r.summary.all_pass,
            "n={n} d={d} p={p}: {:?}",
            r.cases.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert!(r.summary.total > 0);
    }
}

#[test]
fn conjugation_invariance() {
    for (n, d) in [(2, 2), (3, 1)] {
        let gs = generator_set(n, d, 0, CSource::Known).unwrap();
        let r = conjugation_check(&gs, 100, 42).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.samples, 100);
    }
}

#[test]
fn newton_identities() {
    assert!(newton_sigma_check(2, 2, 0).unwrap());
    assert!(newton_sigma_check(3, 2, 5).unwrap());
    assert!(newton_sigma_check(3, 3, 5).unwrap());
    assert!(newton_sigma_check(3, 1, 2).unwrap());
    assert!(newton_sigma_check(2, 2, 2).is_err());
    assert!(newton_sigma_check(3, 3, 3).is_err());
}
