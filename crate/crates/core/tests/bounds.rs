use nilalg::bounds::{
    best_bounds, closed_form_bounds, comparator_gap_log10, lower_bounds, min_comparator_gap,
    recursive_bound, BoundFlags, Direction,
};
use nilalg::nil_ideal::{nilpotency_degree, Degree};
use num_bigint::BigInt;

const PRIMES: [u64; 6] = [0, 2, 3, 5, 7, 1_000_003];

#[test]
fn lower_never_exceeds_upper() {
    for n in 1..=40 {
        for d in 1..=6 {
            for p in PRIMES {
                let s = best_bounds(n, d, p, BoundFlags::default()).unwrap();
                let lo = s.best_lower.integer_bound.clone().unwrap();
                match &s.best_upper.integer_bound {
                    Some(hi) => assert!(lo <= *hi, "n={n} d={d} p={p}: {lo} > {hi}"),
                    None => {
                        assert!(s.best_lower.effective_log10() <= s.best_upper.effective_log10())
                    }
                }
                for b in &s.all {
                    assert!(b.value_log10.is_finite());
                    assert!(!b.conditional);
                }
            }
        }
    }
}

#[test]
fn recursion_is_monotone() {
    for p in [0u64, 1_000_003] {
        for d in 1..=6u64 {
            let mut prev = BigInt::from(0);
            for n in 2..=60 {
                let v = recursive_bound(n, d, p).unwrap();
                assert!(v >= prev, "n={n} d={d} p={p}");
                prev = v;
            }
        }
        for n in 2..=60 {
            let mut prev = BigInt::from(0);
            for d in 1..=8 {
                let v = recursive_bound(n, d, p).unwrap();
                assert!(v >= prev, "n={n} d={d} p={p}");
                prev = v;
            }
        }
    }
}

#[test]
fn n4_characteristic_three_comparisons() {
    for d in 1..=1000u64 {
        let bd = BigInt::from(d);
        let lhs = BigInt::from(3) * &bd + 4;
        let mid = BigInt::from(8) * &bd + 1;
        assert!(lhs <= mid);
        // 8d + 1 < (2^11 / 3) d^4
        assert!(BigInt::from(3) * &mid < BigInt::from(2048) * bd.pow(4));
    }
}

#[test]
fn exact_values_sit_inside_the_bounds() {
    for (n, d, p) in [
        (2, 2, 0),
        (2, 3, 2),
        (3, 2, 0),
        (3, 2, 3),
        (3, 3, 2),
        (4, 2, 0),
        (4, 2, 3),
    ] {
        let Degree::Exact(c) = nilpotency_degree(n, d, p, 14).unwrap().degree else {
            panic!("no degree")
        };
        let c = BigInt::from(c);
        for b in closed_form_bounds(n, d as u64, p, BoundFlags::default()).unwrap() {
            if let Some(v) = &b.integer_bound {
                assert!(
                    b.direction != Direction::Upper || c <= *v,
                    "{} for {n},{d},{p}",
                    b.formula_id
                );
            }
        }
        for b in lower_bounds(n, d as u64, p).unwrap() {
            if let Some(v) = &b.integer_bound {
                assert!(c >= *v, "{} for {n},{d},{p}", b.formula_id);
            }
        }
    }
}

#[test]
fn comparator_gap() {
    let (argmin, gap) = min_comparator_gap(4, 2000);
    assert_eq!(gap, comparator_gap_log10(argmin));
    assert!(gap >= 20.0);
    assert!((4..=2000).all(|n| comparator_gap_log10(n) >= gap));
}
