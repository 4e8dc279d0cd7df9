#![allow(dead_code)]

use nilalg::field::{Coeff, FieldTag};
use nilalg::word::enumerate_words;
use nilalg::{FormalSum, MultiDegree, NilIdeal, Word, WordOrder};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn fs(field: FieldTag, s: &str) -> FormalSum {
    FormalSum::parse(field, s).unwrap()
}

pub fn md(v: &[u32]) -> MultiDegree {
    MultiDegree::new(v.to_vec())
}

pub fn coeff(v: i64) -> Coeff {
    Coeff::from_integer(v.into())
}

pub fn random_coeff(rng: &mut ChaCha8Rng) -> Coeff {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-5i64..=5);
    }
    coeff(c)
}

/// A random combination of up to `terms` words of multidegree `delta`.
pub fn random_sum(
    rng: &mut ChaCha8Rng,
    field: FieldTag,
    delta: &MultiDegree,
    terms: usize,
) -> FormalSum {
    let words = enumerate_words(delta, 100_000).unwrap();
    let mut f = FormalSum::zero(field);
    for _ in 0..terms {
        let word = words[rng.gen_range(0..words.len())].clone();
        f.add_term(word, field.normalize(&random_coeff(rng)).unwrap());
    }
    f
}

/// A random element of the ideal component of multidegree `delta`.
pub fn random_ideal_element(
    rng: &mut ChaCha8Rng,
    ideal: &NilIdeal,
    delta: &MultiDegree,
) -> FormalSum {
    let basis = ideal.component_basis(delta, WordOrder::Profile).unwrap();
    let field = ideal.field();
    let mut f = FormalSum::zero(field);
    for i in 0..basis.rows.len() {
        if rng.gen_bool(0.5) {
            let c = field.normalize(&random_coeff(rng)).unwrap();
            f = f.add(&basis.row_sum(i).scale(&c));
        }
    }
    f
}

/// Every multidegree with `d` entries and total `total`.
pub fn multidegrees(d: usize, total: u32) -> Vec<MultiDegree> {
    fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
        if cur.len() + 1 == d {
            cur.push(left);
            out.push(MultiDegree::new(cur.clone()));
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(d, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, total, &mut Vec::new(), &mut out);
    out
}

/// Rank of a dense matrix over `F_p` by plain Gaussian elimination.
pub fn dense_rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..ncols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}
