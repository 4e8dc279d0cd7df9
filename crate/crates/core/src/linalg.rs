//! Sparse reduced row echelon form over an exact field.
//!
//! Rows are sorted `(column, value)` lists. The pivot of a row is its
//! lowest column and carries coefficient one; every other stored row is
//! zero at that column. Reducing a vector against the form therefore takes
//! one pass over its support.

use crate::field::Field;

pub(crate) type SparseRow<E> = Vec<(u32, E)>;

#[derive(Clone, Debug)]
pub(crate) struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseRow<F::Elem>>,
    pivot_row: Vec<Option<u32>>,
}

/// Dense accumulator reused across reductions.
pub(crate) struct Scratch<E> {
    dense: Vec<Option<E>>,
    touched: Vec<u32>,
}

impl<E: Clone> Scratch<E> {
    pub(crate) fn new(ncols: usize) -> Self {
        Scratch {
            dense: vec![None; ncols],
            touched: Vec::new(),
        }
    }
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub(crate) fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    pub(crate) fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize].is_some()
    }

    pub(crate) fn scratch(&self) -> Scratch<F::Elem> {
        Scratch::new(self.ncols)
    }

    /// Normal form of `row` modulo the row space: the unique vector
    /// congruent to `row` that vanishes on every pivot column.
    pub(crate) fn reduce_with(
        &self,
        row: &[(u32, F::Elem)],
        scratch: &mut Scratch<F::Elem>,
    ) -> SparseRow<F::Elem> {
        let f = &self.field;
        for (c, v) in row {
            if f.is_zero(v) {
                continue;
            }
            match self.pivot_row[*c as usize] {
                Some(j) => {
                    for (c2, w) in &self.rows[j as usize][1..] {
                        let slot = &mut scratch.dense[*c2 as usize];
                        match slot {
                            Some(acc) => f.sub_mul_assign(acc, v, w),
                            None => {
                                *slot = Some(f.neg(&f.mul(v, w)));
                                scratch.touched.push(*c2);
                            }
                        }
                    }
                }
                None => {
                    let slot = &mut scratch.dense[*c as usize];
                    match slot {
                        Some(acc) => *acc = f.add(acc, v),
                        None => {
                            *slot = Some(v.clone());
                            scratch.touched.push(*c);
                        }
                    }
                }
            }
        }
        scratch.touched.sort_unstable();
        let mut out = Vec::new();
        for &c in &scratch.touched {
            if let Some(v) = scratch.dense[c as usize].take() {
                if !f.is_zero(&v) {
                    out.push((c, v));
                }
            }
        }
        scratch.touched.clear();
        out
    }

    pub(crate) fn reduce(&self, row: &[(u32, F::Elem)]) -> SparseRow<F::Elem> {
        let mut s = self.scratch();
        self.reduce_with(row, &mut s)
    }

    /// Adds `row` to the row space; returns whether the rank grew.
    pub(crate) fn insert_with(
        &mut self,
        row: &[(u32, F::Elem)],
        scratch: &mut Scratch<F::Elem>,
    ) -> bool {
        let mut r = self.reduce_with(row, scratch);
        if r.is_empty() {
            return false;
        }
        let f = self.field.clone();
        let inv = f.inv(&r[0].1).expect("nonzero leading coefficient");
        for (_, v) in r.iter_mut() {
            *v = f.mul(v, &inv);
        }
        let c0 = r[0].0;
        for existing in self.rows.iter_mut() {
            if let Ok(pos) = existing.binary_search_by_key(&c0, |e| e.0) {
                let a = existing[pos].1.clone();
                *existing = sub_scaled(&f, existing, &a, &r);
            }
        }
        self.pivot_row[c0 as usize] = Some(self.rows.len() as u32);
        self.rows.push(r);
        true
    }

    #[cfg(test)]
    pub(crate) fn insert(&mut self, row: &[(u32, F::Elem)]) -> bool {
        let mut s = self.scratch();
        self.insert_with(row, &mut s)
    }
}

/// `a - s * b` for sorted sparse rows.
fn sub_scaled<F: Field>(
    f: &F,
    a: &[(u32, F::Elem)],
    s: &F::Elem,
    b: &[(u32, F::Elem)],
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.neg(&f.mul(s, &b[j].1))));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            f.sub_mul_assign(&mut v, s, &b[j].1);
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use proptest::prelude::*;

    fn dense_rank_mod_p(p: u64, rows: &[Vec<u64>]) -> usize {
        // textbook Gaussian elimination, independent of the sparse code
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v % p).collect())
            .collect();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let s = m[i][c] * inv % p;
                    for k in 0..ncols {
                        m[i][k] = (m[i][k] + p * p - s * m[rank][k] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn sparse(r: &[u64]) -> Vec<(u32, u64)> {
        r.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, v)| (i as u32, *v))
            .collect()
    }

    #[test]
    fn small_rational_example() {
        let f = RationalField;
        let mut e = Echelon::new(f, 3);
        let q = |v: i64| f.from_i64(v);
        assert!(e.insert(&[(0, q(1)), (1, q(1))]));
        assert!(e.insert(&[(1, q(1)), (2, q(1))]));
        assert!(!e.insert(&[(0, q(1)), (2, q(-1))]));
        assert_eq!(e.rank(), 2);
        // x0 + x1 = 0, x1 + x2 = 0 means x0 = x2 and x1 = -x2
        let r = e.reduce(&[(0, q(2))]);
        assert_eq!(r, vec![(2, q(2))]);
        let r = e.reduce(&[(1, q(1))]);
        assert_eq!(r, vec![(2, q(-1))]);
    }

    proptest! {
        #[test]
        fn rank_matches_dense_elimination(
            rows in prop::collection::vec(prop::collection::vec(0u64..7, 6), 0..9)
        ) {
            let f = PrimeField::new(7);
            let mut e = Echelon::new(f, 6);
            for r in &rows {
                e.insert(&sparse(r));
            }
            prop_assert_eq!(e.rank(), dense_rank_mod_p(7, &rows));
            for r in e.rows() {
                prop_assert_eq!(r[0].1, 1);
                for other in e.rows() {
                    if !std::ptr::eq(r, other) {
                        prop_assert!(other.iter().all(|(c, _)| *c != r[0].0));
                    }
                }
            }
        }

        #[test]
        fn members_reduce_to_zero(
            rows in prop::collection::vec(prop::collection::vec(0u64..5, 5), 1..6),
            mix in prop::collection::vec(0u64..5, 6)
        ) {
            let f = PrimeField::new(5);
            let mut e = Echelon::new(f, 5);
            for r in &rows {
                e.insert(&sparse(r));
            }
            let mut comb = vec![0u64; 5];
            for (r, m) in rows.iter().zip(&mix) {
                for k in 0..5 {
                    comb[k] = (comb[k] + r[k] * m) % 5;
                }
            }
            prop_assert!(e.reduce(&sparse(&comb)).is_empty());
        }
    }
}
