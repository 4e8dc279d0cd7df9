//! Field-generic component engine with an in-process cache.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::formal_sum::FormalSum;
use crate::linalg::{Echelon, SparseRow};
use crate::order::WordOrder;
use crate::polarization::{argument_tuples, t_theta_counts, WordCache};
use crate::word::{enumerate_words, Letter, MultiDegree, Word};

/// Limits and switches for the component engine.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Largest number of words (columns) in one component.
    pub max_words: usize,
    /// Largest number of candidate rows processed for one component.
    pub max_rows: usize,
    /// Derive components of unsorted multidegrees by relabeling letters.
    pub exploit_symmetry: bool,
    /// Compute the components of one degree in parallel.
    pub parallel: bool,
    pub timeout: Option<Duration>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_words: 200_000,
            max_rows: 50_000_000,
            exploit_symmetry: true,
            parallel: true,
            timeout: None,
        }
    }
}

pub(crate) struct Component<F: Field> {
    pub(crate) delta: MultiDegree,
    /// Column order, ascending: the first word is eliminated first.
    pub(crate) words: Vec<Word>,
    pub(crate) index: HashMap<Word, u32>,
    pub(crate) echelon: Echelon<F>,
}

impl<F: Field> Component<F> {
    pub(crate) fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub(crate) fn qdim(&self) -> usize {
        self.words.len() - self.echelon.rank()
    }

    /// Words at non-pivot columns, ascending.
    pub(crate) fn free_words(&self) -> Vec<Word> {
        (0..self.words.len() as u32)
            .filter(|&c| !self.echelon.is_pivot(c))
            .map(|c| self.words[c as usize].clone())
            .collect()
    }

    pub(crate) fn column(&self, w: &Word) -> Option<u32> {
        self.index.get(w).copied()
    }
}

pub(crate) struct Engine<F: Field> {
    pub(crate) n: u32,
    pub(crate) field: F,
    pub(crate) config: EngineConfig,
    started: Instant,
    cache: RwLock<HashMap<(MultiDegree, WordOrder), Arc<Component<F>>>>,
}

impl<F: Field> Engine<F> {
    pub(crate) fn new(n: u32, field: F, config: EngineConfig) -> Self {
        Engine {
            n,
            field,
            config,
            started: Instant::now(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn check_time(&self) -> Result<()> {
        if let Some(t) = self.config.timeout {
            if self.started.elapsed() > t {
                return Err(Error::Timeout(t.as_secs()));
            }
        }
        Ok(())
    }

    pub(crate) fn cached_components(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    pub(crate) fn component(
        &self,
        delta: &MultiDegree,
        order: WordOrder,
    ) -> Result<Arc<Component<F>>> {
        let key = (delta.clone(), order);
        if let Some(c) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(c.clone());
        }
        self.check_time()?;
        let comp = if self.config.exploit_symmetry
            && (!delta.is_sorted_desc() || order != WordOrder::Profile)
        {
            self.relabeled(delta, order)?
        } else {
            self.direct(delta, order)?
        };
        let comp = Arc::new(comp);
        self.cache
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| comp.clone());
        Ok(comp)
    }

    fn empty_component(&self, delta: &MultiDegree, order: WordOrder) -> Result<Component<F>> {
        let mut words = enumerate_words(delta, self.config.max_words)?;
        order.sort(&mut words);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let echelon = Echelon::new(self.field.clone(), words.len());
        Ok(Component {
            delta: delta.clone(),
            words,
            index,
            echelon,
        })
    }

    fn relabeled(&self, delta: &MultiDegree, order: WordOrder) -> Result<Component<F>> {
        let sorted = delta.sorted_desc();
        let perm = delta.sorting_permutation();
        // letter i+1 of the sorted component becomes letter perm[i]+1 here
        let map: Vec<Letter> = perm.iter().map(|&j| j as Letter + 1).collect();
        let source = self.component(&sorted, WordOrder::Profile)?;
        let mut comp = self.empty_component(delta, order)?;
        let mut scratch = comp.echelon.scratch();
        for row in source.echelon.rows() {
            let mapped: SparseRow<F::Elem> = row
                .iter()
                .map(|(c, v)| {
                    (
                        comp.index[&source.words[*c as usize].relabel(&map)],
                        v.clone(),
                    )
                })
                .collect::<Vec<_>>();
            let mut mapped = mapped;
            mapped.sort_unstable_by_key(|e| e.0);
            comp.echelon.insert_with(&mapped, &mut scratch);
        }
        Ok(comp)
    }

    fn direct(&self, delta: &MultiDegree, order: WordOrder) -> Result<Component<F>> {
        let mut comp = self.empty_component(delta, order)?;
        if delta.total() < self.n {
            return Ok(comp);
        }
        let mut scratch = comp.echelon.scratch();
        let mut processed = 0usize;
        let limit = self.config.max_rows;
        let guard = |processed: usize| -> Result<()> {
            if processed > limit {
                Err(Error::TooLarge {
                    what: "candidate rows",
                    value: processed as u128,
                    limit: limit as u128,
                })
            } else {
                Ok(())
            }
        };

        // bordered instances: x_k * I(delta - e_k) and I(delta - e_k) * x_k
        for k in 1..=delta.d() as Letter {
            if comp.echelon.is_full() {
                break;
            }
            let Some(sub) = delta.minus_letter(k) else {
                continue;
            };
            if sub.total() < self.n {
                continue;
            }
            let source = self.component(&sub, WordOrder::Profile)?;
            for row in source.echelon.rows() {
                for left in [true, false] {
                    let mut r: SparseRow<F::Elem> = row
                        .iter()
                        .map(|(c, v)| {
                            let w = &source.words[*c as usize];
                            let x = Word::letter(k);
                            let bordered = if left { x.concat(w) } else { w.concat(&x) };
                            (comp.index[&bordered], v.clone())
                        })
                        .collect();
                    r.sort_unstable_by_key(|e| e.0);
                    comp.echelon.insert_with(&r, &mut scratch);
                    processed += 1;
                }
                if comp.echelon.is_full() {
                    break;
                }
            }
            guard(processed)?;
            self.check_time()?;
        }

        // unbordered instances T_theta(a_1, ..., a_r) with distinct arguments
        if !comp.echelon.is_full() {
            let mut words = WordCache::new(self.config.max_words);
            let field = self.field.clone();
            let mut err = None;
            argument_tuples(self.n, delta, true, &mut words, &mut |theta, args| {
                if comp.echelon.is_full() {
                    return Ok(());
                }
                let counts = t_theta_counts(theta, args);
                let mut r: SparseRow<F::Elem> = counts
                    .into_iter()
                    .map(|(w, c)| (comp.index[&w], field.from_i64(c as i64)))
                    .filter(|(_, v)| !field.is_zero(v))
                    .collect();
                r.sort_unstable_by_key(|e| e.0);
                comp.echelon.insert_with(&r, &mut scratch);
                processed += 1;
                if processed.is_multiple_of(4096) {
                    if let Err(e) = guard(processed).and_then(|_| self.check_time()) {
                        err = Some(e.clone());
                        return Err(e);
                    }
                }
                Ok(())
            })?;
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(comp)
    }

    /// Components of all sorted multidegrees of total degree `c` over `d`
    /// letters, in a fixed order.
    pub(crate) fn level(&self, d: usize, c: u32) -> Result<Vec<Arc<Component<F>>>> {
        let mdegs = sorted_multidegrees(c, d);
        if self.config.parallel {
            mdegs
                .par_iter()
                .map(|m| self.component(m, WordOrder::Profile))
                .collect()
        } else {
            mdegs
                .iter()
                .map(|m| self.component(m, WordOrder::Profile))
                .collect()
        }
    }

    pub(crate) fn row_of(&self, comp: &Component<F>, f: &FormalSum) -> Result<SparseRow<F::Elem>> {
        let mut r = Vec::with_capacity(f.len());
        for (w, c) in f.terms() {
            let col = comp.column(w).ok_or_else(|| {
                Error::InvalidArgument(format!("word {w} is not of multidegree {}", comp.delta))
            })?;
            r.push((col, self.field.from_coeff(c)?));
        }
        r.sort_unstable_by_key(|e| e.0);
        Ok(r)
    }

    pub(crate) fn sum_of(&self, words: &[Word], row: &[(u32, F::Elem)]) -> FormalSum {
        let tag = self.field.tag();
        FormalSum::from_terms(
            tag,
            row.iter()
                .map(|(c, v)| (self.field.to_coeff(v), words[*c as usize].clone())),
        )
        .expect("field element converts back")
    }
}

/// Multidegrees `(m_1 >= ... >= m_d >= 0)` with total `c`, in
/// lexicographically descending order.
pub(crate) fn sorted_multidegrees(c: u32, d: usize) -> Vec<MultiDegree> {
    fn go(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
        if slots == 0 {
            if rem == 0 {
                out.push(MultiDegree(cur.clone()));
            }
            return;
        }
        let hi = max.min(rem);
        for k in (0..=hi).rev() {
            // remaining slots cannot exceed k each
            if (slots as u32 - 1) * k < rem - k {
                break;
            }
            cur.push(k);
            go(rem - k, k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    go(c, c, d, &mut Vec::with_capacity(d), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_multidegree_listing() {
        let got: Vec<Vec<u32>> = sorted_multidegrees(4, 2).into_iter().map(|m| m.0).collect();
        assert_eq!(got, vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
        let got: Vec<Vec<u32>> = sorted_multidegrees(3, 3).into_iter().map(|m| m.0).collect();
        assert_eq!(got, vec![vec![3, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]);
        assert_eq!(sorted_multidegrees(2, 1).len(), 1);
    }
}
