//! Canonical forms for `n = 4`: the admissible run profiles of a word,
//! reduction of any element onto canonical words, and searches for long
//! nonzero words.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::nil_ideal::{sorted_multidegrees, EngineConfig, NilIdeal};
use crate::order::WordOrder;
use crate::word::{Letter, MultiDegree, PowerVector, Word};

/// The eleven run vectors a canonical word may show for a single letter.
pub const ALLOWED: [&[u32]; 11] = [
    &[],
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[2],
    &[2, 1],
    &[3],
    &[3, 1],
    &[1, 3],
    &[3, 2],
    &[3, 2, 1],
];

/// Membership in [`ALLOWED`]; the order of entries matters.
pub fn allowed_power_vector(v: &PowerVector) -> bool {
    ALLOWED.contains(&v.entries())
}

fn has_three(v: &PowerVector) -> bool {
    v.entries().contains(&3)
}

fn has_three_two(v: &PowerVector) -> bool {
    PowerVector::new(vec![3, 2]).is_subvector_of(v)
}

/// `false` when one of the forbidden cross-letter patterns occurs: `(3,2,1)`
/// for one letter with a 3-run in another; 3-runs in three letters; or
/// `(3,2)` inside the runs of two letters.
pub fn profile_cross_ok(profile: &[PowerVector]) -> bool {
    let threes = profile.iter().filter(|v| has_three(v)).count();
    if threes >= 3 {
        return false;
    }
    let full = profile.iter().filter(|v| v.entries() == [3, 2, 1]).count();
    if full >= 1 && threes >= 2 {
        return false;
    }
    profile.iter().filter(|v| has_three_two(v)).count() < 2
}

pub fn word_profile(w: &Word, d: Letter) -> Vec<PowerVector> {
    (1..=d).map(|k| w.x_power(k)).collect()
}

pub fn cross_letter_ok(w: &Word) -> bool {
    profile_cross_ok(&word_profile(w, w.max_letter()))
}

/// Every letter's runs are admissible and no cross-letter pattern occurs.
pub fn is_canonical(w: &Word) -> bool {
    let prof = word_profile(w, w.max_letter());
    prof.iter().all(allowed_power_vector) && profile_cross_ok(&prof)
}

/// Reduces elements of the `n = 4` nil-algebra onto canonical words.
pub struct Canonicalizer {
    ideal: NilIdeal,
}

impl Canonicalizer {
    /// Characteristic 2 is excluded.
    pub fn new(p: u64) -> Result<Self> {
        Self::with_config(p, EngineConfig::default())
    }

    pub fn with_config(p: u64, config: EngineConfig) -> Result<Self> {
        if p == 2 {
            return Err(Error::Hypothesis(
                "canonical forms for n = 4 need p != 2".into(),
            ));
        }
        Ok(Canonicalizer {
            ideal: NilIdeal::with_config(4, p, config)?,
        })
    }

    pub fn ideal(&self) -> &NilIdeal {
        &self.ideal
    }

    /// The normal form of `f`; fails with a defect error if some surviving
    /// term is not canonical.
    pub fn canonicalize(&self, f: &FormalSum) -> Result<FormalSum> {
        let g = self.ideal.reduce(f, WordOrder::Profile)?;
        if let Some(w) = g.words().find(|w| !is_canonical(w)) {
            return Err(Error::CanonicalDefect(w.to_string()));
        }
        Ok(g)
    }
}

pub fn canonicalize(p: u64, f: &FormalSum) -> Result<FormalSum> {
    Canonicalizer::new(p)?.canonicalize(f)
}

/// The longest word with degree in `lo..=hi` over `d` letters that is
/// nonzero for `n = 4`; canonical words are tried first.
pub fn witness_search(ideal: &NilIdeal, d: usize, lo: u32, hi: u32) -> Result<Option<Word>> {
    if ideal.n() != 4 {
        return Err(Error::InvalidArgument("witness search is for n = 4".into()));
    }
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "bad degree range {lo}..={hi}"
        )));
    }
    for c in (lo..=hi).rev() {
        let mdegs = sorted_multidegrees(c, d);
        let found: Vec<Option<Word>> = mdegs
            .par_iter()
            .map(|delta| -> Result<Option<Word>> {
                let free = ideal.free_words(delta, WordOrder::Profile)?;
                Ok(free
                    .iter()
                    .rev()
                    .find(|w| is_canonical(w))
                    .or(free.last())
                    .cloned())
            })
            .collect::<Result<_>>()?;
        if let Some(w) = found.into_iter().flatten().next() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Degree statistics over all canonical profiles on `d` letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCap {
    pub d: usize,
    pub profiles: usize,
    pub max_degree: u32,
    /// Maximum degree keyed by the number of letters with a 3-run.
    pub max_by_threes: BTreeMap<usize, u32>,
}

/// Enumerates canonical profiles up to permutation of letters (the
/// conditions are symmetric in the letters, so each multiset of run
/// vectors is checked once).
pub fn degree_cap(d: usize) -> DegreeCap {
    let vectors: Vec<PowerVector> = ALLOWED
        .iter()
        .map(|v| PowerVector::new(v.to_vec()))
        .collect();
    let mut idx = vec![0usize; d];
    let mut cap = DegreeCap {
        d,
        profiles: 0,
        max_degree: 0,
        max_by_threes: BTreeMap::new(),
    };
    loop {
        let prof: Vec<PowerVector> = idx.iter().map(|&i| vectors[i].clone()).collect();
        if profile_cross_ok(&prof) {
            cap.profiles += 1;
            let deg: u32 = prof.iter().map(PowerVector::total).sum();
            let r = prof.iter().filter(|v| has_three(v)).count();
            cap.max_degree = cap.max_degree.max(deg);
            let e = cap.max_by_threes.entry(r).or_insert(0);
            *e = (*e).max(deg);
        }
        // next non-decreasing index tuple
        let mut i = d;
        loop {
            if i == 0 {
                return cap;
            }
            i -= 1;
            if idx[i] + 1 < vectors.len() {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[i];
                }
                break;
            }
        }
    }
}

/// Canonical words of a multidegree, for tests and diagnostics.
pub fn canonical_words(delta: &MultiDegree, limit: usize) -> Result<Vec<Word>> {
    Ok(crate::word::enumerate_words(delta, limit)?
        .into_iter()
        .filter(is_canonical)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTag;

    fn pv(v: &[u32]) -> PowerVector {
        PowerVector::new(v.to_vec())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fs(s: &str) -> FormalSum {
        FormalSum::parse(FieldTag::Rational, s).unwrap()
    }

    #[test]
    fn allowed_examples() {
        assert!(allowed_power_vector(&pv(&[3, 2, 1])));
        assert!(allowed_power_vector(&pv(&[1, 3])));
        assert!(allowed_power_vector(&pv(&[])));
        assert!(!allowed_power_vector(&pv(&[2, 2])));
        assert!(!allowed_power_vector(&pv(&[1, 1, 1, 1])));
        assert!(!allowed_power_vector(&pv(&[1, 2])));
    }

    #[test]
    fn cross_examples() {
        assert!(!profile_cross_ok(&[pv(&[3, 2, 1]), pv(&[3, 1])]));
        assert!(!profile_cross_ok(&[pv(&[3, 2]), pv(&[3, 2])]));
        assert!(!profile_cross_ok(&[pv(&[3]), pv(&[3]), pv(&[1, 3])]));
        assert!(profile_cross_ok(&[pv(&[3, 2]), pv(&[3, 1])]));
        assert!(cross_letter_ok(&w("x1^3.x2^3")));
        assert!(!cross_letter_ok(&w("x1^3.x2^2.x1^2.x2.x1.x2^3")));
    }

    #[test]
    fn canonicalize_examples() {
        let c = Canonicalizer::new(0).unwrap();
        assert_eq!(
            c.canonicalize(&fs("x1^2.x2.x1^2")).unwrap(),
            fs("-x1^3.x2.x1 - x1.x2.x1^3")
        );
        assert!(c.canonicalize(&fs("x1^3.x2.x1^3")).unwrap().is_zero());
        // x a x b x c x is only zero modulo words with fewer runs of x
        let src = w("x1.x2.x1.x3.x1.x4.x1");
        let g = c
            .canonicalize(&FormalSum::from_word(FieldTag::Rational, src.clone()))
            .unwrap();
        assert!(!g.is_zero());
        for t in g.words() {
            assert_eq!(
                crate::word::succ_compare(t, &src),
                crate::word::Comparison::Greater,
                "{t}"
            );
        }
        assert!(Canonicalizer::new(2).is_err());
    }

    #[test]
    fn degree_cap_small() {
        let cap = degree_cap(2);
        assert_eq!(cap.max_degree, 9);
        assert_eq!(cap.max_by_threes[&2], 9);
        assert_eq!(degree_cap(1).max_degree, 6);
    }

    #[test]
    fn witness_small() {
        let ideal = NilIdeal::new(4, 0).unwrap();
        let wit = witness_search(&ideal, 2, 6, 10).unwrap().unwrap();
        assert_eq!(wit.len(), 9);
        assert!(is_canonical(&wit));
    }
}
