//! Words of the free semigroup, multidegrees, letter-power vectors and the
//! two partial orders on words.
//!
//! Letters are 1-based indices. Text syntax: factors `x<k>` with optional
//! `^<e>`, joined by `.`, e.g. `x1^2.x2.x1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u8;

/// A nonempty word over the letters `1..=255`.
///
/// `Ord` is lexicographic on the letter sequence; it is the enumeration
/// order of [`enumerate_words`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if letters.contains(&0) {
            return Err(Error::InvalidWord("letter index 0".into()));
        }
        Ok(Word(letters))
    }

    /// Caller guarantees a nonempty sequence of positive letters.
    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(!letters.is_empty() && !letters.contains(&0));
        Word(letters)
    }

    pub fn letter(k: Letter) -> Self {
        assert!(k > 0, "letters are 1-based");
        Word(vec![k])
    }

    /// `x_k^e`
    pub fn power(k: Letter, e: usize) -> Self {
        assert!(k > 0 && e > 0);
        Word(vec![k; e])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_letter(&self) -> Letter {
        *self.0.iter().max().expect("nonempty")
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: usize) -> Word {
        assert!(e > 0);
        Word(self.0.repeat(e))
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Number of occurrences of each of the letters `1..=d`.
    pub fn multidegree(&self, d: usize) -> MultiDegree {
        let d = d.max(self.max_letter() as usize);
        let mut deg = vec![0u32; d];
        for &l in &self.0 {
            deg[l as usize - 1] += 1;
        }
        MultiDegree(deg)
    }

    pub fn degree_in(&self, k: Letter) -> u32 {
        self.0.iter().filter(|&&l| l == k).count() as u32
    }

    /// Lengths of the maximal runs of `k`, in order of occurrence.
    pub fn x_power(&self, k: Letter) -> PowerVector {
        x_power_of(&self.0, k)
    }

    /// Applies a letter relabelling `l -> map[l - 1]`.
    pub fn relabel(&self, map: &[Letter]) -> Word {
        Word(self.0.iter().map(|&l| map[l as usize - 1]).collect())
    }

    /// `true` when neither the first nor the last letter is `x`.
    pub fn avoids_at_ends(&self, x: Letter) -> bool {
        self.0[0] != x && self.0[self.0.len() - 1] != x
    }
}

pub(crate) fn x_power_of(letters: &[Letter], k: Letter) -> PowerVector {
    let mut runs = Vec::new();
    let mut cur = 0u32;
    for &l in letters {
        if l == k {
            cur += 1;
        } else if cur > 0 {
            runs.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        runs.push(cur);
    }
    PowerVector(runs)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Prints a letter sequence in run-length form; the empty sequence is `1`.
pub(crate) fn write_letters(f: &mut impl fmt::Write, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    let mut i = 0;
    let mut first = true;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        if !first {
            f.write_char('.')?;
        }
        first = false;
        if j - i == 1 {
            write!(f, "x{l}")?;
        } else {
            write!(f, "x{l}^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut p = crate::parse::Cursor::new(s);
        let w = p.word()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input after word"));
        }
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-letter degrees `(deg_{x_1}, ..., deg_{x_d})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn new(v: Vec<u32>) -> Self {
        MultiDegree(v)
    }

    pub fn zero(d: usize) -> Self {
        MultiDegree(vec![0; d])
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Entries in descending order (the canonical representative under
    /// letter permutations).
    pub fn sorted_desc(&self) -> MultiDegree {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        MultiDegree(v)
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Permutation `perm` with `sorted[i] = self[perm[i]]`, stable.
    pub fn sorting_permutation(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.0.len()).collect();
        idx.sort_by(|&a, &b| self.0[b].cmp(&self.0[a]));
        idx
    }

    /// `self - e_k` for a 1-based letter `k`, if that entry is positive.
    pub fn minus_letter(&self, k: Letter) -> Option<MultiDegree> {
        let i = k as usize - 1;
        if i >= self.0.len() || self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(MultiDegree(v))
    }

    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let d = self.d().max(other.d());
        let mut v = Vec::with_capacity(d);
        for i in 0..d {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            v.push(a.checked_sub(b)?);
        }
        Some(MultiDegree(v))
    }

    pub fn scaled(&self, t: u32) -> MultiDegree {
        MultiDegree(self.0.iter().map(|e| e * t).collect())
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        let d = self.d().max(other.d());
        MultiDegree(
            (0..d)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    /// Pads with zeros (or trims trailing zeros) to `d` letters.
    pub fn with_d(&self, d: usize) -> MultiDegree {
        let mut v = self.0.clone();
        if v.len() > d {
            assert!(
                v[d..].iter().all(|&e| e == 0),
                "cannot drop nonzero letters"
            );
        }
        v.resize(d, 0);
        MultiDegree(v)
    }

    /// Number of distinct words of this multidegree.
    pub fn word_count(&self) -> u128 {
        multinomial(&self.0)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `|v|! / prod v_i!`, saturating at `u128::MAX`.
pub fn multinomial(v: &[u32]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in v {
        for j in 1..=k as u128 {
            n += 1;
            // acc * n / j stays integral at every step
            acc = match acc.checked_mul(n) {
                Some(x) => x / j,
                None => return u128::MAX,
            };
        }
    }
    acc
}

/// Run lengths of one letter, `pwr_x(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerVector(pub Vec<u32>);

impl PowerVector {
    pub fn new(v: Vec<u32>) -> Self {
        PowerVector(v)
    }

    pub fn empty() -> Self {
        PowerVector(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `#alpha`
    pub fn count(&self) -> usize {
        self.0.len()
    }

    /// `|alpha|`
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `alpha^ord`: entries sorted in descending order.
    pub fn sorted(&self) -> PowerVector {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        PowerVector(v)
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Order-preserving (not necessarily contiguous) subsequence test.
    pub fn is_subvector_of(&self, other: &PowerVector) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|a| it.any(|b| b == a))
    }
}

impl fmt::Display for PowerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Order on descending-sorted power vectors: fewer entries is greater; for
/// equal lengths the lexicographically larger vector is greater. The empty
/// vector is the maximum.
pub fn compare_power(a: &PowerVector, b: &PowerVector) -> Result<Ordering> {
    if !a.is_sorted() {
        return Err(Error::UnsortedPowerVector(a.0.clone()));
    }
    if !b.is_sorted() {
        return Err(Error::UnsortedPowerVector(b.0.clone()));
    }
    Ok(compare_sorted_unchecked(&a.0, &b.0))
}

pub(crate) fn compare_sorted_unchecked(a: &[u32], b: &[u32]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

/// Outcome of comparing two words under a partial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Greater,
    Less,
    /// Equal profile under the order (`pw_equivalent` for the power order,
    /// `profile_equivalent` for the run-count order).
    Equivalent,
    Incomparable,
}

/// Which partial order on words: comparing sorted power vectors, or only
/// their lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialOrderKind {
    Gtr,
    Succ,
}

impl FromStr for PartialOrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gtr" => Ok(PartialOrderKind::Gtr),
            "succ" => Ok(PartialOrderKind::Succ),
            _ => Err(Error::InvalidArgument(format!("unknown order {s:?}"))),
        }
    }
}

fn letter_universe(a: &[Letter], b: &[Letter]) -> Letter {
    a.iter().chain(b).copied().max().unwrap_or(0)
}

fn combine(per_letter: impl Iterator<Item = Ordering>) -> Comparison {
    let (mut gt, mut lt) = (false, false);
    for o in per_letter {
        match o {
            Ordering::Greater => gt = true,
            Ordering::Less => lt = true,
            Ordering::Equal => {}
        }
    }
    match (gt, lt) {
        (false, false) => Comparison::Equivalent,
        (true, false) => Comparison::Greater,
        (false, true) => Comparison::Less,
        (true, true) => Comparison::Incomparable,
    }
}

/// The partial order `>` on words through sorted letter powers.
pub fn gtr_compare(a: &Word, b: &Word) -> Comparison {
    let d = letter_universe(&a.0, &b.0);
    combine((1..=d).map(|k| {
        let pa = a.x_power(k).sorted();
        let pb = b.x_power(k).sorted();
        compare_sorted_unchecked(&pa.0, &pb.0)
    }))
}

/// The weaker partial order comparing only the number of runs per letter.
pub fn succ_compare(a: &Word, b: &Word) -> Comparison {
    let d = letter_universe(&a.0, &b.0);
    combine((1..=d).map(|k| b.x_power(k).count().cmp(&a.x_power(k).count())))
}

pub fn compare_words(kind: PartialOrderKind, a: &Word, b: &Word) -> Comparison {
    match kind {
        PartialOrderKind::Gtr => gtr_compare(a, b),
        PartialOrderKind::Succ => succ_compare(a, b),
    }
}

/// All words of multidegree `delta` in lexicographic order.
///
/// Fails when the multinomial count exceeds `limit`.
pub fn enumerate_words(delta: &MultiDegree, limit: usize) -> Result<Vec<Word>> {
    if delta.total() == 0 {
        return Err(Error::InvalidArgument(
            "multidegree must have positive total".into(),
        ));
    }
    let count = delta.word_count();
    if count > limit as u128 {
        return Err(Error::TooLarge {
            what: "words in component",
            value: count,
            limit: limit as u128,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut remaining = delta.0.clone();
    let mut cur = Vec::with_capacity(delta.total() as usize);
    fill_words(&mut remaining, &mut cur, delta.total() as usize, &mut out);
    Ok(out)
}

fn fill_words(remaining: &mut [u32], cur: &mut Vec<Letter>, len: usize, out: &mut Vec<Word>) {
    if cur.len() == len {
        out.push(Word(cur.clone()));
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            cur.push(i as Letter + 1);
            fill_words(remaining, cur, len, out);
            cur.pop();
            remaining[i] += 1;
        }
    }
}
