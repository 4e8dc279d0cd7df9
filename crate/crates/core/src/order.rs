//! Total orders on words of a fixed multidegree, used as column orders for
//! row reduction. Columns are eliminated from the lowest word upwards, so
//! the normal form of a polynomial is written in the greatest words.

use std::cmp::{Ordering, Reverse};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[derive(Default)]
pub enum WordOrder {
    /// Fewer runs is greater; then sorted letter powers as in the partial
    /// order `>`; then the unsorted powers lexicographically; then the
    /// letter sequence, lexicographically smaller being lower.
    #[serde(rename = "profile")]
    #[default]
    Profile,
    /// Plain lexicographic order on letter sequences.
    #[serde(rename = "lex")]
    Lex,
}

impl WordOrder {
    pub fn id(&self) -> &'static str {
        match self {
            WordOrder::Profile => "profile",
            WordOrder::Lex => "lex",
        }
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        match self {
            WordOrder::Profile => profile_key(a).cmp(&profile_key(b)),
            WordOrder::Lex => a.letters().cmp(b.letters()),
        }
    }

    /// Sorts ascending: `words[0]` is the lowest.
    pub fn sort(&self, words: &mut [Word]) {
        match self {
            WordOrder::Profile => words.sort_by_cached_key(profile_key),
            WordOrder::Lex => words.sort_by(|a, b| a.letters().cmp(b.letters())),
        }
    }
}


impl fmt::Display for WordOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for WordOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "profile" => Ok(WordOrder::Profile),
            "lex" => Ok(WordOrder::Lex),
            _ => Err(Error::InvalidArgument(format!("unknown word order {s:?}"))),
        }
    }
}

type PowerKey = (Reverse<usize>, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct ProfileKey {
    runs: Reverse<usize>,
    sorted: Vec<PowerKey>,
    unsorted: Vec<Vec<u32>>,
    letters: Vec<u8>,
}

pub(crate) fn profile_key(w: &Word) -> ProfileKey {
    let d = w.max_letter() as usize;
    let mut runs_by_letter: Vec<Vec<u32>> = vec![Vec::new(); d];
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        runs_by_letter[letters[i] as usize - 1].push((j - i) as u32);
        i = j;
    }
    let runs = runs_by_letter.iter().map(Vec::len).sum();
    let sorted = runs_by_letter
        .iter()
        .map(|r| {
            let mut s = r.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            (Reverse(s.len()), s)
        })
        .collect();
    ProfileKey {
        runs: Reverse(runs),
        sorted,
        unsorted: runs_by_letter,
        letters: letters.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{enumerate_words, gtr_compare, succ_compare, Comparison, MultiDegree};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn profile_extends_both_partial_orders() {
        for delta in [vec![3, 2], vec![2, 2, 1], vec![4, 1, 1], vec![3, 3]] {
            let ws = enumerate_words(&MultiDegree(delta), 10_000).unwrap();
            for a in &ws {
                for b in &ws {
                    let o = WordOrder::Profile.compare(a, b);
                    if gtr_compare(a, b) == Comparison::Greater
                        || succ_compare(a, b) == Comparison::Greater
                    {
                        assert_eq!(o, Ordering::Greater, "{a} vs {b}");
                    }
                    assert_eq!(o == Ordering::Equal, a == b);
                }
            }
        }
    }

    #[test]
    fn examples() {
        let o = WordOrder::Profile;
        assert_eq!(o.compare(&w("x1^4"), &w("x1^2.x1^2")), Ordering::Equal);
        assert_eq!(
            o.compare(&w("x1^3.x2"), &w("x1^2.x2.x1")),
            Ordering::Greater
        );
        // unsorted tie break: (2,1) above (1,2)
        assert_eq!(
            o.compare(&w("x1^2.x2.x1"), &w("x1.x2.x1^2")),
            Ordering::Greater
        );
        assert_eq!(
            WordOrder::Lex.compare(&w("x1.x2"), &w("x2.x1")),
            Ordering::Less
        );
        assert_eq!("lex".parse::<WordOrder>().unwrap(), WordOrder::Lex);
        assert!("grevlex".parse::<WordOrder>().is_err());
    }
}
