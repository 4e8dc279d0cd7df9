//! Finite linear combinations of words with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldTag};
use crate::word::{write_letters, Letter, MultiDegree, Word};

/// Sparse map `Word -> nonzero coefficient` over a fixed field.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSum {
    field: FieldTag,
    terms: BTreeMap<Word, Coeff>,
}

impl FormalSum {
    pub fn zero(field: FieldTag) -> Self {
        FormalSum {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(field: FieldTag, w: Word) -> Self {
        let mut s = Self::zero(field);
        s.add_term(w, Coeff::one());
        s
    }

    /// Collects `(coefficient, word)` pairs, reducing into the field.
    pub fn from_terms(
        field: FieldTag,
        terms: impl IntoIterator<Item = (Coeff, Word)>,
    ) -> Result<Self> {
        let mut s = Self::zero(field);
        for (c, w) in terms {
            let c = field.normalize(&c)?;
            s.add_term(w, c);
        }
        Ok(s)
    }

    /// Parses the text grammar `expr := term (('+'|'-') term)*`,
    /// `term := [coeff '*'] word`.
    pub fn parse(field: FieldTag, s: &str) -> Result<Self> {
        let terms = crate::parse::Cursor::new(s).sum_terms()?;
        Self::from_terms(field, terms)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Adds `c * w`; `c` must already be canonical for the field.
    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                let s = self.field.add(e, &c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn max_letter(&self) -> Letter {
        self.terms.keys().map(|w| w.max_letter()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut s = self.clone();
        for (w, c) in &other.terms {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> FormalSum {
        self.scale(&Coeff::from_integer((-1).into()))
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> FormalSum {
        let c = self.field.normalize(c).expect("scalar not in field");
        let mut s = Self::zero(self.field);
        for (w, e) in &self.terms {
            s.add_term(w.clone(), self.field.mul(e, &c));
        }
        s
    }

    /// Concatenation product, extended bilinearly.
    pub fn mul(&self, other: &FormalSum) -> FormalSum {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut s = Self::zero(self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                s.add_term(a.concat(b), self.field.mul(ca, cb));
            }
        }
        s
    }

    /// `u * self * v` for possibly empty border words.
    pub fn bordered(&self, u: &[Letter], v: &[Letter]) -> FormalSum {
        let mut s = Self::zero(self.field);
        for (w, c) in &self.terms {
            let mut l = Vec::with_capacity(u.len() + w.len() + v.len());
            l.extend_from_slice(u);
            l.extend_from_slice(w.letters());
            l.extend_from_slice(v);
            s.add_term(Word::from_vec_unchecked(l), c.clone());
        }
        s
    }

    /// Splits into multihomogeneous parts over `d` letters.
    pub fn split_by_multidegree(&self, d: usize) -> BTreeMap<MultiDegree, FormalSum> {
        let mut out: BTreeMap<MultiDegree, FormalSum> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.multidegree(d))
                .or_insert_with(|| FormalSum::zero(self.field))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// The common multidegree of all terms, if there is one.
    pub fn multidegree(&self, d: usize) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|w| w.multidegree(d));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    /// Reads every term from right to left.
    pub fn mirror(&self) -> FormalSum {
        let mut s = Self::zero(self.field);
        for (w, c) in &self.terms {
            s.add_term(w.reversed(), c.clone());
        }
        s
    }

    /// Deletes every occurrence of letter `k`. A term made only of `k`
    /// would become the unit, which is not a word.
    pub fn delete_letter(&self, k: Letter) -> Result<FormalSum> {
        let mut s = Self::zero(self.field);
        for (w, c) in &self.terms {
            let rest: Vec<Letter> = w.letters().iter().copied().filter(|&l| l != k).collect();
            if rest.is_empty() {
                return Err(Error::Hypothesis(format!(
                    "deleting x{k} from {w} leaves the empty word"
                )));
            }
            s.add_term(Word::from_vec_unchecked(rest), c.clone());
        }
        Ok(s)
    }

    /// Changes the field tag, reducing coefficients (rationals to `F_p`).
    pub fn to_field(&self, field: FieldTag) -> Result<FormalSum> {
        Self::from_terms(
            field,
            self.terms.iter().map(|(w, c)| (c.clone(), w.clone())),
        )
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let c = self.field.display_coeff(c);
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_letters(f, w.letters())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSum[{}]({self})", self.field)
    }
}

impl Serialize for FormalSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Deserializes as a rational-coefficient sum; callers re-tag with
/// [`FormalSum::to_field`] when needed.
impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FormalSum::parse(FieldTag::Rational, &s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldTag = FieldTag::Rational;

    fn fs(s: &str) -> FormalSum {
        FormalSum::parse(Q, s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = fs("x1^2.x2 - x3");
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "x1^2.x2 - x3");
        let g = fs("-3/2*x1.x2 + 2*x2.x1 - x1.x2");
        assert_eq!(g.to_string(), "-5/2*x1.x2 + 2*x2.x1");
        assert!(fs("0").is_zero());
        assert!(fs("x1 - x1").is_zero());
        assert!(FormalSum::parse(Q, "2 x1").is_err());
        assert!(FormalSum::parse(Q, "x1 +").is_err());
        assert!(FormalSum::parse(Q, "1/0*x1").is_err());
    }

    #[test]
    fn prime_field_coefficients() {
        let f = FormalSum::parse(FieldTag::Prime(2), "x1.x2 + x1.x2 + x2").unwrap();
        assert_eq!(f.to_string(), "x2");
        let g = FormalSum::parse(FieldTag::Prime(3), "2*x1").unwrap();
        assert_eq!(g.to_string(), "-x1");
        assert!(FormalSum::parse(FieldTag::Prime(3), "1/3*x1").is_err());
    }

    #[test]
    fn mirror_example() {
        let f = fs("x1^2.x2 - x3");
        assert_eq!(f.mirror(), fs("x2.x1^2 - x3"));
        assert_eq!(f.mirror().mirror(), f);
    }

    #[test]
    fn delete_letter_examples() {
        assert_eq!(fs("x1^2.x2.x1").delete_letter(1).unwrap(), fs("x2"));
        assert_eq!(fs("x1.x2 + x2.x1").delete_letter(2).unwrap(), fs("2*x1"));
        let f2 = FormalSum::parse(FieldTag::Prime(2), "x1.x2 + x2.x1").unwrap();
        assert!(f2.delete_letter(2).unwrap().is_zero());
        assert!(fs("x1^2 + x2").delete_letter(1).is_err());
    }

    #[test]
    fn split_and_multidegree() {
        let f = fs("x1.x2 + x2.x1 + x1^2");
        let parts = f.split_by_multidegree(2);
        assert_eq!(parts.len(), 2);
        assert_eq!(f.multidegree(2), None);
        assert_eq!(
            fs("x1.x2 - x2.x1").multidegree(2),
            Some(MultiDegree(vec![1, 1]))
        );
    }

    fn arb_sum() -> impl Strategy<Value = FormalSum> {
        let term = (-5i64..=5, prop::collection::vec(1u8..=3, 1..6));
        prop::collection::vec(term, 0..6).prop_map(|ts| {
            FormalSum::from_terms(
                Q,
                ts.into_iter()
                    .map(|(c, l)| (Coeff::from_integer(c.into()), Word::new(l).unwrap())),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(f in arb_sum()) {
            let printed = f.to_string();
            prop_assert_eq!(FormalSum::parse(Q, &printed).unwrap(), f);
        }

        #[test]
        fn mirror_is_involution(f in arb_sum()) {
            prop_assert_eq!(f.mirror().mirror(), f);
        }
    }
}
