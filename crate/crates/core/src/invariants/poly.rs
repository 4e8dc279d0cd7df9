//! Commutative polynomials with exact coefficients in a fixed number of
//! variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::field::{Coeff, FieldTag};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u8>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldTag,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(field: FieldTag, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldTag, nvars: usize, c: &Coeff) -> Self {
        let mut p = Poly::zero(field, nvars);
        p.add_term(vec![0; nvars], c.clone());
        p
    }

    pub fn one(field: FieldTag, nvars: usize) -> Self {
        Poly::constant(field, nvars, &Coeff::from_integer(1.into()))
    }

    pub fn var(field: FieldTag, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Poly::zero(field, nvars);
        p.add_term(m, Coeff::from_integer(1.into()));
        p
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u8]) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// `c` must already be in canonical form for the field.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn neg(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.field.neg(c)))
            .collect();
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let mut r = Poly::zero(self.field, self.nvars);
        if c.is_zero() {
            return r;
        }
        for (m, a) in &self.terms {
            r.add_term(m.clone(), self.field.mul(a, c));
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, self.field.mul(c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Value at a point given by one coefficient per variable.
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in point.iter().zip(m) {
                for _ in 0..*e {
                    v = self.field.mul(&v, x);
                }
            }
            acc = self.field.add(&acc, &v);
        }
        acc
    }

    /// Sums of exponents over consecutive blocks of `block` variables, if
    /// every term gives the same sums.
    pub fn block_degree(&self, block: usize) -> Option<Vec<u32>> {
        let mut out: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            let v: Vec<u32> = m
                .chunks(block)
                .map(|ch| ch.iter().map(|e| *e as u32).sum())
                .collect();
            match &out {
                None => out = Some(v),
                Some(o) if *o == v => {}
                Some(_) => return None,
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", self.field.display_coeff(c))?;
            for (i, e) in m.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*v{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
