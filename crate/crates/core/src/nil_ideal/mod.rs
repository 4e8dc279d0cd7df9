//! Exact computation in the relatively free nil-algebra `N_{n,d}`: graded
//! ideal components, membership, normal forms, nilpotency degrees and the
//! two "zero modulo greater words" equivalences.

mod engine;
mod equiv;

use std::fmt;

use serde::{Serialize, Serializer};

pub use engine::EngineConfig;
pub use equiv::{EquivGroup, EquivOutcome};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field, FieldTag, PrimeField, RationalField};
use crate::formal_sum::FormalSum;
use crate::order::WordOrder;
use crate::word::{Letter, MultiDegree, PartialOrderKind, Word};
pub(crate) use engine::sorted_multidegrees;
use engine::Engine;

/// Row-reduced basis of one multidegree component of the ideal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentBasis {
    pub n: u32,
    pub d: usize,
    pub p: u64,
    pub delta: MultiDegree,
    /// Column words, ascending in the elimination order.
    pub word_index: Vec<Word>,
    /// Reduced rows as sparse `(column, coefficient)` lists; each row's
    /// first entry is its pivot with coefficient one.
    #[serde(skip)]
    pub rows: Vec<Vec<(usize, Coeff)>>,
    pub word_order_id: String,
}

impl ComponentBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn qdim(&self) -> usize {
        self.word_index.len() - self.rows.len()
    }

    pub fn row_sum(&self, i: usize) -> FormalSum {
        let field = FieldTag::from_characteristic(self.p).expect("valid characteristic");
        FormalSum::from_terms(
            field,
            self.rows[i]
                .iter()
                .map(|(c, v)| (v.clone(), self.word_index[*c].clone())),
        )
        .expect("coefficients are in the field")
    }
}

/// Either a concrete degree or the marker that no vanishing degree was
/// found up to the search limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Exact(u32),
    ExceedsMaxDeg,
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Exact(c) => s.serialize_u32(*c),
            Degree::ExceedsMaxDeg => s.serialize_str("exceeds max_deg"),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Exact(c) => write!(f, "{c}"),
            Degree::ExceedsMaxDeg => write!(f, "exceeds max_deg"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentLog {
    pub delta: MultiDegree,
    pub words: usize,
    pub rank: usize,
    pub qdim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyResult {
    pub n: u32,
    pub d: usize,
    pub p: u64,
    pub degree: Degree,
    pub witness: Option<Word>,
    pub per_degree: Vec<ComponentLog>,
}

/// How strictly [`substitute_unit`] checks its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstituteMode {
    /// Plain deletion; only the empty word is rejected.
    Raw,
    /// Also require `deg_k <= 3` and a positive degree in another letter
    /// for every term.
    Lemma,
}

enum Inner {
    Q(Engine<RationalField>),
    P(Engine<PrimeField>),
}

macro_rules! dispatch {
    ($self:expr, $e:ident => $body:expr) => {
        match &$self.inner {
            Inner::Q($e) => $body,
            Inner::P($e) => $body,
        }
    };
}

/// The ideal generated by all `n`-th powers in the free algebra over a
/// field of characteristic `p`, with cached graded components.
pub struct NilIdeal {
    n: u32,
    field: FieldTag,
    inner: Inner,
}

impl NilIdeal {
    pub fn new(n: u32, p: u64) -> Result<Self> {
        Self::with_config(n, p, EngineConfig::default())
    }

    pub fn with_config(n: u32, p: u64, config: EngineConfig) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let field = FieldTag::from_characteristic(p)?;
        let inner = match field {
            FieldTag::Rational => Inner::Q(Engine::new(n, RationalField, config)),
            FieldTag::Prime(q) => Inner::P(Engine::new(n, PrimeField::new(q), config)),
        };
        Ok(NilIdeal { n, field, inner })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn cached_components(&self) -> usize {
        dispatch!(self, e => e.cached_components())
    }

    pub fn component_basis(&self, delta: &MultiDegree, order: WordOrder) -> Result<ComponentBasis> {
        check_delta(delta)?;
        dispatch!(self, e => {
            let comp = e.component(delta, order)?;
            let rows = comp
                .echelon
                .rows()
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c as usize, e.field.to_coeff(v))).collect())
                .collect();
            Ok(ComponentBasis {
                n: self.n,
                d: delta.d(),
                p: self.p(),
                delta: delta.clone(),
                word_index: comp.words.clone(),
                rows,
                word_order_id: order.id().to_string(),
            })
        })
    }

    pub fn quotient_dimension(&self, delta: &MultiDegree) -> Result<usize> {
        check_delta(delta)?;
        dispatch!(self, e => Ok(e.component(delta, WordOrder::Profile)?.qdim()))
    }

    /// Words at non-pivot columns of the component, ascending; their images
    /// form a basis of the quotient.
    pub fn free_words(&self, delta: &MultiDegree, order: WordOrder) -> Result<Vec<Word>> {
        check_delta(delta)?;
        dispatch!(self, e => Ok(e.component(delta, order)?.free_words()))
    }

    fn own_field(&self, f: &FormalSum) -> Result<FormalSum> {
        if f.field() == self.field {
            Ok(f.clone())
        } else {
            f.to_field(self.field)
        }
    }

    /// Whether every multihomogeneous part of `f` lies in the ideal.
    pub fn contains(&self, f: &FormalSum) -> Result<bool> {
        Ok(self.reduce(f, WordOrder::Profile)?.is_zero())
    }

    /// The normal form of `f`: no term sits on a pivot column of its
    /// component. Linear and idempotent.
    pub fn reduce(&self, f: &FormalSum, order: WordOrder) -> Result<FormalSum> {
        let f = self.own_field(f)?;
        let d = f.max_letter() as usize;
        let mut out = FormalSum::zero(self.field);
        for (delta, part) in f.split_by_multidegree(d) {
            let r = dispatch!(self, e => {
                let comp = e.component(&delta, order)?;
                let row = e.row_of(&comp, &part)?;
                e.sum_of(&comp.words, &comp.echelon.reduce(&row))
            });
            out = out.add(&r);
        }
        Ok(out)
    }

    /// Whether every word of total degree `c` over `d` letters vanishes.
    pub fn degree_vanishes(&self, d: usize, c: u32) -> Result<bool> {
        dispatch!(self, e => Ok(e.level(d, c)?.iter().all(|comp| comp.qdim() == 0)))
    }

    /// The least `c <= max_deg` at which all words of degree `c` vanish,
    /// with a nonzero word of degree `c - 1`.
    pub fn nilpotency_degree(&self, d: usize, max_deg: u32) -> Result<NilpotencyResult> {
        if d == 0 || max_deg == 0 {
            return Err(Error::InvalidArgument(
                "d and max_deg must be positive".into(),
            ));
        }
        if d > Letter::MAX as usize {
            return Err(Error::InvalidArgument(format!(
                "d = {d} exceeds {}",
                Letter::MAX
            )));
        }
        let mut per_degree = Vec::new();
        let mut witness = None;
        let mut degree = Degree::ExceedsMaxDeg;
        dispatch!(self, e => {
            for c in 1..=max_deg {
                let level = e.level(d, c)?;
                let mut level_witness = None;
                for comp in &level {
                    per_degree.push(ComponentLog {
                        delta: comp.delta.clone(),
                        words: comp.words.len(),
                        rank: comp.rank(),
                        qdim: comp.qdim(),
                    });
                    if level_witness.is_none() && comp.qdim() > 0 {
                        level_witness = comp.free_words().pop();
                    }
                }
                match level_witness {
                    None => {
                        degree = Degree::Exact(c);
                        break;
                    }
                    Some(w) => witness = Some(w),
                }
            }
        });
        if degree == Degree::ExceedsMaxDeg {
            witness = None;
        }
        Ok(NilpotencyResult {
            n: self.n,
            d,
            p: self.p(),
            degree,
            witness,
            per_degree,
        })
    }

    /// Whether `f` is zero modulo the ideal and words strictly greater than
    /// each of its equivalence classes; see [`NilIdeal::equiv_zero_certificate`].
    pub fn equiv_zero(&self, f: &FormalSum, kind: PartialOrderKind) -> Result<bool> {
        Ok(self.equiv_zero_certificate(f, kind)?.holds)
    }

    /// Splits `f` into classes of equivalent terms and tests each class
    /// separately, returning for each the residual `g` supported on
    /// strictly greater words with `f_k - g` in the ideal when it exists.
    pub fn equiv_zero_certificate(
        &self,
        f: &FormalSum,
        kind: PartialOrderKind,
    ) -> Result<EquivOutcome> {
        let f = self.own_field(f)?;
        let groups = equiv::group_terms(&f, kind);
        let mut out = Vec::new();
        for g in groups {
            out.push(dispatch!(self, e => equiv::test_group(e, &g, kind))?);
        }
        Ok(EquivOutcome {
            holds: out.iter().all(|g| g.holds),
            groups: out,
        })
    }

    /// Like [`NilIdeal::equiv_zero`] but requires all terms of `f` to be
    /// pairwise equivalent.
    pub fn equiv_zero_single_class(&self, f: &FormalSum, kind: PartialOrderKind) -> Result<bool> {
        equiv::check_single_class(f, kind)?;
        self.equiv_zero(f, kind)
    }
}

fn check_delta(delta: &MultiDegree) -> Result<()> {
    if delta.total() == 0 {
        return Err(Error::InvalidArgument(
            "multidegree must have positive total".into(),
        ));
    }
    Ok(())
}

pub fn component_basis(n: u32, d: usize, p: u64, delta: &MultiDegree) -> Result<ComponentBasis> {
    if delta.d() > d {
        return Err(Error::InvalidArgument(format!(
            "multidegree {delta} has more than {d} letters"
        )));
    }
    NilIdeal::new(n, p)?.component_basis(&delta.with_d(d), WordOrder::Profile)
}

pub fn quotient_dimension(n: u32, d: usize, p: u64, delta: &MultiDegree) -> Result<usize> {
    Ok(component_basis(n, d, p, delta)?.qdim())
}

pub fn contains(n: u32, p: u64, f: &FormalSum) -> Result<bool> {
    NilIdeal::new(n, p)?.contains(f)
}

pub fn reduce(n: u32, p: u64, f: &FormalSum, order: WordOrder) -> Result<FormalSum> {
    NilIdeal::new(n, p)?.reduce(f, order)
}

pub fn nilpotency_degree(n: u32, d: usize, p: u64, max_deg: u32) -> Result<NilpotencyResult> {
    NilIdeal::new(n, p)?.nilpotency_degree(d, max_deg)
}

pub fn equiv_zero(n: u32, p: u64, f: &FormalSum, kind: PartialOrderKind) -> Result<bool> {
    NilIdeal::new(n, p)?.equiv_zero(f, kind)
}

/// The substitution `x_k -> 1`: deletes every occurrence of letter `k`.
pub fn substitute_unit(f: &FormalSum, k: Letter, mode: SubstituteMode) -> Result<FormalSum> {
    if mode == SubstituteMode::Lemma {
        for w in f.words() {
            if w.degree_in(k) > 3 {
                return Err(Error::Hypothesis(format!(
                    "{w} has degree {} in x{k}",
                    w.degree_in(k)
                )));
            }
            if w.letters().iter().all(|&l| l == k) {
                return Err(Error::Hypothesis(format!(
                    "{w} has no letter other than x{k}"
                )));
            }
        }
    }
    f.delete_letter(k)
}

pub fn mirror(f: &FormalSum) -> FormalSum {
    f.mirror()
}
