//! Invariants of several `n x n` matrices under simultaneous conjugation:
//! generic matrices, the coefficients `sigma_t` of characteristic
//! polynomials, the finite generating set bounded by nilpotency degrees,
//! and degreewise checks that it generates.
//!
//! Everything here is desk scale. The ambient ring is the polynomial ring in
//! the `n^2 d` entries of the generic matrices, so costs grow quickly with
//! `n`, `d` and the degree.

mod matrix;
mod poly;

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{best_bounds, exact_known, BoundFlags};
use crate::error::{Error, Result};
use crate::field::{Coeff, Field, FieldTag, PrimeField, RationalField};
use crate::linalg::Echelon;
use crate::nil_ideal::{nilpotency_degree, Degree};
use crate::word::{Letter, MultiDegree, Word};

pub use matrix::{eval_word, sigma, var_index, PolyMatrix, MAX_EVAL_DEGREE};
pub use poly::{Monomial, Poly};

/// Size limits for the ambient polynomial computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantLimits {
    pub max_n: usize,
    pub max_d: usize,
    /// Bound on `t * deg a` for every `sigma_t(X_a)` formed.
    pub max_x_degree: u32,
    pub max_products: usize,
    pub max_monomials: usize,
}

impl Default for InvariantLimits {
    fn default() -> Self {
        InvariantLimits {
            max_n: 3,
            max_d: 2,
            max_x_degree: 8,
            max_products: 200_000,
            max_monomials: 2_000_000,
        }
    }
}

/// `sigma_t(X_a)` as a polynomial in the matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPoly {
    pub t: u32,
    pub word: Word,
    /// Degree in the entries of each `X_k`; equals `t * mdeg(a)`.
    pub multidegree: MultiDegree,
    pub poly: Poly,
}

impl InvariantPoly {
    pub fn new(field: FieldTag, n: usize, d: usize, t: u32, word: &Word) -> Result<Self> {
        let m = eval_word(field, n, d, word)?;
        let poly = sigma(t as usize, &m)?;
        Ok(InvariantPoly {
            t,
            word: word.clone(),
            multidegree: word.multidegree(d).scaled(t),
            poly,
        })
    }

    pub fn degree(&self) -> u32 {
        self.multidegree.total()
    }
}

/// Least rotation of a word; `sigma_t` takes the same value on all
/// rotations.
pub fn cyclic_representative(w: &Word) -> Word {
    let l = w.letters();
    (0..l.len())
        .map(|i| {
            let mut r = l[i..].to_vec();
            r.extend_from_slice(&l[..i]);
            r
        })
        .min()
        .map(|r| Word::new(r).expect("rotation of a word"))
        .expect("words are nonempty")
}

/// Words of length `len` over `d` letters that are least among their
/// rotations, in lexicographic order.
pub fn necklaces(d: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || len == 0 {
        return out;
    }
    let mut cur = vec![1 as Letter; len];
    loop {
        let w = Word::new(cur.clone()).expect("positive letters");
        if cyclic_representative(&w) == w {
            out.push(w);
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < d {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Where the values `C_{k,d}` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CSource {
    /// Values known in closed form.
    Known,
    /// The exact engine, searching up to `max_deg`.
    Engine { max_deg: u32 },
    /// The best proven upper bound; a superset of a generating set still
    /// generates.
    BestUpper,
    /// `Known`, then `Engine`, then `BestUpper`.
    Auto { max_deg: u32 },
}

impl Default for CSource {
    fn default() -> Self {
        CSource::Auto { max_deg: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CValue {
    pub k: u32,
    pub value: u64,
    pub source: &'static str,
}

fn resolve_c(k: u32, d: usize, p: u64, src: CSource) -> Result<CValue> {
    let known = || exact_known(k, d as u64, p);
    let engine = |max_deg: u32| -> Result<Option<u64>> {
        Ok(match nilpotency_degree(k, d, p, max_deg)?.degree {
            Degree::Exact(c) => Some(c as u64),
            Degree::ExceedsMaxDeg => None,
        })
    };
    let upper = || -> Result<u64> {
        let s = best_bounds(k, d as u64, p, BoundFlags::default())?;
        s.best_upper
            .integer_bound
            .and_then(|b| u64::try_from(b).ok())
            .ok_or(Error::TooLarge {
                what: "upper bound on C",
                value: u128::MAX,
                limit: u64::MAX as u128,
            })
    };
    let (value, source) = match src {
        CSource::Known => (
            known()?.ok_or_else(|| {
                Error::InvalidArgument(format!("C_{{{k},{d}}} is not known in closed form"))
            })?,
            "known",
        ),
        CSource::Engine { max_deg } => (
            engine(max_deg)?.ok_or_else(|| {
                Error::InvalidArgument(format!("C_{{{k},{d}}} exceeds {max_deg}"))
            })?,
            "engine",
        ),
        CSource::BestUpper => (upper()?, "best_upper"),
        CSource::Auto { max_deg } => {
            if let Some(v) = known()? {
                (v, "known")
            } else if let Some(v) = engine(max_deg)? {
                (v, "engine")
            } else {
                (upper()?, "best_upper")
            }
        }
    };
    Ok(CValue { k, value, source })
}

/// The finite generating set: `sigma_t(X_a)` for `t = 1` or
/// `p <= t <= n/2` with `deg a <= C_{[n/t],d}`, and `sigma_t(X_i)` for
/// `n/2 < t <= n` with `p <= t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    /// `(t, a)` with `a` least among its rotations.
    pub words: Vec<(u32, Word)>,
    /// `(t, i)` standing for `sigma_t(X_i)`.
    pub tail: Vec<(u32, Letter)>,
    pub c_values: Vec<CValue>,
}

impl GeneratorSet {
    /// All pairs `(t, a)`, the tail written with one-letter words.
    pub fn pairs(&self) -> Vec<(u32, Word)> {
        let mut seen: BTreeSet<(u32, Word)> = self.words.iter().cloned().collect();
        let mut out = self.words.clone();
        for (t, i) in &self.tail {
            let pair = (*t, Word::letter(*i));
            if seen.insert(pair.clone()) {
                out.push(pair);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.pairs().len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty() && self.tail.is_empty()
    }

    pub fn contains(&self, t: u32, a: &Word) -> bool {
        let a = cyclic_representative(a);
        self.pairs().iter().any(|(s, b)| *s == t && *b == a)
    }

    /// The generators as polynomials over the field of characteristic `p`.
    pub fn invariants(&self) -> Result<Vec<InvariantPoly>> {
        let field = FieldTag::from_characteristic(self.p)?;
        self.pairs()
            .par_iter()
            .map(|(t, a)| InvariantPoly::new(field, self.n, self.d, *t, a))
            .collect()
    }

    pub fn c_value(&self, k: u32) -> Option<u64> {
        self.c_values.iter().find(|c| c.k == k).map(|c| c.value)
    }
}

fn in_generating_range(n: usize, p: u64, t: usize) -> bool {
    t == 1 || (p as usize <= t && 2 * t <= n)
}

fn in_tail(n: usize, p: u64, t: usize) -> bool {
    2 * t > n && t <= n && p as usize <= t
}

pub fn generator_set(n: usize, d: usize, p: u64, c_source: CSource) -> Result<GeneratorSet> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be positive".into()));
    }
    FieldTag::from_characteristic(p)?;
    let mut words = Vec::new();
    let mut c_values: Vec<CValue> = Vec::new();
    for t in 1..=n {
        if !in_generating_range(n, p, t) {
            continue;
        }
        let k = (n / t) as u32;
        let c = match c_values.iter().find(|c| c.k == k) {
            Some(c) => c.value,
            None => {
                let cv = resolve_c(k, d, p, c_source)?;
                let v = cv.value;
                c_values.push(cv);
                v
            }
        };
        if c as usize > MAX_EVAL_DEGREE {
            return Err(Error::TooLarge {
                what: "generator degree",
                value: c as u128,
                limit: MAX_EVAL_DEGREE as u128,
            });
        }
        for len in 1..=c as usize {
            words.extend(necklaces(d, len).into_iter().map(|w| (t as u32, w)));
        }
    }
    let tail = (1..=n)
        .filter(|t| in_tail(n, p, *t))
        .flat_map(|t| (1..=d as Letter).map(move |i| (t as u32, i)))
        .collect();
    Ok(GeneratorSet {
        n,
        d,
        p,
        words,
        tail,
        c_values,
    })
}

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Every product of members of `gens` (with repetition) whose
/// multidegrees add up to `target`.
fn products(gens: &[&InvariantPoly], target: &[u32], limit: usize) -> Result<Vec<Poly>> {
    fn rec(
        gens: &[&InvariantPoly],
        start: usize,
        rest: &mut Vec<u32>,
        acc: Option<Poly>,
        out: &mut Vec<Poly>,
        limit: usize,
    ) -> Result<()> {
        if rest.iter().all(|r| *r == 0) {
            if let Some(p) = acc {
                if out.len() >= limit {
                    return Err(Error::TooLarge {
                        what: "generator products",
                        value: limit as u128 + 1,
                        limit: limit as u128,
                    });
                }
                out.push(p);
            }
            return Ok(());
        }
        for i in start..gens.len() {
            let g = gens[i];
            if !leq(g.multidegree.entries(), rest) {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(g.multidegree.entries()) {
                *r -= x;
            }
            let next = match &acc {
                None => g.poly.clone(),
                Some(a) => a.mul(&g.poly),
            };
            let res = rec(gens, i, rest, Some(next), out, limit);
            for (r, x) in rest.iter_mut().zip(g.multidegree.entries()) {
                *r += x;
            }
            res?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(gens, 0, &mut target.to_vec(), None, &mut out, limit)?;
    Ok(out)
}

fn span_contains<F: Field>(
    field: F,
    rows: &[Poly],
    target: &Poly,
    max_monomials: usize,
) -> Result<bool> {
    let mut index: HashMap<&Monomial, u32> = HashMap::new();
    for p in rows.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let next = index.len() as u32;
            index.entry(m).or_insert(next);
        }
        if index.len() > max_monomials {
            return Err(Error::TooLarge {
                what: "monomials",
                value: index.len() as u128,
                limit: max_monomials as u128,
            });
        }
    }
    let to_row = |p: &Poly| -> Result<Vec<(u32, F::Elem)>> {
        let mut r: Vec<(u32, F::Elem)> = p
            .terms()
            .map(|(m, c)| Ok((index[m], field.from_coeff(c)?)))
            .collect::<Result<_>>()?;
        r.sort_unstable_by_key(|x| x.0);
        Ok(r)
    };
    let mut ech = Echelon::new(field.clone(), index.len());
    let mut scratch = ech.scratch();
    for p in rows {
        ech.insert_with(&to_row(p)?, &mut scratch);
        if ech.is_full() {
            return Ok(true);
        }
    }
    Ok(ech.reduce(&to_row(target)?).is_empty())
}

/// Whether `target` is a linear combination of products of `gens` of the
/// same multidegree.
pub fn subalgebra_reduce(gens: &[InvariantPoly], target: &InvariantPoly) -> Result<bool> {
    subalgebra_reduce_with(gens, target, &InvariantLimits::default())
}

pub fn subalgebra_reduce_with(
    gens: &[InvariantPoly],
    target: &InvariantPoly,
    limits: &InvariantLimits,
) -> Result<bool> {
    if target.poly.is_zero() {
        return Ok(true);
    }
    let tdeg = target.multidegree.entries();
    let usable: Vec<&InvariantPoly> = gens
        .iter()
        .filter(|g| {
            !g.multidegree.is_zero()
                && g.multidegree.d() == tdeg.len()
                && !g.poly.is_zero()
                && leq(g.multidegree.entries(), tdeg)
        })
        .collect();
    let rows = products(&usable, tdeg, limits.max_products)?;
    match target.poly.field() {
        FieldTag::Rational => {
            span_contains(RationalField, &rows, &target.poly, limits.max_monomials)
        }
        FieldTag::Prime(p) => span_contains(
            PrimeField::new(p),
            &rows,
            &target.poly,
            limits.max_monomials,
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationCase {
    pub t: u32,
    pub word: Word,
    pub deg: u32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub guard_breaches: usize,
    pub all_pass: bool,
    pub generators: usize,
    pub c_values: Vec<CValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    pub extra_deg: u32,
    pub cases: Vec<GenerationCase>,
    pub summary: GenerationSummary,
}

pub fn generation_check(n: usize, d: usize, p: u64, extra_deg: u32) -> Result<GenerationReport> {
    generation_check_with(
        n,
        d,
        p,
        extra_deg,
        CSource::default(),
        &InvariantLimits::default(),
    )
}

/// For each `1 <= t <= n` and each word `a` (up to rotation) with
/// `C_{[n/t],d} < deg a <= C_{[n/t],d} + extra_deg`, checks that
/// `sigma_t(X_a)` lies in the subalgebra spanned by the generating set.
pub fn generation_check_with(
    n: usize,
    d: usize,
    p: u64,
    extra_deg: u32,
    c_source: CSource,
    limits: &InvariantLimits,
) -> Result<GenerationReport> {
    if n > limits.max_n || d > limits.max_d {
        return Err(Error::TooLarge {
            what: "n or d for invariant checks",
            value: n.max(d) as u128,
            limit: limits.max_n.min(limits.max_d) as u128,
        });
    }
    let mut gs = generator_set(n, d, p, c_source)?;
    let field = FieldTag::from_characteristic(p)?;
    let mut pending: Vec<(u32, Word)> = Vec::new();
    for t in 1..=n {
        let k = (n / t) as u32;
        let c = match gs.c_value(k) {
            Some(c) => c,
            None => {
                let cv = resolve_c(k, d, p, c_source)?;
                let v = cv.value;
                gs.c_values.push(cv);
                v
            }
        };
        for len in c + 1..=c + extra_deg as u64 {
            pending.extend(
                necklaces(d, len as usize)
                    .into_iter()
                    .map(|w| (t as u32, w)),
            );
        }
    }
    let too_big = |t: u32, a: &Word| t * a.len() as u32 > limits.max_x_degree;
    let gen_pairs = gs.pairs();
    let gens: Vec<InvariantPoly> = gen_pairs
        .par_iter()
        .filter(|(t, a)| !too_big(*t, a))
        .map(|(t, a)| InvariantPoly::new(field, n, d, *t, a))
        .collect::<Result<_>>()?;
    let cases: Vec<GenerationCase> = pending
        .par_iter()
        .map(|(t, a)| {
            let deg = a.len() as u32;
            let outcome = if too_big(*t, a) {
                Err(Error::TooLarge {
                    what: "X-degree",
                    value: (*t * deg) as u128,
                    limit: limits.max_x_degree as u128,
                })
            } else {
                InvariantPoly::new(field, n, d, *t, a)
                    .and_then(|target| subalgebra_reduce_with(&gens, &target, limits))
            };
            match outcome {
                Ok(pass) => GenerationCase {
                    t: *t,
                    word: a.clone(),
                    deg,
                    pass,
                    error: None,
                },
                Err(e) => GenerationCase {
                    t: *t,
                    word: a.clone(),
                    deg,
                    pass: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    let guard_breaches = cases.iter().filter(|c| c.error.is_some()).count();
    let summary = GenerationSummary {
        total: cases.len(),
        passed,
        failed: cases.len() - passed,
        guard_breaches,
        all_pass: passed == cases.len(),
        generators: gen_pairs.len(),
        c_values: gs.c_values.clone(),
    };
    Ok(GenerationReport {
        n,
        d,
        p,
        extra_deg,
        cases,
        summary,
    })
}

/// Compares `sigma_t(X)` with the Newton expression in `tr(X^i)`,
/// `i <= t`, for one generic `n x n` matrix. Requires `t < p` or `p = 0`.
pub fn newton_sigma_check(n: usize, t: usize, p: u64) -> Result<bool> {
    let field = FieldTag::from_characteristic(p)?;
    if p > 0 && t as u64 >= p {
        return Err(Error::Hypothesis(format!(
            "Newton formulas need t < p, got t = {t}, p = {p}"
        )));
    }
    if n == 0 || t > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= t <= n, got t = {t}, n = {n}"
        )));
    }
    let x = PolyMatrix::generic(field, n, 1, 1);
    let mut powers = vec![x.clone()];
    for _ in 1..t {
        powers.push(powers.last().expect("nonempty").mul(&x));
    }
    let traces: Vec<Poly> = powers.iter().map(PolyMatrix::trace).collect();
    let nv = n * n;
    let mut e = vec![Poly::one(field, nv)];
    for k in 1..=t {
        let mut acc = Poly::zero(field, nv);
        for i in 1..=k {
            let term = e[k - i].mul(&traces[i - 1]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        let inv = field.normalize(&Coeff::new(1.into(), (k as i64).into()))?;
        e.push(acc.scale(&inv));
    }
    Ok(e[t] == sigma(t, &x)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationReport {
    pub n: usize,
    pub d: usize,
    pub samples: usize,
    pub evaluations: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

type NumMatrix = Vec<Vec<Coeff>>;

fn num_mul(a: &NumMatrix, b: &NumMatrix) -> NumMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Coeff::zero(), |s, l| s + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

fn num_inverse(a: &NumMatrix) -> Option<NumMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Coeff>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Coeff::from_integer(((i == j) as i64).into())));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in &mut m[col] {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> NumMatrix {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Coeff::from_integer(rng.gen_range(-4i64..=4).into()))
                .collect()
        })
        .collect()
}

fn point(mats: &[NumMatrix]) -> Vec<Coeff> {
    mats.iter()
        .flat_map(|m| m.iter().flatten().cloned())
        .collect()
}

/// Evaluates every generator over the rationals at random integer matrices
/// `A_1..A_d` and at `g A_1 g^-1, ..., g A_d g^-1` for a random invertible
/// `g`, and compares the values.
pub fn conjugation_check(
    gens: &GeneratorSet,
    samples: usize,
    seed: u64,
) -> Result<ConjugationReport> {
    let (n, d) = (gens.n, gens.d);
    let rational = GeneratorSet {
        p: 0,
        ..gens.clone()
    };
    let polys = rational.invariants()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut evaluations = 0;
    for s in 0..samples {
        let mats: Vec<NumMatrix> = (0..d).map(|_| random_matrix(&mut rng, n)).collect();
        let (g, gi) = loop {
            let g = random_matrix(&mut rng, n);
            if let Some(gi) = num_inverse(&g) {
                break (g, gi);
            }
        };
        let conj: Vec<NumMatrix> = mats.iter().map(|a| num_mul(&num_mul(&g, a), &gi)).collect();
        let (x, y) = (point(&mats), point(&conj));
        for inv in &polys {
            evaluations += 1;
            if inv.poly.eval(&x) != inv.poly.eval(&y) {
                failures.push(format!("sample {s}: sigma_{}({})", inv.t, inv.word));
            }
        }
    }
    let pass = failures.is_empty();
    Ok(ConjugationReport {
        n,
        d,
        samples,
        evaluations,
        failures,
        pass,
    })
}
