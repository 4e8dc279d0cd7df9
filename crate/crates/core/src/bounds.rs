//! Upper and lower bounds on the nilpotency degree `C_{n,d}` over a field
//! of characteristic `p`, with exact integer values where the formula
//! allows and base-10 logarithms otherwise.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldTag;

/// Exact values are only materialized below this many decimal digits.
pub const EXACT_DIGIT_CAP: f64 = 4000.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundFlags {
    pub assume_conjecture_n2: bool,
}

/// One evaluated bound `C <= B`, `C < B`, `C >= B` or `C > B`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub formula_id: &'static str,
    pub direction: Direction,
    pub strict: bool,
    /// `B` itself when it is an integer (and not astronomically large).
    #[serde(serialize_with = "opt_big")]
    pub value_exact: Option<BigInt>,
    /// The bound on `C` after rounding to integers, when representable.
    #[serde(serialize_with = "opt_big")]
    pub integer_bound: Option<BigInt>,
    pub value_log10: f64,
    pub applicability: &'static str,
    pub citation: &'static str,
    /// Depends on an unproven conjecture.
    pub conditional: bool,
}

fn opt_big<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

impl BoundResult {
    /// `log10` of the integer bound when known, else of `B`.
    pub fn effective_log10(&self) -> f64 {
        match &self.integer_bound {
            Some(b) if b.is_positive() => log10_big(b),
            Some(_) => f64::NEG_INFINITY,
            None => self.value_log10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSummary {
    pub n: u32,
    pub d: u64,
    pub p: u64,
    pub all: Vec<BoundResult>,
    pub best_upper: BoundResult,
    pub best_lower: BoundResult,
    pub flags: BoundFlags,
}

/// `log10` of a positive big integer.
pub fn log10_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().expect("fits in f64").log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("fits in f64");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn log10_rational(q: &BigRational) -> f64 {
    log10_big(q.numer()) - log10_big(q.denom())
}

struct Formula {
    id: &'static str,
    direction: Direction,
    strict: bool,
    applicability: &'static str,
    citation: &'static str,
    conditional: bool,
}

const fn formula(
    id: &'static str,
    direction: Direction,
    strict: bool,
    applicability: &'static str,
    citation: &'static str,
) -> Formula {
    Formula {
        id,
        direction,
        strict,
        applicability,
        citation,
        conditional: false,
    }
}

fn integer_from(direction: Direction, strict: bool, floor: BigInt, integral: bool) -> BigInt {
    match (direction, strict, integral) {
        (Direction::Upper, true, true) => floor - 1,
        (Direction::Upper, _, _) => floor,
        (Direction::Lower, true, _) => floor + 1,
        (Direction::Lower, false, true) => floor,
        (Direction::Lower, false, false) => floor + 1,
    }
}

/// A bound whose value `B` is an exact rational.
fn exact(s: &Formula, b: BigRational) -> BoundResult {
    let integral = b.is_integer();
    let floor = b.floor().to_integer();
    BoundResult {
        formula_id: s.id,
        direction: s.direction,
        strict: s.strict,
        value_exact: integral.then(|| floor.clone()),
        integer_bound: Some(integer_from(s.direction, s.strict, floor, integral)),
        value_log10: log10_rational(&b),
        applicability: s.applicability,
        citation: s.citation,
        conditional: s.conditional,
    }
}

fn exact_int(s: &Formula, b: BigInt) -> BoundResult {
    exact(s, BigRational::from_integer(b))
}

/// A bound known only through `log10 B`, with `B` not an integer. `floor`
/// is supplied when it can be determined.
fn irrational(s: &Formula, log10: f64, floor: Option<BigInt>) -> BoundResult {
    BoundResult {
        formula_id: s.id,
        direction: s.direction,
        strict: s.strict,
        value_exact: None,
        integer_bound: floor.map(|f| integer_from(s.direction, s.strict, f, false)),
        value_log10: log10,
        applicability: s.applicability,
        citation: s.citation,
        conditional: s.conditional,
    }
}

/// A bound that is an integer in principle but may be too large to write
/// out: `log10` is used to decide.
fn maybe_huge(s: &Formula, log10: f64, make: impl FnOnce() -> BigRational) -> BoundResult {
    if log10 <= EXACT_DIGIT_CAP {
        exact(s, make())
    } else {
        BoundResult {
            formula_id: s.id,
            direction: s.direction,
            strict: s.strict,
            value_exact: None,
            integer_bound: None,
            value_log10: log10,
            applicability: s.applicability,
            citation: s.citation,
            conditional: s.conditional,
        }
    }
}

/// `floor(x)` for a positive double well inside the exact integer range.
fn small_floor(x: f64) -> Option<BigInt> {
    (x.is_finite() && x < 9.0e15).then(|| BigInt::from(x.floor() as u64))
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(big(base), e as usize)
}

fn exact_log2(x: u64) -> Option<u32> {
    x.is_power_of_two().then(|| x.trailing_zeros())
}

fn exact_log3(mut x: u64) -> Option<u32> {
    let mut k = 0;
    while x > 1 && x.is_multiple_of(3) {
        x /= 3;
        k += 1;
    }
    (x == 1).then_some(k)
}

fn check_p(p: u64) -> Result<()> {
    FieldTag::from_characteristic(p).map(|_| ())
}

fn check_nd(n: u32, d: u64) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be positive".into()));
    }
    Ok(())
}

/// `p = 0` or `p > n`: the regime of the classical nilpotency theorem.
fn char_large(n: u32, p: u64) -> bool {
    p == 0 || p > n as u64
}

/// `p > n/2` with `p` nonzero.
fn char_half(n: u32, p: u64) -> bool {
    p != 0 && 2 * p > n as u64
}

/// The value of `C_{n,d}` where it is known exactly.
pub fn exact_known(n: u32, d: u64, p: u64) -> Result<Option<u64>> {
    check_nd(n, d)?;
    check_p(p)?;
    Ok(match (n, p) {
        (1, _) => Some(1),
        _ if d == 1 => Some(n as u64),
        (2, 2) => Some(d + 1),
        (2, _) => Some(3),
        (3, 2) if d == 2 => Some(6),
        (3, 2) => Some(d + 3),
        (3, 3) => Some(3 * d + 1),
        (3, _) => Some(6),
        (4, 0) => Some(10),
        _ => None,
    })
}

type MemoKey = (u32, u64, u64);

fn memo() -> &'static RwLock<HashMap<MemoKey, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `d * sum_{i=2}^{n} (i-1) C_{[n/i],d} + 1` with each `C_{k,d}` replaced
/// by the best upper value available for it.
pub fn recursive_bound(n: u32, d: u64, p: u64) -> Result<BigInt> {
    check_nd(n, d)?;
    check_p(p)?;
    if p != 0 && !char_half(n, p) {
        return Err(Error::InvalidArgument(format!(
            "the recursion needs p = 0 or p > n/2, got p = {p}, n = {n}"
        )));
    }
    if let Some(v) = memo().read().expect("memo lock").get(&(n, d, p)) {
        return Ok(v.clone());
    }
    let mut sum = BigInt::zero();
    for i in 2..=n {
        let k = n / i;
        sum += big(i as u64 - 1) * sub_value(k, d, p)?;
    }
    let v: BigInt = big(d) * sum + 1;
    memo()
        .write()
        .expect("memo lock")
        .insert((n, d, p), v.clone());
    Ok(v)
}

/// Best unconditional upper value for `C_{k,d}` used inside the recursion.
fn sub_value(k: u32, d: u64, p: u64) -> Result<BigInt> {
    if let Some(v) = exact_known(k, d, p)? {
        return Ok(big(v));
    }
    let mut best = recursive_bound(k, d, p)?;
    for b in closed_form_bounds(k, d, p, BoundFlags::default())? {
        if b.direction == Direction::Upper && !b.conditional {
            if let Some(v) = b.integer_bound {
                if v < best {
                    best = v;
                }
            }
        }
    }
    Ok(best)
}

/// Per-`n` coefficients `a_n` with `C_{n,d} <= a_n d + 1` for
/// `4 <= n <= 9` and `n/2 < p <= n`.
pub const LINEAR_SMALL_N: [(u32, u64); 6] = [(4, 8), (5, 12), (6, 24), (7, 30), (8, 50), (9, 64)];

/// Recomputes `a_n` from the recursion, using `C_2 = 3`, `C_3 = 6` and
/// `C_4 <= 13` (all valid for `p > k`), which is all the recursion needs
/// when `n <= 9` and `p > n/2`.
pub fn linear_coefficient(n: u32) -> Result<u64> {
    if !(4..=9).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} outside 4..=9")));
    }
    let c4 = nh_refined_value(4).ok_or_else(|| Error::InvalidArgument("n = 4".into()))?;
    let c = |k: u32| -> u64 {
        match k {
            1 => 1,
            2 => 3,
            3 => 6,
            4 => c4,
            _ => unreachable!("n/2 <= 4 for n <= 9"),
        }
    };
    Ok((2..=n).map(|i| (i as u64 - 1) * c(n / i)).sum())
}

/// Largest integer below `7 * 2^(n-3)`.
fn nh_refined_value(n: u32) -> Option<u64> {
    (3..=60).contains(&n).then(|| 7 * (1u64 << (n - 3)) - 1)
}

const NAGATA_HIGMAN: Formula = formula(
    "nagata_higman",
    Direction::Upper,
    true,
    "p = 0 or p > n",
    "Nagata-Higman theorem: C < 2^n",
);
const RAZMYSLOV: Formula = formula(
    "razmyslov",
    Direction::Upper,
    false,
    "p = 0",
    "Razmyslov: C <= n^2",
);
const KLEIN_POWER: Formula = formula(
    "klein_power",
    Direction::Upper,
    true,
    "all p",
    "Klein: C < n^6 d^n / 6",
);
const KLEIN_HALF: Formula = formula(
    "klein_half",
    Direction::Upper,
    true,
    "all p",
    "Klein: C < n^(n^3) d^m / (m-1)!, m = floor(n/2)",
);
const BELOV_KHARITONOV: Formula = formula(
    "belov_kharitonov",
    Direction::Upper,
    false,
    "all p",
    "Belov-Kharitonov: C <= 2^18 n^(12 log3(n) + 28) d",
);
const BK_COROLLARY: Formula = formula(
    "bk_corollary",
    Direction::Upper,
    false,
    "all p",
    "Belov-Kharitonov, Corollary 1.16: C <= 4^(log3(64)+5) (n^12)^(log3(4n)+1) d",
);
const BK_THEOREM: Formula = formula(
    "bk_theorem",
    Direction::Upper,
    false,
    "all p",
    "Belov-Kharitonov, Theorem 1.17: C <= 256 n^(8 log2(n) + 22) d",
);
const POLY_LOG: Formula = formula(
    "poly_log",
    Direction::Upper,
    true,
    "p > n/2",
    "polynomial bound from the recursion: C < n^(log2(3d+2) + 1)",
);
const POLY_LOG_CHAR0: Formula = formula(
    "poly_log_char0",
    Direction::Upper,
    true,
    "p = 0 (extension of the p > n/2 statement)",
    "polynomial bound from the recursion evaluated at p = 0: C < n^(log2(3d+2) + 1)",
);
const EXP_HALF: Formula = formula(
    "exp_half",
    Direction::Upper,
    true,
    "p > n/2",
    "recursion with Nagata-Higman: C < 4 * 2^(n/2) d",
);
const EXP_HALF_LARGE_N: Formula = formula(
    "exp_half_large_n",
    Direction::Upper,
    true,
    "p > n/2 and n >= 30",
    "recursion with Nagata-Higman: C < 2 * 2^(n/2) d",
);
const LINEAR: Formula = formula(
    "linear_small_n",
    Direction::Upper,
    false,
    "4 <= n <= 9 and n/2 < p <= n",
    "recursion with C_2 = 3, C_3 = 6, C_4 <= 13: C <= a_n d + 1",
);
const NH_REFINED: Formula = formula(
    "nh_refined",
    Direction::Upper,
    true,
    "p > n >= 3",
    "refined Nagata-Higman: C < 7 * 2^(n-3)",
);
const RECURSION: Formula = formula(
    "recursion",
    Direction::Upper,
    false,
    "p = 0 or p > n/2",
    "C <= d * sum_{i=2}^{n} (i-1) C_{[n/i],d} + 1",
);
const N4_UPPER: Formula = formula(
    "n4_interval",
    Direction::Upper,
    false,
    "n = 4, p >= 3",
    "n = 4: C <= 3d+4 (p = 3), C <= 13 (p > 3)",
);
const MODULO_CONJECTURE: Formula = Formula {
    id: "modulo_conjecture",
    direction: Direction::Upper,
    strict: true,
    applicability: "n/2 < p <= n, assuming C_{k,d} <= k^2 for p > k",
    citation: "recursion with the conjectured k^2 bound: C < n^2 ln(n) d",
    conditional: true,
};
const CONJECTURE_N2: Formula = Formula {
    id: "conjecture_n2",
    direction: Direction::Upper,
    strict: false,
    applicability: "p > n, conjectural",
    citation: "conjectured extension of Razmyslov's bound: C <= n^2",
    conditional: true,
};

const KUZMIN: Formula = formula(
    "kuzmin",
    Direction::Lower,
    false,
    "p = 0 or p > n",
    "Kuzmin: C >= n(n+1)/2",
);
const DKZ: Formula = formula(
    "dkz",
    Direction::Lower,
    false,
    "0 < p <= n",
    "C >= d for 0 < p <= n",
);
const TRIVIAL: Formula = formula(
    "trivial",
    Direction::Lower,
    false,
    "all p",
    "C >= C_{n,1} = n",
);
const MONOTONE: Formula = formula(
    "monotone_n",
    Direction::Lower,
    false,
    "all p",
    "C_{n,d} >= C_{n-1,d}",
);
const N4_LOWER_P2: Formula = formula(
    "n4_lower",
    Direction::Lower,
    true,
    "n = 4, p = 2",
    "n = 4, p = 2: C > 3d",
);
const N4_LOWER: Formula = formula(
    "n4_lower",
    Direction::Lower,
    false,
    "n = 4, p >= 3",
    "n = 4: C >= 3d+1 (p = 3), C >= 10 (p > 3)",
);
const EXACT_UPPER: Formula = formula(
    "exact",
    Direction::Upper,
    false,
    "known value",
    "exact value of C_{n,d}",
);
const EXACT_LOWER: Formula = formula(
    "exact",
    Direction::Lower,
    false,
    "known value",
    "exact value of C_{n,d}",
);

/// Every applicable upper bound given by a closed formula (plus the
/// recursion and the `n = 4` interval), for `n, d >= 2`.
pub fn closed_form_bounds(n: u32, d: u64, p: u64, flags: BoundFlags) -> Result<Vec<BoundResult>> {
    check_nd(n, d)?;
    check_p(p)?;
    let mut out = Vec::new();
    if n < 2 || d < 2 {
        return Ok(out);
    }
    let nf = n as f64;
    let df = d as f64;
    let n64 = n as u64;

    if char_large(n, p) {
        out.push(maybe_huge(
            &NAGATA_HIGMAN,
            nf * std::f64::consts::LOG10_2,
            || BigRational::from_integer(pow(2, n64)),
        ));
    }
    if p == 0 {
        out.push(exact_int(&RAZMYSLOV, big(n64 * n64)));
    }

    // n^6 d^n / 6
    let log = 6.0 * nf.log10() + nf * df.log10() - 6f64.log10();
    out.push(maybe_huge(&KLEIN_POWER, log, || {
        BigRational::new(pow(n64, 6) * pow(d, n64), big(6))
    }));

    // n^(n^3) d^m / (m-1)!
    let m = n64 / 2;
    let log_fact: f64 = (1..m).map(|k| (k as f64).log10()).sum();
    let log = nf.powi(3) * nf.log10() + m as f64 * df.log10() - log_fact;
    out.push(maybe_huge(&KLEIN_HALF, log, || {
        let fact: BigInt = (1..m).fold(BigInt::one(), |acc, k| acc * big(k));
        BigRational::new(pow(n64, n64.pow(3)) * pow(d, m), fact)
    }));

    // 2^18 n^(12 log3 n + 28) d
    let log3n = nf.ln() / 3f64.ln();
    let log = 18.0 * std::f64::consts::LOG10_2 + (12.0 * log3n + 28.0) * nf.log10() + df.log10();
    out.push(match exact_log3(n64) {
        Some(k) => maybe_huge(&BELOV_KHARITONOV, log, || {
            BigRational::from_integer(pow(2, 18) * pow(n64, 12 * k as u64 + 28) * big(d))
        }),
        None => irrational(&BELOV_KHARITONOV, log, None),
    });

    // 4^(log3 64 + 5) (n^12)^(log3(4n) + 1) d; 4^(log3 64) is irrational
    let log = (64f64.ln() / 3f64.ln() + 5.0) * 4f64.log10()
        + 12.0 * ((4.0 * nf).ln() / 3f64.ln() + 1.0) * nf.log10()
        + df.log10();
    out.push(irrational(&BK_COROLLARY, log, None));

    // 256 n^(8 log2 n + 22) d
    let log = 256f64.log10() + (8.0 * nf.log2() + 22.0) * nf.log10() + df.log10();
    out.push(match exact_log2(n64) {
        Some(k) => maybe_huge(&BK_THEOREM, log, || {
            BigRational::from_integer(big(256) * pow(n64, 8 * k as u64 + 22) * big(d))
        }),
        None => irrational(&BK_THEOREM, log, None),
    });

    // n^(log2(3d+2) + 1)
    if char_half(n, p) || p == 0 {
        let s = if p == 0 { &POLY_LOG_CHAR0 } else { &POLY_LOG };
        let e = (3.0 * df + 2.0).log2() + 1.0;
        let log = e * nf.log10();
        out.push(match exact_log2(3 * d + 2) {
            Some(k) => maybe_huge(s, log, || BigRational::from_integer(pow(n64, k as u64 + 1))),
            // an integer n > 1 raised to an irrational power is irrational
            None if n64 > 1 => irrational(s, log, small_floor(nf.powf(e))),
            None => exact_int(s, big(1)),
        });
    }

    if char_half(n, p) {
        out.push(half_power_bound(&EXP_HALF, n64, d, 4, nf, df));
        if n >= 30 {
            out.push(half_power_bound(&EXP_HALF_LARGE_N, n64, d, 2, nf, df));
        }
        if (4..=9).contains(&n) && p <= n64 {
            let a = LINEAR_SMALL_N
                .iter()
                .find(|(k, _)| *k == n)
                .expect("table entry")
                .1;
            out.push(exact_int(&LINEAR, big(a * d + 1)));
        }
    }

    if p > n64 && n >= 3 {
        out.push(maybe_huge(
            &NH_REFINED,
            (n as f64 - 3.0) * std::f64::consts::LOG10_2 + 7f64.log10(),
            || BigRational::from_integer(big(7) * pow(2, n64 - 3)),
        ));
    }

    if p == 0 || char_half(n, p) {
        let v = recursive_bound(n, d, p)?;
        out.push(exact_int(&RECURSION, v));
    }

    if n == 4 {
        if p == 3 {
            out.push(exact_int(&N4_UPPER, big(3 * d + 4)));
        } else if p > 3 {
            out.push(exact_int(&N4_UPPER, big(13)));
        }
    }

    if flags.assume_conjecture_n2 {
        if char_half(n, p) && p <= n64 {
            let log = 2.0 * nf.log10() + nf.ln().log10() + df.log10();
            let val = nf * nf * nf.ln() * df;
            out.push(irrational(&MODULO_CONJECTURE, log, small_floor(val)));
        }
        if p > n64 {
            out.push(exact_int(&CONJECTURE_N2, big(n64 * n64)));
        }
    }
    Ok(out)
}

/// `k * 2^(n/2) * d`; for odd `n` this is irrational and its floor is an
/// integer square root.
fn half_power_bound(s: &Formula, n: u64, d: u64, k: u64, nf: f64, df: f64) -> BoundResult {
    let log = (k as f64).log10() + nf / 2.0 * std::f64::consts::LOG10_2 + df.log10();
    if log > EXACT_DIGIT_CAP {
        return irrational(s, log, None);
    }
    if n.is_multiple_of(2) {
        exact_int(s, big(k) * pow(2, n / 2) * big(d))
    } else {
        let x = big(k) * pow(2, n / 2) * big(d);
        let floor = (big(2) * &x * &x).sqrt();
        irrational(s, log, Some(floor))
    }
}

/// Every applicable lower bound.
pub fn lower_bounds(n: u32, d: u64, p: u64) -> Result<Vec<BoundResult>> {
    check_nd(n, d)?;
    check_p(p)?;
    let n64 = n as u64;
    let mut out = vec![exact_int(&TRIVIAL, big(n64))];
    if n < 2 || d < 2 {
        return Ok(out);
    }
    if char_large(n, p) {
        out.push(exact_int(&KUZMIN, big(n64 * (n64 + 1) / 2)));
    } else {
        out.push(exact_int(&DKZ, big(d)));
    }
    if n >= 3 {
        let prev = best_lower_value(n - 1, d, p)?;
        out.push(exact_int(&MONOTONE, prev));
    }
    if n == 4 {
        match p {
            2 => out.push(exact_int(&N4_LOWER_P2, big(3 * d))),
            3 => out.push(exact_int(&N4_LOWER, big(3 * d + 1))),
            q if q > 3 => out.push(exact_int(&N4_LOWER, big(10))),
            _ => {}
        }
    }
    Ok(out)
}

fn best_lower_value(n: u32, d: u64, p: u64) -> Result<BigInt> {
    if let Some(v) = exact_known(n, d, p)? {
        return Ok(big(v));
    }
    Ok(lower_bounds(n, d, p)?
        .into_iter()
        .filter_map(|b| b.integer_bound)
        .max()
        .expect("trivial bound always present"))
}

/// All applicable bounds with the best upper and lower one selected.
pub fn best_bounds(n: u32, d: u64, p: u64, flags: BoundFlags) -> Result<BoundSummary> {
    let mut all = closed_form_bounds(n, d, p, flags)?;
    all.extend(lower_bounds(n, d, p)?);
    if let Some(v) = exact_known(n, d, p)? {
        all.push(exact_int(&EXACT_UPPER, big(v)));
        all.push(exact_int(&EXACT_LOWER, big(v)));
    }
    let pick = |dir: Direction| -> BoundResult {
        let mut best: Option<&BoundResult> = None;
        for b in all.iter().filter(|b| b.direction == dir) {
            let better = match best {
                None => true,
                Some(cur) => {
                    let (x, y) = (b.effective_log10(), cur.effective_log10());
                    match (&b.integer_bound, &cur.integer_bound) {
                        (Some(bi), Some(ci)) => match dir {
                            Direction::Upper => bi < ci,
                            Direction::Lower => bi > ci,
                        },
                        _ => match dir {
                            Direction::Upper => x < y,
                            Direction::Lower => x > y,
                        },
                    }
                }
            };
            if better {
                best = Some(b);
            }
        }
        best.expect("at least one bound in each direction").clone()
    };
    let best_upper = pick(Direction::Upper);
    let best_lower = pick(Direction::Lower);
    Ok(BoundSummary {
        n,
        d,
        p,
        all,
        best_upper,
        best_lower,
        flags,
    })
}

/// The two super-polynomial bounds against the exponential one, all as
/// `log10` with the common factor `d` dropped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComparatorRow {
    pub n: u32,
    pub bk_a_log10: f64,
    pub bk_b_log10: f64,
    pub exp_log10: f64,
    /// `min(bk_a, bk_b) - exp`.
    pub gap_log10: f64,
}

pub fn comparator_row(n: u32) -> ComparatorRow {
    let nf = n as f64;
    let exp_log10 = 4f64.log10() + nf / 2.0 * std::f64::consts::LOG10_2;
    let bk_a_log10 = (64f64.ln() / 3f64.ln() + 5.0) * 4f64.log10()
        + 12.0 * ((4.0 * nf).ln() / 3f64.ln() + 1.0) * nf.log10();
    let bk_b_log10 = 256f64.log10() + (8.0 * nf.log2() + 22.0) * nf.log10();
    ComparatorRow {
        n,
        bk_a_log10,
        bk_b_log10,
        exp_log10,
        gap_log10: bk_a_log10.min(bk_b_log10) - exp_log10,
    }
}

/// How many orders of magnitude the exponential bound beats both
/// comparators by.
pub fn comparator_gap_log10(n: u32) -> f64 {
    comparator_row(n).gap_log10
}

/// Minimum of [`comparator_gap_log10`] over `lo..=hi`, with its argmin.
pub fn min_comparator_gap(lo: u32, hi: u32) -> (u32, f64) {
    (lo..=hi)
        .map(|n| (n, comparator_gap_log10(n)))
        .fold(
            (lo, f64::INFINITY),
            |acc, x| if x.1 < acc.1 { x } else { acc },
        )
}
