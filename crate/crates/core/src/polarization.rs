//! Multihomogeneous polarizations `T_theta` of `x^n` and the bordered
//! substitution instances `u * T_theta(a_1, ..., a_r) * v` that span the
//! graded components of the nil-ideal.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldTag};
use crate::formal_sum::FormalSum;
use crate::word::{enumerate_words, Letter, MultiDegree, Word};

/// Term multiplicities of `T_theta(args)`: the sum over all arrangements
/// placing `args[i]` exactly `theta[i]` times, as integers.
pub fn t_theta_counts(theta: &[u32], args: &[Word]) -> BTreeMap<Word, u64> {
    assert_eq!(theta.len(), args.len());
    let n: u32 = theta.iter().sum();
    let mut remaining = theta.to_vec();
    let mut seq: Vec<usize> = Vec::with_capacity(n as usize);
    let mut out = BTreeMap::new();
    arrangements(&mut remaining, &mut seq, n as usize, &mut |s| {
        let mut letters = Vec::new();
        for &i in s {
            letters.extend_from_slice(args[i].letters());
        }
        *out.entry(Word::from_vec_unchecked(letters)).or_insert(0u64) += 1;
    });
    out
}

fn arrangements(
    remaining: &mut [u32],
    seq: &mut Vec<usize>,
    len: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if seq.len() == len {
        f(seq);
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            seq.push(i);
            arrangements(remaining, seq, len, f);
            seq.pop();
            remaining[i] += 1;
        }
    }
}

fn validate_theta(n: u32, theta: &[u32], nargs: usize) -> Result<()> {
    if theta.is_empty() || theta.contains(&0) {
        return Err(Error::InvalidArgument(
            "theta entries must be positive".into(),
        ));
    }
    let s: u32 = theta.iter().sum();
    if s != n {
        return Err(Error::InvalidArgument(format!("|theta| = {s} but n = {n}")));
    }
    if nargs != theta.len() {
        return Err(Error::InvalidArgument(format!(
            "{} arguments for {} theta entries",
            nargs,
            theta.len()
        )));
    }
    Ok(())
}

/// `T_theta(args)` over `field`: the coefficient of
/// `alpha_1^theta_1 ... alpha_r^theta_r` in `(alpha_1 a_1 + ... + alpha_r a_r)^n`.
pub fn t_theta(field: FieldTag, n: u32, theta: &[u32], args: &[Word]) -> Result<FormalSum> {
    validate_theta(n, theta, args.len())?;
    let counts = t_theta_counts(theta, args);
    FormalSum::from_terms(
        field,
        counts
            .into_iter()
            .map(|(w, c)| (Coeff::from_integer(BigInt::from(c)), w)),
    )
}

/// One bordered instance `u * T_theta(args) * v` (borders may be empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub u: Vec<Letter>,
    pub theta: Vec<u32>,
    pub args: Vec<Word>,
    pub v: Vec<Letter>,
}

impl Instance {
    pub fn expand(&self, field: FieldTag) -> FormalSum {
        let n = self.theta.iter().sum();
        t_theta(field, n, &self.theta, &self.args)
            .expect("instance theta is valid")
            .bordered(&self.u, &self.v)
    }
}

/// Partitions of `n` into positive parts, each listed in descending order.
pub(crate) fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All nonzero `mu` with `t * mu <= rho` componentwise.
fn scaled_submultidegrees(rho: &[u32], t: u32) -> Vec<MultiDegree> {
    let caps: Vec<u32> = rho.iter().map(|&r| r / t).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; caps.len()];
    loop {
        if cur.iter().any(|&c| c > 0) {
            out.push(MultiDegree(cur.clone()));
        }
        let mut i = 0;
        loop {
            if i == caps.len() {
                return out;
            }
            if cur[i] < caps[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Word lists per multidegree, shared across one enumeration.
pub(crate) struct WordCache {
    limit: usize,
    map: HashMap<MultiDegree, std::sync::Arc<Vec<Word>>>,
}

impl WordCache {
    pub(crate) fn new(limit: usize) -> Self {
        WordCache {
            limit,
            map: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, mu: &MultiDegree) -> Result<std::sync::Arc<Vec<Word>>> {
        if let Some(v) = self.map.get(mu) {
            return Ok(v.clone());
        }
        let v = std::sync::Arc::new(enumerate_words(mu, self.limit)?);
        self.map.insert(mu.clone(), v.clone());
        Ok(v)
    }
}

/// Argument tuples `(theta, args)` with `sum theta_i * mdeg(a_i) = delta`,
/// one per multiset of `(theta_i, a_i)` pairs.
///
/// With `distinct = true` all argument words are pairwise different; a
/// repeated argument only produces a scalar multiple of an instance with
/// the two entries of `theta` merged, so this still spans the same space.
pub(crate) fn argument_tuples(
    n: u32,
    delta: &MultiDegree,
    distinct: bool,
    words: &mut WordCache,
    visit: &mut dyn FnMut(&[u32], &[Word]) -> Result<()>,
) -> Result<()> {
    for theta in partitions(n) {
        let mut args: Vec<Word> = Vec::with_capacity(theta.len());
        assign_args(
            &theta,
            0,
            delta.entries().to_vec(),
            distinct,
            words,
            &mut args,
            visit,
        )?;
    }
    Ok(())
}

fn assign_args(
    theta: &[u32],
    i: usize,
    rho: Vec<u32>,
    distinct: bool,
    words: &mut WordCache,
    args: &mut Vec<Word>,
    visit: &mut dyn FnMut(&[u32], &[Word]) -> Result<()>,
) -> Result<()> {
    if i == theta.len() {
        return if rho.iter().all(|&r| r == 0) {
            visit(theta, args)
        } else {
            Ok(())
        };
    }
    let t = theta[i];
    let rest: u32 = theta[i + 1..].iter().sum();
    let rho_total: u32 = rho.iter().sum();
    let candidates = if i + 1 == theta.len() {
        // the last argument must absorb everything that is left
        if rho.iter().all(|&r| r % t == 0) && rho_total > 0 {
            vec![MultiDegree(rho.iter().map(|r| r / t).collect())]
        } else {
            Vec::new()
        }
    } else {
        scaled_submultidegrees(&rho, t)
    };
    for mu in candidates {
        let used = t * mu.total();
        if rho_total < used || rho_total - used < rest {
            continue;
        }
        let next_rho: Vec<u32> = rho
            .iter()
            .zip(mu.entries())
            .map(|(r, m)| r - t * m)
            .collect();
        let ws = words.get(&mu)?;
        for w in ws.iter() {
            if i > 0 && theta[i - 1] == t {
                // equal exponents: keep argument words non-increasing
                let prev = &args[i - 1];
                if distinct && w >= prev || !distinct && w > prev {
                    continue;
                }
            }
            if distinct && args.contains(w) {
                continue;
            }
            args.push(w.clone());
            assign_args(theta, i + 1, next_rho.clone(), distinct, words, args, visit)?;
            args.pop();
        }
    }
    Ok(())
}

/// Every bordered instance `u * T_theta(a) * v` of multidegree `delta`
/// with pairwise distinct argument words, deduplicated up to simultaneous
/// permutation of the `(theta_i, a_i)` pairs. An instance with a repeated
/// argument is a multiple of one with the two exponents merged.
pub fn instance_specs(n: u32, delta: &MultiDegree, limit: usize) -> Result<Vec<Instance>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut out = Vec::new();
    if delta.total() < n {
        return Ok(out);
    }
    let d = delta.d();
    let mut words = WordCache::new(limit);
    let mut found: Vec<(Vec<u32>, Vec<Word>)> = Vec::new();
    for theta in partitions(n) {
        // arguments may use only part of delta; the rest goes to the borders
        let mut args = Vec::new();
        collect_partial(
            &theta,
            0,
            delta.entries().to_vec(),
            &mut words,
            &mut args,
            &mut found,
        )?;
    }
    for (theta, args) in found {
        let mut used = MultiDegree::zero(d);
        for (t, a) in theta.iter().zip(&args) {
            used = used.add(&a.multidegree(d).scaled(*t));
        }
        let rho = delta.checked_sub(&used).expect("arguments fit in delta");
        for (u, v) in border_pairs(&rho, &mut words)? {
            out.push(Instance {
                u,
                theta: theta.clone(),
                args: args.clone(),
                v,
            });
        }
    }
    Ok(out)
}

fn collect_partial(
    theta: &[u32],
    i: usize,
    rho: Vec<u32>,
    words: &mut WordCache,
    args: &mut Vec<Word>,
    found: &mut Vec<(Vec<u32>, Vec<Word>)>,
) -> Result<()> {
    if i == theta.len() {
        found.push((theta.to_vec(), args.clone()));
        return Ok(());
    }
    let t = theta[i];
    let rest: u32 = theta[i + 1..].iter().sum();
    let rho_total: u32 = rho.iter().sum();
    for mu in scaled_submultidegrees(&rho, t) {
        let used = t * mu.total();
        if rho_total - used < rest {
            continue;
        }
        let next_rho: Vec<u32> = rho
            .iter()
            .zip(mu.entries())
            .map(|(r, m)| r - t * m)
            .collect();
        let ws = words.get(&mu)?;
        for w in ws.iter() {
            if i > 0 && theta[i - 1] == t && w >= &args[i - 1] || args.contains(w) {
                continue;
            }
            args.push(w.clone());
            collect_partial(theta, i + 1, next_rho.clone(), words, args, found)?;
            args.pop();
        }
    }
    Ok(())
}

/// All `(u, v)` with `mdeg(u) + mdeg(v) = rho`, empty borders allowed.
fn border_pairs(
    rho: &MultiDegree,
    words: &mut WordCache,
) -> Result<Vec<(Vec<Letter>, Vec<Letter>)>> {
    let mut out = Vec::new();
    if rho.is_zero() {
        out.push((Vec::new(), Vec::new()));
        return Ok(out);
    }
    let caps = rho.entries();
    let mut cur = vec![0u32; caps.len()];
    loop {
        let mu = MultiDegree(cur.clone());
        let nu = rho.checked_sub(&mu).expect("mu <= rho");
        let us: Vec<Vec<Letter>> = if mu.is_zero() {
            vec![Vec::new()]
        } else {
            words
                .get(&mu)?
                .iter()
                .map(|w| w.letters().to_vec())
                .collect()
        };
        let vs: Vec<Vec<Letter>> = if nu.is_zero() {
            vec![Vec::new()]
        } else {
            words
                .get(&nu)?
                .iter()
                .map(|w| w.letters().to_vec())
                .collect()
        };
        for u in &us {
            for v in &vs {
                out.push((u.clone(), v.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == caps.len() {
                return Ok(out);
            }
            if cur[i] < caps[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// The finite deterministic stream of nonzero instances spanning the
/// `delta`-component of the ideal generated by `x^n`.
pub fn ideal_instances(
    field: FieldTag,
    n: u32,
    delta: &MultiDegree,
    limit: usize,
) -> Result<impl Iterator<Item = FormalSum>> {
    let specs = instance_specs(n, delta, limit)?;
    Ok(specs
        .into_iter()
        .map(move |s| s.expand(field))
        .filter(|f| !f.is_zero()))
}
