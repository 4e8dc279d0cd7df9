//! Zero modulo the ideal and strictly greater words.

use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::Engine;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::formal_sum::FormalSum;
use crate::linalg::Echelon;
use crate::order::WordOrder;
use crate::word::{compare_words, Comparison, Letter, MultiDegree, PartialOrderKind, Word};

/// Result for one class of equivalent terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivGroup {
    pub part: FormalSum,
    pub holds: bool,
    /// Normal form of `part` with greater words eliminated last; when
    /// `holds`, it is supported on strictly greater words and
    /// `part - residual` lies in the ideal.
    pub residual: FormalSum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivOutcome {
    pub holds: bool,
    pub groups: Vec<EquivGroup>,
}

fn class_key(w: &Word, d: Letter, kind: PartialOrderKind) -> Vec<Vec<u32>> {
    (1..=d)
        .map(|k| {
            let p = w.x_power(k);
            match kind {
                PartialOrderKind::Gtr => p.sorted().0,
                PartialOrderKind::Succ => vec![p.count() as u32],
            }
        })
        .collect()
}

/// Groups terms by multidegree and class, in a deterministic order.
pub(super) fn group_terms(f: &FormalSum, kind: PartialOrderKind) -> Vec<FormalSum> {
    let d = f.max_letter();
    let mut groups: BTreeMap<(MultiDegree, Vec<Vec<u32>>), FormalSum> = BTreeMap::new();
    for (w, c) in f.terms() {
        groups
            .entry((w.multidegree(d as usize), class_key(w, d, kind)))
            .or_insert_with(|| FormalSum::zero(f.field()))
            .add_term(w.clone(), c.clone());
    }
    groups.into_values().collect()
}

pub(super) fn check_single_class(f: &FormalSum, kind: PartialOrderKind) -> Result<()> {
    let mut words = f.words();
    let Some(first) = words.next() else {
        return Ok(());
    };
    for w in words {
        let same = first.multidegree(first.max_letter().max(w.max_letter()) as usize)
            == w.multidegree(first.max_letter().max(w.max_letter()) as usize)
            && compare_words(kind, first, w) == Comparison::Equivalent;
        if !same {
            return Err(Error::MixedClasses(first.to_string(), w.to_string()));
        }
    }
    Ok(())
}

pub(super) fn test_group<F: Field>(
    e: &Engine<F>,
    part: &FormalSum,
    kind: PartialOrderKind,
) -> Result<EquivGroup> {
    let d = part.max_letter() as usize;
    let delta = part.multidegree(d).expect("group is multihomogeneous");
    let rep = part.words().next().expect("group is nonempty").clone();
    let comp = e.component(&delta, WordOrder::Profile)?;
    let greater: Vec<bool> = comp
        .words
        .iter()
        .map(|w| compare_words(kind, w, &rep) == Comparison::Greater)
        .collect();
    // other words first, strictly greater words last
    let low = greater.iter().filter(|g| !**g).count() as u32;
    let mut new_col = vec![0u32; comp.words.len()];
    let (mut a, mut b) = (0u32, low);
    for (i, g) in greater.iter().enumerate() {
        if *g {
            new_col[i] = b;
            b += 1;
        } else {
            new_col[i] = a;
            a += 1;
        }
    }
    let mut words = comp.words.clone();
    for (i, w) in comp.words.iter().enumerate() {
        words[new_col[i] as usize] = w.clone();
    }
    let remap = |row: &[(u32, F::Elem)]| {
        let mut r: Vec<(u32, F::Elem)> = row
            .iter()
            .map(|(c, v)| (new_col[*c as usize], v.clone()))
            .collect();
        r.sort_unstable_by_key(|x| x.0);
        r
    };
    let mut ech = Echelon::new(e.field.clone(), words.len());
    let mut scratch = ech.scratch();
    for row in comp.echelon.rows() {
        ech.insert_with(&remap(row), &mut scratch);
    }
    let residual_row = ech.reduce(&remap(&e.row_of(&comp, part)?));
    let holds = residual_row.iter().all(|(c, _)| *c >= low);
    Ok(EquivGroup {
        part: part.clone(),
        holds,
        residual: e.sum_of(&words, &residual_row),
    })
}
