//! The `n²`-element universal 321-avoiding permutation `ρ_n`, the labelled
//! universal permutation `u_n`, and their exhaustive verification.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    contains_labelled_pattern, contains_pattern, enumerate_321_avoiders,
    enumerate_labelled_321_avoiders, inversion_components, is_321_avoiding, labellings_of, Label,
    LabelledPermutation, Permutation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// `n ≤ 2`, written out directly.
    Literal,
    /// `(n+2) 1 (n+4) 2 ... (3n) n`.
    First,
    /// The `i`-th block of length `2n`.
    General(usize),
    /// Last `2n` elements for even `n`.
    FinalEven,
    /// Last `n` elements for odd `n`.
    FinalOdd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    /// 0-based half-open position range.
    pub range: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoConstruction {
    pub n: usize,
    pub perm: Permutation,
    pub blocks: Vec<Block>,
}

fn interleave(
    tops: impl Iterator<Item = usize>,
    bottoms: impl Iterator<Item = usize>,
) -> Vec<usize> {
    tops.zip(bottoms).flat_map(|(t, b)| [t, b]).collect()
}

/// Builds `ρ_n`.
///
/// For `n ≥ 3` the permutation is a first block, general blocks
/// `i = 2..=L` with `L = n/2 - 1` (even `n`) or `(n-1)/2` (odd `n`), and a
/// final segment whose shape depends on the parity of `n`.
pub fn rho(n: usize) -> Result<RhoConstruction> {
    if n == 0 {
        return Err(Error::OutOfRange("rho needs n ≥ 1".into()));
    }
    let mut values = Vec::with_capacity(n * n);
    let mut blocks = Vec::new();
    let mut push = |kind, part: Vec<usize>, values: &mut Vec<usize>| {
        let start = values.len();
        values.extend(part);
        blocks.push(Block {
            kind,
            range: start..values.len(),
        });
    };
    match n {
        1 => push(BlockKind::Literal, vec![1], &mut values),
        2 => push(BlockKind::Literal, vec![3, 1, 4, 2], &mut values),
        _ => {
            push(
                BlockKind::First,
                interleave((n + 2..=3 * n).step_by(2), 1..=n),
                &mut values,
            );
            let last_general = if n.is_multiple_of(2) {
                n / 2 - 1
            } else {
                (n - 1) / 2
            };
            for i in 2..=last_general {
                let base = 2 * n * i;
                let tops = (base - n + 2..=base + n).step_by(2);
                let bottoms = (base + 1 - 3 * n..=base - n - 1).step_by(2);
                push(
                    BlockKind::General(i),
                    interleave(tops, bottoms),
                    &mut values,
                );
            }
            let sq = n * n;
            if n.is_multiple_of(2) {
                let tops = sq - n + 1..=sq;
                let bottoms = (sq + 1 - 3 * n..=sq - n - 1).step_by(2);
                push(BlockKind::FinalEven, interleave(tops, bottoms), &mut values);
            } else {
                push(
                    BlockKind::FinalOdd,
                    (sq + 1 - 2 * n..=sq - 1).step_by(2).collect(),
                    &mut values,
                );
            }
        }
    }
    if values.len() != n * n {
        return Err(Error::Falsification(format!(
            "rho({n}) has length {} instead of {}",
            values.len(),
            n * n
        )));
    }
    let perm = Permutation::new(values)
        .map_err(|e| Error::Falsification(format!("rho({n}) is not a permutation: {e}")))?;
    if !is_321_avoiding(&perm) {
        return Err(Error::Falsification(format!("rho({n}) contains 321")));
    }
    Ok(RhoConstruction { n, perm, blocks })
}

/// The two labellings of `ρ_n`; the first gives the leftmost element label 1.
pub fn rho_labellings(n: usize) -> Result<(LabelledPermutation, LabelledPermutation)> {
    let r = rho(n)?.perm;
    let comps = inversion_components(&r).len();
    if comps != 1 {
        return Err(Error::Falsification(format!(
            "the permutation graph of rho({n}) has {comps} components"
        )));
    }
    let mut ls = labellings_of(&r)?;
    if ls.len() != 2 {
        return Err(Error::Falsification(format!(
            "rho({n}) has {} labellings, expected exactly two",
            ls.len()
        )));
    }
    if ls[0].label_of(r.at(0)) != Label::One {
        ls.swap(0, 1);
    }
    let second = ls.pop().unwrap();
    let first = ls.pop().unwrap();
    Ok((first, second))
}

/// `u_n = (ρ_{n,1} ρ_{n,2})^n`, of length `2n³`.
pub fn u(n: usize) -> Result<LabelledPermutation> {
    let (first, second) = rho_labellings(n)?;
    let out = first.concat(&second).power(n);
    if out.len() != 2 * n * n * n || !is_321_avoiding(out.perm()) {
        return Err(Error::Falsification(format!("u({n}) has the wrong shape")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub pattern: String,
    pub positions: Vec<usize>,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PermReport {
    pub n: usize,
    pub host: String,
    pub universe_size: usize,
    pub all_contained: bool,
    pub misses: Vec<String>,
    pub witness_sample: Vec<WitnessEntry>,
    pub labelled_host_length: usize,
    pub labelled_universe_size: usize,
    pub labelled_all_contained: bool,
    pub labelled_misses: Vec<String>,
    /// One entry per pattern of `S_n(321)`, in lexicographic order.
    #[serde(skip)]
    pub witnesses: Vec<WitnessEntry>,
}

impl PermReport {
    pub fn passed(&self) -> bool {
        self.all_contained && self.labelled_all_contained
    }
}

const SAMPLE: usize = 10;

/// Checks that `ρ_n` contains every member of `S_n(321)` and that `u_n`
/// contains every labelled 321-avoiding permutation of length `n`.
pub fn verify_universal_permutation(n: usize) -> Result<PermReport> {
    let host = rho(n)?.perm;
    let universe = enumerate_321_avoiders(n);
    let found: Vec<_> = universe
        .par_iter()
        .map(|sigma| contains_pattern(&host, sigma))
        .collect();
    let mut witnesses = Vec::new();
    let mut misses = Vec::new();
    for (sigma, w) in universe.iter().zip(found) {
        match w {
            Some(w) => {
                debug_assert!(w.validate(&host, sigma));
                witnesses.push(WitnessEntry {
                    pattern: sigma.to_string(),
                    values: w.values(&host),
                    positions: w.positions,
                });
            }
            None => misses.push(sigma.to_string()),
        }
    }

    let lhost = u(n)?;
    let labelled = enumerate_labelled_321_avoiders(n);
    let labelled_misses: Vec<String> = labelled
        .par_iter()
        .filter_map(|lp| match contains_labelled_pattern(&lhost, lp) {
            Some(w) if w.validate_labelled(&lhost, lp) => None,
            _ => Some(lp.to_string()),
        })
        .collect();

    Ok(PermReport {
        n,
        host: host.to_string(),
        universe_size: universe.len(),
        all_contained: misses.is_empty(),
        misses,
        witness_sample: witnesses.iter().take(SAMPLE).cloned().collect(),
        labelled_host_length: lhost.len(),
        labelled_universe_size: labelled.len(),
        labelled_all_contained: labelled_misses.is_empty(),
        labelled_misses,
        witnesses,
    })
}

fn contains_all(text: &Permutation, universe: &[Permutation]) -> bool {
    universe
        .par_iter()
        .all(|s| contains_pattern(text, s).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortestPrefix {
    pub n: usize,
    /// The retained entries of `ρ_n`, unchanged.
    pub raw: Vec<usize>,
    /// `raw` rank-compressed to a permutation.
    pub perm: Permutation,
}

impl ShortestPrefix {
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn raw_string(&self) -> String {
        self.raw
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn raw_compact(&self) -> String {
        self.raw
            .iter()
            .map(|&v| {
                if v > 9 {
                    format!("({v})")
                } else {
                    v.to_string()
                }
            })
            .collect()
    }
}

pub const MAX_PREFIX_N: usize = 7;

/// Shortest prefix of `ρ_n` still containing all of `S_n(321)`, scanning
/// lengths downward from `n²` and re-running the full containment check at
/// each length.
pub fn shortest_universal_prefix(n: usize) -> Result<ShortestPrefix> {
    if n == 0 || n > MAX_PREFIX_N {
        return Err(Error::OutOfRange(format!(
            "shortest prefix is searched for 1 ≤ n ≤ {MAX_PREFIX_N}"
        )));
    }
    let r = rho(n)?.perm;
    let universe = enumerate_321_avoiders(n);
    if !contains_all(&r, &universe) {
        return Err(Error::Falsification(format!(
            "rho({n}) is not {n}-universal"
        )));
    }
    let mut len = r.len();
    while len > 0 && contains_all(&r.prefix(len - 1), &universe) {
        len -= 1;
    }
    Ok(ShortestPrefix {
        n,
        raw: r.values()[..len].to_vec(),
        perm: r.prefix(len),
    })
}
