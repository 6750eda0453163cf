//! Permutations in one-line notation, pattern containment, and 2-labellings.
//!
//! A permutation of length `n` is stored as its one-line notation, the values
//! `1..=n` in positional order. Positions in [`PatternWitness`] are 1-based so
//! they read the same way the one-line notation does.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Self { values })
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    /// Rank-compresses distinct values into a permutation of `1..=k`.
    pub fn standardize(values: &[usize]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut out = vec![0; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank + 1;
        }
        Self { values: out }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at a 0-based position.
    pub fn at(&self, index: usize) -> usize {
        self.values[index]
    }

    /// 0-based position of every value: `positions()[v - 1]` is where `v` sits.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v - 1] = i;
        }
        pos
    }

    /// The first `len` entries, standardized.
    pub fn prefix(&self, len: usize) -> Self {
        Self::standardize(&self.values[..len])
    }

    /// `self` followed by `other` with every value of `other` raised by `self.len()`.
    pub fn concat(&self, other: &Permutation) -> Self {
        let shift = self.len();
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|v| v + shift));
        Self { values }
    }

    /// `k`-fold concatenation; `power(0)` is the empty permutation.
    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::empty(), |acc, _| acc.concat(self))
    }

    /// Number of inversions; also the edge count of the permutation graph.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.values[i] > self.values[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Concatenated digits with values above 9 parenthesized, e.g. `6182(10)3`.
    pub fn to_compact_string(&self) -> String {
        let mut s = String::new();
        for &v in &self.values {
            if v > 9 {
                s.push_str(&format!("({v})"));
            } else {
                s.push_str(&v.to_string());
            }
        }
        s
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts whitespace-separated values (`5 1 7 2`) or the compact form
/// (`6182(10)3`). An empty or blank string is the empty permutation.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad value `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            parse_compact(s)?
        };
        Self::new(values)
    }
}

fn parse_compact(s: &str) -> Result<Vec<usize>> {
    let mut values = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
                let v = inner
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad group `({inner})`")))?;
                values.push(v);
            }
            d if d.is_ascii_digit() => values.push(d as usize - '0' as usize),
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(values)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Label {
    One,
    Two,
}

impl Label {
    pub fn other(self) -> Self {
        match self {
            Label::One => Label::Two,
            Label::Two => Label::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Label::One => 0,
            Label::Two => 1,
        }
    }
}

impl TryFrom<u8> for Label {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Label::One),
            2 => Ok(Label::Two),
            _ => Err(Error::InvalidLabelling(format!("label {v} is not 1 or 2"))),
        }
    }
}

impl From<Label> for u8 {
    fn from(l: Label) -> u8 {
        l.index() as u8 + 1
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// A permutation whose elements are split into two increasing subsequences.
///
/// `labels[v - 1]` is the label of value `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct LabelledPermutation {
    perm: Permutation,
    labels: Vec<Label>,
}

impl LabelledPermutation {
    /// `labels` is indexed by value.
    pub fn new(perm: Permutation, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != perm.len() {
            return Err(Error::InvalidLabelling(format!(
                "{} labels for a permutation of length {}",
                labels.len(),
                perm.len()
            )));
        }
        let mut last = [0usize; 2];
        for &v in perm.values() {
            let l = labels[v - 1].index();
            if v < last[l] {
                return Err(Error::InvalidLabelling(format!(
                    "{}-labelled values of {perm} are not increasing",
                    l + 1
                )));
            }
            last[l] = v;
        }
        Ok(Self { perm, labels })
    }

    /// `labels` is aligned with positions.
    pub fn from_position_labels(perm: Permutation, labels: &[Label]) -> Result<Self> {
        if labels.len() != perm.len() {
            return Err(Error::InvalidLabelling(format!(
                "{} labels for a permutation of length {}",
                labels.len(),
                perm.len()
            )));
        }
        let mut by_value = vec![Label::One; perm.len()];
        for (i, &v) in perm.values().iter().enumerate() {
            by_value[v - 1] = labels[i];
        }
        Self::new(perm, by_value)
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn label_of(&self, value: usize) -> Label {
        self.labels[value - 1]
    }

    pub fn labels_by_value(&self) -> &[Label] {
        &self.labels
    }

    pub fn position_labels(&self) -> Vec<Label> {
        self.perm
            .values()
            .iter()
            .map(|&v| self.labels[v - 1])
            .collect()
    }

    /// Values carrying `label`, in increasing order (which is also positional order).
    pub fn class(&self, label: Label) -> Vec<usize> {
        self.perm
            .values()
            .iter()
            .copied()
            .filter(|&v| self.labels[v - 1] == label)
            .collect()
    }

    /// Same permutation with every label flipped.
    pub fn swapped(&self) -> Self {
        Self {
            perm: self.perm.clone(),
            labels: self.labels.iter().map(|l| l.other()).collect(),
        }
    }

    pub fn concat(&self, other: &LabelledPermutation) -> Self {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Self {
            perm: self.perm.concat(&other.perm),
            labels,
        }
    }

    pub fn power(&self, k: usize) -> Self {
        let empty = Self {
            perm: Permutation::empty(),
            labels: Vec::new(),
        };
        (0..k).fold(empty, |acc, _| acc.concat(self))
    }

    /// Two lines: the permutation, then the labels aligned with positions.
    pub fn to_text(&self) -> String {
        let labels: Vec<String> = self
            .position_labels()
            .iter()
            .map(|l| l.to_string())
            .collect();
        format!("{}\n{}", self.perm, labels.join(" "))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let perm: Permutation = lines.next().unwrap_or("").parse()?;
        let labels = lines
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad label `{t}`")))
                    .and_then(Label::try_from)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_position_labels(perm, &labels)
    }
}

impl fmt::Display for LabelledPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &v in self.perm.values() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}^{}", self.labels[v - 1])?;
            first = false;
        }
        Ok(())
    }
}

/// 1-based positions in the text permutation of one pattern occurrence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PatternWitness {
    pub positions: Vec<usize>,
}

impl PatternWitness {
    /// Text values at the witness positions.
    pub fn values(&self, text: &Permutation) -> Vec<usize> {
        self.positions.iter().map(|&p| text.at(p - 1)).collect()
    }

    pub fn validate(&self, text: &Permutation, pattern: &Permutation) -> bool {
        self.positions.len() == pattern.len()
            && self.positions.windows(2).all(|w| w[0] < w[1])
            && self.positions.iter().all(|&p| p >= 1 && p <= text.len())
            && Permutation::standardize(&self.values(text)) == *pattern
    }

    pub fn validate_labelled(
        &self,
        text: &LabelledPermutation,
        pattern: &LabelledPermutation,
    ) -> bool {
        self.validate(text.perm(), pattern.perm())
            && self
                .positions
                .iter()
                .zip(pattern.perm().values())
                .all(|(&p, &v)| text.label_of(text.perm().at(p - 1)) == pattern.label_of(v))
    }
}

/// Backtracking matcher over text positions. Each pattern entry is checked
/// against the already matched entries closest to it in value, which pins
/// down order isomorphism incrementally.
struct Matcher<'a> {
    text: &'a [usize],
    pattern: &'a [usize],
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(text: &'a [usize], pattern: &'a [usize]) -> Self {
        let k = pattern.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for j in 0..k {
            for i in 0..j {
                if pattern[i] < pattern[j] {
                    if below[j].is_none_or(|b: usize| pattern[b] < pattern[i]) {
                        below[j] = Some(i);
                    }
                } else if above[j].is_none_or(|a: usize| pattern[a] > pattern[i]) {
                    above[j] = Some(i);
                }
            }
        }
        Self {
            text,
            pattern,
            below,
            above,
        }
    }

    /// Visits occurrences in lexicographic order of their (0-based) positions.
    fn search<C, V>(&self, compatible: &C, visit: &mut V) -> ControlFlow<()>
    where
        C: Fn(usize, usize) -> bool,
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut chosen = Vec::with_capacity(self.pattern.len());
        self.extend(0, &mut chosen, compatible, visit)
    }

    fn extend<C, V>(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        compatible: &C,
        visit: &mut V,
    ) -> ControlFlow<()>
    where
        C: Fn(usize, usize) -> bool,
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let j = chosen.len();
        if j == self.pattern.len() {
            return visit(chosen);
        }
        let lo = self.below[j].map_or(0, |b| self.text[chosen[b]]);
        let hi = self.above[j].map_or(usize::MAX, |a| self.text[chosen[a]]);
        let remaining = self.pattern.len() - j;
        if self.text.len() < start + remaining {
            return ControlFlow::Continue(());
        }
        for pos in start..=self.text.len() - remaining {
            let v = self.text[pos];
            if v <= lo || v >= hi || !compatible(j, pos) {
                continue;
            }
            chosen.push(pos);
            if self.suffix_feasible(chosen, compatible) {
                let flow = self.extend(pos + 1, chosen, compatible, visit);
                chosen.pop();
                flow?;
            } else {
                chosen.pop();
            }
        }
        ControlFlow::Continue(())
    }
}

impl Matcher<'_> {
    /// Necessary condition for extending `chosen`: place each remaining
    /// pattern entry at the leftmost later position whose value fits the
    /// window set by the chosen entries alone. Leftmost placement is exact
    /// for that relaxed problem, so a failure here rules out every extension.
    fn suffix_feasible<C>(&self, chosen: &[usize], compatible: &C) -> bool
    where
        C: Fn(usize, usize) -> bool,
    {
        let mut pos = chosen.last().map_or(0, |p| p + 1);
        for j in chosen.len()..self.pattern.len() {
            let (mut lo, mut hi) = (0, usize::MAX);
            for (i, &c) in chosen.iter().enumerate() {
                let v = self.text[c];
                if self.pattern[i] < self.pattern[j] {
                    lo = lo.max(v);
                } else {
                    hi = hi.min(v);
                }
            }
            match (pos..self.text.len()).find(|&p| {
                let v = self.text[p];
                v > lo && v < hi && compatible(j, p)
            }) {
                Some(p) => pos = p + 1,
                None => return false,
            }
        }
        true
    }
}

fn first_occurrence<C>(text: &[usize], pattern: &[usize], compatible: C) -> Option<PatternWitness>
where
    C: Fn(usize, usize) -> bool,
{
    let mut found = None;
    let _ = Matcher::new(text, pattern).search(&compatible, &mut |occ: &[usize]| {
        found = Some(PatternWitness {
            positions: occ.iter().map(|p| p + 1).collect(),
        });
        ControlFlow::Break(())
    });
    found
}

/// Lexicographically smallest occurrence of `pattern` in `text`, if any.
pub fn contains_pattern(text: &Permutation, pattern: &Permutation) -> Option<PatternWitness> {
    first_occurrence(text.values(), pattern.values(), |_, _| true)
}

/// Like [`contains_pattern`], but each pattern element must land on a text
/// element with the same label.
pub fn contains_labelled_pattern(
    text: &LabelledPermutation,
    pattern: &LabelledPermutation,
) -> Option<PatternWitness> {
    let (tv, pv) = (text.perm().values(), pattern.perm().values());
    first_occurrence(tv, pv, |j, pos| {
        text.label_of(tv[pos]) == pattern.label_of(pv[j])
    })
}

/// Every labelled occurrence in lexicographic order until `visit` breaks.
pub fn for_each_labelled_occurrence<V>(
    text: &LabelledPermutation,
    pattern: &LabelledPermutation,
    mut visit: V,
) where
    V: FnMut(&PatternWitness) -> ControlFlow<()>,
{
    let (tv, pv) = (text.perm().values(), pattern.perm().values());
    let compatible = |j: usize, pos: usize| text.label_of(tv[pos]) == pattern.label_of(pv[j]);
    let _ = Matcher::new(tv, pv).search(&compatible, &mut |occ: &[usize]| {
        visit(&PatternWitness {
            positions: occ.iter().map(|p| p + 1).collect(),
        })
    });
}

/// True iff `p` has no decreasing subsequence of length 3.
///
/// Decided by greedily packing the values into increasing runs (patience
/// sorting); the number of runs equals the longest decreasing subsequence.
pub fn is_321_avoiding(p: &Permutation) -> bool {
    let fast = splits_into_two_increasing(p);
    debug_assert!(
        p.len() > 12
            || fast
                == contains_pattern(
                    p,
                    &Permutation {
                        values: vec![3, 2, 1]
                    }
                )
                .is_none()
    );
    fast
}

/// Greedy partition into at most two increasing subsequences.
pub fn splits_into_two_increasing(p: &Permutation) -> bool {
    // Tails of the two runs, high >= low; each value extends the run with
    // the largest tail below it.
    let (mut high, mut low): (Option<usize>, Option<usize>) = (None, None);
    for &v in p.values() {
        if high.is_none_or(|h| h < v) {
            high = Some(v);
        } else if low.is_none_or(|l| l < v) {
            low = Some(v);
        } else {
            return false;
        }
    }
    true
}

/// All of `S_n(321)` in lexicographic order, grown from `S_{n-1}(321)` by
/// inserting `n` anywhere right of `n - 1`, or by replacing `n - 1` with `n`
/// and appending `n - 1`.
pub fn enumerate_321_avoiders(n: usize) -> Vec<Permutation> {
    let mut level = vec![Permutation::empty()];
    for m in 1..=n {
        let mut next = Vec::new();
        for p in &level {
            let start = if m == 1 {
                0
            } else {
                p.values().iter().position(|&v| v == m - 1).unwrap() + 1
            };
            for at in start..=p.len() {
                let mut values = p.values().to_vec();
                values.insert(at, m);
                next.push(Permutation { values });
            }
            if m >= 2 {
                let mut values: Vec<usize> = p
                    .values()
                    .iter()
                    .map(|&v| if v == m - 1 { m } else { v })
                    .collect();
                values.push(m - 1);
                next.push(Permutation { values });
            }
        }
        level = next;
    }
    let produced = level.len();
    let set: BTreeSet<Permutation> = level.into_iter().collect();
    assert_eq!(
        set.len(),
        produced,
        "321-avoider generation produced duplicates"
    );
    set.into_iter().collect()
}

/// Connected components of the permutation graph, as sorted value lists
/// ordered by smallest value.
#[allow(clippy::needless_range_loop)]
pub(crate) fn inversion_components(p: &Permutation) -> Vec<Vec<usize>> {
    let n = p.len();
    let pos = p.positions();
    let crosses = |a: usize, b: usize| (a < b) == (pos[a - 1] > pos[b - 1]);
    let mut seen = vec![false; n + 1];
    let mut comps = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for b in 1..=n {
                if b != a && !seen[b] && crosses(a, b) {
                    seen[b] = true;
                    comp.push(b);
                    queue.push_back(b);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// All 2-labellings of a 321-avoiding permutation.
///
/// A labelling is valid iff no inversion lies inside a class, i.e. it is a
/// proper 2-colouring of the permutation graph. There are `2^c` of them for
/// `c` components; the first in the list gives the smallest value of each
/// component label 1, and subsequent ones flip components by bitmask.
pub fn labellings_of(p: &Permutation) -> Result<Vec<LabelledPermutation>> {
    if !is_321_avoiding(p) {
        return Err(Error::Not321Avoiding(p.to_string()));
    }
    let n = p.len();
    let pos = p.positions();
    let comps = inversion_components(p);
    let mut base = vec![Label::One; n];
    for comp in &comps {
        let mut queue = VecDeque::from([comp[0]]);
        let mut done = vec![false; n + 1];
        done[comp[0]] = true;
        while let Some(a) = queue.pop_front() {
            for &b in comp {
                if !done[b] && (a < b) == (pos[a - 1] > pos[b - 1]) {
                    done[b] = true;
                    base[b - 1] = base[a - 1].other();
                    queue.push_back(b);
                }
            }
        }
    }
    let c = comps.len();
    if c > 24 {
        return Err(Error::OutOfRange(format!("{p} has 2^{c} labellings")));
    }
    let mut out = Vec::with_capacity(1 << c);
    for mask in 0u64..(1u64 << c) {
        let mut labels = base.clone();
        for (k, comp) in comps.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for &v in comp {
                    labels[v - 1] = labels[v - 1].other();
                }
            }
        }
        out.push(LabelledPermutation::new(p.clone(), labels)?);
    }
    Ok(out)
}

/// Every labelled 321-avoiding permutation of length `n`.
pub fn enumerate_labelled_321_avoiders(n: usize) -> Vec<LabelledPermutation> {
    enumerate_321_avoiders(n)
        .iter()
        .flat_map(|p| labellings_of(p).expect("enumerated permutations avoid 321"))
        .collect()
}

pub fn concat(p1: &Permutation, p2: &Permutation) -> Permutation {
    p1.concat(p2)
}

pub fn power(p: &Permutation, k: usize) -> Permutation {
    p.power(k)
}
