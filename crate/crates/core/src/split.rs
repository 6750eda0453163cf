//! Vicinal quasi-order, Dilworth number, threshold and split recognition,
//! four-partitions of split permutation graphs, and the symmetric extension.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{is_induced_embedding, Graph, PartitionJson, VertexMap};

/// `N(x) ⊆ N(y) ∪ {y}`, by vertex identity.
pub fn vicinal_leq(g: &Graph, x: &str, y: &str) -> Result<bool> {
    Ok(g.neighborhood_within(g.index_of(x)?, g.index_of(y)?))
}

pub fn vicinal_comparable(g: &Graph, x: usize, y: usize) -> bool {
    g.neighborhood_within(x, y) || g.neighborhood_within(y, x)
}

fn incomparability(g: &Graph, vertices: &[usize]) -> Vec<FixedBitSet> {
    let k = vertices.len();
    let mut rows = vec![FixedBitSet::with_capacity(k); k];
    for a in 0..k {
        for b in a + 1..k {
            if !vicinal_comparable(g, vertices[a], vertices[b]) {
                rows[a].insert(b);
                rows[b].insert(a);
            }
        }
    }
    rows
}

/// Largest vicinal antichain: a maximum clique of the incomparability graph,
/// found by branch and bound.
pub fn dilworth_number(g: &Graph) -> usize {
    let all: Vec<usize> = (0..g.order()).collect();
    let inc = incomparability(g, &all);
    let mut best = 0;
    let mut cand = FixedBitSet::with_capacity(all.len());
    cand.insert_range(..);
    max_clique(&inc, 0, cand, &mut best);
    best
}

fn max_clique(adj: &[FixedBitSet], size: usize, cand: FixedBitSet, best: &mut usize) {
    let remaining = cand.count_ones(..);
    if remaining == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + remaining <= *best {
        return;
    }
    let mut cand = cand;
    while let Some(v) = cand.minimum() {
        if size + cand.count_ones(..) <= *best {
            return;
        }
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        max_clique(adj, size + 1, next, best);
        cand.set(v, false);
    }
}

/// Fewest vicinal chains covering all vertices: the chromatic number of the
/// incomparability graph, by exhaustive colouring. Intended for small graphs.
pub fn min_chain_partition(g: &Graph) -> usize {
    let all: Vec<usize> = (0..g.order()).collect();
    let inc = incomparability(g, &all);
    let n = all.len();
    (0..=n)
        .find(|&k| {
            let mut colour = vec![usize::MAX; n];
            colourable(&inc, k, 0, &mut colour)
        })
        .unwrap_or(n)
}

fn colourable(adj: &[FixedBitSet], k: usize, v: usize, colour: &mut [usize]) -> bool {
    if v == colour.len() {
        return true;
    }
    // Colours are used in order of first appearance to skip symmetric branches.
    let used = colour[..v].iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..k.min(used + 1) {
        if adj[v].ones().all(|u| u >= v || colour[u] != c) {
            colour[v] = c;
            if colourable(adj, k, v + 1, colour) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

/// Every pair of vertices is vicinal-comparable.
pub fn is_threshold(g: &Graph) -> bool {
    (0..g.order()).all(|x| (x + 1..g.order()).all(|y| vicinal_comparable(g, x, y)))
}

/// Every pair of `vertices` is vicinal-comparable.
pub fn is_vicinal_chain(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(a, &x)| {
        vertices[a + 1..]
            .iter()
            .all(|&y| vicinal_comparable(g, x, y))
    })
}

/// Clique `C` and independent set `I` covering the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
}

impl SplitPartition {
    pub fn validate(&self, g: &Graph) -> bool {
        let mut seen = FixedBitSet::with_capacity(g.order());
        for &v in self.clique.iter().chain(&self.independent) {
            if v >= g.order() || seen.put(v) {
                return false;
            }
        }
        seen.count_ones(..) == g.order()
            && pairwise(&self.clique, |u, v| g.has_edge(u, v))
            && pairwise(&self.independent, |u, v| !g.has_edge(u, v))
    }
}

fn pairwise(set: &[usize], rel: impl Fn(usize, usize) -> bool) -> bool {
    set.iter()
        .enumerate()
        .all(|(a, &u)| set[a + 1..].iter().all(|&v| rel(u, v)))
}

/// A split partition, or `None` when the graph is not split.
///
/// The greedy step takes the `m` highest-degree vertices as the clique, `m`
/// being the largest `i` with `d_i ≥ i - 1`; when that candidate fails, small
/// graphs fall back to backtracking over clique/independent assignments.
pub fn is_split(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = order
        .iter()
        .enumerate()
        .filter(|&(i, &v)| g.degree(v) >= i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let mut clique = order[..m].to_vec();
    let mut independent = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    let greedy = SplitPartition {
        clique,
        independent,
    };
    if greedy.validate(g) {
        return Some(greedy);
    }
    if g.order() <= 16 {
        split_by_backtracking(g)
    } else {
        None
    }
}

/// Exhaustive clique/independent assignment in degree order.
pub fn split_by_backtracking(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique = Vec::new();
    let mut independent = Vec::new();
    if assign_sides(g, &order, &mut clique, &mut independent) {
        clique.sort_unstable();
        independent.sort_unstable();
        Some(SplitPartition {
            clique,
            independent,
        })
    } else {
        None
    }
}

fn assign_sides(
    g: &Graph,
    order: &[usize],
    clique: &mut Vec<usize>,
    independent: &mut Vec<usize>,
) -> bool {
    let Some((&v, rest)) = order.split_first() else {
        return true;
    };
    if clique.iter().all(|&u| g.has_edge(u, v)) {
        clique.push(v);
        if assign_sides(g, rest, clique, independent) {
            return true;
        }
        clique.pop();
    }
    if independent.iter().all(|&u| !g.has_edge(u, v)) {
        independent.push(v);
        if assign_sides(g, rest, clique, independent) {
            return true;
        }
        independent.pop();
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    C1,
    C2,
    I1,
    I2,
}

impl VertexClass {
    pub fn is_clique(self) -> bool {
        matches!(self, VertexClass::C1 | VertexClass::C2)
    }

    /// 0 for side 1, 1 for side 2.
    pub fn side(self) -> usize {
        match self {
            VertexClass::C1 | VertexClass::I1 => 0,
            VertexClass::C2 | VertexClass::I2 => 1,
        }
    }

    pub fn clique_of(side: usize) -> Self {
        [VertexClass::C1, VertexClass::C2][side]
    }

    pub fn independent_of(side: usize) -> Self {
        [VertexClass::I1, VertexClass::I2][side]
    }
}

/// A split graph with its clique and independent set each divided in two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledSplitGraph {
    pub graph: Graph,
    classes: Vec<VertexClass>,
}

impl LabelledSplitGraph {
    /// Checks the split partition and that `G[C¹∪I]`, `G[C²∪I]`, `G[C∪I¹]`
    /// and `G[C∪I²]` are threshold.
    pub fn new(graph: Graph, classes: Vec<VertexClass>) -> Result<Self> {
        let lg = Self::unchecked(graph, classes)?;
        lg.check_conditions().map_err(Error::NotSymmetric)?;
        Ok(lg)
    }

    pub(crate) fn unchecked(graph: Graph, classes: Vec<VertexClass>) -> Result<Self> {
        if classes.len() != graph.order() {
            return Err(Error::InvalidGraph(format!(
                "{} classes for {} vertices",
                classes.len(),
                graph.order()
            )));
        }
        Ok(Self { graph, classes })
    }

    pub fn class_of(&self, v: usize) -> VertexClass {
        self.classes[v]
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn members(&self, class: VertexClass) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&v| self.classes[v] == class)
            .collect()
    }

    pub fn clique(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&v| self.classes[v].is_clique())
            .collect()
    }

    pub fn independent(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&v| !self.classes[v].is_clique())
            .collect()
    }

    pub fn split_partition(&self) -> SplitPartition {
        SplitPartition {
            clique: self.clique(),
            independent: self.independent(),
        }
    }

    /// Split partition plus the four threshold conditions.
    pub fn check_conditions(&self) -> std::result::Result<(), String> {
        if !self.split_partition().validate(&self.graph) {
            return Err("C is not a clique or I is not independent".into());
        }
        let (c, i) = (self.clique(), self.independent());
        for side in 0..2 {
            let cj = self.members(VertexClass::clique_of(side));
            let ij = self.members(VertexClass::independent_of(side));
            let with_i: Vec<usize> = cj.iter().chain(&i).copied().collect();
            if !is_threshold(&self.graph.induced_subgraph(&with_i)) {
                return Err(format!("G[C{} ∪ I] is not threshold", side + 1));
            }
            let with_c: Vec<usize> = c.iter().chain(&ij).copied().collect();
            if !is_threshold(&self.graph.induced_subgraph(&with_c)) {
                return Err(format!("G[C ∪ I{}] is not threshold", side + 1));
            }
        }
        Ok(())
    }

    pub fn partition_json(&self) -> PartitionJson {
        let ids = |class| {
            self.members(class)
                .into_iter()
                .map(|v| self.graph.id(v).to_string())
                .collect()
        };
        PartitionJson {
            c1: ids(VertexClass::C1),
            c2: ids(VertexClass::C2),
            i1: ids(VertexClass::I1),
            i2: ids(VertexClass::I2),
        }
    }

    pub fn from_partition_json(graph: Graph, p: &PartitionJson) -> Result<Self> {
        let mut classes = vec![None; graph.order()];
        let groups = [
            (&p.c1, VertexClass::C1),
            (&p.c2, VertexClass::C2),
            (&p.i1, VertexClass::I1),
            (&p.i2, VertexClass::I2),
        ];
        for (ids, class) in groups {
            for id in ids {
                let v = graph.index_of(id)?;
                if classes[v].replace(class).is_some() {
                    return Err(Error::InvalidGraph(format!("`{id}` in two classes")));
                }
            }
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(v, c)| {
                c.ok_or_else(|| Error::InvalidGraph(format!("`{}` unclassified", graph.id(v))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, classes)
    }
}

/// A labelled split graph whose sides each induce a universal threshold
/// graph, with the orderings exhibiting it: within side `j`, the `k`-th
/// independent vertex sees exactly the first `k` clique vertices of that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricWitness {
    pub labelled: LabelledSplitGraph,
    pub clique_order: [Vec<usize>; 2],
    pub independent_order: [Vec<usize>; 2],
}

impl SymmetricWitness {
    /// Derives the orderings, or explains why the sides are not universal
    /// threshold graphs.
    pub fn find(lg: &LabelledSplitGraph) -> std::result::Result<Self, String> {
        let g = &lg.graph;
        let mut clique_order: [Vec<usize>; 2] = Default::default();
        let mut independent_order: [Vec<usize>; 2] = Default::default();
        for side in 0..2 {
            let mut cj = lg.members(VertexClass::clique_of(side));
            let mut ij = lg.members(VertexClass::independent_of(side));
            if cj.len() != ij.len() {
                return Err(format!(
                    "side {}: |C| = {} but |I| = {}",
                    side + 1,
                    cj.len(),
                    ij.len()
                ));
            }
            let mut in_c = FixedBitSet::with_capacity(g.order());
            cj.iter().for_each(|&c| in_c.insert(c));
            let mut in_i = FixedBitSet::with_capacity(g.order());
            ij.iter().for_each(|&i| in_i.insert(i));
            let deg_within = |v: usize, set: &FixedBitSet| g.neighbors(v).intersection(set).count();
            cj.sort_by_key(|&c| (std::cmp::Reverse(deg_within(c, &in_i)), c));
            ij.sort_by_key(|&i| (deg_within(i, &in_c), i));
            for (k, &i) in ij.iter().enumerate() {
                for (s, &c) in cj.iter().enumerate() {
                    if g.has_edge(i, c) != (s <= k) {
                        return Err(format!(
                            "side {}: `{}` is not a universal threshold graph member",
                            side + 1,
                            g.id(i)
                        ));
                    }
                }
            }
            clique_order[side] = cj;
            independent_order[side] = ij;
        }
        Ok(Self {
            labelled: lg.clone(),
            clique_order,
            independent_order,
        })
    }
}

/// Universal threshold graph on `2n` vertices: clique `c1..cn`, independent
/// `i1..in`, with `N(ij) = {c1, ..., cj}`. Everything sits on side 1.
pub fn universal_threshold(n: usize) -> SymmetricWitness {
    let ids = (1..=n)
        .map(|k| format!("c{k}"))
        .chain((1..=n).map(|k| format!("i{k}")));
    let mut g = Graph::new(ids).expect("distinct ids");
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b);
        }
    }
    for j in 0..n {
        for s in 0..=j {
            g.add_edge(n + j, s);
        }
    }
    let classes = (0..2 * n)
        .map(|v| {
            if v < n {
                VertexClass::C1
            } else {
                VertexClass::I1
            }
        })
        .collect();
    let labelled = LabelledSplitGraph::unchecked(g, classes).expect("sized");
    SymmetricWitness {
        labelled,
        clique_order: [(0..n).collect(), Vec::new()],
        independent_order: [(n..2 * n).collect(), Vec::new()],
    }
}

/// 1-based slots in a universal threshold graph for the vertices of a
/// threshold split graph `(clique, independent)`, such that an independent
/// vertex in slot `k` is adjacent to a clique vertex in slot `s` iff `s ≤ k`.
///
/// Clique vertices go in decreasing neighbourhood order, independent ones in
/// increasing order; each independent vertex of clique-degree `d` is placed
/// after the `d`-th clique vertex. A single counter across both lists hands
/// out slots, so `|clique| + |independent|` slots suffice per side. Ties are
/// broken by total degree, which keeps the slot order consistent with the
/// neighbourhoods outside this side.
fn threshold_slots(g: &Graph, clique: &[usize], independent: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut in_c = FixedBitSet::with_capacity(g.order());
    clique.iter().for_each(|&c| in_c.insert(c));
    let mut cs = clique.to_vec();
    cs.sort_by_key(|&c| (std::cmp::Reverse(g.degree(c)), c));
    let mut is = independent.to_vec();
    let clique_deg = |i: usize| g.neighbors(i).intersection(&in_c).count();
    is.sort_by_key(|&i| (clique_deg(i), g.degree(i), i));

    let mut c_slot = vec![0; g.order()];
    let mut i_slot = vec![0; g.order()];
    let mut counter = 0;
    let mut next_i = 0;
    for r in 0..=cs.len() {
        while next_i < is.len() && clique_deg(is[next_i]) == r {
            counter += 1;
            i_slot[is[next_i]] = counter;
            next_i += 1;
        }
        if r < cs.len() {
            counter += 1;
            c_slot[cs[r]] = counter;
        }
    }
    (c_slot, i_slot)
}

/// Side-preserving embedding of a threshold split graph into
/// `universal_threshold(|clique| + |independent|)`.
pub fn embed_threshold(g: &Graph, split: &SplitPartition) -> Result<VertexMap> {
    if !split.validate(g) || !is_threshold(g) {
        return Err(Error::InvalidGraph("not a threshold split graph".into()));
    }
    let (c_slot, i_slot) = threshold_slots(g, &split.clique, &split.independent);
    let n = g.order();
    let host = universal_threshold(n);
    let map: Vec<usize> = (0..n)
        .map(|v| {
            if split.clique.contains(&v) {
                c_slot[v] - 1
            } else {
                n + i_slot[v] - 1
            }
        })
        .collect();
    let host = &host.labelled.graph;
    if !is_induced_embedding(g, host, &map) {
        return Err(Error::Falsification(
            "threshold slot assignment is not induced".into(),
        ));
    }
    Ok(VertexMap::from_indices(g, host, &map))
}

/// Splits `vertices` into two vicinal chains by 2-colouring their
/// incomparability graph; the smallest vertex of each component gets side 1.
fn two_chains(g: &Graph, vertices: &[usize]) -> Option<Vec<usize>> {
    let inc = incomparability(g, vertices);
    let mut side = vec![usize::MAX; vertices.len()];
    for s in 0..vertices.len() {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for b in inc[a].ones() {
                if side[b] == usize::MAX {
                    side[b] = 1 - side[a];
                    queue.push_back(b);
                } else if side[b] == side[a] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// A four-partition `(C¹, C², I¹, I²)` satisfying the threshold conditions,
/// or `None` when `g` is not split or has Dilworth number at least 3.
pub fn find_four_partition(g: &Graph) -> Option<LabelledSplitGraph> {
    let split = is_split(g)?;
    let c_sides = two_chains(g, &split.clique)?;
    let i_sides = two_chains(g, &split.independent)?;
    let mut classes = vec![VertexClass::C1; g.order()];
    for (k, &c) in split.clique.iter().enumerate() {
        classes[c] = VertexClass::clique_of(c_sides[k]);
    }
    for (k, &i) in split.independent.iter().enumerate() {
        classes[i] = VertexClass::independent_of(i_sides[k]);
    }
    let lg = LabelledSplitGraph::unchecked(g.clone(), classes).expect("sized");
    if let Err(why) = lg.check_conditions() {
        panic!("two vicinal chains per side must satisfy the threshold conditions: {why}");
    }
    Some(lg)
}

fn slot_id(class: VertexClass, slot: usize) -> String {
    let (letter, side) = match class {
        VertexClass::C1 => ('c', 1),
        VertexClass::C2 => ('c', 2),
        VertexClass::I1 => ('i', 1),
        VertexClass::I2 => ('i', 2),
    };
    format!("{letter}{side}.{slot}")
}

/// Extends a labelled split permutation graph on `n` vertices to a symmetric
/// one on `2n` vertices that contains it as an induced subgraph.
///
/// Side `j` becomes the universal threshold graph on `2 n_j` vertices with
/// `n_j = |C^j| + |I^j|`. Cross edges between `I¹` and `C²` are then closed
/// downward: slot `k` of `I¹` sees slot `s` of `C²` whenever some original
/// edge joins a slot `k' ≤ k` to a slot `j' ≥ s`; the same rule links `I²`
/// and `C¹`. New vertices are named `c1.k`, `i2.k`, ... by class and slot;
/// the returned map sends each original vertex to its slot.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_extension(lg: &LabelledSplitGraph) -> Result<(SymmetricWitness, VertexMap)> {
    let g = &lg.graph;
    let n = g.order();
    let mut slots = vec![0; n];
    let mut sizes = [0; 2];
    for side in 0..2 {
        let cj = lg.members(VertexClass::clique_of(side));
        let ij = lg.members(VertexClass::independent_of(side));
        sizes[side] = cj.len() + ij.len();
        let (c_slot, i_slot) = threshold_slots(g, &cj, &ij);
        for &c in &cj {
            slots[c] = c_slot[c];
        }
        for &i in &ij {
            slots[i] = i_slot[i];
        }
    }

    // Vertex layout: for each side, its clique slots then its independent slots.
    let mut ids = Vec::with_capacity(2 * n);
    let mut offset = [[0; 2]; 2];
    for side in 0..2 {
        offset[side][0] = ids.len();
        ids.extend((1..=sizes[side]).map(|k| slot_id(VertexClass::clique_of(side), k)));
        offset[side][1] = ids.len();
        ids.extend((1..=sizes[side]).map(|k| slot_id(VertexClass::independent_of(side), k)));
    }
    let c_at = |side: usize, slot: usize| offset[side][0] + slot - 1;
    let i_at = |side: usize, slot: usize| offset[side][1] + slot - 1;

    let mut out = Graph::new(ids)?;
    let mut classes = Vec::with_capacity(2 * n);
    for side in 0..2 {
        classes.extend(std::iter::repeat_n(
            VertexClass::clique_of(side),
            sizes[side],
        ));
        classes.extend(std::iter::repeat_n(
            VertexClass::independent_of(side),
            sizes[side],
        ));
    }
    let clique: Vec<usize> = (0..2 * n).filter(|&v| classes[v].is_clique()).collect();
    for (a, &u) in clique.iter().enumerate() {
        for &v in &clique[a + 1..] {
            out.add_edge(u, v);
        }
    }
    for side in 0..2 {
        for k in 1..=sizes[side] {
            for s in 1..=k {
                out.add_edge(i_at(side, k), c_at(side, s));
            }
        }
    }
    for side in 0..2 {
        let other = 1 - side;
        // reach[k] = largest clique slot on the other side joined to an
        // independent slot ≤ k by an original edge.
        let mut reach = vec![0; sizes[side] + 1];
        for i in lg.members(VertexClass::independent_of(side)) {
            for c in g.neighbors(i).ones() {
                if lg.class_of(c) == VertexClass::clique_of(other) {
                    let k = slots[i];
                    reach[k] = reach[k].max(slots[c]);
                }
            }
        }
        for k in 1..=sizes[side] {
            reach[k] = reach[k].max(reach[k - 1]);
            for s in 1..=reach[k] {
                out.add_edge(i_at(side, k), c_at(other, s));
            }
        }
    }

    let map: Vec<usize> = (0..n)
        .map(|v| {
            let class = lg.class_of(v);
            if class.is_clique() {
                c_at(class.side(), slots[v])
            } else {
                i_at(class.side(), slots[v])
            }
        })
        .collect();
    if !is_induced_embedding(g, &out, &map) {
        return Err(Error::Falsification(
            "symmetric extension added an edge between original vertices".into(),
        ));
    }
    let labelled = LabelledSplitGraph::unchecked(out, classes)?;
    labelled
        .check_conditions()
        .map_err(|why| Error::Falsification(format!("symmetric extension: {why}")))?;
    let witness = SymmetricWitness::find(&labelled)
        .map_err(|why| Error::Falsification(format!("symmetric extension: {why}")))?;
    let vmap = VertexMap::from_indices(g, &labelled.graph, &map);
    Ok((witness, vmap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{find_induced_embedding, graphs_isomorphic, permutation_graph};
    use crate::perm::Permutation;
    use itertools::Itertools;

    /// Every split graph with clique size `k` and independent size `m`,
    /// one per bipartite edge mask. Vertices `0..k` form the clique.
    pub(crate) fn split_graphs(k: usize, m: usize) -> Vec<Graph> {
        let cross: Vec<(usize, usize)> = (0..m).cartesian_product(0..k).collect();
        (0u64..1 << cross.len())
            .map(|mask| {
                let mut g = complete(k);
                for _ in 0..m {
                    g.add_vertex(format!("{}", g.order() + 1)).unwrap();
                }
                for (b, &(i, c)) in cross.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        g.add_edge(k + i, c);
                    }
                }
                g
            })
            .collect()
    }

    fn brute_dilworth(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|mask| {
                let set: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                pairwise(&set, |x, y| !vicinal_comparable(g, x, y))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn p4_split() -> Graph {
        path(4)
    }

    #[test]
    fn vicinal_examples() {
        let g = p4_split();
        assert!(vicinal_leq(&g, "2", "2").unwrap());
        assert!(!vicinal_leq(&g, "1", "4").unwrap());
        assert!(!vicinal_leq(&g, "4", "1").unwrap());
        assert!(vicinal_leq(&g, "1", "9").is_err());

        let ut = universal_threshold(5);
        assert!(vicinal_leq(&ut.labelled.graph, "i1", "i5").unwrap());
        assert!(!vicinal_leq(&ut.labelled.graph, "i5", "i1").unwrap());
    }

    #[test]
    fn dilworth_examples() {
        for n in 1..=6 {
            assert_eq!(dilworth_number(&universal_threshold(n).labelled.graph), 1);
        }
        assert_eq!(dilworth_number(&p4_split()), 2);
        assert_eq!(brute_dilworth(&p4_split()), 2);
        for k in 1..=5 {
            assert_eq!(dilworth_number(&empty(k)), 1);
        }
        assert_eq!(dilworth_number(&empty(0)), 0);
    }

    #[test]
    fn dilworth_matches_brute_force_and_chain_cover() {
        for (k, m) in [(2, 3), (3, 3), (4, 3), (3, 4)] {
            for g in split_graphs(k, m).iter().step_by(3) {
                let d = dilworth_number(g);
                assert_eq!(d, brute_dilworth(g));
                assert_eq!(d, min_chain_partition(g));
            }
        }
    }

    #[test]
    fn threshold_and_split_examples() {
        assert!(is_threshold(&universal_threshold(5).labelled.graph));
        assert!(is_split(&cycle(4)).is_none());
        assert!(split_by_backtracking(&cycle(4)).is_none());
        assert!(!is_threshold(&p4_split()));
        let sp = is_split(&p4_split()).unwrap();
        assert_eq!(sp.clique, vec![1, 2]);
        assert_eq!(sp.independent, vec![0, 3]);
        assert!(is_split(&cycle(5)).is_none());
        assert!(is_split(&empty(0)).is_some());
    }

    #[test]
    fn greedy_split_agrees_with_backtracking() {
        let pairs: Vec<(usize, usize)> = (0..6).tuple_combinations().collect();
        for mask in (0u32..1 << pairs.len()).step_by(13) {
            let mut g = Graph::with_order(6);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            let greedy = is_split(&g);
            assert_eq!(greedy.is_some(), split_by_backtracking(&g).is_some());
            if let Some(sp) = greedy {
                assert!(sp.validate(&g));
            }
        }
    }

    #[test]
    fn threshold_iff_dilworth_one() {
        for total in 1..=7 {
            for k in 0..=total {
                for g in split_graphs(k, total - k) {
                    assert_eq!(is_threshold(&g), dilworth_number(&g) == 1);
                }
            }
        }
    }

    #[test]
    fn one_chain_side_makes_the_whole_graph_a_chain() {
        for total in 1..=7 {
            for k in 0..=total {
                let clique: Vec<usize> = (0..k).collect();
                let independent: Vec<usize> = (k..total).collect();
                for g in split_graphs(k, total - k) {
                    if is_vicinal_chain(&g, &clique) || is_vicinal_chain(&g, &independent) {
                        assert!(is_threshold(&g));
                    }
                }
            }
        }
    }

    #[test]
    fn universal_threshold_shape() {
        let ut = universal_threshold(5);
        let g = &ut.labelled.graph;
        assert_eq!(g.order(), 10);
        let i5 = g.index_of("i5").unwrap();
        let i1 = g.index_of("i1").unwrap();
        assert_eq!(g.degree(i5), 5);
        assert_eq!(g.degree(i1), 1);
        assert!(g.has_edge(i1, g.index_of("c1").unwrap()));
        assert_eq!(SymmetricWitness::find(&ut.labelled).unwrap(), ut);
        assert!(ut.labelled.check_conditions().is_ok());

        assert_eq!(universal_threshold(0).labelled.graph.order(), 0);
        let one = universal_threshold(1);
        assert_eq!(one.labelled.graph.edge_count(), 1);
    }

    /// Threshold graphs built by adding isolated (independent) or dominating
    /// (clique) vertices one at a time.
    fn threshold_graphs(n: usize) -> Vec<(Graph, SplitPartition)> {
        (0u32..1 << n.saturating_sub(1))
            .map(|seq| {
                let mut g = Graph::with_order(n);
                let mut clique = Vec::new();
                let mut independent = Vec::new();
                for v in 0..n {
                    let dominating = v > 0 && seq >> (v - 1) & 1 == 1;
                    if dominating {
                        for u in 0..v {
                            g.add_edge(u, v);
                        }
                        clique.push(v);
                    } else {
                        independent.push(v);
                    }
                }
                (
                    g,
                    SplitPartition {
                        clique,
                        independent,
                    },
                )
            })
            .collect()
    }

    #[test]
    fn threshold_graphs_embed_side_preserving() {
        for n in 1..=5 {
            let host = universal_threshold(n);
            let hg = &host.labelled.graph;
            for (g, split) in threshold_graphs(n) {
                assert!(split.validate(&g));
                let m = embed_threshold(&g, &split).unwrap();
                assert!(m.validate(&g, hg));
                for (p, h) in &m.pairs {
                    let clique_side = split.clique.contains(&g.index_of(p).unwrap());
                    assert_eq!(clique_side, h.starts_with('c'));
                }
            }
        }
    }

    #[test]
    fn four_partition_examples() {
        let ut = universal_threshold(3);
        let lg = find_four_partition(&ut.labelled.graph).unwrap();
        assert!(lg.members(VertexClass::C2).is_empty());
        assert!(lg.members(VertexClass::I2).is_empty());

        let lg = find_four_partition(&p4_split()).unwrap();
        assert_eq!(lg.class_of(0), VertexClass::I1);
        assert_eq!(lg.class_of(3), VertexClass::I2);
        assert!(lg.check_conditions().is_ok());

        assert!(find_four_partition(&cycle(4)).is_none());
    }

    #[test]
    fn dilworth_three_split_graph_has_no_four_partition() {
        let witness = (3..=6)
            .flat_map(|total| (1..total).flat_map(move |k| split_graphs(k, total - k)))
            .find(|g| brute_dilworth(g) == 3)
            .expect("a small split graph with three pairwise incomparable vertices");
        assert!(is_split(&witness).is_some());
        assert!(find_four_partition(&witness).is_none());
    }

    #[test]
    fn four_partition_iff_dilworth_at_most_two() {
        for total in 1..=6 {
            for k in 0..=total {
                for g in split_graphs(k, total - k) {
                    let expected = dilworth_number(&g) <= 2;
                    assert_eq!(find_four_partition(&g).is_some(), expected);
                }
            }
        }
    }

    fn lg_of(g: Graph, classes: &[VertexClass]) -> LabelledSplitGraph {
        LabelledSplitGraph::new(g, classes.to_vec()).unwrap()
    }

    #[test]
    fn extension_examples() {
        let ut = universal_threshold(2);
        let (w, m) = symmetric_extension(&ut.labelled).unwrap();
        assert_eq!(w.labelled.graph.order(), 8);
        assert!(m.validate(&ut.labelled.graph, &w.labelled.graph));
        assert!(find_induced_embedding(&w.labelled.graph, &ut.labelled.graph).is_some());

        let edge = lg_of(path(2), &[VertexClass::C1, VertexClass::I1]);
        let (w, m) = symmetric_extension(&edge).unwrap();
        assert_eq!(w.labelled.graph.order(), 4);
        assert!(m.validate(&edge.graph, &w.labelled.graph));

        let nothing = lg_of(empty(0), &[]);
        let (w, m) = symmetric_extension(&nothing).unwrap();
        assert_eq!(w.labelled.graph.order(), 0);
        assert!(m.pairs.is_empty());
    }

    #[test]
    fn extension_of_every_small_split_permutation_graph() {
        for n in 1..=5 {
            let graphs: Vec<Graph> = (1..=n)
                .permutations(n)
                .map(|p| permutation_graph(&Permutation::new(p).unwrap()))
                .collect();
            for idx in crate::graph::iso_class_representatives(&graphs) {
                let g = &graphs[idx];
                let Some(lg) = find_four_partition(g) else {
                    continue;
                };
                let (w, m) = symmetric_extension(&lg).unwrap();
                let out = &w.labelled.graph;
                assert_eq!(out.order(), 2 * n);
                assert!(m.validate(g, out));
                assert!(is_split(out).is_some());
                assert!(dilworth_number(out) <= 2);
                assert!(find_induced_embedding(out, g).is_some());
            }
        }
    }

    #[test]
    fn partition_json_round_trip() {
        let lg = find_four_partition(&p4_split()).unwrap();
        let pj = lg.partition_json();
        let back = LabelledSplitGraph::from_partition_json(lg.graph.clone(), &pj).unwrap();
        assert_eq!(back, lg);
        let mut bad = pj.clone();
        bad.c1.push("1".into());
        assert!(LabelledSplitGraph::from_partition_json(lg.graph.clone(), &bad).is_err());
    }

    #[test]
    fn isomorphic_inputs_give_isomorphic_extensions() {
        // Output depends on the chosen four-partition; for the same labelled
        // input under renaming it must not change up to isomorphism.
        let g = permutation_graph(&"2413".parse().unwrap());
        let lg = find_four_partition(&g).unwrap();
        let order = [2, 0, 3, 1];
        let h = g.induced_subgraph(&order);
        let classes: Vec<VertexClass> = order.iter().map(|&v| lg.class_of(v)).collect();
        let lh = LabelledSplitGraph::new(h, classes).unwrap();
        let (a, _) = symmetric_extension(&lg).unwrap();
        let (b, _) = symmetric_extension(&lh).unwrap();
        assert!(graphs_isomorphic(&a.labelled.graph, &b.labelled.graph));
    }
}
