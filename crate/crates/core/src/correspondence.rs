//! The bijection between labelled 321-avoiding permutations of length `n`
//! and labelled symmetric split permutation graphs on `2n` vertices.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{
    find_induced_embedding_where, is_induced_embedding, isomorphism_where, Graph, VertexMap,
};
use crate::perm::{
    contains_labelled_pattern, Label, LabelledPermutation, PatternWitness, Permutation,
};
use crate::split::{is_vicinal_chain, LabelledSplitGraph, SymmetricWitness, VertexClass};

/// Image of a labelled permutation. Vertex `c_v` has index `v - 1` and
/// `i_v` has index `n + v - 1`.
#[derive(Clone, Debug)]
pub struct PhiImage {
    pub graph: LabelledSplitGraph,
    /// `element_map[v - 1] = (index of c_v, index of i_v)`.
    pub element_map: Vec<(usize, usize)>,
}

impl PhiImage {
    pub fn n(&self) -> usize {
        self.element_map.len()
    }

    pub fn clique_vertex(&self, value: usize) -> usize {
        self.element_map[value - 1].0
    }

    pub fn independent_vertex(&self, value: usize) -> usize {
        self.element_map[value - 1].1
    }
}

fn class_for(label: Label, clique: bool) -> VertexClass {
    match (label, clique) {
        (Label::One, true) => VertexClass::C1,
        (Label::Two, true) => VertexClass::C2,
        (Label::One, false) => VertexClass::I1,
        (Label::Two, false) => VertexClass::I2,
    }
}

/// Builds the split graph of `lp`: `N(i_p) = {c_1, ..., c_p}` for a
/// 1-labelled value `p`, and `N(i_p) = {c_{p_1}, ..., c_{p_j}}` for a
/// 2-labelled value `p = p_j`. The result is checked to be symmetric.
pub fn phi(lp: &LabelledPermutation) -> Result<PhiImage> {
    let n = lp.len();
    let ids = (1..=n)
        .map(|v| format!("c{v}"))
        .chain((1..=n).map(|v| format!("i{v}")));
    let mut g = Graph::new(ids)?;
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b);
        }
    }
    let values = lp.perm().values();
    for (j, &p) in values.iter().enumerate() {
        let i = n + p - 1;
        match lp.label_of(p) {
            Label::One => (1..=p).for_each(|v| g.add_edge(i, v - 1)),
            Label::Two => values[..=j].iter().for_each(|&v| g.add_edge(i, v - 1)),
        }
    }
    let classes = (0..2 * n)
        .map(|x| class_for(lp.label_of(x % n + 1), x < n))
        .collect();
    let graph = LabelledSplitGraph::unchecked(g, classes)?;
    check_image(&graph, n)?;
    Ok(PhiImage {
        graph,
        element_map: (0..n).map(|v| (v, n + v)).collect(),
    })
}

fn check_image(lg: &LabelledSplitGraph, n: usize) -> Result<()> {
    let fail = |why: String| Err(Error::Falsification(format!("phi image: {why}")));
    if let Err(why) = lg.check_conditions() {
        return fail(why);
    }
    if let Err(why) = SymmetricWitness::find(lg) {
        return fail(why);
    }
    let g = &lg.graph;
    for side in 0..2 {
        let mut seen = FixedBitSet::with_capacity(n + 1);
        for i in lg.members(VertexClass::independent_of(side)) {
            let d = g.degree(i);
            if d == 0 || d > n || seen.put(d) {
                return fail(format!(
                    "degree {d} of `{}` repeated or outside 1..{n}",
                    g.id(i)
                ));
            }
        }
        if !is_vicinal_chain(g, &lg.members(VertexClass::clique_of(side))) {
            return fail(format!("C{} is not a vicinal chain", side + 1));
        }
    }
    Ok(())
}

/// Inverse of [`phi`]; see [`phi_inverse_with_map`].
pub fn phi_inverse(sg: &LabelledSplitGraph) -> Result<LabelledPermutation> {
    phi_inverse_with_map(sg).map(|(lp, _)| lp)
}

/// Reads the labelled permutation off the degrees of `I`: the 1-labelled
/// values are the degrees of `I¹`, and the 2-labelled values fill the
/// positions given by the degrees of `I²`. Also returns a class-preserving
/// isomorphism from `sg` onto `phi` of the result, indexed by vertex of `sg`.
pub fn phi_inverse_with_map(sg: &LabelledSplitGraph) -> Result<(LabelledPermutation, Vec<usize>)> {
    let g = &sg.graph;
    if g.order() % 2 == 1 {
        return Err(Error::NotSymmetric(format!("odd order {}", g.order())));
    }
    sg.check_conditions().map_err(Error::NotSymmetric)?;
    SymmetricWitness::find(sg).map_err(Error::NotSymmetric)?;
    let n = g.order() / 2;

    let degrees = |class| -> Result<Vec<usize>> {
        let mut ds: Vec<usize> = sg.members(class).iter().map(|&i| g.degree(i)).collect();
        ds.sort_unstable();
        if ds.windows(2).any(|w| w[0] == w[1]) || ds.iter().any(|&d| d == 0 || d > n) {
            return Err(Error::NotSymmetric(format!("{class:?} degrees {ds:?}")));
        }
        Ok(ds)
    };
    let ones = degrees(VertexClass::I1)?;
    let two_positions = degrees(VertexClass::I2)?;
    if ones.len() + two_positions.len() != n {
        return Err(Error::NotSymmetric(format!("|I| differs from {n}")));
    }

    let mut is_one = vec![false; n + 1];
    ones.iter().for_each(|&v| is_one[v] = true);
    let mut twos = (1..=n).filter(|&v| !is_one[v]);
    let mut ones_iter = ones.iter().copied();
    let mut at_two = vec![false; n + 1];
    two_positions.iter().for_each(|&p| at_two[p] = true);
    let mut values = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for &two in &at_two[1..] {
        let (v, l) = if two {
            (twos.next(), Label::Two)
        } else {
            (ones_iter.next(), Label::One)
        };
        values.push(v.expect("class sizes match"));
        labels.push(l);
    }
    let lp = LabelledPermutation::from_position_labels(Permutation::new(values)?, &labels)?;

    let image = phi(&lp)?;
    let iso = isomorphism_where(g, &image.graph.graph, |a, b| {
        sg.class_of(a) == image.graph.class_of(b)
    })
    .ok_or_else(|| Error::Falsification(format!("phi({lp}) is not isomorphic to the input")))?;
    Ok((lp, iso))
}

/// Induced embedding of `pattern` into `host` sending each of `C¹, C², I¹, I²`
/// into the same class of the host.
pub fn labelled_graph_contains(
    host: &LabelledSplitGraph,
    pattern: &LabelledSplitGraph,
) -> Option<VertexMap> {
    find_induced_embedding_where(&host.graph, &pattern.graph, |p, h| {
        pattern.class_of(p) == host.class_of(h)
    })
    .map(|m| VertexMap::from_indices(&pattern.graph, &host.graph, &m))
}

/// Sends `c_v, i_v` of the pattern image to `c_w, i_w` of the host image,
/// where `w` is the text value matched to pattern value `v`.
pub fn occurrence_embedding(
    host: &PhiImage,
    text: &LabelledPermutation,
    pattern: &PhiImage,
    pattern_lp: &LabelledPermutation,
    witness: &PatternWitness,
) -> Vec<usize> {
    let mut map = vec![usize::MAX; 2 * pattern.n()];
    for (k, &pos) in witness.positions.iter().enumerate() {
        let v = pattern_lp.perm().values()[k];
        let w = text.perm().values()[pos - 1];
        map[pattern.clique_vertex(v)] = host.clique_vertex(w);
        map[pattern.independent_vertex(v)] = host.independent_vertex(w);
    }
    map
}

/// Whether labelled pattern containment of `lp2` in `lp1` agrees with
/// labelled induced containment of `phi(lp2)` in `phi(lp1)`. When the
/// pattern occurs, the element-wise transfer of the occurrence must also be a
/// class-preserving induced embedding.
pub fn check_containment_transfer(lp1: &LabelledPermutation, lp2: &LabelledPermutation) -> bool {
    let (Ok(host), Ok(pattern)) = (phi(lp1), phi(lp2)) else {
        return false;
    };
    let by_graph = labelled_graph_contains(&host.graph, &pattern.graph).is_some();
    match contains_labelled_pattern(lp1, lp2) {
        Some(w) => {
            let map = occurrence_embedding(&host, lp1, &pattern, lp2, &w);
            let classes_kept = map
                .iter()
                .enumerate()
                .all(|(p, &h)| pattern.graph.class_of(p) == host.graph.class_of(h));
            by_graph
                && classes_kept
                && is_induced_embedding(&pattern.graph.graph, &host.graph.graph, &map)
        }
        None => !by_graph,
    }
}
