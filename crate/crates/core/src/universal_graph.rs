//! The universal split permutation graph on `4n³` vertices, checked
//! embeddings into it, and the verification harness built on them.

use std::ops::ControlFlow;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::{occurrence_embedding, phi, phi_inverse_with_map, PhiImage};
use crate::error::{Error, Result};
use crate::graph::{
    graph_to_json, graphs_isomorphic, is_induced_embedding, iso_class_representatives,
    permutation_graph, Graph, VertexMap,
};
use crate::perm::{
    contains_pattern, for_each_labelled_occurrence, LabelledPermutation, Permutation,
};
use crate::split::{
    dilworth_number, find_four_partition, is_split, symmetric_extension, LabelledSplitGraph,
    VertexClass,
};
use crate::universal_perm::u;

/// Default number of isomorphism classes checked when sampling.
pub const DEFAULT_SAMPLE: usize = 200;
/// Default seed for sampled verification.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `φ(u_n)` together with the labelled permutation it was built from.
#[derive(Clone, Debug)]
pub struct UniversalGraphBundle {
    pub n: usize,
    pub source: LabelledPermutation,
    pub image: PhiImage,
}

impl UniversalGraphBundle {
    pub fn graph(&self) -> &LabelledSplitGraph {
        &self.image.graph
    }
}

/// Builds `φ(u_n)` and checks that it has `4n³` vertices.
pub fn universal_split_graph(n: usize) -> Result<UniversalGraphBundle> {
    let source = u(n)?;
    let image = phi(&source)?;
    let order = image.graph.graph.order();
    if order != 4 * n * n * n {
        return Err(Error::Falsification(format!(
            "phi(u_{n}) has {order} vertices"
        )));
    }
    Ok(UniversalGraphBundle { n, source, image })
}

/// Embeds a split permutation graph on at most `n` vertices into `φ(u_n)`.
pub fn embed_into_universal(g: &Graph, n: usize) -> Result<VertexMap> {
    embed_with(&universal_split_graph(n)?, g)
}

/// Embedding into a prebuilt host: four-partition, pad with isolated `I¹`
/// vertices, extend to a symmetric graph, read off its labelled permutation,
/// find it in `u_n`, and transfer the occurrence element-wise. Occurrences
/// are tried in order until one gives an induced embedding.
pub fn embed_with(bundle: &UniversalGraphBundle, g: &Graph) -> Result<VertexMap> {
    let n = bundle.n;
    if g.order() > n {
        return Err(Error::OutOfRange(format!(
            "{} vertices for n = {n}",
            g.order()
        )));
    }
    let lg = find_four_partition(g).ok_or(Error::NotSplitPermutation)?;
    let padded = pad(&lg, n)?;
    let (witness, to_ext) = symmetric_extension(&padded)?;
    let ext = &witness.labelled;
    let (lp, to_image) = phi_inverse_with_map(ext)?;
    let pattern = phi(&lp)?;

    let ext_index = to_ext.resolve(&padded.graph, &ext.graph)?;
    let host = &bundle.image.graph.graph;
    let mut found = None;
    for_each_labelled_occurrence(&bundle.source, &lp, |w| {
        let transfer = occurrence_embedding(&bundle.image, &bundle.source, &pattern, &lp, w);
        let map: Vec<usize> = (0..g.order())
            .map(|v| transfer[to_image[ext_index[v]]])
            .collect();
        if is_induced_embedding(g, host, &map) {
            found = Some(map);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let map = found.ok_or_else(|| {
        Error::Falsification(format!(
            "no occurrence of {lp} in u_{n} gives an induced embedding"
        ))
    })?;
    let vmap = VertexMap::from_indices(g, host, &map);
    if !vmap.validate(g, host) {
        return Err(Error::Falsification(
            "embedding failed re-validation".into(),
        ));
    }
    Ok(vmap)
}

fn pad(lg: &LabelledSplitGraph, n: usize) -> Result<LabelledSplitGraph> {
    let mut graph = lg.graph.clone();
    let mut classes = lg.classes().to_vec();
    let mut k = 0;
    while graph.order() < n {
        k += 1;
        let id = format!("pad{k}");
        if graph.index_of(&id).is_err() {
            graph.add_vertex(id)?;
            classes.push(VertexClass::I1);
        }
    }
    LabelledSplitGraph::new(graph, classes)
}

/// Split permutation graphs on `n` vertices up to isomorphism: graphs of
/// length-`n` permutations that are split with Dilworth number at most 2.
pub fn split_permutation_graphs(n: usize) -> Vec<Graph> {
    let graphs: Vec<Graph> = (1..=n)
        .permutations(n)
        .map(|v| permutation_graph(&Permutation::new(v).expect("permutation")))
        .filter(|g| is_split(g).is_some() && dilworth_number(g) <= 2)
        .collect();
    iso_class_representatives(&graphs)
        .into_iter()
        .map(|i| graphs[i].clone())
        .collect()
}

/// Graphs of `(2143, 3412)`-avoiding permutations of length `n`, up to
/// isomorphism.
pub fn avoider_graphs(n: usize) -> Vec<Graph> {
    let forbidden: [Permutation; 2] = ["2143".parse().unwrap(), "3412".parse().unwrap()];
    let graphs: Vec<Graph> = (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).expect("permutation"))
        .filter(|p| forbidden.iter().all(|f| contains_pattern(p, f).is_none()))
        .map(|p| permutation_graph(&p))
        .collect();
    iso_class_representatives(&graphs)
        .into_iter()
        .map(|i| graphs[i].clone())
        .collect()
}

/// Whether two lists of pairwise non-isomorphic graphs name the same classes.
pub fn same_classes(a: &[Graph], b: &[Graph]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| graphs_isomorphic(x, y)))
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingRecord {
    pub graph: serde_json::Value,
    pub map: VertexMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub host_order: usize,
    pub classes_total: usize,
    pub classes_checked: usize,
    pub sampled: bool,
    pub seed: u64,
    pub all_embedded: bool,
    pub failures: Vec<String>,
    pub witnesses: Vec<EmbeddingRecord>,
}

/// Embeds every `n`-vertex split permutation graph class into `φ(u_n)`, or
/// `sample` classes drawn with `seed` when there are more than that. Every
/// returned map is re-validated against the host.
pub fn verify_universal_graph(n: usize, sample: Option<usize>, seed: u64) -> Result<GraphReport> {
    let bundle = universal_split_graph(n)?;
    let classes = split_permutation_graphs(n);
    let total = classes.len();
    let mut chosen: Vec<usize> = (0..total).collect();
    let sampled = matches!(sample, Some(s) if s < total);
    if let (true, Some(s)) = (sampled, sample) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        chosen = chosen.choose_multiple(&mut rng, s).copied().collect();
        chosen.sort_unstable();
    }
    let host = &bundle.image.graph.graph;
    let outcomes: Vec<std::result::Result<EmbeddingRecord, String>> = chosen
        .par_iter()
        .map(|&i| {
            let g = &classes[i];
            match embed_with(&bundle, g) {
                Ok(map) if map.validate(g, host) => Ok(EmbeddingRecord {
                    graph: graph_to_json(g, None),
                    map,
                }),
                Ok(_) => Err(format!("class {i}: map does not validate")),
                Err(e) => Err(format!("class {i}: {e}")),
            }
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => witnesses.push(r),
            Err(e) => failures.push(e),
        }
    }
    Ok(GraphReport {
        n,
        host_order: host.order(),
        classes_total: total,
        classes_checked: chosen.len(),
        sampled,
        seed,
        all_embedded: failures.is_empty(),
        failures,
        witnesses,
    })
}

/// Largest `n` for which the class count comes from enumeration.
pub const EXACT_CLASS_COUNT_MAX: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct OptimalityReport {
    pub n: usize,
    pub universal_size: usize,
    /// Number of classes when enumerated.
    pub class_count: Option<usize>,
    /// `log₂ |X_n|`, exact when enumerated, otherwise `log₂ n!`.
    pub class_count_bound: f64,
    pub ratio: f64,
}

/// `n log₂ |V| / max(log₂ |X_n|, n log₂ n)` for `|V| = 4n³`.
pub fn optimality_report(n: usize) -> Result<OptimalityReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "optimality ratio needs n >= 2, got {n}"
        )));
    }
    let universal_size = 4 * n * n * n;
    let class_count = (n <= EXACT_CLASS_COUNT_MAX).then(|| split_permutation_graphs(n).len());
    let class_count_bound = match class_count {
        Some(c) => (c as f64).log2(),
        None => (2..=n).map(|k| (k as f64).log2()).sum(),
    };
    let nf = n as f64;
    let ratio = nf * (universal_size as f64).log2() / class_count_bound.max(nf * nf.log2());
    Ok(OptimalityReport {
        n,
        universal_size,
        class_count,
        class_count_bound,
        ratio,
    })
}
