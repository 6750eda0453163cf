//! Finite simple graphs with named vertices, permutation graphs, and
//! desk-scale induced-subgraph and isomorphism search.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Undirected graph without loops or multi-edges. Vertices are addressed by
/// dense indices and carry string identities that survive every construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new<I, S>(ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Self {
            ids: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        for id in ids {
            g.add_vertex(id)?;
        }
        Ok(g)
    }

    /// Vertices named `"1"` through `"n"`.
    pub fn with_order(n: usize) -> Self {
        Self::new((1..=n).map(|v| v.to_string())).expect("distinct ids")
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let v = self.ids.len();
        self.index.insert(id.clone(), v);
        self.ids.push(id);
        for row in &mut self.adj {
            row.grow(v + 1);
        }
        self.adj.push(FixedBitSet::with_capacity(v + 1));
        Ok(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at vertex {}", self.ids[u]);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn add_edge_by_id(&mut self, a: &str, b: &str) -> Result<()> {
        let (u, v) = (self.index_of(a)?, self.index_of(b)?);
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at `{a}`")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn id(&self, u: usize) -> &str {
        &self.ids[u]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// `N(x) ⊆ N(y) ∪ {y}`.
    pub fn neighborhood_within(&self, x: usize, y: usize) -> bool {
        let (nx, ny) = (self.adj[x].as_slice(), self.adj[y].as_slice());
        let bits = usize::BITS as usize;
        nx.iter().zip(ny).enumerate().all(|(i, (&a, &b))| {
            let mut b = b;
            if y / bits == i {
                b |= 1 << (y % bits);
            }
            a & !b == 0
        })
    }

    /// Induced subgraph on `vertices`, in that order, keeping identities.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g =
            Graph::new(vertices.iter().map(|&v| self.ids[v].clone())).expect("distinct vertices");
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Refinement colours (Weisfeiler-Leman, 1-dimensional). Colours are
    /// hashes of local structure, so they can be compared across graphs.
    pub fn refined_colors(&self) -> Vec<u64> {
        let n = self.order();
        let mut colors: Vec<u64> = (0..n).map(|u| self.degree(u) as u64).collect();
        for _ in 0..n.min(6) {
            let next: Vec<u64> = (0..n)
                .map(|u| {
                    let mut nb: Vec<u64> = self.adj[u].ones().map(|v| colors[v]).collect();
                    nb.sort_unstable();
                    let mut h = DefaultHasher::new();
                    (colors[u], nb).hash(&mut h);
                    h.finish()
                })
                .collect();
            colors = next;
        }
        colors
    }

    /// Isomorphism-invariant fingerprint used to bucket graphs before an
    /// exact isomorphism test.
    pub fn invariant(&self) -> (usize, usize, Vec<u64>) {
        let mut colors = self.refined_colors();
        colors.sort_unstable();
        (self.order(), self.edge_count(), colors)
    }
}

/// Permutation graph: vertices are the values, and `a < b` are adjacent when
/// `b` appears before `a`.
pub fn permutation_graph(p: &Permutation) -> Graph {
    let mut g = Graph::with_order(p.len());
    let vals = p.values();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i] > vals[j] {
                g.add_edge(vals[i] - 1, vals[j] - 1);
            }
        }
    }
    g
}

/// Components as sorted index lists, ordered by their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut comps = Vec::new();
    for s in 0..g.order() {
        if seen.contains(s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).ones() {
                if !seen.contains(v) {
                    seen.insert(v);
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Injective map from a pattern graph into a host graph, as
/// `(pattern vertex, host vertex)` identity pairs in pattern vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMap {
    pub pairs: Vec<(String, String)>,
}

impl VertexMap {
    pub fn from_indices(pattern: &Graph, host: &Graph, map: &[usize]) -> Self {
        Self {
            pairs: map
                .iter()
                .enumerate()
                .map(|(p, &h)| (pattern.id(p).to_string(), host.id(h).to_string()))
                .collect(),
        }
    }

    pub fn get(&self, pattern_vertex: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(p, _)| p == pattern_vertex)
            .map(|(_, h)| h.as_str())
    }

    /// Host index for each pattern index, or an error naming the first problem.
    pub fn resolve(&self, pattern: &Graph, host: &Graph) -> Result<Vec<usize>> {
        if self.pairs.len() != pattern.order() {
            return Err(Error::InvalidGraph(format!(
                "map covers {} of {} pattern vertices",
                self.pairs.len(),
                pattern.order()
            )));
        }
        let mut map = vec![usize::MAX; pattern.order()];
        let mut used = FixedBitSet::with_capacity(host.order());
        for (p, h) in &self.pairs {
            let (pi, hi) = (pattern.index_of(p)?, host.index_of(h)?);
            if map[pi] != usize::MAX {
                return Err(Error::InvalidGraph(format!("`{p}` mapped twice")));
            }
            if used.put(hi) {
                return Err(Error::InvalidGraph(format!("`{h}` hit twice")));
            }
            map[pi] = hi;
        }
        Ok(map)
    }

    /// Injective and `u ~ v` in the pattern iff their images are adjacent.
    pub fn validate(&self, pattern: &Graph, host: &Graph) -> bool {
        match self.resolve(pattern, host) {
            Ok(map) => is_induced_embedding(pattern, host, &map),
            Err(_) => false,
        }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &VertexMap) -> Result<VertexMap> {
        let pairs = self
            .pairs
            .iter()
            .map(|(p, mid)| {
                other
                    .get(mid)
                    .map(|h| (p.clone(), h.to_string()))
                    .ok_or_else(|| Error::UnknownVertex(mid.clone()))
            })
            .collect::<Result<_>>()?;
        Ok(VertexMap { pairs })
    }
}

pub fn is_induced_embedding(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    if map.len() != pattern.order() {
        return false;
    }
    let mut used = FixedBitSet::with_capacity(host.order());
    if map.iter().any(|&h| h >= host.order() || used.put(h)) {
        return false;
    }
    (0..map.len()).all(|u| {
        (u + 1..map.len()).all(|v| pattern.has_edge(u, v) == host.has_edge(map[u], map[v]))
    })
}

/// First induced embedding of `pattern` into `host` in the search order.
pub fn find_induced_embedding(host: &Graph, pattern: &Graph) -> Option<VertexMap> {
    find_induced_embedding_where(host, pattern, |_, _| true)
        .map(|m| VertexMap::from_indices(pattern, host, &m))
}

/// Backtracking over injective maps. `compatible(p, h)` restricts which host
/// vertices a pattern vertex may take; candidates are further cut down by
/// degree and by adjacency to the vertices already placed.
pub fn find_induced_embedding_where<C>(
    host: &Graph,
    pattern: &Graph,
    compatible: C,
) -> Option<Vec<usize>>
where
    C: Fn(usize, usize) -> bool,
{
    let k = pattern.order();
    if k > host.order() {
        return None;
    }
    let order = search_order(pattern);
    let base: Vec<FixedBitSet> = (0..k)
        .map(|p| {
            let mut set = FixedBitSet::with_capacity(host.order());
            for h in 0..host.order() {
                if host.degree(h) >= pattern.degree(p) && compatible(p, h) {
                    set.insert(h);
                }
            }
            set
        })
        .collect();
    let mut map = vec![usize::MAX; k];
    let mut used = FixedBitSet::with_capacity(host.order());
    if place(host, pattern, &order, &base, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn search_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.order();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (links, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

fn place(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    base: &[FixedBitSet],
    depth: usize,
    map: &mut [usize],
    used: &mut FixedBitSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mut cand = base[p].clone();
    cand.difference_with(used);
    for &q in &order[..depth] {
        if pattern.has_edge(p, q) {
            cand.intersect_with(host.neighbors(map[q]));
        } else {
            cand.difference_with(host.neighbors(map[q]));
        }
    }
    for h in cand.ones() {
        map[p] = h;
        used.insert(h);
        if place(host, pattern, order, base, depth + 1, map, used) {
            return true;
        }
        used.set(h, false);
    }
    map[p] = usize::MAX;
    false
}

/// Exact isomorphism test by backtracking over refinement-colour classes.
pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    isomorphism_where(a, b, |_, _| true).is_some()
}

/// A bijection `a → b` preserving adjacency and respecting `compatible`.
pub fn isomorphism_where<C>(a: &Graph, b: &Graph, compatible: C) -> Option<Vec<usize>>
where
    C: Fn(usize, usize) -> bool,
{
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ca, cb) = (a.refined_colors(), b.refined_colors());
    let (mut sa, mut sb) = (ca.clone(), cb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    find_induced_embedding_where(b, a, |u, v| ca[u] == cb[v] && compatible(u, v))
}

/// Groups graphs into isomorphism classes; returns the index of the first
/// member of each class, in input order.
pub fn iso_class_representatives(graphs: &[Graph]) -> Vec<usize> {
    let mut buckets: BTreeMap<(usize, usize, Vec<u64>), Vec<usize>> = BTreeMap::new();
    let mut reps = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let bucket = buckets.entry(g.invariant()).or_default();
        if bucket.iter().all(|&r| !graphs_isomorphic(&graphs[r], g)) {
            bucket.push(i);
            reps.push(i);
        }
    }
    reps
}

/// Clique/independent four-way split carried alongside a graph in JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    #[serde(rename = "C1")]
    pub c1: Vec<String>,
    #[serde(rename = "C2")]
    pub c2: Vec<String>,
    #[serde(rename = "I1")]
    pub i1: Vec<String>,
    #[serde(rename = "I2")]
    pub i2: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    vertices: Vec<serde_json::Value>,
    edges: Vec<[serde_json::Value; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<PartitionJson>,
}

fn json_id(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!(
            "vertex id must be a string or number, got {other}"
        ))),
    }
}

pub fn graph_to_json(g: &Graph, partition: Option<&PartitionJson>) -> serde_json::Value {
    let json = GraphJson {
        n: g.order(),
        vertices: g.ids().iter().map(|s| s.clone().into()).collect(),
        edges: g
            .edges()
            .into_iter()
            .map(|(u, v)| [g.id(u).into(), g.id(v).into()])
            .collect(),
        partition: partition.cloned(),
    };
    serde_json::to_value(json).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<(Graph, Option<PartitionJson>)> {
    let json: GraphJson = serde_json::from_str(text)?;
    if json.n != json.vertices.len() {
        return Err(Error::Parse(format!(
            "n = {} but {} vertices listed",
            json.n,
            json.vertices.len()
        )));
    }
    let ids = json
        .vertices
        .iter()
        .map(json_id)
        .collect::<Result<Vec<_>>>()?;
    let mut g = Graph::new(ids)?;
    for [a, b] in &json.edges {
        g.add_edge_by_id(&json_id(a)?, &json_id(b)?)?;
    }
    Ok((g, json.partition))
}

/// Graphviz source; partition classes, when given, become node colours.
pub fn graph_to_dot(g: &Graph, partition: Option<&PartitionJson>) -> String {
    let mut out = String::from("graph G {\n");
    if let Some(p) = partition {
        let styles = [
            (&p.c1, "box", "lightblue"),
            (&p.c2, "box", "lightpink"),
            (&p.i1, "ellipse", "lightblue"),
            (&p.i2, "ellipse", "lightpink"),
        ];
        for (class, shape, color) in styles {
            for id in class {
                let _ = writeln!(
                    out,
                    "  \"{id}\" [shape={shape}, style=filled, fillcolor={color}];"
                );
            }
        }
    } else {
        for id in g.ids() {
            let _ = writeln!(out, "  \"{id}\";");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", g.id(u), g.id(v));
    }
    out.push_str("}\n");
    out
}

/// Small named graphs used across tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::with_order(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::with_order(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn empty(n: usize) -> Graph {
        Graph::with_order(n)
    }
}
