//! Trivalent multigraphs: the combinatorial side of a pants decomposition.
//!
//! Vertices are trinions and edges are the cutting circles. Loops are allowed
//! and contribute 2 to the degree of their vertex.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One edge of a [`TrivalentGraph`], endpoints stored as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

/// A validated trivalent multigraph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivalentGraph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    /// Per vertex, incident edge indices with multiplicity (a loop appears twice).
    incident: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    name: String,
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeFile {
    id: String,
    ends: [String; 2],
}

impl TrivalentGraph {
    /// Builds and validates a graph from vertex ids and `(edge id, end, end)` triples.
    pub fn new<S: Into<String>>(
        name: S,
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, a, b) in edges {
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateEdge(id));
            }
            let lookup = |v: &String| {
                index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    edge: id.clone(),
                    vertex: v.clone(),
                })
            };
            let ends = (lookup(&a)?, lookup(&b)?);
            out.push(Edge { id, ends });
        }
        let mut incident = vec![Vec::new(); vertices.len()];
        for (e, edge) in out.iter().enumerate() {
            incident[edge.ends.0].push(e);
            incident[edge.ends.1].push(e);
        }
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() != 3 {
                return Err(Error::NotTrivalent {
                    vertex: vertices[v].clone(),
                    degree: inc.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            vertices,
            edges: out,
            incident,
        })
    }

    /// Parses the JSON graph format:
    /// `{"name": .., "vertices": [..], "edges": [{"id": .., "ends": [a, b]}, ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let edges = file
            .edges
            .into_iter()
            .map(|e| {
                let [a, b] = e.ends;
                (e.id, a, b)
            })
            .collect();
        Self::new(file.name, file.vertices, edges)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    ends: [
                        self.vertices[e.ends.0].clone(),
                        self.vertices[e.ends.1].clone(),
                    ],
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("graph serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name<S: Into<String>>(mut self, name: S) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Incident edge indices of vertex `v`, with a loop listed twice.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Connected-component label of each vertex, numbered in order of first appearance.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incident[v] {
                    let (a, b) = self.edges[e].ends;
                    let w = if a == v { b } else { a };
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Cyclomatic number |E| − |V| + c. For a connected graph this is the genus
    /// of the surface it decomposes.
    pub fn genus(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    /// Splits the graph into its connected components, preserving ids and order.
    pub fn connected_components(&self) -> Vec<TrivalentGraph> {
        let label = self.components();
        let count = label.iter().max().map_or(0, |m| m + 1);
        (0..count)
            .map(|c| {
                let vertices: Vec<String> = (0..self.vertices.len())
                    .filter(|&v| label[v] == c)
                    .map(|v| self.vertices[v].clone())
                    .collect();
                let edges = self
                    .edges
                    .iter()
                    .filter(|e| label[e.ends.0] == c)
                    .map(|e| {
                        (
                            e.id.clone(),
                            self.vertices[e.ends.0].clone(),
                            self.vertices[e.ends.1].clone(),
                        )
                    })
                    .collect();
                TrivalentGraph::new(format!("{}[{}]", self.name, c), vertices, edges)
                    .expect("components of a trivalent graph are trivalent")
            })
            .collect()
    }

    /// The incidence form q_Γ: entry (i, j) counts edges joining v_i and v_j;
    /// a loop at v_i adds 1 to the diagonal entry.
    pub fn incidence_form(&self) -> Vec<Vec<u32>> {
        let n = self.vertices.len();
        let mut q = vec![vec![0u32; n]; n];
        for e in &self.edges {
            let (a, b) = e.ends;
            if a == b {
                q[a][a] += 1;
            } else {
                q[a][b] += 1;
                q[b][a] += 1;
            }
        }
        q
    }

    /// Two-colours the graph. The part containing the first vertex of every
    /// connected component is `plus`. Returns `None` for non-bipartite graphs.
    pub fn hyperbolic_bipartition(&self) -> Option<Bipartition> {
        let n = self.vertices.len();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &e in &self.incident[v] {
                    let (a, b) = self.edges[e].ends;
                    let w = if a == v { b } else { a };
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (plus, minus) = (0..n).partition(|&v| colour[v] == Some(true));
        Some(Bipartition { plus, minus })
    }

    /// Generators of the automorphism group, as edge permutations
    /// (`perm[e]` is the image of edge `e`).
    ///
    /// One lift of every vertex automorphism plus every transposition of
    /// parallel edges (or of two loops at one vertex). Intended for small graphs.
    pub fn automorphism_generators(&self) -> Vec<Vec<usize>> {
        let q = self.incidence_form();
        let n = self.vertices.len();
        let mut maps = Vec::new();
        let mut current = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_vertex_map(&q, 0, &mut current, &mut used, &mut maps);

        let mut gens = Vec::new();
        for vmap in maps {
            let mut taken = vec![false; self.edges.len()];
            let mut perm = Vec::with_capacity(self.edges.len());
            for e in &self.edges {
                let target = (vmap[e.ends.0], vmap[e.ends.1]);
                let img = self
                    .edges
                    .iter()
                    .enumerate()
                    .position(|(f, edge)| {
                        !taken[f] && (edge.ends == target || edge.ends == (target.1, target.0))
                    })
                    .expect("vertex automorphism preserves edge multiplicities");
                taken[img] = true;
                perm.push(img);
            }
            gens.push(perm);
        }
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let key = (e.ends.0.min(e.ends.1), e.ends.0.max(e.ends.1));
            by_pair.entry(key).or_default().push(i);
        }
        for group in by_pair.values() {
            for w in group.windows(2) {
                let mut perm: Vec<usize> = (0..self.edges.len()).collect();
                perm.swap(w[0], w[1]);
                gens.push(perm);
            }
        }
        gens
    }

    fn extend_vertex_map(
        &self,
        q: &[Vec<u32>],
        v: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = q.len();
        if v == n {
            out.push(current.clone());
            return;
        }
        for img in 0..n {
            if used[img] || q[v][v] != q[img][img] {
                continue;
            }
            let consistent = (0..v).all(|u| q[u][v] == q[current[u]][img]);
            if !consistent {
                continue;
            }
            current[v] = img;
            used[img] = true;
            self.extend_vertex_map(q, v + 1, current, used, out);
            used[img] = false;
        }
        current[v] = usize::MAX;
    }
}

/// Splitting of the vertex set into two parts with every edge crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl Bipartition {
    /// Checks the partition covers every vertex once and no edge stays inside a part.
    pub fn validate(&self, graph: &TrivalentGraph) -> Result<()> {
        let n = graph.vertices().len();
        let mut side = vec![None; n];
        let labelled = self
            .plus
            .iter()
            .map(|&v| (v, true))
            .chain(self.minus.iter().map(|&v| (v, false)));
        for (v, s) in labelled {
            if v >= n {
                return Err(Error::BadBipartition(format!(
                    "vertex index {v} out of range"
                )));
            }
            if side[v].replace(s).is_some() {
                return Err(Error::BadBipartition(format!(
                    "vertex {} listed twice",
                    graph.vertices()[v]
                )));
            }
        }
        if let Some(v) = side.iter().position(Option::is_none) {
            return Err(Error::BadBipartition(format!(
                "vertex {} not covered",
                graph.vertices()[v]
            )));
        }
        for e in graph.edges() {
            if side[e.ends.0] == side[e.ends.1] {
                return Err(Error::BadBipartition(format!(
                    "edge {} lies inside one part",
                    e.id
                )));
            }
        }
        Ok(())
    }

    /// The triples E(Γ)_v for every vertex of one part, in part order.
    pub fn triples(&self, graph: &TrivalentGraph, plus: bool) -> Vec<[usize; 3]> {
        let part = if plus { &self.plus } else { &self.minus };
        part.iter()
            .map(|&v| {
                let inc = graph.incident_edges(v);
                [inc[0], inc[1], inc[2]]
            })
            .collect()
    }
}

/// Genus-g multi-theta graph: the cycle v1..v_{g-1}, w_{g-1}..w1 with
/// chords v_i w_i. Arcs a1..a_{2g-2} follow the cycle; chords are c1..c_{g-1}.
pub fn multi_theta(g: usize) -> Result<TrivalentGraph> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "multi-theta graph needs genus >= 2, got {g}"
        )));
    }
    let h = g - 1;
    let v = |i: usize| format!("v{i}");
    let w = |i: usize| format!("w{i}");
    let cycle: Vec<String> = (1..=h).map(v).chain((1..=h).rev().map(w)).collect();
    let vertices: Vec<String> = (1..=h).map(v).chain((1..=h).map(w)).collect();
    let len = cycle.len();
    let mut edges = Vec::with_capacity(3 * h);
    for i in 0..len {
        edges.push((
            format!("a{}", i + 1),
            cycle[i].clone(),
            cycle[(i + 1) % len].clone(),
        ));
    }
    for i in 1..=h {
        edges.push((format!("c{i}"), v(i), w(i)));
    }
    TrivalentGraph::new(format!("multi-theta-{g}"), vertices, edges)
}

/// The theta graph: two vertices joined by three edges.
pub fn theta() -> TrivalentGraph {
    multi_theta(2).expect("genus 2 is valid").with_name("theta")
}

/// The complete graph on four vertices.
pub fn k4() -> TrivalentGraph {
    let vertices: Vec<String> = (1..=4).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..=4 {
        for j in i + 1..=4 {
            edges.push((format!("e{i}{j}"), format!("v{i}"), format!("v{j}")));
        }
    }
    TrivalentGraph::new("k4", vertices, edges).expect("K4 is trivalent")
}

/// Two loops joined by a bridge.
pub fn dumbbell() -> TrivalentGraph {
    TrivalentGraph::new(
        "dumbbell",
        vec!["v1".into(), "v2".into()],
        vec![
            ("l1".into(), "v1".into(), "v1".into()),
            ("b".into(), "v1".into(), "v2".into()),
            ("l2".into(), "v2".into(), "v2".into()),
        ],
    )
    .expect("dumbbell is trivalent")
}

/// A genus-3 graph with loops: two loops hanging off a theta-like core.
pub fn loop_chain() -> TrivalentGraph {
    // v1 -l1- v1, v1 - v2, v2 = v3 (double), v3 - v4, v4 -l2- v4
    TrivalentGraph::new(
        "loop-chain",
        (1..=4).map(|i| format!("v{i}")).collect(),
        vec![
            ("l1".into(), "v1".into(), "v1".into()),
            ("b1".into(), "v1".into(), "v2".into()),
            ("p1".into(), "v2".into(), "v3".into()),
            ("p2".into(), "v2".into(), "v3".into()),
            ("b2".into(), "v3".into(), "v4".into()),
            ("l2".into(), "v4".into(), "v4".into()),
        ],
    )
    .expect("loop chain is trivalent")
}

/// Disjoint union. Identifiers of `b` that clash with `a` get a `#n` suffix.
pub fn disjoint_union(a: &TrivalentGraph, b: &TrivalentGraph) -> TrivalentGraph {
    fn fresh(taken: &HashSet<String>, id: &str) -> String {
        if !taken.contains(id) {
            return id.to_string();
        }
        (2..)
            .map(|n| format!("{id}#{n}"))
            .find(|c| !taken.contains(c))
            .unwrap()
    }
    let mut vertex_ids: HashSet<String> = a.vertices.iter().cloned().collect();
    let mut vrename = Vec::with_capacity(b.vertices.len());
    for v in &b.vertices {
        let id = fresh(&vertex_ids, v);
        vertex_ids.insert(id.clone());
        vrename.push(id);
    }
    let mut edge_ids: HashSet<String> = a.edges.iter().map(|e| e.id.clone()).collect();
    let mut edges: Vec<(String, String, String)> = a
        .edges
        .iter()
        .map(|e| {
            (
                e.id.clone(),
                a.vertices[e.ends.0].clone(),
                a.vertices[e.ends.1].clone(),
            )
        })
        .collect();
    for e in &b.edges {
        let id = fresh(&edge_ids, &e.id);
        edge_ids.insert(id.clone());
        edges.push((id, vrename[e.ends.0].clone(), vrename[e.ends.1].clone()));
    }
    let vertices = a.vertices.iter().cloned().chain(vrename).collect();
    TrivalentGraph::new(format!("{}+{}", a.name, b.name), vertices, edges)
        .expect("disjoint union of trivalent graphs is trivalent")
}

/// n disjoint copies of the theta graph.
pub fn theta_power(n: usize) -> Result<TrivalentGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let t = theta();
    let mut acc = t.clone();
    for _ in 1..n {
        acc = disjoint_union(&acc, &t);
    }
    Ok(acc.with_name(format!("theta^{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA_JSON: &str = r#"{"name":"theta","vertices":["p","q"],
        "edges":[{"id":"x","ends":["p","q"]},{"id":"y","ends":["p","q"]},{"id":"z","ends":["q","p"]}]}"#;

    #[test]
    fn parses_theta() {
        let g = TrivalentGraph::from_json(THETA_JSON).unwrap();
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges().len(), 3);
        assert_eq!(g.genus(), 2);
        assert_eq!(g.edges()[2].id, "z");
    }

    #[test]
    fn parses_k4_round_trip() {
        let g = TrivalentGraph::from_json(&k4().to_json()).unwrap();
        assert_eq!(g, k4());
    }

    #[test]
    fn rejects_degree_two_vertex() {
        let text = r#"{"name":"bad","vertices":["a","b","c"],
            "edges":[{"id":"1","ends":["a","b"]},{"id":"2","ends":["a","b"]},{"id":"3","ends":["a","c"]},
                     {"id":"4","ends":["b","c"]}]}"#;
        let err = TrivalentGraph::from_json(text).unwrap_err();
        assert_eq!(
            err,
            Error::NotTrivalent {
                vertex: "c".into(),
                degree: 2
            }
        );
    }

    #[test]
    fn rejects_duplicate_edge_and_garbage() {
        let text = r#"{"name":"bad","vertices":["a","b"],
            "edges":[{"id":"x","ends":["a","b"]},{"id":"x","ends":["a","b"]},{"id":"y","ends":["a","b"]}]}"#;
        assert_eq!(
            TrivalentGraph::from_json(text).unwrap_err(),
            Error::DuplicateEdge("x".into())
        );
        assert!(matches!(
            TrivalentGraph::from_json("{not json").unwrap_err(),
            Error::Parse(_)
        ));
    }

    #[test]
    fn genus_values() {
        assert_eq!(theta().genus(), 2);
        assert_eq!(k4().genus(), 3);
        assert_eq!(disjoint_union(&theta(), &theta()).genus(), 4);
        assert_eq!(dumbbell().genus(), 2);
        assert_eq!(loop_chain().genus(), 3);
    }

    #[test]
    fn incidence_forms() {
        assert_eq!(theta().incidence_form(), vec![vec![0, 3], vec![3, 0]]);
        let q = k4().incidence_form();
        for (i, row) in q.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, u32::from(i != j));
            }
        }
        assert_eq!(dumbbell().incidence_form(), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn incidence_rows_sum_to_three() {
        for g in [
            theta(),
            k4(),
            dumbbell(),
            loop_chain(),
            multi_theta(5).unwrap(),
        ] {
            let q = g.incidence_form();
            for (i, row) in q.iter().enumerate() {
                let off: u32 = row.iter().sum();
                assert_eq!(off + q[i][i], 3, "{}", g.name());
                for (j, &x) in row.iter().enumerate() {
                    assert_eq!(x, q[j][i]);
                }
            }
        }
    }

    #[test]
    fn bipartitions() {
        let b = theta().hyperbolic_bipartition().unwrap();
        assert_eq!((b.plus, b.minus), (vec![0], vec![1]));
        let mt = multi_theta(3).unwrap();
        let b = mt.hyperbolic_bipartition().unwrap();
        assert_eq!(b.plus.len(), 2);
        assert!(b.plus.contains(&mt.vertex_index("v1").unwrap()));
        assert!(b.plus.contains(&mt.vertex_index("w2").unwrap()));
        assert!(k4().hyperbolic_bipartition().is_none());
        assert!(dumbbell().hyperbolic_bipartition().is_none());
    }

    #[test]
    fn bipartition_triples_partition_edges() {
        for g in 2..=6 {
            let graph = multi_theta(g).unwrap();
            let b = graph.hyperbolic_bipartition().unwrap();
            b.validate(&graph).unwrap();
            for side in [true, false] {
                let mut all: Vec<usize> = b.triples(&graph, side).into_iter().flatten().collect();
                all.sort_unstable();
                assert_eq!(all, (0..graph.edges().len()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn multi_theta_shapes() {
        let g2 = multi_theta(2).unwrap();
        assert_eq!(g2.incidence_form(), vec![vec![0, 3], vec![3, 0]]);
        let g3 = multi_theta(3).unwrap();
        assert_eq!(
            (g3.vertices().len(), g3.edges().len(), g3.genus()),
            (4, 6, 3)
        );
        let g5 = multi_theta(5).unwrap();
        assert_eq!((g5.vertices().len(), g5.edges().len()), (8, 12));
        assert!(g5.hyperbolic_bipartition().is_some());
        assert!(multi_theta(1).is_err());
        for g in 2..=8 {
            let m = multi_theta(g).unwrap();
            assert_eq!(m.genus(), g);
            assert_eq!(m.edges().len(), 3 * g - 3);
            assert_eq!(m.vertices().len(), 2 * g - 2);
        }
    }

    #[test]
    fn unions() {
        let tt = disjoint_union(&theta(), &theta());
        assert_eq!(
            (tt.vertices().len(), tt.edges().len(), tt.component_count()),
            (4, 6, 2)
        );
        let tk = disjoint_union(&theta(), &k4());
        assert_eq!((tk.vertices().len(), tk.edges().len()), (6, 9));
        let t3 = theta_power(3).unwrap();
        assert_eq!(t3.edges().len(), 9);
        assert_eq!(t3.component_count(), 3);
        assert_eq!(t3.connected_components().len(), 3);
    }

    #[test]
    fn automorphism_counts() {
        // Theta: one vertex swap lift, identity lift, plus two parallel transpositions.
        assert_eq!(theta().automorphism_generators().len(), 4);
        // K4: 24 vertex automorphisms, no parallel edges.
        assert_eq!(k4().automorphism_generators().len(), 24);
    }
}
