//! Moment polytopes Δ_Γ of trivalent graphs.
//!
//! Every edge of the graph is one coordinate in `[0, 1]`. Every vertex with
//! incident coordinates `(a, b, c)` contributes the trinion block
//!
//! ```text
//! t_a - t_b - t_c <= 0,  -t_a + t_b - t_c <= 0,  -t_a - t_b + t_c <= 0,  t_a + t_b + t_c <= 2
//! ```
//!
//! Shared edges get a single coordinate constrained by both incident blocks.
//! A loop at a vertex enters the block twice, which specializes it to
//! `0 <= t_c <= 2 t_l`, `t_c <= 2 - 2 t_l`.

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{self, Bipartition, TrivalentGraph};
use crate::polyhedra::{HalfspaceSystem, Polytope, RationalPoint, Row, VertexSystem};

/// Sign patterns of the four trinion inequalities and their bounds.
const TRINION_TEMPLATE: [([i64; 3], i64); 4] = [
    ([1, -1, -1], 0),
    ([-1, 1, -1], 0),
    ([-1, -1, 1], 0),
    ([1, 1, 1], 2),
];

/// The four block rows for a coordinate triple; repeated coordinates (loops)
/// accumulate.
pub fn trinion_rows(dim: usize, triple: [usize; 3]) -> Vec<Row> {
    TRINION_TEMPLATE
        .iter()
        .map(|(signs, bound)| {
            let mut coeffs = vec![BigInt::zero(); dim];
            for (&coord, &s) in triple.iter().zip(signs) {
                coeffs[coord] += s;
            }
            Row::new(coeffs, (*bound).into())
        })
        .collect()
}

fn vertex_triple(graph: &TrivalentGraph, v: usize) -> [usize; 3] {
    let inc = graph.incident_edges(v);
    [inc[0], inc[1], inc[2]]
}

/// Δ_Γ together with its graph and the rows contributed by each trinion.
#[derive(Debug, Clone)]
pub struct MomentPolytope {
    graph: TrivalentGraph,
    polytope: Polytope,
    trinion_blocks: Vec<Vec<usize>>,
}

impl MomentPolytope {
    /// Pairs a graph with an arbitrary polytope on its edge coordinates.
    /// Block indices list whichever trinion rows the polytope's system contains.
    pub fn from_parts(graph: TrivalentGraph, polytope: Polytope) -> Result<Self> {
        let dim = graph.edges().len();
        if polytope.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: polytope.dim(),
            });
        }
        let h = polytope.halfspaces();
        let trinion_blocks = (0..graph.vertices().len())
            .map(|v| {
                let mut idx: Vec<usize> = trinion_rows(dim, vertex_triple(&graph, v))
                    .iter()
                    .filter_map(|r| h.position(r))
                    .collect();
                idx.sort_unstable();
                idx.dedup();
                idx
            })
            .collect();
        Ok(Self {
            graph,
            polytope,
            trinion_blocks,
        })
    }

    pub fn graph(&self) -> &TrivalentGraph {
        &self.graph
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    /// Edge ids in coordinate order.
    pub fn coordinate_order(&self) -> Vec<&str> {
        self.graph.edges().iter().map(|e| e.id.as_str()).collect()
    }

    pub fn coordinate_of(&self, edge: &str) -> Option<usize> {
        self.graph.edge_index(edge)
    }

    /// Row indices (into the polytope's halfspace system) of each vertex's block.
    pub fn trinion_blocks(&self) -> &[Vec<usize>] {
        &self.trinion_blocks
    }

    pub fn report(&self) -> MomentReport<'_> {
        MomentReport {
            graph: self.graph.name(),
            edge_order: self.coordinate_order(),
            halfspaces: self.polytope.halfspaces(),
            vertices: self.polytope.vertex_system(),
            trinion_blocks: self
                .graph
                .vertices()
                .iter()
                .zip(&self.trinion_blocks)
                .map(|(v, rows)| BlockReport {
                    vertex: v,
                    rows: rows.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MomentReport<'a> {
    pub graph: &'a str,
    pub edge_order: Vec<&'a str>,
    pub halfspaces: &'a HalfspaceSystem,
    pub vertices: &'a VertexSystem,
    pub trinion_blocks: Vec<BlockReport<'a>>,
}

#[derive(Debug, Serialize)]
pub struct BlockReport<'a> {
    pub vertex: &'a str,
    pub rows: Vec<usize>,
}

fn block_system(
    graph: &TrivalentGraph,
    vertices: impl IntoIterator<Item = usize>,
) -> HalfspaceSystem {
    let dim = graph.edges().len();
    let mut rows = HalfspaceSystem::unit_cube(dim).rows().to_vec();
    for v in vertices {
        rows.extend(trinion_rows(dim, vertex_triple(graph, v)));
    }
    HalfspaceSystem::new(dim, rows).expect("rows have graph dimension")
}

/// The explicit genus-2 tetrahedron
/// `{0 <= t_i <= 1, t3 >= t1 - t2, t3 >= t2 - t1, t3 <= t1 + t2, t1 + t2 + t3 <= 2}`
/// on the theta graph's coordinates.
pub fn trinion_tetrahedron() -> MomentPolytope {
    let mut rows = HalfspaceSystem::unit_cube(3).rows().to_vec();
    rows.push(Row::from_i64(&[1, -1, -1], 0));
    rows.push(Row::from_i64(&[-1, 1, -1], 0));
    rows.push(Row::from_i64(&[-1, -1, 1], 0));
    rows.push(Row::from_i64(&[1, 1, 1], 2));
    let h = HalfspaceSystem::new(3, rows).expect("dimension 3");
    let p = Polytope::from_halfspaces(h).expect("tetrahedron is bounded");
    MomentPolytope::from_parts(graphs::theta(), p).expect("dimension 3")
}

/// Δ_Γ: cube bounds plus one trinion block per vertex.
pub fn moment_polytope(graph: &TrivalentGraph) -> Result<MomentPolytope> {
    let h = block_system(graph, 0..graph.vertices().len());
    let p = Polytope::from_halfspaces(h)?;
    MomentPolytope::from_parts(graph.clone(), p)
}

/// `n`-fold product of the tetrahedron, dimension `3n`.
pub fn product_model(n: usize) -> Result<Polytope> {
    if n == 0 {
        return Err(Error::InvalidArgument("product model needs n >= 1".into()));
    }
    let t = trinion_tetrahedron().polytope.clone();
    let mut acc = t.clone();
    for _ in 1..n {
        acc = acc.product(&t);
    }
    Ok(acc)
}

/// Factorization of Δ_Γ for a bipartite graph.
#[derive(Debug, Clone)]
pub struct HyperbolicSplit {
    /// Cube plus the blocks of the `plus` vertices.
    pub plus: Polytope,
    /// Cube plus the blocks of the `minus` vertices.
    pub minus: Polytope,
    /// Coordinate permutation carrying `plus` onto `minus`, in the convention of
    /// [`Polytope::apply_permutation`].
    pub permutation: Option<Vec<usize>>,
}

/// Maximum bipartite matching from `plus` to `minus` vertices along edges
/// (Kuhn's augmenting paths). `None` if not perfect.
fn perfect_matching(graph: &TrivalentGraph, b: &Bipartition) -> Option<Vec<usize>> {
    let n = graph.vertices().len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in graph.edges() {
        adj[e.ends.0].push(e.ends.1);
        adj[e.ends.1].push(e.ends.0);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &w in &adj[u] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if owner[w].is_none_or(|o| augment(o, adj, owner, seen)) {
                owner[w] = Some(u);
                return true;
            }
        }
        false
    }

    for &u in &b.plus {
        let mut seen = vec![false; n];
        if !augment(u, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut partner = vec![usize::MAX; n];
    for (w, o) in owner.iter().enumerate() {
        if let Some(u) = o {
            partner[*u] = w;
        }
    }
    Some(partner)
}

/// Splits Δ_Γ into the `plus` and `minus` block systems and looks for a
/// coordinate permutation matching them.
///
/// Each `plus` vertex is matched to an adjacent `minus` vertex; edges they
/// share stay fixed and the remaining incident edges are paired in order.
pub fn hyperbolic_split(mp: &MomentPolytope, b: &Bipartition) -> Result<HyperbolicSplit> {
    let graph = mp.graph();
    b.validate(graph)?;
    let plus = Polytope::from_halfspaces(block_system(graph, b.plus.iter().copied()))?;
    let minus = Polytope::from_halfspaces(block_system(graph, b.minus.iter().copied()))?;

    let mut permutation = None;
    if let Some(partner) = perfect_matching(graph, b) {
        let dim = graph.edges().len();
        let mut perm = vec![usize::MAX; dim];
        for &u in &b.plus {
            let w = partner[u];
            let mut from: Vec<usize> = graph.incident_edges(u).to_vec();
            let mut to: Vec<usize> = graph.incident_edges(w).to_vec();
            let shared: Vec<usize> = from.iter().copied().filter(|e| to.contains(e)).collect();
            for &e in &shared {
                perm[e] = e;
            }
            from.retain(|e| !shared.contains(e));
            to.retain(|e| !shared.contains(e));
            for (f, t) in from.into_iter().zip(to) {
                perm[f] = t;
            }
        }
        let mut check = perm.clone();
        check.sort_unstable();
        if check == (0..dim).collect::<Vec<_>>() && plus.apply_permutation(&perm)?.equals(&minus)? {
            permutation = Some(perm);
        }
    }
    Ok(HyperbolicSplit {
        plus,
        minus,
        permutation,
    })
}

/// Successive approximations A_0 ⊇ A_1 ⊇ … ⊇ A_{g-1} = Δ_{gΘ}.
#[derive(Debug, Clone)]
pub struct ApproximationChain {
    pub graph: TrivalentGraph,
    /// Names of the `minus` vertices in the order their blocks are imposed.
    pub order: Vec<String>,
    pub steps: Vec<Polytope>,
}

/// Starts from the `plus` block system of the genus-`g` multi-theta graph and
/// imposes the `minus` blocks one level at a time, top to bottom.
pub fn approximation_chain(g: usize) -> Result<ApproximationChain> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!(
            "approximation chain needs genus >= 3, got {g}"
        )));
    }
    let graph = graphs::multi_theta(g)?;
    let b = graph
        .hyperbolic_bipartition()
        .expect("multi-theta graphs are bipartite");
    let dim = graph.edges().len();
    let mut order = Vec::with_capacity(g - 1);
    for level in 1..g {
        let v = graph.vertex_index(&format!("v{level}")).unwrap();
        let w = graph.vertex_index(&format!("w{level}")).unwrap();
        order.push(if b.minus.contains(&v) { v } else { w });
    }
    let mut steps = Vec::with_capacity(g);
    let mut current = Polytope::from_halfspaces(block_system(&graph, b.plus.iter().copied()))?;
    steps.push(current.clone());
    for &v in &order {
        let block = HalfspaceSystem::new(dim, trinion_rows(dim, vertex_triple(&graph, v)))?;
        current = Polytope::from_halfspaces(current.halfspaces().union(&block)?)?;
        steps.push(current.clone());
    }
    Ok(ApproximationChain {
        order: order.iter().map(|&v| graph.vertices()[v].clone()).collect(),
        graph,
        steps,
    })
}

/// All 0/1 points of Δ_Γ, enumerated independently of the polytope as the
/// indicator vectors of even-degree edge subsets (the binary cycle space).
pub fn cube_vertex_oracle(graph: &TrivalentGraph) -> Vec<RationalPoint> {
    let n = graph.vertices().len();
    let m = graph.edges().len();
    // Spanning forest by BFS: parent edge per vertex.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; m];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in graph.incident_edges(v) {
                let (a, b) = graph.edges()[e].ends;
                let w = if a == v { b } else { a };
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, e));
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis: Vec<Vec<bool>> = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        if tree_edge[e] {
            continue;
        }
        let mut cycle = vec![false; m];
        cycle[e] = true;
        let (mut a, mut b) = edge.ends;
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (p, pe) = parent[a].expect("non-root has a parent");
            cycle[pe] ^= true;
            a = p;
        }
        basis.push(cycle);
    }
    let mut points = Vec::with_capacity(1 << basis.len());
    for mask in 0u64..(1u64 << basis.len()) {
        let mut x = vec![false; m];
        for (i, c) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (xi, ci) in x.iter_mut().zip(c) {
                    *xi ^= ci;
                }
            }
        }
        points.push(RationalPoint(
            x.into_iter()
                .map(|b| {
                    if b {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        ));
    }
    points.sort();
    points
}

/// Checks that projecting Δ_Γ's vertices to each vertex's coordinate triple
/// lands in the tetrahedron.
pub fn trinion_projection_check(mp: &MomentPolytope) -> bool {
    let tetra = trinion_tetrahedron();
    let graph = mp.graph();
    (0..graph.vertices().len()).all(|v| {
        let [a, b, c] = vertex_triple(graph, v);
        mp.polytope().vertices().iter().all(|p| {
            let proj = RationalPoint(vec![p.0[a].clone(), p.0[b].clone(), p.0[c].clone()]);
            tetra.polytope().halfspaces().contains_point(&proj)
        })
    })
}
