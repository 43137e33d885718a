//! Undirected multigraphs with dense vertex indices and positional edge
//! identity, plus the combinatorial ground-truth oracles (components,
//! Kruskal, spanning-tree enumeration).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::exactq::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} has endpoint {vertex} but the graph has {n} vertices")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {edge} is a loop in a simple graph")]
    Loop { edge: usize },
    #[error("edges {first} and {second} are parallel in a simple graph")]
    Parallel { first: usize, second: usize },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("spanning tree enumeration is limited to {limit} edges, graph has {m}")]
    TooManyEdges { m: usize, limit: usize },
    #[error("weighting has {got} entries, graph has {expected} edges")]
    WeightLength { expected: usize, got: usize },
}

/// Vertices are `0..n`; edge `i` is `edges[i]` and that index never changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    simple: bool,
}

/// Per-edge objective used by the optimization oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting(pub Vec<Rational>);

impl Weighting {
    pub fn for_graph(g: &Multigraph, w: Vec<Rational>) -> Result<Self, GraphError> {
        if w.len() != g.edge_count() {
            return Err(GraphError::WeightLength {
                expected: g.edge_count(),
                got: w.len(),
            });
        }
        Ok(Weighting(w))
    }
}

/// Result of deleting vertices: the remaining graph and index maps back to
/// the parent graph.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Multigraph,
    /// `vertex_map[new] = old`
    pub vertex_map: Vec<usize>,
    /// `edge_map[new] = old`
    pub edge_map: Vec<usize>,
}

pub const SPANNING_TREE_EDGE_LIMIT: usize = 25;

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, simple: bool) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: i,
                        vertex: x,
                        n,
                    });
                }
            }
        }
        if simple {
            let mut seen = std::collections::HashMap::new();
            for (i, &(u, v)) in edges.iter().enumerate() {
                if u == v {
                    return Err(GraphError::Loop { edge: i });
                }
                let key = (u.min(v), u.max(v));
                if let Some(&first) = seen.get(&key) {
                    return Err(GraphError::Parallel { first, second: i });
                }
                seen.insert(key, i);
            }
        }
        Ok(Multigraph { n, edges, simple })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Incident `(edge, other endpoint)` pairs per vertex, in edge order.
    /// A loop appears twice at its vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((e, v));
            adj[v].push((e, u));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(_, w) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        let c = self.components().len();
        if c > 1 {
            return Err(GraphError::Disconnected { components: c });
        }
        Ok(())
    }

    /// The graph with `removed` deleted (duplicates and out-of-range entries ignored).
    pub fn remove_vertices(&self, removed: &[usize]) -> Subgraph {
        let mut gone = vec![false; self.n];
        for &v in removed {
            if v < self.n {
                gone[v] = true;
            }
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Subgraph induced by `keep` (sorted, distinct) with vertices renumbered in order.
    pub fn induced(&self, keep: &[usize]) -> Subgraph {
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if new_index[u] != usize::MAX && new_index[v] != usize::MAX {
                edges.push((new_index[u], new_index[v]));
                edge_map.push(e);
            }
        }
        Subgraph {
            graph: Multigraph {
                n: keep.len(),
                edges,
                simple: self.simple,
            },
            vertex_map: keep.to_vec(),
            edge_map,
        }
    }

    /// Edges with both endpoints in `set` (given as a membership mask).
    pub fn edges_within(&self, in_set: &[bool]) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                in_set[u] && in_set[v]
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Minimum spanning tree by Kruskal; ties broken by smallest edge index.
pub fn kruskal_mst(g: &Multigraph, w: &Weighting) -> Result<(Vec<usize>, Rational), GraphError> {
    if w.0.len() != g.edge_count() {
        return Err(GraphError::WeightLength {
            expected: g.edge_count(),
            got: w.0.len(),
        });
    }
    g.require_connected()?;
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| w.0[a].cmp(&w.0[b]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(g.vertex_count());
    let mut tree = Vec::with_capacity(g.vertex_count().saturating_sub(1));
    let mut total = Rational::zero();
    for e in order {
        let (u, v) = g.edge(e);
        if uf.union(u, v) {
            tree.push(e);
            total += &w.0[e];
        }
    }
    tree.sort_unstable();
    Ok((tree, total))
}

/// Every spanning tree exactly once, as sorted edge lists in lexicographic order.
pub fn enumerate_spanning_trees(g: &Multigraph) -> Result<Vec<Vec<usize>>, GraphError> {
    g.require_connected()?;
    if g.edge_count() > SPANNING_TREE_EDGE_LIMIT {
        return Err(GraphError::TooManyEdges {
            m: g.edge_count(),
            limit: SPANNING_TREE_EDGE_LIMIT,
        });
    }
    let target = g.vertex_count().saturating_sub(1);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(target);
    extend_trees(
        g,
        0,
        &mut chosen,
        &UnionFind::new(g.vertex_count()),
        target,
        &mut out,
    );
    Ok(out)
}

fn extend_trees(
    g: &Multigraph,
    next: usize,
    chosen: &mut Vec<usize>,
    uf: &UnionFind,
    target: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == target {
        out.push(chosen.clone());
        return;
    }
    if next == g.edge_count() {
        return;
    }
    let (u, v) = g.edge(next);
    let mut with = uf.clone();
    if with.union(u, v) {
        chosen.push(next);
        extend_trees(g, next + 1, chosen, &with, target, out);
        chosen.pop();
    }
    // Skipping `next` is only useful if the remaining edges can still connect everything.
    let mut rest = uf.clone();
    let mut merges = chosen.len();
    for e in next + 1..g.edge_count() {
        let (a, b) = g.edge(e);
        if rest.union(a, b) {
            merges += 1;
        }
    }
    if merges >= target {
        extend_trees(g, next + 1, chosen, uf, target, out);
    }
}

/// On-disk graph format. Unknown fields are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default = "schema_v1")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default = "default_simple")]
    pub simple: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<[usize; 2]>>>,
    /// Genus of a surface the graph embeds in, when no rotation is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
}

fn schema_v1() -> u32 {
    1
}

fn default_simple() -> bool {
    true
}

impl GraphFile {
    pub fn from_graph(g: &Multigraph) -> Self {
        GraphFile {
            schema_version: 1,
            id: None,
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            simple: g.is_simple(),
            rotation: None,
            genus: None,
        }
    }

    pub fn to_graph(&self) -> Result<Multigraph, GraphError> {
        Multigraph::new(
            self.n,
            self.edges.iter().map(|e| (e[0], e[1])).collect(),
            self.simple,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::corpus;

    fn w(v: &[i64]) -> Weighting {
        Weighting(v.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn construction_and_validation() {
        let k4 = corpus::complete(4);
        assert_eq!(k4.edge_count(), 6);
        let single = Multigraph::new(1, vec![], true).unwrap();
        assert!(single.is_connected());
        assert_eq!(
            Multigraph::new(2, vec![(0, 1), (0, 1)], true),
            Err(GraphError::Parallel {
                first: 0,
                second: 1
            })
        );
        assert!(Multigraph::new(2, vec![(0, 1), (0, 1)], false).is_ok());
        assert_eq!(
            Multigraph::new(2, vec![(0, 2)], true),
            Err(GraphError::EndpointOutOfRange {
                edge: 0,
                vertex: 2,
                n: 2
            })
        );
        assert_eq!(
            Multigraph::new(2, vec![(1, 1)], true),
            Err(GraphError::Loop { edge: 0 })
        );
    }

    #[test]
    fn components_examples() {
        assert_eq!(corpus::complete(4).components().len(), 1);
        let two = Multigraph::new(2, vec![], true).unwrap();
        assert_eq!(two.components(), vec![vec![0], vec![1]]);
        // C5×C5 without row 0's horizontal cycle edges is still connected.
        let g = corpus::torus_grid(5);
        let keep: Vec<usize> = (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.edge(e);
                !(u / 5 == 0 && v / 5 == 0)
            })
            .collect();
        let h = Multigraph::new(25, keep.iter().map(|&e| g.edge(e)).collect(), true).unwrap();
        assert_eq!(h.components().len(), 1);
        // Deleting the row-0 vertices leaves one component of 20 vertices.
        let sub = g.remove_vertices(&[0, 1, 2, 3, 4]);
        let comps = sub.graph.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 20);
    }

    #[test]
    fn kruskal_examples() {
        let c3 = corpus::cycle(3);
        assert_eq!(
            kruskal_mst(&c3, &w(&[1, 2, 3])).unwrap().1,
            Rational::from(3)
        );
        let grid = corpus::torus_grid(3);
        let unit = Weighting(vec![Rational::one(); grid.edge_count()]);
        assert_eq!(kruskal_mst(&grid, &unit).unwrap().1, Rational::from(8));
        let k4 = corpus::complete(4);
        assert_eq!(
            kruskal_mst(&k4, &w(&[5, 1, 1, 1, 1, 5])).unwrap().1,
            Rational::from(3)
        );
        let two = Multigraph::new(2, vec![], true).unwrap();
        assert!(matches!(
            kruskal_mst(&two, &Weighting(vec![])),
            Err(GraphError::Disconnected { .. })
        ));
    }

    #[test]
    fn tree_counts() {
        assert_eq!(
            enumerate_spanning_trees(&corpus::cycle(3)).unwrap().len(),
            3
        );
        assert_eq!(enumerate_spanning_trees(&corpus::path(4)).unwrap().len(), 1);
        // K4: brute force over all 2^6 subsets of size 3 that are acyclic.
        let k4 = corpus::complete(4);
        let mut brute = 0;
        for mask in 0u32..64 {
            if mask.count_ones() != 3 {
                continue;
            }
            let mut uf = UnionFind::new(4);
            if (0..6).filter(|e| mask >> e & 1 == 1).all(|e| {
                let (u, v) = k4.edge(e);
                uf.union(u, v)
            }) {
                brute += 1;
            }
        }
        assert_eq!(brute, 16);
        assert_eq!(enumerate_spanning_trees(&k4).unwrap().len(), brute);
        assert!(matches!(
            enumerate_spanning_trees(&corpus::complete(8)),
            Err(GraphError::TooManyEdges { .. })
        ));
    }

    #[test]
    fn graph_file_rejects_unknown_fields() {
        let bad = r#"{"n": 2, "edges": [[0,1]], "colour": 3}"#;
        assert!(serde_json::from_str::<GraphFile>(bad).is_err());
        let ok: GraphFile = serde_json::from_str(r#"{"n": 2, "edges": [[0,1]]}"#).unwrap();
        assert_eq!(ok.to_graph().unwrap().edge_count(), 1);
    }
}
