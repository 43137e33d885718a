//! Graph families and the named test corpus.

use crate::graph::Multigraph;
use crate::surface::{Dart, RotationSystem};

fn simple(n: usize, edges: Vec<(usize, usize)>) -> Multigraph {
    Multigraph::new(n, edges, true).expect("generator produces simple graphs")
}

pub fn path(n: usize) -> Multigraph {
    simple(n, (1..n).map(|i| (i - 1, i)).collect())
}

pub fn cycle(n: usize) -> Multigraph {
    simple(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// `K_n` with edges in lexicographic order of `(i, j)`, `i < j`.
pub fn complete(n: usize) -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    simple(n, edges)
}

pub fn k33() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            edges.push((i, j));
        }
    }
    simple(6, edges)
}

/// Hub `0` joined to a rim cycle `1..n`.
pub fn wheel(n: usize) -> Multigraph {
    let rim = n - 1;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    for i in 0..rim {
        edges.push((1 + i, 1 + (i + 1) % rim));
    }
    simple(n, edges)
}

/// `wheel(6)` plus vertex 6 adjacent to every other vertex.
pub fn wheel_plus_apex() -> Multigraph {
    let w = wheel(6);
    let mut edges = w.edges().to_vec();
    edges.extend((0..6).map(|v| (v, 6)));
    simple(7, edges)
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    simple(10, edges)
}

/// The 3-cube `Q3`.
pub fn cube() -> Multigraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    simple(8, edges)
}

/// Triangle with a pendant vertex (one bridge).
pub fn paw() -> Multigraph {
    simple(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)])
}

/// `K4` with a two-edge tail: two bridges.
pub fn lollipop() -> Multigraph {
    let mut edges = complete(4).edges().to_vec();
    edges.extend([(3, 4), (4, 5)]);
    simple(6, edges)
}

/// Two triangles joined by a bridge.
pub fn barbell() -> Multigraph {
    simple(
        6,
        vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
    )
}

pub fn diamond() -> Multigraph {
    simple(4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}

/// `C_k × C_k`; vertex `(i, j)` is `i·k + j`; each vertex contributes its
/// rightward then its downward edge.
pub fn torus_grid(k: usize) -> Multigraph {
    torus_grid_embedded(k).0
}

/// `C_k × C_k` with the rotation right, down, left, up at every vertex,
/// whose faces are the `k²` grid squares.
pub fn torus_grid_embedded(k: usize) -> (Multigraph, RotationSystem) {
    assert!(k >= 3, "torus grids need k ≥ 3 to stay simple");
    let id = |i: usize, j: usize| (i % k) * k + (j % k);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            edges.push((id(i, j), id(i, j + 1)));
            edges.push((id(i, j), id(i + 1, j)));
        }
    }
    let g = simple(k * k, edges);
    let right = |i: usize, j: usize| 2 * id(i, j);
    let down = |i: usize, j: usize| 2 * id(i, j) + 1;
    let mut rot = Vec::new();
    for i in 0..k {
        for j in 0..k {
            rot.push(vec![
                Dart::new(right(i, j), 0),
                Dart::new(down(i, j), 0),
                Dart::new(right(i, j + k - 1), 1),
                Dart::new(down(i + k - 1, j), 1),
            ]);
        }
    }
    let rot = RotationSystem::new(&g, rot).expect("torus rotation is valid");
    (g, rot)
}

/// `P_k × P_k`.
pub fn planar_grid(k: usize) -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if j + 1 < k {
                edges.push((i * k + j, i * k + j + 1));
            }
            if i + 1 < k {
                edges.push((i * k + j, (i + 1) * k + j));
            }
        }
    }
    simple(k * k, edges)
}

fn complete_edge_index(n: usize, a: usize, b: usize) -> usize {
    let (i, j) = (a.min(b), a.max(b));
    // edges before row i: Σ_{r<i} (n-1-r)
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// The triangular embedding of `K7` on the torus: the rotation at `i` is
/// `i+1, i+3, i+2, i+6, i+4, i+5 (mod 7)`.
pub fn k7_torus() -> (Multigraph, RotationSystem) {
    let g = complete(7);
    let rot = (0..7)
        .map(|i| {
            [1, 3, 2, 6, 4, 5]
                .iter()
                .map(|&s| {
                    let w = (i + s) % 7;
                    let e = complete_edge_index(7, i, w);
                    Dart::new(e, if i < w { 0 } else { 1 })
                })
                .collect()
        })
        .collect();
    let rot = RotationSystem::new(&g, rot).expect("K7 rotation is valid");
    (g, rot)
}

/// `K_n` (`n ≤ 7`) on the torus, inherited from the `K7` triangulation.
pub fn complete_torus(n: usize) -> (Multigraph, RotationSystem) {
    assert!(n <= 7);
    let (k7, rot) = k7_torus();
    let sub = k7.remove_vertices(&(n..7).collect::<Vec<_>>());
    let r = rot.restrict(&k7, &sub);
    (sub.graph, r)
}

pub fn k5_torus() -> (Multigraph, RotationSystem) {
    complete_torus(5)
}

/// A corpus entry: a connected simple graph with whatever embedding
/// information is known for it.
#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub id: String,
    pub graph: Multigraph,
    pub rotation: Option<RotationSystem>,
    /// Genus of the surface the graph is known to embed in.
    pub genus: usize,
    pub apex: Option<Vec<usize>>,
}

impl CorpusGraph {
    fn planar(id: &str, graph: Multigraph) -> Self {
        CorpusGraph {
            id: id.to_string(),
            graph,
            rotation: None,
            genus: 0,
            apex: None,
        }
    }

    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }
}

/// All connected corpus graphs, smallest first.
pub fn corpus() -> Vec<CorpusGraph> {
    let torus =
        |id: &str, (g, r): (Multigraph, RotationSystem), apex: Option<Vec<usize>>| CorpusGraph {
            id: id.to_string(),
            graph: g,
            rotation: Some(r),
            genus: 1,
            apex,
        };
    vec![
        CorpusGraph::planar("k2", path(2)),
        CorpusGraph::planar("p3", path(3)),
        CorpusGraph::planar("c3", cycle(3)),
        CorpusGraph::planar("c4", cycle(4)),
        CorpusGraph::planar("paw", paw()),
        CorpusGraph::planar("diamond", diamond()),
        CorpusGraph::planar("k4", complete(4)),
        CorpusGraph::planar("w5", wheel(5)),
        torus("k5", complete_torus(5), Some(vec![4])),
        CorpusGraph {
            id: "k33".into(),
            graph: k33(),
            rotation: None,
            genus: 1,
            apex: Some(vec![0]),
        },
        CorpusGraph::planar("barbell", barbell()),
        CorpusGraph::planar("lollipop", lollipop()),
        CorpusGraph::planar("w6", wheel(6)),
        torus("k6", complete_torus(6), None),
        CorpusGraph {
            id: "w6_apex".into(),
            graph: wheel_plus_apex(),
            rotation: None,
            genus: 1,
            apex: Some(vec![6]),
        },
        CorpusGraph::planar("q3", cube()),
        torus("c3xc3", torus_grid_embedded(3), None),
        CorpusGraph {
            id: "petersen".into(),
            graph: petersen(),
            rotation: None,
            genus: 1,
            apex: None,
        },
        CorpusGraph::planar("grid4", planar_grid(4)),
        torus("c4xc4", torus_grid_embedded(4), None),
    ]
}

pub fn by_id(id: &str) -> Option<CorpusGraph> {
    corpus().into_iter().find(|c| c.id == id)
}
