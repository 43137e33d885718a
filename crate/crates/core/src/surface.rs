//! Rotation systems for orientable embeddings: face tracing, Euler genus and
//! the dual multigraph.

use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, Multigraph, Subgraph};

/// One end of an edge: `end == 0` sits at `edges[edge].0`, `end == 1` at `.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: usize, end: u8) -> Self {
        Dart { edge, end }
    }

    pub fn id(self) -> usize {
        2 * self.edge + self.end as usize
    }

    pub fn from_id(id: usize) -> Self {
        Dart {
            edge: id / 2,
            end: (id % 2) as u8,
        }
    }

    pub fn opposite(self) -> Self {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }

    /// Vertex this dart is attached to.
    pub fn vertex(self, g: &Multigraph) -> usize {
        let (u, v) = g.edge(self.edge);
        if self.end == 0 {
            u
        } else {
            v
        }
    }
}

impl From<[usize; 2]> for Dart {
    fn from(a: [usize; 2]) -> Self {
        Dart {
            edge: a[0],
            end: a[1].min(255) as u8,
        }
    }
}

impl From<Dart> for [usize; 2] {
    fn from(d: Dart) -> Self {
        [d.edge, d.end as usize]
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Cyclic order of darts around every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    rotations: Vec<Vec<Dart>>,
}

impl RotationSystem {
    /// Validate `rotations` against `g`: every dart exactly once, at its own vertex.
    pub fn new(g: &Multigraph, rotations: Vec<Vec<Dart>>) -> Result<Self, SurfaceError> {
        let bad = |m: String| Err(SurfaceError::InvalidRotation(m));
        if rotations.len() != g.vertex_count() {
            return bad(format!(
                "{} vertex rotations for {} vertices",
                rotations.len(),
                g.vertex_count()
            ));
        }
        let mut seen = vec![false; 2 * g.edge_count()];
        for (v, rot) in rotations.iter().enumerate() {
            for d in rot {
                if d.edge >= g.edge_count() || d.end > 1 {
                    return bad(format!("dart [{}, {}] does not exist", d.edge, d.end));
                }
                if d.vertex(g) != v {
                    return bad(format!(
                        "dart [{}, {}] listed at vertex {v} but belongs to {}",
                        d.edge,
                        d.end,
                        d.vertex(g)
                    ));
                }
                if std::mem::replace(&mut seen[d.id()], true) {
                    return bad(format!("dart [{}, {}] listed twice", d.edge, d.end));
                }
            }
        }
        if let Some(id) = seen.iter().position(|s| !s) {
            let d = Dart::from_id(id);
            return bad(format!("dart [{}, {}] missing", d.edge, d.end));
        }
        Ok(RotationSystem { rotations })
    }

    /// Build from raw `[edge, end]` pairs as stored in graph files.
    pub fn from_raw(g: &Multigraph, raw: &[Vec<[usize; 2]>]) -> Result<Self, SurfaceError> {
        Self::new(
            g,
            raw.iter()
                .map(|r| r.iter().map(|&d| Dart::from(d)).collect())
                .collect(),
        )
    }

    pub fn to_raw(&self) -> Vec<Vec<[usize; 2]>> {
        self.rotations
            .iter()
            .map(|r| r.iter().map(|&d| d.into()).collect())
            .collect()
    }

    pub fn at(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    /// `succ[d.id()]` is the dart following `d` in its vertex rotation.
    fn successors(&self, m: usize) -> Vec<Dart> {
        let mut succ = vec![Dart::new(0, 0); 2 * m];
        for rot in &self.rotations {
            for (i, d) in rot.iter().enumerate() {
                succ[d.id()] = rot[(i + 1) % rot.len()];
            }
        }
        succ
    }

    /// The induced rotation on a vertex-deleted subgraph.
    pub fn restrict(&self, parent: &Multigraph, sub: &Subgraph) -> RotationSystem {
        let mut new_edge = vec![usize::MAX; parent.edge_count()];
        for (i, &e) in sub.edge_map.iter().enumerate() {
            new_edge[e] = i;
        }
        let rotations = sub
            .vertex_map
            .iter()
            .map(|&old| {
                self.rotations[old]
                    .iter()
                    .filter(|d| new_edge[d.edge] != usize::MAX)
                    .map(|d| Dart::new(new_edge[d.edge], d.end))
                    .collect()
            })
            .collect();
        RotationSystem { rotations }
    }
}

/// Trace the face boundary walks. A walk leaves along dart `d`, arrives at
/// the opposite dart and continues with its rotation successor. Faces are
/// emitted in order of their smallest-id starting dart.
pub fn trace_faces(g: &Multigraph, rot: &RotationSystem) -> Vec<Vec<Dart>> {
    let m = g.edge_count();
    let succ = rot.successors(m);
    let mut visited = vec![false; 2 * m];
    let mut faces = Vec::new();
    for start in 0..2 * m {
        if visited[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = Dart::from_id(start);
        loop {
            visited[d.id()] = true;
            face.push(d);
            d = succ[d.opposite().id()];
            if d.id() == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

/// Orientable genus of a connected embedded graph.
pub fn euler_genus(g: &Multigraph, rot: &RotationSystem) -> Result<usize, SurfaceError> {
    g.require_connected()?;
    let faces = if g.edge_count() == 0 {
        1
    } else {
        trace_faces(g, rot).len()
    };
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + faces as i64;
    let twice = 2 - chi;
    if twice < 0 || twice % 2 != 0 {
        return Err(SurfaceError::InvalidRotation(format!(
            "Euler characteristic {chi} is not that of an orientable surface"
        )));
    }
    Ok((twice / 2) as usize)
}

/// A connected graph with a validated rotation system and its traced faces.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    pub graph: Multigraph,
    pub rotation: RotationSystem,
    pub faces: Vec<Vec<Dart>>,
    /// Face index of every dart, by dart id.
    pub face_of_dart: Vec<usize>,
    pub genus: usize,
}

impl EmbeddedGraph {
    pub fn new(graph: Multigraph, rotation: RotationSystem) -> Result<Self, SurfaceError> {
        let genus = euler_genus(&graph, &rotation)?;
        let faces = trace_faces(&graph, &rotation);
        let mut face_of_dart = vec![0; 2 * graph.edge_count()];
        for (f, face) in faces.iter().enumerate() {
            for d in face {
                face_of_dart[d.id()] = f;
            }
        }
        Ok(EmbeddedGraph {
            graph,
            rotation,
            faces,
            face_of_dart,
            genus,
        })
    }

    /// Number of faces (an edgeless graph has the single outer face).
    pub fn face_count(&self) -> usize {
        self.faces.len().max(1)
    }

    /// First traced face containing a dart at `v`.
    pub fn first_face_at(&self, v: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.iter().any(|d| d.vertex(&self.graph) == v))
    }
}

/// The dual multigraph: one vertex per face, dual edge `i` joins the faces on
/// the two sides of primal edge `i` (the face of dart `(i,0)` first). Edge
/// indices correspond one to one.
pub fn dual_graph(e: &EmbeddedGraph) -> Multigraph {
    let edges = (0..e.graph.edge_count())
        .map(|i| {
            (
                e.face_of_dart[Dart::new(i, 0).id()],
                e.face_of_dart[Dart::new(i, 1).id()],
            )
        })
        .collect();
    Multigraph::new(e.face_count(), edges, false).expect("face indices are in range")
}
