//! Planarity testing with embedding output, and planarizing-set heuristics.
//!
//! The tester splits the graph into biconnected blocks and embeds each block
//! by face extension (Demoucron, Malgrange and Pertuiset): start from a cycle,
//! repeatedly pick a fragment that fits in the fewest faces and route a path
//! of it through one of them. Block rotations are concatenated at cut
//! vertices, parallel edges are placed side by side and loops get an empty
//! face, so the output is a rotation system of the original multigraph.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::Multigraph;
use crate::surface::{trace_faces, Dart, RotationSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarityResult {
    pub planar: bool,
    /// Present exactly when `planar`.
    pub embedding: Option<RotationSystem>,
    pub witness: Option<String>,
}

/// Decide planarity and return a planar rotation system when one exists.
pub fn is_planar(g: &Multigraph) -> PlanarityResult {
    let n = g.vertex_count();
    // Simple underlying graph: neighbour -> multigraph edges, loops separately.
    let mut nbrs: Vec<BTreeMap<usize, Vec<usize>>> = vec![BTreeMap::new(); n];
    let mut loops: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            loops[u].push(e);
        } else {
            nbrs[u].entry(v).or_default().push(e);
            nbrs[v].entry(u).or_default().push(e);
        }
    }
    let adj: Vec<Vec<usize>> = nbrs.iter().map(|m| m.keys().copied().collect()).collect();

    let blocks = biconnected_blocks(&adj);
    let mut block_rot: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for (b, edges) in blocks.iter().enumerate() {
        match embed_block(edges) {
            Ok(rots) => {
                for (v, cyc) in rots {
                    block_rot[v].push(cyc);
                }
            }
            Err(why) => {
                return PlanarityResult {
                    planar: false,
                    embedding: None,
                    witness: Some(format!("block {b}: {why}")),
                }
            }
        }
    }

    let mut rotations = Vec::with_capacity(n);
    for v in 0..n {
        let mut darts = Vec::new();
        for cyc in &block_rot[v] {
            for &w in cyc {
                let mut es = nbrs[v][&w].clone();
                if v > w {
                    es.reverse();
                }
                for e in es {
                    let end = if g.edge(e).0 == v { 0 } else { 1 };
                    darts.push(Dart::new(e, end));
                }
            }
        }
        for &e in &loops[v] {
            darts.push(Dart::new(e, 0));
            darts.push(Dart::new(e, 1));
        }
        rotations.push(darts);
    }
    let rot = RotationSystem::new(g, rotations).expect("planarity embedding lists every dart once");
    assert!(
        euler_planar(g, &rot),
        "planarity embedding failed the Euler check"
    );
    PlanarityResult {
        planar: true,
        embedding: Some(rot),
        witness: None,
    }
}

/// `|V| - |E| + |F| = 2` on every component.
pub fn euler_planar(g: &Multigraph, rot: &RotationSystem) -> bool {
    let comps = g.components();
    let mut comp_of = vec![0; g.vertex_count()];
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let mut chi: Vec<i64> = comps.iter().map(|c| c.len() as i64).collect();
    let mut has_edge = vec![false; comps.len()];
    for &(u, _) in g.edges() {
        chi[comp_of[u]] -= 1;
        has_edge[comp_of[u]] = true;
    }
    for face in trace_faces(g, rot) {
        chi[comp_of[face[0].vertex(g)]] += 1;
    }
    for (c, x) in chi.iter_mut().enumerate() {
        if !has_edge[c] {
            *x += 1;
        }
    }
    chi.iter().all(|&x| x == 2)
}

/// Edge lists `(u, v)` of the biconnected blocks of a simple graph.
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour position)
        let mut dfs: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut pos)) = dfs.last_mut() {
            if *pos < adj[u].len() {
                let w = adj[u][*pos];
                *pos += 1;
                if disc[w] == usize::MAX {
                    stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                dfs.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (parent, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// Embed one biconnected block; returns the cyclic neighbour order at each
/// of its vertices.
fn embed_block(edges: &[(usize, usize)]) -> Result<Vec<(usize, Vec<usize>)>, String> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Ok(vec![(u, vec![v]), (v, vec![u])]);
    }
    let nb = verts.len();
    if edges.len() > 3 * nb - 6 {
        return Err(format!("{} edges exceed 3·{} - 6", edges.len(), nb));
    }
    let local = |x: usize| verts.binary_search(&x).unwrap();
    let mut adj = vec![Vec::new(); nb];
    for &(u, v) in edges {
        let (a, b) = (local(u), local(v));
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let faces = dmp(&adj)?;

    // Rotation successor from consecutive face corners (a, v, b): succ_v(a) = b.
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); nb];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            let (a, v, b) = (f[(i + l - 1) % l], f[i], f[(i + 1) % l]);
            succ[v].insert(a, b);
        }
    }
    let mut out = Vec::with_capacity(nb);
    for v in 0..nb {
        let start = adj[v][0];
        let mut cyc = vec![verts[start]];
        let mut cur = succ[v][&start];
        while cur != start {
            cyc.push(verts[cur]);
            cur = succ[v][&cur];
        }
        assert_eq!(
            cyc.len(),
            adj[v].len(),
            "face rotation at a block vertex is not a single cycle"
        );
        out.push((verts[v], cyc));
    }
    Ok(out)
}

struct Fragment {
    attachments: Vec<usize>,
    /// Either a single chord `[u, v]` or the vertices of a component.
    chord: Option<(usize, usize)>,
    inner: Vec<usize>,
}

/// Face-extension embedding of a 2-connected simple graph given as sorted
/// adjacency lists. Returns consistently oriented faces as vertex cycles.
fn dmp(adj: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, String> {
    let nb = adj.len();
    let mut emb_v = vec![false; nb];
    let mut emb_e = vec![false; nb * nb];
    let mark = |emb_e: &mut Vec<bool>, a: usize, b: usize| {
        emb_e[a * nb + b] = true;
        emb_e[b * nb + a] = true;
    };

    // Initial cycle: edge (0, w) closed by a shortest path avoiding it.
    let w0 = adj[0][0];
    let mut prev = vec![usize::MAX; nb];
    prev[w0] = w0;
    let mut q = VecDeque::from([w0]);
    while let Some(u) = q.pop_front() {
        for &x in &adj[u] {
            if prev[x] == usize::MAX && !(u == w0 && x == 0) {
                prev[x] = u;
                q.push_back(x);
            }
        }
    }
    let mut cycle = vec![0];
    let mut cur = 0;
    while cur != w0 {
        cur = prev[cur];
        cycle.push(cur);
    }
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_v[a] = true;
        mark(&mut emb_e, a, b);
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    loop {
        let frags = fragments(adj, &emb_v, &emb_e);
        if frags.is_empty() {
            return Ok(faces);
        }
        let members: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; nb];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut choice: Option<(usize, usize)> = None;
        for (i, fr) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| fr.attachments.iter().all(|&a| members[f][a]))
                .collect();
            match admissible.len() {
                0 => return Err("a fragment fits in no face".to_string()),
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("at least one fragment");
        let path = fragment_path(adj, &frags[fi], &emb_v);
        for w in path.windows(2) {
            mark(&mut emb_e, w[0], w[1]);
        }
        for &v in &path {
            emb_v[v] = true;
        }
        let (f1, f2) = split_face(&faces[face], &path);
        faces[face] = f1;
        faces.push(f2);
    }
}

fn fragments(adj: &[Vec<usize>], emb_v: &[bool], emb_e: &[bool]) -> Vec<Fragment> {
    let nb = adj.len();
    let mut out = Vec::new();
    for u in 0..nb {
        if !emb_v[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && emb_v[v] && !emb_e[u * nb + v] {
                out.push(Fragment {
                    attachments: vec![u, v],
                    chord: Some((u, v)),
                    inner: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; nb];
    for s in 0..nb {
        if emb_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut att = Vec::new();
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &adj[u] {
                if emb_v[w] {
                    att.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                    q.push_back(w);
                }
            }
        }
        att.sort_unstable();
        att.dedup();
        out.push(Fragment {
            attachments: att,
            chord: None,
            inner,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], fr: &Fragment, emb_v: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = fr.chord {
        return vec![u, v];
    }
    let nb = adj.len();
    let mut in_frag = vec![false; nb];
    for &v in &fr.inner {
        in_frag[v] = true;
    }
    let a = fr.attachments[0];
    let mut prev = vec![usize::MAX; nb];
    let mut q = VecDeque::new();
    for &x in &adj[a] {
        if in_frag[x] && prev[x] == usize::MAX {
            prev[x] = a;
            q.push_back(x);
        }
    }
    while let Some(x) = q.pop_front() {
        if let Some(&b) = adj[x].iter().find(|&&b| emb_v[b] && b != a) {
            let mut path = vec![b, x];
            let mut cur = x;
            while prev[cur] != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in &adj[x] {
            if in_frag[y] && prev[y] == usize::MAX {
                prev[y] = x;
                q.push_back(y);
            }
        }
    }
    unreachable!("fragments of a 2-connected graph have two attachments")
}

/// Split an oriented face cycle by a path between two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (u, v) = (path[0], *path.last().unwrap());
    let l = face.len();
    let i = face
        .iter()
        .position(|&x| x == u)
        .expect("path start on face");
    let j = face.iter().position(|&x| x == v).expect("path end on face");
    let interior = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut k = i;
    loop {
        f1.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % l;
    }
    f1.extend(interior.iter().rev());
    let mut f2 = Vec::new();
    let mut k = j;
    loop {
        f2.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % l;
    }
    f2.extend(interior.iter());
    (f1, f2)
}

/// How to choose a vertex set whose deletion leaves a planar graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarizerStrategy {
    /// Delete a maximum-degree vertex of the 2-core until planar.
    GreedyDegree,
    /// Delete every `width`-th breadth-first layer, then repair greedily.
    /// `width` defaults to `⌈√(|V| / max(g, 1))⌉`.
    BfsLayers {
        genus: usize,
        layer_width: Option<usize>,
    },
    /// A caller-provided set, checked for planarity.
    UserSupplied(Vec<usize>),
}

impl PlanarizerStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            PlanarizerStrategy::GreedyDegree => "greedy-degree",
            PlanarizerStrategy::BfsLayers { .. } => "bfs-layers",
            PlanarizerStrategy::UserSupplied(_) => "user-supplied",
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PlanarizeError {
    #[error("G - X is not planar for the supplied X = {0:?}")]
    NotPlanarizing(Vec<usize>),
    #[error("vertex {vertex} in X is out of range (n = {n})")]
    OutOfRange { vertex: usize, n: usize },
}

fn planar_without(g: &Multigraph, x: &[usize]) -> bool {
    is_planar(&g.remove_vertices(x).graph).planar
}

/// A vertex set `X` (sorted) such that `G - X` is planar.
pub fn planarizing_set(
    g: &Multigraph,
    strategy: &PlanarizerStrategy,
) -> Result<Vec<usize>, PlanarizeError> {
    let x = match strategy {
        PlanarizerStrategy::UserSupplied(x) => {
            if let Some(&v) = x.iter().find(|&&v| v >= g.vertex_count()) {
                return Err(PlanarizeError::OutOfRange {
                    vertex: v,
                    n: g.vertex_count(),
                });
            }
            let mut x = x.clone();
            x.sort_unstable();
            x.dedup();
            if !planar_without(g, &x) {
                return Err(PlanarizeError::NotPlanarizing(x));
            }
            x
        }
        _ if is_planar(g).planar => Vec::new(),
        PlanarizerStrategy::GreedyDegree => greedy_repair(g, Vec::new()),
        PlanarizerStrategy::BfsLayers { genus, layer_width } => bfs_layers(g, *genus, *layer_width),
    };
    debug_assert!(planar_without(g, &x));
    Ok(x)
}

fn greedy_repair(g: &Multigraph, mut x: Vec<usize>) -> Vec<usize> {
    loop {
        let sub = g.remove_vertices(&x);
        if is_planar(&sub.graph).planar {
            x.sort_unstable();
            return x;
        }
        let core = two_core(&sub.graph);
        let deg = sub.graph.degrees();
        let pick = (0..sub.graph.vertex_count())
            .filter(|&v| core[v])
            .max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a)))
            .expect("a non-planar graph has a non-empty 2-core");
        x.push(sub.vertex_map[pick]);
    }
}

/// Membership mask of the 2-core (vertices surviving repeated removal of degree ≤ 1).
fn two_core(g: &Multigraph) -> Vec<bool> {
    let mut deg = g.degrees();
    let adj = g.adjacency();
    let mut alive = vec![true; g.vertex_count()];
    let mut q: VecDeque<usize> = (0..g.vertex_count()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = q.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &(_, w) in &adj[v] {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    q.push_back(w);
                }
            }
        }
    }
    alive
}

fn bfs_depths(g: &Multigraph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut depth = vec![usize::MAX; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &(_, w) in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    depth
}

/// Layer deletion at every offset `o ∈ [0, width)` (layers `d ≥ 1` with
/// `d ≡ o mod width`), each followed by greedy repair; the smallest result
/// wins, ties to the smaller offset.
fn bfs_layers(g: &Multigraph, genus: usize, layer_width: Option<usize>) -> Vec<usize> {
    let n = g.vertex_count();
    let width = layer_width
        .unwrap_or_else(|| ((n as f64) / (genus.max(1) as f64)).sqrt().ceil() as usize)
        .max(1);
    let depth = bfs_depths(g);
    let mut best: Option<Vec<usize>> = None;
    for offset in 0..width {
        let seed: Vec<usize> = (0..n)
            .filter(|&v| depth[v] >= 1 && depth[v] % width == offset)
            .collect();
        let x = greedy_repair(g, seed);
        if best.as_ref().map_or(true, |b| x.len() < b.len()) {
            best = Some(x);
        }
    }
    best.unwrap_or_default()
}
