//! Named constructions: the subgraph polytope, Martin's and Williams'
//! spanning tree formulations, forest and non-empty subgraph polytopes, the
//! vertex deletion step and the two end-to-end pipelines.
//!
//! Labels follow one convention throughout: `v{i}` for vertex coordinates
//! and `e{j}` for edge coordinates. The subgraph space is
//! `v0..v{n-1}, e0..e{m-1}`; the spanning tree space is `e0..e{m-1}`.

use serde::Serialize;

use crate::exactq::{LinearRow, Rational};
use crate::graph::{GraphError, Multigraph, Subgraph};
use crate::planar::{is_planar, planarizing_set, PlanarizeError, PlanarizerStrategy};
use crate::polyhedra::{
    add_inequalities, balas_union, embed_zero, face_restrict, intersect, monotonize, product,
    robust_counterpart, ExtForm, PolyError, Provenance, RobustSpec,
};
use crate::surface::{Dart, EmbeddedGraph, SurfaceError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Planarize(#[from] PlanarizeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("non-planar: {0}")]
    NonPlanar(String),
    #[error("root vertex {root} is not incident to root face {face}")]
    RootNotOnFace { root: usize, face: usize },
    #[error("graph must be simple")]
    NotSimple,
    #[error("labels {0:?} are not in the expected space")]
    BadLabels(Vec<String>),
    #[error("G - X is non-empty but no formulation for it was given")]
    MissingInner,
}

pub fn vertex_label(v: usize) -> String {
    format!("v{v}")
}

pub fn edge_label(e: usize) -> String {
    format!("e{e}")
}

pub fn edge_labels(g: &Multigraph) -> Vec<String> {
    (0..g.edge_count()).map(edge_label).collect()
}

pub fn subp_labels(g: &Multigraph) -> Vec<String> {
    (0..g.vertex_count())
        .map(vertex_label)
        .chain((0..g.edge_count()).map(edge_label))
        .collect()
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn row(coeffs: &[(usize, i64)], rhs: i64) -> LinearRow {
    LinearRow::new(coeffs.iter().map(|&(i, a)| (i, r(a))).collect(), r(rhs))
}

fn require_simple(g: &Multigraph) -> Result<(), FormError> {
    if g.is_simple() {
        Ok(())
    } else {
        Err(FormError::NotSimple)
    }
}

/// `0 ≤ y_e ≤ x_u, x_v` and `x_v ≤ 1`. Isolated vertices additionally get
/// `x_v ≥ 0`, which no edge row implies.
pub fn subp_ef(g: &Multigraph) -> ExtForm {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut ineqs = Vec::with_capacity(3 * m + n);
    for e in 0..m {
        ineqs.push(row(&[(n + e, -1)], 0));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        ineqs.push(row(&[(n + e, 1), (u, -1)], 0));
        ineqs.push(row(&[(n + e, 1), (v, -1)], 0));
    }
    for v in 0..n {
        ineqs.push(row(&[(v, 1)], 1));
    }
    let deg = g.degrees();
    let mut isolated = 0;
    for v in (0..n).filter(|&v| deg[v] == 0) {
        ineqs.push(row(&[(v, -1)], 0));
        isolated += 1;
    }
    let f = ExtForm::new(
        subp_labels(g),
        0,
        ineqs,
        vec![],
        Provenance::leaf("subp").with("n", n).with("m", m),
    )
    .expect("subp rows are in range");
    assert_eq!(f.size(), 3 * m + n + isolated);
    f
}

/// Column of `z_{k,a}` in Martin's system; arc `2e` runs `u → v` for
/// `edges[e] = (u, v)` and arc `2e + 1` runs back.
fn martin_col(m: usize, k: usize, arc: usize) -> usize {
    m + k * 2 * m + arc
}

/// Martin's formulation: for every root `k`, the tree is oriented towards
/// `k` and every other vertex has exactly one outgoing arc.
pub fn martin_stp(g: &Multigraph) -> Result<ExtForm, FormError> {
    g.require_connected()?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut ineqs = Vec::with_capacity(2 * n * m);
    for k in 0..n {
        for a in 0..2 * m {
            ineqs.push(row(&[(martin_col(m, k, a), -1)], 0));
        }
    }
    let mut eqs = vec![row(
        &(0..m).map(|e| (e, 1)).collect::<Vec<_>>(),
        n as i64 - 1,
    )];
    for k in 0..n {
        for e in 0..m {
            eqs.push(row(
                &[
                    (martin_col(m, k, 2 * e), 1),
                    (martin_col(m, k, 2 * e + 1), 1),
                    (e, -1),
                ],
                0,
            ));
        }
    }
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        out_arcs[u].push(2 * e);
        out_arcs[v].push(2 * e + 1);
    }
    for k in 0..n {
        for (i, arcs) in out_arcs.iter().enumerate() {
            let coeffs: Vec<(usize, i64)> =
                arcs.iter().map(|&a| (martin_col(m, k, a), 1)).collect();
            eqs.push(row(&coeffs, if i == k { 0 } else { 1 }));
        }
    }
    let f = ExtForm::new(
        edge_labels(g),
        2 * n * m,
        ineqs,
        eqs,
        Provenance::leaf("martin").with("n", n).with("m", m),
    )?;
    assert_eq!(f.size(), 2 * n * m);
    Ok(f)
}

/// The point of Martin's system over the tree `tree` (edge indices): every
/// root orients the tree towards itself.
pub fn martin_lift(g: &Multigraph, tree: &[usize]) -> Vec<Rational> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut point = vec![Rational::zero(); m + 2 * n * m];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in tree {
        point[e] = Rational::one();
        let (u, v) = g.edge(e);
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    for k in 0..n {
        let mut seen = vec![false; n];
        seen[k] = true;
        let mut stack = vec![k];
        while let Some(w) = stack.pop() {
            for &(e, x) in &adj[w] {
                if !seen[x] {
                    seen[x] = true;
                    // x → w points towards k
                    let arc = if g.edge(e).0 == x { 2 * e } else { 2 * e + 1 };
                    point[martin_col(m, k, arc)] = Rational::one();
                    stack.push(x);
                }
            }
        }
    }
    point
}

/// Williams' formulation from a planar embedding: a primal tree oriented
/// towards `root` and a dual tree on the remaining dual edges oriented
/// towards `root_face`. Columns after the `x`-block are the primal arcs
/// (`2e` leaves `edges[e].0`) and then the dual arcs (`2e` leaves the face
/// of dart `(e, 0)`). Without an explicit root the smallest vertex and the
/// first traced face at it are used.
pub fn williams_stp(
    emb: &EmbeddedGraph,
    root: Option<(usize, usize)>,
) -> Result<ExtForm, FormError> {
    let g = &emb.graph;
    g.require_connected()?;
    if emb.genus != 0 {
        return Err(FormError::NonPlanar(format!(
            "embedding has genus {}",
            emb.genus
        )));
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m == 0 {
        return Ok(ExtForm::new(
            vec![],
            0,
            vec![],
            vec![],
            Provenance::leaf("williams").with("n", n).with("m", 0),
        )?);
    }
    let (r0, f0) = match root {
        Some(rf) => rf,
        None => (0, emb.first_face_at(0).expect("vertex 0 has an edge")),
    };
    let on_face = f0 < emb.faces.len() && emb.faces[f0].iter().any(|d| d.vertex(g) == r0);
    if !on_face {
        return Err(FormError::RootNotOnFace { root: r0, face: f0 });
    }
    let primal = |a: usize| m + a;
    let dual = |a: usize| 3 * m + a;
    let ineqs = (0..4 * m).map(|c| row(&[(m + c, -1)], 0)).collect();

    let mut eqs = Vec::new();
    let mut v_out: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut f_out: Vec<Vec<(usize, i64)>> = vec![Vec::new(); emb.face_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        v_out[u].push((primal(2 * e), 1));
        v_out[v].push((primal(2 * e + 1), 1));
        f_out[emb.face_of_dart[Dart::new(e, 0).id()]].push((dual(2 * e), 1));
        f_out[emb.face_of_dart[Dart::new(e, 1).id()]].push((dual(2 * e + 1), 1));
    }
    for (v, arcs) in v_out.iter().enumerate() {
        eqs.push(row(arcs, if v == r0 { 0 } else { 1 }));
    }
    for (f, arcs) in f_out.iter().enumerate() {
        eqs.push(row(arcs, if f == f0 { 0 } else { 1 }));
    }
    for e in 0..m {
        eqs.push(row(
            &[
                (primal(2 * e), 1),
                (primal(2 * e + 1), 1),
                (dual(2 * e), 1),
                (dual(2 * e + 1), 1),
            ],
            1,
        ));
        eqs.push(row(
            &[(e, 1), (primal(2 * e), -1), (primal(2 * e + 1), -1)],
            0,
        ));
    }
    let f = ExtForm::new(
        edge_labels(g),
        4 * m,
        ineqs,
        eqs,
        Provenance::leaf("williams")
            .with("n", n)
            .with("m", m)
            .with("root", r0)
            .with("root_face", f0),
    )?;
    assert_eq!(f.size(), 4 * m);
    Ok(f)
}

/// Williams' formulation on the embedding found by the planarity test.
pub fn williams_stp_planar(g: &Multigraph) -> Result<ExtForm, FormError> {
    let res = is_planar(g);
    let rot = res.embedding.ok_or_else(|| {
        FormError::NonPlanar(res.witness.unwrap_or_else(|| "no planar embedding".into()))
    })?;
    williams_stp(&EmbeddedGraph::new(g.clone(), rot)?, None)
}

/// Rename `v{i}` / `e{j}` labels of a formulation over `sub.graph` to the
/// parent's indices.
pub fn lift_labels(f: &ExtForm, sub: &Subgraph) -> Result<ExtForm, FormError> {
    let labels = f
        .labels()
        .iter()
        .map(|l| {
            let (map, rest) = match l.split_at(1) {
                ("v", rest) => (&sub.vertex_map, rest),
                ("e", rest) => (&sub.edge_map, rest),
                _ => return Err(FormError::BadLabels(vec![l.clone()])),
            };
            let i: usize = rest
                .parse()
                .map_err(|_| FormError::BadLabels(vec![l.clone()]))?;
            let old = *map
                .get(i)
                .ok_or_else(|| FormError::BadLabels(vec![l.clone()]))?;
            Ok(format!("{}{old}", &l[..1]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(f.relabel(labels)?)
}

/// Forest polytope of `h`: the product of spanning tree formulations of
/// its components, made down-monotone. Non-planar components fall back to
/// Martin's formulation and leave a warning in the provenance.
pub fn forest_ef(h: &Multigraph) -> Result<ExtForm, FormError> {
    require_simple(h)?;
    let mut acc = ExtForm::free(vec![]);
    let mut expected = 2 * h.edge_count();
    for comp in h.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = h.induced(&comp);
        let res = is_planar(&sub.graph);
        let stp = match res.embedding {
            Some(rot) => {
                expected += 4 * sub.graph.edge_count();
                williams_stp(&EmbeddedGraph::new(sub.graph.clone(), rot)?, None)?
            }
            None => {
                let (n, m) = (sub.graph.vertex_count(), sub.graph.edge_count());
                expected += 2 * n * m;
                let f = martin_stp(&sub.graph)?;
                let warn =
                    format!("component with {n} vertices is non-planar; used Martin's formulation");
                let p = f.provenance().clone().with("warning", warn);
                f.with_provenance(p)
            }
        };
        acc = product(&acc, &lift_labels(&stp, &sub)?)?;
    }
    let f = monotonize(&embed_zero(&acc, &edge_labels(h))?)?;
    assert_eq!(f.size(), expected);
    Ok(f)
}

/// Non-empty subgraph polytope of a planar `h`: the subgraph system cut by
/// `y(F') ≤ x(V) − 1` for every forest `F'`, the latter imposed through the
/// robust counterpart of the forest polytope.
pub fn nesubp_planar_ef(h: &Multigraph) -> Result<ExtForm, FormError> {
    require_simple(h)?;
    let n = h.vertex_count();
    let subp = subp_ef(h);
    let forest = forest_ef(h)?;
    let spec = RobustSpec {
        outer_labels: subp_labels(h),
        pairing: (0..h.edge_count()).map(|j| vec![(n + j, r(1))]).collect(),
        offset: vec![Rational::zero(); h.edge_count()],
        linear: (0..n).map(|v| (v, r(1))).collect(),
        beta: r(-1),
    };
    let rc = robust_counterpart(&forest, &spec)?;
    let f = intersect(&subp, &rc)?;
    assert_eq!(f.size(), subp.size() + forest.size() + 1);
    Ok(f)
}

/// `nesubp(G)` as the union of `nesubp(G − X)` (zero on `X` and on the
/// deleted edges) and, for every `v ∈ X`, the face `x_v = 1` of the subgraph
/// polytope. `inner` must already carry `G`'s labels; it is ignored when
/// `X = V`, where `G − X` has no non-empty subgraph.
pub fn nesubp_deletion_ef(
    g: &Multigraph,
    x: &[usize],
    inner: Option<&ExtForm>,
) -> Result<ExtForm, FormError> {
    let n = g.vertex_count();
    let target = subp_labels(g);
    let mut parts = Vec::new();
    if x.len() < n {
        let inner = inner.ok_or(FormError::MissingInner)?;
        parts.push(embed_zero(inner, &target)?);
    }
    let subp = subp_ef(g);
    for &v in x {
        if v >= n {
            return Err(GraphError::EndpointOutOfRange {
                edge: usize::MAX,
                vertex: v,
                n,
            }
            .into());
        }
        let face = face_restrict(&subp, vec![row(&[(v, 1)], 1)])?;
        let p = Provenance::node("deletion_piece", vec![face.provenance().clone()]);
        parts.push(face.with_provenance(p.with("vertex", v)));
    }
    let u = balas_union(&parts)?;
    let expected = parts.iter().map(|p| p.size()).sum::<usize>() + parts.len();
    assert_eq!(u.size(), expected);
    Ok(u)
}

/// Spanning tree polytope from a formulation of `nesubp(G)`: `x ≥ 0`,
/// `Σ x = n − 1` and `x(F) − |S| ≤ −1` for every non-empty subgraph
/// `(S, F)`, the last family through the robust counterpart of `inner`.
pub fn stp_from_nesubp(g: &Multigraph, inner: &ExtForm) -> Result<ExtForm, FormError> {
    g.require_connected()?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut pairing = Vec::with_capacity(inner.dim());
    let mut offset = Vec::with_capacity(inner.dim());
    let mut seen = vec![false; n + m];
    for l in inner.labels() {
        let bad = || FormError::BadLabels(vec![l.clone()]);
        let i: usize = l.get(1..).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        match &l[..1] {
            "v" if i < n => {
                seen[i] = true;
                pairing.push(vec![]);
                offset.push(r(-1));
            }
            "e" if i < m => {
                seen[n + i] = true;
                pairing.push(vec![(i, r(1))]);
                offset.push(Rational::zero());
            }
            _ => return Err(bad()),
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(FormError::BadLabels(inner.labels().to_vec()));
    }
    let spec = RobustSpec {
        outer_labels: edge_labels(g),
        pairing,
        offset,
        linear: vec![],
        beta: r(-1),
    };
    let rc = robust_counterpart(inner, &spec)?;
    let nonneg = (0..m).map(|e| row(&[(e, -1)], 0)).collect();
    let rc = add_inequalities(&rc, nonneg)?;
    let all: Vec<(usize, i64)> = (0..m).map(|e| (e, 1)).collect();
    let f = face_restrict(&rc, vec![row(&all, n as i64 - 1)])?;
    assert_eq!(f.size(), inner.size() + 1 + m);
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageSize {
    pub stage: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub expression: String,
    pub value: f64,
    /// `size / value`
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeBound {
    pub expression: String,
    pub limit: i64,
    pub holds: bool,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Sizes of a construction and of every intermediate stage.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeReport {
    pub schema_version: u32,
    pub construction: String,
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planarizer: Option<String>,
    pub apex_set: Vec<usize>,
    pub apex_size: usize,
    pub stages: Vec<StageSize>,
    pub size: usize,
    pub equalities: usize,
    pub variables: usize,
    pub martin_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_bound: Option<EdgeBound>,
    pub warnings: Vec<String>,
}

impl SizeReport {
    /// Report for a single-stage construction.
    pub fn simple(construction: &str, g: &Multigraph, f: &ExtForm) -> Self {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let (expression, value) = match construction {
            "subp" => ("3m + n", (3 * m + n) as f64),
            "martin" => ("2nm", (2 * n * m) as f64),
            "williams" => ("4m", (4 * m) as f64),
            _ => ("n", n as f64),
        };
        SizeReport {
            schema_version: REPORT_SCHEMA_VERSION,
            construction: construction.to_string(),
            n,
            m,
            genus: None,
            planarizer: None,
            apex_set: vec![],
            apex_size: 0,
            stages: vec![StageSize {
                stage: construction.to_string(),
                size: f.size(),
            }],
            size: f.size(),
            equalities: f.equalities().len(),
            variables: f.num_columns(),
            martin_size: 2 * n * m,
            bound: Some(bound(expression, value, f.size())),
            edge_bound: None,
            warnings: f.provenance().warnings(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn bound(expression: &str, value: f64, size: usize) -> BoundReport {
    BoundReport {
        expression: expression.to_string(),
        value,
        ratio: if value > 0.0 {
            size as f64 / value
        } else {
            0.0
        },
    }
}

fn stage(name: &str, size: usize) -> StageSize {
    StageSize {
        stage: name.to_string(),
        size,
    }
}

/// `G − X` planar ⇒ `nesubp(G − X)` ⇒ `nesubp(G)` ⇒ `stp(G)`.
fn deletion_pipeline(g: &Multigraph, x: &[usize]) -> Result<(ExtForm, Vec<StageSize>), FormError> {
    g.require_connected()?;
    require_simple(g)?;
    let sub = g.remove_vertices(x);
    if !is_planar(&sub.graph).planar {
        return Err(PlanarizeError::NotPlanarizing(x.to_vec()).into());
    }
    let mut stages = vec![stage("planarizing_set", x.len())];
    let inner = if sub.graph.vertex_count() > 0 {
        let h = &sub.graph;
        stages.push(stage("subp(G-X)", subp_ef(h).size()));
        stages.push(stage("forest(G-X)", forest_ef(h)?.size()));
        let ne = nesubp_planar_ef(h)?;
        stages.push(stage("nesubp(G-X)", ne.size()));
        Some(lift_labels(&ne, &sub)?)
    } else {
        None
    };
    let del = nesubp_deletion_ef(g, x, inner.as_ref())?;
    stages.push(stage("nesubp(G)", del.size()));
    let stp = stp_from_nesubp(g, &del)?;
    stages.push(stage("stp(G)", stp.size()));
    Ok((stp, stages))
}

fn pipeline_report(
    construction: &str,
    g: &Multigraph,
    f: &ExtForm,
    x: Vec<usize>,
    stages: Vec<StageSize>,
) -> SizeReport {
    let (n, m) = (g.vertex_count(), g.edge_count());
    SizeReport {
        schema_version: REPORT_SCHEMA_VERSION,
        construction: construction.to_string(),
        n,
        m,
        genus: None,
        planarizer: None,
        apex_size: x.len(),
        apex_set: x,
        stages,
        size: f.size(),
        equalities: f.equalities().len(),
        variables: f.num_columns(),
        martin_size: 2 * n * m,
        bound: None,
        edge_bound: None,
        warnings: f.provenance().warnings(),
    }
}

/// Spanning tree formulation for a graph of genus at most `genus`, deleting
/// a planarizing set chosen by `strategy`.
pub fn bounded_genus_stp(
    g: &Multigraph,
    genus: usize,
    strategy: &PlanarizerStrategy,
) -> Result<(ExtForm, SizeReport), FormError> {
    g.require_connected()?;
    let x = planarizing_set(g, strategy)?;
    let (f, stages) = deletion_pipeline(g, &x)?;
    let mut rep = pipeline_report("genus", g, &f, x, stages);
    let (n, m, gf) = (g.vertex_count() as f64, g.edge_count(), genus as f64);
    rep.genus = Some(genus);
    rep.planarizer = Some(strategy.name().to_string());
    rep.bound = Some(bound(
        "g^(1/2)·n^(3/2) + g^(3/2)·n^(1/2)",
        gf.sqrt() * n.powf(1.5) + gf.powf(1.5) * n.sqrt(),
        f.size(),
    ));
    let limit = 3 * (g.vertex_count() as i64 - 2 + 2 * genus as i64);
    rep.edge_bound = Some(EdgeBound {
        expression: "3(n - 2 + 2g)".into(),
        limit,
        holds: m as i64 <= limit,
    });
    Ok((f, rep))
}

/// Spanning tree formulation for a graph that becomes planar after
/// deleting the apex set `x`.
pub fn kapex_stp(g: &Multigraph, x: &[usize]) -> Result<(ExtForm, SizeReport), FormError> {
    g.require_connected()?;
    let x = planarizing_set(g, &PlanarizerStrategy::UserSupplied(x.to_vec()))?;
    let (f, stages) = deletion_pipeline(g, &x)?;
    let (n, m, k) = (g.vertex_count() as i64, g.edge_count(), x.len() as i64);
    let mut rep = pipeline_report("kapex", g, &f, x, stages);
    rep.planarizer = Some("user-supplied".into());
    rep.bound = Some(bound("k·m + n", (k * m as i64 + n) as f64, f.size()));
    let limit = k * (n - 1) + 3 * (n - k) - 6;
    rep.edge_bound = Some(EdgeBound {
        expression: "k(n - 1) + 3(n - k) - 6".into(),
        limit,
        holds: m as i64 <= limit,
    });
    Ok((f, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::corpus;

    #[test]
    fn size_formulas() {
        let k4 = corpus::complete(4);
        assert_eq!(subp_ef(&k4).size(), 22);
        assert_eq!(martin_stp(&k4).unwrap().size(), 48);
        assert_eq!(williams_stp_planar(&k4).unwrap().size(), 24);
        assert_eq!(martin_stp(&corpus::cycle(3)).unwrap().size(), 18);
        assert_eq!(forest_ef(&corpus::cycle(3)).unwrap().size(), 18);
    }

    #[test]
    fn williams_rejects_non_planar() {
        assert!(matches!(
            williams_stp_planar(&corpus::complete(5)),
            Err(FormError::NonPlanar(_))
        ));
        let (g, rot) = corpus::k5_torus();
        let emb = EmbeddedGraph::new(g, rot).unwrap();
        assert!(matches!(
            williams_stp(&emb, None),
            Err(FormError::NonPlanar(_))
        ));
    }

    #[test]
    fn williams_root_must_touch_root_face() {
        let g = corpus::cube();
        let rot = is_planar(&g).embedding.unwrap();
        let emb = EmbeddedGraph::new(g, rot).unwrap();
        let far = (0..emb.faces.len())
            .find(|&f| emb.faces[f].iter().all(|d| d.vertex(&emb.graph) != 0))
            .unwrap();
        assert_eq!(
            williams_stp(&emb, Some((0, far))),
            Err(FormError::RootNotOnFace { root: 0, face: far })
        );
    }

    #[test]
    fn martin_requires_connected() {
        let g = Multigraph::new(4, vec![(0, 1), (2, 3)], true).unwrap();
        assert!(matches!(martin_stp(&g), Err(FormError::Graph(_))));
    }

    #[test]
    fn deletion_sizes() {
        let k5 = corpus::complete(5);
        let sub = k5.remove_vertices(&[4]);
        let inner = lift_labels(&nesubp_planar_ef(&sub.graph).unwrap(), &sub).unwrap();
        let del = nesubp_deletion_ef(&k5, &[4], Some(&inner)).unwrap();
        assert_eq!(del.size(), inner.size() + 35 + 2);
        let stp = stp_from_nesubp(&k5, &del).unwrap();
        assert_eq!(stp.size(), del.size() + 1 + 10);
        assert!(matches!(
            nesubp_deletion_ef(&k5, &[4], None),
            Err(FormError::MissingInner)
        ));
    }

    #[test]
    fn kapex_rejects_non_planarizing_set() {
        assert!(matches!(
            kapex_stp(&corpus::complete(6), &[5]),
            Err(FormError::Planarize(PlanarizeError::NotPlanarizing(_)))
        ));
        let (_, rep) = kapex_stp(&corpus::wheel_plus_apex(), &[6]).unwrap();
        assert!(rep.edge_bound.unwrap().holds);
    }
}
