//! Exact oracles for extended formulations, benchmark families and reports.
//!
//! Every oracle works on the serialized system alone: it solves exact LPs
//! over the rows of an [`ExtForm`] and compares against combinatorial
//! enumeration or Kruskal's algorithm.

pub mod bench;
pub mod corpus;
pub mod mutation;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exactq::{LinearRow, LpStatus, Rational, Sense, Simplex};
use crate::formulations::{edge_labels, subp_labels};
use crate::graph::{enumerate_spanning_trees, kruskal_mst, GraphError, Multigraph, Weighting};
use crate::polyhedra::ExtForm;

pub const VERIFY_SCHEMA_VERSION: u32 = 1;
/// `verify_stp_exact` solves one LP per non-empty vertex subset.
pub const EXACT_VERTEX_LIMIT: usize = 12;
/// `verify_nesubp` enumerates `Σ_S 2^|E(S)|` points.
pub const NESUBP_VERTEX_LIMIT: usize = 6;
pub const NESUBP_DIRECTIONS: usize = 200;
pub const WEIGHT_RANGE: i64 = 1000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("graph has {n} vertices; this oracle is limited to {limit}")]
    Guard { n: usize, limit: usize },
    #[error("formulation labels do not match the expected space: {0}")]
    Labels(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// LPs solved for this check (feasibility repairs included).
    pub lps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemSizes {
    pub inequalities: usize,
    pub equalities: usize,
    pub variables: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub graph_id: String,
    pub construction: String,
    pub mode: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub sizes: SystemSizes,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub lps: usize,
    /// Wall-clock time, only when requested; reports are otherwise
    /// reproducible byte for byte.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    fn new(f: &ExtForm, mode: &str, checks: Vec<Check>, seed: Option<u64>) -> Self {
        let ok = checks.iter().all(|c| c.status == Status::Pass);
        VerificationReport {
            schema_version: VERIFY_SCHEMA_VERSION,
            graph_id: String::new(),
            construction: f.provenance().op.clone(),
            mode: mode.to_string(),
            status: Status::of(ok),
            lps: checks.iter().map(|c| c.lps).sum(),
            checks,
            sizes: SystemSizes {
                inequalities: f.size(),
                equalities: f.equalities().len(),
                variables: f.num_columns(),
            },
            seed,
            timing_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_graph_id(mut self, id: &str) -> Self {
        self.graph_id = id.to_string();
        self
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The first failing check's counterexample.
    pub fn counterexample(&self) -> Option<&Value> {
        self.checks
            .iter()
            .find(|c| c.status == Status::Fail)
            .and_then(|c| c.counterexample.as_ref())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Column of each expected label in `f`, or an error naming the mismatch.
fn columns_for(f: &ExtForm, expected: &[String]) -> Result<Vec<usize>, VerifyError> {
    if f.dim() != expected.len() {
        return Err(VerifyError::Labels(format!(
            "{} coordinates, expected {}",
            f.dim(),
            expected.len()
        )));
    }
    let pos: HashMap<&str, usize> = f
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    expected
        .iter()
        .map(|l| {
            pos.get(l.as_str())
                .copied()
                .ok_or_else(|| VerifyError::Labels(format!("missing {l}")))
        })
        .collect()
}

fn q(v: &Rational) -> Value {
    Value::String(v.to_pq_string())
}

fn ints(v: &[i64]) -> Value {
    json!(v)
}

/// Exact optimization over the projection of an EF, warm-started between
/// objectives.
struct Optimizer {
    simplex: Simplex,
    cols: Vec<usize>,
    ncols: usize,
}

impl Optimizer {
    fn new(f: &ExtForm, cols: Vec<usize>) -> Self {
        let simplex = Simplex::new(f.num_columns(), f.inequalities(), f.equalities())
            .expect("validated EF rows are in range");
        Optimizer {
            simplex,
            cols,
            ncols: f.num_columns(),
        }
    }

    fn feasible(&self) -> bool {
        self.simplex.is_feasible()
    }

    /// Optimum of `Σ w_i · x_{cols[i]}`; `None` when unbounded or infeasible.
    fn optimize(&mut self, sense: Sense, w: &[Rational]) -> (LpStatus, Option<Rational>) {
        let mut obj = vec![Rational::zero(); self.ncols];
        for (i, wi) in w.iter().enumerate() {
            obj[self.cols[i]] = wi.clone();
        }
        let s = self.simplex.solve(sense, &obj);
        (s.status, s.objective_value)
    }
}

/// Membership of points in the projection: the EF plus `x_i = p_i` rows
/// whose right-hand sides are swapped per query.
struct Membership {
    simplex: Simplex,
    first: usize,
    dim: usize,
}

impl Membership {
    fn new(f: &ExtForm, cols: &[usize]) -> Self {
        let mut eqs = f.equalities().to_vec();
        let first = eqs.len();
        for &c in cols {
            eqs.push(LinearRow::new(vec![(c, Rational::one())], Rational::zero()));
        }
        let simplex = Simplex::new(f.num_columns(), f.inequalities(), &eqs)
            .expect("validated EF rows are in range");
        Membership {
            simplex,
            first,
            dim: cols.len(),
        }
    }

    fn contains(&mut self, point: &[Rational]) -> bool {
        debug_assert_eq!(point.len(), self.dim);
        for (i, v) in point.iter().enumerate() {
            self.simplex.set_equality_rhs(self.first + i, v.clone());
        }
        self.simplex.restore_feasibility()
    }
}

fn indicator(len: usize, ones: impl IntoIterator<Item = usize>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for i in ones {
        v[i] = Rational::one();
    }
    v
}

fn empty_check(name: &str) -> Check {
    Check {
        name: name.to_string(),
        status: Status::Fail,
        lps: 1,
        counterexample: Some(json!({"reason": "formulation is infeasible"})),
    }
}

fn status_name(s: LpStatus) -> &'static str {
    match s {
        LpStatus::Optimal => "optimal",
        LpStatus::Infeasible => "infeasible",
        LpStatus::Unbounded => "unbounded",
    }
}

/// Certify `proj(F) = stp(G)`: every spanning tree is feasible, and the
/// projection satisfies `x ≥ 0`, `Σ x = n − 1` and `x(E(S)) ≤ |S| − 1` for
/// every non-empty `S`, which together describe `stp(G)`.
pub fn verify_stp_exact(f: &ExtForm, g: &Multigraph) -> Result<VerificationReport, VerifyError> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n > EXACT_VERTEX_LIMIT {
        return Err(VerifyError::Guard {
            n,
            limit: EXACT_VERTEX_LIMIT,
        });
    }
    g.require_connected()?;
    let cols = columns_for(f, &edge_labels(g))?;
    let mut opt = Optimizer::new(f, cols.clone());
    if !opt.feasible() {
        let checks = ["trees_feasible", "subtour", "nonnegative", "cardinality"]
            .iter()
            .map(|c| empty_check(c))
            .collect();
        return Ok(VerificationReport::new(f, "exact", checks, None));
    }
    let mut checks = Vec::new();

    // (a) every spanning tree lifts
    let trees = enumerate_spanning_trees(g)?;
    let mut mem = Membership::new(f, &cols);
    let mut bad_tree = None;
    let mut lps = 0;
    for t in &trees {
        lps += 1;
        if !mem.contains(&indicator(m, t.iter().copied())) {
            bad_tree = Some(t.clone());
            break;
        }
    }
    checks.push(Check {
        name: "trees_feasible".into(),
        status: Status::of(bad_tree.is_none()),
        lps,
        counterexample: bad_tree.map(|t| json!({"tree": t})),
    });

    // (b) subtour bounds
    let mut bad = None;
    let mut lps = 0;
    let mut inside = vec![false; n];
    for mask in 1u32..(1u32 << n) {
        for (v, b) in inside.iter_mut().enumerate() {
            *b = mask >> v & 1 == 1;
        }
        let es = g.edges_within(&inside);
        let w = indicator(m, es);
        lps += 1;
        let (st, val) = opt.optimize(Sense::Maximize, &w);
        let limit = Rational::from_int(mask.count_ones() as i64 - 1);
        let ok = st == LpStatus::Optimal && val.as_ref().is_some_and(|v| *v <= limit);
        if !ok {
            let set: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
            bad = Some(json!({
                "subset": set,
                "status": status_name(st),
                "max": val.as_ref().map(q),
                "limit": q(&limit),
            }));
            break;
        }
    }
    checks.push(Check {
        name: "subtour".into(),
        status: Status::of(bad.is_none()),
        lps,
        counterexample: bad,
    });

    // (c) x ≥ 0
    let mut bad = None;
    let mut lps = 0;
    for e in 0..m {
        lps += 1;
        let (st, val) = opt.optimize(Sense::Minimize, &indicator(m, [e]));
        let ok = st == LpStatus::Optimal && val.as_ref().is_some_and(|v| !v.is_negative());
        if !ok {
            bad = Some(json!({"edge": e, "status": status_name(st), "min": val.as_ref().map(q)}));
            break;
        }
    }
    checks.push(Check {
        name: "nonnegative".into(),
        status: Status::of(bad.is_none()),
        lps,
        counterexample: bad,
    });

    // (d) Σ x = n − 1 at both extremes
    let all = vec![Rational::one(); m];
    let target = Rational::from_int(n as i64 - 1);
    let mut bad = None;
    for sense in [Sense::Maximize, Sense::Minimize] {
        let (st, val) = opt.optimize(sense, &all);
        if st != LpStatus::Optimal || val.as_ref() != Some(&target) {
            bad = Some(json!({
                "sense": if sense == Sense::Maximize { "max" } else { "min" },
                "status": status_name(st),
                "value": val.as_ref().map(q),
                "expected": q(&target),
            }));
            break;
        }
    }
    checks.push(Check {
        name: "cardinality".into(),
        status: Status::of(bad.is_none()),
        lps: 2,
        counterexample: bad,
    });
    Ok(VerificationReport::new(f, "exact", checks, None))
}

/// Random integer vector in `[-WEIGHT_RANGE, WEIGHT_RANGE]^len` for trial
/// `trial`; each trial has its own stream so results never depend on order.
pub fn trial_weights(seed: u64, trial: u64, len: usize) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..len)
        .map(|_| rng.gen_range(-WEIGHT_RANGE..=WEIGHT_RANGE))
        .collect()
}

/// Compare the LP minimum over `F` with Kruskal's optimum for `trials`
/// seeded integer weightings.
pub fn verify_stp_sampled(
    f: &ExtForm,
    g: &Multigraph,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    g.require_connected()?;
    let m = g.edge_count();
    let cols = columns_for(f, &edge_labels(g))?;
    // an infeasible system reports status "infeasible" on every trial
    let mut opt = Optimizer::new(f, cols);
    let mut mismatches = 0usize;
    let mut first = None;
    for t in 0..trials {
        let w = trial_weights(seed, t as u64, m);
        let wr: Vec<Rational> = w.iter().map(|&x| Rational::from_int(x)).collect();
        let (_, mst) = kruskal_mst(g, &Weighting(wr.clone()))?;
        let (st, val) = opt.optimize(Sense::Minimize, &wr);
        if st != LpStatus::Optimal || val.as_ref() != Some(&mst) {
            mismatches += 1;
            if first.is_none() {
                first = Some(json!({
                    "trial": t,
                    "weights": ints(&w),
                    "status": status_name(st),
                    "lp_min": val.as_ref().map(q),
                    "kruskal": q(&mst),
                }));
            }
        }
    }
    let counterexample = first.map(|mut c| {
        c["mismatches"] = json!(mismatches);
        c
    });
    let check = Check {
        name: "kruskal".into(),
        status: Status::of(mismatches == 0),
        lps: trials,
        counterexample,
    };
    Ok(VerificationReport::new(
        f,
        "sampled",
        vec![check],
        Some(seed),
    ))
}

/// All `(χ^S, χ^F)` with `∅ ≠ S ⊆ V`, `F ⊆ E(S)`, in the subgraph space.
pub fn nesubp_vertices(g: &Multigraph) -> Vec<Vec<Rational>> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut out = Vec::new();
    let mut inside = vec![false; n];
    for mask in 1u32..(1u32 << n) {
        for (v, b) in inside.iter_mut().enumerate() {
            *b = mask >> v & 1 == 1;
        }
        let es = g.edges_within(&inside);
        for sub in 0u64..(1u64 << es.len()) {
            let mut p = vec![Rational::zero(); n + m];
            for v in (0..n).filter(|&v| inside[v]) {
                p[v] = Rational::one();
            }
            for (i, &e) in es.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    p[n + e] = Rational::one();
                }
            }
            out.push(p);
        }
    }
    out
}

/// Certify `proj(F) = nesubp(G)` by point membership of all its vertices,
/// exclusion of the origin and equal support values in seeded directions.
pub fn verify_nesubp(
    f: &ExtForm,
    g: &Multigraph,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n > NESUBP_VERTEX_LIMIT {
        return Err(VerifyError::Guard {
            n,
            limit: NESUBP_VERTEX_LIMIT,
        });
    }
    let cols = columns_for(f, &subp_labels(g))?;
    let points = nesubp_vertices(g);
    let mut opt = Optimizer::new(f, cols.clone());
    if !opt.feasible() {
        let checks = ["vertices_feasible", "origin_excluded", "support"]
            .iter()
            .map(|c| empty_check(c))
            .collect();
        return Ok(VerificationReport::new(f, "nesubp", checks, Some(seed)));
    }
    let mut checks = Vec::new();
    let mut mem = Membership::new(f, &cols);

    let mut bad = None;
    let mut lps = 0;
    for p in &points {
        lps += 1;
        if !mem.contains(p) {
            bad = Some(json!({"point": p.iter().map(q).collect::<Vec<_>>()}));
            break;
        }
    }
    checks.push(Check {
        name: "vertices_feasible".into(),
        status: Status::of(bad.is_none()),
        lps,
        counterexample: bad,
    });

    let origin_in = mem.contains(&vec![Rational::zero(); n + m]);
    checks.push(Check {
        name: "origin_excluded".into(),
        status: Status::of(!origin_in),
        lps: 1,
        counterexample: origin_in.then(|| json!({"point": "origin"})),
    });

    let mut bad = None;
    let mut lps = 0;
    for t in 0..NESUBP_DIRECTIONS {
        let d = trial_weights(seed, t as u64, n + m);
        let dr: Vec<Rational> = d.iter().map(|&x| Rational::from_int(x)).collect();
        let best = points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&dr)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(_, b)| b.clone())
                    .sum::<Rational>()
            })
            .max()
            .expect("at least one vertex");
        lps += 1;
        let (st, val) = opt.optimize(Sense::Maximize, &dr);
        if st != LpStatus::Optimal || val.as_ref() != Some(&best) {
            bad = Some(json!({
                "trial": t,
                "direction": ints(&d),
                "status": status_name(st),
                "lp_max": val.as_ref().map(q),
                "vertex_max": q(&best),
            }));
            break;
        }
    }
    checks.push(Check {
        name: "support".into(),
        status: Status::of(bad.is_none()),
        lps,
        counterexample: bad,
    });
    Ok(VerificationReport::new(f, "nesubp", checks, Some(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulations::{martin_stp, nesubp_planar_ef, subp_ef, williams_stp_planar};

    #[test]
    fn martin_k4_exact() {
        let g = corpus::complete(4);
        let rep = verify_stp_exact(&martin_stp(&g).unwrap(), &g).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.check("subtour").unwrap().lps, 15);
        assert_eq!(rep.check("trees_feasible").unwrap().lps, 16);
    }

    #[test]
    fn williams_c3_exact() {
        let g = corpus::cycle(3);
        let rep = verify_stp_exact(&williams_stp_planar(&g).unwrap(), &g).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.check("subtour").unwrap().lps, 7);
    }

    #[test]
    fn subp_is_not_stp() {
        let g = corpus::complete(4);
        let subp = subp_ef(&g);
        assert!(matches!(
            verify_stp_exact(&subp, &g),
            Err(VerifyError::Labels(_))
        ));
        // vertex coordinates become auxiliaries
        let edge_only = crate::polyhedra::ExtForm::new(
            edge_labels(&g),
            4,
            subp.inequalities()
                .iter()
                .map(|r| {
                    LinearRow::new(
                        r.coeffs
                            .iter()
                            .map(|(i, a)| (if *i < 4 { 6 + i } else { i - 4 }, a.clone()))
                            .collect(),
                        r.rhs.clone(),
                    )
                })
                .collect(),
            vec![],
            crate::polyhedra::Provenance::leaf("subp"),
        )
        .unwrap();
        let rep = verify_stp_exact(&edge_only, &g).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.check("cardinality").unwrap().status, Status::Fail);
    }

    #[test]
    fn nesubp_small() {
        let k2 = corpus::path(2);
        assert_eq!(nesubp_vertices(&k2).len(), 4);
        let rep = verify_nesubp(&nesubp_planar_ef(&k2).unwrap(), &k2, 0).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        // P3: three singletons, {a,b} and {b,c} with two edge sets each,
        // {a,c} with one, the whole path with four
        assert_eq!(nesubp_vertices(&corpus::path(3)).len(), 12);

        let rep = verify_nesubp(&subp_ef(&k2), &k2, 0).unwrap();
        assert_eq!(rep.check("origin_excluded").unwrap().status, Status::Fail);
    }

    #[test]
    fn guards() {
        let g = corpus::complete(13);
        let f = ExtForm::free(edge_labels(&g));
        assert_eq!(
            verify_stp_exact(&f, &g),
            Err(VerifyError::Guard { n: 13, limit: 12 })
        );
        let g = corpus::path(7);
        assert!(matches!(
            verify_nesubp(&ExtForm::free(subp_labels(&g)), &g, 0),
            Err(VerifyError::Guard { .. })
        ));
    }

    #[test]
    fn trial_weights_are_per_trial() {
        let a = trial_weights(7, 3, 10);
        assert_eq!(a, trial_weights(7, 3, 10));
        assert_ne!(a, trial_weights(7, 4, 10));
        assert!(a.iter().all(|w| w.abs() <= WEIGHT_RANGE));
    }
}
