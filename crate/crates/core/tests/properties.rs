//! Property tests for the graph oracles and the polyhedral operations.

use proptest::prelude::*;

use stpef::exactq::{lp_solve, LinearRow, LpProblem, LpStatus, Rational, Sense};
use stpef::formulations::{martin_stp, subp_ef, williams_stp_planar};
use stpef::graph::{enumerate_spanning_trees, kruskal_mst, Multigraph, Weighting};
use stpef::planar::is_planar;
use stpef::polyhedra::{
    balas_union, monotonize, robust_counterpart, ExtForm, Provenance, RobustSpec,
};
use stpef::verify::{trial_weights, verify_stp_sampled};

fn r(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Connected simple graph on `n` vertices: a random spanning tree (parent of
/// `v` is `parents[v - 1] % v`) plus the extra pairs selected by `extra`.
fn connected_graph(n: usize, parents: &[usize], extra: &[bool]) -> Multigraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((parents[v - 1] % v, v));
    }
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            let present = edges.contains(&(u, v));
            if !present && extra.get(k).copied().unwrap_or(false) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Multigraph::new(n, edges, true).unwrap()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(0..n, n - 1),
            proptest::collection::vec(proptest::bool::weighted(0.35), n * (n - 1) / 2),
        )
            .prop_map(|(n, p, e)| connected_graph(n, &p, &e))
    })
}

/// `l ≤ x ≤ u` in the labelled space.
fn box_ef(labels: &[&str], l: &[i64], u: &[i64]) -> ExtForm {
    let mut rows = Vec::new();
    for i in 0..labels.len() {
        rows.push(LinearRow::new(vec![(i, r(1))], r(u[i])));
        rows.push(LinearRow::new(vec![(i, r(-1))], r(-l[i])));
    }
    ExtForm::new(
        labels.iter().map(|s| s.to_string()).collect(),
        0,
        rows,
        vec![],
        Provenance::leaf("box"),
    )
    .unwrap()
}

fn max_over(f: &ExtForm, c: &[i64]) -> (LpStatus, Option<Rational>) {
    let mut objective = vec![Rational::zero(); f.num_columns()];
    for (i, ci) in c.iter().enumerate() {
        objective[i] = r(*ci);
    }
    let p = LpProblem {
        num_vars: f.num_columns(),
        sense: Sense::Maximize,
        objective,
        inequalities: f.inequalities().to_vec(),
        equalities: f.equalities().to_vec(),
    };
    let s = lp_solve(&p).unwrap();
    (s.status, s.objective_value)
}

/// Whether `x` lies in the projection of `f`.
fn contains(f: &ExtForm, x: &[i64]) -> bool {
    let mut eqs = f.equalities().to_vec();
    for (i, v) in x.iter().enumerate() {
        eqs.push(LinearRow::new(vec![(i, r(1))], r(*v)));
    }
    let p = LpProblem {
        num_vars: f.num_columns(),
        sense: Sense::Maximize,
        objective: vec![Rational::zero(); f.num_columns()],
        inequalities: f.inequalities().to_vec(),
        equalities: eqs,
    };
    lp_solve(&p).unwrap().status != LpStatus::Infeasible
}

fn box_max(l: &[i64], u: &[i64], c: &[i64]) -> i64 {
    (0..c.len()).map(|i| (c[i] * l[i]).max(c[i] * u[i])).sum()
}

fn sorted_pair() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=4, 0i64..=4).prop_map(|(a, w)| (a, a + w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kruskal_matches_enumeration(g in graph_strategy(6), seed in 0u64..1000) {
        let w: Vec<Rational> = trial_weights(seed, 0, g.edge_count()).into_iter().map(r).collect();
        let (tree, value) = kruskal_mst(&g, &Weighting(w.clone())).unwrap();
        prop_assert_eq!(tree.len(), g.vertex_count() - 1);
        let best = enumerate_spanning_trees(&g)
            .unwrap()
            .iter()
            .map(|t| t.iter().fold(Rational::zero(), |s, &e| &s + &w[e]))
            .min()
            .unwrap();
        prop_assert_eq!(value, best);
    }

    #[test]
    fn size_formulas_on_random_graphs(g in graph_strategy(7)) {
        let (n, m) = (g.vertex_count(), g.edge_count());
        prop_assert_eq!(subp_ef(&g).size(), 3 * m + n);
        prop_assert_eq!(martin_stp(&g).unwrap().size(), 2 * n * m);
        if is_planar(&g).planar {
            prop_assert_eq!(williams_stp_planar(&g).unwrap().size(), 4 * m);
        }
    }

    #[test]
    fn balas_support_is_max_of_parts(
        b1 in proptest::collection::vec(sorted_pair(), 2),
        b2 in proptest::collection::vec(sorted_pair(), 2),
        b3 in proptest::collection::vec(sorted_pair(), 2),
        c in proptest::collection::vec(-5i64..=5, 2),
    ) {
        let boxes = [b1, b2, b3];
        let parts: Vec<ExtForm> = boxes
            .iter()
            .map(|b| {
                let l: Vec<i64> = b.iter().map(|p| p.0).collect();
                let u: Vec<i64> = b.iter().map(|p| p.1).collect();
                box_ef(&["a", "b"], &l, &u)
            })
            .collect();
        let u = balas_union(&parts).unwrap();
        prop_assert_eq!(u.size(), parts.iter().map(ExtForm::size).sum::<usize>() + parts.len());
        let want = boxes
            .iter()
            .map(|b| {
                let l: Vec<i64> = b.iter().map(|p| p.0).collect();
                let u: Vec<i64> = b.iter().map(|p| p.1).collect();
                box_max(&l, &u, &c)
            })
            .max()
            .unwrap();
        let (st, got) = max_over(&u, &c);
        prop_assert_eq!(st, LpStatus::Optimal);
        prop_assert_eq!(got, Some(r(want)));
    }

    #[test]
    fn monotonize_is_downward_closure(
        u in proptest::collection::vec(0i64..=4, 2),
        w in proptest::collection::vec(0i64..=4, 2),
        p in proptest::collection::vec(-2i64..=6, 2),
    ) {
        // box [u - min(u, w), u] inside the non-negative orthant
        let l: Vec<i64> = u.iter().zip(&w).map(|(a, b)| a - a.min(b)).collect();
        let f = monotonize(&box_ef(&["a", "b"], &l, &u)).unwrap();
        let inside = p.iter().zip(&u).all(|(pi, ui)| 0 <= *pi && pi <= ui);
        prop_assert_eq!(contains(&f, &p), inside);
    }

    #[test]
    fn robust_counterpart_is_sound_and_complete(
        bx in proptest::collection::vec(sorted_pair(), 2),
        m in proptest::collection::vec(-2i64..=2, 4),
        m0 in proptest::collection::vec(-2i64..=2, 2),
        a in proptest::collection::vec(-2i64..=2, 2),
        beta in -6i64..=6,
        x in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let l: Vec<i64> = bx.iter().map(|p| p.0).collect();
        let u: Vec<i64> = bx.iter().map(|p| p.1).collect();
        let inner = box_ef(&["q0", "q1"], &l, &u);
        let spec = RobustSpec {
            outer_labels: vec!["x0".into(), "x1".into()],
            pairing: (0..2).map(|t| vec![(0, r(m[2 * t])), (1, r(m[2 * t + 1]))]).collect(),
            offset: m0.iter().map(|&v| r(v)).collect(),
            linear: vec![(0, r(a[0])), (1, r(a[1]))],
            beta: r(beta),
        };
        let rc = robust_counterpart(&inner, &spec).unwrap();
        prop_assert_eq!(rc.size(), inner.size() + 1);
        let c: Vec<i64> = (0..2).map(|t| m[2 * t] * x[0] + m[2 * t + 1] * x[1] + m0[t]).collect();
        let holds = box_max(&l, &u, &c) <= a[0] * x[0] + a[1] * x[1] + beta;
        prop_assert_eq!(contains(&rc, &x), holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn constructions_agree_with_kruskal(g in graph_strategy(6), seed in 0u64..1000) {
        let mut builds = vec![martin_stp(&g).unwrap()];
        if is_planar(&g).planar {
            builds.push(williams_stp_planar(&g).unwrap());
        }
        for f in &builds {
            let rep = verify_stp_sampled(f, &g, 10, seed).unwrap();
            prop_assert!(rep.passed(), "{}", rep.to_json());
        }
    }
}
