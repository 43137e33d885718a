//! Size tables over graph families. Builds formulations only; no LPs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::formulations::{
    bounded_genus_stp, kapex_stp, martin_stp, nesubp_planar_ef, subp_ef, williams_stp,
    williams_stp_planar, FormError,
};
use crate::graph::Multigraph;
use crate::planar::{is_planar, PlanarizerStrategy};
use crate::surface::{EmbeddedGraph, RotationSystem};
use crate::verify::corpus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    TorusGrid,
    PlanarGrid,
    Complete,
}

impl Family {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "torus-grid" => Some(Family::TorusGrid),
            "planar-grid" => Some(Family::PlanarGrid),
            "complete" => Some(Family::Complete),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::TorusGrid => "torus-grid",
            Family::PlanarGrid => "planar-grid",
            Family::Complete => "complete",
        }
    }

    /// Smallest `k` with a simple, non-empty instance.
    pub fn min_k(self) -> usize {
        match self {
            Family::TorusGrid => 3,
            Family::PlanarGrid | Family::Complete => 1,
        }
    }

    /// Instance `k`, the genus of its surface and a rotation when known.
    pub fn instance(self, k: usize) -> (Multigraph, usize, Option<RotationSystem>) {
        match self {
            Family::TorusGrid => {
                let (g, r) = corpus::torus_grid_embedded(k);
                (g, 1, Some(r))
            }
            Family::PlanarGrid => (corpus::planar_grid(k), 0, None),
            // genus of K_k: ⌈(k−3)(k−4)/12⌉
            Family::Complete => {
                let g = if k < 5 {
                    0
                } else {
                    ((k - 3) * (k - 4)).div_ceil(12)
                };
                (corpus::complete(k), g, None)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub genus: usize,
    /// `|X|` of the genus pipeline, when it was built.
    pub planarizing_set: Option<usize>,
    pub sizes: BTreeMap<String, usize>,
    pub build_ms: Option<u64>,
}

pub const METHODS: [&str; 6] = ["martin", "williams", "subp", "nesubp", "genus", "kapex"];

fn size_of(
    method: &str,
    g: &Multigraph,
    genus: usize,
) -> Result<(usize, Option<usize>), FormError> {
    Ok(match method {
        "martin" => (martin_stp(g)?.size(), None),
        "williams" => (williams_stp_planar(g)?.size(), None),
        "subp" => (subp_ef(g).size(), None),
        "nesubp" => (nesubp_planar_ef(g)?.size(), None),
        "genus" => {
            let strategy = PlanarizerStrategy::BfsLayers {
                genus,
                layer_width: None,
            };
            let (f, rep) = bounded_genus_stp(g, genus, &strategy)?;
            (f.size(), Some(rep.apex_size))
        }
        "kapex" => {
            let x = crate::planar::planarizing_set(g, &PlanarizerStrategy::GreedyDegree)?;
            let (f, rep) = kapex_stp(g, &x)?;
            (f.size(), Some(rep.apex_size))
        }
        other => panic!("unknown method {other}"),
    })
}

/// One row per `k` in `kmin..=kmax`. Methods that do not apply to an
/// instance (Williams on a non-planar graph) are left out of its row.
/// Panics if `kmin <= kmax` and `kmin` is below the family's `min_k`.
pub fn bench_family(
    family: Family,
    kmin: usize,
    kmax: usize,
    methods: &[String],
    timing: bool,
) -> Result<Vec<BenchRow>, FormError> {
    let mut rows = Vec::new();
    for k in kmin..=kmax {
        let (g, genus, rot) = family.instance(k);
        let start = Instant::now();
        let mut sizes = BTreeMap::new();
        let mut x_size = None;
        for method in methods {
            let res = if method == "williams" {
                match (&rot, is_planar(&g).planar) {
                    (_, true) => williams_stp_planar(&g).map(|f| (f.size(), None)),
                    (Some(r), false) => EmbeddedGraph::new(g.clone(), r.clone())
                        .map_err(FormError::from)
                        .and_then(|e| williams_stp(&e, None))
                        .map(|f| (f.size(), None)),
                    (None, false) => continue,
                }
            } else {
                size_of(method, &g, genus)
            };
            match res {
                Ok((s, x)) => {
                    sizes.insert(method.clone(), s);
                    if x.is_some() && method == "genus" {
                        x_size = x;
                    }
                }
                Err(FormError::NonPlanar(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        rows.push(BenchRow {
            family: family.name().to_string(),
            k,
            n: g.vertex_count(),
            m: g.edge_count(),
            genus,
            planarizing_set: x_size,
            sizes,
            build_ms: timing.then(|| start.elapsed().as_millis() as u64),
        });
    }
    Ok(rows)
}

/// Smallest `k` from which the genus pipeline stays below Martin's size
/// through the end of the table.
pub fn crossover(rows: &[BenchRow]) -> Option<usize> {
    let below = |r: &BenchRow| match (r.sizes.get("genus"), r.sizes.get("martin")) {
        (Some(g), Some(m)) => g < m,
        _ => false,
    };
    let mut best = None;
    for r in rows.iter().rev() {
        if below(r) {
            best = Some(r.k);
        } else {
            break;
        }
    }
    best
}

/// CSV with one column per method; `size/k^3` of the genus pipeline is
/// appended when present.
pub fn to_csv(rows: &[BenchRow], methods: &[String]) -> String {
    let timing = rows.iter().any(|r| r.build_ms.is_some());
    let mut out = String::from("family,k,n,m,genus,planarizing_set");
    for m in methods {
        write!(out, ",{m}").unwrap();
    }
    let has_genus = methods.iter().any(|m| m == "genus");
    if has_genus {
        out.push_str(",genus_per_k3");
    }
    if timing {
        out.push_str(",build_ms");
    }
    out.push('\n');
    for r in rows {
        write!(out, "{},{},{},{},{},", r.family, r.k, r.n, r.m, r.genus).unwrap();
        if let Some(x) = r.planarizing_set {
            write!(out, "{x}").unwrap();
        }
        for m in methods {
            out.push(',');
            if let Some(s) = r.sizes.get(m) {
                write!(out, "{s}").unwrap();
            }
        }
        if has_genus {
            out.push(',');
            if let Some(s) = r.sizes.get("genus") {
                write!(out, "{:.4}", *s as f64 / (r.k as f64).powi(3)).unwrap();
            }
        }
        if timing {
            write!(out, ",{}", r.build_ms.unwrap_or(0)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn methods(m: &[&str]) -> Vec<String> {
        m.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn complete_graph_genus() {
        let g: Vec<usize> = (1..=8).map(|k| Family::Complete.instance(k).1).collect();
        assert_eq!(g, vec![0, 0, 0, 0, 1, 1, 1, 2]);
    }

    #[test]
    fn closed_form_columns() {
        let rows = bench_family(Family::Complete, 5, 8, &methods(&["martin"]), false).unwrap();
        let got: Vec<usize> = rows.iter().map(|r| r.sizes["martin"]).collect();
        let want: Vec<usize> = (5..=8).map(|n| 2 * n * (n * (n - 1) / 2)).collect();
        assert_eq!(got, want);
        assert_eq!(got[0], 100);

        let rows = bench_family(Family::PlanarGrid, 2, 5, &methods(&["williams"]), false).unwrap();
        for r in &rows {
            assert_eq!(r.sizes["williams"], 4 * (2 * r.k * r.k - 2 * r.k));
        }

        let rows = bench_family(Family::TorusGrid, 3, 5, &methods(&["martin"]), false).unwrap();
        for r in &rows {
            assert_eq!(r.sizes["martin"], 4 * r.k.pow(4));
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let ms = methods(&["martin", "genus"]);
        let a = to_csv(
            &bench_family(Family::TorusGrid, 3, 4, &ms, false).unwrap(),
            &ms,
        );
        let b = to_csv(
            &bench_family(Family::TorusGrid, 3, 4, &ms, false).unwrap(),
            &ms,
        );
        assert_eq!(a, b);
        assert!(a.starts_with("family,k,n,m,genus,planarizing_set,martin,genus,genus_per_k3\n"));
        assert_eq!(a.lines().count(), 3);
    }
}
