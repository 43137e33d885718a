#![allow(dead_code)]

use stpef::formulations::{
    bounded_genus_stp, kapex_stp, martin_stp, nesubp_planar_ef, stp_from_nesubp,
    williams_stp_planar,
};
use stpef::graph::Multigraph;
use stpef::planar::PlanarizerStrategy;
use stpef::polyhedra::ExtForm;
use stpef::surface::RotationSystem;
use stpef::verify::corpus::CorpusGraph;

/// Every spanning tree construction that applies to a corpus graph.
pub fn constructions(c: &CorpusGraph) -> Vec<(&'static str, ExtForm)> {
    let g = &c.graph;
    let mut out = vec![("martin", martin_stp(g).unwrap())];
    if c.is_planar() {
        out.push(("williams", williams_stp_planar(g).unwrap()));
        let ne = nesubp_planar_ef(g).unwrap();
        out.push(("nesubp_route", stp_from_nesubp(g, &ne).unwrap()));
    }
    out.push(("genus", genus_build(c)));
    if let Some(x) = &c.apex {
        out.push(("kapex", kapex_stp(g, x).unwrap().0));
    }
    out
}

pub fn genus_build(c: &CorpusGraph) -> ExtForm {
    let s = PlanarizerStrategy::BfsLayers {
        genus: c.genus,
        layer_width: None,
    };
    bounded_genus_stp(&c.graph, c.genus, &s).unwrap().0
}

/// Faces of a rotation system, traced here rather than by the library:
/// from dart `(e, end)` cross to `(e, 1 - end)` and turn to the next dart in
/// the rotation at that vertex.
pub fn face_count(g: &Multigraph, rot: &RotationSystem) -> usize {
    let raw = rot.to_raw();
    let m = g.edge_count();
    let mut next = vec![usize::MAX; 2 * m];
    for darts in &raw {
        for (i, d) in darts.iter().enumerate() {
            let nd = darts[(i + 1) % darts.len()];
            next[2 * d[0] + d[1]] = 2 * nd[0] + nd[1];
        }
    }
    let mut seen = vec![false; 2 * m];
    let mut faces = 0;
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = next[d ^ 1];
        }
    }
    faces
}

/// `|V| − |E| + |F| = 2` on every component, counting an edgeless
/// component as one face.
pub fn euler_planar_oracle(g: &Multigraph, rot: &RotationSystem) -> bool {
    let comps = g.components();
    let mut comp_of = vec![0; g.vertex_count()];
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let mut edges = vec![0i64; comps.len()];
    for &(u, _) in g.edges() {
        edges[comp_of[u]] += 1;
    }
    let isolated = edges.iter().filter(|&&e| e == 0).count();
    let chi =
        g.vertex_count() as i64 - g.edge_count() as i64 + (face_count(g, rot) + isolated) as i64;
    chi == 2 * comps.len() as i64
}
