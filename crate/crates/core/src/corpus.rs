//! Named example manifolds used by the verification harness and the tests.

use crate::brieskorn::{brieskorn_seifert, BrieskornSpec};
use crate::plumbing::PlumbingGraph;
use crate::seifert::{lens_chain, star_graph, SeifertData};

/// Chain of `p - 1` vertices of Euler number `-2`, the `A_{p-1}` graph.
pub fn a_chain(p: usize) -> PlumbingGraph {
    PlumbingGraph::chain(&vec![-2; p - 1])
}

/// `D_n` for `n >= 4`, as Seifert data `(-2; (2,1), (2,1), (n-2, n-3))`.
pub fn d_seifert(n: i64) -> SeifertData {
    let p = n - 2;
    SeifertData::new(-2, vec![(2, 1), (2, 1), (p, p - 1)]).expect("valid D_n data")
}

pub fn e6_seifert() -> SeifertData {
    brieskorn_seifert(&BrieskornSpec::new(vec![2, 3, 4]).expect("valid")).expect("E6 is a QHS")
}

pub fn e7_seifert() -> SeifertData {
    SeifertData::new(-2, vec![(2, 1), (3, 2), (4, 3)]).expect("valid E7 data")
}

pub fn e8_seifert() -> SeifertData {
    brieskorn_seifert(&BrieskornSpec::new(vec![2, 3, 5]).expect("valid")).expect("E8 is a QHS")
}

/// Central `-3` vertex with three arms of `m - 1` vertices of Euler number `-2`.
pub fn rational_family(m: i64) -> SeifertData {
    SeifertData::new(-3, vec![(m, m - 1); 3]).expect("valid data for m >= 2")
}

/// Central vertex `2 - nu` with leaves `-a_i`.
pub fn polygonal(a: &[i64]) -> SeifertData {
    let nu = a.len() as i64;
    SeifertData::new(2 - nu, a.iter().map(|&x| (x, 1)).collect()).expect("valid polygonal data")
}

/// Parameter sets of polygonal graphs with `l < 0`.
pub const POLYGONAL_SETS: [&[i64]; 5] = [&[3, 3, 4], &[3, 3, 3, 3], &[2, 2, 2, 2, 2], &[3, 4, 5], &[3, 3, 3, 3, 3, 3]];

/// The cyclic triple cover of `(x^2+y^3)(x^3+y^2)`: a chain
/// `(-2,-2,-2,-2,-3,-2,-2,-2,-2)` with a two-vertex `-2` chain hanging off
/// the second and the eighth chain vertex.
pub fn non_star_graph() -> PlumbingGraph {
    let mut g = PlumbingGraph::chain(&[-2, -2, -2, -2, -3, -2, -2, -2, -2]);
    for at in [1, 7] {
        let u = g.add_vertex(-2);
        let w = g.add_vertex(-2);
        g.add_edge(at, u);
        g.add_edge(u, w);
    }
    g
}

pub const BRIESKORN_SPECS: [&[i64]; 8] = [
    &[2, 3, 5],
    &[2, 3, 7],
    &[2, 3, 11],
    &[4, 6, 5],
    &[6, 10, 7],
    &[6, 10, 7, 11],
    &[4, 2, 2, 3],
    &[8, 2, 2, 3, 5],
];

/// A small labelled corpus of graphs spanning all example families.
pub fn graph_corpus() -> Vec<(String, PlumbingGraph)> {
    let mut out: Vec<(String, PlumbingGraph)> = Vec::new();
    for (p, q) in [(2, 1), (3, 2), (4, 1), (5, 2), (7, 3), (12, 5)] {
        out.push((format!("L({p},{q})"), lens_chain(p, q).expect("valid lens")));
    }
    for p in [3, 6] {
        out.push((format!("A{}", p - 1), a_chain(p)));
    }
    for n in [4, 5, 8] {
        out.push((format!("D{n}"), star_graph(&d_seifert(n)).graph));
    }
    out.push(("E6".into(), star_graph(&e6_seifert()).graph));
    out.push(("E7".into(), star_graph(&e7_seifert()).graph));
    out.push(("E8".into(), star_graph(&e8_seifert()).graph));
    for m in [2, 3, 4] {
        out.push((format!("rational m={m}"), star_graph(&rational_family(m)).graph));
    }
    for a in POLYGONAL_SETS.iter().take(3) {
        out.push((format!("polygonal {a:?}"), star_graph(&polygonal(a)).graph));
    }
    out.push(("non-star".into(), non_star_graph()));
    for a in [&[4, 6, 5][..], &[6, 10, 7], &[4, 2, 2, 3]] {
        let s = brieskorn_seifert(&BrieskornSpec::new(a.to_vec()).expect("valid")).expect("QHS");
        out.push((format!("Sigma{a:?}"), star_graph(&s).graph));
    }
    out
}
