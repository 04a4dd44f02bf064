//! Plumbing graphs and the invariants read off the intersection lattice.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{int, is_integer};
use crate::exact::{invert_rational_matrix, IntMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub euler: i64,
}

/// A decorated tree as read from or written to JSON. Vertex order fixes the
/// row order of the intersection matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
}

impl PlumbingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex with id `v<index>` and returns its index.
    pub fn add_vertex(&mut self, euler: i64) -> usize {
        let i = self.vertices.len();
        self.vertices.push(Vertex {
            id: format!("v{i}"),
            euler,
        });
        i
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.vertices[a].id.clone(), self.vertices[b].id.clone());
        self.edges.push((a, b));
    }

    /// A chain with the given Euler numbers.
    pub fn chain(eulers: &[i64]) -> Self {
        let mut g = Self::new();
        for (i, &e) in eulers.iter().enumerate() {
            g.add_vertex(e);
            if i > 0 {
                g.add_edge(i - 1, i);
            }
        }
        g
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Adjacency lists by vertex index, after checking that the graph is a tree.
    pub fn tree_adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        let mut index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "vertices[{i}]: duplicate id {:?}",
                    v.id
                )));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (k, (a, b)) in self.edges.iter().enumerate() {
            let look = |id: &String| {
                index.get(id.as_str()).copied().ok_or_else(|| {
                    Error::InvalidGraph(format!("edges[{k}]: unknown vertex id {id:?}"))
                })
            };
            let (i, j) = (look(a)?, look(b)?);
            if i == j {
                return Err(Error::NotATree(format!("edges[{k}] is a loop at {a:?}")));
            }
            if adj[i].contains(&j) {
                return Err(Error::NotATree(format!("edges[{k}] repeats {a:?}-{b:?}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        if self.edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} vertices but {} edges",
                n,
                self.edges.len()
            )));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::NotATree(format!(
                "vertex {:?} is not connected to {:?}",
                self.vertices[v].id, self.vertices[0].id
            )));
        }
        Ok(adj)
    }
}

/// The intersection lattice of a validated plumbing graph.
#[derive(Clone, Debug)]
pub struct LatticeData {
    graph: PlumbingGraph,
    adjacency: Vec<Vec<usize>>,
    matrix: IntMatrix,
    inverse: RatMatrix,
    det: BigInt,
    zk: Vec<BigRational>,
}

pub fn build_lattice(g: &PlumbingGraph) -> Result<LatticeData> {
    let adjacency = g.tree_adjacency()?;
    let n = g.len();
    let matrix = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::from(g.vertices[i].euler)
        } else if adjacency[i].contains(&j) {
            BigInt::from(1)
        } else {
            BigInt::zero()
        }
    });
    let minors = matrix.leading_minors();
    for (k, m) in minors.iter().enumerate() {
        let ok = if k % 2 == 0 { m.is_negative() } else { m.is_positive() };
        if !ok {
            return Err(Error::NotNegativeDefinite {
                size: k + 1,
                value: m.clone(),
            });
        }
    }
    let det = minors[n - 1].clone();
    let inverse = invert_rational_matrix(&matrix)?;
    let z: Vec<BigRational> = g.vertices.iter().map(|v| int(v.euler + 2)).collect();
    let zk = inverse.mul_vec(&z);
    Ok(LatticeData {
        graph: g.clone(),
        adjacency,
        matrix,
        inverse,
        det,
        zk,
    })
}

impl LatticeData {
    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.graph.vertices[v].euler
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `|det I|`, the order of the first homology group.
    pub fn order(&self) -> BigInt {
        self.det.abs()
    }

    /// Coefficients of the anticanonical cycle `Z_K` in the basis of curves.
    pub fn zk_coefficients(&self) -> &[BigRational] {
        &self.zk
    }

    /// `(-e_v - 2)_v`, the canonical class in dual coordinates.
    pub fn k_vec(&self) -> Vec<BigInt> {
        self.graph
            .vertices
            .iter()
            .map(|v| BigInt::from(-v.euler - 2))
            .collect()
    }

    /// `(e_v + 2)_v`, the anticanonical class in dual coordinates.
    pub fn anticanonical_vec(&self) -> Vec<BigInt> {
        self.graph
            .vertices
            .iter()
            .map(|v| BigInt::from(v.euler + 2))
            .collect()
    }

    fn sum_euler(&self) -> i64 {
        self.graph.vertices.iter().map(|v| v.euler).sum()
    }

    /// `c^T I^{-1} c` for the integer vector `c = (f(v))_v`, skipping zero entries.
    fn sparse_form(&self, f: impl Fn(usize) -> i64) -> BigRational {
        let special: Vec<(usize, i64)> = (0..self.len())
            .map(|v| (v, f(v)))
            .filter(|&(_, c)| c != 0)
            .collect();
        let mut s = BigRational::zero();
        for &(v, a) in &special {
            for &(w, b) in &special {
                s += &self.inverse[(v, w)] * BigInt::from(a * b);
            }
        }
        s
    }

    /// `K^2 + #V`, through the expression that only touches nodes and ends.
    pub fn k2_plus_nv(&self) -> BigRational {
        let n = self.len() as i64;
        let fast = int(self.sum_euler() + 3 * n + 2)
            + self.sparse_form(|v| 2 - self.degree(v) as i64);
        assert_eq!(fast, self.k2_plus_nv_naive(), "K^2 + #V routes disagree");
        fast
    }

    /// `K^2 + #V` from `Z_K^2` directly.
    pub fn k2_plus_nv_naive(&self) -> BigRational {
        self.k2() + int(self.len() as i64)
    }

    /// `K^2 = Z_K . Z_K = sum_{v,w} (e_v+2)(e_w+2) (I^{-1})_{vw}`.
    pub fn k2(&self) -> BigRational {
        self.sparse_form(|v| self.euler(v) + 2)
    }

    /// The Casson-Walker invariant, normalized as Lescop.
    pub fn casson_walker(&self) -> BigRational {
        self.casson_walker_over_order() * self.order()
    }

    /// `lambda / |H|`.
    pub fn casson_walker_over_order(&self) -> BigRational {
        let n = self.len() as i64;
        let mut s = int(self.sum_euler() + 3 * n);
        for v in 0..self.len() {
            let c = 2 - self.degree(v) as i64;
            if c != 0 {
                s += &self.inverse[(v, v)] * BigInt::from(c);
            }
        }
        -s / int(24)
    }

    pub fn numerically_gorenstein(&self) -> bool {
        self.zk.iter().all(is_integer)
    }
}

pub fn k2_plus_nv(l: &LatticeData) -> BigRational {
    l.k2_plus_nv()
}

pub fn casson_walker(l: &LatticeData) -> BigRational {
    l.casson_walker()
}

pub fn numerically_gorenstein(l: &LatticeData) -> bool {
    l.numerically_gorenstein()
}

/// Blowup of a generic point on `E_v`: a new `-1` leaf at `v`, and `e_v` drops by one.
pub fn blowup_vertex(g: &PlumbingGraph, v: usize) -> PlumbingGraph {
    let mut out = g.clone();
    out.vertices[v].euler -= 1;
    let id = fresh_id(&out);
    out.vertices.push(Vertex { id: id.clone(), euler: -1 });
    out.edges.push((g.vertices[v].id.clone(), id));
    out
}

/// Blowup of the intersection point of an edge: a `-1` vertex is inserted on
/// the edge and both ends drop by one.
pub fn blowup_edge(g: &PlumbingGraph, edge: usize) -> PlumbingGraph {
    let mut out = g.clone();
    let (a, b) = out.edges.remove(edge);
    for v in &mut out.vertices {
        if v.id == a || v.id == b {
            v.euler -= 1;
        }
    }
    let id = fresh_id(&out);
    out.vertices.push(Vertex { id: id.clone(), euler: -1 });
    out.edges.push((a, id.clone()));
    out.edges.push((id, b));
    out
}

fn fresh_id(g: &PlumbingGraph) -> String {
    (g.len()..)
        .map(|i| format!("b{i}"))
        .find(|id| g.vertices.iter().all(|v| &v.id != id))
        .expect("unbounded search")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn a1_and_a2() {
        let a1 = build_lattice(&PlumbingGraph::chain(&[-2])).unwrap();
        assert_eq!(a1.zk_coefficients(), &[rat(0, 1)]);
        assert_eq!(a1.k2_plus_nv(), rat(1, 1));
        assert_eq!(a1.casson_walker(), rat(0, 1));
        let a2 = build_lattice(&PlumbingGraph::chain(&[-2, -2])).unwrap();
        assert_eq!(a2.order(), BigInt::from(3));
        assert_eq!(a2.inverse()[(0, 1)], rat(-1, 3));
        assert_eq!(a2.k2_plus_nv(), rat(2, 1));
        assert_eq!(a2.casson_walker(), rat(-1, 12));
    }

    #[test]
    fn positive_vertex_is_rejected() {
        let err = build_lattice(&PlumbingGraph::chain(&[1])).unwrap_err();
        assert!(matches!(err, Error::NotNegativeDefinite { size: 1, .. }));
    }

    #[test]
    fn cycles_and_forests_are_rejected() {
        let mut g = PlumbingGraph::chain(&[-2, -2, -2]);
        g.add_edge(0, 2);
        assert!(matches!(build_lattice(&g), Err(Error::NotATree(_))));
        let mut g = PlumbingGraph::chain(&[-2, -2]);
        g.add_vertex(-2);
        assert!(matches!(build_lattice(&g), Err(Error::NotATree(_))));
    }

    #[test]
    fn unknown_edge_endpoint_is_located() {
        let g = PlumbingGraph::from_json(
            r#"{"vertices":[{"id":"a","euler":-2}],"edges":[["a","b"]]}"#,
        )
        .unwrap();
        let msg = build_lattice(&g).unwrap_err().to_string();
        assert!(msg.contains("edges[0]"), "{msg}");
        let msg = PlumbingGraph::from_json("{\"vertices\":[{\"id\":\"a\"}]}")
            .unwrap_err()
            .to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn d4_is_gorenstein() {
        let mut g = PlumbingGraph::chain(&[-2]);
        for _ in 0..3 {
            let v = g.add_vertex(-2);
            g.add_edge(0, v);
        }
        let l = build_lattice(&g).unwrap();
        assert!(l.numerically_gorenstein());
        assert_eq!(l.order(), BigInt::from(4));
    }
}
