//! Translations between graphs, two-graphs and antipodal spaces.
//!
//! Matching edges of an antipodal space are always taken in the order of
//! [`AntipodalSpace::matching_edges`] (by smaller endpoint). That order is the
//! vertex order of [`two_graph_of_antipodal`] and the edge order used by the
//! witness construction.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parity::ParitySystem;
use crate::structures::{AntipodalSpace, Graph, PartialMap, TwoGraph, Vertex};

/// A two-colouring of the points separating every antipodal pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PodeLabelling(Vec<u8>);

impl PodeLabelling {
    pub fn new(a: &AntipodalSpace, values: Vec<u8>) -> Result<Self> {
        if values.len() != a.order() {
            return Err(Error::Dimension {
                expected: a.order(),
                found: values.len(),
            });
        }
        for v in 0..a.order() {
            if values[v] > 1 || values[v] + values[a.antipode(v)] != 1 {
                return Err(Error::NotIsomorphism(format!(
                    "pode labelling gives {v} and its antipode {} the same side",
                    a.antipode(v)
                )));
            }
        }
        Ok(PodeLabelling(values))
    }

    /// The smaller endpoint of every matching edge gets 0.
    pub fn canonical(a: &AntipodalSpace) -> Self {
        PodeLabelling(
            (0..a.order())
                .map(|v| u8::from(a.antipode(v) < v))
                .collect(),
        )
    }

    pub fn value(&self, v: Vertex) -> u8 {
        self.0[v]
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn flipped(&self) -> Self {
        PodeLabelling(self.0.iter().map(|&b| 1 - b).collect())
    }
}

/// The antipodal space on `G × {0,1}`, vertex `(x, i)` at index `2x + i`,
/// with the pode labelling `p((x, i)) = i`.
pub fn double_cover(g: &Graph) -> (AntipodalSpace, PodeLabelling) {
    let n = 2 * g.order();
    let a = AntipodalSpace::from_fn(n, |u, v| {
        let (x, i) = (u / 2, u % 2);
        let (y, j) = (v / 2, v % 2);
        if x == y {
            3
        } else if g.has_edge(x, y) == (i == j) {
            1
        } else {
            2
        }
    })
    .expect("double cover of a graph is antipodal");
    let p = PodeLabelling((0..n).map(|v| (v % 2) as u8).collect());
    (a, p)
}

/// Graph on the points of pode 0 with distance-1 pairs as edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PodeGraph {
    pub graph: Graph,
    /// `vertices[i]` is the point of the space behind graph vertex `i`.
    pub vertices: Vec<Vertex>,
}

pub fn pode_graph(a: &AntipodalSpace, p: &PodeLabelling) -> Result<PodeGraph> {
    let p = PodeLabelling::new(a, p.values().to_vec())?;
    let vertices: Vec<Vertex> = (0..a.order()).filter(|&v| p.value(v) == 0).collect();
    let graph = Graph::from_fn(vertices.len(), |i, j| a.dist(vertices[i], vertices[j]) == 1);
    Ok(PodeGraph { graph, vertices })
}

/// The endpoint of `edge` at distance 1 from `v`.
fn near_endpoint(a: &AntipodalSpace, v: Vertex, edge: (Vertex, Vertex)) -> Vertex {
    if a.dist(v, edge.0) == 1 {
        edge.0
    } else {
        edge.1
    }
}

/// Two-graph on the matching edges. Three matching edges form a triple when
/// the distance-1 pairs among their six endpoints form two triangles; the
/// other possibility is a 6-cycle.
pub fn two_graph_of_antipodal(a: &AntipodalSpace) -> TwoGraph {
    let m = a.matching_edges();
    let mut triples = BTreeSet::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            for k in j + 1..m.len() {
                let start = m[i].0;
                let b = near_endpoint(a, start, m[j]);
                let c = near_endpoint(a, b, m[k]);
                if near_endpoint(a, c, m[i]) == start {
                    triples.insert([i, j, k]);
                }
            }
        }
    }
    TwoGraph::from_sorted_unchecked(m.len(), triples)
}

/// Graph whose edges `{y, z}` are the pairs with `{base, y, z}` a triple.
pub fn graph_of_two_graph(t: &TwoGraph, base: Vertex) -> Result<Graph> {
    if base >= t.order() {
        return Err(Error::OutOfRange {
            vertex: base,
            order: t.order(),
        });
    }
    Ok(Graph::from_fn(t.order(), |y, z| {
        y != base && z != base && t.has_triple(base, y, z)
    }))
}

/// Lifts an isomorphism `beta` between the two-graphs of `a1` and `a2`
/// (given on matching-edge indices) to an isomorphism of the spaces.
///
/// One parity variable per matching edge records whether the smaller
/// endpoint of `e` goes to the larger endpoint of `beta(e)`; every pair of
/// edges fixes the XOR of their variables. The minimal edge of each
/// component keeps its orientation.
pub fn lift_two_graph_isomorphism(
    a1: &AntipodalSpace,
    a2: &AntipodalSpace,
    beta: &PartialMap,
) -> Result<PartialMap> {
    let m1 = a1.matching_edges();
    let m2 = a2.matching_edges();
    if m1.len() != m2.len() {
        return Err(Error::Dimension {
            expected: m1.len(),
            found: m2.len(),
        });
    }
    let n = m1.len();
    let target = beta.as_permutation(n).ok_or_else(|| {
        Error::MalformedMap(format!(
            "lifting needs a bijection between all {n} matching edges"
        ))
    })?;
    let mut system = ParitySystem::new(n);
    for e in 0..n {
        for f in e + 1..n {
            let near1 = a1.dist(m1[e].0, m1[f].0) == 1;
            let near2 = a2.dist(m2[target[e]].0, m2[target[f]].0) == 1;
            system.add(e, f, near1 != near2);
        }
    }
    let flips = system
        .solve()
        .map_err(|c| Error::Unliftable { cycle: c.cycle })?;
    let mut image = vec![0; a1.order()];
    for e in 0..n {
        let (lo, hi) = m2[target[e]];
        let (to_lo, to_hi) = if flips[e] { (hi, lo) } else { (lo, hi) };
        image[m1[e].0] = to_lo;
        image[m1[e].1] = to_hi;
    }
    Ok(PartialMap::from_permutation(&image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::switching::associated_two_graph;

    fn edge_graph() -> Graph {
        Graph::new(2, &[(0, 1)]).unwrap()
    }

    /// Six points, matching {0,1},{2,3},{4,5}; the low endpoints 0,2,4 are
    /// pairwise at distance 1, so the 1-edges form two triangles.
    fn two_triangles() -> AntipodalSpace {
        double_cover(&Graph::complete(3)).0
    }

    /// Low endpoints pairwise at distance 2: the 1-edges form a 6-cycle.
    fn six_cycle() -> AntipodalSpace {
        double_cover(&Graph::empty(3)).0
    }

    #[test]
    fn double_cover_of_an_edge_is_the_quadruple() {
        let (a, p) = double_cover(&edge_graph());
        assert_eq!(a.upper_triangle(), vec![3, 1, 2, 2, 1, 3]);
        assert_eq!(p.values(), &[0, 1, 0, 1]);
        let (single, _) = double_cover(&Graph::empty(1));
        assert_eq!(single.upper_triangle(), vec![3]);
    }

    #[test]
    fn pode_graph_inverts_double_cover() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let (a, p) = double_cover(&g);
        let pg = pode_graph(&a, &p).unwrap();
        assert_eq!(pg.graph, g);
        assert_eq!(pg.vertices, vec![0, 2, 4, 6]);
        // the other pode carries the same graph on (x,1)
        let other = pode_graph(&a, &p.flipped()).unwrap();
        assert_eq!(other.vertices, vec![1, 3, 5, 7]);
        assert_eq!(associated_two_graph(&other.graph), associated_two_graph(&g));
    }

    #[test]
    fn pode_graph_of_quadruple() {
        let a = AntipodalSpace::from_upper(4, &[3, 1, 2, 2, 1, 3]).unwrap();
        let p = PodeLabelling::new(&a, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(pode_graph(&a, &p).unwrap().graph.edges(), vec![(0, 1)]);
        let p = PodeLabelling::new(&a, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(pode_graph(&a, &p).unwrap().graph.edge_count(), 0);
        assert!(PodeLabelling::new(&a, vec![0, 0, 1, 1]).is_err());
    }

    #[test]
    fn fig2_dichotomy() {
        assert_eq!(two_graph_of_antipodal(&two_triangles()).triple_count(), 1);
        assert_eq!(two_graph_of_antipodal(&six_cycle()).triple_count(), 0);
    }

    #[test]
    fn graph_of_two_graph_examples() {
        let empty = TwoGraph::empty(4);
        assert_eq!(graph_of_two_graph(&empty, 2).unwrap().edge_count(), 0);
        let t = associated_two_graph(&Graph::complete(3));
        let g = graph_of_two_graph(&t, 0).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);
        assert_eq!(associated_two_graph(&g), t);
        assert!(graph_of_two_graph(&t, 3).is_err());
    }

    #[test]
    fn identity_lifts_to_an_automorphism() {
        let a = two_triangles();
        let alpha = lift_two_graph_isomorphism(&a, &a, &PartialMap::identity(3)).unwrap();
        assert!(a.is_partial_isomorphism(&a, &alpha));
        assert!(alpha.is_identity());
    }

    #[test]
    fn mismatched_two_graphs_are_unliftable() {
        let err =
            lift_two_graph_isomorphism(&two_triangles(), &six_cycle(), &PartialMap::identity(3))
                .unwrap_err();
        match err {
            Error::Unliftable { cycle } => assert_eq!(cycle.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lift_requires_total_bijection() {
        let a = two_triangles();
        let partial = PartialMap::from_pairs(&[(0, 0)]).unwrap();
        assert!(matches!(
            lift_two_graph_isomorphism(&a, &a, &partial),
            Err(Error::MalformedMap(_))
        ));
    }
}
