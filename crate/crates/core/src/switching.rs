//! Seidel switching, associated two-graphs, and recovery of switch sets.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parity::ParitySystem;
use crate::structures::{sorted_triple, Graph, PartialMap, TwoGraph, Vertex};

/// A set of vertices to switch.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SwitchSet(BTreeSet<Vertex>);

impl SwitchSet {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        SwitchSet(vertices.into_iter().collect())
    }

    pub fn empty() -> Self {
        SwitchSet::default()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_set(&self) -> &BTreeSet<Vertex> {
        &self.0
    }

    pub fn symmetric_difference(&self, other: &SwitchSet) -> SwitchSet {
        SwitchSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// `universe \ self`.
    pub fn complement_in(&self, universe: impl IntoIterator<Item = Vertex>) -> SwitchSet {
        SwitchSet(
            universe
                .into_iter()
                .filter(|v| !self.0.contains(v))
                .collect(),
        )
    }

    fn check_range(&self, order: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v >= order) {
            Some(&v) => Err(Error::OutOfRange { vertex: v, order }),
            None => Ok(()),
        }
    }
}

/// Complements the edges between `s` and its complement.
pub fn seidel_switch(g: &Graph, s: &SwitchSet) -> Result<Graph> {
    s.check_range(g.order())?;
    Ok(Graph::from_fn(g.order(), |u, v| {
        g.has_edge(u, v) ^ (s.contains(u) != s.contains(v))
    }))
}

/// Triples inducing an odd number of edges.
pub fn associated_two_graph(g: &Graph) -> TwoGraph {
    let n = g.order();
    let mut triples = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let ab = g.has_edge(a, b);
            for c in b + 1..n {
                if ab ^ g.has_edge(a, c) ^ g.has_edge(b, c) {
                    triples.insert(sorted_triple(a, b, c));
                }
            }
        }
    }
    TwoGraph::from_sorted_unchecked(n, triples)
}

/// Finds `S ⊆ dom(f)` such that `f` is an isomorphism from the switched
/// subgraph `g_S[dom]` onto `h[img]`, or `None` if there is none.
///
/// The minimal domain vertex of each constraint component stays unswitched.
pub fn find_switch_set(g: &Graph, h: &Graph, f: &PartialMap) -> Result<Option<SwitchSet>> {
    f.check_range(g.order(), h.order())?;
    let pairs: Vec<(Vertex, Vertex)> = f.sorted().pairs().collect();
    let mut system = ParitySystem::new(pairs.len());
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (u, fu) = pairs[i];
            let (v, fv) = pairs[j];
            system.add(i, j, g.has_edge(u, v) != h.has_edge(fu, fv));
        }
    }
    Ok(system.solve().ok().map(|bits| {
        SwitchSet::new(
            bits.iter()
                .zip(&pairs)
                .filter(|(&b, _)| b)
                .map(|(_, &(u, _))| u),
        )
    }))
}

pub fn is_switching_isomorphism(g: &Graph, h: &Graph, f: &PartialMap) -> Result<bool> {
    Ok(find_switch_set(g, h, f)?.is_some())
}
