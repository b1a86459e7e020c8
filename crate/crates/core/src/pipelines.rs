//! EPPA witnesses for switching classes of graphs and for two-graphs, built
//! on top of the antipodal witness, plus the APA counterexample report.
//!
//! For a graph `G` the route is: double cover `A` of `G`, witness `B` of `A`,
//! and `H` = the points of `B` with `p̂ = 0` with distance-1 pairs as edges.
//! A two-graph `T` is first turned into a graph `G` with `T(G) = T` by
//! fixing a base vertex.

use serde::Serialize;

use crate::antipodal::{double_cover, graph_of_two_graph, PodeLabelling};
use crate::error::{Error, Result};
use crate::structures::{
    sorted_triple, AntipodalSpace, Graph, PartialMap, SwitchingPartialMap, TwoGraph, Vertex,
};
use crate::switching::{associated_two_graph, find_switch_set, SwitchSet};
use crate::witness::{
    extend_automorphism, Valuation, WitnessAutomorphism, WitnessContext, WitnessVertex,
    DEFAULT_MATERIALIZE_LIMIT,
};

#[derive(Debug, Clone)]
pub struct SwitchingEppaCertificate {
    pub graph: Graph,
    /// The witness graph `H`.
    pub witness: Graph,
    pub cover: AntipodalSpace,
    pub cover_pode: PodeLabelling,
    pub context: WitnessContext,
    /// `h_vertices[i]` is the point of `B` behind vertex `i` of `H`.
    pub h_vertices: Vec<WitnessVertex>,
    /// `embedding[x]` is the vertex of `H` for `ψ((x, 0))`.
    pub embedding: Vec<usize>,
}

/// `n · 2ⁿ⁻¹` vertices of `H`, ordered as in `B`.
fn h_order(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        n << (n - 1)
    }
}

pub fn switching_eppa_witness(g: &Graph) -> Result<SwitchingEppaCertificate> {
    switching_eppa_witness_with_limit(g, DEFAULT_MATERIALIZE_LIMIT)
}

pub fn switching_eppa_witness_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<SwitchingEppaCertificate> {
    let n = g.order();
    if n > limit {
        return Err(Error::Capacity(format!(
            "witness graph for {n} vertices has {} vertices; limit is {limit} source vertices",
            h_order(n.min(63))
        )));
    }
    let (cover, cover_pode) = double_cover(g);
    let context = WitnessContext::with_pode(&cover, &cover_pode)?;
    debug_assert_eq!(context.pode(), &cover_pode);
    let h_vertices: Vec<WitnessVertex> = (0..h_order(n)).map(|i| h_vertex(n, i)).collect();
    let witness = Graph::from_fn(h_vertices.len(), |i, j| {
        context.distance(&h_vertices[i], &h_vertices[j]) == Ok(1)
    });
    let embedding = (0..n)
        .map(|x| h_index(&context.psi(2 * x)).expect("pode 0"))
        .collect();
    Ok(SwitchingEppaCertificate {
        graph: g.clone(),
        witness,
        cover,
        cover_pode,
        context,
        h_vertices,
        embedding,
    })
}

/// Vertex `i` of `H`: insert a zero at position `e` of the remaining bits.
fn h_vertex(n: usize, i: usize) -> WitnessVertex {
    let e = i >> (n - 1);
    let rest = (i & ((1 << (n - 1)) - 1)) as u64;
    let low = rest & ((1 << e) - 1);
    let high = (rest >> e) << (e + 1);
    WitnessVertex::new(e, Valuation::from_bits(low | high, n).expect("in range"))
}

/// Index in `H`, if `w` has `p̂ = 0`.
fn h_index(w: &WitnessVertex) -> Option<usize> {
    let n = w.valuation.len();
    let e = w.edge.0;
    if w.valuation.get(e) != 0 {
        return None;
    }
    let bits = w.valuation.bits();
    let low = bits & ((1 << e) - 1);
    let high = (bits >> (e + 1)) << e;
    Some((e << (n - 1)) | (low | high) as usize)
}

impl SwitchingEppaCertificate {
    pub fn h_index_of(&self, w: &WitnessVertex) -> Option<usize> {
        h_index(w)
    }

    /// `φ` on `A` sending `(x, i)` to `(φ(x), i XOR [x ∈ S])`.
    fn lift_to_cover(&self, phi: &PartialMap, switch: &SwitchSet) -> PartialMap {
        let mut pairs = Vec::with_capacity(2 * phi.len());
        for (x, y) in phi.pairs() {
            let s = usize::from(switch.contains(x));
            for i in 0..2 {
                pairs.push((2 * x + i, 2 * y + (i ^ s)));
            }
        }
        PartialMap::from_pairs(&pairs).expect("lift of an injective map")
    }

    /// The automorphism of `B` behind a switching partial isomorphism of `G`.
    pub fn witness_automorphism(&self, phi: &SwitchingPartialMap) -> Result<WitnessAutomorphism> {
        phi.map
            .check_range(self.graph.order(), self.graph.order())?;
        if !phi.is_valid_for(&self.graph, &self.graph) {
            return Err(Error::BadSwitchSet(
                "switched domain is not isomorphic to the image".into(),
            ));
        }
        let lifted = self.lift_to_cover(&phi.map, &phi.switch_set);
        extend_automorphism(&self.context, &lifted)
    }

    /// Restricts `θ` to `H`, replacing images of pode 1 by their antipodes.
    fn restrict(&self, theta: &WitnessAutomorphism) -> SwitchingExtension {
        let mut image = Vec::with_capacity(self.h_vertices.len());
        let mut switched = Vec::new();
        for (v, w) in self.h_vertices.iter().enumerate() {
            let t = theta.apply(w).expect("same dimension");
            match h_index(&t) {
                Some(i) => image.push(i),
                None => {
                    switched.push(v);
                    image.push(h_index(&t.antipode()).expect("antipode has pode 0"));
                }
            }
        }
        SwitchingExtension {
            map: PartialMap::from_permutation(&image),
            switch_set: SwitchSet::new(switched),
        }
    }
}

/// A total map on `H` and the set of vertices switched before applying it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchingExtension {
    pub map: PartialMap,
    pub switch_set: SwitchSet,
}

impl SwitchingExtension {
    pub fn as_switching_map(&self) -> SwitchingPartialMap {
        SwitchingPartialMap {
            map: self.map.clone(),
            switch_set: self.switch_set.clone(),
        }
    }
}

/// Extends a partial isomorphism of `G` to an automorphism of `H`.
pub fn extend_plain_iso(cert: &SwitchingEppaCertificate, phi: &PartialMap) -> Result<PartialMap> {
    phi.check_range(cert.graph.order(), cert.graph.order())?;
    if !cert.graph.is_partial_isomorphism(&cert.graph, phi) {
        return Err(Error::NotIsomorphism("map does not preserve edges".into()));
    }
    let theta = cert.witness_automorphism(&SwitchingPartialMap {
        map: phi.clone(),
        switch_set: SwitchSet::empty(),
    })?;
    let ext = cert.restrict(&theta);
    assert!(ext.switch_set.is_empty(), "θ must preserve p̂");
    Ok(ext.map)
}

/// Extends a switching partial isomorphism of `G` to a switching
/// automorphism of `H`.
pub fn extend_switching_iso(
    cert: &SwitchingEppaCertificate,
    phi: &SwitchingPartialMap,
) -> Result<SwitchingExtension> {
    let theta = cert.witness_automorphism(phi)?;
    Ok(cert.restrict(&theta))
}

#[derive(Debug, Clone)]
pub struct TwoGraphEppaCertificate {
    pub two_graph: TwoGraph,
    pub base: Vertex,
    /// `G` with `T(G)` equal to the source two-graph.
    pub graph: Graph,
    pub switching: SwitchingEppaCertificate,
}

pub fn two_graph_eppa_witness(t: &TwoGraph) -> Result<TwoGraphEppaCertificate> {
    two_graph_eppa_witness_with_limit(t, DEFAULT_MATERIALIZE_LIMIT)
}

pub fn two_graph_eppa_witness_with_limit(
    t: &TwoGraph,
    limit: usize,
) -> Result<TwoGraphEppaCertificate> {
    let base = 0;
    let graph = if t.order() == 0 {
        Graph::empty(0)
    } else {
        graph_of_two_graph(t, base)?
    };
    debug_assert_eq!(&associated_two_graph(&graph), t);
    let switching = switching_eppa_witness_with_limit(&graph, limit)?;
    Ok(TwoGraphEppaCertificate {
        two_graph: t.clone(),
        base,
        graph,
        switching,
    })
}

impl TwoGraphEppaCertificate {
    pub fn embedding(&self) -> &[usize] {
        &self.switching.embedding
    }

    /// Membership in `T(H)` without building it.
    pub fn witness_has_triple(&self, a: usize, b: usize, c: usize) -> bool {
        let h = &self.switching.witness;
        h.has_edge(a, b) ^ h.has_edge(a, c) ^ h.has_edge(b, c)
    }

    pub fn witness_order(&self) -> usize {
        self.switching.witness.order()
    }

    /// `T(H)` in full; cubic in the order of `H`.
    pub fn witness_two_graph(&self) -> TwoGraph {
        associated_two_graph(&self.switching.witness)
    }
}

/// An automorphism of `T(H)` together with the switch sets used to get it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoGraphExtension {
    pub map: PartialMap,
    /// Switch set chosen for `φ` on `G`.
    pub source_switch_set: SwitchSet,
    /// Switch set of the resulting switching automorphism of `H`.
    pub witness_switch_set: SwitchSet,
}

pub fn extend_two_graph_partial(
    cert: &TwoGraphEppaCertificate,
    phi: &PartialMap,
) -> Result<TwoGraphExtension> {
    let t = &cert.two_graph;
    phi.check_range(t.order(), t.order())?;
    if !t.is_partial_isomorphism(t, phi) {
        return Err(Error::NotIsomorphism(
            "map does not preserve triples".into(),
        ));
    }
    let s = find_switch_set(&cert.graph, &cert.graph, phi)?.ok_or_else(|| {
        Error::NotIsomorphism("no switch set relates the induced subgraphs".into())
    })?;
    let ext = extend_switching_iso(
        &cert.switching,
        &SwitchingPartialMap {
            map: phi.clone(),
            switch_set: s.clone(),
        },
    )?;
    Ok(TwoGraphExtension {
        map: ext.map,
        source_switch_set: s,
        witness_switch_set: ext.switch_set,
    })
}

/// One two-graph on `{u, v, x1, x2}` considered as an amalgam.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApaCandidate {
    pub triples: Vec<[Vertex; 3]>,
    pub is_two_graph: bool,
    /// Restricts to `B1` on `{u, v, x1}` and to `B2` on `{u, v, x2}`.
    pub extends_both: bool,
    /// For amalgams: why the swap of `u` and `v` fixing `x1`, `x2` is not an
    /// automorphism.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApaReport {
    /// Names of vertices 0..4.
    pub labels: [&'static str; 4],
    pub b1_triples: Vec<[Vertex; 3]>,
    pub b2_triples: Vec<[Vertex; 3]>,
    /// The only map on four points restricting to both swaps.
    pub automorphism: Vec<Vertex>,
    pub candidates: Vec<ApaCandidate>,
    pub amalgam_count: usize,
    pub amalgam_exists: bool,
    pub apa_refuted: bool,
}

/// `A` = two vertices `u, v`; `B1 = A + x1` without triples, `B2 = A + x2`
/// with the triple `{u, v, x2}`; `f1`, `f2` swap `u` and `v`. Any amalgam
/// contains a two-graph on `{u, v, x1, x2}` with these restrictions, and an
/// automorphism extending both swaps restricts to the swap `g` below, so
/// checking the sixteen triple sets on four points is exhaustive.
pub fn apa_counterexample_report() -> ApaReport {
    const U: Vertex = 0;
    const V: Vertex = 1;
    const X1: Vertex = 2;
    const X2: Vertex = 3;
    let all: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let g = [V, U, X1, X2];
    let mut candidates = Vec::new();
    for mask in 0u32..16 {
        let triples: Vec<[Vertex; 3]> = (0..4)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| all[i])
            .collect();
        let is_two_graph = triples.len().is_multiple_of(2);
        let has = |t: [Vertex; 3]| triples.contains(&t);
        let extends_both = !has(sorted_triple(U, V, X1)) && has(sorted_triple(U, V, X2));
        let failure = (is_two_graph && extends_both).then(|| {
            triples
                .iter()
                .find_map(|&[a, b, c]| {
                    let image = sorted_triple(g[a], g[b], g[c]);
                    (!has(image)).then(|| {
                        format!(
                            "swap sends triple {:?} to non-triple {:?}",
                            [a, b, c],
                            image
                        )
                    })
                })
                .unwrap_or_else(|| "swap preserves all triples".to_string())
        });
        candidates.push(ApaCandidate {
            triples,
            is_two_graph,
            extends_both,
            failure,
        });
    }
    let amalgams: Vec<&ApaCandidate> = candidates
        .iter()
        .filter(|c| c.is_two_graph && c.extends_both)
        .collect();
    let apa_refuted = amalgams.iter().all(|c| {
        c.triples
            .iter()
            .any(|&[a, b, c2]| !c.triples.contains(&sorted_triple(g[a], g[b], g[c2])))
    });
    ApaReport {
        labels: ["u", "v", "x1", "x2"],
        b1_triples: vec![],
        b2_triples: vec![[U, V, X2]],
        automorphism: g.to_vec(),
        amalgam_count: amalgams.len(),
        amalgam_exists: !amalgams.is_empty(),
        apa_refuted,
        candidates,
    }
}
