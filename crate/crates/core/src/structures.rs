//! Graphs, two-graphs, antipodal metric spaces of diameter 3, and partial
//! maps between them.
//!
//! Vertices are dense indices `0..n`. Constructors validate their input, so a
//! value of any of these types always satisfies its axioms; the `validate_*`
//! functions work on raw candidate data and return every violation found.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Loop,
    EndpointOutOfRange,
    DegenerateTriple,
    OddQuadruple,
    Diagonal,
    Range,
    Symmetry,
    TriangleInequality,
    Triangle223,
    Matching,
    MatrixShape,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Loop => "loop",
            ViolationKind::EndpointOutOfRange => "endpoint out of range",
            ViolationKind::DegenerateTriple => "degenerate triple",
            ViolationKind::OddQuadruple => "odd quadruple",
            ViolationKind::Diagonal => "nonzero diagonal",
            ViolationKind::Range => "distance out of range",
            ViolationKind::Symmetry => "asymmetric distance",
            ViolationKind::TriangleInequality => "triangle inequality",
            ViolationKind::Triangle223 => "2-2-3 triangle",
            ViolationKind::Matching => "matching",
            ViolationKind::MatrixShape => "matrix shape",
        };
        f.write_str(s)
    }
}

/// One violated axiom together with the tuple that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, witness: Vec<usize>) {
        self.violations.push(Violation { kind, witness });
    }

    fn into_result(self, kind: &'static str) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid { kind, report: self })
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} at {:?}", v.kind, v.witness)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// Finite simple graph with a bitset adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

pub fn validate_graph(n: usize, edges: &[(Vertex, Vertex)]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for &(u, v) in edges {
        if u >= n || v >= n {
            report.push(ViolationKind::EndpointOutOfRange, vec![u, v]);
        } else if u == v {
            report.push(ViolationKind::Loop, vec![u, v]);
        }
    }
    report
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        validate_graph(n, edges).into_result("graph")?;
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.set(u, v, true);
        }
        Ok(g)
    }

    /// Builds the graph whose edges are the pairs `u < v` with `edge(u, v)`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_fn(n, |_, _| true)
    }

    fn set(&mut self, u: Vertex, v: Vertex, on: bool) {
        let (bu, bv) = (1u64 << (v % 64), 1u64 << (u % 64));
        let (iu, iv) = (u * self.words + v / 64, v * self.words + u / 64);
        if on {
            self.adj[iu] |= bu;
            self.adj[iv] |= bv;
        } else {
            self.adj[iu] &= !bu;
            self.adj[iv] &= !bv;
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Panics if either endpoint is out of range.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Induced subgraph on `vertices`, re-indexed in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        Graph::from_fn(vertices.len(), |i, j| {
            self.has_edge(vertices[i], vertices[j])
        })
    }

    /// Whether `f` is an isomorphism from the subgraph of `self` induced on
    /// its domain onto the subgraph of `target` induced on its image.
    pub fn is_partial_isomorphism(&self, target: &Graph, f: &PartialMap) -> bool {
        if f.check_range(self.n, target.n).is_err() {
            return false;
        }
        let pairs = f.pairs().collect::<Vec<_>>();
        pairs.iter().enumerate().all(|(i, &(u, fu))| {
            pairs[i + 1..]
                .iter()
                .all(|&(v, fv)| self.has_edge(u, v) == target.has_edge(fu, fv))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Graph", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("edges", &self.edges())?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// TwoGraph
// ---------------------------------------------------------------------------

/// 3-uniform hypergraph with an even number of triples on every 4 vertices.
/// Triples are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TwoGraph {
    n: usize,
    triples: BTreeSet<[Vertex; 3]>,
}

pub fn sorted_triple(a: Vertex, b: Vertex, c: Vertex) -> [Vertex; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

pub fn validate_two_graph(n: usize, triples: &[[Vertex; 3]]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut set = BTreeSet::new();
    for t in triples {
        if t.iter().any(|&v| v >= n) {
            report.push(ViolationKind::EndpointOutOfRange, t.to_vec());
            continue;
        }
        let s = sorted_triple(t[0], t[1], t[2]);
        if s[0] == s[1] || s[1] == s[2] {
            report.push(ViolationKind::DegenerateTriple, t.to_vec());
            continue;
        }
        set.insert(s);
    }
    if !report.is_valid() {
        return report;
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let count = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
                        .iter()
                        .filter(|t| set.contains(*t))
                        .count();
                    if count % 2 == 1 {
                        report.push(ViolationKind::OddQuadruple, vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    report
}

impl TwoGraph {
    pub fn empty(n: usize) -> Self {
        TwoGraph {
            n,
            triples: BTreeSet::new(),
        }
    }

    pub fn new(n: usize, triples: &[[Vertex; 3]]) -> Result<Self> {
        validate_two_graph(n, triples).into_result("two-graph")?;
        Ok(TwoGraph {
            n,
            triples: triples
                .iter()
                .map(|t| sorted_triple(t[0], t[1], t[2]))
                .collect(),
        })
    }

    /// For constructions that are two-graphs by theory (the associated
    /// two-graph of a graph, the two-graph of an antipodal space). Tests
    /// re-validate these outputs.
    pub(crate) fn from_sorted_unchecked(n: usize, triples: BTreeSet<[Vertex; 3]>) -> Self {
        TwoGraph { n, triples }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_triple(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        self.triples.contains(&sorted_triple(a, b, c))
    }

    pub fn triples(&self) -> impl Iterator<Item = [Vertex; 3]> + '_ {
        self.triples.iter().copied()
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub fn induced(&self, vertices: &[Vertex]) -> TwoGraph {
        let mut triples = BTreeSet::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                for k in j + 1..vertices.len() {
                    if self.has_triple(vertices[i], vertices[j], vertices[k]) {
                        triples.insert([i, j, k]);
                    }
                }
            }
        }
        TwoGraph::from_sorted_unchecked(vertices.len(), triples)
    }

    pub fn is_partial_isomorphism(&self, target: &TwoGraph, f: &PartialMap) -> bool {
        if f.check_range(self.n, target.n).is_err() {
            return false;
        }
        let pairs = f.pairs().collect::<Vec<_>>();
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                for k in j + 1..pairs.len() {
                    let (a, b, c) = (pairs[i], pairs[j], pairs[k]);
                    if self.has_triple(a.0, b.0, c.0) != target.has_triple(a.1, b.1, c.1) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// AntipodalSpace
// ---------------------------------------------------------------------------

/// Integer-valued antipodal metric space of diameter 3.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AntipodalSpace {
    n: usize,
    dist: Vec<u8>,
    antipodes: Vec<Vertex>,
}

/// Checks the antipodal axioms for the distance function `dist` on `0..n`.
///
/// Only a 1-1-3 triangle can break the triangle inequality when distances
/// lie in {1,2,3}, and both forbidden triangle shapes contain a distance-3
/// pair, so triangles are only inspected around the distance-3 pairs.
pub fn validate_antipodal_fn(n: usize, dist: impl Fn(Vertex, Vertex) -> u8) -> ValidationReport {
    let mut report = ValidationReport::default();
    for u in 0..n {
        if dist(u, u) != 0 {
            report.push(ViolationKind::Diagonal, vec![u]);
        }
    }
    let mut far: Vec<(Vertex, Vertex)> = Vec::new();
    let mut antipode_count = vec![0usize; n];
    for u in 0..n {
        for v in u + 1..n {
            let (d, e) = (dist(u, v), dist(v, u));
            if d != e {
                report.push(ViolationKind::Symmetry, vec![u, v]);
            }
            if !(1..=3).contains(&d) {
                report.push(ViolationKind::Range, vec![u, v]);
            } else if d == 3 {
                far.push((u, v));
                antipode_count[u] += 1;
                antipode_count[v] += 1;
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    for (v, &c) in antipode_count.iter().enumerate() {
        if c != 1 {
            report.push(ViolationKind::Matching, vec![v]);
        }
    }
    for &(u, v) in &far {
        for w in 0..n {
            if w == u || w == v {
                continue;
            }
            match (dist(u, w), dist(v, w)) {
                (1, 1) => report.push(ViolationKind::TriangleInequality, vec![u, v, w]),
                (2, 2) => report.push(ViolationKind::Triangle223, vec![u, v, w]),
                _ => {}
            }
        }
    }
    report
}

/// Validates a full square distance matrix.
pub fn validate_antipodal(matrix: &[Vec<u8>]) -> ValidationReport {
    let n = matrix.len();
    if let Some(row) = matrix.iter().position(|r| r.len() != n) {
        let mut report = ValidationReport::default();
        report.push(ViolationKind::MatrixShape, vec![row]);
        return report;
    }
    validate_antipodal_fn(n, |u, v| matrix[u][v])
}

fn upper_index(n: usize, u: Vertex, v: Vertex) -> usize {
    // row u of the strict upper triangle starts after sum_{r<u} (n-1-r) entries
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl AntipodalSpace {
    pub fn from_fn(n: usize, dist: impl Fn(Vertex, Vertex) -> u8) -> Result<Self> {
        let mut m = vec![0u8; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    m[u * n + v] = dist(u, v);
                }
            }
        }
        let report = validate_antipodal_fn(n, |u, v| m[u * n + v]);
        report.into_result("antipodal space")?;
        let antipodes = (0..n)
            .map(|u| (0..n).find(|&v| m[u * n + v] == 3).expect("validated"))
            .collect();
        Ok(AntipodalSpace {
            n,
            dist: m,
            antipodes,
        })
    }

    pub fn from_matrix(matrix: &[Vec<u8>]) -> Result<Self> {
        validate_antipodal(matrix).into_result("antipodal space")?;
        Self::from_fn(matrix.len(), |u, v| matrix[u][v])
    }

    /// From the strict upper triangle, row by row.
    pub fn from_upper(n: usize, upper: &[u8]) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            let mut report = ValidationReport::default();
            report.push(ViolationKind::MatrixShape, vec![upper.len(), expected]);
            return Err(Error::Invalid {
                kind: "antipodal space",
                report,
            });
        }
        Self::from_fn(n, |u, v| {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            upper[upper_index(n, a, b)]
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: Vertex, v: Vertex) -> u8 {
        self.dist[u * self.n + v]
    }

    /// The unique vertex at distance 3. Panics if `v` is out of range.
    pub fn antipode(&self, v: Vertex) -> Vertex {
        self.antipodes[v]
    }

    /// Distance-3 pairs `(low, high)`, ordered by their smaller endpoint.
    pub fn matching_edges(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.n)
            .filter(|&v| v < self.antipodes[v])
            .map(|v| (v, self.antipodes[v]))
            .collect()
    }

    /// Index of the matching edge containing each vertex, in the canonical
    /// order of [`AntipodalSpace::matching_edges`].
    pub fn matching_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (i, (x, y)) in self.matching_edges().into_iter().enumerate() {
            idx[x] = i;
            idx[y] = i;
        }
        idx
    }

    pub fn upper_triangle(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.push(self.dist(u, v));
            }
        }
        out
    }

    pub fn induced(&self, vertices: &[Vertex]) -> Vec<Vec<u8>> {
        vertices
            .iter()
            .map(|&u| vertices.iter().map(|&v| self.dist(u, v)).collect())
            .collect()
    }

    pub fn is_partial_isomorphism(&self, target: &AntipodalSpace, f: &PartialMap) -> bool {
        if f.check_range(self.n, target.n).is_err() {
            return false;
        }
        let pairs = f.pairs().collect::<Vec<_>>();
        pairs.iter().enumerate().all(|(i, &(u, fu))| {
            pairs[i + 1..]
                .iter()
                .all(|&(v, fv)| self.dist(u, v) == target.dist(fu, fv))
        })
    }
}

impl fmt::Debug for AntipodalSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AntipodalSpace")
            .field("n", &self.n)
            .field("upper", &self.upper_triangle())
            .finish()
    }
}

impl Serialize for AntipodalSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AntipodalSpace", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("upper", &self.upper_triangle())?;
        s.end()
    }
}

pub fn antipode(a: &AntipodalSpace, v: Vertex) -> Result<Vertex> {
    if v >= a.order() {
        return Err(Error::OutOfRange {
            vertex: v,
            order: a.order(),
        });
    }
    Ok(a.antipode(v))
}

// ---------------------------------------------------------------------------
// Partial maps
// ---------------------------------------------------------------------------

/// A bijection between two duplicate-free vertex lists. `dom[i] ↦ img[i]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialMap {
    dom: Vec<Vertex>,
    img: Vec<Vertex>,
}

fn first_duplicate(xs: &[Vertex]) -> Option<Vertex> {
    let mut seen = BTreeSet::new();
    xs.iter().copied().find(|&x| !seen.insert(x))
}

impl PartialMap {
    pub fn new(dom: Vec<Vertex>, img: Vec<Vertex>) -> Result<Self> {
        if dom.len() != img.len() {
            return Err(Error::MalformedMap(format!(
                "domain has {} entries, image has {}",
                dom.len(),
                img.len()
            )));
        }
        if let Some(x) = first_duplicate(&dom) {
            return Err(Error::MalformedMap(format!(
                "{x} appears twice in the domain"
            )));
        }
        if let Some(x) = first_duplicate(&img) {
            return Err(Error::MalformedMap(format!(
                "{x} appears twice in the image"
            )));
        }
        Ok(PartialMap { dom, img })
    }

    pub fn from_pairs(pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::new(
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
        )
    }

    pub fn empty() -> Self {
        PartialMap::default()
    }

    pub fn identity_on(vertices: &[Vertex]) -> Self {
        PartialMap {
            dom: vertices.to_vec(),
            img: vertices.to_vec(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let all: Vec<_> = (0..n).collect();
        Self::identity_on(&all)
    }

    /// The total map `v ↦ perm[v]`. Panics if `perm` is not a permutation.
    pub fn from_permutation(perm: &[Vertex]) -> Self {
        Self::new((0..perm.len()).collect(), perm.to_vec()).expect("not a permutation")
    }

    pub fn dom(&self) -> &[Vertex] {
        &self.dom
    }

    pub fn img(&self) -> &[Vertex] {
        &self.img
    }

    pub fn len(&self) -> usize {
        self.dom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dom.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.dom.iter().copied().zip(self.img.iter().copied())
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.dom.iter().position(|&d| d == v).map(|i| self.img[i])
    }

    pub fn preimage(&self, w: Vertex) -> Option<Vertex> {
        self.img.iter().position(|&d| d == w).map(|i| self.dom[i])
    }

    pub fn dom_set(&self) -> BTreeSet<Vertex> {
        self.dom.iter().copied().collect()
    }

    pub fn img_set(&self) -> BTreeSet<Vertex> {
        self.img.iter().copied().collect()
    }

    pub fn check_range(&self, dom_order: usize, img_order: usize) -> Result<()> {
        if let Some(&v) = self.dom.iter().find(|&&v| v >= dom_order) {
            return Err(Error::OutOfRange {
                vertex: v,
                order: dom_order,
            });
        }
        if let Some(&v) = self.img.iter().find(|&&v| v >= img_order) {
            return Err(Error::OutOfRange {
                vertex: v,
                order: img_order,
            });
        }
        Ok(())
    }

    pub fn inverse(&self) -> PartialMap {
        PartialMap {
            dom: self.img.clone(),
            img: self.dom.clone(),
        }
    }

    /// `next ∘ self`: defined on those `v` in the domain of `self` whose image
    /// lies in the domain of `next`, in the domain order of `self`.
    pub fn then(&self, next: &PartialMap) -> PartialMap {
        let mut dom = Vec::new();
        let mut img = Vec::new();
        for (v, w) in self.pairs() {
            if let Some(x) = next.get(w) {
                dom.push(v);
                img.push(x);
            }
        }
        PartialMap { dom, img }
    }

    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> PartialMap {
        let (dom, img) = self.pairs().filter(|(v, _)| keep.contains(v)).unzip();
        PartialMap { dom, img }
    }

    /// Same map with the domain listed in increasing order.
    pub fn sorted(&self) -> PartialMap {
        let mut pairs: Vec<_> = self.pairs().collect();
        pairs.sort_unstable();
        let (dom, img) = pairs.into_iter().unzip();
        PartialMap { dom, img }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.img
    }

    /// `Some(perm)` if the map is a permutation of `0..n`.
    pub fn as_permutation(&self, n: usize) -> Option<Vec<Vertex>> {
        if self.len() != n || self.check_range(n, n).is_err() {
            return None;
        }
        let mut perm = vec![0; n];
        for (v, w) in self.pairs() {
            perm[v] = w;
        }
        Some(perm)
    }

    /// Whether the two maps agree as functions (ignoring listing order).
    pub fn same_function(&self, other: &PartialMap) -> bool {
        self.sorted() == other.sorted()
    }
}

/// A partial map together with the set of domain vertices switched before
/// comparing edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SwitchingPartialMap {
    pub map: PartialMap,
    pub switch_set: crate::switching::SwitchSet,
}

impl SwitchingPartialMap {
    pub fn new(map: PartialMap, switch_set: crate::switching::SwitchSet) -> Result<Self> {
        let dom = map.dom_set();
        if let Some(v) = switch_set.iter().find(|v| !dom.contains(v)) {
            return Err(Error::BadSwitchSet(format!(
                "switched vertex {v} is not in the domain"
            )));
        }
        Ok(SwitchingPartialMap { map, switch_set })
    }

    /// Whether the map is an isomorphism from `g` switched by the switch set
    /// (restricted to the domain) onto the subgraph of `h` on the image.
    pub fn is_valid_for(&self, g: &Graph, h: &Graph) -> bool {
        if self.map.check_range(g.order(), h.order()).is_err() {
            return false;
        }
        let pairs = self.map.pairs().collect::<Vec<_>>();
        pairs.iter().enumerate().all(|(i, &(u, fu))| {
            pairs[i + 1..].iter().all(|&(v, fv)| {
                let crossing = self.switch_set.contains(u) != self.switch_set.contains(v);
                (g.has_edge(u, v) != crossing) == h.has_edge(fu, fv)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 4-point space with two matching edges: x1=0, y1=1, x2=2, y2=3.
    fn quadruple() -> AntipodalSpace {
        AntipodalSpace::from_upper(4, &[3, 1, 2, 2, 1, 3]).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(validate_graph(3, &[(0, 1), (1, 2), (0, 2)]).is_valid());
        assert!(validate_graph(3, &[(0, 0)]).has(ViolationKind::Loop));
        assert!(validate_graph(3, &[(0, 5)]).has(ViolationKind::EndpointOutOfRange));
        assert!(Graph::new(3, &[(0, 0)]).is_err());
    }

    #[test]
    fn graph_basics() {
        let g = Graph::new(70, &[(0, 69), (3, 65), (69, 0)]).unwrap();
        assert!(g.has_edge(69, 0));
        assert!(g.has_edge(65, 3));
        assert!(!g.has_edge(1, 2));
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges(), vec![(0, 69), (3, 65)]);
        assert_eq!(g.degree(0), 1);
        let sub = g.induced(&[69, 0, 5]);
        assert_eq!(sub.edges(), vec![(0, 1)]);
    }

    #[test]
    fn two_graph_validation() {
        assert!(validate_two_graph(4, &[[0, 1, 2], [0, 1, 3]]).is_valid());
        let bad = validate_two_graph(4, &[[0, 1, 2]]);
        assert_eq!(bad.violations.len(), 1);
        assert_eq!(bad.violations[0].kind, ViolationKind::OddQuadruple);
        assert_eq!(bad.violations[0].witness, vec![0, 1, 2, 3]);
        assert!(validate_two_graph(3, &[[0, 1, 2]]).is_valid());
        assert!(validate_two_graph(3, &[[0, 1, 1]]).has(ViolationKind::DegenerateTriple));
        assert!(validate_two_graph(3, &[[0, 1, 3]]).has(ViolationKind::EndpointOutOfRange));
    }

    #[test]
    fn antipodal_validation() {
        assert!(validate_antipodal(&[
            vec![0, 3, 1, 2],
            vec![3, 0, 2, 1],
            vec![1, 2, 0, 3],
            vec![2, 1, 3, 0],
        ])
        .is_valid());

        let all_three = vec![
            vec![0, 3, 3, 3],
            vec![3, 0, 3, 3],
            vec![3, 3, 0, 3],
            vec![3, 3, 3, 0],
        ];
        assert!(validate_antipodal(&all_three).has(ViolationKind::Matching));

        // {0,1} antipodal, 2 at distance 2 from both
        let two_two_three = vec![
            vec![0, 3, 2, 1],
            vec![3, 0, 2, 2],
            vec![2, 2, 0, 3],
            vec![1, 2, 3, 0],
        ];
        let r = validate_antipodal(&two_two_three);
        assert!(r.has(ViolationKind::Triangle223));
        assert!(r.violations.iter().any(|v| v.witness == vec![0, 1, 2]));

        let one_one_three = vec![
            vec![0, 3, 1, 2],
            vec![3, 0, 1, 1],
            vec![1, 1, 0, 3],
            vec![2, 1, 3, 0],
        ];
        assert!(validate_antipodal(&one_one_three).has(ViolationKind::TriangleInequality));

        let asym = vec![vec![0, 3], vec![2, 0]];
        assert!(validate_antipodal(&asym).has(ViolationKind::Symmetry));
        let range = vec![vec![0, 4], vec![4, 0]];
        assert!(validate_antipodal(&range).has(ViolationKind::Range));
        assert!(validate_antipodal(&[vec![0]]).has(ViolationKind::Matching));
    }

    #[test]
    fn antipodes() {
        let a = quadruple();
        assert_eq!(a.antipode(0), 1);
        assert_eq!(a.antipode(2), 3);
        for v in 0..4 {
            assert_eq!(a.antipode(a.antipode(v)), v);
            assert_ne!(a.antipode(v), v);
        }
        let two = AntipodalSpace::from_upper(2, &[3]).unwrap();
        assert_eq!(antipode(&two, 0).unwrap(), 1);
        assert!(antipode(&two, 2).is_err());
        assert_eq!(a.matching_edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(a.upper_triangle(), vec![3, 1, 2, 2, 1, 3]);
    }

    #[test]
    fn upper_triangle_length_is_checked() {
        assert!(AntipodalSpace::from_upper(4, &[3, 1, 2]).is_err());
    }

    #[test]
    fn partial_map_ops() {
        assert!(PartialMap::new(vec![0, 0], vec![1, 2]).is_err());
        assert!(PartialMap::new(vec![0, 1], vec![2, 2]).is_err());
        assert!(PartialMap::new(vec![0], vec![]).is_err());
        let f = PartialMap::from_pairs(&[(0, 1), (1, 2)]).unwrap();
        let g = PartialMap::from_pairs(&[(2, 0), (1, 3)]).unwrap();
        let h = f.then(&g);
        assert_eq!(h, PartialMap::from_pairs(&[(0, 3), (1, 0)]).unwrap());
        assert_eq!(f.inverse().get(2), Some(1));
        assert_eq!(f.get(5), None);
        assert_eq!(
            PartialMap::from_pairs(&[(1, 0), (0, 1)])
                .unwrap()
                .as_permutation(2),
            Some(vec![1, 0])
        );
    }

    #[test]
    fn partial_isomorphism_checks() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let swap_ends = PartialMap::from_pairs(&[(0, 2), (2, 0)]).unwrap();
        assert!(path.is_partial_isomorphism(&path, &swap_ends));
        let bad = PartialMap::from_pairs(&[(0, 0), (1, 2)]).unwrap();
        assert!(!path.is_partial_isomorphism(&path, &bad));
        let a = quadruple();
        let swap = PartialMap::from_pairs(&[(0, 2), (1, 3)]).unwrap();
        assert!(a.is_partial_isomorphism(&a, &swap));
    }
}
