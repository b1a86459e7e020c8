//! The coherent EPPA-witness `B` of an antipodal space `A`.
//!
//! Points of `B` are pairs `(e, χ)` of a matching edge `e` of `A` and a
//! valuation `χ: M → {0,1}`. Distances are never stored:
//!
//! * `(e, χ)` and `(e, 1-χ)` are at distance 3,
//! * otherwise `(e, χ)` and `(f, χ')` are at distance 1 iff `χ(f) = χ'(e)`,
//! * and at distance 2 in every remaining case.
//!
//! A partial automorphism `φ` of `A` is carried to `B` through the generic
//! copy `ψ`, projected onto a partial permutation of `M`, extended to a full
//! permutation `φ̂` in an order-preserving way, and completed by the set `F` of
//! flipped pairs of edges. The resulting automorphism `θ = (φ̂, F)` sends
//! `(e, χ)` to `(φ̂(e), ξ)` with `ξ(φ̂(f)) = χ(f) XOR [{e,f} ∈ F]`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::antipodal::PodeLabelling;
use crate::error::{Error, Result};
use crate::structures::{AntipodalSpace, PartialMap, Vertex};

/// Valuations are `u64` bit vectors.
pub const MAX_MATCHING_EDGES: usize = 63;

/// Default bound on `n = |M|` for anything that enumerates all `n·2ⁿ`
/// witness points.
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatchingEdgeId(pub usize);

/// A function from the `len` matching edges to {0,1}; bit `j` is the value
/// at `e_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    bits: u64,
    len: u8,
}

impl Valuation {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_MATCHING_EDGES);
        Valuation {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_MATCHING_EDGES {
            return Err(Error::Capacity(format!(
                "valuations hold at most {MAX_MATCHING_EDGES} edges"
            )));
        }
        if bits >> len != 0 {
            return Err(Error::Dimension {
                expected: len,
                found: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(Valuation {
            bits,
            len: len as u8,
        })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, e: usize) -> u8 {
        (self.bits >> e & 1) as u8
    }

    pub fn with(self, e: usize, value: u8) -> Self {
        let bits = (self.bits & !(1 << e)) | (u64::from(value & 1) << e);
        Valuation { bits, ..self }
    }

    fn mask(&self) -> u64 {
        (1u64 << self.len) - 1
    }

    /// `1 - χ`.
    pub fn complement(&self) -> Self {
        Valuation {
            bits: !self.bits & self.mask(),
            len: self.len,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in 0..self.len() {
            f.write_str(if self.get(e) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Valuation {
    type Err = Error;

    /// Characters are the values at `e_0, e_1, …` in order.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        if s.len() > MAX_MATCHING_EDGES {
            return Err(Error::Capacity(format!(
                "valuations hold at most {MAX_MATCHING_EDGES} edges"
            )));
        }
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::MalformedMap(format!(
                        "valuation '{s}' must consist of 0 and 1"
                    )))
                }
            }
        }
        Valuation::from_bits(bits, s.len())
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WitnessVertex {
    pub edge: MatchingEdgeId,
    pub valuation: Valuation,
}

impl WitnessVertex {
    pub fn new(edge: usize, valuation: Valuation) -> Self {
        WitnessVertex {
            edge: MatchingEdgeId(edge),
            valuation,
        }
    }

    pub fn antipode(&self) -> Self {
        WitnessVertex {
            edge: self.edge,
            valuation: self.valuation.complement(),
        }
    }
}

impl fmt::Display for WitnessVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.edge.0, self.valuation)
    }
}

impl FromStr for WitnessVertex {
    type Err = Error;

    /// `<edge>:<valuation bits>`, e.g. `1:010`.
    fn from_str(s: &str) -> Result<Self> {
        let (e, v) = s
            .split_once(':')
            .ok_or_else(|| Error::MalformedMap(format!("witness vertex '{s}' is not e:bits")))?;
        let e = e
            .trim()
            .parse()
            .map_err(|_| Error::MalformedMap(format!("bad edge index in '{s}'")))?;
        Ok(WitnessVertex::new(e, v.trim().parse()?))
    }
}

/// The witness `B` for a fixed antipodal space together with the generic
/// copy `ψ: A → B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessContext {
    space: AntipodalSpace,
    /// `(x_i, y_i)` with `p(x_i) = 0`, in canonical edge order.
    matching: Vec<(Vertex, Vertex)>,
    edge_of: Vec<usize>,
    pode: PodeLabelling,
    psi: Vec<WitnessVertex>,
}

/// Builds the witness with the canonical pode (smaller endpoint gets 0).
pub fn build_witness(a: &AntipodalSpace) -> Result<WitnessContext> {
    WitnessContext::with_pode(a, &PodeLabelling::canonical(a))
}

impl WitnessContext {
    pub fn with_pode(a: &AntipodalSpace, pode: &PodeLabelling) -> Result<Self> {
        let pode = PodeLabelling::new(a, pode.values().to_vec())?;
        let edges = a.matching_edges();
        let n = edges.len();
        if n > MAX_MATCHING_EDGES {
            return Err(Error::Capacity(format!(
                "{n} matching edges; at most {MAX_MATCHING_EDGES} are supported"
            )));
        }
        let matching: Vec<(Vertex, Vertex)> = edges
            .iter()
            .map(|&(u, v)| if pode.value(u) == 0 { (u, v) } else { (v, u) })
            .collect();
        let edge_of = a.matching_index();

        let mut psi = vec![WitnessVertex::new(0, Valuation::zero(n)); a.order()];
        for (i, &(x, y)) in matching.iter().enumerate() {
            // χ_i(e_j) = 1 exactly when j < i and d(x_i, x_j) ≠ 1
            let mut chi = Valuation::zero(n);
            for (j, &(xj, _)) in matching.iter().enumerate().take(i) {
                if a.dist(x, xj) != 1 {
                    chi = chi.with(j, 1);
                }
            }
            psi[x] = WitnessVertex::new(i, chi);
            psi[y] = WitnessVertex::new(i, chi.complement());
        }

        let ctx = WitnessContext {
            space: a.clone(),
            matching,
            edge_of,
            pode,
            psi,
        };
        for u in 0..a.order() {
            assert_eq!(ctx.pode_value(&ctx.psi[u]), ctx.pode.value(u));
            for v in u + 1..a.order() {
                assert_eq!(
                    ctx.distance(&ctx.psi[u], &ctx.psi[v]).expect("distinct"),
                    a.dist(u, v),
                    "generic copy is not isometric at ({u}, {v})"
                );
            }
        }
        Ok(ctx)
    }

    pub fn space(&self) -> &AntipodalSpace {
        &self.space
    }

    pub fn pode(&self) -> &PodeLabelling {
        &self.pode
    }

    /// `(x_i, y_i)` for every matching edge `e_i`.
    pub fn matching(&self) -> &[(Vertex, Vertex)] {
        &self.matching
    }

    pub fn edge_count(&self) -> usize {
        self.matching.len()
    }

    /// `n · 2ⁿ`.
    pub fn witness_order(&self) -> u128 {
        let n = self.edge_count() as u128;
        n << n
    }

    pub fn psi(&self, v: Vertex) -> WitnessVertex {
        self.psi[v]
    }

    pub fn psi_table(&self) -> &[WitnessVertex] {
        &self.psi
    }

    /// The point of `A` whose generic copy is `w`, if any.
    pub fn psi_preimage(&self, w: &WitnessVertex) -> Option<Vertex> {
        let (x, y) = *self.matching.get(w.edge.0)?;
        [x, y].into_iter().find(|&v| self.psi[v] == *w)
    }

    pub fn edge_of(&self, v: Vertex) -> usize {
        self.edge_of[v]
    }

    pub fn check_vertex(&self, w: &WitnessVertex) -> Result<()> {
        let n = self.edge_count();
        if w.valuation.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: w.valuation.len(),
            });
        }
        if w.edge.0 >= n {
            return Err(Error::OutOfRange {
                vertex: w.edge.0,
                order: n,
            });
        }
        Ok(())
    }

    pub fn distance(&self, u: &WitnessVertex, v: &WitnessVertex) -> Result<u8> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex);
        }
        Ok(
            if u.edge == v.edge && v.valuation == u.valuation.complement() {
                3
            } else if u.valuation.get(v.edge.0) == v.valuation.get(u.edge.0) {
                1
            } else {
                2
            },
        )
    }

    /// `p̂((e, χ)) = χ(e)`.
    pub fn pode_value(&self, w: &WitnessVertex) -> u8 {
        w.valuation.get(w.edge.0)
    }

    /// Position of `w` in the enumeration order `e · 2ⁿ + χ`.
    pub fn index_of(&self, w: &WitnessVertex) -> usize {
        (w.edge.0 << self.edge_count()) | w.valuation.bits() as usize
    }

    pub fn vertex_at(&self, index: usize) -> WitnessVertex {
        let n = self.edge_count();
        let bits = (index & ((1usize << n) - 1)) as u64;
        WitnessVertex::new(index >> n, Valuation { bits, len: n as u8 })
    }

    /// All `n·2ⁿ` points in index order; refused above `limit` edges.
    pub fn vertices(&self, limit: usize) -> Result<Vec<WitnessVertex>> {
        let n = self.edge_count();
        if n > limit {
            return Err(Error::Capacity(format!(
                "witness has {n} matching edges, materialization limit is {limit}"
            )));
        }
        Ok((0..n << n).map(|i| self.vertex_at(i)).collect())
    }

    /// `B` as an explicit distance matrix, for small witnesses.
    pub fn materialize(&self, limit: usize) -> Result<AntipodalSpace> {
        let points = self.vertices(limit)?;
        AntipodalSpace::from_fn(points.len(), |i, j| {
            self.distance(&points[i], &points[j])
                .expect("distinct points")
        })
    }

    /// `ψ ∘ φ ∘ ψ⁻¹` as a list of pairs of witness points.
    pub fn translate(&self, phi: &PartialMap) -> WitnessPartialMap {
        WitnessPartialMap {
            pairs: phi
                .pairs()
                .map(|(u, v)| (self.psi[u], self.psi[v]))
                .collect(),
        }
    }
}

pub fn witness_distance(ctx: &WitnessContext, u: &WitnessVertex, v: &WitnessVertex) -> Result<u8> {
    ctx.distance(u, v)
}

pub fn pode_value(ctx: &WitnessContext, w: &WitnessVertex) -> u8 {
    ctx.pode_value(w)
}

/// A partial map between points of `B`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WitnessPartialMap {
    pub pairs: Vec<(WitnessVertex, WitnessVertex)>,
}

/// Unordered pairs `{e, f}` of matching edges, `e = f` allowed. Stored as a
/// symmetric bit matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlipSet {
    rows: Vec<u64>,
}

impl FlipSet {
    pub fn empty(n: usize) -> Self {
        FlipSet { rows: vec![0; n] }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut f = FlipSet::empty(n);
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange {
                    vertex: a.max(b),
                    order: n,
                });
            }
            f.insert(a, b);
        }
        Ok(f)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, e: usize, f: usize) {
        self.rows[e] |= 1 << f;
        self.rows[f] |= 1 << e;
    }

    pub fn toggle(&mut self, e: usize, f: usize) {
        self.rows[e] ^= 1 << f;
        if e != f {
            self.rows[f] ^= 1 << e;
        }
    }

    pub fn contains(&self, e: usize, f: usize) -> bool {
        self.rows[e] >> f & 1 == 1
    }

    pub fn row(&self, e: usize) -> u64 {
        self.rows[e]
    }

    /// Members as `(e, f)` with `e ≤ f`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        (0..n)
            .flat_map(|e| {
                (e..n)
                    .filter(move |&f| self.contains(e, f))
                    .map(move |f| (e, f))
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs().len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn has_singleton(&self) -> bool {
        (0..self.rows.len()).any(|e| self.contains(e, e))
    }
}

impl Serialize for FlipSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

/// The extension `θ`: a permutation `φ̂` of `M` and the flipped pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WitnessAutomorphism {
    pub perm: Vec<usize>,
    pub flips: FlipSet,
}

impl WitnessAutomorphism {
    pub fn identity(n: usize) -> Self {
        WitnessAutomorphism {
            perm: (0..n).collect(),
            flips: FlipSet::empty(n),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, w: &WitnessVertex) -> Result<WitnessVertex> {
        let n = self.edge_count();
        if w.valuation.len() != n || w.edge.0 >= n {
            return Err(Error::Dimension {
                expected: n,
                found: w.valuation.len(),
            });
        }
        let e = w.edge.0;
        let flipped = w.valuation.bits() ^ self.flips.row(e);
        let mut xi = 0u64;
        for (f, &target) in self.perm.iter().enumerate() {
            xi |= (flipped >> f & 1) << target;
        }
        Ok(WitnessVertex::new(
            self.perm[e],
            Valuation {
                bits: xi,
                len: n as u8,
            },
        ))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &WitnessAutomorphism) -> WitnessAutomorphism {
        let n = self.edge_count();
        let perm = self.perm.iter().map(|&e| next.perm[e]).collect();
        let mut flips = self.flips.clone();
        for e in 0..n {
            for f in e..n {
                if next.flips.contains(self.perm[e], self.perm[f]) {
                    flips.toggle(e, f);
                }
            }
        }
        WitnessAutomorphism { perm, flips }
    }

    /// The induced permutation of point indices of a materialized witness.
    pub fn index_permutation(&self, ctx: &WitnessContext, limit: usize) -> Result<Vec<usize>> {
        ctx.vertices(limit)?
            .iter()
            .map(|w| self.apply(w).map(|img| ctx.index_of(&img)))
            .collect()
    }
}

pub fn apply_witness_automorphism(
    theta: &WitnessAutomorphism,
    w: &WitnessVertex,
) -> Result<WitnessVertex> {
    theta.apply(w)
}

/// Adds `antipode(v) ↦ antipode(φ(v))` for every `v` in the domain.
pub fn close_under_antipodes(a: &AntipodalSpace, phi: &PartialMap) -> Result<PartialMap> {
    phi.check_range(a.order(), a.order())?;
    let mut pairs: Vec<(Vertex, Vertex)> = phi.pairs().collect();
    for (v, w) in phi.pairs() {
        let (av, aw) = (a.antipode(v), a.antipode(w));
        match phi.get(av) {
            Some(existing) if existing != aw => {
                return Err(Error::NotIsomorphism(format!(
                    "{v} and its antipode {av} are not sent to antipodal points"
                )))
            }
            Some(_) => {}
            None => pairs.push((av, aw)),
        }
    }
    PartialMap::from_pairs(&pairs)
        .map_err(|_| Error::NotIsomorphism("antipodal closure is not injective".into()))
}

/// The partial permutation of `M` induced by `φ'`, extended to all of `M` by
/// matching the unused source edges to the unused target edges in increasing
/// order.
pub fn project_and_extend(ctx: &WitnessContext, phi: &WitnessPartialMap) -> Result<Vec<usize>> {
    let n = ctx.edge_count();
    let mut forward: Vec<Option<usize>> = vec![None; n];
    let mut backward: Vec<Option<usize>> = vec![None; n];
    for (u, w) in &phi.pairs {
        ctx.check_vertex(u)?;
        ctx.check_vertex(w)?;
        let (e, f) = (u.edge.0, w.edge.0);
        if forward[e].is_some_and(|g| g != f) || backward[f].is_some_and(|d| d != e) {
            return Err(Error::NotIsomorphism(format!(
                "projection onto matching edges is not a partial permutation at e{e}"
            )));
        }
        forward[e] = Some(f);
        backward[f] = Some(e);
    }
    let free_targets: Vec<usize> = (0..n).filter(|&f| backward[f].is_none()).collect();
    let free_sources: Vec<usize> = (0..n).filter(|&e| forward[e].is_none()).collect();
    for (e, f) in free_sources.into_iter().zip(free_targets) {
        forward[e] = Some(f);
    }
    Ok(forward.into_iter().map(|f| f.expect("extended")).collect())
}

/// Pairs `{e, f}` with some `(e, χ)` in the domain of `φ'` such that
/// `χ(f) ≠ χ'(φ̂(f))` where `φ'((e, χ)) = (φ̂(e), χ')`.
///
/// The set is required to be the same whichever of the (at most two)
/// domain points over `e` is used, and symmetric between `e` and `f` when
/// both lie in the projected domain; anything else means `φ'` does not
/// preserve distances.
pub fn flip_set(ctx: &WitnessContext, phi: &WitnessPartialMap, hat: &[usize]) -> Result<FlipSet> {
    let n = ctx.edge_count();
    let mut own: Vec<Option<u64>> = vec![None; n];
    for (u, w) in &phi.pairs {
        let e = u.edge.0;
        if hat[e] != w.edge.0 {
            return Err(Error::NotIsomorphism(format!(
                "e{e} is sent to e{} but the permutation says e{}",
                w.edge.0, hat[e]
            )));
        }
        let mut row = 0u64;
        for (f, &hf) in hat.iter().enumerate() {
            if u.valuation.get(f) != w.valuation.get(hf) {
                row |= 1 << f;
            }
        }
        match own[e] {
            Some(prev) if prev != row => {
                return Err(Error::NotIsomorphism(format!(
                    "antipodal points over e{e} disagree on flipped pairs"
                )))
            }
            _ => own[e] = Some(row),
        }
    }
    let mut flips = FlipSet::empty(n);
    for e in 0..n {
        let Some(row) = own[e] else { continue };
        for (f, theirs) in own.iter().enumerate() {
            let here = row >> f & 1 == 1;
            if let Some(other) = theirs {
                if here != (other >> e & 1 == 1) {
                    return Err(Error::NotIsomorphism(format!(
                        "pair {{e{e}, e{f}}} is flipped from one side only"
                    )));
                }
            }
            if here {
                flips.insert(e, f);
            }
        }
    }
    Ok(flips)
}

/// Extends a partial isomorphism of `A` (in its own coordinates) to an
/// automorphism of `B`.
pub fn extend_automorphism(ctx: &WitnessContext, phi: &PartialMap) -> Result<WitnessAutomorphism> {
    let a = ctx.space();
    phi.check_range(a.order(), a.order())?;
    if !a.is_partial_isomorphism(a, phi) {
        return Err(Error::NotIsomorphism(
            "map does not preserve distances".into(),
        ));
    }
    let closed = close_under_antipodes(a, phi)?;
    debug_assert!(a.is_partial_isomorphism(a, &closed));
    let lifted = ctx.translate(&closed);
    let perm = project_and_extend(ctx, &lifted)?;
    let flips = flip_set(ctx, &lifted, &perm)?;
    Ok(WitnessAutomorphism { perm, flips })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadruple() -> AntipodalSpace {
        AntipodalSpace::from_upper(4, &[3, 1, 2, 2, 1, 3]).unwrap()
    }

    fn v(e: usize, bits: &str) -> WitnessVertex {
        WitnessVertex::new(e, bits.parse().unwrap())
    }

    #[test]
    fn quadruple_generic_copy() {
        let ctx = build_witness(&quadruple()).unwrap();
        assert_eq!(ctx.psi(0), v(0, "00"));
        assert_eq!(ctx.psi(1), v(0, "11"));
        assert_eq!(ctx.psi(2), v(1, "00"));
        assert_eq!(ctx.psi(3), v(1, "11"));
        assert_eq!(ctx.distance(&ctx.psi(0), &ctx.psi(2)).unwrap(), 1);
        assert_eq!(ctx.psi_preimage(&v(1, "11")), Some(3));
        assert_eq!(ctx.psi_preimage(&v(1, "01")), None);
    }

    #[test]
    fn quadruple_with_far_low_endpoints() {
        // d(x1, x2) = 2 puts χ_2(e_1) = 1
        let a = AntipodalSpace::from_upper(4, &[3, 2, 1, 1, 2, 3]).unwrap();
        let ctx = build_witness(&a).unwrap();
        assert_eq!(ctx.psi(2), v(1, "10"));
        assert_eq!(ctx.psi(3), v(1, "01"));
    }

    #[test]
    fn two_point_space() {
        let a = AntipodalSpace::from_upper(2, &[3]).unwrap();
        let ctx = build_witness(&a).unwrap();
        assert_eq!(ctx.psi(0), v(0, "0"));
        assert_eq!(ctx.psi(1), v(0, "1"));
        assert_eq!(ctx.distance(&ctx.psi(0), &ctx.psi(1)).unwrap(), 3);
    }

    #[test]
    fn witness_sizes() {
        for (n, expected) in [(1usize, 2u128), (2, 8), (3, 24)] {
            let g = crate::structures::Graph::empty(n);
            let (a, _) = crate::antipodal::double_cover(&g);
            let ctx = build_witness(&a).unwrap();
            assert_eq!(ctx.witness_order(), expected);
            assert_eq!(ctx.vertices(12).unwrap().len() as u128, expected);
        }
    }

    #[test]
    fn distance_rules() {
        let ctx = build_witness(&quadruple()).unwrap();
        assert_eq!(ctx.distance(&v(0, "00"), &v(0, "11")).unwrap(), 3);
        assert_eq!(ctx.distance(&v(0, "00"), &v(1, "00")).unwrap(), 1);
        assert_eq!(ctx.distance(&v(0, "01"), &v(1, "00")).unwrap(), 2);
        // same edge, non-complementary: compared at e itself
        assert_eq!(ctx.distance(&v(0, "00"), &v(0, "10")).unwrap(), 2);
        assert_eq!(ctx.distance(&v(0, "00"), &v(0, "01")).unwrap(), 1);
        assert_eq!(
            ctx.distance(&v(0, "00"), &v(0, "00")),
            Err(Error::SameVertex)
        );
        assert!(ctx.distance(&v(0, "000"), &v(0, "00")).is_err());
        assert!(ctx.distance(&v(2, "00"), &v(0, "00")).is_err());
    }

    #[test]
    fn index_roundtrip() {
        let ctx = build_witness(&quadruple()).unwrap();
        for i in 0..8 {
            assert_eq!(ctx.index_of(&ctx.vertex_at(i)), i);
        }
        assert!(ctx.vertices(1).is_err());
    }

    #[test]
    fn closure_examples() {
        let a = quadruple();
        let closed = PartialMap::from_pairs(&[(0, 2), (1, 3)]).unwrap();
        assert_eq!(close_under_antipodes(&a, &closed).unwrap(), closed);
        let single = PartialMap::from_pairs(&[(0, 2)]).unwrap();
        assert_eq!(close_under_antipodes(&a, &single).unwrap(), closed);
        assert!(close_under_antipodes(&a, &PartialMap::empty())
            .unwrap()
            .is_empty());
        let broken = PartialMap::from_pairs(&[(0, 2), (1, 0)]).unwrap();
        assert!(close_under_antipodes(&a, &broken).is_err());
    }

    #[test]
    fn order_preserving_extension() {
        let g = crate::structures::Graph::empty(3);
        let (a, _) = crate::antipodal::double_cover(&g);
        let ctx = build_witness(&a).unwrap();
        let empty = WitnessPartialMap::default();
        assert_eq!(project_and_extend(&ctx, &empty).unwrap(), vec![0, 1, 2]);
        // e_0 pair onto e_2 pair: leftovers e_1 < e_2 go to e_0 < e_1
        let phi = close_under_antipodes(&a, &PartialMap::from_pairs(&[(0, 4)]).unwrap()).unwrap();
        let lifted = ctx.translate(&phi);
        assert_eq!(project_and_extend(&ctx, &lifted).unwrap(), vec![2, 0, 1]);
        let total = PartialMap::from_permutation(&[2, 3, 0, 1, 4, 5]);
        let lifted = ctx.translate(&total);
        assert_eq!(project_and_extend(&ctx, &lifted).unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn flip_set_examples() {
        let a = quadruple();
        let ctx = build_witness(&a).unwrap();
        let id = ctx.translate(&PartialMap::identity_on(&[0, 1]));
        let hat = project_and_extend(&ctx, &id).unwrap();
        assert!(flip_set(&ctx, &id, &hat).unwrap().is_empty());
        assert!(flip_set(&ctx, &WitnessPartialMap::default(), &[0, 1])
            .unwrap()
            .is_empty());

        let two = AntipodalSpace::from_upper(2, &[3]).unwrap();
        let ctx = build_witness(&two).unwrap();
        let swap = ctx.translate(&PartialMap::from_permutation(&[1, 0]));
        let f = flip_set(&ctx, &swap, &[0]).unwrap();
        assert_eq!(f.pairs(), vec![(0, 0)]);
    }

    #[test]
    fn identity_extends_to_identity() {
        let ctx = build_witness(&quadruple()).unwrap();
        let theta = extend_automorphism(&ctx, &PartialMap::identity(4)).unwrap();
        assert_eq!(theta, WitnessAutomorphism::identity(2));
        for w in ctx.vertices(12).unwrap() {
            assert_eq!(theta.apply(&w).unwrap(), w);
        }
    }

    #[test]
    fn swapping_an_antipodal_pair() {
        let ctx = build_witness(&quadruple()).unwrap();
        let phi = PartialMap::from_pairs(&[(0, 1)]).unwrap();
        let theta = extend_automorphism(&ctx, &phi).unwrap();
        assert!(theta.flips.contains(0, 0));
        assert_eq!(theta.apply(&ctx.psi(0)).unwrap(), ctx.psi(1));
        assert_eq!(theta.apply(&ctx.psi(1)).unwrap(), ctx.psi(0));
    }

    #[test]
    fn singleton_flip_on_one_edge() {
        let theta = WitnessAutomorphism {
            perm: vec![0],
            flips: FlipSet::from_pairs(1, &[(0, 0)]).unwrap(),
        };
        assert_eq!(theta.apply(&v(0, "0")).unwrap(), v(0, "1"));
        assert!(theta.apply(&v(0, "01")).is_err());
    }

    #[test]
    fn theta_commutes_with_antipodes() {
        let g = crate::structures::Graph::new(3, &[(0, 1)]).unwrap();
        let (a, _) = crate::antipodal::double_cover(&g);
        let ctx = build_witness(&a).unwrap();
        let phi = PartialMap::from_pairs(&[(0, 3), (2, 1)]).unwrap();
        let theta = extend_automorphism(&ctx, &phi).unwrap();
        for w in ctx.vertices(12).unwrap() {
            assert_eq!(
                theta.apply(&w.antipode()).unwrap(),
                theta.apply(&w).unwrap().antipode()
            );
        }
    }

    #[test]
    fn rejects_non_isomorphisms() {
        let ctx = build_witness(&quadruple()).unwrap();
        let phi = PartialMap::from_pairs(&[(0, 2), (1, 0)]).unwrap();
        assert!(matches!(
            extend_automorphism(&ctx, &phi),
            Err(Error::NotIsomorphism(_))
        ));
    }

    #[test]
    fn valuation_text() {
        let x: Valuation = "0110".parse().unwrap();
        assert_eq!(x.get(1), 1);
        assert_eq!(x.get(0), 0);
        assert_eq!(x.to_string(), "0110");
        assert_eq!(x.complement().to_string(), "1001");
        assert!("012".parse::<Valuation>().is_err());
        assert_eq!("2:01".parse::<WitnessVertex>().unwrap(), v(2, "01"));
    }
}
