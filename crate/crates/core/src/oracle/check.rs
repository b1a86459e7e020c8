//! Brute-force structure checks: partial isomorphisms, automorphisms and an
//! independent model of the witness `B`.
//!
//! These read only raw adjacency / triple / distance data and never call the
//! `is_partial_isomorphism` methods or the witness distance of the main
//! modules.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::structures::{AntipodalSpace, Graph, PartialMap, TwoGraph};

pub const MAX_PARTIAL_ISO_POINTS: usize = 8;

/// A finite structure given by one relation of fixed arity on points
/// `0..points()`. Graphs and metric spaces are binary (edge / distance),
/// two-graphs ternary.
pub trait Checkable {
    const ARITY: usize;

    fn points(&self) -> usize;

    /// Value of the relation on distinct points, listed in any order.
    fn relation(&self, tuple: &[usize]) -> u8;

    /// Whether every relation involving the last domain point and earlier
    /// ones has the same value in `self` as on the images in `target`.
    fn last_agrees<T: Checkable>(&self, target: &T, dom: &[usize], img: &[usize]) -> bool {
        assert_eq!(Self::ARITY, T::ARITY, "relations of different arity");
        let k = dom.len() - 1;
        match Self::ARITY {
            2 => (0..k)
                .all(|i| self.relation(&[dom[i], dom[k]]) == target.relation(&[img[i], img[k]])),
            3 => (0..k).tuple_combinations().all(|(i, j)| {
                self.relation(&[dom[i], dom[j], dom[k]])
                    == target.relation(&[img[i], img[j], img[k]])
            }),
            a => unimplemented!("arity {a}"),
        }
    }

    /// Whether `dom[i] ↦ img[i]` preserves the relation.
    fn maps_into<T: Checkable>(&self, target: &T, dom: &[usize], img: &[usize]) -> bool {
        (1..=dom.len()).all(|k| self.last_agrees(target, &dom[..k], &img[..k]))
    }
}

impl Checkable for Graph {
    const ARITY: usize = 2;

    fn points(&self) -> usize {
        self.order()
    }

    fn relation(&self, t: &[usize]) -> u8 {
        self.has_edge(t[0], t[1]) as u8
    }
}

impl Checkable for TwoGraph {
    const ARITY: usize = 3;

    fn points(&self) -> usize {
        self.order()
    }

    fn relation(&self, t: &[usize]) -> u8 {
        self.has_triple(t[0], t[1], t[2]) as u8
    }
}

impl Checkable for AntipodalSpace {
    const ARITY: usize = 2;

    fn points(&self) -> usize {
        self.order()
    }

    fn relation(&self, t: &[usize]) -> u8 {
        self.dist(t[0], t[1])
    }
}

/// The two-graph of a graph, read directly off its edges: a triple is
/// present when it spans an odd number of edges.
#[derive(Debug, Clone, Copy)]
pub struct OddTriples<'a>(pub &'a Graph);

impl Checkable for OddTriples<'_> {
    const ARITY: usize = 3;

    fn points(&self) -> usize {
        self.0.order()
    }

    fn relation(&self, t: &[usize]) -> u8 {
        let g = self.0;
        (g.has_edge(t[0], t[1]) as u8 + g.has_edge(t[0], t[2]) as u8 + g.has_edge(t[1], t[2]) as u8)
            % 2
    }
}

/// All partial isomorphisms of `s` with at most `max_size` points, ordered
/// by size, then domain (lexicographic subsets), then image (lexicographic
/// sequences).
pub fn all_partial_isomorphisms<S: Checkable>(s: &S, max_size: usize) -> Result<Vec<PartialMap>> {
    let n = s.points();
    if n > MAX_PARTIAL_ISO_POINTS {
        return Err(Error::Capacity(format!(
            "partial isomorphism enumeration is capped at {MAX_PARTIAL_ISO_POINTS} points"
        )));
    }
    let mut out = Vec::new();
    for k in 0..=max_size.min(n) {
        for dom in (0..n).combinations(k) {
            let mut img = Vec::with_capacity(k);
            let mut used = vec![false; n];
            extend_images(s, &dom, &mut img, &mut used, &mut out);
        }
    }
    Ok(out)
}

fn extend_images<S: Checkable>(
    s: &S,
    dom: &[usize],
    img: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<PartialMap>,
) {
    if img.len() == dom.len() {
        out.push(PartialMap::new(dom.to_vec(), img.clone()).expect("injective"));
        return;
    }
    for w in 0..used.len() {
        if used[w] {
            continue;
        }
        img.push(w);
        if s.last_agrees(s, &dom[..img.len()], img) {
            used[w] = true;
            extend_images(s, dom, img, used, out);
            used[w] = false;
        }
        img.pop();
    }
}

pub fn all_automorphisms<S: Checkable>(s: &S) -> Result<Vec<Vec<usize>>> {
    let n = s.points();
    Ok(all_partial_isomorphisms(s, n)?
        .into_iter()
        .filter(|m| m.len() == n)
        .map(|m| m.img().to_vec())
        .collect())
}

/// A random partial isomorphism with `size` points (fewer if `s` is
/// smaller): a random domain, images chosen by randomized backtracking.
/// The identity always succeeds, so the search never comes back empty.
pub fn random_partial_isomorphism<S: Checkable>(
    s: &S,
    size: usize,
    rng: &mut impl Rng,
) -> PartialMap {
    let n = s.points();
    let mut dom: Vec<usize> = (0..n).collect();
    dom.shuffle(rng);
    dom.truncate(size.min(n));
    let mut img = Vec::with_capacity(dom.len());
    let mut used = vec![false; n];
    assert!(random_images(s, &dom, &mut img, &mut used, rng));
    PartialMap::new(dom, img).expect("injective")
}

fn random_images<S: Checkable>(
    s: &S,
    dom: &[usize],
    img: &mut Vec<usize>,
    used: &mut [bool],
    rng: &mut impl Rng,
) -> bool {
    if img.len() == dom.len() {
        return true;
    }
    let mut candidates: Vec<usize> = (0..used.len()).filter(|&w| !used[w]).collect();
    candidates.shuffle(rng);
    for w in candidates {
        img.push(w);
        if s.last_agrees(s, &dom[..img.len()], img) {
            used[w] = true;
            if random_images(s, dom, img, used, rng) {
                return true;
            }
            used[w] = false;
        }
        img.pop();
    }
    false
}

/// The point at distance 3, found by scanning.
pub fn antipode_of(a: &AntipodalSpace, v: usize) -> usize {
    (0..a.order())
        .find(|&w| a.dist(v, w) == 3)
        .expect("every point has an antipode")
}

/// Domain closed under antipodes and antipodes sent to antipodes.
pub fn is_antipode_closed(a: &AntipodalSpace, phi: &PartialMap) -> bool {
    phi.pairs()
        .all(|(v, w)| phi.get(antipode_of(a, v)) == Some(antipode_of(a, w)))
}

/// Whether `p` (0/1 per point) takes the same value at `v` and `φ(v)`.
pub fn preserves_labels(p: &[u8], phi: &PartialMap) -> bool {
    phi.pairs().all(|(v, w)| p[v] == p[w])
}

/// The witness over `n` matching edges, points indexed `e · 2ⁿ + χ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessModel {
    pub n: usize,
}

impl WitnessModel {
    pub fn split(&self, i: usize) -> (usize, u64) {
        (i >> self.n, (i & ((1 << self.n) - 1)) as u64)
    }

    pub fn join(&self, e: usize, chi: u64) -> usize {
        (e << self.n) | chi as usize
    }

    pub fn dist(&self, i: usize, j: usize) -> u8 {
        let (e, x) = self.split(i);
        let (f, y) = self.split(j);
        let full = (1u64 << self.n) - 1;
        if i == j {
            0
        } else if e == f && x ^ y == full {
            3
        } else if (x >> f & 1) == (y >> e & 1) {
            1
        } else {
            2
        }
    }

    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        let size = self.points();
        (0..size)
            .map(|i| (0..size).map(|j| self.dist(i, j)).collect())
            .collect()
    }

    /// `θ = (perm, flips)` applied to point `i`; `flip_rows[e]` has bit `f`
    /// set when `{e, f}` is flipped.
    pub fn apply(&self, perm: &[usize], flip_rows: &[u64], i: usize) -> usize {
        let (e, chi) = self.split(i);
        let mut xi = 0u64;
        for (f, &target) in perm.iter().enumerate().take(self.n) {
            let bit = (chi >> f & 1) ^ (flip_rows[e] >> f & 1);
            xi |= bit << target;
        }
        self.join(perm[e], xi)
    }
}

impl Checkable for WitnessModel {
    const ARITY: usize = 2;

    fn points(&self) -> usize {
        self.n << self.n
    }

    fn relation(&self, t: &[usize]) -> u8 {
        self.dist(t[0], t[1])
    }
}

/// Whether `perm` is a permutation of `0..n` preserving `s`.
pub fn is_automorphism<S: Checkable>(s: &S, perm: &[usize]) -> bool {
    let n = s.points();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in perm {
        if w >= n || std::mem::replace(&mut seen[w], true) {
            return false;
        }
    }
    let dom: Vec<usize> = (0..n).collect();
    s.maps_into(s, &dom, perm)
}
