//! Labeled structure enumeration by brute-force filtering.
//!
//! Nothing here calls the validators of [`crate::structures`]; the axioms are
//! re-checked by the local `*_ok` functions.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::structures::{AntipodalSpace, Graph, TwoGraph};

pub const MAX_GRAPH_VERTICES: usize = 7;
pub const MAX_TWO_GRAPH_VERTICES: usize = 6;
pub const MAX_ANTIPODAL_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Graph,
    TwoGraph,
    Antipodal,
}

impl std::str::FromStr for StructureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "graph" => Ok(StructureKind::Graph),
            "two-graph" | "twograph" => Ok(StructureKind::TwoGraph),
            "antipodal" => Ok(StructureKind::Antipodal),
            _ => Err(format!("unknown structure kind '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumerated {
    Graph(Graph),
    TwoGraph(TwoGraph),
    Antipodal(AntipodalSpace),
}

/// Streams every labeled structure of one kind and size.
///
/// Candidates are bit masks read in increasing order: for graphs bit `i`
/// is the `i`-th pair in lexicographic order, for two-graphs the `i`-th
/// triple. Antipodal spaces use the fixed matching `{2i, 2i+1}` and bit `i`
/// picks one of the two locally admissible patterns on the `i`-th pair of
/// matching edges.
#[derive(Debug, Clone)]
pub struct EnumerationCursor {
    pub kind: StructureKind,
    pub size: usize,
    pub position: u64,
    end: u64,
    slots: Vec<Vec<usize>>,
}

impl EnumerationCursor {
    pub fn new(kind: StructureKind, size: usize) -> Result<Self> {
        let (cap, slots) = match kind {
            StructureKind::Graph => (
                MAX_GRAPH_VERTICES,
                (0..size).combinations(2).collect::<Vec<_>>(),
            ),
            StructureKind::TwoGraph => {
                (MAX_TWO_GRAPH_VERTICES, (0..size).combinations(3).collect())
            }
            StructureKind::Antipodal => {
                if size % 2 == 1 {
                    return Err(Error::Capacity(format!(
                        "antipodal spaces have an even number of points, not {size}"
                    )));
                }
                (
                    MAX_ANTIPODAL_POINTS,
                    (0..size / 2).combinations(2).collect(),
                )
            }
        };
        if size > cap {
            return Err(Error::Capacity(format!(
                "enumeration of {kind:?} is capped at size {cap}"
            )));
        }
        Ok(EnumerationCursor {
            kind,
            size,
            position: 0,
            end: 1 << slots.len(),
            slots,
        })
    }

    fn candidate(&self, mask: u64) -> Option<Enumerated> {
        let chosen = self
            .slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.as_slice());
        match self.kind {
            StructureKind::Graph => {
                let edges: Vec<(usize, usize)> = chosen.map(|s| (s[0], s[1])).collect();
                Some(Enumerated::Graph(Graph::new(self.size, &edges).ok()?))
            }
            StructureKind::TwoGraph => {
                let triples: Vec<[usize; 3]> = chosen.map(|s| [s[0], s[1], s[2]]).collect();
                two_graph_ok(self.size, &triples).then_some(())?;
                Some(Enumerated::TwoGraph(
                    TwoGraph::new(self.size, &triples).ok()?,
                ))
            }
            StructureKind::Antipodal => {
                let patterns = local_patterns();
                let mut d = vec![vec![0u8; self.size]; self.size];
                for i in 0..self.size / 2 {
                    d[2 * i][2 * i + 1] = 3;
                    d[2 * i + 1][2 * i] = 3;
                }
                for (k, s) in self.slots.iter().enumerate() {
                    let p = patterns[(mask >> k & 1) as usize];
                    let (i, j) = (s[0], s[1]);
                    for (a, b, value) in [
                        (2 * i, 2 * j, p[0]),
                        (2 * i, 2 * j + 1, p[1]),
                        (2 * i + 1, 2 * j, p[2]),
                        (2 * i + 1, 2 * j + 1, p[3]),
                    ] {
                        d[a][b] = value;
                        d[b][a] = value;
                    }
                }
                antipodal_ok(&d).then_some(())?;
                Some(Enumerated::Antipodal(AntipodalSpace::from_matrix(&d).ok()?))
            }
        }
    }
}

impl Iterator for EnumerationCursor {
    type Item = Enumerated;

    fn next(&mut self) -> Option<Enumerated> {
        while self.position < self.end {
            let mask = self.position;
            self.position += 1;
            if let Some(s) = self.candidate(mask) {
                return Some(s);
            }
        }
        None
    }
}

/// Every 4-set spans an even number of triples.
pub fn two_graph_ok(n: usize, triples: &[[usize; 3]]) -> bool {
    let mut present = vec![false; n * n * n];
    for t in triples {
        let mut s = *t;
        s.sort_unstable();
        present[(s[0] * n + s[1]) * n + s[2]] = true;
    }
    let has = |a: usize, b: usize, c: usize| present[(a * n + b) * n + c];
    (0..n).combinations(4).all(|q| {
        let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
        (has(a, b, c) as u8 + has(a, b, d) as u8 + has(a, c, d) as u8 + has(b, c, d) as u8)
            .is_multiple_of(2)
    })
}

/// Distances in {1,2,3}, symmetric, zero diagonal, metric, no 2-2-3
/// triangle, and every point has exactly one point at distance 3.
pub fn antipodal_ok(d: &[Vec<u8>]) -> bool {
    let n = d.len();
    if d.iter().any(|row| row.len() != n) {
        return false;
    }
    for (u, row) in d.iter().enumerate() {
        if row[u] != 0 {
            return false;
        }
        let mut far = 0;
        for (v, &duv) in row.iter().enumerate() {
            if u == v {
                continue;
            }
            if duv != d[v][u] || !(1..=3).contains(&duv) {
                return false;
            }
            if duv == 3 {
                far += 1;
            }
        }
        if far != 1 {
            return false;
        }
    }
    for (u, v, w) in (0..n).tuple_combinations() {
        let mut s = [d[u][v], d[u][w], d[v][w]];
        s.sort_unstable();
        if s[2] > s[0] + s[1] || s == [2, 2, 3] {
            return false;
        }
    }
    true
}

/// Cross distances `(d(2i,2j), d(2i,2j+1), d(2i+1,2j), d(2i+1,2j+1))`
/// between two matching edges that give a valid 4-point space, found by
/// trying all of {1,2,3}⁴.
pub fn local_patterns() -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for p in (0..4).map(|_| 1u8..=3).multi_cartesian_product() {
        let d = vec![
            vec![0, 3, p[0], p[1]],
            vec![3, 0, p[2], p[3]],
            vec![p[0], p[2], 0, 3],
            vec![p[1], p[3], 3, 0],
        ];
        if antipodal_ok(&d) {
            out.push([p[0], p[1], p[2], p[3]]);
        }
    }
    out
}

pub fn enumerate_graphs(k: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(
        EnumerationCursor::new(StructureKind::Graph, k)?.map(|s| match s {
            Enumerated::Graph(g) => g,
            _ => unreachable!(),
        }),
    )
}

pub fn enumerate_two_graphs(k: usize) -> Result<impl Iterator<Item = TwoGraph>> {
    Ok(
        EnumerationCursor::new(StructureKind::TwoGraph, k)?.map(|s| match s {
            Enumerated::TwoGraph(t) => t,
            _ => unreachable!(),
        }),
    )
}

pub fn enumerate_antipodal_spaces(points: usize) -> Result<impl Iterator<Item = AntipodalSpace>> {
    Ok(
        EnumerationCursor::new(StructureKind::Antipodal, points)?.map(|s| match s {
            Enumerated::Antipodal(a) => a,
            _ => unreachable!(),
        }),
    )
}

/// Second enumeration of antipodal spaces with matching `{2i, 2i+1}`: every
/// assignment of {1,2,3} to the non-matching pairs, filtered by
/// [`antipodal_ok`]. Only for up to six points.
pub fn enumerate_antipodal_spaces_raw(points: usize) -> Result<Vec<AntipodalSpace>> {
    if points % 2 == 1 || points > 6 {
        return Err(Error::Capacity(format!(
            "raw antipodal enumeration needs an even size up to 6, got {points}"
        )));
    }
    let free: Vec<(usize, usize)> = (0..points)
        .tuple_combinations()
        .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
        .collect();
    let mut out = Vec::new();
    for values in free.iter().map(|_| 1u8..=3).multi_cartesian_product() {
        let mut d = vec![vec![0u8; points]; points];
        for i in 0..points / 2 {
            d[2 * i][2 * i + 1] = 3;
            d[2 * i + 1][2 * i] = 3;
        }
        for (&(u, v), &x) in free.iter().zip(&values) {
            d[u][v] = x;
            d[v][u] = x;
        }
        if antipodal_ok(&d) {
            out.push(AntipodalSpace::from_matrix(&d).expect("checked"));
        }
    }
    Ok(out)
}

/// A uniformly chosen labeled space on `points` points: random admissible
/// patterns on the fixed matching, then a random relabeling.
pub fn sample_antipodal_space(points: usize, rng: &mut impl Rng) -> Result<AntipodalSpace> {
    if points % 2 == 1 || points > 2 * crate::witness::MAX_MATCHING_EDGES {
        return Err(Error::Capacity(format!(
            "cannot sample a space on {points} points"
        )));
    }
    let patterns = local_patterns();
    let mut d = vec![vec![0u8; points]; points];
    for i in 0..points / 2 {
        d[2 * i][2 * i + 1] = 3;
        d[2 * i + 1][2 * i] = 3;
        for j in 0..i {
            let p = patterns[rng.gen_range(0..patterns.len())];
            for (a, b, value) in [
                (2 * j, 2 * i, p[0]),
                (2 * j, 2 * i + 1, p[1]),
                (2 * j + 1, 2 * i, p[2]),
                (2 * j + 1, 2 * i + 1, p[3]),
            ] {
                d[a][b] = value;
                d[b][a] = value;
            }
        }
    }
    let mut relabel: Vec<usize> = (0..points).collect();
    relabel.shuffle(rng);
    let mut e = vec![vec![0u8; points]; points];
    for u in 0..points {
        for v in 0..points {
            e[relabel[u]][relabel[v]] = d[u][v];
        }
    }
    AntipodalSpace::from_matrix(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_local_patterns() {
        assert_eq!(local_patterns(), vec![[1, 2, 2, 1], [2, 1, 1, 2]]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_two_graphs(2).unwrap().count(), 1);
        assert_eq!(enumerate_two_graphs(3).unwrap().count(), 2);
        assert_eq!(enumerate_two_graphs(4).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_antipodal_spaces(2).unwrap().count(), 1);
        assert_eq!(enumerate_antipodal_spaces(0).unwrap().count(), 1);
    }

    #[test]
    fn caps_are_errors() {
        assert!(enumerate_two_graphs(7).is_err());
        assert!(enumerate_antipodal_spaces(5).is_err());
        assert!(enumerate_antipodal_spaces(10).is_err());
        assert!(enumerate_antipodal_spaces_raw(8).is_err());
    }
}
