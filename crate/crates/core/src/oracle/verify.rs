//! Exhaustive EPPA and coherence verification.
//!
//! Extensions come from the main modules; whether they are automorphisms,
//! whether they extend the given map, and whether they compose is decided
//! here with the brute-force checks of [`super::check`].

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::check::{
    all_partial_isomorphisms, is_antipode_closed, is_automorphism, preserves_labels, Checkable,
    OddTriples, WitnessModel,
};
use super::enumerate::{enumerate_antipodal_spaces, enumerate_graphs, enumerate_two_graphs};
use crate::error::{Error, Result};
use crate::pipelines::{
    extend_plain_iso, extend_switching_iso, extend_two_graph_partial, switching_eppa_witness,
    two_graph_eppa_witness, TwoGraphEppaCertificate,
};
use crate::structures::{AntipodalSpace, Graph, PartialMap, SwitchingPartialMap, TwoGraph};
use crate::switching::SwitchSet;
use crate::witness::{build_witness, extend_automorphism, WitnessAutomorphism, WitnessContext};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub structure: String,
    pub map: PartialMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub switch_set: Option<SwitchSet>,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub kind: String,
    pub size: usize,
    pub structures: usize,
    pub maps_checked: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn new(kind: &str, size: usize) -> Self {
        VerificationReport {
            kind: kind.to_string(),
            size,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.structures += other.structures;
        self.maps_checked += other.maps_checked;
        self.failures.extend(other.failures);
    }
}

fn failure(structure: &impl std::fmt::Debug, map: &PartialMap, reason: String) -> Failure {
    Failure {
        structure: format!("{structure:?}"),
        map: map.clone(),
        switch_set: None,
        reason,
    }
}

fn is_embedding<S: Checkable, W: Checkable>(source: &S, witness: &W, embedding: &[usize]) -> bool {
    let all: Vec<usize> = (0..source.points()).collect();
    let distinct: BTreeSet<_> = embedding.iter().collect();
    embedding.len() == all.len()
        && distinct.len() == embedding.len()
        && embedding.iter().all(|&x| x < witness.points())
        && source.maps_into(witness, &all, embedding)
}

/// Checks that `embedding` embeds `source` into `witness` and that, for every
/// map in `maps`, `extend` returns an automorphism of `witness` that sends
/// the copy of `v` to the copy of `φ(v)`.
pub fn verify_eppa<S, W>(
    source: &S,
    witness: &W,
    embedding: &[usize],
    maps: &[PartialMap],
    mut extend: impl FnMut(&PartialMap) -> Result<Vec<usize>>,
) -> VerificationReport
where
    S: Checkable + std::fmt::Debug,
    W: Checkable,
{
    let mut report = VerificationReport {
        structures: 1,
        ..Default::default()
    };
    if !is_embedding(source, witness, embedding) {
        report.failures.push(failure(
            source,
            &PartialMap::empty(),
            "recorded embedding is not an embedding".into(),
        ));
        return report;
    }
    for phi in maps {
        report.maps_checked += 1;
        let perm = match extend(phi) {
            Ok(p) => p,
            Err(e) => {
                report
                    .failures
                    .push(failure(source, phi, format!("extension failed: {e}")));
                continue;
            }
        };
        if !is_automorphism(witness, &perm) {
            report.failures.push(failure(
                source,
                phi,
                "extension is not an automorphism".into(),
            ));
        } else if let Some((v, w)) = phi
            .pairs()
            .find(|&(v, w)| perm[embedding[v]] != embedding[w])
        {
            report.failures.push(failure(
                source,
                phi,
                format!("extension does not send the copy of {v} to the copy of {w}"),
            ));
        }
    }
    report
}

/// Whether `perm` is an isomorphism from `h` switched by `switched` onto `h`.
fn is_switching_automorphism(h: &Graph, perm: &[usize], switched: &[bool]) -> bool {
    let n = h.order();
    if perm.len() != n || switched.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &w in perm {
        if w >= n || std::mem::replace(&mut seen[w], true) {
            return false;
        }
    }
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            (h.has_edge(u, v) ^ (switched[u] != switched[v])) == h.has_edge(perm[u], perm[v])
        })
    })
}

/// The switching counterpart of [`verify_eppa`] for graphs: each extension
/// must be a switching automorphism of `h` that sends the copy of `v` to the
/// copy of `φ(v)` and switches the copy of `v` exactly when `v ∈ S`.
pub fn verify_switching_eppa(
    g: &Graph,
    h: &Graph,
    embedding: &[usize],
    maps: &[(PartialMap, SwitchSet)],
    mut extend: impl FnMut(&PartialMap, &SwitchSet) -> Result<(Vec<usize>, SwitchSet)>,
) -> VerificationReport {
    let mut report = VerificationReport {
        structures: 1,
        ..Default::default()
    };
    if !is_embedding(g, h, embedding) {
        report.failures.push(failure(
            g,
            &PartialMap::empty(),
            "recorded embedding is not an embedding".into(),
        ));
        return report;
    }
    for (phi, s) in maps {
        report.maps_checked += 1;
        let with_set = |reason: String| Failure {
            switch_set: Some(s.clone()),
            ..failure(g, phi, reason)
        };
        let (perm, s_h) = match extend(phi, s) {
            Ok(x) => x,
            Err(e) => {
                report
                    .failures
                    .push(with_set(format!("extension failed: {e}")));
                continue;
            }
        };
        let switched: Vec<bool> = (0..h.order()).map(|v| s_h.contains(v)).collect();
        if !is_switching_automorphism(h, &perm, &switched) {
            report
                .failures
                .push(with_set("extension is not a switching automorphism".into()));
        } else if let Some((v, _)) = phi.pairs().find(|&(v, w)| {
            perm[embedding[v]] != embedding[w] || switched[embedding[v]] != s.contains(v)
        }) {
            report
                .failures
                .push(with_set(format!("extension disagrees with the map at {v}")));
        }
    }
    report
}

/// Permutation of the points of `B` induced by `θ`, computed on the model.
pub fn model_permutation(model: &WitnessModel, theta: &WitnessAutomorphism) -> Vec<usize> {
    let rows: Vec<u64> = (0..model.n).map(|e| theta.flips.row(e)).collect();
    (0..model.points())
        .map(|i| model.apply(&theta.perm, &rows, i))
        .collect()
}

/// Index of `ψ(v)` in the model of `B`.
pub fn model_embedding(ctx: &WitnessContext) -> Vec<usize> {
    let model = WitnessModel {
        n: ctx.edge_count(),
    };
    ctx.psi_table()
        .iter()
        .map(|w| model.join(w.edge.0, w.valuation.bits()))
        .collect()
}

/// EPPA of the antipodal witness for every partial isomorphism of `a` (or
/// only the antipode-closed ones).
pub fn verify_antipodal_eppa(a: &AntipodalSpace, closed_only: bool) -> Result<VerificationReport> {
    let ctx = build_witness(a)?;
    let model = WitnessModel {
        n: ctx.edge_count(),
    };
    let maps: Vec<PartialMap> = all_partial_isomorphisms(a, a.order())?
        .into_iter()
        .filter(|m| !closed_only || is_antipode_closed(a, m))
        .collect();
    Ok(verify_eppa(
        a,
        &model,
        &model_embedding(&ctx),
        &maps,
        |phi| extend_automorphism(&ctx, phi).map(|theta| model_permutation(&model, &theta)),
    ))
}

/// Points of the model whose image under `perm` has a different `p̂`.
pub fn pode_violations(model: &WitnessModel, perm: &[usize]) -> usize {
    let pode = |i: usize| {
        let (e, chi) = model.split(i);
        chi >> e & 1
    };
    (0..model.points())
        .filter(|&i| pode(i) != pode(perm[i]))
        .count()
}

/// For every partial isomorphism preserving the pode labelling of the
/// witness context, `θ` must preserve `p̂` everywhere and flip no singleton.
pub fn verify_pode_preservation(a: &AntipodalSpace) -> Result<VerificationReport> {
    let ctx = build_witness(a)?;
    let model = WitnessModel {
        n: ctx.edge_count(),
    };
    let p = ctx.pode().values().to_vec();
    let mut report = VerificationReport {
        structures: 1,
        ..Default::default()
    };
    for phi in all_partial_isomorphisms(a, a.order())? {
        if !preserves_labels(&p, &phi) {
            continue;
        }
        report.maps_checked += 1;
        let theta = extend_automorphism(&ctx, &phi)?;
        let bad = pode_violations(&model, &model_permutation(&model, &theta));
        if bad > 0 || theta.flips.has_singleton() {
            report.failures.push(failure(
                a,
                &phi,
                format!(
                    "{bad} points change p̂; singleton flipped: {}",
                    theta.flips.has_singleton()
                ),
            ));
        }
    }
    Ok(report)
}

pub fn verify_graph_eppa(g: &Graph) -> Result<VerificationReport> {
    let cert = switching_eppa_witness(g)?;
    let maps = all_partial_isomorphisms(g, g.order())?;
    Ok(verify_eppa(
        g,
        &cert.witness,
        &cert.embedding,
        &maps,
        |phi| {
            let ext = extend_plain_iso(&cert, phi)?;
            ext.as_permutation(cert.witness.order())
                .ok_or_else(|| Error::MalformedMap("extension is not total".into()))
        },
    ))
}

/// Every injective partial map of `g` with every switch set that makes it a
/// switching isomorphism.
pub fn all_switching_partial_isomorphisms(g: &Graph) -> Result<Vec<(PartialMap, SwitchSet)>> {
    let n = g.order();
    let injections = all_partial_isomorphisms(&Graph::empty(n), n)?;
    let mut out = Vec::new();
    for f in injections {
        let pairs: Vec<(usize, usize)> = f.pairs().collect();
        for mask in 0u32..1 << pairs.len() {
            let inside = |i: usize| mask >> i & 1 == 1;
            let ok = (0..pairs.len()).all(|i| {
                (i + 1..pairs.len()).all(|j| {
                    let (u, fu) = pairs[i];
                    let (v, fv) = pairs[j];
                    (g.has_edge(u, v) ^ (inside(i) != inside(j))) == g.has_edge(fu, fv)
                })
            });
            if ok {
                let s = SwitchSet::new((0..pairs.len()).filter(|&i| inside(i)).map(|i| pairs[i].0));
                out.push((f.clone(), s));
            }
        }
    }
    Ok(out)
}

pub fn verify_graph_switching_eppa(g: &Graph) -> Result<VerificationReport> {
    let cert = switching_eppa_witness(g)?;
    let maps = all_switching_partial_isomorphisms(g)?;
    Ok(verify_switching_eppa(
        g,
        &cert.witness,
        &cert.embedding,
        &maps,
        |phi, s| {
            let ext =
                extend_switching_iso(&cert, &SwitchingPartialMap::new(phi.clone(), s.clone())?)?;
            let perm = ext
                .map
                .as_permutation(cert.witness.order())
                .ok_or_else(|| Error::MalformedMap("extension is not total".into()))?;
            Ok((perm, ext.switch_set))
        },
    ))
}

pub fn verify_two_graph_eppa(t: &TwoGraph) -> Result<VerificationReport> {
    let cert = two_graph_eppa_witness(t)?;
    let maps = all_partial_isomorphisms(t, t.order())?;
    let witness = OddTriples(&cert.switching.witness);
    Ok(verify_eppa(t, &witness, cert.embedding(), &maps, |phi| {
        two_graph_extension(&cert, phi)
    }))
}

fn two_graph_extension(cert: &TwoGraphEppaCertificate, phi: &PartialMap) -> Result<Vec<usize>> {
    let ext = extend_two_graph_partial(cert, phi)?;
    ext.map
        .as_permutation(cert.witness_order())
        .ok_or_else(|| Error::MalformedMap("extension is not total".into()))
}

/// What [`run_verify_eppa`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyKind {
    /// Antipodal witness, all partial isomorphisms.
    Antipodal,
    /// Graph witness `H`, plain partial isomorphisms.
    Graph,
    /// Graph witness `H`, switching partial isomorphisms.
    Switching,
    /// Two-graph witness `T(H)`.
    TwoGraph,
}

impl std::str::FromStr for VerifyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "antipodal" => Ok(VerifyKind::Antipodal),
            "graph" => Ok(VerifyKind::Graph),
            "switching" => Ok(VerifyKind::Switching),
            "two-graph" | "twograph" => Ok(VerifyKind::TwoGraph),
            _ => Err(format!("unknown verification kind '{s}'")),
        }
    }
}

impl std::fmt::Display for VerifyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerifyKind::Antipodal => "antipodal",
            VerifyKind::Graph => "graph",
            VerifyKind::Switching => "switching",
            VerifyKind::TwoGraph => "two-graph",
        })
    }
}

/// Runs the EPPA check on every labeled structure of the given size.
pub fn run_verify_eppa(kind: VerifyKind, size: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(&kind.to_string(), size);
    match kind {
        VerifyKind::Antipodal => {
            for a in enumerate_antipodal_spaces(size)? {
                report.absorb(verify_antipodal_eppa(&a, false)?);
            }
        }
        VerifyKind::Graph => {
            for g in enumerate_graphs(size)? {
                report.absorb(verify_graph_eppa(&g)?);
            }
        }
        VerifyKind::Switching => {
            for g in enumerate_graphs(size)? {
                report.absorb(verify_graph_switching_eppa(&g)?);
            }
        }
        VerifyKind::TwoGraph => {
            for t in enumerate_two_graphs(size)? {
                report.absorb(verify_two_graph_eppa(&t)?);
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub structures: usize,
    pub triples_checked: usize,
    /// Coherent triples `(f, g)` whose extensions do not compose.
    pub violations: usize,
    /// Up to ten offending `(f, g)` pairs.
    pub examples: Vec<(PartialMap, PartialMap)>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn absorb(&mut self, other: CoherenceReport) {
        self.structures += other.structures;
        self.triples_checked += other.triples_checked;
        self.violations += other.violations;
        for e in other.examples {
            if self.examples.len() < 10 {
                self.examples.push(e);
            }
        }
    }

    fn record(&mut self, f: &PartialMap, g: &PartialMap, ok: bool) {
        self.triples_checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 10 {
                self.examples.push((f.clone(), g.clone()));
            }
        }
    }
}

/// Coherent pairs `(f, g)`: `g` has domain equal to the range of `f`.
fn coherent_pairs(maps: &[PartialMap]) -> Vec<(usize, usize)> {
    let mut by_domain: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for (i, m) in maps.iter().enumerate() {
        by_domain.entry(m.dom_set()).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        if let Some(gs) = by_domain.get(&f.img_set()) {
            out.extend(gs.iter().map(|&j| (i, j)));
        }
    }
    out
}

/// Checks `θ_{g∘f} = θ_g ∘ θ_f` on every point of `B` for the given pairs
/// (indices into `maps`).
fn check_coherence(
    ctx: &WitnessContext,
    maps: &[PartialMap],
    pairs: &[(usize, usize)],
) -> Result<CoherenceReport> {
    let model = WitnessModel {
        n: ctx.edge_count(),
    };
    let mut cache: Vec<Option<Vec<usize>>> = vec![None; maps.len()];
    let perm_of = |i: usize, cache: &mut Vec<Option<Vec<usize>>>| -> Result<Vec<usize>> {
        if cache[i].is_none() {
            cache[i] = Some(model_permutation(
                &model,
                &extend_automorphism(ctx, &maps[i])?,
            ));
        }
        Ok(cache[i].clone().expect("filled"))
    };
    let mut report = CoherenceReport {
        structures: 1,
        ..Default::default()
    };
    for &(i, j) in pairs {
        let tf = perm_of(i, &mut cache)?;
        let tg = perm_of(j, &mut cache)?;
        let h = maps[i].then(&maps[j]);
        let th = model_permutation(&model, &extend_automorphism(ctx, &h)?);
        let ok = (0..model.points()).all(|x| th[x] == tg[tf[x]]);
        report.record(&maps[i], &maps[j], ok);
    }
    Ok(report)
}

/// Every coherent triple of partial isomorphisms of the space.
pub fn verify_coherence(ctx: &WitnessContext) -> Result<CoherenceReport> {
    let a = ctx.space();
    let maps = all_partial_isomorphisms(a, a.order())?;
    check_coherence(ctx, &maps, &coherent_pairs(&maps))
}

/// `samples` coherent triples drawn uniformly from all of them.
pub fn verify_coherence_sampled(
    ctx: &WitnessContext,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CoherenceReport> {
    let a = ctx.space();
    let maps = all_partial_isomorphisms(a, a.order())?;
    let pairs = coherent_pairs(&maps);
    let chosen: Vec<(usize, usize)> = pairs.choose_multiple(rng, samples).copied().collect();
    check_coherence(ctx, &maps, &chosen)
}

/// All antipodal spaces of the given size, every coherent triple.
pub fn run_verify_coherence(points: usize) -> Result<CoherenceReport> {
    let mut report = CoherenceReport::default();
    for a in enumerate_antipodal_spaces(points)? {
        report.absorb(verify_coherence(&build_witness(&a)?)?);
    }
    Ok(report)
}

/// Counts coherent triples of partial automorphisms of `t` whose extensions
/// to `T(H)` do not compose. Nothing is asserted about the count.
pub fn measure_two_graph_coherence(t: &TwoGraph) -> Result<CoherenceReport> {
    let cert = two_graph_eppa_witness(t)?;
    let maps = all_partial_isomorphisms(t, t.order())?;
    let mut perms = Vec::with_capacity(maps.len());
    for m in &maps {
        perms.push(two_graph_extension(&cert, m)?);
    }
    let mut report = CoherenceReport {
        structures: 1,
        ..Default::default()
    };
    for (i, j) in coherent_pairs(&maps) {
        let h = maps[i].then(&maps[j]);
        let th = two_graph_extension(&cert, &h)?;
        let ok = (0..th.len()).all(|x| th[x] == perms[j][perms[i][x]]);
        report.record(&maps[i], &maps[j], ok);
    }
    Ok(report)
}

pub fn run_two_graph_coherence(size: usize) -> Result<CoherenceReport> {
    let mut report = CoherenceReport::default();
    for t in enumerate_two_graphs(size)? {
        report.absorb(measure_two_graph_coherence(&t)?);
    }
    Ok(report)
}
