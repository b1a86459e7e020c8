use std::fmt::Write as _;
use std::path::Path;

use eppa_core::format::{
    graph_to_text, map_to_text, parse_antipodal, parse_graph, parse_map, parse_two_graph,
    two_graph_to_text, FormatError, MapFile, Structure,
};
use eppa_core::manifest::{Certificate, Manifest, ManifestKind};
use eppa_core::oracle::check::{preserves_labels, random_partial_isomorphism};
use eppa_core::oracle::verify::{
    verify_antipodal_eppa, verify_coherence_sampled, verify_pode_preservation,
};
use eppa_core::oracle::{
    enumerate_antipodal_spaces, run_two_graph_coherence, run_verify_coherence, run_verify_eppa,
    CoherenceReport, Enumerated, EnumerationCursor, VerificationReport,
};
use eppa_core::{
    apa_counterexample_report, associated_two_graph, build_witness, double_cover,
    extend_automorphism, extend_plain_iso, extend_switching_iso, extend_two_graph_partial,
    find_switch_set, graph_of_two_graph, lift_two_graph_isomorphism, pode_graph, seidel_switch,
    two_graph_of_antipodal, AntipodalSpace, Error, PodeLabelling, SwitchSet, SwitchingPartialMap,
    Valuation, WitnessAutomorphism, WitnessContext, WitnessVertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Cli, Command, Global, OracleCommand, WitnessCommand};

/// What a command produced: text for humans, JSON for machines, and
/// whether its check passed.
#[derive(Debug, Clone)]
pub struct Reply {
    pub text: String,
    pub json: Value,
    pub ok: bool,
    /// Extra line for standard error.
    pub note: Option<String>,
}

impl Reply {
    fn ok(text: String, json: Value) -> Self {
        Reply {
            text,
            json,
            ok: true,
            note: None,
        }
    }

    fn judged(text: String, json: Value, ok: bool) -> Self {
        Reply {
            text,
            json,
            ok,
            note: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input; exit 2.
    Input(String),
    /// A library error caused by the input; exit 2.
    Core(Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        2
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CmdResult = Result<Reply, CliError>;

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn read(path: &Path) -> Result<String, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<eppa_core::Graph, CliError> {
    parsed(path, parse_graph(&read(path)?))
}

fn load_two_graph(path: &Path) -> Result<eppa_core::TwoGraph, CliError> {
    parsed(path, parse_two_graph(&read(path)?))
}

fn load_space(path: &Path) -> Result<AntipodalSpace, CliError> {
    parsed(path, parse_antipodal(&read(path)?))
}

fn load_map(path: &Path) -> Result<MapFile, CliError> {
    parsed(path, parse_map(&read(path)?))
}

fn write_or_print(
    output: Option<&Path>,
    text: String,
) -> Result<(String, Option<String>), CliError> {
    match output {
        None => Ok((text, None)),
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok((String::new(), Some(format!("wrote {}", path.display()))))
        }
    }
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `label a b c` on one line, or just `label` for an empty list.
fn labeled<T: ToString>(label: &str, xs: impl IntoIterator<Item = T>) -> String {
    let rest = joined(xs);
    if rest.is_empty() {
        format!("{label}\n")
    } else {
        format!("{label} {rest}\n")
    }
}

pub fn dispatch(cli: &Cli, command_line: &str) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Switch { graph, vertices } => {
            let h = seidel_switch(
                &load_graph(graph)?,
                &SwitchSet::new(vertices.iter().copied()),
            )?;
            Ok(Reply::ok(
                graph_to_text(&h),
                json!({ "graph": to_json(&h) }),
            ))
        }
        Command::TwoGraphOf { graph } => {
            let t = associated_two_graph(&load_graph(graph)?);
            Ok(Reply::ok(
                two_graph_to_text(&t),
                json!({ "two_graph": to_json(&t) }),
            ))
        }
        Command::FindSwitch {
            source,
            target,
            map,
        } => {
            let (gs, gt) = (load_graph(source)?, load_graph(target)?);
            let f = load_map(map)?.map;
            match find_switch_set(&gs, &gt, &f)? {
                Some(s) => Ok(Reply::ok(
                    labeled("switch", s.iter()),
                    json!({ "switch_set": to_json(&s) }),
                )),
                None => Ok(Reply::judged(
                    "no switch set makes the map a switching isomorphism\n".into(),
                    json!({ "switch_set": null }),
                    false,
                )),
            }
        }
        Command::DoubleCover { graph } => {
            let (a, p) = double_cover(&load_graph(graph)?);
            let text = Structure::Antipodal(a.clone()).to_text() + &labeled("# pode", p.values());
            Ok(Reply::ok(
                text,
                json!({ "space": to_json(&a), "pode": p.values() }),
            ))
        }
        Command::PodeGraph { space, pode } => {
            let a = load_space(space)?;
            let p = match pode {
                Some(values) => PodeLabelling::new(&a, values.clone())?,
                None => PodeLabelling::canonical(&a),
            };
            let pg = pode_graph(&a, &p)?;
            let text = graph_to_text(&pg.graph) + &labeled("# points", &pg.vertices);
            Ok(Reply::ok(
                text,
                json!({ "graph": to_json(&pg.graph), "points": pg.vertices, "pode": p.values() }),
            ))
        }
        Command::TwoGraphOfAntipodal { space } => {
            let a = load_space(space)?;
            let t = two_graph_of_antipodal(&a);
            let matching = a.matching_edges();
            let text = two_graph_to_text(&t)
                + &labeled(
                    "# matching",
                    matching.iter().map(|(x, y)| format!("{x}-{y}")),
                );
            Ok(Reply::ok(
                text,
                json!({ "two_graph": to_json(&t), "matching": matching }),
            ))
        }
        Command::GraphOfTwoGraph { two_graph, base } => {
            let h = graph_of_two_graph(&load_two_graph(two_graph)?, *base)?;
            Ok(Reply::ok(
                graph_to_text(&h),
                json!({ "graph": to_json(&h), "base": base }),
            ))
        }
        Command::Lift {
            source,
            target,
            map,
        } => {
            let (a1, a2) = (load_space(source)?, load_space(target)?);
            let beta = load_map(map)?.map;
            match lift_two_graph_isomorphism(&a1, &a2, &beta) {
                Ok(alpha) => Ok(Reply::ok(
                    map_to_text(&alpha, None),
                    json!({ "map": to_json(&alpha) }),
                )),
                Err(Error::Unliftable { cycle }) => Ok(Reply::judged(
                    format!(
                        "unliftable: contradictory parities around matching edges {}\n",
                        joined(&cycle)
                    ),
                    json!({ "map": null, "cycle": cycle }),
                    false,
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Witness(w) => witness(g, w, command_line),
        Command::Graph { graph, output } => certify(
            g,
            ManifestKind::Graph,
            graph,
            output.as_deref(),
            command_line,
        ),
        Command::TwoGraph { two_graph, output } => certify(
            g,
            ManifestKind::TwoGraph,
            two_graph,
            output.as_deref(),
            command_line,
        ),
        Command::Extend { cert, map, switch } => extend(g, cert, map, switch.as_deref()),
        Command::ApaDemo => Ok(apa_demo()),
        Command::Oracle(o) => oracle(g, o),
    }
}

fn parse_structure_for(kind: ManifestKind, path: &Path, text: &str) -> Result<Structure, CliError> {
    let s = match kind {
        ManifestKind::Witness => parse_antipodal(text).map(Structure::Antipodal),
        ManifestKind::Graph => parse_graph(text).map(Structure::Graph),
        ManifestKind::TwoGraph => parse_two_graph(text).map(Structure::TwoGraph),
    };
    parsed(path, s)
}

fn certify(
    g: &Global,
    kind: ManifestKind,
    path: &Path,
    output: Option<&Path>,
    command_line: &str,
) -> CmdResult {
    let input = read(path)?;
    let source = parse_structure_for(kind, path, &input)?;
    let (manifest, cert) = Manifest::build(
        kind,
        source,
        command_line,
        input.as_bytes(),
        g.materialize_limit,
    )?;
    let mut json = json!({ "manifest": to_json(&manifest) });
    match &cert {
        Certificate::Graph(c) => {
            json["witness_graph"] = to_json(&c.witness);
            json["embedding"] = to_json(&c.embedding);
        }
        Certificate::TwoGraph(c) => {
            json["base"] = to_json(&c.base);
            json["witness_order"] = to_json(&c.witness_order());
            json["embedding"] = to_json(c.embedding());
        }
        Certificate::Witness(_) => {}
    }
    let (text, note) = write_or_print(output, manifest.to_text())?;
    if let Some(path) = output {
        json["written"] = json!(path.display().to_string());
    }
    Ok(Reply {
        note,
        ..Reply::ok(text, json)
    })
}

fn automorphism_reply(
    g: &Global,
    ctx: &WitnessContext,
    theta: &WitnessAutomorphism,
    with_permutation: bool,
) -> CmdResult {
    let flips = theta.flips.pairs();
    let mut text = labeled("edges", &theta.perm);
    text += &labeled("flips", flips.iter().map(|(e, f)| format!("{e}-{f}")));
    let mut json = json!({ "edges": theta.perm, "flips": flips });
    if with_permutation {
        let perm = theta.index_permutation(ctx, g.materialize_limit)?;
        text += &labeled("permutation", &perm);
        json["permutation"] = to_json(&perm);
    }
    Ok(Reply::ok(text, json))
}

fn witness(g: &Global, w: &WitnessCommand, command_line: &str) -> CmdResult {
    match w {
        WitnessCommand::Build { space, output } => certify(
            g,
            ManifestKind::Witness,
            space,
            output.as_deref(),
            command_line,
        ),
        WitnessCommand::Distance { space, u, v } => {
            let ctx = build_witness(&load_space(space)?)?;
            let u: WitnessVertex = u.parse()?;
            let v: WitnessVertex = v.parse()?;
            let d = ctx.distance(&u, &v)?;
            Ok(Reply::ok(
                format!("{d}\n"),
                json!({ "u": u, "v": v, "distance": d }),
            ))
        }
        WitnessCommand::Extend {
            space,
            map,
            permutation,
        } => {
            let ctx = build_witness(&load_space(space)?)?;
            let theta = extend_automorphism(&ctx, &load_map(map)?.map)?;
            automorphism_reply(g, &ctx, &theta, *permutation)
        }
        WitnessCommand::Verify {
            space,
            exhaustive,
            samples,
        } => {
            let a = load_space(space)?;
            if *exhaustive {
                verify_exhaustive(g, &a)
            } else {
                verify_sampled(g, &a, *samples)
            }
        }
    }
}

fn report_text(r: &VerificationReport, label: &str) -> String {
    let mut s = format!(
        "{label}: {} structures, {} maps, {} failures\n",
        r.structures,
        r.maps_checked,
        r.failures.len()
    );
    for f in r.failures.iter().take(10) {
        let _ = writeln!(s, "  {:?}: {}", f.map, f.reason);
    }
    s
}

/// Whether the witness is small enough to build and, if so, whether it came
/// out with the right size.
fn materialized_check(g: &Global, ctx: &WitnessContext) -> Result<Option<bool>, CliError> {
    if ctx.edge_count() > g.materialize_limit {
        return Ok(None);
    }
    let b = ctx.materialize(g.materialize_limit)?;
    Ok(Some(b.order() as u128 == ctx.witness_order()))
}

fn verify_exhaustive(g: &Global, a: &AntipodalSpace) -> CmdResult {
    let ctx = build_witness(a)?;
    let materialized = materialized_check(g, &ctx)?;
    let eppa = verify_antipodal_eppa(a, false)?;
    let pode = verify_pode_preservation(a)?;
    let ok = eppa.passed() && pode.passed() && materialized != Some(false);
    let mut text = format!(
        "witness order {} ({} matching edges)\n",
        ctx.witness_order(),
        ctx.edge_count()
    );
    text += &report_text(&eppa, "extension");
    text += &report_text(&pode, "pode preservation");
    Ok(Reply::judged(
        text,
        json!({
            "mode": "exhaustive",
            "witness_order": ctx.witness_order().to_string(),
            "materialized": materialized,
            "extension": to_json(&eppa),
            "pode": to_json(&pode),
        }),
        ok,
    ))
}

/// Random partial isomorphisms; each extension is checked on the copy of
/// its domain and on random pairs of witness points, lazily.
fn verify_sampled(g: &Global, a: &AntipodalSpace, samples: usize) -> CmdResult {
    const PAIRS_PER_MAP: usize = 64;
    let ctx = build_witness(a)?;
    let materialized = materialized_check(g, &ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let n = ctx.edge_count();
    let random_point = |rng: &mut ChaCha8Rng| {
        let bits = rng.gen::<u64>() & ((1u64 << n) - 1);
        WitnessVertex::new(
            rng.gen_range(0..n),
            Valuation::from_bits(bits, n).expect("in range"),
        )
    };
    let mut failures: Vec<String> = Vec::new();
    let mut pairs_checked = 0usize;
    for _ in 0..if a.order() == 0 { 0 } else { samples } {
        let size = rng.gen_range(0..=a.order());
        let phi = random_partial_isomorphism(a, size, &mut rng);
        let theta = extend_automorphism(&ctx, &phi)?;
        for (v, w) in phi.pairs() {
            if theta.apply(&ctx.psi(v))? != ctx.psi(w) {
                failures.push(format!("{phi:?}: copy of {v} not sent to copy of {w}"));
            }
        }
        let label_preserving = preserves_labels(ctx.pode().values(), &phi);
        for _ in 0..PAIRS_PER_MAP {
            let (x, y) = (random_point(&mut rng), random_point(&mut rng));
            let (tx, ty) = (theta.apply(&x)?, theta.apply(&y)?);
            pairs_checked += 1;
            if x == y {
                if tx != ty {
                    failures.push(format!("{phi:?}: {x} sent to two points"));
                }
            } else if tx == ty || ctx.distance(&x, &y)? != ctx.distance(&tx, &ty)? {
                failures.push(format!("{phi:?}: distance of {x}, {y} not preserved"));
            }
            if label_preserving && ctx.pode_value(&x) != ctx.pode_value(&tx) {
                failures.push(format!("{phi:?}: pode of {x} not preserved"));
            }
        }
    }
    let ok = failures.is_empty() && materialized != Some(false);
    let mut text = format!(
        "witness order {} ({} matching edges)\nsampled {} maps, {} point pairs, {} failures\n",
        ctx.witness_order(),
        n,
        if a.order() == 0 { 0 } else { samples },
        pairs_checked,
        failures.len()
    );
    for f in failures.iter().take(10) {
        let _ = writeln!(text, "  {f}");
    }
    Ok(Reply::judged(
        text,
        json!({
            "mode": "sampled",
            "seed": g.seed,
            "witness_order": ctx.witness_order().to_string(),
            "materialized": materialized,
            "maps_checked": if a.order() == 0 { 0 } else { samples },
            "pairs_checked": pairs_checked,
            "failures": failures,
        }),
        ok,
    ))
}

fn extend(g: &Global, cert: &Path, map: &Path, switch: Option<&[usize]>) -> CmdResult {
    let manifest = parsed(cert, Manifest::parse(&read(cert)?))?;
    let certificate = manifest.certificate(g.materialize_limit)?;
    let file = load_map(map)?;
    let switch = switch
        .map(|vs| SwitchSet::new(vs.iter().copied()))
        .or(file.switch.clone());
    match &certificate {
        Certificate::Witness(ctx) => {
            if switch.is_some() {
                return Err(CliError::Input(
                    "witness certificates take no switch set".into(),
                ));
            }
            let theta = extend_automorphism(ctx, &file.map)?;
            automorphism_reply(g, ctx, &theta, false)
        }
        Certificate::Graph(c) => match switch {
            Some(s) => {
                let phi = SwitchingPartialMap::new(file.map, s)?;
                let ext = extend_switching_iso(c, &phi)?;
                Ok(Reply::ok(
                    map_to_text(&ext.map, Some(&ext.switch_set)),
                    json!({ "map": to_json(&ext.map), "switch_set": to_json(&ext.switch_set) }),
                ))
            }
            None => {
                let ext = extend_plain_iso(c, &file.map)?;
                Ok(Reply::ok(
                    map_to_text(&ext, None),
                    json!({ "map": to_json(&ext) }),
                ))
            }
        },
        Certificate::TwoGraph(c) => {
            if switch.is_some() {
                return Err(CliError::Input(
                    "two-graph certificates choose their own switch set".into(),
                ));
            }
            let ext = extend_two_graph_partial(c, &file.map)?;
            let text = map_to_text(&ext.map, None)
                + &labeled("# source switch", ext.source_switch_set.iter())
                + &labeled("# witness switch", ext.witness_switch_set.iter());
            Ok(Reply::ok(text, to_json(&ext)))
        }
    }
}

fn triples_text(ts: &[[usize; 3]], labels: &[&str; 4]) -> String {
    if ts.is_empty() {
        return "none".into();
    }
    joined(
        ts.iter()
            .map(|t| format!("{{{},{},{}}}", labels[t[0]], labels[t[1]], labels[t[2]])),
    )
}

fn apa_demo() -> Reply {
    let r = apa_counterexample_report();
    let l = &r.labels;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "B1 on {{{},{},{}}}: triples {}",
        l[0],
        l[1],
        l[2],
        triples_text(&r.b1_triples, l)
    );
    let _ = writeln!(
        text,
        "B2 on {{{},{},{}}}: triples {}",
        l[0],
        l[1],
        l[3],
        triples_text(&r.b2_triples, l)
    );
    let _ = writeln!(
        text,
        "both maps swap {} and {}; together they force {}",
        l[0],
        l[1],
        joined(
            r.automorphism
                .iter()
                .enumerate()
                .map(|(i, &j)| format!("{}->{}", l[i], l[j]))
        )
    );
    for c in &r.candidates {
        let status = match (c.is_two_graph, c.extends_both) {
            (false, _) => "not a two-graph".to_string(),
            (true, false) => "two-graph, wrong restrictions".to_string(),
            (true, true) => format!(
                "amalgam; {}",
                c.failure.as_deref().unwrap_or("swap extends")
            ),
        };
        let _ = writeln!(text, "  {:<40} {status}", triples_text(&c.triples, l));
    }
    let _ = writeln!(text, "amalgams: {}", r.amalgam_count);
    let _ = writeln!(
        text,
        "amalgam exists: {}; every amalgam blocks the swap: {}",
        r.amalgam_exists, r.apa_refuted
    );
    let ok = r.amalgam_exists && r.apa_refuted;
    Reply::judged(text, to_json(&r), ok)
}

fn coherence_text(r: &CoherenceReport, label: &str) -> String {
    let mut s = format!(
        "{label}: {} structures, {} coherent pairs, {} violations\n",
        r.structures, r.triples_checked, r.violations
    );
    for (f, g) in &r.examples {
        let _ = writeln!(s, "  f = {f:?}, g = {g:?}");
    }
    s
}

fn oracle(g: &Global, o: &OracleCommand) -> CmdResult {
    match o {
        OracleCommand::Enumerate { kind, size, count } => {
            let cursor = EnumerationCursor::new(*kind, *size)?;
            let mut text = String::new();
            let mut items = Vec::new();
            let mut total = 0usize;
            for s in cursor {
                total += 1;
                if *count {
                    continue;
                }
                let s = match s {
                    Enumerated::Graph(x) => Structure::Graph(x),
                    Enumerated::TwoGraph(x) => Structure::TwoGraph(x),
                    Enumerated::Antipodal(x) => Structure::Antipodal(x),
                };
                if g.json {
                    items.push(to_json(&s));
                } else {
                    text += &s.to_text();
                    text.push('\n');
                }
            }
            let _ = writeln!(text, "# {total} structures");
            let mut json = json!({ "kind": kind, "size": size, "count": total });
            if !*count {
                json["structures"] = Value::Array(items);
            }
            Ok(Reply::ok(text, json))
        }
        OracleCommand::VerifyEppa { kind, size } => {
            let r = run_verify_eppa(*kind, *size)?;
            let text = report_text(&r, &format!("verify-eppa {kind} {size}"));
            let ok = r.passed();
            Ok(Reply::judged(text, to_json(&r), ok))
        }
        OracleCommand::VerifyCoherence {
            size,
            samples,
            two_graph,
        } => {
            if *two_graph {
                let r = run_two_graph_coherence(*size)?;
                let text = coherence_text(&r, &format!("two-graph coherence {size} (measured)"));
                let mut json = to_json(&r);
                json["measured_only"] = json!(true);
                return Ok(Reply::ok(text, json));
            }
            let r = match samples {
                None => run_verify_coherence(*size)?,
                Some(k) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    let mut r = CoherenceReport::default();
                    for a in enumerate_antipodal_spaces(*size)? {
                        r.absorb(verify_coherence_sampled(&build_witness(&a)?, *k, &mut rng)?);
                    }
                    r
                }
            };
            let text = coherence_text(&r, &format!("coherence {size}"));
            let ok = r.passed();
            Ok(Reply::judged(text, to_json(&r), ok))
        }
    }
}
