use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn eppa(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eppa").chain(args.iter().copied());
    let code = eppa_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn eppa_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = eppa(&full);
    let value =
        serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{err}"));
    (code, value)
}

#[test]
fn apa_demo_succeeds() {
    let (code, out, _) = eppa(&["apa-demo"]);
    assert_eq!(code, 0);
    assert!(out.contains("amalgams: 2"));
    let (code, json) = eppa_json(&["apa-demo"]);
    assert_eq!(code, 0);
    assert_eq!(json["amalgam_count"], 2);
    assert_eq!(json["apa_refuted"], true);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = eppa(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    let (code, _, _) = eppa(&["oracle", "verify-eppa", "cube", "4"]);
    assert_eq!(code, 2);
    let (code, _, _) = eppa(&[
        "witness",
        "verify",
        &data("quadruple.txt"),
        "--exhaustive",
        "--samples",
        "3",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn help_documents_every_subcommand() {
    let (code, out, _) = eppa(&["--help"]);
    assert_eq!(code, 0);
    for sub in [
        "switch",
        "two-graph-of",
        "find-switch",
        "double-cover",
        "pode-graph",
        "two-graph-of-antipodal",
        "graph-of-two-graph",
        "lift",
        "witness",
        "graph",
        "two-graph",
        "extend",
        "apa-demo",
        "oracle",
    ] {
        assert!(out.contains(sub), "{sub}");
        let (code, help, _) = eppa(&[sub, "--help"]);
        assert_eq!(code, 0, "{sub}");
        assert!(help.contains("Usage"), "{sub}");
    }
}

#[test]
fn odd_point_space_is_rejected_at_parse_time() {
    let (code, out, err) = eppa(&["witness", "build", &data("odd.txt")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("invalid antipodal space"), "{err}");
}

#[test]
fn invalid_two_graph_is_explained() {
    let (code, _, err) = eppa(&["two-graph", &data("bad_twograph.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("odd quadruple"), "{err}");
}

#[test]
fn syntax_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "graph 3\n0 x\n").unwrap();
    let (code, _, err) = eppa(&["two-graph-of", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 3"), "{err}");
    let (code, _, err) = eppa(&["two-graph-of", &data("missing.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.txt"));
}

#[test]
fn oracle_commands() {
    assert_eq!(eppa(&["oracle", "verify-eppa", "antipodal", "4"]).0, 0);
    assert_eq!(eppa(&["oracle", "verify-eppa", "switching", "3"]).0, 0);
    assert_eq!(eppa(&["oracle", "verify-coherence", "4"]).0, 0);
    let (code, json) = eppa_json(&["oracle", "enumerate", "two-graph", "4", "--count"]);
    assert_eq!(code, 0);
    assert_eq!(json["count"], 8);
    // capped sizes are input errors
    assert_eq!(eppa(&["oracle", "enumerate", "graph", "9"]).0, 2);
}

#[test]
fn two_graph_coherence_is_reported_not_judged() {
    let (code, json) = eppa_json(&["oracle", "verify-coherence", "4", "--two-graph"]);
    assert_eq!(code, 0);
    assert_eq!(json["measured_only"], true);
    assert!(json["violations"].is_u64());
}

#[test]
fn negative_answers_exit_1() {
    let (code, out, _) = eppa(&[
        "find-switch",
        &data("path3.txt"),
        &data("edge01.txt"),
        &data("rev3.txt"),
    ]);
    assert_eq!(code, 1, "{out}");
    let dir = tempfile::tempdir().unwrap();
    let path3_cover = dir.path().join("c.txt");
    let edge_cover = dir.path().join("d.txt");
    std::fs::write(&path3_cover, eppa(&["double-cover", &data("path3.txt")]).1).unwrap();
    std::fs::write(&edge_cover, eppa(&["double-cover", &data("edge01.txt")]).1).unwrap();
    let (code, json) = eppa_json(&[
        "lift",
        path3_cover.to_str().unwrap(),
        edge_cover.to_str().unwrap(),
        &data("rev3.txt"),
    ]);
    assert_eq!(code, 1);
    assert!(json["cycle"].is_array());
}

#[test]
fn certificates_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("g.cert");
    let (code, _, err) = eppa(&["graph", &data("path3.txt"), "-o", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(err.contains("wrote"));
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("eppa-cert v1\n"));
    assert!(text.contains("\ncommand eppa graph "));

    let (code, json) = eppa_json(&[
        "extend",
        "--cert",
        cert.to_str().unwrap(),
        "--map",
        &data("swap01.txt"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["map"]["dom"].as_array().unwrap().len(), 12);

    let (code, json) = eppa_json(&[
        "extend",
        "--cert",
        cert.to_str().unwrap(),
        "--map",
        &data("swap02.txt"),
        "--switch",
        "0",
    ]);
    assert_eq!(code, 0);
    assert!(!json["switch_set"].as_array().unwrap().is_empty());

    // a map that is not a partial isomorphism of the source
    let (code, _, err) = eppa(&[
        "extend",
        "--cert",
        cert.to_str().unwrap(),
        "--map",
        &data("breaks_edge.txt"),
    ]);
    assert_eq!(code, 2, "{err}");

    // tampered tables are caught on load
    let tampered = dir.path().join("bad.cert");
    std::fs::write(&tampered, text.replace("\n1 0:111\n", "\n1 0:110\n")).unwrap();
    let (code, _, err) = eppa(&[
        "extend",
        "--cert",
        tampered.to_str().unwrap(),
        "--map",
        &data("swap01.txt"),
    ]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn two_graph_and_witness_certificates_extend() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.cert");
    assert_eq!(
        eppa(&[
            "two-graph",
            &data("two_triples.txt"),
            "-o",
            t.to_str().unwrap()
        ])
        .0,
        0
    );
    let (code, json) = eppa_json(&[
        "extend",
        "--cert",
        t.to_str().unwrap(),
        "--map",
        &data("swap01.txt"),
    ]);
    assert_eq!(code, 0);
    assert!(json["source_switch_set"].is_array());
    let w = dir.path().join("w.cert");
    assert_eq!(
        eppa(&[
            "witness",
            "build",
            &data("quadruple.txt"),
            "-o",
            w.to_str().unwrap()
        ])
        .0,
        0
    );
    let (code, json) = eppa_json(&[
        "extend",
        "--cert",
        w.to_str().unwrap(),
        "--map",
        &data("swap02.txt"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json["edges"], serde_json::json!([1, 0]));
}

#[test]
fn materialize_limit_is_enforced() {
    let (code, _, err) = eppa(&["--materialize-limit", "2", "graph", &data("path3.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("capacity"), "{err}");
    let (code, _, _) = eppa(&[
        "--materialize-limit",
        "1",
        "witness",
        "extend",
        &data("quadruple.txt"),
        &data("swap02.txt"),
        "--permutation",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn environment_overrides_the_limit() {
    let bin = env!("CARGO_BIN_EXE_eppa");
    let status = Command::new(bin)
        .args(["graph", &data("path3.txt")])
        .env("EPPA_MATERIALIZE_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin)
        .args(["graph", &data("path3.txt")])
        .env("EPPA_MATERIALIZE_LIMIT", "3")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}

#[test]
fn sampled_verification_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("c.txt");
    std::fs::write(&cover, eppa(&["double-cover", &data("path3.txt")]).1).unwrap();
    let args = [
        "witness",
        "verify",
        cover.to_str().unwrap(),
        "--samples",
        "30",
    ];
    let first = eppa(&args);
    assert_eq!(first.0, 0, "{}", first.1);
    assert_eq!(first, eppa(&args));
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "0"]);
    assert_eq!(first, eppa(&seeded));
    assert_eq!(
        eppa(&["witness", "verify", cover.to_str().unwrap(), "--exhaustive"]).0,
        0
    );
}

#[test]
fn every_command_speaks_json() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("g.cert");
    let cover = dir.path().join("c.txt");
    std::fs::write(&cover, eppa(&["double-cover", &data("path3.txt")]).1).unwrap();
    let (q, p, e) = (data("quadruple.txt"), data("path3.txt"), data("edge01.txt"));
    let (s01, tt, r3) = (
        data("swap01.txt"),
        data("two_triples.txt"),
        data("rev3.txt"),
    );
    let c = cover.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["switch", &p, "0"],
        vec!["two-graph-of", &p],
        vec!["find-switch", &p, &e, &s01],
        vec!["double-cover", &p],
        vec!["pode-graph", &q],
        vec!["pode-graph", &q, "--pode", "1,0,0,1"],
        vec!["two-graph-of-antipodal", &q],
        vec!["graph-of-two-graph", &tt, "--base", "2"],
        vec!["lift", c, c, &r3],
        vec!["witness", "build", &q],
        vec!["witness", "distance", &q, "0:00", "1:10"],
        vec!["witness", "extend", &q, &s01],
        vec!["witness", "verify", &q, "--samples", "5"],
        vec!["graph", &p, "-o", cert.to_str().unwrap()],
        vec!["two-graph", &tt],
        vec!["extend", "--cert", cert.to_str().unwrap(), "--map", &s01],
        vec!["apa-demo"],
        vec!["oracle", "enumerate", "antipodal", "4"],
        vec!["oracle", "verify-eppa", "graph", "3"],
        vec!["oracle", "verify-coherence", "4", "--samples", "5"],
    ];
    for args in runs {
        let (code, json) = eppa_json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert!(json.is_object(), "{args:?}");
    }
}

/// `--json` output compared against files in `tests/golden/`; set
/// `EPPA_FREEZE_GOLDEN=1` to rewrite them.
#[test]
fn json_outputs_match_golden_files() {
    let (q, p, s02) = (data("quadruple.txt"), data("path3.txt"), data("swap02.txt"));
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("apa_demo", vec!["apa-demo"]),
        (
            "enumerate_two_graph_3",
            vec!["oracle", "enumerate", "two-graph", "3"],
        ),
        (
            "verify_eppa_antipodal_4",
            vec!["oracle", "verify-eppa", "antipodal", "4"],
        ),
        (
            "witness_extend_quadruple",
            vec!["witness", "extend", &q, &s02, "--permutation"],
        ),
        ("double_cover_path3", vec!["double-cover", &p]),
        (
            "two_graph_coherence_3",
            vec!["oracle", "verify-coherence", "3", "--two-graph"],
        ),
    ];
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let freeze = std::env::var_os("EPPA_FREEZE_GOLDEN").is_some();
    for (name, args) in cases {
        let (code, json) = eppa_json(&args);
        assert_eq!(code, 0, "{name}");
        let text = serde_json::to_string_pretty(&json).unwrap() + "\n";
        let path = dir.join(format!("{name}.json"));
        if freeze {
            std::fs::write(&path, &text).unwrap();
        } else {
            let expected = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(text, expected, "{name}");
        }
    }
}
