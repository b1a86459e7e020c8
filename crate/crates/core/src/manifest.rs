//! Self-describing certificate files.
//!
//! A manifest records the source structure and the tables of the witness
//! built from it (matching order, generic copy `ψ`, pode labelling). Loading
//! a manifest recomputes the witness from the source and checks every table
//! against the recomputation, so a manifest can never smuggle in a witness
//! that was not produced by this code.
//!
//! ```text
//! eppa-cert v1
//! kind graph
//! command eppa graph path.txt
//! input-sha256 <64 hex digits>
//! begin source
//! graph 2
//! 0 1
//! end source
//! matching 2
//! 0 1
//! 2 3
//! psi 4
//! 0 0:00
//! ...
//! pode 0 1 0 1
//! pode-rule chi(e)
//! witness-order 8
//! ```

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::antipodal::PodeLabelling;
use crate::error::Error;
use crate::format::{parse_structure, FormatError, FormatResult, ParseError, Structure};
use crate::pipelines::{
    switching_eppa_witness_with_limit, two_graph_eppa_witness_with_limit, SwitchingEppaCertificate,
    TwoGraphEppaCertificate,
};
use crate::structures::Vertex;
use crate::witness::{WitnessContext, WitnessVertex};

pub const MANIFEST_HEADER: &str = "eppa-cert v1";
pub const PODE_RULE: &str = "chi(e)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManifestKind {
    /// Witness `B` of an antipodal space.
    Witness,
    /// Switching witness `H` of a graph.
    Graph,
    /// Witness `T(H)` of a two-graph.
    TwoGraph,
}

impl ManifestKind {
    fn as_str(&self) -> &'static str {
        match self {
            ManifestKind::Witness => "witness",
            ManifestKind::Graph => "graph",
            ManifestKind::TwoGraph => "two-graph",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "witness" => Some(ManifestKind::Witness),
            "graph" => Some(ManifestKind::Graph),
            "two-graph" => Some(ManifestKind::TwoGraph),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub kind: ManifestKind,
    pub command: String,
    pub input_sha256: String,
    pub source: Structure,
    /// Base vertex for two-graph certificates.
    pub base: Option<Vertex>,
    /// `(x_i, y_i)` per matching edge, in the points of the antipodal space.
    pub matching: Vec<(Vertex, Vertex)>,
    pub psi: Vec<WitnessVertex>,
    pub pode: Vec<u8>,
    /// `n · 2ⁿ` as a decimal string (may exceed 64 bits).
    pub witness_order: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Matching, `ψ`, pode and witness order as recorded in a manifest.
type Tables = (Vec<(Vertex, Vertex)>, Vec<WitnessVertex>, Vec<u8>, String);

fn tables(ctx: &WitnessContext) -> Tables {
    (
        ctx.matching().to_vec(),
        ctx.psi_table().to_vec(),
        ctx.pode().values().to_vec(),
        ctx.witness_order().to_string(),
    )
}

/// The certificate a manifest stands for, rebuilt from its source.
#[derive(Debug, Clone)]
pub enum Certificate {
    Witness(WitnessContext),
    Graph(SwitchingEppaCertificate),
    TwoGraph(TwoGraphEppaCertificate),
}

impl Certificate {
    pub fn context(&self) -> &WitnessContext {
        match self {
            Certificate::Witness(ctx) => ctx,
            Certificate::Graph(c) => &c.context,
            Certificate::TwoGraph(c) => &c.switching.context,
        }
    }
}

impl Manifest {
    /// Builds the certificate for `source` and records its tables.
    /// `input` is the raw text the source was read from.
    pub fn build(
        kind: ManifestKind,
        source: Structure,
        command: &str,
        input: &[u8],
        limit: usize,
    ) -> Result<(Manifest, Certificate), Error> {
        let cert = build_certificate(kind, &source, limit)?;
        let (matching, psi, pode, witness_order) = tables(cert.context());
        let base = match &cert {
            Certificate::TwoGraph(c) => Some(c.base),
            _ => None,
        };
        let manifest = Manifest {
            kind,
            command: command.replace('\n', " "),
            input_sha256: sha256_hex(input),
            source,
            base,
            matching,
            psi,
            pode,
            witness_order,
        };
        Ok((manifest, cert))
    }

    /// Recomputes the certificate and checks it against the recorded tables.
    pub fn certificate(&self, limit: usize) -> Result<Certificate, Error> {
        let cert = build_certificate(self.kind, &self.source, limit)?;
        let (matching, psi, pode, order) = tables(cert.context());
        let base = match &cert {
            Certificate::TwoGraph(c) => Some(c.base),
            _ => None,
        };
        let mismatch = |what: &str| {
            Err(Error::MalformedMap(format!(
                "manifest {what} does not match the recomputed witness"
            )))
        };
        if matching != self.matching {
            return mismatch("matching table");
        }
        if psi != self.psi {
            return mismatch("psi table");
        }
        if pode != self.pode {
            return mismatch("pode table");
        }
        if order != self.witness_order {
            return mismatch("witness order");
        }
        if base != self.base {
            return mismatch("base vertex");
        }
        Ok(cert)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{MANIFEST_HEADER}").unwrap();
        writeln!(s, "kind {}", self.kind.as_str()).unwrap();
        writeln!(s, "command {}", self.command).unwrap();
        writeln!(s, "input-sha256 {}", self.input_sha256).unwrap();
        writeln!(s, "begin source").unwrap();
        s.push_str(&self.source.to_text());
        writeln!(s, "end source").unwrap();
        if let Some(b) = self.base {
            writeln!(s, "base {b}").unwrap();
        }
        writeln!(s, "matching {}", self.matching.len()).unwrap();
        for (x, y) in &self.matching {
            writeln!(s, "{x} {y}").unwrap();
        }
        writeln!(s, "psi {}", self.psi.len()).unwrap();
        for (v, w) in self.psi.iter().enumerate() {
            writeln!(s, "{v} {w}").unwrap();
        }
        let pode: Vec<String> = self.pode.iter().map(u8::to_string).collect();
        writeln!(s, "pode {}", pode.join(" ")).unwrap();
        writeln!(s, "pode-rule {PODE_RULE}").unwrap();
        writeln!(s, "witness-order {}", self.witness_order).unwrap();
        s
    }

    /// Parses the layout written by [`Manifest::to_text`]. Only syntax is
    /// checked; use [`Manifest::certificate`] to validate the tables.
    pub fn parse(text: &str) -> FormatResult<Manifest> {
        let mut lines = Lines::new(text);
        lines.exact(MANIFEST_HEADER)?;
        let kind_text = lines.field("kind")?;
        let kind = ManifestKind::parse(kind_text.1).ok_or_else(|| {
            lines.error_at(kind_text.0, format!("unknown kind '{}'", kind_text.1))
        })?;
        let command = lines.field("command")?.1.to_string();
        let (digest_line, digest) = lines.field("input-sha256")?;
        if digest.len() != 64 || !digest.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(lines
                .error_at(digest_line, "expected 64 hex digits".into())
                .into());
        }
        lines.exact("begin source")?;
        let start = lines.pos;
        while lines.peek().map(|l| l.1) != Some("end source") {
            if lines.next_line().is_none() {
                return Err(lines.eof("'end source'").into());
            }
        }
        let source_text: String = lines.lines[start..lines.pos]
            .iter()
            .map(|l| format!("{}\n", l.1))
            .collect();
        let source = parse_structure(&source_text).map_err(|e| match e {
            FormatError::Parse(p) => FormatError::Parse(ParseError {
                line: p.line + start,
                ..p
            }),
            other => other,
        })?;
        lines.exact("end source")?;
        let base = if lines.peek().is_some_and(|l| l.1.starts_with("base ")) {
            let (n, v) = lines.field("base")?;
            Some(lines.number(n, v)?)
        } else {
            None
        };
        let (n, count) = lines.field("matching")?;
        let count: usize = lines.number(n, count)?;
        let mut matching = Vec::with_capacity(count);
        for _ in 0..count {
            let (n, row) = lines
                .next_line()
                .ok_or_else(|| lines.eof("a matching edge"))?;
            let parts: Vec<&str> = row.split(' ').collect();
            if parts.len() != 2 {
                return Err(lines.error_at(n, "expected 'x y'".into()).into());
            }
            matching.push((lines.number(n, parts[0])?, lines.number(n, parts[1])?));
        }
        let (n, count) = lines.field("psi")?;
        let count: usize = lines.number(n, count)?;
        let mut psi = Vec::with_capacity(count);
        for v in 0..count {
            let (n, row) = lines.next_line().ok_or_else(|| lines.eof("a psi entry"))?;
            let (idx, w) = row
                .split_once(' ')
                .ok_or_else(|| lines.error_at(n, "expected 'v e:bits'".into()))?;
            if lines.number::<usize>(n, idx)? != v {
                return Err(lines
                    .error_at(n, format!("expected entry for point {v}"))
                    .into());
            }
            psi.push(
                w.parse()
                    .map_err(|e: Error| lines.error_at(n, e.to_string()))?,
            );
        }
        let (n, pode_text) = lines.field("pode")?;
        let mut pode = Vec::new();
        for tok in pode_text.split(' ').filter(|t| !t.is_empty()) {
            pode.push(lines.number(n, tok)?);
        }
        let (n, rule) = lines.field("pode-rule")?;
        if rule != PODE_RULE {
            return Err(lines
                .error_at(n, format!("unsupported pode rule '{rule}'"))
                .into());
        }
        let (n, order) = lines.field("witness-order")?;
        lines.number::<u128>(n, order)?;
        if let Some((n, l)) = lines.peek() {
            return Err(lines.error_at(n, format!("unexpected line '{l}'")).into());
        }
        Ok(Manifest {
            kind,
            command,
            input_sha256: digest.to_string(),
            source,
            base,
            matching,
            psi,
            pode,
            witness_order: order.to_string(),
        })
    }
}

fn build_certificate(
    kind: ManifestKind,
    source: &Structure,
    limit: usize,
) -> Result<Certificate, Error> {
    match (kind, source) {
        (ManifestKind::Witness, Structure::Antipodal(a)) => Ok(Certificate::Witness(
            WitnessContext::with_pode(a, &PodeLabelling::canonical(a))?,
        )),
        (ManifestKind::Graph, Structure::Graph(g)) => Ok(Certificate::Graph(
            switching_eppa_witness_with_limit(g, limit)?,
        )),
        (ManifestKind::TwoGraph, Structure::TwoGraph(t)) => Ok(Certificate::TwoGraph(
            two_graph_eppa_witness_with_limit(t, limit)?,
        )),
        (kind, s) => Err(Error::MalformedMap(format!(
            "a {} manifest cannot have a {} source",
            kind.as_str(),
            s.keyword()
        ))),
    }
}

/// Line cursor with 1-based line numbers.
struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            lines: text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek()?;
        self.pos += 1;
        Some(l)
    }

    fn error_at(&self, line: usize, reason: String) -> ParseError {
        ParseError {
            line,
            column: 1,
            reason,
        }
    }

    fn eof(&self, what: &str) -> ParseError {
        ParseError {
            line: self.lines.len() + 1,
            column: 1,
            reason: format!("unexpected end of manifest, expected {what}"),
        }
    }

    fn exact(&mut self, expected: &str) -> Result<(), ParseError> {
        let (n, l) = self
            .next_line()
            .ok_or_else(|| self.eof(&format!("'{expected}'")))?;
        if l != expected {
            return Err(self.error_at(n, format!("expected '{expected}', found '{l}'")));
        }
        Ok(())
    }

    /// A line `name value`, returning the value.
    fn field(&mut self, name: &str) -> Result<(usize, &'a str), ParseError> {
        let (n, l) = self
            .next_line()
            .ok_or_else(|| self.eof(&format!("'{name}'")))?;
        match l.split_once(' ') {
            Some((key, value)) if key == name => Ok((n, value)),
            _ if l == name => Ok((n, "")),
            _ => Err(self.error_at(n, format!("expected '{name} ...', found '{l}'"))),
        }
    }

    fn number<T: std::str::FromStr>(&self, line: usize, text: &str) -> Result<T, ParseError> {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error_at(line, format!("expected a number, found '{text}'")));
        }
        text.parse()
            .map_err(|_| self.error_at(line, format!("number '{text}' is out of range")))
    }
}
