//! Plain-text formats for structures and partial maps.
//!
//! ```text
//! # a path on three vertices
//! graph 3
//! 0 1
//! 1 2
//! ```
//!
//! Headers are `graph <n>`, `twograph <n>`, `antipodal <n>` (followed by the
//! strict upper triangle of the distance matrix) and `map <k>` (followed by
//! `k` pairs `src dst` and optionally `switch v1 v2 ...`). Tokens may be
//! separated by any whitespace; `#` comments run to the end of the line.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::error::Error;
use crate::structures::{AntipodalSpace, Graph, PartialMap, SwitchingPartialMap, TwoGraph};
use crate::switching::SwitchSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Semantic(#[from] Error),
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Tokens<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut end = (1, 1);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut offset = 0;
            for piece in line.split_whitespace() {
                let at = offset + line[offset..].find(piece).expect("piece of line");
                tokens.push(Token {
                    text: piece,
                    line: i + 1,
                    column: line[..at].chars().count() + 1,
                });
                offset = at + piece.len();
                end = (i + 1, line[..offset].chars().count() + 1);
            }
        }
        Tokens {
            tokens,
            pos: 0,
            end,
        }
    }

    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).copied()
    }

    fn error_here(&self, reason: impl Into<String>) -> ParseError {
        let (line, column) = match self.peek() {
            Some(t) => (t.line, t.column),
            None => self.end,
        };
        ParseError {
            line,
            column,
            reason: reason.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, ParseError> {
        let t = self
            .peek()
            .ok_or_else(|| self.error_here(format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let t = self.next(what)?;
        if !t.text.bytes().all(|b| b.is_ascii_digit()) {
            self.pos -= 1;
            return Err(self.error_here(format!("expected {what}, found '{}'", t.text)));
        }
        t.text.parse().map_err(|_| {
            self.pos -= 1;
            self.error_here(format!("{what} '{}' is out of range", t.text))
        })
    }

    fn keyword(&mut self, expected: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("'{expected}'"))?;
        if t.text != expected {
            self.pos -= 1;
            return Err(self.error_here(format!("expected '{expected}', found '{}'", t.text)));
        }
        Ok(())
    }

    fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error_here(format!("unexpected trailing token '{}'", t.text))),
        }
    }
}

/// A parsed structure of any kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Structure {
    Graph(Graph),
    TwoGraph(TwoGraph),
    Antipodal(AntipodalSpace),
}

impl Structure {
    pub fn to_text(&self) -> String {
        match self {
            Structure::Graph(g) => graph_to_text(g),
            Structure::TwoGraph(t) => two_graph_to_text(t),
            Structure::Antipodal(a) => antipodal_to_text(a),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Structure::Graph(_) => "graph",
            Structure::TwoGraph(_) => "twograph",
            Structure::Antipodal(_) => "antipodal",
        }
    }
}

/// Reads whichever structure the header names.
pub fn parse_structure(text: &str) -> FormatResult<Structure> {
    let tokens = Tokens::new(text);
    match tokens.peek().map(|t| t.text) {
        Some("graph") => parse_graph(text).map(Structure::Graph),
        Some("twograph") => parse_two_graph(text).map(Structure::TwoGraph),
        Some("antipodal") => parse_antipodal(text).map(Structure::Antipodal),
        Some(other) => Err(tokens
            .error_here(format!(
                "unknown header '{other}', expected graph, twograph or antipodal"
            ))
            .into()),
        None => Err(tokens.error_here("empty input").into()),
    }
}

pub fn parse_graph(text: &str) -> FormatResult<Graph> {
    let mut t = Tokens::new(text);
    t.keyword("graph")?;
    let n: usize = t.number("vertex count")?;
    let mut edges = Vec::new();
    while !t.at_end() {
        let u = t.number("vertex")?;
        let v = t.number("second endpoint")?;
        edges.push((u, v));
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn parse_two_graph(text: &str) -> FormatResult<TwoGraph> {
    let mut t = Tokens::new(text);
    t.keyword("twograph")?;
    let n: usize = t.number("vertex count")?;
    let mut triples = Vec::new();
    while !t.at_end() {
        let a = t.number("vertex")?;
        let b = t.number("second vertex of the triple")?;
        let c = t.number("third vertex of the triple")?;
        triples.push([a, b, c]);
    }
    Ok(TwoGraph::new(n, &triples)?)
}

pub fn parse_antipodal(text: &str) -> FormatResult<AntipodalSpace> {
    let mut t = Tokens::new(text);
    t.keyword("antipodal")?;
    let n: usize = t.number("point count")?;
    let count = n * n.saturating_sub(1) / 2;
    let mut upper = Vec::with_capacity(count);
    for _ in 0..count {
        upper.push(t.number::<u8>("distance")?);
    }
    t.expect_end()?;
    Ok(AntipodalSpace::from_upper(n, &upper)?)
}

/// A partial map file: the map and the optional `switch` line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapFile {
    pub map: PartialMap,
    pub switch: Option<SwitchSet>,
}

impl MapFile {
    pub fn switching(&self) -> std::result::Result<SwitchingPartialMap, Error> {
        SwitchingPartialMap::new(self.map.clone(), self.switch.clone().unwrap_or_default())
    }
}

pub fn parse_map(text: &str) -> FormatResult<MapFile> {
    let mut t = Tokens::new(text);
    t.keyword("map")?;
    let k: usize = t.number("pair count")?;
    let mut pairs = Vec::with_capacity(k);
    for _ in 0..k {
        let src = t.number("source vertex")?;
        let dst = t.number("target vertex")?;
        pairs.push((src, dst));
    }
    let switch = match t.peek() {
        None => None,
        Some(tok) if tok.text == "switch" => {
            t.pos += 1;
            let mut vs = Vec::new();
            while !t.at_end() {
                vs.push(t.number("switched vertex")?);
            }
            Some(SwitchSet::new(vs))
        }
        Some(tok) => {
            return Err(t
                .error_here(format!(
                    "expected 'switch' or end of input after {k} pairs, found '{}'",
                    tok.text
                ))
                .into())
        }
    };
    let map = PartialMap::from_pairs(&pairs)?;
    let file = MapFile { map, switch };
    if file.switch.is_some() {
        file.switching()?;
    }
    Ok(file)
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut s = format!("graph {}\n", g.order());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn two_graph_to_text(t: &TwoGraph) -> String {
    let mut s = format!("twograph {}\n", t.order());
    for [a, b, c] in t.triples() {
        writeln!(s, "{a} {b} {c}").unwrap();
    }
    s
}

pub fn antipodal_to_text(a: &AntipodalSpace) -> String {
    let mut s = format!("antipodal {}\n", a.order());
    for u in 0..a.order().saturating_sub(1) {
        let row: Vec<String> = (u + 1..a.order())
            .map(|v| a.dist(u, v).to_string())
            .collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

pub fn map_to_text(map: &PartialMap, switch: Option<&SwitchSet>) -> String {
    let mut s = format!("map {}\n", map.len());
    for (u, v) in map.pairs() {
        writeln!(s, "{u} {v}").unwrap();
    }
    if let Some(sw) = switch {
        s.push_str("switch");
        for v in sw.iter() {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    s
}
