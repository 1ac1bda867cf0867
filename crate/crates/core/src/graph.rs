//! Hamiltonian graphs as a labeled cycle `1, 2, ..., n, 1` plus chords.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Largest vertex count the single-byte graph6 size header can express.
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("chord endpoint {0} is not in 3..n-1")]
    ChordOutOfRange(usize),
    #[error("{{{0}, {1}}} is not a chord of the {2}-cycle")]
    InvalidChord(usize, usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateChord(usize, usize),
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("edges {{i, i+1}} and {{n, 1}} do not form a Hamilton cycle (missing {{{0}, {1}}})")]
    NoHamiltonCycleLabeled(usize, usize),
    #[error("graph6 supports at most {GRAPH6_MAX_VERTICES} vertices, got {0}")]
    TooLargeForGraph6(usize),
}

/// The cycle `C_n` on vertices `1..=n` together with a set of chords.
///
/// Chords are stored as `(u, v)` with `u < v`, sorted, and never coincide with a
/// cycle edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChordedCycleGraph {
    n: usize,
    chords: Vec<(usize, usize)>,
}

impl ChordedCycleGraph {
    pub fn new(
        n: usize,
        chords: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut seen = BTreeSet::new();
        for (u, v) in chords {
            let (u, v) = (u.min(v), u.max(v));
            if u < 1 || v > n || !is_chord(n, u, v) {
                return Err(GraphError::InvalidChord(u, v, n));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateChord(u, v));
            }
        }
        Ok(ChordedCycleGraph {
            n,
            chords: seen.into_iter().collect(),
        })
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Self::new(n, [])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn edge_count(&self) -> usize {
        self.n + self.chords.len()
    }

    /// Cycle edges in order `{1,2}, ..., {n-1,n}, {n,1}`.
    pub fn cycle_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n)
            .map(|i| (i, i + 1))
            .chain(std::iter::once((self.n, 1)))
    }

    /// Cycle edges followed by chords.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cycle_edges().chain(self.chords.iter().copied())
    }

    /// Neighbor lists indexed by vertex label; index 0 is unused.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// `{u, v}` (with `u < v`) joins two distinct non-consecutive vertices of `C_n`.
pub fn is_chord(n: usize, u: usize, v: usize) -> bool {
    u >= 1 && v <= n && u + 1 < v && !(u == 1 && v == n)
}

/// `G_n(S)`: the cycle `C_n` plus chords `{1, a}` for `a ∈ S`.
pub fn build_graph(n: usize, s: &[usize]) -> Result<ChordedCycleGraph, GraphError> {
    check_endpoints(n, s)?;
    ChordedCycleGraph::new(n, s.iter().map(|&a| (1, a)))
}

fn check_endpoints(n: usize, s: &[usize]) -> Result<(), GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices(n));
    }
    if let Some(&a) = s.iter().find(|&&a| a < 3 || a >= n) {
        return Err(GraphError::ChordOutOfRange(a));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::DuplicateChord(1, w[0]));
    }
    Ok(())
}

/// Multiset of cycle lengths, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleSpectrum {
    lengths: Vec<usize>,
}

impl CycleSpectrum {
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        CycleSpectrum { lengths }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of cycles counted with multiplicity.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, length: usize) -> bool {
        self.lengths.binary_search(&length).is_ok()
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &l in &self.lengths {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }

    /// The underlying set of lengths.
    pub fn support(&self) -> Vec<usize> {
        let mut out = self.lengths.clone();
        out.dedup();
        out
    }
}

impl fmt::Display for CycleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Closed-form cycle spectrum of `G_n(S)`.
///
/// Every cycle goes through vertex 1 and uses exactly two of its edges. The
/// Hamilton cycle gives `n`; a chord `{1, a}` gives `a` and `n + 2 - a`; two
/// chords `a < b` give `b - a + 2`.
pub fn predicted_spectrum(n: usize, s: &[usize]) -> Result<CycleSpectrum, GraphError> {
    check_endpoints(n, s)?;
    let mut lengths = Vec::with_capacity(1 + 2 * s.len() + s.len() * s.len().saturating_sub(1) / 2);
    lengths.push(n);
    for &a in s {
        lengths.push(a);
        lengths.push(n + 2 - a);
    }
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            lengths.push(a.abs_diff(b) + 2);
        }
    }
    Ok(CycleSpectrum::from_lengths(lengths))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    EdgeList,
    Dot,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            "dot" => Ok(GraphFormat::Dot),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

pub fn export_graph(g: &ChordedCycleGraph, format: GraphFormat) -> Result<String, GraphError> {
    match format {
        GraphFormat::EdgeList => Ok(g.edges().map(|(u, v)| format!("{u} {v}\n")).collect()),
        GraphFormat::Dot => {
            let mut out = String::from("graph G {\n");
            for v in 1..=g.n {
                out.push_str(&format!("  {v};\n"));
            }
            for (u, v) in g.edges() {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
            out.push_str("}\n");
            Ok(out)
        }
        GraphFormat::Graph6 => to_graph6(g),
    }
}

pub fn import_graph(text: &str, format: GraphFormat) -> Result<ChordedCycleGraph, GraphError> {
    let (n, edges) = match format {
        GraphFormat::EdgeList => parse_edge_list(text)?,
        GraphFormat::Dot => parse_dot(text)?,
        GraphFormat::Graph6 => parse_graph6(text)?,
    };
    from_edges(n, &edges)
}

/// Splits an edge set on `1..=n` into the labeled Hamilton cycle and chords.
fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<ChordedCycleGraph, GraphError> {
    let mut set = BTreeSet::new();
    for &(u, v) in edges {
        if u == v {
            return Err(GraphError::ParseError {
                line: 0,
                message: format!("self-loop at {u}"),
            });
        }
        if !set.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateChord(u.min(v), u.max(v)));
        }
    }
    if n < 3 {
        return Err(GraphError::NoHamiltonCycleLabeled(n.max(1), 1));
    }
    let cycle: Vec<(usize, usize)> = (1..n)
        .map(|i| (i, i + 1))
        .chain(std::iter::once((1, n)))
        .collect();
    for &(u, v) in &cycle {
        if !set.remove(&(u, v)) {
            let (a, b) = if (u, v) == (1, n) { (n, 1) } else { (u, v) };
            return Err(GraphError::NoHamiltonCycleLabeled(a, b));
        }
    }
    ChordedCycleGraph::new(n, set)
}

fn parse_label(token: &str, line: usize) -> Result<usize, GraphError> {
    match token.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(GraphError::ParseError {
            line,
            message: format!("invalid vertex label `{token}`"),
        }),
    }
}

fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>), GraphError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::ParseError {
                line: i + 1,
                message: format!("expected `u v`, got `{line}`"),
            });
        }
        edges.push((
            parse_label(tokens[0], i + 1)?,
            parse_label(tokens[1], i + 1)?,
        ));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    Ok((n, edges))
}

/// Reads the undirected DOT subset written by [`export_graph`]: node
/// statements `v;` and edge statements `u -- v;`.
fn parse_dot(text: &str) -> Result<(usize, Vec<(usize, usize)>), GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim_start().starts_with("graph") && l.trim_end().ends_with('{') => {}
        Some((i, l)) => {
            return Err(GraphError::ParseError {
                line: i + 1,
                message: format!("expected `graph ... {{`, got `{}`", l.trim()),
            })
        }
        None => {
            return Err(GraphError::ParseError {
                line: 1,
                message: "empty input".into(),
            })
        }
    }
    let mut n = 0;
    let mut edges = Vec::new();
    let mut closed = false;
    for (i, raw) in lines {
        let line = raw.trim();
        if closed {
            return Err(GraphError::ParseError {
                line: i + 1,
                message: "content after closing brace".into(),
            });
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line.strip_suffix(';').unwrap_or(line).trim();
        match stmt.split_once("--") {
            Some((u, v)) => {
                let (u, v) = (parse_label(u.trim(), i + 1)?, parse_label(v.trim(), i + 1)?);
                n = n.max(u).max(v);
                edges.push((u, v));
            }
            None => n = n.max(parse_label(stmt, i + 1)?),
        }
    }
    if !closed {
        return Err(GraphError::ParseError {
            line: text.lines().count(),
            message: "missing closing brace".into(),
        });
    }
    Ok((n, edges))
}

/// graph6: size byte `n + 63`, then the upper triangle read column by column
/// (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six bits per byte, each plus 63.
fn to_graph6(g: &ChordedCycleGraph) -> Result<String, GraphError> {
    let n = g.n;
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::TooLargeForGraph6(n));
    }
    let edges: BTreeSet<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (u.min(v) - 1, u.max(v) - 1))
        .collect();
    let bits: Vec<bool> = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|e| edges.contains(&e))
        .collect();
    let mut out = String::with_capacity(2 + bits.len() / 6);
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for k in 0..6 {
            byte = (byte << 1) | u8::from(chunk.get(k).copied().unwrap_or(false));
        }
        out.push((byte + 63) as char);
    }
    out.push('\n');
    Ok(out)
}

fn parse_graph6(text: &str) -> Result<(usize, Vec<(usize, usize)>), GraphError> {
    let body = text.trim();
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body).as_bytes();
    let bad = |message: String| GraphError::ParseError { line: 1, message };
    let (&size, rest) = body
        .split_first()
        .ok_or_else(|| bad("empty graph6 string".into()))?;
    if !(63..=126).contains(&size) {
        return Err(bad(format!("invalid size byte {size}")));
    }
    if size == 126 {
        return Err(bad(format!(
            "graph6 inputs above {GRAPH6_MAX_VERTICES} vertices are not supported"
        )));
    }
    let n = (size - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(bad(format!(
            "expected {} data bytes for {n} vertices, got {}",
            nbits.div_ceil(6),
            rest.len()
        )));
    }
    let mut bits = Vec::with_capacity(rest.len() * 6);
    for &b in rest {
        if !(63..=126).contains(&b) {
            return Err(bad(format!("invalid data byte {b}")));
        }
        let v = b - 63;
        bits.extend((0..6).rev().map(|k| (v >> k) & 1 == 1));
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(bad("nonzero padding bits".into()));
    }
    let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i + 1, j + 1)));
    let edges = pairs
        .zip(&bits)
        .filter(|(_, &b)| b)
        .map(|(e, _)| e)
        .collect();
    Ok((n, edges))
}
