//! Undirected simple graphs and the DIMACS `.col` text format.
//!
//! Vertices are numbered `0..n` internally. The DIMACS format numbers them
//! from 1; the parser and [`Graph::to_dimacs`] perform the conversion.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

/// Vertex identifier (0-based).
pub type Vertex = usize;

/// Errors raised while reading a DIMACS instance. Line numbers are 1-based.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed line: {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: invalid number {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: edge listed before the problem line")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("no problem line (`p edge <n> <m>`) found")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: more distinct edges than the {declared} declared")]
    TooManyEdges { line: usize, declared: usize },
    #[error("problem line declares zero vertices")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors raised when building a graph from an explicit edge list.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
}

/// An undirected simple graph.
///
/// Immutable once built. Duplicate edges supplied at construction are
/// collapsed and counted in [`Graph::duplicate_edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Deduplicated edges as `(min, max)`, in first-seen order.
    edges: Vec<(Vertex, Vertex)>,
    /// Sorted neighbor lists.
    adjacency: Vec<Vec<Vertex>>,
    duplicate_edges: usize,
}

impl Graph {
    /// Builds a graph from 0-based vertex pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut builder = Builder::new(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            builder.add(u, v);
        }
        Ok(builder.finish())
    }

    /// Parses DIMACS `.col` text.
    ///
    /// Accepts `c` comment lines, blank lines, a single `p edge <n> <m>` (or
    /// `p col <n> <m>`) header and `e <u> <v>` edge lines, with LF or CRLF line
    /// endings.
    pub fn parse_dimacs(text: &str) -> Result<Self, ParseError> {
        let mut builder: Option<(Builder, usize)> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            let mut tokens = content.split_whitespace();
            let Some(tag) = tokens.next() else { continue };
            match tag {
                "c" => {}
                "p" => {
                    if builder.is_some() {
                        return Err(ParseError::DuplicateHeader { line });
                    }
                    let format = tokens.next();
                    if !matches!(format, Some("edge" | "edges" | "col")) {
                        return Err(malformed(line, content));
                    }
                    let n = number(line, tokens.next(), content)?;
                    let m = number(line, tokens.next(), content)?;
                    if tokens.next().is_some() {
                        return Err(malformed(line, content));
                    }
                    if n == 0 {
                        return Err(ParseError::Empty);
                    }
                    builder = Some((Builder::new(n), m));
                }
                "e" => {
                    let Some((b, declared)) = builder.as_mut() else {
                        return Err(ParseError::EdgeBeforeHeader { line });
                    };
                    let u = number(line, tokens.next(), content)?;
                    let v = number(line, tokens.next(), content)?;
                    if tokens.next().is_some() {
                        return Err(malformed(line, content));
                    }
                    for w in [u, v] {
                        if w == 0 || w > b.n {
                            return Err(ParseError::VertexOutOfRange {
                                line,
                                vertex: w,
                                n: b.n,
                            });
                        }
                    }
                    if u == v {
                        return Err(ParseError::SelfLoop { line, vertex: u });
                    }
                    if b.add(u - 1, v - 1) && b.edges.len() > *declared {
                        return Err(ParseError::TooManyEdges {
                            line,
                            declared: *declared,
                        });
                    }
                }
                _ => return Err(malformed(line, content)),
            }
        }
        builder
            .map(|(b, _)| b.finish())
            .ok_or(ParseError::MissingHeader)
    }

    pub fn from_reader<R: Read>(mut reader: R) -> Result<Self, ParseError> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::parse_dimacs(&text)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, ParseError> {
        Self::parse_dimacs(&std::fs::read_to_string(path)?)
    }

    /// Serializes to DIMACS text with 1-based ids, one `e` line per edge.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "p edge {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// How many repeated edges (in either orientation) were dropped.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicate_edges
    }
}

fn malformed(line: usize, content: &str) -> ParseError {
    ParseError::Malformed {
        line,
        content: content.to_string(),
    }
}

fn number(line: usize, token: Option<&str>, content: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| malformed(line, content))?;
    token.parse().map_err(|_| ParseError::BadToken {
        line,
        token: token.to_string(),
    })
}

struct Builder {
    n: usize,
    seen: HashSet<(Vertex, Vertex)>,
    edges: Vec<(Vertex, Vertex)>,
    duplicates: usize,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            n,
            seen: HashSet::new(),
            edges: Vec::new(),
            duplicates: 0,
        }
    }

    /// Returns false when the edge was already present.
    fn add(&mut self, u: Vertex, v: Vertex) -> bool {
        let key = (u.min(v), u.max(v));
        if self.seen.insert(key) {
            self.edges.push(key);
            true
        } else {
            self.duplicates += 1;
            false
        }
    }

    fn finish(self) -> Graph {
        let mut adjacency = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n: self.n,
            edges: self.edges,
            adjacency,
            duplicate_edges: self.duplicates,
        }
    }
}
