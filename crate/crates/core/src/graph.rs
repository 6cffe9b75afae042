//! Finite simple connected graphs with their shortest-path metric.
//!
//! Vertices are stored 0-based. Every textual format (edge lists, graph6,
//! S-structure files, CLI arguments) uses 1-based ids; conversion happens at
//! the parsing and printing boundaries only.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::GraphError;

/// Input format accepted by [`parse_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    dist: Vec<usize>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Rejects loops, repeated edges and
    /// disconnected input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v) + 1,
                    n,
                });
            }
            if u == v {
                return Err(GraphError::Loop(u + 1));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0 + 1, key.1 + 1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let dist = all_pairs_bfs(n, &adj)?;
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            adj,
            dist,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted 0-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.dist(u, v) == 1
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Common neighbours of `u` and `v`, in increasing order.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        self.adj[u]
            .iter()
            .copied()
            .filter(|&w| self.adjacent(w, v))
            .collect()
    }

    /// A connected graph is a tree iff it has exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// Sum of consecutive distances along a vertex tuple.
    pub fn walk_length(&self, points: &[usize]) -> usize {
        points.windows(2).map(|w| self.dist(w[0], w[1])).sum()
    }

    /// Canonical edge-list text: one `u v` line per edge, 1-based, sorted.
    /// Graphs without edges are written as a single vertex declaration.
    pub fn to_edge_list(&self) -> String {
        if self.edges.is_empty() {
            return format!("{}\n", self.n);
        }
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Standard graph6 encoding (without the optional header).
    pub fn to_graph6(&self) -> String {
        let mut out = encode_graph6_size(self.n);
        let mut bits = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for j in 1..self.n {
            for i in 0..j {
                bits.push(self.adjacent(i, j));
            }
        }
        for chunk in bits.chunks(6) {
            let mut byte = 0u8;
            for (k, &b) in chunk.iter().enumerate() {
                if b {
                    byte |= 1 << (5 - k);
                }
            }
            out.push((byte + 63) as char);
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        write!(f, "])")
    }
}

fn all_pairs_bfs(n: usize, adj: &[Vec<usize>]) -> Result<Vec<usize>, GraphError> {
    let mut dist = vec![usize::MAX; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == usize::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(t) = row.iter().position(|&d| d == usize::MAX) {
            return Err(GraphError::Disconnected(s + 1, t + 1));
        }
    }
    Ok(dist)
}

fn encode_graph6_size(n: usize) -> String {
    let push6 = |out: &mut String, value: usize, groups: usize| {
        for g in (0..groups).rev() {
            out.push((((value >> (6 * g)) & 0x3f) as u8 + 63) as char);
        }
    };
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        push6(&mut out, n, 3);
    } else {
        out.push_str("~~");
        push6(&mut out, n, 6);
    }
    out
}

/// Parses a graph from text.
///
/// Edge lists hold one `u v` pair of 1-based ids per line; `#` starts a
/// comment and a line with a single id declares a vertex (needed for `K_1`).
/// The vertex count is the largest id seen. graph6 input must contain exactly
/// one graph.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => {
            let mut lines = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'));
            let line = lines.next().ok_or(GraphError::Empty)?;
            if lines.next().is_some() {
                return Err(GraphError::Parse {
                    line: 2,
                    message: "graph6 input must hold a single graph".into(),
                });
            }
            parse_graph6_line(line)
        }
    }
}

/// Guesses the format: a first data line made only of graph6 bytes
/// (`?`..=`~`) is graph6, anything else is treated as an edge list.
pub fn detect_format(text: &str) -> GraphFormat {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with(">>graph6<<") => GraphFormat::Graph6,
        Some(l) if l.bytes().all(|b| (63..=126).contains(&b)) => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| GraphError::Parse {
            line: lineno + 1,
            message,
        };
        let ids = line
            .split_whitespace()
            .map(|tok| match tok.parse::<usize>() {
                Ok(0) => Err(parse_err("vertex ids are 1-based".into())),
                Ok(v) => Ok(v),
                Err(_) => Err(parse_err(format!("invalid vertex id {tok:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        match ids.as_slice() {
            [v] => n = n.max(*v),
            [u, v] => {
                n = n.max(*u).max(*v);
                edges.push((u - 1, v - 1));
            }
            _ => return Err(parse_err(format!("expected \"u v\", got {line:?}"))),
        }
    }
    Graph::from_edges(n, &edges)
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is skipped).
pub fn parse_graph6_line(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |message: String| GraphError::Parse { line: 1, message };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(format!("invalid graph6 byte {b:#04x} at offset {i}")));
        }
    }
    let take = |from: usize, groups: usize| -> Result<usize, GraphError> {
        if bytes.len() < from + groups {
            return Err(bad("truncated graph6 size field".into()));
        }
        Ok(bytes[from..from + groups]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, body_start) = match bytes {
        [] => return Err(GraphError::Empty),
        [b'~', b'~', ..] => (take(2, 6)?, 8),
        [b'~', ..] => (take(1, 3)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    let body = &bytes[body_start..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(bad(format!(
            "graph6 body has {} bytes, expected {expected} for n={n}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Outcome of the pawful test. `violation` is `None` exactly when the graph
/// is pawful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PawfulWitness {
    pub verdict: bool,
    pub violation: Option<PawfulViolation>,
}

/// Why a graph fails to be pawful. Vertices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PawfulViolation {
    /// Two vertices further apart than 2.
    Diameter { x: usize, y: usize, dist: usize },
    /// `d(x,y) = d(y,z) = 2`, `d(x,z) = 1` and no vertex is adjacent to all
    /// three.
    NoApex { x: usize, y: usize, z: usize },
}

impl fmt::Display for PawfulViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PawfulViolation::Diameter { x, y, dist } => {
                write!(f, "d({}, {}) = {dist} > 2", x + 1, y + 1)
            }
            PawfulViolation::NoApex { x, y, z } => write!(
                f,
                "triple ({}, {}, {}) with d(x,y)=d(y,z)=2, d(x,z)=1 has no common neighbour",
                x + 1,
                y + 1,
                z + 1
            ),
        }
    }
}

pub fn diameter(g: &Graph) -> usize {
    g.dist.iter().copied().max().unwrap_or(0)
}

/// Tests the pawful condition; on failure reports the lexicographically
/// smallest offending pair or triple.
pub fn is_pawful(g: &Graph) -> PawfulWitness {
    let violation = pawful_violation(g);
    PawfulWitness {
        verdict: violation.is_none(),
        violation,
    }
}

fn pawful_violation(g: &Graph) -> Option<PawfulViolation> {
    for x in g.vertices() {
        for y in g.vertices() {
            let dist = g.dist(x, y);
            if dist > 2 {
                return Some(PawfulViolation::Diameter { x, y, dist });
            }
        }
    }
    for x in g.vertices() {
        for y in g.vertices() {
            if g.dist(x, y) != 2 {
                continue;
            }
            for z in g.vertices() {
                if g.dist(y, z) == 2 && g.dist(x, z) == 1 && apex(g, x, y, z).is_none() {
                    return Some(PawfulViolation::NoApex { x, y, z });
                }
            }
        }
    }
    None
}

/// Smallest vertex adjacent to each of `x`, `y`, `z`.
pub(crate) fn apex(g: &Graph, x: usize, y: usize, z: usize) -> Option<usize> {
    g.neighbors(x)
        .iter()
        .copied()
        .find(|&v| g.adjacent(v, y) && g.adjacent(v, z))
}

/// Result of the short-cycle edge condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeCycleCheck {
    /// Every edge lies on a cycle of length 3 or 4.
    Holds,
    /// This edge (0-based, `u < v`) lies on no cycle of length at most 4.
    Fails { u: usize, v: usize },
}

/// Checks that every edge lies on a 3- or 4-cycle. Only meaningful for
/// graphs that are not trees; trees are rejected.
pub fn ahk_edge_cycle_check(g: &Graph) -> Result<EdgeCycleCheck, GraphError> {
    if g.is_tree() {
        return Err(GraphError::Tree);
    }
    for &(u, v) in g.edges() {
        let triangle = g.neighbors(u).iter().any(|&w| g.adjacent(w, v));
        let square = || {
            g.neighbors(u).iter().filter(|&&w| w != v).any(|&w| {
                g.neighbors(v)
                    .iter()
                    .any(|&x| x != u && x != w && g.adjacent(w, x))
            })
        };
        if !triangle && !square() {
            return Ok(EdgeCycleCheck::Fails { u, v });
        }
    }
    Ok(EdgeCycleCheck::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn path_distances() {
        let g = parse_graph("1 2\n2 3", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.dist(0, 2), 2);
        assert_eq!(diameter(&g), 2);
    }

    #[test]
    fn g1_far_pair() {
        let g = fixtures::g1();
        assert_eq!(g.dist(0, 5), 2);
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn comments_and_vertex_declarations() {
        let g = parse_graph("# single vertex\n1\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.vertex_count(), 1);
        let g = parse_graph("1 2 # edge\n\n2 3\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rejects_invalid_graphs() {
        let e = |s: &str| parse_graph(s, GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(e("1 1"), GraphError::Loop(1)));
        assert!(matches!(e("1 2\n2 1"), GraphError::DuplicateEdge(1, 2)));
        assert!(matches!(e("1 2\n3 4"), GraphError::Disconnected(..)));
        assert!(matches!(e("1 x"), GraphError::Parse { line: 1, .. }));
        assert!(matches!(e("0 1"), GraphError::Parse { .. }));
        assert!(matches!(e("1 2 3"), GraphError::Parse { .. }));
        assert!(matches!(e(""), GraphError::Empty));
    }

    #[test]
    fn graph6_known_string() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = parse_graph("DQc", GraphFormat::Graph6).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(g.to_graph6(), "DQc");
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6_line("D?").is_err());
        assert!(parse_graph6_line("D?{a").is_err());
        assert!(parse_graph6_line("D 1").is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("DQc\n"), GraphFormat::Graph6);
        assert_eq!(detect_format("# c\n1 2\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format(">>graph6<<DQc"), GraphFormat::Graph6);
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&fixtures::complete(4)), 1);
        assert_eq!(diameter(&fixtures::c4()), 2);
        assert_eq!(diameter(&fixtures::g2()), 2);
        assert_eq!(diameter(&fixtures::complete(1)), 0);
    }

    #[test]
    fn pawful_cases() {
        for n in 1..6 {
            assert!(is_pawful(&fixtures::complete(n)).verdict);
        }
        assert_eq!(is_pawful(&fixtures::c4()).violation, None);
        let w = is_pawful(&fixtures::g1());
        assert!(!w.verdict);
        match w.violation {
            Some(PawfulViolation::NoApex { x, y, z }) => {
                let mut s = [x, y, z];
                s.sort();
                assert_eq!(s, [0, 2, 3]);
                assert_eq!(y, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            is_pawful(&fixtures::cycle(6)).violation,
            Some(PawfulViolation::Diameter { dist: 3, .. })
        ));
    }

    #[test]
    fn edge_cycle_condition() {
        assert_eq!(
            ahk_edge_cycle_check(&fixtures::complete(4)).unwrap(),
            EdgeCycleCheck::Holds
        );
        assert_eq!(
            ahk_edge_cycle_check(&fixtures::g3()).unwrap(),
            EdgeCycleCheck::Holds
        );
        assert!(matches!(
            ahk_edge_cycle_check(&fixtures::cycle(5)).unwrap(),
            EdgeCycleCheck::Fails { .. }
        ));
        assert!(matches!(
            ahk_edge_cycle_check(&fixtures::star(3)),
            Err(GraphError::Tree)
        ));
    }
}
