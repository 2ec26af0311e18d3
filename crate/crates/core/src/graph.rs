//! Simple undirected graphs with bitset adjacency rows, plus the text
//! formats the CLI reads and writes.
//!
//! Edge-list format:
//!
//! ```text
//! # comment
//! n m
//! u v        (m lines, 0-based vertices)
//! ```
//!
//! JSON format: `{"n": 3, "edges": [[0, 1], [1, 2]]}`.

use std::fmt::Write as _;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("vertex {v} out of range for {n} vertices")]
    OutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error("unknown graph format `{0}` (expected edgelist, dot or json)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(GraphFormat::EdgeList),
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    rows: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        SimpleGraph { rows: vec![FixedBitSet::with_capacity(n); n], labels: None }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(v, false);
        }
        g
    }

    /// `K_{s,t}` with side `U = 0..s` and side `W = s..s+t`.
    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        let mut g = Self::empty(s + t);
        for u in 0..s {
            for w in s..s + t {
                g.insert_edge(u, w);
            }
        }
        g
    }

    /// `K_{1,t}` with centre 0.
    pub fn star(t: usize) -> Self {
        Self::complete_bipartite(1, t)
    }

    /// `kK_2`: edges `{2i, 2i+1}`.
    pub fn one_factor(k: usize) -> Self {
        let mut g = Self::empty(2 * k);
        for i in 0..k {
            g.insert_edge(2 * i, 2 * i + 1);
        }
        g
    }

    /// `K_1 + kK_2`: apex 0 joined to everything, edges `{2i+1, 2i+2}`.
    pub fn fan_of_triangles(k: usize) -> Self {
        let mut g = Self::empty(2 * k + 1);
        for v in 1..=2 * k {
            g.insert_edge(0, v);
        }
        for i in 0..k {
            g.insert_edge(2 * i + 1, 2 * i + 2);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.insert_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.insert_edge(0, n - 1);
        }
        g
    }

    /// Builds from an edge list, rejecting loops, duplicates and bad indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n_vertices();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::OutOfRange { v: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_edge(u, v);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n_vertices());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n_vertices(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n_vertices()).map(|v| self.degree(v)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_vertices()).flat_map(move |u| self.rows[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Every pair of distinct vertices adjacent (vacuous for `n ≤ 1`).
    pub fn is_complete(&self) -> bool {
        let n = self.n_vertices();
        (0..n).all(|v| self.degree(v) + 1 == n)
    }

    /// Reads the edge-list or JSON format, sniffing JSON by a leading `{`.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_edgelist(text)
        }
    }

    pub fn parse_json(text: &str) -> Result<Self, GraphError> {
        let j: JsonGraph = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let edges: Vec<_> = j.edges.iter().map(|&[u, v]| (u, v)).collect();
        Self::from_edges(j.n, &edges)
    }

    pub fn parse_edgelist(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let fields: Vec<&str> = l.split_whitespace().collect();
            let bad = |reason: String| GraphError::Malformed { line, reason };
            match fields.as_slice() {
                [a, b] => Ok((
                    a.parse().map_err(|_| bad(format!("`{a}` is not a non-negative integer")))?,
                    b.parse().map_err(|_| bad(format!("`{b}` is not a non-negative integer")))?,
                )),
                _ => Err(bad(format!("expected two integers, got `{l}`"))),
            }
        };
        let (hline, header) = lines
            .next()
            .ok_or(GraphError::Malformed { line: 1, reason: "missing `n m` header".into() })?;
        let (n, m) = pair(hline, header)?;
        let mut g = Self::empty(n);
        let mut found = 0;
        for (line, l) in lines {
            let (u, v) = pair(line, l)?;
            g.add_edge(u, v)?;
            found += 1;
        }
        if found != m {
            return Err(GraphError::EdgeCount { expected: m, found });
        }
        Ok(g)
    }

    pub fn serialize(&self, format: GraphFormat) -> String {
        match format {
            GraphFormat::EdgeList => {
                let mut out = format!("{} {}\n", self.n_vertices(), self.edge_count());
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "{u} {v}");
                }
                out
            }
            GraphFormat::Json => {
                let j = JsonGraph { n: self.n_vertices(), edges: self.edges().map(|(u, v)| [u, v]).collect() };
                serde_json::to_string(&j).expect("plain data serializes")
            }
            GraphFormat::Dot => {
                let mut out = String::from("graph G {\n");
                if let Some(labels) = &self.labels {
                    for (v, l) in labels.iter().enumerate() {
                        let _ = writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
                    }
                } else {
                    for v in 0..self.n_vertices() {
                        let _ = writeln!(out, "  {v};");
                    }
                }
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "  {u} -- {v};");
                }
                out.push_str("}\n");
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_path() {
        let g = SimpleGraph::parse("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, SimpleGraph::path(3));
        let text = g.serialize(GraphFormat::EdgeList);
        assert_eq!(text, "3 2\n0 1\n1 2\n");
        assert_eq!(SimpleGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = SimpleGraph::parse("# a triangle\n3 3\n\n0 1 # first\n1 2\n2 0\n").unwrap();
        assert!(g.is_complete());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(SimpleGraph::parse("2 1\n0 0"), Err(GraphError::SelfLoop(0)));
        assert_eq!(SimpleGraph::parse("2 2\n0 1\n1 0"), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(SimpleGraph::parse("2 1\n0 2"), Err(GraphError::OutOfRange { v: 2, n: 2 }));
        assert_eq!(SimpleGraph::parse("3 2\n0 1"), Err(GraphError::EdgeCount { expected: 2, found: 1 }));
        assert!(matches!(SimpleGraph::parse("3 1\n0 x"), Err(GraphError::Malformed { line: 2, .. })));
        assert!(matches!(SimpleGraph::parse("3 1\n0 1 2"), Err(GraphError::Malformed { .. })));
        assert!(matches!(SimpleGraph::parse(""), Err(GraphError::Malformed { .. })));
        assert!(matches!(SimpleGraph::parse("{\"n\":2}"), Err(GraphError::Json(_))));
        assert_eq!(SimpleGraph::parse("{\"n\":2,\"edges\":[[1,1]]}"), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn json_format() {
        let g = SimpleGraph::parse("{\"n\":3,\"edges\":[[0,1],[1,2]]}").unwrap();
        assert_eq!(g, SimpleGraph::path(3));
        assert_eq!(g.serialize(GraphFormat::Json), "{\"n\":3,\"edges\":[[0,1],[1,2]]}");
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = SimpleGraph::cycle(4).serialize(GraphFormat::Dot);
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
    }

    #[test]
    fn completeness() {
        assert!(SimpleGraph::complete(1).is_complete());
        assert!(SimpleGraph::complete(5).is_complete());
        assert!(!SimpleGraph::path(3).is_complete());
        assert_eq!(SimpleGraph::complete(5).edge_count(), 10);
    }

    #[test]
    fn standard_shapes() {
        let k = SimpleGraph::complete_bipartite(2, 3);
        assert_eq!(k.edge_count(), 6);
        assert_eq!(SimpleGraph::one_factor(4).edge_count(), 4);
        let fan = SimpleGraph::fan_of_triangles(3);
        assert_eq!(fan.degree(0), 6);
        assert_eq!(fan.edge_count(), 9);
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..16).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::ANY, n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = SimpleGraph::empty(n);
                let mut it = bits.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn text_formats_round_trip(g in arb_graph()) {
            for f in [GraphFormat::EdgeList, GraphFormat::Json] {
                prop_assert_eq!(&SimpleGraph::parse(&g.serialize(f)).unwrap(), &g);
            }
        }

        #[test]
        fn adjacency_is_symmetric_and_irreflexive(g in arb_graph()) {
            for u in 0..g.n_vertices() {
                prop_assert!(!g.has_edge(u, u));
                for v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                }
            }
        }
    }
}
