//! Matchings in power graphs and the inverse-closed path machinery that ties
//! perfect matchings of `Γ_G` to path covers with self-inverse endpoints.
//!
//! Two matching engines live here: Edmonds' blossom algorithm
//! ([`maximum_matching`]) and an exhaustive subset DP for at most
//! [`EXHAUSTIVE_LIMIT`] vertices ([`maximum_matching_exhaustive`]). They are
//! independent and the tests cross-check them.

mod blossom;
mod exhaustive;
mod paths;

use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;

pub use blossom::maximum_matching;
pub use exhaustive::{maximum_matching_exhaustive, EXHAUSTIVE_LIMIT};
pub use paths::{
    check_theorem44, compress_path, matching_from_path_cover, near_perfect_matching_odd,
    path_cover_from_matching, validate_cover, InversePath, PathCover, PerfectMatchingReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge {{{0}, {1}}} is not in the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is covered twice")]
    Overlap(usize),
    #[error("group order {0} is even; an odd order is required")]
    EvenOrder(usize),
    #[error("group order {0} is odd; an even order is required")]
    OddOrder(usize),
    #[error("matching has {size} edges, a perfect matching needs {needed}")]
    NotPerfect { size: usize, needed: usize },
    #[error("path is invalid: {0}")]
    InvalidPath(String),
    #[error("path is not inverse-closed: {0} is present but its inverse is not")]
    NotInverseClosed(usize),
    #[error("path vertex {0} has order at most 2")]
    SmallOrder(usize),
    #[error("path cover is invalid: {0}")]
    InvalidCover(String),
    #[error("a path avoiding the identity has only {0} interior vertices")]
    ShortInterior(usize),
    #[error("path extraction revisited vertex {0}")]
    Revisit(usize),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
}

/// A set of pairwise disjoint edges, stored as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub n_vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Matching {
    /// Validates disjointness and membership in `g`.
    pub fn new(g: &SimpleGraph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, MatchingError> {
        let n = g.n_vertices();
        let mut covered = vec![false; n];
        let mut out = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n || !g.has_edge(u, v) {
                return Err(MatchingError::NotAnEdge(u, v));
            }
            for x in [u, v] {
                if covered[x] {
                    return Err(MatchingError::Overlap(x));
                }
                covered[x] = true;
            }
            out.push([u.min(v), u.max(v)]);
        }
        out.sort_unstable();
        Ok(Matching { n_vertices: n, edges: out })
    }

    pub(crate) fn from_mates(g: &SimpleGraph, mate: &[Option<usize>]) -> Self {
        let edges = mate.iter().enumerate().filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (v, u)));
        Matching::new(g, edges).expect("mate array describes a matching")
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&[u, v]| (u, v))
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn covered(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.edges.iter().flatten().copied().collect();
        c.sort_unstable();
        c
    }

    /// Partner of every vertex, `None` when uncovered.
    pub fn mates(&self) -> Vec<Option<usize>> {
        let mut m = vec![None; self.n_vertices];
        for &[u, v] in &self.edges {
            m[u] = Some(v);
            m[v] = Some(u);
        }
        m
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.size() == self.n_vertices
    }

    pub fn is_near_perfect(&self) -> bool {
        2 * self.size() + 1 == self.n_vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlap_and_non_edges() {
        let g = SimpleGraph::path(4);
        assert_eq!(Matching::new(&g, [(0, 1), (1, 2)]), Err(MatchingError::Overlap(1)));
        assert_eq!(Matching::new(&g, [(0, 2)]), Err(MatchingError::NotAnEdge(0, 2)));
        let m = Matching::new(&g, [(2, 3), (1, 0)]).unwrap();
        assert!(m.is_perfect());
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert_eq!(m.covered(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn near_perfect_flag() {
        let g = SimpleGraph::path(3);
        let m = Matching::new(&g, [(0, 1)]).unwrap();
        assert!(m.is_near_perfect() && !m.is_perfect());
    }
}
