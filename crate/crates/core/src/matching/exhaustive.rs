// Maximum matching by memoised recursion over vertex subsets: the lowest
// vertex of the subset is either left exposed or matched to a neighbour.

use super::Matching;
use crate::graph::SimpleGraph;

/// Largest vertex count accepted by [`maximum_matching_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 20;

const UNKNOWN: u8 = u8::MAX;

fn best(mask: u32, adj: &[u32], memo: &mut [u8]) -> u8 {
    if mask == 0 {
        return 0;
    }
    if memo[mask as usize] != UNKNOWN {
        return memo[mask as usize];
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut value = best(rest, adj, memo);
    let mut nbrs = adj[v] & rest;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros();
        nbrs &= nbrs - 1;
        value = value.max(1 + best(rest & !(1 << u), adj, memo));
    }
    memo[mask as usize] = value;
    value
}

/// Exact maximum matching for graphs with at most [`EXHAUSTIVE_LIMIT`]
/// vertices. Returns `None` for larger graphs.
pub fn maximum_matching_exhaustive(g: &SimpleGraph) -> Option<Matching> {
    let n = g.n_vertices();
    if n > EXHAUSTIVE_LIMIT {
        return None;
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |acc, u| acc | 1 << u)).collect();
    let mut memo = vec![UNKNOWN; 1 << n];
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let target = best(full, &adj, &mut memo);
    // walk the memo back to recover one optimal set of edges
    let mut edges = Vec::with_capacity(target as usize);
    let mut mask = full;
    while mask != 0 {
        let here = best(mask, &adj, &mut memo);
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        if best(rest, &adj, &mut memo) == here {
            mask = rest;
            continue;
        }
        let u = (0..n)
            .find(|&u| adj[v] & rest & (1 << u) != 0 && 1 + best(rest & !(1 << u), &adj, &mut memo) == here)
            .expect("optimal value is attained by some neighbour");
        edges.push((v, u));
        mask = rest & !(1 << u);
    }
    Some(Matching::new(g, edges).expect("reconstructed edges form a matching"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        assert_eq!(maximum_matching_exhaustive(&SimpleGraph::cycle(4)).unwrap().size(), 2);
        assert_eq!(maximum_matching_exhaustive(&SimpleGraph::cycle(7)).unwrap().size(), 3);
        assert_eq!(maximum_matching_exhaustive(&SimpleGraph::star(6)).unwrap().size(), 1);
        assert_eq!(maximum_matching_exhaustive(&SimpleGraph::empty(0)).unwrap().size(), 0);
        assert!(maximum_matching_exhaustive(&SimpleGraph::empty(21)).is_none());
        assert_eq!(maximum_matching_exhaustive(&SimpleGraph::complete(20)).unwrap().size(), 10);
    }
}
