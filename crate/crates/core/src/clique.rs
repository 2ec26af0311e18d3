//! Exact maximum clique by branch and bound with a greedy-colouring bound
//! (Tomita–Seki MCQ style) over bitset rows.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Sorted ascending.
    pub witness: Vec<usize>,
}

struct Search<'a> {
    g: &'a SimpleGraph,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p` in ascending vertex order. Returns
    /// vertices with their colour, sorted by colour (1-based).
    fn colour(&self, p: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::with_capacity(p.count_ones(..));
        let mut colour = 0;
        while !uncoloured.is_clear() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.minimum() {
                q.set(v, false);
                q.difference_with(self.g.row(v));
                uncoloured.set(v, false);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut p: FixedBitSet) {
        let order = self.colour(&p);
        for &(v, c) in order.iter().rev() {
            if self.current.len() + c <= self.best.len() {
                return;
            }
            self.current.push(v);
            let mut next = p.clone();
            next.intersect_with(self.g.row(v));
            if next.is_clear() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.set(v, false);
        }
    }
}

/// `ω(Γ)` together with a maximum clique. Deterministic: the first maximum
/// clique met under the fixed expansion order is kept.
pub fn clique_number(g: &SimpleGraph) -> CliqueResult {
    let n = g.n_vertices();
    if n == 0 {
        return CliqueResult { size: 0, witness: Vec::new() };
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut s = Search { g, best: Vec::new(), current: Vec::new() };
    s.expand(all);
    let mut witness = s.best;
    witness.sort_unstable();
    CliqueResult { size: witness.len(), witness }
}
