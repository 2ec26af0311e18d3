// Edmonds' blossom algorithm, O(V^3): BFS for an augmenting path from each
// exposed vertex, contracting odd cycles by relabelling their base.

use std::collections::VecDeque;

use super::Matching;
use crate::graph::SimpleGraph;

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n_vertices()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("matched vertex on an alternating tree"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.mate[b].expect("walk reaches the common ancestor first");
            b = self.parent[m].expect("matched vertex on an alternating tree");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("blossom path alternates");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("blossom path alternates");
        }
    }

    /// Returns the exposed endpoint of an augmenting path from `root`.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n_vertices();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let outer = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Maximum-cardinality matching of a general graph.
pub fn maximum_matching(g: &SimpleGraph) -> Matching {
    let n = g.n_vertices();
    let mut b = Blossom {
        g,
        mate: vec![None; n],
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
    };
    // greedy warm start
    for v in 0..n {
        if b.mate[v].is_none() {
            if let Some(u) = g.neighbors(v).find(|&u| b.mate[u].is_none()) {
                b.mate[v] = Some(u);
                b.mate[u] = Some(v);
            }
        }
    }
    for root in 0..n {
        if b.mate[root].is_some() {
            continue;
        }
        let mut v = b.find_path(root);
        while let Some(x) = v {
            let pv = b.parent[x].expect("augmenting path vertex has a parent");
            let ppv = b.mate[pv];
            b.mate[x] = Some(pv);
            b.mate[pv] = Some(x);
            v = ppv;
        }
    }
    Matching::from_mates(g, &b.mate)
}
