//! Exact isomorphism testing for the small groups the catalog handles.
//!
//! Groups are first compared by a fingerprint (multiset of per-element
//! invariants). Only on a fingerprint collision do we run a backtracking
//! search that maps a generating sequence of one group onto elements of the
//! other with matching invariants, extending to a full homomorphism by
//! closing over right multiplication by the generators.

use super::Group;

/// Isomorphism-invariant data attached to one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementInvariant {
    pub order: usize,
    pub centralizer: usize,
    /// Number of `y` with `y² = x`.
    pub square_roots: usize,
    /// Number of `y` whose cyclic subgroup contains `x`.
    pub cyclic_overgroups: usize,
}

pub fn element_invariants(g: &Group) -> Vec<ElementInvariant> {
    let n = g.order();
    let mut roots = vec![0; n];
    let mut above = vec![0; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
        for z in g.cyclic_subgroup(y) {
            above[z] += 1;
        }
    }
    (0..n)
        .map(|x| ElementInvariant {
            order: g.orders()[x],
            centralizer: (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count(),
            square_roots: roots[x],
            cyclic_overgroups: above[x],
        })
        .collect()
}

/// Sorted invariant multiset; equal for isomorphic groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint(Vec<ElementInvariant>);

impl Fingerprint {
    pub fn of(g: &Group) -> Fingerprint {
        Self::from_invariants(&element_invariants(g))
    }

    fn from_invariants(inv: &[ElementInvariant]) -> Fingerprint {
        let mut v = inv.to_vec();
        v.sort_unstable();
        Fingerprint(v)
    }
}

/// Decides whether `g ≅ h`.
pub fn are_isomorphic(g: &Group, h: &Group) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let (ig, ih) = (element_invariants(g), element_invariants(h));
    if Fingerprint::from_invariants(&ig) != Fingerprint::from_invariants(&ih) {
        return false;
    }
    find_isomorphism(g, h, &ig, &ih).is_some()
}

/// Greedy generating sequence: repeatedly add the element outside the current
/// subgroup with the rarest invariant, breaking ties by larger order then
/// smaller identifier.
fn generating_sequence(g: &Group, inv: &[ElementInvariant]) -> Vec<usize> {
    let n = g.order();
    let mut class_size = std::collections::HashMap::new();
    for i in inv {
        *class_size.entry(*i).or_insert(0usize) += 1;
    }
    let mut in_sub = vec![false; n];
    in_sub[0] = true;
    let mut members = vec![0];
    let mut gens = Vec::new();
    while members.len() < n {
        let next = (0..n)
            .filter(|&x| !in_sub[x])
            .min_by_key(|&x| (class_size[&inv[x]], std::cmp::Reverse(inv[x].order), x))
            .expect("proper subgroup has a complement");
        gens.push(next);
        // close under right multiplication by all generators
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if !in_sub[y] {
                    in_sub[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

struct Search<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<usize>,
    images: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl Search<'_> {
    /// Closes the partial map under `x ↦ x·g_j` for the generators placed so
    /// far. Returns false on an inconsistency; newly mapped elements are left
    /// on `self.mapped` past `mark` for rollback.
    fn close(&mut self) -> bool {
        let mut i = 0;
        while i < self.mapped.len() {
            let x = self.mapped[i];
            let fx = self.map[x].expect("mapped");
            for j in 0..self.images.len() {
                let y = self.g.mul(x, self.gens[j]);
                let fy = self.h.mul(fx, self.images[j]);
                match self.map[y] {
                    Some(v) if v == fy => {}
                    Some(_) => return false,
                    None => {
                        if self.used[fy] {
                            return false;
                        }
                        self.map[y] = Some(fy);
                        self.used[fy] = true;
                        self.mapped.push(y);
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        for y in self.mapped.drain(mark..) {
            let fy = self.map[y].take().expect("mapped");
            self.used[fy] = false;
        }
    }

    fn extend(&mut self, ig: &[ElementInvariant], ih: &[ElementInvariant]) -> bool {
        let depth = self.images.len();
        if depth == self.gens.len() {
            return self.mapped.len() == self.g.order();
        }
        let target = ig[self.gens[depth]];
        for cand in 0..self.h.order() {
            if ih[cand] != target || self.used[cand] {
                continue;
            }
            let mark = self.mapped.len();
            self.images.push(cand);
            if self.close() && self.extend(ig, ih) {
                return true;
            }
            self.images.pop();
            self.rollback(mark);
        }
        false
    }
}

fn find_isomorphism(
    g: &Group,
    h: &Group,
    ig: &[ElementInvariant],
    ih: &[ElementInvariant],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    map[0] = Some(0);
    used[0] = true;
    let mut s = Search {
        g,
        h,
        gens: generating_sequence(g, ig),
        images: Vec::new(),
        map,
        used,
        mapped: vec![0],
    };
    if s.extend(ig, ih) {
        Some(s.map.into_iter().map(|x| x.expect("total")).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;

    fn g(s: &str) -> Group {
        construct_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn known_isomorphisms() {
        for (a, b) in [
            ("S3", "D6"),
            ("Ab[2,3]", "Z6"),
            ("Dic1", "Z4"),
            ("Q8", "Dic2"),
            ("GDih[3]", "D6"),
            ("D4", "Ab[2,2]"),
            ("Prod(Z2,Z2)", "Ab[2,2]"),
            ("Prod(Z3,D6)", "Prod(S3,Z3)"),
            ("A3", "Z3"),
            ("Meta[3,4,2]", "Dic3"),
            ("Prod(D6,Z2)", "D12"),
            ("GDih[2,2]", "Ab[2,2,2]"),
        ] {
            assert!(are_isomorphic(&g(a), &g(b)), "{a} vs {b}");
        }
    }

    #[test]
    fn known_non_isomorphisms() {
        for (a, b) in [
            ("D8", "Q8"),
            ("Z8", "Ab[2,4]"),
            ("A4", "D12"),
            ("Dic3", "D12"),
            ("Prod(D8,Z2)", "Prod(Q8,Z2)"),
            ("Meta[5,4,2]", "Dic5"),
            ("S4", "Prod(A4,Z2)"),
        ] {
            assert!(!are_isomorphic(&g(a), &g(b)), "{a} vs {b}");
        }
    }

    #[test]
    fn isomorphism_is_a_bijective_homomorphism() {
        let (a, b) = (g("Prod(Z3,D6)"), g("Prod(S3,Z3)"));
        let (ia, ib) = (element_invariants(&a), element_invariants(&b));
        let phi = find_isomorphism(&a, &b, &ia, &ib).unwrap();
        let mut seen = vec![false; b.order()];
        for &y in &phi {
            assert!(!seen[y]);
            seen[y] = true;
        }
        for x in 0..a.order() {
            for y in 0..a.order() {
                assert_eq!(phi[a.mul(x, y)], b.mul(phi[x], phi[y]));
            }
        }
    }
}
