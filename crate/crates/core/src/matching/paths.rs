//! Inverse-closed paths in `Γ_G` and the passage between perfect matchings
//! and path covers whose endpoints are exactly the self-inverse elements.
//!
//! Write `Ū` for the involutions of `G` together with the identity. For `|G|`
//! even, `|Ū| = 2k` is even, and the following are equivalent:
//!
//! 1. `Γ_G` has a perfect matching;
//! 2. `Γ_G` has `k` vertex-disjoint inverse-closed paths whose endpoint sets
//!    partition `Ū`.
//!
//! [`path_cover_from_matching`] goes from 1 to 2 by walking matched edges and
//! hopping to inverses; [`matching_from_path_cover`] goes back by shortening
//! each path to alternate `x, x⁻¹` ([`compress_path`]) and pairing whatever
//! is left over with its inverse.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{maximum_matching, Matching, MatchingError};
use crate::graph::SimpleGraph;
use crate::group::Group;
use crate::power_graph::{power_adjacent, power_graph};

/// A path `(u_1, ..., u_r)` in a power graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InversePath {
    pub vertices: Vec<usize>,
}

impl InversePath {
    pub fn new(vertices: Vec<usize>) -> Self {
        InversePath { vertices }
    }

    /// Endpoint set `L(P)`.
    pub fn endpoints(&self) -> BTreeSet<usize> {
        [self.vertices.first(), self.vertices.last()].into_iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Distinct vertices, consecutive ones adjacent in `Γ_G`.
    pub fn check_path(&self, g: &Group) -> Result<(), MatchingError> {
        let n = g.order();
        if self.vertices.is_empty() {
            return Err(MatchingError::InvalidPath("empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &self.vertices {
            if v >= n {
                return Err(MatchingError::InvalidPath(format!("{v} is not an element")));
            }
            if seen[v] {
                return Err(MatchingError::InvalidPath(format!("{v} repeats")));
            }
            seen[v] = true;
        }
        for w in self.vertices.windows(2) {
            if !power_adjacent(g, w[0], w[1]) {
                return Err(MatchingError::InvalidPath(format!("{} and {} are not adjacent", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// First vertex whose inverse is missing, if any.
    pub fn inverse_gap(&self, g: &Group) -> Option<usize> {
        let set: BTreeSet<usize> = self.vertices.iter().copied().collect();
        self.vertices.iter().copied().find(|&x| !set.contains(&g.inv(x)))
    }

    pub fn is_inverse_closed(&self, g: &Group) -> bool {
        self.inverse_gap(g).is_none()
    }

    /// Whether the path reads `(x_1, x_1⁻¹, ..., x_m, x_m⁻¹)`.
    pub fn alternates_inverses(&self, g: &Group) -> bool {
        self.vertices.len().is_multiple_of(2) && self.vertices.chunks(2).all(|c| c[1] == g.inv(c[0]) && c[0] != c[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCover {
    pub paths: Vec<InversePath>,
}

impl PathCover {
    /// `∪ L(P_i)`.
    pub fn endpoint_union(&self) -> BTreeSet<usize> {
        self.paths.iter().flat_map(|p| p.endpoints()).collect()
    }
}

/// Shortens an inverse-closed path of elements of order at least 3 to
/// `(x_1, x_1⁻¹, ..., x_m, x_m⁻¹)` with the same endpoints, using only its
/// own vertices.
///
/// Starting from `x_1 = u_1`, each step looks up the position `l` of the
/// inverse of the current vertex `u_i`, jumps to `u_{max(i, l) + 1}` and
/// records it, until the recorded vertex is `u_r` or `u_r⁻¹`; a final `u_r`
/// is swapped for `u_r⁻¹` so the output ends in `u_r`. The next vertex after
/// either `u_i` or its inverse is adjacent to both, since `⟨x⟩ = ⟨x⁻¹⟩`.
pub fn compress_path(g: &Group, p: &InversePath) -> Result<InversePath, MatchingError> {
    p.check_path(g)?;
    if let Some(&x) = p.vertices.iter().find(|&&x| g.orders()[x] < 3) {
        return Err(MatchingError::SmallOrder(x));
    }
    if let Some(x) = p.inverse_gap(g) {
        return Err(MatchingError::NotInverseClosed(x));
    }
    let u = &p.vertices;
    let r = u.len();
    let pos: BTreeMap<usize, usize> = u.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let last = u[r - 1];
    let last_inv = g.inv(last);

    let mut xs = vec![u[0]];
    let mut i = 0;
    while *xs.last().expect("non-empty") != last && *xs.last().expect("non-empty") != last_inv {
        let l = pos[&g.inv(u[i])];
        i = i.max(l) + 1;
        xs.push(u[i]);
    }
    if *xs.last().expect("non-empty") == last {
        *xs.last_mut().expect("non-empty") = last_inv;
    }

    let out = InversePath::new(xs.iter().flat_map(|&x| [x, g.inv(x)]).collect());
    check_compressed(g, p, &out)?;
    Ok(out)
}

fn check_compressed(g: &Group, input: &InversePath, out: &InversePath) -> Result<(), MatchingError> {
    let post = |what: &str| Err(MatchingError::Postcondition(format!("{what} for input {:?}", input.vertices)));
    if out.check_path(g).is_err() {
        return post("output is not a path");
    }
    if !out.alternates_inverses(g) {
        return post("output does not alternate inverses");
    }
    if out.endpoints() != input.endpoints() {
        return post("endpoints changed");
    }
    let inside: BTreeSet<usize> = input.vertices.iter().copied().collect();
    if !out.vertices.iter().all(|x| inside.contains(x)) {
        return post("output leaves the input vertex set");
    }
    Ok(())
}

/// Checks the path-cover conditions against `G`: exactly `|Ū|/2` paths, each
/// with at least two vertices, valid in `Γ_G`, inverse-closed, pairwise
/// vertex-disjoint, endpoints exactly `Ū`.
pub fn validate_cover(g: &Group, c: &PathCover) -> Result<(), MatchingError> {
    let bad = |s: String| Err(MatchingError::InvalidCover(s));
    let u_bar = g.self_inverse_elements();
    if c.paths.len() * 2 != u_bar.len() {
        return bad(format!("{} paths, expected {}", c.paths.len(), u_bar.len() / 2));
    }
    let mut owner = vec![None; g.order()];
    for (i, p) in c.paths.iter().enumerate() {
        if p.len() < 2 {
            return bad(format!("path {i} has fewer than two vertices"));
        }
        p.check_path(g).or_else(|e| bad(format!("path {i}: {e}")))?;
        if let Some(x) = p.inverse_gap(g) {
            return bad(format!("path {i} is not inverse-closed at {x}"));
        }
        for &v in &p.vertices {
            if let Some(j) = owner[v] {
                return bad(format!("vertex {v} lies on paths {j} and {i}"));
            }
            owner[v] = Some(i);
        }
    }
    if c.endpoint_union() != u_bar {
        return bad("endpoints are not exactly the identity and the involutions".into());
    }
    Ok(())
}

fn check_perfect_in(g: &Group, pg: &SimpleGraph, m: &Matching) -> Result<(), MatchingError> {
    if m.n_vertices != g.order() {
        return Err(MatchingError::NotPerfect { size: m.size(), needed: g.order() / 2 });
    }
    // re-validate against the power graph
    let m = Matching::new(pg, m.edges())?;
    if !m.is_perfect() {
        return Err(MatchingError::NotPerfect { size: m.size(), needed: g.order() / 2 });
    }
    Ok(())
}

/// Extracts `|Ū|/2` vertex-disjoint inverse-closed paths with endpoint set
/// `Ū` from a perfect matching of `Γ_G`.
///
/// Repeatedly take the smallest unused `u ∈ Ū`, follow its matched edge to
/// `x`, and while `x ∉ Ū` hop to `x⁻¹` and follow its matched edge.
pub fn path_cover_from_matching(g: &Group, m: &Matching) -> Result<PathCover, MatchingError> {
    let n = g.order();
    if !n.is_multiple_of(2) {
        return Err(MatchingError::OddOrder(n));
    }
    let pg = power_graph(g).graph;
    check_perfect_in(g, &pg, m)?;
    let cover = extract_paths(g, m)?;
    validate_cover(g, &cover).map_err(|e| MatchingError::Postcondition(e.to_string()))?;
    Ok(cover)
}

fn extract_paths(g: &Group, m: &Matching) -> Result<PathCover, MatchingError> {
    let u_bar = g.self_inverse_elements();
    let mate = m.mates();
    let partner = |v: usize| mate[v].expect("perfect matching covers every vertex");
    let mut open = u_bar.clone();
    let mut visited = vec![false; g.order()];
    let mut paths = Vec::with_capacity(u_bar.len() / 2);
    while let Some(&u) = open.iter().next() {
        let mut path = vec![u];
        visited[u] = true;
        let mut x = partner(u);
        loop {
            if visited[x] {
                return Err(MatchingError::Revisit(x));
            }
            visited[x] = true;
            path.push(x);
            if open.contains(&x) {
                break;
            }
            if u_bar.contains(&x) {
                // a closed endpoint reached again: the walk cannot terminate
                return Err(MatchingError::Revisit(x));
            }
            let xi = g.inv(x);
            if visited[xi] {
                return Err(MatchingError::Revisit(xi));
            }
            visited[xi] = true;
            path.push(xi);
            x = partner(xi);
        }
        open.remove(&u);
        open.remove(&x);
        paths.push(InversePath::new(path));
    }
    Ok(PathCover { paths })
}

/// Rebuilds a perfect matching of `Γ_G` from a valid path cover.
///
/// The path through the identity is replaced by the single edge from `e` to
/// its other endpoint. Every other path `(a, x_1, ..., x_t, b)` has its
/// interior compressed to `(y_1, y_1⁻¹, ..., y_m, y_m⁻¹)` and contributes
/// `{a, y_1}, {y_1⁻¹, y_2}, ..., {y_m⁻¹, b}`. Everything not yet covered is
/// paired with its inverse.
pub fn matching_from_path_cover(g: &Group, c: &PathCover) -> Result<Matching, MatchingError> {
    let n = g.order();
    if !n.is_multiple_of(2) {
        return Err(MatchingError::OddOrder(n));
    }
    validate_cover(g, c)?;
    let pg = power_graph(g).graph;
    let mut edges = Vec::with_capacity(n / 2);
    let mut covered = vec![false; n];
    for p in &c.paths {
        let (a, b) = (p.vertices[0], *p.vertices.last().expect("validated"));
        let mut chain = vec![a];
        if a != 0 && b != 0 {
            let interior = InversePath::new(p.vertices[1..p.len() - 1].to_vec());
            if interior.len() < 2 {
                return Err(MatchingError::ShortInterior(interior.len()));
            }
            chain.extend(compress_path(g, &interior)?.vertices);
        }
        chain.push(b);
        for pair in chain.chunks(2) {
            edges.push((pair[0], pair[1]));
            covered[pair[0]] = true;
            covered[pair[1]] = true;
        }
    }
    for x in 0..n {
        if !covered[x] {
            let xi = g.inv(x);
            if xi == x || covered[xi] {
                return Err(MatchingError::Postcondition(format!("left-over {x} cannot pair with its inverse")));
            }
            edges.push((x, xi));
            covered[x] = true;
            covered[xi] = true;
        }
    }
    let m = Matching::new(&pg, edges).map_err(|e| MatchingError::Postcondition(e.to_string()))?;
    check_perfect_in(g, &pg, &m).map_err(|e| MatchingError::Postcondition(e.to_string()))?;
    Ok(m)
}

/// Pairs every non-identity element of an odd-order group with its inverse.
pub fn near_perfect_matching_odd(g: &Group) -> Result<Matching, MatchingError> {
    let n = g.order();
    if n.is_multiple_of(2) {
        return Err(MatchingError::EvenOrder(n));
    }
    let pg = power_graph(g).graph;
    let edges = (1..n).filter(|&x| x < g.inv(x)).map(|x| (x, g.inv(x)));
    let m = Matching::new(&pg, edges)?;
    debug_assert!(m.is_near_perfect());
    Ok(m)
}

#[derive(Debug, Clone, Serialize)]
pub struct PerfectMatchingReport {
    pub group: String,
    pub order: usize,
    /// `Γ_G` has a perfect matching, i.e. `G` is `(|G|/2)K_2`-optimal.
    pub optimal: bool,
    pub maximum_matching: Matching,
    pub cover: Option<PathCover>,
    pub rebuilt: Option<Matching>,
}

/// Runs both directions of the matching/path-cover equivalence for `G`:
/// maximum matching, then (when perfect) path extraction and rebuild, each
/// result certified.
pub fn check_theorem44(g: &Group) -> Result<PerfectMatchingReport, MatchingError> {
    let n = g.order();
    if !n.is_multiple_of(2) {
        return Err(MatchingError::OddOrder(n));
    }
    let pg = power_graph(g).graph;
    let m = maximum_matching(&pg);
    let (cover, rebuilt) = if m.is_perfect() {
        let cover = path_cover_from_matching(g, &m)?;
        let rebuilt = matching_from_path_cover(g, &cover)?;
        (Some(cover), Some(rebuilt))
    } else {
        (None, None)
    };
    Ok(PerfectMatchingReport {
        group: g.label().to_string(),
        order: n,
        optimal: m.is_perfect(),
        maximum_matching: m,
        cover,
        rebuilt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;

    fn g(s: &str) -> Group {
        construct_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn compress_fixed_point() {
        let z7 = g("Z7");
        let p = InversePath::new(vec![3, 4]);
        assert_eq!(compress_path(&z7, &p).unwrap(), p);
    }

    #[test]
    fn compress_hand_example_in_z5() {
        // (a, b, b⁻¹, a⁻¹) with a = 1, b = 2: x_1 = 1 already equals u_4⁻¹.
        let z5 = g("Z5");
        let out = compress_path(&z5, &InversePath::new(vec![1, 2, 3, 4])).unwrap();
        assert_eq!(out.vertices, vec![1, 4]);
    }

    #[test]
    fn compress_walks_several_steps() {
        // Z9: path 1, 3, 6, 8 with 3 ↔ 6 and 1 ↔ 8 inverse pairs, then 2, 7.
        let z9 = g("Z9");
        let p = InversePath::new(vec![1, 2, 7, 8, 3, 6]);
        p.check_path(&z9).unwrap();
        let out = compress_path(&z9, &p).unwrap();
        // x_1 = 1; l = 3 (8), jump to index 4 (3): that is u_r⁻¹ = 6⁻¹.
        assert_eq!(out.vertices, vec![1, 8, 3, 6]);
    }

    #[test]
    fn compress_rejects_bad_input() {
        let z6 = g("Z6");
        assert_eq!(compress_path(&z6, &InversePath::new(vec![3, 1, 5])), Err(MatchingError::SmallOrder(3)));
        assert!(matches!(compress_path(&z6, &InversePath::new(vec![1, 2])), Err(MatchingError::NotInverseClosed(_))));
        assert!(matches!(compress_path(&z6, &InversePath::new(vec![1, 1])), Err(MatchingError::InvalidPath(_))));
        assert!(matches!(compress_path(&z6, &InversePath::new(vec![])), Err(MatchingError::InvalidPath(_))));
        let z12 = g("Z12");
        // 4 and 3 are not adjacent in Γ_{Z12}
        assert!(matches!(compress_path(&z12, &InversePath::new(vec![4, 3, 9, 8])), Err(MatchingError::InvalidPath(_))));
    }

    /// Enumerates every inverse-closed path of ≤ 6 vertices in Γ_{Z9} avoiding
    /// elements of order < 3 and checks the compression postconditions.
    #[test]
    fn compress_all_short_paths_in_z9() {
        let z9 = g("Z9");
        let pg = power_graph(&z9).graph;
        let verts: Vec<usize> = (1..9).filter(|&x| z9.orders()[x] >= 3).collect();
        let mut checked = 0;
        fn dfs(path: &mut Vec<usize>, verts: &[usize], pg: &SimpleGraph, z: &Group, checked: &mut usize) {
            let p = InversePath::new(path.clone());
            if p.is_inverse_closed(z) {
                let out = compress_path(z, &p).unwrap();
                assert!(out.alternates_inverses(z));
                assert_eq!(out.endpoints(), p.endpoints());
                *checked += 1;
            }
            if path.len() == 6 {
                return;
            }
            for &v in verts {
                if !path.contains(&v) && pg.has_edge(*path.last().unwrap(), v) {
                    path.push(v);
                    dfs(path, verts, pg, z, checked);
                    path.pop();
                }
            }
        }
        for &s in &verts {
            dfs(&mut vec![s], &verts, &pg, &z9, &mut checked);
        }
        assert!(checked > 100, "only {checked} paths");
    }

    #[test]
    fn cyclic_even_single_path() {
        let z = g("Z12");
        let m = maximum_matching(&power_graph(&z).graph);
        let cover = path_cover_from_matching(&z, &m).unwrap();
        assert_eq!(cover.paths.len(), 1);
        assert_eq!(cover.endpoint_union(), BTreeSet::from([0, 6]));
        let rebuilt = matching_from_path_cover(&z, &cover).unwrap();
        assert!(rebuilt.is_perfect());
        // the trivial cover (e, z) also works
        let trivial = PathCover { paths: vec![InversePath::new(vec![0, 6])] };
        assert!(matching_from_path_cover(&z, &trivial).unwrap().is_perfect());
    }

    #[test]
    fn quaternion_single_path() {
        let q = g("Q8");
        let m = maximum_matching(&power_graph(&q).graph);
        let cover = path_cover_from_matching(&q, &m).unwrap();
        assert_eq!(cover.paths.len(), 1);
        assert_eq!(cover.endpoint_union(), q.self_inverse_elements());
    }

    #[test]
    fn dihedral_precondition_fails() {
        let d8 = g("D8");
        let m = maximum_matching(&power_graph(&d8).graph);
        assert_eq!(m.size(), 2);
        assert_eq!(path_cover_from_matching(&d8, &m), Err(MatchingError::NotPerfect { size: 2, needed: 4 }));
    }

    #[test]
    fn cover_validation_errors() {
        let z = g("Z6");
        let empty = PathCover { paths: vec![] };
        assert!(matches!(matching_from_path_cover(&z, &empty), Err(MatchingError::InvalidCover(_))));
        let wrong_ends = PathCover { paths: vec![InversePath::new(vec![0, 1])] };
        assert!(matches!(validate_cover(&z, &wrong_ends), Err(MatchingError::InvalidCover(_))));
        let odd = g("Z5");
        assert_eq!(check_theorem44(&odd).unwrap_err(), MatchingError::OddOrder(5));
    }

    #[test]
    fn theorem44_examples() {
        assert!(check_theorem44(&g("Z12")).unwrap().optimal);
        assert!(!check_theorem44(&g("D10")).unwrap().optimal);
        let r = check_theorem44(&g("Dic3")).unwrap();
        assert!(r.optimal && r.rebuilt.unwrap().is_perfect());
    }

    #[test]
    fn near_perfect_examples() {
        let m = near_perfect_matching_odd(&g("Z7")).unwrap();
        assert_eq!(m.size(), 3);
        assert!(!m.covered().contains(&0));
        assert_eq!(near_perfect_matching_odd(&g("Z15")).unwrap().size(), 7);
        assert_eq!(near_perfect_matching_odd(&g("Z8")), Err(MatchingError::EvenOrder(8)));
    }
}
