//! Embeddings of a pattern graph into power graphs, and the power index.
//!
//! An embedding of `Γ` into `Γ_G` is an injective vertex map sending every
//! edge of `Γ` to an edge of `Γ_G`; non-edges are unconstrained. The
//! backtracking search in [`embed_into_graph`] is exhaustive, so a `None`
//! answer proves that no embedding exists into that particular target.
//!
//! Search details:
//!
//! * pattern vertices are placed in descending-degree order, ties by id;
//! * a candidate must be unused, have large enough degree and be adjacent to
//!   the images of all already-placed neighbours (bitset intersection);
//! * twin vertices (equal open or closed neighbourhoods) take increasing
//!   images, and every twin class must keep enough candidates for its
//!   unplaced members;
//! * once the unplaced vertices span only isolated vertices and disjoint
//!   edges and all see the same placed neighbours, the rest is decided
//!   exactly by one maximum matching.
//!
//! Cheap necessary conditions (vertex and edge counts, degree sequence
//! domination, clique number) run before any search.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::clique::clique_number;
use crate::graph::SimpleGraph;
use crate::group::{are_isomorphic, catalog_for_order, construct_group, Group, GroupSpec};
use crate::matching::maximum_matching;
use crate::number_theory::{self, classify_order, totient};
use crate::par::Exec;
use crate::power_graph::power_graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("pattern has no vertices")]
    EmptyPattern,
    #[error("max order {max_order} is below the pattern's {n} vertices")]
    MaxOrderTooSmall { max_order: usize, n: usize },
    #[error("no catalog group of order at most {0} admits an embedding")]
    NotFound(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),
}

/// An injective map from pattern vertices to group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingWitness {
    /// `map[v]` is the element assigned to pattern vertex `v`.
    pub map: Vec<usize>,
    /// Label of the target group.
    pub group: String,
}

impl EmbeddingWitness {
    /// Checks injectivity, range and edge preservation against `target`.
    pub fn check(&self, pattern: &SimpleGraph, target: &SimpleGraph) -> Result<(), String> {
        check_map(&self.map, pattern, target)
    }

    pub fn check_in_group(&self, pattern: &SimpleGraph, g: &Group) -> Result<(), String> {
        self.check(pattern, &power_graph(g).graph)
    }
}

fn check_map(map: &[usize], pattern: &SimpleGraph, target: &SimpleGraph) -> Result<(), String> {
    if map.len() != pattern.n_vertices() {
        return Err(format!("map covers {} of {} pattern vertices", map.len(), pattern.n_vertices()));
    }
    let mut seen = vec![false; target.n_vertices()];
    for (v, &x) in map.iter().enumerate() {
        if x >= target.n_vertices() {
            return Err(format!("vertex {v} maps to {x}, outside the target"));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(format!("element {x} is used twice"));
        }
    }
    match pattern.edges().find(|&(u, v)| !target.has_edge(map[u], map[v])) {
        Some((u, v)) => Err(format!("edge {{{u}, {v}}} maps to the non-edge {{{}, {}}}", map[u], map[v])),
        None => Ok(()),
    }
}

struct VertexMap<'a>(&'a [usize]);

impl Serialize for VertexMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (v, x) in self.0.iter().enumerate() {
            m.serialize_entry(&v.to_string(), x)?;
        }
        m.end()
    }
}

impl Serialize for EmbeddingWitness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("group", &self.group)?;
        m.serialize_entry("map", &VertexMap(&self.map))?;
        m.end()
    }
}

impl fmt::Display for EmbeddingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "into {}:", self.group)?;
        for (v, x) in self.map.iter().enumerate() {
            write!(f, " {v}->{x}")?;
        }
        Ok(())
    }
}

struct Plan {
    order: Vec<usize>,
    class: Vec<usize>,
    n_classes: usize,
}

fn twins(p: &SimpleGraph, u: usize, v: usize) -> bool {
    let (mut a, mut b) = (p.row(u).clone(), p.row(v).clone());
    if p.has_edge(u, v) {
        a.insert(u);
        b.insert(v);
    }
    a == b
}

impl Plan {
    fn new(p: &SimpleGraph) -> Plan {
        let n = p.n_vertices();
        let deg = p.degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        let mut class = vec![usize::MAX; n];
        let mut n_classes = 0;
        for v in 0..n {
            if class[v] != usize::MAX {
                continue;
            }
            class[v] = n_classes;
            for (u, c) in class.iter_mut().enumerate().skip(v + 1) {
                if *c == usize::MAX && twins(p, u, v) {
                    *c = n_classes;
                }
            }
            n_classes += 1;
        }
        Plan { order, class, n_classes }
    }
}

enum Tail {
    Done(Vec<usize>),
    Impossible,
}

struct Search<'a> {
    p: &'a SimpleGraph,
    t: &'a SimpleGraph,
    plan: Plan,
    deg_ok: Vec<FixedBitSet>,
    map: Vec<Option<usize>>,
    mapped: FixedBitSet,
    used: FixedBitSet,
    class_last: Vec<Option<usize>>,
    complete_tails: bool,
}

type Sink<'s> = dyn FnMut(Vec<usize>) -> ControlFlow<()> + 's;

impl<'a> Search<'a> {
    fn new(p: &'a SimpleGraph, t: &'a SimpleGraph, complete_tails: bool) -> Self {
        let tdeg = t.degrees();
        let deg_ok = (0..p.n_vertices())
            .map(|v| {
                let d = p.degree(v);
                let mut ok = FixedBitSet::with_capacity(t.n_vertices());
                ok.extend((0..t.n_vertices()).filter(|&x| tdeg[x] >= d));
                ok
            })
            .collect();
        let plan = Plan::new(p);
        Search {
            p,
            t,
            deg_ok,
            map: vec![None; p.n_vertices()],
            mapped: FixedBitSet::with_capacity(p.n_vertices()),
            used: FixedBitSet::with_capacity(t.n_vertices()),
            class_last: vec![None; plan.n_classes],
            plan,
            complete_tails,
        }
    }

    fn domain(&self, v: usize) -> FixedBitSet {
        let mut c = self.deg_ok[v].clone();
        c.difference_with(&self.used);
        for u in self.p.neighbors(v) {
            if let Some(x) = self.map[u] {
                c.intersect_with(self.t.row(x));
            }
        }
        if let Some(last) = self.class_last[self.plan.class[v]] {
            c.set_range(..last + 1, false);
        }
        c
    }

    /// Every twin class keeps at least as many candidates as it has
    /// unplaced members.
    fn feasible(&self, depth: usize) -> bool {
        let mut remaining = vec![0usize; self.plan.n_classes];
        let mut first = vec![None; self.plan.n_classes];
        for &v in &self.plan.order[depth..] {
            let c = self.plan.class[v];
            remaining[c] += 1;
            first[c].get_or_insert(v);
        }
        (0..self.plan.n_classes).all(|c| match first[c] {
            None => true,
            Some(v) => self.domain(v).count_ones(..) >= remaining[c],
        })
    }

    fn tail(&self, depth: usize) -> Option<Tail> {
        let rest = &self.plan.order[depth..];
        let n = self.p.n_vertices();
        let mut unmapped = FixedBitSet::with_capacity(n);
        unmapped.extend(rest.iter().copied());
        let key = |v: usize| {
            let mut k = self.p.row(v).clone();
            k.intersect_with(&self.mapped);
            k
        };
        let k0 = key(rest[0]);
        for &v in rest {
            if self.p.row(v).intersection(&unmapped).count() > 1 || key(v) != k0 {
                return None;
            }
        }
        let mut allowed = FixedBitSet::with_capacity(self.t.n_vertices());
        allowed.insert_range(..);
        allowed.difference_with(&self.used);
        for u in k0.ones() {
            allowed.intersect_with(self.t.row(self.map[u].expect("key holds placed vertices")));
        }
        let verts: Vec<usize> = allowed.ones().collect();
        if verts.len() < rest.len() {
            return Some(Tail::Impossible);
        }
        let pairs: Vec<(usize, usize)> = rest
            .iter()
            .flat_map(|&v| self.p.row(v).intersection(&unmapped).filter(move |&u| v < u).map(move |u| (v, u)))
            .collect();
        let mut map = self.map.clone();
        let mut taken = FixedBitSet::with_capacity(self.t.n_vertices());
        if !pairs.is_empty() {
            let mut index = vec![usize::MAX; self.t.n_vertices()];
            for (i, &x) in verts.iter().enumerate() {
                index[x] = i;
            }
            let mut sub = SimpleGraph::empty(verts.len());
            for (i, &x) in verts.iter().enumerate() {
                for y in self.t.row(x).intersection(&allowed).filter(|&y| x < y) {
                    sub.add_edge(i, index[y]).expect("distinct fresh edge");
                }
            }
            let m = maximum_matching(&sub);
            if m.size() < pairs.len() {
                return Some(Tail::Impossible);
            }
            for (&(a, b), (i, j)) in pairs.iter().zip(m.edges()) {
                map[a] = Some(verts[i]);
                map[b] = Some(verts[j]);
                taken.insert(verts[i]);
                taken.insert(verts[j]);
            }
        }
        let mut free = verts.iter().copied().filter(|&x| !taken.contains(x));
        for &v in rest {
            if map[v].is_none() {
                map[v] = Some(free.next().expect("enough allowed vertices"));
            }
        }
        Some(Tail::Done(map.into_iter().map(|x| x.expect("all placed")).collect()))
    }

    fn extend(&mut self, depth: usize, sink: &mut Sink<'_>) -> ControlFlow<()> {
        if depth == self.plan.order.len() {
            return sink(self.map.iter().map(|x| x.expect("all placed")).collect());
        }
        if self.complete_tails {
            match self.tail(depth) {
                Some(Tail::Done(map)) => return sink(map),
                Some(Tail::Impossible) => return ControlFlow::Continue(()),
                None => {}
            }
        }
        let v = self.plan.order[depth];
        let c = self.plan.class[v];
        let saved = self.class_last[c];
        for x in self.domain(v).ones() {
            self.map[v] = Some(x);
            self.mapped.insert(v);
            self.used.insert(x);
            self.class_last[c] = Some(x);
            let r = if self.feasible(depth + 1) { self.extend(depth + 1, sink) } else { ControlFlow::Continue(()) };
            self.map[v] = None;
            self.mapped.set(v, false);
            self.used.set(x, false);
            if r.is_break() {
                self.class_last[c] = saved;
                return r;
            }
        }
        self.class_last[c] = saved;
        ControlFlow::Continue(())
    }
}

fn sorted_desc(mut d: Vec<usize>) -> Vec<usize> {
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Necessary conditions for an embedding to exist.
fn passes_prefilters(p: &SimpleGraph, t: &SimpleGraph) -> bool {
    if p.n_vertices() > t.n_vertices() || p.edge_count() > t.edge_count() {
        return false;
    }
    let (pd, td) = (sorted_desc(p.degrees()), sorted_desc(t.degrees()));
    if pd.iter().zip(&td).any(|(a, b)| a > b) {
        return false;
    }
    // cliques are only worth computing when the pattern has a triangle
    let has_triangle = p.edges().any(|(u, v)| p.row(u).intersection(p.row(v)).next().is_some());
    !has_triangle || clique_number(p).size <= clique_number(t).size
}

/// Searches for an embedding of `pattern` into an arbitrary `target` graph.
/// `map[v]` is the target vertex of pattern vertex `v`.
pub fn embed_into_graph(pattern: &SimpleGraph, target: &SimpleGraph) -> Option<Vec<usize>> {
    if pattern.n_vertices() == 0 {
        return Some(Vec::new());
    }
    if !passes_prefilters(pattern, target) {
        return None;
    }
    let mut found = None;
    let mut s = Search::new(pattern, target, true);
    if s.feasible(0) {
        let _ = s.extend(0, &mut |m| {
            found = Some(m);
            ControlFlow::Break(())
        });
    }
    if let Some(m) = &found {
        debug_assert_eq!(check_map(m, pattern, target), Ok(()));
    }
    found
}

/// Every embedding of `pattern` into `target`, up to permuting the images of
/// twin pattern vertices, stopping after `limit` maps.
pub fn enumerate_embeddings(pattern: &SimpleGraph, target: &SimpleGraph, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if pattern.n_vertices() > target.n_vertices() || limit == 0 {
        return out;
    }
    let mut s = Search::new(pattern, target, false);
    if s.feasible(0) {
        let _ = s.extend(0, &mut |m| {
            out.push(m);
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    }
    out
}

/// Embedding of `pattern` into `Γ_G`, if any.
pub fn embeds(pattern: &SimpleGraph, g: &Group) -> Option<EmbeddingWitness> {
    if pattern.n_vertices() > g.order() {
        return None;
    }
    let pg = power_graph(g).graph;
    embed_into_graph(pattern, &pg).map(|map| EmbeddingWitness { map, group: g.label().to_string() })
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaResult {
    pub value: usize,
    pub witness: EmbeddingWitness,
    /// Every order below `value` was searched against a complete catalog.
    pub exact: bool,
    pub searched_orders: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ThetaOptions {
    /// Defaults to `ρ(|V|)`, which always suffices.
    pub max_order: Option<usize>,
    pub exec: Exec,
    /// Only try the cyclic group of each order.
    pub cyclic_only: bool,
}

fn cyclic(m: usize) -> Result<Group, EmbeddingError> {
    construct_group(&GroupSpec::Cyclic(m)).map_err(|e| EmbeddingError::Precondition(e.to_string()))
}

/// Least catalog order whose power graph contains `pattern`.
pub fn theta_search(pattern: &SimpleGraph, max_order: Option<usize>, exec: Exec) -> Result<ThetaResult, EmbeddingError> {
    theta_search_with(pattern, &ThetaOptions { max_order, exec, cyclic_only: false })
}

/// [`theta_search`] with all options. With `cyclic_only`, the result is the
/// least cyclic order and `exact` refers to that restricted question.
pub fn theta_search_with(pattern: &SimpleGraph, opts: &ThetaOptions) -> Result<ThetaResult, EmbeddingError> {
    let n = pattern.n_vertices();
    if n == 0 {
        return Err(EmbeddingError::EmptyPattern);
    }
    let max_order = opts.max_order.unwrap_or_else(|| number_theory::rho(n as u64) as usize);
    if max_order < n {
        return Err(EmbeddingError::MaxOrderTooSmall { max_order, n });
    }
    let mut searched = Vec::new();
    let mut exact = true;
    for m in n..=max_order {
        searched.push(m);
        let (groups, complete) = if opts.cyclic_only {
            (vec![Arc::new(cyclic(m)?)], true)
        } else {
            let c = catalog_for_order(m);
            (c.groups.clone(), c.complete)
        };
        if let Some(witness) = opts.exec.find_map_first(&groups, |g| embeds(pattern, g)) {
            return Ok(ThetaResult { value: m, witness, exact, searched_orders: searched });
        }
        exact &= complete;
    }
    Err(EmbeddingError::NotFound(max_order))
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalReport {
    /// Some group of order `|V|` admits an embedding.
    pub critical: bool,
    /// `false` only when no embedding was found and the catalog at `|V|` is
    /// incomplete.
    pub exact: bool,
    pub witness: Option<EmbeddingWitness>,
}

/// Whether `Θ(pattern) = |V(pattern)|`. Prime-power vertex counts go
/// straight to the cyclic group of that order, whose power graph is complete.
pub fn is_power_critical(pattern: &SimpleGraph, exec: Exec) -> Result<CriticalReport, EmbeddingError> {
    let n = pattern.n_vertices();
    if n == 0 {
        return Err(EmbeddingError::EmptyPattern);
    }
    if n == 1 || number_theory::is_prime_power(n as u64) {
        let witness = embeds(pattern, &cyclic(n)?)
            .ok_or_else(|| EmbeddingError::Inconsistent(format!("no embedding into Z{n}")))?;
        return Ok(CriticalReport { critical: true, exact: true, witness: Some(witness) });
    }
    let cat = catalog_for_order(n);
    Ok(match exec.find_map_first(&cat.groups, |g| embeds(pattern, g)) {
        Some(w) => CriticalReport { critical: true, exact: true, witness: Some(w) },
        None => CriticalReport { critical: false, exact: cat.complete, witness: None },
    })
}

/// `Θ(K_n) = min{k : χ_k ≥ n}`.
pub fn theta_complete(n: u64) -> Result<u64, EmbeddingError> {
    if n == 0 {
        return Err(EmbeddingError::Precondition("n must be positive".into()));
    }
    Ok((n..).find(|&k| number_theory::chi(k).expect("k is positive") >= n).expect("χ_ρ = ρ ≥ n"))
}

/// For `n` not a prime power: `Θ(K_n) = n + 1` iff `n + 1` is a prime power
/// or twice an odd prime. Cross-checked against [`theta_complete`].
pub fn theta_kn_equals_nplus1(n: u64) -> Result<bool, EmbeddingError> {
    if n <= 1 || number_theory::is_prime_power(n) {
        return Err(EmbeddingError::Precondition(format!("{n} is 1 or a prime power")));
    }
    let c = classify_order(n + 1).expect("n + 1 is positive");
    let predicted = c.is_prime_power || c.is_twice_odd_prime;
    let direct = theta_complete(n)? == n + 1;
    if predicted != direct {
        return Err(EmbeddingError::Inconsistent(format!("n = {n}: classification {predicted}, direct {direct}")));
    }
    Ok(predicted)
}

fn check_kst(s: usize, t: usize) -> Result<(), EmbeddingError> {
    if s < 2 || s > t {
        return Err(EmbeddingError::Precondition(format!("need 2 <= s <= t, got s = {s}, t = {t}")));
    }
    Ok(())
}

/// `K_{s,t}` is power-critical iff `φ(s+t) ≥ s − 1`.
pub fn is_kst_power_critical(s: usize, t: usize) -> Result<bool, EmbeddingError> {
    check_kst(s, t)?;
    Ok(totient((s + t) as u64).expect("positive") + 1 >= s as u64)
}

/// Places side `U` of `K_{s,t}` on the identity and generators of
/// `Z_{s+t}`, side `W` on the remaining elements.
pub fn embed_kst_cyclic(s: usize, t: usize) -> Result<EmbeddingWitness, EmbeddingError> {
    if !is_kst_power_critical(s, t)? {
        return Err(EmbeddingError::Precondition(format!("φ({}) < {}", s + t, s - 1)));
    }
    let z = cyclic(s + t)?;
    let a = z.generators_and_identity();
    let u_side: Vec<usize> = a.into_iter().take(s).collect();
    let map = u_side.iter().copied().chain((0..s + t).filter(|x| !u_side.contains(x))).collect();
    let w = EmbeddingWitness { map, group: z.label().to_string() };
    w.check_in_group(&SimpleGraph::complete_bipartite(s, t), &z).map_err(EmbeddingError::Inconsistent)?;
    Ok(w)
}

/// The groups of order `s + t` predicted to admit `K_{s,t}` when it is
/// power-critical: `Z_{2^k}` and `Q_{2^k}` for `(2, 2^k − 2)`, `k ≥ 3`,
/// otherwise `Z_{s+t}` alone.
pub fn kst_predicted_optimal(s: usize, t: usize) -> Result<Vec<GroupSpec>, EmbeddingError> {
    if !is_kst_power_critical(s, t)? {
        return Err(EmbeddingError::Precondition(format!("K_{{{s},{t}}} is not power-critical")));
    }
    let n = s + t;
    let mut out = vec![GroupSpec::Cyclic(n)];
    if s == 2 && n >= 8 && n.is_power_of_two() {
        out.push(GroupSpec::Quaternion(n));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct KstOptimal {
    pub order: usize,
    /// Labels of the catalog groups admitting an embedding.
    pub groups: Vec<String>,
    /// The catalog at this order is complete; otherwise the list is only
    /// relative to the catalog.
    pub complete: bool,
    /// The list agrees with [`kst_predicted_optimal`] up to isomorphism.
    pub matches_prediction: bool,
}

/// Catalog groups of order `s + t` whose power graph contains `K_{s,t}`.
pub fn kst_optimal_groups(s: usize, t: usize, exec: Exec) -> Result<KstOptimal, EmbeddingError> {
    let predicted = kst_predicted_optimal(s, t)?;
    let pattern = SimpleGraph::complete_bipartite(s, t);
    let cat = catalog_for_order(s + t);
    let hits = exec.map(&cat.groups, |g| embeds(&pattern, g).is_some());
    let found: Vec<&Arc<Group>> = cat.groups.iter().zip(hits).filter(|(_, h)| *h).map(|(g, _)| g).collect();
    let predicted: Vec<Group> = predicted
        .iter()
        .map(construct_group)
        .collect::<Result<_, _>>()
        .map_err(|e| EmbeddingError::Precondition(e.to_string()))?;
    let matches_prediction = found.len() == predicted.len()
        && predicted.iter().all(|p| found.iter().any(|g| are_isomorphic(g, p)));
    Ok(KstOptimal {
        order: s + t,
        groups: found.iter().map(|g| g.label().to_string()).collect(),
        complete: cat.complete,
        matches_prediction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    /// Largest degree of a non-identity vertex of `Γ_G`.
    pub degree: usize,
    /// `degree ≥ |G| − 1`.
    pub holds: bool,
}

pub fn max_nonidentity_degree(g: &Group) -> Result<DegreeReport, EmbeddingError> {
    if g.order() == 1 {
        return Err(EmbeddingError::Precondition("the trivial group has no non-identity element".into()));
    }
    let pg = power_graph(g).graph;
    let degree = (1..g.order()).map(|x| pg.degree(x)).max().expect("order at least 2");
    Ok(DegreeReport { degree, holds: degree + 1 >= g.order() })
}

/// `K_1 + nK_2` into a group of order `2n + 1`: apex to the identity, each
/// triangle's base to an inverse pair.
pub fn fan_embedding_odd(g: &Group) -> Result<EmbeddingWitness, EmbeddingError> {
    let m = crate::matching::near_perfect_matching_odd(g).map_err(|e| EmbeddingError::Precondition(e.to_string()))?;
    let mut map = vec![0];
    for (x, y) in m.edges() {
        map.extend([x, y]);
    }
    let w = EmbeddingWitness { map, group: g.label().to_string() };
    w.check_in_group(&SimpleGraph::fan_of_triangles(g.order() / 2), g).map_err(EmbeddingError::Inconsistent)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Group {
        construct_group(&s.parse().unwrap()).unwrap()
    }

    /// Plain backtracking with no pruning beyond adjacency.
    fn naive(p: &SimpleGraph, t: &SimpleGraph) -> bool {
        fn go(v: usize, map: &mut Vec<usize>, used: &mut [bool], p: &SimpleGraph, t: &SimpleGraph) -> bool {
            if v == p.n_vertices() {
                return true;
            }
            for x in 0..t.n_vertices() {
                if !used[x] && (0..v).all(|u| !p.has_edge(u, v) || t.has_edge(map[u], x)) {
                    used[x] = true;
                    map.push(x);
                    if go(v + 1, map, used, p, t) {
                        return true;
                    }
                    map.pop();
                    used[x] = false;
                }
            }
            false
        }
        p.n_vertices() <= t.n_vertices() && go(0, &mut Vec::new(), &mut vec![false; t.n_vertices()], p, t)
    }

    #[test]
    fn complete_graph_examples() {
        let k6 = SimpleGraph::complete(6);
        assert!(embeds(&k6, &g("Z7")).is_some());
        assert!(embeds(&k6, &g("Z6")).is_none());
        assert!(embeds(&k6, &g("S3")).is_none());
    }

    #[test]
    fn stars_centre_on_identity() {
        for t in 1..=12 {
            for h in &catalog_for_order(t + 1).groups {
                let w = embeds(&SimpleGraph::star(t), h).unwrap();
                assert_eq!(w.map[0], 0, "{}", h.label());
            }
        }
    }

    #[test]
    fn agrees_with_naive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let targets: Vec<SimpleGraph> = ["Z6", "S3", "Ab[2,2]", "Z8", "D8", "Q8", "Z2", "Z5"]
            .iter()
            .map(|s| power_graph(&g(s)).graph)
            .collect();
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let density = rng.gen_range(0.1..0.9);
            let mut p = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        p.add_edge(u, v).unwrap();
                    }
                }
            }
            for t in &targets {
                let fast = embed_into_graph(&p, t);
                assert_eq!(fast.is_some(), naive(&p, t), "{p:?}");
                if let Some(m) = fast {
                    assert_eq!(check_map(&m, &p, t), Ok(()));
                }
            }
        }
    }

    #[test]
    fn matching_tail_is_exact() {
        // 2K_2 fits in Γ_{Z2×Z2} (a star) only as far as one edge.
        let star = power_graph(&g("Ab[2,2]")).graph;
        assert!(embed_into_graph(&SimpleGraph::one_factor(1), &star).is_some());
        assert!(embed_into_graph(&SimpleGraph::one_factor(2), &star).is_none());
        for k in 1..=8 {
            let w = embeds(&SimpleGraph::one_factor(k), &g(&format!("Z{}", 2 * k))).unwrap();
            w.check_in_group(&SimpleGraph::one_factor(k), &g(&format!("Z{}", 2 * k))).unwrap();
        }
        assert!(embeds(&SimpleGraph::one_factor(4), &g("D8")).is_none());
    }

    #[test]
    fn enumeration_counts_up_to_twins() {
        // K_{1,2} into K_3: centre anywhere, leaves as one unordered pair.
        let t = SimpleGraph::complete(3);
        assert_eq!(enumerate_embeddings(&SimpleGraph::star(2), &t, 100).len(), 3);
        // P_3 has no twins besides its leaves: same count.
        assert_eq!(enumerate_embeddings(&SimpleGraph::path(3), &t, 100).len(), 3);
        assert_eq!(enumerate_embeddings(&SimpleGraph::path(3), &t, 2).len(), 2);
    }

    #[test]
    fn theta_small_values() {
        let r = theta_search(&SimpleGraph::complete(6), None, Exec::Sequential).unwrap();
        assert_eq!((r.value, r.exact), (7, true));
        assert_eq!(r.searched_orders, vec![6, 7]);
        for n in 1..=10 {
            assert_eq!(theta_search(&SimpleGraph::empty(n), None, Exec::Parallel).unwrap().value, n);
        }
        assert_eq!(
            theta_search(&SimpleGraph::complete(6), Some(6), Exec::Sequential).unwrap_err(),
            EmbeddingError::NotFound(6)
        );
        assert!(matches!(
            theta_search(&SimpleGraph::complete(6), Some(5), Exec::Sequential),
            Err(EmbeddingError::MaxOrderTooSmall { .. })
        ));
    }

    #[test]
    fn theta_complete_values() {
        assert_eq!(theta_complete(6).unwrap(), 7);
        assert_eq!(theta_complete(7).unwrap(), 7);
        assert_eq!(theta_complete(14).unwrap(), 16);
        assert_eq!(theta_complete(34).unwrap(), 37);
        assert_eq!(theta_complete(91).unwrap(), 93);
        assert_eq!(theta_complete(1).unwrap(), 1);
        assert!(theta_complete(0).is_err());
    }

    #[test]
    fn theta_kn_plus_one() {
        assert!(theta_kn_equals_nplus1(6).unwrap());
        assert!(!theta_kn_equals_nplus1(14).unwrap());
        assert!(theta_kn_equals_nplus1(21).unwrap());
        assert!(theta_kn_equals_nplus1(8).is_err());
        assert!(theta_kn_equals_nplus1(1).is_err());
    }

    #[test]
    fn kst_criterion_and_constructions() {
        assert!(!is_kst_power_critical(6, 6).unwrap());
        assert!(is_kst_power_critical(2, 3).unwrap());
        assert!(is_kst_power_critical(1, 3).is_err());
        assert!(is_kst_power_critical(4, 3).is_err());
        for (s, t) in [(2, 6), (3, 4), (5, 7)] {
            let w = embed_kst_cyclic(s, t).unwrap();
            w.check_in_group(&SimpleGraph::complete_bipartite(s, t), &g(&format!("Z{}", s + t))).unwrap();
        }
        assert!(embed_kst_cyclic(6, 6).is_err());
    }

    #[test]
    fn kst_optimal_examples() {
        let r = kst_optimal_groups(2, 6, Exec::Parallel).unwrap();
        assert_eq!(r.groups, vec!["Z8", "Q8"]);
        assert!(r.complete && r.matches_prediction);
        assert_eq!(kst_optimal_groups(3, 5, Exec::Sequential).unwrap().groups, vec!["Z8"]);
        assert_eq!(kst_optimal_groups(2, 3, Exec::Sequential).unwrap().groups, vec!["Z5"]);
        assert!(kst_optimal_groups(6, 6, Exec::Sequential).is_err());
    }

    #[test]
    fn critical_examples() {
        let mut p = SimpleGraph::cycle(8);
        p.add_edge(0, 4).unwrap();
        assert!(is_power_critical(&p, Exec::Sequential).unwrap().critical);
        let r = is_power_critical(&SimpleGraph::complete(6), Exec::Sequential).unwrap();
        assert!(!r.critical && r.exact);
        for k in [1, 3, 7, 10] {
            assert!(is_power_critical(&SimpleGraph::fan_of_triangles(k), Exec::Parallel).unwrap().critical);
        }
    }

    #[test]
    fn degree_examples() {
        assert!(max_nonidentity_degree(&g("Z10")).unwrap().holds);
        assert!(max_nonidentity_degree(&g("Q16")).unwrap().holds);
        let d8 = max_nonidentity_degree(&g("D8")).unwrap();
        assert_eq!(d8, DegreeReport { degree: 3, holds: false });
        assert!(max_nonidentity_degree(&g("Z1")).is_err());
    }

    #[test]
    fn fan_witness_for_odd_groups() {
        for s in ["Z1", "Z3", "Z15", "Meta[7,3,2]", "Ab[3,3]"] {
            let h = g(s);
            let w = fan_embedding_odd(&h).unwrap();
            assert_eq!(w.map[0], 0);
        }
        assert!(fan_embedding_odd(&g("Z4")).is_err());
    }

    #[test]
    fn witness_json_shape() {
        let w = EmbeddingWitness { map: vec![0, 2, 1], group: "Z3".into() };
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"group":"Z3","map":{"0":0,"1":2,"2":1}}"#);
        assert!(w.check(&SimpleGraph::path(3), &SimpleGraph::path(3)).is_err());
    }
}
