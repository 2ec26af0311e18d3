//! Verification sweeps.
//!
//! A suite is a list of claims. Each claim runs a deterministic list of
//! instances, possibly in parallel, and keeps the first failure in instance
//! order as its counterexample. Claims are reported sorted by id.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clique::clique_number;
use crate::embedding::{
    embed_kst_cyclic, embeds, enumerate_embeddings, fan_embedding_odd, is_kst_power_critical, kst_optimal_groups,
    max_nonidentity_degree, theta_complete, theta_kn_equals_nplus1, theta_search_with, ThetaOptions,
};
use crate::graph::SimpleGraph;
use crate::group::{catalog_for_order, construct_group, Group, GroupSpec, PrimeSubgroups};
use crate::matching::{
    check_theorem44, compress_path, maximum_matching, maximum_matching_exhaustive, near_perfect_matching_odd,
    InversePath, EXHAUSTIVE_LIMIT,
};
use crate::number_theory::{self, chi_sum, classify_order, is_prime_power, rho, totient, Factorization};
use crate::par::Exec;
use crate::power_graph::power_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Chi,
    ThetaKn,
    Kst,
    Matching,
    Thm44,
    Degrees,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Chi, Suite::ThetaKn, Suite::Kst, Suite::Matching, Suite::Thm44, Suite::Degrees, Suite::All];

    /// Bound used when `--max` is not given. `All` runs every suite at its
    /// own default.
    pub fn default_max(self) -> Option<usize> {
        match self {
            Suite::Chi => Some(200),
            Suite::ThetaKn => Some(500),
            Suite::Kst => Some(15),
            Suite::Matching | Suite::Thm44 | Suite::Degrees => Some(64),
            Suite::All => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chi => "chi",
            Suite::ThetaKn => "theta-kn",
            Suite::Kst => "kst",
            Suite::Matching => "matching",
            Suite::Thm44 => "thm44",
            Suite::Degrees => "degrees",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        write!(f, "unknown suite '{}' (expected one of: {})", self.0, names.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub statement: String,
    pub instances: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max: Option<usize>,
    pub passed: bool,
    pub claims: Vec<ClaimRecord>,
    /// Kept out of the JSON so that reports are byte-stable.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {} ({} instances): {}", c.id, c.instances, c.statement)?;
            if let Some(ce) = &c.counterexample {
                writeln!(f, "     counterexample: {ce}")?;
            }
        }
        let passed = self.claims.iter().filter(|c| c.passed).count();
        write!(f, "suite {}: {passed}/{} claims passed", self.suite, self.claims.len())
    }
}

struct Ctx<'a> {
    exec: Exec,
    progress: &'a mut dyn FnMut(&str),
    out: Vec<ClaimRecord>,
}

impl Ctx<'_> {
    fn claim<T, F>(&mut self, id: &str, statement: &str, items: Vec<T>, check: F)
    where
        T: Sync,
        F: Fn(&T) -> Result<(), String> + Sync + Send,
    {
        (self.progress)(&format!("{id}: {} instances", items.len()));
        let counterexample = if items.is_empty() {
            Some("no instances within the bound".to_string())
        } else {
            self.exec.map(&items, check).into_iter().find_map(Result::err)
        };
        self.out.push(ClaimRecord {
            id: id.to_string(),
            statement: statement.to_string(),
            instances: items.len(),
            passed: counterexample.is_none(),
            counterexample,
        });
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(spec: GroupSpec) -> Result<Group, String> {
    construct_group(&spec).map_err(|e| e.to_string())
}

fn catalog_groups(orders: impl IntoIterator<Item = usize>) -> Vec<Arc<Group>> {
    orders.into_iter().flat_map(|m| catalog_for_order(m).groups.clone()).collect()
}

/// Runs `suite` with bound `max` (the suite default when `None`).
pub fn verify_suite(suite: Suite, max: Option<usize>, exec: Exec, progress: &mut dyn FnMut(&str)) -> VerificationReport {
    let start = Instant::now();
    let mut ctx = Ctx { exec, progress, out: Vec::new() };
    let run = |s: Suite, ctx: &mut Ctx<'_>| {
        let m = max.or(s.default_max()).expect("concrete suite");
        match s {
            Suite::Chi => chi_suite(ctx, m),
            Suite::ThetaKn => theta_kn_suite(ctx, m),
            Suite::Kst => kst_suite(ctx, m),
            Suite::Matching => matching_suite(ctx, m),
            Suite::Thm44 => thm44_suite(ctx, m),
            Suite::Degrees => degrees_suite(ctx, m),
            Suite::All => unreachable!(),
        }
    };
    if suite == Suite::All {
        for s in &Suite::ALL[..6] {
            run(*s, &mut ctx);
        }
    } else {
        run(suite, &mut ctx);
    }
    let mut claims = ctx.out;
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport {
        suite: suite.name().to_string(),
        max: max.or(suite.default_max()),
        passed: claims.iter().all(|c| c.passed),
        claims,
        wall_time: start.elapsed(),
    }
}

fn max_chi_over_elements(g: &Group) -> u64 {
    g.orders().iter().map(|&k| number_theory::chi(k as u64).expect("orders are positive")).max().unwrap_or(1)
}

fn chi_suite(ctx: &mut Ctx<'_>, max: usize) {
    ctx.claim(
        "chi.clique-cyclic",
        "clique number of the power graph of Z_n equals chi_n",
        (1..=max).collect(),
        |&n| {
            let z = group(GroupSpec::Cyclic(n))?;
            let w = clique_number(&power_graph(&z).graph).size as u64;
            let c = number_theory::chi(n as u64).map_err(|e| e.to_string())?;
            ensure(w == c, || format!("n = {n}: clique number {w}, chi {c}"))
        },
    );
    ctx.claim(
        "chi.clique-catalog",
        "clique number of the power graph of G equals the largest chi over element orders",
        catalog_groups(1..=max.min(64)),
        |g| {
            let w = clique_number(&power_graph(g).graph).size as u64;
            let c = max_chi_over_elements(g);
            ensure(w == c, || format!("{}: clique number {w}, max chi {c}", g.label()))
        },
    );
    let arith_max = 50 * max;
    ctx.claim(
        "chi.recursion",
        "chi_n = phi(n) + chi_{n/p} for p the least prime factor of n",
        (2..=arith_max as u64).collect(),
        |&n| {
            let p = Factorization::of(n).map_err(|e| e.to_string())?.least_prime().expect("n >= 2");
            let lhs = chi_sum(n).map_err(|e| e.to_string())?;
            let rhs = totient(n).map_err(|e| e.to_string())? + chi_sum(n / p).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("n = {n}: {lhs} != {rhs}"))
        },
    );
    ctx.claim(
        "chi.upper-bound",
        "chi_n <= n, with equality exactly for prime powers",
        (2..=arith_max as u64).collect(),
        |&n| {
            let c = chi_sum(n).map_err(|e| e.to_string())?;
            ensure(c <= n && (c == n) == is_prime_power(n), || format!("n = {n}: chi {c}"))
        },
    );
    ctx.claim(
        "chi.twice-odd-prime",
        "chi_n = n - 1 exactly when n is twice an odd prime",
        (2..=arith_max as u64).collect(),
        |&n| {
            let c = chi_sum(n).map_err(|e| e.to_string())?;
            let t = classify_order(n).map_err(|e| e.to_string())?.is_twice_odd_prime;
            ensure((c + 1 == n) == t, || format!("n = {n}: chi {c}"))
        },
    );
}

fn theta_kn_suite(ctx: &mut Ctx<'_>, max: usize) {
    let exec = ctx.exec;
    ctx.claim(
        "theta-kn.plus-one",
        "for n not a prime power, Theta(K_n) = n + 1 exactly when n + 1 is a prime power or twice an odd prime",
        (2..=max as u64).filter(|&n| !is_prime_power(n)).collect(),
        |&n| {
            let predicted = theta_kn_equals_nplus1(n).map_err(|e| e.to_string())?;
            let direct = theta_complete(n).map_err(|e| e.to_string())? == n + 1;
            ensure(predicted == direct, || format!("n = {n}"))
        },
    );
    let small: Vec<usize> = (1..=max.min(40)).collect();
    ctx.claim(
        "theta-kn.cyclic-oracle",
        "embedding search over cyclic groups gives min{k : chi_k >= n} for K_n",
        small.clone(),
        |&n| {
            let opts = ThetaOptions { cyclic_only: true, exec: Exec::Sequential, ..Default::default() };
            let r = theta_search_with(&SimpleGraph::complete(n), &opts).map_err(|e| e.to_string())?;
            let f = theta_complete(n as u64).map_err(|e| e.to_string())?;
            ensure(r.value as u64 == f, || format!("K_{n}: search {}, formula {f}", r.value))
        },
    );
    ctx.claim(
        "theta-kn.cyclic-optimal",
        "embedding search over the whole catalog never beats the cyclic answer for K_n (relative to the catalog where incomplete)",
        small,
        |&n| {
            let opts = ThetaOptions { exec, ..Default::default() };
            let r = theta_search_with(&SimpleGraph::complete(n), &opts).map_err(|e| e.to_string())?;
            let f = theta_complete(n as u64).map_err(|e| e.to_string())?;
            let cyclic = r.witness.group == format!("Z{}", r.value);
            ensure(r.value as u64 == f && cyclic, || {
                format!("K_{n}: {} in {} (exact {}), formula {f}", r.value, r.witness.group, r.exact)
            })
        },
    );
    ctx.claim(
        "theta-kn.reference-values",
        "Theta(K_6) = Theta(K_7) = 7, Theta(K_14) = 16 = rho_14, chi_36 = 27, Theta(K_34) = 37 = rho_34, chi_93 = 91, Theta(K_91) = 93 < rho_91",
        vec![0usize],
        |_| {
            let th = |n| theta_complete(n).expect("n positive");
            let ch = |n| number_theory::chi(n).expect("n positive");
            let checks = [
                ("Theta(K_6)", th(6), 7),
                ("Theta(K_7)", th(7), 7),
                ("Theta(K_14)", th(14), 16),
                ("rho_14", rho(14), 16),
                ("chi_36", ch(36), 27),
                ("Theta(K_34)", th(34), 37),
                ("rho_34", rho(34), 37),
                ("chi_93", ch(93), 91),
                ("Theta(K_91)", th(91), 93),
            ];
            for (name, got, want) in checks {
                ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
            }
            ensure(rho(91) > 93, || format!("rho_91 = {}", rho(91)))
        },
    );
}

fn kst_pairs(max: usize) -> Vec<(usize, usize)> {
    (4..=max).flat_map(|n| (2..=n / 2).map(move |s| (s, n - s))).collect()
}

fn kst_suite(ctx: &mut Ctx<'_>, max: usize) {
    let pairs = kst_pairs(max);
    ctx.claim(
        "kst.criterion",
        "K_{s,t} embeds into some group of order s + t exactly when phi(s + t) >= s - 1 (relative to the catalog where incomplete)",
        pairs.clone(),
        |&(s, t)| {
            let p = SimpleGraph::complete_bipartite(s, t);
            let found = catalog_for_order(s + t).groups.iter().find_map(|g| embeds(&p, g));
            let crit = is_kst_power_critical(s, t).map_err(|e| e.to_string())?;
            ensure(found.is_some() == crit, || {
                format!("K_{{{s},{t}}}: criterion {crit}, search found {:?}", found.map(|w| w.group))
            })
        },
    );
    ctx.claim(
        "kst.cyclic-construction",
        "for critical K_{s,t}, one side on the identity and generators of Z_{s+t} is an embedding",
        pairs.iter().copied().filter(|&(s, t)| is_kst_power_critical(s, t).unwrap_or(false)).collect(),
        |&(s, t)| embed_kst_cyclic(s, t).map(|_| ()).map_err(|e| format!("K_{{{s},{t}}}: {e}")),
    );
    let hosts: Vec<(usize, usize, Arc<Group>)> = pairs
        .iter()
        .flat_map(|&(s, t)| catalog_for_order(s + t).groups.clone().into_iter().map(move |g| (s, t, g)))
        .collect();
    ctx.claim(
        "kst.unique-prime-subgroups",
        "a group of order s + t containing K_{s,t} has one subgroup of each prime order dividing s + t",
        hosts.clone(),
        |(s, t, g)| {
            if embeds(&SimpleGraph::complete_bipartite(*s, *t), g).is_none() {
                return Ok(());
            }
            let f = Factorization::of((s + t) as u64).expect("positive");
            for p in f.primes() {
                let u = g.unique_subgroup_of_prime_order(p).map_err(|e| e.to_string())?;
                ensure(u == PrimeSubgroups::Unique, || format!("{} for K_{{{s},{t}}}: p = {p}", g.label()))?;
            }
            Ok(())
        },
    );
    ctx.claim(
        "kst.cyclic-host",
        "a group of non-prime-power order s + t containing K_{s,t} is cyclic, and every embedding puts one side on the identity and generators",
        hosts.into_iter().filter(|(s, t, _)| !is_prime_power((s + t) as u64)).collect(),
        |(s, t, g)| {
            let pg = power_graph(g).graph;
            let maps = enumerate_embeddings(&SimpleGraph::complete_bipartite(*s, *t), &pg, 5000);
            if maps.is_empty() {
                return Ok(());
            }
            ensure(g.is_cyclic(), || format!("{} contains K_{{{s},{t}}} but is not cyclic", g.label()))?;
            let a = g.generators_and_identity();
            for m in &maps {
                let inside = |side: &[usize]| side.iter().all(|x| a.contains(x));
                ensure(inside(&m[..*s]) || inside(&m[*s..]), || format!("{} K_{{{s},{t}}}: {m:?}", g.label()))?;
            }
            Ok(())
        },
    );
    ctx.claim(
        "kst.square",
        "K_{s,s} is power-critical exactly when s is an odd prime or a power of 2",
        (2..=max.max(100)).collect(),
        |&s| {
            let f = Factorization::of(s as u64).expect("positive");
            let predicted = (f.is_prime() && s % 2 == 1) || s.is_power_of_two();
            let crit = is_kst_power_critical(s, s).map_err(|e| e.to_string())?;
            ensure(crit == predicted, || format!("s = {s}: criterion {crit}"))
        },
    );
    let mut optimal: Vec<(usize, usize)> =
        pairs.iter().copied().filter(|&(s, t)| is_kst_power_critical(s, t).unwrap_or(false)).collect();
    optimal.extend([(2, 6), (3, 5), (2, 14), (3, 13)]);
    optimal.sort_unstable();
    optimal.dedup();
    let exec = ctx.exec;
    ctx.claim(
        "kst.optimal-groups",
        "the groups of order s + t containing a critical K_{s,t} are Z_{2^k} and Q_{2^k} for (2, 2^k - 2), otherwise Z_{s+t} alone",
        optimal,
        |&(s, t)| {
            let r = kst_optimal_groups(s, t, exec).map_err(|e| e.to_string())?;
            ensure(r.matches_prediction, || format!("K_{{{s},{t}}}: found {:?}", r.groups))
        },
    );
    ctx.claim(
        "kst.stars",
        "K_{1,t} embeds into every group of order t + 1",
        catalog_groups(2..=31),
        |g| {
            let t = g.order() - 1;
            ensure(embeds(&SimpleGraph::star(t), g).is_some(), || format!("K_{{1,{t}}} into {}", g.label()))
        },
    );
}

/// `count` graphs with `lo..=hi` vertices and edge density drawn from
/// `[0.1, 0.9)`, reproducible from `seed`.
pub fn random_graphs(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=hi);
            let p = rng.gen_range(0.1..0.9);
            let mut g = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).expect("fresh edge");
                    }
                }
            }
            g
        })
        .collect()
}

fn matching_suite(ctx: &mut Ctx<'_>, max: usize) {
    ctx.claim(
        "matching.cyclic-perfect",
        "the power graph of Z_{2n} has a perfect matching",
        (1..=max / 2).collect(),
        |&n| {
            let m = maximum_matching(&power_graph(&group(GroupSpec::Cyclic(2 * n))?).graph);
            ensure(m.is_perfect(), || format!("Z{}: size {}", 2 * n, m.size()))
        },
    );
    ctx.claim(
        "matching.dicyclic-perfect",
        "the power graph of the dicyclic group Q_{4n} has a perfect matching",
        (1..=max / 4).collect(),
        |&n| {
            let m = maximum_matching(&power_graph(&group(GroupSpec::Dicyclic(n))?).graph);
            ensure(m.is_perfect(), || format!("Dic{n}: size {}", m.size()))
        },
    );
    ctx.claim(
        "matching.dihedral-imperfect",
        "the power graph of D_{2n}, n >= 2, has no perfect matching",
        (2..=(max / 2).max(50)).collect(),
        |&n| {
            let m = maximum_matching(&power_graph(&group(GroupSpec::Dihedral(2 * n))?).graph);
            ensure(!m.is_perfect(), || format!("D{} has a perfect matching", 2 * n))
        },
    );
    let odd: Vec<Arc<Group>> = catalog_groups((1..=max).filter(|m| m % 2 == 1));
    ctx.claim(
        "matching.near-perfect-odd",
        "in a group of odd order, pairing each element with its inverse is a near-perfect matching that misses only the identity, and gives an embedding of K_1 + nK_2",
        odd,
        |g| {
            let m = near_perfect_matching_odd(g).map_err(|e| format!("{}: {e}", g.label()))?;
            let cov = m.covered();
            ensure(m.is_near_perfect() && !cov.contains(&0), || format!("{}: not near-perfect", g.label()))?;
            let w = fan_embedding_odd(g).map_err(|e| format!("{}: {e}", g.label()))?;
            w.check_in_group(&SimpleGraph::fan_of_triangles(g.order() / 2), g)
                .map_err(|e| format!("{}: {e}", g.label()))
        },
    );
    let mut graphs: Vec<(String, SimpleGraph)> = catalog_groups(1..=14)
        .iter()
        .map(|g| (g.label().to_string(), power_graph(g).graph))
        .collect();
    graphs.extend(random_graphs(2024, 100, 1, 14).into_iter().enumerate().map(|(i, g)| (format!("random #{i}"), g)));
    ctx.claim(
        "matching.engines-agree",
        "blossom and exhaustive maximum matchings have equal size",
        graphs,
        |(name, g)| {
            debug_assert!(g.n_vertices() <= EXHAUSTIVE_LIMIT);
            let a = maximum_matching(g).size();
            let b = maximum_matching_exhaustive(g).expect("small graph").size();
            ensure(a == b, || format!("{name}: blossom {a}, exhaustive {b}"))
        },
    );
}

fn thm44_suite(ctx: &mut Ctx<'_>, max: usize) {
    let even: Vec<Arc<Group>> = catalog_groups((2..=max).filter(|m| m % 2 == 0));
    ctx.claim(
        "thm44.equivalence",
        "a perfect matching of the power graph yields an inverse-closed path cover with endpoints the identity and involutions, which rebuilds a perfect matching",
        even.clone(),
        |g| {
            let r = check_theorem44(g).map_err(|e| format!("{}: {e}", g.label()))?;
            let consistent = r.optimal == r.cover.is_some() && r.optimal == r.rebuilt.is_some();
            ensure(consistent, || format!("{}: inconsistent report", g.label()))
        },
    );
    // (group label, path) for every cover path that avoids the identity
    let paths: Vec<(Arc<Group>, InversePath)> = ctx
        .exec
        .map(&even, |g| {
            let cover = check_theorem44(g).ok().and_then(|r| r.cover);
            cover
                .map(|c| c.paths.into_iter().filter(|p| !p.vertices.contains(&0)).map(|p| (Arc::clone(g), p)).collect::<Vec<_>>())
                .unwrap_or_default()
        })
        .into_iter()
        .flatten()
        .collect();
    ctx.claim(
        "thm44.interior-length",
        "every cover path avoiding the identity has at least two interior vertices, none of them self-inverse",
        paths.clone(),
        |(g, p)| {
            let interior = &p.vertices[1..p.len() - 1];
            ensure(interior.len() >= 2, || format!("{}: {:?}", g.label(), p.vertices))?;
            ensure(interior.iter().all(|&x| g.inv(x) != x), || format!("{}: {:?}", g.label(), p.vertices))
        },
    );
    ctx.claim(
        "thm44.compress",
        "compressing a path interior gives (x_1, x_1^-1, ..., x_m, x_m^-1) on a subset of its vertices with the same endpoints",
        paths,
        |(g, p)| {
            let interior = InversePath::new(p.vertices[1..p.len() - 1].to_vec());
            let out = compress_path(g, &interior).map_err(|e| format!("{}: {e}", g.label()))?;
            out.check_path(g).map_err(|e| format!("{}: {e}", g.label()))?;
            let subset = out.vertices.iter().all(|x| interior.vertices.contains(x));
            ensure(out.alternates_inverses(g) && out.endpoints() == interior.endpoints() && subset, || {
                format!("{}: {:?} -> {:?}", g.label(), interior.vertices, out.vertices)
            })
        },
    );
}

fn degrees_suite(ctx: &mut Ctx<'_>, max: usize) {
    ctx.claim(
        "degrees.classification",
        "some non-identity vertex has degree |G| - 1 exactly when G is cyclic or generalized quaternion",
        catalog_groups(2..=max),
        |g| {
            let d = max_nonidentity_degree(g).map_err(|e| e.to_string())?;
            let expected = g.is_cyclic() || g.is_generalized_quaternion();
            ensure(d.holds == expected, || format!("{}: degree {}, holds {}", g.label(), d.degree, d.holds))
        },
    );
}
