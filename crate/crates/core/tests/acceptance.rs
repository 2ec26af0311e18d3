//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Arithmetic is re-derived here from sieves so that the library's
//! number theory is checked against an independent source.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use power_index::clique::clique_number;
use power_index::embedding::{
    embeds, fan_embedding_odd, is_kst_power_critical, is_power_critical, kst_optimal_groups, max_nonidentity_degree,
    theta_complete, theta_search,
};
use power_index::group::GroupSpec;
use power_index::matching::{
    check_theorem44, compress_path, maximum_matching, maximum_matching_exhaustive, near_perfect_matching_odd,
    validate_cover, InversePath,
};
use power_index::number_theory::{chi, rho};
use power_index::par::Exec;
use power_index::{catalog_for_order, construct_group, power_graph, Group, SimpleGraph};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Least prime factor and totient tables up to `n`.
struct Sieve {
    lpf: Vec<u64>,
    phi: Vec<u64>,
}

impl Sieve {
    fn new(n: usize) -> Sieve {
        let mut lpf = vec![0u64; n + 1];
        let mut phi: Vec<u64> = (0..=n as u64).collect();
        for p in 2..=n {
            if lpf[p] == 0 {
                for m in (p..=n).step_by(p) {
                    if lpf[m] == 0 {
                        lpf[m] = p as u64;
                    }
                    phi[m] = phi[m] / p as u64 * (p as u64 - 1);
                }
            }
        }
        Sieve { lpf, phi }
    }

    fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.lpf[n as usize] == n
    }

    fn is_prime_power(&self, mut n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let p = self.lpf[n as usize];
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    fn is_twice_odd_prime(&self, n: u64) -> bool {
        n % 4 == 2 && self.is_prime(n / 2) && n > 2
    }

    /// Sum of φ over the chain n, n/p_1, n/(p_1 p_2), ..., 1 taking the least
    /// prime first.
    fn chi(&self, mut n: u64) -> u64 {
        let mut acc = self.phi[n as usize];
        while n > 1 {
            n /= self.lpf[n as usize];
            acc += self.phi[n as usize];
        }
        acc
    }
}

fn g(spec: GroupSpec) -> Group {
    construct_group(&spec).expect("valid spec")
}

fn all_groups(orders: impl IntoIterator<Item = usize>) -> Vec<std::sync::Arc<Group>> {
    orders.into_iter().flat_map(|m| catalog_for_order(m).groups.clone()).collect()
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    let p = rng.gen_range(0.15..0.85);
    let mut gr = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                gr.add_edge(u, v).unwrap();
            }
        }
    }
    gr
}

fn c1_reference_values() -> Outcome {
    let checks: [(&str, u64, u64); 9] = [
        ("Theta(K_6)", theta_complete(6).unwrap(), 7),
        ("Theta(K_7)", theta_complete(7).unwrap(), 7),
        ("Theta(K_14)", theta_complete(14).unwrap(), 16),
        ("rho_14", rho(14), 16),
        ("chi_36", chi(36).unwrap(), 27),
        ("Theta(K_34)", theta_complete(34).unwrap(), 37),
        ("rho_34", rho(34), 37),
        ("chi_93", chi(93).unwrap(), 91),
        ("Theta(K_91)", theta_complete(91).unwrap(), 93),
    ];
    for (name, got, want) in checks {
        ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    ensure(rho(91) > 93, || format!("rho_91 = {}", rho(91)))?;
    for n in [6, 7] {
        let r = theta_search(&SimpleGraph::complete(n), None, Exec::Parallel).unwrap();
        ensure(r.value == 7 && r.exact, || format!("search Theta(K_{n}) = {}", r.value))?;
    }
    for (s, want) in [(6, 13), (9, 19)] {
        let r = theta_search(&SimpleGraph::complete_bipartite(s, s), None, Exec::Parallel).unwrap();
        ensure(r.value == want && r.exact, || format!("Theta(K_{{{s},{s}}}) = {} exact {}", r.value, r.exact))?;
    }
    Ok("9 closed-form values, K_6, K_7, K_{6,6} = 13 and K_{9,9} = 19 by exact search".into())
}

fn c2_clique_oracle(sieve: &Sieve) -> Outcome {
    for n in 1..=200usize {
        let w = clique_number(&power_graph(&g(GroupSpec::Cyclic(n))).graph).size as u64;
        ensure(w == sieve.chi(n as u64), || format!("Z{n}: clique {w}, chi {}", sieve.chi(n as u64)))?;
    }
    let groups = all_groups(1..=64);
    for h in &groups {
        let w = clique_number(&power_graph(h).graph).size as u64;
        let best = h.orders().iter().map(|&k| sieve.chi(k as u64)).max().unwrap();
        ensure(w == best, || format!("{}: clique {w}, max chi {best}", h.label()))?;
    }
    Ok(format!("200 cyclic groups, {} catalog groups", groups.len()))
}

fn c3_chi_sweep(sieve: &Sieve) -> Outcome {
    for n in 2..=10_000u64 {
        let c = chi(n).unwrap();
        ensure(c == sieve.chi(n), || format!("n = {n}: library {c}, sieve {}", sieve.chi(n)))?;
        let p = sieve.lpf[n as usize];
        ensure(c == sieve.phi[n as usize] + sieve.chi(n / p), || format!("recursion fails at {n}"))?;
        ensure(c <= n && (c == n) == sieve.is_prime_power(n), || format!("bound fails at {n}: {c}"))?;
        ensure((c + 1 == n) == sieve.is_twice_odd_prime(n), || format!("n - 1 case fails at {n}: {c}"))?;
    }
    Ok("2 <= n <= 10000".into())
}

fn c4_kn_plus_one(sieve: &Sieve) -> Outcome {
    let mut count = 0;
    for n in (2..=500u64).filter(|&n| !sieve.is_prime_power(n)) {
        let direct = theta_complete(n).unwrap() == n + 1;
        let predicted = sieve.is_prime_power(n + 1) || sieve.is_twice_odd_prime(n + 1);
        ensure(direct == predicted, || format!("n = {n}: Theta = {}", theta_complete(n).unwrap()))?;
        count += 1;
    }
    Ok(format!("{count} non-prime-power n <= 500"))
}

fn c5_kst_criterion(sieve: &Sieve) -> Outcome {
    let mut pairs = 0;
    for n in 4..=15usize {
        let cat = catalog_for_order(n);
        ensure(cat.complete, || format!("catalog at {n} incomplete"))?;
        for s in 2..=n / 2 {
            let t = n - s;
            let p = SimpleGraph::complete_bipartite(s, t);
            let exists = cat.groups.iter().any(|h| embeds(&p, h).is_some());
            let crit = sieve.phi[n] + 1 >= s as u64;
            ensure(exists == crit, || format!("K_{{{s},{t}}}: search {exists}, criterion {crit}"))?;
            ensure(is_kst_power_critical(s, t).unwrap() == crit, || format!("library criterion at ({s},{t})"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs with s + t <= 15"))
}

fn c6_kst_optimal() -> Outcome {
    for k in [3u32, 4] {
        let n = 1usize << k;
        for (s, want) in [(2, vec![format!("Z{n}"), format!("Q{n}")]), (3, vec![format!("Z{n}")])] {
            let r = kst_optimal_groups(s, n - s, Exec::Parallel).unwrap();
            let mut got = r.groups.clone();
            got.sort();
            let mut want = want;
            want.sort();
            ensure(got == want, || format!("K_{{{s},{}}}: {:?}", n - s, r.groups))?;
        }
    }
    Ok("orders 8 and 16 (order 16 relative to the catalog)".into())
}

fn c7_degrees() -> Outcome {
    let groups = all_groups(2..=64);
    for h in &groups {
        let d = max_nonidentity_degree(h).unwrap();
        let expected = h.is_cyclic() || h.is_generalized_quaternion();
        ensure(d.holds == expected, || format!("{}: degree {}", h.label(), d.degree))?;
    }
    Ok(format!("{} groups of order 2..64", groups.len()))
}

fn c8_matchings() -> Outcome {
    for n in 1..=32 {
        let m = maximum_matching(&power_graph(&g(GroupSpec::Cyclic(2 * n))).graph);
        ensure(m.is_perfect(), || format!("Z{} not perfect", 2 * n))?;
    }
    for n in 1..=16 {
        let m = maximum_matching(&power_graph(&g(GroupSpec::Dicyclic(n))).graph);
        ensure(m.is_perfect(), || format!("Dic{n} not perfect"))?;
    }
    for n in 2..=50 {
        let m = maximum_matching(&power_graph(&g(GroupSpec::Dihedral(2 * n))).graph);
        ensure(!m.is_perfect(), || format!("D{} perfect", 2 * n))?;
    }
    let odd = all_groups((1..=63).step_by(2));
    for h in &odd {
        let m = near_perfect_matching_odd(h).unwrap();
        ensure(m.is_near_perfect() && !m.covered().contains(&0), || h.label().to_string())?;
        let w = fan_embedding_odd(h).unwrap();
        w.check_in_group(&SimpleGraph::fan_of_triangles(h.order() / 2), h).map_err(|e| format!("{}: {e}", h.label()))?;
    }
    Ok(format!("Z_2n and Q_4n to order 64, D_2n for n <= 50, {} odd-order groups", odd.len()))
}

fn c9_path_covers() -> Outcome {
    let (mut optimal, mut paths) = (0, 0);
    let even = all_groups((2..=64).step_by(2));
    for h in &even {
        let r = check_theorem44(h).map_err(|e| format!("{}: {e}", h.label()))?;
        if !r.optimal {
            ensure(r.cover.is_none(), || format!("{}: cover without perfect matching", h.label()))?;
            continue;
        }
        optimal += 1;
        let cover = r.cover.unwrap();
        validate_cover(h, &cover).map_err(|e| format!("{}: {e}", h.label()))?;
        ensure(r.rebuilt.is_some_and(|m| m.is_perfect()), || format!("{}: rebuild not perfect", h.label()))?;
        for p in cover.paths.iter().filter(|p| !p.vertices.contains(&0)) {
            let interior = InversePath::new(p.vertices[1..p.len() - 1].to_vec());
            let out = compress_path(h, &interior).map_err(|e| format!("{}: {e}", h.label()))?;
            out.check_path(h).map_err(|e| e.to_string())?;
            let subset = out.vertices.iter().all(|x| interior.vertices.contains(x));
            ensure(out.alternates_inverses(h) && out.endpoints() == interior.endpoints() && subset, || {
                format!("{}: {:?} -> {:?}", h.label(), interior.vertices, out.vertices)
            })?;
            paths += 1;
        }
    }
    Ok(format!("{} even-order groups, {optimal} with perfect matchings, {paths} paths compressed", even.len()))
}

fn c10_engines() -> Outcome {
    let mut graphs: Vec<(String, SimpleGraph)> =
        all_groups(1..=14).iter().map(|h| (h.label().to_string(), power_graph(h).graph)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let n = rng.gen_range(1..=14);
        graphs.push((format!("random #{i}"), random_graph(&mut rng, n)));
    }
    for (name, gr) in &graphs {
        let a = maximum_matching(gr).size();
        let b = maximum_matching_exhaustive(gr).unwrap().size();
        ensure(a == b, || format!("{name}: blossom {a}, exhaustive {b}"))?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn c11_prime_power_critical() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [8, 9, 16, 25] {
        for i in 0..50 {
            let gr = random_graph(&mut rng, n);
            let r = is_power_critical(&gr, Exec::Parallel).unwrap();
            ensure(r.critical, || format!("graph {i} on {n} vertices"))?;
            let w = r.witness.unwrap();
            let host = g(w.group.parse().unwrap());
            w.check_in_group(&gr, &host).map_err(|e| format!("graph {i} on {n} vertices: {e}"))?;
        }
    }
    Ok("200 graphs, witnesses re-checked".into())
}

fn main() -> ExitCode {
    let sieve = Sieve::new(10_001);
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 reference values", Box::new(c1_reference_values)),
        ("2 clique number oracle", Box::new(|| c2_clique_oracle(&sieve))),
        ("3 chi recursion and bounds", Box::new(|| c3_chi_sweep(&sieve))),
        ("4 Theta(K_n) = n + 1 classification", Box::new(|| c4_kn_plus_one(&sieve))),
        ("5 K_{s,t} criticality by brute force", Box::new(|| c5_kst_criterion(&sieve))),
        ("6 K_{s,t}-optimal groups", Box::new(c6_kst_optimal)),
        ("7 degree |G| - 1 classification", Box::new(c7_degrees)),
        ("8 matchings in power graphs", Box::new(c8_matchings)),
        ("9 matching and path cover equivalence", Box::new(c9_path_covers)),
        ("10 blossom vs exhaustive matching", Box::new(c10_engines)),
        ("11 prime-power graphs are critical", Box::new(c11_prime_power_critical)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{secs:.2}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why} [{secs:.2}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
