use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use power_index::embedding::{
    embeds, is_kst_power_critical, is_power_critical, kst_optimal_groups, theta_complete, theta_search,
    EmbeddingError,
};
use power_index::matching::{check_theorem44, maximum_matching, path_cover_from_matching};
use power_index::number_theory::{chi, rho};
use power_index::par::Exec;
use power_index::verify::{verify_suite, Suite};
use power_index::{construct_group, power_graph, Group, GraphFormat, GroupSpec, SimpleGraph};

/// Power graphs of finite groups and power indices of graphs.
///
/// Groups are written as Z6, Ab[2,4], D12, GDih[3,3], Dic3, Q16, S4, A5,
/// Meta[7,3,2], Prod(D8,Z3) or cayley:PATH. Graph files are edge lists
/// ("n m" then one "u v" per line) or JSON {"n": .., "edges": [[u, v], ..]}.
///
/// Exit status: 0 for success or a true answer, 1 for a false or negative
/// answer, 2 for usage errors and malformed input.
#[derive(Parser)]
#[command(name = "power-index", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run batch work on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clique number of the power graph of Z_N.
    Chi { n: u64 },
    /// Smallest prime power at least N.
    Rho { n: u64 },
    /// Power index of the complete graph K_N.
    ThetaComplete { n: u64 },
    /// Least catalog order whose power graph contains the graph.
    Theta {
        graph: PathBuf,
        /// Largest order to try; defaults to the smallest prime power >= |V|.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Whether the graph embeds into a group of order |V|.
    Critical { graph: PathBuf },
    /// Whether K_{S,T} is power-critical (2 <= S <= T).
    CriticalKst { s: usize, t: usize },
    /// Print the power graph of a group.
    PowerGraph {
        spec: GroupSpec,
        #[arg(long, default_value = "edgelist")]
        format: GraphFormat,
    },
    /// Search for an embedding of the graph into the power graph of a group.
    Embed { graph: PathBuf, spec: GroupSpec },
    /// Maximum matching of the power graph of a group.
    Matching { spec: GroupSpec },
    /// Inverse-closed path cover from a perfect matching (even order).
    PathCover { spec: GroupSpec },
    /// Perfect matching versus path cover equivalence for one group.
    CheckThm44 { spec: GroupSpec },
    /// Groups of order S+T whose power graph contains K_{S,T}.
    KstOptimal { s: usize, t: usize },
    /// Run a verification suite: chi, theta-kn, kst, matching, thm44,
    /// degrees or all.
    Verify {
        suite: Suite,
        /// Suite bound; each suite documents its own default.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Tabulate Theta(K_n) against rho_n for n = 1..=NMAX.
    ScanThetaRho { nmax: u64 },
}

/// What a command prints and how it exits.
struct Outcome {
    text: String,
    json: Value,
    truth: bool,
}

impl Outcome {
    fn new(text: impl Into<String>, json: impl Serialize, truth: bool) -> Result<Outcome> {
        Ok(Outcome { text: text.into(), json: serde_json::to_value(json)?, truth })
    }
}

fn read_graph(path: &Path) -> Result<SimpleGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SimpleGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn build(spec: &GroupSpec) -> Result<Group> {
    construct_group(spec).with_context(|| format!("building {spec}"))
}

fn positive(n: u64) -> Result<u64> {
    if n == 0 {
        bail!("N must be positive");
    }
    Ok(n)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match &cli.command {
        Command::Chi { n } => {
            let v = chi(positive(*n)?)?;
            Outcome::new(v.to_string(), json!({ "n": n, "chi": v }), true)
        }
        Command::Rho { n } => {
            let v = rho(positive(*n)?);
            Outcome::new(v.to_string(), json!({ "n": n, "rho": v }), true)
        }
        Command::ThetaComplete { n } => {
            let v = theta_complete(positive(*n)?)?;
            Outcome::new(v.to_string(), json!({ "n": n, "theta": v }), true)
        }
        Command::Theta { graph, max_order } => {
            let pattern = read_graph(graph)?;
            match theta_search(&pattern, *max_order, exec) {
                Ok(r) => {
                    let kind = if r.exact { "exact" } else { "upper bound, catalog-relative below" };
                    let text = format!("{} ({kind})\nwitness {}", r.value, r.witness);
                    Outcome::new(text, &r, true)
                }
                Err(EmbeddingError::NotFound(m)) => Outcome::new(
                    format!("no embedding into any catalog group of order <= {m}"),
                    json!({ "value": null, "max_order": m }),
                    false,
                ),
                Err(e) => Err(e.into()),
            }
        }
        Command::Critical { graph } => {
            let r = is_power_critical(&read_graph(graph)?, exec)?;
            let mut text = r.critical.to_string();
            if !r.exact {
                text.push_str(" (catalog-relative)");
            }
            if let Some(w) = &r.witness {
                text.push_str(&format!("\nwitness {w}"));
            }
            Outcome::new(text, &r, r.critical)
        }
        Command::CriticalKst { s, t } => {
            let v = is_kst_power_critical(*s, *t)?;
            Outcome::new(v.to_string(), json!({ "s": s, "t": t, "critical": v }), v)
        }
        Command::PowerGraph { spec, format } => {
            let pg = power_graph(&build(spec)?);
            if cli.json {
                let v: Value = serde_json::from_str(&pg.serialize(GraphFormat::Json))?;
                return Outcome::new("", v, true);
            }
            Outcome::new(pg.serialize(*format).trim_end(), Value::Null, true)
        }
        Command::Embed { graph, spec } => {
            let pattern = read_graph(graph)?;
            let g = build(spec)?;
            match embeds(&pattern, &g) {
                Some(w) => Outcome::new(format!("witness {w}"), json!({ "embeds": true, "witness": w }), true),
                None => Outcome::new(
                    format!("no embedding into {}", g.label()),
                    json!({ "embeds": false, "witness": null }),
                    false,
                ),
            }
        }
        Command::Matching { spec } => {
            let g = build(spec)?;
            let m = maximum_matching(&power_graph(&g).graph);
            let best = m.size() == g.order() / 2;
            let kind = match (m.is_perfect(), m.is_near_perfect()) {
                (true, _) => "perfect",
                (_, true) => "near-perfect",
                _ => "neither perfect nor near-perfect",
            };
            let edges: Vec<String> = m.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            let text = format!("{}: size {} on {} vertices, {kind}\n{}", g.label(), m.size(), g.order(), edges.join(" "));
            let js = json!({
                "group": g.label(),
                "order": g.order(),
                "size": m.size(),
                "perfect": m.is_perfect(),
                "near_perfect": m.is_near_perfect(),
                "matching": m,
            });
            Outcome::new(text.trim_end(), js, best)
        }
        Command::PathCover { spec } => {
            let g = build(spec)?;
            if g.order() % 2 == 1 {
                bail!("{} has odd order {}", g.label(), g.order());
            }
            let m = maximum_matching(&power_graph(&g).graph);
            if !m.is_perfect() {
                let text = format!("{}: no perfect matching (maximum size {})", g.label(), m.size());
                return Outcome::new(text, json!({ "group": g.label(), "cover": null }), false);
            }
            let cover = path_cover_from_matching(&g, &m)?;
            let lines: Vec<String> = cover
                .paths
                .iter()
                .map(|p| p.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let text = format!("{}: {} paths\n{}", g.label(), cover.paths.len(), lines.join("\n"));
            Outcome::new(text, json!({ "group": g.label(), "cover": cover }), true)
        }
        Command::CheckThm44 { spec } => {
            let g = build(spec)?;
            let r = check_theorem44(&g)?;
            let text = if r.optimal {
                let paths = r.cover.as_ref().map_or(0, |c| c.paths.len());
                format!("{}: perfect matching found, {paths} covering paths, rebuilt matching certified", r.group)
            } else {
                format!("{}: no perfect matching (maximum size {})", r.group, r.maximum_matching.size())
            };
            let optimal = r.optimal;
            Outcome::new(text, &r, optimal)
        }
        Command::KstOptimal { s, t } => {
            let r = kst_optimal_groups(*s, *t, exec)?;
            let mut text = r.groups.join(" ");
            if !r.complete {
                text.push_str("\n(catalog incomplete at this order; list is catalog-relative)");
            }
            Outcome::new(text, &r, true)
        }
        Command::Verify { suite, max } => {
            let stderr = std::io::stderr();
            let mut progress = |line: &str| {
                let _ = writeln!(stderr.lock(), "[{suite}] {line}");
            };
            let r = verify_suite(*suite, *max, exec, &mut progress);
            eprintln!("[{suite}] finished in {:.2?}", r.wall_time);
            Outcome::new(r.to_string(), &r, r.passed)
        }
        Command::ScanThetaRho { nmax } => {
            let rows: Vec<Value> = (1..=*nmax)
                .map(|n| {
                    let th = theta_complete(n)?;
                    let r = rho(n);
                    Ok(json!({ "n": n, "theta": th, "rho": r, "equal": th == r }))
                })
                .collect::<Result<_>>()?;
            let mut text = String::from("n theta rho equal");
            for row in &rows {
                text.push_str(&format!("\n{} {} {} {}", row["n"], row["theta"], row["rho"], row["equal"]));
            }
            let equal = rows.iter().filter(|r| r["equal"] == true).count();
            text.push_str(&format!("\n{equal} of {nmax} have theta = rho"));
            Outcome::new(text, rows, true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            if out.truth {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
