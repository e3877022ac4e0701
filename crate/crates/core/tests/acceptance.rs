//! Acceptance run: one line per criterion, then a non-zero exit if any failed.
//!
//! Every criterion is an exact integer identity checked against brute force,
//! so there is no numeric tolerance; the time limits below are the only slack.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use zf_lab::generators::GenSpec;
use zf_lab::graph::Graph;
use zf_lab::harness::{run_suite, search_conjecture, SearchConfig, SearchReport, Suite, SuiteConfig, VerifyReport};
use zf_lab::io::parse_graph6;

const SEED: u64 = 1;
const NODE_LIMIT: u64 = 50_000_000;

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Duration,
    run: fn() -> Result<String, String>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn suite(s: Suite, trials: usize, max_n: usize) -> VerifyReport {
    run_suite(s, &SuiteConfig { trials, max_n, seed: SEED, node_limit: NODE_LIMIT })
}

fn all_pass(rep: &VerifyReport, min_instances: usize) -> Result<String, String> {
    let m = &rep.summary;
    let line = format!("{}/{} instances", m.passed, m.instances);
    if m.instances < min_instances {
        return Err(format!("{line}, expected at least {min_instances}"));
    }
    if !rep.all_passed() {
        let first = rep.instances.iter().find(|r| r.outcome != zf_lab::harness::Outcome::Pass).unwrap();
        let bad: Vec<_> = first.checks.iter().filter(|c| !c.pass).map(|c| format!("{} ({} vs {})", c.name, c.expected, c.observed)).collect();
        return Err(format!(
            "{line}, {} failed, {} over budget; first: {:?} {:?} {}",
            m.failed,
            m.budget_exceeded,
            first.instance.graph6,
            first.error,
            bad.join(", ")
        ));
    }
    Ok(line)
}

fn graphs_of(rep: &VerifyReport) -> Vec<Graph> {
    rep.instances.iter().map(|r| parse_graph6(&r.instance.graph6[0]).unwrap()).collect()
}

fn named_graphs() -> Result<String, String> {
    all_pass(&suite(Suite::NamedGraphs, 1, 8), 23)
}

fn block_cycle() -> Result<String, String> {
    let rep = suite(Suite::BlockCycleZp, 100, 14);
    if graphs_of(&rep).iter().any(|g| g.n() > 14) {
        return Err("instance above n = 14".into());
    }
    all_pass(&rep, 100)
}

fn unicyclic() -> Result<String, String> {
    let rep = suite(Suite::UnicyclicZp, 50, 14);
    if graphs_of(&rep).iter().any(|g| g.n() > 14 || g.edge_count() != g.n()) {
        return Err("instance is not unicyclic with n <= 14".into());
    }
    all_pass(&rep, 50)
}

fn double_paths() -> Result<String, String> {
    let rep = suite(Suite::DoublePath, 50, 16);
    let grids = rep.instances.iter().filter(|r| matches!(r.instance.specs[0], GenSpec::Grid { .. })).count();
    if grids != 16 {
        return Err(format!("{grids} grids, expected every m, n <= 4"));
    }
    if graphs_of(&rep).iter().any(|g| g.n() > 16) {
        return Err("instance above n = 16".into());
    }
    all_pass(&rep, 66)
}

fn p2_interval() -> Result<String, String> {
    all_pass(&suite(Suite::P2Interval, 1, 10), 5)
}

fn outerplanar() -> Result<String, String> {
    let rep = suite(Suite::OuterplanarZt, 100, 12);
    if graphs_of(&rep).iter().any(|g| g.n() > 12 || !g.is_connected()) {
        return Err("instance is not connected with n <= 12".into());
    }
    all_pass(&rep, 100)
}

fn vertex_sums() -> Result<String, String> {
    let rep = suite(Suite::VertexSum, 50, 8);
    for r in &rep.instances {
        let sides: Vec<Graph> = r.instance.graph6.iter().map(|s| parse_graph6(s).unwrap()).collect();
        if sides.len() != 2 || sides.iter().any(|g| g.n() > 8) {
            return Err(format!("instance {} is not a pair with n <= 8", r.index));
        }
        // T, Z+ and the composed size at every identification
        let expected = 3 * sides[0].n() * sides[1].n();
        if r.outcome == zf_lab::harness::Outcome::Pass && r.checks.len() != expected {
            return Err(format!("instance {} has {} checks, expected {expected}", r.index, r.checks.len()));
        }
    }
    all_pass(&rep, 50)
}

fn k_clusters() -> Result<String, String> {
    let rep = suite(Suite::KclusterFormulas, 48, 12);
    let seen: BTreeSet<(usize, usize)> = rep
        .instances
        .iter()
        .filter_map(|r| match r.instance.specs[0] {
            GenSpec::KCluster { k, s, .. } => Some((k, s)),
            _ => None,
        })
        .collect();
    for k in 2..=4 {
        for s in [1, 2, 3, k + 1] {
            if !seen.contains(&(k, s)) {
                return Err(format!("no instance with k = {k}, |S| = {s}"));
            }
        }
    }
    if graphs_of(&rep).iter().any(|g| g.n() > 12) {
        return Err("instance above n = 12".into());
    }
    all_pass(&rep, 48)
}

fn odd_k_trees() -> Result<String, String> {
    let rep = suite(Suite::OddKtreeCover, 30, 12);
    if graphs_of(&rep).iter().any(|g| g.n() > 12) {
        return Err("instance above n = 12".into());
    }
    all_pass(&rep, 30)
}

fn chordal() -> Result<String, String> {
    let rep = suite(Suite::ChordalIdentity, 50, 10);
    if graphs_of(&rep).iter().any(|g| g.n() > 10 || !g.is_connected()) {
        return Err("instance is not connected with n <= 10".into());
    }
    all_pass(&rep, 50)
}

fn inequalities() -> Result<String, String> {
    let rep = suite(Suite::InequalityChain, 300, 9);
    if graphs_of(&rep).iter().any(|g| g.n() > 9) {
        return Err("instance above n = 9".into());
    }
    all_pass(&rep, 300)
}

fn conjecture_probe() -> Result<String, String> {
    let cfg = SearchConfig { max_n: 7, seed: SEED, ..SearchConfig::default() };
    let rep = search_conjecture(&cfg);
    let json = serde_json::to_string(&rep).map_err(|e| e.to_string())?;
    let back: SearchReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    if back != rep {
        return Err("report does not round-trip".into());
    }
    if rep.pool.is_empty() || rep.sums == 0 || rep.probe.graphs == 0 {
        return Err(format!("empty report: pool {}, sums {}, probe graphs {}", rep.pool.len(), rep.sums, rep.probe.graphs));
    }
    for c in &rep.counterexamples {
        let sum = parse_graph6(&c.sum).map_err(|e| e.to_string())?;
        if c.z == c.p || sum.n() > 13 {
            return Err(format!("malformed record {c:?}"));
        }
    }
    Ok(format!(
        "report only: {} pool graphs, {} sums, {} with Z != P, {} over budget; probe {} covers, {} not chains",
        rep.pool.len(),
        rep.sums,
        rep.counterexamples.len(),
        rep.budget_exceeded,
        rep.probe.covers,
        rep.probe.covers_not_chains
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "named graphs", limit: secs(10), run: named_graphs },
        Criterion { id: 2, title: "block-cycle Z = P", limit: secs(300), run: block_cycle },
        Criterion { id: 3, title: "unicyclic Z = P", limit: secs(120), run: unicyclic },
        Criterion { id: 4, title: "double paths and grids", limit: secs(180), run: double_paths },
        Criterion { id: 5, title: "P = 2 interval witnesses", limit: secs(120), run: p2_interval },
        Criterion { id: 6, title: "outerplanar Z+ = T", limit: secs(300), run: outerplanar },
        Criterion { id: 7, title: "vertex-sum additivity", limit: secs(300), run: vertex_sums },
        Criterion { id: 8, title: "k-cluster formulas", limit: secs(300), run: k_clusters },
        Criterion { id: 9, title: "odd k-tree cover", limit: secs(120), run: odd_k_trees },
        Criterion { id: 10, title: "chordal Z+ = n - cc", limit: secs(300), run: chordal },
        Criterion { id: 11, title: "inequality chain", limit: secs(300), run: inequalities },
        Criterion { id: 12, title: "conjecture probe", limit: secs(600), run: conjecture_probe },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > c.limit => Err(format!("{msg}; over the time limit")),
            r => r,
        };
        let (tag, msg) = match &result {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!("{tag} {:>2} {:<26} {:>8.2}s (limit {:>3}s)  {msg}", c.id, c.title, took.as_secs_f64(), c.limit.as_secs());
        failed += result.is_err() as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
