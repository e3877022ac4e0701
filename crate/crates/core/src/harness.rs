//! Property suites over generated instances, and the vertex-sum search.
//!
//! Every instance is planned up front from the suite seed, so a report line
//! replays from its embedded generator specs alone. Instances run in
//! parallel; reports list them in plan order.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_xorshift::XorShiftRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cover::Cover;
use crate::family::{
    block_cycle_solution, chain_roots_for_cover, chordal_psd_identity, compose_vertex_sum, double_path_solution,
    k_cluster_parameters, k_tree_tree_cover_odd, outerplanar_solution, FamilyError, FamilySolution,
};
use crate::forcing::{closure, is_forcing_set, Rule};
use crate::generators::{GenError, GenSpec};
use crate::graph::{Graph, VertexSet};
use crate::io::to_graph6;
use crate::solvers::{minimum_path_covers, solve, Parameter, SolveError, SolverConfig};
use crate::structure::{
    chordal_peo, classify_block_cycle, classify_unicyclic, double_path_certificate, k_tree_certificate,
    outerplanar_embedding, StructureError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    NamedGraphs,
    BlockCycleZp,
    UnicyclicZp,
    DoublePath,
    P2Interval,
    OuterplanarZt,
    VertexSum,
    KclusterFormulas,
    OddKtreeCover,
    ChordalIdentity,
    InequalityChain,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::NamedGraphs,
        Suite::BlockCycleZp,
        Suite::UnicyclicZp,
        Suite::DoublePath,
        Suite::P2Interval,
        Suite::OuterplanarZt,
        Suite::VertexSum,
        Suite::KclusterFormulas,
        Suite::OddKtreeCover,
        Suite::ChordalIdentity,
        Suite::InequalityChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NamedGraphs => "named_graphs",
            Suite::BlockCycleZp => "block_cycle_ZP",
            Suite::UnicyclicZp => "unicyclic_ZP",
            Suite::DoublePath => "double_path",
            Suite::P2Interval => "p2_interval",
            Suite::OuterplanarZt => "outerplanar_ZT",
            Suite::VertexSum => "vertex_sum",
            Suite::KclusterFormulas => "kcluster_formulas",
            Suite::OddKtreeCover => "odd_ktree_cover",
            Suite::ChordalIdentity => "chordal_identity",
            Suite::InequalityChain => "inequality_chain",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
    /// Search-node limit handed to every exact solver call.
    pub node_limit: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 50, max_n: 12, seed: 0, node_limit: SolverConfig::default().node_limit }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub specs: Vec<GenSpec>,
    pub graph6: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub suite: String,
    pub index: usize,
    pub instance: Instance,
    pub checks: Vec<Check>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub budget_exceeded: usize,
    pub millis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub summary: Summary,
    pub instances: Vec<InstanceReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.budget_exceeded == 0
    }

    /// 0 when every instance passed, 1 on any failure, 3 when the only
    /// problems were exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.budget_exceeded > 0 {
            3
        } else {
            0
        }
    }

    /// One line per instance, then the summary.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.instances {
            out.push_str(&serde_json::to_string(r).expect("reports serialise"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&json!({ "summary": self.summary })).expect("reports serialise"));
        out.push('\n');
        out
    }
}

/// Why an instance stopped before all checks ran.
enum Stop {
    Budget(String),
    Error(String),
}

impl From<SolveError> for Stop {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExceeded(_) => Stop::Budget(e.to_string()),
            _ => Stop::Error(e.to_string()),
        }
    }
}

impl From<StructureError> for Stop {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::BudgetExceeded(_) => Stop::Budget(e.to_string()),
            _ => Stop::Error(e.to_string()),
        }
    }
}

impl From<FamilyError> for Stop {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Solve(s) => s.into(),
            FamilyError::Structure(s) => s.into(),
            _ => Stop::Error(e.to_string()),
        }
    }
}

impl From<GenError> for Stop {
    fn from(e: GenError) -> Self {
        Stop::Error(e.to_string())
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn eq<T: Serialize + PartialEq>(&mut self, name: impl Into<String>, expected: T, observed: T) {
        let pass = expected == observed;
        self.0.push(Check { name: name.into(), expected: json!(expected), observed: json!(observed), pass });
    }

    fn holds(&mut self, name: impl Into<String>, observed: bool) {
        self.eq(name, true, observed);
    }

    fn le(&mut self, name: impl Into<String>, a: usize, b: usize) {
        self.0.push(Check { name: name.into(), expected: json!(format!("{a} <= {b}")), observed: json!([a, b]), pass: a <= b });
    }
}

struct Ctx {
    cfg: SolverConfig,
}

impl Ctx {
    fn value(&self, g: &Graph, p: Parameter) -> Result<usize, Stop> {
        Ok(solve(g, p, &self.cfg)?.value)
    }
}

/// Plans and runs one suite.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let plan = plan(suite, cfg);
    let ctx = Ctx { cfg: SolverConfig { node_limit: cfg.node_limit, ..SolverConfig::default() } };
    let instances: Vec<InstanceReport> = plan
        .into_par_iter()
        .enumerate()
        .map(|(index, specs)| run_instance(suite, index, specs, &ctx))
        .collect();
    let count = |o: Outcome| instances.iter().filter(|r| r.outcome == o).count();
    let summary = Summary {
        suite: suite.name().to_string(),
        instances: instances.len(),
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        budget_exceeded: count(Outcome::BudgetExceeded),
        millis: start.elapsed().as_secs_f64() * 1e3,
    };
    VerifyReport { summary, instances }
}

fn run_instance(suite: Suite, index: usize, specs: Vec<GenSpec>, ctx: &Ctx) -> InstanceReport {
    let start = Instant::now();
    let graphs: Result<Vec<Graph>, GenError> = specs.iter().map(|s| s.generate()).collect();
    let graph6 = graphs
        .as_ref()
        .map(|gs| gs.iter().map(|g| to_graph6(g).unwrap_or_default()).collect())
        .unwrap_or_default();
    let mut checks = Checks::default();
    let result = match graphs {
        Ok(gs) => check(suite, &specs, &gs, ctx, &mut checks),
        Err(e) => Err(e.into()),
    };
    let (outcome, error) = match result {
        Ok(()) if checks.0.iter().all(|c| c.pass) => (Outcome::Pass, None),
        Ok(()) => (Outcome::Fail, None),
        Err(Stop::Budget(e)) => (Outcome::BudgetExceeded, Some(e)),
        Err(Stop::Error(e)) => (Outcome::Fail, Some(e)),
    };
    InstanceReport {
        suite: suite.name().to_string(),
        index,
        instance: Instance { specs, graph6 },
        checks: checks.0,
        outcome,
        error,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn plan(suite: Suite, cfg: &SuiteConfig) -> Vec<Vec<GenSpec>> {
    let mut r = XorShiftRng::seed_from_u64(cfg.seed);
    let max_n = cfg.max_n.clamp(3, 64);
    let mut out = Vec::new();
    match suite {
        Suite::NamedGraphs => {
            for n in 1..=8 {
                out.push(vec![GenSpec::Path { n }]);
            }
            for n in 2..=8 {
                out.push(vec![GenSpec::Complete { n }]);
            }
            for n in 1..=8 {
                out.push(vec![GenSpec::Tree { n, seed: r.random() }]);
            }
        }
        Suite::BlockCycleZp => {
            while out.len() < cfg.trials {
                let spec = GenSpec::BlockCycle {
                    blocks: r.random_range(1..=6),
                    max_cycle: r.random_range(3..=6),
                    seed: r.random(),
                };
                if spec.generate().is_ok_and(|g| g.n() <= max_n) {
                    out.push(vec![spec]);
                }
            }
        }
        Suite::UnicyclicZp => {
            for _ in 0..cfg.trials {
                out.push(vec![GenSpec::Unicyclic { n: r.random_range(3..=max_n), seed: r.random() }]);
            }
        }
        Suite::DoublePath => {
            for _ in 0..cfg.trials {
                out.push(vec![GenSpec::SeriesParallelPaths { lengths: random_lengths(&mut r, max_n), seed: r.random() }]);
            }
            for rows in 1..=4 {
                for cols in 1..=4 {
                    if rows * cols <= max_n {
                        out.push(vec![GenSpec::Grid { rows, cols }]);
                    }
                }
            }
        }
        Suite::P2Interval => {
            for k in 1..=5 {
                out.push(vec![GenSpec::P2Witness { m: 5, n: 5, k }]);
            }
        }
        Suite::OuterplanarZt => {
            for _ in 0..cfg.trials {
                out.push(vec![random_outerplanar_spec(&mut r, 3, max_n)]);
            }
        }
        Suite::VertexSum => {
            let side = max_n.min(8);
            for _ in 0..cfg.trials {
                out.push(vec![small_side(&mut r, side), small_side(&mut r, side)]);
            }
        }
        Suite::KclusterFormulas => {
            let mut combos = Vec::new();
            for k in 2..=4 {
                let mut ss = vec![1, 2, 3, k + 1];
                ss.dedup();
                combos.extend(ss.into_iter().map(|s| (k, s)));
            }
            for i in 0..cfg.trials.max(combos.len()) {
                let (k, s) = combos[i % combos.len()];
                let lo = k + 1 + s;
                let n = r.random_range(lo..=max_n.max(lo));
                out.push(vec![GenSpec::KCluster { n, k, s, seed: r.random() }]);
            }
        }
        Suite::OddKtreeCover => {
            for _ in 0..cfg.trials {
                let n = r.random_range(4..=max_n.max(4));
                out.push(vec![GenSpec::KTree { n, k: 3, cluster_only: false, seed: r.random() }]);
            }
        }
        Suite::ChordalIdentity => {
            for _ in 0..cfg.trials {
                let n = r.random_range(2..=max_n);
                let k = r.random_range(1..=(n - 1).min(3));
                out.push(vec![GenSpec::Chordal { n, k, seed: r.random() }]);
            }
        }
        Suite::InequalityChain => {
            for _ in 0..cfg.trials {
                let n = r.random_range(1..=max_n);
                out.push(vec![GenSpec::ErdosRenyi { n, p: r.random_range(0.1..0.9), seed: r.random() }]);
            }
        }
    }
    out
}

/// Path lengths for a series of parallel paths with at most `max_n`
/// vertices and no two consecutive single vertices.
fn random_lengths(r: &mut XorShiftRng, max_n: usize) -> Vec<usize> {
    let k = r.random_range(2..=(max_n / 2).clamp(2, 4));
    let cap = (max_n / k).max(1);
    let mut lengths: Vec<usize> = (0..k).map(|_| r.random_range(1..=cap)).collect();
    for i in 1..k {
        if lengths[i] == 1 && lengths[i - 1] == 1 {
            lengths[i] = 2;
        }
    }
    while lengths.iter().sum::<usize>() > max_n {
        let i = (0..k).max_by_key(|&i| lengths[i]).unwrap();
        lengths[i] -= 1;
    }
    lengths
}

fn random_outerplanar_spec(r: &mut XorShiftRng, lo: usize, hi: usize) -> GenSpec {
    let outer_keep = if r.random_bool(0.5) { 1.0 } else { r.random_range(0.4..1.0) };
    GenSpec::Outerplanar { n: r.random_range(lo..=hi.max(lo)), inner_keep: r.random(), outer_keep, seed: r.random() }
}

fn small_side(r: &mut XorShiftRng, side: usize) -> GenSpec {
    match r.random_range(0..3) {
        0 => GenSpec::Tree { n: r.random_range(1..=side), seed: r.random() },
        1 => GenSpec::Cycle { n: r.random_range(3..=side.max(3)) },
        _ => random_outerplanar_spec(r, 3, side),
    }
}

fn check(suite: Suite, specs: &[GenSpec], gs: &[Graph], ctx: &Ctx, c: &mut Checks) -> Result<(), Stop> {
    use Parameter::*;
    let g = &gs[0];
    match suite {
        Suite::NamedGraphs => {
            let n = g.n();
            match specs[0] {
                GenSpec::Path { .. } => c.eq("Z(P_n) = 1", 1, ctx.value(g, ZeroForcing)?),
                GenSpec::Complete { .. } => {
                    c.eq("Z(K_n) = n - 1", n - 1, ctx.value(g, ZeroForcing)?);
                    c.eq("P(K_n) = ceil(n/2)", n.div_ceil(2), ctx.value(g, PathCover)?);
                    c.eq("Z+(K_n) = n - 1", n - 1, ctx.value(g, PsdForcing)?);
                }
                _ => {
                    c.eq("Z+(tree) = 1", 1, ctx.value(g, PsdForcing)?);
                    c.eq("T(tree) = 1", 1, ctx.value(g, TreeCover)?);
                }
            }
        }
        Suite::BlockCycleZp | Suite::UnicyclicZp => {
            let cert = if suite == Suite::BlockCycleZp { classify_block_cycle(g)? } else { classify_unicyclic(g)? };
            let Some(cert) = cert else {
                c.holds("recognised", false);
                return Ok(());
            };
            let z = ctx.value(g, ZeroForcing)?;
            c.eq("Z = P", z, ctx.value(g, PathCover)?);
            let sol = block_cycle_solution(g, &cert)?;
            c.eq("construction size = Z", z, sol.value());
            check_chains(c, g, &sol);
        }
        Suite::DoublePath => {
            let z = ctx.value(g, ZeroForcing)?;
            if let GenSpec::Grid { rows, cols } = specs[0] {
                c.eq("Z(grid) = min(m, n)", rows.min(cols), z);
            }
            if !g.is_path() {
                let Some(cert) = double_path_certificate(g)? else {
                    c.holds("layering found", false);
                    return Ok(());
                };
                let layers = cert.paths().unwrap().len();
                let sol = double_path_solution(g, &cert)?;
                c.eq("construction size = Z", z, sol.value());
                c.eq("construction size = number of paths", layers, sol.value());
                check_chains(c, g, &sol);
            }
        }
        Suite::P2Interval => {
            let GenSpec::P2Witness { k, .. } = specs[0] else { unreachable!("planned as witnesses") };
            c.eq("P = 2", 2, ctx.value(g, PathCover)?);
            c.eq("Z = k + 1", k + 1, ctx.value(g, ZeroForcing)?);
        }
        Suite::OuterplanarZt => {
            let t = ctx.value(g, TreeCover)?;
            c.eq("Z+ = T", t, ctx.value(g, PsdForcing)?);
            let emb = outerplanar_embedding(g)?.ok_or_else(|| Stop::Error("generator output is not outerplanar".into()))?;
            let sol = outerplanar_solution(g, &emb)?;
            c.eq("construction size = T", t, sol.value());
            check_chains(c, g, &sol);
        }
        Suite::VertexSum => {
            let h = &gs[1];
            let (tg, th) = (ctx.value(g, TreeCover)?, ctx.value(h, TreeCover)?);
            let (zg, zh) = (ctx.value(g, PsdForcing)?, ctx.value(h, PsdForcing)?);
            let solve_side = |x: &Graph| -> Result<FamilySolution, Stop> {
                let emb = outerplanar_embedding(x)?.ok_or_else(|| Stop::Error("side is not outerplanar".into()))?;
                Ok(outerplanar_solution(x, &emb)?)
            };
            let (sg, sh) = (solve_side(g)?, solve_side(h)?);
            for vg in 0..g.n() {
                for vh in 0..h.n() {
                    let sum = g.vertex_sum(h, vg, vh).map_err(|e| Stop::Error(e.to_string()))?.graph;
                    let zs = ctx.value(&sum, PsdForcing)?;
                    c.eq(format!("T at {vg}~{vh}"), tg + th - 1, ctx.value(&sum, TreeCover)?);
                    c.eq(format!("Z+ at {vg}~{vh}"), zg + zh - 1, zs);
                    c.eq(format!("composed size at {vg}~{vh}"), zs, compose_vertex_sum(&sg, &sh, vg, vh)?.value());
                }
            }
        }
        Suite::KclusterFormulas => {
            let GenSpec::KCluster { k, s, .. } = specs[0] else { unreachable!("planned as clusters") };
            let Some(cert) = k_tree_certificate(g, k) else {
                c.holds("recognised", false);
                return Ok(());
            };
            let p = k_cluster_parameters(g, &cert)?;
            c.eq("|S|", s, p.s);
            c.eq("Z+ formula", ctx.value(g, PsdForcing)?, p.z_plus);
            c.eq("T formula", ctx.value(g, TreeCover)?, p.t);
        }
        Suite::OddKtreeCover => {
            let Some(cert) = k_tree_certificate(g, 3) else {
                c.holds("recognised", false);
                return Ok(());
            };
            let cover = k_tree_tree_cover_odd(g, &cert, 3)?;
            c.holds("cover valid", cover.validate(g).is_ok());
            c.eq("cover size = (k+1)/2", 2, cover.len());
            c.eq("cover size = T", ctx.value(g, TreeCover)?, cover.len());
        }
        Suite::ChordalIdentity => {
            let Some(cert) = chordal_peo(g) else {
                c.holds("recognised", false);
                return Ok(());
            };
            let zp = ctx.value(g, PsdForcing)?;
            c.eq("Z+ = n - cc", g.n() - ctx.value(g, EdgeCliqueCover)?, zp);
            c.eq("identity", zp, chordal_psd_identity(g, &cert)?);
        }
        Suite::InequalityChain => {
            let seed = match specs[0] {
                GenSpec::ErdosRenyi { seed, .. } => seed,
                _ => 0,
            };
            let mut results = Vec::new();
            for p in Parameter::ALL {
                let res = solve(g, p, &ctx.cfg)?;
                let valid = match p {
                    ZeroForcing => is_forcing_set(g, res.set().unwrap(), Rule::Standard),
                    PsdForcing => is_forcing_set(g, res.set().unwrap(), Rule::Positive),
                    _ => res.cover().unwrap().validate(g).is_ok(),
                };
                c.holds(format!("{} certificate valid", p.symbol()), valid);
                results.push(res.value);
            }
            let [z, zp, pc, t, _] = results[..] else { unreachable!() };
            c.le("T <= Z+", t, zp);
            c.le("Z+ <= Z", zp, z);
            c.le("T <= P", t, pc);
            c.le("P <= Z", pc, z);
            let mut r = XorShiftRng::seed_from_u64(seed);
            for rule in [Rule::Standard, Rule::Positive] {
                for _ in 0..4 {
                    let all = g.vertices().bits();
                    let b = VertexSet(r.random::<u64>() & all);
                    let a = VertexSet(r.random::<u64>() & b.bits());
                    let (da, db) = (closure(g, a, rule).unwrap().derived, closure(g, b, rule).unwrap().derived);
                    c.holds(format!("closure monotone ({rule:?}) {a:?} within {b:?}"), da.is_subset(db));
                }
            }
        }
    }
    Ok(())
}

fn check_chains(c: &mut Checks, g: &Graph, sol: &FamilySolution) {
    c.holds("certificate re-verifies", sol.verify(g).is_ok());
    let traced = sol.run.extract_cover().ok();
    c.holds("forcing chains are the cover", traced.is_some_and(|t| t.same_parts(&sol.cover)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoolFamily {
    Tree,
    BlockCycle,
    Unicyclic,
    Outerplanar,
    KTree,
    ErdosRenyi,
    /// Small named graphs, including K_4 minus an edge.
    Named,
}

impl PoolFamily {
    pub const ALL: [PoolFamily; 7] = [
        PoolFamily::Tree,
        PoolFamily::BlockCycle,
        PoolFamily::Unicyclic,
        PoolFamily::Outerplanar,
        PoolFamily::KTree,
        PoolFamily::ErdosRenyi,
        PoolFamily::Named,
    ];
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest number of vertices of either summand.
    pub max_n: usize,
    pub node_limit: u64,
    pub seed: u64,
    pub families: Vec<PoolFamily>,
    /// Random draws per family when building the pool.
    pub draws: usize,
    /// Pairs of pool graphs to sum (all pairs if there are fewer).
    pub pairs: usize,
    /// Minimum path covers examined per graph in the chain probe.
    pub probe_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_n: 7,
            node_limit: 5_000_000,
            seed: 0,
            families: PoolFamily::ALL.to_vec(),
            draws: 12,
            pairs: 60,
            probe_limit: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumRecord {
    pub g: String,
    pub h: String,
    pub vg: usize,
    pub vh: usize,
    pub sum: String,
    pub z: usize,
    pub p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeWitness {
    pub graph6: String,
    /// A minimum path cover that is not the set of forcing chains of any
    /// zero forcing process.
    pub cover: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub graphs: usize,
    pub covers: usize,
    pub covers_not_chains: usize,
    /// Graphs whose cover list was cut at the probe limit.
    pub truncated: usize,
    pub witnesses: Vec<ProbeWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub pool: Vec<String>,
    pub pairs: usize,
    pub sums: usize,
    /// Sums with Z different from P.
    pub counterexamples: Vec<SumRecord>,
    pub budget_exceeded: usize,
    pub probe: ProbeReport,
    pub millis: f64,
}

const MAX_WITNESSES: usize = 20;

/// Looks for vertex sums of graphs with Z = P where Z and P differ, and
/// probes whether minimum path covers of Z = P graphs are always forcing
/// chains. Reports findings; never fails on them.
pub fn search_conjecture(cfg: &SearchConfig) -> SearchReport {
    let start = Instant::now();
    let solver = SolverConfig { node_limit: cfg.node_limit, ..SolverConfig::default() };
    let zp = |g: &Graph| -> Result<(usize, usize), SolveError> {
        Ok((solve(g, Parameter::ZeroForcing, &solver)?.value, solve(g, Parameter::PathCover, &solver)?.value))
    };
    let mut budget_exceeded = 0;
    let mut pool: Vec<Graph> = Vec::new();
    for g in candidates(cfg) {
        match zp(&g) {
            Ok((z, p)) if z == p && !pool.contains(&g) => pool.push(g),
            Err(SolveError::BudgetExceeded(_)) => budget_exceeded += 1,
            _ => {}
        }
    }
    let mut r = XorShiftRng::seed_from_u64(cfg.seed ^ 1);
    let mut pairs: Vec<(usize, usize)> = (0..pool.len()).flat_map(|i| (i..pool.len()).map(move |j| (i, j))).collect();
    if pairs.len() > cfg.pairs {
        pairs = (0..cfg.pairs).map(|_| pairs[r.random_range(0..pairs.len())]).collect();
    }
    let outcomes: Vec<Result<Option<SumRecord>, ()>> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (g, h) = (&pool[i], &pool[j]);
            (0..g.n()).flat_map(move |vg| (0..h.n()).map(move |vh| (vg, vh))).map(move |(vg, vh)| {
                let sum = g.vertex_sum(h, vg, vh).map_err(|_| ())?.graph;
                match zp(&sum) {
                    Ok((z, p)) if z != p => Ok(Some(SumRecord {
                        g: to_graph6(g).unwrap_or_default(),
                        h: to_graph6(h).unwrap_or_default(),
                        vg,
                        vh,
                        sum: to_graph6(&sum).unwrap_or_default(),
                        z,
                        p,
                    })),
                    Ok(_) => Ok(None),
                    Err(_) => Err(()),
                }
            })
        })
        .collect();
    budget_exceeded += outcomes.iter().filter(|o| o.is_err()).count();
    let counterexamples: Vec<SumRecord> = outcomes.iter().filter_map(|o| o.clone().ok().flatten()).collect();
    let probe = probe_chains(&pool, cfg.probe_limit, &solver, &mut budget_exceeded);
    SearchReport {
        pool: pool.iter().map(|g| to_graph6(g).unwrap_or_default()).collect(),
        pairs: pairs.len(),
        sums: outcomes.len(),
        counterexamples,
        budget_exceeded,
        probe,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn candidates(cfg: &SearchConfig) -> Vec<Graph> {
    let mut r = XorShiftRng::seed_from_u64(cfg.seed);
    let hi = cfg.max_n.clamp(3, 12);
    let mut out = Vec::new();
    for &fam in &cfg.families {
        if fam == PoolFamily::Named {
            let named = [
                GenSpec::Complete { n: 3 },
                GenSpec::Cycle { n: 4 },
                GenSpec::Cycle { n: hi },
                GenSpec::Path { n: hi },
                GenSpec::Grid { rows: 2, cols: hi / 2 },
            ];
            out.extend(named.iter().filter_map(|s| s.generate().ok()));
            out.push(Graph::from_edge_list(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("K_4 minus an edge"));
            continue;
        }
        for _ in 0..cfg.draws {
            let seed = r.random();
            let spec = match fam {
                PoolFamily::Tree => GenSpec::Tree { n: r.random_range(2..=hi), seed },
                PoolFamily::BlockCycle => GenSpec::BlockCycle { blocks: r.random_range(1..=3), max_cycle: 5, seed },
                PoolFamily::Unicyclic => GenSpec::Unicyclic { n: r.random_range(3..=hi), seed },
                PoolFamily::Outerplanar => random_outerplanar_spec(&mut r, 3, hi),
                PoolFamily::KTree => {
                    let k = r.random_range(1..=3usize.min(hi - 1));
                    GenSpec::KTree { n: r.random_range(k + 1..=hi), k, cluster_only: false, seed }
                }
                PoolFamily::ErdosRenyi => GenSpec::ErdosRenyi { n: r.random_range(2..=hi), p: 0.5, seed },
                PoolFamily::Named => unreachable!("handled above"),
            };
            if let Ok(g) = spec.generate() {
                if g.n() <= cfg.max_n && g.is_connected() {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Covers examined, covers that are not forcing chains, and whether the
/// enumeration stopped at its limit; `None` if the budget ran out.
type GraphProbe = Option<(usize, Vec<Cover>, bool)>;

fn probe_chains(pool: &[Graph], limit: usize, solver: &SolverConfig, budget_exceeded: &mut usize) -> ProbeReport {
    let per_graph: Vec<GraphProbe> = pool
        .par_iter()
        .map(|g| {
            let (covers, cut) = minimum_path_covers(g, limit, solver).ok()?;
            let bad: Vec<Cover> =
                covers.iter().filter(|c| chain_roots_for_cover(g, &c.parts, |_| true).is_none()).cloned().collect();
            Some((covers.len(), bad, cut))
        })
        .collect();
    let mut report = ProbeReport { graphs: pool.len(), covers: 0, covers_not_chains: 0, truncated: 0, witnesses: Vec::new() };
    for (g, res) in pool.iter().zip(per_graph) {
        let Some((n, bad, cut)) = res else {
            *budget_exceeded += 1;
            continue;
        };
        report.covers += n;
        report.covers_not_chains += bad.len();
        report.truncated += cut as usize;
        for c in bad {
            if report.witnesses.len() < MAX_WITNESSES {
                report.witnesses.push(ProbeWitness { graph6: to_graph6(g).unwrap_or_default(), cover: c.parts });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn plans_are_deterministic() {
        let cfg = SuiteConfig { trials: 5, max_n: 9, seed: 7, ..SuiteConfig::default() };
        for s in Suite::ALL {
            assert_eq!(plan(s, &cfg), plan(s, &cfg));
        }
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig { trials: 3, max_n: 8, seed: 1, ..SuiteConfig::default() };
        for s in Suite::ALL {
            let rep = run_suite(s, &cfg);
            assert!(rep.all_passed(), "{s}: {}", rep.to_json_lines());
            assert_eq!(rep.exit_code(), 0);
        }
    }

    #[test]
    fn budget_outcome() {
        let cfg = SuiteConfig { trials: 2, max_n: 9, seed: 1, node_limit: 1 };
        let rep = run_suite(Suite::InequalityChain, &cfg);
        assert!(rep.summary.budget_exceeded > 0);
        assert_eq!(rep.exit_code(), 3);
    }

    #[test]
    fn tiny_search() {
        let cfg = SearchConfig { max_n: 5, families: vec![PoolFamily::Tree, PoolFamily::Named], draws: 3, pairs: 5, ..SearchConfig::default() };
        let rep = search_conjecture(&cfg);
        assert!(rep.sums > 0);
        assert!(rep.probe.graphs == rep.pool.len());
    }
}
