//! Acceptance criteria 1 to 9. Each prints one `PASS` or `FAIL` line; the run
//! fails if any criterion fails. Every tolerance is zero.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use connpres_cli::format::serialize_instance;
use connpres_cli::gen::{
    sample_cubic_graph, has_clique, random_feasible_instance, random_graph, random_tree_mcf,
    regular_graphs, RandomParams, Variant,
};
use connpres_core::approx::{
    harmonic, hitting_set_constant_q, primal_dual_1q, solve_pq_gcp, solve_pq_scp, Rational,
    RatioCertificate, DEFAULT_CUT_LIMIT,
};
use connpres_core::exact::{greedy_12_gcp, solve_12_scp, solve_22_gcp, solve_p1};
use connpres_core::instance::is_feasible;
use connpres_core::multigraph::is_k_edge_connected;
use connpres_core::oracle::{brute_bicriteria_cut, brute_feasible, brute_optimum, brute_tree_mcf};
use connpres_core::reductions::{clique_to_bicriteria, extract_shared_paths, shared_edges};
use connpres_core::treemcf::{build_tree_representation, solve_tree_mcf};
use connpres_core::{Instance, MultiGraph, Result as CoreResult, Solution};

type Check = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rat(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

/// A feasible random instance with `n ≤ 8`, `m ≤ 14` and costs 1..10.
fn instance(rng: &mut ChaCha8Rng, variant: Variant, p: usize, q: usize) -> Instance {
    loop {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(n - 1..=14);
        let params = RandomParams {
            n,
            m,
            cost_min: 1,
            cost_max: 10,
            variant,
            p,
            q,
            pairs: rng.gen_range(1..=3),
        };
        if let Ok(inst) = random_feasible_instance(rng, &params, 20) {
            return inst;
        }
    }
}

fn corpus(seed: u64, count: usize, variants: &[Variant], p: usize, q: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| instance(&mut r, variants[i % variants.len()], p, q))
        .collect()
}

fn optimum(inst: &Instance) -> u64 {
    brute_optimum(inst)
        .expect("within the oracle budget")
        .cost()
        .expect("feasible instance")
}

// 1 -------------------------------------------------------------------------

fn exact_regime(
    name: &str,
    seed: u64,
    variants: &[Variant],
    p: usize,
    q: usize,
    solve: fn(&Instance) -> CoreResult<Solution>,
) -> std::result::Result<usize, String> {
    let insts = corpus(seed, 500, variants, p, q);
    let bad: Vec<String> = insts
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let opt = optimum(inst);
            match solve(inst) {
                Ok(x) if x.total_cost() == opt && brute_feasible(inst, &x) == Ok(true) => None,
                Ok(x) => Some(format!("{name} #{i}: cost {} vs Opt {opt}", x.total_cost())),
                Err(e) => Some(format!("{name} #{i}: {e}")),
            }
        })
        .collect();
    match bad.first() {
        None => Ok(insts.len()),
        Some(first) => Err(format!("{} mismatches, first {first}", bad.len())),
    }
}

fn criterion_1() -> Check {
    use Variant::*;
    let regimes: [(&str, u64, &[Variant], usize, usize, fn(&Instance) -> CoreResult<Solution>); 6] = [
        ("algorithm-1 p=1", 101, &[Steiner, St, Global], 1, 1, solve_p1),
        ("algorithm-1 p=2", 102, &[Steiner, St, Global], 2, 1, solve_p1),
        ("algorithm-1 p=3", 103, &[Steiner, St, Global], 3, 1, solve_p1),
        ("algorithm-2", 104, &[Steiner, St], 1, 2, solve_12_scp),
        ("greedy-12-gcp", 105, &[Global], 1, 2, greedy_12_gcp),
        ("solve-22-gcp", 106, &[Global], 2, 2, solve_22_gcp),
    ];
    let mut summary = Vec::new();
    for (name, seed, variants, p, q, solve) in regimes {
        let n = exact_regime(name, seed, variants, p, q, solve)?;
        summary.push(format!("{name}: {n}/{n}"));
    }
    Ok(summary.join(", "))
}

// 2 -------------------------------------------------------------------------

fn criterion_2() -> Check {
    let samples: Vec<(u64, usize)> = (0..1200u64).map(|i| (i, i as usize)).collect();
    let results: Vec<std::result::Result<bool, String>> = samples
        .par_iter()
        .map(|&(seed, i)| {
            let mut r = rng(2000 + seed);
            let variant = [Variant::Steiner, Variant::St, Variant::Global][i % 3];
            let p = r.gen_range(1..=3);
            let q = r.gen_range(1..=3);
            let inst = instance(&mut r, variant, p, q);
            let density: f64 = r.gen_range(0.0..1.0);
            let ids: Vec<_> = inst.graph().edge_ids().filter(|_| r.gen_bool(density)).collect();
            let x = inst.solution(ids).unwrap();
            let fast = is_feasible(&inst, &x).map_err(|e| e.to_string())?;
            let slow = brute_feasible(&inst, &x).map_err(|e| e.to_string())?;
            if fast == slow {
                Ok(fast)
            } else {
                Err(format!("sample {i}: is_feasible {fast}, oracle {slow}"))
            }
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if let Some(first) = errors.first() {
        return Err(format!("{} disagreements, first {first}", errors.len()));
    }
    let feasible = results.iter().filter(|r| matches!(r, Ok(true))).count();
    Ok(format!(
        "{} samples, 0 disagreements ({feasible} feasible, {} infeasible)",
        results.len(),
        results.len() - feasible
    ))
}

// 3 and 4 -------------------------------------------------------------------

#[derive(Default)]
struct RatioTally {
    runs: usize,
    ratio_violations: Vec<String>,
    dual_violations: Vec<String>,
    duals_checked: usize,
}

fn check_certificate(t: &mut RatioTally, label: &str, inst: &Instance, cert: &RatioCertificate) {
    t.duals_checked += cert.phases.len();
    if let Err(phase) = cert.verify(inst) {
        t.dual_violations.push(format!("{label}: phase {phase}"));
    }
}

/// One corpus per `(variant, p, q)`, shared by criteria 3 and 4.
fn ratio_corpus() -> Vec<(Instance, u64)> {
    let mut jobs = Vec::new();
    for p in 1..=3 {
        for q in 1..=3 {
            for (vi, v) in [Variant::Steiner, Variant::St, Variant::Global].into_iter().enumerate() {
                jobs.push((3000 + 100 * p as u64 + 10 * q as u64 + vi as u64, v, p, q));
            }
        }
    }
    jobs.par_iter()
        .flat_map(|&(seed, v, p, q)| {
            corpus(seed, 40, &[v], p, q)
                .into_iter()
                .map(|inst| {
                    let opt = optimum(&inst);
                    (inst, opt)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn ratio_case(i: usize, inst: &Instance, opt: u64) -> RatioTally {
    let mut t = RatioTally::default();
    let (p, q) = (inst.p(), inst.q());
    let hp = harmonic(p) * rat((p + q - 1) as u64) * rat(opt);
    let fail = |t: &mut RatioTally, what: String| t.ratio_violations.push(format!("#{i} {what}"));
    let feasible = |x: &Solution| brute_feasible(inst, x) == Ok(true);
    if p == 1 {
        let (x, cert) = primal_dual_1q(inst).unwrap();
        t.runs += 1;
        if !feasible(&x) || x.total_cost() > q as u64 * opt || rat(x.total_cost()) > cert.bound {
            fail(&mut t, format!("primal-dual cost {} Opt {opt}", x.total_cost()));
        }
        check_certificate(&mut t, "primal-dual", inst, &cert);
    }
    let r = hitting_set_constant_q(inst).unwrap();
    t.runs += 1;
    if !feasible(&r.solution) || r.solution.total_cost() > q as u64 * opt {
        fail(&mut t, format!("hitting-set cost {} Opt {opt}", r.solution.total_cost()));
    }
    // hitting-set dual: y ≥ 0 and Σ_{F ∋ e} y_F ≤ c_e
    t.duals_checked += 1;
    let g = inst.graph();
    let dual_ok = r.y.iter().all(|v| *v >= rat(0))
        && g.edges().iter().enumerate().all(|(pos, e)| {
            let load = r
                .breaking_sets
                .iter()
                .zip(&r.y)
                .filter(|(f, _)| f.contains(&e.id))
                .fold(rat(0), |a, (_, v)| a + v);
            load <= rat(inst.cost_at(pos))
        });
    if !dual_ok || rat(r.solution.total_cost()) > r.bound {
        t.dual_violations.push(format!("#{i} hitting-set dual"));
    }
    let (x, cert) = solve_pq_scp(inst).unwrap();
    t.runs += 1;
    if !feasible(&x) || rat(x.total_cost()) > hp || rat(x.total_cost()) > cert.bound {
        fail(&mut t, format!("phases cost {} Opt {opt}", x.total_cost()));
    }
    check_certificate(&mut t, "phases", inst, &cert);
    if inst.is_global() {
        let (x, cert) = solve_pq_gcp(inst, DEFAULT_CUT_LIMIT).unwrap();
        t.runs += 1;
        // bound ≤ H_p (p+q−1) Opt implies the weaker bound with the (1 + ln N) factor
        if !feasible(&x) || rat(x.total_cost()) > cert.bound || cert.bound > hp {
            fail(&mut t, format!("setcover cost {} bound {} Opt {opt}", x.total_cost(), cert.bound));
        }
        check_certificate(&mut t, "setcover", inst, &cert);
    }
    t
}

fn criteria_3_and_4() -> (Check, Check) {
    let data = ratio_corpus();
    let tallies: Vec<RatioTally> = data
        .par_iter()
        .enumerate()
        .map(|(i, (inst, opt))| ratio_case(i, inst, *opt))
        .collect();
    let runs: usize = tallies.iter().map(|t| t.runs).sum();
    let duals: usize = tallies.iter().map(|t| t.duals_checked).sum();
    let ratio_bad: Vec<&String> = tallies.iter().flat_map(|t| &t.ratio_violations).collect();
    let dual_bad: Vec<&String> = tallies.iter().flat_map(|t| &t.dual_violations).collect();
    let c3 = match ratio_bad.first() {
        None => Ok(format!("{} instances, {runs} runs, 0 violations", data.len())),
        Some(f) => Err(format!("{} violations, first {f}", ratio_bad.len())),
    };
    let c4 = match dual_bad.first() {
        None => Ok(format!("{duals} phase duals re-verified exactly")),
        Some(f) => Err(format!("{} violations, first {f}", dual_bad.len())),
    };
    (c3, c4)
}

// 5 -------------------------------------------------------------------------

/// All minimum cuts of value 3 by bipartition enumeration, as the side not
/// containing vertex 0.
fn brute_min_cuts(g: &MultiGraph) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << (n - 1)) {
        let side: Vec<bool> = (0..n).map(|v| v > 0 && mask >> (v - 1) & 1 == 1).collect();
        if g.crossing(&side).len() == 3 {
            out.insert((0..n).filter(|&v| side[v]).collect());
        }
    }
    out
}

fn criterion_5() -> Check {
    let mut r = rng(5000);
    let mut graphs = Vec::new();
    while graphs.len() < 120 {
        let n = r.gen_range(2..=9);
        let m = r.gen_range((3 * n + 1) / 2..=3 * n);
        let g = random_graph(&mut r, n, m).unwrap();
        if is_k_edge_connected(&g, 3) && !is_k_edge_connected(&g, 4) {
            graphs.push(g);
        }
    }
    let bad: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let n = g.vertex_count();
            let rep = match build_tree_representation(g, 3) {
                Ok(rep) => rep,
                Err(e) => return Some(format!("graph {i}: {e}")),
            };
            let expected = brute_min_cuts(g);
            let found: BTreeSet<Vec<usize>> = rep.cuts().iter().map(|c| c.canonical_side(n)).collect();
            if rep.tree().edges().len() != expected.len()
                || rep.cuts().len() != expected.len()
                || found != expected
            {
                return Some(format!(
                    "graph {i}: {} tree edges, {} min cuts",
                    rep.tree().edges().len(),
                    expected.len()
                ));
            }
            for e in g.edges() {
                let path: BTreeSet<usize> = rep.project_edge(e).into_iter().collect();
                let crossing: BTreeSet<usize> = (0..rep.cuts().len())
                    .filter(|&j| rep.cut_of(j).crossing.binary_search(&e.id).is_ok())
                    .collect();
                if path != crossing {
                    return Some(format!("graph {i}: edge {} projects to {path:?}, crosses {crossing:?}", e.id));
                }
            }
            None
        })
        .collect();
    match bad.first() {
        None => Ok(format!("{} graphs (n ≤ 9, λ = 3), bijection and edge-path correspondence hold", graphs.len())),
        Some(f) => Err(format!("{} failures, first {f}", bad.len())),
    }
}

// 6 -------------------------------------------------------------------------

fn criterion_6() -> Check {
    let bad: Vec<String> = (0..600u64)
        .into_par_iter()
        .filter_map(|seed| {
            let mut r = rng(6000 + seed);
            let nodes = r.gen_range(2..=12);
            let paths = r.gen_range(1..=20);
            let inst = random_tree_mcf(&mut r, nodes, paths, 50).unwrap();
            let dp = solve_tree_mcf(&inst).weight;
            let brute = brute_tree_mcf(&inst).unwrap();
            (dp != brute).then(|| format!("seed {seed}: dp {dp}, oracle {brute}"))
        })
        .collect();
    match bad.first() {
        None => Ok("600 instances, DP equals oracle".into()),
        Some(f) => Err(format!("{} mismatches, first {f}", bad.len())),
    }
}

// 7 -------------------------------------------------------------------------

fn criterion_7() -> Check {
    let mut cases = Vec::new();
    for n in [4, 6, 8] {
        for g in regular_graphs(n, 3) {
            for k in [3, 4] {
                cases.push((g.clone(), k));
            }
        }
    }
    let graphs = cases.len() / 2;
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(g, k)| {
            let n = g.vertex_count();
            let found = clique_to_bicriteria(g, *k).and_then(|(b, _)| {
                brute_bicriteria_cut(&b.graph, &b.protected, b.s, b.t, b.a, b.b)
            });
            match found {
                Ok(cut) => (cut.is_some() != has_clique(g, *k)).then(|| format!("n = {n}, k = {k}")),
                Err(e) => Some(format!("n = {n}, k = {k}: {e}")),
            }
        })
        .collect();
    if let Some(f) = bad.first() {
        return Err(format!("{} mismatches, first {f}", bad.len()));
    }
    let (b, _) = clique_to_bicriteria(&sample_cubic_graph(), 3).map_err(|e| e.to_string())?;
    let cut = brute_bicriteria_cut(&b.graph, &b.protected, b.s, b.t, b.a, b.b).map_err(|e| e.to_string())?;
    if (b.a, b.b) != (3, 18) || cut.is_none() {
        return Err(format!("sample gadget: A = {}, B = {}, cut found: {}", b.a, b.b, cut.is_some()));
    }
    Ok(format!(
        "{graphs} cubic graphs × k ∈ {{3,4}} agree; sample cubic graph: A = 3, B = 18, qualifying cut found"
    ))
}

// 8 -------------------------------------------------------------------------

fn minimalize(inst: &Instance, start: Vec<usize>) -> Solution {
    let mut ids = start;
    let mut i = 0;
    while i < ids.len() {
        let mut without = ids.clone();
        without.remove(i);
        if is_feasible(inst, &inst.solution(without.clone()).unwrap()).unwrap() {
            ids = without;
        } else {
            i += 1;
        }
    }
    inst.solution(ids).unwrap()
}

fn is_minimal(inst: &Instance, x: &Solution) -> bool {
    is_feasible(inst, x).unwrap()
        && x.ids().iter().all(|&e| {
            let rest = x.ids().into_iter().filter(|&f| f != e);
            !is_feasible(inst, &inst.solution(rest).unwrap()).unwrap()
        })
}

fn criterion_8() -> Check {
    let results: Vec<std::result::Result<usize, String>> = (0..240u64)
        .into_par_iter()
        .map(|seed| {
            let mut r = rng(8000 + seed);
            let q = r.gen_range(1..=3);
            let inst = instance(&mut r, Variant::St, 1, q);
            let mut start: Vec<usize> = inst.graph().edge_ids().collect();
            // a random drop order gives different minimal sets
            for i in (1..start.len()).rev() {
                start.swap(i, r.gen_range(0..=i));
            }
            let x = minimalize(&inst, start);
            if !is_minimal(&inst, &x) {
                return Err(format!("seed {seed}: X not minimal"));
            }
            let paths = extract_shared_paths(&inst, &x).map_err(|e| format!("seed {seed}: {e}"))?;
            let connpres_core::Terminals::St(s, t) = *inst.terminals() else { unreachable!() };
            let mut usage = std::collections::BTreeMap::new();
            for path in &paths {
                let mut at = s;
                for &id in path {
                    let e = inst.graph().edge(id).unwrap();
                    if e.u != at && e.v != at {
                        return Err(format!("seed {seed}: path is not a walk"));
                    }
                    at = e.other(at);
                    *usage.entry(id).or_insert(0usize) += 1;
                }
                if at != t {
                    return Err(format!("seed {seed}: path does not end at t"));
                }
            }
            if paths.len() != q + 1 {
                return Err(format!("seed {seed}: {} paths", paths.len()));
            }
            if usage.iter().any(|(id, &c)| c > 1 && !x.contains(*id)) {
                return Err(format!("seed {seed}: unprotected edge shared"));
            }
            if &shared_edges(&paths) != x.protected() {
                return Err(format!("seed {seed}: shared edges differ from X"));
            }
            Ok(x.len())
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if let Some(f) = errors.first() {
        return Err(format!("{} failures, first {f}", errors.len()));
    }
    let nonempty = results.iter().filter(|r| matches!(r, Ok(k) if *k > 0)).count();
    Ok(format!("{} instances ({nonempty} with X ≠ ∅), shared edges = X", results.len()))
}

// 9 -------------------------------------------------------------------------

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_connpres"))
}

fn stdout_of(cmd: &mut Command) -> std::result::Result<Vec<u8>, String> {
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{cmd:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn report_without_time(path: &Path) -> std::result::Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("report is not an object")?.remove("wall_time_ms");
    Ok(v)
}

fn criterion_9() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let gens: [&[&str]; 4] = [
        &["gen", "random", "--seed", "9", "--n", "7", "--m", "12", "--variant", "steiner", "--feasible"],
        &["gen", "clique-gadget", "--sample", "--k", "3"],
        &["gen", "bond-gadget", "--seed", "9", "--n", "6", "--m", "9", "--k", "3"],
        &["gen", "tree-mcf", "--seed", "9", "--nodes", "10", "--paths", "12"],
    ];
    for args in gens {
        let a = stdout_of(bin().args(args))?;
        let b = stdout_of(bin().args(args))?;
        if a != b || a.is_empty() {
            return Err(format!("`{}` differs across runs", args.join(" ")));
        }
    }
    // a corpus covering exact and approximate regimes
    let corpus = d.join("corpus");
    std::fs::create_dir(&corpus).map_err(|e| e.to_string())?;
    let mut r = rng(9000);
    let regimes = [(Variant::Global, 1, 2), (Variant::Global, 2, 2), (Variant::Steiner, 1, 2), (Variant::St, 2, 2), (Variant::Global, 2, 3), (Variant::Steiner, 1, 1)];
    for i in 0..24 {
        let (v, p, q) = regimes[i % regimes.len()];
        let inst = instance(&mut r, v, p, q);
        std::fs::write(corpus.join(format!("i{i:02}.cpi")), serialize_instance(&inst)).map_err(|e| e.to_string())?;
    }
    for i in 0..24 {
        let file = corpus.join(format!("i{i:02}.cpi"));
        let mut outputs = Vec::new();
        for run in 0..2 {
            let sol = d.join(format!("s{i}_{run}.sol"));
            let json = d.join(format!("s{i}_{run}.json"));
            stdout_of(bin().arg("solve").arg(&file).arg("-o").arg(&sol).arg("--json").arg(&json))?;
            let bytes = std::fs::read(&sol).map_err(|e| e.to_string())?;
            outputs.push((bytes, report_without_time(&json)?));
        }
        if outputs[0] != outputs[1] {
            return Err(format!("solve differs across runs on instance {i}"));
        }
    }
    let serial = stdout_of(bin().arg("bench").arg(&corpus).env("RAYON_NUM_THREADS", "1"))?;
    let parallel = stdout_of(bin().arg("bench").arg(&corpus).env("RAYON_NUM_THREADS", "4"))?;
    let again = stdout_of(bin().arg("bench").arg(&corpus).env("RAYON_NUM_THREADS", "4"))?;
    if serial != parallel || parallel != again {
        return Err("bench output depends on the thread count or run".into());
    }
    Ok("gen ×4 kinds, solve ×24 instances, bench at 1 and 4 threads: byte-identical".into())
}

fn main() {
    let mut failed = 0;
    let mut report = |n: &str, start: Instant, result: Check| {
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.1}s) {detail}");
            }
        }
    };
    let t = Instant::now();
    report("1", t, criterion_1());
    let t = Instant::now();
    report("2", t, criterion_2());
    let t = Instant::now();
    let (c3, c4) = criteria_3_and_4();
    report("3", t, c3);
    report("4", t, c4);
    let t = Instant::now();
    report("5", t, criterion_5());
    let t = Instant::now();
    report("6", t, criterion_6());
    let t = Instant::now();
    report("7", t, criterion_7());
    let t = Instant::now();
    report("8", t, criterion_8());
    let t = Instant::now();
    report("9", t, criterion_9());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
