//! Benchmark harness over a directory of instance files.
//!
//! Every solver runs on every instance; per-instance failures are recorded as
//! rows, never fatal. Rows keep file-name order whatever the thread count,
//! and no timings are recorded, so the summary is reproducible.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use connpres_core::instance::is_feasible;
use connpres_core::oracle::{brute_optimum, OPTIMUM_MAX_EDGES};
use connpres_core::Instance;

use crate::dispatch::{run, Algorithm};
use crate::format::parse_instance;
use crate::report::{rational_string, REPORT_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRun {
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_bound: Option<String>,
    /// `cost / Opt`; 1.0 when both are zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt: Option<u64>,
    pub runs: Vec<BenchRun>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmSummary {
    pub runs: usize,
    pub solved: usize,
    pub with_ratio: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub report_version: u32,
    pub instances: Vec<BenchRow>,
    pub summary: BTreeMap<String, AlgorithmSummary>,
}

/// Regular files in `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn ratio(cost: u64, opt: u64) -> f64 {
    if opt == 0 {
        if cost == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        cost as f64 / opt as f64
    }
}

pub fn bench_instance(file: String, inst: &Instance, limit_cuts: usize) -> BenchRow {
    let opt = if inst.graph().edge_count() <= OPTIMUM_MAX_EDGES {
        brute_optimum(inst).ok().and_then(|b| b.cost())
    } else {
        None
    };
    let runs = Algorithm::ALL
        .into_iter()
        .filter(|&a| a != Algorithm::Brute)
        .map(|algo| match run(inst, algo, limit_cuts) {
            Ok(out) => {
                let cost = out.solution.total_cost();
                BenchRun {
                    algorithm: algo.name().into(),
                    cost: Some(cost),
                    certified_bound: out.certificate.as_ref().map(|c| rational_string(&c.bound)),
                    ratio: opt.map(|o| ratio(cost, o)),
                    feasible: is_feasible(inst, &out.solution).ok(),
                    error: None,
                }
            }
            Err(e) => BenchRun {
                algorithm: algo.name().into(),
                cost: None,
                certified_bound: None,
                ratio: None,
                feasible: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    BenchRow {
        file,
        opt,
        runs,
        error: None,
    }
}

pub fn summarize(rows: &[BenchRow]) -> BTreeMap<String, AlgorithmSummary> {
    let mut summary = BTreeMap::new();
    for algo in Algorithm::ALL.into_iter().filter(|&a| a != Algorithm::Brute) {
        let runs: Vec<&BenchRun> = rows
            .iter()
            .flat_map(|r| r.runs.iter())
            .filter(|r| r.algorithm == algo.name())
            .collect();
        if runs.is_empty() {
            continue;
        }
        let ratios: Vec<f64> = runs.iter().filter_map(|r| r.ratio).collect();
        let entry = AlgorithmSummary {
            runs: runs.len(),
            solved: runs.iter().filter(|r| r.cost.is_some()).count(),
            with_ratio: ratios.len(),
            max_ratio: ratios.iter().copied().reduce(f64::max),
            mean_ratio: (!ratios.is_empty())
                .then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        };
        summary.insert(algo.name().to_string(), entry);
    }
    summary
}

pub fn run_bench(dir: &Path, limit_cuts: usize) -> std::io::Result<BenchReport> {
    let files = corpus_files(dir)?;
    let instances: Vec<BenchRow> = files
        .par_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let parsed = std::fs::read_to_string(path)
                .map_err(|e| e.to_string())
                .and_then(|text| parse_instance(&text).map_err(|e| e.to_string()));
            match parsed {
                Ok(inst) => bench_instance(name, &inst, limit_cuts),
                Err(e) => BenchRow {
                    file: name,
                    opt: None,
                    runs: Vec::new(),
                    error: Some(e),
                },
            }
        })
        .collect();
    let summary = summarize(&instances);
    Ok(BenchReport {
        report_version: REPORT_VERSION,
        instances,
        summary,
    })
}
