//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so that every criterion reports even when an earlier one fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use asdim_core::amalgam::spec::BondingEntry;
use asdim_core::amalgam::{Amalgamation, AmalgamationDocument, AmalgamationSpec, Orientation, ResolveContext};
use asdim_core::cover::{exact_min_bound, greedy_witness};
use asdim_core::sampling::{check_projection_nonincreasing, random_document, rng_from_seed, InstanceShape};
use asdim_core::theorem::{lemma_strip, max_stratum, StripVerdict};
use asdim_core::{check_quasi_isometry, FiniteGraph, MetricView, QiFit, Rational, VertexMap, VertexSubset, INF};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;
use serde_json::Value;

const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(10);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(60);
const THEOREM_TIME_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_MAX_VERTICES: usize = 7;
const SWEEP_RADII: [u32; 2] = [2, 3];
const PROJECTION_GAMMA_MAX: i64 = 2;
const PROJECTION_C_MAX: i64 = 2;
const STRIP_RADIUS: u32 = 4;
const STRIP_GAMMA_MAX: i64 = 2;
const STRIP_C_MAX: i64 = 4;
const PROPERTY_CASES: u32 = 1_000;
const TRANSPORT_CASES: u32 = 100;
const MIN_SUITE_ROWS: usize = 4;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shipped(text: &str) -> AmalgamationSpec {
    AmalgamationSpec::from_json(text, ResolveContext::default()).expect("shipped spec resolves")
}

fn chain() -> AmalgamationSpec {
    shipped(include_str!("../../../specs/chain_k2.json"))
}

fn triangle() -> AmalgamationSpec {
    shipped(include_str!("../../../specs/triangle_edge.json"))
}

fn forge() -> Command {
    Command::new(env!("CARGO_BIN_EXE_asdim-forge"))
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("asdim-acceptance-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

/// Floyd–Warshall distances, independent of the library's searches.
fn all_pairs(g: &FiniteGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
        for &w in g.neighbors(v) {
            row[w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn oracle_fixtures() -> Outcome {
    let p = FiniteGraph::path(10);
    let x = MetricView::whole(&p);
    let mut parts = Vec::new();
    for (n, expected) in [(1, 1), (0, 9)] {
        let start = Instant::now();
        let got = exact_min_bound(&x, 3, n).map_err(|e| e.to_string())?.bound;
        let elapsed = start.elapsed();
        check(got == expected, || format!("r=3 n={n}: D={got}, expected {expected}"))?;
        check(elapsed < ORACLE_TIME_LIMIT, || format!("r=3 n={n} took {elapsed:?}"))?;
        parts.push(format!("n={n} D={got} in {elapsed:.2?}"));
    }
    let out = forge()
        .args(["oracle", "--spec", "shipped:p10", "--r", "3", "--n", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    check(out.status.code() == Some(0) && stdout.trim() == "D=1", || {
        format!("cli oracle printed {stdout:?} with {:?}", out.status)
    })?;
    Ok(format!("P10 r=3: {}; cli prints D=1", parts.join(", ")))
}

/// Adjacency as a bitmask over the pairs `i < j`.
fn edge_bits(n: usize, adj: &[u8]) -> u32 {
    let mut bits = 0;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[i] & (1 << j) != 0 {
                bits |= 1 << k;
            }
            k += 1;
        }
    }
    bits
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Least edge mask over the relabelings that list vertices by descending
/// degree; equal for isomorphic graphs.
fn canonical(n: usize, adj: &[u8]) -> u32 {
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut classes: BTreeMap<std::cmp::Reverse<u32>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(std::cmp::Reverse(deg[v])).or_default().push(v);
    }
    let choices: Vec<Vec<Vec<usize>>> = classes.values().map(|c| permutations(c)).collect();
    let mut best = u32::MAX;
    let mut idx = vec![0; choices.len()];
    loop {
        let order: Vec<usize> = idx.iter().zip(&choices).flat_map(|(&i, c)| c[i].iter().copied()).collect();
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut relabeled = vec![0u8; n];
        for u in 0..n {
            for w in 0..n {
                if adj[u] & (1 << w) != 0 {
                    relabeled[pos[u]] |= 1 << pos[w];
                }
            }
        }
        best = best.min(edge_bits(n, &relabeled));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return best;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn connected(n: usize, adj: &[u8]) -> bool {
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier & (1 << v) != 0 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

/// One adjacency list per isomorphism class of graph on `1..=max` vertices,
/// grown by attaching a vertex to every subset of an earlier class.
fn graphs_up_to(max: usize) -> Vec<Vec<u8>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![vec![0]];
    all.extend(layer.clone());
    for n in 2..=max {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for mask in 0u8..(1 << (n - 1)) {
                let mut adj = g.clone();
                adj.push(mask);
                for (v, a) in adj.iter_mut().enumerate().take(n - 1) {
                    if mask & (1 << v) != 0 {
                        *a |= 1 << (n - 1);
                    }
                }
                if seen.insert(canonical(n, &adj)) {
                    next.push(adj);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn to_graph(adj: &[u8]) -> FiniteGraph {
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).filter(move |&w| adj[u] & (1 << w) != 0).map(move |w| (u, w)))
        .collect();
    FiniteGraph::from_index_edges(n, &edges).expect("edges in range")
}

fn greedy_oracle_agreement() -> Outcome {
    let start = Instant::now();
    let graphs: Vec<FiniteGraph> = graphs_up_to(SWEEP_MAX_VERTICES)
        .into_iter()
        .filter(|adj| connected(adj.len(), adj))
        .map(|adj| to_graph(&adj))
        .collect();
    // connected graphs on 1..=7 vertices up to isomorphism
    check(graphs.len() == 1 + 1 + 2 + 6 + 21 + 112 + 853, || format!("enumerated {} graphs", graphs.len()))?;
    let mut runs = 0;
    for g in &graphs {
        let x = MetricView::whole(g);
        for r in SWEEP_RADII {
            let n_star = (0..g.vertex_count())
                .find(|&n| exact_min_bound(&x, r, n).is_ok_and(|e| e.bound <= 2 * r))
                .expect("singletons always qualify");
            let w = greedy_witness(&x, r, n_star).map_err(|e| e.to_string())?;
            let ok = w.as_ref().is_some_and(|w| w.bound <= 2 * r && w.validate(&x).is_ok());
            check(ok, || format!("greedy failed on {:?} at r={r}, n={n_star}", g.edges().collect::<Vec<_>>()))?;
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < SWEEP_TIME_LIMIT, || format!("sweep took {elapsed:?}"))?;
    Ok(format!("{} graphs, {runs} runs at the exact minimal n, in {elapsed:.2?}", graphs.len()))
}

fn projection_fits() -> Outcome {
    let mut parts = Vec::new();
    for spec in [chain(), triangle()] {
        let a = Amalgamation::build(&spec).map_err(|e| e.to_string())?;
        let fit = a.projection_fit().ok_or("no fit on the grid")?;
        check(
            fit.gamma <= Rational::from_integer(PROJECTION_GAMMA_MAX) && fit.c <= Rational::from_integer(PROJECTION_C_MAX),
            || format!("{}: fit {fit:?}", spec.name),
        )?;
        let dh = all_pairs(&a.sum.graph);
        let dg = all_pairs(&a.amalgam.graph);
        let pi = &a.amalgam.projection;
        let (gamma, c) = (fit.gamma, fit.c);
        for x in 0..dh.len() {
            for y in 0..dh.len() {
                let (h, g) = (Rational::from_integer(dh[x][y] as i64), Rational::from_integer(dg[pi[x]][pi[y]] as i64));
                check(h / gamma - c <= g && g <= gamma * h + c, || {
                    format!("{}: pair ({x}, {y}) breaks the fit", spec.name)
                })?;
            }
        }
        parts.push(format!(
            "{} depth {}: (γ, c) = ({}, {}) over all {} pairs",
            spec.name,
            spec.depth,
            fit.gamma,
            fit.c,
            dh.len() * dh.len()
        ));
    }
    Ok(parts.join("; "))
}

fn theorem_certificate() -> Outcome {
    let dir = scratch_dir("theorem");
    let start = Instant::now();
    let status = forge()
        .args(["verify-theorem", "--spec", "shipped:chain_k2", "--R", "2", "--r", "10", "--depth", "40", "--out"])
        .arg(&dir)
        .output()
        .map_err(|e| e.to_string())?
        .status;
    let elapsed = start.elapsed();
    check(status.code() == Some(0), || format!("exit {status:?}"))?;
    check(elapsed < THEOREM_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    let path = dir.join("chain-k2-R2-r10-d40.theorem.cert.json");
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    check(cert["verdict"] == "PASS", || "verdict is not PASS".into())?;
    let detail = &cert["detail"];
    check(detail["bound"] == 1, || format!("bound {}", detail["bound"]))?;
    let stage = |name: &str| -> Value {
        detail["stages"]
            .as_array()
            .and_then(|s| s.iter().find(|s| s["name"] == name))
            .map(|s| s["data"].clone())
            .unwrap_or(Value::Null)
    };
    let part = stage("partition");
    check(part["covers_core"] == true && part["interiors_disjoint"] == true, || format!("partition {part}"))?;
    let sep = stage("separation");
    let min = sep["min_distance"].as_u64().unwrap_or(0);
    check(sep["all_at_least_3r"] == true && min >= 6, || format!("separation {sep}"))?;
    let bd = stage("boundary");
    let mult = bd["multiplicity"].as_u64().unwrap_or(u64::MAX);
    check(mult <= 1, || format!("multiplicity {mult}"))?;
    let leb = &bd["lebesgue"];
    let exceeds = |v: &Value| v.as_u64().map_or(v == "inf", |x| x > 2);
    check(exceeds(&leb["per_member"]) && exceeds(&leb["standard"]), || format!("lebesgue {leb}"))?;
    Ok(format!(
        "PASS in {elapsed:.2?}: core covered, interiors disjoint, min separation {min} ≥ 3R, multiplicity {mult} ≤ 1, Lebesgue {}/{} > R",
        leb["per_member"], leb["standard"]
    ))
}

fn strips() -> Outcome {
    let a = Amalgamation::build(&triangle()).map_err(|e| e.to_string())?;
    let root = a.tree.root();
    let top = max_stratum(&a, root);
    let (mut gamma, mut c) = (Rational::from_integer(0), Rational::from_integer(0));
    for m in 1..=top {
        let rep = lemma_strip(&a, root, m, STRIP_RADIUS).map_err(|e| format!("m={m}: {e}"))?;
        match rep.result {
            StripVerdict::Fit { fit } => {
                gamma = gamma.max(fit.gamma);
                c = c.max(fit.c);
            }
            StripVerdict::Empty => {}
            StripVerdict::NoFit => return Err(format!("m={m}: no fit")),
        }
    }
    check(
        gamma <= Rational::from_integer(STRIP_GAMMA_MAX) && c <= Rational::from_integer(STRIP_C_MAX),
        || format!("uniform constants ({gamma}, {c})"),
    )?;
    Ok(format!("m = 1..={top} at r = {STRIP_RADIUS}: uniform (γ, c) = ({gamma}, {c})"))
}

fn with_explicit_inverses(mut doc: AmalgamationDocument) -> AmalgamationDocument {
    doc.reverse_bonding = doc
        .bonding
        .iter()
        .map(|e| BondingEntry {
            k: e.l.clone(),
            l: e.k.clone(),
            pairs: e.pairs.iter().map(|[x, y]| [y.clone(), x.clone()]).collect(),
        })
        .collect();
    doc
}

fn construction_case(seed: u64) -> Result<(), TestCaseError> {
    let doc = with_explicit_inverses(random_document(&mut rng_from_seed(seed), InstanceShape::default()));
    let spec = AmalgamationSpec::resolve(&doc, ResolveContext::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let a = Amalgamation::build(&spec).map_err(|e| TestCaseError::fail(e.to_string()))?;

    for (i, node) in a.tree.nodes.iter().enumerate() {
        if a.tree.is_frontier(i) {
            continue;
        }
        let mut labels: Vec<usize> = node.edges.iter().map(|e| e.label).collect();
        labels.sort_unstable();
        prop_assert_eq!(labels, (0..a.tree.p(node.side)).collect::<Vec<_>>(), "labels at {}", &node.name);
    }

    let atlas = &a.spec.atlas;
    for (&(k, l), pairs) in &atlas.forward {
        let back = &atlas.reverse[&(l, k)];
        prop_assert_eq!(back.len(), pairs.len());
        for &(x, y) in pairs {
            prop_assert!(back.contains(&(y, x)));
        }
    }

    let flipped = Amalgamation::build_oriented(&a.spec, Orientation::Reversed).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&a.sum.bridging, &flipped.sum.bridging);
    prop_assert_eq!(&a.amalgam.graph, &flipped.amalgam.graph);

    let dh = all_pairs(&a.sum.graph);
    let dg = all_pairs(&a.amalgam.graph);
    let pi = &a.amalgam.projection;
    for x in 0..dh.len() {
        for y in 0..dh.len() {
            prop_assert!(dg[pi[x]][pi[y]] <= dh[x][y]);
        }
    }
    prop_assert!(check_projection_nonincreasing(&a, seed, true).ok());

    let g = &a.sum.graph;
    let mut rng = rng_from_seed(seed ^ 0x5eed);
    let set: VertexSubset = (0..g.vertex_count()).filter(|_| rng.gen_bool(0.5)).collect();
    let boundary = g.set_boundary(&set);
    let interior = g.set_interior(&set);
    prop_assert!(boundary.is_disjoint(&interior));
    prop_assert_eq!(boundary.union(&interior), set);
    Ok(())
}

fn construction_invariants() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&any::<u64>(), construction_case).map_err(|e| e.to_string())?;
    Ok(format!(
        "{PROPERTY_CASES} random instances: labels complete, bonding inverses paired, orientation-free, π non-expanding, interior ⊎ boundary"
    ))
}

/// `P₁₀` mapped into a stretched, identical or folded path with pendant
/// and triangle decorations.
fn qi_fixture(seed: u64) -> (FiniteGraph, VertexMap) {
    let mut rng = rng_from_seed(seed);
    let (len, image): (usize, fn(usize) -> usize) = match rng.gen_range(0..3) {
        0 => (10, |i| i),
        1 => (19, |i| 2 * i),
        _ => (5, |i| i / 2),
    };
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    let mut n = len;
    for _ in 0..rng.gen_range(0..6) {
        let at = rng.gen_range(0..len);
        edges.push((at, n));
        if rng.gen_bool(0.5) && at + 1 < len {
            edges.push((at + 1, n));
        }
        n += 1;
    }
    let g = FiniteGraph::from_index_edges(n, &edges).expect("edges in range");
    (g, VertexMap::new((0..10).map(|i| (i, image(i))).collect()))
}

fn transport_case((seed, r, n): (u64, u32, usize)) -> Result<(), TestCaseError> {
    let fit = QiFit {
        gamma: Rational::from_integer(2),
        c: Rational::from_integer(1),
    };
    let p = FiniteGraph::path(10);
    let src = MetricView::whole(&p);
    let (g, map) = qi_fixture(seed);
    let whole = MetricView::whole(&g);
    prop_assert!(check_quasi_isometry(&src, &whole, &map, fit.gamma, fit.c).unwrap());
    let witness = exact_min_bound(&src, r, n).unwrap().witness;
    let moved = witness.transport(&whole, &map, fit).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(moved.r, r / 2 - 1);
    prop_assert_eq!(moved.bound, 2 * witness.bound + 1);
    let image: VertexSubset = map.pairs.iter().map(|&(_, y)| y).collect();
    let target = MetricView::restricted(&g, image);
    moved.validate(&target).map_err(|e| TestCaseError::fail(e.to_string()))?;
    Ok(())
}

fn witness_transport() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: TRANSPORT_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(any::<u64>(), 4u32..=9, 0usize..=1), transport_case)
        .map_err(|e| e.to_string())?;
    Ok(format!("{TRANSPORT_CASES} fixtures through a verified (2, 1)-QI: r' = r/2 - 1, D' = 2D + 1, valid on the image"))
}

fn tree_contents(root: &Path) -> Result<BTreeMap<PathBuf, Vec<u8>>, String> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).expect("below root").to_path_buf();
                out.insert(rel, std::fs::read(&path).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let dirs = [scratch_dir("suite-a"), scratch_dir("suite-b")];
    for d in &dirs {
        let status = forge().args(["suite", "--out"]).arg(d).output().map_err(|e| e.to_string())?.status;
        check(status.code() == Some(0), || format!("suite exit {status:?}"))?;
    }
    let a = tree_contents(&dirs[0])?;
    let b = tree_contents(&dirs[1])?;
    let report: Value = serde_json::from_slice(&a[Path::new("report.json")]).map_err(|e| e.to_string())?;
    for d in &dirs {
        let _ = std::fs::remove_dir_all(d);
    }
    check(a == b, || {
        let differing: Vec<_> = a.keys().chain(b.keys()).filter(|k| a.get(*k) != b.get(*k)).collect();
        format!("trees differ at {differing:?}")
    })?;
    let rows = report["rows"].as_array().map_or(0, Vec::len);
    check(rows >= MIN_SUITE_ROWS, || format!("only {rows} report rows"))?;
    check(report["rows"].as_array().is_some_and(|r| r.iter().all(|row| row["verdict"] == "PASS")), || {
        "a suite row failed".into()
    })?;
    Ok(format!("{} files identical across two suite runs; {rows} rows, all PASS", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle fixtures", oracle_fixtures),
        ("greedy agrees with the exact oracle", greedy_oracle_agreement),
        ("projection fit", projection_fits),
        ("theorem certificate", theorem_certificate),
        ("strip constants", strips),
        ("construction invariants", construction_invariants),
        ("witness transport", witness_transport),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match result {
            Ok(msg) => println!("criterion {} PASS {name} ({elapsed:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
