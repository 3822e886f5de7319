//! One function per subcommand; each returns the certificates it produced
//! plus any auxiliary files, leaving output to the caller.

use std::collections::BTreeMap;

use asdim_core::amalgam::group::CLOSURE_CAP;
use asdim_core::amalgam::spec::FactorRef;
use asdim_core::amalgam::{compute_automorphisms, vertex_orbits, Amalgamation};
use asdim_core::cover::{exact_min_bound, greedy_witness};
use asdim_core::sampling::check_projection_nonincreasing;
use asdim_core::{run_certificate, FiniteGraph, MetricView, ProofParameters};
use serde_json::{json, Value};

use crate::artifact::{Certificate, Outcome, RunConfig};
use crate::error::CliError;
use crate::input::Source;

/// Certificates plus auxiliary files (name, contents) written next to them.
#[derive(Default)]
pub struct Run {
    pub certificates: Vec<Certificate>,
    pub files: Vec<(String, String)>,
}

impl Run {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.verdict.passed())
    }

    fn extend(&mut self, other: Run) {
        self.certificates.extend(other.certificates);
        self.files.extend(other.files);
    }
}

fn params<const N: usize>(entries: [(&str, Value); N]) -> BTreeMap<String, Value> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn config(command: &str, src: &Source, params: BTreeMap<String, Value>, seed: Option<u64>) -> RunConfig {
    RunConfig {
        command: command.into(),
        spec: src.label.clone(),
        params,
        seed,
    }
}

fn require_radius(r: u32) -> Result<(), CliError> {
    if r == 0 {
        return Err(CliError::Precondition("r must be positive".into()));
    }
    Ok(())
}

pub struct BuildOptions {
    pub depth: Option<u32>,
    pub seed: u64,
    pub exhaustive: bool,
    pub dot: bool,
}

fn build_certificate(name: String, a: &Amalgamation, cfg: RunConfig, opts: &BuildOptions) -> Certificate {
    let report = a.report();
    let check = check_projection_nonincreasing(a, opts.seed, opts.exhaustive);
    let mut measured = params([
        ("tree_nodes", json!(report.tree_nodes)),
        ("sum_vertices", json!(report.sum_vertices)),
        ("amalgam_vertices", json!(report.amalgam_vertices)),
        ("amalgam_edges", json!(report.amalgam_edges)),
        ("max_identification", json!(report.max_identification)),
        ("classification", json!(report.classification.classification)),
        ("projection_violations", json!(check.violations)),
    ]);
    if let Some(fit) = report.projection_fit {
        measured.insert("projection_fit".into(), json!(fit));
    }
    Certificate {
        kind: "build".into(),
        name,
        config: cfg,
        verdict: Outcome::from_bool(report.is_valid() && check.ok()),
        measured,
        detail: json!({ "report": report, "projection_check": check }),
    }
}

fn graph_files(stem: &str, g: &FiniteGraph, dot: bool) -> Vec<(String, String)> {
    let mut files = vec![(
        format!("{stem}.graph.json"),
        serde_json::to_string_pretty(&g.to_document()).expect("graph serializes") + "\n",
    )];
    if dot {
        files.push((format!("{stem}.dot"), g.to_dot(stem)));
    }
    files
}

pub fn build(src: &Source, opts: &BuildOptions) -> Result<Run, CliError> {
    let mut spec = src.spec()?;
    if let Some(d) = opts.depth {
        spec = spec.with_depth(d);
    }
    let a = Amalgamation::build(&spec)?;
    let cfg = config(
        "build",
        src,
        params([("depth", json!(spec.depth)), ("exhaustive", json!(opts.exhaustive))]),
        Some(opts.seed),
    );
    let name = format!("{}-d{}", spec.name, spec.depth);
    let files = graph_files(&name, &a.amalgam.graph, opts.dot);
    Ok(Run {
        certificates: vec![build_certificate(name, &a, cfg, opts)],
        files,
    })
}

pub fn witness(src: &Source, stem: &str, r: u32, n: usize) -> Result<Run, CliError> {
    require_radius(r)?;
    let g = src.graph()?;
    let x = MetricView::whole(&g);
    let found = greedy_witness(&x, r, n)?;
    let (verdict, measured, detail) = match &found {
        Some(w) => {
            let valid = w.validate(&x).is_ok();
            (Outcome::from_bool(valid), params([("D", json!(w.bound))]), json!(w.to_document(&g)))
        }
        None => (Outcome::Fail, BTreeMap::new(), Value::Null),
    };
    Ok(Run {
        certificates: vec![Certificate {
            kind: "witness".into(),
            name: format!("{stem}-r{r}-n{n}"),
            config: config("witness", src, params([("r", json!(r)), ("n", json!(n))]), None),
            verdict,
            measured,
            detail,
        }],
        files: Vec::new(),
    })
}

pub fn oracle(src: &Source, stem: &str, r: u32, n: usize) -> Result<Run, CliError> {
    require_radius(r)?;
    let g = src.graph()?;
    let x = MetricView::whole(&g);
    let exact = exact_min_bound(&x, r, n)?;
    let valid = exact.witness.validate(&x).is_ok();
    Ok(Run {
        certificates: vec![Certificate {
            kind: "oracle".into(),
            name: format!("{stem}-r{r}-n{n}"),
            config: config("oracle", src, params([("r", json!(r)), ("n", json!(n))]), None),
            verdict: Outcome::from_bool(valid),
            measured: params([("D", json!(exact.bound))]),
            detail: json!(exact.witness.to_document(&g)),
        }],
        files: Vec::new(),
    })
}

pub fn aut(src: &Source, stem: &str) -> Result<Run, CliError> {
    let g = src.graph()?;
    let action = compute_automorphisms(&g, CLOSURE_CAP)?;
    let orbits: Vec<Vec<&str>> = vertex_orbits(&action)
        .iter()
        .map(|o| o.iter().map(|v| g.id(v)).collect())
        .collect();
    Ok(Run {
        certificates: vec![Certificate {
            kind: "aut".into(),
            name: stem.to_string(),
            config: config("aut", src, BTreeMap::new(), None),
            verdict: Outcome::Pass,
            measured: params([("order", json!(action.order())), ("orbits", json!(orbits.len()))]),
            detail: json!({ "order": action.order(), "orbits": orbits }),
        }],
        files: Vec::new(),
    })
}

pub struct TheoremOptions {
    pub big_r: u32,
    pub r: u32,
    pub depth: Option<u32>,
}

fn theorem_certificate(
    src: &Source,
    spec: &asdim_core::amalgam::AmalgamationSpec,
    opts: &TheoremOptions,
    default_depth: u32,
) -> Result<Certificate, CliError> {
    let p = ProofParameters {
        big_r: opts.big_r,
        r: opts.r,
        depth: opts.depth.unwrap_or(default_depth),
    };
    let cert = run_certificate(spec, p)?;
    let mut measured = params([("bound", json!(cert.bound))]);
    for (stage, key) in [
        ("separation", "min_distance"),
        ("boundary", "multiplicity"),
        ("boundary", "lebesgue"),
        ("qi-W0", "fit"),
        ("qi-M_R", "fit"),
    ] {
        if let Some(v) = cert.stage(stage).and_then(|s| s.data.get(key)) {
            measured.insert(format!("{stage}.{key}"), v.clone());
        }
    }
    Ok(Certificate {
        kind: "theorem".into(),
        name: format!("{}-R{}-r{}-d{}", spec.name, p.big_r, p.r, p.depth),
        config: config(
            "verify-theorem",
            src,
            params([("R", json!(p.big_r)), ("r", json!(p.r)), ("depth", json!(p.depth))]),
            None,
        ),
        verdict: Outcome::from_bool(cert.passed()),
        measured,
        detail: serde_json::to_value(&cert).expect("certificate serializes"),
    })
}

pub fn verify_theorem(src: &Source, opts: &TheoremOptions) -> Result<Run, CliError> {
    let spec = src.spec()?;
    Ok(Run {
        certificates: vec![theorem_certificate(src, &spec, opts, spec.depth)?],
        files: Vec::new(),
    })
}

/// Builds each stage at its document depth on the previous amalgam, and
/// certifies it when `theorem` is given. Reports
/// `max{1, declared asdim of every original factor}`.
pub fn iterate(src: &Source, build: &BuildOptions, theorem: Option<&TheoremOptions>) -> Result<Run, CliError> {
    let doc = src.iteration()?;
    if doc.stages.is_empty() {
        return Err(CliError::Config(format!("{}: iteration has no stages", src.label)));
    }
    let mut run = Run::default();
    let mut previous: Option<FiniteGraph> = None;
    let mut bound = 1;
    let mut stages = Vec::new();
    for (i, stage) in doc.stages.iter().enumerate() {
        let chained = matches!(stage.factors.first(), Some(FactorRef::Previous { .. }));
        if i > 0 && !chained {
            return Err(CliError::Config(format!(
                "{}: stage {} must take `previous` as its first factor",
                src.label,
                i + 1
            )));
        }
        let spec = src.resolve(stage, previous.as_ref())?;
        for (side, &declared) in spec.declared.factors.iter().enumerate() {
            if !(side == 0 && chained) {
                bound = bound.max(declared);
            }
        }
        let a = Amalgamation::build(&spec)?;
        let name = format!("{}-stage{}", doc.name, i + 1);
        let cfg = config(
            "iterate",
            src,
            params([("stage", json!(i + 1)), ("depth", json!(spec.depth))]),
            Some(build.seed),
        );
        let cert = build_certificate(name, &a, cfg, build);
        stages.push(json!({
            "stage": i + 1,
            "name": spec.name,
            "amalgam_vertices": a.amalgam.graph.vertex_count(),
            "verdict": cert.verdict,
        }));
        run.certificates.push(cert);
        if let Some(t) = theorem {
            let mut c = theorem_certificate(src, &spec, t, 2 * t.r)?;
            c.name = format!("{}-stage{}-{}", doc.name, i + 1, c.name);
            run.certificates.push(c);
        }
        previous = Some(a.amalgam.graph);
    }
    let last = previous.expect("at least one stage");
    let ok = run.passed();
    run.files = graph_files(&doc.name, &last, build.dot);
    run.certificates.push(Certificate {
        kind: "iterate".into(),
        name: doc.name.clone(),
        config: config("iterate", src, params([("stages", json!(doc.stages.len()))]), Some(build.seed)),
        verdict: Outcome::from_bool(ok),
        measured: params([
            ("bound", json!(bound)),
            ("stages", json!(doc.stages.len())),
            ("amalgam_vertices", json!(last.vertex_count())),
        ]),
        detail: json!({ "bound": bound, "stages": stages }),
    });
    Ok(run)
}

/// Every shipped example, in a fixed order.
pub fn suite(seed: u64) -> Result<Run, CliError> {
    let shipped = |name: &str| crate::input::shipped(name).expect("shipped spec is embedded");
    let build_opts = BuildOptions {
        depth: None,
        seed,
        exhaustive: false,
        dot: false,
    };
    let mut run = Run::default();
    let p10 = shipped("p10");
    run.extend(oracle(&p10, "p10", 3, 1)?);
    run.extend(oracle(&p10, "p10", 3, 0)?);
    run.extend(witness(&p10, "p10", 3, 1)?);
    run.extend(aut(&p10, "p10")?);
    for name in ["chain_k2", "triangle_edge", "type2_k2"] {
        run.extend(build(&shipped(name), &build_opts)?);
    }
    for (name, big_r, r, depth) in [("chain_k2", 2, 10, 40), ("triangle_edge", 2, 10, 20), ("type2_k2", 2, 10, 20)] {
        let opts = TheoremOptions {
            big_r,
            r,
            depth: Some(depth),
        };
        run.extend(verify_theorem(&shipped(name), &opts)?);
    }
    run.extend(iterate(&shipped("iterate_k2"), &build_opts, None)?);
    Ok(run)
}
