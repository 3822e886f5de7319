//! Certificate for the asymptotic-dimension bound of a tree amalgamation,
//! assembled stage by stage on a finite truncation.

pub mod blocks;
pub mod strata;
pub mod symmetry;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::amalgam::{classify_type, select_orbit_representatives, Amalgamation, AmalgamationSpec, AmalgamationType};
use crate::cover::{check_uniform_asdim, ExtNat};
use crate::error::TheoremError;
use crate::graph::{MetricView, VertexSubset};
use crate::quasi::{fit_qi_constants, VertexMap};

pub use blocks::{
    assemble_partition, base_blocks, boundary_complex, safe_nodes, verify_separation, BaseBlocks, Block, BlockGraph,
    BoundaryReport, Partition, PartitionReport, SeparationReport,
};
pub use strata::{lemma_strip, max_stratum, project_to_tree, strata, Strata, StripReport, StripVerdict};
pub use symmetry::{build_symmetry_map, verify_symmetry, SymmetryCheck, SymmetryMap};

/// `R`, `r` and the truncation depth used by a certificate run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProofParameters {
    #[serde(rename = "R")]
    pub big_r: u32,
    pub r: u32,
    pub depth: u32,
}

impl ProofParameters {
    pub fn validate(&self) -> Result<(), TheoremError> {
        if self.big_r == 0 {
            return Err(TheoremError::Precondition("R must be positive".into()));
        }
        if self.r <= 4 * self.big_r {
            return Err(TheoremError::Precondition(format!(
                "r = {} must exceed 4R = {}",
                self.r,
                4 * self.big_r
            )));
        }
        if self.r % 2 != 0 {
            return Err(TheoremError::Precondition(format!("r = {} must be even", self.r)));
        }
        if self.depth < 2 * self.r {
            return Err(TheoremError::Precondition(format!(
                "depth {} is below 2r = {}",
                self.depth,
                2 * self.r
            )));
        }
        Ok(())
    }
}

/// `max(asdim G₁, asdim G₂, asdim 𝒞 + 1)`.
pub fn theorem_bound(factor1: u32, factor2: u32, adhesion: u32) -> u32 {
    factor1.max(factor2).max(adhesion + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub name: String,
    pub verdict: Verdict,
    pub data: Value,
}

impl Stage {
    fn gate(name: &str, pass: bool, data: Value) -> Self {
        Self {
            name: name.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            data,
        }
    }

    fn info(name: &str, data: Value) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Info,
            data,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremCertificate {
    pub name: String,
    pub params: ProofParameters,
    pub bound: u32,
    pub stages: Vec<Stage>,
    pub verdict: Verdict,
}

impl TheoremCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("stage data serializes")
}

/// Qi fit of the nearest-point retraction `source → target` inside `a`.
fn retraction_fit(a: &Amalgamation, source: &VertexSubset, target: &VertexSubset, big_r: u32) -> Value {
    if source.is_empty() || target.is_empty() {
        return json!({ "fit": null, "c_at_most_R": false });
    }
    let g = &a.sum.graph;
    let (_, nearest) = g.nearest_sources(target.as_slice());
    let src = MetricView::restricted(g, source.clone());
    let dst = MetricView::restricted(g, target.clone());
    let map = VertexMap::from_fn(&src, |x| nearest[x]);
    let fit = fit_qi_constants(&src, &dst, &map).ok().flatten();
    let within = fit.is_some_and(|f| f.c <= crate::quasi::Rational::from_integer(big_r as i64));
    json!({ "fit": fit, "c_at_most_R": within })
}

/// Builds the amalgamation at `params.depth` and runs every stage of the
/// certificate. Errors are reserved for inputs the construction cannot
/// start on; a failed check yields a certificate with verdict `fail`.
pub fn run_certificate(spec: &AmalgamationSpec, params: ProofParameters) -> Result<TheoremCertificate, TheoremError> {
    params.validate()?;
    let types = classify_type(spec);
    if types.classification == AmalgamationType::Neither {
        return Err(TheoremError::MissingConsistency(types.failing().join(", ")));
    }
    let a = Amalgamation::build(&spec.with_depth(params.depth))?;
    let declared = spec.declared;
    let n = theorem_bound(declared.factors[0], declared.factors[1], declared.adhesion) as usize;
    let reps = [
        select_orbit_representatives(&a.spec.adhesions[0], &a.spec.actions[0])?,
        select_orbit_representatives(&a.spec.adhesions[1], &a.spec.actions[1])?,
    ];

    let mut stages = vec![Stage::gate(
        "classification",
        true,
        json!({ "type": types.classification, "report": types }),
    )];

    let base = base_blocks(&a, &params, &reps);
    stages.push(Stage::info(
        "base-blocks",
        json!({
            "anchor": base.anchor.len(),
            "M_R": base.m_r.len(),
            "U_r": { "vertices": base.u_r.vertices.len(), "edges": base.u_r.edges.len() },
            "W_r": { "vertices": base.w_r.vertices.len(), "edges": base.w_r.edges.len() },
            "W0": { "vertices": base.w0.vertices.len(), "edges": base.w0.edges.len() },
        }),
    ));

    let (safe, frontier) = safe_nodes(&a, &params);
    let maps: Vec<SymmetryMap> = safe
        .par_iter()
        .map(|&t| build_symmetry_map(&a, &reps[0], t, params.r))
        .collect::<Result<_, _>>()?;
    let checks: Vec<SymmetryCheck> = maps.par_iter().map(|f| verify_symmetry(&a, f)).collect();
    let bad: Vec<&SymmetryCheck> = checks.iter().filter(|c| !c.ok()).collect();
    stages.push(Stage::gate(
        "symmetry",
        bad.is_empty(),
        json!({ "maps": checks.len(), "failures": bad.iter().take(16).collect::<Vec<_>>() }),
    ));

    let (partition, part_report) = assemble_partition(&a, &params, &base, &maps, &frontier);
    stages.push(Stage::gate("partition", part_report.ok(), to_value(&part_report)));

    let subspaces: Vec<VertexSubset> = partition.blocks.iter().map(|b| b.graph.vertices.clone()).collect();
    let uniform = check_uniform_asdim(&a.sum.graph, &subspaces, n, params.r)?;
    stages.push(Stage::gate(
        "uniform-asdim",
        uniform.is_some(),
        json!({ "n": n, "scale": params.r, "bound": uniform.as_ref().map(|u| u.bound) }),
    ));

    let (_, boundary) = boundary_complex(&a, &params, &base, &partition, &maps, n)?;
    stages.push(Stage::gate("boundary", boundary.ok(), to_value(&boundary)));

    let separation = verify_separation(&a, &params, &partition);
    stages.push(Stage::gate("separation", separation.all_exceed_r, to_value(&separation)));

    stages.push(Stage::info("qi-W0", retraction_fit(&a, &base.w0.vertices, &base.anchor, params.big_r)));
    stages.push(Stage::info("qi-M_R", retraction_fit(&a, &base.m_r, &base.anchor, params.big_r)));
    stages.push(Stage::info(
        "frontier",
        json!({ "excluded": frontier.len(), "min_separation_unbounded": separation.min_distance == ExtNat::Infinite }),
    ));

    let pass = stages.iter().all(|s| s.verdict != Verdict::Fail);
    Ok(TheoremCertificate {
        name: spec.name.clone(),
        params,
        bound: n as u32,
        stages,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}
