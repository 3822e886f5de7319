//! Tree amalgamation: connecting trees, sum graphs, contraction to the
//! amalgam, and the action-respecting conditions.

pub mod atlas;
pub mod contract;
pub mod group;
pub mod respect;
pub mod spec;
pub mod sum;
pub mod tree;

use serde::Serialize;

use crate::error::BuildError;
use crate::graph::MetricView;
use crate::quasi::{fit_qi_constants, QiFit, VertexMap};

pub use atlas::{validate_bonding_atlas, AdhesionFamily, AtlasReport, BondingAtlas, PairList};
pub use contract::{check_trivial, contract_to_amalgam, identification_sizes, AmalgamGraph, IdentificationSizes};
pub use group::{
    compute_automorphisms, induced_label_permutation, select_orbit_representatives, vertex_orbits, GroupAction, Perm,
};
pub use respect::{check_consistent, check_respects, classify_type, AmalgamationType, RespectWitness, TypeReport};
pub use spec::{AmalgamationDocument, AmalgamationSpec, DeclaredAsdim, ResolveContext};
pub use sum::{build_sum_graph, copy_structure_violations, Orientation, SumGraph};
pub use tree::{ConnectingTree, Side};

/// Sum graphs above this size skip the all-pairs fit of `π` in reports.
pub const PROJECTION_FIT_LIMIT: usize = 2_000;

/// A spec together with every object built from it at its depth.
#[derive(Clone, Debug)]
pub struct Amalgamation {
    pub spec: AmalgamationSpec,
    pub tree: ConnectingTree,
    pub sum: SumGraph,
    pub amalgam: AmalgamGraph,
}

impl Amalgamation {
    pub fn build(spec: &AmalgamationSpec) -> Result<Self, BuildError> {
        Self::build_oriented(spec, Orientation::Forward)
    }

    pub fn build_oriented(spec: &AmalgamationSpec, orientation: Orientation) -> Result<Self, BuildError> {
        let report = validate_bonding_atlas(&spec.atlas, &spec.adhesions);
        if !report.valid {
            return Err(BuildError::Atlas(report.violations.join("; ")));
        }
        let tree = ConnectingTree::build(
            spec.adhesions[0].labels.clone(),
            spec.adhesions[1].labels.clone(),
            spec.depth,
            spec.type2_j.clone(),
        )?;
        let sum = build_sum_graph(&spec.factors, &spec.adhesions, &spec.atlas, &tree, orientation)?;
        let amalgam = contract_to_amalgam(&sum)?;
        Ok(Self {
            spec: spec.clone(),
            tree,
            sum,
            amalgam,
        })
    }

    /// Fits `(γ, c)` for `π : G₁+G₂ → G₁∗G₂`.
    pub fn projection_fit(&self) -> Option<QiFit> {
        let src = MetricView::whole(&self.sum.graph);
        let dst = MetricView::whole(&self.amalgam.graph);
        let map = VertexMap::new(self.amalgam.projection.iter().copied().enumerate().collect());
        fit_qi_constants(&src, &dst, &map).ok().flatten()
    }

    pub fn report(&self) -> BuildReport {
        let ids = identification_sizes(&self.amalgam);
        let types = classify_type(&self.spec);
        let projection_fit = (self.sum.graph.vertex_count() <= PROJECTION_FIT_LIMIT)
            .then(|| self.projection_fit())
            .flatten();
        BuildReport {
            name: self.spec.name.clone(),
            depth: self.tree.depth,
            tree_nodes: self.tree.node_count(),
            tree_edges: self.tree.edge_count(),
            labeling_violations: self.tree.labeling_violations(),
            atlas: validate_bonding_atlas(&self.spec.atlas, &self.spec.adhesions),
            copy_violations: copy_structure_violations(&self.sum, &self.spec.factors, &self.tree),
            sum_vertices: self.sum.graph.vertex_count(),
            sum_edges: self.sum.graph.edge_count(),
            bridging_edges: self.sum.bridging.len(),
            amalgam_vertices: self.amalgam.graph.vertex_count(),
            amalgam_edges: self.amalgam.graph.edge_count(),
            loops_removed: self.amalgam.loops_removed,
            parallel_removed: self.amalgam.parallel_removed,
            max_identification: ids.max,
            trivial: check_trivial(&self.sum, &self.amalgam),
            group_orders: [self.spec.actions[0].order(), self.spec.actions[1].order()],
            actions_defaulted: self.spec.actions_defaulted,
            classification: types,
            projection_fit,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub name: String,
    pub depth: u32,
    pub tree_nodes: usize,
    pub tree_edges: usize,
    pub labeling_violations: Vec<String>,
    pub atlas: AtlasReport,
    pub copy_violations: Vec<String>,
    pub sum_vertices: usize,
    pub sum_edges: usize,
    pub bridging_edges: usize,
    pub amalgam_vertices: usize,
    pub amalgam_edges: usize,
    pub loops_removed: usize,
    pub parallel_removed: usize,
    pub max_identification: usize,
    pub trivial: bool,
    pub group_orders: [usize; 2],
    pub actions_defaulted: [bool; 2],
    pub classification: TypeReport,
    pub projection_fit: Option<QiFit>,
}

impl BuildReport {
    pub fn is_valid(&self) -> bool {
        self.labeling_violations.is_empty() && self.atlas.valid && self.copy_violations.is_empty()
    }
}
