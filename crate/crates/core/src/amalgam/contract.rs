//! Contraction of the bridging edges: `G₁ ∗_T G₂` and the projection `π`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::amalgam::sum::SumGraph;
use crate::error::BuildError;
use crate::graph::FiniteGraph;
use crate::union_find::UnionFind;

#[derive(Clone, Debug)]
pub struct AmalgamGraph {
    pub graph: FiniteGraph,
    /// `π`: sum-graph vertex → amalgam vertex.
    pub projection: Vec<usize>,
    /// Sum-graph vertices in each fiber, sorted.
    pub fibers: Vec<Vec<usize>>,
    /// Tree nodes `V(T_x)` of each fiber, sorted.
    pub id_trees: Vec<Vec<usize>>,
    pub loops_removed: usize,
    pub parallel_removed: usize,
}

/// Contracts all bridging edges. Amalgam vertices are ordered by their least
/// member and named after it; loops and parallel edges created by the
/// contraction are dropped and counted.
pub fn contract_to_amalgam(h: &SumGraph) -> Result<AmalgamGraph, BuildError> {
    let n = h.graph.vertex_count();
    let mut uf = UnionFind::new(n);
    for &(u, v) in &h.bridging {
        uf.union(u, v);
    }
    let fibers = uf.classes();
    let mut projection = vec![0; n];
    for (i, f) in fibers.iter().enumerate() {
        for &v in f {
            projection[v] = i;
        }
    }
    let mut loops_removed = 0;
    let mut parallel_removed = 0;
    let mut edges = BTreeSet::new();
    for (u, v) in h.graph.edges() {
        if h.is_bridging(u, v) {
            continue;
        }
        let (a, b) = (projection[u], projection[v]);
        if a == b {
            loops_removed += 1;
        } else if !edges.insert((a.min(b), a.max(b))) {
            parallel_removed += 1;
        }
    }
    let ids = fibers.iter().map(|f| h.graph.id(f[0]).to_string()).collect();
    let edges: Vec<_> = edges.into_iter().collect();
    let graph = FiniteGraph::from_edges(ids, &edges)?;
    let id_trees = fibers
        .iter()
        .map(|f| {
            let s: BTreeSet<usize> = f.iter().map(|&v| h.node_of[v]).collect();
            s.into_iter().collect()
        })
        .collect();
    Ok(AmalgamGraph {
        graph,
        projection,
        fibers,
        id_trees,
        loops_removed,
        parallel_removed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentificationSizes {
    pub sizes: Vec<usize>,
    pub max: usize,
}

/// `|V(T_x)|` for every amalgam vertex.
pub fn identification_sizes(a: &AmalgamGraph) -> IdentificationSizes {
    let sizes: Vec<usize> = a.id_trees.iter().map(Vec::len).collect();
    let max = sizes.iter().copied().max().unwrap_or(0);
    IdentificationSizes { sizes, max }
}

/// True iff `π` restricted to some copy is a bijection onto the amalgam.
pub fn check_trivial(h: &SumGraph, a: &AmalgamGraph) -> bool {
    let total = a.graph.vertex_count();
    (0..h.offsets.len()).any(|t| {
        let range = h.copy_vertices(t);
        if range.len() != total {
            return false;
        }
        let imgs: BTreeSet<usize> = range.map(|v| a.projection[v]).collect();
        imgs.len() == total
    })
}
