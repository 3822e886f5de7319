//! The sum graph `G₁ + G₂`: one factor copy per tree node plus bridging
//! edges along the bonding maps.

use crate::amalgam::atlas::{AdhesionFamily, BondingAtlas};
use crate::amalgam::tree::ConnectingTree;
use crate::error::BuildError;
use crate::graph::{FiniteGraph, VertexSubset};

/// Which endpoint of each tree edge supplies the bonding map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Use `φ_{kℓ}` read from the parent side.
    Forward,
    /// Use `φ_{ℓk}` read from the child side.
    Reversed,
}

#[derive(Clone, Debug)]
pub struct SumGraph {
    pub graph: FiniteGraph,
    /// Tree node of each vertex.
    pub node_of: Vec<usize>,
    /// Factor vertex each vertex copies.
    pub factor_vertex: Vec<usize>,
    /// First vertex index of each node's copy.
    pub offsets: Vec<usize>,
    /// Bridging edges `(u, v)` with `u < v`, sorted.
    pub bridging: Vec<(usize, usize)>,
}

impl SumGraph {
    pub fn copy_vertices(&self, node: usize) -> std::ops::Range<usize> {
        let end = self.offsets.get(node + 1).copied().unwrap_or(self.node_of.len());
        self.offsets[node]..end
    }

    pub fn vertex(&self, node: usize, factor_vertex: usize) -> usize {
        self.offsets[node] + factor_vertex
    }

    /// The copy `S^v_k` of an adhesion set in node `v`.
    pub fn adhesion_copy(&self, node: usize, set: &VertexSubset) -> VertexSubset {
        set.iter().map(|x| self.vertex(node, x)).collect()
    }

    pub fn is_bridging(&self, u: usize, v: usize) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.bridging.binary_search(&e).is_ok()
    }
}

pub fn build_sum_graph(
    factors: &[FiniteGraph; 2],
    adhesions: &[AdhesionFamily; 2],
    atlas: &BondingAtlas,
    tree: &ConnectingTree,
    orientation: Orientation,
) -> Result<SumGraph, BuildError> {
    let mut ids = Vec::new();
    let mut node_of = Vec::new();
    let mut factor_vertex = Vec::new();
    let mut offsets = Vec::with_capacity(tree.node_count());
    let mut edges = Vec::new();
    for (t, node) in tree.nodes.iter().enumerate() {
        let g = &factors[node.side.index()];
        let off = ids.len();
        offsets.push(off);
        for x in 0..g.vertex_count() {
            ids.push(format!("{}:{}", node.name, g.id(x)));
            node_of.push(t);
            factor_vertex.push(x);
        }
        edges.extend(g.edges().map(|(a, b)| (off + a, off + b)));
    }
    let mut bridging = Vec::new();
    for (v, node) in tree.nodes.iter().enumerate() {
        let Some(u) = node.parent else { continue };
        let up = tree.nodes[u].side;
        let e = tree.nodes[u].edge_to(v).expect("tree edge stored on both ends");
        let (k, l) = (e.label, e.back_label);
        let missing = || {
            BuildError::MissingBonding(
                adhesions[up.index()].labels[k].clone(),
                adhesions[up.other().index()].labels[l].clone(),
            )
        };
        match orientation {
            Orientation::Forward => {
                let pairs = atlas.map(up, k, l).ok_or_else(missing)?;
                for (x, y) in pairs {
                    bridging.push((offsets[u] + x, offsets[v] + y));
                }
            }
            Orientation::Reversed => {
                let pairs = atlas.map(up.other(), l, k).ok_or_else(missing)?;
                for (y, x) in pairs {
                    bridging.push((offsets[v] + y, offsets[u] + x));
                }
            }
        }
    }
    for e in bridging.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    bridging.sort_unstable();
    edges.extend_from_slice(&bridging);
    let graph = FiniteGraph::from_edges(ids, &edges)?;
    Ok(SumGraph {
        graph,
        node_of,
        factor_vertex,
        offsets,
        bridging,
    })
}

/// Checks that deleting bridging edges leaves, for each tree node, a copy
/// of the right factor: same vertex count, edge count and degree sequence.
pub fn copy_structure_violations(sum: &SumGraph, factors: &[FiniteGraph; 2], tree: &ConnectingTree) -> Vec<String> {
    let mut out = Vec::new();
    for (t, node) in tree.nodes.iter().enumerate() {
        let f = &factors[node.side.index()];
        let range = sum.copy_vertices(t);
        if range.len() != f.vertex_count() {
            out.push(format!("{}: copy has {} vertices", node.name, range.len()));
            continue;
        }
        let mut internal = 0;
        let mut degs = Vec::new();
        for v in range.clone() {
            let d = sum
                .graph
                .neighbors(v)
                .iter()
                .filter(|&&w| range.contains(&w) && !sum.is_bridging(v, w))
                .count();
            internal += d;
            degs.push(d);
        }
        let mut fdegs: Vec<usize> = (0..f.vertex_count()).map(|x| f.degree(x)).collect();
        degs.sort_unstable();
        fdegs.sort_unstable();
        if internal / 2 != f.edge_count() || degs != fdegs {
            out.push(format!("{}: copy is not isomorphic to its factor", node.name));
        }
    }
    for &(u, v) in &sum.bridging {
        let (a, b) = (sum.node_of[u], sum.node_of[v]);
        if tree.nodes[a].edge_to(b).is_none() {
            out.push(format!("bridging edge between non-adjacent nodes {a} and {b}"));
        }
    }
    out
}
