//! The proof objects: base blocks around `t₁`, their translates `W_r^t`,
//! the boundary complex `Z` with its cover `𝒱`, and the separation of the
//! translated boundary sets.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::amalgam::Amalgamation;
use crate::cover::{check_rd_dim, greedy_witness, max_diameter, multiplicity, Cover, ExtNat, LebesgueNumbers};
use crate::error::TheoremError;
use crate::graph::{BallSearch, MetricView, VertexSubset, INF};
use crate::theorem::symmetry::SymmetryMap;
use crate::theorem::ProofParameters;

/// Vertex set plus explicit edge list, edges as sorted `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockGraph {
    pub vertices: VertexSubset,
    pub edges: Vec<(usize, usize)>,
}

impl BlockGraph {
    fn induced(a: &Amalgamation, vertices: VertexSubset) -> Self {
        let g = &a.sum.graph;
        let mask = vertices.mask(g.vertex_count());
        let mut edges = Vec::new();
        for u in vertices.iter() {
            for &w in g.neighbors(u) {
                if u < w && mask[w] {
                    edges.push((u, w));
                }
            }
        }
        Self { vertices, edges }
    }
}

#[derive(Clone, Debug)]
pub struct BaseBlocks {
    /// `⋃𝒮₁^{t₁}`.
    pub anchor: VertexSubset,
    pub m_r: VertexSubset,
    pub u_r: BlockGraph,
    pub w_r: BlockGraph,
    pub w0: BlockGraph,
}

/// Builds `M_R`, `U_r`, `W_r` and `W⁰` around the representative adhesion
/// sets of the root copy.
pub fn base_blocks(a: &Amalgamation, params: &ProofParameters, reps: &[Vec<usize>; 2]) -> BaseBlocks {
    let g = &a.sum.graph;
    let root = a.tree.root();
    let fams = &a.spec.adhesions;
    let anchor: VertexSubset = reps[0]
        .iter()
        .flat_map(|&k| a.sum.adhesion_copy(root, &fams[0].sets[k]).into_vec())
        .collect();
    let d0 = g.bfs(anchor.as_slice());
    let (big_r, r) = (params.big_r, params.r);
    let m_r: VertexSubset = (0..g.vertex_count()).filter(|&v| d0[v] == big_r).collect();

    let mut u_r = Vec::new();
    let mut ws = BallSearch::new(g.vertex_count());
    for (node, n) in a.tree.nodes.iter().enumerate() {
        if n.depth + 1 <= r {
            u_r.extend(a.sum.copy_vertices(node).filter(|&v| d0[v] != INF && d0[v] >= big_r));
        } else if n.depth == r {
            let side = n.side.index();
            let range = a.sum.copy_vertices(node);
            let centers: Vec<usize> = reps[side]
                .iter()
                .flat_map(|&k| a.sum.adhesion_copy(node, &fams[side].sets[k]).into_vec())
                .collect();
            ws.explore(g, &centers, r, |v, _| {
                if range.contains(&v) {
                    u_r.push(v);
                }
                true
            });
        }
    }
    let u_r = BlockGraph::induced(a, u_r.into_iter().collect());
    let m_mask = m_r.mask(g.vertex_count());
    let w_r = BlockGraph {
        vertices: u_r.vertices.clone(),
        edges: u_r.edges.iter().copied().filter(|&(x, y)| !(m_mask[x] && m_mask[y])).collect(),
    };
    let w0 = BlockGraph::induced(a, (0..g.vertex_count()).filter(|&v| d0[v] <= big_r).collect());
    BaseBlocks {
        anchor,
        m_r,
        u_r,
        w_r,
        w0,
    }
}

/// Nodes `t` with `d(t, t₁) ∈ rℕ` whose `r`-ball stays inside the
/// truncation, and the number of such nodes left out at the frontier.
pub fn safe_nodes(a: &Amalgamation, params: &ProofParameters) -> (Vec<usize>, Vec<usize>) {
    let mut safe = Vec::new();
    let mut frontier = Vec::new();
    for (i, n) in a.tree.nodes.iter().enumerate() {
        if n.depth % params.r != 0 {
            continue;
        }
        if n.depth + params.r <= a.tree.depth {
            safe.push(i);
        } else {
            frontier.push(i);
        }
    }
    (safe, frontier)
}

#[derive(Clone, Debug)]
pub struct Block {
    pub name: String,
    /// Anchor node `t`, `None` for `W⁰`.
    pub anchor: Option<usize>,
    pub graph: BlockGraph,
    /// `M_R^t`, empty for `W⁰`.
    pub boundary_set: VertexSubset,
}

#[derive(Clone, Debug)]
pub struct Partition {
    pub blocks: Vec<Block>,
    /// `⋃_t M_R^t`.
    pub boundary_union: VertexSubset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub blocks: usize,
    pub safe_nodes: Vec<String>,
    pub frontier_excluded: usize,
    pub frontier_sample: Vec<String>,
    pub core_radius: u32,
    pub core_vertices: usize,
    pub uncovered: usize,
    pub interior_overlaps: usize,
    pub edge_overlaps: usize,
    pub subgraph_of_base: bool,
    pub covers_core: bool,
    pub interiors_disjoint: bool,
}

impl PartitionReport {
    pub fn ok(&self) -> bool {
        self.covers_core && self.interiors_disjoint && self.subgraph_of_base
    }
}

/// Assembles `𝒲 = {W⁰} ∪ {W_r^t}` from the symmetry maps (one per safe node,
/// in node order) and checks it on the core.
pub fn assemble_partition(
    a: &Amalgamation,
    params: &ProofParameters,
    base: &BaseBlocks,
    maps: &[SymmetryMap],
    frontier: &[usize],
) -> (Partition, PartitionReport) {
    let g = &a.sum.graph;
    let n = g.vertex_count();
    let translated: Vec<(Block, bool)> = maps
        .par_iter()
        .map(|f| {
            let t = f.target;
            let sub = a.tree.separated_subtree(t);
            let inside = |v: usize| sub[a.sum.node_of[v]];
            let vertices: VertexSubset = f.image_of(a, &base.w_r.vertices).iter().filter(|&v| inside(v)).collect();
            let mut edges: Vec<(usize, usize)> = base
                .w_r
                .edges
                .iter()
                .filter_map(|&(x, y)| {
                    let (fx, fy) = (f.apply(a, x)?, f.apply(a, y)?);
                    (inside(fx) && inside(fy)).then_some((fx.min(fy), fx.max(fy)))
                })
                .collect();
            edges.sort_unstable();
            let boundary_set: VertexSubset = f.image_of(a, &base.m_r).iter().filter(|&v| inside(v)).collect();
            let subgraph = edges.iter().all(|&(x, y)| g.has_edge(x, y) && vertices.contains(x) && vertices.contains(y));
            (
                Block {
                    name: a.tree.nodes[t].name.clone(),
                    anchor: Some(t),
                    graph: BlockGraph { vertices, edges },
                    boundary_set,
                },
                subgraph,
            )
        })
        .collect();
    let subgraph_of_base = translated.iter().all(|(_, ok)| *ok);
    let mut blocks = vec![Block {
        name: "W0".into(),
        anchor: None,
        graph: base.w0.clone(),
        boundary_set: VertexSubset::new(),
    }];
    blocks.extend(translated.into_iter().map(|(b, _)| b));

    let boundary_union = blocks
        .iter()
        .fold(VertexSubset::new(), |acc, b| acc.union(&b.boundary_set));
    let zmask = boundary_union.mask(n);

    let core_radius = a.tree.depth.saturating_sub(params.r);
    let mut covered = vec![false; n];
    let mut interior_count = vec![0u8; n];
    let mut edge_seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edge_overlaps = 0;
    for (i, b) in blocks.iter().enumerate() {
        for v in b.graph.vertices.iter() {
            covered[v] = true;
            if !zmask[v] {
                interior_count[v] = interior_count[v].saturating_add(1);
            }
        }
        for &e in &b.graph.edges {
            if edge_seen.insert(e, i).is_some() {
                edge_overlaps += 1;
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| a.tree.nodes[a.sum.node_of[v]].depth <= core_radius).collect();
    let uncovered = core.iter().filter(|&&v| !covered[v]).count();
    let interior_overlaps = interior_count.iter().filter(|&&c| c > 1).count();
    let report = PartitionReport {
        blocks: blocks.len(),
        safe_nodes: maps.iter().map(|f| a.tree.nodes[f.target].name.clone()).collect(),
        frontier_excluded: frontier.len(),
        frontier_sample: frontier.iter().take(16).map(|&t| a.tree.nodes[t].name.clone()).collect(),
        core_radius,
        core_vertices: core.len(),
        uncovered,
        interior_overlaps,
        edge_overlaps,
        subgraph_of_base,
        covers_core: uncovered == 0,
        interiors_disjoint: interior_overlaps == 0,
    };
    (
        Partition {
            blocks,
            boundary_union,
        },
        report,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub z_points: usize,
    pub base_cover_members: usize,
    pub base_cover_families: usize,
    pub members: usize,
    pub covers_z: bool,
    /// The bound `d` of the transported cover.
    pub d: u32,
    pub multiplicity: usize,
    pub multiplicity_at_most_n: bool,
    /// The sharper count claimed for disjoint translates; informational.
    pub multiplicity_at_most_n_minus_1: bool,
    pub lebesgue: LebesgueNumbers,
    pub lebesgue_exceeds_r: bool,
    pub rd_dim_holds: bool,
}

impl BoundaryReport {
    pub fn ok(&self) -> bool {
        self.covers_z && self.rd_dim_holds && self.lebesgue_exceeds_r
    }
}

/// Builds `𝒰` on `M_R` with `n` families of `(R+1)`-disjoint sets, moves it
/// to every `M_R^t`, and checks `(R, d)-dim(Z) ≤ n − 1` for the union.
pub fn boundary_complex(
    a: &Amalgamation,
    params: &ProofParameters,
    base: &BaseBlocks,
    partition: &Partition,
    maps: &[SymmetryMap],
    n: usize,
) -> Result<(Vec<VertexSubset>, BoundaryReport), TheoremError> {
    let g = &a.sum.graph;
    let big_r = params.big_r;
    let mr_view = MetricView::restricted(g, base.m_r.clone());
    let families = n.saturating_sub(1);
    let witness = greedy_witness(&mr_view, big_r + 1, families)?.ok_or_else(|| TheoremError::Stage {
        stage: "boundary".into(),
        message: format!("no cover of M_R with {} families found", families + 1),
    })?;
    let base_cover: Vec<VertexSubset> = witness.families.iter().flatten().filter(|m| !m.is_empty()).cloned().collect();
    let mut members = base_cover.clone();
    for (f, block) in maps.iter().zip(partition.blocks.iter().skip(1)) {
        if f.target == a.tree.root() {
            continue;
        }
        for u in &base_cover {
            let moved = f.image_of(a, u).intersection(&block.boundary_set);
            if !moved.is_empty() {
                members.push(moved);
            }
        }
    }
    let z = &partition.boundary_union;
    let z_view = MetricView::restricted(g, z.clone());
    let (covers_z, report_rd) = match Cover::new(&z_view, members.clone()) {
        Ok(cover) => {
            let d = max_diameter(&z_view, cover.members());
            (true, Some((d, check_rd_dim(&z_view, &cover, big_r, d, families))))
        }
        Err(_) => (false, None),
    };
    let mult = multiplicity(&members);
    let (d, lebesgue, rd_holds) = match report_rd {
        Some((d, rep)) => (d, rep.lebesgue, rep.holds),
        None => (
            max_diameter(&z_view, &members),
            LebesgueNumbers {
                per_member: ExtNat::Finite(0),
                standard: ExtNat::Finite(0),
            },
            false,
        ),
    };
    let report = BoundaryReport {
        z_points: z.len(),
        base_cover_members: base_cover.len(),
        base_cover_families: families + 1,
        members: members.len(),
        covers_z,
        d,
        multiplicity: mult,
        multiplicity_at_most_n: mult <= n,
        multiplicity_at_most_n_minus_1: mult + 1 <= n,
        lebesgue,
        lebesgue_exceeds_r: lebesgue.per_member.exceeds(big_r) && lebesgue.standard.exceeds(big_r),
        rd_dim_holds: rd_holds,
    };
    Ok((members, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationPair {
    pub a: String,
    pub b: String,
    pub distance: ExtNat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub pairs: usize,
    pub min_distance: ExtNat,
    pub all_exceed_r: bool,
    pub all_at_least_3r: bool,
    /// Pairs closer than `3R`, at most [`SEPARATION_SAMPLE`] of them.
    pub close_pairs: Vec<SeparationPair>,
}

pub const SEPARATION_SAMPLE: usize = 32;

/// Exact `d(M_R^t, M_R^{t'})` for every pair of translated blocks.
pub fn verify_separation(a: &Amalgamation, params: &ProofParameters, partition: &Partition) -> SeparationReport {
    let g = &a.sum.graph;
    let sets: Vec<(&str, &VertexSubset)> = partition
        .blocks
        .iter()
        .filter(|b| b.anchor.is_some() && !b.boundary_set.is_empty())
        .map(|b| (b.name.as_str(), &b.boundary_set))
        .collect();
    let rows: Vec<Vec<u32>> = sets
        .par_iter()
        .enumerate()
        .map(|(i, (_, s))| {
            let dist = g.bfs(s.as_slice());
            sets[i + 1..]
                .iter()
                .map(|(_, t)| t.iter().map(|v| dist[v]).min().unwrap_or(INF))
                .collect()
        })
        .collect();
    let big_r = params.big_r;
    let mut pairs = 0;
    let mut min = INF;
    let mut close = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (off, &d) in row.iter().enumerate() {
            let j = i + 1 + off;
            pairs += 1;
            min = min.min(d);
            if d < 3 * big_r && close.len() < SEPARATION_SAMPLE {
                close.push(SeparationPair {
                    a: sets[i].0.to_string(),
                    b: sets[j].0.to_string(),
                    distance: ExtNat::from_distance(d),
                });
            }
        }
    }
    SeparationReport {
        pairs,
        min_distance: ExtNat::from_distance(min),
        all_exceed_r: min == INF || min > big_r,
        all_at_least_3r: min == INF || min >= 3 * big_r,
        close_pairs: close,
    }
}
