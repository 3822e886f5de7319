//! Seeded randomness: pair sampling for spot checks on large truncations and
//! random small amalgamation instances.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgam::spec::{ActionDocument, BondingEntry, FactorRef, TreeDocument};
use crate::amalgam::{AmalgamationDocument, Amalgamation};
use crate::graph::{FiniteGraph, MetricView};

/// Truncations up to this many sum-graph vertices are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 500;

/// Pairs drawn per spot check above [`EXHAUSTIVE_LIMIT`].
pub const SPOT_CHECK_PAIRS: usize = 4_000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` unordered pairs of distinct indices below `n`, drawn with
/// replacement.
pub fn sample_pairs<R: Rng>(rng: &mut R, n: usize, count: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let x = rng.gen_range(0..n);
            let mut y = rng.gen_range(0..n - 1);
            if y >= x {
                y += 1;
            }
            (x.min(y), x.max(y))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub pairs: usize,
    pub violations: usize,
}

impl ProjectionCheck {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

/// `d(πx, πy) ≤ d(x, y)` over all pairs, or over a seeded sample when the
/// sum graph is larger than [`EXHAUSTIVE_LIMIT`] and `exhaustive` is off.
pub fn check_projection_nonincreasing(a: &Amalgamation, seed: u64, exhaustive: bool) -> ProjectionCheck {
    let h = MetricView::whole(&a.sum.graph);
    let g = MetricView::whole(&a.amalgam.graph);
    let pi = &a.amalgam.projection;
    let n = a.sum.graph.vertex_count();
    let full = exhaustive || n <= EXHAUSTIVE_LIMIT;
    let pairs: Vec<(usize, usize)> = if full {
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
    } else {
        let mut p = sample_pairs(&mut rng_from_seed(seed), n, SPOT_CHECK_PAIRS);
        p.sort_unstable();
        p
    };
    let violations = pairs
        .iter()
        .filter(|&&(x, y)| g.dist(pi[x], pi[y]) > h.dist(x, y))
        .count();
    ProjectionCheck {
        exhaustive: full,
        seed: (!full).then_some(seed),
        pairs: pairs.len(),
        violations,
    }
}

/// Random spanning tree on `n` vertices plus up to `extra` further edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> FiniteGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    FiniteGraph::from_index_edges(n, &edges).expect("edges are in range")
}

/// Shape limits for [`random_document`].
#[derive(Clone, Copy, Debug)]
pub struct InstanceShape {
    pub max_vertices: usize,
    pub max_labels: usize,
    pub max_set_size: usize,
    pub max_depth: u32,
}

impl Default for InstanceShape {
    fn default() -> Self {
        Self {
            max_vertices: 6,
            max_labels: 3,
            max_set_size: 2,
            max_depth: 4,
        }
    }
}

/// A random amalgamation document with connected factors, adhesion sets of
/// one common size, a random bijection for every label pair, and trivial
/// actions.
pub fn random_document<R: Rng>(rng: &mut R, shape: InstanceShape) -> AmalgamationDocument {
    let set_size = rng.gen_range(1..=shape.max_set_size);
    let mut factors = Vec::new();
    let mut families = Vec::new();
    let mut sets: Vec<Vec<Vec<String>>> = Vec::new();
    for side in 0..2 {
        let n = rng.gen_range(set_size.max(2)..=shape.max_vertices.max(set_size.max(2)));
        let extra = rng.gen_range(0..=n);
        let g = random_connected_graph(rng, n, extra);
        let labels = rng.gen_range(2..=shape.max_labels.max(2));
        let prefix = if side == 0 { 'K' } else { 'L' };
        let mut fam = BTreeMap::new();
        let mut side_sets = Vec::new();
        let mut ids: Vec<String> = g.ids().to_vec();
        for i in 0..labels {
            ids.shuffle(rng);
            let mut s: Vec<String> = ids[..set_size].to_vec();
            s.sort();
            fam.insert(format!("{prefix}{i}"), s.clone());
            side_sets.push(s);
        }
        factors.push(FactorRef::Inline(g.to_document()));
        families.push(fam);
        sets.push(side_sets);
    }
    let mut bonding = Vec::new();
    for (k, s1) in sets[0].iter().enumerate() {
        for (l, s2) in sets[1].iter().enumerate() {
            let mut img = s2.clone();
            img.shuffle(rng);
            bonding.push(BondingEntry {
                k: format!("K{k}"),
                l: format!("L{l}"),
                pairs: s1.iter().cloned().zip(img).map(|(x, y)| [x, y]).collect(),
            });
        }
    }
    AmalgamationDocument {
        name: "random".into(),
        factors,
        adhesions: families,
        bonding,
        reverse_bonding: Vec::new(),
        tree: TreeDocument {
            depth: rng.gen_range(0..=shape.max_depth),
            ..TreeDocument::default()
        },
        actions: Some(vec![
            ActionDocument { generators: Vec::new() },
            ActionDocument { generators: Vec::new() },
        ]),
        asdim: None,
    }
}
