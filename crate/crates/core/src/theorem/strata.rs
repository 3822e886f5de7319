//! Tree strata `O_m`, `Q_m` of the sum graph and the strips `U_m`.

use serde::Serialize;

use crate::amalgam::Amalgamation;
use crate::cover::ExtNat;
use crate::error::TheoremError;
use crate::graph::{MetricView, VertexSubset, INF};
use crate::quasi::{fit_qi_constants, QiFit, VertexMap};

/// `π_T`: the tree node of every sum-graph vertex.
pub fn project_to_tree(a: &Amalgamation) -> Vec<usize> {
    a.sum.node_of.clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strata {
    /// Vertices of copies at tree distance exactly `m`.
    pub ring: VertexSubset,
    /// Vertices of copies at tree distance at most `m`.
    pub ball: VertexSubset,
}

/// Largest `m` for which the ring around `t` is complete in the truncation.
pub fn max_stratum(a: &Amalgamation, t: usize) -> u32 {
    a.tree.depth.saturating_sub(a.tree.nodes[t].depth)
}

pub fn strata(a: &Amalgamation, t: usize, m: u32) -> Result<Strata, TheoremError> {
    let max = max_stratum(a, t);
    if m > max {
        return Err(TheoremError::BeyondTruncation { m, max });
    }
    let dist = a.tree.distances_from(t);
    let mut ring = Vec::new();
    let mut ball = Vec::new();
    for (node, &d) in dist.iter().enumerate() {
        if d <= m {
            ball.extend(a.sum.copy_vertices(node));
            if d == m {
                ring.extend(a.sum.copy_vertices(node));
            }
        }
    }
    Ok(Strata {
        ring: ring.into_iter().collect(),
        ball: ball.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum StripVerdict {
    /// `O_{m−1}` is empty.
    Empty,
    Fit { fit: QiFit },
    NoFit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripReport {
    pub m: u32,
    pub previous_ring: usize,
    pub strip: usize,
    pub result: StripVerdict,
    /// Least distance between the parts of two distinct copies of the ring
    /// lying outside the strip, over the sampled pairs.
    pub min_separation: ExtNat,
    pub separation_ok: bool,
}

/// Number of copy pairs sampled by the separation check of a strip.
pub const STRIP_PAIR_SAMPLE: usize = 8;

/// Builds `U_m` (points of `O_m` within `r` of `O_{m−1}`), fits the
/// nearest-point map `U_m → O_{m−1}`, and checks that distinct copies of the
/// ring are more than `r` apart outside the strip.
pub fn lemma_strip(a: &Amalgamation, t: usize, m: u32, r: u32) -> Result<StripReport, TheoremError> {
    if m == 0 {
        return Err(TheoremError::Precondition("strips start at m = 1".into()));
    }
    let g = &a.sum.graph;
    let cur = strata(a, t, m)?;
    let prev = strata(a, t, m - 1)?.ring;
    if prev.is_empty() {
        return Ok(StripReport {
            m,
            previous_ring: 0,
            strip: 0,
            result: StripVerdict::Empty,
            min_separation: ExtNat::Infinite,
            separation_ok: true,
        });
    }
    let strip = g.ball(&prev, r).intersection(&cur.ring);
    let (_, nearest) = g.nearest_sources(prev.as_slice());
    let src = MetricView::restricted(g, strip.clone());
    let dst = MetricView::restricted(g, prev.clone());
    let map = VertexMap::from_fn(&src, |x| nearest[x]);
    let result = match fit_qi_constants(&src, &dst, &map).map_err(|e| TheoremError::Stage {
        stage: "lemma-strip".into(),
        message: e.to_string(),
    })? {
        Some(fit) => StripVerdict::Fit { fit },
        None => StripVerdict::NoFit,
    };

    let dist = a.tree.distances_from(t);
    let ring_nodes: Vec<usize> = (0..a.tree.node_count()).filter(|&v| dist[v] == m).collect();
    let outside: Vec<VertexSubset> = ring_nodes
        .iter()
        .map(|&v| a.sum.copy_vertices(v).filter(|&x| !strip.contains(x)).collect())
        .collect();
    let view = MetricView::whole(g);
    let mut min_sep = INF;
    let mut sampled = 0;
    'pairs: for i in 0..outside.len() {
        for j in i + 1..outside.len() {
            if sampled == STRIP_PAIR_SAMPLE {
                break 'pairs;
            }
            if outside[i].is_empty() || outside[j].is_empty() {
                continue;
            }
            sampled += 1;
            min_sep = min_sep.min(view.set_distance(&outside[i], &outside[j]));
        }
    }
    Ok(StripReport {
        m,
        previous_ring: prev.len(),
        strip: strip.len(),
        result,
        min_separation: ExtNat::from_distance(min_sep),
        separation_ok: min_sep == INF || min_sep > r,
    })
}
