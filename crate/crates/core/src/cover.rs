//! Covers of finite metric spaces: multiplicity, refinement, r-disjointness,
//! Lebesgue numbers, `(r,d)`-dimension, and witness families for asymptotic
//! dimension at a fixed scale.
//!
//! Every vertex subset is open in a uniformly discrete space, so covers here
//! are plain lists of vertex subsets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::CoverError;
use crate::graph::{BallSearch, FiniteGraph, MetricView, VertexSubset, INF};
use crate::quasi::{QiFit, Rational, VertexMap};
use crate::union_find::UnionFind;

/// Largest space the exact oracle accepts.
pub const ORACLE_CAP: usize = 12;
/// Number of distinct net orders tried by [`greedy_witness`].
pub const GREEDY_STARTS: usize = 16;
/// Origins tried by the annulus fallback.
pub const ANNULUS_STARTS: usize = 4;

/// A natural number or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u32),
    Infinite,
}

impl ExtNat {
    pub fn from_distance(d: u32) -> Self {
        if d == INF {
            Self::Infinite
        } else {
            Self::Finite(d)
        }
    }

    pub fn exceeds(self, r: u32) -> bool {
        self > Self::Finite(r)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(n) => write!(f, "{n}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(n) => s.serialize_u32(*n),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A list of subsets whose union is the ambient point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    points: VertexSubset,
    members: Vec<VertexSubset>,
}

impl Cover {
    pub fn new(x: &MetricView<'_>, members: Vec<VertexSubset>) -> Result<Self, CoverError> {
        let mut union = VertexSubset::new();
        for m in &members {
            if !m.is_subset(x.points()) {
                return Err(CoverError::AmbientMismatch);
            }
            union = union.union(m);
        }
        let missing = x.len() - union.len();
        if missing > 0 {
            return Err(CoverError::NotCovering(missing));
        }
        Ok(Self {
            points: x.points().clone(),
            members,
        })
    }

    pub fn members(&self) -> &[VertexSubset] {
        &self.members
    }

    pub fn points(&self) -> &VertexSubset {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Largest number of members sharing a point.
pub fn multiplicity(family: &[VertexSubset]) -> usize {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for m in family {
        for v in m.iter() {
            *count.entry(v).or_default() += 1;
        }
    }
    count.into_values().max().unwrap_or(0)
}

/// Largest member diameter in the ambient metric (0 for an empty family).
pub fn max_diameter(x: &MetricView<'_>, family: &[VertexSubset]) -> u32 {
    family.par_iter().map(|m| x.set_diameter(m)).max().unwrap_or(0)
}

pub fn is_uniformly_bounded(x: &MetricView<'_>, family: &[VertexSubset], bound: u32) -> bool {
    max_diameter(x, family) <= bound
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refinement {
    pub refines: bool,
    /// For each member of the finer cover, the first coarser member containing it.
    pub witnesses: Vec<Option<usize>>,
}

/// Whether every member of `u` lies inside some member of `v`.
pub fn refines(u: &Cover, v: &Cover) -> Result<Refinement, CoverError> {
    if u.points != v.points {
        return Err(CoverError::AmbientMismatch);
    }
    let witnesses: Vec<Option<usize>> = u
        .members
        .iter()
        .map(|a| v.members.iter().position(|b| a.is_subset(b)))
        .collect();
    Ok(Refinement {
        refines: witnesses.iter().all(Option::is_some),
        witnesses,
    })
}

/// `d(V, V') ≥ r` for all distinct members; `+∞` counts as `≥ r`.
pub fn is_r_disjoint(x: &MetricView<'_>, family: &[VertexSubset], r: u32) -> Result<bool, CoverError> {
    if r == 0 {
        return Err(CoverError::ZeroRadius);
    }
    let g = x.graph();
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (i, m) in family.iter().enumerate() {
        for v in m.iter() {
            if owner[v] != usize::MAX {
                return Ok(false);
            }
            owner[v] = i;
        }
    }
    let mut ws = BallSearch::new(g.vertex_count());
    for (i, m) in family.iter().enumerate() {
        if m.is_empty() {
            continue;
        }
        let mut ok = true;
        ws.explore(g, m.as_slice(), r - 1, |v, _| {
            ok = owner[v] == usize::MAX || owner[v] == i;
            ok
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LebesgueMode {
    /// `inf_U sup_x d(x, X∖U)`.
    PerMember,
    /// `inf_x max_U d(x, X∖U)`.
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LebesgueNumbers {
    pub per_member: ExtNat,
    pub standard: ExtNat,
}

/// Both Lebesgue numbers, with `d(x, ∅) = +∞`.
pub fn lebesgue_numbers(x: &MetricView<'_>, cover: &Cover) -> LebesgueNumbers {
    let g = x.graph();
    let n = g.vertex_count();
    let xmask = x.points().mask(n);
    // depth[x] = max over members containing x of d(x, X∖U)
    let depths: Vec<Vec<(usize, u32)>> = cover
        .members
        .par_iter()
        .map(|u| {
            if u.len() == x.len() {
                return u.iter().map(|p| (p, INF)).collect();
            }
            let umask = u.mask(n);
            let mut ws = BallSearch::new(n);
            u.iter()
                .map(|p| {
                    let mut d = INF;
                    ws.explore(g, &[p], INF, |v, dv| {
                        if xmask[v] && !umask[v] {
                            d = dv;
                            false
                        } else {
                            true
                        }
                    });
                    (p, d)
                })
                .collect()
        })
        .collect();
    let per_member = depths
        .iter()
        .map(|m| ExtNat::from_distance(m.iter().map(|&(_, d)| d).max().unwrap_or(0)))
        .min()
        .unwrap_or(ExtNat::Infinite);
    let mut depth: HashMap<usize, u32> = HashMap::new();
    for m in &depths {
        for &(p, d) in m {
            let e = depth.entry(p).or_insert(0);
            *e = (*e).max(d);
        }
    }
    let standard = x
        .points()
        .iter()
        .map(|p| ExtNat::from_distance(depth.get(&p).copied().unwrap_or(0)))
        .min()
        .unwrap_or(ExtNat::Infinite);
    LebesgueNumbers { per_member, standard }
}

pub fn lebesgue_number(x: &MetricView<'_>, cover: &Cover, mode: LebesgueMode) -> ExtNat {
    let l = lebesgue_numbers(x, cover);
    match mode {
        LebesgueMode::PerMember => l.per_member,
        LebesgueMode::Standard => l.standard,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RdDimReport {
    pub max_diameter: u32,
    pub multiplicity: usize,
    pub lebesgue: LebesgueNumbers,
    pub holds: bool,
}

/// `(r,d)-dim(X) ≤ n` witnessed by `cover`: `d`-bounded, multiplicity at most
/// `n + 1`, per-member Lebesgue number greater than `r`.
pub fn check_rd_dim(x: &MetricView<'_>, cover: &Cover, r: u32, d: u32, n: usize) -> RdDimReport {
    let max_diameter = max_diameter(x, &cover.members);
    let multiplicity = multiplicity(&cover.members);
    let lebesgue = lebesgue_numbers(x, cover);
    RdDimReport {
        max_diameter,
        multiplicity,
        lebesgue,
        holds: max_diameter <= d && multiplicity <= n + 1 && lebesgue.per_member.exceeds(r),
    }
}

/// `n + 1` families, each `r`-disjoint, all members of diameter at most
/// `bound`, jointly covering the space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamilies {
    pub r: u32,
    pub n: usize,
    pub bound: u32,
    pub families: Vec<Vec<VertexSubset>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDocument {
    pub r: u32,
    pub n: usize,
    #[serde(rename = "D")]
    pub bound: u32,
    pub families: Vec<Vec<Vec<String>>>,
}

impl WitnessFamilies {
    pub fn validate(&self, x: &MetricView<'_>) -> Result<(), CoverError> {
        if self.families.len() != self.n + 1 {
            return Err(CoverError::InvalidWitness(format!(
                "{} families for n = {}",
                self.families.len(),
                self.n
            )));
        }
        let mut union = VertexSubset::new();
        for (j, fam) in self.families.iter().enumerate() {
            for m in fam {
                if !m.is_subset(x.points()) {
                    return Err(CoverError::AmbientMismatch);
                }
                union = union.union(m);
            }
            if !is_r_disjoint(x, fam, self.r)? {
                return Err(CoverError::InvalidWitness(format!("family {j} is not {}-disjoint", self.r)));
            }
            let d = max_diameter(x, fam);
            if d > self.bound {
                return Err(CoverError::InvalidWitness(format!(
                    "family {j} has a member of diameter {d} > {}",
                    self.bound
                )));
            }
        }
        if union.len() != x.len() {
            return Err(CoverError::NotCovering(x.len() - union.len()));
        }
        Ok(())
    }

    /// All nonempty members as one cover.
    pub fn to_cover(&self, x: &MetricView<'_>) -> Result<Cover, CoverError> {
        self.validate(x)?;
        let members = self.families.iter().flatten().filter(|m| !m.is_empty()).cloned().collect();
        Cover::new(x, members)
    }

    pub fn to_document(&self, g: &FiniteGraph) -> WitnessDocument {
        WitnessDocument {
            r: self.r,
            n: self.n,
            bound: self.bound,
            families: self
                .families
                .iter()
                .map(|f| f.iter().map(|m| g.subset_ids(m)).collect())
                .collect(),
        }
    }

    /// Intersects every member with `y`, dropping empty members.
    pub fn restrict(&self, y: &VertexSubset) -> WitnessFamilies {
        WitnessFamilies {
            r: self.r,
            n: self.n,
            bound: self.bound,
            families: self
                .families
                .iter()
                .map(|f| f.iter().map(|m| m.intersection(y)).filter(|m| !m.is_empty()).collect())
                .collect(),
        }
    }

    /// Pushes the witness through a `(γ, c)`-quasi-isometry and re-clusters
    /// each family at the new radius `⌊r/γ − c⌋`; the new bound is
    /// `⌊γD + c⌋`.
    pub fn transport(&self, target: &MetricView<'_>, map: &VertexMap, fit: QiFit) -> Result<WitnessFamilies, CoverError> {
        let r_new = (Rational::from_integer(self.r as i64) / fit.gamma - fit.c).floor();
        let r_new = r_new.to_integer();
        if r_new < 1 {
            return Err(CoverError::InvalidWitness(format!(
                "transported radius {r_new} is not positive"
            )));
        }
        let r_new = r_new as u32;
        let bound = (fit.gamma * Rational::from_integer(self.bound as i64) + fit.c)
            .floor()
            .to_integer()
            .to_u32()
            .unwrap_or(u32::MAX);
        let image: HashMap<usize, usize> = map.pairs.iter().copied().collect();
        let g = target.graph();
        let families = self
            .families
            .iter()
            .map(|fam| {
                let pts: VertexSubset = fam
                    .iter()
                    .flat_map(|m| m.iter().filter_map(|x| image.get(&x).copied()))
                    .collect();
                cluster(g, &pts, r_new)
            })
            .collect();
        Ok(WitnessFamilies {
            r: r_new,
            n: self.n,
            bound,
            families,
        })
    }
}

/// Classes of the transitive closure of `d < r` on `pts`, ordered by least
/// member.
pub fn cluster(g: &FiniteGraph, pts: &VertexSubset, r: u32) -> Vec<VertexSubset> {
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (i, v) in pts.iter().enumerate() {
        pos[v] = i;
    }
    let mut uf = UnionFind::new(pts.len());
    let mut ws = BallSearch::new(n);
    for (i, v) in pts.iter().enumerate() {
        ws.explore(g, &[v], r.saturating_sub(1), |w, _| {
            if pos[w] != usize::MAX {
                uf.union(i, pos[w]);
            }
            true
        });
    }
    let slice = pts.as_slice();
    uf.classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| slice[i]).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBound {
    pub bound: u32,
    pub witness: WitnessFamilies,
}

/// Least `D` admitting `r`-disjoint `D`-bounded families `F₀..F_n` covering
/// `X`, by exhaustive search over colorings (as restricted-growth strings)
/// grouped into clusters of the closure of `d < r`.
pub fn exact_min_bound(x: &MetricView<'_>, r: u32, n: usize) -> Result<ExactBound, CoverError> {
    if r == 0 {
        return Err(CoverError::ZeroRadius);
    }
    let m = x.len();
    if m > ORACLE_CAP {
        return Err(CoverError::CapExceeded { cap: ORACLE_CAP, got: m });
    }
    let dm = x.local_matrix();
    let colors = n + 1;

    struct Search<'a> {
        dm: &'a [Vec<u32>],
        r: u32,
        colors: usize,
        color: Vec<usize>,
        best: u32,
        best_color: Option<Vec<usize>>,
    }

    impl Search<'_> {
        fn leaf_bound(&self) -> u32 {
            let m = self.color.len();
            let mut uf = UnionFind::new(m);
            for i in 0..m {
                for j in i + 1..m {
                    if self.color[i] == self.color[j] && self.dm[i][j] < self.r {
                        uf.union(i, j);
                    }
                }
            }
            let mut worst = 0;
            for c in uf.classes() {
                for (a, &i) in c.iter().enumerate() {
                    for &j in &c[a + 1..] {
                        worst = worst.max(self.dm[i][j]);
                    }
                }
            }
            worst
        }

        fn rec(&mut self, i: usize, used: usize, lb: u32) {
            let m = self.dm.len();
            if lb >= self.best && self.best_color.is_some() {
                return;
            }
            if i == m {
                let d = self.leaf_bound();
                if self.best_color.is_none() || d < self.best {
                    self.best = d;
                    self.best_color = Some(self.color.clone());
                }
                return;
            }
            let limit = (used + 1).min(self.colors);
            for c in 0..limit {
                let mut lb2 = lb;
                for j in 0..i {
                    if self.color[j] == c && self.dm[i][j] < self.r {
                        lb2 = lb2.max(self.dm[i][j]);
                    }
                }
                self.color.push(c);
                self.rec(i + 1, used.max(c + 1), lb2);
                self.color.pop();
            }
        }
    }

    let mut s = Search {
        dm: &dm,
        r,
        colors,
        color: Vec::with_capacity(m),
        best: INF,
        best_color: None,
    };
    s.rec(0, 0, 0);
    let best_color = s.best_color.unwrap_or_default();
    let pts = x.points().as_slice();
    let mut families = vec![Vec::new(); colors];
    for (c, fam) in families.iter_mut().enumerate() {
        let class: VertexSubset = (0..m).filter(|&i| best_color[i] == c).map(|i| pts[i]).collect();
        if !class.is_empty() {
            *fam = cluster(x.graph(), &class, r);
        }
    }
    let bound = if m == 0 { 0 } else { s.best };
    Ok(ExactBound {
        bound,
        witness: WitnessFamilies { r, n, bound, families },
    })
}

/// Blocks of one greedy attempt and their conflict graph (`d < r`).
struct Blocks {
    blocks: Vec<VertexSubset>,
    conflicts: Vec<BTreeSet<usize>>,
}

fn conflict_graph(x: &MetricView<'_>, blocks: Vec<VertexSubset>, r: u32) -> Blocks {
    let g = x.graph();
    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (i, b) in blocks.iter().enumerate() {
        for v in b.iter() {
            owner[v] = i;
        }
    }
    let mut ws = BallSearch::new(g.vertex_count());
    let conflicts = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut adj = BTreeSet::new();
            ws.explore(g, b.as_slice(), r - 1, |v, _| {
                if owner[v] != usize::MAX && owner[v] != i {
                    adj.insert(owner[v]);
                }
                true
            });
            adj
        })
        .collect();
    Blocks { blocks, conflicts }
}

/// First-fit coloring visiting blocks in BFS order of the conflict graph.
fn first_fit(b: &Blocks, colors: usize) -> Option<Vec<usize>> {
    let k = b.blocks.len();
    let mut color = vec![usize::MAX; k];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..k {
        if color[root] != usize::MAX {
            continue;
        }
        queue.push_back(root);
        let mut seen = vec![false; k];
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            let taken: BTreeSet<usize> = b.conflicts[u].iter().map(|&w| color[w]).collect();
            let c = (0..colors).find(|c| !taken.contains(c))?;
            color[u] = c;
            for &w in &b.conflicts[u] {
                if color[w] == usize::MAX && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Some(color)
}

/// Pairs of points at distance at most `2r`, found by bounded searches.
struct NearTable {
    near: HashMap<usize, HashMap<usize, u32>>,
}

impl NearTable {
    fn new(x: &MetricView<'_>, radius: u32) -> Self {
        let g = x.graph();
        let pts = x.points();
        let mut ws = BallSearch::new(g.vertex_count());
        let near = pts
            .iter()
            .map(|p| {
                let mut row = HashMap::new();
                ws.explore(g, &[p], radius, |v, d| {
                    if pts.contains(v) {
                        row.insert(v, d);
                    }
                    true
                });
                (p, row)
            })
            .collect();
        Self { near }
    }

    fn all_close(&self, a: &VertexSubset, b: &VertexSubset) -> bool {
        a.iter().all(|u| {
            let row = &self.near[&u];
            b.iter().all(|v| row.contains_key(&v))
        })
    }
}

/// Merges conflicting blocks whenever the union stays within diameter `2r`.
fn merge_blocks(near: &NearTable, b: &Blocks) -> Option<Vec<VertexSubset>> {
    let k = b.blocks.len();
    let mut uf = UnionFind::new(k);
    let mut groups: Vec<VertexSubset> = b.blocks.clone();
    let mut changed = false;
    for i in 0..k {
        for &j in &b.conflicts[i] {
            let (ri, rj) = (uf.find(i), uf.find(j));
            if ri == rj {
                continue;
            }
            if near.all_close(&groups[ri], &groups[rj]) {
                let joined = groups[ri].union(&groups[rj]);
                uf.union(ri, rj);
                let root = uf.find(ri);
                groups[root] = joined;
                changed = true;
            }
        }
    }
    if !changed {
        return None;
    }
    Some(uf.classes().into_iter().map(|c| groups[uf.find(c[0])].clone()).collect())
}

fn greedy_attempt(x: &MetricView<'_>, near: &NearTable, order: &[usize], r: u32, n: usize) -> Option<WitnessFamilies> {
    let g = x.graph();
    let nv = g.vertex_count();
    let mut covered = vec![false; nv];
    let mut net = Vec::new();
    let mut ws = BallSearch::new(nv);
    for &p in order {
        if covered[p] {
            continue;
        }
        net.push(p);
        ws.explore(g, &[p], r - 1, |v, _| {
            covered[v] = true;
            true
        });
    }
    let label = g.nearest_sources_within(&net, r - 1);
    let slot: HashMap<usize, usize> = net.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); net.len()];
    for p in x.points().iter() {
        members[slot[&label[&p].1]].push(p);
    }
    let blocks: Vec<VertexSubset> = members.into_iter().map(VertexSubset::from_iter).collect();
    let mut b = conflict_graph(x, blocks, r);
    let colors = n + 1;
    loop {
        if let Some(color) = first_fit(&b, colors) {
            let bound = max_diameter(x, &b.blocks);
            let mut families = vec![Vec::new(); colors];
            for (blk, c) in b.blocks.into_iter().zip(color) {
                families[c].push(blk);
            }
            return Some(WitnessFamilies { r, n, bound, families });
        }
        let merged = merge_blocks(near, &b)?;
        b = conflict_graph(x, merged, r);
    }
}

/// Greedy witness search: an `r`-net in point order, Voronoi blocks around
/// it, and first-fit coloring of the block conflict graph with `n + 1`
/// colors, merging conflicting blocks when coloring fails. Several rotations
/// of the point order are tried. When every attempt fails and `n ≥ 1`, the
/// annulus witness with the smallest bound is returned instead.
pub fn greedy_witness(x: &MetricView<'_>, r: u32, n: usize) -> Result<Option<WitnessFamilies>, CoverError> {
    if r == 0 {
        return Err(CoverError::ZeroRadius);
    }
    let pts = x.points().as_slice();
    if pts.is_empty() {
        return Ok(Some(WitnessFamilies {
            r,
            n,
            bound: 0,
            families: vec![Vec::new(); n + 1],
        }));
    }
    let near = NearTable::new(x, 2 * r);
    let mut starts: Vec<usize> = (0..GREEDY_STARTS).map(|k| k * pts.len() / GREEDY_STARTS).collect();
    starts.dedup();
    for s in starts {
        let order: Vec<usize> = pts[s..].iter().chain(&pts[..s]).copied().collect();
        if let Some(w) = greedy_attempt(x, &near, &order, r, n) {
            return Ok(Some(w));
        }
    }
    if n == 0 {
        return Ok(None);
    }
    let mut starts: Vec<usize> = (0..ANNULUS_STARTS).map(|k| pts[k * pts.len() / ANNULUS_STARTS]).collect();
    starts.dedup();
    Ok(starts
        .into_iter()
        .map(|o| annulus_attempt(x, o, r, n))
        .min_by_key(|w| w.bound))
}

/// Fallback for tree-like spaces: annuli of width `r` around `origin`,
/// colored by index mod `n + 1` and cut into `r`-clusters.
fn annulus_attempt(x: &MetricView<'_>, origin: usize, r: u32, n: usize) -> WitnessFamilies {
    let g = x.graph();
    let row = x.row(origin);
    let colors = n + 1;
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); colors];
    for p in x.points().iter() {
        let d = row[p];
        let k = if d == INF { 0 } else { (d / r) as usize };
        classes[k % colors].push(p);
    }
    let families: Vec<Vec<VertexSubset>> = classes
        .into_iter()
        .map(|c| {
            let c: VertexSubset = c.into_iter().collect();
            if c.is_empty() {
                Vec::new()
            } else {
                cluster(g, &c, r)
            }
        })
        .collect();
    let bound = families.iter().map(|f| max_diameter(x, f)).max().unwrap_or(0);
    WitnessFamilies { r, n, bound, families }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformBound {
    /// The common bound `R`.
    pub bound: u32,
    pub per_subspace: Vec<u32>,
}

/// Runs [`greedy_witness`] on every subspace with the restricted metric and
/// returns the largest bound, or `None` if some subspace fails.
pub fn check_uniform_asdim(
    g: &FiniteGraph,
    subspaces: &[VertexSubset],
    n: usize,
    r: u32,
) -> Result<Option<UniformBound>, CoverError> {
    let results: Vec<Result<Option<u32>, CoverError>> = subspaces
        .par_iter()
        .map(|s| {
            let view = MetricView::restricted(g, s.clone());
            Ok(greedy_witness(&view, r, n)?.map(|w| w.bound))
        })
        .collect();
    let mut per = Vec::with_capacity(results.len());
    for res in results {
        match res? {
            Some(d) => per.push(d),
            None => return Ok(None),
        }
    }
    Ok(Some(UniformBound {
        bound: per.iter().copied().max().unwrap_or(0),
        per_subspace: per,
    }))
}
