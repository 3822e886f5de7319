//! Finite simple graphs with their shortest-path metric.
//!
//! Vertices are addressed internally by dense indices in document order; the
//! string ids are kept for serialization. Every subset is stored sorted by
//! index so that iteration order, and therefore every emitted artifact, is
//! deterministic.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Distance value used for unreachable pairs.
pub const INF: u32 = u32::MAX;

/// A sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    v.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    v.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    v.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Self(v)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self(self.iter().filter(|&x| other.contains(x)).collect())
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self(self.iter().filter(|&x| !other.contains(x)).collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().all(|x| !large.contains(x))
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for v in self.iter() {
            m[v] = true;
        }
        m
    }
}

impl FromIterator<usize> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

/// Immutable simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl FiniteGraph {
    /// Builds a simple graph; connectivity is not required.
    pub fn from_edges(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in edges {
            if u >= ids.len() || v >= ids.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(GraphError::Loop(ids[u].clone()));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::MultiEdge(ids[u].clone(), ids[w[0]].clone()));
            }
        }
        Ok(Self {
            ids,
            index,
            adj,
            edge_count: edges.len(),
        })
    }

    /// Builds a graph and requires it to be connected and nonempty.
    pub fn connected(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Self::from_edges(ids, edges)?;
        if g.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        let c = g.component_count();
        if c > 1 {
            return Err(GraphError::Disconnected { components: c });
        }
        Ok(g)
    }

    /// Convenience constructor with ids `0..n`.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_index_edges(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_index_edges(n, &edges).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Self::from_index_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSubset {
        VertexSubset((0..self.vertex_count()).collect())
    }

    pub fn subset_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<VertexSubset, GraphError> {
        ids.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn subset_ids(&self, s: &VertexSubset) -> Vec<String> {
        s.iter().map(|v| self.ids[v].clone()).collect()
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut count = 0;
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Dense BFS distances from a set of sources.
    pub fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![INF; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u] + 1;
            for &w in &self.adj[u] {
                if dist[w] == INF {
                    dist[w] = du;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Layered BFS that labels each vertex with its nearest source; ties go to
    /// the source listed first.
    pub fn nearest_sources(&self, sources: &[usize]) -> (Vec<u32>, Vec<usize>) {
        let n = self.vertex_count();
        let mut dist = vec![INF; n];
        let mut label = vec![usize::MAX; n];
        let mut layer = Vec::new();
        for (rank, &s) in sources.iter().enumerate() {
            if dist[s] == INF {
                dist[s] = 0;
                label[s] = rank;
                layer.push(s);
            }
        }
        let mut d = 0;
        while !layer.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &layer {
                for &w in &self.adj[u] {
                    if dist[w] == INF {
                        dist[w] = d;
                        label[w] = label[u];
                        next.push(w);
                    } else if dist[w] == d && label[u] < label[w] {
                        label[w] = label[u];
                    }
                }
            }
            layer = next;
        }
        let label = label
            .into_iter()
            .map(|l| if l == usize::MAX { usize::MAX } else { sources[l] })
            .collect();
        (dist, label)
    }

    /// [`nearest_sources`](Self::nearest_sources) cut off at `radius`:
    /// `(distance, nearest source)` for every vertex within reach.
    pub fn nearest_sources_within(&self, sources: &[usize], radius: u32) -> HashMap<usize, (u32, usize)> {
        let mut seen: HashMap<usize, (u32, usize)> = HashMap::new();
        let mut layer = Vec::new();
        for (rank, &s) in sources.iter().enumerate() {
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(s) {
                e.insert((0, rank));
                layer.push(s);
            }
        }
        let mut d = 0;
        while !layer.is_empty() && d < radius {
            d += 1;
            let mut next = Vec::new();
            for &u in &layer {
                let lu = seen[&u].1;
                for &w in &self.adj[u] {
                    match seen.get_mut(&w) {
                        None => {
                            seen.insert(w, (d, lu));
                            next.push(w);
                        }
                        Some(entry) if entry.0 == d && lu < entry.1 => entry.1 = lu,
                        Some(_) => {}
                    }
                }
            }
            layer = next;
        }
        seen.into_iter().map(|(v, (d, l))| (v, (d, sources[l]))).collect()
    }

    pub fn distance(&self, x: usize, y: usize) -> u32 {
        if x == y {
            return 0;
        }
        let mut ws = BallSearch::new(self.vertex_count());
        let mut found = INF;
        ws.explore(self, &[x], INF, |v, d| {
            if v == y {
                found = d;
                false
            } else {
                true
            }
        });
        found
    }

    /// Looks up vertices by id and returns their distance.
    pub fn distance_by_id(&self, x: &str, y: &str) -> Result<u32, GraphError> {
        Ok(self.distance(self.index_of(x)?, self.index_of(y)?))
    }

    /// All vertices within `radius` of some center.
    pub fn ball(&self, centers: &VertexSubset, radius: u32) -> VertexSubset {
        let mut ws = BallSearch::new(self.vertex_count());
        let mut out = Vec::new();
        ws.explore(self, centers.as_slice(), radius, |v, _| {
            out.push(v);
            true
        });
        out.into_iter().collect()
    }

    /// Vertices of `a` with a neighbor outside `a`.
    pub fn set_boundary(&self, a: &VertexSubset) -> VertexSubset {
        let mask = a.mask(self.vertex_count());
        VertexSubset(
            a.iter()
                .filter(|&v| self.adj[v].iter().any(|&w| !mask[w]))
                .collect(),
        )
    }

    pub fn set_interior(&self, a: &VertexSubset) -> VertexSubset {
        a.difference(&self.set_boundary(a))
    }

    /// Induced subgraph on `a`; the second component maps new indices to old.
    pub fn induced_subgraph(&self, a: &VertexSubset) -> Result<(FiniteGraph, Vec<usize>), GraphError> {
        if a.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, v) in a.iter().enumerate() {
            pos[v] = i;
        }
        let ids = a.iter().map(|v| self.ids[v].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|(u, v)| (pos[u], pos[v]))
            .collect();
        let g = FiniteGraph::from_edges(ids, &edges)?;
        Ok((g, a.as_slice().to_vec()))
    }

    /// Exact diameter of the whole graph (INF when disconnected).
    pub fn diameter(&self) -> u32 {
        MetricView::whole(self).diameter()
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.ids.clone(),
            edges: self
                .edges()
                .map(|(u, v)| [self.ids[u].clone(), self.ids[v].clone()])
                .collect(),
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for id in &self.ids {
            let _ = writeln!(s, "  \"{id}\";");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.ids[u], self.ids[v]);
        }
        s.push_str("}\n");
        s
    }
}

/// JSON adjacency document: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphDocument {
    pub fn into_graph(self) -> Result<FiniteGraph, GraphError> {
        let mut index = HashMap::new();
        for (i, id) in self.vertices.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for [a, b] in &self.edges {
            let u = *index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let v = *index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            edges.push((u, v));
        }
        FiniteGraph::connected(self.vertices, &edges)
    }
}

/// Parses a graph document. JSON objects are tried first; anything else is
/// read as an edge list with one `id id` pair (or a lone `id`) per line.
pub fn load_graph(text: &str) -> Result<FiniteGraph, GraphError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        return doc.into_graph();
    }
    let mut vertices = Vec::new();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() > 2 {
            return Err(GraphError::Parse(format!(
                "line {}: expected `id id`, got {} tokens",
                lineno + 1,
                toks.len()
            )));
        }
        for t in &toks {
            if seen.insert(t.to_string()) {
                vertices.push(t.to_string());
            }
        }
        if toks.len() == 2 {
            edges.push([toks[0].to_string(), toks[1].to_string()]);
        }
    }
    GraphDocument { vertices, edges }.into_graph()
}

/// Reusable bounded BFS that only touches what it visits.
pub struct BallSearch {
    dist: Vec<u32>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BallSearch {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![INF; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Visits vertices within `radius` of `sources` in BFS order. The visitor
    /// returns `false` to stop early.
    pub fn explore<F: FnMut(usize, u32) -> bool>(
        &mut self,
        g: &FiniteGraph,
        sources: &[usize],
        radius: u32,
        mut visit: F,
    ) {
        for &v in &self.touched {
            self.dist[v] = INF;
        }
        self.touched.clear();
        self.queue.clear();
        for &s in sources {
            if self.dist[s] == INF {
                self.dist[s] = 0;
                self.touched.push(s);
                self.queue.push_back(s);
            }
        }
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            if !visit(u, du) {
                return;
            }
            if du >= radius {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == INF {
                    self.dist[w] = du + 1;
                    self.touched.push(w);
                    self.queue.push_back(w);
                }
            }
        }
    }
}

thread_local! {
    static SEARCH: std::cell::RefCell<BallSearch> = std::cell::RefCell::new(BallSearch::new(0));
}

/// Runs `f` with this thread's search buffers sized for `n` vertices.
fn with_search<T>(n: usize, f: impl FnOnce(&mut BallSearch) -> T) -> T {
    SEARCH.with(|cell| {
        let mut ws = cell.borrow_mut();
        if ws.dist.len() != n {
            *ws = BallSearch::new(n);
        }
        f(&mut ws)
    })
}

/// A subset of a graph equipped with the restricted ambient metric.
///
/// Rows of distances are computed by BFS on demand and cached; the cache is
/// bounded and shared behind a lock so views can be used from worker threads.
pub struct MetricView<'g> {
    graph: &'g FiniteGraph,
    points: VertexSubset,
    cache: RwLock<HashMap<usize, Arc<Vec<u32>>>>,
    cache_rows: usize,
}

impl<'g> MetricView<'g> {
    pub fn whole(graph: &'g FiniteGraph) -> Self {
        Self::restricted(graph, graph.all_vertices())
    }

    pub fn restricted(graph: &'g FiniteGraph, points: VertexSubset) -> Self {
        let n = graph.vertex_count().max(1);
        Self {
            graph,
            points,
            cache: RwLock::new(HashMap::new()),
            cache_rows: (1usize << 25) / n + 16,
        }
    }

    pub fn graph(&self) -> &'g FiniteGraph {
        self.graph
    }

    pub fn points(&self) -> &VertexSubset {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn row(&self, x: usize) -> Arc<Vec<u32>> {
        if let Some(r) = self.cache.read().expect("cache lock").get(&x) {
            return Arc::clone(r);
        }
        let row = Arc::new(self.graph.bfs(&[x]));
        let mut cache = self.cache.write().expect("cache lock");
        if cache.len() >= self.cache_rows {
            cache.clear();
        }
        cache.insert(x, Arc::clone(&row));
        row
    }

    pub fn dist(&self, x: usize, y: usize) -> u32 {
        if x == y {
            0
        } else {
            self.row(x)[y]
        }
    }

    /// Distance matrix over the points, indexed by position in `points`.
    pub fn local_matrix(&self) -> Vec<Vec<u32>> {
        self.points
            .iter()
            .map(|x| {
                let row = self.row(x);
                self.points.iter().map(|y| row[y]).collect()
            })
            .collect()
    }

    /// Diameter of a set in the ambient metric (0 for empty or singleton sets).
    pub fn set_diameter(&self, set: &VertexSubset) -> u32 {
        if set.len() <= 1 {
            return 0;
        }
        with_search(self.graph.vertex_count(), |ws| {
            let mut best = 0;
            for x in set.iter() {
                let mut remaining = set.len();
                let mut far = 0;
                ws.explore(self.graph, &[x], INF, |v, d| {
                    if set.contains(v) {
                        remaining -= 1;
                        far = d;
                    }
                    remaining > 0
                });
                if remaining > 0 {
                    return INF;
                }
                best = best.max(far);
            }
            best
        })
    }

    /// `diam(set) ≤ bound`, searching only balls of radius `bound`.
    pub fn set_diameter_at_most(&self, set: &VertexSubset, bound: u32) -> bool {
        if set.len() <= 1 {
            return true;
        }
        with_search(self.graph.vertex_count(), |ws| {
            set.iter().all(|x| {
                let mut remaining = set.len();
                ws.explore(self.graph, &[x], bound, |v, _| {
                    if set.contains(v) {
                        remaining -= 1;
                    }
                    remaining > 0
                });
                remaining == 0
            })
        })
    }

    pub fn diameter(&self) -> u32 {
        self.set_diameter(&self.points)
    }

    /// `d(A, B)`: minimum over cross pairs, INF when either side is empty.
    pub fn set_distance(&self, a: &VertexSubset, b: &VertexSubset) -> u32 {
        if a.is_empty() || b.is_empty() {
            return INF;
        }
        with_search(self.graph.vertex_count(), |ws| {
            let mut found = INF;
            ws.explore(self.graph, a.as_slice(), INF, |v, d| {
                if b.contains(v) {
                    found = d;
                    false
                } else {
                    true
                }
            });
            found
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_distance(g: &FiniteGraph, x: usize, y: usize) -> u32 {
        // enumerate simple paths by DFS and take the shortest
        fn dfs(g: &FiniteGraph, u: usize, y: usize, seen: &mut Vec<bool>, len: u32, best: &mut u32) {
            if u == y {
                *best = (*best).min(len);
                return;
            }
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    dfs(g, w, y, seen, len + 1, best);
                    seen[w] = false;
                }
            }
        }
        let mut seen = vec![false; g.vertex_count()];
        seen[x] = true;
        let mut best = INF;
        dfs(g, x, y, &mut seen, 0, &mut best);
        best
    }

    fn set(v: &[usize]) -> VertexSubset {
        v.iter().copied().collect()
    }

    #[test]
    fn load_examples() {
        let tri = load_graph(r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["c","a"]]}"#).unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        let k2 = load_graph("a b\n").unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));
        assert_eq!(
            load_graph("a b\nc d\n"),
            Err(GraphError::Disconnected { components: 2 })
        );
        assert!(matches!(load_graph("a a\n"), Err(GraphError::Loop(_))));
        assert!(matches!(load_graph("a b\nb a\n"), Err(GraphError::MultiEdge(..))));
        assert!(matches!(load_graph("{not json"), Err(GraphError::Parse(_))));
        assert_eq!(k2.ids(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn distances() {
        let p = FiniteGraph::path(4);
        assert_eq!(p.distance(0, 3), 3);
        assert_eq!(p.distance(2, 2), 0);
        let c6 = FiniteGraph::cycle(6);
        assert_eq!(brute_force_distance(&c6, 0, 3), 3);
        assert_eq!(c6.distance(0, 3), 3);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(c6.distance(x, y), brute_force_distance(&c6, x, y));
            }
        }
        assert!(matches!(p.distance_by_id("0", "9"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn balls() {
        let p = FiniteGraph::path(10);
        assert_eq!(p.ball(&set(&[0]), 2), set(&[0, 1, 2]));
        let s = set(&[3, 7]);
        assert_eq!(p.ball(&s, 0), s);
        let c6 = FiniteGraph::cycle(6);
        assert_eq!(c6.ball(&set(&[0, 3]), 1), c6.all_vertices());
    }

    #[test]
    fn boundary_and_interior() {
        let p = FiniteGraph::path(10);
        let a = set(&[0, 1, 2]);
        assert_eq!(p.set_boundary(&a), set(&[2]));
        assert_eq!(p.set_interior(&a), set(&[0, 1]));
        let all = p.all_vertices();
        assert!(p.set_boundary(&all).is_empty());
        assert_eq!(p.set_interior(&all), all);
        let c6 = FiniteGraph::cycle(6);
        assert_eq!(c6.set_boundary(&a), set(&[0, 2]));
    }

    #[test]
    fn induced() {
        let p = FiniteGraph::path(10);
        let (g, _) = p.induced_subgraph(&set(&[0, 1, 5, 6])).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.component_count()), (4, 2, 2));
        let (g, _) = p.induced_subgraph(&p.all_vertices()).unwrap();
        assert_eq!(g, p);
        let (g, _) = FiniteGraph::cycle(6).induced_subgraph(&set(&[0, 2, 4])).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(p.induced_subgraph(&VertexSubset::new()), Err(GraphError::EmptySubset));
    }

    #[test]
    fn nearest_source_ties_go_to_first() {
        let p = FiniteGraph::path(5);
        let (d, l) = p.nearest_sources(&[4, 0]);
        assert_eq!(d, vec![0, 1, 2, 1, 0]);
        assert_eq!(l, vec![0, 0, 4, 4, 4]);
    }

    #[test]
    fn text_roundtrip_and_dot() {
        let g = FiniteGraph::cycle(5);
        let doc = serde_json::to_string(&g.to_document()).unwrap();
        assert_eq!(load_graph(&doc).unwrap(), g);
        assert!(g.to_dot("c5").contains("\"0\" -- \"1\""));
    }

    #[test]
    fn metric_view_diameters() {
        let p = FiniteGraph::path(10);
        let v = MetricView::whole(&p);
        assert_eq!(v.diameter(), 9);
        assert_eq!(v.set_diameter(&set(&[2, 5, 7])), 5);
        assert_eq!(v.set_distance(&set(&[0, 1]), &set(&[5, 6])), 4);
        assert_eq!(v.set_distance(&set(&[0]), &VertexSubset::new()), INF);
    }
}
