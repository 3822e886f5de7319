//! Truncated semiregular connecting trees with a canonical edge labeling.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::BuildError;

/// Bipartition class of a tree node; `First` holds copies of the first factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::First => 0,
            Side::Second => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// Directed tree edge `node → neighbor` with its label and the label of the
/// reversed edge. Labels are indices into the label list of the respective side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub neighbor: usize,
    pub label: usize,
    pub back_label: usize,
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub name: String,
    pub depth: u32,
    pub side: Side,
    pub parent: Option<usize>,
    pub edges: Vec<TreeEdge>,
}

impl TreeNode {
    pub fn edge_with_label(&self, label: usize) -> Option<&TreeEdge> {
        self.edges.iter().find(|e| e.label == label)
    }

    pub fn edge_to(&self, neighbor: usize) -> Option<&TreeEdge> {
        self.edges.iter().find(|e| e.neighbor == neighbor)
    }
}

/// A truncation of the `(|I₁|, |I₂|)`-semiregular tree at depth `depth`
/// around the root `t₁` (node 0). Nodes are numbered in construction
/// (breadth-first) order and named by their label path from the root.
#[derive(Clone, Debug)]
pub struct ConnectingTree {
    pub labels: [Vec<String>; 2],
    pub depth: u32,
    pub type2_j: Option<Vec<usize>>,
    pub nodes: Vec<TreeNode>,
}

impl ConnectingTree {
    /// Builds the tree with synthetic labels `k1..` and `l1..`.
    pub fn semiregular(p1: usize, p2: usize, depth: u32) -> Result<Self, BuildError> {
        let l1 = (1..=p1).map(|i| format!("k{i}")).collect();
        let l2 = (1..=p2).map(|i| format!("l{i}")).collect();
        Self::build(l1, l2, depth, None)
    }

    /// Canonical construction: the edge toward the parent takes the least
    /// admissible label, children take the remaining labels in sorted order.
    /// With `type2_j`, both label lists must coincide and every edge pairs a
    /// label inside `J` with one outside of it.
    pub fn build(
        labels1: Vec<String>,
        labels2: Vec<String>,
        depth: u32,
        type2_j: Option<Vec<String>>,
    ) -> Result<Self, BuildError> {
        if labels1.is_empty() || labels2.is_empty() {
            return Err(BuildError::TreeParams("both label sets must be nonempty".into()));
        }
        for l in [&labels1, &labels2] {
            let mut s = l.clone();
            s.sort();
            s.dedup();
            if &s != l {
                return Err(BuildError::TreeParams("label lists must be sorted and distinct".into()));
            }
        }
        let j_mask = match &type2_j {
            None => None,
            Some(j) => {
                if labels1 != labels2 {
                    return Err(BuildError::Type2Labeling("Type 2 requires I₁ = I₂".into()));
                }
                let mut mask = vec![false; labels1.len()];
                for l in j {
                    let i = labels1
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| BuildError::Type2Labeling(format!("label `{l}` of J not in I")))?;
                    mask[i] = true;
                }
                if depth >= 2 && (mask.iter().all(|&b| b) || mask.iter().all(|&b| !b)) {
                    return Err(BuildError::Type2Labeling(
                        "J must be a proper nonempty subset of I so that both endpoints of an edge can be labeled"
                            .into(),
                    ));
                }
                Some(mask)
            }
        };

        let labels = [labels1, labels2];
        let mut nodes = vec![TreeNode {
            name: "t1".into(),
            depth: 0,
            side: Side::First,
            parent: None,
            edges: Vec::new(),
        }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            if nodes[u].depth >= depth {
                continue;
            }
            let side = nodes[u].side;
            let child_side = side.other();
            let used: Vec<usize> = nodes[u].edges.iter().map(|e| e.label).collect();
            let free: Vec<usize> = (0..labels[side.index()].len()).filter(|l| !used.contains(l)).collect();
            for k in free {
                let back = match &j_mask {
                    None => 0,
                    Some(mask) => {
                        let want_in_j = !mask[k];
                        (0..mask.len()).find(|&l| mask[l] == want_in_j).ok_or_else(|| {
                            BuildError::Type2Labeling(format!("no label available opposite `{}`", labels[0][k]))
                        })?
                    }
                };
                let v = nodes.len();
                let name = format!("{}.{}", nodes[u].name, labels[side.index()][k]);
                nodes.push(TreeNode {
                    name,
                    depth: nodes[u].depth + 1,
                    side: child_side,
                    parent: Some(u),
                    edges: vec![TreeEdge {
                        neighbor: u,
                        label: back,
                        back_label: k,
                    }],
                });
                nodes[u].edges.push(TreeEdge {
                    neighbor: v,
                    label: k,
                    back_label: back,
                });
                queue.push_back(v);
            }
        }
        let type2_j = j_mask.map(|m| (0..m.len()).filter(|&i| m[i]).collect());
        Ok(Self {
            labels,
            depth,
            type2_j,
            nodes,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn p(&self, side: Side) -> usize {
        self.labels[side.index()].len()
    }

    /// Nodes at the truncation depth have dangling labels.
    pub fn is_frontier(&self, v: usize) -> bool {
        self.nodes[v].depth >= self.depth
    }

    /// The base edge `t₁t₂`: `t₂` is the root's neighbor along its least label.
    pub fn base_edge(&self) -> Option<(usize, usize)> {
        self.nodes[0].edge_with_label(0).map(|e| (0, e.neighbor))
    }

    /// Tree distances from `t`.
    pub fn distances_from(&self, t: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[t] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(u) = queue.pop_front() {
            for e in &self.nodes[u].edges {
                if dist[e.neighbor] == u32::MAX {
                    dist[e.neighbor] = dist[u] + 1;
                    queue.push_back(e.neighbor);
                }
            }
        }
        dist
    }

    /// Is `a` on the root path of `b` (including `a == b`)?
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    /// Nodes of `T^t`: `t` together with everything it separates from `t₁`.
    pub fn separated_subtree(&self, t: usize) -> Vec<bool> {
        let mut mask = vec![false; self.nodes.len()];
        mask[t] = true;
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for e in &self.nodes[u].edges {
                if self.nodes[e.neighbor].parent == Some(u) {
                    mask[e.neighbor] = true;
                    stack.push(e.neighbor);
                }
            }
        }
        mask
    }

    /// Returns the list of labeling violations: every non-frontier node must
    /// use each label of its side exactly once, frontier nodes at most once,
    /// and Type 2 edges must pair `J` with its complement.
    pub fn labeling_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let p = self.p(n.side);
            let mut count = vec![0usize; p];
            for e in &n.edges {
                if e.label >= p {
                    out.push(format!("{}: label index {} out of range", n.name, e.label));
                    continue;
                }
                count[e.label] += 1;
                let back = self.nodes[e.neighbor].edge_to(i);
                match back {
                    Some(b) if b.label == e.back_label && b.back_label == e.label => {}
                    _ => out.push(format!("{}: reverse edge to {} inconsistent", n.name, self.nodes[e.neighbor].name)),
                }
                if let Some(j) = &self.type2_j {
                    if j.contains(&e.label) == j.contains(&e.back_label) {
                        out.push(format!("{}: Type 2 condition fails on edge to {}", n.name, self.nodes[e.neighbor].name));
                    }
                }
            }
            let frontier = self.is_frontier(i);
            for (l, &c) in count.iter().enumerate() {
                if c > 1 || (!frontier && c != 1) {
                    out.push(format!("{}: label {} used {} times", n.name, self.labels[n.side.index()][l], c));
                }
            }
        }
        out
    }

    pub fn root(&self) -> usize {
        0
    }
}
