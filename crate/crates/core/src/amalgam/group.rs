//! Finite permutation groups acting on factor graphs.

use std::collections::{BTreeSet, VecDeque};

use crate::amalgam::atlas::AdhesionFamily;
use crate::error::BuildError;
use crate::graph::{FiniteGraph, VertexSubset};
use crate::union_find::UnionFind;

/// A permutation of vertex indices: `p[x]` is the image of `x`.
pub type Perm = Vec<usize>;

/// Largest group closure attempted when materializing from generators.
pub const CLOSURE_CAP: usize = 100_000;
/// Largest group searched exhaustively by the witness searches.
pub const SEARCH_CAP: usize = 10_000;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

pub fn image(p: &Perm, s: &VertexSubset) -> VertexSubset {
    s.iter().map(|x| p[x]).collect()
}

pub fn is_automorphism(g: &FiniteGraph, p: &Perm) -> bool {
    if p.len() != g.vertex_count() {
        return false;
    }
    let mut seen = vec![false; p.len()];
    for &y in p {
        if y >= p.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    g.edges().all(|(u, v)| g.has_edge(p[u], p[v]))
}

/// A finite group of automorphisms of one factor, stored as its full element
/// list in lexicographic order (identity first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    degree: usize,
    elements: Vec<Perm>,
}

impl GroupAction {
    pub fn trivial(n: usize) -> Self {
        Self {
            degree: n,
            elements: vec![identity(n)],
        }
    }

    /// Closes the generators under composition; each generator must be an
    /// automorphism of `g`.
    pub fn from_generators(g: &FiniteGraph, gens: &[Perm], cap: usize) -> Result<Self, BuildError> {
        let n = g.vertex_count();
        for p in gens {
            if !is_automorphism(g, p) {
                return Err(BuildError::Action(format!("generator {p:?} is not an automorphism")));
            }
        }
        let mut set: BTreeSet<Perm> = BTreeSet::from([identity(n)]);
        let mut queue = VecDeque::from([identity(n)]);
        while let Some(e) = queue.pop_front() {
            for gen in gens {
                let next = compose(gen, &e);
                if set.insert(next.clone()) {
                    if set.len() > cap {
                        return Err(BuildError::CapExceeded(cap));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(Self {
            degree: n,
            elements: set.into_iter().collect(),
        })
    }

    /// Wraps a full element list after checking closure and inverses.
    pub fn from_elements(g: &FiniteGraph, elements: Vec<Perm>) -> Result<Self, BuildError> {
        let set: BTreeSet<Perm> = elements.into_iter().collect();
        let n = g.vertex_count();
        if !set.contains(&identity(n)) {
            return Err(BuildError::Action("identity missing".into()));
        }
        for a in &set {
            if !is_automorphism(g, a) {
                return Err(BuildError::Action(format!("{a:?} is not an automorphism")));
            }
            if !set.contains(&inverse(a)) {
                return Err(BuildError::Action("not closed under inverses".into()));
            }
            if set.len() <= 2_000 {
                for b in &set {
                    if !set.contains(&compose(a, b)) {
                        return Err(BuildError::Action("not closed under composition".into()));
                    }
                }
            }
        }
        Ok(Self {
            degree: n,
            elements: set.into_iter().collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    /// Elements mapping `s` onto itself.
    pub fn setwise_stabilizer(&self, s: &VertexSubset) -> Vec<&Perm> {
        self.elements.iter().filter(|p| &image(p, s) == s).collect()
    }
}

/// Full automorphism group by backtracking with degree refinement.
pub fn compute_automorphisms(g: &FiniteGraph, cap: usize) -> Result<GroupAction, BuildError> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(BuildError::TooLarge(n));
    }
    // refinement invariant: degree plus sorted neighbor degrees
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut found = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn rec(
        g: &FiniteGraph,
        inv: &[(usize, Vec<usize>)],
        v: usize,
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<Perm>,
        cap: usize,
    ) -> Result<(), BuildError> {
        let n = assign.len();
        if v == n {
            found.push(assign.clone());
            if found.len() > cap {
                return Err(BuildError::CapExceeded(cap));
            }
            return Ok(());
        }
        for img in 0..n {
            if used[img] || inv[img] != inv[v] {
                continue;
            }
            let ok = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(assign[u], img));
            if !ok {
                continue;
            }
            assign[v] = img;
            used[img] = true;
            rec(g, inv, v + 1, assign, used, found, cap)?;
            used[img] = false;
            assign[v] = usize::MAX;
        }
        Ok(())
    }

    rec(g, &inv, 0, &mut assign, &mut used, &mut found, cap)?;
    found.sort();
    Ok(GroupAction {
        degree: n,
        elements: found,
    })
}

/// Orbit partition of the vertex set, each orbit sorted, orbits ordered by
/// their least vertex.
pub fn vertex_orbits(action: &GroupAction) -> Vec<VertexSubset> {
    let n = action.degree();
    let mut uf = UnionFind::new(n);
    for p in action.elements() {
        for (x, &y) in p.iter().enumerate() {
            uf.union(x, y);
        }
    }
    uf.classes().into_iter().map(|c| c.into_iter().collect()).collect()
}

/// One representative label per orbit of adhesion sets under the setwise
/// action; the representative is the least label of its orbit.
pub fn select_orbit_representatives(
    adhesions: &AdhesionFamily,
    action: &GroupAction,
) -> Result<Vec<usize>, BuildError> {
    let m = adhesions.len();
    let mut uf = UnionFind::new(m);
    for k in 0..m {
        for k2 in adhesions.labels_of_set(&adhesions.sets[k]) {
            uf.union(k, k2);
        }
    }
    for p in action.elements() {
        for k in 0..m {
            let img = image(p, &adhesions.sets[k]);
            let targets = adhesions.labels_of_set(&img);
            let Some(&t) = targets.first() else {
                return Err(BuildError::NotSetwise(format!(
                    "{:?} maps adhesion set `{}` outside the family",
                    p, adhesions.labels[k]
                )));
            };
            uf.union(k, t);
        }
    }
    Ok(uf.classes().into_iter().map(|c| c[0]).collect())
}

/// The label permutation induced by `p` on the adhesion family, matching
/// labels with equal sets in sorted order. `None` if `p` does not permute
/// the family.
pub fn induced_label_permutation(adhesions: &AdhesionFamily, p: &Perm) -> Option<Vec<usize>> {
    let m = adhesions.len();
    let mut used = vec![false; m];
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let img = image(p, &adhesions.sets[k]);
        let t = adhesions.labels_of_set(&img).into_iter().find(|&t| !used[t])?;
        used[t] = true;
        out.push(t);
    }
    Some(out)
}
