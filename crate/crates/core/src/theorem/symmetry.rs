//! Partial automorphisms `f_t` of the sum graph moving `t₁` to `t`, built
//! copy by copy from the group actions on the factors.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::amalgam::group::{image, induced_label_permutation, Perm};
use crate::amalgam::{Amalgamation, Side};
use crate::error::TheoremError;
use crate::graph::VertexSubset;

/// Node-wise description of a partial automorphism: each domain node maps to
/// a target node together with a factor automorphism.
#[derive(Clone, Debug)]
pub struct SymmetryMap {
    pub target: usize,
    pub radius: u32,
    /// domain node → (image node, factor permutation)
    pub nodes: BTreeMap<usize, (usize, Perm)>,
}

impl SymmetryMap {
    pub fn apply(&self, a: &Amalgamation, v: usize) -> Option<usize> {
        let (img, perm) = self.nodes.get(&a.sum.node_of[v])?;
        Some(a.sum.vertex(*img, perm[a.sum.factor_vertex[v]]))
    }

    /// Image of a vertex set, skipping points outside the domain.
    pub fn image_of(&self, a: &Amalgamation, s: &VertexSubset) -> VertexSubset {
        s.iter().filter_map(|v| self.apply(a, v)).collect()
    }

    pub fn domain(&self, a: &Amalgamation) -> VertexSubset {
        self.nodes.keys().flat_map(|&n| a.sum.copy_vertices(n)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryCheck {
    pub target: String,
    pub domain_vertices: usize,
    pub injective: bool,
    pub edges_checked: usize,
    pub edges_preserved: bool,
}

impl SymmetryCheck {
    pub fn ok(&self) -> bool {
        self.injective && self.edges_preserved
    }
}

fn lookup(pairs: &[(usize, usize)], x: usize) -> Option<usize> {
    pairs.binary_search_by_key(&x, |p| p.0).ok().map(|i| pairs[i].1)
}

/// Builds `f_t` on the copies within tree distance `radius` of `t₁`. The
/// root permutation carries some representative adhesion set onto the set of
/// `t` facing `t₁`; every further copy gets the first group element making
/// the bridging edges commute. Domain nodes whose image would leave the
/// truncation are dropped.
pub fn build_symmetry_map(
    a: &Amalgamation,
    representatives: &[usize],
    t: usize,
    radius: u32,
) -> Result<SymmetryMap, TheoremError> {
    let tree = &a.tree;
    let spec = &a.spec;
    let root = tree.root();
    let tn = &tree.nodes[t];
    if tn.side != Side::First {
        return Err(TheoremError::Precondition(format!(
            "node {} is not in the class of t₁",
            tn.name
        )));
    }
    let group1 = &spec.actions[0];
    let root_perm: Perm = match tn.parent {
        None => group1.elements()[0].clone(),
        Some(p) => {
            let facing = tn.edge_to(p).expect("parent edge").label;
            let target_set = &spec.adhesions[0].sets[facing];
            group1
                .elements()
                .iter()
                .find(|g| {
                    representatives
                        .iter()
                        .any(|&k| &image(g, &spec.adhesions[0].sets[k]) == target_set)
                })
                .cloned()
                .ok_or_else(|| {
                    TheoremError::NoTreeMap(format!("no element of Γ₁ carries a representative onto the set of {}", tn.name))
                })?
        }
    };
    let root_labels = induced_label_permutation(&spec.adhesions[0], &root_perm)
        .ok_or_else(|| TheoremError::NoTreeMap("root permutation does not permute the labels".into()))?;

    let mut nodes = BTreeMap::new();
    let mut labels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    nodes.insert(root, (t, root_perm));
    labels.insert(root, root_labels);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let (tu, su) = nodes[&u].clone();
        let side_u = tree.nodes[u].side;
        let side_v = side_u.other();
        let lab_u = labels[&u].clone();
        for e in &tree.nodes[u].edges {
            let v = e.neighbor;
            if nodes.contains_key(&v) || tree.nodes[v].depth > radius {
                continue;
            }
            let k2 = lab_u[e.label];
            let Some(img_edge) = tree.nodes[tu].edge_with_label(k2) else {
                continue;
            };
            let (tv, l2) = (img_edge.neighbor, img_edge.back_label);
            let lab = |s: Side, i: usize| spec.adhesions[s.index()].labels[i].clone();
            let phi = spec.atlas.map(side_u, e.label, e.back_label).ok_or_else(|| {
                TheoremError::MissingConsistency(format!("no bonding map {}→{}", lab(side_u, e.label), lab(side_v, e.back_label)))
            })?;
            let phi2 = spec.atlas.map(side_u, k2, l2).ok_or_else(|| {
                TheoremError::MissingConsistency(format!("no bonding map {}→{}", lab(side_u, k2), lab(side_v, l2)))
            })?;
            let fam_v = &spec.adhesions[side_v.index()];
            let sv = spec.actions[side_v.index()]
                .elements()
                .iter()
                .find(|g| {
                    image(g, &fam_v.sets[e.back_label]) == fam_v.sets[l2]
                        && phi.iter().all(|&(x, y)| lookup(&phi2, su[x]) == Some(g[y]))
                })
                .cloned()
                .ok_or_else(|| {
                    TheoremError::MissingConsistency(format!(
                        "no element of Γ{} matches the bonding maps at {} → {}",
                        side_v.index() + 1,
                        tree.nodes[v].name,
                        tree.nodes[tv].name
                    ))
                })?;
            let mut lab_v = induced_label_permutation(fam_v, &sv)
                .ok_or_else(|| TheoremError::NoTreeMap(format!("permutation at {} does not permute labels", tree.nodes[v].name)))?;
            if lab_v[e.back_label] != l2 {
                let j = lab_v.iter().position(|&x| x == l2).expect("label permutation is onto");
                lab_v.swap(j, e.back_label);
            }
            nodes.insert(v, (tv, sv));
            labels.insert(v, lab_v);
            queue.push_back(v);
        }
    }
    Ok(SymmetryMap {
        target: t,
        radius,
        nodes,
    })
}

/// Checks injectivity and edge preservation on the whole domain.
pub fn verify_symmetry(a: &Amalgamation, f: &SymmetryMap) -> SymmetryCheck {
    let g = &a.sum.graph;
    let domain = f.domain(a);
    let images: VertexSubset = domain.iter().filter_map(|v| f.apply(a, v)).collect();
    let injective = images.len() == domain.len();
    let mut checked = 0;
    let mut preserved = true;
    for u in domain.iter() {
        let fu = f.apply(a, u).expect("domain vertex");
        for &w in g.neighbors(u) {
            if w < u {
                continue;
            }
            if let Some(fw) = f.apply(a, w) {
                checked += 1;
                if !g.has_edge(fu, fw) {
                    preserved = false;
                }
            }
        }
    }
    SymmetryCheck {
        target: a.tree.nodes[f.target].name.clone(),
        domain_vertices: domain.len(),
        injective,
        edges_checked: checked,
        edges_preserved: preserved,
    }
}
