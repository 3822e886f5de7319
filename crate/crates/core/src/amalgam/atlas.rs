//! Adhesion families and bonding maps.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::amalgam::tree::Side;
use crate::error::BuildError;
use crate::graph::VertexSubset;

/// The labeled adhesion sets `S_k` of one factor, labels in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhesionFamily {
    pub side: Side,
    pub labels: Vec<String>,
    pub sets: Vec<VertexSubset>,
}

impl AdhesionFamily {
    pub fn new(side: Side, entries: Vec<(String, VertexSubset)>) -> Result<Self, BuildError> {
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(BuildError::Adhesion("duplicate label".into()));
        }
        if entries.is_empty() {
            return Err(BuildError::Adhesion("adhesion family is empty".into()));
        }
        if let Some((l, _)) = entries.iter().find(|(_, s)| s.is_empty()) {
            return Err(BuildError::Adhesion(format!("adhesion set `{l}` is empty")));
        }
        let (labels, sets) = entries.into_iter().unzip();
        Ok(Self { side, labels, sets })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All labels whose set equals `set`.
    pub fn labels_of_set(&self, set: &VertexSubset) -> Vec<usize> {
        (0..self.len()).filter(|&k| &self.sets[k] == set).collect()
    }
}

/// A bijection between two adhesion sets as sorted `(x, y)` pairs.
pub type PairList = Vec<(usize, usize)>;

/// Bonding maps `φ_{kℓ}` from first-factor labels to second-factor labels,
/// plus optional explicitly supplied reverse maps `φ_{ℓk}`. Missing reverse
/// maps are taken to be inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BondingAtlas {
    pub forward: BTreeMap<(usize, usize), PairList>,
    pub reverse: BTreeMap<(usize, usize), PairList>,
}

impl BondingAtlas {
    pub fn insert(&mut self, k: usize, l: usize, mut pairs: PairList) {
        pairs.sort_unstable();
        self.forward.insert((k, l), pairs);
    }

    pub fn insert_reverse(&mut self, l: usize, k: usize, mut pairs: PairList) {
        pairs.sort_unstable();
        self.reverse.insert((l, k), pairs);
    }

    /// The map from label `from` on side `side` to label `to` on the other
    /// side, as `(x, φ(x))` pairs sorted by `x`.
    pub fn map(&self, side: Side, from: usize, to: usize) -> Option<PairList> {
        match side {
            Side::First => self.forward.get(&(from, to)).cloned(),
            Side::Second => {
                if let Some(r) = self.reverse.get(&(from, to)) {
                    return Some(r.clone());
                }
                self.forward.get(&(to, from)).map(|p| {
                    let mut inv: PairList = p.iter().map(|&(x, y)| (y, x)).collect();
                    inv.sort_unstable();
                    inv
                })
            }
        }
    }

    /// Applies `φ` from side `side` to a single vertex.
    pub fn apply(&self, side: Side, from: usize, to: usize, x: usize) -> Option<usize> {
        let m = self.map(side, from, to)?;
        m.iter().find(|p| p.0 == x).map(|p| p.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AtlasReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

fn check_bijection(
    pairs: &PairList,
    dom: &VertexSubset,
    cod: &VertexSubset,
    name: &str,
    out: &mut Vec<String>,
) {
    let xs: VertexSubset = pairs.iter().map(|p| p.0).collect();
    let ys: VertexSubset = pairs.iter().map(|p| p.1).collect();
    if xs.len() != pairs.len() {
        out.push(format!("{name}: not a function (repeated source vertex)"));
    }
    if ys.len() != pairs.len() {
        out.push(format!("{name}: not injective"));
    }
    if &xs != dom {
        out.push(format!("{name}: domain differs from its adhesion set"));
    }
    if &ys != cod {
        out.push(format!("{name}: image differs from its target adhesion set"));
    }
}

/// Checks equal cardinality, bijectivity with the right domain and codomain,
/// and that supplied reverse maps are inverses.
pub fn validate_bonding_atlas(atlas: &BondingAtlas, adhesions: &[AdhesionFamily; 2]) -> AtlasReport {
    let mut v = Vec::new();
    let sizes: Vec<usize> = adhesions.iter().flat_map(|a| a.sets.iter().map(VertexSubset::len)).collect();
    if sizes.windows(2).any(|w| w[0] != w[1]) {
        v.push(format!("adhesion sets differ in cardinality: {sizes:?}"));
    }
    let [a1, a2] = adhesions;
    for (&(k, l), pairs) in &atlas.forward {
        let (Some(s1), Some(s2)) = (a1.sets.get(k), a2.sets.get(l)) else {
            v.push(format!("map ({k},{l}) references a missing label"));
            continue;
        };
        let name = format!("φ[{}→{}]", a1.labels[k], a2.labels[l]);
        check_bijection(pairs, s1, s2, &name, &mut v);
    }
    for (&(l, k), pairs) in &atlas.reverse {
        let name = format!("φ[{}→{}]", a2.labels.get(l).map_or("?", String::as_str), a1.labels.get(k).map_or("?", String::as_str));
        match atlas.forward.get(&(k, l)) {
            None => v.push(format!("{name}: reverse map without forward map")),
            Some(fwd) => {
                let mut inv: PairList = fwd.iter().map(|&(x, y)| (y, x)).collect();
                inv.sort_unstable();
                if &inv != pairs {
                    v.push(format!("{name}: not the inverse of the forward map"));
                }
            }
        }
    }
    AtlasReport {
        valid: v.is_empty(),
        violations: v,
    }
}
