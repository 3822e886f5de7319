//! Amalgamation documents: JSON input, resolution against factor graphs, and
//! the resolved [`AmalgamationSpec`].

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::amalgam::atlas::{AdhesionFamily, BondingAtlas};
use crate::amalgam::group::{compute_automorphisms, GroupAction, Perm, CLOSURE_CAP};
use crate::amalgam::tree::Side;
use crate::error::BuildError;
use crate::graph::{load_graph, FiniteGraph, GraphDocument};

/// How a factor is supplied.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorRef {
    Inline(GraphDocument),
    File { file: String },
    /// The amalgam produced by the preceding stage of an iterated run.
    Previous { previous: bool },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BondingEntry {
    pub k: String,
    pub l: String,
    pub pairs: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TreeDocument {
    pub depth: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<usize>,
    #[serde(default, rename = "type2_J", skip_serializing_if = "Option::is_none")]
    pub type2_j: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionDocument {
    /// Each generator lists the image id of every factor vertex, in the
    /// factor's vertex order.
    pub generators: Vec<Vec<String>>,
}

/// Declared asymptotic dimensions of the factors and adhesion sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredAsdim {
    #[serde(default)]
    pub factors: [u32; 2],
    #[serde(default)]
    pub adhesion: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmalgamationDocument {
    pub name: String,
    pub factors: Vec<FactorRef>,
    pub adhesions: Vec<BTreeMap<String, Vec<String>>>,
    pub bonding: Vec<BondingEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reverse_bonding: Vec<BondingEntry>,
    pub tree: TreeDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<ActionDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asdim: Option<DeclaredAsdim>,
}

impl AmalgamationDocument {
    pub fn from_json(text: &str) -> Result<Self, BuildError> {
        serde_json::from_str(text).map_err(|e| BuildError::Document(e.to_string()))
    }
}

/// A fully resolved amalgamation: factors, adhesion families, bonding atlas,
/// group actions and tree parameters.
#[derive(Clone, Debug)]
pub struct AmalgamationSpec {
    pub name: String,
    pub factors: [FiniteGraph; 2],
    pub adhesions: [AdhesionFamily; 2],
    pub atlas: BondingAtlas,
    pub actions: [GroupAction; 2],
    /// Whether each action was defaulted to the full automorphism group.
    pub actions_defaulted: [bool; 2],
    pub depth: u32,
    pub type2_j: Option<Vec<String>>,
    pub declared: DeclaredAsdim,
}

/// Context for resolving factor references.
#[derive(Clone, Copy, Debug, Default)]
pub struct ResolveContext<'a> {
    pub base_dir: Option<&'a Path>,
    pub previous: Option<&'a FiniteGraph>,
}

fn resolve_factor(f: &FactorRef, ctx: ResolveContext<'_>) -> Result<FiniteGraph, BuildError> {
    match f {
        FactorRef::Inline(doc) => Ok(doc.clone().into_graph()?),
        FactorRef::File { file } => {
            let path = match ctx.base_dir {
                Some(d) => d.join(file),
                None => file.into(),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| BuildError::Document(format!("{}: {e}", path.display())))?;
            Ok(load_graph(&text)?)
        }
        FactorRef::Previous { .. } => ctx
            .previous
            .cloned()
            .ok_or_else(|| BuildError::Document("`previous` factor used outside an iterated run".into())),
    }
}

fn two<T: Clone>(v: &[T], what: &str) -> Result<[T; 2], BuildError> {
    match v {
        [a] => Ok([a.clone(), a.clone()]),
        [a, b] => Ok([a.clone(), b.clone()]),
        _ => Err(BuildError::Document(format!("expected one or two {what}, got {}", v.len()))),
    }
}

fn default_action(g: &FiniteGraph) -> Result<(GroupAction, bool), BuildError> {
    if g.vertex_count() <= 16 {
        Ok((compute_automorphisms(g, CLOSURE_CAP)?, true))
    } else {
        Ok((GroupAction::trivial(g.vertex_count()), true))
    }
}

impl AmalgamationSpec {
    pub fn resolve(doc: &AmalgamationDocument, ctx: ResolveContext<'_>) -> Result<Self, BuildError> {
        let refs = two(&doc.factors, "factors")?;
        let factors = [resolve_factor(&refs[0], ctx)?, resolve_factor(&refs[1], ctx)?];
        let adh_docs = two(&doc.adhesions, "adhesion families")?;
        let mut fams = Vec::with_capacity(2);
        for (i, side) in [Side::First, Side::Second].into_iter().enumerate() {
            let entries = adh_docs[i]
                .iter()
                .map(|(l, ids)| Ok((l.clone(), factors[i].subset_from_ids(ids)?)))
                .collect::<Result<Vec<_>, BuildError>>()?;
            fams.push(AdhesionFamily::new(side, entries)?);
        }
        let adhesions: [AdhesionFamily; 2] = [fams[0].clone(), fams[1].clone()];

        let label = |side: usize, l: &str| {
            adhesions[side]
                .label_index(l)
                .ok_or_else(|| BuildError::Document(format!("unknown label `{l}` on side {}", side + 1)))
        };
        let mut atlas = BondingAtlas::default();
        for e in &doc.bonding {
            let (k, l) = (label(0, &e.k)?, label(1, &e.l)?);
            let pairs = e
                .pairs
                .iter()
                .map(|[x, y]| Ok((factors[0].index_of(x)?, factors[1].index_of(y)?)))
                .collect::<Result<Vec<_>, BuildError>>()?;
            if atlas.forward.contains_key(&(k, l)) {
                return Err(BuildError::Atlas(format!("duplicate bonding map {}→{}", e.k, e.l)));
            }
            atlas.insert(k, l, pairs);
        }
        for e in &doc.reverse_bonding {
            let (l, k) = (label(1, &e.k)?, label(0, &e.l)?);
            let pairs = e
                .pairs
                .iter()
                .map(|[y, x]| Ok((factors[1].index_of(y)?, factors[0].index_of(x)?)))
                .collect::<Result<Vec<_>, BuildError>>()?;
            atlas.insert_reverse(l, k, pairs);
        }

        if let Some(p) = doc.tree.p1 {
            if p != adhesions[0].len() {
                return Err(BuildError::TreeParams(format!("p1 = {p} but side 1 has {} labels", adhesions[0].len())));
            }
        }
        if let Some(p) = doc.tree.p2 {
            if p != adhesions[1].len() {
                return Err(BuildError::TreeParams(format!("p2 = {p} but side 2 has {} labels", adhesions[1].len())));
            }
        }

        let (actions, actions_defaulted) = match &doc.actions {
            None => {
                let (a, da) = default_action(&factors[0])?;
                let (b, db) = default_action(&factors[1])?;
                ([a, b], [da, db])
            }
            Some(list) => {
                let list = two(list, "actions")?;
                let mut out = Vec::with_capacity(2);
                for (i, ad) in list.iter().enumerate() {
                    let g = &factors[i];
                    let gens = ad
                        .generators
                        .iter()
                        .map(|imgs| {
                            if imgs.len() != g.vertex_count() {
                                return Err(BuildError::Action(format!(
                                    "generator lists {} images for {} vertices",
                                    imgs.len(),
                                    g.vertex_count()
                                )));
                            }
                            imgs.iter().map(|id| Ok(g.index_of(id)?)).collect::<Result<Perm, BuildError>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    out.push(GroupAction::from_generators(g, &gens, CLOSURE_CAP)?);
                }
                ([out[0].clone(), out[1].clone()], [false, false])
            }
        };

        Ok(Self {
            name: doc.name.clone(),
            factors,
            adhesions,
            atlas,
            actions,
            actions_defaulted,
            depth: doc.tree.depth,
            type2_j: doc.tree.type2_j.clone(),
            declared: doc.asdim.unwrap_or_default(),
        })
    }

    pub fn from_json(text: &str, ctx: ResolveContext<'_>) -> Result<Self, BuildError> {
        Self::resolve(&AmalgamationDocument::from_json(text)?, ctx)
    }

    /// Indices of the labels in `J`, if a Type 2 labeling was requested.
    pub fn type2_j_indices(&self) -> Option<Vec<usize>> {
        let j = self.type2_j.as_ref()?;
        let mut out: Vec<usize> = j.iter().filter_map(|l| self.adhesions[0].label_index(l)).collect();
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    pub fn with_depth(&self, depth: u32) -> Self {
        let mut s = self.clone();
        s.depth = depth;
        s
    }
}
