//! Action-respecting conditions: the "respects γ" witness search, bonding-map
//! consistency, and the Type 1 / Type 2 classification.

use serde::Serialize;

use crate::amalgam::group::{image, Perm};
use crate::amalgam::spec::AmalgamationSpec;
use crate::amalgam::tree::Side;

/// Witness that the amalgamation respects one group element: the label
/// permutation `π` and, per label `k`, the pair `(ℓ, τ)` with `τ` given as an
/// index into the other side's element list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RespectWitness {
    pub label_perm: Vec<usize>,
    pub per_label: Vec<(usize, usize)>,
}

fn map_eq_on(
    spec: &AmalgamationSpec,
    side: Side,
    k: usize,
    k2: usize,
    l: usize,
    gamma: &Perm,
    tau: &Perm,
) -> bool {
    let (Some(lhs), Some(rhs)) = (spec.atlas.map(side, k, l), spec.atlas.map(side, k2, l)) else {
        return false;
    };
    lhs.iter().all(|&(x, y)| {
        let gx = gamma[x];
        rhs.iter().find(|p| p.0 == gx).is_some_and(|&(_, z)| tau[z] == y)
    })
}

/// Searches for `π` and per-label `(ℓ, τ)` with
/// `φ_{kℓ} = τ ∘ φ_{π(k)ℓ} ∘ γ|_{S_k}`, `τ` in the setwise stabiliser of `S_ℓ`.
pub fn check_respects(spec: &AmalgamationSpec, side: Side, gamma: &Perm) -> Option<RespectWitness> {
    let fam = &spec.adhesions[side.index()];
    let other = &spec.adhesions[side.other().index()];
    let group = &spec.actions[side.other().index()];
    let m = fam.len();
    // options[k] = list of (k', ℓ, τ-index) making the identity hold
    let mut options: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); m];
    for (k, opts) in options.iter_mut().enumerate() {
        let img = image(gamma, &fam.sets[k]);
        for k2 in fam.labels_of_set(&img) {
            'ell: for l in 0..other.len() {
                for (ti, tau) in group.elements().iter().enumerate() {
                    if image(tau, &other.sets[l]) != other.sets[l] {
                        continue;
                    }
                    if map_eq_on(spec, side, k, k2, l, gamma, tau) {
                        opts.push((k2, l, ti));
                        break 'ell;
                    }
                }
            }
        }
    }
    // perfect matching k -> k' by backtracking in label order
    fn assign(
        k: usize,
        options: &[Vec<(usize, usize, usize)>],
        used: &mut Vec<bool>,
        chosen: &mut Vec<(usize, usize, usize)>,
    ) -> bool {
        if k == options.len() {
            return true;
        }
        for &o in &options[k] {
            if !used[o.0] {
                used[o.0] = true;
                chosen.push(o);
                if assign(k + 1, options, used, chosen) {
                    return true;
                }
                chosen.pop();
                used[o.0] = false;
            }
        }
        false
    }
    let mut used = vec![false; m];
    let mut chosen = Vec::with_capacity(m);
    if !assign(0, &options, &mut used, &mut chosen) {
        return None;
    }
    Some(RespectWitness {
        label_perm: chosen.iter().map(|o| o.0).collect(),
        per_label: chosen.iter().map(|o| (o.1, o.2)).collect(),
    })
}

/// Searches the other side's group for `γ` with `φ_{kℓ} = γ ∘ φ_{kℓ'}` on
/// `S_k`; returns its index.
pub fn check_consistent(spec: &AmalgamationSpec, side: Side, k: usize, l: usize, l2: usize) -> Option<usize> {
    let a = spec.atlas.map(side, k, l)?;
    let b = spec.atlas.map(side, k, l2)?;
    let group = &spec.actions[side.other().index()];
    group.elements().iter().position(|g| {
        a.iter()
            .all(|&(x, y)| b.iter().find(|p| p.0 == x).is_some_and(|&(_, z)| g[z] == y))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AmalgamationType {
    Type1,
    Type2,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub classification: AmalgamationType,
    pub type1: Vec<Condition>,
    pub type2: Vec<Condition>,
}

impl TypeReport {
    pub fn failing(&self) -> Vec<&str> {
        self.type1
            .iter()
            .chain(&self.type2)
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }
}

fn respects_all(spec: &AmalgamationSpec, side: Side) -> Condition {
    let name = format!("respects Γ{}", side.index() + 1);
    for g in spec.actions[side.index()].elements() {
        if check_respects(spec, side, g).is_none() {
            return Condition {
                name,
                pass: false,
                detail: format!("no witness for {g:?}"),
            };
        }
    }
    Condition {
        name,
        pass: true,
        detail: format!("{} elements", spec.actions[side.index()].order()),
    }
}

fn consistent_between(spec: &AmalgamationSpec, side: Side, ks: &[usize], ls: &[usize], name: String) -> Condition {
    for &k in ks {
        for &l in ls {
            for &l2 in ls {
                if check_consistent(spec, side, k, l, l2).is_none() {
                    let lab = |s: Side, i: usize| spec.adhesions[s.index()].labels[i].clone();
                    return Condition {
                        name,
                        pass: false,
                        detail: format!(
                            "φ[{}→{}] vs φ[{}→{}]",
                            lab(side, k),
                            lab(side.other(), l),
                            lab(side, k),
                            lab(side.other(), l2)
                        ),
                    };
                }
            }
        }
    }
    Condition {
        name,
        pass: true,
        detail: String::new(),
    }
}

/// Runs every Type 1 and Type 2 sub-check.
pub fn classify_type(spec: &AmalgamationSpec) -> TypeReport {
    let all = |s: Side| (0..spec.adhesions[s.index()].len()).collect::<Vec<_>>();
    let type1 = vec![
        respects_all(spec, Side::First),
        respects_all(spec, Side::Second),
        consistent_between(spec, Side::First, &all(Side::First), &all(Side::Second), "consistent I₁→I₂".into()),
        consistent_between(spec, Side::Second, &all(Side::Second), &all(Side::First), "consistent I₂→I₁".into()),
    ];

    let mut type2 = Vec::new();
    match spec.type2_j_indices() {
        None => type2.push(Condition {
            name: "(o) shared factor and J".into(),
            pass: false,
            detail: "no J supplied".into(),
        }),
        Some(j) => {
            let same = spec.factors[0] == spec.factors[1]
                && spec.actions[0] == spec.actions[1]
                && spec.adhesions[0].labels == spec.adhesions[1].labels
                && spec.adhesions[0].sets == spec.adhesions[1].sets;
            let m = spec.adhesions[0].len();
            let rest: Vec<usize> = (0..m).filter(|i| !j.contains(i)).collect();
            let proper = !j.is_empty() && !rest.is_empty();
            type2.push(Condition {
                name: "(o) shared factor and J".into(),
                pass: same && proper,
                detail: if !same {
                    "factors, groups or adhesion families differ".into()
                } else if !proper {
                    "J must be a proper nonempty subset".into()
                } else {
                    String::new()
                },
            });
            type2.push(respects_all(spec, Side::First));
            type2.push(respects_all(spec, Side::Second));
            type2.push(consistent_between(spec, Side::First, &j, &rest, "consistent J→I∖J".into()));
        }
    }
    let t1 = type1.iter().all(|c| c.pass);
    let t2 = type2.iter().all(|c| c.pass);
    let classification = if t1 {
        AmalgamationType::Type1
    } else if t2 {
        AmalgamationType::Type2
    } else {
        AmalgamationType::Neither
    };
    TypeReport {
        classification,
        type1,
        type2,
    }
}
