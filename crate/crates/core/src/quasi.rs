//! Quasi-isometry and coarse-equivalence checks for vertex maps between
//! finite metric views.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::QiError;
use crate::graph::{MetricView, INF};

pub type Rational = Ratio<i64>;

/// The fixed multiplicative grid searched by [`fit_qi_constants`].
pub const GAMMA_GRID: [(i64, i64); 5] = [(1, 1), (3, 2), (2, 1), (3, 1), (4, 1)];

/// A vertex map given as `(source vertex, target vertex)` pairs.
#[derive(Clone, Debug, Default)]
pub struct VertexMap {
    pub pairs: Vec<(usize, usize)>,
}

impl VertexMap {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    pub fn from_fn(source: &MetricView<'_>, f: impl Fn(usize) -> usize) -> Self {
        Self {
            pairs: source.points().iter().map(|x| (x, f(x))).collect(),
        }
    }

    fn ensure_total(&self, source: &MetricView<'_>) -> Result<(), QiError> {
        if self.pairs.len() != source.len() || self.pairs.iter().any(|&(x, _)| !source.points().contains(x)) {
            return Err(QiError::NotTotal(format!(
                "{} pairs for {} source points",
                self.pairs.len(),
                source.len()
            )));
        }
        Ok(())
    }

    /// Visits every unordered pair with its source and target distances.
    fn for_each_pair(&self, source: &MetricView<'_>, target: &MetricView<'_>, mut f: impl FnMut(u32, u32) -> bool) {
        for (i, &(x, fx)) in self.pairs.iter().enumerate() {
            let sr = source.row(x);
            let tr = target.row(fx);
            for &(y, fy) in &self.pairs[i + 1..] {
                if !f(sr[y], tr[fy]) {
                    return;
                }
            }
        }
    }
}

fn rat(d: u32) -> Rational {
    Rational::from_integer(d as i64)
}

fn qi_pair_ok(ds: u32, dt: u32, gamma: Rational, c: Rational) -> bool {
    if ds == INF || dt == INF {
        return ds == dt;
    }
    let (ds, dt) = (rat(ds), rat(dt));
    ds / gamma - c <= dt && dt <= gamma * ds + c
}

/// True iff `γ⁻¹ d(x,y) − c ≤ d(f x, f y) ≤ γ d(x,y) + c` for every pair.
pub fn check_quasi_isometry(
    source: &MetricView<'_>,
    target: &MetricView<'_>,
    map: &VertexMap,
    gamma: Rational,
    c: Rational,
) -> Result<bool, QiError> {
    map.ensure_total(source)?;
    let mut ok = true;
    map.for_each_pair(source, target, |ds, dt| {
        ok = qi_pair_ok(ds, dt, gamma, c);
        ok
    });
    Ok(ok)
}

/// Result of a constant fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QiFit {
    pub gamma: Rational,
    pub c: Rational,
}

impl Serialize for QiFit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QiFit", 2)?;
        st.serialize_field("gamma", &self.gamma.to_string())?;
        st.serialize_field("c", &self.c.to_string())?;
        st.end()
    }
}

/// Smallest admissible additive constant for each γ in [`GAMMA_GRID`].
pub fn qi_constants_per_gamma(
    source: &MetricView<'_>,
    target: &MetricView<'_>,
    map: &VertexMap,
) -> Result<Vec<(Rational, Option<Rational>)>, QiError> {
    map.ensure_total(source)?;
    let grid: Vec<Rational> = GAMMA_GRID.iter().map(|&(p, q)| Rational::new(p, q)).collect();
    let mut best: Vec<Option<Rational>> = vec![Some(Rational::zero()); grid.len()];
    map.for_each_pair(source, target, |ds, dt| {
        for (g, slot) in grid.iter().zip(best.iter_mut()) {
            let Some(cur) = *slot else { continue };
            if ds == INF || dt == INF {
                if ds != dt {
                    *slot = None;
                }
                continue;
            }
            let (s, t) = (rat(ds), rat(dt));
            let need = (s / *g - t).max(t - *g * s);
            if need > cur {
                *slot = Some(need);
            }
        }
        true
    });
    Ok(grid.into_iter().zip(best).collect())
}

/// Fits `(γ, c)` over the grid. A candidate is feasible when its constant is
/// at most the source diameter; the chosen one minimizes `γ + c`, ties going
/// to the smaller γ.
pub fn fit_qi_constants(
    source: &MetricView<'_>,
    target: &MetricView<'_>,
    map: &VertexMap,
) -> Result<Option<QiFit>, QiError> {
    let diam = source.diameter();
    let cap = if diam == INF { None } else { Some(rat(diam)) };
    let per = qi_constants_per_gamma(source, target, map)?;
    let mut chosen: Option<QiFit> = None;
    for (gamma, c) in per {
        let Some(c) = c else { continue };
        if cap.is_some_and(|cap| c > cap) {
            continue;
        }
        let better = match chosen {
            None => true,
            Some(b) => gamma + c < b.gamma + b.c,
        };
        if better {
            chosen = Some(QiFit { gamma, c });
        }
    }
    Ok(chosen)
}

/// Non-decreasing step function on naturals: `ρ(t)` is the value of the last
/// step whose threshold is at most `t`, and 0 before the first step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTable {
    steps: Vec<(u32, Rational)>,
}

impl StepTable {
    pub fn new(steps: Vec<(u32, Rational)>) -> Result<Self, QiError> {
        for (i, w) in steps.windows(2).enumerate() {
            if w[1].0 <= w[0].0 || w[1].1 < w[0].1 {
                return Err(QiError::NotMonotone(i + 1));
            }
        }
        Ok(Self { steps })
    }

    /// Tabulates `f` on `0..=max_t`.
    pub fn from_fn(max_t: u32, f: impl Fn(u32) -> Rational) -> Result<Self, QiError> {
        Self::new((0..=max_t).map(|t| (t, f(t))).collect())
    }

    pub fn eval(&self, t: u32) -> Rational {
        let i = self.steps.partition_point(|&(th, _)| th <= t);
        if i == 0 {
            Rational::zero()
        } else {
            self.steps[i - 1].1
        }
    }
}

/// True iff `ρ₁(d(x,x')) ≤ d(f x, f x') ≤ ρ₂(d(x,x'))` for all pairs.
pub fn check_coarse_equivalence(
    source: &MetricView<'_>,
    target: &MetricView<'_>,
    map: &VertexMap,
    rho1: &StepTable,
    rho2: &StepTable,
) -> Result<bool, QiError> {
    map.ensure_total(source)?;
    let mut ok = true;
    map.for_each_pair(source, target, |ds, dt| {
        ok = ds != INF && dt != INF && rho1.eval(ds) <= rat(dt) && rat(dt) <= rho2.eval(ds);
        ok
    });
    Ok(ok)
}
