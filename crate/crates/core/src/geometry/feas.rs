//! Exact feasibility of systems of linear inequalities by Fourier–Motzkin
//! elimination, with strictness propagated through eliminations.
//!
//! Adequate for the ambient dimensions this crate targets (n ≤ 4) and tens
//! of constraints. Witness points come from back-substitution midpoints, so
//! they are deterministic and have denominators controlled by the input.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::halfspace::HalfSpace;
use crate::scalar::{canonical_scale, rat, scale_vec, Rat};

/// `⟨coef, x⟩ ≥ bound`, or `> bound` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coef: Vec<Rat>,
    pub bound: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn new(coef: Vec<Rat>, bound: Rat, strict: bool) -> Self {
        Constraint { coef, bound, strict }
    }

    pub fn from_halfspace(h: &HalfSpace) -> Self {
        Constraint {
            coef: h.normal().to_vec(),
            bound: h.offset().clone(),
            strict: h.strict(),
        }
    }

    /// Both inequalities pinning a point to the hyperplane `⟨n, x⟩ = o`.
    pub fn equality_pair(normal: &[Rat], offset: &Rat) -> [Constraint; 2] {
        [
            Constraint::new(normal.to_vec(), offset.clone(), false),
            Constraint::new(
                normal.iter().map(|v| -v).collect(),
                -offset.clone(),
                false,
            ),
        ]
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let v: Rat = self.coef.iter().zip(x).map(|(c, x)| c * x).sum();
        if self.strict {
            v > self.bound
        } else {
            v >= self.bound
        }
    }
}

fn check_dims(cs: &[Constraint], dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Input("ambient dimension must be at least 1".into()));
    }
    for c in cs {
        if c.coef.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.coef.len(),
            });
        }
    }
    Ok(())
}

/// Canonicalize, drop or reject constant rows, merge duplicates.
/// `None` means a constant row is already violated.
fn normalize(cs: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut merged: BTreeMap<(Vec<Rat>, Rat), bool> = BTreeMap::new();
    for c in cs {
        match canonical_scale(&c.coef) {
            None => {
                // 0 ≥ bound (or 0 > bound): decide now.
                let ok = if c.strict {
                    c.bound.is_negative()
                } else {
                    !c.bound.is_positive()
                };
                if !ok {
                    return None;
                }
            }
            Some(s) => {
                let key = (scale_vec(&s, &c.coef), &s * &c.bound);
                let e = merged.entry(key).or_insert(false);
                *e = *e || c.strict;
            }
        }
    }
    Some(
        merged
            .into_iter()
            .map(|((coef, bound), strict)| Constraint { coef, bound, strict })
            .collect(),
    )
}

/// Eliminate variable `k`, keeping vector length (coefficient at `k` becomes
/// zero in every output row).
fn eliminate_var(cs: &[Constraint], k: usize) -> Vec<Constraint> {
    let mut lower = Vec::new(); // coef[k] > 0
    let mut upper = Vec::new(); // coef[k] < 0
    let mut rest = Vec::new();
    for c in cs {
        if c.coef[k].is_positive() {
            lower.push(c);
        } else if c.coef[k].is_negative() {
            upper.push(c);
        } else {
            rest.push(c.clone());
        }
    }
    for l in &lower {
        for u in &upper {
            // Positive combination cancelling x_k: (-c_u) * L + c_l * U.
            let lam = -u.coef[k].clone();
            let mu = l.coef[k].clone();
            let coef: Vec<Rat> = l
                .coef
                .iter()
                .zip(&u.coef)
                .map(|(a, b)| &lam * a + &mu * b)
                .collect();
            let bound = &lam * &l.bound + &mu * &u.bound;
            rest.push(Constraint {
                coef,
                bound,
                strict: l.strict || u.strict,
            });
        }
    }
    rest
}

/// Exact feasibility over the rationals (equivalently, the reals).
pub fn feasible(cs: &[Constraint], dim: usize) -> Result<bool> {
    check_dims(cs, dim)?;
    let mut sys = match normalize(cs.to_vec()) {
        None => return Ok(false),
        Some(s) => s,
    };
    for k in (0..dim).rev() {
        sys = match normalize(eliminate_var(&sys, k)) {
            None => return Ok(false),
            Some(s) => s,
        };
    }
    Ok(true)
}

pub fn feasible_halfspaces(hs: &[HalfSpace], dim: usize) -> Result<bool> {
    let cs: Vec<Constraint> = hs.iter().map(Constraint::from_halfspace).collect();
    feasible(&cs, dim)
}

/// A rational point satisfying the system, or `None` when infeasible.
pub fn witness(cs: &[Constraint], dim: usize) -> Result<Option<Vec<Rat>>> {
    check_dims(cs, dim)?;
    // stages[k] constrains variables 0..k (variables k.. eliminated).
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(dim + 1);
    let top = match normalize(cs.to_vec()) {
        None => return Ok(None),
        Some(s) => s,
    };
    stages.push(top);
    for k in (0..dim).rev() {
        let next = match normalize(eliminate_var(stages.last().unwrap(), k)) {
            None => return Ok(None),
            Some(s) => s,
        };
        stages.push(next);
    }
    stages.reverse(); // stages[k] now has variables 0..k free

    let mut point: Vec<Rat> = Vec::with_capacity(dim);
    for k in 0..dim {
        let sys = &stages[k + 1];
        let mut low: Option<(Rat, bool)> = None;
        let mut high: Option<(Rat, bool)> = None;
        for c in sys {
            if c.coef[k].is_zero() {
                continue;
            }
            let rest: Rat = c.coef[..k]
                .iter()
                .zip(&point)
                .map(|(a, v)| a * v)
                .sum();
            let value = (&c.bound - rest) / &c.coef[k];
            if c.coef[k].is_positive() {
                // x_k ≥ value
                match &low {
                    Some((l, ls)) if *l > value || (*l == value && (*ls || !c.strict)) => {}
                    _ => low = Some((value, c.strict)),
                }
            } else {
                // x_k ≤ value
                match &high {
                    Some((h, hs)) if *h < value || (*h == value && (*hs || !c.strict)) => {}
                    _ => high = Some((value, c.strict)),
                }
            }
        }
        let v = match (&low, &high) {
            (Some((l, _)), Some((h, _))) => {
                if l == h {
                    l.clone()
                } else {
                    (l + h) / rat(2)
                }
            }
            (Some((l, _)), None) => l + rat(1),
            (None, Some((h, _))) => h - rat(1),
            (None, None) => rat(0),
        };
        point.push(v);
    }
    debug_assert!(cs.iter().all(|c| c.holds_at(&point)));
    Ok(Some(point))
}

/// Exact per-coordinate range of the solution set (assumed nonempty):
/// `(inf, sup)`, with `None` marking an unbounded side. Bounds are infima /
/// suprema and need not be attained when boundaries are strict.
pub fn coord_range(cs: &[Constraint], dim: usize, i: usize) -> Result<(Option<Rat>, Option<Rat>)> {
    check_dims(cs, dim)?;
    let mut sys = normalize(cs.to_vec())
        .ok_or_else(|| Error::Input("coord_range on infeasible system".into()))?;
    for k in (0..dim).rev() {
        if k == i {
            continue;
        }
        sys = normalize(eliminate_var(&sys, k))
            .ok_or_else(|| Error::Input("coord_range on infeasible system".into()))?;
    }
    let mut low: Option<Rat> = None;
    let mut high: Option<Rat> = None;
    for c in &sys {
        if c.coef[i].is_zero() {
            continue;
        }
        let value = &c.bound / &c.coef[i];
        if c.coef[i].is_positive() {
            if low.as_ref().map_or(true, |l| value > *l) {
                low = Some(value);
            }
        } else if high.as_ref().map_or(true, |h| value < *h) {
            high = Some(value);
        }
    }
    Ok((low, high))
}

/// Whether the (nonempty) solution set is bounded: its recession cone must
/// contain no nonzero direction.
pub fn is_bounded(cs: &[Constraint], dim: usize) -> Result<bool> {
    check_dims(cs, dim)?;
    let recession: Vec<Constraint> = cs
        .iter()
        .map(|c| Constraint::new(c.coef.clone(), rat(0), false))
        .collect();
    for i in 0..dim {
        for sign in [1i64, -1] {
            let mut aug = recession.clone();
            let mut coef = vec![rat(0); dim];
            coef[i] = rat(sign);
            aug.push(Constraint::new(coef, rat(1), false));
            if feasible(&aug, dim)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
