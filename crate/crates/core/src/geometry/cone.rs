//! Closed, full, pointed polyhedral cones: the positive cone of the partial
//! order. Both representations are kept; whichever is missing is computed by
//! brute-force double description, adequate in the small ambient dimensions
//! this crate targets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::feas::{feasible, Constraint};
use crate::geometry::halfspace::{HalfSpace, HalfSpaceJson};
use crate::matrix::Matrix;
use crate::scalar::{canonical_scale, dot, format_vec, parse_vec, rat, scale_vec, Rat};

#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    hrep: Vec<HalfSpace>,
    vrep: Vec<Vec<Rat>>,
    extreme: Vec<Vec<Rat>>,
}

impl Cone {
    /// Build and validate from either or both representations.
    pub fn from_parts(
        dim: usize,
        hrep: Option<Vec<HalfSpace>>,
        vrep: Option<Vec<Vec<Rat>>>,
    ) -> Result<Cone> {
        if dim == 0 {
            return Err(Error::Input("ambient dimension must be at least 1".into()));
        }
        if hrep.is_none() && vrep.is_none() {
            return Err(Error::InvalidCone("neither hrep nor vrep supplied".into()));
        }
        if let Some(hs) = &hrep {
            for h in hs {
                if h.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: h.dim(),
                    });
                }
                if h.strict() || !num_traits::Zero::is_zero(h.offset()) {
                    return Err(Error::InvalidCone(
                        "hrep half-spaces must be closed and pass through the origin".into(),
                    ));
                }
            }
        }
        if let Some(vs) = &vrep {
            for v in vs {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
                if v.iter().all(num_traits::Zero::is_zero) {
                    return Err(Error::InvalidCone("zero generator ray".into()));
                }
            }
            let rank = Matrix::from_rows(vs.clone()).rank(&Field::Rational);
            if rank < dim {
                return Err(Error::ConeNotFull);
            }
        }

        let hrep = match hrep {
            Some(h) => h,
            None => facets_from_rays(dim, vrep.as_ref().unwrap())?,
        };
        if hrep.is_empty() {
            // No constraints means the whole space, which is never pointed.
            return Err(Error::InvalidCone("cone has trivial hrep".into()));
        }
        let extreme = extreme_rays(dim, &hrep)?;
        let vrep = match vrep {
            Some(v) => v,
            None => extreme.clone(),
        };

        let cone = Cone {
            dim,
            hrep,
            vrep,
            extreme,
        };
        cone.validate()?;
        Ok(cone)
    }

    pub fn from_rays(dim: usize, rays: Vec<Vec<Rat>>) -> Result<Cone> {
        Cone::from_parts(dim, None, Some(rays))
    }

    pub fn from_halfspaces(dim: usize, hrep: Vec<HalfSpace>) -> Result<Cone> {
        Cone::from_parts(dim, Some(hrep), None)
    }

    /// The nonnegative orthant.
    pub fn orthant(dim: usize) -> Cone {
        let rays = (0..dim)
            .map(|i| {
                let mut v = vec![rat(0); dim];
                v[i] = rat(1);
                v
            })
            .collect();
        Cone::from_rays(dim, rays).expect("orthant is a valid cone")
    }

    fn validate(&self) -> Result<()> {
        // Full: a point strictly inside every constraint exists.
        let strict: Vec<Constraint> = self
            .hrep
            .iter()
            .map(|h| Constraint::new(h.normal().to_vec(), rat(0), true))
            .collect();
        if !feasible(&strict, self.dim)? {
            return Err(Error::ConeNotFull);
        }
        // Pointed: no nonzero direction with both d and -d in the cone.
        let mut lineality: Vec<Constraint> = Vec::new();
        for h in &self.hrep {
            lineality.push(Constraint::new(h.normal().to_vec(), rat(0), false));
            lineality.push(Constraint::new(
                h.normal().iter().map(|v| -v).collect(),
                rat(0),
                false,
            ));
        }
        for i in 0..self.dim {
            for sign in [1i64, -1] {
                let mut sys = lineality.clone();
                let mut coef = vec![rat(0); self.dim];
                coef[i] = rat(sign);
                sys.push(Constraint::new(coef, rat(1), false));
                if feasible(&sys, self.dim)? {
                    return Err(Error::InvalidCone(
                        "cone contains a line (unit group is nontrivial)".into(),
                    ));
                }
            }
        }
        // Every generator satisfies every constraint.
        for v in &self.vrep {
            if !self.contains(v) {
                return Err(Error::InvalidCone(format!(
                    "generator {:?} violates the hrep",
                    format_vec(v)
                )));
            }
        }
        // The generators span the whole cone: every extreme ray of the hrep
        // solution set must be a nonnegative combination of them.
        for e in &self.extreme {
            if !in_conical_hull(self.dim, &self.vrep, e)? {
                return Err(Error::InvalidCone(format!(
                    "hrep admits extreme ray {:?} outside the conical hull of vrep",
                    format_vec(e)
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hrep(&self) -> &[HalfSpace] {
        &self.hrep
    }

    pub fn vrep(&self) -> &[Vec<Rat>] {
        &self.vrep
    }

    /// Canonically scaled extreme rays, sorted.
    pub fn extreme_rays(&self) -> &[Vec<Rat>] {
        &self.extreme
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.hrep.iter().all(|h| !dot(h.normal(), v).lt(&rat(0)) && h.satisfies(v))
    }

    /// Strict interior membership. For a full cone the interior is exactly
    /// the set of strict solutions of the hrep.
    pub fn contains_interior(&self, v: &[Rat]) -> bool {
        self.hrep.iter().all(|h| dot(h.normal(), v) > rat(0))
    }

    /// Deterministic interior point: the sum of the extreme rays.
    pub fn interior_ray(&self) -> Vec<Rat> {
        let mut g = vec![rat(0); self.dim];
        for e in &self.extreme {
            for (gi, ei) in g.iter_mut().zip(e) {
                *gi += ei;
            }
        }
        assert!(
            self.contains_interior(&g),
            "internal: ray sum of a full pointed cone must be interior"
        );
        g
    }

    /// Constraints for `base + (interior of the cone)`.
    pub fn shifted_interior_constraints(&self, base: &[Rat]) -> Vec<Constraint> {
        self.hrep
            .iter()
            .map(|h| Constraint::new(h.normal().to_vec(), dot(h.normal(), base), true))
            .collect()
    }

    /// Constraints for `base − cone` (closed).
    pub fn shifted_below_constraints(&self, base: &[Rat]) -> Vec<Constraint> {
        self.hrep
            .iter()
            .map(|h| {
                Constraint::new(
                    h.normal().iter().map(|v| -v).collect(),
                    -dot(h.normal(), base),
                    false,
                )
            })
            .collect()
    }
}

fn canonical_ray(v: &[Rat]) -> Option<Vec<Rat>> {
    canonical_scale(v).map(|s| scale_vec(&s, v))
}

/// Enumerate the extreme rays of `{x : ⟨h, x⟩ ≥ 0}` by scanning subsets of
/// `dim − 1` constraints whose normals drop the kernel to one dimension.
fn extreme_rays(dim: usize, hrep: &[HalfSpace]) -> Result<Vec<Vec<Rat>>> {
    let normals: Vec<Vec<Rat>> = hrep.iter().map(|h| h.normal().to_vec()).collect();
    let mut found: std::collections::BTreeSet<Vec<Rat>> = Default::default();
    for subset in combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let kernel = if rows.is_empty() {
            Matrix::identity(dim)
        } else {
            Matrix::from_rows(rows).kernel_basis(&Field::Rational)
        };
        if kernel.cols() != 1 {
            continue;
        }
        let d = kernel.col(0);
        for candidate in [d.clone(), d.iter().map(|v| -v).collect::<Vec<Rat>>()] {
            if hrep.iter().all(|h| dot(h.normal(), &candidate) >= rat(0)) {
                if let Some(c) = canonical_ray(&candidate) {
                    found.insert(c);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Facet half-spaces of the conical hull of `rays` (assumed full rank).
fn facets_from_rays(dim: usize, rays: &[Vec<Rat>]) -> Result<Vec<HalfSpace>> {
    let mut found: std::collections::BTreeSet<(Vec<Rat>,)> = Default::default();
    for subset in combinations(rays.len(), dim - 1) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| rays[i].clone()).collect();
        let kernel = if rows.is_empty() {
            Matrix::identity(dim)
        } else {
            Matrix::from_rows(rows).kernel_basis(&Field::Rational)
        };
        if kernel.cols() != 1 {
            continue;
        }
        let h = kernel.col(0);
        let on_nonneg = rays.iter().all(|r| dot(&h, r) >= rat(0));
        let on_nonpos = rays.iter().all(|r| dot(&h, r) <= rat(0));
        let oriented = if on_nonneg {
            h
        } else if on_nonpos {
            h.iter().map(|v| -v).collect()
        } else {
            continue;
        };
        if let Some(c) = canonical_ray(&oriented) {
            found.insert((c,));
        }
    }
    found
        .into_iter()
        .map(|(n,)| HalfSpace::closed(n, rat(0)))
        .collect()
}

/// Is `target` a nonnegative combination of `rays`? Decided exactly by
/// feasibility in the combination coefficients.
fn in_conical_hull(dim: usize, rays: &[Vec<Rat>], target: &[Rat]) -> Result<bool> {
    if rays.is_empty() {
        return Ok(target.iter().all(num_traits::Zero::is_zero));
    }
    let k = rays.len();
    let mut cs: Vec<Constraint> = Vec::new();
    for coord in 0..dim {
        let coef: Vec<Rat> = rays.iter().map(|r| r[coord].clone()).collect();
        cs.push(Constraint::new(coef.clone(), target[coord].clone(), false));
        cs.push(Constraint::new(
            coef.iter().map(|v| -v).collect(),
            -target[coord].clone(),
            false,
        ));
    }
    for i in 0..k {
        let mut coef = vec![rat(0); k];
        coef[i] = rat(1);
        cs.push(Constraint::new(coef, rat(0), false));
    }
    feasible(&cs, k)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[derive(Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hrep: Option<Vec<HalfSpaceJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vrep: Option<Vec<Vec<String>>>,
}

impl Cone {
    pub fn to_json(&self) -> ConeJson {
        ConeJson {
            dim: self.dim,
            hrep: Some(self.hrep.iter().map(|h| h.to_json()).collect()),
            vrep: Some(self.vrep.iter().map(|v| format_vec(v)).collect()),
        }
    }

    pub fn from_json(j: &ConeJson) -> Result<Cone> {
        let hrep = j
            .hrep
            .as_ref()
            .map(|hs| hs.iter().map(HalfSpace::from_json).collect::<Result<Vec<_>>>())
            .transpose()?;
        let vrep = j
            .vrep
            .as_ref()
            .map(|vs| vs.iter().map(|v| parse_vec(v)).collect::<Result<Vec<_>>>())
            .transpose()?;
        Cone::from_parts(j.dim, hrep, vrep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_round_trip() {
        let c = Cone::orthant(2);
        assert_eq!(c.extreme_rays().len(), 2);
        assert_eq!(c.hrep().len(), 2);
        assert_eq!(c.interior_ray(), vec![rat(1), rat(1)]);
        assert!(c.contains(&[rat(0), rat(0)]));
        assert!(c.contains(&[rat(3), rat(0)]));
        assert!(!c.contains(&[rat(-1), rat(0)]));
        assert!(c.contains_interior(&[rat(1), rat(2)]));
        assert!(!c.contains_interior(&[rat(1), rat(0)]));
    }

    #[test]
    fn wedge_interior_ray_is_ray_sum() {
        let c = Cone::from_rays(2, vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]]).unwrap();
        assert_eq!(c.interior_ray(), vec![rat(2), rat(1)]);
        // Facets: y ≥ 0 and x − y ≥ 0.
        assert_eq!(c.hrep().len(), 2);
        assert!(c.contains(&[rat(2), rat(1)]));
        assert!(!c.contains(&[rat(0), rat(1)]));
    }

    #[test]
    fn half_line_in_r1() {
        let c = Cone::from_rays(1, vec![vec![rat(1)]]).unwrap();
        assert_eq!(c.interior_ray(), vec![rat(1)]);
        assert!(c.contains(&[rat(0)]));
        assert!(!c.contains(&[rat(-1)]));
    }

    #[test]
    fn rejects_non_pointed_and_non_full() {
        // Whole line: not pointed.
        assert!(Cone::from_rays(1, vec![vec![rat(1)], vec![rat(-1)]]).is_err());
        // A single ray in the plane: not full.
        assert!(matches!(
            Cone::from_rays(2, vec![vec![rat(1), rat(0)]]),
            Err(Error::ConeNotFull)
        ));
        // Half-plane: not pointed.
        let hs = vec![HalfSpace::closed(vec![rat(1), rat(0)], rat(0)).unwrap()];
        assert!(Cone::from_halfspaces(2, hs).is_err());
    }

    #[test]
    fn redundant_generators_are_consistent() {
        let c = Cone::from_rays(
            2,
            vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(1)]],
        )
        .unwrap();
        assert_eq!(c.extreme_rays().len(), 2);
        assert_eq!(c.vrep().len(), 3);
    }

    #[test]
    fn inconsistent_pair_rejected() {
        // Quadrant hrep with a generator outside it.
        let hs = vec![
            HalfSpace::closed(vec![rat(1), rat(0)], rat(0)).unwrap(),
            HalfSpace::closed(vec![rat(0), rat(1)], rat(0)).unwrap(),
        ];
        let bad = Cone::from_parts(2, Some(hs.clone()), Some(vec![vec![rat(-1), rat(0)], vec![rat(1), rat(1)]]));
        assert!(bad.is_err());
        // Generators spanning a strictly smaller cone than the hrep.
        let small = Cone::from_parts(2, Some(hs), Some(vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]]));
        assert!(small.is_err());
    }
}
