//! Cone-induced comparability between arrangement faces, and the upset /
//! downset predicates built on it.
//!
//! Faces `F ⪯ G` when some `x ∈ F` and `y ∈ G` satisfy `y − x ∈ Q₊`. A union
//! of faces is then an upset as a point set exactly when it is up-closed
//! under this relation, because each face is all-or-nothing inside a region.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::arrangement::Arrangement;
use crate::geometry::cone::Cone;
use crate::geometry::feas::{feasible, Constraint};
use crate::geometry::region::FaceSet;
use crate::scalar::{rat, Rat};

#[derive(Clone, Debug)]
pub struct Comparability {
    arr: Arc<Arrangement>,
    cone: Arc<Cone>,
    leq: Vec<bool>, // row-major over (from, to)
}

impl Comparability {
    pub fn compute(arr: Arc<Arrangement>, cone: Arc<Cone>) -> Result<Comparability> {
        if arr.dim() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: arr.dim(),
                got: cone.dim(),
            });
        }
        let n = arr.num_faces();
        let mut leq = vec![false; n * n];
        for f in 0..n {
            for g in 0..n {
                leq[f * n + g] = if f == g {
                    true
                } else {
                    pair_feasible(&arr, &cone, f, g)?
                };
            }
        }
        Ok(Comparability { arr, cone, leq })
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    /// `F ⪯ G`.
    pub fn leq(&self, from: usize, to: usize) -> bool {
        self.leq[from * self.arr.num_faces() + to]
    }

    pub fn is_upset(&self, region: &FaceSet) -> bool {
        assert_eq!(
            region.arrangement().id(),
            self.arr.id(),
            "region and relation use different arrangements"
        );
        let n = self.arr.num_faces();
        region
            .members()
            .iter()
            .all(|&f| (0..n).all(|g| !self.leq(f, g) || region.contains(g)))
    }

    pub fn is_downset(&self, region: &FaceSet) -> bool {
        assert_eq!(
            region.arrangement().id(),
            self.arr.id(),
            "region and relation use different arrangements"
        );
        let n = self.arr.num_faces();
        region
            .members()
            .iter()
            .all(|&f| (0..n).all(|g| !self.leq(g, f) || region.contains(g)))
    }
}

/// Feasibility of `{x ∈ F, y ∈ G, y − x ∈ Q₊}` in 2n variables.
fn pair_feasible(arr: &Arrangement, cone: &Cone, f: usize, g: usize) -> Result<bool> {
    let n = arr.dim();
    let mut cs: Vec<Constraint> = Vec::new();
    for c in arr.face_constraints(f) {
        let mut coef = c.coef;
        coef.extend(std::iter::repeat(rat(0)).take(n));
        cs.push(Constraint::new(coef, c.bound, c.strict));
    }
    for c in arr.face_constraints(g) {
        let mut coef = vec![rat(0); n];
        coef.extend(c.coef);
        cs.push(Constraint::new(coef, c.bound, c.strict));
    }
    for h in cone.hrep() {
        let mut coef: Vec<Rat> = h.normal().iter().map(|v| -v).collect();
        coef.extend(h.normal().iter().cloned());
        cs.push(Constraint::new(coef, rat(0), false));
    }
    feasible(&cs, 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<Arrangement>, Comparability) {
        let arr = Arc::new(
            Arrangement::build(
                2,
                &[(vec![rat(1), rat(0)], rat(0)), (vec![rat(0), rat(1)], rat(0))],
            )
            .unwrap(),
        );
        let rel = Comparability::compute(arr.clone(), Arc::new(Cone::orthant(2))).unwrap();
        (arr, rel)
    }

    #[test]
    fn quadrant_comparabilities() {
        let (arr, rel) = setup();
        let origin = arr.face_of(&[rat(0), rat(0)]);
        let open_pp = arr.face_of(&[rat(1), rat(1)]);
        let open_mm = arr.face_of(&[rat(-1), rat(-1)]);
        let open_mp = arr.face_of(&[rat(-1), rat(1)]);
        assert!(rel.leq(origin, open_pp));
        assert!(!rel.leq(open_pp, open_mm));
        // Witness x = (−1, 1), y = (0, 1): difference (1, 0) ∈ Q₊.
        assert!(rel.leq(open_mp, open_pp));
        assert!(rel.leq(open_pp, open_pp));
    }

    #[test]
    fn upset_and_downset_predicates() {
        let (arr, rel) = setup();
        let open_quadrant = FaceSet::from_predicate(arr.clone(), |p| p[0] > rat(0) && p[1] > rat(0));
        assert!(rel.is_upset(&open_quadrant));
        assert!(!rel.is_downset(&open_quadrant));

        let lower_left = FaceSet::from_predicate(arr.clone(), |p| p[0] <= rat(0) && p[1] <= rat(0));
        assert!(!rel.is_upset(&lower_left));
        assert!(rel.is_downset(&lower_left));

        // Half-plane x > 0 is an upset: adding any nonnegative vector keeps x > 0.
        let half = FaceSet::from_predicate(arr.clone(), |p| p[0] > rat(0));
        assert!(rel.is_upset(&half));

        // Complement duality.
        assert!(rel.is_downset(&open_quadrant.complement()));
        assert!(rel.is_upset(&lower_left.complement()));
    }
}
