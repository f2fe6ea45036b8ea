//! Piecewise-linear regions as sets of arrangement faces.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::arrangement::{signs_from_string, Arrangement};
use crate::scalar::Rat;

/// A union of faces of one arrangement. Closure, interior and complement are
/// exact as point sets because faces partition the ambient space.
#[derive(Clone, Debug)]
pub struct FaceSet {
    arr: Arc<Arrangement>,
    members: BTreeSet<usize>,
}

impl PartialEq for FaceSet {
    fn eq(&self, other: &Self) -> bool {
        self.arr.id() == other.arr.id() && self.members == other.members
    }
}
impl Eq for FaceSet {}

impl FaceSet {
    pub fn new(arr: Arc<Arrangement>, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= arr.num_faces()) {
            return Err(Error::Input(format!(
                "face index {bad} out of range ({} faces)",
                arr.num_faces()
            )));
        }
        Ok(FaceSet { arr, members })
    }

    pub fn empty(arr: Arc<Arrangement>) -> Self {
        FaceSet {
            arr,
            members: BTreeSet::new(),
        }
    }

    pub fn full(arr: Arc<Arrangement>) -> Self {
        let members = (0..arr.num_faces()).collect();
        FaceSet { arr, members }
    }

    /// All faces whose sample satisfies the predicate.
    pub fn from_predicate(arr: Arc<Arrangement>, pred: impl Fn(&[Rat]) -> bool) -> Self {
        let members = (0..arr.num_faces())
            .filter(|&i| pred(arr.face(i).sample()))
            .collect();
        FaceSet { arr, members }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, face: usize) -> bool {
        self.members.contains(&face)
    }

    pub fn contains_point(&self, point: &[Rat]) -> bool {
        self.members.contains(&self.arr.face_of(point))
    }

    pub fn is_subset(&self, other: &FaceSet) -> bool {
        assert_eq!(self.arr.id(), other.arr.id(), "face sets from different arrangements");
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &FaceSet) -> FaceSet {
        assert_eq!(self.arr.id(), other.arr.id(), "face sets from different arrangements");
        FaceSet {
            arr: self.arr.clone(),
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersect(&self, other: &FaceSet) -> FaceSet {
        assert_eq!(self.arr.id(), other.arr.id(), "face sets from different arrangements");
        FaceSet {
            arr: self.arr.clone(),
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn complement(&self) -> FaceSet {
        let members = (0..self.arr.num_faces())
            .filter(|i| !self.members.contains(i))
            .collect();
        FaceSet {
            arr: self.arr.clone(),
            members,
        }
    }

    /// Topological closure: add every face lying in the closure of a member.
    pub fn closure(&self) -> FaceSet {
        let members = (0..self.arr.num_faces())
            .filter(|&i| {
                self.members.contains(&i)
                    || self.members.iter().any(|&m| self.arr.closure_leq(i, m))
            })
            .collect();
        FaceSet {
            arr: self.arr.clone(),
            members,
        }
    }

    /// Topological interior, via complement–closure duality.
    pub fn interior(&self) -> FaceSet {
        self.complement().closure().complement()
    }

    pub fn is_open(&self) -> bool {
        self == &self.interior()
    }

    pub fn is_closed(&self) -> bool {
        self == &self.closure()
    }

    /// Re-express the same point set in a finer arrangement. The target must
    /// contain every hyperplane of the source.
    pub fn refine(&self, target: &Arc<Arrangement>) -> Result<FaceSet> {
        if !target.contains_hyperplanes_of(&self.arr) {
            return Err(Error::Input(
                "refinement target does not contain the source hyperplanes".into(),
            ));
        }
        let members = (0..target.num_faces())
            .filter(|&g| {
                let src = self.arr.face_of(target.face(g).sample());
                self.members.contains(&src)
            })
            .collect();
        Ok(FaceSet {
            arr: target.clone(),
            members,
        })
    }

    /// Every member face bounded?
    pub fn is_bounded(&self) -> Result<bool> {
        for &m in &self.members {
            if !self.arr.face_is_bounded(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sign_strings(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&m| self.arr.face(m).sign_string())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub struct FaceSetJson {
    pub arrangement_id: String,
    pub faces: Vec<String>,
}

impl FaceSet {
    pub fn to_json(&self) -> FaceSetJson {
        FaceSetJson {
            arrangement_id: self.arr.id().to_string(),
            faces: self.sign_strings(),
        }
    }

    pub fn from_json(j: &FaceSetJson, arr: &Arc<Arrangement>) -> Result<FaceSet> {
        if j.arrangement_id != arr.id() {
            return Err(Error::Input(format!(
                "face set references arrangement {}, expected {}",
                j.arrangement_id,
                arr.id()
            )));
        }
        let mut members = BTreeSet::new();
        for s in &j.faces {
            let signs = signs_from_string(s)?;
            let idx = arr
                .face_index(&signs)
                .ok_or_else(|| Error::Input(format!("unknown face `{s}`")))?;
            members.insert(idx);
        }
        Ok(FaceSet {
            arr: arr.clone(),
            members,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn axes() -> Arc<Arrangement> {
        Arc::new(
            Arrangement::build(
                2,
                &[(vec![rat(1), rat(0)], rat(0)), (vec![rat(0), rat(1)], rat(0))],
            )
            .unwrap(),
        )
    }

    fn quadrant_closed(arr: &Arc<Arrangement>) -> FaceSet {
        FaceSet::from_predicate(arr.clone(), |p| p[0] >= rat(0) && p[1] >= rat(0))
    }

    #[test]
    fn interior_of_closed_quadrant_is_open_quadrant() {
        let arr = axes();
        let closed = quadrant_closed(&arr);
        assert_eq!(closed.len(), 4);
        let open = closed.interior();
        assert_eq!(open.len(), 1);
        assert!(open.contains_point(&[rat(1), rat(1)]));
        assert!(!open.contains_point(&[rat(0), rat(1)]));
        // Closure of the open quadrant returns the closed one.
        assert_eq!(open.closure(), closed);
    }

    #[test]
    fn measure_zero_slit_restored_by_interior_closure() {
        // Axes plus the diagonal; X = open quadrant minus the open diagonal ray.
        let arr = Arc::new(
            Arrangement::build(
                2,
                &[
                    (vec![rat(1), rat(0)], rat(0)),
                    (vec![rat(0), rat(1)], rat(0)),
                    (vec![rat(1), rat(-1)], rat(0)),
                ],
            )
            .unwrap(),
        );
        let open_quadrant =
            FaceSet::from_predicate(arr.clone(), |p| p[0] > rat(0) && p[1] > rat(0));
        assert_eq!(open_quadrant.len(), 3);
        let diag = FaceSet::from_predicate(arr.clone(), |p| {
            p[0] > rat(0) && p[1] > rat(0) && p[0] == p[1]
        });
        let slit: FaceSet = open_quadrant.intersect(&diag.complement());
        assert_eq!(slit.interior().closure().interior(), open_quadrant);
        assert_eq!(slit.closure().interior(), open_quadrant);
    }

    #[test]
    fn refine_into_finer_arrangement() {
        let coarse = axes();
        let fine = Arc::new(
            Arrangement::build(
                2,
                &[
                    (vec![rat(1), rat(0)], rat(0)),
                    (vec![rat(0), rat(1)], rat(0)),
                    (vec![rat(1), rat(-1)], rat(0)),
                ],
            )
            .unwrap(),
        );
        let open = quadrant_closed(&coarse).interior();
        let refined = open.refine(&fine).unwrap();
        assert_eq!(refined.len(), 3);
        // Identity refinement.
        assert_eq!(open.refine(&coarse).unwrap(), open);
        // Empty set refines to empty.
        assert!(FaceSet::empty(coarse.clone()).refine(&fine).unwrap().is_empty());
        // Coarsening is rejected.
        let fine_set = FaceSet::full(fine.clone());
        assert!(fine_set.refine(&coarse).is_err());
    }

    #[test]
    fn duality_of_interior_and_closure() {
        let arr = axes();
        for seed in 0..(1 << 4) {
            let members: Vec<usize> = (0..arr.num_faces()).filter(|i| (seed >> (i % 4)) & 1 == 1).collect();
            let x = FaceSet::new(arr.clone(), members).unwrap();
            assert_eq!(x.interior(), x.complement().closure().complement());
            assert_eq!(x.closure(), x.complement().interior().complement());
            assert_eq!(x.closure().closure(), x.closure());
            assert_eq!(x.interior().interior(), x.interior());
            assert!(x.interior().is_subset(&x));
            assert!(x.is_subset(&x.closure()));
        }
    }
}
