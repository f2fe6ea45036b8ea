//! Conic stalks: the direct limit over probes `p ∈ q − Q₊°` of sections over
//! `p + Q₊°`, computed as a finite evaluation.
//!
//! The limit stabilizes once the probe ray `{q − t·g}` (g an interior ray of
//! the cone) stops crossing arrangement hyperplanes: the probe `p = q − ε·g`
//! with ε below the first crossing pins a single face, and the stalk of an
//! encoded complex is its value at the element assigned to that face. The
//! stalk of an indicator summand is `k` exactly when the probe face lies in
//! the region, which for upsets is equivalent to `q ∈ U°` and for downsets
//! to the probe lying interior to the downset.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::complex::{VsChainMap, VsComplex};
use crate::encoding::PLComplex;
use crate::error::{Error, Result};
use crate::geometry::arrangement::Arrangement;
use crate::geometry::cone::Cone;
use crate::scalar::{dot, rat, ratio, scale_vec, sub_vec, Rat};

/// Cached probe data for one (arrangement, cone) pair.
#[derive(Clone, Debug)]
pub struct StalkContext {
    arr: Arc<Arrangement>,
    cone: Arc<Cone>,
    ray: Vec<Rat>,
    probe_of_face: Vec<usize>,
}

impl StalkContext {
    pub fn new(arr: Arc<Arrangement>, cone: Arc<Cone>) -> Result<StalkContext> {
        if arr.dim() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: arr.dim(),
                got: cone.dim(),
            });
        }
        let ray = cone.interior_ray();
        let mut ctx = StalkContext {
            arr,
            cone,
            ray,
            probe_of_face: Vec::new(),
        };
        ctx.probe_of_face = (0..ctx.arr.num_faces())
            .map(|f| ctx.probe_face_at(ctx.arr.face(f).sample(), rat(1)))
            .collect();
        Ok(ctx)
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn interior_ray(&self) -> &[Rat] {
        &self.ray
    }

    /// The stabilized probe face for the sample point of a face.
    pub fn probe_of_face(&self, face: usize) -> usize {
        self.probe_of_face[face]
    }

    /// Half the first positive crossing parameter of the ray `{q − t·g}`
    /// with the arrangement hyperplanes; 1 if the ray never crosses.
    pub fn stabilization_epsilon(&self, q: &[Rat]) -> Rat {
        let mut first: Option<Rat> = None;
        for h in self.arr.hyperplanes() {
            let denom = dot(h.normal(), &self.ray);
            if denom.is_zero() {
                continue;
            }
            let t = (dot(h.normal(), q) - h.offset()) / &denom;
            if t > rat(0) && first.as_ref().map_or(true, |f| t < *f) {
                first = Some(t);
            }
        }
        match first {
            Some(t) => t * ratio(1, 2),
            None => rat(1),
        }
    }

    /// The face of the probe `q − ε·g`; `scale` shrinks ε further (any value
    /// in (0, 1] yields the same face — the stabilization property).
    pub fn probe_face_at(&self, q: &[Rat], scale: Rat) -> usize {
        assert!(scale > rat(0) && scale <= rat(1), "scale must lie in (0, 1]");
        let eps = self.stabilization_epsilon(q) * scale;
        let p = sub_vec(q, &scale_vec(&eps, &self.ray));
        self.arr.face_of(&p)
    }

    pub fn probe_face(&self, q: &[Rat]) -> usize {
        self.probe_face_at(q, rat(1))
    }

    /// Checked cone-order comparability of two points.
    pub fn points_comparable(&self, q: &[Rat], q2: &[Rat]) -> bool {
        self.cone.contains(&sub_vec(q2, q))
    }
}

impl PLComplex {
    /// Conic stalk at a rational point: the complex at the element assigned
    /// to the stabilized probe face.
    pub fn conic_stalk(&self, ctx: &StalkContext, q: &[Rat]) -> VsComplex {
        let f = ctx.probe_face(q);
        self.at_face(f)
    }

    /// Conic stalk at a face sample, using the cached probe.
    pub fn conic_stalk_at_face(&self, ctx: &StalkContext, face: usize) -> VsComplex {
        self.at_face(ctx.probe_of_face(face))
    }

    /// The induced map of stalk complexes for `q ⪯ q2`.
    pub fn conic_stalk_map(
        &self,
        ctx: &StalkContext,
        q: &[Rat],
        q2: &[Rat],
    ) -> Result<VsChainMap> {
        if !ctx.points_comparable(q, q2) {
            return Err(Error::PointsNotComparable);
        }
        self.stalk_map_between_faces(ctx.probe_face(q), ctx.probe_face(q2))
    }

    /// Stalk map indexed by probe faces (used by batch verification).
    pub fn stalk_map_between_faces(&self, probe_from: usize, probe_to: usize) -> Result<VsChainMap> {
        let e = self.encoding().assign(probe_from);
        let e2 = self.encoding().assign(probe_to);
        if !self.encoding().poset().leq(e, e2) {
            return Err(Error::Input(
                "probe faces are assigned incomparable elements (encoding invalid?)".into(),
            ));
        }
        let mut maps = BTreeMap::new();
        for (&k, m) in self.complex().terms() {
            maps.insert(k, m.transition(e, e2)?);
        }
        Ok(VsChainMap {
            from: self.complex().at_element(e),
            to: self.complex().at_element(e2),
            maps,
        })
    }

    /// Conic support: faces whose sample has nonzero conic-stalk homology.
    pub fn conic_support(&self, ctx: &StalkContext) -> crate::geometry::FaceSet {
        let arr = self.encoding().arrangement().clone();
        let members: Vec<usize> = (0..arr.num_faces())
            .filter(|&f| !self.conic_stalk_at_face(ctx, f).homology().is_empty())
            .collect();
        crate::geometry::FaceSet::new(arr, members).expect("face indices in range")
    }
}
