//! Finite encodings: a master arrangement, a positive cone, and an
//! order-preserving assignment of faces to a finite poset. A poset complex
//! over the encoding is the computational form of a tame PL complex — its
//! pointwise value at `x` in degree `i` is the term at `assign(face of x)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexJson, PosetComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::arrangement::{Arrangement, ArrangementJson};
use crate::geometry::compare::Comparability;
use crate::geometry::cone::{Cone, ConeJson};
use crate::geometry::region::FaceSet;
use crate::poset::{FinitePoset, PosetJson};
use crate::scalar::Rat;

#[derive(Clone, Debug)]
pub struct Encoding {
    arr: Arc<Arrangement>,
    cone: Arc<Cone>,
    rel: Arc<Comparability>,
    poset: Arc<FinitePoset>,
    assign: Vec<usize>,
}

impl Encoding {
    pub fn new(
        arr: Arc<Arrangement>,
        cone: Arc<Cone>,
        poset: Arc<FinitePoset>,
        assign: Vec<usize>,
    ) -> Result<Encoding> {
        if arr.dim() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: arr.dim(),
                got: cone.dim(),
            });
        }
        let rel = Arc::new(Comparability::compute(arr.clone(), cone.clone())?);
        Encoding::with_relation(rel, poset, assign)
    }

    /// Reuse an already-computed comparability relation (it depends only on
    /// the arrangement and cone).
    pub fn with_relation(
        rel: Arc<Comparability>,
        poset: Arc<FinitePoset>,
        assign: Vec<usize>,
    ) -> Result<Encoding> {
        let arr = rel.arrangement().clone();
        let cone = rel.cone().clone();
        if assign.len() != arr.num_faces() {
            return Err(Error::Input(format!(
                "assignment covers {} faces, arrangement has {}",
                assign.len(),
                arr.num_faces()
            )));
        }
        if let Some(&bad) = assign.iter().find(|&&e| e >= poset.len()) {
            return Err(Error::Input(format!("assignment hits unknown element {bad}")));
        }
        Ok(Encoding {
            arr,
            cone,
            rel,
            poset,
            assign,
        })
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arr
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn relation(&self) -> &Arc<Comparability> {
        &self.rel
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn assign(&self, face: usize) -> usize {
        self.assign[face]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    /// Order-preservation violations: face pairs `F ⪯ G` whose assigned
    /// elements are not ordered. Empty iff this is a finite encoding.
    pub fn validate(&self) -> Vec<(usize, usize)> {
        let n = self.arr.num_faces();
        let mut bad = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if self.rel.leq(f, g) && !self.poset.leq(self.assign[f], self.assign[g]) {
                    bad.push((f, g));
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let bad = self.validate();
        if let Some(&(f, g)) = bad.first() {
            return Err(Error::Input(format!(
                "assignment is not order-preserving: face {} ⪯ face {} but `{}` ≰ `{}`",
                self.arr.face(f).sign_string(),
                self.arr.face(g).sign_string(),
                self.poset.name(self.assign[f]),
                self.poset.name(self.assign[g]),
            )));
        }
        Ok(())
    }

    /// The union of faces assigned at or above `p`: the pullback of the
    /// principal upset at `p`.
    pub fn fiber_up(&self, p: usize) -> FaceSet {
        let members: Vec<usize> = (0..self.arr.num_faces())
            .filter(|&f| self.poset.leq(p, self.assign[f]))
            .collect();
        FaceSet::new(self.arr.clone(), members).expect("face indices in range")
    }

    /// Dually, the pullback of the principal downset at `p`.
    pub fn fiber_down(&self, p: usize) -> FaceSet {
        let members: Vec<usize> = (0..self.arr.num_faces())
            .filter(|&f| self.poset.leq(self.assign[f], p))
            .collect();
        FaceSet::new(self.arr.clone(), members).expect("face indices in range")
    }

    /// Same encoding expressed over a finer arrangement.
    pub fn refine(&self, target: Arc<Arrangement>) -> Result<Encoding> {
        if !target.contains_hyperplanes_of(&self.arr) {
            return Err(Error::Input(
                "refinement target does not contain the source hyperplanes".into(),
            ));
        }
        let assign = (0..target.num_faces())
            .map(|g| self.assign[self.arr.face_of(target.face(g).sample())])
            .collect();
        Encoding::new(target, self.cone.clone(), self.poset.clone(), assign)
    }
}

/// A tame PL complex in encoded form.
#[derive(Clone, Debug)]
pub struct PLComplex {
    encoding: Arc<Encoding>,
    complex: PosetComplex,
}

impl PLComplex {
    pub fn new(encoding: Arc<Encoding>, complex: PosetComplex) -> Result<PLComplex> {
        if complex.poset() != encoding.poset() {
            return Err(Error::Input("complex poset differs from encoding poset".into()));
        }
        Ok(PLComplex { encoding, complex })
    }

    pub fn encoding(&self) -> &Arc<Encoding> {
        &self.encoding
    }

    pub fn complex(&self) -> &PosetComplex {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn validate(&self) -> Result<()> {
        self.encoding.ensure_valid()?;
        self.complex.validate()
    }

    /// Pointwise (Alexandrov) value at a face: the complex at the assigned
    /// poset element.
    pub fn at_face(&self, face: usize) -> crate::complex::VsComplex {
        self.complex.at_element(self.encoding.assign(face))
    }

    pub fn at_point(&self, x: &[Rat]) -> crate::complex::VsComplex {
        self.at_face(self.encoding.arrangement().face_of(x))
    }

    /// Faces carrying a nonzero term in some degree.
    pub fn alexandrov_support(&self) -> FaceSet {
        let arr = self.encoding.arrangement().clone();
        let members: Vec<usize> = (0..arr.num_faces())
            .filter(|&f| {
                let e = self.encoding.assign(f);
                self.complex.terms().values().any(|m| m.rank(e) > 0)
            })
            .collect();
        FaceSet::new(arr, members).expect("face indices in range")
    }

    /// Compact support means the pointwise support is bounded.
    pub fn is_compactly_supported(&self) -> Result<bool> {
        self.alexandrov_support().is_bounded()
    }

    /// Refine into a finer master arrangement (same pointwise data).
    pub fn refine(&self, target: Arc<Arrangement>) -> Result<PLComplex> {
        let encoding = Arc::new(self.encoding.refine(target)?);
        Ok(PLComplex {
            encoding,
            complex: self.complex.clone(),
        })
    }
}

#[derive(Serialize, Deserialize)]
pub struct EncodingJson {
    pub arrangement: ArrangementJson,
    pub cone: ConeJson,
    pub poset: PosetJson,
    pub assign: BTreeMap<String, String>,
}

impl Encoding {
    pub fn to_json(&self) -> EncodingJson {
        let assign = (0..self.arr.num_faces())
            .map(|f| {
                (
                    self.arr.face(f).sign_string(),
                    self.poset.name(self.assign[f]).to_string(),
                )
            })
            .collect();
        EncodingJson {
            arrangement: self.arr.to_json(),
            cone: self.cone.to_json(),
            poset: self.poset.to_json(),
            assign,
        }
    }

    pub fn from_json(j: &EncodingJson) -> Result<Encoding> {
        let arr = Arc::new(Arrangement::from_json(&j.arrangement)?);
        let cone = Arc::new(Cone::from_json(&j.cone)?);
        let poset = Arc::new(FinitePoset::from_json(&j.poset)?);
        let mut assign = vec![usize::MAX; arr.num_faces()];
        for (face_str, elem) in &j.assign {
            let signs = crate::geometry::arrangement::signs_from_string(face_str)?;
            let f = arr
                .face_index(&signs)
                .ok_or_else(|| Error::Input(format!("assign: unknown face `{face_str}`")))?;
            let e = poset
                .index_of(elem)
                .ok_or_else(|| Error::Input(format!("assign: unknown element `{elem}`")))?;
            assign[f] = e;
        }
        if let Some(f) = assign.iter().position(|&e| e == usize::MAX) {
            return Err(Error::Input(format!(
                "assign: face `{}` not covered",
                arr.face(f).sign_string()
            )));
        }
        Encoding::new(arr, cone, poset, assign)
    }
}

#[derive(Serialize, Deserialize)]
pub struct PLComplexJson {
    #[serde(flatten)]
    pub encoding: EncodingJson,
    pub complex: ComplexJson,
}

impl PLComplex {
    pub fn to_json(&self) -> PLComplexJson {
        PLComplexJson {
            encoding: self.encoding.to_json(),
            complex: self.complex.to_json(),
        }
    }

    pub fn from_json(j: &PLComplexJson, field: Field) -> Result<PLComplex> {
        let encoding = Arc::new(Encoding::from_json(&j.encoding)?);
        let complex = PosetComplex::from_json(&j.complex, encoding.poset(), field)?;
        PLComplex::new(encoding, complex)
    }
}
