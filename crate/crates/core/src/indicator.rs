//! Indicator complexes at PL scale: complexes whose terms are formal sums
//! of labeled upset (or downset) regions with connected scalar components.
//!
//! A poset-level resolution pulls back along an encoding — each principal
//! summand becomes the union of faces assigned at or above (below) its
//! element. The open/closed adjustment replaces upsets by their interiors
//! and downsets by their closures; it changes pointwise (Alexandrov) values
//! on boundaries but never conic stalks, and both verification semantics
//! are exposed so that difference is inspectable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{VsChainMap, VsComplex};
use crate::encoding::{Encoding, PLComplex, PLComplexJson};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::region::{FaceSet, FaceSetJson};
use crate::matrix::Matrix;
use crate::resolution::PosetResolution;
use crate::scalar::{format_vec, parse_vec, Rat};
use crate::stalk::StalkContext;

pub use crate::resolution::Kind;

/// One region summand. `origin` is the poset element it was pulled back
/// from; augmentation-row summands carry generator data (a column vector for
/// upsets, a covector row for downsets).
#[derive(Clone, Debug)]
pub struct IndSummand {
    pub region: FaceSet,
    pub origin: usize,
    pub gen: Option<Vec<Rat>>,
}

#[derive(Clone, Debug)]
pub struct IndicatorComplex {
    kind: Kind,
    encoding: Arc<Encoding>,
    terms: BTreeMap<i32, Vec<IndSummand>>,
    diffs: BTreeMap<i32, Matrix>,
    augmentation: Option<PLComplex>,
    field: Field,
}

/// Per-face diagnostics from a failed verification.
#[derive(Clone, Debug, Serialize)]
pub struct FaceDiagnostic {
    pub face: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub failures: Vec<FaceDiagnostic>,
}

/// Pull a poset-level resolution back to PL regions along an encoding.
pub fn pull_back(res: &PosetResolution, encoding: &Arc<Encoding>) -> Result<IndicatorComplex> {
    encoding.ensure_valid()?;
    if res.poset() != encoding.poset() {
        return Err(Error::Input(
            "resolution poset differs from encoding poset".into(),
        ));
    }
    let mut terms = BTreeMap::new();
    for (&d, summands) in res.terms() {
        let pulled: Vec<IndSummand> = summands
            .iter()
            .map(|s| {
                let region = match res.kind() {
                    Kind::Upset => encoding.fiber_up(s.element),
                    Kind::Downset => encoding.fiber_down(s.element),
                };
                IndSummand {
                    region,
                    origin: s.element,
                    gen: s.gen.clone(),
                }
            })
            .collect();
        terms.insert(d, pulled);
    }
    let augmentation = Some(PLComplex::new(encoding.clone(), res.target().clone())?);
    let out = IndicatorComplex {
        kind: res.kind(),
        encoding: encoding.clone(),
        terms,
        diffs: res.diffs().clone(),
        augmentation,
        field: res.field(),
    };
    out.validate()?;
    Ok(out)
}

impl IndicatorComplex {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn encoding(&self) -> &Arc<Encoding> {
        &self.encoding
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<i32, Vec<IndSummand>> {
        &self.terms
    }

    pub fn diffs(&self) -> &BTreeMap<i32, Matrix> {
        &self.diffs
    }

    pub fn augmentation(&self) -> Option<&PLComplex> {
        self.augmentation.as_ref()
    }

    pub fn total_summands(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    /// All distinct summand regions across degrees, deduplicated, in
    /// first-appearance order (degree ascending, summand order).
    pub fn distinct_regions(&self) -> Vec<FaceSet> {
        let mut out: Vec<FaceSet> = Vec::new();
        for summands in self.terms.values() {
            for s in summands {
                if !out.iter().any(|r| r == &s.region) {
                    out.push(s.region.clone());
                }
            }
        }
        out
    }

    /// Structural invariants: region kinds, connected nesting, scalar d² = 0,
    /// and generator comparability.
    pub fn validate(&self) -> Result<()> {
        let rel = self.encoding.relation();
        for (d, summands) in &self.terms {
            for (i, s) in summands.iter().enumerate() {
                let ok = match self.kind {
                    Kind::Upset => rel.is_upset(&s.region),
                    Kind::Downset => rel.is_downset(&s.region),
                };
                if !ok {
                    return Err(Error::Input(format!(
                        "summand {i} at degree {d} is not a {} region",
                        match self.kind {
                            Kind::Upset => "up-closed",
                            Kind::Downset => "down-closed",
                        }
                    )));
                }
                if s.gen.is_some() {
                    let poset = self.encoding.poset();
                    for &f in s.region.members() {
                        let e = self.encoding.assign(f);
                        let comparable = match self.kind {
                            Kind::Upset => poset.leq(s.origin, e),
                            Kind::Downset => poset.leq(e, s.origin),
                        };
                        if !comparable {
                            return Err(Error::Input(format!(
                                "summand {i} at degree {d} reaches outside its origin fiber"
                            )));
                        }
                    }
                }
            }
        }
        for (&d, lam) in &self.diffs {
            let src = self.terms.get(&d).map(Vec::as_slice).unwrap_or(&[]);
            let tgt = self.terms.get(&(d - 1)).map(Vec::as_slice).unwrap_or(&[]);
            if lam.rows() != tgt.len() || lam.cols() != src.len() {
                return Err(Error::Input(format!(
                    "differential at degree {d} has shape {}x{}, expected {}x{}",
                    lam.rows(),
                    lam.cols(),
                    tgt.len(),
                    src.len()
                )));
            }
            for t in 0..lam.rows() {
                for s in 0..lam.cols() {
                    if self.field.is_zero(lam.get(t, s)) {
                        continue;
                    }
                    let nested = match self.kind {
                        // k[U] → k[U'] connected and nonzero needs U ⊆ U'.
                        Kind::Upset => src[s].region.is_subset(&tgt[t].region),
                        // k[D'] → k[D] connected and nonzero needs D ⊆ D'.
                        Kind::Downset => tgt[t].region.is_subset(&src[s].region),
                    };
                    if !nested {
                        return Err(Error::Input(format!(
                            "nonzero component between non-nested regions at degree {d}"
                        )));
                    }
                }
            }
            if let Some(up) = self.diffs.get(&(d + 1)) {
                if up.rows() == lam.cols() && !lam.mul(up, &self.field).is_zero(&self.field) {
                    return Err(Error::Input(format!("d∘d ≠ 0 at degree {d}")));
                }
            }
        }
        Ok(())
    }

    /// Open/closed adjustment: upsets become their interiors, downsets
    /// their closures. Differential scalars are unchanged; conic stalks of
    /// the whole complex are unchanged at every face sample.
    pub fn adjust_topology(&self) -> IndicatorComplex {
        let terms = self
            .terms
            .iter()
            .map(|(&d, summands)| {
                let adjusted = summands
                    .iter()
                    .map(|s| IndSummand {
                        region: match self.kind {
                            Kind::Upset => s.region.interior(),
                            Kind::Downset => s.region.closure(),
                        },
                        origin: s.origin,
                        gen: s.gen.clone(),
                    })
                    .collect();
                (d, adjusted)
            })
            .collect();
        IndicatorComplex {
            kind: self.kind,
            encoding: self.encoding.clone(),
            terms,
            diffs: self.diffs.clone(),
            augmentation: self.augmentation.clone(),
            field: self.field,
        }
    }

    /// Pointwise (Alexandrov) value on a face: the sub-complex of summands
    /// containing it.
    pub fn at_face(&self, face: usize) -> VsComplex {
        regions_complex_at(&self.field, &self.terms, &self.diffs, |s| {
            s.region.contains(face)
        })
    }

    /// Conic stalk at a face sample: the sub-complex of summands containing
    /// the stabilized probe face.
    pub fn stalk_at_face(&self, ctx: &StalkContext, face: usize) -> VsComplex {
        let probe = ctx.probe_of_face(face);
        regions_complex_at(&self.field, &self.terms, &self.diffs, |s| {
            s.region.contains(probe)
        })
    }

    /// Conic stalk at an arbitrary rational point.
    pub fn conic_stalk(&self, ctx: &StalkContext, q: &[Rat]) -> VsComplex {
        let probe = ctx.probe_face(q);
        regions_complex_at(&self.field, &self.terms, &self.diffs, |s| {
            s.region.contains(probe)
        })
    }

    /// Induced stalk map between comparable points: identity on the
    /// summands alive at both ends, zero elsewhere.
    pub fn conic_stalk_map(&self, ctx: &StalkContext, q: &[Rat], q2: &[Rat]) -> Result<VsChainMap> {
        if !ctx.points_comparable(q, q2) {
            return Err(Error::PointsNotComparable);
        }
        Ok(self.stalk_map_between_probes(ctx.probe_face(q), ctx.probe_face(q2)))
    }

    /// Stalk map indexed directly by probe faces.
    pub fn stalk_map_between_probes(&self, probe_from: usize, probe_to: usize) -> VsChainMap {
        let from = regions_complex_at(&self.field, &self.terms, &self.diffs, |s| {
            s.region.contains(probe_from)
        });
        let to = regions_complex_at(&self.field, &self.terms, &self.diffs, |s| {
            s.region.contains(probe_to)
        });
        let mut maps = BTreeMap::new();
        for (&d, summands) in &self.terms {
            let a: Vec<usize> = summands
                .iter()
                .enumerate()
                .filter(|(_, s)| s.region.contains(probe_from))
                .map(|(i, _)| i)
                .collect();
            let b: Vec<usize> = summands
                .iter()
                .enumerate()
                .filter(|(_, s)| s.region.contains(probe_to))
                .map(|(i, _)| i)
                .collect();
            let mut m = Matrix::zeros(b.len(), a.len());
            for (col, &i) in a.iter().enumerate() {
                if let Some(row) = b.iter().position(|&j| j == i) {
                    m.set(row, col, crate::scalar::rat(1));
                }
            }
            maps.insert(d, m);
        }
        VsChainMap { from, to, maps }
    }

    /// Augmentation component at the Alexandrov value on a face.
    fn aug_at_face(&self, face: usize) -> Result<VsChainMap> {
        let plc = self
            .augmentation
            .as_ref()
            .ok_or_else(|| Error::Input("indicator complex carries no augmentation".into()))?;
        self.aug_between(face, plc.at_face(face), self.at_face(face), face)
    }

    /// Augmentation component at the conic stalk of a face sample.
    fn aug_at_stalk(&self, ctx: &StalkContext, face: usize) -> Result<VsChainMap> {
        let plc = self
            .augmentation
            .as_ref()
            .ok_or_else(|| Error::Input("indicator complex carries no augmentation".into()))?;
        let probe = ctx.probe_of_face(face);
        self.aug_between(probe, plc.at_face(probe), self.stalk_at_face(ctx, face), probe)
    }

    /// Build the augmentation chain map between an indicator-side complex
    /// (alive summands decided at `alive_face`) and the PL value at
    /// `value_face`. For upsets the map goes indicator → PL, for downsets
    /// PL → indicator.
    fn aug_between(
        &self,
        value_face: usize,
        pl_value: VsComplex,
        ind_value: VsComplex,
        alive_face: usize,
    ) -> Result<VsChainMap> {
        let plc = self.augmentation.as_ref().expect("caller checked");
        let poset = self.encoding.poset();
        let e = self.encoding.assign(value_face);
        let mut maps = BTreeMap::new();
        for (&d, summands) in &self.terms {
            let alive: Vec<usize> = summands
                .iter()
                .enumerate()
                .filter(|(_, s)| s.region.contains(alive_face))
                .map(|(i, _)| i)
                .collect();
            let term = plc.complex().term(d);
            let pl_rank = term.map_or(0, |m| m.rank(e));
            let m = match self.kind {
                Kind::Upset => {
                    let mut m = Matrix::zeros(pl_rank, alive.len());
                    for (col, &i) in alive.iter().enumerate() {
                        let s = &summands[i];
                        // A summand alive outside its origin fiber has no
                        // induced component; the zero column records the
                        // pointwise mismatch adjustment creates on
                        // boundary faces (conic stalks never hit this).
                        if let Some(v) = &s.gen {
                            if poset.leq(s.origin, e) {
                                let t = term
                                    .expect("generator into a missing term")
                                    .transition(s.origin, e)?;
                                for (row, val) in
                                    t.mul_vec(v, &self.field).into_iter().enumerate()
                                {
                                    m.set(row, col, val);
                                }
                            }
                        }
                    }
                    m
                }
                Kind::Downset => {
                    let mut m = Matrix::zeros(alive.len(), pl_rank);
                    for (row, &i) in alive.iter().enumerate() {
                        let s = &summands[i];
                        if let Some(w) = &s.gen {
                            if poset.leq(e, s.origin) {
                                let t = term
                                    .expect("generator from a missing term")
                                    .transition(e, s.origin)?;
                                for col in 0..pl_rank {
                                    let mut acc = Rat::from_integer(0.into());
                                    for k in 0..w.len() {
                                        acc += &w[k] * t.get(k, col);
                                    }
                                    m.set(row, col, self.field.reduce(&acc));
                                }
                            }
                        }
                    }
                    m
                }
            };
            maps.insert(d, m);
        }
        Ok(match self.kind {
            Kind::Upset => VsChainMap {
                from: ind_value,
                to: pl_value,
                maps,
            },
            Kind::Downset => VsChainMap {
                from: pl_value,
                to: ind_value,
                maps,
            },
        })
    }

    /// Re-express everything over a finer arrangement.
    pub fn refine(&self, target: Arc<crate::geometry::Arrangement>) -> Result<IndicatorComplex> {
        let encoding = Arc::new(self.encoding.refine(target.clone())?);
        let terms = self
            .terms
            .iter()
            .map(|(&d, summands)| {
                let refined: Result<Vec<IndSummand>> = summands
                    .iter()
                    .map(|s| {
                        Ok(IndSummand {
                            region: s.region.refine(&target)?,
                            origin: s.origin,
                            gen: s.gen.clone(),
                        })
                    })
                    .collect();
                refined.map(|r| (d, r))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let augmentation = match &self.augmentation {
            Some(plc) => Some(PLComplex::new(encoding.clone(), plc.complex().clone())?),
            None => None,
        };
        Ok(IndicatorComplex {
            kind: self.kind,
            encoding,
            terms,
            diffs: self.diffs.clone(),
            augmentation,
            field: self.field,
        })
    }

    /// Conic support: faces whose sample has nonzero stalk homology.
    pub fn conic_support(&self, ctx: &StalkContext) -> FaceSet {
        let arr = self.encoding.arrangement().clone();
        let members: Vec<usize> = (0..arr.num_faces())
            .filter(|&f| !self.stalk_at_face(ctx, f).homology().is_empty())
            .collect();
        FaceSet::new(arr, members).expect("face indices in range")
    }

    /// Verify the augmentation in the chosen semantics, face by face.
    ///
    /// * `alexandrov`: the augmentation is a pointwise quasi-isomorphism at
    ///   every face (the pre-adjustment check).
    /// * `conic`: stalk complexes of the indicator side and the augmented PL
    ///   complex are quasi-isomorphic at every face sample, and the induced
    ///   squares over ⪯-comparable sample pairs commute (the post-adjustment
    ///   check; also true pre-adjustment).
    pub fn verify_resolution(&self, ctx: &StalkContext, semantics: Semantics) -> Result<VerifyOutcome> {
        let mut failures = Vec::new();
        let arr = self.encoding.arrangement();
        for f in 0..arr.num_faces() {
            let chain = match semantics {
                Semantics::Alexandrov => self.aug_at_face(f)?,
                Semantics::Conic => self.aug_at_stalk(ctx, f)?,
            };
            if let Err(e) = chain.validate() {
                failures.push(FaceDiagnostic {
                    face: arr.face(f).sign_string(),
                    detail: format!("augmentation is not a chain map: {e}"),
                });
                continue;
            }
            if !chain.is_quasi_iso() {
                failures.push(FaceDiagnostic {
                    face: arr.face(f).sign_string(),
                    detail: "augmentation is not a quasi-isomorphism".into(),
                });
            }
        }
        if semantics == Semantics::Conic {
            // Functoriality against the PL side over comparable pairs.
            let rel = self.encoding.relation();
            let plc = self
                .augmentation
                .as_ref()
                .ok_or_else(|| Error::Input("indicator complex carries no augmentation".into()))?;
            let augs: Result<Vec<VsChainMap>> = (0..arr.num_faces())
                .map(|f| self.aug_at_stalk(ctx, f))
                .collect();
            let augs = augs?;
            for f in 0..arr.num_faces() {
                for g in 0..arr.num_faces() {
                    if !rel.leq(f, g) {
                        continue;
                    }
                    let pf = ctx.probe_of_face(f);
                    let pg = ctx.probe_of_face(g);
                    let ind_map = self.stalk_map_between_probes(pf, pg);
                    let pl_map = plc.stalk_map_between_faces(pf, pg)?;
                    let ok = match self.kind {
                        Kind::Upset => commutes(&pl_map, &augs[f], &augs[g], &ind_map, &self.field),
                        Kind::Downset => commutes(&augs[g], &pl_map, &ind_map, &augs[f], &self.field),
                    };
                    if !ok {
                        failures.push(FaceDiagnostic {
                            face: arr.face(f).sign_string(),
                            detail: format!(
                                "stalk square to face {} does not commute",
                                arr.face(g).sign_string()
                            ),
                        });
                    }
                }
            }
        }
        Ok(VerifyOutcome {
            ok: failures.is_empty(),
            failures,
        })
    }
}

/// `top ∘ left == right ∘ bottom` degreewise.
fn commutes(
    top: &VsChainMap,
    left: &VsChainMap,
    right: &VsChainMap,
    bottom: &VsChainMap,
    field: &Field,
) -> bool {
    let degrees: std::collections::BTreeSet<i32> = left
        .from
        .dims
        .keys()
        .chain(top.to.dims.keys())
        .copied()
        .collect();
    degrees.iter().all(|&d| {
        let lhs = top.map(d).mul(&left.map(d), field);
        let rhs = right.map(d).mul(&bottom.map(d), field);
        lhs == rhs
    })
}

/// Sub-complex of the summands passing the predicate, with the restricted
/// scalar differentials.
pub(crate) fn regions_complex_at(
    field: &Field,
    terms: &BTreeMap<i32, Vec<IndSummand>>,
    diffs: &BTreeMap<i32, Matrix>,
    alive: impl Fn(&IndSummand) -> bool,
) -> VsComplex {
    let mut dims = BTreeMap::new();
    let mut alive_idx: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (&d, summands) in terms {
        let idx: Vec<usize> = summands
            .iter()
            .enumerate()
            .filter(|(_, s)| alive(s))
            .map(|(i, _)| i)
            .collect();
        dims.insert(d, idx.len());
        alive_idx.insert(d, idx);
    }
    let mut sub_diffs = BTreeMap::new();
    for (&d, lam) in diffs {
        let src = alive_idx.get(&d).cloned().unwrap_or_default();
        let tgt = alive_idx.get(&(d - 1)).cloned().unwrap_or_default();
        sub_diffs.insert(d, lam.select(&tgt, &src));
    }
    VsComplex {
        field: *field,
        dims,
        diffs: sub_diffs,
    }
}

/// Verification semantics: pointwise values or conic stalks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Alexandrov,
    Conic,
}

impl Semantics {
    pub fn parse(s: &str) -> Result<Semantics> {
        match s {
            "alexandrov" => Ok(Semantics::Alexandrov),
            "conic" => Ok(Semantics::Conic),
            _ => Err(Error::Input(format!("unknown semantics `{s}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct IndSummandJson {
    pub region: FaceSetJson,
    pub origin: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gen: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct IndicatorComplexJson {
    pub kind: Kind,
    pub terms: BTreeMap<String, Vec<IndSummandJson>>,
    pub differentials: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<PLComplexJson>,
}

impl IndicatorComplex {
    pub fn to_json(&self) -> IndicatorComplexJson {
        let poset = self.encoding.poset();
        let terms = self
            .terms
            .iter()
            .map(|(d, summands)| {
                (
                    d.to_string(),
                    summands
                        .iter()
                        .map(|s| IndSummandJson {
                            region: s.region.to_json(),
                            origin: poset.name(s.origin).to_string(),
                            gen: s.gen.as_ref().map(|v| format_vec(v)),
                        })
                        .collect(),
                )
            })
            .collect();
        let differentials = self
            .diffs
            .iter()
            .map(|(d, m)| (d.to_string(), m.to_strings()))
            .collect();
        IndicatorComplexJson {
            kind: self.kind,
            terms,
            differentials,
            augmentation: self.augmentation.as_ref().map(|p| p.to_json()),
        }
    }

    pub fn from_json(j: &IndicatorComplexJson, field: Field) -> Result<IndicatorComplex> {
        let augmentation = j
            .augmentation
            .as_ref()
            .map(|p| PLComplex::from_json(p, field))
            .transpose()?;
        let encoding = match &augmentation {
            Some(plc) => plc.encoding().clone(),
            None => {
                return Err(Error::Input(
                    "indicator complex JSON requires its augmentation context".into(),
                ))
            }
        };
        let arr = encoding.arrangement();
        let poset = encoding.poset();
        let mut terms = BTreeMap::new();
        for (d, summands) in &j.terms {
            let deg: i32 = d
                .parse()
                .map_err(|_| Error::Input(format!("invalid degree `{d}`")))?;
            let parsed: Result<Vec<IndSummand>> = summands
                .iter()
                .map(|s| {
                    Ok(IndSummand {
                        region: FaceSet::from_json(&s.region, arr)?,
                        origin: poset
                            .index_of(&s.origin)
                            .ok_or_else(|| Error::Input(format!("unknown element `{}`", s.origin)))?,
                        gen: s.gen.as_ref().map(|v| parse_vec(v)).transpose()?,
                    })
                })
                .collect();
            terms.insert(deg, parsed?);
        }
        let mut diffs = BTreeMap::new();
        for (d, rows) in &j.differentials {
            let deg: i32 = d
                .parse()
                .map_err(|_| Error::Input(format!("invalid degree `{d}`")))?;
            let shape = (
                terms.get(&(deg - 1)).map_or(0, Vec::len),
                terms.get(&deg).map_or(0, Vec::len),
            );
            diffs.insert(deg, Matrix::from_strings(rows, shape, &field)?);
        }
        let out = IndicatorComplex {
            kind: j.kind,
            encoding,
            terms,
            diffs,
            augmentation,
            field,
        };
        out.validate()?;
        Ok(out)
    }

    /// Assemble from parts (used by clipping and tests). Validation is the
    /// caller's business: clipped regions are intersections, not upsets.
    pub(crate) fn from_parts(
        kind: Kind,
        encoding: Arc<Encoding>,
        terms: BTreeMap<i32, Vec<IndSummand>>,
        diffs: BTreeMap<i32, Matrix>,
        augmentation: Option<PLComplex>,
        field: Field,
    ) -> IndicatorComplex {
        IndicatorComplex {
            kind,
            encoding,
            terms,
            diffs,
            augmentation,
            field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PosetComplex;
    use crate::geometry::{Arrangement, Cone};
    use crate::matrix::Matrix;
    use crate::module::PosetModule;
    use crate::poset::FinitePoset;
    use crate::resolution::{downset_resolution, upset_resolution};
    use crate::scalar::rat;

    /// ℝ with walls at 0 and 1, cone [0, ∞).
    fn line_setup() -> (Arc<Encoding>, Arc<PosetModule>, StalkContext) {
        let arr = Arc::new(
            Arrangement::build(1, &[(vec![rat(1)], rat(0)), (vec![rat(1)], rat(1))]).unwrap(),
        );
        let cone = Arc::new(Cone::from_rays(1, vec![vec![rat(1)]]).unwrap());
        // Five faces in x-order become a chain poset.
        let n = arr.num_faces();
        assert_eq!(n, 5);
        let poset = Arc::new(FinitePoset::chain(5));
        // Faces sorted lexicographically by sign vector: --, 0-, +-, +0, ++;
        // that is exactly the x-order.
        let assign: Vec<usize> = (0..n).collect();
        let enc = Arc::new(Encoding::new(arr.clone(), cone.clone(), poset.clone(), assign).unwrap());
        enc.ensure_valid().unwrap();
        // M = k[[0,1)]: rank 1 on faces 0- and +-, identity between them.
        let ranks = vec![0, 1, 1, 0, 0];
        let edges: Vec<Matrix> = poset
            .hasse()
            .iter()
            .map(|&(p, q)| {
                if ranks[p] == 1 && ranks[q] == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(ranks[q], ranks[p])
                }
            })
            .collect();
        let m = Arc::new(PosetModule::new(poset, Field::Rational, ranks, edges).unwrap());
        let ctx = StalkContext::new(arr, cone).unwrap();
        (enc, m, ctx)
    }

    #[test]
    fn interval_upset_resolution_pulls_back_and_verifies() {
        let (enc, m, ctx) = line_setup();
        let res = upset_resolution(&m).unwrap();
        let ind = pull_back(&res, &enc).unwrap();
        assert_eq!(ind.total_summands(), 2);
        // Summands: k[[0,∞)] in degree 0 and k[[1,∞)] in degree 1.
        let deg0 = &ind.terms()[&0];
        assert_eq!(deg0.len(), 1);
        assert_eq!(deg0[0].region.len(), 4); // faces 0-, +-, +0, ++
        let deg1 = &ind.terms()[&1];
        assert_eq!(deg1[0].region.len(), 2); // faces +0, ++

        let alex = ind.verify_resolution(&ctx, Semantics::Alexandrov).unwrap();
        assert!(alex.ok, "{:?}", alex.failures);
        let conic = ind.verify_resolution(&ctx, Semantics::Conic).unwrap();
        assert!(conic.ok, "{:?}", conic.failures);

        // Adjustment opens the upsets: (0,∞) and (1,∞).
        let adj = ind.adjust_topology();
        assert_eq!(adj.terms()[&0][0].region.len(), 3);
        assert_eq!(adj.terms()[&1][0].region.len(), 1);
        // Pointwise the adjusted complex is wrong on the boundary faces…
        let alex_adj = adj.verify_resolution(&ctx, Semantics::Alexandrov).unwrap();
        assert!(!alex_adj.ok);
        // …but conically nothing changed.
        let conic_adj = adj.verify_resolution(&ctx, Semantics::Conic).unwrap();
        assert!(conic_adj.ok, "{:?}", conic_adj.failures);
        for f in 0..enc.arrangement().num_faces() {
            assert_eq!(
                ind.stalk_at_face(&ctx, f).homology(),
                adj.stalk_at_face(&ctx, f).homology()
            );
        }
    }

    #[test]
    fn interval_downset_resolution_verifies_both_ways() {
        let (enc, m, ctx) = line_setup();
        let res = downset_resolution(&m).unwrap();
        let ind = pull_back(&res, &enc).unwrap();
        assert_eq!(ind.total_summands(), 2);
        // Summands: k[(−∞,1)] in degree 0, k[(−∞,0)] in degree −1.
        assert_eq!(ind.terms()[&0][0].region.len(), 3);
        assert_eq!(ind.terms()[&-1][0].region.len(), 1);
        assert!(ind.verify_resolution(&ctx, Semantics::Alexandrov).unwrap().ok);
        assert!(ind.verify_resolution(&ctx, Semantics::Conic).unwrap().ok);
        let adj = ind.adjust_topology();
        // Closures: (−∞,1] and (−∞,0].
        assert_eq!(adj.terms()[&0][0].region.len(), 4);
        assert_eq!(adj.terms()[&-1][0].region.len(), 2);
        assert!(!adj.verify_resolution(&ctx, Semantics::Alexandrov).unwrap().ok);
        let conic = adj.verify_resolution(&ctx, Semantics::Conic).unwrap();
        assert!(conic.ok, "{:?}", conic.failures);
    }

    #[test]
    fn corrupted_scalar_is_caught() {
        let (enc, m, ctx) = line_setup();
        let res = upset_resolution(&m).unwrap();
        let ind = pull_back(&res, &enc).unwrap();
        let mut bad_diffs = ind.diffs().clone();
        let lam = bad_diffs.get_mut(&1).unwrap();
        assert!(!lam.get(0, 0).eq(&rat(0)));
        lam.set(0, 0, rat(0));
        let bad = IndicatorComplex::from_parts(
            ind.kind(),
            ind.encoding().clone(),
            ind.terms().clone(),
            bad_diffs,
            ind.augmentation().cloned(),
            ind.field(),
        );
        let out = bad.verify_resolution(&ctx, Semantics::Alexandrov).unwrap();
        assert!(!out.ok);
        assert!(!out.failures.is_empty());
    }

    #[test]
    fn zero_complex_resolves_zero() {
        let (enc, _, ctx) = line_setup();
        let zero = Arc::new(PosetModule::zero(enc.poset().clone(), Field::Rational));
        let res = upset_resolution(&zero).unwrap();
        let ind = pull_back(&res, &enc).unwrap();
        assert_eq!(ind.total_summands(), 0);
        assert!(ind.verify_resolution(&ctx, Semantics::Alexandrov).unwrap().ok);
        assert!(ind.verify_resolution(&ctx, Semantics::Conic).unwrap().ok);
        let _ = PosetComplex::empty(enc.poset().clone(), Field::Rational);
    }
}
