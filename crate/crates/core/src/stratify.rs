//! Conic stratification of compact supports and the bounded constant-piece
//! decomposition.
//!
//! Stratification: resolve by upsets, pull back, open the summands, and take
//! the common refinement of the membership patterns of the resulting open
//! upsets. Each pattern cell is an open upset intersected with a closed
//! downset — locally closed in the conic topology, with the two witnesses
//! kept explicitly — and conic-stalk homology is constant on it. Cells with
//! nonvanishing homology form the stratification.
//!
//! Clipping: a cone-adapted bounded region `B = (p₀ + Q₊°) ∩ (p₁ − Q₊)`
//! contains the conic support; intersecting every summand with `B` produces
//! bounded, conic-locally-closed pieces without changing any conic stalk.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::encoding::PLComplex;
use crate::error::{Error, Result};
use crate::geometry::arrangement::Arrangement;
use crate::geometry::feas::coord_range;
use crate::geometry::region::{FaceSet, FaceSetJson};
use crate::indicator::{pull_back, IndSummand, IndicatorComplex, Kind};
use crate::resolution::resolve_complex;
use crate::scalar::{add_vec, dot, format_vec, rat, scale_vec, sub_vec, Rat};
use crate::stalk::StalkContext;

/// One stratum: a pattern cell with its witnesses and homology table.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub region: FaceSet,
    pub witness_upset: FaceSet,
    pub witness_downset: FaceSet,
    pub homology: BTreeMap<i32, usize>,
}

#[derive(Clone, Debug)]
pub struct ConicStratification {
    strata: Vec<Stratum>,
    source: PLComplex,
    ctx: StalkContext,
}

impl ConicStratification {
    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn source(&self) -> &PLComplex {
        &self.source
    }

    pub fn context(&self) -> &StalkContext {
        &self.ctx
    }
}

/// Subordinate conic stratification of the support of a compactly supported
/// PL complex.
pub fn conic_stratification(x: &PLComplex) -> Result<ConicStratification> {
    x.validate()?;
    if !x.is_compactly_supported()? {
        return Err(Error::NonCompactSupport);
    }
    let res = resolve_complex(x.complex(), Kind::Upset)?;
    let ind = pull_back(&res, x.encoding())?;
    let adj = ind.adjust_topology();
    let upsets: Vec<FaceSet> = adj
        .distinct_regions()
        .into_iter()
        .map(|r| {
            debug_assert!(r.is_open());
            r
        })
        .collect();

    let arr = x.encoding().arrangement().clone();
    let cone = x.encoding().cone().clone();
    let ctx = StalkContext::new(arr.clone(), cone)?;

    // Group faces by their membership pattern among the open upsets.
    let mut cells: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for f in 0..arr.num_faces() {
        let pattern: Vec<bool> = upsets.iter().map(|u| u.contains(f)).collect();
        cells.entry(pattern).or_default().push(f);
    }

    let mut strata = Vec::new();
    for (pattern, members) in cells {
        let mut witness_upset = FaceSet::full(arr.clone());
        let mut witness_downset = FaceSet::full(arr.clone());
        for (u, &inside) in upsets.iter().zip(&pattern) {
            if inside {
                witness_upset = witness_upset.intersect(u);
            } else {
                witness_downset = witness_downset.intersect(&u.complement());
            }
        }
        let region = FaceSet::new(arr.clone(), members.iter().copied())?;
        let mut homology: Option<BTreeMap<i32, usize>> = None;
        for &f in &members {
            let h = x.conic_stalk_at_face(&ctx, f).homology();
            match &homology {
                None => homology = Some(h),
                Some(prev) => {
                    if prev != &h {
                        return Err(Error::Internal(
                            "stalk homology is not constant on a pattern cell".into(),
                        ));
                    }
                }
            }
        }
        let homology = homology.unwrap_or_default();
        if homology.is_empty() {
            continue;
        }
        strata.push(Stratum {
            region,
            witness_upset,
            witness_downset,
            homology,
        });
    }
    strata.sort_by_key(|s| {
        s.region
            .members()
            .iter()
            .next()
            .map(|&f| arr.face(f).sign_string())
            .unwrap_or_default()
    });
    Ok(ConicStratification {
        strata,
        source: x.clone(),
        ctx,
    })
}

/// Independent re-check of every stratification invariant; diagnostics on
/// the first violation of each kind.
pub fn verify_stratification(s: &ConicStratification) -> (bool, Vec<String>) {
    let mut problems = Vec::new();
    let rel = s.source.encoding().relation();
    let arr = s.source.encoding().arrangement();

    for (i, st) in s.strata.iter().enumerate() {
        if st.region != st.witness_upset.intersect(&st.witness_downset) {
            problems.push(format!("stratum {i}: region is not the witness intersection"));
        }
        if !rel.is_upset(&st.witness_upset) || !st.witness_upset.is_open() {
            problems.push(format!("stratum {i}: upset witness is not an open upset"));
        }
        if !rel.is_downset(&st.witness_downset) || !st.witness_downset.is_closed() {
            problems.push(format!("stratum {i}: downset witness is not a closed downset"));
        }
        if st.homology.is_empty() {
            problems.push(format!("stratum {i}: vanishing homology"));
        }
        for &f in st.region.members() {
            let h = s.source.conic_stalk_at_face(&s.ctx, f).homology();
            if h != st.homology {
                problems.push(format!(
                    "stratum {i}: stalk homology differs at face {}",
                    arr.face(f).sign_string()
                ));
                break;
            }
        }
        // Local constancy: comparable sample pairs inside the stratum induce
        // isomorphisms on stalk homology in every degree.
        'pairs: for &f in st.region.members() {
            for &g in st.region.members() {
                if !rel.leq(f, g) {
                    continue;
                }
                let map = match s
                    .source
                    .stalk_map_between_faces(s.ctx.probe_of_face(f), s.ctx.probe_of_face(g))
                {
                    Ok(m) => m,
                    Err(e) => {
                        problems.push(format!("stratum {i}: stalk map failed: {e}"));
                        break 'pairs;
                    }
                };
                if map.homology_iso_degrees().values().any(|ok| !ok) {
                    problems.push(format!(
                        "stratum {i}: stalk map {} → {} is not an isomorphism on homology",
                        arr.face(f).sign_string(),
                        arr.face(g).sign_string()
                    ));
                    break 'pairs;
                }
            }
        }
    }

    for i in 0..s.strata.len() {
        for j in (i + 1)..s.strata.len() {
            if !s.strata[i]
                .region
                .intersect(&s.strata[j].region)
                .is_empty()
            {
                problems.push(format!("strata {i} and {j} overlap"));
            }
        }
    }

    // The conic support is covered by the closures of the strata.
    let mut closures = FaceSet::empty(arr.clone());
    for st in &s.strata {
        closures = closures.union(&st.region.closure());
    }
    let support = s.source.conic_support(&s.ctx);
    if !support.is_subset(&closures) {
        problems.push("conic support is not covered by the stratum closures".into());
    }

    (problems.is_empty(), problems)
}

/// One bounded, conic-locally-closed piece of a clipped complex.
#[derive(Clone, Debug)]
pub struct ClipPiece {
    pub degree: i32,
    pub region: FaceSet,
    pub witness_upset: FaceSet,
    pub witness_downset: FaceSet,
}

#[derive(Clone, Debug)]
pub struct ClipOutcome {
    pub pieces: Vec<ClipPiece>,
    /// The clipped complex over the extended arrangement (terms are bounded
    /// locally closed regions, no longer upsets).
    pub clipped: IndicatorComplex,
    /// The unclipped complex refined to the same arrangement, for stalkwise
    /// comparison.
    pub refined: IndicatorComplex,
    pub lower: Vec<Rat>,
    pub upper: Vec<Rat>,
}

/// Clip an adjusted upset indicator complex with augmentation to a bounded
/// region `B = (p₀ + Q₊°) ∩ (p₁ − Q₊)` containing its conic support.
pub fn clip_bounded(x: &IndicatorComplex) -> Result<ClipOutcome> {
    if x.kind() != Kind::Upset {
        return Err(Error::Input("clipping expects an upset indicator complex".into()));
    }
    let plc = x
        .augmentation()
        .ok_or_else(|| Error::Input("clipping requires the augmented source".into()))?;
    if !plc.is_compactly_supported()? {
        return Err(Error::NonCompactSupport);
    }
    let enc = x.encoding().clone();
    let arr = enc.arrangement().clone();
    let cone = enc.cone().clone();
    let dim = arr.dim();
    let ctx = StalkContext::new(arr.clone(), cone.clone())?;
    let support = x.conic_support(&ctx);

    // Bounding box of the support (floor/ceil ± 1); the origin cell if the
    // support is empty.
    let mut mins = vec![rat(-1); dim];
    let mut maxs = vec![rat(1); dim];
    let mut first = true;
    for &f in support.members() {
        let cs = arr.face_constraints(f);
        for i in 0..dim {
            let (lo, hi) = coord_range(&cs, dim, i)?;
            let (lo, hi) = match (lo, hi) {
                (Some(l), Some(h)) => (l, h),
                _ => return Err(Error::NonCompactSupport),
            };
            let lo = lo.floor() - rat(1);
            let hi = hi.ceil() + rat(1);
            if first {
                mins[i] = lo.clone();
                maxs[i] = hi.clone();
            }
            if lo < mins[i] {
                mins[i] = lo;
            }
            if hi > maxs[i] {
                maxs[i] = hi;
            }
        }
        first = false;
    }

    // Push the corners along ±(interior ray) until the box sits inside B.
    let g = ctx.interior_ray().to_vec();
    let corners: Vec<Vec<Rat>> = (0..(1usize << dim))
        .map(|mask| {
            (0..dim)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        maxs[i].clone()
                    } else {
                        mins[i].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut t = rat(0);
    let (lower, upper) = loop {
        let p0 = sub_vec(&mins, &scale_vec(&t, &g));
        let p1 = add_vec(&maxs, &scale_vec(&t, &g));
        let ok = corners.iter().all(|c| {
            cone.contains_interior(&sub_vec(c, &p0)) && cone.contains(&sub_vec(&p1, c))
        });
        if ok {
            break (p0, p1);
        }
        t += rat(1);
        if t > rat(1000) {
            return Err(Error::Internal("clip bound search did not converge".into()));
        }
    };

    // Extend the arrangement by the facet hyperplanes of B.
    let mut hyperplanes: Vec<(Vec<Rat>, Rat)> = arr
        .hyperplanes()
        .iter()
        .map(|h| (h.normal().to_vec(), h.offset().clone()))
        .collect();
    for h in cone.hrep() {
        hyperplanes.push((h.normal().to_vec(), dot(h.normal(), &lower)));
        hyperplanes.push((h.normal().to_vec(), dot(h.normal(), &upper)));
    }
    let ext = Arc::new(Arrangement::build(dim, &hyperplanes)?);

    let refined = x.refine(ext.clone())?;
    let b_open_up = FaceSet::from_predicate(ext.clone(), |p| {
        cone.hrep()
            .iter()
            .all(|h| dot(h.normal(), p) > dot(h.normal(), &lower))
    });
    let b_closed_down = FaceSet::from_predicate(ext.clone(), |p| {
        cone.hrep()
            .iter()
            .all(|h| dot(h.normal(), p) <= dot(h.normal(), &upper))
    });
    let b = b_open_up.intersect(&b_closed_down);

    let mut pieces = Vec::new();
    let mut clipped_terms: BTreeMap<i32, Vec<IndSummand>> = BTreeMap::new();
    for (&d, summands) in refined.terms() {
        let mut clipped_row = Vec::with_capacity(summands.len());
        for s in summands {
            let region = s.region.intersect(&b);
            if !region.is_empty() {
                pieces.push(ClipPiece {
                    degree: d,
                    region: region.clone(),
                    witness_upset: s.region.intersect(&b_open_up),
                    witness_downset: b_closed_down.clone(),
                });
            }
            clipped_row.push(IndSummand {
                region,
                origin: s.origin,
                gen: s.gen.clone(),
            });
        }
        clipped_terms.insert(d, clipped_row);
    }
    let clipped = IndicatorComplex::from_parts(
        Kind::Upset,
        refined.encoding().clone(),
        clipped_terms,
        refined.diffs().clone(),
        refined.augmentation().cloned(),
        refined.field(),
    );
    Ok(ClipOutcome {
        pieces,
        clipped,
        refined,
        lower,
        upper,
    })
}

/// Independent re-check of the clipping invariants.
pub fn verify_clip(outcome: &ClipOutcome) -> Result<(bool, Vec<String>)> {
    let mut problems = Vec::new();
    let enc = outcome.clipped.encoding();
    let rel = enc.relation();
    let ctx = StalkContext::new(enc.arrangement().clone(), enc.cone().clone())?;
    for (i, piece) in outcome.pieces.iter().enumerate() {
        if !piece.region.is_bounded()? {
            problems.push(format!("piece {i}: region is unbounded"));
        }
        if piece.region != piece.witness_upset.intersect(&piece.witness_downset) {
            problems.push(format!("piece {i}: region is not the witness intersection"));
        }
        if !rel.is_upset(&piece.witness_upset) || !piece.witness_upset.is_open() {
            problems.push(format!("piece {i}: upset witness is not an open upset"));
        }
        if !rel.is_downset(&piece.witness_downset) || !piece.witness_downset.is_closed() {
            problems.push(format!("piece {i}: downset witness is not a closed downset"));
        }
    }
    for f in 0..enc.arrangement().num_faces() {
        let a = outcome.clipped.stalk_at_face(&ctx, f).homology();
        let b = outcome.refined.stalk_at_face(&ctx, f).homology();
        if a != b {
            problems.push(format!(
                "clipping changed stalk homology at face {}",
                enc.arrangement().face(f).sign_string()
            ));
            break;
        }
    }
    Ok((problems.is_empty(), problems))
}

fn format_homology(h: &BTreeMap<i32, usize>) -> BTreeMap<String, usize> {
    h.iter().map(|(d, r)| (d.to_string(), *r)).collect()
}

#[derive(Serialize, Deserialize)]
pub struct StratumJson {
    pub region: FaceSetJson,
    pub witness_upset: FaceSetJson,
    pub witness_downset: FaceSetJson,
    pub homology: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
pub struct StratificationJson {
    pub strata: Vec<StratumJson>,
    pub support: FaceSetJson,
}

impl ConicStratification {
    pub fn to_json(&self) -> StratificationJson {
        StratificationJson {
            strata: self
                .strata
                .iter()
                .map(|s| StratumJson {
                    region: s.region.to_json(),
                    witness_upset: s.witness_upset.to_json(),
                    witness_downset: s.witness_downset.to_json(),
                    homology: format_homology(&s.homology),
                })
                .collect(),
            support: self.source.conic_support(&self.ctx).to_json(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct ClipPieceJson {
    pub degree: i32,
    pub region: FaceSetJson,
    pub witness_upset: FaceSetJson,
    pub witness_downset: FaceSetJson,
}

#[derive(Serialize, Deserialize)]
pub struct ClipJson {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub pieces: Vec<ClipPieceJson>,
}

impl ClipOutcome {
    pub fn to_json(&self) -> ClipJson {
        ClipJson {
            lower: format_vec(&self.lower),
            upper: format_vec(&self.upper),
            pieces: self
                .pieces
                .iter()
                .map(|p| ClipPieceJson {
                    degree: p.degree,
                    region: p.region.to_json(),
                    witness_upset: p.witness_upset.to_json(),
                    witness_downset: p.witness_downset.to_json(),
                })
                .collect(),
        }
    }
}
