//! Deterministic sample data: seeded random arrangements, cones, regions,
//! encodings, modules, complexes and morphisms, plus the two worked
//! examples used across the test suites and benchmarks.
//!
//! Everything draws from a caller-provided `ChaCha8Rng`, so suites are
//! reproducible from their seeds.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::PosetComplex;
use crate::encoding::{Encoding, PLComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::arrangement::Arrangement;
use crate::geometry::compare::Comparability;
use crate::geometry::cone::Cone;
use crate::geometry::region::FaceSet;
use crate::matrix::Matrix;
use crate::module::{ModuleHom, PosetModule};
use crate::poset::FinitePoset;
use crate::scalar::{rat, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-2..=2))
}

fn nonzero_small_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Up to `max` random affine hyperplanes in the plane with small integer
/// data (at least one).
pub fn random_hyperplanes(rng: &mut ChaCha8Rng, max: usize) -> Vec<(Vec<Rat>, Rat)> {
    let count = rng.gen_range(1..=max);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let normal = vec![small_rat(rng), small_rat(rng)];
        if normal.iter().all(num_traits::Zero::is_zero) {
            continue;
        }
        out.push((normal, small_rat(rng)));
    }
    out
}

/// A random pointed full cone in the plane: the orthant or a wedge bounded
/// by two independent rays near it.
pub fn random_cone2(rng: &mut ChaCha8Rng) -> Cone {
    if rng.gen_bool(0.5) {
        return Cone::orthant(2);
    }
    let k1 = rat(rng.gen_range(0..=2));
    let k2 = rat(rng.gen_range(0..=2));
    let rays = vec![vec![rat(1), k1], vec![k2, rat(1)]];
    Cone::from_rays(2, rays).unwrap_or_else(|_| Cone::orthant(2))
}

/// Random upset of the face comparability relation: a random seed set,
/// closed upward.
pub fn random_upset(rng: &mut ChaCha8Rng, rel: &Comparability) -> FaceSet {
    let arr = rel.arrangement().clone();
    let n = arr.num_faces();
    let members: Vec<usize> = (0..n)
        .filter(|_| rng.gen_bool(0.3))
        .collect();
    let closed: Vec<usize> = (0..n)
        .filter(|&g| members.iter().any(|&f| rel.leq(f, g)))
        .collect();
    FaceSet::new(arr, closed).expect("face indices in range")
}

pub fn random_downset(rng: &mut ChaCha8Rng, rel: &Comparability) -> FaceSet {
    let arr = rel.arrangement().clone();
    let n = arr.num_faces();
    let members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    let closed: Vec<usize> = (0..n)
        .filter(|&g| members.iter().any(|&f| rel.leq(g, f)))
        .collect();
    FaceSet::new(arr, closed).expect("face indices in range")
}

/// Encoding from the membership tuples of up to three random upsets: the
/// poset of occurring tuples under componentwise order (at most 8 elements),
/// with the tuple assignment. Order-preserving by construction.
pub fn random_encoding(rng: &mut ChaCha8Rng, rel: &Arc<Comparability>) -> Result<Arc<Encoding>> {
    let arr = rel.arrangement().clone();
    let k = rng.gen_range(1..=3usize);
    let upsets: Vec<FaceSet> = (0..k).map(|_| random_upset(rng, rel)).collect();
    let tuple_of = |f: usize| -> Vec<bool> { upsets.iter().map(|u| u.contains(f)).collect() };
    let mut tuples: Vec<Vec<bool>> = (0..arr.num_faces()).map(tuple_of).collect();
    tuples.sort();
    tuples.dedup();
    let name_of = |t: &[bool]| -> String {
        t.iter().map(|&b| if b { '1' } else { '0' }).collect()
    };
    let elements: Vec<String> = tuples.iter().map(|t| name_of(t)).collect();
    let mut hasse = Vec::new();
    for (i, a) in tuples.iter().enumerate() {
        for (j, b) in tuples.iter().enumerate() {
            if i != j && a.iter().zip(b).all(|(x, y)| y >= x) {
                hasse.push((i, j));
            }
        }
    }
    let poset = Arc::new(FinitePoset::new(elements, hasse)?);
    let assign: Vec<usize> = (0..arr.num_faces())
        .map(|f| {
            let t = tuple_of(f);
            tuples.iter().position(|u| u == &t).expect("tuple recorded")
        })
        .collect();
    let enc = Arc::new(Encoding::with_relation(rel.clone(), poset, assign)?);
    enc.ensure_valid()?;
    Ok(enc)
}

/// A random poset on at most `max` elements: a random DAG on index order.
pub fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> Arc<FinitePoset> {
    let n = rng.gen_range(1..=max);
    let elements: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut hasse = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                hasse.push((i, j));
            }
        }
    }
    Arc::new(FinitePoset::new(elements, hasse).expect("index-ordered edges are acyclic"))
}

/// Basis of the space of homomorphisms `M → N`, by exact linear algebra on
/// the commutation constraints.
pub fn hom_space_basis(m: &Arc<PosetModule>, n: &Arc<PosetModule>) -> Vec<ModuleHom> {
    let poset = m.poset().clone();
    let field = m.field();
    // Variables: entries of each component, element by element.
    let mut offsets = Vec::with_capacity(poset.len());
    let mut total = 0usize;
    for p in 0..poset.len() {
        offsets.push(total);
        total += n.rank(p) * m.rank(p);
    }
    if total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (e, &(p, q)) in poset.hasse().iter().enumerate() {
        let tm = m.edge_map(e);
        let tn = n.edge_map(e);
        // f_q · T_M = T_N · f_p, entry (r, c): r < rank_N(q), c < rank_M(p).
        for r in 0..n.rank(q) {
            for c in 0..m.rank(p) {
                let mut row = vec![Rat::from_integer(0.into()); total];
                for k in 0..m.rank(q) {
                    // f_q[r, k] * T_M[k, c]
                    let idx = offsets[q] + r * m.rank(q) + k;
                    row[idx] = field.add(&row[idx], tm.get(k, c));
                }
                for k in 0..n.rank(p) {
                    // − T_N[r, k] * f_p[k, c]
                    let idx = offsets[p] + k * m.rank(p) + c;
                    row[idx] = field.sub(&row[idx], tn.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, total)
    } else {
        Matrix::from_rows(rows)
    };
    let kernel = system.kernel_basis(&field);
    (0..kernel.cols())
        .map(|j| {
            let v = kernel.col(j);
            let components: Vec<Matrix> = (0..poset.len())
                .map(|p| {
                    let mut c = Matrix::zeros(n.rank(p), m.rank(p));
                    for r in 0..n.rank(p) {
                        for cc in 0..m.rank(p) {
                            c.set(r, cc, v[offsets[p] + r * m.rank(p) + cc].clone());
                        }
                    }
                    c
                })
                .collect();
            ModuleHom::new(m.clone(), n.clone(), components).expect("kernel vector is a hom")
        })
        .collect()
}

/// A random homomorphism: a small random combination of the hom-space basis.
pub fn random_hom(
    rng: &mut ChaCha8Rng,
    m: &Arc<PosetModule>,
    n: &Arc<PosetModule>,
) -> Result<ModuleHom> {
    let basis = hom_space_basis(m, n);
    let field = m.field();
    let mut out = ModuleHom::zero(m.clone(), n.clone())?;
    for b in &basis {
        let c = small_rat(rng);
        if num_traits::Zero::is_zero(&c) {
            continue;
        }
        let scaled: Vec<Matrix> = (0..m.poset().len())
            .map(|p| b.at(p).scale(&c, &field))
            .collect();
        let scaled = ModuleHom::new(m.clone(), n.clone(), scaled)?;
        let sum: Vec<Matrix> = (0..m.poset().len())
            .map(|p| out.at(p).add(scaled.at(p), &field))
            .collect();
        out = ModuleHom::new(m.clone(), n.clone(), sum)?;
    }
    Ok(out)
}

/// Formal sum of random principal upsets realized as a module.
fn random_projective(
    rng: &mut ChaCha8Rng,
    poset: &Arc<FinitePoset>,
    field: Field,
    max_summands: usize,
) -> (Vec<usize>, Arc<PosetModule>) {
    let count = rng.gen_range(1..=max_summands);
    let elems: Vec<usize> = (0..count).map(|_| rng.gen_range(0..poset.len())).collect();
    let ranks: Vec<usize> = (0..poset.len())
        .map(|q| elems.iter().filter(|&&p| poset.leq(p, q)).count())
        .collect();
    let edges: Vec<Matrix> = poset
        .hasse()
        .iter()
        .map(|&(p, q)| {
            let src: Vec<usize> = elems
                .iter()
                .enumerate()
                .filter(|(_, &e)| poset.leq(e, p))
                .map(|(i, _)| i)
                .collect();
            let tgt: Vec<usize> = elems
                .iter()
                .enumerate()
                .filter(|(_, &e)| poset.leq(e, q))
                .map(|(i, _)| i)
                .collect();
            let mut m = Matrix::zeros(tgt.len(), src.len());
            for (col, &i) in src.iter().enumerate() {
                if let Some(row) = tgt.iter().position(|&j| j == i) {
                    m.set(row, col, rat(1));
                }
            }
            m
        })
        .collect();
    let module = Arc::new(
        PosetModule::new(poset.clone(), field, ranks, edges).expect("projective is well-formed"),
    );
    (elems, module)
}

/// A random valid module with small ranks: the cokernel of a random
/// connected map between sums of principal upsets.
pub fn random_module(
    rng: &mut ChaCha8Rng,
    poset: &Arc<FinitePoset>,
    field: Field,
) -> Result<Arc<PosetModule>> {
    let (src_elems, src) = random_projective(rng, poset, field, 3);
    let (tgt_elems, tgt) = random_projective(rng, poset, field, 3);
    // Connected scalar matrix: entries only between nested principals.
    let mut lam = Matrix::zeros(tgt_elems.len(), src_elems.len());
    for (t, &pt) in tgt_elems.iter().enumerate() {
        for (s, &ps) in src_elems.iter().enumerate() {
            if poset.leq(pt, ps) && rng.gen_bool(0.5) {
                lam.set(t, s, nonzero_small_rat(rng));
            }
        }
    }
    let components: Vec<Matrix> = (0..poset.len())
        .map(|q| {
            let alive_s: Vec<usize> = src_elems
                .iter()
                .enumerate()
                .filter(|(_, &e)| poset.leq(e, q))
                .map(|(i, _)| i)
                .collect();
            let alive_t: Vec<usize> = tgt_elems
                .iter()
                .enumerate()
                .filter(|(_, &e)| poset.leq(e, q))
                .map(|(i, _)| i)
                .collect();
            lam.select(&alive_t, &alive_s)
        })
        .collect();
    let hom = ModuleHom::new(src, tgt, components)?;
    let (coker, _) = hom.cokernel()?;
    Ok(coker)
}

/// A short exact sequence 0 → A → B → C → 0 of modules over the poset:
/// A is the image of a random map into a random module B, C the cokernel.
pub fn random_ses(
    rng: &mut ChaCha8Rng,
    poset: &Arc<FinitePoset>,
    field: Field,
) -> Result<(ModuleHom, ModuleHom)> {
    let b = random_module(rng, poset, field)?;
    let (_, proj_src) = random_projective(rng, poset, field, 2);
    let f = random_hom(rng, &proj_src, &b)?;
    let (_, incl) = f.image()?;
    let (_, proj) = incl.cokernel()?;
    Ok((incl, proj))
}

/// A random bounded complex: either a module in a random degree, a two-term
/// complex along a random hom, or the cone of a random chain map between
/// two-term complexes (three terms).
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    poset: &Arc<FinitePoset>,
    field: Field,
) -> Result<PosetComplex> {
    let base = rng.gen_range(-1..=1);
    match rng.gen_range(0..3usize) {
        0 => {
            let m = random_module(rng, poset, field)?;
            Ok(PosetComplex::concentrated(m, base))
        }
        1 => {
            let m = random_module(rng, poset, field)?;
            let n = random_module(rng, poset, field)?;
            let f = random_hom(rng, &m, &n)?;
            let mut terms = BTreeMap::new();
            if !m.is_zero() {
                terms.insert(base + 1, m);
            }
            if !n.is_zero() {
                terms.insert(base, n);
            }
            let mut diffs = BTreeMap::new();
            if terms.contains_key(&(base + 1)) && terms.contains_key(&base) {
                diffs.insert(base + 1, f);
            }
            PosetComplex::new(poset.clone(), field, terms, diffs)
        }
        _ => {
            // Cone of a chain map between two-term complexes.
            let m1 = random_module(rng, poset, field)?;
            let m0 = random_module(rng, poset, field)?;
            let n1 = random_module(rng, poset, field)?;
            let n0 = random_module(rng, poset, field)?;
            let dm = random_hom(rng, &m1, &m0)?;
            let dn = random_hom(rng, &n1, &n0)?;
            // Chain maps (φ1, φ0) with dn φ1 = φ0 dm: sample φ1, then solve
            // φ0 from the hom space of (m0 → n0) constrained by the square.
            // Cheap route: φ0 := dn ∘ φ1 ∘ s where s is unavailable; instead
            // use φ = (φ1, φ0) = (h, dn∘h) for h: m1 → n1 … that needs dm
            // factored. Use the always-valid pair (0, g) with g∘dm = 0
            // encoded by g := projection to coker(dm) composed into n0.
            let (_, to_coker) = dm.cokernel()?;
            let g = random_hom(rng, to_coker.target(), &n0)?;
            let phi0 = g.compose(&to_coker)?;
            let c2 = m1.clone();
            let c1_m = m0.clone();
            let c1_n = n1.clone();
            // cone degrees: base+2: m1, base+1: m0 ⊕ n1, base: n0.
            let c1 = direct_sum(&c1_m, &c1_n)?;
            let mut terms = BTreeMap::new();
            if !c2.is_zero() {
                terms.insert(base + 2, c2.clone());
            }
            if !c1.0.is_zero() {
                terms.insert(base + 1, c1.0.clone());
            }
            if !n0.is_zero() {
                terms.insert(base, n0.clone());
            }
            let field_ref = &field;
            // d2 = (−dm, φ1=0): into the m0 block.
            let d2_comps: Vec<Matrix> = (0..poset.len())
                .map(|p| {
                    let mut m = Matrix::zeros(c1.0.rank(p), c2.rank(p));
                    let dmp = dm.at(p);
                    for r in 0..dmp.rows() {
                        for c in 0..dmp.cols() {
                            m.set(r, c, field_ref.neg(dmp.get(r, c)));
                        }
                    }
                    m
                })
                .collect();
            let d2 = ModuleHom::new(c2.clone(), c1.0.clone(), d2_comps)?;
            // d1 = (φ0 on m0 block, dn on n1 block).
            let d1_comps: Vec<Matrix> = (0..poset.len())
                .map(|p| {
                    let mut m = Matrix::zeros(n0.rank(p), c1.0.rank(p));
                    let a = phi0.at(p);
                    for r in 0..a.rows() {
                        for c in 0..a.cols() {
                            m.set(r, c, a.get(r, c).clone());
                        }
                    }
                    let b = dn.at(p);
                    for r in 0..b.rows() {
                        for c in 0..b.cols() {
                            m.set(r, c1_m.rank(p) + c, b.get(r, c).clone());
                        }
                    }
                    m
                })
                .collect();
            let d1 = ModuleHom::new(c1.0.clone(), n0.clone(), d1_comps)?;
            let mut diffs = BTreeMap::new();
            if terms.contains_key(&(base + 2)) && terms.contains_key(&(base + 1)) {
                diffs.insert(base + 2, d2);
            }
            if terms.contains_key(&(base + 1)) && terms.contains_key(&base) {
                diffs.insert(base + 1, d1);
            }
            PosetComplex::new(poset.clone(), field, terms, diffs)
        }
    }
}

/// Direct sum of two modules over one poset.
pub fn direct_sum(a: &Arc<PosetModule>, b: &Arc<PosetModule>) -> Result<(Arc<PosetModule>, ())> {
    let poset = a.poset().clone();
    let field = a.field();
    let ranks: Vec<usize> = (0..poset.len()).map(|p| a.rank(p) + b.rank(p)).collect();
    let edges: Vec<Matrix> = poset
        .hasse()
        .iter()
        .enumerate()
        .map(|(e, &(p, q))| {
            let mut m = Matrix::zeros(ranks[q], ranks[p]);
            let ma = a.edge_map(e);
            for r in 0..ma.rows() {
                for c in 0..ma.cols() {
                    m.set(r, c, ma.get(r, c).clone());
                }
            }
            let mb = b.edge_map(e);
            for r in 0..mb.rows() {
                for c in 0..mb.cols() {
                    m.set(a.rank(q) + r, a.rank(p) + c, mb.get(r, c).clone());
                }
            }
            m
        })
        .collect();
    Ok((
        Arc::new(PosetModule::new(poset, field, ranks, edges)?),
        (),
    ))
}

/// Indicator module `k[R]` over the two-element chain encoding of a region's
/// membership; valid whenever `R` is an upset (rank at the top) or downset
/// (rank at the bottom).
pub fn indicator_plc(rel: &Arc<Comparability>, region: &FaceSet, up: bool) -> Result<PLComplex> {
    let arr = rel.arrangement().clone();
    let poset = Arc::new(FinitePoset::chain(2));
    let assign: Vec<usize> = (0..arr.num_faces())
        .map(|f| {
            let inside = region.contains(f);
            usize::from(inside == up)
        })
        .collect();
    let enc = Arc::new(Encoding::with_relation(rel.clone(), poset.clone(), assign)?);
    enc.ensure_valid()?;
    let ranks = if up { vec![0, 1] } else { vec![1, 0] };
    let edges = vec![Matrix::zeros(ranks[1], ranks[0])];
    let m = Arc::new(PosetModule::new(poset, Field::Rational, ranks, edges)?);
    PLComplex::new(enc, PosetComplex::concentrated(m, 0))
}

/// The interval example: the line with walls {0, 1}, cone [0, ∞), module
/// k[[0,1)] over the five-face chain encoding.
pub fn interval_example() -> (Arc<Encoding>, Arc<PosetModule>) {
    let arr = Arc::new(
        Arrangement::build(1, &[(vec![rat(1)], rat(0)), (vec![rat(1)], rat(1))]).unwrap(),
    );
    let cone = Arc::new(Cone::from_rays(1, vec![vec![rat(1)]]).unwrap());
    let poset = Arc::new(FinitePoset::chain(5));
    let assign: Vec<usize> = (0..arr.num_faces()).collect();
    let enc = Arc::new(Encoding::new(arr, cone, poset.clone(), assign).unwrap());
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
    (enc, m)
}

/// The square example: the plane with walls {x, y} ∈ {0, 1}, quadrant cone,
/// module k[[0,1]²] over the face-poset encoding (25 faces).
pub fn square_example() -> PLComplex {
    let arr = Arc::new(
        Arrangement::build(
            2,
            &[
                (vec![rat(1), rat(0)], rat(0)),
                (vec![rat(1), rat(0)], rat(1)),
                (vec![rat(0), rat(1)], rat(0)),
                (vec![rat(0), rat(1)], rat(1)),
            ],
        )
        .unwrap(),
    );
    let cone = Arc::new(Cone::orthant(2));
    plc_of_region_over_face_poset(arr, cone, |p| {
        p[0] >= rat(0) && p[0] <= rat(1) && p[1] >= rat(0) && p[1] <= rat(1)
    })
    .expect("square example is a valid PL complex")
}

/// k[S] over the face poset of an arrangement, for an order-convex region S
/// given by a sample predicate. Errors if the face relation has cycles or
/// the indicator is not path independent.
pub fn plc_of_region_over_face_poset(
    arr: Arc<Arrangement>,
    cone: Arc<Cone>,
    pred: impl Fn(&[Rat]) -> bool,
) -> Result<PLComplex> {
    let rel = Arc::new(Comparability::compute(arr.clone(), cone)?);
    let n = arr.num_faces();
    let elements: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
    let mut hasse = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rel.leq(a, b) {
                hasse.push((a, b));
            }
        }
    }
    let poset = Arc::new(FinitePoset::new(elements, hasse)?);
    let enc = Arc::new(Encoding::with_relation(rel, poset.clone(), (0..n).collect())?);
    enc.ensure_valid()?;
    let region = FaceSet::from_predicate(arr, pred);
    let ranks: Vec<usize> = (0..n).map(|f| usize::from(region.contains(f))).collect();
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
    let m = Arc::new(PosetModule::new(poset, Field::Rational, ranks, edges)?);
    if !m.is_valid() {
        return Err(Error::Input("region indicator is not path independent".into()));
    }
    PLComplex::new(enc, PosetComplex::concentrated(m, 0))
}

/// Random compact-support PL complex: box walls plus up to two extra random
/// hyperplanes, the face-poset encoding, and a random sum of simple modules
/// at elements with bounded fibers. Retries until the face relation is
/// acyclic.
pub fn random_compact_plc(rng: &mut ChaCha8Rng) -> Result<PLComplex> {
    for _ in 0..50 {
        let mut hyperplanes = vec![
            (vec![rat(1), rat(0)], rat(0)),
            (vec![rat(1), rat(0)], rat(1)),
            (vec![rat(0), rat(1)], rat(0)),
            (vec![rat(0), rat(1)], rat(1)),
        ];
        for _ in 0..rng.gen_range(0..=2usize) {
            let normal = vec![small_rat(rng), small_rat(rng)];
            if normal.iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            hyperplanes.push((normal, small_rat(rng)));
        }
        let arr = Arc::new(Arrangement::build(2, &hyperplanes)?);
        let cone = Arc::new(random_cone2(rng));
        let rel = match Comparability::compute(arr.clone(), cone.clone()) {
            Ok(r) => Arc::new(r),
            Err(_) => continue,
        };
        let n = arr.num_faces();
        let elements: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
        let mut hasse = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && rel.leq(a, b) {
                    hasse.push((a, b));
                }
            }
        }
        let poset = match FinitePoset::new(elements, hasse) {
            Ok(p) => Arc::new(p),
            Err(_) => continue, // face relation had a cycle; re-roll
        };
        let enc = Arc::new(Encoding::with_relation(rel, poset.clone(), (0..n).collect())?);
        if !enc.is_valid() {
            continue;
        }
        let bounded: Vec<usize> = (0..n)
            .filter(|&f| arr.face_is_bounded(f).unwrap_or(false))
            .collect();
        if bounded.is_empty() {
            continue;
        }
        let mut ranks = vec![0usize; n];
        let picks = rng.gen_range(1..=3usize);
        for _ in 0..picks {
            let f = bounded[rng.gen_range(0..bounded.len())];
            if ranks[f] < 2 {
                ranks[f] += 1;
            }
        }
        if ranks.iter().all(|&r| r == 0) {
            ranks[bounded[0]] = 1;
        }
        let edges: Vec<Matrix> = poset
            .hasse()
            .iter()
            .map(|&(p, q)| Matrix::zeros(ranks[q], ranks[p]))
            .collect();
        let m = Arc::new(PosetModule::new(poset, Field::Rational, ranks, edges)?);
        debug_assert!(m.is_valid());
        let plc = PLComplex::new(enc, PosetComplex::concentrated(m, 0))?;
        debug_assert!(plc.is_compactly_supported()?);
        return Ok(plc);
    }
    Err(Error::Internal(
        "could not sample a compact-support complex in 50 attempts".into(),
    ))
}
