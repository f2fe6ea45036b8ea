//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line (run with `cargo test -p strata-cli --test acceptance -- --nocapture`
//! to see the lines for passing criteria too).

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use strata_core::complex::PosetComplex;
use strata_core::field::Field;
use strata_core::geometry::{Arrangement, Comparability, FaceSet};
use strata_core::indicator::{pull_back, Semantics};
use strata_core::resolution::{
    downset_resolution, lift_morphism, realize_resolution_map, resolve_complex, upset_resolution,
    Kind,
};
use strata_core::sample;
use strata_core::scalar::rat;
use strata_core::stalk::StalkContext;
use strata_core::stratify::{clip_bounded, conic_stratification, verify_clip, verify_stratification};

fn criterion(n: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {}{}",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            String::new()
        } else {
            format!(" — {detail}")
        }
    );
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn region_sets(summands: &[strata_core::indicator::IndSummand]) -> Vec<&FaceSet> {
    summands.iter().map(|s| &s.region).collect()
}

/// Criterion 1 — interval suite on the line, arrangement {0, 1}, cone [0,∞):
/// the upset resolution of k[[0,1)] is 0 → k[[1,∞)] → k[[0,∞)] → M → 0 and
/// the downset resolution is 0 → M → k[(−∞,1)] → k[(−∞,0)] → 0, both
/// verified in both semantics (conic also after adjustment), within 1 s.
#[test]
fn acceptance_1_interval_suite() {
    let start = Instant::now();
    let (enc, m) = sample::interval_example();
    let arr = enc.arrangement().clone();
    let ctx = StalkContext::new(arr.clone(), enc.cone().clone()).unwrap();

    let up = upset_resolution(&m).unwrap();
    let ind_up = pull_back(&up, &enc).unwrap();
    let expect_0 = FaceSet::from_predicate(arr.clone(), |p| p[0] >= rat(0));
    let expect_1 = FaceSet::from_predicate(arr.clone(), |p| p[0] >= rat(1));
    let deg0 = region_sets(&ind_up.terms()[&0]);
    let deg1 = region_sets(&ind_up.terms()[&1]);
    let shape_ok = ind_up.total_summands() == 2
        && deg0 == vec![&expect_0]
        && deg1 == vec![&expect_1]
        && ind_up.terms().len() == 2;

    let down = downset_resolution(&m).unwrap();
    let ind_down = pull_back(&down, &enc).unwrap();
    let expect_d0 = FaceSet::from_predicate(arr.clone(), |p| p[0] < rat(1));
    let expect_dm1 = FaceSet::from_predicate(arr.clone(), |p| p[0] < rat(0));
    let d0 = region_sets(&ind_down.terms()[&0]);
    let dm1 = region_sets(&ind_down.terms()[&-1]);
    let shape_down_ok = ind_down.total_summands() == 2 && d0 == vec![&expect_d0] && dm1 == vec![&expect_dm1];

    let mut verified = true;
    for ind in [&ind_up, &ind_down] {
        verified &= ind.verify_resolution(&ctx, Semantics::Alexandrov).unwrap().ok;
        verified &= ind.verify_resolution(&ctx, Semantics::Conic).unwrap().ok;
        let adj = ind.adjust_topology();
        verified &= adj.verify_resolution(&ctx, Semantics::Conic).unwrap().ok;
    }

    let elapsed = start.elapsed();
    let timely = elapsed < Duration::from_secs(1);
    criterion(
        1,
        "interval suite",
        shape_ok && shape_down_ok && verified && timely,
        &format!(
            "shapes up/down {shape_ok}/{shape_down_ok}, verified {verified}, elapsed {elapsed:?}"
        ),
    );
}

/// Criterion 2 — square suite in the plane with the quadrant cone: the upset
/// resolution of k[[0,1]²] has 4 summands in degrees 0, 1, 2 with ranks
/// 1, 2, 1; after adjustment the conic support is exactly (0,1]²; the
/// stratification has the single stratum (0,1]² with homology rank 1 in
/// degree 0 and valid witnesses; all within 5 s.
#[test]
fn acceptance_2_square_suite() {
    let start = Instant::now();
    let plc = sample::square_example();
    let arr = plc.encoding().arrangement().clone();
    let ctx = StalkContext::new(arr.clone(), plc.encoding().cone().clone()).unwrap();

    let res = resolve_complex(plc.complex(), Kind::Upset).unwrap();
    let ranks: Vec<usize> = [0, 1, 2]
        .iter()
        .map(|d| res.terms().get(d).map_or(0, Vec::len))
        .collect();
    let shape_ok = ranks == vec![1, 2, 1] && res.total_summands() == 4;

    let ind = pull_back(&res, plc.encoding()).unwrap();
    let adj = ind.adjust_topology();
    let open = |a: i64, b: i64| {
        FaceSet::from_predicate(arr.clone(), move |p| p[0] > rat(a) && p[1] > rat(b))
    };
    let expected_regions = [open(0, 0), open(1, 0), open(0, 1), open(1, 1)];
    let mut adjusted_ok = true;
    let mut seen: Vec<&FaceSet> = Vec::new();
    for summands in adj.terms().values() {
        for s in summands {
            adjusted_ok &= expected_regions.iter().any(|r| r == &s.region);
            seen.push(&s.region);
        }
    }
    adjusted_ok &= seen.len() == 4;

    let half_open_square = FaceSet::from_predicate(arr.clone(), |p| {
        p[0] > rat(0) && p[0] <= rat(1) && p[1] > rat(0) && p[1] <= rat(1)
    });
    let support_ok = adj.conic_support(&ctx) == half_open_square
        && plc.conic_support(&ctx) == half_open_square;

    let s = conic_stratification(&plc).unwrap();
    let strat_ok = s.strata().len() == 1 && {
        let st = &s.strata()[0];
        st.region == half_open_square
            && st.homology == [(0, 1)].into_iter().collect()
            && st.witness_upset == open(0, 0)
            && st.witness_downset
                == FaceSet::from_predicate(arr.clone(), |p| p[0] <= rat(1) && p[1] <= rat(1))
    };
    let (verify_ok, problems) = verify_stratification(&s);

    let elapsed = start.elapsed();
    let timely = elapsed < Duration::from_secs(5);
    criterion(
        2,
        "square suite",
        shape_ok && adjusted_ok && support_ok && strat_ok && verify_ok && timely,
        &format!(
            "shape {shape_ok}, adjusted {adjusted_ok}, support {support_ok}, stratum {strat_ok}, verified {verify_ok} {problems:?}, elapsed {elapsed:?}"
        ),
    );
}

/// Criterion 3 — randomized syzygy oracle: 100 random encodings (≤ 4
/// hyperplanes in the plane, assignments into posets with ≤ 8 elements,
/// ranks ≤ 3 over ℚ); upset and downset resolutions of random bounded
/// complexes verify pointwise and, after adjustment, conically; resolution
/// length never exceeds |P|; 100/100 within 60 s.
#[test]
fn acceptance_3_randomized_syzygy_oracle() {
    let start = Instant::now();
    let mut rng = sample::rng(1003);
    let mut passes = 0usize;
    let total = 100usize;
    for trial in 0..total {
        let hs = sample::random_hyperplanes(&mut rng, 4);
        let arr = Arc::new(Arrangement::build(2, &hs).unwrap());
        let cone = Arc::new(sample::random_cone2(&mut rng));
        let rel = Arc::new(Comparability::compute(arr.clone(), cone.clone()).unwrap());
        let enc = sample::random_encoding(&mut rng, &rel).unwrap();
        let complex = sample::random_complex(&mut rng, enc.poset(), Field::Rational).unwrap();
        let ctx = StalkContext::new(arr.clone(), cone.clone()).unwrap();
        let mut ok = enc.poset().len() <= 8;
        for kind in [Kind::Upset, Kind::Downset] {
            let res = resolve_complex(&complex, kind).unwrap();
            ok &= res.length() <= enc.poset().len();
            let ind = pull_back(&res, &enc).unwrap();
            ok &= ind.verify_resolution(&ctx, Semantics::Alexandrov).unwrap().ok;
            let adj = ind.adjust_topology();
            ok &= adj.verify_resolution(&ctx, Semantics::Conic).unwrap().ok;
        }
        if ok {
            passes += 1;
        } else {
            println!("criterion 3: trial {trial} failed");
        }
    }
    let elapsed = start.elapsed();
    let timely = elapsed < Duration::from_secs(60);
    criterion(
        3,
        "randomized syzygy oracle",
        passes == total && timely,
        &format!("{passes}/{total} passed, elapsed {elapsed:?}"),
    );
}

/// Criterion 4 — paired stalks: for 50 random PL upsets U and 50 random
/// downsets D, the conic stalks and stalk maps of k[U] vs k[U°] and of
/// k[D] vs k[D̄] agree at every face sample; 100/100.
#[test]
fn acceptance_4_interior_closure_pairs() {
    let mut rng = sample::rng(1004);
    let mut passes = 0usize;
    let total = 100usize;
    for trial in 0..total {
        let upset_case = trial < 50;
        let hs = sample::random_hyperplanes(&mut rng, 3);
        let arr = Arc::new(Arrangement::build(2, &hs).unwrap());
        let cone = Arc::new(sample::random_cone2(&mut rng));
        let rel = Arc::new(Comparability::compute(arr.clone(), cone.clone()).unwrap());
        let ctx = StalkContext::new(arr.clone(), cone.clone()).unwrap();
        let (a, b) = if upset_case {
            let u = sample::random_upset(&mut rng, &rel);
            (
                sample::indicator_plc(&rel, &u, true).unwrap(),
                sample::indicator_plc(&rel, &u.interior(), true).unwrap(),
            )
        } else {
            let d = sample::random_downset(&mut rng, &rel);
            (
                sample::indicator_plc(&rel, &d, false).unwrap(),
                sample::indicator_plc(&rel, &d.closure(), false).unwrap(),
            )
        };
        let mut ok = true;
        for f in 0..arr.num_faces() {
            let sa = a.conic_stalk_at_face(&ctx, f);
            let sb = b.conic_stalk_at_face(&ctx, f);
            ok &= sa.dims == sb.dims;
            for g in 0..arr.num_faces() {
                if !rel.leq(f, g) {
                    continue;
                }
                let (pf, pg) = (ctx.probe_of_face(f), ctx.probe_of_face(g));
                let ma = a.stalk_map_between_faces(pf, pg).unwrap();
                let mb = b.stalk_map_between_faces(pf, pg).unwrap();
                ok &= ma.map(0) == mb.map(0);
            }
        }
        if ok {
            passes += 1;
        } else {
            println!("criterion 4: trial {trial} failed");
        }
    }
    criterion(
        4,
        "interior/closure stalk pairs",
        passes == total,
        &format!("{passes}/{total} passed"),
    );
}

/// Criterion 5 — exactness of the stalk functor: 25 constructed short exact
/// sequences of PL modules give exact conic-stalk sequences at every face
/// sample; 25/25.
#[test]
fn acceptance_5_stalk_exactness() {
    let mut rng = sample::rng(1005);
    let mut passes = 0usize;
    let total = 25usize;
    let field = Field::Rational;
    for trial in 0..total {
        let hs = sample::random_hyperplanes(&mut rng, 3);
        let arr = Arc::new(Arrangement::build(2, &hs).unwrap());
        let cone = Arc::new(sample::random_cone2(&mut rng));
        let rel = Arc::new(Comparability::compute(arr.clone(), cone.clone()).unwrap());
        let enc = sample::random_encoding(&mut rng, &rel).unwrap();
        let ctx = StalkContext::new(arr.clone(), cone.clone()).unwrap();
        let (incl, proj) = sample::random_ses(&mut rng, enc.poset(), field).unwrap();
        let mut ok = true;
        for f in 0..arr.num_faces() {
            let e = enc.assign(ctx.probe_of_face(f));
            let a = incl.at(e);
            let b = proj.at(e);
            ok &= a.rank(&field) == a.cols(); // stalk of A injects
            ok &= b.rank(&field) == b.rows(); // stalk of C is hit
            ok &= b.mul(a, &field).is_zero(&field);
            ok &= a.rank(&field) + b.rank(&field) == a.rows(); // exact middle
        }
        if ok {
            passes += 1;
        } else {
            println!("criterion 5: trial {trial} failed");
        }
    }
    criterion(
        5,
        "stalk exactness on short exact sequences",
        passes == total,
        &format!("{passes}/{total} passed"),
    );
}

/// Criterion 6 — bounded decomposition: clipping the square example (with
/// the documented bounds (−1,−1) and (2,2)) and 20 random compact-support
/// inputs yields bounded, conic-locally-closed pieces with verified
/// witnesses, stalkwise isomorphic to the input; 21/21.
#[test]
fn acceptance_6_bounded_clipping() {
    let mut passes = 0usize;
    let total = 21usize;

    // The square example with its frozen bounds and clipped corner piece.
    {
        let plc = sample::square_example();
        let res = resolve_complex(plc.complex(), Kind::Upset).unwrap();
        let adj = pull_back(&res, plc.encoding()).unwrap().adjust_topology();
        let out = clip_bounded(&adj).unwrap();
        let bounds_ok = out.lower == vec![rat(-1), rat(-1)] && out.upper == vec![rat(2), rat(2)];
        let ext = out.clipped.encoding().arrangement().clone();
        let clipped_corner = FaceSet::from_predicate(ext, |p| {
            p[0] > rat(0) && p[0] <= rat(2) && p[1] > rat(0) && p[1] <= rat(2)
        });
        let piece_ok = out
            .pieces
            .iter()
            .any(|p| p.degree == 0 && p.region == clipped_corner);
        let (ok, problems) = verify_clip(&out).unwrap();
        if bounds_ok && piece_ok && ok {
            passes += 1;
        } else {
            println!("criterion 6: square clip failed: bounds {bounds_ok}, piece {piece_ok}, verify {ok} {problems:?}");
        }
    }

    let mut rng = sample::rng(1006);
    for trial in 0..20 {
        let plc = sample::random_compact_plc(&mut rng).unwrap();
        let res = resolve_complex(plc.complex(), Kind::Upset).unwrap();
        let adj = pull_back(&res, plc.encoding()).unwrap().adjust_topology();
        let out = clip_bounded(&adj).unwrap();
        let (ok, problems) = verify_clip(&out).unwrap();
        if ok {
            passes += 1;
        } else {
            println!("criterion 6: trial {trial} failed: {problems:?}");
        }
    }
    criterion(
        6,
        "bounded clipping",
        passes == total,
        &format!("{passes}/{total} passed"),
    );
}

/// Criterion 7 — morphism lifting: for 20 random morphisms between random
/// modules, the lift commutes with the augmentations degreewise, as exact
/// matrix identities at every poset element (both kinds); 20/20.
#[test]
fn acceptance_7_morphism_lifting() {
    let mut rng = sample::rng(1007);
    let mut passes = 0usize;
    let total = 20usize;
    let field = Field::Rational;
    for trial in 0..total {
        let poset = sample::random_poset(&mut rng, 6);
        let m = sample::random_module(&mut rng, &poset, field).unwrap();
        let n = sample::random_module(&mut rng, &poset, field).unwrap();
        let f = sample::random_hom(&mut rng, &m, &n).unwrap();
        let mut ok = true;

        // Upset lift: ε_T ∘ φ = f ∘ ε_S and the chain squares, pointwise.
        let res_s = upset_resolution(&m).unwrap();
        let res_t = upset_resolution(&n).unwrap();
        let lift = lift_morphism(&f, &res_s, &res_t).unwrap();
        let phi = realize_resolution_map(&lift, &res_s, &res_t);
        if let Err(e) = phi.validate() {
            ok = false;
            println!("criterion 7: trial {trial}: upset lift not a chain map: {e}");
        }
        let aug_s = res_s.augmentation();
        let aug_t = res_t.augmentation();
        if let (Some(es), Some(et), Some(p0)) =
            (aug_s.maps.get(&0), aug_t.maps.get(&0), phi.maps.get(&0))
        {
            for p in 0..poset.len() {
                ok &= et.at(p).mul(p0.at(p), &field) == f.at(p).mul(es.at(p), &field);
            }
        }

        // Downset lift: ψ ∘ coaug_S = coaug_T ∘ f.
        let res_s = downset_resolution(&m).unwrap();
        let res_t = downset_resolution(&n).unwrap();
        let lift = lift_morphism(&f, &res_s, &res_t).unwrap();
        let psi = realize_resolution_map(&lift, &res_s, &res_t);
        if let Err(e) = psi.validate() {
            ok = false;
            println!("criterion 7: trial {trial}: downset lift not a chain map: {e}");
        }
        let aug_s = res_s.augmentation();
        let aug_t = res_t.augmentation();
        if let (Some(es), Some(et), Some(p0)) =
            (aug_s.maps.get(&0), aug_t.maps.get(&0), psi.maps.get(&0))
        {
            for p in 0..poset.len() {
                ok &= p0.at(p).mul(es.at(p), &field) == et.at(p).mul(f.at(p), &field);
            }
        }

        if ok {
            passes += 1;
        } else {
            println!("criterion 7: trial {trial} failed");
        }
    }
    criterion(
        7,
        "morphism lifting",
        passes == total,
        &format!("{passes}/{total} passed"),
    );
}

/// Criterion 8 — non-compact rejection: `stratify` and `clip` on k[[0,∞)²]
/// exit with the documented precondition error, exact exit code 2.
#[test]
fn acceptance_8_noncompact_rejection() {
    let fixture = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/noncompact.json");
    let fixture = fixture.to_str().unwrap();
    let stratify = Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(["stratify", fixture])
        .output()
        .unwrap();
    let clip = Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(["clip", fixture])
        .output()
        .unwrap();
    let ok = stratify.status.code() == Some(2) && clip.status.code() == Some(2);
    criterion(
        8,
        "non-compact rejection",
        ok,
        &format!(
            "stratify exit {:?}, clip exit {:?}",
            stratify.status.code(),
            clip.status.code()
        ),
    );
}
