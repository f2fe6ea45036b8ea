//! Hyperplane arrangements as face lattices of feasible sign vectors.
//!
//! Every piecewise-linear region in a computation is normalized to a union
//! of (relatively open) faces of one master arrangement, so all region
//! algebra downstream of this module is purely combinatorial.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::feas::{feasible, witness, Constraint};
use crate::matrix::Matrix;
use crate::scalar::{
    canonical_scale, dot, format_rat, format_vec, parse_rat, parse_vec, rat, scale_vec, Rat,
};

/// Sign of `⟨normal, x⟩ − offset`. Ordered `− < 0 < +`; face ordering is
/// lexicographic in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(value: &Rat) -> Sign {
        match value.cmp(&rat(0)) {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '-' => Ok(Sign::Neg),
            '0' => Ok(Sign::Zero),
            '+' => Ok(Sign::Pos),
            _ => Err(Error::Input(format!("invalid sign character `{c}`"))),
        }
    }
}

pub fn signs_to_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.to_char()).collect()
}

pub fn signs_from_string(s: &str) -> Result<Vec<Sign>> {
    s.chars().map(Sign::from_char).collect()
}

/// An affine hyperplane `⟨normal, x⟩ = offset`, scaled so the first nonzero
/// normal entry is +1 (hyperplanes are unoriented).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Rat>,
    offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Result<Self> {
        let scale = canonical_scale(&normal).ok_or(Error::ZeroNormal)?;
        let mut normal = scale_vec(&scale, &normal);
        let mut offset = &scale * &offset;
        let flip = normal
            .iter()
            .find(|v| !num_traits::Zero::is_zero(*v))
            .map(|v| *v < rat(0))
            .unwrap_or(false);
        if flip {
            normal = normal.iter().map(|v| -v).collect();
            offset = -offset;
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[Rat] {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn side_of(&self, point: &[Rat]) -> Sign {
        Sign::of(&(dot(&self.normal, point) - &self.offset))
    }
}

/// A relatively open face: one feasible sign vector plus a rational witness.
#[derive(Clone, Debug)]
pub struct Face {
    signs: Vec<Sign>,
    sample: Vec<Rat>,
}

impl Face {
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sample(&self) -> &[Rat] {
        &self.sample
    }

    pub fn sign_string(&self) -> String {
        signs_to_string(&self.signs)
    }
}

/// All feasible sign vectors of a hyperplane set, lexicographically ordered,
/// with deterministic sample points. Faces partition the ambient space.
#[derive(Debug)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    faces: Vec<Face>,
    index: BTreeMap<Vec<Sign>, usize>,
    id: String,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Arrangement {}

impl Arrangement {
    /// Build from raw `(normal, offset)` pairs. Duplicates (after canonical
    /// scaling) are merged; hyperplanes are sorted lexicographically, and the
    /// positions in every sign vector refer to that sorted order.
    pub fn build(dim: usize, hyperplanes: &[(Vec<Rat>, Rat)]) -> Result<Arrangement> {
        if dim == 0 {
            return Err(Error::Input("ambient dimension must be at least 1".into()));
        }
        let mut hs: Vec<Hyperplane> = Vec::new();
        for (n, o) in hyperplanes {
            if n.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: n.len(),
                });
            }
            hs.push(Hyperplane::new(n.clone(), o.clone())?);
        }
        hs.sort();
        hs.dedup();

        let mut faces = Vec::new();
        let mut prefix: Vec<Sign> = Vec::new();
        let mut constraints: Vec<Constraint> = Vec::new();
        enumerate(dim, &hs, &mut prefix, &mut constraints, &mut faces)?;

        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f): (usize, &Face)| (f.signs.clone(), i))
            .collect();

        let id = content_id(dim, &hs);
        Ok(Arrangement {
            dim,
            hyperplanes: hs,
            faces,
            index,
            id,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Content-derived identifier; equal arrangements share it.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn face_index(&self, signs: &[Sign]) -> Option<usize> {
        self.index.get(signs).copied()
    }

    /// The unique face containing a point.
    pub fn face_of(&self, point: &[Rat]) -> usize {
        assert_eq!(point.len(), self.dim, "point dimension mismatch");
        let signs: Vec<Sign> = self.hyperplanes.iter().map(|h| h.side_of(point)).collect();
        *self
            .index
            .get(&signs)
            .expect("feasible sign vectors are exhaustively enumerated")
    }

    /// Face-closure order: is `inner` contained in the closure of `outer`?
    /// Holds exactly when the sign vectors agree except where `inner` is 0.
    pub fn closure_leq(&self, inner: usize, outer: usize) -> bool {
        self.faces[inner]
            .signs
            .iter()
            .zip(&self.faces[outer].signs)
            .all(|(a, b)| a == b || *a == Sign::Zero)
    }

    /// Open constraints cutting out the face with the given sign vector.
    pub fn sign_constraints(&self, signs: &[Sign]) -> Vec<Constraint> {
        let mut cs = Vec::new();
        for (h, s) in self.hyperplanes.iter().zip(signs) {
            match s {
                Sign::Pos => cs.push(Constraint::new(
                    h.normal.clone(),
                    h.offset.clone(),
                    true,
                )),
                Sign::Neg => cs.push(Constraint::new(
                    h.normal.iter().map(|v| -v).collect(),
                    -h.offset.clone(),
                    true,
                )),
                Sign::Zero => cs.extend(Constraint::equality_pair(&h.normal, &h.offset)),
            }
        }
        cs
    }

    pub fn face_constraints(&self, idx: usize) -> Vec<Constraint> {
        self.sign_constraints(&self.faces[idx].signs)
    }

    /// Affine dimension of a face: ambient dim minus the rank of the normals
    /// held at zero.
    pub fn face_dim(&self, idx: usize) -> usize {
        let zero_normals: Vec<Vec<Rat>> = self.faces[idx]
            .signs
            .iter()
            .zip(&self.hyperplanes)
            .filter(|(s, _)| **s == Sign::Zero)
            .map(|(_, h)| h.normal.clone())
            .collect();
        if zero_normals.is_empty() {
            return self.dim;
        }
        self.dim - Matrix::from_rows(zero_normals).rank(&Field::Rational)
    }

    pub fn face_is_bounded(&self, idx: usize) -> Result<bool> {
        crate::geometry::feas::is_bounded(&self.face_constraints(idx), self.dim)
    }

    /// Do this arrangement's hyperplanes contain all of `other`'s?
    pub fn contains_hyperplanes_of(&self, other: &Arrangement) -> bool {
        other
            .hyperplanes
            .iter()
            .all(|h| self.hyperplanes.binary_search(h).is_ok())
    }
}

fn enumerate(
    dim: usize,
    hs: &[Hyperplane],
    prefix: &mut Vec<Sign>,
    constraints: &mut Vec<Constraint>,
    out: &mut Vec<Face>,
) -> Result<()> {
    if prefix.len() == hs.len() {
        let sample = witness(constraints, dim)?
            .ok_or_else(|| Error::Internal("prefix-feasible leaf became infeasible".into()))?;
        out.push(Face {
            signs: prefix.clone(),
            sample,
        });
        return Ok(());
    }
    let h = &hs[prefix.len()];
    for sign in [Sign::Neg, Sign::Zero, Sign::Pos] {
        let added: Vec<Constraint> = match sign {
            Sign::Pos => vec![Constraint::new(h.normal.clone(), h.offset.clone(), true)],
            Sign::Neg => vec![Constraint::new(
                h.normal.iter().map(|v| -v).collect(),
                -h.offset.clone(),
                true,
            )],
            Sign::Zero => Constraint::equality_pair(&h.normal, &h.offset).to_vec(),
        };
        let base = constraints.len();
        constraints.extend(added);
        if feasible(constraints, dim)? {
            prefix.push(sign);
            enumerate(dim, hs, prefix, constraints, out)?;
            prefix.pop();
        }
        constraints.truncate(base);
    }
    Ok(())
}

fn content_id(dim: usize, hs: &[Hyperplane]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(dim.to_string());
    for h in hs {
        hasher.update("|");
        hasher.update(format_vec(&h.normal).join(","));
        hasher.update(";");
        hasher.update(format_rat(&h.offset));
    }
    let digest = hasher.finalize();
    let mut s = String::new();
    for b in digest.iter().take(8) {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "arrangement[{} hyperplanes, {} faces, dim {}]",
            self.hyperplanes.len(),
            self.faces.len(),
            self.dim
        )
    }
}

#[derive(Serialize, Deserialize)]
pub struct ArrangementJson {
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneJson>,
}

#[derive(Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub normal: Vec<String>,
    pub offset: String,
}

impl Arrangement {
    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneJson {
                    normal: format_vec(&h.normal),
                    offset: format_rat(&h.offset),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ArrangementJson) -> Result<Arrangement> {
        let hyperplanes: Result<Vec<(Vec<Rat>, Rat)>> = j
            .hyperplanes
            .iter()
            .map(|h| Ok((parse_vec(&h.normal)?, parse_rat(&h.offset)?)))
            .collect();
        Arrangement::build(j.dim, &hyperplanes?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(a: i64, b: i64, c: i64) -> (Vec<Rat>, Rat) {
        (vec![rat(a), rat(b)], rat(c))
    }

    #[test]
    fn single_wall_in_r1() {
        let arr = Arrangement::build(1, &[(vec![rat(1)], rat(0))]).unwrap();
        assert_eq!(arr.num_faces(), 3);
        let strs: Vec<String> = arr.faces().iter().map(|f| f.sign_string()).collect();
        assert_eq!(strs, vec!["-", "0", "+"]);
        for f in arr.faces() {
            let recomputed: Vec<Sign> = arr
                .hyperplanes()
                .iter()
                .map(|h| h.side_of(f.sample()))
                .collect();
            assert_eq!(recomputed, f.signs());
        }
    }

    #[test]
    fn coordinate_axes_in_r2() {
        let arr = Arrangement::build(2, &[line(1, 0, 0), line(0, 1, 0)]).unwrap();
        assert_eq!(arr.num_faces(), 9);
    }

    #[test]
    fn three_generic_lines_have_19_faces() {
        // x = 0, y = 0, x + y = 1: pairwise non-parallel, not concurrent.
        let arr = Arrangement::build(2, &[line(1, 0, 0), line(0, 1, 0), line(1, 1, 1)]).unwrap();
        assert_eq!(arr.num_faces(), 19);
        let mut by_dim = [0usize; 3];
        for i in 0..arr.num_faces() {
            by_dim[arr.face_dim(i)] += 1;
        }
        assert_eq!(by_dim, [3, 9, 7]);
    }

    #[test]
    fn duplicates_merge_after_canonical_scaling() {
        let arr =
            Arrangement::build(2, &[line(1, 0, 0), line(-2, 0, 0), line(1, 0, 0)]).unwrap();
        assert_eq!(arr.hyperplanes().len(), 1);
        assert!(Arrangement::build(2, &[(vec![rat(0), rat(0)], rat(1))]).is_err());
    }

    #[test]
    fn closure_order_and_face_lookup() {
        let arr = Arrangement::build(2, &[line(1, 0, 0), line(0, 1, 0)]).unwrap();
        let origin = arr.face_of(&[rat(0), rat(0)]);
        let quadrant = arr.face_of(&[rat(1), rat(1)]);
        let axis = arr.face_of(&[rat(1), rat(0)]);
        assert!(arr.closure_leq(origin, quadrant));
        assert!(arr.closure_leq(axis, quadrant));
        assert!(!arr.closure_leq(quadrant, origin));
        assert!(arr.closure_leq(origin, origin));
    }

    #[test]
    fn ids_depend_on_content_only() {
        let a = Arrangement::build(2, &[line(1, 0, 0), line(0, 1, 0)]).unwrap();
        let b = Arrangement::build(2, &[line(0, 1, 0), line(-1, 0, 0)]).unwrap();
        let c = Arrangement::build(2, &[line(0, 1, 0), line(1, 0, 1)]).unwrap();
        assert_eq!(a.id(), b.id());
        assert_ne!(a.id(), c.id());
    }
}
