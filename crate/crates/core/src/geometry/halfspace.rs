//! Half-spaces with open or closed boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{
    canonical_scale, dot, format_vec, parse_vec, scale_vec, format_rat, parse_rat, Rat,
};

/// The region `⟨normal, x⟩ ≥ offset`, or `> offset` when `strict`.
///
/// Normals are canonically scaled so the first nonzero entry is ±1, which
/// makes equal half-spaces structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: Vec<Rat>,
    offset: Rat,
    strict: bool,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rat>, offset: Rat, strict: bool) -> Result<Self> {
        let scale = canonical_scale(&normal).ok_or(Error::ZeroNormal)?;
        Ok(HalfSpace {
            normal: scale_vec(&scale, &normal),
            offset: &scale * &offset,
            strict,
        })
    }

    pub fn closed(normal: Vec<Rat>, offset: Rat) -> Result<Self> {
        HalfSpace::new(normal, offset, false)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[Rat] {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    pub fn satisfies(&self, point: &[Rat]) -> bool {
        let v = dot(&self.normal, point);
        if self.strict {
            v > self.offset
        } else {
            v >= self.offset
        }
    }

    /// Same solution set with the boundary included.
    pub fn weakened(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset: self.offset.clone(),
            strict: false,
        }
    }

    pub fn negated(&self) -> Result<HalfSpace> {
        HalfSpace::new(
            self.normal.iter().map(|v| -v).collect(),
            -self.offset.clone(),
            self.strict,
        )
    }
}

#[derive(Serialize, Deserialize)]
pub struct HalfSpaceJson {
    pub normal: Vec<String>,
    pub offset: String,
    pub strict: bool,
}

impl HalfSpace {
    pub fn to_json(&self) -> HalfSpaceJson {
        HalfSpaceJson {
            normal: format_vec(&self.normal),
            offset: format_rat(&self.offset),
            strict: self.strict,
        }
    }

    pub fn from_json(j: &HalfSpaceJson) -> Result<HalfSpace> {
        HalfSpace::new(parse_vec(&j.normal)?, parse_rat(&j.offset)?, j.strict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn canonical_scaling() {
        let h = HalfSpace::new(vec![rat(0), rat(-2)], rat(4), true).unwrap();
        assert_eq!(h.normal(), &[rat(0), rat(-1)]);
        assert_eq!(h.offset(), &rat(2));
        assert!(h.strict());
        assert!(HalfSpace::new(vec![rat(0), rat(0)], rat(1), false).is_err());
    }

    #[test]
    fn membership_respects_strictness() {
        // x ≥ 1/2
        let closed = HalfSpace::new(vec![rat(2)], rat(1), false).unwrap();
        assert!(closed.satisfies(&[ratio(1, 2)]));
        let strict = HalfSpace::new(vec![rat(2)], rat(1), true).unwrap();
        assert!(!strict.satisfies(&[ratio(1, 2)]));
        assert!(strict.satisfies(&[rat(1)]));
    }
}
