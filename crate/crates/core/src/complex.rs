//! Bounded complexes: plain vector-space complexes (the shape of a stalk)
//! and complexes of poset modules. Differentials decrease the homological
//! degree. Quasi-isomorphisms are decided through mapping-cone acyclicity,
//! one code path for every degreewise check in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{ModuleHom, ModuleJson, PosetModule};
use crate::poset::FinitePoset;
use crate::scalar::Rat;

/// A bounded complex of finite-dimensional vector spaces.
/// `diffs[k]` maps degree `k` to degree `k − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VsComplex {
    pub field: Field,
    pub dims: BTreeMap<i32, usize>,
    pub diffs: BTreeMap<i32, Matrix>,
}

impl VsComplex {
    pub fn new(field: Field, dims: BTreeMap<i32, usize>, diffs: BTreeMap<i32, Matrix>) -> Result<Self> {
        let c = VsComplex { field, dims, diffs };
        c.validate()?;
        Ok(c)
    }

    pub fn empty(field: Field) -> Self {
        VsComplex {
            field,
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn diff(&self, k: i32) -> Matrix {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(k - 1), self.dim(k)))
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        for (&k, d) in &self.diffs {
            if d.rows() != self.dim(k - 1) || d.cols() != self.dim(k) {
                return Err(Error::Input(format!(
                    "differential at degree {k} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dim(k - 1),
                    self.dim(k)
                )));
            }
        }
        for &k in self.dims.keys() {
            let dd = self.diff(k).mul(&self.diff(k + 1), &self.field);
            if !dd.is_zero(&self.field) {
                return Err(Error::Input(format!("d∘d ≠ 0 into degree {}", k - 1)));
            }
        }
        Ok(())
    }

    /// Nonzero homology ranks by degree.
    pub fn homology(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&k, &dim) in &self.dims {
            if dim == 0 {
                continue;
            }
            let rank_out = self.diff(k).rank(&self.field);
            let rank_in = self.diff(k + 1).rank(&self.field);
            let h = dim - rank_out - rank_in;
            if h > 0 {
                out.insert(k, h);
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_empty()
    }

    /// Basis of the homology in degree `k`: cycle columns completing the
    /// boundary space, chosen deterministically.
    pub fn homology_basis(&self, k: i32) -> Matrix {
        let cycles = self.diff(k).kernel_basis(&self.field);
        let boundaries = self.diff(k + 1);
        let mut span = boundaries.clone();
        let mut picked: Vec<Vec<Rat>> = Vec::new();
        let mut rank = span.rank(&self.field);
        for j in 0..cycles.cols() {
            let cand = Matrix::column(cycles.col(j));
            let grown = span.hstack(&cand);
            let r = grown.rank(&self.field);
            if r > rank {
                picked.push(cycles.col(j));
                span = grown;
                rank = r;
            }
        }
        let mut out = Matrix::zeros(self.dim(k), picked.len());
        for (j, col) in picked.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }
}

/// A degreewise map of vector-space complexes.
#[derive(Clone, Debug)]
pub struct VsChainMap {
    pub from: VsComplex,
    pub to: VsComplex,
    pub maps: BTreeMap<i32, Matrix>,
}

impl VsChainMap {
    pub fn new(from: VsComplex, to: VsComplex, maps: BTreeMap<i32, Matrix>) -> Result<Self> {
        let f = VsChainMap { from, to, maps };
        f.validate()?;
        Ok(f)
    }

    pub fn map(&self, k: i32) -> Matrix {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.to.dim(k), self.from.dim(k)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.from.field != self.to.field {
            return Err(Error::Input("chain map between different fields".into()));
        }
        let field = &self.from.field;
        for (&k, m) in &self.maps {
            if m.rows() != self.to.dim(k) || m.cols() != self.from.dim(k) {
                return Err(Error::Input(format!(
                    "chain map at degree {k} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.to.dim(k),
                    self.from.dim(k)
                )));
            }
        }
        let degrees: BTreeSet<i32> = self
            .from
            .dims
            .keys()
            .chain(self.to.dims.keys())
            .copied()
            .collect();
        for &k in &degrees {
            let lhs = self.to.diff(k).mul(&self.map(k), field);
            let rhs = self.map(k - 1).mul(&self.from.diff(k), field);
            if lhs != rhs {
                return Err(Error::Input(format!(
                    "square at degree {k} does not commute: not a chain map"
                )));
            }
        }
        Ok(())
    }

    /// Mapping cone: `cone_k = from_{k−1} ⊕ to_k`.
    pub fn cone(&self) -> VsComplex {
        let field = self.from.field;
        let mut dims = BTreeMap::new();
        let degrees: BTreeSet<i32> = self
            .from
            .dims
            .keys()
            .map(|&k| k + 1)
            .chain(self.to.dims.keys().copied())
            .collect();
        for &k in &degrees {
            let d = self.from.dim(k - 1) + self.to.dim(k);
            if d > 0 {
                dims.insert(k, d);
            }
        }
        let mut diffs = BTreeMap::new();
        for &k in &degrees {
            let rows = self.from.dim(k - 2) + self.to.dim(k - 1);
            let cols = self.from.dim(k - 1) + self.to.dim(k);
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut d = Matrix::zeros(rows, cols);
            let dx = self.from.diff(k - 1);
            for i in 0..dx.rows() {
                for j in 0..dx.cols() {
                    d.set(i, j, field.neg(dx.get(i, j)));
                }
            }
            let f = self.map(k - 1);
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    d.set(self.from.dim(k - 2) + i, j, f.get(i, j).clone());
                }
            }
            let dy = self.to.diff(k);
            for i in 0..dy.rows() {
                for j in 0..dy.cols() {
                    d.set(
                        self.from.dim(k - 2) + i,
                        self.from.dim(k - 1) + j,
                        dy.get(i, j).clone(),
                    );
                }
            }
            diffs.insert(k, d);
        }
        VsComplex {
            field,
            dims,
            diffs,
        }
    }

    /// Quasi-isomorphism test by cone acyclicity.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_acyclic()
    }

    /// The induced matrix on homology in degree `k`, in the deterministic
    /// bases of [`VsComplex::homology_basis`].
    pub fn induced_on_homology(&self, k: i32) -> Matrix {
        let field = &self.from.field;
        let hb_from = self.from.homology_basis(k);
        let hb_to = self.to.homology_basis(k);
        let boundaries_to = self.to.diff(k + 1);
        let images = self.map(k).mul(&hb_from, field);
        // Express each image as boundary + homology-basis combination.
        let solve_in = boundaries_to.hstack(&hb_to);
        let mut out = Matrix::zeros(hb_to.cols(), hb_from.cols());
        if hb_from.cols() == 0 {
            return out;
        }
        let coeffs = solve_in
            .solve(&images, field)
            .expect("image of a cycle is a cycle");
        for i in 0..hb_to.cols() {
            for j in 0..hb_from.cols() {
                out.set(i, j, coeffs.get(boundaries_to.cols() + i, j).clone());
            }
        }
        out
    }

    /// Isomorphism on homology in every degree (a per-degree refinement of
    /// [`Self::is_quasi_iso`], exposing the matrices).
    pub fn homology_iso_degrees(&self) -> BTreeMap<i32, bool> {
        let degrees: BTreeSet<i32> = self
            .from
            .dims
            .keys()
            .chain(self.to.dims.keys())
            .copied()
            .collect();
        let mut out = BTreeMap::new();
        for &k in &degrees {
            let hf = self.from.homology().get(&k).copied().unwrap_or(0);
            let ht = self.to.homology().get(&k).copied().unwrap_or(0);
            let ok = if hf != ht {
                false
            } else if hf == 0 {
                true
            } else {
                let m = self.induced_on_homology(k);
                m.rank(&self.from.field) == hf
            };
            out.insert(k, ok);
        }
        out
    }
}

/// A bounded complex of poset modules.
#[derive(Clone, Debug)]
pub struct PosetComplex {
    poset: Arc<FinitePoset>,
    field: Field,
    terms: BTreeMap<i32, Arc<PosetModule>>,
    diffs: BTreeMap<i32, ModuleHom>,
}

impl PosetComplex {
    pub fn new(
        poset: Arc<FinitePoset>,
        field: Field,
        terms: BTreeMap<i32, Arc<PosetModule>>,
        diffs: BTreeMap<i32, ModuleHom>,
    ) -> Result<PosetComplex> {
        for m in terms.values() {
            if m.poset() != &poset {
                return Err(Error::Input("complex term over the wrong poset".into()));
            }
            if m.field() != field {
                return Err(Error::Input("complex term over the wrong field".into()));
            }
        }
        for (&k, d) in &diffs {
            let src = terms.get(&k);
            let tgt = terms.get(&(k - 1));
            let ok_src = src.map_or(d.source().is_zero(), |m| d.source().ranks() == m.ranks());
            let ok_tgt = tgt.map_or(d.target().is_zero(), |m| d.target().ranks() == m.ranks());
            if !ok_src || !ok_tgt {
                return Err(Error::Input(format!(
                    "differential at degree {k} does not match the terms"
                )));
            }
        }
        Ok(PosetComplex {
            poset,
            field,
            terms,
            diffs,
        })
    }

    /// A module placed in a single degree.
    pub fn concentrated(module: Arc<PosetModule>, degree: i32) -> PosetComplex {
        let poset = module.poset().clone();
        let field = module.field();
        let mut terms = BTreeMap::new();
        if !module.is_zero() {
            terms.insert(degree, module);
        }
        PosetComplex {
            poset,
            field,
            terms,
            diffs: BTreeMap::new(),
        }
    }

    pub fn empty(poset: Arc<FinitePoset>, field: Field) -> PosetComplex {
        PosetComplex {
            poset,
            field,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<i32, Arc<PosetModule>> {
        &self.terms
    }

    pub fn term(&self, k: i32) -> Option<&Arc<PosetModule>> {
        self.terms.get(&k)
    }

    pub fn diffs(&self) -> &BTreeMap<i32, ModuleHom> {
        &self.diffs
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.terms.keys().copied().collect()
    }

    pub fn rank_at(&self, k: i32, p: usize) -> usize {
        self.terms.get(&k).map_or(0, |m| m.rank(p))
    }

    /// Validate terms (path independence), differentials (hom property) and
    /// `d∘d = 0` at every element.
    pub fn validate(&self) -> Result<()> {
        for (k, m) in &self.terms {
            if !m.is_valid() {
                return Err(Error::Input(format!(
                    "term at degree {k} violates path independence"
                )));
            }
        }
        for (k, d) in &self.diffs {
            d.validate()
                .map_err(|e| Error::Input(format!("differential at degree {k}: {e}")))?;
        }
        for p in 0..self.poset.len() {
            self.at_element(p).validate()?;
        }
        Ok(())
    }

    /// The vector-space complex of values at one poset element.
    pub fn at_element(&self, p: usize) -> VsComplex {
        let mut dims = BTreeMap::new();
        for (&k, m) in &self.terms {
            dims.insert(k, m.rank(p));
        }
        let mut diffs = BTreeMap::new();
        for (&k, d) in &self.diffs {
            diffs.insert(k, d.at(p).clone());
        }
        VsComplex {
            field: self.field,
            dims,
            diffs,
        }
    }

    pub fn homology_at(&self, p: usize) -> BTreeMap<i32, usize> {
        self.at_element(p).homology()
    }

    /// Dual complex over the opposite poset; degree `k` moves to `−k`.
    pub fn dualize(&self) -> PosetComplex {
        let op = Arc::new(self.poset.opposite());
        let mut terms = BTreeMap::new();
        for (&k, m) in &self.terms {
            terms.insert(-k, Arc::new(m.dualize()));
        }
        let mut diffs = BTreeMap::new();
        for (&k, d) in &self.diffs {
            // d_k : C_k → C_{k−1} dualizes to a map at degree −(k−1).
            diffs.insert(-(k - 1), d.dualize());
        }
        PosetComplex {
            poset: op,
            field: self.field,
            terms,
            diffs,
        }
    }
}

/// A degreewise hom of poset complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub from: PosetComplex,
    pub to: PosetComplex,
    pub maps: BTreeMap<i32, ModuleHom>,
}

impl ChainMap {
    pub fn validate(&self) -> Result<()> {
        for (k, f) in &self.maps {
            f.validate()
                .map_err(|e| Error::Input(format!("chain map at degree {k}: {e}")))?;
        }
        for p in 0..self.from.poset().len() {
            self.at_element(p).validate()?;
        }
        Ok(())
    }

    pub fn at_element(&self, p: usize) -> VsChainMap {
        let mut maps = BTreeMap::new();
        for (&k, f) in &self.maps {
            maps.insert(k, f.at(p).clone());
        }
        VsChainMap {
            from: self.from.at_element(p),
            to: self.to.at_element(p),
            maps,
        }
    }

    /// Quasi-isomorphism at every poset element (cone acyclicity pointwise).
    pub fn is_quasi_iso(&self) -> Result<bool> {
        self.validate()?;
        for p in 0..self.from.poset().len() {
            if !self.at_element(p).is_quasi_iso() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
pub struct ComplexJson {
    pub terms: BTreeMap<String, ModuleJson>,
    #[serde(default)]
    pub differentials: BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>,
}

impl PosetComplex {
    pub fn to_json(&self) -> ComplexJson {
        let terms = self
            .terms
            .iter()
            .map(|(k, m)| (k.to_string(), m.to_json()))
            .collect();
        let differentials = self
            .diffs
            .iter()
            .map(|(k, d)| {
                let comps = (0..self.poset.len())
                    .map(|p| (self.poset.name(p).to_string(), d.at(p).to_strings()))
                    .collect();
                (k.to_string(), comps)
            })
            .collect();
        ComplexJson {
            terms,
            differentials,
        }
    }

    pub fn from_json(
        j: &ComplexJson,
        poset: &Arc<FinitePoset>,
        field: Field,
    ) -> Result<PosetComplex> {
        let mut terms: BTreeMap<i32, Arc<PosetModule>> = BTreeMap::new();
        for (k, mj) in &j.terms {
            let deg: i32 = k
                .parse()
                .map_err(|_| Error::Input(format!("invalid degree `{k}`")))?;
            terms.insert(deg, Arc::new(PosetModule::from_json(mj, poset, field)?));
        }
        let zero = Arc::new(PosetModule::zero(poset.clone(), field));
        let mut diffs = BTreeMap::new();
        for (k, comps) in &j.differentials {
            let deg: i32 = k
                .parse()
                .map_err(|_| Error::Input(format!("invalid degree `{k}`")))?;
            let src = terms.get(&deg).cloned().unwrap_or_else(|| zero.clone());
            let tgt = terms
                .get(&(deg - 1))
                .cloned()
                .unwrap_or_else(|| zero.clone());
            let mut components = Vec::with_capacity(poset.len());
            for p in 0..poset.len() {
                let shape = (tgt.rank(p), src.rank(p));
                let m = match comps.get(poset.name(p)) {
                    Some(rows) => Matrix::from_strings(rows, shape, &field)?,
                    None => Matrix::zeros(shape.0, shape.1),
                };
                components.push(m);
            }
            diffs.insert(deg, ModuleHom::new(src, tgt, components)?);
        }
        PosetComplex::new(poset.clone(), field, terms, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn vs(field: Field, dims: &[(i32, usize)], diffs: Vec<(i32, Matrix)>) -> VsComplex {
        VsComplex::new(
            field,
            dims.iter().copied().collect(),
            diffs.into_iter().collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_term_homology() {
        let q = Field::Rational;
        // 0 → k →(1) k → 0 is acyclic.
        let iso = vs(
            q,
            &[(1, 1), (0, 1)],
            vec![(1, Matrix::from_rows(vec![vec![rat(1)]]))],
        );
        assert!(iso.is_acyclic());
        // 0 → k →(0) k → 0 has homology 1, 1.
        let zero = vs(
            q,
            &[(1, 1), (0, 1)],
            vec![(1, Matrix::from_rows(vec![vec![rat(0)]]))],
        );
        let h = zero.homology();
        assert_eq!(h.get(&0), Some(&1));
        assert_eq!(h.get(&1), Some(&1));
    }

    #[test]
    fn koszul_square_is_exact() {
        let q = Field::Rational;
        // 0 → k →(1,1)ᵀ k² →(1,−1) k → 0
        let d2 = Matrix::from_rows(vec![vec![rat(1)], vec![rat(1)]]);
        let d1 = Matrix::from_rows(vec![vec![rat(1), rat(-1)]]);
        let c = vs(q, &[(2, 1), (1, 2), (0, 1)], vec![(2, d2), (1, d1)]);
        assert!(c.homology().is_empty());
    }

    #[test]
    fn quasi_iso_via_cone() {
        let q = Field::Rational;
        let acyclic = vs(
            q,
            &[(1, 1), (0, 1)],
            vec![(1, Matrix::from_rows(vec![vec![rat(1)]]))],
        );
        // Zero map between acyclic complexes is a quasi-isomorphism.
        let zero_map = VsChainMap::new(acyclic.clone(), acyclic.clone(), BTreeMap::new()).unwrap();
        assert!(zero_map.is_quasi_iso());

        // Zero endomorphism of k in degree 0 is not.
        let point = vs(q, &[(0, 1)], vec![]);
        let z = VsChainMap::new(point.clone(), point.clone(), BTreeMap::new()).unwrap();
        assert!(!z.is_quasi_iso());

        // Identity always is.
        let id = VsChainMap::new(
            point.clone(),
            point,
            [(0, Matrix::identity(1))].into_iter().collect(),
        )
        .unwrap();
        assert!(id.is_quasi_iso());
    }

    #[test]
    fn quasi_iso_stable_under_chain_isos() {
        let q = Field::Rational;
        let point = vs(q, &[(0, 2)], vec![]);
        let f = VsChainMap::new(
            point.clone(),
            point.clone(),
            [(0, Matrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        assert!(f.is_quasi_iso());
        let iso = VsChainMap::new(
            point.clone(),
            point.clone(),
            [(0, Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]))]
                .into_iter()
                .collect(),
        )
        .unwrap();
        assert!(iso.is_quasi_iso());
        // Composition with an iso preserves the property.
        let comp = VsChainMap::new(
            point.clone(),
            point,
            [(0, iso.map(0).mul(&f.map(0), &q))].into_iter().collect(),
        )
        .unwrap();
        assert!(comp.is_quasi_iso());
    }

    #[test]
    fn poset_complex_homology_at_elements() {
        // Chain a < b < c, module k at b resolved by upsets, checked later;
        // here just d² and pointwise evaluation.
        let poset = Arc::new(FinitePoset::chain(3));
        let field = Field::Rational;
        let m = Arc::new(
            PosetModule::new(
                poset.clone(),
                field,
                vec![0, 1, 0],
                vec![Matrix::zeros(1, 0), Matrix::zeros(0, 1)],
            )
            .unwrap(),
        );
        let c = PosetComplex::concentrated(m, 0);
        assert!(c.validate().is_ok());
        assert_eq!(c.homology_at(1).get(&0), Some(&1));
        assert!(c.homology_at(0).is_empty());
        let d = c.dualize();
        assert!(d.validate().is_ok());
        assert_eq!(d.homology_at(1).get(&0), Some(&1));
    }
}
