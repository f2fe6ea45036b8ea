//! Finite-dimensional modules over a finite poset, presented by ranks and
//! matrices on the generating edges. Full transitions are derived once and
//! cached; validation checks path independence over all comparable triples,
//! not just minimal squares, which is required for arbitrary finite posets.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poset::FinitePoset;

/// Violations of path independence, reported as `(p, m, q)` triples where
/// the composite through `m` disagrees with the canonical transition.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, poset: &FinitePoset) -> Vec<String> {
        self.violations
            .iter()
            .map(|&(p, m, q)| {
                format!(
                    "transitions through `{}` break path independence from `{}` to `{}`",
                    poset.name(m),
                    poset.name(p),
                    poset.name(q)
                )
            })
            .collect()
    }
}

struct TransitionCache {
    map: BTreeMap<(usize, usize), Matrix>,
    report: ValidationReport,
}

#[derive(Clone)]
pub struct PosetModule {
    poset: Arc<FinitePoset>,
    field: Field,
    ranks: Vec<usize>,
    edges: Vec<Matrix>,
    cache: Arc<OnceLock<TransitionCache>>,
}

impl std::fmt::Debug for PosetModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PosetModule(ranks={:?})", self.ranks)
    }
}

impl PosetModule {
    /// Shape checks happen here (dimension-inconsistent matrices are an input
    /// error, distinct from a path-independence failure).
    pub fn new(
        poset: Arc<FinitePoset>,
        field: Field,
        ranks: Vec<usize>,
        edges: Vec<Matrix>,
    ) -> Result<PosetModule> {
        if ranks.len() != poset.len() {
            return Err(Error::Input(format!(
                "{} ranks for {} elements",
                ranks.len(),
                poset.len()
            )));
        }
        if edges.len() != poset.hasse().len() {
            return Err(Error::Input(format!(
                "{} edge maps for {} edges",
                edges.len(),
                poset.hasse().len()
            )));
        }
        for (k, &(p, q)) in poset.hasse().iter().enumerate() {
            let m = &edges[k];
            if m.rows() != ranks[q] || m.cols() != ranks[p] {
                return Err(Error::Input(format!(
                    "edge map {} -> {} has shape {}x{}, expected {}x{}",
                    poset.name(p),
                    poset.name(q),
                    m.rows(),
                    m.cols(),
                    ranks[q],
                    ranks[p]
                )));
            }
        }
        Ok(PosetModule {
            poset,
            field,
            ranks,
            edges,
            cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn zero(poset: Arc<FinitePoset>, field: Field) -> PosetModule {
        let ranks = vec![0; poset.len()];
        let edges = poset
            .hasse()
            .iter()
            .map(|_| Matrix::zeros(0, 0))
            .collect();
        PosetModule::new(poset, field, ranks, edges).expect("zero module is well-formed")
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self, p: usize) -> usize {
        self.ranks[p]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn edge_map(&self, edge: usize) -> &Matrix {
        &self.edges[edge]
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    fn cache(&self) -> &TransitionCache {
        self.cache.get_or_init(|| self.compute_transitions())
    }

    fn compute_transitions(&self) -> TransitionCache {
        let poset = &self.poset;
        let field = &self.field;
        let mut map: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        let mut violations: Vec<(usize, usize, usize)> = Vec::new();
        for p in 0..poset.len() {
            map.insert((p, p), Matrix::identity(self.ranks[p]));
        }
        // Fill targets along the linear extension; for each (p, q) compare
        // every incoming-edge route and keep the first as canonical.
        for &q in poset.linear_extension() {
            for p in 0..poset.len() {
                if p == q || !poset.leq(p, q) {
                    continue;
                }
                let mut canonical: Option<Matrix> = None;
                for e in poset.incoming_edges(q) {
                    let (m, _) = poset.hasse()[e];
                    if !poset.leq(p, m) {
                        continue;
                    }
                    let candidate = self.edges[e].mul(&map[&(p, m)], field);
                    match &canonical {
                        None => canonical = Some(candidate),
                        Some(c) => {
                            if *c != candidate {
                                violations.push((p, m, q));
                            }
                        }
                    }
                }
                let t = canonical.unwrap_or_else(|| {
                    // p < q with no route can only happen through an edge
                    // (p, q) itself being absent while closure says p ≤ q,
                    // which the closure construction rules out.
                    unreachable!("comparable pair without a generating route")
                });
                map.insert((p, q), t);
            }
        }
        // Exhaustive triple check against the canonical transitions.
        for &(p, q) in poset.comparable_pairs().iter() {
            for m in 0..poset.len() {
                if m == p || m == q || !poset.leq(p, m) || !poset.leq(m, q) {
                    continue;
                }
                let composite = map[&(m, q)].mul(&map[&(p, m)], field);
                if composite != map[&(p, q)] {
                    violations.push((p, m, q));
                }
            }
        }
        violations.sort_unstable();
        violations.dedup();
        TransitionCache {
            map,
            report: ValidationReport { violations },
        }
    }

    /// Path-independence report; empty iff the module is valid.
    pub fn validate(&self) -> ValidationReport {
        self.cache().report.clone()
    }

    pub fn is_valid(&self) -> bool {
        self.cache().report.is_valid()
    }

    /// Composite transition `M_p → M_q` (identity when `p = q`).
    pub fn transition(&self, p: usize, q: usize) -> Result<Matrix> {
        if !self.poset.leq(p, q) {
            return Err(Error::NotComparable(
                self.poset.name(p).to_string(),
                self.poset.name(q).to_string(),
            ));
        }
        let cache = self.cache();
        if !cache.report.is_valid() {
            return Err(Error::Input(
                "transitions of an invalid module are ill-defined".into(),
            ));
        }
        Ok(cache.map[&(p, q)].clone())
    }

    /// Same data over the opposite poset, with transposed edge maps.
    pub fn dualize(&self) -> PosetModule {
        let op = Arc::new(self.poset.opposite());
        let edges = self.edges.iter().map(|m| m.transpose()).collect();
        PosetModule::new(op, self.field, self.ranks.clone(), edges)
            .expect("dual of a well-formed module is well-formed")
    }
}

/// A degreewise linear map commuting with the structure transitions.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Arc<PosetModule>,
    target: Arc<PosetModule>,
    components: Vec<Matrix>,
}

impl ModuleHom {
    pub fn new(
        source: Arc<PosetModule>,
        target: Arc<PosetModule>,
        components: Vec<Matrix>,
    ) -> Result<ModuleHom> {
        if source.poset() != target.poset() {
            return Err(Error::Input("hom between modules over different posets".into()));
        }
        if source.field() != target.field() {
            return Err(Error::Input("hom between modules over different fields".into()));
        }
        if components.len() != source.poset().len() {
            return Err(Error::Input("one component per poset element required".into()));
        }
        for (p, c) in components.iter().enumerate() {
            if c.rows() != target.rank(p) || c.cols() != source.rank(p) {
                return Err(Error::Input(format!(
                    "component at `{}` has shape {}x{}, expected {}x{}",
                    source.poset().name(p),
                    c.rows(),
                    c.cols(),
                    target.rank(p),
                    source.rank(p)
                )));
            }
        }
        Ok(ModuleHom {
            source,
            target,
            components,
        })
    }

    pub fn zero(source: Arc<PosetModule>, target: Arc<PosetModule>) -> Result<ModuleHom> {
        let components = (0..source.poset().len())
            .map(|p| Matrix::zeros(target.rank(p), source.rank(p)))
            .collect();
        ModuleHom::new(source, target, components)
    }

    pub fn identity(module: &Arc<PosetModule>) -> ModuleHom {
        let components = (0..module.poset().len())
            .map(|p| Matrix::identity(module.rank(p)))
            .collect();
        ModuleHom::new(module.clone(), module.clone(), components)
            .expect("identity hom is well-formed")
    }

    pub fn source(&self) -> &Arc<PosetModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PosetModule> {
        &self.target
    }

    pub fn at(&self, p: usize) -> &Matrix {
        &self.components[p]
    }

    /// Check commutation with the structure maps over every generating edge
    /// (composites then commute automatically).
    pub fn validate(&self) -> Result<()> {
        let field = &self.source.field();
        for (k, &(p, q)) in self.source.poset().hasse().iter().enumerate() {
            let lhs = self.components[q].mul(self.source.edge_map(k), field);
            let rhs = self.target.edge_map(k).mul(&self.components[p], field);
            if lhs != rhs {
                return Err(Error::Input(format!(
                    "hom does not commute with the transition {} -> {}",
                    self.source.poset().name(p),
                    self.source.poset().name(q)
                )));
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &ModuleHom) -> Result<ModuleHom> {
        if inner.target.ranks() != self.source.ranks() || inner.target.poset() != self.source.poset()
        {
            return Err(Error::Input("composition shape mismatch".into()));
        }
        let field = &self.source.field();
        let components = (0..self.components.len())
            .map(|p| self.components[p].mul(inner.at(p), field))
            .collect();
        ModuleHom::new(inner.source.clone(), self.target.clone(), components)
    }

    pub fn sub(&self, other: &ModuleHom) -> Result<ModuleHom> {
        let field = &self.source.field();
        let components = (0..self.components.len())
            .map(|p| self.components[p].sub(other.at(p), field))
            .collect();
        ModuleHom::new(self.source.clone(), self.target.clone(), components)
    }

    pub fn is_zero(&self) -> bool {
        let field = self.source.field();
        self.components.iter().all(|c| c.is_zero(&field))
    }

    /// Dual hom between the dualized modules (direction reverses).
    pub fn dualize(&self) -> ModuleHom {
        let source = Arc::new(self.target.dualize());
        let target = Arc::new(self.source.dualize());
        let components = self.components.iter().map(|c| c.transpose()).collect();
        ModuleHom::new(source, target, components).expect("dual hom is well-formed")
    }

    /// The image as a submodule of the target, with its inclusion.
    pub fn image(&self) -> Result<(Arc<PosetModule>, ModuleHom)> {
        let poset = self.target.poset().clone();
        let field = self.target.field();
        let bases: Vec<Matrix> = (0..poset.len())
            .map(|q| {
                let m = self.at(q);
                let (_, pivots) = m.rref(&field);
                let rows: Vec<usize> = (0..m.rows()).collect();
                // rref pivots of the matrix pick independent columns whose
                // span is the column space.
                m.select(&rows, &pivots)
            })
            .collect();
        let ranks: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let edges: Result<Vec<Matrix>> = poset
            .hasse()
            .iter()
            .map(|&(p, q)| {
                let transported = self.target.transition(p, q)?.mul(&bases[p], &field);
                bases[q]
                    .solve(&transported, &field)
                    .ok_or_else(|| Error::Internal("transition leaves the image".into()))
            })
            .collect();
        let module = Arc::new(PosetModule::new(poset, field, ranks, edges?)?);
        let incl = ModuleHom::new(module.clone(), self.target.clone(), bases)?;
        Ok((module, incl))
    }

    /// The cokernel of this hom, with the projection from the target.
    pub fn cokernel(&self) -> Result<(Arc<PosetModule>, ModuleHom)> {
        let poset = self.target.poset().clone();
        let field = self.target.field();
        let mut projs: Vec<Matrix> = Vec::with_capacity(poset.len());
        let mut embeds: Vec<Matrix> = Vec::with_capacity(poset.len());
        for q in 0..poset.len() {
            let m = self.at(q);
            let n = m.rows();
            let pivot_rows = m.pivot_rows_of_column_span(&field);
            let complement: Vec<usize> =
                (0..n).filter(|i| !pivot_rows.contains(i)).collect();
            // Coordinates on the standard complement of the image.
            let rows: Vec<usize> = (0..n).collect();
            let im_basis = {
                let (_, pivots) = m.rref(&field);
                m.select(&rows, &pivots)
            };
            let mut embed = Matrix::zeros(n, complement.len());
            for (j, &i) in complement.iter().enumerate() {
                embed.set(i, j, num_traits::One::one());
            }
            let solve_in = im_basis.hstack(&embed);
            let coords = solve_in
                .solve(&Matrix::identity(n), &field)
                .ok_or_else(|| Error::Internal("image basis does not span with complement".into()))?;
            let mut proj = Matrix::zeros(complement.len(), n);
            for r in 0..complement.len() {
                for c in 0..n {
                    proj.set(r, c, coords.get(im_basis.cols() + r, c).clone());
                }
            }
            projs.push(proj);
            embeds.push(embed);
        }
        let ranks: Vec<usize> = projs.iter().map(Matrix::rows).collect();
        let edges: Result<Vec<Matrix>> = poset
            .hasse()
            .iter()
            .map(|&(p, q)| {
                Ok(projs[q]
                    .mul(&self.target.transition(p, q)?, &field)
                    .mul(&embeds[p], &field))
            })
            .collect();
        let module = Arc::new(PosetModule::new(poset, field, ranks, edges?)?);
        let proj = ModuleHom::new(self.target.clone(), module.clone(), projs)?;
        Ok((module, proj))
    }
}

#[derive(Serialize, Deserialize)]
pub struct ModuleJson {
    pub rank: BTreeMap<String, usize>,
    pub edges: BTreeMap<String, Vec<Vec<String>>>,
}

impl PosetModule {
    pub fn to_json(&self) -> ModuleJson {
        let rank = self
            .poset
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), self.ranks[i]))
            .collect();
        let edges = self
            .poset
            .hasse()
            .iter()
            .enumerate()
            .map(|(k, &(p, q))| {
                (
                    format!("{}->{}", self.poset.name(p), self.poset.name(q)),
                    self.edges[k].to_strings(),
                )
            })
            .collect();
        ModuleJson { rank, edges }
    }

    pub fn from_json(
        j: &ModuleJson,
        poset: &Arc<FinitePoset>,
        field: Field,
    ) -> Result<PosetModule> {
        let mut ranks = vec![0usize; poset.len()];
        for (name, r) in &j.rank {
            let i = poset
                .index_of(name)
                .ok_or_else(|| Error::Input(format!("rank for unknown element `{name}`")))?;
            ranks[i] = *r;
        }
        let mut edges = Vec::with_capacity(poset.hasse().len());
        for &(p, q) in poset.hasse() {
            let key = format!("{}->{}", poset.name(p), poset.name(q));
            let shape = (ranks[q], ranks[p]);
            let m = match j.edges.get(&key) {
                Some(rows) => Matrix::from_strings(rows, shape, &field)?,
                None => {
                    if shape.0 == 0 || shape.1 == 0 {
                        Matrix::zeros(shape.0, shape.1)
                    } else {
                        return Err(Error::Input(format!("missing edge map `{key}`")));
                    }
                }
            };
            edges.push(m);
        }
        for key in j.edges.keys() {
            let valid = poset
                .hasse()
                .iter()
                .any(|&(p, q)| format!("{}->{}", poset.name(p), poset.name(q)) == *key);
            if !valid {
                return Err(Error::Input(format!("edge map for unknown edge `{key}`")));
            }
        }
        PosetModule::new(poset.clone(), field, ranks, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn chain_module(maps: &[i64]) -> PosetModule {
        let poset = Arc::new(FinitePoset::chain(maps.len() + 1));
        let ranks = vec![1; maps.len() + 1];
        let edges = maps
            .iter()
            .map(|&v| Matrix::from_rows(vec![vec![rat(v)]]))
            .collect();
        PosetModule::new(poset, Field::Rational, ranks, edges).unwrap()
    }

    #[test]
    fn chain_is_valid_and_composes() {
        let m = chain_module(&[2, 3]);
        assert!(m.validate().is_valid());
        let t = m.transition(0, 2).unwrap();
        assert_eq!(t.get(0, 0), &rat(6));
        assert_eq!(m.transition(1, 1).unwrap(), Matrix::identity(1));
        assert!(m.transition(2, 0).is_err());
    }

    #[test]
    fn grid_with_broken_square_reports_triple() {
        // a < b1, b2 < c with three identity maps and one zero map.
        let poset = Arc::new(
            FinitePoset::new_named(
                vec!["a".into(), "b1".into(), "b2".into(), "c".into()],
                &[
                    ("a".into(), "b1".into()),
                    ("a".into(), "b2".into()),
                    ("b1".into(), "c".into()),
                    ("b2".into(), "c".into()),
                ],
            )
            .unwrap(),
        );
        let one = || Matrix::from_rows(vec![vec![rat(1)]]);
        let zero = || Matrix::from_rows(vec![vec![rat(0)]]);
        let m = PosetModule::new(
            poset.clone(),
            Field::Rational,
            vec![1, 1, 1, 1],
            vec![one(), one(), one(), zero()],
        )
        .unwrap();
        let report = m.validate();
        assert!(!report.is_valid());
        let a = 0;
        let c = 3;
        assert!(report
            .violations
            .iter()
            .any(|&(p, _, q)| p == a && q == c));
    }

    #[test]
    fn all_zero_ranks_are_valid() {
        let m = PosetModule::zero(Arc::new(FinitePoset::chain(3)), Field::Rational);
        assert!(m.validate().is_valid());
        assert!(m.is_zero());
    }

    #[test]
    fn shape_mismatch_is_input_error() {
        let poset = Arc::new(FinitePoset::chain(2));
        let bad = PosetModule::new(
            poset,
            Field::Rational,
            vec![1, 2],
            vec![Matrix::identity(1)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn dualize_transposes_and_involutes() {
        let m = chain_module(&[5]);
        let d = m.dualize();
        assert!(d.poset().leq(1, 0));
        assert_eq!(d.edge_map(0).get(0, 0), &rat(5));
        let dd = m.dualize().dualize();
        assert_eq!(dd.ranks(), m.ranks());
        assert_eq!(dd.edge_map(0), m.edge_map(0));
    }

    #[test]
    fn hom_validation() {
        let m = chain_module(&[2]);
        let arc = Arc::new(m);
        let id = ModuleHom::identity(&arc);
        assert!(id.validate().is_ok());
        // A non-commuting component: multiply by 1 at element 0, by 3 at 1.
        let bad = ModuleHom::new(
            arc.clone(),
            arc.clone(),
            vec![Matrix::identity(1), Matrix::from_rows(vec![vec![rat(3)]])],
        )
        .unwrap();
        assert!(bad.validate().is_err());
    }
}
