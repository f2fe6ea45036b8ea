//! Finite posets presented by generating (Hasse-style) edges.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite poset: elements plus generating order relations. The full order
/// is the reflexive–transitive closure, which must be antisymmetric (the
/// generating digraph is required to be acyclic).
#[derive(Clone, Debug)]
pub struct FinitePoset {
    elements: Vec<String>,
    hasse: Vec<(usize, usize)>,
    leq: Vec<bool>,
    topo: Vec<usize>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.hasse == other.hasse
    }
}
impl Eq for FinitePoset {}

impl FinitePoset {
    pub fn new(elements: Vec<String>, hasse: Vec<(usize, usize)>) -> Result<FinitePoset> {
        let n = elements.len();
        {
            let mut seen = BTreeSet::new();
            for e in &elements {
                if !seen.insert(e) {
                    return Err(Error::Input(format!("duplicate element `{e}`")));
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut seen = BTreeSet::new();
        for &(p, q) in &hasse {
            if p >= n || q >= n {
                return Err(Error::Input(format!("edge ({p}, {q}) out of range")));
            }
            if p == q {
                return Err(Error::Input(format!(
                    "self-loop on `{}` is not allowed",
                    elements[p]
                )));
            }
            if seen.insert((p, q)) {
                edges.push((p, q));
            }
        }

        // Kahn's algorithm with minimal-index tie-breaking: deterministic
        // linear extension, and a cycle check.
        let mut indeg = vec![0usize; n];
        for &(_, q) in &edges {
            indeg[q] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        let mut indeg_work = indeg.clone();
        while let Some(&next) = ready.iter().next() {
            ready.remove(&next);
            topo.push(next);
            for &(p, q) in &edges {
                if p == next {
                    indeg_work[q] -= 1;
                    if indeg_work[q] == 0 {
                        ready.insert(q);
                    }
                }
            }
        }
        if topo.len() != n {
            return Err(Error::Input("order generators contain a cycle".into()));
        }

        // Reflexive–transitive closure, filling along the linear extension.
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &q in &topo {
            let incoming: Vec<usize> = edges.iter().filter(|&&(_, t)| t == q).map(|&(s, _)| s).collect();
            for p in 0..n {
                if p != q && incoming.iter().any(|&m| leq[p * n + m]) {
                    leq[p * n + q] = true;
                }
            }
        }

        Ok(FinitePoset {
            elements,
            hasse: edges,
            leq,
            topo,
        })
    }

    pub fn new_named(elements: Vec<String>, hasse: &[(String, String)]) -> Result<FinitePoset> {
        let index = |name: &str| -> Result<usize> {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::Input(format!("unknown element `{name}`")))
        };
        let edges: Result<Vec<(usize, usize)>> = hasse
            .iter()
            .map(|(p, q)| Ok((index(p)?, index(q)?)))
            .collect();
        FinitePoset::new(elements, edges?)
    }

    /// The chain `e0 < e1 < … < e(n−1)`.
    pub fn chain(n: usize) -> FinitePoset {
        let elements = (0..n).map(|i| format!("e{i}")).collect();
        let hasse = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::new(elements, hasse).expect("chain is a valid poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, p: usize) -> &str {
        &self.elements[p]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p * self.elements.len() + q]
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    /// Deterministic linear extension (Kahn with minimal-index choice).
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn up_set(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.leq(p, q)).collect()
    }

    pub fn down_set(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.leq(q, p)).collect()
    }

    /// Indices into `hasse` of edges ending at `q`.
    pub fn incoming_edges(&self, q: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .enumerate()
            .filter(|(_, &(_, t))| t == q)
            .map(|(i, _)| i)
            .collect()
    }

    /// Same elements, reversed order; edge k maps to reversed edge k.
    pub fn opposite(&self) -> FinitePoset {
        let hasse = self.hasse.iter().map(|&(p, q)| (q, p)).collect();
        FinitePoset::new(self.elements.clone(), hasse).expect("opposite of a poset is a poset")
    }

    /// All pairs `(p, q)` with `p ≤ q`.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.leq(p, q))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub hasse: Vec<[String; 2]>,
}

impl FinitePoset {
    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.elements.clone(),
            hasse: self
                .hasse
                .iter()
                .map(|&(p, q)| [self.elements[p].clone(), self.elements[q].clone()])
                .collect(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<FinitePoset> {
        let pairs: Vec<(String, String)> = j
            .hasse
            .iter()
            .map(|[p, q]| (p.clone(), q.clone()))
            .collect();
        FinitePoset::new_named(j.elements.clone(), &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_order() {
        let c = FinitePoset::chain(3);
        assert!(c.leq(0, 2));
        assert!(c.leq(1, 1));
        assert!(!c.leq(2, 0));
        assert_eq!(c.linear_extension(), &[0, 1, 2]);
        assert_eq!(c.up_set(1), vec![1, 2]);
        assert_eq!(c.down_set(1), vec![0, 1]);
    }

    #[test]
    fn cycle_rejected() {
        assert!(FinitePoset::new(
            vec!["a".into(), "b".into()],
            vec![(0, 1), (1, 0)]
        )
        .is_err());
        assert!(FinitePoset::new(vec!["a".into()], vec![(0, 0)]).is_err());
        assert!(FinitePoset::new(vec!["a".into(), "a".into()], vec![]).is_err());
    }

    #[test]
    fn opposite_flips_order() {
        let grid = FinitePoset::new_named(
            vec!["00".into(), "01".into(), "10".into(), "11".into()],
            &[
                ("00".into(), "01".into()),
                ("00".into(), "10".into()),
                ("01".into(), "11".into()),
                ("10".into(), "11".into()),
            ],
        )
        .unwrap();
        assert!(grid.leq(0, 3));
        assert!(!grid.leq(1, 2));
        let op = grid.opposite();
        assert!(op.leq(3, 0));
        assert!(!op.leq(0, 3));
        assert_eq!(op.opposite(), grid);
    }
}
