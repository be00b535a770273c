//! Fully enumerated permutation groups with index-based arithmetic.
//!
//! Elements are stored in breadth-first closure order (identity first,
//! generators applied in the order given), so every index is reproducible.
//! Products are resolved either through a precomputed Cayley table (small
//! groups) or by looking up the images of a base of the action.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ORDER_CAP: usize = 25_000;
/// Groups up to this order get a full multiplication table.
pub const DEFAULT_TABLE_CAP: usize = 2_500;

/// Lie-type metadata attached by the PSL constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LieInfo {
    /// Matrix dimension (2 for PSL(2,q), 3 for PSL(3,q)).
    pub dimension: u32,
    pub q: u32,
    pub characteristic: u32,
}

#[derive(Debug, Clone)]
enum Lookup {
    /// Base images packed as a mixed-radix integer.
    Packed(HashMap<u128, u32>),
    Full(HashMap<Vec<u32>, u32>),
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    label: String,
    degree: usize,
    elements: Vec<Permutation>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    lie: Option<LieInfo>,
    base: Vec<u32>,
    lookup: Lookup,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Breadth-first closure of `generators`, failing once more than `cap`
    /// elements have been found.
    pub fn closure(label: impl Into<String>, generators: &[Permutation], cap: usize) -> Result<Self> {
        Self::closure_with_table_cap(label, generators, cap, DEFAULT_TABLE_CAP)
    }

    pub fn closure_with_table_cap(
        label: impl Into<String>,
        generators: &[Permutation],
        cap: usize,
        table_cap: usize,
    ) -> Result<Self> {
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(1);
        let gens: Vec<Permutation> = generators
            .iter()
            .map(|g| {
                if g.degree() != degree {
                    Err(Error::DegreeMismatch {
                        expected: degree,
                        found: g.degree(),
                    })
                } else {
                    Ok(g.clone())
                }
            })
            .collect::<Result<_>>()?;

        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = elements[x].then(g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded {
                            cap,
                            what: "group order".into(),
                        });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        drop(index);

        let base = compute_base(&elements, degree);
        let lookup = build_lookup(&elements, &base, degree);
        let mut group = FiniteGroup {
            label: label.into(),
            degree,
            elements,
            inverse,
            generators,
            lie: None,
            base,
            lookup,
            table: None,
        };
        if group.order() <= table_cap {
            group.table = Some(group.build_table());
        }
        Ok(group)
    }

    fn build_table(&self) -> Vec<u32> {
        use rayon::prelude::*;
        let n = self.order();
        let mut table = vec![0u32; n * n];
        table.par_chunks_mut(n).enumerate().for_each(|(a, row)| {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = self.mul_by_base(a as u32, b as u32);
            }
        });
        table
    }

    pub(crate) fn with_lie(mut self, lie: LieInfo) -> Self {
        self.lie = Some(lie);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn lie(&self) -> Option<LieInfo> {
        self.lie
    }

    pub fn characteristic(&self) -> Option<u32> {
        self.lie.map(|l| l.characteristic)
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// Product `ab` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.mul_by_base(a, b),
        }
    }

    fn mul_by_base(&self, a: u32, b: u32) -> u32 {
        let pa = &self.elements[a as usize];
        let pb = &self.elements[b as usize];
        match &self.lookup {
            Lookup::Packed(map) => {
                let mut key = 0u128;
                for &beta in self.base.iter().rev() {
                    key = key * self.degree as u128 + pb.apply(pa.apply(beta)) as u128;
                }
                map[&key]
            }
            Lookup::Full(map) => {
                let key: Vec<u32> = self.base.iter().map(|&beta| pb.apply(pa.apply(beta))).collect();
                map[&key]
            }
        }
    }

    /// Index of an arbitrary permutation, if it is a group element.
    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        let found = match &self.lookup {
            Lookup::Packed(map) => {
                let key = self
                    .base
                    .iter()
                    .rev()
                    .fold(0u128, |k, &beta| k * self.degree as u128 + p.apply(beta) as u128);
                map.get(&key).copied()
            }
            Lookup::Full(map) => {
                let key: Vec<u32> = self.base.iter().map(|&beta| p.apply(beta)).collect();
                map.get(&key).copied()
            }
        }?;
        (self.elements[found as usize] == *p).then_some(found)
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: u32, e: usize) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: u32) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }
}

/// Greedy base: repeatedly fix a point moved by some surviving element
/// until only the identity fixes the whole sequence.
fn compute_base(elements: &[Permutation], degree: usize) -> Vec<u32> {
    let mut alive: Vec<usize> = (1..elements.len()).collect();
    let mut base = Vec::new();
    while let Some(&first) = alive.first() {
        let moved = (0..degree as u32)
            .find(|&p| elements[first].apply(p) != p)
            .expect("non-identity element moves a point");
        base.push(moved);
        alive.retain(|&e| elements[e].apply(moved) == moved);
    }
    if base.is_empty() && degree > 0 {
        base.push(0);
    }
    base
}

fn build_lookup(elements: &[Permutation], base: &[u32], degree: usize) -> Lookup {
    let fits = (degree.max(2) as u128).checked_pow(base.len() as u32).is_some();
    if fits {
        let map = elements
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let key = base
                    .iter()
                    .rev()
                    .fold(0u128, |k, &beta| k * degree as u128 + p.apply(beta) as u128);
                (key, i as u32)
            })
            .collect();
        Lookup::Packed(map)
    } else {
        let map = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (base.iter().map(|&b| p.apply(b)).collect(), i as u32))
            .collect();
        Lookup::Full(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn trivial_closure() {
        let g = FiniteGroup::closure("1", &[Permutation::identity(3)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(0), 0);
    }

    #[test]
    fn symmetric_three_by_closure() {
        let g = FiniteGroup::closure("S3", &[perm("(0 1 2)", 3), perm("(0 1)", 3)], 10).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        // BFS order: identity, then first generator, then second
        assert_eq!(g.element(1), &perm("(0 1 2)", 3));
        assert_eq!(g.element(2), &perm("(0 1)", 3));
    }

    #[test]
    fn alternating_five_by_closure() {
        let g = FiniteGroup::closure("A5", &[perm("(0 1 2)", 5), perm("(0 1 2 3 4)", 5)], 100).unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::closure("A5", &[perm("(0 1 2)", 5), perm("(0 1 2 3 4)", 5)], 59).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 59, .. }));
    }

    #[test]
    fn table_and_base_lookup_agree() {
        let gens = [perm("(0 1 2 3 4 5)", 6), perm("(0 1)", 6)];
        let with = FiniteGroup::closure("S6", &gens, 1000).unwrap();
        let without = FiniteGroup::closure_with_table_cap("S6", &gens, 1000, 0).unwrap();
        assert!(with.has_table() && !without.has_table());
        for a in (0..720).step_by(7) {
            for b in 0..720 {
                assert_eq!(with.mul(a, b), without.mul(a, b));
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        let g = FiniteGroup::closure("A5", &[perm("(0 1 2)", 5), perm("(0 1 2 3 4)", 5)], 100).unwrap();
        let n = g.order() as u32;
        for a in 0..n {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.inv(g.inv(a)), a);
            for b in 0..n {
                let ab = g.mul(a, b);
                assert_eq!(g.element(ab), &g.element(a).then(g.element(b)));
                for c in [0, 1, 7, 33, 59] {
                    assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        assert_eq!(g.index_of(&perm("(0 1)", 5)), None);
        assert_eq!(g.index_of(&perm("(0 1)(2 3)", 5)).map(|i| g.element(i).clone()), Some(perm("(0 1)(2 3)", 5)));
    }

    #[test]
    fn degree_mismatch() {
        let err = FiniteGroup::closure("x", &[perm("(0 1)", 2), perm("(0 1 2)", 3)], 10).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }
}
