//! Conjugacy classes, inverse-class map and real-element census.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassTable {
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
    inverse_class: Vec<usize>,
    orders: Vec<usize>,
}

impl ClassTable {
    /// Conjugation orbits under the generators, sorted by `(size, rep)` so the
    /// identity class comes first.
    pub fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &s in g.generators() {
                    let y = g.conjugate(x, s);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));

        let mut class_of = vec![0u32; n];
        for (ci, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = ci as u32;
            }
        }
        let inverse_class = classes
            .iter()
            .map(|c| class_of[g.inv(c[0]) as usize] as usize)
            .collect();
        let orders = classes.iter().map(|c| g.element_order(c[0])).collect();
        ClassTable {
            class_of,
            classes,
            inverse_class,
            orders,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn class(&self, c: usize) -> &[u32] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest element index in the class.
    pub fn rep(&self, c: usize) -> u32 {
        self.classes[c][0]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn is_real(&self, c: usize) -> bool {
        self.inverse_class[c] == c
    }

    /// Element order of the class representatives.
    pub fn element_order(&self, c: usize) -> usize {
        self.orders[c]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn check_index(&self, c: usize) -> Result<()> {
        if c < self.len() {
            Ok(())
        } else {
            Err(Error::Index {
                index: c,
                len: self.len(),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealReport {
    pub class_count: usize,
    pub real_classes: usize,
    pub real_elements: usize,
    pub order: usize,
    /// Indices of classes that are not real.
    pub non_real_classes: Vec<usize>,
    /// Non-real classes whose element order is coprime to the characteristic;
    /// `None` when the group carries no characteristic.
    pub non_real_semisimple: Option<Vec<usize>>,
}

impl RealReport {
    pub fn real_fraction(&self) -> f64 {
        self.real_elements as f64 / self.order as f64
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Real classes and elements; with `semisimple` set, also lists non-real
/// classes of order coprime to the defining characteristic.
pub fn real_census(g: &FiniteGroup, ct: &ClassTable, semisimple: bool) -> Result<RealReport> {
    let non_real: Vec<usize> = (0..ct.len()).filter(|&c| !ct.is_real(c)).collect();
    let non_real_semisimple = if semisimple {
        let p = g.characteristic().ok_or(Error::NoCharacteristic)? as usize;
        Some(
            non_real
                .iter()
                .copied()
                .filter(|&c| gcd(ct.element_order(c), p) == 1)
                .collect(),
        )
    } else {
        None
    };
    Ok(RealReport {
        class_count: ct.len(),
        real_classes: ct.len() - non_real.len(),
        real_elements: (0..ct.len()).filter(|&c| ct.is_real(c)).map(|c| ct.size(c)).sum(),
        order: g.order(),
        non_real_classes: non_real,
        non_real_semisimple,
    })
}

/// Brute-force reality test independent of the class partition: searches
/// for `h` with `h⁻¹xh = x⁻¹`.
pub fn is_real_brute(g: &FiniteGroup, x: u32) -> bool {
    let target = g.inv(x);
    (0..g.order() as u32).any(|h| g.conjugate(x, h) == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_alternating, build_psl2, build_symmetric};
    use crate::group::DEFAULT_ORDER_CAP;

    fn sorted_sizes(ct: &ClassTable) -> Vec<usize> {
        let mut s = ct.sizes();
        s.sort();
        s
    }

    #[test]
    fn trivial_group_one_class() {
        let g = build_alternating(2, 10).unwrap();
        let ct = ClassTable::compute(&g);
        assert_eq!(ct.len(), 1);
        assert!(ct.is_real(0));
    }

    #[test]
    fn a5_classes() {
        let g = build_alternating(5, 100).unwrap();
        let ct = ClassTable::compute(&g);
        assert_eq!(sorted_sizes(&ct), vec![1, 12, 12, 15, 20]);
        assert_eq!(ct.class(0), &[0]);
        let r = real_census(&g, &ct, false).unwrap();
        assert_eq!(r.real_classes, 5);
        assert!(matches!(real_census(&g, &ct, true), Err(Error::NoCharacteristic)));
    }

    #[test]
    fn classes_are_conjugation_closed_orbits() {
        let g = build_symmetric(5, 1000).unwrap();
        let ct = ClassTable::compute(&g);
        assert_eq!(ct.sizes().iter().sum::<usize>(), 120);
        assert_eq!(ct.len(), 7);
        for c in 0..ct.len() {
            assert_eq!(ct.inverse_class(ct.inverse_class(c)), c);
            for &x in ct.class(c) {
                for h in 0..120 {
                    assert_eq!(ct.class_of(g.conjugate(x, h)), c);
                }
            }
        }
        // ordering by (size, rep)
        for w in ct.classes().windows(2) {
            assert!((w[0].len(), w[0][0]) < (w[1].len(), w[1][0]));
        }
    }

    #[test]
    fn psl27_non_real_classes_are_order_seven() {
        let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
        let ct = ClassTable::compute(&g);
        assert_eq!(ct.len(), 6);
        let r = real_census(&g, &ct, true).unwrap();
        assert_eq!(r.non_real_classes.len(), 2);
        for &c in &r.non_real_classes {
            assert_eq!(ct.element_order(c), 7);
            assert_eq!(ct.size(c), 24);
        }
        assert_eq!(r.non_real_semisimple, Some(vec![]));
        for c in 0..ct.len() {
            assert_eq!(is_real_brute(&g, ct.rep(c)), ct.is_real(c));
        }
    }
}
