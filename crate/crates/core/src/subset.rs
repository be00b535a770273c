//! Element subsets and unions of conjugacy classes.

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::Rng;

use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Arbitrary set of group elements, stored as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    bits: FixedBitSet,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Subset { bits }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn identity(n: usize) -> Self {
        Self::from_elements(n, [0])
    }

    /// Uniform random subset of the given size.
    pub fn random_of_size<R: Rng + ?Sized>(n: usize, size: usize, rng: &mut R) -> Self {
        Self::from_elements(n, sample(rng, n, size.min(n)).into_iter().map(|i| i as u32))
    }

    /// Random nonempty subset with a uniformly chosen size in `1..=n`.
    pub fn random_nonempty<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let size = rng.gen_range(1..=n);
        Self::random_of_size(n, size, rng)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    #[inline]
    pub fn insert(&mut self, x: u32) {
        self.bits.insert(x as usize);
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn complement(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset { bits }
    }

    pub fn inverse(&self, g: &FiniteGroup) -> Subset {
        Subset::from_elements(self.universe(), self.iter().map(|x| g.inv(x)))
    }

    /// Closed under conjugation by every generator (hence by the group).
    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.iter()
            .all(|x| g.generators().iter().all(|&s| self.contains(g.conjugate(x, s))))
    }
}

/// Union of conjugacy classes, kept alongside its element bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubset {
    classes: Vec<usize>,
    set: Subset,
    symmetric: bool,
}

impl NormalSubset {
    pub fn from_classes(ct: &ClassTable, classes: &[usize]) -> Result<Self> {
        let mut cls: Vec<usize> = classes.to_vec();
        cls.sort_unstable();
        cls.dedup();
        for &c in &cls {
            ct.check_index(c)?;
        }
        let n = ct.sizes().iter().sum();
        let set = Subset::from_elements(n, cls.iter().flat_map(|&c| ct.class(c).iter().copied()));
        let symmetric = cls.iter().all(|&c| cls.binary_search(&ct.inverse_class(c)).is_ok());
        Ok(NormalSubset {
            classes: cls,
            set,
            symmetric,
        })
    }

    /// Classes indexed by the set bits of `mask`.
    pub fn from_mask(ct: &ClassTable, mask: u64) -> Self {
        let classes: Vec<usize> = (0..ct.len()).filter(|&c| mask >> c & 1 == 1).collect();
        Self::from_classes(ct, &classes).expect("mask within class range")
    }

    pub fn from_subset(ct: &ClassTable, s: &Subset) -> Result<Self> {
        let classes: Vec<usize> = (0..ct.len()).filter(|&c| s.contains(ct.rep(c))).collect();
        let normal = Self::from_classes(ct, &classes)?;
        if normal.set != *s {
            return Err(Error::NotNormal);
        }
        Ok(normal)
    }

    pub fn all(ct: &ClassTable) -> Self {
        Self::from_classes(ct, &(0..ct.len()).collect::<Vec<_>>()).unwrap()
    }

    pub fn all_nonidentity(ct: &ClassTable) -> Self {
        Self::from_classes(ct, &(1..ct.len()).collect::<Vec<_>>()).unwrap()
    }

    /// Random nonempty union of classes (each class kept with probability ½).
    pub fn random<R: Rng + ?Sized>(ct: &ClassTable, rng: &mut R) -> Self {
        loop {
            let classes: Vec<usize> = (0..ct.len()).filter(|_| rng.gen_bool(0.5)).collect();
            if !classes.is_empty() {
                return Self::from_classes(ct, &classes).unwrap();
            }
        }
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn set(&self) -> &Subset {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn contains_identity(&self) -> bool {
        self.classes.first() == Some(&0)
    }

    /// Nonempty and different from `{1}`.
    pub fn is_nontrivial(&self) -> bool {
        !self.classes.is_empty() && self.classes != [0]
    }

    pub fn mask(&self) -> u64 {
        self.classes.iter().fold(0, |m, &c| m | 1 << c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::build_alternating;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bitset_basics() {
        let mut s = Subset::empty(10);
        assert!(s.is_empty());
        s.insert(3);
        s.insert(7);
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![3, 7]);
        assert_eq!(s.complement().len(), 8);
        assert!(s.is_subset(&Subset::full(10)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(Subset::random_of_size(10, 4, &mut rng).len(), 4);
    }

    #[test]
    fn normal_subset_round_trip() {
        let g = build_alternating(5, 100).unwrap();
        let ct = ClassTable::compute(&g);
        let a = NormalSubset::from_classes(&ct, &[2, 1]).unwrap();
        assert_eq!(a.classes(), &[1, 2]);
        assert!(a.set().is_normal(&g));
        assert_eq!(NormalSubset::from_subset(&ct, a.set()).unwrap(), a);
        assert_eq!(NormalSubset::from_mask(&ct, a.mask()), a);
        assert!(a.is_symmetric());

        let lone = Subset::from_elements(60, [1]);
        assert!(!lone.is_normal(&g));
        assert!(matches!(NormalSubset::from_subset(&ct, &lone), Err(Error::NotNormal)));
        assert!(matches!(NormalSubset::from_classes(&ct, &[9]), Err(Error::Index { .. })));
        assert_eq!(NormalSubset::all(&ct).len(), 60);
        assert!(!NormalSubset::from_classes(&ct, &[0]).unwrap().is_nontrivial());
    }
}
