use rayon::prelude::*;

use crate::classes::ClassTable;
use crate::group::FiniteGroup;

/// Class multiplication coefficients: `a[i][j][k]` counts pairs
/// `(x, y) ∈ C_i × C_j` with `xy = rep(C_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMultTensor {
    k: usize,
    data: Vec<u64>,
}

impl ClassMultTensor {
    pub fn compute(g: &FiniteGroup, ct: &ClassTable) -> Self {
        let k = ct.len();
        // slab (i, k) holds the j-profile for x ∈ C_i, y = x⁻¹·rep(C_k)
        let slabs: Vec<Vec<u64>> = (0..k * k)
            .into_par_iter()
            .map(|ik| {
                let (i, kk) = (ik / k, ik % k);
                let target = ct.rep(kk);
                let mut row = vec![0u64; k];
                for &x in ct.class(i) {
                    let y = g.mul(g.inv(x), target);
                    row[ct.class_of(y)] += 1;
                }
                row
            })
            .collect();
        let mut data = vec![0u64; k * k * k];
        for (ik, row) in slabs.into_iter().enumerate() {
            let (i, kk) = (ik / k, ik % k);
            for (j, v) in row.into_iter().enumerate() {
                data[(i * k + j) * k + kk] = v;
            }
        }
        ClassMultTensor { k, data }
    }

    pub fn class_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.k + j) * self.k + k]
    }
}
