//! Numeric Burnside–Dixon: the central characters are the common
//! eigenvectors of the class matrices `(M_i)_{jk} = a[i][j][k]`.
//!
//! With `D = diag(|C_j|)` the conjugated matrices `D^{-1/2} M_i D^{1/2}` are
//! normal (their eigenvectors are the orthogonal columns `√|C_j| χ(g_j)`), so
//! a random real combination is diagonalized through a complex Schur form.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharacterTable, ClassMultTensor};
use crate::error::{Error, Result};

pub const MAX_RETRIES: usize = 20;
/// Minimum separation between eigenvalues of the random combination.
pub const EIGEN_COLLISION_TOL: f64 = 1e-6;
/// Degrees further than this from an integer abort the computation.
pub const DEGREE_TOL: f64 = 1e-4;
const RESIDUAL_ABORT: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct DixonOptions {
    pub seed: u64,
    pub max_retries: usize,
    pub label: String,
    pub class_orders: Vec<usize>,
}

impl Default for DixonOptions {
    fn default() -> Self {
        DixonOptions {
            seed: 0,
            max_retries: MAX_RETRIES,
            label: String::new(),
            class_orders: Vec::new(),
        }
    }
}

pub fn burnside_dixon(
    tensor: &ClassMultTensor,
    sizes: &[usize],
    n: usize,
    opts: &DixonOptions,
) -> Result<CharacterTable> {
    let k = tensor.class_count();
    let orders = if opts.class_orders.len() == k {
        opts.class_orders.clone()
    } else {
        vec![0; k]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sqrt_sizes: Vec<f64> = sizes.iter().map(|&s| (s as f64).sqrt()).collect();

    for _ in 0..=opts.max_retries {
        let coeffs: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let combo = DMatrix::<Complex64>::from_fn(k, k, |j, l| {
            let s: f64 = (0..k)
                .map(|i| coeffs[i] * tensor.get(i, j, l) as f64 / sizes[i] as f64)
                .sum();
            Complex64::new(s * sqrt_sizes[l] / sqrt_sizes[j], 0.0)
        });
        let Some(vectors) = distinct_eigenvectors(combo) else {
            continue;
        };

        let mut rows = Vec::with_capacity(k);
        for x in vectors {
            // w = D^{1/2} x, scaled so the identity-class entry is 1
            let w: Vec<Complex64> = (0..k).map(|j| x[j] * sqrt_sizes[j]).collect();
            let w0 = w[0];
            let omega: Vec<Complex64> = w.iter().map(|v| v / w0).collect();
            let norm: f64 = (0..k).map(|i| omega[i].norm_sqr() / sizes[i] as f64).sum();
            let degree = (n as f64 / norm).sqrt();
            if (degree - degree.round()).abs() > DEGREE_TOL {
                return Err(Error::NonIntegralDegree { value: degree });
            }
            let d = degree.round();
            let row: Vec<Complex64> = (0..k)
                .map(|i| if i == 0 { Complex64::new(d, 0.0) } else { omega[i] * d / sizes[i] as f64 })
                .collect();
            rows.push(row);
        }
        let rows = canonical_row_order(rows);
        let tab = CharacterTable::new(opts.label.clone(), n, sizes.to_vec(), orders, rows);
        if tab.residual() > RESIDUAL_ABORT {
            return Err(Error::Orthogonality {
                residual: tab.residual(),
                limit: RESIDUAL_ABORT,
            });
        }
        return Ok(tab);
    }
    Err(Error::DegenerateSpectrum {
        retries: opts.max_retries,
    })
}

/// Eigenvectors of a matrix with pairwise-separated eigenvalues, or `None`
/// when two eigenvalues collide.
fn distinct_eigenvectors(m: DMatrix<Complex64>) -> Option<Vec<DVector<Complex64>>> {
    let k = m.nrows();
    let (q, t) = Schur::new(m).unpack();
    let eig: Vec<Complex64> = (0..k).map(|i| t[(i, i)]).collect();
    for a in 0..k {
        for b in a + 1..k {
            if (eig[a] - eig[b]).norm() < EIGEN_COLLISION_TOL {
                return None;
            }
        }
    }
    // back-substitution on the upper-triangular factor
    let vectors = (0..k)
        .map(|j| {
            let mut y = DVector::<Complex64>::zeros(k);
            y[j] = Complex64::new(1.0, 0.0);
            for l in (0..j).rev() {
                let s: Complex64 = (l + 1..=j).map(|m| t[(l, m)] * y[m]).sum();
                y[l] = -s / (t[(l, l)] - t[(j, j)]);
            }
            &q * y
        })
        .collect();
    Some(vectors)
}

fn quantize(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

/// Trivial character first, the rest by degree and then lexicographically on
/// the (real, imaginary) parts of their values, compared on a 10⁻⁶ grid.
fn canonical_row_order(mut rows: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let is_trivial = |row: &Vec<Complex64>| row.iter().all(|v| (v - 1.0).norm() < 1e-6);
    if let Some(t) = rows.iter().position(is_trivial) {
        let trivial = rows.remove(t);
        rows.insert(0, trivial);
    }
    let key = |row: &Vec<Complex64>| -> Vec<i64> {
        let mut key = vec![quantize(row[0].re)];
        key.extend(row.iter().map(|v| quantize(v.re)));
        key.extend(row.iter().map(|v| quantize(v.im)));
        key
    };
    rows[1..].sort_by_cached_key(key);
    rows
}
