//! Probability distributions on a group, convolution and the ℓ₂ mixing
//! inequality `‖X*Y − U‖ ≤ √(n/m)·‖X − U‖·‖Y − U‖`.

use nalgebra::DMatrix;
use rand::Rng;

use crate::check::{CheckRecord, SLACK};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::growth::product_set;
use crate::spectral::{lambda_dense_svd, DEFAULT_DENSE_CAP};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    weights: Vec<f64>,
}

impl Distribution {
    pub fn uniform(n: usize) -> Self {
        Distribution {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn point(n: usize, x: u32) -> Self {
        let mut weights = vec![0.0; n];
        weights[x as usize] = 1.0;
        Distribution { weights }
    }

    /// Uniform on `b`, zero elsewhere.
    pub fn from_subset(b: &Subset) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::EmptySubset);
        }
        let w = 1.0 / b.len() as f64;
        let mut weights = vec![0.0; b.universe()];
        for x in b.iter() {
            weights[x as usize] = w;
        }
        Ok(Distribution { weights })
    }

    /// Normalizes nonnegative weights; fails on an all-zero vector.
    pub fn from_weights(mut weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) || total <= 0.0 {
            return Err(Error::Parse("weights must be nonnegative with positive sum".into()));
        }
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Distribution { weights })
    }

    /// i.i.d. uniform `[0, 1]` weights, normalized.
    pub fn random_dense<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            if let Ok(d) = Self::from_weights(w) {
                return d;
            }
        }
    }

    /// Uniform on a random nonempty subset.
    pub fn random_sparse<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::from_subset(&Subset::random_nonempty(n, rng)).expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, x: u32) -> f64 {
        self.weights[x as usize]
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `(X*Y)(h) = Σ_g X(g)Y(g⁻¹h)`, skipping zero weights.
pub fn convolve(g: &FiniteGroup, x: &Distribution, y: &Distribution) -> Result<Distribution> {
    let n = g.order();
    for d in [x, y] {
        if d.len() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: d.len(),
            });
        }
    }
    let ysupport: Vec<(u32, f64)> = (0..n as u32)
        .map(|b| (b, y.weights[b as usize]))
        .filter(|&(_, w)| w != 0.0)
        .collect();
    let mut out = vec![0.0; n];
    for (a, &xa) in x.weights.iter().enumerate() {
        if xa == 0.0 {
            continue;
        }
        for &(b, yb) in &ysupport {
            out[g.mul(a as u32, b) as usize] += xa * yb;
        }
    }
    Ok(Distribution { weights: out })
}

/// `‖X − U‖₂`.
pub fn l2_dist_uniform(x: &Distribution) -> f64 {
    let u = 1.0 / x.len() as f64;
    x.weights.iter().map(|w| (w - u).powi(2)).sum::<f64>().sqrt()
}

pub fn check_bnp_star(g: &FiniteGroup, m: u64, x: &Distribution, y: &Distribution) -> Result<CheckRecord> {
    let n = g.order() as f64;
    let lhs = l2_dist_uniform(&convolve(g, x, y)?);
    let dx = l2_dist_uniform(x);
    let dy = l2_dist_uniform(y);
    let rhs = (n / m as f64).sqrt() * dx * dy;
    Ok(CheckRecord::at_most(
        "bnp",
        g.label(),
        g.order(),
        format!("m={m} |X-U|={dx:.12} |Y-U|={dy:.12}"),
        lhs,
        rhs,
        SLACK,
    ))
}

/// Random-walk matrix `M_{x,y} = Y(x⁻¹y)` of the complete weighted Cayley digraph.
pub fn weighted_walk_matrix(g: &FiniteGroup, y: &Distribution) -> DMatrix<f64> {
    let n = g.order();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for a in 0..n as u32 {
        for (s, &w) in y.weights.iter().enumerate() {
            if w != 0.0 {
                m[(a as usize, g.mul(a, s as u32) as usize)] = w;
            }
        }
    }
    m
}

/// `λ` of the weighted Cayley digraph, dense only.
pub fn weighted_cayley_lambda(g: &FiniteGroup, y: &Distribution) -> Result<f64> {
    weighted_cayley_lambda_capped(g, y, DEFAULT_DENSE_CAP)
}

pub fn weighted_cayley_lambda_capped(g: &FiniteGroup, y: &Distribution, dense_cap: usize) -> Result<f64> {
    if g.order() > dense_cap {
        return Err(Error::CapExceeded {
            cap: dense_cap,
            what: "dense weighted walk matrix".into(),
        });
    }
    Ok(lambda_dense_svd(&weighted_walk_matrix(g, y)))
}

/// Spectral form `λ ≤ √(n/m)·‖Y − U‖`.
pub fn check_weighted_lambda(g: &FiniteGroup, m: u64, y: &Distribution) -> Result<CheckRecord> {
    let lambda = weighted_cayley_lambda(g, y)?;
    let dy = l2_dist_uniform(y);
    Ok(CheckRecord::at_most(
        "wlambda",
        g.label(),
        g.order(),
        format!("m={m} |Y-U|={dy:.12}"),
        lambda,
        (g.order() as f64 / m as f64).sqrt() * dy,
        SLACK,
    ))
}

/// `|AB| > n/(1 + n²/(m|A||B|)) ≥ min{n/2, m|A||B|/(2n)}`, the first strict.
pub fn check_bnp_two_step(g: &FiniteGroup, m: u64, a: &Subset, b: &Subset) -> Result<CheckRecord> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = g.order() as f64;
    let mab = m as f64 * (a.len() * b.len()) as f64;
    let bound = n / (1.0 + n * n / mab);
    let floor = (n / 2.0).min(mab / (2.0 * n));
    let ab = product_set(g, a, b).len() as f64;
    Ok(CheckRecord::above(
        "bnp2step",
        g.label(),
        g.order(),
        format!("m={m} |A|={} |B|={} floor={floor:.6}", a.len(), b.len()),
        ab,
        bound,
        0.0,
    )
    .and(bound >= floor - SLACK, "bound below min{n/2, m|A||B|/(2n)}"))
}
