//! Ordinary character tables computed from class multiplication
//! coefficients, with orthogonality certification and character ratios.

mod dixon;
mod io;
mod tensor;

pub use dixon::{burnside_dixon, DixonOptions, DEGREE_TOL, EIGEN_COLLISION_TOL, MAX_RETRIES};
pub use io::{load_table, save_table, TableFile, LOAD_RESIDUAL_LIMIT};
pub use tensor::ClassMultTensor;

use num_complex::Complex64;

use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subset::NormalSubset;

/// Residual bound used to certify computed tables.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

/// Rows are irreducible characters (row 0 trivial), columns are classes in
/// the order of the originating [`ClassTable`].
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    label: String,
    order: usize,
    class_sizes: Vec<usize>,
    class_orders: Vec<usize>,
    values: Vec<Vec<Complex64>>,
    residual: f64,
}

impl CharacterTable {
    /// Assembles a table and records its orthogonality residual.
    pub fn new(
        label: impl Into<String>,
        order: usize,
        class_sizes: Vec<usize>,
        class_orders: Vec<usize>,
        values: Vec<Vec<Complex64>>,
    ) -> Self {
        let mut tab = CharacterTable {
            label: label.into(),
            order,
            class_sizes,
            class_orders,
            values,
            residual: 0.0,
        };
        tab.residual = verify_orthogonality(&tab);
        tab
    }

    /// Class tensor plus Burnside–Dixon with the default options.
    pub fn compute(g: &FiniteGroup, ct: &ClassTable, seed: u64) -> Result<Self> {
        let tensor = ClassMultTensor::compute(g, ct);
        burnside_dixon(
            &tensor,
            &ct.sizes(),
            g.order(),
            &DixonOptions {
                seed,
                label: g.label().to_string(),
                class_orders: ct.orders().to_vec(),
                ..DixonOptions::default()
            },
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_orders(&self) -> &[usize] {
        &self.class_orders
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    pub fn value(&self, row: usize, class: usize) -> Complex64 {
        self.values[row][class]
    }

    pub fn degree(&self, row: usize) -> f64 {
        self.values[row][0].re
    }

    pub fn degrees(&self) -> Vec<f64> {
        (0..self.values.len()).map(|r| self.degree(r)).collect()
    }

    pub fn rounded_degrees(&self) -> Vec<u64> {
        self.degrees().iter().map(|d| d.round() as u64).collect()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Largest distance of a degree from the nearest integer.
    pub fn degree_integrality(&self) -> f64 {
        self.degrees()
            .iter()
            .map(|d| (d - d.round()).abs())
            .fold(0.0, f64::max)
    }

    fn check_class(&self, j: usize) -> Result<()> {
        if j < self.class_count() {
            Ok(())
        } else {
            Err(Error::Index {
                index: j,
                len: self.class_count(),
            })
        }
    }

    /// Smallest degree of a nontrivial irreducible character.
    pub fn min_nontrivial_degree(&self) -> Result<u64> {
        self.rounded_degrees()
            .into_iter()
            .skip(1)
            .min()
            .ok_or(Error::OnlyTrivial)
    }

    /// `R(g) = max_{χ≠1} |χ(g)|/χ(1)` on class `j`.
    pub fn character_ratio(&self, j: usize) -> Result<f64> {
        self.check_class(j)?;
        (1..self.values.len())
            .map(|r| self.values[r][j].norm() / self.degree(r))
            .reduce(f64::max)
            .ok_or(Error::OnlyTrivial)
    }

    pub fn character_ratios(&self) -> Result<Vec<f64>> {
        (0..self.class_count()).map(|j| self.character_ratio(j)).collect()
    }

    /// `(min, max)` of the character ratio over the classes of `s`.
    pub fn r_extremes(&self, s: &NormalSubset) -> Result<(f64, f64)> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &c in s.classes() {
            let r = self.character_ratio(c)?;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        Ok((lo, hi))
    }

    /// `max_{g≠1} R(g)`.
    pub fn r_max_nonidentity(&self) -> Result<f64> {
        (1..self.class_count())
            .map(|j| self.character_ratio(j))
            .try_fold(f64::NEG_INFINITY, |acc, r| r.map(|r| acc.max(r)))
            .and_then(|r| if r.is_finite() { Ok(r) } else { Err(Error::OnlyTrivial) })
    }

    /// Structure constant recovered from the table:
    /// `|C_i||C_j|/n · Σ_χ χ(g_i)χ(g_j)conj(χ(g_k))/χ(1)`.
    pub fn frobenius_coefficient(&self, i: usize, j: usize, k: usize) -> Complex64 {
        let s: Complex64 = self
            .values
            .iter()
            .map(|row| row[i] * row[j] * row[k].conj() / row[0].re)
            .sum();
        s * (self.class_sizes[i] * self.class_sizes[j]) as f64 / self.order as f64
    }

    /// True when every nontrivial character has trivial kernel, i.e. the
    /// group has no proper nontrivial normal subgroup.
    pub fn is_simple(&self) -> bool {
        self.values.iter().skip(1).all(|row| {
            let d = row[0].re;
            (1..row.len()).all(|j| (row[j] - d).norm() > 1e-6)
        })
    }
}

/// Largest deviation over the normalized row and column orthogonality
/// relations: `(1/n)Σ_j |C_j| χ_r(j) conj(χ_s(j)) = δ_rs` and
/// `√(|C_j||C_k|)/n · Σ_r χ_r(j) conj(χ_r(k)) = δ_jk`.
pub fn verify_orthogonality(tab: &CharacterTable) -> f64 {
    let rows = tab.values.len();
    let cols = tab.class_sizes.len();
    let n = tab.order as f64;
    if rows != cols || tab.values.iter().any(|r| r.len() != cols) {
        return f64::INFINITY;
    }
    let mut worst: f64 = 0.0;
    for r in 0..rows {
        for s in r..rows {
            let ip: Complex64 = (0..cols)
                .map(|j| tab.values[r][j] * tab.values[s][j].conj() * tab.class_sizes[j] as f64)
                .sum::<Complex64>()
                / n;
            let expected = if r == s { 1.0 } else { 0.0 };
            worst = worst.max((ip - expected).norm());
        }
    }
    for j in 0..cols {
        for k in j..cols {
            let ip: Complex64 = (0..rows)
                .map(|r| tab.values[r][j] * tab.values[r][k].conj())
                .sum::<Complex64>()
                * ((tab.class_sizes[j] * tab.class_sizes[k]) as f64).sqrt()
                / n;
            let expected = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((ip - expected).norm());
        }
    }
    worst
}
