//! Spectral expansion of Cayley digraphs `Cay(G, S)` (arc `g → h` iff
//! `g⁻¹h ∈ S`), computed from the character table for normal `S` and
//! directly from the random-walk matrix for any `S`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chartable::CharacterTable;
use crate::check::{CheckRecord, SLACK};
use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::growth::product_set;
use crate::subset::{NormalSubset, Subset};

/// Groups above this order use power iteration instead of a dense eigensolve.
pub const DEFAULT_DENSE_CAP: usize = 2_500;
pub const POWER_TOL: f64 = 1e-9;
pub const POWER_MAX_ITER: usize = 100_000;
/// Precomputed right-multiplication tables are used below this many entries.
const SHIFT_TABLE_LIMIT: usize = 25_000_000;

/// Connection set of a Cayley digraph.
#[derive(Debug, Clone)]
pub struct CayleySpec<'g> {
    group: &'g FiniteGroup,
    set: Subset,
    elements: Vec<u32>,
    normal: bool,
}

impl<'g> CayleySpec<'g> {
    pub fn new(group: &'g FiniteGroup, set: Subset) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        let normal = set.is_normal(group);
        let elements = set.to_vec();
        Ok(CayleySpec {
            group,
            set,
            elements,
            normal,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn set(&self) -> &Subset {
        &self.set
    }

    pub fn valency(&self) -> usize {
        self.elements.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn has_arc(&self, from: u32, to: u32) -> bool {
        let g = self.group;
        self.set.contains(g.mul(g.inv(from), to))
    }

    /// Random-walk matrix `M_{x,y} = 1/d` on arcs.
    pub fn walk_matrix(&self) -> DMatrix<f64> {
        let n = self.group.order();
        let w = 1.0 / self.valency() as f64;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for x in 0..n as u32 {
            for &s in &self.elements {
                m[(x as usize, self.group.mul(x, s) as usize)] = w;
            }
        }
        m
    }

    fn as_normal(&self, ct: &ClassTable) -> Result<NormalSubset> {
        if !self.normal {
            return Err(Error::NotNormal);
        }
        NormalSubset::from_subset(ct, &self.set)
    }
}

/// `λ_χ = (1/(χ(1)|S|)) Σ_{g∈S} χ(g)` for every irreducible `χ`, in table row order.
pub fn eigenvalues_normal(tab: &CharacterTable, s: &NormalSubset) -> Result<Vec<Complex64>> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let sizes = tab.class_sizes();
    let total: usize = s.classes().iter().map(|&c| sizes[c]).sum();
    Ok(tab
        .values()
        .iter()
        .map(|row| {
            let sum: Complex64 = s.classes().iter().map(|&c| row[c] * sizes[c] as f64).sum();
            sum / (row[0].re * total as f64)
        })
        .collect())
}

/// `max_{χ≠1} |λ_χ|`; zero for the trivial group.
pub fn lambda_normal(tab: &CharacterTable, s: &NormalSubset) -> Result<f64> {
    Ok(eigenvalues_normal(tab, s)?
        .iter()
        .skip(1)
        .map(|l| l.norm())
        .fold(0.0, f64::max))
}

/// `√λ₂(MMᵗ)`: dense symmetric eigensolve up to `dense_cap` vertices, power
/// iteration on the complement of the constant vector above it.
pub fn lambda_direct(spec: &CayleySpec<'_>, dense_cap: usize) -> Result<f64> {
    if spec.group.order() <= dense_cap {
        Ok(lambda_dense(&spec.walk_matrix()))
    } else {
        lambda_power(spec)
    }
}

/// Second-largest eigenvalue of `MMᵗ`, square-rooted, for a doubly
/// stochastic `M`.
pub fn lambda_dense(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    if n < 2 {
        return 0.0;
    }
    let p = m * m.transpose();
    let mut eig: Vec<f64> = p.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig[1].clamp(0.0, 1.0).sqrt()
}

/// Largest singular value of `M − J/n` for a doubly stochastic `M`.
/// Accurate near zero, where the square root in [`lambda_dense`] is not.
pub fn lambda_dense_svd(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    if n < 2 {
        return 0.0;
    }
    let p = m.map(|x| x - 1.0 / n as f64);
    p.singular_values().max().clamp(0.0, 1.0)
}

/// `max |MMᵗ − MᵗM|` entrywise.
pub fn normality_residual(spec: &CayleySpec<'_>) -> f64 {
    let m = spec.walk_matrix();
    let mt = m.transpose();
    (&m * &mt - &mt * &m).amax()
}

struct Shifts<'a> {
    g: &'a FiniteGroup,
    forward: Vec<u32>,
    backward: Vec<u32>,
    elements: &'a [u32],
    inverses: Vec<u32>,
}

impl<'a> Shifts<'a> {
    fn new(spec: &'a CayleySpec<'_>) -> Self {
        let g = spec.group;
        let n = g.order();
        let inverses: Vec<u32> = spec.elements.iter().map(|&s| g.inv(s)).collect();
        let (forward, backward) = if n * spec.elements.len() <= SHIFT_TABLE_LIMIT {
            let fw = spec
                .elements
                .iter()
                .flat_map(|&s| (0..n as u32).map(move |x| g.mul(x, s)))
                .collect();
            let bw = inverses
                .iter()
                .flat_map(|&s| (0..n as u32).map(move |x| g.mul(x, s)))
                .collect();
            (fw, bw)
        } else {
            (Vec::new(), Vec::new())
        };
        Shifts {
            g,
            forward,
            backward,
            elements: &spec.elements,
            inverses,
        }
    }

    /// `(Mv)_x = (1/d) Σ_s v[xs]`.
    fn apply(&self, v: &[f64], out: &mut [f64]) {
        self.shift_sum(v, out, &self.forward, self.elements);
    }

    /// `(Mᵗv)_y = (1/d) Σ_s v[ys⁻¹]`.
    fn apply_transpose(&self, v: &[f64], out: &mut [f64]) {
        self.shift_sum(v, out, &self.backward, &self.inverses);
    }

    fn shift_sum(&self, v: &[f64], out: &mut [f64], table: &[u32], by: &[u32]) {
        let n = v.len();
        let d = by.len() as f64;
        out.iter_mut().for_each(|o| *o = 0.0);
        if table.is_empty() {
            for (x, o) in out.iter_mut().enumerate() {
                *o = by.iter().map(|&s| v[self.g.mul(x as u32, s) as usize]).sum::<f64>() / d;
            }
        } else {
            for chunk in table.chunks(n) {
                for (o, &t) in out.iter_mut().zip(chunk) {
                    *o += v[t as usize];
                }
            }
            out.iter_mut().for_each(|o| *o /= d);
        }
    }
}

fn project_out_mean(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Power iteration on `MMᵗ` restricted to the orthogonal complement of the
/// constant vector, stopping once the eigen-residual drops below
/// [`POWER_TOL`].
pub fn lambda_power(spec: &CayleySpec<'_>) -> Result<f64> {
    let n = spec.group.order();
    if n < 2 {
        return Ok(0.0);
    }
    let shifts = Shifts::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a3b_d0c5);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project_out_mean(&mut v);
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut tmp = vec![0.0; n];
    let mut w = vec![0.0; n];
    for _ in 0..POWER_MAX_ITER {
        shifts.apply_transpose(&v, &mut tmp);
        shifts.apply(&tmp, &mut w);
        project_out_mean(&mut w);
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - mu * a).powi(2))
            .sum::<f64>()
            .sqrt();
        let nw = norm(&w);
        if nw < 1e-300 {
            return Ok(0.0);
        }
        if residual <= POWER_TOL {
            return Ok(mu.clamp(0.0, 1.0).sqrt());
        }
        for (a, b) in v.iter_mut().zip(&w) {
            *a = b / nw;
        }
    }
    Err(Error::NoConvergence {
        iterations: POWER_MAX_ITER,
    })
}

/// Out-neighborhood `N(B) = B·S`.
pub fn neighborhood(spec: &CayleySpec<'_>, b: &Subset) -> Subset {
    product_set(spec.group, b, &spec.set)
}

/// Spectral-implies-vertex expansion:
/// `|N(B)| ≥ |B| / ((1−α)λ² + α)` with `α = |B|/n` and `λ` from the table.
pub fn check_vertex_expansion(
    spec: &CayleySpec<'_>,
    ct: &ClassTable,
    tab: &CharacterTable,
    b: &Subset,
) -> Result<CheckRecord> {
    let s = spec.as_normal(ct)?;
    if b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let lambda = lambda_normal(tab, &s)?;
    let n = spec.group.order();
    let alpha = b.len() as f64 / n as f64;
    let bound = b.len() as f64 / ((1.0 - alpha) * lambda * lambda + alpha);
    let nb = neighborhood(spec, b).len();
    Ok(CheckRecord::at_least(
        "vertex-expansion",
        spec.group.label(),
        n,
        format!("S=classes{:?} |B|={} lambda={lambda:.12}", s.classes(), b.len()),
        nb as f64,
        bound,
        SLACK,
    ))
}

/// Arcs from `A` into `B`, enumerated from `A` along `S`.
pub fn arc_count(spec: &CayleySpec<'_>, a: &Subset, b: &Subset) -> usize {
    let g = spec.group;
    a.iter()
        .map(|x| spec.elements.iter().filter(|&&s| b.contains(g.mul(x, s))).count())
        .sum()
}

/// Expander mixing lemma: `|e(A,B)/(dn) − αβ| ≤ λ√(α(1−α)β(1−β))`.
pub fn mixing_discrepancy(
    spec: &CayleySpec<'_>,
    ct: &ClassTable,
    tab: &CharacterTable,
    a: &Subset,
    b: &Subset,
) -> Result<CheckRecord> {
    let s = spec.as_normal(ct)?;
    let lambda = lambda_normal(tab, &s)?;
    let n = spec.group.order() as f64;
    let d = spec.valency() as f64;
    let alpha = a.len() as f64 / n;
    let beta = b.len() as f64 / n;
    let e = arc_count(spec, a, b) as f64;
    let lhs = (e / (d * n) - alpha * beta).abs();
    let rhs = lambda * (alpha * (1.0 - alpha) * beta * (1.0 - beta)).sqrt();
    Ok(CheckRecord::at_most(
        "mixing-lemma",
        spec.group.label(),
        spec.group.order(),
        format!("S=classes{:?} |A|={} |B|={} e={e}", s.classes(), a.len(), b.len()),
        lhs,
        rhs,
        SLACK,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub group: String,
    pub n: usize,
    pub classes: Option<Vec<usize>>,
    pub valency: usize,
    pub normal: bool,
    /// Character route; present only for normal connection sets.
    pub lambda_char: Option<f64>,
    pub lambda_direct: f64,
    /// `[re, im]` of `λ_χ` per table row.
    pub eigenvalues: Vec<[f64; 2]>,
    /// Largest character ratio over the classes of `S`.
    pub r_max: Option<f64>,
    pub method: String,
}

pub fn spectral_report(
    spec: &CayleySpec<'_>,
    ct: &ClassTable,
    tab: &CharacterTable,
    dense_cap: usize,
) -> Result<SpectralReport> {
    let n = spec.group.order();
    let direct = lambda_direct(spec, dense_cap)?;
    let method = if n <= dense_cap {
        "dense symmetric eigensolve of MM^t"
    } else {
        "power iteration on MM^t off the constant vector"
    };
    let (classes, lambda_char, eigenvalues, r_max) = if spec.normal {
        let s = spec.as_normal(ct)?;
        let eig = eigenvalues_normal(tab, &s)?;
        let lam = lambda_normal(tab, &s)?;
        let r_max = if tab.values().len() > 1 { Some(tab.r_extremes(&s)?.1) } else { None };
        (Some(s.classes().to_vec()), Some(lam), eig.iter().map(|z| [z.re, z.im]).collect(), r_max)
    } else {
        (None, None, Vec::new(), None)
    };
    Ok(SpectralReport {
        group: spec.group.label().to_string(),
        n,
        classes,
        valency: spec.valency(),
        normal: spec.normal,
        lambda_char,
        lambda_direct: direct,
        eigenvalues,
        r_max,
        method: method.to_string(),
    })
}
