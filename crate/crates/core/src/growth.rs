//! Product sets, decomposition probabilities `P_{A,B}(g)` and checkers for
//! the growth inequalities of normal subsets.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chartable::CharacterTable;
use crate::check::{CheckRecord, GrowthReport, Status, SLACK};
use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subset::{NormalSubset, Subset};
use crate::words::{word_image, Word};

/// Sweeps enumerate every union of classes while `2^(k−1)` stays within this.
pub const EXHAUSTIVE_SWEEP_CAP: usize = 4096;
/// Random unions drawn when the exhaustive sweep is too large.
pub const RANDOM_SWEEP_SIZE: usize = 10_000;
/// Additive slack for the strict decomposition-probability inequality.
pub const ASYMP_SLACK: f64 = 1e-12;
pub const NINETEEN_TWENTIETHS: f64 = 19.0 / 20.0;

/// `AB = {ab}`, by brute force.
pub fn product_set(g: &FiniteGroup, a: &Subset, b: &Subset) -> Subset {
    let n = g.order();
    let mut out = Subset::empty(n);
    let bs = b.to_vec();
    let mut count = 0;
    for x in a.iter() {
        for &y in &bs {
            let z = g.mul(x, y);
            if !out.contains(z) {
                out.insert(z);
                count += 1;
            }
        }
        if count == n {
            break;
        }
    }
    out
}

/// Exact count of pairs `(a, b) ∈ A×B` with `ab = target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub count: usize,
    pub total: usize,
}

impl PairCount {
    pub fn probability(&self) -> f64 {
        self.count as f64 / self.total as f64
    }
}

pub fn pab_exact(g: &FiniteGroup, a: &Subset, b: &Subset, target: u32) -> Result<PairCount> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let count = a.iter().filter(|&x| b.contains(g.mul(g.inv(x), target))).count();
    Ok(PairCount {
        count,
        total: a.len() * b.len(),
    })
}

/// Frobenius-formula pair count `Σ_{i∈A, j∈B} a[i][j][k]` from the table.
pub fn pair_count_frobenius(tab: &CharacterTable, a: &NormalSubset, b: &NormalSubset, k: usize) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for &i in a.classes() {
        for &j in b.classes() {
            total += tab.frobenius_coefficient(i, j, k);
        }
    }
    total
}

/// `P_{A,B}(g_k)` through the Frobenius formula.
pub fn pab_frobenius(tab: &CharacterTable, a: &NormalSubset, b: &NormalSubset, k: usize) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    if k >= tab.class_count() {
        return Err(Error::Index {
            index: k,
            len: tab.class_count(),
        });
    }
    Ok(pair_count_frobenius(tab, a, b, k).re / (a.len() * b.len()) as f64)
}

fn describe(a: &NormalSubset) -> String {
    format!("classes{:?}", a.classes())
}

/// Two-step growth of `AB` for normal `A`:
/// `|AB| ≥ n/(1 + R²(n/|B| − 1)) ≥ min{n/2, |B|/(2R²)}` with `R = min_{g∈A} R(g)`.
pub fn check_2step(g: &FiniteGroup, tab: &CharacterTable, a: &NormalSubset, b: &Subset) -> Result<CheckRecord> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let (r, _) = tab.r_extremes(a)?;
    let n = g.order() as f64;
    let bl = b.len() as f64;
    let bound = n / (1.0 + r * r * (n / bl - 1.0));
    let floor = (n / 2.0).min(bl / (2.0 * r * r));
    let ab = product_set(g, a.set(), b).len() as f64;
    Ok(CheckRecord::at_least(
        "2step",
        g.label(),
        g.order(),
        format!("A={} |B|={} R={r:.12} floor={floor:.6}", describe(a), b.len()),
        ab,
        bound,
        SLACK,
    )
    .and(bound >= floor - SLACK, "bound below min{n/2, |B|/(2R^2)}")
    .and(ab >= floor - SLACK, "|AB| below min{n/2, |B|/(2R^2)}"))
}

/// Two-subset covering: if `|A||B| ≥ R(g_k)²n²` then `g_k^G ⊆ AB`, else SKIPPED.
pub fn check_gowers2(
    g: &FiniteGroup,
    ct: &ClassTable,
    tab: &CharacterTable,
    a: &NormalSubset,
    b: &NormalSubset,
    k: usize,
) -> Result<CheckRecord> {
    let ab = product_set(g, a.set(), b.set());
    gowers2_with_product(g, ct, tab, a, b, &ab, k)
}

/// [`check_gowers2`] for every nonidentity class, sharing one product set.
pub fn check_gowers2_all(
    g: &FiniteGroup,
    ct: &ClassTable,
    tab: &CharacterTable,
    a: &NormalSubset,
    b: &NormalSubset,
) -> Result<Vec<CheckRecord>> {
    let ab = product_set(g, a.set(), b.set());
    (1..ct.len())
        .map(|k| gowers2_with_product(g, ct, tab, a, b, &ab, k))
        .collect()
}

fn gowers2_with_product(
    g: &FiniteGroup,
    ct: &ClassTable,
    tab: &CharacterTable,
    a: &NormalSubset,
    b: &NormalSubset,
    ab: &Subset,
    k: usize,
) -> Result<CheckRecord> {
    if k == 0 {
        return Err(Error::Index { index: 0, len: ct.len() });
    }
    ct.check_index(k)?;
    let r = tab.character_ratio(k)?;
    let n = g.order() as f64;
    let lhs = (a.len() * b.len()) as f64;
    let rhs = r * r * n * n;
    let inputs = format!("A={} B={} k={k} R={r:.12}", describe(a), describe(b));
    // relative slack so that numerically tight hypotheses are still asserted
    if lhs < rhs * (1.0 - SLACK) {
        return Ok(CheckRecord::with_status("gowers2", g.label(), g.order(), inputs, lhs, rhs, Status::Skipped));
    }
    let covered = ct.class(k).iter().all(|&x| ab.contains(x));
    let status = if covered { Status::Pass } else { Status::Fail };
    let rec = CheckRecord::with_status("gowers2", g.label(), g.order(), inputs, lhs, rhs, status);
    Ok(if covered { rec } else { rec.with_note("class not contained in AB") })
}

/// `|P_{A,B}(g) − 1/n| < R(g)/√(|A||B|)` for every class, the identity included.
/// Equality within [`ASYMP_SLACK`] passes but is flagged in the note.
pub fn check_asymp(
    g: &FiniteGroup,
    ct: &ClassTable,
    tab: &CharacterTable,
    a: &NormalSubset,
    b: &NormalSubset,
) -> Result<Vec<CheckRecord>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = g.order() as f64;
    let scale = ((a.len() * b.len()) as f64).sqrt();
    (0..ct.len())
        .map(|k| {
            let p = pab_exact(g, a.set(), b.set(), ct.rep(k))?;
            let r = tab.character_ratio(k)?;
            let lhs = (p.probability() - 1.0 / n).abs();
            let rhs = r / scale;
            let rec = CheckRecord::below(
                "asymp",
                g.label(),
                g.order(),
                format!("A={} B={} k={k} pairs={}", describe(a), describe(b), p.count),
                lhs,
                rhs,
                ASYMP_SLACK,
            );
            Ok(if (lhs - rhs).abs() <= ASYMP_SLACK {
                rec.with_note("equality within slack")
            } else {
                rec
            })
        })
        .collect()
}

/// Square dichotomy with `R = max_{g≠1} R(g)`: if `|A| ≥ Rn` then
/// `G∖{1} ⊆ A²`, otherwise `|A²| ≥ |A|/(2R)`.
pub fn dichotomy_check(g: &FiniteGroup, tab: &CharacterTable, a: &NormalSubset) -> Result<CheckRecord> {
    if !a.is_nontrivial() {
        return Err(Error::TrivialSubset);
    }
    let r = tab.r_max_nonidentity()?;
    let n = g.order();
    let a2 = product_set(g, a.set(), a.set());
    let al = a.len() as f64;
    let inputs = format!("A={} |A|={} R={r:.12}", describe(a), a.len());
    // either branch holds at |A| = Rn exactly, so the tolerance side is immaterial
    if al >= r * n as f64 - SLACK {
        let missing = (1..n as u32).filter(|&x| !a2.contains(x)).count();
        let rec = CheckRecord::at_most("dichotomy-cover", g.label(), n, inputs, missing as f64, 0.0, 0.0);
        Ok(if missing == 0 { rec } else { rec.with_note("A^2 misses nonidentity elements") })
    } else {
        Ok(CheckRecord::at_least(
            "dichotomy-grow",
            g.label(),
            n,
            inputs,
            a2.len() as f64,
            al / (2.0 * r),
            SLACK,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluckReport {
    pub group: String,
    pub q: u32,
    pub r_max: f64,
    /// Empirical constant `√q · R_max`.
    pub sqrt_q_r_max: f64,
    pub nineteen_twentieths_ok: bool,
}

impl GluckReport {
    pub fn record(&self, n: usize) -> CheckRecord {
        CheckRecord::at_most(
            "gluck",
            &self.group,
            n,
            format!("q={} sqrt(q)*R_max={:.12}", self.q, self.sqrt_q_r_max),
            self.r_max,
            NINETEEN_TWENTIETHS,
            SLACK,
        )
    }
}

pub fn gluck_report(g: &FiniteGroup, tab: &CharacterTable) -> Result<GluckReport> {
    let lie = g.lie().ok_or(Error::NotLieType)?;
    let r_max = tab.r_max_nonidentity()?;
    Ok(GluckReport {
        group: g.label().to_string(),
        q: lie.q,
        r_max,
        sqrt_q_r_max: (lie.q as f64).sqrt() * r_max,
        nineteen_twentieths_ok: r_max <= NINETEEN_TWENTIETHS + SLACK,
    })
}

/// Unions of classes for a sweep: all nonempty ones when there are at most
/// `2·EXHAUSTIVE_SWEEP_CAP` of them, else [`RANDOM_SWEEP_SIZE`] seeded draws.
pub fn normal_sweep(ct: &ClassTable, seed: u64) -> Vec<NormalSubset> {
    normal_sweep_sized(ct, seed, RANDOM_SWEEP_SIZE)
}

/// [`normal_sweep`] with a custom number of random draws.
pub fn normal_sweep_sized(ct: &ClassTable, seed: u64, draws: usize) -> Vec<NormalSubset> {
    let k = ct.len();
    if k <= 13 && (1usize << (k - 1)) <= EXHAUSTIVE_SWEEP_CAP {
        (1u64..1 << k).map(|m| NormalSubset::from_mask(ct, m)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..draws).map(|_| NormalSubset::random(ct, &mut rng)).collect()
    }
}

/// `log_q |G|` for Lie-type groups.
pub fn log_q_order(g: &FiniteGroup) -> Option<f64> {
    g.lie().map(|l| (g.order() as f64).ln() / (l.q as f64).ln())
}

/// Square growth `|A²| ≥ |A|^{1+ε}` or `G∖{1} ⊆ A²` over a sweep of
/// nontrivial normal subsets. Coverage cases are INFO; growth cases assert
/// `ε(A) = log|A²|/log|A| − 1 > 0`, so `min_margin` is the smallest `ε`.
/// Non-simple groups are measured but nothing is asserted.
pub fn square_growth_survey(g: &FiniteGroup, ct: &ClassTable, tab: &CharacterTable, seed: u64) -> GrowthReport {
    let simple = tab.is_simple();
    let n = g.order();
    let mut records = Vec::new();
    for a in normal_sweep(ct, seed).into_iter().filter(|a| a.is_nontrivial()) {
        let a2 = product_set(g, a.set(), a.set());
        let inputs = format!("A={} |A|={} |A^2|={}", describe(&a), a.len(), a2.len());
        let covers = (1..n as u32).all(|x| a2.contains(x));
        let rec = if covers {
            CheckRecord::with_status("survey", g.label(), n, inputs, a2.len() as f64, a.len() as f64, Status::Info)
                .with_note("covers G\\{1}")
        } else if a.len() == 1 {
            CheckRecord::with_status("survey", g.label(), n, inputs, 0.0, 0.0, Status::Skipped)
                .with_note("|A| = 1")
        } else {
            let eps = (a2.len() as f64).ln() / (a.len() as f64).ln() - 1.0;
            let rec = CheckRecord::above("survey", g.label(), n, inputs, eps, 0.0, 0.0);
            if simple {
                rec
            } else {
                CheckRecord { status: Status::Info, ..rec }.with_note("group not simple")
            }
        };
        records.push(rec);
    }
    if let Some(l) = log_q_order(g) {
        records.push(
            CheckRecord::with_status("log_q|G|", g.label(), n, String::new(), l, 0.0, Status::Info),
        );
    }
    GrowthReport::from_records(records)
}

/// Symmetric normal `A` with `|A| > n/log₂n`: records whether `A² = G`.
/// Measurement only; non-covering cases are listed as counterexamples
/// without failing.
pub fn pyber_report(g: &FiniteGroup, ct: &ClassTable, seed: u64) -> GrowthReport {
    let n = g.order();
    let threshold = n as f64 / (n as f64).log2();
    let mut records = Vec::new();
    for a in normal_sweep(ct, seed) {
        if !a.is_symmetric() || a.len() as f64 <= threshold {
            continue;
        }
        let a2 = product_set(g, a.set(), a.set());
        let rec = CheckRecord::with_status(
            "pyber",
            g.label(),
            n,
            format!("A={} |A|={}", describe(&a), a.len()),
            a2.len() as f64,
            n as f64,
            Status::Info,
        );
        records.push(if a2.len() == n { rec } else { rec.with_note("A^2 != G") });
    }
    let mut report = GrowthReport::from_records(records);
    report.counterexamples = report.records.iter().filter(|r| r.note.is_some()).cloned().collect();
    report
}

/// Word-image decomposition: image ratios, then for every nonidentity class
/// `|P·n − 1| < n·R(g)/√(|w₁(G)||w₂(G)|)`.
pub fn word_growth_report(
    g: &FiniteGroup,
    ct: &ClassTable,
    tab: &CharacterTable,
    w1: &Word,
    w2: &Word,
    cap: usize,
) -> Result<GrowthReport> {
    let n = g.order();
    let nf = n as f64;
    let i1 = NormalSubset::from_subset(ct, &word_image(g, w1, cap)?)?;
    let i2 = NormalSubset::from_subset(ct, &word_image(g, w2, cap)?)?;
    let mut records = Vec::new();
    for (w, img) in [(w1, &i1), (w2, &i2)] {
        records.push(CheckRecord::with_status(
            "word-image",
            g.label(),
            n,
            format!("w={w} |w(G)|={}", img.len()),
            img.len() as f64 / nf,
            1.0,
            Status::Info,
        ));
    }
    let scale = ((i1.len() * i2.len()) as f64).sqrt();
    for k in 1..ct.len() {
        let p = pab_exact(g, i1.set(), i2.set(), ct.rep(k))?;
        let r = tab.character_ratio(k)?;
        records.push(CheckRecord::below(
            "words",
            g.label(),
            n,
            format!("w1={w1} w2={w2} k={k} pairs={}", p.count),
            (p.probability() * nf - 1.0).abs(),
            nf * r / scale,
            ASYMP_SLACK * nf,
        ));
    }
    Ok(GrowthReport::from_records(records))
}

/// Large normal subsets: for `g ≠ 1`, the deviation `|P·n − 1|` scaled by
/// `ε√q` with `ε = min(|A|,|B|)/n`. Measurement only.
pub fn asymp_big_report(
    g: &FiniteGroup,
    ct: &ClassTable,
    a: &NormalSubset,
    b: &NormalSubset,
) -> Result<Vec<CheckRecord>> {
    let lie = g.lie().ok_or(Error::NotLieType)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = g.order() as f64;
    let eps = a.len().min(b.len()) as f64 / n;
    let sq = (lie.q as f64).sqrt();
    (1..ct.len())
        .map(|k| {
            let p = pab_exact(g, a.set(), b.set(), ct.rep(k))?;
            let dev = (p.probability() * n - 1.0).abs();
            Ok(CheckRecord::with_status(
                "asymp-big",
                g.label(),
                g.order(),
                format!("A={} B={} k={k} eps={eps:.6} deviation={dev:.12}", describe(a), describe(b)),
                dev * eps * sq,
                0.0,
                Status::Info,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_alternating, build_psl2};
    use crate::group::DEFAULT_ORDER_CAP;

    fn a5() -> (FiniteGroup, ClassTable, CharacterTable) {
        let g = build_alternating(5, DEFAULT_ORDER_CAP).unwrap();
        let ct = ClassTable::compute(&g);
        let tab = CharacterTable::compute(&g, &ct, 1).unwrap();
        (g, ct, tab)
    }

    fn class_of_size(ct: &ClassTable, size: usize) -> usize {
        (0..ct.len()).find(|&c| ct.size(c) == size).unwrap()
    }

    #[test]
    fn product_set_basics() {
        let (g, ct, _) = a5();
        let n = g.order();
        let b = Subset::random_of_size(n, 7, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(product_set(&g, &Subset::identity(n), &b), b);
        assert_eq!(product_set(&g, &Subset::full(n), &Subset::full(n)).len(), n);
        let c20 = NormalSubset::from_classes(&ct, &[class_of_size(&ct, 20)]).unwrap();
        assert_eq!(product_set(&g, c20.set(), c20.set()).len(), 60);
    }

    #[test]
    fn pab_examples() {
        let (g, ct, tab) = a5();
        let n = g.order();
        let full = Subset::full(n);
        for t in 0..n as u32 {
            assert_eq!(pab_exact(&g, &full, &full, t).unwrap().count, n);
        }
        let c20 = NormalSubset::from_classes(&ct, &[class_of_size(&ct, 20)]).unwrap();
        let c15 = NormalSubset::from_classes(&ct, &[class_of_size(&ct, 15)]).unwrap();
        let p = pab_exact(&g, c20.set(), c20.set(), 0).unwrap();
        assert_eq!((p.count, p.total), (20, 400));
        assert!(pab_frobenius(&tab, &c20, &c15, 0).unwrap().abs() < 1e-12);
        let all = NormalSubset::all(&ct);
        for k in 0..ct.len() {
            assert!((pab_frobenius(&tab, &all, &all, k).unwrap() - 1.0 / 60.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_step_with_identity_b() {
        let (g, ct, tab) = a5();
        let ratios = tab.character_ratios().unwrap();
        let smallest = (1..ct.len()).min_by(|&x, &y| ratios[x].total_cmp(&ratios[y])).unwrap();
        let a = NormalSubset::from_classes(&ct, &[smallest]).unwrap();
        let rec = check_2step(&g, &tab, &a, &Subset::identity(60)).unwrap();
        assert_eq!(rec.lhs, a.len() as f64);
        assert_eq!(rec.status, Status::Pass);
    }

    #[test]
    fn dichotomy_full_nonidentity_covers() {
        let g = build_psl2(7, DEFAULT_ORDER_CAP).unwrap();
        let ct = ClassTable::compute(&g);
        let tab = CharacterTable::compute(&g, &ct, 0).unwrap();
        let rec = dichotomy_check(&g, &tab, &NormalSubset::all_nonidentity(&ct)).unwrap();
        assert_eq!(rec.check, "dichotomy-cover");
        assert_eq!(rec.status, Status::Pass);
        let id = NormalSubset::from_classes(&ct, &[0]).unwrap();
        assert!(matches!(dichotomy_check(&g, &tab, &id), Err(Error::TrivialSubset)));
    }

    #[test]
    fn sweep_is_exhaustive_for_few_classes() {
        let (_, ct, _) = a5();
        assert_eq!(normal_sweep(&ct, 0).len(), 31);
    }
}
