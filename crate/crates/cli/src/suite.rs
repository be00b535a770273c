//! The acceptance suite: fourteen criteria, each evaluated on the groups of a
//! profile and reported as one PASS/FAIL line.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use normexp_core::build::from_spec;
use normexp_core::check::{CheckRecord, Status};
use normexp_core::classes::{is_real_brute, real_census};
use normexp_core::distribution::{check_bnp_star, check_bnp_two_step, check_weighted_lambda, weighted_cayley_lambda};
use normexp_core::growth::{
    check_2step, check_asymp, check_gowers2_all, dichotomy_check, gluck_report, normal_sweep_sized, pab_exact,
    pair_count_frobenius,
};
use normexp_core::spectral::{lambda_direct, lambda_normal, mixing_discrepancy};
use normexp_core::{
    CayleySpec, CharacterTable, ClassTable, Distribution, Error, FiniteGroup, NormalSubset, Result, Subset,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;

const SPECCHI_GROUPS: &[&str] = &["A:5", "S:5", "PSL2:7", "PSL2:11"];
const SMALL_GROUPS: &[&str] = &["A:5", "PSL2:7"];
const GLUCK_GROUPS: &[&str] = &["PSL2:5", "PSL2:7", "PSL2:9", "PSL2:11", "PSL2:13", "PSL3:2"];
const PSL2_CENSUS: &[&str] = &["PSL2:5", "PSL2:7", "PSL2:9", "PSL2:11", "PSL2:13"];
const SPECCHI_RUNTIME: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    /// Groups under test. `PSL2:5` joins the full profile because two
    /// criteria name it explicitly.
    pub fn groups(self) -> &'static [&'static str] {
        match self {
            Profile::Quick => &["A:5", "S:5", "PSL2:7"],
            Profile::Full => &[
                "A:5", "S:5", "PSL2:7", "PSL2:9", "PSL2:11", "PSL2:13", "PSL3:2", "PSL3:3", "PSL2:5",
            ],
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

pub struct GroupData {
    pub spec: String,
    pub g: FiniteGroup,
    pub ct: ClassTable,
    pub tab: CharacterTable,
}

/// Groups of a profile with their class and character tables.
pub struct Catalog {
    entries: BTreeMap<String, GroupData>,
}

impl Catalog {
    pub fn build(profile: Profile, cfg: &RunConfig) -> Result<Self> {
        let built: Vec<Result<GroupData>> = profile
            .groups()
            .par_iter()
            .map(|&spec| {
                let g = from_spec(spec, cfg.order_cap)?;
                let ct = ClassTable::compute(&g);
                let tab = CharacterTable::compute(&g, &ct, cfg.seed)?;
                Ok(GroupData {
                    spec: spec.to_string(),
                    g,
                    ct,
                    tab,
                })
            })
            .collect();
        let mut entries = BTreeMap::new();
        for d in built {
            let d = d?;
            entries.insert(d.spec.clone(), d);
        }
        Ok(Catalog { entries })
    }

    pub fn get(&self, spec: &str) -> Option<&GroupData> {
        self.entries.get(spec)
    }

    /// The requested groups present in the catalog, in request order, and
    /// the labels of those absent.
    fn pick(&self, specs: &[&str]) -> (Vec<&GroupData>, Vec<String>) {
        let mut found = Vec::new();
        let mut missing = Vec::new();
        for &s in specs {
            match self.entries.get(s) {
                Some(d) => found.push(d),
                None => missing.push(s.to_string()),
            }
        }
        (found, missing)
    }

    fn all(&self, profile: Profile) -> Vec<&GroupData> {
        profile.groups().iter().filter_map(|s| self.entries.get(*s)).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub groups: Vec<String>,
    /// Named groups outside the profile.
    pub not_in_profile: Vec<String>,
    pub checks: usize,
    pub failures: usize,
    pub detail: String,
    #[serde(skip)]
    pub records: Vec<CheckRecord>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Info => "INFO",
        };
        let mut s = format!(
            "[{status}] {:>2} {}: {} checks, {} failed on {}",
            self.id,
            self.name,
            self.checks,
            self.failures,
            if self.groups.is_empty() { "-".to_string() } else { self.groups.join(" ") },
        );
        if !self.not_in_profile.is_empty() {
            s += &format!(" (not in profile: {})", self.not_in_profile.join(" "));
        }
        if !self.detail.is_empty() {
            s += &format!("; {}", self.detail);
        }
        s + &format!(" [{:.1}s]", self.elapsed.as_secs_f64())
    }
}

struct Outcome {
    records: Vec<CheckRecord>,
    detail: String,
    /// Extra failure reason not tied to a record (e.g. runtime budget).
    failure: Option<String>,
}

impl From<Vec<CheckRecord>> for Outcome {
    fn from(records: Vec<CheckRecord>) -> Self {
        Outcome {
            records,
            detail: String::new(),
            failure: None,
        }
    }
}

fn finish(
    id: u8,
    name: &'static str,
    groups: &[&GroupData],
    missing: Vec<String>,
    start: Instant,
    result: Result<Outcome>,
) -> CriterionOutcome {
    let labels: Vec<String> = groups.iter().map(|d| d.g.label().to_string()).collect();
    let elapsed = start.elapsed();
    match result {
        Ok(o) => {
            let failures = o.records.iter().filter(|r| r.status == Status::Fail).count();
            let asserted = o.records.iter().filter(|r| matches!(r.status, Status::Pass | Status::Fail)).count();
            let status = if failures > 0 || o.failure.is_some() {
                Status::Fail
            } else if groups.is_empty() || asserted == 0 {
                Status::Skipped
            } else {
                Status::Pass
            };
            let detail = match o.failure {
                Some(f) if o.detail.is_empty() => f,
                Some(f) => format!("{}; {f}", o.detail),
                None => o.detail,
            };
            CriterionOutcome {
                id,
                name,
                status,
                groups: labels,
                not_in_profile: missing,
                checks: asserted,
                failures,
                detail,
                records: o.records,
                elapsed,
            }
        }
        Err(e) => CriterionOutcome {
            id,
            name,
            status: Status::Fail,
            groups: labels,
            not_in_profile: missing,
            checks: 0,
            failures: 1,
            detail: format!("error: {e}"),
            records: Vec::new(),
            elapsed,
        },
    }
}

/// Independent stream per (criterion, group) so a group's inputs do not
/// depend on which other groups the profile holds.
fn rng_for(seed: u64, criterion: u8, label: &str) -> ChaCha8Rng {
    let h = label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(criterion as u64);
    rng
}

fn class_set(d: &GroupData, c: usize) -> NormalSubset {
    NormalSubset::from_classes(&d.ct, &[c]).expect("class index in range")
}

fn collect<T: Send>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

fn flatten(items: Vec<Result<Vec<CheckRecord>>>) -> Result<Vec<CheckRecord>> {
    Ok(collect(items)?.into_iter().flatten().collect())
}

fn specchi_equality(groups: &[&GroupData], cfg: &RunConfig, start: Instant) -> Result<Outcome> {
    let tol = cfg.tolerances.get("specchi");
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    for d in groups {
        let recs: Vec<Result<CheckRecord>> = (1..d.ct.len())
            .into_par_iter()
            .map(|c| {
                let s = class_set(d, c);
                let spec = CayleySpec::new(&d.g, s.set().clone())?;
                let ld = lambda_direct(&spec, cfg.dense_cap)?;
                let ln = lambda_normal(&d.tab, &s)?;
                Ok(CheckRecord::at_most(
                    "specchi-eq",
                    d.g.label(),
                    d.g.order(),
                    format!("class={c} direct={ld:.12} character={ln:.12}"),
                    (ld - ln).abs(),
                    tol,
                    0.0,
                )
                .and((0.0..=1.0 + 1e-9).contains(&ld), "lambda outside [0, 1]"))
            })
            .collect();
        for r in collect(recs)? {
            worst = worst.max(r.lhs);
            records.push(r);
        }
    }
    let elapsed = start.elapsed();
    Ok(Outcome {
        records,
        detail: format!("max |direct - character| = {worst:.3e}"),
        failure: (elapsed > SPECCHI_RUNTIME).then(|| format!("runtime {:.0}s exceeds 300s", elapsed.as_secs_f64())),
    })
}

fn specchi_inequality(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.get("specchi");
    let mut records = Vec::new();
    for d in groups {
        let mut rng = rng_for(cfg.seed, 2, d.g.label());
        let sets: Vec<NormalSubset> = (0..200).map(|_| NormalSubset::random(&d.ct, &mut rng)).collect();
        let mut unique: Vec<u64> = sets.iter().map(|s| s.mask()).collect();
        unique.sort_unstable();
        unique.dedup();
        let lambdas: Vec<Result<(u64, f64)>> = unique
            .par_iter()
            .map(|&m| {
                let s = NormalSubset::from_mask(&d.ct, m);
                let spec = CayleySpec::new(&d.g, s.set().clone())?;
                Ok((m, lambda_direct(&spec, cfg.dense_cap)?))
            })
            .collect();
        let lambdas: HashMap<u64, f64> = collect(lambdas)?.into_iter().collect();
        for s in &sets {
            let ld = lambdas[&s.mask()];
            let (_, rmax) = d.tab.r_extremes(s)?;
            records.push(CheckRecord::at_most(
                "specchi-ineq",
                d.g.label(),
                d.g.order(),
                format!("S=classes{:?}", s.classes()),
                ld,
                rmax,
                tol,
            ));
        }
    }
    Ok(records.into())
}

fn two_step_sweep(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in groups {
        let mut rng = rng_for(cfg.seed, 3, d.g.label());
        let n = d.g.order();
        let cases: Vec<(NormalSubset, Subset)> = normal_sweep_sized(&d.ct, cfg.seed, cfg.sweep_cap)
            .into_iter()
            .flat_map(|a| (0..100).map(|_| (a.clone(), Subset::random_nonempty(n, &mut rng))).collect::<Vec<_>>())
            .collect();
        let recs: Vec<Result<CheckRecord>> = cases.par_iter().map(|(a, b)| check_2step(&d.g, &d.tab, a, b)).collect();
        records.extend(collect(recs)?);
    }
    Ok(records.into())
}

fn gowers2_sweep(a5: &[&GroupData], classes: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in a5 {
        let sweep = normal_sweep_sized(&d.ct, cfg.seed, cfg.sweep_cap);
        let pairs: Vec<(&NormalSubset, &NormalSubset)> =
            sweep.iter().flat_map(|a| sweep.iter().map(move |b| (a, b))).collect();
        let recs: Vec<_> = pairs.par_iter().map(|(a, b)| check_gowers2_all(&d.g, &d.ct, &d.tab, a, b)).collect();
        records.extend(flatten(recs)?);
    }
    for d in classes {
        let k = d.ct.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        let recs: Vec<_> = pairs
            .par_iter()
            .map(|&(i, j)| check_gowers2_all(&d.g, &d.ct, &d.tab, &class_set(d, i), &class_set(d, j)))
            .collect();
        records.extend(flatten(recs)?);
    }
    let skipped = records.iter().filter(|r| r.status == Status::Skipped).count();
    Ok(Outcome {
        detail: format!("{skipped} triples below the size hypothesis"),
        records,
        failure: None,
    })
}

fn asymp_sweep(a5: &[&GroupData], random: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in a5 {
        let sweep = normal_sweep_sized(&d.ct, cfg.seed, cfg.sweep_cap);
        let pairs: Vec<(&NormalSubset, &NormalSubset)> =
            sweep.iter().flat_map(|a| sweep.iter().map(move |b| (a, b))).collect();
        let recs: Vec<_> = pairs.par_iter().map(|(a, b)| check_asymp(&d.g, &d.ct, &d.tab, a, b)).collect();
        records.extend(flatten(recs)?);
    }
    for d in random {
        let mut rng = rng_for(cfg.seed, 5, d.g.label());
        let pairs: Vec<(NormalSubset, NormalSubset)> = (0..1000)
            .map(|_| (NormalSubset::random(&d.ct, &mut rng), NormalSubset::random(&d.ct, &mut rng)))
            .collect();
        let recs: Vec<_> = pairs.par_iter().map(|(a, b)| check_asymp(&d.g, &d.ct, &d.tab, a, b)).collect();
        records.extend(flatten(recs)?);
    }
    let equalities = records.iter().filter(|r| r.note.is_some()).count();
    Ok(Outcome {
        detail: format!("{equalities} equality hits"),
        records,
        failure: None,
    })
}

fn frobenius_oracle(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.get("frobenius");
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    for d in groups {
        let k = d.ct.len();
        let triples: Vec<(usize, usize, usize)> =
            (0..k).flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l)))).collect();
        let recs: Vec<Result<CheckRecord>> = triples
            .par_iter()
            .map(|&(i, j, l)| {
                let (a, b) = (class_set(d, i), class_set(d, j));
                let x = pair_count_frobenius(&d.tab, &a, &b, l);
                let c = pab_exact(&d.g, a.set(), b.set(), d.ct.rep(l))?.count;
                let rel = (x.re - c as f64).abs() / (c as f64).max(1.0);
                Ok(CheckRecord::at_most(
                    "frobenius",
                    d.g.label(),
                    d.g.order(),
                    format!("i={i} j={j} k={l} exact={c} formula={:.9}", x.re),
                    rel,
                    tol,
                    0.0,
                )
                .and(x.re.round() == c as f64, "rounded formula differs from exact count")
                .and(x.im.abs() <= tol, "imaginary part"))
            })
            .collect();
        for r in collect(recs)? {
            worst = worst.max(r.lhs);
            records.push(r);
        }
    }
    Ok(Outcome {
        detail: format!("max relative deviation {worst:.3e}"),
        records,
        failure: None,
    })
}

fn table_certification(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let orth = cfg.tolerances.get("orthogonality");
    let integ = cfg.tolerances.get("integrality");
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    for d in groups {
        let (label, n) = (d.g.label(), d.g.order());
        worst = worst.max(d.tab.residual());
        records.push(CheckRecord::at_most("orthogonality", label, n, String::new(), d.tab.residual(), orth, 0.0));
        records.push(CheckRecord::at_most(
            "degree-integrality",
            label,
            n,
            String::new(),
            d.tab.degree_integrality(),
            integ,
            0.0,
        ));
        let sum: u64 = d.tab.rounded_degrees().iter().map(|x| x * x).sum();
        let ok = sum == n as u64;
        records.push(CheckRecord::with_status(
            "sum-degrees-squared",
            label,
            n,
            String::new(),
            sum as f64,
            n as f64,
            if ok { Status::Pass } else { Status::Fail },
        ));
        let expected: Option<&[u64]> = match d.spec.as_str() {
            "A:5" => Some(&[1, 3, 3, 4, 5]),
            "PSL2:7" => Some(&[1, 3, 3, 6, 7, 8]),
            _ => None,
        };
        if let Some(exp) = expected {
            let mut got = d.tab.rounded_degrees();
            got.sort_unstable();
            let ok = got == exp;
            records.push(CheckRecord::with_status(
                "degrees",
                label,
                n,
                format!("degrees={got:?} expected={exp:?}"),
                got.len() as f64,
                exp.len() as f64,
                if ok { Status::Pass } else { Status::Fail },
            ));
        }
    }
    Ok(Outcome {
        detail: format!("max residual {worst:.3e}"),
        records,
        failure: None,
    })
}

fn gluck(groups: &[&GroupData]) -> Result<Outcome> {
    let mut records = Vec::new();
    let mut table = Vec::new();
    for d in groups {
        let rep = gluck_report(&d.g, &d.tab)?;
        table.push(format!("{}:{:.4}", rep.group, rep.sqrt_q_r_max));
        records.push(rep.record(d.g.order()));
        records.push(CheckRecord::with_status(
            "gluck-constant",
            d.g.label(),
            d.g.order(),
            format!("q={}", rep.q),
            rep.sqrt_q_r_max,
            0.0,
            Status::Info,
        ));
    }
    Ok(Outcome {
        detail: format!("sqrt(q)*R_max {}", table.join(" ")),
        records,
        failure: None,
    })
}

fn dichotomy(groups: &[&GroupData]) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in groups {
        let k = d.ct.len();
        let sets: Vec<NormalSubset> = (1u64..1 << k)
            .map(|m| NormalSubset::from_mask(&d.ct, m))
            .filter(|a| a.is_nontrivial())
            .collect();
        let recs: Vec<_> = sets.par_iter().map(|a| dichotomy_check(&d.g, &d.tab, a)).collect();
        records.extend(collect(recs)?);
    }
    let cover = records.iter().filter(|r| r.check == "dichotomy-cover").count();
    Ok(Outcome {
        detail: format!("{cover} covering, {} growing", records.len() - cover),
        records,
        failure: None,
    })
}

fn random_distribution(n: usize, dense: bool, rng: &mut ChaCha8Rng) -> Distribution {
    if dense {
        Distribution::random_dense(n, rng)
    } else {
        Distribution::random_sparse(n, rng)
    }
}

fn convolution(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let tol = cfg.tolerances.get("wlambda");
    let mut records = Vec::new();
    let mut ms = Vec::new();
    for d in groups {
        let n = d.g.order();
        let m = d.tab.min_nontrivial_degree()?;
        ms.push(format!("m({})={m}", d.g.label()));
        let mut rng = rng_for(cfg.seed, 10, d.g.label());
        let pairs: Vec<(Distribution, Distribution)> = (0..1000)
            .map(|i| {
                let x = random_distribution(n, i % 2 == 0, &mut rng);
                let y = random_distribution(n, i % 4 < 2, &mut rng);
                (x, y)
            })
            .collect();
        let recs: Vec<_> = pairs.par_iter().map(|(x, y)| check_bnp_star(&d.g, m, x, y)).collect();
        records.extend(collect(recs)?);
        let ys: Vec<Distribution> = (0..100).map(|i| random_distribution(n, i % 2 == 0, &mut rng)).collect();
        let recs: Vec<_> = ys.par_iter().map(|y| check_weighted_lambda(&d.g, m, y)).collect();
        records.extend(collect(recs)?);
        let recs: Vec<Result<CheckRecord>> = (1..d.ct.len())
            .into_par_iter()
            .map(|c| {
                let s = class_set(d, c);
                let wl = weighted_cayley_lambda(&d.g, &Distribution::from_subset(s.set())?)?;
                let ld = lambda_direct(&CayleySpec::new(&d.g, s.set().clone())?, cfg.dense_cap)?;
                Ok(CheckRecord::at_most(
                    "wlambda-class",
                    d.g.label(),
                    n,
                    format!("class={c} weighted={wl:.12} direct={ld:.12}"),
                    (wl - ld).abs(),
                    tol,
                    0.0,
                ))
            })
            .collect();
        records.extend(collect(recs)?);
    }
    Ok(Outcome {
        detail: ms.join(" "),
        records,
        failure: None,
    })
}

fn bnp_two_step(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in groups {
        let n = d.g.order();
        let m = d.tab.min_nontrivial_degree()?;
        let mut rng = rng_for(cfg.seed, 11, d.g.label());
        let pairs: Vec<(Subset, Subset)> = (0..500)
            .map(|_| (Subset::random_nonempty(n, &mut rng), Subset::random_nonempty(n, &mut rng)))
            .collect();
        let recs: Vec<_> = pairs.par_iter().map(|(a, b)| check_bnp_two_step(&d.g, m, a, b)).collect();
        records.extend(collect(recs)?);
    }
    Ok(records.into())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn real_census_check(psl2: &[&GroupData], psl3: &[&GroupData]) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in psl2 {
        let p = d.g.characteristic().ok_or(Error::NoCharacteristic)? as usize;
        let n = d.g.order();
        let census = real_census(&d.g, &d.ct, true)?;
        let bad = (0..n as u32)
            .into_par_iter()
            .filter(|&x| gcd(d.g.element_order(x), p) == 1 && !is_real_brute(&d.g, x))
            .count();
        let listed = census.non_real_semisimple.as_ref().map_or(0, |v| v.len());
        records.push(
            CheckRecord::at_most(
                "semisimple-real",
                d.g.label(),
                n,
                format!("p={p} non-real classes={:?}", census.non_real_classes),
                bad as f64,
                0.0,
                0.0,
            )
            .and(listed == 0, "census lists non-real semisimple classes"),
        );
    }
    for d in psl3 {
        let n = d.g.order();
        let census = real_census(&d.g, &d.ct, true)?;
        let brute_real: Vec<bool> = (0..n as u32).into_par_iter().map(|x| is_real_brute(&d.g, x)).collect();
        let mismatched = (0..d.ct.len())
            .filter(|&c| d.ct.class(c).iter().any(|&x| brute_real[x as usize] != d.ct.is_real(c)))
            .count();
        let real_elements = brute_real.iter().filter(|&&r| r).count();
        records.push(
            CheckRecord::at_most(
                "census-agreement",
                d.g.label(),
                n,
                format!(
                    "real elements census={} brute={real_elements} non-real classes={:?}",
                    census.real_elements, census.non_real_classes
                ),
                mismatched as f64,
                0.0,
                0.0,
            )
            .and(real_elements == census.real_elements, "real element counts differ"),
        );
        records.push(CheckRecord::below(
            "real-fraction",
            d.g.label(),
            n,
            format!("real classes={}/{}", census.real_classes, census.class_count),
            census.real_fraction(),
            1.0,
            0.0,
        ));
    }
    Ok(records.into())
}

fn mixing(groups: &[&GroupData], cfg: &RunConfig) -> Result<Outcome> {
    let mut records = Vec::new();
    for d in groups {
        let n = d.g.order();
        let mut rng = rng_for(cfg.seed, 13, d.g.label());
        for c in 1..d.ct.len() {
            let spec = CayleySpec::new(&d.g, class_set(d, c).set().clone())?;
            let pairs: Vec<(Subset, Subset)> = (0..500)
                .map(|_| {
                    // allow empty sets now and then
                    let a = Subset::random_of_size(n, rng.gen_range(0..=n), &mut rng);
                    let b = Subset::random_of_size(n, rng.gen_range(0..=n), &mut rng);
                    (a, b)
                })
                .collect();
            let recs: Vec<_> = pairs
                .par_iter()
                .map(|(a, b)| mixing_discrepancy(&spec, &d.ct, &d.tab, a, b))
                .collect();
            records.extend(collect(recs)?);
        }
    }
    Ok(records.into())
}

/// Criteria 1–13 on a freshly built catalog.
pub fn run_criteria(profile: Profile, cfg: &RunConfig, mut progress: impl FnMut(&CriterionOutcome)) -> Result<Vec<CriterionOutcome>> {
    let catalog = Catalog::build(profile, cfg)?;
    let mut out = Vec::new();
    let mut push = |o: CriterionOutcome| {
        progress(&o);
        out.push(o);
    };

    let (g, miss) = catalog.pick(SPECCHI_GROUPS);
    let t = Instant::now();
    push(finish(1, "specchi-equality", &g, miss, t, specchi_equality(&g, cfg, t)));

    let (g, miss) = catalog.pick(SPECCHI_GROUPS);
    let t = Instant::now();
    push(finish(2, "specchi-inequality", &g, miss, t, specchi_inequality(&g, cfg)));

    let (g, miss) = catalog.pick(SMALL_GROUPS);
    let t = Instant::now();
    push(finish(3, "two-step-growth", &g, miss, t, two_step_sweep(&g, cfg)));

    let t = Instant::now();
    let (a5, mut miss) = catalog.pick(&["A:5"]);
    let (cls, miss2) = catalog.pick(&["PSL2:7", "PSL2:11"]);
    miss.extend(miss2);
    let all: Vec<&GroupData> = a5.iter().chain(&cls).copied().collect();
    push(finish(4, "two-subset-covering", &all, miss, t, gowers2_sweep(&a5, &cls, cfg)));

    let t = Instant::now();
    let (a5, mut miss) = catalog.pick(&["A:5"]);
    let (rnd, miss2) = catalog.pick(&["PSL2:7"]);
    miss.extend(miss2);
    let all: Vec<&GroupData> = a5.iter().chain(&rnd).copied().collect();
    push(finish(5, "decomposition-probability", &all, miss, t, asymp_sweep(&a5, &rnd, cfg)));

    let t = Instant::now();
    let small: Vec<&GroupData> = catalog.all(profile).into_iter().filter(|d| d.g.order() <= 700).collect();
    push(finish(6, "frobenius-oracle", &small, Vec::new(), t, frobenius_oracle(&small, cfg)));

    let t = Instant::now();
    let mut certified: Vec<&GroupData> = catalog.all(profile);
    certified.retain(|d| d.spec != "PSL2:5");
    push(finish(7, "table-certification", &certified, Vec::new(), t, table_certification(&certified, cfg)));

    let (g, miss) = catalog.pick(GLUCK_GROUPS);
    let t = Instant::now();
    push(finish(8, "character-ratio-bound", &g, miss, t, gluck(&g)));

    let (g, miss) = catalog.pick(SMALL_GROUPS);
    let t = Instant::now();
    push(finish(9, "square-dichotomy", &g, miss, t, dichotomy(&g)));

    let (g, miss) = catalog.pick(SMALL_GROUPS);
    let t = Instant::now();
    push(finish(10, "convolution-inequality", &g, miss, t, convolution(&g, cfg)));

    let (g, miss) = catalog.pick(SPECCHI_GROUPS);
    let t = Instant::now();
    push(finish(11, "degree-two-step", &g, miss, t, bnp_two_step(&g, cfg)));

    let t = Instant::now();
    let (p2, mut miss) = catalog.pick(PSL2_CENSUS);
    let (p3, miss2) = catalog.pick(&["PSL3:3"]);
    miss.extend(miss2);
    let all: Vec<&GroupData> = p2.iter().chain(&p3).copied().collect();
    push(finish(12, "real-census", &all, miss, t, real_census_check(&p2, &p3)));

    let (g, miss) = catalog.pick(SMALL_GROUPS);
    let t = Instant::now();
    push(finish(13, "mixing-lemma", &g, miss, t, mixing(&g, cfg)));

    Ok(out)
}

fn body_of(outcomes: &[CriterionOutcome]) -> String {
    serde_json::to_string(&outcomes.iter().map(|o| (&o.records, o.status, &o.detail)).collect::<Vec<_>>())
        .expect("serializable")
}

pub struct SuiteResult {
    pub profile: Profile,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn records(&self) -> Vec<CheckRecord> {
        self.outcomes.iter().flat_map(|o| o.records.iter().cloned()).collect()
    }
}

/// Runs criteria 1–13, then repeats them from scratch with the same seed and
/// compares the serialized bodies (criterion 14). `progress` sees each
/// outcome as it completes.
pub fn run_suite(profile: Profile, cfg: &RunConfig, mut progress: impl FnMut(&CriterionOutcome)) -> Result<SuiteResult> {
    let mut outcomes = run_criteria(profile, cfg, &mut progress)?;
    let t = Instant::now();
    let again = run_criteria(profile, cfg, |_| {})?;
    let mismatched: Vec<u8> = outcomes
        .iter()
        .zip(&again)
        .filter(|(a, b)| body_of(std::slice::from_ref(a)) != body_of(std::slice::from_ref(b)))
        .map(|(a, _)| a.id)
        .collect();
    let identical = body_of(&outcomes) == body_of(&again);
    let rec = CheckRecord::at_most(
        "determinism",
        &format!("profile:{profile}"),
        0,
        format!("criteria 1-13 rerun; mismatched={mismatched:?}"),
        mismatched.len() as f64,
        0.0,
        0.0,
    )
    .and(identical, "report bodies differ");
    let names: Vec<String> = outcomes.iter().map(|o| o.name.to_string()).collect();
    let o = finish(
        14,
        "determinism",
        &[],
        Vec::new(),
        t,
        Ok(Outcome {
            records: vec![rec],
            detail: format!("{} criteria compared", names.len()),
            failure: None,
        }),
    );
    let o = CriterionOutcome {
        // the check covers the whole profile rather than named groups
        status: if o.failures == 0 { Status::Pass } else { Status::Fail },
        groups: vec![format!("profile:{profile}")],
        ..o
    };
    progress(&o);
    outcomes.push(o);
    Ok(SuiteResult { profile, outcomes })
}
