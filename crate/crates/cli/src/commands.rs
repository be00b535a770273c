//! Command implementations; each returns a [`ReportDocument`].

use std::path::PathBuf;

use normexp_core::build::from_spec;
use normexp_core::chartable::{load_table, save_table, ClassMultTensor, TableFile};
use normexp_core::check::{CheckRecord, Status};
use normexp_core::classes::real_census;
use normexp_core::distribution::{check_bnp_star, check_bnp_two_step, check_weighted_lambda, weighted_cayley_lambda};
use normexp_core::growth::{
    asymp_big_report, check_2step, check_asymp, check_gowers2, check_gowers2_all, dichotomy_check, gluck_report,
    normal_sweep_sized, pyber_report, square_growth_survey, word_growth_report, EXHAUSTIVE_SWEEP_CAP,
};
use normexp_core::spectral::{spectral_report, CayleySpec};
use normexp_core::words::{Word, DEFAULT_WORD_CAP};
use normexp_core::{CharacterTable, ClassTable, Distribution, Error, FiniteGroup, NormalSubset, Result, Subset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::expr::SubsetExpr;
use crate::report::{Header, ReportDocument, TOOL_VERSION};
use crate::suite::{run_suite, CriterionOutcome, Profile, SuiteResult};

fn header(cfg: &RunConfig, command: &str, g: Option<(&str, usize, usize)>) -> Header {
    Header {
        tool: "normexp".into(),
        version: TOOL_VERSION.into(),
        command: command.into(),
        group: g.map(|(l, _, _)| l.to_string()),
        n: g.map(|(_, n, _)| n),
        class_count: g.map(|(_, _, k)| k),
        seed: cfg.seed,
        tolerances: cfg.tolerances.map().clone(),
        timestamp: chrono::Utc::now().to_rfc3339(),
    }
}

struct Loaded {
    g: FiniteGroup,
    ct: ClassTable,
}

impl Loaded {
    fn new(cfg: &RunConfig) -> Result<Self> {
        cfg.validate()?;
        let g = from_spec(&cfg.group, cfg.order_cap)?;
        let ct = ClassTable::compute(&g);
        Ok(Loaded { g, ct })
    }

    fn table(&self, cfg: &RunConfig) -> Result<CharacterTable> {
        CharacterTable::compute(&self.g, &self.ct, cfg.seed)
    }

    fn header(&self, cfg: &RunConfig, command: &str) -> Header {
        header(cfg, command, Some((self.g.label(), self.g.order(), self.ct.len())))
    }

    fn resolve(&self, e: &SubsetExpr) -> Result<NormalSubset> {
        e.resolve(&self.g, &self.ct, DEFAULT_WORD_CAP)
    }
}

pub fn cmd_group(cfg: &RunConfig) -> Result<ReportDocument> {
    let l = Loaded::new(cfg)?;
    let census = real_census(&l.g, &l.ct, l.g.characteristic().is_some())?;
    let classes: Vec<Value> = (0..l.ct.len())
        .map(|c| {
            json!({
                "index": c,
                "size": l.ct.size(c),
                "order": l.ct.element_order(c),
                "rep": l.g.element(l.ct.rep(c)).to_string(),
                "real": l.ct.is_real(c),
                "inverse_class": l.ct.inverse_class(c),
            })
        })
        .collect();
    let data = json!({
        "order": l.g.order(),
        "degree": l.g.degree(),
        "characteristic": l.g.characteristic(),
        "classes": classes,
        "real_census": census,
        "real_fraction": census.real_fraction(),
    });
    Ok(ReportDocument::new(l.header(cfg, "group"), Vec::new(), data))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableAction {
    Compute,
    /// Certify a freshly computed table, or a stored one against the group.
    Verify(Option<PathBuf>),
    Export(PathBuf),
    Import(PathBuf),
}

fn certification_records(tab: &CharacterTable, cfg: &RunConfig) -> Vec<CheckRecord> {
    let (label, n) = (tab.label(), tab.order());
    let sum: u64 = tab.rounded_degrees().iter().map(|d| d * d).sum();
    vec![
        CheckRecord::at_most(
            "orthogonality",
            label,
            n,
            String::new(),
            tab.residual(),
            cfg.tolerances.get("orthogonality"),
            0.0,
        ),
        CheckRecord::at_most(
            "degree-integrality",
            label,
            n,
            String::new(),
            tab.degree_integrality(),
            cfg.tolerances.get("integrality"),
            0.0,
        ),
        CheckRecord::with_status(
            "sum-degrees-squared",
            label,
            n,
            String::new(),
            sum as f64,
            n as f64,
            if sum == n as u64 { Status::Pass } else { Status::Fail },
        ),
    ]
}

/// Every structure constant recovered from `tab` must round to the brute-force count.
fn frobenius_records(l: &Loaded, tab: &CharacterTable, cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    if tab.class_sizes() != l.ct.sizes().as_slice() {
        return Err(Error::Schema("table class sizes do not match the group's class order".into()));
    }
    let tensor = ClassMultTensor::compute(&l.g, &l.ct);
    let k = l.ct.len();
    let tol = cfg.tolerances.get("frobenius");
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for m in 0..k {
                let x = tab.frobenius_coefficient(i, j, m);
                let c = tensor.get(i, j, m) as f64;
                out.push(
                    CheckRecord::at_most(
                        "frobenius",
                        l.g.label(),
                        l.g.order(),
                        format!("i={i} j={j} k={m} exact={c}"),
                        (x.re - c).abs() / c.max(1.0),
                        tol,
                        0.0,
                    )
                    .and(x.re.round() == c, "rounded formula differs from exact count"),
                );
            }
        }
    }
    Ok(out)
}

pub fn cmd_chartable(cfg: &RunConfig, action: &TableAction) -> Result<ReportDocument> {
    if let TableAction::Import(path) = action {
        let tab = load_table(path)?;
        let h = header(cfg, "chartable import", Some((tab.label(), tab.order(), tab.class_count())));
        let records = certification_records(&tab, cfg);
        return Ok(ReportDocument::new(h, records, json!(TableFile::from(&tab))));
    }
    let l = Loaded::new(cfg)?;
    let (command, tab, mut records, data) = match action {
        TableAction::Compute => {
            let tab = l.table(cfg)?;
            let recs = certification_records(&tab, cfg);
            let data = json!(TableFile::from(&tab));
            ("chartable compute", tab, recs, data)
        }
        TableAction::Verify(path) => {
            let tab = match path {
                Some(p) => load_table(p)?,
                None => l.table(cfg)?,
            };
            let mut recs = certification_records(&tab, cfg);
            recs.extend(frobenius_records(&l, &tab, cfg)?);
            ("chartable verify", tab, recs, Value::Null)
        }
        TableAction::Export(path) => {
            let tab = l.table(cfg)?;
            save_table(&tab, path)?;
            let recs = certification_records(&tab, cfg);
            ("chartable export", tab, recs, json!({ "path": path }))
        }
        TableAction::Import(_) => unreachable!(),
    };
    if let Ok(m) = tab.min_nontrivial_degree() {
        records.push(CheckRecord::with_status(
            "min-degree",
            l.g.label(),
            l.g.order(),
            String::new(),
            m as f64,
            0.0,
            Status::Info,
        ));
    }
    Ok(ReportDocument::new(l.header(cfg, command), records, data))
}

pub fn cmd_lambda(cfg: &RunConfig, expr: &SubsetExpr) -> Result<ReportDocument> {
    let l = Loaded::new(cfg)?;
    let tab = l.table(cfg)?;
    let s = l.resolve(expr)?;
    let spec = CayleySpec::new(&l.g, s.set().clone())?;
    let rep = spectral_report(&spec, &l.ct, &tab, cfg.dense_cap)?;
    let tol = cfg.tolerances.get("specchi");
    let (label, n) = (l.g.label(), l.g.order());
    let inputs = format!("S={expr} classes={:?}", s.classes());
    let mut records = vec![CheckRecord::at_most(
        "lambda-range",
        label,
        n,
        inputs.clone(),
        rep.lambda_direct,
        1.0,
        cfg.tolerances.get("slack"),
    )];
    if let Some(lc) = rep.lambda_char {
        if s.classes().len() == 1 {
            records.push(CheckRecord::at_most(
                "specchi-eq",
                label,
                n,
                inputs.clone(),
                (rep.lambda_direct - lc).abs(),
                tol,
                0.0,
            ));
        }
        if let Some(rmax) = rep.r_max {
            records.push(CheckRecord::at_most("specchi-ineq", label, n, inputs, rep.lambda_direct, rmax, tol));
        }
    }
    Ok(ReportDocument::new(l.header(cfg, "lambda"), records, json!(rep)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GrowthCheck {
    #[value(name = "2step")]
    TwoStep,
    Gowers2,
    Asymp,
    Dichotomy,
    Survey,
    Pyber,
    Words,
    Gluck,
}

#[derive(Debug, Clone)]
pub struct GrowthOptions {
    pub a: Option<SubsetExpr>,
    pub b: Option<SubsetExpr>,
    pub class: Option<usize>,
    pub trials: usize,
    pub w1: Word,
    pub w2: Word,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            a: None,
            b: None,
            class: None,
            trials: 100,
            w1: "xx".parse().expect("valid word"),
            w2: "xyXY".parse().expect("valid word"),
        }
    }
}

fn growth_sets(l: &Loaded, cfg: &RunConfig, e: &Option<SubsetExpr>) -> Result<Vec<NormalSubset>> {
    match e {
        Some(e) => Ok(vec![l.resolve(e)?]),
        None => Ok(normal_sweep_sized(&l.ct, cfg.seed, cfg.sweep_cap)),
    }
}

/// Pairs of normal subsets: the given ones, else every pair of sweep
/// members while that stays within the exhaustive cap, else seeded draws.
fn normal_pairs(l: &Loaded, cfg: &RunConfig, opts: &GrowthOptions) -> Result<Vec<(NormalSubset, NormalSubset)>> {
    let a = growth_sets(l, cfg, &opts.a)?;
    let b = growth_sets(l, cfg, &opts.b)?;
    if a.len() * b.len() <= EXHAUSTIVE_SWEEP_CAP * 2 {
        return Ok(a.iter().flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone()))).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..opts.trials)
        .map(|_| {
            let x = opts.a.as_ref().map_or_else(|| NormalSubset::random(&l.ct, &mut rng), |_| a[0].clone());
            let y = opts.b.as_ref().map_or_else(|| NormalSubset::random(&l.ct, &mut rng), |_| b[0].clone());
            (x, y)
        })
        .collect())
}

fn collect_records(items: Vec<Result<Vec<CheckRecord>>>) -> Result<Vec<CheckRecord>> {
    Ok(items.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}

pub fn cmd_growth(cfg: &RunConfig, check: GrowthCheck, opts: &GrowthOptions) -> Result<ReportDocument> {
    let l = Loaded::new(cfg)?;
    let tab = l.table(cfg)?;
    let g = &l.g;
    let n = g.order();
    let mut data = Value::Null;
    let records = match check {
        GrowthCheck::TwoStep => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let cases: Vec<(NormalSubset, Subset)> = growth_sets(&l, cfg, &opts.a)?
                .into_iter()
                .flat_map(|a| match &opts.b {
                    Some(e) => vec![(a, l.resolve(e).map(|s| s.set().clone()))],
                    None => (0..opts.trials).map(|_| (a.clone(), Ok(Subset::random_nonempty(n, &mut rng)))).collect(),
                })
                .map(|(a, b)| b.map(|b| (a, b)))
                .collect::<Result<_>>()?;
            cases
                .par_iter()
                .map(|(a, b)| check_2step(g, &tab, a, b))
                .collect::<Result<Vec<_>>>()?
        }
        GrowthCheck::Gowers2 => {
            let pairs = match (&opts.a, &opts.b) {
                (None, None) => {
                    let k = l.ct.len();
                    (0..k)
                        .flat_map(|i| (0..k).map(move |j| (i, j)))
                        .map(|(i, j)| Ok((NormalSubset::from_classes(&l.ct, &[i])?, NormalSubset::from_classes(&l.ct, &[j])?)))
                        .collect::<Result<Vec<_>>>()?
                }
                _ => normal_pairs(&l, cfg, opts)?,
            };
            let recs: Vec<Result<Vec<CheckRecord>>> = pairs
                .par_iter()
                .map(|(a, b)| match opts.class {
                    Some(k) => check_gowers2(g, &l.ct, &tab, a, b, k).map(|r| vec![r]),
                    None => check_gowers2_all(g, &l.ct, &tab, a, b),
                })
                .collect();
            collect_records(recs)?
        }
        GrowthCheck::Asymp => {
            let pairs = normal_pairs(&l, cfg, opts)?;
            let recs: Vec<Result<Vec<CheckRecord>>> = pairs
                .par_iter()
                .map(|(a, b)| {
                    let mut r = check_asymp(g, &l.ct, &tab, a, b)?;
                    if g.lie().is_some() {
                        r.extend(asymp_big_report(g, &l.ct, a, b)?);
                    }
                    Ok(r)
                })
                .collect();
            collect_records(recs)?
        }
        GrowthCheck::Dichotomy => {
            let sets: Vec<NormalSubset> =
                growth_sets(&l, cfg, &opts.a)?.into_iter().filter(|a| a.is_nontrivial()).collect();
            if sets.is_empty() {
                return Err(Error::TrivialSubset);
            }
            sets.par_iter().map(|a| dichotomy_check(g, &tab, a)).collect::<Result<Vec<_>>>()?
        }
        GrowthCheck::Survey => {
            let rep = square_growth_survey(g, &l.ct, &tab, cfg.seed);
            data = json!({ "min_epsilon": rep.min_margin, "counterexamples": rep.counterexamples.len() });
            rep.records
        }
        GrowthCheck::Pyber => {
            let rep = pyber_report(g, &l.ct, cfg.seed);
            data = json!({ "threshold": n as f64 / (n as f64).log2(), "counterexamples": rep.counterexamples });
            rep.records
        }
        GrowthCheck::Words => word_growth_report(g, &l.ct, &tab, &opts.w1, &opts.w2, DEFAULT_WORD_CAP)?.records,
        GrowthCheck::Gluck => {
            let rep = gluck_report(g, &tab)?;
            let rec = rep.record(n);
            data = json!(rep);
            vec![rec]
        }
    };
    let name = format!("growth {}", clap::ValueEnum::to_possible_value(&check).expect("named").get_name());
    Ok(ReportDocument::new(l.header(cfg, &name), records, data))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DistCheck {
    Bnp,
    Bnp2step,
    Wlambda,
}

pub fn cmd_dist(cfg: &RunConfig, check: DistCheck, trials: usize) -> Result<ReportDocument> {
    let l = Loaded::new(cfg)?;
    let tab = l.table(cfg)?;
    let m = tab.min_nontrivial_degree()?;
    let g = &l.g;
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut draw = |i: usize| {
        if i.is_multiple_of(2) {
            Distribution::random_dense(n, &mut rng)
        } else {
            Distribution::random_sparse(n, &mut rng)
        }
    };
    let records = match check {
        DistCheck::Bnp => {
            let pairs: Vec<(Distribution, Distribution)> = (0..trials).map(|i| (draw(i), draw(i / 2))).collect();
            pairs.par_iter().map(|(x, y)| check_bnp_star(g, m, x, y)).collect::<Result<Vec<_>>>()?
        }
        DistCheck::Bnp2step => {
            let pairs: Vec<(Subset, Subset)> = (0..trials)
                .map(|_| (Subset::random_nonempty(n, &mut rng), Subset::random_nonempty(n, &mut rng)))
                .collect();
            pairs.par_iter().map(|(a, b)| check_bnp_two_step(g, m, a, b)).collect::<Result<Vec<_>>>()?
        }
        DistCheck::Wlambda => {
            let ys: Vec<Distribution> = (0..trials).map(&mut draw).collect();
            let mut recs = ys.par_iter().map(|y| check_weighted_lambda(g, m, y)).collect::<Result<Vec<_>>>()?;
            let tol = cfg.tolerances.get("wlambda");
            for c in 1..l.ct.len() {
                let s = NormalSubset::from_classes(&l.ct, &[c])?;
                let wl = weighted_cayley_lambda(g, &Distribution::from_subset(s.set())?)?;
                let ld = normexp_core::spectral::lambda_direct(&CayleySpec::new(g, s.set().clone())?, cfg.dense_cap)?;
                recs.push(CheckRecord::at_most(
                    "wlambda-class",
                    g.label(),
                    n,
                    format!("class={c}"),
                    (wl - ld).abs(),
                    tol,
                    0.0,
                ));
            }
            recs
        }
    };
    let name = format!("dist {}", clap::ValueEnum::to_possible_value(&check).expect("named").get_name());
    let data = json!({ "m": m, "trials": trials });
    Ok(ReportDocument::new(l.header(cfg, &name), records, data))
}

pub fn cmd_acceptance(
    cfg: &RunConfig,
    profile: Profile,
    progress: impl FnMut(&CriterionOutcome),
) -> Result<(ReportDocument, SuiteResult)> {
    cfg.validate()?;
    let result = run_suite(profile, cfg, progress)?;
    let h = header(cfg, &format!("acceptance {profile}"), None);
    let data = json!({ "profile": profile, "criteria": result.outcomes });
    Ok((ReportDocument::new(h, result.records(), data), result))
}
