use normexp::commands::{cmd_chartable, cmd_dist, cmd_growth, cmd_lambda, DistCheck, GrowthCheck, GrowthOptions, TableAction};
use normexp::config::RunConfig;
use normexp::expr::SubsetExpr;
use normexp_core::check::Status;
use proptest::prelude::*;

fn cfg(group: &str) -> RunConfig {
    RunConfig {
        group: group.into(),
        seed: 11,
        ..RunConfig::default()
    }
}

#[test]
fn lambda_single_class_matches_characters() {
    let doc = cmd_lambda(&cfg("PSL2:7"), &"class:1".parse().unwrap()).unwrap();
    assert!(doc.passed());
    let eq = doc.records.iter().find(|r| r.check == "specchi-eq").unwrap();
    assert!(eq.lhs < 1e-6);
    let direct = doc.data["lambda_direct"].as_f64().unwrap();
    let chi = doc.data["lambda_char"].as_f64().unwrap();
    assert!((direct - chi).abs() < 1e-6);
}

#[test]
fn reports_are_deterministic_apart_from_timestamp() {
    let opts = GrowthOptions::default();
    let a = cmd_growth(&cfg("A:5"), GrowthCheck::TwoStep, &opts).unwrap();
    let b = cmd_growth(&cfg("A:5"), GrowthCheck::TwoStep, &opts).unwrap();
    assert_eq!(a.body_json(), b.body_json());
    let a = cmd_dist(&cfg("A:5"), DistCheck::Bnp, 20).unwrap();
    let b = cmd_dist(&cfg("A:5"), DistCheck::Bnp, 20).unwrap();
    assert_eq!(a.body_json(), b.body_json());
}

#[test]
fn growth_checks_pass_on_a5() {
    for check in [GrowthCheck::TwoStep, GrowthCheck::Gowers2, GrowthCheck::Asymp, GrowthCheck::Dichotomy] {
        let doc = cmd_growth(&cfg("A:5"), check, &GrowthOptions::default()).unwrap();
        assert!(doc.passed(), "{check:?}");
        assert!(doc.records.iter().any(|r| r.status == Status::Pass), "{check:?}");
    }
}

#[test]
fn gluck_needs_lie_type() {
    assert!(cmd_growth(&cfg("S:5"), GrowthCheck::Gluck, &GrowthOptions::default()).is_err());
    let doc = cmd_growth(&cfg("PSL2:8"), GrowthCheck::Gluck, &GrowthOptions::default()).unwrap();
    assert_eq!(doc.records.len(), 1);
    assert!(doc.passed());
}

#[test]
fn table_export_import_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5.json");
    let c = cfg("A:5");
    assert!(cmd_chartable(&c, &TableAction::Export(path.clone())).unwrap().passed());
    let imported = cmd_chartable(&c, &TableAction::Import(path.clone())).unwrap();
    assert!(imported.passed());
    assert_eq!(imported.header.n, Some(60));
    let verified = cmd_chartable(&c, &TableAction::Verify(Some(path))).unwrap();
    assert!(verified.passed());
    assert_eq!(verified.records.iter().filter(|r| r.check == "frobenius").count(), 125);
}

#[test]
fn verify_rejects_table_of_another_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    cmd_chartable(&cfg("S:4"), &TableAction::Export(path.clone())).unwrap();
    assert!(cmd_chartable(&cfg("A:5"), &TableAction::Verify(Some(path))).is_err());
}

#[test]
fn wlambda_agrees_with_unweighted_on_classes() {
    let doc = cmd_dist(&cfg("A:5"), DistCheck::Wlambda, 10).unwrap();
    assert!(doc.passed());
    assert_eq!(doc.records.iter().filter(|r| r.check == "wlambda-class").count(), 4);
}

fn expr_strategy() -> impl Strategy<Value = SubsetExpr> {
    prop_oneof![
        (0usize..50).prop_map(SubsetExpr::Class),
        prop::collection::vec(0usize..50, 1..6).prop_map(SubsetExpr::Classes),
        Just(SubsetExpr::AllNonIdentity),
        Just(SubsetExpr::ComplementReal),
        "[xyXY]{1,8}".prop_filter_map("reduces to the empty word", |w| w.parse().ok().map(SubsetExpr::Word)),
    ]
}

proptest! {
    #[test]
    fn subset_expr_round_trips(e in expr_strategy()) {
        let back: SubsetExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(back, e);
    }
}
