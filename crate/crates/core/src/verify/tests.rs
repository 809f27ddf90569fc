use super::*;
use crate::presentations::ModeWindow;

fn ctx(deg: usize) -> Context {
    Context::new(VerifyConfig::new(deg, ModeWindow { k: 2, l: 2 }, false))
}

fn run(c: &Context, id: &str, params: &str) -> CheckReport {
    check(c, id, &Params::parse(params).unwrap()).unwrap()
}

#[test]
fn catalog_covers_the_documented_ids() {
    let documented = "THM2_8 COR2_9 PROP2_10 L3_7 L3_8 L3_9 L3_10 L3_11 R3_12 C3_13 C3_14 C3_15 L3_16 \
                      EQ3_19 EQ3_31 ID_LIST PSI_HOM XI_INV MORPH CUR";
    let ids: Vec<&str> = documented.split_whitespace().collect();
    assert_eq!(CATALOG.to_vec(), ids);
    let mut from_suites: Vec<&str> = [Suite::Structural, Suite::Rootvector, Suite::Drinfeld, Suite::Currents]
        .into_iter()
        .flat_map(suite_ids)
        .collect();
    from_suites.sort();
    let mut all = suite_ids(Suite::All);
    all.sort();
    assert_eq!(from_suites, all);
    let c = ctx(8);
    for id in suite_ids(Suite::Rootvector) {
        assert!(!root_grid(id, 2).is_empty(), "{id} has no instances");
    }
    assert!(!instances(&c, Suite::Drinfeld).is_empty());
}

#[test]
fn documented_examples() {
    let c = ctx(8);
    let r = run(&c, "L3_10", "eq=3.6,m=0");
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.line());
    assert_eq!(r.residual.as_deref(), Some("0"));
    assert_eq!(run(&c, "THM2_8", "n=0,line=1").verdict, Verdict::Pass);
    assert_eq!(run(&c, "L3_16", "n=1,m=2").verdict, Verdict::Pass);
}

#[test]
fn unknown_and_out_of_range() {
    let c = ctx(6);
    assert!(matches!(check(&c, "L9_99", &Params::default()), Err(QavError::UnknownCheck(_))));
    // beyond the root table: a missing prerequisite, not an error
    let r = run(&c, "THM2_8", "n=9,line=1");
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.shortfall.unwrap().contains("exceeds the table size"));
}

#[test]
fn verdict_depends_on_the_needed_degree() {
    let c = ctx(6);
    let b = c.basis().unwrap();
    let alpha = &c.uq.alphabet;
    let e1 = c.uq.gen("e1");
    let f1 = c.uq.gen("f1");
    // [e1, f1] alone is nonzero
    let mut d = Difference::new(b);
    d.commutator(&e1, &f1);
    let r = CheckReport::judge("X", &Params::default(), &d.acc, d.need, b, alpha);
    assert_eq!(r.verdict, Verdict::Fail);
    assert_ne!(r.residual.as_deref(), Some("0"));
    let big = EfDeg { e: 7, f: 1 };
    let r = CheckReport::judge("X", &Params::default(), &d.acc, big, b, alpha);
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.shortfall.unwrap().contains("degree 6"));
}

#[test]
fn structural_suite_at_degree_8() {
    let rep = run_suite(Suite::Structural, VerifyConfig::new(8, ModeWindow { k: 2, l: 2 }, false)).unwrap();
    for c in &rep.checks {
        assert_eq!(c.verdict, Verdict::Pass, "{}", c.line());
    }
    assert_eq!(rep.exit_code(), 0);
    assert!(rep.basis_hashes.contains_key("uq") && rep.basis_hashes.contains_key("uq2"));
    let again = run_suite(Suite::Structural, VerifyConfig::new(8, ModeWindow { k: 2, l: 2 }, false)).unwrap();
    assert_eq!(rep.to_json(), again.to_json());
}

#[test]
fn exit_codes() {
    use Verdict::*;
    assert_eq!(exit_code([Pass, Pass], false), 0);
    assert_eq!(exit_code([Pass, Inconclusive], false), 2);
    assert_eq!(exit_code([Inconclusive, Fail], false), 1);
    assert_eq!(exit_code([Pass], true), 2);
    assert_eq!(exit_code([], false), 0);
}

#[test]
fn params_round_trip() {
    let p = Params::parse("eq=3.6, m=0").unwrap();
    assert_eq!(p.text("eq").unwrap(), "3.6");
    assert_eq!(p.int("m").unwrap(), 0);
    assert_eq!(p.describe(), "eq=3.6,m=0");
    assert!(Params::parse("m").is_err());
    assert!(p.int("n").is_err());
}
