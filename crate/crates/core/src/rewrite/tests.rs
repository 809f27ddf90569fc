use proptest::prelude::*;

use super::*;
use crate::error::QavError;
use crate::expr::parse_poly;
use crate::freealg::{Alphabet, NCPoly, Word};
use crate::presentations::{build_uq, Presentation};
use crate::scalars::QRat;

fn uq6() -> (Presentation, RewriteBasis) {
    let p = build_uq();
    let b = complete(&p, 6).unwrap();
    (p, b)
}

#[test]
fn straightening_of_e1_f1() {
    let (p, b) = uq6();
    let x = parse_poly("e1*f1", &p.alphabet).unwrap();
    let want = parse_poly("f1*e1 + (k1 - k1^-1)/(q - q^-1)", &p.alphabet).unwrap();
    assert_eq!(b.reduce(&x), want);
    assert_eq!(b.reduce(&x).to_string_in(&p.alphabet), "f1*e1 + (k1 - k1^-1)/(q - q^-1)");
}

#[test]
fn relations_reduce_to_zero() {
    let (p, b) = uq6();
    for (r, l) in p.relations_with_inverse_pairs().iter().zip(p.labels.iter().chain(std::iter::repeat(&String::new()))) {
        assert!(b.reduce(r).is_zero(), "{l}");
    }
}

#[test]
fn membership_verdicts() {
    let (p, b) = uq6();
    let x = parse_poly("e1*f1 - f1*e1", &p.alphabet).unwrap();
    assert_eq!(b.is_member(&x), Membership::NotMemberUpTo(6));
    let r = parse_poly("k1*e1 + q^2*e1*k1", &p.alphabet).unwrap();
    assert_eq!(b.is_member(&r), Membership::Member);
    let long = parse_poly("e1^4*e2^3", &p.alphabet).unwrap();
    assert!(matches!(b.is_member(&long), Membership::Inconclusive { degree: 7, completion_degree: 6 }));
}

#[test]
fn completion_is_deterministic_and_persists() {
    let (p, b) = uq6();
    let again = complete(&p, 6).unwrap();
    assert_eq!(b.to_json(), again.to_json());
    let back = RewriteBasis::from_json(&b.to_json()).unwrap();
    assert_eq!(back.hash(), b.hash());
    assert_eq!(back.len(), b.len());
    let x = parse_poly("f2*e2*e1*f1*k2", &p.alphabet).unwrap();
    assert_eq!(back.reduce(&x), b.reduce(&x));

    let dir = std::env::temp_dir().join(format!("qav-basis-{}", std::process::id()));
    b.save(&dir).unwrap();
    assert_eq!(RewriteBasis::load(&dir).unwrap().hash(), b.hash());
    std::fs::remove_file(&dir).unwrap();
}

#[test]
fn tampered_file_is_rejected() {
    let (_, b) = uq6();
    let mut f = BasisFile::from_basis(&b);
    f.rules.pop();
    let s = serde_json::to_string(&f).unwrap();
    assert!(matches!(RewriteBasis::from_json(&s), Err(QavError::HashMismatch { .. })));
}

#[test]
fn budget_is_an_error_not_a_truncation() {
    let p = build_uq();
    let tight = Budget { max_rules: 5, ..Budget::default() };
    assert!(matches!(complete_with(&p, 6, tight), Err(QavError::BudgetExceeded(_))));
}

#[test]
fn completion_adds_overlap_consequences() {
    // x y = y x and x y = 0 force y x = 0 as well
    let a = Alphabet::new(&["y", "x"]);
    let xy = parse_poly("x*y", &a).unwrap();
    let yx = parse_poly("y*x", &a).unwrap();
    let p = Presentation::from_relations("toy", a.clone(), vec![("c".into(), xy.sub(&yx)), ("z".into(), xy.clone())]);
    let b = complete(&p, 4).unwrap();
    assert!(b.reduce(&yx).is_zero());
    assert!(!b.reduce(&parse_poly("x*x*y*y + y", &a).unwrap()).is_zero());
}

fn uq_poly(p: &Presentation) -> impl Strategy<Value = NCPoly> {
    let n = p.alphabet.len() as u16;
    let term = (prop::collection::vec(0..n, 0..5), -3i64..=3, -2i64..=2)
        .prop_map(|(w, c, e)| NCPoly::term(&QRat::from_int(c) * &QRat::q_pow(e), Word::from_slice(&w)));
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(NCPoly::zero(), |a, t| a.add(t)))
}

proptest! {
    #[test]
    fn reduce_is_idempotent_and_linear(
        (x, y, c) in {
            let p = build_uq();
            (uq_poly(&p), uq_poly(&p), -3i64..=3)
        }
    ) {
        let (_, b) = uq6_cached();
        let rx = b.reduce(&x);
        prop_assert_eq!(b.reduce(&rx), rx.clone());
        let c = QRat::from_int(c);
        let lin = b.reduce(&x.scale(&c).add(&y));
        prop_assert_eq!(lin, rx.scale(&c).add(&b.reduce(&y)));
        for (w, _) in rx.terms() {
            prop_assert!(!b.is_reducible(w));
        }
    }
}

fn uq6_cached() -> &'static (Presentation, RewriteBasis) {
    static B: std::sync::OnceLock<(Presentation, RewriteBasis)> = std::sync::OnceLock::new();
    B.get_or_init(uq6)
}
