use mzv_core::curve::CurveRing;
use mzv_core::symbolic::{
    closed_form, load_expressions, parse, verify_conjecture33, verify_forms, x_twist, ClosedForm, MultiPoly,
    ReductionSystem, ETA, Y,
};
use mzv_core::MzvError;
use proptest::prelude::*;

const LABELS: [&str; 4] = ["LRT-i", "LRT-ii", "LRT-iii", "LRT-iv"];

fn build(label: &str, terms: &[([u32; 4], u8)]) -> (std::sync::Arc<CurveRing>, ReductionSystem, MultiPoly) {
    let ring = CurveRing::from_label(label).unwrap();
    let sys = ReductionSystem::new(&ring).unwrap();
    let q = ring.q() as u8;
    let mut p = MultiPoly::zero();
    for (e, c) in terms {
        p = p.add(sys.field(), &MultiPoly::monomial((c % q) as _, *e));
    }
    (ring, sys, p)
}

fn poly_strategy() -> impl Strategy<Value = (usize, Vec<([u32; 4], u8)>)> {
    (0..4usize, prop::collection::vec(([0..5u32, 0..6u32, 0..4u32, 0..6u32], 1..5u8), 0..6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_order_does_not_matter((i, terms) in poly_strategy()) {
        let (_, sys, p) = build(LABELS[i], &terms);
        prop_assert_eq!(sys.normal_form(&p), sys.normal_form_reversed(&p));
    }

    #[test]
    fn normal_form_is_reduced_and_idempotent((i, terms) in poly_strategy()) {
        let (_, sys, p) = build(LABELS[i], &terms);
        let nf = sys.normal_form(&p);
        prop_assert!(nf.terms().keys().all(|e| e[ETA] < 2 && e[Y] < 2));
        prop_assert_eq!(sys.normal_form(&nf), nf);
    }

    #[test]
    fn specialization_commutes_with_reduction((i, terms) in poly_strategy(), j in 1..3u32) {
        let (ring, sys, p) = build(LABELS[i], &terms);
        let vals = [ring.theta(), ring.eta(), ring.frob_k(&ring.theta(), j), ring.frob_k(&ring.eta(), j)];
        prop_assert_eq!(p.specialize(&ring, &vals), sys.normal_form(&p).specialize(&ring, &vals));
    }
}

#[test]
fn stored_terms_match_their_source() {
    for e in load_expressions().unwrap() {
        let ring = CurveRing::from_label(&e.ring).unwrap();
        let f = ring.fq();
        assert_eq!(parse(f, &e.source_num).unwrap(), MultiPoly::from_terms(f, &e.num), "{} {} num", e.ring, e.side);
        assert_eq!(parse(f, &e.source_den).unwrap(), MultiPoly::from_terms(f, &e.den), "{} {} den", e.ring, e.side);
    }
}

#[test]
fn closed_forms_agree_on_every_ring() {
    for label in LABELS {
        assert!(verify_conjecture33(label).unwrap().pass, "{label}");
    }
}

#[test]
fn every_single_coefficient_mutation_is_caught() {
    for label in LABELS {
        let ring = CurveRing::from_label(label).unwrap();
        let sys = ReductionSystem::new(&ring).unwrap();
        let f = sys.field();
        let direct = closed_form(label, "direct").unwrap();
        let derived = closed_form(label, "derived").unwrap();
        for e in direct.num.terms().keys() {
            for c in 1..ring.q() {
                let m = ClosedForm { num: direct.num.add(f, &MultiPoly::monomial(c as _, *e)), den: direct.den.clone() };
                assert!(!verify_forms(&sys, &m, &derived).pass, "{label} {e:?} +{c}");
            }
        }
    }
}

#[test]
fn short_form_of_ring_ii_numerator_is_wrong() {
    let ring = CurveRing::from_label("LRT-ii").unwrap();
    let sys = ReductionSystem::new(&ring).unwrap();
    let f = sys.field();
    let derived = closed_form("LRT-ii", "derived").unwrap();
    let direct = closed_form("LRT-ii", "direct").unwrap();
    let short = ClosedForm { num: parse(f, "(X-t)*(Y-e)^2 - X^2 + (1-t^3)*X + t^2 - t").unwrap(), den: direct.den.clone() };
    let long = ClosedForm { num: parse(f, "(X-t)*(Y-e)^2 - X^2 + (1-t^3)*X + t^4 + t^2 - t").unwrap(), den: direct.den };
    assert!(verify_forms(&sys, &long, &derived).pass);
    let v = verify_forms(&sys, &short, &derived);
    assert!(!v.pass);
    assert!(v.witness.is_some());
}

#[test]
fn genus_zero_and_n_zero_are_rejected() {
    let g0 = CurveRing::from_label("genus0-q2").unwrap();
    assert!(matches!(ReductionSystem::new(&g0), Err(MzvError::Domain(_))));
    assert!(matches!(x_twist("LRT-i", 0), Err(MzvError::Domain(_))));
    assert_eq!(x_twist("LRT-iv", 3).unwrap(), 2);
    assert_eq!(x_twist("LRT-ii", 3).unwrap(), 3);
}
