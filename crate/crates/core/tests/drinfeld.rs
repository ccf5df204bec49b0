use std::sync::Arc;

use mzv_core::curve::CurveRing;
use mzv_core::drinfeld::{
    carlitz_hayes, skew_invert, verify_carlitz_hayes, verify_depth2_remark, verify_eulerian, verify_skew_inverse,
    verify_zagier, DrinfeldCoeffs, Shtuka, ShtukaConfig, SkewSeries,
};
use mzv_core::frac::KField;
use mzv_core::laurent::LaurentRing;
use mzv_core::powersum::{Composition, PowerSumTable, ZetaEngine};
use mzv_core::MzvError;

fn ring(label: &str) -> Arc<CurveRing> {
    CurveRing::from_label(label).unwrap()
}

fn coeffs(label: &str, n: usize) -> DrinfeldCoeffs {
    DrinfeldCoeffs::new(Shtuka::for_ring(&ring(label)).unwrap(), n).unwrap()
}

#[test]
fn inverting_exp_gives_log() {
    for label in ["genus0-q2", "genus0-q3", "LRT-i", "LRT-ii", "LRT-iv"] {
        let dc = coeffs(label, 4);
        let kf = dc.kf();
        let inv = skew_invert(kf, &SkewSeries::new(dc.eps.clone())).unwrap();
        for (i, (a, b)) in inv.coeffs.iter().zip(&dc.lam).enumerate() {
            assert!(kf.eq(a, b), "{label} i={i}");
        }
    }
}

#[test]
fn perturbed_coefficients_fail_the_inverse_check() {
    let mut dc = coeffs("LRT-i", 4);
    assert!(verify_skew_inverse(&dc).unwrap().pass);
    let kf = dc.kf().clone();
    dc.eps[3] = kf.add(&dc.eps[3], &kf.one());
    let v = verify_skew_inverse(&dc).unwrap();
    assert!(!v.pass);
    assert!(v.witness.is_some());
}

#[test]
fn zero_constant_term_is_not_invertible() {
    let kf = KField::new(ring("genus0-q2"));
    let s = SkewSeries::new(vec![kf.zero(), kf.one()]);
    assert_eq!(skew_invert(&kf, &s).unwrap_err(), MzvError::NonUnitConstantTerm);
}

#[test]
fn divisor_config_matches_builtin_shtuka() {
    let r = ring("LRT-ii");
    let cfg: ShtukaConfig =
        serde_json::from_str(r#"{ "source": "elliptic_divisor", "alpha": [1, 1], "beta": { "b": [1] } }"#).unwrap();
    let from_cfg = Shtuka::from_config(&r, &cfg).unwrap();
    let builtin = Shtuka::for_ring(&r).unwrap();
    let kf = builtin.kf().clone();
    for (a, b) in from_cfg.epsilons(4).unwrap().iter().zip(builtin.epsilons(4).unwrap().iter()) {
        assert!(kf.eq(a, b));
    }
    let off: ShtukaConfig =
        serde_json::from_str(r#"{ "source": "elliptic_divisor", "alpha": [0], "beta": [0] }"#).unwrap();
    assert!(matches!(Shtuka::from_config(&r, &off), Err(MzvError::Domain(_))));
}

#[test]
fn wrong_ratio_fails_zagier_and_eulerian() {
    let engine = ZetaEngine::new(ring("LRT-i"), 30).unwrap();
    let mut dc = coeffs("LRT-i", 4);
    assert!(verify_zagier(&engine, &dc, 2).unwrap().pass);
    assert!(verify_eulerian(&engine, &dc, 1, 1).unwrap().pass);
    let kf = dc.kf().clone();
    dc.lam[2] = kf.add(&dc.lam[2], &kf.one());
    assert!(!verify_zagier(&engine, &dc, 2).unwrap().pass);
    assert!(!verify_eulerian(&engine, &dc, 1, 1).unwrap().pass);
}

#[test]
fn depth_two_identity_needs_both_terms() {
    let engine = ZetaEngine::new(ring("genus0-q3"), 30).unwrap();
    assert!(verify_depth2_remark(&engine, 1).unwrap().pass);
    let lr = LaurentRing::new(ring("genus0-q3").fq().clone(), 46);
    let z = |s: Vec<u64>| engine.zeta(&Composition::new(s).unwrap()).unwrap().value;
    let lhs = lr.mul(&z(vec![2]), &lr.frob(&z(vec![2]), 1).unwrap());
    assert!(!lr.compare(&lhs, &z(vec![8]), Some(30)).equal);
    assert!(matches!(verify_depth2_remark(&engine, 0), Err(MzvError::Domain(_))));
}

#[test]
fn alpha_needs_positive_n() {
    let dc = coeffs("genus0-q2", 3);
    assert!(matches!(dc.alpha(0, 1), Err(MzvError::Domain(_))));
    let kf = dc.kf();
    for n in 1..=2 {
        assert!(kf.eq(&dc.alpha(n, 1).unwrap(), &dc.alpha_n1(n).unwrap()));
        assert!(kf.eq(&dc.alpha_n1(n).unwrap(), &dc.alpha_n1_shtuka(n).unwrap()));
    }
}

#[test]
fn carlitz_hayes_routes_agree_at_larger_q() {
    let table = PowerSumTable::new(KField::new(ring("genus0-q5")));
    assert!(verify_carlitz_hayes(&table, 3, 1 << 20).unwrap().pass);
    assert!(matches!(carlitz_hayes(&table, 6, 1000), Err(MzvError::EnumerationCapExceeded { .. })));
}
