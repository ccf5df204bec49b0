use std::time::Instant;

use mzv_core::coeff::{Coeffs, SeriesK};
use mzv_core::curve::CurveRing;
use mzv_core::frac::KField;
use mzv_core::powersum::{power_sum_bruteforce, Composition, PowerSumTable, ZetaEngine};

#[test]
fn recursion_matches_enumeration() {
    for (label, dmax) in
        [("genus0-q2", 6), ("genus0-q3", 4), ("LRT-i", 6), ("LRT-ii", 4), ("LRT-iii", 3), ("LRT-iv", 6)]
    {
        let ring = CurveRing::from_label(label).unwrap();
        let kf = KField::new(ring.clone());
        let table = PowerSumTable::new(kf.clone());
        for d in 0..=dmax {
            for n in 1..=7 {
                let fast = table.power_sum(d, n).unwrap();
                let slow = power_sum_bruteforce(&kf, d, n, 1 << 20).unwrap();
                assert!(kf.eq(&fast, &slow), "{label} d={d} n={n}");
            }
        }
    }
}

#[test]
fn series_backend_agrees_with_exact() {
    for label in ["genus0-q3", "LRT-i", "LRT-iii"] {
        let ring = CurveRing::from_label(label).unwrap();
        let kf = KField::new(ring.clone());
        let exact = PowerSumTable::new(kf.clone());
        let sk = SeriesK::new(ring.clone(), 40);
        let series = PowerSumTable::new(sk.clone());
        for d in 0..=4 {
            for n in [1u64, 2, 3, 5, 8] {
                let a = kf.to_laurent(&exact.power_sum(d, n).unwrap(), 30).unwrap();
                let b = series.power_sum(d, n).unwrap();
                let c = sk.laurent().compare(&a, &b, Some(30));
                assert!(c.equal, "{label} d={d} n={n} {c:?} prec {}", b.prec());
            }
        }
    }
}

#[test]
fn depth_two_identity_small() {
    let ring = CurveRing::from_label("genus0-q2").unwrap();
    let t0 = Instant::now();
    let eng = ZetaEngine::new(ring.clone(), 40).unwrap();
    let lr = SeriesK::new(ring, 40);
    let z1 = eng.zeta(&Composition::new(vec![1]).unwrap()).unwrap().value;
    let z3 = eng.zeta(&Composition::new(vec![3]).unwrap()).unwrap().value;
    let z12 = eng.zeta(&Composition::new(vec![1, 2]).unwrap()).unwrap().value;
    let lhs = lr.mul(&z1, &lr.mul(&z1, &z1));
    let rhs = lr.add(&z3, &z12);
    let c = lr.laurent().compare(&lhs, &rhs, Some(40));
    eprintln!("{:?} {:?}", c, t0.elapsed());
    assert!(c.equal && c.checked_prec == 40);
}
