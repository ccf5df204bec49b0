//! Power sums `S_d(n)`, nested sums and `ζ_A`.
//!
//! `e_i(z) = Π_{a∈A(<i)} (z − a)` is additive and satisfies
//! `e_{i+1} = e_i^q − D_i^{q−1} e_i` at non-gap `i` (with `D_i = e_i(η_i)`),
//! and `e_{i+1} = e_i` at gaps. Writing `e_i/D_i = Σ A_{ik} z^{q^k}`,
//! `A_{i0}/(1 − Σ A_{ik} z^{q^k}) = Σ_n S_i(n+1) z^n`, which gives every
//! `S_i(n)` from `dim A(<i) + 1` table entries.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeffs, SeriesK};
use crate::curve::CurveRing;
use crate::error::{MzvError, Result};
use crate::laurent::Laurent;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Composition(Vec<u64>);

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(MzvError::Domain("composition parts must be positive".into()));
        }
        Ok(Composition(parts))
    }
    pub fn empty() -> Self {
        Composition(Vec::new())
    }
    pub fn parts(&self) -> &[u64] {
        &self.0
    }
    pub fn weight(&self) -> u64 {
        self.0.iter().sum()
    }
    pub fn depth(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn first(&self) -> Option<u64> {
        self.0.first().copied()
    }
    pub fn tail(&self) -> Composition {
        Composition(self.0.iter().skip(1).copied().collect())
    }
    /// `(s) ⌢ self`.
    pub fn prepend(&self, s: u64) -> Composition {
        let mut v = vec![s];
        v.extend_from_slice(&self.0);
        Composition(v)
    }

    /// `(q−1, q(q−1), …, q^{k−1}(q−1))`.
    pub fn zagier(q: u64, k: u32) -> Composition {
        Composition((0..k).map(|i| (q - 1) * q.pow(i)).collect())
    }

    /// `(q^n − 1, (q−1)q^n, …, (q−1)q^{n+k−1})`.
    pub fn eulerian(q: u64, n: u32, k: u32) -> Composition {
        let mut v = vec![q.pow(n) - 1];
        v.extend((0..k).map(|i| (q - 1) * q.pow(n + i)));
        Composition(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Debug)]
struct Level<V> {
    /// `A_{ik}` for `k = 0..=dim A(<i)`; empty at gaps.
    a: Vec<V>,
    /// `D_i`; absent at gaps.
    d: Option<V>,
}

struct TableState<V> {
    levels: Vec<Level<V>>,
    /// Coefficients of `z^{q^k}` in `e_i(z)` for the next level to build.
    e: Vec<V>,
}

/// Incrementally built recursion table over a coefficient backend.
pub struct PowerSumTable<C: Coeffs> {
    ctx: C,
    state: Mutex<TableState<C::V>>,
    /// `S_d(n)` series coefficients `c_m = S_d(m+1)` per degree.
    geo: Mutex<HashMap<u64, Vec<C::V>>>,
    /// `S_{<d}(s)` for `d = 0, 1, …` per composition.
    less: Mutex<HashMap<Composition, Vec<C::V>>>,
}

impl<C: Coeffs> PowerSumTable<C> {
    pub fn new(ctx: C) -> Self {
        let e = vec![ctx.one()];
        PowerSumTable {
            ctx,
            state: Mutex::new(TableState { levels: Vec::new(), e }),
            geo: Mutex::new(HashMap::new()),
            less: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &C {
        &self.ctx
    }
    pub fn ring(&self) -> &Arc<CurveRing> {
        self.ctx.ring()
    }

    /// Builds all levels up to `i`.
    pub fn ensure(&self, i: u64) -> Result<()> {
        let mut st = self.state.lock().unwrap();
        while (st.levels.len() as u64) <= i {
            let d = st.levels.len() as u64;
            let level = self.build_level(d, &mut st.e)?;
            st.levels.push(level);
        }
        Ok(())
    }

    fn build_level(&self, d: u64, e: &mut Vec<C::V>) -> Result<Level<C::V>> {
        let ring = self.ring().clone();
        let c = &self.ctx;
        let eta = match ring.monomial_of_degree(d) {
            None => return Ok(Level { a: Vec::new(), d: None }),
            Some(x) => x,
        };
        // D = Σ E_k η^{q^k}
        let mut eta_pow = c.from_ring(&eta)?;
        let mut terms = Vec::with_capacity(e.len());
        for (k, ek) in e.iter().enumerate() {
            if k > 0 {
                eta_pow = c.frob(&eta_pow)?;
            }
            terms.push(c.mul(ek, &eta_pow));
        }
        let dval = c.sum(terms);
        let dinv = c.inv(&dval)?;
        let a: Vec<C::V> = e.iter().map(|x| c.mul(x, &dinv)).collect();
        // e ← e^q − D^{q−1} e
        let dq1 = c.pow(&dval, ring.q() as u64 - 1)?;
        let mut next = Vec::with_capacity(e.len() + 1);
        for k in 0..=e.len() {
            let up = if k > 0 { c.frob(&e[k - 1])? } else { c.zero() };
            let down = if k < e.len() { c.mul(&dq1, &e[k]) } else { c.zero() };
            next.push(c.sub(&up, &down));
        }
        *e = next;
        Ok(Level { a, d: Some(dval) })
    }

    /// `A_{dk}` for `k = 0..=dim A(<d)` (empty at gaps).
    pub fn coefficients(&self, d: u64) -> Result<Vec<C::V>> {
        self.ensure(d)?;
        Ok(self.state.lock().unwrap().levels[d as usize].a.clone())
    }

    /// `D_d = Π_{a∈A_{+,d}} a`, or `None` at gaps.
    pub fn d_value(&self, d: u64) -> Result<Option<C::V>> {
        self.ensure(d)?;
        Ok(self.state.lock().unwrap().levels[d as usize].d.clone())
    }

    /// `S_d(n)` via the geometric recurrence, after removing `p`-power
    /// factors of `n` with `S_d(pn) = S_d(n)^p`.
    pub fn power_sum(&self, d: u64, n: u64) -> Result<C::V> {
        if n == 0 {
            return Err(MzvError::Domain("power sums need n >= 1".into()));
        }
        let p = self.ring().fq().p() as u64;
        let mut m = n;
        let mut twists = 0;
        while m.is_multiple_of(p) {
            m /= p;
            twists += 1;
        }
        let mut v = self.power_sum_raw(d, m)?;
        for _ in 0..twists {
            v = self.ctx.frob_p(&v)?;
        }
        Ok(v)
    }

    fn power_sum_raw(&self, d: u64, n: u64) -> Result<C::V> {
        let a = self.coefficients(d)?;
        if a.is_empty() {
            return Ok(self.ctx.zero());
        }
        let q = self.ring().q() as u64;
        let need = n as usize;
        let mut cache = self.geo.lock().unwrap();
        let series = cache.entry(d).or_insert_with(|| vec![a[0].clone()]);
        while series.len() < need {
            let m = series.len() as u64;
            let mut terms = Vec::new();
            let mut qk = 1u64;
            for ak in &a {
                if qk > m {
                    break;
                }
                terms.push(self.ctx.mul(ak, &series[(m - qk) as usize]));
                qk = qk.saturating_mul(q);
            }
            series.push(self.ctx.sum(terms));
        }
        Ok(series[need - 1].clone())
    }

    /// `S_d(s_1,…,s_r) = S_d(s_1)·S_{<d}(s_2,…,s_r)`; the empty composition
    /// gives `1` at `d = 0` and `0` otherwise.
    pub fn nested(&self, d: u64, s: &Composition) -> Result<C::V> {
        match s.first() {
            None => Ok(if d == 0 { self.ctx.one() } else { self.ctx.zero() }),
            Some(s1) => {
                let head = self.power_sum(d, s1)?;
                if self.ctx.is_zero(&head) && s.depth() == 1 {
                    return Ok(head);
                }
                let rest = self.s_less(d, &s.tail())?;
                Ok(self.ctx.mul(&head, &rest))
            }
        }
    }

    /// `S_{<d}(s)`; equal to `1` for the empty composition and `0` at `d = 0`
    /// otherwise.
    pub fn s_less(&self, d: u64, s: &Composition) -> Result<C::V> {
        if s.is_empty() {
            return Ok(self.ctx.one());
        }
        let mut acc = {
            let memo = self.less.lock().unwrap();
            match memo.get(s) {
                Some(v) if v.len() as u64 > d => return Ok(v[d as usize].clone()),
                Some(v) => v.clone(),
                None => vec![self.ctx.zero()],
            }
        };
        let begin = acc.len() as u64;
        for k in begin..=d {
            let term = self.nested(k - 1, s)?;
            let next = self.ctx.add(&acc[(k - 1) as usize], &term);
            acc.push(next);
        }
        let out = acc[d as usize].clone();
        let mut memo = self.less.lock().unwrap();
        let slot = memo.entry(s.clone()).or_default();
        if slot.len() < acc.len() {
            *slot = acc;
        }
        Ok(out)
    }

    /// Direct enumeration of `Σ_{a∈A_{+,d}} a^{−n}`.
    pub fn power_sum_bruteforce(&self, d: u64, n: u64, cap: u128) -> Result<C::V> {
        power_sum_bruteforce(&self.ctx, d, n, cap)
    }
}

/// Direct enumeration of `Σ_{a∈A_{+,d}} a^{−n}`, in parallel.
pub fn power_sum_bruteforce<C: Coeffs>(ctx: &C, d: u64, n: u64, cap: u128) -> Result<C::V> {
    let ring = ctx.ring().clone();
    let en = match ring.monic_enumerator(d) {
        None => return Ok(ctx.zero()),
        Some(en) => en,
    };
    let size = en.len();
    if size > cap {
        return Err(MzvError::EnumerationCapExceeded { size, cap });
    }
    let chunk = 1u128 << 10;
    let chunks: Vec<u128> = (0..size.div_ceil(chunk)).collect();
    let partial: Result<Vec<C::V>> = chunks
        .par_iter()
        .map(|&ci| {
            let mut terms = Vec::new();
            for idx in ci * chunk..((ci + 1) * chunk).min(size) {
                let r = ctx.recip_ring(&en.get(idx))?;
                terms.push(ctx.pow(&r, n)?);
            }
            Ok(ctx.sum(terms))
        })
        .collect();
    Ok(ctx.sum(partial?))
}

/// A value of `ζ_A(s)` in `K_∞`.
#[derive(Clone, Debug)]
pub struct MZVSeries {
    pub value: Laurent,
    pub composition: Composition,
    pub prec: i128,
    pub d_cut: u64,
}

/// Computes `ζ_A(s)` to absolute precision `prec`, raising the working
/// precision until every coefficient below `prec` is determined.
pub struct ZetaEngine {
    ring: Arc<CurveRing>,
    prec: i128,
    table: Mutex<Arc<PowerSumTable<SeriesK>>>,
}

impl ZetaEngine {
    pub fn new(ring: Arc<CurveRing>, prec: i128) -> Result<Self> {
        if prec < 1 {
            return Err(MzvError::Domain("precision must be at least 1".into()));
        }
        let table = Arc::new(PowerSumTable::new(SeriesK::new(ring.clone(), prec + 8)));
        Ok(ZetaEngine { ring, prec, table: Mutex::new(table) })
    }

    pub fn prec(&self) -> i128 {
        self.prec
    }
    pub fn ring(&self) -> &Arc<CurveRing> {
        &self.ring
    }

    pub fn table(&self) -> Arc<PowerSumTable<SeriesK>> {
        self.table.lock().unwrap().clone()
    }

    fn escalate(&self, seen: &Arc<PowerSumTable<SeriesK>>) {
        let mut t = self.table.lock().unwrap();
        if Arc::ptr_eq(&t, seen) {
            let rel = seen.ctx().rel() * 2;
            *t = Arc::new(PowerSumTable::new(SeriesK::new(self.ring.clone(), rel)));
        }
    }

    pub fn zeta(&self, s: &Composition) -> Result<MZVSeries> {
        let prec = self.prec;
        let s1 = match s.first() {
            None => {
                return Ok(MZVSeries { value: Laurent::one().truncate(prec), composition: s.clone(), prec, d_cut: 0 })
            }
            Some(x) => x as i128,
        };
        let d_cut = ((prec + s1 - 1) / s1).max(1) as u64;
        for _ in 0..12 {
            let table = self.table();
            let v = table.s_less(d_cut, s)?;
            let last = table.nested(d_cut - 1, s)?;
            debug_assert!(last.valuation() >= s1 * (d_cut as i128 - 1));
            if v.prec() >= prec {
                return Ok(MZVSeries { value: v.truncate(prec), composition: s.clone(), prec, d_cut });
            }
            self.escalate(&table);
        }
        Err(MzvError::NoConvergence(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::KField;

    #[test]
    fn composition_shapes() {
        assert_eq!(Composition::zagier(3, 3).parts(), &[2, 6, 18]);
        assert_eq!(Composition::eulerian(2, 2, 2).parts(), &[3, 4, 8]);
        assert!(Composition::new(vec![1, 0]).is_err());
        assert_eq!(Composition::new(vec![2, 3]).unwrap().weight(), 5);
    }

    #[test]
    fn genus0_first_levels() {
        let ring = CurveRing::from_label("genus0-q2").unwrap();
        let kf = KField::new(ring.clone());
        let t = PowerSumTable::new(kf.clone());
        let s1 = t.power_sum(1, 1).unwrap();
        let expect = kf.recip_ring(&ring.mul(&ring.theta(), &ring.add(&ring.theta(), &ring.constant(1)))).unwrap();
        assert!(kf.eq(&s1, &expect));
        assert!(kf.eq(&t.power_sum(0, 5).unwrap(), &kf.one()));
    }

    #[test]
    fn ring_ii_degree_two() {
        let ring = CurveRing::from_label("LRT-ii").unwrap();
        let kf = KField::new(ring.clone());
        let t = PowerSumTable::new(kf.clone());
        // 2/(θ³ − θ)
        let cube = ring.sub(&ring.pow(&ring.theta(), 3), &ring.theta());
        let expect = kf.scale(&kf.recip_ring(&cube).unwrap(), 2);
        assert!(kf.eq(&t.power_sum(2, 1).unwrap(), &expect));
        assert!(t.power_sum(1, 1).unwrap().is_zero());
    }

    #[test]
    fn empty_conventions() {
        let ring = CurveRing::from_label("genus0-q3").unwrap();
        let kf = KField::new(ring);
        let t = PowerSumTable::new(kf.clone());
        let s = Composition::new(vec![1, 2]).unwrap();
        assert!(t.s_less(0, &s).unwrap().is_zero());
        assert!(kf.eq(&t.s_less(0, &Composition::empty()).unwrap(), &kf.one()));
    }
}
