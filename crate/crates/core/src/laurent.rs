//! Truncated Laurent series in a uniformizer `π` over `F_q`, with explicit
//! absolute precision.
//!
//! A [`Laurent`] stores the coefficients from its valuation up to (not
//! including) `prec`; everything at or beyond `prec` is unknown. Finite
//! expansions that are known exactly carry `prec == EXACT`. A series with
//! no known nonzero coefficient is *zero to precision*, which is only the
//! exact zero when `prec == EXACT`.

use std::sync::Arc;

use crate::error::{MzvError, Result};
use crate::fq::{Fq, FqField};

/// Sentinel precision of exactly known series.
pub const EXACT: i128 = 1 << 100;

fn clamp(x: i128) -> i128 {
    x.min(EXACT)
}

/// `p + k` for precisions, keeping `EXACT` absorbing.
fn padd(p: i128, k: i128) -> i128 {
    if p >= EXACT || k >= EXACT {
        EXACT
    } else {
        clamp(p + k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    v: i128,
    c: Vec<Fq>,
    prec: i128,
}

impl Laurent {
    /// Builds a series from coefficients of `π^v, π^{v+1}, ...` known up to `prec`.
    pub fn new(v: i128, c: Vec<Fq>, prec: i128) -> Self {
        let mut s = Laurent { v, c, prec: clamp(prec) };
        s.normalize();
        s
    }
    pub fn exact(v: i128, c: Vec<Fq>) -> Self {
        Self::new(v, c, EXACT)
    }
    pub fn exact_zero() -> Self {
        Laurent { v: EXACT, c: Vec::new(), prec: EXACT }
    }
    pub fn zero_to(prec: i128) -> Self {
        Laurent { v: prec, c: Vec::new(), prec }
    }
    pub fn one() -> Self {
        Self::exact(0, vec![1])
    }
    /// `a π^n`
    pub fn monomial(a: Fq, n: i128) -> Self {
        Self::exact(n, vec![a])
    }

    fn normalize(&mut self) {
        let lead = self.c.iter().position(|&x| x != 0);
        match lead {
            None => {
                self.c.clear();
                self.v = self.prec;
            }
            Some(k) => {
                if k > 0 {
                    self.c.drain(..k);
                    self.v += k as i128;
                }
                let room = self.prec - self.v;
                if room <= 0 {
                    self.c.clear();
                    self.v = self.prec;
                    return;
                }
                if (self.c.len() as i128) > room {
                    self.c.truncate(room as usize);
                }
                while self.c.last() == Some(&0) {
                    self.c.pop();
                }
                if self.c.is_empty() {
                    self.v = self.prec;
                }
            }
        }
    }

    /// Valuation; equals `prec` for a series that is zero to precision.
    pub fn valuation(&self) -> i128 {
        self.v
    }
    pub fn prec(&self) -> i128 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }
    /// Number of known significant coefficients.
    pub fn rel_prec(&self) -> i128 {
        self.prec - self.v
    }
    /// Leading coefficient, 0 for zero-to-precision.
    pub fn lead(&self) -> Fq {
        self.c.first().copied().unwrap_or(0)
    }
    pub fn coeff(&self, n: i128) -> Option<Fq> {
        if n >= self.prec {
            return None;
        }
        if n < self.v {
            return Some(0);
        }
        Some(self.c.get((n - self.v) as usize).copied().unwrap_or(0))
    }
    pub fn stored(&self) -> &[Fq] {
        &self.c
    }
    pub fn truncate(&self, prec: i128) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Laurent::new(self.v.min(prec), self.c.clone(), prec)
    }
}

/// Result of comparing two series up to their common precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    pub equal: bool,
    pub checked_prec: i128,
    /// First index where they differ, if any.
    pub first_mismatch: Option<i128>,
}

#[derive(Clone, Debug)]
pub struct LaurentRing {
    fq: Arc<FqField>,
    rel: i128,
}

impl LaurentRing {
    /// `rel` is the relative precision used when an exact series must be
    /// inverted.
    pub fn new(fq: Arc<FqField>, rel: i128) -> Self {
        LaurentRing { fq, rel: rel.max(1) }
    }
    pub fn field(&self) -> &Arc<FqField> {
        &self.fq
    }
    pub fn default_rel(&self) -> i128 {
        self.rel
    }
    pub fn with_rel(&self, rel: i128) -> Self {
        LaurentRing { fq: self.fq.clone(), rel: rel.max(1) }
    }

    pub fn constant(&self, a: Fq) -> Laurent {
        Laurent::exact(0, vec![a])
    }

    pub fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let prec = a.prec.min(b.prec);
        if a.is_zero() && b.is_zero() {
            return Laurent::zero_to(prec);
        }
        let v = a.v.min(b.v).min(prec);
        let end = [a, b].iter().filter(|s| !s.is_zero()).map(|s| s.v + s.c.len() as i128).max().unwrap_or(v).min(prec);
        if end <= v {
            return Laurent::zero_to(prec);
        }
        let mut c = vec![0u8; (end - v) as usize];
        for (s, off) in [(a, a.v - v), (b, b.v - v)] {
            for (i, &x) in s.c.iter().enumerate() {
                let idx = off + i as i128;
                if idx >= c.len() as i128 {
                    break;
                }
                let slot = &mut c[idx as usize];
                *slot = self.fq.add(*slot, x);
            }
        }
        Laurent::new(v, c, prec)
    }

    pub fn neg(&self, a: &Laurent) -> Laurent {
        Laurent { v: a.v, c: a.c.iter().map(|&x| self.fq.neg(x)).collect(), prec: a.prec }
    }

    pub fn sub(&self, a: &Laurent, b: &Laurent) -> Laurent {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Laurent, s: Fq) -> Laurent {
        if s == 0 {
            return Laurent::exact_zero();
        }
        Laurent { v: a.v, c: a.c.iter().map(|&x| self.fq.mul(x, s)).collect(), prec: a.prec }
    }

    /// Multiplication by `π^k`.
    pub fn shift(&self, a: &Laurent, k: i128) -> Laurent {
        Laurent { v: padd(a.v, k), c: a.c.clone(), prec: padd(a.prec, k) }
    }

    pub fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        let prec = padd(a.prec, b.v).min(padd(b.prec, a.v));
        if a.is_zero() || b.is_zero() {
            return Laurent::zero_to(prec);
        }
        let v = a.v + b.v;
        let full = a.c.len() + b.c.len() - 1;
        let n = ((prec - v).max(0) as u128).min(full as u128) as usize;
        let mut c = vec![0u8; n];
        for (i, &x) in a.c.iter().enumerate().take(n) {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate().take(n - i) {
                if y != 0 {
                    c[i + j] = self.fq.add(c[i + j], self.fq.mul(x, y));
                }
            }
        }
        Laurent::new(v, c, prec)
    }

    pub fn inv(&self, a: &Laurent) -> Result<Laurent> {
        if a.is_zero() {
            return Err(MzvError::ZeroToPrecision(a.prec));
        }
        let lead_inv = self.fq.inv(a.c[0])?;
        if a.is_exact() && a.c.len() == 1 {
            return Ok(Laurent::monomial(lead_inv, -a.v));
        }
        let r = if a.is_exact() { self.rel } else { a.prec - a.v };
        let n = r as usize;
        // unit part u = a / (lead π^v); solve u * w = 1 coefficientwise
        let mut w = vec![0u8; n];
        w[0] = lead_inv;
        for k in 1..n {
            let mut acc = 0;
            for j in 1..=k.min(a.c.len() - 1) {
                acc = self.fq.add(acc, self.fq.mul(a.c[j], w[k - j]));
            }
            w[k] = self.fq.neg(self.fq.mul(acc, lead_inv));
        }
        Ok(Laurent::new(-a.v, w, -a.v + r))
    }

    pub fn div(&self, a: &Laurent, b: &Laurent) -> Result<Laurent> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^p`: Frobenius on coefficients and `π ↦ π^p` on indices.
    pub fn frob_p(&self, a: &Laurent) -> Result<Laurent> {
        let p = self.fq.p() as i128;
        let prec = if a.is_exact() { EXACT } else { a.prec.checked_mul(p).ok_or(MzvError::ValuationOverflow)? };
        if a.is_zero() {
            return Ok(Laurent::zero_to(prec));
        }
        let v = a.v.checked_mul(p).ok_or(MzvError::ValuationOverflow)?;
        let avail =
            if a.is_exact() { a.c.len() * p as usize } else { ((prec - v) as usize).min(a.c.len() * p as usize) };
        let mut c = vec![0u8; avail];
        for (i, &x) in a.c.iter().enumerate() {
            let idx = i * p as usize;
            if idx < avail {
                c[idx] = self.fq.frob(x);
            }
        }
        Ok(Laurent::new(v, c, prec))
    }

    /// `a^(q^k)`.
    pub fn frob(&self, a: &Laurent, k: u32) -> Result<Laurent> {
        let mut r = a.clone();
        for _ in 0..k * self.fq.e() {
            r = self.frob_p(&r)?;
        }
        Ok(r)
    }

    /// Ring power; `p`-adic digits are handled through Frobenius so the
    /// relative precision of the base is never diluted.
    pub fn pow(&self, a: &Laurent, n: i64) -> Result<Laurent> {
        if n < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -n);
        }
        let n = n as u64;
        if n == 0 {
            return Ok(Laurent::one());
        }
        let p = self.fq.p() as u64;
        let digit = n % p;
        let high = n / p;
        let mut low = Laurent::one();
        for _ in 0..digit {
            low = self.mul(&low, a);
        }
        if high == 0 {
            return Ok(low);
        }
        let hp = self.pow(a, high as i64)?;
        Ok(self.mul(&self.frob_p(&hp)?, &low))
    }

    /// Compares up to the smaller of the two precisions (optionally capped).
    pub fn compare(&self, a: &Laurent, b: &Laurent, cap: Option<i128>) -> SeriesComparison {
        let d = self.sub(a, b);
        let mut checked = a.prec.min(b.prec);
        if let Some(c) = cap {
            checked = checked.min(c);
        }
        let mismatch = if d.is_zero() || d.v >= checked { None } else { Some(d.v) };
        SeriesComparison { equal: mismatch.is_none(), checked_prec: checked, first_mismatch: mismatch }
    }

    /// Evaluates `Σ coeffs[k] s^k` with Horner's rule.
    pub fn eval_poly(&self, coeffs: &[Laurent], s: &Laurent) -> Laurent {
        let mut acc = Laurent::exact_zero();
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, s), c);
        }
        acc
    }

    /// Root of `F(s) = Σ coeffs[k] s^k` near `seed` by Newton's method,
    /// with `F(s) ≡ 0` to absolute precision `target`.
    pub fn newton_series_root(&self, coeffs: &[Laurent], seed: &Laurent, target: i128) -> Result<Laurent> {
        let deriv: Vec<Laurent> =
            coeffs.iter().enumerate().skip(1).map(|(k, c)| self.scale(c, self.fq.from_int(k as i64))).collect();
        let mut s = seed.clone();
        let mut last = i128::MIN;
        for _ in 0..200 {
            let r = self.eval_poly(coeffs, &s);
            let rv = r.valuation();
            if rv >= target {
                return Ok(s);
            }
            if rv <= last {
                return Err(MzvError::NoConvergence(rv));
            }
            last = rv;
            let d = self.eval_poly(&deriv, &s);
            if d.is_zero() {
                return Err(MzvError::NonUnitDerivative);
            }
            let step = self.div(&r, &d)?;
            // keep the iterate finite: beyond target - v(F') nothing matters
            let keep = target - d.valuation() + 2;
            s = self.sub(&s, &step).truncate(keep);
        }
        Err(MzvError::NoConvergence(last))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32) -> LaurentRing {
        LaurentRing::new(Arc::new(FqField::new(q).unwrap()), 30)
    }

    #[test]
    fn monomial_inverse() {
        let r = ring(2);
        let inv = r.inv(&Laurent::monomial(1, 2)).unwrap();
        assert_eq!(inv, Laurent::monomial(1, -2));
    }

    #[test]
    fn geometric_series() {
        let r = ring(3);
        let one_minus_pi = Laurent::exact(0, vec![1, 2]);
        let inv = r.inv(&one_minus_pi).unwrap();
        assert_eq!(inv.prec(), 30);
        for n in 0..30 {
            assert_eq!(inv.coeff(n), Some(1));
        }
    }

    #[test]
    fn theta_squared_plus_theta_char2() {
        // θ = 1/π, θ² + θ = π^-2 + π^-1
        let r = ring(2);
        let f = Laurent::exact(-2, vec![1, 1]);
        let g = r.inv(&f).unwrap();
        assert_eq!(g.valuation(), 2);
        let back = r.mul(&f, &g);
        assert!(r.compare(&back, &Laurent::one(), None).equal);
        // 1/(1+π) = 1 + π + π² + ... in char 2
        for n in 2..g.prec() {
            assert_eq!(g.coeff(n), Some(1));
        }
    }

    #[test]
    fn pow_basics() {
        let r = ring(3);
        let f = Laurent::exact(-1, vec![1, 2, 1]);
        assert_eq!(r.pow(&f, 0).unwrap(), Laurent::one());
        assert_eq!(r.pow(&f, 1).unwrap(), f);
        let m = Laurent::monomial(1, -1);
        assert_eq!(r.pow(&m, 3).unwrap(), Laurent::monomial(1, -3));
        let naive = r.mul(&r.mul(&f, &f), &r.mul(&f, &f));
        assert_eq!(r.pow(&f, 4).unwrap(), naive);
    }

    #[test]
    fn frobenius_spreads_coefficients() {
        let r = ring(4);
        let w = r.field().generator();
        let f = Laurent::new(-1, vec![1, w, 0, 1], 5);
        let g = r.frob(&f, 1).unwrap();
        assert_eq!(g.prec(), 20);
        assert_eq!(g.coeff(-4), Some(1));
        // w^4 = w in F_4
        assert_eq!(g.coeff(0), Some(w));
        assert_eq!(g.coeff(8), Some(1));
        let direct = r.pow(&f, 4).unwrap();
        assert!(r.compare(&g, &direct, None).equal);
    }

    #[test]
    fn precision_rules() {
        let r = ring(5);
        let a = Laurent::new(0, vec![1, 1], 10);
        let b = Laurent::new(3, vec![2], 6);
        assert_eq!(r.add(&a, &b).prec(), 6);
        assert_eq!(r.mul(&a, &b).prec(), 6);
        assert_eq!(r.mul(&a, &Laurent::monomial(1, 3)).prec(), 13);
        assert!(!Laurent::zero_to(5).is_exact_zero());
        assert!(Laurent::exact_zero().is_exact_zero());
        assert!(matches!(r.inv(&Laurent::zero_to(4)), Err(MzvError::ZeroToPrecision(4))));
    }

    #[test]
    fn newton_linear() {
        let r = ring(3);
        let g = Laurent::exact(-2, vec![1, 0, 2, 1]);
        // F(s) = s - g
        let coeffs = vec![r.neg(&g), Laurent::one()];
        let s = r.newton_series_root(&coeffs, &Laurent::monomial(1, -2), 40).unwrap();
        assert!(r.compare(&s, &g, Some(40)).equal);
    }
}
