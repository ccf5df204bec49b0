//! Exact elements of `K = Frac(A)`.
//!
//! A value is `num / Π atom^e` with `num ∈ A` and each atom a monic
//! polynomial in `θ` of positive degree. Denominators of ring elements come
//! from norms, so no gcd or factorization is ever needed; two values are
//! equal when their difference has zero numerator. Atoms are compared by
//! value, so values produced by the same computation share them and sums
//! stay cheap.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::curve::{CurveRing, RingElem};
use crate::error::{MzvError, Result};
use crate::fq::Fq;
use crate::laurent::{Laurent, LaurentRing};
use crate::poly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<UniPoly>);

impl Atom {
    pub fn poly(&self) -> &UniPoly {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac {
    num: RingElem,
    den: BTreeMap<Atom, u64>,
}

impl Frac {
    pub fn num(&self) -> &RingElem {
        &self.num
    }
    pub fn den(&self) -> &BTreeMap<Atom, u64> {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// `θ`-degree of the denominator.
    pub fn den_theta_degree(&self) -> u128 {
        self.den.iter().map(|(a, &e)| a.0.deg().unwrap_or(0) as u128 * e as u128).sum()
    }
}

/// Arithmetic context for [`Frac`] values over one ring.
#[derive(Clone, Debug)]
pub struct KField {
    ring: Arc<CurveRing>,
}

impl KField {
    pub fn new(ring: Arc<CurveRing>) -> Self {
        KField { ring }
    }
    pub fn ring(&self) -> &Arc<CurveRing> {
        &self.ring
    }

    pub fn zero(&self) -> Frac {
        Frac { num: RingElem::zero(), den: BTreeMap::new() }
    }
    pub fn one(&self) -> Frac {
        self.from_ring(&RingElem::one())
    }
    pub fn constant(&self, c: Fq) -> Frac {
        self.from_ring(&self.ring.constant(c))
    }
    pub fn from_ring(&self, x: &RingElem) -> Frac {
        Frac { num: x.clone(), den: BTreeMap::new() }
    }

    /// Splits a nonzero polynomial into its leading coefficient and monic part.
    fn split_monic(&self, p: &UniPoly) -> (Fq, Option<Atom>) {
        let c = p.lead();
        let m = self.ring.fq().poly_monic(p);
        if m.deg() == Some(0) {
            (c, None)
        } else {
            (c, Some(Atom(Arc::new(m))))
        }
    }

    /// `1/x` for nonzero `x ∈ A`, as `conj(x)/norm(x)`.
    pub fn recip_ring(&self, x: &RingElem) -> Result<Frac> {
        if x.is_zero() {
            return Err(MzvError::DivisionByZero);
        }
        let f = self.ring.fq();
        let (top, conj) =
            if x.b.is_zero() { (x.a.clone(), RingElem::one()) } else { (self.ring.norm(x), self.ring.conj(x)) };
        let (c, atom) = self.split_monic(&top);
        let num = self.ring.scale(&conj, f.inv(c)?);
        let mut den = BTreeMap::new();
        if let Some(a) = atom {
            den.insert(a, 1);
        }
        Ok(Frac { num, den })
    }

    /// `x / y` for ring elements.
    pub fn ratio(&self, x: &RingElem, y: &RingElem) -> Result<Frac> {
        Ok(self.mul(&self.from_ring(x), &self.recip_ring(y)?))
    }

    pub fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        let num = self.ring.mul(&a.num, &b.num);
        if num.is_zero() {
            return self.zero();
        }
        let mut den = a.den.clone();
        for (k, &e) in &b.den {
            *den.entry(k.clone()).or_insert(0) += e;
        }
        Frac { num, den }
    }

    pub fn neg(&self, a: &Frac) -> Frac {
        Frac { num: self.ring.neg(&a.num), den: a.den.clone() }
    }

    pub fn scale(&self, a: &Frac, c: Fq) -> Frac {
        if c == 0 {
            return self.zero();
        }
        Frac { num: self.ring.scale(&a.num, c), den: a.den.clone() }
    }

    pub fn mul_ring(&self, a: &Frac, x: &RingElem) -> Frac {
        self.mul(a, &self.from_ring(x))
    }

    fn atom_power_product(&self, parts: &[(Atom, u64)]) -> UniPoly {
        let f = self.ring.fq();
        let polys: Vec<UniPoly> = parts.iter().map(|(a, e)| f.poly_pow(a.poly(), *e)).collect();
        f.poly_product(&polys)
    }

    pub fn add(&self, a: &Frac, b: &Frac) -> Frac {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = self.ring.add(&a.num, &b.num);
            if num.is_zero() {
                return self.zero();
            }
            return Frac { num, den: a.den.clone() };
        }
        let mut den = a.den.clone();
        for (k, &e) in &b.den {
            let slot = den.entry(k.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |x: &Frac| -> RingElem {
            let missing: Vec<(Atom, u64)> = den
                .iter()
                .filter_map(|(k, &e)| {
                    let have = x.den.get(k).copied().unwrap_or(0);
                    (e > have).then(|| (k.clone(), e - have))
                })
                .collect();
            if missing.is_empty() {
                x.num.clone()
            } else {
                self.ring.mul_theta_poly(&x.num, &self.atom_power_product(&missing))
            }
        };
        let num = self.ring.add(&lift(a), &lift(b));
        if num.is_zero() {
            return self.zero();
        }
        Frac { num, den }
    }

    pub fn sub(&self, a: &Frac, b: &Frac) -> Frac {
        self.add(a, &self.neg(b))
    }

    /// Balanced summation, which keeps intermediate numerators small.
    pub fn sum(&self, mut items: Vec<Frac>) -> Frac {
        if items.is_empty() {
            return self.zero();
        }
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len() / 2 + 1);
            let mut it = items.into_iter();
            while let Some(x) = it.next() {
                match it.next() {
                    Some(y) => next.push(self.add(&x, &y)),
                    None => next.push(x),
                }
            }
            items = next;
        }
        items.pop().unwrap()
    }

    pub fn den_poly(&self, a: &Frac) -> UniPoly {
        let parts: Vec<(Atom, u64)> = a.den.iter().map(|(k, &e)| (k.clone(), e)).collect();
        self.atom_power_product(&parts)
    }

    pub fn inv(&self, a: &Frac) -> Result<Frac> {
        let r = self.recip_ring(&a.num)?;
        Ok(self.mul_ring(&r, &RingElem::from_theta(self.den_poly(a))))
    }

    pub fn div(&self, a: &Frac, b: &Frac) -> Result<Frac> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^p`.
    pub fn frob_p(&self, a: &Frac) -> Frac {
        let p = self.ring.fq().p() as u64;
        Frac { num: self.ring.frob_p(&a.num), den: a.den.iter().map(|(k, &e)| (k.clone(), e * p)).collect() }
    }

    /// `a^q`.
    pub fn frob(&self, a: &Frac) -> Frac {
        let q = self.ring.q() as u64;
        Frac { num: self.ring.frob(&a.num), den: a.den.iter().map(|(k, &e)| (k.clone(), e * q)).collect() }
    }

    /// `a^(q^k)`.
    pub fn frob_k(&self, a: &Frac, k: u32) -> Frac {
        (0..k).fold(a.clone(), |acc, _| self.frob(&acc))
    }

    pub fn pow(&self, a: &Frac, n: u64) -> Frac {
        if n == 0 {
            return self.one();
        }
        let p = self.ring.fq().p() as u64;
        let mut low = self.one();
        for _ in 0..n % p {
            low = self.mul(&low, a);
        }
        if n < p {
            return low;
        }
        let high = self.pow(a, n / p);
        self.mul(&self.frob_p(&high), &low)
    }

    pub fn pow_i(&self, a: &Frac, n: i64) -> Result<Frac> {
        if n < 0 {
            Ok(self.pow(&self.inv(a)?, n.unsigned_abs()))
        } else {
            Ok(self.pow(a, n as u64))
        }
    }

    pub fn eq(&self, a: &Frac, b: &Frac) -> bool {
        self.sub(a, b).is_zero()
    }

    fn atom_degree(&self, a: &Atom) -> i128 {
        let d = a.0.deg().unwrap_or(0) as i128;
        if self.ring.is_genus0() {
            d
        } else {
            2 * d
        }
    }

    /// `v_∞(a)`; `None` for zero.
    pub fn valuation(&self, a: &Frac) -> Option<i128> {
        if a.is_zero() {
            return None;
        }
        let vn = -(self.ring.deg(&a.num).ok()? as i128);
        Some(vn + a.den.iter().map(|(k, &e)| self.atom_degree(k) * e as i128).sum::<i128>())
    }

    /// Expansion at `∞` known to absolute precision `prec`.
    pub fn to_laurent(&self, a: &Frac, prec: i128) -> Result<Laurent> {
        let v = match self.valuation(a) {
            None => return Ok(Laurent::exact_zero()),
            Some(v) => v,
        };
        let rel = prec - v;
        if rel <= 0 {
            return Ok(Laurent::zero_to(prec));
        }
        let work = rel + 2;
        let lr = LaurentRing::new(self.ring.fq().clone(), work);
        let mut acc = self.ring.expand_rel(&a.num, work)?;
        for (k, &e) in &a.den {
            let s = self.ring.expand_rel(&RingElem::from_theta(k.0.as_ref().clone()), work)?;
            let s = lr.inv(&s)?;
            let s = lr.pow(&s, e as i64)?;
            acc = lr.mul(&acc, &s);
        }
        Ok(acc.truncate(prec))
    }
}
