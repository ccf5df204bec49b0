//! The two coefficient backends shared by the power-sum recursion and the
//! Drinfeld-module computations: exact values of `K` ([`KField`]) and
//! expansions in `K_∞` at a fixed working relative precision ([`SeriesK`]).

use std::fmt::Debug;
use std::sync::Arc;

use serde_json::Value;

use crate::curve::{CurveRing, RingElem};
use crate::error::Result;
use crate::frac::{Frac, KField};
use crate::laurent::{Laurent, LaurentRing};
use crate::report::{frac_json, laurent_json};

pub trait Coeffs: Send + Sync {
    type V: Clone + Send + Sync + Debug;

    fn ring(&self) -> &Arc<CurveRing>;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    fn from_ring(&self, x: &RingElem) -> Result<Self::V>;
    fn recip_ring(&self, x: &RingElem) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn inv(&self, a: &Self::V) -> Result<Self::V>;
    /// `a^p`.
    fn frob_p(&self, a: &Self::V) -> Result<Self::V>;
    fn is_zero(&self, a: &Self::V) -> bool;
    /// JSON rendering for reports.
    fn describe(&self, a: &Self::V) -> Value;

    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V {
        self.add(a, &self.neg(b))
    }

    /// `a^q`.
    fn frob(&self, a: &Self::V) -> Result<Self::V> {
        let mut r = a.clone();
        for _ in 0..self.ring().fq().e() {
            r = self.frob_p(&r)?;
        }
        Ok(r)
    }

    /// `a^(q^k)`.
    fn frob_k(&self, a: &Self::V, k: u32) -> Result<Self::V> {
        let mut r = a.clone();
        for _ in 0..k {
            r = self.frob(&r)?;
        }
        Ok(r)
    }

    fn pow(&self, a: &Self::V, n: u64) -> Result<Self::V> {
        if n == 0 {
            return Ok(self.one());
        }
        let p = self.ring().fq().p() as u64;
        let mut low = self.one();
        for _ in 0..n % p {
            low = self.mul(&low, a);
        }
        if n < p {
            return Ok(low);
        }
        let high = self.pow(a, n / p)?;
        Ok(self.mul(&self.frob_p(&high)?, &low))
    }

    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn sum(&self, items: Vec<Self::V>) -> Self::V {
        items.iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

impl Coeffs for KField {
    type V = Frac;

    fn ring(&self) -> &Arc<CurveRing> {
        KField::ring(self)
    }
    fn zero(&self) -> Frac {
        KField::zero(self)
    }
    fn one(&self) -> Frac {
        KField::one(self)
    }
    fn from_ring(&self, x: &RingElem) -> Result<Frac> {
        Ok(KField::from_ring(self, x))
    }
    fn recip_ring(&self, x: &RingElem) -> Result<Frac> {
        KField::recip_ring(self, x)
    }
    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        KField::add(self, a, b)
    }
    fn neg(&self, a: &Frac) -> Frac {
        KField::neg(self, a)
    }
    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        KField::mul(self, a, b)
    }
    fn inv(&self, a: &Frac) -> Result<Frac> {
        KField::inv(self, a)
    }
    fn frob_p(&self, a: &Frac) -> Result<Frac> {
        Ok(KField::frob_p(self, a))
    }
    fn frob(&self, a: &Frac) -> Result<Frac> {
        Ok(KField::frob(self, a))
    }
    fn is_zero(&self, a: &Frac) -> bool {
        a.is_zero()
    }
    fn describe(&self, a: &Frac) -> Value {
        frac_json(self.ring().fq(), a)
    }
    fn pow(&self, a: &Frac, n: u64) -> Result<Frac> {
        Ok(KField::pow(self, a, n))
    }
    fn sum(&self, items: Vec<Frac>) -> Frac {
        KField::sum(self, items)
    }
}

/// Laurent expansions; ring elements enter with relative precision `rel`.
#[derive(Clone, Debug)]
pub struct SeriesK {
    ring: Arc<CurveRing>,
    lr: LaurentRing,
}

impl SeriesK {
    pub fn new(ring: Arc<CurveRing>, rel: i128) -> Self {
        let lr = LaurentRing::new(ring.fq().clone(), rel);
        SeriesK { ring, lr }
    }
    pub fn rel(&self) -> i128 {
        self.lr.default_rel()
    }
    pub fn laurent(&self) -> &LaurentRing {
        &self.lr
    }

    /// Drops known coefficients beyond the working relative precision, so
    /// exact inputs of huge degree stay small.
    fn cut(&self, x: Laurent) -> Laurent {
        if x.stored().len() as i128 > self.rel() {
            let v = x.valuation();
            x.truncate(v + self.rel())
        } else {
            x
        }
    }
}

impl Coeffs for SeriesK {
    type V = Laurent;

    fn ring(&self) -> &Arc<CurveRing> {
        &self.ring
    }
    fn zero(&self) -> Laurent {
        Laurent::exact_zero()
    }
    fn one(&self) -> Laurent {
        Laurent::one()
    }
    fn from_ring(&self, x: &RingElem) -> Result<Laurent> {
        self.ring.expand_rel(x, self.rel())
    }
    fn recip_ring(&self, x: &RingElem) -> Result<Laurent> {
        self.lr.inv(&self.from_ring(x)?)
    }
    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        // cut first: an exact summand far below the other would otherwise
        // span the whole gap
        let v = a.valuation().min(b.valuation());
        let bound = v.saturating_add(self.rel());
        self.lr.add(&a.truncate(bound), &b.truncate(bound))
    }
    fn neg(&self, a: &Laurent) -> Laurent {
        self.lr.neg(a)
    }
    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        self.cut(self.lr.mul(a, b))
    }
    fn inv(&self, a: &Laurent) -> Result<Laurent> {
        self.lr.inv(a)
    }
    fn frob_p(&self, a: &Laurent) -> Result<Laurent> {
        Ok(self.cut(self.lr.frob_p(a)?))
    }
    fn is_zero(&self, a: &Laurent) -> bool {
        a.is_zero()
    }
    fn describe(&self, a: &Laurent) -> Value {
        laurent_json(self.ring.fq(), a)
    }
}
