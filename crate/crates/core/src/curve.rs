//! Base rings `A`: the polynomial ring `F_q[θ]`, and plane models
//! `F_q[θ,η]/(η² + F₂(θ)η − F₁(θ))` with `F₁` monic of degree `2g+1`
//! (elliptic curves are the case `g = 1`).
//!
//! Elements are kept as `a(θ) + b(θ)·η`. The point at infinity is the only
//! pole; the uniformizer is `π = 1/θ` in genus 0 and `π = θ^g/η` otherwise,
//! which makes both `θ` and `η` monic.
//!
//! The monomials `θ^i` and `θ^i η` have pairwise distinct degrees, so a
//! monomial basis element is identified by its degree alone.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::fq::{Fq, FqField};
use crate::laurent::{Laurent, LaurentRing, EXACT};
use crate::poly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Genus0,
    Elliptic,
    Hyperelliptic,
}

/// JSON ring configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub q: u32,
    pub kind: CurveKind,
    #[serde(default)]
    pub g: u32,
    /// Coefficients low to high, each an `F_q` element in packed encoding.
    #[serde(rename = "F1", default)]
    pub f1: Vec<u32>,
    #[serde(rename = "F2", default)]
    pub f2: Vec<u32>,
    #[serde(default)]
    pub label: Option<String>,
}

impl CurveSpec {
    pub fn genus0(q: u32) -> Self {
        CurveSpec { q, kind: CurveKind::Genus0, g: 0, f1: vec![], f2: vec![], label: Some(format!("genus0-q{q}")) }
    }

    fn plane(q: u32, kind: CurveKind, g: u32, f1: Vec<u32>, f2: Vec<u32>, label: &str) -> Self {
        CurveSpec { q, kind, g, f1, f2, label: Some(label.to_string()) }
    }

    /// Built-in rings: `genus0-qN` and the four class-number-one rings.
    pub fn builtin(label: &str) -> Option<Self> {
        match label {
            // η² + η + θ³ + θ + 1 = 0 over F_2
            "LRT-i" => Some(Self::plane(2, CurveKind::Elliptic, 1, vec![1, 1, 0, 1], vec![1], label)),
            // η² = θ³ − θ − 1 over F_3
            "LRT-ii" => Some(Self::plane(3, CurveKind::Elliptic, 1, vec![2, 2, 0, 1], vec![], label)),
            // η² + η + θ³ + w = 0 over F_4, w² + w + 1 = 0 (w encoded as 2)
            "LRT-iii" => Some(Self::plane(4, CurveKind::Elliptic, 1, vec![2, 0, 0, 1], vec![1], label)),
            // η² + η + θ⁵ + θ³ + 1 = 0 over F_2
            "LRT-iv" => Some(Self::plane(2, CurveKind::Hyperelliptic, 2, vec![1, 0, 0, 1, 0, 1], vec![1], label)),
            _ => {
                let q: u32 = label.strip_prefix("genus0-q")?.parse().ok()?;
                FqField::new(q).ok()?;
                Some(Self::genus0(q))
            }
        }
    }

    pub fn builtin_labels() -> Vec<&'static str> {
        vec!["genus0-q2", "genus0-q3", "genus0-q4", "genus0-q5", "LRT-i", "LRT-ii", "LRT-iii", "LRT-iv"]
    }

    pub fn label(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("{:?}-q{}-g{}", self.kind, self.q, self.g).to_lowercase())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    pub a: UniPoly,
    pub b: UniPoly,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem { a: UniPoly::zero(), b: UniPoly::zero() }
    }
    pub fn one() -> Self {
        Self::from_theta(UniPoly::one())
    }
    pub fn from_theta(a: UniPoly) -> Self {
        RingElem { a, b: UniPoly::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct DegreeLadder {
    /// `j_0 = 0 < j_1 < ...` up to the limit.
    pub j: Vec<u64>,
    limit: u64,
}

impl DegreeLadder {
    pub fn limit(&self) -> u64 {
        self.limit
    }
    /// `dim A(≤d)`.
    pub fn dim_le(&self, d: u64) -> usize {
        self.j.iter().take_while(|&&x| x <= d).count()
    }
    /// `dim A(<d)`.
    pub fn dim_lt(&self, d: u64) -> usize {
        self.j.iter().take_while(|&&x| x < d).count()
    }
    pub fn is_gap(&self, d: u64) -> bool {
        !self.j.contains(&d)
    }
}

/// Indexed access to `A_{+,d}`.
pub struct MonicEnumerator<'a> {
    ring: &'a CurveRing,
    lead: RingElem,
    basis: Vec<RingElem>,
}

impl MonicEnumerator<'_> {
    pub fn len(&self) -> u128 {
        (self.ring.q() as u128).saturating_pow(self.basis.len() as u32)
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn get(&self, idx: u128) -> RingElem {
        let q = self.ring.q() as u128;
        let mut rest = idx;
        let mut x = self.lead.clone();
        for b in self.basis.iter().rev() {
            let c = (rest % q) as u8;
            rest /= q;
            if c != 0 {
                x = self.ring.add(&x, &self.ring.scale(b, c));
            }
        }
        x
    }
}

pub struct CurveRing {
    spec: CurveSpec,
    fq: Arc<FqField>,
    g: u32,
    f1: UniPoly,
    f2: UniPoly,
    eta_p: RingElem,
    eta_q: RingElem,
    expansions: Mutex<HashMap<i128, (Laurent, Laurent)>>,
}

impl std::fmt::Debug for CurveRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CurveRing({})", self.spec.label())
    }
}

impl CurveRing {
    pub fn new(spec: CurveSpec) -> Result<Arc<Self>> {
        let fq = Arc::new(FqField::new(spec.q)?);
        let to_poly = |v: &[u32]| -> Result<UniPoly> {
            if v.iter().any(|&c| c >= spec.q) {
                return Err(MzvError::Config("coefficient outside F_q".into()));
            }
            Ok(UniPoly::from_coeffs(v.iter().map(|&c| c as Fq).collect()))
        };
        let (g, f1, f2) = match spec.kind {
            CurveKind::Genus0 => (0, UniPoly::zero(), UniPoly::zero()),
            CurveKind::Elliptic | CurveKind::Hyperelliptic => {
                let g = spec.g;
                if g == 0 || (spec.kind == CurveKind::Elliptic && g != 1) {
                    return Err(MzvError::Config(format!("invalid genus {g} for {:?}", spec.kind)));
                }
                let f1 = to_poly(&spec.f1)?;
                let f2 = to_poly(&spec.f2)?;
                if f1.deg() != Some(2 * g as usize + 1) || f1.lead() != 1 {
                    return Err(MzvError::Config("F1 must be monic of degree 2g+1".into()));
                }
                if f2.deg().is_some_and(|d| d > g as usize) {
                    return Err(MzvError::Config("F2 must have degree at most g".into()));
                }
                if fq.p() == 2 && f2.is_zero() {
                    return Err(MzvError::Config("in characteristic 2 the curve needs F2 != 0".into()));
                }
                (g, f1, f2)
            }
        };
        let mut ring = CurveRing {
            spec,
            fq,
            g,
            f1,
            f2,
            eta_p: RingElem::zero(),
            eta_q: RingElem::zero(),
            expansions: Mutex::new(HashMap::new()),
        };
        if !ring.is_genus0() {
            let eta = ring.eta();
            ring.eta_p = ring.pow(&eta, ring.fq.p() as u64);
            ring.eta_q = ring.pow(&eta, ring.q() as u64);
        }
        let ring = Arc::new(ring);
        if !ring.is_genus0() {
            ring.validate_expansions()?;
        }
        Ok(ring)
    }

    pub fn from_label(label: &str) -> Result<Arc<Self>> {
        let spec = CurveSpec::builtin(label).ok_or_else(|| MzvError::Config(format!("unknown ring label {label}")))?;
        Self::new(spec)
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }
    pub fn label(&self) -> String {
        self.spec.label()
    }
    pub fn fq(&self) -> &Arc<FqField> {
        &self.fq
    }
    pub fn q(&self) -> u32 {
        self.fq.q()
    }
    pub fn genus(&self) -> u32 {
        self.g
    }
    pub fn is_genus0(&self) -> bool {
        self.spec.kind == CurveKind::Genus0
    }
    pub fn f1(&self) -> &UniPoly {
        &self.f1
    }
    pub fn f2(&self) -> &UniPoly {
        &self.f2
    }

    pub fn theta(&self) -> RingElem {
        RingElem::from_theta(UniPoly::x())
    }
    pub fn eta(&self) -> RingElem {
        RingElem { a: UniPoly::zero(), b: UniPoly::one() }
    }
    pub fn constant(&self, c: Fq) -> RingElem {
        RingElem::from_theta(UniPoly::constant(c))
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        RingElem { a: self.fq.poly_add(&x.a, &y.a), b: self.fq.poly_add(&x.b, &y.b) }
    }
    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        RingElem { a: self.fq.poly_sub(&x.a, &y.a), b: self.fq.poly_sub(&x.b, &y.b) }
    }
    pub fn neg(&self, x: &RingElem) -> RingElem {
        RingElem { a: self.fq.poly_neg(&x.a), b: self.fq.poly_neg(&x.b) }
    }
    pub fn scale(&self, x: &RingElem, c: Fq) -> RingElem {
        RingElem { a: self.fq.poly_scale(&x.a, c), b: self.fq.poly_scale(&x.b, c) }
    }
    pub fn mul_theta_poly(&self, x: &RingElem, p: &UniPoly) -> RingElem {
        RingElem { a: self.fq.poly_mul(&x.a, p), b: self.fq.poly_mul(&x.b, p) }
    }

    /// Product with `η²` rewritten as `F₁ − F₂η`.
    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let f = &self.fq;
        if x.b.is_zero() && y.b.is_zero() {
            return RingElem::from_theta(f.poly_mul(&x.a, &y.a));
        }
        let aa = f.poly_mul(&x.a, &y.a);
        let bb = f.poly_mul(&x.b, &y.b);
        let ab = f.poly_add(&f.poly_mul(&x.a, &y.b), &f.poly_mul(&x.b, &y.a));
        let a = f.poly_add(&aa, &f.poly_mul(&bb, &self.f1));
        let b = f.poly_sub(&ab, &f.poly_mul(&bb, &self.f2));
        RingElem { a, b }
    }

    pub fn pow(&self, x: &RingElem, mut n: u64) -> RingElem {
        let mut r = RingElem::one();
        let mut b = x.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(&r, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// `x^q`.
    pub fn frob(&self, x: &RingElem) -> RingElem {
        let a = self.fq.poly_frob_q(&x.a);
        if x.b.is_zero() {
            return RingElem::from_theta(a);
        }
        let bq = self.fq.poly_frob_q(&x.b);
        self.add(&RingElem::from_theta(a), &self.mul_theta_poly(&self.eta_q, &bq))
    }

    /// `x^p`.
    pub fn frob_p(&self, x: &RingElem) -> RingElem {
        let a = self.fq.poly_frob_p(&x.a);
        if x.b.is_zero() {
            return RingElem::from_theta(a);
        }
        let bp = self.fq.poly_frob_p(&x.b);
        self.add(&RingElem::from_theta(a), &self.mul_theta_poly(&self.eta_p, &bp))
    }

    /// `x^(q^k)`.
    pub fn frob_k(&self, x: &RingElem, k: u32) -> RingElem {
        (0..k).fold(x.clone(), |acc, _| self.frob(&acc))
    }

    /// The Galois conjugate `a − bF₂ − bη` (the other root of the relation).
    pub fn conj(&self, x: &RingElem) -> RingElem {
        if x.b.is_zero() {
            return x.clone();
        }
        let a = self.fq.poly_sub(&x.a, &self.fq.poly_mul(&x.b, &self.f2));
        RingElem { a, b: self.fq.poly_neg(&x.b) }
    }

    /// `x · conj(x) ∈ F_q[θ]`.
    pub fn norm(&self, x: &RingElem) -> UniPoly {
        let f = &self.fq;
        if x.b.is_zero() {
            return x.a.clone();
        }
        let a2 = f.poly_sqr(&x.a);
        let abf = f.poly_mul(&f.poly_mul(&x.a, &x.b), &self.f2);
        let b2f = f.poly_mul(&f.poly_sqr(&x.b), &self.f1);
        f.poly_sub(&f.poly_sub(&a2, &abf), &b2f)
    }

    /// Degree (pole order at ∞) of a basis monomial `θ^i η^j`.
    pub fn monomial_degree(&self, i: usize, j: usize) -> u64 {
        if self.is_genus0() {
            i as u64
        } else {
            2 * i as u64 + j as u64 * (2 * self.g as u64 + 1)
        }
    }

    /// The basis monomial of degree `d`, if `d` is not a gap.
    pub fn monomial_of_degree(&self, d: u64) -> Option<RingElem> {
        if self.is_genus0() {
            return Some(RingElem::from_theta(UniPoly::monomial(1, d as usize)));
        }
        let odd = 2 * self.g as u64 + 1;
        if d.is_multiple_of(2) {
            Some(RingElem::from_theta(UniPoly::monomial(1, (d / 2) as usize)))
        } else if d >= odd {
            Some(RingElem { a: UniPoly::zero(), b: UniPoly::monomial(1, ((d - odd) / 2) as usize) })
        } else {
            None
        }
    }

    pub fn is_gap(&self, d: u64) -> bool {
        self.monomial_of_degree(d).is_none()
    }

    /// Coordinates `(degree of basis monomial, coefficient)`, nonzero only.
    pub fn coords(&self, x: &RingElem) -> Vec<(u64, Fq)> {
        let mut out = Vec::new();
        for (i, &c) in x.a.coeffs().iter().enumerate() {
            if c != 0 {
                out.push((self.monomial_degree(i, 0), c));
            }
        }
        for (i, &c) in x.b.coeffs().iter().enumerate() {
            if c != 0 {
                out.push((self.monomial_degree(i, 1), c));
            }
        }
        out.sort_unstable();
        out
    }

    /// `(deg, sgn)`.
    pub fn deg_sgn(&self, x: &RingElem) -> Result<(u64, Fq)> {
        if x.is_zero() {
            return Err(MzvError::ZeroElement);
        }
        let da = x.a.deg().map(|d| self.monomial_degree(d, 0));
        let db = x.b.deg().map(|d| self.monomial_degree(d, 1));
        Ok(match (da, db) {
            (Some(a), Some(b)) if a > b => (a, x.a.lead()),
            (Some(_), Some(b)) => (b, x.b.lead()),
            (Some(a), None) => (a, x.a.lead()),
            (None, Some(b)) => (b, x.b.lead()),
            (None, None) => unreachable!(),
        })
    }

    pub fn deg(&self, x: &RingElem) -> Result<u64> {
        Ok(self.deg_sgn(x)?.0)
    }

    pub fn degree_ladder(&self, limit: u64) -> DegreeLadder {
        DegreeLadder { j: (0..=limit).filter(|&d| !self.is_gap(d)).collect(), limit }
    }

    /// Basis of `A(<d)`, degree-sorted.
    pub fn basis_below(&self, d: u64) -> Vec<RingElem> {
        (0..d).filter_map(|k| self.monomial_of_degree(k)).collect()
    }

    pub fn count_monic(&self, d: u64) -> u128 {
        if self.is_gap(d) {
            return 0;
        }
        (self.q() as u128).saturating_pow(self.basis_below(d).len() as u32)
    }

    /// The `idx`-th element of `η_d + A(<d)` in enumeration order (the
    /// lowest-degree coordinate is the most significant digit).
    pub fn monic_element(&self, d: u64, idx: u128) -> RingElem {
        self.monic_enumerator(d).expect("non-gap degree").get(idx)
    }

    pub fn monic_enumerator(&self, d: u64) -> Option<MonicEnumerator<'_>> {
        let lead = self.monomial_of_degree(d)?;
        Some(MonicEnumerator { ring: self, lead, basis: self.basis_below(d) })
    }

    /// All of `A_{+,d}`; empty at gaps.
    pub fn monic_elements(&self, d: u64, cap: u128) -> Result<Vec<RingElem>> {
        let n = self.count_monic(d);
        if n > cap {
            return Err(MzvError::EnumerationCapExceeded { size: n, cap });
        }
        match self.monic_enumerator(d) {
            Some(en) => Ok((0..n).map(|i| en.get(i)).collect()),
            None => Ok(Vec::new()),
        }
    }

    /// All of `A(<d)` (including 0).
    pub fn elements_below(&self, d: u64, cap: u128) -> Result<Vec<RingElem>> {
        let basis = self.basis_below(d);
        let q = self.q() as u128;
        let n = q.saturating_pow(basis.len() as u32);
        if n > cap {
            return Err(MzvError::EnumerationCapExceeded { size: n, cap });
        }
        let mut out = Vec::with_capacity(n as usize);
        for idx in 0..n {
            let mut rest = idx;
            let mut x = RingElem::zero();
            for b in basis.iter().rev() {
                let c = (rest % q) as u8;
                rest /= q;
                if c != 0 {
                    x = self.add(&x, &self.scale(b, c));
                }
            }
            out.push(x);
        }
        Ok(out)
    }

    /// `(θ(π), η(π))` with relative precision at least `rel`.
    pub fn generator_expansions(&self, rel: i128) -> Result<(Laurent, Laurent)> {
        let rel = rel.max(8);
        if let Some(hit) = self.expansions.lock().unwrap().iter().filter(|(r, _)| **r >= rel).min_by_key(|(r, _)| **r) {
            return Ok(hit.1.clone());
        }
        let lr = LaurentRing::new(self.fq.clone(), rel + 4);
        let out = if self.is_genus0() {
            (Laurent::monomial(1, -1), Laurent::exact_zero())
        } else {
            let g = self.g as usize;
            // s = 1/θ solves s + π P2(s) − π² P1(s) = 0
            let mut coeffs = vec![Laurent::exact_zero(); 2 * g + 2];
            coeffs[1] = Laurent::one();
            for (k, &c) in self.f2.coeffs().iter().enumerate() {
                if c != 0 {
                    let e = g + 1 - k;
                    coeffs[e] = lr.add(&coeffs[e], &Laurent::monomial(c, 1));
                }
            }
            for (k, &c) in self.f1.coeffs().iter().enumerate() {
                if c != 0 {
                    let e = 2 * g + 1 - k;
                    coeffs[e] = lr.add(&coeffs[e], &Laurent::monomial(self.fq.neg(c), 2));
                }
            }
            let s = lr.newton_series_root(&coeffs, &Laurent::monomial(1, 2), rel + 3)?;
            let s = s.truncate(rel + 2);
            let theta = lr.inv(&s)?;
            let eta = lr.shift(&lr.pow(&theta, g as i64)?, -1);
            (theta, eta)
        };
        self.expansions.lock().unwrap().insert(rel, out.clone());
        Ok(out)
    }

    fn validate_expansions(&self) -> Result<()> {
        let (t, e) = self.generator_expansions(24)?;
        if t.lead() != 1 || e.lead() != 1 {
            return Err(MzvError::Config("uniformizer does not make θ and η monic".into()));
        }
        let lr = LaurentRing::new(self.fq.clone(), 24);
        let lhs = lr.add(&lr.mul(&e, &e), &lr.mul(&self.eval_theta_poly(&lr, &self.f2, &t), &e));
        let rhs = self.eval_theta_poly(&lr, &self.f1, &t);
        let cmp = lr.compare(&lhs, &rhs, None);
        if !cmp.equal {
            return Err(MzvError::Config("curve relation fails on the expansions at infinity".into()));
        }
        Ok(())
    }

    fn eval_theta_poly(&self, lr: &LaurentRing, p: &UniPoly, t: &Laurent) -> Laurent {
        let c: Vec<Laurent> = p.coeffs().iter().map(|&x| lr.constant(x)).collect();
        lr.eval_poly(&c, t)
    }

    /// Expansion of `p(θ)`; only the top coefficients can matter at relative
    /// precision `rel`, the rest is cut off.
    fn expand_theta_poly(&self, lr: &LaurentRing, p: &UniPoly, t: &Laurent, rel: i128) -> Result<Laurent> {
        let d = p.deg().expect("nonzero");
        let keep = (rel / 2 + 2) as usize;
        if d <= keep {
            return Ok(self.eval_theta_poly(lr, p, t));
        }
        let lo = d - keep;
        let top = UniPoly::from_coeffs(p.coeffs()[lo..].to_vec());
        let head = lr.mul(&lr.pow(t, lo as i64)?, &self.eval_theta_poly(lr, &top, t));
        Ok(head.truncate(-2 * lo as i128 + 2))
    }

    fn expand_with_rel(&self, x: &RingElem, rel: i128) -> Result<Laurent> {
        let (t, e) = self.generator_expansions(rel)?;
        let lr = LaurentRing::new(self.fq.clone(), rel);
        let mut out = Laurent::exact_zero();
        if !x.a.is_zero() {
            out = self.expand_theta_poly(&lr, &x.a, &t, rel)?;
        }
        if !x.b.is_zero() {
            let b = self.expand_theta_poly(&lr, &x.b, &t, rel)?;
            out = lr.add(&out, &lr.mul(&b, &e));
        }
        Ok(out)
    }

    /// Expansion in `π` known to absolute precision `prec`.
    pub fn expand_at_infinity(&self, x: &RingElem, prec: i128) -> Result<Laurent> {
        if x.is_zero() {
            return Ok(Laurent::zero_to(prec));
        }
        let d = self.deg(x)? as i128;
        if prec <= -d {
            return Err(MzvError::PrecisionTooSmall(prec));
        }
        self.expand_rel(x, prec + d).map(|s| s.truncate(prec))
    }

    /// Expansion known to relative precision `rel`.
    pub fn expand_rel(&self, x: &RingElem, rel: i128) -> Result<Laurent> {
        if x.is_zero() {
            return Ok(Laurent::exact_zero());
        }
        if self.is_genus0() {
            // θ = 1/π: coefficients reversed, cut after `rel` of them
            let c = x.a.coeffs();
            let d = c.len() as i128 - 1;
            let n = (rel.max(1) as usize).min(c.len());
            let top: Vec<Fq> = c.iter().rev().take(n).copied().collect();
            let prec = if n == c.len() { EXACT } else { -d + n as i128 };
            return Ok(Laurent::new(-d, top, prec));
        }
        let mut work = rel + 4;
        loop {
            let s = self.expand_with_rel(x, work)?;
            if s.rel_prec() >= rel {
                return Ok(s);
            }
            work *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(label: &str) -> Arc<CurveRing> {
        CurveRing::from_label(label).unwrap()
    }

    #[test]
    fn ring_i_eta_squared() {
        let r = ring("LRT-i");
        let e = r.eta();
        let e2 = r.mul(&e, &e);
        // η + θ³ + θ + 1 in char 2
        assert_eq!(e2, RingElem { a: UniPoly::from_coeffs(vec![1, 1, 0, 1]), b: UniPoly::one() });
        assert_eq!(r.mul(&RingElem::one(), &e2), e2);
    }

    #[test]
    fn ring_ii_eta_squared() {
        let r = ring("LRT-ii");
        let e = r.eta();
        assert_eq!(r.mul(&e, &e), RingElem::from_theta(UniPoly::from_coeffs(vec![2, 2, 0, 1])));
    }

    #[test]
    fn degrees_and_signs() {
        let g0 = ring("genus0-q2");
        let x = RingElem::from_theta(UniPoly::from_coeffs(vec![0, 1, 1]));
        assert_eq!(g0.deg_sgn(&x).unwrap(), (2, 1));
        assert_eq!(ring("LRT-i").deg_sgn(&ring("LRT-i").eta()).unwrap(), (3, 1));
        assert_eq!(ring("LRT-iv").deg_sgn(&ring("LRT-iv").eta()).unwrap(), (5, 1));
        assert_eq!(g0.deg_sgn(&RingElem::zero()), Err(MzvError::ZeroElement));
    }

    #[test]
    fn monic_enumeration() {
        let g0 = ring("genus0-q2");
        let m = g0.monic_elements(1, 1 << 20).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0], g0.theta());
        assert_eq!(m[1], g0.add(&g0.theta(), &RingElem::one()));
        assert!(ring("LRT-i").monic_elements(1, 100).unwrap().is_empty());
        let r2 = ring("LRT-ii");
        let m2 = r2.monic_elements(2, 100).unwrap();
        assert_eq!(m2.len(), 3);
        for (c, x) in m2.iter().enumerate() {
            assert_eq!(*x, r2.add(&r2.theta(), &r2.constant(c as u8)));
            assert_eq!(r2.deg_sgn(x).unwrap(), (2, 1));
        }
        let cap = g0.monic_elements(10, 100);
        assert!(matches!(cap, Err(MzvError::EnumerationCapExceeded { .. })));
    }

    #[test]
    fn ladders() {
        assert_eq!(ring("genus0-q3").degree_ladder(5).j, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(ring("LRT-i").degree_ladder(6).j, vec![0, 2, 3, 4, 5, 6]);
        assert_eq!(ring("LRT-iv").degree_ladder(8).j, vec![0, 2, 4, 5, 6, 7, 8]);
        // j_m = m + g eventually
        let l = ring("LRT-iv").degree_ladder(40);
        for (m, &j) in l.j.iter().enumerate().skip(4) {
            assert_eq!(j, m as u64 + 2);
        }
    }

    #[test]
    fn expansions_satisfy_relation() {
        for label in ["LRT-i", "LRT-ii", "LRT-iii", "LRT-iv"] {
            let r = ring(label);
            let t = r.expand_at_infinity(&r.theta(), 30).unwrap();
            let e = r.expand_at_infinity(&r.eta(), 30).unwrap();
            let d = 2;
            assert_eq!(t.valuation(), -d);
            assert_eq!(e.valuation(), -(2 * r.genus() as i128 + 1));
            assert_eq!((t.lead(), e.lead()), (1, 1));
            assert_eq!(r.expand_at_infinity(&RingElem::one(), 5).unwrap(), Laurent::one().truncate(5));
        }
        let g0 = ring("genus0-q5");
        assert_eq!(g0.expand_at_infinity(&g0.theta(), 10).unwrap(), Laurent::monomial(1, -1).truncate(10));
    }

    #[test]
    fn expansion_is_multiplicative() {
        let r = ring("LRT-iii");
        let x = r.add(&r.mul(&r.theta(), &r.eta()), &r.constant(2));
        let y = r.add(&r.pow(&r.theta(), 3), &r.scale(&r.eta(), 3));
        let lr = LaurentRing::new(r.fq().clone(), 40);
        let lhs = r.expand_at_infinity(&r.mul(&x, &y), 20).unwrap();
        let rhs = lr.mul(&r.expand_at_infinity(&x, 40).unwrap(), &r.expand_at_infinity(&y, 40).unwrap());
        assert!(lr.compare(&lhs, &rhs, Some(20)).equal);
        assert!(matches!(r.expand_at_infinity(&x, -5), Err(MzvError::PrecisionTooSmall(_))));
    }

    #[test]
    fn config_json_round_trip() {
        let spec = CurveSpec::builtin("LRT-iii").unwrap();
        let js = serde_json::to_string(&spec).unwrap();
        assert!(js.contains("\"F1\""));
        let back: CurveSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, spec);
        let bad = CurveSpec { f1: vec![1, 0, 1], ..spec };
        assert!(CurveRing::new(bad).is_err());
    }
}
