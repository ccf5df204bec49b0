//! Polynomials in `θ, η, X, Y` over `F_q`, reduced modulo the curve relation
//! in `(θ, η)` and its Frobenius transport in `(X, Y)`, and the closed forms
//! of `α_{n,1}` for the four class-number-one rings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::coeff::Coeffs;
use crate::curve::{CurveRing, RingElem};
use crate::drinfeld::DrinfeldCoeffs;
use crate::error::{MzvError, Result};
use crate::fq::{Fq, FqField};
use crate::frac::{Frac, KField};
use crate::poly::UniPoly;
use crate::powersum::{Composition, ZetaEngine};
use crate::report::{int_json, Verdict};

const EXPRESSIONS: &str = include_str!("../data/conjecture_expressions.json");
const EXPRESSIONS_SHA256: &str = include_str!("../data/conjecture_expressions.sha256");

pub const THETA: usize = 0;
pub const ETA: usize = 1;
pub const X: usize = 2;
pub const Y: usize = 3;

pub type Exponent = [u32; 4];

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponent, Fq>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }
    pub fn constant(c: Fq) -> Self {
        Self::monomial(c, [0; 4])
    }
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(1, e)
    }
    pub fn monomial(c: Fq, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        MultiPoly { terms }
    }
    pub fn terms(&self) -> &BTreeMap<Exponent, Fq> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, f: &FqField, e: Exponent, c: Fq) {
        let v = f.add(self.terms.get(&e).copied().unwrap_or(0), c);
        if v == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, f: &FqField, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.insert_add(f, *e, c);
        }
        r
    }
    pub fn neg(&self, f: &FqField) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, &c)| (*e, f.neg(c))).collect() }
    }
    pub fn sub(&self, f: &FqField, o: &MultiPoly) -> MultiPoly {
        self.add(f, &o.neg(f))
    }
    pub fn scale(&self, f: &FqField, s: Fq) -> MultiPoly {
        if s == 0 {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, &c)| (*e, f.mul(c, s))).collect() }
    }
    pub fn mul(&self, f: &FqField, o: &MultiPoly) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                r.insert_add(f, e, f.mul(ca, cb));
            }
        }
        r
    }
    pub fn pow(&self, f: &FqField, n: u32) -> MultiPoly {
        let mut r = MultiPoly::constant(1);
        for _ in 0..n {
            r = r.mul(f, self);
        }
        r
    }

    /// Substitutes ring elements for the four variables.
    pub fn specialize(&self, ring: &CurveRing, vals: &[RingElem; 4]) -> RingElem {
        let mut cache: BTreeMap<(usize, u32), RingElem> = BTreeMap::new();
        let mut power = |i: usize, k: u32| -> RingElem {
            cache.entry((i, k)).or_insert_with(|| ring.pow(&vals[i], k as u64)).clone()
        };
        let mut acc = RingElem::zero();
        for (e, &c) in &self.terms {
            let mut m = ring.constant(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = ring.mul(&m, &power(i, k));
                }
            }
            acc = ring.add(&acc, &m);
        }
        acc
    }

    pub fn to_terms(&self, f: &FqField) -> Vec<Term> {
        self.terms.iter().map(|(e, &c)| Term { e: *e, c: f.coords(c) }).collect()
    }
    pub fn from_terms(f: &FqField, terms: &[Term]) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for t in terms {
            r.insert_add(f, t.e, f.from_coords(&t.c));
        }
        r
    }
}

/// One stored term: exponents of `(θ, η, X, Y)` and the coefficient as
/// coordinates over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub e: Exponent,
    pub c: Vec<u32>,
}

/// Parses `+ - * ^ ( )`, integers and the variables `t|θ`, `e|η`, `X`, `Y`.
pub fn parse(f: &FqField, src: &str) -> Result<MultiPoly> {
    let toks = tokenize(src)?;
    let mut p = Parser { f, toks, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(MzvError::Config(format!("trailing input in expression {src:?}")));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let mut n = 0u64;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    n = n * 10 + chars[i].to_digit(10).unwrap() as u64;
                    i += 1;
                }
                out.push(Tok::Num(n));
                continue;
            }
            't' | 'θ' => out.push(Tok::Var(THETA)),
            'e' | 'η' => out.push(Tok::Var(ETA)),
            'X' => out.push(Tok::Var(X)),
            'Y' => out.push(Tok::Var(Y)),
            '+' | '-' | '*' | '^' | '(' | ')' => out.push(Tok::Op(c)),
            _ => return Err(MzvError::Config(format!("unexpected character {c:?} in expression"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    f: &'a FqField,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = if self.eat('-') { self.term()?.neg(self.f) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(self.f, &self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(self.f, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }
    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(self.f, &self.power()?);
        }
        Ok(acc)
    }
    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    Ok(base.pow(self.f, n as u32))
                }
                _ => Err(MzvError::Config("exponent must be an integer".into())),
            }
        } else {
            Ok(base)
        }
    }
    fn atom(&mut self) -> Result<MultiPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.f.from_int((n % self.f.p() as u64) as i64)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(MultiPoly::var(i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let r = self.expr()?;
                if !self.eat(')') {
                    return Err(MzvError::Config("unbalanced parenthesis".into()));
                }
                Ok(r)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.atom()?.neg(self.f))
            }
            t => Err(MzvError::Config(format!("unexpected token {t:?}"))),
        }
    }
}

/// `η² = F₁(θ) − F₂(θ)η` and `Y² = F₁(X) − F₂(X)Y`.
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    fq: Arc<FqField>,
    f1: UniPoly,
    f2: UniPoly,
}

impl ReductionSystem {
    pub fn new(ring: &CurveRing) -> Result<Self> {
        if ring.is_genus0() {
            return Err(MzvError::Domain("reduction needs a plane curve".into()));
        }
        Ok(ReductionSystem { fq: ring.fq().clone(), f1: ring.f1().clone(), f2: ring.f2().clone() })
    }

    pub fn field(&self) -> &FqField {
        &self.fq
    }

    /// `F(v)` as a polynomial in the given variable.
    fn lift(&self, p: &UniPoly, var: usize) -> MultiPoly {
        let mut r = MultiPoly::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            let mut e = [0; 4];
            e[var] = k as u32;
            r.insert_add(&self.fq, e, c);
        }
        r
    }

    /// Lowers the exponent of `var` (η or Y) below 2; `base` is θ or X.
    fn reduce_var(&self, p: &MultiPoly, var: usize, base: usize) -> MultiPoly {
        let f = &self.fq;
        let f1 = self.lift(&self.f1, base);
        let f2 = self.lift(&self.f2, base);
        let mut todo = p.clone();
        let mut done = MultiPoly::zero();
        while let Some((&e, &c)) = todo.terms.iter().next() {
            todo.terms.remove(&e);
            if e[var] < 2 {
                done.insert_add(f, e, c);
                continue;
            }
            // v^k = v^{k−2}(F₁ − F₂ v)
            let mut rest = e;
            rest[var] -= 2;
            let m = MultiPoly::monomial(c, rest);
            let mut down = [0; 4];
            down[var] = 1;
            let repl = f1.sub(f, &f2.mul(f, &MultiPoly::monomial(1, down)));
            for (e2, &c2) in m.mul(f, &repl).terms() {
                todo.insert_add(f, *e2, c2);
            }
        }
        done
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let r = self.reduce_var(p, ETA, THETA);
        self.reduce_var(&r, Y, X)
    }

    /// The same reduction in the opposite order, for confluence checks.
    pub fn normal_form_reversed(&self, p: &MultiPoly) -> MultiPoly {
        let r = self.reduce_var(p, Y, X);
        self.reduce_var(&r, ETA, THETA)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpressionEntry {
    pub ring: String,
    pub side: String,
    pub source_num: String,
    pub source_den: String,
    pub num: Vec<Term>,
    pub den: Vec<Term>,
}

/// The stored expressions, after checking the file against its checksum.
pub fn load_expressions() -> Result<Vec<ExpressionEntry>> {
    let digest = hex::encode(Sha256::digest(EXPRESSIONS.as_bytes()));
    if digest != EXPRESSIONS_SHA256.trim() {
        return Err(MzvError::Config(format!("expression data checksum mismatch: {digest}")));
    }
    serde_json::from_str(EXPRESSIONS).map_err(|e| MzvError::Config(e.to_string()))
}

/// A rational closed form `num/den` in `θ, η, X, Y`.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

pub fn closed_form(ring_label: &str, side: &str) -> Result<ClosedForm> {
    let ring = CurveRing::from_label(ring_label)?;
    let f = ring.fq();
    let e = load_expressions()?
        .into_iter()
        .find(|e| e.ring == ring_label && e.side == side)
        .ok_or_else(|| MzvError::Config(format!("no {side} expression for {ring_label}")))?;
    Ok(ClosedForm { num: MultiPoly::from_terms(f, &e.num), den: MultiPoly::from_terms(f, &e.den) })
}

/// Exponent `j` with `X = θ^{q^j}` for a given `n`.
pub fn x_twist(ring_label: &str, n: u32) -> Result<u32> {
    if n == 0 {
        return Err(MzvError::Domain("n must be at least 1".into()));
    }
    Ok(if ring_label == "LRT-iv" { n - 1 } else { n })
}

/// Cross-multiplied difference of two closed forms, in normal form.
pub fn cross_difference(sys: &ReductionSystem, a: &ClosedForm, b: &ClosedForm) -> MultiPoly {
    let f = sys.field();
    sys.normal_form(&a.num.mul(f, &b.den).sub(f, &b.num.mul(f, &a.den)))
}

pub fn verify_forms(sys: &ReductionSystem, direct: &ClosedForm, derived: &ClosedForm) -> Verdict {
    let f = sys.field();
    let d = cross_difference(sys, direct, derived);
    let witness = (!d.is_zero()).then(|| {
        let lead: Vec<_> = d.to_terms(f).into_iter().rev().take(4).collect();
        json!({ "difference_terms": d.terms().len(), "leading": lead })
    });
    let den_ok = !sys.normal_form(&direct.den).is_zero() && !sys.normal_form(&derived.den).is_zero();
    let pass = d.is_zero() && den_ok;
    Verdict::exact(
        pass,
        witness.or(Some(json!({ "zero_denominator": true }))),
        json!({ "difference_terms": d.terms().len() }),
    )
}

/// Both closed forms of `α_{n,1}` for one ring agree in normal form.
pub fn verify_conjecture33(ring_label: &str) -> Result<Verdict> {
    let ring = CurveRing::from_label(ring_label)?;
    let sys = ReductionSystem::new(&ring)?;
    Ok(verify_forms(&sys, &closed_form(ring_label, "direct")?, &closed_form(ring_label, "derived")?))
}

/// The closed form at `X = θ^{q^j}`, `Y = η^{q^j}`.
pub fn specialize_form(kf: &KField, form: &ClosedForm, j: u32) -> Result<Frac> {
    let ring = kf.ring();
    let vals = [ring.theta(), ring.eta(), ring.frob_k(&ring.theta(), j), ring.frob_k(&ring.eta(), j)];
    let den = form.den.specialize(ring, &vals);
    if den.is_zero() {
        return Err(MzvError::DivisionByZero);
    }
    kf.ratio(&form.num.specialize(ring, &vals), &den)
}

/// Closed forms, the shtuka formula for `α_{n,1}`, and the ratio
/// `ζ(q^n−1, q^{n+1}−q^n)/ζ(q^{n+1}−1)` all agree.
pub fn crosscheck_alpha_n1(ring_label: &str, dc: &DrinfeldCoeffs, engine: &ZetaEngine, n: u32) -> Result<Verdict> {
    let j = x_twist(ring_label, n)?;
    let kf = dc.kf();
    let q = kf.ring().q() as u64;
    let alpha = dc.alpha(n, 1)?;
    let mut checks = Vec::new();
    for side in ["derived", "direct"] {
        let v = specialize_form(kf, &closed_form(ring_label, side)?, j)?;
        let ok = kf.eq(&v, &alpha);
        checks.push((
            format!("{side} form = α_{{n,1}}"),
            Verdict::exact(
                ok,
                Some(json!({ "form": kf.describe(&v), "alpha": kf.describe(&alpha) })),
                json!({ "n": n }),
            ),
        ));
    }
    let ok = kf.eq(&alpha, &dc.alpha_n1(n)?) && kf.eq(&alpha, &dc.alpha_n1_shtuka(n)?);
    checks.push(("α_{n,1} formulas agree".into(), Verdict::exact(ok, Some(json!({ "n": n })), json!({}))));
    let prec = engine.prec();
    let lr = crate::laurent::LaurentRing::new(kf.ring().fq().clone(), prec + 16);
    let lhs = engine.zeta(&Composition::eulerian(q, n, 1))?.value;
    let rhs = lr.mul(&kf.to_laurent(&alpha, prec)?, &engine.zeta(&Composition::new(vec![q.pow(n + 1) - 1])?)?.value);
    let c = lr.compare(&lhs, &rhs, Some(prec));
    let ok = c.equal && c.checked_prec >= prec;
    let mut v = Verdict::exact(
        ok,
        Some(json!({ "first_mismatch": c.first_mismatch.map(int_json), "checked": int_json(c.checked_prec) })),
        json!({ "n": n }),
    );
    v.checked_precision = Some(c.checked_prec);
    checks.push(("zeta ratio = α_{n,1}".into(), v));
    Ok(Verdict::all(checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> ReductionSystem {
        ReductionSystem::new(&CurveRing::from_label(label).unwrap()).unwrap()
    }

    #[test]
    fn parse_basics() {
        let f = FqField::new(3).unwrap();
        let p = parse(&f, "(X-t)^2 - -1").unwrap();
        let q = parse(&f, "X^2 + X*t + t^2 + 1").unwrap();
        assert_eq!(p, q);
        assert!(parse(&f, "X^").is_err());
        assert!(parse(&f, "(X").is_err());
    }

    #[test]
    fn ring_i_relations() {
        let s = sys("LRT-i");
        let f = s.field().clone();
        let nf = s.normal_form(&parse(&f, "e^2").unwrap());
        assert_eq!(nf, parse(&f, "e + t^3 + t + 1").unwrap());
        let nf = s.normal_form(&parse(&f, "Y^4 + Y^2").unwrap());
        assert_eq!(nf, parse(&f, "X^6 + X^2 + 1").unwrap());
        let c = MultiPoly::constant(1);
        assert_eq!(s.normal_form(&c), c);
    }
}
