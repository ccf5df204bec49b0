//! Finite fields `F_q`, `q = p^e <= 256`, realised as `F_p[w]/(modulus)`.
//!
//! Elements are encoded as a single byte: the coordinates `c_0 + c_1 w + ...`
//! packed in base `p`. All arithmetic goes through precomputed tables.

use crate::error::{MzvError, Result};

pub type Fq = u8;

#[derive(Clone)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add_t: Vec<u8>,
    mul_t: Vec<u8>,
    neg_t: Vec<u8>,
    inv_t: Vec<u8>,
    frob_t: Vec<u8>,
}

impl std::fmt::Debug for FqField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Polynomial over F_p as coefficient list, low to high; returns remainder.
fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = modpow(b[db], p - 2, p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - f * bc % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn modpow(mut b: u32, mut e: u32, m: u32) -> u32 {
    let mut r = 1u32 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g: Vec<u32> = (0..d).map(|k| idx / p.pow(k as u32) % p).collect();
            g.push(1);
            if fp_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The modulus used for `F_{p^e}`: `w^2+w+1` for `F_4`, otherwise the
/// lexicographically first monic irreducible polynomial of degree `e`.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    if p == 2 && e == 2 {
        return vec![1, 1, 1];
    }
    let count = p.pow(e);
    for idx in 0..count {
        let mut f: Vec<u32> = (0..e).map(|k| idx / p.pow(k) % p).collect();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = (2..=q)
            .find(|&p| q.is_multiple_of(p))
            .map(|p| {
                let mut e = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    e += 1;
                }
                (p, if r == 1 { e } else { 0 })
            })
            .ok_or_else(|| MzvError::Config(format!("q = {q} is not a prime power")))?;
        if e == 0 || !is_prime(p) {
            return Err(MzvError::Config(format!("q = {q} is not a prime power")));
        }
        Self::with_modulus(p, e, default_modulus(p, e))
    }

    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(e);
        if !is_prime(p) || !(2..=256).contains(&q) {
            return Err(MzvError::Config(format!("unsupported field p={p}, e={e}")));
        }
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 || !is_irreducible(&modulus, p) {
            return Err(MzvError::Config("modulus must be monic irreducible of degree e".into()));
        }
        let qs = q as usize;
        let coords = |x: u32| -> Vec<u32> { (0..e).map(|k| x / p.pow(k) % p).collect() };
        let pack = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add_t = vec![0u8; qs * qs];
        let mut mul_t = vec![0u8; qs * qs];
        for a in 0..q {
            let ca = coords(a);
            for b in 0..q {
                let cb = coords(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add_t[(a * q + b) as usize] = pack(&s) as u8;
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for i in 0..e as usize {
                    for j in 0..e as usize {
                        prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                    }
                }
                let r = if e == 1 { prod } else { fp_rem(&prod, &modulus, p) };
                let mut r = r;
                r.resize(e as usize, 0);
                mul_t[(a * q + b) as usize] = pack(&r) as u8;
            }
        }
        let mut neg_t = vec![0u8; qs];
        let mut inv_t = vec![0u8; qs];
        let mut frob_t = vec![0u8; qs];
        for a in 0..qs {
            neg_t[a] = (0..qs).find(|&b| add_t[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv_t[a] = (1..qs).find(|&b| mul_t[a * qs + b] == 1).unwrap() as u8;
            }
            let mut x = 1u8;
            for _ in 0..p {
                x = mul_t[x as usize * qs + a];
            }
            frob_t[a] = x;
        }
        Ok(FqField { p, e, q, modulus, add_t, mul_t, neg_t, inv_t, frob_t })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add_t[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul_t[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        self.neg_t[a as usize]
    }
    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a == 0 {
            Err(MzvError::DivisionByZero)
        } else {
            Ok(self.inv_t[a as usize])
        }
    }
    /// `a^p`.
    #[inline]
    pub fn frob(&self, a: Fq) -> Fq {
        self.frob_t[a as usize]
    }
    pub fn pow(&self, a: Fq, mut n: u64) -> Fq {
        let mut r = 1;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }
    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, k: i64) -> Fq {
        k.rem_euclid(self.p as i64) as Fq
    }
    /// The adjoined root `w` of the modulus (`e > 1`).
    pub fn generator(&self) -> Fq {
        if self.e == 1 {
            // any primitive root works for e = 1; callers only need a nonzero element
            1
        } else {
            self.p as Fq
        }
    }
    /// Coordinates over F_p, low to high.
    pub fn coords(&self, a: Fq) -> Vec<u32> {
        (0..self.e).map(|k| a as u32 / self.p.pow(k) % self.p).collect()
    }
    pub fn from_coords(&self, c: &[u32]) -> Fq {
        c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d % self.p) as Fq
    }
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|x| x as Fq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_uses_w2_w_1() {
        let f = FqField::new(4).unwrap();
        let w = f.generator();
        // w^2 + w + 1 = 0
        assert_eq!(f.add(f.add(f.mul(w, w), w), 1), 0);
        assert_eq!(f.frob(w), f.mul(w, w));
        assert_eq!(f.pow(w, 3), 1);
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FqField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q as u64 - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(FqField::new(6).is_err());
        assert!(FqField::new(1).is_err());
    }
}
