//! Dense univariate polynomials over `F_q`.
//!
//! Multiplication switches to a number-theoretic transform over
//! `Z/998244353` once both operands are long enough: each `F_q` coefficient
//! is split into its `F_p` coordinates, the coordinate convolutions are
//! computed exactly over the integers and reduced back.

use crate::fq::{Fq, FqField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct UniPoly {
    c: Vec<Fq>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }
    pub fn one() -> Self {
        UniPoly { c: vec![1] }
    }
    pub fn constant(a: Fq) -> Self {
        Self::from_coeffs(vec![a])
    }
    /// `a * x^n`
    pub fn monomial(a: Fq, n: usize) -> Self {
        if a == 0 {
            return Self::zero();
        }
        let mut c = vec![0; n + 1];
        c[n] = a;
        UniPoly { c }
    }
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }
    pub fn from_coeffs(mut c: Vec<Fq>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        UniPoly { c }
    }
    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<Fq> {
        self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn lead(&self) -> Fq {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn len(&self) -> usize {
        self.c.len()
    }
}

const NTT_MOD: u64 = 998_244_353;
const NTT_ROOT: u64 = 3;
const NAIVE_CUTOFF: usize = 48;
/// Largest transform length supported by the modulus.
const NTT_MAX_LEN: usize = 1 << 23;

fn pw(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= NTT_MOD;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % NTT_MOD;
        }
        b = b * b % NTT_MOD;
        e >>= 1;
    }
    r
}

fn ntt(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pw(NTT_ROOT, (NTT_MOD - 1) / len as u64);
        if invert {
            w = pw(w, NTT_MOD - 2);
        }
        let half = len / 2;
        let mut roots = Vec::with_capacity(half);
        let mut cur = 1u64;
        for _ in 0..half {
            roots.push(cur);
            cur = cur * w % NTT_MOD;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = hi[k] * roots[k] % NTT_MOD;
                lo[k] = if u + v >= NTT_MOD { u + v - NTT_MOD } else { u + v };
                hi[k] = if u >= v { u - v } else { u + NTT_MOD - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv_n = pw(n as u64, NTT_MOD - 2);
        for x in a.iter_mut() {
            *x = *x * inv_n % NTT_MOD;
        }
    }
}

impl FqField {
    pub fn poly_add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (long, short) = if a.c.len() >= b.c.len() { (a, b) } else { (b, a) };
        let mut c = long.c.clone();
        for (x, &y) in c.iter_mut().zip(&short.c) {
            *x = self.add(*x, y);
        }
        UniPoly::from_coeffs(c)
    }

    pub fn poly_neg(&self, a: &UniPoly) -> UniPoly {
        UniPoly { c: a.c.iter().map(|&x| self.neg(x)).collect() }
    }

    pub fn poly_sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut c = a.c.clone();
        if c.len() < b.c.len() {
            c.resize(b.c.len(), 0);
        }
        for (x, &y) in c.iter_mut().zip(&b.c) {
            *x = self.sub(*x, y);
        }
        UniPoly::from_coeffs(c)
    }

    pub fn poly_scale(&self, a: &UniPoly, s: Fq) -> UniPoly {
        if s == 0 {
            return UniPoly::zero();
        }
        UniPoly { c: a.c.iter().map(|&x| self.mul(x, s)).collect() }
    }

    /// `a * x^k`
    pub fn poly_shift(&self, a: &UniPoly, k: usize) -> UniPoly {
        if a.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&a.c);
        UniPoly { c }
    }

    pub fn poly_mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero();
        }
        let small = a.c.len().min(b.c.len());
        let bound = self.e() as u64 * (self.p() as u64 - 1).pow(2) * small as u64;
        if small <= NAIVE_CUTOFF || bound >= NTT_MOD {
            return self.poly_mul_naive(a, b);
        }
        if a.c.len() + b.c.len() > NTT_MAX_LEN {
            return self.poly_mul_blocked(a, b, NTT_MAX_LEN / 2);
        }
        self.poly_mul_ntt(a, b)
    }

    /// Products longer than one transform: split both factors into blocks.
    fn poly_mul_blocked(&self, a: &UniPoly, b: &UniPoly, block: usize) -> UniPoly {
        let mut c = vec![0u8; a.c.len() + b.c.len() - 1];
        for (i, xa) in a.c.chunks(block).enumerate() {
            for (j, xb) in b.c.chunks(block).enumerate() {
                let pa = UniPoly::from_coeffs(xa.to_vec());
                let pb = UniPoly::from_coeffs(xb.to_vec());
                let part = self.poly_mul(&pa, &pb);
                let off = (i + j) * block;
                for (k, &x) in part.c.iter().enumerate() {
                    c[off + k] = self.add(c[off + k], x);
                }
            }
        }
        UniPoly::from_coeffs(c)
    }

    fn poly_mul_naive(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut c = vec![0u8; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                if y != 0 {
                    c[i + j] = self.add(c[i + j], self.mul(x, y));
                }
            }
        }
        UniPoly::from_coeffs(c)
    }

    fn poly_mul_ntt(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let e = self.e() as usize;
        let p = self.p() as u64;
        let out_len = a.c.len() + b.c.len() - 1;
        let n = out_len.next_power_of_two();
        let split = |poly: &UniPoly| -> Vec<Vec<u64>> {
            let mut parts = vec![vec![0u64; n]; e];
            for (i, &x) in poly.c.iter().enumerate() {
                let mut v = x as u64;
                for part in parts.iter_mut() {
                    part[i] = v % p;
                    v /= p;
                }
            }
            for part in parts.iter_mut() {
                ntt(part, false);
            }
            parts
        };
        let fa = split(a);
        let fb = if std::ptr::eq(a, b) { fa.clone() } else { split(b) };
        let mut res = vec![vec![0u64; n]; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                let r = &mut res[i + j];
                for k in 0..n {
                    r[k] = (r[k] + fa[i][k] * fb[j][k]) % NTT_MOD;
                }
            }
        }
        for r in res.iter_mut() {
            ntt(r, true);
        }
        // w^k for k < 2e-1 as field elements
        let w = self.generator();
        let wpow: Vec<Fq> = (0..2 * e - 1).map(|k| self.pow(w, k as u64)).collect();
        let mut c = vec![0u8; out_len];
        for (i, slot) in c.iter_mut().enumerate() {
            if e == 1 {
                *slot = (res[0][i] % p) as Fq;
            } else {
                let mut acc = 0;
                for k in 0..2 * e - 1 {
                    let d = (res[k][i] % p) as Fq;
                    if d != 0 {
                        acc = self.add(acc, self.mul(d, wpow[k]));
                    }
                }
                *slot = acc;
            }
        }
        UniPoly::from_coeffs(c)
    }

    pub fn poly_sqr(&self, a: &UniPoly) -> UniPoly {
        self.poly_mul(a, a)
    }

    /// `a^n` through base-`p` digits, so high `p`-powers cost only index spreading.
    pub fn poly_pow(&self, a: &UniPoly, n: u64) -> UniPoly {
        if n == 0 {
            return UniPoly::one();
        }
        let p = self.p() as u64;
        let mut low = UniPoly::one();
        for _ in 0..n % p {
            low = self.poly_mul(&low, a);
        }
        if n < p {
            return low;
        }
        let high = self.poly_pow(a, n / p);
        self.poly_mul(&self.poly_frob_p(&high), &low)
    }

    /// `a(x)^p`: Frobenius on the coefficients, then `x ↦ x^p`.
    pub fn poly_frob_p(&self, a: &UniPoly) -> UniPoly {
        let spread = self.poly_compose_pow(a, self.p() as usize);
        UniPoly::from_coeffs(spread.c.iter().map(|&x| self.frob(x)).collect())
    }

    /// `a(x)^q = a(x^q)`, valid because coefficients lie in `F_q`.
    pub fn poly_frob_q(&self, a: &UniPoly) -> UniPoly {
        self.poly_compose_pow(a, self.q() as usize)
    }

    /// `a(x^k)`
    pub fn poly_compose_pow(&self, a: &UniPoly, k: usize) -> UniPoly {
        if a.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0u8; (a.c.len() - 1) * k + 1];
        for (i, &x) in a.c.iter().enumerate() {
            c[i * k] = x;
        }
        UniPoly { c }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn poly_divrem(&self, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if a.c.len() < b.c.len() {
            return (UniPoly::zero(), a.clone());
        }
        let db = b.c.len() - 1;
        let inv = self.inv(b.lead()).unwrap();
        let mut r = a.c.clone();
        let mut quo = vec![0u8; a.c.len() - db];
        for i in (0..quo.len()).rev() {
            let top = r[i + db];
            if top == 0 {
                continue;
            }
            let f = self.mul(top, inv);
            quo[i] = f;
            for (j, &bc) in b.c.iter().enumerate() {
                if bc != 0 {
                    r[i + j] = self.sub(r[i + j], self.mul(f, bc));
                }
            }
        }
        r.truncate(db);
        (UniPoly::from_coeffs(quo), UniPoly::from_coeffs(r))
    }

    pub fn poly_gcd(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = self.poly_divrem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    pub fn poly_monic(&self, a: &UniPoly) -> UniPoly {
        if a.is_zero() {
            return a.clone();
        }
        self.poly_scale(a, self.inv(a.lead()).unwrap())
    }

    pub fn poly_eval(&self, a: &UniPoly, x: Fq) -> Fq {
        a.c.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Product of many polynomials, balanced.
    pub fn poly_product(&self, items: &[UniPoly]) -> UniPoly {
        match items.len() {
            0 => UniPoly::one(),
            1 => items[0].clone(),
            n => {
                let (l, r) = items.split_at(n / 2);
                self.poly_mul(&self.poly_product(l), &self.poly_product(r))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rand_poly(q: u32, len: usize, seed: u64) -> UniPoly {
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let c = (0..len)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % q as u64) as u8
            })
            .collect();
        UniPoly::from_coeffs(c)
    }

    #[test]
    fn ntt_matches_naive() {
        for q in [2, 3, 4, 5, 9] {
            let f = FqField::new(q).unwrap();
            for (la, lb) in [(60, 70), (200, 130), (1000, 999)] {
                let a = rand_poly(q, la, la as u64 + q as u64);
                let b = rand_poly(q, lb, lb as u64 * 7);
                assert_eq!(f.poly_mul_ntt(&a, &b), f.poly_mul_naive(&a, &b), "q={q}");
            }
        }
    }

    #[test]
    fn blocked_matches_naive() {
        let f = FqField::new(4).unwrap();
        let a = rand_poly(4, 700, 5);
        let b = rand_poly(4, 450, 6);
        assert_eq!(f.poly_mul_blocked(&a, &b, 128), f.poly_mul_naive(&a, &b));
    }

    #[test]
    fn frobenius_is_qth_power() {
        let f = FqField::new(4).unwrap();
        let a = rand_poly(4, 9, 3);
        assert_eq!(f.poly_frob_q(&a), f.poly_pow(&a, 4));
        let mut naive = UniPoly::one();
        for _ in 0..4 {
            naive = f.poly_mul(&naive, &a);
        }
        assert_eq!(f.poly_frob_q(&a), naive);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = FqField::new(9).unwrap();
        let a = rand_poly(9, 5, 11);
        let mut naive = UniPoly::one();
        for n in 0..30u64 {
            assert_eq!(f.poly_pow(&a, n), naive);
            naive = f.poly_mul(&naive, &a);
        }
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(sa in 0u64..1000, sb in 0u64..1000, la in 0usize..30, lb in 1usize..12) {
            let f = FqField::new(3).unwrap();
            let a = rand_poly(3, la, sa);
            let mut b = rand_poly(3, lb, sb);
            if b.is_zero() { b = UniPoly::one(); }
            let (quo, r) = f.poly_divrem(&a, &b);
            prop_assert_eq!(f.poly_add(&f.poly_mul(&quo, &b), &r), a);
            prop_assert!(r.len() < b.len());
        }
    }
}
