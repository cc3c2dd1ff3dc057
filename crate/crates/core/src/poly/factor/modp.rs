//! Dense polynomials over a small prime field, constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::IntPoly;

pub(super) type Fpx = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(super) struct Fp {
    pub p: u64,
}

fn trim(mut a: Fpx) -> Fpx {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Fp { p }
    }

    fn mul_el(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow_el(a, self.p - 2)
    }

    fn pow_el(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_el(r, a);
            }
            a = self.mul_el(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce(&self, f: &IntPoly) -> Fpx {
        let p = BigInt::from(self.p);
        trim(
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&p).to_u64().expect("residue fits"))
                .collect(),
        )
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Fpx {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Fpx {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Fpx {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Fpx {
        trim(a.iter().map(|&x| self.mul_el(x, c)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> Fpx {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Fpx, Fpx) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), trim(r));
        }
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul_el(r[k + b.len() - 1], inv);
            q[k] = c;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - self.mul_el(c, y)) % self.p;
                }
            }
        }
        r.truncate(b.len() - 1);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Fpx {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Fpx {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(&self, a: &[u64], b: &[u64]) -> (Fpx, Fpx, Fpx) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("nonzero gcd"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> Fpx {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_el(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn powmod(&self, base: &[u64], mut e: BigInt, modulus: &[u64]) -> Fpx {
        let mut result = vec![1u64];
        let mut b = self.rem(base, modulus);
        let two = BigInt::from(2);
        while e > BigInt::from(0) {
            if e.is_odd() {
                result = self.rem(&self.mul(&result, &b), modulus);
            }
            b = self.rem(&self.mul(&b, &b), modulus);
            e /= &two;
        }
        result
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        deg(&self.gcd(f, &self.derivative(f))) == 0
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` where `g` is the product of all irreducible factors
    /// of degree `d`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Fpx, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while deg(&rest) >= 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, BigInt::from(self.p), &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if deg(&g) > 0 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        if deg(&rest) > 0 {
            let d = deg(&rest);
            out.push((rest, d));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    ///
    /// Cantor–Zassenhaus with splitting candidates enumerated in a fixed
    /// order (the base-`p` digits of 1, 2, 3, ...), so the result is
    /// deterministic. About half of all candidates split, so the
    /// enumeration ends quickly.
    pub fn equal_degree(&self, f: &[u64], d: usize) -> Vec<Fpx> {
        let n = deg(f);
        if n == d {
            return vec![f.to_vec()];
        }
        let exponent: BigInt = (BigInt::from(self.p).pow(d as u32) - 1) / 2;
        let mut counter: u64 = self.p;
        loop {
            counter += 1;
            let mut a = Vec::new();
            let mut k = counter;
            while k > 0 && a.len() < n {
                a.push(k % self.p);
                k /= self.p;
            }
            let a = trim(a);
            if deg(&a) == 0 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, exponent.clone(), f), &[1]);
            let g = self.gcd(f, &b);
            if deg(&g) > 0 && deg(&g) < n {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d);
                out.extend(self.equal_degree(&self.monic(&h), d));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles.
    pub fn factor_squarefree(&self, f: &[u64]) -> Vec<Fpx> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d));
        }
        out.sort();
        out
    }
}
