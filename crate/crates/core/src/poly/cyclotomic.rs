//! Cyclotomic polynomials and detection of cyclotomic factors.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::IntPoly;

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs n >= 1");
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

fn substitute_power(p: &IntPoly, k: usize) -> IntPoly {
    if k == 1 {
        return p.clone();
    }
    let mut coeffs = vec![Zero::zero(); p.deg() * k + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        coeffs[i * k] = c.clone();
    }
    IntPoly::new(coeffs)
}

/// The `n`-th cyclotomic polynomial.
///
/// Built for the radical `m` of `n` by `Phi_(mp)(x) = Phi_m(x^p) / Phi_m(x)`
/// (exact division, `p` prime not dividing `m`), then
/// `Phi_n(x) = Phi_m(x^(n/m))`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    if let Some(p) = cache().lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let primes = prime_factors(n);
    let mut phi = IntPoly::from_i64s(&[-1, 1]);
    let mut m = 1u64;
    for &p in &primes {
        phi = substitute_power(&phi, p as usize)
            .div_exact(&phi)
            .expect("cyclotomic recursion divides exactly");
        m *= p;
    }
    let result = substitute_power(&phi, (n / m) as usize);
    cache()
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, result.clone());
    result
}

/// Cyclotomic part of a polynomial: `p = remainder * prod Phi_n^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    pub factors: Vec<(u64, usize)>,
    pub remainder: IntPoly,
}

impl CyclotomicSplit {
    pub fn reconstruct(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(self.remainder.clone(), |acc, &(n, k)| {
                &acc * &cyclotomic(n).pow(k as u32)
            })
    }

    pub fn is_cyclotomic_product(&self) -> bool {
        self.remainder.is_one()
    }
}

/// Splits off every cyclotomic factor of a monic polynomial.
///
/// Cyclotomic factors divide `gcd(p, x^n p(1/x))` with full multiplicity, so
/// candidates are tested against that gcd, whose degree bounds `phi(n)`.
/// Since `phi(n) >= sqrt(n/2)`, orders beyond `2 deg^2` never qualify.
pub fn peel_cyclotomic(p: &IntPoly) -> Result<CyclotomicSplit> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut remainder = p.clone();
    let mut reciprocal_part = p.gcd(&p.reciprocal());
    let mut factors = Vec::new();
    let bound = 2 * (p.deg() as u64).pow(2) + 2;
    for n in 1..=bound {
        if reciprocal_part.deg() == 0 {
            break;
        }
        if euler_phi(n) as usize > reciprocal_part.deg() {
            continue;
        }
        let phi = cyclotomic(n);
        let mut mult = 0;
        while let Ok(q) = reciprocal_part.div_exact(&phi) {
            reciprocal_part = q;
            remainder = remainder
                .div_exact(&phi)
                .expect("factor of the reciprocal part divides the input");
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    Ok(CyclotomicSplit { factors, remainder })
}
