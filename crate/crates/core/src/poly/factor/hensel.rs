//! Lifting a factorization modulo `p` to one modulo `p^k`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::modp::{Fp, Fpx};
use crate::IntPoly;

fn to_int(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f = g h (mod p^j)` one step to `p^(j+1)`, given `s g + t h = 1`
/// modulo `p`. `g` and `h` stay monic.
fn lift_step(fp: &Fp, f: &IntPoly, g: &mut IntPoly, h: &mut IntPoly, t: &Fpx, pj: &BigInt) {
    let diff = f - &(&*g * &*h);
    let e = IntPoly::new(diff.coeffs().iter().map(|c| c / pj).collect());
    let e = fp.reduce(&e);
    if e.is_empty() {
        return;
    }
    let gp = fp.reduce(g);
    let hp = fp.reduce(h);
    let dg = fp.rem(&fp.mul(&e, t), &gp);
    let dh = fp.divrem(&fp.sub(&e, &fp.mul(&hp, &dg)), &gp).0;
    debug_assert!(fp
        .sub(&fp.add(&fp.mul(&gp, &dh), &fp.mul(&hp, &dg)), &e)
        .is_empty());
    *g = &*g + &to_int(&dg).scale(pj);
    *h = &*h + &to_int(&dh).scale(pj);
}

/// Lifts the monic factorization `f = prod factors (mod p)` to monic
/// factors modulo `p^k`, returned with coefficients in `[0, p^k)`.
///
/// Factors are split off one at a time: the first factor and the product
/// of the rest are lifted together, then the lifted cofactor is split
/// further.
pub(super) fn lift(fp: &Fp, f: &IntPoly, factors: &[Fpx], k: u32) -> Vec<IntPoly> {
    let p = BigInt::from(fp.p);
    let modulus = p.pow(k);
    let mut target = reduce_mod(f, &modulus);
    let mut out = Vec::with_capacity(factors.len());
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            out.push(target.clone());
            break;
        }
        let gbar = &factors[i];
        let hbar = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, u| fp.mul(&acc, u));
        let (one, _, t) = fp.xgcd(gbar, &hbar);
        debug_assert_eq!(one, vec![1]);
        let mut g = to_int(gbar);
        let mut h = to_int(&hbar);
        let mut pj = p.clone();
        for _ in 1..k {
            lift_step(fp, &target, &mut g, &mut h, &t, &pj);
            pj *= &p;
        }
        g = reduce_mod(&g, &modulus);
        h = reduce_mod(&h, &modulus);
        out.push(g);
        target = h;
    }
    out
}

/// Symmetric representative of each coefficient in `(-m/2, m/2]`.
pub(super) fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub(super) fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce_mod(&(a * b), m)
}
