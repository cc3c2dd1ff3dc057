//! Exact root counts relative to the unit circle.
//!
//! The count proceeds in three exact stages:
//!
//! 1. the factors `x - 1` and `x + 1` are divided out;
//! 2. the self-reciprocal part `g = gcd(r, x^n r(1/x))` is split off. Its
//!    roots are closed under `z -> 1/z`, so the off-circle ones divide evenly
//!    between inside and outside, and its on-circle roots are counted by
//!    Sturm sequences on the trace polynomial over `(-2, 2)`;
//! 3. the cofactor has no pair of roots symmetric in the circle, so its
//!    Schur–Cohn form `B^T B - A^T A` is nonsingular and its inertia is the
//!    (inside, outside) split.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::sturm::{rat, SturmSequence};
use crate::error::{Error, Result};
use crate::matrix::{real_rooted_sign_counts, Matrix};
use crate::IntPoly;

/// Roots counted with multiplicity in the open unit disk, on the unit
/// circle and outside the closed disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiskCounts {
    pub inside: usize,
    pub on: usize,
    pub outside: usize,
}

impl DiskCounts {
    pub fn new(inside: usize, on: usize, outside: usize) -> Self {
        DiskCounts {
            inside,
            on,
            outside,
        }
    }

    pub fn total(&self) -> usize {
        self.inside + self.on + self.outside
    }
}

/// Exact `(inside, on, outside)` root counts of a monic polynomial with
/// nonzero constant term.
pub fn unit_disk_count(p: &IntPoly) -> Result<DiskCounts> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let n = p.deg();
    let mut on = 0;
    let mut r = p.clone();
    for linear in [IntPoly::from_i64s(&[-1, 1]), IntPoly::from_i64s(&[1, 1])] {
        while let Ok(q) = r.div_exact(&linear) {
            r = q;
            on += 1;
        }
    }
    let g = r.gcd(&r.reciprocal());
    let on_g = circle_roots_of_reciprocal_part(&g);
    let paired = g.deg() - on_g;
    debug_assert!(paired.is_multiple_of(2));
    let s = r.div_exact(&g).expect("gcd divides");
    let inside_s = schur_cohn_inside(&s);
    let inside = paired / 2 + inside_s;
    on += on_g;
    Ok(DiskCounts {
        inside,
        on,
        outside: n - inside - on,
    })
}

/// On-circle roots (with multiplicity) of a self-reciprocal polynomial
/// without roots at `+-1`.
fn circle_roots_of_reciprocal_part(g: &IntPoly) -> usize {
    if g.deg() == 0 {
        return 0;
    }
    let lo = rat(-2);
    let hi = rat(2);
    g.squarefree_decomposition()
        .into_iter()
        .map(|(h, mult)| {
            let q = trace_transform(&h).expect("self-reciprocal factor without +-1 roots");
            2 * SturmSequence::new(&q).count(&lo, &hi) * mult
        })
        .sum()
}

/// Roots strictly inside the unit disk of a polynomial coprime to its
/// reciprocal, from the inertia of its Schur–Cohn matrix.
fn schur_cohn_inside(s: &IntPoly) -> usize {
    let m = s.deg();
    if m == 0 {
        return 0;
    }
    let a = s.coeffs();
    let lower = Matrix::from_fn(m, |i, j| {
        if i >= j {
            a[i - j].clone()
        } else {
            BigInt::zero()
        }
    });
    let upper = Matrix::from_fn(m, |i, j| {
        if i >= j {
            a[m - (i - j)].clone()
        } else {
            BigInt::zero()
        }
    });
    let form = &(&upper.transpose() * &upper) - &(&lower.transpose() * &lower);
    let (pos, neg, zero) = real_rooted_sign_counts(&form.charpoly());
    assert_eq!(
        zero, 0,
        "Schur-Cohn form singular for a polynomial coprime to its reciprocal"
    );
    debug_assert_eq!(pos + neg, m);
    pos
}

/// For `p` palindromic of even degree `2d`, the degree-`d` polynomial `q`
/// with `z^d q(z + 1/z) = p(z)`.
///
/// Uses `z^k + z^-k = D_k(z + 1/z)` with `D_0 = 2`, `D_1 = t`,
/// `D_k = t D_(k-1) - D_(k-2)`.
pub fn trace_transform(p: &IntPoly) -> Result<IntPoly> {
    if !p.is_even_palindromic() {
        return Err(Error::NotPalindromic);
    }
    let d = p.deg() / 2;
    let t = IntPoly::x();
    let mut q = IntPoly::constant(p.coeff(d));
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = t.clone();
    for k in 1..=d {
        q = &q + &cur.scale(&p.coeff(d + k));
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(q)
}

/// Count of roots of `p` on the unit circle by the trace polynomial, used
/// by tests as an independent route: real roots of `q` in `(-2, 2)` pair up
/// with circle roots of `p`.
#[cfg(test)]
pub(crate) fn trace_circle_count(p: &IntPoly) -> Result<usize> {
    let q = trace_transform(p)?;
    Ok(2 * SturmSequence::new(&q).count(&rat(-2), &rat(2)))
}
