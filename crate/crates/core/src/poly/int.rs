//! Integer-coefficient specialisation: content, exact division, gcd and
//! squarefree decomposition.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::error::{Error, Result};

impl Poly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Poly::new(self.coeffs().iter().map(|c| c / &g).collect())
    }

    /// Exact quotient in `Z[x]`; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs().to_vec();
        if rem.len() <= dd {
            return Err(Error::DivisionNotExact);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact);
            }
            for (j, d) in divisor.coeffs().iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        if rem[..dd].iter().any(|c| !c.is_zero()) {
            return Err(Error::DivisionNotExact);
        }
        Ok(Poly::new(quot))
    }

    /// Sign-preserving pseudo-remainder: a positive integer multiple of the
    /// remainder of `self` by `divisor` over the rationals.
    pub fn sprem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let lead_abs = lead.abs();
        let lead_sign = if lead.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut rem = self.coeffs().to_vec();
        while rem.len() > dd {
            let top = rem.pop().expect("nonempty");
            let k = rem.len() - dd;
            if !lead_abs.is_one() {
                for c in rem.iter_mut() {
                    *c *= &lead_abs;
                }
            }
            let factor = &lead_sign * &top;
            for (j, d) in divisor.coeffs().iter().take(dd).enumerate() {
                rem[k + j] -= &factor * d;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        Poly::new(rem)
    }

    /// Greatest common divisor over `Q[x]`, returned as a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() || a.is_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.sprem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    pub fn integer_derivative(&self) -> Self {
        Poly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() < 1 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.integer_derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Yun's squarefree decomposition: `p = c * prod a_i^i` with each `a_i`
    /// primitive, squarefree and pairwise coprime. Only factors of positive
    /// degree are returned, ordered by multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        if self.deg() < 1 {
            return Vec::new();
        }
        let f = self.to_rational().make_monic();
        let df = f.derivative();
        let a0 = self
            .gcd(&self.integer_derivative())
            .to_rational()
            .make_monic();
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg() >= 1 {
            let d = &c - &b.derivative();
            let ai = Poly::from_rational(&b)
                .gcd(&Poly::from_rational(&d))
                .to_rational()
                .make_monic();
            if ai.deg() >= 1 {
                out.push((Poly::from_rational(&ai), i));
            }
            b = b.div_rem(&ai).0;
            c = d.div_rem(&ai).0;
            i += 1;
        }
        out
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clear denominators and take the primitive part.
    pub fn from_rational(p: &Poly<BigRational>) -> Self {
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Poly::new(
            p.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// `b^n p(a/b)` for `b > 0`; has the sign of `p(a/b)`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            acc = acc * num + c * &den_pow;
            if k > 0 {
                den_pow *= den;
            }
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs()
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign_of(&self.eval_homogeneous(x.numer(), x.denom()))
    }

    /// `1 + max |a_i / a_n|` rounded up; every complex root has smaller modulus.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let max = self
            .coeffs()
            .iter()
            .take(self.deg())
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + max.div_ceil(&lead)
    }

    /// Split `p = x^k q` with `q(0) != 0`.
    pub fn split_x_power(&self) -> (usize, Self) {
        let k = self.coeffs().iter().take_while(|c| c.is_zero()).count();
        (
            k,
            Poly::new(self.coeffs()[k.min(self.coeffs().len())..].to_vec()),
        )
    }

    /// Palindromic of even degree, the shape of a Salem polynomial.
    pub fn is_even_palindromic(&self) -> bool {
        self.degree().is_some_and(|d| d % 2 == 0) && self.is_palindromic()
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

pub(crate) fn sign_of(v: &BigInt) -> i32 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
