//! Closed intervals with exact rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        RationalInterval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        RationalInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn one() -> Self {
        RationalInterval::point(BigRational::one())
    }

    pub fn zero() -> Self {
        RationalInterval::point(BigRational::zero())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Float containment check, for tests and reporting only.
    pub fn contains_f64(&self, x: f64) -> bool {
        match BigRational::from_float(x) {
            Some(q) => self.contains(&q),
            None => false,
        }
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Interval maximum: encloses `max(a, b)` for `a` in self and `b` in other.
    pub fn max(&self, other: &Self) -> Self {
        RationalInterval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        RationalInterval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    /// Power of an interval with non-negative lower endpoint.
    pub fn pow_nonneg(&self, e: u32) -> Self {
        assert!(
            !self.lo.is_negative(),
            "pow_nonneg on interval with negative endpoint"
        );
        RationalInterval {
            lo: num_traits::pow(self.lo.clone(), e as usize),
            hi: num_traits::pow(self.hi.clone(), e as usize),
        }
    }

    /// Reciprocal of a strictly positive interval.
    pub fn recip(&self) -> Self {
        assert!(self.lo.is_positive(), "recip of interval containing zero");
        RationalInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Round endpoints outward to multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        RationalInterval {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    /// Certified enclosure of the natural logarithm. Points equal to one map
    /// to the exact zero interval.
    pub fn ln(&self) -> Self {
        assert!(
            self.lo.is_positive(),
            "logarithm of a non-positive interval"
        );
        if self.lo.is_one() && self.hi.is_one() {
            return RationalInterval::zero();
        }
        RationalInterval {
            lo: ln_bounds(&self.lo, LN_BITS).0,
            hi: ln_bounds(&self.hi, LN_BITS).1,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Total order used for sorting enclosures: midpoint, then endpoints.
    pub fn cmp_midpoint(&self, other: &Self) -> Ordering {
        self.midpoint()
            .cmp(&other.midpoint())
            .then_with(|| self.lo.cmp(&other.lo))
            .then_with(|| self.hi.cmp(&other.hi))
    }

    /// `[lo, hi]` with both endpoints as decimals truncated to `digits`
    /// places (outward), for human-readable output.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        format!(
            "[{}, {}]",
            decimal(&self.lo, digits, false),
            decimal(&self.hi, digits, true)
        )
    }
}

const LN_BITS: u32 = 96;

pub(crate) fn floor_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

pub(crate) fn ceil_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Rational lower and upper bounds of `sqrt(q)` for `q >= 0`, each within
/// `2^-bits` of the true value.
pub(crate) fn sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!q.is_negative(), "square root of a negative number");
    if q.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    // sqrt(n/d) = sqrt(n d 4^bits) / (d 2^bits)
    let n = q.numer();
    let d = q.denom();
    let radicand = (n * d) << (2 * bits);
    let root = radicand.sqrt();
    let den = d << bits;
    let lo = BigRational::new(root.clone(), den.clone());
    let hi = if &root * &root == radicand {
        lo.clone()
    } else {
        BigRational::new(root + 1, den)
    };
    (lo, hi)
}

/// Lower and upper rational bounds of `ln(q)` for `q > 0`.
pub(crate) fn ln_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(q.is_positive());
    if q.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    // q = 2^k m with m in [1, 2)
    let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
    let two = BigRational::from_integer(2.into());
    let mut m = q / pow2(k);
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        k -= 1;
    }
    let m_lo = floor_dyadic(&m, bits + 8).max(BigRational::one());
    let m_hi = ceil_dyadic(&m, bits + 8);
    let (mlo, _) = ln_series(&m_lo, bits + 8);
    let (_, mhi) = ln_series(&m_hi, bits + 8);
    let (l2lo, l2hi) = ln_series(&BigRational::from_integer(2.into()), bits + 8);
    let kq = BigRational::from_integer(k.into());
    let (klo, khi) = if k >= 0 {
        (&kq * &l2lo, &kq * &l2hi)
    } else {
        (&kq * &l2hi, &kq * &l2lo)
    };
    (
        floor_dyadic(&(klo + mlo), bits),
        ceil_dyadic(&(khi + mhi), bits),
    )
}

fn pow2(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// `ln m = 2 atanh((m-1)/(m+1))` for `m` in `[1, 2]`, summed with outward
/// dyadic rounding and a geometric tail bound.
fn ln_series(m: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let y = (m - BigRational::one()) / (m + BigRational::one());
    if y.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let y2 = &y * &y;
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut lo_sum = BigRational::zero();
    let mut hi_sum = BigRational::zero();
    let mut pow_lo = floor_dyadic(&y, bits + 8);
    let mut pow_hi = ceil_dyadic(&y, bits + 8);
    let mut j: u64 = 0;
    loop {
        let denom = BigRational::from_integer((2 * j + 1).into());
        lo_sum += floor_dyadic(&(&pow_lo / &denom), bits + 8);
        hi_sum += ceil_dyadic(&(&pow_hi / &denom), bits + 8);
        // remaining terms sum to at most y^(2j+3) / ((2j+3)(1 - y^2))
        pow_lo = floor_dyadic(&(&pow_lo * &y2), bits + 8);
        pow_hi = ceil_dyadic(&(&pow_hi * &y2), bits + 8);
        j += 1;
        let tail =
            &pow_hi / (BigRational::from_integer((2 * j + 1).into()) * (BigRational::one() - &y2));
        if tail < eps {
            let two = BigRational::from_integer(2.into());
            return (&two * lo_sum, &two * (hi_sum + tail));
        }
    }
}

fn decimal(q: &BigRational, digits: usize, round_up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q * BigRational::from_integer(scale.clone());
    let int = if round_up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    let neg = int.is_negative();
    let (whole, frac) = int.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!(
            "{sign}{whole}.{:0>width$}",
            frac.to_string(),
            width = digits
        )
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self, self.to_decimal_string(8))
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: String,
    hi: String,
}

impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = IntervalRepr::deserialize(d)?;
        let lo: BigRational = repr.lo.parse().map_err(D::Error::custom)?;
        let hi: BigRational = repr.hi.parse().map_err(D::Error::custom)?;
        RationalInterval::new(lo, hi).map_err(D::Error::custom)
    }
}
