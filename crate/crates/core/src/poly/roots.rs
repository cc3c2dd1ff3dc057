//! Root enclosures: the dominant real root by Sturm bisection and certified
//! enclosures of all root moduli.
//!
//! Moduli are seeded by a floating Aberth iteration and certified with the
//! inclusion theorem for simple roots: if `z_1, ..., z_m` are distinct and
//! `W_i = p(z_i) / prod_{j != i} (z_i - z_j)` for monic `p`, every root lies
//! in the union of the disks `|z - z_i| <= m |W_i|`, and a connected union of
//! `k` disks holds exactly `k` roots. All radii are evaluated exactly.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::disk::{unit_disk_count, DiskCounts};
use super::interval::{ceil_dyadic, sqrt_bounds, RationalInterval};
use super::sturm::SturmSequence;
use crate::error::{Error, Result};
use crate::scalar::RootFloat;
use crate::IntPoly;

/// Simultaneous approximation of all complex roots of a polynomial with
/// floating coefficients (constant term first, nonzero leading term).
///
/// Starting points follow the upper Newton polygon of `log |a_k|`, so roots
/// of very different sizes start on circles of matching radii.
pub fn aberth_roots<F: RootFloat>(coeffs: &[F]) -> Vec<Complex<F>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let a: Vec<F> = coeffs.iter().map(|&c| c / lead).collect();
    let deriv: Vec<F> = (1..=n).map(|k| a[k] * F::from_usize(k).unwrap()).collect();
    let mut z = initial_points(&a);
    let eps = F::epsilon() * F::from_f64(4.0).unwrap();
    for _ in 0..2000 {
        let mut converged = true;
        for i in 0..n {
            let zi = z[i];
            let pv = horner(&a, zi);
            if pv == Complex::new(F::zero(), F::zero()) {
                continue;
            }
            let dv = horner(&deriv, zi);
            let ratio = pv / dv;
            let mut s = Complex::new(F::zero(), F::zero());
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s = s + (zi - zj).inv();
                }
            }
            let w = ratio / (Complex::new(F::one(), F::zero()) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] = zi - w;
            if w.norm() > eps * zi.norm().max(F::min_positive_value()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

fn horner<F: RootFloat>(a: &[F], z: Complex<F>) -> Complex<F> {
    a.iter()
        .rev()
        .fold(Complex::new(F::zero(), F::zero()), |acc, &c| {
            acc * z + Complex::new(c, F::zero())
        })
}

fn initial_points<F: RootFloat>(a: &[F]) -> Vec<Complex<F>> {
    let n = a.len() - 1;
    let logs: Vec<Option<f64>> = a
        .iter()
        .map(|c| {
            let v = c.to_f64().unwrap().abs();
            (v > 0.0).then(|| v.ln())
        })
        .collect();
    // upper convex hull of (k, log|a_k|)
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..=n {
        let Some(yk) = logs[k] else { continue };
        while hull.len() >= 2 {
            let i = hull[hull.len() - 2];
            let j = hull[hull.len() - 1];
            let (yi, yj) = (logs[i].unwrap(), logs[j].unwrap());
            let cross = (j - i) as f64 * (yk - yi) - (k - i) as f64 * (yj - yi);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut points = Vec::with_capacity(n);
    if hull[0] > 0 {
        // zero roots
        for _ in 0..hull[0] {
            points.push(Complex::new(F::zero(), F::zero()));
        }
    }
    let tau = std::f64::consts::TAU;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let count = j - i;
        let radius = ((logs[i].unwrap() - logs[j].unwrap()) / count as f64).exp();
        for k in 0..count {
            let angle = tau * k as f64 / count as f64 + 0.4 + 0.7 * points.len() as f64;
            points.push(Complex::new(
                F::from_f64(radius * angle.cos()).unwrap(),
                F::from_f64(radius * angle.sin()).unwrap(),
            ));
        }
    }
    points
}

/// Enclosure of the largest real root of `p`, of width at most `tol`.
///
/// Bisection with exact Sturm counts on `[1, cauchy_bound]`. The returned
/// interval holds exactly one distinct root of `p`, and a midpoint that is
/// itself a root ends the search with a point interval. Calls with smaller
/// tolerances return nested intervals.
pub fn dominant_real_root(p: &IntPoly, tol: &BigRational) -> Result<RationalInterval> {
    if !tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if p.deg() < 1 {
        return Err(Error::NoRootAboveOne);
    }
    let sturm = SturmSequence::new(p);
    let mut lo = BigRational::one();
    if sturm.count_above(&lo) == 0 {
        return Err(Error::NoRootAboveOne);
    }
    let mut hi = BigRational::from_integer(p.cauchy_bound());
    let base = sturm.base();
    loop {
        if &hi - &lo <= *tol && sturm.count_above(&lo) == 1 {
            return RationalInterval::new(lo, hi);
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let above = sturm.count_above(&mid);
        if above == 0 && base.sign_at(&mid) == 0 {
            return Ok(RationalInterval::point(mid));
        }
        if above >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Tolerance and precision budget for [`root_moduli_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOptions {
    pub tol: BigRational,
    pub max_precision_bits: u32,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: crate::default_tol(),
            max_precision_bits: 4096,
        }
    }
}

impl RootOptions {
    pub fn with_tol(tol: BigRational) -> Self {
        RootOptions {
            tol,
            ..Default::default()
        }
    }
}

/// Certified enclosures of all root moduli (with multiplicity, sorted
/// non-increasing by midpoint) together with the exact unit-disk counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootProfile {
    pub moduli: Vec<RationalInterval>,
    pub disk_counts: DiskCounts,
}

impl RootProfile {
    /// Counts read off the enclosures alone: `(hi < 1, straddling 1, lo > 1)`.
    pub fn enclosure_counts(&self) -> DiskCounts {
        let one = BigRational::one();
        let inside = self.moduli.iter().filter(|m| m.hi() < &one).count();
        let outside = self.moduli.iter().filter(|m| m.lo() > &one).count();
        DiskCounts::new(inside, self.moduli.len() - inside - outside, outside)
    }

    /// Product of the top `k` enclosures.
    pub fn top_product(&self, k: usize) -> RationalInterval {
        self.moduli
            .iter()
            .take(k)
            .fold(RationalInterval::one(), |acc, m| acc.mul(m))
    }
}

pub fn root_moduli(p: &IntPoly, tol: &BigRational) -> Result<RootProfile> {
    root_moduli_with(p, &RootOptions::with_tol(tol.clone()))
}

pub fn root_moduli_with(p: &IntPoly, opts: &RootOptions) -> Result<RootProfile> {
    if !opts.tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let disk_counts = unit_disk_count(p)?;
    let mut moduli = Vec::with_capacity(p.deg());
    if p.deg() > 0 {
        for (part, mult) in p.squarefree_decomposition() {
            let counts = unit_disk_count(&part)?;
            let enclosures = certify_squarefree(&part, counts, opts)?;
            for m in enclosures {
                for _ in 0..mult {
                    moduli.push(m.clone());
                }
            }
        }
    }
    moduli.sort_by(|a, b| b.cmp_midpoint(a));
    let profile = RootProfile {
        moduli,
        disk_counts,
    };
    debug_assert_eq!(profile.enclosure_counts(), disk_counts);
    Ok(profile)
}

type Gauss = Complex<BigInt>;

/// Root approximations `A_i / 2^e` with Gaussian-integer numerators.
struct Approximations {
    numerators: Vec<Gauss>,
    exp: u32,
}

impl Approximations {
    fn from_floats(z: &[Complex<f64>], exp: u32) -> Option<Self> {
        let scale = 2f64.powi(exp as i32);
        let numerators = z
            .iter()
            .map(|c| {
                let re = BigInt::from_f64((c.re * scale).round())?;
                let im = BigInt::from_f64((c.im * scale).round())?;
                Some(Gauss::new(re, im))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Approximations { numerators, exp })
    }
}

/// `sum c_k A^k D^(m-k)` for `D = 2^e`, i.e. `D^m p(A / D)`.
fn eval_scaled(coeffs: &[BigInt], a: &Gauss, exp: u32) -> Gauss {
    let m = coeffs.len() - 1;
    let mut acc = Gauss::new(coeffs[m].clone(), BigInt::zero());
    for (k, c) in coeffs.iter().enumerate().take(m).rev() {
        let dpow = BigInt::one() << (exp as usize * (m - k));
        acc = &acc * a + Gauss::new(c * dpow, BigInt::zero());
    }
    acc
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // nearest integer to num / den for den > 0
    let twice: BigInt = num * 2 + den;
    twice.div_floor(&(den * 2))
}

/// One Newton step per approximation, rounded to `exp` fractional bits.
fn newton_step(p: &IntPoly, approx: &Approximations, exp: u32) -> Option<Approximations> {
    let coeffs = p.coeffs();
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let e = approx.exp;
    let numerators = approx
        .numerators
        .iter()
        .map(|a| {
            // z' = z - p(z)/p'(z) = (A P' - P) / (2^e P') with P = D^m p, P' = D^(m-1) p'
            let pv = eval_scaled(coeffs, a, e);
            let dv = eval_scaled(&deriv, a, e);
            let norm = dv.norm_sqr();
            if norm.is_zero() {
                return None;
            }
            let x = (a * &dv - pv) * dv.conj();
            let den = norm << e as usize;
            let re = round_div(&(x.re << exp as usize), &den);
            let im = round_div(&(x.im << exp as usize), &den);
            Some(Gauss::new(re, im))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Approximations { numerators, exp })
}

/// Enclosures of the moduli of all roots of a monic squarefree `p`, one per
/// root, consistent with the exact `counts`.
fn certify_squarefree(
    p: &IntPoly,
    counts: DiskCounts,
    opts: &RootOptions,
) -> Result<Vec<RationalInterval>> {
    let m = p.deg();
    if m == 1 {
        let root = BigRational::from_integer(-p.coeff(0));
        return Ok(vec![RationalInterval::point(root.abs())]);
    }
    let floats: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let failed = || Error::CertificationFailed {
        tol: opts.tol.to_string(),
        max_bits: opts.max_precision_bits,
    };
    let seeds = aberth_roots(&floats);
    let mut bits = 64u32.min(opts.max_precision_bits.max(1));
    // roots far from the origin still need `bits` significant digits
    let magnitude = seeds
        .iter()
        .map(|z| z.norm().log2().max(0.0).ceil() as u32)
        .max()
        .unwrap_or(0);
    let mut approx = Approximations::from_floats(&seeds, bits + magnitude).ok_or_else(failed)?;
    loop {
        if let Some(enclosures) = try_certify(p, &approx, &opts.tol) {
            let one = BigRational::one();
            let outside = enclosures.iter().filter(|e| e.lo() > &one).count();
            let inside = enclosures.iter().filter(|e| e.hi() < &one).count();
            if outside == counts.outside && inside == counts.inside {
                return Ok(enclosures);
            }
        }
        if bits >= opts.max_precision_bits {
            return Err(failed());
        }
        bits = (bits * 2).min(opts.max_precision_bits);
        for _ in 0..2 {
            approx = newton_step(p, &approx, bits + magnitude).ok_or_else(failed)?;
        }
    }
}

fn try_certify(
    p: &IntPoly,
    approx: &Approximations,
    tol: &BigRational,
) -> Option<Vec<RationalInterval>> {
    let m = p.deg();
    let a = &approx.numerators;
    let e = approx.exp;
    let bits = e + 16;
    let scale2 = BigRational::from_integer(BigInt::one() << (2 * e as usize));
    let degree = BigRational::from_integer(BigInt::from(m));
    // radius upper bounds r_i >= m |W_i|
    let mut radii = Vec::with_capacity(m);
    for i in 0..m {
        let pv = eval_scaled(p.coeffs(), &a[i], e);
        let mut prod = Gauss::new(BigInt::one(), BigInt::zero());
        for j in 0..m {
            if j != i {
                prod *= &a[i] - &a[j];
            }
        }
        let denom = prod.norm_sqr();
        if denom.is_zero() {
            return None;
        }
        // |W_i|^2 = |P|^2 / (2^(2e) |prod|^2)
        let w2 = BigRational::new(pv.norm_sqr(), denom) / &scale2;
        let (_, w_hi) = sqrt_bounds(&w2, bits);
        radii.push(ceil_dyadic(&(&degree * w_hi), bits));
    }
    // connected components of overlapping disks
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..m {
        for j in i + 1..m {
            let d2 = BigRational::from_integer((&a[i] - &a[j]).norm_sqr()) / &scale2;
            let reach = &radii[i] + &radii[j];
            if d2 <= &reach * &reach {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let own: Vec<RationalInterval> = (0..m)
        .map(|i| {
            let norm2 = BigRational::from_integer(a[i].norm_sqr()) / &scale2;
            let (lo, hi) = sqrt_bounds(&norm2, bits);
            let lo = (lo - &radii[i]).max(BigRational::zero());
            RationalInterval::new_unchecked(lo, hi + &radii[i])
        })
        .collect();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let root = find(&mut parent, i);
        let hull = (0..m)
            .filter(|&j| find(&mut parent, j) == root)
            .fold(own[i].clone(), |acc, j| acc.hull(&own[j]));
        if hull.width() > *tol {
            return None;
        }
        out.push(hull);
    }
    Some(out)
}
