//! Factorization of monic integer polynomials into irreducibles.
//!
//! Squarefree decomposition first; each squarefree part is factored modulo
//! a small prime, the factors are Hensel-lifted past twice the Mignotte
//! bound, and true factors are recovered by subset recombination.

mod hensel;
mod modp;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::IntPoly;
use modp::Fp;

/// Caps guarding the running time of [`factor_int_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorOptions {
    pub max_degree: usize,
    pub max_height_bits: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            max_degree: 64,
            max_height_bits: 256,
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::one(), |acc, (f, k)| &acc * &f.pow(*k as u32))
    }

    /// True for a single factor of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_int(p: &IntPoly) -> Result<Factorization> {
    factor_int_with(p, &FactorOptions::default())
}

pub fn factor_int_with(p: &IntPoly, opts: &FactorOptions) -> Result<Factorization> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.deg() > opts.max_degree {
        return Err(Error::CapExceeded {
            what: "degree",
            value: p.deg().to_string(),
            cap: opts.max_degree.to_string(),
        });
    }
    if p.height().bits() > opts.max_height_bits {
        return Err(Error::CapExceeded {
            what: "coefficient bits",
            value: p.height().bits().to_string(),
            cap: opts.max_height_bits.to_string(),
        });
    }
    let mut factors = Vec::new();
    let (k, rest) = p.split_x_power();
    if k > 0 {
        factors.push((IntPoly::x(), k));
    }
    if rest.deg() > 0 {
        for (part, mult) in rest.squarefree_decomposition() {
            for f in factor_squarefree(&part) {
                factors.push((f, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization { factors })
}

const PRIME_TRIALS: usize = 5;

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors of a monic squarefree polynomial.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut best: Option<(Fp, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fp = Fp::new(p);
        let fbar = fp.reduce(f);
        if fbar.len() != n + 1 || !fp.is_squarefree(&fbar) {
            continue;
        }
        let local = fp.factor_squarefree(&fbar);
        if local.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| local.len() < b.len()) {
            best = Some((fp, local));
        }
        tried += 1;
        if tried == PRIME_TRIALS {
            break;
        }
    }
    let (fp, local) = best.expect("a squarefree polynomial has good primes");
    let bound = mignotte_bound(f);
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel::lift(&fp, f, &local, k);
    recombine(f.clone(), lifted, &modulus)
}

/// `2^n ||f||_2`, bounding every coefficient of every factor of `f`.
fn mignotte_bound(f: &IntPoly) -> BigInt {
    let sum_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = sum_sq.sqrt() + BigInt::one();
    norm << f.deg()
}

fn recombine(mut f: IntPoly, mut local: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= local.len() {
        let mut hit = None;
        for subset in Subsets::new(local.len(), size) {
            let candidate = subset.iter().fold(IntPoly::one(), |acc, &i| {
                hensel::mul_mod(&acc, &local[i], modulus)
            });
            let candidate = hensel::symmetric(&candidate, modulus);
            let c0 = candidate.constant_term();
            if !c0.is_zero() && !(f.constant_term() % &c0).is_zero() {
                continue;
            }
            if let Ok(q) = f.div_exact(&candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                f = q;
                for &i in subset.iter().rev() {
                    local.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.deg() > 0 {
        found.push(f);
    }
    found
}

/// `size`-element subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, size: usize) -> Self {
        Subsets {
            n,
            current: (size <= n).then(|| (0..size).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// True when `f` has no root modulo `p` (a necessary condition for
/// irreducibility of degree 2 and 3, a spot check otherwise).
pub fn has_no_root_mod(f: &IntPoly, p: u64) -> bool {
    let m = BigInt::from(p);
    (0..p).all(|x| {
        let v = f.eval(&BigInt::from(x));
        !(v % &m).is_zero()
    })
}
