mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::{poly, q, random_monic, rng};
use dyndeg::poly::{euler_phi, SturmSequence};
use dyndeg::{
    cyclotomic, dominant_real_root, factor_int, peel_cyclotomic, root_moduli, sturm_count,
    trace_transform, unit_disk_count, DiskCounts, Error, IntPoly,
};

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[test]
fn cyclotomic_matches_defining_division() {
    for n in 1..=60u64 {
        let mut rest = IntPoly::monomial(n as usize, BigInt::one()) - IntPoly::one();
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            rest = rest.div_exact(&cyclotomic(d)).unwrap();
        }
        assert_eq!(cyclotomic(n), rest, "n = {n}");
        assert_eq!(cyclotomic(n).deg() as u64, euler_phi(n));
    }
}

#[test]
fn cyclotomic_known_values() {
    assert_eq!(cyclotomic(1), poly(&[-1, 1]));
    assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
    // first cyclotomic polynomial with a coefficient of absolute value 2
    let c105 = cyclotomic(105);
    assert!(c105.coeffs().iter().any(|c| c == &BigInt::from(-2)));
}

#[test]
fn peel_examples() {
    let lehmer = poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let split = peel_cyclotomic(&(&lehmer * &cyclotomic(6).pow(2))).unwrap();
    assert_eq!(split.factors, vec![(6, 2)]);
    assert_eq!(split.remainder, lehmer);
    let all = peel_cyclotomic(&(&cyclotomic(1) * &cyclotomic(30))).unwrap();
    assert!(all.is_cyclotomic_product());
    assert_eq!(
        peel_cyclotomic(&poly(&[0, 1])),
        Err(Error::ZeroConstantTerm)
    );
}

#[test]
fn factor_known_products() {
    let a = poly(&[-2, 0, 0, 1]); // x^3 - 2
    let b = poly(&[1, -10, 0, 1]);
    let c = poly(&[1, 0, -10, 0, 1]);
    let f = &(&a * &b.pow(2)) * &c;
    let fac = factor_int(&f).unwrap();
    assert_eq!(fac.product(), f);
    assert_eq!(fac.factors.len(), 3);
    assert!(fac.factors.iter().any(|(g, k)| g == &b && *k == 2));
    // Swinnerton-Dyer polynomial: irreducible but splits modulo every prime
    let sd = poly(&[1, 0, -10, 0, 1]);
    assert!(factor_int(&sd).unwrap().is_irreducible());
    assert_eq!(factor_int(&poly(&[0, 0, 1, 1])).unwrap().factors.len(), 2);
}

#[test]
fn dominant_root_examples() {
    let tol = q(1, 1_000_000);
    let a3 = dominant_real_root(&poly(&[-1, -1, 0, 1]), &tol).unwrap();
    assert!(a3.contains_f64(1.324_717_957_244_746));
    let two = dominant_real_root(&poly(&[-2, 1]), &tol).unwrap();
    assert!(two.is_point());
    assert_eq!(
        dominant_real_root(&poly(&[1, 0, 1]), &tol),
        Err(Error::NoRootAboveOne)
    );
}

#[test]
fn sturm_examples() {
    let p = poly(&[-2, 0, 1]);
    assert_eq!(sturm_count(&p, &q(-2, 1), &q(2, 1)), 2);
    assert_eq!(sturm_count(&p, &q(0, 1), &q(2, 1)), 1);
    assert_eq!(SturmSequence::new(&poly(&[1, 0, 1])).count_all(), 0);
}

/// Exhaustive search for a monic integer quadratic factor: its constant
/// term divides that of `f` and its roots are bounded by the Cauchy bound.
fn has_quadratic_factor(f: &IntPoly) -> bool {
    let bound: BigInt = f.coeffs().iter().map(|c| c.abs()).max().unwrap() + 1;
    let c0 = f.constant_term().abs();
    let mut c = BigInt::one();
    while c <= c0 {
        if (&c0 % &c).is_zero() {
            for sign in [1, -1] {
                let cc: BigInt = &c * BigInt::from(sign);
                let mut b: BigInt = -(&bound * BigInt::from(2));
                while b <= &bound * BigInt::from(2) {
                    let g = IntPoly::new(vec![cc.clone(), b.clone(), BigInt::one()]);
                    if f.div_exact(&g).is_ok() {
                        return true;
                    }
                    b += 1;
                }
            }
        }
        c += 1;
    }
    false
}

/// Sign change over the enclosure, or an exact root at a point enclosure.
fn brackets_root(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> bool {
    let at = |x: &BigRational| p.to_rational().eval(x);
    let (a, b) = (at(lo), at(hi));
    (&a * &b) <= BigRational::zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn disk_counts_agree_with_certified_moduli(seed in any::<u64>(), deg in 1usize..=10) {
        let mut r = rng(seed);
        let p = random_monic(&mut r, deg, 5);
        let counts = unit_disk_count(&p).unwrap();
        prop_assert_eq!(counts.total(), deg);
        let profile = root_moduli(&p, &q(1, 1_000_000)).unwrap();
        prop_assert_eq!(profile.enclosure_counts(), counts);
        prop_assert_eq!(profile.moduli.len(), deg);
    }

    #[test]
    fn peel_reconstructs(seed in any::<u64>(), deg in 1usize..=8, picks in proptest::collection::vec(1u64..=30, 0..3)) {
        let mut r = rng(seed);
        let mut p = random_monic(&mut r, deg, 4);
        for n in &picks {
            p = &p * &cyclotomic(*n);
        }
        let split = peel_cyclotomic(&p).unwrap();
        prop_assert_eq!(split.reconstruct(), p);
        // every listed cyclotomic factor divides the input
        for (n, _) in &split.factors {
            prop_assert!(split.reconstruct().div_exact(&cyclotomic(*n)).is_ok());
        }
        // the remainder keeps no cyclotomic factor of degree small enough to be present
        for n in 1..=60u64 {
            if euler_phi(n) as usize <= split.remainder.deg() {
                prop_assert!(split.remainder.div_exact(&cyclotomic(n)).is_err());
            }
        }
    }

    #[test]
    fn factorization_is_exact_and_irreducible(seed in any::<u64>(), parts in 1usize..=3) {
        let mut r = rng(seed);
        let mut p = IntPoly::one();
        for _ in 0..parts {
            let d = 1 + (rand::Rng::gen_range(&mut r, 0..4usize));
            p = &p * &random_monic(&mut r, d, 3);
        }
        let fac = factor_int(&p).unwrap();
        prop_assert_eq!(fac.product(), p);
        for (f, _) in &fac.factors {
            prop_assert!(f.is_monic());
            if f.deg() >= 2 {
                // no rational root: the only candidates divide the constant term
                let c = f.constant_term().abs();
                let mut d = BigInt::one();
                while d <= c {
                    if (&c % &d).is_zero() {
                        prop_assert!(!f.eval(&d).is_zero() && !f.eval(&-d.clone()).is_zero());
                    }
                    d += 1;
                }
                if f.deg() == 4 || f.deg() == 5 {
                    prop_assert!(!has_quadratic_factor(f));
                }
            }
        }
    }

    #[test]
    fn dominant_root_brackets_a_sign_change(seed in any::<u64>(), deg in 1usize..=9) {
        let mut r = rng(seed);
        let p = random_monic(&mut r, deg, 5);
        match dominant_real_root(&p, &q(1, 1_000_000)) {
            Ok(iv) => {
                prop_assert!(iv.width() <= q(1, 1_000_000));
                prop_assert!(brackets_root(&p, iv.lo(), iv.hi()));
                prop_assert!(iv.hi() > &BigRational::one());
            }
            Err(Error::NoRootAboveOne) => {
                prop_assert_eq!(SturmSequence::new(&p).count_above(&BigRational::one()), 0);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

fn random_palindromic(r: &mut rand_chacha::ChaCha8Rng, half: usize) -> IntPoly {
    let mut c: Vec<i64> = (0..=half)
        .map(|_| rand::Rng::gen_range(r, -4..=4))
        .collect();
    c[0] = 1;
    let mut full = c.clone();
    full.extend(c.iter().rev().skip(1));
    poly(&full)
}

#[test]
fn trace_transform_matches_disk_counts_on_100_palindromes() {
    let mut r = rng(7);
    let two = q(2, 1);
    for _ in 0..100 {
        let half = rand::Rng::gen_range(&mut r, 1..=6);
        let p = random_palindromic(&mut r, half);
        let t = trace_transform(&p).unwrap();
        // the defining identity z^d q(z + 1/z) = p(z)
        let z2p1 = poly(&[1, 0, 1]);
        let mut rebuilt = IntPoly::zero();
        for (k, c) in t.coeffs().iter().enumerate() {
            rebuilt = &rebuilt + &z2p1.pow(k as u32).shift(half - k).scale(c);
        }
        assert_eq!(rebuilt, p);

        let counts = unit_disk_count(&p).unwrap();
        let s = SturmSequence::new(&t);
        // on-circle roots of p away from +-1 pair with roots of q in (-2, 2);
        // roots at +-1 map to t = +-2, outside roots to |t| > 2
        let at_plus = p.eval(&BigInt::one()).is_zero();
        let at_minus = p.eval(&-BigInt::one()).is_zero();
        if !at_plus
            && !at_minus
            && t.eval(&BigInt::from(2)) != BigInt::zero()
            && t.eval(&BigInt::from(-2)) != BigInt::zero()
        {
            let squarefree = t.squarefree_part();
            let multiplicity_free = squarefree == t;
            if multiplicity_free {
                assert_eq!(counts.on, 2 * s.count(&-two.clone(), &two));
                let outside_real = s.count_above(&two) + s.count_below(&-two.clone());
                let complex_pairs = (t.deg() - s.count_all()) / 2;
                assert_eq!(counts.outside, outside_real + 2 * complex_pairs);
                assert_eq!(counts.inside, counts.outside);
            }
        }
        assert_eq!(counts.total(), p.deg());
    }
}

#[test]
fn disk_count_examples() {
    assert_eq!(
        unit_disk_count(&poly(&[1, -3, 1])),
        Ok(DiskCounts::new(1, 0, 1))
    );
    assert_eq!(
        unit_disk_count(&poly(&[1, 0, -1, 0, 1])),
        Ok(DiskCounts::new(0, 4, 0))
    );
    assert_eq!(
        unit_disk_count(&poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])),
        Ok(DiskCounts::new(1, 8, 1))
    );
}
