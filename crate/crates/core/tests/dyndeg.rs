mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::{poly, q, random_block_triangular, random_unimodular, rng};
use dyndeg::dyndeg::lehmer_polynomial;
use dyndeg::poly::aberth_roots;
use dyndeg::{
    abelian_profile, classify, companion, hk_profile, lehmer_floor_check, monomial_eval,
    monomial_map, monomial_profile, primitivity_by_degree_drop, product_formula_check, Error,
    IntMatrix, PrimitivityCertificate, RationalInterval,
};

fn tol() -> BigRational {
    q(1, 1_000_000)
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).unwrap()
}

fn near(iv: &RationalInterval, x: f64, slack: f64) -> bool {
    iv.lo().to_f64().unwrap() - slack <= x && x <= iv.hi().to_f64().unwrap() + slack
}

#[test]
fn abelian_examples() {
    let golden = companion(&poly(&[1, -3, 1])).unwrap();
    let p = abelian_profile(&golden, &tol()).unwrap();
    assert!(p.d(1).lo() >= &q(6854, 1000) && p.d(1).hi() <= &q(6855, 1000));
    assert_eq!(p.d(2), &RationalInterval::one());
    assert!(near(&p.entropy, 1.924_847_300_238_414, 1e-9));

    let id = abelian_profile(&IntMatrix::identity(4), &tol()).unwrap();
    assert!(id.degrees.iter().all(|d| d == &RationalInterval::one()));
    assert!(id.entropy.contains(&BigRational::zero()));

    let cubic = abelian_profile(&companion(&poly(&[-1, -1, 0, 1])).unwrap(), &tol()).unwrap();
    assert!(near(
        &cubic.entropy,
        2.0 * 1.324_717_957_244_746_f64.ln(),
        1e-9
    ));

    assert!(matches!(
        abelian_profile(&m(&[&[2, 0], &[0, 1]]), &tol()),
        Err(Error::NotUnimodular(_))
    ));
}

#[test]
fn monomial_examples() {
    let golden = monomial_profile(&companion(&poly(&[1, -3, 1])).unwrap(), &tol()).unwrap();
    assert!(near(golden.d(1), 2.618_033_988_749_895, 1e-9));
    let cubic = monomial_profile(&companion(&poly(&[-1, -1, 0, 1])).unwrap(), &tol()).unwrap();
    assert!(near(cubic.d(1), 1.324_717_957_244_746, 1e-9));
    // |beta| = alpha^(-1/2) for the conjugate pair
    assert!(near(cubic.d(2), 1.324_717_957_244_746_f64.sqrt(), 1e-9));
    assert!(cubic.d(3).contains(&BigRational::one()));
    let cert = primitivity_by_degree_drop(&cubic).unwrap();
    assert!(cert.degree_drop_holds());
    assert!(primitivity_by_degree_drop(
        &monomial_profile(&IntMatrix::identity(3), &tol()).unwrap()
    )
    .is_none());
}

#[test]
fn monomial_eval_examples() {
    let swap = m(&[&[0, 1], &[1, 0]]);
    assert_eq!(
        monomial_eval(&swap, &[q(2, 1), q(3, 1)]).unwrap(),
        vec![q(3, 1), q(2, 1)]
    );
    let double = m(&[&[2, 0], &[0, 2]]);
    assert_eq!(
        monomial_eval(&double, &[q(2, 1), q(3, 1)]).unwrap(),
        vec![q(4, 1), q(9, 1)]
    );
    let shear = m(&[&[1, 1], &[0, 1]]);
    // pullback: coordinate i uses column i
    assert_eq!(
        monomial_eval(&shear, &[q(2, 1), q(3, 1)]).unwrap(),
        vec![q(2, 1), q(6, 1)]
    );
    assert_eq!(
        monomial_map(&shear, &[q(2, 1), q(3, 1)]).unwrap(),
        vec![q(6, 1), q(3, 1)]
    );
    let inv = m(&[&[1, -1], &[0, 1]]);
    assert_eq!(
        monomial_eval(&inv, &[q(2, 1), q(3, 1)]).unwrap(),
        vec![q(2, 1), q(3, 2)]
    );
    assert_eq!(
        monomial_eval(&swap, &[q(0, 1), q(3, 1)]),
        Err(Error::ZeroCoordinate(0))
    );
}

#[test]
fn hk_examples() {
    let lehmer = classify(&lehmer_polynomial()).unwrap().dominant.unwrap();
    let p = hk_profile(&lehmer, 2).unwrap();
    assert!(near(&p.entropy, 2.0 * 1.176_280_818_259_917_f64.ln(), 1e-6));
    let one = hk_profile(&RationalInterval::one(), 4).unwrap();
    assert!(one.degrees.iter().all(|d| d == &RationalInterval::one()));
    let p3 = hk_profile(&RationalInterval::point(q(3, 2)), 3).unwrap();
    assert_eq!(p3.d(2), p3.d(4));
    assert_eq!(p3.d(1), p3.d(5));
    assert_eq!(p3.d(3), &RationalInterval::point(q(27, 8)));
}

#[test]
fn lehmer_floor_examples() {
    let lehmer = classify(&lehmer_polynomial()).unwrap().dominant.unwrap();
    assert!(lehmer_floor_check(&lehmer));
    assert!(lehmer_floor_check(&RationalInterval::one()));
    assert!(!lehmer_floor_check(
        &RationalInterval::new(q(105, 100), q(106, 100)).unwrap()
    ));
    // every tighter Lehmer enclosure passes as well
    for k in [4, 8, 12, 20] {
        let tight = dyndeg::dominant_real_root(
            &lehmer_polynomial(),
            &BigRational::new(BigInt::one(), BigInt::from(10).pow(k)),
        )
        .unwrap();
        assert!(lehmer_floor_check(&tight));
    }
}

#[test]
fn product_formula_examples() {
    let golden = [[0i64, 1], [-1, 3]];
    let a = m(&[&[0, 1, 0], &[-1, 3, 0], &[0, 0, 1]]);
    let r = product_formula_check(&a, 2, &tol()).unwrap();
    assert!(r.all_pass());
    assert!(near(&r.rows[1].total, 2.618_033_988_749_895, 1e-9));
    assert_eq!(r.rows[1].best_j, 1);

    let id = product_formula_check(&IntMatrix::identity(4), 1, &tol()).unwrap();
    assert!(id.all_pass());

    let g = &golden;
    let double = m(&[
        &[g[0][0], g[0][1], 0, 0],
        &[g[1][0], g[1][1], 0, 0],
        &[0, 0, g[0][0], g[0][1]],
        &[0, 0, g[1][0], g[1][1]],
    ]);
    let r = product_formula_check(&double, 2, &tol()).unwrap();
    assert!(r.all_pass());
    assert!(near(&r.rows[2].total, 6.854_101_966_249_685, 1e-9));
    assert_eq!(r.rows[2].best_j, 1);

    let lower = m(&[&[1, 0], &[1, 1]]);
    assert_eq!(
        product_formula_check(&lower, 1, &tol()).unwrap_err(),
        Error::NotBlockTriangular(1)
    );
}

/// Top-`p` products of float root moduli, sorted non-increasingly.
fn float_profile(a: &IntMatrix) -> Vec<f64> {
    // float roots are only accurate on simple roots
    let mut moduli: Vec<f64> = Vec::new();
    for (part, mult) in a.charpoly().squarefree_decomposition() {
        let coeffs: Vec<f64> = part.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
        for z in aberth_roots(&coeffs) {
            moduli.extend(std::iter::repeat_n(z.norm(), mult));
        }
    }
    moduli.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let mut out = vec![1.0];
    for mm in &moduli {
        out.push(out.last().unwrap() * mm);
    }
    out
}

fn small_unimodular(r: &mut rand_chacha::ChaCha8Rng, dim: usize) -> IntMatrix {
    loop {
        let a = random_unimodular(r, dim, 3, 1);
        if (0..dim).all(|i| (0..dim).all(|j| a.get(i, j).abs() <= BigInt::from(3))) {
            return a;
        }
    }
}

fn random_point(r: &mut rand_chacha::ChaCha8Rng, dim: usize) -> Vec<BigRational> {
    (0..dim)
        .map(|_| {
            let mut num = r.gen_range(-9i64..=9);
            while num == 0 {
                num = r.gen_range(-9i64..=9);
            }
            q(num, r.gen_range(1..=9))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monomial_profiles_are_log_concave(seed in any::<u64>(), dim in 2usize..=8) {
        let mut r = rng(seed);
        let a = random_unimodular(&mut r, dim, 8, 2);
        let p = monomial_profile(&a, &tol()).unwrap();
        prop_assert!(p.d(0).contains(&BigRational::one()));
        prop_assert!(p.d(dim).contains(&BigRational::one()));
        for d in &p.degrees {
            prop_assert!(d.lo() > &BigRational::zero());
        }
        for k in 1..dim {
            let sq = p.d(k).mul(p.d(k));
            let nb = p.d(k - 1).mul(p.d(k + 1));
            prop_assert!(sq.hi() >= nb.lo());
        }
        let top = p.degrees.iter().map(|d| d.to_f64()).fold(0.0, f64::max);
        prop_assert!(near(&p.entropy, top.ln(), 1e-9));
    }

    #[test]
    fn abelian_is_monomial_squared(seed in any::<u64>(), dim in 1usize..=6) {
        let mut r = rng(seed);
        let a = random_unimodular(&mut r, dim, 6, 2);
        let ab = abelian_profile(&a, &tol()).unwrap();
        let mo = monomial_profile(&a, &tol()).unwrap();
        for k in 0..=dim {
            prop_assert!(ab.d(k).intersects(&mo.d(k).mul(mo.d(k))));
        }
    }

    #[test]
    fn composition_law(seed in any::<u64>(), dim in 1usize..=5) {
        let mut r = rng(seed);
        let a = small_unimodular(&mut r, dim);
        let b = small_unimodular(&mut r, dim);
        let t = random_point(&mut r, dim);
        let ab = &a * &b;
        prop_assert_eq!(monomial_map(&ab, &t).unwrap(), monomial_map(&a, &monomial_map(&b, &t).unwrap()).unwrap());
        prop_assert_eq!(monomial_eval(&ab, &t).unwrap(), monomial_eval(&b, &monomial_eval(&a, &t).unwrap()).unwrap());
    }

    #[test]
    fn product_formula_on_block_triangular(seed in any::<u64>(), dim in 2usize..=6) {
        let mut r = rng(seed);
        let (a, b) = random_block_triangular(&mut r, dim);
        let report = product_formula_check(&a, b, &tol()).unwrap();
        prop_assert!(report.all_pass());
        let oracle = float_profile(&a);
        for row in &report.rows {
            prop_assert!(near(&row.total, oracle[row.p], 1e-6 * oracle[row.p].max(1.0)));
        }
    }

    #[test]
    fn degree_drop_certificates_recheck_from_json(seed in any::<u64>(), dim in 2usize..=6) {
        let mut r = rng(seed);
        let a = random_unimodular(&mut r, dim, 8, 2);
        for p in [abelian_profile(&a, &tol()).unwrap(), monomial_profile(&a, &tol()).unwrap()] {
            if let Some(cert) = primitivity_by_degree_drop(&p) {
                let back = PrimitivityCertificate::from_json(&cert.to_json()).unwrap();
                prop_assert!(back.degree_drop_holds());
                prop_assert!(back.d1.lo() > back.d2.as_ref().unwrap().hi());
            }
        }
    }
}
