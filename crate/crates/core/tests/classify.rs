mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use common::{poly, q, random_monic, rng};
use dyndeg::{
    classify, classify_with, companion, isometry_structure, pisot_search, root_moduli, Error,
    IntPoly, Kind, RationalInterval,
};

fn lehmer() -> IntPoly {
    poly(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

#[test]
fn verdict_examples() {
    let c = classify(&lehmer()).unwrap();
    assert_eq!(c.kind, Kind::Salem);
    let d = c.dominant.unwrap();
    assert!(d.lo() >= &q(117_628, 100_000) && d.hi() <= &q(117_629, 100_000));

    let c = classify(&poly(&[-1, -1, 0, 1])).unwrap();
    assert_eq!((c.kind, c.pisot_unit), (Kind::Pisot, true));
    let d = c.dominant.unwrap();
    assert!(d.lo() >= &q(1324, 1000) && d.hi() <= &q(1325, 1000));

    let c = classify(&poly(&[-1, 1])).unwrap();
    assert_eq!(c.kind, Kind::CyclotomicProduct);
    assert_eq!(c.evidence.cyclotomic_factors, vec![(1, 1)]);

    let c = classify(&poly(&[1, -3, 1])).unwrap();
    assert_eq!(
        (c.kind, c.pisot_unit, c.salem_flag),
        (Kind::Pisot, true, true)
    );
    assert!(c.dominant.unwrap().contains_f64(2.618_033_988_749_895));

    assert_eq!(
        classify(&poly(&[0, -1, 1])).unwrap_err(),
        Error::ZeroConstantTerm
    );
    assert_eq!(classify(&poly(&[1, 2])).unwrap_err(), Error::NotMonic);
}

#[test]
fn other_verdicts() {
    // two roots outside the disk
    assert_eq!(classify(&poly(&[1, -5, 0, 1])).unwrap().kind, Kind::Other);
    // reducible with a Pisot factor
    assert_eq!(
        classify(&(&poly(&[-1, -1, 0, 1]) * &poly(&[1, 1])))
            .unwrap()
            .kind,
        Kind::Other
    );
}

#[test]
fn structure_examples() {
    let s = isometry_structure(&poly(&[1, -17, -17, 1])).unwrap();
    assert_eq!(s.cyclotomic_part, vec![(2, 1)]);
    let (salem, d) = s.salem_part.clone().unwrap();
    assert_eq!(salem, poly(&[1, -18, 1]));
    assert!((d.to_f64() - (9.0 + 4.0 * 5f64.sqrt())).abs() < 1e-6);
    assert_eq!(s.reconstruct(), poly(&[1, -17, -17, 1]));

    let s = isometry_structure(&poly(&[-1, 1]).pow(4)).unwrap();
    assert_eq!((s.cyclotomic_part, s.salem_part), (vec![(1, 4)], None));

    let s = isometry_structure(&lehmer()).unwrap();
    assert!(s.cyclotomic_part.is_empty());
    assert_eq!(s.salem_part.unwrap().0, lehmer());

    // two Salem factors
    let two = &poly(&[1, -3, 1]) * &poly(&[1, -4, 1]);
    assert!(matches!(
        isometry_structure(&two),
        Err(Error::StructureViolation(_))
    ));
}

#[test]
fn search_examples() {
    let h = pisot_search(3, 1, true).unwrap();
    assert_eq!(h[0].0, poly(&[-1, -1, 0, 1]));
    let h = pisot_search(2, 3, true).unwrap();
    assert!(h.iter().any(|(p, _)| p == &poly(&[1, -3, 1])));
    assert!(h.iter().any(|(p, _)| p == &poly(&[-1, -1, 1])));
    let h = pisot_search(4, 1, true).unwrap();
    let (_, d) = h
        .iter()
        .find(|(p, _)| p == &poly(&[-1, 0, 0, -1, 1]))
        .unwrap();
    assert!((d.to_f64() - 1.380_277_569_097_6).abs() < 1e-5);
    assert!(matches!(
        pisot_search(17, 1, true),
        Err(Error::CapExceeded { .. })
    ));
}

/// Every monic polynomial of the degree and height with nonzero constant
/// term, classified one by one.
fn brute_force(degree: usize, height: i64, units_only: bool) -> BTreeSet<Vec<BigInt>> {
    let mut out = BTreeSet::new();
    let span = (2 * height + 1) as usize;
    let total = span.pow(degree as u32);
    for mut idx in 0..total {
        let mut c: Vec<i64> = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push((idx % span) as i64 - height);
            idx /= span;
        }
        if c[0] == 0 || (units_only && c[0].abs() != 1) {
            continue;
        }
        c.push(1);
        let p = poly(&c);
        let v = classify(&p).unwrap();
        if v.kind == Kind::Pisot && !v.negative_dominant {
            out.insert(p.coeffs().to_vec());
        }
    }
    out
}

#[test]
fn search_matches_unpruned_enumeration() {
    for degree in 2..=4 {
        for height in 1..=2 {
            for units_only in [true, false] {
                let found: BTreeSet<Vec<BigInt>> = pisot_search(degree, height as u64, units_only)
                    .unwrap()
                    .into_iter()
                    .map(|(p, _)| p.coeffs().to_vec())
                    .collect();
                assert_eq!(
                    found,
                    brute_force(degree, height, units_only),
                    "d={degree} H={height} units={units_only}"
                );
            }
        }
    }
}

#[test]
fn search_is_sorted_and_deduplicated() {
    let h = pisot_search(4, 2, false).unwrap();
    for w in h.windows(2) {
        assert!(w[0].1.cmp_midpoint(&w[1].1).is_le());
        assert_ne!(w[0].0, w[1].0);
    }
}

fn reciprocal_meets_a_modulus(p: &IntPoly, d: &RationalInterval) -> bool {
    let inv = d.recip();
    let profile = root_moduli(p, &q(1, 1_000_000_000)).unwrap();
    profile.moduli.iter().any(|m| m.intersects(&inv))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn verdict_invariants(seed in any::<u64>(), deg in 1usize..=10) {
        let mut r = rng(seed);
        let p = random_monic(&mut r, deg, 5);
        let c = classify(&p).unwrap();
        let profile = root_moduli(&p, &q(1, 1_000_000)).unwrap();
        prop_assert_eq!(profile.enclosure_counts(), c.evidence.disk_counts);
        match c.kind {
            Kind::Pisot => {
                prop_assert!(c.evidence.irreducible);
                prop_assert_eq!(c.evidence.disk_counts.on, 0);
                prop_assert_eq!(c.evidence.disk_counts.outside, 1);
                prop_assert!(c.dominant.as_ref().unwrap().lo() > &BigRational::one());
                let unit = p.constant_term().abs().is_one();
                prop_assert_eq!(c.pisot_unit, unit);
                prop_assert_eq!(companion(&p).unwrap().is_unimodular(), unit);
            }
            Kind::Salem => {
                prop_assert!(p.is_palindromic() && p.deg().is_multiple_of(2) && p.deg() >= 4);
                prop_assert!(reciprocal_meets_a_modulus(&p, c.dominant.as_ref().unwrap()));
            }
            Kind::CyclotomicProduct => prop_assert_eq!(c.evidence.disk_counts.on, deg),
            Kind::Other => {}
        }
    }

    #[test]
    fn verdicts_do_not_depend_on_tolerance(seed in any::<u64>(), deg in 1usize..=10) {
        let mut r = rng(seed);
        let p = random_monic(&mut r, deg, 5);
        let coarse = classify_with(&p, &q(1, 10_000)).unwrap();
        let fine = classify_with(&p, &q(1, 1_000_000_000)).unwrap();
        prop_assert_eq!(coarse.verdict(), fine.verdict());
        if let (Some(a), Some(b)) = (&coarse.dominant, &fine.dominant) {
            prop_assert!(a.contains_interval(b));
        }
    }
}

#[test]
fn salem_corpus_pairs_with_reciprocals() {
    // small Salem numbers of degree 4..10
    let corpus = [
        lehmer(),
        poly(&[1, -1, -1, -1, 1]),
        poly(&[1, 0, -1, -1, -1, 0, 1]),
        poly(&[1, 0, 0, -1, -1, -1, 0, 0, 1]),
    ];
    for p in corpus {
        let c = classify(&p).unwrap();
        assert_eq!(c.kind, Kind::Salem, "{p}");
        assert!(reciprocal_meets_a_modulus(&p, c.dominant.as_ref().unwrap()));
    }
}
