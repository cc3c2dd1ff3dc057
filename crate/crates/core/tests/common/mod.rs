#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dyndeg::{IntMatrix, IntPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Monic, degree `deg`, coefficients in `[-height, height]`, nonzero
/// constant term.
pub fn random_monic(rng: &mut ChaCha8Rng, deg: usize, height: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-height..=height)).collect();
    while c[0] == 0 {
        c[0] = rng.gen_range(-height..=height);
    }
    c.push(1);
    poly(&c)
}

/// Product of random elementary transvections and signed permutations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize, steps: usize, bound: i64) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    rows.shuffle(rng);
    for row in rows.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if dim > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim);
            while j == i {
                j = rng.gen_range(0..dim);
            }
            let k = rng.gen_range(-bound..=bound);
            for c in 0..dim {
                let add = k * rows[j][c];
                rows[i][c] += add;
            }
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    IntMatrix::from_i64_rows(&refs).unwrap()
}

/// Block upper-triangular unimodular matrix of size `dim` with base block
/// of size `b`, and the split `b`.
pub fn random_block_triangular(rng: &mut ChaCha8Rng, dim: usize) -> (IntMatrix, usize) {
    let b = rng.gen_range(1..dim);
    let base = random_unimodular(rng, b, 3, 1);
    let fiber = random_unimodular(rng, dim - b, 3, 1);
    let off: Vec<Vec<i64>> = (0..b)
        .map(|_| (0..dim - b).map(|_| rng.gen_range(-2..=2)).collect())
        .collect();
    let m = IntMatrix::from_fn(dim, |i, j| {
        if i < b && j < b {
            base.get(i, j).clone()
        } else if i >= b && j >= b {
            fiber.get(i - b, j - b).clone()
        } else if i < b {
            BigInt::from(off[i][j - b])
        } else {
            BigInt::from(0)
        }
    });
    (m, b)
}

/// Reduced word of the given length over letters `1..=rank`.
pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, len: usize) -> Vec<usize> {
    let mut w: Vec<usize> = Vec::with_capacity(len);
    while w.len() < len {
        let l = rng.gen_range(1..=rank);
        if w.last() != Some(&l) {
            w.push(l);
        }
    }
    w
}

/// A random unimodular `U` with its exact inverse, built from transvections.
pub fn random_unimodular_pair(
    rng: &mut ChaCha8Rng,
    dim: usize,
    steps: usize,
) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(dim);
    let mut inv = IntMatrix::identity(dim);
    if dim < 2 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        while j == i {
            j = rng.gen_range(0..dim);
        }
        let k: i64 = rng.gen_range(-2..=2);
        let e = IntMatrix::from_fn(dim, |r, c| {
            BigInt::from(i64::from(r == c) + if (r, c) == (i, j) { k } else { 0 })
        });
        let e_inv = IntMatrix::from_fn(dim, |r, c| {
            BigInt::from(i64::from(r == c) - if (r, c) == (i, j) { k } else { 0 })
        });
        u = &u * &e;
        inv = &e_inv * &inv;
    }
    (u, inv)
}
