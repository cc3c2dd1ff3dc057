//! Exact real-root counting with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::int::sign_of;
use crate::IntPoly;

/// Sturm sequence of the squarefree part of a polynomial, kept in
/// primitive integer form (each remainder is scaled by a positive factor,
/// which leaves the sign variations unchanged).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let base = p.squarefree_part();
        let mut chain = vec![base.clone()];
        if base.deg() >= 1 {
            chain.push(base.integer_derivative().primitive_part());
            loop {
                let n = chain.len();
                let r = chain[n - 2].sprem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                // primitive_part normalises the leading sign; undo that so the
                // chain keeps the sign of -rem.
                let neg = -&r;
                let content = neg.content();
                let scaled = IntPoly::new(neg.coeffs().iter().map(|c| c / &content).collect());
                chain.push(scaled);
            }
        }
        SturmSequence { chain }
    }

    /// The squarefree polynomial the chain starts from.
    pub fn base(&self) -> &IntPoly {
        &self.chain[0]
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| sign_of(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = sign_of(&p.leading());
            if p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_at_pos_inf())
    }

    /// Distinct real roots in `(-inf, b]`.
    pub fn count_below(&self, b: &BigRational) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    if a >= b || p.deg() < 1 {
        return 0;
    }
    SturmSequence::new(p).count(a, b)
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn golden_ratio_square_root_count() {
        // roots (3 +- sqrt 5)/2 = 0.38.., 2.61..
        assert_eq!(sturm_count(&p(&[1, -3, 1]), &rat(1), &rat(3)), 1);
        assert_eq!(sturm_count(&p(&[1, -3, 1]), &rat(0), &rat(3)), 2);
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &rat(-10), &rat(10)), 0);
    }

    #[test]
    fn smallest_pisot_root_in_unit_to_two() {
        assert_eq!(sturm_count(&p(&[-1, -1, 0, 1]), &rat(1), &rat(2)), 1);
        assert_eq!(SturmSequence::new(&p(&[-1, -1, 0, 1])).count_all(), 1);
    }

    #[test]
    fn half_open_endpoints() {
        // roots at 1 and 2
        let f = p(&[2, -3, 1]);
        assert_eq!(sturm_count(&f, &rat(1), &rat(2)), 1);
        assert_eq!(sturm_count(&f, &rat(0), &rat(1)), 1);
        assert_eq!(sturm_count(&f, &rat(0), &rat(2)), 2);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[1, 1]);
        let s = SturmSequence::new(&f);
        assert_eq!(s.count_all(), 2);
        assert_eq!(s.count_above(&rat(0)), 1);
        assert_eq!(s.count_below(&rat(0)), 1);
    }
}
