//! Exact recognition of Pisot, Salem and cyclotomic polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::poly::{
    dominant_real_root, factor_int, peel_cyclotomic, trace_transform, unit_disk_count, DiskCounts,
    RationalInterval, SturmSequence,
};
use crate::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    CyclotomicProduct,
    Pisot,
    Salem,
    Other,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::CyclotomicProduct => "CyclotomicProduct",
            Kind::Pisot => "Pisot",
            Kind::Salem => "Salem",
            Kind::Other => "Other",
        }
    }
}

/// The exact facts a verdict rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub disk_counts: DiskCounts,
    pub irreducible: bool,
    pub palindromic: bool,
    pub cyclotomic_factors: Vec<(u64, usize)>,
    /// Real roots of the trace polynomial in `(2, inf)` and `(-2, 2)`,
    /// present for palindromic polynomials of even degree.
    pub trace_counts: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub poly: IntPoly,
    pub kind: Kind,
    pub pisot_unit: bool,
    /// Enclosure of the dominant root, or of its absolute value when
    /// `negative_dominant` is set.
    pub dominant: Option<RationalInterval>,
    pub salem_flag: bool,
    pub negative_dominant: bool,
    pub evidence: Evidence,
}

impl Classification {
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// Stable part of the verdict, independent of the enclosure width.
    pub fn verdict(&self) -> (Kind, bool, bool, bool) {
        (
            self.kind,
            self.pisot_unit,
            self.salem_flag,
            self.negative_dominant,
        )
    }

    pub fn to_json(&self) -> Value {
        let c = &self.evidence.disk_counts;
        let mut v = json!({
            "kind": self.kind.as_str(),
            "degree": self.degree(),
            "coefficients": json::poly_to_value(&self.poly),
            "polynomial": self.poly.to_string(),
            "disk_counts": {"inside": c.inside, "on": c.on, "outside": c.outside},
            "dominant": self.dominant.as_ref().map(json::interval_to_value),
            "unit": self.poly.constant_term().abs().is_one(),
            "pisot_unit": self.pisot_unit,
            "salem_flag": self.salem_flag,
            "negative_dominant": self.negative_dominant,
            "irreducible": self.evidence.irreducible,
            "palindromic": self.evidence.palindromic,
        });
        if !self.evidence.cyclotomic_factors.is_empty() {
            v["cyclotomic_factors"] = json!(self.evidence.cyclotomic_factors);
        }
        if let Some((above, between)) = self.evidence.trace_counts {
            v["trace_counts"] = json!({"above_two": above, "in_minus_two_two": between});
        }
        v
    }
}

pub fn classify(p: &IntPoly) -> Result<Classification> {
    classify_with(p, &crate::default_tol())
}

pub fn classify_with(p: &IntPoly, tol: &BigRational) -> Result<Classification> {
    check_monic_nonzero(p)?;
    let d = p.deg();
    let disk_counts = unit_disk_count(p)?;
    let split = peel_cyclotomic(p)?;
    let palindromic = p.is_palindromic();
    let trace_counts = if p.is_even_palindromic() {
        trace_transform(p).ok().map(|q| {
            let s = SturmSequence::new(&q);
            let two = BigRational::from_integer(2.into());
            (
                s.count_above(&two),
                s.count(&-two.clone(), &two) - usize::from(q.sign_at(&two) == 0),
            )
        })
    } else {
        None
    };
    // one root outside and the rest strictly inside: any proper factor would
    // have a nonzero integer constant term of modulus < 1
    let counts_force_irreducible = disk_counts == DiskCounts::new(d - 1, 0, 1);
    let irreducible = if counts_force_irreducible {
        true
    } else if split.factors.iter().map(|f| f.1).sum::<usize>() > 0 && !split.remainder.is_one() {
        false
    } else {
        factor_int(p)?.is_irreducible()
    };
    let evidence = Evidence {
        disk_counts,
        irreducible,
        palindromic,
        cyclotomic_factors: split.factors.clone(),
        trace_counts,
    };
    let unit = p.constant_term().abs().is_one();
    let mut out = Classification {
        poly: p.clone(),
        kind: Kind::Other,
        pisot_unit: false,
        dominant: None,
        salem_flag: false,
        negative_dominant: false,
        evidence,
    };
    if split.remainder.is_one() {
        out.kind = Kind::CyclotomicProduct;
        return Ok(out);
    }
    if counts_force_irreducible {
        out.kind = Kind::Pisot;
        out.pisot_unit = unit;
        let positive = SturmSequence::new(p).count_above(&BigRational::one()) == 1;
        if positive {
            out.dominant = Some(dominant_real_root(p, tol)?);
            out.salem_flag = d == 2 && palindromic;
        } else {
            out.negative_dominant = true;
            out.dominant = Some(dominant_real_root(&p.negate_variable(), tol)?);
        }
        return Ok(out);
    }
    if irreducible
        && d >= 4
        && p.is_even_palindromic()
        && disk_counts == DiskCounts::new(1, d - 2, 1)
        && trace_counts == Some((1, d / 2 - 1))
    {
        out.kind = Kind::Salem;
        out.dominant = Some(dominant_real_root(p, tol)?);
        return Ok(out);
    }
    Ok(out)
}

fn check_monic_nonzero(p: &IntPoly) -> Result<()> {
    if p.is_zero() || !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.deg() < 1 {
        return Err(Error::DegreeTooSmall(p.deg(), 1));
    }
    if p.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(())
}

/// Characteristic polynomial of a lattice isometry split into cyclotomic
/// factors and at most one Salem factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryStructure {
    pub cyclotomic_part: Vec<(u64, usize)>,
    pub salem_part: Option<(IntPoly, RationalInterval)>,
}

impl IsometryStructure {
    pub fn reconstruct(&self) -> IntPoly {
        let base = self
            .salem_part
            .as_ref()
            .map_or_else(IntPoly::one, |(s, _)| s.clone());
        self.cyclotomic_part.iter().fold(base, |acc, &(n, k)| {
            &acc * &crate::cyclotomic(n).pow(k as u32)
        })
    }

    /// Spectral radius: the Salem number, or exactly 1.
    pub fn spectral_radius(&self) -> RationalInterval {
        self.salem_part
            .as_ref()
            .map_or_else(RationalInterval::one, |(_, d)| d.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cyclotomic_part": self.cyclotomic_part,
            "salem_part": self.salem_part.as_ref().map(|(s, d)| json!({
                "coefficients": json::poly_to_value(s),
                "polynomial": s.to_string(),
                "dominant": json::interval_to_value(d),
            })),
        })
    }
}

pub fn isometry_structure(p: &IntPoly) -> Result<IsometryStructure> {
    isometry_structure_with(p, &crate::default_tol())
}

pub fn isometry_structure_with(p: &IntPoly, tol: &BigRational) -> Result<IsometryStructure> {
    check_monic_nonzero(p)?;
    if !p.constant_term().abs().is_one() {
        return Err(Error::InvalidInput(format!(
            "constant term {} is not a unit",
            p.constant_term()
        )));
    }
    let split = peel_cyclotomic(p)?;
    let salem_part = if split.remainder.is_one() {
        None
    } else {
        let rem = &split.remainder;
        let verdict = classify_with(rem, tol)?;
        let is_salem = verdict.kind == Kind::Salem || verdict.salem_flag;
        if !is_salem {
            return Err(Error::StructureViolation(format!(
                "non-cyclotomic part {rem} is not a single Salem polynomial ({})",
                verdict.kind.as_str()
            )));
        }
        Some((
            rem.clone(),
            verdict
                .dominant
                .expect("Salem verdicts carry a dominant root"),
        ))
    };
    Ok(IsometryStructure {
        cyclotomic_part: split.factors,
        salem_part,
    })
}

/// Caps and tolerance for [`pisot_search_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_degree: usize,
    pub max_height: u64,
    /// Upper limit on the number of enumerated polynomials.
    pub max_candidates: u128,
    pub tol: BigRational,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_degree: 16,
            max_height: 64,
            max_candidates: 200_000_000,
            tol: crate::default_tol(),
        }
    }
}

pub fn pisot_search(
    degree: usize,
    height: u64,
    units_only: bool,
) -> Result<Vec<(IntPoly, RationalInterval)>> {
    pisot_search_with(degree, height, units_only, &SearchOptions::default())
}

/// Every monic Pisot polynomial of the given degree with coefficients in
/// `[-height, height]` whose Pisot root is positive, sorted by that root.
///
/// Candidates are pruned by `p(1) < 0` and `(-1)^d p(-1) > 0`, both forced
/// by a single simple root in `(1, inf)` and none in `(-inf, -1]`.
pub fn pisot_search_with(
    degree: usize,
    height: u64,
    units_only: bool,
    opts: &SearchOptions,
) -> Result<Vec<(IntPoly, RationalInterval)>> {
    if degree < 2 {
        return Err(Error::DegreeTooSmall(degree, 2));
    }
    if height < 1 {
        return Err(Error::InvalidInput("height must be at least 1".into()));
    }
    if degree > opts.max_degree {
        return Err(Error::CapExceeded {
            what: "degree",
            value: degree.to_string(),
            cap: opts.max_degree.to_string(),
        });
    }
    if height > opts.max_height {
        return Err(Error::CapExceeded {
            what: "height",
            value: height.to_string(),
            cap: opts.max_height.to_string(),
        });
    }
    let lattice = Lattice::new(degree, height, units_only);
    if lattice.size() > opts.max_candidates {
        return Err(Error::CapExceeded {
            what: "candidate count",
            value: lattice.size().to_string(),
            cap: opts.max_candidates.to_string(),
        });
    }
    let total = lattice.size() as u64;
    let mut hits: Vec<(IntPoly, RationalInterval)> = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let p = lattice.get(i);
            if !passes_prefilter(&p) {
                return None;
            }
            positive_pisot(&p, &opts.tol)
                .map(|hit| hit.map(|iv| (p, iv)))
                .transpose()
        })
        .collect::<Result<Vec<_>>>()?;
    hits.sort_by(order_hits);
    hits.dedup_by(|a, b| a.0 == b.0);
    Ok(hits)
}

fn order_hits(a: &(IntPoly, RationalInterval), b: &(IntPoly, RationalInterval)) -> Ordering {
    a.1.cmp_midpoint(&b.1)
        .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
}

fn passes_prefilter(p: &IntPoly) -> bool {
    let at_one: BigInt = p.coeffs().iter().sum();
    if !at_one.is_negative() {
        return false;
    }
    let at_minus_one = p.eval(&BigInt::from(-1));
    let signed = if p.deg().is_multiple_of(2) {
        at_minus_one
    } else {
        -at_minus_one
    };
    signed.is_positive()
}

/// Dominant-root enclosure when `p` is Pisot with positive Pisot root.
fn positive_pisot(p: &IntPoly, tol: &BigRational) -> Result<Option<RationalInterval>> {
    let d = p.deg();
    if unit_disk_count(p)? != DiskCounts::new(d - 1, 0, 1) {
        return Ok(None);
    }
    match dominant_real_root(p, tol) {
        Ok(iv) => Ok(Some(iv)),
        Err(Error::NoRootAboveOne) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Monic polynomials of fixed degree with bounded coefficients, indexed
/// densely so work can be split across threads.
struct Lattice {
    degree: usize,
    height: i64,
    constants: Vec<i64>,
}

impl Lattice {
    fn new(degree: usize, height: u64, units_only: bool) -> Self {
        let h = height as i64;
        let constants = if units_only {
            vec![-1, 1]
        } else {
            (-h..=h).filter(|&c| c != 0).collect()
        };
        Lattice {
            degree,
            height: h,
            constants,
        }
    }

    fn size(&self) -> u128 {
        let side = (2 * self.height + 1) as u128;
        side.pow(self.degree as u32 - 1) * self.constants.len() as u128
    }

    fn get(&self, mut index: u64) -> IntPoly {
        let side = (2 * self.height + 1) as u64;
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        let c0 = (index % self.constants.len() as u64) as usize;
        index /= self.constants.len() as u64;
        coeffs.push(BigInt::from(self.constants[c0]));
        for _ in 1..self.degree {
            coeffs.push(BigInt::from((index % side) as i64 - self.height));
            index /= side;
        }
        coeffs.push(BigInt::one());
        IntPoly::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn verdicts() {
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let c = classify(&lehmer).unwrap();
        assert_eq!(c.kind, Kind::Salem);
        assert_eq!(c.evidence.trace_counts, Some((1, 4)));

        let c = classify(&p(&[-1, -1, 0, 1])).unwrap();
        assert_eq!((c.kind, c.pisot_unit), (Kind::Pisot, true));

        let c = classify(&p(&[-1, 1])).unwrap();
        assert_eq!(c.kind, Kind::CyclotomicProduct);
        assert_eq!(c.evidence.cyclotomic_factors, vec![(1, 1)]);

        let c = classify(&p(&[1, -3, 1])).unwrap();
        assert_eq!(c.verdict(), (Kind::Pisot, true, true, false));
    }

    #[test]
    fn negative_pisot_root() {
        // x^3 - x + 1 has the root -1.3247..
        let c = classify(&p(&[1, -1, 0, 1])).unwrap();
        assert_eq!(c.kind, Kind::Pisot);
        assert!(c.negative_dominant);
        assert!((c.dominant.unwrap().to_f64() - 1.324_717_957).abs() < 1e-6);
    }

    #[test]
    fn non_unit_pisot_and_others() {
        // x^2 - 3x - 2: roots 3.56.., -0.56..
        let c = classify(&p(&[-2, -3, 1])).unwrap();
        assert_eq!((c.kind, c.pisot_unit), (Kind::Pisot, false));
        // x^2 - 2 has both roots outside
        assert_eq!(classify(&p(&[-2, 0, 1])).unwrap().kind, Kind::Other);
        // reducible mixture of a cyclotomic and a Pisot factor
        let f = &p(&[1, 1]) * &p(&[-1, -1, 0, 1]);
        let c = classify(&f).unwrap();
        assert_eq!(c.kind, Kind::Other);
        assert!(!c.evidence.irreducible);
    }

    #[test]
    fn preconditions() {
        assert_eq!(classify(&p(&[1, 2])), Err(Error::NotMonic));
        assert_eq!(classify(&p(&[0, 1, 1])), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn structure_examples() {
        let s = isometry_structure(&p(&[1, -17, -17, 1])).unwrap();
        assert_eq!(s.cyclotomic_part, vec![(2, 1)]);
        let (salem, dom) = s.salem_part.clone().unwrap();
        assert_eq!(salem, p(&[1, -18, 1]));
        assert!((dom.to_f64() - 17.944_271_91).abs() < 1e-6);
        assert_eq!(s.reconstruct(), p(&[1, -17, -17, 1]));

        let s = isometry_structure(&p(&[-1, 1]).pow(4)).unwrap();
        assert_eq!(s.cyclotomic_part, vec![(1, 4)]);
        assert!(s.salem_part.is_none());

        let err = isometry_structure(&(&p(&[1, -3, 1]) * &p(&[1, -4, 1])));
        assert!(matches!(err, Err(Error::StructureViolation(_))));
    }

    #[test]
    fn search_examples() {
        let hits = pisot_search(3, 1, true).unwrap();
        assert_eq!(hits[0].0, p(&[-1, -1, 0, 1]));
        let quad = pisot_search(2, 3, true).unwrap();
        assert!(quad.iter().any(|h| h.0 == p(&[1, -3, 1])));
        assert!(quad.iter().any(|h| h.0 == p(&[-1, -1, 1])));
        let quart = pisot_search(4, 1, true).unwrap();
        assert!(quart.iter().any(|h| h.0 == p(&[-1, 0, 0, -1, 1])));
        assert!(matches!(
            pisot_search(17, 1, true),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            pisot_search(3, 65, true),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn lattice_indexing_is_a_bijection() {
        let l = Lattice::new(3, 1, false);
        let all: std::collections::HashSet<Vec<BigInt>> = (0..l.size() as u64)
            .map(|i| l.get(i).coeffs().to_vec())
            .collect();
        assert_eq!(all.len() as u128, l.size());
        assert_eq!(l.size(), 9 * 2);
    }
}
