//! Dynamical-degree profiles of torus automorphisms, monomial maps and
//! hyperkähler automorphisms, with entropy and primitivity certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::poly::{dominant_real_root, root_moduli_with, RationalInterval, RootOptions};
use crate::{IntMatrix, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Abelian,
    Monomial,
    Hyperkahler,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Abelian => "abelian",
            Model::Monomial => "monomial",
            Model::Hyperkahler => "hyperkahler",
        }
    }

    /// The monomial model is birational, so its degree logarithm is not
    /// claimed to be a topological entropy.
    pub fn entropy_label(&self) -> &'static str {
        match self {
            Model::Abelian | Model::Hyperkahler => "topological entropy",
            Model::Monomial => "first-dynamical-degree logarithm",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub model: Model,
    pub dim: usize,
    pub degrees: Vec<RationalInterval>,
    /// Encloses `log max_p d_p`.
    pub entropy: RationalInterval,
}

impl DegreeProfile {
    fn from_degrees(model: Model, dim: usize, degrees: Vec<RationalInterval>) -> Self {
        let top = degrees
            .iter()
            .skip(1)
            .fold(degrees[0].clone(), |acc, d| acc.max(d));
        DegreeProfile {
            model,
            dim,
            entropy: top.ln(),
            degrees,
        }
    }

    pub fn d(&self, p: usize) -> &RationalInterval {
        &self.degrees[p]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model.as_str(),
            "dim": self.dim,
            "degrees": self.degrees.iter().map(json::interval_to_value).collect::<Vec<_>>(),
            "entropy": json::interval_to_value(&self.entropy),
            "entropy_label": self.model.entropy_label(),
        })
    }
}

pub fn abelian_profile(m: &IntMatrix, tol: &BigRational) -> Result<DegreeProfile> {
    abelian_profile_with(m, &RootOptions::with_tol(tol.clone()))
}

/// `d_k = prod_{j <= k} |alpha_j|^2` over the eigenvalues of `M` ordered by
/// modulus; `M` acts on the first cohomology of a complex torus.
pub fn abelian_profile_with(m: &IntMatrix, opts: &RootOptions) -> Result<DegreeProfile> {
    lattice_profile(m, opts, Model::Abelian)
}

pub fn monomial_profile(a: &IntMatrix, tol: &BigRational) -> Result<DegreeProfile> {
    monomial_profile_with(a, &RootOptions::with_tol(tol.clone()))
}

/// `d_k = prod_{j <= k} |alpha_j|` over the eigenvalues of `A` ordered by
/// modulus.
pub fn monomial_profile_with(a: &IntMatrix, opts: &RootOptions) -> Result<DegreeProfile> {
    lattice_profile(a, opts, Model::Monomial)
}

fn lattice_profile(m: &IntMatrix, opts: &RootOptions, model: Model) -> Result<DegreeProfile> {
    let det = m.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let d = m.dim();
    let charpoly = m.charpoly();
    let squared = model == Model::Abelian;
    // shrink the root tolerance until every product meets the requested width
    let mut root_opts = opts.clone();
    for _ in 0..24 {
        let profile = root_moduli_with(&charpoly, &root_opts)?;
        let mut degrees = Vec::with_capacity(d + 1);
        let mut acc = RationalInterval::one();
        degrees.push(acc.clone());
        for k in 0..d {
            let factor = if squared {
                profile.moduli[k].mul(&profile.moduli[k])
            } else {
                profile.moduli[k].clone()
            };
            acc = acc.mul(&factor);
            degrees.push(acc.clone());
        }
        debug_assert!(degrees[d].contains(&BigRational::one()));
        // |det| = 1 makes the full product exactly one
        degrees[d] = RationalInterval::one();
        let widest = degrees
            .iter()
            .map(|x| x.width())
            .max()
            .unwrap_or_else(BigRational::zero);
        let positive = degrees.iter().all(|x| x.lo().is_positive());
        if widest <= opts.tol && positive {
            return Ok(DegreeProfile::from_degrees(model, d, degrees));
        }
        let ratio = if widest.is_zero() {
            BigRational::from_integer(2.into())
        } else {
            (&widest / &opts.tol).ceil() + BigRational::one()
        };
        root_opts.tol = &root_opts.tol / ratio;
    }
    Err(Error::CertificationFailed {
        tol: opts.tol.to_string(),
        max_bits: opts.max_precision_bits,
    })
}

/// The monomial map of `A` in pullback form: coordinate `i` of the result
/// is `prod_j t_j^(a_ji)`.
///
/// Pullbacks compose contravariantly, so
/// `monomial_eval(AB, t) = monomial_eval(B, monomial_eval(A, t))`.
pub fn monomial_eval(a: &IntMatrix, t: &[BigRational]) -> Result<Vec<BigRational>> {
    let d = a.dim();
    if t.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, matrix has dimension {d}",
            t.len()
        )));
    }
    if let Some(j) = t.iter().position(|x| x.is_zero()) {
        return Err(Error::ZeroCoordinate(j));
    }
    (0..d)
        .map(|i| {
            (0..d).try_fold(BigRational::one(), |acc, j| {
                let e = a
                    .get(j, i)
                    .to_i32()
                    .ok_or_else(|| Error::InvalidInput("exponent out of range".into()))?;
                Ok(acc * num_traits::Pow::pow(&t[j], e))
            })
        })
        .collect()
}

/// The monomial map `phi_A` acting on points, `phi_A(t)_i = prod_j t_j^(a_ij)`;
/// it satisfies `phi_(AB) = phi_A o phi_B`.
pub fn monomial_map(a: &IntMatrix, t: &[BigRational]) -> Result<Vec<BigRational>> {
    monomial_eval(&a.transpose(), t)
}

/// Profile of a hyperkähler automorphism of a `2m`-dimensional manifold:
/// `d_p = d_(2m-p) = d_1^p` for `p <= m`, entropy `m log d_1`.
pub fn hk_profile(d1: &RationalInterval, m: usize) -> Result<DegreeProfile> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if d1.lo() < &BigRational::one() {
        return Err(Error::InvalidInput(format!(
            "first dynamical degree {d1} is below 1"
        )));
    }
    let degrees: Vec<RationalInterval> = (0..=2 * m)
        .map(|p| d1.pow_nonneg(p.min(2 * m - p) as u32))
        .collect();
    let entropy = d1.ln().scale(&BigRational::from_integer(BigInt::from(m)));
    Ok(DegreeProfile {
        model: Model::Hyperkahler,
        dim: 2 * m,
        degrees,
        entropy,
    })
}

pub fn lehmer_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

/// Whether `d1` respects the Lehmer floor for hyperkähler fourfolds:
/// `d1 = 1` or `d1.lo` at least the lower end of the Lehmer-number
/// enclosure computed at the width of `d1` (`10^-6` for point intervals).
///
/// Enclosures from the same bisection are nested, so `d1` computed from
/// the Lehmer polynomial itself passes at every width.
pub fn lehmer_floor_check(d1: &RationalInterval) -> bool {
    if d1.is_point() && d1.lo().is_one() {
        return true;
    }
    let tol = if d1.is_point() {
        crate::default_tol()
    } else {
        d1.width()
    };
    let lehmer = dominant_real_root(&lehmer_polynomial(), &tol)
        .expect("the Lehmer polynomial has a real root above one");
    d1.lo() >= lehmer.lo()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    DegreeDrop,
    IrreduciblePicard,
}

impl Criterion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Criterion::DegreeDrop => "DegreeDrop",
            Criterion::IrreduciblePicard => "IrreduciblePicard",
        }
    }
}

pub const DEGREE_DROP_JUSTIFICATION: &str = "If f were not primitive, an equivariant dominant \
rational map to a base of dimension 0 < k < dim would give d_1(f) = max(d_1(base), d_1(fiber)) \
<= d_2(f) by the product formula for relative dynamical degrees; the certified inequality \
d_1.lo > d_2.hi excludes this.";

pub const IRREDUCIBLE_PICARD_JUSTIFICATION: &str = "The pullback on N^1 has an irreducible \
Salem characteristic polynomial of full rank, so no nonzero proper f-stable rational subspace \
of N^1 exists; the pullback of an ample class from a lower-dimensional base would span one. \
Hence f is primitive, and d_1(f) is the Salem number > 1.";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityCertificate {
    pub criterion: Criterion,
    pub d1: RationalInterval,
    /// DegreeDrop only.
    pub d2: Option<RationalInterval>,
    /// IrreduciblePicard only: rank parameter, word and Salem polynomial.
    pub n: Option<usize>,
    pub word: Option<Vec<usize>>,
    pub polynomial: Option<IntPoly>,
    pub justification: String,
}

impl PrimitivityCertificate {
    pub fn degree_drop(d1: RationalInterval, d2: RationalInterval) -> Self {
        PrimitivityCertificate {
            criterion: Criterion::DegreeDrop,
            d1,
            d2: Some(d2),
            n: None,
            word: None,
            polynomial: None,
            justification: DEGREE_DROP_JUSTIFICATION.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "criterion": self.criterion.as_str(),
            "d1": json::interval_to_value(&self.d1),
            "citation": self.justification,
        });
        if let Some(d2) = &self.d2 {
            v["d2"] = json::interval_to_value(d2);
        }
        if let Some(n) = self.n {
            v["n"] = json!(n);
        }
        if let Some(w) = &self.word {
            v["word"] = json!(w);
        }
        if let Some(p) = &self.polynomial {
            v["charpoly"] = json::poly_to_value(p);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let criterion = match v.get("criterion").and_then(Value::as_str) {
            Some("DegreeDrop") => Criterion::DegreeDrop,
            Some("IrreduciblePicard") => Criterion::IrreduciblePicard,
            other => {
                return Err(Error::Parse(format!(
                    "unknown certificate criterion {other:?}"
                )))
            }
        };
        let d1 = json::interval_from_value(
            v.get("d1")
                .ok_or_else(|| Error::Parse("certificate lacks d1".into()))?,
        )?;
        let d2 = v.get("d2").map(json::interval_from_value).transpose()?;
        let n = v.get("n").and_then(Value::as_u64).map(|n| n as usize);
        let word = v
            .get("word")
            .map(|w| {
                w.as_array()
                    .ok_or_else(|| Error::Parse("word must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|x| x as usize)
                            .ok_or_else(|| Error::Parse("word letters must be integers".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let polynomial = v.get("charpoly").map(json::poly_from_value).transpose()?;
        let justification = v
            .get("citation")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        Ok(PrimitivityCertificate {
            criterion,
            d1,
            d2,
            n,
            word,
            polynomial,
            justification,
        })
    }

    /// Re-checks the stored inequality of a DegreeDrop certificate.
    pub fn degree_drop_holds(&self) -> bool {
        let one = BigRational::one();
        match (&self.criterion, &self.d2) {
            (Criterion::DegreeDrop, Some(d2)) => self.d1.lo() > d2.hi() && self.d1.lo() > &one,
            _ => false,
        }
    }
}

/// A DegreeDrop certificate when `d_1.lo > d_2.hi` and `d_1.lo > 1`.
pub fn primitivity_by_degree_drop(profile: &DegreeProfile) -> Option<PrimitivityCertificate> {
    if profile.degrees.len() < 3 {
        return None;
    }
    let cert =
        PrimitivityCertificate::degree_drop(profile.degrees[1].clone(), profile.degrees[2].clone());
    cert.degree_drop_holds().then_some(cert)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFormulaRow {
    pub p: usize,
    pub total: RationalInterval,
    /// Encloses `max_j d_j(base) d_(p-j)(fiber)`.
    pub predicted: RationalInterval,
    /// Split index with the largest midpoint.
    pub best_j: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFormulaReport {
    pub split: usize,
    pub total: DegreeProfile,
    pub base: DegreeProfile,
    pub fiber: DegreeProfile,
    pub rows: Vec<ProductFormulaRow>,
}

impl ProductFormulaReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "split": self.split,
            "all_pass": self.all_pass(),
            "total": self.total.to_json(),
            "base": self.base.to_json(),
            "fiber": self.fiber.to_json(),
            "rows": self.rows.iter().map(|r| json!({
                "p": r.p,
                "total": json::interval_to_value(&r.total),
                "predicted": json::interval_to_value(&r.predicted),
                "best_j": r.best_j,
                "pass": r.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks `d_p(A) = max_j d_j(A_B) d_(p-j)(A_F)` for a matrix whose lower
/// left `(d-b) x b` block vanishes, with base block `A_B` (top left) and
/// fiber block `A_F` (bottom right).
pub fn product_formula_check(
    a: &IntMatrix,
    b: usize,
    tol: &BigRational,
) -> Result<ProductFormulaReport> {
    let d = a.dim();
    if b == 0 || b >= d {
        return Err(Error::InvalidInput(format!(
            "split {b} must satisfy 0 < b < {d}"
        )));
    }
    for i in b..d {
        for j in 0..b {
            if !a.get(i, j).is_zero() {
                return Err(Error::NotBlockTriangular(b));
            }
        }
    }
    let total = monomial_profile(a, tol)?;
    let base = monomial_profile(&a.principal(0, b), tol)?;
    let fiber = monomial_profile(&a.principal(b, d), tol)?;
    let rows = (0..=d)
        .map(|p| {
            let lo_j = p.saturating_sub(d - b);
            let hi_j = p.min(b);
            let mut best_j = lo_j;
            let mut predicted: Option<RationalInterval> = None;
            let mut best: Option<RationalInterval> = None;
            for j in lo_j..=hi_j {
                let cand = base.degrees[j].mul(&fiber.degrees[p - j]);
                if best.as_ref().is_none_or(|b| cand.cmp_midpoint(b).is_gt()) {
                    best = Some(cand.clone());
                    best_j = j;
                }
                predicted = Some(match predicted {
                    None => cand,
                    Some(acc) => acc.max(&cand),
                });
            }
            let predicted = predicted.expect("nonempty split range");
            let total_p = total.degrees[p].clone();
            let pass = total_p.intersects(&predicted);
            ProductFormulaRow {
                p,
                total: total_p,
                predicted,
                best_j,
                pass,
            }
        })
        .collect();
    Ok(ProductFormulaReport {
        split: b,
        total,
        base,
        fiber,
        rows,
    })
}
