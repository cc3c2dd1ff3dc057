//! Exact arithmetic for Pisot and Salem numbers, dynamical degrees of
//! lattice automorphisms and monomial maps, and the Picard-lattice
//! representation of the universal Coxeter group.
//!
//! Every verdict is computed with big-integer and rational arithmetic.
//! Floating point only seeds root approximations that are certified
//! afterwards.

pub mod classify;
pub mod coxeter;
pub mod dyndeg;
pub mod error;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use classify::{
    classify, classify_with, isometry_structure, isometry_structure_with, pisot_search,
    pisot_search_with, Classification, Evidence, IsometryStructure, Kind, SearchOptions,
};
pub use coxeter::{
    canonical_word, canonical_words, d1_of_word, picard_primitivity_certificate,
    recheck_picard_certificate, salem_element_search, salem_element_search_with, word_to_matrix,
    CoxeterWord, PicardVerdict, SalemHit, WehlerRep,
};
pub use dyndeg::{
    abelian_profile, hk_profile, lehmer_floor_check, lehmer_polynomial, monomial_eval,
    monomial_map, monomial_profile, primitivity_by_degree_drop, product_formula_check, Criterion,
    DegreeProfile, Model, PrimitivityCertificate, ProductFormulaReport,
};
pub use error::{Error, Result};
pub use matrix::{companion, Matrix};
pub use poly::trace_transform;
pub use poly::{
    cyclotomic, dominant_real_root, factor_int, peel_cyclotomic, root_moduli, sturm_count,
    unit_disk_count, CyclotomicSplit, DiskCounts, Factorization, Poly, RationalInterval,
    RootProfile,
};
pub use verify::{verify_document, VerifyReport};

pub type Rational = BigRational;
pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;
pub type FloatPoly = Poly<f64>;
pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

/// Default enclosure width, `10^-6`.
pub fn default_tol() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(1_000_000))
}
