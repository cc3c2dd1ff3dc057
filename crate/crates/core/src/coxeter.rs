//! The Picard-lattice representation of the universal Coxeter group acting
//! on a Wehler-type Calabi–Yau manifold, and the search for Salem elements.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classify::{classify_with, isometry_structure_with, IsometryStructure, Kind};
use crate::dyndeg::{Criterion, PrimitivityCertificate, IRREDUCIBLE_PICARD_JUSTIFICATION};
use crate::error::{Error, Result};
use crate::json;
use crate::poly::{factor_int, unit_disk_count, DiskCounts, RationalInterval};
use crate::{IntMatrix, IntPoly, RatMatrix};

/// Generators `iota_k^*` on `N^1 = Z h_1 + ... + Z h_(n+1)` and their
/// invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WehlerRep {
    n: usize,
    generators: Vec<IntMatrix>,
    gram: IntMatrix,
}

impl WehlerRep {
    /// Builds the representation for an `n`-dimensional manifold.
    ///
    /// Generator `k` sends `h_k` to `-h_k + 2 sum_{j != k} h_j` and fixes the
    /// other `h_j`. The form is the solution of `G^T B G = B` over all
    /// generators, scaled to off-diagonal entries 1.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("need n >= 2, got {n}")));
        }
        let rank = n + 1;
        let generators: Vec<IntMatrix> = (0..rank).map(|k| generator(rank, k)).collect();
        let basis = invariant_forms(&generators);
        if basis.len() != 1 {
            return Err(Error::StructureViolation(format!(
                "invariant forms span dimension {}, expected 1",
                basis.len()
            )));
        }
        let form = &basis[0];
        let scale = form.get(0, 1).clone();
        if scale.is_zero() {
            return Err(Error::StructureViolation(
                "invariant form has zero off-diagonal".into(),
            ));
        }
        let gram = IntMatrix::from_fn(rank, |i, j| {
            let v = form.get(i, j) / &scale;
            assert!(v.is_integer(), "normalized invariant form is integral");
            v.to_integer()
        });
        let rep = WehlerRep {
            n,
            generators,
            gram,
        };
        rep.validate()?;
        Ok(rep)
    }

    fn validate(&self) -> Result<()> {
        let rank = self.rank();
        let id = IntMatrix::identity(rank);
        for (k, g) in self.generators.iter().enumerate() {
            if (g * g) != id {
                return Err(Error::StructureViolation(format!(
                    "generator {} is not an involution",
                    k + 1
                )));
            }
            for j in (0..rank).filter(|&j| j != k) {
                if (0..rank).any(|i| g.get(i, j) != id.get(i, j)) {
                    return Err(Error::StructureViolation(format!(
                        "generator {} moves h_{}",
                        k + 1,
                        j + 1
                    )));
                }
            }
            if (&(&g.transpose() * &self.gram) * g) != self.gram {
                return Err(Error::StructureViolation(format!(
                    "generator {} does not preserve the form",
                    k + 1
                )));
            }
        }
        if self.gram.signature()? != (1, self.n, 0) {
            return Err(Error::StructureViolation(
                "form does not have signature (1, n)".into(),
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n + 1
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// Generator for letter `k` in `1..=rank`.
    pub fn generator(&self, k: usize) -> &IntMatrix {
        &self.generators[k - 1]
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "gram": json::matrix_to_value(&self.gram),
            "generators": self.generators.iter().map(json::matrix_to_value).collect::<Vec<_>>(),
        })
    }
}

fn generator(rank: usize, k: usize) -> IntMatrix {
    IntMatrix::from_fn(rank, |i, j| {
        let v = if j == k {
            if i == k {
                -1
            } else {
                2
            }
        } else if i == j {
            1
        } else {
            0
        };
        BigInt::from(v)
    })
}

/// Basis of the symmetric matrices `B` with `G^T B G = B` for all given `G`.
pub fn invariant_forms(generators: &[IntMatrix]) -> Vec<RatMatrix> {
    let rank = generators[0].dim();
    let unknowns: Vec<(usize, usize)> = (0..rank)
        .flat_map(|a| (a..rank).map(move |b| (a, b)))
        .collect();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in generators {
        for i in 0..rank {
            for j in i..rank {
                let row = unknowns
                    .iter()
                    .map(|&(a, b)| {
                        let mut c = g.get(a, i) * g.get(b, j);
                        if a != b {
                            c += g.get(b, i) * g.get(a, j);
                        }
                        if (a, b) == (i, j) {
                            c -= 1;
                        }
                        BigRational::from_integer(c)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    nullspace(rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut m = RatMatrix::identity(rank);
            for (&(a, b), x) in unknowns.iter().zip(v) {
                m.set(a, b, x.clone());
                m.set(b, a, x);
            }
            m
        })
        .collect()
}

fn nullspace(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            v
        })
        .collect()
}

/// A reduced word in the generators, letters `1..=n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterWord {
    letters: Vec<usize>,
}

impl CoxeterWord {
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self> {
        for &l in &letters {
            if l == 0 || l > rank {
                return Err(Error::LetterOutOfRange(l, rank));
            }
        }
        if let Some(i) = letters.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::NotReduced(i + 1, i + 2));
        }
        Ok(CoxeterWord { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced with distinct first and last letters.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.letters.len() <= 1 || self.letters.first() != self.letters.last()
    }

    pub fn reversed(&self) -> Self {
        CoxeterWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn rotated(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        let len = letters.len();
        if len > 0 {
            letters.rotate_left(k % len);
        }
        CoxeterWord { letters }
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}

/// Lexicographically least rotation of `w` or of its reversal.
pub fn canonical_word(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut best = w.to_vec();
    let rev: Vec<usize> = w.iter().rev().copied().collect();
    for base in [w, rev.as_slice()] {
        for k in 0..n {
            if base[k..].iter().chain(&base[..k]).lt(best.iter()) {
                best = base[k..].iter().chain(&base[..k]).copied().collect();
            }
        }
    }
    best
}

fn is_canonical(w: &[usize]) -> bool {
    let n = w.len();
    let rev: Vec<usize> = w.iter().rev().copied().collect();
    for base in [w, rev.as_slice()] {
        for k in 0..n {
            if base[k..].iter().chain(&base[..k]).lt(w.iter()) {
                return false;
            }
        }
    }
    true
}

/// Ordered product of the generator matrices of `w`.
pub fn word_to_matrix(rep: &WehlerRep, w: &CoxeterWord) -> Result<IntMatrix> {
    let rank = rep.rank();
    // re-validate against this representation's rank
    let w = CoxeterWord::new(w.letters.clone(), rank)?;
    Ok(w.letters
        .iter()
        .fold(IntMatrix::identity(rank), |acc, &k| &acc * rep.generator(k)))
}

/// Spectral radius of the word's matrix: its Salem number, or exactly 1
/// when the characteristic polynomial is a cyclotomic product.
pub fn d1_of_word(rep: &WehlerRep, w: &CoxeterWord, tol: &BigRational) -> Result<RationalInterval> {
    let m = word_to_matrix(rep, w)?;
    Ok(isometry_structure_with(&m.charpoly(), tol)?.spectral_radius())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalemHit {
    pub word: CoxeterWord,
    pub charpoly: IntPoly,
    pub salem: IntPoly,
    pub dominant: RationalInterval,
    pub structure: IsometryStructure,
}

impl SalemHit {
    pub fn to_json(&self, n: usize) -> Value {
        json!({
            "n": n,
            "word": self.word.letters(),
            "charpoly": json::poly_to_value(&self.charpoly),
            "charpoly_text": self.charpoly.to_string(),
            "salem": {
                "coeffs": json::poly_to_value(&self.salem),
                "dominant": json::interval_to_value(&self.dominant),
            },
            "cyclotomic_part": self.structure.cyclotomic_part,
        })
    }
}

pub fn salem_element_search(
    rep: &WehlerRep,
    max_len: usize,
    full_degree_only: bool,
) -> Result<Vec<SalemHit>> {
    salem_element_search_with(
        rep,
        max_len,
        full_degree_only,
        &crate::default_tol(),
        |_, _| {},
    )
}

/// Breadth-first search over canonical cyclically reduced words of length
/// `1..=max_len` for elements with a Salem factor (of full degree `n+1`
/// when `full_degree_only`).
///
/// `on_length` receives each length's hits, sorted by dominant root, as
/// soon as that length is finished. The returned list holds all hits sorted
/// by dominant root, then length, then word.
pub fn salem_element_search_with(
    rep: &WehlerRep,
    max_len: usize,
    full_degree_only: bool,
    tol: &BigRational,
    mut on_length: impl FnMut(usize, &[SalemHit]),
) -> Result<Vec<SalemHit>> {
    let rank = rep.rank();
    if full_degree_only && rank % 2 == 1 {
        return Err(Error::OddRankFullDegree(rank));
    }
    if max_len == 0 {
        return Err(Error::InvalidInput("max_len must be at least 1".into()));
    }
    let mut all = Vec::new();
    for len in 1..=max_len {
        let words = canonical_words(rank, len);
        let results: Vec<Option<SalemHit>> = words
            .into_par_iter()
            .map(|letters| evaluate_word(rep, letters, full_degree_only, tol))
            .collect::<Result<Vec<_>>>()?;
        let mut hits: Vec<SalemHit> = results.into_iter().flatten().collect();
        hits.sort_by(order_hits);
        on_length(len, &hits);
        all.extend(hits);
    }
    all.sort_by(order_hits);
    Ok(all)
}

fn order_hits(a: &SalemHit, b: &SalemHit) -> std::cmp::Ordering {
    a.dominant
        .cmp_midpoint(&b.dominant)
        .then_with(|| a.word.len().cmp(&b.word.len()))
        .then_with(|| a.word.cmp(&b.word))
}

/// Canonical cyclically reduced words of the given length, in
/// lexicographic order.
pub fn canonical_words(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut w = Vec::with_capacity(len);
    extend_words(rank, len, &mut w, &mut out);
    out
}

fn extend_words(rank: usize, len: usize, w: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if w.len() == len {
        if (len <= 1 || w[0] != w[len - 1]) && is_canonical(w) {
            out.push(w.clone());
        }
        return;
    }
    for letter in 1..=rank {
        if w.last() == Some(&letter) {
            continue;
        }
        // a canonical word starts with its smallest letter
        if !w.is_empty() && letter < w[0] {
            continue;
        }
        w.push(letter);
        extend_words(rank, len, w, out);
        w.pop();
    }
}

fn evaluate_word(
    rep: &WehlerRep,
    letters: Vec<usize>,
    full_degree_only: bool,
    tol: &BigRational,
) -> Result<Option<SalemHit>> {
    let word = CoxeterWord { letters };
    let m = word_to_matrix(rep, &word)?;
    let charpoly = m.charpoly();
    let rank = rep.rank();
    if full_degree_only {
        // an irreducible Salem polynomial of degree >= 4 has no root at +-1
        // and exactly one root on each side of the circle
        if charpoly.eval(&BigInt::one()).is_zero() || charpoly.eval(&-BigInt::one()).is_zero() {
            return Ok(None);
        }
        if unit_disk_count(&charpoly)? != DiskCounts::new(1, rank - 2, 1) {
            return Ok(None);
        }
    }
    let structure = isometry_structure_with(&charpoly, tol)?;
    let Some((salem, dominant)) = structure.salem_part.clone() else {
        return Ok(None);
    };
    if full_degree_only && salem.deg() != rank {
        return Ok(None);
    }
    Ok(Some(SalemHit {
        word,
        charpoly,
        salem,
        dominant,
        structure,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PicardVerdict {
    Certified(PrimitivityCertificate),
    Refused(String),
}

impl PicardVerdict {
    pub fn certificate(&self) -> Option<&PrimitivityCertificate> {
        match self {
            PicardVerdict::Certified(c) => Some(c),
            PicardVerdict::Refused(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PicardVerdict::Certified(c) => json!({"issued": true, "certificate": c.to_json()}),
            PicardVerdict::Refused(reason) => json!({"issued": false, "reason": reason}),
        }
    }
}

/// An IrreduciblePicard certificate when the characteristic polynomial of
/// the word is an irreducible Salem polynomial of degree `n+1`.
pub fn picard_primitivity_certificate(
    rep: &WehlerRep,
    w: &CoxeterWord,
    tol: &BigRational,
) -> PicardVerdict {
    match picard_check(rep, w, tol) {
        Ok(v) => v,
        Err(e) => PicardVerdict::Refused(e.to_string()),
    }
}

fn picard_check(rep: &WehlerRep, w: &CoxeterWord, tol: &BigRational) -> Result<PicardVerdict> {
    let charpoly = word_to_matrix(rep, w)?.charpoly();
    let factors = factor_int(&charpoly)?;
    if !factors.is_irreducible() {
        let list: Vec<String> = factors
            .factors
            .iter()
            .map(|(f, k)| {
                if *k == 1 {
                    format!("({f})")
                } else {
                    format!("({f})^{k}")
                }
            })
            .collect();
        let spectral = isometry_structure_with(&charpoly, tol)
            .map(|s| s.spectral_radius())
            .ok();
        let note = match spectral {
            Some(r) if r.is_point() && r.lo().is_one() => "; d_1 = 1",
            _ => "",
        };
        return Ok(PicardVerdict::Refused(format!(
            "characteristic polynomial is reducible: {}{note}",
            list.join(" ")
        )));
    }
    let verdict = classify_with(&charpoly, tol)?;
    let salem = verdict.kind == Kind::Salem || verdict.salem_flag;
    if !salem {
        return Ok(PicardVerdict::Refused(format!(
            "characteristic polynomial {charpoly} is not Salem ({})",
            verdict.kind.as_str()
        )));
    }
    if charpoly.deg() != rep.rank() {
        return Ok(PicardVerdict::Refused(format!(
            "Salem factor has degree {}, rank is {}",
            charpoly.deg(),
            rep.rank()
        )));
    }
    let d1 = verdict
        .dominant
        .expect("Salem verdicts carry a dominant root");
    Ok(PicardVerdict::Certified(PrimitivityCertificate {
        criterion: Criterion::IrreduciblePicard,
        d1,
        d2: None,
        n: Some(rep.n()),
        word: Some(w.letters().to_vec()),
        polynomial: Some(charpoly),
        justification: IRREDUCIBLE_PICARD_JUSTIFICATION.to_string(),
    }))
}

/// Re-derives an IrreduciblePicard certificate from its word and checks
/// every stored field against the recomputation.
pub fn recheck_picard_certificate(cert: &PrimitivityCertificate) -> Result<bool> {
    let (Some(n), Some(word)) = (cert.n, cert.word.clone()) else {
        return Ok(false);
    };
    let rep = WehlerRep::new(n)?;
    let w = CoxeterWord::new(word, rep.rank())?;
    let tol = if cert.d1.width().is_positive() {
        cert.d1.width()
    } else {
        crate::default_tol()
    };
    Ok(match picard_primitivity_certificate(&rep, &w, &tol) {
        PicardVerdict::Certified(fresh) => {
            fresh.polynomial == cert.polynomial && fresh.d1.intersects(&cert.d1)
        }
        PicardVerdict::Refused(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn word(l: &[usize], rank: usize) -> CoxeterWord {
        CoxeterWord::new(l.to_vec(), rank).unwrap()
    }

    #[test]
    fn gram_matrices() {
        let rep = WehlerRep::new(2).unwrap();
        assert_eq!(
            rep.gram(),
            &IntMatrix::from_i64_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap()
        );
        let rep = WehlerRep::new(3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { -1 } else { 1 };
                assert_eq!(rep.gram().get(i, j), &BigInt::from(want));
            }
        }
        assert_eq!(rep.gram().signature(), Ok((1, 3, 0)));
    }

    #[test]
    fn worked_words() {
        let rep = WehlerRep::new(2).unwrap();
        let tol = crate::default_tol();
        assert_eq!(
            word_to_matrix(&rep, &word(&[1, 2], 3)).unwrap().charpoly(),
            p(&[-1, 3, -3, 1])
        );
        let m = word_to_matrix(&rep, &word(&[1, 2, 3], 3)).unwrap();
        assert_eq!(m.charpoly(), p(&[1, -17, -17, 1]));
        assert_eq!(
            word_to_matrix(&rep, &word(&[], 3)).unwrap(),
            IntMatrix::identity(3)
        );
        assert_eq!(
            d1_of_word(&rep, &word(&[1, 2], 3), &tol).unwrap(),
            RationalInterval::one()
        );
        assert_eq!(
            d1_of_word(&rep, &word(&[1], 3), &tol).unwrap(),
            RationalInterval::one()
        );
        let d1 = d1_of_word(&rep, &word(&[1, 2, 3], 3), &tol).unwrap();
        assert!((d1.to_f64() - (9.0 + 4.0 * 5f64.sqrt())).abs() < 1e-6);
    }

    #[test]
    fn words_are_validated() {
        assert_eq!(
            CoxeterWord::new(vec![1, 1], 3),
            Err(Error::NotReduced(1, 2))
        );
        assert_eq!(
            CoxeterWord::new(vec![4], 3),
            Err(Error::LetterOutOfRange(4, 3))
        );
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_word(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_word(&[2, 1, 3]), vec![1, 2, 3]);
        assert_eq!(canonical_word(&[2, 3, 1, 3]), vec![1, 3, 2, 3]);
        let words = canonical_words(3, 3);
        assert_eq!(words, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn search_examples() {
        let rep2 = WehlerRep::new(2).unwrap();
        assert_eq!(
            salem_element_search(&rep2, 4, true).unwrap_err(),
            Error::OddRankFullDegree(3)
        );
        let hits = salem_element_search(&rep2, 3, false).unwrap();
        let hit = hits.iter().find(|h| h.word.letters() == [1, 2, 3]).unwrap();
        assert_eq!(hit.salem, p(&[1, -18, 1]));

        let rep3 = WehlerRep::new(3).unwrap();
        let hits = salem_element_search(&rep3, 4, true).unwrap();
        assert!(!hits.is_empty());
        let tol = crate::default_tol();
        for h in &hits {
            assert_eq!(h.charpoly.deg(), 4);
            assert_eq!(classify_with(&h.charpoly, &tol).unwrap().kind, Kind::Salem);
            assert!(picard_primitivity_certificate(&rep3, &h.word, &tol)
                .certificate()
                .is_some());
        }
    }

    #[test]
    fn certificate_refusals() {
        let rep = WehlerRep::new(2).unwrap();
        let tol = crate::default_tol();
        let v = picard_primitivity_certificate(&rep, &word(&[1, 2, 3], 3), &tol);
        assert!(matches!(&v, PicardVerdict::Refused(r) if r.contains("x + 1")));
        let v = picard_primitivity_certificate(&rep, &word(&[1], 3), &tol);
        assert!(matches!(&v, PicardVerdict::Refused(r) if r.contains("d_1 = 1")));
    }

    #[test]
    fn certificates_recheck() {
        let rep = WehlerRep::new(3).unwrap();
        let tol = crate::default_tol();
        let cert = picard_primitivity_certificate(&rep, &word(&[1, 2, 3, 4], 4), &tol);
        let cert = cert
            .certificate()
            .expect("the word 1234 is a full-degree Salem element");
        let back = PrimitivityCertificate::from_json(&cert.to_json()).unwrap();
        assert!(recheck_picard_certificate(&back).unwrap());
    }
}
