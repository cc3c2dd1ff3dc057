//! Re-checking of emitted certificate documents.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::coxeter::recheck_picard_certificate;
use crate::dyndeg::{abelian_profile, monomial_profile, Criterion, PrimitivityCertificate};
use crate::error::{Error, Result};
use crate::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub criterion: Criterion,
    pub checks: Vec<(String, bool)>,
}

impl VerifyReport {
    pub fn valid(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.criterion.as_str(),
            "valid": self.valid(),
            "checks": self.checks.iter().map(|(name, ok)| json!({"check": name, "pass": ok})).collect::<Vec<_>>(),
        })
    }
}

/// Locates the certificate in `doc` (the document itself, or the innermost
/// `certificate` key) and checks it.
///
/// DegreeDrop certificates get their stored inequality checked; when the
/// document also carries `model` and `matrix`, the profile is recomputed
/// and must agree with the stored `d_1` and `d_2`. IrreduciblePicard
/// certificates are rebuilt from their word.
pub fn verify_document(doc: &Value, tol: &BigRational) -> Result<VerifyReport> {
    let mut node = doc;
    while let Some(inner) = node.get("certificate") {
        if inner.is_null() {
            return Err(Error::InvalidInput(
                "document carries no certificate".into(),
            ));
        }
        node = inner;
    }
    if let Some(reason) = node.get("reason").and_then(Value::as_str) {
        return Err(Error::InvalidInput(format!(
            "no certificate was issued: {reason}"
        )));
    }
    let cert = PrimitivityCertificate::from_json(node)?;
    let mut checks = Vec::new();
    match cert.criterion {
        Criterion::DegreeDrop => {
            checks.push((
                "d1.lo > d2.hi and d1.lo > 1".to_string(),
                cert.degree_drop_holds(),
            ));
            if let (Some(model), Some(matrix)) = (doc.get("model"), doc.get("matrix")) {
                let m = json::matrix_from_value(matrix)?;
                let profile = match model.as_str() {
                    Some("abelian") => abelian_profile(&m, tol)?,
                    Some("monomial") | Some("cremona") => monomial_profile(&m, tol)?,
                    other => {
                        return Err(Error::Parse(format!("unknown model {other:?}")));
                    }
                };
                checks.push((
                    "recomputed d1 meets stored d1".to_string(),
                    profile.d(1).intersects(&cert.d1),
                ));
                let d2_ok = cert
                    .d2
                    .as_ref()
                    .is_some_and(|d2| profile.d(2).intersects(d2));
                checks.push(("recomputed d2 meets stored d2".to_string(), d2_ok));
            }
        }
        Criterion::IrreduciblePicard => {
            checks.push((
                "word rebuilds an irreducible full-degree Salem element".to_string(),
                recheck_picard_certificate(&cert)?,
            ));
        }
    }
    Ok(VerifyReport {
        criterion: cert.criterion,
        checks,
    })
}
