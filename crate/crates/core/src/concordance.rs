//! Genus reduction, slice certificates and the tau inequality chain.
//!
//! Given a knot Seifert matrix V whose symmetrization is indefinite, a
//! primitive isotropic z is extended to a symplectic basis P (first row z).
//! V* = P V P^T then has V*[0][0] = z V z^T = 0: the first basis curve has
//! zero framing, so surgery on it in the 4-ball lowers the genus by one.
//! Since V* is congruent to V, [I | P^-1] spans a metabolizer of V ⊕ (-V*),
//! i.e. the difference of the two knots is algebraically slice.

use log::info;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{IntMatrix, MatrixError};
use crate::qform::{
    find_primitive_isotropic, symplectic_completion, BasisChange, IsotropicCertificate, IsotropicSearch,
    NotFoundReason, QformError, QuadForm, SearchBudget,
};
use crate::seifert::{SeifertError, SeifertForm};
use crate::torus::{tau_torus, torus_seifert_matrix, TorusError, TorusKnotParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcordanceError {
    #[error("symmetrized form is not indefinite; no isotropic vector to surger along")]
    DefiniteForm,
    #[error("no isotropic vector found within budget: {0}")]
    BudgetExhausted(String),
    #[error("certificate failed re-verification: {0}")]
    CertificateInvalid(String),
    #[error("metabolizer has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Qform(#[from] QformError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// V together with the isotropic vector, basis change and V* = P V P^T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedFormCertificate {
    pub original: SeifertForm,
    pub iso: IsotropicCertificate,
    pub change: BasisChange,
    pub derived: SeifertForm,
    #[serde(with = "crate::cli::serde_bigint")]
    pub corner: BigInt,
}

impl DerivedFormCertificate {
    /// Genus of the original surface minus one.
    pub fn g4_bound(&self) -> usize {
        self.original.genus() - 1
    }

    /// Re-checks every claim from the stored matrices alone.
    pub fn verify(&self) -> Result<(), ConcordanceError> {
        let fail = |m: &str| Err(ConcordanceError::CertificateInvalid(m.into()));
        let v = &self.original;
        let n = v.dimension();
        if n == 0 {
            return fail("empty Seifert form");
        }
        let q = QuadForm::new(v.symmetrize())?;
        if !self.iso.verify(&q) {
            return fail("isotropic vector does not check out");
        }
        let p = self.change.matrix();
        if p.rows() != n || !p.det()?.is_one() {
            return fail("basis change is not unimodular of determinant 1");
        }
        if p.row(0) != self.iso.z.entries() {
            return fail("first row of P is not z");
        }
        let j = v.intersection_form()?;
        if p.congruence(&j)? != IntMatrix::standard_symplectic(n) {
            return fail("P (V - V^T) P^T is not the standard symplectic form");
        }
        if &p.congruence(v.matrix())? != self.derived.matrix() {
            return fail("V* differs from P V P^T");
        }
        if self.derived.matrix().get(0, 0) != &self.corner || !self.corner.is_zero() {
            return fail("corner entry of V* is not 0");
        }
        Ok(())
    }
}

/// W = V ⊕ (-V*) with a half-rank sublattice on which W vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCertificate {
    pub sum_form: SeifertForm,
    pub metabolizer: IntMatrix,
}

impl SliceCertificate {
    pub fn verify(&self) -> Result<bool, ConcordanceError> {
        verify_metabolizer(&self.sum_form, &self.metabolizer)
    }
}

/// Runs the isotropic search and symplectic completion on V.
pub fn derive_reduced_form(v: &SeifertForm, budget: &SearchBudget) -> Result<DerivedFormCertificate, ConcordanceError> {
    let j = v.intersection_form()?;
    let q = QuadForm::new(v.symmetrize())?;
    if !q.is_indefinite() {
        return Err(ConcordanceError::DefiniteForm);
    }
    let iso = match find_primitive_isotropic(&q, budget) {
        Ok(IsotropicSearch::Found(c)) => c,
        Ok(IsotropicSearch::NotFound {
            reason: NotFoundReason::Definite,
            ..
        }) => return Err(ConcordanceError::DefiniteForm),
        Ok(IsotropicSearch::NotFound { radius, .. }) => {
            return Err(ConcordanceError::BudgetExhausted(format!(
                "no isotropic vector of sup-norm <= {radius}"
            )))
        }
        Err(QformError::BudgetExhausted { radius, elapsed }) => {
            return Err(ConcordanceError::BudgetExhausted(format!(
                "time limit hit at radius {radius} after {:.1}s",
                elapsed.as_secs_f64()
            )))
        }
        Err(e) => return Err(e.into()),
    };
    info!("isotropic vector {} at radius {}", iso.z, iso.search_radius_used);
    let change = symplectic_completion(&j, &iso.z)?;
    let derived = v
        .congruence_transform(change.matrix())?
        .with_label(format!("{}*", v.label()));
    let corner = derived.matrix().get(0, 0).clone();
    let cert = DerivedFormCertificate {
        original: v.clone(),
        iso,
        change,
        derived,
        corner,
    };
    cert.verify()?;
    Ok(cert)
}

/// W = V ⊕ (-V*) and M = [I | P^-1].
pub fn build_slice_certificate(cert: &DerivedFormCertificate) -> Result<SliceCertificate, ConcordanceError> {
    cert.verify()?;
    slice_certificate_from_change(&cert.original, cert.change.matrix())
}

/// W = V ⊕ (-P V P^T) and M = [I | P^-1] for any unimodular P.
pub fn slice_certificate_from_change(v: &SeifertForm, p: &IntMatrix) -> Result<SliceCertificate, ConcordanceError> {
    let v_star = v.congruence_transform(p)?;
    let p_inv = p.inverse_unimodular()?;
    let slice = SliceCertificate {
        sum_form: v.connected_sum(&v_star.concordance_inverse()),
        metabolizer: IntMatrix::identity(v.dimension()).hstack(&p_inv)?,
    };
    if !slice.verify()? {
        return Err(ConcordanceError::CertificateInvalid(
            "[I | P^-1] does not metabolize V ⊕ (-V*)".into(),
        ));
    }
    Ok(slice)
}

/// True iff M W M^T = 0 and the rows of M span a primitive sublattice.
pub fn verify_metabolizer(w: &SeifertForm, m: &IntMatrix) -> Result<bool, ConcordanceError> {
    let n = w.dimension();
    let half = n / 2;
    if m.cols() != n {
        return Err(ConcordanceError::Matrix(MatrixError::ShapeMismatch {
            left: (m.rows(), m.cols()),
            right: (n, n),
        }));
    }
    let rank = m.rank();
    if rank != half || m.rows() != half {
        return Err(ConcordanceError::RankMismatch {
            expected: half,
            found: rank,
        });
    }
    if !m.congruence(w.matrix())?.is_zero() {
        return Ok(false);
    }
    Ok(m.smith_invariants().iter().all(One::is_one))
}

/// ceil(|sigma| / 2).
pub fn g4_lower_bound_signature(v: &SeifertForm) -> i64 {
    (v.signature().abs() + 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    SummandEstablished,
    Inconclusive,
}

/// Facts about tau taken as given, not computed here.
pub const TAU_ASSUMPTIONS: [&str; 3] = [
    "tau is a concordance homomorphism to Z: tau(K # L) = tau(K) + tau(L) and tau(-K) = -tau(K)",
    "|tau(K)| <= g4(K) for every knot K",
    "tau(T(p,q)) = (p-1)(q-1)/2 for the positive (p,q)-torus knot",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauChainReport {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "tau_T")]
    pub tau_t: i64,
    #[serde(rename = "genus_T")]
    pub genus_t: i64,
    pub g4_star_bound: i64,
    pub tau_difference_lower_bound: i64,
    pub conclusion: Conclusion,
    pub reason: String,
    pub signature_g4_bound: i64,
    pub assumptions: Vec<String>,
    pub derived: Option<DerivedFormCertificate>,
    pub slice: Option<SliceCertificate>,
}

impl TauChainReport {
    /// The arithmetic identities plus re-verification of any certificates.
    pub fn verify(&self) -> Result<(), ConcordanceError> {
        let fail = |m: &str| Err(ConcordanceError::CertificateInvalid(m.into()));
        let params = TorusKnotParams::new(self.p, self.q)?;
        if self.tau_t != tau_torus(self.p, self.q)? || self.genus_t != params.genus() as i64 {
            return fail("tau_T or genus_T does not match the torus knot");
        }
        if self.tau_difference_lower_bound != self.tau_t - self.g4_star_bound {
            return fail("lower bound is not tau_T - g4_star_bound");
        }
        let established = self.tau_difference_lower_bound >= 1;
        if established != (self.conclusion == Conclusion::SummandEstablished) {
            return fail("conclusion does not follow from the lower bound");
        }
        match (&self.derived, &self.slice) {
            (Some(d), Some(s)) => {
                d.verify()?;
                if !s.verify()? {
                    return fail("slice certificate does not verify");
                }
                let v = torus_seifert_matrix(self.p, self.q)?;
                if d.original.matrix() != v.matrix() {
                    return fail("certificate is not for this torus knot");
                }
                if self.g4_star_bound != d.g4_bound() as i64 {
                    return fail("g4_star_bound does not match the certificate");
                }
            }
            (None, None) => {
                if self.g4_star_bound != self.genus_t {
                    return fail("without a certificate the only bound is the genus");
                }
            }
            _ => return fail("derived and slice certificates must come together"),
        }
        Ok(())
    }
}

/// The full argument for T(p, q): tau(T) = g, T* has g4 <= g - 1, so
/// tau(T # -T*) >= 1 while T # -T* is algebraically slice.
pub fn tau_chain_report(p: u64, q: u64, budget: &SearchBudget) -> Result<TauChainReport, ConcordanceError> {
    let params = TorusKnotParams::new(p, q)?;
    let v = torus_seifert_matrix(p, q)?;
    let tau_t = tau_torus(p, q)?;
    let genus_t = params.genus() as i64;
    let outcome = if params.is_unknot() {
        Err("the unknot has genus 0; nothing to reduce".to_string())
    } else {
        match derive_reduced_form(&v, budget) {
            Ok(d) => build_slice_certificate(&d).map(|s| (d, s)).map_err(|e| e.to_string()),
            Err(e @ (ConcordanceError::DefiniteForm | ConcordanceError::BudgetExhausted(_))) => Err(e.to_string()),
            Err(e) => return Err(e),
        }
    };
    let (g4_star_bound, derived, slice, reason) = match outcome {
        Ok((d, s)) => {
            let bound = d.g4_bound() as i64;
            let reason = format!(
                "V*[0][0] = 0 in a symplectic basis, so g4(T*) <= {bound}; tau(T # -T*) >= {tau_t} - {bound}; T # -T* is algebraically slice"
            );
            (bound, Some(d), Some(s), reason)
        }
        Err(reason) => (genus_t, None, None, reason),
    };
    let lower = tau_t - g4_star_bound;
    let conclusion = if lower >= 1 {
        Conclusion::SummandEstablished
    } else {
        Conclusion::Inconclusive
    };
    let report = TauChainReport {
        p: params.p(),
        q: params.q(),
        tau_t,
        genus_t,
        g4_star_bound,
        tau_difference_lower_bound: lower,
        conclusion,
        reason,
        signature_g4_bound: g4_lower_bound_signature(&v),
        assumptions: TAU_ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        derived,
        slice,
    };
    report.verify()?;
    Ok(report)
}
