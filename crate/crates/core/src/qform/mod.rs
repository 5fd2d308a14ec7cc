//! Integral quadratic forms: indefiniteness, isotropic vectors, and
//! symplectic bases for the skew intersection form.

mod search;
mod symplectic;

use std::time::Duration;

use log::debug;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{InertiaTriple, IntMatrix, IntVector, MatrixError};

pub use symplectic::symplectic_completion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QformError {
    #[error("quadratic form matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("skew form is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("size mismatch: expected length {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("skew form has Pfaffian -1; no basis change of determinant +1 reaches the standard form")]
    OrientationMismatch,
    #[error("basis change must have determinant +1 (det = {det})")]
    NotPositiveUnimodular { det: BigInt },
    #[error("search budget exhausted at radius {radius} after {elapsed:?}")]
    BudgetExhausted { radius: u64, elapsed: Duration },
    #[error("form entries too large for the bounded search")]
    SearchOverflow,
    #[error("search budget must be positive")]
    InvalidBudget,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Symmetric integer matrix Q, read as the quadratic form x Q x^T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    matrix: IntMatrix,
}

impl QuadForm {
    pub fn new(matrix: IntMatrix) -> Result<Self, QformError> {
        if !matrix.is_symmetric() {
            return Err(QformError::NotSymmetric);
        }
        Ok(QuadForm { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn evaluate(&self, z: &IntVector) -> Result<BigInt, QformError> {
        Ok(z.evaluate(&self.matrix)?)
    }

    pub fn inertia(&self) -> InertiaTriple {
        self.matrix.inertia().expect("symmetric by construction")
    }

    pub fn is_indefinite(&self) -> bool {
        let t = self.inertia();
        t.n_plus > 0 && t.n_minus > 0
    }

    /// Nondegenerate with all eigenvalues of one sign (and nonempty).
    pub fn is_definite(&self) -> bool {
        let t = self.inertia();
        t.n_zero == 0 && (t.n_plus == 0) != (t.n_minus == 0)
    }
}

pub fn is_indefinite(q: &QuadForm) -> bool {
    q.is_indefinite()
}

/// Witness that z Q z^T = 0 for a primitive z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropicCertificate {
    pub z: IntVector,
    #[serde(with = "crate::cli::serde_bigint")]
    pub q_value: BigInt,
    #[serde(with = "crate::cli::serde_bigint")]
    pub gcd: BigInt,
    pub search_radius_used: u64,
}

impl IsotropicCertificate {
    /// Recomputes z Q z^T and gcd(z) against `form`.
    pub fn verify(&self, form: &QuadForm) -> bool {
        self.z.len() == form.dimension()
            && !self.z.is_zero()
            && self.q_value.is_zero()
            && self.gcd.is_one()
            && form.evaluate(&self.z).is_ok_and(|v| v.is_zero())
            && self.z.content().is_one()
    }
}

/// Limits for the isotropic vector search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_sup_norm: u64,
    pub max_seconds: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_sup_norm: 8,
            max_seconds: Duration::from_secs(120),
        }
    }
}

impl SearchBudget {
    pub fn new(max_sup_norm: u64, max_seconds: Duration) -> Result<Self, QformError> {
        if max_sup_norm == 0 || max_seconds.is_zero() {
            return Err(QformError::InvalidBudget);
        }
        Ok(SearchBudget {
            max_sup_norm,
            max_seconds,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotFoundReason {
    /// The form is definite, so only z = 0 is isotropic.
    Definite,
    /// Every vector up to the radius was checked.
    RadiusExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropicSearch {
    Found(IsotropicCertificate),
    NotFound { radius: u64, reason: NotFoundReason },
}

impl IsotropicSearch {
    pub fn certificate(&self) -> Option<&IsotropicCertificate> {
        match self {
            IsotropicSearch::Found(c) => Some(c),
            IsotropicSearch::NotFound { .. } => None,
        }
    }
}

/// Searches for a primitive z with z Q z^T = 0.
///
/// The answer is canonical: among the solutions of smallest sup-norm whose
/// first nonzero entry is positive, the lexicographically greatest. Running
/// out of time is an error; exhausting the radius is a `NotFound`.
pub fn find_primitive_isotropic(q: &QuadForm, budget: &SearchBudget) -> Result<IsotropicSearch, QformError> {
    if budget.max_sup_norm == 0 || budget.max_seconds.is_zero() {
        return Err(QformError::InvalidBudget);
    }
    let witness = search::trivial_witness(q);
    if let Some(w) = &witness {
        debug!("trivial scan found isotropic vector {}", IntVector(w.clone()));
    } else if q.dimension() == 0 || q.is_definite() {
        return Ok(IsotropicSearch::NotFound {
            radius: 0,
            reason: NotFoundReason::Definite,
        });
    }
    match search::search(q, budget)? {
        search::Outcome::Found { z, radius } => {
            let z = IntVector(z.into_iter().map(BigInt::from).collect());
            let cert = IsotropicCertificate {
                q_value: q.evaluate(&z)?,
                gcd: z.content(),
                z,
                search_radius_used: radius,
            };
            debug_assert!(cert.verify(q));
            Ok(IsotropicSearch::Found(cert))
        }
        search::Outcome::Exhausted { radius } => Ok(IsotropicSearch::NotFound {
            radius,
            reason: NotFoundReason::RadiusExhausted,
        }),
    }
}

/// Unimodular integer matrix of determinant +1, acting by V -> P V P^T.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct BasisChange {
    matrix: IntMatrix,
}

impl BasisChange {
    pub fn new(matrix: IntMatrix) -> Result<Self, QformError> {
        let det = matrix.det()?;
        if !det.is_one() {
            return Err(QformError::NotPositiveUnimodular { det });
        }
        Ok(BasisChange { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }
}

impl TryFrom<IntMatrix> for BasisChange {
    type Error = QformError;

    fn try_from(m: IntMatrix) -> Result<Self, Self::Error> {
        BasisChange::new(m)
    }
}

impl From<BasisChange> for IntMatrix {
    fn from(b: BasisChange) -> Self {
        b.matrix
    }
}
