//! Seifert forms and their algebraic concordance invariants.
//!
//! Sign convention: the symmetrization is V + V^T and the knot signature is
//! its signature, which makes positive torus knots negative.

mod laurent;
mod tristram;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactmat::{IntMatrix, MatrixError};

pub use laurent::LaurentPoly;
pub(crate) use laurent::{poly_divrem_monic, poly_mul, t_pow_minus_one};
pub use tristram::Omega;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("Seifert matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("Seifert matrix must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("intersection form V - V^T is not unimodular (det = {det})")]
    NotUnimodularIntersection { det: BigInt },
    #[error("size mismatch: form is {form}x{form}, basis change is {change}x{change}")]
    SizeMismatch { form: usize, change: usize },
    #[error("basis change is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },
    #[error("Hermitian form is singular at omega = {0}")]
    SingularAtOmega(Omega),
    #[error("could not certify the signature at omega = {0}")]
    UnsupportedOmega(Omega),
    #[error("invalid omega: {0}")]
    InvalidOmega(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Square integer matrix of even size 2g, read as the Seifert matrix of a
/// knot, with a free-text label recording where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertForm {
    matrix: IntMatrix,
    label: String,
}

impl SeifertForm {
    pub fn new(matrix: IntMatrix, label: impl Into<String>) -> Result<Self, SeifertError> {
        if !matrix.is_square() {
            return Err(SeifertError::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.rows().is_multiple_of(2) {
            return Err(SeifertError::OddDimension(matrix.rows()));
        }
        Ok(SeifertForm {
            matrix,
            label: label.into(),
        })
    }

    /// The unknot's empty form.
    pub fn unknot() -> Self {
        SeifertForm {
            matrix: IntMatrix::zeros(0, 0),
            label: "unknot".into(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    /// V + V^T.
    pub fn symmetrize(&self) -> IntMatrix {
        &self.matrix + &self.matrix.transpose()
    }

    /// V - V^T, rejected unless it is unimodular.
    pub fn intersection_form(&self) -> Result<IntMatrix, SeifertError> {
        let j = &self.matrix - &self.matrix.transpose();
        let det = j.det()?;
        if !det.abs().is_one() {
            return Err(SeifertError::NotUnimodularIntersection { det });
        }
        Ok(j)
    }

    /// Coefficients of det(tV - V^T), lowest degree first.
    pub(crate) fn alexander_numerator(&self) -> Vec<BigInt> {
        let n = self.dimension();
        let vt = self.matrix.transpose();
        let values: Vec<BigInt> = (0..=n as i64)
            .map(|t| {
                let tv =
                    IntMatrix::new(n, n, self.matrix.entries().iter().map(|x| x * t).collect()).expect("same shape");
                (&tv - &vt).det().expect("square")
            })
            .collect();
        let mut coeffs: Vec<BigInt> = laurent::interpolate_at_naturals(&values)
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        coeffs
    }

    /// det(t^{1/2} V - t^{-1/2} V^T) = t^{-g} det(tV - V^T), with the sign
    /// fixed so that Delta(1) > 0 (or the top coefficient is positive when
    /// Delta(1) = 0). For a knot this gives Delta(1) = 1 and Delta(t) =
    /// Delta(1/t).
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        let g = (self.dimension() / 2) as i64;
        let p = LaurentPoly::new(-g, self.alexander_numerator());
        let at_one = p.eval_int(1);
        let flip = if at_one.is_zero() {
            p.coefficients().last().is_some_and(Signed::is_negative)
        } else {
            at_one.is_negative()
        };
        if flip {
            p.scale(&-BigInt::one())
        } else {
            p
        }
    }

    pub fn signature(&self) -> i64 {
        self.symmetrize().inertia().expect("V + V^T is symmetric").signature()
    }

    pub fn tristram_levine(&self, omega: Omega) -> Result<i64, SeifertError> {
        tristram::tristram_levine(&self.matrix, omega, &self.alexander_numerator())
    }

    /// 0 when Delta(-1) is congruent to +-1 mod 8, else 1.
    pub fn arf_invariant(&self) -> u8 {
        let at_minus_one = self.alexander_polynomial().eval_int(-1);
        debug_assert!(at_minus_one.is_integer());
        let r = at_minus_one.to_integer().mod_floor(&BigInt::from(8));
        if r == BigInt::from(1) || r == BigInt::from(7) {
            0
        } else {
            1
        }
    }

    pub fn genus(&self) -> usize {
        self.dimension() / 2
    }

    pub fn connected_sum(&self, other: &SeifertForm) -> SeifertForm {
        SeifertForm {
            matrix: self.matrix.direct_sum(&other.matrix),
            label: format!("({}) # ({})", self.label, other.label),
        }
    }

    /// -V, the form of the reversed mirror image.
    pub fn concordance_inverse(&self) -> SeifertForm {
        SeifertForm {
            matrix: -&self.matrix,
            label: format!("-({})", self.label),
        }
    }

    /// P V P^T for a unimodular P.
    pub fn congruence_transform(&self, p: &IntMatrix) -> Result<SeifertForm, SeifertError> {
        if !p.is_square() || p.rows() != self.dimension() {
            return Err(SeifertError::SizeMismatch {
                form: self.dimension(),
                change: p.rows().max(p.cols()),
            });
        }
        let det = p.det()?;
        if !det.abs().is_one() {
            return Err(SeifertError::NotUnimodular { det });
        }
        Ok(SeifertForm {
            matrix: p.congruence(&self.matrix)?,
            label: self.label.clone(),
        })
    }
}

/// Free-function forms, mirroring the methods.
pub fn symmetrize(v: &SeifertForm) -> IntMatrix {
    v.symmetrize()
}

pub fn intersection_form(v: &SeifertForm) -> Result<IntMatrix, SeifertError> {
    v.intersection_form()
}

pub fn alexander_polynomial(v: &SeifertForm) -> LaurentPoly {
    v.alexander_polynomial()
}

pub fn knot_signature(v: &SeifertForm) -> i64 {
    v.signature()
}

pub fn tristram_levine(v: &SeifertForm, omega: Omega) -> Result<i64, SeifertError> {
    v.tristram_levine(omega)
}

pub fn arf_invariant(v: &SeifertForm) -> u8 {
    v.arf_invariant()
}

pub fn genus(v: &SeifertForm) -> usize {
    v.genus()
}

pub fn connected_sum(a: &SeifertForm, b: &SeifertForm) -> SeifertForm {
    a.connected_sum(b)
}

pub fn concordance_inverse(v: &SeifertForm) -> SeifertForm {
    v.concordance_inverse()
}

pub fn congruence_transform(v: &SeifertForm, p: &IntMatrix) -> Result<SeifertForm, SeifertError> {
    v.congruence_transform(p)
}
