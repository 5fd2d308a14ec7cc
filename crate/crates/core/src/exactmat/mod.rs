//! Exact dense integer linear algebra.
//!
//! Everything here works over unbounded integers (with rationals only as an
//! intermediate in elimination), so no result is ever rounded.

mod inertia;
mod matrix;
mod smith;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use inertia::InertiaTriple;
pub(crate) use inertia::{hermitian_inertia, GaussRational};
pub use matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: BigInt },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("vector is zero")]
    ZeroVector,
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{rows}x{cols} matrix needs {} entries, found {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
}

/// Row vector of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn from_i64s(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    /// gcd of all entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> Result<bool, MatrixError> {
        if self.is_zero() {
            return Err(MatrixError::ZeroVector);
        }
        Ok(self.content().is_one())
    }

    /// `x M y^T`.
    pub fn bilinear(&self, m: &IntMatrix, other: &IntVector) -> Result<BigInt, MatrixError> {
        if m.rows() != self.len() || m.cols() != other.len() {
            return Err(MatrixError::ShapeMismatch {
                left: (1, self.len()),
                right: (m.rows(), m.cols()),
            });
        }
        let mut total = BigInt::zero();
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut acc = BigInt::zero();
            for (j, y) in other.0.iter().enumerate() {
                if !y.is_zero() {
                    acc += m.get(i, j) * y;
                }
            }
            total += x * acc;
        }
        Ok(total)
    }

    /// `x M x^T`.
    pub fn evaluate(&self, m: &IntMatrix) -> Result<BigInt, MatrixError> {
        self.bilinear(m, self)
    }

    /// `x M` as a row vector.
    pub fn times(&self, m: &IntMatrix) -> Result<IntVector, MatrixError> {
        if m.rows() != self.len() {
            return Err(MatrixError::ShapeMismatch {
                left: (1, self.len()),
                right: (m.rows(), m.cols()),
            });
        }
        let out = (0..m.cols())
            .map(|j| self.0.iter().enumerate().map(|(i, x)| x * m.get(i, j)).sum())
            .collect();
        Ok(IntVector(out))
    }

    pub fn as_row_matrix(&self) -> IntMatrix {
        IntMatrix::new(1, self.len(), self.0.clone()).expect("row has len entries")
    }

    pub fn sup_norm(&self) -> BigInt {
        self.0
            .iter()
            .map(|x| x.magnitude().clone())
            .max()
            .map(BigInt::from)
            .unwrap_or_default()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl IntMatrix {
    /// Exact inertia of a symmetric matrix.
    pub fn inertia(&self) -> Result<InertiaTriple, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        if !self.is_symmetric() {
            return Err(MatrixError::NotSymmetric);
        }
        let rows = (0..self.rows())
            .map(|i| self.row(i).iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        Ok(hermitian_inertia(rows))
    }
}

/// Free-function forms of the core operations.
pub fn det(m: &IntMatrix) -> Result<BigInt, MatrixError> {
    m.det()
}

pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix, MatrixError> {
    m.inverse_unimodular()
}

pub fn inertia(s: &IntMatrix) -> Result<InertiaTriple, MatrixError> {
    s.inertia()
}

pub fn is_primitive(z: &IntVector) -> Result<bool, MatrixError> {
    z.is_primitive()
}
