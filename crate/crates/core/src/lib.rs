//! Exact Seifert-form computations for torus knots and their algebraic
//! concordance classes.
//!
//! The pipeline: build the Seifert matrix V of a torus knot, find a primitive
//! isotropic vector z of V + V^T, extend z to a symplectic basis of the
//! intersection form V - V^T, and rewrite V in that basis. The new matrix
//! V* has V*[0][0] = 0, which witnesses a genus-reducing surgery, and
//! [I | P^-1] is an explicit metabolizer for V ⊕ (-V*).

pub mod cli;
pub mod concordance;
pub mod exactmat;
pub mod qform;
pub mod seifert;
pub mod torus;

pub use exactmat::{InertiaTriple, IntMatrix, IntVector, MatrixError};
pub use seifert::{LaurentPoly, Omega, SeifertError, SeifertForm};
pub use torus::{tau_torus, torus_alexander_formula, torus_seifert_matrix, torus_signature_count, TorusKnotParams};
