//! Positive torus knots T(p, q): Seifert matrix of the fiber and the closed
//! forms used to check it.

use log::warn;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

use crate::exactmat::IntMatrix;
use crate::seifert::{poly_divrem_monic, poly_mul, t_pow_minus_one, LaurentPoly, SeifertForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("torus knot parameters must be coprime, got ({p}, {q})")]
    NotCoprime { p: u64, q: u64 },
    #[error("torus knot parameters must be positive, got ({p}, {q})")]
    NonPositive { p: u64, q: u64 },
}

/// Coprime positive parameters, stored with p <= q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusKnotParams {
    p: u64,
    q: u64,
}

impl TorusKnotParams {
    pub fn new(p: u64, q: u64) -> Result<Self, TorusError> {
        if p == 0 || q == 0 {
            return Err(TorusError::NonPositive { p, q });
        }
        if p.gcd(&q) != 1 {
            return Err(TorusError::NotCoprime { p, q });
        }
        Ok(TorusKnotParams {
            p: p.min(q),
            q: p.max(q),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// (p-1)(q-1)/2.
    pub fn genus(&self) -> u64 {
        (self.p - 1) * (self.q - 1) / 2
    }
}

/// n x n upper bidiagonal matrix, 1 on the diagonal and -1 above it: the
/// Seifert form of the A_n Milnor fiber (x^{n+1}) up to sign.
fn bidiagonal(n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, BigInt::from(-1));
    }
    m
}

/// Seifert matrix of the fiber surface of T(p, q), of size (p-1)(q-1).
///
/// The fiber of x^p + y^q is the join of p points and q points; its
/// variation form is the tensor product of the two A-type forms, and the
/// Seifert matrix here is the negative of that product. With this sign the
/// positive torus knots get negative signature, T(2, 3) gives
/// [[-1, 1], [0, -1]], and det(V - V^T) = 1. The orientation of the last
/// basis curve is chosen so that the Pfaffian of V - V^T is +1.
pub fn torus_seifert_matrix(p: u64, q: u64) -> Result<SeifertForm, TorusError> {
    let params = TorusKnotParams::new(p, q)?;
    if params.is_unknot() {
        warn!("T({p}, {q}) is the unknot; returning the empty Seifert form");
        return Ok(SeifertForm::unknot().with_label(format!("T({p},{q})")));
    }
    let a = bidiagonal((params.p - 1) as usize);
    let b = bidiagonal((params.q - 1) as usize);
    let mut v = -&a.kronecker(&b);
    let j = &v - &v.transpose();
    if j.pfaffian().expect("skew").is_negative() {
        // reverse the orientation of the last basis curve so that V - V^T
        // is congruent to the standard symplectic form by a det +1 change
        let n = v.rows() - 1;
        for k in 0..n {
            let (r, c) = (-v.get(n, k), -v.get(k, n));
            v.set(n, k, r);
            v.set(k, n, c);
        }
    }
    Ok(SeifertForm::new(v, format!("T({},{})", params.p, params.q)).expect("even square matrix"))
}

/// (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), centered so it is symmetric.
pub fn torus_alexander_formula(p: u64, q: u64) -> Result<LaurentPoly, TorusError> {
    let params = TorusKnotParams::new(p, q)?;
    let (p, q) = (params.p as usize, params.q as usize);
    let num = poly_mul(&t_pow_minus_one(p * q), &t_pow_minus_one(1));
    let den = poly_mul(&t_pow_minus_one(p), &t_pow_minus_one(q));
    // the denominator has leading coefficient 1
    let (quot, rem) = poly_divrem_monic(&num, &den);
    assert!(rem.is_empty(), "torus Alexander quotient is exact");
    Ok(LaurentPoly::new(-(params.genus() as i64), quot))
}

/// Signature of T(p, q) by counting lattice points.
///
/// With s = i/p + j/q for 1 <= i < p, 1 <= j < q, the pairs with
/// 1/2 < s < 3/2 each contribute -1 and the others +1. For coprime p, q the
/// sum s never equals 1/2 or 3/2.
pub fn torus_signature_count(p: u64, q: u64) -> Result<i64, TorusError> {
    let params = TorusKnotParams::new(p, q)?;
    let (p, q) = (params.p as i64, params.q as i64);
    let mut sig = 0i64;
    for i in 1..p {
        for j in 1..q {
            // 2pq * s, compared against pq and 3pq
            let s2 = 2 * (i * q + j * p);
            if s2 > p * q && s2 < 3 * p * q {
                sig -= 1;
            } else {
                sig += 1;
            }
        }
    }
    Ok(sig)
}

/// tau of the positive torus knot, (p-1)(q-1)/2.
pub fn tau_torus(p: u64, q: u64) -> Result<i64, TorusError> {
    Ok(TorusKnotParams::new(p, q)?.genus() as i64)
}
