use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{BasisChange, QformError};
use crate::exactmat::{IntMatrix, IntVector};

/// Extends the primitive vector `z` to a symplectic basis of the unimodular
/// skew form `j`.
///
/// Each round takes the first remaining basis vector e, solves
/// e J w^T = 1 by an extended gcd over the coefficients of e J, and projects
/// the remaining generators onto the J-orthogonal complement of span(e, w)
/// with x -> x - (x J w^T) e + (x J e^T) w. The complement is re-based with
/// integer row reduction and the process repeats.
pub fn symplectic_completion(j: &IntMatrix, z: &IntVector) -> Result<BasisChange, QformError> {
    if !j.is_square() {
        return Err(QformError::NotSkew);
    }
    let n = j.rows();
    if z.len() != n {
        return Err(QformError::SizeMismatch {
            expected: n,
            found: z.len(),
        });
    }
    if !j.is_skew_symmetric() {
        return Err(QformError::NotSkew);
    }
    let det = j.det()?;
    if !det.is_one() {
        return Err(QformError::NotUnimodular { det });
    }
    if j.pfaffian()?.is_negative() {
        // P J P^T = J_std forces det P = 1 / Pf(J)
        return Err(QformError::OrientationMismatch);
    }
    if !z.is_primitive()? {
        return Err(QformError::NotPrimitive);
    }
    // n is even here: odd skew matrices have determinant 0

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut first = z.0.clone();
    // generators of the complement still to be processed
    let mut rest: Vec<Vec<BigInt>> = (0..n).map(|i| unit(n, i)).collect();
    loop {
        let e = IntVector(first);
        let ej = e.times(j)?;
        let mut w = IntVector(bezout_solution(&ej.0).ok_or(QformError::NotPrimitive)?);
        // pull w back into the complement of the pairs already chosen
        for pair in rows.chunks(2) {
            let (f, g) = (IntVector(pair[0].clone()), IntVector(pair[1].clone()));
            w = project(&w, &f, &g, j);
        }
        debug_assert!(e.bilinear(j, &w)?.is_one());
        let projected: Vec<Vec<BigInt>> = rest
            .iter()
            .map(|x| project(&IntVector(x.clone()), &e, &w, j).0)
            .collect();
        rows.push(e.0);
        rows.push(w.0);
        if rows.len() == n {
            break;
        }
        let basis = IntMatrix::from_row_vecs(projected, n)?.row_lattice_basis();
        debug_assert_eq!(basis.rows(), n - rows.len());
        let mut basis = basis.to_rows();
        first = basis.remove(0);
        rest = basis;
    }
    let p = IntMatrix::from_row_vecs(rows, n)?;
    debug_assert!(p.det()?.is_one());
    debug_assert_eq!(p.congruence(j)?, IntMatrix::standard_symplectic(n));
    BasisChange::new(p)
}

/// Component of x J-orthogonal to span(e, w), given e J w^T = 1.
fn project(x: &IntVector, e: &IntVector, w: &IntVector, j: &IntMatrix) -> IntVector {
    let along_e = x.bilinear(j, w).expect("sizes match");
    let along_w = x.bilinear(j, e).expect("sizes match");
    IntVector(
        x.0.iter()
            .zip(&e.0)
            .zip(&w.0)
            .map(|((xi, ei), wi)| xi - &along_e * ei + &along_w * wi)
            .collect(),
    )
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// Integer w with a . w = 1, when gcd(a) = 1.
fn bezout_solution(a: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut w = vec![BigInt::zero(); a.len()];
    // running gcd g = a . w over the prefix processed so far
    let mut g = BigInt::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = ai.clone();
            w[i] = BigInt::one();
            continue;
        }
        let e = g.extended_gcd(ai);
        // e.gcd = e.x * g + e.y * ai
        for wk in w.iter_mut().take(i) {
            *wk *= &e.x;
        }
        w[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for wk in w.iter_mut() {
            *wk = -&*wk;
        }
    }
    g.is_one().then_some(w)
}
