#![allow(dead_code)]

use knotsplit::{IntMatrix, IntVector, SeifertForm};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()))
}

pub fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

/// V = S + U with S symmetric and U the upper half of J_std, so that
/// V - V^T = J_std is unimodular.
pub fn random_seifert<R: Rng>(rng: &mut R, genus: usize, spread: i64) -> SeifertForm {
    let n = 2 * genus;
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = BigInt::from(rng.gen_range(-spread..=spread));
            v.set(i, j, x.clone());
            v.set(j, i, x);
        }
    }
    for k in 0..genus {
        let e = v.get(2 * k, 2 * k + 1) + 1;
        v.set(2 * k, 2 * k + 1, e);
    }
    SeifertForm::new(v, "random").unwrap()
}

/// Product of random elementary operations; determinant +-1.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n == 0 {
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 if i != j => {
                let mut rows = p.to_rows();
                rows.swap(i, j);
                p = IntMatrix::from_row_vecs(rows, n).unwrap();
            }
            1 => {
                let mut rows = p.to_rows();
                rows[i] = rows[i].iter().map(|x| -x).collect();
                p = IntMatrix::from_row_vecs(rows, n).unwrap();
            }
            _ if i != j => {
                let k = rng.gen_range(-2i64..=2);
                let mut rows = p.to_rows();
                let add: Vec<BigInt> = rows[j].iter().map(|x| x * k).collect();
                for (a, b) in rows[i].iter_mut().zip(add) {
                    *a += b;
                }
                p = IntMatrix::from_row_vecs(rows, n).unwrap();
            }
            _ => {}
        }
    }
    p
}

/// Unimodular of determinant exactly +1 preserving J_std: a product of
/// symplectic transvections x -> x + k (x J v^T) v.
pub fn random_symplectic<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let j = IntMatrix::standard_symplectic(n);
    let mut p = IntMatrix::identity(n);
    for _ in 0..steps {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let v = IntVector::from_i64s(&v);
        let k = rng.gen_range(-1i64..=1);
        // T = I + k J v^T v
        let jv = j.try_mul(&v.as_row_matrix().transpose()).unwrap();
        let t = &IntMatrix::identity(n) + &scale(&jv.try_mul(&v.as_row_matrix()).unwrap(), k);
        p = t.try_mul(&p).unwrap();
    }
    p
}

pub fn scale(m: &IntMatrix, k: i64) -> IntMatrix {
    IntMatrix::new(m.rows(), m.cols(), m.entries().iter().map(|x| x * k).collect()).unwrap()
}

/// Every nonzero vector with entries in [-r, r] whose first nonzero
/// entry is positive, in lexicographic order.
pub fn box_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut z = vec![-r; n];
    loop {
        if let Some(&first) = z.iter().find(|&&x| x != 0) {
            if first > 0 {
                out.push(z.clone());
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if z[k] < r {
                z[k] += 1;
                break;
            }
            z[k] = -r;
        }
    }
}

pub fn quad(q: &[Vec<i64>], z: &[i64]) -> i64 {
    let n = z.len();
    (0..n).map(|i| (0..n).map(|j| z[i] * q[i][j] * z[j]).sum::<i64>()).sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Canonical isotropic vector by exhaustive search: smallest sup-norm,
/// then lexicographically greatest, first nonzero entry positive.
pub fn brute_force_isotropic(q: &[Vec<i64>], max_norm: i64) -> Option<Vec<i64>> {
    let n = q.len();
    for r in 1..=max_norm {
        let best = box_vectors(n, r)
            .into_iter()
            .filter(|z| z.iter().map(|x| x.abs()).max() == Some(r))
            .filter(|z| z.iter().fold(0, |g, &x| gcd(g, x)) == 1)
            .filter(|z| quad(q, z) == 0)
            .max();
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Signature of (1 - w) V + (1 - conj w) V^T at w = exp(2 pi i x) in
/// floating point, via the real 2n x 2n form [[A, -B], [B, A]] whose
/// signature is twice that of A + iB. None if an eigenvalue is near zero.
pub fn float_tristram_levine(v: &[Vec<i64>], x: f64) -> Option<i64> {
    let n = v.len();
    let (c, s) = (
        (2.0 * std::f64::consts::PI * x).cos(),
        (2.0 * std::f64::consts::PI * x).sin(),
    );
    // (1 - w) = (1 - c) - i s
    let re = |i: usize, j: usize| (1.0 - c) * (v[i][j] + v[j][i]) as f64;
    let im = |i: usize, j: usize| -s * (v[i][j] - v[j][i]) as f64;
    let mut r = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            r[i][j] = re(i, j);
            r[i + n][j + n] = re(i, j);
            r[i][j + n] = -im(i, j);
            r[i + n][j] = im(i, j);
        }
    }
    let eig = jacobi_eigenvalues(r);
    if eig.iter().any(|e| e.abs() < 1e-7) {
        return None;
    }
    let pos = eig.iter().filter(|&&e| e > 0.0).count() as i64;
    Some((2 * pos - 2 * n as i64) / 2)
}
