use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Counts of positive, negative and zero eigenvalues of a symmetric or
/// Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl InertiaTriple {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        InertiaTriple {
            n_plus,
            n_minus,
            n_zero,
        }
    }

    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn dimension(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.n_zero == 0
    }
}

/// Exact field scalar usable for Hermitian elimination. Diagonal entries of
/// a Hermitian matrix are real; `real_sign` reads that real part.
pub(crate) trait HermitianScalar:
    Clone
    + Zero
    + One
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn conj(&self) -> Self;
    fn real_sign(&self) -> Ordering;
}

impl HermitianScalar for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn real_sign(&self) -> Ordering {
        self.signum().cmp(&BigRational::zero())
    }
}

/// Element a + bi of Q(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl Add<&GaussRational> for GaussRational {
    type Output = Self;
    fn add(self, rhs: &Self) -> Self {
        GaussRational::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl Sub<&GaussRational> for GaussRational {
    type Output = Self;
    fn sub(self, rhs: &Self) -> Self {
        GaussRational::new(self.re - &rhs.re, self.im - &rhs.im)
    }
}

impl Mul<&GaussRational> for GaussRational {
    type Output = Self;
    fn mul(self, rhs: &Self) -> Self {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&GaussRational> for GaussRational {
    type Output = Self;
    fn div(self, rhs: &Self) -> Self {
        let n = rhs.norm();
        let q = self * &rhs.conj();
        GaussRational::new(q.re / &n, q.im / &n)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl HermitianScalar for GaussRational {
    fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    fn real_sign(&self) -> Ordering {
        self.re.signum().cmp(&BigRational::zero())
    }
}

/// Exact inertia of a Hermitian matrix by congruence elimination.
///
/// Pivots on the first nonzero diagonal entry. When the remaining diagonal
/// is identically zero but some off-diagonal entry h is not, the block
/// [[0, h], [conj h, 0]] is split off (it is a hyperbolic plane, inertia
/// (1, 1, 0)) and the rest is replaced by its Schur complement. A zero
/// remainder contributes its size to the nullity.
pub(crate) fn hermitian_inertia<F: HermitianScalar>(mut a: Vec<Vec<F>>) -> InertiaTriple {
    let mut out = InertiaTriple::new(0, 0, 0);
    loop {
        let n = a.len();
        if n == 0 {
            return out;
        }
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            match a[p][p].real_sign() {
                Ordering::Greater => out.n_plus += 1,
                Ordering::Less => out.n_minus += 1,
                Ordering::Equal => unreachable!("nonzero Hermitian diagonal entry is real"),
            }
            let pivot = a[p][p].clone();
            let keep: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = keep
                .iter()
                .map(|&r| {
                    let f = a[r][p].clone() / &pivot;
                    keep.iter()
                        .map(|&c| a[r][c].clone() - &(f.clone() * &a[p][c]))
                        .collect()
                })
                .collect();
            continue;
        }
        let off = (0..n).find_map(|i| (i + 1..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
        let Some((i, j)) = off else {
            out.n_zero += n;
            return out;
        };
        out.n_plus += 1;
        out.n_minus += 1;
        // inverse of [[0, h], [conj h, 0]] is [[0, 1/conj h], [1/h, 0]]
        let inv_ij = F::one() / &a[j][i];
        let inv_ji = F::one() / &a[i][j];
        let keep: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
        a = keep
            .iter()
            .map(|&r| {
                let left_i = a[r][i].clone() * &inv_ij;
                let left_j = a[r][j].clone() * &inv_ji;
                keep.iter()
                    .map(|&c| {
                        let corr = left_i.clone() * &a[j][c] + &(left_j.clone() * &a[i][c]);
                        a[r][c].clone() - &corr
                    })
                    .collect()
            })
            .collect();
    }
}
