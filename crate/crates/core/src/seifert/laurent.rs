use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer Laurent polynomial `sum c_k t^k`, stored densely from the lowest
/// nonzero exponent. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_exp
    }

    pub fn max_degree(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    /// Difference between the top and bottom exponents (0 for constants).
    pub fn breadth(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.max_degree() - self.min_degree()
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        let k = exp - self.min_exp;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        acc * pow_rat(t, self.min_exp)
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(t)))
    }

    /// `p(t) = p(1/t)`.
    pub fn is_symmetric(&self) -> bool {
        self.is_zero() || (self.min_exp == -self.max_degree() && self.coeffs.iter().eq(self.coeffs.iter().rev()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            min_exp: self.min_exp + by,
            coeffs: self.coeffs.clone(),
        }
    }
}

fn pow_rat(t: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let exp = self.min_exp + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = exp == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match exp {
                0 => {}
                1 => write!(f, "t")?,
                e => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Dense product of coefficient vectors (lowest degree first).
pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division by a monic polynomial; returns (quotient, remainder).
pub(crate) fn poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dlen = den.len();
    assert!(dlen > 0 && den[dlen - 1].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    if rem.len() < dlen {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dlen - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(dlen - 1);
    while rem.last().is_some_and(Zero::is_zero) {
        rem.pop();
    }
    (quot, rem)
}

/// `t^n - 1` as coefficients.
pub(crate) fn t_pow_minus_one(n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n + 1];
    v[0] = -BigInt::one();
    v[n] = BigInt::one();
    v
}

/// The n-th cyclotomic polynomial.
pub(crate) fn cyclotomic(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut p = t_pow_minus_one(n);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = poly_divrem_monic(&p, &cyclotomic(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}

/// Coefficients (lowest first) of the unique polynomial of degree at most
/// `values.len() - 1` through `(k, values[k])` for k = 0, 1, ...
pub(crate) fn interpolate_at_naturals(values: &[BigInt]) -> Vec<BigRational> {
    let n = values.len();
    // Newton divided differences on nodes 0..n
    let mut dd: Vec<BigRational> = values.iter().cloned().map(BigRational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    // expand sum dd[k] * prod_{j<k} (t - j)
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, c) in dd.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        let node = BigRational::from_integer(BigInt::from(k));
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * &node;
        }
        basis = next;
    }
    coeffs
}
