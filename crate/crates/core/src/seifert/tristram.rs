//! Tristram–Levine signatures.
//!
//! For omega = exp(2 pi i a/b) the Hermitian form (1 - omega) V + (1 - conj omega) V^T
//! equals (1 - cos 2 pi a/b) times S + i cot(pi a/b) A, with S = V + V^T and
//! A = V^T - V. The positive scalar does not change inertia, so only the real
//! number cot(pi a/b) enters. It is 0 at omega = -1 and +-1 at omega = +-i,
//! where elimination runs exactly over Q(i). Other roots of unity go through
//! ball arithmetic with a certified enclosure of the cotangent.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{cyclotomic, poly_divrem_monic};
use super::SeifertError;
use crate::exactmat::{hermitian_inertia, GaussRational, InertiaTriple, IntMatrix};

/// A point omega != 1 on the unit circle, given as a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Omega {
    MinusOne,
    I,
    MinusI,
    /// exp(2 pi i numerator/denominator), in lowest terms with
    /// 0 < numerator < denominator.
    RootOfUnity {
        numerator: u64,
        denominator: u64,
    },
}

impl Omega {
    /// exp(2 pi i a/b), normalized. The special values collapse onto their
    /// named variants.
    pub fn root_of_unity(a: i64, b: u64) -> Result<Omega, SeifertError> {
        if b == 0 {
            return Err(SeifertError::InvalidOmega("zero denominator".into()));
        }
        let a = a.rem_euclid(b as i64) as u64;
        if a == 0 {
            return Err(SeifertError::InvalidOmega("omega = 1".into()));
        }
        let g = a.gcd(&b);
        Ok(match (a / g, b / g) {
            (1, 2) => Omega::MinusOne,
            (1, 4) => Omega::I,
            (3, 4) => Omega::MinusI,
            (numerator, denominator) => Omega::RootOfUnity { numerator, denominator },
        })
    }

    /// (a, b) with omega = exp(2 pi i a/b) in lowest terms.
    pub fn as_fraction(&self) -> (u64, u64) {
        match *self {
            Omega::MinusOne => (1, 2),
            Omega::I => (1, 4),
            Omega::MinusI => (3, 4),
            Omega::RootOfUnity { numerator, denominator } => (numerator, denominator),
        }
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega::MinusOne => write!(f, "-1"),
            Omega::I => write!(f, "i"),
            Omega::MinusI => write!(f, "-i"),
            Omega::RootOfUnity { numerator, denominator } => write!(f, "{numerator}/{denominator}"),
        }
    }
}

impl FromStr for Omega {
    type Err = SeifertError;

    /// Accepts "-1", "i", "-i" or "a/b" meaning exp(2 pi i a/b).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeifertError::InvalidOmega(format!("cannot parse omega {s:?}"));
        match s.trim() {
            "-1" => Ok(Omega::MinusOne),
            "i" => Ok(Omega::I),
            "-i" => Ok(Omega::MinusI),
            t => {
                let (a, b) = t.split_once('/').ok_or_else(bad)?;
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                Omega::root_of_unity(a, b)
            }
        }
    }
}

/// Precisions (bits) tried in turn by the certified path.
const PRECISIONS: [u32; 6] = [64, 128, 256, 512, 1024, 2048];

pub(crate) fn tristram_levine(
    v: &IntMatrix,
    omega: Omega,
    alexander_numerator: &[BigInt],
) -> Result<i64, SeifertError> {
    let (a, b) = omega.as_fraction();
    // det of the form vanishes iff omega is a root of det(tV - V^T)
    let (_, rem) = poly_divrem_monic(alexander_numerator, &cyclotomic(b as usize));
    if rem.is_empty() {
        return Err(SeifertError::SingularAtOmega(omega));
    }
    let n = v.rows();
    let sym = v + &v.transpose();
    let anti = &v.transpose() - v;
    let inertia = match omega {
        Omega::MinusOne => sym.inertia().expect("V + V^T is symmetric"),
        Omega::I | Omega::MinusI => {
            let c = if omega == Omega::I { 1 } else { -1 };
            let rows = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|k| {
                            GaussRational::new(
                                BigRational::from_integer(sym.get(r, k).clone()),
                                BigRational::from_integer(anti.get(r, k) * c),
                            )
                        })
                        .collect()
                })
                .collect();
            hermitian_inertia::<GaussRational>(rows)
        }
        Omega::RootOfUnity { .. } => {
            certified_inertia(&sym, &anti, a, b).ok_or(SeifertError::UnsupportedOmega(omega))?
        }
    };
    debug_assert_eq!(inertia.n_zero, 0);
    Ok(inertia.signature())
}

/// Inertia of S + i cot(pi a/b) A using ball arithmetic, escalating
/// precision until every pivot sign is certified.
pub(crate) fn certified_inertia(sym: &IntMatrix, anti: &IntMatrix, a: u64, b: u64) -> Option<InertiaTriple> {
    PRECISIONS.iter().find_map(|&bits| {
        let (lo, hi) = cot_pi_enclosure(a, b, bits)?;
        let g = Grid { bits };
        ball_inertia(sym, anti, &Ball::real_interval(&lo, &hi), &g)
    })
}

/// Fixed-point grid: an integer m stands for m * 2^-bits.
struct Grid {
    bits: u32,
}

impl Grid {
    /// floor(x / 2^bits)
    fn shift_down(&self, x: BigInt) -> BigInt {
        x >> self.bits
    }

    /// ceil(x / 2^bits) for x >= 0
    fn shift_up(&self, x: BigInt) -> BigInt {
        let mask = (BigInt::one() << self.bits) - 1;
        (x + mask) >> self.bits
    }
}

/// Complex disc with center (re + i im) and radius rad, all in units of
/// 2^-bits. The radius bounds the distance to the true value in the
/// |re| + |im| norm, which dominates the Euclidean one.
#[derive(Clone, Debug)]
struct Ball {
    re: BigInt,
    im: BigInt,
    rad: BigInt,
}

impl Ball {
    fn zero() -> Self {
        Ball {
            re: BigInt::zero(),
            im: BigInt::zero(),
            rad: BigInt::zero(),
        }
    }

    fn real_interval(lo: &BigInt, hi: &BigInt) -> Self {
        let sum = lo + hi;
        let re = sum.div_floor(&BigInt::from(2));
        Ball {
            rad: (hi - lo + 1u32).div_ceil(&BigInt::from(2)) + 1u32,
            re,
            im: BigInt::zero(),
        }
    }

    fn abs_upper(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    fn abs_lower(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    fn is_certainly_nonzero(&self) -> bool {
        self.abs_lower() > self.rad
    }

    /// Sign of the real part when certified.
    fn real_sign(&self) -> Option<i8> {
        if self.re > self.rad {
            Some(1)
        } else if -&self.re > self.rad {
            Some(-1)
        } else {
            None
        }
    }

    fn sub(&self, o: &Ball) -> Ball {
        Ball {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            rad: &self.rad + &o.rad,
        }
    }

    fn add(&self, o: &Ball) -> Ball {
        Ball {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
        }
    }

    fn mul(&self, o: &Ball, g: &Grid) -> Ball {
        let re = g.shift_down(&self.re * &o.re - &self.im * &o.im);
        let im = g.shift_down(&self.re * &o.im + &self.im * &o.re);
        let err = self.abs_upper() * &o.rad + o.abs_upper() * &self.rad + &self.rad * &o.rad;
        // two floors, one ulp each
        Ball {
            re,
            im,
            rad: g.shift_up(err) + 2u32,
        }
    }

    fn recip(&self, g: &Grid) -> Option<Ball> {
        let lower = self.abs_lower();
        if lower <= self.rad {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        let two_bits = 2 * g.bits;
        let re = (&self.re << two_bits).div_floor(&norm);
        let im = (-&self.im << two_bits).div_floor(&norm);
        // |1/z - 1/w| <= r / (|w| (|w| - r)) in the Euclidean norm, with
        // |w| >= lower; the factor 2 converts to the |re| + |im| norm
        let rad = (&self.rad << (two_bits + 1)).div_ceil(&(&lower * (&lower - &self.rad)));
        Some(Ball {
            re,
            im,
            rad: rad + 2u32,
        })
    }

    fn conj(&self) -> Ball {
        Ball {
            re: self.re.clone(),
            im: -self.im.clone(),
            rad: self.rad.clone(),
        }
    }
}

fn ball_inertia(sym: &IntMatrix, anti: &IntMatrix, cot: &Ball, g: &Grid) -> Option<InertiaTriple> {
    let n = sym.rows();
    let mut a: Vec<Vec<Ball>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|k| {
                    let t = anti.get(r, k);
                    // S + i cot A, exact up to the radius of cot
                    Ball {
                        re: sym.get(r, k) << g.bits,
                        im: &cot.re * t,
                        rad: &cot.rad * t.abs(),
                    }
                })
                .collect()
        })
        .collect();
    let mut out = InertiaTriple::new(0, 0, 0);
    while !a.is_empty() {
        let m = a.len();
        let pivot = (0..m)
            .filter_map(|i| a[i][i].real_sign().map(|s| (i, s)))
            .max_by_key(|&(i, _)| a[i][i].re.abs() - &a[i][i].rad);
        if let Some((p, sign)) = pivot {
            if sign > 0 {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            let inv = a[p][p].recip(g)?;
            let keep: Vec<usize> = (0..m).filter(|&i| i != p).collect();
            a = keep
                .iter()
                .map(|&r| {
                    let f = a[r][p].mul(&inv, g);
                    keep.iter().map(|&c| a[r][c].sub(&f.mul(&a[p][c], g))).collect()
                })
                .collect();
            continue;
        }
        // 2x2 pivot block with certified negative determinant
        let (i, j, binv) = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j].is_certainly_nonzero())
            .find_map(|(i, j)| {
                let det = a[i][i].mul(&a[j][j], g).sub(&a[i][j].mul(&a[i][j].conj(), g));
                if det.real_sign()? >= 0 {
                    return None;
                }
                let d = det.recip(g)?;
                let binv = [
                    [a[j][j].mul(&d, g), Ball::zero().sub(&a[i][j].mul(&d, g))],
                    [Ball::zero().sub(&a[j][i].mul(&d, g)), a[i][i].mul(&d, g)],
                ];
                Some((i, j, binv))
            })?;
        out.n_plus += 1;
        out.n_minus += 1;
        let idx = [i, j];
        let keep: Vec<usize> = (0..m).filter(|&k| k != i && k != j).collect();
        a = keep
            .iter()
            .map(|&r| {
                // row r of A_{r,block} B^{-1}
                let left: Vec<Ball> = (0..2)
                    .map(|t| a[r][idx[0]].mul(&binv[0][t], g).add(&a[r][idx[1]].mul(&binv[1][t], g)))
                    .collect();
                keep.iter()
                    .map(|&c| {
                        let corr = left[0].mul(&a[idx[0]][c], g).add(&left[1].mul(&a[idx[1]][c], g));
                        a[r][c].sub(&corr)
                    })
                    .collect()
            })
            .collect();
    }
    Some(out)
}

/// Integer bounds lo <= 2^bits cot(pi a/b) <= hi with hi - lo small.
///
/// cos(pi a/b) is a simple root of the Chebyshev polynomial U_{b-1}; a
/// floating-point estimate gives a bracket whose sign change is checked
/// exactly, then bisection narrows it. cot = c / sqrt(1 - c^2) is increasing
/// in c, so bounds on c map to bounds on cot.
pub(crate) fn cot_pi_enclosure(a: u64, b: u64, bits: u32) -> Option<(BigInt, BigInt)> {
    if b < 2 || a == 0 || a >= b {
        return None;
    }
    let theta = std::f64::consts::PI * a as f64 / b as f64;
    let approx = theta.cos();
    // neighbouring roots cos(pi (a +- 1)/b) bound how wide the bracket may be
    let step = std::f64::consts::PI / b as f64;
    let gap = ((theta - step).cos() - approx)
        .abs()
        .min((approx - (theta + step).cos()).abs());
    let half = gap / 8.0;
    if !(half > 1e-12) {
        return None;
    }
    // c is held as an integer at scale 2^k; the extra bits absorb the
    // blow-up of c / sqrt(1 - c^2) near |c| = 1
    let k = 2 * bits + 16;
    let to_fixed = |x: f64| -> Option<BigInt> {
        let r = BigRational::from_float(x)?;
        Some((r * BigRational::from_integer(BigInt::one() << k)).floor().to_integer())
    };
    let mut lo = to_fixed(approx - half)?;
    let mut hi = to_fixed(approx + half)? + 1u32;
    let n = b as usize - 1;
    let s_lo = chebyshev_u_sign(n, &lo, k);
    let s_hi = chebyshev_u_sign(n, &hi, k);
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return None;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1u32;
        let s = chebyshev_u_sign(n, &mid, k);
        if s == 0 {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // 2^bits * sign(c) sqrt(c^2 / (1 - c^2)) for c = m / 2^k, rounded outward
    let g = |m: &BigInt, up: bool| -> BigInt {
        let one = BigInt::one() << (2 * k);
        let num = (m * m) << (2 * bits);
        let den = one - m * m;
        let q = num.div_floor(&den);
        let root = q.sqrt();
        let (down, upv) = (root.clone(), root + 1u32);
        if m.is_negative() {
            -(if up { down } else { upv })
        } else if up {
            upv
        } else {
            down
        }
    };
    Some((g(&lo, false), g(&hi, true)))
}

/// Sign of U_n(m / 2^k), exactly: P_j = 2^{jk} U_j(x) satisfies
/// P_{j+1} = 2m P_j - 2^{2k} P_{j-1}.
fn chebyshev_u_sign(n: usize, m: &BigInt, k: u32) -> i8 {
    let two_m: BigInt = m << 1u32;
    let (mut prev, mut cur) = (BigInt::one(), two_m.clone());
    if n == 0 {
        return 1;
    }
    for _ in 1..n {
        let next = &two_m * &cur - (&prev << (2 * k));
        prev = cur;
        cur = next;
    }
    match cur.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}
