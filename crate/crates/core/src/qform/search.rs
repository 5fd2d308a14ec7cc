//! Bounded search for primitive isotropic vectors.
//!
//! Radii are tried in increasing order. At a fixed radius R the box
//! [-R, R]^n is walked depth first in coordinate order with values in
//! descending order, so the first solution met at the smallest radius is the
//! lexicographically greatest one of minimal sup-norm. Only vectors whose
//! first nonzero entry is positive are visited (z and -z are both isotropic).

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{QformError, QuadForm, SearchBudget};

pub(crate) enum Outcome {
    Found { z: Vec<i64>, radius: u64 },
    Exhausted { radius: u64 },
}

/// Integer copy of the form plus per-depth bounds on the free block.
struct Searcher<'a> {
    n: usize,
    q: Vec<i64>,
    radius: i64,
    /// bounds on y^T F y over the box, F the trailing block from depth k
    quad_lo: Vec<i64>,
    quad_hi: Vec<i64>,
    /// bounds on the off-diagonal part of y^T F y
    cross_lo: Vec<i64>,
    cross_hi: Vec<i64>,
    start: Instant,
    budget: &'a SearchBudget,
    timed_out: &'a AtomicBool,
}

#[derive(Clone)]
struct Node {
    depth: usize,
    /// x Q x^T restricted to the fixed prefix
    value: i64,
    /// (x Q)_j for the free coordinates j >= depth
    linear: Vec<i64>,
    all_zero: bool,
    hit_radius: bool,
    prefix: Vec<i64>,
}

pub(crate) fn search(form: &QuadForm, budget: &SearchBudget) -> Result<Outcome, QformError> {
    let n = form.dimension();
    let m = form.matrix();
    let max_entry = m.entries().iter().map(|x| x.abs()).max().unwrap_or_default();
    let r = BigInt::from(budget.max_sup_norm);
    // worst case |x Q x^T| over the largest box must fit comfortably in i64
    let worst = &max_entry * BigInt::from(n * n) * &r * &r * BigInt::from(4);
    if worst >= BigInt::from(i64::MAX / 4) {
        return Err(QformError::SearchOverflow);
    }
    let q: Vec<i64> = m.entries().iter().map(|x| x.to_i64().expect("checked above")).collect();
    let start = Instant::now();
    let timed_out = AtomicBool::new(false);
    for radius in 1..=budget.max_sup_norm {
        let searcher = Searcher::new(n, q.clone(), radius as i64, start, budget, &timed_out);
        let found = searcher.run();
        if timed_out.load(Ordering::Relaxed) {
            return Err(QformError::BudgetExhausted {
                radius,
                elapsed: start.elapsed(),
            });
        }
        if let Some(z) = found {
            return Ok(Outcome::Found { z, radius });
        }
    }
    Ok(Outcome::Exhausted {
        radius: budget.max_sup_norm,
    })
}

impl<'a> Searcher<'a> {
    fn new(
        n: usize,
        q: Vec<i64>,
        radius: i64,
        start: Instant,
        budget: &'a SearchBudget,
        timed_out: &'a AtomicBool,
    ) -> Self {
        let mut s = Searcher {
            n,
            q,
            radius,
            quad_lo: vec![0; n + 1],
            quad_hi: vec![0; n + 1],
            cross_lo: vec![0; n + 1],
            cross_hi: vec![0; n + 1],
            start,
            budget,
            timed_out,
        };
        for k in 0..n {
            let (clo, chi) = s.cross_bounds(k);
            s.cross_lo[k] = clo;
            s.cross_hi[k] = chi;
            let diag_lo: i64 = (k..n).map(|j| s.at(j, j).min(0) * radius * radius).sum();
            let diag_hi: i64 = (k..n).map(|j| s.at(j, j).max(0) * radius * radius).sum();
            let (mut lo, mut hi) = (diag_lo + clo, diag_hi + chi);
            if let Some((dlo, dhi)) = s.diagonal_bounds(k) {
                lo = lo.max(dlo);
                hi = hi.min(dhi);
            }
            s.quad_lo[k] = lo;
            s.quad_hi[k] = hi;
        }
        s
    }

    fn at(&self, i: usize, j: usize) -> i64 {
        self.q[i * self.n + j]
    }

    fn cross_bounds(&self, k: usize) -> (i64, i64) {
        let r2 = self.radius * self.radius;
        let mut total = 0;
        for i in k..self.n {
            for j in i + 1..self.n {
                total += 2 * self.at(i, j).abs() * r2;
            }
        }
        (-total, total)
    }

    /// Bounds on y^T F y from F = sum_t d_t (y_t + sum_{s>t} l_ts y_s)^2,
    /// eliminating in coordinate order. None if a zero pivot shows up.
    fn diagonal_bounds(&self, k: usize) -> Option<(i64, i64)> {
        let m = self.n - k;
        let mut a: Vec<Vec<BigRational>> = (k..self.n)
            .map(|i| {
                (k..self.n)
                    .map(|j| BigRational::from_integer(self.at(i, j).into()))
                    .collect()
            })
            .collect();
        let r = BigRational::from_integer(self.radius.into());
        let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
        for t in 0..m {
            let d = a[t][t].clone();
            if d.is_zero() {
                return None;
            }
            // w_t = y_t + sum_{s>t} (a[t][s]/d) y_s, so |w_t| <= R (1 + sum |l_ts|)
            let width: BigRational =
                (t + 1..m).map(|s| (&a[t][s] / &d).abs()).sum::<BigRational>() + BigRational::from_integer(1.into());
            let extent = &width * &r;
            let sq = &extent * &extent * &d;
            if d.is_positive() {
                hi += sq;
            } else {
                lo += sq;
            }
            for i in t + 1..m {
                let f = &a[i][t] / &d;
                for j in t + 1..m {
                    let v = &f * &a[t][j];
                    a[i][j] -= v;
                }
            }
        }
        Some((lo.floor().to_integer().to_i64()?, hi.ceil().to_integer().to_i64()?))
    }

    fn root(&self) -> Node {
        Node {
            depth: 0,
            value: 0,
            linear: vec![0; self.n],
            all_zero: true,
            hit_radius: false,
            prefix: Vec::with_capacity(self.n),
        }
    }

    fn values(&self, node: &Node) -> impl Iterator<Item = i64> {
        let low = if node.all_zero { 0 } else { -self.radius };
        (low..=self.radius).rev()
    }

    fn child(&self, node: &Node, v: i64) -> Node {
        let k = node.depth;
        let mut linear = node.linear.clone();
        for j in k + 1..self.n {
            linear[j] += self.at(k, j) * v;
        }
        let mut prefix = node.prefix.clone();
        prefix.push(v);
        Node {
            depth: k + 1,
            value: node.value + 2 * node.linear[k] * v + self.at(k, k) * v * v,
            linear,
            all_zero: node.all_zero && v == 0,
            hit_radius: node.hit_radius || v.abs() == self.radius,
            prefix,
        }
    }

    fn run(&self) -> Option<Vec<i64>> {
        // fan out over the first two coordinates; find_map_first keeps the
        // sequential order, so the answer does not depend on thread count
        let mut frontier = vec![self.root()];
        for _ in 0..2.min(self.n.saturating_sub(1)) {
            frontier = frontier
                .iter()
                .flat_map(|node| self.values(node).map(move |v| self.child(node, v)).collect::<Vec<_>>())
                .collect();
        }
        frontier.par_iter().find_map_first(|node| {
            let mut node = node.clone();
            self.dfs(&mut node)
        })
    }

    fn out_of_time(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if self.start.elapsed() > self.budget.max_seconds {
            self.timed_out.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn bounds(&self, node: &Node) -> (i64, i64) {
        let k = node.depth;
        let r = self.radius;
        let (mut lo1, mut hi1) = (node.value + self.cross_lo[k], node.value + self.cross_hi[k]);
        let mut lin_abs = 0;
        for j in k..self.n {
            let (glo, ghi) = quadratic_range(self.at(j, j), 2 * node.linear[j], r);
            lo1 += glo;
            hi1 += ghi;
            lin_abs += node.linear[j].abs();
        }
        let lo2 = node.value - 2 * r * lin_abs + self.quad_lo[k];
        let hi2 = node.value + 2 * r * lin_abs + self.quad_hi[k];
        (lo1.max(lo2), hi1.min(hi2))
    }

    fn dfs(&self, node: &mut Node) -> Option<Vec<i64>> {
        let free = self.n - node.depth;
        if free == 0 {
            return (node.value == 0 && node.hit_radius && !node.all_zero).then(|| node.prefix.clone());
        }
        if free == 1 {
            return self.solve_last(node);
        }
        if self.out_of_time() {
            return None;
        }
        let (lo, hi) = self.bounds(node);
        if lo > 0 || hi < 0 {
            return None;
        }
        for v in self.values(node) {
            let mut child = self.child(node, v);
            if let Some(z) = self.dfs(&mut child) {
                return Some(z);
            }
        }
        None
    }

    /// Last coordinate: solve a y^2 + 2 b y + c = 0 directly.
    fn solve_last(&self, node: &Node) -> Option<Vec<i64>> {
        let k = node.depth;
        let (a, b, c) = (self.at(k, k), node.linear[k], node.value);
        let r = self.radius;
        let admissible = |y: i64| {
            y.abs() <= r
                && (!node.all_zero || y > 0)
                && (node.hit_radius || y.abs() == r)
                && a * y * y + 2 * b * y + c == 0
        };
        let mut roots: Vec<i64> = Vec::with_capacity(2);
        if a == 0 {
            if b == 0 {
                if c == 0 {
                    // every y works; take the greatest admissible one
                    roots.extend(
                        (-r..=r)
                            .rev()
                            .filter(|&y| (!node.all_zero || y > 0) && (node.hit_radius || y.abs() == r))
                            .take(1),
                    );
                }
            } else if (-c).is_multiple_of(&(2 * b)) {
                roots.push(-c / (2 * b));
            }
        } else {
            let disc = b * b - a * c;
            if disc >= 0 {
                let s = disc.isqrt();
                if s * s == disc {
                    for num in [-b + s, -b - s] {
                        if num % a == 0 {
                            roots.push(num / a);
                        }
                    }
                }
            }
        }
        let y = roots.into_iter().filter(|&y| admissible(y)).max()?;
        let mut z = node.prefix.clone();
        z.push(y);
        Some(z)
    }
}

/// Min and max of a y^2 + b y over integers y in [-r, r].
fn quadratic_range(a: i64, b: i64, r: i64) -> (i64, i64) {
    let f = |y: i64| a * y * y + b * y;
    let mut lo = f(-r).min(f(r));
    let mut hi = f(-r).max(f(r));
    if a != 0 {
        // vertex at -b / 2a
        let v = -(b as f64) / (2.0 * a as f64);
        for y in [v.floor() as i64, v.ceil() as i64] {
            if (-r..=r).contains(&y) {
                lo = lo.min(f(y));
                hi = hi.max(f(y));
            }
        }
    }
    (lo, hi)
}

/// Zero diagonal entries and isotropic binary subforms, checked before the
/// enumeration. Returns some isotropic vector if one is that easy to see.
pub(crate) fn trivial_witness(form: &QuadForm) -> Option<Vec<BigInt>> {
    let m = form.matrix();
    let n = form.dimension();
    let unit = |i: usize| {
        let mut z = vec![BigInt::zero(); n];
        z[i] = BigInt::from(1);
        z
    };
    if let Some(i) = (0..n).find(|&i| m.get(i, i).is_zero()) {
        return Some(unit(i));
    }
    for i in 0..n {
        for j in i + 1..n {
            // a u^2 + 2 b u v + c v^2 factors over Z iff b^2 - ac is a square
            let (a, b, c) = (m.get(i, i), m.get(i, j), m.get(j, j));
            let disc = b * b - a * c;
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                continue;
            }
            // u/v = (-b + s)/a
            let (u, v) = (-b + &s, a.clone());
            let g = u.gcd(&v);
            let mut z = vec![BigInt::zero(); n];
            z[i] = &u / &g;
            z[j] = &v / &g;
            if z[i].is_negative() || (z[i].is_zero() && z[j].is_negative()) {
                z[i] = -&z[i];
                z[j] = -&z[j];
            }
            return Some(z);
        }
    }
    None
}
