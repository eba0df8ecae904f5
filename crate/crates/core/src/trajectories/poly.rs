//! Dense univariate polynomials in a shifted monomial basis.
//!
//! A [`Poly`] stores `c_0 + c_1 (t - o) + ... + c_s (t - o)^s` where `o` is the
//! origin. Keeping the origin explicit avoids catastrophic cancellation for
//! trajectories centred far away from `t = 0` (the rational bump family lives
//! around `t = 10 i s / 4`).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<f64>,
    #[serde(default)]
    pub origin: f64,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs, origin: 0.0 }
    }

    pub fn with_origin(coeffs: Vec<f64>, origin: f64) -> Self {
        Self { coeffs, origin }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// Degree after ignoring trailing exact zeros; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let x = t - self.origin;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = if self.coeffs.len() <= 1 {
            vec![0.0]
        } else {
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect()
        };
        Poly::with_origin(coeffs, self.origin)
    }

    /// Re-expands the polynomial around a new origin (Taylor shift).
    pub fn shifted(&self, origin: f64) -> Poly {
        let h = origin - self.origin;
        if h == 0.0 {
            return self.clone();
        }
        // Repeated synthetic division by (x - h).
        let mut c = self.coeffs.clone();
        let len = c.len();
        for i in 0..len {
            for j in (i..len.saturating_sub(1)).rev() {
                c[j] += h * c[j + 1];
            }
        }
        Poly::with_origin(c, origin)
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::with_origin(self.coeffs.iter().map(|c| c * s).collect(), self.origin)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let other = other.shifted(self.origin);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(0.0)
                    + other.coeffs.get(k).copied().unwrap_or(0.0)
            })
            .collect();
        Poly::with_origin(coeffs, self.origin)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let other = other.shifted(self.origin);
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::with_origin(coeffs, self.origin)
    }

    /// All real roots in `[a, b]`, ascending.
    ///
    /// Roots of the derivative split the interval into monotone pieces; each
    /// piece holds at most one root, located by bisection to full precision.
    /// Roots of even multiplicity are reported only if the polynomial
    /// evaluates to exactly zero at the critical point.
    pub fn real_roots_in(&self, a: f64, b: f64) -> Vec<f64> {
        let mut roots = Vec::new();
        if a > b || self.is_zero() {
            return roots;
        }
        let deg = self.degree();
        if deg == 0 {
            return roots;
        }
        let mut knots = vec![a];
        if deg >= 2 {
            knots.extend(
                self.derivative()
                    .real_roots_in(a, b)
                    .into_iter()
                    .filter(|&x| x > a && x < b),
            );
        }
        knots.push(b);
        for w in knots.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (flo, fhi) = (self.eval(lo), self.eval(hi));
            if flo == 0.0 {
                push_unique(&mut roots, lo);
            } else if fhi != 0.0 && (flo < 0.0) != (fhi < 0.0) {
                let up = fhi > 0.0;
                push_unique(&mut roots, bisect(|x| (self.eval(x) >= 0.0) == up, lo, hi));
            }
        }
        if self.eval(b) == 0.0 {
            push_unique(&mut roots, b);
        }
        roots
    }

    /// Critical points of the polynomial strictly inside `(a, b)`.
    pub fn critical_points_in(&self, a: f64, b: f64) -> Vec<f64> {
        self.derivative()
            .real_roots_in(a, b)
            .into_iter()
            .filter(|&x| x > a && x < b)
            .collect()
    }
}

fn push_unique(v: &mut Vec<f64>, x: f64) {
    if v.last().is_none_or(|&l| l != x) {
        v.push(x);
    }
}

/// Smallest point (to machine precision) in `[lo, hi]` where the monotone
/// predicate flips to true. Assumes `pred(hi)`; returns `hi` of the final bracket.
pub(crate) fn bisect(mut pred: impl FnMut(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Chebyshev polynomial of the first kind `T_s(y)` in the monomial basis of `y`.
pub fn chebyshev_coeffs(s: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if s == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..s {
        let mut next = vec![0.0; cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += 2.0 * c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn shift_preserves_values() {
        let p = Poly::new(vec![1.0, -2.0, 0.5, 3.0]);
        let q = p.shifted(1.7);
        for &t in &[-1.0, 0.0, 0.3, 2.5] {
            assert_abs_diff_eq!(p.eval(t), q.eval(t), epsilon = 1e-12);
        }
    }

    #[test]
    fn chebyshev_recurrence() {
        assert_eq!(chebyshev_coeffs(3), vec![0.0, -3.0, 0.0, 4.0]);
        assert_eq!(chebyshev_coeffs(4), vec![1.0, 0.0, -8.0, 0.0, 8.0]);
    }

    #[test]
    fn roots_of_cubic() {
        // (t - 0.1)(t - 0.5)(t - 0.9)
        let p = Poly::new(vec![-0.045, 0.59, -1.5, 1.0]);
        let r = p.real_roots_in(0.0, 1.0);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([0.1, 0.5, 0.9]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn roots_outside_interval_ignored() {
        let p = Poly::new(vec![-4.0, 0.0, 1.0]);
        assert!(p.real_roots_in(-1.0, 1.0).is_empty());
        assert_eq!(p.real_roots_in(0.0, 3.0).len(), 1);
    }

    #[test]
    fn product_and_derivative() {
        let a = Poly::with_origin(vec![1.0, 1.0], 2.0);
        let b = Poly::new(vec![0.0, 3.0]);
        let c = a.mul(&b);
        assert_abs_diff_eq!(c.eval(1.5), a.eval(1.5) * b.eval(1.5), epsilon = 1e-12);
        assert_abs_diff_eq!(c.derivative().eval(0.7), 3.0 * (2.0 * 0.7 - 1.0), epsilon = 1e-12);
    }
}
