//! Truncated formal power series and dense polynomials over `f64`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{exp, ln};
use crate::{Error, Result};

/// `d_0 + d_1 t + … + d_N t^N`, truncated at order `N`.
///
/// Binary operations work at the smaller of the two orders, so results are
/// exact coefficient-by-coefficient up to that order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// Series from coefficients `d_0..=d_N`. An empty slice is the zero series
    /// of order 0.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut coeffs = coeffs.into();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    /// Zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    /// Constant series `c`.
    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `1`.
    pub fn one(order: usize) -> Self {
        Self::constant(1.0, order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `d_0..=d_N`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `d_k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Same series re-truncated (or zero-padded) to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| self.coeff(k)).collect();
        Self { coeffs }
    }

    /// Evaluates the truncated polynomial at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Derivative of the truncated polynomial evaluated at `t`.
    pub fn eval_derivative(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * t + k as f64 * c)
    }

    /// `c · self`.
    pub fn scale(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|d| d * c).collect(),
        }
    }

    /// `self(c t)`.
    pub fn scale_arg(&self, c: f64) -> Self {
        let mut pow = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|d| {
                let v = d * pow;
                pow *= c;
                v
            })
            .collect();
        Self { coeffs }
    }

    /// `t · self`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        coeffs[1..].copy_from_slice(&self.coeffs[..n]);
        Self { coeffs }
    }

    /// `1 / self`; needs `d_0 ≠ 0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let d0 = self.coeffs[0];
        if d0 == 0.0 {
            return Err(Error::domain("series reciprocal", "constant term is zero"));
        }
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0 / d0;
        for k in 1..=n {
            let s: f64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -s / d0;
        }
        Ok(Self { coeffs: out })
    }

    /// `ln(self)`; needs `d_0 > 0`.
    pub fn ln(&self) -> Result<Self> {
        let d0 = self.coeffs[0];
        if !(d0 > 0.0) {
            return Err(Error::domain(
                "series log",
                "constant term must be positive",
            ));
        }
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        out[0] = ln(d0);
        // self · out' = self'
        for k in 1..=n {
            let s: f64 = (1..k).map(|j| j as f64 * out[j] * self.coeffs[k - j]).sum();
            out[k] = (k as f64 * self.coeffs[k] - s) / (k as f64 * d0);
        }
        Ok(Self { coeffs: out })
    }

    /// `exp(self)`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        out[0] = exp(self.coeffs[0]);
        // out' = self' · out
        for k in 1..=n {
            let s: f64 = (1..=k)
                .map(|j| j as f64 * self.coeffs[j] * out[k - j])
                .sum();
            out[k] = s / k as f64;
        }
        Self { coeffs: out }
    }

    /// `self^r`; needs `d_0 > 0`.
    pub fn pow(&self, r: f64) -> Result<Self> {
        if !(self.coeffs[0] > 0.0) {
            return Err(Error::domain(
                "series pow",
                "constant term must be positive",
            ));
        }
        Ok(self.ln()?.scale(r).exp())
    }

    /// `self(inner(t))`; needs `inner(0) = 0`. The result has the smaller of
    /// the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != 0.0 {
            return Err(Error::domain(
                "series compose",
                "inner series must vanish at 0",
            ));
        }
        let n = self.order().min(inner.order());
        let inner = inner.with_order(n);
        let mut out = Self::zero(n);
        for k in (0..=n).rev() {
            out = &out * &inner;
            out.coeffs[0] += self.coeffs[k];
        }
        Ok(out)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        PowerSeries { coeffs }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(-1.0)
    }
}

/// Dense polynomial `c_0 + c_1 x + …`, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Polynomial from ascending coefficients. Trailing zeros are dropped.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect::<Vec<_>>(),
        )
    }

    /// Antiderivative with the given value at 0.
    pub fn integral(&self, constant: f64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Self::new(coeffs)
    }

    /// `c · self`.
    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect::<Vec<_>>())
    }

    /// Largest absolute coefficient difference.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| crate::math::abs(self.coeff(k) - other.coeff(k)))
            .fold(0.0, f64::max)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| self.coeff(k) + rhs.coeff(k))
                .collect::<Vec<_>>(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| self.coeff(k) - rhs.coeff(k))
                .collect::<Vec<_>>(),
        )
    }
}

/// Exact fraction with `i128` parts, kept in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: i128,
}

const fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    if a < 0 {
        -a
    } else {
        a
    }
}

impl Rational {
    /// Zero.
    pub const ZERO: Self = Self { num: 0, den: 1 };

    /// `num / den`; panics when `den` is zero.
    pub const fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let s = if den < 0 { -1 } else { 1 };
        Self {
            num: s * num / g,
            den: s * den / g,
        }
    }

    /// The integer `n`.
    pub const fn integer(n: i128) -> Self {
        Self { num: n, den: 1 }
    }

    /// Numerator.
    pub const fn numer(self) -> i128 {
        self.num
    }

    /// Denominator, always positive.
    pub const fn denom(self) -> i128 {
        self.den
    }

    /// Nearest `f64`.
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.num * rhs.den - rhs.num * self.den, self.den * rhs.den)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &PowerSeries, b: &[f64], tol: f64) -> bool {
        a.coeffs().iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn geometric_reciprocal() {
        let s = PowerSeries::new([1.0, 1.0, 0.0, 0.0, 0.0]);
        let r = s.reciprocal().unwrap();
        assert!(close(&r, &[1.0, -1.0, 1.0, -1.0, 1.0], 0.0));
        let nu = 5.0;
        let d = PowerSeries::new([1.0, nu - 1.0, 0.0, 0.0])
            .reciprocal()
            .unwrap();
        assert!(close(&d, &[1.0, -4.0, 16.0, -64.0], 0.0));
        assert!(PowerSeries::new([0.0, 1.0]).reciprocal().is_err());
    }

    #[test]
    fn product() {
        let a = PowerSeries::new([1.0, 1.0, 0.0]);
        let b = PowerSeries::new([1.0, -1.0, 0.0]);
        assert_eq!((&a * &b).coeffs(), &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn log_of_one_plus_t() {
        let l = PowerSeries::new([1.0, 1.0, 0.0, 0.0, 0.0]).ln().unwrap();
        assert!(close(&l, &[0.0, 1.0, -0.5, 1.0 / 3.0, -0.25], 1e-15));
        let e = PowerSeries::constant(core::f64::consts::E, 3).ln().unwrap();
        assert!(close(&e, &[1.0, 0.0, 0.0, 0.0], 1e-15));
        assert!(PowerSeries::new([0.0, 1.0]).ln().is_err());
        assert!(PowerSeries::new([-1.0, 1.0]).ln().is_err());
    }

    #[test]
    fn binomial_power() {
        let nu = 5.0;
        let one_minus_t = PowerSeries::new([1.0, -1.0, 0.0, 0.0]);
        assert!(close(
            &one_minus_t.pow(1.0).unwrap(),
            &[1.0, -1.0, 0.0, 0.0],
            1e-15
        ));
        let e = one_minus_t.pow(1.0 / (nu - 1.0)).unwrap();
        // (1 - t)^{1/4} = 1 - t/4 - 3t²/32 - 7t³/128
        assert!(close(&e, &[1.0, -0.25, -3.0 / 32.0, -7.0 / 128.0], 1e-15));
    }

    #[test]
    fn compose_with_geometric() {
        // 1/(1-u) with u = t/(1+t) is 1 + t
        let outer = PowerSeries::new([1.0; 6]);
        let inner = &PowerSeries::t(5)
            * &PowerSeries::new([1.0, 1.0, 0.0, 0.0, 0.0, 0.0])
                .reciprocal()
                .unwrap();
        let c = outer.compose(&inner).unwrap();
        assert!(close(&c, &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0], 1e-14));
        assert!(outer.compose(&PowerSeries::one(5)).is_err());
    }

    #[test]
    fn rational_normalizes() {
        let r = Rational::new(6, -4);
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(
            Rational::new(1, 3) + Rational::new(1, 6),
            Rational::new(1, 2)
        );
        assert_eq!(
            Rational::new(1, 3) * Rational::integer(3),
            Rational::integer(1)
        );
        assert_eq!(
            -Rational::new(1, 2) - Rational::new(1, 2),
            Rational::integer(-1)
        );
        assert_eq!(Rational::new(-3, 4).to_f64(), -0.75);
    }

    #[test]
    fn polynomial_calculus() {
        let p = Polynomial::new([1.0, -2.0, 3.0]);
        assert_eq!(p.derivative().coeffs(), &[-2.0, 6.0]);
        assert_eq!(p.derivative().integral(1.0), p);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Polynomial::new([0.0, 0.0]).degree(), None);
        assert_eq!(p.eval(2.0), 9.0);
    }

    fn series_strategy() -> impl Strategy<Value = PowerSeries> {
        (0.5f64..2.0, proptest::collection::vec(-1.0f64..1.0, 6)).prop_map(|(d0, rest)| {
            let mut c = vec![d0];
            c.extend(rest);
            PowerSeries::new(c)
        })
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(s in series_strategy()) {
            let back = s.ln().unwrap().exp();
            for (a, b) in back.coeffs().iter().zip(s.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{a} vs {b}");
            }
        }

        #[test]
        fn cube_root_round_trip(s in series_strategy()) {
            let back = s.pow(1.0 / 3.0).unwrap().pow(3.0).unwrap();
            for (a, b) in back.coeffs().iter().zip(s.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
            }
        }

        #[test]
        fn integer_power_matches_product(s in series_strategy()) {
            let cube = &(&s * &s) * &s;
            let p = s.pow(3.0).unwrap();
            for (a, b) in p.coeffs().iter().zip(cube.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-11 * (1.0 + b.abs()));
            }
        }

        #[test]
        fn reciprocal_is_inverse(s in series_strategy()) {
            let prod = &s * &s.reciprocal().unwrap();
            prop_assert!((prod.coeff(0) - 1.0).abs() < 1e-14);
            for k in 1..=prod.order() {
                prop_assert!(prod.coeff(k).abs() < 1e-11);
            }
        }
    }
}
