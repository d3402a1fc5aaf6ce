//! Coefficient-based scalar functions with exact derivatives of every order.
//!
//! A [`ScalarFn`] is a polynomial plus a finite sum of `a·cos(ωx) + b·sin(ωx)` terms.
//! The family is closed under differentiation, affine reparameterisation `x ↦ x − s`
//! and linear combination, which is all the motion group of G³ needs.

use serde::{Deserialize, Serialize};

/// One `cos·cos(ωx) + sin·sin(ωx)` term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTerm {
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
    pub omega: f64,
}

impl TrigTerm {
    pub fn new(cos: f64, sin: f64, omega: f64) -> Self {
        Self { cos, sin, omega }
    }

    fn derivative(&self, x: f64, order: usize) -> f64 {
        let (s, c) = (self.omega * x).sin_cos();
        let scale = self.omega.powi(order as i32);
        let (a, b) = (self.cos, self.sin);
        scale
            * match order % 4 {
                0 => a * c + b * s,
                1 => -a * s + b * c,
                2 => -a * c - b * s,
                _ => a * s - b * c,
            }
    }
}

/// `Σ poly[i]·xⁱ + Σ (cos·cos(ωx) + sin·sin(ωx))`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarFn {
    /// Polynomial coefficients in ascending powers.
    #[serde(default)]
    pub poly: Vec<f64>,
    #[serde(default)]
    pub trig: Vec<TrigTerm>,
}

impl ScalarFn {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::polynomial(vec![c])
    }

    /// Polynomial with coefficients in ascending powers.
    pub fn polynomial(poly: Vec<f64>) -> Self {
        Self {
            poly,
            trig: Vec::new(),
        }
    }

    pub fn with_trig(mut self, cos: f64, sin: f64, omega: f64) -> Self {
        self.trig.push(TrigTerm::new(cos, sin, omega));
        self
    }

    pub fn has_trig(&self) -> bool {
        self.trig.iter().any(|t| t.cos != 0.0 || t.sin != 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.poly.iter().all(|c| c.is_finite())
            && self
                .trig
                .iter()
                .all(|t| t.cos.is_finite() && t.sin.is_finite() && t.omega.is_finite())
    }

    /// `true` when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|&c| c == 0.0) && !self.has_trig()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative(x, 0)
    }

    /// Exact derivative of the given order at `x`.
    pub fn derivative(&self, x: f64, order: usize) -> f64 {
        let mut acc = 0.0;
        // Horner on the differentiated coefficients.
        for i in (order..self.poly.len()).rev() {
            acc = acc * x + self.poly[i] * falling_factorial(i, order);
        }
        acc + self
            .trig
            .iter()
            .map(|t| t.derivative(x, order))
            .sum::<f64>()
    }

    /// Values of derivatives `0..=max_order` at `x`.
    pub fn jet(&self, x: f64, max_order: usize) -> Vec<f64> {
        (0..=max_order).map(|k| self.derivative(x, k)).collect()
    }

    /// The function `x ↦ self(x − s)`.
    pub fn shifted(&self, s: f64) -> Self {
        let n = self.poly.len();
        let mut poly = vec![0.0; n];
        for (i, &c) in self.poly.iter().enumerate() {
            let mut pow = 1.0;
            // (x − s)^i = Σ_j C(i, j) x^j (−s)^(i−j), accumulate from j = i downwards
            for j in (0..=i).rev() {
                poly[j] += c * binomial(i, j) * pow;
                pow *= -s;
            }
        }
        let trig = self
            .trig
            .iter()
            .map(|t| {
                let (sw, cw) = (t.omega * s).sin_cos();
                TrigTerm::new(t.cos * cw - t.sin * sw, t.cos * sw + t.sin * cw, t.omega)
            })
            .collect();
        Self { poly, trig }
    }

    /// `self·a + other·b`.
    pub fn combine(&self, a: f64, other: &ScalarFn, b: f64) -> Self {
        let n = self.poly.len().max(other.poly.len());
        let poly = (0..n)
            .map(|i| {
                a * self.poly.get(i).copied().unwrap_or(0.0)
                    + b * other.poly.get(i).copied().unwrap_or(0.0)
            })
            .collect();
        let trig = self
            .trig
            .iter()
            .map(|t| TrigTerm::new(a * t.cos, a * t.sin, t.omega))
            .chain(
                other
                    .trig
                    .iter()
                    .map(|t| TrigTerm::new(b * t.cos, b * t.sin, t.omega)),
            )
            .collect();
        Self { poly, trig }
    }

    /// `self + a0 + a1·x`.
    pub fn plus_affine(&self, a0: f64, a1: f64) -> Self {
        self.combine(1.0, &ScalarFn::polynomial(vec![a0, a1]), 1.0)
    }
}

fn falling_factorial(n: usize, k: usize) -> f64 {
    ((n - k + 1)..=n).fold(1.0, |acc, m| acc * m as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
