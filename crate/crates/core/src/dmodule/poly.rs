//! Univariate polynomials over Q in the ray parameter.

use num_traits::{Signed, Zero};

use crate::rat::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly(Vec<Q>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Poly(vec![c]).trimmed()
    }

    /// Falling factorial (u + s)(u + s − 1)⋯(u + s − l + 1).
    pub fn falling(s: i64, l: u32) -> Self {
        let mut acc = Poly::constant(q(1));
        for m in 0..l as i64 {
            acc = acc.mul(&Poly(vec![q(s - m), q(1)]));
        }
        acc
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let mut out = vec![Q::zero(); len];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Poly(out).trimmed()
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect()).trimmed()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    #[cfg(test)]
    pub fn eval(&self, u: i64) -> Q {
        let x = q(u);
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * &x + c)
    }

    /// An integer B with no root in (B, ∞), from the Cauchy bound.
    pub fn root_bound(&self) -> i64 {
        let Some(lead) = self.0.last() else {
            return i64::MAX;
        };
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(Q::zero(), |a, b| if b > a { b } else { a });
        let bound = (m + q(1)).ceil();
        i64::try_from(bound.to_integer()).unwrap_or(i64::MAX)
    }
}
