//! Dense univariate polynomials over [`BigReal`], lowest degree first.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::bigreal::BigReal;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<BigReal>,
}

impl Poly {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<BigReal>) -> Self {
        while coeffs.last().is_some_and(BigReal::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigReal) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_monic(root: &BigReal) -> Self {
        Self::new(vec![-root, BigReal::one(root.prec())])
    }

    pub fn coeffs(&self) -> &[BigReal] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&BigReal> {
        self.coeffs.get(i)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigReal> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigReal) -> BigReal {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return BigReal::zero(x.prec());
        };
        it.fold(first.clone(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigReal::from_i64(i as i64, c.prec()))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigReal) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `x - a`.
    pub fn mul_linear(&self, a: &BigReal) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(-(a * &self.coeffs[0]));
        for i in 1..self.coeffs.len() {
            out.push(&self.coeffs[i - 1] - a * &self.coeffs[i]);
        }
        out.push(self.coeffs[self.coeffs.len() - 1].clone());
        Self::new(out)
    }

    /// Truncates coefficients above `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        Self::new(self.coeffs.iter().take(degree + 1).cloned().collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Option<&BigReal>, Option<&BigReal>) -> BigReal) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| f(self.coeffs.get(i), other.coeffs.get(i))).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| match (a, b) {
            (Some(a), Some(b)) => a + b,
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!(),
        })
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| match (a, b) {
            (Some(a), Some(b)) => a - b,
            (Some(a), None) => a.clone(),
            (None, Some(b)) => -b,
            (None, None) => unreachable!(),
        })
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let prec = self.coeffs[0].prec().max(rhs.coeffs[0].prec());
        let mut out = vec![BigReal::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| BigReal::from_i64(c, 128)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, -1, 1, 1]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!((&a + &b).degree(), Some(2));
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(b.mul_linear(&BigReal::from_i64(1, 128)), a);
        assert_eq!(a.eval(&BigReal::from_i64(3, 128)), BigReal::from_i64(8, 128));
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[2, 4]).monic(), Poly::new(vec![BigReal::ratio(1, 2, 128), BigReal::one(128)]));
    }
}
