//! Multivariate real polynomials in ambient embedding coordinates,
//! keyed by exponent vector. Coefficients below 1e-14 are pruned so
//! representation equality is meaningful.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub const COEFF_EPS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    ambient_dim: usize,
    terms: BTreeMap<Vec<u8>, f64>,
}

#[derive(Debug, Serialize)]
pub struct TermJson {
    pub exponents: Vec<u8>,
    pub coefficient: f64,
}

impl Polynomial {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient_dim: usize, c: f64) -> Self {
        let mut p = Self::zero(ambient_dim);
        if c.abs() >= COEFF_EPS {
            p.terms.insert(vec![0; ambient_dim], c);
        }
        p
    }

    pub fn coordinate(ambient_dim: usize, i: usize) -> Self {
        assert!(i < ambient_dim);
        let mut exps = vec![0u8; ambient_dim];
        exps[i] = 1;
        let mut p = Self::zero(ambient_dim);
        p.terms.insert(exps, 1.0);
        p
    }

    pub fn monomial(ambient_dim: usize, exps: Vec<u8>, coeff: f64) -> Self {
        assert_eq!(exps.len(), ambient_dim);
        let mut p = Self::zero(ambient_dim);
        if coeff.abs() >= COEFF_EPS {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &f64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == degree)
    }

    fn insert(&mut self, exps: Vec<u8>, coeff: f64) {
        let entry = self.terms.entry(exps.clone()).or_insert(0.0);
        *entry += coeff;
        if entry.abs() < COEFF_EPS {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero(self.ambient_dim);
        }
        let mut out = Self::zero(self.ambient_dim);
        for (e, v) in &self.terms {
            let cv = c * v;
            if cv.abs() >= COEFF_EPS {
                out.terms.insert(e.clone(), cv);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let mut out = Self::zero(self.ambient_dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.ambient_dim);
        let mut out = Self::zero(self.ambient_dim);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] -= 1;
            out.insert(exps, c * e[var] as f64);
        }
        out
    }

    /// Sum of second partials in all ambient coordinates.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.ambient_dim);
        for var in 0..self.ambient_dim {
            out = out.add(&self.partial(var).partial(var)).unwrap();
        }
        out
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.ambient_dim);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut m = *c;
            for (x, &p) in point.iter().zip(e.iter()) {
                m *= x.powi(p as i32);
            }
            acc += m;
        }
        acc
    }

    /// Embed an x-factor polynomial (vars 0..dim) into a product space of
    /// `total` variables starting at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.ambient_dim <= total);
        let mut out = Self::zero(total);
        for (e, c) in &self.terms {
            let mut exps = vec![0u8; total];
            exps[offset..offset + e.len()].copy_from_slice(e);
            out.terms.insert(exps, *c);
        }
        out
    }

    pub fn terms_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson {
                exponents: e.clone(),
                coefficient: *c,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let x = Polynomial::coordinate(3, 0);
        let y = Polynomial::coordinate(3, 1);
        let p = x.mul(&x).unwrap().add(&y.scale(2.0)).unwrap(); // x^2 + 2y
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(&[3.0, 1.0, 0.0]), 11.0);

        let q = p.sub(&p).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn mul_commutative_and_associative() {
        let x = Polynomial::coordinate(2, 0);
        let y = Polynomial::coordinate(2, 1);
        let a = x.add(&y.scale(3.0)).unwrap();
        let b = x.mul(&y).unwrap().add(&Polynomial::constant(2, -1.5)).unwrap();
        let c = y.mul(&y).unwrap();
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn laplacian_of_harmonic() {
        // x^2 - y^2 is harmonic
        let x = Polynomial::coordinate(3, 0);
        let y = Polynomial::coordinate(3, 1);
        let p = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert!(p.laplacian().is_zero());
        // x^2 is not
        assert!(!x.mul(&x).unwrap().laplacian().is_zero());
    }

    #[test]
    fn partial_derivative() {
        let x = Polynomial::coordinate(2, 0);
        let p = x.mul(&x).unwrap().mul(&x).unwrap(); // x^3
        let d = p.partial(0); // 3x^2
        assert_eq!(d.eval(&[2.0, 0.0]), 12.0);
    }

    #[test]
    fn embed_offsets_exponents() {
        let x = Polynomial::coordinate(3, 1);
        let e = x.embed(6, 3);
        assert_eq!(e.eval(&[0.0, 0.0, 0.0, 0.0, 5.0, 0.0]), 5.0);
    }
}
