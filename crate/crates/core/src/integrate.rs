//! Exact monomial integrals over unit spheres and the quadrature
//! cross-check built on the angle charts.
//!
//! The closed form for even exponents is
//! `int_{S^d} x^alpha dsigma = 2 prod Gamma(b_i) / Gamma(sum b_i)`,
//! `b_i = (alpha_i + 1)/2`; odd exponents integrate to zero. Gamma at
//! half-integers is evaluated exactly from factorials.

use crate::error::{Error, Result};
use crate::manifold::Manifold;
use crate::polynomial::Polynomial;

/// Gamma(k/2) for positive integer k, from factorials.
fn gamma_half(k: u64) -> f64 {
    debug_assert!(k >= 1);
    if k % 2 == 0 {
        // Gamma(m) = (m-1)!
        let m = k / 2;
        (1..m).map(|i| i as f64).product()
    } else {
        // Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
        let m = (k - 1) / 2;
        let mut v = std::f64::consts::PI.sqrt();
        // (2m)!/(4^m m!) = prod_{i=1..m} (2i - 1) / 2
        for i in 1..=m {
            v *= (2 * i - 1) as f64 / 2.0;
        }
        v
    }
}

/// Exact surface integral of a monomial over the unit `S^d`.
pub fn monomial_sphere_integral(d: usize, exponents: &[i64]) -> Result<f64> {
    if exponents.len() != d + 1 {
        return Err(Error::BadExponentLength {
            expected: d + 1,
            got: exponents.len(),
        });
    }
    for &e in exponents {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
    }
    if exponents.iter().any(|e| e % 2 != 0) {
        return Ok(0.0);
    }
    let mut num = 2.0;
    let mut ksum = 0u64;
    for &e in exponents {
        let k = e as u64 + 1;
        num *= gamma_half(k);
        ksum += k;
    }
    Ok(num / gamma_half(ksum))
}

fn monomial_integral_u8(d: usize, exps: &[u8]) -> f64 {
    let e: Vec<i64> = exps.iter().map(|&x| x as i64).collect();
    monomial_sphere_integral(d, &e).expect("validated exponent vector")
}

/// Exact surface integral of a polynomial over a manifold. For
/// `S2xS2` each monomial factorizes into two `S^2` integrals.
pub fn integral(manifold: Manifold, p: &Polynomial) -> f64 {
    match manifold {
        Manifold::S2xS2 => {
            debug_assert_eq!(p.ambient_dim(), 6);
            p.terms()
                .map(|(e, c)| {
                    c * monomial_integral_u8(2, &e[..3]) * monomial_integral_u8(2, &e[3..])
                })
                .sum()
        }
        m => {
            let d = m.dim();
            debug_assert_eq!(p.ambient_dim(), d + 1);
            p.terms().map(|(e, c)| c * monomial_integral_u8(d, e)).sum()
        }
    }
}

/// `<p, q> = int p q dsigma`, exact.
pub fn sphere_inner(manifold: Manifold, p: &Polynomial, q: &Polynomial) -> f64 {
    integral(manifold, &p.mul(q).expect("same ambient space"))
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Newton from the Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Quadrature grid: per-node chart angles and weight (the weight
/// includes the density rho). Polar angles use Gauss-Legendre on
/// [0, pi], azimuthal angles a uniform trapezoid on [0, 2pi).
pub struct QuadratureGrid {
    pub manifold: Manifold,
    per_angle: Vec<(Vec<f64>, Vec<f64>)>, // (nodes, weights) per angle
}

impl QuadratureGrid {
    pub fn new(manifold: Manifold, resolution: usize) -> Result<Self> {
        if resolution < 8 {
            return Err(Error::ResolutionTooSmall(resolution));
        }
        let (gl_nodes, gl_weights) = gauss_legendre(resolution);
        let mut per_angle = Vec::new();
        for a in 0..manifold.dim() {
            if manifold.angle_is_polar(a) {
                // map [-1,1] -> [0,pi]
                let nodes: Vec<f64> = gl_nodes
                    .iter()
                    .map(|t| (t + 1.0) * std::f64::consts::PI / 2.0)
                    .collect();
                let weights: Vec<f64> = gl_weights
                    .iter()
                    .map(|w| w * std::f64::consts::PI / 2.0)
                    .collect();
                per_angle.push((nodes, weights));
            } else {
                let h = 2.0 * std::f64::consts::PI / resolution as f64;
                let nodes: Vec<f64> = (0..resolution).map(|k| k as f64 * h).collect();
                let weights = vec![h; resolution];
                per_angle.push((nodes, weights));
            }
        }
        Ok(Self {
            manifold,
            per_angle,
        })
    }

    pub fn axis_nodes(&self, a: usize) -> &[f64] {
        &self.per_angle[a].0
    }

    pub fn num_nodes(&self) -> usize {
        self.per_angle.iter().map(|(n, _)| n.len()).product()
    }

    /// Visit every node with its chart angles and full weight
    /// (product of 1D weights times the density).
    pub fn for_each_node(&self, mut f: impl FnMut(&[f64], f64)) {
        let dims: Vec<usize> = self.per_angle.iter().map(|(n, _)| n.len()).collect();
        let total = self.num_nodes();
        let mut angles = vec![0.0; dims.len()];
        for flat in 0..total {
            let mut rem = flat;
            let mut w = 1.0;
            for a in (0..dims.len()).rev() {
                let idx = rem % dims[a];
                rem /= dims[a];
                angles[a] = self.per_angle[a].0[idx];
                w *= self.per_angle[a].1[idx];
            }
            w *= self.manifold.density(&angles);
            f(&angles, w);
        }
    }
}

/// Numerical surface integral of a polynomial via the angle chart.
pub fn quadrature_integral(
    manifold: Manifold,
    integrand: &Polynomial,
    resolution: usize,
) -> Result<f64> {
    let grid = QuadratureGrid::new(manifold, resolution)?;
    let mut acc = 0.0;
    grid.for_each_node(|angles, w| {
        acc += w * integrand.eval(&manifold.point(angles));
    });
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn surface_areas() {
        assert!((monomial_sphere_integral(2, &[0, 0, 0]).unwrap() - 4.0 * PI).abs() < 1e-12);
        assert!(
            (monomial_sphere_integral(3, &[0, 0, 0, 0]).unwrap() - 2.0 * PI * PI).abs() < 1e-12
        );
        assert!(
            (monomial_sphere_integral(4, &[0, 0, 0, 0, 0]).unwrap() - 8.0 * PI * PI / 3.0).abs()
                < 1e-12
        );
    }

    #[test]
    fn squared_coordinate_splits_area() {
        assert!((monomial_sphere_integral(2, &[2, 0, 0]).unwrap() - 4.0 * PI / 3.0).abs() < 1e-13);
        let s4 = monomial_sphere_integral(4, &[2, 0, 0, 0, 0]).unwrap();
        assert!((s4 - (8.0 * PI * PI / 3.0) / 5.0).abs() < 1e-13);
    }

    #[test]
    fn odd_exponents_vanish() {
        assert_eq!(monomial_sphere_integral(2, &[1, 1, 0]).unwrap(), 0.0);
        assert_eq!(monomial_sphere_integral(4, &[3, 0, 0, 2, 0]).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        assert!(monomial_sphere_integral(2, &[0, 0]).is_err());
        assert!(monomial_sphere_integral(2, &[-2, 0, 0]).is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        // int_{-1}^{1} x^10 = 2/11 needs n >= 6
        let v: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * x.powi(10))
            .sum();
        assert!((v - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        // constant on S2
        let one = Polynomial::constant(3, 1.0);
        let v = quadrature_integral(Manifold::S2, &one, 32).unwrap();
        assert!((v - 4.0 * PI).abs() < 1e-10);

        // odd monomial on S2
        let x = Polynomial::coordinate(3, 0);
        let y = Polynomial::coordinate(3, 1);
        let xy = x.mul(&y).unwrap();
        assert!(quadrature_integral(Manifold::S2, &xy, 16).unwrap().abs() < 1e-12);

        // x1^2 on S4 vs exact
        let x1 = Polynomial::coordinate(5, 0);
        let p = x1.mul(&x1).unwrap();
        let quad = quadrature_integral(Manifold::S4, &p, 16).unwrap();
        let exact = monomial_sphere_integral(4, &[2, 0, 0, 0, 0]).unwrap();
        assert!((quad - exact).abs() < 1e-8);
    }

    #[test]
    fn quadrature_cross_validates_all_low_monomials() {
        // every monomial of total degree <= 8 within 1e-8, per manifold
        for (m, d) in [(Manifold::S2, 2usize), (Manifold::S3, 3), (Manifold::S4, 4)] {
            let nvars = d + 1;
            let mut exps = vec![0i64; nvars];
            loop {
                let total: i64 = exps.iter().sum();
                if total <= 8 {
                    let exact = monomial_sphere_integral(d, &exps).unwrap();
                    let e8: Vec<u8> = exps.iter().map(|&x| x as u8).collect();
                    let p = Polynomial::monomial(nvars, e8, 1.0);
                    let quad = quadrature_integral(m, &p, 24).unwrap();
                    assert!(
                        (quad - exact).abs() < 1e-8,
                        "{m} exps {exps:?}: {quad} vs {exact}"
                    );
                }
                // odometer over exponents 0..=8 with early pruning
                let mut i = 0;
                loop {
                    exps[i] += 2; // parity: odd cases are all zero anyway; check a few separately
                    if exps[i] <= 8 && exps.iter().sum::<i64>() <= 8 {
                        break;
                    }
                    exps[i] = 0;
                    i += 1;
                    if i == nvars {
                        break;
                    }
                }
                if i == nvars {
                    break;
                }
            }
        }
    }

    #[test]
    fn s2xs2_integral_factorizes() {
        // x1^2 y1^2 over S2xS2 = (4pi/3)^2
        let p = Polynomial::monomial(6, vec![2, 0, 0, 2, 0, 0], 1.0);
        let exact = integral(Manifold::S2xS2, &p);
        assert!((exact - (4.0 * PI / 3.0) * (4.0 * PI / 3.0)).abs() < 1e-12);
        let quad = quadrature_integral(Manifold::S2xS2, &p, 16).unwrap();
        assert!((quad - exact).abs() < 1e-8);
    }
}
