//! Supported manifolds and their angle parametrizations.
//!
//! Angle conventions for `S^d`: polar angles first, one azimuthal last.
//! `x_1 = cos p1`, `x_2 = sin p1 cos p2`, ..., with scalar density
//! `rho = sin^{d-1} p1 sin^{d-2} p2 ... sin p_{d-1}`.
//! `S2xS2` is two independent copies of the `S^2` chart with
//! `rho = sin p1 sin p3`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Manifold {
    S2,
    S3,
    S4,
    S2xS2,
}

impl std::str::FromStr for Manifold {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s2" => Ok(Manifold::S2),
            "s3" => Ok(Manifold::S3),
            "s4" => Ok(Manifold::S4),
            "s2xs2" | "s2s2" => Ok(Manifold::S2xS2),
            other => Err(format!("unknown manifold tag: {other}")),
        }
    }
}

impl std::fmt::Display for Manifold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Manifold::S2 => "s2",
            Manifold::S3 => "s3",
            Manifold::S4 => "s4",
            Manifold::S2xS2 => "s2xs2",
        };
        f.write_str(s)
    }
}

impl Manifold {
    /// Number of ambient embedding coordinates.
    pub fn ambient_dim(self) -> usize {
        match self {
            Manifold::S2 => 3,
            Manifold::S3 => 4,
            Manifold::S4 => 5,
            Manifold::S2xS2 => 6,
        }
    }

    /// Manifold dimension = number of chart angles.
    pub fn dim(self) -> usize {
        match self {
            Manifold::S2 => 2,
            Manifold::S3 => 3,
            Manifold::S4 => 4,
            Manifold::S2xS2 => 4,
        }
    }

    /// Arity of the volume-preserving bracket on this manifold.
    pub fn bracket_arity(self) -> usize {
        self.dim()
    }

    pub fn volume(self) -> f64 {
        match self {
            Manifold::S2 => 4.0 * PI,
            Manifold::S3 => 2.0 * PI * PI,
            Manifold::S4 => 8.0 * PI * PI / 3.0,
            Manifold::S2xS2 => 16.0 * PI * PI,
        }
    }

    /// `angles[i]` is polar (integrated with Gauss-Legendre) when true,
    /// azimuthal (trapezoid on [0, 2pi)) when false.
    pub fn angle_is_polar(self, i: usize) -> bool {
        match self {
            Manifold::S2 => i == 0,
            Manifold::S3 => i < 2,
            Manifold::S4 => i < 3,
            Manifold::S2xS2 => i == 0 || i == 2,
        }
    }

    /// Embedding point for the given chart angles.
    pub fn point(self, angles: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient_dim()];
        self.point_into(angles, &mut out);
        out
    }

    /// Allocation-free variant of [`point`](Self::point); `out` must
    /// have length `ambient_dim`.
    pub fn point_into(self, angles: &[f64], out: &mut [f64]) {
        let (sin, cos) = angle_trig(angles);
        self.point_from_trig(&sin[..angles.len()], &cos[..angles.len()], out);
    }

    /// As [`point_into`](Self::point_into) but from precomputed
    /// `sin`/`cos` of each chart angle.
    pub fn point_from_trig(self, sin: &[f64], cos: &[f64], out: &mut [f64]) {
        debug_assert_eq!(sin.len(), self.dim());
        debug_assert_eq!(out.len(), self.ambient_dim());
        match self {
            Manifold::S2xS2 => {
                sphere_point_from_trig(&sin[..2], &cos[..2], &mut out[..3]);
                sphere_point_from_trig(&sin[2..], &cos[2..], &mut out[3..]);
            }
            _ => sphere_point_from_trig(sin, cos, out),
        }
    }

    /// Jacobian `dx_i / d angle_a`, shape ambient_dim x dim.
    pub fn jacobian(self, angles: &[f64]) -> Vec<Vec<f64>> {
        let dim = self.dim();
        let mut flat = vec![0.0; self.ambient_dim() * dim];
        self.jacobian_into(angles, &mut flat);
        flat.chunks(dim).map(|row| row.to_vec()).collect()
    }

    /// Row-major flat Jacobian (`out[i * dim + a] = dx_i / d angle_a`),
    /// written in place; `out` must have length `ambient_dim * dim`.
    pub fn jacobian_into(self, angles: &[f64], out: &mut [f64]) {
        let (sin, cos) = angle_trig(angles);
        self.jacobian_from_trig(&sin[..angles.len()], &cos[..angles.len()], out);
    }

    /// As [`jacobian_into`](Self::jacobian_into) but from precomputed
    /// `sin`/`cos` of each chart angle.
    pub fn jacobian_from_trig(self, sin: &[f64], cos: &[f64], out: &mut [f64]) {
        let dim = self.dim();
        debug_assert_eq!(out.len(), self.ambient_dim() * dim);
        match self {
            Manifold::S2xS2 => {
                out.fill(0.0);
                sphere_jacobian_from_trig(&sin[..2], &cos[..2], dim, 0, 0, out);
                sphere_jacobian_from_trig(&sin[2..], &cos[2..], dim, 3, 2, out);
            }
            _ => sphere_jacobian_from_trig(sin, cos, dim, 0, 0, out),
        }
    }

    /// The scalar density rho in the bracket / volume element.
    pub fn density(self, angles: &[f64]) -> f64 {
        match self {
            Manifold::S2 => angles[0].sin(),
            Manifold::S3 => angles[0].sin().powi(2) * angles[1].sin(),
            Manifold::S4 => {
                angles[0].sin().powi(3) * angles[1].sin().powi(2) * angles[2].sin()
            }
            Manifold::S2xS2 => angles[0].sin() * angles[2].sin(),
        }
    }

    /// Density from precomputed sines of the chart angles.
    pub fn density_from_trig(self, sin: &[f64]) -> f64 {
        match self {
            Manifold::S2 => sin[0],
            Manifold::S3 => sin[0] * sin[0] * sin[1],
            Manifold::S4 => sin[0] * sin[0] * sin[0] * sin[1] * sin[1] * sin[2],
            Manifold::S2xS2 => sin[0] * sin[2],
        }
    }
}

fn angle_trig(angles: &[f64]) -> ([f64; 4], [f64; 4]) {
    let mut sin = [0.0; 4];
    let mut cos = [0.0; 4];
    for (i, &a) in angles.iter().enumerate() {
        let (s, c) = a.sin_cos();
        sin[i] = s;
        cos[i] = c;
    }
    (sin, cos)
}

fn sphere_point_from_trig(sin: &[f64], cos: &[f64], out: &mut [f64]) {
    let mut sin_prod = 1.0;
    for i in 0..sin.len() {
        out[i] = sin_prod * cos[i];
        sin_prod *= sin[i];
    }
    out[sin.len()] = sin_prod;
}

/// Writes the single-sphere Jacobian block into a flat row-major
/// buffer with `stride` columns, starting at (`row0`, `col0`).
fn sphere_jacobian_from_trig(
    sin: &[f64],
    cos: &[f64],
    stride: usize,
    row0: usize,
    col0: usize,
    out: &mut [f64],
) {
    let d = sin.len();
    // x_i = prod_{k<i} sin a_k * cos a_i (i < d), x_d = prod sin a_k
    for i in 0..=d {
        for b in 0..d {
            let mut v = 1.0;
            let mut nonzero = true;
            for k in 0..i.min(d) {
                v *= if k == b { cos[k] } else { sin[k] };
            }
            if i < d {
                if b > i {
                    nonzero = false;
                } else if b == i {
                    v *= -sin[i];
                } else {
                    v *= cos[i];
                }
            } else if b >= d {
                nonzero = false;
            }
            out[(row0 + i) * stride + col0 + b] = if nonzero { v } else { 0.0 };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_lie_on_unit_sphere() {
        for m in [Manifold::S2, Manifold::S3, Manifold::S4] {
            let angles: Vec<f64> = (0..m.dim()).map(|i| 0.3 + 0.4 * i as f64).collect();
            let x = m.point(&angles);
            let r2: f64 = x.iter().map(|v| v * v).sum();
            assert!((r2 - 1.0).abs() < 1e-14, "{m}");
        }
        let angles = [0.3, 0.7, 1.1, 1.9];
        let x = Manifold::S2xS2.point(&angles);
        let rx: f64 = x[..3].iter().map(|v| v * v).sum();
        let ry: f64 = x[3..].iter().map(|v| v * v).sum();
        assert!((rx - 1.0).abs() < 1e-14 && (ry - 1.0).abs() < 1e-14);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let h = 1e-6;
        for m in [Manifold::S2, Manifold::S3, Manifold::S4, Manifold::S2xS2] {
            let angles: Vec<f64> = (0..m.dim()).map(|i| 0.4 + 0.3 * i as f64).collect();
            let jac = m.jacobian(&angles);
            for b in 0..m.dim() {
                let mut ap = angles.clone();
                let mut am = angles.clone();
                ap[b] += h;
                am[b] -= h;
                let xp = m.point(&ap);
                let xm = m.point(&am);
                for i in 0..m.ambient_dim() {
                    let fd = (xp[i] - xm[i]) / (2.0 * h);
                    assert!(
                        (jac[i][b] - fd).abs() < 1e-8,
                        "{m} d x_{i} / d a_{b}: {} vs {}",
                        jac[i][b],
                        fd
                    );
                }
            }
        }
    }
}
