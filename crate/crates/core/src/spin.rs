//! Spin matrices in the standard ladder-operator basis.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

/// An n-dimensional spin representation: `S_3` diagonal with entries
/// `s, s-1, ..., -s` and `S_1`, `S_2` from the ladder operators.
/// `J_i = S_i / sqrt(s(s+1))` so that `sum J_i^2 = 1` (for n >= 2;
/// at n = 1 everything is the 1x1 zero matrix).
#[derive(Debug, Clone)]
pub struct SpinRep {
    pub n: usize,
    pub s: f64,
    pub casimir: f64,
    pub s_ops: [CMatrix; 3],
    pub j_ops: [CMatrix; 3],
}

pub fn make_spin_rep(n: usize) -> Result<SpinRep> {
    if n == 0 {
        return Err(Error::InvalidDimension);
    }
    let s = (n as f64 - 1.0) / 2.0;
    let casimir = s * (s + 1.0);

    // row k corresponds to m = s - k
    let mut s_plus = CMatrix::zeros(n, n);
    for k in 1..n {
        let m = s - k as f64; // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>
        s_plus[(k - 1, k)] = Complex64::new((casimir - m * (m + 1.0)).sqrt(), 0.0);
    }
    let s_minus = s_plus.adjoint();

    let s1 = (&s_plus + &s_minus).scale(Complex64::new(0.5, 0.0));
    let s2 = (&s_plus - &s_minus).scale(Complex64::new(0.0, -0.5));
    let mut s3 = CMatrix::zeros(n, n);
    for k in 0..n {
        s3[(k, k)] = Complex64::new(s - k as f64, 0.0);
    }

    let norm = if casimir > 0.0 { 1.0 / casimir.sqrt() } else { 0.0 };
    let j_ops = [s1.scale_re(norm), s2.scale_re(norm), s3.scale_re(norm)];

    Ok(SpinRep {
        n,
        s,
        casimir,
        s_ops: [s1, s2, s3],
        j_ops,
    })
}

impl SpinRep {
    /// max entrywise error over [S_i,S_j] - i eps_ijk S_k.
    pub fn algebra_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let c = crate::cmatrix::commutator(&self.s_ops[i], &self.s_ops[j]);
            let target = self.s_ops[k].scale(Complex64::new(0.0, 1.0));
            worst = worst.max((&c - &target).max_abs());
        }
        worst
    }

    /// max entrywise error of sum J_i^2 - 1 (n >= 2).
    pub fn casimir_defect(&self) -> f64 {
        let mut acc = CMatrix::zeros(self.n, self.n);
        for j in &self.j_ops {
            acc = &acc + &(j * j);
        }
        (&acc - &CMatrix::identity(self.n)).max_abs()
    }
}
