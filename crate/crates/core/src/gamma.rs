//! The spin-built 2n x 2n matrix family regularizing S^4 (and, on the
//! negative coefficient branch with the fifth matrix as an anchor, S^3).
//!
//! With `S_i` the n-dimensional spin matrices,
//!
//! ```text
//! G_i = a [[0, i S_i], [-i S_i, 0]]   (i = 1..3)
//! G_4 = b [[0, 1], [1, 0]]
//! G_5 = b [[1, 0], [0, -1]]
//! ```
//!
//! The two real coefficients are fixed by demanding unit radius
//! (`sum_A G_A^2 = 1`) together with a G_A-proportional 4-commutator:
//! `a^2 s(s+1) = 3/5`, `b^2 = 1/5`, which gives
//!
//! ```text
//! [G_A, G_B, G_C, G_D] = -2 d4 eps_{ABCDE} G_E,   d4 = 6a/5.
//! ```
//!
//! At n = 2 the family degenerates to a rescaled Clifford algebra
//! (`{G_A, G_B} = (2/5) delta_AB`); genuinely fuzzy behaviour starts at
//! n = 3.

use num_complex::Complex64;
use serde::Serialize;

use crate::cmatrix::{anticommutator, four_commutator, CMatrix};
use crate::error::{Error, Result};
use crate::spin::{make_spin_rep, SpinRep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `a, b > 0`; the S^4 regularization.
    Positive,
    /// `a, b < 0`; used for the S^3 construction so the anchored
    /// 3-bracket reproduces the classical sign.
    Negative,
}

#[derive(Debug, Clone)]
pub struct GammaFamily {
    pub n: usize,
    pub branch: Branch,
    pub a: f64,
    pub b: f64,
    /// 4-commutator coefficient: `[G_A,G_B,G_C,G_D] = -2 d4 eps G_E`.
    pub d4: f64,
    pub gammas: [CMatrix; 5],
    pub spin: SpinRep,
}

pub fn make_gamma_family(n: usize, branch: Branch) -> Result<GammaFamily> {
    if n < 2 {
        return Err(Error::GammaTooSmall(n));
    }
    let spin = make_spin_rep(n)?;
    let nn = n as f64;
    let mut a = (12.0 / (5.0 * (nn * nn - 1.0))).sqrt();
    let mut b = (1.0f64 / 5.0).sqrt();
    if branch == Branch::Negative {
        a = -a;
        b = -b;
    }
    let d4 = 6.0 * a / 5.0;

    let dim = 2 * n;
    let i_unit = Complex64::new(0.0, 1.0);
    let mut gammas: Vec<CMatrix> = Vec::with_capacity(5);
    for s in &spin.s_ops {
        let mut g = CMatrix::zeros(dim, dim);
        for r in 0..n {
            for c in 0..n {
                let v = s[(r, c)];
                if v != Complex64::ZERO {
                    g[(r, c + n)] = i_unit * v * a;
                    g[(r + n, c)] = -i_unit * v * a;
                }
            }
        }
        gammas.push(g);
    }
    let mut g4 = CMatrix::zeros(dim, dim);
    let mut g5 = CMatrix::zeros(dim, dim);
    for k in 0..n {
        g4[(k, k + n)] = Complex64::new(b, 0.0);
        g4[(k + n, k)] = Complex64::new(b, 0.0);
        g5[(k, k)] = Complex64::new(b, 0.0);
        g5[(k + n, k + n)] = Complex64::new(-b, 0.0);
    }
    gammas.push(g4);
    gammas.push(g5);

    let gammas: [CMatrix; 5] = gammas.try_into().expect("five matrices");
    Ok(GammaFamily {
        n,
        branch,
        a,
        b,
        d4,
        gammas,
        spin,
    })
}

fn eps5_sign(indices: &[usize; 5]) -> f64 {
    let mut sign = 1.0;
    let mut v = *indices;
    for i in 1..5 {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

impl GammaFamily {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// max entrywise error of `sum_A G_A^2 - 1`.
    pub fn radius_defect(&self) -> f64 {
        let dim = self.dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for g in &self.gammas {
            acc = &acc + &(g * g);
        }
        (&acc - &CMatrix::identity(dim)).max_abs()
    }

    /// max entrywise error over all canonical 4-tuples of
    /// `[G_A,G_B,G_C,G_D] + 2 d4 eps_{ABCDE} G_E`.
    pub fn four_bracket_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for e in 0..5usize {
            let t: Vec<usize> = (0..5).filter(|&i| i != e).collect();
            let sign = eps5_sign(&[t[0], t[1], t[2], t[3], e]);
            let lhs = four_commutator(
                &self.gammas[t[0]],
                &self.gammas[t[1]],
                &self.gammas[t[2]],
                &self.gammas[t[3]],
            )
            .expect("same dimension");
            let rhs = self.gammas[e].scale_re(-2.0 * self.d4 * sign);
            worst = worst.max((&lhs - &rhs).max_abs());
        }
        worst
    }

    /// max |G_A - G_A†| over the family.
    pub fn hermiticity_defect(&self) -> f64 {
        self.gammas
            .iter()
            .map(|g| g.hermiticity_defect())
            .fold(0.0, f64::max)
    }

    /// Anticommutator `{G_A, G_B}` for A != B. Only the spin-spin pairs
    /// are nonzero (and only for n > 2).
    pub fn anticommutator_defect(&self, a: usize, b: usize) -> f64 {
        anticommutator(&self.gammas[a], &self.gammas[b]).max_abs()
    }
}

/// Comparison of the constraint-solved spin coefficient with the
/// alternative normalization `a' = sqrt(6 / (5 (n^2 - 1)))` that
/// circulates in some write-ups of this construction.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoefficientReport {
    pub n: usize,
    /// `a` solving `a^2 s(s+1) = 3/5` (what the library uses).
    pub solved_a: f64,
    /// The alternative printed value.
    pub alt_a: f64,
    /// `solved_a / alt_a`; equals sqrt(2) for every n.
    pub ratio: f64,
    /// `sum G_A^2 - 1` defect when the alternative value is used.
    pub alt_radius_defect: f64,
    /// 4-commutator proportionality defect under the alternative value
    /// (with `d4` rebuilt as `6 a'/5`).
    pub alt_four_bracket_defect: f64,
}

/// Quantifies how the alternative coefficient fails the two defining
/// identities of the family. The ratio `solved/alt = sqrt(2)` is
/// size-independent, so the mismatch is a pure normalization slip, not
/// a finite-size effect.
pub fn coefficient_report(n: usize) -> Result<CoefficientReport> {
    let fam = make_gamma_family(n, Branch::Positive)?;
    let nn = n as f64;
    let alt_a = (6.0 / (5.0 * (nn * nn - 1.0))).sqrt();
    let mut alt = fam.clone();
    let rescale = alt_a / fam.a;
    for g in &mut alt.gammas[..3] {
        *g = g.scale_re(rescale);
    }
    alt.a = alt_a;
    alt.d4 = 6.0 * alt_a / 5.0;
    Ok(CoefficientReport {
        n,
        solved_a: fam.a,
        alt_a,
        ratio: fam.a / alt_a,
        alt_radius_defect: alt.radius_defect(),
        alt_four_bracket_defect: alt.four_bracket_defect(),
    })
}

/// The matrix 3-bracket used for S^3: the 4-commutator with the fifth
/// family matrix anchored in the last slot.
pub fn anchored_three_bracket(
    family: &GammaFamily,
    f: &CMatrix,
    g: &CMatrix,
    h: &CMatrix,
) -> Result<CMatrix> {
    four_commutator(f, g, h, &family.gammas[4])
}
