//! Orthonormal bases of harmonic polynomials on S^2, S^3, S^4 and the
//! product basis on S^2 x S^2.
//!
//! Per degree l the kernel of the ambient Laplacian restricted to
//! homogeneous degree-l polynomials is computed on monomial
//! coefficients, then orthonormalized with modified Gram-Schmidt under
//! the exact surface inner product. Modes are unit norm under
//! `int_{S^d} . dsigma` (not the normalized measure).

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrate::sphere_inner;
use crate::manifold::Manifold;
use crate::polynomial::Polynomial;

/// Relative eigenvalue threshold separating the numerical null space
/// of lap^T lap from genuine singular directions (the spectral gap of
/// the Laplacian on monomials is many orders larger).
const KERNEL_EIG_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DegreeTag {
    Single(usize),
    Pair(usize, usize),
}

impl DegreeTag {
    pub fn total(self) -> usize {
        match self {
            DegreeTag::Single(l) => l,
            DegreeTag::Pair(l1, l2) => l1 + l2,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModeShape {
    Single(Polynomial),
    Pair(Polynomial, Polynomial),
}

#[derive(Debug, Clone)]
pub struct HarmonicMode {
    pub manifold: Manifold,
    pub degree: DegreeTag,
    pub index: usize,
    pub shape: ModeShape,
}

impl HarmonicMode {
    /// The mode as a polynomial in the manifold's ambient coordinates
    /// (for product modes: the product of the embedded factors).
    pub fn ambient_poly(&self) -> Polynomial {
        match &self.shape {
            ModeShape::Single(p) => p.clone(),
            ModeShape::Pair(px, py) => px
                .embed(6, 0)
                .mul(&py.embed(6, 3))
                .expect("compatible ambient spaces"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    pub manifold: Manifold,
    pub cutoff: usize,
    pub modes: Vec<HarmonicMode>,
}

/// Exponent vectors of total degree `l` in `nvars` variables,
/// descending lexicographic (x1-major) order.
pub fn monomials_of_degree(nvars: usize, l: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; nvars];
    fn rec(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, var: usize, rem: usize) {
        if var + 1 == cur.len() {
            cur[var] = rem as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[var] = e as u8;
            rec(out, cur, var + 1, rem - e);
        }
    }
    rec(&mut out, &mut cur, 0, l);
    out
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut v = 1u64;
    for i in 0..k {
        v = v * (n - i) as u64 / (i + 1) as u64;
    }
    v
}

/// Number of independent harmonics of degree l on S^d and their
/// cumulative sum over l < n.
pub fn mode_counts(d: usize, n: usize) -> Result<(Vec<u64>, u64)> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedSphereDim(d));
    }
    if n == 0 {
        return Err(Error::InvalidCutoff);
    }
    let per: Vec<u64> = (0..n)
        .map(|l| binom(l + d, d) - if l >= 2 { binom(l + d - 2, d) } else { 0 })
        .collect();
    let total = per.iter().sum();
    Ok((per, total))
}

/// Basis vectors of harmonic homogeneous degree-l polynomials in
/// `nvars` ambient coordinates (not yet orthonormal on the sphere).
fn harmonic_kernel(nvars: usize, l: usize) -> Vec<Polynomial> {
    let monos = monomials_of_degree(nvars, l);
    if l < 2 {
        return monos
            .into_iter()
            .map(|e| Polynomial::monomial(nvars, e, 1.0))
            .collect();
    }
    let lower = monomials_of_degree(nvars, l - 2);
    let row_of: std::collections::HashMap<&Vec<u8>, usize> =
        lower.iter().enumerate().map(|(i, e)| (e, i)).collect();

    let mut lap = DMatrix::<f64>::zeros(lower.len(), monos.len());
    for (col, e) in monos.iter().enumerate() {
        let p = Polynomial::monomial(nvars, e.clone(), 1.0).laplacian();
        for (exps, coeff) in p.terms() {
            lap[(row_of[exps], col)] = *coeff;
        }
    }

    // kernel of lap via the symmetric eigenproblem of lap^T lap
    let gram = lap.transpose() * &lap;
    let eig = nalgebra::linalg::SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let max_eig = eig.eigenvalues.iter().copied().fold(1.0f64, f64::max);
    let cutoff = KERNEL_EIG_RTOL * max_eig;

    let mut kernel = Vec::new();
    for &k in &order {
        if eig.eigenvalues[k] >= cutoff {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let mut p = Polynomial::zero(nvars);
        for (col, e) in monos.iter().enumerate() {
            if v[col].abs() > 1e-13 {
                p = p
                    .add(&Polynomial::monomial(nvars, e.clone(), v[col]))
                    .unwrap();
            }
        }
        kernel.push(p);
    }
    kernel
}

fn orthonormalize_block(manifold: Manifold, block: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(block.len());
    for p in block {
        let mut v = p;
        for q in &out {
            let c = sphere_inner(manifold, q, &v);
            v = v.sub(&q.scale(c)).unwrap();
        }
        let norm = sphere_inner(manifold, &v, &v).sqrt();
        assert!(norm > 1e-12, "degenerate vector in degree block");
        out.push(v.scale(1.0 / norm));
    }
    out
}

/// Orthonormal harmonic basis up to degree `cutoff - 1` (per factor
/// for S2xS2).
pub fn harmonic_basis(manifold: Manifold, cutoff: usize) -> Result<HarmonicBasis> {
    if cutoff == 0 {
        return Err(Error::InvalidCutoff);
    }
    let modes = match manifold {
        Manifold::S2xS2 => {
            let factor = harmonic_basis(Manifold::S2, cutoff)?;
            let mut modes = Vec::new();
            for m1 in &factor.modes {
                for m2 in &factor.modes {
                    let (p1, l1) = match (&m1.shape, m1.degree) {
                        (ModeShape::Single(p), DegreeTag::Single(l)) => (p.clone(), l),
                        _ => unreachable!(),
                    };
                    let (p2, l2) = match (&m2.shape, m2.degree) {
                        (ModeShape::Single(p), DegreeTag::Single(l)) => (p.clone(), l),
                        _ => unreachable!(),
                    };
                    modes.push(HarmonicMode {
                        manifold,
                        degree: DegreeTag::Pair(l1, l2),
                        index: m1.index * factor.modes.len() + m2.index, // refined below
                        shape: ModeShape::Pair(p1, p2),
                    });
                }
            }
            // index = ordinal within the (l1, l2) degree block
            let mut counters: std::collections::BTreeMap<(usize, usize), usize> =
                std::collections::BTreeMap::new();
            for m in &mut modes {
                if let DegreeTag::Pair(l1, l2) = m.degree {
                    let c = counters.entry((l1, l2)).or_insert(0);
                    m.index = *c;
                    *c += 1;
                }
            }
            modes
        }
        m => {
            let d = m.dim();
            let expected = mode_counts(d, cutoff)?.0;
            let mut modes = Vec::new();
            for l in 0..cutoff {
                let kernel = harmonic_kernel(d + 1, l);
                assert_eq!(
                    kernel.len() as u64,
                    expected[l],
                    "harmonic block size mismatch at degree {l}"
                );
                let block = orthonormalize_block(m, kernel);
                for (index, poly) in block.into_iter().enumerate() {
                    modes.push(HarmonicMode {
                        manifold: m,
                        degree: DegreeTag::Single(l),
                        index,
                        shape: ModeShape::Single(poly),
                    });
                }
            }
            modes
        }
    };
    Ok(HarmonicBasis {
        manifold,
        cutoff,
        modes,
    })
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Pairwise exact sphere inner products; identity for a valid basis.
    pub fn gram(&self) -> DMatrix<f64> {
        let n = self.modes.len();
        let polys: Vec<Polynomial> = self.modes.iter().map(|m| m.ambient_poly()).collect();
        DMatrix::from_fn(n, n, |i, j| sphere_inner(self.manifold, &polys[i], &polys[j]))
    }

    pub fn gram_identity_defect(&self) -> f64 {
        let g = self.gram();
        let n = g.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - want).abs());
            }
        }
        worst
    }

    /// Expansion coefficients of `p` against the basis.
    pub fn project(&self, p: &Polynomial) -> Vec<f64> {
        self.modes
            .iter()
            .map(|m| sphere_inner(self.manifold, &m.ambient_poly(), p))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let modes: Vec<serde_json::Value> = self
            .modes
            .iter()
            .map(|m| {
                let degree = match m.degree {
                    DegreeTag::Single(l) => serde_json::json!(l),
                    DegreeTag::Pair(l1, l2) => serde_json::json!([l1, l2]),
                };
                serde_json::json!({
                    "degree": degree,
                    "index": m.index,
                    "terms": m.ambient_poly().terms_json().iter().map(|t| serde_json::json!({
                        "exponents": t.exponents,
                        "coefficient": t.coefficient,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "manifold": self.manifold.to_string(),
            "cutoff": self.cutoff,
            "modes": modes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::{integral, quadrature_integral};
    use std::f64::consts::PI;

    #[test]
    fn s2_block_sizes_and_first_modes() {
        let b = harmonic_basis(Manifold::S2, 2).unwrap();
        assert_eq!(b.len(), 4);
        // constant mode is 1/sqrt(4pi)
        let c = match &b.modes[0].shape {
            ModeShape::Single(p) => p.clone(),
            _ => unreachable!(),
        };
        assert!((c.eval(&[0.3, 0.4, 0.5]) - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-12);
        // degree-1 modes are sqrt(3/4pi) x_i in some order
        for m in &b.modes[1..] {
            let p = match &m.shape {
                ModeShape::Single(p) => p,
                _ => unreachable!(),
            };
            assert!(p.is_homogeneous(1));
            assert!((p.max_coeff() - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn block_sizes_match_dld() {
        let b3 = harmonic_basis(Manifold::S3, 3).unwrap();
        let sizes: Vec<usize> = (0..3)
            .map(|l| {
                b3.modes
                    .iter()
                    .filter(|m| m.degree == DegreeTag::Single(l))
                    .count()
            })
            .collect();
        assert_eq!(sizes, vec![1, 4, 9]);

        let b4 = harmonic_basis(Manifold::S4, 3).unwrap();
        let sizes: Vec<usize> = (0..3)
            .map(|l| {
                b4.modes
                    .iter()
                    .filter(|m| m.degree == DegreeTag::Single(l))
                    .count()
            })
            .collect();
        assert_eq!(sizes, vec![1, 5, 14]);
    }

    #[test]
    fn harmonicity_exact() {
        for m in [Manifold::S2, Manifold::S3, Manifold::S4] {
            let b = harmonic_basis(m, 4).unwrap();
            for mode in &b.modes {
                let p = mode.ambient_poly();
                let lap = p.laplacian();
                assert!(
                    lap.max_coeff() < 1e-12,
                    "{m} degree {:?} index {}",
                    mode.degree,
                    mode.index
                );
            }
        }
    }

    #[test]
    fn gram_is_identity() {
        for m in [Manifold::S2, Manifold::S3, Manifold::S4] {
            let b = harmonic_basis(m, 4).unwrap();
            assert!(b.gram_identity_defect() < 1e-10, "{m}");
        }
        let b = harmonic_basis(Manifold::S2xS2, 2).unwrap();
        assert_eq!(b.len(), 16);
        assert!(b.gram_identity_defect() < 1e-10);
    }

    #[test]
    fn mode_counts_closed_forms() {
        for n in 1..=12u64 {
            let nn = n as usize;
            let (_, c2) = mode_counts(2, nn).unwrap();
            assert_eq!(c2, n * n);
            let (_, c3) = mode_counts(3, nn).unwrap();
            assert_eq!(c3, n * (n + 1) * (2 * n + 1) / 6);
            let (_, c4) = mode_counts(4, nn).unwrap();
            assert_eq!(c4, n * (n + 1) * (n + 1) * (n + 2) / 12);
        }
        assert_eq!(mode_counts(4, 2).unwrap().1, 6);
        assert_eq!(mode_counts(3, 3).unwrap().1, 14);
        assert_eq!(mode_counts(2, 3).unwrap().1, 9);
        assert!(mode_counts(5, 3).is_err());
    }

    #[test]
    fn enumerated_counts_match_formula() {
        for m in [Manifold::S2, Manifold::S3, Manifold::S4] {
            for cutoff in 1..=5 {
                let b = harmonic_basis(m, cutoff).unwrap();
                let (_, total) = mode_counts(m.dim(), cutoff).unwrap();
                assert_eq!(b.len() as u64, total, "{m} cutoff {cutoff}");
            }
        }
    }

    #[test]
    fn parseval() {
        // P of degree <= cutoff-1 expanded in the basis: sum of squared
        // coefficients equals <P, P>
        let b = harmonic_basis(Manifold::S2, 4).unwrap();
        let x = Polynomial::coordinate(3, 0);
        let y = Polynomial::coordinate(3, 1);
        let z = Polynomial::coordinate(3, 2);
        let p = x
            .mul(&y)
            .unwrap()
            .mul(&z)
            .unwrap()
            .add(&x.scale(0.7))
            .unwrap()
            .add(&Polynomial::constant(3, -0.2))
            .unwrap();
        let coeffs = b.project(&p);
        let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
        let norm = integral(Manifold::S2, &p.mul(&p).unwrap());
        assert!((sum_sq - norm).abs() / norm < 1e-9);
    }

    #[test]
    fn quadrature_agrees_on_modes() {
        let b = harmonic_basis(Manifold::S3, 3).unwrap();
        for mode in b.modes.iter().step_by(3) {
            let p = mode.ambient_poly();
            let sq = p.mul(&p).unwrap();
            let exact = integral(Manifold::S3, &sq);
            let quad = quadrature_integral(Manifold::S3, &sq, 20).unwrap();
            assert!((exact - quad).abs() < 1e-8);
        }
    }
}
