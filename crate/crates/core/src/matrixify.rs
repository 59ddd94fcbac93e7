//! Mapping harmonic modes to matrices and the quantum brackets.
//!
//! Each mode polynomial is turned into a matrix by the symmetrized
//! substitution of coordinate matrices (spin matrices for S^2,
//! Kronecker copies for S^2 x S^2, the gamma family for S^4 / S^3),
//! then rescaled to unit Hilbert-Schmidt norm. Quantum brackets carry
//! the normalization that makes the degree-1 sector reproduce the
//! classical structure constants exactly at every size.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::brackets::{canonical_tuples, next_permutation};
use crate::cmatrix::{commutator, four_commutator, hs_inner, hs_norm, kronecker, CMatrix};
use crate::error::{Error, Result};
use crate::gamma::{make_gamma_family, Branch, GammaFamily};
use crate::harmonics::HarmonicBasis;
use crate::manifold::Manifold;
use crate::polynomial::Polynomial;
use crate::spin::make_spin_rep;
use crate::structure::{SCKind, StructureConstants};

/// Quantum bracket flavours. Every manifold has a native one; the
/// product manifold additionally supports the plain commutator as a
/// regularization of its double-Poisson bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    /// `-i[A, B]`, regularizing a Poisson or double-Poisson bracket.
    Commutator2,
    /// The antisymmetrized 4-commutator, regularizing the Nambu
    /// 4-bracket.
    Nambu4,
    /// The 4-commutator anchored by the fifth gamma matrix,
    /// regularizing the Nambu 3-bracket on S^3.
    Nambu3Gamma5,
}

impl std::str::FromStr for BracketKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "commutator2" | "commutator" => Ok(BracketKind::Commutator2),
            "nambu4" => Ok(BracketKind::Nambu4),
            "nambu3" | "nambu3gamma5" => Ok(BracketKind::Nambu3Gamma5),
            other => Err(format!("unknown bracket kind: {other}")),
        }
    }
}

impl BracketKind {
    pub fn arity(self) -> usize {
        match self {
            BracketKind::Commutator2 => 2,
            BracketKind::Nambu4 => 4,
            BracketKind::Nambu3Gamma5 => 3,
        }
    }

    /// The bracket regularizing the manifold's volume-preserving
    /// structure.
    pub fn native(manifold: Manifold) -> Self {
        match manifold {
            Manifold::S2 => BracketKind::Commutator2,
            Manifold::S3 => BracketKind::Nambu3Gamma5,
            Manifold::S4 | Manifold::S2xS2 => BracketKind::Nambu4,
        }
    }
}

/// Average of the matrix products over all distinct orderings of each
/// monomial's coordinate factors; the matrix counterpart of a
/// polynomial before normalization.
pub fn symmetrized_substitute(poly: &Polynomial, coords: &[CMatrix]) -> Result<CMatrix> {
    if poly.ambient_dim() != coords.len() {
        return Err(Error::AmbientMismatch(poly.ambient_dim(), coords.len()));
    }
    let dim = coords[0].rows();
    let mut acc = CMatrix::zeros(dim, dim);
    for (exps, &coeff) in poly.terms() {
        let mut factors: Vec<usize> = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                factors.push(i);
            }
        }
        if factors.is_empty() {
            acc = &acc + &CMatrix::identity(dim).scale_re(coeff);
            continue;
        }
        // lexicographic sweep visits every distinct ordering of the
        // multiset exactly once
        factors.sort_unstable();
        let mut sum = CMatrix::zeros(dim, dim);
        let mut count = 0usize;
        loop {
            let mut prod = coords[factors[0]].clone();
            for &f in &factors[1..] {
                prod = &prod * &coords[f];
            }
            sum = &sum + &prod;
            count += 1;
            if !next_permutation(&mut factors) {
                break;
            }
        }
        acc = &acc + &sum.scale_re(coeff / count as f64);
    }
    Ok(acc)
}

/// The matrix counterparts of a truncated harmonic basis.
#[derive(Debug, Clone)]
pub struct MatrixHarmonicSet {
    pub manifold: Manifold,
    pub cutoff: usize,
    /// Size parameter: spin dimension for S^2 and each S^2 x S^2
    /// factor, half the matrix dimension for S^4 / S^3.
    pub n: usize,
    /// Actual matrix dimension.
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
    /// Normalization scale applied to each raw substitution so the
    /// stored matrix has unit Hilbert-Schmidt norm.
    pub scales: Vec<f64>,
    pub gamma_family: Option<GammaFamily>,
}

fn capacity_check(cutoff: usize, modes: usize, capacity: usize, required_n: usize, n: usize) -> Result<()> {
    if modes > capacity {
        return Err(Error::Capacity {
            cutoff,
            modes,
            required_n,
            n,
        });
    }
    Ok(())
}

fn coordinate_matrices(manifold: Manifold, n: usize) -> Result<(Vec<CMatrix>, usize, Option<GammaFamily>)> {
    match manifold {
        Manifold::S2 => {
            let rep = make_spin_rep(n)?;
            Ok((rep.j_ops.to_vec(), n, None))
        }
        Manifold::S2xS2 => {
            let rep = make_spin_rep(n)?;
            let id = CMatrix::identity(n);
            let mut coords = Vec::with_capacity(6);
            for j in &rep.j_ops {
                coords.push(kronecker(j, &id));
            }
            for j in &rep.j_ops {
                coords.push(kronecker(&id, j));
            }
            Ok((coords, n * n, None))
        }
        Manifold::S4 => {
            let fam = make_gamma_family(n, Branch::Positive)?;
            Ok((fam.gammas.to_vec(), 2 * n, Some(fam)))
        }
        Manifold::S3 => {
            let fam = make_gamma_family(n, Branch::Negative)?;
            Ok((fam.gammas[..4].to_vec(), 2 * n, Some(fam)))
        }
    }
}

/// Map every basis mode to its unit-norm matrix counterpart.
pub fn matrixify(basis: &HarmonicBasis, n: usize) -> Result<MatrixHarmonicSet> {
    let manifold = basis.manifold;
    let cutoff = basis.cutoff;
    let modes = basis.len();
    // capacity: S^2-type sizes must cover the degree cutoff; the
    // gamma-family matrices must satisfy 2n >= number of modes or the
    // mapped harmonics become linearly dependent
    match manifold {
        Manifold::S2 | Manifold::S2xS2 => {
            capacity_check(cutoff, modes, if n >= cutoff { modes } else { 0 }, cutoff, n)?
        }
        Manifold::S4 | Manifold::S3 => {
            capacity_check(cutoff, modes, 2 * n, modes.div_ceil(2), n)?
        }
    }

    matrixify_unchecked(basis, n)
}

/// [`matrixify`] without the capacity guard. Undersized families are
/// linearly dependent (some substitutions may even vanish, in which
/// case the matrix is kept unnormalized); useful only for
/// independence/rank experiments.
pub fn matrixify_unchecked(basis: &HarmonicBasis, n: usize) -> Result<MatrixHarmonicSet> {
    let manifold = basis.manifold;
    let (coords, dim, gamma_family) = coordinate_matrices(manifold, n)?;

    let raw: Vec<CMatrix> = basis
        .modes
        .par_iter()
        .map(|m| symmetrized_substitute(&m.ambient_poly(), &coords).expect("dims match"))
        .collect();
    let mut matrices = Vec::with_capacity(raw.len());
    let mut scales = Vec::with_capacity(raw.len());
    for m in raw {
        let norm = hs_norm(&m);
        let scale = if norm > 1e-13 { 1.0 / norm } else { 1.0 };
        matrices.push(m.scale_re(scale));
        scales.push(scale);
    }

    Ok(MatrixHarmonicSet {
        manifold,
        cutoff: basis.cutoff,
        n,
        dim,
        matrices,
        scales,
        gamma_family,
    })
}

impl MatrixHarmonicSet {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Commutator scale `2 / sqrt(n^2 - 1)` of the underlying spin
    /// representation (S^2 and S^2 x S^2 factor size).
    pub fn hbar(&self) -> f64 {
        let nn = self.n as f64;
        2.0 / (nn * nn - 1.0).sqrt()
    }

    pub fn basis_id(&self) -> String {
        format!("{}:cutoff{}:n{}", self.manifold, self.cutoff, self.n)
    }

    /// Hilbert-Schmidt Gram matrix (real part; imaginary parts vanish
    /// for Hermitian families).
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let k = self.len();
        let mut g = vec![vec![0.0; k]; k];
        for a in 0..k {
            for b in a..k {
                let v = hs_inner(&self.matrices[a], &self.matrices[b])
                    .expect("same dimension")
                    .re;
                g[a][b] = v;
                g[b][a] = v;
            }
        }
        g
    }

    /// max |Gram - 1|: how far the mapped harmonics are from
    /// orthonormal.
    pub fn gram_identity_defect(&self) -> f64 {
        let g = self.gram();
        let mut worst = 0.0f64;
        for (a, row) in g.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - want).abs());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Gram matrix; positive iff the mapped
    /// harmonics are linearly independent.
    pub fn gram_min_eigenvalue(&self) -> f64 {
        let k = self.len();
        let g = self.gram();
        let m = nalgebra::DMatrix::from_fn(k, k, |i, j| g[i][j]);
        let eig = nalgebra::SymmetricEigen::new(m);
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_hermiticity_defect(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| m.hermiticity_defect())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "manifold": self.manifold.to_string(),
            "cutoff": self.cutoff,
            "n": self.n,
            "dim": self.dim,
            "num_modes": self.len(),
            "modes": self.matrices.iter().zip(&self.scales).enumerate().map(|(idx, (m, s))| {
                serde_json::json!({
                    "index": idx,
                    "scale": s,
                    "entries": m.entries().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Real prefactor in front of the raw matrix bracket; fixed so the
/// degree-1 sector reproduces the classical structure constants
/// exactly at every size.
pub fn quantum_prefactor(set: &MatrixHarmonicSet, kind: BracketKind) -> Result<f64> {
    let unsupported = || {
        Err(Error::UnsupportedBracketKind(format!(
            "{} / {kind:?}",
            set.manifold
        )))
    };
    match (set.manifold, kind) {
        (Manifold::S2, BracketKind::Commutator2) => {
            Ok(1.0 / (set.hbar() * (4.0 * PI).sqrt()))
        }
        (Manifold::S2xS2, BracketKind::Commutator2) => Ok(1.0 / (set.hbar() * 4.0 * PI)),
        (Manifold::S2xS2, BracketKind::Nambu4) => {
            let h = set.hbar();
            Ok(-1.0 / (2.0 * h * h * 64.0 * PI.powi(3)))
        }
        (Manifold::S4, BracketKind::Nambu4) => {
            let d4 = set.gamma_family.as_ref().ok_or(Error::MissingGammaContext)?.d4;
            Ok(-1.0 / (2.0 * d4 * (8.0 * PI * PI / 3.0).powf(1.5)))
        }
        (Manifold::S3, BracketKind::Nambu3Gamma5) => {
            let d4 = set.gamma_family.as_ref().ok_or(Error::MissingGammaContext)?.d4;
            Ok(1.0 / (5.0 * PI * PI * d4.abs()))
        }
        _ => unsupported(),
    }
}

/// Quantum bracket of arbitrary matrices in the set's convention,
/// prefactor included. Hermitian inputs give a Hermitian output.
pub fn quantum_bracket(
    set: &MatrixHarmonicSet,
    kind: BracketKind,
    args: &[&CMatrix],
) -> Result<CMatrix> {
    if args.len() != kind.arity() {
        return Err(Error::ArityMismatch {
            table: kind.arity(),
            given: args.len(),
        });
    }
    let pref = quantum_prefactor(set, kind)?;
    match kind {
        BracketKind::Commutator2 => {
            Ok(commutator(args[0], args[1]).scale(Complex64::new(0.0, -pref)))
        }
        BracketKind::Nambu4 => {
            Ok(four_commutator(args[0], args[1], args[2], args[3])?.scale_re(pref))
        }
        BracketKind::Nambu3Gamma5 => {
            let fam = set.gamma_family.as_ref().ok_or(Error::MissingGammaContext)?;
            Ok(four_commutator(args[0], args[1], args[2], &fam.gammas[4])?.scale_re(pref))
        }
    }
}

/// Matrix structure constants: expand every canonical bracket in the
/// mapped basis by solving against the Gram matrix; the residual is
/// the closure defect (the Hilbert-Schmidt norm of the part of the
/// bracket outside the span).
pub fn matrix_structure_constants(
    set: &MatrixHarmonicSet,
    kind: BracketKind,
) -> Result<StructureConstants> {
    let k = set.len();
    let d = kind.arity();
    quantum_prefactor(set, kind)?; // validate the manifold/kind pair up front
    let gram = set.gram();
    let gm = nalgebra::DMatrix::from_fn(k, k, |i, j| gram[i][j]);
    let chol = nalgebra::Cholesky::new(gm).ok_or_else(|| {
        Error::UnsupportedBracketKind(format!(
            "Gram matrix of {} is not positive definite; mapped harmonics are dependent",
            set.basis_id()
        ))
    })?;

    let tuples = canonical_tuples(k, d);
    let rows: Vec<(Vec<usize>, Vec<f64>, f64)> = tuples
        .par_iter()
        .map(|tuple| {
            let args: Vec<&CMatrix> = tuple.iter().map(|&i| &set.matrices[i]).collect();
            let b = quantum_bracket(set, kind, &args).expect("validated kind");
            let rhs: Vec<f64> = set
                .matrices
                .iter()
                .map(|t| hs_inner(t, &b).expect("same dim").re)
                .collect();
            let rhs_v = nalgebra::DVector::from_vec(rhs);
            let coeffs = chol.solve(&rhs_v);
            // residual from the actual remainder matrix; the
            // norm-difference shortcut loses precision to cancellation
            let mut rem = b;
            for (t, &c) in set.matrices.iter().zip(coeffs.iter()) {
                if c != 0.0 {
                    rem = &rem - &t.scale_re(c);
                }
            }
            let residual = hs_norm(&rem);
            (tuple.clone(), coeffs.iter().copied().collect(), residual)
        })
        .collect();

    let mut sc = StructureConstants::new(d, SCKind::Matrix, set.basis_id(), k);
    for (tuple, coeffs, residual) in rows {
        sc.record(&tuple, &coeffs, residual);
    }
    Ok(sc)
}

/// Leibniz remainder of the plain 4-commutator,
/// `O = [F1,F2,F3,F4 F5] - [F1,F2,F3,F4] F5 - F4 [F1,F2,F3,F5]`,
/// computed directly from the definition.
pub fn leibniz_remainder(args: &[&CMatrix; 5]) -> Result<CMatrix> {
    let [f1, f2, f3, f4, f5] = *args;
    let f45 = f4 * f5;
    let lhs = four_commutator(f1, f2, f3, &f45)?;
    let t1 = &four_commutator(f1, f2, f3, f4)? * f5;
    let t2 = f4 * &four_commutator(f1, f2, f3, f5)?;
    Ok(&(&lhs - &t1) - &t2)
}

/// Six-term closed form of the same remainder, used to cross-validate
/// [`leibniz_remainder`]:
/// `[F1,F4][F5,[F2,F3]] + [F3,F4][F5,[F1,F2]] - [F2,F4][F5,[F1,F3]]
///  + [[F1,F2],F4][F3,F5] - [[F1,F3],F4][F2,F5] + [[F2,F3],F4][F1,F5]`.
pub fn leibniz_remainder_closed_form(args: &[&CMatrix; 5]) -> CMatrix {
    let [f1, f2, f3, f4, f5] = *args;
    let c = commutator;
    let t1 = &c(f1, f4) * &c(f5, &c(f2, f3));
    let t2 = &c(f3, f4) * &c(f5, &c(f1, f2));
    let t3 = &c(f2, f4) * &c(f5, &c(f1, f3));
    let t4 = &c(&c(f1, f2), f4) * &c(f3, f5);
    let t5 = &c(&c(f1, f3), f4) * &c(f2, f5);
    let t6 = &c(&c(f2, f3), f4) * &c(f1, f5);
    &(&(&(&t1 + &t2) - &t3) + &t4) - &(&t5 - &t6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::{classical_structure_constants, CoordinateBracketTable};
    use crate::harmonics::harmonic_basis;

    #[test]
    fn substitution_symmetrizes() {
        let rep = make_spin_rep(4).unwrap();
        let coords = rep.j_ops.to_vec();
        let x1x2 = Polynomial::coordinate(3, 0)
            .mul(&Polynomial::coordinate(3, 1))
            .unwrap();
        let m = symmetrized_substitute(&x1x2, &coords).unwrap();
        let j1j2 = &coords[0] * &coords[1];
        let j2j1 = &coords[1] * &coords[0];
        let want = (&j1j2 + &j2j1).scale_re(0.5);
        assert!((&m - &want).max_abs() < 1e-14);
        assert!(m.hermiticity_defect() < 1e-14);

        // constants map to multiples of the identity
        let c = Polynomial::constant(3, 2.5);
        let m = symmetrized_substitute(&c, &coords).unwrap();
        assert!((&m - &CMatrix::identity(4).scale_re(2.5)).max_abs() < 1e-15);
    }

    #[test]
    fn s2_degree_one_sector_is_exact() {
        for n in [2usize, 3, 5, 9] {
            let basis = harmonic_basis(Manifold::S2, 2).unwrap();
            let set = matrixify(&basis, n).unwrap();
            assert!(set.max_hermiticity_defect() < 1e-13);
            assert!(set.gram_identity_defect() < 1e-12, "n = {n}");

            let classical =
                classical_structure_constants(&basis, &CoordinateBracketTable::poisson_s2())
                    .unwrap();
            let quantum = matrix_structure_constants(&set, BracketKind::Commutator2).unwrap();
            let (max_dev, _) = classical.deviation(&quantum);
            assert!(max_dev < 1e-12, "n = {n}: {max_dev}");
            assert!(quantum.max_residual() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn s2_full_basis_closes() {
        // cutoff = n: the mapped harmonics span all n x n Hermitian
        // matrices, so every commutator closes with zero residual
        for n in [3usize, 4] {
            let basis = harmonic_basis(Manifold::S2, n).unwrap();
            let set = matrixify(&basis, n).unwrap();
            let sc = matrix_structure_constants(&set, BracketKind::Commutator2).unwrap();
            assert!(sc.max_residual() < 1e-10, "n = {n}: {}", sc.max_residual());
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let basis = harmonic_basis(Manifold::S2, 5).unwrap();
        assert!(matches!(
            matrixify(&basis, 4),
            Err(Error::Capacity { .. })
        ));
        // S4 cutoff 2 has 6 modes, so n = 2 (capacity 4) must fail
        let basis = harmonic_basis(Manifold::S4, 2).unwrap();
        assert!(matches!(matrixify(&basis, 2), Err(Error::Capacity { .. })));
        assert!(matrixify(&basis, 3).is_ok());
    }

    #[test]
    fn s4_degree_one_sector_is_exact() {
        let basis = harmonic_basis(Manifold::S4, 2).unwrap();
        let classical =
            classical_structure_constants(&basis, &CoordinateBracketTable::nambu4_s4()).unwrap();
        for n in [3usize, 4, 7] {
            let set = matrixify(&basis, n).unwrap();
            let quantum = matrix_structure_constants(&set, BracketKind::Nambu4).unwrap();
            let (max_dev, _) = classical.deviation(&quantum);
            assert!(max_dev < 1e-11, "n = {n}: {max_dev}");
        }
    }

    #[test]
    fn s3_degree_one_sector_is_exact() {
        let basis = harmonic_basis(Manifold::S3, 2).unwrap();
        let classical =
            classical_structure_constants(&basis, &CoordinateBracketTable::nambu3_s3()).unwrap();
        for n in [3usize, 5, 8] {
            let set = matrixify(&basis, n).unwrap();
            let quantum = matrix_structure_constants(&set, BracketKind::Nambu3Gamma5).unwrap();
            let (max_dev, _) = classical.deviation(&quantum);
            assert!(max_dev < 1e-11, "n = {n}: {max_dev}");
        }
    }

    #[test]
    fn s2xs2_degree_one_sectors_are_exact() {
        // exactness by convention covers the coordinate (degree <= 1)
        // sector; brackets involving (1,1) product modes carry genuine
        // finite-size corrections that must shrink with n
        let basis = harmonic_basis(Manifold::S2xS2, 2).unwrap();
        let coord = |tuple: &[usize]| {
            tuple
                .iter()
                .all(|&i| basis.modes[i].degree.total() <= 1)
        };
        let classical_dp = classical_structure_constants(
            &basis,
            &CoordinateBracketTable::double_poisson_s2xs2(),
        )
        .unwrap();
        let classical_n4 =
            classical_structure_constants(&basis, &CoordinateBracketTable::nambu4_s2xs2())
                .unwrap();
        let mut n4_devs = Vec::new();
        for n in [2usize, 3, 4] {
            let set = matrixify(&basis, n).unwrap();
            let quantum_dp = matrix_structure_constants(&set, BracketKind::Commutator2).unwrap();
            let (max_dev, _) = classical_dp.deviation_filtered(&quantum_dp, coord);
            assert!(max_dev < 1e-11, "n = {n} commutator: {max_dev}");

            let quantum_n4 = matrix_structure_constants(&set, BracketKind::Nambu4).unwrap();
            let (max_dev, _) = classical_n4.deviation_filtered(&quantum_n4, coord);
            assert!(max_dev < 1e-11, "n = {n} nambu4: {max_dev}");
            let (full_dev, _) = classical_n4.deviation(&quantum_n4);
            n4_devs.push(full_dev);
        }
        assert!(
            n4_devs[0] > n4_devs[1] && n4_devs[1] > n4_devs[2],
            "{n4_devs:?}"
        );
    }

    #[test]
    fn kind_validation() {
        let basis = harmonic_basis(Manifold::S2, 2).unwrap();
        let set = matrixify(&basis, 3).unwrap();
        assert!(matches!(
            quantum_prefactor(&set, BracketKind::Nambu4),
            Err(Error::UnsupportedBracketKind(_))
        ));
        let a = &set.matrices[0];
        assert!(matches!(
            quantum_bracket(&set, BracketKind::Commutator2, &[a]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn leibniz_remainder_matches_closed_form() {
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed as f64 / u64::MAX as f64) - 0.5
        };
        for _ in 0..5 {
            let ms: Vec<CMatrix> = (0..5)
                .map(|_| {
                    let m = CMatrix::from_fn(4, 4, |_, _| Complex64::new(next(), next()));
                    (&m + &m.adjoint()).scale_re(0.5)
                })
                .collect();
            let args = [&ms[0], &ms[1], &ms[2], &ms[3], &ms[4]];
            let direct = leibniz_remainder(&args).unwrap();
            let closed = leibniz_remainder_closed_form(&args);
            let scale = direct.max_abs().max(1.0);
            assert!(
                (&direct - &closed).max_abs() / scale < 1e-12,
                "{}",
                (&direct - &closed).max_abs()
            );
        }
    }

    #[test]
    fn gram_eigenvalues_positive_within_capacity() {
        let basis = harmonic_basis(Manifold::S4, 2).unwrap();
        let set = matrixify(&basis, 4).unwrap();
        assert!(set.gram_min_eigenvalue() > 1e-6);
    }
}
