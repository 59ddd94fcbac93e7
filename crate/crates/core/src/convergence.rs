//! Convergence experiments: classical vs matrix structure constants
//! across a ladder of sizes, remainder scaling, counting checks and
//! linear-independence diagnostics, assembled into deterministic
//! reports.

use serde::Serialize;

use crate::brackets::{classical_structure_constants, CoordinateBracketTable};
use crate::cmatrix::{commutator, hs_norm, CMatrix};
use crate::error::{Error, Result};
use crate::gamma::{make_gamma_family, Branch};
use crate::harmonics::{harmonic_basis, mode_counts, HarmonicBasis};
use crate::manifold::Manifold;
use crate::matrixify::{
    leibniz_remainder, matrix_structure_constants, matrixify, BracketKind, MatrixHarmonicSet,
};
use crate::structure::StructureConstants;

pub const RANK_SV_TOL: f64 = 1e-8;

/// Least-squares line through (ln x, ln y).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual of the fit in log space.
    pub residual: f64,
}

pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<SlopeFit> {
    if xs.len() < 3 {
        return Err(Error::TooFewSizes(xs.len()));
    }
    debug_assert_eq!(xs.len(), ys.len());
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(1e-300).ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(SlopeFit {
        slope,
        intercept,
        residual,
    })
}

/// Min singular value and numerical rank (threshold 1e-8) of the
/// stacked, vectorized mode matrices. Computed from the
/// Hilbert-Schmidt Gram spectrum: `V V† = dim * Gram`.
pub fn independence_check(set: &MatrixHarmonicSet) -> (f64, usize) {
    let k = set.len();
    let gram = set.gram();
    let m = nalgebra::DMatrix::from_fn(k, k, |i, j| gram[i][j]);
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut min_sv = f64::INFINITY;
    let mut max_sv = 0.0f64;
    let svs: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&lam| (lam.max(0.0) * set.dim as f64).sqrt())
        .collect();
    for &sv in &svs {
        min_sv = min_sv.min(sv);
        max_sv = max_sv.max(sv);
    }
    // the Gram eigenvalue noise floor is eps * lambda_max, so singular
    // values down to ~sqrt(eps) * max_sv are indistinguishable from
    // zero; the absolute 1e-8 cutoff alone sits inside that band
    let cutoff = RANK_SV_TOL.max(1e-7 * max_sv);
    let rank = svs.iter().filter(|&&sv| sv > cutoff).count();
    (min_sv, rank)
}

#[derive(Debug, Clone, Serialize)]
pub struct SizeResult {
    pub size: usize,
    pub dim: usize,
    pub max_deviation: f64,
    pub rms_deviation: f64,
    /// Deviation restricted to tuples of degree <= 1 modes; zero by
    /// the quantization convention.
    pub coordinate_deviation: f64,
    pub max_closure_defect: f64,
    pub gram_defect: f64,
    pub min_singular_value: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub manifold: String,
    pub cutoff: usize,
    pub kind: String,
    pub num_modes: usize,
    pub sizes: Vec<usize>,
    pub results: Vec<SizeResult>,
    /// Fit of the max in-cutoff deviation against size (needs >= 3
    /// sizes).
    pub deviation_slope: Option<SlopeFit>,
    pub counting: CountingRow,
}

fn kind_name(kind: BracketKind) -> &'static str {
    match kind {
        BracketKind::Commutator2 => "commutator2",
        BracketKind::Nambu4 => "nambu4",
        BracketKind::Nambu3Gamma5 => "nambu3_gamma5",
    }
}

fn classical_table(manifold: Manifold, kind: BracketKind) -> Result<CoordinateBracketTable> {
    match (manifold, kind) {
        (Manifold::S2, BracketKind::Commutator2) => Ok(CoordinateBracketTable::poisson_s2()),
        (Manifold::S2xS2, BracketKind::Commutator2) => {
            Ok(CoordinateBracketTable::double_poisson_s2xs2())
        }
        (Manifold::S2xS2, BracketKind::Nambu4) => Ok(CoordinateBracketTable::nambu4_s2xs2()),
        (Manifold::S4, BracketKind::Nambu4) => Ok(CoordinateBracketTable::nambu4_s4()),
        (Manifold::S3, BracketKind::Nambu3Gamma5) => Ok(CoordinateBracketTable::nambu3_s3()),
        (m, k) => Err(Error::UnsupportedBracketKind(format!("{m} / {k:?}"))),
    }
}

fn coordinate_sector_filter(basis: &HarmonicBasis) -> impl Fn(&[usize]) -> bool + '_ {
    move |tuple: &[usize]| tuple.iter().all(|&i| basis.modes[i].degree.total() <= 1)
}

/// Classical structure constants once, matrix structure constants per
/// size, with deviation, closure and independence diagnostics.
pub fn run_convergence(
    manifold: Manifold,
    cutoff: usize,
    sizes: &[usize],
    kind: Option<BracketKind>,
) -> Result<ConvergenceReport> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::SizesNotIncreasing);
    }
    let kind = kind.unwrap_or_else(|| BracketKind::native(manifold));
    let basis = harmonic_basis(manifold, cutoff)?;
    let classical = classical_structure_constants(&basis, &classical_table(manifold, kind)?)?;

    let keep = coordinate_sector_filter(&basis);
    let mut results = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let set = matrixify(&basis, n)?;
        let quantum = matrix_structure_constants(&set, kind)?;
        let (max_dev, rms_dev) = classical.deviation(&quantum);
        let (coord_dev, _) = classical.deviation_filtered(&quantum, &keep);
        let (min_sv, rank) = independence_check(&set);
        results.push(SizeResult {
            size: n,
            dim: set.dim,
            max_deviation: max_dev,
            rms_deviation: rms_dev,
            coordinate_deviation: coord_dev,
            max_closure_defect: quantum.max_residual(),
            gram_defect: set.gram_identity_defect(),
            min_singular_value: min_sv,
            rank,
        });
    }

    let deviation_slope = if sizes.len() >= 3 {
        let xs: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
        let ys: Vec<f64> = results.iter().map(|r| r.max_deviation).collect();
        Some(fit_loglog(&xs, &ys)?)
    } else {
        None
    };

    Ok(ConvergenceReport {
        manifold: manifold.to_string(),
        cutoff,
        kind: kind_name(kind).to_string(),
        num_modes: basis.len(),
        sizes: sizes.to_vec(),
        results,
        deviation_slope,
        counting: counting_row(manifold.dim().min(4), cutoff)?,
    })
}

impl ConvergenceReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut slopes = serde_json::Map::new();
        if let Some(s) = &self.deviation_slope {
            slopes.insert("max_deviation".into(), serde_json::to_value(s).unwrap());
        }
        serde_json::json!({
            "manifold": self.manifold,
            "cutoff": self.cutoff,
            "kind": self.kind,
            "num_modes": self.num_modes,
            "sizes": self.sizes,
            "deviations": self.results.iter().map(|r| serde_json::json!({
                "size": r.size,
                "max": r.max_deviation,
                "rms": r.rms_deviation,
                "coordinate_sector": r.coordinate_deviation,
            })).collect::<Vec<_>>(),
            "closure_defects": self.results.iter().map(|r| serde_json::json!({
                "size": r.size,
                "max": r.max_closure_defect,
            })).collect::<Vec<_>>(),
            "slopes": serde_json::Value::Object(slopes),
            "counting": serde_json::to_value(&self.counting).unwrap(),
            "independence": self.results.iter().map(|r| serde_json::json!({
                "size": r.size,
                "gram_defect": r.gram_defect,
                "min_singular_value": r.min_singular_value,
                "rank": r.rank,
            })).collect::<Vec<_>>(),
        })
    }

    /// One row per size (RFC 4180: CRLF line endings).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "size,dim,max_deviation,rms_deviation,coordinate_deviation,max_closure_defect,gram_defect,min_singular_value,rank\r\n",
        );
        for r in &self.results {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\r\n",
                r.size,
                r.dim,
                r.max_deviation,
                r.rms_deviation,
                r.coordinate_deviation,
                r.max_closure_defect,
                r.gram_defect,
                r.min_singular_value,
                r.rank
            ));
        }
        out
    }
}

/// Deviation between classical and matrix structure constants for one
/// manifold, cutoff and size (convenience wrapper used by the CLI
/// verify suites).
pub fn single_size_deviation(
    manifold: Manifold,
    cutoff: usize,
    n: usize,
    kind: BracketKind,
) -> Result<(StructureConstants, StructureConstants)> {
    let basis = harmonic_basis(manifold, cutoff)?;
    let classical = classical_structure_constants(&basis, &classical_table(manifold, kind)?)?;
    let set = matrixify(&basis, n)?;
    let quantum = matrix_structure_constants(&set, kind)?;
    Ok((classical, quantum))
}

#[derive(Debug, Clone, Serialize)]
pub struct RemainderRow {
    pub size: usize,
    pub remainder_norm: f64,
    pub leading_norm: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RemainderTable {
    pub manifold: String,
    pub rows: Vec<RemainderRow>,
    pub norm_slope: SlopeFit,
    pub ratio_slope: SlopeFit,
}

/// Leibniz-remainder scaling on a fixed low-degree mode quintuple.
///
/// Quintuples built purely from degree-1 modes have identically zero
/// remainder (their commutators close on the coordinate triple and
/// the six remainder terms cancel pairwise), so a mixed degree-1 /
/// degree-2 quintuple is used. The reference scale is the largest
/// Hilbert-Schmidt norm among the anticommutator terms of the
/// resolution of `[F1,F2,F3,F4 F5]` — the full antisymmetrized sum
/// itself degenerates on S^2, where the classical pairwise-product
/// combination vanishes identically on a 2-manifold.
pub fn remainder_scaling(manifold: Manifold, sizes: &[usize]) -> Result<RemainderTable> {
    if sizes.len() < 3 {
        return Err(Error::TooFewSizes(sizes.len()));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::SizesNotIncreasing);
    }
    let (basis, quintuple): (HarmonicBasis, [usize; 5]) = match manifold {
        // two coordinate modes, a degree-2 mode, the third coordinate,
        // another degree-2 mode
        Manifold::S2 => (harmonic_basis(Manifold::S2, 3)?, [1, 2, 4, 3, 5]),
        // four coordinate modes and one degree-2 mode
        Manifold::S4 => (harmonic_basis(Manifold::S4, 3)?, [1, 2, 3, 4, 6]),
        m => {
            return Err(Error::UnsupportedBracketKind(format!(
                "remainder scaling is defined for s2 and s4, not {m}"
            )))
        }
    };

    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        // the capacity rule guards basis-wide independence, which is
        // irrelevant for a fixed quintuple
        let set = crate::matrixify::matrixify_unchecked(&basis, n)?;
        let args: [&CMatrix; 5] = [
            &set.matrices[quintuple[0]],
            &set.matrices[quintuple[1]],
            &set.matrices[quintuple[2]],
            &set.matrices[quintuple[3]],
            &set.matrices[quintuple[4]],
        ];
        let remainder = leibniz_remainder(&args)?;
        let f45 = args[3] * args[4];
        let c12 = commutator(args[0], args[1]);
        let c13 = commutator(args[0], args[2]);
        let c1p = commutator(args[0], &f45);
        let c23 = commutator(args[1], args[2]);
        let c2p = commutator(args[1], &f45);
        let c3p = commutator(args[2], &f45);
        let leading_norm = [
            crate::cmatrix::anticommutator(&c12, &c3p),
            crate::cmatrix::anticommutator(&c13, &c2p),
            crate::cmatrix::anticommutator(&c1p, &c23),
        ]
        .iter()
        .map(hs_norm)
        .fold(0.0, f64::max);
        let rn = hs_norm(&remainder);
        rows.push(RemainderRow {
            size: n,
            remainder_norm: rn,
            leading_norm,
            ratio: rn / leading_norm,
        });
    }

    let xs: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let norm_slope = fit_loglog(&xs, &rows.iter().map(|r| r.remainder_norm).collect::<Vec<_>>())?;
    let ratio_slope = fit_loglog(&xs, &rows.iter().map(|r| r.ratio).collect::<Vec<_>>())?;
    Ok(RemainderTable {
        manifold: manifold.to_string(),
        rows,
        norm_slope,
        ratio_slope,
    })
}

/// `max_{i<j<=3} ||[Gamma_i, Gamma_j]||` per size with its log-log
/// slope; the spin-spin commutators vanish in the large-n limit.
pub fn gamma_commutator_scaling(sizes: &[usize]) -> Result<(Vec<(usize, f64)>, SlopeFit)> {
    if sizes.len() < 3 {
        return Err(Error::TooFewSizes(sizes.len()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let fam = make_gamma_family(n, Branch::Positive)?;
        let mut worst = 0.0f64;
        for i in 0..3usize {
            for j in i + 1..3 {
                worst = worst.max(hs_norm(&commutator(&fam.gammas[i], &fam.gammas[j])));
            }
        }
        rows.push((n, worst));
    }
    let xs: Vec<f64> = sizes.iter().map(|&s| s as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let slope = fit_loglog(&xs, &ys)?;
    Ok((rows, slope))
}

#[derive(Debug, Clone, Serialize)]
pub struct CountingRow {
    pub n: usize,
    pub dim: usize,
    /// Closed-form mode counts per degree l < n (binomial difference).
    pub per_degree: Vec<u64>,
    /// Independent enumeration by angular-momentum label chains.
    pub enumerated: Vec<u64>,
    pub total: u64,
    /// The closed-form cumulative sum: N(N+1)^2(N+2)/12 for d = 4,
    /// N(N+1)(2N+1)/6 for d = 3, N^2 for d = 2.
    pub closed_form_total: u64,
    /// d = 4 only: total < (N^2 - 1)^2 (trivially false at N = 1).
    pub below_square_bound: Option<bool>,
}

/// Number of harmonics of degree l on S^d by enumerating label chains
/// `l >= m_1 >= ... >= m_{d-2} >= |m_{d-1}|`.
fn label_count(d: usize, l: usize) -> u64 {
    match d {
        2 => 2 * l as u64 + 1,
        3 => {
            let mut c = 0u64;
            for m1 in 0..=l {
                c += 2 * m1 as u64 + 1;
            }
            c
        }
        4 => {
            let mut c = 0u64;
            for m1 in 0..=l {
                for m2 in 0..=m1 {
                    c += 2 * m2 as u64 + 1;
                }
            }
            c
        }
        _ => unreachable!("supported sphere dimensions are 2, 3, 4"),
    }
}

pub fn counting_row(d: usize, n: usize) -> Result<CountingRow> {
    let (per_degree, total) = mode_counts(d, n)?;
    let enumerated: Vec<u64> = (0..n).map(|l| label_count(d, l)).collect();
    let nn = n as u64;
    let closed_form_total = match d {
        2 => nn * nn,
        3 => nn * (nn + 1) * (2 * nn + 1) / 6,
        4 => nn * (nn + 1) * (nn + 1) * (nn + 2) / 12,
        _ => unreachable!(),
    };
    let below_square_bound = if d == 4 {
        let b = nn * nn - 1;
        Some(total < b * b)
    } else {
        None
    };
    Ok(CountingRow {
        n,
        dim: d,
        per_degree,
        enumerated,
        total,
        closed_form_total,
        below_square_bound,
    })
}

/// Counting table across cutoffs for all supported sphere dimensions.
pub fn counting_checks(max_n: usize) -> Result<Vec<CountingRow>> {
    let mut out = Vec::new();
    for d in [2usize, 3, 4] {
        for n in 1..=max_n {
            out.push(counting_row(d, n)?);
        }
    }
    Ok(out)
}
