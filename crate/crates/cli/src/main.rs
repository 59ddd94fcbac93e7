//! Command-line front end for the matrix-regularization library.
//!
//! Subcommands: `basis`, `matrixify`, `verify`, `converge`, `counts`.
//! Exit codes: 0 success, 1 assertion/suite failure, 2 validation
//! error, 3 I/O error, 4 capacity error (matrix size too small for the
//! requested cutoff; the minimal admissible size is printed).

use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use manifold_matrix::{
    counting_checks, four_commutator, gamma_commutator_scaling, harmonic_basis, hs_norm,
    k_commutator, leibniz_remainder, leibniz_remainder_closed_form, make_gamma_family, matrixify,
    nambu4_resolution_check, remainder_scaling, run_convergence, single_size_deviation,
    BracketKind, Branch, CMatrix, CoefficientReport, Error, Manifold,
};

const EXIT_FAIL: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_CAPACITY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "manifold-matrix",
    about = "Matrix regularization of embedded manifolds: bases, matrix harmonics, \
             verification suites and convergence experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the harmonic-polynomial basis for a manifold and cutoff.
    Basis {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Map the harmonic basis to matrices of a given size.
    Matrixify {
        #[command(flatten)]
        target: Target,
        /// Matrix family size (spin size for spheres of even kind,
        /// half the matrix dimension for the gamma family).
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a named invariant suite and report pass/fail per check.
    Verify {
        /// Suite to run.
        #[arg(long, value_enum)]
        suite: Suite,
        /// Size or inclusive size range (e.g. `8` or `2..16`) for the
        /// gamma suite.
        #[arg(long, default_value = "2..16")]
        n: SizeRange,
        /// Largest cutoff for the counting suite.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare matrix structure constants against the classical ones
    /// over a ladder of sizes.
    Converge {
        #[command(flatten)]
        target: Target,
        /// Comma-separated sizes, or `auto` for a doubling ladder
        /// starting at the minimal admissible size.
        #[arg(long, default_value = "auto")]
        sizes: SizeList,
        /// Bracket to use (defaults to the manifold's native one).
        #[arg(long, value_parser = BracketKind::from_str)]
        kind: Option<BracketKind>,
        /// Exit nonzero unless the coordinate-sector deviation is at
        /// most 1e-10 at every size.
        #[arg(long)]
        assert: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate harmonic mode counts against the closed-form sums.
    Counts {
        /// Largest cutoff to tabulate.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct Target {
    /// Manifold: s2, s3, s4 or s2xs2.
    #[arg(long, value_parser = Manifold::from_str)]
    manifold: Manifold,
    /// Polynomial degree cutoff (modes of degree < cutoff).
    #[arg(long)]
    cutoff: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Gamma,
    Resolution,
    Leibniz,
    Counting,
    All,
}

/// Inclusive size range parsed from `a..b` or a single size `a`.
#[derive(Clone)]
struct SizeRange {
    lo: usize,
    hi: usize,
}

impl FromStr for SizeRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size `{t}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo < 2 || hi < lo {
            return Err(format!("size range {lo}..{hi} is empty or below 2"));
        }
        Ok(SizeRange { lo, hi })
    }
}

/// Explicit comma-separated size list or `auto`.
#[derive(Clone)]
enum SizeList {
    Auto,
    Explicit(Vec<usize>),
}

impl FromStr for SizeList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(SizeList::Auto);
        }
        let sizes: Vec<usize> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad size `{t}`"))
            })
            .collect::<Result<_, _>>()?;
        if sizes.is_empty() {
            return Err("empty size list".into());
        }
        if sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err("sizes must be strictly increasing".into());
        }
        Ok(SizeList::Explicit(sizes))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let code = match cli.command {
        Command::Basis { target, out } => cmd_basis(target, out),
        Command::Matrixify { target, n, out } => cmd_matrixify(target, n, out),
        Command::Verify {
            suite,
            n,
            max_n,
            seed,
            out,
        } => cmd_verify(suite, n, max_n, seed, out),
        Command::Converge {
            target,
            sizes,
            kind,
            assert,
            out,
        } => cmd_converge(target, sizes, kind, assert, out),
        Command::Counts { max_n, out } => cmd_counts(max_n, out),
    };
    match code {
        Ok(c) => c,
        Err(e) => fail(e),
    }
}

/// MANIFOLD_MATRIX_THREADS caps the rayon pool; unset or invalid
/// leaves the default.
fn configure_threads() {
    if let Ok(v) = std::env::var("MANIFOLD_MATRIX_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k >= 1 {
                // Ignore the error if a pool already exists.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

fn fail(err: Error) -> ExitCode {
    let code = match &err {
        Error::Capacity { required_n, .. } => {
            eprintln!("error: {err}");
            eprintln!("minimal admissible size: {required_n}");
            return ExitCode::from(EXIT_CAPACITY);
        }
        _ => EXIT_VALIDATION,
    };
    eprintln!("error: {err}");
    ExitCode::from(code)
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), ExitCode> {
    match &out.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| {
                    if text.ends_with('\n') {
                        Ok(())
                    } else {
                        stdout.write_all(b"\n")
                    }
                })
                .map_err(|e| {
                    eprintln!("error: cannot write to stdout: {e}");
                    ExitCode::from(EXIT_IO)
                })
        }
        Some(path) => std::fs::write(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(EXIT_IO)
        }),
    }
}

fn require_json(out: &OutputArgs, what: &str) -> Result<(), ExitCode> {
    if out.format == Format::Csv {
        eprintln!("error: {what} has no CSV form; use --format json");
        return Err(ExitCode::from(EXIT_VALIDATION));
    }
    Ok(())
}

fn cmd_basis(target: Target, out: OutputArgs) -> Result<ExitCode, Error> {
    let basis = harmonic_basis(target.manifold, target.cutoff)?;
    if let Err(code) = require_json(&out, "the basis report") {
        return Ok(code);
    }
    let text = serde_json::to_string_pretty(&basis.to_json()).expect("serializable");
    match emit(&out, &text) {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err(code) => Ok(code),
    }
}

fn cmd_matrixify(target: Target, n: usize, out: OutputArgs) -> Result<ExitCode, Error> {
    let basis = harmonic_basis(target.manifold, target.cutoff)?;
    let set = matrixify(&basis, n)?;
    if let Err(code) = require_json(&out, "the matrix-harmonic report") {
        return Ok(code);
    }
    let text = serde_json::to_string_pretty(&set.to_json()).expect("serializable");
    match emit(&out, &text) {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err(code) => Ok(code),
    }
}

/// Minimal size accepted by the capacity rule, used as the base of the
/// `--sizes auto` ladder.
fn minimal_admissible_size(manifold: Manifold, cutoff: usize) -> Result<usize, Error> {
    match manifold {
        Manifold::S2 | Manifold::S2xS2 => Ok(cutoff.max(2)),
        Manifold::S3 | Manifold::S4 => {
            let modes = harmonic_basis(manifold, cutoff)?.len();
            Ok(modes.div_ceil(2).max(2))
        }
    }
}

fn auto_sizes(manifold: Manifold, cutoff: usize) -> Result<Vec<usize>, Error> {
    let base = minimal_admissible_size(manifold, cutoff)?;
    Ok((0..4).map(|k| base << k).collect())
}

fn cmd_converge(
    target: Target,
    sizes: SizeList,
    kind: Option<BracketKind>,
    assert: bool,
    out: OutputArgs,
) -> Result<ExitCode, Error> {
    let sizes = match sizes {
        SizeList::Auto => auto_sizes(target.manifold, target.cutoff)?,
        SizeList::Explicit(v) => v,
    };
    let report = run_convergence(target.manifold, target.cutoff, &sizes, kind)?;
    let text = match out.format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("serializable"),
        Format::Csv => report.to_csv(),
    };
    if let Err(code) = emit(&out, &text) {
        return Ok(code);
    }
    if assert {
        let bad: Vec<usize> = report
            .results
            .iter()
            .filter(|r| !(r.coordinate_deviation <= 1e-10))
            .map(|r| r.size)
            .collect();
        if !bad.is_empty() {
            eprintln!("assertion failed: coordinate-sector deviation above 1e-10 at sizes {bad:?}");
            return Ok(ExitCode::from(EXIT_FAIL));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_counts(max_n: usize, out: OutputArgs) -> Result<ExitCode, Error> {
    let rows = counting_checks(max_n)?;
    let text = match out.format {
        Format::Json => {
            serde_json::to_string_pretty(&serde_json::json!({ "rows": rows }))
                .expect("serializable")
        }
        Format::Csv => {
            let mut s = String::from("dim,cutoff,total,closed_form_total,per_degree\r\n");
            for r in &rows {
                let per: Vec<String> = r.per_degree.iter().map(u64::to_string).collect();
                s.push_str(&format!(
                    "{},{},{},{},{}\r\n",
                    r.dim,
                    r.n,
                    r.total,
                    r.closed_form_total,
                    per.join(" ")
                ));
            }
            s
        }
    };
    match emit(&out, &text) {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err(code) => Ok(code),
    }
}

// ---------------------------------------------------------------------------
// verify suites

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(checks: &mut Vec<Check>, name: &str, pass: bool, detail: String) {
    checks.push(Check {
        name: name.to_string(),
        pass,
        detail,
    });
}

fn random_matrix(rng: &mut impl Rng, dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    })
}

fn random_hermitian(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let a = random_matrix(rng, dim);
    (&a + &a.adjoint()).scale_re(0.5)
}

fn suite_gamma(range: &SizeRange, checks: &mut Vec<Check>) -> Result<(), Error> {
    let mut worst_four = 0.0f64;
    let mut worst_radius = 0.0f64;
    let mut worst_herm = 0.0f64;
    let mut d4_spread = 0.0f64;
    let mut d4_ref = None;
    for n in range.lo..=range.hi {
        let fam = make_gamma_family(n, Branch::Positive)?;
        worst_four = worst_four.max(fam.four_bracket_defect());
        worst_radius = worst_radius.max(fam.radius_defect());
        worst_herm = worst_herm.max(fam.hermiticity_defect());
        let nn = n as f64;
        let scaled = fam.d4 * (nn * nn - 1.0).sqrt();
        let r = *d4_ref.get_or_insert(scaled);
        d4_spread = d4_spread.max(((scaled - r) / r).abs());
    }
    check(
        checks,
        "gamma_four_bracket",
        worst_four <= 1e-10,
        format!("max 4-commutator defect {worst_four:.3e} over n={}..={}", range.lo, range.hi),
    );
    check(
        checks,
        "gamma_unit_radius",
        worst_radius <= 1e-10,
        format!("max radius defect {worst_radius:.3e}"),
    );
    check(
        checks,
        "gamma_hermitian",
        worst_herm <= 1e-12,
        format!("max hermiticity defect {worst_herm:.3e}"),
    );
    check(
        checks,
        "gamma_d4_scaling",
        d4_spread <= 1e-8,
        format!("d4*sqrt(n^2-1) relative spread {d4_spread:.3e}"),
    );
    let rep: CoefficientReport = manifold_matrix::coefficient_report(range.hi.max(4))?;
    check(
        checks,
        "gamma_coefficient_branch",
        (rep.ratio - std::f64::consts::SQRT_2).abs() <= 1e-12
            && rep.alt_radius_defect > 1e-3
            && rep.alt_four_bracket_defect > 1e-4,
        format!(
            "solved/alternative coefficient ratio {:.12} (alt radius defect {:.2e}, alt 4-bracket defect {:.2e})",
            rep.ratio, rep.alt_radius_defect, rep.alt_four_bracket_defect
        ),
    );
    Ok(())
}

fn suite_resolution(seed: u64, checks: &mut Vec<Check>) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mats: Vec<CMatrix> = (0..4).map(|_| random_matrix(&mut rng, 5)).collect();
        let refs: Vec<&CMatrix> = mats.iter().collect();
        let direct = k_commutator(&refs)?;
        let resolved = four_commutator(&mats[0], &mats[1], &mats[2], &mats[3])?;
        let scale = hs_norm(&direct).max(1e-30);
        worst = worst.max(hs_norm(&(&direct - &resolved)) / scale);
    }
    check(
        checks,
        "resolution_matrix_identity",
        worst <= 1e-10,
        format!("max relative defect {worst:.3e} on 100 random 4-tuples"),
    );

    // The same resolution at the polynomial level, on coordinate
    // 4-tuples of the product sphere.
    let basis = harmonic_basis(Manifold::S2xS2, 2)?;
    let coords: Vec<_> = basis
        .modes
        .iter()
        .filter(|m| m.degree.total() == 1)
        .map(|m| m.ambient_poly())
        .collect();
    let mut worst_poly = 0.0f64;
    for a in 0..coords.len() {
        for b in a + 1..coords.len() {
            for c in b + 1..coords.len() {
                for d in c + 1..coords.len() {
                    let args = [&coords[a], &coords[b], &coords[c], &coords[d]];
                    let (direct, resolved) = nambu4_resolution_check(&args)?;
                    worst_poly = worst_poly.max(direct.sub(&resolved)?.max_coeff());
                }
            }
        }
    }
    check(
        checks,
        "resolution_polynomial_identity",
        worst_poly <= 1e-12,
        format!("max coefficient defect {worst_poly:.3e} over coordinate 4-tuples"),
    );
    Ok(())
}

fn suite_leibniz(seed: u64, checks: &mut Vec<Check>) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let mats: Vec<CMatrix> = (0..5).map(|_| random_hermitian(&mut rng, 6)).collect();
        let args = [&mats[0], &mats[1], &mats[2], &mats[3], &mats[4]];
        let direct = leibniz_remainder(&args)?;
        let closed = leibniz_remainder_closed_form(&args);
        let scale = hs_norm(&direct).max(1e-30);
        worst = worst.max(hs_norm(&(&direct - &closed)) / scale);
    }
    check(
        checks,
        "leibniz_closed_form",
        worst <= 1e-10,
        format!("max relative defect {worst:.3e} on 25 random quintuples"),
    );

    let table = remainder_scaling(Manifold::S2, &[4, 8, 16])?;
    check(
        checks,
        "leibniz_scaling_s2",
        table.ratio_slope.slope <= -0.8,
        format!(
            "remainder/leading ratio slope {:.3} (norm slope {:.3})",
            table.ratio_slope.slope, table.norm_slope.slope
        ),
    );
    Ok(())
}

fn suite_counting(max_n: usize, checks: &mut Vec<Check>) -> Result<(), Error> {
    let rows = counting_checks(max_n)?;
    let all_match = rows.iter().all(|r| {
        r.per_degree == r.enumerated
            && r.total == r.closed_form_total
            && r.total == r.per_degree.iter().sum::<u64>()
    });
    check(
        checks,
        "counting_closed_forms",
        all_match,
        format!(
            "{} rows (d=2,3,4; cutoff 1..={max_n}): enumeration vs closed-form sums",
            rows.len()
        ),
    );
    let coord_exact = {
        let mut worst = 0.0f64;
        for n in [3usize, 5, 8] {
            let (classical, quantum) =
                single_size_deviation(Manifold::S3, 1, n, BracketKind::Nambu3Gamma5)?;
            worst = worst.max(classical.deviation(&quantum).0);
        }
        worst
    };
    check(
        checks,
        "s3_coordinate_sector",
        coord_exact <= 1e-12,
        format!("max deviation {coord_exact:.3e} at sizes 3, 5, 8"),
    );
    let (_, slope) = gamma_commutator_scaling(&[4, 8, 16, 32])?;
    check(
        checks,
        "s3_commutator_decay",
        slope.slope <= -0.8,
        format!("||[Gamma_i,Gamma_j]|| slope {:.3}", slope.slope),
    );
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    n: SizeRange,
    max_n: usize,
    seed: u64,
    out: OutputArgs,
) -> Result<ExitCode, Error> {
    if let Err(code) = require_json(&out, "the verification report") {
        return Ok(code);
    }
    let mut checks = Vec::new();
    match suite {
        Suite::Gamma => suite_gamma(&n, &mut checks)?,
        Suite::Resolution => suite_resolution(seed, &mut checks)?,
        Suite::Leibniz => suite_leibniz(seed, &mut checks)?,
        Suite::Counting => suite_counting(max_n, &mut checks)?,
        Suite::All => {
            suite_gamma(&n, &mut checks)?;
            suite_resolution(seed, &mut checks)?;
            suite_leibniz(seed, &mut checks)?;
            suite_counting(max_n, &mut checks)?;
        }
    }
    let failures: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let report = serde_json::json!({
        "suite": match suite {
            Suite::Gamma => "gamma",
            Suite::Resolution => "resolution",
            Suite::Leibniz => "leibniz",
            Suite::Counting => "counting",
            Suite::All => "all",
        },
        "seed": seed,
        "checks": checks.iter().map(|c| serde_json::json!({
            "name": c.name,
            "pass": c.pass,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "failed": failures.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
    });
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    if let Err(code) = emit(&out, &text) {
        return Ok(code);
    }
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_FAIL))
    }
}
