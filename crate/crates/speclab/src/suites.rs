//! Randomized verification suites.
//!
//! Each suite draws a reproducible batch of instances from a seeded RNG,
//! runs the matching checker on every one, and tallies the outcomes. The
//! same seed always produces the same instances, the same per-case results,
//! and byte-identical serialized reports.

use std::env;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beurling::{GaussAtom, TestFunction};
use crate::calculus::{
    check_corollary_2_13, check_corollary_2_8, check_lemma_2_12, check_prop_2_5,
    check_theorem_2_1, check_theorem_2_11, check_theorem_2_14, eigen_split_cor_2_9,
};
use crate::config;
use crate::derivation::{check_prop_3_5, check_prop_3_7, deddens_membership, DerivationContext};
use crate::error::Error;
use crate::linalg::{inverse, ComplexMatrix, ComplexVector, NormFamily};
use crate::report::TheoremReport;

/// The statement catalog: every named suite the `verify` command accepts,
/// except the umbrella `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteId {
    #[serde(rename = "thm2.1")]
    Thm2_1,
    #[serde(rename = "cor2.8")]
    Cor2_8,
    #[serde(rename = "cor2.9")]
    Cor2_9,
    #[serde(rename = "lem2.12")]
    Lem2_12,
    #[serde(rename = "thm2.11")]
    Thm2_11,
    #[serde(rename = "cor2.13")]
    Cor2_13,
    #[serde(rename = "thm2.14")]
    Thm2_14,
    #[serde(rename = "prop2.5")]
    Prop2_5,
    #[serde(rename = "thm3.1")]
    Thm3_1,
    #[serde(rename = "prop3.5")]
    Prop3_5,
    #[serde(rename = "prop3.7")]
    Prop3_7,
}

pub const ALL_SUITES: [SuiteId; 11] = [
    SuiteId::Thm2_1,
    SuiteId::Cor2_8,
    SuiteId::Cor2_9,
    SuiteId::Lem2_12,
    SuiteId::Thm2_11,
    SuiteId::Cor2_13,
    SuiteId::Thm2_14,
    SuiteId::Prop2_5,
    SuiteId::Thm3_1,
    SuiteId::Prop3_5,
    SuiteId::Prop3_7,
];

impl SuiteId {
    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Thm2_1 => "thm2.1",
            SuiteId::Cor2_8 => "cor2.8",
            SuiteId::Cor2_9 => "cor2.9",
            SuiteId::Lem2_12 => "lem2.12",
            SuiteId::Thm2_11 => "thm2.11",
            SuiteId::Cor2_13 => "cor2.13",
            SuiteId::Thm2_14 => "thm2.14",
            SuiteId::Prop2_5 => "prop2.5",
            SuiteId::Thm3_1 => "thm3.1",
            SuiteId::Prop3_5 => "prop3.5",
            SuiteId::Prop3_7 => "prop3.7",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_SUITES
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown suite '{s}'; expected one of {} or 'all'",
                    ALL_SUITES
                        .iter()
                        .map(|id| id.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }
}

/// Knobs shared by every suite. `alpha` and `norm` override the default
/// per-case rotation through weights and norm families.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub alpha: Option<f64>,
    pub norm: Option<NormFamily>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: config::DEFAULT_SEED,
            alpha: None,
            norm: None,
        }
    }
}

/// Outcome of one suite run: every per-case report plus the tally. Contains
/// no timestamps or host data, so equal configurations serialize equally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Stable identifier for merging: suite name plus the seed.
    pub run_id: String,
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<TheoremReport>,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl SuiteReport {
    fn tally(suite: SuiteId, seed: u64, cases: Vec<TheoremReport>) -> Self {
        let passed = cases.iter().filter(|c| c.applicable && c.pass).count();
        let failed = cases.iter().filter(|c| c.is_failure()).count();
        let not_applicable = cases.iter().filter(|c| !c.applicable).count();
        SuiteReport {
            run_id: format!("{}-{:#018x}", suite, seed),
            suite: suite.name().to_string(),
            seed,
            cases,
            passed,
            failed,
            not_applicable,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `op` on a rayon pool sized by the `SPECLAB_WORKERS` environment
/// variable; unset, empty, or unparsable values fall back to the default
/// global pool.
pub fn with_worker_pool<T: Send>(op: impl FnOnce() -> T + Send) -> T {
    let workers = env::var(config::WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        },
        None => op(),
    }
}

fn case_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A checker that errors (rather than reporting) becomes a failing case, so
/// one bad instance never aborts the batch.
fn checker_failure(suite: SuiteId, seed: u64, err: &Error) -> TheoremReport {
    let mut report = TheoremReport::new(suite.name());
    report.seed(seed);
    report.hypothesis("checker completed", false, err);
    report.conclude(f64::INFINITY, 0.0)
}

fn run_cases<F>(suite: SuiteId, cfg: &SuiteConfig, count: usize, case: F) -> SuiteReport
where
    F: Fn(usize, u64) -> Result<TheoremReport, Error> + Sync,
{
    let cases: Vec<TheoremReport> = with_worker_pool(|| {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let seed = case_seed(cfg.seed, i as u64);
                case(i, seed).unwrap_or_else(|e| checker_failure(suite, seed, &e))
            })
            .collect()
    });
    SuiteReport::tally(suite, cfg.seed, cases)
}

// ---------------------------------------------------------------------------
// Random instance generators.
// ---------------------------------------------------------------------------

fn box_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> ComplexVector {
    loop {
        let mut entries = Vec::with_capacity(dim);
        for _ in 0..dim {
            entries.push(box_complex(rng));
        }
        let v = ComplexVector::new(entries).expect("dim > 0");
        if v.norm_l2() > 0.1 {
            return v;
        }
    }
}

/// Modified Gram-Schmidt on a complex Ginibre draw; redraws on
/// near-dependence, so the result is always unitary to machine precision.
fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    'redraw: loop {
        let mut cols: Vec<ComplexVector> = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut v = random_vector(rng, dim);
            for _ in 0..2 {
                for q in &cols {
                    let overlap = q.inner(&v);
                    v = v.sub(&q.scale(overlap));
                }
            }
            let norm = v.norm_l2();
            if norm < 1e-3 {
                continue 'redraw;
            }
            cols.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
        return ComplexMatrix::from_fn(dim, |r, c| cols[c].get(r));
    }
}

/// A well-conditioned random similarity `V = Q (I + N/4)` with `Q` unitary
/// and `N` strictly upper triangular; returns `(V, V^{-1})`.
fn random_similarity(rng: &mut ChaCha8Rng, dim: usize) -> (ComplexMatrix, ComplexMatrix) {
    let q = random_unitary(rng, dim);
    let mut shear = ComplexMatrix::identity(dim);
    for r in 0..dim {
        for c in (r + 1)..dim {
            shear.set(r, c, box_complex(rng).scale(0.25));
        }
    }
    let v = q.mul(&shear);
    let v_inv = inverse(&v).expect("unitary times unit-triangular shear is invertible");
    (v, v_inv)
}

/// `count` reals in `[lo, hi]` with pairwise separation at least `sep`.
fn separated_reals(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64, sep: f64) -> Vec<f64> {
    // Guarantees the rejection loop accepts quickly: `count` points with
    // pairwise gaps `sep` fit in the interval with room to spare.
    assert!(
        hi - lo >= sep * count as f64,
        "separation target leaves no room"
    );
    loop {
        let points: Vec<f64> = (0..count).map(|_| lo + rng.gen::<f64>() * (hi - lo)).collect();
        let ok = (0..count)
            .all(|i| (0..i).all(|j| (points[i] - points[j]).abs() >= sep));
        if ok {
            return points;
        }
    }
}

/// Semisimple matrix with the given eigenvalues, conjugated by a random
/// well-conditioned similarity.
fn similar_diagonal(
    rng: &mut ChaCha8Rng,
    eigenvalues: &[Complex64],
) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let (v, v_inv) = random_similarity(rng, eigenvalues.len());
    let d = ComplexMatrix::diagonal(eigenvalues);
    (v.mul(&d).mul(&v_inv), v, v_inv)
}

/// Block-diagonal Jordan form: one block per `(eigenvalue, size)` entry.
fn jordan_blocks(blocks: &[(Complex64, usize)]) -> ComplexMatrix {
    let dim: usize = blocks.iter().map(|b| b.1).sum();
    let mut m = ComplexMatrix::zeros(dim);
    let mut at = 0;
    for &(lambda, size) in blocks {
        for k in 0..size {
            m.set(at + k, at + k, lambda);
            if k + 1 < size {
                m.set(at + k, at + k + 1, Complex64::new(1.0, 0.0));
            }
        }
        at += size;
    }
    m
}

/// Deterministic catalog of smooth transforms used by the calculus suites.
fn calculus_test_functions() -> Vec<TestFunction> {
    vec![
        TestFunction::gaussian(1.0).expect("positive width"),
        TestFunction::gaussian(0.6).expect("positive width"),
        TestFunction::modulated_gaussian(1.0, 1.3).expect("positive width"),
        TestFunction::modulated_gaussian(0.8, -2.5).expect("positive width"),
        TestFunction::gaussian_poly(vec![GaussAtom::new(
            Complex64::new(0.7, -0.3),
            1,
            1.2,
            0.5,
        )])
        .expect("nonempty atom list"),
        TestFunction::gaussian_poly(vec![
            GaussAtom::new(Complex64::new(1.0, 0.0), 0, 1.0, -0.7),
            GaussAtom::new(Complex64::new(0.0, 0.4), 2, 0.9, 1.1),
        ])
        .expect("nonempty atom list"),
    ]
}

const ALPHA_ROTATION: [f64; 3] = [0.0, 0.3, 0.7];
const NORM_ROTATION: [NormFamily; 3] = [NormFamily::L1, NormFamily::L2, NormFamily::LInf];

fn pick_alpha(cfg: &SuiteConfig, index: usize) -> f64 {
    cfg.alpha
        .unwrap_or(ALPHA_ROTATION[index % ALPHA_ROTATION.len()])
}

fn pick_norm(cfg: &SuiteConfig, index: usize) -> NormFamily {
    cfg.norm
        .unwrap_or(NORM_ROTATION[index % NORM_ROTATION.len()])
}

fn require_unit_alpha(cfg: &SuiteConfig, suite: SuiteId) -> Result<(), Error> {
    if let Some(a) = cfg.alpha {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::Domain(format!(
                "suite {suite} needs alpha in [0, 1), got {a}"
            )));
        }
    }
    Ok(())
}

fn require_nonnegative_alpha(cfg: &SuiteConfig, suite: SuiteId) -> Result<(), Error> {
    if let Some(a) = cfg.alpha {
        if !(a >= 0.0) {
            return Err(Error::Domain(format!(
                "suite {suite} needs alpha >= 0, got {a}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Suite runners.
// ---------------------------------------------------------------------------

/// Runs one named suite with the given configuration.
pub fn run_suite(suite: SuiteId, cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    match suite {
        SuiteId::Thm2_1 => run_thm2_1(cfg),
        SuiteId::Cor2_8 => run_cor2_8(cfg),
        SuiteId::Cor2_9 => run_cor2_9(cfg),
        SuiteId::Lem2_12 => run_lem2_12(cfg),
        SuiteId::Thm2_11 => run_thm2_11(cfg),
        SuiteId::Cor2_13 => run_cor2_13(cfg),
        SuiteId::Thm2_14 => run_thm2_14(cfg),
        SuiteId::Prop2_5 => run_prop2_5(cfg),
        SuiteId::Thm3_1 => run_thm3_1(cfg),
        SuiteId::Prop3_5 => run_prop3_5(cfg),
        SuiteId::Prop3_7 => run_prop3_7(cfg),
    }
}

/// Runs every suite in catalog order, deriving a distinct seed for each.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>, Error> {
    let mut reports = Vec::with_capacity(ALL_SUITES.len());
    for (i, &suite) in ALL_SUITES.iter().enumerate() {
        let sub = SuiteConfig {
            seed: case_seed(cfg.seed, 0x5EED_0000 + i as u64),
            ..*cfg
        };
        reports.push(run_suite(suite, &sub)?);
    }
    Ok(reports)
}

/// One-point jet formula on single Jordan blocks: every size from 1 to 5,
/// frequencies `{0, 1, -1, 2.5}`, against the whole transform catalog.
fn run_thm2_1(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_nonnegative_alpha(cfg, SuiteId::Thm2_1)?;
    let functions = calculus_test_functions();
    let frequencies = [0.0, 1.0, -1.0, 2.5];
    let sizes = [1usize, 2, 3, 4, 5];
    let count = sizes.len() * frequencies.len() * functions.len();
    Ok(run_cases(SuiteId::Thm2_1, cfg, count, |i, seed| {
        let f_idx = i % functions.len();
        let rest = i / functions.len();
        let lambda = frequencies[rest % frequencies.len()];
        let size = sizes[rest / frequencies.len()];
        let m = jordan_blocks(&[(Complex64::new(0.0, lambda), size)]);
        let x = ComplexVector::from_fn(size, |_| Complex64::new(1.0, 0.0));
        let alpha = cfg.alpha.unwrap_or((size - 1) as f64);
        let mut report = check_theorem_2_1(&m, &x, &functions[f_idx], alpha, 1e-5)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Spectral annihilation `(T - lambda)^m x = 0` for one-point spectra, on
/// the same Jordan-block family the jet formula suite uses. The blocks stay
/// in triangular form so the annihilation is exact, which is what the
/// 1e-10 residual budget demands.
fn run_cor2_8(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let frequencies = [0.0, 1.0, -1.0, 2.5];
    let sizes = [1usize, 2, 3, 4, 5];
    let count = sizes.len() * frequencies.len();
    Ok(run_cases(SuiteId::Cor2_8, cfg, count, |i, seed| {
        let lambda = frequencies[i % frequencies.len()];
        let size = sizes[i / frequencies.len()];
        let m = jordan_blocks(&[(Complex64::new(0.0, lambda), size)]);
        let x = ComplexVector::from_fn(size, |_| Complex64::new(1.0, 0.0));
        let mut report = check_corollary_2_8(&m, &x, 1e-10)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Eigenvector synthesis: interpolating transforms split a vector into its
/// spectral projections on random diagonalizable matrices.
fn run_cor2_9(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_unit_alpha(cfg, SuiteId::Cor2_9)?;
    Ok(run_cases(SuiteId::Cor2_9, cfg, 50, |_, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(2..=6usize);
        let freqs = separated_reals(&mut rng, dim, -3.0, 3.0, 0.3);
        let eigs: Vec<Complex64> = freqs.iter().map(|&w| Complex64::new(0.0, w)).collect();
        let (m, _, _) = similar_diagonal(&mut rng, &eigs);
        let x = random_vector(&mut rng, dim);
        let alpha = cfg.alpha.unwrap_or(0.0);
        let (_, mut report) = eigen_split_cor_2_9(&m, &x, alpha, 1.0, 1e-5)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Differentiation via a truncated triangular measure on band-limited
/// vectors: `mu * x ~ i T x` within the recorded truncation error.
fn run_lem2_12(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_unit_alpha(cfg, SuiteId::Lem2_12)?;
    Ok(run_cases(SuiteId::Lem2_12, cfg, 20, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(2..=5usize);
        let freqs = separated_reals(&mut rng, dim, -2.0, 2.0, 0.3);
        let max_f = freqs.iter().fold(0.0f64, |m, &w| m.max(w.abs())).max(0.4);
        let a = max_f / 0.76;
        let eigs: Vec<Complex64> = freqs.iter().map(|&w| Complex64::new(0.0, w)).collect();
        let (m, _, _) = similar_diagonal(&mut rng, &eigs);
        let x = random_vector(&mut rng, dim);
        let alpha = pick_alpha(cfg, i);
        let mut report =
            check_lemma_2_12(&m, &x, a, alpha, config::MEASURE_K_ATOMS, 1e-3)?;
        report.seed(seed);
        Ok(report)
    }))
}

fn bounded_orbit_instance(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
) -> (ComplexMatrix, ComplexVector) {
    let dim = rng.gen_range(2..=max_dim);
    let mut freqs = separated_reals(rng, dim, -2.5, 2.5, 0.3);
    // A spectral radius bounded away from zero keeps the weighted bound's
    // right-hand side from degenerating.
    if freqs.iter().fold(0.0f64, |m, &w| m.max(w.abs())) < 0.5 {
        for w in &mut freqs {
            *w += 1.0;
        }
    }
    let eigs: Vec<Complex64> = freqs.iter().map(|&w| Complex64::new(0.0, w)).collect();
    let (m, _, _) = similar_diagonal(rng, &eigs);
    let x = random_vector(rng, dim);
    (m, x)
}

/// Weighted norm bound `||Tx|| <= C_x [r_T(x) + C(alpha) r_T(x)^{1-alpha}]`
/// over random bounded-orbit instances, all weights and norm families.
fn run_thm2_11(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_unit_alpha(cfg, SuiteId::Thm2_11)?;
    let count = 200 * ALPHA_ROTATION.len() * NORM_ROTATION.len();
    Ok(run_cases(SuiteId::Thm2_11, cfg, count, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = cfg.alpha.unwrap_or(ALPHA_ROTATION[i % 3]);
        let family = pick_norm(cfg, i / 3);
        let (m, x) = bounded_orbit_instance(&mut rng, 4);
        let mut report = check_theorem_2_11(&m, &x, alpha, family, 0.0)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Operator-level weighted bound for real-spectrum semisimple matrices.
fn run_cor2_13(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_unit_alpha(cfg, SuiteId::Cor2_13)?;
    let count = 200 * ALPHA_ROTATION.len() * NORM_ROTATION.len();
    Ok(run_cases(SuiteId::Cor2_13, cfg, count, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = cfg.alpha.unwrap_or(ALPHA_ROTATION[i % 3]);
        let family = pick_norm(cfg, i / 3);
        let dim = rng.gen_range(2..=4usize);
        let mut points = separated_reals(&mut rng, dim, -2.5, 2.5, 0.3);
        if points.iter().fold(0.0f64, |m, &w| m.max(w.abs())) < 0.5 {
            for p in &mut points {
                *p += 1.0;
            }
        }
        let eigs: Vec<Complex64> = points.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        let (m, _, _) = similar_diagonal(&mut rng, &eigs);
        let mut report = check_corollary_2_13(&m, alpha, family, 0.0)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Commuting pairs `T = p(M)`, `S = q(M)` with real polynomials of a common
/// real-spectrum matrix: the combined-radius bound with shared constants.
fn run_thm2_14(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_unit_alpha(cfg, SuiteId::Thm2_14)?;
    Ok(run_cases(SuiteId::Thm2_14, cfg, 100, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = pick_alpha(cfg, i);
        let family = pick_norm(cfg, i / 3);
        let dim = rng.gen_range(2..=4usize);
        // Retry until both polynomials map the base spectrum to values whose
        // pairwise gaps are either negligible or solidly resolvable; this
        // keeps the eigenvalue clustering unambiguous downstream.
        'attempt: for _ in 0..50 {
            let base = separated_reals(&mut rng, dim, -2.0, 2.0, 0.4);
            let coeffs: Vec<f64> = (0..6).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
            let p = |x: f64| coeffs[0] + coeffs[1] * x + coeffs[2] * x * x;
            let q = |x: f64| coeffs[3] + coeffs[4] * x + coeffs[5] * x * x;
            for values in [
                base.iter().map(|&b| p(b)).collect::<Vec<_>>(),
                base.iter().map(|&b| q(b)).collect::<Vec<_>>(),
            ] {
                for a in 0..dim {
                    for b in 0..a {
                        let gap = (values[a] - values[b]).abs();
                        if gap > 1e-9 && gap < 0.05 {
                            continue 'attempt;
                        }
                    }
                }
            }
            let eigs: Vec<Complex64> =
                base.iter().map(|&b| Complex64::new(b, 0.0)).collect();
            let (m, _, _) = similar_diagonal(&mut rng, &eigs);
            let id = ComplexMatrix::identity(dim);
            let msq = m.mul(&m);
            let poly_of = |c0: f64, c1: f64, c2: f64| {
                id.scale(Complex64::new(c0, 0.0))
                    .add(&m.scale(Complex64::new(c1, 0.0)))
                    .add(&msq.scale(Complex64::new(c2, 0.0)))
            };
            let t_op = poly_of(coeffs[0], coeffs[1], coeffs[2]);
            let s_op = poly_of(coeffs[3], coeffs[4], coeffs[5]);
            let x = random_vector(&mut rng, dim);
            let mut report = check_theorem_2_14(&t_op, &s_op, &x, alpha, family, 0.0)?;
            report.seed(seed);
            return Ok(report);
        }
        Err(Error::Hypothesis(
            "could not draw a commuting pair with resolvable spectra".into(),
        ))
    }))
}

/// Plateau synthesis: a transform equal to one near the local spectrum
/// reproduces the vector, one supported away from it annihilates it.
fn run_prop2_5(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_nonnegative_alpha(cfg, SuiteId::Prop2_5)?;
    Ok(run_cases(SuiteId::Prop2_5, cfg, 12, |_, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(1..=3usize);
        let freqs = separated_reals(&mut rng, dim, -2.0, 2.0, 1.0);
        let eigs: Vec<Complex64> = freqs.iter().map(|&w| Complex64::new(0.0, w)).collect();
        let (m, _, _) = similar_diagonal(&mut rng, &eigs);
        let x = random_vector(&mut rng, dim);
        let alpha = cfg.alpha.unwrap_or(0.0);
        let mut report = check_prop_2_5(&m, &x, alpha, 1e-5)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Builds a defective base matrix plus a matching Deddens-class test
/// operator: member strata (kernel of a derivation power), barely-excluded
/// strata, or cross-spectral pieces with exponential conjugation orbits.
/// The pair stays in triangular coordinates: the exact kernel verdict rests
/// on cancellations that a similarity would smear past its 1e-10 budget.
fn deddens_instance(
    rng: &mut ChaCha8Rng,
    kind: usize,
) -> (ComplexMatrix, ComplexMatrix, f64) {
    let k1 = rng.gen_range(2..=3usize);
    let k2 = rng.gen_range(1..=3usize);
    let two_blocks = kind == 2 || rng.gen_bool(0.5);
    let lam1 = rng.gen_range(-2.0..2.0);
    let (blocks, dim) = if two_blocks {
        let lam2 = if kind == 2 {
            // A spectral gap makes the cross strata genuinely exponential.
            lam1 + rng.gen_range(0.5..1.5)
        } else {
            lam1
        };
        (
            vec![
                (Complex64::new(lam1, 0.0), k1),
                (Complex64::new(lam2, 0.0), k2),
            ],
            k1 + k2,
        )
    } else {
        (vec![(Complex64::new(lam1, 0.0), k1)], k1)
    };
    let a = jordan_blocks(&blocks);

    let mut t = ComplexMatrix::zeros(dim);
    let index;
    if kind == 2 {
        // Cross-component between the two blocks: never in any kernel power.
        t.set(0, k1, Complex64::new(1.0, 0.0));
        t.set(k1.min(dim - 1), 0, Complex64::new(0.5, 0.0));
        index = 0;
    } else {
        // Lowest grade inside the first block: nilpotency index 2 k1 - 1 on
        // the derivation, the largest a single block supports.
        t.set(k1 - 1, 0, Complex64::new(1.0, 0.0));
        t.set(0, 0, Complex64::new(0.4, 0.0));
        index = 2 * k1 - 1;
    }

    let alpha = match kind {
        // Member: the orbit degree is exactly index - 1.
        0 => (index - 1) as f64,
        // Non-member: one order short of the membership threshold.
        1 => (index as f64 - 2.0).max(0.0),
        // Exponential cross term: any finite degree is refused.
        _ => 1.0,
    };
    (a, t, alpha)
}

/// Deddens class membership on defective real-spectrum matrices: the exact
/// kernel test and the empirical orbit fit must agree in both directions.
fn run_thm3_1(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_nonnegative_alpha(cfg, SuiteId::Thm3_1)?;
    Ok(run_cases(SuiteId::Thm3_1, cfg, 100, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, t, alpha) = deddens_instance(&mut rng, i % 3);
        let alpha = cfg.alpha.unwrap_or(alpha);
        let ctx = DerivationContext::new(&a, NormFamily::L2)?;
        let mut report = deddens_membership(&ctx, &t, alpha)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Spectral-subspace invariance versus derivation-kernel membership on
/// semisimple bases, where the two are exactly equivalent.
fn run_prop3_5(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_nonnegative_alpha(cfg, SuiteId::Prop3_5)?;
    Ok(run_cases(SuiteId::Prop3_5, cfg, 50, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(2..=5usize);
        let points = separated_reals(&mut rng, dim, -2.0, 2.0, 0.3);
        let eigs: Vec<Complex64> = points.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        let (a, v, v_inv) = similar_diagonal(&mut rng, &eigs);
        let t = if i % 2 == 0 {
            // Polynomial in the base commutes, so every spectral subspace
            // is invariant and the derivation kernel test passes.
            let c0 = box_complex(&mut rng);
            let c1 = box_complex(&mut rng);
            ComplexMatrix::identity(dim)
                .scale(c0)
                .add(&a.scale(c1))
        } else {
            // A cross-eigenvector component breaks both sides at once.
            let mut t_raw = ComplexMatrix::zeros(dim);
            t_raw.set(0, dim - 1, Complex64::new(1.0, 0.0));
            t_raw.set(1.min(dim - 1), 1.min(dim - 1), Complex64::new(0.3, 0.0));
            v.mul(&t_raw).mul(&v_inv)
        };
        let alpha = cfg.alpha.unwrap_or(1.0);
        let ctx = DerivationContext::new(&a, NormFamily::L2)?;
        let mut report = check_prop_3_5(&ctx, &t, alpha)?;
        report.seed(seed);
        Ok(report)
    }))
}

/// Discrete conjugation orbits through the principal logarithm: invertible
/// bases with spectra away from the branch cut, half commuting tests, half
/// bounded cross terms between equal-modulus eigenvalues.
fn run_prop3_7(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    require_unit_alpha(cfg, SuiteId::Prop3_7)?;
    Ok(run_cases(SuiteId::Prop3_7, cfg, 50, |i, seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = cfg.alpha.unwrap_or(0.3);
        let commuting = i % 2 == 0;
        let (a, t) = if commuting {
            let dim = rng.gen_range(2..=4usize);
            // Rejection-sample moduli and phases until all pairwise gaps in
            // the complex plane are resolvable.
            let eigs: Vec<Complex64> = loop {
                let draw: Vec<Complex64> = (0..dim)
                    .map(|_| {
                        Complex64::from_polar(
                            rng.gen_range(0.5..2.0),
                            rng.gen_range(-2.4..2.4),
                        )
                    })
                    .collect();
                let ok = (0..dim)
                    .all(|r| (0..r).all(|c| (draw[r] - draw[c]).norm() >= 0.2));
                if ok {
                    break draw;
                }
            };
            let (a, _, _) = similar_diagonal(&mut rng, &eigs);
            let c0 = box_complex(&mut rng);
            let c1 = box_complex(&mut rng);
            let t = ComplexMatrix::identity(dim).scale(c0).add(&a.scale(c1));
            (a, t)
        } else {
            // Equal moduli, distinct phases: the discrete orbit of a cross
            // component stays on the unit circle, hence bounded.
            let modulus = rng.gen_range(0.6..1.8);
            let phase1 = rng.gen_range(-2.0..0.0);
            let phase2 = phase1 + rng.gen_range(0.7..2.0);
            let eigs = [
                Complex64::from_polar(modulus, phase1),
                Complex64::from_polar(modulus, phase2),
            ];
            let (a, v, v_inv) = similar_diagonal(&mut rng, &eigs);
            let mut t_raw = ComplexMatrix::zeros(2);
            t_raw.set(0, 1, Complex64::new(1.0, 0.0));
            t_raw.set(0, 0, Complex64::new(0.5, 0.0));
            t_raw.set(1, 1, Complex64::new(0.5, 0.0));
            (a, v.mul(&t_raw).mul(&v_inv))
        };
        let mut report = check_prop_3_7(&a, &t, alpha, 16)?;
        report.seed(seed);
        Ok(report)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip_through_parsing() {
        for id in ALL_SUITES {
            assert_eq!(SuiteId::from_str(id.name()).unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.name()));
        }
        assert!(SuiteId::from_str("thm9.9").is_err());
    }

    #[test]
    fn unknown_suite_parse_is_an_input_error() {
        match SuiteId::from_str("nope") {
            Err(e) => assert_eq!(e.exit_code(), 2),
            Ok(_) => panic!("parse should fail"),
        }
    }

    #[test]
    fn prop2_5_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig::default();
        let first = run_suite(SuiteId::Prop2_5, &cfg).unwrap();
        assert_eq!(first.failed, 0, "cases: {:#?}", first.cases);
        assert!(first.passed > 0);
        let second = run_suite(SuiteId::Prop2_5, &cfg).unwrap();
        assert_eq!(first, second);
        assert_eq!(
            serde_json::to_string(&first).unwrap(),
            serde_json::to_string(&second).unwrap()
        );
    }

    #[test]
    fn cor2_8_suite_annihilates_every_instance() {
        let report = run_suite(SuiteId::Cor2_8, &SuiteConfig::default()).unwrap();
        assert_eq!(report.failed, 0, "cases: {:#?}", report.cases);
        assert_eq!(report.not_applicable, 0);
        assert_eq!(report.passed, 20);
    }

    #[test]
    fn different_seeds_draw_different_instances() {
        let a = run_suite(SuiteId::Cor2_8, &SuiteConfig::default()).unwrap();
        let b = run_suite(
            SuiteId::Cor2_8,
            &SuiteConfig {
                seed: 7,
                ..SuiteConfig::default()
            },
        )
        .unwrap();
        assert_ne!(a.run_id, b.run_id);
        assert_ne!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn alpha_override_outside_the_weight_domain_is_rejected() {
        let cfg = SuiteConfig {
            alpha: Some(1.5),
            ..SuiteConfig::default()
        };
        match run_suite(SuiteId::Thm2_11, &cfg) {
            Err(e) => assert_eq!(e.exit_code(), 2),
            Ok(_) => panic!("alpha = 1.5 must be rejected for sub-linear weights"),
        }
    }

    #[test]
    fn thm3_1_suite_verdicts_agree_on_every_instance() {
        let report = run_suite(SuiteId::Thm3_1, &SuiteConfig::default()).unwrap();
        assert_eq!(report.failed, 0, "cases: {:#?}", report.cases);
        assert_eq!(report.passed, 100);
    }

    #[test]
    fn prop3_5_suite_verdicts_agree_on_every_instance() {
        let report = run_suite(SuiteId::Prop3_5, &SuiteConfig::default()).unwrap();
        assert_eq!(report.failed, 0, "cases: {:#?}", report.cases);
        assert_eq!(report.passed, 50);
    }

    #[test]
    fn worker_pool_cap_is_respected() {
        // Only checks that the wrapper runs the closure and returns; the
        // env var is read inside so a bad value must not panic.
        let out = with_worker_pool(|| 2 + 2);
        assert_eq!(out, 4);
    }
}
