//! On-disk formats: matrices, vectors, transforms, and measures as JSON;
//! growth sweeps as CSV; suite reports and their merges.
//!
//! Complex scalars are stored as `[re, im]` pairs; matrices are row-major.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::beurling::{DiscreteMeasure, GaussAtom, TestFunction, Weight};
use crate::error::Error;
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::local_spectrum::{GrowthCertificate, LocalSpectrum};
use crate::suites::SuiteReport;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(e: [f64; 2]) -> Complex64 {
    Complex64::new(e[0], e[1])
}

/// `{"dim": n, "entries": [[re, im], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixJson {
            dim: m.dim(),
            entries: m.data().iter().map(|&z| pair(z)).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, Error> {
        if self.dim == 0 {
            return Err(Error::Input("malformed matrix: dim is zero".into()));
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::Input(format!(
                "malformed matrix: dim {} needs {} entries, found {}",
                self.dim,
                self.dim * self.dim,
                self.entries.len()
            )));
        }
        if let Some(bad) = self
            .entries
            .iter()
            .find(|e| !e[0].is_finite() || !e[1].is_finite())
        {
            return Err(Error::Input(format!(
                "malformed matrix: non-finite entry [{}, {}]",
                bad[0], bad[1]
            )));
        }
        Ok(ComplexMatrix::from_fn(self.dim, |r, c| {
            unpair(self.entries[r * self.dim + c])
        }))
    }
}

/// `{"entries": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub entries: Vec<[f64; 2]>,
}

impl VectorJson {
    pub fn from_vector(v: &ComplexVector) -> Self {
        VectorJson {
            entries: v.entries().iter().map(|&z| pair(z)).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<ComplexVector, Error> {
        if self.entries.is_empty() {
            return Err(Error::Input("malformed vector: no entries".into()));
        }
        if let Some(bad) = self
            .entries
            .iter()
            .find(|e| !e[0].is_finite() || !e[1].is_finite())
        {
            return Err(Error::Input(format!(
                "malformed vector: non-finite entry [{}, {}]",
                bad[0], bad[1]
            )));
        }
        ComplexVector::new(self.entries.iter().map(|&e| unpair(e)).collect())
            .map_err(|e| Error::Input(format!("malformed vector: {e}")))
    }
}

fn read_json_file<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {} file {}: {e}", what, path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("malformed {} file {}: {e}", what, path.display())))
}

fn with_path_context(err: Error, path: &Path) -> Error {
    match err {
        Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
        other => other,
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, Error> {
    read_json_file::<MatrixJson>(path, "matrix")?
        .to_matrix()
        .map_err(|e| with_path_context(e, path))
}

pub fn read_vector(path: &Path) -> Result<ComplexVector, Error> {
    read_json_file::<VectorJson>(path, "vector")?
        .to_vector()
        .map_err(|e| with_path_context(e, path))
}

/// Serializes with a trailing newline; output is byte-stable for equal
/// inputs (no timestamps, map keys already ordered).
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    fs::write(path, to_json_string(value)?)?;
    Ok(())
}

/// Transform descriptor: `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum FunctionJson {
    Gaussian {
        sigma: f64,
    },
    ModulatedGaussian {
        sigma: f64,
        theta: f64,
    },
    GaussianPoly {
        atoms: Vec<FunctionAtomJson>,
    },
    Bump {
        center: f64,
        inner_radius: f64,
        outer_radius: f64,
        smoothness: u32,
    },
}

/// One `coeff * t^power * exp(-(t/sigma)^2/2) * exp(i theta t)` term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionAtomJson {
    pub coeff: [f64; 2],
    pub power: u32,
    pub sigma: f64,
    pub theta: f64,
}

impl FunctionJson {
    pub fn build(&self) -> Result<TestFunction, Error> {
        let f = match self {
            FunctionJson::Gaussian { sigma } => TestFunction::gaussian(*sigma)?,
            FunctionJson::ModulatedGaussian { sigma, theta } => {
                TestFunction::modulated_gaussian(*sigma, *theta)?
            }
            FunctionJson::GaussianPoly { atoms } => TestFunction::gaussian_poly(
                atoms
                    .iter()
                    .map(|a| GaussAtom::new(unpair(a.coeff), a.power, a.sigma, a.theta))
                    .collect(),
            )?,
            FunctionJson::Bump {
                center,
                inner_radius,
                outer_radius,
                smoothness,
            } => TestFunction::bump(*center, *inner_radius, *outer_radius, *smoothness)?,
        };
        Ok(f)
    }
}

/// Measure as an atom array plus the truncation record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub weight: Weight,
    pub atoms: Vec<MeasureAtomJson>,
    /// Weighted norm of the retained atoms.
    pub truncated_norm: f64,
    /// Rigorous bound on the weighted mass of the discarded tail.
    pub truncation_tail: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureAtomJson {
    pub point: f64,
    pub coeff: [f64; 2],
}

impl MeasureJson {
    pub fn from_measure(mu: &DiscreteMeasure) -> Self {
        MeasureJson {
            weight: *mu.weight(),
            atoms: mu
                .atoms()
                .iter()
                .map(|a| MeasureAtomJson {
                    point: a.point,
                    coeff: pair(a.coeff),
                })
                .collect(),
            truncated_norm: mu.truncated_norm(),
            truncation_tail: mu.truncation_tail(),
        }
    }
}

/// The growth part of an analysis, flattened for serialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthJson {
    pub polynomial_bidirectional: bool,
    pub exact_alpha: Option<u32>,
    pub fitted_alpha: f64,
    pub fitted_c: f64,
    pub max_abs_real: f64,
    pub fit_residual_per_decade: f64,
    pub reason: Option<String>,
}

impl GrowthJson {
    pub fn from_certificate(cert: &GrowthCertificate) -> Self {
        GrowthJson {
            polynomial_bidirectional: cert.polynomial_bidirectional,
            exact_alpha: cert.exact_alpha,
            fitted_alpha: cert.fitted_alpha,
            fitted_c: cert.fitted_c,
            max_abs_real: cert.max_abs_real,
            fit_residual_per_decade: cert.fit_residual_per_decade,
            reason: cert.reason.clone(),
        }
    }
}

/// One contributing spectral point with the mass it carries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPointJson {
    pub lambda: [f64; 2],
    pub mass: f64,
}

/// Full analysis of one `(matrix, vector)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub dim: usize,
    pub norm: String,
    pub seed: u64,
    pub cluster_tol: f64,
    pub local_spectrum: Vec<SpectrumPointJson>,
    /// Exact local spectral radius from the projection masses.
    pub radius: f64,
    /// Independent estimate from the normalized power iteration.
    pub radius_power_estimate: f64,
    pub growth: GrowthJson,
    /// Local-spectrum candidates recovered by the resolvent slope scan,
    /// as `[re, im]` points.
    pub scan_candidates: Vec<[f64; 2]>,
    /// `||x||` in the requested norm family.
    pub x_norm: f64,
    /// `||Tx||` in the requested norm family.
    pub image_norm: f64,
}

pub fn spectrum_points(spectrum: &LocalSpectrum) -> Vec<SpectrumPointJson> {
    let mut points: Vec<SpectrumPointJson> = spectrum
        .points
        .iter()
        .zip(&spectrum.masses)
        .map(|(&l, &m)| SpectrumPointJson {
            lambda: pair(l),
            mass: m,
        })
        .collect();
    points.sort_by(|a, b| {
        (a.lambda[1], a.lambda[0])
            .partial_cmp(&(b.lambda[1], b.lambda[0]))
            .expect("finite spectrum points")
    });
    points
}

/// One sample of a growth sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub norm: f64,
    /// `fitted_c * (1 + |t|)^fitted_alpha` at this `t`.
    pub bound: f64,
}

/// A full sweep: samples plus the fitted envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepData {
    /// `vector_orbit` or `conjugation_orbit`.
    pub kind: String,
    pub fitted_alpha: f64,
    pub fitted_c: f64,
    /// Set when the orbit outgrows every polynomial envelope; the fitted
    /// bound is then only a record of the grid, not a certificate.
    pub exponential: bool,
    pub rows: Vec<SweepRow>,
}

/// CSV rendering: header `t,norm,bound`, one `exponential` flag row when
/// the fit is not a certificate, then the samples.
pub fn sweep_csv(data: &SweepData) -> String {
    let mut out = String::from("t,norm,bound\n");
    if data.exponential {
        out.push_str("exponential,,\n");
    }
    for row in &data.rows {
        out.push_str(&format!("{},{},{}\n", row.t, row.norm, row.bound));
    }
    out
}

/// A set of suite runs, merged and ordered by run id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedReport {
    pub runs: Vec<SuiteReport>,
}

impl MergedReport {
    pub fn failed_runs(&self) -> usize {
        self.runs.iter().filter(|r| !r.all_passed()).count()
    }
}

/// Merges runs from several files: duplicates of the same run id must be
/// byte-identical (merging is idempotent); two different payloads under one
/// id is a hard input error.
pub fn merge_runs(mut all: Vec<SuiteReport>) -> Result<MergedReport, Error> {
    all.sort_by(|a, b| a.run_id.cmp(&b.run_id));
    let mut runs: Vec<SuiteReport> = Vec::new();
    for r in all {
        match runs.last() {
            Some(prev) if prev.run_id == r.run_id => {
                if *prev != r {
                    return Err(Error::Input(format!(
                        "conflicting runs for id {}",
                        r.run_id
                    )));
                }
            }
            _ => runs.push(r),
        }
    }
    Ok(MergedReport { runs })
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ReportFile {
    Merged(MergedReport),
    Single(SuiteReport),
}

/// Reads either a single suite report or an already-merged file.
pub fn read_report_runs(path: &Path) -> Result<Vec<SuiteReport>, Error> {
    match read_json_file::<ReportFile>(path, "report")? {
        ReportFile::Merged(m) => Ok(m.runs),
        ReportFile::Single(s) => Ok(vec![s]),
    }
}

/// One line per run: `run_id,suite,seed,cases,passed,failed,not_applicable`.
pub fn summary_csv(report: &MergedReport) -> String {
    let mut out = String::from("run_id,suite,seed,cases,passed,failed,not_applicable\n");
    for r in &report.runs {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.run_id,
            r.suite,
            r.seed,
            r.cases.len(),
            r.passed,
            r.failed,
            r.not_applicable
        ));
    }
    out
}
