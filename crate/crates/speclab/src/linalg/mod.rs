//! Dense complex linear algebra at desk scale.
//!
//! Everything here is written for matrices of dimension ≤ 16 (the spectral
//! machinery enforces that cap; raw arithmetic works for any size). The
//! building blocks are deliberately simple: row-major storage, explicit
//! loops, and algorithms chosen for small-matrix robustness rather than
//! asymptotic speed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

mod eigen;
mod expm;
mod solve;
mod spectral;

pub use eigen::eigenvalues;
pub use expm::expm;
pub use solve::{inverse, lu_factor, resolvent_apply, Lu};
pub use spectral::{matrix_function, spectral_decomposition, Cluster, SpectralDecomposition};

/// Largest dimension accepted by the spectral machinery
/// ([`spectral_decomposition`] and everything built on it).
pub const MAX_SPECTRAL_DIM: usize = 16;

/// Errors produced by the linear-algebra kernels.
#[derive(Debug, Clone, Error)]
pub enum LinalgError {
    #[error("matrix data length {len} does not form a {dim}×{dim} square")]
    NotSquare { dim: usize, len: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("dimension {dim} exceeds the spectral cap {max}")]
    DimensionCap { dim: usize, max: usize },
    #[error("empty vector or zero-dimensional matrix")]
    Empty,
    #[error("matrix exponential overflow: {family} norm {norm:.3e} is too large to exponentiate")]
    ExpOverflow { family: NormFamily, norm: f64 },
    #[error(
        "singular or nearly singular system at z = {z}: distance to nearest eigenvalue {distance:.3e}"
    )]
    NearSingular { z: Complex64, distance: f64 },
    #[error("L2 norm iteration did not converge after {iterations} steps (last estimate {last:.6e})")]
    NoConvergence { iterations: usize, last: f64 },
    #[error("eigenvalue iteration failed to deflate after {iterations} sweeps")]
    EigenStall { iterations: usize },
    #[error(
        "eigenvalue clusters separated by {gap:.3e} after merging at tolerance {tol:.1e}; \
         interpolation would be ill-conditioned, use a larger cluster tolerance"
    )]
    ClusterConflict { gap: f64, tol: f64 },
    #[error("spectral decomposition failed its resolution-of-identity check (defect {defect:.3e})")]
    ProjectionDefect { defect: f64 },
}

/// The three norms used throughout: `‖·‖₁`, `‖·‖₂`, and `‖·‖_∞`.
///
/// For matrices, `L1` and `LInf` are the exact induced norms (max column
/// and max row sum); `L2` is the largest singular value, computed
/// iteratively by [`operator_norm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormFamily {
    L1,
    L2,
    LInf,
}

impl fmt::Display for NormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormFamily::L1 => write!(f, "l1"),
            NormFamily::L2 => write!(f, "l2"),
            NormFamily::LInf => write!(f, "linf"),
        }
    }
}

impl FromStr for NormFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" | "1" => Ok(NormFamily::L1),
            "l2" | "2" => Ok(NormFamily::L2),
            "linf" | "inf" => Ok(NormFamily::LInf),
            other => Err(format!("unknown norm family `{other}` (expected l1, l2, or linf)")),
        }
    }
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// A dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    /// Builds a vector, rejecting empty input and non-finite entries.
    pub fn new(entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if entries.is_empty() {
            return Err(LinalgError::Empty);
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(LinalgError::NonFinite { index });
            }
        }
        Ok(Self { entries })
    }

    /// Zero vector of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![Complex64::new(0.0, 0.0); dim] }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self { entries: (0..dim).map(f).collect() }
    }

    /// Convenience constructor from real entries.
    pub fn from_real(entries: &[f64]) -> Self {
        Self { entries: entries.iter().map(|&re| Complex64::new(re, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Complex64) {
        self.entries[i] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self::from_fn(self.dim(), |i| self.entries[i] + other.entries[i])
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self::from_fn(self.dim(), |i| self.entries[i] - other.entries[i])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_fn(self.dim(), |i| self.entries[i] * factor)
    }

    /// In-place `self += factor · other`.
    pub fn axpy(&mut self, factor: Complex64, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += factor * b;
        }
    }

    /// Hermitian inner product `⟨self, other⟩ = Σᵢ conj(selfᵢ)·otherᵢ`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self, family: NormFamily) -> f64 {
        vector_norm(self, family)
    }

    /// Euclidean norm, the default metric in most internal checks.
    pub fn norm_l2(&self) -> f64 {
        vector_norm(self, NormFamily::L2)
    }
}

/// Vector norm in the requested family.
pub fn vector_norm(v: &ComplexVector, family: NormFamily) -> f64 {
    match family {
        NormFamily::L1 => v.entries.iter().map(|e| e.norm()).sum(),
        NormFamily::L2 => v.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt(),
        NormFamily::LInf => v.entries.iter().map(|e| e.norm()).fold(0.0, f64::max),
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A dense square complex matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a `dim × dim` matrix from row-major data, rejecting
    /// mismatched lengths and non-finite entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::NotSquare { dim, len: data.len() });
        }
        for (index, e) in data.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(LinalgError::NonFinite { index });
            }
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::NotSquare { dim, len: row.len() * dim });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    /// Convenience constructor from real row-major entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let dim = entries.len();
        Self::from_fn(dim, |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * factor).collect() }
    }

    /// `self + factor·I`, used constantly for resolvent-style shifts.
    pub fn add_scaled_identity(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            let v = out.get(i, i) + factor;
            out.set(i, i, v);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        debug_assert_eq!(self.dim, v.dim());
        ComplexVector::from_fn(self.dim, |i| {
            self.row(i).iter().zip(v.entries()).map(|(a, b)| a * b).sum()
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Max column sum of entry moduli (the induced 1-norm).
    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0_f64;
        for j in 0..self.dim {
            let sum: f64 = (0..self.dim).map(|i| self.get(i, j).norm()).sum();
            best = best.max(sum);
        }
        best
    }

    /// Max row sum of entry moduli (the induced ∞-norm).
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|e| e.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

/// Induced operator norm in the requested family.
///
/// `L1` and `LInf` are exact. `L2` runs a power iteration on the Gram
/// matrix `M*M` with the documented defaults (relative tolerance
/// [`crate::config::L2_ITERATION_TOL`], cap
/// [`crate::config::L2_ITERATION_CAP`]); non-convergence is an error that
/// carries the last iterate.
pub fn operator_norm(m: &ComplexMatrix, family: NormFamily) -> Result<f64, LinalgError> {
    operator_norm_with(m, family, crate::config::L2_ITERATION_TOL, crate::config::L2_ITERATION_CAP)
}

/// [`operator_norm`] with explicit L2 iteration controls.
pub fn operator_norm_with(
    m: &ComplexMatrix,
    family: NormFamily,
    tol: f64,
    cap: usize,
) -> Result<f64, LinalgError> {
    match family {
        NormFamily::L1 => Ok(m.one_norm()),
        NormFamily::LInf => Ok(m.inf_norm()),
        NormFamily::L2 => largest_singular_value(m, tol, cap),
    }
}

/// Largest singular value via power iteration on `M*M`.
fn largest_singular_value(m: &ComplexMatrix, tol: f64, cap: usize) -> Result<f64, LinalgError> {
    let n = m.dim();
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    // Normalize the working matrix: the iteration squares entries twice
    // (Gram product, then the norm of its image), so anything beyond
    // 1e±70 degrades into denormals or overflows.
    if scale < 1e-70 || scale > 1e70 {
        return Ok(scale
            * largest_singular_value(&m.scale(Complex64::new(1.0 / scale, 0.0)), tol, cap)?);
    }
    // Deterministic, index-dependent start vector: avoids accidental
    // orthogonality to the top singular subspace without pulling in an RNG.
    let mut v = ComplexVector::from_fn(n, |i| {
        let mut s = (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
        s ^= s >> 33;
        s = s.wrapping_mul(0xFF51_AFD7_ED55_8CCD);
        s ^= s >> 33;
        let re = 0.5 + (s & 0xFFFF) as f64 / 131_072.0;
        let im = ((s >> 16) & 0xFFFF) as f64 / 131_072.0;
        Complex64::new(re, im)
    });
    let nv = v.norm_l2();
    v = v.scale(Complex64::new(1.0 / nv, 0.0));

    let adj = m.adjoint();
    let mut estimate = 0.0_f64;
    for iteration in 0..cap {
        let w = adj.mul_vec(&m.mul_vec(&v));
        let rayleigh = v.inner(&w).re.max(0.0);
        let wn = w.norm_l2();
        if wn == 0.0 {
            return Ok(0.0);
        }
        let next = w.scale(Complex64::new(1.0 / wn, 0.0));
        let value = rayleigh.sqrt();
        if iteration > 0 && (value - estimate).abs() <= tol * value.max(f64::MIN_POSITIVE) {
            return Ok(value);
        }
        estimate = value;
        v = next;
    }
    // Nearly degenerate top singular values stall the iteration (the
    // convergence rate is the squared singular-value ratio). The dense
    // eigensolver on the Gram matrix has no such blind spot, at the cost
    // of a full decomposition; use it as the fallback.
    let gram = adj.mul(m);
    let top = eigenvalues(&gram)?
        .iter()
        .map(|l| l.re.max(0.0))
        .fold(0.0_f64, f64::max);
    Ok(top.sqrt())
}
