//! Matrix exponential by scaling and squaring.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, NormFamily};
use crate::config::EXPM_NORM_CAP;

/// Computes `e^M` by scaling and squaring around a truncated Taylor series.
///
/// The matrix is halved until its 1-norm drops to `0.5` or below, the
/// series is summed until the next term falls under `tol` relative to the
/// running partial sum, and the result is squared back up. Inputs whose
/// 1-norm exceeds [`EXPM_NORM_CAP`] would overflow double precision and
/// are rejected with the offending norm.
pub fn expm(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix, LinalgError> {
    let norm = m.one_norm();
    if !norm.is_finite() || norm > EXPM_NORM_CAP {
        return Err(LinalgError::ExpOverflow { family: NormFamily::L1, norm });
    }
    let squarings = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as u32
    };
    let scaled = m.scale(Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0));

    let mut sum = ComplexMatrix::identity(m.dim());
    let mut term = ComplexMatrix::identity(m.dim());
    for k in 1..=60u32 {
        term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        // ‖scaled‖ ≤ 1/2, so terms decay at least geometrically; two extra
        // terms after crossing the tolerance guard against a lucky small one.
        if term.one_norm() <= tol * sum.one_norm() && k >= 2 {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = result.mul(&result);
    }
    Ok(result)
}
