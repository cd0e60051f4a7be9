//! LU factorization with partial pivoting, and resolvent application.

use num_complex::Complex64;

use super::{eigenvalues, ComplexMatrix, ComplexVector, LinalgError};
use crate::config::RESOLVENT_RESIDUAL_TOL;

/// Partially pivoted LU factorization `PA = LU`, stored packed.
pub struct Lu {
    packed: ComplexMatrix,
    perm: Vec<usize>,
}

/// Factors `a`. Fails when a pivot falls below `1e-14` relative to the
/// largest entry, i.e. when the matrix is singular at working precision.
pub fn lu_factor(a: &ComplexMatrix) -> Result<Lu, LinalgError> {
    let n = a.dim();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu.get(col, col).norm();
        for row in col + 1..n {
            let mag = lu.get(row, col).norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag <= 1e-14 * scale {
            return Err(LinalgError::NearSingular {
                z: Complex64::new(0.0, 0.0),
                distance: pivot_mag / scale,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lu.get(col, j);
                lu.set(col, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, tmp);
            }
            perm.swap(col, pivot_row);
        }
        let pivot = lu.get(col, col);
        for row in col + 1..n {
            let factor = lu.get(row, col) / pivot;
            lu.set(row, col, factor);
            for j in col + 1..n {
                let v = lu.get(row, j) - factor * lu.get(col, j);
                lu.set(row, j, v);
            }
        }
    }
    Ok(Lu { packed: lu, perm })
}

impl Lu {
    pub fn solve(&self, b: &ComplexVector) -> ComplexVector {
        let n = self.packed.dim();
        debug_assert_eq!(n, b.dim());
        let mut y = ComplexVector::from_fn(n, |i| b.get(self.perm[i]));
        // Forward substitution with the unit-diagonal L factor.
        for i in 1..n {
            let mut v = y.get(i);
            for j in 0..i {
                v -= self.packed.get(i, j) * y.get(j);
            }
            y.set(i, v);
        }
        // Back substitution with U.
        for i in (0..n).rev() {
            let mut v = y.get(i);
            for j in i + 1..n {
                v -= self.packed.get(i, j) * y.get(j);
            }
            y.set(i, v / self.packed.get(i, i));
        }
        y
    }
}

/// Dense inverse through the LU factors, column by column.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = a.dim();
    let lu = lu_factor(a)?;
    let mut out = ComplexMatrix::zeros(n);
    for j in 0..n {
        let e = ComplexVector::from_fn(n, |i| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        });
        let col = lu.solve(&e);
        for i in 0..n {
            out.set(i, j, col.get(i));
        }
    }
    Ok(out)
}

/// Applies the resolvent: solves `(zI − M)u = x`.
///
/// The solution is residual-checked against
/// `tol·(|z| + ‖M‖₁)·‖u‖`. A singular solve or a failed residual check is
/// reported together with the distance from `z` to the nearest eigenvalue
/// of `M` (computed only on the error path).
pub fn resolvent_apply(
    m: &ComplexMatrix,
    z: Complex64,
    x: &ComplexVector,
) -> Result<ComplexVector, LinalgError> {
    if m.dim() != x.dim() {
        return Err(LinalgError::DimensionMismatch { left: m.dim(), right: x.dim() });
    }
    let shifted = m.scale(Complex64::new(-1.0, 0.0)).add_scaled_identity(z);
    let nearest = |err: LinalgError| match err {
        LinalgError::NearSingular { .. } => LinalgError::NearSingular {
            z,
            distance: distance_to_spectrum(m, z),
        },
        other => other,
    };
    let lu = lu_factor(&shifted).map_err(nearest)?;
    let u = lu.solve(x);
    let residual = shifted.mul_vec(&u).sub(x).norm_l2();
    let allowed = RESOLVENT_RESIDUAL_TOL * (z.norm() + m.one_norm()) * u.norm_l2().max(f64::MIN_POSITIVE);
    if !residual.is_finite() || residual > allowed {
        return Err(LinalgError::NearSingular { z, distance: distance_to_spectrum(m, z) });
    }
    Ok(u)
}

fn distance_to_spectrum(m: &ComplexMatrix, z: Complex64) -> f64 {
    match eigenvalues(m) {
        Ok(eigs) => eigs.iter().map(|e| (z - e).norm()).fold(f64::INFINITY, f64::min),
        Err(_) => f64::NAN,
    }
}
