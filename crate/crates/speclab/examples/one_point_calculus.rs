//! The jet formula for operators whose local spectrum is a single point.
//!
//! When the spectrum seen by `x` is exactly `{i*lambda}`, the weighted
//! calculus `f(T) x` collapses to a finite Taylor jet of the transform at
//! `-lambda` — no quadrature needed. This example evaluates both sides on a
//! defective (non-diagonalizable) block and prints the defect, then runs the
//! packaged checker that automates the comparison.

use num_complex::Complex64;
use speclab::calculus::{apply_function, check_theorem_2_1, one_point_formula, QuadConfig};
use speclab::beurling::TestFunction;
use speclab::linalg::{ComplexMatrix, ComplexVector};

fn main() -> Result<(), speclab::Error> {
    let freq = 0.7;
    let dim = 3;
    // Jordan block with eigenvalue i*freq: one spectral point, maximal jet.
    let m = ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            Complex64::new(0.0, freq)
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let x = ComplexVector::from_real(&[1.0, 1.0, 1.0]);
    let f = TestFunction::modulated_gaussian(0.9, 0.4)?;
    let alpha = (dim - 1) as f64;

    let quadrature = apply_function(&m, &x, &f, QuadConfig::default())?;
    let jet = one_point_formula(&m, &x, &f, freq, alpha)?;
    let defect = quadrature.value.sub(&jet).norm_l2();
    println!(
        "||quadrature - jet|| = {defect:.3e} (quadrature error bound {:.1e}, tail bound {:.1e})",
        quadrature.quad_error_bound, quadrature.tail_bound
    );

    let report = check_theorem_2_1(&m, &x, &f, alpha, 1e-5)?;
    println!("\npackaged checker: {}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
