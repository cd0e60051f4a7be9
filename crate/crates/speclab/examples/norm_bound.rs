//! The weighted resolvent-style norm bound for polynomially bounded orbits.
//!
//! If `||e^{tT} x|| <= C_x (1 + |t|)^alpha` in both time directions, then
//! `||T x||` is controlled by `C_x (r + C(alpha) r^{1-alpha}) ||x||` with
//! `r` the local spectral radius. The checker verifies the growth premise,
//! assembles both sides, and reports the margin by which the bound holds.

use num_complex::Complex64;
use speclab::calculus::check_theorem_2_11;
use speclab::linalg::{ComplexMatrix, ComplexVector, NormFamily};

fn main() -> Result<(), speclab::Error> {
    // Bounded orbit: semisimple, purely imaginary spectrum, non-normal basis.
    let d = ComplexMatrix::diagonal(&[
        Complex64::new(0.0, 0.9),
        Complex64::new(0.0, -1.7),
        Complex64::new(0.0, 0.4),
    ]);
    let v = ComplexMatrix::from_real_rows(&[
        vec![1.0, 0.4, -0.1],
        vec![0.0, 1.0, 0.25],
        vec![0.0, 0.0, 1.0],
    ])?;
    let m = v.mul(&d).mul(&speclab::linalg::inverse(&v)?);
    let x = ComplexVector::from_real(&[1.0, -0.3, 0.6]);

    for family in [NormFamily::L1, NormFamily::L2, NormFamily::LInf] {
        for alpha in [0.0, 0.5] {
            let report = check_theorem_2_11(&m, &x, alpha, family, 0.0)?;
            let margin = report.tolerances["margin"];
            println!(
                "norm {family}, alpha = {alpha}: pass = {}, margin = {margin:.6}",
                report.pass
            );
        }
    }
    Ok(())
}
