//! Certifying polynomial growth of `t -> e^{tT} x` in both time directions.
//!
//! A Jordan block with a purely imaginary eigenvalue produces an orbit that
//! grows like a polynomial whose degree is the block size minus one. Shift
//! the eigenvalue off the imaginary axis and the orbit turns exponential;
//! the certificate reports exactly which eigenvalue is responsible.

use num_complex::Complex64;
use speclab::linalg::{ComplexMatrix, ComplexVector};
use speclab::local_spectrum::orbit_growth;

fn jordan_block(lambda: Complex64, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |i, j| {
        if i == j {
            lambda
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn main() -> Result<(), speclab::Error> {
    let x = ComplexVector::from_real(&[1.0, 1.0, 1.0]);

    let polynomial = jordan_block(Complex64::new(0.0, 1.3), 3);
    let cert = orbit_growth(&polynomial, &x, 50.0, 0.05)?;
    println!("imaginary eigenvalue, 3x3 block:");
    println!("  polynomial in both directions: {}", cert.polynomial_bidirectional);
    println!("  exact degree: {:?} (block size minus one)", cert.exact_alpha);
    println!("  fitted degree: {:.4}", cert.fitted_alpha);
    println!("  certified bound at t = 40: {:.4e}", cert.bound(40.0));
    let worst = cert
        .sample_grid
        .iter()
        .map(|&(t, v)| v / cert.bound(t))
        .fold(0.0_f64, f64::max);
    println!("  worst sample / bound ratio: {worst:.4} (must stay <= 1)");

    let drifting = jordan_block(Complex64::new(0.02, 1.3), 3);
    let cert = orbit_growth(&drifting, &x, 50.0, 0.05)?;
    println!("\nsame block nudged to Re = 0.02:");
    println!("  polynomial in both directions: {}", cert.polynomial_bidirectional);
    println!("  rejected because: {}", cert.reason.as_deref().unwrap_or("-"));
    Ok(())
}
