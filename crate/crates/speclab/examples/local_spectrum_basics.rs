//! Where does a single vector live inside the spectrum of an operator?
//!
//! Builds a block-diagonal operator with three eigenvalues, then inspects two
//! vectors: one spread across every eigenspace and one confined to a single
//! block. The local spectrum of the second is strictly smaller than the
//! global spectrum, and its local radius drops accordingly.

use num_complex::Complex64;
use speclab::config;
use speclab::linalg::{ComplexMatrix, ComplexVector};
use speclab::local_spectrum::{local_spectral_radius_power, local_spectrum};

fn main() -> Result<(), speclab::Error> {
    let eigenvalues = [
        Complex64::new(0.0, 2.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.0, 0.5),
    ];
    let m = ComplexMatrix::diagonal(&eigenvalues);

    let spread = ComplexVector::from_real(&[1.0, 1.0, 1.0]);
    let confined = ComplexVector::from_real(&[0.0, 1.0, 0.0]);

    for (name, x) in [("spread", &spread), ("confined", &confined)] {
        let sigma = local_spectrum(&m, x, config::DEFAULT_CLUSTER_TOL)?;
        println!("{name} vector:");
        for (lambda, mass) in sigma.points.iter().zip(&sigma.masses) {
            println!("  sees {lambda} with projection mass {mass:.3}");
        }
        println!("  local spectral radius (projection): {:.6}", sigma.radius());

        // The power method on || M^n x ||^(1/n) converges to the same radius
        // without ever computing a projection.
        let power = local_spectral_radius_power(&m, x, config::RADIUS_POWER_N_MAX)?;
        println!("  local spectral radius (power seq):  {:.6}", power.estimate);
        println!();
    }
    Ok(())
}
