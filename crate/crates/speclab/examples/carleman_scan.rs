//! Finding the local spectrum without eigenprojections: resolvent blow-up.
//!
//! The scan probes `<probe, (z - T)^{-1} x>` at `z = i*lambda +- eps` for a
//! shrinking ladder of offsets. Where `i*lambda` belongs to the local
//! spectrum of `x`, the values blow up like `1/eps` (log-log slope near -1);
//! elsewhere they level off. No projections are computed, so the method also
//! works when only matrix-vector solves are available.

use num_complex::Complex64;
use speclab::config;
use speclab::linalg::{ComplexMatrix, ComplexVector};
use speclab::local_spectrum::carleman_scan;

fn main() -> Result<(), speclab::Error> {
    let m = ComplexMatrix::diagonal(&[
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
        Complex64::new(0.0, 0.0),
    ]);
    // x has no component on the eigenvalue 0 eigenvector, so the scan must
    // report {i, -i} and stay quiet at the origin.
    let x = ComplexVector::from_real(&[1.0, 1.0, 0.0]);
    let probe = ComplexVector::from_real(&[1.0, 1.0, 1.0]);

    let grid: Vec<f64> = (-6..=6).map(|k| k as f64 * 0.25).collect();
    let scan = carleman_scan(&m, &x, &probe, &grid, &config::CARLEMAN_OFFSETS)?;

    println!("lambda   slope    candidate");
    for p in &scan.points {
        println!(
            "{:+.2}   {:>8.3}   {}",
            p.lambda,
            p.slope,
            if p.candidate { "<-- spectrum" } else { "" }
        );
    }
    println!(
        "\nrecovered spectrum estimate: {:?}",
        scan.spectrum.points
    );
    Ok(())
}
