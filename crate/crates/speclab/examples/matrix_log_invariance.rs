//! The principal logarithm and what conjugation-growth membership preserves.
//!
//! For invertible `A` with spectrum off the cut `(-inf, 0]`, membership of
//! `T` in a sub-linear conjugation growth class for `log A` is equivalent to
//! `T` leaving the spectral subspaces of `A` invariant — equivalently,
//! commuting with every spectral projection. The checker compares the kernel
//! test for `log A` with a direct invariance sweep; this example shows an
//! invariant and a non-invariant `T` against the same `A`.

use num_complex::Complex64;
use speclab::config;
use speclab::derivation::{check_prop_3_7, principal_log};
use speclab::linalg::{expm, ComplexMatrix};

fn main() -> Result<(), speclab::Error> {
    // Two eigenvalues of equal modulus 2, arguments 0.4 and -1.1: away from
    // the branch cut, and the discrete orbit A^n T A^{-n} stays bounded for
    // every T, so the growth hypothesis holds on both cases below.
    let a = ComplexMatrix::from_rows(&[
        vec![Complex64::from_polar(2.0, 0.4), Complex64::new(0.6, 0.2)],
        vec![Complex64::new(0.0, 0.0), Complex64::from_polar(2.0, -1.1)],
    ])?;

    let log_a = principal_log(&a, config::DEFAULT_CLUSTER_TOL)?;
    let round_trip = expm(&log_a, 1e-14)?.sub(&a).frobenius_norm() / a.frobenius_norm();
    println!("principal log round trip ||exp(log A) - A|| / ||A|| = {round_trip:.3e}");

    // T1 = A^2 commutes with A: invariant, in the kernel.
    let t1 = a.mul(&a);
    // T2 mixes the spectral subspaces.
    let t2 = ComplexMatrix::from_real_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]])?;

    for (name, t) in [("A^2", &t1), ("lower shear", &t2)] {
        let report = check_prop_3_7(&a, t, 0.3, 16)?;
        println!("\nT = {name}:");
        for h in &report.hypotheses_verified {
            println!("  {}: {}", h.name, h.witness);
        }
        println!(
            "  applicable: {}, verdicts agree: {}",
            report.applicable, report.pass
        );
    }
    Ok(())
}
