//! Recovering eigenprojections of `x` with narrow test functions.
//!
//! For a diagonalizable operator with purely imaginary spectrum, applying a
//! modulated Gaussian tuned to one frequency isolates the corresponding
//! spectral component of `x`. Summing the recovered pieces reassembles `x`.

use num_complex::Complex64;
use speclab::calculus::eigen_split_cor_2_9;
use speclab::linalg::{ComplexMatrix, ComplexVector};

fn main() -> Result<(), speclab::Error> {
    // Non-normal but diagonalizable: conjugate a diagonal by a shear.
    let freqs = [1.5, -0.4, 0.9];
    let d = ComplexMatrix::diagonal(&[
        Complex64::new(0.0, freqs[0]),
        Complex64::new(0.0, freqs[1]),
        Complex64::new(0.0, freqs[2]),
    ]);
    let v = ComplexMatrix::from_real_rows(&[
        vec![1.0, 0.3, 0.0],
        vec![0.0, 1.0, -0.2],
        vec![0.0, 0.0, 1.0],
    ])?;
    let v_inv = speclab::linalg::inverse(&v)?;
    let m = v.mul(&d).mul(&v_inv);
    let x = ComplexVector::from_real(&[0.8, -0.5, 1.1]);

    let (parts, report) = eigen_split_cor_2_9(&m, &x, 0.0, 1.0, 1e-5)?;

    let mut reassembled = ComplexVector::zeros(x.dim());
    for (freq, part) in &parts {
        println!("component at frequency {freq:>5}: norm {:.6}", part.norm_l2());
        reassembled = reassembled.add(part);
    }
    let defect = reassembled.sub(&x).norm_l2();
    println!("||sum of parts - x|| = {defect:.3e}");
    println!("checker verdict: pass = {}, defect = {:.3e}", report.pass, report.conclusion_defect);
    Ok(())
}
