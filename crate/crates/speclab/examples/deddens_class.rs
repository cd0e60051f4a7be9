//! Conjugation orbits `e^{tA} T e^{-tA}` and growth-class membership.
//!
//! The nilpotent shear `A = [[0,0],[1,0]]` conjugating the projection
//! `T = [[1,0],[0,0]]` produces an orbit whose operator norm is exactly
//! `sqrt(1 + t^2)` — linear growth, so `T` belongs to the class with weight
//! `(1+|t|)^1` but not to the bounded class. Membership is decided twice,
//! by the exact derivation-kernel test and by an empirical growth fit, and
//! the two verdicts must agree.

use speclab::derivation::{
    conjugation_orbit, deddens_membership, shear_projection_pair, symmetric_grid,
    DerivationContext,
};
use speclab::linalg::NormFamily;

fn main() -> Result<(), speclab::Error> {
    let (a, t) = shear_projection_pair();
    let ctx = DerivationContext::new(&a, NormFamily::L2)?;

    let orbit = conjugation_orbit(&ctx, &t, &symmetric_grid(10.0, 2.5))?;
    println!("orbit samples against the closed form sqrt(1 + t^2):");
    for &(s, v) in &orbit.samples {
        println!("  t = {s:+5.1}: {v:.12} vs {:.12}", (1.0 + s * s).sqrt());
    }
    println!(
        "fitted growth: ({:.4}) * (1+|t|)^{:.4}, exponential: {}",
        orbit.fitted_c, orbit.fitted_alpha, orbit.exponential
    );

    for alpha in [1.0, 0.0] {
        let report = deddens_membership(&ctx, &t, alpha)?;
        println!("\nmembership at growth exponent {alpha}:");
        for h in &report.hypotheses_verified {
            println!("  {}: {}", h.name, h.witness);
        }
        println!("  verdicts agree: {}", report.pass);
    }
    Ok(())
}
