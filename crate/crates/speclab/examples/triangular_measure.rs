//! The triangular-wave measure: atoms, weighted mass, and transform.
//!
//! `triangular_measure(a, alpha, k)` builds a discrete measure on the odd
//! multiples of `pi / (2a)` whose transform is the 4a-periodic triangular
//! wave — equal to `s` on `[-a, a]`. Its weighted total mass has the closed
//! form `a + C(alpha) * a^{1-alpha}`, which the truncated atom sum matches to
//! within the recorded tail bound.

use speclab::beurling::{c_alpha, triangular_measure};

fn main() -> Result<(), speclab::Error> {
    let (a, alpha) = (1.5, 0.3);
    let mu = triangular_measure(a, alpha, 2000)?;
    let c = c_alpha(alpha, 1e-9)?;

    println!("measure with {} atoms, weight {:?}", mu.atoms().len(), mu.weight());
    let mut by_distance: Vec<usize> = (0..mu.atoms().len()).collect();
    by_distance.sort_by(|&i, &j| {
        mu.atoms()[i].point.abs().total_cmp(&mu.atoms()[j].point.abs())
    });
    for &i in by_distance.iter().take(3) {
        let atom = &mu.atoms()[i];
        println!("  atom at t = {:+.6}, coefficient {:.6}", atom.point, atom.coeff);
    }
    println!("  ... (atoms sit on the odd multiples of pi/(2a))");

    let closed_form = a + c.value * a.powf(1.0 - alpha);
    println!(
        "weighted mass: atoms {:.12}, closed form {:.12} (tail {:.2e})",
        mu.truncated_norm(),
        closed_form,
        mu.truncation_tail()
    );

    println!("\ntransform vs the triangular wave on [-a, a]:");
    for s in [-1.5, -0.75, 0.0, 0.6, 1.2] {
        let got = mu.transform(s);
        println!("  s = {s:+.2}: transform {:+.6} {:+.6}i (target {s:+.2})", got.re, got.im);
    }
    Ok(())
}
