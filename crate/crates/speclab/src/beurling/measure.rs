//! Finitely supported complex measures with weighted mass accounting.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{BeurlingError, Weight};

/// One atom `coeff * delta_{point}`.
#[derive(Debug, Clone, Copy)]
pub struct MeasureAtom {
    pub point: f64,
    pub coeff: Complex64,
}

/// A finite sum of point masses, tracking the weighted norm of the retained
/// atoms and a rigorous bound for whatever infinite tail was cut off.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    atoms: Vec<MeasureAtom>,
    weight: Weight,
    truncated_norm: f64,
    truncation_tail: f64,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<MeasureAtom>, weight: Weight) -> Result<Self, BeurlingError> {
        if atoms.is_empty() {
            return Err(BeurlingError::InvalidMeasure("no atoms".into()));
        }
        for a in &atoms {
            if !a.point.is_finite() || !a.coeff.re.is_finite() || !a.coeff.im.is_finite() {
                return Err(BeurlingError::InvalidMeasure("non-finite atom".into()));
            }
        }
        let norm = atoms
            .iter()
            .map(|a| a.coeff.norm() * weight.evaluate(a.point))
            .sum();
        Ok(DiscreteMeasure {
            atoms,
            weight,
            truncated_norm: norm,
            truncation_tail: 0.0,
        })
    }

    pub fn atoms(&self) -> &[MeasureAtom] {
        &self.atoms
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// Weighted mass `sum |coeff| w(point)` of the retained atoms.
    pub fn truncated_norm(&self) -> f64 {
        self.truncated_norm
    }

    /// Upper bound on the weighted mass of the discarded atoms.
    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    /// `muhat(s) = sum coeff * e^{-i s point}` (same convention as functions).
    pub fn transform(&self, s: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            acc += a.coeff * Complex64::from_polar(1.0, -s * a.point);
        }
        acc
    }
}

/// Transform of a measure on a grid of frequencies.
pub fn measure_transform(mu: &DiscreteMeasure, s_grid: &[f64]) -> Vec<Complex64> {
    s_grid.iter().map(|&s| mu.transform(s)).collect()
}

/// The measure whose transform is the triangular wave equal to `s` on
/// `[-a, a]` (period `4a`): atoms at `t_k = -(2k+1) pi / (2a)` with
/// coefficients `-i (4a/pi^2) (-1)^k / (2k+1)^2`, truncated to `|k| <= k_cut`.
///
/// Carries the weight `1 + |t|^alpha`. The full weighted mass satisfies
/// `sum |c_k| (1 + |t_k|^alpha) = a + C(alpha) a^{1-alpha}` with the lattice
/// series constant from [`super::c_alpha`]; the reported truncated norm plus
/// the tail bound brackets that identity.
pub fn triangular_measure(
    a: f64,
    alpha: f64,
    k_cut: usize,
) -> Result<DiscreteMeasure, BeurlingError> {
    if !a.is_finite() || a <= 0.0 {
        return Err(BeurlingError::InvalidMeasure(format!(
            "half-period must be positive, got {a}"
        )));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(BeurlingError::AlphaOutOfRange { alpha });
    }
    if k_cut == 0 {
        return Err(BeurlingError::InvalidMeasure("k_cut must be >= 1".into()));
    }
    let weight = Weight::one_plus_power(alpha)?;
    let scale = 4.0 * a / (PI * PI);
    let k = k_cut as i64;
    let mut atoms = Vec::with_capacity(2 * k_cut + 1);
    for idx in -k..=k {
        let odd = 2 * idx + 1; // never zero: atoms avoid the origin
        let sign = if idx.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let coeff = Complex64::new(0.0, -1.0) * (scale * sign / (odd * odd) as f64);
        atoms.push(MeasureAtom {
            point: -(odd as f64) * PI / (2.0 * a),
            coeff,
        });
    }
    let truncated_norm = atoms
        .iter()
        .map(|at: &MeasureAtom| at.coeff.norm() * weight.evaluate(at.point))
        .sum();

    // Discarded atoms live on odd integers j >= 2 k_cut + 1 (both signs
    // combined contribute at most twice the one-sided tail):
    //   sum over odd j >= J of j^{-s} <= (J-1)^{1-s} / (2(s-1)).
    let odd_tail = |j: f64, s: f64| (j - 1.0).powf(1.0 - s) / (2.0 * (s - 1.0));
    let j0 = (2 * k_cut + 1) as f64;
    let mass_tail = 2.0 * scale * odd_tail(j0, 2.0);
    let moment_tail =
        2.0 * scale * (PI / (2.0 * a)).powf(alpha) * odd_tail(j0, 2.0 - alpha);
    Ok(DiscreteMeasure {
        atoms,
        weight,
        truncated_norm,
        truncation_tail: mass_tail + moment_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beurling::c_alpha;
    use proptest::prelude::*;

    /// The wave the triangular measure's transform converges to: periodic
    /// with period `4a`, equal to `s` on `[-a, a]`, reflected on `[a, 3a]`.
    fn triangular_wave(s: f64, a: f64) -> f64 {
        let folded = (s + a).rem_euclid(4.0 * a) - a;
        if folded <= a { folded } else { 2.0 * a - folded }
    }

    #[test]
    fn mass_converges_to_half_period() {
        let a = 1.3;
        let mu = triangular_measure(a, 0.0, 2000).unwrap();
        let mass: f64 = mu.atoms().iter().map(|at| at.coeff.norm()).sum();
        assert!(
            (mass - a).abs() <= mu.truncation_tail(),
            "mass {mass} vs {a}, tail {}",
            mu.truncation_tail()
        );
    }

    #[test]
    fn coefficients_pair_antisymmetrically() {
        let mu = triangular_measure(0.8, 0.5, 50).unwrap();
        let atoms = mu.atoms();
        // Index idx and -(idx+1) carry opposite coefficients at mirrored
        // points, which forces the transform to vanish at s = 0.
        let by_point = |p: f64| {
            atoms
                .iter()
                .find(|at| (at.point - p).abs() < 1e-12)
                .expect("atom present")
        };
        for idx in 0..5i64 {
            let odd = (2 * idx + 1) as f64;
            let plus = by_point(-odd * PI / 1.6);
            let minus = by_point(odd * PI / 1.6);
            assert!((plus.coeff + minus.coeff).norm() < 1e-15);
        }
        // The symmetric cut |k| <= k_cut leaves exactly one unpaired atom,
        // so the transform at 0 equals that last coefficient.
        let unpaired = 4.0 * 0.8 / (PI * PI) / (101.0 * 101.0);
        assert!((mu.transform(0.0).norm() - unpaired).abs() < 1e-15);
    }

    #[test]
    fn transform_matches_triangular_wave() {
        let a = 1.3;
        let mu = triangular_measure(a, 0.4, 4000).unwrap();
        for s in [0.3, -0.9, 1.0, 1.29, 2.0, 3.5, -4.8] {
            let got = mu.transform(s);
            let want = triangular_wave(s, a);
            assert!(
                (got - want).norm() < 1.5e-4,
                "muhat({s}) = {got}, wave = {want}"
            );
        }
    }

    #[test]
    fn weighted_norm_matches_moment_identity() {
        for (a, alpha) in [(1.3, 0.4), (0.5, 0.0), (3.0, 0.7)] {
            let mu = triangular_measure(a, alpha, 4000).unwrap();
            let c = c_alpha(alpha, 1e-10).unwrap();
            let identity = a + c.value * a.powf(1.0 - alpha);
            assert!(
                (mu.truncated_norm() - identity).abs() <= mu.truncation_tail() + 1e-8,
                "a={a}, alpha={alpha}: norm {} vs identity {identity} (tail {})",
                mu.truncated_norm(),
                mu.truncation_tail()
            );
        }
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(triangular_measure(0.0, 0.3, 100).is_err());
        assert!(triangular_measure(-1.0, 0.3, 100).is_err());
        assert!(triangular_measure(1.0, 1.0, 100).is_err());
        assert!(triangular_measure(1.0, 0.3, 0).is_err());
        assert!(DiscreteMeasure::new(vec![], Weight::power(0.0).unwrap()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn truncated_norm_brackets_identity_for_random_parameters(
            a in 0.3f64..4.0,
            alpha in 0.0f64..0.95,
        ) {
            let mu = triangular_measure(a, alpha, 800).unwrap();
            let c = c_alpha(alpha, 1e-10).unwrap();
            let identity = a + c.value * a.powf(1.0 - alpha);
            prop_assert!(
                (mu.truncated_norm() - identity).abs() <= mu.truncation_tail() + 1e-7
            );
            let unpaired = 4.0 * a / (PI * PI) / (1601.0 * 1601.0);
            prop_assert!(mu.transform(0.0).norm() <= unpaired + 1e-11);
        }
    }
}
