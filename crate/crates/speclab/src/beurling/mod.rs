//! Weighted convolution-algebra primitives: admissible weights on the line,
//! the series constant `C(alpha)` controlling fractional moments of the
//! triangular-wave measure, smooth test functions with closed-form Fourier
//! data, and finitely supported measures.
//!
//! Everything here is deterministic; quadrature only enters through
//! [`TestFunction::weighted_l1_norm`] and friends, and every truncation
//! records the bound it is accurate to.

mod measure;
mod testfn;

pub use measure::{DiscreteMeasure, MeasureAtom, measure_transform, triangular_measure};
pub use testfn::{
    GaussAtom, L1Norm, TestFunction, convolve_check, fourier_grid, ideal_membership,
    interpolating_family,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::QuadError;

#[derive(Debug, Error)]
pub enum BeurlingError {
    #[error("weight exponent {alpha} outside [{min}, {max}]")]
    InvalidAlpha { alpha: f64, min: f64, max: f64 },
    #[error("series constant C(alpha) requires 0 <= alpha < 1, got {alpha}")]
    AlphaOutOfRange { alpha: f64 },
    #[error("invalid measure parameters: {0}")]
    InvalidMeasure(String),
    #[error("invalid bump parameters: {0}")]
    InvalidBump(String),
    #[error(
        "interpolation nodes too close for time-width sigma={sigma}: separation {separation:.3e} \
         below {required:.3e}; increase sigma so the Gaussian kernel separates the nodes"
    )]
    KernelNearSingular {
        sigma: f64,
        separation: f64,
        required: f64,
    },
    #[error("interpolating family failed verification: max residual {residual:.3e}")]
    InterpolationResidual { residual: f64 },
    #[error("time-domain derivative is only available for Gaussian-polynomial functions")]
    UnsupportedDerivative,
    #[error("quadrature failed: {0}")]
    Quad(#[from] QuadError),
    #[error("linear solve failed: {0}")]
    Linalg(#[from] crate::linalg::LinalgError),
}

/// Weight family on the real line. Both families are even, bounded below by 1,
/// and submultiplicative (`w(s+t) <= w(s) w(t)`), which is what makes the
/// weighted L^1 space an algebra under convolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFamily {
    /// `w(t) = (1+|t|)^alpha`, any `alpha >= 0`.
    Power,
    /// `w(t) = 1 + |t|^alpha`. Submultiplicative only for `alpha <= 1`,
    /// which the constructor enforces.
    OnePlusPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weight {
    family: WeightFamily,
    alpha: f64,
}

impl Weight {
    /// `w(t) = (1+|t|)^alpha` for `alpha >= 0`.
    pub fn power(alpha: f64) -> Result<Self, BeurlingError> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(BeurlingError::InvalidAlpha {
                alpha,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        Ok(Weight {
            family: WeightFamily::Power,
            alpha,
        })
    }

    /// `w(t) = 1 + |t|^alpha` for `0 <= alpha <= 1`. Larger exponents break
    /// submultiplicativity, e.g. `w(2) > w(1)^2` already for `alpha = 1.2`.
    pub fn one_plus_power(alpha: f64) -> Result<Self, BeurlingError> {
        if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
            return Err(BeurlingError::InvalidAlpha {
                alpha,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Weight {
            family: WeightFamily::OnePlusPower,
            alpha,
        })
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        let a = t.abs();
        match self.family {
            WeightFamily::Power => (1.0 + a).powf(self.alpha),
            // powf(0,0) = 1, so at alpha = 0 this is identically 2 -- the
            // correct limit for the fractional-moment identities, which only
            // ever evaluate the weight away from the origin.
            WeightFamily::OnePlusPower => 1.0 + a.powf(self.alpha),
        }
    }

    /// Pointwise majorant `w(t) <= coeff * (1 + |t|^degree)` with an integer
    /// degree, used to close tail integrals in terms of Gaussian moments.
    pub fn integer_majorant(&self) -> (f64, u32) {
        match self.family {
            WeightFamily::Power => {
                // (1+a)^alpha <= (2 max(1,a))^alpha <= 2^alpha (1 + a^ceil(alpha))
                let degree = self.alpha.ceil() as u32;
                (2f64.powf(self.alpha), degree)
            }
            // 1 + a^alpha <= 2 (1 + a) for alpha <= 1.
            WeightFamily::OnePlusPower => (2.0, 1),
        }
    }
}

/// Value of the lattice series constant together with the truncation bound it
/// was computed to and the number of explicitly summed terms.
#[derive(Debug, Clone, Copy)]
pub struct CAlpha {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// `C(alpha) = (2/pi)^(2-alpha) * sum over all integers k of |2k+1|^(alpha-2)`,
/// for `0 <= alpha < 1`. This is the constant relating the fractional moment
/// of the triangular-wave measure to its mass; `C(0) = 1` exactly.
///
/// The series converges like `k^(alpha-2)`, far too slowly to meet tight
/// tolerances by raw partial sums, so the tail from `K+1` on is replaced by
/// its Euler-Maclaurin closed form (integral + half-term + first derivative
/// correction) whose remainder is bounded by `|f'''(K+1)| / 720`.
pub fn c_alpha(alpha: f64, tail_tol: f64) -> Result<CAlpha, BeurlingError> {
    if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
        return Err(BeurlingError::AlphaOutOfRange { alpha });
    }
    let prefactor = (2.0 / std::f64::consts::PI).powf(2.0 - alpha) * 2.0;
    let f = |u: f64| (2.0 * u + 1.0).powf(alpha - 2.0);
    let mut k_max = 64usize;
    loop {
        // Remainder of the Euler-Maclaurin expansion truncated after the
        // first-derivative term: |R| <= |f'''(m)| / 720 with m = k_max + 1.
        let m = (k_max + 1) as f64;
        let base = 2.0 * m + 1.0;
        let f3 = 8.0 * (alpha - 2.0) * (alpha - 3.0) * (alpha - 4.0) * base.powf(alpha - 5.0);
        let remainder = prefactor * f3.abs() / 720.0;
        if remainder <= tail_tol {
            let mut partial = 0.0;
            for k in 0..=k_max {
                partial += f(k as f64);
            }
            let integral = base.powf(alpha - 1.0) / (2.0 * (1.0 - alpha));
            let half_term = 0.5 * f(m);
            let deriv_term = -2.0 * (alpha - 2.0) * base.powf(alpha - 3.0) / 12.0;
            let value = prefactor * (partial + integral + half_term + deriv_term);
            return Ok(CAlpha {
                value,
                tail_bound: remainder,
                terms: k_max + 1,
            });
        }
        k_max *= 2;
        if k_max > 1 << 26 {
            return Err(BeurlingError::AlphaOutOfRange { alpha });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_values_match_hand_computation() {
        let w = Weight::power(0.5).unwrap();
        assert!((w.evaluate(2.0) - 3f64.sqrt()).abs() < 1e-15);
        assert!((w.evaluate(-2.0) - 3f64.sqrt()).abs() < 1e-15);
        assert!((w.evaluate(0.0) - 1.0).abs() < 1e-15);

        let w = Weight::one_plus_power(0.7).unwrap();
        assert!((w.evaluate(2.0) - (1.0 + 2f64.powf(0.7))).abs() < 1e-15);
        assert!((w.evaluate(0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_plus_power_rejects_exponents_above_one() {
        assert!(Weight::one_plus_power(1.2).is_err());
        assert!(Weight::one_plus_power(-0.1).is_err());
        assert!(Weight::power(-0.5).is_err());
        assert!(Weight::power(2.5).is_ok());
    }

    #[test]
    fn c_zero_is_exactly_one() {
        let c = c_alpha(0.0, 1e-9).unwrap();
        assert!(
            (c.value - 1.0).abs() <= 1e-9 + c.tail_bound,
            "C(0) = {} (tail bound {:.2e})",
            c.value,
            c.tail_bound
        );
    }

    #[test]
    fn c_alpha_matches_zeta_identity_oracle() {
        // Independent oracle: the odd-integer series equals
        // (1 - 2^(alpha-2)) * zeta(2-alpha), evaluated in multiprecision.
        let cases = [
            (0.3, 1.3198604271221800),
            (0.5, 1.7156094074460445),
            (0.7, 2.5964276311425683),
            (0.99, 64.181705384231835),
        ];
        for (alpha, want) in cases {
            let c = c_alpha(alpha, 1e-10).unwrap();
            assert!(
                (c.value - want).abs() < 1e-9 * want.max(1.0),
                "C({alpha}) = {}, want {want}",
                c.value
            );
        }
    }

    #[test]
    fn c_alpha_grows_toward_the_divergent_endpoint() {
        let mid = c_alpha(0.5, 1e-9).unwrap().value;
        let near_one = c_alpha(0.99, 1e-9).unwrap().value;
        assert!(near_one > mid && mid > 1.0);
    }

    #[test]
    fn c_alpha_rejects_out_of_range_exponents() {
        assert!(c_alpha(1.0, 1e-9).is_err());
        assert!(c_alpha(-0.2, 1e-9).is_err());
        assert!(c_alpha(f64::NAN, 1e-9).is_err());
    }

    #[test]
    fn tighter_tail_tolerance_changes_value_within_stated_bound() {
        let loose = c_alpha(0.8, 1e-6).unwrap();
        let tight = c_alpha(0.8, 1e-12).unwrap();
        assert!((loose.value - tight.value).abs() <= loose.tail_bound + tight.tail_bound);
    }

    proptest! {
        #[test]
        fn weights_are_submultiplicative(
            alpha in 0.0f64..1.0,
            s in -50.0f64..50.0,
            t in -50.0f64..50.0,
        ) {
            for w in [Weight::power(alpha).unwrap(), Weight::one_plus_power(alpha).unwrap()] {
                let lhs = w.evaluate(s + t);
                let rhs = w.evaluate(s) * w.evaluate(t);
                prop_assert!(lhs <= rhs * (1.0 + 1e-12));
            }
        }

        #[test]
        fn power_weights_submultiplicative_for_large_exponents(
            alpha in 0.0f64..6.0,
            s in -20.0f64..20.0,
            t in -20.0f64..20.0,
        ) {
            let w = Weight::power(alpha).unwrap();
            prop_assert!(w.evaluate(s + t) <= w.evaluate(s) * w.evaluate(t) * (1.0 + 1e-10));
        }

        #[test]
        fn integer_majorant_dominates_weight(
            alpha in 0.0f64..1.0,
            t in -100.0f64..100.0,
        ) {
            for w in [Weight::power(alpha).unwrap(), Weight::one_plus_power(alpha).unwrap()] {
                let (coeff, degree) = w.integer_majorant();
                let bound = coeff * (1.0 + t.abs().powi(degree as i32));
                prop_assert!(w.evaluate(t) <= bound * (1.0 + 1e-12));
            }
        }
    }
}
