//! Test functions with closed-form Fourier data.
//!
//! Fourier convention throughout the crate: `fhat(s) = integral of
//! f(t) e^{-ist} dt`. Two families are supported:
//!
//! * **Gaussian-polynomial** sums `sum_k c_k t^{m_k} e^{-t^2/(2 sigma_k^2)}
//!   e^{i theta_k t}`: closed under differentiation, transforms and all
//!   transform derivatives expressed through Hermite polynomials.
//! * **Band-limited bumps**: the *transform* is the primary object -- a
//!   piecewise-polynomial plateau function that is exactly 1 near a center,
//!   exactly 0 far away, and `C^p` in between. Time-domain values come from
//!   an exact finite integration-by-parts series for large `|t|` and from
//!   adaptive quadrature near the origin.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{BeurlingError, Weight};
use crate::linalg::{ComplexMatrix, ComplexVector, lu_factor};
use crate::quad::integrate;

/// One term `coeff * t^power * exp(-t^2/(2 sigma^2)) * exp(i theta t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussAtom {
    pub coeff: Complex64,
    pub power: u32,
    pub sigma: f64,
    pub theta: f64,
}

impl GaussAtom {
    pub fn new(coeff: Complex64, power: u32, sigma: f64, theta: f64) -> Self {
        GaussAtom {
            coeff,
            power,
            sigma,
            theta,
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    GaussianPoly { atoms: Vec<GaussAtom> },
    Bump(Bump),
}

/// A smooth, rapidly decaying function on the line with exact Fourier data.
#[derive(Debug, Clone)]
pub struct TestFunction {
    repr: Repr,
}

/// Weighted `L^1` norm of a test function, split into the computed integral
/// over `[-t_cut, t_cut]`, the quadrature error estimate for that piece, and
/// a rigorous analytic bound on the discarded tail.
#[derive(Debug, Clone, Copy)]
pub struct L1Norm {
    pub value: f64,
    pub quad_error: f64,
    pub tail_bound: f64,
    pub t_cut: f64,
}

impl L1Norm {
    /// Upper bound on the true weighted norm.
    pub fn upper(&self) -> f64 {
        self.value + self.quad_error + self.tail_bound
    }
}

impl TestFunction {
    /// Sum of Gaussian-polynomial atoms. Requires at least one atom, positive
    /// widths, finite parameters, and moderate polynomial degrees.
    pub fn gaussian_poly(atoms: Vec<GaussAtom>) -> Result<Self, BeurlingError> {
        if atoms.is_empty() {
            return Err(BeurlingError::InvalidBump("empty atom list".into()));
        }
        for a in &atoms {
            if !(a.sigma.is_finite() && a.sigma > 0.0)
                || !a.theta.is_finite()
                || !a.coeff.re.is_finite()
                || !a.coeff.im.is_finite()
                || a.power > 48
            {
                return Err(BeurlingError::InvalidBump(format!(
                    "bad atom parameters: sigma={}, theta={}, power={}",
                    a.sigma, a.theta, a.power
                )));
            }
        }
        Ok(TestFunction {
            repr: Repr::GaussianPoly { atoms },
        })
    }

    /// Plain Gaussian `e^{-t^2/(2 sigma^2)}`.
    pub fn gaussian(sigma: f64) -> Result<Self, BeurlingError> {
        Self::gaussian_poly(vec![GaussAtom::new(Complex64::new(1.0, 0.0), 0, sigma, 0.0)])
    }

    /// Modulated Gaussian `e^{-t^2/(2 sigma^2)} e^{i theta t}`, whose
    /// transform is a Gaussian bump centered at `theta`.
    pub fn modulated_gaussian(sigma: f64, theta: f64) -> Result<Self, BeurlingError> {
        Self::gaussian_poly(vec![GaussAtom::new(
            Complex64::new(1.0, 0.0),
            0,
            sigma,
            theta,
        )])
    }

    /// Band-limited plateau function: the transform equals 1 on
    /// `[center - inner_radius, center + inner_radius]`, vanishes outside
    /// `[center - outer_radius, center + outer_radius]`, and joins the two
    /// levels with a polynomial `C^smoothness` step.
    pub fn bump(
        center: f64,
        inner_radius: f64,
        outer_radius: f64,
        smoothness: u32,
    ) -> Result<Self, BeurlingError> {
        Ok(TestFunction {
            repr: Repr::Bump(Bump::new(center, inner_radius, outer_radius, smoothness)?),
        })
    }

    pub fn is_bump(&self) -> bool {
        matches!(self.repr, Repr::Bump(_))
    }

    pub fn atoms(&self) -> Option<&[GaussAtom]> {
        match &self.repr {
            Repr::GaussianPoly { atoms } => Some(atoms),
            Repr::Bump(_) => None,
        }
    }

    /// Point value `f(t)`.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        match &self.repr {
            Repr::GaussianPoly { atoms } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in atoms {
                    let envelope = (-t * t / (2.0 * a.sigma * a.sigma)).exp();
                    if envelope == 0.0 {
                        continue;
                    }
                    let phase = Complex64::from_polar(1.0, a.theta * t);
                    acc += a.coeff * t.powi(a.power as i32) * envelope * phase;
                }
                acc
            }
            Repr::Bump(b) => b.evaluate(t),
        }
    }

    /// `order`-th derivative of the transform at `s`.
    pub fn fourier(&self, s: f64, order: usize) -> Complex64 {
        match &self.repr {
            Repr::GaussianPoly { atoms } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in atoms {
                    let k = a.power as usize + order;
                    let i_pow = Complex64::i().powu(a.power);
                    acc += a.coeff * i_pow * gauss_hat_deriv(a.sigma, k, s - a.theta);
                }
                acc
            }
            Repr::Bump(b) => Complex64::new(b.fourier_deriv(s, order), 0.0),
        }
    }

    /// Time-domain derivative, staying inside the Gaussian-polynomial family.
    /// Band-limited bumps do not support this (their derivative's transform
    /// is no longer a plateau).
    pub fn derivative(&self) -> Result<TestFunction, BeurlingError> {
        let atoms = match &self.repr {
            Repr::GaussianPoly { atoms } => atoms,
            Repr::Bump(_) => return Err(BeurlingError::UnsupportedDerivative),
        };
        let mut out: Vec<GaussAtom> = Vec::with_capacity(atoms.len() * 3);
        for a in atoms {
            if a.power > 0 {
                out.push(GaussAtom::new(
                    a.coeff * a.power as f64,
                    a.power - 1,
                    a.sigma,
                    a.theta,
                ));
            }
            if a.theta != 0.0 {
                out.push(GaussAtom::new(
                    a.coeff * Complex64::new(0.0, a.theta),
                    a.power,
                    a.sigma,
                    a.theta,
                ));
            }
            out.push(GaussAtom::new(
                -a.coeff / (a.sigma * a.sigma),
                a.power + 1,
                a.sigma,
                a.theta,
            ));
        }
        TestFunction::gaussian_poly(out)
    }

    /// Half-width of the time interval outside which the function is
    /// negligible for quadrature purposes.
    pub fn time_extent(&self) -> f64 {
        match &self.repr {
            Repr::GaussianPoly { atoms } => {
                let sigma_max = atoms.iter().map(|a| a.sigma).fold(0.0, f64::max);
                crate::config::GAUSSIAN_T_CUT_SIGMAS * sigma_max
            }
            Repr::Bump(b) => {
                // |f(t)| <= decay[p] / |t|^p; push it below ~1e-10.
                let p = b.smoothness as i32;
                let t = (b.decay[b.smoothness as usize] * 1e10).powf(1.0 / p as f64);
                t.clamp(50.0, 5e4)
            }
        }
    }

    /// Largest frequency present in the function, in radians per unit time;
    /// quadrature against `f` needs a few panels per cycle of this rate.
    pub fn oscillation_scale(&self) -> f64 {
        match &self.repr {
            Repr::GaussianPoly { atoms } => {
                atoms.iter().map(|a| a.theta.abs()).fold(0.0, f64::max)
            }
            Repr::Bump(b) => b.center.abs() + b.outer_radius,
        }
    }

    /// `integral of |f(t)| w(t) dt`, computed adaptively on `[-t_cut, t_cut]`
    /// with a rigorous analytic bound on the rest. `quad_tol` is the absolute
    /// tolerance requested from the quadrature.
    pub fn weighted_l1_norm(&self, weight: &Weight, quad_tol: f64) -> Result<L1Norm, BeurlingError> {
        let (coeff, degree) = weight.integer_majorant();
        match &self.repr {
            Repr::GaussianPoly { atoms } => {
                let sigma_max = atoms.iter().map(|a| a.sigma).fold(0.0, f64::max);
                let sigma_min = atoms.iter().map(|a| a.sigma).fold(f64::INFINITY, f64::min);
                let t_cut = crate::config::GAUSSIAN_T_CUT_SIGMAS * sigma_max;
                // For t >= T: e^{-t^2/2s^2} <= e^{-T^2/4s^2} e^{-t^2/4s^2},
                // then bound the weight by its integer majorant and finish
                // with exact Gaussian moments.
                let mut tail = 0.0;
                for a in atoms {
                    let c = 1.0 / (4.0 * a.sigma * a.sigma);
                    let front = (-t_cut * t_cut * c).exp();
                    let moments =
                        gaussian_moment(a.power, c) + gaussian_moment(a.power + degree, c);
                    tail += 2.0 * a.coeff.norm() * coeff * front * moments;
                }
                let seed = ((2.0 * t_cut / sigma_min).ceil() as usize).clamp(32, 2048);
                let result = integrate(
                    |t| self.evaluate(t).norm() * weight.evaluate(t),
                    -t_cut,
                    t_cut,
                    quad_tol,
                    seed,
                    8 * seed.max(1024),
                )?;
                Ok(L1Norm {
                    value: result.value,
                    quad_error: result.error,
                    tail_bound: tail,
                    t_cut,
                })
            }
            Repr::Bump(b) => {
                let p = b.smoothness;
                if degree + 1 >= p {
                    return Err(BeurlingError::InvalidBump(format!(
                        "bump smoothness {p} too small to control the weight \
                         (needs at least {})",
                        degree + 2
                    )));
                }
                // |f(t)| <= K_p / t^p and w(t) <= coeff (1 + t^degree) give
                // tail(T) <= 2 coeff K_p [T^{1-p}/(p-1) + T^{1+degree-p}/(p-degree-1)].
                let k_p = b.decay[p as usize];
                let tail_at = |t: f64| {
                    2.0 * coeff
                        * k_p
                        * (t.powi(1 - p as i32) / (p as f64 - 1.0)
                            + t.powi(1 + degree as i32 - p as i32)
                                / (p as f64 - degree as f64 - 1.0))
                };
                let mut t_cut = self.time_extent().max(20.0);
                while tail_at(t_cut) > quad_tol && t_cut < 1e5 {
                    t_cut *= 2.0;
                }
                let tail = tail_at(t_cut);
                // |f| oscillates roughly like e^{i (center +- radius) t}.
                let freq = b.center.abs() + b.outer_radius;
                let seed = ((t_cut * (freq + 1.0) / 2.5).ceil() as usize).clamp(64, 6000);
                let result = integrate(
                    |t| b.evaluate(t).norm() * weight.evaluate(t),
                    -t_cut,
                    t_cut,
                    quad_tol,
                    seed,
                    4 * seed.max(4096),
                )?;
                Ok(L1Norm {
                    value: result.value,
                    quad_error: result.error,
                    tail_bound: tail,
                    t_cut,
                })
            }
        }
    }
}

/// Transform derivatives of a whole family at one grid of points.
pub fn fourier_grid(f: &TestFunction, s_grid: &[f64], order: usize) -> Vec<Complex64> {
    s_grid.iter().map(|&s| f.fourier(s, order)).collect()
}

/// Derivatives of `ghat_sigma(u) = sigma sqrt(2 pi) e^{-sigma^2 u^2 / 2}`:
/// `ghat^{(k)}(u) = sigma sqrt(2 pi) (-sigma)^k He_k(sigma u) e^{-sigma^2 u^2/2}`
/// with probabilists' Hermite polynomials `He_k`.
fn gauss_hat_deriv(sigma: f64, k: usize, u: f64) -> Complex64 {
    let x = sigma * u;
    let he = hermite_prob(k, x);
    let envelope = (-x * x / 2.0).exp();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::new(
        sigma * (2.0 * PI).sqrt() * sign * sigma.powi(k as i32) * he * envelope,
        0.0,
    )
}

/// Probabilists' Hermite polynomial `He_k(x)`:
/// `He_0 = 1`, `He_1 = x`, `He_{k+1} = x He_k - k He_{k-1}`.
fn hermite_prob(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return 1.0;
    }
    for n in 1..k {
        let next = x * cur - n as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `I_q(c) = integral over t >= 0 of t^q e^{-c t^2} dt`.
fn gaussian_moment(q: u32, c: f64) -> f64 {
    match q {
        0 => 0.5 * (PI / c).sqrt(),
        1 => 0.5 / c,
        _ => (q - 1) as f64 / (2.0 * c) * gaussian_moment(q - 2, c),
    }
}

// ---------------------------------------------------------------------------
// Band-limited bump
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Bump {
    center: f64,
    inner_radius: f64,
    outer_radius: f64,
    smoothness: u32,
    /// Power-basis coefficients of the `C^p` unit step on `[0, 1]`.
    step: Vec<f64>,
    /// `decay[k] = ||fhat^{(k)}||_1 / (2 pi)`, so `|f(t)| <= decay[k]/|t|^k`.
    decay: Vec<f64>,
    /// Below this `|t|` the integration-by-parts series loses too many digits
    /// to cancellation and quadrature is used instead.
    t_switch: f64,
}

impl Bump {
    fn new(
        center: f64,
        inner_radius: f64,
        outer_radius: f64,
        smoothness: u32,
    ) -> Result<Self, BeurlingError> {
        if !(center.is_finite() && inner_radius.is_finite() && outer_radius.is_finite()) {
            return Err(BeurlingError::InvalidBump("non-finite parameters".into()));
        }
        if !(0.0 < inner_radius && inner_radius < outer_radius) {
            return Err(BeurlingError::InvalidBump(format!(
                "need 0 < inner_radius < outer_radius, got {inner_radius}, {outer_radius}"
            )));
        }
        if !(1..=10).contains(&smoothness) {
            return Err(BeurlingError::InvalidBump(format!(
                "smoothness {smoothness} outside 1..=10"
            )));
        }
        let p = smoothness as usize;
        let step = smoothstep_coeffs(smoothness);
        let w = outer_radius - inner_radius;

        // Decay constants K_k = ||fhat^{(k)}||_1 / (2 pi). The k-th transform
        // derivative is supported on the two transition bands, each of width
        // w, where it equals S^{(k)}(xi) / w^k up to sign; the plateau only
        // contributes at k = 0.
        let mut decay = Vec::with_capacity(p + 1);
        decay.push((inner_radius + outer_radius) / (2.0 * PI));
        for k in 1..=p {
            let abs_int = integrate(
                |xi: f64| poly_deriv_eval(&step, k, xi).abs(),
                0.0,
                1.0,
                1e-11,
                64,
                512,
            )
            .map(|r| r.value + r.error)
            .unwrap_or_else(|_| {
                // Crude fallback: max of |S^{(k)}| on a fine grid.
                (0..=1000)
                    .map(|i| poly_deriv_eval(&step, k, i as f64 / 1000.0).abs())
                    .fold(0.0, f64::max)
            });
            decay.push(2.0 * w.powi(1 - k as i32) * abs_int * 1.01 / (2.0 * PI));
        }

        // Cancellation guard: the series terms are jump/t^{m+1}; keep the
        // largest one below ~1e2 so roundoff stays near 1e-14 absolute.
        let mut t_switch: f64 = 1.0;
        for m in p + 1..=2 * p + 1 {
            let jump = poly_deriv_eval(&step, m, 0.0)
                .abs()
                .max(poly_deriv_eval(&step, m, 1.0).abs())
                / w.powi(m as i32);
            t_switch = t_switch.max((jump / 100.0).powf(1.0 / (m as f64 + 1.0)));
        }

        Ok(Bump {
            center,
            inner_radius,
            outer_radius,
            smoothness,
            step,
            decay,
            t_switch,
        })
    }

    /// `order`-th derivative of the transform at `s` (real-valued).
    fn fourier_deriv(&self, s: f64, order: usize) -> f64 {
        let u = s - self.center;
        let au = u.abs();
        let w = self.outer_radius - self.inner_radius;
        if au >= self.outer_radius {
            return 0.0;
        }
        if au <= self.inner_radius {
            return if order == 0 { 1.0 } else { 0.0 };
        }
        // Transition band. Rising on the left (step from 0 up to 1 as s
        // increases), falling on the right.
        if u < 0.0 {
            let xi = (u + self.outer_radius) / w;
            poly_deriv_eval(&self.step, order, xi) / w.powi(order as i32)
        } else {
            let xi = (self.outer_radius - u) / w;
            let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
            sign * poly_deriv_eval(&self.step, order, xi) / w.powi(order as i32)
        }
    }

    fn evaluate(&self, t: f64) -> Complex64 {
        if t.abs() >= self.t_switch {
            self.eval_series(t)
        } else {
            self.eval_quadrature(t)
        }
    }

    /// Exact finite series from repeated integration by parts. Since the
    /// transform is C^p, only derivative jumps of orders p+1 ..= 2p+1 at the
    /// four knots survive:
    /// `f(t) = -(1/2pi) e^{ict} sum_m (-1)^m / (it)^{m+1}
    ///         sum_knots e^{i u_k t} [fhat^{(m)}](u_k)`.
    fn eval_series(&self, t: f64) -> Complex64 {
        let p = self.smoothness as usize;
        let w = self.outer_radius - self.inner_radius;
        let (ir, or) = (self.inner_radius, self.outer_radius);
        let inv_it = 1.0 / Complex64::new(0.0, t);
        let mut pow = inv_it.powu(p as u32 + 2); // 1/(it)^{m+1} at m = p+1
        let mut total = Complex64::new(0.0, 0.0);
        for m in p + 1..=2 * p + 1 {
            let s0 = poly_deriv_eval(&self.step, m, 0.0) / w.powi(m as i32);
            let s1 = poly_deriv_eval(&self.step, m, 1.0) / w.powi(m as i32);
            let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
            let phase = |u: f64| Complex64::from_polar(1.0, u * t);
            // Jumps: +S^(m)(0)/w^m at -or, -S^(m)(1)/w^m at -ir,
            // (-1)^m S^(m)(1)/w^m at +ir, -(-1)^m S^(m)(0)/w^m at +or.
            let jump_sum = phase(-or) * s0 - phase(-ir) * s1 + phase(ir) * (parity * s1)
                - phase(or) * (parity * s0);
            total += jump_sum * pow * parity;
            pow *= inv_it;
        }
        -Complex64::from_polar(1.0, self.center * t) * total / (2.0 * PI)
    }

    /// `f(t) = (1/2pi) e^{ict} integral over the support of fhat(c+u) e^{iut} du`,
    /// integrated piecewise so the quadrature never straddles a knot.
    fn eval_quadrature(&self, t: f64) -> Complex64 {
        let (ir, or) = (self.inner_radius, self.outer_radius);
        let cycles = or * t.abs() / (2.0 * PI);
        let seed = ((4.0 * cycles).ceil() as usize).clamp(6, 128);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in [(-or, -ir), (-ir, ir), (ir, or)] {
            let piece = integrate(
                |u: f64| {
                    Complex64::from_polar(1.0, u * t) * self.fourier_deriv(self.center + u, 0)
                },
                a,
                b,
                1e-13 * (1.0 + or),
                seed,
                1024,
            )
            .map(|r| r.value)
            .unwrap_or_else(|_| self.refine_piece(a, b, t));
            acc += piece;
        }
        Complex64::from_polar(1.0, self.center * t) * acc / (2.0 * PI)
    }

    fn refine_piece(&self, a: f64, b: f64, t: f64) -> Complex64 {
        integrate(
            |u: f64| Complex64::from_polar(1.0, u * t) * self.fourier_deriv(self.center + u, 0),
            a,
            b,
            1e-10 * (1.0 + self.outer_radius),
            256,
            4096,
        )
        .map(|r| r.value)
        .expect("bump quadrature cannot resolve its own transform")
    }
}

/// Power-basis coefficients of the polynomial `C^p` step: degree `2p+1`,
/// `S(0)=0`, `S(1)=1`, with `p` vanishing derivatives at both ends
/// (`S'(x)` proportional to `x^p (1-x)^p`).
fn smoothstep_coeffs(p: u32) -> Vec<f64> {
    let p = p as usize;
    let mut coeffs = vec![0.0; 2 * p + 2];
    let mut binom = 1.0;
    let mut total = 0.0;
    for j in 0..=p {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * binom / (p + j + 1) as f64;
        coeffs[p + j + 1] = c;
        total += c;
        binom *= (p - j) as f64 / (j + 1) as f64;
    }
    for c in &mut coeffs {
        *c /= total;
    }
    coeffs
}

/// `d^order/dx^order` of `sum_l coeffs[l] x^l`, evaluated at `x`.
fn poly_deriv_eval(coeffs: &[f64], order: usize, x: f64) -> f64 {
    if order >= coeffs.len() {
        return 0.0;
    }
    let mut acc = 0.0;
    for l in (order..coeffs.len()).rev() {
        let mut falling = 1.0;
        for i in 0..order {
            falling *= (l - i) as f64;
        }
        acc = acc * x + coeffs[l] * falling;
    }
    acc
}

// ---------------------------------------------------------------------------
// Interpolation, ideals, convolution
// ---------------------------------------------------------------------------

/// Gaussian family `f_1 .. f_n` with `fhat_m(-lambda_n) = delta_{mn}`:
/// each `f_m` is a combination of `e^{-t^2/(2 sigma^2)} e^{-i lambda_j t}`
/// whose coefficients solve the (symmetric positive-definite) Gaussian-kernel
/// system. The Kronecker property is re-verified to 1e-10 before returning.
///
/// Well-conditioned when `sigma * min-separation` is order 1; for tightly
/// clustered nodes increase `sigma` (wider in time = sharper in frequency).
pub fn interpolating_family(
    lambdas: &[f64],
    sigma: f64,
) -> Result<Vec<TestFunction>, BeurlingError> {
    if lambdas.is_empty() || !sigma.is_finite() || sigma <= 0.0 {
        return Err(BeurlingError::InvalidBump(
            "interpolation needs nodes and a positive sigma".into(),
        ));
    }
    let n = lambdas.len();
    let mut min_sep = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            min_sep = min_sep.min((lambdas[i] - lambdas[j]).abs());
        }
    }
    let required = 1e-3 / sigma;
    if n > 1 && min_sep < required {
        return Err(BeurlingError::KernelNearSingular {
            sigma,
            separation: min_sep,
            required,
        });
    }

    let kernel = ComplexMatrix::from_fn(n, |r, c| {
        let d = lambdas[c] - lambdas[r];
        Complex64::new(sigma * (2.0 * PI).sqrt() * (-sigma * sigma * d * d / 2.0).exp(), 0.0)
    });
    let lu = lu_factor(&kernel)?;
    let mut family = Vec::with_capacity(n);
    for m in 0..n {
        let rhs = ComplexVector::from_fn(n, |i| {
            Complex64::new(if i == m { 1.0 } else { 0.0 }, 0.0)
        });
        let beta = lu.solve(&rhs);
        let atoms = (0..n)
            .map(|j| GaussAtom::new(beta.get(j), 0, sigma, -lambdas[j]))
            .collect();
        family.push(TestFunction::gaussian_poly(atoms)?);
    }

    let mut residual = 0.0f64;
    for (m, f) in family.iter().enumerate() {
        for (idx, &lam) in lambdas.iter().enumerate() {
            let got = f.fourier(-lam, 0);
            let want = if idx == m { 1.0 } else { 0.0 };
            residual = residual.max((got - want).norm());
        }
    }
    if residual > 1e-10 {
        return Err(BeurlingError::InterpolationResidual { residual });
    }
    Ok(family)
}

#[derive(Debug, Clone)]
pub struct IdealWitness {
    pub lambda: f64,
    pub order: usize,
    pub value: Complex64,
}

#[derive(Debug, Clone)]
pub struct IdealMembership {
    pub member: bool,
    pub max_abs: f64,
    pub witnesses: Vec<IdealWitness>,
}

/// Whether `fhat` vanishes (to `tol`) at every `-lambda` through derivative
/// order `floor(alpha)` -- membership in the closed ideal of functions flat
/// on the given frequency set.
pub fn ideal_membership(
    f: &TestFunction,
    lambdas: &[f64],
    alpha: f64,
    tol: f64,
) -> IdealMembership {
    let max_order = alpha.max(0.0).floor() as usize;
    let mut witnesses = Vec::new();
    let mut max_abs = 0.0f64;
    for &lam in lambdas {
        for order in 0..=max_order {
            let value = f.fourier(-lam, order);
            max_abs = max_abs.max(value.norm());
            witnesses.push(IdealWitness {
                lambda: lam,
                order,
                value,
            });
        }
    }
    IdealMembership {
        member: max_abs <= tol,
        max_abs,
        witnesses,
    }
}

/// Numeric check that transforms turn convolution into products: computes
/// `f * g` on a uniform grid, transforms the result directly, and returns the
/// largest deviation from `fhat(s) ghat(s)` over the sample points.
pub fn convolve_check(
    f: &TestFunction,
    g: &TestFunction,
    s_samples: &[f64],
) -> Result<f64, BeurlingError> {
    let half_width = f.time_extent().min(60.0) + g.time_extent().min(60.0);
    let step = 0.02;
    let n = (half_width / step).ceil() as i64;
    let f_grid: Vec<Complex64> = (-n..=n).map(|j| f.evaluate(j as f64 * step)).collect();

    // (f*g)(t_i) = step * sum_j f(t_j) g(t_i - t_j), t_i on the same grid.
    let mut conv = vec![Complex64::new(0.0, 0.0); (2 * n + 1) as usize];
    for (i, slot) in conv.iter_mut().enumerate() {
        let t_i = (i as i64 - n) as f64 * step;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, fv) in f_grid.iter().enumerate() {
            if fv.norm_sqr() == 0.0 {
                continue;
            }
            let t_j = (j as i64 - n) as f64 * step;
            acc += fv * g.evaluate(t_i - t_j);
        }
        *slot = acc * step;
    }

    let mut worst = 0.0f64;
    for &s in s_samples {
        let mut hat = Complex64::new(0.0, 0.0);
        for (i, cv) in conv.iter().enumerate() {
            let t_i = (i as i64 - n) as f64 * step;
            hat += cv * Complex64::from_polar(1.0, -s * t_i);
        }
        hat *= step;
        let want = f.fourier(s, 0) * g.fourier(s, 0);
        worst = worst.max((hat - want).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn atom(coeff: f64, power: u32, sigma: f64, theta: f64) -> GaussAtom {
        GaussAtom::new(Complex64::new(coeff, 0.0), power, sigma, theta)
    }

    #[test]
    fn hermite_recurrence_matches_closed_forms() {
        // He_2 = x^2 - 1, He_3 = x^3 - 3x.
        for x in [-1.7, 0.0, 0.4, 2.3] {
            assert!((hermite_prob(2, x) - (x * x - 1.0)).abs() < 1e-14);
            assert!((hermite_prob(3, x) - (x * x * x - 3.0 * x)).abs() < 1e-13);
        }
    }

    #[test]
    fn transform_of_t_times_gaussian_matches_oracle() {
        // f(t) = t e^{-t^2/2}; fhat(0.9) = -1.50467663935895836 i
        // (multiprecision quadrature of the defining integral).
        let f = TestFunction::gaussian_poly(vec![atom(1.0, 1, 1.0, 0.0)]).unwrap();
        let got = f.fourier(0.9, 0);
        let want = Complex64::new(0.0, -1.50467663935895836);
        assert!((got - want).norm() < 1e-14, "got {got}");
    }

    #[test]
    fn transform_derivative_matches_finite_difference() {
        let f = TestFunction::gaussian_poly(vec![atom(0.8, 2, 0.8, 1.1)]).unwrap();
        let s = 0.45;
        let h = 1e-5;
        for order in 0..3 {
            let fd = (f.fourier(s + h, order) - f.fourier(s - h, order)) / (2.0 * h);
            let exact = f.fourier(s, order + 1);
            assert!(
                (fd - exact).norm() < 1e-6 * (1.0 + exact.norm()),
                "order {order}: fd {fd} vs exact {exact}"
            );
        }
    }

    #[test]
    fn time_derivative_matches_finite_difference() {
        let f =
            TestFunction::gaussian_poly(vec![atom(1.0, 1, 1.2, 0.6), atom(-0.3, 0, 0.9, -0.2)])
                .unwrap();
        let df = f.derivative().unwrap();
        let t = 0.7;
        let h = 1e-6;
        let fd = (f.evaluate(t + h) - f.evaluate(t - h)) / (2.0 * h);
        assert!((fd - df.evaluate(t)).norm() < 1e-8);
    }

    #[test]
    fn derivative_transform_is_is_times_transform() {
        // hat(f')(s) = i s fhat(s), both sides in closed form.
        let f = TestFunction::gaussian_poly(vec![atom(1.0, 2, 1.4, -0.8)]).unwrap();
        let df = f.derivative().unwrap();
        for s in [-3.0, -0.5, 0.0, 1.2, 4.7] {
            let lhs = df.fourier(s, 0);
            let rhs = Complex64::new(0.0, s) * f.fourier(s, 0);
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()), "s={s}");
        }
    }

    #[test]
    fn weighted_l1_norms_match_oracles() {
        // integral |t| e^{-t^2/2} (1+|t|)^0.3 dt = 2.52975053962625446,
        // integral |t| e^{-t^2/2} (1+|t|^0.7) dt = 4.27165308196591582.
        let f = TestFunction::gaussian_poly(vec![atom(1.0, 1, 1.0, 0.4)]).unwrap();
        let n1 = f
            .weighted_l1_norm(&Weight::power(0.3).unwrap(), 1e-10)
            .unwrap();
        assert!((n1.value - 2.52975053962625446).abs() < 1e-8);
        let n2 = f
            .weighted_l1_norm(&Weight::one_plus_power(0.7).unwrap(), 1e-10)
            .unwrap();
        assert!((n2.value - 4.27165308196591582).abs() < 1e-8);
        assert!(n1.tail_bound < 1e-12 && n2.tail_bound < 1e-12);
    }

    #[test]
    fn unweighted_l1_of_t_gaussian_is_two() {
        // 2 * integral over t>=0 of t e^{-t^2/2} dt = 2.
        let f = TestFunction::gaussian_poly(vec![atom(1.0, 1, 1.0, 0.0)]).unwrap();
        let n = f
            .weighted_l1_norm(&Weight::power(0.0).unwrap(), 1e-11)
            .unwrap();
        assert!((n.value - 2.0).abs() < 1e-9, "norm {}", n.value);
    }

    #[test]
    fn bump_transform_has_plateau_step_and_support() {
        let f = TestFunction::bump(0.5, 1.0, 2.0, 3).unwrap();
        assert_eq!(f.fourier(0.5, 0), Complex64::new(1.0, 0.0));
        assert_eq!(f.fourier(1.3, 0), Complex64::new(1.0, 0.0));
        assert_eq!(f.fourier(3.0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(f.fourier(-4.0, 0), Complex64::new(0.0, 0.0));
        // Midpoint of each transition sits at exactly 1/2 by symmetry.
        assert!((f.fourier(2.0, 0).re - 0.5).abs() < 1e-14);
        assert!((f.fourier(-1.0, 0).re - 0.5).abs() < 1e-14);
        // Derivatives vanish on the plateau and match finite differences in
        // the transition band.
        assert_eq!(f.fourier(1.0, 1), Complex64::new(0.0, 0.0));
        let s = 1.9;
        let h = 1e-6;
        let fd = (f.fourier(s + h, 0).re - f.fourier(s - h, 0).re) / (2.0 * h);
        assert!((fd - f.fourier(s, 1).re).abs() < 1e-6);
    }

    #[test]
    fn bump_time_values_match_multiprecision_oracle() {
        let f = TestFunction::bump(0.5, 1.0, 2.0, 3).unwrap();
        let cases = [
            (0.0, Complex64::new(0.477464829275686, 0.0)),
            (0.3, Complex64::new(0.455760353158228, 0.06888144035689436)),
            (1.0, Complex64::new(0.2747953176244484, 0.1501213662156514)),
            (5.0, Complex64::new(-0.03340901724841368, 0.02495728081339601)),
            (12.5, Complex64::new(-1.123566049930312e-4, 3.729957774386049e-6)),
        ];
        for (t, want) in cases {
            let got = f.evaluate(t);
            assert!(
                (got - want).norm() < 1e-10,
                "f({t}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn bump_series_and_quadrature_branches_agree() {
        let Repr::Bump(b) = &TestFunction::bump(-1.2, 0.7, 1.9, 4).unwrap().repr else {
            unreachable!()
        };
        for t in [1.0, 1.5, 2.0] {
            let t = t * b.t_switch;
            let series = b.eval_series(t);
            let quad = b.eval_quadrature(t);
            assert!(
                (series - quad).norm() < 1e-10,
                "t={t}: series {series} vs quadrature {quad}"
            );
        }
    }

    #[test]
    fn bump_decay_constants_bound_observed_values() {
        let f = TestFunction::bump(0.5, 1.0, 2.0, 3).unwrap();
        let Repr::Bump(b) = &f.repr else { unreachable!() };
        for t in [2.0, 5.0, 12.5, 40.0] {
            let v = f.evaluate(t).norm();
            for (k, kk) in b.decay.iter().enumerate() {
                assert!(
                    v <= kk / t.powi(k as i32) * (1.0 + 1e-9),
                    "t={t}, k={k}: {v} > {kk}/t^k"
                );
            }
        }
    }

    #[test]
    fn bump_weighted_norm_is_finite_and_has_small_tail() {
        let f = TestFunction::bump(0.0, 1.0, 2.0, 6).unwrap();
        let n = f
            .weighted_l1_norm(&Weight::one_plus_power(0.7).unwrap(), 1e-6)
            .unwrap();
        assert!(n.value > 0.0 && n.value.is_finite());
        assert!(n.tail_bound <= 1e-6 * 1.01, "tail {}", n.tail_bound);
    }

    #[test]
    fn interpolating_family_hits_kronecker_pattern() {
        let lambdas = [-1.0, 0.3, 2.2];
        let family = interpolating_family(&lambdas, 1.5).unwrap();
        for (m, f) in family.iter().enumerate() {
            for (n, &lam) in lambdas.iter().enumerate() {
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((f.fourier(-lam, 0).re - want).abs() < 1e-10);
                assert!(f.fourier(-lam, 0).im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn interpolating_family_rejects_clustered_nodes() {
        let err = interpolating_family(&[0.0, 1e-4], 1.0).unwrap_err();
        assert!(matches!(err, BeurlingError::KernelNearSingular { .. }));
    }

    #[test]
    fn ideal_membership_detects_flat_transforms() {
        // A bump centered at 3 with outer radius 1 is flat at s = 0.
        let f = TestFunction::bump(3.0, 0.5, 1.0, 4).unwrap();
        let inside = ideal_membership(&f, &[-3.0], 1.7, 1e-12);
        assert!(!inside.member, "transform is 1 near s = 3 = -(-3)");
        let outside = ideal_membership(&f, &[0.0, 1.0], 1.7, 1e-12);
        assert!(outside.member, "max witness {}", outside.max_abs);
        assert_eq!(outside.witnesses.len(), 4);
    }

    #[test]
    fn convolution_transforms_to_product() {
        let f = TestFunction::modulated_gaussian(1.0, 0.4).unwrap();
        let g = TestFunction::gaussian_poly(vec![atom(0.7, 0, 0.7, -0.2)]).unwrap();
        let defect = convolve_check(&f, &g, &[-2.0, 0.0, 1.0, 3.0]).unwrap();
        assert!(defect < 1e-8, "defect {defect}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn transform_derivative_consistent_for_random_atoms(
            coeff in -2.0f64..2.0,
            power in 0u32..4,
            sigma in 0.5f64..2.0,
            theta in -2.0f64..2.0,
            s in -3.0f64..3.0,
        ) {
            prop_assume!(coeff.abs() > 1e-3);
            let f = TestFunction::gaussian_poly(vec![atom(coeff, power, sigma, theta)]).unwrap();
            let h = 1e-5;
            let fd = (f.fourier(s + h, 0) - f.fourier(s - h, 0)) / (2.0 * h);
            let exact = f.fourier(s, 1);
            prop_assert!((fd - exact).norm() < 1e-4 * (1.0 + exact.norm()));
        }

        #[test]
        fn bump_transform_is_cp_at_the_knots(
            center in -2.0f64..2.0,
            ir in 0.4f64..1.2,
            width in 0.4f64..1.5,
            p in 2u32..6,
        ) {
            let f = TestFunction::bump(center, ir, ir + width, p).unwrap();
            let h = 1e-4;
            // Values straddling each knot differ by at most the modulus of
            // continuity 2h * sup |fhat^{(order+1)}|, estimated on a grid.
            let step = smoothstep_coeffs(p);
            let sup_deriv = |order: usize| {
                (0..=400)
                    .map(|i| poly_deriv_eval(&step, order, i as f64 / 400.0).abs())
                    .fold(0.0, f64::max)
                    * 1.5
                    / width.powi(order as i32)
            };
            for knot in [center - ir - width, center - ir, center + ir, center + ir + width] {
                for order in 0..p as usize {
                    let left = f.fourier(knot - h, order).re;
                    let right = f.fourier(knot + h, order).re;
                    let bound = 2.0 * h * sup_deriv(order + 1) + 1e-9;
                    prop_assert!(
                        (left - right).abs() <= bound,
                        "knot {knot} order {order}: {left} vs {right} (bound {bound})"
                    );
                }
            }
        }
    }
}
