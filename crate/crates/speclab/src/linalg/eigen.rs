//! Eigenvalues of a dense complex matrix: Householder reduction to upper
//! Hessenberg form followed by an implicitly shifted QR iteration with
//! Wilkinson shifts and deflation.
//!
//! This is the workhorse behind spectral decompositions; only eigenvalues
//! are produced here, projections are reconstructed polynomially in
//! `spectral.rs`.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Computes all eigenvalues of `m`, in no particular order.
///
/// Exactly triangular inputs deflate immediately and come back with their
/// diagonal untouched; general matrices converge to machine precision for
/// well-conditioned spectra. The iteration applies an exceptional shift
/// every twelve stalled sweeps and reports [`LinalgError::EigenStall`] if a
/// block refuses to deflate within the overall budget.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>, LinalgError> {
    let n = m.dim();
    if n == 1 {
        return Ok(vec![m.get(0, 0)]);
    }
    let mut h = hessenberg(m);
    let norm = h.one_norm().max(f64::MIN_POSITIVE);
    let mut eigs = vec![ZERO; n];
    let mut hi = n - 1;
    let mut stalled = 0usize;
    let mut budget = 120 * n;

    loop {
        // Deflate converged 1×1 and 2×2 trailing blocks.
        let lo = block_start(&mut h, hi, norm);
        if lo == hi {
            eigs[hi] = h.get(hi, hi);
            stalled = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo + 1 == hi {
            let (a, b) = eig2(h.get(lo, lo), h.get(lo, hi), h.get(hi, lo), h.get(hi, hi));
            eigs[lo] = a;
            eigs[hi] = b;
            stalled = 0;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            continue;
        }

        if budget == 0 {
            return Err(LinalgError::EigenStall { iterations: 120 * n });
        }
        budget -= 1;
        stalled += 1;
        let sigma = if stalled % 12 == 0 {
            // Exceptional shift: nudge by the local subdiagonal scale.
            h.get(hi, hi) + Complex64::new(h.get(hi, hi - 1).norm() + h.get(hi - 1, hi - 2).norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_sweep(&mut h, lo, hi, sigma);
    }
    Ok(eigs)
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let mut h = m.clone();
    let mut v = vec![ZERO; n];
    for col in 0..n.saturating_sub(2) {
        let beta: f64 = (col + 1..n).map(|i| h.get(i, col).norm_sqr()).sum::<f64>().sqrt();
        if beta == 0.0 {
            continue;
        }
        let x0 = h.get(col + 1, col);
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * beta;
        for item in v.iter_mut().take(n).skip(col + 1) {
            *item = ZERO;
        }
        for i in col + 1..n {
            v[i] = h.get(i, col);
        }
        v[col + 1] -= alpha;
        let vnorm_sq: f64 = v[col + 1..n].iter().map(|e| e.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm_sq;
        // Left: H ← (I − τvv*)H.
        for j in col..n {
            let mut s = ZERO;
            for i in col + 1..n {
                s += v[i].conj() * h.get(i, j);
            }
            s *= tau;
            for i in col + 1..n {
                let val = h.get(i, j) - s * v[i];
                h.set(i, j, val);
            }
        }
        // Right: H ← H(I − τvv*).
        for i in 0..n {
            let mut s = ZERO;
            for j in col + 1..n {
                s += h.get(i, j) * v[j];
            }
            s *= tau;
            for j in col + 1..n {
                let val = h.get(i, j) - s * v[j].conj();
                h.set(i, j, val);
            }
        }
        h.set(col + 1, col, alpha);
        for i in col + 2..n {
            h.set(i, col, ZERO);
        }
    }
    h
}

/// Finds the start of the trailing unreduced block ending at `hi`,
/// zeroing negligible subdiagonals along the way.
fn block_start(h: &mut ComplexMatrix, hi: usize, norm: f64) -> usize {
    let mut lo = hi;
    while lo > 0 {
        let sub = h.get(lo, lo - 1).norm();
        let local = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
        let thresh = f64::EPSILON * if local > 0.0 { local } else { norm };
        if sub <= thresh {
            h.set(lo, lo - 1, ZERO);
            break;
        }
        lo -= 1;
    }
    lo
}

/// Eigenvalues of a complex 2×2 block.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mid = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    (mid + disc, mid - disc)
}

/// Wilkinson shift: the eigenvalue of the trailing 2×2 closest to the
/// trailing diagonal entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let (a, b) = eig2(
        h.get(hi - 1, hi - 1),
        h.get(hi - 1, hi),
        h.get(hi, hi - 1),
        h.get(hi, hi),
    );
    let target = h.get(hi, hi);
    if (a - target).norm() <= (b - target).norm() {
        a
    } else {
        b
    }
}

/// One implicit single-shift QR sweep on the block `[lo..=hi]`.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, sigma: Complex64) {
    let n = h.dim();
    let mut x = h.get(lo, lo) - sigma;
    let mut y = h.get(lo + 1, lo);
    for k in lo..hi {
        let (c, s) = givens(x, y);
        let first_col = k.saturating_sub(1).max(lo);
        // Rows k, k+1 from the left.
        for j in first_col..n {
            let p = h.get(k, j);
            let q = h.get(k + 1, j);
            h.set(k, j, c * p + s * q);
            h.set(k + 1, j, -s.conj() * p + c * q);
        }
        // Columns k, k+1 from the right (adjoint rotation).
        let last_row = (k + 2).min(hi);
        for i in 0..=last_row {
            let p = h.get(i, k);
            let q = h.get(i, k + 1);
            h.set(i, k, c * p + s.conj() * q);
            h.set(i, k + 1, -s * p + c * q);
        }
        if k + 1 < hi {
            x = h.get(k + 1, k);
            y = h.get(k + 2, k);
        }
    }
}

/// Complex Givens rotation: returns real `c ≥ 0` and complex `s` with
/// `c² + |s|² = 1` such that `[c s; -s̄ c]·(a, b)ᵀ = (r, 0)ᵀ`.
fn givens(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (Complex64::new(1.0, 0.0), ZERO);
    }
    if na == 0.0 {
        return (ZERO, b.conj() / nb);
    }
    let h = (na * na + nb * nb).sqrt();
    let c = Complex64::new(na / h, 0.0);
    let s = (a / na) * b.conj() / h;
    (c, s)
}
