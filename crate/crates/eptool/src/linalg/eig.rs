//! Eigendecompositions for small dense complex matrices.
//!
//! Hermitian input goes through a cyclic complex Jacobi sweep; general input
//! through Householder Hessenberg reduction followed by shifted QR iteration
//! to a Schur form, with eigenvectors recovered by back-substitution. Both
//! paths are plenty at dimension <= 8.

use num_complex::Complex64;

use super::{c64, inverse, ComplexMatrix, C_ONE, C_ZERO};
use crate::error::{Error, Result};

/// Relative deflation / convergence tolerance for the QR iteration.
const QR_TOL: f64 = 1e-12;
const QR_MAX_ITER: usize = 10_000;
/// Relative Hermiticity gate for `eig_hermitian`.
const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues with matching unit-norm eigenvector columns.
///
/// `condition_estimate` is the Frobenius condition number of the eigenvector
/// matrix: near 1 for (close to) normal matrices, large when eigenvectors
/// start to coalesce, infinite when the matrix is defective.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: ComplexMatrix,
    pub condition_estimate: f64,
}

impl EigenDecomposition {
    /// Largest residual `||A v_k - lambda_k v_k||` over all pairs.
    pub fn max_residual(&self, a: &ComplexMatrix) -> f64 {
        let n = self.eigenvalues.len();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v: Vec<Complex64> = (0..n).map(|i| self.eigenvectors.get(i, k)).collect();
            let av = a.matvec(&v).expect("dimension agreement");
            let lam = self.eigenvalues[k];
            let res: f64 = av
                .iter()
                .zip(v.iter())
                .map(|(&x, &y)| (x - lam * y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(res);
        }
        worst
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// ascending with orthonormal eigenvectors.
///
/// The input is symmetrized as `(A + A^dagger)/2` before the solve so that
/// rounding drift in e.g. density-matrix differences does not matter, but a
/// deviation beyond `1e-10 * ||A||` is an error.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let norm = a.norm_fro();
    let deviation = a.hermitian_deviation();
    let tolerance = HERMITIAN_TOL * norm.max(f64::MIN_POSITIVE);
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }

    let n = a.rows();
    // symmetrize
    let mut s = a.add(&a.adjoint())?.scale(c64(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let off = |m: &ComplexMatrix| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += m.get(i, j).norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let stop = 1e-15 * norm.max(f64::MIN_POSITIVE);
    let mut converged = off(&s) <= stop;
    for _sweep in 0..60 {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut s, &mut v, p, q);
            }
        }
        converged = off(&s) <= stop;
    }
    if !converged {
        return Err(Error::EigenConvergence {
            context: format!("{n}x{n} Hermitian Jacobi sweep"),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| s.get(i, i).re).collect();
    order.sort_by(|&i, &j| eigs[i].total_cmp(&eigs[j]));

    let eigenvalues: Vec<Complex64> = order.iter().map(|&i| c64(eigs[i], 0.0)).collect();
    let eigenvectors = permute_and_fix_columns(&v, &order);

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        condition_estimate: 1.0,
    })
}

/// One complex Jacobi rotation zeroing the (p, q) off-diagonal element.
fn jacobi_rotate(s: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = s.get(p, q);
    let beta_mag = beta.norm();
    if beta_mag == 0.0 {
        return;
    }
    let alpha = s.get(p, p).re;
    let delta = s.get(q, q).re;
    let w = beta / beta_mag;

    let tau = (alpha - delta) / (2.0 * beta_mag);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let cr = 1.0 / (1.0 + t * t).sqrt();
    let sigma = w * (t * cr);
    let c = c64(cr, 0.0);

    let n = s.rows();
    // rows: (p, q) <- (c*p - sigma*q, conj(sigma)*p + c*q)
    for j in 0..n {
        let sp = s.get(p, j);
        let sq = s.get(q, j);
        s.set(p, j, c * sp - sigma * sq);
        s.set(q, j, sigma.conj() * sp + c * sq);
    }
    // cols: (p, q) <- (c*p - conj(sigma)*q, sigma*p + c*q)
    for i in 0..n {
        let sp = s.get(i, p);
        let sq = s.get(i, q);
        s.set(i, p, c * sp - sigma.conj() * sq);
        s.set(i, q, sigma * sp + c * sq);
        let vp = v.get(i, p);
        let vq = v.get(i, q);
        v.set(i, p, c * vp - sigma.conj() * vq);
        v.set(i, q, sigma * vp + c * vq);
    }
}

/// Eigendecomposition of a general complex matrix of dimension <= 8.
///
/// Near-defective inputs are still returned, with the coalescence visible in
/// `condition_estimate`; only a failure of the QR iteration itself is an
/// error.
pub fn eig_general(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n > 8 {
        return Err(Error::InvalidParameter(format!(
            "general eigensolver is sized for dimension <= 8, got {n}"
        )));
    }
    let norm = a.norm_fro();
    if n == 1 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![a.get(0, 0)],
            eigenvectors: ComplexMatrix::identity(1),
            condition_estimate: 1.0,
        });
    }

    let (mut h, mut q) = hessenberg(a);
    schur_qr(&mut h, &mut q, norm)?;

    // eigenvectors of the triangular factor by back-substitution
    let smin = (f64::EPSILON * norm).max(1e-300);
    let mut vectors = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = h.get(k, k);
        let mut y = vec![C_ZERO; n];
        y[k] = C_ONE;
        for i in (0..k).rev() {
            let mut num = C_ZERO;
            for j in (i + 1)..=k {
                num += h.get(i, j) * y[j];
            }
            let mut den = h.get(i, i) - lambda;
            if den.norm() < smin {
                den = c64(smin, 0.0);
            }
            y[i] = -num / den;
        }
        let v = q.matvec(&y)?;
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            vectors.set(i, k, v[i] / vn);
        }
    }

    // Deterministic ordering: ascending (re, im). Real/imaginary parts that
    // are pure rounding noise are snapped to a coarse grid first so that
    // conjugate pairs always order by the meaningful component.
    let eigs: Vec<Complex64> = (0..n).map(|i| h.get(i, i)).collect();
    let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let grid = (1e-9 * scale).max(1e-300);
    let quant = |x: f64| (x / grid).round() as i64;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (quant(eigs[i].re), quant(eigs[i].im), i));

    let eigenvalues: Vec<Complex64> = order.iter().map(|&i| eigs[i]).collect();
    let eigenvectors = permute_and_fix_columns(&vectors, &order);

    let condition_estimate = match inverse(&eigenvectors) {
        Ok(inv) => eigenvectors.norm_fro() * inv.norm_fro(),
        Err(_) => f64::INFINITY,
    };

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        condition_estimate,
    })
}

/// Reduce to upper Hessenberg form by Householder reflections; returns
/// `(H, Q)` with `A = Q H Q^dagger`.
fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);

    for k in 0..n.saturating_sub(2) {
        let tail = n - k - 1;
        let mut x = vec![C_ZERO; tail];
        for i in 0..tail {
            x[i] = h.get(k + 1 + i, k);
        }
        let norm_x: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C_ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * norm_x;
        let mut v = x;
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;

        // left: rows k+1.., all columns
        for j in 0..n {
            let mut s = C_ZERO;
            for i in 0..tail {
                s += v[i].conj() * h.get(k + 1 + i, j);
            }
            s *= beta;
            for i in 0..tail {
                let val = h.get(k + 1 + i, j) - v[i] * s;
                h.set(k + 1 + i, j, val);
            }
        }
        // right: columns k+1.., all rows — and accumulate Q the same way
        for i in 0..n {
            let mut s = C_ZERO;
            for j in 0..tail {
                s += h.get(i, k + 1 + j) * v[j];
            }
            s *= beta;
            for j in 0..tail {
                let val = h.get(i, k + 1 + j) - s * v[j].conj();
                h.set(i, k + 1 + j, val);
            }

            let mut sq = C_ZERO;
            for j in 0..tail {
                sq += q.get(i, k + 1 + j) * v[j];
            }
            sq *= beta;
            for j in 0..tail {
                let val = q.get(i, k + 1 + j) - sq * v[j].conj();
                q.set(i, k + 1 + j, val);
            }
        }
        for i in (k + 2)..n {
            h.set(i, k, C_ZERO);
        }
        h.set(k + 1, k, alpha);
    }
    (h, q)
}

/// Shifted single-shift QR iteration driving a Hessenberg matrix to upper
/// triangular (Schur) form; rotations are accumulated into `q`.
fn schur_qr(h: &mut ComplexMatrix, q: &mut ComplexMatrix, norm: f64) -> Result<()> {
    let n = h.rows();
    let mut hi = n - 1;
    let mut total_iters = 0usize;
    let mut stagnation = 0usize;

    loop {
        // deflate converged subdiagonals from the bottom
        while hi > 0 {
            let sub = h.get(hi, hi - 1).norm();
            let local = h.get(hi - 1, hi - 1).norm() + h.get(hi, hi).norm();
            let tol = QR_TOL
                * if local > 0.0 {
                    local
                } else {
                    norm.max(f64::MIN_POSITIVE)
                };
            if sub <= tol {
                h.set(hi, hi - 1, C_ZERO);
                hi -= 1;
                stagnation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            return Ok(());
        }

        // active block [lo..=hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h.get(lo, lo - 1).norm();
            let local = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            let tol = QR_TOL
                * if local > 0.0 {
                    local
                } else {
                    norm.max(f64::MIN_POSITIVE)
                };
            if sub <= tol {
                h.set(lo, lo - 1, C_ZERO);
                break;
            }
            lo -= 1;
        }

        total_iters += 1;
        stagnation += 1;
        if total_iters > QR_MAX_ITER {
            return Err(Error::EigenConvergence {
                context: format!("{n}x{n} QR iteration ({QR_MAX_ITER} steps)"),
            });
        }

        let mu = if stagnation % 20 == 0 {
            // exceptional shift to break rare cycling
            h.get(hi, hi) + c64(0.75 * h.get(hi, hi - 1).norm(), 0.0)
        } else {
            wilkinson_shift(h, hi)
        };

        // one implicit single-shift sweep over the active block
        let mut x = h.get(lo, lo) - mu;
        let mut y = h.get(lo + 1, lo);
        for k in lo..hi {
            let (c, s) = givens(x, y);
            rotate_rows(h, k, k + 1, c, s);
            rotate_cols(h, k, k + 1, c, s);
            rotate_cols(q, k, k + 1, c, s);
            if k + 1 < hi {
                x = h.get(k + 1, k);
                y = h.get(k + 2, k);
            }
        }
    }
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h.get(hi - 1, hi - 1);
    let b = h.get(hi - 1, hi);
    let c = h.get(hi, hi - 1);
    let d = h.get(hi, hi);
    let m = (a + d) * c64(0.5, 0.0);
    let disc = (m * m - (a * d - b * c)).sqrt();
    let e1 = m + disc;
    let e2 = m - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}

/// Rotation `G = [[c, s], [-conj(s), c]]` (c real) with `G [f, g]^T = [r, 0]^T`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, C_ZERO);
    }
    let fn_ = f.norm();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let r = (fn_ * fn_ + gn * gn).sqrt();
    let c = fn_ / r;
    let s = (f / fn_) * g.conj() / r;
    (c, s)
}

fn rotate_rows(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: Complex64) {
    let n = m.cols();
    for col in 0..n {
        let a = m.get(i, col);
        let b = m.get(j, col);
        m.set(i, col, a * c + s * b);
        m.set(j, col, -s.conj() * a + b * c);
    }
}

/// Right-multiplication by `G^dagger`, the column counterpart of
/// `rotate_rows` in a similarity transform.
fn rotate_cols(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: Complex64) {
    let n = m.rows();
    for row in 0..n {
        let a = m.get(row, i);
        let b = m.get(row, j);
        m.set(row, i, a * c + s.conj() * b);
        m.set(row, j, -s * a + b * c);
    }
}

/// Reorder columns by `order` and fix each column's phase so its
/// largest-magnitude component is real positive.
fn permute_and_fix_columns(v: &ComplexMatrix, order: &[usize]) -> ComplexMatrix {
    let n = v.rows();
    let mut out = ComplexMatrix::zeros(n, order.len());
    for (dst, &src) in order.iter().enumerate() {
        let mut best = 0usize;
        let mut best_mag = 0.0;
        for i in 0..n {
            let mag = v.get(i, src).norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        let pivot = v.get(best, src);
        let phase = if best_mag == 0.0 {
            C_ONE
        } else {
            pivot.conj() / best_mag
        };
        for i in 0..n {
            out.set(i, dst, v.get(i, src) * phase);
        }
    }
    out
}
