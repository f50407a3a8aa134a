//! Matrix exponential by scaling and squaring with diagonal Pade kernels.
//!
//! Algorithm from: Higham, The Scaling and Squaring Method for the Matrix
//! Exponential Revisited. Works entrywise on complex matrices and needs no
//! diagonalization, so defective inputs (Hamiltonians at an exceptional
//! point) require no special-casing.

use num_complex::Complex64;

use super::{lu_factor, ComplexMatrix};
use crate::error::{Error, Result};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068;
const THETA_13: f64 = 5.371920351148152;

/// Matrix exponential `e^a`.
///
/// Accurate to relative error well below 1e-12 for `||a|| <= 100`; errors on
/// non-square input and when the result overflows double precision.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let norm = a.norm_one();
    if !norm.is_finite() {
        return Err(Error::NonFinite);
    }

    let (u, v, squarings) = pade_uv(a, norm)?;

    // Pade approximant is (V + U) / (V - U).
    let numer = v.add(&u)?;
    let denom = v.sub(&u)?;
    let lu = lu_factor(&denom)?;
    if lu.min_pivot() <= f64::MIN_POSITIVE {
        return Err(Error::Singular {
            estimate: lu.condition_proxy(),
        });
    }
    let mut result = lu.solve(&numer)?;

    for _ in 0..squarings {
        result = result.matmul(&result)?;
    }

    if !result.is_finite() {
        return Err(Error::ExpmOverflow { norm });
    }
    Ok(result)
}

fn pade_uv(a: &ComplexMatrix, norm: f64) -> Result<(ComplexMatrix, ComplexMatrix, u32)> {
    if norm < THETA_3 {
        let (u, v) = pade_low(a, &[120.0, 60.0, 12.0, 1.0])?;
        Ok((u, v, 0))
    } else if norm < THETA_5 {
        let (u, v) = pade_low(a, &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0])?;
        Ok((u, v, 0))
    } else if norm < THETA_7 {
        let (u, v) = pade_low(
            a,
            &[
                17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
            ],
        )?;
        Ok((u, v, 0))
    } else if norm < THETA_9 {
        let (u, v) = pade_low(
            a,
            &[
                17643225600.0,
                8821612800.0,
                2075673600.0,
                302702400.0,
                30270240.0,
                2162160.0,
                110880.0,
                3960.0,
                90.0,
                1.0,
            ],
        )?;
        Ok((u, v, 0))
    } else {
        let squarings = ((norm / THETA_13).log2().ceil() as i32).max(0) as u32;
        let scaled = a.scale(Complex64::new(2f64.powi(-(squarings as i32)), 0.0));
        let (u, v) = pade13(&scaled)?;
        Ok((u, v, squarings))
    }
}

/// Pade orders 3..9 share one evaluation scheme: both polynomials are built
/// from even powers of `a`, with `u` carrying the odd part.
fn pade_low(a: &ComplexMatrix, b: &[f64]) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(a)?;

    let mut even_powers = vec![id.clone(), a2.clone()]; // a^0, a^2, a^4, ...
    let half = b.len() / 2; // number of coefficient pairs
    while even_powers.len() < half {
        let next = even_powers.last().unwrap().matmul(&a2)?;
        even_powers.push(next);
    }

    let mut u_poly = ComplexMatrix::zeros(n, n);
    let mut v = ComplexMatrix::zeros(n, n);
    for k in 0..half {
        let pw = &even_powers[k];
        u_poly = u_poly.add(&pw.scale(Complex64::new(b[2 * k + 1], 0.0)))?;
        v = v.add(&pw.scale(Complex64::new(b[2 * k], 0.0)))?;
    }
    let u = a.matmul(&u_poly)?;
    Ok((u, v))
}

fn pade13(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let re = |x: f64| Complex64::new(x, 0.0);

    let u_high = a6
        .matmul(
            &a6.scale(re(B[13]))
                .add(&a4.scale(re(B[11])))?
                .add(&a2.scale(re(B[9])))?,
        )?
        .add(&a6.scale(re(B[7])))?
        .add(&a4.scale(re(B[5])))?
        .add(&a2.scale(re(B[3])))?
        .add(&id.scale(re(B[1])))?;
    let u = a.matmul(&u_high)?;

    let v = a6
        .matmul(
            &a6.scale(re(B[12]))
                .add(&a4.scale(re(B[10])))?
                .add(&a2.scale(re(B[8])))?,
        )?
        .add(&a6.scale(re(B[6])))?
        .add(&a4.scale(re(B[4])))?
        .add(&a2.scale(re(B[2])))?
        .add(&id.scale(re(B[0])))?;
    Ok((u, v))
}
