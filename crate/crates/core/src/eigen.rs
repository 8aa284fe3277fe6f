//! Cyclic Jacobi eigensolver for Hermitian matrices, plus the operator norm
//! derived from it.
//!
//! Jacobi was chosen over tridiagonalization-based solvers because it is
//! simple enough to certify: each rotation strictly moves off-diagonal mass
//! onto the diagonal, the leftover off-diagonal Frobenius mass is an explicit
//! bound on the eigenvalue error (Weyl's inequality), and that residual is
//! reported to callers so norm brackets can absorb it.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tolerances::{HERMITICITY_BOUND, JACOBI_RELATIVE_TARGET, JACOBI_SWEEP_BUDGET};

/// Eigenvalues of a Hermitian matrix together with the certified residual.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius mass left when the solver stopped. Every
    /// reported eigenvalue is within `residual` of a true eigenvalue.
    pub residual: f64,
}

/// Computes the spectrum of a Hermitian matrix.
///
/// The input must be square and Hermitian up to a relative Frobenius defect
/// of `1e-12`; it is symmetrized before iteration so the arithmetic sees an
/// exactly Hermitian matrix. `tol` is the relative off-diagonal target the
/// sweeps drive toward (values at or below `1e-13` hit the solver's floor).
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<HermitianSpectrum> {
    a.require_square("hermitian_eigenvalues")?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::DomainError {
            context: String::from("tolerance must be a positive finite number"),
        });
    }
    let fro = a.frobenius_norm();
    let defect = a.hermitian_defect()?;
    if defect > HERMITICITY_BOUND * fro.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian {
            defect: defect / fro.max(f64::MIN_POSITIVE),
        });
    }
    let n = a.rows();
    let mut h = symmetrized_buffer(a);
    let target = tol.max(JACOBI_RELATIVE_TARGET) * fro;
    let (residual, _sweeps) = jacobi_hermitian(&mut h, n, None, target)?;
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(HermitianSpectrum {
        eigenvalues,
        residual,
    })
}

/// Spectral norm `‖A‖ = σ_max(A)`, computed as the square root of the top
/// eigenvalue of the smaller of `A A*` and `A* A`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    operator_norm_bracketed(a).map(|(value, _, _)| value)
}

/// Spectral norm with a certified bracket `(value, lower, upper)` derived
/// from the eigensolver residual on the Gram matrix.
pub(crate) fn operator_norm_bracketed(a: &ComplexMatrix) -> Result<(f64, f64, f64)> {
    let gram = if a.rows() <= a.cols() {
        a.matmul(&a.dagger())?
    } else {
        a.dagger().matmul(a)?
    };
    let n = gram.rows();
    let mut h = symmetrized_buffer(&gram);
    let target = JACOBI_RELATIVE_TARGET * gram.frobenius_norm();
    let (residual, _sweeps) = jacobi_hermitian(&mut h, n, None, target)?;
    let lambda_max = (0..n).map(|i| h[i * n + i].re).fold(f64::NEG_INFINITY, f64::max);
    let value = lambda_max.max(0.0).sqrt();
    let lower = (lambda_max - residual).max(0.0).sqrt();
    let upper = (lambda_max + residual).max(0.0).sqrt();
    Ok((value, lower, upper))
}

/// Extreme eigenvalues `(λ_min, λ_max, residual)` of a matrix assumed
/// exactly Hermitian by construction (no defect check, symmetrized anyway).
pub(crate) fn lambda_extremes(a: &ComplexMatrix) -> Result<(f64, f64, f64)> {
    a.require_square("lambda_extremes")?;
    let n = a.rows();
    let mut h = symmetrized_buffer(a);
    let target = JACOBI_RELATIVE_TARGET * a.frobenius_norm();
    let (residual, _sweeps) = jacobi_hermitian(&mut h, n, None, target)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let v = h[i * n + i].re;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi, residual))
}

/// Largest eigenvalue of an exactly Hermitian matrix already laid out as a
/// row-major buffer. The buffer is destroyed. Returns `(λ_max, residual)`.
pub(crate) fn lambda_max_in_place(
    h: &mut [Complex64],
    n: usize,
    target_off: f64,
) -> Result<(f64, f64)> {
    let (residual, _sweeps) = jacobi_hermitian(h, n, None, target_off)?;
    let lambda = (0..n).map(|i| h[i * n + i].re).fold(f64::NEG_INFINITY, f64::max);
    Ok((lambda, residual))
}

/// Top eigenpair of an exactly Hermitian matrix: `(λ_max, unit eigenvector,
/// residual)`.
pub(crate) fn top_eigenpair(a: &ComplexMatrix) -> Result<(f64, Vec<Complex64>, f64)> {
    a.require_square("top_eigenpair")?;
    let n = a.rows();
    let mut h = symmetrized_buffer(a);
    let mut vecs = identity_buffer(n);
    let target = JACOBI_RELATIVE_TARGET * a.frobenius_norm();
    let (residual, _sweeps) = jacobi_hermitian(&mut h, n, Some(&mut vecs), target)?;
    let mut best = 0;
    for i in 1..n {
        if h[i * n + i].re > h[best * n + best].re {
            best = i;
        }
    }
    let column: Vec<Complex64> = (0..n).map(|i| vecs[i * n + best]).collect();
    Ok((h[best * n + best].re, column, residual))
}

/// Full eigensystem of an exactly Hermitian matrix: eigenvalues in the
/// solver's diagonal order, the unitary whose columns are the matching
/// eigenvectors, and the residual.
pub(crate) fn hermitian_eigensystem(
    a: &ComplexMatrix,
) -> Result<(Vec<f64>, ComplexMatrix, f64)> {
    a.require_square("hermitian_eigensystem")?;
    let n = a.rows();
    let mut h = symmetrized_buffer(a);
    let mut vecs = identity_buffer(n);
    let target = JACOBI_RELATIVE_TARGET * a.frobenius_norm();
    let (residual, _sweeps) = jacobi_hermitian(&mut h, n, Some(&mut vecs), target)?;
    let eigenvalues: Vec<f64> = (0..n).map(|i| h[i * n + i].re).collect();
    let unitary = ComplexMatrix::new(n, n, vecs)?;
    Ok((eigenvalues, unitary, residual))
}

pub(crate) fn symmetrized_buffer(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.rows();
    let mut h = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let v = (a.at(i, j) + a.at(j, i).conj()) * 0.5;
            if i == j {
                h[i * n + i] = Complex64::new(v.re, 0.0);
            } else {
                h[i * n + j] = v;
                h[j * n + i] = v.conj();
            }
        }
    }
    h
}

pub(crate) fn identity_buffer(n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    v
}

fn off_diagonal_mass(h: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let z = h[i * n + j];
            sum += 2.0 * (z.re * z.re + z.im * z.im);
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi sweeps on an exactly Hermitian row-major buffer.
///
/// When `vecs` is given it must hold the identity (or any unitary to
/// accumulate onto); on return its columns are the eigenvectors matching the
/// diagonal of `h`. Returns `(residual, sweeps)` once the off-diagonal
/// Frobenius mass drops to `target_off`, or [`Error::NoConvergence`] if the
/// sweep budget runs out first.
pub(crate) fn jacobi_hermitian(
    h: &mut [Complex64],
    n: usize,
    mut vecs: Option<&mut [Complex64]>,
    target_off: f64,
) -> Result<(f64, usize)> {
    debug_assert_eq!(h.len(), n * n);
    if n == 1 {
        h[0] = Complex64::new(h[0].re, 0.0);
        return Ok((0.0, 0));
    }
    let zero = Complex64::new(0.0, 0.0);
    // Rotations with pivots this small cannot matter at the target accuracy.
    let pivot_floor = (target_off.max(f64::MIN_POSITIVE)) / (2.0 * n as f64 * n as f64);
    for sweep in 0..JACOBI_SWEEP_BUDGET {
        let off = off_diagonal_mass(h, n);
        if off <= target_off {
            return Ok((off, sweep));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h[p * n + q];
                let r = hpq.norm();
                if r <= pivot_floor {
                    continue;
                }
                let phase = hpq / r;
                let app = h[p * n + p].re;
                let aqq = h[q * n + q].re;
                let tau = (app - aqq) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    -1.0 / (-tau + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_conj_phase = phase.conj() * s;
                let s_phase = phase * s;
                // Column update: H <- H V with V the rotation in the (p, q)
                // plane, V[p][p] = V[q][q] = c, V[q][p] = s e^{-iφ},
                // V[p][q] = -s e^{iφ}.
                for i in 0..n {
                    let hip = h[i * n + p];
                    let hiq = h[i * n + q];
                    h[i * n + p] = hip * c + hiq * s_conj_phase;
                    h[i * n + q] = hiq * c - hip * s_phase;
                }
                // Row update: H <- V* H.
                for j in 0..n {
                    let hpj = h[p * n + j];
                    let hqj = h[q * n + j];
                    h[p * n + j] = hpj * c + hqj * s_phase;
                    h[q * n + j] = hqj * c - hpj * s_conj_phase;
                }
                h[p * n + q] = zero;
                h[q * n + p] = zero;
                h[p * n + p] = Complex64::new(h[p * n + p].re, 0.0);
                h[q * n + q] = Complex64::new(h[q * n + q].re, 0.0);
                if let Some(v) = vecs.as_deref_mut() {
                    for i in 0..n {
                        let vip = v[i * n + p];
                        let viq = v[i * n + q];
                        v[i * n + p] = vip * c + viq * s_conj_phase;
                        v[i * n + q] = viq * c - vip * s_phase;
                    }
                }
            }
        }
    }
    let residual = off_diagonal_mass(h, n);
    if residual <= target_off {
        return Ok((residual, JACOBI_SWEEP_BUDGET));
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_SWEEP_BUDGET,
        residual,
    })
}
