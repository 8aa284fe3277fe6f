//! The affiliated norm family: `W_min`, the factorization norm `W_max`, and
//! the one-parameter interpolation `W_t` driven by shift generators.
//!
//! `W_min` is half the amplified operator norm. `W_max` is the infimum of
//! `‖a a* + b* b‖ / 2` over factorizations `x = a y b` with scalar matrices
//! `a`, `b` and `O(y) = 1`; the infimum may restrict to positive definite
//! `a`, `b` (polar phases can be absorbed into `y`), which is what the
//! search parametrizes: `a` and `b` run over exponentials of Hermitian
//! matrices, keeping every iterate invertible with condition number below
//! `1e10`. The scale split between the two factors is handled exactly inside
//! each objective evaluation by a one-dimensional convex minimization of
//! `λ_max(μ p² + μ^{-1} q²) / 2`, so the outer search only has to find the
//! shape of the factors, not their size. A convex block-positivity
//! construction supplies a deterministic warm start for that shape.
//!
//! Every reported upper bracket is the value of an explicit factorization
//! that is handed back to the caller; the lower bracket is the theorem
//! `W_max ≥ O / 2` (with equality of `W_max` and `O` at level one).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::eigen::{
    hermitian_eigensystem, lambda_max_in_place, operator_norm_bracketed, symmetrized_buffer,
    top_eigenpair,
};
use crate::error::{Error, Result};
use crate::estimate::NormEstimate;
use crate::matrix::{Complex64, ComplexMatrix};
use crate::optim::{golden_section_min, restarted_minimum};
use crate::radius::numerical_radius;
use crate::space::{o_norm, realize, scalar_compress, ConcreteOperatorSpace, MatrixOverX};
use crate::tolerances::{EXPONENT_CLAMP, GENERATOR_NORM_SLACK, JACOBI_RELATIVE_TARGET};

/// Knobs for the randomized factorization searches.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Independent starts (the first is always the identity factorization).
    pub restarts: usize,
    /// Nelder-Mead iterations per start.
    pub iters: usize,
    /// Seed for the restart draws.
    pub seed: u64,
    /// Target accuracy; also the bracket width goal for inner radius calls.
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            iters: 500,
            seed: 0,
            tol: 1e-8,
        }
    }
}

impl SearchConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::DomainError {
                context: String::from("search tolerance must be a positive finite number"),
            });
        }
        if self.restarts == 0 {
            return Err(Error::DomainError {
                context: String::from("search needs at least one restart"),
            });
        }
        Ok(())
    }
}

/// An explicit factorization `x = left * middle * right` with
/// `O(middle) = 1`, witnessing an upper bound `‖left left* + right* right‖/2`
/// on `W_max(x)`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// Scalar left factor (`n x n`).
    pub left: ComplexMatrix,
    /// Middle element with amplified operator norm one.
    pub middle: MatrixOverX,
    /// Scalar right factor (`n x n`).
    pub right: ComplexMatrix,
}

impl Factorization {
    /// Frobenius distance between `x` and `left * middle * right`, relative
    /// to the Frobenius norm of `x`'s realization.
    pub fn reconstruction_defect(
        &self,
        space: &ConcreteOperatorSpace,
        x: &MatrixOverX,
    ) -> Result<f64> {
        let product = scalar_compress(&self.left, &self.middle, &self.right)?;
        let target = realize(space, x)?;
        let achieved = realize(space, &product)?;
        let scale = target.frobenius_norm().max(f64::MIN_POSITIVE);
        Ok(target.sub(&achieved)?.frobenius_norm() / scale)
    }

    /// The witnessed objective `‖left left* + right* right‖ / 2`.
    pub fn objective(&self) -> Result<f64> {
        let gram = self
            .left
            .matmul(&self.left.dagger())?
            .add(&self.right.dagger().matmul(&self.right)?)?;
        Ok(0.5 * operator_norm_bracketed(&gram)?.0)
    }
}

/// `W_min(x) = O(x) / 2`, the smallest norm in the affiliated family.
pub fn w_min(space: &ConcreteOperatorSpace, x: &MatrixOverX) -> Result<NormEstimate> {
    let o = o_norm(space, x)?;
    Ok(NormEstimate::bracketed(
        0.5 * o.value,
        0.5 * o.lower,
        0.5 * o.upper,
        String::from("half of the amplified operator norm"),
    ))
}

/// Positive factor `exp(H)` with spectrum clamped to `±EXPONENT_CLAMP`,
/// carried together with its exact-by-construction inverse and square.
pub(crate) struct PositiveFactor {
    pub(crate) matrix: ComplexMatrix,
    pub(crate) inverse: ComplexMatrix,
    pub(crate) square: ComplexMatrix,
}

pub(crate) fn exp_hermitian(h: &ComplexMatrix) -> Result<PositiveFactor> {
    let n = h.rows();
    let (lambdas, u, _res) = hermitian_eigensystem(h)?;
    let clamped: Vec<f64> = lambdas
        .iter()
        .map(|l| l.clamp(-EXPONENT_CLAMP, EXPONENT_CLAMP))
        .collect();
    let build = |scale: f64| -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, l) in clamped.iter().enumerate() {
                    acc += u.at(i, k) * (scale * l).exp() * u.at(j, k).conj();
                }
                m.set(i, j, acc);
            }
        }
        m
    };
    Ok(PositiveFactor {
        matrix: build(1.0),
        inverse: build(-1.0),
        square: build(2.0),
    })
}

/// Reads an `n x n` Hermitian matrix out of `n^2` real parameters.
pub(crate) fn hermitian_from_params(params: &[f64], n: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, Complex64::new(params[i], 0.0));
    }
    let mut idx = n;
    for i in 0..n {
        for j in (i + 1)..n {
            let z = Complex64::new(params[idx], params[idx + 1]);
            idx += 2;
            h.set(i, j, z);
            h.set(j, i, z.conj());
        }
    }
    h
}

/// Reads the `n^2` chart parameters back out of a Hermitian matrix,
/// inverting [`hermitian_from_params`].
fn params_from_hermitian(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let mut params = Vec::with_capacity(n * n);
    for i in 0..n {
        params.push(h.at(i, i).re);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let z = h.at(i, j);
            params.push(z.re);
            params.push(z.im);
        }
    }
    params
}

fn write_level_blocks(pencil: &mut ComplexMatrix, y: &ComplexMatrix, n: usize, block: usize) {
    let m = n * block;
    for i in 0..n {
        for j in 0..n {
            let z = y.at(i, j);
            for k in 0..block {
                pencil.set(i * block + k, j * block + k, z);
                pencil.set(m + i * block + k, m + j * block + k, -z);
            }
        }
    }
}

/// Deterministic warm start for the factorization search.
///
/// Writing `P = a a*` and `Q = b* b`, factorizations `x = a y b` with
/// `O(y) <= 1` correspond exactly to positivity of the block matrix
/// `[[P ⊗ I, R], [R*, Q ⊗ I]]`, where `R` realizes `x` and the factors act
/// on the level index. The objective only sees `S = (P + Q) / 2` through its
/// top eigenvalue, and replacing `S` by `λ_max(S) I` preserves positivity,
/// so an optimal pair has the form `P = g I - Y`, `Q = g I + Y` with `Y`
/// Hermitian; conjugating the block matrix by `diag(I, -I)` shows that pair
/// is feasible exactly when `g >= λ_max([[Y ⊗ I, R], [R*, -Y ⊗ I]])`.
/// Minimizing that top eigenvalue over `Y` is therefore a convex problem
/// whose value is the factorization norm itself. Subgradient descent with
/// an adaptive Polyak level recovers several digits cheaply, and the chart
/// coordinates of the square roots of the resulting `P`, `Q` hand the outer
/// search a start in the winning basin.
fn factor_seed(space: &ConcreteOperatorSpace, x: &MatrixOverX, n: usize) -> Result<Vec<f64>> {
    let r = realize(space, x)?;
    let m = r.rows();
    let block = m / n;
    let mut pencil = ComplexMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            pencil.set(i, m + j, r.at(i, j));
            pencil.set(m + j, i, r.at(i, j).conj());
        }
    }
    let mut y = ComplexMatrix::zeros(n, n);
    let mut best_y = y.clone();
    write_level_blocks(&mut pencil, &y, n, block);
    let (mut g, mut vector, _) = top_eigenpair(&pencil)?;
    let mut best = g;
    let mut delta = 0.25 * best.max(f64::MIN_POSITIVE);
    let delta_floor = 1e-7 * best.max(f64::MIN_POSITIVE);
    let mut fails = 0usize;
    for _ in 0..400 {
        if delta <= delta_floor {
            break;
        }
        let mut grad = ComplexMatrix::zeros(n, n);
        let mut grad_sq = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..block {
                    acc += vector[i * block + k] * vector[j * block + k].conj();
                    acc -= vector[m + i * block + k] * vector[m + j * block + k].conj();
                }
                grad.set(i, j, acc);
                grad_sq += acc.norm_sqr();
            }
        }
        if grad_sq <= 1e-24 {
            break;
        }
        let step = (g - (best - delta)) / grad_sq;
        if step > 0.0 {
            y = y.sub(&grad.scale(Complex64::new(step, 0.0)))?;
            write_level_blocks(&mut pencil, &y, n, block);
            let next = top_eigenpair(&pencil)?;
            g = next.0;
            vector = next.1;
        }
        if g < best - 1e-14 * (1.0 + best.abs()) {
            best = g;
            best_y = y.clone();
            fails = 0;
        } else {
            fails += 1;
            if fails >= 12 {
                delta *= 0.5;
                fails = 0;
                y = best_y.clone();
                write_level_blocks(&mut pencil, &y, n, block);
                let at_best = top_eigenpair(&pencil)?;
                g = at_best.0;
                vector = at_best.1;
            }
        }
    }
    let (mus, u, _) = hermitian_eigensystem(&best_y)?;
    let eigen_floor = 1e-9 * best.max(f64::MIN_POSITIVE);
    let p_log: Vec<f64> = mus.iter().map(|mu| 0.5 * (best - mu).max(eigen_floor).ln()).collect();
    let q_log: Vec<f64> = mus.iter().map(|mu| 0.5 * (best + mu).max(eigen_floor).ln()).collect();
    let mut h1 = ComplexMatrix::zeros(n, n);
    let mut h2 = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc1 = Complex64::new(0.0, 0.0);
            let mut acc2 = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let w = u.at(i, k) * u.at(j, k).conj();
                acc1 += w * p_log[k];
                acc2 += w * q_log[k];
            }
            h1.set(i, j, acc1);
            h2.set(i, j, acc2);
        }
    }
    let mut params = params_from_hermitian(&h1);
    params.extend(params_from_hermitian(&h2));
    Ok(params)
}

/// Exact scale balancing: minimizes `λ_max(e^t p² + e^{-t} q²) / 2` over
/// `t`, which is convex. Returns `(t*, minimum)`.
///
/// The search interval is certified before the golden section starts:
/// adding a positive matrix never lowers the top eigenvalue, so the
/// objective dominates both `e^t λ_max(p²) / 2` and `e^{-t} λ_max(q²) / 2`,
/// and any `t` where either ray exceeds the value at zero cannot host the
/// minimizer. The resulting bracket is a few units wide instead of the full
/// clamped exponent range, which buys several digits per iteration budget.
pub(crate) fn balance_factors(p_sq: &ComplexMatrix, q_sq: &ComplexMatrix, iters: usize) -> Result<(f64, f64)> {
    let n = p_sq.rows();
    let top_p = {
        let mut buf = symmetrized_buffer(p_sq);
        lambda_max_in_place(&mut buf, n, JACOBI_RELATIVE_TARGET * p_sq.frobenius_norm())?.0
    };
    let top_q = {
        let mut buf = symmetrized_buffer(q_sq);
        lambda_max_in_place(&mut buf, n, JACOBI_RELATIVE_TARGET * q_sq.frobenius_norm())?.0
    };
    let mut err: Option<Error> = None;
    let mut buf = alloc::vec![Complex64::new(0.0, 0.0); n * n];
    let mut eval = |t: f64| -> f64 {
        if err.is_some() {
            return f64::INFINITY;
        }
        let et = t.exp();
        let emt = (-t).exp();
        let mixed = match p_sq.scale(Complex64::new(et, 0.0)).add(&q_sq.scale(Complex64::new(emt, 0.0))) {
            Ok(m) => m,
            Err(e) => {
                err = Some(e);
                return f64::INFINITY;
            }
        };
        buf.copy_from_slice(&symmetrized_buffer(&mixed));
        match lambda_max_in_place(&mut buf, n, JACOBI_RELATIVE_TARGET * mixed.frobenius_norm()) {
            Ok((l, _)) => 0.5 * l,
            Err(e) => {
                err = Some(e);
                f64::INFINITY
            }
        }
    };
    let wide = 2.0 * EXPONENT_CLAMP + 3.0;
    let center = eval(0.0);
    let (lo, hi) = if top_p > f64::MIN_POSITIVE && top_q > f64::MIN_POSITIVE && center.is_finite() {
        (
            (-((2.0 * center / top_q).ln() + 0.05)).max(-wide),
            ((2.0 * center / top_p).ln() + 0.05).min(wide),
        )
    } else {
        (-wide, wide)
    };
    let (t_star, v_star) = golden_section_min(&mut eval, lo, hi, iters);
    if let Some(e) = err {
        return Err(e);
    }
    if center <= v_star {
        Ok((0.0, center))
    } else {
        Ok((t_star, v_star))
    }
}

/// The factorization norm `W_max` with an explicit witnessing factorization.
///
/// The estimate's upper bracket is the witnessed objective plus the defect
/// of its reconstruction; the lower bracket is `O(x)/2` (and `O(x)` itself
/// at level one, where the two coincide).
pub fn w_max(
    space: &ConcreteOperatorSpace,
    x: &MatrixOverX,
    config: &SearchConfig,
) -> Result<(NormEstimate, Factorization)> {
    config.validate()?;
    let n = x.level();
    let o_est = o_norm(space, x)?;
    if x.max_abs() == 0.0 {
        let fact = zero_factorization(space, x)?;
        return Ok((
            NormEstimate::exact(0.0, String::from("zero element")),
            fact,
        ));
    }

    let param_count = 2 * n * n;
    let warm_start = factor_seed(space, x, n)?;
    // With the certified balance bracket, 20 golden-section steps resolve
    // the inner minimum to ~1e-8 relative, plenty below the outer search's
    // own resolution.
    let (best_params, _) = restarted_minimum(
        param_count,
        config.restarts,
        config.iters,
        config.seed,
        core::slice::from_ref(&warm_start),
        |p| factor_objective(space, x, p, n, 20),
    )?;

    let factorization = build_factorization(space, x, &best_params, n)?;
    let defect = factorization.reconstruction_defect(space, x)?;
    let gram = factorization
        .left
        .matmul(&factorization.left.dagger())?
        .add(&factorization.right.dagger().matmul(&factorization.right)?)?;
    let (gram_norm, _, gram_upper) = operator_norm_bracketed(&gram)?;
    let defect_abs = defect * realize(space, x)?.frobenius_norm();
    let lower = if n == 1 { o_est.lower } else { 0.5 * o_est.lower };
    // A witnessed objective that lands an ulp below the theorem bound is
    // eigensolver noise; the envelope keeps the interval ordered.
    let upper = (0.5 * gram_upper + defect_abs).max(lower);
    let value = (0.5 * gram_norm).max(lower).min(upper);
    let certificate = format!(
        "best of {} factorization starts plus a block-positivity warm start; upper is the witnessed objective (reconstruction defect {defect:.2e} folded in), lower is {}",
        config.restarts,
        if n == 1 { "the level-one operator norm" } else { "half the operator norm" }
    );
    Ok((
        NormEstimate::bracketed(value, lower, upper, certificate),
        factorization,
    ))
}

fn factor_objective(
    space: &ConcreteOperatorSpace,
    x: &MatrixOverX,
    params: &[f64],
    n: usize,
    balance_iters: usize,
) -> Result<f64> {
    let h1 = hermitian_from_params(&params[..n * n], n);
    let h2 = hermitian_from_params(&params[n * n..], n);
    let p = exp_hermitian(&h1)?;
    let q = exp_hermitian(&h2)?;
    let compressed = scalar_compress(&p.inverse, x, &q.inverse)?;
    let (s, _, _) = {
        let realized = realize(space, &compressed)?;
        operator_norm_bracketed(&realized)?
    };
    if s <= f64::MIN_POSITIVE {
        return Ok(f64::INFINITY);
    }
    let (_, balanced) = balance_factors(&p.square, &q.square, balance_iters)?;
    Ok(s * balanced)
}

fn build_factorization(
    space: &ConcreteOperatorSpace,
    x: &MatrixOverX,
    params: &[f64],
    n: usize,
) -> Result<Factorization> {
    let h1 = hermitian_from_params(&params[..n * n], n);
    let h2 = hermitian_from_params(&params[n * n..], n);
    let p = exp_hermitian(&h1)?;
    let q = exp_hermitian(&h2)?;
    let compressed = scalar_compress(&p.inverse, x, &q.inverse)?;
    let realized = realize(space, &compressed)?;
    let (s, _, _) = operator_norm_bracketed(&realized)?;
    if s <= f64::MIN_POSITIVE {
        return zero_factorization(space, x);
    }
    let (t_star, _) = balance_factors(&p.square, &q.square, 64)?;
    // With μ = e^{t*} the balanced factors are a = sqrt(s μ^{1/2}) p and
    // b = sqrt(s / μ^{1/2}) q, giving a (compressed/s) b = x exactly and
    // objective s λ_max(μ p² + μ^{-1} q²) / 2.
    let lambda = (0.5 * t_star).exp();
    let scale_left = (s).sqrt() * lambda;
    let scale_right = (s).sqrt() / lambda;
    let middle = compressed.scale(Complex64::new(1.0 / s, 0.0));
    Ok(Factorization {
        left: p.matrix.scale(Complex64::new(scale_left, 0.0)),
        middle,
        right: q.matrix.scale(Complex64::new(scale_right, 0.0)),
    })
}

fn zero_factorization(
    space: &ConcreteOperatorSpace,
    x: &MatrixOverX,
) -> Result<Factorization> {
    let n = x.level();
    let r = space.dimension();
    let mut unit = MatrixOverX::zero(n, r);
    let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); r];
    coeffs[0] = Complex64::new(1.0, 0.0);
    unit.set_cell(0, 0, coeffs)?;
    let o = o_norm(space, &unit)?;
    let middle = unit.scale(Complex64::new(1.0 / o.value, 0.0));
    Ok(Factorization {
        left: ComplexMatrix::zeros(n, n),
        middle,
        right: ComplexMatrix::identity(n),
    })
}

/// A nilpotent shift generator: norm-one, first superdiagonal
/// `(1, t, ..., t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftGenerator {
    /// Side of the generator matrix.
    pub size: usize,
    /// Interpolation parameter in `[0, 1]`.
    pub t: f64,
    /// The generator itself.
    pub matrix: ComplexMatrix,
}

/// Shift generator of side `n >= 2`: zero except for the first
/// superdiagonal, whose entries are `1, t, ..., t`.
///
/// Its columns are orthogonal, so the norm is `max(1, t) = 1`, and it is
/// strictly upper triangular, hence nilpotent.
pub fn shift_generator(n: usize, t: f64) -> Result<ShiftGenerator> {
    if n < 2 {
        return Err(Error::DomainError {
            context: format!("shift generator needs size at least 2, got {n}"),
        });
    }
    check_t(t)?;
    let mut m = ComplexMatrix::zeros(n, n);
    m.set(0, 1, Complex64::new(1.0, 0.0));
    for i in 1..n - 1 {
        m.set(i, i + 1, Complex64::new(t, 0.0));
    }
    Ok(ShiftGenerator { size: n, t, matrix: m })
}

/// The two-by-two generator `[[0, sqrt(1-t)], [0, sqrt(t)]]`, norm one for
/// every `t` in `[0, 1]`.
pub fn two_by_two_generator(t: f64) -> Result<ShiftGenerator> {
    check_t(t)?;
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 1, Complex64::new((1.0 - t).sqrt(), 0.0));
    m.set(1, 1, Complex64::new(t.sqrt(), 0.0));
    Ok(ShiftGenerator { size: 2, t, matrix: m })
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
        return Err(Error::DomainError {
            context: format!("interpolation parameter must lie in [0, 1], got {t}"),
        });
    }
    Ok(())
}

/// The interpolated norm `W_t(x) = w(G(x))` where `G(x)` replaces every
/// ambient entry block of `x`'s realization by its tensor product with the
/// generator matrix.
///
/// Requires `‖gen.matrix‖ <= 1` (up to slack): with a norm-one generator,
/// `W_t` lands between `W_min` and the amplification-stable upper family.
pub fn w_t_norm(
    space: &ConcreteOperatorSpace,
    x: &MatrixOverX,
    gen: &ShiftGenerator,
    tol: f64,
) -> Result<NormEstimate> {
    let (norm_gen, _, _) = operator_norm_bracketed(&gen.matrix)?;
    if norm_gen > 1.0 + GENERATOR_NORM_SLACK {
        return Err(Error::DomainError {
            context: format!("generator norm {norm_gen:.12} exceeds one"),
        });
    }
    let realized = realize(space, x)?;
    let amplified = realized.kron(&gen.matrix);
    numerical_radius(&amplified, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::operator_norm;
    use crate::sample::{gaussian_matrix, seeded_rng};
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_element(rng: &mut impl Rng, n: usize) -> MatrixOverX {
        MatrixOverX::random(rng, n, 1)
    }

    fn scalar_matrix_of(x: &MatrixOverX) -> ComplexMatrix {
        let n = x.level();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, x.cell(i, j)[0]);
            }
        }
        m
    }

    fn quick_config(seed: u64) -> SearchConfig {
        SearchConfig {
            restarts: 8,
            iters: 300,
            seed,
            tol: 1e-8,
        }
    }

    #[test]
    fn w_min_is_half_o() {
        let mut rng = seeded_rng(1);
        let space = ConcreteOperatorSpace::random(&mut rng, 2, 2).unwrap();
        let x = MatrixOverX::random(&mut rng, 2, 2);
        let o = o_norm(&space, &x).unwrap();
        let wm = w_min(&space, &x).unwrap();
        assert_eq!(wm.value, 0.5 * o.value);
        assert_eq!(wm.lower, 0.5 * o.lower);
    }

    #[test]
    fn exp_hermitian_inverts_exactly() {
        let mut rng = seeded_rng(2);
        let g = gaussian_matrix(&mut rng, 3, 3);
        let h = g.add(&g.dagger()).unwrap().scale(c(0.5, 0.0));
        let p = exp_hermitian(&h).unwrap();
        let prod = p.matrix.matmul(&p.inverse).unwrap();
        let defect = prod.sub(&ComplexMatrix::identity(3)).unwrap().frobenius_norm();
        assert!(defect < 1e-10, "inverse defect {defect}");
        let sq = p.matrix.matmul(&p.matrix).unwrap();
        assert!(sq.sub(&p.square).unwrap().frobenius_norm() < 1e-8 * (1.0 + p.square.frobenius_norm()));
    }

    #[test]
    fn balance_matches_scalar_case() {
        // For p² = 4, q² = 9 the balanced minimum of (4e^t + 9e^{-t}) / 2 is
        // ‖p‖‖q‖ = 6, attained at e^t = 3/2.
        let p_sq = ComplexMatrix::scalar(c(4.0, 0.0)).unwrap();
        let q_sq = ComplexMatrix::scalar(c(9.0, 0.0)).unwrap();
        let (t, v) = balance_factors(&p_sq, &q_sq, 64).unwrap();
        assert!((v - 6.0).abs() < 1e-9);
        assert!((t.exp() - 1.5).abs() < 1e-6);
    }

    #[test]
    fn factor_seed_objective_is_near_the_radius() {
        let space = ConcreteOperatorSpace::scalar();
        // Corner element: the optimum needs nearly singular factors, the
        // hardest shape for a generic multistart to find on its own.
        let mut corner = MatrixOverX::zero(2, 1);
        corner.set_cell(0, 1, alloc::vec![c(3.0, 0.0)]).unwrap();
        let params = factor_seed(&space, &corner, 2).unwrap();
        let value = factor_objective(&space, &corner, &params, 2, 64).unwrap();
        assert!((value - 1.5).abs() < 2e-3, "corner seed objective {value}");

        let mut rng = seeded_rng(29);
        let x = scalar_element(&mut rng, 3);
        let alpha = scalar_matrix_of(&x);
        let w = numerical_radius(&alpha, 1e-10).unwrap().value;
        let params = factor_seed(&space, &x, 3).unwrap();
        let value = factor_objective(&space, &x, &params, 3, 64).unwrap();
        assert!(value >= w - 1e-9, "seed objective {value} below the radius {w}");
        assert!(value <= w * (1.0 + 2e-3), "seed objective {value} far above the radius {w}");
    }

    #[test]
    fn w_max_of_scalar_element_matches_radius() {
        let mut rng = seeded_rng(3);
        let space = ConcreteOperatorSpace::scalar();
        for n in 1..=3 {
            let x = scalar_element(&mut rng, n);
            let alpha = scalar_matrix_of(&x);
            let w = numerical_radius(&alpha, 1e-10).unwrap();
            let (est, fact) = w_max(&space, &x, &quick_config(17)).unwrap();
            assert!(
                est.lower <= w.value + 1e-9 && w.value <= est.upper + 1e-9,
                "n = {n}: w = {} outside [{}, {}]",
                w.value,
                est.lower,
                est.upper
            );
            assert!(
                est.upper - w.value <= 5e-3,
                "n = {n}: upper {} vs radius {}",
                est.upper,
                w.value
            );
            assert!(fact.reconstruction_defect(&space, &x).unwrap() <= 1e-8);
            let o_mid = o_norm(&space, &fact.middle).unwrap();
            assert!((o_mid.value - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn w_max_at_level_one_is_the_operator_norm() {
        let mut rng = seeded_rng(4);
        let space = ConcreteOperatorSpace::random(&mut rng, 3, 2).unwrap();
        let x = MatrixOverX::random(&mut rng, 1, 2);
        let o = o_norm(&space, &x).unwrap();
        let (est, _) = w_max(&space, &x, &quick_config(5)).unwrap();
        assert!((est.upper - o.value).abs() <= 1e-6, "{} vs {}", est.upper, o.value);
        assert!((est.lower - o.lower).abs() <= 1e-12);
    }

    #[test]
    fn w_max_sits_in_its_sandwich() {
        let mut rng = seeded_rng(5);
        let space = ConcreteOperatorSpace::random(&mut rng, 2, 2).unwrap();
        let x = MatrixOverX::random(&mut rng, 2, 2);
        let o = o_norm(&space, &x).unwrap();
        let wm = w_min(&space, &x).unwrap();
        let (est, fact) = w_max(&space, &x, &quick_config(7)).unwrap();
        assert!(est.upper <= o.upper + 1e-8, "W_max {} above O {}", est.upper, o.upper);
        assert!(est.lower >= wm.lower - 1e-12);
        assert!(est.upper <= 2.0 * wm.upper + 1e-6);
        assert!(fact.reconstruction_defect(&space, &x).unwrap() <= 1e-8);
    }

    #[test]
    fn w_max_of_zero_is_zero_with_valid_factorization() {
        let space = ConcreteOperatorSpace::scalar();
        let x = MatrixOverX::zero(2, 1);
        let (est, fact) = w_max(&space, &x, &quick_config(1)).unwrap();
        assert_eq!(est.value, 0.0);
        let o_mid = o_norm(&space, &fact.middle).unwrap();
        assert!((o_mid.value - 1.0).abs() <= 1e-10);
        assert!(fact.reconstruction_defect(&space, &x).unwrap() <= 1e-12);
    }

    #[test]
    fn shift_generator_shape_norm_and_nilpotency() {
        let g = shift_generator(4, 0.6).unwrap();
        assert_eq!(g.matrix.at(0, 1), c(1.0, 0.0));
        assert_eq!(g.matrix.at(1, 2), c(0.6, 0.0));
        assert_eq!(g.matrix.at(2, 3), c(0.6, 0.0));
        assert!((operator_norm(&g.matrix).unwrap() - 1.0).abs() < 1e-12);
        let mut power = g.matrix.clone();
        for _ in 0..3 {
            power = power.matmul(&g.matrix).unwrap();
        }
        assert_eq!(power.frobenius_norm(), 0.0);
        assert!(matches!(shift_generator(1, 0.5), Err(Error::DomainError { .. })));
        assert!(matches!(shift_generator(3, 1.5), Err(Error::DomainError { .. })));
        assert!(matches!(shift_generator(3, f64::NAN), Err(Error::DomainError { .. })));
    }

    #[test]
    fn two_by_two_generator_norm_and_radius() {
        for &t in &[0.0, 0.25, 0.5, 1.0] {
            let g = two_by_two_generator(t).unwrap();
            assert!((operator_norm(&g.matrix).unwrap() - 1.0).abs() < 1e-12);
        }
        // At t = 1/2 the radius is (2 + sqrt(2))/4: the Hermitian part of
        // the rotated generator has top eigenvalue (sin θ + 1)/(2 sqrt(2)) +
        // ... maximized in closed form.
        let g = two_by_two_generator(0.5).unwrap();
        let w = numerical_radius(&g.matrix, 1e-10).unwrap();
        let expected = (2.0 + 2.0f64.sqrt()) / 4.0;
        assert!((w.value - expected).abs() < 1e-8, "{} vs {expected}", w.value);
    }

    #[test]
    fn w_zero_is_w_min_and_w_t_is_sandwiched() {
        let mut rng = seeded_rng(6);
        let space = ConcreteOperatorSpace::scalar();
        let x = scalar_element(&mut rng, 3);
        let alpha = scalar_matrix_of(&x);
        let wm = w_min(&space, &x).unwrap();
        let w_alpha = numerical_radius(&alpha, 1e-10).unwrap();
        for &t in &[0.0, 0.3, 0.7, 1.0] {
            let gen = shift_generator(3, t).unwrap();
            let wt = w_t_norm(&space, &x, &gen, 1e-9).unwrap();
            assert!(wt.value >= wm.value - 1e-8, "t = {t}");
            assert!(wt.value <= w_alpha.value + 1e-8, "t = {t}");
            if t == 0.0 {
                assert!((wt.value - wm.value).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn w_t_rejects_oversized_generators() {
        let space = ConcreteOperatorSpace::scalar();
        let x = MatrixOverX::random(&mut seeded_rng(7), 2, 1);
        let mut gen = shift_generator(3, 0.5).unwrap();
        gen.matrix = gen.matrix.scale(c(1.5, 0.0));
        assert!(matches!(
            w_t_norm(&space, &x, &gen, 1e-8),
            Err(Error::DomainError { .. })
        ));
    }
}
