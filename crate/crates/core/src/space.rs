//! Concrete operator spaces and matrices over them.
//!
//! A concrete operator space is a linear span of matrices inside some
//! `M_d(C)`, given by an explicit basis. An element of `M_n(X)` is stored as
//! its coefficient tensor against that basis; `realize` assembles the actual
//! `(n*d) x (n*d)` matrix, and the amplified operator norm `O_n` and radius
//! `W_n` are norms of that realization.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::eigen::{lambda_extremes, operator_norm_bracketed};
use crate::error::{Error, Result};
use crate::estimate::NormEstimate;
use crate::matrix::{assemble_block, Complex64, ComplexMatrix};
use crate::radius::numerical_radius;
use crate::sample::complex_gaussian;
use crate::tolerances::BASIS_INDEPENDENCE_FLOOR;

/// A linear subspace of `M_d(C)` spanned by an explicit basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteOperatorSpace {
    ambient_dim: usize,
    basis: Vec<ComplexMatrix>,
}

impl ConcreteOperatorSpace {
    /// Builds a space after checking every basis element is `d x d` and the
    /// family is linearly independent (smallest singular value of the
    /// vectorized basis above `1e-10`).
    pub fn new(ambient_dim: usize, basis: Vec<ComplexMatrix>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::DegenerateInput {
                context: String::from("ambient dimension must be positive"),
            });
        }
        if basis.is_empty() {
            return Err(Error::DegenerateInput {
                context: String::from("operator space needs at least one basis element"),
            });
        }
        for (k, b) in basis.iter().enumerate() {
            if b.rows() != ambient_dim || b.cols() != ambient_dim {
                return Err(Error::ShapeMismatch {
                    context: format!(
                        "basis element {k} is {}x{}, ambient dimension is {ambient_dim}",
                        b.rows(),
                        b.cols()
                    ),
                });
            }
        }
        let r = basis.len();
        let mut gram = ComplexMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                // <b_i, b_j> = tr(b_i* b_j), the Frobenius pairing.
                let mut acc = Complex64::new(0.0, 0.0);
                for p in 0..ambient_dim {
                    for q in 0..ambient_dim {
                        acc += basis[i].at(p, q).conj() * basis[j].at(p, q);
                    }
                }
                gram.set(i, j, acc);
            }
        }
        let (lambda_min, _, residual) = lambda_extremes(&gram)?;
        let sigma_min = (lambda_min - residual).max(0.0).sqrt();
        if sigma_min <= BASIS_INDEPENDENCE_FLOOR {
            return Err(Error::DegenerateInput {
                context: format!(
                    "basis is linearly dependent: smallest singular value {sigma_min:.3e}"
                ),
            });
        }
        Ok(Self { ambient_dim, basis })
    }

    /// The scalars: the span of `[1]` inside `M_1(C)`.
    pub fn scalar() -> Self {
        Self {
            ambient_dim: 1,
            basis: alloc::vec![ComplexMatrix::identity(1)],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of basis elements (the linear dimension of the space).
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    /// The concrete matrix `sum_k coeffs[k] * b_k`.
    pub fn combine(&self, coeffs: &[Complex64]) -> Result<ComplexMatrix> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::SpaceMismatch {
                context: format!(
                    "{} coefficients against a basis of {}",
                    coeffs.len(),
                    self.basis.len()
                ),
            });
        }
        let mut out = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for (c, b) in coeffs.iter().zip(self.basis.iter()) {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            out = out.add(&b.scale(*c))?;
        }
        Ok(out)
    }

    /// Space with `dimension` independent Gaussian basis elements in `M_d`.
    pub fn random<R: Rng>(rng: &mut R, ambient_dim: usize, dimension: usize) -> Result<Self> {
        for _ in 0..16 {
            let basis: Vec<ComplexMatrix> = (0..dimension)
                .map(|_| crate::sample::gaussian_matrix(rng, ambient_dim, ambient_dim))
                .collect();
            match Self::new(ambient_dim, basis) {
                Ok(space) => return Ok(space),
                Err(Error::DegenerateInput { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::DegenerateInput {
            context: format!(
                "could not draw {dimension} independent basis elements in dimension {ambient_dim}"
            ),
        })
    }
}

/// An element of `M_n(X)`: an `n x n` grid of coefficient vectors against
/// the basis of a [`ConcreteOperatorSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixOverX {
    level: usize,
    coeff_dim: usize,
    /// `coeffs[i][j][k]` multiplies basis element `k` in grid cell `(i, j)`.
    coeffs: Vec<Vec<Vec<Complex64>>>,
}

impl MatrixOverX {
    /// Builds an element, validating the grid is `level x level`, every cell
    /// has the same coefficient dimension, and all entries are finite.
    pub fn new(level: usize, coeffs: Vec<Vec<Vec<Complex64>>>) -> Result<Self> {
        if level == 0 {
            return Err(Error::DegenerateInput {
                context: String::from("level must be positive"),
            });
        }
        if coeffs.len() != level {
            return Err(Error::ShapeMismatch {
                context: format!("{} coefficient rows for level {level}", coeffs.len()),
            });
        }
        let coeff_dim = coeffs
            .first()
            .and_then(|row| row.first())
            .map(|cell| cell.len())
            .unwrap_or(0);
        if coeff_dim == 0 {
            return Err(Error::DegenerateInput {
                context: String::from("coefficient vectors must be non-empty"),
            });
        }
        for (i, row) in coeffs.iter().enumerate() {
            if row.len() != level {
                return Err(Error::ShapeMismatch {
                    context: format!("coefficient row {i} has {} cells for level {level}", row.len()),
                });
            }
            for (j, cell) in row.iter().enumerate() {
                if cell.len() != coeff_dim {
                    return Err(Error::ShapeMismatch {
                        context: format!(
                            "cell ({i}, {j}) has {} coefficients, cell (0, 0) has {coeff_dim}",
                            cell.len()
                        ),
                    });
                }
                for (k, z) in cell.iter().enumerate() {
                    if !z.re.is_finite() || !z.im.is_finite() {
                        return Err(Error::DegenerateInput {
                            context: format!("coefficient ({i}, {j}, {k}) is not finite"),
                        });
                    }
                }
            }
        }
        Ok(Self {
            level,
            coeff_dim,
            coeffs,
        })
    }

    /// Zero element of `M_level(X)` for a space of linear dimension
    /// `coeff_dim`.
    pub fn zero(level: usize, coeff_dim: usize) -> Self {
        Self {
            level,
            coeff_dim,
            coeffs: alloc::vec![
                alloc::vec![alloc::vec![Complex64::new(0.0, 0.0); coeff_dim]; level];
                level
            ],
        }
    }

    /// Level-one element from a single coefficient vector.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(1, alloc::vec![alloc::vec![coeffs]])
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    pub fn coeffs(&self) -> &[Vec<Vec<Complex64>>] {
        &self.coeffs
    }

    pub fn cell(&self, i: usize, j: usize) -> &[Complex64] {
        &self.coeffs[i][j]
    }

    pub fn set_cell(&mut self, i: usize, j: usize, coeffs: Vec<Complex64>) -> Result<()> {
        if coeffs.len() != self.coeff_dim {
            return Err(Error::SpaceMismatch {
                context: format!(
                    "cell expects {} coefficients, got {}",
                    self.coeff_dim,
                    coeffs.len()
                ),
            });
        }
        self.coeffs[i][j] = coeffs;
        Ok(())
    }

    pub fn add(&self, other: &MatrixOverX) -> Result<MatrixOverX> {
        self.compatible(other, "add")?;
        let mut out = self.clone();
        for i in 0..self.level {
            for j in 0..self.level {
                for k in 0..self.coeff_dim {
                    out.coeffs[i][j][k] += other.coeffs[i][j][k];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> MatrixOverX {
        let mut out = self.clone();
        for row in out.coeffs.iter_mut() {
            for cell in row.iter_mut() {
                for z in cell.iter_mut() {
                    *z *= c;
                }
            }
        }
        out
    }

    /// Largest coefficient magnitude; zero exactly for the zero element.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|row| row.iter())
            .flat_map(|cell| cell.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Element with independent standard complex Gaussian coefficients.
    pub fn random<R: Rng>(rng: &mut R, level: usize, coeff_dim: usize) -> Self {
        let coeffs = (0..level)
            .map(|_| {
                (0..level)
                    .map(|_| (0..coeff_dim).map(|_| complex_gaussian(rng)).collect())
                    .collect()
            })
            .collect();
        Self {
            level,
            coeff_dim,
            coeffs,
        }
    }

    fn compatible(&self, other: &MatrixOverX, op: &str) -> Result<()> {
        if self.coeff_dim != other.coeff_dim {
            return Err(Error::SpaceMismatch {
                context: format!(
                    "{op}: elements have coefficient dimensions {} and {}",
                    self.coeff_dim, other.coeff_dim
                ),
            });
        }
        if self.level != other.level {
            return Err(Error::ShapeMismatch {
                context: format!("{op}: elements have levels {} and {}", self.level, other.level),
            });
        }
        Ok(())
    }
}

/// Assembles the concrete `(n*d) x (n*d)` matrix of an element of `M_n(X)`.
pub fn realize(space: &ConcreteOperatorSpace, x: &MatrixOverX) -> Result<ComplexMatrix> {
    if x.coeff_dim() != space.dimension() {
        return Err(Error::SpaceMismatch {
            context: format!(
                "element has {} coefficients per cell, space has dimension {}",
                x.coeff_dim(),
                space.dimension()
            ),
        });
    }
    let n = x.level();
    let mut blocks: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(space.combine(x.cell(i, j))?);
        }
        blocks.push(row);
    }
    assemble_block(&blocks)
}

/// Amplified operator norm `O_n(x) = ‖realize(x)‖` with the eigensolver
/// residual folded into the bracket.
pub fn o_norm(space: &ConcreteOperatorSpace, x: &MatrixOverX) -> Result<NormEstimate> {
    let realized = realize(space, x)?;
    let (value, lower, upper) = operator_norm_bracketed(&realized)?;
    Ok(NormEstimate::bracketed(
        value,
        lower,
        upper,
        String::from("operator norm of the realization (Gram spectrum with residual)"),
    ))
}

/// Amplified numerical radius `W_n(x) = w(realize(x))`.
pub fn w_norm(space: &ConcreteOperatorSpace, x: &MatrixOverX, tol: f64) -> Result<NormEstimate> {
    let realized = realize(space, x)?;
    numerical_radius(&realized, tol)
}

/// Scalar row and column compression `alpha * x * beta`.
///
/// `alpha` is `m x n`, `beta` is `n x m` with `n` the level of `x`; the
/// result has level `m` and satisfies
/// `realize(alpha x beta) = (alpha ⊗ I_d) realize(x) (beta ⊗ I_d)`.
pub fn scalar_compress(
    alpha: &ComplexMatrix,
    x: &MatrixOverX,
    beta: &ComplexMatrix,
) -> Result<MatrixOverX> {
    let n = x.level();
    if alpha.cols() != n || beta.rows() != n {
        return Err(Error::ShapeMismatch {
            context: format!(
                "compression of a level-{n} element needs alpha with {n} columns and beta with {n} rows, got {}x{} and {}x{}",
                alpha.rows(),
                alpha.cols(),
                beta.rows(),
                beta.cols()
            ),
        });
    }
    if alpha.rows() != beta.cols() {
        return Err(Error::ShapeMismatch {
            context: format!(
                "compression must produce a square element: alpha has {} rows, beta has {} columns",
                alpha.rows(),
                beta.cols()
            ),
        });
    }
    let m = alpha.rows();
    let r = x.coeff_dim();
    let mut out = MatrixOverX::zero(m, r);
    for i in 0..m {
        for j in 0..m {
            let mut cell = alloc::vec![Complex64::new(0.0, 0.0); r];
            for p in 0..n {
                let aip = alpha.at(i, p);
                if aip == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for q in 0..n {
                    let factor = aip * beta.at(q, j);
                    if factor == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for (k, acc) in cell.iter_mut().enumerate() {
                        *acc += factor * x.cell(p, q)[k];
                    }
                }
            }
            out.coeffs[i][j] = cell;
        }
    }
    Ok(out)
}

/// Block-diagonal direct sum of two elements over the same space.
pub fn direct_sum(x: &MatrixOverX, y: &MatrixOverX) -> Result<MatrixOverX> {
    if x.coeff_dim() != y.coeff_dim() {
        return Err(Error::SpaceMismatch {
            context: format!(
                "direct sum of elements with coefficient dimensions {} and {}",
                x.coeff_dim(),
                y.coeff_dim()
            ),
        });
    }
    let (nx, ny) = (x.level(), y.level());
    let mut out = MatrixOverX::zero(nx + ny, x.coeff_dim());
    for i in 0..nx {
        for j in 0..nx {
            out.coeffs[i][j] = x.cell(i, j).to_vec();
        }
    }
    for i in 0..ny {
        for j in 0..ny {
            out.coeffs[nx + i][nx + j] = y.cell(i, j).to_vec();
        }
    }
    Ok(out)
}

/// Doubles the level, placing `x` in the upper-right corner:
/// `[[0, x], [0, 0]]`.
pub fn off_corner(x: &MatrixOverX) -> MatrixOverX {
    let n = x.level();
    let mut out = MatrixOverX::zero(2 * n, x.coeff_dim());
    for i in 0..n {
        for j in 0..n {
            out.coeffs[i][n + j] = x.cell(i, j).to_vec();
        }
    }
    out
}
