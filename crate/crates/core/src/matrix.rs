//! Dense complex matrices: arithmetic, adjoints, Kronecker products, and
//! block assembly.
//!
//! The representation is a row-major `Vec<Complex64>`. Constructors that
//! accept caller data reject non-finite entries once, so downstream
//! computations can assume finiteness.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

/// Double-precision complex scalar used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data.
    ///
    /// Fails with [`Error::ShapeMismatch`] when `data.len() != rows * cols`,
    /// with [`Error::DegenerateInput`] when either dimension is zero or an
    /// entry is NaN or infinite.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DegenerateInput {
                context: String::from("matrix dimensions must be positive"),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "expected {rows}x{cols} = {} entries, got {}",
                    rows * cols,
                    data.len()
                ),
            });
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::DegenerateInput {
                    context: format!("entry ({}, {}) is not finite", idx / cols, idx % cols),
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Zero matrix of the given shape. Panics on zero dimensions since those
    /// indicate a programming error, not bad user data.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of side `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    pub fn from_nested(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DegenerateInput {
                context: String::from("matrix needs at least one row"),
            });
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    context: format!("row {i} has {} entries, row 0 has {cols}", row.len()),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(rows, cols, data)
    }

    /// One-by-one matrix holding a single scalar.
    pub fn scalar(z: Complex64) -> Result<Self> {
        Self::new(1, 1, vec![z])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at `(i, j)`. Panics when out of bounds.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    /// Overwrites the entry at `(i, j)`. Panics when out of bounds.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.cols + j] = value;
    }

    /// Row-major view of the entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        op: &str,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "{op}: left is {}x{}, right is {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "matmul: left is {}x{}, right is {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + aik * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        kron(self, other)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.re * z.re + z.im * z.im)
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Result<Complex64> {
        self.require_square("trace")?;
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        Ok(t)
    }

    /// Frobenius norm of `A - A*` for square `A`.
    pub fn hermitian_defect(&self) -> Result<f64> {
        self.require_square("hermitian_defect")?;
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.at(i, j) - self.at(j, i).conj();
                sum += d.re * d.re + d.im * d.im;
            }
        }
        Ok(sum.sqrt())
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                context: format!("{what} needs a square matrix, got {}x{}", self.rows, self.cols),
            });
        }
        Ok(())
    }
}

/// Conjugate transpose as a free function.
pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

/// Kronecker product `a ⊗ b`: the block matrix whose `(i, j)` block is
/// `a[i][j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.at(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for p in 0..b.rows() {
                for q in 0..b.cols() {
                    out.set(i * b.rows() + p, j * b.cols() + q, aij * b.at(p, q));
                }
            }
        }
    }
    out
}

/// Assembles a rectangular grid of equally shaped blocks into one matrix.
///
/// `blocks[i][j]` becomes the `(i, j)` block of the result. Fails with
/// [`Error::ShapeMismatch`] when the grid is ragged or the blocks do not all
/// share one shape, and with [`Error::DegenerateInput`] on an empty grid.
pub fn assemble_block(blocks: &[Vec<ComplexMatrix>]) -> Result<ComplexMatrix> {
    if blocks.is_empty() || blocks[0].is_empty() {
        return Err(Error::DegenerateInput {
            context: String::from("block grid must be non-empty"),
        });
    }
    let grid_cols = blocks[0].len();
    let block_rows = blocks[0][0].rows();
    let block_cols = blocks[0][0].cols();
    for (i, row) in blocks.iter().enumerate() {
        if row.len() != grid_cols {
            return Err(Error::ShapeMismatch {
                context: format!("block row {i} has {} blocks, row 0 has {grid_cols}", row.len()),
            });
        }
        for (j, b) in row.iter().enumerate() {
            if b.rows() != block_rows || b.cols() != block_cols {
                return Err(Error::ShapeMismatch {
                    context: format!(
                        "block ({i}, {j}) is {}x{}, block (0, 0) is {block_rows}x{block_cols}",
                        b.rows(),
                        b.cols()
                    ),
                });
            }
        }
    }
    let mut out = ComplexMatrix::zeros(blocks.len() * block_rows, grid_cols * block_cols);
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            for p in 0..block_rows {
                for q in 0..block_cols {
                    out.set(i * block_rows + p, j * block_cols + q, b.at(p, q));
                }
            }
        }
    }
    Ok(out)
}
