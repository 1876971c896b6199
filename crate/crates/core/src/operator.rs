use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// A linear map on algebra coordinates. Column `j` of the matrix is the
/// image of the basis vector `eⱼ`.
///
/// Operators live in a `dim²`-dimensional space when solving functional
/// identities; the flattening is column-major, so unknown `j·dim + r` is the
/// `r`-th coordinate of the image of `eⱼ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearOperator<F: Field> {
    matrix: Matrix<F>,
}

impl<F: Field> LinearOperator<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::Shape(format!("operator must be square, got {}x{}", matrix.rows(), matrix.cols())));
        }
        Ok(LinearOperator { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        LinearOperator { matrix: Matrix::identity(dim) }
    }

    pub fn zero(dim: usize) -> Self {
        LinearOperator { matrix: Matrix::zeros(dim, dim) }
    }

    /// Operator sending `eⱼ` to `images[j]`.
    pub fn from_images(dim: usize, images: &[Vec<F>]) -> Result<Self> {
        if images.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: images.len() });
        }
        Ok(LinearOperator { matrix: Matrix::from_columns(dim, images)? })
    }

    pub fn from_vec(dim: usize, v: &[F]) -> Result<Self> {
        if v.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: v.len() });
        }
        let images: Vec<Vec<F>> = v.chunks(dim).map(|c| c.to_vec()).collect();
        Self::from_images(dim, &images)
    }

    pub fn to_vec(&self) -> Vec<F> {
        let n = self.dim();
        (0..n).flat_map(|j| (0..n).map(move |r| (r, j))).map(|(r, j)| self.matrix[(r, j)].clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn image_of_basis(&self, j: usize) -> Vec<F> {
        self.matrix.column(j)
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.matrix.mul_vec(x)
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearOperator { matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LinearOperator { matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, s: &F) -> Self {
        LinearOperator { matrix: self.matrix.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn column_major_flattening() {
        let m = Matrix::<BigRational>::from_ints(&[&[1, 2], &[3, 4]]);
        let op = LinearOperator::new(m).unwrap();
        let v = op.to_vec();
        let ints: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(ints, ["1", "3", "2", "4"]);
        assert_eq!(LinearOperator::from_vec(2, &v).unwrap(), op);
        assert!(LinearOperator::new(Matrix::<BigRational>::zeros(2, 3)).is_err());
    }
}
