use super::ExactMatrix;
use crate::arith::RatFuncMu;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    /// 1 on the diagonal, −1 just below it: row i minus row i−1.
    L,
    /// Upper-triangular all-ones: column j becomes the sum of columns 1..j.
    R,
    /// Swaps the first two columns (with a sign) and then sums from column 2 on.
    Rtilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryTransform {
    pub kind: TransformKind,
    pub dim: usize,
    matrix: ExactMatrix,
}

impl ElementaryTransform {
    /// Builds the transform and checks that its determinant is ±1.
    pub fn new(kind: TransformKind, dim: usize) -> Result<Self> {
        if dim == 0 || (kind == TransformKind::Rtilde && dim < 2) {
            return Err(Error::Dimension(format!("{kind:?} of dimension {dim}")));
        }
        let one = RatFuncMu::one;
        let zero = RatFuncMu::zero;
        let matrix = match kind {
            TransformKind::L => ExactMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    one()
                } else if i == j + 1 {
                    -one()
                } else {
                    zero()
                }
            }),
            TransformKind::R => ExactMatrix::from_fn(dim, dim, |i, j| if j >= i { one() } else { zero() }),
            TransformKind::Rtilde => ExactMatrix::from_fn(dim, dim, |i, j| match (i, j) {
                (1, 2) => -one(),
                (1, _) => zero(),
                (2, 2) => zero(),
                (2, _) => one(),
                _ if j >= i => one(),
                _ => zero(),
            }),
        };
        let d = matrix.det()?;
        if !(d.is_one() || (-&d).is_one()) {
            return Err(Error::Dimension(format!("{kind:?} has determinant {d}")));
        }
        Ok(ElementaryTransform { kind, dim, matrix })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
}

/// T·M (left) or M·T (right).
pub fn apply_transform(t: &ElementaryTransform, side: Side, m: &ExactMatrix) -> Result<ExactMatrix> {
    match side {
        Side::Left => t.matrix.mul(m),
        Side::Right => m.mul(&t.matrix),
    }
}
