//! Dense matrices over RatFuncMu. Indices are 1-based throughout.

mod bareiss;
pub mod qmat;
mod transform;

use std::fmt;

use crate::arith::{IntPoly, RatFuncMu, Rational};
use crate::error::{Error, Result};

pub use bareiss::{det_int, solve_int};
pub use transform::{apply_transform, ElementaryTransform, Side, TransformKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFuncMu>,
}

/// Rows I and columns J to delete, 1-based and ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinorSpec {
    pub deleted_rows: Vec<usize>,
    pub deleted_cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(deleted_rows: Vec<usize>, deleted_cols: Vec<usize>) -> Self {
        MinorSpec { deleted_rows, deleted_cols }
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFuncMu>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds from f(i, j) with 1-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFuncMu) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RatFuncMu>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| RatFuncMu::from_int(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix::from_fn(n, n, |i, j| if i == j { RatFuncMu::one() } else { RatFuncMu::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &RatFuncMu {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "index ({i},{j}) out of range");
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFuncMu) {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols, "index ({i},{j}) out of range");
        self.entries[(i - 1) * self.cols + (j - 1)] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RatFuncMu> {
        (1..=self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<RatFuncMu> {
        (1..=self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[RatFuncMu] {
        &self.entries
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&RatFuncMu) -> RatFuncMu) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(&mut f).collect() }
    }

    pub fn try_map(&self, mut f: impl FnMut(&RatFuncMu) -> Result<RatFuncMu>) -> Result<ExactMatrix> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }

    /// Substitutes μ → μ + c in every entry.
    pub fn shift_mu(&self, c: &Rational) -> ExactMatrix {
        self.map(|e| e.shift(c))
    }

    /// Substitutes a rational value for μ.
    pub fn at(&self, mu: &Rational) -> Result<ExactMatrix> {
        self.try_map(|e| Ok(RatFuncMu::constant(e.eval(mu)?)))
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = RatFuncMu::zero();
            for k in 1..=self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn add(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("matrix sum".into()));
        }
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j)))
    }

    pub fn sub(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("matrix difference".into()));
        }
        Ok(ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j)))
    }

    /// Keeps the listed rows and columns (1-based, in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        ExactMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn delete(&self, spec: &MinorSpec) -> Result<ExactMatrix> {
        for &i in &spec.deleted_rows {
            if i == 0 || i > self.rows {
                return Err(Error::Index(format!("row {i}")));
            }
        }
        for &j in &spec.deleted_cols {
            if j == 0 || j > self.cols {
                return Err(Error::Index(format!("column {j}")));
            }
        }
        let rows: Vec<usize> = (1..=self.rows).filter(|i| !spec.deleted_rows.contains(i)).collect();
        let cols: Vec<usize> = (1..=self.cols).filter(|j| !spec.deleted_cols.contains(j)).collect();
        Ok(self.select(&rows, &cols))
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(())
    }

    /// Clears denominators along rows or columns (whichever needs the smaller
    /// denominator lcm) and returns the integer matrix plus the total scale.
    fn to_int_rows(&self) -> (Vec<Vec<IntPoly>>, RatFuncMu) {
        let n = self.rows;
        let row_refs = |i: usize| (1..=n).map(|j| self.get(i, j)).collect::<Vec<_>>();
        let col_refs = |j: usize| (1..=n).map(|i| self.get(i, j)).collect::<Vec<_>>();
        let by_rows: usize = (1..=n).map(|i| bareiss::lcm_degree(&row_refs(i))).sum();
        let by_cols: usize = (1..=n).map(|j| bareiss::lcm_degree(&col_refs(j))).sum();
        let mut scale = RatFuncMu::one();
        if by_rows < by_cols {
            let mut out = Vec::with_capacity(n);
            for i in 1..=n {
                let (line, s) = bareiss::clear_line(&row_refs(i));
                scale = &scale * &s;
                out.push(line);
            }
            (out, scale)
        } else {
            let mut cols = Vec::with_capacity(n);
            for j in 1..=n {
                let (line, s) = bareiss::clear_line(&col_refs(j));
                scale = &scale * &s;
                cols.push(line);
            }
            let out = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            (out, scale)
        }
    }

    /// Exact determinant by fraction-free elimination. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<RatFuncMu> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(RatFuncMu::one());
        }
        let (a, scale) = self.to_int_rows();
        let d = det_int(a);
        let d = RatFuncMu::from_poly(crate::arith::PolyMu::from_int_poly(&d));
        d.checked_div(&scale)
    }

    /// Determinant by Gaussian elimination over the rational-function field.
    pub fn det_field(&self) -> Result<RatFuncMu> {
        self.require_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<RatFuncMu>> = (1..=n).map(|i| self.row(i)).collect();
        let mut d = RatFuncMu::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&p| !a[p][k].is_zero()) else {
                return Ok(RatFuncMu::zero());
            };
            if p != k {
                a.swap(k, p);
                d = -d;
            }
            let piv = a[k][k].clone();
            d = &d * &piv;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                for j in k..n {
                    let v = &a[i][j] - &(&f * &a[k][j]);
                    a[i][j] = v;
                }
            }
        }
        Ok(d)
    }

    /// Determinant by Laplace expansion along the first row. Exponential; an oracle for small sizes.
    pub fn det_cofactor(&self) -> Result<RatFuncMu> {
        self.require_square()?;
        Ok(laplace(self))
    }

    /// Determinant of the matrix with rows I and columns J removed.
    pub fn minor_det(&self, spec: &MinorSpec) -> Result<RatFuncMu> {
        self.require_square()?;
        if spec.deleted_rows.len() != spec.deleted_cols.len() {
            return Err(Error::Dimension(format!(
                "deleting {} rows but {} columns",
                spec.deleted_rows.len(),
                spec.deleted_cols.len()
            )));
        }
        self.delete(spec)?.det()
    }

    /// (−1)^(i+j) times the (i, j) minor.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<RatFuncMu> {
        self.require_square()?;
        if i == 0 || i > self.rows || j == 0 || j > self.cols {
            return Err(Error::Index(format!("({i},{j})")));
        }
        let m = self.minor_det(&MinorSpec::new(vec![i], vec![j]))?;
        Ok(if (i + j) % 2 == 0 { m } else { -m })
    }

    /// Unique solution of A·x = b; a singular A is an error.
    pub fn solve(&self, b: &[RatFuncMu]) -> Result<Vec<RatFuncMu>> {
        self.require_square()?;
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("right side of length {} for {} rows", b.len(), self.rows)));
        }
        let n = self.rows;
        let mut aug = Vec::with_capacity(n);
        for i in 1..=n {
            let mut line: Vec<&RatFuncMu> = (1..=n).map(|j| self.get(i, j)).collect();
            line.push(&b[i - 1]);
            // Row scaling leaves the solution unchanged.
            let (ints, _) = bareiss::clear_line(&line);
            aug.push(ints);
        }
        solve_int(aug)
    }

    /// A·x for a column vector.
    pub fn apply(&self, x: &[RatFuncMu]) -> Result<Vec<RatFuncMu>> {
        if x.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((1..=self.rows)
            .map(|i| {
                let mut acc = RatFuncMu::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j + 1);
                    if !a.is_zero() && !xj.is_zero() {
                        acc = &acc + &(a * xj);
                    }
                }
                acc
            })
            .collect())
    }
}

fn laplace(m: &ExactMatrix) -> RatFuncMu {
    let n = m.rows;
    if n == 0 {
        return RatFuncMu::one();
    }
    if n == 1 {
        return m.get(1, 1).clone();
    }
    let mut acc = RatFuncMu::zero();
    let rows: Vec<usize> = (2..=n).collect();
    for j in 1..=n {
        let a = m.get(1, j);
        if a.is_zero() {
            continue;
        }
        let cols: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
        let term = a * &laplace(&m.select(&rows, &cols));
        acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols).map(|j| self.get(i, j).pretty()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
