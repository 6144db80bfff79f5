//! Dense matrices over exact rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Row-major dense matrix of [`Rational`] entries. Indices are 0-based;
/// vertex numbering (1-based) lives in the digraph layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer matrices (tests and examples).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(rows).expect("rectangular integer rows")
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

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RMatrix) -> Result<RMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &RMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<RMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(RMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> RMatrix {
        RMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> RMatrix {
        let mut out = RMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// `P A Pᵀ` where `P` sends index `i` to `perm[i]`.
    pub fn permute_similar(&self, perm: &[usize]) -> Result<RMatrix> {
        let n = self.ensure_square()?;
        check_permutation(perm, n)?;
        let mut out = RMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(perm[i], perm[j])] = self[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Sub-matrix on the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RMatrix {
        let mut out = RMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<RMatrix>> {
        let n = self.ensure_square()?;
        let mut aug = RMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(Some(red.select(&rows, &cols)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Zero diagonal and `a_ij != 0 <=> a_ji != 0`.
    pub fn is_combinatorially_symmetric_zero_diagonal(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        (0..n).all(|i| {
            self[(i, i)].is_zero()
                && (i + 1..n).all(|j| self[(i, j)].is_zero() == self[(j, i)].is_zero())
        })
    }

    /// Boolean zero/nonzero pattern.
    pub fn pattern(&self) -> Vec<bool> {
        self.data.iter().map(|x| !x.is_zero()).collect()
    }

    /// Parse the matrix text format. Lines starting with `#` (after optional
    /// whitespace) and blank lines are skipped. The first remaining line holds
    /// `n` or `n m`; the next `n` lines hold the rows.
    pub fn parse(text: &str) -> Result<RMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Parse { line: hline, message: format!("invalid dimension {s:?}") })
        };
        let (rows, cols) = match dims.as_slice() {
            [n] => {
                let n = parse_dim(n)?;
                (n, n)
            }
            [n, m] => (parse_dim(n)?, parse_dim(m)?),
            _ => {
                return Err(Error::Parse { line: hline, message: "header must be `n` or `n m`".into() })
            }
        };
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (lno, line) = lines.next().ok_or(Error::Parse {
                line: hline,
                message: format!("expected {rows} rows, found {r}"),
            })?;
            let before = data.len();
            for tok in line.split_whitespace() {
                let v = parse_rational(tok).map_err(|e| Error::Parse { line: lno, message: e.to_string() })?;
                data.push(v);
            }
            if data.len() - before != cols {
                return Err(Error::Parse {
                    line: lno,
                    message: format!("expected {cols} entries, found {}", data.len() - before),
                });
            }
        }
        if let Some((lno, _)) = lines.next() {
            return Err(Error::Parse { line: lno, message: "trailing data after matrix rows".into() });
        }
        RMatrix::new(rows, cols, data)
    }

    /// Canonical text form: header line then one row per line, entries in
    /// lowest terms separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = if self.is_square() {
            format!("{}\n", self.rows)
        } else {
            format!("{} {}\n", self.rows, self.cols)
        };
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Rows of `"p/q"` strings, the JSON representation.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(format_rational).collect()).collect()
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::DimensionMismatch(format!("permutation of length {} for n={n}", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::DimensionMismatch("not a permutation".into()));
        }
    }
    Ok(())
}

impl std::ops::Index<(usize, usize)> for RMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn mat_mul(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
    a.mul(b)
}

pub fn rank(a: &RMatrix) -> usize {
    a.rank()
}
