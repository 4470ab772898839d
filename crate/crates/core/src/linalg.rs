//! Exact rational scalars and sparse matrices.
//!
//! Everything downstream (cohomology dimensions, chain-map certificates,
//! homotopy residuals) reduces to rank/kernel computations performed here
//! over arbitrary-precision rationals. No floating point anywhere.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::Error;

/// Exact scalar: arbitrary-precision rational, always kept in lowest terms
/// with positive denominator (the `num` crate maintains both invariants).
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse the `"p/q"` / `"p"` wire form.
pub fn rational_from_str(s: &str) -> Result<Rational, Error> {
    s.parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Immutable sparse matrix over the rationals. Only nonzero entries are
/// stored; indices are checked on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, {} nnz)", self.rows, self.cols, self.entries.len())
    }
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn from_entries<I>(rows: usize, cols: usize, it: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in it {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r},{c}) out of bounds for {rows}x{cols} matrix"
                )));
            }
            if !v.is_zero() {
                m.entries.insert((r, c), v);
            }
        }
        Ok(m)
    }

    /// Dense integer rows, mostly for tests and the small fixed matrices.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nr, nc);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((i, j), rat(v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v *= s;
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        // index other by row for the sparse product
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    out.add_to(r, c, &(a * b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        m.entries = self.entries.clone();
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r, c + self.cols), v.clone());
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rows];
        for r in 0..self.rows {
            if let Some(x) = self.entries.get(&(r, c)) {
                v[r] = x.clone();
            }
        }
        v
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> SparseMatrix {
        let mut m = Self::zero(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((r, c), v.clone());
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact basis of `ker M`, one vector per free column of the reduced
    /// row-echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
        for (row, &col) in rref.pivot_cols.iter().enumerate() {
            pivot_of_col.insert(col, row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pcol) in rref.pivot_cols.iter().enumerate() {
                if let Some(x) = rref.rows[row].get(&free) {
                    v[pcol] = -x.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn rref(&self) -> Rref {
        let mut work: Vec<BTreeMap<usize, Rational>> = Vec::with_capacity(self.rows);
        for _ in 0..self.rows {
            work.push(BTreeMap::new());
        }
        for (&(r, c), v) in &self.entries {
            work[r].insert(c, v.clone());
        }
        let mut pivot_cols = Vec::new();
        let mut done_rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
        for col in 0..self.cols {
            // pick the sparsest remaining row with a nonzero in this column
            let Some(pick) = work
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&col))
                .min_by_key(|(_, r)| r.len())
                .map(|(i, _)| i)
            else {
                continue;
            };
            let mut prow = work.swap_remove(pick);
            let inv = {
                let p = prow.get(&col).unwrap().clone();
                p.recip()
            };
            if !inv.is_one() {
                for v in prow.values_mut() {
                    *v *= &inv;
                }
            }
            // eliminate below
            for r in work.iter_mut() {
                eliminate(r, &prow, col);
            }
            // eliminate above
            for r in done_rows.iter_mut() {
                eliminate(r, &prow, col);
            }
            pivot_cols.push(col);
            done_rows.push(prow);
        }
        Rref { rank: pivot_cols.len(), pivot_cols, rows: done_rows }
    }
}

fn eliminate(row: &mut BTreeMap<usize, Rational>, pivot_row: &BTreeMap<usize, Rational>, col: usize) {
    let Some(factor) = row.get(&col).cloned() else {
        return;
    };
    for (c, pv) in pivot_row {
        let newv = match row.get(c) {
            Some(x) => x - &factor * pv,
            None => -(&factor * pv),
        };
        if newv.is_zero() {
            row.remove(c);
        } else {
            row.insert(*c, newv);
        }
    }
}

struct Rref {
    rank: usize,
    pivot_cols: Vec<usize>,
    rows: Vec<BTreeMap<usize, Rational>>,
}
