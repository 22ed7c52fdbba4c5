//! Dense linear algebra over GF(2) on row-major [`BitVec`] matrices.

use crate::bits::BitVec;

/// Row-major binary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share `cols`.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows.len());
        let mut out = BitMatrix::zeros(self.rows.len(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out.rows[i].xor_assign(&other.rows[j]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i != r && self.rows[i].get(c) {
                    self.rows[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.rows[r].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows.len());
        // Augment each row with its right-hand side bit.
        let mut aug = BitMatrix::zeros(self.rows.len(), self.cols + 1);
        for (i, row) in self.rows.iter().enumerate() {
            aug.rows[i].splice(0, row);
            aug.rows[i].set(self.cols, b.get(i));
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if aug.rows[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows.len();
        assert_eq!(n, self.cols);
        if n == 0 {
            return Some(BitMatrix::zeros(0, 0));
        }
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for (i, row) in self.rows.iter().enumerate() {
            aug.rows[i].splice(0, row);
            aug.rows[i].set(n + i, true);
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let rows = aug.rows.iter().map(|r| r.slice(n, n)).collect();
        Some(BitMatrix::from_rows(rows, n))
    }

    /// Linearly independent subset of rows spanning the same space, in order.
    pub fn independent_rows(&self) -> Vec<BitVec> {
        let mut basis = Echelon::new(self.cols);
        self.rows
            .iter()
            .filter(|r| basis.insert(r))
            .cloned()
            .collect()
    }
}

/// Incremental echelon basis used to test span membership.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<(usize, BitVec)>,
    cols: usize,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false when it was already present.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}
