use std::fmt;

use super::bits::BitVec;

/// Dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Elementary row operation recorded during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// `rows[dst] ^= rows[src]`
    Add {
        src: usize,
        dst: usize,
    },
}

/// Result of [`BitMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: BitMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    pub ops: Vec<RowOp>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
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
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols }
    }

    /// Parses rows of `0`/`1` strings; panics on malformed input (test helper).
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| BitVec::from_str01(r).expect("0/1 string"))
                .collect(),
            cols,
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.nrows(), other.ncols());
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.iter_ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows() == self.cols && *self == self.transpose()
    }

    pub fn apply(&mut self, op: RowOp) {
        match op {
            RowOp::Swap(i, j) => self.rows.swap(i, j),
            RowOp::Add { src, dst } => {
                let s = self.rows[src].clone();
                self.rows[dst].xor_assign(&s);
            }
        }
    }

    /// Replays a recorded sequence of row operations.
    pub fn apply_ops(&self, ops: &[RowOp]) -> BitMatrix {
        let mut m = self.clone();
        for &op in ops {
            m.apply(op);
        }
        m
    }

    /// Gauss-Jordan reduction to row-reduced echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut ops = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.nrows() {
                break;
            }
            let Some(p) = (r..m.nrows()).find(|&i| m.rows[i].get(c)) else {
                continue;
            };
            if p != r {
                m.rows.swap(p, r);
                ops.push(RowOp::Swap(p, r));
            }
            let pivot_row = m.rows[r].clone();
            for i in 0..m.nrows() {
                if i != r && m.rows[i].get(c) {
                    m.rows[i].xor_assign(&pivot_row);
                    ops.push(RowOp::Add { src: r, dst: i });
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            pivots,
            ops,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{ v : self · v = 0 }`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let red = self.rref();
        let pivot_set: Vec<bool> = {
            let mut p = vec![false; self.cols];
            for &c in &red.pivots {
                p[c] = true;
            }
            p
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !pivot_set[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &pc) in red.pivots.iter().enumerate() {
                if red.matrix.get(r, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution `x` of `self · x = rhs`, if any.
    pub fn solve(&self, rhs: &BitVec) -> Option<BitVec> {
        assert_eq!(rhs.len(), self.nrows());
        let aug_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.push(rhs.get(i));
                row
            })
            .collect();
        let aug = BitMatrix::from_rows(aug_rows, self.cols + 1);
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &pc) in red.pivots.iter().enumerate() {
            if red.matrix.get(r, self.cols) {
                x.set(pc, true);
            }
        }
        Some(x)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.nrows(), other.nrows());
        BitMatrix::from_rows(
            self.rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
            self.cols + other.cols,
        )
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> BitMatrix {
        BitMatrix::from_rows(
            self.rows.iter().map(|r| r.slice(start, end)).collect(),
            end - start,
        )
    }

    /// Reorders columns so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        let rows = self
            .rows
            .iter()
            .map(|r| BitVec::from_bools(&perm.iter().map(|&p| r.get(p)).collect::<Vec<_>>()))
            .collect();
        BitMatrix::from_rows(rows, self.cols)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}
