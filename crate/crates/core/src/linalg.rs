//! Dense linear algebra over GF(2) with bit-packed rows.

use std::fmt;

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + tz)
            })
        })
    }

    /// The first `len` entries.
    pub fn prefix(&self, len: usize) -> Self {
        assert!(len <= self.len);
        Self::from_indices(len, self.ones().take_while(|&i| i < len))
    }

    /// Extends with zeros to `len` entries.
    pub fn extended(&self, len: usize) -> Self {
        assert!(len >= self.len);
        Self::from_indices(len, self.ones())
    }

    /// `[self | other]`
    pub fn concat(&self, other: &Self) -> Self {
        let len = self.len + other.len;
        Self::from_indices(len, self.ones().chain(other.ones().map(|i| i + self.len)))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVector({s})")
    }
}

/// Which columns to prefer as pivots during elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    /// Leftmost columns first.
    #[default]
    Canonical,
    /// Rightmost columns first.
    Reversed,
}

impl PivotOrder {
    fn columns(self, cols: usize) -> Vec<usize> {
        match self {
            PivotOrder::Canonical => (0..cols).collect(),
            PivotOrder::Reversed => (0..cols).rev().collect(),
        }
    }
}

/// A `rows × cols` matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitVector>,
    cols: usize,
}

/// Reduced row echelon form with the pivot column of each leading row.
struct Echelon {
    rows: Vec<BitVector>,
    rhs: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].flip(i);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Gf2Matrix { rows, cols }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.rows[i].flip(j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_indices(self.nrows(), (0..self.nrows()).filter(|&i| self.get(i, j)))
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVector::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            let parity = row
                .words
                .iter()
                .zip(&v.words)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.flip(i);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            rows,
            cols: other.cols,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Gf2Matrix {
            rows,
            cols: self.cols,
        }
    }

    /// The leading `rows × cols` block.
    pub fn submatrix(&self, rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: self.rows[..rows].iter().map(|r| r.prefix(cols)).collect(),
            cols,
        }
    }

    fn echelon(&self, rhs: Vec<BitVector>, order: PivotOrder) -> Echelon {
        let mut rows = self.rows.clone();
        let mut rhs = rhs;
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in order.columns(self.cols) {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            rhs.swap(next, found);
            let (pivot_row, pivot_rhs) = (rows[next].clone(), rhs[next].clone());
            for r in 0..rows.len() {
                if r != next && rows[r].get(col) {
                    rows[r].xor_assign(&pivot_row);
                    rhs[r].xor_assign(&pivot_rhs);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        Echelon { rows, rhs, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon(vec![BitVector::zeros(0); self.nrows()], PivotOrder::Canonical)
            .pivots
            .len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<BitVector> {
        let ech = self.echelon(vec![BitVector::zeros(0); self.nrows()], PivotOrder::Canonical);
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.cols);
                v.flip(f);
                for (r, &c) in ech.pivots.iter().enumerate() {
                    if ech.rows[r].get(f) {
                        v.flip(c);
                    }
                }
                v
            })
            .collect()
    }

    /// A solution of `A x = b` with every free variable set to zero, pivots
    /// chosen in the given column order; `None` if the system is inconsistent.
    pub fn solve(&self, b: &BitVector, order: PivotOrder) -> Option<BitVector> {
        assert_eq!(b.len(), self.nrows());
        let rhs = (0..self.nrows())
            .map(|i| BitVector::from_indices(1, b.get(i).then_some(0)))
            .collect();
        let ech = self.echelon(rhs, order);
        let rank = ech.pivots.len();
        if ech.rhs[rank..].iter().any(|r| !r.is_zero()) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &c) in ech.pivots.iter().enumerate() {
            if !ech.rhs[r].is_zero() {
                x.flip(c);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let ident = Gf2Matrix::identity(n);
        let ech = self.echelon(ident.rows, PivotOrder::Canonical);
        if ech.pivots.len() != n {
            return None;
        }
        // row r of the echelon form is the unit vector e_(pivots[r])
        let mut rows = vec![BitVector::zeros(n); n];
        for (r, &c) in ech.pivots.iter().enumerate() {
            rows[c] = ech.rhs[r].clone();
        }
        Some(Gf2Matrix { rows, cols: n })
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.nrows(), self.cols)?;
        for row in &self.rows {
            let s: String = (0..self.cols).map(|j| if row.get(j) { '1' } else { '.' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[BitVector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => Gf2Matrix::from_rows(v.len(), vectors.to_vec()).rank(),
    }
}
