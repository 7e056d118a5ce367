//! Dense binary matrices with row reduction over GF(2).

use std::fmt;

use crate::bits::{BitVector, MAX_BITS};
use crate::error::{Error, Result};

/// A `rows × cols` matrix over GF(2), `cols ≤ 64`.
///
/// Each row is packed into a `u64` with column 0 in the most significant
/// position of the `cols`-bit word, matching [`BitVector`]'s encoding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    /// An all-zero matrix. `rows` may be 0 (used for the zero code).
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if cols == 0 || cols > MAX_BITS {
            return Err(Error::Config(format!(
                "matrix width {cols} out of range 1..=64"
            )));
        }
        Ok(Self {
            rows,
            cols,
            data: vec![0; rows],
        })
    }

    pub fn identity(size: usize) -> Result<Self> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Builds a matrix from 0/1 rows of equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let vectors = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                if r.len() != cols {
                    return Err(Error::Length {
                        expected: cols,
                        found: r.len(),
                    });
                }
                BitVector::from_bits(r)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bit_vectors(cols, &vectors)
    }

    pub fn from_bit_vectors(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Length {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.data[i] = r.as_u64();
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn col_mask(&self, c: usize) -> u64 {
        1u64 << (self.cols - 1 - c)
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        ((self.data[r] & self.col_mask(c)) != 0) as u8
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        let m = self.col_mask(c);
        if v & 1 == 1 {
            self.data[r] |= m;
        } else {
            self.data[r] &= !m;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_u64(self.cols, self.data[r]).expect("row fits its width")
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Column `c` as a vector of length `rows`. Panics when `rows == 0`.
    pub fn column(&self, c: usize) -> BitVector {
        let bits: Vec<u8> = (0..self.rows).map(|r| self.get(r, c)).collect();
        BitVector::from_bits(&bits).expect("nonempty column")
    }

    pub fn transpose(&self) -> Result<Self> {
        let mut t = Self::zeros(self.cols, self.rows)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        Ok(t)
    }

    /// Reduced row-echelon form and its pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            let m = self.col_mask(c);
            let Some(p) = (lead..rows.len()).find(|&i| rows[i] & m != 0) else {
                continue;
            };
            rows.swap(lead, p);
            let pivot_row = rows[lead];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != lead && *row & m != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(c);
            lead += 1;
            if lead == rows.len() {
                break;
            }
        }
        rows.truncate(lead);
        (
            Gf2Matrix {
                rows: lead,
                cols: self.cols,
                data: rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().0.rows
    }

    /// Pivot columns if the matrix is already in reduced row-echelon form
    /// with no zero rows.
    pub fn rref_pivots(&self) -> Option<Vec<usize>> {
        let mut pivots = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            if self.data[r] == 0 {
                return None;
            }
            let lead = self.data[r].leading_zeros() as usize - (64 - self.cols);
            if pivots.last().is_some_and(|&p| lead <= p) {
                return None;
            }
            pivots.push(lead);
        }
        for (r, &p) in pivots.iter().enumerate() {
            if (0..self.rows).any(|o| o != r && self.get(o, p) == 1) {
                return None;
            }
        }
        Some(pivots)
    }

    /// `v · Mᵀ`, i.e. the syndrome of `v` under a parity-check matrix.
    pub fn syndrome(&self, v: &BitVector) -> Result<u64> {
        crate::bits::check_len(self.cols, v.len())?;
        let mut s = 0u64;
        for &row in &self.data {
            s = (s << 1) | ((row & v.as_u64()).count_ones() as u64 & 1);
        }
        Ok(s)
    }

    /// All `2^rows` XOR-combinations of the rows, sorted ascending.
    pub fn row_span(&self) -> Vec<BitVector> {
        let mut words: Vec<u64> = (0..1u64 << self.rows)
            .map(|m| {
                self.data
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (m >> i) & 1 == 1)
                    .fold(0, |acc, (_, r)| acc ^ r)
            })
            .collect();
        words.sort_unstable();
        words
            .into_iter()
            .map(|w| BitVector::from_u64(self.cols, w).expect("span word fits"))
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}
