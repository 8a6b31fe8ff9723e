use std::fmt;

use serde::{Deserialize, Serialize};

use super::bitvec::{words_for, words_to_hex, BitVector, WORD_BITS};
use crate::error::{Error, Result};

/// Dense matrix over F_2 with bit-packed rows.
///
/// Row `i` occupies `stride` words starting at `i * stride`; bit `j` of a row
/// is bit `j % 64` of word `j / 64`. Padding bits are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Wire form: `{"rows": int, "cols": int, "row_hex": [string, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub row_hex: Vec<String>,
}

impl From<BinaryMatrix> for MatrixJson {
    fn from(m: BinaryMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            row_hex: (0..m.rows).map(|i| words_to_hex(m.row_words(i))).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for BinaryMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.row_hex.len() != j.rows {
            return Err(Error::Parse(format!(
                "matrix declares {} rows but lists {}",
                j.rows,
                j.row_hex.len()
            )));
        }
        let rows = j
            .row_hex
            .iter()
            .map(|h| BitVector::from_hex(j.cols, h))
            .collect::<Result<Vec<_>>>()?;
        BinaryMatrix::from_rows(j.cols, &rows)
    }
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BinaryMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row",
                    expected: cols,
                    found: r.len(),
                });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Rows given as integers (bit `j` = column `j`); `cols` must be at most 64.
    pub fn from_u64_rows(cols: usize, rows: &[u64]) -> Self {
        let vs: Vec<BitVector> = rows.iter().map(|&r| BitVector::from_u64(cols, r)).collect();
        Self::from_rows(cols, &vs).expect("row widths match by construction")
    }

    /// Rows as `0`/`1` strings, column 0 first.
    pub fn from_bit_strs(rows: &[&str]) -> Result<Self> {
        let vs = rows
            .iter()
            .map(|s| BitVector::from_bit_str(s))
            .collect::<Result<Vec<_>>>()?;
        let cols = vs.first().map_or(0, |v| v.len());
        Self::from_rows(cols, &vs)
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
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    /// Row `i` as an integer; only for matrices at most 64 columns wide.
    #[inline]
    pub fn row_u64(&self, i: usize) -> u64 {
        assert!(self.cols <= 64, "row_u64 on a {}-column matrix", self.cols);
        if self.stride == 0 {
            0
        } else {
            self.data[i]
        }
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let idx = i * self.stride + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        if src == dst {
            return;
        }
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, w) in b.iter_mut().zip(a) {
            *d ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "horizontal concatenation",
                expected: self.rows,
                found: other.rows,
            });
        }
        let rows: Vec<BitVector> = (0..self.rows)
            .map(|i| self.row(i).concat(&other.row(i)))
            .collect();
        BinaryMatrix::from_rows(self.cols + other.cols, &rows)
    }

    /// `self` stacked on top of `other`.
    pub fn vconcat(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vertical concatenation",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BinaryMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// `[[self, 0], [0, other]]`.
    pub fn block_diagonal(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let cols = self.cols + other.cols;
        let left_pad = BitVector::zeros(self.cols);
        let right_pad = BitVector::zeros(other.cols);
        let mut rows = Vec::with_capacity(self.rows + other.rows);
        for i in 0..self.rows {
            rows.push(self.row(i).concat(&right_pad));
        }
        for i in 0..other.rows {
            rows.push(left_pad.concat(&other.row(i)));
        }
        BinaryMatrix::from_rows(cols, &rows).expect("widths agree by construction")
    }

    /// First `count` rows.
    pub fn top_rows(&self, count: usize) -> BinaryMatrix {
        assert!(count <= self.rows);
        BinaryMatrix {
            rows: count,
            cols: self.cols,
            stride: self.stride,
            data: self.data[..count * self.stride].to_vec(),
        }
    }

    /// First `count` columns.
    pub fn left_cols(&self, count: usize) -> BinaryMatrix {
        assert!(count <= self.cols);
        let rows: Vec<BitVector> = (0..self.rows).map(|i| self.row(i).slice(0..count)).collect();
        BinaryMatrix::from_rows(count, &rows).expect("widths agree by construction")
    }

    pub fn add(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix addition",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            let acc = out.row_words_mut(i);
            for k in row.iter_ones() {
                for (a, b) in acc.iter_mut().zip(other.row_words(k)) {
                    *a ^= b;
                }
            }
        }
        Ok(out)
    }

    /// Column-vector product `self · x`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(x.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1;
            if parity == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Row-vector product `x · self`: the sum of the rows selected by `x`.
    pub fn vec_mul(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "vector-matrix product",
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut acc = vec![0u64; self.stride];
        for i in x.iter_ones() {
            for (a, b) in acc.iter_mut().zip(self.row_words(i)) {
                *a ^= b;
            }
        }
        Ok(BitVector::from_words(self.cols, acc))
    }

    /// Reduced row echelon form with leftmost pivots, eliminating with the
    /// topmost available row. Returns the reduced matrix (zero rows last) and
    /// the pivot column of each nonzero row.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(p, next);
            for r in 0..m.rows {
                if r != next && m.get(r, col) {
                    m.xor_row_into(next, r);
                }
            }
            pivots.push(col);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(BinaryMatrix::identity(9).rank(), 9);
        assert_eq!(BinaryMatrix::zeros(4, 7).rank(), 0);
        assert_eq!(BinaryMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_detects_dependent_rows() {
        let m = BinaryMatrix::from_bit_strs(&["1100", "0110", "1010"]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_uses_leftmost_pivots() {
        let m = BinaryMatrix::from_bit_strs(&["0110", "0101"]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![1, 2]);
        assert_eq!(r.row(0), BitVector::from_bit_str("0101").unwrap());
        assert_eq!(r.row(1), BitVector::from_bit_str("0011").unwrap());
    }

    #[test]
    fn transpose_and_products() {
        let a = BinaryMatrix::from_bit_strs(&["110", "011"]).unwrap();
        let t = a.transpose();
        assert_eq!(t.rows(), 3);
        assert_eq!(t.transpose(), a);
        let x = BitVector::from_bit_str("101").unwrap();
        // columns-of-a view and rows-of-transpose view agree
        assert_eq!(a.mul_vec(&x).unwrap(), t.vec_mul(&x).unwrap());
        let aat = a.mul(&t).unwrap();
        assert_eq!(aat, BinaryMatrix::from_bit_strs(&["01", "10"]).unwrap());
    }

    #[test]
    fn wide_rows_survive_concatenation() {
        let a = BinaryMatrix::identity(70);
        let b = a.hconcat(&a).unwrap();
        assert_eq!(b.cols(), 140);
        assert!(b.get(69, 139));
        assert_eq!(b.rank(), 70);
        let c = a.block_diagonal(&BinaryMatrix::identity(3));
        assert_eq!(c.rank(), 73);
        assert!(c.get(72, 72));
    }

    #[test]
    fn json_shape() {
        let m = BinaryMatrix::from_bit_strs(&["1100", "0001"]).unwrap();
        let j = serde_json::to_string(&m).unwrap();
        assert_eq!(j, r#"{"rows":2,"cols":4,"row_hex":["3","8"]}"#);
        let back: BinaryMatrix = serde_json::from_str(&j).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_row_count_mismatch() {
        let bad = r#"{"rows":3,"cols":4,"row_hex":["3","8"]}"#;
        assert!(serde_json::from_str::<BinaryMatrix>(bad).is_err());
    }

    #[test]
    fn dimension_errors() {
        let a = BinaryMatrix::zeros(2, 3);
        let b = BinaryMatrix::zeros(3, 2);
        assert!(a.hconcat(&b).is_err());
        assert!(a.vconcat(&b).is_err());
        assert!(a.add(&b).is_err());
        assert!(b.mul(&b).is_err());
        assert!(a.mul_vec(&BitVector::zeros(2)).is_err());
    }
}
