use serde::{Deserialize, Serialize};

use super::bitvec::BitVector;
use super::matrix::BinaryMatrix;
use crate::error::{Error, Result};

/// Largest code dimension `min_distance` will enumerate.
pub const MIN_DISTANCE_MAX_RANK: usize = 28;

/// A binary linear code given by a (possibly rank-deficient) generator matrix.
///
/// The nominal dimension is the generator's row count; the code itself has
/// `2^rank` codewords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CodeJson", from = "CodeJson")]
pub struct LinearCode {
    generator: BinaryMatrix,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    generator: BinaryMatrix,
}

impl From<LinearCode> for CodeJson {
    fn from(c: LinearCode) -> Self {
        CodeJson {
            generator: c.generator,
        }
    }
}

impl From<CodeJson> for LinearCode {
    fn from(j: CodeJson) -> Self {
        LinearCode::new(j.generator)
    }
}

impl LinearCode {
    pub fn new(generator: BinaryMatrix) -> Self {
        let rank = generator.rank();
        LinearCode { generator, rank }
    }

    /// The 0-dimensional code `{0^m}`.
    pub fn zero(m: usize) -> Self {
        Self::new(BinaryMatrix::zeros(0, m))
    }

    /// The whole space `F_2^m`.
    pub fn full(m: usize) -> Self {
        Self::new(BinaryMatrix::identity(m))
    }

    pub fn repetition(m: usize) -> Self {
        let mut g = BinaryMatrix::zeros(1, m);
        for j in 0..m {
            g.set(0, j, true);
        }
        Self::new(g)
    }

    /// The systematic [7,4] Hamming code.
    pub fn hamming_7_4() -> Self {
        Self::new(
            BinaryMatrix::from_bit_strs(&["1000110", "0100011", "0010111", "0001101"])
                .expect("constant rows"),
        )
    }

    #[inline]
    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    /// Nominal dimension (generator rows).
    #[inline]
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    #[inline]
    pub fn blocklength(&self) -> usize {
        self.generator.cols()
    }

    /// Effective dimension, `log2 |C|`.
    #[inline]
    pub fn dimension(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn redundancy(&self) -> usize {
        self.blocklength() - self.rank
    }

    pub fn rate(&self) -> f64 {
        if self.blocklength() == 0 {
            0.0
        } else {
            self.rank as f64 / self.blocklength() as f64
        }
    }

    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch {
                context: "encode message",
                expected: self.k(),
                found: message.len(),
            });
        }
        self.generator.vec_mul(message)
    }

    /// A basis of the code: the nonzero rows of the reduced generator.
    pub fn basis(&self) -> BinaryMatrix {
        let (r, piv) = self.generator.rref();
        r.top_rows(piv.len())
    }

    /// Parity-check matrix `H` with `G·Hᵀ = 0` and full row rank `m − rank`.
    ///
    /// Each non-pivot column `q` of the reduced generator contributes the row
    /// `e_q + Σ_{i : R[i][q] = 1} e_{pivot(i)}`, which is already expressed in
    /// the original coordinate order.
    pub fn parity_check(&self) -> BinaryMatrix {
        let m = self.blocklength();
        let (r, pivots) = self.generator.rref();
        let mut is_pivot = vec![false; m];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut h = BinaryMatrix::zeros(m - pivots.len(), m);
        let free = (0..m).filter(|&c| !is_pivot[c]);
        for (row, q) in free.enumerate() {
            h.set(row, q, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, q) {
                    h.set(row, p, true);
                }
            }
        }
        h
    }

    /// Minimum Hamming weight of a nonzero codeword, by Gray-code enumeration
    /// of all `2^rank` codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.rank == 0 {
            return Err(Error::invalid(
                "minimum distance of a 0-dimensional code is undefined",
            ));
        }
        if self.rank > MIN_DISTANCE_MAX_RANK {
            return Err(Error::guard(
                "min_distance code dimension",
                self.rank as u64,
                MIN_DISTANCE_MAX_RANK as u64,
            ));
        }
        let basis = self.basis();
        let stride = basis.row_words(0).len();
        let mut word = vec![0u64; stride];
        let mut best = usize::MAX;
        for step in 1u64..(1u64 << self.rank) {
            let flip = step.trailing_zeros() as usize;
            for (a, b) in word.iter_mut().zip(basis.row_words(flip)) {
                *a ^= b;
            }
            let w: usize = word.iter().map(|x| x.count_ones() as usize).sum();
            best = best.min(w);
        }
        Ok(best)
    }

    /// Direct sum `{(x, y) : x ∈ self, y ∈ other}` with block-diagonal generator.
    pub fn direct_sum(&self, other: &LinearCode) -> LinearCode {
        LinearCode {
            generator: self.generator.block_diagonal(&other.generator),
            rank: self.rank + other.rank,
        }
    }

    /// All codewords as integers; only for short codes of small dimension.
    pub fn codewords_u64(&self) -> Vec<u64> {
        assert!(self.blocklength() <= 64 && self.rank <= MIN_DISTANCE_MAX_RANK);
        let basis = self.basis();
        let mut out = Vec::with_capacity(1 << self.rank);
        let mut word = 0u64;
        out.push(0);
        for step in 1u64..(1u64 << self.rank) {
            word ^= basis.row_u64(step.trailing_zeros() as usize);
            out.push(word);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.gen());
            }
        }
        m
    }

    #[test]
    fn encode_trivial_cases() {
        let c = LinearCode::full(5);
        let msg = BitVector::from_bit_str("10110").unwrap();
        assert_eq!(c.encode(&msg).unwrap(), msg);
        let h = LinearCode::hamming_7_4();
        assert!(h.encode(&BitVector::zeros(4)).unwrap().is_zero());
        assert!(h.encode(&BitVector::zeros(5)).is_err());
    }

    #[test]
    fn encode_matches_row_summation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_matrix(&mut rng, 4, 8);
        let code = LinearCode::new(g.clone());
        for _ in 0..20 {
            let msg = BitVector::from_u64(4, rng.gen::<u64>() & 0xF);
            let mut expect = BitVector::zeros(8);
            for i in 0..4 {
                if msg.get(i) {
                    expect.xor_assign(&g.row(i));
                }
            }
            assert_eq!(code.encode(&msg).unwrap(), expect);
        }
    }

    #[test]
    fn encode_is_linear_exhaustively() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let code = LinearCode::new(random_matrix(&mut rng, 6, 11));
        for x in 0u64..64 {
            for y in 0u64..64 {
                let ex = code.encode(&BitVector::from_u64(6, x)).unwrap();
                let ey = code.encode(&BitVector::from_u64(6, y)).unwrap();
                let exy = code.encode(&BitVector::from_u64(6, x ^ y)).unwrap();
                assert_eq!(ex.xor(&ey), exy);
            }
        }
    }

    #[test]
    fn parity_check_of_repetition_and_identity() {
        let h = LinearCode::repetition(2).parity_check();
        assert_eq!(h, BinaryMatrix::from_bit_strs(&["11"]).unwrap());
        assert_eq!(LinearCode::full(6).parity_check().rows(), 0);
        assert_eq!(LinearCode::zero(3).parity_check(), BinaryMatrix::identity(3));
    }

    #[test]
    fn parity_check_annihilates_random_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let code = LinearCode::new(random_matrix(&mut rng, 5, 10));
            let h = code.parity_check();
            assert!(code.generator().mul(&h.transpose()).unwrap().is_zero());
            assert_eq!(h.rank(), 10 - code.dimension());
            assert_eq!(h.rows(), 10 - code.dimension());
        }
    }

    #[test]
    fn min_distance_known_codes() {
        assert_eq!(LinearCode::repetition(5).min_distance().unwrap(), 5);
        assert_eq!(LinearCode::full(6).min_distance().unwrap(), 1);
        assert_eq!(LinearCode::hamming_7_4().min_distance().unwrap(), 3);
        assert!(LinearCode::zero(4).min_distance().is_err());
    }

    #[test]
    fn hamming_distance_by_enumeration() {
        let h = LinearCode::hamming_7_4();
        let min = (1u64..16)
            .map(|x| h.encode(&BitVector::from_u64(4, x)).unwrap().weight())
            .min()
            .unwrap();
        assert_eq!(min, 3);
    }

    #[test]
    fn direct_sum_of_repetitions() {
        let r = LinearCode::repetition(2);
        let s = r.direct_sum(&r);
        let mut words = s.codewords_u64();
        words.sort();
        assert_eq!(words, vec![0b0000, 0b0011, 0b1100, 0b1111]);
        let empty = LinearCode::new(BinaryMatrix::zeros(0, 0));
        assert_eq!(r.direct_sum(&empty), r);
        assert_eq!(empty.direct_sum(&r), r);
    }

    #[test]
    fn direct_sum_rate_and_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let a = LinearCode::new(random_matrix(&mut rng, 3, 6));
            let b = LinearCode::new(random_matrix(&mut rng, 2, 5));
            let s = a.direct_sum(&b);
            assert_eq!(s.codewords_u64().len(), a.codewords_u64().len() * b.codewords_u64().len());
            assert_eq!(s.blocklength(), 11);
            assert_eq!(s.k(), 5);
            if a.dimension() > 0 && b.dimension() > 0 {
                let d = a.min_distance().unwrap().min(b.min_distance().unwrap());
                assert_eq!(s.min_distance().unwrap(), d);
            }
        }
    }

    #[test]
    fn json_round_trip_recomputes_rank() {
        let c = LinearCode::hamming_7_4();
        let s = serde_json::to_string(&c).unwrap();
        let back: LinearCode = serde_json::from_str(&s).unwrap();
        assert_eq!(back.dimension(), 4);
        assert_eq!(back, c);
    }
}
