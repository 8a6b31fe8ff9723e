//! Code families: the Wozencraft ensemble and its augmented, punctured and
//! truncated variants, quasicyclic codes, uniform random linear codes, and
//! block-diagonal concatenation.
//!
//! Generators act on row vectors (`x ↦ x·G`). The Wozencraft code for `α` is
//! `[I | A_α]` where row `i` of `A_α` is `α·x^i`, so the message `x` encodes to
//! `(x, α·x)`. `A_α` is the transpose of [`mul_matrix`], which is written for
//! column vectors.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{mul_matrix, FieldElement, FieldSpec};
use crate::linalg::{low_mask, BinaryMatrix, BitVector, LinearCode};
use crate::seed::{rng_from_seed, TrialRng};

/// Default constant in `t = ceil(c · log2 n)`.
pub const DEFAULT_C: f64 = 3.0;

/// `ceil(c · log2 n)`, zero for `n = 1`.
pub fn rows_for_constant(n: usize, c: f64) -> usize {
    if n <= 1 || c <= 0.0 {
        return 0;
    }
    (c * (n as f64).log2()).ceil() as usize
}

/// Number of random rows appended to the Wozencraft generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rows {
    /// `t = ceil(c · log2 n)`.
    Constant(f64),
    Count(usize),
}

impl Default for Rows {
    fn default() -> Self {
        Rows::Constant(DEFAULT_C)
    }
}

impl Rows {
    pub fn constant(self) -> Option<f64> {
        match self {
            Rows::Constant(c) => Some(c),
            Rows::Count(_) => None,
        }
    }

    pub fn count(self) -> Option<usize> {
        match self {
            Rows::Count(t) => Some(t),
            Rows::Constant(_) => None,
        }
    }
}

/// Parameters of the augmented ensemble.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub n: usize,
    /// Number of uniformly random rows stacked under the Wozencraft generator.
    pub t: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    /// Puncturing/truncation parameter, `0 < k < n`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
}

impl EnsembleParams {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n == 0 || n > crate::gf2::MAX_DEGREE as usize {
            return Err(Error::invalid(format!("inner dimension n = {n} out of range")));
        }
        Ok(EnsembleParams {
            n,
            t,
            c: None,
            k: None,
        })
    }

    /// `t = ceil(c · log2 n)`.
    pub fn with_constant(n: usize, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::invalid(format!("constant c = {c} must be finite and >= 0")));
        }
        let mut p = Self::new(n, rows_for_constant(n, c))?;
        p.c = Some(c);
        Ok(p)
    }

    pub fn with_rows(n: usize, rows: Rows) -> Result<Self> {
        match rows {
            Rows::Constant(c) => Self::with_constant(n, c),
            Rows::Count(t) => Self::new(n, t),
        }
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        check_k(self.n, k)?;
        self.k = Some(k);
        Ok(self)
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::canonical(self.n as u32)
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!("k = {k} must satisfy 0 < k < n = {n}")));
    }
    Ok(())
}

/// One draw `(α, M)` from the augmented ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleSample {
    pub alpha: FieldElement,
    /// `t × 2n` rows appended to the Wozencraft generator.
    pub m_rows: BinaryMatrix,
    pub seed: u64,
    pub params: EnsembleParams,
}

#[derive(Serialize, Deserialize)]
struct SampleJson {
    n: usize,
    t: usize,
    alpha_hex: String,
    m_rows: BinaryMatrix,
    seed: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<usize>,
}

impl Serialize for EnsembleSample {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SampleJson {
            n: self.params.n,
            t: self.params.t,
            alpha_hex: self.alpha.to_hex(),
            m_rows: self.m_rows.clone(),
            seed: self.seed.to_string(),
            c: self.params.c,
            k: self.params.k,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EnsembleSample {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SampleJson::deserialize(d)?;
        let params = EnsembleParams {
            n: j.n,
            t: j.t,
            c: j.c,
            k: j.k,
        };
        let field = params.field().map_err(D::Error::custom)?;
        let bits = u64::from_str_radix(&j.alpha_hex, 16).map_err(D::Error::custom)?;
        let alpha = field.element(bits).map_err(D::Error::custom)?;
        if j.m_rows.rows() != j.t || j.m_rows.cols() != 2 * j.n {
            return Err(D::Error::custom(format!(
                "m_rows is {}x{}, expected {}x{}",
                j.m_rows.rows(),
                j.m_rows.cols(),
                j.t,
                2 * j.n
            )));
        }
        let seed = j.seed.parse().map_err(D::Error::custom)?;
        Ok(EnsembleSample {
            alpha,
            m_rows: j.m_rows,
            seed,
            params,
        })
    }
}

impl EnsembleSample {
    /// The Wozencraft code of `alpha` alone.
    pub fn wozencraft(&self) -> LinearCode {
        wozencraft(&self.alpha)
    }

    /// `G_0 = [I | A_α ; M]`.
    pub fn augmented(&self) -> LinearCode {
        augment(&self.wozencraft(), &self.m_rows).expect("m_rows are 2n wide by construction")
    }
}

/// Uniform `len`-bit vector: `ceil(len/64)` words from the stream, low word first.
pub fn random_bits(rng: &mut TrialRng, len: usize) -> BitVector {
    let words = (0..len.div_ceil(64)).map(|_| rng.next_u64()).collect();
    BitVector::from_words(len, words)
}

/// Uniform `rows × cols` matrix, row by row.
pub fn random_matrix(rng: &mut TrialRng, rows: usize, cols: usize) -> BinaryMatrix {
    let rs: Vec<BitVector> = (0..rows).map(|_| random_bits(rng, cols)).collect();
    BinaryMatrix::from_rows(cols, &rs).expect("widths agree by construction")
}

/// Uniform field element: one word from the stream, masked to `n` bits.
pub fn random_element(rng: &mut TrialRng, field: FieldSpec) -> FieldElement {
    field
        .element(rng.next_u64() & field.mask())
        .expect("masked to n bits")
}

/// Draws `α` then the rows of `M` from the stream seeded by `seed`.
pub fn sample(params: &EnsembleParams, seed: u64) -> Result<EnsembleSample> {
    let field = params.field()?;
    let mut rng = rng_from_seed(seed);
    let alpha = random_element(&mut rng, field);
    let m_rows = random_matrix(&mut rng, params.t, 2 * params.n);
    Ok(EnsembleSample {
        alpha,
        m_rows,
        seed,
        params: params.clone(),
    })
}

/// `A_α`: row `i` is `α · x^i`.
pub fn multiplier_rows(alpha: &FieldElement) -> BinaryMatrix {
    mul_matrix(alpha).transpose()
}

/// `[I_n | A_α]`: the message `x` encodes to `(x, α·x)`.
pub fn wozencraft(alpha: &FieldElement) -> LinearCode {
    let n = alpha.spec().n() as usize;
    let g = BinaryMatrix::identity(n)
        .hconcat(&multiplier_rows(alpha))
        .expect("both blocks have n rows");
    LinearCode::new(g)
}

/// Generator of `code` with `m_rows` stacked underneath.
pub fn augment(code: &LinearCode, m_rows: &BinaryMatrix) -> Result<LinearCode> {
    if m_rows.cols() != code.blocklength() {
        return Err(Error::DimensionMismatch {
            context: "augmentation rows",
            expected: code.blocklength(),
            found: m_rows.cols(),
        });
    }
    Ok(LinearCode::new(code.generator().vconcat(m_rows)?))
}

/// `[I_k | first k rows of A_α]`, a `k × (k + n)` generator.
pub fn puncture_wozencraft(alpha: &FieldElement, k: usize) -> Result<LinearCode> {
    let n = alpha.spec().n() as usize;
    check_k(n, k)?;
    let g = BinaryMatrix::identity(k).hconcat(&multiplier_rows(alpha).top_rows(k))?;
    Ok(LinearCode::new(g))
}

/// `[I_n | first k columns of A_α]`, an `n × (n + k)` generator.
pub fn truncate_wozencraft(alpha: &FieldElement, k: usize) -> Result<LinearCode> {
    let n = alpha.spec().n() as usize;
    check_k(n, k)?;
    let g = BinaryMatrix::identity(n).hconcat(&multiplier_rows(alpha).left_cols(k))?;
    Ok(LinearCode::new(g))
}

/// Circulant matrix whose row `i + 1` is row `i` cyclically shifted one
/// position to the right (coordinate `j` moves to `j + 1 mod n`).
pub fn circulant(first_row: &BitVector) -> BinaryMatrix {
    let n = first_row.len();
    let mut q = BinaryMatrix::zeros(n, n);
    for i in 0..n {
        for j in first_row.iter_ones() {
            q.set(i, (j + i) % n, true);
        }
    }
    q
}

/// `[I_n | Q]` with `Q` the circulant generated by `first_row`.
pub fn quasicyclic(first_row: &BitVector) -> LinearCode {
    let n = first_row.len();
    let g = BinaryMatrix::identity(n)
        .hconcat(&circulant(first_row))
        .expect("square blocks");
    LinearCode::new(g)
}

/// Uniform `k × m` generator from the stream seeded by `seed`.
pub fn random_linear(k: usize, m: usize, seed: u64) -> Result<LinearCode> {
    if k > m {
        return Err(Error::invalid(format!("dimension {k} exceeds blocklength {m}")));
    }
    let mut rng = rng_from_seed(seed);
    Ok(LinearCode::new(random_matrix(&mut rng, k, m)))
}

/// Block-diagonal direct sum of all members, in order.
pub fn concatenated_code(members: &[LinearCode]) -> Result<LinearCode> {
    let (first, rest) = members
        .split_first()
        .ok_or_else(|| Error::invalid("concatenation needs at least one member"))?;
    Ok(rest.iter().fold(first.clone(), |acc, c| acc.direct_sum(c)))
}

/// `x ↦ x` restricted to `n` bits, for building messages in tests and examples.
pub fn message(n: usize, bits: u64) -> BitVector {
    BitVector::from_u64(n, bits & low_mask(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{covering_radius, Engine, Guards};
    use crate::gf2::gf_mul;
    use crate::seed::trial_seed;
    use std::collections::HashSet;

    fn field(n: u32) -> FieldSpec {
        FieldSpec::canonical(n).unwrap()
    }

    #[test]
    fn wozencraft_n1_alpha1_is_repetition() {
        let f = field(1);
        let c = wozencraft(&f.one());
        let mut w = c.codewords_u64();
        w.sort();
        assert_eq!(w, vec![0b00, 0b11]);
    }

    #[test]
    fn wozencraft_alpha_zero() {
        let f = field(5);
        let c = wozencraft(&f.zero());
        assert_eq!(c.min_distance().unwrap(), 1);
        for x in 0u64..32 {
            let cw = c.encode(&message(5, x)).unwrap().to_u64();
            assert_eq!(cw, x);
        }
    }

    #[test]
    fn wozencraft_second_half_is_product() {
        let f = field(4);
        let alpha = f.element(0b0010).unwrap();
        let c = wozencraft(&alpha);
        for x in f.elements() {
            let cw = c.encode(&x.to_bitvector()).unwrap();
            assert_eq!(cw.slice(0..4).to_u64(), x.bits());
            assert_eq!(cw.slice(4..8).to_u64(), gf_mul(&x, &alpha).unwrap().bits());
        }
    }

    #[test]
    fn wozencraft_rank_is_n() {
        for n in 1..=8 {
            let f = field(n);
            for a in f.elements() {
                assert_eq!(wozencraft(&a).dimension(), n as usize);
            }
        }
    }

    #[test]
    fn augment_cases() {
        let f = field(3);
        let c = wozencraft(&f.element(0b011).unwrap());
        assert_eq!(augment(&c, &BinaryMatrix::zeros(0, 6)).unwrap(), c);
        let in_span = c.generator().top_rows(2);
        let a = augment(&c, &in_span).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.k(), 5);
        assert!(augment(&c, &BinaryMatrix::zeros(1, 5)).is_err());
    }

    #[test]
    fn augment_span_matches_enumeration() {
        let params = EnsembleParams::new(3, 2).unwrap();
        let s = sample(&params, 1234).unwrap();
        let g0 = s.augmented();
        let mut brute: HashSet<u64> = HashSet::new();
        for msg in 0u64..(1 << 5) {
            brute.insert(g0.encode(&message(5, msg)).unwrap().to_u64());
        }
        let span: HashSet<u64> = g0.codewords_u64().into_iter().collect();
        assert_eq!(brute, span);
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = EnsembleParams::with_constant(8, 3.0).unwrap();
        assert_eq!(p.t, 9);
        assert_eq!(sample(&p, 42).unwrap(), sample(&p, 42).unwrap());
        assert_ne!(sample(&p, 42).unwrap(), sample(&p, 43).unwrap());
        let s = sample(&EnsembleParams::new(8, 0).unwrap(), 1).unwrap();
        assert_eq!(s.m_rows.rows(), 0);
        assert_eq!(s.m_rows.cols(), 16);
    }

    #[test]
    fn alpha_bits_are_fair() {
        let p = EnsembleParams::new(8, 0).unwrap();
        let mut ones = [0u32; 8];
        let draws = 10_000u64;
        for i in 0..draws {
            let a = sample(&p, trial_seed(7, i)).unwrap().alpha.bits();
            for (b, count) in ones.iter_mut().enumerate() {
                *count += (a >> b & 1) as u32;
            }
        }
        for count in ones {
            let mean = count as f64 / draws as f64;
            assert!((mean - 0.5).abs() <= 0.02, "mean {mean}");
        }
    }

    #[test]
    fn sample_json_shape_and_round_trip() {
        let p = EnsembleParams::new(2, 1).unwrap();
        let s = sample(&p, 9).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        for key in ["n", "t", "alpha_hex", "m_rows", "seed"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["seed"], "9");
        let back: EnsembleSample = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn ensemble_support_sizes() {
        // 2^n distinct Wozencraft generators at n = 4
        let f = field(4);
        let gens: HashSet<String> = f
            .elements()
            .map(|a| serde_json::to_string(&wozencraft(&a)).unwrap())
            .collect();
        assert_eq!(gens.len(), 16);
        // N = 2^n * 2^(2nt) = 4 * 16 = 64 distinct augmented generators at n = 2, t = 1
        let f = field(2);
        let mut all = HashSet::new();
        for a in f.elements() {
            for row in 0u64..16 {
                let m = BinaryMatrix::from_u64_rows(4, &[row]);
                all.insert(serde_json::to_string(&augment(&wozencraft(&a), &m).unwrap()).unwrap());
            }
        }
        assert_eq!(all.len(), 64);
        let p = EnsembleParams::new(2, 1).unwrap();
        let sampled: HashSet<String> = (0..4000)
            .map(|i| serde_json::to_string(&sample(&p, trial_seed(3, i)).unwrap().augmented()).unwrap())
            .collect();
        assert_eq!(sampled.len(), 64);
    }

    #[test]
    fn puncture_matches_zero_padded_wozencraft() {
        for n in 2..=6u32 {
            let f = field(n);
            let nu = n as usize;
            for a in f.elements() {
                let full = wozencraft(&a);
                for k in 1..nu {
                    let p = puncture_wozencraft(&a, k).unwrap();
                    assert_eq!((p.k(), p.blocklength()), (k, nu + k));
                    for m in 0u64..(1 << k) {
                        let cw = p.encode(&message(k, m)).unwrap();
                        let padded = full.encode(&message(nu, m)).unwrap();
                        assert_eq!(cw.slice(0..k), padded.slice(0..k));
                        assert_eq!(cw.slice(k..k + nu), padded.slice(nu..2 * nu));
                    }
                }
            }
        }
    }

    #[test]
    fn puncture_and_truncate_edge_cases() {
        let f = field(4);
        let zero = f.zero();
        let p = puncture_wozencraft(&zero, 2).unwrap();
        let expect = BinaryMatrix::identity(2).hconcat(&BinaryMatrix::zeros(2, 4)).unwrap();
        assert_eq!(p.generator(), &expect);
        let t = truncate_wozencraft(&zero, 3).unwrap();
        assert_eq!(t.rate(), 4.0 / 7.0);
        assert!(puncture_wozencraft(&zero, 4).is_err());
        assert!(puncture_wozencraft(&zero, 0).is_err());
        assert!(truncate_wozencraft(&zero, 4).is_err());
        assert!(truncate_wozencraft(&zero, 3).is_ok());
    }

    #[test]
    fn truncate_deletes_trailing_coordinates() {
        let f = field(4);
        for a in f.elements() {
            let full = wozencraft(&a);
            let t = truncate_wozencraft(&a, 2).unwrap();
            for m in 0u64..16 {
                let cw = t.encode(&message(4, m)).unwrap();
                let w = full.encode(&message(4, m)).unwrap();
                assert_eq!(cw, w.slice(0..6));
            }
        }
    }

    #[test]
    fn circulant_examples() {
        let q = circulant(&BitVector::from_bit_str("1100").unwrap());
        let expect = BinaryMatrix::from_bit_strs(&["1100", "0110", "0011", "1001"]).unwrap();
        assert_eq!(q, expect);
        let p = circulant(&BitVector::from_bit_str("100").unwrap());
        assert!(p.is_invertible());
        assert_eq!(p.mul(&p).unwrap().mul(&p).unwrap(), BinaryMatrix::identity(3));
        assert!(circulant(&BitVector::zeros(5)).is_zero());
    }

    #[test]
    fn shift_n_times_is_identity() {
        let mut rng = rng_from_seed(5);
        for n in 1..=16 {
            let r = random_bits(&mut rng, n);
            let q = circulant(&r);
            // applying the shift once more to the last row gives the first
            let mut wrapped = BitVector::zeros(n);
            for j in q.row(n - 1).iter_ones() {
                wrapped.set((j + 1) % n, true);
            }
            assert_eq!(wrapped, r);
        }
    }

    #[test]
    fn quasicyclic_zero_row() {
        let c = quasicyclic(&BitVector::zeros(4));
        let g = Guards::default();
        assert_eq!(covering_radius(&c, Engine::Auto, &g).unwrap(), 4);
    }

    #[test]
    fn random_linear_cases() {
        let z = random_linear(0, 7, 1).unwrap();
        assert_eq!((z.dimension(), z.blocklength()), (0, 7));
        assert_eq!(random_linear(5, 9, 3).unwrap(), random_linear(5, 9, 3).unwrap());
        assert!(random_linear(4, 3, 0).is_err());
    }

    #[test]
    fn concatenation_cases() {
        let rep = LinearCode::repetition(2);
        assert_eq!(concatenated_code(std::slice::from_ref(&rep)).unwrap(), rep);
        let c = concatenated_code(&[rep.clone(), rep.clone(), rep]).unwrap();
        assert_eq!((c.blocklength(), c.dimension()), (6, 3));
        assert!(concatenated_code(&[]).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(EnsembleParams::new(0, 1).is_err());
        assert!(EnsembleParams::new(6, 1).unwrap().with_k(6).is_err());
        assert!(EnsembleParams::new(6, 1).unwrap().with_k(5).is_ok());
        assert_eq!(rows_for_constant(1, 3.0), 0);
        assert_eq!(rows_for_constant(12, 3.0), 11);
        assert_eq!(rows_for_constant(10, 3.0), 10);
        assert!(EnsembleParams::with_constant(4, f64::NAN).is_err());
    }
}
