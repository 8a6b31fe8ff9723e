//! Arithmetic in GF(2^n) under a polynomial basis.
//!
//! Elements are stored as integers whose bit `i` is the coefficient of `x^i`.
//! The field is fixed by its modulus; [`find_irreducible`] picks the
//! lexicographically smallest irreducible polynomial of each degree so that
//! every run uses the same isomorphism `GF(2^n) ≅ F_2^n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{low_mask, BinaryMatrix, BitVector};

/// Largest supported extension degree (the modulus must fit in 64 bits).
pub const MAX_DEGREE: u32 = 63;

/// Carry-less product of two 64-bit polynomials.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let wide = a as u128;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        acc ^= wide << i;
        rest &= rest - 1;
    }
    acc
}

#[inline]
fn degree(poly: u128) -> Option<u32> {
    if poly == 0 {
        None
    } else {
        Some(127 - poly.leading_zeros())
    }
}

/// `value mod modulus` for a modulus of degree `deg ≥ 1`.
#[inline]
fn reduce(mut value: u128, modulus: u64, deg: u32) -> u64 {
    let m = modulus as u128;
    while let Some(d) = degree(value) {
        if d < deg {
            break;
        }
        value ^= m << (d - deg);
    }
    value as u64
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let db = degree(b as u128).unwrap();
        let r = reduce(a as u128, b, db);
        // a mod b when deg b = 0 (b = 1) leaves 0
        a = b;
        b = if db == 0 { 0 } else { r };
    }
    a
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(2^k) mod poly`.
fn x_pow_two_pow(k: u32, poly: u64, deg: u32) -> u64 {
    let mut acc = reduce(2, poly, deg);
    for _ in 0..k {
        acc = reduce(clmul(acc, acc), poly, deg);
    }
    acc
}

/// Rabin's irreducibility test for a polynomial of degree `d ≥ 1`:
/// `x^(2^d) ≡ x (mod f)` and `gcd(x^(2^(d/p)) − x, f) = 1` for every prime `p | d`.
pub fn is_irreducible(poly: u64) -> Result<bool> {
    let d = match degree(poly as u128) {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::invalid(format!(
                "irreducibility needs degree >= 1, got polynomial {poly:#x}"
            )))
        }
    };
    let x = reduce(2, poly, d);
    if x_pow_two_pow(d, poly, d) != x {
        return Ok(false);
    }
    for p in prime_factors(d) {
        let h = x_pow_two_pow(d / p, poly, d) ^ x;
        if poly_gcd(poly, h) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically smallest irreducible polynomial of degree `n` with a
/// nonzero constant term.
pub fn find_irreducible(n: u32) -> Result<FieldSpec> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::invalid(format!(
            "extension degree must be in 1..={MAX_DEGREE}, got {n}"
        )));
    }
    let lo = 1u64 << n;
    let mut candidate = lo | 1;
    loop {
        if is_irreducible(candidate)? {
            return Ok(FieldSpec { n, modulus: candidate });
        }
        candidate += 2;
        debug_assert!(candidate >> n == 1, "every degree has an irreducible");
    }
}

/// The field GF(2^n) presented as `F_2[x] / (modulus)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FieldSpecJson", try_from = "FieldSpecJson")]
pub struct FieldSpec {
    n: u32,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    n: u32,
    modulus_hex: String,
}

impl From<FieldSpec> for FieldSpecJson {
    fn from(f: FieldSpec) -> Self {
        FieldSpecJson {
            n: f.n,
            modulus_hex: format!("{:x}", f.modulus),
        }
    }
}

impl TryFrom<FieldSpecJson> for FieldSpec {
    type Error = Error;

    fn try_from(j: FieldSpecJson) -> Result<Self> {
        let hex = j.modulus_hex.trim_start_matches("0x");
        let modulus = u64::from_str_radix(hex, 16)
            .map_err(|e| Error::Parse(format!("modulus_hex {:?}: {e}", j.modulus_hex)))?;
        FieldSpec::new(j.n, modulus)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.n, self.modulus)
    }
}

impl FieldSpec {
    /// Validates degree, constant term and irreducibility of `modulus`.
    pub fn new(n: u32, modulus: u64) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::invalid(format!("extension degree {n} out of range")));
        }
        if degree(modulus as u128) != Some(n) {
            return Err(Error::invalid(format!(
                "modulus {modulus:#x} does not have degree {n}"
            )));
        }
        if modulus & 1 == 0 {
            return Err(Error::invalid(format!(
                "modulus {modulus:#x} has zero constant term"
            )));
        }
        if !is_irreducible(modulus)? {
            return Err(Error::invalid(format!("modulus {modulus:#x} is reducible")));
        }
        Ok(FieldSpec { n, modulus })
    }

    /// The canonical field of degree `n` (see [`find_irreducible`]).
    pub fn canonical(n: u32) -> Result<Self> {
        find_irreducible(n)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        low_mask(self.n as usize)
    }

    /// Element from its coordinate bits; bits above `n` are rejected.
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits & !self.mask() != 0 {
            return Err(Error::invalid(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.n
            )));
        }
        Ok(FieldElement { bits, spec: *self })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { bits: 0, spec: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { bits: 1, spec: *self }
    }

    /// The basis monomial `x^j`.
    pub fn monomial(&self, j: u32) -> FieldElement {
        assert!(j < self.n);
        FieldElement {
            bits: 1 << j,
            spec: *self,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |bits| FieldElement { bits, spec: *self })
    }

    /// Raw product of two coordinate words, without field checks.
    #[inline]
    pub fn mul_bits(&self, a: u64, b: u64) -> u64 {
        reduce(clmul(a, b), self.modulus, self.n)
    }
}

/// An element of GF(2^n).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u64,
    spec: FieldSpec,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x} in {:?}", self.bits, self.spec)
    }
}

impl FieldElement {
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn to_bitvector(&self) -> BitVector {
        BitVector::from_u64(self.spec.n as usize, self.bits)
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.bits)
    }

    /// Field addition (coordinate-wise XOR).
    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement {
            bits: self.bits ^ other.bits,
            spec: self.spec,
        })
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.spec != other.spec {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }
}

/// Carry-less product reduced modulo the field polynomial.
pub fn gf_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    a.check(b)?;
    Ok(FieldElement {
        bits: a.spec.mul_bits(a.bits, b.bits),
        spec: a.spec,
    })
}

/// Multiplicative inverse as `a^(2^n − 2)`.
pub fn gf_inv(a: &FieldElement) -> Result<FieldElement> {
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    let spec = a.spec;
    // 2^n - 2 = 2 + 4 + ... + 2^(n-1): product of the squares a^(2^i), i ≥ 1
    let mut result = 1u64;
    let mut sq = a.bits;
    for _ in 1..spec.n {
        sq = spec.mul_bits(sq, sq);
        result = spec.mul_bits(result, sq);
    }
    Ok(FieldElement { bits: result, spec })
}

/// The `n × n` matrix of multiplication by `alpha`: column `j` holds
/// `alpha · x^j`, so `mul_matrix(alpha).mul_vec(x) == alpha · x`.
pub fn mul_matrix(alpha: &FieldElement) -> BinaryMatrix {
    let spec = alpha.spec;
    let n = spec.n as usize;
    let mut m = BinaryMatrix::zeros(n, n);
    for j in 0..n {
        let col = spec.mul_bits(alpha.bits, 1 << j);
        for i in 0..n {
            if col >> i & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    m
}
