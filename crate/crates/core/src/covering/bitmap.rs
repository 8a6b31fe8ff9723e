use crate::error::{Error, Result};
use crate::linalg::LinearCode;

use super::Guards;

/// Hard ceiling on bitmap dimension regardless of configured guards.
pub const ABSOLUTE_MAX_DIM: usize = 40;

/// Masks selecting bit positions whose index has bit `j` clear, `j < 6`.
const LEVEL_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Swaps every point `x` with `x ^ (1 << j)` in place.
#[inline]
fn swap_level(words: &mut [u64], j: usize) {
    if j < 6 {
        let s = 1u32 << j;
        let mask = LEVEL_MASKS[j];
        for w in words.iter_mut() {
            *w = ((*w >> s) & mask) | ((*w & mask) << s);
        }
    } else {
        let stride = 1usize << (j - 6);
        for base in (0..words.len()).step_by(2 * stride) {
            let (lo, hi) = words[base..base + 2 * stride].split_at_mut(stride);
            lo.swap_with_slice(hi);
        }
    }
}

/// Indicator of a subset of `F_2^m`: point `x` is bit `x % 64` of word `x / 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpaceBitmap {
    m: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for SpaceBitmap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpaceBitmap(m={}, |S|={})", self.m, self.count())
    }
}

impl SpaceBitmap {
    pub fn empty(m: usize) -> Self {
        assert!(m <= ABSOLUTE_MAX_DIM, "bitmap dimension {m} too large");
        let words = if m >= 6 { 1usize << (m - 6) } else { 1 };
        SpaceBitmap {
            m,
            words: vec![0; words],
        }
    }

    /// Empty bitmap after checking `m` against the configured guard.
    pub fn empty_guarded(m: usize, guards: &Guards) -> Result<Self> {
        guards.check_bitmap(m)?;
        Ok(Self::empty(m))
    }

    pub fn full(m: usize) -> Self {
        let mut b = Self::empty(m);
        b.words.fill(u64::MAX);
        b.clear_padding();
        b
    }

    pub fn singleton(m: usize, x: u64) -> Self {
        let mut b = Self::empty(m);
        b.insert(x);
        b
    }

    pub fn from_points(m: usize, points: impl IntoIterator<Item = u64>) -> Self {
        let mut b = Self::empty(m);
        for p in points {
            b.insert(p);
        }
        b
    }

    /// The Hamming ball `B_r` around the origin.
    pub fn ball(m: usize, r: usize) -> Self {
        Self::singleton(m, 0).expand_ball(r)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn num_points(&self) -> u64 {
        1u64 << self.m
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_padding(&mut self) {
        if self.m < 6 {
            self.words[0] &= (1u64 << (1u32 << self.m)) - 1;
        }
    }

    #[inline]
    fn check_point(&self, x: u64) {
        assert!(x < self.num_points(), "point {x:#x} outside F_2^{}", self.m);
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        self.check_point(x);
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: u64) {
        self.check_point(x);
        self.words[(x >> 6) as usize] |= 1 << (x & 63);
    }

    #[inline]
    pub fn remove(&mut self, x: u64) {
        self.check_point(x);
        self.words[(x >> 6) as usize] &= !(1 << (x & 63));
    }

    /// Population count.
    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.num_points()
    }

    fn check_same(&self, other: &SpaceBitmap) {
        assert_eq!(self.m, other.m, "bitmaps over different spaces");
    }

    pub fn union_with(&mut self, other: &SpaceBitmap) {
        self.check_same(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_count(&self, other: &SpaceBitmap) -> u64 {
        self.check_same(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub fn complement(&self) -> SpaceBitmap {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    pub fn iter_points(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as u64;
                    rest &= rest - 1;
                    Some(((wi as u64) << 6) | b)
                }
            })
        })
    }

    /// `{x + u : x ∈ self}` by a butterfly over the set bits of `u`.
    pub fn xor_translate(&self, u: u64) -> SpaceBitmap {
        self.check_point(u);
        let mut out = self.clone();
        let mut rest = u;
        while rest != 0 {
            swap_level(&mut out.words, rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        out
    }

    /// Pointwise reference for [`xor_translate`](Self::xor_translate).
    pub fn xor_translate_naive(&self, u: u64) -> SpaceBitmap {
        self.check_point(u);
        SpaceBitmap::from_points(self.m, self.iter_points().map(|x| x ^ u))
    }

    /// `self ∪ (self + u)`.
    pub fn union_translate(&self, u: u64) -> SpaceBitmap {
        let mut out = self.xor_translate(u);
        out.union_with(self);
        out
    }

    /// One round of ball growth: `S + B_1`.
    pub fn expand_step(&self) -> SpaceBitmap {
        let mut out = self.clone();
        for (j, &mask) in LEVEL_MASKS.iter().enumerate().take(self.m) {
            let s = 1u32 << j;
            for (o, &w) in out.words.iter_mut().zip(&self.words) {
                *o |= ((w >> s) & mask) | ((w & mask) << s);
            }
        }
        for j in 6..self.m.max(6) {
            let stride = 1usize << (j - 6);
            for (i, o) in out.words.iter_mut().enumerate() {
                *o |= self.words[i ^ stride];
            }
        }
        out
    }

    /// `S + B_r` after `r` rounds; round `j` yields `S + B_j`.
    pub fn expand_ball(&self, r: usize) -> SpaceBitmap {
        let mut cur = self.clone();
        for _ in 0..r {
            if cur.is_full() {
                break;
            }
            cur = cur.expand_step();
        }
        cur
    }

    /// Smallest `r` with `S + B_r` the whole space; `None` for the empty set.
    pub fn covering_radius(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut cur = self.clone();
        let mut r = 0;
        while !cur.is_full() {
            cur = cur.expand_step();
            r += 1;
        }
        Some(r)
    }
}

/// Indicator of the row span of `code`, built by span doubling over a basis.
pub fn code_bitmap(code: &LinearCode, guards: &Guards) -> Result<SpaceBitmap> {
    let m = code.blocklength();
    guards.check_bitmap(m)?;
    if m > 64 {
        return Err(Error::guard("bitmap blocklength", m as u64, 64));
    }
    let basis = code.basis();
    let mut bitmap = SpaceBitmap::singleton(m, 0);
    for i in 0..basis.rows() {
        bitmap = bitmap.union_translate(basis.row_u64(i));
    }
    Ok(bitmap)
}
