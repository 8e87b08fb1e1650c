//! Truth-table representation of Boolean functions.
//!
//! A vector `x = (x_1, ..., x_m)` of `F_2^m` is identified with the integer
//! `x_1 + 2 x_2 + ... + 2^(m-1) x_m`, and bit `x` of the truth table holds
//! `f(x)`. Every other module relies on this convention.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::anf::Anf;
use crate::error::{Error, Result};
use crate::spaces::Flat;
use crate::walsh::WalshSpectrum;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 16;

/// `LOW_HALF[i]` selects the bit positions of a word whose index has bit `i` clear.
pub(crate) const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// `WEIGHT_CLASS[k]` selects the bit positions `0..64` whose index has Hamming weight `k`.
pub(crate) const WEIGHT_CLASS: [u64; 7] = weight_classes();

const fn weight_classes() -> [u64; 7] {
    let mut out = [0u64; 7];
    let mut i = 0;
    while i < 64 {
        out[(i as u64).count_ones() as usize] |= 1u64 << i;
        i += 1;
    }
    out
}

pub(crate) fn word_count(m: usize) -> usize {
    if m <= 6 {
        1
    } else {
        1 << (m - 6)
    }
}

pub(crate) fn table_mask(m: usize) -> u64 {
    if m >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << m)) - 1
    }
}

/// In-place binary Moebius transform of a packed bit table on `m` variables.
pub(crate) fn mobius_in_place(words: &mut [u64], m: usize) {
    for (i, &mask) in LOW_HALF.iter().enumerate().take(m.min(6)) {
        let shift = 1u32 << i;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    for i in 6..m {
        let step = 1usize << (i - 6);
        for j in 0..words.len() {
            if j & step == 0 {
                words[j + step] ^= words[j];
            }
        }
    }
}

/// Moebius transform of a single word holding a function on `r <= 6` variables.
#[inline]
pub(crate) fn mobius_word(mut w: u64, r: usize) -> u64 {
    for (i, &mask) in LOW_HALF.iter().enumerate().take(r) {
        w ^= (w & mask) << (1u32 << i);
    }
    w
}

/// Degree of a word-packed ANF (0 for the zero word).
#[inline]
pub(crate) fn word_anf_degree(anf: u64) -> usize {
    (0..7).rev().find(|&k| anf & WEIGHT_CLASS[k] != 0).unwrap_or(0)
}

/// Degree of the function packed in `w` on `r <= 6` variables.
#[inline]
pub(crate) fn word_degree(w: u64, r: usize) -> usize {
    word_anf_degree(mobius_word(w, r))
}

/// A Boolean function on `F_2^m` stored as its truth table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolFun {
    m: usize,
    words: Vec<u64>,
}

impl BoolFun {
    /// The zero function on `m` variables.
    ///
    /// Panics if `m > MAX_VARS`.
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        BoolFun {
            m,
            words: vec![0; word_count(m)],
        }
    }

    pub fn one(m: usize) -> Self {
        Self::zero(m).complement()
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(u32) -> bool) -> Self {
        let mut out = Self::zero(m);
        for x in 0..(1u32 << m) {
            if f(x) {
                out.set(x, true);
            }
        }
        out
    }

    /// Builds a function from packed words (bit `x % 64` of word `x / 64` is `f(x)`).
    pub fn from_words(m: usize, words: Vec<u64>) -> Result<Self> {
        if m > MAX_VARS {
            return Err(Error::Capacity(format!("{m} variables exceeds {MAX_VARS}")));
        }
        if words.len() != word_count(m) {
            return Err(Error::Format(format!(
                "{} words given for {m} variables, expected {}",
                words.len(),
                word_count(m)
            )));
        }
        if m < 6 && words[0] & !table_mask(m) != 0 {
            return Err(Error::Format(format!(
                "bits set beyond the 2^{m} table entries"
            )));
        }
        Ok(BoolFun { m, words })
    }

    /// Builds a function on at most 6 variables from the low `2^m` bits of `table`.
    pub fn from_u64(m: usize, table: u64) -> Result<Self> {
        if m > 6 {
            return Err(Error::Capacity(format!("{m} variables do not fit in one word")));
        }
        Self::from_words(m, vec![table])
    }

    /// Builds a function from a truth table of length `2^m`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let m = log2_exact(bits.len())?;
        if m > MAX_VARS {
            return Err(Error::Capacity(format!("{m} variables exceeds {MAX_VARS}")));
        }
        Ok(Self::from_fn(m, |x| bits[x as usize]))
    }

    /// The linear function `x -> mask . x`.
    pub fn linear(m: usize, mask: u32) -> Self {
        Self::from_fn(m, |x| (x & mask).count_ones() & 1 == 1)
    }

    /// The affine function `x -> mask . x + constant`.
    pub fn affine(m: usize, mask: u32, constant: bool) -> Self {
        Self::from_fn(m, |x| ((x & mask).count_ones() & 1 == 1) ^ constant)
    }

    /// The coordinate function `x_i` (1-based).
    pub fn variable(m: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= m, "variable index out of range");
        Self::linear(m, 1 << (i - 1))
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    /// Number of points `2^m`.
    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        let x = x as usize;
        (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, value: bool) {
        let x = x as usize;
        let bit = 1u64 << (x & 63);
        if value {
            self.words[x >> 6] |= bit;
        } else {
            self.words[x >> 6] &= !bit;
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len() as u32).map(|x| self.get(x)).collect()
    }

    /// Hamming weight of the truth table.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `Some(c)` if the function is the constant `c`.
    pub fn constant_value(&self) -> Option<bool> {
        let w = self.weight();
        if w == 0 {
            Some(false)
        } else if w == self.len() {
            Some(true)
        } else {
            None
        }
    }

    pub fn complement(&self) -> Self {
        let mask = table_mask(self.m);
        BoolFun {
            m: self.m,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    pub fn anf(&self) -> Anf {
        let mut words = self.words.clone();
        mobius_in_place(&mut words, self.m);
        Anf::from_packed(self.m, words)
    }

    /// Algebraic degree (0 for constants).
    pub fn degree(&self) -> usize {
        if self.m <= 6 {
            return word_degree(self.words[0], self.m);
        }
        self.anf().degree()
    }

    /// Valuation, `None` for the zero function.
    pub fn valuation(&self) -> Option<usize> {
        self.anf().valuation()
    }

    pub fn walsh(&self) -> WalshSpectrum {
        WalshSpectrum::of(self)
    }

    /// Restriction `t -> f(a + sum t_i b_i)` to a flat, using the flat's basis in stored order.
    pub fn restrict(&self, flat: &Flat) -> Result<BoolFun> {
        if flat.ambient_dim() != self.m {
            return Err(Error::Dimension {
                expected: self.m,
                found: flat.ambient_dim(),
            });
        }
        let span = flat.span_offsets();
        let a = flat.translate();
        let r = flat.dim();
        let mut out = BoolFun::zero(r);
        for (t, &v) in span.iter().enumerate() {
            if self.get(a ^ v) {
                out.set(t as u32, true);
            }
        }
        Ok(out)
    }

    /// `x -> f(x A + b)` where `rows[i]` is row `i` of `A` (the image of `e_{i+1}`).
    pub fn compose_affine(&self, rows: &[u32], b: u32) -> BoolFun {
        assert_eq!(rows.len(), self.m, "matrix must have m rows");
        BoolFun::from_fn(self.m, |x| self.get(apply_rows(rows, x) ^ b))
    }

    /// The `lambda`-block: `t -> f(t + 2^(m-r) c)` on `m - r` variables, i.e. the
    /// restriction with the top `r` coordinates fixed to the bits of `c`.
    pub fn block(&self, r: usize, c: u32) -> BoolFun {
        assert!(r <= self.m && (c as usize) < (1 << r));
        let n = self.m - r;
        let base = c << n;
        BoolFun::from_fn(n, |t| self.get(base | t))
    }

    /// Lowercase big-endian hexadecimal of the truth-table integer.
    pub fn to_hex(&self) -> String {
        crate::format::to_hex(self)
    }

    pub fn from_hex(m: usize, text: &str) -> Result<Self> {
        crate::format::from_hex(m, text)
    }

    pub fn from_anf_str(m: usize, text: &str) -> Result<Self> {
        Ok(crate::format::parse_anf(m, text)?.truth_table())
    }
}

impl fmt::Debug for BoolFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFun(m={}, {})", self.m, self.to_hex())
    }
}

impl fmt::Display for BoolFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl BitXor for &BoolFun {
    type Output = BoolFun;

    fn bitxor(self, rhs: &BoolFun) -> BoolFun {
        assert_eq!(self.m, rhs.m, "variable counts differ");
        BoolFun {
            m: self.m,
            words: self.words.iter().zip(&rhs.words).map(|(a, b)| a ^ b).collect(),
        }
    }
}

impl BitXorAssign<&BoolFun> for BoolFun {
    fn bitxor_assign(&mut self, rhs: &BoolFun) {
        assert_eq!(self.m, rhs.m, "variable counts differ");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

/// `x A` for the row vector `x`.
#[inline]
pub(crate) fn apply_rows(rows: &[u32], x: u32) -> u32 {
    rows.iter()
        .enumerate()
        .filter(|(i, _)| (x >> i) & 1 == 1)
        .fold(0, |acc, (_, &row)| acc ^ row)
}

pub(crate) fn log2_exact(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::Format(format!("length {len} is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Moebius (binary zeta) transform of a bit sequence of length `2^m`.
///
/// Maps a truth table to its ANF coefficients and back.
pub fn anf_mobius(bits: &[bool]) -> Result<Vec<bool>> {
    let f = BoolFun::from_bits(bits)?;
    let mut words = f.words;
    mobius_in_place(&mut words, f.m);
    let g = BoolFun { m: f.m, words };
    Ok(g.to_bits())
}

/// The concatenation `(g || h)(x, x_m) = (x_m + 1) g(x) + x_m h(x)`.
pub fn concat(g: &BoolFun, h: &BoolFun) -> Result<BoolFun> {
    if g.m != h.m {
        return Err(Error::Dimension {
            expected: g.m,
            found: h.m,
        });
    }
    let m = g.m + 1;
    if m > MAX_VARS {
        return Err(Error::Capacity(format!("{m} variables exceeds {MAX_VARS}")));
    }
    if g.m >= 6 {
        let mut words = g.words.clone();
        words.extend_from_slice(&h.words);
        return Ok(BoolFun { m, words });
    }
    let half = 1u32 << g.m;
    Ok(BoolFun {
        m,
        words: vec![g.words[0] | (h.words[0] << half)],
    })
}

/// Maiorana-McFarland function `(x, y) -> <x, pi(y)> + g(y)` on `2k` variables.
///
/// `y` occupies the low `k` coordinates and `x` the high ones.
pub fn mm_construct(pi: &[u32], g: &BoolFun) -> Result<BoolFun> {
    let k = g.num_vars();
    if pi.len() != 1 << k {
        return Err(Error::InvalidPermutation(format!(
            "expected {} images, found {}",
            1u32 << k,
            pi.len()
        )));
    }
    let mut seen = vec![false; pi.len()];
    for (y, &image) in pi.iter().enumerate() {
        if image as usize >= pi.len() || seen[image as usize] {
            return Err(Error::InvalidPermutation(format!(
                "image {image} of {y} is out of range or repeated"
            )));
        }
        seen[image as usize] = true;
    }
    if 2 * k > MAX_VARS {
        return Err(Error::Capacity(format!("{} variables exceeds {MAX_VARS}", 2 * k)));
    }
    let low = (1u32 << k) - 1;
    Ok(BoolFun::from_fn(2 * k, |z| {
        let y = z & low;
        let x = z >> k;
        ((x & pi[y as usize]).count_ones() & 1 == 1) ^ g.get(y)
    }))
}
