//! Quadratic sieving: the forms `q` for which `f + q` is abnormal.
//!
//! A form `q = sum_{i<j} q_ij x_i x_j` is stored as a bit vector over the pairs
//! `(i, j)` in lexicographic order, so `(1,2), (1,3), ..., (1,m), (2,3), ...`.
//! The restriction of `f + q` to a flat `a + V` has degree at most 1 exactly
//! when the restriction of `f` has degree at most 2 and the quadratic parts
//! cancel. The quadratic part of a restricted quadratic form does not depend
//! on `a`, so the forms cleared at `a + V` make up a coset of the kernel of
//! the linear map `q -> quadratic part of q|V`.

use std::fmt;

use rayon::prelude::*;

use crate::anf::Anf;
use crate::boolfun::{mobius_word, word_anf_degree, BoolFun, WEIGHT_CLASS};
use crate::error::{Error, Result};
use crate::normality::gather_word;
use crate::spaces::{span_of, Flat, Subspace, SubspaceEnumeration};

/// Largest variable count accepted by [`sieving`].
pub const SIEVE_MAX_VARS: usize = 8;

pub fn pair_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Position of the pair `(i, j)`, `0 <= i < j < m`, in lexicographic order.
pub fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < m` in index order.
pub fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
}

/// A pure quadratic form, or zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    m: usize,
    bits: u128,
}

impl QuadForm {
    pub fn zero(m: usize) -> Self {
        QuadForm { m, bits: 0 }
    }

    pub fn from_bits(m: usize, bits: u128) -> Result<Self> {
        let n = pair_count(m);
        if n > 128 {
            return Err(Error::Capacity(format!("{m} variables exceeds quadratic form capacity")));
        }
        if n < 128 && bits >> n != 0 {
            return Err(Error::Domain(format!("bits beyond the {n} pairs of {m} variables")));
        }
        Ok(QuadForm { m, bits })
    }

    /// Accepts exactly the functions with no constant, linear or higher terms.
    pub fn from_boolfun(f: &BoolFun) -> Result<Self> {
        let anf = f.anf();
        let m = f.num_vars();
        let mut bits = 0u128;
        for s in anf.monomials() {
            if s.count_ones() != 2 {
                return Err(Error::Domain(format!("{anf} is not a pure quadratic form")));
            }
            let i = s.trailing_zeros() as usize;
            let j = 31 - s.leading_zeros() as usize;
            bits |= 1u128 << pair_index(m, i, j);
        }
        Ok(QuadForm { m, bits })
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Index into a [`QSet`].
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn coeff(&self, i: usize, j: usize) -> bool {
        self.bits >> pair_index(self.m, i, j) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn anf(&self) -> Anf {
        let mut anf = Anf::zero(self.m);
        for (k, (i, j)) in pairs(self.m).enumerate() {
            if self.bits >> k & 1 == 1 {
                anf.toggle(1 << i | 1 << j);
            }
        }
        anf
    }

    pub fn to_boolfun(&self) -> BoolFun {
        self.anf().truth_table()
    }
}

impl std::ops::BitXor for QuadForm {
    type Output = QuadForm;
    fn bitxor(self, rhs: QuadForm) -> QuadForm {
        debug_assert_eq!(self.m, rhs.m);
        QuadForm {
            m: self.m,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.anf().fmt(f)
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadForm(m={}, {})", self.m, self)
    }
}

/// A set of quadratic forms on `m <= 8` variables, one bit per form.
#[derive(Clone, PartialEq, Eq)]
pub struct QSet {
    m: usize,
    words: Vec<u64>,
}

impl QSet {
    fn check(m: usize) -> Result<()> {
        if m > SIEVE_MAX_VARS {
            return Err(Error::Capacity(format!(
                "a set of quadratic forms on {m} variables needs 2^{} bits",
                pair_count(m)
            )));
        }
        Ok(())
    }

    fn universe(m: usize) -> usize {
        1 << pair_count(m)
    }

    pub fn empty(m: usize) -> Result<Self> {
        Self::check(m)?;
        Ok(QSet {
            m,
            words: vec![0; Self::universe(m).div_ceil(64)],
        })
    }

    /// Every form in `B(2,2,m)`.
    pub fn full(m: usize) -> Result<Self> {
        let mut s = Self::empty(m)?;
        let n = Self::universe(m);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        if !n.is_multiple_of(64) {
            s.words[0] = (1u64 << n) - 1;
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn contains(&self, q: &QuadForm) -> bool {
        let i = q.index();
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn insert(&mut self, q: &QuadForm) {
        let i = q.index();
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, q: &QuadForm) {
        let i = q.index();
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = QuadForm> + '_ {
        let m = self.m;
        self.words.iter().enumerate().flat_map(move |(j, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u128;
                w &= w - 1;
                Some(QuadForm {
                    m,
                    bits: (j as u128) << 6 | b,
                })
            })
        })
    }

    fn subtract(&mut self, eliminated: &[u64]) {
        for (w, e) in self.words.iter_mut().zip(eliminated) {
            *w &= !e;
        }
    }
}

impl fmt::Debug for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A basis of the kernel of `q -> quadratic part of q|V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub subspace: Subspace,
    pub basis: Vec<QuadForm>,
}

/// Quadratic part of `x_u x_v` restricted to `span(basis)`, as pair bits over `r` variables.
fn monomial_image(basis: &[u32], u: usize, v: usize) -> u128 {
    let r = basis.len();
    let mut out = 0u128;
    for (k, (i, j)) in pairs(r).enumerate() {
        let (biu, biv) = (basis[i] >> u & 1, basis[i] >> v & 1);
        let (bju, bjv) = (basis[j] >> u & 1, basis[j] >> v & 1);
        if (biu & bjv) ^ (bju & biv) == 1 {
            out |= 1u128 << k;
        }
    }
    out
}

fn kernel_of(m: usize, basis: &[u32]) -> Vec<QuadForm> {
    // rows: (image, combination of source monomials); pivot = highest image bit
    let mut pivots: Vec<(u128, u128)> = Vec::new();
    let mut kernel = Vec::new();
    for (k, (u, v)) in pairs(m).enumerate() {
        let mut image = monomial_image(basis, u, v);
        let mut combo = 1u128 << k;
        loop {
            if image == 0 {
                kernel.push(QuadForm { m, bits: combo });
                break;
            }
            let top = 127 - image.leading_zeros();
            match pivots.iter().find(|(img, _)| 127 - img.leading_zeros() == top) {
                Some(&(img, c)) => {
                    image ^= img;
                    combo ^= c;
                }
                None => {
                    pivots.push((image, combo));
                    break;
                }
            }
        }
    }
    kernel
}

pub fn kernel_basis(v: &Subspace) -> KernelBasis {
    KernelBasis {
        subspace: v.clone(),
        basis: kernel_of(v.ambient_dim(), v.basis()),
    }
}

/// Quadratic part of the restriction of `f` to `flat` (in the flat's
/// coordinates) together with the degree of the whole restriction.
pub fn quad_restriction(f: &BoolFun, flat: &Flat) -> Result<(QuadForm, usize)> {
    let g = f.restrict(flat)?;
    let r = flat.dim();
    let anf = g.anf();
    let mut bits = 0u128;
    for (k, (i, j)) in pairs(r).enumerate() {
        if anf.coeff(1 << i | 1 << j) {
            bits |= 1u128 << k;
        }
    }
    Ok((QuadForm { m: r, bits }, anf.degree()))
}

/// Quadratic part of the product of two linear forms given by masks.
fn product_quad(m: usize, c: u32, d: u32) -> u128 {
    let mut out = 0u128;
    for (k, (u, v)) in pairs(m).enumerate() {
        let coeff = (c >> u & d >> v & 1) ^ (c >> v & d >> u & 1);
        if coeff == 1 {
            out |= 1u128 << k;
        }
    }
    out
}

/// Lifts of the `r`-variable pair monomials `t_i t_j`, in pair order.
fn monomial_lifts(m: usize, flat: &Flat) -> Vec<u128> {
    let functionals = flat.lift_data().functionals;
    pairs(flat.dim())
        .map(|(i, j)| product_quad(m, functionals[i].0, functionals[j].0))
        .collect()
}

fn combine(lifts: &[u128], rho: u128) -> u128 {
    lifts
        .iter()
        .enumerate()
        .filter(|(k, _)| rho >> k & 1 == 1)
        .fold(0, |acc, (_, &l)| acc ^ l)
}

/// A form `q0` on `m` variables whose restriction to `flat` has quadratic part `rho`.
pub fn quad_lift(rho: &QuadForm, flat: &Flat) -> Result<QuadForm> {
    if rho.num_vars() != flat.dim() {
        return Err(Error::Dimension {
            expected: flat.dim(),
            found: rho.num_vars(),
        });
    }
    let m = flat.ambient_dim();
    Ok(QuadForm {
        m,
        bits: combine(&monomial_lifts(m, flat), rho.bits),
    })
}

/// Per-subspace state: cosets of degree <= 2 with their distinct quadratic parts.
struct SubspaceWork {
    q0s: Vec<u128>,
    kernel: Vec<u128>,
}

fn subspace_work(f: &BoolFun, e: &SubspaceEnumeration, index: u64, rows: &mut [u32]) -> Option<SubspaceWork> {
    e.basis_into(index, rows);
    let m = e.ambient_dim();
    let r = e.dim();
    let v = Subspace::from_canonical(m, rows);
    let span = span_of(rows);
    let mut seen = 0u64;
    for a in v.coset_reps() {
        let anf = mobius_word(gather_word(f, a, &span), r);
        if word_anf_degree(anf) <= 2 {
            let rho = pext_pairs(anf & WEIGHT_CLASS[2], r);
            seen |= 1 << rho;
        }
    }
    if seen == 0 {
        return None;
    }
    let flat = Flat::from_subspace(&v, 0);
    let lifts = monomial_lifts(m, &flat);
    let q0s = (0..64u128)
        .filter(|&rho| seen >> rho & 1 == 1)
        .map(|rho| combine(&lifts, rho))
        .collect();
    let kernel = kernel_of(m, rows).into_iter().map(|q| q.bits).collect();
    Some(SubspaceWork { q0s, kernel })
}

/// Pair bits of a word-packed ANF on `r <= 4` variables, in pair order.
fn pext_pairs(anf2: u64, r: usize) -> u128 {
    pairs(r)
        .enumerate()
        .filter(|&(_, (i, j))| anf2 >> (1 << i | 1 << j) & 1 == 1)
        .fold(0, |acc, (k, _)| acc | 1 << k)
}

/// Clears `q0 + span(kernel)` from `bits` with a Gray-code walk.
fn clear_coset(bits: &mut [u64], q0: u128, kernel: &[u128]) {
    let mut q = q0 as usize;
    bits[q >> 6] |= 1 << (q & 63);
    for step in 1u64..1 << kernel.len() {
        q ^= kernel[step.trailing_zeros() as usize] as usize;
        bits[q >> 6] |= 1 << (q & 63);
    }
}

fn sieve_setup(f: &BoolFun) -> Result<(SubspaceEnumeration, QSet)> {
    let m = f.num_vars();
    let set = QSet::full(m)?;
    let e = SubspaceEnumeration::new(m, m.div_ceil(2))?;
    Ok((e, set))
}

/// The set `Q(f)` of quadratic forms `q` with `f + q` abnormal.
pub fn sieving(f: &BoolFun) -> Result<QSet> {
    let (e, mut set) = sieve_setup(f)?;
    let mut eliminated = vec![0u64; set.words.len()];
    let mut rows = vec![0u32; e.dim()];
    for i in 0..e.len() {
        if let Some(work) = subspace_work(f, &e, i, &mut rows) {
            for &q0 in &work.q0s {
                clear_coset(&mut eliminated, q0, &work.kernel);
            }
        }
    }
    set.subtract(&eliminated);
    Ok(set)
}

/// Parallel [`sieving`]: per-worker elimination vectors, OR-reduced at the end.
pub fn par_sieving(f: &BoolFun) -> Result<QSet> {
    let (e, mut set) = sieve_setup(f)?;
    let n = set.words.len();
    let r = e.dim();
    let eliminated = (0..e.len())
        .into_par_iter()
        .fold(
            || (vec![0u32; r], Vec::<u64>::new()),
            |(mut rows, mut bits), i| {
                if let Some(work) = subspace_work(f, &e, i, &mut rows) {
                    if bits.is_empty() {
                        bits = vec![0; n];
                    }
                    for &q0 in &work.q0s {
                        clear_coset(&mut bits, q0, &work.kernel);
                    }
                }
                (rows, bits)
            },
        )
        .map(|(_, bits)| bits)
        .reduce(Vec::new, |mut a, b| {
            if a.is_empty() {
                return b;
            }
            for (x, y) in a.iter_mut().zip(&b) {
                *x |= y;
            }
            a
        });
    if !eliminated.is_empty() {
        set.subtract(&eliminated);
    }
    Ok(set)
}
