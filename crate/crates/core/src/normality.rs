//! Relative degree, r-degree and (ab)normality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::boolfun::{word_degree, BoolFun};
use crate::error::{Error, Result};
use crate::spaces::{gaussian_binomial, span_of, Flat, Subspace, SubspaceEnumeration};

/// Packs `f(a + span[t])` into bit `t` of a word. `span.len() <= 64`.
#[inline]
pub(crate) fn gather_word(f: &BoolFun, a: u32, span: &[u32]) -> u64 {
    let words = f.words();
    span.iter().enumerate().fold(0u64, |acc, (t, &v)| {
        let x = (a ^ v) as usize;
        acc | ((words[x >> 6] >> (x & 63)) & 1) << t
    })
}

/// Degree of `t -> f(a + span[t])` on `r` variables.
pub(crate) fn coset_degree(f: &BoolFun, a: u32, span: &[u32], r: usize) -> usize {
    if r <= 6 {
        word_degree(gather_word(f, a, span), r)
    } else {
        BoolFun::from_fn(r, |t| f.get(a ^ span[t as usize])).degree()
    }
}

fn coset_is_constant(f: &BoolFun, a: u32, span: &[u32], r: usize) -> bool {
    if r <= 6 {
        let w = gather_word(f, a, span);
        let full = if r == 6 { u64::MAX } else { (1u64 << (1 << r)) - 1 };
        w == 0 || w == full
    } else {
        let first = f.get(a);
        span.iter().all(|&v| f.get(a ^ v) == first)
    }
}

fn check_flat(f: &BoolFun, flat: &Flat) -> Result<()> {
    if flat.ambient_dim() != f.num_vars() {
        return Err(Error::Dimension {
            expected: f.num_vars(),
            found: flat.ambient_dim(),
        });
    }
    Ok(())
}

/// Degree of the restriction of `f` to `flat` (0 when the restriction is constant).
pub fn relative_degree(f: &BoolFun, flat: &Flat) -> Result<usize> {
    check_flat(f, flat)?;
    Ok(coset_degree(f, flat.translate(), &flat.span_offsets(), flat.dim()))
}

/// Minimal relative degree over all `r`-flats, with a flat attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDegree {
    pub value: usize,
    pub witness: Flat,
}

/// Minimum over the cosets of subspace `index`: `(degree, coset representative)`.
fn subspace_min(f: &BoolFun, e: &SubspaceEnumeration, index: u64, rows: &mut [u32]) -> (usize, u32) {
    e.basis_into(index, rows);
    let v = Subspace::from_canonical(e.ambient_dim(), rows);
    let span = span_of(rows);
    let r = e.dim();
    let mut best = (usize::MAX, 0);
    for a in v.coset_reps() {
        let d = coset_degree(f, a, &span, r);
        if d < best.0 {
            best = (d, a);
            if d == 0 {
                break;
            }
        }
    }
    best
}

fn witness_flat(e: &SubspaceEnumeration, index: u64, a: u32) -> Flat {
    Flat::from_subspace(&e.get(index), a)
}

/// `deg_r(f)`: subspaces outer, cosets inner, stopping at the first flat of degree 0.
/// Ties resolve to the first flat in enumeration order.
pub fn r_degree(f: &BoolFun, r: usize) -> Result<RDegree> {
    let e = SubspaceEnumeration::new(f.num_vars(), r)?;
    let mut rows = vec![0u32; r];
    let mut best: Option<(usize, u64, u32)> = None;
    for i in 0..e.len() {
        let (d, a) = subspace_min(f, &e, i, &mut rows);
        if best.is_none_or(|(bd, _, _)| d < bd) {
            best = Some((d, i, a));
            if d == 0 {
                break;
            }
        }
    }
    let (value, i, a) = best.expect("at least one subspace exists");
    Ok(RDegree {
        value,
        witness: witness_flat(&e, i, a),
    })
}

/// Parallel [`r_degree`] on the current rayon pool; same value and witness.
pub fn par_r_degree(f: &BoolFun, r: usize) -> Result<RDegree> {
    let e = SubspaceEnumeration::new(f.num_vars(), r)?;
    let first_zero = AtomicU64::new(u64::MAX);
    let best = (0..e.len())
        .into_par_iter()
        .map_init(
            || vec![0u32; r],
            |rows, i| {
                if i > first_zero.load(Ordering::Relaxed) {
                    return None;
                }
                let (d, a) = subspace_min(f, &e, i, rows);
                if d == 0 {
                    first_zero.fetch_min(i, Ordering::Relaxed);
                }
                Some((d, i, a))
            },
        )
        .flatten()
        .min_by_key(|&(d, i, _)| (d, i))
        .expect("at least one subspace exists");
    Ok(RDegree {
        value: best.0,
        witness: witness_flat(&e, best.1, best.2),
    })
}

fn half(m: usize) -> usize {
    m.div_ceil(2)
}

/// Two constant cosets of one subspace, if any: `(V, a, b)`.
fn two_constant_cosets(f: &BoolFun, v: &Subspace, span: &[u32]) -> Option<(u32, u32)> {
    let mut first = None;
    for a in v.coset_reps() {
        if coset_is_constant(f, a, span, v.dim()) {
            match first {
                None => first = Some(a),
                Some(b) => return Some((b, a)),
            }
        }
    }
    None
}

fn abnormality_scan_dim(f: &BoolFun) -> Option<usize> {
    let m = f.num_vars();
    if m == 0 {
        None
    } else {
        Some(half(m) - 1)
    }
}

/// Abnormality test: for every `(ceil(m/2) - 1)`-dimensional subspace, count
/// the cosets on which `f` is constant; two such cosets give a
/// `ceil(m/2)`-flat where `f` is constant or affine.
pub fn is_abnormal(f: &BoolFun) -> bool {
    abnormality_witness(f).is_none()
}

/// A `ceil(m/2)`-flat on which `f` has degree at most 1, or `None` if `f` is abnormal.
pub fn abnormality_witness(f: &BoolFun) -> Option<Flat> {
    let Some(d) = abnormality_scan_dim(f) else {
        return Some(Flat::new(0, vec![], 0).expect("empty flat"));
    };
    let e = SubspaceEnumeration::new(f.num_vars(), d).expect("dimension in range");
    let mut rows = vec![0u32; d];
    (0..e.len()).find_map(|i| constant_pair_flat(f, &e, i, &mut rows))
}

fn constant_pair_flat(f: &BoolFun, e: &SubspaceEnumeration, i: u64, rows: &mut [u32]) -> Option<Flat> {
    e.basis_into(i, rows);
    let v = Subspace::from_canonical(e.ambient_dim(), rows);
    let span = span_of(rows);
    let (a, b) = two_constant_cosets(f, &v, &span)?;
    let mut basis = rows.to_vec();
    basis.push(a ^ b);
    let joined = Subspace::span(e.ambient_dim(), &basis).expect("in range");
    Some(Flat::from_subspace(&joined, a))
}

/// Parallel [`is_abnormal`] on the current rayon pool.
pub fn par_is_abnormal(f: &BoolFun) -> bool {
    let Some(d) = abnormality_scan_dim(f) else {
        return false;
    };
    let e = SubspaceEnumeration::new(f.num_vars(), d).expect("dimension in range");
    !(0..e.len())
        .into_par_iter()
        .map_init(
            || vec![0u32; d],
            |rows, i| constant_pair_flat(f, &e, i, rows).is_some(),
        )
        .any(|found| found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalityKind {
    Normal,
    WeaklyNormal,
    Abnormal,
}

impl NormalityKind {
    pub fn from_half_degree(d: usize) -> Self {
        match d {
            0 => NormalityKind::Normal,
            1 => NormalityKind::WeaklyNormal,
            _ => NormalityKind::Abnormal,
        }
    }
}

impl fmt::Display for NormalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalityKind::Normal => "normal",
            NormalityKind::WeaklyNormal => "weakly-normal",
            NormalityKind::Abnormal => "abnormal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityClass {
    pub kind: NormalityKind,
    /// `deg_{ceil(m/2)}(f)`
    pub half_degree: usize,
    /// A `ceil(m/2)`-flat on which the restriction has degree `half_degree`.
    pub witness: Flat,
}

pub fn classify_normality(f: &BoolFun) -> NormalityClass {
    let rd = r_degree(f, half(f.num_vars())).expect("dimension in range");
    NormalityClass {
        kind: NormalityKind::from_half_degree(rd.value),
        half_degree: rd.value,
        witness: rd.witness,
    }
}

pub fn par_classify_normality(f: &BoolFun) -> NormalityClass {
    let rd = par_r_degree(f, half(f.num_vars())).expect("dimension in range");
    NormalityClass {
        kind: NormalityKind::from_half_degree(rd.value),
        half_degree: rd.value,
        witness: rd.witness,
    }
}

/// Which functions of a stream count toward a table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// `deg f == k`
    Exact,
    /// `deg f <= k`
    AtMost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DTableSpec {
    pub r: usize,
    pub k: usize,
    pub m: usize,
    pub mode: DegreeMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTableResult {
    pub spec: DTableSpec,
    /// Maximum `deg_r` over the functions that matched the degree filter.
    pub max: usize,
    /// `deg_r` value -> number of functions.
    pub histogram: BTreeMap<usize, usize>,
    pub considered: usize,
    /// Brute-force work estimate `N 2^(m-r) [m r]_2 r 2^r` for the `N` considered functions.
    pub predicted_work: u128,
}

/// Brute-force cost of computing `deg_r` for `representatives` functions on `m` variables.
pub fn work_factor(representatives: u128, r: usize, m: usize) -> Result<u128> {
    let flats = gaussian_binomial(m, r)? << (m - r);
    Ok((representatives * flats * (r as u128)) << r)
}

/// Maximum `deg_r` over a stream of representatives, filtered by degree.
pub fn d_table<I>(functions: I, r: usize, k: usize, mode: DegreeMode) -> Result<DTableResult>
where
    I: IntoIterator<Item = BoolFun>,
{
    let mut m = None;
    let mut histogram = BTreeMap::new();
    let mut considered = 0usize;
    for f in functions {
        match m {
            None => m = Some(f.num_vars()),
            Some(m) if m != f.num_vars() => {
                return Err(Error::Dimension {
                    expected: m,
                    found: f.num_vars(),
                })
            }
            _ => {}
        }
        let deg = f.degree();
        let keep = match mode {
            DegreeMode::Exact => deg == k,
            DegreeMode::AtMost => deg <= k,
        };
        if !keep {
            continue;
        }
        let value = r_degree(&f, r)?.value;
        *histogram.entry(value).or_insert(0) += 1;
        considered += 1;
    }
    let m = m.ok_or(Error::EmptyInput)?;
    let max = *histogram.keys().next_back().ok_or(Error::EmptyInput)?;
    Ok(DTableResult {
        spec: DTableSpec { r, k, m, mode },
        max,
        histogram,
        considered,
        predicted_work: work_factor(considered as u128, r, m)?,
    })
}

/// `D_r(k, m) = max_{1 <= l <= k} D+_r(l, m)` from exact-degree entries `(l, value)`.
pub fn at_most_from_exact(exact: &[(usize, usize)], k: usize) -> Option<usize> {
    exact
        .iter()
        .filter(|(l, _)| (1..=k).contains(l))
        .map(|&(_, v)| v)
        .max()
}

/// Checks `D_r(k, m') <= D_r(min(k, m), m)` for a pair of complete at-most tables
/// with `m <= m'`. Returns an error if the pair is not comparable.
pub fn mono_consistent(larger: &DTableResult, smaller: &DTableResult) -> Result<bool> {
    let (big, small) = (larger.spec, smaller.spec);
    if big.r != small.r || small.m > big.m || small.k != big.k.min(small.m) {
        return Err(Error::Domain(format!(
            "tables ({}, {}, {}) and ({}, {}, {}) are not comparable",
            big.r, big.k, big.m, small.r, small.k, small.m
        )));
    }
    Ok(larger.max <= smaller.max)
}
