//! Linear subspaces and flats of `F_2^m`.
//!
//! A subspace is identified by its reduced row-echelon basis: the pivot of a
//! row is its highest set bit, rows are sorted by increasing pivot, and every
//! pivot column is clear in all other rows. The canonical representative of a
//! coset `a + V` is `a` with all pivot columns cleared, which is also the
//! smallest integer in the coset.

use std::fmt;

use crate::boolfun::{apply_rows, MAX_VARS};
use crate::error::{parse_err, Error, Result};

/// Gaussian binomial coefficient `[m r]_2`, the number of `r`-dimensional
/// subspaces of `F_2^m`.
pub fn gaussian_binomial(m: usize, r: usize) -> Result<u128> {
    if r > m {
        return Err(Error::Domain(format!("dimension {r} exceeds ambient dimension {m}")));
    }
    if m > 64 {
        return Err(Error::Capacity(format!("ambient dimension {m} is too large")));
    }
    // [m, i] = [m, i-1] (2^(m-i+1) - 1) / (2^i - 1), exact at every step.
    let mut acc: u128 = 1;
    for i in 1..=r {
        let num = (1u128 << (m - i + 1)) - 1;
        let den = (1u128 << i) - 1;
        acc = acc
            .checked_mul(num)
            .ok_or_else(|| Error::Capacity(format!("[{m} {r}]_2 overflows")))?
            / den;
    }
    Ok(acc)
}

#[inline]
fn pivot(row: u32) -> u32 {
    31 - row.leading_zeros()
}

/// Reduced row-echelon form of the span of `vectors`; dependent vectors are dropped.
pub(crate) fn rref(vectors: &[u32]) -> Vec<u32> {
    let mut rows: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &r in &rows {
            if v >> pivot(r) & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            continue;
        }
        let p = pivot(v);
        for r in rows.iter_mut() {
            if *r >> p & 1 == 1 {
                *r ^= v;
            }
        }
        rows.push(v);
        // keep pivots of earlier rows reduced against the new one
        rows.sort_by_key(|&r| pivot(r));
    }
    // full back-substitution so each pivot column appears in exactly one row
    for i in 0..rows.len() {
        let p = pivot(rows[i]);
        for j in 0..rows.len() {
            if i != j && rows[j] >> p & 1 == 1 {
                rows[j] ^= rows[i];
            }
        }
    }
    rows.sort_by_key(|&r| pivot(r));
    rows
}

/// All `2^k` combinations of `basis`, indexed by coefficient vector.
pub(crate) fn span_of(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; 1 << basis.len()];
    for (i, &b) in basis.iter().enumerate() {
        let half = 1 << i;
        for t in 0..half {
            out[half + t] = out[t] ^ b;
        }
    }
    out
}

/// Scatter the low bits of `value` into the set positions of `mask`.
#[inline]
pub(crate) fn deposit(mut value: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if value & 1 == 1 {
            out |= low;
        }
        value >>= 1;
        mask ^= low;
    }
    out
}

/// A linear subspace of `F_2^m` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    m: usize,
    basis: Vec<u32>,
}

impl Subspace {
    /// Span of arbitrary vectors (dependent ones allowed).
    pub fn span(m: usize, vectors: &[u32]) -> Result<Self> {
        check_vectors(m, vectors)?;
        Ok(Subspace {
            m,
            basis: rref(vectors),
        })
    }

    /// Wraps rows that are already in canonical form.
    pub(crate) fn from_canonical(m: usize, rows: &[u32]) -> Self {
        debug_assert_eq!(rref(rows), rows);
        Subspace {
            m,
            basis: rows.to_vec(),
        }
    }

    pub fn full(m: usize) -> Self {
        Subspace {
            m,
            basis: (0..m).map(|i| 1 << i).collect(),
        }
    }

    pub fn trivial(m: usize) -> Self {
        Subspace { m, basis: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn pivot_mask(&self) -> u32 {
        self.basis.iter().fold(0, |acc, &r| acc | 1 << pivot(r))
    }

    /// All `2^dim` elements, indexed by their coordinates in the basis.
    pub fn elements(&self) -> Vec<u32> {
        span_of(&self.basis)
    }

    /// Canonical representative of `a + V`.
    pub fn reduce(&self, a: u32) -> u32 {
        self.basis.iter().fold(a, |acc, &r| {
            if acc >> pivot(r) & 1 == 1 {
                acc ^ r
            } else {
                acc
            }
        })
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Canonical representatives of all `2^(m - dim)` cosets, in increasing order.
    pub fn coset_reps(&self) -> impl Iterator<Item = u32> + '_ {
        let free = full_mask(self.m) & !self.pivot_mask();
        (0..1u64 << (self.m - self.dim())).map(move |i| deposit(i, free as u64) as u32)
    }

    /// `V^perp = { a : a.v = 0 for all v in V }`.
    pub fn orthogonal(&self) -> Subspace {
        let pivots = self.pivot_mask();
        // x.v = 0 for all v: for each free column c, the vector e_c plus the
        // pivot columns of the rows that contain c.
        let mut vecs = Vec::new();
        for c in 0..self.m as u32 {
            if pivots >> c & 1 == 1 {
                continue;
            }
            let mut v = 1u32 << c;
            for &r in &self.basis {
                if r >> c & 1 == 1 {
                    v |= 1 << pivot(r);
                }
            }
            vecs.push(v);
        }
        Subspace {
            m: self.m,
            basis: rref(&vecs),
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(m={}, [", self.m)?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r:x}")?;
        }
        f.write_str("])")
    }
}

fn full_mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

fn check_vectors(m: usize, vectors: &[u32]) -> Result<()> {
    if m > MAX_VARS {
        return Err(Error::Capacity(format!("ambient dimension {m} exceeds {MAX_VARS}")));
    }
    if let Some(v) = vectors.iter().find(|&&v| v & !full_mask(m) != 0) {
        return Err(Error::InvalidFlat(format!("vector {v:x} does not live in F_2^{m}")));
    }
    Ok(())
}

/// An affine subspace `a + span(b_1, ..., b_r)`.
///
/// The basis is kept in the order it was given, since restrictions are
/// parametrized by it. [`Flat::canonical`] yields the canonical form used for
/// identity and enumeration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    m: usize,
    basis: Vec<u32>,
    translate: u32,
}

impl Flat {
    /// Validates that the basis is linearly independent and lives in `F_2^m`.
    pub fn new(m: usize, basis: Vec<u32>, translate: u32) -> Result<Self> {
        check_vectors(m, &basis)?;
        check_vectors(m, &[translate])?;
        if rref(&basis).len() != basis.len() {
            return Err(Error::InvalidFlat("basis is rank deficient".into()));
        }
        Ok(Flat {
            m,
            basis,
            translate,
        })
    }

    /// The flat `a + V` with `V`'s canonical basis and the canonical translate.
    pub fn from_subspace(v: &Subspace, a: u32) -> Self {
        Flat {
            m: v.m,
            translate: v.reduce(a),
            basis: v.basis.clone(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn translate(&self) -> u32 {
        self.translate
    }

    pub fn subspace(&self) -> Subspace {
        Subspace {
            m: self.m,
            basis: rref(&self.basis),
        }
    }

    pub fn canonical(&self) -> Flat {
        Flat::from_subspace(&self.subspace(), self.translate)
    }

    /// `a + sum t_i b_i`.
    pub fn point(&self, t: u32) -> u32 {
        self.translate ^ apply_rows(&self.basis, t)
    }

    /// `sum t_i b_i` for every `t`, indexed by `t`.
    pub fn span_offsets(&self) -> Vec<u32> {
        span_of(&self.basis)
    }

    pub fn points(&self) -> Vec<u32> {
        let a = self.translate;
        self.span_offsets().into_iter().map(|v| v ^ a).collect()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.subspace().contains(x ^ self.translate)
    }

    /// Coordinates, translate-adjusted linear forms, complement and `V^perp`.
    pub fn lift_data(&self) -> LiftData {
        lift_data(self)
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flat({self})")
    }
}

/// `basis=<hex row>,<hex row>,...;a=<hex>`
impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("basis=")?;
        for (i, r) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r:x}")?;
        }
        write!(f, ";a={:x}", self.translate)
    }
}

impl Flat {
    /// Parses the text form, checking it against the ambient dimension `m`.
    pub fn parse(m: usize, text: &str) -> Result<Flat> {
        let text = text.trim();
        let (basis_part, a_part) = text
            .split_once(';')
            .ok_or_else(|| parse_err(0, "expected \"basis=...;a=...\""))?;
        let rows = basis_part
            .strip_prefix("basis=")
            .ok_or_else(|| parse_err(0, "expected \"basis=\""))?;
        let mut basis = Vec::new();
        let mut offset = "basis=".len();
        if !rows.is_empty() {
            for row in rows.split(',') {
                let v = u32::from_str_radix(row.trim(), 16)
                    .map_err(|_| parse_err(offset, format!("bad hex row {row:?}")))?;
                basis.push(v);
                offset += row.len() + 1;
            }
        }
        let a_offset = basis_part.len() + 1;
        let a_hex = a_part
            .strip_prefix("a=")
            .ok_or_else(|| parse_err(a_offset, "expected \"a=\""))?;
        let translate = u32::from_str_radix(a_hex.trim(), 16)
            .map_err(|_| parse_err(a_offset + 2, format!("bad hex translate {a_hex:?}")))?;
        Flat::new(m, basis, translate)
    }
}

/// Affine coordinate functionals of a flat together with a basis completion
/// and the orthogonal complement of its direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftData {
    /// `(mask, constant)` pairs: `l_i(x) = mask . x + constant`, with
    /// `l_i(a + sum t_j b_j) = t_i`.
    pub functionals: Vec<(u32, bool)>,
    /// Vectors completing the flat's basis to a basis of `F_2^m`.
    pub complement: Vec<u32>,
    /// Basis of `V^perp`.
    pub orthogonal: Vec<u32>,
}

impl LiftData {
    pub fn eval(&self, i: usize, x: u32) -> bool {
        let (mask, c) = self.functionals[i];
        ((mask & x).count_ones() & 1 == 1) ^ c
    }
}

pub fn lift_data(flat: &Flat) -> LiftData {
    let m = flat.m;
    let r = flat.dim();
    let pivots = flat.subspace().pivot_mask();
    let complement: Vec<u32> = (0..m as u32)
        .filter(|c| pivots >> c & 1 == 0)
        .map(|c| 1 << c)
        .collect();
    let mut rows: Vec<u32> = flat.basis.clone();
    rows.extend_from_slice(&complement);
    let inverse = invert(&rows).expect("basis plus pivot-free unit vectors is invertible");
    // x = (t, s) M  =>  (t, s) = x M^-1, so coordinate i is x . column_i(M^-1)
    let column = |i: usize| -> u32 {
        inverse
            .iter()
            .enumerate()
            .filter(|(_, &row)| row >> i & 1 == 1)
            .fold(0, |acc, (j, _)| acc | 1 << j)
    };
    let functionals = (0..r)
        .map(|i| {
            let mask = column(i);
            (mask, (mask & flat.translate).count_ones() & 1 == 1)
        })
        .collect();
    let orthogonal = (r..m).map(column).collect();
    LiftData {
        functionals,
        complement,
        orthogonal,
    }
}

/// Inverse of the square matrix whose rows are `rows`, or `None` if singular.
pub(crate) fn invert(rows: &[u32]) -> Option<Vec<u32>> {
    let n = rows.len();
    let mut a: Vec<u32> = rows.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        for r in 0..n {
            if r != col && a[r] >> col & 1 == 1 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    Some(inv)
}

/// A pivot pattern together with the free positions of each row.
#[derive(Clone, Debug)]
struct Pattern {
    pivots: Vec<u32>,
    /// For each row, the mask of free (non-pivot, below-pivot) columns.
    free: Vec<u32>,
    free_bits: u32,
}

/// Indexed enumeration of all `r`-dimensional subspaces of `F_2^m`.
///
/// Subspaces are grouped by pivot pattern (patterns in lexicographic order of
/// their pivot sets) and, inside a pattern, ordered by the integer formed by
/// their free entries. `get(i)` is random access, so the index range can be
/// split across workers.
#[derive(Clone, Debug)]
pub struct SubspaceEnumeration {
    m: usize,
    r: usize,
    patterns: Vec<Pattern>,
    /// `offsets[p]` is the index of the first subspace with pattern `p`.
    offsets: Vec<u64>,
    total: u64,
}

impl SubspaceEnumeration {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if r > m {
            return Err(Error::Domain(format!("dimension {r} exceeds ambient dimension {m}")));
        }
        if m > MAX_VARS {
            return Err(Error::Capacity(format!("ambient dimension {m} exceeds {MAX_VARS}")));
        }
        let mut patterns = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0u64;
        for pivots in combinations(m as u32, r) {
            let pivot_mask = pivots.iter().fold(0u32, |acc, &p| acc | 1 << p);
            let free: Vec<u32> = pivots
                .iter()
                .map(|&p| ((1u32 << p) - 1) & !pivot_mask)
                .collect();
            let free_bits: u32 = free.iter().map(|f| f.count_ones()).sum();
            if free_bits >= 63 {
                return Err(Error::Capacity(format!("[{m} {r}]_2 is too large to enumerate")));
            }
            offsets.push(total);
            total = total
                .checked_add(1u64 << free_bits)
                .ok_or_else(|| Error::Capacity(format!("[{m} {r}]_2 is too large to enumerate")))?;
            patterns.push(Pattern {
                pivots,
                free,
                free_bits,
            });
        }
        Ok(SubspaceEnumeration {
            m,
            r,
            patterns,
            offsets,
            total,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of pivot patterns (the shards used for parallel work).
    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    /// Index range of the subspaces sharing pivot pattern `p`.
    pub fn pattern_range(&self, p: usize) -> std::ops::Range<u64> {
        let end = self.offsets.get(p + 1).copied().unwrap_or(self.total);
        self.offsets[p]..end
    }

    /// Basis rows of subspace `index`, written into `rows` (length `r`).
    pub fn basis_into(&self, index: u64, rows: &mut [u32]) {
        debug_assert!(index < self.total);
        let p = match self.offsets.binary_search(&index) {
            Ok(p) => p,
            Err(p) => p - 1,
        };
        let pattern = &self.patterns[p];
        let mut counter = index - self.offsets[p];
        for (i, (&pv, &free)) in pattern.pivots.iter().zip(&pattern.free).enumerate() {
            let width = free.count_ones();
            let bits = counter & ((1u64 << width) - 1);
            counter >>= width;
            rows[i] = (1 << pv) | deposit(bits, free as u64) as u32;
        }
        debug_assert!(pattern.free_bits < 64);
    }

    pub fn get(&self, index: u64) -> Subspace {
        let mut rows = vec![0u32; self.r];
        self.basis_into(index, &mut rows);
        Subspace { m: self.m, basis: rows }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }
}

/// All `r`-subsets of `0..n` in lexicographic order, each sorted ascending.
fn combinations(n: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (0..r as u32).collect();
    if r as u32 > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // advance
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (r - i) as u32 {
                current[i] += 1;
                for j in i + 1..r {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Streams every `r`-dimensional subspace of `F_2^m` once, in canonical order.
pub fn enumerate_subspaces(m: usize, r: usize) -> Result<impl Iterator<Item = Subspace>> {
    let e = SubspaceEnumeration::new(m, r)?;
    Ok((0..e.len()).map(move |i| e.get(i)))
}

/// Streams every `r`-dimensional flat of `F_2^m` (subspaces outer, cosets inner).
pub fn enumerate_flats(m: usize, r: usize) -> Result<impl Iterator<Item = Flat>> {
    Ok(enumerate_subspaces(m, r)?.flat_map(|v| {
        let reps: Vec<u32> = v.coset_reps().collect();
        reps.into_iter().map(move |a| Flat::from_subspace(&v, a))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(5, 3).unwrap(), 155);
        assert_eq!(gaussian_binomial(8, 3).unwrap(), 97_155);
        assert_eq!(gaussian_binomial(8, 3).unwrap() * 32, 3_108_960);
        assert_eq!(gaussian_binomial(7, 3).unwrap(), 11_811);
        assert_eq!(gaussian_binomial(7, 4).unwrap(), 11_811);
        for m in 0..10 {
            assert_eq!(gaussian_binomial(m, 0).unwrap(), 1);
            assert_eq!(gaussian_binomial(m, m).unwrap(), 1);
        }
        assert!(matches!(gaussian_binomial(3, 4), Err(Error::Domain(_))));
        // [16 8]_2 exceeds u64
        assert!(gaussian_binomial(16, 8).unwrap() > u64::MAX as u128);
    }

    #[test]
    fn enumeration_counts() {
        for m in 0..=7 {
            for r in 0..=m {
                let e = SubspaceEnumeration::new(m, r).unwrap();
                assert_eq!(e.len() as u128, gaussian_binomial(m, r).unwrap(), "m={m} r={r}");
            }
        }
        let lines: Vec<_> = enumerate_subspaces(3, 1).unwrap().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|v| v.dim() == 1 && v.basis()[0] != 0));
    }

    /// Brute-force closure oracle: every subset of vectors spans some subspace;
    /// collect the distinct element sets of dimension r.
    fn brute_force_subspaces(m: usize, r: usize) -> BTreeSet<Vec<u32>> {
        let n = 1u32 << m;
        let mut out = BTreeSet::new();
        // choose r vectors by nested counting (m <= 4 keeps this small)
        let mut stack = vec![(0u32, Vec::<u32>::new())];
        while let Some((start, chosen)) = stack.pop() {
            if chosen.len() == r {
                let mut set: BTreeSet<u32> = BTreeSet::new();
                set.insert(0);
                for &c in &chosen {
                    let snapshot: Vec<u32> = set.iter().copied().collect();
                    for s in snapshot {
                        set.insert(s ^ c);
                    }
                }
                if set.len() == 1 << r {
                    out.insert(set.into_iter().collect());
                }
                continue;
            }
            for v in start..n {
                let mut next = chosen.clone();
                next.push(v);
                stack.push((v + 1, next));
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in 1..=4 {
            for r in 0..=m {
                let expected = brute_force_subspaces(m, r);
                let got: BTreeSet<Vec<u32>> = enumerate_subspaces(m, r)
                    .unwrap()
                    .map(|v| {
                        let mut e = v.elements();
                        e.sort();
                        e
                    })
                    .collect();
                assert_eq!(got, expected, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn enumeration_is_canonical() {
        for v in enumerate_subspaces(6, 3).unwrap() {
            assert_eq!(Subspace::span(6, v.basis()).unwrap(), v);
        }
    }

    #[test]
    fn coset_reps_partition() {
        let v = Subspace::span(5, &[0b00011, 0b10100]).unwrap();
        let mut seen = BTreeSet::new();
        for a in v.coset_reps() {
            assert_eq!(v.reduce(a), a);
            for e in v.elements() {
                assert!(seen.insert(a ^ e));
            }
            // smallest element of its coset
            assert!(v.elements().iter().all(|&e| a <= a ^ e));
        }
        assert_eq!(seen.len(), 32);
    }

    #[test]
    fn orthogonal_complement() {
        let v = Subspace::span(4, &[0b0001, 0b0100]).unwrap();
        assert_eq!(v.orthogonal(), Subspace::span(4, &[0b0010, 0b1000]).unwrap());
        for r in 0..=5 {
            for v in enumerate_subspaces(5, r).unwrap() {
                let perp = v.orthogonal();
                assert_eq!(v.dim() + perp.dim(), 5);
                assert_eq!(perp.orthogonal(), v);
                for &a in perp.basis() {
                    for &b in v.basis() {
                        assert_eq!((a & b).count_ones() % 2, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn lift_data_identity() {
        let flat = Flat::new(4, vec![1, 2, 4, 8], 0).unwrap();
        let lift = lift_data(&flat);
        assert_eq!(lift.functionals, vec![(1, false), (2, false), (4, false), (8, false)]);
        assert!(lift.orthogonal.is_empty());
        assert!(lift.complement.is_empty());
    }

    #[test]
    fn lift_data_coordinates() {
        let flat = Flat::new(6, vec![0b101101, 0b010011, 0b000110], 0b110001).unwrap();
        let lift = lift_data(&flat);
        for t in 0..8u32 {
            let x = flat.point(t);
            for i in 0..3 {
                assert_eq!(lift.eval(i, x), t >> i & 1 == 1);
            }
        }
        for &o in &lift.orthogonal {
            for &b in flat.basis() {
                assert_eq!((o & b).count_ones() % 2, 0);
            }
        }
        assert_eq!(rref(&lift.orthogonal).len(), 3);
    }

    #[test]
    fn flat_validation_and_text() {
        assert!(matches!(Flat::new(3, vec![1, 2, 3], 0), Err(Error::InvalidFlat(_))));
        assert!(matches!(Flat::new(3, vec![8], 0), Err(Error::InvalidFlat(_))));
        let flat = Flat::new(5, vec![0b00100, 0b01000, 0b10000], 0b10011).unwrap();
        let text = flat.to_string();
        assert_eq!(text, "basis=4,8,10;a=13");
        assert_eq!(Flat::parse(5, &text).unwrap(), flat);
        assert_eq!(flat.canonical().translate(), 0b00011);
        let point = Flat::parse(3, "basis=;a=5").unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.points(), vec![5]);
        assert!(Flat::parse(3, "basis=1,zz;a=0").is_err());
    }

    #[test]
    fn invert_round_trip() {
        let rows = vec![0b011, 0b110, 0b100];
        let inv = invert(&rows).unwrap();
        for x in 0..8u32 {
            assert_eq!(apply_rows(&inv, apply_rows(&rows, x)), x);
        }
        assert!(invert(&[0b011, 0b110, 0b101]).is_none());
    }
}
