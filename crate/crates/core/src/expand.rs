//! Bent expansions of near-bent functions through their duals.
//!
//! For a near-bent `g` on `n = m - 1` variables, a bent `f = (g || h)` has a
//! dual `F = (F0 || F1)` fixed by `g` wherever `W_g != 0`: both halves equal
//! the sign bit of `W_g(a)`. On the zeros of `W_g` the halves differ, so
//! `F1 = F0 + zeta` with `zeta` the indicator of those zeros. Conversely every
//! bent `F` of that shape is the dual of an expansion of `g`. We search for
//! `F0` block by block.
//!
//! A block word `lambda` of length `r` fixes the top `r` coordinates of the
//! `m`-variable space, most significant first: `lambda[0]` is `x_m`,
//! `lambda[1]` is `x_{m-1}` and so on. Read as a binary number `c`, the block
//! holds the points `t + 2^(m-r) c`. Restricted to any block of a bent
//! function of `m` variables, the Walsh values are multiples of
//! `2^(m/2 - r + 1)` bounded by `2^(m/2)` in absolute value.

use std::fmt;

use rayon::prelude::*;

use crate::bent::{spectral_class_of, SpectralKind};
use crate::boolfun::BoolFun;
use crate::error::{Error, Result};
use crate::walsh::{butterfly, WalshSpectrum};

/// Default cap on weight-pruned assignments per block.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpandOptions {
    /// Maximum number of weight-pruned assignments enumerated for one block.
    pub budget: u128,
    /// Merge only pairs with equal keys. Turning this off gives the same output, slower.
    pub key_filter: bool,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions {
            budget: DEFAULT_BUDGET,
            key_filter: true,
        }
    }
}

/// A block word: `len` bits, bit `len - 1` of `bits` is the first letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockWord {
    bits: u32,
    len: usize,
}

impl BlockWord {
    pub fn new(bits: u32, len: usize) -> Result<Self> {
        if len > 31 || bits >> len != 0 {
            return Err(Error::Domain(format!("{bits} is not a word of length {len}")));
        }
        Ok(BlockWord { bits, len })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = 0;
        for (pos, ch) in text.chars().enumerate() {
            let b = match ch {
                '0' => 0,
                '1' => 1,
                _ => return Err(crate::error::parse_err(pos, format!("bad letter {ch:?}"))),
            };
            bits = bits << 1 | b;
        }
        BlockWord::new(bits, text.len())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `lambda` followed by one more letter.
    pub fn child(&self, letter: bool) -> BlockWord {
        BlockWord {
            bits: self.bits << 1 | letter as u32,
            len: self.len + 1,
        }
    }

    /// The block index `c`.
    pub fn value(&self) -> u32 {
        self.bits
    }
}

impl fmt::Display for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.len).rev() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockWord({self})")
    }
}

/// Zeros of the Walsh spectrum of a near-bent function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroIndicator {
    /// `zeta(w) = 1` iff `W_g(w) = 0`.
    pub zeta: BoolFun,
}

impl ZeroIndicator {
    /// `m_lambda`: zeros of `W_g` inside block `lambda`. The first letter picks a
    /// half of the dual and does not move the block within the domain of `g`.
    pub fn block_zeros(&self, lambda: &BlockWord) -> Result<usize> {
        let n = self.zeta.num_vars();
        if lambda.is_empty() || lambda.len() > n + 1 {
            return Err(Error::Domain(format!("block word of length {} for {n} variables", lambda.len())));
        }
        let r = lambda.len() - 1;
        let c = lambda.bits & ((1 << r) - 1);
        Ok(self.zeta.block(r, c).weight())
    }
}

fn check_near_bent(g: &BoolFun, w: &WalshSpectrum) -> Result<()> {
    if spectral_class_of(g.num_vars(), w).kind != SpectralKind::NearBent {
        return Err(Error::Spectral(format!(
            "{} is not near-bent on {} variables",
            g.to_hex(),
            g.num_vars()
        )));
    }
    Ok(())
}

pub fn zero_indicator(g: &BoolFun) -> Result<ZeroIndicator> {
    let w = g.walsh();
    check_near_bent(g, &w)?;
    Ok(ZeroIndicator {
        zeta: BoolFun::from_fn(g.num_vars(), |a| w.get(a) == 0),
    })
}

/// Top coordinate of the domain of `g`, added when the lower half holds too many zeros.
fn shift_variable(g: &BoolFun) -> BoolFun {
    BoolFun::variable(g.num_vars(), g.num_vars())
}

fn needs_shift(z: &ZeroIndicator) -> bool {
    let n = z.zeta.num_vars();
    n >= 2 && z.zeta.block(1, 0).weight() > 1 << (n - 2)
}

/// `g`, or `g + x_{m-1}` when that leaves at most `2^(m-3)` zeros in block `00`.
pub fn normalize_prefix(g: &BoolFun) -> Result<BoolFun> {
    let z = zero_indicator(g)?;
    Ok(if needs_shift(&z) { g ^ &shift_variable(g) } else { g.clone() })
}

/// Restriction-spectrum key: bit `a` set iff `W_phi(a) = 2^(m/2-1) mod 2^(m/2)`,
/// where `m - 2` is the number of variables of `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub mask: u64,
}

pub fn key(phi: &BoolFun) -> Result<Key> {
    let k = phi.num_vars();
    if k % 2 == 1 || k > 6 {
        return Err(Error::Domain(format!("keys are defined for 0, 2, 4 or 6 variables, not {k}")));
    }
    Ok(Key {
        mask: residue_key(phi.walsh().values(), 1i32 << (k / 2)),
    })
}

/// A block restriction compatible with `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub lambda: BlockWord,
    pub phi: BoolFun,
    /// Positions whose value is fixed by the sign of `W_g`.
    pub forced_mask: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub lambda: BlockWord,
    /// Candidates `phi` whose partner `phi + zeta_lambda` is a candidate too.
    pub members: Vec<Candidate>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `g` together with the data every block computation needs.
struct Prepared {
    m: usize,
    walsh: Vec<i32>,
}

impl Prepared {
    fn new(g: &BoolFun) -> Result<Self> {
        let w = g.walsh();
        check_near_bent(g, &w)?;
        let m = g.num_vars() + 1;
        if m > 8 {
            return Err(Error::Capacity(format!("expansion to {m} variables is not supported")));
        }
        Ok(Prepared {
            m,
            walsh: w.values().to_vec(),
        })
    }

    fn e(&self) -> i32 {
        1 << (self.m / 2)
    }
}

/// Forced ones and free positions of a block, as truth-table masks.
#[derive(Clone, Copy, Debug)]
struct BlockShape {
    vars: usize,
    r: usize,
    ones: u128,
    free: u128,
}

fn block_shape(p: &Prepared, lambda: &BlockWord) -> Result<BlockShape> {
    let r = lambda.len();
    if r == 0 || r > 3 || r >= p.m {
        return Err(Error::Domain(format!("block words must have length 1 to 3, found {lambda}")));
    }
    let vars = p.m - r;
    let n_mask = (1u32 << (p.m - 1)) - 1;
    let (mut ones, mut free) = (0u128, 0u128);
    let e = p.e();
    for t in 0..1u32 << vars {
        let point = (t | lambda.bits << vars) & n_mask;
        match p.walsh[point as usize] {
            0 => free |= 1 << t,
            v if v == -e => ones |= 1 << t,
            _ => {}
        }
    }
    Ok(BlockShape { vars, r, ones, free })
}

fn walsh_table(table: u128, vars: usize, out: &mut [i32; 128]) {
    let n = 1 << vars;
    for (x, v) in out[..n].iter_mut().enumerate() {
        *v = if table >> x & 1 == 1 { -1 } else { 1 };
    }
    butterfly(&mut out[..n]);
}

/// All Walsh values of `table` lie in the block spectrum set for level `r`.
fn in_block_set(values: &[i32], m: usize, r: usize) -> bool {
    let e = 1i32 << (m / 2);
    let step = 1i32 << (m / 2 + 1).saturating_sub(r);
    values.iter().all(|&v| v.abs() <= e && v % step == 0)
}

fn admissible_table(table: u128, shape: &BlockShape, m: usize, scratch: &mut [i32; 128]) -> bool {
    let n = 1 << shape.vars;
    walsh_table(table, shape.vars, scratch);
    if !in_block_set(&scratch[..n], m, shape.r) {
        return false;
    }
    walsh_table(table ^ shape.free, shape.vars, scratch);
    in_block_set(&scratch[..n], m, shape.r)
}

/// Free-bit counts `k` for which both `phi` and its partner pass the test at 0.
fn admissible_weights(shape: &BlockShape, m: usize) -> Vec<usize> {
    let free = shape.free.count_ones() as usize;
    let forced = shape.ones.count_ones() as i64;
    let size = 1i64 << shape.vars;
    let e = 1i64 << (m / 2);
    let step = 1i64 << (m / 2 + 1).saturating_sub(shape.r);
    let ok = |w: i64| {
        let v = size - 2 * w;
        v.abs() <= e && v % step == 0
    };
    (0..=free)
        .filter(|&k| ok(forced + k as i64) && ok(forced + (free - k) as i64))
        .collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Scatter the low bits of `value` into the set positions of `mask`.
fn deposit128(mut value: u128, mut mask: u128) -> u128 {
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

/// Calls `visit` on every `n`-bit word with exactly `k` ones (Gosper's hack).
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(u128)) {
    if k > n {
        return;
    }
    if k == 0 {
        visit(0);
        return;
    }
    let limit = 1u128 << n;
    let mut x = (1u128 << k) - 1;
    while x < limit {
        visit(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// Bits of the free assignment fixed per parallel task.
const SPLIT_BITS: usize = 6;

/// Blocks with more weight-pruned assignments than this are built from their halves.
const DIRECT_LIMIT: u128 = 1 << 16;

/// Left halves per parallel batch of a join.
const JOIN_CHUNK: usize = 1 << 12;

/// Deepest block level used by the search.
const MAX_LEVEL: usize = 3;

fn pruned_size(shape: &BlockShape, m: usize) -> (Vec<usize>, u128) {
    let free = shape.free.count_ones() as usize;
    let weights = admissible_weights(shape, m);
    let size = weights.iter().map(|&k| binomial(free, k)).sum();
    (weights, size)
}

fn enumerate_block(p: &Prepared, shape: &BlockShape, lambda: &BlockWord, budget: u128, parallel: bool) -> Result<Vec<u128>> {
    let free = shape.free.count_ones() as usize;
    let (weights, size) = pruned_size(shape, p.m);
    if size > budget {
        return Err(Error::Budget {
            block: lambda.to_string(),
            free,
            size,
            budget,
        });
    }
    // Assignments are split on their top `split` bits; each prefix is a task.
    let split = SPLIT_BITS.min(free);
    let low = free - split;
    let run = |prefix: u128| {
        let mut out = Vec::new();
        let mut scratch = [0i32; 128];
        let used = prefix.count_ones() as usize;
        for &k in &weights {
            if k < used {
                continue;
            }
            for_each_combination(low, k - used, |x| {
                let table = shape.ones | deposit128(prefix << low | x, shape.free);
                if admissible_table(table, shape, p.m, &mut scratch) {
                    out.push(table);
                }
            });
        }
        out
    };
    let prefixes = 0..1u128 << split;
    let mut members: Vec<u128> = if parallel {
        prefixes
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(run)
            .collect()
    } else {
        prefixes.flat_map(run).collect()
    };
    members.sort_unstable();
    Ok(members)
}

/// Bit set at `a` iff `values[a] = step mod 2 step`.
fn residue_key(values: &[i32], step: i32) -> u64 {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v.rem_euclid(2 * step) == step)
        .fold(0u64, |acc, (a, _)| acc | 1 << a)
}

fn table_key(table: u128, vars: usize, step: i32) -> u64 {
    let mut scratch = [0i32; 128];
    walsh_table(table, vars, &mut scratch);
    residue_key(&scratch[..1 << vars], step)
}

/// Admissible sets, built directly for small blocks and otherwise by joining
/// the two halves. Halves of a block whose spectrum is made of multiples of
/// `2s` have spectra made of multiples of `s`, and `(L || R)` is back in
/// multiples of `2s` exactly when `W_L = W_R mod 2s` everywhere, which is
/// what the residue key compares.
struct Search<'a> {
    p: &'a Prepared,
    options: &'a ExpandOptions,
    parallel: bool,
}

impl Search<'_> {
    fn members(&self, lambda: BlockWord) -> Result<Vec<u128>> {
        let shape = block_shape(self.p, &lambda)?;
        let (_, size) = pruned_size(&shape, self.p.m);
        let splittable = lambda.len() < MAX_LEVEL && shape.vars > 1;
        if splittable && size > DIRECT_LIMIT.min(self.options.budget) {
            self.split(lambda)
        } else {
            enumerate_block(self.p, &shape, &lambda, self.options.budget, self.parallel)
        }
    }

    /// `(L || R)` over admissible halves `L`, `R` of `lambda`.
    fn split(&self, lambda: BlockWord) -> Result<Vec<u128>> {
        let shape = block_shape(self.p, &lambda)?;
        let m = self.p.m;
        let mut out = self.join(lambda, |t, scratch| admissible_table(t, &shape, m, scratch).then_some(t))?;
        out.sort_unstable();
        Ok(out)
    }

    /// Runs `accept` on every `(L || R)` whose halves have equal residue keys.
    fn join<T: Send>(
        &self,
        lambda: BlockWord,
        accept: impl Fn(u128, &mut [i32; 128]) -> Option<T> + Sync,
    ) -> Result<Vec<T>> {
        let mut out = Vec::new();
        self.join_chunks(lambda, accept, |chunk| out.extend(chunk))?;
        Ok(out)
    }

    /// [`Search::join`] handing results to `emit` one chunk of left halves at a
    /// time, in an order that does not depend on the worker count.
    fn join_chunks<T: Send>(
        &self,
        lambda: BlockWord,
        accept: impl Fn(u128, &mut [i32; 128]) -> Option<T> + Sync,
        mut emit: impl FnMut(Vec<T>),
    ) -> Result<()> {
        let shape = block_shape(self.p, &lambda)?;
        let lo = self.members(lambda.child(false))?;
        let hi = self.members(lambda.child(true))?;
        let half_vars = shape.vars - 1;
        let child_step = 1i32 << (self.p.m / 2 + 1).saturating_sub(lambda.len() + 1);
        // right halves sorted by key; each left half scans its equal range
        let mut keyed: Vec<(u64, u128)> = if self.options.key_filter {
            hi.iter().map(|&r| (table_key(r, half_vars, child_step), r)).collect()
        } else {
            hi.iter().map(|&r| (0, r)).collect()
        };
        drop(hi);
        keyed.sort_unstable();
        let shift = 1u32 << half_vars;
        let visit = |&l: &u128| {
            let mut scratch = [0i32; 128];
            let pool = if self.options.key_filter {
                let k = table_key(l, half_vars, child_step);
                let start = keyed.partition_point(|&(x, _)| x < k);
                let end = keyed.partition_point(|&(x, _)| x <= k);
                &keyed[start..end]
            } else {
                &keyed[..]
            };
            pool.iter()
                .filter_map(|&(_, r)| accept(l | r << shift, &mut scratch))
                .collect::<Vec<_>>()
        };
        for chunk in lo.chunks(JOIN_CHUNK) {
            emit(if self.parallel {
                chunk.par_iter().flat_map_iter(visit).collect()
            } else {
                chunk.iter().flat_map(visit).collect()
            });
        }
        Ok(())
    }
}

fn to_candidate(table: u128, shape: &BlockShape, lambda: BlockWord) -> Candidate {
    Candidate {
        lambda,
        phi: table_fun(table, shape.vars),
        forced_mask: full_mask(shape.vars) & !shape.free,
    }
}

fn full_mask(vars: usize) -> u128 {
    if vars == 7 {
        u128::MAX
    } else {
        (1u128 << (1 << vars)) - 1
    }
}

fn table_fun(table: u128, vars: usize) -> BoolFun {
    BoolFun::from_fn(vars, |x| table >> x & 1 == 1)
}

/// The `lambda`-admissible block functions for `g`, sorted by truth table.
pub fn admissible_set(g: &BoolFun, lambda: &BlockWord, options: &ExpandOptions) -> Result<AdmissibleSet> {
    let p = Prepared::new(g)?;
    let shape = block_shape(&p, lambda)?;
    let search = Search {
        p: &p,
        options,
        parallel: false,
    };
    Ok(AdmissibleSet {
        lambda: *lambda,
        members: search
            .members(*lambda)?
            .into_iter()
            .map(|t| to_candidate(t, &shape, *lambda))
            .collect(),
    })
}

/// The expansion whose dual is `(F0 || F0 + zeta)`, if that dual is bent.
/// The dual's spectrum at `(a, beta)` is `W_F0(a) + (-1)^beta W_F1(a)`.
fn expansion_from_half(p: &Prepared, half: &BlockShape, f0: u128, scratch: &mut [i32; 128]) -> Option<BoolFun> {
    let n = 1usize << half.vars;
    let e = p.e();
    walsh_table(f0, half.vars, scratch);
    let w0 = *scratch;
    walsh_table(f0 ^ half.free, half.vars, scratch);
    let bent = (0..n).all(|a| (w0[a] + scratch[a]).abs() == e && (w0[a] - scratch[a]).abs() == e);
    if !bent {
        return None;
    }
    let w1 = *scratch;
    Some(BoolFun::from_fn(p.m, |x| {
        let a = x as usize & (n - 1);
        let v = if x as usize >= n { w0[a] - w1[a] } else { w0[a] + w1[a] };
        v < 0
    }))
}

fn expand_prepared(g: &BoolFun, options: &ExpandOptions, parallel: bool, sink: &mut dyn FnMut(BoolFun)) -> Result<()> {
    let p = Prepared::new(g)?;
    let m = p.m;
    if !matches!(m, 4 | 6 | 8) {
        return Err(Error::Domain(format!("expansion targets 4, 6 or 8 variables, not {m}")));
    }
    let root = BlockWord::new(0, 1)?;
    let half = block_shape(&p, &root)?;
    let search = Search {
        p: &p,
        options,
        parallel,
    };
    // Level 1 admissibility is implied by the bent test on the full dual.
    // Each dual half splits uniquely into (L || R), so nothing is visited twice.
    search.join_chunks(
        root,
        |f0, scratch| expansion_from_half(&p, &half, f0, scratch),
        |chunk| {
            for f in chunk {
                debug_assert_eq!(&f.block(1, 0), g);
                sink(f);
            }
        },
    )
}

fn expand_with(g: &BoolFun, options: &ExpandOptions, parallel: bool, sink: &mut dyn FnMut(BoolFun)) -> Result<()> {
    let z = zero_indicator(g)?;
    if !needs_shift(&z) {
        return expand_prepared(g, options, parallel, sink);
    }
    let lifted = BoolFun::variable(g.num_vars() + 1, g.num_vars());
    expand_prepared(&(g ^ &shift_variable(g)), options, parallel, &mut |f| sink(&f ^ &lifted))
}

fn collect_with(g: &BoolFun, options: &ExpandOptions, parallel: bool) -> Result<Vec<BoolFun>> {
    let mut out = Vec::new();
    expand_with(g, options, parallel, &mut |f| out.push(f))?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every bent `f` on `m` variables with `f(x, 0) = g(x)`, sorted and without repeats.
pub fn expansion(g: &BoolFun, options: &ExpandOptions) -> Result<Vec<BoolFun>> {
    collect_with(g, options, false)
}

/// Parallel [`expansion`] on the current rayon pool; identical output.
pub fn par_expansion(g: &BoolFun, options: &ExpandOptions) -> Result<Vec<BoolFun>> {
    collect_with(g, options, true)
}

/// Streams each expansion of `g` to `sink` once, without holding them all in
/// memory. Runs on the current rayon pool; the order is fixed but unsorted.
pub fn for_each_expansion(g: &BoolFun, options: &ExpandOptions, mut sink: impl FnMut(BoolFun)) -> Result<()> {
    expand_with(g, options, true, &mut sink)
}
