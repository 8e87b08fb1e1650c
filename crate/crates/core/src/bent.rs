//! Bent and near-bent functions, duals, complementarity and Dickson forms.

use std::fmt;

use crate::boolfun::BoolFun;
use crate::error::{Error, Result};
use crate::spaces::{Flat, Subspace};
use crate::walsh::WalshSpectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectralKind {
    /// Even `m`, every coefficient is `+-2^(m/2)`.
    Bent,
    /// Odd `m`, spectrum inside `{0, +-2^((m+1)/2)}`.
    NearBent,
    Other,
}

impl fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectralKind::Bent => "bent",
            SpectralKind::NearBent => "near-bent",
            SpectralKind::Other => "other",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralClass {
    pub kind: SpectralKind,
    pub zero_count: usize,
}

fn bent_weights(m: usize) -> [usize; 2] {
    let (big, small) = ((1usize << m) >> 1, (1usize << (m / 2)) >> 1);
    [big - small, big + small]
}

fn near_bent_weights(m: usize) -> [usize; 3] {
    let big = (1usize << m) >> 1;
    let small = 1usize << (m.div_ceil(2) - 1);
    [big - small, big, big + small]
}

pub fn spectral_class_of(m: usize, w: &WalshSpectrum) -> SpectralClass {
    let zero_count = w.zero_count();
    let values = w.values();
    let kind = if m.is_multiple_of(2) {
        let e = 1i32 << (m / 2);
        if values.iter().all(|&v| v == e || v == -e) {
            SpectralKind::Bent
        } else {
            SpectralKind::Other
        }
    } else {
        let e = 1i32 << m.div_ceil(2);
        if values.iter().all(|&v| v == 0 || v == e || v == -e) {
            SpectralKind::NearBent
        } else {
            SpectralKind::Other
        }
    };
    SpectralClass { kind, zero_count }
}

/// Classifies `f` by exact spectrum membership.
pub fn spectral_class(f: &BoolFun) -> SpectralClass {
    let m = f.num_vars();
    let class = spectral_class_of(m, &f.walsh());
    match class.kind {
        SpectralKind::Bent => debug_assert!(bent_weights(m).contains(&f.weight())),
        SpectralKind::NearBent => debug_assert!(near_bent_weights(m).contains(&f.weight())),
        SpectralKind::Other => {}
    }
    class
}

pub fn is_bent(f: &BoolFun) -> bool {
    spectral_class(f).kind == SpectralKind::Bent
}

pub fn is_near_bent(f: &BoolFun) -> bool {
    spectral_class(f).kind == SpectralKind::NearBent
}

/// Weight test alone: necessary for bentness, not sufficient.
pub fn has_bent_weight(f: &BoolFun) -> bool {
    let m = f.num_vars();
    m.is_multiple_of(2) && bent_weights(m).contains(&f.weight())
}

pub fn has_near_bent_weight(f: &BoolFun) -> bool {
    let m = f.num_vars();
    m % 2 == 1 && near_bent_weights(m).contains(&f.weight())
}

/// The dual `f~` with `(-1)^f~(a) = 2^(-m/2) W_f(a)`.
pub fn dual(f: &BoolFun) -> Result<BoolFun> {
    let w = f.walsh();
    if spectral_class_of(f.num_vars(), &w).kind != SpectralKind::Bent {
        return Err(Error::Spectral("dual requires a bent function".into()));
    }
    Ok(BoolFun::from_fn(f.num_vars(), |a| w.get(a) < 0))
}

/// True iff the Walsh zero sets of two near-bent functions partition the space.
pub fn are_complementary(g: &BoolFun, h: &BoolFun) -> Result<bool> {
    if g.num_vars() != h.num_vars() {
        return Err(Error::Dimension {
            expected: g.num_vars(),
            found: h.num_vars(),
        });
    }
    let m = g.num_vars();
    let (wg, wh) = (g.walsh(), h.walsh());
    for w in [&wg, &wh] {
        if spectral_class_of(m, w).kind != SpectralKind::NearBent {
            return Err(Error::Spectral("complementarity requires near-bent inputs".into()));
        }
    }
    Ok(wg
        .values()
        .iter()
        .zip(wh.values())
        .all(|(&a, &b)| (a == 0) != (b == 0)))
}

/// Multiples of `2^(m/2 - r + 1)` in `[-2^(m/2), 2^(m/2)]`: the values a Walsh
/// coefficient of a bent function restricted to a fixed `r`-bit block of its
/// top coordinates can take (`m` is the bent function's variable count).
pub fn restriction_spectrum_set(m: usize, r: usize) -> Vec<i32> {
    let e = 1i32 << (m / 2);
    let step = 1i32 << (m / 2 + 1).saturating_sub(r);
    (0..=e / step * 2).map(|i| e - i * step).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DicksonVariant {
    /// `x1x2 + ... + x_{2k-1}x_{2k} + x_{2k+1}`
    Balanced,
    /// `x1x2 + ... + x_{2k-1}x_{2k} + b`
    Unbalanced(bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicksonForm {
    pub function: BoolFun,
    /// A `ceil(m/2)`-flat through the origin on which `function` is constant,
    /// or affine when that is the best possible.
    pub witness: Flat,
    /// Degree of the restriction to `witness`.
    pub witness_degree: usize,
}

pub fn dickson_form(m: usize, k: usize, variant: DicksonVariant) -> Result<DicksonForm> {
    let (limit, label) = match variant {
        DicksonVariant::Balanced => ((m.saturating_sub(1)) / 2, "balanced"),
        DicksonVariant::Unbalanced(_) => (m / 2, "unbalanced"),
    };
    if m == 0 || k > limit || (variant == DicksonVariant::Balanced && 2 * k + 1 > m) {
        return Err(Error::Domain(format!(
            "k={k} out of range for the {label} form on {m} variables"
        )));
    }
    let mut anf = String::new();
    for i in 0..k {
        if i > 0 {
            anf.push_str(" + ");
        }
        anf.push_str(&format!("x{}*x{}", 2 * i + 1, 2 * i + 2));
    }
    let tail = match variant {
        DicksonVariant::Balanced => Some(format!("x{}", 2 * k + 1)),
        DicksonVariant::Unbalanced(true) => Some("1".to_string()),
        DicksonVariant::Unbalanced(false) => None,
    };
    if let Some(t) = tail {
        if !anf.is_empty() {
            anf.push_str(" + ");
        }
        anf.push_str(&t);
    }
    if anf.is_empty() {
        anf.push('0');
    }
    let function = BoolFun::from_anf_str(m, &anf)?;

    // One variable from each product, then the untouched coordinates.
    let unit = |i: usize| 1u32 << (i - 1);
    let mut vectors: Vec<u32> = (0..k).map(|i| unit(2 * i + 1)).collect();
    let free_from = match variant {
        DicksonVariant::Balanced => 2 * k + 2,
        DicksonVariant::Unbalanced(_) => 2 * k + 1,
    };
    vectors.extend((free_from..=m).map(unit));
    let half = m.div_ceil(2);
    let mut witness_degree = 0;
    if vectors.len() < half {
        // Only the balanced form with m = 2k + 1 lands here.
        vectors.push(unit(2 * k + 1));
        witness_degree = 1;
    }
    vectors.truncate(half);
    let witness = Flat::from_subspace(&Subspace::span(m, &vectors)?, 0);
    Ok(DicksonForm {
        function,
        witness,
        witness_degree,
    })
}
