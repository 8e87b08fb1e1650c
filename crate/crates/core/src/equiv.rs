//! EA-invariant fingerprints and checking of explicit EA-equivalence certificates.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::boolfun::{apply_rows, BoolFun};
use crate::error::{Error, Result};
use crate::format::parse_anf;
use crate::normality::r_degree;
use crate::spaces::invert;

/// Invariants under `f(x) -> f(xA + b) + a.x + c`.
///
/// Adding an affine function moves a degree or a relative degree between 0
/// and 1, so both are clamped to at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub degree: usize,
    /// `|W_f(a)|` -> multiplicity.
    pub abs_walsh_histogram: BTreeMap<u32, usize>,
    /// `max(deg_r f, 1)` for `r = 1..=ceil(m/2)`.
    pub rdegree_profile: Vec<usize>,
}

pub fn fingerprint(f: &BoolFun) -> Fingerprint {
    let half = f.num_vars().div_ceil(2);
    Fingerprint {
        degree: f.degree().max(1),
        abs_walsh_histogram: f.walsh().abs_histogram(),
        rdegree_profile: (1..=half)
            .map(|r| r_degree(f, r).expect("r within range").value.max(1))
            .collect(),
    }
}

/// Indices of `functions` grouped by fingerprint, computed on the current rayon pool.
pub fn fingerprint_buckets(functions: &[BoolFun]) -> BTreeMap<Fingerprint, Vec<usize>> {
    let prints: Vec<Fingerprint> = functions.par_iter().map(fingerprint).collect();
    let mut out: BTreeMap<Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, p) in prints.into_iter().enumerate() {
        out.entry(p).or_default().push(i);
    }
    out
}

/// Smallest truth table among `f + l` over all affine `l`; equal exactly for
/// functions that differ by an affine function.
pub fn affine_class_representative(f: &BoolFun) -> BoolFun {
    let m = f.num_vars();
    (0..1u32 << m)
        .flat_map(|mask| [false, true].map(|c| (mask, c)))
        .map(|(mask, c)| f ^ &BoolFun::affine(m, mask, c))
        .min()
        .expect("at least one affine function")
}

/// `f2(x) = f(xA + b) + a(x)`, where row `i` of `A` is the image of `e_{i+1}`
/// and `a(x) = mask.x + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EACertificate {
    pub matrix: Vec<u32>,
    pub translate: u32,
    pub affine_mask: u32,
    pub affine_constant: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateCheck {
    Equivalent,
    /// A point where the two sides differ.
    Counterexample(u32),
}

impl EACertificate {
    pub fn identity(m: usize) -> Self {
        EACertificate {
            matrix: (0..m).map(|i| 1 << i).collect(),
            translate: 0,
            affine_mask: 0,
            affine_constant: false,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.len()
    }

    /// Parses `A=<row>,<row>,...;b=<hex>;a=<ANF>` with hexadecimal rows.
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidCertificate(msg);
        let mut fields = BTreeMap::new();
        for part in text.trim().split(';') {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("field {part:?} lacks '='")))?;
            fields.insert(name.trim(), value.trim());
        }
        let field = |name: &str| {
            fields
                .get(name)
                .copied()
                .ok_or_else(|| bad(format!("missing field {name}")))
        };
        let hex = |s: &str| u32::from_str_radix(s.trim(), 16).map_err(|_| bad(format!("bad hex {s:?}")));
        let matrix = field("A")?
            .split(',')
            .map(hex)
            .collect::<Result<Vec<u32>>>()?;
        if matrix.len() != m {
            return Err(bad(format!("expected {m} rows, found {}", matrix.len())));
        }
        let translate = hex(field("b")?)?;
        let anf = parse_anf(m, field("a")?)?;
        if anf.degree() > 1 {
            return Err(bad(format!("affine part {anf} has degree {}", anf.degree())));
        }
        let affine_mask = anf.monomials().filter(|s| s.count_ones() == 1).fold(0, |a, s| a | s);
        let cert = EACertificate {
            matrix,
            translate,
            affine_mask,
            affine_constant: anf.coeff(0),
        };
        cert.validate()?;
        Ok(cert)
    }

    fn validate(&self) -> Result<()> {
        let m = self.num_vars();
        let limit = 1u64 << m;
        if self
            .matrix
            .iter()
            .chain([&self.translate, &self.affine_mask])
            .any(|&v| v as u64 >= limit)
        {
            return Err(Error::InvalidCertificate(format!("entries exceed {m} bits")));
        }
        if invert(&self.matrix).is_none() {
            return Err(Error::InvalidCertificate("matrix is singular".into()));
        }
        Ok(())
    }

    /// The function `x -> f(xA + b) + a(x)`.
    pub fn apply(&self, f: &BoolFun) -> Result<BoolFun> {
        if f.num_vars() != self.num_vars() {
            return Err(Error::Dimension {
                expected: self.num_vars(),
                found: f.num_vars(),
            });
        }
        self.validate()?;
        Ok(BoolFun::from_fn(f.num_vars(), |x| self.eval(f, x)))
    }

    fn eval(&self, f: &BoolFun, x: u32) -> bool {
        let linear = (self.affine_mask & x).count_ones() & 1 == 1;
        f.get(apply_rows(&self.matrix, x) ^ self.translate) ^ linear ^ self.affine_constant
    }
}

impl fmt::Display for EACertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.matrix.iter().map(|r| format!("{r:x}")).collect();
        let m = self.num_vars();
        let affine = BoolFun::affine(m, self.affine_mask, self.affine_constant).anf();
        write!(f, "A={};b={:x};a={}", rows.join(","), self.translate, affine)
    }
}

/// Checks `f2(x) = f(xA + b) + a(x)` at every point.
pub fn check_ea_certificate(f: &BoolFun, f2: &BoolFun, cert: &EACertificate) -> Result<CertificateCheck> {
    for g in [f, f2] {
        if g.num_vars() != cert.num_vars() {
            return Err(Error::Dimension {
                expected: cert.num_vars(),
                found: g.num_vars(),
            });
        }
    }
    cert.validate()?;
    Ok((0..1u32 << f.num_vars())
        .find(|&x| cert.eval(f, x) != f2.get(x))
        .map_or(CertificateCheck::Equivalent, CertificateCheck::Counterexample))
}

pub fn verify_ea_certificate(f: &BoolFun, f2: &BoolFun, cert: &EACertificate) -> Result<bool> {
    Ok(check_ea_certificate(f, f2, cert)? == CertificateCheck::Equivalent)
}
