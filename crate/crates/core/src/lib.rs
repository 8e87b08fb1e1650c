//! Normality of Boolean functions: relative degrees, the abnormality test,
//! quadratic sieving and bent expansion.
//!
//! Vectors of `F_2^m` are identified with integers, `x <-> sum x_i 2^(i-1)`,
//! and a [`BoolFun`] stores bit `x` of its truth table as `f(x)`.

pub mod anf;
pub mod bent;
pub mod boolfun;
pub mod equiv;
pub mod error;
pub mod expand;
pub mod format;
pub mod normality;
pub mod sieve;
pub mod spaces;
pub mod walsh;

pub use anf::Anf;
pub use bent::{
    are_complementary, dickson_form, dual, is_bent, is_near_bent, restriction_spectrum_set, spectral_class, DicksonForm,
    DicksonVariant, SpectralClass, SpectralKind,
};
pub use boolfun::{anf_mobius, concat, mm_construct, BoolFun, MAX_VARS};
pub use equiv::{
    check_ea_certificate, fingerprint, verify_ea_certificate, CertificateCheck, EACertificate,
    Fingerprint,
};
pub use error::{Error, Result};
pub use expand::{
    admissible_set, expansion, for_each_expansion, key, normalize_prefix, par_expansion, zero_indicator,
    AdmissibleSet, BlockWord, Candidate, ExpandOptions, Key, ZeroIndicator,
};
pub use normality::{
    abnormality_witness, classify_normality, d_table, is_abnormal, par_classify_normality,
    par_is_abnormal, par_r_degree, r_degree, relative_degree, DegreeMode, NormalityClass,
    NormalityKind, RDegree,
};
pub use sieve::{
    kernel_basis, par_sieving, quad_lift, quad_restriction, sieving, KernelBasis, QSet, QuadForm,
};
pub use spaces::{gaussian_binomial, Flat, LiftData, Subspace, SubspaceEnumeration};
pub use walsh::WalshSpectrum;
