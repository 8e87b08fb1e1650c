use std::fmt;

use crate::boolfun::{mobius_in_place, BoolFun, WEIGHT_CLASS};

/// Algebraic normal form: bit `S` is the coefficient of the monomial `X_S`,
/// where `S` is read as the characteristic integer of a subset of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    m: usize,
    words: Vec<u64>,
}

impl Anf {
    pub(crate) fn from_packed(m: usize, words: Vec<u64>) -> Self {
        Anf { m, words }
    }

    pub fn zero(m: usize) -> Self {
        Anf {
            m,
            words: BoolFun::zero(m).words().to_vec(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn coeff(&self, monomial: u32) -> bool {
        let s = monomial as usize;
        (self.words[s >> 6] >> (s & 63)) & 1 == 1
    }

    pub fn toggle(&mut self, monomial: u32) {
        let s = monomial as usize;
        self.words[s >> 6] ^= 1u64 << (s & 63);
    }

    /// Monomials present, in increasing order of their characteristic integer.
    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some(((j as u32) << 6) | bit)
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Maximal monomial size, 0 for constants.
    pub fn degree(&self) -> usize {
        self.words
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .map(|(j, &w)| {
                let high = (j as u32).count_ones() as usize;
                high + (0..7).rev().find(|&k| w & WEIGHT_CLASS[k] != 0).unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Minimal monomial size, `None` for the zero function.
    pub fn valuation(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .map(|(j, &w)| {
                let high = (j as u32).count_ones() as usize;
                high + (0..7).find(|&k| w & WEIGHT_CLASS[k] != 0).unwrap_or(0)
            })
            .min()
    }

    pub fn truth_table(&self) -> BoolFun {
        let mut words = self.words.clone();
        mobius_in_place(&mut words, self.m);
        BoolFun::from_words(self.m, words).expect("ANF and truth table share layout")
    }
}

impl From<&BoolFun> for Anf {
    fn from(f: &BoolFun) -> Self {
        f.anf()
    }
}

/// Canonical text: monomials in increasing characteristic-integer order,
/// variables ascending inside a monomial, joined by `" + "`.
impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in self.monomials() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if s == 0 {
                f.write_str("1")?;
                continue;
            }
            let mut vars = (0..self.m).filter(|i| (s >> i) & 1 == 1).peekable();
            while let Some(i) = vars.next() {
                write!(f, "x{}", i + 1)?;
                if vars.peek().is_some() {
                    f.write_str("*")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(m={}, {})", self.m, self)
    }
}
