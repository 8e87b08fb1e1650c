use std::collections::BTreeMap;

use crate::boolfun::BoolFun;

/// Walsh coefficients `W_f(a) = sum_x (-1)^(f(x) + a.x)` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    m: usize,
    values: Vec<i32>,
}

impl WalshSpectrum {
    /// Fast butterfly transform, `O(m 2^m)`.
    pub fn of(f: &BoolFun) -> Self {
        let m = f.num_vars();
        let mut values: Vec<i32> = (0..f.len() as u32)
            .map(|x| if f.get(x) { -1 } else { 1 })
            .collect();
        butterfly(&mut values);
        WalshSpectrum { m, values }
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn get(&self, a: u32) -> i32 {
        self.values[a as usize]
    }

    pub fn zero_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == 0).count()
    }

    /// Multiplicities of `|W_f(a)|`.
    pub fn abs_histogram(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for v in &self.values {
            *out.entry(v.unsigned_abs()).or_insert(0) += 1;
        }
        out
    }

    /// Multiplicities of the signed values.
    pub fn histogram(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &v in &self.values {
            *out.entry(v).or_insert(0) += 1;
        }
        out
    }

    pub fn sum_of_squares(&self) -> i64 {
        self.values.iter().map(|&v| (v as i64) * (v as i64)).sum()
    }
}

/// In-place unnormalized Hadamard butterfly.
pub(crate) fn butterfly(values: &mut [i32]) {
    let n = values.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (values[j], values[j + h]);
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
        h *= 2;
    }
}
