//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use bentnorm::BoolFun;

/// `g` of the worked restriction example, a near-bent cubic on 5 variables.
pub const EXAMPLE_G: &str = "x1*x4 + x2*x4 + x3*x4 + x2*x3*x4 + x2*x5 + x3*x5 + x1*x3*x5";

/// Walsh spectrum of [`EXAMPLE_G`] as tabulated in the paper.
pub const EXAMPLE_G_WALSH: [i32; 32] = [
    8, 0, 8, 0, 0, 8, 0, 8, 8, 0, 0, -8, 0, -8, 8, 0, 8, -8, -8, 8, 0, 0, 0, 0, 8, 8, 0, 0, 0, 0,
    -8, -8,
];

/// A quintic on 7 variables with `deg_6 = 5`.
pub const QUINTIC_H: &str = "x1*x2*x3*x4*x5*x6 + x2*x3*x4*x5*x7 + x1*x3*x4*x6*x7 + x1*x2*x5*x6*x7";

/// A quartic on 7 variables with `deg_5 = 3`.
pub const QUARTIC_F: &str = "x2*x3*x4*x5 + x1*x2*x3*x6 + x1*x4*x6 + x3*x4*x5*x6 + x2*x3*x7 + x4*x5*x7 + x3*x4*x5*x7 + x1*x3*x6*x7 + x3*x4*x6*x7 + x1*x5*x6*x7";

/// The sieving example: a quartic on 7 variables with a single surviving form.
pub const SIEVE_F: &str = "x1*x2*x4 + x2*x3*x4 + x2*x3*x5 + x1*x4*x5 + x3*x4*x5 + x2*x3*x4*x5 + x1*x4*x6 + x2*x3*x5*x6 + x3*x4*x5*x6 + x1*x2*x7 + x1*x3*x6*x7 + x4*x5*x6*x7";
pub const SIEVE_Q: &str = "x2*x3 + x1*x5 + x2*x5 + x3*x5 + x3*x7 + x5*x7 + x6*x7";

/// The EA-equivalence example on 6 variables.
pub const EA_F: &str = "x1*x4 + x2*x5 + x3*x6";
pub const EA_G: &str = "x1*x4 + x2*x5 + x3*x6 + x1*x2*x3";
/// `y_j` as printed, one ANF per output coordinate.
pub const EA_MAP: [&str; 6] = [
    "1 + x2 + x4",
    "x1 + x2 + x4 + x6",
    "x2 + x4 + x6",
    "1 + x1 + x2 + x5",
    "x1 + x2",
    "1 + x2 + x3 + x5",
];
pub const EA_AFFINE: &str = "x6 + 1";

pub fn anf(m: usize, s: &str) -> BoolFun {
    BoolFun::from_anf_str(m, s).unwrap()
}

/// Naive Walsh transform straight from the definition.
pub fn naive_walsh(f: &BoolFun) -> Vec<i64> {
    let n = 1u32 << f.num_vars();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|x| {
                    let e = f.get(x) as u32 + (a & x).count_ones();
                    if e.is_multiple_of(2) { 1 } else { -1 }
                })
                .sum()
        })
        .collect()
}

/// Brute-force relative degree minimum over all `r`-flats: every `r`-tuple of
/// points spanning an `r`-flat, via exhaustive closure.
pub fn brute_r_degree(f: &BoolFun, r: usize) -> usize {
    let m = f.num_vars();
    let n = 1u32 << m;
    let mut best = usize::MAX;
    // enumerate independent direction tuples in increasing order; duplicates are harmless
    fn rec(f: &BoolFun, m: usize, r: usize, dirs: &mut Vec<u32>, start: u32, best: &mut usize) {
        if dirs.len() == r {
            let n = 1u32 << m;
            for a in 0..n {
                let g = BoolFun::from_fn(r, |t| {
                    let mut x = a;
                    for (i, d) in dirs.iter().enumerate() {
                        if t >> i & 1 == 1 {
                            x ^= d;
                        }
                    }
                    f.get(x)
                });
                *best = (*best).min(g.degree());
            }
            return;
        }
        for d in start..1u32 << m {
            // independence: d not in the span of dirs
            let span_size = 1usize << dirs.len();
            let in_span = (0..span_size).any(|t| {
                dirs.iter()
                    .enumerate()
                    .filter(|(i, _)| t >> i & 1 == 1)
                    .fold(0, |acc, (_, v)| acc ^ v)
                    == d
            });
            if in_span {
                continue;
            }
            dirs.push(d);
            rec(f, m, r, dirs, d + 1, best);
            dirs.pop();
            if *best == 0 {
                return;
            }
        }
    }
    let _ = n;
    rec(f, m, r, &mut Vec::new(), 1, &mut best);
    best
}

/// All bent `(g || h)` by brute force over the Walsh spectrum of `h`: put
/// `+-2^(m/2)` on every zero of `W_g`, invert, and keep Boolean results.
pub fn expansion_oracle(g: &BoolFun) -> Vec<BoolFun> {
    let n = g.num_vars();
    let size = 1u32 << n;
    let e = 1i64 << n.div_ceil(2);
    let wg = naive_walsh(g);
    let zeros: Vec<u32> = (0..size).filter(|&a| wg[a as usize] == 0).collect();
    let mut out = Vec::new();
    for signs in 0u64..1 << zeros.len() {
        let mut h = Vec::with_capacity(size as usize);
        let mut boolean = true;
        for x in 0..size {
            let s: i64 = zeros
                .iter()
                .enumerate()
                .map(|(k, &a)| {
                    let v = if signs >> k & 1 == 1 { -e } else { e };
                    if (a & x).count_ones() % 2 == 0 { v } else { -v }
                })
                .sum();
            match s {
                s if s == size as i64 => h.push(false),
                s if s == -(size as i64) => h.push(true),
                _ => {
                    boolean = false;
                    break;
                }
            }
        }
        if boolean {
            let h = BoolFun::from_bits(&h).unwrap();
            out.push(bentnorm::concat(g, &h).unwrap());
        }
    }
    out.sort();
    out
}

/// `{q : f + q abnormal}` by running the abnormality test on every form.
pub fn sieve_oracle(f: &BoolFun) -> Vec<u128> {
    let m = f.num_vars();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    (0..1u128 << pairs.len())
        .filter(|&bits| {
            let q = BoolFun::from_fn(m, |x| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(k, &(i, j))| bits >> k & 1 == 1 && x >> i & 1 == 1 && x >> j & 1 == 1)
                    .count()
                    % 2
                    == 1
            });
            bentnorm::is_abnormal(&(f ^ &q))
        })
        .collect()
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_fun(m: usize, rng: &mut impl rand::Rng) -> BoolFun {
    BoolFun::from_fn(m, |_| rng.gen())
}

/// Rows of a uniformly random invertible `m x m` matrix.
pub fn random_invertible(m: usize, rng: &mut impl rand::Rng) -> Vec<u32> {
    loop {
        let rows: Vec<u32> = (0..m).map(|_| rng.gen_range(0..1u32 << m)).collect();
        if bentnorm::Subspace::span(m, &rows).unwrap().dim() == m {
            return rows;
        }
    }
}

/// A Maiorana-McFarland bent function moved by a random affine map and
/// offset by a random affine function.
pub fn random_bent(m: usize, rng: &mut impl rand::Rng) -> BoolFun {
    use rand::seq::SliceRandom;
    let k = m / 2;
    let mut pi: Vec<u32> = (0..1u32 << k).collect();
    pi.shuffle(rng);
    let f = bentnorm::mm_construct(&pi, &random_fun(k, rng)).unwrap();
    let rows = random_invertible(m, rng);
    let moved = f.compose_affine(&rows, rng.gen_range(0..1u32 << m));
    &moved ^ &BoolFun::affine(m, rng.gen_range(0..1u32 << m), rng.gen())
}
