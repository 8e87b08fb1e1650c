//! Library results against independent brute-force computations.

mod common;

use bentnorm::*;
use common::*;

#[test]
fn sieve_matches_brute_force_m5() {
    let mut rng = rng(5);
    let mut checked = 0;
    while checked < 100 {
        let f = random_fun(5, &mut rng);
        if f.degree() < 3 {
            continue;
        }
        let got: Vec<u128> = sieving(&f).unwrap().iter().map(|q| q.bits()).collect();
        assert_eq!(got, sieve_oracle(&f), "f = {}", f.to_hex());
        checked += 1;
    }
}

#[test]
fn sieve_parallel_agrees() {
    let mut rng = rng(6);
    for _ in 0..10 {
        let f = random_fun(6, &mut rng);
        assert_eq!(par_sieving(&f).unwrap(), sieving(&f).unwrap());
    }
}

#[test]
fn abnormal_matches_r_degree() {
    // abnormal iff deg_{ceil(m/2)} >= 2
    let mut rng = rng(7);
    for m in 2..=6 {
        for _ in 0..20 {
            let f = random_fun(m, &mut rng);
            let half = r_degree(&f, m.div_ceil(2)).unwrap().value;
            assert_eq!(is_abnormal(&f), half >= 2, "f = {}", f.to_hex());
            assert_eq!(par_is_abnormal(&f), is_abnormal(&f));
            assert_eq!(classify_normality(&f).kind, NormalityKind::from_half_degree(half));
        }
    }
}

#[test]
fn r_degree_matches_brute_force() {
    let mut rng = rng(8);
    for (m, r) in [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2)] {
        for _ in 0..6 {
            let f = random_fun(m, &mut rng);
            let rd = r_degree(&f, r).unwrap();
            assert_eq!(rd.value, brute_r_degree(&f, r), "m={m} r={r} f={}", f.to_hex());
            assert_eq!(relative_degree(&f, &rd.witness).unwrap(), rd.value);
            assert_eq!(par_r_degree(&f, r).unwrap(), rd);
        }
    }
}

#[test]
fn d_table_two_variables() {
    // any two points form a 1-flat and two of four values coincide
    let all = (0..16u64).map(|t| BoolFun::from_u64(2, t).unwrap());
    let table = d_table(all, 1, 2, DegreeMode::AtMost).unwrap();
    assert_eq!(table.max, 0);
    assert_eq!(table.considered, 16);
}

#[test]
fn gaussian_counts_match_enumeration() {
    for m in 1..=6 {
        for r in 0..=m {
            let count = SubspaceEnumeration::new(m, r).unwrap().len() as u128;
            assert_eq!(count, gaussian_binomial(m, r).unwrap(), "m={m} r={r}");
            let mut seen: Vec<Vec<u32>> = SubspaceEnumeration::new(m, r)
                .unwrap()
                .iter()
                .map(|v| {
                    let mut e = v.elements();
                    e.sort_unstable();
                    e
                })
                .collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len() as u128, count);
        }
    }
    assert_eq!(gaussian_binomial(8, 3).unwrap(), 97_155);
}

#[test]
fn expansion_matches_oracle_all_three_variable_near_bents() {
    let mut tested = 0;
    for t in 0..256u64 {
        let g = BoolFun::from_u64(3, t).unwrap();
        if !is_near_bent(&g) {
            continue;
        }
        assert_eq!(expansion(&g, &ExpandOptions::default()).unwrap(), expansion_oracle(&g));
        tested += 1;
    }
    assert_eq!(tested, 112);
}

#[test]
fn expansion_matches_oracle_random_m6() {
    let mut rng = rng(9);
    for _ in 0..8 {
        let f = random_bent(6, &mut rng);
        let g = f.block(1, 0);
        let out = expansion(&g, &ExpandOptions::default()).unwrap();
        assert!(out.contains(&f));
        assert_eq!(out, expansion_oracle(&g), "g = {}", g.to_hex());
        assert_eq!(par_expansion(&g, &ExpandOptions::default()).unwrap(), out);
    }
}

#[test]
fn key_filter_is_lossless_m6() {
    let mut rng = rng(10);
    let off = ExpandOptions {
        key_filter: false,
        ..ExpandOptions::default()
    };
    for _ in 0..4 {
        let g = random_bent(6, &mut rng).block(1, 0);
        assert_eq!(expansion(&g, &off).unwrap(), expansion(&g, &ExpandOptions::default()).unwrap());
    }
}

#[test]
fn expansion_rejects_bad_input() {
    assert!(matches!(expansion(&BoolFun::zero(5), &ExpandOptions::default()), Err(Error::Spectral(_))));
    let g = anf(5, EXAMPLE_G);
    let tiny = ExpandOptions {
        budget: 1,
        ..ExpandOptions::default()
    };
    assert!(matches!(expansion(&g, &tiny), Err(Error::Budget { .. })));
}

#[test]
fn streamed_expansions_match_collected() {
    let mut rng = rng(12);
    for _ in 0..4 {
        let g = random_bent(6, &mut rng).block(1, 0);
        let mut streamed = Vec::new();
        for_each_expansion(&g, &ExpandOptions::default(), |f| streamed.push(f)).unwrap();
        let count = streamed.len();
        streamed.sort();
        streamed.dedup();
        assert_eq!(streamed.len(), count, "an expansion was emitted twice");
        assert_eq!(streamed, expansion(&g, &ExpandOptions::default()).unwrap());
    }
}
