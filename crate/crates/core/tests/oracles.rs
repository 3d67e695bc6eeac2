//! Library routines against the brute-force oracles in `common`.

mod common;

use common::*;
use etale_brauer::arith::place::{Place, Prime};
use etale_brauer::arith::{hensel_roots, hilbert_symbol};
use etale_brauer::chatelet::local::{is_locally_solvable_with, LocalOptions};
use etale_brauer::chatelet::ChateletSurface;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[test]
fn hilbert_oracle_examples() {
    assert_eq!(hilbert_oracle(-1, -1, 2), -1);
    assert_eq!(hilbert_oracle(-1, -1, 3), 1);
    assert_eq!(hilbert_oracle(2, 3, 3), -1);
    assert_eq!(hilbert_oracle(5, 5, 5), 1);
}

#[test]
fn hilbert_symbol_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let a: i64 = rng.gen_range(-400..=400);
        let b: i64 = rng.gen_range(-400..=400);
        if a == 0 || b == 0 {
            continue;
        }
        for p in PRIMES {
            let v = Place::prime(p).unwrap();
            let got = hilbert_symbol(&r(a), &r(b), &v).unwrap();
            assert_eq!(got, hilbert_oracle(a.into(), b.into(), p), "({a}, {b})_{p}");
        }
        assert_eq!(hilbert_symbol(&r(a), &r(b), &Place::Real).unwrap(), hilbert_real_oracle(a.into(), b.into()));
    }
}

#[test]
fn hensel_roots_match_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 60 {
        let cs: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).chain([1]).collect();
        let p_u = PRIMES[rng.gen_range(0..PRIMES.len())];
        let f = poly(&cs);
        let disc = f.discriminant();
        if disc == r(0) || disc.numer() % num_bigint::BigInt::from(p_u) == num_bigint::BigInt::from(0) {
            continue;
        }
        let k = if p_u < 7 { 4 } else { 3 };
        let mut got: Vec<i128> = hensel_roots(&f, &Prime::new(p_u).unwrap(), k)
            .unwrap()
            .iter()
            .map(|h| i128::try_from(h.residue.clone()).unwrap())
            .collect();
        got.sort();
        let want = naive_roots(&int_coeffs(&f), p_u, k);
        assert_eq!(got, want, "{f} at {p_u}");
        checked += 1;
    }
}

#[test]
fn hensel_roots_of_products_with_known_roots() {
    // (x - r1)(x - r2)(x^2 + x + 1) with r1 = r2 mod p but r1 != r2: the
    // quadratic has no roots in Z_2 or Z_5, so the roots are exactly r1, r2.
    for (p, r1, r2) in [(2u64, 3i64, 7i64), (5, 1, 26), (5, 2, 2 + 125)] {
        let f = &(&poly(&[-r1, 1]) * &poly(&[-r2, 1])) * &poly(&[1, 1, 1]);
        let k = 6;
        let q = pow(p, k);
        let mut want: Vec<i128> = vec![(r1 as i128).rem_euclid(q), (r2 as i128).rem_euclid(q)];
        want.sort();
        want.dedup();
        let got: Vec<i128> = hensel_roots(&f, &Prime::new(p).unwrap(), k)
            .unwrap()
            .iter()
            .map(|h| i128::try_from(h.residue.clone()).unwrap())
            .collect();
        assert_eq!(got, want, "{f} at {p}");
    }
}

#[test]
fn real_solvability_matches_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = [0usize; 2];
    for _ in 0..80 {
        let a: i64 = [-1, -2, -3, -5, -7, 2, 3][rng.gen_range(0..7)];
        let lead = rng.gen_range(-3..=-1);
        let cs: Vec<i64> = (0..4).map(|_| rng.gen_range(-20..=20)).chain([lead]).collect();
        let Ok(s) = ChateletSurface::new(r(a), poly(&cs)) else { continue };
        let got = is_locally_solvable_with(&s, &Place::Real, &LocalOptions::default()).unwrap().solvable;
        let want = real_oracle(a.into(), &int_coeffs(s.poly()));
        assert_eq!(got, want, "{s}");
        seen[usize::from(got)] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}
