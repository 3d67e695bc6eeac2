//! Independent oracles. Nothing here calls the library's number theory;
//! everything is brute force over residues with machine integers.

#![allow(dead_code)]

use etale_brauer::arith::rational::{int, Rational};
use etale_brauer::arith::Poly;

pub fn pow(p: u64, k: u32) -> i128 {
    (p as i128).pow(k)
}

fn md(x: i128, q: i128) -> i128 {
    x.rem_euclid(q)
}

/// Strips `p^2` factors; the result has `v_p <= 1`.
fn strip_squares(mut a: i128, p: u64) -> i128 {
    let p2 = (p as i128) * (p as i128);
    while a % p2 == 0 {
        a /= p2;
    }
    a
}

/// `(a, b)_p` by searching for a primitive solution of `z^2 = a x^2 + b y^2`
/// modulo `p^3` (`2^5` at p = 2). After stripping squares every primitive
/// solution has a coordinate whose partial derivative has valuation at most
/// 1 (2 at p = 2), so Hensel lifts it.
pub fn hilbert_oracle(a: i128, b: i128, p: u64) -> i8 {
    assert!(a != 0 && b != 0);
    let (a, b) = (strip_squares(a, p), strip_squares(b, p));
    let m = if p == 2 { 5 } else { 3 };
    let q = pow(p, m);
    let mut is_sq = vec![false; q as usize];
    for z in 0..q {
        is_sq[md(z * z, q) as usize] = true;
    }
    let (aa, bb) = (md(a, q), md(b, q));
    // x = 1
    if (0..q).any(|y| is_sq[md(aa + bb * y * y, q) as usize]) {
        return 1;
    }
    let pi = p as i128;
    // p | x, y = 1
    if (0..q / pi).any(|x| is_sq[md(aa * (pi * x) * (pi * x) + bb, q) as usize]) {
        return 1;
    }
    // p | x, p | y, z = 1
    for x in 0..q / pi {
        for y in 0..q / pi {
            if md(aa * (pi * x) * (pi * x) + bb * (pi * y) * (pi * y), q) == 1 {
                return 1;
            }
        }
    }
    -1
}

pub fn hilbert_real_oracle(a: i128, b: i128) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// Integer coefficients, constant term first.
pub fn int_coeffs(p: &Poly) -> Vec<i128> {
    p.coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "oracle needs integer coefficients");
            i128::try_from(c.to_integer()).expect("small coefficient")
        })
        .collect()
}

fn eval_mod(c: &[i128], x: i128, q: i128) -> i128 {
    c.iter().rev().fold(0, |acc, a| md(acc * x + a, q))
}

fn valuation_mod(v: i128, p: u64, k: u32) -> Option<u32> {
    if v == 0 {
        return None;
    }
    let pi = p as i128;
    let mut e = 0;
    let mut v = v;
    while v % pi == 0 && e < k {
        v /= pi;
        e += 1;
    }
    Some(e)
}

/// Outcome of the residue enumeration for one surface and prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Brute {
    Solvable,
    Unsolvable,
    /// Some residue could be decided neither way at this precision.
    Undecided,
}

/// Local solvability of `y^2 - a z^2 = P(x)` over Q_p, with `P` an integer
/// quartic (or cubic, read as a quartic form), by enumerating every residue
/// `x mod p^k` and `t = 1/x` in `p Z / p^k` and deciding each one from the
/// square class of the form value, or from a Hensel root of `P` in it.
pub fn local_oracle(a: i128, p_coeffs: &[i128], p: u64, k: u32) -> Brute {
    let q = pow(p, k);
    let delta: u32 = if p == 2 { 3 } else { 1 };
    let mut c = p_coeffs.to_vec();
    c.resize(5, 0);
    let rev: Vec<i128> = c.iter().rev().copied().collect();
    let dc: Vec<i128> = (1..5).map(|i| c[i] * i as i128).collect();
    let drev: Vec<i128> = (1..5).map(|i| rev[i] * i as i128).collect();
    let mut undecided = false;
    let mut cache = std::collections::HashMap::new();
    let pi = p as i128;
    let charts: [(&[i128], &[i128], i128, i128); 2] = [(&c, &dc, 0, 1), (&rev, &drev, 0, pi)];
    for (f, df, start, step) in charts {
        let mut x = start;
        while x < q {
            let v = eval_mod(f, x, q);
            match valuation_mod(v, p, k) {
                Some(e) if e + delta <= k => {
                    // the class p^e u with u known mod p^(k-e)
                    let key = (e, md(v / pow(p, e), pow(p, delta)));
                    let s = *cache.entry(key).or_insert_with(|| hilbert_oracle(a, v, p));
                    if s == 1 {
                        return Brute::Solvable;
                    }
                }
                _ => {
                    // v(F(x)) >= k - delta + 1: a Hensel root settles the disc
                    let d = eval_mod(df, x, q);
                    match valuation_mod(d, p, k) {
                        Some(ed) if 2 * ed < k && valuation_mod(v, p, k).map_or(true, |e| e > 2 * ed) => {
                            return Brute::Solvable;
                        }
                        _ => undecided = true,
                    }
                }
            }
            x += step;
        }
    }
    if undecided {
        Brute::Undecided
    } else {
        Brute::Unsolvable
    }
}

/// Real solvability: `a > 0`, a positive leading coefficient (the point
/// at infinity), or `P >= 0` somewhere on a fine grid.
pub fn real_oracle(a: i128, p_coeffs: &[i128]) -> bool {
    if a > 0 || p_coeffs.len() == 4 || p_coeffs.last().is_some_and(|&l| l > 0) {
        return true;
    }
    let f = |x: f64| p_coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64);
    let mut x = -200.0;
    let mut prev = f(x);
    while x < 200.0 {
        x += 1e-3;
        let y = f(x);
        if y >= 0.0 || prev.signum() != y.signum() {
            return true;
        }
        prev = y;
    }
    false
}

/// Residues `x mod p^k` with `P(x) = 0 mod p^k`; for `p` not dividing the
/// discriminant these are exactly the reductions of roots in Z_p.
pub fn naive_roots(c: &[i128], p: u64, k: u32) -> Vec<i128> {
    let q = pow(p, k);
    (0..q).filter(|&x| eval_mod(c, x, q) == 0).collect()
}

/// Local invariants `inv_p (a, P1(x))` over the residues `x mod p^k` (and
/// `1/x` in `p Z / p^k`) on which the surface `y^2 - a z^2 = P1 P2` has
/// points, as symbols `+1 / -1`. Residues whose classes are not determined
/// at this precision are skipped, so the result is a subset of the true
/// set.
pub fn invariant_set_oracle(a: i128, p1: &[i128], p2: &[i128], p: u64, k: u32) -> std::collections::BTreeSet<i8> {
    let q = pow(p, k);
    let delta: u32 = if p == 2 { 3 } else { 1 };
    let pi = p as i128;
    let mul = |f: &[i128], g: &[i128]| {
        let mut out = vec![0i128; f.len() + g.len() - 1];
        for (i, x) in f.iter().enumerate() {
            for (j, y) in g.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let rev = |f: &[i128]| f.iter().rev().copied().collect::<Vec<_>>();
    let decided = |v: i128| match valuation_mod(v, p, k) {
        Some(e) if e + delta <= k => Some(v),
        _ => None,
    };
    let full = mul(p1, p2);
    let charts = [(full.clone(), p1.to_vec(), p2.to_vec(), 1i128), (rev(&full), rev(p1), rev(p2), pi)];
    let mut out = std::collections::BTreeSet::new();
    for (f, g1, g2, step) in charts {
        let mut x = 0;
        while x < q {
            if let Some(v) = decided(eval_mod(&f, x, q)) {
                if hilbert_oracle(a, v, p) == 1 {
                    let w = decided(eval_mod(&g1, x, q)).or_else(|| decided(eval_mod(&g2, x, q)));
                    if let Some(w) = w {
                        out.insert(hilbert_oracle(a, w, p));
                    }
                }
            }
            x += step;
        }
    }
    out
}

/// The real counterpart of [`invariant_set_oracle`], by grid sampling.
pub fn real_invariant_set_oracle(a: i128, p1: &[i128], p2: &[i128]) -> std::collections::BTreeSet<i8> {
    let f = |c: &[i128], x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k as f64);
    let mut out = std::collections::BTreeSet::new();
    let mut x = -50.0;
    while x < 50.0 {
        let (u, v) = (f(p1, x), f(p2, x));
        if a > 0 || u * v > 0.0 {
            out.insert(if a < 0 && u < 0.0 { -1 } else { 1 });
        }
        x += 1e-3;
    }
    out
}

pub fn poly(cs: &[i64]) -> Poly {
    Poly::from_ints(cs)
}

pub fn r(n: i64) -> Rational {
    int(n)
}
