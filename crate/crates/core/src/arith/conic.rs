//! Rational points on diagonal conics `X^2 = a Y^2 + b Z^2` by Legendre descent.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::place::Prime;
use super::primes::{factor, to_bigint};
use super::symbols::legendre;

/// A square root of `a` modulo the odd prime `p`, if one exists.
pub fn sqrt_mod_prime(a: &BigInt, p: &Prime) -> Option<BigInt> {
    let pb = p.to_bigint();
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return Some(a);
    }
    if p.is_two() {
        return Some(a);
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let pm1 = &pb - &one;
    if (&pb % 4u32) == BigInt::from(3) {
        return Some(a.modpow(&((&pb + &one) / 4u32), &pb));
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = two.clone();
    while legendre(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, &pb);
    let mut t = a.modpow(&q, &pb);
    let mut r = a.modpow(&((&q + &one) / 2u32), &pb);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % &pb;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), &pb);
        m = i;
        c = (&b * &b) % &pb;
        t = (&t * &c) % &pb;
        r = (&r * &b) % &pb;
    }
    Some(r)
}

/// A square root of `a` modulo the square-free modulus `n`, combined by CRT.
fn sqrt_mod_squarefree(a: &BigInt, n: &BigUint) -> Option<BigInt> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (p, e) in factor(n) {
        debug_assert_eq!(e, 1);
        let prime = Prime::new_unchecked(p.clone());
        let r = sqrt_mod_prime(a, &prime)?;
        let pb = to_bigint(&p);
        // x' = x + m * k with x' = r (mod p)
        let inv = m.extended_gcd(&pb).x;
        let k = ((&r - &x) * inv).mod_floor(&pb);
        x += &m * k;
        m *= pb;
    }
    Some(x.mod_floor(&m))
}

/// `n = core * s^2` with `core` square-free; returns `(core, s)`.
fn square_free_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut core = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut s = BigInt::one();
    for (p, e) in factor(n.magnitude()) {
        let pb = to_bigint(&p);
        if e % 2 == 1 {
            core *= &pb;
        }
        s *= pb.pow(e / 2);
    }
    (core, s)
}

fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// A nontrivial integer solution of `X^2 = a Y^2 + b Z^2`, or `None` when
/// the conic has no rational point. `a` and `b` must be nonzero.
pub fn solve_legendre(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    assert!(!a.is_zero() && !b.is_zero(), "degenerate conic");
    let (x, y, z) = descend(a, b, 0)?;
    let g = x.gcd(&y).gcd(&z);
    Some((x / &g, y / &g, z / &g))
}

fn descend(a: &BigInt, b: &BigInt, level: u32) -> Option<(BigInt, BigInt, BigInt)> {
    // each step shrinks max(|a|, |b|); the bound is a safety net only
    if level > 4096 {
        return None;
    }
    let (zero, one) = (BigInt::zero(), BigInt::one());
    if let Some(s) = perfect_square_root(a) {
        return Some((s, one, zero));
    }
    if let Some(s) = perfect_square_root(b) {
        return Some((s, zero, one));
    }
    let (a0, sa) = square_free_part(a);
    let (b0, sb) = square_free_part(b);
    if !sa.is_one() || !sb.is_one() {
        let (x, y, z) = descend(&a0, &b0, level + 1)?;
        // X^2 = a0 Y^2 + b0 Z^2  =>  (X sa sb)^2 = a (Y sb)^2 + b (Z sa)^2
        return Some((x * &sa * &sb, y * &sb, z * &sa));
    }
    if a.magnitude() > b.magnitude() {
        let (x, y, z) = descend(b, a, level + 1)?;
        return Some((x, z, y));
    }
    if b.magnitude().is_one() {
        // a, b in {-1, 1}, neither a square: both are -1
        return None;
    }
    let bm = b.magnitude();
    let mut t = sqrt_mod_squarefree(a, bm)?;
    let bmi = to_bigint(bm);
    if &t * 2 > bmi {
        t -= &bmi;
    }
    let c = (&t * &t - a) / b;
    if c.is_zero() {
        return Some((t, one, zero));
    }
    let (c0, r) = square_free_part(&c);
    let (x1, y1, z1) = descend(a, &c0, level + 1)?;
    // (x1 t + a y1)^2 - a (x1 + t y1)^2 = (x1^2 - a y1^2)(t^2 - a) = b (c0 r z1)^2
    let x = &x1 * &t + a * &y1;
    let y = &x1 + &t * &y1;
    let z = c0 * r * z1;
    Some((x, y, z))
}
