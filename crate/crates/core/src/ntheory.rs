//! Word-size and big-integer number theory helpers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime `p`; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test with fixed bases for big integers.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime_u64(n) {
            return n;
        }
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime_u64(k)).collect()
}

/// p-adic valuation of a nonzero big integer.
pub fn val_p(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let f = |x: &BigUint| (x * x + BigUint::from(c)) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 22 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn factor_rec(n: BigUint, out: &mut Vec<(BigUint, u32)>) -> bool {
    if n.is_one() {
        return true;
    }
    if is_probable_prime(&n) {
        out.push((n, 1));
        return true;
    }
    let r = n.sqrt();
    if &r * &r == n {
        let mut sub = Vec::new();
        if !factor_rec(r, &mut sub) {
            return false;
        }
        for (q, e) in sub {
            out.push((q, 2 * e));
        }
        return true;
    }
    for c in 1..20 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            return factor_rec(d, out) && factor_rec(other, out);
        }
    }
    false
}

/// Factor a nonzero integer into primes (sign dropped). Trial division up to 10^6,
/// then Pollard-Brent on the cofactor.
pub fn factor_integer(n: &BigInt) -> Option<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero());
    let (_, mag) = (n.sign() == Sign::Minus, n.magnitude().clone());
    let mut m = mag;
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= 1_000_000 {
        let db = BigUint::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((db, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut rest = Vec::new();
    if !factor_rec(m, &mut rest) {
        return None;
    }
    for (q, e) in rest {
        if let Some(pos) = out.iter().position(|(a, _)| *a == q) {
            out[pos].1 += e;
        } else {
            out.push((q, e));
        }
    }
    out.sort();
    Some(out)
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Squarefree part test for positive integers.
pub fn is_squarefree(n: &BigInt) -> Option<bool> {
    let f = factor_integer(n)?;
    Some(f.iter().all(|(_, e)| *e == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn inverse() {
        for a in 1..101 {
            assert_eq!(mul_mod(a, inv_mod(a, 101).unwrap(), 101), 1);
        }
    }

    #[test]
    fn factoring() {
        let n = BigInt::from(2u64.pow(16)) * BigInt::from(7u64.pow(6)) * BigInt::from(17u64.pow(3));
        let f = factor_integer(&n).unwrap();
        assert_eq!(
            f,
            vec![(BigUint::from(2u32), 16), (BigUint::from(7u32), 6), (BigUint::from(17u32), 3)]
        );
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let f = factor_integer(&big).unwrap();
        assert_eq!(f.len(), 2);
    }
}
