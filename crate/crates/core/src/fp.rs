//! Dense polynomials over a prime field as raw `u64` vectors (low degree first).
//! Used to implement extension-field arithmetic and irreducibility tests.

use crate::ntheory::{inv_mod, mul_mod};

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            if x >= p {
                x - p
            } else {
                x
            }
        })
        .collect();
    trim(&mut r);
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x >= y {
                x - y
            } else {
                x + p - y
            }
        })
        .collect();
    trim(&mut r);
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = r[i + j] + mul_mod(x, y, p);
            r[i + j] = if t >= p { t - p } else { t };
        }
    }
    trim(&mut r);
    r
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem(a, m, p).1
}

pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!m.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    if r.len() < m.len() {
        return (Vec::new(), r);
    }
    let li = inv_mod(m[dm], p).expect("leading coefficient invertible");
    let mut q = vec![0u64; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = mul_mod(r[i], li, p);
        if c == 0 {
            continue;
        }
        q[i - dm] = c;
        for j in 0..=dm {
            let t = mul_mod(c, m[j], p);
            let k = i - dm + j;
            r[k] = if r[k] >= t { r[k] - t } else { r[k] + p - t };
        }
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    let mut v = a.to_vec();
    trim(&mut v);
    if let Some(&l) = v.last() {
        let li = inv_mod(l, p).unwrap();
        for c in v.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
    }
    v
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod_poly(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    let mut out: Vec<u64> = t0.iter().map(|&x| mul_mod(x, c, p)).collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

/// `base^(p^j)` modulo `m`, by repeated p-th powering.
pub fn pow_p_iter(base: &[u64], j: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = rem(base, m, p);
    for _ in 0..j {
        r = pow_mod_poly(&r, p, m, p);
    }
    r
}

pub fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = match m.len() {
        0 | 1 => return false,
        l => l - 1,
    };
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    if pow_p_iter(&x, k, m, p) != rem(&x, m, p) {
        return false;
    }
    for r in prime_divisors(k) {
        let h = pow_p_iter(&x, k / r, m, p);
        let g = gcd(&sub(&h, &x, p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
