//! Dense univariate polynomials over an exact field, lowest degree first.

use std::fmt;

use num_bigint::BigUint;

use crate::field::Scalar;

#[derive(Clone, PartialEq)]
pub struct Poly<T: Scalar> {
    zero: T,
    c: Vec<T>,
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl<T: Scalar> Poly<T> {
    /// Build from coefficients (lowest first). `zero` fixes the base field for
    /// the zero polynomial.
    pub fn new(zero: &T, coeffs: Vec<T>) -> Self {
        let mut p = Poly { zero: zero.zero_like(), c: coeffs };
        p.normalize();
        p
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty());
        let z = coeffs[0].zero_like();
        Self::new(&z, coeffs)
    }

    pub fn zero(zero: &T) -> Self {
        Poly { zero: zero.zero_like(), c: Vec::new() }
    }

    pub fn one(zero: &T) -> Self {
        Poly { zero: zero.zero_like(), c: vec![zero.one_like()] }
    }

    pub fn x(zero: &T) -> Self {
        Poly { zero: zero.zero_like(), c: vec![zero.zero_like(), zero.one_like()] }
    }

    pub fn constant(c: T) -> Self {
        let z = c.zero_like();
        Self::new(&z, vec![c])
    }

    fn normalize(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn base_zero(&self) -> &T {
        &self.zero
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|l| l.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.zero.clone();
        for c in self.c.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect();
        Self::new(&self.zero, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect();
        Self::new(&self.zero, c)
    }

    pub fn neg(&self) -> Self {
        Poly { zero: self.zero.clone(), c: self.c.iter().map(|x| x.negate()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(&self.zero, self.c.iter().map(|x| x.times(s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut r = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] = r[i + j].plus(&a.times(b));
            }
        }
        Self::new(&self.zero, r)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = Self::one(&self.zero);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.zero.clone(); k];
        c.extend(self.c.iter().cloned());
        Poly { zero: self.zero.clone(), c }
    }

    pub fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x.times(&x.from_int_like(i as i64))).collect();
        Self::new(&self.zero, c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let li = d.lead().unwrap().inverse().expect("leading coefficient invertible");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(&self.zero), self.clone());
        }
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = r[i].times(&li);
            for j in 0..=dd {
                r[i - dd + j] = r[i - dd + j].minus(&f.times(&d.c[j]));
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Self::new(&self.zero, q), Self::new(&self.zero, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(&self.zero).rem(m);
        let b = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mulmod(&r, m);
            if e.bit(i) {
                r = r.mulmod(&b, m);
            }
        }
        r
    }

    pub fn map<U: Scalar>(&self, zero: &U, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(zero, self.c.iter().map(f).collect())
    }

    /// Reverse coefficients relative to formal degree `n`: x^n f(1/x).
    pub fn reversed(&self, n: usize) -> Self {
        let c = (0..=n).map(|i| self.coeff(n - i)).collect();
        Self::new(&self.zero, c)
    }

    pub fn sort_key(&self) -> (usize, Vec<Vec<u64>>) {
        (self.c.len(), self.c.iter().map(|x| x.sort_key()).collect())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let s = match i {
                0 => cs,
                _ => {
                    let xp = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                    if c.is_one() {
                        xp
                    } else {
                        format!("({cs})*{xp}")
                    }
                }
            };
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fq, FqCtx};

    #[test]
    fn division_identity() {
        let k = FqCtx::prime(13).unwrap();
        let z = Fq::from_i64(&k, 0);
        let f = Poly::new(&z, (0..9).map(|i| Fq::from_i64(&k, i * i + 3)).collect());
        let g = Poly::new(&z, (0..4).map(|i| Fq::from_i64(&k, 2 * i + 1)).collect());
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree().unwrap() < 3);
    }
}
