//! Exact base fields: the rationals and finite fields F_{p^k} presented by an
//! explicit monic irreducible modulus.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fp;
use crate::ntheory::{inv_mod, is_prime_u64, mul_mod};

/// Common interface of exact field elements. Every element knows its field,
/// so `zero`/`one` are produced from an existing element.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn characteristic(&self) -> u64;
    /// Number of elements for finite fields.
    fn field_order(&self) -> Option<BigUint>;
    /// Deterministic total order used to sort factor lists.
    fn sort_key(&self) -> Vec<u64>;

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inverse().map(|i| self.times(&i))
    }
    fn pow_u64(&self, mut e: u64) -> Self {
        let mut r = self.one_like();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.times(&b);
            }
            b = b.times(&b);
            e >>= 1;
        }
        r
    }
    fn pow_big(&self, e: &BigUint) -> Self {
        let mut r = self.one_like();
        for i in (0..e.bits()).rev() {
            r = r.times(&r);
            if e.bit(i) {
                r = r.times(self);
            }
        }
        r
    }
    /// Signed integer power; `None` if the element is zero and `e < 0`.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u64(e as u64))
        } else {
            self.inverse().map(|i| i.pow_u64(e.unsigned_abs()))
        }
    }
}

// ---------------------------------------------------------------- F_q

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FqCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl FqCtx {
    /// Prime field F_p.
    pub fn prime(p: u64) -> Result<Arc<FqCtx>> {
        Self::new(p, vec![0, 1])
    }

    /// F_p[t]/(modulus); the modulus is monic, low coefficient first.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Arc<FqCtx>> {
        if !is_prime_u64(p) {
            return Err(Error::Invalid(format!("characteristic {p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::Unsupported("characteristic must be below 2^32".into()));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fp::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::Invalid("modulus must be monic of degree >= 1".into()));
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::Invalid(format!("modulus {m:?} is reducible over F_{p}")));
        }
        Ok(Arc::new(FqCtx { p, k: m.len() - 1, modulus: m }))
    }

    pub(crate) fn new_unchecked(p: u64, modulus: Vec<u64>) -> Arc<FqCtx> {
        Arc::new(FqCtx { p, k: modulus.len() - 1, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.k
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.k as u32)
    }
}

impl fmt::Display for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "GF({}^{}; {})", self.p, self.k, m.join(","))
        }
    }
}

/// Element of F_{p^k}: coefficient vector in the power basis of the modulus root.
#[derive(Clone)]
pub struct Fq {
    ctx: Arc<FqCtx>,
    c: Vec<u64>,
}

impl PartialEq for Fq {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx) && self.c == o.c
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            write!(f, "{}", self.c[0])
        } else {
            let s: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", s.join(","))
        }
    }
}

impl Fq {
    pub fn from_coeffs(ctx: &Arc<FqCtx>, coeffs: &[u64]) -> Fq {
        let mut v: Vec<u64> = coeffs.iter().map(|x| x % ctx.p).collect();
        fp::trim(&mut v);
        let v = if v.len() > ctx.k { fp::rem(&v, &ctx.modulus, ctx.p) } else { v };
        let mut c = vec![0u64; ctx.k];
        c[..v.len()].copy_from_slice(&v);
        Fq { ctx: ctx.clone(), c }
    }

    pub fn from_i64(ctx: &Arc<FqCtx>, n: i64) -> Fq {
        let v = n.rem_euclid(ctx.p as i64) as u64;
        Fq::from_coeffs(ctx, &[v])
    }

    pub fn from_bigint(ctx: &Arc<FqCtx>, n: &BigInt) -> Fq {
        let p = BigInt::from(ctx.p);
        let r = ((n % &p) + &p) % &p;
        Fq::from_coeffs(ctx, &[r.to_u64().unwrap()])
    }

    /// Residue of a rational number; `None` if the denominator vanishes.
    pub fn from_rational(ctx: &Arc<FqCtx>, q: &BigRational) -> Option<Fq> {
        let n = Fq::from_bigint(ctx, q.numer());
        let d = Fq::from_bigint(ctx, q.denom());
        n.div(&d)
    }

    /// The class of t, i.e. the root of the modulus.
    pub fn generator(ctx: &Arc<FqCtx>) -> Fq {
        Fq::from_coeffs(ctx, &[0, 1])
    }

    pub fn ctx(&self) -> &Arc<FqCtx> {
        &self.ctx
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// The p-th power (Frobenius).
    pub fn frobenius(&self) -> Fq {
        self.pow_u64(self.ctx.p)
    }

    /// Parse "n", "-n", "a^N", "-a^N", "c*a^N" or "[c0,c1,...]".
    pub fn parse(ctx: &Arc<FqCtx>, s: &str) -> Result<Fq> {
        let s = s.trim().replace('α', "a").replace(' ', "");
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let v: std::result::Result<Vec<i64>, _> = inner.split(',').map(|t| t.trim().parse::<i64>()).collect();
            let v = v.map_err(|e| Error::Parse(format!("coefficient vector {s}: {e}")))?;
            if v.len() > ctx.k {
                return Err(Error::Parse(format!("vector {s} longer than extension degree")));
            }
            let u: Vec<u64> = v.iter().map(|x| x.rem_euclid(ctx.p as i64) as u64).collect();
            return Ok(Fq::from_coeffs(ctx, &u));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, s.clone()),
        };
        let (scalar, power) = match body.split_once('*') {
            Some((a, b)) => (Some(a.to_string()), b.to_string()),
            None if body.starts_with('a') => (None, body.clone()),
            None => (Some(body.clone()), String::new()),
        };
        let mut x = match &scalar {
            Some(t) => {
                let n: BigInt = t.parse().map_err(|_| Error::Parse(format!("bad element {s}")))?;
                Fq::from_bigint(ctx, &n)
            }
            None => Fq::from_i64(ctx, 1),
        };
        if !power.is_empty() {
            let e: u64 = if power == "a" {
                1
            } else {
                power
                    .strip_prefix("a^")
                    .ok_or_else(|| Error::Parse(format!("bad element {s}")))?
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s}")))?
            };
            x = x.times(&Fq::generator(ctx).pow_u64(e));
        }
        Ok(if neg { x.negate() } else { x })
    }
}

impl Scalar for Fq {
    fn zero_like(&self) -> Self {
        Fq { ctx: self.ctx.clone(), c: vec![0; self.ctx.k] }
    }
    fn one_like(&self) -> Self {
        let mut c = vec![0; self.ctx.k];
        c[0] = 1;
        Fq { ctx: self.ctx.clone(), c }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fq::from_i64(&self.ctx, n)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn plus(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(&a, &b)| {
                let t = a + b;
                if t >= p {
                    t - p
                } else {
                    t
                }
            })
            .collect();
        Fq { ctx: self.ctx.clone(), c }
    }
    fn minus(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        let c = self.c.iter().zip(&o.c).map(|(&a, &b)| if a >= b { a - b } else { a + p - b }).collect();
        Fq { ctx: self.ctx.clone(), c }
    }
    fn times(&self, o: &Self) -> Self {
        let p = self.ctx.p;
        let k = self.ctx.k;
        if k == 1 {
            return Fq { ctx: self.ctx.clone(), c: vec![mul_mod(self.c[0], o.c[0], p)] };
        }
        let mut r = vec![0u64; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                let t = r[i + j] + mul_mod(a, b, p);
                r[i + j] = if t >= p { t - p } else { t };
            }
        }
        let m = &self.ctx.modulus;
        for i in (k..2 * k - 1).rev() {
            let t = r[i];
            if t == 0 {
                continue;
            }
            r[i] = 0;
            for j in 0..k {
                let s = mul_mod(t, m[j], p);
                let idx = i - k + j;
                r[idx] = if r[idx] >= s { r[idx] - s } else { r[idx] + p - s };
            }
        }
        r.truncate(k);
        Fq { ctx: self.ctx.clone(), c: r }
    }
    fn negate(&self) -> Self {
        let p = self.ctx.p;
        Fq { ctx: self.ctx.clone(), c: self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.ctx.k == 1 {
            return inv_mod(self.c[0], self.ctx.p).map(|v| Fq { ctx: self.ctx.clone(), c: vec![v] });
        }
        let inv = fp::inv_mod_poly(&self.c, &self.ctx.modulus, self.ctx.p)?;
        Some(Fq::from_coeffs(&self.ctx, &inv))
    }
    fn characteristic(&self) -> u64 {
        self.ctx.p
    }
    fn field_order(&self) -> Option<BigUint> {
        Some(self.ctx.order())
    }
    fn sort_key(&self) -> Vec<u64> {
        self.c.clone()
    }
}

// ---------------------------------------------------------------- Q

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn field_order(&self) -> Option<BigUint> {
        None
    }
    fn sort_key(&self) -> Vec<u64> {
        // Only used for deterministic ordering; rationals are not factored.
        let mut v = vec![u64::from(self.is_negative())];
        v.extend(self.numer().magnitude().to_u64_digits());
        v.push(u64::MAX);
        v.extend(self.denom().magnitude().to_u64_digits());
        v
    }
}

/// Parse "a/b" or an integer as a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().map_err(|_| bad())?;
            let d: BigInt = b.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&d) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------- descriptors

/// A base field: Q, or F_{p^k} with an explicit modulus.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldDescriptor {
    Rational,
    Finite(Arc<FqCtx>),
}

/// An element of a field described by a [`FieldDescriptor`].
#[derive(Clone, Debug, PartialEq)]
pub enum FieldElement {
    Rational(BigRational),
    Finite(Fq),
}

impl FieldDescriptor {
    /// Parse "Q", "GF(p)" or "GF(p^k; m0,m1,...,1)" (modulus low to high).
    pub fn parse(s: &str) -> Result<FieldDescriptor> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" || t == "QQ" {
            return Ok(FieldDescriptor::Rational);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad field descriptor {s}")))?;
        let (head, modulus) = match inner.split_once(';') {
            Some((h, m)) => (h, Some(m)),
            None => (inner, None),
        };
        let (p, k): (u64, usize) = match head.split_once('^') {
            Some((a, b)) => (
                a.parse().map_err(|_| Error::Parse(format!("bad characteristic in {s}")))?,
                b.parse().map_err(|_| Error::Parse(format!("bad degree in {s}")))?,
            ),
            None => (head.parse().map_err(|_| Error::Parse(format!("bad characteristic in {s}")))?, 1),
        };
        match (k, modulus) {
            (1, None) => Ok(FieldDescriptor::Finite(FqCtx::prime(p)?)),
            (_, None) => Err(Error::Parse("extension fields need an explicit modulus".into())),
            (_, Some(m)) => {
                let v: std::result::Result<Vec<i64>, _> = m.split(',').map(|x| x.parse::<i64>()).collect();
                let v = v.map_err(|_| Error::Parse(format!("bad modulus in {s}")))?;
                if v.len() != k + 1 {
                    return Err(Error::Invalid(format!("modulus must have {} coefficients", k + 1)));
                }
                let pi = p as i64;
                FqCtx::new(p, v.iter().map(|c| c.rem_euclid(pi) as u64).collect()).map(FieldDescriptor::Finite)
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rational => 0,
            FieldDescriptor::Finite(c) => c.p(),
        }
    }

    pub fn extension_degree(&self) -> usize {
        match self {
            FieldDescriptor::Rational => 1,
            FieldDescriptor::Finite(c) => c.degree(),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        match self {
            FieldDescriptor::Rational => parse_rational(s).map(FieldElement::Rational),
            FieldDescriptor::Finite(c) => Fq::parse(c, s).map(FieldElement::Finite),
        }
    }

    /// Split a comma-separated element list, keeping bracketed vectors intact.
    pub fn parse_element_list(&self, s: &str) -> Result<Vec<FieldElement>> {
        split_top_level(s).iter().map(|t| self.parse_element(t)).collect()
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "Q"),
            FieldDescriptor::Finite(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{}", format_rational(q)),
            FieldElement::Finite(x) => write!(f, "{x}"),
        }
    }
}

pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch)
            }
            ']' => {
                depth -= 1;
                cur.push(ch)
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out.into_iter().map(|t| t.trim().to_string()).collect()
}

/// Small dense matrices over an exact field.
pub mod matrix {
    use super::Scalar;

    pub type Matrix<T> = Vec<Vec<T>>;

    pub fn mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
        let n = a.len();
        let m = b[0].len();
        let z = a[0][0].zero_like();
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut s = z.clone();
                        for (k, row) in b.iter().enumerate() {
                            s = s.plus(&a[i][k].times(&row[j]));
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
        let mut m = a.clone();
        let rows = m.len();
        if rows == 0 {
            return 0;
        }
        let cols = m[0].len();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, piv);
            let inv = m[r][c].inverse().unwrap();
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].times(&inv);
                    for j in c..cols {
                        let t = f.times(&m[r][j]);
                        m[i][j] = m[i][j].minus(&t);
                    }
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    pub fn map<T, U>(a: &Matrix<T>, f: impl Fn(&T) -> U) -> Matrix<U> {
        a.iter().map(|row| row.iter().map(&f).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Arc<FqCtx> {
        FqCtx::new(3, vec![1, 0, 1]).unwrap()
    }

    #[test]
    fn extension_arithmetic() {
        let k = f9();
        let a = Fq::generator(&k);
        assert_eq!(a.times(&a), Fq::from_i64(&k, -1));
        assert_eq!(a.frobenius(), a.negate());
        let all: Vec<Fq> = (0..9u64).map(|n| Fq::from_coeffs(&k, &[n % 3, n / 3])).collect();
        for x in &all {
            if !x.is_zero() {
                assert!(x.times(&x.inverse().unwrap()).is_one());
                assert!(x.pow_u64(8).is_one());
            }
        }
    }

    #[test]
    fn parse_elements() {
        let k = FqCtx::new(89, vec![3, 82, 1]).unwrap();
        let a = Fq::generator(&k);
        assert_eq!(Fq::parse(&k, "a^2").unwrap(), a.times(&a));
        assert_eq!(Fq::parse(&k, "α^1").unwrap(), a);
        assert_eq!(Fq::parse(&k, "[1,2]").unwrap(), Fq::from_coeffs(&k, &[1, 2]));
        assert_eq!(Fq::parse(&k, "-1").unwrap(), Fq::from_i64(&k, 88));
        assert_eq!(Fq::parse(&k, "a^7920").unwrap(), Fq::from_i64(&k, 1));
        assert!(Fq::parse(&k, "b^2").is_err());
    }

    #[test]
    fn descriptors() {
        assert_eq!(FieldDescriptor::parse("Q").unwrap(), FieldDescriptor::Rational);
        let d = FieldDescriptor::parse("GF(89^2; 3,82,1)").unwrap();
        assert_eq!(d.extension_degree(), 2);
        assert_eq!(d.characteristic(), 89);
        assert!(FieldDescriptor::parse("GF(5^2; 4,0,1)").is_err());
        assert!(FieldDescriptor::parse("GF(9)").is_err());
        assert_eq!(split_top_level("1,[2,3],a^4"), vec!["1", "[2,3]", "a^4"]);
    }
}
