//! Arbitrary-precision binary floating point and complex balls
//! (midpoint plus an outward-rounded f64 error radius).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Value `m * 2^e`, with `m` rounded to at most the working precision in bits.
#[derive(Clone, PartialEq, Eq)]
pub struct Float {
    m: BigInt,
    e: i64,
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

fn bits(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

/// Round `m * 2^e` to `prec` significant bits (nearest, ties away from zero).
fn round_to(m: BigInt, e: i64, prec: u32) -> Float {
    let b = bits(&m);
    if b <= prec as u64 {
        return Float::normalized(m, e);
    }
    let s = b - prec as u64;
    let neg = m.is_negative();
    let mut mag = m.magnitude().clone();
    mag += num_bigint::BigUint::one() << (s - 1);
    mag >>= s;
    let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
    Float::normalized(m, e + s as i64)
}

impl Float {
    fn normalized(m: BigInt, e: i64) -> Float {
        if m.is_zero() {
            return Float { m, e: 0 };
        }
        let tz = m.magnitude().trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Float { m: m >> tz, e: e + tz as i64 }
        } else {
            Float { m, e }
        }
    }

    pub fn zero() -> Float {
        Float { m: BigInt::zero(), e: 0 }
    }
    pub fn one() -> Float {
        Float { m: BigInt::one(), e: 0 }
    }
    pub fn from_i64(n: i64) -> Float {
        Float::normalized(BigInt::from(n), 0)
    }
    pub fn from_bigint(n: &BigInt) -> Float {
        Float::normalized(n.clone(), 0)
    }
    pub fn from_parts(m: BigInt, e: i64) -> Float {
        Float::normalized(m, e)
    }

    /// Exact conversion of a finite f64.
    pub fn from_f64(x: f64) -> Float {
        assert!(x.is_finite());
        if x == 0.0 {
            return Float::zero();
        }
        let b = x.to_bits();
        let sign = if b >> 63 == 1 { -1 } else { 1 };
        let exp = ((b >> 52) & 0x7ff) as i64;
        let frac = b & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        Float::normalized(BigInt::from(m) * sign, e)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Float {
        Float::from_bigint(q.numer()).div(&Float::from_bigint(q.denom()), prec)
    }

    /// Parse a decimal literal such as "-1.25e-3".
    pub fn parse(s: &str, prec: u32) -> Result<Float> {
        Ok(Float::from_rational(&parse_decimal(s)?, prec))
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }
    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }
    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// Position of the leading bit: |x| lies in [2^(msb-1), 2^msb).
    pub fn msb(&self) -> i64 {
        bits(&self.m) as i64 + self.e
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let b = bits(&self.m) as i64;
        let shift = (b - 60).max(0);
        let top = (&self.m >> shift as usize).to_i64().unwrap() as f64;
        let e = self.e + shift;
        if e > 2000 {
            return if top > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2200 {
            return 0.0;
        }
        // split the scaling to avoid intermediate overflow/underflow
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    pub fn neg(&self) -> Float {
        Float { m: -&self.m, e: self.e }
    }
    pub fn abs(&self) -> Float {
        Float { m: self.m.abs(), e: self.e }
    }
    pub fn ldexp(&self, k: i64) -> Float {
        if self.is_zero() {
            return self.clone();
        }
        Float { m: self.m.clone(), e: self.e + k }
    }
    pub fn round(&self, prec: u32) -> Float {
        round_to(self.m.clone(), self.e, prec)
    }

    pub fn add(&self, o: &Float, prec: u32) -> Float {
        if self.is_zero() {
            return o.round(prec);
        }
        if o.is_zero() {
            return self.round(prec);
        }
        let gap = prec as i64 + 64;
        if self.msb() - o.msb() > gap {
            return self.round(prec);
        }
        if o.msb() - self.msb() > gap {
            return o.round(prec);
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        round_to(a + b, e, prec)
    }

    pub fn sub(&self, o: &Float, prec: u32) -> Float {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Float, prec: u32) -> Float {
        round_to(&self.m * &o.m, self.e + o.e, prec)
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Float {
        round_to(&self.m * k, self.e, prec)
    }

    pub fn div(&self, o: &Float, prec: u32) -> Float {
        assert!(!o.is_zero(), "float division by zero");
        if self.is_zero() {
            return Float::zero();
        }
        let s = (prec as i64 + 2 + bits(&o.m) as i64 - bits(&self.m) as i64).max(0);
        let q = (&self.m << s as usize) / &o.m;
        round_to(q, self.e - o.e - s, prec)
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_integer(&self) -> BigInt {
        if self.e >= 0 {
            return &self.m << self.e as usize;
        }
        let s = (-self.e) as usize;
        let neg = self.m.is_negative();
        let mag = (self.m.magnitude() + (num_bigint::BigUint::one() << (s - 1))) >> s;
        BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag)
    }

    /// Exact difference from an integer, as a float.
    pub fn sub_integer_exact(&self, n: &BigInt) -> Float {
        let e = self.e.min(0);
        let a = &self.m << (self.e - e) as usize;
        let b = n << (-e) as usize;
        Float::normalized(a - b, e)
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let approx_log10 = (self.msb() as f64 - 0.5) * std::f64::consts::LOG10_2;
        let mut e10 = approx_log10.floor() as i64;
        loop {
            let j = digits as i64 - 1 - e10;
            let mut num = self.m.abs();
            let mut den = BigInt::one();
            if self.e >= 0 {
                num <<= self.e as usize;
            } else {
                den <<= (-self.e) as usize;
            }
            let ten = BigInt::from(10);
            if j >= 0 {
                num *= ten.pow(j as u32);
            } else {
                den *= ten.pow((-j) as u32);
            }
            let n: BigInt = (&num * 2 + &den) / (&den * 2);
            let s = n.to_string();
            if s.len() > digits {
                e10 += 1;
                continue;
            }
            if s.len() < digits {
                e10 -= 1;
                continue;
            }
            let sign = if self.is_negative() { "-" } else { "" };
            let (head, tail) = s.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, o: &Float) -> Option<Ordering> {
        let d = self.sub(o, (bits(&self.m) + bits(&o.m)) as u32 + 128);
        Some(d.m.sign().cmp(&Sign::NoSign))
    }
}

pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad decimal {s}"));
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fpart) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fpart.is_empty() {
        return Err(bad());
    }
    let digits = format!("{ip}{fpart}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    if neg {
        n = -n;
    }
    let scale = exp - fpart.len() as i64;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(n * ten.pow(scale as u32))
    } else {
        BigRational::new(n, ten.pow((-scale) as u32))
    })
}

// ------------------------------------------------------------ constants

/// Fixed-point arctan(1/n) or artanh(1/n) scaled by 2^bits.
fn arc_series(n: u64, bits: u64, hyperbolic: bool) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let n2 = BigInt::from(n * n);
    let mut power = &one / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if !hyperbolic && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

static CONSTS: Mutex<Vec<(u32, Float, Float)>> = Mutex::new(Vec::new());

/// (pi, ln 2) to `prec` bits.
fn constants(prec: u32) -> (Float, Float) {
    let mut cache = CONSTS.lock().unwrap();
    if let Some((_, pi, l2)) = cache.iter().find(|(p, _, _)| *p >= prec) {
        return (pi.round(prec), l2.round(prec));
    }
    let wp = (prec as u64).max(64) + 40;
    let pi = arc_series(5, wp, false) * 16 - arc_series(239, wp, false) * 4;
    let l2 = arc_series(3, wp, true) * 2;
    let pi = round_to(pi, -(wp as i64), prec + 32);
    let l2 = round_to(l2, -(wp as i64), prec + 32);
    cache.push((prec + 32, pi.clone(), l2.clone()));
    (pi.round(prec), l2.round(prec))
}

pub fn pi(prec: u32) -> Float {
    constants(prec).0
}

pub fn ln2(prec: u32) -> Float {
    constants(prec).1
}

fn to_fixed(x: &Float, bits: u64) -> BigInt {
    let sh = x.e + bits as i64;
    if sh >= 0 {
        &x.m << sh as usize
    } else {
        &x.m >> (-sh) as usize
    }
}

/// e^x. Relative error below 2^(2-prec).
pub fn exp(x: &Float, prec: u32) -> Float {
    if x.is_zero() {
        return Float::one();
    }
    let xf = x.to_f64();
    if xf.abs() > 1e12 {
        panic!("exp argument out of range");
    }
    let n = (xf / std::f64::consts::LN_2).round() as i64;
    let extra = 64 - (n.unsigned_abs().leading_zeros() as u64);
    let wp = prec as u64 + 40 + extra;
    let r = x.sub(&ln2(wp as u32).mul_i64(n, wp as u32), wp as u32);
    let s = 12u64;
    let fixed = to_fixed(&r, wp) >> s as usize;
    let one = BigInt::one() << wp as usize;
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k = 1u64;
    loop {
        term = (&term * &fixed >> wp as usize) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..s {
        sum = &sum * &sum >> wp as usize;
    }
    round_to(sum, n - wp as i64, prec)
}

/// (sin x, cos x) with absolute error below 2^(2-prec).
pub fn sin_cos(x: &Float, prec: u32) -> (Float, Float) {
    if x.is_zero() {
        return (Float::zero(), Float::one());
    }
    let xf = x.to_f64();
    if xf.abs() > 1e12 {
        panic!("sin/cos argument out of range");
    }
    let k = (xf / (2.0 * std::f64::consts::PI)).round() as i64;
    let extra = 64 - (k.unsigned_abs().leading_zeros() as u64);
    let wp = prec as u64 + 48 + extra;
    let two_pi = pi(wp as u32).ldexp(1);
    let r = x.sub(&two_pi.mul_i64(k, wp as u32), wp as u32);
    let s = 10u64;
    let fixed = to_fixed(&r, wp) >> s as usize;
    let one = BigInt::one() << wp as usize;
    let x2 = &fixed * &fixed >> wp as usize;
    // sin
    let mut term = fixed.clone();
    let mut sn = fixed.clone();
    let mut k2 = 1u64;
    loop {
        term = -(&term * &x2 >> wp as usize) / BigInt::from((k2 + 1) * (k2 + 2));
        if term.is_zero() {
            break;
        }
        sn += &term;
        k2 += 2;
    }
    let mut term = one.clone();
    let mut cs = one.clone();
    let mut k2 = 0u64;
    loop {
        term = -(&term * &x2 >> wp as usize) / BigInt::from((k2 + 1) * (k2 + 2));
        if term.is_zero() {
            break;
        }
        cs += &term;
        k2 += 2;
    }
    for _ in 0..s {
        let ns = (&sn * &cs >> wp as usize) * 2;
        let nc = (&cs * &cs - &sn * &sn) >> wp as usize;
        sn = ns;
        cs = nc;
    }
    (round_to(sn, -(wp as i64), prec), round_to(cs, -(wp as i64), prec))
}

// ------------------------------------------------------------ balls

/// Slightly inflate a nonnegative f64 bound so it stays an upper bound.
#[inline]
pub fn up(x: f64) -> f64 {
    x * (1.0 + 8.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

/// Complex ball: every value within `rad` of `re + i im`.
#[derive(Clone)]
pub struct CBall {
    pub re: Float,
    pub im: Float,
    pub rad: f64,
    pub prec: u32,
}

impl fmt::Debug for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i ± {:.3e})", self.re.to_sci(12), self.im.to_sci(12), self.rad)
    }
}

impl CBall {
    pub fn new(re: Float, im: Float, rad: f64, prec: u32) -> CBall {
        CBall { re, im, rad, prec }
    }
    pub fn zero(prec: u32) -> CBall {
        CBall::new(Float::zero(), Float::zero(), 0.0, prec)
    }
    pub fn one(prec: u32) -> CBall {
        CBall::new(Float::one(), Float::zero(), 0.0, prec)
    }
    pub fn from_i64(n: i64, prec: u32) -> CBall {
        CBall::new(Float::from_i64(n), Float::zero(), 0.0, prec)
    }
    pub fn i(prec: u32) -> CBall {
        CBall::new(Float::zero(), Float::one(), 0.0, prec)
    }
    pub fn real(x: Float, prec: u32) -> CBall {
        CBall::new(x, Float::zero(), 0.0, prec)
    }

    /// From decimal strings; the conversion error is folded into the radius.
    pub fn parse(re: &str, im: &str, prec: u32) -> Result<CBall> {
        let r = Float::parse(re, prec)?;
        let i = Float::parse(im, prec)?;
        let rad = up((r.to_f64().abs() + i.to_f64().abs()) * 2f64.powi(1 - prec as i32));
        Ok(CBall::new(r, i, rad, prec))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> CBall {
        let r = Float::from_rational(q, prec);
        let rad = up(r.to_f64().abs() * 2f64.powi(1 - prec as i32));
        CBall::new(r, Float::zero(), rad, prec)
    }

    /// Upper bound for |midpoint|.
    pub fn mid_abs(&self) -> f64 {
        up(self.re.to_f64().abs() + self.im.to_f64().abs())
    }

    /// Upper bound for the modulus of every point in the ball.
    pub fn abs_upper(&self) -> f64 {
        up(self.mid_abs() + self.rad)
    }

    /// Lower bound for the modulus of every point in the ball (0 if it may contain 0).
    pub fn abs_lower(&self) -> f64 {
        let r = self.re.to_f64();
        let i = self.im.to_f64();
        let m = (r * r + i * i).sqrt() * (1.0 - 8.0 * f64::EPSILON);
        (m - self.rad).max(0.0)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower() == 0.0
    }

    fn round_err(&self, mag: f64) -> f64 {
        up(mag * 2f64.powi(1 - self.prec as i32))
    }

    pub fn add(&self, o: &CBall) -> CBall {
        let p = self.prec.min(o.prec);
        let re = self.re.add(&o.re, p);
        let im = self.im.add(&o.im, p);
        let mut out = CBall::new(re, im, 0.0, p);
        out.rad = up(self.rad + o.rad + out.round_err(out.mid_abs()));
        out
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CBall {
        CBall::new(self.re.neg(), self.im.neg(), self.rad, self.prec)
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let p = self.prec.min(o.prec);
        let wp = p + 8;
        let rr = self.re.mul(&o.re, wp);
        let ii = self.im.mul(&o.im, wp);
        let ri = self.re.mul(&o.im, wp);
        let ir = self.im.mul(&o.re, wp);
        let re = rr.sub(&ii, p);
        let im = ri.add(&ir, p);
        let a = self.mid_abs();
        let b = o.mid_abs();
        let mut out = CBall::new(re, im, 0.0, p);
        let prop = a * o.rad + b * self.rad + self.rad * o.rad;
        out.rad = up(prop + out.round_err(out.mid_abs() + 2.0 * a * b));
        out
    }

    pub fn mul_i64(&self, k: i64) -> CBall {
        let p = self.prec;
        let mut out = CBall::new(self.re.mul_i64(k, p), self.im.mul_i64(k, p), 0.0, p);
        out.rad = up(self.rad * k.unsigned_abs() as f64 + out.round_err(out.mid_abs()));
        out
    }

    /// Multiply by i^k exactly.
    pub fn mul_i_pow(&self, k: u32) -> CBall {
        match k % 4 {
            0 => self.clone(),
            1 => CBall::new(self.im.neg(), self.re.clone(), self.rad, self.prec),
            2 => self.neg(),
            _ => CBall::new(self.im.clone(), self.re.neg(), self.rad, self.prec),
        }
    }

    pub fn ldexp(&self, k: i64) -> CBall {
        CBall::new(self.re.ldexp(k), self.im.ldexp(k), up(self.rad * 2f64.powi(k as i32)), self.prec)
    }

    pub fn sqr(&self) -> CBall {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> CBall {
        let mut r = CBall::one(self.prec);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.sqr();
            }
        }
        r
    }

    pub fn inv(&self) -> Result<CBall> {
        let lo = self.abs_lower();
        if lo == 0.0 {
            return Err(Error::DegeneratePoint("division by a ball containing zero".into()));
        }
        let p = self.prec;
        let wp = p + 8;
        let n = self.re.mul(&self.re, wp).add(&self.im.mul(&self.im, wp), wp);
        let re = self.re.div(&n, p);
        let im = self.im.neg().div(&n, p);
        let mut out = CBall::new(re, im, 0.0, p);
        let m = out.mid_abs();
        // |1/(z+d) - 1/z| <= |d| / (|z| (|z| - |d|))
        let lo_mid = lo + self.rad;
        out.rad = up(self.rad / (lo_mid * lo) + out.round_err(4.0 * m));
        Ok(out)
    }

    pub fn div(&self, o: &CBall) -> Result<CBall> {
        Ok(self.mul(&o.inv()?))
    }

    /// Complex exponential.
    pub fn exp(&self) -> CBall {
        let p = self.prec;
        let e = exp(&self.re, p + 8);
        let (s, c) = sin_cos(&self.im, p + 8);
        let re = e.mul(&c, p);
        let im = e.mul(&s, p);
        let mut out = CBall::new(re, im, 0.0, p);
        let mag = e.to_f64().abs();
        let eval = up(mag * 2f64.powi(4 - p as i32));
        // |exp(z+d) - exp(z)| <= |exp z| (e^|d| - 1)
        let prop = if self.rad > 0.0 { up(mag * self.rad.exp_m1() * (1.0 + 1e-12)) } else { 0.0 };
        out.rad = up(eval + prop + out.round_err(mag));
        out
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_f64() {
        assert!((pi(200).to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((ln2(200).to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        let s = pi(340).to_sci(50);
        assert_eq!(s, "3.1415926535897932384626433832795028841971693993751e0");
    }

    #[test]
    fn exp_and_trig() {
        let p = 200;
        for x in [-30.5, -1.0, 0.3, 2.0, 17.25] {
            let e = exp(&Float::from_f64(x), p).to_f64();
            assert!((e / x.exp() - 1.0).abs() < 1e-14, "{x}");
            let (s, c) = sin_cos(&Float::from_f64(x), p);
            assert!((s.to_f64() - x.sin()).abs() < 1e-14);
            assert!((c.to_f64() - x.cos()).abs() < 1e-14);
        }
        // sin^2 + cos^2 = 1 to working precision
        let (s, c) = sin_cos(&Float::parse("123.456", 300).unwrap(), 300);
        let one = s.mul(&s, 300).add(&c.mul(&c, 300), 300);
        assert!(one.sub(&Float::one(), 300).abs().to_f64() < 1e-85);
        // e^1 to 40 digits
        assert_eq!(exp(&Float::one(), 200).to_sci(40), "2.718281828459045235360287471352662497757e0");
    }

    #[test]
    fn ball_division() {
        let p = 128;
        let a = CBall::parse("1.5", "-2", p).unwrap();
        let b = CBall::parse("0.25", "3", p).unwrap();
        let q = a.div(&b).unwrap();
        let back = q.mul(&b).sub(&a);
        assert!(back.abs_upper() < 1e-30);
        assert!(CBall::zero(p).inv().is_err());
    }

    #[test]
    fn decimal_parse() {
        assert_eq!(parse_decimal("-1.25e-3").unwrap(), BigRational::new((-125).into(), 100000.into()));
        assert_eq!(parse_decimal("10").unwrap(), BigRational::from_integer(10.into()));
        assert!(parse_decimal("1.2.3").is_err());
    }
}
