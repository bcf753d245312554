//! Genus-2 theta constants in ball arithmetic, the weight-10 form Theta, Rosenhain
//! lambdas, absolute invariants of a period matrix, and class polynomials with
//! rational reconstruction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;

use crate::bounds::class_poly_coeff_bound;
use crate::cmfield::QuarticCMField;
use crate::error::{Error, Result};
use crate::float::{pi, up, CBall, Float};
use crate::galois_tables::predict;
use crate::invariants::{ic_from_squared_differences, AbsoluteInvariants};

/// Bits of working precision for `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// Largest lattice radius tried before giving up.
pub const MAX_RADIUS: i64 = 400;

/// Symmetric 2x2 complex matrix with positive definite imaginary part.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    pub t11: CBall,
    pub t12: CBall,
    pub t22: CBall,
    pub prec: u32,
}

impl PeriodMatrix {
    pub fn new(t11: CBall, t12: CBall, t22: CBall, prec: u32) -> Result<PeriodMatrix> {
        let t = PeriodMatrix { t11, t12, t22, prec };
        if t.im_lambda_min() <= 0.0 {
            return Err(Error::Invalid("Im tau is not positive definite".into()));
        }
        Ok(t)
    }

    /// From decimal strings (re, im) for t11, t12, t22.
    pub fn parse(entries: [(&str, &str); 3], digits: u32) -> Result<PeriodMatrix> {
        let prec = bits_for_digits(digits);
        let [a, b, c] = entries;
        PeriodMatrix::new(
            CBall::parse(a.0, a.1, prec)?,
            CBall::parse(b.0, b.1, prec)?,
            CBall::parse(c.0, c.1, prec)?,
            prec,
        )
    }

    /// Exact binary values of the given doubles.
    pub fn from_f64(t: [(f64, f64); 3], digits: u32) -> Result<PeriodMatrix> {
        let prec = bits_for_digits(digits);
        let b = |(x, y): (f64, f64)| CBall::new(Float::from_f64(x), Float::from_f64(y), 0.0, prec);
        PeriodMatrix::new(b(t[0]), b(t[1]), b(t[2]), prec)
    }

    /// A lower bound for the smallest eigenvalue of Im tau (nonpositive if not definite).
    pub fn im_lambda_min(&self) -> f64 {
        let y11 = self.t11.im.to_f64();
        let y12 = self.t12.im.to_f64();
        let y22 = self.t22.im.to_f64();
        let tr = y11 + y22;
        let disc = ((y11 - y22).powi(2) + 4.0 * y12 * y12).sqrt();
        let slack = self.t11.rad + 2.0 * self.t12.rad + self.t22.rad;
        (tr - disc) / 2.0 * (1.0 - 1e-12) - up(slack) - 1e-300
    }

    /// tau + S for an integral symmetric S = [[s11, s12], [s12, s22]].
    pub fn translate(&self, s11: i64, s12: i64, s22: i64) -> PeriodMatrix {
        let p = self.prec;
        let sh = |b: &CBall, k: i64| b.add(&CBall::from_i64(k, p));
        PeriodMatrix { t11: sh(&self.t11, s11), t12: sh(&self.t12, s12), t22: sh(&self.t22, s22), prec: p }
    }

    /// -tau^{-1}.
    pub fn minus_inverse(&self) -> Result<PeriodMatrix> {
        let det = self.t11.mul(&self.t22).sub(&self.t12.sqr());
        let inv = det.inv()?;
        PeriodMatrix::new(
            self.t22.mul(&inv).neg(),
            self.t12.mul(&inv),
            self.t11.mul(&inv).neg(),
            self.prec,
        )
    }

    pub fn diagonal(&self) -> bool {
        self.t12.re.is_zero() && self.t12.im.is_zero() && self.t12.rad == 0.0
    }
}

/// Integral characteristic [eps; eps'] with eps, eps' in Z^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    pub eps: [i64; 2],
    pub eps_p: [i64; 2],
}

impl ThetaChar {
    pub fn new(eps: [i64; 2], eps_p: [i64; 2]) -> ThetaChar {
        ThetaChar { eps, eps_p }
    }

    /// Four digits "e1 e2 e'1 e'2", e.g. "1100".
    pub fn parse(s: &str) -> Result<ThetaChar> {
        let d: Vec<i64> = s.chars().filter_map(|c| c.to_digit(10).map(|x| x as i64)).collect();
        if d.len() != 4 || s.chars().filter(|c| !c.is_whitespace() && *c != ',').count() != 4 {
            return Err(Error::Parse(format!("characteristic {s}: need four digits")));
        }
        Ok(ThetaChar::new([d[0], d[1]], [d[2], d[3]]))
    }

    pub fn reduced(&self) -> ThetaChar {
        let m = |x: i64| x.rem_euclid(2);
        ThetaChar::new([m(self.eps[0]), m(self.eps[1])], [m(self.eps_p[0]), m(self.eps_p[1])])
    }

    pub fn is_even(&self) -> bool {
        (self.eps[0] * self.eps_p[0] + self.eps[1] * self.eps_p[1]).rem_euclid(2) == 0
    }

    /// The sixteen reduced characteristics, in the order of `label`.
    pub fn all() -> Vec<ThetaChar> {
        (0..16).map(|k| ThetaChar::new([k >> 3 & 1, k >> 2 & 1], [k >> 1 & 1, k & 1])).collect()
    }

    pub fn even() -> Vec<ThetaChar> {
        ThetaChar::all().into_iter().filter(ThetaChar::is_even).collect()
    }

    pub fn odd() -> Vec<ThetaChar> {
        ThetaChar::all().into_iter().filter(|c| !c.is_even()).collect()
    }

    pub fn label(&self) -> String {
        let r = self.reduced();
        format!("{}{}{}{}", r.eps[0], r.eps[1], r.eps_p[0], r.eps_p[1])
    }
}

/// Half-width W of the box |w|_inf <= W (w = 2N + eps) so that the Gaussian tail
/// sum_{m > W} 8 m exp(-c m^2), c = pi lambda / 4, is below `tol`. Returns (W, tail bound).
fn lattice_radius(lambda: f64, tol: f64) -> Result<(i64, f64)> {
    if lambda <= 0.0 {
        return Err(Error::Invalid("Im tau is not positive definite".into()));
    }
    let c = std::f64::consts::PI * lambda / 4.0;
    for w in 1..=MAX_RADIUS {
        let m = (w + 1) as f64;
        let first = 8.0 * m * (-c * m * m).exp();
        let ratio = 2.0 * (-c * (2.0 * m + 1.0)).exp();
        if ratio < 0.5 {
            let tail = up(first / (1.0 - ratio));
            if tail < tol {
                return Ok((w, tail));
            }
        }
    }
    Err(Error::PrecisionInfeasible(format!(
        "smallest eigenvalue {lambda:.3e} of Im tau needs a lattice radius above {MAX_RADIUS}"
    )))
}

fn pi_ball(prec: u32) -> CBall {
    CBall::new(pi(prec + 8), Float::zero(), up(4.0 * 2f64.powi(-(prec as i32))), prec)
}

/// All sixteen theta constants, indexed by `4 * (2 e1 + e2) + (2 e'1 + e'2)`.
/// Lattice points are shared between characteristics with equal eps.
pub fn theta_all(tau: &PeriodMatrix, tol: f64) -> Result<Vec<CBall>> {
    let (w_max, tail) = lattice_radius(tau.im_lambda_min(), tol)?;
    let p = tau.prec;
    let pi_i4 = pi_ball(p).mul_i_pow(1).ldexp(-2);
    let mut out = vec![CBall::zero(p); 16];
    for e in 0..4usize {
        let eps = [(e >> 1) as i64, (e & 1) as i64];
        let mut sums = vec![CBall::zero(p); 4];
        for w1 in (-w_max..=w_max).filter(|w| (w - eps[0]).rem_euclid(2) == 0) {
            for w2 in (-w_max..=w_max).filter(|w| (w - eps[1]).rem_euclid(2) == 0) {
                let q = tau.t11.mul_i64(w1 * w1).add(&tau.t12.mul_i64(2 * w1 * w2)).add(&tau.t22.mul_i64(w2 * w2));
                let t = pi_i4.mul(&q).exp();
                for (k, s) in sums.iter_mut().enumerate() {
                    let ep = [(k >> 1) as i64, (k & 1) as i64];
                    let ph = (w1 * ep[0] + w2 * ep[1]).rem_euclid(4) as u32;
                    *s = s.add(&t.mul_i_pow(ph));
                }
            }
        }
        for (k, mut s) in sums.into_iter().enumerate() {
            s.rad = up(s.rad + tail);
            out[4 * e + k] = s;
        }
    }
    Ok(out)
}

fn index(c: &ThetaChar) -> usize {
    let r = c.reduced();
    (4 * (2 * r.eps[0] + r.eps[1]) + 2 * r.eps_p[0] + r.eps_p[1]) as usize
}

/// Theta constant with integral characteristic at tau; the ball includes the
/// truncation tail, which is below `tol`.
pub fn theta_constant(tau: &PeriodMatrix, ch: &ThetaChar, tol: f64) -> Result<CBall> {
    let (w_max, tail) = lattice_radius(tau.im_lambda_min(), tol)?;
    let p = tau.prec;
    let pi_i4 = pi_ball(p).mul_i_pow(1).ldexp(-2);
    let mut s = CBall::zero(p);
    for w1 in (-w_max..=w_max).filter(|w| (w - ch.eps[0]).rem_euclid(2) == 0) {
        for w2 in (-w_max..=w_max).filter(|w| (w - ch.eps[1]).rem_euclid(2) == 0) {
            let q = tau.t11.mul_i64(w1 * w1).add(&tau.t12.mul_i64(2 * w1 * w2)).add(&tau.t22.mul_i64(w2 * w2));
            let ph = (w1 * ch.eps_p[0] + w2 * ch.eps_p[1]).rem_euclid(4) as u32;
            s = s.add(&pi_i4.mul(&q).exp().mul_i_pow(ph));
        }
    }
    s.rad = up(s.rad + tail);
    Ok(s)
}

/// 2^-12 times the product of the ten even theta constants squared.
pub fn big_theta(tau: &PeriodMatrix, tol: f64) -> Result<CBall> {
    let th = theta_all(tau, tol)?;
    let mut prod = CBall::one(tau.prec);
    for c in ThetaChar::even() {
        prod = prod.mul(&th[index(&c)].sqr());
    }
    Ok(prod.ldexp(-12))
}

/// Rosenhain lambdas as quotients of squared theta constants.
pub fn rosenhain(tau: &PeriodMatrix, tol: f64) -> Result<[CBall; 3]> {
    let th = theta_all(tau, tol)?;
    for c in ThetaChar::even() {
        if th[index(&c)].contains_zero() {
            return Err(Error::DegeneratePoint(format!(
                "theta[{}] vanishes at tau (Humbert divisor)",
                c.label()
            )));
        }
    }
    let t2 = |s: &str| th[index(&ThetaChar::parse(s).unwrap())].sqr();
    let l1 = t2("1100").mul(&t2("1000")).div(&t2("0100").mul(&t2("0000")))?;
    let l2 = t2("1001").mul(&t2("1100")).div(&t2("0001").mul(&t2("0100")))?;
    let l3 = t2("1001").mul(&t2("1000")).div(&t2("0001").mul(&t2("0000")))?;
    Ok([l1, l2, l3])
}

/// (i1, i2, i3) of y^2 = x (x - 1) (x - l1) (x - l2) (x - l3).
pub fn invariants_from_lambdas(l: &[CBall; 3]) -> Result<AbsoluteInvariants<CBall>> {
    let prec = l[0].prec;
    let roots: Vec<Option<CBall>> = vec![
        Some(CBall::zero(prec)),
        Some(CBall::one(prec)),
        Some(l[0].clone()),
        Some(l[1].clone()),
        Some(l[2].clone()),
        None,
    ];
    let one = CBall::one(prec);
    let d2: Vec<Vec<CBall>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| match (&roots[i], &roots[j]) {
                    (Some(a), Some(b)) => a.sub(b).sqr(),
                    (None, None) => CBall::zero(prec),
                    _ => one.clone(),
                })
                .collect()
        })
        .collect();
    let [a, b, c, d] = ic_from_squared_differences(&one, &d2, &CBall::zero(prec), CBall::add, CBall::mul);
    let dinv = d.inv().map_err(|_| Error::DegeneratePoint("discriminant D vanishes".into()))?;
    let a2 = a.sqr();
    Ok(AbsoluteInvariants {
        i1: a2.sqr().mul(&a).mul(&dinv),
        i2: a2.mul(&a).mul(&b).mul(&dinv),
        i3: a2.mul(&c).mul(&dinv),
    })
}

pub fn invariants_from_tau(tau: &PeriodMatrix, tol: f64) -> Result<AbsoluteInvariants<CBall>> {
    invariants_from_lambdas(&rosenhain(tau, tol)?)
}

// ------------------------------------------------------------ genus one

/// theta[eps; eps'](t) for t in the upper half plane.
pub fn theta_genus1(t: &CBall, eps: i64, eps_p: i64, tol: f64) -> Result<CBall> {
    let lambda = t.im.to_f64() - t.rad;
    let (w_max, tail) = lattice_radius(lambda, tol)?;
    let p = t.prec;
    let pi_i4 = pi_ball(p).mul_i_pow(1).ldexp(-2);
    let mut s = CBall::zero(p);
    for w in (-w_max..=w_max).filter(|w| (w - eps).rem_euclid(2) == 0) {
        let ph = (w * eps_p).rem_euclid(4) as u32;
        s = s.add(&pi_i4.mul(&t.mul_i64(w * w)).exp().mul_i_pow(ph));
    }
    // the genus-one tail has at most 2 points per shell, fewer than the 8 m counted
    s.rad = up(s.rad + tail);
    Ok(s)
}

/// Delta(t) = q prod (1 - q^n)^24 with q = exp(2 pi i t).
pub fn delta(t: &CBall, tol: f64) -> Result<CBall> {
    let p = t.prec;
    let q = pi_ball(p).mul_i_pow(1).ldexp(1).mul(t).exp();
    let aq = q.abs_upper();
    if aq >= 1.0 {
        return Err(Error::Invalid("t is not in the upper half plane".into()));
    }
    let mut prod = CBall::one(p);
    let mut qn = q.clone();
    let mut n = 1u32;
    loop {
        prod = prod.mul(&CBall::one(p).sub(&qn));
        let rest = aq.powi(n as i32 + 1);
        // |prod_{m > n} (1 - q^m)^24 - 1| <= exp(24 sum_{m>n} |q|^m / (1 - |q|)) - 1
        let s = 24.0 * rest / ((1.0 - aq) * (1.0 - aq));
        let err = s.exp_m1();
        if err * prod.abs_upper().powi(24) < tol || n > 100_000 {
            let mut d = q.mul(&prod.pow(24));
            d.rad = up(d.rad + up(err * prod.abs_upper().powi(24) * aq));
            return Ok(d);
        }
        qn = qn.mul(&q);
        n += 1;
    }
}

/// prod over the three even genus-one characteristics of theta^exponent, divided by Delta.
pub fn jacobi_ratio(t: &CBall, exponent: u32, tol: f64) -> Result<CBall> {
    let mut prod = CBall::one(t.prec);
    for (e, ep) in [(0, 0), (0, 1), (1, 0)] {
        prod = prod.mul(&theta_genus1(t, e, ep, tol)?.pow(exponent));
    }
    prod.div(&delta(t, tol)?)
}

// ------------------------------------------------------------ class polynomials

/// How to clear denominators before rounding.
#[derive(Clone, Debug)]
pub enum DenominatorBound {
    Fixed(BigInt),
    /// From the coefficient valuation bound of the field at each given prime (all >= 5).
    Auto { field: QuarticCMField, primes: Vec<u64> },
}

impl DenominatorBound {
    /// Denominator for the coefficient at position `a` from the top of h_i.
    pub fn for_coefficient(&self, i: u8, a: usize) -> Result<BigInt> {
        match self {
            DenominatorBound::Fixed(b) => Ok(b.clone()),
            DenominatorBound::Auto { field, primes } => {
                let mut b = BigInt::one();
                for &p in primes {
                    if p < 5 {
                        return Err(Error::Invalid(format!("automatic denominators need primes >= 5, got {p}")));
                    }
                    let e = predict(field, p)?.closure_ramification() as u32;
                    let v = class_poly_coeff_bound(i, a, p, &field.d, &field.trace_r(), e)?.value;
                    b *= num_traits::pow(BigInt::from(p), (-v).floor().max(0.0) as usize);
                }
                Ok(b)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReconstructedPoly {
    /// Coefficients from the top; the leading one is 1.
    pub coeffs: Vec<BigRational>,
    /// Largest |rounded - midpoint| + radius over the coefficients.
    pub max_residual: f64,
}

#[derive(Clone, Debug)]
pub struct ClassPolynomials {
    pub h: [ReconstructedPoly; 3],
}

/// Expand prod (x - v) top-first.
pub fn expand_roots(values: &[CBall], prec: u32) -> Vec<CBall> {
    let mut c = vec![CBall::one(prec)];
    for v in values {
        let mut n = c.clone();
        n.push(CBall::zero(prec));
        for k in 0..c.len() {
            n[k + 1] = n[k + 1].sub(&c[k].mul(v));
        }
        c = n;
    }
    c
}

fn reconstruct(i: u8, coeffs: &[CBall], denom: &DenominatorBound, tol: f64) -> Result<ReconstructedPoly> {
    let mut out = Vec::with_capacity(coeffs.len());
    let mut worst = 0.0f64;
    for (a, c) in coeffs.iter().enumerate() {
        let b = denom.for_coefficient(i, a)?;
        let m = c.mul(&CBall::real(Float::from_bigint(&b), c.prec));
        let n = m.re.round_to_integer();
        let res = up(m.re.sub_integer_exact(&n).to_f64().abs() + m.im.to_f64().abs() + m.rad);
        if !(res < tol) {
            return Err(Error::Reconstruction(format!(
                "h{i}, coefficient {a} from the top: residual {res:.3e} is not below {tol:.1e} \
                 (denominator {b}, value {})",
                m.re.to_sci(20)
            )));
        }
        worst = worst.max(res);
        out.push(BigRational::new(n, b));
    }
    Ok(ReconstructedPoly { coeffs: out, max_residual: worst })
}

/// Class polynomials from already computed invariant values (one triple per CM point).
pub fn class_polynomial_from_values(
    values: &[AbsoluteInvariants<CBall>],
    denom: &DenominatorBound,
    tol: f64,
) -> Result<ClassPolynomials> {
    if values.is_empty() {
        return Err(Error::Invalid("no CM points given".into()));
    }
    let prec = values[0].i1.prec;
    let pick = |f: fn(&AbsoluteInvariants<CBall>) -> &CBall| values.iter().map(f).cloned().collect::<Vec<_>>();
    let h1 = reconstruct(1, &expand_roots(&pick(|v| &v.i1), prec), denom, tol)?;
    let h2 = reconstruct(2, &expand_roots(&pick(|v| &v.i2), prec), denom, tol)?;
    let h3 = reconstruct(3, &expand_roots(&pick(|v| &v.i3), prec), denom, tol)?;
    Ok(ClassPolynomials { h: [h1, h2, h3] })
}

pub fn class_polynomial(taus: &[PeriodMatrix], denom: &DenominatorBound, tol: f64) -> Result<ClassPolynomials> {
    let vals: Vec<_> = taus.iter().map(|t| invariants_from_tau(t, tol.min(1e-20))).collect::<Result<_>>()?;
    class_polynomial_from_values(&vals, denom, tol)
}

// ------------------------------------------------------------ tau files

#[derive(Deserialize)]
struct Entry {
    re: String,
    im: String,
}

#[derive(Deserialize)]
struct TauJson {
    t11: Entry,
    t12: Entry,
    t22: Entry,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TauFile {
    One(TauJson),
    Many(Vec<TauJson>),
    Wrapped { taus: Vec<TauJson> },
}

/// Parse `{"t11": {"re": "..", "im": ".."}, "t12": .., "t22": ..}`, a list of such
/// objects, or `{"taus": [..]}`.
pub fn parse_tau_json(text: &str, digits: u32) -> Result<Vec<PeriodMatrix>> {
    let f: TauFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("tau file: {e}")))?;
    let list = match f {
        TauFile::One(t) => vec![t],
        TauFile::Many(v) | TauFile::Wrapped { taus: v } => v,
    };
    list.iter()
        .map(|t| {
            PeriodMatrix::parse(
                [(&t.t11.re, &t.t11.im), (&t.t12.re, &t.t12.im), (&t.t22.re, &t.t22.im)],
                digits,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristics() {
        assert_eq!(ThetaChar::even().len(), 10);
        assert_eq!(ThetaChar::odd().len(), 6);
        assert!(ThetaChar::parse("1111").unwrap().is_even());
        assert!(!ThetaChar::parse("1010").unwrap().is_even());
        assert!(ThetaChar::parse("110").is_err());
    }

    #[test]
    fn theta_at_large_imaginary_part() {
        let t = PeriodMatrix::from_f64([(0.0, 10.0), (0.0, 0.0), (0.0, 10.0)], 20).unwrap();
        let v = theta_constant(&t, &ThetaChar::parse("0000").unwrap(), 1e-25).unwrap();
        let (re, im) = v.to_c64();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-20);
    }

    #[test]
    fn radius_cap() {
        let t = PeriodMatrix::from_f64([(0.0, 1e-6), (0.0, 0.0), (0.0, 1.0)], 20).unwrap();
        assert!(matches!(theta_constant(&t, &ThetaChar::parse("0000").unwrap(), 1e-25), Err(Error::PrecisionInfeasible(_))));
        assert!(PeriodMatrix::from_f64([(0.0, 1.0), (0.0, 2.0), (0.0, 1.0)], 20).is_err());
    }

    #[test]
    fn expansion() {
        let p = 100;
        let v = [CBall::from_i64(2, p), CBall::from_i64(-3, p)];
        let c: Vec<f64> = expand_roots(&v, p).iter().map(|b| b.to_c64().0).collect();
        assert_eq!(c, vec![1.0, 1.0, -6.0]);
    }
}
