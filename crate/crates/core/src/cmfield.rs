//! Primitive and biquadratic quartic CM fields K = Q(sqrt d)(sqrt r),
//! r = alpha + beta sqrt d totally negative.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntheory::{factor_integer, is_square};
use crate::order::{field_discriminant, splitting_shape};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuarticCMField {
    pub d: BigInt,
    pub alpha: BigInt,
    pub beta: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GaloisType {
    Cyclic,
    Biquadratic,
    Dihedral,
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GaloisType::Cyclic => "cyclic",
            GaloisType::Biquadratic => "biquadratic",
            GaloisType::Dihedral => "dihedral",
        };
        f.write_str(s)
    }
}

/// Primes above p, each as (e, f), sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SplittingShape {
    pub primes: Vec<(usize, usize)>,
}

impl SplittingShape {
    pub fn new(mut primes: Vec<(usize, usize)>) -> Self {
        primes.sort();
        SplittingShape { primes }
    }

    pub fn degree(&self) -> usize {
        self.primes.iter().map(|(e, f)| e * f).sum()
    }
}

impl fmt::Display for SplittingShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|(e, g)| format!("({e},{g})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    let fac = factor_integer(n).ok_or_else(|| Error::Internal("could not factor".into()))?;
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in fac {
        if e % 2 == 1 {
            out *= BigInt::from(p);
        }
    }
    Ok(out)
}

/// Discriminant of Q(sqrt m).
pub fn quadratic_discriminant(m: &BigInt) -> Result<BigInt> {
    let s = squarefree_part(m)?;
    let r = s.mod_floor(&BigInt::from(4));
    Ok(if r.is_one() { s } else { s * 4 })
}

/// Integral model of Q(sqrt m) for squarefree m, lowest degree first.
pub fn quadratic_minpoly(m: &BigInt) -> Vec<BigInt> {
    if m.mod_floor(&BigInt::from(4)).is_one() {
        let c: BigInt = -(m - BigInt::one()) / 4;
        vec![c, BigInt::from(-1), BigInt::one()]
    } else {
        vec![-m.clone(), BigInt::zero(), BigInt::one()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reflex {
    /// Cyclic: K itself. Dihedral: K* = Q(sqrt N_r)(sqrt(2 alpha + 2 sqrt N_r)).
    Quartic(QuarticCMField),
    /// Imaginary quadratic constituents Q(sqrt(2(alpha + s))), Q(sqrt(2(alpha - s)))
    /// with s^2 = N_r, as discriminants; `marked` is K1 for the type {1, alpha_1}.
    Biquadratic { discriminants: [BigInt; 2], marked: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeProfile {
    pub k: SplittingShape,
    pub k_plus: SplittingShape,
    pub k_star: Option<SplittingShape>,
    pub k_star_plus: Option<SplittingShape>,
    /// Biquadratic only: shapes in the marked constituent K1 and the other one.
    pub k1: Option<SplittingShape>,
    pub k2: Option<SplittingShape>,
}

impl QuarticCMField {
    pub fn new(d: impl Into<BigInt>, alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Result<Self> {
        let (d, alpha, beta) = (d.into(), alpha.into(), beta.into());
        if d < BigInt::from(2) || squarefree_part(&d)? != d {
            return Err(Error::Invalid("d must be a squarefree integer > 1".into()));
        }
        if beta.is_zero() {
            return Err(Error::Invalid("beta = 0 gives (x^2 - alpha)^2, not a quartic field".into()));
        }
        if !alpha.is_negative() || &alpha * &alpha <= &beta * &beta * &d {
            return Err(Error::Invalid("r = alpha + beta sqrt d must be totally negative".into()));
        }
        Ok(QuarticCMField { d, alpha, beta })
    }

    /// alpha^2 - beta^2 d.
    pub fn norm_r(&self) -> BigInt {
        &self.alpha * &self.alpha - &self.beta * &self.beta * &self.d
    }

    pub fn trace_r(&self) -> BigInt {
        &self.alpha * 2
    }

    /// x^4 - 2 alpha x^2 + N_r, lowest degree first.
    pub fn minpoly(&self) -> Vec<BigInt> {
        vec![self.norm_r(), BigInt::zero(), -self.trace_r(), BigInt::zero(), BigInt::one()]
    }

    pub fn real_minpoly(&self) -> Vec<BigInt> {
        quadratic_minpoly(&self.d)
    }

    pub fn galois_type(&self) -> GaloisType {
        let n = self.norm_r();
        if is_square(&n) {
            GaloisType::Biquadratic
        } else if is_square(&(&n * &self.d)) {
            GaloisType::Cyclic
        } else {
            GaloisType::Dihedral
        }
    }

    pub fn reflex_field(&self) -> Result<Reflex> {
        match self.galois_type() {
            GaloisType::Cyclic => Ok(Reflex::Quartic(self.clone())),
            GaloisType::Dihedral => {
                let n = self.norm_r();
                let ds = squarefree_part(&n)?;
                let t = (&n / &ds).sqrt();
                Ok(Reflex::Quartic(QuarticCMField::new(ds, &self.alpha * 2, t * 2)?))
            }
            GaloisType::Biquadratic => {
                let s = self.norm_r().sqrt();
                let a = quadratic_discriminant(&((&self.alpha + &s) * 2))?;
                let b = quadratic_discriminant(&((&self.alpha - &s) * 2))?;
                Ok(Reflex::Biquadratic { discriminants: [a, b], marked: 0 })
            }
        }
    }

    pub fn discriminant(&self) -> Result<BigInt> {
        field_discriminant(&self.minpoly())
    }

    pub fn shape_profile(&self, p: u64) -> Result<ShapeProfile> {
        let k = SplittingShape::new(splitting_shape(&self.minpoly(), p)?);
        let k_plus = SplittingShape::new(splitting_shape(&self.real_minpoly(), p)?);
        let mut prof = ShapeProfile { k, k_plus, k_star: None, k_star_plus: None, k1: None, k2: None };
        match self.reflex_field()? {
            Reflex::Quartic(ks) if self.galois_type() == GaloisType::Dihedral => {
                prof.k_star = Some(SplittingShape::new(splitting_shape(&ks.minpoly(), p)?));
                prof.k_star_plus = Some(SplittingShape::new(splitting_shape(&ks.real_minpoly(), p)?));
            }
            Reflex::Biquadratic { discriminants, marked } => {
                let shape = |i: usize| -> Result<SplittingShape> {
                    let m = squarefree_part(&discriminants[i])?;
                    Ok(SplittingShape::new(splitting_shape(&quadratic_minpoly(&m), p)?))
                };
                prof.k1 = Some(shape(marked)?);
                prof.k2 = Some(shape(1 - marked)?);
            }
            _ => {}
        }
        Ok(prof)
    }

    /// d Tr(r)^2 / 2 as a float, the quantity inside the logarithms of the bounds.
    pub fn bound_quantity(&self) -> f64 {
        let t = self.trace_r();
        let q: BigInt = &self.d * &t * &t / 2;
        q.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for QuarticCMField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(d={}, alpha={}, beta={})", self.d, self.alpha, self.beta)
    }
}

pub fn format_poly(c: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let coef = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
        let mon = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let sign = if a.is_negative() { "-" } else { "+" };
        terms.push((sign, format!("{coef}{mon}")));
    }
    let mut s = String::new();
    for (k, (sign, t)) in terms.iter().enumerate() {
        if k == 0 {
            if *sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(t);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
