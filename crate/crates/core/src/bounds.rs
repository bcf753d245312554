//! Valuation bounds for denominators of Igusa invariants and class polynomials,
//! index bounds for deformations, and a verifier for transcribed class polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::cmfield::QuarticCMField;
use crate::error::{Error, Result};
use crate::fixtures::FixtureStore;
use crate::galois_tables::predict;
use crate::ntheory::{factor_integer, is_prime_u64, val_p};

/// Which branch of the bound applies: ramification index at most p - 1, or above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SmallRam,
    HighRam,
}

impl Regime {
    fn of(e: u64, p: u64) -> Regime {
        if e < p {
            Regime::SmallRam
        } else {
            Regime::HighRam
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub k: u32,
    pub e: u32,
    pub p: u64,
    pub d: BigInt,
    pub trace_r: BigInt,
}

/// A real bound, rounded so that it is never stronger than the exact value:
/// lower bounds are rounded down, magnitude bounds up.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RationalBound {
    pub value: f64,
    pub regime: Regime,
    pub rounded_down: bool,
}

/// d Tr(r)^2 / 2.
pub fn bound_argument(d: &BigInt, trace_r: &BigInt) -> BigRational {
    BigRational::new(d * trace_r * trace_r, BigInt::from(2))
}

/// An upper bound for log_p(d Tr(r)^2 / 2). The f64 quotient carries a few ulps of
/// error; the margin of 2^-40 (relative and absolute) dominates it.
pub fn log_p_upper(p: u64, d: &BigInt, trace_r: &BigInt) -> Result<f64> {
    if p < 2 || !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not a prime")));
    }
    let x = bound_argument(d, trace_r);
    if x <= BigRational::one() {
        return Err(Error::Invalid("d Tr(r)^2 / 2 must exceed 1".into()));
    }
    let ln = |q: &BigRational| -> f64 {
        // ln of a large rational without overflowing f64
        let (n, dd) = (q.numer(), q.denom());
        let shift = (n.bits() as i64 - 900).max(0);
        let nf = (n >> shift as usize).to_f64().unwrap_or(f64::MAX);
        nf.ln() + shift as f64 * std::f64::consts::LN_2 - dd.to_f64().unwrap_or(f64::MAX).ln()
    };
    let v = ln(&x) / (p as f64).ln();
    let eps = 2f64.powi(-40);
    Ok(v + v.abs() * eps + eps)
}

fn branch(regime: Regime, l: f64) -> f64 {
    match regime {
        Regime::SmallRam => l + 1.0,
        Regime::HighRam => 8.0 * l + 2.0,
    }
}

/// Lower bound for val_p of the denominator of an invariant of weight 10k
/// (a power of the theta product) at a CM point.
pub fn theta_valuation_bound(bp: &BoundParams) -> Result<RationalBound> {
    if bp.k == 0 || bp.e == 0 {
        return Err(Error::Invalid("k and e must be positive".into()));
    }
    let l = log_p_upper(bp.p, &bp.d, &bp.trace_r)?;
    let regime = Regime::of(bp.e as u64, bp.p);
    let value = -4.0 * bp.k as f64 * bp.e as f64 * branch(regime, l);
    Ok(RationalBound { value, regime, rounded_down: true })
}

/// k(i) for the absolute invariants i1, i2, i3.
pub fn invariant_weight(i: u8) -> Result<u32> {
    match i {
        1 => Ok(6),
        2 | 3 => Ok(4),
        _ => Err(Error::Invalid(format!("no invariant i{i}"))),
    }
}

/// Lower bound for the p-adic valuation of the coefficient of x^(h - a) in the class
/// polynomial h_i. The regime is chosen by e; e itself does not scale the bound.
pub fn class_poly_coeff_bound(i: u8, a: usize, p: u64, d: &BigInt, trace_r: &BigInt, e: u32) -> Result<RationalBound> {
    let k = invariant_weight(i)?;
    let regime = Regime::of(e as u64, p);
    if a == 0 {
        return Ok(RationalBound { value: 0.0, regime, rounded_down: true });
    }
    let l = log_p_upper(p, d, trace_r)?;
    let value = -4.0 * a as f64 * k as f64 * branch(regime, l);
    Ok(RationalBound { value, regime, rounded_down: true })
}

/// Bound on |val_p| of a class invariant, with e* the ramification index in the
/// reflex field. The regime is chosen by e* as well.
pub fn class_invariant_bound(e_star: u32, p: u64, d: &BigInt, trace_r: &BigInt) -> Result<RationalBound> {
    if e_star == 0 {
        return Err(Error::Invalid("e* must be positive".into()));
    }
    let l = log_p_upper(p, d, trace_r)?;
    let regime = Regime::of(e_star as u64, p);
    Ok(RationalBound { value: 8.0 * e_star as f64 * branch(regime, l), regime, rounded_down: false })
}

/// Exponents of p bounding the endomorphism-ring index of a deformation to V/m^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationBounds {
    #[serde(serialize_with = "ser_ratio")]
    pub lower_exponent: Rational64,
    pub upper_exponent: u64,
    pub regime: Regime,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i64(*r.numer())
    } else {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn deformation_index_bounds(p: u64, e_v: u64, n: u64) -> Result<DeformationBounds> {
    if p < 2 || !is_prime_u64(p) || e_v == 0 || n == 0 {
        return Err(Error::Invalid("need a prime p and positive e_V, n".into()));
    }
    let c = n.div_ceil(e_v) as i64;
    // the high-ramification estimate holds for every e_V
    let high = Rational64::new(c - 2, 4).max(Rational64::zero());
    let regime = Regime::of(e_v, p);
    let lower_exponent = match regime {
        Regime::SmallRam => Rational64::from_integer(2 * (c - 1)).max(high),
        Regime::HighRam => high,
    };
    Ok(DeformationBounds { lower_exponent, upper_exponent: 3 * (n - 1), regime })
}

/// Exponent (r - 1) t_R ceil((n_R - 1)/(p - 1)) of the general estimate for an order
/// of rank r; r = 4 for quaternion orders.
pub fn basic_estimate_exponent(r: u64, t_r: u64, n_r: u64, p: u64) -> Result<u64> {
    if r == 0 || n_r == 0 || p < 2 {
        return Err(Error::Invalid("need r, n_R >= 1 and p >= 2".into()));
    }
    Ok((r - 1) * t_r * (n_r - 1).div_ceil(p - 1))
}

// ------------------------------------------------------------ fixtures

pub const FIXTURE_IDS: [&str; 2] = ["cyclic17", "dihedral11"];

/// Class polynomials h_1, h_2, h_3 of one CM field, coefficients listed from the top.
#[derive(Clone, Debug)]
pub struct ClassPolyFixture {
    pub id: String,
    pub field: QuarticCMField,
    pub polys: Vec<Vec<BigRational>>,
}

pub fn load_fixture(id: &str) -> Result<ClassPolyFixture> {
    load_fixture_from(&FixtureStore::Embedded, id)
}

pub fn load_fixture_from(store: &FixtureStore, id: &str) -> Result<ClassPolyFixture> {
    if !FIXTURE_IDS.contains(&id) {
        return Err(Error::Fixture(format!("unknown fixture {id}; known: {}", FIXTURE_IDS.join(", "))));
    }
    parse_fixture(id, &store.text(id)?)
}

/// "[-]b^e*b^e.../b^e*..." or a plain integer.
fn parse_product(s: &str) -> Result<BigRational> {
    let bad = || Error::Fixture(format!("bad coefficient {s}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let prod = |t: &str| -> Result<BigInt> {
        let mut r = BigInt::one();
        for f in t.split('*') {
            let (b, e) = f.split_once('^').unwrap_or((f, "1"));
            let b: BigInt = b.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            r *= num_traits::pow(b, e as usize);
        }
        Ok(r)
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (prod(n)?, prod(d)?),
        None => (prod(body)?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(bad());
    }
    let q = BigRational::new(n, d);
    Ok(if neg { -q } else { q })
}

/// Line format: `field d alpha beta`, an optional `normalize` (divide by the leading
/// coefficient), then `h<i> <coefficient>` lines from the top coefficient down.
pub fn parse_fixture(id: &str, text: &str) -> Result<ClassPolyFixture> {
    let mut field = None;
    let mut normalize = false;
    let mut polys: Vec<Vec<BigRational>> = vec![Vec::new(); 3];
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["field", d, a, b] => {
                let n = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Fixture(format!("bad field line {line}")));
                field = Some(QuarticCMField::new(n(d)?, n(a)?, n(b)?)?);
            }
            ["normalize"] => normalize = true,
            [h, c] if h.len() == 2 && h.starts_with('h') => {
                let i: usize = h[1..].parse().map_err(|_| Error::Fixture(format!("bad label {h}")))?;
                if !(1..=3).contains(&i) {
                    return Err(Error::Fixture(format!("bad label {h}")));
                }
                polys[i - 1].push(parse_product(c)?);
            }
            _ => return Err(Error::Fixture(format!("unrecognised line {line}"))),
        }
    }
    let field = field.ok_or_else(|| Error::Fixture("missing field line".into()))?;
    for p in polys.iter_mut() {
        let lead = p.first().cloned().ok_or_else(|| Error::Fixture("empty polynomial".into()))?;
        if normalize {
            for c in p.iter_mut() {
                *c = &*c / &lead;
            }
        } else if !lead.is_one() {
            return Err(Error::Fixture("polynomial is not monic".into()));
        }
    }
    Ok(ClassPolyFixture { id: id.to_string(), field, polys })
}

impl ClassPolyFixture {
    /// Primes dividing some coefficient denominator.
    pub fn denominator_primes(&self) -> Result<Vec<u64>> {
        let mut den = BigInt::one();
        for c in self.polys.iter().flatten() {
            den = den.lcm(c.denom());
        }
        let f = factor_integer(&den).ok_or_else(|| Error::Internal("could not factor denominators".into()))?;
        Ok(f.into_iter().filter_map(|(q, _)| q.to_u64()).collect())
    }
}

pub fn val_p_rational(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(val_p(q.numer(), p) as i64 - val_p(q.denom(), p) as i64)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientCheck {
    /// 1, 2, 3 for h_1, h_2, h_3.
    pub poly: u8,
    /// Position from the top; the leading coefficient is 0.
    pub index: usize,
    /// None for a zero coefficient.
    pub valuation: Option<i64>,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub p: u64,
    /// Ramification index of p in the normal closure.
    pub e: u32,
    pub regime: Regime,
    pub in_denominator: bool,
    pub checks: Vec<CoefficientCheck>,
    /// Whether the predicted rows include a superspecial one; only asked for
    /// primes in a denominator.
    pub superspecial_predicted: Option<bool>,
    pub passed: bool,
}

pub fn verify_fixture(id: &str, p: u64) -> Result<FixtureReport> {
    verify_fixture_with(&FixtureStore::Embedded, id, p)
}

pub fn verify_fixture_with(store: &FixtureStore, id: &str, p: u64) -> Result<FixtureReport> {
    if p < 5 || !is_prime_u64(p) {
        return Err(Error::Invalid(format!("fixture checks need a prime p >= 5, got {p}")));
    }
    let fx = load_fixture_from(store, id)?;
    let k = &fx.field;
    let pred = predict(k, p)?;
    let e = pred.closure_ramification() as u32;
    let tr = k.trace_r();
    let mut checks = Vec::new();
    for (i, poly) in fx.polys.iter().enumerate() {
        for (a, c) in poly.iter().enumerate() {
            let b = class_poly_coeff_bound(i as u8 + 1, a, p, &k.d, &tr, e)?;
            let v = val_p_rational(c, p);
            let ok = v.is_none_or(|v| v as f64 >= b.value);
            checks.push(CoefficientCheck { poly: i as u8 + 1, index: a, valuation: v, bound: b.value, ok });
        }
    }
    let in_denominator = fx.polys.iter().flatten().any(|c| c.denom() % p == BigInt::zero());
    let superspecial_predicted = in_denominator.then(|| pred.has_superspecial());
    let passed = checks.iter().all(|c| c.ok) && superspecial_predicted != Some(false);
    Ok(FixtureReport {
        fixture: fx.id,
        p,
        e,
        regime: Regime::of(e as u64, p),
        in_denominator,
        checks,
        superspecial_predicted,
        passed,
    })
}
