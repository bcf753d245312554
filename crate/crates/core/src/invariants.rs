//! Igusa-Clebsch invariants of binary sextics from their roots, the J and
//! gamma coordinates, absolute invariants and the conversions between them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::splitting_roots;
use crate::field::{Fq, FqCtx, Scalar};
use crate::ntheory::is_prime_u64;
use crate::poly::Poly;

/// y^2 = u0 x^6 + u1 x^5 + ... + u6, stored as `[u0, ..., u6]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticModel<T: Scalar> {
    u: [T; 7],
    allow_singular: bool,
}

impl<T: Scalar> HyperellipticModel<T> {
    /// Seven coefficients u0..u6, or six for a quintic (u0 = 0).
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        Self::build(coeffs, false)
    }

    /// Same, but skip the squarefree check; invariants then have D = 0.
    pub fn new_singular(coeffs: Vec<T>) -> Result<Self> {
        Self::build(coeffs, true)
    }

    fn build(mut coeffs: Vec<T>, allow_singular: bool) -> Result<Self> {
        if coeffs.len() == 6 {
            coeffs.insert(0, coeffs[0].zero_like());
        }
        if coeffs.len() != 7 {
            return Err(Error::Invalid("expected 7 sextic coefficients u0..u6 (or 6 for a quintic)".into()));
        }
        if coeffs[0].characteristic() == 2 {
            return Err(Error::Unsupported("characteristic 2".into()));
        }
        if coeffs[0].is_zero() && coeffs[1].is_zero() {
            return Err(Error::Invalid("degree must be 5 or 6".into()));
        }
        let u: [T; 7] = coeffs.try_into().unwrap();
        let m = HyperellipticModel { u, allow_singular };
        if !allow_singular {
            let f = m.poly();
            if f.gcd(&f.derivative()).degree() != Some(0) {
                return Err(Error::Invalid("polynomial is not squarefree (singular curve)".into()));
            }
        }
        Ok(m)
    }

    pub fn coeffs(&self) -> &[T; 7] {
        &self.u
    }

    pub fn allows_singular(&self) -> bool {
        self.allow_singular
    }

    /// f(x) as a polynomial, lowest degree first.
    pub fn poly(&self) -> Poly<T> {
        let c: Vec<T> = self.u.iter().rev().cloned().collect();
        Poly::new(&self.u[0], c)
    }

    pub fn degree(&self) -> usize {
        if self.u[0].is_zero() {
            5
        } else {
            6
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IgusaClebsch<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JVector<T> {
    pub j2: T,
    pub j4: T,
    pub j6: T,
    pub j8: T,
    pub j10: T,
}

/// gamma_1 .. gamma_10 at indices 0..9.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaVector<T> {
    pub g: [T; 10],
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbsoluteInvariants<T> {
    pub i1: T,
    pub i2: T,
    pub i3: T,
}

impl<T: Scalar> IgusaClebsch<T> {
    pub fn to_vec(&self) -> Vec<T> {
        vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    /// (r^2 A, r^4 B, r^6 C, r^10 D).
    pub fn scaled(&self, r: &T) -> Self {
        let r2 = r.times(r);
        IgusaClebsch {
            a: self.a.times(&r2),
            b: self.b.times(&r2.pow_u64(2)),
            c: self.c.times(&r2.pow_u64(3)),
            d: self.d.times(&r2.pow_u64(5)),
        }
    }
}

impl<T: Scalar> JVector<T> {
    pub fn to_vec(&self) -> Vec<T> {
        vec![self.j2.clone(), self.j4.clone(), self.j6.clone(), self.j8.clone(), self.j10.clone()]
    }
}

impl<T: Scalar> AbsoluteInvariants<T> {
    pub fn to_vec(&self) -> Vec<T> {
        vec![self.i1.clone(), self.i2.clone(), self.i3.clone()]
    }
}

// ------------------------------------------------------------ combinatorics

/// The 15 perfect matchings of six points.
pub fn matchings() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for a in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != a).collect();
        let (b, others) = (rest[0], &rest[1..]);
        for &c in others {
            let last: Vec<usize> = others.iter().copied().filter(|&x| x != c).collect();
            out.push([(0, a), (b, c), (last[0], last[1])]);
        }
    }
    out
}

/// The 10 splittings of six points into two triples.
pub fn triple_splits() -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for i in 1..6 {
        for j in i + 1..6 {
            let t1 = [0, i, j];
            let t2: Vec<usize> = (1..6).filter(|&x| x != i && x != j).collect();
            out.push((t1, [t2[0], t2[1], t2[2]]));
        }
    }
    out
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn tri<T: Clone>(d2: &[Vec<T>], t: &[usize; 3], mul: &impl Fn(&T, &T) -> T) -> T {
    mul(&mul(&d2[t[0]][t[1]], &d2[t[1]][t[2]]), &d2[t[2]][t[0]])
}

/// Evaluate (A,B,C,D) from the table of squared root differences and
/// the leading coefficient, with ring operations passed in.
pub fn ic_from_squared_differences<T: Clone>(
    lead: &T,
    d2: &[Vec<T>],
    zero: &T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> [T; 4] {
    let l2 = mul(lead, lead);
    let l4 = mul(&l2, &l2);
    let l6 = mul(&l4, &l2);
    let l10 = mul(&l6, &l4);
    let mut a = zero.clone();
    for m in matchings() {
        let t = mul(&mul(&d2[m[0].0][m[0].1], &d2[m[1].0][m[1].1]), &d2[m[2].0][m[2].1]);
        a = add(&a, &t);
    }
    let mut b = zero.clone();
    let mut c = zero.clone();
    for (t1, t2) in triple_splits() {
        let bt = mul(&tri(d2, &t1, &mul), &tri(d2, &t2, &mul));
        b = add(&b, &bt);
        for p in PERMS3 {
            let x = mul(&mul(&d2[t1[0]][t2[p[0]]], &d2[t1[1]][t2[p[1]]]), &d2[t1[2]][t2[p[2]]]);
            c = add(&c, &mul(&bt, &x));
        }
    }
    let mut prod = l10.clone();
    for i in 0..6 {
        for j in i + 1..6 {
            prod = mul(&prod, &d2[i][j]);
        }
    }
    [mul(&l2, &a), mul(&l4, &b), mul(&l6, &c), prod]
}

/// (A,B,C,D) of the binary form lead * prod (x - r_i z), where `None` stands
/// for a root at infinity.
pub fn ic_from_roots<T: Scalar>(lead: &T, roots: &[Option<T>]) -> [T; 4] {
    assert_eq!(roots.len(), 6);
    let z = lead.zero_like();
    let one = lead.one_like();
    let d2: Vec<Vec<T>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| match (&roots[i], &roots[j]) {
                    (Some(a), Some(b)) => {
                        let d = a.minus(b);
                        d.times(&d)
                    }
                    (None, None) => z.clone(),
                    _ => one.clone(),
                })
                .collect()
        })
        .collect();
    ic_from_squared_differences(lead, &d2, &z, |a, b| a.plus(b), |a, b| a.times(b))
}

/// Invariants over F_q: roots in the splitting field, result pulled back.
fn ic_finite(u: &[Fq; 7]) -> Result<[Fq; 4]> {
    let ctx = u[0].ctx().clone();
    if ctx.p() == 2 {
        return Err(Error::Unsupported("characteristic 2".into()));
    }
    let Some(m) = u.iter().position(|x| !x.is_zero()) else {
        let z = u[0].zero_like();
        return Ok([z.clone(), z.clone(), z.clone(), z]);
    };
    let lead = u[m].clone();
    let finite_deg = 6 - m;
    let zero = u[0].zero_like();
    if finite_deg == 0 {
        return Ok([zero.clone(), zero.clone(), zero.clone(), zero]);
    }
    let f = Poly::new(&zero, (0..=finite_deg).map(|i| u[6 - i].clone()).collect());
    let split = splitting_roots(&f)?;
    let emb = &split.embedding;
    let mut roots: Vec<Option<Fq>> = split.roots.iter().cloned().map(Some).collect();
    roots.extend(std::iter::repeat_n(None, m));
    let vals = ic_from_roots(&emb.embed(&lead), &roots);
    let mut out = Vec::with_capacity(4);
    for v in vals {
        out.push(
            emb.pull_back(&v)
                .ok_or_else(|| Error::Internal("invariant not in the base field".into()))?,
        );
    }
    Ok(out.try_into().unwrap())
}

/// Weight (degree in the coefficients) of A, B, C, D.
const DEGREES: [u32; 4] = [2, 4, 6, 10];
/// Terms and squared-difference factors in each sum.
const TERMS: [u64; 4] = [15, 10, 60, 1];
const FACTORS: [u32; 4] = [6, 12, 18, 30];

fn crt_symmetric(r: &BigInt, m: &BigInt) -> BigInt {
    let half: BigInt = m >> 1;
    if r > &half {
        r - m
    } else {
        r.clone()
    }
}

/// Invariants over Q: exact multi-modular evaluation. The integer invariants of
/// the cleared sextic are bounded by count * 2^factors * H^degree with H the
/// l1 norm of the coefficients (Mahler measure bound), and recovered by CRT.
fn ic_rational(u: &[BigRational; 7]) -> Result<[BigRational; 4]> {
    let l = u.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = u.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let h: BigInt = ints.iter().map(|x| x.abs()).sum();
    let bound = (0..4)
        .map(|k| BigInt::from(TERMS[k]) * (BigInt::one() << FACTORS[k] as usize) * h.pow(DEGREES[k]))
        .max()
        .unwrap();
    let target: BigInt = bound * 2 + 1;
    let mut modulus = BigInt::one();
    let mut acc = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let mut p: u64 = (1 << 31) - 1;
    while modulus <= target {
        while !is_prime_u64(p) {
            p -= 2;
        }
        let ctx = FqCtx::prime(p)?;
        let res: Vec<Fq> = ints.iter().map(|x| Fq::from_bigint(&ctx, x)).collect();
        if res.iter().all(|x| x.is_zero()) {
            p -= 2;
            continue;
        }
        let vals = ic_finite(&res.try_into().unwrap())?;
        let pb = BigInt::from(p);
        let minv = {
            let mm = Fq::from_bigint(&ctx, &modulus);
            BigInt::from(mm.inverse().unwrap().coeffs()[0])
        };
        for k in 0..4 {
            let b = BigInt::from(vals[k].coeffs()[0]);
            let diff = ((&b - &acc[k]) % &pb + &pb) % &pb;
            let t = (diff * &minv) % &pb;
            acc[k] = &acc[k] + &modulus * t;
        }
        modulus *= &pb;
        p -= 2;
    }
    let mut out = Vec::new();
    for k in 0..4 {
        let v = crt_symmetric(&acc[k], &modulus);
        out.push(BigRational::new(v, l.pow(DEGREES[k])));
    }
    Ok(out.try_into().unwrap())
}

/// Base fields on which Igusa-Clebsch invariants can be evaluated.
pub trait InvariantField: Scalar {
    fn ic_raw(u: &[Self; 7]) -> Result<[Self; 4]>;
}

impl InvariantField for Fq {
    fn ic_raw(u: &[Fq; 7]) -> Result<[Fq; 4]> {
        ic_finite(u)
    }
}

impl InvariantField for BigRational {
    fn ic_raw(u: &[BigRational; 7]) -> Result<[BigRational; 4]> {
        ic_rational(u)
    }
}

pub fn igusa_clebsch<T: InvariantField>(model: &HyperellipticModel<T>) -> Result<IgusaClebsch<T>> {
    let [a, b, c, d] = T::ic_raw(&model.u)?;
    Ok(IgusaClebsch { a, b, c, d })
}

fn need_char_not_2_3<T: Scalar>(x: &T) -> Result<()> {
    match x.characteristic() {
        2 | 3 => Err(Error::Unsupported("characteristic 2 or 3".into())),
        _ => Ok(()),
    }
}

fn frac<T: Scalar>(x: &T, num: i64, den: i64) -> T {
    x.times(&x.from_int_like(num)).times(&x.from_int_like(den).inverse().expect("unit denominator"))
}

pub fn j_from_igusa_clebsch<T: Scalar>(ic: &IgusaClebsch<T>) -> Result<JVector<T>> {
    need_char_not_2_3(&ic.a)?;
    let j2 = frac(&ic.a, 1, 8);
    let j4 = frac(&frac(&j2.times(&j2), 4, 1).minus(&ic.b), 1, 96);
    let j6 = frac(
        &frac(&j2.pow_u64(3), 8, 1).minus(&frac(&j2.times(&j4), 160, 1)).minus(&ic.c),
        1,
        576,
    );
    let j8 = frac(&j2.times(&j6).minus(&j4.times(&j4)), 1, 4);
    let j10 = frac(&ic.d, 1, 4096);
    Ok(JVector { j2, j4, j6, j8, j10 })
}

pub fn gamma_from_j<T: Scalar>(j: &JVector<T>) -> Result<GammaVector<T>> {
    let inv = j.j10.inverse().ok_or(Error::Degenerate)?;
    let inv2 = inv.times(&inv);
    let inv3 = inv2.times(&inv);
    let inv4 = inv3.times(&inv);
    let (j2, j4, j6, j8) = (&j.j2, &j.j4, &j.j6, &j.j8);
    let g = [
        j2.pow_u64(5).times(&inv),
        j2.pow_u64(3).times(j4).times(&inv),
        j2.pow_u64(2).times(j6).times(&inv),
        j2.times(j8).times(&inv),
        j4.times(j6).times(&inv),
        j4.times(&j8.pow_u64(2)).times(&inv2),
        j6.pow_u64(2).times(j8).times(&inv2),
        j6.pow_u64(5).times(&inv3),
        j6.times(&j8.pow_u64(3)).times(&inv3),
        j8.pow_u64(5).times(&inv4),
    ];
    Ok(GammaVector { g })
}

/// The eight generators over Z[1/2]: J2^5/J10, J2^3J4/J10, J2J4^2/J10,
/// J2^2J6/J10, J4J6/J10, J2J6^3/J10^2, J4^5/J10^2, J6^5/J10^3.
pub fn half_integral_generators<T: Scalar>(j: &JVector<T>) -> Result<[T; 8]> {
    let inv = j.j10.inverse().ok_or(Error::Degenerate)?;
    let inv2 = inv.times(&inv);
    let inv3 = inv2.times(&inv);
    let (j2, j4, j6) = (&j.j2, &j.j4, &j.j6);
    Ok([
        j2.pow_u64(5).times(&inv),
        j2.pow_u64(3).times(j4).times(&inv),
        j2.times(&j4.pow_u64(2)).times(&inv),
        j2.pow_u64(2).times(j6).times(&inv),
        j4.times(j6).times(&inv),
        j2.times(&j6.pow_u64(3)).times(&inv2),
        j4.pow_u64(5).times(&inv2),
        j6.pow_u64(5).times(&inv3),
    ])
}

pub fn absolute_from_igusa_clebsch<T: Scalar>(ic: &IgusaClebsch<T>) -> Result<AbsoluteInvariants<T>> {
    let inv = ic.d.inverse().ok_or(Error::Degenerate)?;
    let a2 = ic.a.times(&ic.a);
    Ok(AbsoluteInvariants {
        i1: ic.a.pow_u64(5).times(&inv),
        i2: a2.times(&ic.a).times(&ic.b).times(&inv),
        i3: a2.times(&ic.c).times(&inv),
    })
}

pub fn absolute_from_gamma<T: Scalar>(g: &GammaVector<T>) -> Result<AbsoluteInvariants<T>> {
    if g.g[0].characteristic() == 2 {
        return Err(Error::Unsupported("characteristic 2".into()));
    }
    let [g1, g2, g3, ..] = &g.g;
    Ok(AbsoluteInvariants {
        i1: frac(g1, 8, 1),
        i2: frac(&g1.minus(&frac(g2, 24, 1)), 1, 2),
        i3: frac(&g1.minus(&frac(g2, 20, 1)).minus(&frac(g3, 72, 1)), 1, 8),
    })
}

pub fn gamma_from_absolute<T: Scalar>(a: &AbsoluteInvariants<T>) -> Result<GammaVector<T>> {
    need_char_not_2_3(&a.i1)?;
    let (i1, i2, i3) = (&a.i1, &a.i2, &a.i3);
    let inv1 = i1.inverse().ok_or(Error::NotDetermined)?;
    let c = |n: i64| i1.from_int_like(n);
    // P = i1^2 + 416 i1 i2 - 1536 i1 i3 - 768 i2^2, Q = i1 + 80 i2 - 384 i3, R = i1 - 16 i2
    let pp = i1
        .times(i1)
        .plus(&c(416).times(i1).times(i2))
        .minus(&c(1536).times(i1).times(i3))
        .minus(&c(768).times(i2).times(i2));
    let q = i1.plus(&c(80).times(i2)).minus(&c(384).times(i3));
    let r = i1.minus(&c(16).times(i2));
    let two = c(2);
    let three = c(3);
    let k = |e2: i64, e3: i64| two.powi(e2).unwrap().times(&three.powi(e3).unwrap());
    let ip = |e: u64| inv1.pow_u64(e);
    let g = [
        k(-3, 0).times(i1),
        k(-6, -1).times(&r),
        k(-7, -3).times(&q),
        k(-11, -3).times(&pp).times(&ip(1)),
        k(-10, -4).times(&r).times(&q).times(&ip(1)),
        k(-25, -7).times(&r).times(&pp.pow_u64(2)).times(&ip(3)),
        k(-22, -9).times(&q.pow_u64(2)).times(&pp).times(&ip(2)),
        k(-29, -15).times(&q.pow_u64(5)).times(&ip(2)),
        k(-37, -12).times(&q).times(&pp.pow_u64(3)).times(&ip(4)),
        k(-52, -15).times(&pp.pow_u64(5)).times(&ip(6)),
    ];
    Ok(GammaVector { g })
}

/// Normalized representative with A = 1: (1, i2/i1 ... ) as used to rebuild
/// invariants from absolute ones: I2 = 1, I10 = 1/i1, I4 = i2 I10, I6 = i3 I10.
pub fn igusa_clebsch_from_absolute<T: Scalar>(a: &AbsoluteInvariants<T>) -> Result<IgusaClebsch<T>> {
    let d = a.i1.inverse().ok_or(Error::NotDetermined)?;
    Ok(IgusaClebsch { a: a.i1.one_like(), b: a.i2.times(&d), c: a.i3.times(&d), d })
}

/// Weighted-projective equality with weights (2,4,6,10), decided over the
/// algebraic closure: equal zero patterns and matching cross products
/// x'_i^{w_j} x_j^{w_i} = x_i^{w_j} x'_j^{w_i}.
pub fn is_isomorphic<T: Scalar>(ic1: &IgusaClebsch<T>, ic2: &IgusaClebsch<T>) -> Result<bool> {
    if ic1.a.characteristic() != ic2.a.characteristic() || ic1.a.field_order() != ic2.a.field_order() {
        return Err(Error::FieldMismatch);
    }
    let x = ic1.to_vec();
    let y = ic2.to_vec();
    let w = [1u64, 2, 3, 5];
    for i in 0..4 {
        if x[i].is_zero() != y[i].is_zero() {
            return Ok(false);
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let l = y[i].pow_u64(w[j]).times(&x[j].pow_u64(w[i]));
            let r = x[i].pow_u64(w[j]).times(&y[j].pow_u64(w[i]));
            if l != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Apply x = a x' + b z', z = c x' + d z' to the binary sextic.
pub fn transform_sextic<T: Scalar>(u: &[T; 7], m: [[T; 2]; 2]) -> [T; 7] {
    let z = u[0].zero_like();
    let lin1 = Poly::new(&z, vec![m[0][1].clone(), m[0][0].clone()]);
    let lin2 = Poly::new(&z, vec![m[1][1].clone(), m[1][0].clone()]);
    let mut acc = Poly::zero(&z);
    for (k, uk) in u.iter().enumerate() {
        let term = lin1.pow(6 - k as u64).mul(&lin2.pow(k as u64)).scale(uk);
        acc = acc.add(&term);
    }
    std::array::from_fn(|k| acc.coeff(6 - k))
}

/// Potential good reduction at p: all gamma_i integral at p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodReduction {
    pub potentially_good: bool,
}

fn integral_at(x: &BigRational, p: &BigInt) -> bool {
    !x.denom().is_multiple_of(p)
}

pub fn good_reduction_tests(g: &GammaVector<BigRational>, p: u64) -> Result<GoodReduction> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::Unsupported("p must be an odd prime".into()));
    }
    let pb = BigInt::from(p);
    Ok(GoodReduction { potentially_good: g.g.iter().all(|x| integral_at(x, &pb)) })
}

pub fn reductions_isomorphic(g1: &GammaVector<BigRational>, g2: &GammaVector<BigRational>, p: u64) -> Result<bool> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::Unsupported("p must be an odd prime".into()));
    }
    let pb = BigInt::from(p);
    let ctx = FqCtx::prime(p)?;
    for (a, b) in g1.g.iter().zip(&g2.g) {
        if !integral_at(a, &pb) || !integral_at(b, &pb) {
            return Ok(false);
        }
        if Fq::from_rational(&ctx, a) != Fq::from_rational(&ctx, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sextic_from_roots(roots: &[BigRational]) -> Vec<BigRational> {
        let z = q(0);
        let mut f = Poly::one(&z);
        for r in roots {
            f = f.mul(&Poly::new(&z, vec![-r.clone(), q(1)]));
        }
        let c = f.coeffs().to_vec();
        let n = c.len();
        (0..7).map(|k| if 6 - k < n { c[6 - k].clone() } else { q(0) }).collect()
    }

    #[test]
    fn counts() {
        assert_eq!(matchings().len(), 15);
        assert_eq!(triple_splits().len(), 10);
    }

    #[test]
    fn discriminant_of_consecutive_roots() {
        let roots: Vec<_> = (0..6).map(q).collect();
        let m = HyperellipticModel::new(sextic_from_roots(&roots)).unwrap();
        let ic = igusa_clebsch(&m).unwrap();
        assert_eq!(ic.d, q(1194393600));
    }

    #[test]
    fn crt_matches_direct_rational_formula() {
        let roots = vec![qr(1, 2), q(-3), qr(7, 5), q(4), qr(-2, 3), q(11)];
        let lead = qr(-5, 7);
        let coeffs: Vec<_> = sextic_from_roots(&roots).into_iter().map(|c| c * &lead).collect();
        let m = HyperellipticModel::new(coeffs).unwrap();
        let ic = igusa_clebsch(&m).unwrap();
        let r: Vec<_> = roots.into_iter().map(Some).collect();
        let direct = ic_from_roots(&lead, &r);
        assert_eq!(ic.to_vec(), direct.to_vec());
    }

    #[test]
    fn quintic_root_at_infinity() {
        let roots = vec![q(0), q(1), q(-2), qr(3, 2), q(5)];
        let m = HyperellipticModel::new(sextic_from_roots(&roots)[1..].to_vec()).unwrap();
        assert_eq!(m.degree(), 5);
        let ic = igusa_clebsch(&m).unwrap();
        let mut r: Vec<_> = roots.into_iter().map(Some).collect();
        r.push(None);
        assert_eq!(ic.to_vec(), ic_from_roots(&q(1), &r).to_vec());
    }

    #[test]
    fn x6_plus_16_over_f17() {
        let ctx = FqCtx::prime(17).unwrap();
        let e = |n| Fq::from_i64(&ctx, n);
        let m = HyperellipticModel::new(vec![e(1), e(0), e(0), e(0), e(0), e(0), e(16)]).unwrap();
        let ic = igusa_clebsch(&m).unwrap();
        let expect = IgusaClebsch { a: e(1), b: e(14), c: e(8), d: e(13) };
        assert!(is_isomorphic(&ic, &expect).unwrap());
        let abs = absolute_from_igusa_clebsch(&ic).unwrap();
        assert_eq!(abs.to_vec(), vec![e(4), e(5), e(15)]);
        let back = igusa_clebsch_from_absolute(&AbsoluteInvariants { i1: e(-13), i2: e(-12), i3: e(-2) }).unwrap();
        assert_eq!(back, expect);
    }

    #[test]
    fn j_vector_example() {
        let ic = IgusaClebsch { a: q(8), b: q(0), c: q(0), d: q(4096) };
        let j = j_from_igusa_clebsch(&ic).unwrap();
        assert_eq!(j.to_vec(), vec![q(1), qr(1, 24), qr(1, 432), qr(1, 6912), q(1)]);
    }

    #[test]
    fn absolute_example() {
        let ic = IgusaClebsch { a: q(2), b: q(1), c: q(1), d: q(1) };
        let a = absolute_from_igusa_clebsch(&ic).unwrap();
        assert_eq!(a.to_vec(), vec![q(32), q(8), q(4)]);
    }

    #[test]
    fn twist_has_same_gamma() {
        let u: Vec<_> = [0, 1, 0, 0, 0, 0, 1].iter().map(|&n| q(n)).collect();
        let v: Vec<_> = u.iter().map(|c| c * q(64)).collect();
        let g = |u: Vec<BigRational>| {
            let ic = igusa_clebsch(&HyperellipticModel::new(u).unwrap()).unwrap();
            gamma_from_j(&j_from_igusa_clebsch(&ic).unwrap()).unwrap()
        };
        assert_eq!(g(u), g(v));
    }

    #[test]
    fn degenerate_and_unsupported() {
        let ic = IgusaClebsch { a: q(1), b: q(2), c: q(3), d: q(0) };
        assert!(matches!(absolute_from_igusa_clebsch(&ic), Err(Error::Degenerate)));
        let ctx = FqCtx::prime(3).unwrap();
        let e = |n| Fq::from_i64(&ctx, n);
        let ic3 = IgusaClebsch { a: e(1), b: e(1), c: e(1), d: e(1) };
        assert!(matches!(j_from_igusa_clebsch(&ic3), Err(Error::Unsupported(_))));
        let zero = AbsoluteInvariants { i1: q(0), i2: q(1), i3: q(1) };
        assert!(matches!(gamma_from_absolute(&zero), Err(Error::NotDetermined)));
        assert!(HyperellipticModel::new(vec![q(1), q(0), q(-2), q(0), q(1), q(0), q(0)]).is_err());
    }
}
