//! Factorization over finite fields (squarefree, distinct-degree and
//! Cantor-Zassenhaus equal-degree splitting), splitting fields and roots.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::matrix::Matrix;
use crate::field::{Fq, FqCtx, Scalar};
use crate::fp;
use crate::poly::Poly;

pub type FqPoly = Poly<Fq>;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6e75_7332_636d)
}

fn random_elem(ctx: &Arc<FqCtx>, r: &mut ChaCha8Rng) -> Fq {
    let v: Vec<u64> = (0..ctx.degree()).map(|_| r.gen_range(0..ctx.p())).collect();
    Fq::from_coeffs(ctx, &v)
}

fn random_poly(zero: &Fq, deg_below: usize, r: &mut ChaCha8Rng) -> FqPoly {
    let c = (0..deg_below).map(|_| random_elem(zero.ctx(), r)).collect();
    Poly::new(zero, c)
}

/// p-th root of a polynomial whose exponents are all multiples of p.
fn pth_root(f: &FqPoly) -> FqPoly {
    let ctx = f.base_zero().ctx().clone();
    let p = ctx.p() as usize;
    let e = BigUint::from(ctx.p()).pow(ctx.degree() as u32 - 1);
    let c = f.coeffs().iter().step_by(p).map(|a| a.pow_big(&e)).collect();
    Poly::new(f.base_zero(), c)
}

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with f = prod g^m.
pub fn squarefree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.base_zero().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut g = f.gcd(&df);
    let mut w = f.divrem(&g).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&g);
        let z = w.divrem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        g = g.divrem(&y).0;
        w = y;
    }
    if g.degree().unwrap_or(0) > 0 {
        for (h, m) in squarefree(&pth_root(&g.monic())) {
            out.push((h, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let q = f.base_zero().field_order().unwrap();
    let x = Poly::x(f.base_zero());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest.monic(), d));
    }
    out
}

/// Split a squarefree monic product of irreducibles of degree `d`.
pub fn equal_degree(f: &FqPoly, d: usize, r: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let zero = f.base_zero();
    let ctx = zero.ctx().clone();
    let q = ctx.order();
    loop {
        let a = random_poly(zero, n, r);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if ctx.p() == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1))
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..(ctx.degree() * d) {
                t = t.mulmod(&t, f);
                s = s.add(&t);
            }
            s
        } else {
            let e: BigUint = (q.pow(d as u32) - BigUint::one()) >> 1;
            a.powmod(&e, f).sub(&Poly::one(zero))
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree(&g, d, r);
            out.extend(equal_degree(&h, d, r));
            return out;
        }
    }
}

/// Factor a nonzero polynomial over F_q into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor_poly(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut r = rng();
    let mut out: Vec<(FqPoly, usize)> = Vec::new();
    for (g, m) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut r) {
                match out.iter_mut().find(|(a, _)| *a == irr) {
                    Some(e) => e.1 += m,
                    None => out.push((irr, m)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Degrees of the irreducible factors, with multiplicity: the "pattern".
pub fn factor_pattern(f: &FqPoly) -> Result<Vec<(usize, usize)>> {
    let mut v: Vec<(usize, usize)> =
        factor_poly(f)?.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect();
    v.sort();
    Ok(v)
}

/// Roots in F_q of a polynomial, with multiplicity.
pub fn roots_in_base(f: &FqPoly) -> Result<Vec<Fq>> {
    let mut out = Vec::new();
    for (g, m) in factor_poly(f)? {
        if g.degree() == Some(1) {
            let root = g.coeff(0).negate();
            for _ in 0..m {
                out.push(root.clone());
            }
        }
    }
    Ok(out)
}

/// Pick a monic irreducible polynomial of degree `n` over F_p: first in a
/// small deterministic enumeration, then seeded random search.
pub fn irreducible_of_degree(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1];
    }
    let mut count = 0u64;
    let mut cand = vec![0u64; n + 1];
    cand[n] = 1;
    loop {
        count += 1;
        let mut c = count;
        let mut ok = true;
        for slot in cand.iter_mut().take(n) {
            *slot = c % p;
            c /= p;
        }
        if c > 0 {
            ok = false;
        }
        if ok && fp::is_irreducible(&cand, p) {
            return cand;
        }
        if count > 512 || !ok {
            break;
        }
    }
    let mut r = rng();
    loop {
        for slot in cand.iter_mut().take(n) {
            *slot = r.gen_range(0..p);
        }
        if fp::is_irreducible(&cand, p) {
            return cand;
        }
    }
}

/// Embedding of a base field F_{p^k} into a larger flat field F_{p^{km}}.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub base: Arc<FqCtx>,
    pub big: Arc<FqCtx>,
    /// Image of the base generator.
    pub gen_image: Fq,
    powers: Vec<Fq>,
}

impl Embedding {
    pub fn new(base: &Arc<FqCtx>, m: usize) -> Embedding {
        if m == 1 {
            return Embedding {
                base: base.clone(),
                big: base.clone(),
                gen_image: Fq::generator(base),
                powers: (0..base.degree()).map(|i| Fq::generator(base).pow_u64(i as u64)).collect(),
            };
        }
        let p = base.p();
        let k = base.degree();
        let big = FqCtx::new_unchecked(p, irreducible_of_degree(p, k * m));
        let gen_image = if k == 1 {
            Fq::from_i64(&big, 0)
        } else {
            let zero = Fq::from_i64(&big, 0);
            let modpoly =
                Poly::new(&zero, base.modulus().iter().map(|&c| Fq::from_coeffs(&big, &[c])).collect());
            let mut roots = split_linear(&modpoly);
            roots.sort_by_key(|r| r.sort_key());
            roots.into_iter().next().expect("modulus splits in the extension")
        };
        let powers = (0..k).map(|i| gen_image.pow_u64(i as u64)).collect();
        Embedding { base: base.clone(), big, gen_image, powers }
    }

    pub fn embed(&self, x: &Fq) -> Fq {
        if Arc::ptr_eq(&self.base, &self.big) {
            return x.clone();
        }
        let mut acc = Fq::from_i64(&self.big, 0);
        for (c, pw) in x.coeffs().iter().zip(&self.powers) {
            if *c != 0 {
                acc = acc.plus(&pw.times(&Fq::from_coeffs(&self.big, &[*c])));
            }
        }
        acc
    }

    pub fn embed_poly(&self, f: &FqPoly) -> FqPoly {
        let zero = Fq::from_i64(&self.big, 0);
        f.map(&zero, |c| self.embed(c))
    }

    /// Express a big-field element in the base field, if it lies there.
    pub fn pull_back(&self, z: &Fq) -> Option<Fq> {
        if Arc::ptr_eq(&self.base, &self.big) {
            return Some(z.clone());
        }
        let p = self.base.p();
        let k = self.base.degree();
        let n = self.big.degree();
        // Solve sum_i c_i * powers[i] = z over F_p: n equations, k unknowns.
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                let mut row: Vec<u64> = (0..k).map(|i| self.powers[i].coeffs()[r]).collect();
                row.push(z.coeffs()[r]);
                row
            })
            .collect();
        let mut piv_cols = Vec::new();
        let mut rank = 0;
        for c in 0..k {
            let Some(pr) = (rank..n).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(rank, pr);
            let inv = crate::ntheory::inv_mod(rows[rank][c], p).unwrap();
            for v in rows[rank].iter_mut() {
                *v = crate::ntheory::mul_mod(*v, inv, p);
            }
            for i in 0..n {
                if i != rank && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..=k {
                        let t = crate::ntheory::mul_mod(f, rows[rank][j], p);
                        rows[i][j] = (rows[i][j] + p - t) % p;
                    }
                }
            }
            piv_cols.push(c);
            rank += 1;
        }
        if rows[rank..].iter().any(|r| r[k] != 0) {
            return None;
        }
        let mut sol = vec![0u64; k];
        for (i, &c) in piv_cols.iter().enumerate() {
            sol[c] = rows[i][k];
        }
        Some(Fq::from_coeffs(&self.base, &sol))
    }
}

/// All roots of a polynomial that splits into distinct linear factors over its field.
fn split_linear(f: &FqPoly) -> Vec<Fq> {
    let zero = f.base_zero();
    let q = zero.field_order().unwrap();
    let x = Poly::x(zero);
    let g = x.powmod(&q, &f.monic()).sub(&x).gcd(f);
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut r = rng();
    equal_degree(&g, 1, &mut r).iter().map(|l| l.coeff(0).negate()).collect()
}

/// Roots of `f` in its splitting field F_{q^m}: (m, embedding, roots with multiplicity).
#[derive(Clone, Debug)]
pub struct SplittingRoots {
    pub m: usize,
    pub embedding: Embedding,
    pub roots: Vec<Fq>,
}

pub fn splitting_roots(f: &FqPoly) -> Result<SplittingRoots> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let base = f.base_zero().ctx().clone();
    let facs = factor_poly(f)?;
    let m = facs.iter().fold(1usize, |acc, (g, _)| acc.lcm(&g.degree().unwrap()));
    let emb = Embedding::new(&base, m);
    let mut roots = Vec::new();
    for (g, mult) in &facs {
        let big_g = emb.embed_poly(g);
        let rs = split_linear(&big_g);
        debug_assert_eq!(rs.len(), g.degree().unwrap());
        for r in rs {
            for _ in 0..*mult {
                roots.push(r.clone());
            }
        }
    }
    roots.sort_by_key(|r| r.sort_key());
    Ok(SplittingRoots { m, embedding: emb, roots })
}

/// Entrywise p-th power of a matrix over a finite field.
pub fn frobenius_twist<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let p = m.first().and_then(|r| r.first()).map(|x| x.characteristic()).unwrap_or(0);
    if p == 0 {
        return Err(Error::Unsupported("Frobenius twist needs a finite field".into()));
    }
    Ok(crate::field::matrix::map(m, |x| x.pow_u64(p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ctx: &Arc<FqCtx>, c: &[i64]) -> FqPoly {
        let z = Fq::from_i64(ctx, 0);
        Poly::new(&z, c.iter().map(|&v| Fq::from_i64(ctx, v)).collect())
    }

    #[test]
    fn small_factorizations() {
        let f5 = FqCtx::prime(5).unwrap();
        let fs = factor_poly(&poly(&f5, &[1, 0, 1])).unwrap();
        assert_eq!(fs, vec![(poly(&f5, &[2, 1]), 1), (poly(&f5, &[3, 1]), 1)]);
        let f3 = FqCtx::prime(3).unwrap();
        assert_eq!(factor_poly(&poly(&f3, &[1, 0, 1])).unwrap(), vec![(poly(&f3, &[1, 0, 1]), 1)]);
        let f7 = FqCtx::prime(7).unwrap();
        assert_eq!(factor_poly(&poly(&f7, &[0, 0, 1])).unwrap(), vec![(poly(&f7, &[0, 1]), 2)]);
        assert_eq!(factor_poly(&poly(&f7, &[])), Err(Error::ZeroInput));
    }

    #[test]
    fn pth_powers() {
        let f3 = FqCtx::prime(3).unwrap();
        // (x+1)^3 (x^2+1)^6
        let f = poly(&f3, &[1, 1]).pow(3).mul(&poly(&f3, &[1, 0, 1]).pow(6));
        let fs = factor_poly(&f).unwrap();
        assert_eq!(fs, vec![(poly(&f3, &[1, 1]), 3), (poly(&f3, &[1, 0, 1]), 6)]);
    }

    #[test]
    fn roots_in_f9() {
        let f3 = FqCtx::prime(3).unwrap();
        let s = splitting_roots(&poly(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.roots.len(), 2);
        for r in &s.roots {
            assert!(r.times(r).plus(&r.one_like()).is_zero());
        }
        let f5 = FqCtx::prime(5).unwrap();
        let s = splitting_roots(&poly(&f5, &[0, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.m, 1);
        let v: Vec<u64> = s.roots.iter().map(|r| r.coeffs()[0]).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 4]);
        let f7 = FqCtx::prime(7).unwrap();
        let s = splitting_roots(&poly(&f7, &[1, -2, 1])).unwrap();
        assert_eq!(s.roots, vec![Fq::from_i64(&f7, 1), Fq::from_i64(&f7, 1)]);
    }

    #[test]
    fn twist_examples() {
        let f7 = FqCtx::prime(7).unwrap();
        let m = vec![vec![Fq::from_i64(&f7, 0), Fq::from_i64(&f7, 3)], vec![Fq::from_i64(&f7, 0); 2]];
        assert_eq!(frobenius_twist(&m).unwrap(), m);
        let f9 = FqCtx::new(3, vec![1, 0, 1]).unwrap();
        let a = Fq::generator(&f9);
        let one = Fq::from_i64(&f9, 1);
        let z = Fq::from_i64(&f9, 0);
        let m = vec![vec![a.clone(), z.clone()], vec![z.clone(), one.clone()]];
        let t = frobenius_twist(&m).unwrap();
        assert_eq!(t, vec![vec![a.negate(), z.clone()], vec![z, one]]);
        let q = vec![vec![num_rational::BigRational::from_integer(1.into())]];
        assert!(frobenius_twist(&q).is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let k = FqCtx::new(89, vec![3, 82, 1]).unwrap();
        let e = Embedding::new(&k, 3);
        assert_eq!(e.big.degree(), 6);
        let a = Fq::generator(&k);
        for n in [1u64, 5, 77, 5245] {
            let x = a.pow_u64(n);
            let y = e.embed(&x);
            assert_eq!(e.pull_back(&y).unwrap(), x);
            assert_eq!(e.embed(&x.times(&x)), y.times(&y));
        }
        // a generic big-field element is not in the base
        let t = Fq::generator(&e.big);
        assert!(e.pull_back(&t).is_none());
    }
}
