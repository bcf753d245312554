//! Orders in a number field Q[x]/(f): p-maximal enlargement by the Round-2
//! radical / ring-of-multipliers step, decomposition of p, discriminants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::roots_in_base;
use crate::field::{Fq, FqCtx};
use crate::linalg::*;
use crate::ntheory::{factor_integer, is_prime_u64};
use crate::poly::Poly;

fn qi(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// A full-rank order given by a Z-basis in power-basis coordinates.
#[derive(Clone, Debug)]
pub struct Order {
    f: Vec<BigInt>,
    basis: MatQ,
    inv: MatQ,
    table: Vec<Vec<Vec<BigInt>>>,
}

/// Multiply in Q[x]/(f), f monic, coordinates lowest degree first.
pub fn mul_mod_f(a: &[BigRational], b: &[BigRational], f: &[BigInt]) -> Vec<BigRational> {
    let n = f.len() - 1;
    let mut prod = vec![BigRational::zero(); 2 * n - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = std::mem::replace(&mut prod[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            prod[k - n + i] -= &c * qi(f[i].clone());
        }
    }
    prod.truncate(n);
    prod
}

impl Order {
    /// Z[x]/(f) for monic integer f (lowest degree first).
    pub fn equation(f: &[BigInt]) -> Result<Order> {
        if f.last() != Some(&BigInt::one()) || f.len() < 2 {
            return Err(Error::Invalid("polynomial must be monic of degree >= 1".into()));
        }
        let n = f.len() - 1;
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Order::from_basis(f, basis)
    }

    fn from_basis(f: &[BigInt], basis: MatQ) -> Result<Order> {
        let inv = inverse_q(&basis).ok_or_else(|| Error::Internal("singular order basis".into()))?;
        let n = basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let c = vec_mat_q(&mul_mod_f(&basis[i], &basis[j], f), &inv);
                if c.iter().any(|x| !x.is_integer()) {
                    return Err(Error::Internal("basis does not span a ring".into()));
                }
                let ci: Vec<BigInt> = c.into_iter().map(|x| x.to_integer()).collect();
                table[i][j] = ci.clone();
                table[j][i] = ci;
            }
        }
        Ok(Order { f: f.to_vec(), basis, inv, table })
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    /// [O : Z[x]] = 1/|det basis|.
    pub fn index(&self) -> BigRational {
        det_q(&self.basis).abs().recip()
    }

    /// det(Tr(b_i b_j)).
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        // trace of x^k from the companion matrix powers
        let traces: Vec<BigRational> = (0..n)
            .map(|k| {
                let mut e = vec![BigRational::zero(); n];
                e[k] = BigRational::one();
                (0..n)
                    .map(|i| {
                        let mut xi = vec![BigRational::zero(); n];
                        xi[i] = BigRational::one();
                        mul_mod_f(&e, &xi, &self.f)[i].clone()
                    })
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect();
        let tr = |v: &[BigRational]| v.iter().zip(&traces).fold(BigRational::zero(), |a, (x, t)| a + x * t);
        let m: MatQ = (0..n)
            .map(|i| (0..n).map(|j| tr(&mul_mod_f(&self.basis[i], &self.basis[j], &self.f))).collect())
            .collect();
        det_q(&m).to_integer()
    }

    fn mul_p(&self, x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
        let n = self.degree();
        let pb = BigInt::from(p);
        let mut acc = vec![BigInt::zero(); n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = BigInt::from(x[i]) * BigInt::from(y[j]);
                for k in 0..n {
                    acc[k] += &c * &self.table[i][j][k];
                }
            }
        }
        acc.into_iter().map(|v| modp(&v, &pb)).collect()
    }

    fn pow_p(&self, x: &[u64], mut e: BigInt, p: u64) -> Vec<u64> {
        let mut r = self.one_p(p);
        let mut b = x.to_vec();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                r = self.mul_p(&r, &b, p);
            }
            b = self.mul_p(&b, &b, p);
            e /= &two;
        }
        r
    }

    fn one_p(&self, p: u64) -> Vec<u64> {
        let mut one = vec![BigRational::zero(); self.degree()];
        one[0] = BigRational::one();
        let pb = BigInt::from(p);
        vec_mat_q(&one, &self.inv).iter().map(|x| modp(&x.to_integer(), &pb)).collect()
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[i] = 1;
        v
    }

    /// Rows: images of the basis under x -> x^p on O/pO.
    fn frobenius_p(&self, p: u64) -> MatP {
        (0..self.degree()).map(|i| self.pow_p(&self.unit(i), BigInt::from(p), p)).collect()
    }

    /// Basis of the p-radical of O/pO.
    pub fn radical_p(&self, p: u64) -> MatP {
        let n = self.degree();
        let mut j = 1u32;
        while (p as u128).pow(j) < n as u128 {
            j += 1;
        }
        let f = self.frobenius_p(p);
        let mut fj = f.clone();
        for _ in 1..j {
            fj = mat_mul_p(&fj, &f, p);
        }
        row_space_p(&left_kernel_p(&fj, p), p)
    }

    fn lift(&self, v: &[u64]) -> Vec<BigRational> {
        let c: Vec<BigRational> = v.iter().map(|&x| qi(BigInt::from(x))).collect();
        vec_mat_q(&c, &self.basis)
    }

    /// One Round-2 step; None when O is already p-maximal.
    fn enlarge(&self, p: u64) -> Result<Option<Order>> {
        let n = self.degree();
        let pq = qi(BigInt::from(p));
        let rad = self.radical_p(p);
        let mut gens: Vec<Vec<BigRational>> = rad.iter().map(|v| self.lift(v)).collect();
        gens.extend(self.basis.iter().map(|b| b.iter().map(|x| x * &pq).collect()));
        let ideal = lattice_basis(&gens);
        let iinv = inverse_q(&ideal).ok_or_else(|| Error::Internal("degenerate radical".into()))?;
        let pb = BigInt::from(p);
        // y -> (y z_k mod pI)_k on O/pO
        let rows: MatP = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(n * n);
                for z in &ideal {
                    let c = vec_mat_q(&mul_mod_f(&self.basis[i], z, &self.f), &iinv);
                    row.extend(c.iter().map(|x| modp(&x.to_integer(), &pb)));
                }
                row
            })
            .collect();
        let u = left_kernel_p(&rows, p);
        if u.is_empty() {
            return Ok(None);
        }
        let mut gens: Vec<Vec<BigRational>> = u.iter().map(|v| self.lift(v).iter().map(|x| x / &pq).collect()).collect();
        gens.extend(self.basis.iter().cloned());
        Ok(Some(Order::from_basis(&self.f, lattice_basis(&gens))?))
    }

    pub fn p_maximal(&self, p: u64) -> Result<Order> {
        let mut o = self.clone();
        while let Some(next) = o.enlarge(p)? {
            o = next;
        }
        Ok(o)
    }

    /// Primes above p as (e, f), sorted. O must be p-maximal.
    fn decompose(&self, p: u64) -> Result<Vec<(usize, usize)>> {
        let n = self.degree();
        let ctx = FqCtx::prime(p)?;
        let rad = self.radical_p(p);
        let fr = self.frobenius_p(p);
        let mut shifted = fr.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - 1) % p;
        }
        // Frobenius-fixed subalgebra: one dimension per prime
        let fixed = left_kernel_p(&shifted, p);
        let whole: MatP = (0..n).map(|i| self.unit(i)).collect();
        let mut comps = vec![whole];
        for b in &fixed {
            let mb: MatP = (0..n).map(|i| self.mul_p(&self.unit(i), b, p)).collect();
            let mut next = Vec::new();
            for c in &comps {
                for lam in self.eigenvalues(b, p, &ctx)? {
                    let mut shifted = mb.clone();
                    for (i, row) in shifted.iter_mut().enumerate() {
                        row[i] = (row[i] + p - lam) % p;
                    }
                    let img = mat_mul_p(c, &shifted, p);
                    let coef = left_kernel_p(&img, p);
                    if !coef.is_empty() {
                        next.push(row_space_p(&mat_mul_p(&coef, c, p), p));
                    }
                }
            }
            comps = next;
        }
        if comps.len() != fixed.len() {
            return Err(Error::Internal("component count mismatch".into()));
        }
        let mut out = Vec::new();
        for c in &comps {
            let dim = c.len();
            let f = dim - intersection_dim_p(c, &rad, p);
            out.push((dim / f, f));
        }
        out.sort();
        Ok(out)
    }

    /// Distinct eigenvalues of multiplication by an element with b^p = b.
    fn eigenvalues(&self, b: &[u64], p: u64, ctx: &std::sync::Arc<FqCtx>) -> Result<Vec<u64>> {
        let n = self.degree();
        let mut powers = vec![self.one_p(p)];
        loop {
            let next = self.mul_p(powers.last().unwrap(), b, p);
            powers.push(next);
            let ker = left_kernel_p(&powers, p);
            if let Some(rel) = ker.first() {
                let z = Fq::from_i64(ctx, 0);
                let poly = Poly::new(&z, rel.iter().map(|&c| Fq::from_coeffs(ctx, &[c])).collect());
                let mut roots: Vec<u64> = roots_in_base(&poly)?.iter().map(|r| r.coeffs()[0]).collect();
                roots.sort();
                roots.dedup();
                return Ok(roots);
            }
            if powers.len() > n + 1 {
                return Err(Error::Internal("no minimal polynomial".into()));
            }
        }
    }
}

fn modp(v: &BigInt, p: &BigInt) -> u64 {
    let r = ((v % p) + p) % p;
    r.to_u64().unwrap()
}

/// Ramification and residue degrees (e, f) of the primes above p in Q[x]/(f),
/// f monic irreducible over Z.
pub fn splitting_shape(f: &[BigInt], p: u64) -> Result<Vec<(usize, usize)>> {
    if !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if p >= 1 << 32 {
        return Err(Error::Unsupported("primes above 2^32".into()));
    }
    let o = Order::equation(f)?;
    if o.discriminant().is_zero() {
        return Err(Error::Invalid("polynomial is not squarefree".into()));
    }
    o.p_maximal(p)?.decompose(p)
}

/// Discriminant of Z[x]/(f).
pub fn poly_discriminant(f: &[BigInt]) -> Result<BigInt> {
    Ok(Order::equation(f)?.discriminant())
}

/// Maximal order: Round-2 at every p with p^2 | disc(f).
pub fn maximal_order(f: &[BigInt]) -> Result<Order> {
    let mut o = Order::equation(f)?;
    let d = o.discriminant();
    if d.is_zero() {
        return Err(Error::Invalid("polynomial is not squarefree".into()));
    }
    let fac = factor_integer(&d).ok_or_else(|| Error::Internal("could not factor the discriminant".into()))?;
    for (q, e) in fac {
        if e >= 2 {
            let q = q.to_u64().ok_or_else(|| Error::Unsupported("discriminant prime above 2^64".into()))?;
            o = o.p_maximal(q)?;
        }
    }
    Ok(o)
}

pub fn field_discriminant(f: &[BigInt]) -> Result<BigInt> {
    Ok(maximal_order(f)?.discriminant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quadratic_fields() {
        // x^2 - 5: index 2 at p = 2, field discriminant 5
        let f = bi(&[-5, 0, 1]);
        assert_eq!(poly_discriminant(&f).unwrap(), BigInt::from(20));
        assert_eq!(field_discriminant(&f).unwrap(), BigInt::from(5));
        assert_eq!(splitting_shape(&f, 2).unwrap(), vec![(1, 2)]);
        assert_eq!(splitting_shape(&f, 5).unwrap(), vec![(2, 1)]);
        assert_eq!(splitting_shape(&f, 11).unwrap(), vec![(1, 1), (1, 1)]);
        // x^2 + 7 at 2: splits in the maximal order although x^2+7 = (x+1)^2 mod 2
        let g = bi(&[7, 0, 1]);
        assert_eq!(splitting_shape(&g, 2).unwrap(), vec![(1, 1), (1, 1)]);
        assert_eq!(field_discriminant(&g).unwrap(), BigInt::from(-7));
    }

    #[test]
    fn cubic_with_common_index_divisor() {
        // x^3 - x^2 - 2x - 8 (Dedekind): 2 splits completely but no generator sees it
        let f = bi(&[-8, -2, -1, 1]);
        assert_eq!(splitting_shape(&f, 2).unwrap(), vec![(1, 1), (1, 1), (1, 1)]);
        assert_eq!(field_discriminant(&f).unwrap(), BigInt::from(-503));
    }
}
