//! Hasse-Witt matrix of y^2 = f(x) over F_q and the resulting a- and f-numbers.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{frobenius_twist, FqPoly};
use crate::field::matrix::{self, Matrix};
use crate::field::{Fq, Scalar};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct HasseWittMatrix {
    pub m: Matrix<Fq>,
    pub p: u64,
    pub source: FqPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReductionProfile {
    pub a_number: u8,
    pub f_number: u8,
    pub superspecial: bool,
    pub ordinary: bool,
}

fn check_curve(f: &FqPoly) -> Result<u64> {
    let p = f.base_zero().characteristic();
    if p == 2 {
        return Err(Error::Unsupported("characteristic 2".into()));
    }
    match f.degree() {
        Some(5) | Some(6) => {}
        _ => return Err(Error::Invalid("degree must be 5 or 6".into())),
    }
    if f.gcd(&f.derivative()).degree() != Some(0) {
        return Err(Error::Invalid("polynomial is not squarefree (singular curve)".into()));
    }
    Ok(p)
}

/// [[c_{p-1}, c_{p-2}], [c_{2p-1}, c_{2p-2}]] with c_j the coefficients of f^((p-1)/2).
pub fn hasse_witt(f: &FqPoly) -> Result<HasseWittMatrix> {
    let p = check_curve(f)?;
    let g = f.pow((p - 1) / 2);
    let c = |j: u64| g.coeff(j as usize);
    let m = vec![vec![c(p - 1), c(p - 2)], vec![c(2 * p - 1), c(2 * p - 2)]];
    Ok(HasseWittMatrix { m, p, source: f.clone() })
}

/// The same four coefficients of f^((p-1)/2) for an integer polynomial (lowest
/// degree first), before any reduction.
pub fn hasse_witt_integer(f: &[BigInt], p: u64) -> Matrix<BigInt> {
    let z = BigInt::zero();
    let mut g = vec![BigInt::from(1)];
    for _ in 0..(p - 1) / 2 {
        let mut h = vec![z.clone(); g.len() + f.len() - 1];
        for (i, a) in g.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                h[i + j] += a * b;
            }
        }
        g = h;
    }
    let c = |j: u64| g.get(j as usize).cloned().unwrap_or_else(|| z.clone());
    vec![vec![c(p - 1), c(p - 2)], vec![c(2 * p - 1), c(2 * p - 2)]]
}

pub fn af_numbers(hw: &HasseWittMatrix) -> Result<ReductionProfile> {
    let r = matrix::rank(&hw.m);
    let fm = matrix::rank(&matrix::mul(&frobenius_twist(&hw.m)?, &hw.m));
    let a_number = (2 - r) as u8;
    let f_number = fm as u8;
    Ok(ReductionProfile {
        a_number,
        f_number,
        superspecial: a_number == 2,
        ordinary: f_number == 2,
    })
}

/// Convenience: Hasse-Witt profile of an integer polynomial reduced mod p.
pub fn profile_mod_p(f: &[i64], p: u64) -> Result<ReductionProfile> {
    let ctx = crate::field::FqCtx::prime(p)?;
    let z = Fq::from_i64(&ctx, 0);
    let poly = Poly::new(&z, f.iter().map(|&c| Fq::from_i64(&ctx, c)).collect());
    af_numbers(&hasse_witt(&poly)?)
}
