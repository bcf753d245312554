//! Dense linear algebra over F_p (u64 entries), Q and Z (Hermite normal form).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ntheory::{inv_mod, mul_mod};

pub type MatP = Vec<Vec<u64>>;

/// In-place reduced row echelon form mod p; returns pivot columns.
pub fn rref_p(m: &mut MatP, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p).unwrap();
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let t = mul_mod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_p(m: &MatP, p: u64) -> usize {
    let mut a = m.clone();
    rref_p(&mut a, p).len()
}

/// Basis of the row space.
pub fn row_space_p(m: &MatP, p: u64) -> MatP {
    let mut a = m.clone();
    let k = rref_p(&mut a, p).len();
    a.truncate(k);
    a
}

/// Basis of {x : A x = 0}, `cols` columns.
pub fn kernel_p(a: &MatP, cols: usize, p: u64) -> MatP {
    let mut m = a.clone();
    let piv = rref_p(&mut m, p);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Basis of {x : x A = 0} for an r x c matrix.
pub fn left_kernel_p(a: &MatP, p: u64) -> MatP {
    let cols = a.first().map_or(0, |r| r.len());
    kernel_p(&transpose(a, cols), a.len(), p)
}

pub fn vec_mat_p(v: &[u64], m: &MatP, p: u64) -> Vec<u64> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u64; cols];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        for j in 0..cols {
            out[j] = (out[j] + mul_mod(vi, m[i][j], p)) % p;
        }
    }
    out
}

pub fn mat_mul_p(a: &MatP, b: &MatP, p: u64) -> MatP {
    a.iter().map(|r| vec_mat_p(r, b, p)).collect()
}

/// Dimension of the intersection of two subspaces given by row bases.
pub fn intersection_dim_p(a: &MatP, b: &MatP, p: u64) -> usize {
    let mut both = a.clone();
    both.extend(b.iter().cloned());
    rank_p(a, p) + rank_p(b, p) - rank_p(&both, p)
}

pub type MatQ = Vec<Vec<BigRational>>;

pub fn inverse_q(m: &MatQ) -> Option<MatQ> {
    let n = m.len();
    let mut a: MatQ = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let k = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, k);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det_q(m: &MatQ) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&i| !a[i][c].is_zero()) else { return BigRational::zero() };
        if k != c {
            a.swap(c, k);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    det
}

pub fn vec_mat_q(v: &[BigRational], m: &MatQ) -> Vec<BigRational> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![BigRational::zero(); cols];
    for (i, vi) in v.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        for j in 0..cols {
            out[j] += vi * &m[i][j];
        }
    }
    out
}

/// Row Hermite normal form of an integer matrix; zero rows dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let k = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, k);
            if (r + 1..m).all(|i| a[i][c].is_zero()) {
                break;
            }
            for i in r + 1..m {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pr = a[r].clone();
                    for j in 0..cols {
                        a[i][j] -= &q * &pr[j];
                    }
                }
            }
        }
        if (r..m).all(|i| a[i][c].is_zero()) {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pr = a[r].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&pr[c]);
            if !q.is_zero() {
                for j in 0..cols {
                    a[i][j] -= &q * &pr[j];
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Z-basis of the lattice spanned by rational row vectors.
pub fn lattice_basis(gens: &[Vec<BigRational>]) -> MatQ {
    let den = gens.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let dq = BigRational::from_integer(den.clone());
    let ints: Vec<Vec<BigInt>> = gens.iter().map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    hnf(&ints)
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel_p(&a, 3, 7);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
        assert_eq!(rank_p(&a, 7), 1);
        assert_eq!(left_kernel_p(&a, 7), vec![vec![5, 1]]);
    }

    #[test]
    fn hermite_form() {
        let h = hnf(&[bi(&[4, 6]), bi(&[6, 9]), bi(&[2, 0])]);
        // lattice generated: (4,6),(6,9),(2,0) -> index det
        assert_eq!(h.len(), 2);
        let det = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        assert_eq!(det.abs(), BigInt::from(6));
        assert!(h[1][0].is_zero());
    }

    #[test]
    fn rational_inverse() {
        let m: MatQ = vec![
            vec![BigRational::from_integer(2.into()), BigRational::from_integer(1.into())],
            vec![BigRational::from_integer(1.into()), BigRational::from_integer(1.into())],
        ];
        let inv = inverse_q(&m).unwrap();
        assert_eq!(det_q(&m), BigRational::one());
        assert_eq!(vec_mat_q(&[BigRational::one(), BigRational::zero()], &inv)[0], BigRational::one());
    }
}
