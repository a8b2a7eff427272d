//! Arithmetic and linear algebra over prime fields `F_p` with `p < 2^31`.

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

const PRIME_LIMIT: u64 = 1 << 31;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverting zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `0..p`.
pub fn residue(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Smallest prime `p` with `p = 1 (mod exponent)` and `p > 2 sqrt(order)`.
pub fn split_prime(exponent: u64, order: u64) -> Result<u64> {
    let bound = 4 * order as u128;
    let mut p = exponent + 1;
    while p < PRIME_LIMIT {
        if (p as u128) * (p as u128) > bound && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::SplitPrimeOverflow(exponent))
}

/// Least generator of the multiplicative group of `F_p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root")
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in c..ncols {
                    let sub = mul_mod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}` for an `r x c` matrix.
pub fn nullspace(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let ncols = mat.first().map_or(0, Vec::len);
    let mut rows = mat.to_vec();
    let pivots = rref(&mut rows, p);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial `det(x I - M)`, lowest degree first.
pub fn charpoly(mat: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = mat.len();
    let mut h = mat.to_vec();
    // Similarity transform to upper Hessenberg form.
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            let u = mul_mod(h[i][j], inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let sub = mul_mod(u, h[j + 1][c], p);
                h[i][c] = (h[i][c] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(u, row[i], p);
                row[j + 1] = (row[j + 1] + add) % p;
            }
        }
    }
    // polys[m] is the characteristic polynomial of the leading m x m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(h[m][m], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            let f = mul_mod(h[i][m], prod, p);
            if f == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(f, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Distinct roots in `F_p`, ascending.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| {
            poly.iter()
                .rev()
                .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
                == 0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_primes() {
        assert_eq!(split_prime(12, 24).unwrap(), 13);
        assert_eq!(split_prime(4, 8).unwrap(), 13);
        assert_eq!(split_prime(1, 1).unwrap(), 3);
        assert_eq!(split_prime(420, 2520).unwrap(), 421);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(7), 3);
        let g = primitive_root(421);
        let mut seen = std::collections::HashSet::new();
        let mut x = 1;
        for _ in 0..420 {
            seen.insert(x);
            x = mul_mod(x, g, 421);
        }
        assert_eq!(seen.len(), 420);
    }

    #[test]
    fn charpoly_and_roots() {
        let p = 13;
        // Companion-like matrix with eigenvalues 1, 2, 3.
        let m = vec![vec![1, 5, 7], vec![0, 2, 4], vec![0, 0, 3]];
        let perm = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        assert_eq!(roots(&charpoly(&m, p), p), vec![1, 2, 3]);
        // x^3 - 1
        assert_eq!(charpoly(&perm, p), vec![p - 1, 0, 0, 1]);
        let dense = vec![
            vec![2, 7, 1, 5],
            vec![3, 3, 8, 0],
            vec![11, 4, 6, 9],
            vec![1, 2, 12, 10],
        ];
        let cp = charpoly(&dense, p);
        // Cayley-Hamilton: cp(M) = 0.
        let n = 4;
        let mut acc = vec![vec![0u64; n]; n];
        let mut power: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        for &c in &cp {
            for i in 0..n {
                for j in 0..n {
                    acc[i][j] = (acc[i][j] + c * power[i][j]) % p;
                }
            }
            power = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| power[i][k] * dense[k][j]).sum::<u64>() % p)
                        .collect()
                })
                .collect();
        }
        assert!(acc.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn nullspaces() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&m, p);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let dot: u64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot % p, 0);
            }
        }
    }
}
