//! Floating-point character tables for cross-checking exact results.
//!
//! Works from the full element list only: classes by brute-force
//! conjugation, class multiplication coefficients by counting products,
//! and characters from the eigenvectors of a generic real combination of
//! the class matrices (the regular representation of the class algebra).

use nalgebra::{Complex, ComplexField, DMatrix, RealField};

/// Character table computed in floating point.
#[derive(Debug, Clone)]
pub struct OracleTable<T: RealField> {
    /// Element indices of each class; the identity class comes first.
    pub classes: Vec<Vec<usize>>,
    pub degrees: Vec<u64>,
    /// `values[chi][class]`.
    pub values: Vec<Vec<Complex<T>>>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Conjugacy classes of the group whose elements (as 0-based image
/// vectors) are listed, identity class first.
pub fn brute_classes(elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let index: std::collections::HashMap<&[usize], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let identity: Vec<usize> = (0..elements[0].len()).collect();
    let id = index[identity.as_slice()];
    let mut order: Vec<usize> = vec![id];
    order.extend((0..elements.len()).filter(|&i| i != id));
    for x in order {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for g in elements {
            let y = compose(&compose(&invert(g), &elements[x]), g);
            let j = index[y.as_slice()];
            if class_of[j] == usize::MAX {
                class_of[j] = c;
                members.push(j);
            }
        }
        classes.push(members);
    }
    classes
}

/// `a[i][j][k]`: number of `x` in class `i` with `x^-1 z_k` in class `j`.
fn structure_constants(elements: &[Vec<usize>], classes: &[Vec<usize>]) -> Vec<Vec<Vec<u64>>> {
    let index: std::collections::HashMap<&[usize], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    let mut class_of = vec![0; elements.len()];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }
    let k = classes.len();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (i, ci) in classes.iter().enumerate() {
        for (kk, ck) in classes.iter().enumerate() {
            let z = &elements[ck[0]];
            for &x in ci {
                let y = compose(&invert(&elements[x]), z);
                a[i][class_of[index[y.as_slice()]]][kk] += 1;
            }
        }
    }
    a
}

fn weights<T: RealField + Copy>(k: usize, seed: u64) -> Vec<T> {
    let mut state = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    (0..k)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            nalgebra::convert(u + 0.25)
        })
        .collect()
}

fn null_vector<T: RealField + Copy>(m: &DMatrix<Complex<T>>) -> Vec<Complex<T>> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let (min_idx, _) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold((0, None::<T>), |(bi, bv), (i, &s)| match bv {
                Some(b) if b <= s => (bi, Some(b)),
                _ => (i, Some(s)),
            });
    v_t.row(min_idx).iter().map(|z| z.conj()).collect()
}

/// Computes the character table of the group with the given elements.
pub fn character_table<T: RealField + Copy>(elements: &[Vec<usize>]) -> OracleTable<T> {
    let classes = brute_classes(elements);
    let a = structure_constants(elements, &classes);
    let k = classes.len();
    let order: T = nalgebra::convert(elements.len() as f64);
    let sizes: Vec<T> = classes
        .iter()
        .map(|c| nalgebra::convert(c.len() as f64))
        .collect();
    let sep: T = nalgebra::convert(1e-4);

    for seed in 0..16u64 {
        let w = weights::<T>(k, seed);
        let mut m = DMatrix::<T>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    let entry: T = nalgebra::convert(a[i][j][kk] as f64);
                    m[(j, kk)] += w[i] * entry;
                }
            }
        }
        let eig = m.complex_eigenvalues();
        let distinct = (0..k).all(|x| (x + 1..k).all(|y| (eig[x] - eig[y]).modulus() > sep));
        if !distinct {
            continue;
        }
        let mc: DMatrix<Complex<T>> = m.map(|x| Complex::new(x, T::zero()));
        let mut degrees = Vec::with_capacity(k);
        let mut values = Vec::with_capacity(k);
        for lambda in eig.iter() {
            let shifted = &mc - DMatrix::<Complex<T>>::identity(k, k) * *lambda;
            let v = null_vector(&shifted);
            let v0 = v[0];
            let omega: Vec<Complex<T>> = v.iter().map(|x| *x / v0).collect();
            let norm = omega
                .iter()
                .zip(&sizes)
                .fold(T::zero(), |acc, (w, s)| acc + w.norm_sqr() / *s);
            let d = (order / norm).sqrt();
            let d_round = d.round();
            let degree: f64 = nalgebra::try_convert(d_round).expect("finite degree");
            degrees.push(degree as u64);
            values.push(
                omega
                    .iter()
                    .zip(&sizes)
                    .map(|(w, s)| *w * Complex::new(d_round / *s, T::zero()))
                    .collect(),
            );
        }
        return OracleTable {
            classes,
            degrees,
            values,
        };
    }
    panic!("no combination of class matrices separated the characters");
}

/// `sum_j coeffs[j] * exp(2 pi i j / n)`.
pub fn embed<T: RealField + Copy>(n: u64, coeffs: &[f64]) -> Complex<T> {
    let two_pi = T::two_pi();
    coeffs
        .iter()
        .enumerate()
        .fold(Complex::new(T::zero(), T::zero()), |acc, (j, &c)| {
            let angle = two_pi * nalgebra::convert(j as f64) / nalgebra::convert(n as f64);
            let c: T = nalgebra::convert(c);
            acc + Complex::new(angle.cos() * c, angle.sin() * c)
        })
}

/// A row permutation `perm` with `a[r]` close to `b[perm[r]]` entrywise,
/// if one exists.
pub fn match_rows<T: RealField + Copy>(
    a: &[Vec<Complex<T>>],
    b: &[Vec<Complex<T>>],
    tol: T,
) -> Option<Vec<usize>> {
    let mut used = vec![false; b.len()];
    let mut perm = Vec::with_capacity(a.len());
    for row in a {
        let found = (0..b.len()).find(|&j| {
            !used[j]
                && row.len() == b[j].len()
                && row
                    .iter()
                    .zip(&b[j])
                    .all(|(x, y)| (*x - *y).modulus() <= tol)
        })?;
        used[found] = true;
        perm.push(found);
    }
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..gens[0].len()).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let y = compose(&out[i], g);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    #[test]
    fn s3_oracle() {
        let els = closure(&[vec![1, 0, 2], vec![1, 2, 0]]);
        let t = character_table::<f64>(&els);
        let mut d = t.degrees.clone();
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
        let sizes: Vec<usize> = t.classes.iter().map(Vec::len).collect();
        assert_eq!(sizes[0], 1);
    }

    #[test]
    fn cyclic_oracle_values() {
        let els = closure(&[vec![1, 2, 3, 4, 0]]);
        let t = character_table::<f64>(&els);
        assert!(t.degrees.iter().all(|&d| d == 1));
        for row in &t.values {
            for v in row {
                assert!((v.modulus() - 1.0).abs() < 1e-9);
            }
        }
        let z: Complex<f64> = embed(4, &[0.0, 1.0]);
        assert!((z - Complex::new(0.0, 1.0)).modulus() < 1e-12);
    }

    #[test]
    fn single_precision_agrees_on_degrees() {
        let els = closure(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        let t32 = character_table::<f32>(&els);
        let t64 = character_table::<f64>(&els);
        let mut a = t32.degrees.clone();
        let mut b = t64.degrees.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(b, vec![1, 1, 2, 3, 3]);
    }
}
