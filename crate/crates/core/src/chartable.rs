//! Irreducible character tables by the Dixon-Schneider method.
//!
//! Class matrices are diagonalised simultaneously over a prime field in
//! which every central character splits. Each common eigenvector gives a
//! central character mod `p`; degrees and character values follow mod `p`
//! and are lifted to exact cyclotomic values through eigenvalue
//! multiplicities of `rho(g)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{p_part, prime_power_base};
use crate::classes::{conjugacy_classes, ClassData};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::modp::{
    charpoly, inv_mod, mul_mod, nullspace, pow_mod, primitive_root, roots, rref, split_prime,
};
use crate::perm::Permutation;
use crate::{Cyclotomic, Rational};

/// Structure constants for class `i`: `a[j][k]` counts `x` in class `i`
/// with `x^-1 z_k` in class `j`, for the fixed representative `z_k`.
pub fn class_matrix(classes: &ClassData, i: usize) -> Vec<Vec<u64>> {
    let k = classes.len();
    let inverses: Vec<Permutation> = classes.members(i).map(Permutation::inverse).collect();
    let mut a = vec![vec![0u64; k]; k];
    for (col, c) in classes.classes().iter().enumerate() {
        for xi in &inverses {
            let j = classes
                .class_of(&(xi * &c.rep))
                .expect("product of group elements lies in the group");
            a[j][col] += 1;
        }
    }
    a
}

/// Prime field data for the Dixon-Schneider computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPrime {
    pub p: u64,
    pub exponent: u64,
    /// An element of multiplicative order `exponent` in `F_p`.
    pub root: u64,
}

impl SplitPrime {
    pub fn new(exponent: u64, order: u64) -> Result<Self> {
        let p = split_prime(exponent, order)?;
        let root = pow_mod(primitive_root(p), (p - 1) / exponent, p);
        Ok(SplitPrime { p, exponent, root })
    }
}

/// Exact irreducible character table.
///
/// Rows are irreducible characters (the trivial character first, the rest
/// sorted by degree and then by values), columns follow the canonical
/// class order. The value at class `j` is stored in `Q(zeta_m)` with `m`
/// the element order of the class.
#[derive(Clone)]
pub struct CharacterTable {
    group: PermGroup,
    classes: Arc<ClassData>,
    values: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

pub fn irreducible_characters(g: &PermGroup) -> Result<CharacterTable> {
    let cd = conjugacy_classes(g);
    let k = cd.len();
    let order = g.order();
    let sp = SplitPrime::new(cd.exponent(), order)?;
    let p = sp.p;

    let mats: Vec<Vec<Vec<u64>>> = (0..k)
        .into_par_iter()
        .map(|i| {
            let mut a = class_matrix(&cd, i);
            for row in a.iter_mut() {
                for x in row.iter_mut() {
                    *x %= p;
                }
            }
            a
        })
        .collect();

    let full: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![full];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(k);
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split_space(&s, m, p)?);
            }
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::DegenerateEigenspace(format!(
            "common eigenspace of dimension {} remains mod {p}",
            s.len()
        )));
    }

    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = spaces
        .into_par_iter()
        .map(|s| lift_character(&cd, &sp, &s[0]))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| compare_rows(&a.1, &b.1, a.0, b.0));
    let (degrees, values) = rows.into_iter().unzip();
    Ok(CharacterTable {
        group: g.clone(),
        classes: cd,
        values,
        degrees,
    })
}

/// Splits an invariant subspace (given by RREF basis rows) into the
/// eigenspaces of `m` restricted to it.
fn split_space(basis: &[Vec<u64>], m: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|w| w.iter().position(|&x| x != 0).unwrap())
        .collect();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|w| {
            m.iter()
                .map(|row| {
                    row.iter()
                        .zip(w)
                        .fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, p)) % p)
                })
                .collect()
        })
        .collect();
    // restricted[s][r] is the coordinate of M w_r along w_s.
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|s| (0..d).map(|r| images[r][pivots[s]]).collect())
        .collect();
    let lambdas = roots(&charpoly(&restricted, p), p);
    if lambdas.len() == 1 {
        return Ok(vec![basis.to_vec()]);
    }
    let mut parts = Vec::with_capacity(lambdas.len());
    let mut total = 0;
    for lambda in lambdas {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(s, row)| {
                row.iter()
                    .enumerate()
                    .map(|(r, &x)| if r == s { (x + p - lambda) % p } else { x })
                    .collect()
            })
            .collect();
        let mut vecs: Vec<Vec<u64>> = nullspace(&shifted, p)
            .into_iter()
            .map(|x| {
                let mut v = vec![0u64; basis[0].len()];
                for (xr, w) in x.iter().zip(basis) {
                    if *xr != 0 {
                        for (vi, wi) in v.iter_mut().zip(w) {
                            *vi = (*vi + mul_mod(*xr, *wi, p)) % p;
                        }
                    }
                }
                v
            })
            .collect();
        rref(&mut vecs, p);
        total += vecs.len();
        parts.push(vecs);
    }
    if total != d {
        return Err(Error::DegenerateEigenspace(format!(
            "class matrix not diagonalisable mod {p} on a space of dimension {d}"
        )));
    }
    Ok(parts)
}

/// Recovers the degree and exact values of the character whose central
/// character is proportional to `v`.
fn lift_character(cd: &ClassData, sp: &SplitPrime, v: &[u64]) -> Result<(u64, Vec<Cyclotomic>)> {
    let p = sp.p;
    let order = cd.group_order();
    let k = cd.len();
    if v[0] == 0 {
        return Err(Error::DegenerateEigenspace(
            "central character vanishes at the identity".into(),
        ));
    }
    let scale = inv_mod(v[0], p);
    let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, scale, p)).collect();
    let size_inv: Vec<u64> = cd
        .classes()
        .iter()
        .map(|c| inv_mod(c.size % p, p))
        .collect();

    let mut norm = 0u64;
    for j in 0..k {
        let t = mul_mod(omega[j], omega[cd.inverse_class(j)], p);
        norm = (norm + mul_mod(t, size_inv[j], p)) % p;
    }
    if norm == 0 {
        return Err(Error::DegenerateEigenspace(
            "zero norm of central character".into(),
        ));
    }
    let d2 = mul_mod(order % p, inv_mod(norm, p), p);
    let degree = (1..=order)
        .take_while(|d| d * d <= order)
        .find(|&d| d * d % p == d2)
        .ok_or_else(|| Error::DegenerateEigenspace("no admissible degree".into()))?;

    let chi_mod: Vec<u64> = (0..k)
        .map(|j| mul_mod(mul_mod(omega[j], degree % p, p), size_inv[j], p))
        .collect();

    let mut values = Vec::with_capacity(k);
    for j in 0..k {
        let m = cd.class(j).element_order;
        let zm = pow_mod(sp.root, sp.exponent / m, p);
        let zpow: Vec<u64> = (0..m).map(|t| pow_mod(zm, t, p)).collect();
        let m_inv = inv_mod(m % p, p);
        let mut terms = Vec::new();
        let mut total = 0u64;
        for s in 0..m {
            let mut acc = 0u64;
            for t in 0..m {
                let chi_t = chi_mod[cd.power(j, t as i64)];
                let e = (m - (s * t) % m) % m;
                acc = (acc + mul_mod(chi_t, zpow[e as usize], p)) % p;
            }
            let mu = mul_mod(acc, m_inv, p);
            if mu > degree {
                return Err(Error::DegenerateEigenspace(format!(
                    "eigenvalue multiplicity {mu} exceeds degree {degree}"
                )));
            }
            total += mu;
            if mu > 0 {
                terms.push((s as i64, Rational::from_integer(mu.into())));
            }
        }
        if total != degree {
            return Err(Error::DegenerateEigenspace(format!(
                "eigenvalue multiplicities sum to {total}, not {degree}"
            )));
        }
        values.push(Cyclotomic::from_powers(m, terms));
    }
    Ok((degree, values))
}

fn compare_values(a: &Cyclotomic, b: &Cyclotomic) -> Ordering {
    a.modulus()
        .cmp(&b.modulus())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

fn is_trivial_row(row: &[Cyclotomic]) -> bool {
    row.iter().all(|v| v.is_one())
}

fn compare_rows(a: &[Cyclotomic], b: &[Cyclotomic], da: u64, db: u64) -> Ordering {
    is_trivial_row(b)
        .cmp(&is_trivial_row(a))
        .then(da.cmp(&db))
        .then_with(|| {
            a.iter()
                .zip(b)
                .map(|(x, y)| compare_values(x, y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// First failure found by [`CharacterTable::verify_orthogonality`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Shape(String),
    Row {
        chi: usize,
        psi: usize,
        value: Cyclotomic,
    },
    Column {
        i: usize,
        j: usize,
        value: Cyclotomic,
    },
    DegreeSum {
        sum: u64,
        order: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(msg) => write!(f, "malformed table: {msg}"),
            Violation::Row { chi, psi, value } => {
                write!(f, "rows {chi} and {psi} have inner product {value}")
            }
            Violation::Column { i, j, value } => {
                write!(f, "columns {i} and {j} have inner product {value}")
            }
            Violation::DegreeSum { sum, order } => {
                write!(f, "squared degrees sum to {sum}, group order is {order}")
            }
        }
    }
}

impl CharacterTable {
    /// Assembles a table from given values (rows are characters), checking
    /// only the shape and that the first column holds positive integers.
    pub fn from_parts(group: &PermGroup, values: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let classes = conjugacy_classes(group);
        let k = classes.len();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidTable(format!("expected a {k} x {k} table")));
        }
        let degrees = values
            .iter()
            .map(|row| {
                row[0]
                    .to_rational()
                    .filter(|r| r.is_integer() && r.is_positive())
                    .and_then(|r| u64::try_from(r.to_integer()).ok())
                    .ok_or_else(|| Error::InvalidTable(format!("bad degree {}", row[0])))
            })
            .collect::<Result<_>>()?;
        Ok(CharacterTable {
            group: group.clone(),
            classes,
            values,
            degrees,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    /// Number of irreducible characters.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn row(&self, chi: usize) -> &[Cyclotomic] {
        &self.values[chi]
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.values[chi][class]
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    /// True iff the `p`-part of `chi(1)` equals the `p`-part of `|G|`.
    pub fn p_defect_zero(&self, chi: usize, p: u64) -> bool {
        p_part(self.degrees[chi], p) == p_part(self.group.order(), p)
    }

    /// Index of a character vanishing on `class`, if any.
    pub fn zero_at(&self, class: usize) -> Option<usize> {
        (0..self.len()).find(|&chi| self.values[chi][class].is_zero())
    }

    /// Checks both orthogonality relations and the degree equation exactly.
    pub fn verify_orthogonality(&self) -> std::result::Result<(), Violation> {
        let k = self.classes.len();
        if self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return Err(Violation::Shape(format!("expected a {k} x {k} table")));
        }
        let order = self.group.order();
        let sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum != order {
            return Err(Violation::DegreeSum { sum, order });
        }
        let sizes: Vec<Rational> = self
            .classes
            .classes()
            .iter()
            .map(|c| Rational::from_integer(c.size.into()))
            .collect();
        let conj: Vec<Vec<Cyclotomic>> = self
            .values
            .iter()
            .map(|r| r.iter().map(Cyclotomic::conjugate).collect())
            .collect();
        let order_q = Rational::from_integer(order.into());
        for chi in 0..k {
            for psi in chi..k {
                let s: Cyclotomic = (0..k)
                    .map(|i| (&self.values[chi][i] * &conj[psi][i]).scale(&sizes[i]))
                    .sum();
                let expected = if chi == psi {
                    order_q.clone()
                } else {
                    Rational::zero()
                };
                if s.to_rational() != Some(expected) {
                    return Err(Violation::Row {
                        chi,
                        psi,
                        value: s.scale(&(Rational::one() / &order_q)),
                    });
                }
            }
        }
        for i in 0..k {
            for j in i..k {
                let s: Cyclotomic = (0..k).map(|chi| &self.values[chi][i] * &conj[chi][j]).sum();
                let expected = if i == j {
                    Rational::from_integer(self.classes.class(i).centralizer_order.into())
                } else {
                    Rational::zero()
                };
                if s.to_rational() != Some(expected) {
                    return Err(Violation::Column { i, j, value: s });
                }
            }
        }
        Ok(())
    }

    /// Classes of prime-power element order on which `chi` vanishes.
    pub fn prime_power_zeros(&self, chi: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| {
                prime_power_base(self.classes.class(c).element_order).is_some()
                    && self.values[chi][c].is_zero()
            })
            .collect()
    }

    pub fn to_json(&self, name: &str) -> TableJson {
        TableJson {
            name: name.to_string(),
            order: self.group.order(),
            exponent: self.classes.exponent(),
            classes: self
                .classes
                .classes()
                .iter()
                .map(|c| ClassJson {
                    rep: c.rep.to_string(),
                    size: c.size,
                    order: c.element_order,
                })
                .collect(),
            degrees: self.degrees.clone(),
            values: self.values.clone(),
        }
    }

    /// Rebuilds a table from its JSON form, checking that the listed
    /// classes match those of `group`.
    pub fn from_json(group: &PermGroup, json: &TableJson) -> Result<Self> {
        let cd = conjugacy_classes(group);
        let same_classes = json.order == group.order()
            && json.classes.len() == cd.len()
            && json.classes.iter().zip(cd.classes()).all(|(a, b)| {
                a.rep == b.rep.to_string() && a.size == b.size && a.order == b.element_order
            });
        if !same_classes {
            return Err(Error::InvalidTable("classes do not match the group".into()));
        }
        let table = Self::from_parts(group, json.values.clone())?;
        if table.degrees != json.degrees {
            return Err(Error::InvalidTable("degrees do not match values".into()));
        }
        Ok(table)
    }
}

impl fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacterTable")
            .field("order", &self.group.order())
            .field("degrees", &self.degrees)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub rep: String,
    pub size: u64,
    pub order: u64,
}

/// Serialised character table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassJson>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Cyclotomic>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse(s, n).unwrap())
            .collect();
        build_group(&gens).unwrap()
    }

    fn int(k: i64) -> Cyclotomic {
        Cyclotomic::from_integer(k)
    }

    #[test]
    fn s3_class_matrices() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let cd = conjugacy_classes(&s3);
        // classes: identity, 3-cycles, transpositions
        let a = class_matrix(&cd, 2);
        assert_eq!(a[2][0], 3);
        let id = class_matrix(&cd, 0);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(id[j][k], u64::from(j == k));
            }
        }
        for i in 0..3 {
            let a = class_matrix(&cd, i);
            for j in 0..3 {
                let total: u64 = (0..3).map(|k| cd.class(k).size * a[j][k]).sum();
                assert_eq!(total, cd.class(i).size * cd.class(j).size);
            }
        }
    }

    #[test]
    fn s3_table() {
        let s3 = group(&["(1 2)", "(1 2 3)"], 3);
        let t = irreducible_characters(&s3).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(t.row(2), &[int(2), int(-1), int(0)]);
        assert_eq!(t.row(1), &[int(1), int(1), int(-1)]);
        assert!(t.verify_orthogonality().is_ok());
        assert!(t.p_defect_zero(2, 2));
        assert!(!t.p_defect_zero(1, 2));
    }

    #[test]
    fn q8_table() {
        let q8 = group(&["(1 2 5 6)(3 8 7 4)", "(1 3 5 7)(2 4 6 8)"], 8);
        assert_eq!(q8.order(), 8);
        let t = irreducible_characters(&q8).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        assert_eq!(t.row(4), &[int(2), int(-2), int(0), int(0), int(0)]);
        assert!(t.verify_orthogonality().is_ok());
    }

    #[test]
    fn perturbed_table_fails() {
        let s4 = group(&["(1 2)", "(1 2 3 4)"], 4);
        let t = irreducible_characters(&s4).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2, 3, 3]);
        assert!(t.verify_orthogonality().is_ok());
        let mut values = t.values().to_vec();
        values[3][2] = &values[3][2] + &int(1);
        let bad = CharacterTable::from_parts(&s4, values).unwrap();
        assert!(matches!(
            bad.verify_orthogonality(),
            Err(Violation::Row { chi: 0, psi: 3, .. })
        ));
    }

    #[test]
    fn trivial_group_table() {
        let g = group(&["()"], 3);
        let t = irreducible_characters(&g).unwrap();
        assert_eq!(t.degrees(), &[1]);
        assert!(t.verify_orthogonality().is_ok());
    }

    #[test]
    fn cyclic_values_are_roots_of_unity() {
        let c5 = group(&["(1 2 3 4 5)"], 5);
        let t = irreducible_characters(&c5).unwrap();
        assert_eq!(t.len(), 5);
        assert!(t.verify_orthogonality().is_ok());
        assert!(t.value(1, 1).to_rational().is_none());
    }

    #[test]
    fn json_round_trip() {
        let g = group(&["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"], 7);
        let t = irreducible_characters(&g).unwrap();
        let json = serde_json::to_string(&t.to_json("F21")).unwrap();
        let back: TableJson = serde_json::from_str(&json).unwrap();
        let t2 = CharacterTable::from_json(&g, &back).unwrap();
        assert_eq!(t2.values(), t.values());
    }
}
