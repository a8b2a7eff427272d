//! Class functions: induction, restriction, inner products, constituents,
//! inflation and kernels.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::chartable::CharacterTable;
use crate::classes::{conjugacy_classes, ClassData};
use crate::error::{Error, Result};
use crate::group::{normal_closure, PermGroup};
use crate::quotient::Quotient;
use crate::{Cyclotomic, Rational};

/// A function on the conjugacy classes of a group, in canonical class
/// order.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: PermGroup,
    classes: Arc<ClassData>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &PermGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        let classes = conjugacy_classes(group);
        if values.len() != classes.len() {
            return Err(Error::InvalidTable(format!(
                "{} values for {} classes",
                values.len(),
                classes.len()
            )));
        }
        Ok(ClassFunction {
            group: group.clone(),
            classes,
            values,
        })
    }

    pub fn trivial(group: &PermGroup) -> Self {
        let k = conjugacy_classes(group).len();
        Self::new(group, vec![Cyclotomic::one(); k]).unwrap()
    }

    /// The character of the regular representation.
    pub fn regular(group: &PermGroup) -> Self {
        let k = conjugacy_classes(group).len();
        let mut values = vec![Cyclotomic::zero(); k];
        values[0] = Cyclotomic::from_integer(group.order() as i64);
        Self::new(group, values).unwrap()
    }

    /// Row `chi` of a character table.
    pub fn irreducible(table: &CharacterTable, chi: usize) -> Self {
        ClassFunction {
            group: table.group().clone(),
            classes: table.classes().clone(),
            values: table.row(chi).to_vec(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    pub fn is_zero_at(&self, class: usize) -> bool {
        self.values[class].is_zero()
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            classes: self.classes.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, r: &Rational) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    fn check_same_group(&self, other: &ClassFunction) -> Result<()> {
        if Arc::ptr_eq(&self.classes, &other.classes) || self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Positive integer degree, or an error if this cannot be a character.
    pub fn character_degree(&self) -> Result<u64> {
        self.values[0]
            .to_rational()
            .filter(|r| r.is_integer() && r.is_positive())
            .and_then(|r| u64::try_from(r.to_integer()).ok())
            .ok_or_else(|| Error::NotCharacter(format!("value {} at the identity", self.values[0])))
    }
}

/// For each class of `h`, the class of `g` containing its representative.
pub fn fusion_map(g: &PermGroup, h: &PermGroup) -> Result<Vec<usize>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let cg = conjugacy_classes(g);
    let ch = conjugacy_classes(h);
    Ok(ch
        .classes()
        .iter()
        .map(|c| {
            cg.class_of(&c.rep)
                .expect("subgroup element lies in the group")
        })
        .collect())
}

/// `beta^G` for a class function `beta` of a subgroup `H`.
pub fn induce(g: &PermGroup, beta: &ClassFunction) -> Result<ClassFunction> {
    let h = beta.group();
    let fusion = fusion_map(g, h)?;
    let cg = conjugacy_classes(g);
    let mut sums = vec![Cyclotomic::zero(); cg.len()];
    for (c, &i) in fusion.iter().enumerate() {
        let w = Rational::new(1.into(), beta.classes.class(c).centralizer_order.into());
        sums[i] = &sums[i] + &beta.values[c].scale(&w);
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.scale(&Rational::from_integer(
                cg.class(i).centralizer_order.into(),
            ))
        })
        .collect();
    ClassFunction::new(g, values)
}

/// `chi_H` for a class function `chi` of `G` and a subgroup `H`.
pub fn restrict(h: &PermGroup, chi: &ClassFunction) -> Result<ClassFunction> {
    let fusion = fusion_map(chi.group(), h)?;
    ClassFunction::new(h, fusion.iter().map(|&i| chi.values[i].clone()).collect())
}

/// `[f, g] = |G|^-1 sum_x f(x) conj(g(x))` as a cyclotomic number.
pub fn inner_product_cyclotomic(f: &ClassFunction, g: &ClassFunction) -> Result<Cyclotomic> {
    f.check_same_group(g)?;
    let s: Cyclotomic = f
        .classes
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            (&f.values[i] * &g.values[i].conjugate()).scale(&Rational::from_integer(c.size.into()))
        })
        .sum();
    Ok(s.scale(&Rational::new(1.into(), f.group.order().into())))
}

/// `[f, g]`, which must be rational (it is for characters).
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational> {
    inner_product_cyclotomic(f, g)?
        .to_rational()
        .ok_or(Error::NotRational)
}

/// Irreducible constituents of the character `f` with their
/// multiplicities, validating that `f` is a character.
pub fn constituents(table: &CharacterTable, f: &ClassFunction) -> Result<Vec<(usize, u64)>> {
    let degree = f.character_degree()?;
    let mut out = Vec::new();
    let mut total = 0u64;
    for chi in 0..table.len() {
        let irr = ClassFunction::irreducible(table, chi);
        let m = inner_product(f, &irr).map_err(|e| match e {
            Error::NotRational => {
                Error::NotCharacter(format!("irrational inner product with row {chi}"))
            }
            e => e,
        })?;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::NotCharacter(format!(
                "inner product {m} with row {chi}"
            )));
        }
        let m = u64::try_from(m.to_integer())
            .map_err(|_| Error::NotCharacter(format!("multiplicity {m} too large")))?;
        if m > 0 {
            total += m * table.degrees()[chi];
            out.push((chi, m));
        }
    }
    if total != degree {
        return Err(Error::NotCharacter(format!(
            "constituents account for degree {total} of {degree}"
        )));
    }
    Ok(out)
}

/// Lifts a class function of `G/N` to `G` along the natural map.
pub fn inflate(q: &Quotient, chibar: &ClassFunction) -> Result<ClassFunction> {
    if !chibar.group().same_as(q.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = q.source();
    let cg = conjugacy_classes(g);
    let values = cg
        .classes()
        .iter()
        .map(|c| {
            let img = q.image_of(&c.rep)?;
            let j = chibar
                .classes
                .class_of(&img)
                .expect("image lies in the quotient");
            Ok(chibar.values[j].clone())
        })
        .collect::<Result<_>>()?;
    ClassFunction::new(g, values)
}

/// `ker chi`, the union of the classes where `chi` takes the value `chi(1)`.
pub fn kernel(chi: &ClassFunction) -> Result<PermGroup> {
    chi.character_degree()?;
    let reps: Vec<_> = (0..chi.classes.len())
        .filter(|&i| chi.values[i] == chi.values[0])
        .map(|i| chi.classes.class(i).rep.clone())
        .collect();
    normal_closure(chi.group(), &reps)
}
