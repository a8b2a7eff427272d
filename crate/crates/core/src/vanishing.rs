//! Vanishing classes: classes on which some irreducible character is zero.

use crate::arith::prime_power_base;
use crate::chartable::CharacterTable;
use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::group::{is_normal, PermGroup};

/// Per-class vanishing data of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingProfile {
    pub vanishing: Vec<bool>,
    /// For each vanishing class, the first irreducible that is zero there.
    pub witness: Vec<Option<usize>>,
    pub element_order: Vec<u64>,
    pub size: Vec<u64>,
    pub prime_power_order: Vec<bool>,
}

impl VanishingProfile {
    pub fn vanishing_classes(&self) -> Vec<usize> {
        (0..self.vanishing.len())
            .filter(|&i| self.vanishing[i])
            .collect()
    }

    pub fn nonvanishing_classes(&self) -> Vec<usize> {
        (0..self.vanishing.len())
            .filter(|&i| !self.vanishing[i])
            .collect()
    }
}

pub fn vanishing_profile(table: &CharacterTable) -> VanishingProfile {
    let cd = table.classes();
    let witness: Vec<Option<usize>> = (0..cd.len()).map(|c| table.zero_at(c)).collect();
    VanishingProfile {
        vanishing: witness.iter().map(Option::is_some).collect(),
        witness,
        element_order: cd.classes().iter().map(|c| c.element_order).collect(),
        size: cd.classes().iter().map(|c| c.size).collect(),
        prime_power_order: cd
            .classes()
            .iter()
            .map(|c| prime_power_base(c.element_order).is_some())
            .collect(),
    }
}

/// A vanishing class of `G` inside a normal subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingClass {
    pub class: usize,
    pub size: u64,
    pub element_order: u64,
    pub witness: usize,
}

/// Classes of `G` contained in the normal subgroup `n`.
pub fn classes_in(table: &CharacterTable, n: &PermGroup) -> Result<Vec<usize>> {
    if !is_normal(table.group(), n)? {
        return Err(Error::NotNormal);
    }
    let cd = table.classes();
    Ok((0..cd.len())
        .filter(|&i| n.contains(&cd.class(i).rep))
        .collect())
}

/// The vanishing classes of `G` lying in `n`, i.e. `n ∩ Van(G)` by class.
pub fn vanishing_in_subgroup(table: &CharacterTable, n: &PermGroup) -> Result<Vec<VanishingClass>> {
    let cd = table.classes();
    Ok(classes_in(table, n)?
        .into_iter()
        .filter_map(|i| {
            table.zero_at(i).map(|w| VanishingClass {
                class: i,
                size: cd.class(i).size,
                element_order: cd.class(i).element_order,
                witness: w,
            })
        })
        .collect())
}

/// True iff no `p`-element of `n` is a vanishing element of `G`.
pub fn nonvanishing_p_elements(table: &CharacterTable, n: &PermGroup, p: u64) -> Result<bool> {
    let cd = table.classes();
    Ok(classes_in(table, n)?
        .into_iter()
        .filter(|&i| prime_power_base(cd.class(i).element_order) == Some(p))
        .all(|i| table.zero_at(i).is_none()))
}

/// Classes whose element order is a prime power; the identity class is
/// included only when asked for.
pub fn prime_power_order_classes(classes: &ClassData, include_identity: bool) -> Vec<usize> {
    (0..classes.len())
        .filter(|&i| {
            let o = classes.class(i).element_order;
            (include_identity && o == 1) || prime_power_base(o).is_some()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::irreducible_characters;
    use crate::classes::conjugacy_classes;
    use crate::group::{build_group, normal_closure};
    use crate::perm::Permutation;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn s3_and_q8_profiles() {
        let s3 = build_group(&[p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap();
        let prof = vanishing_profile(&irreducible_characters(&s3).unwrap());
        assert_eq!(prof.vanishing, vec![false, false, true]);
        assert_eq!(prof.witness[2], Some(2));

        let q8 = build_group(&[p("(1 2 5 6)(3 8 7 4)", 8), p("(1 3 5 7)(2 4 6 8)", 8)]).unwrap();
        let t = irreducible_characters(&q8).unwrap();
        let prof = vanishing_profile(&t);
        assert_eq!(prof.vanishing_classes(), vec![2, 3, 4]);
        let c4 = q8.generate(&[p("(1 2 5 6)(3 8 7 4)", 8)]).unwrap();
        let van = vanishing_in_subgroup(&t, &c4).unwrap();
        assert_eq!(van.len(), 1);
        assert_eq!(van[0].size, 2);
    }

    #[test]
    fn p_element_scans() {
        let s4 = build_group(&[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        let t = irreducible_characters(&s4).unwrap();
        let a4 = normal_closure(&s4, &[p("(1 2 3)", 4)]).unwrap();
        assert!(nonvanishing_p_elements(&t, &a4, 2).unwrap());
        assert!(!nonvanishing_p_elements(&t, &a4, 3).unwrap());
        let one = PermGroup::trivial(4, s4.limits());
        assert!(nonvanishing_p_elements(&t, &one, 2).unwrap());
        let not_normal = s4.generate(&[p("(1 2)", 4)]).unwrap();
        assert_eq!(
            nonvanishing_p_elements(&t, &not_normal, 2),
            Err(Error::NotNormal)
        );
        assert_eq!(
            prime_power_order_classes(&conjugacy_classes(&s4), false).len(),
            4
        );
        assert_eq!(
            prime_power_order_classes(&conjugacy_classes(&s4), true).len(),
            5
        );
    }

    #[test]
    fn s5_three_cycles_vanish() {
        let s5 = build_group(&[p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
        let t = irreducible_characters(&s5).unwrap();
        let a5 = normal_closure(&s5, &[p("(1 2 3)", 5)]).unwrap();
        let van = vanishing_in_subgroup(&t, &a5).unwrap();
        let threes: Vec<_> = van.iter().filter(|v| v.element_order == 3).collect();
        assert_eq!(threes.len(), 1);
        assert_eq!(threes[0].size, 20);
        assert!(!nonvanishing_p_elements(&t, &a5, 3).unwrap());
        let cd = conjugacy_classes(&s5);
        let six = cd.class_of(&p("(1 2)(3 4 5)", 5)).unwrap();
        assert!(!prime_power_order_classes(&cd, false).contains(&six));
    }
}
