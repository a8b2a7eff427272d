//! Conjugacy classes by enumeration, with element-to-class lookup and
//! power maps.

use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{gcd, lcm};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Lexicographically least element of the class.
    pub rep: Permutation,
    pub size: u64,
    pub element_order: u64,
    pub centralizer_order: u64,
}

/// Classes of a group in canonical order together with the lookup tables
/// needed by the character table and class-function code.
#[derive(Debug)]
pub struct ClassData {
    order: u64,
    classes: Vec<ConjugacyClass>,
    elements: Arc<Vec<Permutation>>,
    position: HashMap<Permutation, u32>,
    element_class: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// `power_maps[i][t]` is the class of `rep_i^t` for `0 <= t < ord(rep_i)`.
    power_maps: Vec<Vec<u32>>,
    exponent: u64,
}

/// Conjugacy classes of `g`, memoised on the group.
///
/// Classes are sorted by size, then element order, then representative
/// image sequence, so class 0 is the identity.
pub fn conjugacy_classes(g: &PermGroup) -> Arc<ClassData> {
    g.class_info(|| ClassData::compute(g))
}

impl ClassData {
    fn compute(g: &PermGroup) -> ClassData {
        let elements = g.elements();
        let n = elements.len();
        let position: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();

        let mut assigned = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if assigned[start] != u32::MAX {
                continue;
            }
            let c = raw.len() as u32;
            assigned[start] = c;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let x = &elements[orbit[head] as usize];
                head += 1;
                for t in g.generators() {
                    let y = position[&x.conjugate_by(t)];
                    if assigned[y as usize] == u32::MAX {
                        assigned[y as usize] = c;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }

        let order = g.order();
        let mut keyed: Vec<(u64, u64, Vec<u32>)> = raw
            .into_iter()
            .map(|m| {
                let ord = elements[m[0] as usize].order();
                (m.len() as u64, ord, m)
            })
            .collect();
        // Representatives are the least members and distinct classes have
        // distinct least members, so comparing them by index suffices.
        keyed.sort_by(|a, b| (a.0, a.1, a.2[0]).cmp(&(b.0, b.1, b.2[0])));

        let mut element_class = vec![0u32; n];
        let mut classes = Vec::with_capacity(keyed.len());
        let mut members = Vec::with_capacity(keyed.len());
        for (ci, (size, ord, m)) in keyed.into_iter().enumerate() {
            for &e in &m {
                element_class[e as usize] = ci as u32;
            }
            classes.push(ConjugacyClass {
                rep: elements[m[0] as usize].clone(),
                size,
                element_order: ord,
                centralizer_order: order / size,
            });
            members.push(m);
        }

        let exponent = classes.iter().fold(1, |e, c| lcm(e, c.element_order));
        let power_maps = classes
            .iter()
            .map(|c| {
                let mut row = Vec::with_capacity(c.element_order as usize);
                let mut x = g.identity();
                for _ in 0..c.element_order {
                    row.push(element_class[position[&x] as usize]);
                    x = &x * &c.rep;
                }
                row
            })
            .collect();

        ClassData {
            order,
            classes,
            elements,
            position,
            element_class,
            members,
            power_maps,
            exponent,
        }
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Group elements in ascending order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Position of `x` in [`elements`](Self::elements), if it is in the group.
    pub fn position(&self, x: &Permutation) -> Option<usize> {
        self.position.get(x).map(|&i| i as usize)
    }

    pub fn class_of(&self, x: &Permutation) -> Option<usize> {
        self.position(x).map(|i| self.element_class[i] as usize)
    }

    /// Class of the element at position `i`.
    pub fn class_at(&self, i: usize) -> usize {
        self.element_class[i] as usize
    }

    pub fn members(&self, i: usize) -> impl Iterator<Item = &Permutation> + '_ {
        self.members[i].iter().map(|&e| &self.elements[e as usize])
    }

    /// Class of `rep_i^t`; negative `t` allowed.
    pub fn power(&self, i: usize, t: i64) -> usize {
        let row = &self.power_maps[i];
        row[t.rem_euclid(row.len() as i64) as usize] as usize
    }

    /// The map `i -> class of rep_i^t` on class indices.
    pub fn power_map(&self, t: i64) -> Vec<usize> {
        (0..self.len()).map(|i| self.power(i, t)).collect()
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.power(i, -1)
    }

    /// Classes whose element order is a power of `p`, identity included.
    pub fn p_element_classes(&self, p: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let mut o = self.classes[i].element_order;
                while o.is_multiple_of(p) {
                    o /= p;
                }
                o == 1
            })
            .collect()
    }

    /// Element order of `rep^t`, from the order of `rep`.
    pub fn power_order(&self, i: usize, t: i64) -> u64 {
        let o = self.classes[i].element_order;
        o / gcd(o, t.rem_euclid(o as i64) as u64)
    }
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

    #[test]
    fn s4_classes() {
        let g = group(&["(1 2)", "(1 2 3 4)"], 4);
        let cd = conjugacy_classes(&g);
        let sizes: Vec<u64> = cd.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let orders: Vec<u64> = cd.classes().iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 2, 4, 3]);
        assert!(cd.class(0).rep.is_identity());
        assert_eq!(cd.exponent(), 12);
        for c in cd.classes() {
            assert_eq!(c.size * c.centralizer_order, 24);
        }
        // (1 2 3 4)^2 is a double transposition.
        assert_eq!(cd.power(3, 2), 1);
        assert_eq!(cd.power_map(1), vec![0, 1, 2, 3, 4]);
        assert_eq!(cd.power_map(-1), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn power_maps_compose() {
        let g = group(&["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"], 7);
        let cd = conjugacy_classes(&g);
        assert_eq!(cd.len(), 5);
        let e = cd.exponent() as i64;
        for s in 0..e {
            for t in 0..e {
                let ps = cd.power_map(s);
                let pt = cd.power_map(t);
                let composed: Vec<usize> = ps.iter().map(|&i| pt[i]).collect();
                assert_eq!(composed, cd.power_map((s * t) % e));
            }
        }
        for i in 0..cd.len() {
            for t in 0..e {
                let j = cd.power(i, t);
                assert_eq!(cd.class(j).element_order, cd.power_order(i, t));
            }
        }
    }
}
