//! Permutation groups backed by a base and strong generating set.
//!
//! The stabiliser chain is built with the deterministic Schreier-Sims
//! algorithm; all subgroups produced here are immutable after construction.
//! Element lists and conjugacy classes are memoised on first use.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Resource limits applied to a group and every group derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order that may be built (and hence enumerated).
    pub enumeration_cap: u64,
    /// Largest index allowed for a coset-action quotient.
    pub quotient_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: 1_000_000,
            quotient_cap: 100_000,
        }
    }
}

#[derive(Clone)]
struct Level {
    point: usize,
    strong: Vec<Permutation>,
    /// `(u, u^-1)` with `point^u = beta`, indexed by `beta`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, point: usize, strong: Vec<Permutation>) -> Self {
        let mut level = Level {
            point,
            strong,
            transversal: Vec::new(),
            orbit: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<(Permutation, Permutation)>> = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[self.point] = Some((id.clone(), id));
        let mut orbit = vec![self.point];
        let mut head = 0;
        while head < orbit.len() {
            let beta = orbit[head];
            head += 1;
            for s in &self.strong {
                let gamma = s.image(beta);
                if transversal[gamma].is_none() {
                    let u = &transversal[beta].as_ref().unwrap().0 * s;
                    let inv = u.inverse();
                    transversal[gamma] = Some((u, inv));
                    orbit.push(gamma);
                }
            }
        }
        orbit.sort_unstable();
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

#[derive(Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, base_hint: &[usize], gens: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = base_hint.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let strong = gens
                    .iter()
                    .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                    .cloned()
                    .collect();
                Level::new(degree, b, strong)
            })
            .collect();
        // Drop trailing hint levels that carry no generators.
        while levels.last().is_some_and(|l| l.strong.is_empty()) {
            levels.pop();
        }

        let mut chain = StabChain { degree, levels };
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            match chain.find_failing_schreier_generator(i as usize) {
                None => i -= 1,
                Some((h, j)) => {
                    let lvl = i as usize;
                    if j == chain.levels.len() {
                        let point = h.first_moved().unwrap();
                        chain.levels.push(Level::new(degree, point, Vec::new()));
                    }
                    for l in lvl + 1..=j {
                        chain.levels[l].strong.push(h.clone());
                        chain.levels[l].rebuild(degree);
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    /// Checks every Schreier generator of level `i` against the levels
    /// below it; returns the first residue that does not sift through,
    /// together with the level at which sifting stopped.
    fn find_failing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &beta in &level.orbit {
            let u_beta = &level.transversal[beta].as_ref().unwrap().0;
            for s in &level.strong {
                let gamma = s.image(beta);
                let (u_gamma, u_gamma_inv) = level.transversal[gamma].as_ref().unwrap();
                let us = u_beta * s;
                if &us == u_gamma {
                    continue;
                }
                let h = &us * u_gamma_inv;
                let (residue, j) = self.sift(&h, i + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.point);
            match &level.transversal[beta] {
                None => return (h, j),
                Some((_, inv)) => h = &h * inv,
            }
        }
        (h, self.levels.len())
    }

    fn contains(&self, g: &Permutation) -> bool {
        let (residue, j) = self.sift(g, 0);
        j == self.levels.len() && residue.is_identity()
    }

    fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for h in &elems {
                for &beta in &level.orbit {
                    next.push(h * &level.transversal[beta].as_ref().unwrap().0);
                }
            }
            elems = next;
        }
        elems
    }
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
    limits: Limits,
    elements: OnceLock<Arc<Vec<Permutation>>>,
    classes: OnceLock<Arc<ClassData>>,
}

/// A finite permutation group with verified order and membership test.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupInner>,
}

/// Builds the group generated by `generators` with default limits.
pub fn build_group(generators: &[Permutation]) -> Result<PermGroup> {
    PermGroup::from_generators(generators, Limits::default())
}

impl PermGroup {
    pub fn from_generators(generators: &[Permutation], limits: Limits) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Self::build(degree, generators.to_vec(), &[], limits)
    }

    pub fn trivial(degree: usize, limits: Limits) -> Self {
        Self::build(degree, Vec::new(), &[], limits).expect("trivial group is within any cap")
    }

    fn build(
        degree: usize,
        generators: Vec<Permutation>,
        base_hint: &[usize],
        limits: Limits,
    ) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let chain = StabChain::new(degree, base_hint, &gens);
        let order = chain.order();
        if order > limits.enumeration_cap as u128 {
            return Err(Error::CapExceeded {
                what: "group order",
                size: order.min(u64::MAX as u128) as u64,
                cap: limits.enumeration_cap,
            });
        }
        Ok(PermGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators: gens,
                chain,
                order: order as u64,
                limits,
                elements: OnceLock::new(),
                classes: OnceLock::new(),
            }),
        })
    }

    /// Subgroup generated by `generators`, inheriting this group's limits.
    /// Membership of the generators is not checked.
    pub fn generate(&self, generators: &[Permutation]) -> Result<PermGroup> {
        Self::build(self.degree(), generators.to_vec(), &[], self.limits())
    }

    /// The group generated by this group together with `extra`.
    pub fn extended_by(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.inner.generators.clone();
        gens.extend(extra.iter().cloned());
        let base: Vec<usize> = self.inner.chain.levels.iter().map(|l| l.point).collect();
        Self::build(self.degree(), gens, &base, self.limits())
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn limits(&self) -> Limits {
        self.inner.limits
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.inner.chain.levels.iter().map(|l| l.point).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree() && self.inner.chain.contains(g)
    }

    /// All elements in ascending lexicographic order of image sequences.
    pub fn elements(&self) -> Arc<Vec<Permutation>> {
        self.inner
            .elements
            .get_or_init(|| {
                let mut e = self.inner.chain.elements();
                e.sort_unstable();
                Arc::new(e)
            })
            .clone()
    }

    pub(crate) fn class_info(&self, init: impl FnOnce() -> ClassData) -> Arc<ClassData> {
        self.inner.classes.get_or_init(|| Arc::new(init())).clone()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.contains(g))
    }

    /// Equality as subsets of the symmetric group.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Subgroup formed by the elements satisfying `keep`, which the caller
    /// guarantees to be closed under multiplication. Generators are picked
    /// greedily in ascending element order.
    pub fn subgroup_where(&self, mut keep: impl FnMut(&Permutation) -> bool) -> PermGroup {
        let mut sub = PermGroup::trivial(self.degree(), self.limits());
        for g in self.elements().iter() {
            if !sub.contains(g) && keep(g) {
                sub = sub
                    .extended_by(std::slice::from_ref(g))
                    .expect("subgroup of a capped group is capped");
            }
        }
        sub
    }

    fn check_member(&self, x: &Permutation) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInGroup(x.to_string()))
        }
    }

    fn check_subgroup(&self, h: &PermGroup) -> Result<()> {
        if h.is_subgroup_of(self) {
            Ok(())
        } else {
            Err(Error::NotSubgroup)
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// `C_G(x)`.
pub fn centralizer(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    g.check_member(x)?;
    Ok(g.subgroup_where(|y| y.commutes_with(x)))
}

/// Smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> Result<PermGroup> {
    for x in s {
        g.check_member(x)?;
    }
    let mut n = PermGroup::trivial(g.degree(), g.limits());
    let mut queue = Vec::new();
    for x in s {
        if !n.contains(x) {
            n = n.extended_by(std::slice::from_ref(x))?;
            queue.push(x.clone());
        }
    }
    while let Some(y) = queue.pop() {
        for t in g.generators() {
            let c = y.conjugate_by(t);
            if !n.contains(&c) {
                n = n.extended_by(std::slice::from_ref(&c))?;
                queue.push(c);
            }
        }
    }
    Ok(n)
}

/// True iff `h` is normalised by `g`; errors if `h` is not a subgroup.
pub fn is_normal(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    g.check_subgroup(h)?;
    Ok(g.generators().iter().all(|t| {
        h.generators()
            .iter()
            .all(|x| h.contains(&x.conjugate_by(t)))
    }))
}

/// `N_G(H)`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    g.check_subgroup(h)?;
    Ok(g.subgroup_where(|t| {
        h.generators()
            .iter()
            .all(|x| h.contains(&x.conjugate_by(t)))
    }))
}

pub fn intersection(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (small, large) = if a.order() <= b.order() {
        (a, b)
    } else {
        (b, a)
    };
    small.subgroup_where(|x| large.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn closure_oracle(gens: &[Permutation]) -> HashSet<Permutation> {
        let mut set: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(gens[0].degree());
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = &x * g;
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn orders_of_small_groups() {
        let s4 = build_group(&[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(s4.order(), 24);
        let a5 = build_group(&[p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)]).unwrap();
        assert_eq!(a5.order(), 60);
        let s7 = build_group(&[p("(1 2)", 7), p("(1 2 3 4 5 6 7)", 7)]).unwrap();
        assert_eq!(s7.order(), 5040);
        let trivial = build_group(&[Permutation::identity(3)]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.elements().len(), 1);
    }

    #[test]
    fn membership_matches_closure() {
        let gens = vec![p("(1 2 3)(4 5 6)", 8), p("(1 4)(2 7)(3 8)", 8)];
        let g = build_group(&gens).unwrap();
        let oracle = closure_oracle(&gens);
        assert_eq!(g.order() as usize, oracle.len());
        let elems: HashSet<Permutation> = g.elements().iter().cloned().collect();
        assert_eq!(elems, oracle);
        let s8 = build_group(&[p("(1 2)", 8), p("(1 2 3 4 5 6 7 8)", 8)]).unwrap();
        for x in s8.elements().iter().step_by(97) {
            assert_eq!(g.contains(x), oracle.contains(x));
        }
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_group(&[]).unwrap_err(), Error::NoGenerators);
        assert!(matches!(
            build_group(&[p("(1 2)", 2), p("(1 2)", 3)]),
            Err(Error::DegreeMismatch(2, 3))
        ));
        let limits = Limits {
            enumeration_cap: 100,
            quotient_cap: 10,
        };
        assert!(matches!(
            PermGroup::from_generators(&[p("(1 2)", 5), p("(1 2 3 4 5)", 5)], limits),
            Err(Error::CapExceeded { size: 120, .. })
        ));
    }

    #[test]
    fn centralizers_and_closures() {
        let s4 = build_group(&[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(centralizer(&s4, &p("(1 2 3 4)", 4)).unwrap().order(), 4);
        assert_eq!(centralizer(&s4, &s4.identity()).unwrap().order(), 24);
        assert!(centralizer(&s4, &p("(1 5)", 5)).is_err());
        let a4 = normal_closure(&s4, &[p("(1 2 3)", 4)]).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(is_normal(&s4, &a4).unwrap());
        let t = s4.generate(&[p("(1 2)", 4)]).unwrap();
        assert!(!is_normal(&s4, &t).unwrap());
        let c3 = s4.generate(&[p("(1 2 3)", 4)]).unwrap();
        assert_eq!(normalizer(&s4, &c3).unwrap().order(), 6);
        assert_eq!(normalizer(&s4, &s4).unwrap().order(), 24);
        let v4 = s4
            .generate(&[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)])
            .unwrap();
        assert_eq!(normalizer(&s4, &v4).unwrap().order(), 24);
        assert_eq!(intersection(&a4, &t).order(), 1);
        let not_sub = build_group(&[p("(1 2)", 5)]).unwrap();
        assert_eq!(is_normal(&s4, &not_sub), Err(Error::NotSubgroup));
    }
}
