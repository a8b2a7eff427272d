//! Distinguished subgroups: Sylow and Hall subgroups, pi-cores, the
//! Fitting subgroup, the upper pi-series and related structural tests.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::arith::{is_prime, p_part, prime_divisors};
use crate::classes::conjugacy_classes;
use crate::error::{Error, Result};
use crate::group::{normal_closure, PermGroup};
use crate::perm::Permutation;

/// A set of primes `pi`, or its complement `pi'` when `complement` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiSet {
    primes: BTreeSet<u64>,
    complement: bool,
}

impl PiSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if primes.is_empty() {
            return Err(Error::EmptyPrimeSet);
        }
        if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::NotPrime(q));
        }
        Ok(PiSet {
            primes,
            complement: false,
        })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new([p])
    }

    /// `pi'`.
    pub fn complement(&self) -> Self {
        PiSet {
            primes: self.primes.clone(),
            complement: !self.complement,
        }
    }

    pub fn is_complement(&self) -> bool {
        self.complement
    }

    /// The listed primes (those excluded when this is a complement).
    pub fn primes(&self) -> &BTreeSet<u64> {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p) != self.complement
    }

    /// True iff every prime divisor of `n` lies in the set (so 1 qualifies).
    pub fn is_pi_number(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|q| self.contains(q))
    }

    pub fn pi_part(&self, n: u64) -> u64 {
        prime_divisors(n)
            .into_iter()
            .filter(|&q| self.contains(q))
            .map(|q| p_part(n, q))
            .product()
    }

    /// Prime divisors of `n` lying in the set.
    pub fn primes_dividing(&self, n: u64) -> Vec<u64> {
        prime_divisors(n)
            .into_iter()
            .filter(|&q| self.contains(q))
            .collect()
    }

    pub fn is_pi_element(&self, x: &Permutation) -> bool {
        self.is_pi_number(x.order())
    }
}

impl fmt::Display for PiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", list.join(","))?;
        if self.complement {
            write!(f, "'")?;
        }
        Ok(())
    }
}

pub fn is_pi_group(h: &PermGroup, pi: &PiSet) -> bool {
    pi.is_pi_number(h.order())
}

fn is_p_power_order(x: &Permutation, p: u64) -> bool {
    let mut o = x.order();
    while o.is_multiple_of(p) {
        o /= p;
    }
    o == 1
}

/// `Z(G)`.
pub fn center(g: &PermGroup) -> PermGroup {
    let gens = g.generators().to_vec();
    g.subgroup_where(|x| gens.iter().all(|t| t.commutes_with(x)))
}

/// `G'`, the normal closure of the commutators of generator pairs.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let comms: Vec<Permutation> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, a)| gens[i + 1..].iter().map(move |b| a.commutator(b)))
        .filter(|c| !c.is_identity())
        .collect();
    normal_closure(g, &comms).expect("commutators lie in the group")
}

pub fn is_solvable(g: &PermGroup) -> bool {
    let mut h = g.clone();
    while !h.is_trivial() {
        let d = derived_subgroup(&h);
        if d.order() == h.order() {
            return false;
        }
        h = d;
    }
    true
}

/// A Sylow `p`-subgroup, grown by adjoining `p`-elements that normalise
/// the current `p`-subgroup. Trivial when `p` does not divide `|G|`.
pub fn sylow(g: &PermGroup, p: u64) -> PermGroup {
    let target = p_part(g.order(), p);
    let mut sub = PermGroup::trivial(g.degree(), g.limits());
    let elements = g.elements();
    while sub.order() < target {
        let x = elements
            .iter()
            .find(|x| {
                is_p_power_order(x, p)
                    && !sub.contains(x)
                    && sub
                        .generators()
                        .iter()
                        .all(|s| sub.contains(&s.conjugate_by(x)))
            })
            .expect("a p-subgroup below Sylow order has a p-element in its normaliser");
        sub = sub
            .extended_by(std::slice::from_ref(x))
            .expect("subgroup within cap");
    }
    sub
}

/// True iff every Sylow subgroup is normal, tested by counting
/// `p`-elements against the `p`-part of the order.
pub fn is_nilpotent(g: &PermGroup) -> bool {
    let elements = g.elements();
    prime_divisors(g.order()).into_iter().all(|p| {
        let count = elements.iter().filter(|x| is_p_power_order(x, p)).count() as u64;
        count == p_part(g.order(), p)
    })
}

/// Preimage in `G` of `O_pi(G/T)`, for `T` normal in `G`.
///
/// A coset `xT` lies in `O_pi(G/T)` iff `T<x^G>/T` is a pi-group, so the
/// result is generated by `T` and the class representatives passing that
/// test.
pub fn relative_pi_core(g: &PermGroup, t: &PermGroup, pi: &PiSet) -> PermGroup {
    let cd = conjugacy_classes(g);
    let mut core = t.clone();
    for c in cd.classes() {
        if core.contains(&c.rep) || !pi.is_pi_element(&c.rep) {
            continue;
        }
        let mut gens = t.generators().to_vec();
        gens.push(c.rep.clone());
        let m = normal_closure(g, &gens).expect("class representative lies in the group");
        if pi.is_pi_number(m.order() / t.order()) {
            core = core
                .extended_by(m.generators())
                .expect("subgroup within cap");
        }
    }
    core
}

/// `O_pi(G)`, the largest normal pi-subgroup.
pub fn pi_core(g: &PermGroup, pi: &PiSet) -> PermGroup {
    relative_pi_core(g, &PermGroup::trivial(g.degree(), g.limits()), pi)
}

/// `F(G)`, the product of the `p`-cores.
pub fn fitting(g: &PermGroup) -> PermGroup {
    let mut f = PermGroup::trivial(g.degree(), g.limits());
    for p in prime_divisors(g.order()) {
        let core = pi_core(g, &PiSet::prime(p).unwrap());
        f = f
            .extended_by(core.generators())
            .expect("subgroup within cap");
    }
    f
}

/// Which kind of factor a step of the upper pi-series adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    PiPrime,
    Pi,
}

/// The upper pi-series `1 = T_0 < T_1 < ... < T_m` of a group, alternating
/// `pi'`- and `pi`-factors. Only strict steps are recorded.
#[derive(Debug, Clone)]
pub struct PiSeries {
    pub terms: Vec<PermGroup>,
    /// `kinds[i]` describes `T_{i+1} / T_i`.
    pub kinds: Vec<FactorKind>,
    pub reached_top: bool,
    pub pi_length: usize,
}

pub fn upper_pi_series(n: &PermGroup, pi: &PiSet) -> PiSeries {
    let pi_prime = pi.complement();
    let mut terms = vec![PermGroup::trivial(n.degree(), n.limits())];
    let mut kinds = Vec::new();
    let mut kind = FactorKind::PiPrime;
    let mut idle = 0;
    while terms.last().unwrap().order() < n.order() && idle < 2 {
        let t = terms.last().unwrap();
        let set = match kind {
            FactorKind::PiPrime => &pi_prime,
            FactorKind::Pi => pi,
        };
        let next = relative_pi_core(n, t, set);
        if next.order() > t.order() {
            terms.push(next);
            kinds.push(kind);
            idle = 0;
        } else {
            idle += 1;
        }
        kind = match kind {
            FactorKind::PiPrime => FactorKind::Pi,
            FactorKind::Pi => FactorKind::PiPrime,
        };
    }
    let reached_top = terms.last().unwrap().order() == n.order();
    let pi_length = kinds.iter().filter(|&&k| k == FactorKind::Pi).count();
    PiSeries {
        terms,
        kinds,
        reached_top,
        pi_length,
    }
}

pub fn is_pi_separable(n: &PermGroup, pi: &PiSet) -> bool {
    upper_pi_series(n, pi).reached_top
}

/// `[x^G, x^G]`, the derived subgroup of the normal closure of `x`.
pub fn class_commutator(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    Ok(derived_subgroup(&normal_closure(
        g,
        std::slice::from_ref(x),
    )?))
}

/// Outcome of a Hall subgroup search.
#[derive(Debug, Clone)]
pub enum HallResult {
    Found(PermGroup),
    /// Exhaustive search proved there is no Hall subgroup.
    None,
    /// The search budget ran out without a decision.
    Unknown,
}

impl HallResult {
    pub fn found(&self) -> Option<&PermGroup> {
        match self {
            HallResult::Found(h) => Some(h),
            _ => None,
        }
    }
}

/// Largest group order for which the exhaustive Hall search runs.
pub const HALL_EXHAUSTIVE_LIMIT: u64 = 2000;
const HALL_SEARCH_BUDGET: usize = 50_000;

/// A Hall pi-subgroup of `G`, if one can be found or ruled out.
///
/// For pi-separable groups every maximal pi-subgroup is a Hall subgroup,
/// so a greedy scan suffices. Otherwise small generating sets of class
/// representatives are tried, then (for `|G| <= 2000`) an exhaustive
/// search over pi-subgroups containing a fixed Sylow subgroup.
pub fn hall(g: &PermGroup, pi: &PiSet) -> HallResult {
    let order = g.order();
    let target = pi.pi_part(order);
    let relevant = pi.primes_dividing(order);
    if relevant.is_empty() {
        return HallResult::Found(PermGroup::trivial(g.degree(), g.limits()));
    }
    if target == order {
        return HallResult::Found(g.clone());
    }
    if relevant.len() == 1 {
        return HallResult::Found(sylow(g, relevant[0]));
    }
    if is_pi_separable(g, pi) {
        return HallResult::Found(greedy_pi_subgroup(g, pi));
    }
    if let Some(h) = hall_from_class_reps(g, pi, target) {
        return HallResult::Found(h);
    }
    if order <= HALL_EXHAUSTIVE_LIMIT {
        return hall_exhaustive(g, pi, target, &relevant);
    }
    HallResult::Unknown
}

fn greedy_pi_subgroup(g: &PermGroup, pi: &PiSet) -> PermGroup {
    let mut h = PermGroup::trivial(g.degree(), g.limits());
    for x in g.elements().iter() {
        if h.contains(x) || !pi.is_pi_element(x) {
            continue;
        }
        let bigger = h
            .extended_by(std::slice::from_ref(x))
            .expect("subgroup within cap");
        if pi.is_pi_number(bigger.order()) {
            h = bigger;
        }
    }
    h
}

fn hall_from_class_reps(g: &PermGroup, pi: &PiSet, target: u64) -> Option<PermGroup> {
    let cd = conjugacy_classes(g);
    let reps: Vec<&Permutation> = cd
        .classes()
        .iter()
        .skip(1)
        .map(|c| &c.rep)
        .filter(|x| pi.is_pi_element(x))
        .collect();
    let r = reps.len();
    for a in 0..r {
        for b in a..r {
            for c in b..r {
                let gens = [reps[a].clone(), reps[b].clone(), reps[c].clone()];
                let h = g.generate(&gens).ok()?;
                if h.order() == target {
                    return Some(h);
                }
            }
        }
    }
    None
}

fn hall_exhaustive(g: &PermGroup, pi: &PiSet, target: u64, relevant: &[u64]) -> HallResult {
    let cd = conjugacy_classes(g);
    let words = cd.elements().len().div_ceil(64);
    let signature = |h: &PermGroup| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        for x in h.elements().iter() {
            let i = cd.position(x).expect("subgroup element lies in the group");
            bits[i / 64] |= 1 << (i % 64);
        }
        bits
    };
    // Every Hall subgroup has a conjugate containing this Sylow subgroup.
    let p = *relevant
        .iter()
        .max_by_key(|&&q| (p_part(g.order(), q), q))
        .unwrap();
    let start = sylow(g, p);
    let pi_elements: Vec<&Permutation> = cd
        .elements()
        .iter()
        .filter(|x| !x.is_identity() && pi.is_pi_element(x))
        .collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(signature(&start));
    let mut stack = vec![start];
    while let Some(k) = stack.pop() {
        for x in &pi_elements {
            if k.contains(x) {
                continue;
            }
            let l = k
                .extended_by(std::slice::from_ref(*x))
                .expect("subgroup within cap");
            if !target.is_multiple_of(l.order()) {
                continue;
            }
            if l.order() == target {
                return HallResult::Found(l);
            }
            if seen.insert(signature(&l)) {
                if seen.len() > HALL_SEARCH_BUDGET {
                    return HallResult::Unknown;
                }
                stack.push(l);
            }
        }
    }
    HallResult::None
}
