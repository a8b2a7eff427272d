//! Factor groups as permutation groups on right cosets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{is_normal, PermGroup};
use crate::perm::Permutation;

/// `G/N` acting on the right cosets of `N`, with the natural epimorphism.
///
/// Cosets are numbered by their least element, so the coset `N` itself is
/// point 0.
#[derive(Debug, Clone)]
pub struct Quotient {
    source: PermGroup,
    kernel: PermGroup,
    image: PermGroup,
    coset_of: HashMap<Permutation, u32>,
    reps: Vec<Permutation>,
}

pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !is_normal(g, n)? {
        return Err(Error::NotNormal);
    }
    let index = g.order() / n.order();
    let cap = g.limits().quotient_cap;
    if index > cap {
        return Err(Error::CapExceeded {
            what: "quotient index",
            size: index,
            cap,
        });
    }
    let kernel_elems = n.elements();
    let mut coset_of: HashMap<Permutation, u32> = HashMap::with_capacity(g.order() as usize);
    let mut reps = Vec::with_capacity(index as usize);
    for x in g.elements().iter() {
        if coset_of.contains_key(x) {
            continue;
        }
        let c = reps.len() as u32;
        for k in kernel_elems.iter() {
            coset_of.insert(k * x, c);
        }
        reps.push(x.clone());
    }

    let mut q = Quotient {
        source: g.clone(),
        kernel: n.clone(),
        image: PermGroup::trivial(index as usize, g.limits()),
        coset_of,
        reps,
    };
    let gens: Vec<Permutation> = g.generators().iter().map(|x| q.map(x)).collect();
    if !gens.is_empty() {
        q.image = PermGroup::from_generators(&gens, g.limits())?;
    }
    Ok(q)
}

impl Quotient {
    fn map(&self, x: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of[&(r * x)] as usize)
            .collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// Image of `x` under the natural map.
    pub fn image_of(&self, x: &Permutation) -> Result<Permutation> {
        if !self.source.contains(x) {
            return Err(Error::NotInGroup(x.to_string()));
        }
        Ok(self.map(x))
    }

    /// Least element of the coset corresponding to `q`.
    pub fn preimage(&self, q: &Permutation) -> Permutation {
        self.reps[q.image(0)].clone()
    }

    /// Index of the coset containing `x`.
    pub fn coset_index(&self, x: &Permutation) -> Option<usize> {
        self.coset_of.get(x).map(|&c| c as usize)
    }

    pub fn group(&self) -> &PermGroup {
        &self.image
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage_subgroup(&self, sub: &PermGroup) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = self.kernel.generators().to_vec();
        gens.extend(sub.generators().iter().map(|q| self.preimage(q)));
        self.source.generate(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;
    use crate::group::{build_group, normal_closure};

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn quotients_of_s4() {
        let s4 = build_group(&[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        let a4 = normal_closure(&s4, &[p("(1 2 3)", 4)]).unwrap();
        let v4 = normal_closure(&s4, &[p("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(quotient(&s4, &a4).unwrap().group().order(), 2);
        let q = quotient(&s4, &v4).unwrap();
        assert_eq!(q.group().order(), 6);
        assert!(!q.group().is_abelian());
        for x in s4.elements().iter() {
            let img = q.image_of(x).unwrap();
            assert_eq!(img.is_identity(), v4.contains(x));
            assert_eq!(q.image_of(&q.preimage(&img)).unwrap(), img);
        }
        let cg = conjugacy_classes(&s4);
        let cq = conjugacy_classes(q.group());
        for c in cg.classes() {
            let img = q.image_of(&c.rep).unwrap();
            let qc = cq.class_of(&img).unwrap();
            assert_eq!(c.size % cq.class(qc).size, 0);
        }
        let t = s4.generate(&[p("(1 2)", 4)]).unwrap();
        assert_eq!(quotient(&s4, &t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn preimage_of_subgroup() {
        let s4 = build_group(&[p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        let v4 = normal_closure(&s4, &[p("(1 2)(3 4)", 4)]).unwrap();
        let q = quotient(&s4, &v4).unwrap();
        let c3 = q
            .group()
            .generate(&[q.image_of(&p("(1 2 3)", 4)).unwrap()])
            .unwrap();
        assert_eq!(q.preimage_subgroup(&c3).unwrap().order(), 12);
    }
}
