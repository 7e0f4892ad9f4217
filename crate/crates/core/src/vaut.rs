//! Virtual automorphisms: isomorphisms between finite-index subgroups,
//! considered up to agreement on a smaller finite-index subgroup (germs).
//!
//! A [`VirtualAutomorphism`] stores the images of the domain's Schreier
//! generators as words of the ambient group. Bijectivity onto the codomain
//! follows from the homomorphism check, the generation check and equality of
//! indices, since finite-index surface subgroups are Hopfian.

use std::sync::Arc;

use crate::budget::Budget;
use crate::characteristic::{Automorphism, CharSubgroup};
use crate::coset_enum::{enumerate_cosets, generated_subgroup};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::subgroup::{orbit_table, Subgroup};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualAutomorphism {
    domain: Subgroup,
    codomain: Subgroup,
    images: Vec<Word>,
}

fn same_ambient(a: &Subgroup, b: &Subgroup) -> Result<()> {
    if Arc::ptr_eq(a.presentation(), b.presentation()) || a.presentation() == b.presentation() {
        Ok(())
    } else {
        Err(Error::PresentationMismatch)
    }
}

impl VirtualAutomorphism {
    /// Validates and builds `domain -> codomain` from images of the domain's
    /// Schreier generators.
    pub fn new(domain: Subgroup, codomain: Subgroup, images: Vec<Word>, budget: &Budget) -> Result<Self> {
        same_ambient(&domain, &codomain)?;
        let pres = domain.presentation().clone();
        let images = images.iter().map(|w| pres.simplify(w)).collect();
        let v = VirtualAutomorphism { domain, codomain, images };
        v.check(budget)?;
        Ok(v)
    }

    /// Re-checks every invariant: equal index, images inside the codomain,
    /// rewritten relators mapping to the identity, and generation.
    pub fn check(&self, budget: &Budget) -> Result<()> {
        let fail = |msg: &str| Err(Error::NotAnIsomorphism(msg.to_string()));
        if self.domain.index() != self.codomain.index() {
            return fail("domain and codomain have different index");
        }
        if self.images.len() != self.domain.schreier_generators().len() {
            return fail("one image per Schreier generator of the domain is required");
        }
        if !self.images.iter().all(|w| self.codomain.contains(w)) {
            return fail("an image lies outside the codomain");
        }
        let pres = self.domain.presentation();
        for r in self.domain.reidemeister_schreier().relators() {
            if !pres.is_trivial(&r.substitute(&self.images))? {
                return fail("images do not satisfy the rewritten relators");
            }
        }
        if generated_subgroup(pres, &self.images, budget.max_cosets)? != self.codomain {
            return fail("images do not generate the codomain");
        }
        Ok(())
    }

    pub fn identity(h: &Subgroup) -> Self {
        VirtualAutomorphism { domain: h.clone(), codomain: h.clone(), images: h.schreier_generators().to_vec() }
    }

    /// An automorphism of the ambient group restricted to `h`.
    pub fn from_automorphism(phi: &Automorphism, h: &Subgroup, budget: &Budget) -> Result<Self> {
        let pres = h.presentation();
        let images: Vec<Word> = h.schreier_generators().iter().map(|s| pres.simplify(&phi.apply(s))).collect();
        let codomain = generated_subgroup(pres, &images, budget.max_cosets)?;
        VirtualAutomorphism::new(h.clone(), codomain, images, budget)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.domain.presentation()
    }

    /// `v(w)` for `w` in the domain.
    pub fn evaluate(&self, w: &Word) -> Option<Word> {
        let rw = self.domain.rewrite(w)?;
        Some(self.presentation().simplify(&rw.substitute(&self.images)))
    }

    /// `{h in domain : v(h) in s}` via the action on pairs of cosets.
    pub fn preimage_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        same_ambient(&self.domain, s)?;
        let k = self.domain.generator_count();
        let sys = self.domain.schreier();
        let fwd = orbit_table(k, (0u32, 0u32), None, |&(c, e), g| {
            let next = self.domain.act(c, g as Letter + 1);
            let e = match sys.edge[c as usize * k + g] {
                Some(i) => s.trace(e, &self.images[i as usize]),
                None => e,
            };
            (next, e)
        })?;
        Ok(Subgroup::from_canonical(self.presentation().clone(), fwd))
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &Subgroup, budget: &Budget) -> Result<Self> {
        if !sub.is_subgroup_of(&self.domain)? {
            return Err(Error::NotRestrictable("subgroup is not inside the domain".into()));
        }
        let images: Vec<Word> = sub
            .schreier_generators()
            .iter()
            .map(|s| self.evaluate(s).expect("generator lies in the domain"))
            .collect();
        let codomain = generated_subgroup(self.presentation(), &images, budget.max_cosets)?;
        Ok(VirtualAutomorphism { domain: sub.clone(), codomain, images })
    }

    /// `v(l)` for `l` inside the domain.
    pub fn image(&self, l: &Subgroup, budget: &Budget) -> Result<Subgroup> {
        Ok(self.restrict(l, budget)?.codomain)
    }

    /// `w o self`: first `self`, then `w`, on the largest subgroup where that
    /// makes sense.
    pub fn compose(&self, w: &VirtualAutomorphism, budget: &Budget) -> Result<Self> {
        same_ambient(&self.domain, &w.domain)?;
        let middle = self.codomain.intersect_capped(&w.domain, Some(budget.max_result_index))?;
        let domain = self.preimage_subgroup(&middle)?;
        let pres = self.presentation();
        let images: Vec<Word> = domain
            .schreier_generators()
            .iter()
            .map(|s| {
                let mid = self.evaluate(s).expect("generator lies in the domain");
                w.evaluate(&mid).expect("image lies in the second domain")
            })
            .map(|x| pres.simplify(&x))
            .collect();
        let codomain = generated_subgroup(pres, &images, budget.max_cosets)?;
        Ok(VirtualAutomorphism { domain, codomain, images })
    }

    /// Inverse, solving for preimages with a tracked coset enumeration.
    pub fn inverse(&self, budget: &Budget) -> Result<Self> {
        let pres = self.presentation();
        let en = enumerate_cosets(pres, &self.images, true, budget.max_cosets)?;
        let gens = self.domain.schreier_generators();
        let mut images = Vec::with_capacity(self.codomain.schreier_generators().len());
        for t in self.codomain.schreier_generators() {
            let y = en.express(t).ok_or_else(|| Error::NotAnIsomorphism("codomain generator not reached".into()))?;
            images.push(pres.simplify(&y.substitute(gens)));
        }
        Ok(VirtualAutomorphism { domain: self.codomain.clone(), codomain: self.domain.clone(), images })
    }

    /// Agreement on the Schreier generators of the intersection of domains.
    pub fn germ_equals(&self, other: &VirtualAutomorphism, budget: &Budget) -> Result<bool> {
        same_ambient(&self.domain, &other.domain)?;
        let common = self.domain.intersect_capped(&other.domain, Some(budget.max_result_index))?;
        let pres = self.presentation();
        for s in common.schreier_generators() {
            let a = self.evaluate(s).expect("in domain");
            let b = other.evaluate(s).expect("in domain");
            if !pres.words_equal(&a, &b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity_germ(&self, budget: &Budget) -> Result<bool> {
        self.germ_equals(&VirtualAutomorphism::identity(&self.domain), budget)
    }

    /// True iff `l` lies in the domain and `v(l) = l`.
    pub fn is_mapping_class_like_witness(&self, l: &Subgroup, budget: &Budget) -> Result<bool> {
        if !l.is_subgroup_of(&self.domain)? {
            return Ok(false);
        }
        Ok(self.image(l, budget)? == *l)
    }

    /// Looks for a subgroup fixed by `v` among `L_0 = domain`,
    /// `L_{i+1} = L_i ∩ v^-1(L_i) ∩ v(L_i)`. `None` means undecided.
    pub fn bounded_mcl_search(&self, depth: usize, budget: &Budget) -> Result<Option<Subgroup>> {
        let cap = Some(budget.max_result_index);
        let mut l = self.domain.clone();
        for _ in 0..depth {
            let img = self.image(&l, budget)?;
            if img == l {
                return Ok(Some(l));
            }
            let back = self.preimage_subgroup(&l)?;
            l = l.intersect_capped(&back, cap)?.intersect_capped(&img, cap)?;
        }
        Ok(None)
    }

    /// True iff `v` restricts to an automorphism of the characteristic subgroup.
    pub fn caut_witness(&self, c: &CharSubgroup, budget: &Budget) -> Result<bool> {
        self.is_mapping_class_like_witness(&c.subgroup, budget)
    }

    /// The same germ over the group of the cover `h` (on its rewritten
    /// presentation). With `allow_restrict`, the domain is first cut down to
    /// `domain ∩ h ∩ v^-1(h)`.
    pub fn rebase(&self, h: &Subgroup, allow_restrict: bool, budget: &Budget) -> Result<Self> {
        let inside = self.domain.is_subgroup_of(h)? && self.codomain.is_subgroup_of(h)?;
        let v = if inside {
            self.clone()
        } else if allow_restrict {
            let cap = Some(budget.max_result_index);
            let cut = self.domain.intersect_capped(h, cap)?.intersect_capped(&self.preimage_subgroup(h)?, cap)?;
            self.restrict(&cut, budget)?
        } else {
            return Err(Error::NotRestrictable("domain or codomain is not inside the cover".into()));
        };
        let domain = v.domain.relative_to(h)?;
        let codomain = v.codomain.relative_to(h)?;
        let hgens = h.schreier_generators();
        let mut images = Vec::with_capacity(domain.schreier_generators().len());
        for s in domain.schreier_generators() {
            let x = v.evaluate(&s.substitute(hgens)).expect("in domain");
            images.push(h.rewrite(&x).expect("image lies in the cover"));
        }
        Ok(VirtualAutomorphism { domain, codomain, images })
    }

    /// Inverse of [`VirtualAutomorphism::rebase`]: views a virtual
    /// automorphism of the cover `h` in the base group.
    pub fn unbase(&self, h: &Subgroup) -> Result<Self> {
        let domain = Subgroup::lift_from(&self.domain, h)?;
        let codomain = Subgroup::lift_from(&self.codomain, h)?;
        let hgens = h.schreier_generators();
        let pres = h.presentation();
        let mut images = Vec::with_capacity(domain.schreier_generators().len());
        for t in domain.schreier_generators() {
            let local = h.rewrite(t).expect("generator lies in the cover");
            let y = self.evaluate(&local).ok_or_else(|| Error::InconsistentInput("lift left the domain".into()))?;
            images.push(pres.simplify(&y.substitute(hgens)));
        }
        Ok(VirtualAutomorphism { domain, codomain, images })
    }
}

/// A finite self-correspondence: two equal-genus covers and an isomorphism
/// between their groups, given on the Schreier generators of `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoArrowCycle {
    pub alpha: Subgroup,
    pub beta: Subgroup,
    pub identification: Vec<Word>,
}

impl TwoArrowCycle {
    /// The virtual automorphism `beta_* o alpha_*^-1`.
    pub fn to_vaut(&self, budget: &Budget) -> Result<VirtualAutomorphism> {
        if self.alpha.covering_genus() != self.beta.covering_genus() || self.alpha.index() != self.beta.index() {
            return Err(Error::IdentificationInvalid("covers have different genus".into()));
        }
        VirtualAutomorphism::new(self.alpha.clone(), self.beta.clone(), self.identification.clone(), budget)
            .map_err(|e| match e {
                Error::NotAnIsomorphism(msg) => Error::IdentificationInvalid(msg),
                other => other,
            })
    }
}

impl From<&VirtualAutomorphism> for TwoArrowCycle {
    fn from(v: &VirtualAutomorphism) -> Self {
        TwoArrowCycle { alpha: v.domain.clone(), beta: v.codomain.clone(), identification: v.images.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::homology_cover;

    fn genus2() -> Arc<Presentation> {
        Presentation::surface(2).unwrap()
    }

    fn swap_on(pres: &Arc<Presentation>, generator: usize) -> Subgroup {
        let mut perms = vec![vec![0, 1]; 4];
        perms[generator] = vec![1, 0];
        Subgroup::from_permutations(pres.clone(), perms, 0, true).unwrap()
    }

    #[test]
    fn handle_swap_between_index_two_subgroups() {
        let pres = genus2();
        let b = Budget::default();
        let h = swap_on(&pres, 0);
        let k = swap_on(&pres, 2);
        let phi = Automorphism::handle_shift(&pres).unwrap();
        let v = VirtualAutomorphism::from_automorphism(&phi, &h, &b).unwrap();
        assert_eq!(v.codomain(), &k);
        v.check(&b).unwrap();
        let inv = v.inverse(&b).unwrap();
        inv.check(&b).unwrap();
        assert!(v.compose(&inv, &b).unwrap().is_identity_germ(&b).unwrap());
        assert!(inv.compose(&v, &b).unwrap().is_identity_germ(&b).unwrap());
        assert!(!v.is_mapping_class_like_witness(&h, &b).unwrap());
    }

    #[test]
    fn identities_on_different_domains_are_germ_equal() {
        let pres = genus2();
        let b = Budget::default();
        let i1 = VirtualAutomorphism::identity(&swap_on(&pres, 0));
        let i2 = VirtualAutomorphism::identity(&swap_on(&pres, 1));
        assert!(i1.germ_equals(&i2, &b).unwrap());
        let c = i1.compose(&i2, &b).unwrap();
        assert_eq!(c.domain().index(), 4);
        assert!(c.is_identity_germ(&b).unwrap());
    }

    #[test]
    fn invalid_images_are_rejected() {
        let pres = genus2();
        let b = Budget::default();
        let h = swap_on(&pres, 0);
        let mut images = h.schreier_generators().to_vec();
        images[0] = Word::new([1, 1, 1, 1]);
        assert!(VirtualAutomorphism::new(h.clone(), h.clone(), images, &b).is_err());
        let bad = TwoArrowCycle { alpha: h.clone(), beta: Subgroup::full_group(pres), identification: vec![] };
        assert!(matches!(bad.to_vaut(&b), Err(Error::IdentificationInvalid(_))));
    }

    #[test]
    fn rebase_round_trip() {
        let pres = genus2();
        let b = Budget::default();
        let h2 = homology_cover(&pres, 2, &b).unwrap();
        let inner = Automorphism::inner(&pres, &Word::new([1]));
        let v = VirtualAutomorphism::from_automorphism(&inner, &h2.subgroup, &b).unwrap();
        assert!(v.caut_witness(&h2, &b).unwrap());
        let small = swap_on(&pres, 0);
        let w = VirtualAutomorphism::from_automorphism(&Automorphism::handle_shift(&pres).unwrap(), &small, &b).unwrap();
        assert!(w.caut_witness(&h2, &b).unwrap());
        let three = crate::enumerate::low_index_subgroups(&pres, 3, &b).unwrap().pop().unwrap();
        assert!(!VirtualAutomorphism::identity(&three).caut_witness(&h2, &b).unwrap());
        assert!(matches!(w.rebase(&small, false, &b), Err(Error::NotRestrictable(_))));
        let up = w.rebase(&small, true, &b).unwrap();
        up.check(&b).unwrap();
        let down = up.unbase(&small).unwrap();
        assert!(down.germ_equals(&w, &b).unwrap());
    }

    #[test]
    fn mcl_search_finds_invariant_subgroups() {
        let pres = genus2();
        let b = Budget::default();
        let h = swap_on(&pres, 1);
        let conj = VirtualAutomorphism::from_automorphism(&Automorphism::inner(&pres, &Word::new([3])), &h, &b).unwrap();
        assert_eq!(conj.bounded_mcl_search(1, &b).unwrap(), Some(h.clone()));
        assert_eq!(VirtualAutomorphism::identity(&h).bounded_mcl_search(1, &b).unwrap(), Some(h));
    }
}
