//! Characteristic subgroups certified by construction: cores obtained by
//! intersecting the kernels of every homomorphism to a symmetric group, and
//! homology covers. Also the characteristic ordering between such covers and
//! the tower graph assembled from them.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;

use crate::abelian::{abelianization, homology_kernel};
use crate::budget::Budget;
use crate::coset_enum::generated_subgroup;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::subgroup::{kernel_of, CosetAction, Subgroup};
use crate::word::Word;

/// Why a subgroup is characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharCertificate {
    /// Intersection of the kernels of all homomorphisms to `Sym(degree)`.
    HomKernelIntersection { degree: usize },
    /// Kernel of the map to first homology with `Z/n` coefficients.
    HomologyLevel { n: u64 },
    /// Normal and invariant under the listed automorphisms only.
    SuppliedAutInvariance { automorphisms: Vec<Automorphism> },
    /// Intersection of certified characteristic subgroups.
    Intersection { parts: Vec<CharSubgroup> },
}

impl CharCertificate {
    /// Partial certificates only cover the automorphisms they list.
    pub fn is_partial(&self) -> bool {
        match self {
            CharCertificate::SuppliedAutInvariance { .. } => true,
            CharCertificate::Intersection { parts } => parts.iter().any(|p| p.certificate.is_partial()),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CharCertificate::HomKernelIntersection { degree } => format!("HomKernelIntersection({degree})"),
            CharCertificate::HomologyLevel { n } => format!("HomologyLevel({n})"),
            CharCertificate::SuppliedAutInvariance { automorphisms } => {
                let names: Vec<_> = automorphisms.iter().map(|a| a.name().to_string()).collect();
                format!("SuppliedAutInvariance[partial]({})", names.join(","))
            }
            CharCertificate::Intersection { parts } => {
                let labels: Vec<_> = parts.iter().map(|p| p.certificate.label()).collect();
                format!("Intersection({})", labels.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSubgroup {
    pub subgroup: Subgroup,
    pub certificate: CharCertificate,
}

impl CharSubgroup {
    /// Re-derives the certificate's checkable content.
    pub fn verify(&self, budget: &Budget) -> Result<bool> {
        if !self.subgroup.is_normal() {
            return Ok(false);
        }
        let pres = self.subgroup.presentation();
        Ok(match &self.certificate {
            CharCertificate::HomKernelIntersection { degree } => {
                hom_kernel_intersection(pres, *degree, budget)? == self.subgroup
            }
            CharCertificate::HomologyLevel { n } => homology_kernel(pres, *n, budget.max_result_index)? == self.subgroup,
            CharCertificate::SuppliedAutInvariance { automorphisms } => {
                is_invariant_under(&self.subgroup, automorphisms, budget)?
            }
            CharCertificate::Intersection { parts } => {
                let mut acc = Subgroup::full_group(pres.clone());
                for p in parts {
                    if !p.verify(budget)? {
                        return Ok(false);
                    }
                    acc = acc.intersect_capped(&p.subgroup, Some(budget.max_result_index))?;
                }
                acc == self.subgroup
            }
        })
    }
}

/// An endomorphism of a surface group given by generator images, flagged as
/// an automorphism when a two-sided inverse has been checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    name: String,
    images: Vec<Word>,
    inverse: Option<Vec<Word>>,
}

impl Automorphism {
    pub fn new(pres: &Presentation, name: impl Into<String>, images: Vec<Word>, inverse: Option<Vec<Word>>) -> Result<Self> {
        let name = name.into();
        let k = pres.generator_count();
        if images.len() != k || inverse.as_ref().is_some_and(|v| v.len() != k) {
            return Err(Error::NotAnEndomorphism(format!("{name}: expected {k} generator images")));
        }
        let check = |imgs: &[Word]| -> Result<bool> {
            for r in pres.relators() {
                if !pres.is_trivial(&r.substitute(imgs))? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if !check(&images)? {
            return Err(Error::NotAnEndomorphism(format!("{name}: relator image is nontrivial")));
        }
        if let Some(inv) = &inverse {
            if !check(inv)? {
                return Err(Error::NotAnEndomorphism(format!("{name}: inverse does not respect the relator")));
            }
            for g in 0..k {
                let x = Word::generator(g);
                let there_and_back = x.substitute(&images).substitute(inv);
                let back_and_there = x.substitute(inv).substitute(&images);
                if !pres.words_equal(&there_and_back, &x)? || !pres.words_equal(&back_and_there, &x)? {
                    return Err(Error::NotAnEndomorphism(format!("{name}: supplied inverse is not two-sided")));
                }
            }
        }
        let images = images.iter().map(|w| pres.simplify(w)).collect();
        let inverse = inverse.map(|v| v.iter().map(|w| pres.simplify(w)).collect());
        Ok(Automorphism { name, images, inverse })
    }

    pub fn identity(pres: &Presentation) -> Self {
        let ids: Vec<Word> = (0..pres.generator_count()).map(Word::generator).collect();
        Automorphism { name: "id".into(), images: ids.clone(), inverse: Some(ids) }
    }

    /// `x -> w x w^-1`.
    pub fn inner(pres: &Presentation, w: &Word) -> Self {
        let conj = |c: &Word| (0..pres.generator_count()).map(|g| pres.simplify(&c.conjugate_by(&Word::generator(g)))).collect();
        Automorphism { name: format!("inner({w})"), images: conj(w), inverse: Some(conj(&w.inverse())) }
    }

    /// Cyclic shift of the handles `(a_i, b_i) -> (a_{i+1}, b_{i+1})`; in
    /// genus two this is the handle swap. The relator goes to a cyclic
    /// conjugate of itself.
    pub fn handle_shift(pres: &Presentation) -> Result<Self> {
        let g = pres.genus().ok_or(Error::WordProblemUnavailable)?;
        let shift = |by: usize| -> Vec<Word> {
            (0..2 * g).map(|i| Word::generator(2 * ((i / 2 + by) % g) + i % 2)).collect()
        };
        let name = if g == 2 { "handle-swap" } else { "handle-shift" };
        Automorphism::new(pres, name, shift(1), Some(shift(g - 1)))
    }

    /// Inner automorphisms by each generator, plus the handle shift.
    pub fn builtins(pres: &Presentation) -> Result<Vec<Self>> {
        let mut out: Vec<Self> = (0..pres.generator_count()).map(|g| Automorphism::inner(pres, &Word::generator(g))).collect();
        out.push(Automorphism::handle_shift(pres)?);
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> Option<&[Word]> {
        self.inverse.as_deref()
    }

    pub fn is_verified(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

/// `phi(sub)` as a coset table.
pub fn image_subgroup(sub: &Subgroup, phi: &Automorphism, budget: &Budget) -> Result<Subgroup> {
    let images: Vec<Word> = sub.schreier_generators().iter().map(|s| phi.apply(s)).collect();
    generated_subgroup(sub.presentation(), &images, budget.max_cosets)
}

/// True iff `phi(sub) = sub` for every listed automorphism.
pub fn is_invariant_under(sub: &Subgroup, auts: &[Automorphism], budget: &Budget) -> Result<bool> {
    for phi in auts {
        if !sub.schreier_generators().iter().all(|s| sub.contains(&phi.apply(s))) {
            return Ok(false);
        }
        // phi(sub) <= sub; an automorphism preserves the index, otherwise check it
        if !phi.is_verified() && image_subgroup(sub, phi, budget)?.index() != sub.index() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The automorphism induced on an invariant subgroup, as images of its
/// Schreier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedAutomorphism {
    pub subgroup: Subgroup,
    pub images: Vec<Word>,
}

pub fn restrict_aut(phi: &Automorphism, sub: &CharSubgroup, budget: &Budget) -> Result<RestrictedAutomorphism> {
    if !is_invariant_under(&sub.subgroup, std::slice::from_ref(phi), budget)? {
        return Err(Error::NotInvariant(phi.name().to_string()));
    }
    let pres = sub.subgroup.presentation();
    let images = sub.subgroup.schreier_generators().iter().map(|s| pres.simplify(&phi.apply(s))).collect();
    Ok(RestrictedAutomorphism { subgroup: sub.subgroup.clone(), images })
}

/// Every homomorphism to `Sym(n)`, as one permutation per generator, in
/// lexicographic order of the assignment. Intransitive ones are included.
pub fn hom_enumeration(pres: &Presentation, n: usize, budget: &Budget) -> Result<Vec<CosetAction>> {
    if n == 0 {
        return Err(Error::InconsistentInput("symmetric group degree must be positive".into()));
    }
    if n > budget.max_hom_degree {
        return Err(Error::BudgetExceeded { what: "homomorphism degree", limit: budget.max_hom_degree as u64 });
    }
    let perms = all_permutations(n);
    let k = pres.generator_count();
    // relators become checkable once their largest generator is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
    for (i, r) in pres.relators().iter().enumerate() {
        ready[r.max_generator()].push(i);
    }
    let mut inverses: Vec<Vec<u32>> = Vec::with_capacity(perms.len());
    for p in &perms {
        let mut inv = vec![0u32; n];
        for (x, &y) in p.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        inverses.push(inv);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    let mut nodes = 0u64;
    let relator_ok = |choice: &[usize], r: &Word| {
        (0..n as u32).all(|start| {
            r.letters().iter().fold(start, |p, &x| {
                let g = x.unsigned_abs() as usize - 1;
                if x > 0 {
                    perms[choice[g]][p as usize]
                } else {
                    inverses[choice[g]][p as usize]
                }
            }) == start
        })
    };
    // iterative depth-first search over generator assignments
    let mut depth = 0usize;
    if k == 0 {
        out.push(CosetAction { perms: Vec::new(), basepoint: 0 });
        return Ok(out);
    }
    choice[0] = 0;
    loop {
        nodes += 1;
        if nodes > budget.max_nodes {
            return Err(Error::BudgetExceeded { what: "homomorphism enumeration nodes", limit: budget.max_nodes });
        }
        let ok = ready[depth + 1].iter().all(|&ri| relator_ok(&choice, &pres.relators()[ri]));
        if ok && depth + 1 == k {
            out.push(CosetAction { perms: choice.iter().map(|&c| perms[c].clone()).collect(), basepoint: 0 });
        }
        if ok && depth + 1 < k {
            depth += 1;
            choice[depth] = 0;
            continue;
        }
        // advance to the next sibling, backtracking as needed
        loop {
            choice[depth] += 1;
            if choice[depth] < perms.len() {
                break;
            }
            if depth == 0 {
                return Ok(out);
            }
            depth -= 1;
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { return out };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Intersection of the kernels of all homomorphisms to `Sym(degree)`.
pub fn hom_kernel_intersection(pres: &Arc<Presentation>, degree: usize, budget: &Budget) -> Result<Subgroup> {
    let homs = hom_enumeration(pres, degree, budget)?;
    let mut seen = HashSet::new();
    let mut kernels = Vec::new();
    for h in &homs {
        let k = kernel_of(pres.clone(), &h.perms, Some(budget.max_result_index))?;
        if seen.insert(k.clone()) {
            kernels.push(k);
        }
    }
    kernels.sort();
    let mut acc = Subgroup::full_group(pres.clone());
    for k in &kernels {
        acc = acc.intersect_capped(k, Some(budget.max_result_index))?;
    }
    Ok(acc)
}

/// The characteristic core of a finite-index subgroup: the intersection of
/// the kernels of all homomorphisms to the symmetric group on its cosets.
pub fn char_core(sub: &Subgroup, budget: &Budget) -> Result<CharSubgroup> {
    let degree = sub.index();
    let core = hom_kernel_intersection(sub.presentation(), degree, budget)?;
    if !core.is_subgroup_of(sub)? {
        return Err(Error::InconsistentInput("kernel intersection is not contained in the subgroup".into()));
    }
    Ok(CharSubgroup { subgroup: core, certificate: CharCertificate::HomKernelIntersection { degree } })
}

/// A characteristic subgroup contained in `sub`.
pub fn cofinality_witness(sub: &Subgroup, budget: &Budget) -> Result<CharSubgroup> {
    char_core(sub, budget)
}

/// Kernel of `G -> H_1(G; Z/n)`, of index `n^(2g)`.
pub fn homology_cover(pres: &Arc<Presentation>, n: u64, budget: &Budget) -> Result<CharSubgroup> {
    if pres.as_surface().is_none() {
        return Err(Error::InconsistentInput("homology covers are built over a surface presentation".into()));
    }
    let subgroup = homology_kernel(pres, n, budget.max_result_index)?;
    Ok(CharSubgroup { subgroup, certificate: CharCertificate::HomologyLevel { n } })
}

/// Intersection of two characteristic subgroups.
pub fn fiber_product(a: &CharSubgroup, b: &CharSubgroup, budget: &Budget) -> Result<CharSubgroup> {
    let subgroup = a.subgroup.intersect_capped(&b.subgroup, Some(budget.max_result_index))?;
    let certificate = match (&a.certificate, &b.certificate) {
        (CharCertificate::HomologyLevel { n: m }, CharCertificate::HomologyLevel { n }) => {
            CharCertificate::HomologyLevel { n: m.lcm(n) }
        }
        _ if subgroup == a.subgroup => a.certificate.clone(),
        _ if subgroup == b.subgroup => b.certificate.clone(),
        _ => CharCertificate::Intersection { parts: vec![a.clone(), b.clone()] },
    };
    Ok(CharSubgroup { subgroup, certificate })
}

/// Tri-state outcome of a characteristic-ordering query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharTag {
    Yes,
    No,
    Unknown,
}

impl CharTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CharTag::Yes => "yes",
            CharTag::No => "no",
            CharTag::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharOrderOutcome {
    pub tag: CharTag,
    pub reason: String,
}

fn outcome(tag: CharTag, reason: impl Into<String>) -> Result<CharOrderOutcome> {
    Ok(CharOrderOutcome { tag, reason: reason.into() })
}

/// A core computed inside the group of a characteristic cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCore {
    /// The core as a subgroup of the cover's rewritten presentation.
    pub relative: Subgroup,
    /// The same subgroup in the base group.
    pub subgroup: Subgroup,
    pub certificate: CharCertificate,
}

/// Runs the kernel-intersection construction inside `ambient`'s own group.
pub fn char_core_within(ambient: &CharSubgroup, inner: &Subgroup, budget: &Budget) -> Result<RelativeCore> {
    let rel = inner.relative_to(&ambient.subgroup)?;
    let degree = rel.index();
    let rs = ambient.subgroup.reidemeister_schreier();
    let relative = if degree == 1 { rel } else { hom_kernel_intersection(&rs, degree, budget)? };
    let subgroup = Subgroup::lift_from(&relative, &ambient.subgroup)?;
    debug_assert!(subgroup.is_subgroup_of(inner).unwrap_or(false));
    Ok(RelativeCore { relative, subgroup, certificate: CharCertificate::HomKernelIntersection { degree } })
}

fn exact_root(value: u64, exponent: u32) -> Option<u64> {
    if exponent == 0 {
        return None;
    }
    let guess = (value as f64).powf(1.0 / exponent as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r >= 2 && r.checked_pow(exponent) == Some(value))
}

/// Decides `beta >> alpha`: `beta <= alpha` and the factoring covering is
/// itself characteristic. Undecided cases come back as `Unknown`.
pub fn char_order(beta: &CharSubgroup, alpha: &CharSubgroup, budget: &Budget) -> Result<CharOrderOutcome> {
    if beta.subgroup.coset_map_into(&alpha.subgroup)?.is_none() {
        return outcome(CharTag::No, "no factoring covering");
    }
    if beta.subgroup == alpha.subgroup {
        return outcome(CharTag::Yes, "identity covering");
    }
    if alpha.subgroup.is_full_group() && !beta.certificate.is_partial() {
        return outcome(CharTag::Yes, format!("characteristic over the base by {}", beta.certificate.label()));
    }
    let rel = beta.subgroup.relative_to(&alpha.subgroup)?;
    if !rel.is_normal() {
        return outcome(CharTag::No, "relative covering is not normal");
    }
    let rs = alpha.subgroup.reidemeister_schreier();
    let rank = abelianization(&rs)?.rank as u32;
    if let Some(n) = exact_root(rel.index() as u64, rank) {
        if homology_kernel(&rs, n, budget.max_result_index)? == rel {
            return outcome(CharTag::Yes, format!("relative homology cover of level {n}"));
        }
    }
    let pres = alpha.subgroup.presentation();
    if pres.as_surface().is_some() {
        for phi in Automorphism::builtins(pres)? {
            if is_invariant_under(&alpha.subgroup, std::slice::from_ref(&phi), budget)?
                && !is_invariant_under(&beta.subgroup, std::slice::from_ref(&phi), budget)?
            {
                return outcome(CharTag::No, format!("{} preserves the middle cover but not the top", phi.name()));
            }
        }
    }
    match char_core_within(alpha, &beta.subgroup, budget) {
        Ok(core) if core.relative == rel => outcome(CharTag::Yes, "equals its relative kernel-intersection core"),
        Ok(_) => outcome(CharTag::Unknown, "relative core is strictly smaller"),
        Err(Error::BudgetExceeded { what, .. }) => outcome(CharTag::Unknown, format!("budget exceeded: {what}")),
        Err(Error::IntersectionIndexOverflow { .. }) => outcome(CharTag::Unknown, "relative core index over cap"),
        Err(e) => Err(e),
    }
}

/// One way of adding a node to a tower.
#[derive(Clone, Debug)]
pub enum TowerStep {
    HomologyCover(u64),
    CharCore(Subgroup),
    Explicit(CharSubgroup),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerEdge {
    /// Index of the covering node (the smaller subgroup).
    pub from: usize,
    /// Index of the covered node.
    pub to: usize,
    pub relative_degree: usize,
    pub char_tag: CharTag,
}

/// Finite fragment of the characteristic tower. Node 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerGraph {
    pub base_genus: usize,
    pub nodes: Vec<CharSubgroup>,
    pub edges: Vec<TowerEdge>,
}

/// Genus and degree over the base of one tower node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Stratum {
    pub genus: usize,
    pub degree: usize,
}

pub fn build_char_tower(pres: &Arc<Presentation>, steps: &[TowerStep], budget: &Budget) -> Result<TowerGraph> {
    let base_genus = pres.genus().ok_or_else(|| Error::InconsistentInput("towers need a surface base".into()))?;
    let mut nodes = vec![CharSubgroup {
        subgroup: Subgroup::full_group(pres.clone()),
        certificate: CharCertificate::HomologyLevel { n: 1 },
    }];
    for step in steps {
        let node = match step {
            TowerStep::HomologyCover(n) => homology_cover(pres, *n, budget)?,
            TowerStep::CharCore(sub) => {
                if **sub.presentation() != **pres {
                    return Err(Error::PresentationMismatch);
                }
                char_core(sub, budget)?
            }
            TowerStep::Explicit(c) => {
                if **c.subgroup.presentation() != **pres {
                    return Err(Error::PresentationMismatch);
                }
                if !c.verify(budget)? {
                    return Err(Error::InconsistentInput(format!(
                        "certificate {} does not verify",
                        c.certificate.label()
                    )));
                }
                c.clone()
            }
        };
        if !nodes.iter().any(|n| n.subgroup == node.subgroup) {
            nodes.push(node);
        }
    }
    nodes.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j || nodes[i].subgroup.index() % nodes[j].subgroup.index() != 0 {
                continue;
            }
            if nodes[i].subgroup.coset_map_into(&nodes[j].subgroup)?.is_some() {
                let tag = char_order(&nodes[i], &nodes[j], budget)?.tag;
                edges.push(TowerEdge {
                    from: i,
                    to: j,
                    relative_degree: nodes[i].subgroup.index() / nodes[j].subgroup.index(),
                    char_tag: tag,
                });
            }
        }
    }
    let graph = TowerGraph { base_genus, nodes, edges };
    graph.check()?;
    Ok(graph)
}

impl TowerGraph {
    pub fn stratum(&self, node: usize) -> Stratum {
        let degree = self.nodes[node].subgroup.index();
        Stratum { genus: degree * (self.base_genus - 1) + 1, degree }
    }

    pub fn strata(&self) -> Vec<Stratum> {
        (0..self.nodes.len()).map(|i| self.stratum(i)).collect()
    }

    /// Acyclicity, transitivity, degree multiplicativity, and reachability of
    /// the base.
    pub fn check(&self) -> Result<()> {
        let arrows: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        for e in &self.edges {
            if arrows.contains(&(e.to, e.from)) {
                return Err(Error::IncompatibleTower("two-way arrow".into()));
            }
            if self.stratum(e.from).degree != e.relative_degree * self.stratum(e.to).degree {
                return Err(Error::IncompatibleTower(format!("degree mismatch on {} -> {}", e.from, e.to)));
            }
            for f in self.edges.iter().filter(|f| f.from == e.to) {
                if !arrows.contains(&(e.from, f.to)) {
                    return Err(Error::IncompatibleTower(format!("missing composite {} -> {}", e.from, f.to)));
                }
            }
        }
        let root = self.nodes.iter().position(|n| n.subgroup.is_full_group());
        match root {
            Some(r) => {
                for i in (0..self.nodes.len()).filter(|&i| i != r) {
                    if !arrows.contains(&(i, r)) {
                        return Err(Error::IncompatibleTower(format!("node {i} does not reach the base")));
                    }
                }
            }
            None => return Err(Error::IncompatibleTower("no base node".into())),
        }
        Ok(())
    }

    /// Graphviz rendering with strata labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph tower {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let st = self.stratum(i);
            let _ = writeln!(
                s,
                "  n{i} [label=\"n{i}\\ngenus {} degree {}\\n{}\"];",
                st.genus,
                st.degree,
                n.certificate.label()
            );
        }
        for e in &self.edges {
            let style = match e.char_tag {
                CharTag::Yes => "solid",
                CharTag::No => "dotted",
                CharTag::Unknown => "dashed",
            };
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{} ({})\", style={style}];",
                e.from,
                e.to,
                e.relative_degree,
                e.char_tag.as_str()
            );
        }
        s.push_str("}\n");
        s
    }
}
