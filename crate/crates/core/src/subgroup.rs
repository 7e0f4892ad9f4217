//! Finite-index subgroups stored as pointed transitive coset tables.
//!
//! Cosets are right cosets `H g`; a word acts on cosets letter by letter from
//! the left end, so `w` lies in `H` iff tracing `w` from the basepoint returns
//! to the basepoint. Every [`Subgroup`] is kept in canonical form: the
//! basepoint is coset 0 and the remaining cosets are numbered in breadth-first
//! discovery order over the generators `a1, b1, a2, b2, ...` (forward columns
//! only). Two subgroups are equal iff their canonical tables are identical.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::presentation::{Embedding, GenericPresentation, Presentation};
use crate::word::{Letter, Word};

/// A pointed permutation action that need not be canonical (or transitive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    /// `perms[g][p]` is the image of point `p` under generator `g`.
    pub perms: Vec<Vec<u32>>,
    pub basepoint: u32,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    /// Renames point `p` to `relabel[p]`.
    pub fn relabeled(&self, relabel: &[u32]) -> CosetAction {
        let n = self.degree();
        let mut perms = vec![vec![0u32; n]; self.perms.len()];
        for (g, perm) in self.perms.iter().enumerate() {
            for p in 0..n {
                perms[g][relabel[p] as usize] = relabel[perm[p] as usize];
            }
        }
        CosetAction { perms, basepoint: relabel[self.basepoint as usize] }
    }
}

/// Spanning-tree data for the Schreier generators of a subgroup.
#[derive(Clone, Debug)]
pub struct SchreierSystem {
    /// Transversal word of each coset (path in the BFS tree from the basepoint).
    pub transversal: Vec<Word>,
    /// Nontrivial Schreier generators `t_c g t_{cg}^-1`, in row-major edge order.
    pub generators: Vec<Word>,
    /// `edge[c * k + g]` is the Schreier generator index of edge `(c, g)`,
    /// or `None` for tree edges.
    pub edge: Vec<Option<u32>>,
}

/// A finite-index subgroup of a finitely presented group.
#[derive(Clone)]
pub struct Subgroup {
    pres: Arc<Presentation>,
    index: usize,
    fwd: Vec<u32>,
    inv: Vec<u32>,
    schreier: OnceLock<Arc<SchreierSystem>>,
    rewritten: OnceLock<Arc<Presentation>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
            && self.fwd == other.fwd
            && (Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres)
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state);
        self.fwd.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.index, &self.fwd).cmp(&(other.index, &other.fwd))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup").field("index", &self.index).field("table", &self.rows()).finish()
    }
}

/// A covering between two subgroups: `sub <= sup`, with the equivariant map
/// sending cosets of `sub` to cosets of `sup` (the factoring covering).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringArrow {
    pub sub: Subgroup,
    pub sup: Subgroup,
    pub relative_degree: usize,
    pub coset_map: Vec<u32>,
}

/// The quotient `G / N` of a normal subgroup, acting on cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckGroup {
    pub generators: Vec<Vec<u32>>,
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
}

/// Breadth-first orbit of `start` under `step`, producing a canonical table.
pub(crate) fn orbit_table<S, F>(generators: usize, start: S, cap: Option<u64>, mut step: F) -> Result<Vec<u32>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, usize) -> S,
{
    let mut label: HashMap<S, u32> = HashMap::new();
    let mut states: Vec<S> = vec![start.clone()];
    label.insert(start, 0);
    let mut fwd: Vec<u32> = Vec::new();
    let mut c = 0;
    while c < states.len() {
        for g in 0..generators {
            let next = step(&states[c], g);
            let id = match label.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    if let Some(cap) = cap {
                        if id as u64 >= cap {
                            return Err(Error::IntersectionIndexOverflow { index: id as u64 + 1, cap });
                        }
                    }
                    label.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            fwd.push(id);
        }
        c += 1;
    }
    Ok(fwd)
}

impl Subgroup {
    /// Builds a subgroup from one permutation per generator.
    ///
    /// With `strict` the action must be transitive; otherwise it is restricted
    /// to the orbit of the basepoint.
    pub fn from_permutations(
        pres: Arc<Presentation>,
        perms: Vec<Vec<u32>>,
        basepoint: u32,
        strict: bool,
    ) -> Result<Subgroup> {
        let k = pres.generator_count();
        if perms.len() != k {
            return Err(Error::InvalidPermutation(format!("expected {k} permutations, got {}", perms.len())));
        }
        let n = perms.first().map_or(0, Vec::len);
        if n == 0 || basepoint as usize >= n {
            return Err(Error::InvalidPermutation("basepoint out of range".into()));
        }
        for perm in &perms {
            if perm.len() != n {
                return Err(Error::InvalidPermutation("permutations act on different sets".into()));
            }
            let mut seen = vec![false; n];
            for &x in perm {
                if x as usize >= n || seen[x as usize] {
                    return Err(Error::InvalidPermutation("column is not a permutation".into()));
                }
                seen[x as usize] = true;
            }
        }
        let action = CosetAction { perms, basepoint };
        check_relators(&pres, &action)?;
        let fwd = orbit_table(k, basepoint, None, |&p, g| action.perms[g][p as usize])?;
        let index = fwd.len() / k.max(1);
        if strict && index != n {
            return Err(Error::NotTransitive { orbit: index, total: n });
        }
        Ok(Subgroup::from_canonical(pres, fwd))
    }

    pub fn from_action(pres: Arc<Presentation>, action: &CosetAction, strict: bool) -> Result<Subgroup> {
        Subgroup::from_permutations(pres, action.perms.clone(), action.basepoint, strict)
    }

    /// Row-major table (`rows[c][g]`), as stored in subgroup files.
    pub fn from_rows(pres: Arc<Presentation>, rows: &[Vec<u32>], basepoint: u32) -> Result<Subgroup> {
        let k = pres.generator_count();
        let n = rows.len();
        let mut perms = vec![vec![0u32; n]; k];
        for (c, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidPermutation(format!("row {c} has {} entries, expected {k}", row.len())));
            }
            for g in 0..k {
                perms[g][c] = row[g];
            }
        }
        Subgroup::from_permutations(pres, perms, basepoint, true)
    }

    pub(crate) fn from_canonical(pres: Arc<Presentation>, fwd: Vec<u32>) -> Subgroup {
        let k = pres.generator_count();
        let index = if k == 0 { 1 } else { fwd.len() / k };
        let mut inv = vec![0u32; fwd.len()];
        for c in 0..index {
            for g in 0..k {
                let d = fwd[c * k + g] as usize;
                inv[d * k + g] = c as u32;
            }
        }
        Subgroup { pres, index, fwd, inv, schreier: OnceLock::new(), rewritten: OnceLock::new() }
    }

    pub fn full_group(pres: Arc<Presentation>) -> Subgroup {
        let k = pres.generator_count();
        Subgroup::from_canonical(pres, vec![0; k])
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generator_count(&self) -> usize {
        self.pres.generator_count()
    }

    pub fn is_full_group(&self) -> bool {
        self.index == 1
    }

    /// Canonical form; every stored subgroup already is canonical.
    pub fn canonicalize(&self) -> Subgroup {
        self.clone()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let k = self.generator_count();
        (0..self.index).map(|c| self.fwd[c * k..(c + 1) * k].to_vec()).collect()
    }

    pub fn to_action(&self) -> CosetAction {
        let k = self.generator_count();
        let perms = (0..k).map(|g| (0..self.index).map(|c| self.fwd[c * k + g]).collect()).collect();
        CosetAction { perms, basepoint: 0 }
    }

    /// Image of coset `c` under one letter.
    #[inline]
    pub fn act(&self, c: u32, x: Letter) -> u32 {
        let k = self.generator_count();
        let g = x.unsigned_abs() as usize - 1;
        if x > 0 {
            self.fwd[c as usize * k + g]
        } else {
            self.inv[c as usize * k + g]
        }
    }

    pub fn trace(&self, start: u32, w: &Word) -> u32 {
        w.letters().iter().fold(start, |c, &x| self.act(c, x))
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.trace(0, w) == 0
    }

    /// Genus of the covering surface, `N (g - 1) + 1`.
    pub fn covering_genus(&self) -> Option<usize> {
        self.pres.genus().map(|g| self.index * (g - 1) + 1)
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn schreier(&self) -> &SchreierSystem {
        self.schreier.get_or_init(|| Arc::new(self.build_schreier()))
    }

    fn build_schreier(&self) -> SchreierSystem {
        let k = self.generator_count();
        let n = self.index;
        let mut transversal = vec![Word::empty(); n];
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut tree = vec![false; n * k];
        // canonical numbering is BFS order, so parents precede children
        for c in 0..n {
            for g in 0..k {
                let d = self.fwd[c * k + g] as usize;
                if !reached[d] {
                    reached[d] = true;
                    tree[c * k + g] = true;
                    let mut t = transversal[c].clone();
                    t.push(g as Letter + 1);
                    transversal[d] = t;
                }
            }
        }
        let mut generators = Vec::new();
        let mut edge = vec![None; n * k];
        for c in 0..n {
            for g in 0..k {
                if tree[c * k + g] {
                    continue;
                }
                let d = self.fwd[c * k + g] as usize;
                let mut s = transversal[c].clone();
                s.push(g as Letter + 1);
                s.mul_assign(&transversal[d].inverse());
                edge[c * k + g] = Some(generators.len() as u32);
                generators.push(s);
            }
        }
        SchreierSystem { transversal, generators, edge }
    }

    pub fn schreier_generators(&self) -> &[Word] {
        &self.schreier().generators
    }

    /// Reidemeister rewriting of a word starting at coset `start`; returns the
    /// word over Schreier generators and the end coset.
    pub fn rewrite_from(&self, start: u32, w: &Word) -> (Word, u32) {
        let k = self.generator_count();
        let sys = self.schreier();
        let mut out = Word::empty();
        let mut c = start;
        for &x in w.letters() {
            let g = x.unsigned_abs() as usize - 1;
            if x > 0 {
                if let Some(s) = sys.edge[c as usize * k + g] {
                    out.push(s as Letter + 1);
                }
                c = self.fwd[c as usize * k + g];
            } else {
                let d = self.inv[c as usize * k + g];
                if let Some(s) = sys.edge[d as usize * k + g] {
                    out.push(-(s as Letter + 1));
                }
                c = d;
            }
        }
        (out, c)
    }

    /// Expresses an element of this subgroup over its Schreier generators.
    pub fn rewrite(&self, w: &Word) -> Option<Word> {
        let (out, end) = self.rewrite_from(0, w);
        (end == 0).then_some(out)
    }

    /// Presentation of this subgroup on its Schreier generators, one relator
    /// per coset (the rewritten conjugates `t r t^-1` of each ambient relator).
    /// Carries an embedding into the root surface group when one is known.
    pub fn reidemeister_schreier(&self) -> Arc<Presentation> {
        self.rewritten
            .get_or_init(|| {
                let sys = self.schreier();
                let mut relators = Vec::new();
                for c in 0..self.index as u32 {
                    for r in self.pres.relators() {
                        let (rw, end) = self.rewrite_from(c, r);
                        debug_assert_eq!(end, c);
                        relators.push(rw);
                    }
                }
                let pres = GenericPresentation::new(sys.generators.len(), relators)
                    .expect("rewritten relators use Schreier generators only");
                let embedded = match self.pres.as_ref() {
                    Presentation::Surface(s) => {
                        Some(Embedding { root: s.clone(), images: sys.generators.clone() })
                    }
                    Presentation::Generic(g) => g.embedding().map(|e| Embedding {
                        root: e.root.clone(),
                        images: sys.generators.iter().map(|s| s.substitute(&e.images)).collect(),
                    }),
                };
                let pres = match embedded {
                    Some(e) => pres.with_embedding(e).expect("one image per generator"),
                    None => pres,
                };
                Arc::new(Presentation::Generic(pres))
            })
            .clone()
    }

    /// G-equivariant map from cosets of `self` to cosets of `other` fixing the
    /// basepoint; exists iff `self <= other`.
    pub fn coset_map_into(&self, other: &Subgroup) -> Result<Option<Vec<u32>>> {
        self.same_ambient(other)?;
        let k = self.generator_count();
        let mut map = vec![u32::MAX; self.index];
        map[0] = 0;
        // canonical order is BFS order, so every coset's BFS parent is mapped first
        for c in 0..self.index {
            let img = map[c];
            for g in 0..k {
                let d = self.fwd[c * k + g] as usize;
                let e = other.fwd[img as usize * k + g];
                if map[d] == u32::MAX {
                    map[d] = e;
                } else if map[d] != e {
                    return Ok(None);
                }
            }
        }
        Ok(Some(map))
    }

    /// Containment via Schreier generators of `self`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.same_ambient(other)?;
        if other.index > self.index || self.index % other.index != 0 {
            return Ok(false);
        }
        Ok(self.schreier_generators().iter().all(|s| other.contains(s)))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.intersect_capped(other, None)
    }

    /// Intersection as the basepoint orbit of the product action.
    pub fn intersect_capped(&self, other: &Subgroup, cap: Option<u64>) -> Result<Subgroup> {
        self.same_ambient(other)?;
        let k = self.generator_count();
        let fwd = orbit_table(k, (0u32, 0u32), cap, |&(a, b), g| {
            (self.fwd[a as usize * k + g], other.fwd[b as usize * k + g])
        })?;
        Ok(Subgroup::from_canonical(self.pres.clone(), fwd))
    }

    /// The subgroup `w H w^-1`: the stabilizer of the image of the basepoint
    /// under `w^-1`.
    pub fn conjugate(&self, w: &Word) -> Subgroup {
        let start = self.trace(0, &w.inverse());
        let k = self.generator_count();
        let fwd = orbit_table(k, start, None, |&c, g| self.fwd[c as usize * k + g])
            .expect("uncapped orbit");
        Subgroup::from_canonical(self.pres.clone(), fwd)
    }

    /// Some `w` with `other = w self w^-1`, found by trying every coset as
    /// the basepoint; `None` when the two are not conjugate.
    pub fn conjugator_to(&self, other: &Subgroup) -> Result<Option<Word>> {
        if self.pres != other.pres {
            return Err(Error::PresentationMismatch);
        }
        if self.index != other.index {
            return Ok(None);
        }
        let k = self.generator_count();
        for c in 0..self.index as u32 {
            let fwd = orbit_table(k, c, None, |&d, g| self.fwd[d as usize * k + g])?;
            if fwd == other.fwd {
                return Ok(Some(self.schreier().transversal[c as usize].inverse()));
            }
        }
        Ok(None)
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> Result<bool> {
        Ok(self.conjugator_to(other)?.is_some())
    }

    pub fn is_normal(&self) -> bool {
        (0..self.generator_count()).all(|g| self.conjugate(&Word::generator(g)) == *self)
    }

    /// The factoring covering `self -> alpha` when `self <= alpha`.
    pub fn factor_through(&self, alpha: &Subgroup) -> Result<Option<CoveringArrow>> {
        Ok(self.coset_map_into(alpha)?.map(|coset_map| CoveringArrow {
            sub: self.clone(),
            sup: alpha.clone(),
            relative_degree: self.index / alpha.index,
            coset_map,
        }))
    }

    /// `self` as a subgroup of `alpha`, over the Reidemeister-Schreier
    /// presentation of `alpha`. Requires `self <= alpha`.
    pub fn relative_to(&self, alpha: &Subgroup) -> Result<Subgroup> {
        let map = self
            .coset_map_into(alpha)?
            .ok_or_else(|| Error::InconsistentInput("subgroup is not contained in the ambient cover".into()))?;
        let fiber: Vec<u32> = (0..self.index as u32).filter(|&c| map[c as usize] == 0).collect();
        let mut position = vec![u32::MAX; self.index];
        for (i, &c) in fiber.iter().enumerate() {
            position[c as usize] = i as u32;
        }
        let rs = alpha.reidemeister_schreier();
        let perms: Vec<Vec<u32>> = alpha
            .schreier_generators()
            .iter()
            .map(|s| fiber.iter().map(|&c| position[self.trace(c, s) as usize]).collect())
            .collect();
        Subgroup::from_permutations(rs, perms, 0, true)
    }

    /// Inverse of [`Subgroup::relative_to`]: a subgroup of `alpha`'s rewritten
    /// presentation, viewed in the ambient group of `alpha`.
    pub fn lift_from(relative: &Subgroup, alpha: &Subgroup) -> Result<Subgroup> {
        let rs = alpha.reidemeister_schreier();
        if !(Arc::ptr_eq(relative.presentation(), &rs) || **relative.presentation() == *rs) {
            return Err(Error::PresentationMismatch);
        }
        let k = alpha.generator_count();
        let sys = alpha.schreier();
        let fwd = orbit_table(k, (0u32, 0u32), None, |&(c, e), g| {
            let next_e = match sys.edge[c as usize * k + g] {
                Some(s) => relative.act(e, s as Letter + 1),
                None => e,
            };
            (alpha.fwd[c as usize * k + g], next_e)
        })?;
        Ok(Subgroup::from_canonical(alpha.pres.clone(), fwd))
    }

    pub fn deck_group(&self) -> Result<DeckGroup> {
        if !self.is_normal() {
            return Err(Error::NotNormal);
        }
        let action = self.to_action();
        let n = self.index;
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone(), ());
        queue.push_back(identity);
        let mut exponent = 1u64;
        while let Some(p) = queue.pop_front() {
            exponent = exponent.lcm(&permutation_order(&p));
            for gen in &action.perms {
                let q: Vec<u32> = p.iter().map(|&x| gen[x as usize]).collect();
                if !seen.contains_key(&q) {
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
        }
        let abelian = action.perms.iter().enumerate().all(|(i, p)| {
            action.perms[i + 1..].iter().all(|q| (0..n).all(|x| p[q[x] as usize] == q[p[x] as usize]))
        });
        Ok(DeckGroup { generators: action.perms, order: seen.len(), abelian, exponent })
    }
}

fn permutation_order(p: &[u32]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1u64;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// Verifies that every relator acts trivially from every point.
pub(crate) fn check_relators(pres: &Presentation, action: &CosetAction) -> Result<()> {
    let n = action.degree();
    let inverses: Vec<Vec<u32>> = action
        .perms
        .iter()
        .map(|perm| {
            let mut inv = vec![0u32; n];
            for (p, &q) in perm.iter().enumerate() {
                inv[q as usize] = p as u32;
            }
            inv
        })
        .collect();
    for (ri, r) in pres.relators().iter().enumerate() {
        for start in 0..n as u32 {
            let end = r.letters().iter().fold(start, |p, &x| {
                let g = x.unsigned_abs() as usize - 1;
                if x > 0 {
                    action.perms[g][p as usize]
                } else {
                    inverses[g][p as usize]
                }
            });
            if end != start {
                return Err(Error::RelatorViolated { relator: ri, coset: start as usize });
            }
        }
    }
    Ok(())
}

/// Kernel of a permutation representation: the regular action of its image.
pub fn kernel_of(pres: Arc<Presentation>, perms: &[Vec<u32>], cap: Option<u64>) -> Result<Subgroup> {
    let k = pres.generator_count();
    let n = perms.first().map_or(0, Vec::len);
    let identity: Vec<u32> = (0..n as u32).collect();
    let fwd = orbit_table(k, identity, cap, |p, g| p.iter().map(|&x| perms[g][x as usize]).collect())?;
    Ok(Subgroup::from_canonical(pres, fwd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    fn genus2() -> Arc<Presentation> {
        Presentation::surface(2).unwrap()
    }

    fn swap_on(pres: &Arc<Presentation>, generator: usize) -> Subgroup {
        let mut perms = vec![vec![0, 1]; 4];
        perms[generator] = vec![1, 0];
        Subgroup::from_permutations(pres.clone(), perms, 0, true).unwrap()
    }

    #[test]
    fn full_group_contains_everything() {
        let g = Subgroup::full_group(genus2());
        assert_eq!(g.index(), 1);
        assert!(g.contains(&Word::new([1, 2, 3, -4])));
        assert_eq!(g.covering_genus(), Some(2));
        assert_eq!(g.schreier_generators().len(), 4);
    }

    #[test]
    fn index_two_membership() {
        let h = swap_on(&genus2(), 0);
        assert_eq!(h.index(), 2);
        assert!(!h.contains(&Word::new([1])));
        assert!(h.contains(&Word::new([1, 1])));
        assert!(h.contains(&Word::new([2])));
        assert_eq!(h.covering_genus(), Some(3));
        assert_eq!(h.schreier_generators().len(), 7);
        assert!(h.schreier_generators().iter().all(|s| h.contains(s)));
    }

    #[test]
    fn conjugacy_search() {
        let pres = genus2();
        let t = vec![1, 0, 2];
        let c = vec![1, 2, 0];
        let id = vec![0, 1, 2];
        let h = Subgroup::from_permutations(pres.clone(), vec![t, id.clone(), c, id], 0, true).unwrap();
        assert!(!h.is_normal());
        for w in [Word::new([1]), Word::new([3, -2]), Word::new([-3, -3])] {
            let k = h.conjugate(&w);
            let found = h.conjugator_to(&k).unwrap().unwrap();
            assert_eq!(h.conjugate(&found), k);
        }
        assert!(!h.is_conjugate_to(&swap_on(&pres, 0)).unwrap());
        assert!(!swap_on(&pres, 0).is_conjugate_to(&swap_on(&pres, 1)).unwrap());
    }

    #[test]
    fn relator_violation_detected() {
        let three_cycle = vec![1, 2, 0];
        let transposition = vec![1, 0, 2];
        let id = vec![0, 1, 2];
        let perms = vec![three_cycle, transposition, id.clone(), id];
        let err = Subgroup::from_permutations(genus2(), perms, 0, true).unwrap_err();
        assert!(matches!(err, Error::RelatorViolated { .. }));
    }

    #[test]
    fn intransitive_input() {
        let id = vec![0, 1, 2];
        let perms = vec![vec![1, 0, 2], id.clone(), id.clone(), id];
        let strict = Subgroup::from_permutations(genus2(), perms.clone(), 0, true);
        assert!(matches!(strict, Err(Error::NotTransitive { orbit: 2, total: 3 })));
        let loose = Subgroup::from_permutations(genus2(), perms, 2, false).unwrap();
        assert!(loose.is_full_group());
    }

    #[test]
    fn relabeling_gives_the_same_canonical_form() {
        let pres = genus2();
        let action = CosetAction {
            perms: vec![vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2], vec![2, 0, 1]],
            basepoint: 0,
        };
        let a = Subgroup::from_action(pres.clone(), &action, true).unwrap();
        let relabel = [2u32, 0, 1];
        let b = Subgroup::from_action(pres, &action.relabeled(&relabel), true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonicalize(), a);
    }

    #[test]
    fn distinct_index_two_subgroups_differ() {
        let pres = genus2();
        assert_ne!(swap_on(&pres, 0), swap_on(&pres, 1));
    }

    #[test]
    fn intersection_of_two_index_two() {
        let pres = genus2();
        let a = swap_on(&pres, 0);
        let b = swap_on(&pres, 2);
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.index(), 4);
        assert!(c.is_subgroup_of(&a).unwrap());
        assert!(c.is_subgroup_of(&b).unwrap());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&Subgroup::full_group(pres)).unwrap(), a);
        let arrow = c.factor_through(&a).unwrap().unwrap();
        assert_eq!(arrow.relative_degree, 2);
        assert!(a.factor_through(&b).unwrap().is_none());
        assert_eq!(a.factor_through(&a).unwrap().unwrap().relative_degree, 1);
    }

    #[test]
    fn normality_and_deck_group() {
        let pres = genus2();
        let a = swap_on(&pres, 1);
        assert!(a.is_normal());
        let deck = a.deck_group().unwrap();
        assert_eq!(deck.order, 2);
        assert!(deck.abelian);
        let full = Subgroup::full_group(pres.clone());
        assert_eq!(full.deck_group().unwrap().order, 1);
        assert_eq!(a.conjugate(&Word::new([1, 3])), a);
        assert_eq!(a.conjugate(&Word::empty()), a);
    }

    #[test]
    fn rewriting_recovers_elements() {
        let pres = genus2();
        let h = swap_on(&pres, 0).intersect(&swap_on(&pres, 3)).unwrap();
        let gens = h.schreier_generators().to_vec();
        let w = Word::new([1, 1, 2, 4, 3, 4]);
        assert!(h.contains(&w));
        let rw = h.rewrite(&w).unwrap();
        assert_eq!(rw.substitute(&gens), w);
        assert!(h.rewrite(&Word::new([1])).is_none());
    }

    #[test]
    fn relative_then_lift_round_trips() {
        let pres = genus2();
        let a = swap_on(&pres, 0);
        let c = a.intersect(&swap_on(&pres, 2)).unwrap();
        let rel = c.relative_to(&a).unwrap();
        assert_eq!(rel.index(), 2);
        assert_eq!(Subgroup::lift_from(&rel, &a).unwrap(), c);
    }
}
