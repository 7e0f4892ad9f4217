//! Group presentations: the closed-surface presentation and the generic
//! presentations produced by Reidemeister-Schreier rewriting.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// `<a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>` with `g >= 2`.
///
/// Generator `a_i` has index `2i - 1`, `b_i` has index `2i` (1-based letters).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfacePresentation {
    genus: usize,
    relator: Word,
    dehn: Arc<DehnTable>,
}

impl SurfacePresentation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidGenus(genus));
        }
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            let a = (2 * i + 1) as Letter;
            let b = (2 * i + 2) as Letter;
            letters.extend_from_slice(&[a, b, -a, -b]);
        }
        let relator = Word::new(letters);
        debug_assert_eq!(relator.len(), 4 * genus);
        let dehn = Arc::new(DehnTable::new(&relator));
        Ok(SurfacePresentation { genus, relator, dehn })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    /// Dehn's algorithm. The surface relator satisfies C'(1/6) for genus at
    /// least two, so the result is empty iff the input is trivial in the group.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        self.dehn.reduce(w)
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    pub fn generator_name(&self, index: usize) -> String {
        crate::word::surface_letter_name(index as Letter + 1)
    }
}

/// Symmetrized relator set for Dehn's algorithm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct DehnTable {
    len: usize,
    rotations: Vec<Vec<Letter>>,
    // rotations grouped by first letter; slot = 2*(|x|-1) + (x<0)
    by_first: Vec<Vec<usize>>,
}

impl DehnTable {
    fn new(relator: &Word) -> Self {
        let r = relator.letters();
        let len = r.len();
        let inv: Vec<Letter> = relator.inverse().into_letters();
        let mut rotations = Vec::with_capacity(2 * len);
        for base in [r, inv.as_slice()] {
            for s in 0..len {
                let rot: Vec<Letter> = base[s..].iter().chain(base[..s].iter()).copied().collect();
                rotations.push(rot);
            }
        }
        let slots = 2 * relator.max_generator();
        let mut by_first = vec![Vec::new(); slots];
        for (i, rot) in rotations.iter().enumerate() {
            by_first[letter_slot(rot[0])].push(i);
        }
        DehnTable { len, rotations, by_first }
    }

    fn reduce(&self, w: &Word) -> Word {
        let mut cur: Vec<Letter> = w.letters().to_vec();
        let half = self.len / 2;
        loop {
            let mut replaced = false;
            'scan: for p in 0..cur.len() {
                let slot = letter_slot(cur[p]);
                if slot >= self.by_first.len() {
                    continue;
                }
                for &ri in &self.by_first[slot] {
                    let rot = &self.rotations[ri];
                    let mut m = 0;
                    while m < self.len && p + m < cur.len() && cur[p + m] == rot[m] {
                        m += 1;
                    }
                    if m > half {
                        let complement: Vec<Letter> = rot[m..].iter().rev().map(|x| -x).collect();
                        cur.splice(p..p + m, complement);
                        cur = Word::new(cur).into_letters();
                        replaced = true;
                        break 'scan;
                    }
                }
            }
            if !replaced {
                return Word::new(cur);
            }
        }
    }
}

fn letter_slot(x: Letter) -> usize {
    2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
}

/// Generators of a presentation written as words of a surface group; used to
/// solve the word problem in subgroups presented by rewriting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub root: SurfacePresentation,
    pub images: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenericPresentation {
    generator_count: usize,
    relators: Vec<Word>,
    embedding: Option<Arc<Embedding>>,
}

impl GenericPresentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if r.max_generator() > generator_count {
                return Err(Error::InconsistentInput(format!(
                    "relator {i} uses a generator outside 1..={generator_count}"
                )));
            }
        }
        Ok(GenericPresentation { generator_count, relators, embedding: None })
    }

    pub fn with_embedding(mut self, embedding: Embedding) -> Result<Self> {
        if embedding.images.len() != self.generator_count {
            return Err(Error::InconsistentInput("embedding has the wrong number of images".into()));
        }
        self.embedding = Some(Arc::new(embedding));
        Ok(self)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_deref()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    Surface(SurfacePresentation),
    Generic(GenericPresentation),
}

impl Presentation {
    pub fn surface(genus: usize) -> Result<Arc<Presentation>> {
        Ok(Arc::new(Presentation::Surface(SurfacePresentation::new(genus)?)))
    }

    pub fn generator_count(&self) -> usize {
        match self {
            Presentation::Surface(s) => s.generator_count(),
            Presentation::Generic(g) => g.generator_count(),
        }
    }

    pub fn relators(&self) -> &[Word] {
        match self {
            Presentation::Surface(s) => std::slice::from_ref(&s.relator),
            Presentation::Generic(g) => g.relators(),
        }
    }

    pub fn as_surface(&self) -> Option<&SurfacePresentation> {
        match self {
            Presentation::Surface(s) => Some(s),
            Presentation::Generic(_) => None,
        }
    }

    pub fn genus(&self) -> Option<usize> {
        self.as_surface().map(|s| s.genus())
    }

    /// Maps a word to the surface group that hosts the word problem.
    pub fn to_root(&self, w: &Word) -> Result<(SurfacePresentation, Word)> {
        match self {
            Presentation::Surface(s) => Ok((s.clone(), w.clone())),
            Presentation::Generic(g) => {
                let e = g.embedding().ok_or(Error::WordProblemUnavailable)?;
                Ok((e.root.clone(), w.substitute(&e.images)))
            }
        }
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        let (root, rw) = self.to_root(w)?;
        Ok(root.is_trivial(&rw))
    }

    pub fn words_equal(&self, a: &Word, b: &Word) -> Result<bool> {
        self.is_trivial(&a.mul(&b.inverse()))
    }

    /// Shortens a word without changing the element it represents. Only
    /// surface presentations get Dehn reduction; generic ones are freely reduced.
    pub fn simplify(&self, w: &Word) -> Word {
        match self {
            Presentation::Surface(s) => s.dehn_reduce(w),
            Presentation::Generic(_) => w.clone(),
        }
    }
}

/// Serializable description of a presentation's shape (used in reports).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationSummary {
    pub generators: usize,
    pub relators: usize,
    pub genus: Option<usize>,
}

impl From<&Presentation> for PresentationSummary {
    fn from(p: &Presentation) -> Self {
        PresentationSummary {
            generators: p.generator_count(),
            relators: p.relators().len(),
            genus: p.genus(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_relator_shape() {
        let s = SurfacePresentation::new(2).unwrap();
        assert_eq!(s.relator().letters(), &[1, 2, -1, -2, 3, 4, -3, -4]);
        assert_eq!(s.generator_count(), 4);
        assert!(SurfacePresentation::new(1).is_err());
        assert!(SurfacePresentation::new(0).is_err());
    }

    #[test]
    fn dehn_detects_relator_conjugates() {
        let s = SurfacePresentation::new(2).unwrap();
        let r = s.relator().clone();
        let g = Word::new([2, 3, -1]);
        assert!(s.is_trivial(&r));
        assert!(s.is_trivial(&r.inverse()));
        assert!(s.is_trivial(&g.conjugate_by(&r)));
        assert!(s.is_trivial(&g.conjugate_by(&r).mul(&r)));
        // handle-swapped relator is a conjugate of the original
        let swapped = Word::new([3, 4, -3, -4, 1, 2, -1, -2]);
        assert!(s.is_trivial(&swapped));
    }

    #[test]
    fn dehn_keeps_nontrivial_words() {
        let s = SurfacePresentation::new(2).unwrap();
        for w in [vec![1], vec![1, 2, -1, -2], vec![1, 2, -1, -2, 3, 4, -3], vec![1, 1, 2, 2]] {
            assert!(!s.is_trivial(&Word::new(w)));
        }
        // [a1,b1] = [b2,a2]: more than half the relator gets replaced
        let lhs = Word::new([1, 2, -1, -2]);
        let rhs = Word::new([4, 3, -4, -3]);
        assert!(s.is_trivial(&lhs.mul(&rhs.inverse())));
    }
}
