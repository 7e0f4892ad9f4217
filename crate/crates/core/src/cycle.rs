//! Cycles of coverings from the base surface back to itself, and their
//! reduction to a single self-correspondence by fiber products.
//!
//! Every surface in a cycle is modeled by a finite-index subgroup of the base
//! group, and a covering arrow by a monomorphism from its source subgroup into
//! its target subgroup (images of the source's Schreier generators). Such a
//! monomorphism is itself a virtual automorphism onto its image.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::vaut::{TwoArrowCycle, VirtualAutomorphism};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    map: VirtualAutomorphism,
    target: Subgroup,
}

impl Arrow {
    pub fn new(source: Subgroup, target: Subgroup, images: Vec<Word>, budget: &Budget) -> Result<Self> {
        let image = crate::coset_enum::generated_subgroup(source.presentation(), &images, budget.max_cosets)?;
        let map = VirtualAutomorphism::new(source, image, images, budget)?;
        if !map.codomain().is_subgroup_of(&target)? {
            return Err(Error::InvalidCycle("arrow image is not inside its target".into()));
        }
        Ok(Arrow { map, target })
    }

    /// The covering given by inclusion `source <= target`.
    pub fn inclusion(source: &Subgroup, target: &Subgroup) -> Result<Self> {
        if !source.is_subgroup_of(target)? {
            return Err(Error::InvalidCycle("source is not inside target".into()));
        }
        Ok(Arrow { map: VirtualAutomorphism::identity(source), target: target.clone() })
    }

    /// The covering `h -> G` composed with an identification of `h` with
    /// another subgroup.
    pub fn from_vaut(v: &VirtualAutomorphism, target: &Subgroup) -> Result<Self> {
        if !v.codomain().is_subgroup_of(target)? {
            return Err(Error::InvalidCycle("arrow image is not inside its target".into()));
        }
        Ok(Arrow { map: v.clone(), target: target.clone() })
    }

    pub fn source(&self) -> &Subgroup {
        self.map.domain()
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        self.map.images()
    }

    pub fn map(&self) -> &VirtualAutomorphism {
        &self.map
    }

    /// Degree of the covering.
    pub fn degree(&self) -> usize {
        self.map.codomain().index() / self.target.index()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From the arrow's source to its target.
    Forward,
    /// From the arrow's target back to its source.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub arrow: Arrow,
    pub direction: Direction,
}

impl PathStep {
    pub fn forward(arrow: Arrow) -> Self {
        PathStep { arrow, direction: Direction::Forward }
    }

    pub fn backward(arrow: Arrow) -> Self {
        PathStep { arrow, direction: Direction::Backward }
    }

    fn start(&self) -> &Subgroup {
        match self.direction {
            Direction::Forward => self.arrow.source(),
            Direction::Backward => self.arrow.target(),
        }
    }

    fn end(&self) -> &Subgroup {
        match self.direction {
            Direction::Forward => self.arrow.target(),
            Direction::Backward => self.arrow.source(),
        }
    }
}

/// A path of coverings starting and ending at the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePath {
    steps: Vec<PathStep>,
}

/// Which adjacent pair gets rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    LeftmostFirst,
    RightmostFirst,
}

impl CyclePath {
    pub fn new(steps: Vec<PathStep>) -> Result<Self> {
        let (Some(first), Some(last)) = (steps.first(), steps.last()) else {
            return Err(Error::InvalidCycle("empty path".into()));
        };
        if !first.start().is_full_group() || !last.end().is_full_group() {
            return Err(Error::InvalidCycle("path must start and end at the base".into()));
        }
        for (i, w) in steps.windows(2).enumerate() {
            if w[0].end() != w[1].start() {
                return Err(Error::InvalidCycle(format!("steps {i} and {} do not meet", i + 1)));
            }
        }
        Ok(CyclePath { steps })
    }

    pub fn steps(&self) -> &[PathStep] {
        &self.steps
    }

    /// Composite of the per-arrow maps along the path (inverting backward
    /// steps), without any fiber products.
    pub fn direct_composite(&self, budget: &Budget) -> Result<VirtualAutomorphism> {
        let mut acc: Option<VirtualAutomorphism> = None;
        for step in &self.steps {
            let m = match step.direction {
                Direction::Forward => step.arrow.map.clone(),
                Direction::Backward => step.arrow.map.inverse(budget)?,
            };
            acc = Some(match acc {
                None => m,
                Some(a) => a.compose(&m, budget)?,
            });
        }
        Ok(acc.expect("nonempty path"))
    }

    /// Collapses the path to a two-arrow cycle: same-direction neighbours
    /// compose, and a peak `A -> B <- C` is replaced by the valley through
    /// the fiber product.
    pub fn reduce(&self, order: ReductionOrder, budget: &Budget) -> Result<TwoArrowCycle> {
        let mut steps = self.steps.clone();
        loop {
            let candidates: Vec<usize> = (0..steps.len().saturating_sub(1))
                .filter(|&i| !(steps[i].direction == Direction::Backward && steps[i + 1].direction == Direction::Forward))
                .collect();
            let pick = match order {
                ReductionOrder::LeftmostFirst => candidates.first(),
                ReductionOrder::RightmostFirst => candidates.last(),
            };
            let Some(&i) = pick else { break };
            let replacement = rewrite_pair(&steps[i], &steps[i + 1], budget)?;
            steps.splice(i..i + 2, replacement);
        }
        let (down, up) = match steps.as_slice() {
            [down, up] => (down.arrow.map.clone(), up.arrow.map.clone()),
            [single] => {
                let m = single.arrow.map.clone();
                match single.direction {
                    Direction::Forward => (VirtualAutomorphism::identity(m.domain()), m),
                    Direction::Backward => (m.clone(), VirtualAutomorphism::identity(m.domain())),
                }
            }
            _ => unreachable!("only valleys remain and a cycle has one"),
        };
        // alpha = image of the common cover under the first arrow
        let v = down.inverse(budget)?.compose(&up, budget)?;
        Ok(TwoArrowCycle::from(&v))
    }
}

fn rewrite_pair(a: &PathStep, b: &PathStep, budget: &Budget) -> Result<Vec<PathStep>> {
    use Direction::*;
    Ok(match (a.direction, b.direction) {
        (Forward, Forward) => {
            let map = a.arrow.map.compose(&b.arrow.map, budget)?;
            vec![PathStep::forward(Arrow { map, target: b.arrow.target.clone() })]
        }
        (Backward, Backward) => {
            let map = b.arrow.map.compose(&a.arrow.map, budget)?;
            vec![PathStep::backward(Arrow { map, target: a.arrow.target.clone() })]
        }
        (Forward, Backward) => {
            // A -f-> B <-g- C  becomes  A <-p- Z -q-> C
            let f = &a.arrow.map;
            let g = &b.arrow.map;
            let q = f.compose(&g.inverse(budget)?, budget)?;
            let z = q.domain().clone();
            let p = Arrow { map: VirtualAutomorphism::identity(&z), target: f.domain().clone() };
            let q = Arrow { map: q, target: g.domain().clone() };
            vec![PathStep::backward(p), PathStep::forward(q)]
        }
        (Backward, Forward) => unreachable!("valleys are never rewritten"),
    })
}
