//! Low-index subgroup enumeration by backtracking over partial coset tables.
//!
//! The search always fills the first undefined entry in row-major order
//! (columns `a1, a1^-1, b1, b1^-1, ...`) and numbers new cosets in creation
//! order; relator scans only ever deduce entries between existing cosets. A
//! complete table is therefore produced in exactly one branch, so every
//! subgroup appears once without any isomorphism test.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::subgroup::Subgroup;

const UNDEF: u32 = u32::MAX;

struct Search {
    cols: usize,
    max_index: usize,
    relators: Vec<Vec<usize>>,
    nodes: u64,
    node_limit: u64,
    found: Vec<Vec<u32>>,
}

fn column(x: i32) -> usize {
    2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
}

impl Search {
    fn first_undefined(&self, t: &[u32], n: usize) -> Option<(usize, usize)> {
        let pos = t[..n * self.cols].iter().position(|&d| d == UNDEF)?;
        Some((pos / self.cols, pos % self.cols))
    }

    /// Scans every relator from every coset until nothing changes. Returns
    /// false on a contradiction.
    fn deduce(&self, t: &mut [u32], n: usize) -> bool {
        let cols = self.cols;
        loop {
            let mut changed = false;
            for c in 0..n {
                for r in &self.relators {
                    let len = r.len();
                    let mut f = c;
                    let mut i = 0;
                    while i < len {
                        let d = t[f * cols + r[i]];
                        if d == UNDEF {
                            break;
                        }
                        f = d as usize;
                        i += 1;
                    }
                    if i == len {
                        if f != c {
                            return false;
                        }
                        continue;
                    }
                    let mut b = c;
                    let mut j = len;
                    while j > i {
                        let d = t[b * cols + (r[j - 1] ^ 1)];
                        if d == UNDEF {
                            break;
                        }
                        b = d as usize;
                        j -= 1;
                    }
                    if j == i {
                        // f·r[i] is undefined but b·r[i] leads back, so f != b
                        return false;
                    }
                    if j == i + 1 {
                        let col = r[i];
                        if t[b * cols + (col ^ 1)] != UNDEF {
                            return false;
                        }
                        t[f * cols + col] = b as u32;
                        t[b * cols + (col ^ 1)] = f as u32;
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self, t: Vec<u32>, n: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::BudgetExceeded { what: "low-index search nodes", limit: self.node_limit });
        }
        let Some((c, col)) = self.first_undefined(&t, n) else {
            let k = self.cols / 2;
            let fwd: Vec<u32> = (0..n).flat_map(|c| (0..k).map(move |g| (c, g))).map(|(c, g)| t[c * self.cols + 2 * g]).collect();
            self.found.push(fwd);
            return Ok(());
        };
        let inv = col ^ 1;
        for d in 0..n {
            if t[d * self.cols + inv] != UNDEF {
                continue;
            }
            let mut next = t.clone();
            next[c * self.cols + col] = d as u32;
            next[d * self.cols + inv] = c as u32;
            if self.deduce(&mut next, n) {
                self.search(next, n)?;
            }
        }
        if n < self.max_index {
            let mut next = t;
            next[c * self.cols + col] = n as u32;
            next[n * self.cols + inv] = c as u32;
            if self.deduce(&mut next, n + 1) {
                self.search(next, n + 1)?;
            }
        }
        Ok(())
    }
}

/// All subgroups of index at most `max_index`, each once, sorted by index and
/// then by canonical table.
pub fn low_index_subgroups(pres: &Arc<Presentation>, max_index: usize, budget: &Budget) -> Result<Vec<Subgroup>> {
    if max_index == 0 {
        return Ok(Vec::new());
    }
    if max_index > budget.max_index {
        return Err(Error::BudgetExceeded { what: "maximum subgroup index", limit: budget.max_index as u64 });
    }
    let k = pres.generator_count();
    let cols = 2 * k;
    let mut search = Search {
        cols,
        max_index,
        relators: pres.relators().iter().map(|r| r.letters().iter().map(|&x| column(x)).collect()).collect(),
        nodes: 0,
        node_limit: budget.max_nodes,
        found: Vec::new(),
    };
    let table = vec![UNDEF; max_index * cols];
    let mut start = table;
    if !search.deduce(&mut start, 1) {
        return Ok(Vec::new());
    }
    search.search(start, 1)?;
    let mut out = Vec::with_capacity(search.found.len());
    for fwd in std::mem::take(&mut search.found) {
        let n = fwd.len() / k;
        let perms = (0..k).map(|g| (0..n).map(|c| fwd[c * k + g]).collect()).collect();
        out.push(Subgroup::from_permutations(pres.clone(), perms, 0, true)?);
    }
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    Ok(out)
}

/// Number of subgroups of each index `1..=max_index`.
pub fn index_counts(subgroups: &[Subgroup], max_index: usize) -> Vec<usize> {
    let mut counts = vec![0; max_index];
    for s in subgroups {
        counts[s.index() - 1] += 1;
    }
    counts
}
