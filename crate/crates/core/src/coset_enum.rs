//! Coset enumeration (HLT strategy) for the subgroup generated by a list of
//! words, optionally tracking how each table entry factors through the
//! generators.
//!
//! With tracking, entry `c·x = d` carries a word `p` over the symbols
//! `Y_1, ..., Y_m` (one per subgroup generator) such that
//! `t_c x t_d^-1 = p(y_1, ..., y_m)`, where `t_c` is the representative of
//! coset `c`. Tracing an element of the subgroup from coset 0 then writes it
//! over the generators, which is how virtual automorphisms are inverted.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::subgroup::{check_relators, Subgroup};
use crate::word::{Letter, Word};

const UNDEF: u32 = u32::MAX;

fn column(x: Letter) -> usize {
    2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
}

struct Hlt {
    cols: usize,
    track: bool,
    table: Vec<u32>,
    words: Vec<Word>,
    parent: Vec<u32>,
    rel: Vec<Word>,
    queue: VecDeque<(u32, u32, Word)>,
    limit: usize,
}

impl Hlt {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == UNDEF
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.rows() >= self.limit {
            return Err(Error::BudgetExceeded { what: "coset enumeration cosets", limit: self.limit as u64 });
        }
        let id = self.rows() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.words.extend(std::iter::repeat_n(Word::empty(), self.cols));
        self.parent.push(UNDEF);
        self.rel.push(Word::empty());
        Ok(id)
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    fn word(&self, c: u32, col: usize) -> &Word {
        &self.words[c as usize * self.cols + col]
    }

    fn w(&self, f: impl FnOnce() -> Word) -> Word {
        if self.track {
            f()
        } else {
            Word::empty()
        }
    }

    fn set_entry(&mut self, c: u32, col: usize, d: u32, w: Word) {
        let inv = self.w(|| w.inverse());
        self.table[c as usize * self.cols + col] = d;
        self.words[c as usize * self.cols + col] = w;
        self.table[d as usize * self.cols + (col ^ 1)] = c;
        self.words[d as usize * self.cols + (col ^ 1)] = inv;
    }

    fn clear_entry(&mut self, c: u32, col: usize) {
        self.table[c as usize * self.cols + col] = UNDEF;
        self.words[c as usize * self.cols + col] = Word::empty();
    }

    /// Live representative `r` of `c` with `t_c = Q t_r`.
    fn resolve(&self, mut c: u32) -> (u32, Word) {
        let mut q = Word::empty();
        while !self.alive(c) {
            if self.track {
                q.mul_assign(&self.rel[c as usize]);
            }
            c = self.parent[c as usize];
        }
        (c, q)
    }

    /// Records `t_c x = w t_e`.
    fn assign(&mut self, c: u32, col: usize, e: u32, w: Word) {
        let (c, qc) = self.resolve(c);
        let (e, qe) = self.resolve(e);
        let w = self.w(|| qc.inverse().mul(&w).mul(&qe));
        let f = self.get(c, col);
        if f != UNDEF {
            let p = self.w(|| w.inverse().mul(self.word(c, col)));
            self.queue.push_back((e, f, p));
            return;
        }
        let f = self.get(e, col ^ 1);
        if f != UNDEF {
            let p = self.w(|| w.mul(self.word(e, col ^ 1)));
            self.queue.push_back((c, f, p));
            return;
        }
        self.set_entry(c, col, e, w);
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b, q)) = self.queue.pop_front() {
            let (ra, qa) = self.resolve(a);
            let (rb, qb) = self.resolve(b);
            if ra == rb {
                continue;
            }
            // t_ra = r t_rb
            let r = self.w(|| qa.inverse().mul(&q).mul(&qb));
            let (dead, keep, rel) = if ra < rb { (rb, ra, self.w(|| r.inverse())) } else { (ra, rb, r) };
            self.parent[dead as usize] = keep;
            self.rel[dead as usize] = rel.clone();
            let mut moved = Vec::new();
            for col in 0..self.cols {
                let e = self.get(dead, col);
                if e == UNDEF {
                    continue;
                }
                let w = self.word(dead, col).clone();
                self.clear_entry(dead, col);
                if self.get(e, col ^ 1) == dead {
                    self.clear_entry(e, col ^ 1);
                }
                moved.push((col, e, w));
            }
            for (col, e, w) in moved {
                // t_dead x = w t_e and t_dead = rel t_keep
                let w = self.w(|| rel.inverse().mul(&w));
                self.assign(keep, col, e, w);
            }
        }
    }

    /// HLT scan of `r` from coset `c`, where `t_c r = value t_c`.
    fn scan_and_fill(&mut self, c: u32, r: &[usize], value: &Word) -> Result<()> {
        let len = r.len();
        loop {
            if !self.alive(c) {
                return Ok(());
            }
            let mut f = c;
            let mut p1 = Word::empty();
            let mut i = 0;
            while i < len {
                let d = self.get(f, r[i]);
                if d == UNDEF {
                    break;
                }
                if self.track {
                    p1.mul_assign(self.word(f, r[i]));
                }
                f = d;
                i += 1;
            }
            if i == len {
                if f != c {
                    let q = self.w(|| value.inverse().mul(&p1));
                    self.queue.push_back((c, f, q));
                    self.process_coincidences();
                }
                return Ok(());
            }
            let mut b = c;
            let mut t = Word::empty();
            let mut j = len;
            while j > i {
                let col = r[j - 1] ^ 1;
                let d = self.get(b, col);
                if d == UNDEF {
                    break;
                }
                if self.track {
                    t = self.word(b, col).inverse().mul(&t);
                }
                b = d;
                j -= 1;
            }
            let link = self.w(|| p1.inverse().mul(value).mul(&t.inverse()));
            if j == i {
                self.queue.push_back((f, b, link));
                self.process_coincidences();
                return Ok(());
            }
            if j == i + 1 {
                self.assign(f, r[i], b, link);
                self.process_coincidences();
                return Ok(());
            }
            let d = self.new_coset()?;
            self.set_entry(f, r[i], d, Word::empty());
        }
    }
}

/// Result of enumerating the cosets of a generated subgroup.
#[derive(Clone, Debug)]
pub struct CosetEnumeration {
    subgroup: Subgroup,
    generator_count: usize,
    tracking: Option<Vec<Word>>,
}

impl CosetEnumeration {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn into_subgroup(self) -> Subgroup {
        self.subgroup
    }

    /// Writes an element of the subgroup over the `Y` symbols (letter `i + 1`
    /// stands for the `i`-th generator passed to [`enumerate_cosets`]).
    pub fn express(&self, w: &Word) -> Option<Word> {
        let words = self.tracking.as_ref()?;
        let k = self.generator_count;
        let cols = 2 * k;
        let mut c = 0u32;
        let mut out = Word::empty();
        for &x in w.letters() {
            let col = column(x);
            out.mul_assign(&words[c as usize * cols + col]);
            c = self.subgroup.act(c, x);
        }
        (c == 0).then_some(out)
    }
}

/// Enumerates the cosets of the subgroup generated by `generators`.
///
/// Terminates when the subgroup has finite index and the coset limit is large
/// enough; otherwise fails with `BudgetExceeded`.
pub fn enumerate_cosets(
    pres: &Arc<Presentation>,
    generators: &[Word],
    track: bool,
    max_cosets: usize,
) -> Result<CosetEnumeration> {
    let k = pres.generator_count();
    let cols = 2 * k;
    let mut hlt = Hlt {
        cols,
        track,
        table: Vec::new(),
        words: Vec::new(),
        parent: Vec::new(),
        rel: Vec::new(),
        queue: VecDeque::new(),
        limit: max_cosets.max(1),
    };
    hlt.new_coset()?;
    let relators: Vec<Vec<usize>> =
        pres.relators().iter().map(|r| r.letters().iter().map(|&x| column(x)).collect()).collect();
    let subgens: Vec<Vec<usize>> = generators.iter().map(|w| w.letters().iter().map(|&x| column(x)).collect()).collect();

    loop {
        let snapshot = |h: &Hlt| {
            let live = (0..h.rows() as u32).filter(|&c| h.alive(c)).count();
            let defined = h.table.iter().filter(|&&d| d != UNDEF).count();
            (h.rows(), live, defined)
        };
        let before = snapshot(&hlt);
        for (j, y) in subgens.iter().enumerate() {
            let value = if track { Word::generator(j) } else { Word::empty() };
            hlt.scan_and_fill(0, y, &value)?;
        }
        let mut c = 0u32;
        while (c as usize) < hlt.rows() {
            if hlt.alive(c) {
                for r in &relators {
                    hlt.scan_and_fill(c, r, &Word::empty())?;
                    if !hlt.alive(c) {
                        break;
                    }
                }
                for col in 0..cols {
                    if hlt.alive(c) && hlt.get(c, col) == UNDEF {
                        let d = hlt.new_coset()?;
                        hlt.set_entry(c, col, d, Word::empty());
                    }
                }
            }
            c += 1;
        }
        let complete = (0..hlt.rows() as u32)
            .filter(|&c| hlt.alive(c))
            .all(|c| (0..cols).all(|col| hlt.get(c, col) != UNDEF));
        if complete && snapshot(&hlt) == before {
            break;
        }
    }

    // relabel live cosets in canonical BFS order
    let mut label = vec![UNDEF; hlt.rows()];
    let mut order = vec![0u32];
    label[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for g in 0..k {
            let d = hlt.get(c, 2 * g);
            if label[d as usize] == UNDEF {
                label[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
        i += 1;
    }
    let n = order.len();
    let mut fwd = Vec::with_capacity(n * k);
    let mut words = if track { Vec::with_capacity(n * cols) } else { Vec::new() };
    for &c in &order {
        for g in 0..k {
            fwd.push(label[hlt.get(c, 2 * g) as usize]);
        }
        if track {
            for col in 0..cols {
                words.push(hlt.word(c, col).clone());
            }
        }
    }
    let subgroup = Subgroup::from_canonical(pres.clone(), fwd);
    check_relators(pres, &subgroup.to_action())?;
    if !generators.iter().all(|w| subgroup.contains(w)) {
        return Err(Error::InconsistentInput("coset enumeration lost a subgroup generator".into()));
    }
    Ok(CosetEnumeration { subgroup, generator_count: k, tracking: track.then_some(words) })
}

/// Coset table of the subgroup generated by `generators`.
pub fn generated_subgroup(pres: &Arc<Presentation>, generators: &[Word], max_cosets: usize) -> Result<Subgroup> {
    Ok(enumerate_cosets(pres, generators, false, max_cosets)?.into_subgroup())
}
