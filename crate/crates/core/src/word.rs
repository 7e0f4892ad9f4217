//! Freely reduced words over a finite generating set.
//!
//! A letter is a nonzero `i32`: `k > 0` is the `k`-th generator (1-based),
//! `-k` its inverse.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type Letter = i32;

/// A freely reduced word. Construction always reduces, so no value of this
/// type contains a letter next to its own inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Reduces an arbitrary letter sequence. Zero letters are dropped.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in letters {
            push_reduced(&mut out, x);
        }
        Word(out)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as Letter + 1])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &x in &other.0 {
            push_reduced(&mut out, x);
        }
        Word(out)
    }

    pub fn mul_assign(&mut self, other: &Word) {
        for &x in &other.0 {
            push_reduced(&mut self.0, x);
        }
    }

    pub fn push(&mut self, letter: Letter) {
        push_reduced(&mut self.0, letter);
    }

    /// `self * other * self^-1`
    pub fn conjugate_by(&self, other: &Word) -> Word {
        self.mul(other).mul(&self.inverse())
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// Largest generator index (1-based) used, or 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Replaces every generator by a word. `images[i]` is the image of
    /// generator `i + 1`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for &x in &self.0 {
            let image = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.mul_assign(image);
            } else {
                out.mul_assign(&image.inverse());
            }
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for &x in &self.0 {
            sums[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        sums
    }
}

fn push_reduced(out: &mut Vec<Letter>, x: Letter) {
    if x == 0 {
        return;
    }
    if out.last() == Some(&-x) {
        out.pop();
    } else {
        out.push(x);
    }
}

/// Free reduction of a raw letter sequence.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::new(letters.iter().copied())
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word::new(v)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Name of a letter in the surface alphabet a1, b1, a2, b2, ...
pub fn surface_letter_name(x: Letter) -> String {
    let idx = x.unsigned_abs() as usize - 1;
    let base = if idx % 2 == 0 { 'a' } else { 'b' };
    let inv = if x < 0 { "^-1" } else { "" };
    format!("{}{}{}", base, idx / 2 + 1, inv)
}
