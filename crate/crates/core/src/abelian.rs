//! Abelianization of finitely presented groups via Smith normal form, and the
//! homology covers it defines.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::subgroup::{orbit_table, Subgroup};

type Int = i128;

fn overflow() -> Error {
    Error::ArithmeticOverflow("Smith normal form")
}

fn mul_add(a: Int, x: Int, b: Int, y: Int) -> Result<Int> {
    let p = a.checked_mul(x).ok_or_else(overflow)?;
    let q = b.checked_mul(y).ok_or_else(overflow)?;
    p.checked_add(q).ok_or_else(overflow)
}

/// Smith normal form `U A V = D` of an integer matrix, keeping only `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...`, padded with zeros to the column count.
    pub diagonal: Vec<Int>,
    /// Column transform: generator `j` of the abelianization maps to row `j`
    /// of `v` in the coordinates of `Z/d_0 + Z/d_1 + ...`.
    pub v: Vec<Vec<Int>>,
}

/// Computes the Smith normal form of the `rows x cols` matrix `a`.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Result<SmithForm> {
    let mut m: Vec<Vec<Int>> = a.iter().map(|r| r.iter().map(|&x| x as Int).collect()).collect();
    let rows = m.len();
    let mut v: Vec<Vec<Int>> = (0..cols).map(|i| (0..cols).map(|j| Int::from(i == j)).collect()).collect();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] = mul_add(1, m[i][j], -q, m[t][j])?;
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for i in t..rows {
                        m[i][j] = mul_add(1, m[i][j], -q, m[i][t])?;
                    }
                    for row in v.iter_mut() {
                        row[j] = mul_add(1, row[j], -q, row[t])?;
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] = mul_add(1, m[t][j], 1, m[i][j])?;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remainder into the pivot position
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            } else if best.1 != t {
                swap_cols(&mut m, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if m[t][t] < 0 {
            for j in t..cols {
                m[t][j] = -m[t][j];
            }
        }
        t += 1;
    }
    let diagonal = (0..cols).map(|i| if i < rows { m[i][i] } else { 0 }).collect();
    Ok(SmithForm { diagonal, v })
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// `Z^rank + Z/t_1 + ... + Z/t_s` with every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<u128>,
}

fn relation_matrix(pres: &Presentation) -> Vec<Vec<i64>> {
    let k = pres.generator_count();
    pres.relators().iter().map(|r| r.exponent_sums(k)).collect()
}

pub fn abelianization(pres: &Presentation) -> Result<AbelianInvariants> {
    let snf = smith_normal_form(&relation_matrix(pres), pres.generator_count())?;
    let rank = snf.diagonal.iter().filter(|&&d| d == 0).count();
    let torsion = snf.diagonal.iter().filter(|&&d| d > 1).map(|&d| d as u128).collect();
    Ok(AbelianInvariants { rank, torsion })
}

/// Kernel of `G -> H_1(G; Z/n)` for a finitely presented `G`, as the
/// translation action on the mod-`n` homology. Fails with `IndexOverflow`
/// when the index would exceed `cap`.
pub fn homology_kernel(pres: &Arc<Presentation>, n: u64, cap: u64) -> Result<Subgroup> {
    if n == 0 {
        return Err(Error::InconsistentInput("homology level must be at least 1".into()));
    }
    let k = pres.generator_count();
    let snf = smith_normal_form(&relation_matrix(pres), k)?;
    let nn = n as Int;
    let moduli: Vec<(usize, Int)> = snf
        .diagonal
        .iter()
        .enumerate()
        .map(|(i, &d)| (i, if d == 0 { nn } else { num_integer::gcd(d, nn) }))
        .filter(|&(_, m)| m > 1)
        .collect();
    let mut index: u64 = 1;
    for &(_, m) in &moduli {
        index = index
            .checked_mul(m as u64)
            .filter(|&x| x <= cap)
            .ok_or(Error::IndexOverflow { index: index.saturating_mul(m as u64), cap })?;
    }
    let steps: Vec<Vec<u32>> = (0..k)
        .map(|g| moduli.iter().map(|&(i, m)| snf.v[g][i].rem_euclid(m) as u32).collect())
        .collect();
    let mods: Vec<u32> = moduli.iter().map(|&(_, m)| m as u32).collect();
    let start = vec![0u32; mods.len()];
    let fwd = orbit_table(k, start, None, |x: &Vec<u32>, g| {
        x.iter().zip(&steps[g]).zip(&mods).map(|((&a, &b), &m)| (a + b) % m).collect()
    })?;
    debug_assert_eq!(fwd.len() as u64, index * k as u64);
    Ok(Subgroup::from_canonical(pres.clone(), fwd))
}
