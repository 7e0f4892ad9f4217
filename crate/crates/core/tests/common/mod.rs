//! Independent oracles. Nothing here calls into the library's algorithms;
//! only the final comparison does.
#![allow(dead_code)]

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surface_tower::Word;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random freely reduced word of length at most `max_len` over `gens` generators.
pub fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=gens as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::new(letters)
}

/// `[a1,b1]...[ag,bg]` written out letter by letter.
pub fn surface_relator(genus: usize) -> Vec<i32> {
    (0..genus as i32).flat_map(|i| [2 * i + 1, 2 * i + 2, -(2 * i + 1), -(2 * i + 2)]).collect()
}

pub fn all_perms(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q: Vec<u32> = p.clone();
            q.insert(pos, (n - 1) as u32);
            out.push(q);
        }
    }
    out
}

fn inverse_perm(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Image of a point under a word, generators acting on the right.
pub fn act(perms: &[Vec<u32>], point: u32, word: &[i32]) -> u32 {
    word.iter().fold(point, |x, &l| {
        let p = &perms[l.unsigned_abs() as usize - 1];
        if l > 0 {
            p[x as usize]
        } else {
            inverse_perm(p)[x as usize]
        }
    })
}

/// Every tuple of permutations of `0..n` satisfying the surface relator.
pub fn brute_force_homs(genus: usize, n: usize) -> Vec<Vec<Vec<u32>>> {
    let perms = all_perms(n);
    let rel = surface_relator(genus);
    let k = 2 * genus;
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<Vec<u32>> = idx.iter().map(|&i| perms[i].clone()).collect();
        if (0..n as u32).all(|x| act(&tuple, x, &rel) == x) {
            out.push(tuple);
        }
        let mut j = 0;
        while j < k {
            idx[j] += 1;
            if idx[j] < perms.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == k {
            return out;
        }
    }
}

pub fn is_transitive(tuple: &[Vec<u32>], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0u32];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for p in tuple {
            let y = p[x as usize];
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Subgroups of index exactly `n`: transitive homomorphisms to `Sym(n)`
/// divided by the `(n-1)!` relabelings fixing the basepoint.
pub fn index_n_subgroup_count(genus: usize, n: usize) -> usize {
    let transitive = brute_force_homs(genus, n).iter().filter(|t| is_transitive(t, n)).count();
    let fact: usize = (1..n).product();
    assert_eq!(transitive % fact, 0);
    transitive / fact
}

/// Whether `w` acts trivially in every given permutation representation.
pub fn in_all_kernels(homs: &[Vec<Vec<u32>>], w: &Word) -> bool {
    homs.iter().all(|t| {
        let n = t[0].len() as u32;
        (0..n).all(|x| act(t, x, w.letters()) == x)
    })
}

/// Coset table of the intersection of the kernels of `homs`, as rows of
/// images under each generator: the regular action on the image of the
/// product homomorphism, explored breadth first.
pub fn kernel_intersection_rows(homs: &[Vec<Vec<u32>>], gens: usize) -> Vec<Vec<u32>> {
    use std::collections::HashMap;
    // an element of the image is the tuple of its images of every point
    let start: Vec<Vec<u32>> = homs.iter().map(|t| (0..t[0].len() as u32).collect()).collect();
    let mut id: HashMap<Vec<Vec<u32>>, u32> = HashMap::new();
    let mut states = vec![start.clone()];
    id.insert(start, 0);
    let mut rows = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(gens);
        for g in 0..gens {
            let next: Vec<Vec<u32>> = states[i]
                .iter()
                .zip(homs)
                .map(|(img, t)| img.iter().map(|&x| t[g][x as usize]).collect())
                .collect();
            let len = states.len() as u32;
            let j = *id.entry(next.clone()).or_insert_with(|| {
                states.push(next);
                len
            });
            row.push(j);
        }
        rows.push(row);
        i += 1;
    }
    rows
}

/// Rank over the rationals by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for cc in c..cols {
                    let delta = &f * &m[rank][cc];
                    m[r][cc] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `n!` from Legendre's formula for each prime power.
pub fn legendre_factorial(n: u64) -> BigUint {
    let primes: Vec<u64> = (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect();
    let mut out = BigUint::one();
    for p in primes {
        let mut e = 0;
        let mut q = p;
        while q <= n {
            e += n / q;
            q *= p;
        }
        out *= BigUint::from(p).pow(e as u32);
    }
    out
}
