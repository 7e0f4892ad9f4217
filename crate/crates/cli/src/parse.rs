//! Argument syntax: rationals, complex numbers, matrices, ranges, words.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use surface_tower::Word;

use crate::failure::{Failure, Outcome};

fn bad(what: &str, s: &str) -> Failure {
    Failure::Argument(format!("cannot parse {what} from {s:?}"))
}

/// `3`, `-2/5` or a decimal like `0.125`, read exactly.
pub fn rational(s: &str) -> Outcome<BigRational> {
    let s = s.trim();
    if let Ok(q) = BigRational::from_str(s) {
        return Ok(q);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(|| bad("a rational", s))?;
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad("a rational", s));
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad("a rational", s))?;
    let q = BigRational::new(num, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

/// `x+yi`, `x-yi`, `yi` or `i`, with exact components.
pub fn complex(s: &str) -> Outcome<(BigRational, BigRational)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t.strip_suffix('i').ok_or_else(|| bad("a complex number", s))?;
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok((rational(re)?, rational(im)?))
}

/// `a,b;c,d` (rows separated by `;`).
pub fn int_matrix(s: &str) -> Outcome<[[i64; 2]; 2]> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad("a 2x2 integer matrix", s))).collect())
        .collect::<Outcome<_>>()?;
    match rows.as_slice() {
        [r0, r1] if r0.len() == 2 && r1.len() == 2 => Ok([[r0[0], r0[1]], [r1[0], r1[1]]]),
        _ => Err(bad("a 2x2 integer matrix", s)),
    }
}

pub fn rational_matrix(s: &str) -> Outcome<[[BigRational; 2]; 2]> {
    let cells: Vec<Vec<BigRational>> =
        s.split(';').map(|r| r.split(',').map(rational).collect()).collect::<Outcome<_>>()?;
    match <[Vec<BigRational>; 2]>::try_from(cells) {
        Ok([r0, r1]) if r0.len() == 2 && r1.len() == 2 => {
            let [a, b] = <[BigRational; 2]>::try_from(r0).expect("length checked");
            let [c, d] = <[BigRational; 2]>::try_from(r1).expect("length checked");
            Ok([[a, b], [c, d]])
        }
        _ => Err(bad("a 2x2 rational matrix", s)),
    }
}

/// `a..b`, inclusive at both ends.
pub fn m_range(s: &str) -> Outcome<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| bad("a range a..b", s))?;
    let a = a.trim().parse().map_err(|_| bad("a range a..b", s))?;
    let b = b.trim().parse().map_err(|_| bad("a range a..b", s))?;
    if a > b {
        return Err(Failure::Argument(format!("empty range {s}")));
    }
    Ok((a, b))
}

/// Comma-separated signed generator numbers, `1,2,-1`; empty for the identity.
pub fn word(s: &str) -> Outcome<Word> {
    if s.trim().is_empty() {
        return Ok(Word::empty());
    }
    let letters = s
        .split(',')
        .map(|x| x.trim().parse::<i32>().ok().filter(|&l| l != 0).ok_or_else(|| bad("a word", s)))
        .collect::<Outcome<Vec<_>>>()?;
    Ok(Word::new(letters))
}
