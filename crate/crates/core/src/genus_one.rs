//! The genus-one model: sublattices of `Z^2`, their modulus maps, and the
//! action of `GL(2, Q)^+` on the upper half-plane.
//!
//! Conventions: a lattice basis is a pair of rows `(a, b), (c, d)` standing
//! for the periods `a τ + b` and `c τ + d`; the modulus of the sublattice is
//! `τ' = (a τ + b) / (c τ + d)`. Only orientation-preserving matrices
//! (positive determinant) are accepted as Möbius maps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A sublattice of `Z^2` in Hermite normal form `[[a, b], [0, d]]` with
/// `a, d > 0` and `0 <= b < d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SublatticeMatrix {
    rows: [[i64; 2]; 2],
}

/// Hermite normal form of the row lattice of a nonsingular integer matrix.
pub fn hnf(m: [[i64; 2]; 2]) -> Result<SublatticeMatrix> {
    let [[p, q], [r, s]] = m.map(|row| row.map(i128::from));
    let det = p * s - q * r;
    if det == 0 {
        return Err(Error::SingularMatrix);
    }
    // combine the rows so the first column becomes (gcd, 0)
    let ext = p.extended_gcd(&r);
    let (g, x, y) = (ext.gcd, ext.x, ext.y);
    let mut a = g;
    let mut b = x * q + y * s;
    let mut d = (p / g) * s - (r / g) * q;
    if a < 0 {
        a = -a;
        b = -b;
    }
    if d < 0 {
        d = -d;
    }
    debug_assert_eq!(a * d, det.abs());
    b = b.rem_euclid(d);
    let fit = |v: i128| i64::try_from(v).map_err(|_| Error::ArithmeticOverflow("Hermite normal form"));
    Ok(SublatticeMatrix { rows: [[fit(a)?, fit(b)?], [0, fit(d)?]] })
}

impl SublatticeMatrix {
    pub fn identity() -> Self {
        SublatticeMatrix { rows: [[1, 0], [0, 1]] }
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        self.rows
    }

    /// Index of the sublattice.
    pub fn determinant(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1]
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        let [[a, b], [_, d]] = self.rows;
        if v[0] % a != 0 {
            return false;
        }
        let k = v[0] / a;
        (v[1] - k * b) % d == 0
    }

    /// Every sublattice of the given index, in HNF order.
    pub fn all_of_index(n: i64) -> Vec<SublatticeMatrix> {
        let mut out = Vec::new();
        for a in 1..=n {
            if n % a == 0 {
                let d = n / a;
                for b in 0..d {
                    out.push(SublatticeMatrix { rows: [[a, b], [0, d]] });
                }
            }
        }
        out
    }

    /// Matrix product (sublattice of a sublattice), renormalized.
    pub fn compose(&self, inner: &SublatticeMatrix) -> Result<SublatticeMatrix> {
        let m = mul_int(self.rows, inner.rows).ok_or(Error::ArithmeticOverflow("sublattice product"))?;
        hnf(m)
    }
}

fn mul_int(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> Option<[[i64; 2]; 2]> {
    let e = |i: usize, j: usize| x[i][0].checked_mul(y[0][j])?.checked_add(x[i][1].checked_mul(y[1][j])?);
    Some([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]])
}

/// An element of `PGL(2, Q)^+`, stored as a primitive integer matrix whose
/// first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMobius {
    m: [[BigInt; 2]; 2],
}

impl RationalMobius {
    pub fn identity() -> Self {
        RationalMobius::from_integers([[1, 0], [0, 1]]).expect("identity")
    }

    pub fn from_integers(m: [[i64; 2]; 2]) -> Result<Self> {
        RationalMobius::normalize(m.map(|r| r.map(BigInt::from)))
    }

    pub fn from_rationals(m: [[BigRational; 2]; 2]) -> Result<Self> {
        let lcm = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = m.map(|row| row.map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()));
        RationalMobius::normalize(ints)
    }

    fn normalize(mut m: [[BigInt; 2]; 2]) -> Result<Self> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if det.is_negative() {
            return Err(Error::OrientationReversing);
        }
        let g = m.iter().flatten().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let lead_negative = m.iter().flatten().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in m.iter_mut().flatten() {
            *x = &*x / &g;
            if lead_negative {
                *x = -&*x;
            }
        }
        Ok(RationalMobius { m })
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    pub fn determinant(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// `self o other` (apply `other` first).
    pub fn compose(&self, other: &RationalMobius) -> RationalMobius {
        let (x, y) = (&self.m, &other.m);
        let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        RationalMobius::normalize([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]).expect("product of positive determinants")
    }

    pub fn inverse(&self) -> RationalMobius {
        let [[a, b], [c, d]] = &self.m;
        RationalMobius::normalize([[d.clone(), -b], [-c, a.clone()]]).expect("positive determinant")
    }

    /// Equal up to left multiplication by an integer translation `τ -> τ + k`.
    pub fn equal_up_to_translation(&self, other: &RationalMobius) -> bool {
        let q = self.compose(&other.inverse());
        let [[a, b], [c, d]] = &q.m;
        c.is_zero() && a == d && (b % a).is_zero()
    }

    fn to_f64(&self) -> [[f64; 2]; 2] {
        self.m.clone().map(|r| r.map(|x| x.to_f64().unwrap_or(f64::NAN)))
    }

    /// Floating-point action on the upper half-plane.
    pub fn act(&self, tau: UpperHalfPoint) -> UpperHalfPoint {
        let [[a, b], [c, d]] = self.to_f64();
        let (x, y) = (tau.re, tau.im);
        // (a τ + b)(c τ̄ + d) / |c τ + d|^2
        let nr = a * x + b;
        let ni = a * y;
        let dr = c * x + d;
        let di = c * y;
        let den = dr * dr + di * di;
        UpperHalfPoint { re: (nr * dr + ni * di) / den, im: (ni * dr - nr * di) / den }
    }

    /// Exact action on points with rational coordinates.
    pub fn act_exact(&self, tau: &ExactPoint) -> ExactPoint {
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let [[a, b], [c, d]] = &self.m;
        let (a, b, c, d) = (q(a), q(b), q(c), q(d));
        let nr = &a * &tau.re + &b;
        let ni = &a * &tau.im;
        let dr = &c * &tau.re + &d;
        let di = &c * &tau.im;
        let den = &dr * &dr + &di * &di;
        ExactPoint { re: (&nr * &dr + &ni * &di) / &den, im: (&ni * &dr - &nr * &di) / &den }
    }
}

impl fmt::Display for RationalMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpperHalfPoint {
    pub re: f64,
    pub im: f64,
}

impl UpperHalfPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if im > 0.0 && im.is_finite() && re.is_finite() {
            Ok(UpperHalfPoint { re, im })
        } else {
            Err(Error::NotInUpperHalfPlane)
        }
    }

    pub fn i() -> Self {
        UpperHalfPoint { re: 0.0, im: 1.0 }
    }

    pub fn distance(&self, other: &UpperHalfPoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// A point of the upper half-plane with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactPoint {
    pub fn new(re: BigRational, im: BigRational) -> Result<Self> {
        if im.is_positive() {
            Ok(ExactPoint { re, im })
        } else {
            Err(Error::NotInUpperHalfPlane)
        }
    }

    pub fn from_integers(re: i64, im: i64) -> Result<Self> {
        ExactPoint::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }
}

/// `τ -> (a τ + b) / (c τ + d)` for the HNF rows of `l`.
pub fn covering_modulus_map(l: &SublatticeMatrix) -> RationalMobius {
    RationalMobius::from_integers(l.rows).expect("HNF has positive determinant")
}

/// The element of `GL(2, Q)` induced by identifying `src` with `dst` through
/// the unimodular basis change `iso`: `T = src^-1 · iso · dst`.
pub fn vaut_as_matrix(src: &SublatticeMatrix, dst: &SublatticeMatrix, iso: [[i64; 2]; 2]) -> Result<RationalMobius> {
    let det = i128::from(iso[0][0]) * i128::from(iso[1][1]) - i128::from(iso[0][1]) * i128::from(iso[1][0]);
    match det {
        1 => {}
        -1 => return Err(Error::OrientationReversing),
        _ => return Err(Error::NotAnIsomorphism(format!("basis change has determinant {det}"))),
    }
    let q = |x: i64| BigRational::from_integer(x.into());
    let [[a, b], [_, d]] = src.rows;
    // upper-triangular inverse of src
    let inv = [[q(1) / q(a), -q(b) / (q(a) * q(d))], [q(0), q(1) / q(d)]];
    let ud = mul_int(iso, dst.rows).ok_or(Error::ArithmeticOverflow("lattice identification"))?;
    let ud = ud.map(|r| r.map(q));
    let e = |i: usize, j: usize| &inv[i][0] * &ud[0][j] + &inv[i][1] * &ud[1][j];
    RationalMobius::from_rationals([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

/// Best rational approximation `p / q` of `x` with `|x - p/q| <= tol`, from
/// the continued-fraction convergents of `x`.
pub fn continued_fraction_approx(x: f64, tol: f64) -> (BigInt, BigInt) {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let approx = p1.to_f64().unwrap_or(f64::NAN) / q1.to_f64().unwrap_or(f64::NAN);
        let frac = r - a;
        if (x - approx).abs() <= tol || frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
        if !r.is_finite() {
            break;
        }
    }
    (p1, q1)
}

/// An orientation-preserving rational affine map sending `source` within
/// `eps` of `target`, built from continued-fraction approximants of the
/// ratio of imaginary parts and the real offset.
pub fn dense_orbit_approx(source: UpperHalfPoint, target: UpperHalfPoint, eps: f64) -> Result<RationalMobius> {
    UpperHalfPoint::new(source.re, source.im)?;
    UpperHalfPoint::new(target.re, target.im)?;
    if !(eps > 0.0) {
        return Err(Error::InconsistentInput("eps must be positive".into()));
    }
    if source == target {
        return Ok(RationalMobius::identity());
    }
    let scale = target.im / source.im;
    let shift = target.re - scale * source.re;
    let mut tol = eps / (4.0 * (source.norm() + 1.0));
    for _ in 0..40 {
        let (p, q) = continued_fraction_approx(scale, tol);
        let (r, s) = continued_fraction_approx(shift, tol);
        if p.is_positive() && q.is_positive() {
            // τ -> (p/q) τ + r/s
            let m = RationalMobius::normalize([[&p * &s, &r * &q], [BigInt::zero(), &q * &s]])?;
            if m.act(source).distance(&target) < eps {
                return Ok(m);
            }
        }
        tol /= 16.0;
    }
    Err(Error::ArithmeticOverflow("dense orbit approximation"))
}
