//! Exact bookkeeping of rational Picard classes along a tower of
//! characteristic covers.
//!
//! On each stratum the rational Picard group of the moduli functor is `Q`,
//! with the Hodge class as `1`. A bundle is its exponent, tensor product is
//! addition, and pulling a class on a degree-`N` cover back to the base
//! multiplies the exponent by `N`. Curvature is recorded in units of
//! `(12 π^2)^-1 ω_WP`, so every coefficient is an exact rational. Metrics,
//! determinants of Laplacians and the Riemann-Roch integrand carry no data
//! here; only their curvature consequence does. The nonzero scalars fixing
//! the isomorphisms between strata are recorded as a unit token per tower.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characteristic::TowerGraph;
use crate::error::{Error, Result};

/// `6 m^2 - 6 m + 1`: the Hodge power isomorphic to the `m`-th determinant
/// bundle.
pub fn mumford_exponent(m: i64) -> i128 {
    let m = i128::from(m);
    6 * m * m - 6 * m + 1
}

pub fn serre_dual(m: i64) -> i64 {
    1 - m
}

/// Exponent on the base of the pullback of `q` times the cover's Hodge class.
pub fn pullback_exponent(q: &BigRational, n: u64) -> BigRational {
    q * BigRational::from_integer(n.into())
}

/// Factor by which the cover's Weil-Petersson form pulls back.
pub fn wp_pullback_coefficient(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(h - 1)^-1`, the scaling of the Weil-Petersson form on genus `h`.
pub fn wp_limit_scale(h: u64) -> Result<BigRational> {
    if h < 2 {
        return Err(Error::InvalidGenus(h as usize));
    }
    Ok(BigRational::new(1.into(), (h - 1).into()))
}

/// Pulling back in two steps agrees with pulling back along the composite.
pub fn check_composition_diagram(n1: u64, n2: u64, q: &BigRational) -> bool {
    pullback_exponent(&pullback_exponent(q, n1), n2) == pullback_exponent(q, n1 * n2)
}

pub fn hurwitz_bound(g: u64) -> Result<u64> {
    if g < 2 {
        return Err(Error::InvalidGenus(g as usize));
    }
    Ok(84 * (g - 1))
}

/// `(84 (g - 1))!`, a power killing every isotropy action on the Hodge line.
pub fn descent_factor(g: u64) -> Result<BigUint> {
    let n = hurwitz_bound(g)?;
    Ok((1..=n).fold(BigUint::one(), |acc, k| acc * k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PicStructure {
    InfiniteCyclic,
    CyclicOfOrder(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicTorsionInfo {
    pub genus: u64,
    pub structure: PicStructure,
}

pub fn pic_structure(g: u64) -> Result<PicTorsionInfo> {
    let structure = match g {
        0 | 1 => return Err(Error::InvalidGenus(g as usize)),
        2 => PicStructure::CyclicOfOrder(10),
        _ => PicStructure::InfiniteCyclic,
    };
    Ok(PicTorsionInfo { genus: g, structure })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StratumLabel {
    pub genus: u64,
    pub degree: u64,
    pub node: usize,
}

impl StratumLabel {
    pub fn new(base_genus: u64, degree: u64, node: usize) -> Result<Self> {
        if base_genus < 2 || degree == 0 {
            return Err(Error::IncompatibleTower("strata need base genus >= 2 and positive degree".into()));
        }
        Ok(StratumLabel { genus: degree * (base_genus - 1) + 1, degree, node })
    }

    /// Classes on genus-two strata live in a group with 10-torsion.
    pub fn torsion_flag(&self) -> bool {
        self.genus == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    pub stratum: StratumLabel,
    pub exponent: BigRational,
}

impl BundleClass {
    pub fn is_integral(&self) -> bool {
        self.exponent.is_integer()
    }

    pub fn tensor(&self, other: &BundleClass) -> Result<BundleClass> {
        if self.stratum != other.stratum {
            return Err(Error::InconsistentInput("tensor of classes on different strata".into()));
        }
        Ok(BundleClass { stratum: self.stratum, exponent: &self.exponent + &other.exponent })
    }

    /// Residue mod 10 of an integral class on a genus-two stratum.
    pub fn torsion_residue(&self) -> Option<u8> {
        if !self.stratum.torsion_flag() || !self.is_integral() {
            return None;
        }
        let r: num_bigint::BigInt = self.exponent.to_integer() % 10;
        let r = if r.is_negative() { r + 10 } else { r };
        r.to_u8()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureClass {
    pub stratum: StratumLabel,
    pub wp_coefficient: BigRational,
}

pub fn curvature_of(b: &BundleClass) -> CurvatureClass {
    CurvatureClass { stratum: b.stratum, wp_coefficient: b.exponent.clone() }
}

/// The degrees and arrows of a tower, which is all the ledger looks at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerShape {
    pub base_genus: u64,
    pub degrees: Vec<u64>,
    /// `(cover, base, relative degree)`.
    pub arrows: Vec<(usize, usize, u64)>,
}

impl From<&TowerGraph> for TowerShape {
    fn from(t: &TowerGraph) -> Self {
        TowerShape {
            base_genus: t.base_genus as u64,
            degrees: t.nodes.iter().map(|n| n.subgroup.index() as u64).collect(),
            arrows: t.edges.iter().map(|e| (e.from, e.to, e.relative_degree as u64)).collect(),
        }
    }
}

impl TowerShape {
    pub fn strata(&self) -> Result<Vec<StratumLabel>> {
        self.degrees.iter().enumerate().map(|(i, &d)| StratumLabel::new(self.base_genus, d, i)).collect()
    }

    fn check_arrows(&self) -> Result<()> {
        for &(from, to, n) in &self.arrows {
            let (Some(&df), Some(&dt)) = (self.degrees.get(from), self.degrees.get(to)) else {
                return Err(Error::IncompatibleTower(format!("arrow {from} -> {to} names a missing node")));
            };
            if dt == 0 || df % dt != 0 || df / dt != n {
                return Err(Error::IncompatibleTower(format!(
                    "arrow {from} -> {to} has degree {n} but strata degrees are {df} and {dt}"
                )));
            }
        }
        Ok(())
    }
}

/// The inverse-limit class restricting to `(n_i)^-1 DET_m` on stratum `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalBundle {
    pub m: i64,
    pub assignment: Vec<BundleClass>,
    /// Normalization of the scalars in the isomorphisms between strata.
    pub unit_token: &'static str,
}

pub fn universal_bundle(m: i64, tower: &TowerShape) -> Result<UniversalBundle> {
    tower.check_arrows()?;
    let e = BigRational::from_integer(mumford_exponent(m).into());
    let assignment: Vec<BundleClass> = tower
        .strata()?
        .into_iter()
        .map(|s| BundleClass { stratum: s, exponent: &e / BigRational::from_integer(s.degree.into()) })
        .collect();
    for &(from, to, n) in &tower.arrows {
        if pullback_exponent(&assignment[from].exponent, n) != assignment[to].exponent {
            return Err(Error::IncompatibleTower(format!("pullback mismatch on {from} -> {to}")));
        }
    }
    Ok(UniversalBundle { m, assignment, unit_token: "basepoint-unit" })
}

/// `Λ_m = Λ_0^(6m^2 - 6m + 1)` on every stratum.
pub fn universal_mumford_check(m: i64, tower: &TowerShape) -> Result<bool> {
    let lm = universal_bundle(m, tower)?;
    let l0 = universal_bundle(0, tower)?;
    let e = BigRational::from_integer(mumford_exponent(m).into());
    Ok(lm.assignment.iter().zip(&l0.assignment).all(|(a, b)| a.exponent == &e * &b.exponent))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub m: i64,
    /// Exact rational, written `p` or `p/q`.
    pub exponent: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StratumReport {
    pub node: usize,
    pub n_i: u64,
    pub genus: u64,
    pub torsion_flag: bool,
    pub exponents: Vec<ExponentEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LedgerReport {
    pub schema: String,
    pub tower: String,
    pub unit_token: String,
    pub per_stratum: Vec<StratumReport>,
    pub checks: Vec<CheckResult>,
}

impl LedgerReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs every ledger check on a tower for `m` in `m_range` (inclusive).
pub fn ledger_report(tower_ref: &str, tower: &TowerShape, m_range: (i64, i64)) -> Result<LedgerReport> {
    let (lo, hi) = m_range;
    if lo > hi {
        return Err(Error::InconsistentInput("empty m range".into()));
    }
    let strata = tower.strata()?;
    let bundles: Vec<UniversalBundle> = (lo..=hi).map(|m| universal_bundle(m, tower)).collect::<Result<_>>()?;
    let per_stratum = strata
        .iter()
        .enumerate()
        .map(|(i, s)| StratumReport {
            node: s.node,
            n_i: s.degree,
            genus: s.genus,
            torsion_flag: s.torsion_flag(),
            exponents: bundles
                .iter()
                .map(|b| ExponentEntry { m: b.m, exponent: b.assignment[i].exponent.to_string() })
                .collect(),
        })
        .collect();
    let mut checks = Vec::new();
    let mut push = |name: String, pass: bool| checks.push(CheckResult { name, pass });
    push("mumford-exponent-formula".into(), (lo..=hi).all(|m| mumford_exponent(m) == 6 * i128::from(m).pow(2) - 6 * i128::from(m) + 1));
    push("serre-duality".into(), (lo..=hi).all(|m| mumford_exponent(m) == mumford_exponent(serre_dual(m))));
    for b in &bundles {
        let compatible = tower
            .arrows
            .iter()
            .all(|&(from, to, n)| pullback_exponent(&b.assignment[from].exponent, n) == b.assignment[to].exponent);
        push(format!("pullback-compatibility m={}", b.m), compatible);
        push(format!("universal-mumford m={}", b.m), universal_mumford_check(b.m, tower)?);
    }
    let coherent = tower.arrows.iter().all(|&(from, to, n)| {
        let (gf, gt) = (strata[from].genus, strata[to].genus);
        match (wp_limit_scale(gf), wp_limit_scale(gt)) {
            (Ok(a), Ok(b)) => a * wp_pullback_coefficient(n) == b,
            _ => false,
        }
    });
    push("scaled-wp-coherence".into(), coherent);
    let mut diagrams = true;
    for &(a, b, n1) in &tower.arrows {
        for &(b2, c, n2) in &tower.arrows {
            if b2 == b {
                let direct = tower.arrows.iter().find(|&&(x, y, _)| x == a && y == c);
                diagrams &= direct.is_some_and(|&(_, _, n)| n == n1 * n2);
                for bndl in &bundles {
                    diagrams &= check_composition_diagram(n1, n2, &bndl.assignment[a].exponent);
                }
            }
        }
    }
    push("composition-diagram".into(), diagrams);
    let torsion_ok = bundles.iter().all(|x| {
        x.assignment.iter().filter(|c| c.stratum.torsion_flag()).all(|c| {
            let doubled = c.tensor(c).expect("same stratum");
            match (c.torsion_residue(), doubled.torsion_residue()) {
                (Some(r), Some(d)) => (2 * r) % 10 == d,
                (None, None) => true,
                _ => false,
            }
        })
    });
    push("genus-two-torsion-consistency".into(), torsion_ok);
    Ok(LedgerReport {
        schema: "ledger/1".into(),
        tower: tower_ref.to_string(),
        unit_token: "basepoint-unit".into(),
        per_stratum,
        checks,
    })
}

impl BundleClass {
    pub fn zero(stratum: StratumLabel) -> Self {
        BundleClass { stratum, exponent: BigRational::zero() }
    }
}
