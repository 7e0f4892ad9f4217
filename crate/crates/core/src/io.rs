//! Versioned JSON documents for subgroups, towers, virtual automorphisms,
//! cycle paths, ledger reports and genus-one matrices.
//!
//! Documents embed subgroups by value, so each file is self-contained.
//! Loading re-validates everything: tables against the relator, certificates
//! against their construction, images against the homomorphism conditions.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::characteristic::{Automorphism, CharCertificate, CharSubgroup, CharTag, TowerEdge, TowerGraph};
use crate::cycle::{Arrow, CyclePath, Direction, PathStep};
use crate::error::{Error, Result};
use crate::genus_one::RationalMobius;
use crate::presentation::Presentation;
use crate::subgroup::Subgroup;
use crate::vaut::VirtualAutomorphism;
use crate::word::Word;

pub const SUBGROUP_SCHEMA: &str = "subgroup/1";
pub const TOWER_SCHEMA: &str = "tower/1";
pub const VAUT_SCHEMA: &str = "vaut/1";
pub const CYCLE_SCHEMA: &str = "cycle/1";
pub const MATRIX_SCHEMA: &str = "mobius/1";

fn expect_schema(found: &str, wanted: &str) -> Result<()> {
    if found == wanted {
        Ok(())
    } else {
        Err(Error::Schema(format!("expected schema {wanted}, found {found}")))
    }
}

fn surface_genus(pres: &Presentation) -> Result<usize> {
    pres.genus().ok_or_else(|| Error::Schema("only subgroups of a surface group are serialized".into()))
}

/// Pretty JSON with a trailing newline. Field order is fixed by the types, so
/// equal values give equal bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Schema(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDoc {
    pub schema: String,
    pub genus: usize,
    pub index: usize,
    /// `table[c][g]`: image of coset `c` under generator `g`.
    pub table: Vec<Vec<u32>>,
    pub basepoint: u32,
    /// Present on characteristic subgroups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
}

impl SubgroupDoc {
    pub fn from_subgroup(h: &Subgroup) -> Result<Self> {
        let h = h.canonicalize();
        Ok(SubgroupDoc {
            schema: SUBGROUP_SCHEMA.into(),
            genus: surface_genus(h.presentation())?,
            index: h.index(),
            table: h.rows(),
            basepoint: 0,
            certificate: None,
        })
    }

    pub fn from_char(c: &CharSubgroup) -> Result<Self> {
        Ok(SubgroupDoc {
            certificate: Some(CertificateDoc::from_certificate(&c.certificate)?),
            ..SubgroupDoc::from_subgroup(&c.subgroup)?
        })
    }

    /// Loads a certified subgroup without re-running its construction.
    pub fn to_char_over(&self, pres: &Arc<Presentation>) -> Result<CharSubgroup> {
        let Some(cert) = &self.certificate else {
            return Err(Error::Schema("subgroup file carries no certificate".into()));
        };
        Ok(CharSubgroup { subgroup: self.to_subgroup_over(pres)?, certificate: cert.to_certificate(pres)? })
    }

    /// Loads a certified subgroup and checks the certificate.
    pub fn to_verified_char(&self, pres: &Arc<Presentation>, budget: &Budget) -> Result<CharSubgroup> {
        let c = self.to_char_over(pres)?;
        if !c.verify(budget)? {
            return Err(Error::InconsistentInput(format!("certificate {} does not verify", c.certificate.label())));
        }
        Ok(c)
    }

    pub fn to_subgroup(&self) -> Result<Subgroup> {
        let pres = Presentation::surface(self.genus)?;
        self.to_subgroup_over(&pres)
    }

    /// Loads over an existing presentation so several documents share it.
    pub fn to_subgroup_over(&self, pres: &Arc<Presentation>) -> Result<Subgroup> {
        expect_schema(&self.schema, SUBGROUP_SCHEMA)?;
        if pres.genus() != Some(self.genus) {
            return Err(Error::PresentationMismatch);
        }
        if self.table.len() != self.index {
            return Err(Error::Schema(format!("index {} but {} table rows", self.index, self.table.len())));
        }
        Subgroup::from_rows(pres.clone(), &self.table, self.basepoint)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismDoc {
    pub name: String,
    pub images: Vec<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<Word>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CertificateDoc {
    HomKernelIntersection { degree: usize },
    HomologyLevel { n: u64 },
    SuppliedAutInvariance { automorphisms: Vec<AutomorphismDoc> },
    Intersection { parts: Vec<SubgroupDoc> },
}

impl CertificateDoc {
    pub fn from_certificate(c: &CharCertificate) -> Result<Self> {
        Ok(match c {
            CharCertificate::HomKernelIntersection { degree } => CertificateDoc::HomKernelIntersection { degree: *degree },
            CharCertificate::HomologyLevel { n } => CertificateDoc::HomologyLevel { n: *n },
            CharCertificate::SuppliedAutInvariance { automorphisms } => CertificateDoc::SuppliedAutInvariance {
                automorphisms: automorphisms
                    .iter()
                    .map(|a| AutomorphismDoc {
                        name: a.name().to_string(),
                        images: a.images().to_vec(),
                        inverse: a.inverse_images().map(<[Word]>::to_vec),
                    })
                    .collect(),
            },
            CharCertificate::Intersection { parts } => CertificateDoc::Intersection {
                parts: parts.iter().map(SubgroupDoc::from_char).collect::<Result<_>>()?,
            },
        })
    }

    pub fn to_certificate(&self, pres: &Arc<Presentation>) -> Result<CharCertificate> {
        Ok(match self {
            CertificateDoc::HomKernelIntersection { degree } => CharCertificate::HomKernelIntersection { degree: *degree },
            CertificateDoc::HomologyLevel { n } => CharCertificate::HomologyLevel { n: *n },
            CertificateDoc::SuppliedAutInvariance { automorphisms } => CharCertificate::SuppliedAutInvariance {
                automorphisms: automorphisms
                    .iter()
                    .map(|a| Automorphism::new(pres, a.name.clone(), a.images.clone(), a.inverse.clone()))
                    .collect::<Result<_>>()?,
            },
            CertificateDoc::Intersection { parts } => CharCertificate::Intersection {
                parts: parts.iter().map(|p| p.to_char_over(pres)).collect::<Result<_>>()?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
    pub relative_degree: usize,
    pub char_tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TowerDoc {
    pub schema: String,
    pub base_genus: usize,
    pub nodes: Vec<SubgroupDoc>,
    pub edges: Vec<EdgeDoc>,
}

fn parse_tag(s: &str) -> Result<CharTag> {
    match s {
        "yes" => Ok(CharTag::Yes),
        "no" => Ok(CharTag::No),
        "unknown" => Ok(CharTag::Unknown),
        other => Err(Error::Schema(format!("unknown charTag {other}"))),
    }
}

impl TowerDoc {
    pub fn from_graph(t: &TowerGraph) -> Result<Self> {
        Ok(TowerDoc {
            schema: TOWER_SCHEMA.into(),
            base_genus: t.base_genus,
            nodes: t.nodes.iter().map(SubgroupDoc::from_char).collect::<Result<_>>()?,
            edges: t
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    from: e.from,
                    to: e.to,
                    relative_degree: e.relative_degree,
                    char_tag: e.char_tag.as_str().into(),
                })
                .collect(),
        })
    }

    /// Rebuilds the graph and re-checks its structure. Certificates are
    /// checked as well when `budget` is given.
    pub fn to_graph(&self, budget: Option<&Budget>) -> Result<TowerGraph> {
        expect_schema(&self.schema, TOWER_SCHEMA)?;
        let pres = Presentation::surface(self.base_genus)?;
        let nodes = self
            .nodes
            .iter()
            .map(|n| match budget {
                Some(b) => n.to_verified_char(&pres, b),
                None => n.to_char_over(&pres),
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                if e.from >= nodes.len() || e.to >= nodes.len() {
                    return Err(Error::Schema(format!("edge {} -> {} names a missing node", e.from, e.to)));
                }
                Ok(TowerEdge { from: e.from, to: e.to, relative_degree: e.relative_degree, char_tag: parse_tag(&e.char_tag)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = TowerGraph { base_genus: self.base_genus, nodes, edges };
        graph.check()?;
        Ok(graph)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VautDoc {
    pub schema: String,
    pub domain: SubgroupDoc,
    pub codomain: SubgroupDoc,
    pub images: Vec<Word>,
}

impl VautDoc {
    pub fn from_vaut(v: &VirtualAutomorphism) -> Result<Self> {
        Ok(VautDoc {
            schema: VAUT_SCHEMA.into(),
            domain: SubgroupDoc::from_subgroup(v.domain())?,
            codomain: SubgroupDoc::from_subgroup(v.codomain())?,
            images: v.images().to_vec(),
        })
    }

    pub fn to_vaut(&self, budget: &Budget) -> Result<VirtualAutomorphism> {
        let pres = Presentation::surface(self.domain.genus)?;
        self.to_vaut_over(&pres, budget)
    }

    pub fn to_vaut_over(&self, pres: &Arc<Presentation>, budget: &Budget) -> Result<VirtualAutomorphism> {
        expect_schema(&self.schema, VAUT_SCHEMA)?;
        let domain = self.domain.to_subgroup_over(pres)?;
        let codomain = self.codomain.to_subgroup_over(pres)?;
        VirtualAutomorphism::new(domain, codomain, self.images.clone(), budget)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    /// `forward` (source to target) or `backward`.
    pub direction: String,
    pub source: SubgroupDoc,
    pub target: SubgroupDoc,
    /// Images of the source's Schreier generators.
    pub images: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub schema: String,
    pub genus: usize,
    pub steps: Vec<StepDoc>,
}

impl CycleDoc {
    pub fn from_path(p: &CyclePath) -> Result<Self> {
        let genus = match p.steps().first() {
            Some(s) => surface_genus(s.arrow.source().presentation())?,
            None => return Err(Error::InvalidCycle("empty path".into())),
        };
        let steps = p
            .steps()
            .iter()
            .map(|s| {
                Ok(StepDoc {
                    direction: match s.direction {
                        Direction::Forward => "forward".into(),
                        Direction::Backward => "backward".into(),
                    },
                    source: SubgroupDoc::from_subgroup(s.arrow.source())?,
                    target: SubgroupDoc::from_subgroup(s.arrow.target())?,
                    images: s.arrow.images().to_vec(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(CycleDoc { schema: CYCLE_SCHEMA.into(), genus, steps })
    }

    pub fn to_path(&self, budget: &Budget) -> Result<CyclePath> {
        expect_schema(&self.schema, CYCLE_SCHEMA)?;
        let pres = Presentation::surface(self.genus)?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let source = s.source.to_subgroup_over(&pres)?;
                let target = s.target.to_subgroup_over(&pres)?;
                let arrow = Arrow::new(source, target, s.images.clone(), budget)?;
                match s.direction.as_str() {
                    "forward" => Ok(PathStep::forward(arrow)),
                    "backward" => Ok(PathStep::backward(arrow)),
                    other => Err(Error::Schema(format!("unknown direction {other}"))),
                }
            })
            .collect::<Result<_>>()?;
        CyclePath::new(steps)
    }
}

/// An integer that stays a JSON number while it fits in `i64`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntDoc {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntDoc {
    fn from(x: &BigInt) -> Self {
        i64::try_from(x).map_or_else(|_| IntDoc::Big(x.to_string()), IntDoc::Small)
    }
}

impl IntDoc {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntDoc::Small(v) => Ok(BigInt::from(*v)),
            IntDoc::Big(s) => BigInt::from_str(s).map_err(|e| Error::Schema(format!("bad integer {s}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: IntDoc,
    pub den: IntDoc,
}

impl From<&BigRational> for RationalDoc {
    fn from(q: &BigRational) -> Self {
        RationalDoc { num: q.numer().into(), den: q.denom().into() }
    }
}

impl RationalDoc {
    pub fn to_rational(&self) -> Result<BigRational> {
        let den = self.den.to_bigint()?;
        if den == BigInt::from(0) {
            return Err(Error::Schema("zero denominator".into()));
        }
        Ok(BigRational::new(self.num.to_bigint()?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub schema: String,
    pub matrix: [[RationalDoc; 2]; 2],
}

impl MatrixDoc {
    pub fn from_mobius(m: &RationalMobius) -> Self {
        let e = m.entries();
        let cell = |x: &BigInt| RationalDoc::from(&BigRational::from_integer(x.clone()));
        MatrixDoc {
            schema: MATRIX_SCHEMA.into(),
            matrix: [[cell(&e[0][0]), cell(&e[0][1])], [cell(&e[1][0]), cell(&e[1][1])]],
        }
    }

    pub fn to_mobius(&self) -> Result<RationalMobius> {
        expect_schema(&self.schema, MATRIX_SCHEMA)?;
        let q = |i: usize, j: usize| self.matrix[i][j].to_rational();
        RationalMobius::from_rationals([[q(0, 0)?, q(0, 1)?], [q(1, 0)?, q(1, 1)?]])
    }
}
