mod config;
mod failure;
mod parse;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use surface_tower::characteristic::{
    build_char_tower, char_core, fiber_product, homology_cover, Automorphism, TowerStep,
};
use surface_tower::cycle::{Arrow, CyclePath, PathStep, ReductionOrder};
use surface_tower::enumerate::{index_counts, low_index_subgroups};
use surface_tower::genus_one::{covering_modulus_map, dense_orbit_approx, hnf, ExactPoint, RationalMobius, UpperHalfPoint};
use surface_tower::io::{
    from_json, to_canonical_json, CycleDoc, MatrixDoc, RationalDoc, SubgroupDoc, TowerDoc, VautDoc, CYCLE_SCHEMA,
    MATRIX_SCHEMA, SUBGROUP_SCHEMA, TOWER_SCHEMA, VAUT_SCHEMA,
};
use surface_tower::ledger::{ledger_report, TowerShape};
use surface_tower::vaut::{TwoArrowCycle, VirtualAutomorphism};
use surface_tower::{Presentation, Subgroup};

use config::RunConfig;
use failure::{Failure, Outcome};
use workspace::{digest, schema_of, Workspace};

const WORKSPACE_ENV: &str = "SURFTOWER_WORKSPACE";
const DEFAULT_WORKSPACE: &str = "surftower-workspace";

/// Exact computations on finite covers of a closed surface.
///
/// Every command prints its result document on stdout and stores it,
/// content-addressed, in the workspace. File arguments accept a path or a
/// stored object's hash prefix.
#[derive(Parser, Debug)]
#[command(name = "surftower", version)]
struct Cli {
    /// TOML run configuration (budgets, seed, output directory, format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Workspace directory; overrides the environment and the config file.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Also write the result document to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All subgroups of index at most `max-index`, plus a manifest.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        max_index: usize,
    },
    /// Characteristic subgroups.
    #[command(subcommand)]
    Char(CharCommand),
    /// Intersection of two subgroups (fiber product when both are certified).
    Intersect { a: String, b: String },
    #[command(subcommand)]
    Tower(TowerCommand),
    #[command(subcommand)]
    Ledger(LedgerCommand),
    /// Virtual automorphisms.
    #[command(subcommand)]
    Vaut(VautCommand),
    /// The genus-one model on the upper half-plane.
    #[command(subcommand)]
    Genus1(Genus1Command),
    /// Re-emit a stored document as DOT or canonical JSON.
    Export {
        #[arg(long, conflicts_with = "json", required_unless_present = "json")]
        dot: Option<String>,
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CharCommand {
    /// Kernel-intersection core of a subgroup.
    Core { subgroup: String },
    /// Kernel of the map to first homology mod n.
    Homology {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
enum TowerCommand {
    /// Tower on the base together with the requested characteristic covers.
    Build {
        #[arg(long)]
        genus: usize,
        /// Homology cover of this level (repeatable).
        #[arg(long)]
        homology: Vec<u64>,
        /// Characteristic core of this subgroup file (repeatable).
        #[arg(long)]
        core: Vec<String>,
        /// Certified subgroup file added as is (repeatable).
        #[arg(long)]
        node: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LedgerCommand {
    /// Universal bundle exponents and consistency checks along a tower.
    Check {
        #[arg(long)]
        tower: String,
        /// Inclusive range, e.g. -3..4.
        #[arg(long, allow_hyphen_values = true)]
        m_range: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Leftmost,
    Rightmost,
}

#[derive(Subcommand, Debug)]
enum VautCommand {
    /// Identity of a subgroup.
    Identity { subgroup: String },
    /// Restriction of a built-in automorphism to an invariant subgroup.
    FromAut {
        subgroup: String,
        /// `handle-shift`, `identity`, or `inner:<word>` with a word like `1,-3`.
        #[arg(long)]
        aut: String,
    },
    /// `first o second` (apply `second`, then `first`).
    Compose { first: String, second: String },
    Invert { vaut: String },
    /// Whether two virtual automorphisms have the same germ.
    GermEq { a: String, b: String },
    /// The cycle path down and up through each given virtual automorphism in turn.
    Cycle {
        #[arg(required = true)]
        vauts: Vec<String>,
    },
    /// Collapse a cycle path to a single virtual automorphism.
    Reduce {
        cycle: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        order: Order,
    },
    /// Look for a finite-index subgroup the germ maps onto itself.
    MclSearch {
        vaut: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Genus1Command {
    /// Moduli map of the sublattice with rows `a,b;c,d`.
    ModulusMap {
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
    },
    /// Exact action of a rational matrix on a rational point.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true, default_value = "i")]
        tau: String,
    },
    /// Rational affine map sending `source` within `eps` of `target`.
    Orbit {
        #[arg(long, allow_hyphen_values = true, default_value = "i")]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        eps: f64,
    },
}

struct Ctx {
    cfg: RunConfig,
    ws: Workspace,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Manifest {
    schema: &'static str,
    genus: usize,
    max_index: usize,
    seed: u64,
    counts: Vec<usize>,
    total: usize,
    objects: Vec<String>,
}

#[derive(Serialize)]
struct GermEqDoc {
    schema: &'static str,
    equal: bool,
}

#[derive(Serialize)]
struct MclDoc {
    schema: &'static str,
    depth: usize,
    found: bool,
    witness: Option<SubgroupDoc>,
}

#[derive(Serialize)]
struct PointDoc {
    schema: &'static str,
    re: RationalDoc,
    im: RationalDoc,
}

#[derive(Serialize)]
struct OrbitDoc {
    schema: &'static str,
    source: [f64; 2],
    target: [f64; 2],
    eps: f64,
    matrix: MatrixDoc,
    image: [f64; 2],
    error: f64,
}

impl Ctx {
    fn budget(&self) -> &surface_tower::Budget {
        &self.cfg.budget
    }

    /// Stores, optionally copies to `--out`, and prints a document.
    fn emit<T: Serialize>(&self, doc: &T, producer: &str) -> Outcome<String> {
        let text = to_canonical_json(doc)?;
        let hash = self.ws.put(&text, producer)?;
        if let Some(path) = &self.out {
            std::fs::write(path, &text)?;
        }
        if self.cfg.format.pretty {
            print!("{text}");
        } else {
            println!("{}", serde_json::to_string(doc).map_err(|e| Failure::Io(e.to_string()))?);
        }
        Ok(hash)
    }

    fn load(&self, reference: &str, schema: &str) -> Outcome<String> {
        let text = self.ws.read(reference)?;
        match schema_of(&text) {
            Some(s) if s == schema => Ok(text),
            found => Err(surface_tower::Error::Schema(format!(
                "{reference}: expected schema {schema}, found {}",
                found.as_deref().unwrap_or("none")
            ))
            .into()),
        }
    }

    fn subgroup_doc(&self, reference: &str) -> Outcome<SubgroupDoc> {
        Ok(from_json(&self.load(reference, SUBGROUP_SCHEMA)?)?)
    }

    fn vaut(&self, reference: &str, pres: Option<&Arc<Presentation>>) -> Outcome<VirtualAutomorphism> {
        let doc: VautDoc = from_json(&self.load(reference, VAUT_SCHEMA)?)?;
        Ok(match pres {
            Some(p) => doc.to_vaut_over(p, self.budget())?,
            None => doc.to_vaut(self.budget())?,
        })
    }

    fn tower(&self, reference: &str) -> Outcome<(String, TowerDoc)> {
        let text = self.load(reference, TOWER_SCHEMA)?;
        Ok((digest(&text), from_json(&text)?))
    }
}

fn to_f64(q: &num_rational::BigRational) -> Outcome<f64> {
    q.to_f64().filter(|x| x.is_finite()).ok_or_else(|| Failure::Argument(format!("{q} is out of floating range")))
}

fn point(s: &str) -> Outcome<UpperHalfPoint> {
    let (re, im) = parse::complex(s)?;
    Ok(UpperHalfPoint::new(to_f64(&re)?, to_f64(&im)?)?)
}

fn named_automorphism(pres: &Presentation, spec: &str) -> Outcome<Automorphism> {
    match spec {
        "handle-shift" | "handle-swap" => Ok(Automorphism::handle_shift(pres)?),
        "identity" => Ok(Automorphism::identity(pres)),
        other => match other.strip_prefix("inner:") {
            Some(w) => Ok(Automorphism::inner(pres, &parse::word(w)?)),
            None => Err(Failure::Argument(format!("unknown automorphism {other}"))),
        },
    }
}

fn run(cli: Cli) -> Outcome<()> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let root = cli
        .workspace
        .clone()
        .or_else(|| std::env::var_os(WORKSPACE_ENV).map(PathBuf::from))
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_WORKSPACE));
    let ctx = Ctx { ws: Workspace::open(&root)?, cfg, out: cli.out.clone() };
    let b = ctx.budget().clone();
    match cli.command {
        Command::Enumerate { genus, max_index } => {
            let pres = Presentation::surface(genus)?;
            let subs = low_index_subgroups(&pres, max_index, &b)?;
            let mut objects = Vec::with_capacity(subs.len());
            for s in &subs {
                let text = to_canonical_json(&SubgroupDoc::from_subgroup(s)?)?;
                objects.push(ctx.ws.put(&text, "enumerate")?);
            }
            let manifest = Manifest {
                schema: "manifest/1",
                genus,
                max_index,
                seed: ctx.cfg.seed,
                counts: index_counts(&subs, max_index),
                total: subs.len(),
                objects,
            };
            ctx.emit(&manifest, "enumerate")?;
        }
        Command::Char(CharCommand::Core { subgroup }) => {
            let h = ctx.subgroup_doc(&subgroup)?.to_subgroup()?;
            ctx.emit(&SubgroupDoc::from_char(&char_core(&h, &b)?)?, "char core")?;
        }
        Command::Char(CharCommand::Homology { genus, n }) => {
            let pres = Presentation::surface(genus)?;
            ctx.emit(&SubgroupDoc::from_char(&homology_cover(&pres, n, &b)?)?, "char homology")?;
        }
        Command::Intersect { a, b: other } => {
            let (da, db) = (ctx.subgroup_doc(&a)?, ctx.subgroup_doc(&other)?);
            let pres = Presentation::surface(da.genus)?;
            let doc = if da.certificate.is_some() && db.certificate.is_some() {
                let (ca, cb) = (da.to_verified_char(&pres, &b)?, db.to_verified_char(&pres, &b)?);
                SubgroupDoc::from_char(&fiber_product(&ca, &cb, &b)?)?
            } else {
                let (sa, sb) = (da.to_subgroup_over(&pres)?, db.to_subgroup_over(&pres)?);
                SubgroupDoc::from_subgroup(&sa.intersect_capped(&sb, Some(b.max_result_index))?)?
            };
            ctx.emit(&doc, "intersect")?;
        }
        Command::Tower(TowerCommand::Build { genus, homology, core, node }) => {
            let pres = Presentation::surface(genus)?;
            let mut steps: Vec<TowerStep> = homology.into_iter().map(TowerStep::HomologyCover).collect();
            for r in &core {
                steps.push(TowerStep::CharCore(ctx.subgroup_doc(r)?.to_subgroup_over(&pres)?));
            }
            for r in &node {
                steps.push(TowerStep::Explicit(ctx.subgroup_doc(r)?.to_char_over(&pres)?));
            }
            let tower = build_char_tower(&pres, &steps, &b)?;
            ctx.emit(&TowerDoc::from_graph(&tower)?, "tower build")?;
        }
        Command::Ledger(LedgerCommand::Check { tower, m_range }) => {
            let range = parse::m_range(&m_range)?;
            let (hash, doc) = ctx.tower(&tower)?;
            let graph = doc.to_graph(Some(&b))?;
            let report = ledger_report(&hash, &TowerShape::from(&graph), range)?;
            ctx.emit(&report, "ledger check")?;
            if !report.all_pass() {
                let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                return Err(Failure::ChecksFailed(format!("failed checks: {}", failed.join(", "))));
            }
        }
        Command::Vaut(cmd) => run_vaut(&ctx, cmd)?,
        Command::Genus1(cmd) => run_genus1(&ctx, cmd)?,
        Command::Export { dot, json } => {
            if let Some(r) = dot {
                let graph = ctx.tower(&r)?.1.to_graph(Some(&b))?;
                print!("{}", graph.to_dot());
                if let Some(path) = &ctx.out {
                    std::fs::write(path, graph.to_dot())?;
                }
            } else if let Some(r) = json {
                let text = ctx.ws.read(&r)?;
                let schema = schema_of(&text).unwrap_or_default();
                let canonical = match schema.as_str() {
                    SUBGROUP_SCHEMA => {
                        let doc: SubgroupDoc = from_json(&text)?;
                        let pres = Presentation::surface(doc.genus)?;
                        let fresh = match &doc.certificate {
                            Some(_) => SubgroupDoc::from_char(&doc.to_verified_char(&pres, &b)?)?,
                            None => SubgroupDoc::from_subgroup(&doc.to_subgroup_over(&pres)?)?,
                        };
                        to_canonical_json(&fresh)?
                    }
                    TOWER_SCHEMA => to_canonical_json(&TowerDoc::from_graph(&from_json::<TowerDoc>(&text)?.to_graph(Some(&b))?)?)?,
                    VAUT_SCHEMA => to_canonical_json(&VautDoc::from_vaut(&from_json::<VautDoc>(&text)?.to_vaut(&b)?)?)?,
                    CYCLE_SCHEMA => to_canonical_json(&CycleDoc::from_path(&from_json::<CycleDoc>(&text)?.to_path(&b)?)?)?,
                    MATRIX_SCHEMA => to_canonical_json(&MatrixDoc::from_mobius(&from_json::<MatrixDoc>(&text)?.to_mobius()?))?,
                    other => {
                        return Err(surface_tower::Error::Schema(format!("cannot export schema {other:?}")).into());
                    }
                };
                print!("{canonical}");
                if let Some(path) = &ctx.out {
                    std::fs::write(path, &canonical)?;
                }
            }
        }
    }
    Ok(())
}

fn run_vaut(ctx: &Ctx, cmd: VautCommand) -> Outcome<()> {
    let b = ctx.budget();
    match cmd {
        VautCommand::Identity { subgroup } => {
            let h = ctx.subgroup_doc(&subgroup)?.to_subgroup()?;
            ctx.emit(&VautDoc::from_vaut(&VirtualAutomorphism::identity(&h))?, "vaut identity")?;
        }
        VautCommand::FromAut { subgroup, aut } => {
            let h = ctx.subgroup_doc(&subgroup)?.to_subgroup()?;
            let phi = named_automorphism(h.presentation(), &aut)?;
            ctx.emit(&VautDoc::from_vaut(&VirtualAutomorphism::from_automorphism(&phi, &h, b)?)?, "vaut from-aut")?;
        }
        VautCommand::Compose { first, second } => {
            let f = ctx.vaut(&first, None)?;
            let g = ctx.vaut(&second, Some(f.presentation()))?;
            ctx.emit(&VautDoc::from_vaut(&g.compose(&f, b)?)?, "vaut compose")?;
        }
        VautCommand::Invert { vaut } => {
            let v = ctx.vaut(&vaut, None)?;
            ctx.emit(&VautDoc::from_vaut(&v.inverse(b)?)?, "vaut invert")?;
        }
        VautCommand::GermEq { a, b: other } => {
            let x = ctx.vaut(&a, None)?;
            let y = ctx.vaut(&other, Some(x.presentation()))?;
            ctx.emit(&GermEqDoc { schema: "germ-eq/1", equal: x.germ_equals(&y, b)? }, "vaut germ-eq")?;
        }
        VautCommand::Cycle { vauts } => {
            let first = ctx.vaut(&vauts[0], None)?;
            let pres = first.presentation().clone();
            let g = Subgroup::full_group(pres.clone());
            let mut steps = Vec::with_capacity(2 * vauts.len());
            for (i, r) in vauts.iter().enumerate() {
                let v = if i == 0 { first.clone() } else { ctx.vaut(r, Some(&pres))? };
                steps.push(PathStep::backward(Arrow::inclusion(v.domain(), &g)?));
                steps.push(PathStep::forward(Arrow::from_vaut(&v, &g)?));
            }
            ctx.emit(&CycleDoc::from_path(&CyclePath::new(steps)?)?, "vaut cycle")?;
        }
        VautCommand::Reduce { cycle, order } => {
            let doc: CycleDoc = from_json(&ctx.load(&cycle, CYCLE_SCHEMA)?)?;
            let path = doc.to_path(b)?;
            let order = match order {
                Order::Leftmost => ReductionOrder::LeftmostFirst,
                Order::Rightmost => ReductionOrder::RightmostFirst,
            };
            let two: TwoArrowCycle = path.reduce(order, b)?;
            ctx.emit(&VautDoc::from_vaut(&two.to_vaut(b)?)?, "vaut reduce")?;
        }
        VautCommand::MclSearch { vaut, depth } => {
            let v = ctx.vaut(&vaut, None)?;
            let witness = v.bounded_mcl_search(depth, b)?;
            let doc = MclDoc {
                schema: "mcl-search/1",
                depth,
                found: witness.is_some(),
                witness: witness.as_ref().map(SubgroupDoc::from_subgroup).transpose()?,
            };
            ctx.emit(&doc, "vaut mcl-search")?;
        }
    }
    Ok(())
}

fn run_genus1(ctx: &Ctx, cmd: Genus1Command) -> Outcome<()> {
    match cmd {
        Genus1Command::ModulusMap { lattice } => {
            let l = hnf(parse::int_matrix(&lattice)?)?;
            ctx.emit(&MatrixDoc::from_mobius(&covering_modulus_map(&l)), "genus1 modulus-map")?;
        }
        Genus1Command::Act { matrix, tau } => {
            let m = RationalMobius::from_rationals(parse::rational_matrix(&matrix)?)?;
            let (re, im) = parse::complex(&tau)?;
            let z = m.act_exact(&ExactPoint::new(re, im)?);
            ctx.emit(&PointDoc { schema: "point/1", re: (&z.re).into(), im: (&z.im).into() }, "genus1 act")?;
        }
        Genus1Command::Orbit { source, target, eps } => {
            let (s, t) = (point(&source)?, point(&target)?);
            let m = dense_orbit_approx(s, t, eps)?;
            let image = m.act(s);
            let doc = OrbitDoc {
                schema: "orbit/1",
                source: [s.re, s.im],
                target: [t.re, t.im],
                eps,
                matrix: MatrixDoc::from_mobius(&m),
                image: [image.re, image.im],
                error: image.distance(&t),
            };
            ctx.emit(&doc, "genus1 orbit")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.diagnostic());
            ExitCode::from(f.kind().1 as u8)
        }
    }
}
