//! Command-line parsing into a validated [`JobSpec`], and rendering back to argv.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modlattice::json::{parse_generators, parse_module_json};
use modlattice::laws::LawId;
use modlattice::rings::{gf, parse_ring_with_cells, DomainKind};
use modlattice::{Error, Limits};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "modlattice", version, about = "Prime and classical prime submodules, lattices and cl.Hilbert checks")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Classify one submodule of a module.
    Classify {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        module: ModuleArgs,
        /// Submodule generators as JSON, or `-` for stdin.
        #[arg(long)]
        submodule: String,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the submodule lattice of a module over a finite ring.
    Lattice {
        #[arg(long)]
        ring: Option<String>,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide the cl.Hilbert property.
    ClHilbert {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the law suite.
    Laws {
        #[command(subcommand)]
        action: LawsAction,
    },
    /// Witness checks.
    Witness {
        #[command(subcommand)]
        action: WitnessAction,
    },
}

#[derive(Subcommand, Debug)]
enum LawsAction {
    Run {
        #[arg(long, conflicts_with = "law", required_unless_present = "law")]
        all: bool,
        #[arg(long)]
        law: Option<String>,
        /// Restricts the finite corpus; may be repeated.
        #[arg(long)]
        ring: Vec<String>,
        #[arg(long, value_parser = positive)]
        max_module: Option<usize>,
        #[arg(long, value_parser = positive)]
        samples: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessAction {
    /// The submodule P(p,x) of Z[x] ⊕ Z[x].
    Zx {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = positive, default_value_t = DEFAULT_WITNESS_SAMPLES as usize)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct TargetArgs {
    /// A finite ring such as `Z/12` or `Z/2 x GF(2)[x]/[1,1,1]`.
    #[arg(long, conflicts_with = "domain")]
    ring: Option<String>,
    /// `Z`, `GF(p)[x]` or `Zloc(p)`.
    #[arg(long)]
    domain: Option<String>,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// `{"rank": k, "relations": [[...], ...]}`, or `-` for stdin.
    #[arg(long)]
    module: String,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long, value_parser = positive)]
    max_module: Option<usize>,
    #[arg(long, value_parser = positive)]
    max_lattice: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

pub const DEFAULT_WITNESS_SAMPLES: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

/// Where a module lives. Rings and domains are kept in canonical spelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Ring(String),
    Domain(DomainKind),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub max_module: Option<usize>,
    pub max_lattice: Option<usize>,
}

impl Bounds {
    pub fn apply(&self, limits: &Limits) -> Limits {
        Limits {
            max_module: self.max_module.unwrap_or(limits.max_module),
            max_lattice: self.max_lattice.unwrap_or(limits.max_lattice),
            ..*limits
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// `module` is `{"rank", "relations"}`; `generators` is the generator array.
    Classify {
        target: Target,
        module: Value,
        generators: Value,
        bounds: Bounds,
    },
    Lattice {
        ring: String,
        module: Value,
        bounds: Bounds,
        format: Format,
    },
    ClHilbert {
        target: Target,
        module: Value,
        bounds: Bounds,
    },
    /// `law: None` runs every law.
    Laws {
        law: Option<LawId>,
        rings: Vec<String>,
        max_module: Option<usize>,
        samples: Option<usize>,
        seed: u64,
    },
    Witness {
        p: u64,
        samples: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub out: Option<PathBuf>,
}

/// Reads `-` from stdin, at most once.
struct Stdin<'a> {
    reader: &'a mut dyn Read,
    used: bool,
}

impl Stdin<'_> {
    fn resolve(&mut self, arg: String) -> Result<String, CliError> {
        if arg != "-" {
            return Ok(arg);
        }
        if self.used {
            return Err(Error::Parse("only one argument may be read from stdin".into()).into());
        }
        self.used = true;
        let mut s = String::new();
        self.reader.read_to_string(&mut s)?;
        Ok(s)
    }
}

fn canonical_ring(s: &str, limits: &Limits) -> Result<String, CliError> {
    Ok(parse_ring_with_cells(s, limits.max_cells)?.to_string())
}

/// Module JSON with any `ring` field folded into the target.
fn module_and_ring(text: &str, ring: Option<String>, limits: &Limits) -> Result<(Value, Option<String>), CliError> {
    let spec = parse_module_json(text)?;
    let ring = match (ring, spec.ring) {
        (Some(flag), Some(inline)) => {
            let (a, b) = (canonical_ring(&flag, limits)?, canonical_ring(&inline, limits)?);
            if a != b {
                return Err(Error::Parse(format!("--ring `{a}` disagrees with module ring `{b}`")).into());
            }
            Some(a)
        }
        (flag, inline) => flag.or(inline).map(|r| canonical_ring(&r, limits)).transpose()?,
    };
    Ok((json!({ "rank": spec.rank, "relations": spec.relations }), ring))
}

fn target(t: TargetArgs, module: &str, limits: &Limits) -> Result<(Target, Value), CliError> {
    if let Some(d) = t.domain {
        let kind: DomainKind = d.parse()?;
        let (module, ring) = module_and_ring(module, None, limits)?;
        if ring.is_some() {
            return Err(Error::Parse("a module over --domain cannot name a ring".into()).into());
        }
        return Ok((Target::Domain(kind), module));
    }
    let (module, ring) = module_and_ring(module, t.ring, limits)?;
    let ring = ring.ok_or_else(|| Error::Parse("one of --ring or --domain is required".into()))?;
    Ok((Target::Ring(ring), module))
}

fn bounds(b: BoundArgs) -> Bounds {
    Bounds { max_module: b.max_module, max_lattice: b.max_lattice }
}

/// Parses and validates argv (without the program name).
pub fn parse_job(argv: &[String], stdin: &mut dyn Read, limits: &Limits) -> Result<JobSpec, CliError> {
    let cli = Cli::try_parse_from(std::iter::once("modlattice".to_string()).chain(argv.iter().cloned()))?;
    let mut stdin = Stdin { reader: stdin, used: false };
    let (command, out) = match cli.command {
        CliCommand::Classify { target: t, module, submodule, bounds: b, out } => {
            let module = stdin.resolve(module.module)?;
            let generators = parse_generators(&stdin.resolve(submodule)?)?;
            let (target, module) = target(t, &module, limits)?;
            (Command::Classify { target, module, generators, bounds: bounds(b) }, out)
        }
        CliCommand::Lattice { ring, module, bounds: b, format, out } => {
            let (module, ring) = module_and_ring(&stdin.resolve(module.module)?, ring, limits)?;
            let ring = ring.ok_or_else(|| Error::Parse("--ring is required".into()))?;
            (Command::Lattice { ring, module, bounds: bounds(b), format }, out)
        }
        CliCommand::ClHilbert { target: t, module, bounds: b, out } => {
            let (target, module) = target(t, &stdin.resolve(module.module)?, limits)?;
            (Command::ClHilbert { target, module, bounds: bounds(b) }, out)
        }
        CliCommand::Laws { action: LawsAction::Run { all: _, law, ring, max_module, samples, seed, out } } => {
            let law = law.map(|l| l.parse::<LawId>()).transpose()?;
            let rings = ring.iter().map(|r| canonical_ring(r, limits)).collect::<Result<_, _>>()?;
            (Command::Laws { law, rings, max_module, samples, seed }, out)
        }
        CliCommand::Witness { action: WitnessAction::Zx { p, samples, seed, out } } => {
            if !gf::is_prime_u64(p) {
                return Err(Error::InvalidSpec(format!("--p {p} is not prime")).into());
            }
            (Command::Witness { p, samples: samples as u64, seed }, out)
        }
    };
    Ok(JobSpec { command, out })
}

fn push(argv: &mut Vec<String>, flag: &str, value: impl ToString) {
    argv.push(flag.to_string());
    argv.push(value.to_string());
}

fn push_opt(argv: &mut Vec<String>, flag: &str, value: Option<impl ToString>) {
    if let Some(v) = value {
        push(argv, flag, v);
    }
}

fn push_target(argv: &mut Vec<String>, t: &Target) {
    match t {
        Target::Ring(r) => push(argv, "--ring", r),
        Target::Domain(d) => push(argv, "--domain", d),
    }
}

fn push_bounds(argv: &mut Vec<String>, b: &Bounds) {
    push_opt(argv, "--max-module", b.max_module);
    push_opt(argv, "--max-lattice", b.max_lattice);
}

impl JobSpec {
    /// An argv that parses back to this job.
    pub fn render(&self) -> Vec<String> {
        let mut a = Vec::new();
        match &self.command {
            Command::Classify { target, module, generators, bounds } => {
                a.push("classify".into());
                push_target(&mut a, target);
                push(&mut a, "--module", module);
                push(&mut a, "--submodule", json!({ "generators": generators }));
                push_bounds(&mut a, bounds);
            }
            Command::Lattice { ring, module, bounds, format } => {
                a.push("lattice".into());
                push(&mut a, "--ring", ring);
                push(&mut a, "--module", module);
                push_bounds(&mut a, bounds);
                push(&mut a, "--format", format.to_possible_value().expect("no skipped variants").get_name());
            }
            Command::ClHilbert { target, module, bounds } => {
                a.push("cl-hilbert".into());
                push_target(&mut a, target);
                push(&mut a, "--module", module);
                push_bounds(&mut a, bounds);
            }
            Command::Laws { law, rings, max_module, samples, seed } => {
                a.extend(["laws".into(), "run".into()]);
                match law {
                    Some(l) => push(&mut a, "--law", l),
                    None => a.push("--all".into()),
                }
                for r in rings {
                    push(&mut a, "--ring", r);
                }
                push_opt(&mut a, "--max-module", *max_module);
                push_opt(&mut a, "--samples", *samples);
                push(&mut a, "--seed", seed);
            }
            Command::Witness { p, samples, seed } => {
                a.extend(["witness".into(), "zx".into()]);
                push(&mut a, "--p", p);
                push(&mut a, "--samples", samples);
                push(&mut a, "--seed", seed);
            }
        }
        push_opt(&mut a, "--out", self.out.as_ref().map(|p| p.display()));
        a
    }

    /// The job as echoed in reports. The output path is left out so that a
    /// report does not depend on where it was written.
    pub fn echo(&self) -> Value {
        let target_json = |t: &Target| match t {
            Target::Ring(r) => json!({ "ring": r }),
            Target::Domain(d) => json!({ "domain": d.to_string() }),
        };
        let bounds_json = |b: &Bounds| json!({ "maxModule": b.max_module, "maxLattice": b.max_lattice });
        let mut v = match &self.command {
            Command::Classify { target, module, generators, bounds } => {
                let mut v = target_json(target);
                v["module"] = module.clone();
                v["submodule"] = json!({ "generators": generators });
                v["bounds"] = bounds_json(bounds);
                v
            }
            Command::Lattice { ring, module, bounds, format } => json!({
                "ring": ring,
                "module": module,
                "bounds": bounds_json(bounds),
                "format": format.to_possible_value().expect("no skipped variants").get_name(),
            }),
            Command::ClHilbert { target, module, bounds } => {
                let mut v = target_json(target);
                v["module"] = module.clone();
                v["bounds"] = bounds_json(bounds);
                v
            }
            Command::Laws { law, rings, max_module, samples, seed } => json!({
                "law": law.map(|l| l.as_str()).unwrap_or("all"),
                "rings": rings,
                "maxModule": max_module,
                "samples": samples,
                "seed": seed,
            }),
            Command::Witness { p, samples, seed } => json!({ "p": p, "samples": samples, "seed": seed }),
        };
        v["command"] = json!(self.command_name());
        v
    }

    pub fn command_name(&self) -> &'static str {
        match self.command {
            Command::Classify { .. } => "classify",
            Command::Lattice { .. } => "lattice",
            Command::ClHilbert { .. } => "cl-hilbert",
            Command::Laws { .. } => "laws run",
            Command::Witness { .. } => "witness zx",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<JobSpec, CliError> {
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        parse_job(&argv, &mut std::io::empty(), &Limits::default())
    }

    #[test]
    fn classify_job() {
        let job = parse(&[
            "classify",
            "--ring",
            "Z/6",
            "--module",
            r#"{"rank":1,"relations":[[0]]}"#,
            "--submodule",
            r#"{"generators":[[3]]}"#,
        ])
        .unwrap();
        assert_eq!(
            job.command,
            Command::Classify {
                target: Target::Ring("Z/6".into()),
                module: json!({"rank": 1, "relations": [[0]]}),
                generators: json!([[3]]),
                bounds: Bounds::default(),
            }
        );
    }

    #[test]
    fn domain_job() {
        let job = parse(&["cl-hilbert", "--domain", "Zloc(3)", "--module", r#"{"rank":1,"relations":[]}"#]).unwrap();
        assert!(matches!(job.command, Command::ClHilbert { target: Target::Domain(DomainKind::IntLocAt(3)), .. }));
    }

    #[test]
    fn ring_from_module_json() {
        let job = parse(&["lattice", "--module", r#"{"ring":"Z/4","rank":1}"#]).unwrap();
        assert!(matches!(job.command, Command::Lattice { ref ring, .. } if ring == "Z/4"));
        let clash = parse(&["lattice", "--ring", "Z/2", "--module", r#"{"ring":"Z/4","rank":1}"#]);
        assert_eq!(clash.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn exit_codes_for_bad_input() {
        let m = r#"{"rank":1,"relations":[]}"#;
        let sub = r#"{"generators":[]}"#;
        assert_eq!(
            parse(&["classify", "--ring", "Z/1", "--module", m, "--submodule", sub]).unwrap_err().exit_code(),
            3
        );
        assert_eq!(parse(&["classify", "--ring", "Q", "--module", m, "--submodule", sub]).unwrap_err().exit_code(), 2);
        assert_eq!(
            parse(&["classify", "--ring", "Z/2", "--module", "{", "--submodule", sub]).unwrap_err().exit_code(),
            2
        );
        assert_eq!(parse(&["laws", "run", "--all"]).unwrap_err().exit_code(), 2, "seed is required");
        assert_eq!(parse(&["laws", "run", "--seed", "1"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["laws", "run", "--law", "L9.9", "--seed", "1"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["laws", "run", "--all", "--max-module", "0", "--seed", "1"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["witness", "zx", "--p", "2"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["witness", "zx", "--p", "4", "--seed", "1"]).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn stdin_module() {
        let argv: Vec<String> =
            ["cl-hilbert", "--domain", "Z", "--module", "-"].iter().map(|s| s.to_string()).collect();
        let mut input = r#"{"rank":2,"relations":[[2,0]]}"#.as_bytes();
        let job = parse_job(&argv, &mut input, &Limits::default()).unwrap();
        assert!(matches!(job.command, Command::ClHilbert { ref module, .. } if module["rank"] == 2));
    }

    #[test]
    fn render_round_trips_examples() {
        for args in [
            &["laws", "run", "--all", "--seed", "42"][..],
            &["laws", "run", "--law", "L2.5", "--ring", "Z/12", "--max-module", "256", "--seed", "7"],
            &["witness", "zx", "--p", "5", "--samples", "100", "--seed", "3", "--out", "w.json"],
            &["lattice", "--ring", "Z/2", "--module", r#"{"rank":2}"#, "--format", "dot"],
        ] {
            let job = parse(args).unwrap();
            let back = parse(&job.render().iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
            assert_eq!(back, job);
        }
    }
}
