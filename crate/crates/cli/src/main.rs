//! Command-line front end: parse a model, run the requested pipeline,
//! emit plain-text reports plus JSON/DOT artifacts, and exit with a
//! stable code: 0 success, 1 unreadable or unparsable input, 2 validation
//! failure, 3 resource cap, 4 falsified assertion, 5 oracle mismatch.

mod report;

use clap::{Args, Parser, Subcommand};
use cutcube_core::complex::oracle_enumerate;
use cutcube_core::export;
use cutcube_core::input::parse_model;
use cutcube_core::pipeline::{build_pipeline, tree_pipeline};
use cutcube_core::random::random_instance;
use cutcube_core::validate::validate_model;
use cutcube_core::{Caps, Model, ModelError};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cutcube",
    version,
    about = "Divisions, walls on triples, dual cube complexes, and cut point trees of finite graph models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the model assumptions and print one verdict per validator
    Validate(ValidateArgs),
    /// Build the division family, wallspace, and dual cube complex
    Build(BuildArgs),
    /// Assert the dual complex is a tree, subdivide it, classify its
    /// vertices, and compare with the cut point tree of the pinched model
    Tree(TreeArgs),
    /// Cross-check the construction against brute-force enumeration
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CapArgs {
    /// Cap on the order of the generated group
    #[arg(long, default_value_t = 1_000_000)]
    cap_group: usize,
    /// Cap on the number of dual-complex vertices
    #[arg(long, default_value_t = 100_000)]
    cap_vertices: usize,
    /// Cap on the wall count for brute-force orientation enumeration
    #[arg(long, default_value_t = 20)]
    cap_walls: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            group: self.cap_group,
            complex_vertices: self.cap_vertices,
            oracle_walls: self.cap_walls,
            ..Caps::default()
        }
    }
}

#[derive(Args)]
struct ValidateArgs {
    /// Model description (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Directory for the written report; stdout only when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct BuildArgs {
    /// Model description (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Directory for report and artifacts; stdout only when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the brute-force cross-checks
    #[arg(long)]
    no_oracle: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct TreeArgs {
    /// Model description (JSON)
    #[arg(long)]
    input: PathBuf,
    /// Directory for report and artifacts; stdout only when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the brute-force cross-checks
    #[arg(long)]
    no_oracle: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "random"]))]
struct OracleArgs {
    /// Model description (JSON)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Check this many seeded random instances instead of a file
    #[arg(long)]
    random: Option<usize>,
    /// Base seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for the written report; stdout only when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    caps: CapArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Failure {
        let code = if e.is_cap() {
            3
        } else if e.is_assertion() {
            4
        } else {
            match e {
                ModelError::Input(_) => 1,
                ModelError::OracleMismatch(_) => 5,
                _ => 2,
            }
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_model(path: &Path) -> Result<Model, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 1,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_model(&text).map_err(Failure::from)
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure {
        code: 1,
        message: format!("cannot create {}: {e}", dir.display()),
    })?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Failure {
        code: 1,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

/// Run the validators; `Ok` carries the rendered report and whether every
/// check passed.
fn validation(model: &Model, caps: &Caps) -> Result<(String, bool), Failure> {
    let report = validate_model(model, caps)?;
    Ok((report.render(), report.ok()))
}

fn cmd_validate(args: &ValidateArgs) -> Result<u8, Failure> {
    let model = read_model(&args.input)?;
    let (text, ok) = validation(&model, &args.caps.caps())?;
    print!("{text}");
    if let Some(dir) = &args.out {
        write_artifact(dir, "report.txt", &text)?;
    }
    Ok(if ok { 0 } else { 2 })
}

/// Build commands require a valid model; on failure the report is printed
/// and the validation exit code returned.
fn require_valid(model: &Model, caps: &Caps) -> Result<(), Failure> {
    let (text, ok) = validation(model, caps)?;
    if !ok {
        print!("{text}");
        return Err(Failure {
            code: 2,
            message: "model validation failed; see the report above".into(),
        });
    }
    Ok(())
}

fn cmd_build(args: &BuildArgs) -> Result<u8, Failure> {
    let caps = args.caps.caps();
    let model = read_model(&args.input)?;
    require_valid(&model, &caps)?;
    let built = build_pipeline(model, &caps, !args.no_oracle)?;
    let text = report::build_report(&built, !args.no_oracle);
    print!("{text}");
    if let Some(dir) = &args.out {
        write_artifact(dir, "report.txt", &text)?;
        write_artifact(dir, "complex.json", &export::complex_json(&built))?;
        write_artifact(dir, "complex.dot", &export::complex_dot(&built))?;
        write_artifact(dir, "crossing.dot", &export::crossing_dot(&built))?;
        write_artifact(
            dir,
            "transversality.json",
            &export::transversality_json(&built),
        )?;
    }
    Ok(0)
}

fn cmd_tree(args: &TreeArgs) -> Result<u8, Failure> {
    let caps = args.caps.caps();
    let model = read_model(&args.input)?;
    require_valid(&model, &caps)?;
    let outcome = tree_pipeline(model, &caps, !args.no_oracle)?;
    let text = report::tree_report(&outcome);
    print!("{text}");
    if let Some(dir) = &args.out {
        write_artifact(dir, "report.txt", &text)?;
        write_artifact(dir, "certificate.json", &export::certificate_json(&outcome))?;
        write_artifact(
            dir,
            "tree.dot",
            &export::tree_dot(&outcome.built.model.graph, &outcome.tree, &outcome.typed),
        )?;
        if let (Some(pinched), Some(cpt)) = (&outcome.pinched, &outcome.cutpoint) {
            write_artifact(
                dir,
                "cutpoint.dot",
                &export::cutpoint_dot(&pinched.quotient, cpt),
            )?;
        }
    }
    Ok(0)
}

fn cmd_oracle(args: &OracleArgs) -> Result<u8, Failure> {
    let caps = args.caps.caps();
    let mut text = String::new();
    if let Some(path) = &args.input {
        let model = read_model(path)?;
        let built = build_pipeline(model, &caps, true)?;
        let walls = built.wallspace.wall_count();
        let oracle =
            oracle_enumerate(&built.wallspace, caps.oracle_walls).map_err(Failure::from)?;
        writeln!(text, "walls: {walls}").unwrap();
        writeln!(
            text,
            "orientation candidates: 2^{walls} = {}",
            1u64 << walls
        )
        .unwrap();
        writeln!(text, "consistent orientations: {}", oracle.len()).unwrap();
        writeln!(
            text,
            "complex vertices (principal search): {}",
            built.complex.vertex_count()
        )
        .unwrap();
        writeln!(
            text,
            "non-principal orientations: {}",
            oracle.len() - built.complex.vertex_count()
        )
        .unwrap();
        writeln!(text, "transversality and inclusion scans: agree").unwrap();
        writeln!(
            text,
            "principal equivariance: {} element(s) checked",
            built.group.order()
        )
        .unwrap();
        writeln!(text, "agreement: 100%").unwrap();
    } else {
        let count = args.random.unwrap_or(0);
        writeln!(text, "random instances: {count} (base seed {})", args.seed).unwrap();
        for i in 0..count {
            let seed = args.seed.wrapping_add(i as u64);
            let model = random_instance(seed).into_model();
            let vertices = model.graph.vertex_count();
            let built = build_pipeline(model, &caps, true)?;
            writeln!(
                text,
                "seed {seed}: {vertices} vertices, {} wall(s), {} orientation(s), agreement",
                built.wallspace.wall_count(),
                built.complex.vertex_count()
            )
            .unwrap();
        }
        writeln!(text, "agreement: 100% on {count} instance(s)").unwrap();
    }
    print!("{text}");
    if let Some(dir) = &args.out {
        write_artifact(dir, "report.txt", &text)?;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Build(args) => cmd_build(args),
        Command::Tree(args) => cmd_tree(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
