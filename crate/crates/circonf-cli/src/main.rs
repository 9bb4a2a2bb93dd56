//! Command-line front end: classify circle configurations by their nesting
//! trees, build reference configurations, decide braid equality, plan
//! collision-free paths, extract monodromy, and render SVG pictures.
//!
//! Exit codes: 0 for success and true verdicts, 1 for false verdicts,
//! 2 for errors.

use circonf::baut::{aut_order, pbaut_factors_reduced, structure_description};
use circonf::braid::{braids_equal, normal_form, BraidWord};
use circonf::canonical::kappa_of_tree;
use circonf::forest::{
    format_tree, labeled_trees_isomorphic, parse_tree, tree_of_configuration, trees_isomorphic,
};
use circonf::geometry::{validate_configuration, LabeledConfiguration};
use circonf::json;
use circonf::motion::{monodromy, validate_path, MotionPath};
use circonf::planner::{plan_between, plan_to_canonical, PlannerError};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod svg;

#[derive(Parser)]
#[command(name = "circonf", version, about = "Circle configurations, nesting trees, and their braided symmetries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a configuration file holds pairwise disjoint circles.
    Validate { config: PathBuf },
    /// Print the labeled nesting tree of a configuration (text and JSON).
    Tree { config: PathBuf },
    /// Print the reference configuration κ_T of a labeled tree, as JSON.
    Canonical { tree: String },
    /// Decide whether two configurations lie in the same connected component.
    Components {
        a: PathBuf,
        b: PathBuf,
        /// Compare as labeled configurations (labels may not permute).
        #[arg(long)]
        labeled: bool,
    },
    /// Structural data of the braided automorphism group of a tree.
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// Braid word computations.
    Braid {
        #[command(subcommand)]
        what: BraidCommand,
    },
    /// Extract the monodromy element of a loop of configurations.
    Monodromy { path: PathBuf },
    /// Plan a collision-free path: to the reference configuration, or
    /// between two configurations in the same component.
    Plan { a: PathBuf, b: Option<PathBuf> },
    /// Render a configuration or path to an SVG file.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Draw circle labels.
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// |Aut(T)|: the order of the plain automorphism group.
    Order { tree: String },
    /// Strand counts of the pure braid factors of PBAut(T) (trivial ones dropped).
    Factors { tree: String },
    /// The iterated semidirect-product shape of BAut(T).
    Structure { tree: String },
}

#[derive(Subcommand)]
enum BraidCommand {
    /// Decide equality of two braid words on n strands.
    Eq {
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Print the Garside normal form of a braid word on n strands.
    Nf {
        strands: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_config(path: &Path) -> Result<LabeledConfiguration, String> {
    json::config_from_json(&read_file(path)?)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn load_valid_config(path: &Path) -> Result<LabeledConfiguration, String> {
    let config = load_config(path)?;
    let violations = validate_configuration(&config.circles);
    if violations.is_empty() {
        Ok(config)
    } else {
        Err(format!(
            "{} is not a valid configuration: {}",
            path.display(),
            violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
        ))
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Validate { config } => {
            let config = load_config(&config)?;
            let violations = validate_configuration(&config.circles);
            if violations.is_empty() {
                println!("ok: {} circles, pairwise disjoint", config.n());
                Ok(0)
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
                Ok(1)
            }
        }
        Command::Tree { config } => {
            let config = load_valid_config(&config)?;
            let tree = tree_of_configuration(&config);
            println!("{}", format_tree(&tree));
            println!("{}", json::labeled_tree_to_json(&tree));
            Ok(0)
        }
        Command::Canonical { tree } => {
            let tree = parse_tree(&tree).map_err(|e| e.to_string())?;
            println!("{}", json::config_to_json(&kappa_of_tree(&tree)));
            Ok(0)
        }
        Command::Components { a, b, labeled } => {
            let ca = load_valid_config(&a)?;
            let cb = load_valid_config(&b)?;
            let ta = tree_of_configuration(&ca);
            let tb = tree_of_configuration(&cb);
            let same = if labeled {
                labeled_trees_isomorphic(&ta, &tb).unwrap_or(false)
            } else {
                trees_isomorphic(&ta.underlying(), &tb.underlying())
            };
            if same {
                println!("same component");
                Ok(0)
            } else {
                println!("different components");
                Ok(1)
            }
        }
        Command::Group { what } => {
            let (text, result) = match what {
                GroupCommand::Order { tree } => (tree, GroupOutput::Order),
                GroupCommand::Factors { tree } => (tree, GroupOutput::Factors),
                GroupCommand::Structure { tree } => (tree, GroupOutput::Structure),
            };
            let shape = parse_tree(&text).map_err(|e| e.to_string())?.underlying();
            match result {
                GroupOutput::Order => println!("{}", aut_order(&shape)),
                GroupOutput::Factors => {
                    let counts: Vec<String> =
                        pbaut_factors_reduced(&shape).iter().map(usize::to_string).collect();
                    println!("[{}]", counts.join(","));
                }
                GroupOutput::Structure => println!("{}", structure_description(&shape)),
            }
            Ok(0)
        }
        Command::Braid { what } => match what {
            BraidCommand::Eq { strands, w1, w2 } => {
                let w1 = BraidWord::parse(strands, &w1).map_err(|e| e.to_string())?;
                let w2 = BraidWord::parse(strands, &w2).map_err(|e| e.to_string())?;
                if braids_equal(&w1, &w2).map_err(|e| e.to_string())? {
                    println!("equal");
                    Ok(0)
                } else {
                    println!("not equal");
                    Ok(1)
                }
            }
            BraidCommand::Nf { strands, word } => {
                let word = BraidWord::parse(strands, &word).map_err(|e| e.to_string())?;
                let nf = normal_form(&word);
                println!("delta_power: {}", nf.power);
                for (i, factor) in nf.factors.iter().enumerate() {
                    let images: Vec<String> =
                        factor.images().iter().map(|&x| (x + 1).to_string()).collect();
                    println!("factor {}: {}", i + 1, images.join(" "));
                }
                Ok(0)
            }
        },
        Command::Monodromy { path } => {
            let p = json::path_from_json(&read_file(&path)?).map_err(|e| e.to_string())?;
            let element = monodromy(&p).map_err(|e| e.to_string())?;
            println!("{}", json::element_to_json(&element));
            Ok(0)
        }
        Command::Plan { a, b } => {
            let ca = load_valid_config(&a)?;
            let planned = match b {
                None => plan_to_canonical(&ca),
                Some(b) => {
                    let cb = load_valid_config(&b)?;
                    match plan_between(&ca, &cb) {
                        Ok(p) => p,
                        Err(PlannerError::DifferentComponent) => {
                            println!("different components");
                            return Ok(1);
                        }
                        Err(e) => return Err(e.to_string()),
                    }
                }
            };
            debug_assert_eq!(validate_path(&planned), Ok(()));
            println!("{}", json::path_to_json(&planned));
            Ok(0)
        }
        Command::Render { input, output, labels } => {
            let text = read_file(&input)?;
            let drawing = match json::config_from_json(&text) {
                Ok(config) => svg::render_config(&config, labels),
                Err(_) => {
                    let path: MotionPath =
                        json::path_from_json(&text).map_err(|e| {
                            format!("{} is neither a configuration nor a path: {e}", input.display())
                        })?;
                    svg::render_path(&path, labels)
                }
            };
            std::fs::write(&output, drawing)
                .map_err(|e| format!("cannot write {}: {e}", output.display()))?;
            println!("wrote {}", output.display());
            Ok(0)
        }
    }
}

enum GroupOutput {
    Order,
    Factors,
    Structure,
}
