use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use recshacl::acorss::compare_semantics;
use recshacl::fixpoint::{models, DEFAULT_MAX_CANDIDATES};
use recshacl::schema::to_snf;
use recshacl::textio::json::{AssignmentJson, PartialJson};
use recshacl::textio::{parse_graph_named, parse_schema_with, print_schema, ParseOptions};
use recshacl::validate::REPORT_FORMAT;
use recshacl::{validate, Graph, Limits, Models, Program, Schema, SemanticsKind, ValidationMode};

#[derive(Parser)]
#[command(name = "recshacl", version, about = "Validate recursive SHACL schemas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the schema's targets; exits 0 on pass, 1 on fail.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: SemanticsKind,
        #[arg(long)]
        mode: ValidationMode,
        #[arg(long)]
        json: bool,
    },
    /// Print the models of a semantics.
    Models {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        semantics: SemanticsKind,
        #[arg(long)]
        json: bool,
    },
    /// Print the schema in shape normal form.
    Snf {
        #[arg(long)]
        schema: PathBuf,
    },
    /// Compare fixpoint-stable and level-stable models.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    schema: PathBuf,
    /// Cap on the number of candidates any enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    max_candidates: u128,
}

impl Input {
    fn load(&self) -> Result<(Graph, Schema), String> {
        let graph = parse_graph_named(&read(&self.graph)?, &self.graph.display().to_string())
            .map_err(|e| e.to_string())?;
        Ok((graph, load_schema(&self.schema)?))
    }

    fn limits(&self) -> Limits {
        Limits {
            max_candidates: self.max_candidates,
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_schema(path: &Path) -> Result<Schema, String> {
    let opts = ParseOptions {
        file: Some(path.display().to_string()),
        allow_reserved: false,
    };
    parse_schema_with(&read(path)?, &opts).map_err(|e| e.to_string())
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
enum ModelsJson {
    Partial {
        format: u32,
        semantics: SemanticsKind,
        model: PartialJson,
    },
    Models {
        format: u32,
        semantics: SemanticsKind,
        models: Vec<AssignmentJson>,
    },
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(String, bool), String> {
    match cli.command {
        Command::Validate {
            input,
            semantics,
            mode,
            json: as_json,
        } => {
            let (graph, schema) = input.load()?;
            let prog = Program::new(&schema, &graph).map_err(|e| e.to_string())?;
            let report =
                validate(&prog, semantics, mode, input.limits()).map_err(|e| e.to_string())?;
            let out = if as_json { json(&report) } else { report.to_string() };
            Ok((out, report.pass))
        }
        Command::Models {
            input,
            semantics,
            json: as_json,
        } => {
            let (graph, schema) = input.load()?;
            let prog = Program::new(&schema, &graph).map_err(|e| e.to_string())?;
            let found = models(&prog, semantics, input.limits()).map_err(|e| e.to_string())?;
            let out = match (found, as_json) {
                (Models::Partial(p), true) => json(&ModelsJson::Partial {
                    format: REPORT_FORMAT,
                    semantics,
                    model: PartialJson::new(&p, &graph),
                }),
                (Models::Set(ms), true) => json(&ModelsJson::Models {
                    format: REPORT_FORMAT,
                    semantics,
                    models: ms.iter().map(|m| AssignmentJson::new(m, &graph)).collect(),
                }),
                (Models::Partial(p), false) => {
                    format!("{semantics} model:\n{}", PartialJson::new(&p, &graph))
                }
                (Models::Set(ms), false) => {
                    let mut out = format!("{semantics} models: {}\n", ms.len());
                    for (i, m) in ms.iter().enumerate() {
                        let _ = write!(out, "model {}:\n{}", i + 1, AssignmentJson::new(m, &graph));
                    }
                    out
                }
            };
            Ok((out, true))
        }
        Command::Snf { schema } => {
            let schema = load_schema(&schema)?;
            let snf = to_snf(&schema).map_err(|e| e.to_string())?;
            Ok((print_schema(&snf.schema), true))
        }
        Command::Compare {
            input,
            json: as_json,
        } => {
            let (graph, schema) = input.load()?;
            let prog = Program::new(&schema, &graph).map_err(|e| e.to_string())?;
            let cmp = compare_semantics(&prog, input.limits()).map_err(|e| e.to_string())?;
            Ok((if as_json { json(&cmp) } else { cmp.to_string() }, true))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
