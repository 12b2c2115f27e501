//! Command-line front end.
//!
//! Exit codes: 0 success, 1 at least one error diagnostic, 2 usage or I/O
//! error. Artifacts go to the output file or standard output, diagnostics
//! to the error stream.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acme::{emit_text, parse, validate, ArchDescription};
use crate::diagnostic::{has_errors, Diagnostic};
use crate::flow::build_flow_relation;
use crate::sadg::{build_sadg, emit_dot, emit_json, Vertex};
use crate::slicer::{project_slice, resolve_criterion, slice_graph, SliceDirection};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIAGNOSTICS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Parse,
    Validate,
    Graph,
    Slice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum DirectionArg {
    #[default]
    Backward,
    Forward,
}

impl From<DirectionArg> for SliceDirection {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Backward => SliceDirection::Backward,
            DirectionArg::Forward => SliceDirection::Forward,
        }
    }
}

/// One invocation, independent of how it was spelled on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    /// `None` picks the command's default: text, except dot for `graph`.
    pub format: Option<Format>,
    pub element: Option<String>,
    /// Comma-separated port or role names.
    pub ifaces: Option<String>,
    pub direction: SliceDirection,
}

#[derive(Debug, Parser)]
#[command(name = "archslice", version, about = "Dependence analysis and slicing of ACME architectural descriptions")]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Parse a description and print it in canonical form.
    Parse(CommonArgs),
    /// Check attachments and flow properties.
    Validate(CommonArgs),
    /// Print the dependence graph as DOT or JSON.
    Graph(CommonArgs),
    /// Slice a description with respect to a component's ports or a
    /// connector's roles.
    Slice(SliceArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// `.acme` input file.
    input: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(short, long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct SliceArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Component or connector of the criterion.
    #[arg(long)]
    element: String,
    /// Comma-separated ports (or roles) of the criterion element.
    #[arg(long)]
    ifaces: String,
    #[arg(long, value_enum, default_value_t)]
    direction: DirectionArg,
}

impl From<Cli> for CliConfig {
    fn from(cli: Cli) -> Self {
        let (command, common, slice) = match cli.command {
            CliCommand::Parse(c) => (Command::Parse, c, None),
            CliCommand::Validate(c) => (Command::Validate, c, None),
            CliCommand::Graph(c) => (Command::Graph, c, None),
            CliCommand::Slice(s) => (
                Command::Slice,
                s.common,
                Some((s.element, s.ifaces, s.direction)),
            ),
        };
        let (element, ifaces, direction) = match slice {
            Some((e, i, d)) => (Some(e), Some(i), d.into()),
            None => (None, None, SliceDirection::Backward),
        };
        CliConfig {
            command,
            input: common.input,
            output: common.output,
            format: common.format,
            element,
            ifaces,
            direction,
        }
    }
}

enum Failure {
    Usage(String),
    Diagnostics,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Session<'a> {
    config: &'a CliConfig,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs one command and returns its exit code.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut session = Session { config, out, err };
    match session.execute() {
        Ok(()) => EXIT_OK,
        Err(Failure::Diagnostics) => EXIT_DIAGNOSTICS,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(session.err, "archslice: {msg}");
            EXIT_USAGE
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SliceBundle<'a> {
    criterion: CriterionJson<'a>,
    slice_vertices: Vec<&'a Vertex>,
    description: String,
}

#[derive(Serialize)]
struct CriterionJson<'a> {
    element: &'a str,
    ifaces: Vec<&'a str>,
    direction: &'static str,
}

impl Session<'_> {
    fn execute(&mut self) -> Result<(), Failure> {
        let config = self.config;
        let format = config.format.unwrap_or(match config.command {
            Command::Graph => Format::Dot,
            _ => Format::Text,
        });
        let allowed: &[Format] = match config.command {
            Command::Parse | Command::Validate => &[Format::Text],
            Command::Graph => &[Format::Dot, Format::Json],
            Command::Slice => &[Format::Text, Format::Dot, Format::Json],
        };
        if !allowed.contains(&format) {
            return Err(Failure::Usage(format!(
                "format {:?} is not available for {:?}",
                format, config.command
            )));
        }

        let source = fs::read_to_string(&config.input)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", config.input.display())))?;
        let desc = parse(&source).map_err(|diags| self.report(&diags))?;

        let artifact = match config.command {
            Command::Parse => emit_text(&desc),
            Command::Validate => {
                let mut diags = validate(&desc);
                if !has_errors(&diags) {
                    match build_flow_relation(&desc) {
                        Ok(rel) => diags.extend(rel.warnings),
                        Err(errs) => diags.extend(errs),
                    }
                }
                self.report_all(&diags)?;
                return Ok(());
            }
            Command::Graph => {
                let g = build_sadg(&desc).map_err(|d| self.report(&d))?;
                self.report_all(g.warnings())?;
                match format {
                    Format::Json => emit_json(&g) + "\n",
                    _ => emit_dot(&g, None),
                }
            }
            Command::Slice => self.slice(&desc, format)?,
        };
        self.write_artifact(&artifact)
    }

    fn slice(&mut self, desc: &ArchDescription, format: Format) -> Result<String, Failure> {
        let config = self.config;
        let (Some(element), Some(ifaces)) = (&config.element, &config.ifaces) else {
            return Err(Failure::Usage(
                "slice needs --element and --ifaces".into(),
            ));
        };
        let names: Vec<&str> = ifaces
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let criterion =
            resolve_criterion(desc, element, &names).map_err(|d| self.report(&[d]))?;
        let g = build_sadg(desc).map_err(|d| self.report(&d))?;
        self.report_all(g.warnings())?;
        let gs = slice_graph(&g, &criterion, config.direction);
        let projected = project_slice(desc, &gs);
        Ok(match format {
            Format::Text => emit_text(&projected),
            Format::Dot => emit_dot(&g, Some(&gs.vertices)),
            Format::Json => {
                let bundle = SliceBundle {
                    criterion: CriterionJson {
                        element: criterion.element().as_str(),
                        ifaces: criterion.ifaces().iter().map(|i| i.as_str()).collect(),
                        direction: config.direction.as_str(),
                    },
                    slice_vertices: gs.vertices.iter().collect(),
                    description: emit_text(&projected),
                };
                serde_json::to_string_pretty(&bundle).expect("bundle serializes") + "\n"
            }
        })
    }

    fn write_artifact(&mut self, text: &str) -> Result<(), Failure> {
        match &self.config.output {
            Some(path) => write_file(path, text),
            None => {
                self.out.write_all(text.as_bytes())?;
                self.out.flush()?;
                Ok(())
            }
        }
    }

    /// Prints diagnostics; always yields the diagnostics failure.
    fn report(&mut self, diags: &[Diagnostic]) -> Failure {
        match self.report_all(diags) {
            Err(f) => f,
            Ok(()) => Failure::Diagnostics,
        }
    }

    /// Prints diagnostics and fails if any of them is an error.
    fn report_all(&mut self, diags: &[Diagnostic]) -> Result<(), Failure> {
        let input = self.config.input.display();
        for d in diags {
            writeln!(self.err, "{input}: {d}")?;
        }
        if has_errors(diags) {
            Err(Failure::Diagnostics)
        } else {
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
