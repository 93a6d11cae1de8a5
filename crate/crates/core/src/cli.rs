//! The `bp-rules` command line: `extract`, `coverage` and `validate`.
//!
//! Exit codes: 0 success, 1 validation errors, 2 unreadable or unparsable
//! input, 3 usage errors. Results go to stdout, diagnostics to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::coverage::CoverageReport;
use crate::io::{self as model_io, FormatTag, Parsed};
use crate::ir::{normalize_petri, validate, Notation, ProcessGraph};
use crate::patterns::{extract_all, Pattern, PatternSet};
use crate::rules::RuleSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (rule schema 1, graph schema 1)"
);

#[derive(Debug, Parser)]
#[command(name = "bp-rules", version = VERSION, about = "Extract business rules from process models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract the business rules embedded in a model.
    Extract {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
        /// Comma-separated pattern numbers.
        #[arg(long, default_value = "1,2,3,4")]
        patterns: PatternSet,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Print which rule patterns each notation can express.
    Coverage {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Check a model's structure.
    Validate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Pnml,
    Epml,
    Native,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Extract {
            input,
            format,
            patterns,
            output,
        } => extract(&input, format, &patterns, output, out, err),
        Command::Coverage {
            input,
            format,
            output,
        } => coverage(input.as_deref(), format, output, out, err),
        Command::Validate { input, format } => validate_cmd(&input, format, out, err),
    };
    match result {
        Ok(code) => code,
        Err(io_error) => {
            let _ = writeln!(err, "error: cannot write output: {io_error}");
            EXIT_PARSE
        }
    }
}

type CmdResult = std::io::Result<i32>;

fn load(
    path: &Path,
    format: InputFormat,
    err: &mut dyn Write,
) -> std::io::Result<Result<Parsed, i32>> {
    let bytes = match std::fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            return Ok(Err(EXIT_PARSE));
        }
    };
    let parsed = match format {
        InputFormat::Auto => model_io::parse_auto(&bytes),
        InputFormat::Pnml => model_io::parse(&bytes, FormatTag::Pnml),
        InputFormat::Epml => model_io::parse(&bytes, FormatTag::Epml),
        InputFormat::Native => model_io::parse(&bytes, FormatTag::NativeJson),
    };
    match parsed {
        Ok(parsed) => {
            for warning in &parsed.warnings {
                writeln!(err, "warning: {}: {warning}", path.display())?;
            }
            Ok(Ok(parsed))
        }
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            Ok(Err(EXIT_PARSE))
        }
    }
}

/// Parse, validate, normalize and extract; `Err` carries the exit code.
fn analyze(
    path: &Path,
    format: InputFormat,
    patterns: &PatternSet,
    err: &mut dyn Write,
) -> std::io::Result<Result<RuleSet, i32>> {
    let graph = match load(path, format, err)? {
        Ok(parsed) => parsed.graph,
        Err(code) => return Ok(Err(code)),
    };
    let report = validate(&graph);
    if !report.is_ok() {
        for issue in &report.errors {
            writeln!(err, "error {issue}")?;
        }
        writeln!(
            err,
            "error: {}: {} validation error(s)",
            path.display(),
            report.errors.len()
        )?;
        return Ok(Err(EXIT_INVALID));
    }
    let graph = normalized(graph);
    match extract_all(&graph, patterns) {
        Ok(rules) => Ok(Ok(rules)),
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            Ok(Err(EXIT_INVALID))
        }
    }
}

fn normalized(graph: ProcessGraph) -> ProcessGraph {
    if graph.notation == Notation::PetriNet {
        normalize_petri(&graph).expect("notation checked")
    } else {
        graph
    }
}

fn extract(
    path: &Path,
    format: InputFormat,
    patterns: &PatternSet,
    output: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let rules = match analyze(path, format, patterns, err)? {
        Ok(rules) => rules,
        Err(code) => return Ok(code),
    };
    match output {
        OutputFormat::Json => match rules.to_json() {
            Ok(bytes) => {
                out.write_all(&bytes)?;
                writeln!(out)?;
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_INVALID);
            }
        },
        OutputFormat::Text => out.write_all(render_rules_text(&rules, patterns).as_bytes())?,
    }
    Ok(EXIT_OK)
}

/// One rendered rule per line, grouped by pattern, provenance in brackets.
pub fn render_rules_text(rules: &RuleSet, patterns: &PatternSet) -> String {
    let mut text = format!(
        "# {} ({}): {} rule(s)\n",
        rules.model_name,
        rules.notation,
        rules.len()
    );
    for pattern in patterns.iter() {
        if !pattern.expressible_in(rules.notation) {
            text.push_str(&format!(
                "## pattern {pattern}: {} (not expressible in {} notation)\n",
                pattern.template(),
                rules.notation
            ));
            continue;
        }
        text.push_str(&format!(
            "## pattern {pattern}: {} ({})\n",
            pattern.template(),
            rules.count_pattern(pattern.number())
        ));
        for rule in rules
            .rules()
            .iter()
            .filter(|r| r.source_pattern == pattern.number())
        {
            let provenance: Vec<&str> = rule.provenance.iter().map(|id| id.as_str()).collect();
            let rendered = rule
                .render_text()
                .unwrap_or_else(|e| format!("(unrenderable: {e})"));
            text.push_str(&format!("{rendered} [{}]\n", provenance.join(", ")));
        }
    }
    if !rules.notes().is_empty() {
        text.push_str("## notes\n");
        for note in rules.notes() {
            text.push_str(&format!("- {note}\n"));
        }
    }
    text
}

fn coverage(
    path: Option<&Path>,
    format: InputFormat,
    output: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let report = match path {
        None => CoverageReport::matrix(),
        Some(path) => {
            let all: PatternSet = Pattern::ALL.into_iter().collect();
            match analyze(path, format, &all, err)? {
                Ok(rules) => CoverageReport::with_model(&rules),
                Err(code) => return Ok(code),
            }
        }
    };
    match output {
        OutputFormat::Text => out.write_all(report.render_text().as_bytes())?,
        OutputFormat::Json => {
            out.write_all(&report.to_json())?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

fn validate_cmd(
    path: &Path,
    format: InputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let graph = match load(path, format, err)? {
        Ok(parsed) => parsed.graph,
        Err(code) => return Ok(code),
    };
    let report = validate(&graph);
    for issue in &report.errors {
        writeln!(out, "error {issue}")?;
    }
    for issue in &report.warnings {
        writeln!(out, "warning {issue}")?;
    }
    writeln!(
        out,
        "{} errors, {} warnings",
        report.errors.len(),
        report.warnings.len()
    )?;
    Ok(if report.is_ok() {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}
