//! Command-line front end for the Hopf ring engine.
//!
//! Subcommands: `cycle` (run every delooping step of a spectrum and check
//! the dimension identities), `deloop` (one step), `tor` (list Tor
//! generators of a presentation), `poincare` (graded dimensions),
//! `verify` (relation / axiom / structure suites), and `relations-table`
//! (the builtin relation checks).
//!
//! Exit codes: 0 on success, 1 on a verification failure, 2 on a usage or
//! parse error. The env var `HOPFRING_MAXDEG` overrides the default
//! truncation degree (40) when `--max-degree` is not given.

mod render;
mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use hopfring::{
    deloop, parse_presentation, registry_lookup, run_cycle, tor, tor_poincare,
    AlgebraPresentation, RelationTable, Spectrum,
};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use suites::CheckLine;

const DEFAULT_MAXDEG: u32 = 40;
const DEFAULT_SEED: u64 = 17;
const MAX_BOUND: u32 = 64;

#[derive(Parser)]
#[command(
    name = "hopfring",
    version,
    about = "Mod-2 Hopf ring calculator for the KO and KU delooping cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    HopfAxioms,
    Extensions,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run every delooping step of a spectrum and check the dimension identities.
    Cycle {
        /// Spectrum to cycle: `ko` (8 steps) or `ku` (2 steps).
        #[arg(long)]
        spectrum: Spectrum,
        /// Truncation degree (default: HOPFRING_MAXDEG or 40).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a single delooping step.
    Deloop {
        /// Source space as `spectrum:index`, e.g. `ko:3`.
        #[arg(long)]
        space: String,
        /// Truncation degree (default: HOPFRING_MAXDEG or 40).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the Tor generators of a presentation and their Poincaré series.
    Tor {
        /// Registry space as `spectrum:index`, e.g. `ko:3` (indices reduce by periodicity).
        #[arg(long, conflicts_with = "gens")]
        preset: Option<String>,
        /// Inline presentation, e.g. `Z; P(deg=1*i+0, i>=1)`.
        #[arg(long)]
        gens: Option<String>,
        /// Truncation degree (default: HOPFRING_MAXDEG or 40).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the graded dimensions of a presentation.
    Poincare {
        /// Registry space as `spectrum:index`, e.g. `ku:0`.
        #[arg(long, conflicts_with = "gens")]
        preset: Option<String>,
        /// Inline presentation, e.g. `1; E(deg=4*i+3, i>=0)`.
        #[arg(long)]
        gens: Option<String>,
        /// Truncation degree (default: HOPFRING_MAXDEG or 40).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print one pass/fail line per check.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: Suite,
        /// Seed for the randomized-element suites.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Index bound for the structure checks (at most 64).
        #[arg(long, default_value_t = 32)]
        bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the builtin relation checks and how each one is verified.
    RelationsTable {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Err` means a usage error (exit 2); `Ok` carries the final exit code.
fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Cycle { spectrum, max_degree, format, out } => {
            cmd_cycle(spectrum, max_degree, format, out.as_deref())
        }
        Command::Deloop { space, max_degree, format, out } => {
            cmd_deloop(&space, max_degree, format, out.as_deref())
        }
        Command::Tor { preset, gens, max_degree, format, out } => {
            cmd_tor(preset, gens, max_degree, format, out.as_deref())
        }
        Command::Poincare { preset, gens, max_degree, format, out } => {
            cmd_poincare(preset, gens, max_degree, format, out.as_deref())
        }
        Command::Verify { suite, seed, bound, format, out } => {
            cmd_verify(suite, seed, bound, format, out.as_deref())
        }
        Command::RelationsTable { format, out } => cmd_relations_table(format, out.as_deref()),
    }
}

/// The `--max-degree` flag, else `HOPFRING_MAXDEG`, else 40.
fn resolve_maxdeg(flag: Option<u32>) -> Result<u32, String> {
    if let Some(value) = flag {
        return Ok(value);
    }
    match std::env::var("HOPFRING_MAXDEG") {
        Ok(raw) => raw
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("HOPFRING_MAXDEG must be a nonnegative integer, got `{raw}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAXDEG),
        Err(e) => Err(format!("HOPFRING_MAXDEG: {e}")),
    }
}

/// Parse `ko:3` / `ku:-1` into a spectrum and an integer index.
fn parse_space(text: &str) -> Result<(Spectrum, i64), String> {
    let (name, idx) = text
        .split_once(':')
        .ok_or_else(|| format!("space must look like `ko:3`, got `{text}`"))?;
    let spectrum: Spectrum = name.parse()?;
    let n: i64 = idx
        .parse()
        .map_err(|_| format!("space index must be an integer, got `{idx}`"))?;
    Ok((spectrum, n))
}

/// Write `rendered` to `out` if given, else to stdout.
fn emit(rendered: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn to_json_document(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize to JSON");
    s.push('\n');
    s
}

fn exit_for(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_cycle(
    spectrum: Spectrum,
    max_degree: Option<u32>,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    let maxdeg = resolve_maxdeg(max_degree)?;
    let report = match run_cycle(spectrum, maxdeg) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let rendered = match format {
        Format::Json => to_json_document(&serde_json::to_value(&report).expect("report serializes")),
        Format::Text => render::cycle_text(&report),
    };
    emit(&rendered, out)?;
    Ok(exit_for(report.all_match() && report.closure))
}

fn cmd_deloop(
    space: &str,
    max_degree: Option<u32>,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    let (spectrum, n) = parse_space(space)?;
    let maxdeg = resolve_maxdeg(max_degree)?;
    let base = n.rem_euclid(spectrum.period());
    let report = match deloop(spectrum, base, maxdeg) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let rendered = match format {
        Format::Json => to_json_document(&serde_json::to_value(&report).expect("report serializes")),
        Format::Text => {
            let mut text = String::new();
            if base != n {
                let _ = writeln!(
                    text,
                    "note: {spectrum}_{n} is {spectrum}_{base} up to periodicity; reporting the base step"
                );
            }
            text.push_str(&render::step_block(&report));
            text.push('\n');
            text.push_str(&render::generator_table(&report.tor_generators));
            text
        }
    };
    emit(&rendered, out)?;
    Ok(exit_for(report.dimension_match))
}

/// Resolve `--preset`/`--gens` into a presentation, an optional relabel
/// note, and a JSON descriptor of the input.
fn resolve_presentation(
    preset: Option<String>,
    gens: Option<String>,
) -> Result<(AlgebraPresentation, Option<String>, Value), String> {
    match (preset, gens) {
        (Some(p), None) => {
            let (spectrum, n) = parse_space(&p)?;
            let base = n.rem_euclid(spectrum.period());
            let pres = registry_lookup(spectrum, n);
            let note = (base != n).then(|| {
                format!(
                    "{spectrum}_{n} reduced mod {} to the {spectrum}_{base} shape; \
generator names carry the periodicity unit",
                    spectrum.period()
                )
            });
            let descriptor = json!({ "preset": p, "spectrum": spectrum, "n": n, "base": base });
            Ok((pres, note, descriptor))
        }
        (None, Some(g)) => {
            let pres = parse_presentation(&g).map_err(|e| e.to_string())?;
            Ok((pres, None, json!({ "gens": g })))
        }
        _ => Err("exactly one of --preset or --gens is required".to_string()),
    }
}

fn cmd_tor(
    preset: Option<String>,
    gens: Option<String>,
    max_degree: Option<u32>,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    let maxdeg = resolve_maxdeg(max_degree)?;
    let (pres, note, descriptor) = resolve_presentation(preset, gens)?;
    let generators = tor(&pres, maxdeg);
    let series = tor_poincare(&generators, maxdeg);
    let rendered = match format {
        Format::Json => {
            let doc = json!({
                "input": descriptor,
                "label": pres.label(),
                "display": pres.display(),
                "note": note,
                "maxdeg": maxdeg,
                "generators": generators,
                "poincare": series.coeffs(),
            });
            to_json_document(&doc)
        }
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(
                text,
                "Tor generators for {} (total degree <= {maxdeg})",
                pres.label()
            );
            if let Some(note) = &note {
                let _ = writeln!(text, "note: {note}");
            }
            let _ = writeln!(text, "  input: {}", pres.display());
            text.push_str(&render::generator_table(&generators));
            let _ = writeln!(
                text,
                "  Poincare series (total degree): {}",
                render::series_polynomial(&series)
            );
            text
        }
    };
    emit(&rendered, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_poincare(
    preset: Option<String>,
    gens: Option<String>,
    max_degree: Option<u32>,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    let maxdeg = resolve_maxdeg(max_degree)?;
    let (pres, note, descriptor) = resolve_presentation(preset, gens)?;
    let series = pres.poincare(maxdeg);
    let rendered = match format {
        Format::Json => {
            let doc = json!({
                "input": descriptor,
                "label": pres.label(),
                "display": pres.display(),
                "note": note,
                "maxdeg": maxdeg,
                "coefficients": series.coeffs(),
            });
            to_json_document(&doc)
        }
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(text, "Poincare series for {} (degree <= {maxdeg})", pres.label());
            if let Some(note) = &note {
                let _ = writeln!(text, "note: {note}");
            }
            let _ = writeln!(text, "  input: {}", pres.display());
            let _ = writeln!(text, "  {}", render::series_polynomial(&series));
            text
        }
    };
    emit(&rendered, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: Suite,
    seed: u64,
    bound: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    if bound > MAX_BOUND {
        return Err(format!("--bound must be at most {MAX_BOUND}, got {bound}"));
    }
    let mut sections: Vec<(&'static str, Vec<CheckLine>)> = Vec::new();
    if matches!(suite, Suite::Relations | Suite::All) {
        sections.push(("relations", suites::relations_suite()));
    }
    if matches!(suite, Suite::HopfAxioms | Suite::All) {
        sections.push(("hopf-axioms", suites::hopf_axioms_suite(seed)));
    }
    if matches!(suite, Suite::Extensions | Suite::All) {
        sections.push(("extensions", suites::extensions_suite(bound)));
    }
    let all_hold = sections.iter().all(|(_, lines)| lines.iter().all(|l| l.holds));
    let rendered = match format {
        Format::Json => {
            let checks: Vec<Value> = sections
                .iter()
                .flat_map(|(section, lines)| {
                    lines.iter().map(move |line| {
                        json!({
                            "section": section,
                            "name": line.name,
                            "holds": line.holds,
                            "instances": line.instances,
                            "detail": line.detail,
                        })
                    })
                })
                .collect();
            let doc = json!({
                "suite": suite_name(suite),
                "seed": seed,
                "bound": bound,
                "checks": checks,
                "all_hold": all_hold,
            });
            to_json_document(&doc)
        }
        Format::Text => {
            let mut text = String::new();
            for (section, lines) in &sections {
                let _ = writeln!(text, "suite {section}:");
                for line in lines {
                    let _ = writeln!(
                        text,
                        "  {:<26} {:<4} {:>6} instances  {}",
                        line.name,
                        if line.holds { "OK" } else { "FAIL" },
                        line.instances,
                        line.detail
                    );
                }
            }
            let failed: u64 = sections
                .iter()
                .flat_map(|(_, lines)| lines.iter())
                .filter(|l| !l.holds)
                .count() as u64;
            if failed == 0 {
                text.push_str("all checks passed\n");
            } else {
                let _ = writeln!(text, "{failed} check(s) failed");
            }
            text
        }
    };
    emit(&rendered, out)?;
    Ok(exit_for(all_hold))
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Relations => "relations",
        Suite::HopfAxioms => "hopf-axioms",
        Suite::Extensions => "extensions",
        Suite::All => "all",
    }
}

fn cmd_relations_table(format: Format, out: Option<&Path>) -> Result<ExitCode, String> {
    let table = RelationTable::build();
    let rendered = match format {
        Format::Json => {
            let doc = json!({
                "checks": table.checks,
                "all_hold": table.all_hold(),
            });
            to_json_document(&doc)
        }
        Format::Text => render::relation_table_text(&table),
    };
    emit(&rendered, out)?;
    Ok(exit_for(table.all_hold()))
}
