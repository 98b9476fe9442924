//! Text renderers for reports: delooping steps, generator tables, relation
//! tables, and Poincaré series.

use hopfring::{
    CollapseMode, CycleReport, DeloopReport, PoincareSeries, RelationTable, TorGenerator,
};
use std::fmt::Write as _;

/// A Poincaré series as a sparse polynomial in `t`, e.g. `1 + t^4 + 2*t^16`.
pub fn series_polynomial(series: &PoincareSeries) -> String {
    let mut parts = Vec::new();
    for (d, &c) in series.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let part = if d == 0 {
            format!("{c}")
        } else if c == 1 {
            format!("t^{d}")
        } else {
            format!("{c}*t^{d}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// An aligned `s / t / total / source` listing of Tor generators.
pub fn generator_table(gens: &[TorGenerator]) -> String {
    let mut out = String::new();
    out.push_str("  s     t     total  source\n");
    for g in gens {
        let _ = writeln!(
            out,
            "  {:<5} {:<5} {:<6} {}",
            g.filtration, g.internal, g.total, g.source
        );
    }
    let _ = writeln!(out, "  ({} generators)", gens.len());
    out
}

/// One-line description of why the spectral sequence collapses.
pub fn collapse_line(mode: &CollapseMode) -> String {
    match mode {
        CollapseMode::Filtration1 => "every generator lies in filtration 1".to_string(),
        CollapseMode::EvenTotalDegree => "every generator has even total degree".to_string(),
        CollapseMode::Assumed { citation } => format!("assumed ({citation})"),
    }
}

/// The block of lines describing a single delooping step.
pub fn step_block(report: &DeloopReport) -> String {
    let mut out = String::new();
    let spectrum = report.spectrum;
    let _ = writeln!(out, "step {n}: {spectrum}_{n} -> {spectrum}_{m}", n = report.n, m = report.n + 1);
    let _ = writeln!(out, "  input     {} = {}", report.input.label, report.input.display);
    let _ = writeln!(
        out,
        "  tor       {} generators with total degree <= {}",
        report.tor_generators.len(),
        report.maxdeg
    );
    let _ = writeln!(out, "  collapse  {}", collapse_line(&report.collapse_mode));
    let _ = writeln!(out, "  target    {} = {}", report.target.label, report.target.display);
    match (report.dimension_match, report.first_mismatch) {
        (true, _) => {
            let _ = writeln!(out, "  dims      match for every degree <= {}", report.maxdeg);
        }
        (false, Some(d)) => {
            let _ = writeln!(out, "  dims      MISMATCH at degree {d}");
        }
        (false, None) => {
            let _ = writeln!(out, "  dims      MISMATCH");
        }
    }
    out
}

/// The full cycle rendering: header, one block per step, closure verdict.
pub fn cycle_text(report: &CycleReport) -> String {
    let spectrum = report.spectrum;
    let period = spectrum.period();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Delooping cycle for {spectrum} ({period} steps, max degree {})",
        report.maxdeg
    );
    for step in &report.steps {
        out.push('\n');
        out.push_str(&step_block(step));
    }
    out.push('\n');
    if report.closure {
        let _ = writeln!(out, "closure: {spectrum}_{period} \u{2245} {spectrum}_0");
    } else {
        let _ = writeln!(out, "closure: {spectrum}_{period} differs from {spectrum}_0");
    }
    out
}

/// The relation-check table with one aligned row per check.
pub fn relation_table_text(table: &RelationTable) -> String {
    let mut out = String::new();
    out.push_str("Hopf ring relation checks\n\n");
    out.push_str("  id   mechanism     instances  holds  statement\n");
    for check in &table.checks {
        let _ = writeln!(
            out,
            "  {:<4} {:<13} {:<10} {:<6} {}",
            check.id,
            check.mechanism.to_string(),
            check.instances,
            if check.holds { "yes" } else { "NO" },
            check.statement
        );
        if !check.holds {
            let _ = writeln!(out, "       witness: {}", check.witness);
        }
    }
    out.push('\n');
    if table.all_hold() {
        out.push_str("all relation checks hold\n");
    } else {
        out.push_str("RELATION CHECK FAILURE\n");
    }
    out
}
