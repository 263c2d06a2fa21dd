//! Text and JSON rendering of results.

use std::fmt::Write;

use serde::Serialize;

use crate::homology::{BettiTable, DualityReport, Kind, SCHEMA_VERSION};
use crate::module::ModuleElement;
use crate::poly::Ring;
use crate::structure::{Derivation, PoissonStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Rows are homological degrees, columns weights. An empty table still
/// gets its header.
pub fn betti_text(t: &BettiTable) -> String {
    let mut ps: Vec<usize> = t.entries.iter().map(|e| e.p).collect();
    ps.sort_unstable();
    ps.dedup();
    let mut ds: Vec<i64> = t.entries.iter().map(|e| e.d).collect();
    ds.sort_unstable();
    ds.dedup();
    let name = match t.kind {
        Kind::Homology => "PH_p",
        Kind::Cohomology => "PH^p",
    };
    let corner = match t.mode {
        crate::homology::Mode::ExactGraded => "p\\d",
        crate::homology::Mode::FilteredApproximate => "p\\<=d",
    };
    let mut rows = vec![std::iter::once(corner.to_string()).chain(ds.iter().map(|d| d.to_string())).collect::<Vec<_>>()];
    for p in &ps {
        let mut r = vec![p.to_string()];
        for d in &ds {
            r.push(t.get(*p, *d).map_or("-".to_string(), |v| v.to_string()));
        }
        rows.push(r);
    }
    let mut out = format!("{name} ({}, truncation {})\n", t.mode, t.truncation);
    out.push_str(&align(&rows));
    out
}

pub fn duality_text(r: &DualityReport) -> String {
    let mut rows = vec![vec![
        "p".to_string(),
        "d".to_string(),
        "PH^p(M)_d".to_string(),
        format!("PH_(n-p)(M_t)_(d+{})", r.total_weight),
        "".to_string(),
    ]];
    for e in &r.entries {
        rows.push(vec![
            e.p.to_string(),
            e.d.to_string(),
            e.cohomology.to_string(),
            e.homology.to_string(),
            if e.cohomology == e.homology { "ok" } else { "MISMATCH" }.to_string(),
        ]);
    }
    let mut out = align(&rows);
    for m in &r.mismatches {
        let _ = writeln!(out, "\nmismatch at p={} d={}", m.entry.p, m.entry.d);
        for s in &m.slices {
            let _ = writeln!(out, "  {:?} p={} d={}: {} -> {}", s.kind, s.p, s.d, s.domain.len(), s.codomain.len());
            let _ = writeln!(out, "    domain: {}", s.domain.join(", "));
            let _ = writeln!(out, "    codomain: {}", s.codomain.join(", "));
            for row in &s.rows {
                let _ = writeln!(out, "    [{}]", row.join(" "));
            }
        }
    }
    out
}

/// `φ(x)=0, φ(y)=0, φ(z)=-1; NOT unimodular`.
pub fn modular_text(s: &PoissonStructure, phi: &Derivation) -> String {
    let ring = s.ring();
    let parts: Vec<String> = (0..ring.dim())
        .map(|i| format!("φ({})={}", ring.names()[i], ring.show(phi.value(i))))
        .collect();
    let verdict = if phi.is_zero() { "unimodular" } else { "NOT unimodular" };
    format!("{}; {verdict}\n", parts.join(", "))
}

#[derive(Serialize)]
struct ModularValue {
    var: String,
    value: String,
}

#[derive(Serialize)]
struct ModularJson {
    schema_version: u32,
    modular: Vec<ModularValue>,
    unimodular: bool,
}

pub fn modular_json(s: &PoissonStructure, phi: &Derivation) -> String {
    let ring = s.ring();
    let j = ModularJson {
        schema_version: SCHEMA_VERSION,
        modular: (0..ring.dim())
            .map(|i| ModularValue {
                var: ring.names()[i].clone(),
                value: ring.show(phi.value(i)),
            })
            .collect(),
        unimodular: phi.is_zero(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn element_text(ring: &Ring, m: &ModuleElement) -> String {
    if m.rank() == 1 {
        return ring.show(m.coord(0));
    }
    let parts: Vec<String> = m.coords().iter().map(|p| ring.show(p)).collect();
    format!("({})", parts.join(", "))
}

#[derive(Serialize)]
struct KernelJson<'a> {
    schema_version: u32,
    kind: &'a str,
    bound: i64,
    basis: Vec<Vec<String>>,
}

pub fn kernel_json(ring: &Ring, kind: &str, bound: i64, basis: &[ModuleElement]) -> String {
    let j = KernelJson {
        schema_version: SCHEMA_VERSION,
        kind,
        bound,
        basis: basis
            .iter()
            .map(|m| m.coords().iter().map(|p| ring.show(p)).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn kernel_text(ring: &Ring, title: &str, bound: i64, basis: &[ModuleElement]) -> String {
    let mut out = format!("{title} through degree {bound}: dimension {}\n", basis.len());
    for m in basis {
        let _ = writeln!(out, "  {}", element_text(ring, m));
    }
    out
}
