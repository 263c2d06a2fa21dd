//! Structure files.
//!
//! ```toml
//! [ring]
//! vars = ["x", "y", "z"]
//! weights = [1, 1, 1]          # optional, default all 1
//!
//! [brackets]                   # {a,b}; unlisted pairs are 0
//! "y,z" = "y"
//! "z,x" = "-1"
//!
//! # instead of [brackets]: {f,g} = u * J(f, g, f_3, .., f_n)
//! # [jacobian]
//! # potentials = ["x*y*z"]
//! # multiplier = "1"
//!
//! [module]                     # optional, default the regular module
//! kind = "matrix"              # "regular" | "matrix"
//! rank = 2
//! twist = "modular"            # "none" | "modular" | "derivation"
//! derivation = { z = "-1" }    # for twist = "derivation"; unlisted are 0
//! [module.action]              # {e_k, x}_M = sum_l action.x[k][l] e_l
//! x = [["0", "1"], ["0", "0"]]
//! ```

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::module::{ModuleError, PoissonModule};
use crate::poly::{Polynomial, Ring};
use crate::structure::{Derivation, PoissonStructure, StructureError};

type RawMatrix = Vec<Vec<Spanned<String>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    ring: RawRing,
    brackets: Option<BTreeMap<Spanned<String>, Spanned<String>>>,
    jacobian: Option<RawJacobian>,
    module: Option<RawModule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    vars: Spanned<Vec<Spanned<String>>>,
    weights: Option<Spanned<Vec<u32>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJacobian {
    potentials: Spanned<Vec<Spanned<String>>>,
    multiplier: Option<Spanned<String>>,
}

#[derive(Deserialize, Default, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
enum ModuleKind {
    #[default]
    Regular,
    Matrix,
}

#[derive(Deserialize, Default, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
enum TwistKind {
    #[default]
    None,
    Modular,
    Derivation,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    #[serde(default)]
    kind: ModuleKind,
    rank: Option<Spanned<usize>>,
    #[serde(default)]
    twist: TwistKind,
    derivation: Option<Spanned<BTreeMap<Spanned<String>, Spanned<String>>>>,
    action: Option<BTreeMap<Spanned<String>, Spanned<RawMatrix>>>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("Jacobi identity fails on ({}, {}, {}): cyclic sum is {residual}", .names[0], .names[1], .names[2])]
    Jacobi { names: [String; 3], residual: String },
    #[error("{0}")]
    Module(String),
}

impl LoadError {
    /// Process exit code: 2 for unreadable or malformed files, 3 for a
    /// Jacobi failure, 4 for a module that is not a Poisson module.
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Io { .. } | LoadError::Syntax { .. } => 2,
            LoadError::Jacobi { .. } => 3,
            LoadError::Module(_) => 4,
        }
    }
}

/// A validated structure together with the module the file asks for.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub structure: Arc<PoissonStructure>,
    pub module: PoissonModule,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, span: Range<usize>, message: impl Into<String>) -> LoadError {
        let (line, column) = self.position(span.start);
        LoadError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Parses a quoted polynomial, reporting errors inside the string.
    fn poly(&self, ring: &Ring, s: &Spanned<String>) -> Result<Polynomial, LoadError> {
        ring.parse(s.get_ref()).map_err(|e| {
            let inner: usize = s.get_ref().chars().take(e.position).map(char::len_utf8).sum();
            let start = s.span().start;
            let quoted = self.text.get(start..start + 1).is_some_and(|c| c == "\"" || c == "'");
            let at = start + quoted as usize + inner;
            self.error(at..at, format!("in polynomial {:?}: {}", s.get_ref(), e.kind))
        })
    }
}

fn var_index(ring: &Ring, name: &str) -> Option<usize> {
    ring.names().iter().position(|n| n == name)
}

pub fn load_path(path: impl AsRef<Path>) -> Result<Loaded, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<Loaded, LoadError> {
    let src = Source { text };
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        src.error(span, e.message().trim_end().to_string())
    })?;

    let names: Vec<String> = raw.ring.vars.get_ref().iter().map(|s| s.get_ref().clone()).collect();
    let weights = match &raw.ring.weights {
        Some(w) => w.get_ref().clone(),
        None => vec![1; names.len()],
    };
    let ring = Ring::new(names, weights).map_err(|e| {
        let span = match &raw.ring.weights {
            Some(w) if w.get_ref().len() != raw.ring.vars.get_ref().len() || w.get_ref().contains(&0) => w.span(),
            _ => raw.ring.vars.span(),
        };
        src.error(span, e.to_string())
    })?;
    let n = ring.dim();
    if n == 0 {
        return Err(src.error(raw.ring.vars.span(), "at least one variable is required"));
    }

    let structure = match (&raw.brackets, &raw.jacobian) {
        (Some(b), Some(_)) if !b.is_empty() => {
            let span = b.keys().next().unwrap().span();
            return Err(src.error(span, "give either [brackets] or [jacobian], not both"));
        }
        (_, Some(jac)) => {
            let pots = jac
                .potentials
                .get_ref()
                .iter()
                .map(|p| src.poly(&ring, p))
                .collect::<Result<Vec<_>, _>>()?;
            if pots.len() + 2 != n {
                return Err(src.error(
                    jac.potentials.span(),
                    format!("{n} variables need {} potentials, got {}", n.saturating_sub(2), pots.len()),
                ));
            }
            let u = match &jac.multiplier {
                Some(m) => src.poly(&ring, m)?,
                None => Polynomial::one(n),
            };
            PoissonStructure::gjps(ring.clone(), &pots, &u).map_err(|e| structure_error(&ring, e))?
        }
        (b, None) => {
            let mut entries: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
            let mut listed: Vec<_> = b.iter().flatten().collect();
            listed.sort_by_key(|(k, _)| k.span().start);
            for (key, value) in listed {
                let parts: Vec<&str> = key.get_ref().split(',').map(str::trim).collect();
                let [a, c] = parts[..] else {
                    return Err(src.error(key.span(), format!("bracket key {:?} must look like \"x,y\"", key.get_ref())));
                };
                let (Some(i), Some(j)) = (var_index(&ring, a), var_index(&ring, c)) else {
                    let bad = if var_index(&ring, a).is_none() { a } else { c };
                    return Err(src.error(key.span(), format!("unknown variable `{bad}` in bracket key")));
                };
                if i == j {
                    return Err(src.error(key.span(), "a bracket {a,a} is always 0 and cannot be set"));
                }
                let mut p = src.poly(&ring, value)?;
                let pair = if i < j { (i, j) } else { (j, i) };
                if i > j {
                    p = -&p;
                }
                if entries.insert(pair, p).is_some() {
                    return Err(src.error(
                        key.span(),
                        format!("bracket of {a} and {c} is given twice"),
                    ));
                }
            }
            PoissonStructure::from_upper(ring.clone(), entries).map_err(|e| structure_error(&ring, e))?
        }
    };
    let structure = Arc::new(structure);

    let module = match &raw.module {
        None => PoissonModule::regular(structure.clone()),
        Some(m) => build_module(&src, &ring, &structure, m)?,
    };
    Ok(Loaded { structure, module })
}

fn structure_error(ring: &Ring, e: StructureError) -> LoadError {
    match e {
        StructureError::Jacobi(f) => {
            let (i, j, k) = f.triple;
            let names = ring.names();
            LoadError::Jacobi {
                names: [names[i].clone(), names[j].clone(), names[k].clone()],
                residual: ring.show(&f.residual),
            }
        }
        other => LoadError::Syntax {
            line: 0,
            column: 0,
            message: other.to_string(),
        },
    }
}

fn build_module(
    src: &Source,
    ring: &Ring,
    structure: &Arc<PoissonStructure>,
    raw: &RawModule,
) -> Result<PoissonModule, LoadError> {
    let n = ring.dim();
    let base = match raw.kind {
        ModuleKind::Regular => {
            if let Some(a) = raw.action.as_ref().and_then(|a| a.keys().next()) {
                return Err(src.error(a.span(), "the regular module takes no action table; use kind = \"matrix\""));
            }
            PoissonModule::regular(structure.clone())
        }
        ModuleKind::Matrix => {
            let table = raw.action.clone().unwrap_or_default();
            let rank = match (&raw.rank, table.values().next()) {
                (Some(r), _) => *r.get_ref(),
                (None, Some(m)) => m.get_ref().len(),
                (None, None) => 1,
            };
            if rank == 0 {
                let span = raw.rank.as_ref().map_or(0..0, |r| r.span());
                return Err(src.error(span, "module rank must be positive"));
            }
            let mut action = vec![vec![vec![Polynomial::zero(n); rank]; rank]; n];
            for (var, mat) in &table {
                let Some(i) = var_index(ring, var.get_ref()) else {
                    return Err(src.error(var.span(), format!("unknown variable `{}` in module action", var.get_ref())));
                };
                let rows = mat.get_ref();
                if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                    return Err(src.error(mat.span(), format!("action of `{}` must be a {rank}x{rank} matrix", var.get_ref())));
                }
                for (k, row) in rows.iter().enumerate() {
                    for (l, entry) in row.iter().enumerate() {
                        action[i][k][l] = src.poly(ring, entry)?;
                    }
                }
            }
            PoissonModule::from_action(structure.clone(), action, "M").map_err(|e| module_error(ring, e))?
        }
    };
    match raw.twist {
        TwistKind::None => {
            if let Some(d) = &raw.derivation {
                return Err(src.error(d.span(), "derivation given but twist is not \"derivation\""));
            }
            Ok(base)
        }
        TwistKind::Modular => Ok(base.modular_twist()),
        TwistKind::Derivation => {
            let Some(table) = &raw.derivation else {
                return Err(src.error(0..0, "twist = \"derivation\" needs a derivation table"));
            };
            let mut values = vec![Polynomial::zero(n); n];
            for (var, v) in table.get_ref() {
                let Some(i) = var_index(ring, var.get_ref()) else {
                    return Err(src.error(var.span(), format!("unknown variable `{}` in derivation", var.get_ref())));
                };
                values[i] = src.poly(ring, v)?;
            }
            base.twist(&Derivation::new(values)).map_err(|e| module_error(ring, e))
        }
    }
}

fn module_error(ring: &Ring, e: ModuleError) -> LoadError {
    let names = ring.names();
    let msg = match &e {
        ModuleError::NotPoissonDerivation(f) => format!(
            "twisting derivation is not a Poisson derivation: fails on ({}, {}) with residual {}",
            names[f.pair.0],
            names[f.pair.1],
            ring.show(&f.residual)
        ),
        ModuleError::Axiom(f) => format!(
            "module is not a Lie module: fails on e{} with ({}, {}), residual [{}]",
            f.basis + 1,
            names[f.pair.0],
            names[f.pair.1],
            f.residual.coords().iter().map(|p| ring.show(p)).collect::<Vec<_>>().join(", ")
        ),
        ModuleError::Shape { .. } => e.to_string(),
    };
    LoadError::Module(msg)
}
