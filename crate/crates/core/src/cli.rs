//! The `poisson` command line.

use std::ffi::OsString;
use std::fmt::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complexes::complex_squared_check;
use crate::duality::verify_duality_square;
use crate::homology::{self, casimirs, duality_table_check, top_kernel, HomologyError, Mode};
use crate::input::{load_path, Loaded};
use crate::module::PoissonModule;
use crate::report::{self, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_JACOBI: i32 = 3;
pub const EXIT_AXIOM: i32 = 4;
pub const EXIT_MODE: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "poisson", version, about = "Poisson homology and cohomology of polynomial algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi identity, module axioms, and d∘d = 0 on small bases.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
    },
    /// Print the modular derivation and decide unimodularity.
    Modular { file: PathBuf },
    /// Recover w with {x,y} = w_z, {y,z} = w_x, {z,x} = w_y (3 variables).
    JpsPotential { file: PathBuf },
    /// Poisson homology dimensions.
    Homology(TableArgs),
    /// Poisson cohomology dimensions.
    Cohomology(TableArgs),
    /// Check the duality square on bases and compare homology of M_t with
    /// cohomology of M.
    VerifyDuality {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        /// Internal cohomological degrees to compare, e.g. `-3..4`.
        #[arg(long, allow_hyphen_values = true)]
        degree_range: Option<String>,
        #[arg(long, value_enum, default_value_t = ModuleChoice::Spec)]
        module: ModuleChoice,
    },
    /// Casimir elements up to a weight bound.
    Casimirs(KernelArgs),
    /// Kernel of the top boundary up to a weight bound.
    TopKernel(KernelArgs),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    file: PathBuf,
    /// Degrees p, comma separated; default all.
    #[arg(short, value_delimiter = ',')]
    p: Vec<usize>,
    /// Inclusive weight range `a..b`; cohomology uses internal degrees.
    #[arg(long, allow_hyphen_values = true)]
    degree_range: Option<String>,
    #[arg(long, value_enum, default_value_t = ModuleChoice::Spec)]
    module: ModuleChoice,
    #[arg(long, value_enum, default_value_t = ModeChoice::Exact)]
    mode: ModeChoice,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    file: PathBuf,
    #[arg(long, visible_alias = "max-degree", default_value_t = 6)]
    bound: i64,
    #[arg(long, value_enum, default_value_t = ModuleChoice::Spec)]
    module: ModuleChoice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleChoice {
    /// The module described in the file.
    Spec,
    /// R over itself.
    Regular,
    /// The file's module twisted by the modular derivation.
    Twisted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeChoice {
    Exact,
    Filtered,
}

/// What a run printed and how it ended.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("invalid degree range {s:?}; expected a..b");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn pick(loaded: &Loaded, choice: ModuleChoice) -> PoissonModule {
    match choice {
        ModuleChoice::Spec => loaded.module.clone(),
        ModuleChoice::Regular => PoissonModule::regular(loaded.structure.clone()),
        ModuleChoice::Twisted => loaded.module.modular_twist(),
    }
}

fn mode_error(e: HomologyError) -> Outcome {
    let code = match e {
        HomologyError::NotHomogeneous => EXIT_MODE,
        HomologyError::DegreeOutOfRange { .. } => EXIT_PARSE,
    };
    Outcome::fail(code, format!("error: {e}\n"))
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    execute(&cli)
}

fn load(file: &PathBuf) -> Result<Loaded, Outcome> {
    load_path(file).map_err(|e| Outcome::fail(e.exit_code(), format!("error: {}: {e}\n", file.display())))
}

pub fn execute(cli: &Cli) -> Outcome {
    match run_command(cli) {
        Ok(o) | Err(o) => o,
    }
}

fn run_command(cli: &Cli) -> Result<Outcome, Outcome> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Check { file, max_degree } => {
            let l = load(file)?;
            let mut out = String::new();
            let _ = writeln!(out, "Jacobi identity: ok");
            let _ = writeln!(out, "module axioms ({}, rank {}): ok", l.module.label(), l.module.rank());
            match complex_squared_check(&l.module, *max_degree) {
                Ok(()) => {
                    let _ = writeln!(out, "d∘d = 0 and δ∘δ = 0 through degree {max_degree}: ok");
                    Ok(Outcome::ok(out))
                }
                Err(f) => {
                    let _ = writeln!(out, "d∘d or δ∘δ is nonzero: {f:?}");
                    Ok(Outcome {
                        code: EXIT_CHECK_FAILED,
                        stdout: out,
                        stderr: String::new(),
                    })
                }
            }
        }
        Command::Modular { file } => {
            let l = load(file)?;
            let phi = l.structure.modular_derivation();
            Ok(Outcome::ok(if json {
                report::modular_json(&l.structure, &phi) + "\n"
            } else {
                report::modular_text(&l.structure, &phi)
            }))
        }
        Command::JpsPotential { file } => {
            let l = load(file)?;
            match l.structure.jps_potential_3d() {
                Ok(w) => {
                    let shown = l.structure.ring().show(&w);
                    Ok(Outcome::ok(if json {
                        format!("{}\n", serde_json::json!({ "schema_version": homology::SCHEMA_VERSION, "potential": shown }))
                    } else {
                        format!("w = {shown}\n")
                    }))
                }
                Err(e) => Ok(Outcome::fail(EXIT_CHECK_FAILED, format!("error: {e}\n"))),
            }
        }
        Command::Homology(a) | Command::Cohomology(a) => {
            let l = load(file_of(a))?;
            let module = pick(&l, a.module);
            let n = module.ring_dim();
            let ps: Vec<usize> = if a.p.is_empty() { (0..=n).collect() } else { a.p.clone() };
            let homology = matches!(cli.command, Command::Homology(_));
            let default = if homology {
                0..=4
            } else {
                -l.structure.ring().total_weight()..=4
            };
            let range = match &a.degree_range {
                Some(s) => parse_range(s).map_err(|e| Outcome::fail(EXIT_PARSE, format!("error: {e}\n")))?,
                None => default,
            };
            let mode = match a.mode {
                ModeChoice::Exact => Mode::ExactGraded,
                ModeChoice::Filtered => Mode::FilteredApproximate,
            };
            let table = if homology {
                homology::ph_homology(&module, &ps, range, mode)
            } else {
                homology::ph_cohomology(&module, &ps, range, mode)
            }
            .map_err(mode_error)?;
            Ok(Outcome::ok(if json {
                table.to_json() + "\n"
            } else {
                report::betti_text(&table)
            }))
        }
        Command::VerifyDuality {
            file,
            max_degree,
            degree_range,
            module,
        } => {
            let l = load(file)?;
            let m = pick(&l, *module);
            let n = m.ring_dim();
            let mut out = String::new();
            let mut square_passed = true;
            let mut checked = 0;
            for p in 0..n {
                match verify_duality_square(&m, p, *max_degree) {
                    Ok(c) => checked += c,
                    Err(f) => {
                        square_passed = false;
                        let _ = writeln!(out, "square fails at p={p} on {:?}", f.input);
                        let _ = writeln!(out, "  dag(delta F)  = {:?}", f.left);
                        let _ = writeln!(out, "  boundary(dag F) = {:?}", f.right);
                    }
                }
            }
            let mut passed = square_passed;
            if square_passed {
                let _ = writeln!(out, "duality square: ok on {checked} basis cochains through degree {max_degree}");
            }
            let range = match degree_range {
                Some(s) => parse_range(s).map_err(|e| Outcome::fail(EXIT_PARSE, format!("error: {e}\n")))?,
                None => -l.structure.ring().total_weight()..=3,
            };
            let mut json_report = None;
            match duality_table_check(&m, range) {
                Ok(rep) => {
                    let _ = writeln!(
                        out,
                        "duality tables: {} on {} slices",
                        if rep.passed() { "ok" } else { "FAILED" },
                        rep.entries.len()
                    );
                    out.push_str(&report::duality_text(&rep));
                    passed &= rep.passed();
                    json_report = Some(rep);
                }
                Err(HomologyError::NotHomogeneous) => {
                    let _ = writeln!(out, "duality tables: skipped, the structure or module is not weight-homogeneous");
                }
                Err(e) => return Err(mode_error(e)),
            }
            let stdout = if json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "schema_version": homology::SCHEMA_VERSION,
                        "square_passed": square_passed,
                        "basis_checked": checked,
                        "tables": json_report,
                        "passed": passed,
                    }))
                    .expect("serializable")
                )
            } else {
                out
            };
            Ok(Outcome {
                code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
                stdout,
                stderr: String::new(),
            })
        }
        Command::Casimirs(a) | Command::TopKernel(a) => {
            let l = load(&a.file)?;
            let m = pick(&l, a.module);
            let ring = l.structure.ring();
            let (kind, title, basis) = if matches!(cli.command, Command::Casimirs(_)) {
                ("casimirs", "Casimir elements", casimirs(&m, a.bound))
            } else {
                ("top-kernel", "kernel of the top boundary", top_kernel(&m, a.bound))
            };
            Ok(Outcome::ok(if json {
                report::kernel_json(ring, kind, a.bound, &basis) + "\n"
            } else {
                report::kernel_text(ring, title, a.bound, &basis)
            }))
        }
    }
}

fn file_of(a: &TableArgs) -> &PathBuf {
    &a.file
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..6"), Ok(0..=6));
        assert_eq!(parse_range("-3..=2"), Ok(-3..=2));
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn missing_file_is_parse_error() {
        let o = run(["poisson", "modular", "/nonexistent/structure.toml"]);
        assert_eq!(o.code, EXIT_PARSE);
        assert!(o.stderr.contains("cannot read"));
    }

    #[test]
    fn bad_flag_is_parse_error() {
        let o = run(["poisson", "homology", "x.toml", "--mode", "fuzzy"]);
        assert_eq!(o.code, EXIT_PARSE);
    }
}
