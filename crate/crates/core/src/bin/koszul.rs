//! Command-line front end: build any of the complexes, compute cohomology,
//! run the verification suites, export JSON/CSV reports.
//!
//! Exit codes: 0 when every requested check passes, 1 when a mathematical
//! verification fails (the first counterexample is printed), 2 for invalid
//! arguments.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use koszul::chiral::{build_chiral_janus, build_weight_complex, ChiralKind, ChiralSpec};
use koszul::classical::{
    koszul_complex, sphere_complex, KoszulSpec, KoszulVariant, SphereSide, SphereSpec,
};
use koszul::complex::GradedComplex;
use koszul::io::{CohomologyDto, GradedComplexDto, LocalCohomologyDto};
use koszul::multivar::local_cohomology_check;
use koszul::verify::{configure_workers, run_suite_with, Suite};
use koszul::Error;

const MAX_WEIGHT: i64 = 12;
const MAX_WINDOW: i64 = 64;

#[derive(Parser)]
#[command(name = "koszul", version, about = "Exact cochain complex builder and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Lift the default size bounds
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Cellular cochain complexes of spheres and their infinite limits
    Spheres {
        /// Finite n-sphere
        #[arg(long, conflicts_with_all = ["infinite", "window"])]
        n: Option<u32>,
        /// Infinite variant
        #[arg(long, value_enum, requires = "window")]
        infinite: Option<SideArg>,
        /// Degree window A..B for the infinite variants
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i64, i64)>,
    },
    /// Koszul complexes of x on the line and their localizations
    Koszul {
        #[arg(long, value_enum)]
        variant: KoszulVariantArg,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
    },
    /// Weight components of the mode ring with the chiral differential
    Chiral {
        #[arg(long)]
        weight: i64,
        #[arg(long, value_enum)]
        variant: ChiralVariantArg,
        #[arg(long, default_value_t = 4)]
        zero_window: i64,
        #[arg(long, default_value_t = 1)]
        vars: u32,
    },
    /// The glued multi-variable bouquet
    MultivarJanus {
        #[arg(long)]
        weight: i64,
        #[arg(long, default_value_t = 4)]
        zero_window: i64,
        #[arg(long, default_value_t = 2)]
        vars: u32,
    },
    /// Power Koszul concentration, transition injectivity and the dual count
    LocalCohomology {
        #[arg(long, default_value_t = 1)]
        vars: u32,
        #[arg(long, default_value_t = 2)]
        m_max: i64,
        #[arg(long, default_value_t = 0)]
        weight: i64,
        #[arg(long, default_value_t = 2)]
        zero_window: i64,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
        /// Largest sphere checked by the sphere suite
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum KoszulVariantArg {
    DeltaPlus,
    DeltaMinus,
    Janus,
    LocPoly,
    LocLaurent,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChiralVariantArg {
    Plain,
    Localized,
    Quotient,
    VnOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Spheres,
    Koszul,
    Chiral,
    Multivar,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("bad window start: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("bad window end: {e}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok((a, b))
}

#[derive(Serialize)]
struct ComplexReport {
    complex: GradedComplexDto,
    cohomology: CohomologyDto,
}

#[derive(Serialize)]
struct SuiteReportDto {
    suite: String,
    pass: bool,
    checks: Vec<CheckDto>,
}

#[derive(Serialize)]
struct CheckDto {
    name: String,
    pass: bool,
    detail: String,
}

enum Outcome {
    Pass,
    /// A mathematical check failed; the string names the counterexample.
    Fail(String),
}

fn check_bounds(weight: i64, width: i64, force: bool) -> Result<(), String> {
    if force {
        return Ok(());
    }
    if weight > MAX_WEIGHT {
        return Err(format!("weight {weight} exceeds the default bound {MAX_WEIGHT}; pass --force to override"));
    }
    if width > MAX_WINDOW {
        return Err(format!("window of size {width} exceeds the default bound {MAX_WINDOW}; pass --force to override"));
    }
    Ok(())
}

fn complex_report(c: &GradedComplex, format: Format) -> Result<(String, Outcome), Error> {
    let h = c.cohomology(true)?;
    let text = match format {
        Format::Json => {
            let report = ComplexReport { complex: (&*c).into(), cohomology: (&h).into() };
            serde_json::to_string_pretty(&report).expect("report serialization") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("degree,dim\n");
            for (i, d) in c.dims() {
                let _ = writeln!(out, "{i},{d}");
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let (a, b) = c.window();
            let _ = writeln!(
                out,
                "window {a}..{b} ({} left, {} right)",
                if c.left_closed() { "closed" } else { "open" },
                if c.right_closed() { "closed" } else { "open" },
            );
            let _ = writeln!(out, "dimensions:");
            for (i, d) in c.dims() {
                let _ = writeln!(out, "  {i}: {d}");
            }
            let _ = writeln!(out, "cohomology on trusted degrees:");
            for (i, d) in &h.dims {
                let _ = writeln!(out, "  {i}: {d}");
                for rep in h.reps.get(i).into_iter().flatten() {
                    let terms: Vec<String> =
                        rep.iter().map(|(c, l)| format!("{c} {l}")).collect();
                    let _ = writeln!(out, "    [{}]", terms.join(" + "));
                }
            }
            out
        }
    };
    // d^2 = 0 is re-checked on the assembled complex so an exported report
    // never describes a non-complex
    let d2 = c.check_d_squared();
    let outcome = match d2.failures.first() {
        None => Outcome::Pass,
        Some(i) => Outcome::Fail(format!("d^2 != 0 entering degree {i}")),
    };
    Ok((text, outcome))
}

fn run(cli: &Cli) -> Result<(String, Outcome), Error> {
    match &cli.command {
        Command::Spheres { n, infinite, window } => {
            let spec = match (n, infinite, window) {
                (Some(n), None, None) => SphereSpec::Finite { n: *n },
                (None, Some(side), Some(window)) => {
                    let side = match side {
                        SideArg::Plus => SphereSide::Plus,
                        SideArg::Minus => SphereSide::Minus,
                        SideArg::Both => SphereSide::Both,
                    };
                    SphereSpec::Infinite { side, window: *window }
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "pass either --n or --infinite with --window".into(),
                    ))
                }
            };
            if let SphereSpec::Infinite { window: (a, b), .. } = spec {
                check_bounds(0, b - a, cli.out.force).map_err(Error::InvalidArgument)?;
            } else if let SphereSpec::Finite { n } = spec {
                check_bounds(0, i64::from(n), cli.out.force).map_err(Error::InvalidArgument)?;
            }
            complex_report(&sphere_complex(&spec)?, cli.out.format)
        }
        Command::Koszul { variant, window } => {
            check_bounds(0, window.1 - window.0, cli.out.force).map_err(Error::InvalidArgument)?;
            let variant = match variant {
                KoszulVariantArg::DeltaPlus => KoszulVariant::DeltaPlus,
                KoszulVariantArg::DeltaMinus => KoszulVariant::DeltaMinus,
                KoszulVariantArg::Janus => KoszulVariant::Janus,
                KoszulVariantArg::LocPoly => KoszulVariant::LocPoly,
                KoszulVariantArg::LocLaurent => KoszulVariant::LocLaurent,
            };
            complex_report(&koszul_complex(&KoszulSpec { variant, window: *window })?, cli.out.format)
        }
        Command::Chiral { weight, variant, zero_window, vars } => {
            check_bounds(*weight, 2 * zero_window, cli.out.force).map_err(Error::InvalidArgument)?;
            let kind = match variant {
                ChiralVariantArg::Plain => ChiralKind::Plain,
                ChiralVariantArg::Localized => ChiralKind::Localized,
                ChiralVariantArg::Quotient => ChiralKind::Quotient,
                ChiralVariantArg::VnOnly => ChiralKind::VnOnly,
            };
            let zero_window = if matches!(kind, ChiralKind::VnOnly) { 0 } else { *zero_window };
            let c = build_weight_complex(&ChiralSpec::new(kind, *weight, zero_window, *vars)?)?;
            complex_report(&c, cli.out.format)
        }
        Command::MultivarJanus { weight, zero_window, vars } => {
            check_bounds(*weight, 2 * zero_window, cli.out.force).map_err(Error::InvalidArgument)?;
            let c = build_chiral_janus(*weight, *zero_window, *vars)?;
            complex_report(&c, cli.out.format)
        }
        Command::LocalCohomology { vars, m_max, weight, zero_window } => {
            check_bounds(*weight, *zero_window + *m_max, cli.out.force)
                .map_err(Error::InvalidArgument)?;
            let report = local_cohomology_check(*vars, *m_max, *weight, *zero_window)?;
            let dto = LocalCohomologyDto::from(&report);
            let text = match cli.out.format {
                Format::Json => {
                    serde_json::to_string_pretty(&dto).expect("report serialization") + "\n"
                }
                Format::Csv => {
                    // one saturated-tuple dimension table
                    let mut out = String::from("degree,dim\n");
                    if let Some(t) = report.tuples.last() {
                        for (i, d) in &t.dims {
                            let _ = writeln!(out, "{i},{d}");
                        }
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    for t in &report.tuples {
                        let _ = writeln!(
                            out,
                            "exponents {:?}: dims {:?} ({})",
                            t.exponents,
                            t.dims,
                            if t.concentrated { "concentrated" } else { "NOT concentrated" },
                        );
                    }
                    let _ = writeln!(out, "transitions injective: {}", report.transitions_injective);
                    let _ = writeln!(
                        out,
                        "top dimension {} vs dual basis count {}",
                        report.top_dimension_at_window, report.dual_basis_count,
                    );
                    out
                }
            };
            let outcome = if report.pass() {
                Outcome::Pass
            } else if let Some(t) = report.tuples.iter().find(|t| !t.concentrated) {
                Outcome::Fail(format!(
                    "cohomology not concentrated at exponents {:?}: {:?}",
                    t.exponents, t.dims
                ))
            } else if !report.transitions_injective {
                Outcome::Fail("a transition map is not injective on top cohomology".into())
            } else {
                Outcome::Fail(format!(
                    "top dimension {} differs from the dual basis count {}",
                    report.top_dimension_at_window, report.dual_basis_count
                ))
            };
            Ok((text, outcome))
        }
        Command::Verify { suite, max_weight, max_n } => {
            check_bounds(*max_weight, i64::from(*max_n), cli.out.force)
                .map_err(Error::InvalidArgument)?;
            let (suite, name) = match suite {
                SuiteArg::All => (Suite::All, "all"),
                SuiteArg::Spheres => (Suite::Spheres, "spheres"),
                SuiteArg::Koszul => (Suite::Koszul, "koszul"),
                SuiteArg::Chiral => (Suite::Chiral, "chiral"),
                SuiteArg::Multivar => (Suite::Multivar, "multivar"),
            };
            let report = run_suite_with(suite, *max_weight, *max_n);
            let text = match cli.out.format {
                Format::Json => {
                    let dto = SuiteReportDto {
                        suite: name.into(),
                        pass: report.pass(),
                        checks: report
                            .results
                            .iter()
                            .map(|r| CheckDto {
                                name: r.name.clone(),
                                pass: r.pass,
                                detail: r.detail.clone(),
                            })
                            .collect(),
                    };
                    serde_json::to_string_pretty(&dto).expect("report serialization") + "\n"
                }
                Format::Csv => {
                    let mut out = String::from("name,pass\n");
                    for r in &report.results {
                        let _ = writeln!(out, "{},{}", r.name, r.pass);
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    for r in &report.results {
                        let _ = writeln!(
                            out,
                            "{} {}: {}",
                            if r.pass { "PASS" } else { "FAIL" },
                            r.name,
                            r.detail,
                        );
                    }
                    out
                }
            };
            let outcome = match report.first_failure() {
                None => Outcome::Pass,
                Some(r) => Outcome::Fail(format!("{}: {}", r.name, r.detail)),
            };
            Ok((text, outcome))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_workers();
    match run(&cli) {
        Ok((text, outcome)) => {
            let written = match &cli.out.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail(counterexample) => {
                    eprintln!("verification failed: {counterexample}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            let code = match e {
                Error::DSquared { .. } | Error::Gluing(_) => {
                    eprintln!("verification failed: {e}");
                    1
                }
                _ => {
                    eprintln!("error: {e}");
                    2
                }
            };
            ExitCode::from(code)
        }
    }
}
