//! `charmod` command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use charmod::anomaly::{build_twisted_class, verify_all, IdentityId, Route, TwistParams, TwistedKind, VerificationReport};
use charmod::charring::{multiplicative_class, GradedPoly, RootFunction};
use charmod::cubiclattice::{run_lattice_input, LatticeError, LatticeInput};
use charmod::exactmath::exponent;
use charmod::thetamod::{e8_table, numeric_transform_check, ThetaError, TransformKind};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_PRECISION: u8 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "charmod", version, about = "Exact verification of characteristic-class identities, lattice cubic forms and theta-function laws")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// q-expansion order N
    #[arg(long, global = true, default_value_t = 6)]
    order: u32,
    /// Cohomological degree cap
    #[arg(long, global = true, default_value_t = 12)]
    cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for sampled checks (overrides the seed in lattice files)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for floating-point checks
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Product/sum terms for floating-point theta values
    #[arg(long, global = true, default_value_t = 60)]
    terms: u32,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run identities from the registry
    Verify {
        /// Identity tags, comma separated, or `all`
        #[arg(long = "id", value_delimiter = ',', required = true)]
        ids: Vec<String>,
    },
    /// Print a characteristic class or twisted class
    Expand {
        /// Ahat, Lhat, W, Wc, Qc, Rc, QL, RL or LWitten
        #[arg(long)]
        class: String,
        /// Build through theta-function ratios instead of Adams operations
        #[arg(long)]
        theta_route: bool,
    },
    /// Check lattice files
    Lattice {
        #[arg(long, required = true)]
        file: Vec<PathBuf>,
        /// Random points for the sampled checks
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Compare the E8 lattice theta series with theta functions and E4
    E8,
    /// Floating-point check of the modular transformation laws
    ThetaCheck {
        /// theta, theta1, theta2, theta3, e2 or all
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        v: String,
    },
}

/// An exit code with a message for stderr.
struct Failure(u8, String);

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, m.into())
    }
    fn internal(m: impl std::fmt::Display) -> Self {
        Failure(EXIT_INTERNAL, m.to_string())
    }
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>().map_err(|_| Failure::usage(format!("cannot parse complex number `{s}`")))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(Failure::internal)
}

fn report_line(r: &VerificationReport) -> String {
    let mut s = format!("{:<16} {:<4} order={} cap={} {}ms", r.id, r.status, r.order, r.cap, r.millis);
    if !r.witness.is_empty() {
        let _ = write!(s, "  witness: {}", r.witness);
    }
    for n in &r.notes {
        let _ = write!(s, "\n    note: {n}");
    }
    s
}

fn run_verify(ids: &[String], cli: &Cli) -> Result<(String, u8), Failure> {
    let mut list = Vec::new();
    for id in ids {
        if id == "all" {
            list.extend(IdentityId::ALL);
        } else {
            list.push(id.parse::<IdentityId>().map_err(|e| Failure::usage(e.to_string()))?);
        }
    }
    list.sort();
    list.dedup();
    let reports = verify_all(&list, cli.order).map_err(Failure::internal)?;
    let code = if reports.iter().all(|r| r.passed()) { 0 } else { EXIT_FAIL };
    let out = match cli.format {
        Format::Json => to_json(&reports)?,
        Format::Text => reports.iter().map(report_line).collect::<Vec<_>>().join("\n"),
    };
    Ok((out, code))
}

#[derive(Serialize)]
struct ClassOut {
    class: String,
    cap: u32,
    order: Option<u32>,
    /// `(q exponent, coefficient)`; a single entry with exponent 0 for the
    /// plain characteristic classes.
    coefficients: Vec<(String, String)>,
}

fn run_expand(class: &str, theta_route: bool, cli: &Cli) -> Result<(String, u8), Failure> {
    let root = match class.to_ascii_lowercase().as_str() {
        "ahat" => Some(RootFunction::Ahat),
        "lhat" => Some(RootFunction::Lhat),
        _ => None,
    };
    let out = if let Some(f) = root {
        // classes live on 10- or 12-manifolds; smaller caps truncate the 12-dimensional one
        let dim = if cli.cap < 10 { 12 } else { cli.cap };
        let p = multiplicative_class(&f, dim).map_err(|e| Failure::usage(e.to_string()))?.with_cap(cli.cap);
        ClassOut { class: class.to_string(), cap: cli.cap, order: None, coefficients: vec![("0".into(), p.to_string())] }
    } else {
        let kind: TwistedKind = class
            .parse()
            .map_err(|_| Failure::usage(format!("unknown class `{class}`; expected Ahat, Lhat, W, Wc, Qc, Rc, QL, RL or LWitten")))?;
        if cli.cap > 12 {
            return Err(Failure::usage("twisted classes are built on a 12-manifold; --cap must be at most 12"));
        }
        let route = if theta_route { Route::Theta } else { Route::Adams };
        let s = build_twisted_class(kind, &TwistParams::symbolic(), cli.order, route).map_err(Failure::internal)?;
        let coefficients = s
            .terms()
            .map(|(k, p): (u32, &GradedPoly)| (exponent(k).to_string(), p.with_cap(cli.cap)))
            .filter(|(_, p)| !p.is_zero())
            .map(|(e, p)| (e, p.to_string()))
            .collect();
        ClassOut { class: kind.to_string(), cap: cli.cap, order: Some(cli.order), coefficients }
    };
    let text = match cli.format {
        Format::Json => to_json(&out)?,
        Format::Text => {
            if out.order.is_none() {
                format!("{} = {}", out.class, out.coefficients[0].1)
            } else {
                out.coefficients.iter().map(|(e, p)| format!("q^{e}: {p}")).collect::<Vec<_>>().join("\n")
            }
        }
    };
    Ok((text, 0))
}

fn lattice_error(path: &std::path::Path, e: LatticeError) -> Failure {
    match e {
        LatticeError::NoSolution { .. } => Failure::internal(e),
        _ => Failure::usage(format!("{}: {e}", path.display())),
    }
}

fn run_lattice(files: &[PathBuf], samples: usize, cli: &Cli) -> Result<(String, u8), Failure> {
    #[derive(Serialize)]
    struct Entry {
        file: String,
        #[serde(flatten)]
        report: charmod::cubiclattice::LatticeReport,
    }
    let mut entries = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| Failure::usage(format!("{}: {e}", f.display())))?;
        let mut input = LatticeInput::from_json(&text).map_err(|e| lattice_error(f, e))?;
        if cli.seed.is_some() {
            input.seed = cli.seed;
        }
        let report = run_lattice_input(&input, samples).map_err(|e| lattice_error(f, e))?;
        entries.push(Entry { file: f.display().to_string(), report });
    }
    let code = if entries.iter().all(|e| e.report.passed) { 0 } else { EXIT_FAIL };
    let out = match cli.format {
        Format::Json => to_json(&entries)?,
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                let r = &e.report;
                let _ = writeln!(s, "{}", e.file);
                let _ = writeln!(s, "  characteristic: {}", r.characteristic);
                match (&r.bhat, &r.bhat_error) {
                    (Some(b), _) => {
                        let _ = writeln!(
                            s,
                            "  b^ mod {} = {:?} ({}, {} points, unique: {})",
                            b.modulus,
                            b.bhat,
                            if b.exhaustive { "exhaustive" } else { "sampled" },
                            b.points_checked,
                            b.unique
                        );
                        if let Some(w) = &b.warning {
                            let _ = writeln!(s, "  warning: {w}");
                        }
                    }
                    (None, Some(err)) => {
                        let _ = writeln!(s, "  b^: {err}");
                    }
                    (None, None) => {}
                }
                if let Some(c) = &r.relations {
                    let _ = writeln!(
                        s,
                        "  f~ = (f(2x)+f(0))/2: {} (symbolic: {}), hypothesis: {}, integrality witness: {:?}",
                        c.relation_witness.is_none(),
                        c.symbolic,
                        c.hypothesis,
                        c.integrality_witness
                    );
                }
                let _ = writeln!(s, "  cubic refinement: {}", r.refinement.passed);
                let _ = writeln!(s, "  passed: {}", r.passed);
            }
            s.trim_end().to_string()
        }
    };
    Ok((out, code))
}

fn run_e8(cli: &Cli) -> Result<(String, u8), Failure> {
    let t = e8_table(cli.order).map_err(|e| match e {
        ThetaError::ArgumentError(m) => Failure::usage(m),
        e => Failure::internal(e),
    })?;
    let code = if t.equal { 0 } else { EXIT_FAIL };
    let out = match cli.format {
        Format::Json => to_json(&t)?,
        Format::Text => {
            let mut s = format!("{:>3} {:>12} {:>12} {:>12} {:>14}\n", "n", "lattice", "theta sum", "E4", "character");
            for n in 0..=t.order as usize {
                let _ = writeln!(
                    s,
                    "{:>3} {:>12} {:>12} {:>12} {:>14}",
                    n,
                    t.lattice[n].to_string(),
                    t.half_theta[n].to_string(),
                    t.e4[n].to_string(),
                    t.character[n].to_string()
                );
            }
            let _ = write!(s, "equal: {}", t.equal);
            s
        }
    };
    Ok((out, code))
}

fn run_theta_check(kind: &str, tau: &str, v: &str, cli: &Cli) -> Result<(String, u8), Failure> {
    let kinds: Vec<TransformKind> = if kind == "all" {
        TransformKind::ALL.to_vec()
    } else {
        vec![kind.parse().map_err(|e: ThetaError| Failure::usage(e.to_string()))?]
    };
    let (tau, v) = (parse_complex(tau)?, parse_complex(v)?);
    let mut reports = Vec::new();
    for k in kinds {
        let r = numeric_transform_check(k, v, tau, cli.terms, cli.tol).map_err(|e| match e {
            ThetaError::PrecisionError(m) => Failure(EXIT_PRECISION, m),
            ThetaError::ArgumentError(m) => Failure::usage(m),
            e => Failure::internal(e),
        })?;
        reports.push(r);
    }
    let code = if reports.iter().all(|r| r.pass) { 0 } else { EXIT_FAIL };
    let out = match cli.format {
        Format::Json => to_json(&reports)?,
        Format::Text => reports
            .iter()
            .map(|r| {
                format!(
                    "{:<7} {} T-residual={:.3e} S-residual={:.3e} tail<={:.1e} tol={:.1e}",
                    r.kind,
                    if r.pass { "pass" } else { "fail" },
                    r.residual_t,
                    r.residual_s,
                    r.tail_bound,
                    r.tol
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok((out, code))
}

fn init_threads() {
    if let Some(n) = std::env::var("CHARMOD_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.cmd {
        Cmd::Verify { ids } => run_verify(ids, cli),
        Cmd::Expand { class, theta_route } => run_expand(class, *theta_route, cli),
        Cmd::Lattice { file, samples } => run_lattice(file, *samples, cli),
        Cmd::E8 => run_e8(cli),
        Cmd::ThetaCheck { kind, tau, v } => run_theta_check(kind, tau, v, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(&cli) {
        Ok((out, code)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, format!("{out}\n")),
                None => {
                    println!("{out}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            ExitCode::from(code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
