//! Command-line front end: reproducible reports over fan files.
//!
//! Exit codes: 0 success/verified, 1 verification failure, 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use toricarc::error::Error;
use toricarc::poly::text::parse_poly;
use toricarc::report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "toricarc",
    version,
    about = "Cox data, quantum cohomology presentations, arc-model checks and jet relations for smooth complete toric fans"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Truncation degree for series checks.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    cutoff: u64,

    /// Number of seeded q-specialization trials.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    /// Seed for all randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Build Batyrev presentations for non-Fano fans (with a warning).
    #[arg(long, global = true)]
    allow_non_fano: bool,

    /// Reduction step budget for Groebner runs
    /// (default 1000000; the TORICARC_BUDGET variable overrides the default).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural and geometric validation flags for a fan file.
    Validate { fan: PathBuf },
    /// Classical presentation and Betti numbers.
    Cohomology { fan: PathBuf },
    /// Batyrev quantum presentation, rank check and product table.
    Quantum {
        fan: PathBuf,
        /// Specialize q to these nonzero rationals (comma separated).
        #[arg(long, conflicts_with = "symbolic", allow_hyphen_values = true)]
        q_spec: Option<String>,
        /// Keep q symbolic (the default).
        #[arg(long)]
        symbolic: bool,
    },
    /// Graded series identity check at the configured cutoff.
    Series { fan: PathBuf },
    /// Three-verdict certification of the localization isomorphism.
    VerifyMain { fan: PathBuf },
    /// Codimension of the nested self-embedding for b - a in A_+.
    Codim {
        fan: PathBuf,
        /// Lattice point in A-coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Truncated jet relations for base relations read from a file
    /// (canonical polynomial text in variables u1..up, one per line).
    Jets {
        relations: PathBuf,
        #[arg(long)]
        order: u32,
    },
    /// Stratum descriptor for a point of A_+.
    Strata {
        fan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::RankMismatch(_) | Error::VerificationFailed(_) | Error::MismatchWithHVector(_) => 1,
        _ => 2,
    }
}

fn load_fan(path: &Path) -> Result<toricarc::Fan, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    toricarc::parse_fan(&text)
}

fn parse_lattice_point(text: &str) -> Result<Vec<num_bigint::BigInt>, Error> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<num_bigint::BigInt>()
                .map_err(|e| Error::Parse(format!("bad coordinate '{tok}': {e}")))
        })
        .collect()
}

fn parse_q_spec(text: &str) -> Result<Vec<num_rational::BigRational>, Error> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<num_rational::BigRational>()
                .map_err(|e| Error::Parse(format!("bad rational '{tok}': {e}")))
        })
        .collect()
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{text}"),
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let budget = cli
        .budget
        .or_else(|| {
            std::env::var("TORICARC_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(toricarc::DEFAULT_BUDGET);
    match &cli.command {
        Command::Validate { fan } => {
            let fan = load_fan(fan)?;
            let r = report::validate_report(&fan);
            let text = format!(
                "fan: {}\nsimplicial: {}\nsmooth: {}\nfacet_paired: {}\nrays_positively_span: {}\nfano: {}\ndetails: {}\n",
                r.fan,
                r.simplicial,
                r.smooth,
                r.facet_paired,
                r.rays_positively_span,
                r.fano,
                r.details
            );
            emit(cli.format, &r, text);
            Ok(0)
        }
        Command::Cohomology { fan } => {
            let fan = load_fan(fan)?;
            let cd = toricarc::build_cox_data(&fan)?;
            let r = report::cohomology_report(&cd, budget)?;
            let mut text = String::new();
            text.push_str(&format!("fan: {}\n", r.fan));
            text.push_str(&format!("variables: {}\n", r.variables.join(", ")));
            text.push_str("relations:\n");
            for rel in &r.relations {
                text.push_str(&format!("  {rel}\n"));
            }
            text.push_str(&format!("betti: {:?}\n", r.betti));
            text.push_str(&format!("h_vector: {:?}\n", r.h_vector));
            text.push_str(&format!(
                "betti_total: {} (max cones: {})\n",
                r.betti_total, r.max_cones
            ));
            emit(cli.format, &r, text);
            Ok(0)
        }
        Command::Quantum { fan, q_spec, symbolic: _ } => {
            let fan = load_fan(fan)?;
            let cd = toricarc::build_cox_data(&fan)?;
            let spec = q_spec.as_deref().map(parse_q_spec).transpose()?;
            let r = report::quantum_report(
                &cd,
                spec.as_deref(),
                cli.allow_non_fano,
                cli.trials,
                cli.seed,
                budget,
            )?;
            let mut text = String::new();
            text.push_str(&format!("fan: {}\n", r.fan));
            text.push_str(&format!("kind: {}\n", r.kind));
            if let Some(w) = &r.warning {
                text.push_str(&format!("warning: {w}\n"));
            }
            if let Some(qs) = &r.q_spec {
                text.push_str(&format!("q_spec: {}\n", qs.join(", ")));
            }
            text.push_str("relations:\n");
            for rel in &r.relations {
                text.push_str(&format!("  {rel}\n"));
            }
            text.push_str("eliminated relations:\n");
            for rel in &r.eliminated_relations {
                text.push_str(&format!("  {rel}\n"));
            }
            text.push_str(&format!("rank: {}\n", r.rank_expected));
            for (i, t) in r.rank_trials.iter().enumerate() {
                text.push_str(&format!(
                    "  trial {i}: q = ({}) -> dimension {}\n",
                    t.q_spec.join(", "),
                    t.dimension
                ));
            }
            text.push_str("products:\n");
            for p in &r.products {
                let factors = p
                    .factors
                    .iter()
                    .map(|i| format!("x{i}"))
                    .collect::<Vec<_>>()
                    .join("*");
                text.push_str(&format!("  {} = {}\n", factors, p.value));
            }
            emit(cli.format, &r, text);
            Ok(0)
        }
        Command::Series { fan } => {
            let fan = load_fan(fan)?;
            let cd = toricarc::build_cox_data(&fan)?;
            let r = report::series_report(&cd, cli.cutoff)?;
            let text = format!(
                "fan: {}\ncutoff: {}\nholds: {}\nlhs: {:?}\nrhs: {:?}\n",
                r.fan, r.cutoff, r.holds, r.lhs, r.rhs
            );
            let code = if r.holds { 0 } else { 1 };
            emit(cli.format, &r, text);
            Ok(code)
        }
        Command::VerifyMain { fan } => {
            let fan = load_fan(fan)?;
            let cd = toricarc::build_cox_data(&fan)?;
            let r = report::verify_main_report(
                &cd,
                cli.trials,
                cli.seed,
                cli.cutoff,
                cli.allow_non_fano,
                budget,
            )?;
            let mut text = String::new();
            text.push_str(&format!("fan: {}\n", r.fan));
            text.push_str(&format!("well_defined: {}\n", r.well_defined));
            text.push_str(&format!("surjective: {}\n", r.surjective));
            text.push_str(&format!("rank_equal: {}\n", r.rank_equal));
            text.push_str(&format!("betti_total: {}\n", r.betti_total));
            for (i, t) in r.trials.iter().enumerate() {
                text.push_str(&format!(
                    "  trial {i}: q = ({}) -> dimension {}\n",
                    t.q_spec.join(", "),
                    t.dimension
                ));
            }
            text.push_str(&format!("cousin_holds: {}\n", r.cousin.holds));
            for d in &r.details {
                text.push_str(&format!("detail: {d}\n"));
            }
            text.push_str(&format!("passed: {}\n", r.passed));
            let code = if r.passed { 0 } else { 1 };
            emit(cli.format, &r, text);
            Ok(code)
        }
        Command::Codim { fan, a, b } => {
            let fan = load_fan(fan)?;
            let cd = toricarc::build_cox_data(&fan)?;
            let a = parse_lattice_point(a)?;
            let b = parse_lattice_point(b)?;
            let r = report::codim_report(&cd, &a, &b)?;
            let text = format!(
                "fan: {}\na: ({})\nb: ({})\ncodim: {}\n",
                r.fan,
                r.a.join(", "),
                r.b.join(", "),
                r.codim
            );
            emit(cli.format, &r, text);
            Ok(0)
        }
        Command::Strata { fan, a } => {
            let fan = load_fan(fan)?;
            let cd = toricarc::build_cox_data(&fan)?;
            let a = parse_lattice_point(a)?;
            let r = report::strata_report(&cd, &a)?;
            let text = format!(
                "fan: {}\na: ({})\ncodim: {}\npoincare: {:?}\n",
                r.fan,
                r.a.join(", "),
                r.codim,
                r.poincare
            );
            emit(cli.format, &r, text);
            Ok(0)
        }
        Command::Jets { relations, order } => {
            let content = std::fs::read_to_string(relations)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", relations.display())))?;
            let lines: Vec<&str> = content
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            if lines.is_empty() {
                return Err(Error::Parse("no relations in input".into()));
            }
            let p = scan_u_variables(&lines)?;
            let names: Vec<String> = (1..=p).map(|j| format!("u{j}")).collect();
            let base: Vec<toricarc::Poly> = lines
                .iter()
                .map(|l| parse_poly(l, &names))
                .collect::<Result<_, _>>()?;
            let jp = toricarc::jet_relations(&base, &names, *order);
            let r = report::jets_report(&jp);
            let mut text = String::new();
            text.push_str(&format!("order: {}\n", r.order));
            text.push_str(&format!("base_vars: {}\n", r.base_vars.join(", ")));
            text.push_str("relations:\n");
            for rel in &r.relations {
                text.push_str(&format!("  {rel}\n"));
            }
            emit(cli.format, &r, text);
            Ok(0)
        }
    }
}

/// Infer the number of base variables from identifiers u1..up.
fn scan_u_variables(lines: &[&str]) -> Result<usize, Error> {
    let mut max = 0usize;
    for line in lines {
        let mut chars = line.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_ascii_alphabetic() {
                let mut ident = String::from(c);
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let rest = &ident[1..];
                if !ident.starts_with('u')
                    || rest.is_empty()
                    || !rest.chars().all(|d| d.is_ascii_digit())
                {
                    return Err(Error::Parse(format!(
                        "jet input variables must be named u1..up, found '{ident}'"
                    )));
                }
                max = max
                    .max(rest.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
    }
    if max == 0 {
        return Err(Error::Parse("no variables found in relations".into()));
    }
    Ok(max)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
