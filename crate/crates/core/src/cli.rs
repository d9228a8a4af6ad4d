//! Command-line front end.
//!
//! Node indices and weights are 1-based/Bourbaki on input and output. Exit
//! codes: 0 on success, 1 when a verification fails, 2 on usage or validation
//! errors.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::freudenthal;
use crate::error::{Error, Result};
use crate::folding::{fold, DiagramAutomorphism, FoldedDatum};
use crate::hwmodule::{build_module, form_sigma_invariance_check};
use crate::rootdata::{make_datum, RootDatum, Weight};
use crate::twining::{
    compare, corollary_report, folded_character, twining_of_module, JantzenRow, TorusElement,
};

pub const DEFAULT_MAX_DIM: u64 = 2000;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_TORUS_SAMPLES: usize = 10;
pub const FORM_SAMPLES: usize = 100;

/// Built-in verification catalog: (type, automorphism, highest weight).
pub const DEFAULT_CATALOG: &[(&str, &str, &str)] = &[
    ("A2", "(1 2)", "0,0"),
    ("A2", "(1 2)", "1,1"),
    ("A2", "(1 2)", "2,2"),
    ("A2", "(1 2)", "3,3"),
    ("A2", "(1 2)", "4,4"),
    ("A3", "(1 3)", "1,0,1"),
    ("A3", "(1 3)", "0,1,0"),
    ("A3", "(1 3)", "1,1,1"),
    ("A4", "(1 4)(2 3)", "1,0,0,1"),
    ("A4", "(1 4)(2 3)", "0,1,1,0"),
    ("A5", "(1 5)(2 4)", "0,0,1,0,0"),
    ("D4", "(3 4)", "1,0,0,0"),
    ("D4", "(3 4)", "0,1,0,0"),
    ("D4", "(1 3 4)", "0,1,0,0"),
    ("D4", "(1 3 4)", "0,2,0,0"),
    ("D5", "(4 5)", "1,0,0,0,0"),
    ("E6", "(1 6)(3 5)", "0,1,0,0,0,0"),
];

#[derive(Debug, Parser)]
#[command(
    name = "foldedchar",
    version,
    about = "Folded root data and twining characters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold a simply-laced datum along a diagram automorphism.
    Fold {
        #[arg(long = "type")]
        type_label: String,
        /// Automorphism in cycle notation, e.g. "(1 4)(2 3)".
        #[arg(long = "auto")]
        sigma: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Weight multiplicities of an irreducible module.
    Char {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, env = "FOLDEDCHAR_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
        max_dim: u64,
    },
    /// Twining character next to the folded character.
    Twine {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long = "auto")]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, env = "FOLDEDCHAR_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
        max_dim: u64,
    },
    /// Check twining characters against folded characters, exactly and on torus elements.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Named catalog; only `default` exists.
    #[arg(long, conflicts_with = "case", required_unless_present = "case")]
    pub catalog: Option<String>,
    /// TYPE,(CYCLES),COORDS, e.g. A3,"(1 3)",1,0,1. Repeatable.
    #[arg(long)]
    pub case: Vec<String>,
    #[arg(long, env = "FOLDEDCHAR_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: u64,
    #[arg(long, default_value_t = DEFAULT_TORUS_SAMPLES)]
    pub torus_samples: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    #[serde(rename = "type")]
    pub type_label: String,
    pub sigma: String,
    pub lambda: Weight,
}

impl CaseSpec {
    /// Parses `TYPE,(CYCLES),COORDS`; the cycles contain no commas, so the
    /// first two commas delimit the fields.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::CaseParse(s.to_string());
        let clean: String = s.chars().filter(|c| *c != '"' && *c != '\'').collect();
        let mut parts = clean.splitn(3, ',');
        let type_label = parts.next().ok_or_else(bad)?.trim().to_string();
        let sigma = parts.next().ok_or_else(bad)?.trim().to_string();
        let lambda = parts.next().ok_or_else(bad)?.parse::<Weight>()?;
        if type_label.is_empty() {
            return Err(bad());
        }
        Ok(CaseSpec {
            type_label,
            sigma,
            lambda,
        })
    }

    pub fn from_catalog(entry: &(&str, &str, &str)) -> Result<Self> {
        Ok(CaseSpec {
            type_label: entry.0.into(),
            sigma: entry.1.into(),
            lambda: entry.2.parse()?,
        })
    }

    /// Datum, automorphism and folded datum, with `lambda` checked to be
    /// dominant and `sigma`-invariant.
    pub fn resolve(&self) -> Result<(RootDatum, DiagramAutomorphism, FoldedDatum)> {
        let d = make_datum(&self.type_label)?;
        let sigma = DiagramAutomorphism::parse(&self.sigma, d.rank())?;
        let f = fold(&d, &sigma)?;
        d.check_weight(&self.lambda)?;
        if !self.lambda.is_dominant() {
            return Err(Error::NotDominant(self.lambda.clone()));
        }
        if !f.dominant_invariant_check(&self.lambda) {
            return Err(Error::NotInvariant(self.lambda.clone()));
        }
        Ok((d, sigma, f))
    }
}

pub fn default_catalog() -> Vec<CaseSpec> {
    DEFAULT_CATALOG
        .iter()
        .map(|e| CaseSpec::from_catalog(e).expect("catalog entries are well formed"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseChecks {
    /// Per-weight module dimensions equal Freudenthal multiplicities and the total equals the Weyl dimension.
    pub oracle_consistent: bool,
    pub form_sigma_invariant: bool,
    pub top_trace_one: bool,
    /// `0 <= trace <= dim V_mu` on every invariant weight.
    pub trace_bounds: bool,
    /// Observed `dim V_mu - trace = 0 mod order(sigma)` on every invariant weight.
    pub congruence_mod_order: bool,
    /// Whether the congruence is part of the pass criterion (not for type A_{2n}).
    pub congruence_required: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollarySummary {
    pub samples: usize,
    pub max_error: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: CaseSpec,
    pub label: String,
    pub orbits: Vec<Vec<usize>>,
    pub h: Vec<u32>,
    pub dimension: u64,
    pub folded_dimension: u64,
    pub entries: Vec<JantzenRow>,
    pub checks: CaseChecks,
    pub corollary: CorollarySummary,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_dim: u64,
    pub torus_samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_dim: DEFAULT_MAX_DIM,
            torus_samples: DEFAULT_TORUS_SAMPLES,
            tol: DEFAULT_TOL,
            seed: 0,
        }
    }
}

fn is_type_a_even(label: &str) -> bool {
    label
        .strip_prefix('A')
        .and_then(|r| r.parse::<usize>().ok())
        .is_some_and(|n| n % 2 == 0)
}

fn one_based(orbits: &[Vec<usize>]) -> Vec<Vec<usize>> {
    orbits
        .iter()
        .map(|o| o.iter().map(|i| i + 1).collect())
        .collect()
}

/// Runs every check for one case.
pub fn verify_case(spec: &CaseSpec, opts: &VerifyOptions) -> Result<CaseReport> {
    let (d, sigma, f) = spec.resolve()?;
    let lambda = &spec.lambda;
    let module = build_module(&d, lambda, opts.max_dim)?;
    let ch = freudenthal(&d, lambda, opts.max_dim)?;
    let twine = twining_of_module(&module, &sigma)?;
    let folded = folded_character(&f, lambda, opts.max_dim)?;
    let jantzen = compare(&d, &twine, &folded);

    let oracle_consistent = ch
        .mults()
        .iter()
        .all(|(mu, &m)| module.dim_at(mu) as u64 == m)
        && module.dimension() == d.weyl_dimension(lambda)?
        && ch.dimension() == module.dimension();
    let order = sigma.order() as i64;
    let trace_bounds = twine
        .entries()
        .iter()
        .all(|(mu, &t)| t >= 0 && t <= module.dim_at(mu) as i64);
    let congruence_mod_order = twine
        .entries()
        .iter()
        .all(|(mu, &t)| (module.dim_at(mu) as i64 - t).rem_euclid(order) == 0);
    let checks = CaseChecks {
        oracle_consistent,
        form_sigma_invariant: form_sigma_invariance_check(&module, &sigma, FORM_SAMPLES, opts.seed),
        top_trace_one: twine.get(lambda) == 1,
        trace_bounds,
        congruence_mod_order,
        congruence_required: !is_type_a_even(d.label()),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut max_error: f64 = 0.0;
    let mut corollary_ok = true;
    for _ in 0..opts.torus_samples {
        let t = TorusElement::random_unit(d.rank(), &mut rng);
        let r = corollary_report(&f, &twine, &folded, &t, opts.tol);
        max_error = max_error.max(r.error);
        corollary_ok &= r.ok;
    }
    let corollary = CorollarySummary {
        samples: opts.torus_samples,
        max_error,
        ok: corollary_ok,
    };

    let ok = jantzen.ok
        && corollary.ok
        && checks.oracle_consistent
        && checks.form_sigma_invariant
        && checks.top_trace_one
        && checks.trace_bounds
        && (checks.congruence_mod_order || !checks.congruence_required);
    Ok(CaseReport {
        case: spec.clone(),
        label: f.folded().label().to_string(),
        orbits: one_based(f.orbits()),
        h: f.h_values().to_vec(),
        dimension: module.dimension(),
        folded_dimension: folded.dimension(),
        entries: jantzen.entries,
        checks,
        corollary,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub cases: Vec<CaseReport>,
    pub ok: bool,
}

/// Verifies all cases in parallel; reports come back in input order.
pub fn verify_all(specs: &[CaseSpec], opts: &VerifyOptions) -> Result<VerifySummary> {
    let cases = specs
        .par_iter()
        .map(|s| verify_case(s, opts))
        .collect::<Result<Vec<_>>>()?;
    let ok = cases.iter().all(|c| c.ok);
    Ok(VerifySummary { cases, ok })
}

#[derive(Serialize)]
struct AlphaEntry {
    orbit: Vec<usize>,
    h: u32,
    simple_root_coords: Vec<i64>,
    weight: Weight,
}

#[derive(Serialize)]
struct FoldReport {
    #[serde(rename = "type")]
    type_label: String,
    sigma: String,
    orbits: Vec<Vec<usize>>,
    alpha: Vec<AlphaEntry>,
    cartan: Vec<Vec<i64>>,
    label: String,
}

fn fold_report(type_label: &str, sigma: &str) -> Result<FoldReport> {
    let d = make_datum(type_label)?;
    let s = DiagramAutomorphism::parse(sigma, d.rank())?;
    let f = fold(&d, &s)?;
    let orbits = one_based(f.orbits());
    let alpha = (0..f.orbits().len())
        .map(|k| AlphaEntry {
            orbit: orbits[k].clone(),
            h: f.h_values()[k],
            simple_root_coords: f.alpha_root_coords(k),
            weight: f.alpha()[k].clone(),
        })
        .collect();
    Ok(FoldReport {
        type_label: d.label().to_string(),
        sigma: s.to_string(),
        orbits,
        alpha,
        cartan: f.folded().cartan().to_vec(),
        label: f.folded().label().to_string(),
    })
}

fn format_root_combination(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("a{}", i + 1)
            } else {
                format!("{c}a{}", i + 1)
            }
        })
        .collect();
    terms.join("+")
}

fn fold_table(r: &FoldReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "type\t{}\nsigma\t{}\nlabel\t{}",
        r.type_label, r.sigma, r.label
    );
    let _ = writeln!(s, "orbit\th\talpha_O");
    for a in &r.alpha {
        let nodes: Vec<String> = a.orbit.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "{{{}}}\t{}\t{}",
            nodes.join(","),
            a.h,
            format_root_combination(&a.simple_root_coords)
        );
    }
    let _ = writeln!(s, "cartan");
    for row in &r.cartan {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", cells.join("\t"));
    }
    s
}

#[derive(Serialize)]
struct CharRow {
    mu: Weight,
    mult: u64,
}

#[derive(Serialize)]
struct CharReport {
    #[serde(rename = "type")]
    type_label: String,
    lambda: Weight,
    entries: Vec<CharRow>,
    total: u64,
    weyl_dimension: u64,
}

#[derive(Serialize)]
struct TwineReport {
    case: CaseSpec,
    label: String,
    orbits: Vec<Vec<usize>>,
    entries: Vec<JantzenRow>,
    trace_sum: i64,
    folded_sum: u64,
    ok: bool,
}

fn twine_report(type_label: &str, sigma: &str, weight: &str, cap: u64) -> Result<TwineReport> {
    let spec = CaseSpec {
        type_label: type_label.into(),
        sigma: sigma.into(),
        lambda: weight.parse()?,
    };
    let (d, s, f) = spec.resolve()?;
    let module = build_module(&d, &spec.lambda, cap)?;
    let twine = twining_of_module(&module, &s)?;
    let folded = folded_character(&f, &spec.lambda, cap)?;
    let report = compare(&d, &twine, &folded);
    Ok(TwineReport {
        label: f.folded().label().to_string(),
        orbits: one_based(f.orbits()),
        trace_sum: twine.sum(),
        folded_sum: folded.dimension(),
        ok: report.ok,
        entries: report.entries,
        case: spec,
    })
}

fn jantzen_rows_table(entries: &[JantzenRow]) -> String {
    let mut s = String::from("mu\ttrace\tfolded_dim\tok\n");
    for e in entries {
        let _ = writeln!(s, "{}\t{}\t{}\t{}", e.mu, e.trace, e.folded_dim, e.ok);
    }
    s
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs a parsed command, writing results to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> io::Result<i32> {
    match execute(cli.command) {
        Ok((text, code)) => {
            out.write_all(text.as_bytes())?;
            Ok(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(2)
        }
    }
}

fn execute(command: Command) -> Result<(String, i32)> {
    match command {
        Command::Fold {
            type_label,
            sigma,
            format,
        } => {
            let r = fold_report(&type_label, &sigma)?;
            Ok((
                if format == Format::Json {
                    to_json(&r)
                } else {
                    fold_table(&r)
                },
                0,
            ))
        }
        Command::Char {
            type_label,
            weight,
            format,
            max_dim,
        } => {
            let d = make_datum(&type_label)?;
            let lambda: Weight = weight.parse()?;
            let ch = freudenthal(&d, &lambda, max_dim)?;
            let r = CharReport {
                type_label: d.label().to_string(),
                entries: ch
                    .ordered_weights(&d)
                    .into_iter()
                    .map(|mu| CharRow {
                        mult: ch.mult(&mu),
                        mu,
                    })
                    .collect(),
                total: ch.dimension(),
                weyl_dimension: d.weyl_dimension(&lambda)?,
                lambda,
            };
            let text = if format == Format::Json {
                to_json(&r)
            } else {
                let mut s = String::from("mu\tmult\n");
                for row in &r.entries {
                    let _ = writeln!(s, "{}\t{}", row.mu, row.mult);
                }
                let _ = writeln!(s, "total\t{}", r.total);
                s
            };
            Ok((text, 0))
        }
        Command::Twine {
            type_label,
            sigma,
            weight,
            format,
            max_dim,
        } => {
            let r = twine_report(&type_label, &sigma, &weight, max_dim)?;
            let code = if r.ok { 0 } else { 1 };
            let text = if format == Format::Json {
                to_json(&r)
            } else {
                let mut s = jantzen_rows_table(&r.entries);
                let _ = writeln!(s, "sum\t{}\t{}\t{}", r.trace_sum, r.folded_sum, r.ok);
                s
            };
            Ok((text, code))
        }
        Command::Verify(args) => {
            let specs = match &args.catalog {
                Some(name) if name == "default" => default_catalog(),
                Some(name) => return Err(Error::UnknownType(format!("catalog {name}"))),
                None => args
                    .case
                    .iter()
                    .map(|c| CaseSpec::parse(c))
                    .collect::<Result<Vec<_>>>()?,
            };
            let opts = VerifyOptions {
                max_dim: args.max_dim,
                torus_samples: args.torus_samples,
                tol: args.tol,
                seed: args.seed,
            };
            let summary = verify_all(&specs, &opts)?;
            let code = if summary.ok { 0 } else { 1 };
            let text = if args.format == Format::Json {
                to_json(&summary)
            } else {
                let mut s = String::new();
                for c in &summary.cases {
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\t{} -> {}\tdim {}\tfolded {}\t{}",
                        if c.ok { "PASS" } else { "FAIL" },
                        c.case.type_label,
                        c.case.sigma,
                        c.case.lambda,
                        c.label,
                        c.dimension,
                        c.folded_dimension,
                        c.corollary.max_error
                    );
                }
                s
            };
            Ok((text, code))
        }
    }
}
