//! The `ap-forge` command line: argument parsing, input loading, and JSON
//! run reports.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use ap_forge::acceptance::{self, DEFAULT_SEED};
use ap_forge::artin::{
    abelianization_matrix, invert, is_torelli, multiply_with, random_torelli, ArtinPresentation, ProductOrder,
    ValidationError, PRODUCT_ORDER,
};
use ap_forge::corpus::{bundled, BUNDLED};
use ap_forge::form::{classify, donaldson_obstructed, realize_form, theorem_witness, Witness};
use ap_forge::grammar::{
    parse_braid_file, parse_group_file, parse_presentation_file, write_group, write_presentation, AP_HEADER,
    BRAID_HEADER, FP_HEADER,
};
use ap_forge::group::{
    hom_count, named_group, pi, tietze_simplify_with_map, todd_coxeter, triality_check, Triality, DEFAULT_NODE_CAP,
};
use ap_forge::knot::{alexander_polynomial, knot_group, PRESENTATION_RULE};
use ap_forge::{FpGroup, SymMat, Word};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const REPORT_FORMAT: &str = "ap-forge report v1";
pub const THREADS_ENV: &str = "AP_FORGE_THREADS";

pub mod exit {
    pub const OK: i32 = 0;
    /// Acceptance criteria failed in `selftest`.
    pub const FAILED: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const UNKNOWN: i32 = 3;
    pub const VIOLATION: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "ap-forge", version, about = "Exact computation with Artin presentations")]
pub struct Cli {
    /// Seed for every randomized corpus.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Forward,
    Reversed,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Artin equation.
    Validate { files: Vec<String> },
    /// Product of two presentations.
    Mul {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "forward")]
        order: OrderArg,
    },
    /// Inverse presentation.
    Inv { file: String },
    /// Decide whether a presentation is Torelli, or sample a random one.
    Torelli {
        file: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
    /// The form A(r) and H_1.
    Abelian { files: Vec<String> },
    /// Coset enumeration of the presented group.
    Enumerate {
        files: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
        /// Simplify by Tietze moves first.
        #[arg(long)]
        tietze: bool,
    },
    /// Count homomorphisms into a finite group.
    Homs {
        file: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        budget: u64,
    },
    /// Check that a finite perfect group is trivial or of order 120.
    Triality {
        files: Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Alexander polynomial of a knot group.
    Alexander {
        files: Vec<String>,
        /// Component `k_i` for `.ap` inputs.
        #[arg(long, default_value_t = 1)]
        knot: usize,
    },
    /// Presentation of the knot group of `k_i`.
    KnotGroup {
        file: String,
        #[arg(long, default_value_t = 1)]
        knot: usize,
    },
    /// Classify a symmetric integer form.
    Form {
        file: Option<String>,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        e8: bool,
        /// Also construct a presentation with this form.
        #[arg(long)]
        realize: bool,
    },
    /// Donaldson obstruction and bounded representation search.
    Donaldson {
        file: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        e8: bool,
        #[arg(long, default_value_t = acceptance::WITNESS_BUDGET)]
        budget: u64,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Serialize, Debug)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Serialize, Debug)]
pub struct RunReport {
    pub format: &'static str,
    pub command: String,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub inputs_digest: String,
    pub versions: BTreeMap<&'static str, &'static str>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<u128>,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: exit::INVALID_INPUT, message: message.into() }
}

/// Inputs are file paths, or `bundled:<name>` for the built-in corpus.
#[derive(Default)]
struct Loader {
    digests: Vec<InputDigest>,
}

enum Input {
    Presentation(usize, Vec<Word>),
    Group(FpGroup),
}

impl Loader {
    fn read(&mut self, name: &str) -> Result<String, Failure> {
        let text = match name.strip_prefix("bundled:") {
            Some(b) => bundled(b)
                .map(str::to_string)
                .ok_or_else(|| invalid(format!("no bundled file {b}; known: {}", bundled_names())))?,
            None => fs::read_to_string(name).map_err(|e| invalid(format!("{name}: {e}")))?,
        };
        self.digests.push(InputDigest { name: name.to_string(), sha256: hex::encode(Sha256::digest(text.as_bytes())) });
        Ok(text)
    }

    fn input(&mut self, name: &str) -> Result<Input, Failure> {
        let text = self.read(name)?;
        let ext = Path::new(name.strip_prefix("bundled:").unwrap_or(name)).extension().and_then(|e| e.to_str());
        let err = |e: ap_forge::grammar::ParseError| invalid(format!("{name}: {e}"));
        match ext {
            Some("fp") => {
                let (g, rels) = parse_group_file(&text).map_err(err)?;
                Ok(Input::Group(FpGroup::new(g, rels)))
            }
            Some("braid") => {
                let (b, f) = parse_braid_file(&text).map_err(err)?;
                let r = ArtinPresentation::from_braid(&b, &f).map_err(|e| invalid(format!("{name}: {e}")))?;
                Ok(Input::Presentation(r.n(), r.relators().to_vec()))
            }
            _ => {
                let p = parse_presentation_file(&text).map_err(err)?;
                Ok(Input::Presentation(p.n, p.relators))
            }
        }
    }

    fn presentation(&mut self, name: &str) -> Result<ArtinPresentation, Failure> {
        match self.input(name)? {
            Input::Presentation(n, rels) => {
                ArtinPresentation::validate(n, rels).map_err(|e| invalid(format!("{name}: {e}")))
            }
            Input::Group(_) => Err(invalid(format!("{name}: expected an Artin presentation"))),
        }
    }

    fn group(&mut self, name: &str) -> Result<FpGroup, Failure> {
        match self.input(name)? {
            Input::Presentation(n, rels) => Ok(FpGroup::new(n, rels)),
            Input::Group(g) => Ok(g),
        }
    }
}

fn bundled_names() -> String {
    BUNDLED.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
}

fn relator_strings(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::to_string).collect()
}

fn parse_matrix(text: &str) -> Result<SymMat, Failure> {
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| r.split(',').map(|v| v.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(|e| invalid(format!("matrix: {e}")))?;
    SymMat::from_i64_rows(&rows).map_err(|e| invalid(format!("matrix: {e}")))
}

fn form_input(
    loader: &mut Loader,
    file: &Option<String>,
    matrix: &Option<String>,
    e8: bool,
) -> Result<(SymMat, Option<ArtinPresentation>), Failure> {
    match (file, matrix, e8) {
        (Some(f), None, false) => {
            let r = loader.presentation(f)?;
            let a = abelianization_matrix(&r).map_err(|e| invalid(e.to_string()))?;
            Ok((a, Some(r)))
        }
        (None, Some(m), false) => Ok((parse_matrix(m)?, None)),
        (None, None, true) => Ok((SymMat::e8(), None)),
        _ => Err(invalid("give exactly one of FILE, --matrix, --e8")),
    }
}

/// Runs one batch item per file in parallel, keeping input order.
fn batch<F>(loader: &mut Loader, files: &[String], f: F) -> Result<(Value, i32), Failure>
where
    F: Fn(Input) -> (Value, i32) + Sync,
{
    if files.is_empty() {
        return Err(invalid("no input files"));
    }
    let inputs = files.iter().map(|n| loader.input(n)).collect::<Result<Vec<_>, _>>()?;
    let out: Vec<(Value, i32)> = inputs.into_par_iter().map(&f).collect();
    let code = out.iter().map(|(_, c)| *c).max().unwrap_or(exit::OK);
    let values: Vec<Value> =
        files.iter().zip(out).map(|(name, (mut v, _))| {
            v["input"] = json!(name);
            v
        }).collect();
    Ok((Value::Array(values), code))
}

fn as_presentation(input: Input) -> Result<ArtinPresentation, ValidationError> {
    match input {
        Input::Presentation(n, rels) => ArtinPresentation::validate(n, rels),
        Input::Group(g) => ArtinPresentation::validate(g.generators(), g.relators().to_vec()),
    }
}

fn validation_json(input: Input) -> (Value, i32) {
    match as_presentation(input) {
        Ok(r) => (json!({ "valid": true, "n": r.n() }), exit::OK),
        Err(ValidationError::Equation(v)) => (
            json!({
                "valid": false,
                "reason": v.to_string(),
                "lhs": v.lhs.to_string(),
                "rhs": v.rhs.to_string(),
                "first_divergence": v.first_divergence,
            }),
            exit::INVALID_INPUT,
        ),
        Err(e) => (json!({ "valid": false, "reason": e.to_string() }), exit::INVALID_INPUT),
    }
}

fn order_name(o: ProductOrder) -> &'static str {
    match o {
        ProductOrder::Forward => "forward",
        ProductOrder::Reversed => "reversed",
    }
}

fn matching_bundled(r: &ArtinPresentation) -> Vec<&'static str> {
    BUNDLED
        .iter()
        .filter(|(n, _)| n.ends_with(".ap"))
        .filter(|(_, text)| {
            parse_presentation_file(text).is_ok_and(|p| p.n == r.n() && p.relators == r.relators())
        })
        .map(|(n, _)| *n)
        .collect()
}

fn run_command(cli: &Cli, loader: &mut Loader) -> Result<(Value, i32), Failure> {
    match &cli.command {
        Command::Validate { files } => batch(loader, files, validation_json),
        Command::Mul { left, right, order } => {
            let (r, s) = (loader.presentation(left)?, loader.presentation(right)?);
            let orders = match order {
                OrderArg::Forward => vec![ProductOrder::Forward],
                OrderArg::Reversed => vec![ProductOrder::Reversed],
                OrderArg::Both => vec![ProductOrder::Forward, ProductOrder::Reversed],
            };
            let mut products = Vec::new();
            for o in orders {
                let p = multiply_with(&r, &s, o).map_err(|e| invalid(e.to_string()))?;
                products.push(json!({
                    "order": order_name(o),
                    "n": p.n(),
                    "relators": relator_strings(p.relators()),
                    "presentation": write_presentation(p.n(), p.relators()),
                    "matches_bundled": matching_bundled(&p),
                }));
            }
            Ok((json!({ "default_order": order_name(PRODUCT_ORDER), "products": products }), exit::OK))
        }
        Command::Inv { file } => {
            let r = loader.presentation(file)?;
            let i = invert(&r).map_err(|e| invalid(e.to_string()))?;
            Ok((
                json!({ "relators": relator_strings(i.relators()), "presentation": write_presentation(i.n(), i.relators()) }),
                exit::OK,
            ))
        }
        Command::Torelli { file, n, size } => match file {
            Some(f) => {
                let r = loader.presentation(f)?;
                Ok((json!({ "torelli": is_torelli(&r) }), exit::OK))
            }
            None => {
                if *n < 2 {
                    return Err(invalid("--n must be at least 2"));
                }
                let t = random_torelli(*n, cli.seed, *size).map_err(|e| invalid(e.to_string()))?;
                Ok((
                    json!({
                        "torelli": is_torelli(&t),
                        "relators": relator_strings(t.relators()),
                        "presentation": write_presentation(t.n(), t.relators()),
                    }),
                    exit::OK,
                ))
            }
        },
        Command::Abelian { files } => batch(loader, files, |input| match as_presentation(input) {
            Ok(r) => {
                let a = abelianization_matrix(&r).expect("valid presentations have symmetric forms");
                let h1 = pi(&r).abelianization();
                (json!({ "matrix": a, "torelli": is_torelli(&r), "h1": h1.to_string() }), exit::OK)
            }
            Err(e) => (json!({ "error": e.to_string() }), exit::INVALID_INPUT),
        }),
        Command::Enumerate { files, max_cosets, tietze } => {
            let (cap, tz) = (*max_cosets, *tietze);
            batch(loader, files, move |input| {
                let g = match input {
                    Input::Presentation(n, rels) => FpGroup::new(n, rels),
                    Input::Group(g) => g,
                };
                let g = if tz { tietze_simplify_with_map(&g, 64).group } else { g };
                match todd_coxeter(&g, &[], cap) {
                    Ok(t) => (json!({ "outcome": "closed", "order": t.index() }), exit::OK),
                    Err(o) => (json!({ "outcome": "unknown", "max_cosets": o.max_cosets }), exit::UNKNOWN),
                }
            })
        }
        Command::Homs { file, target, budget } => {
            let g = loader.group(file)?;
            let t = named_group(target).ok_or_else(|| invalid(format!("unknown target {target}")))?;
            match hom_count(&g, &t, *budget) {
                Ok(c) => Ok((json!({ "target": t.name(), "target_order": t.order(), "counts": c }), exit::OK)),
                Err(e) => Ok((json!({ "target": t.name(), "outcome": "unknown", "reason": e.to_string() }), exit::UNKNOWN)),
            }
        }
        Command::Triality { files, max_cosets } => {
            let cap = *max_cosets;
            batch(loader, files, move |input| match as_presentation(input) {
                Ok(r) => {
                    let t = triality_check(&r, cap);
                    let code = match t {
                        Triality::Violation { .. } => exit::VIOLATION,
                        Triality::Unknown { .. } => exit::UNKNOWN,
                        _ => exit::OK,
                    };
                    (serde_json::to_value(t).expect("serializable"), code)
                }
                Err(e) => (json!({ "error": e.to_string() }), exit::INVALID_INPUT),
            })
        }
        Command::Alexander { files, knot } => {
            let k = *knot;
            batch(loader, files, move |input| {
                let (g, rule) = match input {
                    Input::Group(g) => (g, None),
                    Input::Presentation(n, rels) => match ArtinPresentation::validate(n, rels) {
                        Ok(r) => match knot_group(&r, k) {
                            Ok(g) => (g, Some(PRESENTATION_RULE)),
                            Err(e) => return (json!({ "error": e.to_string() }), exit::INVALID_INPUT),
                        },
                        Err(e) => return (json!({ "error": e.to_string() }), exit::INVALID_INPUT),
                    },
                };
                match alexander_polynomial(&g) {
                    Ok(p) => (
                        json!({ "polynomial": p, "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), "rule": rule }),
                        exit::OK,
                    ),
                    Err(e) => (json!({ "outcome": "not_computable", "reason": e.to_string() }), exit::INVALID_INPUT),
                }
            })
        }
        Command::KnotGroup { file, knot } => {
            let r = loader.presentation(file)?;
            let g = knot_group(&r, *knot).map_err(|e| invalid(e.to_string()))?;
            let p = g.peripheral().expect("knot groups carry peripheral words");
            Ok((
                json!({
                    "rule": PRESENTATION_RULE,
                    "generators": g.generators(),
                    "relators": relator_strings(g.relators()),
                    "meridian": p.meridian.to_string(),
                    "longitude": p.longitude.to_string(),
                    "group": write_group(g.generators(), g.relators()),
                }),
                exit::OK,
            ))
        }
        Command::Form { file, matrix, e8, realize } => {
            let (m, _) = form_input(loader, file, matrix, *e8)?;
            let mut v = json!({ "report": classify(&m) });
            if *realize {
                let r = realize_form(&m).map_err(|e| invalid(e.to_string()))?;
                v["realization"] = json!(write_presentation(r.n(), r.relators()));
            }
            Ok((v, exit::OK))
        }
        Command::Donaldson { file, matrix, e8, budget } => {
            let (m, r) = form_input(loader, file, matrix, *e8)?;
            let r = match r {
                Some(r) => r,
                None => realize_form(&m).map_err(|e| invalid(e.to_string()))?,
            };
            let w = theorem_witness(&r, *budget).map_err(|e| invalid(e.to_string()))?;
            let code = if matches!(w, Witness::Inconclusive { .. }) { exit::UNKNOWN } else { exit::OK };
            Ok((json!({ "obstruction": donaldson_obstructed(&m), "witness": w }), code))
        }
        Command::Selftest => {
            let results = acceptance::run_all(cli.seed);
            let violation = results.iter().any(|r| r.id == 7 && !r.passed);
            let all = results.iter().all(|r| r.passed);
            let lines: Vec<String> = results.iter().map(|r| r.line()).collect();
            for l in &lines {
                eprintln!("{l}");
            }
            let code = if all { exit::OK } else if violation { exit::VIOLATION } else { exit::FAILED };
            let mut criteria = serde_json::to_value(&results).expect("serializable");
            if !cli.timings {
                for c in criteria.as_array_mut().expect("array") {
                    c.as_object_mut().expect("object").remove("elapsed_ms");
                }
            }
            Ok((json!({ "passed": all, "criteria": criteria }), code))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Mul { .. } => "mul",
        Command::Inv { .. } => "inv",
        Command::Torelli { .. } => "torelli",
        Command::Abelian { .. } => "abelian",
        Command::Enumerate { .. } => "enumerate",
        Command::Homs { .. } => "homs",
        Command::Triality { .. } => "triality",
        Command::Alexander { .. } => "alexander",
        Command::KnotGroup { .. } => "knot-group",
        Command::Form { .. } => "form",
        Command::Donaldson { .. } => "donaldson",
        Command::Selftest => "selftest",
    }
}

/// Executes a parsed command. Reports are produced for failures too.
pub fn run(cli: &Cli) -> (RunReport, i32) {
    let start = Instant::now();
    let mut loader = Loader::default();
    let (results, code) = match run_command(cli, &mut loader) {
        Ok(v) => v,
        Err(f) => (json!({ "error": f.message }), f.code),
    };
    let mut h = Sha256::new();
    for d in &loader.digests {
        h.update(d.name.as_bytes());
        h.update([0]);
        h.update(d.sha256.as_bytes());
        h.update([0]);
    }
    let versions = BTreeMap::from([
        ("ap-forge", env!("CARGO_PKG_VERSION")),
        ("presentation", AP_HEADER),
        ("group", FP_HEADER),
        ("braid", BRAID_HEADER),
    ]);
    let report = RunReport {
        format: REPORT_FORMAT,
        command: command_name(&cli.command).to_string(),
        seed: cli.seed,
        inputs: loader.digests,
        inputs_digest: hex::encode(h.finalize()),
        versions,
        results,
        timings_ms: cli.timings.then(|| start.elapsed().as_millis()),
    };
    (report, code)
}

/// Caps the global thread pool from `AP_FORGE_THREADS`.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("{THREADS_ENV}={v} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

/// Parses `args`, runs, prints the JSON report and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return exit::INVALID_INPUT;
    }
    let (report, code) = run(&cli);
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("{path}: {e}");
            return exit::INVALID_INPUT;
        }
    }
    code
}
