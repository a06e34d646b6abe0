//! `gwa`: command-line front end for weight modules, tensor products and
//! Grothendieck-ring arithmetic.

mod expr;
mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gwa_core::acceptance;
use gwa_core::graphmod::{graph_tensor, graph_validate};
use gwa_core::groth::{groth_mul_modules, hilbert_enumerated, hilbert_series_coeff, parse_element, reciprocal_series};
use gwa_core::modules::{composition_factors, decompose, Decomposition, IsoData};
use gwa_core::oracle::{kronecker_tensor, oracle_composition_series, oracle_decompose, oracle_iso_data, realize};
use gwa_core::orbit::OrbitConfig;
use gwa_core::tensor::tensor;
use gwa_core::{ErrorClass, GwaError};
use serde_json::{json, Value};

use expr::Renderable;

#[derive(Parser)]
#[command(
    name = "gwa",
    version,
    about = "Weight modules over rank-one generalized Weyl algebras"
)]
struct Cli {
    /// Orbit size.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// Conductor n of the scalar field Q(zeta_n); defaults to p.
    #[arg(long, global = true)]
    conductor: Option<u32>,
    /// Seed for randomized routines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Trivial,
    Quotient,
    Semisimple,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tensor product of two modules, decomposed into indecomposables.
    Tensor { a: String, b: String },
    /// Decompose one module.
    Decompose { m: String },
    /// Product of two Grothendieck-ring elements.
    GrothMul { a: String, b: String },
    /// Hilbert series coefficients of the path-class monomials.
    Hilbert {
        #[arg(long, default_value_t = 8)]
        maxdeg: u32,
    },
    /// Product in one of the split subrings.
    SplitMul {
        #[arg(long, value_enum)]
        ring: Ring,
        a: String,
        b: String,
    },
    /// Tensor product of two weighted graphs.
    GraphTensor { a: String, b: String },
    /// Draw a module, decomposition or graph.
    Render { input: String },
    /// Compare the symbolic tensor product with the explicit-matrix route.
    OracleCheck { a: String, b: String },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long)]
        criterion: Option<u32>,
    },
}

enum Failure {
    Gwa(GwaError),
    Io(String),
    Usage(String),
    Mismatch(String),
}

impl From<GwaError> for Failure {
    fn from(e: GwaError) -> Self {
        Failure::Gwa(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Gwa(e) => match e.class() {
                ErrorClass::Parse => 2,
                ErrorClass::Validation => 3,
                ErrorClass::Math => 4,
            },
            Failure::Mismatch(_) => 5,
        }
    }
}

type Outcome = Result<String, Failure>;

/// Reads `@file`, `-` for stdin, or returns the argument itself.
fn load(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(e.to_string()))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {}", path, e)))
    } else {
        Ok(arg.to_string())
    }
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn only_text_or_json(f: Format, cmd: &str) -> Result<(), Failure> {
    match f {
        Format::Json | Format::Text => Ok(()),
        _ => Err(Failure::Usage(format!("{} supports only --format json or text", cmd))),
    }
}

fn show_decomposition(f: Format, d: &Decomposition, json: Value) -> String {
    match f {
        Format::Json => pretty(json),
        Format::Text => render::decomposition_text(d),
        Format::Dot => render::to_dot(&render::decomposition_figures(d)),
        Format::Svg => render::to_svg(&render::decomposition_figures(d)),
    }
}

fn run(cli: &Cli) -> Outcome {
    let cfg = OrbitConfig::new(cli.p, cli.conductor.unwrap_or(cli.p))?;
    let f = cli.format;
    match &cli.cmd {
        Cmd::Tensor { a, b } => {
            let a = expr::parse_module(&load(a)?, &cfg)?;
            let b = expr::parse_module(&load(b)?, &cfg)?;
            let r = tensor(&a, &b)?;
            Ok(match f {
                Format::Text => format!(
                    "t = [{}]\n{}",
                    r.product_t,
                    render::decomposition_text(&r.decomposition)
                ),
                _ => show_decomposition(f, &r.decomposition, to_value(&r)),
            })
        }
        Cmd::Decompose { m } => {
            let d = match expr::parse_renderable(&load(m)?, &cfg)? {
                Renderable::Module(m) => decompose(&m)?,
                Renderable::Decomposition(d) => {
                    let mut out = Decomposition::new();
                    for (m, k) in d.iter() {
                        out.extend(&decompose(m)?, k);
                    }
                    out
                }
                Renderable::Graph(g) => gwa_core::graphmod::graph_to_module(&g)?,
            };
            Ok(show_decomposition(f, &d, to_value(&d)))
        }
        Cmd::GrothMul { a, b } => {
            only_text_or_json(f, "groth-mul")?;
            let a = groth_input(&load(a)?, &cfg)?;
            let b = groth_input(&load(b)?, &cfg)?;
            let r = groth_mul_modules(&a, &b)?;
            Ok(match f {
                Format::Json => pretty(to_value(&r)),
                _ => format!("{}\n", r),
            })
        }
        Cmd::Hilbert { maxdeg } => {
            only_text_or_json(f, "hilbert")?;
            let p = cfg.p();
            let closed: Vec<i64> = (0..=*maxdeg).map(|d| hilbert_series_coeff(p, d)).collect();
            let counted: Vec<i64> = (0..=*maxdeg).map(|d| hilbert_enumerated(p, d)).collect();
            let recip = reciprocal_series(p, *maxdeg);
            Ok(match f {
                Format::Json => pretty(json!({
                    "p": p,
                    "maxdeg": maxdeg,
                    "coefficients": closed,
                    "enumerated": counted,
                    "reciprocal": recip,
                })),
                _ => {
                    let mut s = String::from("deg  closed  enumerated  reciprocal\n");
                    for d in 0..=*maxdeg as usize {
                        s += &format!("{:>3}  {:>6}  {:>10}  {:>10}\n", d, closed[d], counted[d], recip[d]);
                    }
                    s
                }
            })
        }
        Cmd::SplitMul { ring, a, b } => {
            only_text_or_json(f, "split-mul")?;
            let (a, b) = (load(a)?, load(b)?);
            let (name, text, value) = match ring {
                Ring::Trivial => {
                    let r = gwa_core::split::trivial_mul_elements(
                        &split_input(&a, &cfg, expr::parse_trivial)?,
                        &split_input(&b, &cfg, expr::parse_trivial)?,
                    );
                    ("trivial", r.to_string(), to_value(&r))
                }
                Ring::Quotient => {
                    let r = gwa_core::split::quotient_mul_elements(
                        &cfg,
                        &split_input(&a, &cfg, expr::parse_quotient)?,
                        &split_input(&b, &cfg, expr::parse_quotient)?,
                    )?;
                    ("quotient", r.to_string(), to_value(&r))
                }
                Ring::Semisimple => {
                    let r = gwa_core::split::semisimple_mul(
                        &split_input(&a, &cfg, expr::parse_semisimple)?,
                        &split_input(&b, &cfg, expr::parse_semisimple)?,
                    );
                    ("semisimple", r.to_string(), to_value(&r))
                }
            };
            Ok(match f {
                Format::Json => pretty(json!({ "ring": name, "product": value })),
                _ => format!("{}\n", text),
            })
        }
        Cmd::GraphTensor { a, b } => {
            let a = expr::parse_graph(&load(a)?, &cfg)?;
            let b = expr::parse_graph(&load(b)?, &cfg)?;
            graph_validate(&a)?;
            graph_validate(&b)?;
            let g = graph_tensor(&a, &b)?;
            Ok(match f {
                Format::Json => pretty(to_value(&g)),
                Format::Text => render::graph_text(&g),
                Format::Dot => render::to_dot(&render::graph_figures(&g)),
                Format::Svg => render::to_svg(&render::graph_figures(&g)),
            })
        }
        Cmd::Render { input } => {
            let figs = match expr::parse_renderable(&load(input)?, &cfg)? {
                Renderable::Module(m) => {
                    if f == Format::Text {
                        return Ok(render::module_text(&m));
                    }
                    if f == Format::Json {
                        return Ok(pretty(to_value(&m)));
                    }
                    render::module_figures(&m)
                }
                Renderable::Decomposition(d) => {
                    if f == Format::Text {
                        return Ok(render::decomposition_text(&d));
                    }
                    if f == Format::Json {
                        return Ok(pretty(to_value(&d)));
                    }
                    render::decomposition_figures(&d)
                }
                Renderable::Graph(g) => {
                    graph_validate(&g)?;
                    if f == Format::Text {
                        return Ok(render::graph_text(&g));
                    }
                    if f == Format::Json {
                        return Ok(pretty(to_value(&g)));
                    }
                    render::graph_figures(&g)
                }
            };
            Ok(match f {
                Format::Dot => render::to_dot(&figs),
                _ => render::to_svg(&figs),
            })
        }
        Cmd::OracleCheck { a, b } => {
            only_text_or_json(f, "oracle-check")?;
            let a = expr::parse_module(&load(a)?, &cfg)?;
            let b = expr::parse_module(&load(b)?, &cfg)?;
            oracle_check(f, cli.seed, &a, &b)
        }
        Cmd::Selftest { criterion } => {
            only_text_or_json(f, "selftest")?;
            let reports = match criterion {
                Some(id) => vec![acceptance::run(*id)
                    .ok_or_else(|| Failure::Usage(format!("no criterion {}; expected 1 to 9", id)))?],
                None => acceptance::run_all(),
            };
            let failed = reports.iter().filter(|r| !r.passed).count();
            let body = match f {
                Format::Json => pretty(Value::Array(
                    reports
                        .iter()
                        .map(|r| {
                            json!({
                                "id": r.id,
                                "name": r.name,
                                "passed": r.passed,
                                "elapsed_secs": r.elapsed.as_secs_f64(),
                                "limit_secs": r.limit.as_secs_f64(),
                                "detail": r.detail,
                            })
                        })
                        .collect(),
                )),
                _ => reports.iter().map(|r| format!("{}\n", r)).collect(),
            };
            if failed > 0 {
                return Err(Failure::Mismatch(body));
            }
            Ok(body)
        }
    }
}

fn groth_input(s: &str, cfg: &OrbitConfig) -> Result<gwa_core::groth::GrothElement, Failure> {
    if s.trim_start().starts_with('{') {
        Ok(expr::from_json(s.trim())?)
    } else {
        Ok(parse_element(s, cfg)?)
    }
}

/// A split-ring element as text, as a bare JSON combination, or as the
/// JSON written by `split-mul` itself.
fn split_input<K>(
    s: &str,
    cfg: &OrbitConfig,
    parse: fn(&str, &OrbitConfig) -> gwa_core::Result<gwa_core::split::Combination<K>>,
) -> Result<gwa_core::split::Combination<K>, Failure>
where
    K: Ord + Clone + serde::de::DeserializeOwned,
{
    let t = s.trim();
    if !t.starts_with('{') {
        return Ok(parse(s, cfg)?);
    }
    let v: Value = expr::from_json(t)?;
    let inner = v.get("product").cloned().unwrap_or(v);
    serde_json::from_value(inner).map_err(|e| {
        Failure::Gwa(GwaError::Parse {
            offset: 0,
            msg: format!("invalid JSON element: {}", e),
        })
    })
}

fn oracle_check(f: Format, seed: u64, a: &gwa_core::modules::Module, b: &gwa_core::modules::Module) -> Outcome {
    let sym = tensor(a, b)?;
    let kron = kronecker_tensor(&realize(a), &realize(b))?;
    kron.check_relations()?;
    let iso = IsoData::of(&sym.decomposition)?.isomorphic(&oracle_iso_data(&kron)?);
    let exact = oracle_decompose(&kron).ok();
    let exact_ok = exact.as_ref().map_or(true, |d| *d == sym.decomposition);
    finish(f, seed, &sym.decomposition, exact.as_ref(), iso && exact_ok, &kron)
}

fn finish(
    f: Format,
    seed: u64,
    sym: &Decomposition,
    exact: Option<&Decomposition>,
    matched: bool,
    kron: &gwa_core::oracle::ExplicitModule,
) -> Outcome {
    let mut factors = Decomposition::new();
    let mut factors_ok = true;
    for (m, k) in sym.iter() {
        match composition_factors(m) {
            Ok(cf) => factors.extend(&cf, k),
            Err(_) => factors_ok = false,
        }
    }
    let series = oracle_composition_series(kron, seed).ok();
    let series_match = match (&series, factors_ok) {
        (Some(s), true) => Some(*s == factors),
        _ => None,
    };
    let matched = matched && series_match != Some(false);
    let status = if matched { "MATCH" } else { "MISMATCH" };
    let body = match f {
        Format::Json => pretty(json!({
            "status": status,
            "tensor": to_value(sym),
            "oracle": exact.map(to_value),
            "composition_factors_match": series_match,
        })),
        _ => {
            let mut s = format!("{}\n  tensor: {}\n", status, sym);
            match exact {
                Some(d) => s += &format!("  oracle: {}\n", d),
                None => s += "  oracle: compared up to isomorphism (spectrum does not split)\n",
            }
            if let Some(ok) = series_match {
                s += &format!("  composition factors: {}\n", if ok { "agree" } else { "differ" });
            }
            s
        }
    };
    if matched {
        Ok(body)
    } else {
        Err(Failure::Mismatch(body))
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|body| emit(&cli, &body));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                Failure::Gwa(g) => eprintln!("error: {}", g),
                Failure::Io(m) | Failure::Usage(m) => eprintln!("error: {}", m),
                Failure::Mismatch(body) => {
                    let _ = emit(&cli, body);
                }
            }
            ExitCode::from(e.code())
        }
    }
}
