//! Command-line front end: parse expressions in the two-generator
//! calculus, run the library operations, and emit canonical text or JSON.

mod parser;

use std::io::Read;
use std::sync::Arc;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use genmat::error::Error;
use genmat::free::{bch, project_to_w};
use genmat::g3::{
    g3_compose, g3_exp, g3_g, g3_matrix_from_json, g3_matrix_to_json, g3_recover, p_matrix,
    G3Element,
};
use genmat::inner::{ad_matrix, compose, exp_ad, log_aut, reduce_welement_mod_class, AutMatrix};
use genmat::lie::{lie_form, lie_membership, LieDecomp, LieExpr};
use genmat::mat2::Gen;
use genmat::poly::VarSpec;
use genmat::rat::{rat_int, Rat};
use genmat::verify::run_suite;
use genmat::walg::WElement;

#[derive(ClapParser)]
#[command(
    name = "genmat",
    version,
    about = "Exact symbolic calculus for two generic traceless 2x2 matrices"
)]
struct Cli {
    /// Truncation order: total degree in the generators.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=64))]
    order: u32,

    /// Reduce the output modulo the given nilpotency class
    /// (normalize, ad, exp, and compose only).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..=64))]
    class: Option<u32>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand an expression into the (1, x, y, [x,y]) normal form.
    Normalize { expr: String },
    /// Test membership in the bracket span and print the decomposition.
    LieCheck { expr: String },
    /// Rewrite a bracket-span element as a combination of commutator words.
    LieForm { expr: String },
    /// Adjoint matrix of an element with zero scalar part.
    Ad { expr: String },
    /// Closed-form exponential of the adjoint action.
    Exp { expr: String },
    /// Recover (a, b, c) from the JSON of an exponential.
    Log { file: String },
    /// The element whose exponential is exp(FIRST)·exp(SECOND).
    Compose { first: String, second: String },
    /// Free-algebra composition series and its projection.
    Bch,
    /// The three-dimensional companion algebra (coordinates over s1..s6).
    G3 {
        #[command(subcommand)]
        command: G3Cmd,
    },
    /// Run the seeded verification suite.
    Verify {
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum G3Cmd {
    /// Adjoint matrix of the coordinates.
    P { x1: String, x2: String, x3: String },
    /// Scalar invariant driving the adjoint powers.
    G { x1: String, x2: String, x3: String },
    /// Closed-form exponential of the adjoint action.
    Exp { x1: String, x2: String, x3: String },
    /// Recover coordinates from the JSON of an exponential.
    Recover { file: String },
    /// Coordinates of the composed exponential.
    Compose {
        x1: String,
        x2: String,
        x3: String,
        y1: String,
        y2: String,
        y3: String,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = i32::from(e.use_stderr());
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => 1,
        Error::NotLie(_) | Error::NotDivisible => 2,
        Error::Consistency(_) => 3,
    }
}

fn run(cli: &Cli) -> genmat::Result<()> {
    match &cli.command {
        Cmd::Normalize { expr } => {
            let mut e = element(cli, expr)?;
            if let Some(class) = cli.class {
                e = reduce_welement_mod_class(&e, class);
            }
            emit(cli, e.to_string(), e.to_json());
        }
        Cmd::LieCheck { expr } => {
            no_class(cli)?;
            let d = lie_membership(&element(cli, expr)?)?;
            emit(cli, d.to_string(), d.to_json());
        }
        Cmd::LieForm { expr } => {
            no_class(cli)?;
            let d = lie_membership(&element(cli, expr)?)?;
            let full = full_lie_expr(&d)?;
            emit(cli, full.to_string(), full.to_json());
        }
        Cmd::Ad { expr } => {
            let mut m = ad_matrix(&element(cli, expr)?)?;
            if let Some(class) = cli.class {
                m = m.reduce_mod_class(class);
            }
            emit(cli, m.matrix().to_string(), m.to_json());
        }
        Cmd::Exp { expr } => {
            let mut q = exp_ad(&element(cli, expr)?)?;
            if let Some(class) = cli.class {
                q = q.reduce_mod_class(class);
            }
            emit(
                cli,
                format!("{}\ng = {}", q.matrix(), q.g()),
                q.to_json(),
            );
        }
        Cmd::Log { file } => {
            no_class(cli)?;
            let q = AutMatrix::from_json(&read_json(file)?)?;
            let triple = log_aut(&q)?;
            emit(
                cli,
                format!("a = {}\nb = {}\nc = {}", triple.a, triple.b, triple.c),
                json!({
                    "a": triple.a.to_json(),
                    "b": triple.b.to_json(),
                    "c": triple.c.to_json(),
                }),
            );
        }
        Cmd::Compose { first, second } => {
            let mut z = compose(&element(cli, first)?, &element(cli, second)?)?;
            if let Some(class) = cli.class {
                z = reduce_welement_mod_class(&z, class);
            }
            let d = lie_membership(&z)?;
            let full = full_lie_expr(&d)?;
            emit(
                cli,
                format!("element: {z}\nlie form: {full}"),
                json!({ "element": z.to_json(), "lie_form": full.to_json() }),
            );
        }
        Cmd::Bch => {
            no_class(cli)?;
            if cli.order > 12 {
                return Err(Error::usage(
                    "the free-series oracle is limited to order 12",
                ));
            }
            let series = bch(cli.order);
            let projection = project_to_w(&VarSpec::tuv(), &series);
            emit(
                cli,
                format!("series = {series}\nprojection = {projection}"),
                json!({ "series": series.to_json(), "projection": projection.to_json() }),
            );
        }
        Cmd::G3 { command } => run_g3(cli, command)?,
        Cmd::Verify { seed } => {
            no_class(cli)?;
            let outcomes = run_suite(*seed);
            let all_pass = outcomes.iter().all(|o| o.pass);
            let text = outcomes
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({ "name": o.name, "pass": o.pass, "detail": o.detail }))
                .collect();
            emit(
                cli,
                format!(
                    "{text}\n{}",
                    if all_pass {
                        "all checks passed".to_string()
                    } else {
                        let failed = outcomes.iter().filter(|o| !o.pass).count();
                        format!("{failed} check(s) failed")
                    }
                ),
                json!({ "seed": seed, "all_pass": all_pass, "checks": checks }),
            );
            if !all_pass {
                std::process::exit(3);
            }
        }
    }
    Ok(())
}

fn run_g3(cli: &Cli, command: &G3Cmd) -> genmat::Result<()> {
    no_class(cli)?;
    let vars = g3_vars();
    match command {
        G3Cmd::P { x1, x2, x3 } => {
            let m = p_matrix(&g3_element(cli, &vars, [x1, x2, x3])?);
            emit(cli, m.to_string(), g3_matrix_to_json(&m));
        }
        G3Cmd::G { x1, x2, x3 } => {
            let g = g3_g(&g3_element(cli, &vars, [x1, x2, x3])?);
            emit(cli, g.to_string(), g.to_json());
        }
        G3Cmd::Exp { x1, x2, x3 } => {
            let q = g3_exp(&g3_element(cli, &vars, [x1, x2, x3])?)?;
            emit(cli, q.to_string(), g3_matrix_to_json(&q));
        }
        G3Cmd::Recover { file } => {
            let q = g3_matrix_from_json(&vars, &read_json(file)?)?;
            let x = g3_recover(&q)?;
            emit(cli, x.to_string(), x.to_json());
        }
        G3Cmd::Compose {
            x1,
            x2,
            x3,
            y1,
            y2,
            y3,
        } => {
            let x = g3_element(cli, &vars, [x1, x2, x3])?;
            let y = g3_element(cli, &vars, [y1, y2, y3])?;
            let z = g3_compose(&x, &y)?;
            emit(cli, z.to_string(), z.to_json());
        }
    }
    Ok(())
}

fn g3_vars() -> Arc<VarSpec> {
    VarSpec::new(&[
        ("s1", 1),
        ("s2", 1),
        ("s3", 1),
        ("s4", 1),
        ("s5", 1),
        ("s6", 1),
    ])
}

/// Reads an argument, accepting `-` for stdin.
fn read_arg(text: &str) -> genmat::Result<String> {
    if text == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        Ok(text.to_string())
    }
}

fn read_json(path: &str) -> genmat::Result<Value> {
    let content = if path == "-" {
        read_arg("-")?
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::usage(format!("cannot read '{path}': {e}")))?
    };
    serde_json::from_str(&content).map_err(|e| Error::usage(format!("malformed JSON: {e}")))
}

fn element(cli: &Cli, text: &str) -> genmat::Result<WElement> {
    let src = read_arg(text)?;
    let ast = parser::parse(src.trim())?;
    parser::to_welement(&ast, &VarSpec::tuv(), cli.order)
}

fn g3_element(
    cli: &Cli,
    vars: &Arc<VarSpec>,
    coords: [&String; 3],
) -> genmat::Result<G3Element> {
    let mut polys = Vec::with_capacity(3);
    for text in coords {
        let src = read_arg(text)?;
        polys.push(parser::to_poly(&parser::parse(src.trim())?, vars)?);
    }
    Ok(G3Element::from_polys(
        [polys[0].clone(), polys[1].clone(), polys[2].clone()],
        cli.order,
    ))
}

/// Degree-1 part plus the commutator rewriting of the rest.
fn full_lie_expr(d: &LieDecomp) -> genmat::Result<LieExpr> {
    let zero = rat_int(0);
    let mut terms: Vec<(Rat, Vec<Gen>)> = Vec::new();
    if d.alpha() != &zero {
        terms.push((d.alpha().clone(), vec![Gen::X]));
    }
    if d.beta() != &zero {
        terms.push((d.beta().clone(), vec![Gen::Y]));
    }
    let order = d.a().order() + 3;
    let commutator_part = LieDecomp::from_polys(
        rat_int(0),
        rat_int(0),
        d.a().poly().clone(),
        d.b().poly().clone(),
        d.c().poly().clone(),
        order,
    );
    terms.extend(lie_form(&commutator_part)?.terms().iter().cloned());
    terms.sort_by(|(_, w1), (_, w2)| w1.len().cmp(&w2.len()).then_with(|| w1.cmp(w2)));
    Ok(LieExpr::new(terms))
}

fn no_class(cli: &Cli) -> genmat::Result<()> {
    if cli.class.is_some() {
        return Err(Error::usage(
            "the --class flag applies only to normalize, ad, exp, and compose",
        ));
    }
    Ok(())
}

fn emit(cli: &Cli, text: String, value: Value) {
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("JSON serialization cannot fail")
        ),
    }
}
