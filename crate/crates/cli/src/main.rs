use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use regelem::trace::{verify_events, verify_trace, write_trace, TraceError};
use regelem::{
    annihilator, default_fuel, find_regular_element, is_prime, maximal_orthogonal_ideals,
    parse_and_make_ring, parse_element, parse_generators, regularity_witness, Element, Error, Ring,
};

const EXIT_NOT_REGULAR: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Regular elements of regular ideals in finite commutative rings.
///
/// Rings are written like `Z/6`, `Z/2[x]/(x^2+x+1)` or `Z/2 x Z/3`; elements
/// like `5`, `x+1` or `(1,2)`; ideals as comma-separated generators.
///
/// Exit codes: 0 success, 1 ideal not regular (or trace rejected by `verify`),
/// 2 parse or usage error, 3 internal invariant violation.
#[derive(Parser)]
#[command(name = "regelem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a regular element of a regular ideal.
    Find {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        /// Write the run as JSON lines to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Iteration budget; defaults to 4 times the ring size.
        #[arg(long)]
        fuel: Option<usize>,
    },
    /// Print the annihilator of an element.
    Ann {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        elem: String,
    },
    /// Print the maximal annihilator ideals of nonzero elements.
    Maxorth {
        #[arg(long)]
        ring: String,
    },
    /// Decide whether an ideal is regular.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Replay a trace file written by `find --trace` and re-check every step.
    Verify {
        #[arg(long)]
        trace: PathBuf,
    },
}

fn usage(e: impl Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn joined(xs: impl IntoIterator<Item = Element>) -> String {
    xs.into_iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn ring_and_ideal(ring: &str, ideal: &str) -> Result<(Ring, Vec<Element>), ExitCode> {
    let r = parse_and_make_ring(ring).map_err(|e| usage(format!("--ring: {e}")))?;
    let gens = parse_generators(ideal, &r).map_err(|e| usage(format!("--ideal: {e}")))?;
    Ok((r, gens))
}

fn find(ring: &str, ideal: &str, trace: Option<PathBuf>, fuel: Option<usize>) -> ExitCode {
    let (r, gens) = match ring_and_ideal(ring, ideal) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let fuel = fuel.unwrap_or_else(|| default_fuel(&r));
    let run = match find_regular_element(&r, &gens, fuel) {
        Ok(run) => run,
        Err(e @ Error::IdealNotRegular { .. }) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_NOT_REGULAR);
        }
        Err(e) if e.is_internal() => {
            eprintln!("internal error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
        Err(e) => return usage(e),
    };
    match verify_events(&r, &gens, &run.trace) {
        Ok(a) if a == run.element => {}
        Ok(a) => {
            eprintln!("internal error: trace ends at {a} but the run returned {}", run.element);
            return ExitCode::from(EXIT_INTERNAL);
        }
        Err(e) => {
            eprintln!("internal error: trace failed replay: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    if let Some(path) = trace {
        if let Err(e) = fs::write(&path, write_trace(&r, &gens, fuel, &run.trace)) {
            return usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    println!("{}", run.element);
    println!("regular: true");
    ExitCode::SUCCESS
}

fn ann(ring: &str, elem: &str) -> ExitCode {
    let r = match parse_and_make_ring(ring) {
        Ok(r) => r,
        Err(e) => return usage(format!("--ring: {e}")),
    };
    let v = match parse_element(elem, &r) {
        Ok(v) => v,
        Err(e) => return usage(format!("--elem: {e}")),
    };
    let a = annihilator(&r, &v).expect("element parsed in this ring");
    println!("{}", joined(a.elements()));
    ExitCode::SUCCESS
}

fn maxorth(ring: &str) -> ExitCode {
    let r = match parse_and_make_ring(ring) {
        Ok(r) => r,
        Err(e) => return usage(format!("--ring: {e}")),
    };
    for a in maximal_orthogonal_ideals(&r) {
        println!("v={} {} prime:{}", a.source(), a.ideal(), is_prime(&a));
    }
    ExitCode::SUCCESS
}

fn check(ring: &str, ideal: &str) -> ExitCode {
    let (r, gens) = match ring_and_ideal(ring, ideal) {
        Ok(x) => x,
        Err(code) => return code,
    };
    match regularity_witness(&r, &gens).expect("generators parsed in this ring") {
        None => println!("regular"),
        Some(x) => println!("not regular; witness x={x}"),
    }
    ExitCode::SUCCESS
}

fn verify(path: PathBuf) -> ExitCode {
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
    };
    match verify_trace(&text) {
        Ok(a) => {
            println!("valid; regular element {a}");
            ExitCode::SUCCESS
        }
        Err(e @ (TraceError::Invalid { .. } | TraceError::Incomplete)) => {
            eprintln!("trace rejected: {e}");
            ExitCode::from(EXIT_NOT_REGULAR)
        }
        Err(e) => usage(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Find {
            ring,
            ideal,
            trace,
            fuel,
        } => find(&ring, &ideal, trace, fuel),
        Command::Ann { ring, elem } => ann(&ring, &elem),
        Command::Maxorth { ring } => maxorth(&ring),
        Command::Check { ring, ideal } => check(&ring, &ideal),
        Command::Verify { trace } => verify(trace),
    }
}
