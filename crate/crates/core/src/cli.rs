//! Command-line front end. `run` is the whole program; the binary only
//! forwards the process arguments and streams.

use std::collections::HashMap;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::construction::{automaton_json, build, dump_table};
use crate::engine::{prove, readable, ProveResult};
use crate::formula::{parse_at, print, Formula};
use crate::machine::Budget;
use crate::oracle::decide_prop;
use crate::proofterm::{parse_term_at, print_term, type_check, Context};

#[derive(Parser, Debug)]
#[command(name = "arcadian", version, about = "Proof search for first-order intuitionistic logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a proof and print the extracted term or the run.
    Prove {
        formula: String,
        /// Maximal run depth.
        #[arg(long, default_value_t = 24)]
        fuel: u32,
        /// Maximal size of the working domain.
        #[arg(long, default_value_t = 3)]
        max_eigen: u32,
        #[arg(long, value_enum, default_value_t = Emit::Term)]
        emit: Emit,
    },
    /// Type-check a proof term against a formula.
    Check {
        #[arg(long)]
        formula: String,
        /// File holding the term, or `-` for standard input.
        #[arg(long)]
        term: String,
    },
    /// Build the automaton of a formula.
    Automaton {
        formula: String,
        /// Print the instruction table (the default).
        #[arg(long, conflicts_with = "json")]
        dump: bool,
        /// Print the automaton as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Decide a propositional formula with the sequent-calculus oracle.
    Oracle { formula: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Term,
    Json,
    Dot,
}

/// Diagnostic for exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Fatal {
        Fatal(e.to_string())
    }
}

fn read_formula(text: &str, arities: &mut HashMap<String, usize>) -> Result<Formula, Fatal> {
    parse_at(text, arities).map_err(|e| Fatal(format!("formula {e}")))
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {}", msg.lines().next().unwrap_or(""));
            2
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Fatal> {
    let mut arities = HashMap::new();
    match cmd {
        Command::Prove {
            formula,
            fuel,
            max_eigen,
            emit,
        } => {
            let phi = read_formula(&formula, &mut arities)?;
            if !phi.free_vars().is_empty() {
                writeln!(err, "warning: open formula; proving its universal closure")?;
            }
            let attempt = prove(&phi, Budget::new(fuel, max_eigen))?;
            match &attempt.result {
                ProveResult::Proved { run, term, .. } => {
                    let aut = attempt.automaton();
                    match emit {
                        Emit::Term => writeln!(out, "{}", print_term(&readable(term, &attempt.formula)))?,
                        Emit::Json => writeln!(out, "{}", serde_json::to_string_pretty(&run.to_json(aut))?)?,
                        Emit::Dot => write!(out, "{}", run.to_dot(aut))?,
                    }
                    Ok(0)
                }
                ProveResult::NotFoundWithinFuel(_) | ProveResult::Exhausted(_) => {
                    writeln!(out, "no proof within fuel")?;
                    Ok(1)
                }
            }
        }
        Command::Check { formula, term } => {
            let phi = read_formula(&formula, &mut arities)?;
            let mut text = String::new();
            if term == "-" {
                stdin.read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(&term).map_err(|e| Fatal(format!("{term}: {e}")))?;
            }
            let m = parse_term_at(&text, &mut arities).map_err(|e| Fatal(format!("term {e}")))?;
            match type_check(&Context::new(), &m, &phi) {
                Ok(()) => {
                    writeln!(out, "ok")?;
                    Ok(0)
                }
                Err(e) => Err(Fatal(format!("type error: {e}"))),
            }
        }
        Command::Automaton { formula, json, .. } => {
            let phi = read_formula(&formula, &mut arities)?;
            if !phi.free_vars().is_empty() {
                writeln!(err, "warning: open formula; using its universal closure")?;
            }
            let c = build(&phi.universal_closure())?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&automaton_json(&c.automaton))?)?;
            } else {
                write!(out, "{}", dump_table(&c.automaton, &c.table))?;
            }
            Ok(0)
        }
        Command::Oracle { formula } => {
            let phi = read_formula(&formula, &mut arities)?;
            if decide_prop(&phi)? {
                writeln!(out, "valid")?;
                Ok(0)
            } else {
                writeln!(out, "invalid ({} is not intuitionistically valid)", print(&phi))?;
                Ok(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("arcadian").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn prove_prints_term() {
        let (code, out, _) = call(&["prove", "(forall x. P(x)) -> forall y. exists x. P(x)"], "");
        assert_eq!(code, 0);
        assert!(out.contains("pack") && out.contains("\\\\"), "{out}");
    }

    #[test]
    fn peirce_not_found() {
        let (code, out, _) = call(&["prove", "((p -> q) -> p) -> p", "--fuel", "20"], "");
        assert_eq!(code, 1);
        assert_eq!(out.trim(), "no proof within fuel");
    }

    #[test]
    fn check_from_stdin() {
        let (code, out, _) = call(&["check", "--formula", "p -> p", "--term", "-"], "\\x:p. x");
        assert_eq!((code, out.trim()), (0, "ok"));
        let (code, _, err) = call(&["check", "--formula", "p -> q", "--term", "-"], "\\x:p. x");
        assert_eq!(code, 2);
        assert!(err.starts_with("error: type error"), "{err}");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let (code, _, err) = call(&["prove", "p -> (q"], "");
        assert_eq!(code, 2);
        assert!(err.contains("1:"), "{err}");
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn oracle_and_usage() {
        assert_eq!(call(&["oracle", "p \\/ ~p"], "").0, 1);
        assert_eq!(call(&["oracle", "~~(p \\/ ~p)"], "").1, "valid\n");
        assert_eq!(call(&["oracle", "forall x. P(x)"], "").0, 2);
        assert_eq!(call(&["frobnicate"], "").0, 2);
    }

    #[test]
    fn open_formula_is_closed_with_warning() {
        let (code, _, err) = call(&["prove", "P(x) -> P(x)"], "");
        assert_eq!(code, 0);
        assert!(err.contains("warning"));
    }
}
