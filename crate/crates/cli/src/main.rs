use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wreath_eq::baumslag::LaurentPoly;
use wreath_eq::input::{parse_cyclic_element, parse_perm_element};
use wreath_eq::oracle::{oracle_baumslag, oracle_finite_group_solvable, oracle_quadratic, oracle_translate_sum};
use wreath_eq::*;

const SAT: u8 = 0;
const UNSAT: u8 = 1;
const INPUT_ERROR: u8 = 2;
const SOLVER_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "wreath-eq", version, about = "Quadratic equations in wreath products and the Baumslag group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an equation file and print a witness when it is solvable
    Solve {
        file: PathBuf,
        /// Re-parse the printed witness and check it against the equation
        #[arg(long)]
        verify: bool,
        /// Replace the automatic genus cap
        #[arg(long, value_name = "N")]
        genus_cap: Option<usize>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print the commutator width of a group, e.g. `width free=2 torsion=2`
    Width {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        spec: Vec<String>,
    },
    /// Bounded brute-force searches
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct Limits {
    /// Node budget for the exhaustive searches
    #[arg(long, value_name = "NODES")]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Genus 0 wreath equation: search shifts in a box (default radius R+2)
    TranslateSum {
        file: PathBuf,
        #[arg(long)]
        radius: Option<i64>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Genus >= 1 wreath equation: search shifts and small subgroups
    Varpi {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        shift_radius: i64,
        #[arg(long, default_value_t = 2)]
        gen_radius: i64,
        #[command(flatten)]
        limits: Limits,
    },
    /// Genus 0 Baumslag equation with constants in the kernel
    Baumslag {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[command(flatten)]
        limits: Limits,
    },
    /// Exhaustive search over a symmetric or cyclic group
    Finite {
        file: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

enum Failure {
    Input(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::NotQuadratic { .. }
            | Error::NotOrientable(_)
            | Error::InvalidTorsion(_)
            | Error::DimensionMismatch { .. }
            | Error::Precondition(_) => Failure::Input(e.to_string()),
            _ => Failure::Solver(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<Instance, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_problem(&src).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Prints the verdict and returns the exit status.
fn report<G: GroupElem>(
    problem: &Problem<G>,
    verdict: Verdict<G>,
    verify: bool,
    parse: impl Fn(&str) -> Result<G, ParseError>,
) -> Result<u8, Failure> {
    let Verdict::Sat(witness) = verdict else {
        println!("UNSAT");
        return Ok(UNSAT);
    };
    let lines: Vec<(u32, String)> = problem
        .word
        .variables()
        .into_iter()
        .map(|v| (v, witness[&v].to_string()))
        .collect();
    if verify {
        let mut back = Witness::new();
        for (v, text) in &lines {
            let g = parse(text).map_err(|e| Failure::Solver(format!("witness X{v} does not re-parse: {e}")))?;
            back.insert(*v, g);
        }
        if !problem.word.verify(&back)? {
            return Err(Failure::Solver("printed witness does not satisfy the equation".into()));
        }
    }
    println!("SAT");
    for (v, text) in lines {
        println!("X{v} = {text}");
    }
    Ok(SAT)
}

fn solve(path: &Path, verify: bool, opts: SolveOptions) -> Result<u8, Failure> {
    match read(path)? {
        Instance::Wreath(b, p) => {
            let v = solve_wreath(&b, &p.word, &opts)?;
            report(&p, v, verify, |s| WreathElement::parse(&b, s))
        }
        Instance::Baumslag(p) => {
            let v = solve_baumslag(&p.word, &opts)?;
            report(&p, v, verify, BaumslagElement::parse)
        }
        Instance::Symmetric(n, p) => {
            let v = solve_finite(&p.word, &Perm::all(n), &opts)?;
            report(&p, v, verify, |s| parse_perm_element(n, s))
        }
        Instance::Cyclic(n, p) => {
            let v = solve_finite(&p.word, &Cyclic::all(n), &opts)?;
            report(&p, v, verify, |s| parse_cyclic_element(n, s))
        }
    }
}

fn width(spec: &[String]) -> Result<u8, Failure> {
    let w = match parse_group_spec(&spec.join(" "))? {
        GroupSpec::Wreath(b) => commutator_width(&b),
        // not abelian, and every element of the kernel is one commutator
        GroupSpec::Baumslag => 1,
        GroupSpec::Symmetric(_) | GroupSpec::Cyclic(_) => {
            return Err(Failure::Input("width is reported for wreath products and the Baumslag group".into()))
        }
    };
    println!("{w}");
    Ok(SAT)
}

fn found(sat: bool, detail: impl FnOnce() -> String) -> u8 {
    if sat {
        println!("SAT");
        println!("{}", detail());
        SAT
    } else {
        println!("UNSAT-within-box");
        UNSAT
    }
}

fn oracle(cmd: OracleCommand) -> Result<u8, Failure> {
    match cmd {
        OracleCommand::TranslateSum { file, radius, limits } => {
            let Instance::Wreath(b, p) = read(&file)? else {
                return Err(Failure::Input("translate-sum needs a wreath equation".into()));
            };
            let nf = normalize(&p.word)?;
            if nf.genus != 0 {
                return Err(Failure::Input("translate-sum needs a genus 0 equation".into()));
            }
            let total = nf.constants.iter().fold(b.zero(), |acc, c| b.add(&acc, c.point()));
            if !total.is_zero() {
                println!("UNSAT-within-box");
                return Ok(UNSAT);
            }
            let q = abelian::quotient(&b, nf.constants.iter().map(|c| c.point().clone()).collect());
            let polys: Vec<RingElement> = nf
                .constants
                .iter()
                .map(|c| c.poly().project(&q))
                .filter(|f| !f.is_zero())
                .collect();
            if polys.is_empty() {
                return Ok(found(true, || "all constants vanish in the quotient".into()));
            }
            let inst = TranslateSumInstance::new(q.target(), polys)?.normalized();
            let r = radius.unwrap_or_else(|| inst.polys().iter().map(|f| f.support_diameter().unwrap_or(0)).sum::<i64>() + 2);
            let v = oracle_translate_sum(&inst, r, &mut Budget::from_option(limits.budget))?;
            Ok(match v {
                OracleVerdict::Sat(u) => found(true, || format!("shifts in {} = {}", inst.group(), join(&u))),
                OracleVerdict::UnsatWithinBox => found(false, String::new),
            })
        }
        OracleCommand::Varpi {
            file,
            shift_radius,
            gen_radius,
            limits,
        } => {
            let Instance::Wreath(b, p) = read(&file)? else {
                return Err(Failure::Input("varpi needs a wreath equation".into()));
            };
            let nf = normalize(&p.word)?;
            let v = oracle_quadratic(
                &b,
                nf.genus,
                &nf.constants,
                shift_radius,
                gen_radius,
                &mut Budget::from_option(limits.budget),
            )?;
            Ok(match v {
                OracleVerdict::Sat((u, l)) => found(true, || {
                    format!("shifts {}; subgroup generated by {}", join(&u), join(l.generators()))
                }),
                OracleVerdict::UnsatWithinBox => found(false, String::new),
            })
        }
        OracleCommand::Baumslag { file, radius, limits } => {
            let Instance::Baumslag(p) = read(&file)? else {
                return Err(Failure::Input("baumslag needs a Baumslag equation".into()));
            };
            let nf = normalize(&p.word)?;
            if nf.genus != 0 || nf.constants.iter().any(|c| c.m != 0 || c.n != 0) {
                return Err(Failure::Input("baumslag oracle needs genus 0 and constants (q ; 0, 0)".into()));
            }
            let k = nf.constants.iter().map(|c| c.q.denom_exp()).max().unwrap_or(0);
            let polys: Vec<LaurentPoly> = nf
                .constants
                .iter()
                .filter(|c| !c.q.is_zero())
                .map(|c| c.q.numerator_over(k))
                .collect();
            let v = oracle_baumslag(&polys, radius, &mut Budget::from_option(limits.budget))?;
            Ok(match v {
                OracleVerdict::Sat(s) => found(true, || {
                    let parts: Vec<String> = s.iter().map(|x| format!("({}, {})", x.a, x.b)).collect();
                    format!("exponents {}", parts.join(" "))
                }),
                OracleVerdict::UnsatWithinBox => found(false, String::new),
            })
        }
        OracleCommand::Finite { file, limits } => {
            let mut budget = Budget::from_option(limits.budget);
            let (sat, text) = match read(&file)? {
                Instance::Symmetric(n, p) => {
                    let r = oracle_finite_group_solvable(&p.word, &Perm::all(n), &mut budget)?;
                    (r.is_some(), r.map(|w| witness_line(&w)).unwrap_or_default())
                }
                Instance::Cyclic(n, p) => {
                    let r = oracle_finite_group_solvable(&p.word, &Cyclic::all(n), &mut budget)?;
                    (r.is_some(), r.map(|w| witness_line(&w)).unwrap_or_default())
                }
                _ => return Err(Failure::Input("finite needs a symmetric or cyclic group".into())),
            };
            if sat {
                println!("SAT");
                print!("{text}");
                Ok(SAT)
            } else {
                println!("UNSAT");
                Ok(UNSAT)
            }
        }
    }
}

fn witness_line<G: std::fmt::Display>(w: &Witness<G>) -> String {
    w.iter().map(|(v, g)| format!("X{v} = {g}\n")).collect()
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    parts.join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            file,
            verify,
            genus_cap,
            limits,
        } => solve(
            &file,
            verify,
            SolveOptions {
                genus_cap,
                budget: limits.budget,
            },
        ),
        Command::Width { spec } => width(&spec),
        Command::Oracle(cmd) => oracle(cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(SOLVER_ERROR)
        }
    }
}
