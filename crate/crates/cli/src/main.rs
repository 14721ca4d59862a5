use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use alt_invariants::etale::{algebra_from_cycle_type, enumerate_an_torsors, EtaleAlgebra};
use alt_invariants::fields::{Field, Poly};
use alt_invariants::fixed_modules::{fixed_submodule_h, LinearAction};
use alt_invariants::lambda_relations::{compute_z_table, sweep_verify, LambdaError};
use alt_invariants::milnor::{p_factorize, MilnorElement, SWClass};
use alt_invariants::verify::{run_all, run_suite};

#[derive(Parser, Debug)]
#[command(name = "altinv", version, about = "Invariants of trace forms and alternating groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor a unit of M(g) as a product of (1 + a_j) with deg a_j = 2^j.
    Factorize {
        element: String,
        #[arg(long, short = 'g')]
        generators: u32,
    },
    /// Total Stiefel-Whitney class of degree-one classes in M(g).
    Sw {
        #[arg(required = true)]
        classes: Vec<String>,
        #[arg(long, short = 'g')]
        generators: u32,
    },
    /// Diagonalized trace form of k[X]/(f_1) × … × k[X]/(f_r).
    TraceForm {
        #[arg(long)]
        field: String,
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Relation table expressing every λ-power in λ^0, …, λ^m.
    Ztable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the λ-relations on every torsor and type-(T) algebra up to n.
    Sweep {
        #[arg(long)]
        field: String,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Fixed subalgebra of M(rank) under a linear action.
    FixedModule {
        #[arg(long)]
        rank: u32,
        /// trivial, a3, s3 or n
        #[arg(long)]
        action: String,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        #[arg(long)]
        json: bool,
    },
    /// A_n-torsors of a finite field with their trace forms.
    Torsors {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Assertion(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Assertion(e.to_string()))?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct TorsorRow {
    cycle_type: String,
    split_count: u8,
    trace_form: String,
    discriminant: String,
    witt: String,
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Factorize { element, generators } => {
            let x = MilnorElement::parse(&element, generators).map_err(usage)?;
            match p_factorize(&x) {
                Ok(form) => {
                    for (j, a) in form.factors().iter().enumerate() {
                        println!("a{j} = {a}");
                    }
                    Ok(())
                }
                Err(e) => Err(Failure::Assertion(e.to_string())),
            }
        }
        Command::Sw { classes, generators } => {
            let alphas = classes
                .iter()
                .map(|c| MilnorElement::parse(c, generators))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let w = SWClass::from_classes(generators, &alphas).map_err(usage)?;
            println!("w = {w}");
            for i in 1..=w.top_degree() {
                println!("w{i} = {}", w.component(i));
            }
            Ok(())
        }
        Command::TraceForm { field, polys, json } => {
            let field = Field::parse(&field).map_err(usage)?;
            let factors = polys.iter().map(|p| Poly::parse(&field, p)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            let q = EtaleAlgebra::from_quotients(&field, factors).and_then(|a| a.trace_form()).map_err(usage)?;
            if json {
                print_json(&serde_json::json!({
                    "field": field.spec(),
                    "trace_form": q.to_string(),
                    "discriminant": q.discriminant(),
                    "witt": q.witt_class().to_string(),
                }))
            } else {
                println!("{q}");
                Ok(())
            }
        }
        Command::Ztable { n, json } => {
            let table = compute_z_table(n).map_err(usage)?;
            if json {
                print_json(&table)
            } else {
                print!("{table}");
                Ok(())
            }
        }
        Command::Sweep { field, max_n, json } => {
            let field = Field::parse(&field).map_err(usage)?;
            match sweep_verify(&field, max_n) {
                Ok(report) => {
                    if json {
                        print_json(&report)
                    } else {
                        for row in &report.rows {
                            println!("n={:<2} {:<28} {:<32} ok", row.n, row.instance, row.trace_form);
                        }
                        println!("{} instances passed over {}", report.rows.len(), report.field);
                        Ok(())
                    }
                }
                Err(LambdaError::Counterexample(row)) => {
                    if json {
                        print_json(&row)?;
                    }
                    Err(Failure::Assertion(format!("counterexample: n={} {} {}", row.n, row.instance, row.trace_form)))
                }
                Err(e) => Err(usage(e)),
            }
        }
        Command::FixedModule { rank, action, cutoff, json } => {
            let action = LinearAction::by_name(&action, rank).map_err(usage)?;
            let report = fixed_submodule_h(&action, cutoff).map_err(usage)?;
            if json {
                print_json(&report)
            } else {
                let dims: Vec<String> = report.dimensions.iter().map(ToString::to_string).collect();
                println!("dimensions: {}", dims.join(" "));
                for g in &report.generators {
                    println!("generator: {g}");
                }
                Ok(())
            }
        }
        Command::Torsors { field, n, json } => {
            let field = Field::parse(&field).map_err(usage)?;
            let mut rows = Vec::new();
            for (ct, split_count) in enumerate_an_torsors(&field, n).map_err(usage)? {
                let q = algebra_from_cycle_type(&field, &ct).and_then(|a| a.trace_form()).map_err(usage)?;
                rows.push(TorsorRow {
                    cycle_type: ct.to_string(),
                    split_count,
                    trace_form: q.to_string(),
                    discriminant: q.discriminant().to_string(),
                    witt: q.witt_class().to_string(),
                });
            }
            if json {
                print_json(&rows)
            } else {
                for r in &rows {
                    println!("{:<16} x{} {:<32} {}", r.cycle_type, r.split_count, r.trace_form, r.witt);
                }
                let total: u32 = rows.iter().map(|r| r.split_count as u32).sum();
                println!("{total} torsors");
                Ok(())
            }
        }
        Command::Verify { suite, json } => {
            let reports = if suite == "all" { run_all() } else { vec![run_suite(&suite).map_err(usage)?] };
            if json {
                print_json(&reports)?;
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Assertion(format!("failed suites: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("altinv: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("altinv: {msg}");
            ExitCode::from(2)
        }
    }
}
