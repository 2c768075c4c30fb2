use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

mod args;
mod cache;
mod genus_file;
mod render;

use args::{Cli, Command, Format};
use lgenus::genus::{coefficient_closed_form, coefficient_table, CoefficientTable, GenusSpec};
use lgenus::partitions::IntegerPartition;
use lgenus::verify::{self, Suite};

/// A failure with its exit code: 1 for failed checks, 2 for bad input.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<lgenus::Error> for Failure {
    fn from(e: lgenus::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn load_genus(cli: &Cli, order: usize) -> Result<GenusSpec, Failure> {
    let g = &cli.global;
    match g.genus.as_str() {
        "L" => Ok(GenusSpec::l(order)),
        "Ahat" => Ok(GenusSpec::a_hat(order)),
        "custom" => {
            let path = g
                .genus_file
                .as_deref()
                .ok_or_else(|| Failure::usage("--genus custom needs --genus-file"))?;
            genus_file::load(path, order)
        }
        other => Err(Failure::usage(format!("unknown genus {other:?} (expected L, Ahat or custom)"))),
    }
}

fn tables(cli: &Cli, genus: &GenusSpec, max_k: usize) -> Result<Vec<CoefficientTable>, Failure> {
    match &cli.global.cache {
        Some(path) => cache::tables(path, genus, max_k),
        None => (1..=max_k)
            .map(|k| coefficient_table(genus, k).map_err(Failure::from))
            .collect(),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = cli.global.out.as_deref();
    match &cli.command {
        Command::Coeff { partition } => {
            let j: IntegerPartition = partition.parse()?;
            let genus = load_genus(cli, j.weight())?;
            let c = coefficient_closed_form(&genus, &j)?;
            emit(out, &format!("{c}\n"))
        }
        Command::Poly { k } => {
            let format = cli.global.format.unwrap_or(Format::Text);
            let genus = load_genus(cli, *k)?;
            let table = if *k == 0 {
                coefficient_table(&genus, 0)?
            } else {
                tables(cli, &genus, *k)?.pop().expect("k >= 1 tables")
            };
            let text = match format {
                Format::Text => render::poly_text(&table) + "\n",
                Format::Latex => render::poly_latex(&table) + "\n",
                Format::Json => render::poly_json(genus.name(), &table) + "\n",
                Format::Csv => return Err(Failure::usage("poly supports text, latex and json")),
            };
            emit(out, &text)
        }
        Command::Table { max_k } => {
            let format = cli.global.format.unwrap_or(Format::Csv);
            let genus = load_genus(cli, *max_k)?;
            let tables = tables(cli, &genus, *max_k)?;
            let text = match format {
                Format::Csv => render::table_csv(&tables),
                Format::Json => render::table_json(genus.name(), &tables) + "\n",
                _ => return Err(Failure::usage("table supports csv and json")),
            };
            emit(out, &text)
        }
        Command::Verify(v) => {
            if let Some(f) = cli.global.format {
                if f != Format::Text {
                    return Err(Failure::usage("verify prints text reports only"));
                }
            }
            let suite: Suite = v.suite.parse()?;
            let g = &cli.global;
            let cfg = verify::VerifyConfig {
                max_k: v.max_k,
                max_r: v.max_r,
                cap: v.n,
                depth: g.depth,
                tol: g.tol,
                delta: g.delta,
                seed: g.seed,
                samples: v.samples,
                ..verify::VerifyConfig::default()
            };
            let report = verify::run(suite, &cfg)?;
            emit(out, &report.to_string())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: format!("{} of {} checks failed", report.failures(), report.checks.len()),
                })
            }
        }
    }
}
