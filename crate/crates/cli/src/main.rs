use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use superlie::family::{catalog, CatalogEntry, OUT_OF_SCOPE_NOTE};
use superlie::report::{run_suite, RunReport, Status, VerifyOptions};
use superlie::{tables, ClosureMode, Error, Family, FamilyKind};

#[derive(Parser)]
#[command(name = "superlie", version)]
#[command(about = "Build simple Lie superalgebras over Q and certify one-element generation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,

    /// Write the report to a file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunFlags {
    /// Certification attempts per family, including the base candidate
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    budget: u32,

    /// Split every closure vector into its even and odd parts
    #[arg(long)]
    graded_closure: bool,

    /// Allow families of dimension above 400
    #[arg(long)]
    allow_large: bool,
}

impl RunFlags {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            mode: if self.graded_closure {
                ClosureMode::Graded
            } else {
                ClosureMode::Ungraded
            },
            budget: self.budget as usize,
            allow_large: self.allow_large,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List supported families and parameter constraints
    List {
        #[arg(long)]
        json: bool,
    },
    /// Build one family, check it and certify a one-element generator
    Verify {
        /// Family letter and parameters, e.g. `A 1 1` or `St 4`
        #[arg(required = true, num_args = 1..)]
        selector: Vec<String>,
        #[command(flatten)]
        run: RunFlags,
        #[command(flatten)]
        output: Output,
    },
    /// Print basis labels and weight tables of one family
    Tables {
        #[arg(required = true, num_args = 1..)]
        selector: Vec<String>,
        /// Emit the table data as a fixture JSON document
        #[arg(long)]
        fixture: bool,
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Verify the default desk-scale family matrix
    Suite {
        /// `classical`, `cartan`, a family letter, or a selector such as `W 3`
        #[arg(long, value_name = "FILTER")]
        only: Option<String>,
        #[command(flatten)]
        run: RunFlags,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Usage(_) | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        message: format!("cannot write output: {e}"),
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(p) => fs::write(p, text).map_err(io_failure),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn parse_selector(words: &[String]) -> Result<Family, Failure> {
    Ok(words.join(" ").parse::<Family>()?)
}

fn filter_suite(only: Option<&str>) -> Result<Vec<Family>, Failure> {
    let all = Family::default_suite();
    let Some(f) = only else { return Ok(all) };
    let picked: Vec<Family> = match f.to_ascii_lowercase().as_str() {
        "classical" => all.into_iter().filter(|x| x.kind() == FamilyKind::Classical).collect(),
        "cartan" => all.into_iter().filter(|x| x.kind() == FamilyKind::Cartan).collect(),
        _ if f.contains(|c: char| c.is_ascii_digit()) => vec![f.parse::<Family>()?],
        _ => {
            let letter = if f == "S~" { "St" } else { f };
            all.into_iter().filter(|x| x.letter() == letter).collect()
        }
    };
    if picked.is_empty() {
        return Err(Error::Usage(format!("--only `{f}` matches no family")).into());
    }
    Ok(picked)
}

fn render_report(r: &RunReport) -> String {
    let mut s = String::new();
    for f in &r.families {
        let dim = f.dim.map_or_else(|| "-".into(), |d| d.to_string());
        s.push_str(&format!("{:<8} dim {:>3}  ", f.family.to_string(), dim));
        match (&f.certificate, f.status) {
            (Some(c), Status::Generated | Status::NotGenerated) => s.push_str(&format!(
                "{:?}  {} -> {}/{} in {} rounds, {} attempt(s)\n",
                c.verdict, c.element, c.final_dim, c.target_dim, c.rounds, c.attempts
            )),
            _ => s.push_str(&format!(
                "{:?}: {}\n",
                f.status,
                f.failure.as_deref().unwrap_or("unknown failure")
            )),
        }
    }
    let ok = r.families.iter().filter(|f| f.ok()).count();
    s.push_str(&format!("{ok}/{} families generated\n", r.families.len()));
    s
}

fn report_exit(r: &RunReport, output: &Output) -> Result<u8, Failure> {
    let text = if output.json { r.to_json() } else { render_report(r) };
    emit(output, &text)?;
    Ok(r.exit_code() as u8)
}

#[derive(Serialize)]
struct Catalog {
    families: Vec<CatalogEntry>,
    out_of_scope: &'static str,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::List { json } => {
            let families = catalog();
            if json {
                print!(
                    "{}",
                    to_json(&Catalog {
                        families,
                        out_of_scope: OUT_OF_SCOPE_NOTE
                    })
                );
            } else {
                for e in families {
                    println!("{} ({})", e.selector, e.constraint);
                }
                println!("{OUT_OF_SCOPE_NOTE}");
            }
            Ok(0)
        }
        Command::Verify {
            selector,
            run,
            output,
        } => {
            let f = parse_selector(&selector)?;
            let r = run_suite(&[f], &run.options())?;
            report_exit(&r, &output)
        }
        Command::Tables {
            selector,
            fixture,
            allow_large,
            output,
        } => {
            let f = parse_selector(&selector)?;
            let opts = VerifyOptions {
                allow_large,
                ..VerifyOptions::default()
            };
            superlie::report::admit(&f, &opts)?;
            let a = f.build()?;
            let text = if fixture || output.json {
                to_json(&tables::fixture(&a)?)
            } else {
                tables::render(&a)?
            };
            emit(&output, &text)?;
            Ok(0)
        }
        Command::Suite { only, run, output } => {
            let fams = filter_suite(only.as_deref())?;
            let r = run_suite(&fams, &run.options())?;
            report_exit(&r, &output)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
