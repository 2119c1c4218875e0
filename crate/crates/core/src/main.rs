use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use towerbs::bounds::formula::FiniteExponent;
use towerbs::bounds::table::{emit_table, TableConfig, TableInput};
use towerbs::bounds::InequalityCoefficients;
use towerbs::field::place_tally;
use towerbs::field::QuadraticExtension;
use towerbs::input::InputDocument;
use towerbs::pipeline::{bundled, cmd_verify};
use towerbs::arith::Real;
use towerbs::field::FieldOrder;

/// Directory for JSON reports; unset means no report files.
const REPORT_DIR_ENV: &str = "TOWERBS_REPORT_DIR";

#[derive(Parser)]
#[command(name = "towerbs", version, about = "Verify 2-tower certificates and Brauer-Siegel bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification pipeline.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        example: u8,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// List q -> number of places of K of norm q.
    Splitting {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        bound: u64,
    },
    /// Compute BSL and BSU.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ineq: Option<PathBuf>,
    },
    /// Render the summary table.
    Table {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<towerbs::Error> for Failure {
    fn from(e: towerbs::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(p: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

/// Inequality file: `name`, `finite = half|one`, `arch_real`, `arch_complex`.
fn parse_ineq(text: &str) -> Result<InequalityCoefficients, Failure> {
    let doc = InputDocument::parse(text)?;
    let get = |k: &str| doc.get(k).ok_or_else(|| Failure::Usage(format!("inequality file: missing {k}")));
    let dec = |k: &str| -> Result<Real, Failure> {
        Real::parse_decimal(get(k)?).ok_or_else(|| Failure::Usage(format!("inequality file: bad {k}")))
    };
    let finite = match get("finite")? {
        "half" => FiniteExponent::Half,
        "one" => FiniteExponent::One,
        other => return Err(Failure::Usage(format!("inequality file: finite = {other}"))),
    };
    Ok(InequalityCoefficients {
        name: doc.get("name").unwrap_or("custom").to_string(),
        finite,
        arch_real: dec("arch_real")?,
        arch_complex: dec("arch_complex")?,
    })
}

fn write_report(name: &str, json: &str) -> Result<(), Failure> {
    if let Ok(dir) = std::env::var(REPORT_DIR_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.json"));
        fs::write(&path, json).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Verify { example, input, json } => {
            let text = match &input {
                Some(p) => read(p)?,
                None => bundled(example).expect("example in range").to_string(),
            };
            let doc = InputDocument::parse(&text)?;
            let v = cmd_verify(&format!("example {example}"), &doc, &InequalityCoefficients::grh())?;
            let out = v.report.to_json();
            write_report(&format!("example{example}"), &out)?;
            if json {
                println!("{out}");
            } else {
                print!("{}", v.report.render());
            }
            match v.report.first_failure {
                None => Ok(()),
                Some(f) => Err(Failure::Verification(format!("first failing step: {f}"))),
            }
        }
        Cmd::Splitting { input, bound } => {
            let doc = InputDocument::parse(&read(&input)?)?;
            let k = FieldOrder::new(doc.poly("poly")?)?;
            let mut eta = doc.element(&k, "eta")?;
            if doc.integer("eta_sign")?.is_some_and(|s| s == (-1).into()) {
                eta = eta.neg();
            }
            let ext = QuadraticExtension::new(k, eta)?;
            let t = place_tally(&ext, bound)?;
            println!("real places: {}", t.n_real);
            println!("complex places: {}", t.n_complex);
            for (q, c) in t.counts.iter().filter(|(_, &c)| c > 0) {
                println!("{q}: {c}");
            }
            Ok(())
        }
        Cmd::Bounds { input, ineq } => {
            let doc = InputDocument::parse(&read(&input)?)?;
            let ineq = match &ineq {
                Some(p) => parse_ineq(&read(p)?)?,
                None => InequalityCoefficients::grh(),
            };
            let v = cmd_verify(&input.display().to_string(), &doc, &ineq)?;
            let b = v
                .bounds
                .ok_or_else(|| Failure::Verification(v.report.first_failure.clone().unwrap_or_default()))?;
            println!("BSL = {}", b.bsl.fmt_fixed(6));
            println!("BSU = {}", b.bsu.fmt_fixed(6));
            for (a, x) in &b.optimum.entries {
                println!("phi_{a} = {}", x.fmt_fixed(6));
            }
            println!("binding: {}", b.binding.join(", "));
            Ok(())
        }
        Cmd::Table { config } => {
            let config = match &config {
                Some(p) => TableConfig::parse(&read(p)?)?,
                None => TableConfig::default_literals(),
            };
            let mut inputs = Vec::new();
            for e in [1u8, 2] {
                let doc = InputDocument::parse(bundled(e).expect("bundled"))?;
                let v = cmd_verify(&format!("example {e}"), &doc, &InequalityCoefficients::grh())?;
                if let (Some(ext), Some(b)) = (v.ext, v.bounds) {
                    inputs.push(TableInput { label: format!("example {e}"), kind: ext.kind, bounds: b });
                }
            }
            let t = emit_table(&inputs, &config);
            print!("{}", t.text);
            write_report("table", &serde_json::to_string_pretty(&t).expect("table serializes"))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
