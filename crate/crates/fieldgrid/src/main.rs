use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fieldgrid::config::{self, ConfigError, RunConfig};
use fieldgrid::evaluate;
use fieldgrid::scenarios::{self, Scenario};

/// Field evaluation, verification reports and plot-data export for
/// relativistic Hermite-Gaussian beam modes.
#[derive(Parser)]
#[command(name = "fieldgrid", version, about)]
struct Cli {
    /// Configuration document (TOML); use '-' for standard input.
    #[arg(long, global = true, default_value = "-")]
    config: String,

    /// Output path; overrides the configuration's [output].path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; overrides the configuration's [output].format.
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Worker threads for grid evaluation (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Seed for the verification sample generator; overrides the
    /// configuration's top-level seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the beam envelope over the configured grid and write one
    /// row per grid point.
    Eval,
    /// Run a verification scenario and emit a JSON report; exits 0 iff the
    /// verdict is pass.
    Verify {
        #[arg(value_enum)]
        scenario: Scenario,
    },
    /// Print the convention-adjudication ledger.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            // machine-readable error on standard error
            eprintln!(
                "{{\"error\":{{\"kind\":\"config\",\"message\":{}}}}}",
                json_string(&err.message)
            );
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, ConfigError> {
    let mut cfg = config::load(&cli.config)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(path) = &cli.out {
        cfg.output_path = Some(path.clone());
    }
    if let Some(format) = &cli.format {
        cfg.format = format.parse()?;
    }

    match &cli.command {
        Command::Eval => eval(&cfg, cli.threads),
        Command::Verify { scenario } => verify(&cfg, *scenario),
        Command::Report => {
            print!("{}", scenarios::convention_report(&cfg)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn eval(cfg: &RunConfig, threads: usize) -> Result<ExitCode, ConfigError> {
    let body = evaluate::render(cfg, threads)?;
    let path = cfg.output_path.as_ref().ok_or_else(|| {
        ConfigError::new("eval needs an output path ([output].path or --out)")
    })?;
    write_file(path, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(cfg: &RunConfig, scenario: Scenario) -> Result<ExitCode, ConfigError> {
    let report = scenarios::run(scenario, cfg)?;
    let json = report.to_json();
    print!("{json}");
    if let Some(path) = &cfg.output_path {
        write_file(path, &json)?;
    }
    Ok(if report.verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn write_file(path: &PathBuf, body: &str) -> Result<(), ConfigError> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| ConfigError::new(format!("cannot create '{}': {e}", path.display())))?;
    file.write_all(body.as_bytes())
        .map_err(|e| ConfigError::new(format!("cannot write '{}': {e}", path.display())))
}

fn json_string(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
