use clap::{Parser, Subcommand};
use harness_cli::config::parse_p_range;
use harness_cli::{report, Format, HarnessError, ModelName, Overrides, RunConfig, Status, Suite};
use harness_cli::output::write_atomic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "semiclass-lab", version, about = "Verify Bergman kernel and Toeplitz expansion coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the symbolic and/or numeric suites and write a manifest.
    Verify {
        /// Flat JSON run configuration; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, value_enum)]
        model: Option<ModelName>,
        /// Level range MIN:MAX.
        #[arg(long = "p", value_parser = parse_p_range)]
        p_range: Option<(usize, usize)>,
        /// Quadrature order override.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Render the records of a manifest (or of a JSON report).
    Report {
        /// Defaults to DIR/manifest.json.
        manifest: Option<PathBuf>,
        /// Run directory; the rendered report is also written to DIR/report.{csv,json}.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn verify(config: Option<PathBuf>, o: Overrides) -> Result<i32, HarnessError> {
    harness_cli::init_threads_from_env()?;
    let base = match config {
        Some(path) => RunConfig::load(&path)?,
        None => RunConfig::default(),
    };
    let cfg = base.apply(o);
    let run = harness_cli::verify(&cfg)?;
    for r in &run.manifest.records {
        if r.status == Status::Skipped {
            continue;
        }
        println!("{:<7} {:<28} {:<34} {:>10.1} ms  {}", r.status.as_str(), r.check_id, r.paper_anchor, r.wall_time_ms, r.residue);
    }
    let count = |s: Status| run.manifest.records.iter().filter(|r| r.status == s).count();
    println!(
        "{} passed, {} failed, {} skipped; manifest {} (hash {})",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
        cfg.output_dir.join("manifest.json").display(),
        &run.manifest.determinism_hash[..16]
    );
    Ok(harness_cli::exit_code(&run.manifest.records))
}

fn render_report(path: &Path, out: Option<&Path>, format: Format) -> Result<i32, HarnessError> {
    let text = report::render(&report::load(path)?, format)?;
    if let Some(dir) = out {
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        write_atomic(&dir.join(format!("report.{ext}")), text.as_bytes())?;
    }
    print!("{text}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { config, suite, checks, model, p_range, order, out, seed, format } => verify(
            config,
            Overrides { suite, checks, model, p_range, quadrature_order: order, output_dir: out, seed, format },
        ),
        Command::Report { manifest, out, format } => {
            let dir = out.clone().unwrap_or_else(|| RunConfig::default().output_dir);
            let path = manifest.unwrap_or_else(|| dir.join("manifest.json"));
            render_report(&path, out.as_deref(), format)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("semiclass-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
