use std::path::PathBuf;
use std::process::ExitCode;

use asedf::output::report_text;
use asedf::{convergence_suite, run_case, timing_harness, CaseSpec, FluxKind};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "asedf", version, about = "High-order finite-volume solver with adaptive stencils")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one case and write the field and report files.
    Run {
        case: PathBuf,
        /// `NX` or `NXxNY`.
        #[arg(long)]
        mesh: Option<String>,
        #[arg(long, value_parser = ["5", "7", "9"])]
        order: Option<String>,
        #[arg(long)]
        flux: Option<FluxKind>,
        #[arg(long)]
        sigma_thres: Option<f64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// L1 errors and orders over square refinements.
    Converge {
        family: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "20,40,80,160")]
        levels: Vec<usize>,
    },
    /// Wall-clock time per reconstruction order over a fixed number of steps.
    Bench {
        case: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_delimiter = ',', default_value = "5,7,9")]
        orders: Vec<usize>,
        /// Round-robin repetitions; the fastest of each is reported.
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
}

fn main() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(command: Command) -> asedf::Result<()> {
    match command {
        Command::Run { case, mesh, order, flux, sigma_thres, out } => {
            let mut spec = CaseSpec::load(&case)?;
            if let Some(m) = mesh {
                spec = spec.with_mesh_str(&m)?;
            }
            if let Some(o) = order {
                spec = spec.with_order(o.parse().expect("validated by clap"));
            }
            if let Some(f) = flux {
                spec.flux = f;
            }
            if let Some(s) = sigma_thres {
                spec.recon.sigma_thres = s;
            }
            spec.validate()?;
            let run = run_case(&spec, Some(&out))?;
            print!("{}", report_text(&run.report));
        }
        Command::Converge { family, levels } => {
            let spec = CaseSpec::load(&family)?;
            println!("{}  {}  {}", spec.name, spec.scheme_label(), spec.flux);
            println!("{:>6}  {:>14}  {:>6}", "N", "L1", "order");
            for row in convergence_suite(&spec, &levels)? {
                let order = row.order.map_or("-".to_string(), |o| format!("{o:.2}"));
                println!("{:>6}  {:>14.6e}  {:>6}", row.n, row.l1, order);
            }
        }
        Command::Bench { case, steps, orders, repeats } => {
            let spec = CaseSpec::load(&case)?;
            println!("{} {}x{} {} steps={steps}", spec.name, spec.nx, spec.ny, spec.flux);
            println!("{:>6}  {:>10}  {:>6}", "order", "seconds", "ratio");
            for row in timing_harness(&spec, steps, &orders, repeats)? {
                println!("{:>6}  {:>10.3}  {:>6.2}", row.order, row.seconds, row.ratio);
            }
        }
    }
    Ok(())
}
