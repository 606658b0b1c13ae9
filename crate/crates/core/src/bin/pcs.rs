use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pauli_sandwich::checks::CheckPolicy;
use pauli_sandwich::experiment::{records_csv, run_sweep_with, summary_csv, ExperimentConfig, Preset, Scale};
use pauli_sandwich::{build, Circuit};

/// Exit status when fewer check layers exist than were requested.
const PARTIAL: u8 = 2;

#[derive(Parser)]
#[command(name = "pcs", version, about = "Pauli check sandwiching toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    LowWeightFirst,
    MaxWeight,
    Lemma1Pair,
    Lemma2Generators,
}

impl From<Policy> for CheckPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::LowWeightFirst => CheckPolicy::LowWeightFirst,
            Policy::MaxWeight => CheckPolicy::MaxWeight,
            Policy::Lemma1Pair => CheckPolicy::Lemma1Pair,
            Policy::Lemma2Generators => CheckPolicy::Lemma2Generators,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Small,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Fig4,
    Fig7,
    Fig12,
}

#[derive(Subcommand)]
enum Command {
    /// Print check pairs for a circuit. Exits with 2 if only some layers exist.
    FindChecks {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        layers: usize,
        #[arg(long, value_enum, default_value = "low-weight-first")]
        policy: Policy,
    },
    /// Write the check-sandwiched circuit with its postselection trailer.
    Sandwich {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        layers: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "low-weight-first")]
        policy: Policy,
    },
    /// Run a sweep described by a JSON config; CSV goes to stdout or --out.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write per-point means here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Re-run one of the canned experiments and print per-point means.
    Reproduce {
        #[arg(value_enum)]
        preset: PresetArg,
        #[arg(long, value_enum, default_value = "full")]
        scale: ScaleArg,
        /// Per-circuit CSV destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_circuit(path: &Path) -> Result<Circuit, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.parse().map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn sweep(
    cfg: &ExperimentConfig,
    out: Option<&Path>,
    summary: Option<&Path>,
    print_summary: bool,
) -> Result<(), String> {
    let mut done = 0usize;
    let res = run_sweep_with(cfg, |r| {
        done += 1;
        if done.is_multiple_of(50) {
            eprintln!("{done} points (cnots {} layers {} p1 {:.3e})", r.cnots, r.layers, r.p1);
        }
    })
    .map_err(|e| e.to_string())?;
    let records = records_csv(&res.records);
    match out {
        Some(p) => write(p, &records)?,
        None if !print_summary => print!("{records}"),
        None => {}
    }
    if let Some(p) = summary {
        write(p, &summary_csv(&res.summary))?;
    }
    if print_summary {
        print!("{}", summary_csv(&res.summary));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::FindChecks { circuit, layers, policy } => {
            let u = read_circuit(&circuit)?;
            let search = CheckPolicy::from(policy).find(&u, layers).map_err(|e| e.to_string())?;
            for (k, layer) in search.checks.layers().iter().enumerate() {
                println!("layer {}: c2={} c1={}", k + 1, layer.c2, layer.c1);
            }
            if search.is_complete() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("found {} of {} layers", search.found(), search.requested);
                Ok(ExitCode::from(PARTIAL))
            }
        }
        Command::Sandwich { circuit, layers, out, policy } => {
            let u = read_circuit(&circuit)?;
            let search = CheckPolicy::from(policy).find(&u, layers).map_err(|e| e.to_string())?;
            let s = build(&u, &search.checks).map_err(|e| e.to_string())?;
            write(&out, &s.to_text())?;
            if search.is_complete() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("found {} of {} layers", search.found(), search.requested);
                Ok(ExitCode::from(PARTIAL))
            }
        }
        Command::Sweep { config, out, summary } => {
            let text = fs::read_to_string(&config).map_err(|e| format!("{}: {e}", config.display()))?;
            let cfg = ExperimentConfig::from_json(&text).map_err(|e| e.to_string())?;
            sweep(&cfg, out.as_deref(), summary.as_deref(), false)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce { preset, scale, out } => {
            let preset = match preset {
                PresetArg::Fig4 => Preset::Fig4,
                PresetArg::Fig7 => Preset::Fig7,
                PresetArg::Fig12 => Preset::Fig12,
            };
            let scale = match scale {
                ScaleArg::Small => Scale::Small,
                ScaleArg::Full => Scale::Full,
            };
            sweep(&preset.config(scale), out.as_deref(), None, true)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
