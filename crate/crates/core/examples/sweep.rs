// A small noise sweep driven by a JSON config, printed as CSV.

use pauli_sandwich::experiment::{records_csv, run_sweep, summary_csv, ExperimentConfig};

const CONFIG: &str = r#"{
    "compute_n": 3,
    "cnot_counts": [5, 15],
    "rz_count": 2,
    "num_layers": [0, 2],
    "p1_grid": [0.0001, 0.001, 0.01],
    "circuits_per_point": 3,
    "seed": 42
}"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::from_json(CONFIG)?;
    let res = run_sweep(&cfg)?;
    print!("{}", summary_csv(&res.summary));
    let per_circuit = records_csv(&res.records);
    println!("{} per-circuit rows", per_circuit.lines().count() - 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
