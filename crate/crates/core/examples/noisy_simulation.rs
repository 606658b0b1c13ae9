// Unmitigated versus check-sandwiched fidelity of one random circuit over
// a few noise levels.

use pauli_sandwich::checks::CheckPolicy;
use pauli_sandwich::experiment::{run_point, Instance};
use pauli_sandwich::{NoiseScope, NoiseSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = Instance::generate(3, 12, 2, 2024)?;
    println!("{} gates on 3 qubits", inst.circuit.len());
    let search = CheckPolicy::LowWeightFirst.find(&inst.circuit, 3)?;
    for layer in search.checks.layers() {
        println!("  {layer}");
    }
    println!("{:>8} {:>8} {:>8} {:>8}", "p1", "F_n", "F_m", "prob");
    for p1 in [1e-4, 1e-3, 3e-3, 1e-2] {
        let out = run_point(&inst, &search, &NoiseSpec::coupled(p1)?, NoiseScope::AllGates)?;
        println!(
            "{p1:>8.0e} {:>8.4} {:>8.4} {:>8.4}",
            out.f_unmitigated,
            out.f_mitigated.unwrap_or(f64::NAN),
            out.postselect_prob
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
