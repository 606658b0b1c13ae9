// Check pairs for a small Clifford+Rz circuit, and what an Rz does to the
// candidate list.

use pauli_sandwich::checks::CheckPolicy;
use pauli_sandwich::{find_checks, Circuit};

const CIRCUIT: &str = "\
qubits 3
h 0
cx 0 1
s 2
cx 1 2
rz 1 0.4
h 2
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let u: Circuit = CIRCUIT.parse()?;
    let search = find_checks(&u, 4)?;
    for (k, layer) in search.checks.layers().iter().enumerate() {
        println!("layer {}: c2={} c1={}  residual {:.1e}", k + 1, layer.c2, layer.c1, layer.dense_residual(&u)?);
    }

    // every Pauli survives a pure Clifford; the Rz above removes X and Y on qubit 1
    let blocked = find_checks(&u, 63)?;
    let clifford: Circuit = CIRCUIT.replace("rz 1 0.4\n", "").parse()?;
    println!("with Rz: {} of 63 candidates pass", blocked.found());
    println!("without Rz: {} of 63 candidates pass", find_checks(&clifford, 63)?.found());

    let heavy = CheckPolicy::MaxWeight.find(&u, 2)?;
    for layer in heavy.checks.layers() {
        println!("max-weight: {layer}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
