// Wraps a circuit in two check layers and prints the instrumented circuit.

use pauli_sandwich::{build, find_checks, Circuit, DensityMatrix, NoiseScope, NoiseSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let u: Circuit = "qubits 2\nh 0\ncx 0 1\ns 1\n".parse()?;
    let checks = find_checks(&u, 2)?.checks;
    let s = build(&u, &checks)?;
    print!("{s}");
    println!("ancillas {:?}, {} two-qubit check gates", s.postselect_qubits(), s.check_two_qubit_gates());

    let rho0 = DensityMatrix::zero_state(2)?;
    let res = s.run(&rho0, &NoiseSpec::noiseless(), NoiseScope::AllGates, None)?;
    println!("noiseless postselection probability {:.6}", res.prob);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
