// Checks project the error channel, twirling averages it. Compare the Pauli
// transfer matrices of both for a coherent over-rotation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pauli_sandwich::channel::KrausChannel;
use pauli_sandwich::checks::{CheckLayer, CheckSet};
use pauli_sandwich::PauliString;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t: f64 = 0.3;
    let rx = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(t.cos(), 0.0),
            Complex64::new(0.0, -t.sin()),
            Complex64::new(0.0, -t.sin()),
            Complex64::new(t.cos(), 0.0),
        ],
    );
    let err = KrausChannel::unitary(rx)?;
    let z: PauliString = "Z".parse()?;
    let checks = CheckSet::from_layers(1, [CheckLayer::new(z, z)?])?;
    let checked = err.transform_multilayer(&checks)?;
    let twirled = err.twirl(&[PauliString::identity(1), z])?;

    println!("error PTM{}", err.pauli_transfer_matrix()?);
    println!("after a Z check (unnormalized){}", checked.pauli_transfer_matrix()?);
    println!("twirled over {{I, Z}}{}", twirled.pauli_transfer_matrix()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
