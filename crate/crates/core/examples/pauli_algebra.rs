// Pauli strings: products with phases, commutation and weight-ordered
// enumeration.

use pauli_sandwich::PauliString;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a: PauliString = "XI".parse()?;
    let b: PauliString = "ZI".parse()?;
    println!("{a} * {b} = {}", a.multiply(&b)?);
    println!("{b} * {a} = {}", b.multiply(&a)?);

    let zz: PauliString = "ZZ".parse()?;
    let xx: PauliString = "XX".parse()?;
    println!("{zz} and {xx} commute: {}", zz.commutes(&xx)?);
    println!("{zz} and {a} commute: {}", zz.commutes(&a)?);

    let first: Vec<String> = PauliString::enumerate_by_weight(2).take(9).map(|p| p.to_string()).collect();
    println!("lowest-weight two-qubit strings: {}", first.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
