// How check layers reshape an error channel: Pauli components that
// anticommute with a right check vanish from every Kraus operator.

use pauli_sandwich::channel::KrausChannel;
use pauli_sandwich::checks::{CheckLayer, CheckSet};
use pauli_sandwich::PauliString;

fn show(label: &str, ch: &KrausChannel) -> Result<(), Box<dyn std::error::Error>> {
    println!("{label}: {} terms", ch.len());
    for (i, e) in ch.pauli_expansions()?.iter().enumerate() {
        let parts: Vec<String> = e.nonzero(1e-12).iter().map(|(p, a)| format!("{:.3}*{p}", a.re)).collect();
        println!("  E{i} = {}", parts.join(" + "));
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let noise = KrausChannel::depolarizing(2, &[0, 1], 0.1)?;
    show("two-qubit depolarizing", &noise)?;

    let layer = |s: &str| -> Result<CheckLayer, Box<dyn std::error::Error>> {
        let p: PauliString = s.parse()?;
        Ok(CheckLayer::new(p, p)?)
    };
    let one = noise.transform_single_layer(&"ZZ".parse()?)?;
    show("after c2 = ZZ", &one)?;

    let all = CheckSet::from_layers(2, [layer("XI")?, layer("ZI")?, layer("IX")?, layer("IZ")?])?;
    let full = noise.transform_multilayer(&all)?;
    show("after all four generators", &full)?;
    println!("trace-preservation defect after checks: {:.4}", full.trace_preservation_error());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
