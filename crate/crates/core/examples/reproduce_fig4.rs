// Two-qubit Clifford circuit with ideal checks: four single-qubit check
// layers remove every error on the compute qubits.

use pauli_sandwich::experiment::{run_sweep, Preset, Scale};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let res = run_sweep(&Preset::Fig4.config(Scale::Small))?;
    println!("{:>10} {:>8} {:>8} {:>8} {:>8} {:>8}", "p1", "F_n", "F_m(1)", "F_m(2)", "F_m(4)", "prob(4)");
    let p1s: Vec<f64> = res.summary.iter().filter(|a| a.layers == 0).map(|a| a.p1).collect();
    for p1 in p1s {
        let at = |l: usize| res.summary.iter().find(|a| a.layers == l && a.p1 == p1).expect("point");
        println!(
            "{p1:>10.2e} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            at(0).mean_f_unmitigated,
            at(1).mean_f_mitigated,
            at(2).mean_f_mitigated,
            at(4).mean_f_mitigated,
            at(4).mean_postselect_prob
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
