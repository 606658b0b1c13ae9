macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(pauli_algebra, "pauli_algebra.rs");
example!(find_checks, "find_checks.rs");
example!(sandwich, "sandwich.rs");
example!(noisy_simulation, "noisy_simulation.rs");
example!(channel_transform, "channel_transform.rs");
example!(twirl_comparison, "twirl_comparison.rs");
example!(sweep, "sweep.rs");
example!(reproduce_fig4, "reproduce_fig4.rs");

#[test]
fn examples_run() {
    pauli_algebra::run_example().expect("pauli_algebra");
    find_checks::run_example().expect("find_checks");
    sandwich::run_example().expect("sandwich");
    noisy_simulation::run_example().expect("noisy_simulation");
    channel_transform::run_example().expect("channel_transform");
    twirl_comparison::run_example().expect("twirl_comparison");
    sweep::run_example().expect("sweep");
    reproduce_fig4::run_example().expect("reproduce_fig4");
}
