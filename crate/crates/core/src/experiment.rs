//! Random circuits, noise sweeps and CSV output.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::checks::{CheckPolicy, CheckSearch, CheckSet};
use crate::circuit::{Circuit, Gate};
use crate::density::{fidelity, simulate, DensityMatrix, NoiseSpec, SIM_CAP};
use crate::error::{Error, Result};
use crate::fmt::sig;
use crate::sandwich::{build, NoiseScope};

/// Gates in the random input-state preparation circuit.
pub const STATE_PREP_GATES: usize = 20;

/// Lowest and highest single-qubit error rates a sweep may use.
pub const P1_RANGE: (f64, f64) = (1e-5, 1e-1);

/// Mixes a base seed with coordinates into an independent stream seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    parts.iter().fold(splitmix(base), |acc, &p| splitmix(acc ^ splitmix(p)))
}

/// `points` values log-spaced from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && points >= 1);
    if points == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..points).map(|i| 10f64.powf(a + (b - a) * i as f64 / (points - 1) as f64)).collect()
}

/// Default single-qubit error grid: 1e-5 to 1e-2 in steps of 0.15 decades.
pub fn default_p1_grid() -> Vec<f64> {
    log_grid(1e-5, 1e-2, 21)
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Random {H, S, CNOT} sequence with exactly `cnot_count` CNOTs; each step
/// draws the gate kind uniformly.
pub fn random_clifford_circuit(n: usize, cnot_count: usize, seed: u64) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::Config(format!("random Clifford circuits need at least 2 qubits, got {n}")));
    }
    if cnot_count == 0 {
        return Err(Error::Config("cnot_count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(n);
    let mut cnots = 0;
    while cnots < cnot_count {
        let g = match rng.gen_range(0..3) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::S(rng.gen_range(0..n)),
            _ => {
                cnots += 1;
                let (a, b) = random_pair(&mut rng, n);
                Gate::Cx(a, b)
            }
        };
        c.push(g)?;
    }
    Ok(c)
}

/// Inserts `rz_count` Rz gates at uniform positions and qubits with angles
/// uniform on `[0, 2π)`.
pub fn insert_random_rz(c: &Circuit, rz_count: usize, seed: u64) -> Result<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = c.clone();
    for _ in 0..rz_count {
        let pos = rng.gen_range(0..=out.len());
        let q = rng.gen_range(0..out.num_qubits());
        let theta = rng.gen_range(0.0..TAU);
        out.insert(pos, Gate::Rz(q, theta))?;
    }
    Ok(out)
}

/// Pure input state from a noiseless random {H, S, CNOT} circuit on `|0…0⟩`.
pub fn random_input_state(n: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rho = DensityMatrix::zero_state(n)?;
    let kinds = if n >= 2 { 3 } else { 2 };
    for _ in 0..STATE_PREP_GATES {
        let g = match rng.gen_range(0..kinds) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::S(rng.gen_range(0..n)),
            _ => {
                let (a, b) = random_pair(&mut rng, n);
                Gate::Cx(a, b)
            }
        };
        rho.apply_gate(&g)?;
    }
    Ok(rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CircuitMode {
    CliffordOnly,
    #[default]
    CliffordPlusRz,
}

/// One random problem: circuit, input state and its ideal output.
#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub circuit: Circuit,
    pub input: DensityMatrix,
    pub ideal: DensityMatrix,
}

impl Instance {
    pub fn generate(n: usize, cnots: usize, rz: usize, seed: u64) -> Result<Self> {
        let clifford = random_clifford_circuit(n, cnots, derive_seed(seed, &[0]))?;
        let circuit = insert_random_rz(&clifford, rz, derive_seed(seed, &[1]))?;
        Self::from_circuit(circuit, seed)
    }

    pub fn from_circuit(circuit: Circuit, seed: u64) -> Result<Self> {
        let input = random_input_state(circuit.num_qubits(), derive_seed(seed, &[2]))?;
        let ideal = simulate(&circuit, &input, &NoiseSpec::noiseless())?;
        Ok(Self { seed, circuit, input, ideal })
    }

    /// Fidelity of the plain noisy circuit with the ideal output.
    pub fn unmitigated_fidelity(&self, noise: &NoiseSpec) -> Result<f64> {
        fidelity(&simulate(&self.circuit, &self.input, noise)?, &self.ideal)
    }
}

/// Result of one mitigated run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointOutcome {
    pub f_unmitigated: f64,
    /// `None` when the postselection probability is zero.
    pub f_mitigated: Option<f64>,
    pub postselect_prob: f64,
    pub layers_found: usize,
}

impl PointOutcome {
    pub fn gain(&self) -> Option<f64> {
        self.f_mitigated.map(|f| f - self.f_unmitigated)
    }
}

/// Mitigated fidelity and postselection probability for one check set.
/// An empty check set means no mitigation.
pub fn mitigate(
    instance: &Instance,
    checks: &CheckSet,
    noise: &NoiseSpec,
    scope: NoiseScope,
) -> Result<(Option<f64>, f64)> {
    if checks.is_empty() {
        return Ok((Some(instance.unmitigated_fidelity(noise)?), 1.0));
    }
    let res = build(&instance.circuit, checks)?.run(&instance.input, noise, scope, None)?;
    let f = res.state.map(|s| fidelity(&s, &instance.ideal)).transpose()?;
    Ok((f, res.prob))
}

/// Unmitigated and mitigated runs of one instance at one noise level.
pub fn run_point(
    instance: &Instance,
    search: &CheckSearch,
    noise: &NoiseSpec,
    scope: NoiseScope,
) -> Result<PointOutcome> {
    let total = instance.circuit.num_qubits() + search.found();
    if total > SIM_CAP {
        return Err(Error::QubitCap { what: "experiment point", n: total, cap: SIM_CAP });
    }
    let f_unmitigated = instance.unmitigated_fidelity(noise)?;
    let (f_mitigated, postselect_prob) = mitigate(instance, &search.checks, noise, scope)?;
    Ok(PointOutcome { f_unmitigated, f_mitigated, postselect_prob, layers_found: search.found() })
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<usize>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(usize),
        Many(Vec<usize>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(v) => v,
    })
}

fn default_true() -> bool {
    true
}

fn default_circuits() -> usize {
    20
}

/// Sweep definition; the JSON form uses the same field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub compute_n: usize,
    pub cnot_counts: Vec<usize>,
    #[serde(default)]
    pub rz_count: usize,
    /// Layer counts to evaluate; `0` is the unmitigated baseline.
    #[serde(deserialize_with = "one_or_many")]
    pub num_layers: Vec<usize>,
    #[serde(default = "default_p1_grid")]
    pub p1_grid: Vec<f64>,
    #[serde(default = "default_circuits")]
    pub circuits_per_point: usize,
    pub seed: u64,
    #[serde(default)]
    pub mode: CircuitMode,
    #[serde(default)]
    pub check_policy: CheckPolicy,
    /// When false only the gates of `U` are noisy.
    #[serde(default = "default_true")]
    pub noisy_checks: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.compute_n < 2 {
            return bad(format!("compute_n must be at least 2, got {}", self.compute_n));
        }
        if self.cnot_counts.is_empty() || self.cnot_counts.contains(&0) {
            return bad("cnot_counts must be non-empty and positive".into());
        }
        if self.num_layers.is_empty() {
            return bad("num_layers must be non-empty".into());
        }
        let max_layers = self.num_layers.iter().copied().max().unwrap_or(0);
        if self.compute_n + max_layers > SIM_CAP {
            return bad(format!("{} compute qubits plus {max_layers} ancillas exceeds {SIM_CAP}", self.compute_n));
        }
        if self.p1_grid.is_empty() {
            return bad("p1_grid must be non-empty".into());
        }
        for &p in &self.p1_grid {
            if !(P1_RANGE.0..=P1_RANGE.1).contains(&p) {
                return bad(format!("p1 {p} outside [{}, {}]", P1_RANGE.0, P1_RANGE.1));
            }
        }
        if self.circuits_per_point == 0 {
            return bad("circuits_per_point must be positive".into());
        }
        if self.mode == CircuitMode::CliffordOnly && self.rz_count > 0 {
            return bad("clifford_only mode cannot insert Rz gates".into());
        }
        Ok(())
    }

    fn scope(&self) -> NoiseScope {
        if self.noisy_checks {
            NoiseScope::AllGates
        } else {
            NoiseScope::ComputeOnly
        }
    }

    fn rz(&self) -> usize {
        match self.mode {
            CircuitMode::CliffordOnly => 0,
            CircuitMode::CliffordPlusRz => self.rz_count,
        }
    }
}

/// One row of sweep output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub cnots: usize,
    pub rz: usize,
    pub layers: usize,
    pub p1: f64,
    pub p2: f64,
    pub seed: u64,
    pub circuit_index: usize,
    pub outcome: PointOutcome,
}

impl SweepRecord {
    pub fn gain(&self) -> Option<f64> {
        self.outcome.gain()
    }
}

/// Means over the circuits at one sweep coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub n: usize,
    pub cnots: usize,
    pub rz: usize,
    pub layers: usize,
    pub p1: f64,
    pub circuits: usize,
    /// Circuits whose postselection probability was zero.
    pub empty: usize,
    /// Circuits where all requested layers were found.
    pub complete: usize,
    pub mean_f_unmitigated: f64,
    pub mean_f_mitigated: f64,
    pub mean_gain: f64,
    pub mean_postselect_prob: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    pub summary: Vec<Aggregate>,
}

/// Evaluates every (circuit, layer count, p1) point of `cfg`.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    run_sweep_with(cfg, |_| {})
}

/// [`run_sweep`] with a callback after each finished record.
pub fn run_sweep_with(cfg: &ExperimentConfig, mut progress: impl FnMut(&SweepRecord)) -> Result<SweepResult> {
    cfg.validate()?;
    let noises = cfg.p1_grid.iter().map(|&p1| NoiseSpec::coupled(p1)).collect::<Result<Vec<_>>>()?;
    let mut records = Vec::new();
    for &cnots in &cfg.cnot_counts {
        for idx in 0..cfg.circuits_per_point {
            let seed = derive_seed(cfg.seed, &[cfg.compute_n as u64, cnots as u64, cfg.rz() as u64, idx as u64]);
            let inst = Instance::generate(cfg.compute_n, cnots, cfg.rz(), seed)?;
            let f_un = noises.iter().map(|n| inst.unmitigated_fidelity(n)).collect::<Result<Vec<_>>>()?;
            for &layers in &cfg.num_layers {
                let search = if layers == 0 {
                    CheckSearch { checks: CheckSet::new(cfg.compute_n), requested: 0 }
                } else {
                    cfg.check_policy.find(&inst.circuit, layers)?
                };
                for (k, noise) in noises.iter().enumerate() {
                    let (f_mitigated, postselect_prob) = if layers == 0 {
                        (Some(f_un[k]), 1.0)
                    } else {
                        mitigate(&inst, &search.checks, noise, cfg.scope())?
                    };
                    let rec = SweepRecord {
                        n: cfg.compute_n,
                        cnots,
                        rz: cfg.rz(),
                        layers,
                        p1: noise.p1,
                        p2: noise.p2,
                        seed,
                        circuit_index: idx,
                        outcome: PointOutcome {
                            f_unmitigated: f_un[k],
                            f_mitigated,
                            postselect_prob,
                            layers_found: search.found(),
                        },
                    };
                    progress(&rec);
                    records.push(rec);
                }
            }
        }
    }
    records.sort_by(|a, b| {
        (a.cnots, a.layers, a.circuit_index).cmp(&(b.cnots, b.layers, b.circuit_index)).then(a.p1.total_cmp(&b.p1))
    });
    let summary = summarize(&records);
    Ok(SweepResult { records, summary })
}

/// Groups records by (n, cnots, rz, layers, p1) and averages them.
pub fn summarize(records: &[SweepRecord]) -> Vec<Aggregate> {
    let mut keys: Vec<(usize, usize, usize, usize, f64)> =
        records.iter().map(|r| (r.n, r.cnots, r.rz, r.layers, r.p1)).collect();
    keys.sort_by(|a, b| (a.0, a.1, a.2, a.3).cmp(&(b.0, b.1, b.2, b.3)).then(a.4.total_cmp(&b.4)));
    keys.dedup();
    keys.into_iter()
        .map(|(n, cnots, rz, layers, p1)| {
            let group: Vec<&SweepRecord> = records
                .iter()
                .filter(|r| (r.n, r.cnots, r.rz, r.layers) == (n, cnots, rz, layers) && r.p1 == p1)
                .collect();
            let mean = |v: Vec<f64>| if v.is_empty() { f64::NAN } else { v.iter().sum::<f64>() / v.len() as f64 };
            Aggregate {
                n,
                cnots,
                rz,
                layers,
                p1,
                circuits: group.len(),
                empty: group.iter().filter(|r| r.outcome.f_mitigated.is_none()).count(),
                complete: group.iter().filter(|r| r.outcome.layers_found >= layers).count(),
                mean_f_unmitigated: mean(group.iter().map(|r| r.outcome.f_unmitigated).collect()),
                mean_f_mitigated: mean(group.iter().filter_map(|r| r.outcome.f_mitigated).collect()),
                mean_gain: mean(group.iter().filter_map(|r| r.gain()).collect()),
                mean_postselect_prob: mean(group.iter().map(|r| r.outcome.postselect_prob).collect()),
            }
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "n,cnots,rz,layers,p1,p2,seed,circuit_index,f_unmitigated,f_mitigated,gain,postselect_prob,layers_found";

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), |v| sig(v, 12))
}

/// Per-record CSV, floats with 12 significant digits.
pub fn records_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let o = &r.outcome;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.cnots,
            r.rz,
            r.layers,
            sig(r.p1, 12),
            sig(r.p2, 12),
            r.seed,
            r.circuit_index,
            sig(o.f_unmitigated, 12),
            opt(o.f_mitigated),
            opt(r.gain()),
            sig(o.postselect_prob, 12),
            o.layers_found
        ));
    }
    out
}

/// Aggregate CSV, one row per sweep coordinate.
pub fn summary_csv(summary: &[Aggregate]) -> String {
    let mut out = String::from(
        "n,cnots,rz,layers,p1,circuits,empty,complete,mean_f_unmitigated,mean_f_mitigated,mean_gain,mean_postselect_prob\n",
    );
    for a in summary {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            a.n,
            a.cnots,
            a.rz,
            a.layers,
            sig(a.p1, 12),
            a.circuits,
            a.empty,
            a.complete,
            sig(a.mean_f_unmitigated, 12),
            sig(a.mean_f_mitigated, 12),
            sig(a.mean_gain, 12),
            sig(a.mean_postselect_prob, 12)
        ));
    }
    out
}

/// Sizes for the canned reproductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Small,
    Full,
}

/// Canned sweeps mirroring the published experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Two-qubit Clifford circuit, ideal checks, layers 0 to 4.
    Fig4,
    /// Five qubits, 5 Rz, six layers of low-weight checks.
    Fig7,
    /// Two-qubit Clifford circuits up to 1024 CNOTs.
    Fig12,
}

impl Preset {
    pub fn config(self, scale: Scale) -> ExperimentConfig {
        let small = scale == Scale::Small;
        match self {
            Preset::Fig4 => ExperimentConfig {
                compute_n: 2,
                cnot_counts: vec![30],
                rz_count: 0,
                num_layers: vec![0, 1, 2, 3, 4],
                p1_grid: log_grid(1e-5, 1e-1, 17),
                circuits_per_point: 1,
                seed: 4,
                mode: CircuitMode::CliffordOnly,
                check_policy: CheckPolicy::Lemma2Generators,
                noisy_checks: false,
            },
            Preset::Fig7 => ExperimentConfig {
                compute_n: 5,
                cnot_counts: if small { vec![40] } else { vec![1, 5, 10, 15, 20, 25, 30, 35, 40] },
                rz_count: 5,
                num_layers: vec![6],
                p1_grid: if small { vec![10f64.powf(-3.05), 10f64.powf(-2.6), 1e-2] } else { default_p1_grid() },
                circuits_per_point: if small { 20 } else { 450 },
                seed: 7,
                mode: CircuitMode::CliffordPlusRz,
                check_policy: CheckPolicy::LowWeightFirst,
                noisy_checks: true,
            },
            Preset::Fig12 => ExperimentConfig {
                compute_n: 2,
                cnot_counts: (0..=10).map(|k| 1usize << k).collect(),
                rz_count: 0,
                num_layers: vec![0, 1, 2, 3, 4],
                p1_grid: vec![10f64.powf(-2.9)],
                circuits_per_point: if small { 10 } else { 50 },
                seed: 12,
                mode: CircuitMode::CliffordOnly,
                check_policy: CheckPolicy::Lemma2Generators,
                noisy_checks: true,
            },
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig4" => Ok(Preset::Fig4),
            "fig7" => Ok(Preset::Fig7),
            "fig12" => Ok(Preset::Fig12),
            other => Err(Error::Config(format!("unknown preset {other:?}; expected fig4, fig7 or fig12"))),
        }
    }
}
