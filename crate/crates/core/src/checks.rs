//! Finding Pauli check pairs `(c1, c2)` with `c2 · U · c1 = U`.
//!
//! A candidate `c2` is pushed leftward through the circuit, last gate first,
//! by conjugation lookups `g† · p · g`. Clifford gates map Paulis to Paulis;
//! an `Rz` lets the string through only if it is `I` or `Z` on that qubit.
//! The fully pushed string is `c1 = U† · c2 · U`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

use Pauli::{I, X, Y, Z};

type Entry1 = (bool, Pauli);
type Entry2 = (bool, Pauli, Pauli);

// g† P g for single-qubit g, indexed by P in I, X, Y, Z order; `true` = minus sign.
const PAULI_X: [Entry1; 4] = [(false, I), (false, X), (true, Y), (true, Z)];
const PAULI_Y: [Entry1; 4] = [(false, I), (true, X), (false, Y), (true, Z)];
const PAULI_Z: [Entry1; 4] = [(false, I), (true, X), (true, Y), (false, Z)];
const HADAMARD: [Entry1; 4] = [(false, I), (false, Z), (true, Y), (false, X)];
const PHASE_S: [Entry1; 4] = [(false, I), (true, Y), (false, X), (false, Z)];
const PHASE_SDG: [Entry1; 4] = [(false, I), (false, Y), (true, X), (false, Z)];

// g† (P_c ⊗ P_t) g for controlled gates, indexed by 4·P_c + P_t.
const CTRL_X: [Entry2; 16] = [
    (false, I, I),
    (false, I, X),
    (false, Z, Y),
    (false, Z, Z),
    (false, X, X),
    (false, X, I),
    (false, Y, Z),
    (true, Y, Y),
    (false, Y, X),
    (false, Y, I),
    (true, X, Z),
    (false, X, Y),
    (false, Z, I),
    (false, Z, X),
    (false, I, Y),
    (false, I, Z),
];
const CTRL_Y: [Entry2; 16] = [
    (false, I, I),
    (false, Z, X),
    (false, I, Y),
    (false, Z, Z),
    (false, X, Y),
    (true, Y, Z),
    (false, X, I),
    (false, Y, X),
    (false, Y, Y),
    (false, X, Z),
    (false, Y, I),
    (true, X, X),
    (false, Z, I),
    (false, I, X),
    (false, Z, Y),
    (false, I, Z),
];
const CTRL_Z: [Entry2; 16] = [
    (false, I, I),
    (false, Z, X),
    (false, Z, Y),
    (false, I, Z),
    (false, X, Z),
    (false, Y, Y),
    (true, Y, X),
    (false, X, I),
    (false, Y, Z),
    (true, X, Y),
    (false, X, X),
    (false, Y, I),
    (false, Z, I),
    (false, I, X),
    (false, I, Y),
    (false, Z, Z),
];

fn index(p: Pauli) -> usize {
    p as usize
}

/// Whether `p` can be pushed through `gate`: false only for an `Rz` meeting X or Y.
pub fn can_continue(gate: &Gate, p: &PauliString) -> bool {
    match *gate {
        Gate::Rz(q, _) => matches!(p.letter(q), I | Z),
        _ => true,
    }
}

/// Pushes `p` leftward through `gate`, returning `gate† · p · gate`.
pub fn push_left(gate: &Gate, p: &PauliString) -> Result<PauliString> {
    gate.validate(p.num_qubits())?;
    if !can_continue(gate, p) {
        return Err(Error::PushBlocked { gate: gate.to_string(), pauli: p.to_string() });
    }
    let mut out = *p;
    let mut flip = false;
    let single = |table: &[Entry1; 4], q: usize, out: &mut PauliString| {
        let (neg, l) = table[index(out.letter(q))];
        out.set(q, l);
        neg
    };
    match *gate {
        Gate::X(q) => flip = single(&PAULI_X, q, &mut out),
        Gate::Y(q) => flip = single(&PAULI_Y, q, &mut out),
        Gate::Z(q) => flip = single(&PAULI_Z, q, &mut out),
        Gate::H(q) => flip = single(&HADAMARD, q, &mut out),
        Gate::S(q) => flip = single(&PHASE_S, q, &mut out),
        Gate::Sdg(q) => flip = single(&PHASE_SDG, q, &mut out),
        Gate::Rz(..) => {}
        Gate::Cx(a, b) | Gate::Cy(a, b) | Gate::Cz(a, b) => {
            let table = match gate {
                Gate::Cx(..) => &CTRL_X,
                Gate::Cy(..) => &CTRL_Y,
                _ => &CTRL_Z,
            };
            let (neg, la, lb) = table[4 * index(out.letter(a)) + index(out.letter(b))];
            out.set(a, la);
            out.set(b, lb);
            flip = neg;
        }
    }
    if flip {
        out = out.with_phase(out.phase() + 2);
    }
    Ok(out)
}

/// Pushes `c2` through the whole circuit, or `None` at the first blocking `Rz`.
pub fn push_through(u: &Circuit, c2: &PauliString) -> Result<Option<PauliString>> {
    if c2.num_qubits() != u.num_qubits() {
        return Err(Error::SizeMismatch { left: c2.num_qubits(), right: u.num_qubits() });
    }
    let mut p = *c2;
    for g in u.gates().iter().rev() {
        if !can_continue(g, &p) {
            return Ok(None);
        }
        p = push_left(g, &p)?;
    }
    Ok(Some(p))
}

/// One layer: left check `c1` and right check `c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckLayer {
    pub c1: PauliString,
    pub c2: PauliString,
}

impl CheckLayer {
    pub fn new(c1: PauliString, c2: PauliString) -> Result<Self> {
        if c1.num_qubits() != c2.num_qubits() {
            return Err(Error::SizeMismatch { left: c1.num_qubits(), right: c2.num_qubits() });
        }
        if c2.phase() != 0 || c2.weight() == 0 {
            return Err(Error::InvalidPauli(format!("right check {c2} must be +1 phase and non-identity")));
        }
        if !c1.is_hermitian() {
            return Err(Error::NonHermitianCheck(c1.phase()));
        }
        Ok(Self { c1, c2 })
    }

    /// Largest entry of `c2 · U · c1 - U`.
    pub fn dense_residual(&self, u: &Circuit) -> Result<f64> {
        let um = u.unitary()?;
        let lhs: DMatrix<Complex64> = self.c2.dense_matrix()? * &um * self.c1.dense_matrix()?;
        Ok((lhs - um).iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

impl fmt::Display for CheckLayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c2={} c1={}", self.c2, self.c1)
    }
}

/// Check layers, innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSet {
    n: usize,
    layers: Vec<CheckLayer>,
}

impl CheckSet {
    pub fn new(n: usize) -> Self {
        Self { n, layers: Vec::new() }
    }

    pub fn from_layers(n: usize, layers: impl IntoIterator<Item = CheckLayer>) -> Result<Self> {
        let mut set = Self::new(n);
        for l in layers {
            set.push(l)?;
        }
        Ok(set)
    }

    /// Adds the next layer outward.
    pub fn push(&mut self, layer: CheckLayer) -> Result<()> {
        if layer.c2.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: layer.c2.num_qubits(), right: self.n });
        }
        if self.layers.iter().any(|l| l.c2 == layer.c2) {
            return Err(Error::InvalidPauli(format!("duplicate right check {}", layer.c2)));
        }
        self.layers.push(layer);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[CheckLayer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn truncated(&self, m: usize) -> CheckSet {
        CheckSet { n: self.n, layers: self.layers[..m.min(self.layers.len())].to_vec() }
    }

    pub fn right_checks(&self) -> impl Iterator<Item = &PauliString> {
        self.layers.iter().map(|l| &l.c2)
    }
}

/// Outcome of a check search: the layers found and how many were asked for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSearch {
    pub checks: CheckSet,
    pub requested: usize,
}

impl CheckSearch {
    pub fn found(&self) -> usize {
        self.checks.len()
    }

    pub fn is_complete(&self) -> bool {
        self.found() >= self.requested
    }
}

/// Scans `candidates` in order and keeps the first `num_layers` that push through `u`.
pub fn find_checks_from(
    u: &Circuit,
    num_layers: usize,
    candidates: impl IntoIterator<Item = PauliString>,
) -> Result<CheckSearch> {
    if num_layers == 0 {
        return Err(Error::Config("at least one layer must be requested".into()));
    }
    let mut checks = CheckSet::new(u.num_qubits());
    for c2 in candidates {
        if checks.len() == num_layers {
            break;
        }
        if checks.right_checks().any(|p| *p == c2) {
            continue;
        }
        if let Some(c1) = push_through(u, &c2)? {
            checks.push(CheckLayer::new(c1, c2)?)?;
        }
    }
    Ok(CheckSearch { checks, requested: num_layers })
}

/// Lowest-weight-first search over all +1-phase Pauli strings.
pub fn find_checks(u: &Circuit, num_layers: usize) -> Result<CheckSearch> {
    find_checks_from(u, num_layers, PauliString::enumerate_by_weight(u.num_qubits()))
}

/// How the right checks are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CheckPolicy {
    /// Lowest weight first, in enumeration order.
    #[default]
    LowWeightFirst,
    /// Highest weight first.
    MaxWeight,
    /// `X^{⊗n}` then `Z^{⊗n}`.
    Lemma1Pair,
    /// `X` and `Z` on each qubit in turn: `X_0, Z_0, X_1, Z_1, ...`.
    Lemma2Generators,
}

impl CheckPolicy {
    pub fn candidates(self, n: usize) -> Box<dyn Iterator<Item = PauliString>> {
        match self {
            CheckPolicy::LowWeightFirst => Box::new(PauliString::enumerate_by_weight(n)),
            CheckPolicy::MaxWeight => Box::new(PauliString::enumerate_by_weight_desc(n)),
            CheckPolicy::Lemma1Pair => Box::new(
                [Pauli::X, Pauli::Z].into_iter().map(move |l| PauliString::uniform(n, l).expect("qubit count")),
            ),
            CheckPolicy::Lemma2Generators => Box::new((0..n).flat_map(move |k| {
                [Pauli::X, Pauli::Z].into_iter().map(move |l| PauliString::single(n, k, l).expect("qubit index"))
            })),
        }
    }

    pub fn find(self, u: &Circuit, num_layers: usize) -> Result<CheckSearch> {
        find_checks_from(u, num_layers, self.candidates(u.num_qubits()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn push_examples() {
        assert_eq!(push_left(&Gate::H(0), &p("X")).unwrap(), p("Z"));
        assert_eq!(push_left(&Gate::Cx(0, 1), &p("ZZ")).unwrap(), p("IZ"));
        assert_eq!(push_left(&Gate::Rz(0, 0.3), &p("Z")).unwrap(), p("Z"));
        assert_eq!(push_left(&Gate::S(0), &p("X")).unwrap(), p("-Y"));
    }

    #[test]
    fn push_blocked_by_rz() {
        assert!(!can_continue(&Gate::Rz(0, 0.3), &p("XI")));
        assert!(!can_continue(&Gate::Rz(0, 0.3), &p("YI")));
        assert!(can_continue(&Gate::Rz(0, 0.3), &p("ZX")));
        assert!(can_continue(&Gate::Rz(0, 0.3), &p("IX")));
        assert!(can_continue(&Gate::Cx(0, 1), &p("YY")));
        assert!(matches!(push_left(&Gate::Rz(0, 0.3), &p("X")), Err(Error::PushBlocked { .. })));
    }

    #[test]
    fn pushing_through_identity_circuit_is_trivial() {
        let u = Circuit::new(3);
        for c2 in PauliString::enumerate_by_weight(3) {
            assert_eq!(push_through(&u, &c2).unwrap(), Some(c2));
        }
    }

    #[test]
    fn cnot_search_finds_commuting_checks() {
        let u = Circuit::from_gates(2, vec![Gate::Cx(0, 1)]).unwrap();
        let search = find_checks(&u, 2).unwrap();
        assert!(search.is_complete());
        assert_eq!(search.checks.layers()[0], CheckLayer::new(p("XX"), p("XI")).unwrap());
        assert_eq!(search.checks.layers()[1], CheckLayer::new(p("YX"), p("YI")).unwrap());

        let six = find_checks(&u, 6).unwrap();
        let layers = six.checks.layers();
        assert!(layers.contains(&CheckLayer::new(p("ZI"), p("ZI")).unwrap()));
        assert!(layers.contains(&CheckLayer::new(p("IX"), p("IX")).unwrap()));
    }

    #[test]
    fn partial_search_reports_count() {
        let u = Circuit::from_gates(1, vec![Gate::Rz(0, 0.4)]).unwrap();
        let search = find_checks(&u, 3).unwrap();
        assert_eq!(search.found(), 1);
        assert!(!search.is_complete());
        assert_eq!(search.checks.layers()[0].c2, p("Z"));
    }

    #[test]
    fn zero_layers_rejected() {
        assert!(find_checks(&Circuit::new(1), 0).is_err());
    }

    #[test]
    fn layer_validation() {
        assert!(CheckLayer::new(p("X"), p("-X")).is_err());
        assert!(CheckLayer::new(p("I"), p("I")).is_err());
        assert!(matches!(CheckLayer::new(p("+iX"), p("X")), Err(Error::NonHermitianCheck(1))));
        let mut set = CheckSet::new(1);
        set.push(CheckLayer::new(p("X"), p("X")).unwrap()).unwrap();
        assert!(set.push(CheckLayer::new(p("-X"), p("X")).unwrap()).is_err());
        assert!(set.push(CheckLayer::new(p("XX"), p("XX")).unwrap()).is_err());
    }

    #[test]
    fn policies_produce_expected_candidates() {
        let l1: Vec<_> = CheckPolicy::Lemma1Pair.candidates(3).map(|p| p.to_string()).collect();
        assert_eq!(l1, ["XXX", "ZZZ"]);
        let l2: Vec<_> = CheckPolicy::Lemma2Generators.candidates(2).map(|p| p.to_string()).collect();
        assert_eq!(l2, ["XI", "ZI", "IX", "IZ"]);
        assert_eq!(CheckPolicy::MaxWeight.candidates(2).next().unwrap().weight(), 2);
    }
}
