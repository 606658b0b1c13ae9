//! Gate-list representation of a computation and its line-based text format.
//!
//! ```text
//! # comment
//! qubits 2
//! h 0
//! rz 1 0.78539816339744828
//! cx 0 1
//! ```

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{self, Mat2, Mat4};
use crate::pauli::{Pauli, DENSE_CAP};

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One gate. Controlled gates list the control first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    H(usize),
    /// `diag(e^{-iθ/2}, e^{iθ/2})`.
    Rz(usize, f64),
    Cx(usize, usize),
    Cy(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    /// Controlled version of a non-identity Pauli letter.
    pub fn controlled(letter: Pauli, control: usize, target: usize) -> Option<Gate> {
        match letter {
            Pauli::I => None,
            Pauli::X => Some(Gate::Cx(control, target)),
            Pauli::Y => Some(Gate::Cy(control, target)),
            Pauli::Z => Some(Gate::Cz(control, target)),
        }
    }

    /// The bare Pauli gate for a non-identity letter.
    pub fn pauli(letter: Pauli, qubit: usize) -> Option<Gate> {
        match letter {
            Pauli::I => None,
            Pauli::X => Some(Gate::X(qubit)),
            Pauli::Y => Some(Gate::Y(qubit)),
            Pauli::Z => Some(Gate::Z(qubit)),
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::H(_) => "h",
            Gate::Rz(..) => "rz",
            Gate::Cx(..) => "cx",
            Gate::Cy(..) => "cy",
            Gate::Cz(..) => "cz",
        }
    }

    /// Qubits touched, control first for two-qubit gates.
    pub fn qubits(&self) -> Qubits {
        match *self {
            Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::S(q) | Gate::Sdg(q) | Gate::H(q) | Gate::Rz(q, _) => {
                Qubits::One(q)
            }
            Gate::Cx(a, b) | Gate::Cy(a, b) | Gate::Cz(a, b) => Qubits::Two(a, b),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.qubits(), Qubits::Two(..))
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(self, Gate::Rz(..))
    }

    /// Same gate with qubit indices remapped.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::X(q) => Gate::X(f(q)),
            Gate::Y(q) => Gate::Y(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::H(q) => Gate::H(f(q)),
            Gate::Rz(q, t) => Gate::Rz(f(q), t),
            Gate::Cx(a, b) => Gate::Cx(f(a), f(b)),
            Gate::Cy(a, b) => Gate::Cy(f(a), f(b)),
            Gate::Cz(a, b) => Gate::Cz(f(a), f(b)),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.qubits() {
            Qubits::One(q) if q >= n => Err(Error::QubitOutOfRange { qubit: q, n }),
            Qubits::Two(a, b) if a >= n || b >= n => Err(Error::QubitOutOfRange { qubit: a.max(b), n }),
            Qubits::Two(a, b) if a == b => Err(Error::InvalidGate(format!("{self} uses qubit {a} twice"))),
            _ => match self {
                Gate::Rz(_, t) if !t.is_finite() => Err(Error::InvalidGate(format!("non-finite angle {t}"))),
                _ => Ok(()),
            },
        }
    }

    /// 2x2 matrix of a single-qubit gate.
    pub fn matrix_1q(&self) -> Option<Mat2> {
        let h = FRAC_1_SQRT_2;
        Some(match *self {
            Gate::X(_) => Pauli::X.matrix(),
            Gate::Y(_) => Pauli::Y.matrix(),
            Gate::Z(_) => Pauli::Z.matrix(),
            Gate::S(_) => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]],
            Gate::Sdg(_) => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]],
            Gate::H(_) => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
            Gate::Rz(_, t) => [
                [Complex64::from_polar(1.0, -t / 2.0), c(0.0, 0.0)],
                [c(0.0, 0.0), Complex64::from_polar(1.0, t / 2.0)],
            ],
            _ => return None,
        })
    }

    /// 4x4 matrix of a controlled gate over the local index `control + 2·target`.
    pub fn matrix_2q(&self) -> Option<Mat4> {
        let target = match self {
            Gate::Cx(..) => Pauli::X.matrix(),
            Gate::Cy(..) => Pauli::Y.matrix(),
            Gate::Cz(..) => Pauli::Z.matrix(),
            _ => return None,
        };
        let mut m = [[c(0.0, 0.0); 4]; 4];
        m[0][0] = c(1.0, 0.0);
        m[2][2] = c(1.0, 0.0);
        for t_out in 0..2 {
            for t_in in 0..2 {
                m[1 + 2 * t_out][1 + 2 * t_in] = target[t_out][t_in];
            }
        }
        Some(m)
    }

    /// `m ← G · m` on a column-major `2^n x 2^n` buffer.
    pub(crate) fn apply_left(&self, m: &mut [Complex64], dim: usize) {
        match self.qubits() {
            Qubits::One(q) => kernels::left_1q(m, dim, q, &self.matrix_1q().unwrap()),
            Qubits::Two(a, b) => kernels::left_2q(m, dim, a, b, &self.matrix_2q().unwrap()),
        }
    }

    /// `m ← m · G†` on a column-major `2^n x 2^n` buffer.
    pub(crate) fn apply_right_adjoint(&self, m: &mut [Complex64], dim: usize) {
        match self.qubits() {
            Qubits::One(q) => kernels::right_1q_adjoint(m, dim, q, &self.matrix_1q().unwrap()),
            Qubits::Two(a, b) => kernels::right_2q_adjoint(m, dim, a, b, &self.matrix_2q().unwrap()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubits {
    One(usize),
    Two(usize, usize),
}

impl Qubits {
    pub fn as_vec(&self) -> Vec<usize> {
        match *self {
            Qubits::One(q) => vec![q],
            Qubits::Two(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rz(q, t) => write!(f, "rz {q} {}", crate::fmt::sig(t, 17)),
            _ => match self.qubits() {
                Qubits::One(q) => write!(f, "{} {q}", self.mnemonic()),
                Qubits::Two(a, b) => write!(f, "{} {a} {b}", self.mnemonic()),
            },
        }
    }
}

/// Ordered gate list on `n` qubits. Gates apply first to last.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn insert(&mut self, index: usize, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.insert(index, gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(Gate::is_clifford)
    }

    /// Dense unitary, later gates multiplying on the left.
    pub fn unitary(&self) -> Result<DMatrix<Complex64>> {
        if self.n > DENSE_CAP {
            return Err(Error::QubitCap { what: "circuit unitary", n: self.n, cap: DENSE_CAP });
        }
        let dim = 1usize << self.n;
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        for g in &self.gates {
            g.apply_left(u.as_mut_slice(), dim);
        }
        Ok(u)
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_qubit(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, message: format!("bad qubit index {tok:?}") })
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let err = |message: String| Error::Parse { line, message };
            let Some(c) = circuit.as_mut() else {
                match toks.as_slice() {
                    ["qubits", n] => {
                        let n = n.parse().map_err(|_| err(format!("bad qubit count {n:?}")))?;
                        if n > crate::pauli::MAX_QUBITS {
                            return Err(err(format!("{n} qubits exceeds {}", crate::pauli::MAX_QUBITS)));
                        }
                        circuit = Some(Circuit::new(n));
                        continue;
                    }
                    _ => return Err(err("expected `qubits N` header".into())),
                }
            };
            let (mnemonic, args) = (toks[0], &toks[1..]);
            let arity = match mnemonic {
                "x" | "y" | "z" | "s" | "sdg" | "h" => 1,
                "rz" | "cx" | "cy" | "cz" => 2,
                "qubits" => return Err(err("duplicate `qubits` header".into())),
                other => return Err(err(format!("unknown gate {other:?}"))),
            };
            if args.len() != arity {
                return Err(err(format!("{mnemonic} takes {arity} arguments, got {}", args.len())));
            }
            let q0 = parse_qubit(args[0], line)?;
            let gate = match mnemonic {
                "x" => Gate::X(q0),
                "y" => Gate::Y(q0),
                "z" => Gate::Z(q0),
                "s" => Gate::S(q0),
                "sdg" => Gate::Sdg(q0),
                "h" => Gate::H(q0),
                "rz" => {
                    let t: f64 = args[1].parse().map_err(|_| err(format!("bad angle {:?}", args[1])))?;
                    Gate::Rz(q0, t)
                }
                "cx" => Gate::Cx(q0, parse_qubit(args[1], line)?),
                "cy" => Gate::Cy(q0, parse_qubit(args[1], line)?),
                _ => Gate::Cz(q0, parse_qubit(args[1], line)?),
            };
            c.push(gate).map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(Error::Parse { line: 0, message: "missing `qubits N` header".into() })
    }
}
