//! Exact arithmetic on the n-qubit Pauli group.
//!
//! A [`PauliString`] is stored in symplectic form: one X bit and one Z bit per
//! qubit, packed into a `u64`, together with a global phase `i^phase`. The
//! letters are read off the bits as `(0,0) = I`, `(1,0) = X`, `(0,1) = Z`,
//! `(1,1) = Y`, and the phase multiplies the tensor product of those letters.
//! Qubit 0 is the least significant bit of the computational-basis index.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest qubit count a [`PauliString`] can hold.
pub const MAX_QUBITS: usize = 64;

/// Largest qubit count for which dense matrices are produced.
pub const DENSE_CAP: usize = 12;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Dense 2x2 matrix of the letter.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// `i^k` for `k` taken mod 4.
pub fn i_pow(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Element of the n-qubit Pauli group, `i^phase` times a tensor product of letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::QubitCap { what: "Pauli string", n, cap: MAX_QUBITS });
    }
    Ok(())
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        Self { n, x: 0, z: 0, phase: 0 }
    }

    /// Builds a string from raw symplectic bits. Bits above `n` must be clear.
    pub fn from_bits(n: usize, x: u64, z: u64, phase: u8) -> Result<Self> {
        check_n(n)?;
        if (x | z) & !mask(n) != 0 {
            return Err(Error::InvalidPauli(format!("bits set beyond qubit {n}")));
        }
        Ok(Self { n, x, z, phase: phase & 3 })
    }

    /// Letters listed from qubit 0 upward.
    pub fn from_letters(letters: &[Pauli], phase: u8) -> Result<Self> {
        check_n(letters.len())?;
        let mut p = Self { n: letters.len(), x: 0, z: 0, phase: phase & 3 };
        for (k, &l) in letters.iter().enumerate() {
            p.set(k, l);
        }
        Ok(p)
    }

    /// `letter` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Pauli) -> Result<Self> {
        check_n(n)?;
        if qubit >= n {
            return Err(Error::QubitOutOfRange { qubit, n });
        }
        let mut p = Self::identity(n);
        p.set(qubit, letter);
        Ok(p)
    }

    /// The same letter on every qubit, e.g. `X^{⊗n}`.
    pub fn uniform(n: usize, letter: Pauli) -> Result<Self> {
        check_n(n)?;
        let (x, z) = letter.bits();
        let m = mask(n);
        Ok(Self { n, x: if x { m } else { 0 }, z: if z { m } else { 0 }, phase: 0 })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Power of `i` in front of the letter string.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    /// Hermitian iff the phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        assert!(qubit < self.n, "qubit {qubit} out of range");
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n).map(move |k| self.letter(k))
    }

    pub fn set(&mut self, qubit: usize, letter: Pauli) {
        assert!(qubit < self.n, "qubit {qubit} out of range");
        let (x, z) = letter.bits();
        let bit = 1u64 << qubit;
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        let s = self.x | self.z;
        (0..self.n).filter(move |k| s >> k & 1 == 1)
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Matrix product `self · other`, phase included.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        // Each operand is i^(phase + #Y) X^x Z^z; reordering Z^z1 past X^x2
        // costs (-1)^(z1·x2), and the result drops back to letters by i^(-#Y).
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let swap = 2 * (self.z & other.x).count_ones();
        let res_y = (x & z).count_ones();
        let total = self.phase as u32 + other.phase as u32 + self.y_count() + other.y_count() + swap + 4 * 64 - res_y;
        Ok(PauliString { n: self.n, x, z, phase: (total % 4) as u8 })
    }

    /// True iff the two strings commute, from the symplectic inner product.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let s = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        Ok(s.is_multiple_of(2))
    }

    /// Hermitian conjugate: letters are Hermitian, so only the phase flips.
    pub fn adjoint(&self) -> PauliString {
        PauliString { phase: (4 - self.phase) & 3, ..*self }
    }

    /// Dense `2^n x 2^n` matrix with qubit 0 as the least significant index bit.
    pub fn dense_matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.n > DENSE_CAP {
            return Err(Error::QubitCap { what: "dense matrix", n: self.n, cap: DENSE_CAP });
        }
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        let base = self.phase + (self.y_count() % 4) as u8;
        for col in 0..dim {
            let sign = 2 * ((self.z & col as u64).count_ones() % 2) as u8;
            m[(col ^ self.x as usize, col)] = i_pow(base + sign);
        }
        Ok(m)
    }

    /// Weight-ordered stream of all `4^n - 1` non-identity, +1-phase strings.
    ///
    /// Within one weight the supports are visited in lexicographic order of
    /// qubit indices, and for each support the letters run X < Y < Z with the
    /// lowest support qubit varying slowest.
    pub fn enumerate_by_weight(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        (1..=n).flat_map(move |w| Combinations::new(n, w).flat_map(move |support| LetterAssignments::new(n, support)))
    }

    /// Like [`enumerate_by_weight`](Self::enumerate_by_weight) but heaviest first.
    pub fn enumerate_by_weight_desc(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        (1..=n)
            .rev()
            .flat_map(move |w| Combinations::new(n, w).flat_map(move |support| LetterAssignments::new(n, support)))
    }
}

/// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All {X,Y,Z} assignments over a fixed support, first support qubit slowest.
struct LetterAssignments {
    n: usize,
    support: Vec<usize>,
    counter: Vec<u8>,
    done: bool,
}

impl LetterAssignments {
    fn new(n: usize, support: Vec<usize>) -> Self {
        let counter = vec![0; support.len()];
        Self { n, support, counter, done: false }
    }
}

impl Iterator for LetterAssignments {
    type Item = PauliString;

    fn next(&mut self) -> Option<PauliString> {
        if self.done {
            return None;
        }
        let mut p = PauliString::identity(self.n);
        for (&q, &c) in self.support.iter().zip(&self.counter) {
            p.set(q, Pauli::NON_IDENTITY[c as usize]);
        }
        let mut i = self.counter.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.counter[i] < 2 {
                self.counter[i] += 1;
                break;
            }
            self.counter[i] = 0;
        }
        Some(p)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::InvalidPauli(s.to_string()));
        }
        let letters = body
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::InvalidPauli(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        PauliString::from_letters(&letters, phase)
    }
}
