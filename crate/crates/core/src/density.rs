//! Dense density-matrix simulation with per-gate depolarizing noise,
//! postselection on ancillas and state fidelity.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Hard cap on simulated qubits (compute plus ancillas).
pub const SIM_CAP: usize = 12;

/// Probabilities below this count as an empty postselection.
pub const ZERO_PROB: f64 = 1e-15;

const PSD_TOL: f64 = 1e-8;

/// `n`-qubit density matrix, qubit 0 the least significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    data: DMatrix<Complex64>,
}

fn check_cap(n: usize) -> Result<()> {
    if n > SIM_CAP {
        return Err(Error::QubitCap { what: "density matrix", n, cap: SIM_CAP });
    }
    Ok(())
}

/// Spreads the low bits of `v` into the positions not set in `holes`.
fn deposit(mut v: usize, holes: usize, dim: usize) -> usize {
    let mut out = 0;
    let mut bit = 1;
    while bit < dim {
        if holes & bit == 0 {
            if v & 1 == 1 {
                out |= bit;
            }
            v >>= 1;
        }
        bit <<= 1;
    }
    out
}

impl DensityMatrix {
    /// `|0…0⟩⟨0…0|`.
    pub fn zero_state(n: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1 << n;
        let mut data = DMatrix::zeros(dim, dim);
        data[(0, 0)] = Complex64::new(1.0, 0.0);
        Ok(Self { n, data })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1 << n;
        Ok(Self { n, data: DMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0) })
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector.
    pub fn from_pure(psi: &DVector<Complex64>) -> Result<Self> {
        let n = Self::qubits_for(psi.len())?;
        Ok(Self { n, data: psi * psi.adjoint() })
    }

    /// Wraps a square matrix without checking physicality.
    pub fn from_matrix(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotPowerOfTwo(data.nrows()));
        }
        let n = Self::qubits_for(data.nrows())?;
        Ok(Self { n, data })
    }

    fn qubits_for(dim: usize) -> Result<usize> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let n = dim.trailing_zeros() as usize;
        check_cap(n)?;
        Ok(n)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ.
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entry of `ρ - ρ†`.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.data - self.data.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let h = (&self.data + self.data.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `ρ ⊗ |0…0⟩⟨0…0|` with `m` extra qubits above the existing ones.
    pub fn with_zero_ancillas(&self, m: usize) -> Result<Self> {
        check_cap(self.n + m)?;
        let dim = 1 << (self.n + m);
        let mut data = DMatrix::zeros(dim, dim);
        data.view_mut((0, 0), (self.dim(), self.dim())).copy_from(&self.data);
        Ok(Self { n: self.n + m, data })
    }

    /// `ρ ← G ρ G†`, applied by index striding.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        g.validate(self.n)?;
        let dim = self.dim();
        let buf = self.data.as_mut_slice();
        g.apply_left(buf, dim);
        g.apply_right_adjoint(buf, dim);
        Ok(())
    }

    /// `ρ ← U ρ U†` for a dense unitary on all qubits.
    pub fn apply_unitary(&mut self, u: &DMatrix<Complex64>) -> Result<()> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::SizeMismatch { left: u.nrows(), right: self.dim() });
        }
        self.data = u * &self.data * u.adjoint();
        Ok(())
    }

    /// Depolarizes the listed qubits: `ρ → (1-p)ρ + p · tr_S(ρ) ⊗ I/d`.
    pub fn apply_depolarizing(&mut self, qubits: &[usize], p: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        let mut holes = 0usize;
        for &q in qubits {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
            }
            if holes & (1 << q) != 0 {
                return Err(Error::InvalidGate(format!("qubit {q} listed twice")));
            }
            holes |= 1 << q;
        }
        if p == 0.0 || qubits.is_empty() {
            return Ok(());
        }
        let dim = self.dim();
        let d = 1usize << qubits.len();
        let offsets: Vec<usize> = (0..d).map(|s| deposit_into(s, qubits)).collect();
        let keep = 1.0 - p;
        let mix = p / d as f64;
        let buf = self.data.as_mut_slice();
        let bases: Vec<usize> = (0..dim / d).map(|i| deposit(i, holes, dim)).collect();
        for &c in &bases {
            for &r in &bases {
                let mut t = Complex64::new(0.0, 0.0);
                for &o in &offsets {
                    t += buf[(r | o) + (c | o) * dim];
                }
                for &oc in &offsets {
                    let col = (c | oc) * dim;
                    for &or in &offsets {
                        buf[(r | or) + col] *= keep;
                    }
                    buf[(r | oc) + col] += t * mix;
                }
            }
        }
        Ok(())
    }

    /// Projects the listed qubits onto `|0⟩`, records the probability, and
    /// traces them out.
    pub fn postselect_zeros(&self, ancillas: &[usize]) -> Result<PostselectedResult> {
        let mut holes = 0usize;
        for &q in ancillas {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
            }
            holes |= 1 << q;
        }
        let kept = self.n - holes.count_ones() as usize;
        let kdim = 1usize << kept;
        let dim = self.dim();
        let map: Vec<usize> = (0..kdim).map(|i| deposit(i, holes, dim)).collect();
        let block = DMatrix::from_fn(kdim, kdim, |r, c| self.data[(map[r], map[c])]);
        let prob = block.trace().re;
        if prob.abs() < ZERO_PROB {
            return Ok(PostselectedResult { state: None, prob: 0.0 });
        }
        let state = DensityMatrix { n: kept, data: block / Complex64::new(prob, 0.0) };
        Ok(PostselectedResult { state: Some(state), prob })
    }
}

fn deposit_into(s: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (i, &q)| acc | ((s >> i & 1) << q))
}

/// Compute-register state after postselection.
#[derive(Debug, Clone, PartialEq)]
pub struct PostselectedResult {
    /// `None` when the postselected outcome has zero probability.
    pub state: Option<DensityMatrix>,
    pub prob: f64,
}

/// Per-gate depolarizing strengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub p1: f64,
    pub p2: f64,
}

impl NoiseSpec {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        for p in [p1, p2] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        Ok(Self { p1, p2 })
    }

    /// Two-qubit rate ten times the single-qubit rate.
    pub fn coupled(p1: f64) -> Result<Self> {
        Self::new(p1, 10.0 * p1)
    }

    pub fn noiseless() -> Self {
        Self { p1: 0.0, p2: 0.0 }
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }

    pub fn for_gate(&self, g: &Gate) -> f64 {
        if g.is_two_qubit() {
            self.p2
        } else {
            self.p1
        }
    }
}

/// Applies `g` and, if `noisy`, its depolarizing event.
pub(crate) fn apply_noisy_gate(rho: &mut DensityMatrix, g: &Gate, noise: &NoiseSpec, noisy: bool) -> Result<()> {
    rho.apply_gate(g)?;
    if noisy {
        rho.apply_depolarizing(&g.qubits().as_vec(), noise.for_gate(g))?;
    }
    Ok(())
}

/// Runs `circ` on `rho0`, each gate followed by its depolarizing channel.
pub fn simulate(circ: &Circuit, rho0: &DensityMatrix, noise: &NoiseSpec) -> Result<DensityMatrix> {
    if circ.num_qubits() != rho0.num_qubits() {
        return Err(Error::SizeMismatch { left: circ.num_qubits(), right: rho0.num_qubits() });
    }
    let mut rho = rho0.clone();
    let noisy = !noise.is_noiseless();
    for g in circ.gates() {
        apply_noisy_gate(&mut rho, g, noise, noisy)?;
    }
    Ok(rho)
}

/// Rank-one check: returns `|ψ⟩` when `ρ = |ψ⟩⟨ψ|` to 1e-10.
fn pure_vector(rho: &DensityMatrix) -> Option<DVector<Complex64>> {
    let m = &rho.data;
    let (k, diag) = (0..rho.dim()).map(|i| (i, m[(i, i)].re)).max_by(|a, b| a.1.total_cmp(&b.1))?;
    if diag <= 0.0 {
        return None;
    }
    let psi = m.column(k) / Complex64::new(diag.sqrt(), 0.0);
    let resid = (m - &psi * psi.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    (resid <= 1e-10).then_some(psi)
}

fn require_psd(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let ev = rho.eigenvalues();
    if ev[0] < -PSD_TOL {
        return Err(Error::NotPositive(ev[0]));
    }
    Ok(ev)
}

/// Uhlmann fidelity `(tr √(√a · b · √a))²`.
///
/// When either argument is pure this reduces to `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::SizeMismatch { left: a.n, right: b.n });
    }
    for (pure, other) in [(b, a), (a, b)] {
        if let Some(psi) = pure_vector(pure) {
            require_psd(other)?;
            let f = (psi.adjoint() * &other.data * &psi)[(0, 0)].re;
            return Ok(f.clamp(0.0, 1.0));
        }
    }
    require_psd(b)?;
    let h = (&a.data + a.data.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l < -PSD_TOL) {
        return Err(Error::NotPositive(eig.eigenvalues.min()));
    }
    let roots = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)));
    let sqrt_a = &eig.eigenvectors * roots * eig.eigenvectors.adjoint();
    let inner = &sqrt_a * &b.data * &sqrt_a;
    let inner = (&inner + inner.adjoint()) * Complex64::new(0.5, 0.0);
    let s: f64 = inner.symmetric_eigenvalues().iter().map(|l| l.max(0.0).sqrt()).sum();
    Ok((s * s).clamp(0.0, 1.0))
}
