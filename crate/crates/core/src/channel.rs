//! Signed Kraus channels and the error-map transforms induced by Pauli checks.
//!
//! A channel acts as `ρ ↦ Σ ηᵢ Eᵢ ρ Eᵢ†` with `ηᵢ = ±1`. All `ηᵢ = +1` is an
//! ordinary CP map; a negative sign admits non-completely-positive maps. A
//! layer with right check `C` replaces every term by `(C E C† + E)/2`, which
//! keeps the Pauli components of `E` commuting with `C` and cancels the rest.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::checks::CheckSet;
use crate::circuit::Circuit;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::pauli::{i_pow, Pauli, PauliString, DENSE_CAP};

/// Terms with Frobenius norm below this are dropped after a transform.
pub const PRUNE_TOL: f64 = 1e-12;

/// Sign `η` of a Kraus term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausTerm {
    pub eta: Sign,
    pub op: DMatrix<Complex64>,
}

/// `ρ ↦ Σ ηᵢ Eᵢ ρ Eᵢ†` on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    n: usize,
    terms: Vec<KrausTerm>,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `op` acting on `qubit` of an `n`-qubit register.
pub fn embed_single(op: &DMatrix<Complex64>, qubit: usize, n: usize) -> DMatrix<Complex64> {
    assert_eq!(op.shape(), (2, 2), "single-qubit operator expected");
    assert!(qubit < n && n <= DENSE_CAP, "qubit {qubit} out of range");
    let hi = DMatrix::<Complex64>::identity(1 << (n - qubit - 1), 1 << (n - qubit - 1));
    let lo = DMatrix::<Complex64>::identity(1 << qubit, 1 << qubit);
    hi.kronecker(op).kronecker(&lo)
}

impl KrausChannel {
    pub fn new(n: usize) -> Self {
        assert!(n <= DENSE_CAP, "at most {DENSE_CAP} qubits");
        Self { n, terms: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut ch = Self::new(n);
        ch.terms.push(KrausTerm { eta: Sign::Plus, op: DMatrix::identity(1 << n, 1 << n) });
        ch
    }

    /// CP channel from a list of Kraus operators.
    pub fn from_ops(n: usize, ops: impl IntoIterator<Item = DMatrix<Complex64>>) -> Result<Self> {
        let mut ch = Self::new(n);
        for op in ops {
            ch.push(Sign::Plus, op)?;
        }
        Ok(ch)
    }

    /// Single Kraus operator `U`.
    pub fn unitary(u: DMatrix<Complex64>) -> Result<Self> {
        let n = qubits_for(u.nrows())?;
        Self::from_ops(n, [u])
    }

    /// Pauli channel `Σ w_P P ρ P` from weights on Pauli strings.
    pub fn pauli_channel(n: usize, weights: &[(PauliString, f64)]) -> Result<Self> {
        let mut ch = Self::new(n);
        for (p, w) in weights {
            if *w < 0.0 {
                return Err(Error::InvalidProbability(*w));
            }
            ch.push(Sign::Plus, p.dense_matrix()? * c(w.sqrt()))?;
        }
        Ok(ch)
    }

    /// Depolarizing channel on `qubits` as a Pauli-weighted Kraus list.
    pub fn depolarizing(n: usize, qubits: &[usize], p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        let k = qubits.len();
        let d2 = (1usize << (2 * k)) as f64;
        let mut weights = Vec::with_capacity(1 << (2 * k));
        for code in 0..1usize << (2 * k) {
            let mut pauli = PauliString::identity(n);
            for (i, &q) in qubits.iter().enumerate() {
                if q >= n {
                    return Err(Error::QubitOutOfRange { qubit: q, n });
                }
                pauli.set(q, Pauli::ALL[code >> (2 * i) & 3]);
            }
            let w = if code == 0 { 1.0 - p + p / d2 } else { p / d2 };
            weights.push((pauli, w));
        }
        Self::pauli_channel(n, &weights)
    }

    pub fn push(&mut self, eta: Sign, op: DMatrix<Complex64>) -> Result<()> {
        let dim = 1usize << self.n;
        if op.shape() != (dim, dim) {
            return Err(Error::SizeMismatch { left: op.nrows(), right: dim });
        }
        self.terms.push(KrausTerm { eta, op });
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[KrausTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_cp(&self) -> bool {
        self.terms.iter().all(|t| t.eta == Sign::Plus)
    }

    /// Largest entry of `Σ ηᵢ Eᵢ†Eᵢ - I`.
    pub fn trace_preservation_error(&self) -> f64 {
        let dim = 1usize << self.n;
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for t in &self.terms {
            acc += t.op.adjoint() * &t.op * c(t.eta.value());
        }
        (acc - DMatrix::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Σ ηᵢ Eᵢ ρ Eᵢ†`, unnormalized.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: rho.num_qubits(), right: self.n });
        }
        let m = rho.matrix();
        let dim = 1usize << self.n;
        let mut out = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            out += &t.op * m * t.op.adjoint() * c(t.eta.value());
        }
        DensityMatrix::from_matrix(out)
    }

    /// Applies the channel to the lowest `n` qubits of a larger register.
    pub fn apply_to_low_qubits(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.num_qubits() < self.n {
            return Err(Error::SizeMismatch { left: rho.num_qubits(), right: self.n });
        }
        let dc = 1usize << self.n;
        let blocks = rho.dim() / dc;
        let m = rho.matrix();
        let mut out = DMatrix::zeros(rho.dim(), rho.dim());
        for a in 0..blocks {
            for b in 0..blocks {
                let block = m.view((a * dc, b * dc), (dc, dc));
                let mut acc = DMatrix::<Complex64>::zeros(dc, dc);
                for t in &self.terms {
                    acc += &t.op * block * t.op.adjoint() * c(t.eta.value());
                }
                out.view_mut((a * dc, b * dc), (dc, dc)).copy_from(&acc);
            }
        }
        DensityMatrix::from_matrix(out)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &KrausChannel) -> Result<KrausChannel> {
        if self.n != next.n {
            return Err(Error::SizeMismatch { left: self.n, right: next.n });
        }
        let mut out = Self::new(self.n);
        for b in &next.terms {
            for a in &self.terms {
                let eta = if a.eta == b.eta { Sign::Plus } else { Sign::Minus };
                out.terms.push(KrausTerm { eta, op: &b.op * &a.op });
            }
        }
        Ok(out)
    }

    fn pruned(mut self) -> Self {
        self.terms.retain(|t| t.op.norm() >= PRUNE_TOL);
        self
    }

    /// One check layer: `Eᵢ ↦ (C Eᵢ C† + Eᵢ)/2`, signs carried over.
    pub fn transform_single_layer(&self, c2: &PauliString) -> Result<KrausChannel> {
        if c2.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: c2.num_qubits(), right: self.n });
        }
        let cm = c2.dense_matrix()?;
        let cm_adj = cm.adjoint();
        let terms =
            self.terms.iter().map(|t| KrausTerm { eta: t.eta, op: (&cm * &t.op * &cm_adj + &t.op) * c(0.5) }).collect();
        Ok(KrausChannel { n: self.n, terms }.pruned())
    }

    /// Folds [`transform_single_layer`](Self::transform_single_layer) over
    /// the layers, innermost first.
    pub fn transform_multilayer(&self, checks: &CheckSet) -> Result<KrausChannel> {
        if checks.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: checks.num_qubits(), right: self.n });
        }
        checks.right_checks().try_fold(self.clone(), |ch, c2| ch.transform_single_layer(c2))
    }

    /// `(1/|T|) Σ_V V ℰ(V† ρ V) V†` as a Kraus list.
    pub fn twirl(&self, set: &[PauliString]) -> Result<KrausChannel> {
        if set.is_empty() {
            return Err(Error::Empty("twirling set"));
        }
        let scale = c((1.0 / set.len() as f64).sqrt());
        let mut out = Self::new(self.n);
        for v in set {
            if v.num_qubits() != self.n {
                return Err(Error::SizeMismatch { left: v.num_qubits(), right: self.n });
            }
            let vm = v.dense_matrix()?;
            let vm_adj = vm.adjoint();
            for t in &self.terms {
                out.terms.push(KrausTerm { eta: t.eta, op: &vm * &t.op * &vm_adj * scale });
            }
        }
        Ok(out)
    }

    /// Pauli transfer matrix `R_ab = tr(σ_a ℰ(σ_b)) / 2ⁿ`, indexed by
    /// [`PauliExpansion::index`].
    pub fn pauli_transfer_matrix(&self) -> Result<DMatrix<f64>> {
        let k = 1usize << (2 * self.n);
        let dense: Vec<_> =
            (0..k).map(|i| PauliExpansion::pauli_at(self.n, i).dense_matrix()).collect::<Result<_>>()?;
        let mut r = DMatrix::zeros(k, k);
        for (b, sb) in dense.iter().enumerate() {
            let out = self.apply(&DensityMatrix::from_matrix(sb.clone())?)?;
            let expansion = pauli_expand(out.matrix())?;
            for a in 0..k {
                // tr(σ_a M)/2ⁿ is exactly the expansion coefficient of M on σ_a.
                r[(a, b)] = expansion.coefficients[a].re;
            }
        }
        Ok(r)
    }

    /// Pauli expansion of every Kraus operator.
    pub fn pauli_expansions(&self) -> Result<Vec<PauliExpansion>> {
        self.terms.iter().map(|t| pauli_expand(&t.op)).collect()
    }
}

fn qubits_for(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Coefficients `αⱼ = tr(E σⱼ)/2ⁿ` of a matrix over the +1-phase Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliExpansion {
    pub n: usize,
    /// Indexed by `x | z << n` of the symplectic bits.
    pub coefficients: Vec<Complex64>,
}

impl PauliExpansion {
    pub fn index(p: &PauliString) -> usize {
        (p.x_bits() | p.z_bits() << p.num_qubits()) as usize
    }

    pub fn pauli_at(n: usize, index: usize) -> PauliString {
        let mask = (1usize << n) - 1;
        PauliString::from_bits(n, (index & mask) as u64, (index >> n) as u64, 0).expect("index in range")
    }

    /// Coefficient of the +1-phase string with the same letters as `p`.
    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.coefficients[Self::index(p)]
    }

    /// Non-negligible terms, largest index last.
    pub fn nonzero(&self, tol: f64) -> Vec<(PauliString, Complex64)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(i, a)| (Self::pauli_at(self.n, i), *a))
            .collect()
    }

    /// `Σⱼ αⱼ σⱼ`.
    pub fn reconstruct(&self) -> Result<DMatrix<Complex64>> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for (i, a) in self.coefficients.iter().enumerate() {
            if *a != Complex64::new(0.0, 0.0) {
                m += Self::pauli_at(self.n, i).dense_matrix()? * *a;
            }
        }
        Ok(m)
    }
}

/// Expands a `2ⁿ x 2ⁿ` matrix in the Pauli basis.
pub fn pauli_expand(e: &DMatrix<Complex64>) -> Result<PauliExpansion> {
    if e.nrows() != e.ncols() {
        return Err(Error::NotPowerOfTwo(e.nrows()));
    }
    let n = qubits_for(e.nrows())?;
    if n > DENSE_CAP {
        return Err(Error::QubitCap { what: "Pauli expansion", n, cap: DENSE_CAP });
    }
    let dim = 1usize << n;
    let mut coefficients = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (idx, slot) in coefficients.iter_mut().enumerate() {
        let x = idx & (dim - 1);
        let z = idx >> n;
        // σ|j⟩ = i^{#Y} (-1)^{z·j} |j⊕x⟩, so tr(Eσ) = Σ_j E[j, j⊕x] σ[j⊕x, j].
        let ys = (x & z).count_ones() as u8;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            let sign = if (z & j).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            acc += e[(j, j ^ x)] * sign;
        }
        *slot = acc * i_pow(ys) / dim as f64;
    }
    Ok(PauliExpansion { n, coefficients })
}

/// `tr(ℰ(U ρ₀ U†))`, the probability of the all-zero ancilla outcome.
pub fn postselect_probability(transformed: &KrausChannel, u: &Circuit, rho0: &DensityMatrix) -> Result<f64> {
    let mut rho = rho0.clone();
    rho.apply_unitary(&u.unitary()?)?;
    Ok(transformed.apply(&rho)?.trace().re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn dense(s: &str) -> DMatrix<Complex64> {
        p(s).dense_matrix().unwrap()
    }

    fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn plus_state() -> DensityMatrix {
        DensityMatrix::from_matrix(DMatrix::from_element(2, 2, c(0.5))).unwrap()
    }

    #[test]
    fn identity_channel_is_trivial() {
        let rho = plus_state();
        assert_eq!(KrausChannel::identity(1).apply(&rho).unwrap(), rho);
    }

    #[test]
    fn depolarizing_kraus_matches_closed_form() {
        let pr = 0.37;
        let ch = KrausChannel::depolarizing(1, &[0], pr).unwrap();
        assert!(ch.trace_preservation_error() < 1e-12);
        let mut closed = plus_state();
        closed.apply_depolarizing(&[0], pr).unwrap();
        assert!(max_diff(ch.apply(&plus_state()).unwrap().matrix(), closed.matrix()) < 1e-12);
    }

    #[test]
    fn ncp_channel_can_be_non_positive() {
        let mut ch = KrausChannel::new(1);
        ch.push(Sign::Plus, dense("Z") * c(0.5)).unwrap();
        ch.push(Sign::Minus, DMatrix::identity(2, 2)).unwrap();
        assert!(!ch.is_cp());
        let out = ch.apply(&plus_state()).unwrap();
        assert!((out.trace().re + 0.75).abs() < 1e-15);
        assert!(out.min_eigenvalue() < 0.0);
    }

    #[test]
    fn single_layer_examples() {
        let ch = KrausChannel::from_ops(1, [dense("Z")]).unwrap();
        assert_eq!(ch.transform_single_layer(&p("Z")).unwrap().terms()[0].op, dense("Z"));

        let ch = KrausChannel::from_ops(1, [dense("X")]).unwrap();
        assert!(ch.transform_single_layer(&p("Z")).unwrap().is_empty());

        let mixed = (dense("X") + dense("Z")) * c(FRAC_1_SQRT_2);
        let ch = KrausChannel::from_ops(1, [mixed]).unwrap();
        let out = ch.transform_single_layer(&p("Z")).unwrap();
        assert!(max_diff(&out.terms()[0].op, &(dense("Z") * c(FRAC_1_SQRT_2))) < 1e-15);
    }

    #[test]
    fn signs_survive_transform() {
        let mut ch = KrausChannel::new(1);
        ch.push(Sign::Minus, dense("Z")).unwrap();
        let out = ch.transform_single_layer(&p("Z")).unwrap();
        assert_eq!(out.terms()[0].eta, Sign::Minus);
    }

    #[test]
    fn expansion_examples() {
        let x = pauli_expand(&dense("X")).unwrap();
        assert_eq!(x.nonzero(1e-12), vec![(p("X"), c(1.0))]);

        let s = FRAC_1_SQRT_2;
        let h = DMatrix::from_row_slice(2, 2, &[c(s), c(s), c(s), c(-s)]);
        let e = pauli_expand(&h).unwrap();
        assert!((e.coefficient(&p("X")) - c(s)).norm() < 1e-15);
        assert!((e.coefficient(&p("Z")) - c(s)).norm() < 1e-15);
        assert!(e.coefficient(&p("Y")).norm() < 1e-15);

        let zero = pauli_expand(&DMatrix::zeros(4, 4)).unwrap();
        assert!(zero.coefficients.iter().all(|a| a.norm() == 0.0));

        let y = pauli_expand(&dense("-YX")).unwrap();
        assert_eq!(y.nonzero(1e-12), vec![(p("YX"), c(-1.0))]);

        assert!(matches!(pauli_expand(&DMatrix::zeros(3, 3)), Err(Error::NotPowerOfTwo(3))));
    }

    #[test]
    fn twirl_examples() {
        let rot = {
            let (cs, sn) = (0.3f64.cos(), 0.3f64.sin());
            DMatrix::from_row_slice(2, 2, &[c(cs), Complex64::new(0.0, -sn), Complex64::new(0.0, -sn), c(cs)])
        };
        let ch = KrausChannel::from_ops(1, [rot.clone()]).unwrap();
        assert_eq!(ch.twirl(&[p("I")]).unwrap(), ch);

        let z = ch.twirl(&[p("Z")]).unwrap();
        assert!(max_diff(&z.terms()[0].op, &(dense("Z") * &rot * dense("Z"))) < 1e-15);

        assert!(ch.twirl(&[]).is_err());
    }

    #[test]
    fn identity_ptm_is_identity() {
        let r = KrausChannel::identity(1).pauli_transfer_matrix().unwrap();
        assert!((r - DMatrix::<f64>::identity(4, 4)).amax() < 1e-15);
    }

    #[test]
    fn composition_order() {
        let h = Circuit::from_gates(1, vec![crate::circuit::Gate::H(0)]).unwrap().unitary().unwrap();
        let first = KrausChannel::unitary(dense("Z")).unwrap();
        let second = KrausChannel::unitary(h.clone()).unwrap();
        let both = first.then(&second).unwrap();
        assert!(max_diff(&both.terms()[0].op, &(h * dense("Z"))) < 1e-15);
    }

    #[test]
    fn low_qubit_embedding_matches_kronecker() {
        let ch = KrausChannel::depolarizing(1, &[0], 0.5).unwrap();
        let mut rho = DensityMatrix::zero_state(2).unwrap();
        rho.apply_gate(&crate::circuit::Gate::H(0)).unwrap();
        rho.apply_gate(&crate::circuit::Gate::Cx(0, 1)).unwrap();
        let via_blocks = ch.apply_to_low_qubits(&rho).unwrap();
        let mut closed = rho.clone();
        closed.apply_depolarizing(&[0], 0.5).unwrap();
        assert!(max_diff(via_blocks.matrix(), closed.matrix()) < 1e-15);
    }
}
