#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use pauli_sandwich::channel::{embed_single, KrausChannel};
use pauli_sandwich::{Circuit, DensityMatrix, Gate};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn cplx(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `k` Kraus operators of a random trace-preserving channel on `dim`
/// dimensions, read off the columns of a random isometry.
pub fn random_kraus_ops(dim: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<DMatrix<Complex64>> {
    let a = DMatrix::from_fn(k * dim, dim, |_, _| cplx(rng));
    let q = a.qr().q();
    (0..k).map(|i| q.rows(i * dim, dim).into_owned()).collect()
}

pub fn random_channel(n: usize, k: usize, rng: &mut ChaCha8Rng) -> KrausChannel {
    KrausChannel::from_ops(n, random_kraus_ops(1 << n, k, rng)).unwrap()
}

/// A random two-operator channel acting on one random qubit.
pub fn random_weight_one_channel(n: usize, rng: &mut ChaCha8Rng) -> KrausChannel {
    let q = rng.gen_range(0..n);
    let ops = random_kraus_ops(2, 2, rng).into_iter().map(|e| embed_single(&e, q, n));
    KrausChannel::from_ops(n, ops).unwrap()
}

/// Full-rank random density matrix `A A† / tr`.
pub fn random_mixed(n: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let d = 1 << n;
    let a = DMatrix::from_fn(d, d, |_, _| cplx(rng));
    let m = &a * a.adjoint();
    let t = m.trace();
    DensityMatrix::from_matrix(m / t).unwrap()
}

/// Random circuit over every gate kind of the IR.
pub fn random_circuit(n: usize, len: usize, rng: &mut ChaCha8Rng) -> Circuit {
    let mut c = Circuit::new(n);
    for _ in 0..len {
        let q = rng.gen_range(0..n);
        let kind = if n >= 2 { rng.gen_range(0..10) } else { rng.gen_range(0..7) };
        let g = match kind {
            0 => Gate::X(q),
            1 => Gate::Y(q),
            2 => Gate::Z(q),
            3 => Gate::H(q),
            4 => Gate::S(q),
            5 => Gate::Sdg(q),
            6 => Gate::Rz(q, rng.gen_range(0.0..std::f64::consts::TAU)),
            k => {
                let t = (q + rng.gen_range(1..n)) % n;
                match k {
                    7 => Gate::Cx(q, t),
                    8 => Gate::Cy(q, t),
                    _ => Gate::Cz(q, t),
                }
            }
        };
        c.push(g).unwrap();
    }
    c
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `½ Σ |λ|` over the eigenvalues of the Hermitian part of `a - b`.
pub fn trace_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let d = a - b;
    let h = (&d + d.adjoint()) * Complex64::new(0.5, 0.0);
    0.5 * h.symmetric_eigenvalues().iter().map(|l| l.abs()).sum::<f64>()
}

/// `U ρ U†` using the dense circuit unitary.
pub fn ideal_output(u: &Circuit, rho: &DensityMatrix) -> DMatrix<Complex64> {
    let m = u.unitary().unwrap();
    &m * rho.matrix() * m.adjoint()
}
