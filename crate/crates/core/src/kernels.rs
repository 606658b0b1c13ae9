//! Index-stride gate kernels on column-major `dim x dim` matrices.
//!
//! Entry `(r, c)` lives at `r + c * dim`. Qubit `q` is bit `q` of the row or
//! column index. Two-qubit gates take a 4x4 matrix over the local index
//! `bit(qa) + 2 * bit(qb)`.

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];
pub type Mat4 = [[Complex64; 4]; 4];

/// `m ← G · m` for a single-qubit gate on qubit `q`.
pub fn left_1q(m: &mut [Complex64], dim: usize, q: usize, g: &Mat2) {
    let bit = 1usize << q;
    for col in m.chunks_exact_mut(dim) {
        for r0 in (0..dim).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            let (a, b) = (col[r0], col[r1]);
            col[r0] = g[0][0] * a + g[0][1] * b;
            col[r1] = g[1][0] * a + g[1][1] * b;
        }
    }
}

/// `m ← m · G†` for a single-qubit gate on qubit `q`.
pub fn right_1q_adjoint(m: &mut [Complex64], dim: usize, q: usize, g: &Mat2) {
    let bit = 1usize << q;
    let h = [[g[0][0].conj(), g[0][1].conj()], [g[1][0].conj(), g[1][1].conj()]];
    for c0 in (0..dim).filter(|c| c & bit == 0) {
        let c1 = c0 | bit;
        let (lo, hi) = m.split_at_mut(c1 * dim);
        let col0 = &mut lo[c0 * dim..(c0 + 1) * dim];
        let col1 = &mut hi[..dim];
        for (a, b) in col0.iter_mut().zip(col1.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = x * h[0][0] + y * h[0][1];
            *b = x * h[1][0] + y * h[1][1];
        }
    }
}

fn quad(base: usize, ba: usize, bb: usize) -> [usize; 4] {
    [base, base | ba, base | bb, base | ba | bb]
}

/// `m ← G · m` for a two-qubit gate on `(qa, qb)`.
pub fn left_2q(m: &mut [Complex64], dim: usize, qa: usize, qb: usize, g: &Mat4) {
    let (ba, bb) = (1usize << qa, 1usize << qb);
    for col in m.chunks_exact_mut(dim) {
        for r in (0..dim).filter(|r| r & (ba | bb) == 0) {
            let idx = quad(r, ba, bb);
            let v = idx.map(|i| col[i]);
            for (i, &ri) in idx.iter().enumerate() {
                col[ri] = g[i][0] * v[0] + g[i][1] * v[1] + g[i][2] * v[2] + g[i][3] * v[3];
            }
        }
    }
}

/// `m ← m · G†` for a two-qubit gate on `(qa, qb)`.
pub fn right_2q_adjoint(m: &mut [Complex64], dim: usize, qa: usize, qb: usize, g: &Mat4) {
    let (ba, bb) = (1usize << qa, 1usize << qb);
    let h: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].conj()));
    for c in (0..dim).filter(|c| c & (ba | bb) == 0) {
        let idx = quad(c, ba, bb);
        for r in 0..dim {
            let v = idx.map(|ci| m[r + ci * dim]);
            for (i, &ci) in idx.iter().enumerate() {
                m[r + ci * dim] = v[0] * h[i][0] + v[1] * h[i][1] + v[2] * h[i][2] + v[3] * h[i][3];
            }
        }
    }
}
