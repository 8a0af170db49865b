#![allow(dead_code)]

use mixent::linalg::{CMatrix, C64};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hermitian matrix with entries uniform in [-1, 1] (real and imaginary parts).
pub fn random_hermitian<const N: usize>(rng: &mut impl Rng) -> CMatrix<N> {
    let mut m = CMatrix::<N>::zeros();
    for i in 0..N {
        m[(i, i)] = C64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in (i + 1)..N {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn random_complex<const N: usize>(rng: &mut impl Rng) -> CMatrix<N> {
    let mut m = CMatrix::<N>::zeros();
    for i in 0..N {
        for j in 0..N {
            m[(i, j)] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
    }
    m
}

/// Determinant by cofactor expansion; independent of the eigensolver.
pub fn det<const N: usize>(m: &CMatrix<N>) -> C64 {
    let rows: Vec<Vec<C64>> = (0..N).map(|i| (0..N).map(|j| m[(i, j)]).collect()).collect();
    det_dyn(&rows)
}

fn det_dyn(m: &[Vec<C64>]) -> C64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut total = C64::new(0.0, 0.0);
    for col in 0..n {
        let minor: Vec<Vec<C64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, z)| *z).collect())
            .collect();
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        total += m[0][col] * det_dyn(&minor) * sign;
    }
    total
}
