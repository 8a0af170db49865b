//! Fixed-size complex linear algebra for one and two qubits.
//!
//! Only dimensions 2 and 4 are ever needed, so matrices are stack arrays
//! parameterised by a const generic and the eigensolver is a plain cyclic
//! Jacobi iteration on the complex Hermitian matrix.
//!
//! Two-qubit basis ordering is `|ij> = |i> (x) |j>` with index `2 * i + j`,
//! the first qubit being the most significant.

#![allow(clippy::needless_range_loop)] // index loops read like the matrix formulas

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense `N x N` complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize> {
    m: [[C64; N]; N],
}

pub type Matrix2 = CMatrix<2>;
pub type Matrix4 = CMatrix<4>;

impl<const N: usize> Default for CMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMatrix<N> {
    pub const DIM: usize = N;

    pub const fn from_rows(m: [[C64; N]; N]) -> Self {
        Self { m }
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = [[ZERO; N]; N];
        for (dst, src) in m.iter_mut().zip(rows.iter()) {
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d = C64::new(*s, 0.0);
            }
        }
        Self { m }
    }

    /// Builds `re + i * im` from two real arrays.
    pub fn from_parts(re: [[f64; N]; N], im: [[f64; N]; N]) -> Self {
        let mut m = [[ZERO; N]; N];
        for i in 0..N {
            for j in 0..N {
                m[i][j] = C64::new(re[i][j], im[i][j]);
            }
        }
        Self { m }
    }

    pub const fn zeros() -> Self {
        Self { m: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            out.m[i][i] = ONE;
        }
        out
    }

    pub fn from_real_diagonal(d: [f64; N]) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            out.m[i][i] = C64::new(d[i], 0.0);
        }
        out
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &[C64; N], b: &[C64; N]) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = a[i] * b[j].conj();
            }
        }
        out
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (in the computational basis).
    pub fn conj(&self) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z = z.conj());
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = self.m[j][i];
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.m[i][i]).sum()
    }

    pub fn diagonal_real(&self) -> [f64; N] {
        std::array::from_fn(|i| self.m[i][i].re)
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `tr(M^2)` for a Hermitian `M`, i.e. the sum of squared moduli of all entries.
    pub fn hermitian_square_trace(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in i..N {
                worst = worst.max((self.m[i][j] - self.m[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let mut out = *self;
        for i in 0..N {
            out.m[i][i] = C64::new(self.m[i][i].re, 0.0);
            for j in (i + 1)..N {
                let z = (self.m[i][j] + self.m[j][i].conj()) * 0.5;
                out.m[i][j] = z;
                out.m[j][i] = z.conj();
            }
        }
        out
    }

    /// Conjugation `U M U^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += self.m[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.m[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.m[i][j]
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.m.iter_mut().flatten().zip(rhs.m.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.m.iter_mut().flatten().zip(rhs.m.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.m[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.m[i][j] += a * rhs.m[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<f64> for CMatrix<N> {
    type Output = Self;

    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

/// Real eigenvalues sorted in decreasing order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum<const N: usize>([f64; N]);

impl<const N: usize> Spectrum<N> {
    /// Sorts `values` in decreasing order. NaNs sort last.
    pub fn new(mut values: [f64; N]) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64; N] {
        &self.0
    }

    pub fn max(&self) -> f64 {
        self.0[0]
    }

    pub fn min(&self) -> f64 {
        self.0[N - 1]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    /// Values clamped into `[0, 1]`, still sorted.
    pub fn clamped_unit(&self) -> [f64; N] {
        self.0.map(|x| x.clamp(0.0, 1.0))
    }

    /// Partial sums `lambda_1, lambda_1 + lambda_2, ...`.
    pub fn partial_sums(&self) -> [f64; N] {
        let mut acc = 0.0;
        self.0.map(|x| {
            acc += x;
            acc
        })
    }
}

/// Eigenpairs of a Hermitian matrix; `vectors` holds eigenvectors as columns,
/// ordered like `values`.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<const N: usize> {
    pub values: Spectrum<N>,
    pub vectors: CMatrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    /// `V diag(f(lambda)) V^dagger`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMatrix<N> {
        let v = &self.vectors;
        let d = self.values.values().map(f);
        let mut out = CMatrix::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut z = ZERO;
                for k in 0..N {
                    z += v.m[i][k] * d[k] * v.m[j][k].conj();
                }
                out.m[i][j] = z;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix<N> {
        self.reconstruct_with(|x| x)
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eigen<const N: usize>(m: &CMatrix<N>) -> Result<HermitianEigen<N>> {
    let defect = m.hermitian_defect();
    if defect > tol::HERMITICITY || defect.is_nan() {
        return Err(Error::NotHermitian { defect });
    }
    let (values, vectors) = jacobi(&m.hermitian_part())?;

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut sorted_vectors = CMatrix::zeros();
    for (col, &src) in order.iter().enumerate() {
        for row in 0..N {
            sorted_vectors.m[row][col] = vectors.m[row][src];
        }
    }
    Ok(HermitianEigen {
        values: Spectrum(order.map(|i| values[i])),
        vectors: sorted_vectors,
    })
}

pub fn hermitian_eigenvalues<const N: usize>(m: &CMatrix<N>) -> Result<Spectrum<N>> {
    hermitian_eigen(m).map(|e| e.values)
}

fn jacobi<const N: usize>(input: &CMatrix<N>) -> Result<([f64; N], CMatrix<N>)> {
    let mut a = *input;
    let mut v = CMatrix::<N>::identity();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(([0.0; N], v));
    }
    let threshold = tol::JACOBI_OFF_DIAGONAL * scale;

    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off <= threshold {
            break;
        }
        if sweeps == tol::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    Ok((a.diagonal_real(), v))
}

/// Annihilates `a[p][q]` with the unitary `J = diag-phase * Givens`:
/// `J_pp = c`, `J_pq = s`, `J_qp = -s e^{-i phi}`, `J_qq = c e^{-i phi}`
/// where `a[p][q] = r e^{i phi}`. Applies `a <- J^dagger a J`, `v <- v J`.
fn rotate<const N: usize>(a: &mut CMatrix<N>, v: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a.m[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{i phi}
    let app = a.m[p][p].re;
    let aqq = a.m[q][q].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let e_minus = phase.conj();
    // a <- a J
    for k in 0..N {
        let akp = a.m[k][p];
        let akq = a.m[k][q];
        a.m[k][p] = akp * c - akq * e_minus * s;
        a.m[k][q] = akp * s + akq * e_minus * c;
    }
    // a <- J^dagger a
    for k in 0..N {
        let apk = a.m[p][k];
        let aqk = a.m[q][k];
        a.m[p][k] = apk * c - aqk * phase * s;
        a.m[q][k] = apk * s + aqk * phase * c;
    }
    a.m[p][q] = ZERO;
    a.m[q][p] = ZERO;
    a.m[p][p].im = 0.0;
    a.m[q][q].im = 0.0;
    // v <- v J
    for k in 0..N {
        let vkp = v.m[k][p];
        let vkq = v.m[k][q];
        v.m[k][p] = vkp * c - vkq * e_minus * s;
        v.m[k][q] = vkp * s + vkq * e_minus * c;
    }
}

/// Principal square root of a Hermitian PSD matrix.
///
/// Eigenvalues in `[-PSD_CLAMP, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn hermitian_sqrt<const N: usize>(m: &CMatrix<N>) -> Result<CMatrix<N>> {
    let eig = hermitian_eigen(m)?;
    let min = eig.values.min();
    if min < -tol::PSD_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()).hermitian_part())
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.m[2 * i + k][2 * j + l] = a.m[i][j] * b.m[k][l];
                }
            }
        }
    }
    out
}

/// Which qubit of a two-qubit system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Qubit {
    First,
    Second,
}

/// Reduced matrix of the `keep` qubit: `First` gives `tr_2 m`, `Second` gives `tr_1 m`.
pub fn partial_trace(m: &Matrix4, keep: Qubit) -> Matrix2 {
    let mut out = Matrix2::zeros();
    for a in 0..2 {
        for b in 0..2 {
            out.m[a][b] = match keep {
                Qubit::First => m.m[2 * a][2 * b] + m.m[2 * a + 1][2 * b + 1],
                Qubit::Second => m.m[a][b] + m.m[2 + a][2 + b],
            };
        }
    }
    out
}

/// Transpose on the first qubit: `(m^{T1})[(i,k),(j,l)] = m[(j,k),(i,l)]`.
pub fn partial_transpose_first(m: &Matrix4) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.m[2 * i + k][2 * j + l] = m.m[2 * j + k][2 * i + l];
                }
            }
        }
    }
    out
}

pub fn pauli_y() -> Matrix2 {
    Matrix2::from_rows([[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]])
}

/// `sigma_y (x) sigma_y`, the two-qubit spin flip.
pub fn spin_flip() -> Matrix4 {
    let y = pauli_y();
    kron(&y, &y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bell_projector() -> Matrix4 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(s, 0.0), ZERO, ZERO, c(s, 0.0)];
        Matrix4::outer(&psi, &psi)
    }

    #[test]
    fn scalar_matrix_spectrum() {
        let m = Matrix4::identity().scale(0.25);
        let s = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(s.values(), &[0.25; 4]);
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let m = Matrix2::from_real_diagonal([0.3, 0.7]);
        let s = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(s.values(), &[0.7, 0.3]);
    }

    #[test]
    fn complex_two_by_two_closed_form() {
        // [[a, z], [z*, b]] has eigenvalues (a+b)/2 +- sqrt(((a-b)/2)^2 + |z|^2)
        let m = Matrix2::from_rows([[c(0.6, 0.0), c(0.1, -0.2)], [c(0.1, 0.2), c(0.4, 0.0)]]);
        let s = hermitian_eigenvalues(&m).unwrap();
        let r = (0.01f64 + 0.05).sqrt();
        assert!((s.values()[0] - (0.5 + r)).abs() < 1e-15);
        assert!((s.values()[1] - (0.5 - r)).abs() < 1e-15);
    }

    #[test]
    fn eigenvectors_reconstruct_input() {
        let m = Matrix4::from_rows([
            [c(0.4, 0.0), c(0.1, 0.05), c(-0.02, 0.3), c(0.0, -0.1)],
            [c(0.1, -0.05), c(0.2, 0.0), c(0.07, 0.0), c(0.11, 0.02)],
            [c(-0.02, -0.3), c(0.07, 0.0), c(0.3, 0.0), c(0.0, 0.04)],
            [c(0.0, 0.1), c(0.11, -0.02), c(0.0, -0.04), c(0.1, 0.0)],
        ]);
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.reconstruct() - m).frobenius_norm() < 1e-12);
        let gram = e.vectors.adjoint() * e.vectors;
        assert!((gram - Matrix4::identity()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut m = Matrix2::identity();
        m[(0, 1)] = c(1e-6, 0.0);
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn bell_partial_transpose_has_negative_eigenvalue() {
        let pt = partial_transpose_first(&bell_projector());
        let s = hermitian_eigenvalues(&pt).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (a, b) in s.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_is_involutive_and_fixes_diagonals() {
        let d = Matrix4::from_real_diagonal([0.5, 0.0, 0.0, 0.5]);
        assert_eq!(partial_transpose_first(&d), d);
        let b = bell_projector();
        assert_eq!(partial_transpose_first(&partial_transpose_first(&b)), b);
    }

    #[test]
    fn bell_marginals_are_maximally_mixed() {
        let half = Matrix2::identity().scale(0.5);
        let b = bell_projector();
        assert!(partial_trace(&b, Qubit::First).max_abs_diff(&half) < 1e-15);
        assert!(partial_trace(&b, Qubit::Second).max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn product_factors_are_recovered() {
        let a = Matrix2::from_rows([[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]]);
        let b = Matrix2::from_rows([[c(0.25, 0.0), c(0.0, 0.1)], [c(0.0, -0.1), c(0.75, 0.0)]]);
        let ab = kron(&a, &b);
        assert!(partial_trace(&ab, Qubit::First).max_abs_diff(&a) < 1e-15);
        assert!(partial_trace(&ab, Qubit::Second).max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn sqrt_examples() {
        let quarter = Matrix4::identity().scale(0.25);
        let r = hermitian_sqrt(&quarter).unwrap();
        assert!(r.max_abs_diff(&Matrix4::identity().scale(0.5)) < 1e-15);

        let p = bell_projector();
        assert!(hermitian_sqrt(&p).unwrap().max_abs_diff(&p) < 1e-14);

        let d = Matrix4::from_real_diagonal([0.04, 0.16, 0.36, 0.44]);
        let r = hermitian_sqrt(&d).unwrap();
        let expected = Matrix4::from_real_diagonal([0.2, 0.4, 0.6, 0.44f64.sqrt()]);
        assert!(r.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let d = Matrix2::from_real_diagonal([1.0, -1e-6]);
        assert!(matches!(hermitian_sqrt(&d), Err(Error::NotPsd { .. })));
        // tiny negative noise is clamped
        let d = Matrix2::from_real_diagonal([1.0, -1e-12]);
        assert!(hermitian_sqrt(&d).is_ok());
    }

    #[test]
    fn spin_flip_is_real_antidiagonal() {
        let s = spin_flip();
        let expected = Matrix4::from_real([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(s, expected);
    }
}
