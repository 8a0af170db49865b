//! Validated two-qubit density matrices and the state families used throughout.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{check_range, Error, Result};
use crate::linalg::{self, hermitian_eigenvalues, kron, CMatrix, Matrix2, Matrix4, Qubit, Spectrum, C64};
use crate::tol;

/// Where a state came from. Recorded on generated states so datasets can be replayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Memms,
    Lptps,
    Product,
    Pure,
    Werner,
    Bell,
    /// Read from user input.
    Input,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Random,
        Family::Memms,
        Family::Lptps,
        Family::Product,
        Family::Pure,
        Family::Werner,
        Family::Bell,
        Family::Input,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Memms => "memms",
            Family::Lptps => "lptps",
            Family::Product => "product",
            Family::Pure => "pure",
            Family::Werner => "werner",
            Family::Bell => "bell",
            Family::Input => "input",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::params(format!("unknown state family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub family: Family,
    /// Family parameters, e.g. `[x1, x2, c]` for the ansatz.
    pub params: Vec<f64>,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(family: Family, params: Vec<f64>) -> Self {
        Self {
            family,
            params,
            seed: None,
        }
    }
}

/// Common view of validated one- and two-qubit states.
pub trait QuantumState<const N: usize> {
    fn matrix(&self) -> &CMatrix<N>;
    fn spectrum(&self) -> &Spectrum<N>;
}

impl QuantumState<4> for DensityMatrix {
    fn matrix(&self) -> &Matrix4 {
        &self.matrix
    }

    fn spectrum(&self) -> &Spectrum<4> {
        &self.spectrum
    }
}

impl QuantumState<2> for QubitMarginal {
    fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    fn spectrum(&self) -> &Spectrum<2> {
        &self.spectrum
    }
}

/// Checks Hermiticity, unit trace and positivity (in that order) and returns the spectrum.
fn validate<const N: usize>(m: &CMatrix<N>) -> Result<Spectrum<N>> {
    let defect = m.hermitian_defect();
    // negated so that NaN entries fail
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(defect <= tol::HERMITICITY) {
        return Err(Error::NotHermitian { defect });
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol::TRACE || tr.im.abs() > tol::TRACE {
        return Err(Error::TraceNotUnit { re: tr.re, im: tr.im });
    }
    let spectrum = hermitian_eigenvalues(m)?;
    if spectrum.min() < -tol::PSD_CLAMP {
        return Err(Error::NotPsd {
            min_eigenvalue: spectrum.min(),
        });
    }
    Ok(spectrum)
}

/// A two-qubit state: Hermitian, unit trace and positive semidefinite within [`tol`].
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: Matrix4,
    spectrum: Spectrum<4>,
    provenance: Option<Provenance>,
}

impl DensityMatrix {
    pub fn new(matrix: Matrix4) -> Result<Self> {
        let spectrum = validate(&matrix)?;
        Ok(Self {
            matrix: matrix.hermitian_part(),
            spectrum,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum<4> {
        &self.spectrum
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn family(&self) -> Option<Family> {
        self.provenance.as_ref().map(|p| p.family)
    }

    /// Reduced state of `keep`.
    pub fn marginal(&self, keep: Qubit) -> QubitMarginal {
        let m = linalg::partial_trace(&self.matrix, keep).hermitian_part();
        let spectrum = hermitian_eigenvalues(&m).expect("partial trace of a Hermitian matrix is Hermitian");
        QubitMarginal { matrix: m, spectrum }
    }

    pub fn marginals(&self) -> (QubitMarginal, QubitMarginal) {
        (self.marginal(Qubit::First), self.marginal(Qubit::Second))
    }

    /// `tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.matrix.hermitian_square_trace()
    }

    /// `(u (x) v) rho (u (x) v)^dagger`; provenance is kept.
    pub fn local_unitary(&self, u: &Matrix2, v: &Matrix2) -> Result<Self> {
        let w = kron(u, v);
        let out = Self::new(self.matrix.conjugate_by(&w))?;
        Ok(match &self.provenance {
            Some(p) => out.with_provenance(p.clone()),
            None => out,
        })
    }

    /// Convex combination `(1 - weight) self + weight other`.
    pub fn mix(&self, other: &DensityMatrix, weight: f64) -> Result<Self> {
        check_range("weight", weight, 0.0, 1.0)?;
        Self::new(self.matrix.scale(1.0 - weight) + other.matrix.scale(weight))
    }
}

impl AsRef<Matrix4> for DensityMatrix {
    fn as_ref(&self) -> &Matrix4 {
        &self.matrix
    }
}

/// A single-qubit density matrix.
#[derive(Clone, Copy, Debug)]
pub struct QubitMarginal {
    matrix: Matrix2,
    spectrum: Spectrum<2>,
}

impl QubitMarginal {
    pub fn new(matrix: Matrix2) -> Result<Self> {
        let spectrum = validate(&matrix)?;
        Ok(Self {
            matrix: matrix.hermitian_part(),
            spectrum,
        })
    }

    /// `diag(p, 1 - p)`.
    pub fn diagonal(p: f64) -> Result<Self> {
        check_range("p", p, 0.0, 1.0)?;
        Self::new(Matrix2::from_real_diagonal([p, 1.0 - p]))
    }

    pub fn maximally_mixed() -> Self {
        Self::diagonal(0.5).expect("valid")
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    pub fn spectrum(&self) -> &Spectrum<2> {
        &self.spectrum
    }

    pub fn purity(&self) -> f64 {
        self.matrix.hermitian_square_trace()
    }
}

impl AsRef<Matrix2> for QubitMarginal {
    fn as_ref(&self) -> &Matrix2 {
        &self.matrix
    }
}

/// Projector onto a (normalised) state vector.
pub fn pure_state(psi: [C64; 4]) -> Result<DensityMatrix> {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
        return Err(Error::params("state vector has zero or non-finite norm"));
    }
    let psi = psi.map(|z| z / norm);
    Ok(DensityMatrix::new(Matrix4::outer(&psi, &psi))?.with_provenance(Provenance::new(Family::Pure, vec![])))
}

/// `|Phi+> = (|00> + |11>) / sqrt 2`.
pub fn bell_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = C64::new(0.0, 0.0);
    let psi = [C64::new(s, 0.0), zero, zero, C64::new(s, 0.0)];
    DensityMatrix::new(Matrix4::outer(&psi, &psi))
        .expect("Bell projector is a valid state")
        .with_provenance(Provenance::new(Family::Bell, vec![]))
}

/// `p |Phi+><Phi+| + (1 - p) I/4`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 1.0)?;
    let m = bell_state().matrix.scale(p) + Matrix4::identity().scale((1.0 - p) / 4.0);
    Ok(DensityMatrix::new(m)?.with_provenance(Provenance::new(Family::Werner, vec![p])))
}

pub fn product_state(a: &QubitMarginal, b: &QubitMarginal) -> DensityMatrix {
    DensityMatrix::new(kron(&a.matrix, &b.matrix))
        .expect("product of valid marginals is a valid state")
        .with_provenance(Provenance::new(Family::Product, vec![]))
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Draws `G G^dagger / tr(G G^dagger)` with `G` an `N x rank` matrix of standard
/// complex Gaussians (the Hilbert-Schmidt-induced measure for `rank = N`).
fn induced_matrix<const N: usize, R: Rng + ?Sized>(rng: &mut R, rank: usize) -> CMatrix<N> {
    let mut m = CMatrix::<N>::zeros();
    for _ in 0..rank {
        let g: [C64; N] = std::array::from_fn(|_| gaussian_c64(rng));
        m = m + CMatrix::outer(&g, &g);
    }
    let tr = m.trace().re;
    m.scale(1.0 / tr).hermitian_part()
}

/// Random two-qubit state from the induced measure; `rank_cap = None` is the
/// Hilbert-Schmidt ensemble, `Some(k)` produces states of rank at most `k`.
///
/// # Panics
///
/// If `rank_cap` is outside `1..=4`.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, rank_cap: Option<usize>) -> DensityMatrix {
    let rank = rank_cap.unwrap_or(4);
    assert!((1..=4).contains(&rank), "rank cap must be in 1..=4, got {rank}");
    let family = if rank == 1 { Family::Pure } else { Family::Random };
    DensityMatrix::new(induced_matrix::<4, _>(rng, rank))
        .expect("induced-measure sample is a valid state")
        .with_provenance(Provenance::new(family, vec![rank as f64]))
}

/// Hilbert-Schmidt random single-qubit state.
pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> QubitMarginal {
    QubitMarginal::new(induced_matrix::<2, _>(rng, 2)).expect("induced-measure sample is a valid state")
}

pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let a = random_qubit_state(rng);
    let b = random_qubit_state(rng);
    product_state(&a, &b)
}

/// Haar-random element of SU(2) from a uniformly random unit quaternion.
pub fn haar_unitary2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    Matrix2::from_rows([
        [C64::new(a, b), C64::new(c, d)],
        [C64::new(-c, d), C64::new(a, -b)],
    ])
}

/// Parameters of the maximally entangled states at fixed marginal spectra.
///
/// The marginals are `diag(x1, 1 - x1)` and `diag(1 - x2, x2)`. Saturation of
/// the marginal tangle bound requires one of `x1`, `x2` to be the largest
/// eigenvalue of the less pure marginal and the other the smallest eigenvalue
/// of the purer one, which is equivalent to `max(x1, x2) >= 1/2` together
/// with `x1 + x2 <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MemmsParams {
    x1: f64,
    x2: f64,
}

impl MemmsParams {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        check_range("x1", x1, 0.0, 1.0)?;
        check_range("x2", x2, 0.0, 1.0)?;
        if x1 + x2 > 1.0 + 1e-12 {
            return Err(Error::params(format!("x1 + x2 = {} exceeds 1", x1 + x2)));
        }
        if x1.max(x2) < 0.5 {
            return Err(Error::params(format!(
                "MEMMS orientation: one of x1 = {x1}, x2 = {x2} must be the largest eigenvalue (>= 1/2) of the less pure marginal"
            )));
        }
        Ok(Self { x1, x2 })
    }

    /// Maps one eigenvalue of each marginal (either eigenvalue, in `[0, 1]`)
    /// onto the oriented `(x1, x2)`: `x1` is the largest eigenvalue of the less
    /// pure marginal, `x2` the smallest eigenvalue of the purer one.
    pub fn from_marginal_spectra(p: f64, q: f64) -> Result<Self> {
        check_range("p", p, 0.0, 1.0)?;
        check_range("q", q, 0.0, 1.0)?;
        let small_p = p.min(1.0 - p);
        let small_q = q.min(1.0 - q);
        Self::new(1.0 - small_p.max(small_q), small_p.min(small_q))
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn concurrence(&self) -> f64 {
        2.0 * (self.x1 * self.x2).sqrt()
    }
}

pub fn memms(params: MemmsParams) -> DensityMatrix {
    let MemmsParams { x1, x2 } = params;
    let m = ansatz_matrix(x1, x2, params.concurrence());
    DensityMatrix::new(m)
        .expect("validated MEMMS parameters give a valid state")
        .with_provenance(Provenance::new(Family::Memms, vec![x1, x2]))
}

/// The X-shaped ansatz
///
/// ```text
/// [ x1   0   0            c/2 ]
/// [ 0    0   0            0   ]
/// [ 0    0   1 - x1 - x2  0   ]
/// [ c/2  0   0            x2  ]
/// ```
///
/// without any validation. Used by numerical searches that need raw speed.
pub fn ansatz_matrix(x1: f64, x2: f64, c: f64) -> Matrix4 {
    let half = c / 2.0;
    Matrix4::from_real([
        [x1, 0.0, 0.0, half],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0 - x1 - x2, 0.0],
        [half, 0.0, 0.0, x2],
    ])
}

/// Parameters `(x1, x2, c)` of the ansatz; `c` is its concurrence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LptpsParams {
    x1: f64,
    x2: f64,
    c: f64,
}

impl LptpsParams {
    /// Checks positivity of the ansatz: `x1 + x2 <= 1` and `0 <= c <= 2 sqrt(x1 x2)`.
    pub fn new(x1: f64, x2: f64, c: f64) -> Result<Self> {
        check_range("x1", x1, 0.0, 1.0)?;
        check_range("x2", x2, 0.0, 1.0)?;
        check_range("c", c, 0.0, 1.0)?;
        if x1 + x2 > 1.0 + 1e-12 {
            return Err(Error::params(format!("x1 + x2 = {} exceeds 1", x1 + x2)));
        }
        let c_max = 2.0 * (x1 * x2).sqrt();
        if c > c_max + 1e-12 {
            return Err(Error::params(format!("c = {c} exceeds 2 sqrt(x1 x2) = {c_max}")));
        }
        Ok(Self { x1, x2, c })
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `1 - 2 x1 - 2 x2 + 2 x1 x2`, non-negative for every less-pure-than-product ansatz state.
    pub fn purity_gap_factor(&self) -> f64 {
        1.0 - 2.0 * self.x1 - 2.0 * self.x2 + 2.0 * self.x1 * self.x2
    }

    /// Largest tangle an ansatz state with these `x1, x2` may have while staying
    /// less pure than the product of its marginals.
    pub fn max_lptps_tangle(&self) -> f64 {
        4.0 * self.x1 * self.x2 * self.purity_gap_factor()
    }

    pub fn is_lptps(&self) -> bool {
        let h = self.purity_gap_factor();
        h >= -1e-15 && self.c * self.c <= 4.0 * self.x1 * self.x2 * h + 1e-15
    }
}

pub fn ansatz_state(params: LptpsParams, require_lptps: bool) -> Result<DensityMatrix> {
    if require_lptps && !params.is_lptps() {
        return Err(Error::params(format!(
            "(x1, x2, c) = ({}, {}, {}) is not less pure than the product of its marginals",
            params.x1, params.x2, params.c
        )));
    }
    let family = if require_lptps { Family::Lptps } else { Family::Random };
    let m = ansatz_matrix(params.x1, params.x2, params.c);
    Ok(DensityMatrix::new(m)?.with_provenance(Provenance::new(family, vec![params.x1, params.x2, params.c])))
}

/// X-state `[[x,0,0,e],[0,y,f,0],[0,f,w,0],[e,0,0,z]]` with real `e, f`.
pub fn x_state(x: f64, y: f64, w: f64, z: f64, e: f64, f: f64) -> Result<DensityMatrix> {
    DensityMatrix::new(Matrix4::from_real([
        [x, 0.0, 0.0, e],
        [0.0, y, f, 0.0],
        [0.0, f, w, 0.0],
        [e, 0.0, 0.0, z],
    ]))
}

/// Closed-form concurrence of the real X-state: `2 max{f - sqrt(xz), e - sqrt(wy), 0}`.
pub fn x_state_concurrence(x: f64, y: f64, w: f64, z: f64, e: f64, f: f64) -> Result<f64> {
    for (name, v) in [("x", x), ("y", y), ("w", w), ("z", z), ("e", e), ("f", f)] {
        check_range(name, v, 0.0, 1.0)?;
    }
    let total = x + y + w + z;
    if (total - 1.0).abs() > tol::TRACE {
        return Err(Error::TraceNotUnit { re: total, im: 0.0 });
    }
    let sxz = (x * z).sqrt();
    let syw = (y * w).sqrt();
    if e > sxz + 1e-12 || f > syw + 1e-12 {
        return Err(Error::params(format!(
            "positivity requires e <= sqrt(xz) = {sxz} and f <= sqrt(yw) = {syw}"
        )));
    }
    Ok(2.0 * (f - sxz).max(e - syw).max(0.0))
}

/// One entangled less-pure-than-product ansatz parameter triple, by rejection:
/// `(x1, x2)` uniform on `[0, 1/2]^2` conditioned on a non-negative purity gap
/// factor, then `c^2` uniform on `(0, 4 x1 x2 h]`.
pub fn sample_lptps_params<R: Rng + ?Sized>(rng: &mut R) -> LptpsParams {
    let half = Uniform::new_inclusive(0.0, 0.5).expect("valid range");
    loop {
        let x1: f64 = half.sample(rng);
        let x2: f64 = half.sample(rng);
        let h = 1.0 - 2.0 * x1 - 2.0 * x2 + 2.0 * x1 * x2;
        if h < 0.0 {
            continue;
        }
        let c2 = rng.random::<f64>() * 4.0 * x1 * x2 * h;
        if c2 <= 0.0 {
            continue;
        }
        if let Ok(p) = LptpsParams::new(x1, x2, c2.sqrt()) {
            return p;
        }
    }
}

pub fn sample_entangled_lptps<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<DensityMatrix> {
    (0..n)
        .map(|_| ansatz_state(sample_lptps_params(rng), true).expect("sampled parameters satisfy the constraints"))
        .collect()
}

/// Random oriented MEMMS parameters: `x1` uniform on `[1/2, 1]`, `x2` uniform on `[0, 1 - x1]`.
pub fn sample_memms_params<R: Rng + ?Sized>(rng: &mut R) -> MemmsParams {
    let x1 = 0.5 + 0.5 * rng.random::<f64>();
    let x2 = (1.0 - x1) * rng.random::<f64>();
    MemmsParams::new(x1, x2).expect("sampled inside the oriented domain")
}
