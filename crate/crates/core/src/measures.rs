//! Mixedness and entanglement measures.
//!
//! Entropies are normalised by the Hilbert-space dimension: Von Neumann entropy
//! uses `log_D`, linear entropy is `D/(D-1) (1 - tr rho^2)`. For two qubits the
//! global entropy therefore uses base 4 and the marginals base 2, and every
//! entropy lies in `[0, 1]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermitian_sqrt, spin_flip, CMatrix, Matrix4, Spectrum};
use crate::states::{DensityMatrix, QuantumState};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntropyKind {
    VonNeumann,
    Linear,
}

impl EntropyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntropyKind::VonNeumann => "von_neumann",
            EntropyKind::Linear => "linear",
        }
    }
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Von Neumann entropy of a spectrum in base `N`.
pub fn entropy_of_spectrum<const N: usize>(spectrum: &Spectrum<N>) -> f64 {
    let nats: f64 = spectrum
        .clamped_unit()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    (nats / (N as f64).ln()).clamp(0.0, 1.0)
}

/// `-tr(rho log_N rho)`.
pub fn von_neumann_entropy<const N: usize>(rho: &impl QuantumState<N>) -> f64 {
    entropy_of_spectrum(rho.spectrum())
}

/// `tr rho^2`.
pub fn purity<const N: usize>(rho: &impl QuantumState<N>) -> f64 {
    rho.matrix().hermitian_square_trace()
}

/// Linear entropy from a purity in dimension `dim`.
pub fn linear_entropy_from_purity(mu: f64, dim: usize) -> f64 {
    let d = dim as f64;
    (d / (d - 1.0) * (1.0 - mu)).clamp(0.0, 1.0)
}

/// `N/(N-1) (1 - tr rho^2)`.
pub fn linear_entropy<const N: usize>(rho: &impl QuantumState<N>) -> f64 {
    linear_entropy_from_purity(purity(rho), N)
}

/// Global and marginal mixedness of a two-qubit state, plus all three purities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyProfile {
    pub kind: EntropyKind,
    pub s_global: f64,
    pub s_1: f64,
    pub s_2: f64,
    pub mu: f64,
    pub mu_1: f64,
    pub mu_2: f64,
}

impl EntropyProfile {
    pub fn max_marginal(&self) -> f64 {
        self.s_1.max(self.s_2)
    }

    pub fn min_marginal(&self) -> f64 {
        self.s_1.min(self.s_2)
    }

    pub(crate) fn expect_kind(&self, expected: EntropyKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::WrongProfileKind {
                expected: expected.as_str(),
                found: self.kind.as_str(),
            })
        }
    }
}

pub fn entropy_profile(rho: &DensityMatrix, kind: EntropyKind) -> EntropyProfile {
    let (a, b) = rho.marginals();
    let (mu, mu_1, mu_2) = (purity(rho), purity(&a), purity(&b));
    let (s_global, s_1, s_2) = match kind {
        EntropyKind::VonNeumann => (von_neumann_entropy(rho), von_neumann_entropy(&a), von_neumann_entropy(&b)),
        EntropyKind::Linear => (
            linear_entropy_from_purity(mu, 4),
            linear_entropy_from_purity(mu_1, 2),
            linear_entropy_from_purity(mu_2, 2),
        ),
    };
    EntropyProfile {
        kind,
        s_global,
        s_1,
        s_2,
        mu,
        mu_1,
        mu_2,
    }
}

/// Concurrence, tangle and entanglement of formation of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub tangle: f64,
    pub eof: f64,
    /// Eigenvalues of `rho (sy x sy) rho* (sy x sy)`, decreasing.
    pub wootters_lambdas: Spectrum<4>,
}

/// Square roots of the spin-flip eigenvalues, decreasing.
///
/// They are the singular values of `B = sqrt(rho) (sy x sy) conj(sqrt(rho))`
/// because `B B^dagger = sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho)`, which is
/// similar to `rho (sy x sy) rho* (sy x sy)`. Singular values are read off the
/// Hermitian dilation `[[0, B], [B^dagger, 0]]`, whose spectrum is `+-sigma_i`.
/// Working with `sigma_i` directly keeps absolute accuracy near zero, where
/// taking square roots of tiny eigenvalues would amplify rounding noise.
pub fn spin_flip_singular_values(rho: &DensityMatrix) -> Spectrum<4> {
    let root = hermitian_sqrt(rho.matrix()).expect("density matrices are PSD");
    let flip = spin_flip();
    let b = root * flip * root.conj();

    let mut dilation = CMatrix::<8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            dilation[(i, 4 + j)] = b[(i, j)];
            dilation[(4 + j, i)] = b[(i, j)].conj();
        }
    }
    let spectrum = hermitian_eigenvalues(&dilation).expect("dilation is Hermitian by construction");
    let top = spectrum.values();
    Spectrum::new([top[0], top[1], top[2], top[3]].map(f64::abs))
}

/// Eigenvalues of `sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho)`, the Hermitian
/// matrix similar to `rho (sy x sy) rho* (sy x sy)`. Kept as an independent
/// route for cross-checking [`spin_flip_singular_values`].
pub fn wootters_lambdas_hermitian(rho: &DensityMatrix) -> Spectrum<4> {
    let root = hermitian_sqrt(rho.matrix()).expect("density matrices are PSD");
    let flip = spin_flip();
    let tilde: Matrix4 = flip * rho.matrix().conj() * flip;
    let m = (root * tilde * root).hermitian_part();
    let lambdas = hermitian_eigenvalues(&m).expect("symmetrised");
    Spectrum::new(lambdas.values().map(|l| l.max(0.0)))
}

/// `max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}` with the derived tangle and EoF.
pub fn concurrence(rho: &DensityMatrix) -> EntanglementReport {
    let sigma = spin_flip_singular_values(rho);
    let s = sigma.values();
    let c = (s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0);
    EntanglementReport {
        concurrence: c,
        tangle: c * c,
        eof: formation_from_concurrence(c),
        wootters_lambdas: Spectrum::new(s.map(|x| x * x)),
    }
}

/// Binary Shannon entropy in bits; zero at both endpoints.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 1e-15 || x >= 1.0 - 1e-15 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `H((1 + sqrt(1 - c^2)) / 2)` for `c` already known to be in `[0, 1]`.
fn formation_from_concurrence(c: f64) -> f64 {
    let root = (1.0 - c * c).max(0.0).sqrt();
    // (1 - root) / 2 without cancellation
    let small = c * c / (2.0 * (1.0 + root));
    binary_entropy(small).clamp(0.0, 1.0)
}

/// Entanglement of formation as a function of the concurrence.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(-tol::FLAG_GUARD..=1.0 + tol::FLAG_GUARD).contains(&c) {
        return Err(Error::OutOfRange {
            name: "concurrence",
            value: c,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(formation_from_concurrence(c.clamp(0.0, 1.0)))
}

/// Marginal Von Neumann entropy (bits) of a pure state.
pub fn entropy_of_entanglement(pure: &DensityMatrix) -> Result<f64> {
    let mu = pure.purity();
    if (mu - 1.0).abs() > tol::PURITY_PURE {
        return Err(Error::NotPure { purity: mu });
    }
    let (a, b) = pure.marginals();
    let (s1, s2) = (von_neumann_entropy(&a), von_neumann_entropy(&b));
    if (s1 - s2).abs() > tol::PURITY_PURE {
        // Marginal entropies of a pure state coincide; a mismatch means it is only approximately pure.
        return Err(Error::NotPure { purity: mu });
    }
    Ok(s1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::states::{bell_state, product_state, pure_state, werner_state, QubitMarginal};

    #[test]
    fn entropies_of_maximally_mixed_state() {
        let rho = werner_state(0.0).unwrap();
        assert!((von_neumann_entropy(&rho) - 1.0).abs() < 1e-15);
        assert!((linear_entropy(&rho) - 1.0).abs() < 1e-15);
        assert!((purity(&rho) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn werner_half_entropies() {
        let rho = werner_state(0.5).unwrap();
        assert!((von_neumann_entropy(&rho) - 0.774399).abs() < 1e-5);
        assert!((purity(&rho) - 7.0 / 16.0).abs() < 1e-15);
        assert!((linear_entropy(&rho) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn bell_profile() {
        let p = entropy_profile(&bell_state(), EntropyKind::VonNeumann);
        assert!(p.s_global.abs() < 1e-12);
        assert!((p.s_1 - 1.0).abs() < 1e-12 && (p.s_2 - 1.0).abs() < 1e-12);
        assert!((p.mu - 1.0).abs() < 1e-15);
        assert!((p.mu_1 - 0.5).abs() < 1e-15 && (p.mu_2 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pure_product_profile_is_zero() {
        let a = QubitMarginal::diagonal(1.0).unwrap();
        let b = QubitMarginal::diagonal(0.0).unwrap();
        let p = entropy_profile(&product_state(&a, &b), EntropyKind::VonNeumann);
        assert_eq!((p.s_global, p.s_1, p.s_2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn eof_values() {
        assert_eq!(entanglement_of_formation(0.0).unwrap(), 0.0);
        assert!((entanglement_of_formation(1.0).unwrap() - 1.0).abs() < 1e-15);
        // 30-digit mpmath evaluation of H((1 + sqrt(3/4)) / 2)
        assert!((entanglement_of_formation(0.5).unwrap() - 0.354_578_902_665_269_9).abs() < 1e-14);
        assert!(entanglement_of_formation(1.2).is_err());
        assert!(entanglement_of_formation(f64::NAN).is_err());
    }

    #[test]
    fn entropy_of_entanglement_examples() {
        assert!((entropy_of_entanglement(&bell_state()).unwrap() - 1.0).abs() < 1e-12);
        let zero = C64::new(0.0, 0.0);
        let product = pure_state([C64::new(1.0, 0.0), zero, zero, zero]).unwrap();
        assert_eq!(entropy_of_entanglement(&product).unwrap(), 0.0);
        let schmidt = pure_state([C64::new(0.9f64.sqrt(), 0.0), zero, zero, C64::new(0.1f64.sqrt(), 0.0)]).unwrap();
        assert!((entropy_of_entanglement(&schmidt).unwrap() - 0.468996).abs() < 1e-6);
        assert!(matches!(
            entropy_of_entanglement(&werner_state(0.9).unwrap()),
            Err(Error::NotPure { .. })
        ));
    }

    #[test]
    fn bell_concurrence_is_exact() {
        let r = concurrence(&bell_state());
        assert!((r.concurrence - 1.0).abs() < 1e-12);
        assert!((r.tangle - 1.0).abs() < 1e-12);
        assert!((r.eof - 1.0).abs() < 1e-12);
    }
}
