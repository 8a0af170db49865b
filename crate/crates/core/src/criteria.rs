//! Separability criteria and the entropic bounds tying entanglement to mixedness.
//!
//! Criteria return a *flag*: `true` means the criterion is violated, which
//! certifies entanglement. Only PPT is necessary and sufficient for two
//! qubits; the entropic and majorization criteria are merely sufficient for
//! entanglement, so any of their flags implies the PPT flag.

use std::fmt;

use crate::error::{check_range, Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_transpose_first};
use crate::measures::{entanglement_of_formation, entropy_profile, EntanglementReport, EntropyKind, EntropyProfile};
use crate::states::DensityMatrix;
use crate::tol;

/// Largest gap `mu_1 mu_2 - mu` reachable by an ansatz state: `(5 sqrt 5 - 11) / 8`.
pub const DELTA_MU_MAX: f64 = 0.022_542_485_937_368_56;

/// `x1 = x2 = (3 - sqrt 5) / 4` of the maximally entangled less-pure-than-product states.
pub const LPTPS_OPTIMAL_X: f64 = 0.190_983_005_625_052_6;

pub fn delta_mu_max() -> f64 {
    (5.0 * 5f64.sqrt() - 11.0) / 8.0
}

pub fn lptps_optimal_x() -> f64 {
    (3.0 - 5f64.sqrt()) / 4.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PptResult {
    pub entangled: bool,
    pub min_eigenvalue: f64,
}

/// Peres-Horodecki test on the first qubit. Exact for two qubits.
pub fn ppt_test(rho: &DensityMatrix) -> PptResult {
    let pt = partial_transpose_first(rho.matrix());
    let min_eigenvalue = hermitian_eigenvalues(&pt).expect("partial transpose of a Hermitian matrix").min();
    PptResult {
        entangled: min_eigenvalue < -tol::PPT_GUARD,
        min_eigenvalue,
    }
}

/// Separable states obey `2 S_V >= max{S_V1, S_V2}`.
pub fn entropic_criterion_vn(profile: &EntropyProfile) -> Result<bool> {
    profile.expect_kind(EntropyKind::VonNeumann)?;
    Ok(2.0 * profile.s_global < profile.max_marginal() - tol::FLAG_GUARD)
}

/// Separable states obey `S_L >= (2/3) max{S_L1, S_L2}`, i.e. `mu <= min{mu_1, mu_2}`.
pub fn entropic_criterion_lin(profile: &EntropyProfile) -> Result<bool> {
    profile.expect_kind(EntropyKind::Linear)?;
    let by_purity = profile.mu > profile.mu_1.min(profile.mu_2) + tol::FLAG_GUARD;
    let by_entropy = profile.s_global < 2.0 / 3.0 * profile.max_marginal() - tol::FLAG_GUARD;
    let margin = (profile.mu - profile.mu_1.min(profile.mu_2)).abs();
    debug_assert!(
        by_purity == by_entropy || margin < 1e-10,
        "purity and entropy forms of the linear entropic criterion disagree: {profile:?}"
    );
    Ok(by_purity)
}

/// Separable states have a spectrum majorized by each marginal spectrum (zero padded).
pub fn majorization_test(rho: &DensityMatrix) -> bool {
    let global = rho.spectrum().partial_sums();
    let (a, b) = rho.marginals();
    [a.spectrum().partial_sums(), b.spectrum().partial_sums()]
        .iter()
        .any(|marginal| {
            global
                .iter()
                .enumerate()
                .any(|(k, &g)| g > marginal.get(k).copied().unwrap_or(1.0) + tol::FLAG_GUARD)
        })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriteriaVerdict {
    pub ppt_entangled: bool,
    pub entropic_vn_flag: bool,
    pub entropic_lin_flag: bool,
    pub majorization_flag: bool,
    pub min_pt_eigenvalue: f64,
}

impl CriteriaVerdict {
    /// Every sufficient criterion that fires must agree with PPT.
    pub fn is_consistent(&self) -> bool {
        let any_weak = self.entropic_vn_flag || self.entropic_lin_flag || self.majorization_flag;
        !any_weak || self.ppt_entangled
    }
}

pub fn criteria_verdict(rho: &DensityMatrix) -> CriteriaVerdict {
    let vn = entropy_profile(rho, EntropyKind::VonNeumann);
    let lin = entropy_profile(rho, EntropyKind::Linear);
    criteria_verdict_with(rho, &vn, &lin)
}

/// Same as [`criteria_verdict`] with precomputed profiles.
pub fn criteria_verdict_with(rho: &DensityMatrix, vn: &EntropyProfile, lin: &EntropyProfile) -> CriteriaVerdict {
    let ppt = ppt_test(rho);
    CriteriaVerdict {
        ppt_entangled: ppt.entangled,
        entropic_vn_flag: entropic_criterion_vn(vn).expect("von Neumann profile"),
        entropic_lin_flag: entropic_criterion_lin(lin).expect("linear profile"),
        majorization_flag: majorization_test(rho),
        min_pt_eigenvalue: ppt.min_eigenvalue,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundName {
    /// `|S_V1 - S_V2| <= 2 S_V`
    TriangleLower,
    /// `2 S_V <= S_V1 + S_V2`
    TriangleUpper,
    /// `E_F <= min{S_V1, S_V2}`
    EofLoose,
    /// `C^2 <= min{S_L1, S_L2}`
    TangleLoose,
    /// `C^2 <= (1 - sqrt(1 - S_L,min)) (1 + sqrt(1 - S_L,max))`
    MemmsTangle,
    /// `E_F <= F(sqrt(memms tangle bound))`
    MemmsEof,
    /// `S_L1 <= 4 sqrt(1 - S_L2) / (1 + sqrt(1 - S_L2))^2` for entangled LPTPS
    LptpsExclusion,
    /// `C^2 <= 2 (dmu_max - dmu)` for LPTPS
    LptpsLine,
}

impl BoundName {
    pub const ALL: [BoundName; 8] = [
        BoundName::TriangleLower,
        BoundName::TriangleUpper,
        BoundName::EofLoose,
        BoundName::TangleLoose,
        BoundName::MemmsTangle,
        BoundName::MemmsEof,
        BoundName::LptpsExclusion,
        BoundName::LptpsLine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::TriangleLower => "triangle_lower",
            BoundName::TriangleUpper => "triangle_upper",
            BoundName::EofLoose => "eof_loose",
            BoundName::TangleLoose => "tangle_loose",
            BoundName::MemmsTangle => "memms_tangle",
            BoundName::MemmsEof => "memms_eof",
            BoundName::LptpsExclusion => "lptps_exclusion",
            BoundName::LptpsLine => "lptps_line",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One instance of an inequality `lhs <= rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    pub bound: BoundName,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

impl BoundCheck {
    pub fn new(bound: BoundName, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            bound,
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tol::BOUND_SLACK,
        }
    }
}

/// Subadditivity and the Araki-Lieb inequality in normalised units.
pub fn triangle_inequality_check(profile: &EntropyProfile) -> Result<[BoundCheck; 2]> {
    profile.expect_kind(EntropyKind::VonNeumann)?;
    let twice = 2.0 * profile.s_global;
    Ok([
        BoundCheck::new(BoundName::TriangleLower, (profile.s_1 - profile.s_2).abs(), twice),
        BoundCheck::new(BoundName::TriangleUpper, twice, profile.s_1 + profile.s_2),
    ])
}

/// Global entropy of the product of two marginals with entropies `s1`, `s2`.
pub fn product_surface(kind: EntropyKind, s1: f64, s2: f64) -> Result<f64> {
    check_range("s1", s1, 0.0, 1.0)?;
    check_range("s2", s2, 0.0, 1.0)?;
    Ok(match kind {
        EntropyKind::VonNeumann => (s1 + s2) / 2.0,
        EntropyKind::Linear => 2.0 * (s1 + s2) / 3.0 - s1 * s2 / 3.0,
    })
}

/// `E_F <= min{S_V1, S_V2}` and `C^2 <= min{S_L1, S_L2}`.
pub fn loose_bounds(vn: &EntropyProfile, lin: &EntropyProfile, report: &EntanglementReport) -> Result<[BoundCheck; 2]> {
    vn.expect_kind(EntropyKind::VonNeumann)?;
    lin.expect_kind(EntropyKind::Linear)?;
    Ok([
        BoundCheck::new(BoundName::EofLoose, report.eof, vn.min_marginal()),
        BoundCheck::new(BoundName::TangleLoose, report.tangle, lin.min_marginal()),
    ])
}

/// `1 - sqrt(1 - s)` without cancellation for small `s`.
fn one_minus_root_complement(s: f64) -> f64 {
    s / (1.0 + (1.0 - s).sqrt())
}

/// Upper bound on the tangle from the marginal linear entropies, saturated by MEMMS.
/// The minus sign goes with the smaller entropy.
pub fn memms_tangle_bound(s_l1: f64, s_l2: f64) -> Result<f64> {
    check_range("s_l1", s_l1, 0.0, 1.0)?;
    check_range("s_l2", s_l2, 0.0, 1.0)?;
    let (lo, hi) = (s_l1.min(s_l2), s_l1.max(s_l2));
    Ok(one_minus_root_complement(lo) * (1.0 + (1.0 - hi).sqrt()))
}

/// `F(sqrt(memms_tangle_bound))`, the corresponding bound on the entanglement of formation.
pub fn eof_marginal_bound(s_l1: f64, s_l2: f64) -> Result<f64> {
    let tangle = memms_tangle_bound(s_l1, s_l2)?;
    entanglement_of_formation(tangle.sqrt().min(1.0))
}

/// Every entropic bound that holds for all two-qubit states, in a fixed order:
/// triangle lower/upper, loose EoF, loose tangle, MEMMS tangle, MEMMS EoF.
pub fn bound_sweep(vn: &EntropyProfile, lin: &EntropyProfile, report: &EntanglementReport) -> Result<[BoundCheck; 6]> {
    let [lower, upper] = triangle_inequality_check(vn)?;
    let [eof_loose, tangle_loose] = loose_bounds(vn, lin, report)?;
    let memms = BoundCheck::new(BoundName::MemmsTangle, report.tangle, memms_tangle_bound(lin.s_1, lin.s_2)?);
    let memms_eof = BoundCheck::new(BoundName::MemmsEof, report.eof, eof_marginal_bound(lin.s_1, lin.s_2)?);
    Ok([lower, upper, eof_loose, tangle_loose, memms, memms_eof])
}

/// `mu_1 mu_2 - mu`, always from the purities themselves.
pub fn delta_mu(rho: &DensityMatrix) -> f64 {
    let (a, b) = rho.marginals();
    a.purity() * b.purity() - rho.purity()
}

pub fn delta_mu_from_profile(profile: &EntropyProfile) -> f64 {
    profile.mu_1 * profile.mu_2 - profile.mu
}

/// Largest `S_L` of one marginal compatible with an entangled LPTPS whose other
/// marginal has linear entropy `s_other`.
pub fn lptps_exclusion_limit(s_other: f64) -> Result<f64> {
    check_range("s_other", s_other, 0.0, 1.0)?;
    let r = (1.0 - s_other).sqrt();
    Ok(4.0 * r / ((1.0 + r) * (1.0 + r)))
}

/// `S_L1 <= 4 sqrt(1 - S_L2) / (1 + sqrt(1 - S_L2))^2`.
pub fn lptps_entropy_exclusion(s_l1: f64, s_l2: f64) -> Result<BoundCheck> {
    check_range("s_l1", s_l1, 0.0, 1.0)?;
    Ok(BoundCheck::new(BoundName::LptpsExclusion, s_l1, lptps_exclusion_limit(s_l2)?))
}

/// Both orientations of [`lptps_entropy_exclusion`].
pub fn lptps_entropy_exclusion_pair(s_l1: f64, s_l2: f64) -> Result<[BoundCheck; 2]> {
    Ok([lptps_entropy_exclusion(s_l1, s_l2)?, lptps_entropy_exclusion(s_l2, s_l1)?])
}

/// Tangle of the maximally entangled LPTPS at distance `delta_mu` from product purity:
/// `2 (dmu_max - delta_mu)`.
pub fn lptps_max_tangle(delta_mu: f64) -> Result<f64> {
    let max = delta_mu_max();
    if !(delta_mu >= -tol::FLAG_GUARD && delta_mu <= max + tol::FLAG_GUARD) {
        return Err(Error::OutOfRange {
            name: "delta_mu",
            value: delta_mu,
            lo: 0.0,
            hi: max,
        });
    }
    Ok((2.0 * (max - delta_mu)).max(0.0))
}

/// Global mixedness above which only separable states exist.
pub fn coexistence_plane(kind: EntropyKind) -> f64 {
    match kind {
        // (log_4 12) / 2
        EntropyKind::VonNeumann => 12f64.ln() / 16f64.ln(),
        EntropyKind::Linear => 8.0 / 9.0,
    }
}
