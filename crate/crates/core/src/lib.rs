//! Entanglement versus global and marginal mixedness for two-qubit states.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: fixed-size complex matrices, a Jacobi Hermitian eigensolver,
//!   partial trace / partial transpose and the Kronecker product.
//! - [`states`]: validated density matrices plus every state family used by the
//!   analysis (Bell, Werner, product, Hilbert-Schmidt random states, the
//!   X-shaped ansatz, maximally entangled states at fixed marginals and
//!   entangled states that are less pure than the product of their marginals).
//! - [`measures`]: Von Neumann / linear entropies, purities, concurrence, tangle
//!   and entanglement of formation.
//! - [`criteria`]: PPT, entropic and majorization criteria together with all
//!   entropic bounds, surfaces and planes relating entanglement and mixedness.
//! - [`extremal`]: derivative-free numerical maximisation used to confirm the
//!   closed-form extremal families independently.

pub mod criteria;
pub mod error;
pub mod extremal;
pub mod linalg;
pub mod measures;
pub mod states;
pub mod tol;

pub use criteria::{BoundCheck, BoundName, CriteriaVerdict};
pub use error::{Error, Result};
pub use linalg::{CMatrix, Matrix2, Matrix4, Qubit, Spectrum, C64};
pub use measures::{EntanglementReport, EntropyKind, EntropyProfile};
pub use states::{DensityMatrix, Family, LptpsParams, MemmsParams, Provenance, QubitMarginal};
