//! Verification of small entangled subspaces with local measurements.
//!
//! A verification strategy is a probability-weighted mixture of *test
//! operators*: measurement effects `0 ⪯ M ⪯ 1` that every state in the
//! target subspace passes with certainty. Its quality is the spectral gap
//! `ν(Ω) = 1 − λ_max(Ω̂)` of the verification operator `Ω = Σ μ(M)·M`
//! projected onto the orthogonal complement of the subspace; a gap of `ν`
//! rejects any state of subspace fidelity at most `1 − ε` after
//! `N ≈ (1/(νε))·ln(1/δ)` rounds, except with probability `δ`.
//!
//! The crate is organised in four layers:
//!
//! - [`linalg`]: dense complex linear algebra for dimensions up to 8
//!   (Kronecker products, a Jacobi eigensolver for Hermitian matrices,
//!   quadratic pencils, orthogonal complements).
//! - [`subspace2`]: the complete theory of two-dimensional two-qubit
//!   subspaces: product-state enumeration, the unverifiable / verifiable /
//!   perfectly-verifiable trichotomy, and optimal strategies for each class.
//! - [`ghzw`]: the three-qubit subspace spanned by |GHZ⟩ and |W⟩, its ten
//!   one-way adaptive test operators, the XZ and rotation strategies, and
//!   their exact spectral-gap analysis.
//! - [`protocol`]: seeded Monte Carlo simulation of the round-by-round
//!   verification procedure against ideal, adversarial, and noisy sources.

pub mod ghzw;
pub mod linalg;
pub mod protocol;
pub mod subspace2;

pub use ghzw::{AveragedCoefficients, GapReport, Provenance, SampleMode, Strategy3, TestOperator3};
pub use linalg::{CMat, Cplx, HermEig, Ket, RootKind, RootSet};
pub use protocol::{CounterRng, DensityOp, SimConfig, SimReport, SourceKind, StateSource};
pub use subspace2::{ProductStateSet, Subspace2, SubspaceClass, Verdict, VerificationOperator2};
