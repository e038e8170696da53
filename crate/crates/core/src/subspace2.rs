//! Classification of two-dimensional two-qubit subspaces.
//!
//! A 2-D subspace 𝒱 ⊂ ℂ²⊗ℂ² is sorted into one of three classes by the
//! product states in its orthogonal complement 𝒱⊥:
//!
//! - **Unverifiable** (one product state τ): the best test operator that
//!   accepts all of 𝒱 is Ω = 1 − |τ⟩⟨τ|, and the entangled state of 𝒱⊥
//!   orthogonal to τ passes it with certainty, so the spectral gap is 0.
//! - **Verifiable** (two non-orthogonal product states τ₂, τ₃): the optimal
//!   product-test strategy performs each of 1 − |τ₂⟩⟨τ₂| and 1 − |τ₃⟩⟨τ₃|
//!   with probability 1/2 and has gap (1 − |⟨τ₃|τ₂⟩|)/2.
//! - **Perfectly verifiable** (two orthogonal product states, or infinitely
//!   many): Ω is the projector onto 𝒱 itself, achievable with product
//!   measurements, and no complement state ever passes (gap 1).
//!
//! Product states are found through the pencil det(mat(α) + λ·mat(β)) = 0,
//! where mat(ψ) is the 2×2 amplitude matrix of ψ and {α, β} is any
//! orthonormal basis of the subspace; the state β itself corresponds to the
//! root at infinity. The number of product states in 𝒱 always equals the
//! number in 𝒱⊥, and that number is 1, 2, or ∞.

use crate::linalg::{
    det2, eig_hermitian, kron, orthonormal_complement, quad_roots, CMat, Cplx, Ket, LinalgError,
    RootKind,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Two product states closer than this (canonical phase, Euclidean norm) are
/// the same state; also the orthogonality threshold that separates the
/// verifiable and perfectly verifiable classes.
pub const TOL_STATE: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum SubspaceError {
    #[error("basis kets must have dimension 4, got {0}")]
    WrongDimension(usize),
    #[error("basis not linearly independent")]
    NotIndependent,
    #[error("operator does not act as identity on the subspace: residual {0:.3e}")]
    NotTestOperator(f64),
    #[error("classification does not belong to this subspace: residual {0:.3e}")]
    MismatchedClassification(f64),
    #[error(
        "product-state counts differ between the subspace ({in_v}) and its complement ({in_vperp})"
    )]
    CountMismatch { in_v: usize, in_vperp: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("subspace JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A two-dimensional subspace of the two-qubit Hilbert space, held as an
/// orthonormal basis pair (amplitudes in the order |00⟩, |01⟩, |10⟩, |11⟩).
#[derive(Debug, Clone)]
pub struct Subspace2 {
    basis: [Ket; 2],
}

/// JSON shape for subspace input: two basis vectors of four `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    basis: [[[f64; 2]; 4]; 2],
}

impl Subspace2 {
    /// Builds from an already orthonormal pair.
    pub fn new(b1: Ket, b2: Ket) -> Result<Self, SubspaceError> {
        if b1.dim() != 4 {
            return Err(SubspaceError::WrongDimension(b1.dim()));
        }
        if b2.dim() != 4 {
            return Err(SubspaceError::WrongDimension(b2.dim()));
        }
        let residual = b1.inner(&b2).norm();
        if residual > 1e-10 {
            return Err(SubspaceError::Linalg(LinalgError::NotOrthonormal {
                i: 0,
                j: 1,
                residual,
            }));
        }
        Ok(Subspace2 { basis: [b1, b2] })
    }

    /// Builds from two arbitrary spanning vectors, orthonormalizing by
    /// Gram-Schmidt. The boolean reports whether the input needed adjustment
    /// (used as a warning flag by callers that expect orthonormal input).
    pub fn orthonormalized(v1: Vec<Cplx>, v2: Vec<Cplx>) -> Result<(Self, bool), SubspaceError> {
        if v1.len() != 4 || v2.len() != 4 {
            return Err(SubspaceError::WrongDimension(v1.len().max(v2.len())));
        }
        let norm1 = v1.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm1 < 1e-8 {
            return Err(SubspaceError::NotIndependent);
        }
        let b1 = Ket::new(v1).map_err(SubspaceError::Linalg)?;
        let overlap: Cplx = b1
            .amps()
            .iter()
            .zip(v2.iter())
            .map(|(b, v)| b.conj() * v)
            .sum();
        let residual: Vec<Cplx> = v2
            .iter()
            .zip(b1.amps())
            .map(|(v, b)| v - overlap * b)
            .collect();
        let norm2_in = v2.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let rnorm = residual.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if rnorm < 1e-8 * norm2_in.max(1.0) {
            return Err(SubspaceError::NotIndependent);
        }
        let b2 = Ket::new(residual).map_err(SubspaceError::Linalg)?;
        let adjusted =
            (norm1 - 1.0).abs() > 1e-10 || (norm2_in - 1.0).abs() > 1e-10 || overlap.norm() > 1e-10;
        Ok((Subspace2 { basis: [b1, b2] }, adjusted))
    }

    /// Parses `{"basis": [[[re,im]; 4]; 2]}`, orthonormalizing if needed; the
    /// boolean warns that the input was not orthonormal as given.
    pub fn from_json(text: &str) -> Result<(Self, bool), SubspaceError> {
        let raw: SubspaceJson = serde_json::from_str(text)?;
        let to_vec = |row: &[[f64; 2]; 4]| -> Vec<Cplx> {
            row.iter().map(|&[re, im]| Cplx::new(re, im)).collect()
        };
        Subspace2::orthonormalized(to_vec(&raw.basis[0]), to_vec(&raw.basis[1]))
    }

    pub fn basis(&self) -> &[Ket; 2] {
        &self.basis
    }

    /// Projector onto the subspace.
    pub fn projector(&self) -> CMat {
        CMat::projector(&self.basis[0]).add(&CMat::projector(&self.basis[1]))
    }

    /// Orthonormal basis of the orthogonal complement.
    pub fn complement(&self) -> Result<Vec<Ket>, SubspaceError> {
        Ok(orthonormal_complement(&self.basis, 4)?)
    }
}

/// The product states found in a 2-D subspace: either finitely many distinct
/// states (with multiplicities from the pencil), or infinitely many, in which
/// case `states` holds two orthogonal representatives.
#[derive(Debug, Clone)]
pub struct ProductStateSet {
    pub infinite: bool,
    /// Canonical-phase representatives, pairwise distinct beyond [`TOL_STATE`].
    pub states: Vec<Ket>,
    pub multiplicities: Vec<u32>,
}

impl ProductStateSet {
    /// Number of distinct product states; `None` when infinite.
    pub fn count(&self) -> Option<usize> {
        if self.infinite {
            None
        } else {
            Some(self.states.len())
        }
    }
}

/// Classification verdict for a 2-D two-qubit subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Unverifiable,
    Verifiable,
    PerfectlyVerifiable,
}

/// Classification outcome: verdict, product-state inventory on both sides,
/// and the overlap |⟨τ₃|τ₂⟩| of the two complement product states when the
/// verdict is `Verifiable` (0 otherwise).
#[derive(Debug, Clone)]
pub struct SubspaceClass {
    pub verdict: Verdict,
    pub products_in_v: ProductStateSet,
    pub products_in_vperp: ProductStateSet,
    pub overlap: f64,
}

/// The verification operator built for a classified subspace.
#[derive(Debug, Clone)]
pub struct VerificationOperator2 {
    pub omega: CMat,
    pub gap: f64,
    pub kind: Verdict,
    /// For an unverifiable subspace: the entangled complement state that
    /// passes the strategy with certainty.
    pub fooling_state: Option<Ket>,
}

/// 2×2 amplitude matrix of a two-qubit ket: entry [j,k] is the amplitude of
/// |jk⟩. A state is product exactly when this matrix is singular.
pub fn amplitude_matrix(psi: &Ket) -> CMat {
    assert_eq!(psi.dim(), 4, "amplitude matrix expects a two-qubit ket");
    let mut m = CMat::zeros(2, 2);
    for j in 0..2 {
        for k in 0..2 {
            m[(j, k)] = psi.amps()[2 * j + k];
        }
    }
    m
}

/// Concurrence 2·|det(amplitude matrix)|: 1 for maximally entangled states,
/// 0 exactly for product states.
pub fn concurrence(psi: &Ket) -> f64 {
    2.0 * det2(&amplitude_matrix(psi))
        .expect("2x2 by construction")
        .norm()
}

fn push_candidate(states: &mut Vec<Ket>, mults: &mut Vec<u32>, k: Ket, mult: u32) {
    for (existing, m) in states.iter().zip(mults.iter_mut()) {
        if existing.phase_distance(&k) < TOL_STATE {
            *m += mult;
            return;
        }
    }
    states.push(k.canonicalized());
    mults.push(mult);
}

/// Enumerates the product states inside the span of the subspace basis.
///
/// Solves det(mat(α) + λ·mat(β)) = 0 for the basis pair {α, β}; each finite
/// root λ gives the product state α + λβ, and β itself is the root at
/// infinity, counted when det(mat(β)) vanishes. An identically zero pencil
/// means every state in the subspace is product; the two (orthogonal) basis
/// kets are returned as representatives.
pub fn find_product_states(v: &Subspace2) -> ProductStateSet {
    let alpha = &v.basis()[0];
    let beta = &v.basis()[1];
    let a = amplitude_matrix(alpha);
    let b = amplitude_matrix(beta);
    let det_a = det2(&a).unwrap();
    let det_b = det2(&b).unwrap();
    // Mixed coefficient of det(A + lambda B) = det A + c1*lambda + det B*lambda^2.
    let c1 = a[(0, 0)] * b[(1, 1)] + b[(0, 0)] * a[(1, 1)]
        - a[(0, 1)] * b[(1, 0)]
        - b[(0, 1)] * a[(1, 0)];
    let rs = quad_roots(det_b, c1, det_a);

    if rs.kind == RootKind::IdenticallyZero {
        return ProductStateSet {
            infinite: true,
            states: vec![alpha.canonicalized(), beta.canonicalized()],
            multiplicities: vec![1, 1],
        };
    }

    let mut states = Vec::new();
    let mut mults = Vec::new();
    for root in &rs.roots {
        let amps: Vec<Cplx> = alpha
            .amps()
            .iter()
            .zip(beta.amps())
            .map(|(x, y)| x + root * y)
            .collect();
        if let Ok(k) = Ket::new(amps) {
            let mult = if rs.kind == RootKind::OneDouble { 2 } else { 1 };
            push_candidate(&mut states, &mut mults, k, mult);
        }
    }
    // The pencil alpha + lambda*beta never reaches beta itself; test it
    // separately as the root at infinity.
    if det_b.norm() < crate::linalg::TOL_ROOT {
        push_candidate(&mut states, &mut mults, beta.clone(), 1);
    }
    ProductStateSet {
        infinite: false,
        states,
        multiplicities: mults,
    }
}

/// Classifies the subspace by the product states of its orthogonal
/// complement: one product state means unverifiable, two orthogonal ones (or
/// infinitely many) perfectly verifiable, two non-orthogonal ones verifiable.
/// The product states inside 𝒱 are recorded as well, and their count must
/// equal the complement count.
pub fn classify(v: &Subspace2) -> Result<SubspaceClass, SubspaceError> {
    let products_in_v = find_product_states(v);
    let comp = v.complement()?;
    let vperp = Subspace2::new(comp[0].clone(), comp[1].clone())?;
    let products_in_vperp = find_product_states(&vperp);

    match (products_in_v.count(), products_in_vperp.count()) {
        (None, None) => {}
        (Some(a), Some(b)) if a == b => {}
        (a, b) => {
            return Err(SubspaceError::CountMismatch {
                in_v: a.unwrap_or(usize::MAX),
                in_vperp: b.unwrap_or(usize::MAX),
            })
        }
    }

    let (verdict, overlap) = match products_in_vperp.count() {
        None => (Verdict::PerfectlyVerifiable, 0.0),
        Some(1) => (Verdict::Unverifiable, 0.0),
        Some(2) => {
            let ov = products_in_vperp.states[0]
                .inner(&products_in_vperp.states[1])
                .norm();
            if ov < TOL_STATE {
                (Verdict::PerfectlyVerifiable, 0.0)
            } else {
                (Verdict::Verifiable, ov)
            }
        }
        Some(n) => {
            return Err(SubspaceError::CountMismatch {
                in_v: n,
                in_vperp: n,
            })
        }
    };
    Ok(SubspaceClass {
        verdict,
        products_in_v,
        products_in_vperp,
        overlap,
    })
}

/// Builds the verification operator for a classified subspace.
///
/// - Unverifiable: Ω = 1 − |τ⟩⟨τ| with τ the lone complement product state;
///   gap 0, and the entangled complement state orthogonal to τ is attached as
///   the fooling state.
/// - Perfectly verifiable: Ω is the projector onto 𝒱; gap 1.
/// - Verifiable: Ω = 1 − (|τ₂⟩⟨τ₂| + |τ₃⟩⟨τ₃|)/2; gap (1 − |⟨τ₃|τ₂⟩|)/2.
pub fn build_strategy(
    c: &SubspaceClass,
    v: &Subspace2,
) -> Result<VerificationOperator2, SubspaceError> {
    // The classification must describe this subspace: every recorded
    // complement product state has to be orthogonal to the basis.
    let mut residual: f64 = 0.0;
    for s in &c.products_in_vperp.states {
        for b in v.basis() {
            residual = residual.max(b.inner(s).norm());
        }
    }
    if residual > TOL_STATE {
        return Err(SubspaceError::MismatchedClassification(residual));
    }

    let id = CMat::identity(4);
    match c.verdict {
        Verdict::Unverifiable => {
            let tau = &c.products_in_vperp.states[0];
            let omega = id.sub(&CMat::projector(tau));
            let fooling = orthonormal_complement(
                &[v.basis()[0].clone(), v.basis()[1].clone(), tau.clone()],
                4,
            )?
            .remove(0)
            .canonicalized();
            Ok(VerificationOperator2 {
                omega,
                gap: 0.0,
                kind: Verdict::Unverifiable,
                fooling_state: Some(fooling),
            })
        }
        Verdict::PerfectlyVerifiable => Ok(VerificationOperator2 {
            omega: v.projector(),
            gap: 1.0,
            kind: Verdict::PerfectlyVerifiable,
            fooling_state: None,
        }),
        Verdict::Verifiable => {
            let p2 = CMat::projector(&c.products_in_vperp.states[0]);
            let p3 = CMat::projector(&c.products_in_vperp.states[1]);
            let omega = id.sub(&p2.add(&p3).scale(0.5));
            Ok(VerificationOperator2 {
                omega,
                gap: (1.0 - c.overlap) / 2.0,
                kind: Verdict::Verifiable,
                fooling_state: None,
            })
        }
    }
}

/// Spectral gap ν(Ω) = 1 − λ_max((1−Π)Ω(1−Π)) of a test operator for the
/// subspace, computed on an orthonormal basis of the complement.
pub fn spectral_gap2(omega: &CMat, v: &Subspace2) -> Result<f64, SubspaceError> {
    let residual = omega.hermiticity_residual();
    if residual > 1e-10 {
        return Err(SubspaceError::Linalg(LinalgError::NotHermitian {
            residual,
        }));
    }
    for b in v.basis() {
        let fixed = omega.mul_ket(b);
        let dev = fixed
            .iter()
            .zip(b.amps())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        if dev > 1e-9 {
            return Err(SubspaceError::NotTestOperator(dev));
        }
    }
    let comp = v.complement()?;
    let images: Vec<Vec<Cplx>> = comp.iter().map(|w| omega.mul_ket(w)).collect();
    let mut b = CMat::zeros(comp.len(), comp.len());
    for (i, u) in comp.iter().enumerate() {
        for (j, ow) in images.iter().enumerate() {
            b[(i, j)] = u.amps().iter().zip(ow).map(|(x, y)| x.conj() * y).sum();
        }
    }
    let eig = eig_hermitian(&b)?;
    Ok(1.0 - eig.max())
}

/// Projector onto the span of two (not necessarily orthogonal) product
/// factors |a⟩⊗|b⟩; convenience for building branch tests.
pub fn product_ket(a: &Ket, b: &Ket) -> Ket {
    let am = CMat::from_rows(a.dim(), 1, a.amps());
    let bm = CMat::from_rows(b.dim(), 1, b.amps());
    let k = kron(&am, &bm);
    Ket::new((0..k.rows()).map(|i| k[(i, 0)]).collect()).expect("product of unit kets")
}
