//! Verification strategies for the three-qubit subspace spanned by
//! |GHZ⟩ = (|000⟩ + |111⟩)/√2 and |W⟩ = (|001⟩ + |010⟩ + |100⟩)/√3.
//!
//! Every test operator here is built from local measurements, acts as the
//! identity on the target subspace 𝒱₃, and satisfies 0 ⪯ M ⪯ 1. A strategy
//! draws one test per round from a weighted set; its quality is the spectral
//! gap ν(Ω) = 1 − λ_max((1−Π)Ω(1−Π)) of the averaged operator Ω.
//!
//! Two measurement families are provided:
//!
//! - `Z`: all qubits measured in the computational basis, accepting the
//!   outcomes 000, 111 and the three single-excitation strings.
//! - `X{i}`: qubit i measured in the X basis; the remaining pair is tested
//!   against the 2-D subspace that the X outcome projects 𝒱₃ onto. The `+`
//!   branch subspace is perfectly verifiable (its two product states are
//!   orthogonal), the `−` branch is verifiable with product-state overlap
//!   1/4, and each branch gets its optimal product test.
//!
//! Conjugating the X tests by the local rotation U = R ⊗ R ⊗ R with
//! R = diag(1, e^{2πi/3}) (which fixes 𝒱₃ up to phases) yields nine X-type
//! tests whose uniform mixture is invariant under the full symmetry group;
//! combining them with Z gives a strategy whose gap is piecewise linear in
//! the mixing weight and peaks at 141/317 for X weight 240/317.

use crate::linalg::{eig_hermitian, kron, orthonormal_complement, CMat, Cplx, Ket, LinalgError};
use crate::subspace2::product_ket;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

/// X weight at which the Z + rotated-X mixture reaches its best gap.
pub const OPTIMAL_ROTATION_WEIGHT: f64 = 240.0 / 317.0;
/// Spectral gap of the Z + rotated-X mixture at the optimal weight.
pub const OPTIMAL_ROTATION_GAP: f64 = 141.0 / 317.0;
/// Z weight at which the plain XZ mixture peaks on a 0.001 grid.
pub const BEST_XZ_WEIGHT: f64 = 0.424;

#[derive(Debug, Error)]
pub enum GhzwError {
    #[error("qubit index must be 1, 2, or 3, got {0}")]
    QubitIndex(u8),
    #[error("{name} must lie in [{lo}, {hi}], got {value}")]
    Domain {
        name: &'static str,
        lo: f64,
        hi: f64,
        value: f64,
    },
    #[error("strategy weight {0} outside [0, 1]")]
    WeightRange(f64),
    #[error("strategy weights must sum to 1, got {0}")]
    WeightSum(f64),
    #[error("strategy cannot verify: spectral gap is zero")]
    ZeroGap,
    #[error("operator must be 8x8, got {rows}x{cols}")]
    WrongShape { rows: usize, cols: usize },
    #[error("test operator eigenvalue {0} outside [0, 1]")]
    EigenvalueRange(f64),
    #[error("operator does not act as identity on the target subspace: residual {0:.3e}")]
    NotIdentityOnSubspace(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("strategy JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// |GHZ⟩ = (|000⟩ + |111⟩)/√2.
pub fn ghz_state() -> Ket {
    let s = 1.0 / 2.0_f64.sqrt();
    Ket::from_reals(&[s, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, s]).unwrap()
}

/// |W⟩ = (|001⟩ + |010⟩ + |100⟩)/√3.
pub fn w_state() -> Ket {
    let t = 1.0 / 3.0_f64.sqrt();
    Ket::from_reals(&[0.0, t, t, 0.0, t, 0.0, 0.0, 0.0]).unwrap()
}

/// Projector Π onto the target subspace span{|GHZ⟩, |W⟩}.
pub fn projector3() -> CMat {
    CMat::projector(&ghz_state()).add(&CMat::projector(&w_state()))
}

/// Cached orthonormal basis of the 6-dimensional orthogonal complement of
/// the target subspace.
pub fn complement_basis3() -> &'static [Ket] {
    static BASIS: OnceLock<Vec<Ket>> = OnceLock::new();
    BASIS.get_or_init(|| {
        orthonormal_complement(&[ghz_state(), w_state()], 8).expect("GHZ and W are orthonormal")
    })
}

/// How a test operator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// All-qubits computational-basis test.
    Z,
    /// X-basis test on the given qubit (1, 2, or 3).
    X { qubit: u8 },
    /// X-basis test conjugated by the diagonal rotation U^power.
    RotatedX { qubit: u8, power: u8 },
    /// Supplied externally or constructed by hand.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Z => write!(f, "Z"),
            Provenance::X { qubit } => write!(f, "X{qubit}"),
            Provenance::RotatedX { qubit, power } => write!(f, "X{qubit}@U{power}"),
            Provenance::Derived => write!(f, "derived"),
        }
    }
}

impl FromStr for Provenance {
    type Err = std::convert::Infallible;

    /// Recognizes the labels produced by `Display`; anything else is
    /// `Derived`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = match s {
            "Z" => Provenance::Z,
            _ => {
                let bytes = s.as_bytes();
                let qubit = |b: u8| b - b'0';
                match bytes {
                    [b'X', q @ b'1'..=b'3'] => Provenance::X { qubit: qubit(*q) },
                    [b'X', q @ b'1'..=b'3', b'@', b'U', p @ b'1'..=b'2'] => Provenance::RotatedX {
                        qubit: qubit(*q),
                        power: qubit(*p),
                    },
                    _ => Provenance::Derived,
                }
            }
        };
        Ok(parsed)
    }
}

/// A single validated test: Hermitian, 0 ⪯ M ⪯ 1, identity on 𝒱₃.
#[derive(Debug, Clone)]
pub struct TestOperator3 {
    m: CMat,
    provenance: Provenance,
}

impl TestOperator3 {
    /// Validates and wraps an 8×8 operator. Rejects non-Hermitian input,
    /// eigenvalues outside [0, 1] (tolerance 1e-10), and operators that do
    /// not fix |GHZ⟩ and |W⟩.
    pub fn new(m: CMat, provenance: Provenance) -> Result<Self, GhzwError> {
        if m.rows() != 8 || m.cols() != 8 {
            return Err(GhzwError::WrongShape {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let eig = eig_hermitian(&m)?;
        if eig.min() < -1e-10 {
            return Err(GhzwError::EigenvalueRange(eig.min()));
        }
        if eig.max() > 1.0 + 1e-10 {
            return Err(GhzwError::EigenvalueRange(eig.max()));
        }
        let mut residual: f64 = 0.0;
        for target in [ghz_state(), w_state()] {
            let image = m.mul_ket(&target);
            for (x, y) in image.iter().zip(target.amps()) {
                residual = residual.max((x - y).norm());
            }
        }
        if residual > 1e-10 {
            return Err(GhzwError::NotIdentityOnSubspace(residual));
        }
        Ok(TestOperator3 { m, provenance })
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// Computational-basis test: accepts 000, 111, and the three
/// single-excitation outcomes, so both |GHZ⟩ and |W⟩ always pass.
pub fn make_mz() -> TestOperator3 {
    let diag: Vec<f64> = (0u32..8)
        .map(|k| {
            if k.count_ones() <= 1 || k == 7 {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    TestOperator3::new(CMat::diag(&diag), Provenance::Z).expect("Z test is valid")
}

fn mx_plus_block() -> CMat {
    // tan(alpha) = (sqrt 5 - 1)/2 makes |x+ x+> and its orthogonal partner
    // span the same plane as the + branch of the target subspace.
    let alpha = ((5.0_f64.sqrt() - 1.0) / 2.0).atan();
    let xp = Ket::from_reals(&[alpha.cos(), alpha.sin()]).unwrap();
    let xbar = Ket::from_reals(&[alpha.sin(), -alpha.cos()]).unwrap();
    let block =
        CMat::projector(&product_ket(&xp, &xp)).add(&CMat::projector(&product_ket(&xbar, &xbar)));

    // The block must coincide with the projector onto
    // span{(|00>+|11>)/sqrt2, (|00>+|01>+|10>)/sqrt3}: the + outcome
    // projects the target subspace exactly there.
    let s = 1.0 / 2.0_f64.sqrt();
    let b1 = Ket::from_reals(&[s, 0.0, 0.0, s]).unwrap();
    let raw = Ket::from_reals(&[1.0, 1.0, 1.0, 0.0]).unwrap();
    let ov = b1.inner(&raw);
    let b2 = Ket::new(
        raw.amps()
            .iter()
            .zip(b1.amps())
            .map(|(r, b)| r - ov * b)
            .collect(),
    )
    .unwrap();
    let span = CMat::projector(&b1).add(&CMat::projector(&b2));
    assert!(
        block.max_abs_diff(&span) < 1e-10,
        "+ branch block must project onto the + branch subspace"
    );
    block
}

fn mx_minus_block() -> CMat {
    // The - branch subspace span{(|00>-|11>)/sqrt2, (-|00>+|01>+|10>)/sqrt3}
    // has two complement product states with overlap 1/4; its optimal test
    // subtracts half of each of their projectors.
    let h = 3.0_f64.sqrt() / 2.0;
    let xm = Ket::new(vec![Cplx::new(1.0, 0.0), Cplx::new(0.5, h)]).unwrap();
    let xmp = Ket::new(vec![Cplx::new(1.0, 0.0), Cplx::new(0.5, -h)]).unwrap();
    let p = CMat::projector(&product_ket(&xm, &xmp));
    let pp = CMat::projector(&product_ket(&xmp, &xm));
    CMat::identity(4).sub(&p.add(&pp).scale(0.5))
}

/// Permutation unitary for three qubits: position k of the input string
/// moves to position sigma[k].
fn perm_matrix(sigma: [usize; 3]) -> CMat {
    let mut m = CMat::zeros(8, 8);
    for b in 0..8usize {
        let bits = [(b >> 2) & 1, (b >> 1) & 1, b & 1];
        let mut nb = [0usize; 3];
        for k in 0..3 {
            nb[sigma[k]] = bits[k];
        }
        let row = 4 * nb[0] + 2 * nb[1] + nb[2];
        m[(row, b)] = Cplx::new(1.0, 0.0);
    }
    m
}

/// X-basis test on the given qubit. Qubit 1 is measured in the |±⟩ basis
/// and the other two qubits get the optimal test for the branch subspace
/// selected by the outcome; qubits 2 and 3 are handled by conjugating with
/// the qubit-swapping permutation.
pub fn make_mx(qubit: u8) -> Result<TestOperator3, GhzwError> {
    let s = 1.0 / 2.0_f64.sqrt();
    let plus = Ket::from_reals(&[s, s]).unwrap();
    let minus = Ket::from_reals(&[s, -s]).unwrap();
    let mx1 = kron(&CMat::projector(&plus), &mx_plus_block())
        .add(&kron(&CMat::projector(&minus), &mx_minus_block()));
    let m = match qubit {
        1 => mx1,
        2 => {
            let v = perm_matrix([1, 0, 2]);
            v.mul(&mx1).mul(&v.adjoint())
        }
        3 => {
            let v = perm_matrix([2, 1, 0]);
            v.mul(&mx1).mul(&v.adjoint())
        }
        other => return Err(GhzwError::QubitIndex(other)),
    };
    TestOperator3::new(m, Provenance::X { qubit })
}

/// The symmetries of the target subspace used throughout: the six qubit
/// permutations (identity first) and the two nontrivial powers of the
/// diagonal rotation U = R⊗R⊗R with R = diag(1, e^{2πi/3}).
pub fn symmetry_ops() -> (Vec<CMat>, [CMat; 2]) {
    let perms = vec![
        perm_matrix([0, 1, 2]),
        perm_matrix([1, 0, 2]),
        perm_matrix([2, 1, 0]),
        perm_matrix([0, 2, 1]),
        perm_matrix([1, 2, 0]),
        perm_matrix([2, 0, 1]),
    ];
    let phase = Cplx::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let r = CMat::from_rows(
        2,
        2,
        &[
            Cplx::new(1.0, 0.0),
            Cplx::new(0.0, 0.0),
            Cplx::new(0.0, 0.0),
            phase,
        ],
    );
    let u1 = kron(&kron(&r, &r), &r);
    let u2 = u1.mul(&u1);
    (perms, [u1, u2])
}

/// The ten tests underlying all built-in strategies, in the order
/// Z, X1, X2, X3, then the X tests conjugated by U and by U².
pub fn all_ten_tests() -> &'static [TestOperator3] {
    static TESTS: OnceLock<Vec<TestOperator3>> = OnceLock::new();
    TESTS.get_or_init(|| {
        let mut tests = vec![make_mz()];
        for q in 1..=3u8 {
            tests.push(make_mx(q).expect("qubit index in range"));
        }
        let (_, us) = symmetry_ops();
        for (power, u) in us.iter().enumerate() {
            for q in 1..=3u8 {
                let base = tests[q as usize].matrix();
                let rotated = u.mul(base).mul(&u.adjoint());
                tests.push(
                    TestOperator3::new(
                        rotated,
                        Provenance::RotatedX {
                            qubit: q,
                            power: (power + 1) as u8,
                        },
                    )
                    .expect("rotation preserves validity"),
                );
            }
        }
        tests
    })
}

/// A weighted mixture of validated tests; weights are nonnegative and sum
/// to 1 within 1e-12.
#[derive(Debug, Clone)]
pub struct Strategy3 {
    items: Vec<(f64, TestOperator3)>,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct StrategyItemJson {
    weight: f64,
    provenance: String,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct StrategyJson {
    label: String,
    items: Vec<StrategyItemJson>,
}

impl Strategy3 {
    pub fn new(label: &str, items: Vec<(f64, TestOperator3)>) -> Result<Self, GhzwError> {
        let mut sum = 0.0;
        for &(w, _) in &items {
            if !(0.0..=1.0 + 1e-12).contains(&w) {
                return Err(GhzwError::WeightRange(w));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(GhzwError::WeightSum(sum));
        }
        Ok(Strategy3 {
            items,
            label: label.to_string(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn items(&self) -> &[(f64, TestOperator3)] {
        &self.items
    }

    /// The averaged operator Ω = Σ wᵢ Mᵢ.
    pub fn omega(&self) -> CMat {
        let mut acc = CMat::zeros(8, 8);
        for (w, t) in &self.items {
            acc = acc.add(&t.matrix().scale(*w));
        }
        acc
    }

    pub fn to_json(&self) -> String {
        let items = self
            .items
            .iter()
            .map(|(w, t)| {
                let m = t.matrix();
                let matrix = (0..8)
                    .map(|i| (0..8).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                    .collect();
                StrategyItemJson {
                    weight: *w,
                    provenance: t.provenance().to_string(),
                    matrix,
                }
            })
            .collect();
        serde_json::to_string_pretty(&StrategyJson {
            label: self.label.clone(),
            items,
        })
        .expect("strategy serializes")
    }

    /// Parses and fully revalidates a strategy: each matrix must be a valid
    /// test and the weights a probability distribution.
    pub fn from_json(text: &str) -> Result<Self, GhzwError> {
        let raw: StrategyJson = serde_json::from_str(text)?;
        let mut items = Vec::with_capacity(raw.items.len());
        for item in raw.items {
            if item.matrix.len() != 8 || item.matrix.iter().any(|r| r.len() != 8) {
                return Err(GhzwError::WrongShape {
                    rows: item.matrix.len(),
                    cols: item.matrix.first().map_or(0, |r| r.len()),
                });
            }
            let entries: Vec<Cplx> = item
                .matrix
                .iter()
                .flatten()
                .map(|&[re, im]| Cplx::new(re, im))
                .collect();
            let provenance = item.provenance.parse().unwrap();
            let op = TestOperator3::new(CMat::from_rows(8, 8, &entries), provenance)?;
            items.push((item.weight, op));
        }
        Strategy3::new(&raw.label, items)
    }
}

/// Mixture of the Z test (weight `mu_z`) and the three plain X tests
/// (weight (1 − mu_z)/3 each).
pub fn omega_xz(mu_z: f64) -> Result<Strategy3, GhzwError> {
    if !(0.0..=1.0).contains(&mu_z) {
        return Err(GhzwError::Domain {
            name: "mu_z",
            lo: 0.0,
            hi: 1.0,
            value: mu_z,
        });
    }
    let tests = all_ten_tests();
    let mut items = vec![(mu_z, tests[0].clone())];
    for t in &tests[1..4] {
        items.push(((1.0 - mu_z) / 3.0, t.clone()));
    }
    Strategy3::new("xz", items)
}

/// Mixture of the Z test (weight 1 − mu_x) and all nine rotated X tests
/// (weight mu_x/9 each). The uniform nine-test average is invariant under
/// the full symmetry group, which makes the gap piecewise linear in mu_x.
pub fn omega_rotation(mu_x: f64) -> Result<Strategy3, GhzwError> {
    if !(0.0..=1.0).contains(&mu_x) {
        return Err(GhzwError::Domain {
            name: "mu_x",
            lo: 0.0,
            hi: 1.0,
            value: mu_x,
        });
    }
    let tests = all_ten_tests();
    let mut items = vec![(1.0 - mu_x, tests[0].clone())];
    for t in &tests[1..10] {
        items.push((mu_x / 9.0, t.clone()));
    }
    Strategy3::new("rotation", items)
}

/// Gap report for a strategy: ν, the top complement eigenvalue, the state
/// achieving it, and the strategy weights.
#[derive(Debug, Clone)]
pub struct GapReport {
    pub nu: f64,
    pub lambda_max: f64,
    pub top_vector: Ket,
    pub mu: Vec<f64>,
}

/// Spectral gap ν(Ω) = 1 − λ_max((1−Π)Ω(1−Π)), computed exactly on the
/// 6-dimensional complement of the target subspace. The returned top vector
/// is the complement state most likely to pass the strategy.
pub fn spectral_gap(s: &Strategy3) -> GapReport {
    let omega = s.omega();
    let comp = complement_basis3();
    let images: Vec<Vec<Cplx>> = comp.iter().map(|w| omega.mul_ket(w)).collect();
    let mut b = CMat::zeros(comp.len(), comp.len());
    for (i, u) in comp.iter().enumerate() {
        for (j, im) in images.iter().enumerate() {
            b[(i, j)] = u.amps().iter().zip(im).map(|(x, y)| x.conj() * y).sum();
        }
    }
    let eig = eig_hermitian(&b).expect("complement block is Hermitian");
    let lambda_max = eig.max();
    let coefs = eig.top_vector();
    let mut amps = vec![Cplx::new(0.0, 0.0); 8];
    for (c, u) in coefs.amps().iter().zip(comp) {
        for (a, ua) in amps.iter_mut().zip(u.amps()) {
            *a += c * ua;
        }
    }
    let top_vector = Ket::new(amps)
        .expect("eigenvector is unit norm")
        .canonicalized();
    GapReport {
        nu: 1.0 - lambda_max,
        lambda_max,
        top_vector,
        mu: s.items.iter().map(|(w, _)| *w).collect(),
    }
}

/// Closed form for the gap of the Z + rotated-X mixture:
/// ν(mu_x) = min(47/80·mu_x, 1 − 11/15·mu_x).
pub fn rotation_gap_formula(mu_x: f64) -> f64 {
    (47.0 / 80.0 * mu_x).min(1.0 - 11.0 / 15.0 * mu_x)
}

/// Coefficients of a symmetrized test operator. After averaging over the
/// six permutations and three rotation powers, any valid test collapses to
/// seven real numbers: the GHZ-sector entries a (diagonal), b (off-diagonal,
/// equal to 1 − a) and c (equal to a), the single-excitation block diagonal
/// d = 1 − 2e and off-diagonal e, and the double-excitation block diagonal f
/// and off-diagonal g.
#[derive(Debug, Clone, Copy)]
pub struct AveragedCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl AveragedCoefficients {
    /// Rebuilds the full 8×8 operator the coefficients describe.
    pub fn template(&self) -> CMat {
        let mut m = CMat::zeros(8, 8);
        let re = |x: f64| Cplx::new(x, 0.0);
        m[(0, 0)] = re(self.a);
        m[(7, 7)] = re(self.c);
        m[(0, 7)] = re(self.b);
        m[(7, 0)] = re(self.b);
        let weight1 = [1usize, 2, 4];
        let weight2 = [3usize, 5, 6];
        for (block, diag, off) in [(weight1, self.d, self.e), (weight2, self.f, self.g)] {
            for &i in &block {
                for &j in &block {
                    m[(i, j)] = re(if i == j { diag } else { off });
                }
            }
        }
        m
    }

    /// Predicted eigenvalues on the complement of the target subspace, with
    /// multiplicities: 2a − 1 on (|000⟩ − |111⟩)/√2, 1 − 3e twice, f − g
    /// twice, and f + 2g on (|011⟩ + |101⟩ + |110⟩)/√3.
    pub fn complement_spectrum(&self) -> [(f64, u32); 4] {
        [
            (2.0 * self.a - 1.0, 1),
            (1.0 - 3.0 * self.e, 2),
            (self.f - self.g, 2),
            (self.f + 2.0 * self.g, 1),
        ]
    }
}

/// Averages an operator over the eighteen-element symmetry group of the
/// target subspace (six qubit permutations times three rotation powers) and
/// reads off the seven structural coefficients of the result.
pub fn symmetrize(m: &CMat) -> Result<(CMat, AveragedCoefficients), GhzwError> {
    if m.rows() != 8 || m.cols() != 8 {
        return Err(GhzwError::WrongShape {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let (perms, us) = symmetry_ops();
    let mut rotated = m.clone();
    for u in &us {
        rotated = rotated.add(&u.mul(m).mul(&u.adjoint()));
    }
    rotated = rotated.scale(1.0 / 3.0);
    let mut averaged = CMat::zeros(8, 8);
    for v in &perms {
        averaged = averaged.add(&v.mul(&rotated).mul(&v.adjoint()));
    }
    averaged = averaged.scale(1.0 / 6.0);
    let coeffs = AveragedCoefficients {
        a: averaged[(0, 0)].re,
        b: averaged[(0, 7)].re,
        c: averaged[(7, 7)].re,
        d: averaged[(1, 1)].re,
        e: averaged[(1, 2)].re,
        f: averaged[(3, 3)].re,
        g: averaged[(3, 5)].re,
    };
    Ok((averaged, coeffs))
}

/// How to turn a gap into a round count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// N = ⌈ln(1/δ) / ln(1/(1 − νε))⌉, the smallest N with (1 − νε)^N ≤ δ.
    Exact,
    /// N = ⌈ln(1/δ) / (νε)⌉, the familiar first-order bound.
    Approx,
}

/// Number of rounds needed so that any state ε-far from the subspace passes
/// all rounds with probability at most δ, given a strategy of gap ν.
pub fn sample_complexity(
    nu: f64,
    eps: f64,
    delta: f64,
    mode: SampleMode,
) -> Result<u64, GhzwError> {
    if nu <= 0.0 || nu.is_nan() {
        return Err(GhzwError::ZeroGap);
    }
    if !(0.0..=1.0).contains(&nu) {
        return Err(GhzwError::Domain {
            name: "nu",
            lo: 0.0,
            hi: 1.0,
            value: nu,
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(GhzwError::Domain {
            name: "eps",
            lo: 0.0,
            hi: 1.0,
            value: eps,
        });
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(GhzwError::Domain {
            name: "delta",
            lo: 0.0,
            hi: 1.0,
            value: delta,
        });
    }
    let p = nu * eps;
    if p >= 1.0 {
        return Ok(1);
    }
    let n = match mode {
        SampleMode::Exact => delta.ln() / (-p).ln_1p(),
        SampleMode::Approx => -delta.ln() / p,
    };
    Ok(n.ceil().max(1.0) as u64)
}
