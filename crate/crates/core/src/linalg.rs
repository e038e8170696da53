//! Dense complex linear algebra for dimensions up to 8.
//!
//! Everything here is sized for operators on one to three qubits: row-major
//! complex matrices, normalized kets, Kronecker products, a cyclic Jacobi
//! eigensolver for Hermitian matrices, 2×2 determinants, quadratic
//! root-finding with explicit degeneracy handling (needed by the product-state
//! pencil `det(α + λβ) = 0`), and orthonormal complements. All operations are
//! pure; values are immutable after construction.

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type Cplx = Complex64;

/// Hermiticity and orthonormality tolerance.
pub const TOL_HERMITIAN: f64 = 1e-10;
/// Polynomial-coefficient degeneracy tolerance for [`quad_roots`].
pub const TOL_COEFF: f64 = 1e-9;
/// Residual tolerance for roots substituted back into their polynomial.
pub const TOL_ROOT: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: max |A - A^H| = {residual:.3e}")]
    NotHermitian { residual: f64 },
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    WrongShape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("vector has norm {norm:.3e}, cannot normalize")]
    ZeroVector { norm: f64 },
    #[error("basis vectors are not orthonormal: |<{i}|{j}> - delta| = {residual:.3e}")]
    NotOrthonormal { i: usize, j: usize, residual: f64 },
    #[error("basis not linearly independent")]
    LinearlyDependent,
    #[error("entry ({row},{col}) is not finite")]
    NonFinite { row: usize, col: usize },
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    entries: Vec<Cplx>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            entries: vec![Cplx::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cplx::new(1.0, 0.0);
        }
        m
    }

    /// Square matrix with the given real diagonal.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = CMat::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Cplx::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from a row-major slice of entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[Cplx]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        CMat {
            rows,
            cols,
            entries: entries.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Cplx::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_ket(&self, k: &Ket) -> Vec<Cplx> {
        assert_eq!(self.cols, k.dim(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * k.amps()[j])
                    .sum::<Cplx>()
            })
            .collect()
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e += o;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e -= o;
        }
        out
    }

    pub fn scale(&self, s: f64) -> CMat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= s;
        }
        out
    }

    pub fn trace(&self) -> Cplx {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude of `self − other`.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermiticity_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    /// Expectation value ⟨k|A|k⟩ (real part; the caller guarantees A is Hermitian).
    pub fn expectation(&self, k: &Ket) -> f64 {
        let ak = self.mul_ket(k);
        k.amps()
            .iter()
            .zip(&ak)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// Rank-one projector |k⟩⟨k|.
    pub fn projector(k: &Ket) -> CMat {
        let d = k.dim();
        let mut m = CMat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = k.amps()[i] * k.amps()[j].conj();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Cplx;
    fn index(&self, (i, j): (usize, usize)) -> &Cplx {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx {
        &mut self.entries[i * self.cols + j]
    }
}

/// Kronecker product: `(a⊗b)[(i·rb+k),(j·cb+l)] = a[i,j]·b[k,l]`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let mut out = CMat::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            if aij == Cplx::new(0.0, 0.0) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Unit-norm state vector. Construction normalizes, so the Euclidean norm is
/// 1 within 1e-12 afterwards; a (near-)zero input is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: Vec<Cplx>,
}

impl Ket {
    pub fn new(amps: Vec<Cplx>) -> Result<Self, LinalgError> {
        for (i, a) in amps.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(LinalgError::NonFinite { row: i, col: 0 });
            }
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(LinalgError::ZeroVector { norm });
        }
        Ok(Ket {
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_reals(amps: &[f64]) -> Result<Self, LinalgError> {
        Ket::new(amps.iter().map(|&x| Cplx::new(x, 0.0)).collect())
    }

    /// Computational basis vector |k⟩ in the given dimension.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![Cplx::new(0.0, 0.0); dim];
        amps[k] = Cplx::new(1.0, 0.0);
        Ket { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Cplx] {
        &self.amps
    }

    /// Inner product ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &Ket) -> Cplx {
        assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Multiplies by the global phase that makes the first amplitude with
    /// magnitude above 1e-9 real and positive. States are defined up to a
    /// global phase; this fixes a representative for comparisons.
    pub fn canonicalized(&self) -> Ket {
        for a in &self.amps {
            if a.norm() > 1e-9 {
                let phase = a.conj() / a.norm();
                return Ket {
                    amps: self.amps.iter().map(|x| x * phase).collect(),
                };
            }
        }
        self.clone()
    }

    /// Euclidean distance between canonical-phase representatives.
    pub fn phase_distance(&self, other: &Ket) -> f64 {
        let a = self.canonicalized();
        let b = other.canonicalized();
        a.amps
            .iter()
            .zip(&b.amps)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order with a matching orthonormal set of eigenvectors.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: Vec<Ket>,
}

impl HermEig {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn top_vector(&self) -> &Ket {
        self.vectors.last().unwrap()
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each sweep annihilates every off-diagonal entry with a complex Givens
/// rotation (a phase factor absorbs the entry's argument, then a standard real
/// Jacobi rotation zeroes it); for the n ≤ 8 matrices used here the iteration
/// converges to machine precision in a handful of sweeps and yields an
/// orthonormal eigenvector set without external dependencies.
pub fn eig_hermitian(a: &CMat) -> Result<HermEig, LinalgError> {
    if a.rows() != a.cols() {
        return Err(LinalgError::WrongShape {
            expected_rows: a.rows(),
            expected_cols: a.rows(),
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let residual = a.hermiticity_residual();
    if residual > TOL_HERMITIAN {
        return Err(LinalgError::NotHermitian { residual });
    }
    let n = a.rows();
    // Work on the exactly-Hermitian average (A + A^H)/2 so rounding drift in
    // the input cannot leak into the iteration.
    let mut m = a.add(&a.adjoint()).scale(0.5);
    let mut q = CMat::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for qq in (p + 1)..n {
                off = off.max(m[(p, qq)].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let beta = m[(p, r)];
                let b = beta.norm();
                if b <= 1e-300 {
                    continue;
                }
                // Phase that makes the pivot real, then the classic stable
                // rotation angle choice.
                let wbar = beta.conj() / b;
                let tau = (m[(r, r)].re - m[(p, p)].re) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // 2x2 unitary [[c, s], [-s·w̄, c·w̄]] acting on columns (p, r).
                let u00 = Cplx::new(c, 0.0);
                let u01 = Cplx::new(s, 0.0);
                let u10 = -s * wbar;
                let u11 = c * wbar;
                for k in 0..n {
                    let mp = m[(k, p)];
                    let mr = m[(k, r)];
                    m[(k, p)] = mp * u00 + mr * u10;
                    m[(k, r)] = mp * u01 + mr * u11;
                }
                for k in 0..n {
                    let mp = m[(p, k)];
                    let mr = m[(r, k)];
                    m[(p, k)] = u00.conj() * mp + u10.conj() * mr;
                    m[(r, k)] = u01.conj() * mp + u11.conj() * mr;
                }
                for k in 0..n {
                    let qp = q[(k, p)];
                    let qr = q[(k, r)];
                    q[(k, p)] = qp * u00 + qr * u10;
                    q[(k, r)] = qp * u01 + qr * u11;
                }
                m[(p, r)] = Cplx::new(0.0, 0.0);
                m[(r, p)] = Cplx::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            Ket::new((0..n).map(|k| q[(k, i)]).collect()).expect("Jacobi columns are unit vectors")
        })
        .collect();
    Ok(HermEig { values, vectors })
}

/// How the solutions of `c2·λ² + c1·λ + c0 = 0` degenerate.
///
/// A leading coefficient below [`TOL_COEFF`] drops the degree and puts a
/// root "at infinity" (in the pencil picture `det(α + λβ)`, the state β
/// itself); a polynomial with all coefficients below tolerance vanishes
/// identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// Two distinct finite roots.
    TwoDistinct,
    /// One finite double root, reported once.
    OneDouble,
    /// Degree dropped to one: a single finite root plus the root at infinity.
    OneFinitePlusInfinity,
    /// Degree dropped to zero with a nonzero constant: no finite roots, only
    /// the root at infinity.
    InfinityOnly,
    /// All coefficients below tolerance: every λ solves the equation.
    IdenticallyZero,
}

/// Solutions of a quadratic with degeneracy bookkeeping.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub kind: RootKind,
    /// Finite roots, sorted by (re, im); a double root appears once.
    pub roots: Vec<Cplx>,
    /// True when the leading coefficient is below tolerance.
    pub has_root_at_infinity: bool,
}

/// Solves `c2·λ² + c1·λ + c0 = 0` over the complex numbers.
///
/// Uses the sign-chosen quadratic formula (the larger-magnitude branch of
/// `−(c1 ± √disc)/2` divides, never subtracts nearly-equal quantities), so
/// both roots are accurate even when they differ by orders of magnitude.
pub fn quad_roots(c2: Cplx, c1: Cplx, c0: Cplx) -> RootSet {
    let small = |c: Cplx| c.norm() < TOL_COEFF;
    if small(c2) && small(c1) && small(c0) {
        return RootSet {
            kind: RootKind::IdenticallyZero,
            roots: vec![],
            has_root_at_infinity: true,
        };
    }
    if small(c2) {
        if small(c1) {
            return RootSet {
                kind: RootKind::InfinityOnly,
                roots: vec![],
                has_root_at_infinity: true,
            };
        }
        return RootSet {
            kind: RootKind::OneFinitePlusInfinity,
            roots: vec![-c0 / c1],
            has_root_at_infinity: true,
        };
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    let sd = disc.sqrt();
    let q = if (c1 + sd).norm() >= (c1 - sd).norm() {
        -(c1 + sd) * 0.5
    } else {
        -(c1 - sd) * 0.5
    };
    let (r1, r2) = if q.norm() < 1e-300 {
        // c1 and the discriminant both vanish: exact double root.
        let r = -c1 / (2.0 * c2);
        (r, r)
    } else {
        (q / c2, c0 / q)
    };
    let sep = (r1 - r2).norm();
    let scale = 1.0 + r1.norm().max(r2.norm());
    if sep < TOL_ROOT * scale {
        let r = (r1 + r2) * 0.5;
        return RootSet {
            kind: RootKind::OneDouble,
            roots: vec![r],
            has_root_at_infinity: false,
        };
    }
    let mut roots = vec![r1, r2];
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    RootSet {
        kind: RootKind::TwoDistinct,
        roots,
        has_root_at_infinity: false,
    }
}

/// Determinant of a 2×2 matrix.
pub fn det2(a: &CMat) -> Result<Cplx, LinalgError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(LinalgError::WrongShape {
            expected_rows: 2,
            expected_cols: 2,
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)])
}

/// Extends an orthonormal set to a full orthonormal basis and returns the new
/// vectors, which span the orthogonal complement of the input.
///
/// Deterministic pivoting: each step orthogonalizes every computational basis
/// vector against everything accepted so far and keeps the one with the
/// largest residual (ties to the lowest index), so the complement of a real
/// subspace comes out in a predictable, human-readable form.
pub fn orthonormal_complement(basis: &[Ket], dim: usize) -> Result<Vec<Ket>, LinalgError> {
    for (i, b) in basis.iter().enumerate() {
        if b.dim() != dim {
            return Err(LinalgError::WrongShape {
                expected_rows: dim,
                expected_cols: 1,
                rows: b.dim(),
                cols: 1,
            });
        }
        for (j, c) in basis.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            let residual = (b.inner(c) - expected).norm();
            if residual > TOL_HERMITIAN {
                return Err(LinalgError::NotOrthonormal { i, j, residual });
            }
        }
    }
    if basis.len() > dim {
        return Err(LinalgError::LinearlyDependent);
    }

    let orthogonalize = |v: &[Cplx], against: &[Ket]| -> Vec<Cplx> {
        let mut r = v.to_vec();
        for b in against {
            let overlap: Cplx = b
                .amps()
                .iter()
                .zip(r.iter())
                .map(|(bi, ri)| bi.conj() * ri)
                .sum();
            for (ri, bi) in r.iter_mut().zip(b.amps()) {
                *ri -= overlap * bi;
            }
        }
        r
    };
    let norm_of = |v: &[Cplx]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();

    let mut accepted: Vec<Ket> = basis.to_vec();
    let mut out = Vec::with_capacity(dim - basis.len());
    while accepted.len() < dim {
        let mut best: Option<(f64, Vec<Cplx>)> = None;
        for j in 0..dim {
            let mut e = vec![Cplx::new(0.0, 0.0); dim];
            e[j] = Cplx::new(1.0, 0.0);
            let r = orthogonalize(&e, &accepted);
            let n = norm_of(&r);
            if best.as_ref().is_none_or(|(bn, _)| n > bn + 1e-12) {
                best = Some((n, r));
            }
        }
        let (n, r) = best.unwrap();
        if n < 1e-8 {
            return Err(LinalgError::LinearlyDependent);
        }
        // A second orthogonalization pass scrubs rounding left by the first.
        let r = orthogonalize(&r, &accepted);
        let k = Ket::new(r)?;
        accepted.push(k.clone());
        out.push(k);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = CMat::identity(2);
        assert_eq!(kron(&i2, &i2), CMat::identity(4));
    }

    #[test]
    fn kron_of_diagonals_is_diagonal() {
        let a = CMat::diag(&[1.0, 0.0]);
        let b = CMat::diag(&[1.0, 1.0]);
        assert_eq!(kron(&a, &b), CMat::diag(&[1.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_expands_conditional_operator() {
        // |0><0| ⊗ (1 − |11><11|) + |1><1| ⊗ (|00><00| + |11><11|)
        let p0 = CMat::diag(&[1.0, 0.0]);
        let p1 = CMat::diag(&[0.0, 1.0]);
        let not11 = CMat::diag(&[1.0, 1.0, 1.0, 0.0]);
        let both = CMat::diag(&[1.0, 0.0, 0.0, 1.0]);
        let m = kron(&p0, &not11).add(&kron(&p1, &both));
        assert_eq!(m, CMat::diag(&[1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn eig_of_diagonal_sorts_ascending() {
        let e = eig_hermitian(&CMat::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 2.0).abs() < 1e-14);
        assert!((e.values[2] - 3.0).abs() < 1e-14);
        // Eigenvectors are permuted standard basis vectors.
        assert!((e.vectors[0].amps()[1].norm() - 1.0).abs() < 1e-12);
        assert!((e.vectors[1].amps()[2].norm() - 1.0).abs() < 1e-12);
        assert!((e.vectors[2].amps()[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_of_pauli_x() {
        let mut x = CMat::zeros(2, 2);
        x[(0, 1)] = c(1.0, 0.0);
        x[(1, 0)] = c(1.0, 0.0);
        let e = eig_hermitian(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        let s = 1.0 / 2.0_f64.sqrt();
        let minus = Ket::new(vec![c(s, 0.0), c(-s, 0.0)]).unwrap();
        let plus = Ket::new(vec![c(s, 0.0), c(s, 0.0)]).unwrap();
        assert!(e.vectors[0].phase_distance(&minus) < 1e-12);
        assert!(e.vectors[1].phase_distance(&plus) < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = CMat::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        let err = eig_hermitian(&m).unwrap_err();
        assert!(matches!(err, LinalgError::NotHermitian { .. }));
    }

    #[test]
    fn eig_reconstructs_complex_hermitian() {
        // A fixed Hermitian matrix with nontrivial phases.
        let mut m = CMat::zeros(3, 3);
        m[(0, 0)] = c(2.0, 0.0);
        m[(1, 1)] = c(-1.0, 0.0);
        m[(2, 2)] = c(0.5, 0.0);
        m[(0, 1)] = c(1.0, 2.0);
        m[(1, 0)] = c(1.0, -2.0);
        m[(0, 2)] = c(0.0, -0.7);
        m[(2, 0)] = c(0.0, 0.7);
        m[(1, 2)] = c(0.3, 0.1);
        m[(2, 1)] = c(0.3, -0.1);
        let e = eig_hermitian(&m).unwrap();
        let mut rec = CMat::zeros(3, 3);
        for (val, vec) in e.values.iter().zip(&e.vectors) {
            rec = rec.add(&CMat::projector(vec).scale(*val));
        }
        assert!(rec.max_abs_diff(&m) < 1e-12);
        let tr: f64 = e.values.iter().sum();
        assert!((tr - m.trace().re).abs() < 1e-12);
    }

    #[test]
    fn quad_golden_ratio_roots() {
        let r = quad_roots(c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0));
        assert_eq!(r.kind, RootKind::TwoDistinct);
        assert!(!r.has_root_at_infinity);
        let lo = (1.0 - 5.0_f64.sqrt()) / 2.0;
        let hi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!((r.roots[0] - c(lo, 0.0)).norm() < 1e-14);
        assert!((r.roots[1] - c(hi, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quad_sixth_roots_of_unity() {
        let r = quad_roots(c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0));
        assert_eq!(r.kind, RootKind::TwoDistinct);
        let third = std::f64::consts::PI / 3.0;
        // The two roots share a real part, so their sort order is decided by
        // float noise; check the set rather than the sequence.
        for expect in [c(third.cos(), -third.sin()), c(third.cos(), third.sin())] {
            assert!(r.roots.iter().any(|got| (got - expect).norm() < 1e-14));
        }
    }

    #[test]
    fn quad_double_root_at_zero() {
        let r = quad_roots(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(r.kind, RootKind::OneDouble);
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0].norm() < 1e-14);
        assert!(!r.has_root_at_infinity);
    }

    #[test]
    fn quad_degree_reductions() {
        let r = quad_roots(c(0.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0));
        assert_eq!(r.kind, RootKind::OneFinitePlusInfinity);
        assert!(r.has_root_at_infinity);
        assert!((r.roots[0] - c(0.5, 0.0)).norm() < 1e-14);

        let r = quad_roots(c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert_eq!(r.kind, RootKind::InfinityOnly);
        assert!(r.roots.is_empty());

        let r = quad_roots(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(r.kind, RootKind::IdenticallyZero);
    }

    #[test]
    fn det2_examples() {
        assert!((det2(&CMat::identity(2)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let m = CMat::from_rows(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((det2(&m).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(det2(&CMat::identity(3)).is_err());
    }

    #[test]
    fn complement_of_bell_diagonal_span() {
        let b1 = Ket::from_reals(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let b2 = Ket::from_reals(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        let comp = orthonormal_complement(&[b1, b2], 4).unwrap();
        assert_eq!(comp.len(), 2);
        let e1 = Ket::basis(4, 1);
        let e2 = Ket::basis(4, 2);
        assert!(comp[0].phase_distance(&e1) < 1e-12);
        assert!(comp[1].phase_distance(&e2) < 1e-12);
    }

    #[test]
    fn complement_contains_expected_vectors() {
        // span{(|00>+|11>)/sqrt2, |01>}: complement holds |10> and (|00>-|11>)/sqrt2.
        let b1 = Ket::from_reals(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        let b2 = Ket::basis(4, 1);
        let comp = orthonormal_complement(&[b1, b2], 4).unwrap();
        let e10 = Ket::basis(4, 2);
        let diff = Ket::from_reals(&[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(comp[0].phase_distance(&e10) < 1e-12);
        assert!(comp[1].phase_distance(&diff) < 1e-12);
    }

    #[test]
    fn complement_completeness() {
        let b1 = Ket::from_reals(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        let comp = orthonormal_complement(std::slice::from_ref(&b1), 4).unwrap();
        let mut proj = CMat::projector(&b1);
        for k in &comp {
            proj = proj.add(&CMat::projector(k));
        }
        assert!(proj.max_abs_diff(&CMat::identity(4)) < 1e-12);
    }

    #[test]
    fn complement_rejects_non_orthonormal() {
        let b1 = Ket::from_reals(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let b2 = Ket::from_reals(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        let err = orthonormal_complement(&[b1, b2], 4).unwrap_err();
        assert!(matches!(err, LinalgError::NotOrthonormal { .. }));
    }

    #[test]
    fn canonical_phase_fixes_representative() {
        let k = Ket::new(vec![c(0.0, 0.6), c(0.0, 0.8)]).unwrap();
        let canon = k.canonicalized();
        assert!((canon.amps()[0] - c(0.6, 0.0)).norm() < 1e-14);
        assert!((canon.amps()[1] - c(0.8, 0.0)).norm() < 1e-14);
        assert!(k.phase_distance(&canon) < 1e-14);
    }

    #[test]
    fn ket_rejects_zero_vector() {
        assert!(Ket::new(vec![c(0.0, 0.0); 4]).is_err());
    }
}
