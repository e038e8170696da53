//! Round-by-round simulation of verification protocols.
//!
//! Each round draws one test M from the strategy's weight distribution and
//! accepts with probability tr[Mρ]; a state is accepted only if every round
//! passes. For the worst-case source σ = (1 − ε)|GHZ⟩⟨GHZ| + ε|v⟩⟨v|, with
//! |v⟩ the complement state most likely to pass, the per-round pass
//! probability is exactly 1 − νε, so the acceptance probability after N
//! rounds is (1 − νε)^N.
//!
//! Randomness comes from a counter-based generator keyed by
//! (seed, trial, round, slot): every draw is a pure function of those
//! values, so simulations are reproducible and trials can be evaluated in
//! any order.

use crate::ghzw::{projector3, spectral_gap, GhzwError, Strategy3};
use crate::linalg::{eig_hermitian, CMat, Cplx, Ket, LinalgError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("density operator trace must be 1, got {0}")]
    BadTrace(f64),
    #[error("density operator has negative eigenvalue {0}")]
    NegativeEigenvalue(f64),
    #[error("state must lie in the target subspace: tr[Π rho] = {0}")]
    OutsideSubspace(f64),
    #[error("state must be three-qubit (dimension 8), got dimension {0}")]
    WrongStateDimension(usize),
    #[error("round probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("test is {op_dim}-dimensional but state is {rho_dim}-dimensional")]
    DimensionMismatch { op_dim: usize, rho_dim: usize },
    #[error("simulation needs at least one trial and one round")]
    EmptyConfig,
    #[error(transparent)]
    Ghzw(#[from] GhzwError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("state JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A validated density operator: Hermitian, unit trace, positive
/// semidefinite within 1e-10.
#[derive(Debug, Clone)]
pub struct DensityOp {
    rho: CMat,
}

impl DensityOp {
    pub fn new(rho: CMat) -> Result<Self, ProtocolError> {
        let eig = eig_hermitian(&rho)?;
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(ProtocolError::BadTrace(trace.re));
        }
        if eig.min() < -1e-10 {
            return Err(ProtocolError::NegativeEigenvalue(eig.min()));
        }
        Ok(DensityOp { rho })
    }

    pub fn from_ket(psi: &Ket) -> Self {
        DensityOp {
            rho: CMat::projector(psi),
        }
    }

    /// Parses a raw nested array `[[[re, im], ...], ...]` as a density
    /// operator.
    pub fn from_json(text: &str) -> Result<Self, ProtocolError> {
        let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(text)?;
        let n = raw.len();
        if n == 0 || raw.iter().any(|row| row.len() != n) {
            return Err(ProtocolError::Linalg(LinalgError::WrongShape {
                expected_rows: n,
                expected_cols: n,
                rows: n,
                cols: raw.first().map_or(0, |r| r.len()),
            }));
        }
        let entries: Vec<Cplx> = raw
            .iter()
            .flatten()
            .map(|&[re, im]| Cplx::new(re, im))
            .collect();
        DensityOp::new(CMat::from_rows(n, n, &entries))
    }

    pub fn matrix(&self) -> &CMat {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    /// tr[Mρ], the pass probability of test M on this state.
    pub fn expect_test(&self, m: &CMat) -> f64 {
        let n = self.dim();
        let mut acc = Cplx::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += m[(i, j)] * self.rho[(j, i)];
            }
        }
        acc.re
    }
}

/// What kind of state the source emits each round.
#[derive(Debug, Clone, Serialize)]
pub enum SourceKind {
    /// A fixed state inside the target subspace.
    Ideal,
    /// σ = (1 − ε)|GHZ⟩⟨GHZ| + ε|v⟩⟨v| with |v⟩ the strategy's most
    /// deceptive complement state; passes each round with probability
    /// exactly 1 − νε.
    WorstCase { nu: f64, eps: f64 },
    /// ρ = (1 − p)|ψ⟩⟨ψ| + p·1/d for an in-subspace |ψ⟩.
    Depolarized { p: f64 },
    /// An arbitrary supplied density operator.
    Custom,
}

/// An i.i.d. state source: the same density operator every round.
#[derive(Debug, Clone)]
pub struct StateSource {
    kind: SourceKind,
    rho: DensityOp,
}

fn require_in_subspace(psi: &Ket) -> Result<(), ProtocolError> {
    if psi.dim() != 8 {
        return Err(ProtocolError::WrongStateDimension(psi.dim()));
    }
    let overlap = projector3().expectation(psi);
    if (overlap - 1.0).abs() > 1e-10 {
        return Err(ProtocolError::OutsideSubspace(overlap));
    }
    Ok(())
}

impl StateSource {
    /// A perfect source emitting the given in-subspace state.
    pub fn ideal(psi: &Ket) -> Result<Self, ProtocolError> {
        require_in_subspace(psi)?;
        Ok(StateSource {
            kind: SourceKind::Ideal,
            rho: DensityOp::from_ket(psi),
        })
    }

    /// The adversarial source saturating the strategy's acceptance bound.
    pub fn worst_case(strategy: &Strategy3, eps: f64) -> Result<Self, ProtocolError> {
        let report = spectral_gap(strategy);
        if report.nu < 1e-12 {
            return Err(ProtocolError::Ghzw(GhzwError::ZeroGap));
        }
        let rho = worst_case_state(strategy, eps)?;
        Ok(StateSource {
            kind: SourceKind::WorstCase { nu: report.nu, eps },
            rho,
        })
    }

    /// An in-subspace state mixed with white noise of strength p.
    pub fn depolarized(psi: &Ket, p: f64) -> Result<Self, ProtocolError> {
        require_in_subspace(psi)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(ProtocolError::Ghzw(GhzwError::Domain {
                name: "p_depol",
                lo: 0.0,
                hi: 1.0,
                value: p,
            }));
        }
        let d = psi.dim();
        let rho = CMat::projector(psi)
            .scale(1.0 - p)
            .add(&CMat::identity(d).scale(p / d as f64));
        Ok(StateSource {
            kind: SourceKind::Depolarized { p },
            rho: DensityOp::new(rho)?,
        })
    }

    /// Any density operator supplied directly.
    pub fn custom(rho: DensityOp) -> Self {
        StateSource {
            kind: SourceKind::Custom,
            rho,
        }
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    pub fn density(&self) -> &DensityOp {
        &self.rho
    }
}

/// Builds the state an adversary would send: the ideal state with an ε
/// admixture of the complement state most likely to pass the strategy.
pub fn worst_case_state(strategy: &Strategy3, eps: f64) -> Result<DensityOp, ProtocolError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ProtocolError::Ghzw(GhzwError::Domain {
            name: "eps",
            lo: 0.0,
            hi: 1.0,
            value: eps,
        }));
    }
    let report = spectral_gap(strategy);
    let ghz = crate::ghzw::ghz_state();
    let sigma = CMat::projector(&ghz)
        .scale(1.0 - eps)
        .add(&CMat::projector(&report.top_vector).scale(eps));
    let rho = DensityOp::new(sigma)?;
    // Consistency of the construction: the admixture sits entirely outside
    // the subspace and the per-round pass probability is exactly 1 - nu*eps.
    let in_subspace = {
        let pi = projector3();
        let mut acc = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                acc += (pi[(i, j)] * rho.matrix()[(j, i)]).re;
            }
        }
        acc
    };
    assert!(
        (in_subspace - (1.0 - eps)).abs() < 1e-10,
        "admixture must be orthogonal to the subspace"
    );
    let pass = rho.expect_test(&strategy.omega());
    assert!(
        (pass - (1.0 - report.nu * eps)).abs() < 1e-10,
        "worst case must pass with probability 1 - nu*eps"
    );
    Ok(rho)
}

/// Counter-based random generator: every value is a pure function of
/// (seed, trial, round, slot), with a splitmix-style mixer applied per
/// coordinate.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    pub seed: u64,
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed }
    }

    /// Uniform draw in [0, 1) for the given coordinates.
    pub fn uniform(&self, trial: u64, round: u64, slot: u64) -> f64 {
        let mut h = self.seed ^ 0x9e3779b97f4a7c15;
        for v in [trial, round, slot] {
            h = mix(h.wrapping_add(v).wrapping_add(0x9e3779b97f4a7c15));
        }
        (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// One round over an explicit weighted test list: u1 selects the test from
/// the cumulative weights, u2 decides acceptance against tr[Mρ].
pub fn run_round_mixture(
    items: &[(f64, &CMat)],
    rho: &DensityOp,
    u1: f64,
    u2: f64,
) -> Result<bool, ProtocolError> {
    let mut chosen: Option<&CMat> = None;
    let mut cum = 0.0;
    for &(w, m) in items {
        if w <= 0.0 {
            continue;
        }
        cum += w;
        chosen = Some(m);
        if u1 <= cum {
            break;
        }
    }
    let m = chosen.ok_or(ProtocolError::EmptyConfig)?;
    if m.rows() != rho.dim() {
        return Err(ProtocolError::DimensionMismatch {
            op_dim: m.rows(),
            rho_dim: rho.dim(),
        });
    }
    let mut p = rho.expect_test(m);
    if !(-1e-9..=1.0 + 1e-9).contains(&p) {
        return Err(ProtocolError::ProbabilityOutOfRange(p));
    }
    p = p.clamp(0.0, 1.0);
    // Snap away float dust so ideal states always pass and orthogonal ones
    // always fail regardless of the random draw.
    if p > 1.0 - 1e-12 {
        p = 1.0;
    } else if p < 1e-12 {
        p = 0.0;
    }
    Ok(u2 < p)
}

/// One round of the strategy on the given state.
pub fn run_round(
    strategy: &Strategy3,
    rho: &DensityOp,
    u1: f64,
    u2: f64,
) -> Result<bool, ProtocolError> {
    let items: Vec<(f64, &CMat)> = strategy
        .items()
        .iter()
        .map(|(w, t)| (*w, t.matrix()))
        .collect();
    run_round_mixture(&items, rho, u1, u2)
}

/// Full simulation setup: strategy, source, and protocol size.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub strategy: Strategy3,
    pub source: StateSource,
    pub rounds: u64,
    pub trials: u64,
    pub seed: u64,
}

/// Whether one trial (a run of `rounds` consecutive tests) accepts.
/// Outcomes depend only on (seed, trial), never on evaluation order.
pub fn trial_outcome(config: &SimConfig, trial: u64) -> Result<bool, ProtocolError> {
    let rng = CounterRng::new(config.seed);
    let items: Vec<(f64, &CMat)> = config
        .strategy
        .items()
        .iter()
        .map(|(w, t)| (*w, t.matrix()))
        .collect();
    let rho = config.source.density();
    for round in 0..config.rounds {
        let u1 = rng.uniform(trial, round, 0);
        let u2 = rng.uniform(trial, round, 1);
        if !run_round_mixture(&items, rho, u1, u2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Simulation outcome with the theoretical bound (for worst-case sources)
/// and a Wilson confidence interval on the acceptance rate.
#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub accept_count: u64,
    pub trials: u64,
    pub accept_rate: f64,
    pub bound: Option<f64>,
    pub wilson_ci: (f64, f64),
}

/// (1 − νε)^N, the acceptance probability of the worst-case source.
pub fn acceptance_bound(nu: f64, eps: f64, rounds: u64) -> f64 {
    if rounds == 0 {
        return 1.0;
    }
    let p = (nu * eps).clamp(0.0, 1.0);
    (rounds as f64 * (-p).ln_1p()).exp()
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Runs all trials and aggregates acceptance statistics.
pub fn run_protocol(config: &SimConfig) -> Result<SimReport, ProtocolError> {
    if config.rounds == 0 || config.trials == 0 {
        return Err(ProtocolError::EmptyConfig);
    }
    let mut accept_count = 0u64;
    for trial in 0..config.trials {
        if trial_outcome(config, trial)? {
            accept_count += 1;
        }
    }
    let bound = match config.source.kind() {
        SourceKind::WorstCase { nu, eps } => Some(acceptance_bound(*nu, *eps, config.rounds)),
        _ => None,
    };
    Ok(SimReport {
        accept_count,
        trials: config.trials,
        accept_rate: accept_count as f64 / config.trials as f64,
        bound,
        wilson_ci: wilson_interval(accept_count, config.trials, 1.96),
    })
}
