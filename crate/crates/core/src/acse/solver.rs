use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::chem::IntegralSet;
use crate::error::{Error, Result};
use crate::gatecost::generator_cost;
use crate::rdm::{measure_2rdm, TwoRDM};
use crate::secondq::{build_generator, hamiltonian_pauli, pair_annihilations, GeneratorCoefficients, Statistics};
use crate::tensor::folded_pairs;
use crate::tensorspace::{PauliLetters, PauliString, PauliSum};
use crate::StateVector;

/// Relative cutoff applied to generator coefficients before circuit construction.
pub const RESIDUAL_TRUNCATION: f64 = 1e-8;

const MAX_STEP_HALVINGS: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub encoding: Statistics,
    pub epsilon0: f64,
    pub line_search: bool,
    pub max_iterations: usize,
    /// Hartree; stop when successive energies differ by less.
    pub energy_tol: f64,
    /// Stop when the residual Frobenius norm falls below this.
    pub residual_tol: f64,
    /// Reserved; the exact solver is deterministic.
    pub seed: u64,
    pub direction: SearchDirection,
}

/// How successive residuals are combined into the step generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchDirection {
    /// Generator coefficients `conj(A)` from the current residual alone.
    Steepest,
    /// Polak–Ribière conjugate combination with the previous generator,
    /// restarted whenever it is not a descent direction.
    Conjugate,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            encoding: Statistics::Fermionic,
            epsilon0: 0.1,
            line_search: true,
            max_iterations: 60,
            energy_tol: 1e-9,
            residual_tol: 1e-6,
            seed: 0,
            direction: SearchDirection::Conjugate,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.max_iterations < 1 {
            return bad("max_iterations must be at least 1".into());
        }
        if !(self.energy_tol > 0.0) || !(self.residual_tol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        if !(self.epsilon0 > 0.0) || !self.epsilon0.is_finite() {
            return bad(format!("epsilon0 must be positive, got {}", self.epsilon0));
        }
        Ok(())
    }
}

/// `A^{pq}_{st} = ⟨ψ|[x†_p x†_q x_t x_s, H]|ψ⟩` for ladder operators `x` of
/// one statistics.
#[derive(Clone, Debug)]
pub struct ResidualTensor {
    pub a: GeneratorCoefficients<f64>,
    pub frobenius_norm: f64,
}

/// Exact fermionic ACSE residual from the statevector.
pub fn acse_residual(state: &StateVector, h: &PauliSum<f64>, n_electrons: usize) -> Result<ResidualTensor> {
    contracted_residual(state, h, n_electrons, Statistics::Fermionic)
}

/// Residual of the contracted equation for generators of the given statistics.
///
/// The qubit-particle residual is the energy gradient with respect to
/// qubit-particle generator coefficients, which is what the qubit-particle
/// solver descends along. With `u_pq = x_q x_p|ψ⟩` and `v_pq = x_q x_p H|ψ⟩`
/// every element is `⟨u_pq|v_st⟩ − ⟨v_pq|u_st⟩`.
pub fn contracted_residual(
    state: &StateVector,
    h: &PauliSum<f64>,
    n_electrons: usize,
    statistics: Statistics,
) -> Result<ResidualTensor> {
    let measured = state.number_expectation();
    if (measured - n_electrons as f64).abs() > 1e-8 {
        return Err(Error::WrongSector { expected: n_electrons, measured });
    }
    let r = state.num_qubits();
    let h_state = state.apply_pauli_sum(h)?;
    let u = pair_annihilations(state, statistics);
    let v = pair_annihilations(&h_state, statistics);
    let pairs = folded_pairs(r);
    let mut a = GeneratorCoefficients::zeros(r);
    for (i, &(p, q)) in pairs.iter().enumerate() {
        for (j, &(s, t)) in pairs.iter().enumerate() {
            let val = u[i].inner(&v[j])? - v[i].inner(&u[j])?;
            let t4 = &mut a.a;
            t4[(p, q, s, t)] = val;
            t4[(q, p, s, t)] = -val;
            t4[(p, q, t, s)] = -val;
            t4[(q, p, t, s)] = val;
        }
    }
    let frobenius_norm = a.frobenius_norm();
    Ok(ResidualTensor { a, frobenius_norm })
}

/// Steepest-descent generator coefficients `conj(A)` with the relative
/// truncation applied, so that `dE/dε = −‖A‖²` at `ε = 0`.
pub fn step_coefficients(residual: &ResidualTensor) -> GeneratorCoefficients<f64> {
    let conj = GeneratorCoefficients { a: residual.a.a.map(|z| z.conj()) };
    conj.truncated(RESIDUAL_TRUNCATION * conj.max_abs())
}

/// Product of Pauli rotations realizing `exp(εÂ)` to first order.
///
/// Rotations are grouped by bit-flip mask and ordered lexicographically
/// within a group. Each group is the part of `Â` connecting `|b⟩` to `|b ⊕ x⟩`
/// and conserves particle number on its own; for real coefficients its strings
/// commute, so the group is exponentiated exactly and the product never leaves
/// the N-particle sector.
#[derive(Clone, Debug)]
pub struct TrotterCircuit {
    generator: PauliSum<f64>,
    /// `(P, θ)` with `Â = Σ iθ P`, in application order.
    rotations: Vec<(PauliLetters, f64)>,
}

impl TrotterCircuit {
    pub fn new(generator: PauliSum<f64>) -> Self {
        let mut rotations: Vec<(PauliLetters, f64)> =
            generator.iter().map(|p| (p.letters, p.coefficient.im)).collect();
        rotations.sort_by(|a, b| a.0.x_mask().cmp(&b.0.x_mask()).then(a.0.cmp(&b.0)));
        TrotterCircuit { generator, rotations }
    }

    pub fn generator(&self) -> &PauliSum<f64> {
        &self.generator
    }

    pub fn rotations(&self) -> &[(PauliLetters, f64)] {
        &self.rotations
    }

    pub fn cnot_count(&self) -> usize {
        generator_cost(&self.generator)
    }

    pub fn apply(&self, state: &StateVector, epsilon: f64) -> Result<StateVector> {
        let mut out = state.clone();
        for &(letters, theta) in &self.rotations {
            let unit = PauliString::new(Complex64::new(1.0, 0.0), letters);
            out.apply_pauli_rotation(&unit, epsilon * theta)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub state: StateVector,
    pub epsilon: f64,
    pub cnots: usize,
    /// Electronic energy `⟨ψ|H|ψ⟩` of the new state.
    pub energy: f64,
    /// Quadratic fit had non-positive curvature; `epsilon0` was used.
    pub line_search_fallback: bool,
}

fn energy(state: &StateVector, h: &PauliSum<f64>) -> Result<f64> {
    Ok(state.expectation(h)?.re)
}

/// One ACSE update `|ψ⟩ ← exp(εÂ)|ψ⟩` in the configured encoding.
pub fn acse_step(
    state: &StateVector,
    residual: &ResidualTensor,
    h: &PauliSum<f64>,
    cfg: &SolverConfig,
) -> Result<StepOutcome> {
    step_along(state, &step_coefficients(residual), h, cfg)
}

/// `Re Σ conj(x)·y` over all four indices.
fn real_inner(x: &GeneratorCoefficients<f64>, y: &GeneratorCoefficients<f64>) -> f64 {
    x.a.as_slice().iter().zip(y.a.as_slice()).map(|(a, b)| (a.conj() * b).re).sum()
}

fn conjugated(r: &ResidualTensor) -> GeneratorCoefficients<f64> {
    GeneratorCoefficients { a: r.a.a.map(|z| z.conj()) }
}

/// Polak–Ribière direction from the current and previous residuals.
///
/// The slope of the energy along coefficients `D` is `−Re Σ conj(D)·conj(A)`;
/// when the conjugate direction would not descend, the steepest one is used.
fn conjugate_direction(
    residual: &ResidualTensor,
    previous: Option<(&ResidualTensor, &GeneratorCoefficients<f64>)>,
) -> GeneratorCoefficients<f64> {
    let steepest = conjugated(residual);
    let Some((prev_res, prev_dir)) = previous else { return steepest };
    let g = conjugated(prev_res);
    let denom = real_inner(&g, &g);
    if denom <= 0.0 {
        return steepest;
    }
    let beta = ((real_inner(&steepest, &steepest) - real_inner(&steepest, &g)) / denom).max(0.0);
    let dir = GeneratorCoefficients {
        a: crate::Tensor4::from_fn(steepest.num_orbitals(), |p, q, s, t| {
            steepest.a[(p, q, s, t)] + prev_dir.a[(p, q, s, t)] * beta
        }),
    };
    if real_inner(&dir, &steepest) > 0.0 {
        dir
    } else {
        steepest
    }
}

fn step_along(
    state: &StateVector,
    direction: &GeneratorCoefficients<f64>,
    h: &PauliSum<f64>,
    cfg: &SolverConfig,
) -> Result<StepOutcome> {
    let coeffs = direction.truncated(RESIDUAL_TRUNCATION * direction.max_abs());
    let generator = build_generator(&coeffs, cfg.encoding)?;
    let e0 = energy(state, h)?;
    if generator.is_empty() {
        return Ok(StepOutcome {
            state: state.clone(),
            epsilon: 0.0,
            cnots: 0,
            energy: e0,
            line_search_fallback: false,
        });
    }
    let circuit = TrotterCircuit::new(generator);
    let cnots = circuit.cnot_count();
    let trial = |eps: f64| -> Result<(f64, StateVector)> {
        let s = circuit.apply(state, eps)?;
        Ok((energy(&s, h)?, s))
    };

    if !cfg.line_search {
        let (e, s) = trial(cfg.epsilon0)?;
        return Ok(StepOutcome { state: s, epsilon: cfg.epsilon0, cnots, energy: e, line_search_fallback: false });
    }

    let mut step = cfg.epsilon0;
    for _ in 0..=MAX_STEP_HALVINGS {
        let (e1, s1) = trial(step)?;
        let (e2, s2) = trial(2.0 * step)?;
        let curvature = e0 - 2.0 * e1 + e2;
        if !(curvature > 0.0) {
            return Ok(StepOutcome { state: s1, epsilon: step, cnots, energy: e1, line_search_fallback: true });
        }
        let eps_star = step * (3.0 * e0 - 4.0 * e1 + e2) / (2.0 * curvature);
        let mut best = (e0, 0.0, None);
        for (e, eps, s) in [(e1, step, s1), (e2, 2.0 * step, s2)] {
            if e < best.0 {
                best = (e, eps, Some(s));
            }
        }
        if eps_star.is_finite() && eps_star != 0.0 {
            let (e, s) = trial(eps_star)?;
            if e < best.0 {
                best = (e, eps_star, Some(s));
            }
        }
        if let (e, eps, Some(s)) = best {
            return Ok(StepOutcome { state: s, epsilon: eps, cnots, energy: e, line_search_fallback: false });
        }
        step *= 0.5;
    }
    Ok(StepOutcome { state: state.clone(), epsilon: 0.0, cnots, energy: e0, line_search_fallback: false })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    /// 1-based.
    pub iteration: usize,
    pub epsilon: f64,
    /// Norm of the residual that drove this iteration's step.
    pub residual_norm: f64,
    /// Total energy after the step (Hartree).
    pub energy: f64,
    pub cumulative_cnots: usize,
    pub wall_time: Duration,
    pub line_search_fallback: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    ResidualTolerance,
    EnergyTolerance,
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzTrace {
    pub encoding: Statistics,
    pub records: Vec<IterationRecord>,
    pub stop_reason: StopReason,
    /// Total energy of the reference determinant.
    pub initial_energy: f64,
}

impl AnsatzTrace {
    pub fn converged(&self) -> bool {
        self.stop_reason != StopReason::MaxIterations
    }

    pub fn total_cnots(&self) -> usize {
        self.records.last().map_or(0, |r| r.cumulative_cnots)
    }
}

#[derive(Clone, Debug)]
pub struct AcseOutcome {
    pub trace: AnsatzTrace,
    pub state: StateVector,
    pub rdm: TwoRDM,
    /// Total energy of the final state.
    pub energy: f64,
}

pub fn acse_solve(ints: &IntegralSet, n_electrons: usize, cfg: &SolverConfig) -> Result<AcseOutcome> {
    acse_solve_with(ints, n_electrons, cfg, |_, _| {})
}

/// Iterates residual → step from the lowest-orbital reference determinant,
/// calling `observer` after each iteration with the new state.
pub fn acse_solve_with(
    ints: &IntegralSet,
    n_electrons: usize,
    cfg: &SolverConfig,
    mut observer: impl FnMut(&IterationRecord, &StateVector),
) -> Result<AcseOutcome> {
    cfg.validate()?;
    let r = ints.n_orb;
    if n_electrons > r {
        return Err(Error::InvalidArgument(format!("{n_electrons} electrons in {r} spin orbitals")));
    }
    let h = hamiltonian_pauli(ints)?;
    let occupied: Vec<usize> = (0..n_electrons).collect();
    let mut state = StateVector::basis(r, &occupied)?;
    let initial_energy = energy(&state, &h)? + ints.e_nuc;
    let mut last_energy = initial_energy;
    let mut cumulative = 0usize;
    let mut records = Vec::new();
    let mut stop_reason = StopReason::MaxIterations;
    let mut previous: Option<(ResidualTensor, GeneratorCoefficients<f64>)> = None;
    for iteration in 1..=cfg.max_iterations {
        let start = Instant::now();
        let residual = contracted_residual(&state, &h, n_electrons, cfg.encoding)?;
        if residual.frobenius_norm < cfg.residual_tol {
            stop_reason = StopReason::ResidualTolerance;
            break;
        }
        let direction = match cfg.direction {
            SearchDirection::Steepest => conjugated(&residual),
            SearchDirection::Conjugate => conjugate_direction(&residual, previous.as_ref().map(|(r, d)| (r, d))),
        };
        let step = step_along(&state, &direction, &h, cfg)?;
        previous = Some((residual.clone(), direction));
        cumulative += step.cnots;
        state = step.state;
        let total = step.energy + ints.e_nuc;
        let record = IterationRecord {
            iteration,
            epsilon: step.epsilon,
            residual_norm: residual.frobenius_norm,
            energy: total,
            cumulative_cnots: cumulative,
            wall_time: start.elapsed(),
            line_search_fallback: step.line_search_fallback,
        };
        observer(&record, &state);
        records.push(record);
        if (total - last_energy).abs() < cfg.energy_tol {
            stop_reason = StopReason::EnergyTolerance;
            break;
        }
        last_energy = total;
    }
    let rdm = measure_2rdm(&state, n_electrons)?;
    let energy = energy(&state, &h)? + ints.e_nuc;
    Ok(AcseOutcome {
        trace: AnsatzTrace { encoding: cfg.encoding, records, stop_reason, initial_energy },
        state,
        rdm,
        energy,
    })
}
