//! The parameterized decoder circuit, its cost expectation, and the
//! parameter training strategies.
//!
//! One layer applies the mixer `U_m(β)` and then the cost unitary `U_f(γ)`
//! to the uniform codespace state. Uniform parameter optimization (UPO)
//! shares a single `(β, γ)` across all layers, so each random start is a
//! two-dimensional search regardless of depth.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{check_len, BitVector};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::hamiltonian::{build_mixer_hamiltonian, PauliHamiltonian};
use crate::optim::{nelder_mead, NelderMeadOptions};
use crate::statevector::{
    apply_cost_unitary, apply_mixer_unitary, prepare_from_generator, CircuitMode, Statevector,
};
use crate::trellis::{decode, DecodeResult};

/// Per-layer angles in radians. Layer `ℓ` applies `β_ℓ` then `γ_ℓ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QaoaParams {
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub uniform: bool,
}

impl QaoaParams {
    /// `β₁ = … = β_p = beta` and `γ₁ = … = γ_p = gamma`.
    pub fn uniform(p: usize, beta: f64, gamma: f64) -> Self {
        Self {
            betas: vec![beta; p],
            gammas: vec![gamma; p],
            uniform: true,
        }
    }

    pub fn layered(betas: Vec<f64>, gammas: Vec<f64>) -> Result<Self> {
        if betas.len() != gammas.len() {
            return Err(Error::Params(format!(
                "{} betas but {} gammas",
                betas.len(),
                gammas.len()
            )));
        }
        Ok(Self {
            betas,
            gammas,
            uniform: false,
        })
    }

    pub fn p(&self) -> usize {
        self.betas.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.betas.len() != self.gammas.len() {
            return Err(Error::Params("beta and gamma counts differ".into()));
        }
        if self
            .betas
            .iter()
            .chain(&self.gammas)
            .any(|v| !v.is_finite())
        {
            return Err(Error::Params("non-finite angle".into()));
        }
        if self.uniform
            && (self.betas.windows(2).any(|w| w[0] != w[1])
                || self.gammas.windows(2).any(|w| w[0] != w[1]))
        {
            return Err(Error::Params(
                "uniform flag set on non-uniform angles".into(),
            ));
        }
        Ok(())
    }

    /// Angles reduced to `[0, 2π)`.
    pub fn canonical(&self) -> Self {
        let wrap = |v: &Vec<f64>| v.iter().map(|a| a.rem_euclid(TAU)).collect();
        Self {
            betas: wrap(&self.betas),
            gammas: wrap(&self.gammas),
            uniform: self.uniform,
        }
    }
}

/// A decoding instance: the code, the received vector and everything the
/// circuit needs, precomputed once.
#[derive(Clone, Debug)]
pub struct QaoaProblem {
    code: Code,
    received: BitVector,
    mode: CircuitMode,
    mixer: PauliHamiltonian,
    initial: Statevector,
    oracle: DecodeResult,
}

impl QaoaProblem {
    pub fn new(code: &Code, received: &BitVector, mode: CircuitMode) -> Result<Self> {
        check_len(code.n(), received.len())?;
        let mixer = build_mixer_hamiltonian(code)?;
        let initial = match mode {
            CircuitMode::FoldedAncilla => prepare_from_generator(code.generator(), code.n())?,
            CircuitMode::FullRegister => {
                let mut sv = prepare_from_generator(code.generator(), 2 * code.n())?;
                for i in received.support() {
                    sv.x(code.n() + i);
                }
                sv
            }
        };
        let oracle = decode(code, received)?;
        Ok(Self {
            code: code.clone(),
            received: *received,
            mode,
            mixer,
            initial,
            oracle,
        })
    }

    pub fn code(&self) -> &Code {
        &self.code
    }

    pub fn received(&self) -> &BitVector {
        &self.received
    }

    pub fn mixer(&self) -> &PauliHamiltonian {
        &self.mixer
    }

    pub fn initial_state(&self) -> &Statevector {
        &self.initial
    }

    /// Classical Viterbi result for this instance.
    pub fn oracle(&self) -> &DecodeResult {
        &self.oracle
    }

    /// Smallest achievable cost, the minimum path metric.
    pub fn f_min(&self) -> u32 {
        self.oracle.best_metric
    }

    /// `α = ⟨f⟩ / f_min`; `None` when the received vector is a codeword.
    pub fn approximation_ratio(&self, expectation: f64) -> Option<f64> {
        (self.f_min() > 0).then(|| expectation / self.f_min() as f64)
    }

    /// Output state of the `p`-layer circuit.
    pub fn state(&self, params: &QaoaParams) -> Result<Statevector> {
        params.validate()?;
        let mut sv = self.initial.clone();
        for (&beta, &gamma) in params.betas.iter().zip(&params.gammas) {
            apply_mixer_unitary(&mut sv, beta, &self.mixer)?;
            apply_cost_unitary(&mut sv, gamma, &self.received, self.mode)?;
        }
        Ok(sv)
    }

    pub fn expectation(&self, params: &QaoaParams) -> Result<f64> {
        expectation_exact(&self.state(params)?, &self.received)
    }

    fn estimate(
        &self,
        params: &QaoaParams,
        estimator: Estimator,
        rng: &mut ChaCha8Rng,
    ) -> Result<f64> {
        match estimator {
            Estimator::Exact => self.expectation(params),
            Estimator::Sampled { shots } => {
                expectation_sampled(&self.state(params)?, &self.received, shots, rng.next_u64())
            }
        }
    }
}

/// Output state of the circuit for `code`, `r` and `params`.
pub fn run_pqc(
    code: &Code,
    r: &BitVector,
    params: &QaoaParams,
    mode: CircuitMode,
) -> Result<Statevector> {
    QaoaProblem::new(code, r, mode)?.state(params)
}

/// Probabilities of the codeword register (the leading `n` qubits).
pub fn codeword_probabilities(sv: &Statevector, n: usize) -> Result<Vec<f64>> {
    if sv.num_qubits() != n && sv.num_qubits() != 2 * n {
        return Err(Error::Length {
            expected: n,
            found: sv.num_qubits(),
        });
    }
    Ok(sv.marginal_probabilities(n))
}

/// `⟨H_f⟩ = Σ_x p(x)·d(x, r)`.
pub fn expectation_exact(sv: &Statevector, r: &BitVector) -> Result<f64> {
    let probs = codeword_probabilities(sv, r.len())?;
    let r = r.as_u64() as usize;
    Ok(probs
        .iter()
        .enumerate()
        .map(|(x, p)| p * (x ^ r).count_ones() as f64)
        .sum())
}

/// Shot-based estimate `Σ (m_x / shots)·d(x, r)` with a seeded sampler.
pub fn expectation_sampled(
    sv: &Statevector,
    r: &BitVector,
    shots: usize,
    seed: u64,
) -> Result<f64> {
    let counts = sample_codeword_counts(sv, r.len(), shots, seed)?;
    Ok(counts
        .iter()
        .map(|(x, &m)| m as f64 * (x.as_u64() ^ r.as_u64()).count_ones() as f64)
        .sum::<f64>()
        / shots as f64)
}

/// Measures the codeword register `shots` times.
pub fn sample_codeword_counts(
    sv: &Statevector,
    n: usize,
    shots: usize,
    seed: u64,
) -> Result<BTreeMap<BitVector, usize>> {
    if sv.num_qubits() == n {
        return sv.measure_counts(shots, seed);
    }
    let marginal = Statevector::from_amplitudes(
        codeword_probabilities(sv, n)?
            .into_iter()
            .map(|p| num_complex::Complex64::new(p.sqrt(), 0.0))
            .collect(),
    )?;
    marginal.measure_counts(shots, seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Strategy {
    /// Uniform parameters across layers, 2-D search.
    Upo,
    /// Layer-by-layer, earlier layers frozen.
    Fpo,
    /// Full 2p-dimensional search from random starts.
    Random,
}

/// How the optimizer evaluates the cost during training.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Estimator {
    #[default]
    Exact,
    Sampled {
        shots: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrainingConfig {
    pub p: usize,
    pub q: usize,
    pub shots: usize,
    pub seed: u64,
    pub estimator: Estimator,
    pub mode: CircuitMode,
    pub optimizer: NelderMeadOptions,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            p: 3,
            q: 5,
            shots: 2000,
            seed: 0,
            estimator: Estimator::Exact,
            mode: CircuitMode::FoldedAncilla,
            optimizer: NelderMeadOptions::default(),
        }
    }
}

impl TrainingConfig {
    fn validate(&self) -> Result<()> {
        if self.p == 0 || self.q == 0 || self.shots == 0 {
            return Err(Error::Params("p, q and shots must all be ≥ 1".into()));
        }
        if let Estimator::Sampled { shots: 0 } = self.estimator {
            return Err(Error::Params("sampled estimator needs ≥ 1 shot".into()));
        }
        Ok(())
    }
}

/// One random start and where the optimizer took it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub draw: usize,
    /// FPO stage (layer count); equals `p` for the other strategies.
    pub stage: usize,
    pub initial: QaoaParams,
    pub optimized: QaoaParams,
    pub expectation: f64,
    pub approximation_ratio: Option<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrainingResult {
    pub strategy: Strategy,
    pub p: usize,
    pub q: usize,
    pub seed: u64,
    pub best_params: QaoaParams,
    pub best_expectation: f64,
    pub approximation_ratio: Option<f64>,
    pub f_min: u32,
    pub optimal_codewords: Vec<BitVector>,
    /// Final-stage draws; `best_expectation` is their minimum.
    pub samples: Vec<SampleRecord>,
    /// Best cost after each draw (UPO, RANDOM) or each stage (FPO).
    pub cost_trace: Vec<f64>,
    /// Exact output distribution of the codeword register.
    pub distribution: BTreeMap<BitVector, f64>,
    pub shots: usize,
    pub counts: BTreeMap<BitVector, usize>,
    /// Shots landing on a minimum-metric codeword.
    pub solution_hits: usize,
}

impl TrainingResult {
    /// States whose probability is within `tol` of the maximum.
    pub fn argmax_states(&self, tol: f64) -> Vec<BitVector> {
        let max = self.distribution.values().copied().fold(0.0, f64::max);
        self.distribution
            .iter()
            .filter(|(_, &p)| p >= max - tol)
            .map(|(s, _)| *s)
            .collect()
    }

    /// The `k` most probable states, most probable first (ties by state order).
    pub fn top_states(&self, k: usize) -> Vec<(BitVector, f64)> {
        let mut v: Vec<(BitVector, f64)> =
            self.distribution.iter().map(|(s, p)| (*s, *p)).collect();
        v.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        v.truncate(k);
        v
    }

    /// Total probability on minimum-metric codewords.
    pub fn solution_probability(&self) -> f64 {
        self.optimal_codewords
            .iter()
            .filter_map(|c| self.distribution.get(c))
            .sum()
    }

    /// Whether every most-probable state is a minimum-metric codeword.
    pub fn argmax_is_optimal(&self, tol: f64) -> bool {
        self.argmax_states(tol)
            .iter()
            .all(|s| self.optimal_codewords.contains(s))
    }
}

/// Independent generator for draw `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

const MEASUREMENT_STREAM: u64 = u64::MAX;

fn random_angles(rng: &mut impl Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(0.0..TAU)).collect()
}

/// Optimizes one random start. `build` maps the optimizer's coordinates to
/// circuit parameters.
fn optimize_draw(
    problem: &QaoaProblem,
    config: &TrainingConfig,
    draw: usize,
    stage: usize,
    mut rng: ChaCha8Rng,
    dim: usize,
    build: impl Fn(&[f64]) -> QaoaParams,
) -> Result<SampleRecord> {
    let x0 = random_angles(&mut rng, dim);
    let mut failure = None;
    let min = nelder_mead(
        |x| match problem.estimate(&build(x), config.estimator, &mut rng) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        &x0,
        &config.optimizer,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(SampleRecord {
        draw,
        stage,
        initial: build(&x0).canonical(),
        optimized: build(&min.x).canonical(),
        expectation: min.value,
        approximation_ratio: problem.approximation_ratio(min.value),
        iterations: min.iterations,
        evaluations: min.evaluations,
        converged: min.converged,
    })
}

/// Runs `q` draws in parallel; results stay in draw order.
fn run_draws(
    problem: &QaoaProblem,
    config: &TrainingConfig,
    stage: usize,
    stream_base: u64,
    dim: usize,
    build: impl Fn(&[f64]) -> QaoaParams + Sync,
) -> Result<Vec<SampleRecord>> {
    (0..config.q)
        .into_par_iter()
        .map(|draw| {
            let rng = stream_rng(config.seed, stream_base | draw as u64);
            optimize_draw(problem, config, draw, stage, rng, dim, &build)
        })
        .collect()
}

fn best_record(records: &[SampleRecord]) -> &SampleRecord {
    // Minimum α is minimum expectation since f_min is fixed; first wins ties.
    records
        .iter()
        .reduce(|a, b| if b.expectation < a.expectation { b } else { a })
        .expect("q ≥ 1")
}

fn running_min(records: &[SampleRecord]) -> Vec<f64> {
    records
        .iter()
        .scan(f64::INFINITY, |m, r| {
            *m = m.min(r.expectation);
            Some(*m)
        })
        .collect()
}

fn finish(
    problem: &QaoaProblem,
    config: &TrainingConfig,
    strategy: Strategy,
    samples: Vec<SampleRecord>,
    cost_trace: Vec<f64>,
) -> Result<TrainingResult> {
    let best = best_record(&samples).clone();
    let n = problem.code.n();
    let sv = problem.state(&best.optimized)?;
    let probs = codeword_probabilities(&sv, n)?;
    let distribution = probs
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| {
            let w = BitVector::from_u64(n, i as u64).expect("index fits n bits");
            (problem.code.contains(&w) || p > 1e-12).then_some((w, p))
        })
        .collect();
    let counts = sample_codeword_counts(
        &sv,
        n,
        config.shots,
        stream_rng(config.seed, MEASUREMENT_STREAM).next_u64(),
    )?;
    let optimal = problem.oracle.best_codewords.clone();
    let solution_hits = optimal.iter().filter_map(|c| counts.get(c)).sum();
    Ok(TrainingResult {
        strategy,
        p: config.p,
        q: config.q,
        seed: config.seed,
        best_params: best.optimized.clone(),
        best_expectation: best.expectation,
        approximation_ratio: best.approximation_ratio,
        f_min: problem.f_min(),
        optimal_codewords: optimal,
        samples,
        cost_trace,
        distribution,
        shots: config.shots,
        counts,
        solution_hits,
    })
}

/// Uniform parameter optimization: `q` random `(β_o, γ_o)` starts, each
/// optimized with every layer sharing the same pair; the start with the
/// smallest approximation ratio wins.
pub fn train_upo(problem: &QaoaProblem, config: &TrainingConfig) -> Result<TrainingResult> {
    config.validate()?;
    let p = config.p;
    let samples = run_draws(problem, config, p, 0, 2, |x| {
        QaoaParams::uniform(p, x[0], x[1])
    })?;
    let trace = running_min(&samples);
    finish(problem, config, Strategy::Upo, samples, trace)
}

/// Fixed-parameter optimization: grow the circuit one layer at a time,
/// optimizing only the new layer's `(β_ℓ, γ_ℓ)` over `q` starts and freezing
/// the best before adding the next.
pub fn train_fpo(problem: &QaoaProblem, config: &TrainingConfig) -> Result<TrainingResult> {
    config.validate()?;
    let mut fixed_betas: Vec<f64> = Vec::new();
    let mut fixed_gammas: Vec<f64> = Vec::new();
    let mut trace = Vec::with_capacity(config.p);
    let mut last = Vec::new();
    for stage in 1..=config.p {
        let (fb, fg) = (fixed_betas.clone(), fixed_gammas.clone());
        let build = move |x: &[f64]| {
            let mut betas = fb.clone();
            let mut gammas = fg.clone();
            betas.push(x[0]);
            gammas.push(x[1]);
            QaoaParams {
                betas,
                gammas,
                uniform: false,
            }
        };
        let records = run_draws(problem, config, stage, ((stage - 1) as u64) << 32, 2, build)?;
        let best = best_record(&records);
        trace.push(best.expectation);
        fixed_betas.push(*best.optimized.betas.last().expect("stage layer"));
        fixed_gammas.push(*best.optimized.gammas.last().expect("stage layer"));
        last = records;
    }
    finish(problem, config, Strategy::Fpo, last, trace)
}

/// Random initialization: `q` starts over all `2p` angles.
pub fn train_random(problem: &QaoaProblem, config: &TrainingConfig) -> Result<TrainingResult> {
    config.validate()?;
    let p = config.p;
    let samples = run_draws(problem, config, p, 0, 2 * p, |x| QaoaParams {
        betas: x[..p].to_vec(),
        gammas: x[p..].to_vec(),
        uniform: false,
    })?;
    let trace = running_min(&samples);
    finish(problem, config, Strategy::Random, samples, trace)
}

pub fn train(
    problem: &QaoaProblem,
    strategy: Strategy,
    config: &TrainingConfig,
) -> Result<TrainingResult> {
    match strategy {
        Strategy::Upo => train_upo(problem, config),
        Strategy::Fpo => train_fpo(problem, config),
        Strategy::Random => train_random(problem, config),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LandscapePoint {
    pub beta: f64,
    pub gamma: f64,
    pub expectation: f64,
}

/// Exact cost over a `grid × grid` lattice of uniform `(β_o, γ_o) ∈ [0, 2π)²`,
/// `β`-major.
pub fn landscape_scan(problem: &QaoaProblem, p: usize, grid: usize) -> Result<Vec<LandscapePoint>> {
    if grid < 2 {
        return Err(Error::Params("grid must be ≥ 2".into()));
    }
    let step = TAU / grid as f64;
    (0..grid * grid)
        .into_par_iter()
        .map(|idx| {
            let (beta, gamma) = ((idx / grid) as f64 * step, (idx % grid) as f64 * step);
            Ok(LandscapePoint {
                beta,
                gamma,
                expectation: problem.expectation(&QaoaParams::uniform(p, beta, gamma))?,
            })
        })
        .collect()
}

pub fn landscape_csv(points: &[LandscapePoint]) -> String {
    let mut out = String::from("beta,gamma,expectation\n");
    for pt in points {
        out.push_str(&format!("{},{},{}\n", pt.beta, pt.gamma, pt.expectation));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{lbc_321, lbc_633};
    use crate::statevector::prepare_uniform_codespace;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn zero_layers_is_initial_state() {
        let code = lbc_633();
        let sv = run_pqc(
            &code,
            &bv("111011"),
            &QaoaParams::uniform(0, 0.0, 0.0),
            CircuitMode::default(),
        )
        .unwrap();
        assert_eq!(sv, prepare_uniform_codespace(&code).unwrap());
    }

    #[test]
    fn zero_beta_keeps_uniform_probabilities() {
        let code = lbc_633();
        let sv = run_pqc(
            &code,
            &bv("111011"),
            &QaoaParams::uniform(1, 0.0, 1.7),
            CircuitMode::default(),
        )
        .unwrap();
        for c in code.codespace() {
            assert!((sv.amplitude(c).norm_sqr() - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_expectations_of_uniform_state() {
        let u = prepare_uniform_codespace(&lbc_633()).unwrap();
        // Mean codeword weight (0+3+3+3+4+4+4+3)/8.
        assert!((expectation_exact(&u, &bv("000000")).unwrap() - 3.0).abs() < 1e-12);
        // Distances to 111011: {5,4,4,2,1,3,3,2}.
        assert!((expectation_exact(&u, &bv("111011")).unwrap() - 3.0).abs() < 1e-12);
        let x = Statevector::basis(&bv("111011")).unwrap();
        assert_eq!(expectation_exact(&x, &bv("111011")).unwrap(), 0.0);
    }

    #[test]
    fn sampled_expectation_of_basis_state_is_exact() {
        let x = Statevector::basis(&bv("011011")).unwrap();
        assert_eq!(expectation_sampled(&x, &bv("111011"), 7, 3).unwrap(), 1.0);
        let u = prepare_uniform_codespace(&lbc_633()).unwrap();
        assert_eq!(
            expectation_sampled(&u, &bv("111011"), 2000, 11).unwrap(),
            expectation_sampled(&u, &bv("111011"), 2000, 11).unwrap()
        );
    }

    #[test]
    fn full_register_mode_matches_folded() {
        let code = lbc_633();
        let r = bv("111011");
        let params = QaoaParams::layered(vec![0.3, 1.2, 2.5], vec![0.9, 4.1, 0.2]).unwrap();
        let folded = QaoaProblem::new(&code, &r, CircuitMode::FoldedAncilla).unwrap();
        let full = QaoaProblem::new(&code, &r, CircuitMode::FullRegister).unwrap();
        let a = folded.expectation(&params).unwrap();
        let b = full.expectation(&params).unwrap();
        assert!((a - b).abs() < 1e-10);
        let sv = full.state(&params).unwrap();
        assert_eq!(sv.num_qubits(), 12);
        let (reduced, ancilla) = sv.split_classical_tail(6, 1e-12).unwrap();
        assert_eq!(ancilla, r.as_u64());
        assert!(reduced.equal_up_to_phase(&folded.state(&params).unwrap(), 1e-10));
    }

    #[test]
    fn invalid_inputs() {
        assert!(QaoaProblem::new(&lbc_633(), &bv("111"), CircuitMode::default()).is_err());
        assert!(QaoaParams::layered(vec![1.0], vec![]).is_err());
        let bad = QaoaParams {
            betas: vec![1.0, 2.0],
            gammas: vec![0.0, 0.0],
            uniform: true,
        };
        assert!(bad.validate().is_err());
        let problem = QaoaProblem::new(&lbc_633(), &bv("111011"), CircuitMode::default()).unwrap();
        let cfg = TrainingConfig {
            q: 0,
            ..Default::default()
        };
        assert!(train_upo(&problem, &cfg).is_err());
        assert!(landscape_scan(&problem, 1, 1).is_err());
    }

    #[test]
    fn canonical_wraps_into_period() {
        let p = QaoaParams::uniform(2, -0.5, 7.0).canonical();
        assert!((p.betas[0] - (TAU - 0.5)).abs() < 1e-12);
        assert!((p.gammas[1] - (7.0 - TAU)).abs() < 1e-12);
    }

    #[test]
    fn upo_single_draw_is_deterministic() {
        let problem = QaoaProblem::new(&lbc_633(), &bv("111011"), CircuitMode::default()).unwrap();
        let cfg = TrainingConfig {
            q: 1,
            seed: 99,
            ..Default::default()
        };
        let a = train_upo(&problem, &cfg).unwrap();
        let b = train_upo(&problem, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples.len(), 1);
        assert!(a.best_params.uniform);
    }

    #[test]
    fn single_layer_fpo_matches_upo_search_space() {
        let problem = QaoaProblem::new(&lbc_321(), &bv("011"), CircuitMode::default()).unwrap();
        let cfg = TrainingConfig {
            p: 1,
            q: 3,
            seed: 5,
            ..Default::default()
        };
        let u = train_upo(&problem, &cfg).unwrap();
        let f = train_fpo(&problem, &cfg).unwrap();
        assert_eq!(u.best_expectation, f.best_expectation);
        assert_eq!(u.best_params.betas, f.best_params.betas);
        assert_eq!(u.best_params.gammas, f.best_params.gammas);
    }

    #[test]
    fn random_strategy_searches_all_angles() {
        let problem = QaoaProblem::new(&lbc_633(), &bv("111011"), CircuitMode::default()).unwrap();
        let cfg = TrainingConfig {
            q: 4,
            seed: 3,
            ..Default::default()
        };
        let r = train_random(&problem, &cfg).unwrap();
        assert_eq!(
            r.samples[0].initial.betas.len() + r.samples[0].initial.gammas.len(),
            6
        );
        let mean_alpha = r
            .samples
            .iter()
            .map(|s| s.approximation_ratio.unwrap())
            .sum::<f64>()
            / 4.0;
        assert!(r.approximation_ratio.unwrap() <= mean_alpha);
    }

    #[test]
    fn training_result_invariants() {
        let problem = QaoaProblem::new(&lbc_633(), &bv("111011"), CircuitMode::default()).unwrap();
        for strategy in [Strategy::Upo, Strategy::Fpo, Strategy::Random] {
            let r = train(
                &problem,
                strategy,
                &TrainingConfig {
                    seed: 17,
                    ..Default::default()
                },
            )
            .unwrap();
            let min = r
                .samples
                .iter()
                .map(|s| s.expectation)
                .fold(f64::INFINITY, f64::min);
            assert_eq!(r.best_expectation, min);
            assert!(r.approximation_ratio.unwrap() >= 1.0 - 1e-9);
            assert!((r.distribution.values().sum::<f64>() - 1.0).abs() < 1e-9);
            assert_eq!(r.counts.values().sum::<usize>(), r.shots);
            assert_eq!(r.optimal_codewords, vec![bv("011011")]);
        }
    }

    #[test]
    fn sampled_estimator_trains() {
        let problem = QaoaProblem::new(&lbc_321(), &bv("011"), CircuitMode::default()).unwrap();
        let cfg = TrainingConfig {
            q: 2,
            seed: 8,
            estimator: Estimator::Sampled { shots: 500 },
            ..Default::default()
        };
        let r = train_upo(&problem, &cfg).unwrap();
        assert_eq!(r, train_upo(&problem, &cfg).unwrap());
        assert!(r.best_expectation >= 0.0);
    }

    #[test]
    fn landscape_origin_is_uniform_state() {
        let problem = QaoaProblem::new(&lbc_633(), &bv("111011"), CircuitMode::default()).unwrap();
        let pts = landscape_scan(&problem, 3, 4).unwrap();
        assert_eq!(pts.len(), 16);
        assert_eq!((pts[0].beta, pts[0].gamma), (0.0, 0.0));
        assert!((pts[0].expectation - 3.0).abs() < 1e-12);
        assert!(pts.iter().all(|p| p.expectation >= 1.0 - 1e-9));
        let csv = landscape_csv(&pts);
        assert!(csv.starts_with("beta,gamma,expectation\n"));
        assert_eq!(csv.lines().count(), 17);
    }
}
