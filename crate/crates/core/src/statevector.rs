//! Dense statevector simulator with the gate set and unitaries needed by the
//! decoder circuit.
//!
//! Basis index `i` has qubit `q` in bit position `num_qubits − 1 − q`, so the
//! integer encoding of a [`BitVector`] is its basis index.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{check_len, BitVector};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::hamiltonian::{Axis, PauliHamiltonian};

/// Largest register the simulator allocates.
pub const MAX_QUBITS: usize = 24;
/// Largest state written by [`Statevector::dump`].
pub const MAX_DUMP_ENTRIES: usize = 1 << 14;

/// How the received-vector register is simulated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircuitMode {
    /// The received register is a fixed basis state, so each `Z^x Z^r`
    /// factor is applied as a known phase on the `n` codeword qubits.
    #[default]
    FoldedAncilla,
    /// Literal `2n`-qubit circuit with `CX · Rz(−γ) · CX` per bit pair.
    FullRegister,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::TooLarge(format!(
                "{num_qubits} qubits outside 1..={MAX_QUBITS}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    pub fn basis(state: &BitVector) -> Result<Self> {
        let mut sv = Self::zero(state.len())?;
        sv.amps[0] = Complex64::new(0.0, 0.0);
        sv.amps[state.as_u64() as usize] = Complex64::new(1.0, 0.0);
        Ok(sv)
    }

    /// Wraps raw amplitudes, normalizing them.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() || amps.len() < 2 {
            return Err(Error::Config(format!(
                "{} amplitudes is not 2^n",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooLarge(format!("{num_qubits} qubits")));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Config("zero vector".into()));
        }
        Ok(Self {
            num_qubits,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, state: &BitVector) -> Complex64 {
        self.amps[state.as_u64() as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probabilities of the leading `keep` qubits, summed over the rest.
    pub fn marginal_probabilities(&self, keep: usize) -> Vec<f64> {
        assert!(keep >= 1 && keep <= self.num_qubits);
        let shift = self.num_qubits - keep;
        let mut p = vec![0.0; 1 << keep];
        for (i, a) in self.amps.iter().enumerate() {
            p[i >> shift] += a.norm_sqr();
        }
        p
    }

    /// If the trailing `num_qubits − keep` qubits are in a single basis state
    /// (to within `tol` of probability), returns the leading register's state
    /// and that basis value.
    pub fn split_classical_tail(&self, keep: usize, tol: f64) -> Option<(Statevector, u64)> {
        let tail = self.num_qubits - keep;
        if tail == 0 {
            return Some((self.clone(), 0));
        }
        let mut tail_mass = vec![0.0; 1 << tail];
        for (i, a) in self.amps.iter().enumerate() {
            tail_mass[i & ((1 << tail) - 1)] += a.norm_sqr();
        }
        let (value, mass) = tail_mass
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(v, &m)| (v, m))?;
        if 1.0 - mass > tol {
            return None;
        }
        let amps = (0..1usize << keep)
            .map(|h| self.amps[(h << tail) | value])
            .collect();
        Some((Statevector::from_amplitudes(amps).ok()?, value as u64))
    }

    #[inline]
    fn bit(&self, qubit: usize) -> usize {
        debug_assert!(qubit < self.num_qubits);
        1 << (self.num_qubits - 1 - qubit)
    }

    pub fn h(&mut self, qubit: usize) {
        let m = self.bit(qubit);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let (a, b) = (self.amps[i], self.amps[i | m]);
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i | m] = (a - b) * FRAC_1_SQRT_2;
            }
        }
    }

    pub fn x(&mut self, qubit: usize) {
        let m = self.bit(qubit);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
    }

    pub fn cx(&mut self, control: usize, target: usize) {
        assert_ne!(control, target);
        let (c, t) = (self.bit(control), self.bit(target));
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    /// `Rz(θ) = diag(e^{−iθ/2}, e^{iθ/2})`.
    pub fn rz(&mut self, qubit: usize, theta: f64) {
        let m = self.bit(qubit);
        let (p0, p1) = (
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::from_polar(1.0, theta / 2.0),
        );
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= if i & m == 0 { p0 } else { p1 };
        }
    }

    /// `e^{−iθ P}` for the X-string `P` with basis-index mask `mask`, by pairing
    /// each index with its flipped partner.
    pub fn rotate_x_string(&mut self, mask: u64, theta: f64) {
        if mask == 0 {
            self.global_phase(-theta);
            return;
        }
        let mask = mask as usize;
        let top = 1 << (usize::BITS - 1 - mask.leading_zeros());
        let (c, s) = (theta.cos(), theta.sin());
        let minus_i_s = Complex64::new(0.0, -s);
        for i in 0..self.amps.len() {
            if i & top == 0 {
                let j = i ^ mask;
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[i] = a * c + b * minus_i_s;
                self.amps[j] = b * c + a * minus_i_s;
            }
        }
    }

    pub fn global_phase(&mut self, phi: f64) {
        let p = Complex64::from_polar(1.0, phi);
        self.amps.iter_mut().for_each(|a| *a *= p);
    }

    /// Multiplies each amplitude by `phase(index)`.
    pub fn apply_diagonal(&mut self, phase: impl Fn(usize) -> Complex64) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= phase(i);
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Equality up to a global phase, `1 − |⟨a|b⟩| < tol`.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.num_qubits == other.num_qubits && 1.0 - self.inner(other).norm() < tol
    }

    /// `shots` multinomial samples of the measured basis state.
    pub fn measure_counts(&self, shots: usize, seed: u64) -> Result<BTreeMap<BitVector, usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.measure_counts_with(shots, &mut rng)
    }

    pub fn measure_counts_with(
        &self,
        shots: usize,
        rng: &mut impl rand::Rng,
    ) -> Result<BTreeMap<BitVector, usize>> {
        if shots == 0 {
            return Err(Error::Params("shots must be ≥ 1".into()));
        }
        let dist = WeightedIndex::new(self.probabilities())
            .map_err(|e| Error::Params(format!("cannot sample state: {e}")))?;
        let mut tally = vec![0usize; self.amps.len()];
        for _ in 0..shots {
            tally[dist.sample(rng)] += 1;
        }
        tally
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(i, c)| Ok((BitVector::from_u64(self.num_qubits, i as u64)?, c)))
            .collect()
    }

    /// `(index, real, imag)` triples, for states of at most 2^14 entries.
    pub fn dump(&self) -> Result<Vec<AmplitudeEntry>> {
        if self.amps.len() > MAX_DUMP_ENTRIES {
            return Err(Error::TooLarge(format!(
                "{} amplitudes exceed the dump limit of {MAX_DUMP_ENTRIES}",
                self.amps.len()
            )));
        }
        Ok(self
            .amps
            .iter()
            .enumerate()
            .map(|(index, a)| AmplitudeEntry {
                index,
                real: a.re,
                imag: a.im,
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeEntry {
    pub index: usize,
    pub real: f64,
    pub imag: f64,
}

/// Uniform superposition over the row space of an RREF generator, prepared
/// on the first `generator.cols()` qubits of a `num_qubits` register:
/// Hadamard on each pivot qubit, then CX from the pivot to every other 1 of
/// its row.
pub fn prepare_from_generator(generator: &Gf2Matrix, num_qubits: usize) -> Result<Statevector> {
    let pivots = generator
        .rref_pivots()
        .ok_or_else(|| Error::StatePrep("generator is not in reduced row-echelon form".into()))?;
    if generator.cols() > num_qubits {
        return Err(Error::StatePrep(format!(
            "{} code bits do not fit {num_qubits} qubits",
            generator.cols()
        )));
    }
    let mut sv = Statevector::zero(num_qubits)?;
    for &p in &pivots {
        sv.h(p);
    }
    for (row, &p) in pivots.iter().enumerate() {
        for c in (0..generator.cols()).filter(|&c| c != p && generator.get(row, c) == 1) {
            sv.cx(p, c);
        }
    }
    Ok(sv)
}

/// `|ψ_in⟩ = 2^{−k/2} Σ_{c∈𝒞} |c⟩` on `n` qubits.
pub fn prepare_uniform_codespace(code: &Code) -> Result<Statevector> {
    prepare_from_generator(code.generator(), code.n())
}

/// `U_f(γ) = Π_i e^{i(γ/2) Z^x_i Z^r_i}` (identity term dropped).
///
/// In folded mode `sv` holds the `n` codeword qubits. In full mode it holds
/// `2n` qubits with the received register already prepared.
pub fn apply_cost_unitary(
    sv: &mut Statevector,
    gamma: f64,
    r: &BitVector,
    mode: CircuitMode,
) -> Result<()> {
    let n = r.len();
    match mode {
        CircuitMode::FoldedAncilla => {
            check_len(n, sv.num_qubits)?;
            // Π_i e^{i(γ/2)(−1)^{x_i⊕r_i}} = e^{i(γ/2)(n − 2·d(x, r))}
            let table: Vec<Complex64> = (0..=n)
                .map(|d| Complex64::from_polar(1.0, gamma / 2.0 * (n as f64 - 2.0 * d as f64)))
                .collect();
            let r = r.as_u64() as usize;
            sv.apply_diagonal(|i| table[(i ^ r).count_ones() as usize]);
        }
        CircuitMode::FullRegister => {
            check_len(2 * n, sv.num_qubits)?;
            for i in 0..n {
                sv.cx(i, n + i);
                sv.rz(n + i, -gamma);
                sv.cx(i, n + i);
            }
        }
    }
    Ok(())
}

/// Mixer evaluation strategy; both are exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MixerMethod {
    /// Rotate each `(i, i ⊕ mask)` amplitude pair directly.
    #[default]
    DirectPairing,
    /// Hadamards, CX parity chain, `Rz(2β)`, then uncompute.
    GateLevel,
}

/// `U_m(β) = Π_terms e^{−iβ·c·P}` for an all-X mixer, terms applied in
/// stored order (they commute).
pub fn apply_mixer_unitary(
    sv: &mut Statevector,
    beta: f64,
    mixer: &PauliHamiltonian,
) -> Result<()> {
    apply_mixer_unitary_with(sv, beta, mixer, MixerMethod::DirectPairing)
}

pub fn apply_mixer_unitary_with(
    sv: &mut Statevector,
    beta: f64,
    mixer: &PauliHamiltonian,
    method: MixerMethod,
) -> Result<()> {
    if mixer.terms().iter().any(|(_, s)| !s.is_all_x()) {
        return Err(Error::Config("mixer must contain only X strings".into()));
    }
    if let Some(q) = mixer
        .terms()
        .iter()
        .flat_map(|(_, s)| s.qubits())
        .find(|&q| q >= sv.num_qubits)
    {
        return Err(Error::Config(format!(
            "mixer acts on qubit {q} outside the state"
        )));
    }
    for (coeff, string) in mixer.terms() {
        let theta = beta * coeff;
        match method {
            MixerMethod::DirectPairing => {
                sv.rotate_x_string(string.mask(Axis::X, sv.num_qubits), theta)
            }
            MixerMethod::GateLevel => {
                let qubits: Vec<usize> = string.qubits().collect();
                let Some(&last) = qubits.last() else {
                    sv.global_phase(-theta);
                    continue;
                };
                qubits.iter().for_each(|&q| sv.h(q));
                for w in qubits.windows(2) {
                    sv.cx(w[0], w[1]);
                }
                sv.rz(last, 2.0 * theta);
                for w in qubits.windows(2).rev() {
                    sv.cx(w[0], w[1]);
                }
                qubits.iter().for_each(|&q| sv.h(q));
            }
        }
    }
    Ok(())
}
