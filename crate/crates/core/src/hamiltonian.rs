//! Cost and mixer Hamiltonians as weighted sums of Pauli strings.
//!
//! Qubit `i < n` holds bit `i` of the candidate codeword; qubit `n + i` holds
//! bit `i` of the received vector (the ancilla register).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::{check_len, hamming_distance, BitVector};
use crate::code::Code;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Register {
    Codeword,
    Ancilla,
}

/// Tensor product of single-qubit `X`/`Z` factors, identity elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    factors: BTreeMap<usize, Axis>,
}

impl PauliString {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(factors: impl IntoIterator<Item = (usize, Axis)>) -> Self {
        Self {
            factors: factors.into_iter().collect(),
        }
    }

    pub fn xs(qubits: impl IntoIterator<Item = usize>) -> Self {
        Self::new(qubits.into_iter().map(|q| (q, Axis::X)))
    }

    pub fn zs(qubits: impl IntoIterator<Item = usize>) -> Self {
        Self::new(qubits.into_iter().map(|q| (q, Axis::Z)))
    }

    pub fn factors(&self) -> &BTreeMap<usize, Axis> {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors.keys().copied()
    }

    pub fn is_diagonal(&self) -> bool {
        self.factors.values().all(|&a| a == Axis::Z)
    }

    pub fn is_all_x(&self) -> bool {
        self.factors.values().all(|&a| a == Axis::X)
    }

    /// Bit mask of the qubits carrying `axis`, in the basis-index layout of a
    /// `num_qubits` register (qubit 0 is the most significant bit).
    pub fn mask(&self, axis: Axis, num_qubits: usize) -> u64 {
        self.factors
            .iter()
            .filter(|(_, &a)| a == axis)
            .fold(0, |m, (&q, _)| m | 1u64 << (num_qubits - 1 - q))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (i, (q, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a:?}{q}")?;
        }
        Ok(())
    }
}

/// `Σ coeff · string` with real coefficients and merged duplicates.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliHamiltonian {
    num_qubits: usize,
    codeword_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliHamiltonian {
    pub fn new(num_qubits: usize, codeword_qubits: usize) -> Self {
        Self {
            num_qubits,
            codeword_qubits,
            terms: Vec::new(),
        }
    }

    /// Adds a term, merging it into an existing equal string.
    pub fn add_term(&mut self, coeff: f64, string: PauliString) -> Result<()> {
        if let Some(q) = string.qubits().find(|&q| q >= self.num_qubits) {
            return Err(Error::Config(format!(
                "qubit {q} outside a {}-qubit Hamiltonian",
                self.num_qubits
            )));
        }
        match self.terms.iter_mut().find(|(_, s)| *s == string) {
            Some((c, _)) => *c += coeff,
            None => self.terms.push((coeff, string)),
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn codeword_qubits(&self) -> usize {
        self.codeword_qubits
    }

    pub fn register_of(&self, qubit: usize) -> Register {
        if qubit < self.codeword_qubits {
            Register::Codeword
        } else {
            Register::Ancilla
        }
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|(_, s)| s.is_diagonal())
    }

    /// `H|basis⟩` as a sparse list of `(basis index, amplitude)`.
    pub fn apply_to_basis(&self, basis: u64) -> Vec<(u64, Complex64)> {
        let mut out: BTreeMap<u64, Complex64> = BTreeMap::new();
        for (c, s) in &self.terms {
            let sign = if (basis & s.mask(Axis::Z, self.num_qubits)).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            *out.entry(basis ^ s.mask(Axis::X, self.num_qubits))
                .or_default() += Complex64::new(c * sign, 0.0);
        }
        out.into_iter().collect()
    }

    pub fn to_json(&self) -> HamiltonianJson {
        HamiltonianJson {
            terms: self
                .terms
                .iter()
                .map(|(c, s)| TermJson {
                    coeff: *c,
                    paulis: s
                        .factors
                        .iter()
                        .map(|(&q, &axis)| PauliJson { q, axis })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for PauliHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: f64,
    pub paulis: Vec<PauliJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliJson {
    pub q: usize,
    pub axis: Axis,
}

/// `H_f = (n/2)·I − ½ Σ_i Z_i Z_{n+i}` on `2n` qubits; its eigenvalue on
/// `|x⟩|r⟩` is the Hamming distance between `x` and `r`.
pub fn build_cost_hamiltonian(n: usize) -> Result<PauliHamiltonian> {
    if n == 0 {
        return Err(Error::Config("cost Hamiltonian needs n ≥ 1".into()));
    }
    let mut h = PauliHamiltonian::new(2 * n, n);
    h.add_term(n as f64 / 2.0, PauliString::identity())?;
    for i in 0..n {
        h.add_term(-0.5, PauliString::zs([i, n + i]))?;
    }
    Ok(h)
}

/// One unit `X`-string per minimum-weight codeword, on the codeword register.
pub fn build_mixer_hamiltonian(code: &Code) -> Result<PauliHamiltonian> {
    let words = code.min_weight_codewords();
    if words.is_empty() {
        return Err(Error::EmptyMixer);
    }
    let mut h = PauliHamiltonian::new(code.n(), code.n());
    for w in words {
        h.add_term(1.0, PauliString::xs(w.support()))?;
    }
    Ok(h)
}

/// Eigenvalue of a diagonal Hamiltonian on a computational basis state.
pub fn eigenvalue_of(h: &PauliHamiltonian, basis_state: &BitVector) -> Result<f64> {
    if !h.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    check_len(h.num_qubits, basis_state.len())?;
    Ok(h.terms
        .iter()
        .map(|(c, s)| {
            if (basis_state.as_u64() & s.mask(Axis::Z, h.num_qubits)).count_ones() % 2 == 1 {
                -c
            } else {
                *c
            }
        })
        .sum())
}

/// Transition matrix over the codespace: `g[j][k] = 1` iff codewords `j`
/// and `k` are at distance exactly `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GMatrix {
    pub codewords: Vec<BitVector>,
    pub entries: Vec<Vec<u8>>,
}

impl GMatrix {
    pub fn dim(&self) -> usize {
        self.codewords.len()
    }

    /// Whether the transition graph connects every codeword to the null word.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.dim()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(j) = stack.pop() {
            for (k, &e) in self.entries[j].iter().enumerate() {
                if e == 1 && !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn build_g_matrix(code: &Code) -> GMatrix {
    let words = code.codespace().to_vec();
    let d = code.d();
    let entries = words
        .iter()
        .map(|a| {
            words
                .iter()
                .map(|b| (d > 0 && hamming_distance(a, b).expect("equal lengths") == d) as u8)
                .collect()
        })
        .collect();
    GMatrix {
        codewords: words,
        entries,
    }
}

/// Multilinear polynomial in `num_vars` variables; `coeffs[S]` is the
/// coefficient of `Π_{i∈S} x_i` with `S` a bit mask (bit `i` = variable `i+1`).
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearPolynomial {
    pub num_vars: usize,
    pub coeffs: Vec<f64>,
}

impl MultilinearPolynomial {
    /// Coefficient of the monomial over the given 1-based variables.
    pub fn coefficient(&self, vars: &[usize]) -> f64 {
        let mask = vars.iter().fold(0usize, |m, &v| m | 1 << (v - 1));
        self.coeffs[mask]
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                c * (0..self.num_vars)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| x[i])
                    .product::<f64>()
            })
            .sum()
    }
}

/// Fourier expansion of `f: {−1,1}^m → ℝ` by indicator interpolation,
/// `f(x) = Σ_a f(a) Π_i (1 + a_i x_i)/2`.
pub fn fourier_expand(num_vars: usize, f: impl Fn(&[i8]) -> f64) -> MultilinearPolynomial {
    let mut coeffs = vec![0.0; 1 << num_vars];
    let scale = (1u64 << num_vars) as f64;
    for point in 0..1usize << num_vars {
        // bit i set ↔ a_i = +1
        let a: Vec<i8> = (0..num_vars)
            .map(|i| if point >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        let value = f(&a);
        for (mask, c) in coeffs.iter_mut().enumerate() {
            let sign: i8 = (0..num_vars)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| a[i])
                .product();
            *c += value * sign as f64 / scale;
        }
    }
    MultilinearPolynomial { num_vars, coeffs }
}

/// The two-variable XOR clause in both output ranges.
#[derive(Clone, Debug, PartialEq)]
pub struct XorExpansion {
    /// Output in `{−1, 1}` (`+1` for true).
    pub pm_range: MultilinearPolynomial,
    /// Output in `{0, 1}`: `(1 + C)/2`.
    pub zero_one_range: MultilinearPolynomial,
}

/// Expands `C(x₁, x₂) = x₁ ⊕ x₂` with inputs `±1` (`+1` for true).
pub fn fourier_expand_xor() -> XorExpansion {
    let pm_range = fourier_expand(2, |a| {
        let truth = (a[0] == 1) ^ (a[1] == 1);
        if truth {
            1.0
        } else {
            -1.0
        }
    });
    let zero_one_range = MultilinearPolynomial {
        num_vars: 2,
        coeffs: pm_range
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| if mask == 0 { (1.0 + c) / 2.0 } else { c / 2.0 })
            .collect(),
    };
    XorExpansion {
        pm_range,
        zero_one_range,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{builtins, conv_r12_m2, lbc_321, lbc_633};

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn single_bit_cost_hamiltonian() {
        let h = build_cost_hamiltonian(1).unwrap();
        assert_eq!(
            h.terms(),
            &[
                (0.5, PauliString::identity()),
                (-0.5, PauliString::zs([0, 1]))
            ]
        );
        assert_eq!(h.register_of(0), Register::Codeword);
        assert_eq!(h.register_of(1), Register::Ancilla);
    }

    #[test]
    fn cost_eigenvalues() {
        let h = build_cost_hamiltonian(6).unwrap();
        let r = bv("111011");
        let ev = |x: &str| eigenvalue_of(&h, &bv(x).concat(&r).unwrap()).unwrap();
        assert_eq!(ev("011011"), 1.0);
        assert_eq!(ev("000000"), 5.0);
        assert_eq!(ev("111011"), 0.0);
        assert_eq!(ev("110110"), 3.0);
        assert!(h.terms().iter().all(|(_, s)| s.weight() <= 2));
    }

    #[test]
    fn eigenvalue_rejects_mixers_and_bad_lengths() {
        let m = build_mixer_hamiltonian(&lbc_633()).unwrap();
        assert!(matches!(
            eigenvalue_of(&m, &bv("000000")),
            Err(Error::NotDiagonal)
        ));
        let h = build_cost_hamiltonian(2).unwrap();
        assert!(matches!(
            eigenvalue_of(&h, &bv("00")),
            Err(Error::Length { .. })
        ));
    }

    #[test]
    fn mixer_terms_for_633() {
        let m = build_mixer_hamiltonian(&lbc_633()).unwrap();
        let expected =
            [[2, 3, 4], [1, 3, 5], [0, 4, 5], [0, 1, 2]].map(|qs| (1.0, PauliString::xs(qs)));
        assert_eq!(m.terms(), &expected);
    }

    #[test]
    fn mixer_terms_for_convolutional_code() {
        let m = build_mixer_hamiltonian(&conv_r12_m2()).unwrap();
        let got: Vec<Vec<usize>> = m
            .terms()
            .iter()
            .map(|(_, s)| s.qubits().collect())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![4, 5, 7, 8, 9],
                vec![2, 3, 5, 6, 7],
                vec![0, 1, 3, 4, 5]
            ]
        );
    }

    #[test]
    fn mixer_for_321_and_zero_code() {
        let m = build_mixer_hamiltonian(&lbc_321()).unwrap();
        assert_eq!(m.terms(), &[(1.0, PauliString::xs([1]))]);
        let z = Code::from_codewords(&[bv("000")]).unwrap();
        assert!(matches!(
            build_mixer_hamiltonian(&z),
            Err(Error::EmptyMixer)
        ));
    }

    #[test]
    fn g_matrix_examples() {
        let g = build_g_matrix(&lbc_633());
        assert!(g
            .entries
            .iter()
            .all(|row| row.iter().map(|&e| e as u32).sum::<u32>() == 4));
        assert!(g.is_connected());

        let g = build_g_matrix(&lbc_321());
        // codewords sorted: 000, 010, 101, 111
        assert_eq!(g.entries[0], vec![0, 1, 0, 0]);
        assert!(!g.is_connected());

        let z = Code::from_codewords(&[bv("00")]).unwrap();
        assert_eq!(build_g_matrix(&z).entries, vec![vec![0]]);
    }

    #[test]
    fn g_matrix_is_symmetric_with_zero_diagonal() {
        for code in builtins() {
            let g = build_g_matrix(&code);
            for j in 0..g.dim() {
                assert_eq!(g.entries[j][j], 0);
                for k in 0..g.dim() {
                    assert_eq!(g.entries[j][k], g.entries[k][j]);
                }
            }
        }
    }

    #[test]
    fn mixer_restricted_to_codespace_equals_g_matrix() {
        for code in builtins() {
            let m = build_mixer_hamiltonian(&code).unwrap();
            let g = build_g_matrix(&code);
            for (j, xj) in g.codewords.iter().enumerate() {
                let image = m.apply_to_basis(xj.as_u64());
                for (idx, amp) in &image {
                    assert!(code.contains(&BitVector::from_u64(code.n(), *idx).unwrap()));
                    assert_eq!(amp.im, 0.0);
                }
                for (k, xk) in g.codewords.iter().enumerate() {
                    let amp = image
                        .iter()
                        .find(|(i, _)| *i == xk.as_u64())
                        .map(|(_, a)| a.re)
                        .unwrap_or(0.0);
                    assert_eq!(amp, g.entries[j][k] as f64, "{} {j} {k}", code.name());
                }
            }
            assert!(m
                .terms()
                .iter()
                .all(|(_, s)| s.weight() == code.d() as usize));
        }
    }

    #[test]
    fn xor_fourier_coefficients() {
        let e = fourier_expand_xor();
        assert_eq!(e.pm_range.coeffs, vec![0.0, 0.0, 0.0, -1.0]);
        assert_eq!(e.pm_range.coefficient(&[1, 2]), -1.0);
        assert_eq!(e.zero_one_range.coeffs, vec![0.5, 0.0, 0.0, -0.5]);
        assert_eq!(e.pm_range.evaluate(&[1.0, 1.0]), -1.0);
        assert_eq!(e.pm_range.evaluate(&[-1.0, 1.0]), 1.0);
    }

    #[test]
    fn hamiltonian_json_shape() {
        let v = serde_json::to_value(build_cost_hamiltonian(1).unwrap().to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"terms": [
                {"coeff": 0.5, "paulis": []},
                {"coeff": -0.5, "paulis": [{"q": 0, "axis": "Z"}, {"q": 1, "axis": "Z"}]}
            ]})
        );
    }
}
