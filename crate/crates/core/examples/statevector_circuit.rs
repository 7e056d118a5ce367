//! One circuit layer on the statevector simulator, gate by gate.
//!
//! Runs the same layer with the folded and the explicit received register
//! and checks both agree on the codeword marginal.

use qviterbi::code::builtin;
use qviterbi::hamiltonian::build_mixer_hamiltonian;
use qviterbi::statevector::{
    apply_cost_unitary, apply_mixer_unitary_with, prepare_uniform_codespace, CircuitMode,
    MixerMethod, Statevector,
};
use qviterbi::BitVector;

fn main() -> qviterbi::Result<()> {
    let code = builtin("lbc_633").unwrap();
    let r: BitVector = "111011".parse()?;
    let (beta, gamma) = (0.7, 1.9);
    let mixer = build_mixer_hamiltonian(&code)?;

    // The uniform codespace state is an eigenstate of every mixer term, so the
    // first mixer only adds a phase; mixer, cost, mixer is the shortest
    // sequence that moves probability.
    let mut folded = prepare_uniform_codespace(&code)?;
    apply_mixer_unitary_with(&mut folded, beta, &mixer, MixerMethod::DirectPairing)?;
    apply_cost_unitary(&mut folded, gamma, &r, CircuitMode::FoldedAncilla)?;
    apply_mixer_unitary_with(&mut folded, beta, &mixer, MixerMethod::DirectPairing)?;

    // 2n qubits: codeword register, then the received word written with X gates.
    let n = code.n();
    let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); 1 << (2 * n)];
    for (i, a) in prepare_uniform_codespace(&code)?
        .amplitudes()
        .iter()
        .enumerate()
    {
        amps[(i << n) | r.as_u64() as usize] = *a;
    }
    let mut full = Statevector::from_amplitudes(amps)?;
    apply_mixer_unitary_with(&mut full, beta, &mixer, MixerMethod::GateLevel)?;
    apply_cost_unitary(&mut full, gamma, &r, CircuitMode::FullRegister)?;
    apply_mixer_unitary_with(&mut full, beta, &mixer, MixerMethod::GateLevel)?;

    let (reduced, tail) = full
        .split_classical_tail(n, 1e-12)
        .expect("received register stays classical");
    assert_eq!(tail, r.as_u64());
    println!("\nafter mixer, cost, mixer (β = {beta}, γ = {gamma}):");
    println!(
        "  folded and full-register states equal up to phase: {}",
        folded.equal_up_to_phase(&reduced, 1e-10)
    );

    let counts = folded.measure_counts(2000, 1)?;
    println!("\n{:>8}  {:>6}  {:>5}", "state", "prob", "shots");
    for (i, p) in folded
        .probabilities()
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 1e-12)
    {
        let state = BitVector::from_u64(n, i as u64)?;
        let hits = counts.get(&state).copied().unwrap_or(0);
        println!("{:>8}  {p:.4}  {hits:>5}", state.to_string());
    }
    Ok(())
}
