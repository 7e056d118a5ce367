//! Decode a received word by training the circuit with uniform parameters.
//!
//! ```text
//! cargo run --release --example upo_decode -- [CODE] [RECEIVED] [SEED]
//! ```

use qviterbi::code::resolve_code;
use qviterbi::qaoa::{train_upo, QaoaProblem, TrainingConfig};
use qviterbi::statevector::CircuitMode;
use qviterbi::BitVector;

fn main() -> qviterbi::Result<()> {
    let mut args = std::env::args().skip(1);
    let code = resolve_code(&args.next().unwrap_or_else(|| "lbc_633".into()))?;
    let received: BitVector = args.next().unwrap_or_else(|| "111011".into()).parse()?;
    let seed = args
        .next()
        .map_or(Ok(0), |s| s.parse())
        .map_err(|e| qviterbi::Error::Config(format!("seed: {e}")))?;

    let problem = QaoaProblem::new(&code, &received, CircuitMode::FoldedAncilla)?;
    let config = TrainingConfig {
        seed,
        ..Default::default()
    };
    let result = train_upo(&problem, &config)?;

    println!(
        "{} r = {received}, p = {}, q = {}",
        code.name(),
        config.p,
        config.q
    );
    for s in &result.samples {
        println!(
            "  draw {}  (β, γ) = ({:.3}, {:.3}) -> ({:.3}, {:.3})  <H> = {:.4}  {} iterations",
            s.draw,
            s.initial.betas[0],
            s.initial.gammas[0],
            s.optimized.betas[0],
            s.optimized.gammas[0],
            s.expectation,
            s.iterations
        );
    }
    println!(
        "best <H> = {:.4}, f_min = {}",
        result.best_expectation, result.f_min
    );

    println!("\ntop states ({} shots):", result.shots);
    for (state, p) in result.top_states(4) {
        let hits = result.counts.get(&state).copied().unwrap_or(0);
        println!("  {state}  p = {p:.3}  hits = {hits}");
    }
    let minimizers: Vec<String> = problem
        .oracle()
        .best_codewords
        .iter()
        .map(|w| w.to_string())
        .collect();
    println!("oracle minimizers: {}", minimizers.join(" "));
    Ok(())
}
