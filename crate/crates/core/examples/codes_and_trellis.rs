//! Built-in codes, their trellises, and classical Viterbi decoding.
//!
//! ```text
//! cargo run --example codes_and_trellis -- [CODE] [RECEIVED]
//! ```

use qviterbi::code::{builtins, resolve_code};
use qviterbi::trellis::{ml_brute_force, viterbi_decode, Trellis};
use qviterbi::BitVector;

fn main() -> qviterbi::Result<()> {
    for code in builtins() {
        let trellis = Trellis::build(&code)?;
        println!(
            "{:<12} n={:<2} k={} d={}  {:?}  states {:?}",
            code.name(),
            code.n(),
            code.k(),
            code.d(),
            code.kind(),
            trellis.state_profile()
        );
    }

    let mut args = std::env::args().skip(1);
    let code = resolve_code(&args.next().unwrap_or_else(|| "lbc_633".into()))?;
    let received: BitVector = args.next().unwrap_or_else(|| "111011".into()).parse()?;

    println!("\ngenerator of {}:", code.name());
    for row in code.generator().row_vectors() {
        println!("  {row}");
    }
    if let Some(h) = code.parity_check() {
        println!("parity check:");
        for row in h.row_vectors() {
            println!("  {row}");
        }
    }

    let trellis = Trellis::build(&code)?;
    let result = viterbi_decode(&trellis, &received)?;
    assert_eq!(result, ml_brute_force(&code, &received)?);
    println!("\nr = {received}");
    for (word, metric) in &result.per_codeword_metric {
        let mark = if *metric == result.best_metric {
            "  <-"
        } else {
            ""
        };
        println!("  {word}  d = {metric}{mark}");
    }
    Ok(())
}
