//! Defining a code from JSON, by generator rows or by an explicit codeword
//! list, and decoding against it.

use qviterbi::code::CodeDescription;
use qviterbi::trellis::decode;
use qviterbi::BitVector;

fn list(words: &[BitVector]) -> String {
    words
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

const HAMMING_74: &str = r#"{
    "name": "hamming_74",
    "n": 7,
    "k": 4,
    "generator": [
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 1],
        [0, 0, 0, 1, 1, 0, 1]
    ]
}"#;

const REPETITION_3: &str = r#"{
    "name": "rep3",
    "codewords": ["000", "111"]
}"#;

fn main() -> qviterbi::Result<()> {
    for json in [HAMMING_74, REPETITION_3] {
        let code = CodeDescription::from_json(json)?.build()?;
        println!(
            "{}: n = {}, k = {}, d = {}",
            code.name(),
            code.n(),
            code.k(),
            code.d()
        );
        println!(
            "  minimum-weight codewords: {}",
            list(&code.min_weight_codewords())
        );
        let r = BitVector::from_u64(code.n(), 0b1)?;
        let result = decode(&code, &r)?;
        println!(
            "  r = {r} -> {} at distance {}",
            list(&result.best_codewords),
            result.best_metric
        );
    }

    let bad = r#"{"name": "not_linear", "codewords": ["000", "110", "011"]}"#;
    match CodeDescription::from_json(bad).and_then(|d| d.build()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
