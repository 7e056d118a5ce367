//! UPO, FPO and fully random initialization on the same instance and seeds.

use qviterbi::code::builtin;
use qviterbi::qaoa::{train, QaoaProblem, Strategy, TrainingConfig};
use qviterbi::statevector::CircuitMode;

fn main() -> qviterbi::Result<()> {
    let code = builtin("lbc_633").unwrap();
    let problem = QaoaProblem::new(&code, &"111011".parse()?, CircuitMode::FoldedAncilla)?;
    let strategies = [Strategy::Upo, Strategy::Fpo, Strategy::Random];

    println!("solution hits out of 2000, p = 3, q = 5");
    println!("{:>4} {:>6} {:>6} {:>6}", "seed", "UPO", "FPO", "RANDOM");
    for seed in 0..10 {
        let config = TrainingConfig {
            seed,
            ..Default::default()
        };
        let hits = strategies
            .iter()
            .map(|&s| Ok(train(&problem, s, &config)?.solution_hits))
            .collect::<qviterbi::Result<Vec<_>>>()?;
        println!("{seed:>4} {:>6} {:>6} {:>6}", hits[0], hits[1], hits[2]);
    }
    Ok(())
}
