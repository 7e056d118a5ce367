//! Cost landscape over uniform (β, γ), written as CSV.
//!
//! ```text
//! cargo run --release --example landscape -- [CODE] [RECEIVED] [P] [GRID] > landscape.csv
//! ```

use qviterbi::code::resolve_code;
use qviterbi::qaoa::{landscape_csv, landscape_scan, QaoaProblem};
use qviterbi::statevector::CircuitMode;
use qviterbi::{BitVector, Error};

fn main() -> qviterbi::Result<()> {
    let mut args = std::env::args().skip(1);
    let code = resolve_code(&args.next().unwrap_or_else(|| "lbc_321".into()))?;
    let received: BitVector = args.next().unwrap_or_else(|| "011".into()).parse()?;
    let mut num = |default: usize| {
        args.next()
            .map_or(Ok(default), |s| s.parse())
            .map_err(|e| Error::Config(e.to_string()))
    };
    let p = num(3)?;
    let grid = num(32)?;

    let problem = QaoaProblem::new(&code, &received, CircuitMode::FoldedAncilla)?;
    let points = landscape_scan(&problem, p, grid)?;
    let lo = points
        .iter()
        .map(|pt| pt.expectation)
        .fold(f64::INFINITY, f64::min);
    let hi = points
        .iter()
        .map(|pt| pt.expectation)
        .fold(f64::NEG_INFINITY, f64::max);
    eprintln!(
        "{} p = {p}: <H> in [{lo:.4}, {hi:.4}], f_min = {}",
        code.name(),
        problem.f_min()
    );
    print!("{}", landscape_csv(&points));
    Ok(())
}
