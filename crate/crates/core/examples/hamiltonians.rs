//! Cost and mixer Hamiltonians, the codespace transition matrix, and the
//! Fourier expansion of the XOR clause.

use qviterbi::code::{builtin, builtins};
use qviterbi::hamiltonian::{
    build_cost_hamiltonian, build_g_matrix, build_mixer_hamiltonian, eigenvalue_of,
    fourier_expand_xor, PauliHamiltonian,
};
use qviterbi::{hamming_distance, BitVector};

fn show(label: &str, h: &PauliHamiltonian) {
    println!("{label}:");
    for (coeff, string) in h.terms() {
        let ops: Vec<String> = string
            .factors()
            .iter()
            .map(|(q, axis)| format!("{axis:?}{q}"))
            .collect();
        println!(
            "  {coeff:+} {}",
            if ops.is_empty() {
                "I".into()
            } else {
                ops.join(" ")
            }
        );
    }
}

fn main() -> qviterbi::Result<()> {
    let code = builtin("lbc_633").unwrap();
    let cost = build_cost_hamiltonian(code.n())?;
    show("cost, n = 6", &cost);

    // The cost spectrum on x‖r is the Hamming distance.
    let x: BitVector = "011011".parse()?;
    let r: BitVector = "111011".parse()?;
    println!(
        "  <{x}|<{r}| H |..> = {} (distance {})\n",
        eigenvalue_of(&cost, &x.concat(&r)?)?,
        hamming_distance(&x, &r)?
    );

    for code in builtins() {
        show(
            &format!("mixer of {}", code.name()),
            &build_mixer_hamiltonian(&code)?,
        );
        let g = build_g_matrix(&code);
        println!(
            "  g-matrix {}x{}, connected: {}",
            g.dim(),
            g.dim(),
            g.is_connected()
        );
    }

    let xor = fourier_expand_xor();
    println!(
        "\nxor, ±1 range:  x1x2 coefficient {}",
        xor.pm_range.coefficient(&[1, 2])
    );
    println!(
        "xor, 0/1 range: constant {}, x1x2 coefficient {}",
        xor.zero_one_range.coefficient(&[]),
        xor.zero_one_range.coefficient(&[1, 2])
    );
    Ok(())
}
