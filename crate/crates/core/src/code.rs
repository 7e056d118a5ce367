//! Binary linear codes: construction, codespace enumeration and the
//! built-in codes used throughout the examples and tests.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::{check_len, BitVector};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Largest message length whose codespace is enumerated.
pub const MAX_K: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Block,
    ConvolutionalTerminated,
}

/// An `[n, k, d]` binary linear code with its enumerated codespace.
///
/// The stored generator is always in reduced row-echelon form. A parity-check
/// matrix is present only when that form is systematic (`[I | P]`).
#[derive(Clone, Debug)]
pub struct Code {
    name: String,
    n: usize,
    k: usize,
    d: u32,
    generator: Gf2Matrix,
    pivots: Vec<usize>,
    parity_check: Option<Gf2Matrix>,
    codespace: Vec<BitVector>,
    kind: CodeKind,
    branch_bits: usize,
}

impl Code {
    /// Builds a code from a full-rank generator matrix.
    pub fn from_generator(generator: &Gf2Matrix) -> Result<Self> {
        let k = generator.rows();
        let (rref, pivots) = generator.rref();
        if rref.rows() != k {
            return Err(Error::Rank {
                rank: rref.rows(),
                rows: k,
            });
        }
        Self::from_rref(rref, pivots)
    }

    /// Builds a code from an explicit list of codewords, which must form a
    /// linear space (and so contain the all-zero word).
    pub fn from_codewords(words: &[BitVector]) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::NotLinear("empty codeword list".into()))?;
        let n = first.len();
        for w in words {
            check_len(n, w.len())?;
        }
        let mut sorted = words.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotLinear("duplicate codewords".into()));
        }
        if !sorted[0].is_zero() {
            return Err(Error::NotLinear("all-zero word missing".into()));
        }
        if !sorted.len().is_power_of_two() {
            return Err(Error::NotLinear(format!(
                "{} words is not a power of two",
                sorted.len()
            )));
        }
        let k = sorted.len().trailing_zeros() as usize;
        if k > MAX_K {
            return Err(Error::TooLarge(format!("k = {k} exceeds {MAX_K}")));
        }
        // A set is linear iff it equals its own span, and it always lies inside
        // it, so the sizes decide.
        let (rref, pivots) = Gf2Matrix::from_bit_vectors(n, &sorted)?.rref();
        if rref.rows() != k {
            return Err(Error::NotLinear(format!(
                "span has dimension {} but {} words need {k}",
                rref.rows(),
                sorted.len()
            )));
        }
        Self::from_rref(rref, pivots)
    }

    fn from_rref(generator: Gf2Matrix, pivots: Vec<usize>) -> Result<Self> {
        let n = generator.cols();
        let k = generator.rows();
        if k > MAX_K {
            return Err(Error::TooLarge(format!("k = {k} exceeds {MAX_K}")));
        }
        let codespace = generator.row_span();
        let d = codespace
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.weight())
            .min()
            .unwrap_or(0);
        let parity_check = if pivots.iter().copied().eq(0..k) {
            Some(systematic_parity_check(&generator)?)
        } else {
            None
        };
        Ok(Self {
            name: "custom".into(),
            n,
            k,
            d,
            generator,
            pivots,
            parity_check,
            codespace,
            kind: CodeKind::Block,
            branch_bits: 1,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Marks the code as a terminated convolutional code whose trellis
    /// sections carry `branch_bits` output bits each.
    pub fn convolutional(mut self, branch_bits: usize) -> Result<Self> {
        if branch_bits == 0 || !self.n.is_multiple_of(branch_bits) {
            return Err(Error::Config(format!(
                "branch width {branch_bits} does not divide n = {}",
                self.n
            )));
        }
        self.kind = CodeKind::ConvolutionalTerminated;
        self.branch_bits = branch_bits;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance; 0 for the zero code.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn generator(&self) -> &Gf2Matrix {
        &self.generator
    }

    /// Pivot columns of the row-reduced generator.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn parity_check(&self) -> Option<&Gf2Matrix> {
        self.parity_check.as_ref()
    }

    /// All `2^k` codewords in ascending order.
    pub fn codespace(&self) -> &[BitVector] {
        &self.codespace
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Output bits per trellis section.
    pub fn branch_bits(&self) -> usize {
        self.branch_bits
    }

    pub fn contains(&self, word: &BitVector) -> bool {
        self.codespace.binary_search(word).is_ok()
    }

    /// Nonzero codewords of weight exactly `d`, in lexicographic order.
    pub fn min_weight_codewords(&self) -> Vec<BitVector> {
        self.codespace
            .iter()
            .filter(|c| !c.is_zero() && c.weight() == self.d)
            .copied()
            .collect()
    }

    pub fn description(&self) -> CodeDescription {
        match self.kind {
            CodeKind::Block => CodeDescription::Generator {
                name: self.name.clone(),
                n: self.n,
                k: self.k,
                generator: (0..self.k)
                    .map(|r| self.generator.row(r).to_bits())
                    .collect(),
            },
            CodeKind::ConvolutionalTerminated => CodeDescription::Codewords {
                name: self.name.clone(),
                codewords: self.codespace.iter().map(|c| c.to_string()).collect(),
                kind: Some(self.kind),
                branch_bits: Some(self.branch_bits),
            },
        }
    }
}

/// `H = [Pᵀ | I]` for a generator `[I | P]`.
fn systematic_parity_check(generator: &Gf2Matrix) -> Result<Gf2Matrix> {
    let (k, n) = (generator.rows(), generator.cols());
    let mut h = Gf2Matrix::zeros(n - k, n)?;
    for i in 0..n - k {
        for j in 0..k {
            h.set(i, j, generator.get(j, k + i));
        }
        h.set(i, k + i, 1);
    }
    Ok(h)
}

/// JSON description of a code, either by generator or by codeword list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeDescription {
    Generator {
        name: String,
        n: usize,
        k: usize,
        generator: Vec<Vec<u8>>,
    },
    Codewords {
        name: String,
        codewords: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kind: Option<CodeKind>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        branch_bits: Option<usize>,
    },
}

impl CodeDescription {
    pub fn build(&self) -> Result<Code> {
        match self {
            CodeDescription::Generator {
                name,
                n,
                k,
                generator,
            } => {
                if generator.len() != *k {
                    return Err(Error::Config(format!(
                        "code {name}: k = {k} but generator has {} rows",
                        generator.len()
                    )));
                }
                if generator.iter().any(|r| r.len() != *n) {
                    return Err(Error::Config(format!(
                        "code {name}: generator rows must have n = {n} entries"
                    )));
                }
                let g = if *k == 0 {
                    Gf2Matrix::zeros(0, *n)?
                } else {
                    Gf2Matrix::from_rows(generator)?
                };
                Ok(Code::from_generator(&g)?.with_name(name.clone()))
            }
            CodeDescription::Codewords {
                name,
                codewords,
                kind,
                branch_bits,
            } => {
                let words = codewords
                    .iter()
                    .map(|w| w.parse())
                    .collect::<Result<Vec<BitVector>>>()?;
                let code = Code::from_codewords(&words)?.with_name(name.clone());
                match (kind, branch_bits) {
                    (Some(CodeKind::ConvolutionalTerminated), b) => {
                        code.convolutional(b.unwrap_or(1))
                    }
                    (Some(CodeKind::Block), _) | (None, None) => Ok(code),
                    (None, Some(b)) => code.convolutional(*b),
                }
            }
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

/// Loads a code from a JSON description file.
pub fn load_code_file(path: impl AsRef<Path>) -> Result<Code> {
    let text = std::fs::read_to_string(path)?;
    CodeDescription::from_json(&text)?.build()
}

/// Resolves a built-in name, falling back to a JSON file path.
pub fn resolve_code(source: &str) -> Result<Code> {
    if let Some(code) = builtin(source) {
        return Ok(code);
    }
    let path = Path::new(source);
    if path.exists() {
        return load_code_file(path);
    }
    Err(Error::Config(format!(
        "unknown code {source:?}: not a built-in ({}) and not a readable file",
        BUILTIN_NAMES.join(", ")
    )))
}

pub const BUILTIN_NAMES: [&str; 3] = ["lbc_633", "lbc_321", "conv_r12_m2"];

/// The `[6,3,3]` code with systematic generator `[I | P]`.
pub fn lbc_633() -> Code {
    let g = Gf2Matrix::from_rows(&[[1, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1], [0, 0, 1, 1, 1, 0]])
        .expect("static matrix");
    Code::from_generator(&g)
        .expect("full rank")
        .with_name("lbc_633")
}

/// The `[3,2,1]` code with codespace `{000, 010, 101, 111}`.
pub fn lbc_321() -> Code {
    let g = Gf2Matrix::from_rows(&[[0, 1, 0], [1, 0, 1]]).expect("static matrix");
    Code::from_generator(&g)
        .expect("full rank")
        .with_name("lbc_321")
}

/// Rate-1/2, memory-2 convolutional code run for 5 instants (3 message
/// bits plus 2 tail bits), as its 8 terminated codewords.
pub fn conv_r12_m2() -> Code {
    const WORDS: [&str; 8] = [
        "0000000000",
        "0000110111",
        "0011011100",
        "0011101011",
        "1101110000",
        "1101000111",
        "1110101100",
        "1110011011",
    ];
    let words: Vec<BitVector> = WORDS
        .iter()
        .map(|w| w.parse().expect("static word"))
        .collect();
    Code::from_codewords(&words)
        .and_then(|c| c.convolutional(2))
        .expect("linear")
        .with_name("conv_r12_m2")
}

pub fn builtin(name: &str) -> Option<Code> {
    match name {
        "lbc_633" => Some(lbc_633()),
        "lbc_321" => Some(lbc_321()),
        "conv_r12_m2" => Some(conv_r12_m2()),
        _ => None,
    }
}

pub fn builtins() -> Vec<Code> {
    BUILTIN_NAMES.iter().filter_map(|n| builtin(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<BitVector> {
        list.iter().map(|w| w.parse().unwrap()).collect()
    }

    fn strings(ws: &[BitVector]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn lbc_633_codespace_and_distance() {
        let c = lbc_633();
        assert_eq!((c.n(), c.k(), c.d()), (6, 3, 3));
        let mut expected = words(&[
            "000000", "001110", "010101", "100011", "011011", "110110", "101101", "111000",
        ]);
        expected.sort();
        assert_eq!(c.codespace(), expected.as_slice());
        assert_eq!(
            strings(&c.min_weight_codewords()),
            ["001110", "010101", "100011", "111000"]
        );
    }

    #[test]
    fn lbc_633_parity_check_matches_published_matrix() {
        let h = Gf2Matrix::from_rows(&[[0, 1, 1, 1, 0, 0], [1, 0, 1, 0, 1, 0], [1, 1, 0, 0, 0, 1]])
            .unwrap();
        assert_eq!(lbc_633().parity_check(), Some(&h));
    }

    #[test]
    fn single_bit_identity_code() {
        let c = Code::from_generator(&Gf2Matrix::identity(1).unwrap()).unwrap();
        assert_eq!(strings(c.codespace()), ["0", "1"]);
        assert_eq!(c.d(), 1);
    }

    #[test]
    fn lbc_321_from_non_systematic_generator() {
        let c = lbc_321();
        assert_eq!(strings(c.codespace()), ["000", "010", "101", "111"]);
        assert_eq!(c.d(), 1);
        assert_eq!(strings(&c.min_weight_codewords()), ["010"]);
        assert_eq!(
            c.generator(),
            &Gf2Matrix::from_rows(&[[1, 0, 1], [0, 1, 0]]).unwrap()
        );
    }

    #[test]
    fn rank_deficient_generator() {
        let g = Gf2Matrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert!(matches!(
            Code::from_generator(&g),
            Err(Error::Rank { rank: 2, rows: 3 })
        ));
    }

    #[test]
    fn convolutional_codewords() {
        let c = conv_r12_m2();
        assert_eq!((c.n(), c.k(), c.d()), (10, 3, 5));
        assert_eq!(c.kind(), CodeKind::ConvolutionalTerminated);
        assert_eq!(c.branch_bits(), 2);
        assert_eq!(
            strings(&c.min_weight_codewords()),
            ["0000110111", "0011011100", "1101110000"]
        );
    }

    #[test]
    fn zero_code_and_small_lists() {
        let z = Code::from_codewords(&words(&["0000"])).unwrap();
        assert_eq!((z.k(), z.d()), (0, 0));
        assert!(z.min_weight_codewords().is_empty());

        let c = Code::from_codewords(&words(&["000", "010", "101", "111"])).unwrap();
        assert_eq!((c.generator().rank(), c.d()), (2, 1));
    }

    #[test]
    fn non_linear_lists_are_rejected() {
        for bad in [
            vec!["000", "011", "101"],
            vec!["000", "011", "101", "111"],
            vec!["001", "011"],
            vec!["000", "000"],
        ] {
            assert!(
                matches!(Code::from_codewords(&words(&bad)), Err(Error::NotLinear(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn json_descriptions() {
        let g = CodeDescription::from_json(
            r#"{"name": "rep3", "n": 3, "k": 1, "generator": [[1,1,1]]}"#,
        )
        .unwrap()
        .build()
        .unwrap();
        assert_eq!((g.name(), g.n(), g.k(), g.d()), ("rep3", 3, 1, 3));

        let w =
            CodeDescription::from_json(r#"{"name": "w", "codewords": ["000","010","101","111"]}"#)
                .unwrap()
                .build()
                .unwrap();
        assert_eq!(w.k(), 2);

        let conv = conv_r12_m2().description();
        let back: CodeDescription =
            serde_json::from_str(&serde_json::to_string(&conv).unwrap()).unwrap();
        assert_eq!(back.build().unwrap().branch_bits(), 2);

        assert!(CodeDescription::from_json(
            r#"{"name": "bad", "n": 4, "k": 1, "generator": [[1,1,1]]}"#
        )
        .unwrap()
        .build()
        .is_err());
    }

    #[test]
    fn parity_consistency_is_bidirectional() {
        for code in builtins() {
            let Some(h) = code.parity_check() else {
                continue;
            };
            for v in 0..1u64 << code.n() {
                let v = BitVector::from_u64(code.n(), v).unwrap();
                assert_eq!(
                    h.syndrome(&v).unwrap() == 0,
                    code.contains(&v),
                    "{}",
                    code.name()
                );
            }
        }
    }
}
