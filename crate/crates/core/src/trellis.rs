//! Code trellises and the classical Viterbi decoder.
//!
//! Block codes with a parity-check matrix get the syndrome trellis: the state
//! after bit `t` is the partial syndrome `S_t = S_{t-1} + c_t h_t`, and only
//! branches that can still return to the null state at time `n` are kept.
//! Other codes get the minimal trellis of their codeword list, whose states
//! are classes of prefixes sharing the same set of valid continuations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::bits::{check_len, hamming_distance, BitVector};
use crate::code::Code;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Index into the state list of the section's start instant.
    pub from: usize,
    /// Index into the state list of the section's end instant.
    pub to: usize,
    /// Output bits of the section, most significant first.
    pub label: u64,
}

/// A terminated trellis with `depth + 1` instants.
#[derive(Clone, Debug)]
pub struct Trellis {
    n: usize,
    branch_bits: usize,
    /// State labels per instant. Syndrome trellises use the partial syndrome
    /// (width `n − k`); codeword trellises use the class index.
    states: Vec<Vec<u64>>,
    sections: Vec<Vec<Branch>>,
}

impl Trellis {
    /// Builds the trellis of `code`: the syndrome trellis when a parity-check
    /// matrix exists and sections are single bits, the codeword trellis
    /// otherwise.
    pub fn build(code: &Code) -> Result<Self> {
        match code.parity_check() {
            Some(h) if code.branch_bits() == 1 => Self::from_parity_check(h),
            _ => Self::from_codewords(code.n(), code.branch_bits(), code.codespace()),
        }
    }

    /// Syndrome trellis of a parity-check matrix `H` (`(n−k) × n`).
    pub fn from_parity_check(h: &crate::gf2::Gf2Matrix) -> Result<Self> {
        let n = h.cols();
        let columns: Vec<u64> = (0..n)
            .map(|t| (0..h.rows()).fold(0u64, |acc, r| (acc << 1) | h.get(r, t) as u64))
            .collect();

        // Forward expansion from the null state.
        let mut reach: Vec<BTreeSet<u64>> = vec![BTreeSet::from([0])];
        for col in &columns {
            let next = reach
                .last()
                .unwrap()
                .iter()
                .flat_map(|&s| [s, s ^ col])
                .collect();
            reach.push(next);
        }

        // Backward pruning: keep states from which the null state is reachable.
        let mut alive: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n + 1];
        alive[n] = reach[n].iter().copied().filter(|&s| s == 0).collect();
        if alive[n].is_empty() {
            return Err(Error::Trellis(
                "null state unreachable at the final instant".into(),
            ));
        }
        for t in (0..n).rev() {
            alive[t] = reach[t]
                .iter()
                .copied()
                .filter(|&s| alive[t + 1].contains(&s) || alive[t + 1].contains(&(s ^ columns[t])))
                .collect();
        }

        let states: Vec<Vec<u64>> = alive.iter().map(|s| s.iter().copied().collect()).collect();
        let index: Vec<HashMap<u64, usize>> = states
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let sections = (0..n)
            .map(|t| {
                let mut branches = Vec::new();
                for (from, &s) in states[t].iter().enumerate() {
                    for bit in [0u64, 1] {
                        let next = if bit == 1 { s ^ columns[t] } else { s };
                        if let Some(&to) = index[t + 1].get(&next) {
                            branches.push(Branch {
                                from,
                                to,
                                label: bit,
                            });
                        }
                    }
                }
                branches
            })
            .collect();
        Ok(Self {
            n,
            branch_bits: 1,
            states,
            sections,
        })
    }

    /// Minimal trellis spelling exactly `codewords`, with sections of
    /// `branch_bits` bits.
    pub fn from_codewords(n: usize, branch_bits: usize, codewords: &[BitVector]) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::Trellis(
                "no parity-check matrix and empty codespace".into(),
            ));
        }
        for c in codewords {
            check_len(n, c.len())?;
        }
        let branch_bits = if branch_bits > 0 && n.is_multiple_of(branch_bits) {
            branch_bits
        } else {
            1
        };
        let depth = n / branch_bits;

        // class_of[t][prefix] = state index at instant t.
        let mut class_of: Vec<HashMap<u64, usize>> = Vec::with_capacity(depth + 1);
        let mut states = Vec::with_capacity(depth + 1);
        for t in 0..=depth {
            let split = t * branch_bits;
            let mut futures: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
            for c in codewords {
                let prefix = if split == 0 {
                    0
                } else {
                    c.slice_value(0, split)
                };
                let suffix = if split == n {
                    0
                } else {
                    c.slice_value(split, n - split)
                };
                futures.entry(prefix).or_default().insert(suffix);
            }
            // Classes numbered by their smallest prefix.
            let mut class_ids: HashMap<&BTreeSet<u64>, usize> = HashMap::new();
            let mut map = HashMap::new();
            for (prefix, future) in &futures {
                let next = class_ids.len();
                let id = *class_ids.entry(future).or_insert(next);
                map.insert(*prefix, id);
            }
            states.push((0..class_ids.len() as u64).collect());
            class_of.push(map);
        }

        let mut sections = Vec::with_capacity(depth);
        for t in 0..depth {
            let mut set = BTreeSet::new();
            for c in codewords {
                let split = t * branch_bits;
                let from_prefix = if split == 0 {
                    0
                } else {
                    c.slice_value(0, split)
                };
                let to_prefix = c.slice_value(0, split + branch_bits);
                let label = c.slice_value(split, branch_bits);
                set.insert((
                    class_of[t][&from_prefix],
                    label,
                    class_of[t + 1][&to_prefix],
                ));
            }
            sections.push(
                set.into_iter()
                    .map(|(from, label, to)| Branch { from, to, label })
                    .collect(),
            );
        }
        Ok(Self {
            n,
            branch_bits,
            states,
            sections,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn branch_bits(&self) -> usize {
        self.branch_bits
    }

    /// Number of sections (time steps between the root and the sink).
    pub fn depth(&self) -> usize {
        self.sections.len()
    }

    pub fn states(&self, instant: usize) -> &[u64] {
        &self.states[instant]
    }

    pub fn branches(&self, section: usize) -> &[Branch] {
        &self.sections[section]
    }

    /// States per instant, root first.
    pub fn state_profile(&self) -> Vec<usize> {
        self.states.iter().map(Vec::len).collect()
    }

    /// Number of root-to-sink paths.
    pub fn path_count(&self) -> u128 {
        let mut counts = vec![1u128; self.states[0].len()];
        for (t, section) in self.sections.iter().enumerate() {
            let mut next = vec![0u128; self.states[t + 1].len()];
            for b in section {
                next[b.to] += counts[b.from];
            }
            counts = next;
        }
        counts.iter().sum()
    }

    /// Every root-to-sink path as a codeword, in ascending order.
    pub fn paths(&self) -> Vec<BitVector> {
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0usize, 0u64)];
        while let Some((t, state, acc)) = stack.pop() {
            if t == self.depth() {
                out.push(BitVector::from_u64(self.n, acc).expect("path fits n bits"));
                continue;
            }
            for b in self.sections[t].iter().filter(|b| b.from == state) {
                stack.push((t + 1, b.to, (acc << self.branch_bits) | b.label));
            }
        }
        out.sort_unstable();
        out
    }

    fn check_received(&self, r: &BitVector) -> Result<()> {
        check_len(self.n, r.len())
    }
}

/// Minimum path metric and every codeword attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub best_metric: u32,
    pub best_codewords: Vec<BitVector>,
    pub per_codeword_metric: BTreeMap<BitVector, u32>,
}

/// Viterbi decoding by dynamic programming over accumulated branch metrics.
/// Ties are kept: all minimizing paths are returned.
pub fn viterbi_decode(trellis: &Trellis, r: &BitVector) -> Result<DecodeResult> {
    trellis.check_received(r)?;
    let b = trellis.branch_bits;
    let depth = trellis.depth();

    let mut metric = vec![0u32; trellis.states[0].len()];
    // survivors[t][state] = branch indices into section t - 1 achieving the minimum.
    let mut survivors: Vec<Vec<Vec<usize>>> = Vec::with_capacity(depth);
    for (t, section) in trellis.sections.iter().enumerate() {
        let received = r.slice_value(t * b, b);
        let width = trellis.states[t + 1].len();
        let mut next = vec![u32::MAX; width];
        let mut best: Vec<Vec<usize>> = vec![Vec::new(); width];
        for (i, br) in section.iter().enumerate() {
            let m = metric[br.from] + (br.label ^ received).count_ones();
            if m < next[br.to] {
                next[br.to] = m;
                best[br.to].clear();
            }
            if m == next[br.to] {
                best[br.to].push(i);
            }
        }
        metric = next;
        survivors.push(best);
    }
    let best_metric = metric[0];

    // Trace back every surviving path from the sink.
    let mut best_codewords = Vec::new();
    let mut stack = vec![(depth, 0usize, 0u64)];
    while let Some((t, state, suffix)) = stack.pop() {
        if t == 0 {
            best_codewords.push(BitVector::from_u64(trellis.n, suffix)?);
            continue;
        }
        for &i in &survivors[t - 1][state] {
            let br = trellis.sections[t - 1][i];
            let shift = (depth - t) * b;
            stack.push((t - 1, br.from, suffix | (br.label << shift)));
        }
    }
    best_codewords.sort_unstable();

    let per_codeword_metric = trellis
        .paths()
        .into_iter()
        .map(|c| Ok((c, hamming_distance(&c, r)?)))
        .collect::<Result<_>>()?;
    Ok(DecodeResult {
        best_metric,
        best_codewords,
        per_codeword_metric,
    })
}

/// Maximum-likelihood decoding by exhaustive scan of the codespace.
pub fn ml_brute_force(code: &Code, r: &BitVector) -> Result<DecodeResult> {
    check_len(code.n(), r.len())?;
    let per_codeword_metric: BTreeMap<BitVector, u32> = code
        .codespace()
        .iter()
        .map(|c| Ok((*c, hamming_distance(c, r)?)))
        .collect::<Result<_>>()?;
    let best_metric = *per_codeword_metric
        .values()
        .min()
        .expect("codespace is nonempty");
    let best_codewords = per_codeword_metric
        .iter()
        .filter(|(_, &m)| m == best_metric)
        .map(|(c, _)| *c)
        .collect();
    Ok(DecodeResult {
        best_metric,
        best_codewords,
        per_codeword_metric,
    })
}

/// Convenience wrapper: build the code's trellis and decode `r`.
pub fn decode(code: &Code, r: &BitVector) -> Result<DecodeResult> {
    viterbi_decode(&Trellis::build(code)?, r)
}
