use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::LinearCode;

use super::Guards;

const UNVISITED: u8 = u8::MAX;

/// Minimum coset weight for every syndrome of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetLeaderProfile {
    pub redundancy: usize,
    /// Indexed by syndrome value.
    pub leader_weight: Vec<u8>,
    /// `histogram[d]` = number of syndromes whose leader has weight `d`.
    pub histogram: Vec<u64>,
}

impl CosetLeaderProfile {
    pub fn covering_radius(&self) -> usize {
        self.histogram.len() - 1
    }

    /// Number of syndromes with leader weight at most `r`.
    pub fn syndromes_within(&self, r: usize) -> u64 {
        self.histogram.iter().take(r + 1).sum()
    }

    /// `weight,count` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in self.histogram.iter().enumerate() {
            writeln!(out, "{w},{c}").unwrap();
        }
        out
    }
}

/// Breadth-first search over syndrome space, stepping by the columns of the
/// parity-check matrix.
pub fn coset_leader_profile(code: &LinearCode, guards: &Guards) -> Result<CosetLeaderProfile> {
    let redundancy = code.redundancy();
    guards.check_syndrome(redundancy)?;
    if redundancy > 40 {
        return Err(Error::guard("syndrome dimension", redundancy as u64, 40));
    }
    let h = code.parity_check();
    debug_assert_eq!(h.rows(), redundancy);

    let mut steps: Vec<u64> = (0..code.blocklength())
        .map(|j| {
            (0..redundancy)
                .filter(|&i| h.get(i, j))
                .fold(0u64, |acc, i| acc | 1 << i)
        })
        .filter(|&s| s != 0)
        .collect();
    steps.sort_unstable();
    steps.dedup();

    let size = 1usize << redundancy;
    let mut leader_weight = vec![UNVISITED; size];
    leader_weight[0] = 0;
    let mut histogram = vec![1u64];
    let mut frontier = vec![0u64];
    let mut seen = 1usize;
    let mut depth = 0u8;
    while seen < size {
        depth += 1;
        let mut next = Vec::new();
        for &s in &frontier {
            for &c in &steps {
                let t = (s ^ c) as usize;
                if leader_weight[t] == UNVISITED {
                    leader_weight[t] = depth;
                    next.push(t as u64);
                }
            }
        }
        // H has full row rank, so its columns span every syndrome
        assert!(!next.is_empty(), "syndrome search stalled");
        seen += next.len();
        histogram.push(next.len() as u64);
        frontier = next;
    }
    Ok(CosetLeaderProfile {
        redundancy,
        leader_weight,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Largest distance from any point to the nearest codeword.
    fn brute_force_radius(code: &LinearCode) -> usize {
        let words = code.codewords_u64();
        (0u64..1 << code.blocklength())
            .map(|z| words.iter().map(|c| (z ^ c).count_ones()).min().unwrap() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn identity_code_has_one_syndrome() {
        let p = coset_leader_profile(&LinearCode::full(5), &Guards::default()).unwrap();
        assert_eq!(p.redundancy, 0);
        assert_eq!(p.leader_weight, vec![0]);
        assert_eq!(p.covering_radius(), 0);
    }

    #[test]
    fn repetition_three() {
        let c = LinearCode::repetition(3);
        let p = coset_leader_profile(&c, &Guards::default()).unwrap();
        assert_eq!(p.redundancy, 2);
        let mut w = p.leader_weight.clone();
        w.sort();
        assert_eq!(w, vec![0, 1, 1, 1]);
        assert_eq!(p.covering_radius(), 1);
        assert_eq!(brute_force_radius(&c), 1);
    }

    #[test]
    fn hamming_profile() {
        let c = LinearCode::hamming_7_4();
        let p = coset_leader_profile(&c, &Guards::default()).unwrap();
        assert_eq!(p.histogram, vec![1, 7]);
        assert_eq!(brute_force_radius(&c), 1);
        assert_eq!(p.to_csv(), "weight,count\n0,1\n1,7\n");
    }

    #[test]
    fn zero_code_leaders_are_points() {
        let p = coset_leader_profile(&LinearCode::zero(4), &Guards::default()).unwrap();
        assert_eq!(p.histogram, vec![1, 4, 6, 4, 1]);
        assert_eq!(p.covering_radius(), 4);
        assert_eq!(p.syndromes_within(2), 11);
    }

    #[test]
    fn guard_is_enforced() {
        let g = Guards {
            max_syndrome_dim: 3,
            ..Guards::default()
        };
        assert!(coset_leader_profile(&LinearCode::zero(4), &g).unwrap_err().is_guard());
    }
}
