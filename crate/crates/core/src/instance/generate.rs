// Copyright 2026 The maximin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Synthetic instance families.

use super::{CandidateId, ElectionInstance, VoterSpec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Pareto};
use std::fmt;
use std::str::FromStr;

/// `H_k = Σ_{i=1..k} 1/i`.
pub fn harmonic<T: Scalar>(k: usize) -> T {
    (1..=k).map(|i| T::one() / T::from_usize(i)).sum()
}

/// The family on which sequential Phragmén is off by a factor `H_k - eps`.
///
/// Voters `n0..nk`, candidates `c0..ck`: `n0` has stake `1/(H_k - eps)` and
/// approves only `c0`; `n_j` has unit stake and approves `c1..c_j`. The
/// committee `{c1..ck}` gives every member support 1.
pub fn gen_phragmen_worstcase<T: Scalar>(k: usize, eps: T) -> Result<ElectionInstance<T>> {
    let h = harmonic::<T>(k);
    if k < 2 {
        return Err(Error::InvalidParameters(format!("k must be at least 2, got {k}")));
    }
    if eps <= T::zero() || eps >= h {
        return Err(Error::InvalidParameters(format!("eps must lie in (0, H_{k}), got {eps}")));
    }
    let names = (0..=k).map(|i| format!("c{i}")).collect();
    let mut voters = vec![VoterSpec {
        name: "n0".into(),
        stake: T::one() / (h - eps),
        approvals: vec![CandidateId(0)],
    }];
    voters.extend((1..=k).map(|j| VoterSpec {
        name: format!("n{j}"),
        stake: T::one(),
        approvals: (1..=j).map(CandidateId).collect(),
    }));
    ElectionInstance::new(k, names, voters)
}

/// Reduction from independent set on cubic graphs: one candidate per
/// vertex, one unit-stake voter per edge approving both endpoints.
///
/// `adjacency[v]` lists the neighbours of vertex `v`.
pub fn gen_cubic_gap<T: Scalar>(adjacency: &[Vec<usize>], k: usize) -> Result<ElectionInstance<T>> {
    let n = adjacency.len();
    for (v, neighbours) in adjacency.iter().enumerate() {
        let mut sorted = neighbours.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != 3 || neighbours.len() != 3 {
            return Err(Error::NotCubic { vertex: v, degree: sorted.len() });
        }
        for &u in &sorted {
            if u >= n || u == v || !adjacency[u].contains(&v) {
                return Err(Error::InvalidParameters(format!("adjacency of vertex {v} is not symmetric")));
            }
        }
    }
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let mut voters = Vec::with_capacity(3 * n / 2);
    for (v, neighbours) in adjacency.iter().enumerate() {
        let mut upper: Vec<usize> = neighbours.iter().copied().filter(|&u| u > v).collect();
        upper.sort_unstable();
        for u in upper {
            voters.push(VoterSpec {
                name: format!("e{v}-{u}"),
                stake: T::one(),
                approvals: vec![CandidateId(v), CandidateId(u)],
            });
        }
    }
    ElectionInstance::new(k, names, voters)
}

/// Small cubic graphs used by tests and examples.
pub mod graphs {
    /// Complete graph on 4 vertices.
    pub fn k4() -> Vec<Vec<usize>> {
        (0..4).map(|v| (0..4).filter(|&u| u != v).collect()).collect()
    }

    /// Complete bipartite graph `K_{3,3}`; sides `{0,1,2}` and `{3,4,5}`.
    pub fn k33() -> Vec<Vec<usize>> {
        (0..6)
            .map(|v| if v < 3 { vec![3, 4, 5] } else { vec![0, 1, 2] })
            .collect()
    }

    /// Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Vec<Vec<usize>> {
        (0..10)
            .map(|v| {
                if v < 5 {
                    vec![(v + 1) % 5, (v + 4) % 5, v + 5]
                } else {
                    let i = v - 5;
                    vec![5 + (i + 2) % 5, 5 + (i + 3) % 5, i]
                }
            })
            .collect()
    }
}

/// Stake distribution for [`gen_random`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StakeDist {
    Unit,
    Uniform { low: f64, high: f64 },
    Pareto { shape: f64 },
}

impl FromStr for StakeDist {
    type Err = Error;

    /// `unit`, `uniform:LOW:HIGH` or `pareto:SHAPE`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.parse::<f64>()
                .map_err(|_| Error::InvalidParameters(format!("bad stake distribution {s}")))
        };
        match parts.as_slice() {
            ["unit"] => Ok(StakeDist::Unit),
            ["uniform", lo, hi] => Ok(StakeDist::Uniform { low: num(lo)?, high: num(hi)? }),
            ["pareto", shape] => Ok(StakeDist::Pareto { shape: num(shape)? }),
            _ => Err(Error::InvalidParameters(format!("bad stake distribution {s}"))),
        }
    }
}

impl fmt::Display for StakeDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StakeDist::Unit => write!(f, "unit"),
            StakeDist::Uniform { low, high } => write!(f, "uniform:{low}:{high}"),
            StakeDist::Pareto { shape } => write!(f, "pareto:{shape}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomParams {
    pub voters: usize,
    pub candidates: usize,
    pub k: usize,
    pub approval_prob: f64,
    pub stake: StakeDist,
    pub seed: u64,
}

impl RandomParams {
    pub fn new(voters: usize, candidates: usize, k: usize, approval_prob: f64, stake: StakeDist, seed: u64) -> Self {
        RandomParams { voters, candidates, k, approval_prob, stake, seed }
    }
}

const MAX_ATTEMPTS: usize = 10_000;

/// Random instance with independent approvals.
///
/// Stakes are drawn from the requested distribution and quantized to
/// multiples of 0.001 (at least 0.001), so the same seed yields the same
/// instance in every arithmetic. Voters without approvals are redrawn; if
/// some candidate ends up unapproved the whole approval matrix is redrawn.
pub fn gen_random<T: Scalar>(params: &RandomParams) -> Result<ElectionInstance<T>> {
    let RandomParams { voters, candidates, k, approval_prob, stake, .. } = *params;
    if !(approval_prob > 0.0 && approval_prob <= 1.0) {
        return Err(Error::InvalidParameters(format!("approval probability {approval_prob} not in (0, 1]")));
    }
    if voters == 0 || k == 0 || k >= candidates {
        return Err(Error::InvalidParameters(format!(
            "need voters > 0 and 0 < k < candidates, got {voters}, {k}, {candidates}"
        )));
    }
    match stake {
        StakeDist::Uniform { low, high } if !(low > 0.0 && high > low) => {
            return Err(Error::InvalidParameters(format!("uniform stakes need 0 < low < high, got {low}, {high}")))
        }
        StakeDist::Pareto { shape } if shape <= 0.0 => {
            return Err(Error::InvalidParameters(format!("pareto shape must be positive, got {shape}")))
        }
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let stakes: Vec<T> = (0..voters)
        .map(|_| {
            let raw: f64 = match stake {
                StakeDist::Unit => 1.0,
                StakeDist::Uniform { low, high } => rng.random_range(low..high),
                StakeDist::Pareto { shape } => Pareto::new(1.0, shape).expect("valid pareto").sample(&mut rng),
            };
            let milli = (raw * 1000.0).round().max(1.0);
            T::parse_str(&format!("{}/1000", milli as u64)).expect("quantized stake parses")
        })
        .collect();
    for _ in 0..MAX_ATTEMPTS {
        let mut rows: Vec<Vec<CandidateId>> = Vec::with_capacity(voters);
        for _ in 0..voters {
            let row = loop {
                let row: Vec<CandidateId> = (0..candidates)
                    .filter(|_| rng.random_bool(approval_prob))
                    .map(CandidateId)
                    .collect();
                if !row.is_empty() {
                    break row;
                }
            };
            rows.push(row);
        }
        let mut covered = vec![false; candidates];
        rows.iter().flatten().for_each(|c| covered[c.0] = true);
        if covered.iter().all(|&b| b) {
            let names = (0..candidates).map(|i| format!("c{i}")).collect();
            let specs = rows
                .into_iter()
                .zip(stakes)
                .enumerate()
                .map(|(j, (approvals, stake))| VoterSpec { name: format!("n{j}"), stake, approvals })
                .collect();
            return ElectionInstance::new(k, names, specs);
        }
    }
    Err(Error::InvalidParameters(format!(
        "could not cover all {candidates} candidates with {voters} voters at p={approval_prob}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{parse_instance, VoterId};
    use crate::scalar::Rational;

    #[test]
    fn worstcase_k4() {
        let inst = gen_phragmen_worstcase::<f64>(4, 0.1).unwrap();
        assert_eq!((inst.num_voters(), inst.num_candidates(), inst.k()), (5, 5, 4));
        let s0 = *inst.stake(VoterId(0));
        assert!((s0 - 1.0 / (25.0 / 12.0 - 0.1)).abs() < 1e-12);
        assert!((s0 - 0.504202).abs() < 1e-6);
        assert_eq!(inst.approvals(VoterId(3)), &[CandidateId(1), CandidateId(2), CandidateId(3)]);
    }

    #[test]
    fn worstcase_k2_exact() {
        let inst = gen_phragmen_worstcase::<Rational>(2, Rational::from_ratio(1, 2)).unwrap();
        assert_eq!(*inst.stake(VoterId(0)), Rational::from_ratio(1, 1));
        assert!(gen_phragmen_worstcase::<f64>(1, 0.1).is_err());
        assert!(gen_phragmen_worstcase::<f64>(2, 1.5).is_err());
    }

    #[test]
    fn worstcase_total_stake() {
        for k in [2, 3, 7, 12] {
            let eps = Rational::from_ratio(1, 100);
            let inst = gen_phragmen_worstcase::<Rational>(k, eps.clone()).unwrap();
            let expected = Rational::from_usize(k) + Rational::from_ratio(1, 1) / (harmonic::<Rational>(k) - eps);
            assert_eq!(inst.total_stake(), expected);
        }
    }

    #[test]
    fn cubic_graphs() {
        let inst = gen_cubic_gap::<f64>(&graphs::k4(), 2).unwrap();
        assert_eq!((inst.num_voters(), inst.num_candidates()), (6, 4));
        for c in inst.candidates() {
            assert_eq!(inst.candidate_edges(c).len(), 3);
        }
        assert_eq!(gen_cubic_gap::<f64>(&graphs::petersen(), 4).unwrap().num_voters(), 15);
        assert_eq!(gen_cubic_gap::<f64>(&graphs::k33(), 2).unwrap().num_voters(), 9);
        let square = vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![2, 0]];
        assert_eq!(gen_cubic_gap::<f64>(&square, 1).unwrap_err(), Error::NotCubic { vertex: 0, degree: 2 });
    }

    #[test]
    fn random_complete_when_p_is_one() {
        let inst = gen_random::<f64>(&RandomParams::new(4, 3, 2, 1.0, StakeDist::Unit, 99)).unwrap();
        assert_eq!(inst.num_edges(), 12);
        assert!(inst.stakes().iter().all(|&s| s == 1.0));
    }

    #[test]
    fn random_is_deterministic() {
        let p = RandomParams::new(6, 5, 3, 0.5, StakeDist::Unit, 7);
        let a = gen_random::<f64>(&p).unwrap().to_canonical_json();
        let b = gen_random::<f64>(&p).unwrap().to_canonical_json();
        assert_eq!(a, b);
    }

    #[test]
    fn random_pareto_round_trips() {
        let p = RandomParams::new(8, 6, 3, 0.4, StakeDist::Pareto { shape: 1.5 }, 1);
        let inst = gen_random::<Rational>(&p).unwrap();
        let text = inst.to_canonical_json();
        let back = parse_instance::<Rational>(&text).unwrap();
        assert_eq!(back.to_canonical_json(), text);
        assert_eq!(back.stakes(), inst.stakes());
    }

    #[test]
    fn random_rejects_bad_parameters() {
        assert!(gen_random::<f64>(&RandomParams::new(4, 3, 2, 0.0, StakeDist::Unit, 1)).is_err());
        assert!(gen_random::<f64>(&RandomParams::new(4, 3, 3, 0.5, StakeDist::Unit, 1)).is_err());
        assert_eq!("uniform:1:10".parse::<StakeDist>().unwrap(), StakeDist::Uniform { low: 1.0, high: 10.0 });
        assert!("gauss".parse::<StakeDist>().is_err());
    }
}
