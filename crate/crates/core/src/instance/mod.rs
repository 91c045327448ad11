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

//! Election instances, solutions, their JSON formats and synthetic
//! generators.
//!
//! An instance is a bipartite approval graph between voters and candidates,
//! a positive stake per voter and a committee size `k`. Voters and
//! candidates are addressed by dense 0-based ids; the original names are kept
//! in a side table. Edges are numbered voter-major, with the approvals of a
//! voter sorted by candidate id, so that a weight vector is a plain slice
//! indexed by [`EdgeId`].
//!
//! Identifier order is the global tie-break order: every argmax or argmin in
//! the crate returns the lowest id among equal values.

mod generate;
mod json;

pub use generate::{
    gen_cubic_gap, gen_phragmen_worstcase, gen_random, graphs, harmonic, RandomParams, StakeDist,
};
pub use json::{
    parse_instance, solution_from_file, solution_to_file, InstanceFile, SolutionFile,
    SupportEntry, VoterEntry, WeightEntry,
};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoterId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateId(pub usize);

/// Index of an approval edge.
pub type EdgeId = usize;

/// Per-edge nonnegative vote assignment, indexed by [`EdgeId`].
pub type WeightVector<T> = Vec<T>;

impl VoterId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VoterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n#{}", self.0)
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c#{}", self.0)
    }
}

/// Voter description used to build an instance.
#[derive(Clone, Debug)]
pub struct VoterSpec<T> {
    pub name: String,
    pub stake: T,
    pub approvals: Vec<CandidateId>,
}

/// A validated approval-based committee election.
#[derive(Clone, Debug)]
pub struct ElectionInstance<T: Scalar = f64> {
    k: usize,
    candidate_names: Vec<String>,
    voter_names: Vec<String>,
    stakes: Vec<T>,
    voter_offsets: Vec<usize>,
    edge_candidate: Vec<CandidateId>,
    edge_voter: Vec<VoterId>,
    candidate_edges: Vec<Vec<EdgeId>>,
    candidate_lookup: HashMap<String, CandidateId>,
    voter_lookup: HashMap<String, VoterId>,
}

impl<T: Scalar> ElectionInstance<T> {
    /// Builds and validates an instance.
    ///
    /// Approval lists are deduplicated. Fails on duplicate names, unknown
    /// candidate ids, non-positive stakes, isolated vertices or
    /// `k` outside `0 < k < |C|`.
    pub fn new(k: usize, candidate_names: Vec<String>, voters: Vec<VoterSpec<T>>) -> Result<Self> {
        let num_candidates = candidate_names.len();
        let mut candidate_lookup = HashMap::with_capacity(num_candidates);
        for (i, name) in candidate_names.iter().enumerate() {
            if candidate_lookup.insert(name.clone(), CandidateId(i)).is_some() {
                return Err(Error::DuplicateId(name.clone()));
            }
        }
        let mut voter_lookup = HashMap::with_capacity(voters.len());
        let mut voter_names = Vec::with_capacity(voters.len());
        let mut stakes = Vec::with_capacity(voters.len());
        let mut voter_offsets = Vec::with_capacity(voters.len() + 1);
        let mut edge_candidate = Vec::new();
        let mut edge_voter = Vec::new();
        let mut candidate_edges = vec![Vec::new(); num_candidates];
        voter_offsets.push(0);
        for (j, voter) in voters.into_iter().enumerate() {
            if voter_lookup.insert(voter.name.clone(), VoterId(j)).is_some() {
                return Err(Error::DuplicateId(voter.name));
            }
            if voter.stake <= T::zero() {
                return Err(Error::NonPositiveStake {
                    voter: voter.name,
                    stake: voter.stake.to_string(),
                });
            }
            let mut approvals = voter.approvals;
            approvals.sort_unstable();
            approvals.dedup();
            if approvals.is_empty() {
                return Err(Error::IsolatedVertex(voter.name));
            }
            for c in approvals {
                if c.0 >= num_candidates {
                    return Err(Error::UnknownCandidate(c.to_string()));
                }
                candidate_edges[c.0].push(edge_candidate.len());
                edge_candidate.push(c);
                edge_voter.push(VoterId(j));
            }
            voter_offsets.push(edge_candidate.len());
            voter_names.push(voter.name);
            stakes.push(voter.stake);
        }
        if let Some(c) = candidate_edges.iter().position(|e| e.is_empty()) {
            return Err(Error::IsolatedVertex(candidate_names[c].clone()));
        }
        if k == 0 || k >= num_candidates {
            return Err(Error::KOutOfRange { k, candidates: num_candidates });
        }
        Ok(ElectionInstance {
            k,
            candidate_names,
            voter_names,
            stakes,
            voter_offsets,
            edge_candidate,
            edge_voter,
            candidate_edges,
            candidate_lookup,
            voter_lookup,
        })
    }

    /// Convenience constructor with generated names `c0, c1, ...` and
    /// `n0, n1, ...`.
    pub fn from_approvals(k: usize, num_candidates: usize, voters: Vec<(T, Vec<usize>)>) -> Result<Self> {
        let names = (0..num_candidates).map(|i| format!("c{i}")).collect();
        let voters = voters
            .into_iter()
            .enumerate()
            .map(|(j, (stake, approvals))| VoterSpec {
                name: format!("n{j}"),
                stake,
                approvals: approvals.into_iter().map(CandidateId).collect(),
            })
            .collect();
        Self::new(k, names, voters)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_voters(&self) -> usize {
        self.stakes.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.candidate_names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_candidate.len()
    }

    pub fn voters(&self) -> impl Iterator<Item = VoterId> + '_ {
        (0..self.num_voters()).map(VoterId)
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.num_candidates()).map(CandidateId)
    }

    pub fn stake(&self, v: VoterId) -> &T {
        &self.stakes[v.0]
    }

    pub fn stakes(&self) -> &[T] {
        &self.stakes
    }

    pub fn total_stake(&self) -> T {
        self.stakes.iter().cloned().sum()
    }

    /// Edge ids of a voter, ordered by candidate id.
    pub fn voter_edges(&self, v: VoterId) -> Range<EdgeId> {
        self.voter_offsets[v.0]..self.voter_offsets[v.0 + 1]
    }

    /// Approved candidates of a voter (`C_n`), sorted.
    pub fn approvals(&self, v: VoterId) -> &[CandidateId] {
        &self.edge_candidate[self.voter_edges(v)]
    }

    /// Edge ids of a candidate, ordered by voter id.
    pub fn candidate_edges(&self, c: CandidateId) -> &[EdgeId] {
        &self.candidate_edges[c.0]
    }

    pub fn edge_candidate(&self, e: EdgeId) -> CandidateId {
        self.edge_candidate[e]
    }

    pub fn edge_voter(&self, e: EdgeId) -> VoterId {
        self.edge_voter[e]
    }

    pub fn edge_between(&self, v: VoterId, c: CandidateId) -> Option<EdgeId> {
        let range = self.voter_edges(v);
        let start = range.start;
        self.edge_candidate[range]
            .binary_search(&c)
            .ok()
            .map(|i| start + i)
    }

    /// Total stake of the voters approving `c`.
    pub fn approval_stake(&self, c: CandidateId) -> T {
        self.candidate_edges[c.0]
            .iter()
            .map(|&e| self.stakes[self.edge_voter[e].0].clone())
            .sum()
    }

    /// `Σ s_n / k`, the standard PJR threshold.
    pub fn pjr_threshold(&self) -> T {
        self.total_stake() / T::from_usize(self.k)
    }

    pub fn candidate_name(&self, c: CandidateId) -> &str {
        &self.candidate_names[c.0]
    }

    pub fn voter_name(&self, v: VoterId) -> &str {
        &self.voter_names[v.0]
    }

    pub fn candidate_names(&self) -> &[String] {
        &self.candidate_names
    }

    pub fn candidate_by_name(&self, name: &str) -> Option<CandidateId> {
        self.candidate_lookup.get(name).copied()
    }

    pub fn voter_by_name(&self, name: &str) -> Option<VoterId> {
        self.voter_lookup.get(name).copied()
    }

    /// The same instance over another number type.
    pub fn convert<U: Scalar>(&self) -> ElectionInstance<U> {
        ElectionInstance {
            k: self.k,
            candidate_names: self.candidate_names.clone(),
            voter_names: self.voter_names.clone(),
            stakes: self.stakes.iter().map(|s| U::from_rational(&s.to_rational())).collect(),
            voter_offsets: self.voter_offsets.clone(),
            edge_candidate: self.edge_candidate.clone(),
            edge_voter: self.edge_voter.clone(),
            candidate_edges: self.candidate_edges.clone(),
            candidate_lookup: self.candidate_lookup.clone(),
            voter_lookup: self.voter_lookup.clone(),
        }
    }

    /// Same graph and stakes with a different committee size.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        if k == 0 || k >= self.num_candidates() {
            return Err(Error::KOutOfRange { k, candidates: self.num_candidates() });
        }
        let mut out = self.clone();
        out.k = k;
        Ok(out)
    }

    /// `slot[c]` is the position of `c` in `committee`, if elected.
    pub fn membership(&self, committee: &[CandidateId]) -> Vec<Option<usize>> {
        let mut slot = vec![None; self.num_candidates()];
        for (i, c) in committee.iter().enumerate() {
            slot[c.0] = Some(i);
        }
        slot
    }
}

/// A committee with a weight vector and the cached supports of its members.
///
/// Committees may be partial (`|A| < k`) while an algorithm is running.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<T: Scalar = f64> {
    committee: Vec<CandidateId>,
    weights: WeightVector<T>,
    supports: Vec<T>,
}

impl<T: Scalar> Solution<T> {
    /// Empty committee and zero weights.
    pub fn empty(instance: &ElectionInstance<T>) -> Self {
        Solution {
            committee: Vec::new(),
            weights: vec![T::zero(); instance.num_edges()],
            supports: Vec::new(),
        }
    }

    /// Builds a solution and computes the member supports from `weights`.
    ///
    /// Panics if `weights` does not have one entry per edge.
    pub fn new(instance: &ElectionInstance<T>, committee: Vec<CandidateId>, weights: WeightVector<T>) -> Self {
        assert_eq!(weights.len(), instance.num_edges(), "one weight per edge");
        let supports = compute_supports(instance, &committee, &weights);
        Solution { committee, weights, supports }
    }

    pub fn committee(&self) -> &[CandidateId] {
        &self.committee
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Supports aligned with [`Solution::committee`].
    pub fn supports(&self) -> &[T] {
        &self.supports
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.committee.contains(&c)
    }

    pub fn support_of(&self, c: CandidateId) -> Option<&T> {
        self.committee
            .iter()
            .position(|&m| m == c)
            .map(|i| &self.supports[i])
    }

    /// Least member support, `None` for the empty committee.
    pub fn objective(&self) -> Option<T> {
        self.min_member().map(|(_, t)| t)
    }

    /// Member with least support, lowest id on ties.
    pub fn min_member(&self) -> Option<(CandidateId, T)> {
        self.committee
            .iter()
            .zip(&self.supports)
            .fold(None, |best: Option<(CandidateId, &T)>, (&c, s)| match best {
                Some((bc, bs)) if *bs < *s || (*bs == *s && bc < c) => Some((bc, bs)),
                _ => Some((c, s)),
            })
            .map(|(c, s)| (c, s.clone()))
    }

    pub fn is_full(&self, instance: &ElectionInstance<T>) -> bool {
        self.committee.len() == instance.k()
    }

    /// Number of edges carrying positive weight (`|E_w|`).
    pub fn positive_edges(&self) -> usize {
        self.weights.iter().filter(|w| **w > T::zero()).count()
    }

    /// Stake the voter assigns over all its edges.
    pub fn voter_spent(&self, instance: &ElectionInstance<T>, v: VoterId) -> T {
        instance.voter_edges(v).map(|e| self.weights[e].clone()).sum()
    }

    pub fn into_parts(self) -> (Vec<CandidateId>, WeightVector<T>) {
        (self.committee, self.weights)
    }
}

/// `supp_w(c) = Σ_{n ∈ N_c} w_nc` for each member, aligned with `committee`.
pub fn compute_supports<T: Scalar>(instance: &ElectionInstance<T>, committee: &[CandidateId], weights: &[T]) -> Vec<T> {
    committee
        .iter()
        .map(|&c| {
            instance
                .candidate_edges(c)
                .iter()
                .map(|&e| weights[e].clone())
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ElectionInstance<f64> {
        ElectionInstance::from_approvals(1, 2, vec![(4.0, vec![1, 0, 0]), (2.0, vec![1])]).unwrap()
    }

    #[test]
    fn approvals_are_sorted_and_deduplicated() {
        let inst = toy();
        assert_eq!(inst.num_edges(), 3);
        assert_eq!(inst.approvals(VoterId(0)), &[CandidateId(0), CandidateId(1)]);
        assert_eq!(inst.candidate_edges(CandidateId(1)), &[1, 2]);
        assert_eq!(inst.edge_between(VoterId(1), CandidateId(1)), Some(2));
        assert_eq!(inst.edge_between(VoterId(1), CandidateId(0)), None);
        assert_eq!(inst.approval_stake(CandidateId(1)), 6.0);
    }

    #[test]
    fn validation_errors() {
        let err = ElectionInstance::<f64>::from_approvals(2, 2, vec![(1.0, vec![0, 1])]).unwrap_err();
        assert_eq!(err, Error::KOutOfRange { k: 2, candidates: 2 });
        let err = ElectionInstance::<f64>::from_approvals(1, 3, vec![(1.0, vec![0, 1])]).unwrap_err();
        assert_eq!(err, Error::IsolatedVertex("c2".into()));
        let err = ElectionInstance::<f64>::from_approvals(1, 2, vec![(0.0, vec![0, 1])]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveStake { .. }));
        let err = ElectionInstance::<f64>::from_approvals(1, 2, vec![(1.0, vec![0, 1]), (1.0, vec![])]).unwrap_err();
        assert_eq!(err, Error::IsolatedVertex("n1".into()));
    }

    #[test]
    fn solution_supports_and_objective() {
        let inst = toy();
        let sol = Solution::new(&inst, vec![CandidateId(1), CandidateId(0)], vec![3.0, 1.0, 2.0]);
        assert_eq!(sol.supports(), &[3.0, 3.0]);
        assert_eq!(sol.min_member(), Some((CandidateId(0), 3.0)));
        assert_eq!(sol.positive_edges(), 3);
        assert_eq!(sol.voter_spent(&inst, VoterId(0)), 4.0);
        assert_eq!(Solution::empty(&inst).objective(), None);
    }
}
