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


//! Sequential Phragmén with load bookkeeping.

use crate::instance::{CandidateId, ElectionInstance, Solution};
use crate::scalar::Scalar;

/// Sequential Phragmén for weighted voters.
///
/// Each round elects the unelected candidate of least load
/// `(1 + Σ s_n load(n)) / Σ s_n` over its approvers and raises their loads
/// to it. The edge weights are the load increments, rescaled at the end by
/// `s_n / load(n)` so that each voter spends exactly its stake.
pub fn seq_phragmen<T: Scalar>(instance: &ElectionInstance<T>) -> Solution<T> {
    let mut load = vec![T::zero(); instance.num_voters()];
    let mut w = vec![T::zero(); instance.num_edges()];
    let mut elected = vec![false; instance.num_candidates()];
    let mut committee = Vec::with_capacity(instance.k());
    for _ in 0..instance.k() {
        let mut best: Option<(CandidateId, T)> = None;
        for c in instance.candidates().filter(|c| !elected[c.0]) {
            let (mut stake, mut weighted) = (T::zero(), T::zero());
            for &e in instance.candidate_edges(c) {
                let v = instance.edge_voter(e);
                stake += instance.stake(v).clone();
                weighted += instance.stake(v).clone() * load[v.0].clone();
            }
            let value = (T::one() + weighted) / stake;
            if best.as_ref().is_none_or(|(_, b)| value < *b) {
                best = Some((c, value));
            }
        }
        let (c, value) = best.expect("an unelected candidate exists");
        for &e in instance.candidate_edges(c) {
            let v = instance.edge_voter(e);
            w[e] = value.clone() - load[v.0].clone();
            load[v.0] = value.clone();
        }
        elected[c.0] = true;
        committee.push(c);
    }
    for v in instance.voters() {
        if load[v.0] > T::zero() {
            let factor = instance.stake(v).clone() / load[v.0].clone();
            for e in instance.voter_edges(v) {
                if w[e] > T::zero() {
                    w[e] = w[e].clone() * factor.clone();
                }
            }
        }
    }
    Solution::new(instance, committee, w)
}
