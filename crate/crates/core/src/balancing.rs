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


//! Balanced weight vectors for a fixed committee.
//!
//! A feasible weight vector is balanced when it maximizes the sum of member
//! supports and, among those, minimizes the sum of squared supports. The
//! balanced supports are unique; they are characterized by two local
//! conditions checked by [`is_balanced`]:
//!
//! * every voter approving some member spends its whole stake on members;
//! * every positive edge `nc` goes to a member of least support among the
//!   members `n` approves.

use crate::error::{Error, Result};
use crate::flowcore::{neighbourhood_stake, support_flow};
use crate::instance::{CandidateId, ElectionInstance, Solution, VoterId, WeightVector};
use crate::scalar::{approx_eq, approx_le, definitely_lt, Scalar};

/// Total stake of the active voters approving some candidate in `members`.
fn active_stake<T: Scalar>(instance: &ElectionInstance<T>, members: &[CandidateId], active: &[bool]) -> T {
    let mut seen = vec![false; instance.num_voters()];
    let mut total = T::zero();
    for &c in members {
        for &e in instance.candidate_edges(c) {
            let v = instance.edge_voter(e);
            if active[v.0] && !seen[v.0] {
                seen[v.0] = true;
                total += instance.stake(v).clone();
            }
        }
    }
    total
}

/// Balanced weight vector for `committee`.
pub fn balance<T: Scalar>(instance: &ElectionInstance<T>, committee: &[CandidateId]) -> WeightVector<T> {
    balance_with_warm_start(instance, committee, None)
}

/// [`balance`] with a feasible starting vector that seeds each max-flow.
///
/// The committee is peeled into levels. For the remaining members `R` the
/// smallest ratio `stake(N(R')) / |R'|` over `R' ⊆ R` is found by repeatedly
/// taking the minimum cut of a max-flow at the current ratio. The members on
/// the sink side at the optimum form the tight level: they all receive that
/// ratio as support, their approvers are used up, and the rest of the
/// committee is balanced recursively on the remaining voters.
pub fn balance_with_warm_start<T: Scalar>(
    instance: &ElectionInstance<T>,
    committee: &[CandidateId],
    warm: Option<&[T]>,
) -> WeightVector<T> {
    let mut w = vec![T::zero(); instance.num_edges()];
    let mut active = vec![true; instance.num_voters()];
    let mut rest: Vec<CandidateId> = committee.to_vec();
    while !rest.is_empty() {
        let mut t = active_stake(instance, &rest, &active) / T::from_usize(rest.len());
        let mut run = support_flow(instance, &rest, &t, &active, warm);
        loop {
            let target = T::from_usize(rest.len()) * t.clone();
            if approx_le(&target, &run.value) {
                break;
            }
            let cut: Vec<CandidateId> = rest
                .iter()
                .zip(&run.sink_side)
                .filter(|(_, &s)| s)
                .map(|(&c, _)| c)
                .collect();
            if cut.is_empty() {
                break;
            }
            let ratio = active_stake(instance, &cut, &active) / T::from_usize(cut.len());
            let progress = definitely_lt(&ratio, &t);
            t = ratio;
            run = support_flow(instance, &rest, &t, &active, warm);
            if !progress {
                break;
            }
        }
        let mut level: Vec<bool> = run.sink_side.clone();
        if !level.iter().any(|&b| b) {
            level = vec![true; rest.len()];
        }
        let in_level: Vec<CandidateId> = rest.iter().zip(&level).filter(|(_, &b)| b).map(|(&c, _)| c).collect();
        for &c in &in_level {
            for &e in instance.candidate_edges(c) {
                if active[instance.edge_voter(e).0] {
                    w[e] = run.weights[e].clone();
                }
            }
        }
        for &c in &in_level {
            for &e in instance.candidate_edges(c) {
                active[instance.edge_voter(e).0] = false;
            }
        }
        rest = rest.iter().zip(&level).filter(|(_, &b)| !b).map(|(&c, _)| c).collect();
    }
    w
}

/// Balanced solution for `committee`.
pub fn balanced_solution<T: Scalar>(instance: &ElectionInstance<T>, committee: &[CandidateId]) -> Solution<T> {
    Solution::new(instance, committee.to_vec(), balance(instance, committee))
}

/// Why a solution fails the balancedness conditions.
#[derive(Clone, Debug, PartialEq)]
pub enum BalanceWitness<T: Scalar> {
    /// The voter approves a member but does not spend all its stake on
    /// members.
    Underspent { voter: VoterId, spent: T, stake: T },
    /// The voter puts weight on `candidate` although it also approves a
    /// member with lower support.
    UnbalancedEdge { voter: VoterId, candidate: CandidateId, support: T, min_support: T },
}

/// Checks the two balancedness conditions in one pass over the edges.
/// The solution is assumed feasible.
pub fn is_balanced<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> Result<(), BalanceWitness<T>> {
    let slot = instance.membership(solution.committee());
    let supports = solution.supports();
    let w = solution.weights();
    for v in instance.voters() {
        let mut spent = T::zero();
        let mut least: Option<T> = None;
        for e in instance.voter_edges(v) {
            if let Some(i) = slot[instance.edge_candidate(e).0] {
                spent += w[e].clone();
                if least.as_ref().is_none_or(|m| supports[i] < *m) {
                    least = Some(supports[i].clone());
                }
            }
        }
        let Some(least) = least else { continue };
        let stake = instance.stake(v);
        if definitely_lt(&spent, stake) {
            return Err(BalanceWitness::Underspent { voter: v, spent, stake: stake.clone() });
        }
        let negligible = T::tolerance(stake);
        for e in instance.voter_edges(v) {
            let c = instance.edge_candidate(e);
            if let Some(i) = slot[c.0] {
                if w[e] > negligible && !approx_eq(&supports[i], &least) {
                    return Err(BalanceWitness::UnbalancedEdge {
                        voter: v,
                        candidate: c,
                        support: supports[i].clone(),
                        min_support: least,
                    });
                }
            }
        }
    }
    Ok(())
}

/// `min over nonempty A' ⊆ A of stake(N(A')) / |A'|` by enumeration of all
/// subsets. Limited to committees of at most 20 members.
pub fn maximin_over_subsets<T: Scalar>(instance: &ElectionInstance<T>, committee: &[CandidateId]) -> Result<T> {
    let k = committee.len();
    if k == 0 || k > 20 {
        return Err(Error::TooLarge(format!("subset enumeration over {k} members")));
    }
    let slot = instance.membership(committee);
    let masks: Vec<(u32, T)> = instance
        .voters()
        .filter_map(|v| {
            let m = instance
                .approvals(v)
                .iter()
                .filter_map(|c| slot[c.0])
                .fold(0u32, |m, i| m | (1 << i));
            (m != 0).then(|| (m, instance.stake(v).clone()))
        })
        .collect();
    let mut best: Option<T> = None;
    for subset in 1u32..(1u32 << k) {
        let stake: T = masks.iter().filter(|(m, _)| m & subset != 0).map(|(_, s)| s.clone()).sum();
        let ratio = stake / T::from_usize(subset.count_ones() as usize);
        if best.as_ref().is_none_or(|b| ratio < *b) {
            best = Some(ratio);
        }
    }
    Ok(best.expect("at least one subset"))
}

/// `stake(N(A)) / |A|` for a single subset, exposed for witnesses.
pub fn subset_ratio<T: Scalar>(instance: &ElectionInstance<T>, members: &[CandidateId]) -> T {
    neighbourhood_stake(instance, members) / T::from_usize(members.len())
}
