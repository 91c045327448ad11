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


//! Exhaustive ground truth for small instances.
//!
//! Every routine converts its input to exact rationals first, so results do
//! not depend on floating-point tolerances. Used by the acceptance suite and
//! by the `oracle` subcommand.

use crate::error::{Error, Result};
use crate::flowcore::{max_support_flow, neighbourhood_stake, FloorCheck};
use crate::instance::{CandidateId, ElectionInstance, Solution, VoterId};
use crate::scalar::{Rational, Scalar};
use itertools::Itertools;
use num::traits::{One, Zero};
use rayon::prelude::*;

/// Largest number of committees [`opt_maximin`] will enumerate.
pub const MAX_COMMITTEES: u128 = 1_000_000;
/// Largest voter count [`check_pjr_exact`] will enumerate subsets of.
pub const MAX_PJR_VOTERS: usize = 16;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Best least support of `committee` over all feasible weight vectors.
///
/// Starts from the ratio of the whole committee and repeatedly drops to the
/// ratio `stake(N(S)) / |S|` of the sub-committee `S` cut off by the
/// max-flow, until the flow certifies the floor.
pub fn committee_value(instance: &ElectionInstance<Rational>, committee: &[CandidateId]) -> Rational {
    if committee.is_empty() {
        return Rational::zero();
    }
    let mut t = neighbourhood_stake(instance, committee) / Rational::from_usize(committee.len());
    loop {
        match max_support_flow(instance, committee, &t) {
            FloorCheck::Feasible(_) => return t,
            FloorCheck::Infeasible { sub_committee, stake, .. } => {
                let next = stake / Rational::from_usize(sub_committee.len());
                assert!(next < t, "cut ratio did not decrease");
                t = next;
            }
        }
    }
}

/// Maximum over all k-committees of the best least support, with the
/// lexicographically first optimal committee.
pub fn opt_maximin<T: Scalar>(instance: &ElectionInstance<T>) -> Result<(Rational, Vec<CandidateId>)> {
    let count = binomial(instance.num_candidates(), instance.k());
    if count > MAX_COMMITTEES {
        return Err(Error::TooLarge(format!("{count} committees")));
    }
    let exact: ElectionInstance<Rational> = instance.convert();
    let committees: Vec<Vec<CandidateId>> = exact.candidates().combinations(exact.k()).collect();
    let values: Vec<Rational> = committees.par_iter().map(|a| committee_value(&exact, a)).collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    Ok((values[best].clone(), committees[best].clone()))
}

/// A group of voters that deserves `r` members under t-PJR but gets fewer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PjrViolation {
    pub voters: Vec<VoterId>,
    pub r: usize,
}

/// Exact t-PJR check by enumerating voter groups.
///
/// A group `N'` with `r <= |A|` violates t-PJR when its stake is at least
/// `r * t`, its members share at least `r` approved candidates, and fewer
/// than `r` committee members are approved by anyone in it. The witness
/// is the violation with the largest `r`, then the largest group, then the
/// lowest voter ids.
pub fn check_pjr_exact<T: Scalar>(
    instance: &ElectionInstance<T>,
    committee: &[CandidateId],
    t: &T,
) -> Result<Option<PjrViolation>> {
    let n = instance.num_voters();
    if n > MAX_PJR_VOTERS {
        return Err(Error::TooLarge(format!("{n} voters")));
    }
    if instance.num_candidates() > 128 {
        return Err(Error::TooLarge(format!("{} candidates", instance.num_candidates())));
    }
    let t = t.to_rational();
    let stakes: Vec<Rational> = instance.stakes().iter().map(Scalar::to_rational).collect();
    let ballots: Vec<u128> = instance
        .voters()
        .map(|v| instance.approvals(v).iter().fold(0u128, |m, c| m | 1 << c.0))
        .collect();
    let elected = committee.iter().fold(0u128, |m, c| m | 1 << c.0);
    let size = committee.len();

    let mut best: Option<(usize, u32, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let members = (0..n).filter(|i| mask >> i & 1 == 1);
        let mut common = u128::MAX;
        let mut any = 0u128;
        let mut stake = Rational::zero();
        for i in members {
            common &= ballots[i];
            any |= ballots[i];
            stake += stakes[i].clone();
        }
        let represented = (any & elected).count_ones() as usize;
        let mut r = (common.count_ones() as usize).min(size);
        if t > Rational::zero() {
            let affordable = (stake / t.clone()).floor().to_integer();
            r = r.min(usize::try_from(affordable).unwrap_or(usize::MAX));
        }
        if r > represented {
            let key = (r, mask.count_ones(), mask);
            let better = match best {
                None => true,
                Some((br, bs, _)) => (r, key.1) > (br, bs),
            };
            if better {
                best = Some(key);
            }
        }
    }
    Ok(best.map(|(r, _, mask)| PjrViolation {
        voters: (0..n).filter(|i| mask >> i & 1 == 1).map(VoterId).collect(),
        r,
    }))
}

/// Score of `candidate` by bisection on `prescore(candidate, t) - t`,
/// recomputing slacks from scratch at every probe.
///
/// The result is within `1e-12 * max(1, score)` of the exact score.
pub fn score_by_rootfind<T: Scalar>(
    instance: &ElectionInstance<T>,
    solution: &Solution<T>,
    candidate: CandidateId,
) -> Rational {
    let exact: ElectionInstance<Rational> = instance.convert();
    let weights: Vec<Rational> = solution.weights().iter().map(Scalar::to_rational).collect();
    let mut support: Vec<Option<Rational>> = vec![None; exact.num_candidates()];
    for c in solution.committee() {
        support[c.0] = Some(Rational::zero());
    }
    for e in 0..exact.num_edges() {
        if let Some(s) = &mut support[exact.edge_candidate(e).0] {
            *s += weights[e].clone();
        }
    }
    let approvers: Vec<VoterId> = exact.candidate_edges(candidate).iter().map(|&e| exact.edge_voter(e)).collect();
    let gap = |t: &Rational| -> Rational {
        let mut total = Rational::zero();
        for &v in &approvers {
            let mut left = exact.stake(v).clone();
            for e in exact.voter_edges(v) {
                if let Some(s) = &support[exact.edge_candidate(e).0] {
                    if !weights[e].is_zero() {
                        left -= if s <= t { weights[e].clone() } else { weights[e].clone() * t / s };
                    }
                }
            }
            total += left;
        }
        total - t
    };
    let mut lo = Rational::zero();
    let mut hi = exact.approval_stake(candidate);
    if gap(&hi) >= Rational::zero() {
        return hi;
    }
    let two = Rational::from_usize(2);
    let resolution = Rational::new(1.into(), 10u64.pow(13).into());
    while hi.clone() - lo.clone() > resolution.clone() * (Rational::one() + hi.clone()) {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if gap(&mid) >= Rational::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
