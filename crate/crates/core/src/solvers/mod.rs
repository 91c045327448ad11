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


//! Committee election algorithms and the local-search post-processor.
//!
//! Every solver returns a full, feasible [`Solution`]. Argmax and argmin
//! ties go to the lowest candidate id.

mod lazy;
mod local;
mod phragmen;

pub use lazy::{lazy_mms, lazy_mms_search, LazyFailure, LazySearch};
pub use local::{ls_pjr, LocalSearch};
pub use phragmen::seq_phragmen;

use crate::balancing::{balance_with_warm_start, balanced_solution};
use crate::instance::{CandidateId, ElectionInstance, Solution};
use crate::phragmms::{insert, max_score};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// Greedy maximin support: in each round, balance `A + c` for every
/// unelected `c` and keep the one whose least member support is highest.
pub fn mms<T: Scalar>(instance: &ElectionInstance<T>) -> Solution<T> {
    let mut solution = Solution::empty(instance);
    for _ in 0..instance.k() {
        let trials: Vec<(CandidateId, Solution<T>)> = instance
            .candidates()
            .filter(|&c| !solution.contains(c))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|c| {
                let mut committee = solution.committee().to_vec();
                committee.push(c);
                (c, balanced_solution(instance, &committee))
            })
            .collect();
        let mut best: Option<(CandidateId, Solution<T>, T)> = None;
        for (c, sol) in trials {
            let value = sol.objective().expect("nonempty committee");
            if best.as_ref().is_none_or(|(_, _, b)| value > *b) {
                best = Some((c, sol, value));
            }
        }
        solution = best.expect("an unelected candidate exists").1;
    }
    solution
}

/// Balanced Phragmms: `k` rounds of inserting the candidate of highest score
/// at its score and rebalancing from the inserted vector.
pub fn balanced_phragmms<T: Scalar>(instance: &ElectionInstance<T>) -> Solution<T> {
    let mut solution = Solution::empty(instance);
    for _ in 0..instance.k() {
        solution = phragmms_step(instance, &solution, None).expect("an unelected candidate exists");
    }
    solution
}

/// One round: highest-score candidate among `eligible` (default: all
/// unelected), inserted at its score, then rebalanced.
pub(crate) fn phragmms_step<T: Scalar>(
    instance: &ElectionInstance<T>,
    solution: &Solution<T>,
    eligible: Option<&[bool]>,
) -> crate::Result<Solution<T>> {
    let best = match eligible {
        Some(e) => crate::phragmms::max_score_among(instance, solution, e)?,
        None => max_score(instance, solution)?,
    };
    Ok(insert_and_balance(instance, solution, best.candidate, &best.value))
}

pub(crate) fn insert_and_balance<T: Scalar>(
    instance: &ElectionInstance<T>,
    solution: &Solution<T>,
    candidate: CandidateId,
    t: &T,
) -> Solution<T> {
    let inserted = insert(instance, solution, candidate, t).expect("candidate is unelected");
    let committee = inserted.committee().to_vec();
    let w = balance_with_warm_start(instance, &committee, Some(inserted.weights()));
    Solution::new(instance, committee, w)
}
