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


//! Threshold-driven lazy greedy and the geometric search over thresholds.

use super::{balanced_phragmms, insert_and_balance};
use crate::instance::{ElectionInstance, Solution};
use crate::phragmms::max_score_among;
use crate::scalar::{approx_le, Scalar};

/// A lazy run that ran out of candidates before filling the committee.
#[derive(Clone, Debug, PartialEq)]
pub struct LazyFailure<T: Scalar> {
    pub partial: Solution<T>,
    pub threshold: T,
}

/// Inspects candidates in decreasing order of current score, each exactly
/// once, and keeps a candidate when the balanced committee with it still
/// has least support at least `t`.
///
/// Inspection uses the same insert-then-rebalance step as
/// [`balanced_phragmms`](super::balanced_phragmms), so with `t = 0` both
/// follow the same trajectory.
pub fn lazy_mms<T: Scalar>(instance: &ElectionInstance<T>, t: &T) -> Result<Solution<T>, LazyFailure<T>> {
    let mut solution = Solution::empty(instance);
    let mut uninspected = vec![true; instance.num_candidates()];
    while uninspected.iter().any(|&u| u) {
        let best = max_score_among(instance, &solution, &uninspected).expect("an uninspected candidate exists");
        uninspected[best.candidate.0] = false;
        let trial = insert_and_balance(instance, &solution, best.candidate, &best.value);
        if approx_le(t, &trial.objective().expect("nonempty committee")) {
            solution = trial;
            if solution.is_full(instance) {
                return Ok(solution);
            }
        }
    }
    Err(LazyFailure { partial: solution, threshold: t.clone() })
}

/// Outcome of [`lazy_mms_search`].
#[derive(Clone, Debug, PartialEq)]
pub struct LazySearch<T: Scalar> {
    pub solution: Solution<T>,
    /// Number of [`lazy_mms`] runs.
    pub trials: usize,
    /// Highest threshold that succeeded.
    pub lower: T,
    /// Lowest threshold known or assumed to fail.
    pub upper: T,
}

/// Geometric bisection over the threshold of [`lazy_mms`], seeded by the
/// Balanced Phragmms objective `t`: starts from the bracket `[t/2, 3.15 t]`
/// and stops once `upper / lower <= 1 + eps/2`.
///
/// Returns the successful run of largest objective, which is at least the
/// final lower threshold.
pub fn lazy_mms_search<T: Scalar>(instance: &ElectionInstance<T>, eps: &T) -> LazySearch<T> {
    let seed = balanced_phragmms(instance);
    let t = seed.objective().expect("nonempty committee");
    let mut lower = t.clone() / T::from_usize(2);
    let mut upper = t.clone() * T::from_ratio(315, 100);
    let mut trials = 0;
    let mut best = seed;
    let keep = |candidate: Solution<T>, best: &mut Solution<T>| {
        if candidate.objective() >= best.objective() {
            *best = candidate;
        }
    };
    if t <= T::zero() {
        return LazySearch { solution: best, trials, lower, upper };
    }
    trials += 1;
    match lazy_mms(instance, &lower) {
        Ok(sol) => keep(sol, &mut best),
        Err(_) => lower = T::zero(),
    }
    let stop = T::one() + eps.clone() / T::from_usize(2);
    while lower > T::zero() && upper.clone() > lower.clone() * stop.clone() {
        let mid = T::from_f64((lower.to_f64() * upper.to_f64()).sqrt());
        if mid <= lower || mid >= upper {
            break;
        }
        trials += 1;
        match lazy_mms(instance, &mid) {
            Ok(sol) => {
                lower = mid;
                keep(sol, &mut best);
            }
            Err(_) => upper = mid,
        }
    }
    LazySearch { solution: best, trials, lower, upper }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_phragmen_worstcase, CandidateId};
    use crate::scalar::Rational;

    #[test]
    fn zero_threshold_matches_balanced() {
        let inst = gen_phragmen_worstcase::<Rational>(4, Rational::from_ratio(1, 10)).unwrap();
        assert_eq!(lazy_mms(&inst, &Rational::from_usize(0)).unwrap(), balanced_phragmms(&inst));
    }

    #[test]
    fn threshold_outcomes() {
        let inst = gen_phragmen_worstcase::<Rational>(4, Rational::from_ratio(1, 10)).unwrap();
        let sol = lazy_mms(&inst, &Rational::from_ratio(9, 10)).unwrap();
        let mut ids: Vec<_> = sol.committee().to_vec();
        ids.sort();
        assert_eq!(ids, (1..=4).map(CandidateId).collect::<Vec<_>>());
        let too_high = inst.pjr_threshold() + Rational::from_ratio(1, 100);
        assert!(lazy_mms(&inst, &too_high).is_err());
    }

    #[test]
    fn search_trial_budget() {
        let inst = gen_phragmen_worstcase::<f64>(6, 0.2).unwrap();
        let out = lazy_mms_search(&inst, &0.01);
        assert!(out.trials <= 25);
        assert!(out.solution.objective().unwrap() >= out.lower - 1e-9);
        assert!((out.solution.objective().unwrap() - 1.0).abs() < 1e-9);
    }
}
