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


//! Local search that swaps out the weakest member until no candidate scores
//! high enough, giving a certificate for proportional representation.

use crate::instance::{ElectionInstance, Solution};
use crate::phragmms::{insert, max_score};
use crate::scalar::{definitely_lt, min_of, Scalar};

/// Outcome of [`ls_pjr`].
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSearch<T: Scalar> {
    pub solution: Solution<T>,
    /// Number of stopping-condition checks, including the final one.
    pub iterations: usize,
}

/// Repeatedly drops a member of least support `t_min` and inserts the
/// candidate of highest score `t_max` at that score, until
/// `t_max < min((1 + eps) t_min, Σ s_n / k)`.
///
/// `eps = None` stands for an unbounded `eps`, leaving only the second term
/// of the stopping threshold. The least member support never decreases, and
/// on return no unelected candidate reaches the stopping threshold in
/// pre-score.
pub fn ls_pjr<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>, eps: Option<&T>) -> LocalSearch<T> {
    let mut current = solution.clone();
    let t_hat = instance.total_stake() / T::from_usize(current.committee().len().max(1));
    let mut iterations = 0;
    loop {
        iterations += 1;
        let Some((c_min, t_min)) = current.min_member() else {
            return LocalSearch { solution: current, iterations };
        };
        let Ok(best) = max_score(instance, &current) else {
            return LocalSearch { solution: current, iterations };
        };
        let stop = match eps {
            Some(eps) => min_of((T::one() + eps.clone()) * t_min, t_hat.clone()),
            None => t_hat.clone(),
        };
        if definitely_lt(&best.value, &stop) {
            return LocalSearch { solution: current, iterations };
        }
        let (mut committee, mut w) = current.into_parts();
        committee.retain(|&c| c != c_min);
        for &e in instance.candidate_edges(c_min) {
            w[e] = T::zero();
        }
        let reduced = Solution::new(instance, committee, w);
        current = insert(instance, &reduced, best.candidate, &best.value).expect("candidate is unelected");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_phragmen_worstcase, CandidateId};
    use crate::scalar::Rational;
    use crate::solvers::{balanced_phragmms, seq_phragmen};

    #[test]
    fn locally_optimal_input_is_kept() {
        let inst = gen_phragmen_worstcase::<Rational>(4, Rational::from_ratio(1, 10)).unwrap();
        let sol = balanced_phragmms(&inst);
        let out = ls_pjr(&inst, &sol, Some(&Rational::from_ratio(1, 10)));
        assert_eq!(out.iterations, 1);
        assert_eq!(out.solution, sol);
    }

    #[test]
    fn swaps_out_c0() {
        let inst = gen_phragmen_worstcase::<Rational>(4, Rational::from_ratio(1, 10)).unwrap();
        let seed = seq_phragmen(&inst);
        // c4 scores about 0.532 against c0's 0.504, so eps must be below 5%.
        let out = ls_pjr(&inst, &seed, Some(&Rational::from_ratio(1, 100)));
        assert!(!out.solution.contains(CandidateId(0)));
        assert!(out.solution.objective() > seed.objective());
        let unbounded = ls_pjr(&inst, &seed, None);
        assert!(unbounded.iterations <= inst.k() + 1);
        assert!(unbounded.solution.objective() >= seed.objective());
    }
}
