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


//! Property tests over random instances.

use maximin::balancing::{balanced_solution, is_balanced};
use maximin::flowcore::{max_feasible_floor, trim_to_forest};
use maximin::instance::{gen_random, parse_instance, solution_from_file, solution_to_file, RandomParams, StakeDist};
use maximin::oracle::check_pjr_exact;
use maximin::phragmms::{prescore, score};
use maximin::scalar::{approx_eq, approx_le};
use maximin::solvers::{balanced_phragmms, seq_phragmen};
use maximin::verify::{pjr_condition, verify_full};
use maximin::{CandidateId, ElectionInstance, Rational, Solution};
use proptest::prelude::*;

fn instance<T: maximin::Scalar>(seed: u64, voters: usize, candidates: usize, k: usize, prob: f64) -> ElectionInstance<T> {
    let params = RandomParams::new(voters, candidates, k, prob, StakeDist::Uniform { low: 1.0, high: 10.0 }, seed);
    gen_random(&params).expect("valid parameters")
}

fn small() -> impl Strategy<Value = (u64, usize, usize, usize, f64)> {
    (any::<u64>(), 2usize..9, 3usize..9, 0.2f64..0.8).prop_flat_map(|(seed, n, c, p)| (Just(seed), Just(n), Just(c), 1..c, Just(p)))
}

fn committee_from(mask: u32, inst_candidates: usize, k: usize) -> Vec<CandidateId> {
    let mut committee: Vec<CandidateId> = (0..inst_candidates).filter(|i| mask >> i & 1 == 1).map(CandidateId).collect();
    committee.truncate(k.max(1));
    if committee.is_empty() {
        committee.push(CandidateId(0));
    }
    committee
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balanced_vectors_pass_the_check((seed, n, c, k, p) in small(), mask in any::<u32>()) {
        let inst = instance::<f64>(seed, n, c, k, p);
        let committee = committee_from(mask, c, c);
        let sol = balanced_solution(&inst, &committee);
        prop_assert!(is_balanced(&inst, &sol).is_ok());
        let (floor, _) = max_feasible_floor(&inst, &committee);
        prop_assert!(approx_le(&(floor - 1e-8), &sol.objective().unwrap()));
    }

    #[test]
    fn score_is_the_root((seed, n, c, k, p) in small(), mask in any::<u32>()) {
        let inst = instance::<f64>(seed, n, c, k, p);
        let committee = committee_from(mask, c, c - 1);
        let sol = balanced_solution(&inst, &committee);
        for cand in inst.candidates().filter(|x| !sol.contains(*x)) {
            let s = score(&inst, &sol, cand);
            prop_assert!(approx_eq(&prescore(&inst, &sol, cand, &s), &s));
            let above = s * 1.01 + 1e-6;
            prop_assert!(prescore(&inst, &sol, cand, &above) < above);
        }
    }

    #[test]
    fn scores_shrink_as_the_committee_grows((seed, n, c, k, p) in small(), mask in any::<u32>(), extra in any::<u32>()) {
        let inst = instance::<Rational>(seed, n, c, k, p);
        let small = committee_from(mask, c, c - 2);
        let mut big = small.clone();
        big.extend(committee_from(extra, c, c).into_iter().filter(|x| !small.contains(x)));
        big.sort_unstable();
        big.truncate(c - 1);
        prop_assume!(small.iter().all(|x| big.contains(x)));
        let a = balanced_solution(&inst, &small);
        let b = balanced_solution(&inst, &big);
        for cand in inst.candidates().filter(|x| !b.contains(*x)) {
            prop_assert!(score(&inst, &a, cand) >= score(&inst, &b, cand));
        }
    }

    #[test]
    fn pjr_condition_implies_exact_pjr((seed, n, c, k, p) in small()) {
        let inst = instance::<Rational>(seed, n, c, k, p);
        let t = inst.pjr_threshold();
        for sol in [balanced_phragmms(&inst), seq_phragmen(&inst)] {
            if pjr_condition(&inst, &sol, &t) {
                prop_assert_eq!(check_pjr_exact(&inst, sol.committee(), &t).unwrap(), None);
            }
        }
    }

    #[test]
    fn small_perturbations_keep_feasibility((seed, n, c, k, p) in small()) {
        let inst = instance::<f64>(seed, n, c, k, p);
        let sol = balanced_phragmms(&inst);
        let nudged: Vec<f64> = sol.weights().iter().enumerate()
            .map(|(e, w)| if e % 2 == 0 { w * (1.0 + 1e-10) } else { w * (1.0 - 1e-10) })
            .collect();
        let nudged = Solution::new(&inst, sol.committee().to_vec(), nudged);
        prop_assert!(verify_full(&inst, &nudged, None).feasible);
    }

    #[test]
    fn files_round_trip((seed, n, c, k, p) in small()) {
        let inst = instance::<Rational>(seed, n, c, k, p);
        let again: ElectionInstance<Rational> = parse_instance(&inst.to_canonical_json()).unwrap();
        prop_assert_eq!(again.to_canonical_json(), inst.to_canonical_json());
        let sol = balanced_phragmms(&inst);
        let text = serde_json::to_string(&solution_to_file(&inst, &sol)).unwrap();
        let back: Solution<Rational> = solution_from_file(&inst, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.supports(), sol.supports());
    }

    #[test]
    fn trimming_keeps_verification_verdicts((seed, n, c, k, p) in small()) {
        let inst = instance::<Rational>(seed, n, c, k, p);
        let sol = balanced_phragmms(&inst);
        let trimmed = trim_to_forest(&inst, &sol);
        prop_assert_eq!(trimmed.supports(), sol.supports());
        prop_assert!(verify_full(&inst, &trimmed, None).passed());
    }
}
