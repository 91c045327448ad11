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


//! Balanced weight vectors for a fixed committee, and how they expose the
//! tightest sub-committee.

use maximin::balancing::{balance, is_balanced, maximin_over_subsets};
use maximin::{CandidateId, ElectionInstance, Solution};

fn main() -> maximin::Result<()> {
    // Stake 4 approves c0 and c1, stake 2 approves c1, and two unit voters
    // approve c2 and c3.
    let instance = ElectionInstance::<f64>::from_approvals(
        3,
        4,
        vec![(4.0, vec![0, 1]), (2.0, vec![1]), (1.0, vec![2]), (1.0, vec![3])],
    )?;
    let committee = vec![CandidateId(0), CandidateId(1), CandidateId(2)];
    let weights = balance(&instance, &committee);
    let solution = Solution::new(&instance, committee.clone(), weights);
    for &c in &committee {
        println!("support of {}: {}", instance.candidate_name(c), solution.support_of(c).unwrap());
    }
    println!("balanced: {}", is_balanced(&instance, &solution).is_ok());
    println!("least support {} = min over sub-committees {}", solution.objective().unwrap(), maximin_over_subsets(&instance, &committee)?);
    Ok(())
}
