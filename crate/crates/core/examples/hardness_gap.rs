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


//! Cubic-graph elections: a committee forming an independent set gets
//! support 3 per member, while any two adjacent members share a voter.

use maximin::balancing::{balanced_solution, maximin_over_subsets};
use maximin::instance::{gen_cubic_gap, graphs};
use maximin::oracle::opt_maximin;
use maximin::{CandidateId, ElectionInstance, Rational};

fn main() -> maximin::Result<()> {
    let k4: ElectionInstance<Rational> = gen_cubic_gap(&graphs::k4(), 2)?;
    let (opt, committee) = opt_maximin(&k4)?;
    println!("K4, k = 2: best least support {opt} with {committee:?}");

    let petersen: ElectionInstance<Rational> = gen_cubic_gap(&graphs::petersen(), 4)?;
    // Outer vertices 0 and 2 plus inner vertices 8 and 9 are pairwise non-adjacent.
    let independent: Vec<CandidateId> = [0, 2, 8, 9].into_iter().map(CandidateId).collect();
    let sol = balanced_solution(&petersen, &independent);
    println!("Petersen, independent committee: supports {:?}", sol.supports().iter().map(|s| s.to_string()).collect::<Vec<_>>());

    let adjacent: Vec<CandidateId> = [0, 1, 2, 3].into_iter().map(CandidateId).collect();
    println!(
        "Petersen, path committee 0-1-2-3: best least support {}",
        maximin_over_subsets(&petersen, &adjacent)?
    );
    println!("Petersen, k = 4: optimum {}", opt_maximin(&petersen)?.0);
    Ok(())
}
